//! Usage text per task: the relation being checked, the conventions that
//! pin signs and parameters, and the fields a job needs.

use super::TaskKind;

pub fn describe(task: TaskKind) -> String {
    let body = match task {
        TaskKind::Flatness => {
            "Exact flatness of a logarithmic connection d - sum_i c_i (dphi_i/phi_i) r_i.\n\
             Criterion: for every maximal coplanar family J of hyperplanes and every\n\
             coupling class, [r_j, sum_{j' in J, class} r_j'] = 0 for each j in J.\n\
             Exact mode is authoritative; numeric mode uses tolerance 1e-12.\n\
             Fields: algebra, rep, connection (kz|casimir|ckz), n (kz), h; optional\n\
             weight_block (casimir), perturb (designed failure: adds e_alpha to r_0).\n\
             Exit 0 iff every commutator vanishes."
        }
        TaskKind::Monodromy => {
            "Monodromy generators of the connection: rho(T_i) or rho(S_i) equals the\n\
             finite symmetry (tensor-factor transposition, or the exp(e)exp(-f)exp(e)\n\
             lift) applied after parallel transport along the generator path.\n\
             Convention: the generator path winds the wall coordinate by +pi, so the\n\
             quadratic-relation parameter comes out as q = exp(i pi h).\n\
             Fields: algebra, rep, connection, n, h, tol, fixed_step, dump_matrices."
        }
        TaskKind::Spectra => {
            "Sorted eigenvalue multisets (lexicographic by re, then im) of each\n\
             monodromy generator.\n\
             Fields: as for monodromy."
        }
        TaskKind::Hecke => {
            "Quadratic relation residual per generator: ||(T_i - q)(T_i + q^{-1})||\n\
             with q = exp(i pi h) for configuration-space connections and\n\
             q_i = exp(i pi k_{alpha_i}) for reflection connections.\n\
             Fields: algebra, rep=vector, n, h, tol; threshold (default 1e-6)."
        }
        TaskKind::Bmw => {
            "Cubic relation (T_i - q)(T_i + q^{-1})(T_i - r^{-1}) = 0 and tangle\n\
             relations E_i T_{i-1}^{+-1} E_i = r^{+-1} E_i with\n\
             E_i = 1 - (T_i - T_i^{-1})/(q - q^{-1}),\n\
             q = exp(i pi h), r = eps exp(i pi h (dim V - eps)), eps = +1 orthogonal,\n\
             -1 symplectic. Rejected when |q - q^{-1}| < 1e-6.\n\
             Fields: algebra (so*/sp*), rep=vector, n, h; threshold (default 1e-6)."
        }
        TaskKind::BraidRelations => {
            "Residuals of the defining braid relations, m_ij-fold alternating\n\
             products for the generalised groups.\n\
             Fields: algebra, rep, connection, n, h, tol; threshold (default 1e-8)."
        }
        TaskKind::KdCompare => {
            "Conjugation-invariant comparison of two generator families: sorted\n\
             spectra and traces of all words up to word_len (default 3).\n\
             connection=kz: transport generators vs the R-matrix generators of the\n\
             vector module at q = exp(i pi h) (that is, q = exp(hbar/2) under\n\
             hbar = 2 pi i h).\n\
             connection=casimir: transport generators vs the quantum Weyl operators\n\
             at q_i = exp(hbar <alpha_i, alpha_i>/2), each multiplied by the\n\
             weight-diagonal wall normalization q_i^{3 H_i^2/4}.\n\
             Fields: algebra, rep, connection, n|m, h, tol, word_len; threshold 1e-6."
        }
        TaskKind::Qweyl => {
            "Quantum Weyl operators S_i = exp_{q_i^{-1}}(q_i^{-1} E_i q_i^{-H_i})\n\
             exp_{q_i^{-1}}(-F_i) exp_{q_i^{-1}}(q_i E_i q_i^{H_i}) on a module at\n\
             numeric q; checks the braid relations and the weight-space mapping\n\
             mu -> s_i(mu).\n\
             Fields: algebra (vector module) or m (rank-1 irreducible), q, n (tensor\n\
             power); threshold (default 1e-10)."
        }
        TaskKind::Rmatrix => {
            "Braiding operator R-vee = flip . R on M (x) M: commutes with the\n\
             coproduct action, satisfies the braid relation on triple products;\n\
             rank-1 modules use the Cartan factor q^{H(x)H/2} with unipotent\n\
             coefficients solved from the intertwining property, vector modules the\n\
             standard Hecke-normalized form with eigenvalues {q, -q^{-1}}.\n\
             Fields: algebra or m, q, n; threshold (default 1e-10)."
        }
        TaskKind::V0Check => {
            "On the subspace of the zero weight space annihilated by every squared\n\
             raising operator, each per-root Casimir equals\n\
             <alpha,alpha>(1 - s_alpha) exactly, and the subspace is stable under\n\
             the Weyl-group lifts.\n\
             Fields: algebra, rep. Exit 0 iff both hold exactly."
        }
        TaskKind::DualityCheck => {
            "On the direct sum of highest-weight multiplicity spaces over the orbit\n\
             of mu in the polynomial model on k x n matrices, the column-action\n\
             Casimir satisfies C_{alpha_cd} = 2 Omega_cd + scalar exactly per block\n\
             (scalars reported; the factor 2 is forced by\n\
             ef + fe = deg_c + deg_d + 2 Omega).\n\
             Fields: k, n, lambda, mu (defaults to (1,...,1))."
        }
        TaskKind::SchurWeyl => {
            "For each partition lambda of n: the zero-weight dimension of the\n\
             highest-weight-lambda^t module (Freudenthal recursion) equals the\n\
             hook-length dimension of the symmetric-group module of shape lambda.\n\
             Fields: n; optional lambda for a single partition."
        }
    };
    format!("task {task}\n{body}\n")
}
