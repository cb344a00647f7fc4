//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `--nocapture` to see them on success). Tolerances are
//! pinned here, not configurable.

use holonome::connections::{
    build_casimir, build_ckz, build_kz, check_v0_identity, kohno_flatness_check, CkzInput,
};
use holonome::duality::{partitions, residue_match_check, schur_weyl_zero_weight};
use holonome::liecore::{
    build_rep, build_root_system, omega_pair, omega_two, tits_lift, transposition_matrix,
    Algebra, RepKind, Series,
};
use holonome::linalg::{rint, CMat, QMat, C64};
use holonome::quantum::{
    monodromy_normalization, q_tensor_power, qweyl_op, r_matrix, rmat_rep, uq_sl2_module,
    uq_sln_vector,
};
use holonome::transport::{
    bmw_check, braid_path_cartan, braid_path_config, default_words, hecke_check, kd_compare,
    monodromy_rep, parallel_transport, spectrum, verify_braid_relations, Equivariance,
    StepMode,
};
use num_traits::Zero;
use std::time::Instant;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn ipi() -> C64 {
    c64(0.0, std::f64::consts::PI)
}

/// 1. Exact flatness for the three connection families, under 60 s total.
#[test]
fn criterion_01_exact_flatness() {
    let start = Instant::now();
    let h = c64(0.1, 0.0);
    let mut all = true;
    for (alg, n) in [(Algebra::Sl(2), 3), (Algebra::Sl(2), 4), (Algebra::Sl(3), 3), (Algebra::Sl(3), 4)] {
        let rep = build_rep(alg, RepKind::Vector, None).unwrap();
        let conn = build_kz(&rep, n, h, None).unwrap();
        all &= kohno_flatness_check(&conn).unwrap().pass;
    }
    for alg in [Algebra::Sl(2), Algebra::Sl(3), Algebra::Sl(4), Algebra::So(5)] {
        for kind in [RepKind::Vector, RepKind::Adjoint] {
            let rep = build_rep(alg, kind, None).unwrap();
            let conn = build_casimir(&rep, h, None).unwrap();
            all &= kohno_flatness_check(&conn).unwrap().pass;
        }
    }
    for rank in [2usize, 3] {
        let rs = build_root_system(Series::A, rank).unwrap();
        let module = CkzInput::reflection_rep(&rs);
        let conn = build_ckz(&rs, &module, &vec![h; rs.num_positive_roots()]).unwrap();
        all &= kohno_flatness_check(&conn).unwrap().pass;
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "1 exact-flatness",
        all && elapsed < 60.0,
        &format!("exact zero commutators, {elapsed:.1} s"),
    );
}

/// 2. Pairwise coupling identities: transposition for gl_m; the flip minus
/// the scaled invariant-line projection for so_n and sp_2n. Exact.
#[test]
fn criterion_02_omega_identities() {
    // gl_m: the transposition itself.
    for m in [2usize, 3] {
        let rep = build_rep(Algebra::Gl(m), RepKind::Vector, None).unwrap();
        let omega = omega_two(&rep).unwrap();
        assert_eq!(omega, transposition_matrix(m, 2, 0, 1), "gl{m}");
    }
    // so_n and sp_2n: flip - dim * projection onto the invariant line.
    // Oracle: the projection is built from the invariant vector (kernel of
    // the coproduct action of the whole algebra) and the invariant form.
    for (alg, coeff) in [
        (Algebra::So(3), 3i64),
        (Algebra::So(5), 5),
        (Algebra::Sp(2), 2),
        (Algebra::Sp(4), 4),
    ] {
        let rep = build_rep(alg, RepKind::Vector, None).unwrap();
        let d = rep.dim;
        let omega = omega_two(&rep).unwrap();

        // Invariant vector: joint kernel of all diagonal actions on V (x) V.
        let eye = QMat::identity(d);
        let blocks: Vec<QMat> = rep
            .flat_basis()
            .iter()
            .map(|x| x.kron(&eye) + eye.kron(x))
            .collect();
        let refs: Vec<&QMat> = blocks.iter().collect();
        let nullspace = QMat::vstack(&refs).nullspace();
        assert_eq!(nullspace.cols(), 1, "{alg}: invariant line is 1-dim");
        let v0 = nullspace.column(0);

        // Covector from the invariant bilinear form: c(e_a (x) e_b) = J_ab.
        let j = alg.invariant_form().unwrap();
        let mut proj = QMat::zeros(d * d, d * d);
        let mut pairing = holonome::linalg::Rat::zero();
        for a in 0..d {
            for b in 0..d {
                pairing += &j[(a, b)] * &v0[a * d + b];
            }
        }
        for row in 0..d * d {
            for a in 0..d {
                for b in 0..d {
                    let val = &v0[row] * &j[(a, b)] / pairing.clone();
                    proj[(row, a * d + b)] = val;
                }
            }
        }
        // Projection sanity: idempotent, image = the invariant line.
        assert_eq!(&proj * &proj, proj, "{alg}: projector");
        let expected = transposition_matrix(d, 2, 0, 1) - proj.scale(&rint(coeff));
        assert_eq!(omega, expected, "{alg}");
    }
    report("2 omega-identities", true, "exact for gl2, gl3, so3, so5, sp2, sp4");
}

/// 3. Quadratic relation for the two-row configuration monodromy at
/// q = e^{i pi h}, h in {0.05, 0.1}, under two minutes.
#[test]
fn criterion_03_hecke_factorization() {
    let start = Instant::now();
    let rep = build_rep(Algebra::Gl(2), RepKind::Vector, None).unwrap();
    let mut worst: f64 = 0.0;
    for h in [0.05, 0.1] {
        let conn = build_kz(&rep, 3, c64(h, 0.0), None).unwrap();
        let equi = Equivariance::Permutation { factor_dim: 2, n: 3 };
        let mono = monodromy_rep(&conn, &equi, 1e-10, StepMode::Adaptive).unwrap();
        let q = (ipi() * h).exp();
        let hk = hecke_check(&mono, &[q, q]);
        worst = worst.max(hk.max_residual);
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "3 hecke-factorization",
        worst <= 1e-6 && elapsed < 120.0,
        &format!("max residual {worst:.2e}, {elapsed:.1} s"),
    );
}

/// 4. Cubic and tangle relations for the so3 vector monodromy at h = 0.1:
/// q = e^{i pi h}, r = e^{2 pi i h}.
#[test]
fn criterion_04_bmw_factorization() {
    let h = 0.1;
    let rep = build_rep(Algebra::So(3), RepKind::Vector, None).unwrap();
    let conn = build_kz(&rep, 3, c64(h, 0.0), None).unwrap();
    let equi = Equivariance::Permutation { factor_dim: 3, n: 3 };
    let mono = monodromy_rep(&conn, &equi, 1e-10, StepMode::Adaptive).unwrap();
    let q = (ipi() * h).exp();
    let r = (ipi() * h * 2.0).exp();
    let bmw = bmw_check(&mono, q, r).unwrap();
    report(
        "4 bmw-factorization",
        bmw.max_residual <= 1e-6,
        &format!("max residual {:.2e}", bmw.max_residual),
    );
}

/// 5. The distinguished zero-weight identity, exactly, on four modules.
#[test]
fn criterion_05_zero_weight_identities() {
    let cases = [
        (Algebra::Sl(2), RepKind::Adjoint),
        (Algebra::Sl(3), RepKind::Adjoint),
        (Algebra::So(5), RepKind::Vector),
        (Algebra::Sl(3), RepKind::TensorPower(3)),
    ];
    let mut all = true;
    for (alg, kind) in cases {
        let rep = build_rep(alg, kind, None).unwrap();
        let rpt = check_v0_identity(&rep).unwrap();
        all &= rpt.identity_holds && rpt.weyl_invariant;
    }
    report("5 zero-weight-identities", all, "exact on all four modules");
}

/// 6. Braid relations: transport side at 1e-8, quantum side at 1e-10.
#[test]
fn criterion_06_braid_relations() {
    let mut transport_worst: f64 = 0.0;
    {
        let rep = build_rep(Algebra::Sl(2), RepKind::Vector, None).unwrap();
        let conn = build_kz(&rep, 4, c64(0.1, 0.0), None).unwrap();
        let equi = Equivariance::Permutation { factor_dim: 2, n: 4 };
        let mono = monodromy_rep(&conn, &equi, 1e-10, StepMode::Adaptive).unwrap();
        transport_worst = transport_worst.max(verify_braid_relations(&mono).max_residual);
    }
    for kind in [RepKind::Vector, RepKind::Adjoint] {
        let rep = build_rep(Algebra::Sl(3), kind, None).unwrap();
        let conn = build_casimir(&rep, c64(0.1, 0.0), None).unwrap();
        let equi = Equivariance::from_tits(&tits_lift(&rep).unwrap());
        let mono = monodromy_rep(&conn, &equi, 1e-10, StepMode::Adaptive).unwrap();
        transport_worst = transport_worst.max(verify_braid_relations(&mono).max_residual);
    }

    let q = c64(0.2f64.exp(), 0.0);
    let vector = uq_sln_vector(3, q).unwrap();
    let gens = rmat_rep(&vector, 3, None).unwrap();
    let lhs = &(&gens[0] * &gens[1]) * &gens[0];
    let rhs = &(&gens[1] * &gens[0]) * &gens[1];
    let mut quantum_worst = (&lhs - &rhs).max_norm();
    let cube = q_tensor_power(&vector, 3).unwrap();
    let op = qweyl_op(&cube).unwrap();
    let lhs = &(&op.s[0] * &op.s[1]) * &op.s[0];
    let rhs = &(&op.s[1] * &op.s[0]) * &op.s[1];
    quantum_worst = quantum_worst.max((&lhs - &rhs).max_norm());

    report(
        "6 braid-relations",
        transport_worst <= 1e-8 && quantum_worst <= 1e-10,
        &format!("transport {transport_worst:.2e}, quantum {quantum_worst:.2e}"),
    );
}

/// 7. Spectra of the Cartan-connection monodromy generator on the rank-1
/// modules match the normalized quantum Weyl operator under hbar = 2 pi i h.
#[test]
fn criterion_07_monodromy_conjecture_rank1() {
    let mut worst: f64 = 0.0;
    for m in [1usize, 2, 3] {
        for h in [0.02, 0.05] {
            let rep = build_rep(Algebra::Sl(2), RepKind::Sym(m), None).unwrap();
            let conn = build_casimir(&rep, c64(h, 0.0), None).unwrap();
            let equi = Equivariance::from_tits(&tits_lift(&rep).unwrap());
            let mono = monodromy_rep(&conn, &equi, 1e-11, StepMode::Adaptive).unwrap();

            let hbar = c64(0.0, 2.0 * std::f64::consts::PI * h);
            let q = hbar.exp();
            let module = uq_sl2_module(m, q).unwrap();
            let op = qweyl_op(&module).unwrap();
            let s_hat = &op.s[0] * &monodromy_normalization(&module, 0);

            let rpt = kd_compare(
                &mono.generators,
                std::slice::from_ref(&s_hat),
                &[vec![0]],
                1e-6,
            )
            .unwrap();
            worst = worst.max(rpt.max_deviation);
        }
    }
    report(
        "7 monodromy-conjecture-rank1",
        worst <= 1e-6,
        &format!("max spectral deviation {worst:.2e}"),
    );
}

/// 8. Desk-scale equivalence of the configuration monodromy and the
/// R-matrix generators: spectra and traces of all words up to length 3.
#[test]
fn criterion_08_kohno_drinfeld_desk_scale() {
    let h = 0.05;
    let rep = build_rep(Algebra::Gl(2), RepKind::Vector, None).unwrap();
    let conn = build_kz(&rep, 3, c64(h, 0.0), None).unwrap();
    let equi = Equivariance::Permutation { factor_dim: 2, n: 3 };
    let mono = monodromy_rep(&conn, &equi, 1e-10, StepMode::Adaptive).unwrap();

    let q = (ipi() * h).exp();
    let module = uq_sln_vector(2, q).unwrap();
    let gens = rmat_rep(&module, 3, None).unwrap();
    let words = default_words(2, 3);
    let rpt = kd_compare(&mono.generators, &gens, &words, 1e-6).unwrap();
    report(
        "8 kohno-drinfeld",
        rpt.pass,
        &format!("max deviation {:.2e} over {} words", rpt.max_deviation, words.len()),
    );
}

/// 9. Residue coincidence in the polynomial model, exactly.
#[test]
fn criterion_09_duality_residues() {
    let mut all = true;
    for (k, n, lam) in [
        (2usize, 2usize, vec![1usize, 1]),
        (2, 2, vec![2, 0]),
        (3, 3, vec![2, 1, 0]),
    ] {
        let total: usize = lam.iter().sum();
        let rpt = residue_match_check(k, n, &lam, &vec![1; total]).unwrap();
        all &= rpt.pass;
    }
    report("9 duality-residues", all, "off-scalar part exactly zero");
}

/// 10. Transport properties: inverse paths, homotopy invariance across arc
/// heights, and error-estimate monotonicity under tolerance halving.
#[test]
fn criterion_10_transport_properties() {
    let rep = build_rep(Algebra::Sl(2), RepKind::Vector, None).unwrap();
    let conn = build_kz(&rep, 3, c64(0.2, 0.0), None).unwrap();
    let tol = 1e-9;

    // Inverse path.
    let path = braid_path_config(3, 1, None, None).unwrap();
    let fwd = parallel_transport(&conn, &path, tol, StepMode::Adaptive).unwrap();
    let bwd = parallel_transport(&conn, &path.reversed(), tol, StepMode::Adaptive).unwrap();
    let inverse_dev = ((&fwd.matrix * &bwd.matrix) - CMat::identity(conn.fiber_dim)).max_norm();

    // Homotopy invariance: two arc heights with the same endpoints.
    let p_low = braid_path_config(3, 1, None, Some(0.4)).unwrap();
    let p_high = braid_path_config(3, 1, None, Some(0.7)).unwrap();
    let t_low = parallel_transport(&conn, &p_low, tol, StepMode::Adaptive).unwrap();
    let t_high = parallel_transport(&conn, &p_high, tol, StepMode::Adaptive).unwrap();
    let homotopy_dev = (&t_low.matrix - &t_high.matrix).max_norm();

    // Tolerance halving on a fixed five-job suite.
    let casimir_rep = build_rep(Algebra::Sl(3), RepKind::Vector, None).unwrap();
    let casimir = build_casimir(&casimir_rep, c64(0.1, 0.0), None).unwrap();
    let cartan_path = braid_path_cartan(&casimir_rep.root_system, 1, None, None).unwrap();
    let sl2_rep = build_rep(Algebra::Sl(2), RepKind::Sym(2), None).unwrap();
    let sl2_casimir = build_casimir(&sl2_rep, c64(0.07, 0.0), None).unwrap();
    let sl2_path = braid_path_cartan(&sl2_rep.root_system, 1, None, None).unwrap();
    let jobs: Vec<(&holonome::connections::FlatConnection, &holonome::transport::PathSpec)> = vec![
        (&conn, &path),
        (&conn, &p_low),
        (&conn, &p_high),
        (&casimir, &cartan_path),
        (&sl2_casimir, &sl2_path),
    ];
    let mut monotone = true;
    for (cn, p) in &jobs {
        let mut prev = f64::INFINITY;
        for k in 0..4 {
            let t = 1e-7 / 2f64.powi(k);
            let res = parallel_transport(cn, p, t, StepMode::Adaptive).unwrap();
            // Allow a whisker of slack at the noise floor.
            monotone &= res.err_estimate <= prev * 1.05 + 1e-15;
            prev = res.err_estimate;
        }
    }

    report(
        "10 transport-properties",
        inverse_dev <= 2.0 * tol && homotopy_dev <= 2.0 * tol && monotone,
        &format!("inverse {inverse_dev:.2e}, homotopy {homotopy_dev:.2e}, halving monotone {monotone}"),
    );
}

/// 11. Classical limits: the braiding tends to the flip and the quantum
/// Weyl operators to the classical lifts, linearly in q - 1.
#[test]
fn criterion_11_classical_limits() {
    let eps = [1e-2, 1e-3, 1e-4];

    let flip = transposition_matrix(3, 2, 0, 1).to_cmat();
    let mut r_devs = Vec::new();
    let mut s_devs = Vec::new();
    // On the vector module the Weyl operators are independent of q (their
    // exponentials truncate at first order), so its classical limit is
    // exact; the slope is measured on rank-1 modules with genuine
    // q-dependence. The vector-module case is asserted as identity below.
    let sym2 = build_rep(Algebra::Sl(2), RepKind::Sym(2), None).unwrap();
    let sym2_lift = tits_lift(&sym2).unwrap();
    let sym3 = build_rep(Algebra::Sl(2), RepKind::Sym(3), None).unwrap();
    let sym3_lift = tits_lift(&sym3).unwrap();
    for &e in &eps {
        let q = c64(1.0 + e, 0.0);
        let module = uq_sln_vector(3, q).unwrap();
        let rm = r_matrix(&module, &module).unwrap();
        r_devs.push((&rm.rv - &flip).max_norm());

        let mut dev: f64 = 0.0;
        for (m, lift) in [(2usize, &sym2_lift), (3, &sym3_lift)] {
            let op = qweyl_op(&uq_sl2_module(m, q).unwrap()).unwrap();
            dev = dev.max((&op.s[0] - &lift.matrices[0].to_cmat()).max_norm());
        }
        s_devs.push(dev);

        let vec_op = qweyl_op(&module).unwrap();
        let vec_lift = tits_lift(&build_rep(Algebra::Sl(3), RepKind::Vector, None).unwrap()).unwrap();
        for i in 0..2 {
            assert!(
                (&vec_op.s[i] - &vec_lift.matrices[i].to_cmat()).max_norm() < 1e-12,
                "vector-module Weyl operator is its own classical limit"
            );
        }
    }
    let slope = |d: &[f64]| (d[0].ln() - d[2].ln()) / (eps[0].ln() - eps[2].ln());
    let rs = slope(&r_devs);
    let ss = slope(&s_devs);
    report(
        "11 classical-limits",
        (rs - 1.0).abs() <= 0.2 && (ss - 1.0).abs() <= 0.2,
        &format!("log-log slopes: braiding {rs:.3}, weyl {ss:.3}"),
    );
}

/// 12. Zero-weight dimension equals the hook-length dimension for every
/// partition of n <= 5.
#[test]
fn criterion_12_schur_weyl_zero_weight() {
    let mut all = true;
    let mut count = 0;
    for n in 1..=5usize {
        for lam in partitions(n) {
            let pair = schur_weyl_zero_weight(n, &lam).unwrap();
            all &= pair.equal;
            count += 1;
        }
    }
    report("12 schur-weyl-zero-weight", all, &format!("{count} partitions checked"));
}

/// Supplementary: the monodromy generator eigenvalues agree with the
/// symmetry-times-exponential model, on both base spaces.
#[test]
fn supplement_generator_conjugacy_models() {
    // Configuration space: rho(T_i) ~ (i i+1) e^{i pi h Omega}.
    let h = 0.08;
    let rep = build_rep(Algebra::Sl(2), RepKind::Vector, None).unwrap();
    let conn = build_kz(&rep, 3, c64(h, 0.0), None).unwrap();
    let equi = Equivariance::Permutation { factor_dim: 2, n: 3 };
    let mono = monodromy_rep(&conn, &equi, 1e-11, StepMode::Adaptive).unwrap();
    let omega = omega_pair(&rep, 1, 2, 3, None).unwrap().to_cmat();
    let model = &CMat::adjacent_swap(2, 3, 0) * &omega.scale(ipi() * h).exp();
    let ea = spectrum(&mono.generators[0]).unwrap();
    let eb = spectrum(&model).unwrap();
    let dev_config = holonome::transport::monodromy::spectral_deviation(&ea, &eb);

    // Reflection connection: rho(S_i) ~ s_i e^{i pi k s_i}.
    let rs = build_root_system(Series::A, 2).unwrap();
    let module = CkzInput::reflection_rep(&rs);
    let k = 0.13;
    let ckz = build_ckz(&rs, &module, &vec![c64(k, 0.0); 3]).unwrap();
    let refl = [rs.reflection_rep_matrix(0), rs.reflection_rep_matrix(1)];
    let equi = Equivariance::from_exact(&refl);
    let mono = monodromy_rep(&ckz, &equi, 1e-11, StepMode::Adaptive).unwrap();
    let s = refl[0].to_cmat();
    let model = &s * &s.scale(ipi() * k).exp();
    let ea = spectrum(&mono.generators[0]).unwrap();
    let eb = spectrum(&model).unwrap();
    let dev_cartan = holonome::transport::monodromy::spectral_deviation(&ea, &eb);

    report(
        "supplement generator-conjugacy",
        dev_config <= 1e-8 && dev_cartan <= 1e-8,
        &format!("config {dev_config:.2e}, cartan {dev_cartan:.2e}"),
    );
}
