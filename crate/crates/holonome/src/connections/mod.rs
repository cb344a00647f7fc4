//! Arrangements of hyperplanes, residue families, and the coplanar-family
//! flatness criterion: a logarithmic connection `d - sum_i (dphi_i/phi_i) r_i`
//! is flat iff for every maximal subfamily J whose forms span a plane,
//! `[r_j, sum_{j' in J} r_{j'}] = 0` for each j in J.

mod builders;
mod v0;

pub use builders::{
    build_casimir, build_ckz, build_kz, sn_action_on_tensor_power, CkzInput,
};
pub use v0::{check_v0_identity, v0_subspace, V0Report};

use crate::error::{Error, Result};
use crate::liecore::RootSystem;
use crate::linalg::{CMat, QMat, Rat, C64};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A finite set of distinct linear hyperplanes `phi_i = 0` in C^N, each
/// given by a rational covector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arrangement {
    pub base_dim: usize,
    #[serde(with = "crate::linalg::rat::rat_rows_string")]
    pub forms: Vec<Vec<Rat>>,
}

impl Arrangement {
    pub fn new(base_dim: usize, forms: Vec<Vec<Rat>>) -> Result<Self> {
        for f in &forms {
            if f.len() != base_dim {
                return Err(Error::ShapeMismatch("form length != base_dim".into()));
            }
            if f.iter().all(Zero::is_zero) {
                return Err(Error::InvalidInput("zero linear form".into()));
            }
        }
        for i in 0..forms.len() {
            for j in (i + 1)..forms.len() {
                if proportional(&forms[i], &forms[j]) {
                    return Err(Error::InvalidInput(format!(
                        "forms {i} and {j} define the same hyperplane"
                    )));
                }
            }
        }
        Ok(Arrangement { base_dim, forms })
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Evaluates form `i` at a complex point.
    pub fn eval_form(&self, i: usize, x: &[C64]) -> C64 {
        self.forms[i]
            .iter()
            .zip(x)
            .map(|(c, z)| z * crate::linalg::rat_to_f64(c))
            .sum()
    }

    pub fn forms_f64(&self) -> Vec<Vec<f64>> {
        self.forms
            .iter()
            .map(|f| f.iter().map(crate::linalg::rat_to_f64).collect())
            .collect()
    }
}

fn proportional(a: &[Rat], b: &[Rat]) -> bool {
    let mut ratio: Option<Rat> = None;
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return false,
            (false, false) => {
                let r = x / y;
                match &ratio {
                    None => ratio = Some(r),
                    Some(r0) if *r0 == r => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// Partition of the index set of unordered pairs into maximal families with
/// two-dimensional span. Every pair of (distinct) forms lies in exactly one
/// family.
pub fn coplanar_families(arr: &Arrangement) -> Vec<Vec<usize>> {
    let n = arr.forms.len();
    // Key each pair by the reduced echelon basis of its span.
    let mut groups: BTreeMap<Vec<Vec<Rat>>, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = QMat::from_rows(vec![arr.forms[i].clone(), arr.forms[j].clone()]);
            m.rref();
            let key = vec![m.row(0).to_vec(), m.row(1).to_vec()];
            let entry = groups.entry(key).or_default();
            if !entry.contains(&i) {
                entry.push(i);
            }
            if !entry.contains(&j) {
                entry.push(j);
            }
        }
    }
    let mut families: Vec<Vec<usize>> = groups
        .into_values()
        .map(|mut v| {
            v.sort_unstable();
            v
        })
        .collect();
    families.sort();
    families
}

/// What kind of base the connection lives on; carries the data needed to
/// build generator paths later.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum ConnectionKind {
    /// Configuration-space connection on C^n with forms z_i - z_j.
    Config { n: usize },
    /// Cartan-space connection with one form per positive root, in the
    /// coordinates u_j = alpha_j(x).
    Cartan { root_system: RootSystem },
    /// Raw arrangement without generator paths.
    Custom,
}

/// A meromorphic connection `d - sum_i c_i (dphi_i/phi_i) r_i` with exact
/// residue matrices `r_i` and complex couplings `c_i` (a global h, or
/// per-orbit weights). Exact flatness is certified on the `r_i` per
/// coupling class, which covers every admissible choice of couplings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlatConnection {
    pub arrangement: Arrangement,
    pub residues: Vec<QMat>,
    /// Complex coupling per hyperplane.
    pub coeffs: Vec<[f64; 2]>,
    /// Coupling class per hyperplane (Weyl orbit for root arrangements).
    pub classes: Vec<usize>,
    pub fiber_dim: usize,
    pub verified_flat: bool,
    pub kind: ConnectionKind,
}

impl FlatConnection {
    pub fn new(
        arrangement: Arrangement,
        residues: Vec<QMat>,
        coeffs: Vec<C64>,
        classes: Vec<usize>,
        kind: ConnectionKind,
    ) -> Result<Self> {
        if residues.len() != arrangement.len()
            || coeffs.len() != arrangement.len()
            || classes.len() != arrangement.len()
        {
            return Err(Error::ShapeMismatch(
                "forms, residues, coefficients and classes must have equal length".into(),
            ));
        }
        let fiber_dim = residues.first().map_or(0, QMat::rows);
        for r in &residues {
            if r.rows() != fiber_dim || r.cols() != fiber_dim {
                return Err(Error::ShapeMismatch("residues must be square of equal size".into()));
            }
        }
        Ok(FlatConnection {
            arrangement,
            residues,
            coeffs: coeffs.iter().map(|c| [c.re, c.im]).collect(),
            classes,
            fiber_dim,
            verified_flat: false,
            kind,
        })
    }

    pub fn coeff(&self, i: usize) -> C64 {
        C64::new(self.coeffs[i][0], self.coeffs[i][1])
    }

    /// The complex residue actually entering transport: `c_i * r_i`.
    pub fn complex_residue(&self, i: usize) -> CMat {
        self.residues[i].to_cmat().scale(self.coeff(i))
    }

    pub fn is_zero_coupling(&self) -> bool {
        self.coeffs.iter().all(|c| c[0] == 0.0 && c[1] == 0.0)
    }
}

/// One flatness violation: family `family`, coupling class `class`, member
/// `j`, with the max-entry norm of the offending commutator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlatnessFailure {
    pub family: Vec<usize>,
    pub class: usize,
    pub j: usize,
    pub commutator_norm: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub pass: bool,
    pub families_checked: usize,
    pub mode: String,
    pub failures: Vec<FlatnessFailure>,
}

/// Exact flatness: for each coplanar family and each coupling class, the
/// class partial sum commutes with every member of the family. Passing
/// certifies flatness for every choice of class couplings, in particular
/// for the stored ones.
pub fn kohno_flatness_check(conn: &FlatConnection) -> Result<FlatnessReport> {
    if conn.residues.len() != conn.arrangement.len() {
        return Err(Error::ShapeMismatch("residue count != form count".into()));
    }
    let families = coplanar_families(&conn.arrangement);
    let mut failures = Vec::new();
    for family in &families {
        let mut classes: Vec<usize> = family.iter().map(|&j| conn.classes[j]).collect();
        classes.sort_unstable();
        classes.dedup();
        for &class in &classes {
            let mut sum = QMat::zeros(conn.fiber_dim, conn.fiber_dim);
            for &j in family {
                if conn.classes[j] == class {
                    sum = sum + conn.residues[j].clone();
                }
            }
            for &j in family {
                let comm = conn.residues[j].commutator(&sum);
                if !comm.is_zero() {
                    let norm = comm_norm(&comm);
                    failures.push(FlatnessFailure {
                        family: family.clone(),
                        class,
                        j,
                        commutator_norm: norm,
                    });
                }
            }
        }
    }
    Ok(FlatnessReport {
        pass: failures.is_empty(),
        families_checked: families.len(),
        mode: "exact".into(),
        failures,
    })
}

/// Numeric flatness on the complex residues `c_i r_i` with tolerance 1e-12;
/// the exact mode is authoritative, this covers externally supplied
/// floating-point data.
pub fn kohno_flatness_check_numeric(conn: &FlatConnection, tol: f64) -> Result<FlatnessReport> {
    let families = coplanar_families(&conn.arrangement);
    let mut failures = Vec::new();
    for family in &families {
        let mut sum = CMat::zeros(conn.fiber_dim, conn.fiber_dim);
        for &j in family {
            sum = &sum + &conn.complex_residue(j);
        }
        for &j in family {
            let comm = conn.complex_residue(j).commutator(&sum);
            let norm = comm.max_norm();
            if norm > tol {
                failures.push(FlatnessFailure {
                    family: family.clone(),
                    class: conn.classes[j],
                    j,
                    commutator_norm: norm,
                });
            }
        }
    }
    Ok(FlatnessReport {
        pass: failures.is_empty(),
        families_checked: families.len(),
        mode: format!("numeric tol {tol:e}"),
        failures,
    })
}

fn comm_norm(m: &QMat) -> f64 {
    let mut best: f64 = 0.0;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            best = best.max(crate::linalg::rat_to_f64(&m[(r, c)]).abs());
        }
    }
    best
}

/// Dimension of the joint commutant of the residues; 1 certifies
/// irreducibility of the infinitesimal action and hence generic
/// irreducibility of the monodromy.
pub fn commutant_dim(conn: &FlatConnection) -> usize {
    commutant_dim_of(&conn.residues, conn.fiber_dim)
}

pub fn commutant_dim_of(residues: &[QMat], dim: usize) -> usize {
    if residues.is_empty() {
        return dim * dim;
    }
    let eye = QMat::identity(dim);
    let blocks: Vec<QMat> = residues
        .iter()
        .map(|r| r.transpose().kron(&eye) - eye.kron(r))
        .collect();
    let refs: Vec<&QMat> = blocks.iter().collect();
    let system = QMat::vstack(&refs);
    system.nullspace().cols()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{build_rep, casimir_op, Algebra, RepKind};
    use crate::linalg::rint;

    fn kz_arrangement(n: usize) -> Arrangement {
        let mut forms = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut f = vec![Rat::zero(); n];
                f[i] = rint(1);
                f[j] = rint(-1);
                forms.push(f);
            }
        }
        Arrangement::new(n, forms).unwrap()
    }

    #[test]
    fn rejects_duplicate_hyperplanes() {
        let forms = vec![vec![rint(1), rint(-1)], vec![rint(-2), rint(2)]];
        assert!(Arrangement::new(2, forms).is_err());
    }

    #[test]
    fn a2_single_family() {
        let forms = vec![
            vec![rint(1), rint(0)],
            vec![rint(0), rint(1)],
            vec![rint(1), rint(1)],
        ];
        let arr = Arrangement::new(2, forms).unwrap();
        assert_eq!(coplanar_families(&arr), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn kz3_single_family() {
        let arr = kz_arrangement(3);
        assert_eq!(coplanar_families(&arr), vec![vec![0, 1, 2]]);
    }

    /// Oracle: brute-force span computation over all pairs, grouping pairs
    /// with equal two-dimensional span.
    #[test]
    fn kz4_families_match_brute_force() {
        let arr = kz_arrangement(4);
        let fams = coplanar_families(&arr);

        // Brute force: all 15 pairs, grouped by span membership tests.
        let n = arr.len();
        let in_span = |i: usize, j: usize, k: usize| -> bool {
            let m = QMat::from_rows(vec![
                arr.forms[i].clone(),
                arr.forms[j].clone(),
                arr.forms[k].clone(),
            ]);
            m.rank() == 2
        };
        let mut oracle: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let members: Vec<usize> =
                    (0..n).filter(|&k| k == i || k == j || in_span(i, j, k)).collect();
                if !oracle.contains(&members) {
                    oracle.push(members);
                }
            }
        }
        oracle.sort();
        assert_eq!(fams, oracle);

        // Pair indexing: 0:12 1:13 2:14 3:23 4:24 5:34 (1-based labels).
        let triples: Vec<&Vec<usize>> = fams.iter().filter(|f| f.len() == 3).collect();
        let pairs: Vec<&Vec<usize>> = fams.iter().filter(|f| f.len() == 2).collect();
        assert_eq!(triples.len(), 4);
        assert!(triples.contains(&&vec![0, 1, 3]));
        assert!(triples.contains(&&vec![0, 2, 4]));
        assert!(triples.contains(&&vec![1, 2, 5]));
        assert!(triples.contains(&&vec![3, 4, 5]));
        // {z1-z2, z3-z4} and friends: the disjoint-support pairs.
        assert_eq!(pairs.len(), 3);
        assert!(pairs.contains(&&vec![0, 5]));
        assert!(pairs.contains(&&vec![1, 4]));
        assert!(pairs.contains(&&vec![2, 3]));
    }

    #[test]
    fn every_pair_in_exactly_one_family() {
        let arr = kz_arrangement(4);
        let fams = coplanar_families(&arr);
        for i in 0..arr.len() {
            for j in (i + 1)..arr.len() {
                let count = fams
                    .iter()
                    .filter(|f| f.contains(&i) && f.contains(&j))
                    .count();
                assert_eq!(count, 1, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn perturbed_casimir_fails_flatness() {
        let rep = build_rep(Algebra::Sl(3), RepKind::Adjoint, None).unwrap();
        let conn = build_casimir(&rep, C64::new(1.0, 0.0), None).unwrap();
        let report = kohno_flatness_check(&conn).unwrap();
        assert!(report.pass);

        let mut broken = conn.clone();
        broken.residues[0] = broken.residues[0].clone() + rep.root_vectors[0].0.clone();
        let report = kohno_flatness_check(&broken).unwrap();
        assert!(!report.pass);
        assert!(!report.failures.is_empty());
        assert!(report.failures[0].commutator_norm > 0.0);
    }

    #[test]
    fn knutson_rank2_commutators_vanish() {
        // For each coplanar family of the Casimir arrangement (= rank-2
        // subsystem) and each member alpha, [C_alpha, sum_beta C_beta] = 0.
        let rep = build_rep(Algebra::So(5), RepKind::Vector, None).unwrap();
        let conn = build_casimir(&rep, C64::new(1.0, 0.0), None).unwrap();
        let fams = coplanar_families(&conn.arrangement);
        for fam in &fams {
            let mut sum = QMat::zeros(conn.fiber_dim, conn.fiber_dim);
            for &j in fam {
                sum = sum + conn.residues[j].clone();
            }
            for &j in fam {
                assert!(conn.residues[j].commutator(&sum).is_zero());
            }
        }
        let _ = casimir_op(&rep, 0);
    }

    #[test]
    fn commutant_dims() {
        // gl2 vector KZ on two factors: the single residue is the flip,
        // whose commutant is End(Sym^2) + End(Alt^2), dimension 9 + 1.
        let rep = build_rep(Algebra::Gl(2), RepKind::Vector, None).unwrap();
        let conn = build_kz(&rep, 2, C64::new(0.3, 0.0), None).unwrap();
        assert_eq!(commutant_dim(&conn), 10);

        // Adding the diagonal algebra action cuts the commutant down to
        // scalars on each of the two isotypic blocks.
        let mut gens = conn.residues.clone();
        for x in rep.flat_basis() {
            gens.push(x.kron(&QMat::identity(2)) + QMat::identity(2).kron(&x));
        }
        assert_eq!(commutant_dim_of(&gens, 4), 2);

        // Zero residues: the commutant is everything.
        let arr = kz_arrangement(2);
        let conn = FlatConnection::new(
            arr,
            vec![QMat::zeros(3, 3)],
            vec![C64::new(1.0, 0.0)],
            vec![0],
            ConnectionKind::Custom,
        )
        .unwrap();
        assert_eq!(commutant_dim(&conn), 9);

        // Casimir for sl2 vector restricted to a 1-dim weight block.
        let rep = build_rep(Algebra::Sl(2), RepKind::Vector, None).unwrap();
        let conn = build_casimir(&rep, C64::new(1.0, 0.0), Some(&[1])).unwrap();
        assert_eq!(conn.fiber_dim, 1);
        assert_eq!(commutant_dim(&conn), 1);
    }
}
