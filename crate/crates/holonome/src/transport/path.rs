//! Piecewise-smooth paths in the complexified base avoiding the walls of an
//! arrangement, with closed-form derivatives for the transport integrator.
//!
//! Orientation convention, fixed once so the quadratic-relation parameter
//! comes out as e^{i pi h} for all checks: the generator path for the
//! configuration space winds the difference z_i - z_{i+1} counterclockwise
//! by +pi (the slot-i point sweeps the half-ellipse below the real axis,
//! the slot-(i+1) point above); the Cartan generator path takes the
//! alpha_i-coordinate through positive imaginary values, likewise winding
//! +pi around the wall.

use crate::connections::Arrangement;
use crate::error::{Error, Result};
use crate::liecore::RootSystem;
use crate::linalg::C64;
use serde::{Deserialize, Serialize};

pub const DEFAULT_CONFIG_HEIGHT: f64 = 0.6;
pub const DEFAULT_CARTAN_HEIGHT: f64 = 0.5;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Segment {
    Line {
        from: Vec<[f64; 2]>,
        to: Vec<[f64; 2]>,
    },
    /// `x(t) = center + cos(theta(t)) cosv + sin(theta(t)) sinv`,
    /// `theta(t) = theta0 + t (theta1 - theta0)`.
    Arc {
        center: Vec<[f64; 2]>,
        cosv: Vec<[f64; 2]>,
        sinv: Vec<[f64; 2]>,
        theta0: f64,
        theta1: f64,
    },
}

fn pack(v: &[C64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn unpack(v: &[[f64; 2]]) -> Vec<C64> {
    v.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

impl Segment {
    pub fn dim(&self) -> usize {
        match self {
            Segment::Line { from, .. } => from.len(),
            Segment::Arc { center, .. } => center.len(),
        }
    }

    /// Point and velocity at parameter t in [0, 1].
    pub fn eval(&self, t: f64) -> (Vec<C64>, Vec<C64>) {
        match self {
            Segment::Line { from, to } => {
                let a = unpack(from);
                let b = unpack(to);
                let x: Vec<C64> = a.iter().zip(&b).map(|(p, q)| p + (q - p) * t).collect();
                let dx: Vec<C64> = a.iter().zip(&b).map(|(p, q)| q - p).collect();
                (x, dx)
            }
            Segment::Arc { center, cosv, sinv, theta0, theta1 } => {
                let c = unpack(center);
                let cv = unpack(cosv);
                let sv = unpack(sinv);
                let span = theta1 - theta0;
                let th = theta0 + t * span;
                let (s, co) = th.sin_cos();
                let x: Vec<C64> = (0..c.len()).map(|k| c[k] + cv[k] * co + sv[k] * s).collect();
                let dx: Vec<C64> =
                    (0..c.len()).map(|k| (-cv[k] * s + sv[k] * co) * span).collect();
                (x, dx)
            }
        }
    }

    pub fn start(&self) -> Vec<C64> {
        self.eval(0.0).0
    }

    pub fn end(&self) -> Vec<C64> {
        self.eval(1.0).0
    }

    pub fn reversed(&self) -> Segment {
        match self {
            Segment::Line { from, to } => Segment::Line { from: to.clone(), to: from.clone() },
            Segment::Arc { center, cosv, sinv, theta0, theta1 } => Segment::Arc {
                center: center.clone(),
                cosv: cosv.clone(),
                sinv: sinv.clone(),
                theta0: *theta1,
                theta1: *theta0,
            },
        }
    }
}

/// A piecewise path with matching segment endpoints and a recorded lower
/// bound on the distance to the walls it was built against.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathSpec {
    pub segments: Vec<Segment>,
    pub wall_clearance: f64,
}

impl PathSpec {
    pub fn new(segments: Vec<Segment>, arrangement: &Arrangement) -> Result<PathSpec> {
        if segments.is_empty() {
            return Err(Error::InvalidInput("empty path".into()));
        }
        let dim = segments[0].dim();
        for s in &segments {
            if s.dim() != dim {
                return Err(Error::ShapeMismatch("segment dimensions differ".into()));
            }
        }
        for w in segments.windows(2) {
            let end = w[0].end();
            let start = w[1].start();
            let gap: f64 = end
                .iter()
                .zip(&start)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if gap > 1e-12 {
                return Err(Error::InvalidInput(format!(
                    "consecutive segments do not meet (gap {gap:.2e})"
                )));
            }
        }
        let wall_clearance = clearance(&segments, arrangement);
        if wall_clearance <= 0.0 {
            return Err(Error::ClearanceFailure(1));
        }
        Ok(PathSpec { segments, wall_clearance })
    }

    pub fn dim(&self) -> usize {
        self.segments[0].dim()
    }

    pub fn start(&self) -> Vec<C64> {
        self.segments[0].start()
    }

    pub fn end(&self) -> Vec<C64> {
        self.segments.last().unwrap().end()
    }

    pub fn reversed(&self) -> PathSpec {
        PathSpec {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
            wall_clearance: self.wall_clearance,
        }
    }

    /// Concatenation; endpoints must match.
    pub fn then(&self, other: &PathSpec, arrangement: &Arrangement) -> Result<PathSpec> {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        PathSpec::new(segments, arrangement)
    }

    /// Recomputes the clearance against a (possibly different) arrangement.
    pub fn clearance_against(&self, arrangement: &Arrangement) -> f64 {
        clearance(&self.segments, arrangement)
    }
}

/// Min over (dense samples + local refinement) over forms of |phi(x(t))|.
fn clearance(segments: &[Segment], arrangement: &Arrangement) -> f64 {
    const COARSE: usize = 256;
    let mut best = f64::INFINITY;
    for seg in segments {
        for form in 0..arrangement.len() {
            let f = |t: f64| -> f64 {
                let (x, _) = seg.eval(t);
                arrangement.eval_form(form, &x).norm()
            };
            let mut values = Vec::with_capacity(COARSE + 1);
            for k in 0..=COARSE {
                values.push(f(k as f64 / COARSE as f64));
            }
            for k in 0..=COARSE {
                if values[k] < best {
                    best = values[k];
                }
            }
            // Refine around interior local minima.
            for k in 1..COARSE {
                if values[k] <= values[k - 1] && values[k] <= values[k + 1] {
                    let refined = ternary_min(
                        &f,
                        (k - 1) as f64 / COARSE as f64,
                        (k + 1) as f64 / COARSE as f64,
                    );
                    if refined < best {
                        best = refined;
                    }
                }
            }
        }
    }
    best
}

fn ternary_min(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..60 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    f(0.5 * (lo + hi))
}

/// KZ arrangement on C^n (forms z_i - z_j, i < j, lexicographic order).
pub fn config_arrangement(n: usize) -> Arrangement {
    use crate::linalg::{rint, Rat};
    use num_traits::Zero;
    let mut forms = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut f = vec![Rat::zero(); n];
            f[i] = rint(1);
            f[j] = rint(-1);
            forms.push(f);
        }
    }
    Arrangement::new(n, forms).expect("valid configuration arrangement")
}

/// Root arrangement of a root system in the coordinates u_j = alpha_j(x).
pub fn cartan_arrangement(rs: &RootSystem) -> Arrangement {
    use crate::linalg::rint;
    let forms = rs
        .positive_roots
        .iter()
        .map(|c| c.iter().map(|&x| rint(x)).collect())
        .collect();
    Arrangement::new(rs.rank, forms).expect("valid root arrangement")
}

/// Half-twist path for the configuration-space generator `i` (1-based):
/// the slot-i and slot-(i+1) coordinates trade places along half-ellipses
/// (slot i through the lower half-plane so that z_i - z_{i+1} winds by +pi),
/// all other coordinates fixed.
pub fn braid_path_config(
    n: usize,
    i: usize,
    basepoint: Option<Vec<C64>>,
    height: Option<f64>,
) -> Result<PathSpec> {
    if i == 0 || i >= n {
        return Err(Error::InvalidInput(format!("generator index {i} out of 1..{}", n - 1)));
    }
    let base = basepoint
        .unwrap_or_else(|| (1..=n).map(|k| C64::new(k as f64, 0.0)).collect());
    if base.len() != n {
        return Err(Error::ShapeMismatch("basepoint length != n".into()));
    }
    let kappa = height.unwrap_or(DEFAULT_CONFIG_HEIGHT);
    let a = base[i - 1];
    let b = base[i];
    let m = (a + b) * 0.5;
    let r = (b - a) * 0.5;
    let ii = C64::new(0.0, 1.0);

    let mut center = pack(&base);
    center[i - 1] = [m.re, m.im];
    center[i] = [m.re, m.im];
    let mut cosv = vec![[0.0, 0.0]; n];
    cosv[i - 1] = [(-r).re, (-r).im];
    cosv[i] = [r.re, r.im];
    let mut sinv = vec![[0.0, 0.0]; n];
    let s = -ii * kappa * r; // slot i dips below the real axis
    sinv[i - 1] = [s.re, s.im];
    sinv[i] = [(-s).re, (-s).im];

    let seg = Segment::Arc { center, cosv, sinv, theta0: 0.0, theta1: std::f64::consts::PI };
    PathSpec::new(vec![seg], &config_arrangement(n))
}

/// Path from a chamber point x0 to s_i(x0) for the Cartan-space generator
/// `i` (1-based): the alpha_i-coordinate traverses an upper half-ellipse
/// through positive imaginary values while the s_i-fixed component stays
/// put. Shrinks the arc height and retries when a wall gets too close.
pub fn braid_path_cartan(
    rs: &RootSystem,
    i: usize,
    basepoint: Option<Vec<C64>>,
    height: Option<f64>,
) -> Result<PathSpec> {
    if i == 0 || i > rs.rank {
        return Err(Error::InvalidInput(format!("generator index {i} out of 1..{}", rs.rank)));
    }
    let base = basepoint.unwrap_or_else(|| vec![C64::new(1.0, 0.0); rs.rank]);
    if base.len() != rs.rank {
        return Err(Error::ShapeMismatch("basepoint length != rank".into()));
    }
    // Strictly inside the fundamental chamber: positive real coordinates on
    // every simple root (hence on every positive root).
    for u in &base {
        if u.im != 0.0 || u.re <= 0.0 {
            return Err(Error::BasepointOnWall);
        }
    }
    let arrangement = cartan_arrangement(rs);
    let idx = i - 1;
    let u0 = base[idx];
    let ii = C64::new(0.0, 1.0);
    let mut kappa = height.unwrap_or(DEFAULT_CARTAN_HEIGHT);

    const ATTEMPTS: u32 = 8;
    for attempt in 0..ATTEMPTS {
        // u_j(t) = u_j - (a_ij/2)(u_i - u_i(t)), u_i(t) = u_i (cos + i k sin).
        let mut center = vec![[0.0, 0.0]; rs.rank];
        let mut cosv = vec![[0.0, 0.0]; rs.rank];
        let mut sinv = vec![[0.0, 0.0]; rs.rank];
        for j in 0..rs.rank {
            let aij = rs.cartan[idx][j] as f64;
            let c = base[j] - u0 * (aij / 2.0);
            let cv = u0 * (aij / 2.0);
            let sv = ii * kappa * u0 * (aij / 2.0);
            center[j] = [c.re, c.im];
            cosv[j] = [cv.re, cv.im];
            sinv[j] = [sv.re, sv.im];
        }
        let seg =
            Segment::Arc { center, cosv, sinv, theta0: 0.0, theta1: std::f64::consts::PI };
        match PathSpec::new(vec![seg], &arrangement) {
            Ok(path) if path.wall_clearance > 1e-6 => return Ok(path),
            _ => {
                kappa *= 0.5;
                if attempt + 1 == ATTEMPTS {
                    return Err(Error::ClearanceFailure(ATTEMPTS));
                }
            }
        }
    }
    Err(Error::ClearanceFailure(ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{build_root_system, Series};

    #[test]
    fn config_path_swaps_endpoints() {
        let p = braid_path_config(2, 1, None, None).unwrap();
        let start = p.start();
        let end = p.end();
        assert!((start[0] - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((end[0] - C64::new(2.0, 0.0)).norm() < 1e-14);
        assert!((end[1] - C64::new(1.0, 0.0)).norm() < 1e-14);
        // Slot 1 passes below the axis, slot 2 above.
        let (mid, _) = p.segments[0].eval(0.5);
        assert!(mid[0].im < 0.0);
        assert!(mid[1].im > 0.0);
    }

    #[test]
    fn config_path_winds_difference_counterclockwise() {
        let p = braid_path_config(2, 1, None, None).unwrap();
        let samples = 1000;
        let mut total = 0.0;
        let mut prev = {
            let (x, _) = p.segments[0].eval(0.0);
            (x[0] - x[1]).arg()
        };
        for k in 1..=samples {
            let (x, _) = p.segments[0].eval(k as f64 / samples as f64);
            let arg = (x[0] - x[1]).arg();
            let mut d = arg - prev;
            while d > std::f64::consts::PI {
                d -= 2.0 * std::f64::consts::PI;
            }
            while d < -std::f64::consts::PI {
                d += 2.0 * std::f64::consts::PI;
            }
            total += d;
            prev = arg;
        }
        assert!((total - std::f64::consts::PI).abs() < 1e-6, "winding {total}");
    }

    #[test]
    fn config_clearance_n3() {
        let p = braid_path_config(3, 2, None, None).unwrap();
        // Oracle: the moving pair keeps |z2 - z3| >= 2 R kappa = 0.6 and
        // stays at distance >= 1 from z1.
        assert!(p.wall_clearance >= 0.5);
        assert!((p.wall_clearance - 0.6).abs() < 1e-6);
    }

    #[test]
    fn closed_loop_composition() {
        let n = 2;
        let p1 = braid_path_config(n, 1, None, None).unwrap();
        let swapped = vec![C64::new(2.0, 0.0), C64::new(1.0, 0.0)];
        let p2 = braid_path_config(n, 1, Some(swapped), None).unwrap();
        let loop_path = p1.then(&p2, &config_arrangement(n)).unwrap();
        let s = loop_path.start();
        let e = loop_path.end();
        for (a, b) in s.iter().zip(&e) {
            assert!((a - b).norm() < 1e-12);
        }
        // Winding of z1 - z2 over the whole loop is 2 pi.
        let mut total = 0.0;
        for seg in &loop_path.segments {
            let samples = 2000;
            let mut prev = (seg.eval(0.0).0[0] - seg.eval(0.0).0[1]).arg();
            for k in 1..=samples {
                let (x, _) = seg.eval(k as f64 / samples as f64);
                let arg = (x[0] - x[1]).arg();
                let mut d = arg - prev;
                while d > std::f64::consts::PI {
                    d -= 2.0 * std::f64::consts::PI;
                }
                while d < -std::f64::consts::PI {
                    d += 2.0 * std::f64::consts::PI;
                }
                total += d;
                prev = arg;
            }
        }
        assert!((total - 2.0 * std::f64::consts::PI).abs() < 1e-6);
    }

    #[test]
    fn cartan_path_rank1() {
        let rs = build_root_system(Series::A, 1).unwrap();
        let p = braid_path_cartan(&rs, 1, None, None).unwrap();
        let (mid, _) = p.segments[0].eval(0.5);
        assert!(mid[0].im > 0.0);
        let end = p.end();
        assert!((end[0] - C64::new(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn cartan_path_sl3_endpoint_and_clearance() {
        let rs = build_root_system(Series::A, 2).unwrap();
        let p = braid_path_cartan(&rs, 1, None, None).unwrap();
        let end = p.end();
        // s_1(x0) in coordinates: u_1 = -1, u_2 = 1 - a_{12} = 2.
        assert!((end[0] - C64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((end[1] - C64::new(2.0, 0.0)).norm() < 1e-12);
        assert!(p.wall_clearance > 0.0);

        // Oracle: sample |alpha(x(t))| for both simple roots and their sum.
        let arr = cartan_arrangement(&rs);
        let mut min = f64::INFINITY;
        for form in 0..arr.len() {
            for k in 0..=1000 {
                let (x, _) = p.segments[0].eval(k as f64 / 1000.0);
                min = min.min(arr.eval_form(form, &x).norm());
            }
        }
        assert!((p.wall_clearance - min).abs() < 1e-3);
    }

    #[test]
    fn basepoint_on_wall_rejected() {
        let rs = build_root_system(Series::A, 2).unwrap();
        let bad = vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        assert!(matches!(
            braid_path_cartan(&rs, 1, Some(bad), None),
            Err(Error::BasepointOnWall)
        ));
    }

    #[test]
    fn mismatched_segments_rejected() {
        let arr = config_arrangement(2);
        let s1 = Segment::Line { from: vec![[1.0, 0.0], [2.0, 0.0]], to: vec![[1.5, 0.5], [2.0, 0.0]] };
        let s2 = Segment::Line { from: vec![[9.0, 0.0], [2.0, 0.0]], to: vec![[1.0, 0.0], [2.0, 0.0]] };
        assert!(PathSpec::new(vec![s1, s2], &arr).is_err());
    }
}
