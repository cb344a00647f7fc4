//! Parallel transport of the matrix equation Y'(t) = A(t) Y(t) with
//! A(t) = sum_i (d/dt log phi_i(x(t))) c_i r_i along an admissible path.
//!
//! The default integrator is the Dormand-Prince embedded 5(4) pair with
//! local error control per unit step; a fixed-step classical fourth-order
//! scheme is available for bit-reproducible runs. The reported error
//! estimate is the difference between runs at tol and tol/10.

use super::path::PathSpec;
use crate::connections::FlatConnection;
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransportResult {
    pub matrix: CMat,
    pub err_estimate: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepMode {
    Adaptive,
    /// Deterministic step count derived from the tolerance.
    Fixed,
}

struct Ode<'a> {
    conn: &'a FlatConnection,
    residues: Vec<CMat>,
    path: &'a PathSpec,
}

impl<'a> Ode<'a> {
    fn new(conn: &'a FlatConnection, path: &'a PathSpec) -> Self {
        let residues = (0..conn.arrangement.len()).map(|i| conn.complex_residue(i)).collect();
        Ode { conn, residues, path }
    }

    /// Coefficient matrix A(t) on one segment.
    fn coefficient(&self, seg: usize, t: f64) -> CMat {
        let (x, dx) = self.path.segments[seg].eval(t);
        let mut a = CMat::zeros(self.conn.fiber_dim, self.conn.fiber_dim);
        for i in 0..self.residues.len() {
            let phi = self.conn.arrangement.eval_form(i, &x);
            let dphi = self.conn.arrangement.eval_form(i, &dx);
            let scale = dphi / phi;
            if scale.norm_sqr() != 0.0 {
                a = &a + &self.residues[i].scale(scale);
            }
        }
        a
    }
}

/// Transports the fundamental solution from path start to path end. Runs
/// the integrator at `tol` and `tol/10`; returns the finer result with the
/// difference norm as the error estimate.
pub fn parallel_transport(
    conn: &FlatConnection,
    path: &PathSpec,
    tol: f64,
    mode: StepMode,
) -> Result<TransportResult> {
    if tol <= 0.0 {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    if path.dim() != conn.arrangement.base_dim {
        return Err(Error::ShapeMismatch("path dimension != base dimension".into()));
    }
    let clearance = path.clearance_against(&conn.arrangement);
    if clearance <= 0.0 {
        return Err(Error::ClearanceFailure(1));
    }
    if conn.is_zero_coupling() {
        return Ok(TransportResult {
            matrix: CMat::identity(conn.fiber_dim),
            err_estimate: 0.0,
            steps: 0,
        });
    }
    let ode = Ode::new(conn, path);
    let (coarse, _) = integrate(&ode, tol, mode)?;
    let (fine, steps) = integrate(&ode, tol / 10.0, mode)?;
    let err_estimate = (&coarse - &fine).max_norm();
    if !fine.is_finite() {
        return Err(Error::NonFinite);
    }
    if err_estimate > tol {
        return Err(Error::InvalidInput(format!(
            "transport error estimate {err_estimate:.3e} exceeds tolerance {tol:.1e}"
        )));
    }
    Ok(TransportResult { matrix: fine, err_estimate, steps })
}

fn integrate(ode: &Ode, tol: f64, mode: StepMode) -> Result<(CMat, usize)> {
    let mut y = CMat::identity(ode.conn.fiber_dim);
    let mut steps = 0;
    for seg in 0..ode.path.segments.len() {
        let (ys, n) = match mode {
            StepMode::Adaptive => dopri5(ode, seg, y, tol)?,
            StepMode::Fixed => rk4_fixed(ode, seg, y, tol)?,
        };
        y = ys;
        steps += n;
    }
    Ok((y, steps))
}

// Dormand-Prince 5(4) coefficients.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Fourth-order weights of the embedded pair.
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;

fn dopri5(ode: &Ode, seg: usize, y0: CMat, tol: f64) -> Result<(CMat, usize)> {
    let mut t = 0.0_f64;
    let mut h = 0.05_f64;
    let mut y = y0;
    let mut steps = 0usize;
    let c = |re: f64| C64::new(re, 0.0);
    while t < 1.0 {
        if h < 1e-13 {
            return Err(Error::StepUnderflow(t));
        }
        if t + h > 1.0 {
            h = 1.0 - t;
        }
        let k1 = &ode.coefficient(seg, t) * &y;
        let y2 = &y + &k1.scale(c(h * A21));
        let k2 = &ode.coefficient(seg, t + h / 5.0) * &y2;
        let y3 = &(&y + &k1.scale(c(h * A31))) + &k2.scale(c(h * A32));
        let k3 = &ode.coefficient(seg, t + 3.0 * h / 10.0) * &y3;
        let y4 = &(&(&y + &k1.scale(c(h * A41))) + &k2.scale(c(h * A42))) + &k3.scale(c(h * A43));
        let k4 = &ode.coefficient(seg, t + 4.0 * h / 5.0) * &y4;
        let y5 = &(&(&(&y + &k1.scale(c(h * A51))) + &k2.scale(c(h * A52)))
            + &k3.scale(c(h * A53)))
            + &k4.scale(c(h * A54));
        let k5 = &ode.coefficient(seg, t + 8.0 * h / 9.0) * &y5;
        let y6 = &(&(&(&(&y + &k1.scale(c(h * A61))) + &k2.scale(c(h * A62)))
            + &k3.scale(c(h * A63)))
            + &k4.scale(c(h * A64)))
            + &k5.scale(c(h * A65));
        let k6 = &ode.coefficient(seg, t + h) * &y6;
        let y_next = &(&(&(&(&y + &k1.scale(c(h * B1))) + &k3.scale(c(h * B3)))
            + &k4.scale(c(h * B4)))
            + &k5.scale(c(h * B5)))
            + &k6.scale(c(h * B6));
        let k7 = &ode.coefficient(seg, t + h) * &y_next;
        let y_hat = &(&(&(&(&(&y + &k1.scale(c(h * E1))) + &k3.scale(c(h * E3)))
            + &k4.scale(c(h * E4)))
            + &k5.scale(c(h * E5)))
            + &k6.scale(c(h * E6)))
            + &k7.scale(c(h * E7));
        let err = (&y_next - &y_hat).max_norm();
        let scale = tol * h.max(1e-8) * y_next.max_norm().max(1.0);
        if !err.is_finite() {
            return Err(Error::NonFinite);
        }
        if err <= scale {
            t += h;
            y = y_next;
            steps += 1;
            let factor = if err == 0.0 { 5.0 } else { 0.9 * (scale / err).powf(0.2) };
            h *= factor.clamp(0.2, 5.0);
        } else {
            h *= (0.9 * (scale / err).powf(0.2)).clamp(0.1, 0.9);
        }
    }
    Ok((y, steps))
}

fn rk4_fixed(ode: &Ode, seg: usize, y0: CMat, tol: f64) -> Result<(CMat, usize)> {
    // Step count fixed by the tolerance: classical fourth order, so the
    // global error scales like n^-4.
    let n = ((4.0 / tol.powf(0.25)).ceil() as usize).clamp(64, 4_000_000);
    let h = 1.0 / n as f64;
    let c = |re: f64| C64::new(re, 0.0);
    let mut y = y0;
    for k in 0..n {
        let t = k as f64 * h;
        let k1 = &ode.coefficient(seg, t) * &y;
        let k2 = &ode.coefficient(seg, t + h / 2.0) * &(&y + &k1.scale(c(h / 2.0)));
        let k3 = &ode.coefficient(seg, t + h / 2.0) * &(&y + &k2.scale(c(h / 2.0)));
        let k4 = &ode.coefficient(seg, t + h) * &(&y + &k3.scale(c(h)));
        y = &y
            + &(&(&(&k1 + &k2.scale(c(2.0))) + &k3.scale(c(2.0))) + &k4)
                .scale(c(h / 6.0));
        if !y.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    Ok((y, n))
}
