//! Adaptive Dormand–Prince 5(4) integration of small autonomous-size systems.

use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; 0 picks one from the interval length.
    pub h0: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Dopri5 { rtol: 1e-10, atol: 1e-10, h0: 0.0, max_steps: 200_000 }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus the embedded fourth-order ones.
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

/// Accepted steps of an integration, starting with the initial point.
pub type Trajectory<const N: usize> = Vec<(f64, [f64; N])>;

impl Dopri5 {
    /// Integrates `y' = f(t, y)` from `t0` to `t1` (either direction).
    ///
    /// A right-hand side that returns an error or a non-finite value makes
    /// the step fail; the step is then shrunk, and the integration stops with
    /// [`Error::StepSizeUnderflow`] once the step is negligible.
    pub fn integrate<const N: usize, F>(
        &self,
        mut f: F,
        t0: f64,
        y0: [f64; N],
        t1: f64,
    ) -> Result<Trajectory<N>>
    where
        F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    {
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return Err(invalid("integrator tolerances must be positive"));
        }
        let span = t1 - t0;
        let dir = if span >= 0.0 { 1.0 } else { -1.0 };
        let mut out = Vec::new();
        out.push((t0, y0));
        if span == 0.0 {
            return Ok(out);
        }
        let mut h = if self.h0 > 0.0 { self.h0 } else { span.abs() * 1e-3 };
        let h_min = span.abs() * 1e-14;
        let (mut t, mut y) = (t0, y0);
        let mut k1 = f(t, &y)?;
        for _ in 0..self.max_steps {
            let remaining = (t1 - t) * dir;
            if remaining <= 0.0 {
                return Ok(out);
            }
            let last = h >= remaining;
            let step = if last { remaining } else { h } * dir;
            match self.attempt(&mut f, t, &y, &k1, step) {
                Ok((y_new, k7, err)) if err <= 1.0 => {
                    t = if last { t1 } else { t + step };
                    y = y_new;
                    k1 = k7;
                    out.push((t, y));
                    let fac = if err == 0.0 { 5.0 } else { 0.9 * libm::pow(err, -0.2) };
                    h = step.abs() * fac.clamp(0.2, 5.0);
                }
                Ok((_, _, err)) => {
                    h = step.abs() * (0.9 * libm::pow(err, -0.2)).clamp(0.1, 0.9);
                }
                Err(_) => h = step.abs() * 0.25,
            }
            if h < h_min {
                return Err(Error::StepSizeUnderflow { t });
            }
        }
        Err(Error::StepSizeUnderflow { t })
    }

    fn attempt<const N: usize, F>(
        &self,
        f: &mut F,
        t: f64,
        y: &[f64; N],
        k1: &[f64; N],
        h: f64,
    ) -> Result<([f64; N], [f64; N], f64)>
    where
        F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    {
        let mut k = [[0.0; N]; 7];
        k[0] = *k1;
        for s in 1..7 {
            let mut ys = *y;
            for (i, v) in ys.iter_mut().enumerate() {
                let mut acc = 0.0;
                for j in 0..s {
                    acc += A[s][j] * k[j][i];
                }
                *v += h * acc;
            }
            k[s] = f(t + C[s] * h, &ys)?;
            if k[s].iter().any(|v| !v.is_finite()) {
                return Err(Error::Overflow);
            }
        }
        // stage 7 is evaluated at the fifth-order solution (FSAL)
        let mut y_new = *y;
        for (i, v) in y_new.iter_mut().enumerate() {
            let mut acc = 0.0;
            for j in 0..6 {
                acc += A[6][j] * k[j][i];
            }
            *v += h * acc;
        }
        let mut sum = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for j in 0..7 {
                e += E[j] * k[j][i];
            }
            let sc = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
            let r = h * e / sc;
            sum += r * r;
        }
        let err = libm::sqrt(sum / N as f64);
        Ok((y_new, k[6], err))
    }
}
