//! Sampled scalar functions with finite-difference derivatives.
//!
//! Derivatives come from the local interpolating polynomial through the
//! nearest samples, which is the same thing as a non-uniform
//! finite-difference stencil. Tables never feed root classification.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest stencil degree; gives derivatives through order 5.
const MAX_DEGREE: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleTable {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl SampleTable {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(invalid("sample table columns differ in length"));
        }
        if xs.len() < 2 {
            return Err(invalid("sample table needs at least two samples"));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("sample abscissae must be strictly increasing"));
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(invalid("sample table contains non-finite entries"));
        }
        Ok(SampleTable { xs, ys })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn range(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    /// Highest derivative order the stencil resolves.
    pub fn order(&self) -> usize {
        (self.xs.len() - 1).min(MAX_DEGREE)
    }

    /// Value and derivatives through order five at `t`; entries above
    /// [`SampleTable::order`] are zero.
    pub fn derivatives(&self, t: f64) -> Result<[f64; 6]> {
        let (lo, hi) = self.range();
        if !(t >= lo && t <= hi) {
            return Err(Error::OutOfDomain { t, t_min: lo, t_max: hi });
        }
        let m = self.order();
        let n = self.xs.len();
        // window of m+1 nodes around t
        let idx = self.xs.partition_point(|&x| x < t);
        let start = idx.saturating_sub(m.div_ceil(2)).min(n - (m + 1));
        let xs = &self.xs[start..start + m + 1];
        let ys = &self.ys[start..start + m + 1];

        // Newton divided differences
        let mut c = [0.0; MAX_DEGREE + 1];
        c[..=m].copy_from_slice(ys);
        for j in 1..=m {
            for i in (j..=m).rev() {
                c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
            }
        }

        // Taylor coefficients in u = x - t via nested multiplication
        let mut taylor = [0.0; MAX_DEGREE + 1];
        taylor[0] = c[m];
        for k in (0..m).rev() {
            let delta = t - xs[k];
            for j in (1..=MAX_DEGREE).rev() {
                taylor[j] = taylor[j - 1] + delta * taylor[j];
            }
            taylor[0] = delta * taylor[0] + c[k];
        }
        let mut out = [0.0; 6];
        let mut fact = 1.0;
        for (j, slot) in out.iter_mut().enumerate() {
            if j > 0 {
                fact *= j as f64;
            }
            *slot = taylor[j] * fact;
        }
        Ok(out)
    }
}
