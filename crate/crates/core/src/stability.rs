//! Second variation of the bienergy in the normal direction.
//!
//! For a normal variation `f·T` of a biharmonic orbit the Hessian is
//! `∫ (Δf)² + 4|S∇f|² + ¼·trA·trC·f²`. The middle term needs the spectral
//! data of the orbit, so only its exact constant term, the lower bound that
//! drops the middle term, and the warped case with umbilic orbits are
//! evaluated here.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{invalid, Error, Result};
use crate::geometry::PtFamily;

/// Above this `|trB|` a report notes that `t` is not a biharmonic orbit.
const ROOT_NOTE_LEVEL: f64 = 1e-6;
/// Largest `n + k` for which multiplicities are computed exactly.
pub const MAX_MULTIPLICITY_ARG: u32 = 60;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub t: f64,
    pub tr_a: f64,
    pub tr_c: f64,
    /// `trA · trC`; negative means the orbit is unstable.
    pub criterion: f64,
    /// `¼ trA · trC`, the constant term of the Hessian.
    pub hessian_const: f64,
    pub unstable: bool,
    pub notes: Vec<String>,
}

pub fn stability_report(fam: &PtFamily, t: f64) -> Result<StabilityReport> {
    let tr = fam.trace_invariants(t)?;
    let criterion = tr.tr_a * tr.tr_c;
    let mut notes = Vec::new();
    if tr.tr_b.abs() > ROOT_NOTE_LEVEL {
        notes.push(alloc::format!("t is not a biharmonic orbit (trB = {:.6e})", tr.tr_b));
    }
    Ok(StabilityReport {
        t,
        tr_a: tr.tr_a,
        tr_c: tr.tr_c,
        criterion,
        hessian_const: 0.25 * criterion,
        unstable: criterion < 0.0,
        notes,
    })
}

/// `μ² + ¼ trA·trC`, a lower bound for the Hessian on an eigenfunction of
/// the orbit Laplacian with eigenvalue `μ`.
pub fn hessian_lower_bound(fam: &PtFamily, t: f64, mu: f64) -> Result<f64> {
    if !(mu >= 0.0) {
        return Err(invalid("eigenvalue mu must be >= 0"));
    }
    Ok(mu * mu + stability_report(fam, t)?.hessian_const)
}

/// Lower bound `(ricci_lower − dim_factor · max|H|) / 2` for the first
/// nonzero Laplace eigenvalue of a hypersurface.
pub fn first_eigenvalue_lower_bound(ricci_lower: f64, dim_factor: u32, max_mean_curv: f64) -> f64 {
    0.5 * (ricci_lower - f64::from(dim_factor) * max_mean_curv)
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    // each partial product is itself a binomial coefficient, so division is exact
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// Multiplicity of the `k`-th Laplace eigenvalue `k(n+k−1)` on the round `Sⁿ`,
/// i.e. the dimension of harmonic homogeneous polynomials of degree `k` in
/// `n+1` variables.
pub fn sphere_multiplicity(k: u32, n: u32) -> Result<u64> {
    if n == 0 {
        return Err(invalid("sphere dimension must be >= 1"));
    }
    if n + k > MAX_MULTIPLICITY_ARG {
        return Err(Error::Overflow);
    }
    let lower = if k >= 2 { binomial(n + k - 2, n) } else { 0 };
    Ok(binomial(n + k, n) - lower)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexNullity {
    pub index: u64,
    pub nullity: u64,
    /// Largest mode `k` with `t·k(n+k−1) < 1`, or 0.
    pub k_max: u32,
}

/// Normal index and nullity of the leaf `Sⁿ(√t)` of the warped biharmonic
/// foliation `f² = t`.
///
/// Mode `k` has Laplace eigenvalue `k(n+k−1)/t` and Hessian `μ(μ − t⁻²)`, so
/// it is negative when `t·k(n+k−1) < 1` and null when equality holds within
/// `atol`. The constant mode always contributes one to the nullity.
pub fn warped_index_nullity(n: u32, t: f64, atol: f64) -> Result<IndexNullity> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid("leaf parameter t must be > 0"));
    }
    if n == 0 {
        return Err(invalid("sphere dimension must be >= 1"));
    }
    let mut out = IndexNullity { index: 0, nullity: 1, k_max: 0 };
    for k in 1.. {
        let v = t * f64::from(k) * f64::from(n + k - 1) - 1.0;
        if v > atol {
            break;
        }
        let mult = sphere_multiplicity(k, n)?;
        if v < -atol {
            out.index += mult;
            out.k_max = k;
        } else {
            out.nullity += mult;
        }
    }
    Ok(out)
}

/// Hessian `μ(μ − t⁻²)` of the `k`-th mode on the leaf at `t`.
pub fn warped_mode_hessian(n: u32, k: u32, t: f64) -> f64 {
    let mu = f64::from(k) * f64::from(n + k - 1) / t;
    mu * (mu - 1.0 / (t * t))
}

/// Smaller biharmonic root `x₋` of `8(n+2)x² − 4(n+5)x + 3` in `HPⁿ`, written
/// without cancellation.
pub fn hpn_x_minus(n: u32) -> f64 {
    let n = f64::from(n);
    3.0 / (2.0 * (n + 5.0 + libm::sqrt(n * n + 4.0 * n + 13.0)))
}

/// Orbit parameter of the biharmonic tube at `x₋`.
pub fn hpn_t_minus(n: u32) -> f64 {
    libm::acos(libm::sqrt(hpn_x_minus(n)))
}

/// `(√n · trA, trC / √n)` at the biharmonic tube `x₋` in `HPⁿ`.
pub fn hpn_asymptotics_probe(n: u32) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(invalid("hpn probe requires n >= 2"));
    }
    let tr = catalog::hpn(n)?.trace_invariants(hpn_t_minus(n))?;
    let s = libm::sqrt(f64::from(n));
    Ok((s * tr.tr_a, tr.tr_c / s))
}

/// Whether the eigenvalue bound proves normal index one at `x₋` in `HPⁿ`.
///
/// `HPⁿ` is Einstein with Ricci `4(n+2)`, giving `μ₁ > 2(n+2) + ¼trA`; the
/// Hessian is then positive on every nonconstant mode when that bound is
/// positive and `bound² + ¼trA·trC > 0`.
pub fn hpn_index_one_certified(n: u32) -> Result<bool> {
    let fam = catalog::hpn(n)?;
    let t = hpn_t_minus(n);
    let tr = fam.trace_invariants(t)?;
    let bound = 2.0 * f64::from(n + 2) + 0.25 * tr.tr_a;
    Ok(bound > 0.0 && hessian_lower_bound(&fam, t, bound)? > 0.0)
}

/// Smallest `n₀ ≤ n_max` such that index one is certified for every
/// `n ∈ [n₀, n_max]`, or `None`.
pub fn hpn_index_threshold_probe(n_max: u32) -> Result<Option<u32>> {
    let mut threshold = None;
    for n in (2..=n_max).rev() {
        if hpn_index_one_certified(n)? {
            threshold = Some(n);
        } else {
            break;
        }
    }
    Ok(threshold)
}
