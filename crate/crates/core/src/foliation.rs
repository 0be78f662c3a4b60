//! Explicit foliations by polyharmonic hypersurfaces.
//!
//! * Warped products `dt² + f² g_{Sⁿ}` with `f = c1 (c2 + t)^{(r−1)/r}`: every
//!   leaf is r-harmonic.
//! * Doubly warped products with `f² = e^{2t}` and `h² = cos(2t√(n/m))`: every
//!   leaf is biharmonic and exactly one is minimal.
//! * Graphs of the cubics `2at³ − 3at² + at + d` on the unit square torus,
//!   which glue to a C¹ foliation by biharmonic curves.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{invalid, Error, Result};

/// `(f′)² + (r−1)·f·f″` from the value and first two derivatives of `f`.
pub fn leaf_residual(f: f64, f1: f64, f2: f64, r: u32) -> f64 {
    f1 * f1 + f64::from(r - 1) * f * f2
}

/// Leaf residual of the power-law warping function at `t`; zero for every leaf.
pub fn warped_leaf_residual(r: u32, c1: f64, c2: f64, t: f64) -> Result<f64> {
    if r < 2 {
        return Err(Error::InvalidOrder(r));
    }
    if !(c1 > 0.0 && c2 > 0.0 && t >= 0.0 && t.is_finite()) {
        return Err(invalid("warped leaf requires c1, c2 > 0 and t >= 0"));
    }
    let q = f64::from(r - 1) / f64::from(r);
    let x = c2 + t;
    let f2 = c1 * q * (q - 1.0) * libm::pow(x, q - 2.0);
    let f1 = f2 * x / (q - 1.0);
    let f = f1 * x / q;
    Ok(leaf_residual(f, f1, f2, r))
}

/// Half-width of the open interval on which the doubly warped metric lives.
pub fn doubly_warped_interval(n: u32, m: u32) -> (f64, f64) {
    let w = catalog::doubly_warped_half_width(n, m);
    (-w, w)
}

/// `n[(f′/f)² + f″/f] + m[(h′/h)² + h″/h]`, which is half of `trace P⁻¹P̈`.
pub fn doubly_warped_residual(n: u32, m: u32, t: f64) -> Result<f64> {
    let fam = catalog::doubly_warped_standard(n, m)?;
    Ok(0.5 * fam.trace_invariants(t)?.tr_b)
}

/// The single minimal leaf, `t* = ½√(m/n)·arctan√(n/m)`.
pub fn doubly_warped_minimal_time(n: u32, m: u32) -> f64 {
    let ratio = f64::from(n) / f64::from(m);
    0.5 / libm::sqrt(ratio) * libm::atan(libm::sqrt(ratio))
}

/// `ψ(t) = a t³ + b t² + c t + d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusCubic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl TorusCubic {
    pub fn eval(&self, t: f64) -> f64 {
        ((self.a * t + self.b) * t + self.c) * t + self.d
    }

    /// Value and derivatives of orders 1 through 4 at `t`.
    pub fn jet(&self, t: f64) -> [f64; 5] {
        let TorusCubic { a, b, c, .. } = *self;
        [self.eval(t), (3.0 * a * t + 2.0 * b) * t + c, 6.0 * a * t + 2.0 * b, 6.0 * a, 0.0]
    }

    /// Not a straight line.
    pub fn is_proper(&self) -> bool {
        self.a != 0.0 || self.b != 0.0
    }

    /// `a + b + c = 0`, i.e. `ψ(1) = ψ(0)`, so the graph closes up on the torus.
    pub fn is_c0_periodic(&self) -> bool {
        self.a + self.c == -self.b
    }

    /// Additionally `3a + 2b = 0`, i.e. `ψ′(1) = ψ′(0)`.
    pub fn is_c1_periodic(&self) -> bool {
        self.is_c0_periodic() && 3.0 * self.a == -2.0 * self.b
    }
}

/// The cubic `(2a, −3a, a, d)`, periodic to first order.
pub fn torus_family(a: f64, d: f64) -> Result<TorusCubic> {
    if a == 0.0 || !a.is_finite() {
        return Err(invalid("torus family requires a != 0; a = 0 gives straight lines"));
    }
    // b is taken from the closing condition so that both conditions hold
    // exactly in floating point, not only up to the rounding of 3a
    let (ca, cc) = (2.0 * a, a);
    Ok(TorusCubic { a: ca, b: -(ca + cc), c: cc, d })
}

/// Representative of `v mod 1` in `[0, 1)`.
fn frac(v: f64) -> f64 {
    let w = v - libm::floor(v);
    if w >= 1.0 {
        0.0
    } else {
        w
    }
}

/// Fixed seed so that partition checks are reproducible.
pub const PARTITION_SEED: u64 = 0x5eed_7025;

/// Checks at `samples` random points of the unit torus that exactly one leaf
/// `y ≡ ψ_d(t) (mod 1)`, `d ∈ [0, 1)`, passes through the point.
///
/// Leaves differ by vertical translation, so the candidate offset is
/// `d = y − ψ_0(t) mod 1`; the check confirms that it lies in `[0, 1)`,
/// that its leaf hits the point, and that the neighbouring offsets `d ± ½`
/// do not.
pub fn torus_partition_check(a: f64, samples: usize) -> Result<bool> {
    let base = torus_family(a, 0.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(PARTITION_SEED);
    let wrap = |v: f64| {
        let w = frac(v);
        w.min(1.0 - w)
    };
    for _ in 0..samples {
        let (t, y): (f64, f64) = (rng.gen(), rng.gen());
        let d = frac(y - base.eval(t));
        if !(0.0..1.0).contains(&d) {
            return Ok(false);
        }
        let leaf = TorusCubic { d, ..base };
        if wrap(leaf.eval(t) - y) > 1e-9 {
            return Ok(false);
        }
        let other = TorusCubic { d: frac(d + 0.5), ..base };
        if wrap(other.eval(t) - y) < 0.25 {
            return Ok(false);
        }
    }
    Ok(true)
}
