//! Equivariant `(k, r)`-maps `g·γ(t) ↦ g·γ(r(t))` with `r(0) = 0`, `r(L) = kL`.
//!
//! The tension field of such a map is `F(t)·γ̇(r(t))` with
//! `F = r̈ + ½ṙ·trA − ½·Σ mᵢ ṗᵢ(r)/pᵢ(t)`, and the map is biharmonic exactly
//! when `G = F̈ + ½Ḟ·trA − ½F·Σ mᵢ p̈ᵢ(r)/pᵢ(t)` vanishes.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::PtFamily;
use crate::ode::Dopri5;
use crate::table::SampleTable;

/// Derivative orders needed by [`tension_f`] and [`bitension_g`].
const ORDER_F: usize = 2;
const ORDER_G: usize = 4;

/// The function `r` of a `(k, r)`-map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RProfile {
    /// `slope·t + offset`
    Linear { slope: f64, offset: f64 },
    /// Ascending coefficients.
    Polynomial { coeffs: Vec<f64> },
    /// `slope·t + amplitude·sin(freq·t)`
    SinPerturbed { slope: f64, amplitude: f64, freq: f64 },
    /// Sampled `r`; derivatives by finite differences.
    Table { table: SampleTable },
}

impl RProfile {
    pub fn identity() -> Self {
        RProfile::Linear { slope: 1.0, offset: 0.0 }
    }

    /// Highest derivative order available.
    pub fn order(&self) -> usize {
        match self {
            RProfile::Table { table } => table.order(),
            _ => 5,
        }
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self, RProfile::Table { .. })
    }

    /// `(r, ṙ, r̈, r⃛, r⁗)` at `t`; orders above [`RProfile::order`] read zero.
    pub fn jet(&self, t: f64) -> Result<[f64; 5]> {
        Ok(match self {
            RProfile::Linear { slope, offset } => [slope * t + offset, *slope, 0.0, 0.0, 0.0],
            RProfile::Polynomial { coeffs } => {
                let mut d = [0.0; 5];
                let mut c: Vec<f64> = coeffs.clone();
                for slot in d.iter_mut() {
                    *slot = c.iter().rev().fold(0.0, |acc, &x| acc * t + x);
                    c = c.iter().enumerate().skip(1).map(|(i, &x)| x * i as f64).collect();
                }
                d
            }
            RProfile::SinPerturbed { slope, amplitude, freq } => {
                let (s, c) = (libm::sin(freq * t), libm::cos(freq * t));
                let (a, w) = (*amplitude, *freq);
                [
                    slope * t + a * s,
                    slope + a * w * c,
                    -a * w * w * s,
                    -a * w * w * w * c,
                    a * w * w * w * w * s,
                ]
            }
            RProfile::Table { table } => {
                let d = table.derivatives(t)?;
                [d[0], d[1], d[2], d[3], d[4]]
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KrMap {
    pub fam: PtFamily,
    pub k: i32,
    pub r: RProfile,
}

impl KrMap {
    /// Checks that `r` stays in the domain unless the family extends past it.
    pub fn new(fam: PtFamily, k: i32, r: RProfile) -> Result<Self> {
        if !fam.extends_periodically() {
            let d = fam.domain;
            let (lo, hi) = match &r {
                RProfile::Table { table } => table.range(),
                _ => (d.t_min, d.t_max),
            };
            for i in 1..64 {
                let t = lo + (hi - lo) * f64::from(i) / 64.0;
                d.check(r.jet(t)?[0])?;
            }
        }
        Ok(KrMap { fam, k, r })
    }
}

/// `F`, its first two derivatives, `G`, and the trace terms they use.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KrTerms {
    pub f: f64,
    pub f_dot: f64,
    pub f_ddot: f64,
    pub g: f64,
    /// `trace P_t⁻¹ P̈_{r(t)}`
    pub tr_br: f64,
    /// `Σ mᵢ ṗᵢ(r)² / (pᵢ(t) pᵢ(r))`
    pub m_term: f64,
}

fn need_order(r: &RProfile, needed: usize) -> Result<()> {
    if r.order() < needed {
        return Err(Error::InsufficientJetOrder { needed, available: r.order() });
    }
    Ok(())
}

/// Tension coefficient `F(t)`.
pub fn tension_f(m: &KrMap, t: f64) -> Result<f64> {
    need_order(&m.r, ORDER_F)?;
    let [r, r1, r2, ..] = m.r.jet(t)?;
    if !m.fam.extends_periodically() {
        m.fam.domain.check(r)?;
    }
    let mut sum = 0.0;
    for ((jt, mult), block) in m.fam.block_jets(t)?.into_iter().zip(&m.fam.blocks) {
        let jr = block.profile.eval(r)?;
        sum += mult * (r1 * (jt.d1 / jt.v) - jr.d1 / jt.v);
    }
    Ok(r2 + 0.5 * sum)
}

/// `F`, `Ḟ`, `F̈` and `G` by the chain rule through the jets of `r` and of
/// every block at `t` and at `r(t)`.
///
/// Each block contributes `ṙ·a − u` to `2(F − r̈)`, where `a = ṗ(t)/p(t)`
/// and `u = ṗ(r)/p(t)`, and the derivatives of both are written with the
/// same operations so that the contributions cancel exactly when `r(t) = t`.
pub fn kr_terms(m: &KrMap, t: f64) -> Result<KrTerms> {
    need_order(&m.r, ORDER_G)?;
    let [r, r1, r2, r3, r4] = m.r.jet(t)?;
    if !m.fam.extends_periodically() {
        m.fam.domain.check(r)?;
    }
    let mut tr_a = 0.0;
    let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
    let (mut tr_br, mut m_term) = (0.0, 0.0);
    for ((jt, mult), block) in m.fam.block_jets(t)?.into_iter().zip(&m.fam.blocks) {
        let jr = block.profile.eval(r)?;
        let (a, b, c) = (jt.d1 / jt.v, jt.d2 / jt.v, jt.d3 / jt.v);
        let a1 = b - a * a;
        let a2 = c - 2.0 * a * b - (b - 2.0 * a * a) * a;
        // w = ṗ(r(t)) and its t-derivatives, divided by p(t)
        let w0 = jr.d1 / jt.v;
        let w1 = (jr.d2 * r1) / jt.v;
        let w2 = (jr.d3 * r1 * r1 + jr.d2 * r2) / jt.v;
        let u0 = w0;
        let u1 = w1 - a * u0;
        let u2 = w2 - 2.0 * a * w1 - (b - 2.0 * a * a) * u0;
        tr_a += mult * a;
        s0 += mult * (r1 * a - u0);
        s1 += mult * (r2 * a + r1 * a1 - u1);
        s2 += mult * (r3 * a + 2.0 * r2 * a1 + r1 * a2 - u2);
        tr_br += mult * jr.d2 / jt.v;
        m_term += mult * jr.d1 * jr.d1 / (jt.v * jr.v);
    }
    let f = r2 + 0.5 * s0;
    let f_dot = r3 + 0.5 * s1;
    let f_ddot = r4 + 0.5 * s2;
    let g = f_ddot + 0.5 * f_dot * tr_a - 0.5 * f * tr_br;
    Ok(KrTerms { f, f_dot, f_ddot, g, tr_br, m_term })
}

/// Bitension coefficient `G(t)`; zero exactly for biharmonic maps.
pub fn bitension_g(m: &KrMap, t: f64) -> Result<f64> {
    Ok(kr_terms(m, t)?.g)
}

/// `G` assembled from the rough Laplacian and curvature parts separately:
/// `F̈ + ½Ḟ·trA − ¼F·M` plus `¼F·(M − 2·trBr)`.
pub fn bitension_g_split(m: &KrMap, t: f64) -> Result<f64> {
    let k = kr_terms(m, t)?;
    let tr_a = m.fam.trace_invariants(t)?.tr_a;
    let laplacian = k.f_ddot + 0.5 * k.f_dot * tr_a - 0.25 * k.f * k.m_term;
    let curvature = 0.25 * k.f * (k.m_term - 2.0 * k.tr_br);
    Ok(laplacian + curvature)
}

/// `k = j·|W|/2 + 1`, the windings for which the map is smooth.
pub fn admissible_k(j: i64, w_order: u32) -> Result<i64> {
    check_weyl(w_order)?;
    Ok(j * i64::from(w_order) / 2 + 1)
}

fn check_weyl(w_order: u32) -> Result<()> {
    if w_order < 2 || !w_order.is_multiple_of(2) {
        return Err(invalid("Weyl group order must be even and >= 2"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(v: i64) -> Self {
        if v % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeInput {
    pub j_parity: Parity,
    pub codim_n0_parity: Parity,
    pub codim_n1_parity: Parity,
    pub w_order: u32,
}

/// Which case of the degree table applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeBranch {
    EvenJBothOdd,
    EvenJOtherwise,
    OddJBothOdd,
    OddJBothEvenWNotIn4Z,
    OddJBothEvenWIn4Z,
    OddJEvenOddWNotIn8Z,
    OddJEvenOddWIn8Z,
    OddJOddEven,
}

pub fn degree_branch(d: &DegreeInput) -> Result<DegreeBranch> {
    use Parity::{Even, Odd};
    check_weyl(d.w_order)?;
    let codims = (d.codim_n0_parity, d.codim_n1_parity);
    Ok(match (d.j_parity, codims) {
        (Even, (Odd, Odd)) => DegreeBranch::EvenJBothOdd,
        (Even, _) => DegreeBranch::EvenJOtherwise,
        (Odd, (Odd, Odd)) => DegreeBranch::OddJBothOdd,
        (Odd, (Even, Even)) if !d.w_order.is_multiple_of(4) => DegreeBranch::OddJBothEvenWNotIn4Z,
        (Odd, (Even, Even)) => DegreeBranch::OddJBothEvenWIn4Z,
        (Odd, (Even, Odd)) if !d.w_order.is_multiple_of(8) => DegreeBranch::OddJEvenOddWNotIn8Z,
        (Odd, (Even, Odd)) => DegreeBranch::OddJEvenOddWIn8Z,
        (Odd, (Odd, Even)) => DegreeBranch::OddJOddEven,
    })
}

/// Brouwer degree of a `(k, r)`-map.
pub fn brouwer_degree(d: &DegreeInput, k: i64) -> Result<i64> {
    Ok(match degree_branch(d)? {
        DegreeBranch::EvenJBothOdd | DegreeBranch::OddJBothOdd => k,
        DegreeBranch::OddJBothEvenWNotIn4Z => 0,
        DegreeBranch::OddJEvenOddWNotIn8Z => -1,
        _ => 1,
    })
}

/// Shooting settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootConfig {
    /// Range of initial slopes `ṙ(0)` tried as seeds.
    pub slope_range: (f64, f64),
    pub seeds: usize,
    /// Matching tolerance on the state at the midpoint.
    pub tol: f64,
    pub max_iter: usize,
    /// Distance from the singular ends as a fraction of the interval.
    pub end_offset: f64,
}

impl Default for ShootConfig {
    fn default() -> Self {
        ShootConfig { slope_range: (0.5, 1.5), seeds: 5, tol: 1e-8, max_iter: 40, end_offset: 1e-4 }
    }
}

/// One point of a shooting solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KrSample {
    pub t: f64,
    pub r: f64,
    pub r_dot: f64,
    pub f: f64,
    pub f_dot: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KrSolution {
    /// Seeds `(ṙ(0), Ḟ(0), ṙ(L), −Ḟ(L))` of the converged trajectory.
    pub params: [f64; 4],
    pub mismatch: f64,
    pub iterations: usize,
    pub samples: Vec<KrSample>,
}

impl KrSolution {
    /// Largest `|r(t) − t|` over the samples.
    pub fn sup_distance_from_identity(&self) -> f64 {
        self.samples.iter().map(|s| (s.r - s.t).abs()).fold(0.0, f64::max)
    }

    /// The solution as a sampled map.
    pub fn to_map(&self, fam: PtFamily, k: i32) -> Result<KrMap> {
        let xs = self.samples.iter().map(|s| s.t).collect();
        let ys = self.samples.iter().map(|s| s.r).collect();
        KrMap::new(fam, k, RProfile::Table { table: SampleTable::new(xs, ys)? })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ShootOutcome {
    Converged(KrSolution),
    NoConvergence { best_mismatch: f64, iterations: usize },
}

struct Shooter<'a> {
    fam: &'a PtFamily,
    len: f64,
    k: f64,
    eps: f64,
    ode: Dopri5,
}

impl Shooter<'_> {
    /// `(r, ṙ, F, Ḟ)' ` with `G = 0` solved for `F̈`.
    fn rhs(&self, t: f64, y: &[f64; 4]) -> Result<[f64; 4]> {
        let tr_a = self.fam.trace_invariants(t)?.tr_a;
        let mixed = self.fam.mixed_traces(t, y[0])?;
        let r_ddot = y[2] - 0.5 * y[1] * tr_a + 0.5 * mixed.tr_ar;
        let f_ddot = -0.5 * y[3] * tr_a + 0.5 * y[2] * mixed.tr_br;
        Ok([y[1], r_ddot, y[3], f_ddot])
    }

    fn halves(&self, x: &[f64; 4]) -> Result<(Trajectory, Trajectory)> {
        let [a, c, b, d] = *x;
        let (eps, len, mid) = (self.eps, self.len, 0.5 * self.len);
        let left = self.ode.integrate(|t, y| self.rhs(t, y), eps, [a * eps, a, c * eps, c], mid)?;
        let right_seed = [self.k * len - b * eps, b, d * eps, -d];
        let right = self.ode.integrate(|t, y| self.rhs(t, y), len - eps, right_seed, mid)?;
        Ok((left, right))
    }

    fn mismatch(&self, x: &[f64; 4]) -> Result<[f64; 4]> {
        let (l, r) = self.halves(x)?;
        let (yl, yr) = (l[l.len() - 1].1, r[r.len() - 1].1);
        Ok([yl[0] - yr[0], yl[1] - yr[1], yl[2] - yr[2], yl[3] - yr[3]])
    }
}

fn norm(v: &[f64; 4]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

/// Samples `(t, [r, ṙ, F, Ḟ])` along one integration.
type Trajectory = Vec<(f64, [f64; 4])>;

/// Gaussian elimination with partial pivoting.
fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if !(a[piv][col].abs() > 1e-300) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (dst, src) in a[row].iter_mut().zip(pivot_row).skip(col) {
                *dst -= f * src;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let s: f64 = (row + 1..4).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Solves `G = 0` with `r(0) = 0`, `r(L) = kL` and `F` vanishing at both ends.
///
/// Both singular ends are regularized by first-order series seeds at
/// distance `end_offset·L`: `r ≈ a·t`, `F ≈ c·t` near 0 and
/// `r ≈ kL − b(L−t)`, `F ≈ d(L−t)` near `L`. The two trajectories are
/// integrated to `L/2`, where damped Newton iteration drives the mismatch of
/// `(r, ṙ, F, Ḟ)` below `tol`. Integrating toward the middle keeps the
/// solution modes that are singular at each end decaying.
pub fn shoot_kr(fam: &PtFamily, k: i32, cfg: &ShootConfig) -> Result<ShootOutcome> {
    if fam.is_verify_only() || !fam.extends_periodically() {
        return Err(Error::VerifyOnly);
    }
    if fam.domain.t_min != 0.0 {
        return Err(invalid("shooting expects a domain starting at t = 0"));
    }
    if !(cfg.tol > 0.0 && cfg.end_offset > 0.0 && cfg.end_offset < 0.5 && cfg.seeds >= 1) {
        return Err(invalid("invalid shooting configuration"));
    }
    let len = fam.domain.t_max;
    let sh = Shooter { fam, len, k: f64::from(k), eps: cfg.end_offset * len, ode: Dopri5::default() };

    let mut best = f64::INFINITY;
    let mut iterations = 0;
    let (lo, hi) = cfg.slope_range;
    for s in 0..cfg.seeds {
        let a0 =
            if cfg.seeds == 1 { 0.5 * (lo + hi) } else { lo + (hi - lo) * s as f64 / (cfg.seeds - 1) as f64 };
        // try the middle of the range first
        let a0 = if s == 0 { 0.5 * (lo + hi) } else { a0 };
        let mut x = [a0, 0.0, a0, 0.0];
        let Ok(mut m) = sh.mismatch(&x) else { continue };
        let mut nm = norm(&m);
        for _ in 0..cfg.max_iter {
            iterations += 1;
            best = best.min(nm);
            if nm < cfg.tol {
                let (l, r) = sh.halves(&x)?;
                let mut samples: Vec<KrSample> = l.iter().map(|&(t, y)| sample(t, y)).collect();
                samples.extend(r.iter().rev().skip(1).map(|&(t, y)| sample(t, y)));
                return Ok(ShootOutcome::Converged(KrSolution {
                    params: x,
                    mismatch: nm,
                    iterations,
                    samples,
                }));
            }
            let mut jac = [[0.0; 4]; 4];
            let mut ok = true;
            for j in 0..4 {
                let h = 1e-7 * x[j].abs().max(1.0);
                let mut xp = x;
                xp[j] += h;
                match sh.mismatch(&xp) {
                    Ok(mp) => (0..4).for_each(|i| jac[i][j] = (mp[i] - m[i]) / h),
                    Err(_) => ok = false,
                }
            }
            let Some(dx) = ok.then(|| solve4(jac, m.map(|v| -v))).flatten() else { break };
            let mut step = 1.0;
            let mut improved = false;
            for _ in 0..12 {
                let xn = [0, 1, 2, 3].map(|i| x[i] + step * dx[i]);
                if let Ok(mn) = sh.mismatch(&xn) {
                    let nn = norm(&mn);
                    if nn < nm {
                        (x, m, nm) = (xn, mn, nn);
                        improved = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if !improved {
                break;
            }
        }
        best = best.min(nm);
    }
    Ok(ShootOutcome::NoConvergence { best_mismatch: best, iterations })
}

fn sample(t: f64, y: [f64; 4]) -> KrSample {
    KrSample { t, r: y[0], r_dot: y[1], f: y[2], f_dot: y[3] }
}

/// Residuals of a given map at sample points; no classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KrVerifyReport {
    pub samples: Vec<KrVerifySample>,
    pub max_abs_f: f64,
    /// `None` when the map lacks the derivative order `G` needs.
    pub max_abs_g: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KrVerifySample {
    pub t: f64,
    pub f: f64,
    pub g: Option<f64>,
}

/// Evaluates `F` and, if possible, `G` at `points` interior points.
pub fn verify(m: &KrMap, points: usize) -> Result<KrVerifyReport> {
    if points == 0 {
        return Err(invalid("need at least one verification point"));
    }
    let d = m.fam.domain;
    let (mut lo, mut hi) = (d.t_min, d.t_max);
    if let RProfile::Table { table } = &m.r {
        let (a, b) = table.range();
        lo = lo.max(a);
        hi = hi.min(b);
    }
    let with_g = m.r.order() >= ORDER_G;
    let mut samples = Vec::with_capacity(points);
    for i in 1..=points {
        let t = lo + (hi - lo) * i as f64 / (points + 1) as f64;
        let f = tension_f(m, t)?;
        let g = if with_g { Some(bitension_g(m, t)?) } else { None };
        samples.push(KrVerifySample { t, f, g });
    }
    let max_abs_f = samples.iter().map(|s| s.f.abs()).fold(0.0, f64::max);
    let max_abs_g = with_g.then(|| samples.iter().filter_map(|s| s.g).map(f64::abs).fold(0.0, f64::max));
    Ok(KrVerifyReport { samples, max_abs_f, max_abs_g })
}
