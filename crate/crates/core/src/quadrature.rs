//! Region-restricted radial L² norms.
//!
//! For a radial function `f(|ξ|)` on `ℝⁿ`,
//! `‖f‖²_{L²(region)} = ∫ |f(r)|² ω_{n−1} r^{n−1} dr` with `ω_{n−1}` the area
//! of the unit sphere. The integral is computed with composite 10-point
//! Gauss–Legendre on panels no wider than a quarter period of `sin(t r)`,
//! refined by bisecting the panel with the largest error estimate.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use libm::{exp, fabs, pow, sqrt};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::symbol::{delta_cutoff, zeta_root};

/// Nonnegative nodes and weights of the 10-point Gauss–Legendre rule on [-1, 1].
#[allow(clippy::excessive_precision)]
const GL10: [(f64, f64); 5] = [
    (
        0.148_874_338_981_631_210_884_826_001_130,
        0.295_524_224_714_752_870_173_892_994_651,
    ),
    (
        0.433_395_394_129_247_190_799_265_943_166,
        0.269_266_719_309_996_355_091_226_921_569,
    ),
    (
        0.679_409_568_299_024_406_234_327_365_115,
        0.219_086_362_515_982_043_995_534_934_228,
    ),
    (
        0.865_063_366_688_984_510_732_096_688_423,
        0.149_451_349_150_580_593_145_776_339_658,
    ),
    (
        0.973_906_528_517_171_720_077_964_012_084,
        0.066_671_344_308_688_137_593_568_809_893,
    ),
];

/// `|v|²` for real or complex integrand values.
pub trait SquaredModulus {
    fn squared_modulus(&self) -> f64;
}

impl SquaredModulus for f64 {
    fn squared_modulus(&self) -> f64 {
        self * self
    }
}

impl SquaredModulus for Complex64 {
    fn squared_modulus(&self) -> f64 {
        self.norm_sqr()
    }
}

/// Area `2π^{n/2}/Γ(n/2)` of the unit sphere in `ℝⁿ` (`ω₀ = 2`).
pub fn unit_sphere_area(n: u32) -> f64 {
    // Γ(n/2) by the recursion Γ(x+1) = xΓ(x) from Γ(1) = 1 or Γ(1/2) = √π.
    let mut gamma = if n % 2 == 0 { 1.0 } else { sqrt(PI) };
    let mut x = if n % 2 == 0 { 1.0 } else { 0.5 };
    let half_n = n as f64 / 2.0;
    while x < half_n - 0.25 {
        gamma *= x;
        x += 1.0;
    }
    2.0 * pow(PI, half_n) / gamma
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zone {
    Low,
    Mid,
    High,
    Full,
}

impl Zone {
    pub fn name(self) -> &'static str {
        match self {
            Zone::Low => "low",
            Zone::Mid => "mid",
            Zone::High => "high",
            Zone::Full => "full",
        }
    }
}

/// A radial frequency zone `[lower, upper]`.
///
/// `Low = [0, δ]`, `Mid = (δ, 1)`, `High = [1, Ξ]`, `Full = [0, Ξ]`, where the
/// truncation radius `Ξ` comes from [`tail_cutoff`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub zone: Zone,
    pub lower: f64,
    pub upper: f64,
}

impl Region {
    pub fn low() -> Self {
        Self {
            zone: Zone::Low,
            lower: 0.0,
            upper: delta_cutoff(),
        }
    }

    pub fn mid() -> Self {
        Self {
            zone: Zone::Mid,
            lower: delta_cutoff(),
            upper: 1.0,
        }
    }

    pub fn high(xi_max: f64) -> Self {
        Self {
            zone: Zone::High,
            lower: 1.0,
            upper: xi_max.max(1.0),
        }
    }

    pub fn full(xi_max: f64) -> Self {
        Self {
            zone: Zone::Full,
            lower: 0.0,
            upper: xi_max,
        }
    }

    /// Whether the zone extends to infinity and needs a tail cutoff.
    pub fn is_unbounded(self) -> bool {
        matches!(self.zone, Zone::High | Zone::Full)
    }

    /// The zone with a new truncation radius; bounded zones are unchanged.
    pub fn truncated_at(self, xi_max: f64) -> Self {
        match self.zone {
            Zone::High => Region::high(xi_max),
            Zone::Full => Region::full(xi_max),
            Zone::Low | Zone::Mid => self,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute tolerance on the norm.
    pub tol: f64,
    /// Relative tolerance on the norm; the effective target is
    /// `max(tol, rel_tol · norm)`.
    pub rel_tol: f64,
    /// Evaluation budget.
    pub max_evals: usize,
    /// Panel width away from oscillation and below `r = 2·default_width`.
    /// Further out panels grow geometrically when no oscillation is declared.
    pub default_width: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            rel_tol: 0.0,
            max_evals: 1_000_000,
            default_width: 0.25,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub est_error: f64,
    pub panels_used: usize,
    pub evaluations: usize,
}

/// Raw output of the squared-norm integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquaredIntegral {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
    pub evaluations: usize,
}

impl core::ops::Add for SquaredIntegral {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error: self.error + other.error,
            panels: self.panels + other.panels,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

impl SquaredIntegral {
    pub const ZERO: Self = Self {
        value: 0.0,
        error: 0.0,
        panels: 0,
        evaluations: 0,
    };

    /// Converts to a norm. The error of `√I` is at most `min(ΔI/(2√I), √ΔI)`.
    pub fn to_norm(self) -> QuadratureResult {
        let value = sqrt(self.value.max(0.0));
        let err_sqrt = sqrt(self.error);
        let est_error = if value > 0.0 {
            (self.error / (2.0 * value)).min(err_sqrt)
        } else {
            err_sqrt
        };
        QuadratureResult {
            value,
            est_error,
            panels_used: self.panels,
            evaluations: self.evaluations,
        }
    }
}

/// `(∫_region |f(r)|² ω_{n−1} r^{n−1} dr)^{1/2}`.
///
/// `t_hint > 0` declares that `f` oscillates like `sin(t r)`; panels are then
/// capped at `π/(2·max(t_hint, 1))`. With `t_hint = 0` the integrand is treated
/// as non-oscillatory and panels grow geometrically past `r = 1`.
pub fn l2_region_norm<F, V>(
    f: F,
    region: Region,
    n: u32,
    t_hint: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> V,
    V: SquaredModulus,
{
    let sq = integrate_squared(&f, region.lower, region.upper, n, t_hint, cfg, cfg.tol)?;
    Ok(sq.to_norm())
}

/// `∫_a^b |f(r)|² ω_{n−1} r^{n−1} dr` with mandatory breaks at `δ`, `ζ`, `1`.
///
/// Converges when the error of the square root is below
/// `max(abs_tol, cfg.rel_tol · norm) / 2`; the remaining half of the
/// tolerance is left for tail truncation.
pub fn integrate_squared<F, V>(
    f: &F,
    a: f64,
    b: f64,
    n: u32,
    t_hint: f64,
    cfg: &QuadratureConfig,
    abs_tol: f64,
) -> Result<SquaredIntegral>
where
    F: Fn(f64) -> V,
    V: SquaredModulus,
{
    if n == 0 {
        return Err(invalid("n", 0.0, "dimension must be at least 1"));
    }
    if !(a.is_finite() && b.is_finite()) || a < 0.0 || b < a {
        return Err(invalid(
            "region",
            b,
            "bounds must satisfy 0 <= lower <= upper < inf",
        ));
    }
    if !(t_hint >= 0.0) {
        return Err(invalid("t_hint", t_hint, "must be nonnegative"));
    }
    if b == a {
        return Ok(SquaredIntegral::ZERO);
    }

    let sphere = unit_sphere_area(n);
    let power = (n - 1) as i32;
    let integrand = |r: f64| -> f64 { f(r).squared_modulus() * pow_int(r, power) * sphere };

    let osc_cap = if t_hint > 0.0 {
        PI / (2.0 * t_hint.max(1.0))
    } else {
        f64::INFINITY
    };

    let mut panels = initial_panels(a, b, osc_cap, cfg.default_width);
    // Each initial panel is evaluated as two capped halves (the value) plus
    // one pass over the whole panel (the error estimate).
    let needed = panels.len() * 30;
    if needed > cfg.max_evals {
        return Err(Error::NonConvergent {
            evaluations: needed,
            estimated_error: f64::INFINITY,
            tolerance: abs_tol,
        });
    }

    let mut evals = 0usize;
    let mut store: Vec<Panel> = Vec::with_capacity(panels.len());
    for (lo, hi) in panels.drain(..) {
        let whole = gl10(&integrand, lo, hi);
        let p = Panel::refine(&integrand, lo, hi, whole);
        if !p.value.is_finite() {
            return Err(Error::NonIntegrable {
                reason: "integrand is not finite on the region",
            });
        }
        store.push(p);
        evals += 30;
    }

    let mut heap: BinaryHeap<HeapEntry> = store
        .iter()
        .enumerate()
        .map(|(idx, p)| HeapEntry {
            error: p.error,
            idx,
        })
        .collect();
    let mut total = kahan_sum(store.iter().map(|p| p.value));
    let mut total_err = kahan_sum(store.iter().map(|p| p.error));

    loop {
        let norm = sqrt(total.max(0.0));
        let target_norm_err = 0.5 * abs_tol.max(cfg.rel_tol * norm);
        // ΔI ≤ 2·N·ε bounds the norm error by ε; ΔI ≤ ε² covers N ≈ 0.
        let target = (2.0 * norm * target_norm_err).max(target_norm_err * target_norm_err);
        if total_err <= target {
            break;
        }
        if evals + 40 > cfg.max_evals {
            return Err(Error::NonConvergent {
                evaluations: evals,
                estimated_error: SquaredIntegral {
                    value: total,
                    error: total_err,
                    panels: store.len(),
                    evaluations: evals,
                }
                .to_norm()
                .est_error,
                tolerance: target_norm_err * 2.0,
            });
        }
        let Some(top) = heap.pop() else { break };
        let parent = store[top.idx];
        let mid = 0.5 * (parent.lo + parent.hi);
        if !(mid > parent.lo && mid < parent.hi) {
            // Panel can no longer be bisected in floating point.
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let left = Panel::refine(&integrand, parent.lo, mid, parent.halves.0);
        let right = Panel::refine(&integrand, mid, parent.hi, parent.halves.1);
        evals += 40;
        if !(left.value.is_finite() && right.value.is_finite()) {
            return Err(Error::NonIntegrable {
                reason: "integrand is not finite on the region",
            });
        }
        total += left.value + right.value - parent.value;
        total_err += left.error + right.error - parent.error;
        store[top.idx] = left;
        store.push(right);
        heap.push(HeapEntry {
            error: left.error,
            idx: top.idx,
        });
        heap.push(HeapEntry {
            error: right.error,
            idx: store.len() - 1,
        });
    }

    // Final accumulation in positional order so the result does not depend on
    // the refinement history.
    store.sort_by(|p, q| p.lo.partial_cmp(&q.lo).unwrap_or(Ordering::Equal));
    Ok(SquaredIntegral {
        value: kahan_sum(store.iter().map(|p| p.value)),
        error: kahan_sum(store.iter().map(|p| p.error)),
        panels: store.len() * 2,
        evaluations: evals,
    })
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    halves: (f64, f64),
}

impl Panel {
    /// `whole` is the single-rule estimate over `[lo, hi]`.
    fn refine<G: Fn(f64) -> f64>(g: &G, lo: f64, hi: f64, whole: f64) -> Self {
        let mid = 0.5 * (lo + hi);
        let l = gl10(g, lo, mid);
        let r = gl10(g, mid, hi);
        let value = l + r;
        Self {
            lo,
            hi,
            value,
            error: fabs(value - whole),
            halves: (l, r),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    error: f64,
    idx: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.idx.cmp(&self.idx))
    }
}

fn gl10<G: Fn(f64) -> f64>(g: &G, lo: f64, hi: f64) -> f64 {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut acc = 0.0;
    for &(x, w) in GL10.iter() {
        acc += w * (g(c - h * x) + g(c + h * x));
    }
    acc * h
}

fn kahan_sum<I: Iterator<Item = f64>>(it: I) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in it {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

fn pow_int(r: f64, k: i32) -> f64 {
    match k {
        0 => 1.0,
        1 => r,
        2 => r * r,
        _ => {
            let mut acc = 1.0;
            let mut base = r;
            let mut e = k;
            while e > 0 {
                if e & 1 == 1 {
                    acc *= base;
                }
                base *= base;
                e >>= 1;
            }
            acc
        }
    }
}

/// Initial panels of width at most `2·cap` between mandatory breakpoints.
///
/// Each is later evaluated as two halves, so every evaluated panel respects
/// the oscillation cap.
fn initial_panels(a: f64, b: f64, osc_cap: f64, default_width: f64) -> Vec<(f64, f64)> {
    let mut breaks: Vec<f64> = Vec::with_capacity(5);
    breaks.push(a);
    for x in [delta_cutoff(), zeta_root(), 1.0] {
        if x > a && x < b {
            breaks.push(x);
        }
    }
    breaks.push(b);

    let width_at = |r: f64| -> f64 {
        let graded = if osc_cap.is_finite() {
            default_width
        } else {
            default_width.max(0.5 * r)
        };
        2.0 * graded.min(osc_cap)
    };

    let mut out = Vec::new();
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if osc_cap.is_finite() {
            // Uniform panels keep the positional sum independent of drift.
            let width = width_at(lo);
            let count = libm::ceil((hi - lo) / width).max(1.0) as usize;
            let step = (hi - lo) / count as f64;
            for i in 0..count {
                let p = lo + step * i as f64;
                let q = if i + 1 == count {
                    hi
                } else {
                    lo + step * (i + 1) as f64
                };
                out.push((p, q));
            }
        } else {
            let mut x = lo;
            loop {
                let width = width_at(x);
                if x + 1.25 * width >= hi {
                    out.push((x, hi));
                    break;
                }
                out.push((x, x + width));
                x += width;
            }
        }
    }
    out
}

/// One term `coeff · r^power · e^{−rate r²}` of a pointwise bound on `|f(r)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailTerm {
    pub coeff: f64,
    pub power: f64,
    pub rate: f64,
}

impl TailTerm {
    pub const fn new(coeff: f64, power: f64, rate: f64) -> Self {
        Self { coeff, power, rate }
    }

    pub const fn power_law(coeff: f64, power: f64) -> Self {
        Self::new(coeff, power, 0.0)
    }

    pub fn times(self, other: TailTerm) -> TailTerm {
        TailTerm {
            coeff: self.coeff * other.coeff,
            power: self.power + other.power,
            rate: self.rate + other.rate,
        }
    }

    pub fn eval(self, r: f64) -> f64 {
        self.coeff * pow(r, self.power) * exp(-self.rate * r * r)
    }
}

/// A certified bound `|f(r)| ≤ Σ terms` valid for every `r ≥ start`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailBound {
    pub start: f64,
    pub terms: Vec<TailTerm>,
}

impl TailBound {
    pub fn new(start: f64, terms: Vec<TailTerm>) -> Self {
        Self { start, terms }
    }

    fn active(&self) -> impl Iterator<Item = &TailTerm> {
        self.terms.iter().filter(|t| t.coeff != 0.0)
    }

    /// Upper bound on `∫_R^∞ |f|² ω_{n−1} r^{n−1} dr` for `R ≥ start`.
    ///
    /// Uses `(Σ_k c_k)² ≤ K Σ_k c_k²` and closed-form power or Gaussian tails.
    /// Returns `+∞` when some term is not square integrable at infinity.
    pub fn tail_mass(&self, n: u32, radius: f64) -> f64 {
        let count = self.active().count() as f64;
        if count == 0.0 {
            return 0.0;
        }
        let sphere = unit_sphere_area(n);
        let mut sum = 0.0;
        for term in self.active() {
            let m = 2.0 * term.power + (n as f64 - 1.0);
            let c = 2.0 * term.rate;
            let piece = if c == 0.0 {
                if m >= -1.0 {
                    return f64::INFINITY;
                }
                pow(radius, m + 1.0) / (-m - 1.0)
            } else {
                // ∫_R^∞ r^m e^{−c r²} dr ≤ R^{m−1} e^{−cR²} / (2c) / (1 − (m−1)⁺/(2cR²))
                let excess = (m - 1.0).max(0.0) / (2.0 * c * radius * radius);
                if excess >= 1.0 {
                    return f64::INFINITY;
                }
                pow(radius, m - 1.0) * exp(-c * radius * radius) / (2.0 * c) / (1.0 - excess)
            };
            sum += term.coeff * term.coeff * piece;
        }
        count * sphere * sum
    }
}

/// The smallest `Ξ ≥ bound.start` (to relative precision 1e−6) whose tail mass
/// is below `tol²/4`, so truncating at `Ξ` changes the norm by less than `tol/2`.
pub fn tail_cutoff(bound: Option<&TailBound>, n: u32, tol: f64) -> Result<f64> {
    let bound = bound.ok_or(Error::NoTailBound)?;
    if !(tol > 0.0) {
        return Err(invalid("tol", tol, "must be positive"));
    }
    let target = 0.25 * tol * tol;
    let start = bound.start.max(f64::MIN_POSITIVE);
    if bound.tail_mass(n, start) < target {
        return Ok(bound.start);
    }
    let mut lo = start;
    let mut hi = start * 2.0;
    while !(bound.tail_mass(n, hi) < target) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e15 {
            return Err(Error::NonIntegrable {
                reason: "tail bound does not decay fast enough to truncate",
            });
        }
    }
    while hi - lo > 1e-6 * hi {
        let mid = sqrt(lo * hi);
        if bound.tail_mass(n, mid) < target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn sphere_areas() {
        assert_eq!(unit_sphere_area(1), 2.0);
        assert!((unit_sphere_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((unit_sphere_area(3) - 4.0 * PI).abs() < 1e-13);
        // ω₉ = 2π⁵/Γ(5) = π⁵/12
        assert!((unit_sphere_area(10) - PI.powi(5) / 12.0).abs() < 1e-12);
        // ω₆ = 2π^{7/2}/Γ(7/2), Γ(7/2) = 15√π/8
        let g = 15.0 * PI.sqrt() / 8.0;
        assert!((unit_sphere_area(7) - 2.0 * PI.powf(3.5) / g).abs() < 1e-12);
    }

    #[test]
    fn gaussian_full_region_two_dimensions() {
        let cfg = QuadratureConfig::with_tol(1e-12);
        let xi = tail_cutoff(
            Some(&TailBound::new(1.0, vec![TailTerm::new(1.0, 0.0, 1.0)])),
            2,
            1e-12,
        )
        .unwrap();
        let res = l2_region_norm(|r: f64| (-r * r).exp(), Region::full(xi), 2, 1.0, &cfg).unwrap();
        assert!((res.value - (PI / 2.0).sqrt()).abs() < 1e-11);
        assert!(res.est_error < 1e-12);
    }

    #[test]
    fn unit_interval_in_one_dimension() {
        let cfg = QuadratureConfig::default();
        let res = l2_region_norm(|_r: f64| 1.0, Region::full(1.0), 1, 0.0, &cfg).unwrap();
        assert!((res.value - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn complex_integrand() {
        let cfg = QuadratureConfig::default();
        let f = |r: f64| Complex64::new(r.cos(), r.sin());
        let res = l2_region_norm(f, Region::full(3.0), 1, 0.0, &cfg).unwrap();
        assert!((res.value - 6f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_high_region_stable_under_refinement() {
        let f = |r: f64| (100.0 * r).sin() / r * (-1.0 / (2.0 * r * r)).exp();
        let coarse = QuadratureConfig::with_tol(1e-9);
        let fine = QuadratureConfig::with_tol(1e-12);
        let a = l2_region_norm(f, Region::high(50.0), 1, 100.0, &coarse).unwrap();
        let b = l2_region_norm(f, Region::high(50.0), 1, 100.0, &fine).unwrap();
        assert!((a.value - b.value).abs() < 1e-8);
    }

    #[test]
    fn scaling_is_exact_in_magnitude() {
        let cfg = QuadratureConfig::with_tol(1e-12);
        let f = |r: f64| (-r).exp() * (3.0 * r).cos();
        let base = l2_region_norm(f, Region::full(30.0), 3, 3.0, &cfg).unwrap();
        let scaled = l2_region_norm(|r| -4.0 * f(r), Region::full(30.0), 3, 3.0, &cfg).unwrap();
        assert!((scaled.value - 4.0 * base.value).abs() < 1e-12 * scaled.value);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cfg = QuadratureConfig {
            max_evals: 100,
            ..QuadratureConfig::default()
        };
        let err = l2_region_norm(|r: f64| (50.0 * r).sin(), Region::full(10.0), 1, 50.0, &cfg);
        assert!(matches!(err, Err(Error::NonConvergent { .. })));
    }

    #[test]
    fn non_finite_integrand_is_rejected() {
        let cfg = QuadratureConfig::default();
        let err = l2_region_norm(|_r: f64| f64::NAN, Region::full(1.0), 1, 0.0, &cfg);
        assert!(matches!(err, Err(Error::NonIntegrable { .. })));
    }

    #[test]
    fn tail_cutoff_gaussian_datum() {
        // |û|² for the a = 1 Gaussian in n = 3: π³ e^{−r²/2}.
        let bound = TailBound::new(1.0, vec![TailTerm::new(PI.powf(1.5), 0.0, 0.25)]);
        let xi = tail_cutoff(Some(&bound), 3, 1e-8).unwrap();
        assert!(xi <= 20.0, "xi = {xi}");
        // An independent check: the true tail beyond xi is below tol²/4.
        let tail: f64 = {
            let mut acc = 0.0;
            let h = 1e-3;
            let mut r = xi;
            while r < xi + 40.0 {
                let m = r + 0.5 * h;
                acc += PI.powi(3) * (-m * m / 2.0).exp() * 4.0 * PI * m * m * h;
                r += h;
            }
            acc
        };
        assert!(tail < 0.25 * 1e-16);
    }

    #[test]
    fn tail_cutoff_power_law_matches_closed_form() {
        // σ = 8, n = 10: |û|² ≤ r^{−16}, tail ω₉ R^{−6}/6.
        let bound = TailBound::new(1.0, vec![TailTerm::power_law(1.0, -8.0)]);
        let tol = 1e-6;
        let xi = tail_cutoff(Some(&bound), 10, tol).unwrap();
        let exact = (unit_sphere_area(10) / 6.0 / (0.25 * tol * tol)).powf(1.0 / 6.0);
        assert!((xi - exact).abs() < 1e-5 * exact);
    }

    #[test]
    fn tail_cutoff_zero_bound_returns_start() {
        let bound = TailBound::new(1.0, vec![]);
        assert_eq!(tail_cutoff(Some(&bound), 4, 1e-9).unwrap(), 1.0);
        assert_eq!(tail_cutoff(None, 4, 1e-9), Err(Error::NoTailBound));
    }

    #[test]
    fn tail_cutoff_rejects_non_integrable_tail() {
        let bound = TailBound::new(1.0, vec![TailTerm::power_law(1.0, 0.0)]);
        assert!(matches!(
            tail_cutoff(Some(&bound), 3, 1e-3),
            Err(Error::NonIntegrable { .. })
        ));
    }

    #[test]
    fn mandatory_breaks_present() {
        let panels = initial_panels(0.0, 5.0, f64::INFINITY, 0.25);
        for x in [delta_cutoff(), zeta_root(), 1.0] {
            assert!(panels.iter().any(|&(lo, _)| lo == x), "missing break {x}");
        }
        for w in panels.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
    }

    #[test]
    fn oscillation_cap_respected() {
        let t = 40.0;
        let panels = initial_panels(1.0, 3.0, PI / (2.0 * t), 0.25);
        for &(lo, hi) in &panels {
            assert!((hi - lo) / 2.0 <= PI / (2.0 * t) * (1.0 + 1e-12));
        }
    }
}
