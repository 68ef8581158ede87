//! Regime classification and measured decay rates.
//!
//! For a data pair and a reference profile, the residual `û(t,·) − profile`
//! is integrated over a frequency zone at geometrically spaced times and a
//! power law is fitted to the norms.

use alloc::vec::Vec;

use libm::{fabs, log, pow, sqrt};

use crate::data::DataPair;
use crate::error::{invalid, Error, Result};
use crate::profiles::ProfileKind;
use crate::quadrature::{
    integrate_squared, tail_cutoff, QuadratureConfig, QuadratureResult, Region, SquaredIntegral,
    TailBound, TailTerm, Zone,
};
use crate::symbol::{delta_cutoff, kernels, FrequencyRadius};

/// Slope tolerance used for every decay check.
pub const SLOPE_TOLERANCE: f64 = 0.15;
/// Fits with a coefficient of determination below this are flagged.
pub const PLATEAU_R_SQUARED: f64 = 0.98;

const EQ_TOL: f64 = 1e-12;

/// Large-time decay law for data of regularity `l` in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecayLaw {
    /// Wave-like profile, residual `t^{−(l+3)/2}`: `2 ≤ l ≤ n/2 − 3`, `n ≥ 10`.
    WaveRegularityLoss,
    /// Wave-like profile, residual `t^{−n/4}`: `2 ≤ l < n/2 − 1` with
    /// `n ∈ {7, 8, 9}`, or `n/2 − 3 < l < n/2 − 1` with `n ≥ 10`.
    WaveBand,
    /// Heat-like profile, residual `t^{−(l+1)/2}`: `l = 2, n = 4`;
    /// `2 ≤ l ≤ 5/2, n = 5`; or `n/2 − 1 < l ≤ n/2, n ≥ 6`.
    HeatEdgeBand,
    /// Heat-like profile, residual `t^{−(n+2)/4}`: `l > n/2, n ≥ 4`; or
    /// `l ≥ 2, n ≤ 3`.
    HeatBand,
    /// Combined profile at the threshold `l = n/2 − 1`, `n ≥ 6`.
    Threshold,
}

impl DecayLaw {
    pub const ALL: [DecayLaw; 5] = [
        DecayLaw::WaveRegularityLoss,
        DecayLaw::WaveBand,
        DecayLaw::HeatEdgeBand,
        DecayLaw::HeatBand,
        DecayLaw::Threshold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DecayLaw::WaveRegularityLoss => "wave-regularity-loss",
            DecayLaw::WaveBand => "wave-band",
            DecayLaw::HeatEdgeBand => "heat-edge-band",
            DecayLaw::HeatBand => "heat-band",
            DecayLaw::Threshold => "threshold",
        }
    }

    pub fn applies(self, n: u32, l: f64) -> bool {
        let h = n as f64 / 2.0;
        let eq = |a: f64, b: f64| fabs(a - b) <= EQ_TOL;
        let le = |a: f64, b: f64| a <= b + EQ_TOL;
        let lt = |a: f64, b: f64| a < b - EQ_TOL;
        match self {
            DecayLaw::WaveRegularityLoss => n >= 10 && le(2.0, l) && le(l, h - 3.0),
            DecayLaw::WaveBand => {
                ((7..=9).contains(&n) && le(2.0, l) && lt(l, h - 1.0))
                    || (n >= 10 && lt(h - 3.0, l) && lt(l, h - 1.0))
            }
            DecayLaw::HeatEdgeBand => {
                (n == 4 && eq(l, 2.0))
                    || (n == 5 && le(2.0, l) && le(l, 2.5))
                    || (n >= 6 && lt(h - 1.0, l) && le(l, h))
            }
            DecayLaw::HeatBand => (n >= 4 && lt(h, l)) || (n <= 3 && le(2.0, l)),
            DecayLaw::Threshold => n >= 6 && eq(l, h - 1.0),
        }
    }

    pub fn profile(self) -> ProfileKind {
        match self {
            DecayLaw::WaveRegularityLoss | DecayLaw::WaveBand => ProfileKind::WaveLike,
            DecayLaw::HeatEdgeBand | DecayLaw::HeatBand => ProfileKind::HeatLike,
            DecayLaw::Threshold => ProfileKind::Combined,
        }
    }

    /// Predicted power of `‖û − profile‖₂`.
    pub fn residual_exponent(self, n: u32, l: f64) -> f64 {
        let n = n as f64;
        match self {
            DecayLaw::WaveRegularityLoss => -(l + 3.0) / 2.0,
            DecayLaw::WaveBand => -n / 4.0,
            DecayLaw::HeatEdgeBand => -(l + 1.0) / 2.0,
            DecayLaw::HeatBand | DecayLaw::Threshold => -(n + 2.0) / 4.0,
        }
    }

    /// Predicted (optimal) power of `‖û‖₂`: `−(l+1)/2` below the threshold
    /// `l* = n/2 − 1`, `−n/4` from it on.
    pub fn solution_exponent(self, n: u32, l: f64) -> f64 {
        match self {
            DecayLaw::WaveRegularityLoss | DecayLaw::WaveBand => -(l + 1.0) / 2.0,
            _ => -(n as f64) / 4.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub n: u32,
    pub l: f64,
    pub law: Option<DecayLaw>,
    pub profile: Option<ProfileKind>,
    pub residual_exponent: f64,
    pub solution_exponent: f64,
    pub valid: bool,
    pub reason: &'static str,
}

/// Every law whose conditions hold at `(n, l)`.
pub fn matching_laws(n: u32, l: f64) -> Vec<DecayLaw> {
    DecayLaw::ALL
        .into_iter()
        .filter(|t| t.applies(n, l))
        .collect()
}

/// The threshold regularity `l* = n/2 − 1`.
pub fn threshold_regularity(n: u32) -> f64 {
    n as f64 / 2.0 - 1.0
}

pub fn classify_regime(n: u32, l: f64) -> Result<Regime> {
    if n == 0 {
        return Err(invalid("n", 0.0, "dimension must be at least 1"));
    }
    if !(l >= 2.0) || !l.is_finite() {
        return Err(invalid("l", l, "regularity must satisfy l >= 2"));
    }
    let found = matching_laws(n, l);
    let invalid_regime = |reason| Regime {
        n,
        l,
        law: None,
        profile: None,
        residual_exponent: f64::NAN,
        solution_exponent: f64::NAN,
        valid: false,
        reason,
    };
    Ok(match found.as_slice() {
        [t] => Regime {
            n,
            l,
            law: Some(*t),
            profile: Some(t.profile()),
            residual_exponent: t.residual_exponent(n, l),
            solution_exponent: t.solution_exponent(n, l),
            valid: true,
            reason: "",
        },
        [] => invalid_regime("no decay law covers this (n, l)"),
        _ => invalid_regime("several decay laws cover this (n, l)"),
    })
}

/// What the solution is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    /// `‖û‖` itself.
    Zero,
    Profile(ProfileKind),
    /// The solution itself; every residual vanishes.
    Solution,
}

impl Reference {
    pub fn name(self) -> &'static str {
        match self {
            Reference::Zero => "none",
            Reference::Profile(kind) => kind.name(),
            Reference::Solution => "solution",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub quadrature: QuadratureConfig,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            quadrature: QuadratureConfig {
                tol: 1e-300,
                rel_tol: 1e-4,
                max_evals: 50_000_000,
                default_width: 0.25,
            },
        }
    }
}

/// `û(t, r)` for the pair's real radial data.
#[inline]
fn solution_value(t: f64, r: f64, u0: f64, u1: f64) -> f64 {
    let fr = FrequencyRadius::from_raw(r);
    let (e0, e1) = kernels(t, fr);
    u0 * e0 + (u1 + u0 / (2.0 * fr.alpha())) * e1
}

/// Certified bound on `|û(t,r) − reference(t,r)|` for `r ≥ 1`.
///
/// With `α = 1 + r²` and `y = √(4α²r²−1)/(2α) ≥ 0.968 r` on `r ≥ 1`:
/// `|E₀| ≤ 1`, `|E₁| ≤ 1.033/r`, `|E₀ − e^{−t/2r²}cos tr| ≤ 0.75 t/r⁴` and
/// `|E₁ − e^{−t/2r²}sin(tr)/r| ≤ 0.517 t/r⁵ + 0.259 t/r⁶ + 0.259/r⁷`,
/// using `0 ≤ r − y ≤ 1/(4r⁵)` and `1/r² − 1/α ≤ 1/r⁴`.
pub fn residual_tail_bound(pair: &DataPair, reference: Reference, t: f64) -> TailBound {
    let d0 = pair.u0.tail_terms();
    let d1 = pair.u1.tail_terms();
    let scaled = |data: &[TailTerm], coeff: f64, power: f64| -> Vec<TailTerm> {
        data.iter()
            .map(|d| d.times(TailTerm::power_law(coeff, power)))
            .collect()
    };
    let mut terms = Vec::new();
    let solution_terms = |terms: &mut Vec<TailTerm>| {
        terms.extend(scaled(&d0, 1.0, 0.0));
        terms.extend(scaled(&d1, 1.033, -1.0));
        terms.extend(scaled(&d0, 0.517, -3.0));
    };
    let wave_terms = |terms: &mut Vec<TailTerm>| {
        terms.extend(scaled(&d0, 0.75 * t, -4.0));
        terms.extend(scaled(&d0, 0.517, -3.0));
        terms.extend(scaled(&d1, 0.517 * t, -5.0));
        terms.extend(scaled(&d1, 0.259 * t, -6.0));
        terms.extend(scaled(&d1, 0.259, -7.0));
    };
    let heat_term = TailTerm::new(fabs(pair.total_moment()), 0.0, t);
    match reference {
        Reference::Solution => {}
        Reference::Zero => solution_terms(&mut terms),
        Reference::Profile(ProfileKind::HeatLike) => {
            solution_terms(&mut terms);
            terms.push(heat_term);
        }
        Reference::Profile(ProfileKind::WaveLike) => wave_terms(&mut terms),
        Reference::Profile(ProfileKind::Combined) => {
            wave_terms(&mut terms);
            terms.push(heat_term);
        }
    }
    terms.retain(|term| term.coeff != 0.0);
    TailBound::new(1.0, terms)
}

/// Region `L²` norm of `û(t,·) − reference(t,·)` at one time.
///
/// Unbounded zones are truncated at the tail cutoff for
/// `max(tol, rel_tol · norm)`, extending the range until the cutoff no
/// longer moves; the tail bound is added to the reported error.
pub fn residual_norm_at(
    pair: &DataPair,
    reference: Reference,
    zone: Zone,
    t: f64,
    cfg: &SeriesConfig,
) -> Result<(QuadratureResult, Region)> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid("t", t, "time must be positive"));
    }
    let n = pair.dimension;
    let moment = pair.total_moment();
    let u0 = &pair.u0;
    let u1 = &pair.u1;
    let integrand = |r: f64| -> f64 {
        let (a, b) = (u0.uhat(r), u1.uhat(r));
        let sol = solution_value(t, r, a, b);
        match reference {
            Reference::Zero => sol,
            Reference::Solution => sol - solution_value(t, r, a, b),
            Reference::Profile(kind) => sol - kind.eval_unchecked(t, r, a, b, moment),
        }
    };
    let q = &cfg.quadrature;
    let base = match zone {
        Zone::Low => Region::low(),
        Zone::Mid => Region::mid(),
        Zone::High => Region::high(1.0),
        Zone::Full => Region::full(1.0),
    };
    if !base.is_unbounded() {
        let sq = integrate_squared(&integrand, base.lower, base.upper, n, t, q, q.tol)?;
        return Ok((sq.to_norm(), base));
    }

    let bound = residual_tail_bound(pair, reference, t);
    let tail_start = bound.start;
    let rough = sqrt(bound.tail_mass(n, tail_start));
    let first_tol = q.tol.max(q.rel_tol * rough);
    let mut upper = if rough > 0.0 {
        tail_cutoff(Some(&bound), n, first_tol)?
    } else {
        tail_start
    };
    let mut sq = integrate_squared(&integrand, base.lower, upper, n, t, q, q.tol)?;
    let mut tol_used = first_tol;
    for _ in 0..32 {
        let norm = sqrt(sq.value.max(0.0));
        let want = q.tol.max(q.rel_tol * norm);
        if want >= tol_used || rough == 0.0 {
            break;
        }
        tol_used = want;
        let next = tail_cutoff(Some(&bound), n, want)?;
        if next > upper {
            let ext = integrate_squared(&integrand, upper, next, n, t, q, want)?;
            sq = sq + ext;
            upper = next;
        }
    }
    let tail = bound.tail_mass(n, upper.max(tail_start));
    let total = SquaredIntegral {
        error: sq.error + tail,
        ..sq
    };
    Ok((total.to_norm(), base.truncated_at(upper)))
}

/// Least-squares line through `(x_i, y_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope.
    pub stderr: f64,
    pub r_squared: f64,
    pub points: usize,
}

impl LineFit {
    /// Flagged when the fit explains less than [`PLATEAU_R_SQUARED`] of the variance.
    pub fn is_plateau(&self) -> bool {
        self.r_squared < PLATEAU_R_SQUARED
    }
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    let m = xs.len();
    if m != ys.len() || m < 3 {
        return Err(Error::DegenerateSeries {
            reason: "a line fit needs at least three points",
        });
    }
    let mf = m as f64;
    let mx = xs.iter().sum::<f64>() / mf;
    let my = ys.iter().sum::<f64>() / mf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if !(sxx > 0.0) {
        return Err(Error::DegenerateSeries {
            reason: "abscissae are all equal",
        });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - sse / syy } else { 1.0 };
    Ok(LineFit {
        slope,
        intercept,
        stderr: sqrt(sse / (mf - 2.0) / sxx),
        r_squared,
        points: m,
    })
}

/// Power-law fit `norm ≈ C t^slope` over the last decade of `times`.
pub fn fit_power_law(times: &[f64], norms: &[f64]) -> Result<LineFit> {
    let Some(&t_last) = times.last() else {
        return Err(Error::DegenerateSeries {
            reason: "empty series",
        });
    };
    if times[0] > t_last / 10.0 * (1.0 + 1e-12) {
        return Err(Error::DegenerateSeries {
            reason: "series spans less than a decade of time",
        });
    }
    let start = times
        .iter()
        .position(|&t| t >= t_last / 10.0 * (1.0 - 1e-12))
        .unwrap_or(0);
    let (ts, ns) = (&times[start..], &norms[start..]);
    if ns.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::DegenerateSeries {
            reason: "zero or non-finite norms in the fit window",
        });
    }
    let xs: Vec<f64> = ts.iter().map(|&t| log(t)).collect();
    let ys: Vec<f64> = ns.iter().map(|&v| log(v)).collect();
    fit_line(&xs, &ys)
}

/// `t_k = t0 · ratio^k` for every `t_k ≤ t_max`.
pub fn geometric_times(t0: f64, ratio: f64, t_max: f64) -> Result<Vec<f64>> {
    if !(t0 > 0.0 && ratio > 1.0 && t_max >= t0 && t_max.is_finite()) {
        return Err(invalid(
            "t_max",
            t_max,
            "need 0 < t0 <= t_max and ratio > 1",
        ));
    }
    let mut out = Vec::new();
    let mut k = 0i32;
    loop {
        let t = t0 * pow(ratio, k as f64);
        if t > t_max * (1.0 + 1e-12) {
            break;
        }
        out.push(t);
        k += 1;
    }
    Ok(out)
}

/// The default grid `10 · 1.25^k` up to `t_max`.
pub fn default_times(t_max: f64) -> Result<Vec<f64>> {
    geometric_times(10.0, 1.25, t_max)
}

/// Default horizon: `10³` where a wave profile is involved, `10⁴` for heat.
pub fn default_t_max(regime: &Regime) -> f64 {
    match regime.profile {
        Some(ProfileKind::HeatLike) => 1e4,
        _ => 1e3,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSeries {
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
    pub errors: Vec<f64>,
    /// Truncation radius used at each time (equal to the zone's upper bound
    /// for bounded zones).
    pub cutoffs: Vec<f64>,
    pub zone: Zone,
    pub reference: Reference,
    pub fit: Option<LineFit>,
    /// Why `fit` is missing, or that it looks like a plateau.
    pub flag: Option<&'static str>,
}

impl ResidualSeries {
    pub fn from_samples(
        zone: Zone,
        reference: Reference,
        times: Vec<f64>,
        samples: Vec<(QuadratureResult, Region)>,
    ) -> Result<Self> {
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::DegenerateSeries {
                reason: "times must be strictly increasing",
            });
        }
        let norms: Vec<f64> = samples.iter().map(|(q, _)| q.value).collect();
        let errors = samples.iter().map(|(q, _)| q.est_error).collect();
        let cutoffs = samples.iter().map(|(_, r)| r.upper).collect();
        let (fit, flag) = match fit_power_law(&times, &norms) {
            Ok(fit) if fit.is_plateau() => (Some(fit), Some("plateau: R^2 below 0.98")),
            Ok(fit) => (Some(fit), None),
            Err(Error::DegenerateSeries { reason }) => (None, Some(reason)),
            Err(e) => return Err(e),
        };
        Ok(Self {
            times,
            norms,
            errors,
            cutoffs,
            zone,
            reference,
            fit,
            flag,
        })
    }

    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }
}

pub fn residual_series(
    pair: &DataPair,
    reference: Reference,
    zone: Zone,
    times: &[f64],
    cfg: &SeriesConfig,
) -> Result<ResidualSeries> {
    if let Some(&bad) = times.iter().find(|&&t| !(t >= 1.0)) {
        return Err(invalid("t", bad, "series times must be at least 1"));
    }
    let samples = times
        .iter()
        .map(|&t| residual_norm_at(pair, reference, zone, t, cfg))
        .collect::<Result<Vec<_>>>()?;
    ResidualSeries::from_samples(zone, reference, times.to_vec(), samples)
}

pub fn solution_norm_series(
    pair: &DataPair,
    zone: Zone,
    times: &[f64],
    cfg: &SeriesConfig,
) -> Result<ResidualSeries> {
    residual_series(pair, Reference::Zero, zone, times, cfg)
}

/// Exponential rate of the mid-frequency norm of `û`.
#[derive(Debug, Clone, PartialEq)]
pub struct MidRate {
    pub eta: f64,
    pub fit: LineFit,
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
}

impl MidRate {
    /// Slope standard error relative to `|slope|`.
    pub fn relative_stderr(&self) -> f64 {
        self.fit.stderr / fabs(self.fit.slope)
    }
}

/// The default linear grid `t = 10, 20, …, 200`.
pub fn default_mid_times() -> Vec<f64> {
    (1..=20).map(|k| 10.0 * k as f64).collect()
}

/// Fits `log ‖û(t)‖_{L²(δ<|ξ|<1)} ≈ c − η t`.
pub fn mid_region_rate(pair: &DataPair, times: &[f64], cfg: &SeriesConfig) -> Result<MidRate> {
    if let Some(&bad) = times.iter().find(|&&t| !(1.0..=200.0).contains(&t)) {
        return Err(invalid("t", bad, "mid-region times must lie in [1, 200]"));
    }
    let norms = times
        .iter()
        .map(|&t| residual_norm_at(pair, Reference::Zero, Zone::Mid, t, cfg).map(|(q, _)| q.value))
        .collect::<Result<Vec<f64>>>()?;
    let positive = norms
        .iter()
        .take_while(|&&v| v > 0.0 && v.is_finite())
        .count();
    if positive < 10 || positive < norms.len() {
        return Err(Error::DegenerateSeries {
            reason: "mid-region norms underflow before enough samples",
        });
    }
    let ys: Vec<f64> = norms.iter().map(|&v| log(v)).collect();
    let fit = fit_line(times, &ys)?;
    Ok(MidRate {
        eta: -fit.slope,
        fit,
        times: times.to_vec(),
        norms,
    })
}

/// A measured slope compared with its prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeCheck {
    pub measured: f64,
    pub predicted: f64,
    pub tolerance: f64,
    /// Two-sided checks require `|measured − predicted| ≤ tolerance`;
    /// one-sided checks only `measured ≤ predicted + tolerance`, since an
    /// upper bound allows faster decay.
    pub two_sided: bool,
    pub pass: bool,
}

impl SlopeCheck {
    pub fn new(measured: f64, predicted: f64, tolerance: f64, two_sided: bool) -> Self {
        let pass = if two_sided {
            fabs(measured - predicted) <= tolerance
        } else {
            measured <= predicted + tolerance
        };
        Self {
            measured,
            predicted,
            tolerance,
            two_sided,
            pass: pass && measured.is_finite(),
        }
    }
}

/// Frequency radius of the low/mid split, re-exported for reports.
pub fn low_mid_split() -> f64 {
    delta_cutoff()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_study_dimension_ten() {
        let r = classify_regime(10, 2.0).unwrap();
        assert_eq!(r.law, Some(DecayLaw::WaveRegularityLoss));
        assert_eq!(r.profile, Some(ProfileKind::WaveLike));
        assert_eq!((r.residual_exponent, r.solution_exponent), (-2.5, -1.5));

        let r = classify_regime(10, 3.0).unwrap();
        assert_eq!(r.profile, Some(ProfileKind::WaveLike));
        assert_eq!(r.solution_exponent, -2.0);

        let r = classify_regime(10, 4.0).unwrap();
        assert_eq!(r.law, Some(DecayLaw::Threshold));
        assert_eq!(r.profile, Some(ProfileKind::Combined));
        assert_eq!((r.residual_exponent, r.solution_exponent), (-3.0, -2.5));

        let r = classify_regime(10, 5.0).unwrap();
        assert_eq!(r.profile, Some(ProfileKind::HeatLike));
        assert_eq!(r.solution_exponent, -2.5);
    }

    #[test]
    fn low_dimension_heat() {
        let r = classify_regime(3, 2.0).unwrap();
        assert_eq!(r.law, Some(DecayLaw::HeatBand));
        assert_eq!((r.residual_exponent, r.solution_exponent), (-1.25, -0.75));
    }

    #[test]
    fn heat_band_above_half_dimension() {
        let r = classify_regime(10, 7.0).unwrap();
        assert_eq!(r.law, Some(DecayLaw::HeatBand));
        assert_eq!(r.residual_exponent, -3.0);
    }

    #[test]
    fn rejects_low_regularity() {
        assert!(classify_regime(5, 1.5).is_err());
        assert!(classify_regime(0, 2.0).is_err());
    }

    #[test]
    fn classification_is_exhaustive_and_exclusive() {
        for n in 1..=20u32 {
            for k in 0..=20 {
                let l = 2.0 + 0.5 * k as f64;
                let found = matching_laws(n, l);
                assert_eq!(found.len(), 1, "n = {n}, l = {l}: {found:?}");
                let r = classify_regime(n, l).unwrap();
                assert!(r.valid);
                assert!(r.residual_exponent < 0.0 && r.solution_exponent < 0.0);
            }
        }
    }

    #[test]
    fn synthetic_power_law_fit() {
        let times = default_times(1e3).unwrap();
        let norms: Vec<f64> = times.iter().map(|&t| 3.0 * t.powf(-2.0)).collect();
        let fit = fit_power_law(&times, &norms).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-12);
        assert!(fit.points >= 10);
        assert!(!fit.is_plateau());
    }

    #[test]
    fn fit_window_needs_a_decade() {
        let times = [10.0, 20.0, 40.0];
        assert!(fit_power_law(&times, &[1.0, 0.5, 0.25]).is_err());
    }

    #[test]
    fn zero_series_is_flagged() {
        let times = default_times(1e2).unwrap();
        let samples = times
            .iter()
            .map(|_| {
                (
                    QuadratureResult {
                        value: 0.0,
                        est_error: 0.0,
                        panels_used: 0,
                        evaluations: 0,
                    },
                    Region::low(),
                )
            })
            .collect();
        let s =
            ResidualSeries::from_samples(Zone::Low, Reference::Solution, times, samples).unwrap();
        assert!(s.fit.is_none());
        assert!(s.flag.is_some());
    }

    #[test]
    fn default_grid_shape() {
        let t = default_times(1e3).unwrap();
        assert_eq!(t[0], 10.0);
        assert!(*t.last().unwrap() <= 1e3);
        assert!(t.windows(2).all(|w| (w[1] / w[0] - 1.25).abs() < 1e-12));
    }

    #[test]
    fn slope_check_policy() {
        assert!(SlopeCheck::new(-2.7, -2.5, 0.15, false).pass);
        assert!(!SlopeCheck::new(-2.7, -2.5, 0.15, true).pass);
        assert!(!SlopeCheck::new(-2.3, -2.5, 0.15, false).pass);
        assert!(SlopeCheck::new(-1.4, -1.5, 0.15, true).pass);
    }
}
