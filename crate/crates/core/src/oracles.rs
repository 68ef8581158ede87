//! Independent checks of the closed form and of the auxiliary inequalities
//! used in the decay estimates.
//!
//! The mode integrator shares no code with [`crate::symbol`]: it integrates
//! the ODE for one frequency directly.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use libm::{ceil, exp, expm1, fabs, pow, sin, sqrt};
use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::symbol::{
    characteristic_roots, delta_cutoff, uhat_solution, uhat_time_derivative, zeta_root,
    FrequencyRadius,
};

/// Time history of one Fourier mode.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeTrace {
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
    pub derivs: Vec<Complex64>,
    pub step: f64,
    /// `|û(t_end)|` difference between this run and one at half the step.
    pub refinement_delta: f64,
}

/// Classical fourth-order Runge–Kutta for
/// `(û, v)' = (v, −(v + r²(1+r²)û)/(1+r²))`.
///
/// The step is shrunk to divide `t_end` evenly.
pub fn integrate_mode(
    r: f64,
    u0hat: Complex64,
    u1hat: Complex64,
    t_end: f64,
    step: f64,
) -> Result<OdeTrace> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(invalid("step", step, "must be positive"));
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(invalid("t_end", t_end, "must be finite and nonnegative"));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(invalid(
            "r",
            r,
            "frequency radius must be finite and nonnegative",
        ));
    }
    let coarse = rk4_run(r, u0hat, u1hat, t_end, step, true);
    let fine = rk4_run(r, u0hat, u1hat, t_end, 0.5 * step, false);
    let end_coarse = *coarse.values.last().unwrap_or(&u0hat);
    let end_fine = *fine.values.last().unwrap_or(&u0hat);
    Ok(OdeTrace {
        refinement_delta: (end_coarse - end_fine).norm(),
        ..coarse
    })
}

fn rk4_run(
    r: f64,
    u0hat: Complex64,
    u1hat: Complex64,
    t_end: f64,
    max_step: f64,
    record: bool,
) -> OdeTrace {
    let steps = ceil(t_end / max_step).max(1.0) as usize;
    let h = t_end / steps as f64;
    let mass = 1.0 + r * r;
    let stiffness = r * r * mass;
    let accel = |u: Complex64, v: Complex64| -> Complex64 { -(v + u * stiffness) / mass };

    let capacity = if record { steps + 1 } else { 1 };
    let mut times = Vec::with_capacity(capacity);
    let mut values = Vec::with_capacity(capacity);
    let mut derivs = Vec::with_capacity(capacity);
    let (mut u, mut v) = (u0hat, u1hat);
    times.push(0.0);
    values.push(u);
    derivs.push(v);
    for k in 0..steps {
        let k1u = v;
        let k1v = accel(u, v);
        let k2u = v + k1v * (0.5 * h);
        let k2v = accel(u + k1u * (0.5 * h), v + k1v * (0.5 * h));
        let k3u = v + k2v * (0.5 * h);
        let k3v = accel(u + k2u * (0.5 * h), v + k2v * (0.5 * h));
        let k4u = v + k3v * h;
        let k4v = accel(u + k3u * h, v + k3v * h);
        u += (k1u + k2u * 2.0 + k3u * 2.0 + k4u) * (h / 6.0);
        v += (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6.0);
        if record {
            times.push(h * (k + 1) as f64);
            values.push(u);
            derivs.push(v);
        } else {
            values[0] = u;
            derivs[0] = v;
        }
    }
    if !record {
        times[0] = t_end;
    }
    OdeTrace {
        times,
        values,
        derivs,
        step: h,
        refinement_delta: 0.0,
    }
}

/// Largest discrepancy between a trace and the closed form, relative to the
/// local mode amplitude `√(|û|² + |û_t|²/max(r², 1))`.
pub fn closed_form_discrepancy(
    trace: &OdeTrace,
    r: f64,
    u0hat: Complex64,
    u1hat: Complex64,
) -> f64 {
    let fr = FrequencyRadius::from_raw(r);
    let freq2 = (r * r).max(1.0);
    trace
        .times
        .iter()
        .zip(trace.values.iter().zip(trace.derivs.iter()))
        .map(|(&t, (&u, &v))| {
            let exact = uhat_solution(t, fr, u0hat, u1hat);
            let exact_t = uhat_time_derivative(t, fr, u0hat, u1hat);
            let amplitude = sqrt(exact.norm_sqr() + exact_t.norm_sqr() / freq2);
            let diff = (u - exact).norm().max((v - exact_t).norm() / sqrt(freq2));
            if amplitude > 0.0 {
                diff / amplitude
            } else {
                diff
            }
        })
        .fold(0.0, f64::max)
}

/// One pointwise inequality check.
/// Radii for the ODE comparison: both sides of the low-frequency cutoff,
/// the branch point and `ζ ± 1e−4`, and the high-frequency side.
pub fn ode_radius_grid() -> [f64; 11] {
    let z = zeta_root();
    [
        0.0,
        0.05,
        0.2,
        delta_cutoff(),
        z - 1e-4,
        z,
        z + 1e-4,
        0.7,
        1.0,
        2.0,
        5.0,
    ]
}

/// Default RK4 step; keeps step-halving changes below `1e−9` up to `r = 5`.
pub const ODE_STEP: f64 = 1e-4;

/// Closed form against RK4 for two data pairs on [`ode_radius_grid`] over
/// `[0, t_end]`; each row passes when the relative discrepancy is below
/// `tol` and step halving moves the endpoint by less than `1e−9`.
pub fn ode_oracle_check(t_end: f64, step: f64, tol: f64) -> Result<LemmaReport> {
    let data = [
        (Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)),
        (Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.25)),
    ];
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for r in ode_radius_grid() {
        let mut measured: f64 = 0.0;
        let mut refinement: f64 = 0.0;
        for &(u0, u1) in &data {
            let trace = integrate_mode(r, u0, u1, t_end, step)?;
            measured = measured.max(closed_form_discrepancy(&trace, r, u0, u1));
            refinement = refinement.max(trace.refinement_delta);
        }
        worst = worst.max(measured);
        rows.push(LemmaRow {
            lemma: "ode",
            parameter: format!("r={r}"),
            bound: tol,
            measured,
            pass: measured < tol && refinement < 1e-9,
        });
    }
    Ok(LemmaReport {
        lemma: "ode",
        rows,
        admissible_constant: worst,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaRow {
    pub lemma: &'static str,
    pub parameter: String,
    pub bound: f64,
    pub measured: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub rows: Vec<LemmaRow>,
    /// The smallest constant that makes the inequality hold on the grid.
    pub admissible_constant: f64,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn log_grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let ratio = pow(hi / lo, 1.0 / (points - 1) as f64);
    (0..points).map(move |i| {
        if i + 1 == points {
            hi
        } else {
            lo * pow(ratio, i as f64)
        }
    })
}

/// `sup_{x ≥ 1} e^{−t/x}/x^l` in closed form; the maximizer is `t/l` when
/// that is at least 1, otherwise `x = 1`. For `l = 0` the supremum `1` is
/// approached as `x → ∞`.
pub fn lemma44_sup(l: f64, t: f64) -> f64 {
    if l == 0.0 {
        return 1.0;
    }
    let x = if t / l >= 1.0 { t / l } else { 1.0 };
    exp(-t / x) / pow(x, l)
}

/// Supremum bound for `e^{−t/x}/x^l`: `C (1+t)^{−l}` with the constant
/// `C = e · sup_s s^{2l} e^{−s²} = e (l/e)^l` from the change of variables
/// `s² = (1+t)/x`.
pub fn lemma44_constant(l: f64) -> f64 {
    if l == 0.0 {
        core::f64::consts::E
    } else {
        core::f64::consts::E * pow(l / core::f64::consts::E, l)
    }
}

/// Checks `sup_{x≥1} e^{−t/x}/x^l ≤ C(1+t)^{−l}` on `t_grid`.
///
/// Each row compares the supremum against the bound; it also fails if a
/// brute-force grid over `x ∈ [1, 10¹²]` finds a value above the closed form.
pub fn lemma44_check(l: f64, t_grid: &[f64]) -> Result<LemmaReport> {
    if !(l >= 0.0 && l.is_finite()) {
        return Err(invalid("l", l, "must be finite and nonnegative"));
    }
    let c = lemma44_constant(l);
    let mut rows = Vec::with_capacity(t_grid.len());
    let mut admissible: f64 = 0.0;
    for &t in t_grid {
        let sup = lemma44_sup(l, t);
        let brute = log_grid(1.0, 1e12, 4000)
            .map(|x| exp(-t / x) / pow(x, l))
            .fold(0.0, f64::max);
        let bound = c * pow(1.0 + t, -l);
        admissible = admissible.max(sup * pow(1.0 + t, l));
        rows.push(LemmaRow {
            lemma: "4.4",
            parameter: format!("l={l};t={t}"),
            bound,
            measured: sup,
            pass: sup <= bound * (1.0 + 1e-12) && brute <= sup * (1.0 + 1e-12),
        });
    }
    Ok(LemmaReport {
        lemma: "4.4",
        rows,
        admissible_constant: admissible,
    })
}

/// Checks `sup_{x>0} |sin(tx)/x| = t` on `t_grid` and
/// `sinh(tx)/x ≤ C t e^{tx}` on `(x, t) ∈ [1e−6, 10]²`.
pub fn lemma46_47_check(t_grid: &[f64]) -> (LemmaReport, LemmaReport) {
    let mut rows46 = Vec::with_capacity(t_grid.len());
    let mut worst46: f64 = 0.0;
    for &t in t_grid {
        let mut sup: f64 = 0.0;
        let mut exceeded = false;
        for x in log_grid(1e-12, 1e3, 6000) {
            let v = fabs(sin(t * x) / x);
            exceeded |= v > t * (1.0 + 1e-12);
            sup = sup.max(v);
        }
        let close = if t > 0.0 {
            fabs(sup - t) <= 1e-3 * t
        } else {
            sup == 0.0
        };
        if t > 0.0 {
            worst46 = worst46.max(sup / t);
        }
        rows46.push(LemmaRow {
            lemma: "4.6",
            parameter: format!("t={t}"),
            bound: t,
            measured: sup,
            pass: close && !exceeded,
        });
    }

    // sinh(tx)/x / (t e^{tx}) = (1 − e^{−2tx}) / (2tx), which avoids overflow.
    let mut ratio_max: f64 = 0.0;
    let mut rows47 = Vec::new();
    let grid: Vec<f64> = log_grid(1e-6, 10.0, 200).collect();
    for &t in &grid {
        let mut row_max: f64 = 0.0;
        for &x in &grid {
            let y = t * x;
            let ratio = -expm1(-2.0 * y) / (2.0 * y);
            row_max = row_max.max(ratio);
        }
        ratio_max = ratio_max.max(row_max);
        rows47.push(LemmaRow {
            lemma: "4.7",
            parameter: format!("t={t}"),
            bound: 1.0,
            measured: row_max,
            pass: row_max <= 1.0,
        });
    }

    (
        LemmaReport {
            lemma: "4.6",
            rows: rows46,
            admissible_constant: worst46,
        },
        LemmaReport {
            lemma: "4.7",
            rows: rows47,
            admissible_constant: ratio_max,
        },
    )
}

/// `g(β) = 2(1+β)/(1+√(1−4β(1+β)²))`, so that `λ₁ = −r² g(r²)`.
pub fn g_factor(beta: f64) -> f64 {
    2.0 * (1.0 + beta) / (1.0 + sqrt(1.0 - 4.0 * beta * (1.0 + beta) * (1.0 + beta)))
}

/// `f(r) = 1/√D − 1` with `D = 1 − 4r²(1+r²)²`, in cancellation-free form.
pub fn f_factor(r: f64) -> f64 {
    let a = 1.0 + r * r;
    let q = 4.0 * r * r * a * a;
    let sd = sqrt(1.0 - q);
    q / (sd * (1.0 + sd))
}

/// The same with `(1+r)²` in place of `(1+r²)²` inside the root.
pub fn f_factor_variant(r: f64) -> f64 {
    let a = 1.0 + r * r;
    let b = 1.0 + r;
    let q = 4.0 * r * r * b * b;
    let sd = sqrt(1.0 - q);
    (4.0 * r * r * a * a) / (sd * (1.0 + sd))
}

/// Structural facts behind the low-frequency expansion on `r ∈ [0, δ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowFrequencyReport {
    /// `min g(r²)`.
    pub g_min: f64,
    /// `max |g'(r²)|` by central differences.
    pub dg_max: f64,
    /// `max |λ₁(r) + r² g(r²)|`.
    pub identity_residual: f64,
    /// `max |f(r)| / r²` for the `(1+r²)²` reading.
    pub f_constant: f64,
    /// `max |f(r) − f_variant(r)|` between the two readings of the discriminant.
    pub f_variant_gap: f64,
    pub rows: Vec<LemmaRow>,
}

impl LowFrequencyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

pub fn lowfreq_structure_check(r_grid: &[f64]) -> Result<LowFrequencyReport> {
    let delta = delta_cutoff();
    if let Some(&bad) = r_grid.iter().find(|&&r| !(r >= 0.0 && r <= delta)) {
        return Err(invalid("r", bad, "grid must lie in [0, delta]"));
    }
    let beta_max = delta * delta;
    let h = 1e-6;
    let mut g_min = f64::INFINITY;
    let mut dg_max: f64 = 0.0;
    let mut identity: f64 = 0.0;
    let mut f_const: f64 = 0.0;
    let mut gap: f64 = 0.0;
    for &r in r_grid {
        let beta = r * r;
        let g = g_factor(beta);
        g_min = g_min.min(g);
        let (lo, hi) = ((beta - h).max(0.0), (beta + h).min(beta_max));
        let dg = (g_factor(hi) - g_factor(lo)) / (hi - lo);
        dg_max = dg_max.max(fabs(dg));
        let lambda1 = characteristic_roots(FrequencyRadius::from_raw(r))
            .lambda1
            .re;
        identity = identity.max(fabs(lambda1 + beta * g));
        if r > 0.0 {
            f_const = f_const.max(fabs(f_factor(r)) / beta);
        }
        gap = gap.max(fabs(f_factor(r) - f_factor_variant(r)));
    }
    let rows = alloc::vec![
        LemmaRow {
            lemma: "4.2:g",
            parameter: String::from("min g"),
            bound: 0.0,
            measured: g_min,
            pass: g_min > 0.0 && g_min.is_finite(),
        },
        LemmaRow {
            lemma: "4.2:g'",
            parameter: String::from("max |dg/dbeta|"),
            bound: f64::INFINITY,
            measured: dg_max,
            pass: dg_max.is_finite(),
        },
        LemmaRow {
            lemma: "4.2:lambda1",
            parameter: String::from("max |lambda1 + r^2 g(r^2)|"),
            bound: 1e-12,
            measured: identity,
            pass: identity < 1e-12,
        },
        LemmaRow {
            lemma: "4.2:f",
            parameter: String::from("max |f|/r^2"),
            bound: f64::INFINITY,
            measured: f_const,
            pass: f_const.is_finite(),
        },
        LemmaRow {
            lemma: "4.2:f-variant",
            parameter: String::from("max |f - f_variant|"),
            bound: f64::INFINITY,
            measured: gap,
            pass: gap.is_finite(),
        },
    ];
    Ok(LowFrequencyReport {
        g_min,
        dg_max,
        identity_residual: identity,
        f_constant: f_const,
        f_variant_gap: gap,
        rows,
    })
}
