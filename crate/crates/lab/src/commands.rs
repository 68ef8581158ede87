use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use platelab_core::decay::{
    residual_norm_at, Reference, Regime, ResidualSeries, SeriesConfig, SlopeCheck, SLOPE_TOLERANCE,
};
use platelab_core::oracles::{
    lemma44_check, lemma44_constant, lemma46_47_check, lowfreq_structure_check, ode_oracle_check,
    LemmaRow, ODE_STEP,
};
use platelab_core::quadrature::Zone;
use platelab_core::symbol::{characteristic_roots, BranchConstants, FrequencyRadius};
use platelab_core::{DataPair, ProfileKind};
use rayon::prelude::*;

use crate::error::{LabError, LabResult};
use crate::scenario::Scenario;

pub fn open_output(path: Option<&Path>) -> LabResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:?}")
    }
}

/// Samples are independent; the series is assembled in time order.
pub fn run_series(
    pair: &DataPair,
    reference: Reference,
    zone: Zone,
    times: &[f64],
    cfg: &SeriesConfig,
) -> LabResult<ResidualSeries> {
    let samples = times
        .par_iter()
        .map(|&t| residual_norm_at(pair, reference, zone, t, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ResidualSeries::from_samples(
        zone,
        reference,
        times.to_vec(),
        samples,
    )?)
}

#[derive(Debug, Clone)]
pub struct NamedCheck {
    pub name: &'static str,
    pub predicted: f64,
    /// `None` when no slope could be fitted.
    pub check: Option<SlopeCheck>,
}

impl NamedCheck {
    pub fn pass(&self) -> bool {
        self.check.is_some_and(|c| c.pass)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub regime: Regime,
    pub residual: ResidualSeries,
    pub solution: ResidualSeries,
    pub checks: Vec<NamedCheck>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(NamedCheck::pass)
    }
}

/// Residual against the regime's profile (one-sided) and, on the full
/// region, the solution norm (two-sided).
pub fn verify(s: &Scenario) -> LabResult<VerifyOutcome> {
    let pair = s.pair()?;
    let times = s.times()?;
    let cfg = s.series_config();
    let profile = s
        .regime
        .profile
        .ok_or_else(|| LabError::Usage(s.regime.reason.to_string()))?;
    let residual = run_series(&pair, Reference::Profile(profile), s.zone, &times, &cfg)?;
    let solution = run_series(&pair, Reference::Zero, s.zone, &times, &cfg)?;
    let mut checks = vec![NamedCheck {
        name: "residual-slope",
        predicted: s.regime.residual_exponent,
        check: residual
            .slope()
            .map(|m| SlopeCheck::new(m, s.regime.residual_exponent, SLOPE_TOLERANCE, false)),
    }];
    if s.zone == Zone::Full {
        checks.push(NamedCheck {
            name: "solution-slope",
            predicted: s.regime.solution_exponent,
            check: solution
                .slope()
                .map(|m| SlopeCheck::new(m, s.regime.solution_exponent, SLOPE_TOLERANCE, true)),
        });
    }
    Ok(VerifyOutcome {
        regime: s.regime,
        residual,
        solution,
        checks,
    })
}

fn series_rows(outcome: &VerifyOutcome) -> [(&ResidualSeries, f64); 2] {
    [
        (&outcome.residual, outcome.regime.residual_exponent),
        (&outcome.solution, outcome.regime.solution_exponent),
    ]
}

pub fn write_verify_csv<W: Write>(outcome: &VerifyOutcome, w: W) -> LabResult<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "t",
        "norm",
        "region",
        "profile",
        "predicted_exponent",
        "fitted_slope",
    ])?;
    for (series, predicted) in series_rows(outcome) {
        let slope = num(series.slope().unwrap_or(f64::NAN));
        for (&t, &norm) in series.times.iter().zip(&series.norms) {
            out.write_record([
                num(t),
                num(norm),
                series.zone.name().to_string(),
                series.reference.name().to_string(),
                num(predicted),
                slope.clone(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// The verify series with error estimates, cutoffs and fit diagnostics.
pub fn write_report_csv<W: Write>(outcome: &VerifyOutcome, w: W) -> LabResult<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "t",
        "norm",
        "est_error",
        "cutoff",
        "region",
        "profile",
        "predicted_exponent",
        "fitted_slope",
        "slope_stderr",
        "r_squared",
        "flag",
    ])?;
    for (series, predicted) in series_rows(outcome) {
        let fit = series.fit;
        let field = |f: fn(&platelab_core::LineFit) -> f64| num(fit.as_ref().map_or(f64::NAN, f));
        for i in 0..series.times.len() {
            out.write_record([
                num(series.times[i]),
                num(series.norms[i]),
                num(series.errors[i]),
                num(series.cutoffs[i]),
                series.zone.name().to_string(),
                series.reference.name().to_string(),
                num(predicted),
                field(|f| f.slope),
                field(|f| f.stderr),
                field(|f| f.r_squared),
                series.flag.unwrap_or("").to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn describe_checks(outcome: &VerifyOutcome) -> Vec<String> {
    let r = &outcome.regime;
    let mut lines = vec![format!(
        "regime: n={} l={} {} profile={}",
        r.n,
        r.l,
        r.law.map_or("none", |t| t.name()),
        r.profile.map_or("none", ProfileKind::name),
    )];
    for c in &outcome.checks {
        lines.push(match c.check {
            Some(k) => format!(
                "{}: measured {:.4} predicted {} ({} {}) {}",
                c.name,
                k.measured,
                k.predicted,
                if k.two_sided { "within" } else { "at most +" },
                k.tolerance,
                if k.pass { "pass" } else { "FAIL" },
            ),
            None => format!("{}: no slope could be fitted FAIL", c.name),
        });
    }
    lines
}

pub fn write_roots_csv<W: Write>(radii: &[f64], w: W) -> LabResult<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "r",
        "lambda1_re",
        "lambda1_im",
        "lambda2_re",
        "lambda2_im",
        "discriminant",
        "branch",
    ])?;
    for &r in radii {
        let m = characteristic_roots(FrequencyRadius::new(r)?);
        out.write_record([
            num(r),
            num(m.lambda1.re),
            num(m.lambda1.im),
            num(m.lambda2.re),
            num(m.lambda2.im),
            num(m.discriminant),
            m.branch.name().to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_constants_csv<W: Write>(w: W) -> LabResult<()> {
    let c = BranchConstants::compute();
    let residual = |x: f64, target: f64| {
        let a = 1.0 + x * x;
        (4.0 * x * x * a * a - target).abs()
    };
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["name", "value", "residual"])?;
    out.write_record(["zeta".into(), num(c.zeta), num(residual(c.zeta, 1.0))])?;
    out.write_record(["delta".into(), num(c.delta), num(residual(c.delta, 0.5))])?;
    out.flush()?;
    Ok(())
}

/// Which oracle families to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleSelection {
    All,
    Ode,
    LowFrequency,
    SupPower,
    SupSinc,
    Sinh,
}

impl std::str::FromStr for OracleSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => OracleSelection::All,
            "ode" => OracleSelection::Ode,
            "4.2" => OracleSelection::LowFrequency,
            "4.4" => OracleSelection::SupPower,
            "4.6" => OracleSelection::SupSinc,
            "4.7" => OracleSelection::Sinh,
            other => {
                return Err(format!(
                    "unknown oracle `{other}`; expected all, ode, 4.2, 4.4, 4.6 or 4.7"
                ))
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct OracleArgs {
    pub selection: OracleSelection,
    pub l: f64,
    pub times: Option<Vec<f64>>,
    pub t_end: f64,
}

impl Default for OracleArgs {
    fn default() -> Self {
        Self {
            selection: OracleSelection::All,
            l: 2.0,
            times: None,
            t_end: 50.0,
        }
    }
}

pub const DEFAULT_SUP_TIMES: [f64; 11] =
    [0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 1e3, 1e4];
pub const DEFAULT_SINC_TIMES: [f64; 6] = [0.5, 1.0, 2.0, 5.0, 10.0, 50.0];

/// Rows of every selected oracle; admissible constants are appended as
/// rows named `<lemma>:constant` with the bound they must respect.
pub fn oracle_rows(args: &OracleArgs) -> LabResult<Vec<LemmaRow>> {
    use OracleSelection::*;
    let sel = args.selection;
    let wants = |s: OracleSelection| sel == All || sel == s;
    let mut rows = Vec::new();
    let constant_row = |lemma: &'static str, bound: f64, measured: f64| LemmaRow {
        lemma,
        parameter: "admissible-constant".into(),
        bound,
        measured,
        pass: measured <= bound * (1.0 + 1e-12),
    };
    if wants(Ode) {
        let report = ode_oracle_check(args.t_end, ODE_STEP, 1e-6)?;
        rows.extend(report.rows);
    }
    if wants(LowFrequency) {
        let delta = platelab_core::symbol::delta_cutoff();
        let grid: Vec<f64> = (0..=200).map(|i| delta * i as f64 / 200.0).collect();
        rows.extend(lowfreq_structure_check(&grid)?.rows);
    }
    if wants(SupPower) {
        let times = args.times.as_deref().unwrap_or(&DEFAULT_SUP_TIMES);
        let report = lemma44_check(args.l, times)?;
        rows.extend(report.rows);
        rows.push(constant_row(
            "4.4",
            lemma44_constant(args.l),
            report.admissible_constant,
        ));
    }
    if wants(SupSinc) || wants(Sinh) {
        let times = args.times.as_deref().unwrap_or(&DEFAULT_SINC_TIMES);
        let (sinc, sinh) = lemma46_47_check(times);
        if wants(SupSinc) {
            rows.extend(sinc.rows);
            rows.push(constant_row("4.6", 1.0, sinc.admissible_constant));
        }
        if wants(Sinh) {
            rows.extend(sinh.rows);
            rows.push(constant_row("4.7", 1.0, sinh.admissible_constant));
        }
    }
    Ok(rows)
}

pub fn write_lemma_csv<W: Write>(rows: &[LemmaRow], w: W) -> LabResult<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["lemma", "parameter", "bound", "measured", "pass"])?;
    for r in rows {
        out.write_record([
            r.lemma.to_string(),
            r.parameter.clone(),
            num(r.bound),
            num(r.measured),
            if r.pass { "pass" } else { "fail" }.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
