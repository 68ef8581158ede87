//! Scenario configuration: flat flags over an optional TOML file.
//!
//! ```toml
//! n = 10
//! l = 2.0
//! data = "edge:sigma=7.25"
//! region = "full"
//! tol = 1e-4
//! max-evals = 50000000
//! t-max = 1000.0
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use platelab_core::data::{DataPair, DataSpec, DEFAULT_EDGE_EXCESS};
use platelab_core::decay::{classify_regime, default_t_max, geometric_times, Regime, SeriesConfig};
use platelab_core::quadrature::{QuadratureConfig, Zone};
use serde::Deserialize;

use crate::error::{LabError, LabResult};

pub const DEFAULT_REL_TOL: f64 = 1e-4;
pub const DEFAULT_MAX_EVALS: usize = 50_000_000;
pub const DEFAULT_T_MIN: f64 = 10.0;
pub const DEFAULT_RATIO: f64 = 1.25;

/// Initial data as given on the command line.
///
/// * `gaussian[:a=A]`: both data `e^{−a|x|²}` (default `a = 1`)
/// * `exp[:b=B]`: both data with transform `e^{−b|ξ|}` (default `b = 1`)
/// * `edge:sigma=S`: `û₁ = (1+|ξ|²)^{−S/2}`, `û₀` one order smoother
/// * `edge[:excess=E]`: the edge pair of regularity exactly `l + E`
/// * `zero`
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DataArg {
    Gaussian { a: f64 },
    Exponential { b: f64 },
    Edge { sigma: f64 },
    EdgeAtRegularity { excess: f64 },
    Zero,
}

impl Default for DataArg {
    fn default() -> Self {
        DataArg::EdgeAtRegularity {
            excess: DEFAULT_EDGE_EXCESS,
        }
    }
}

impl FromStr for DataArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (family, params) = match s.split_once(':') {
            Some((f, p)) => (f.trim(), p.trim()),
            None => (s.trim(), ""),
        };
        let mut value = None;
        let mut key = None;
        if !params.is_empty() {
            let (k, v) = params
                .split_once('=')
                .ok_or_else(|| format!("expected key=value in `{s}`"))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| format!("`{}` is not a number", v.trim()))?;
            key = Some(k.trim());
            value = Some(v);
        }
        let expect = |want: &str| -> Result<(), String> {
            match key {
                Some(k) if k != want => Err(format!("unknown parameter `{k}` for `{family}`")),
                _ => Ok(()),
            }
        };
        match family {
            "gaussian" => {
                expect("a")?;
                Ok(DataArg::Gaussian {
                    a: value.unwrap_or(1.0),
                })
            }
            "exp" => {
                expect("b")?;
                Ok(DataArg::Exponential {
                    b: value.unwrap_or(1.0),
                })
            }
            "edge" => match (key, value) {
                (Some("sigma"), Some(sigma)) => Ok(DataArg::Edge { sigma }),
                (Some("excess"), Some(excess)) => Ok(DataArg::EdgeAtRegularity { excess }),
                (None, _) => Ok(DataArg::default()),
                (Some(k), _) => Err(format!("unknown parameter `{k}` for `edge`")),
            },
            "zero" if key.is_none() => Ok(DataArg::Zero),
            _ => Err(format!(
                "unknown data `{s}`; expected gaussian:a=A, exp:b=B, edge:sigma=S, edge:excess=E or zero"
            )),
        }
    }
}

impl DataArg {
    pub fn build(self, n: u32, l: f64) -> LabResult<DataPair> {
        let pair = match self {
            DataArg::Gaussian { a } => DataPair::gaussian(a, n, l)?,
            DataArg::Exponential { b } => DataPair::new(
                DataSpec::exponential(b, n)?,
                DataSpec::exponential(b, n)?,
                l,
            )?,
            DataArg::Edge { sigma } => DataPair::new(
                DataSpec::sobolev_edge(sigma + 1.0, n)?,
                DataSpec::sobolev_edge(sigma, n)?,
                l,
            )?,
            DataArg::EdgeAtRegularity { excess } => DataPair::sobolev_edge(n, l, excess)?,
            DataArg::Zero => DataPair::new(DataSpec::zero(n)?, DataSpec::zero(n)?, l)?,
        };
        Ok(pair)
    }
}

pub fn parse_zone(s: &str) -> Result<Zone, String> {
    match s.trim() {
        "low" => Ok(Zone::Low),
        "mid" => Ok(Zone::Mid),
        "high" => Ok(Zone::High),
        "full" => Ok(Zone::Full),
        other => Err(format!(
            "unknown region `{other}`; expected low, mid, high or full"
        )),
    }
}

/// Scenario flags shared by `verify` and `report`.
#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioFlags {
    /// Spatial dimension.
    #[arg(long)]
    pub n: Option<u32>,
    /// Regularity index of the data (at least 2).
    #[arg(long)]
    pub l: Option<f64>,
    /// Initial data [default: edge pair of regularity l + 0.25].
    #[arg(long, value_parser = DataArg::from_str)]
    pub data: Option<DataArg>,
    /// Frequency region: low, mid, high or full [default: full].
    #[arg(long, value_parser = parse_zone)]
    pub region: Option<Zone>,
    /// Relative tolerance per norm sample [default: 1e-4].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Integrand evaluation budget per norm sample [default: 5e7].
    #[arg(long)]
    pub max_evals: Option<usize>,
    /// Last time of the grid [default: 1e3, or 1e4 for heat-like regimes].
    #[arg(long)]
    pub t_max: Option<f64>,
    /// TOML file with the same keys; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output CSV path [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ScenarioFile {
    pub n: Option<u32>,
    pub l: Option<f64>,
    pub data: Option<String>,
    pub region: Option<String>,
    pub tol: Option<f64>,
    pub max_evals: Option<usize>,
    pub t_max: Option<f64>,
    pub t_min: Option<f64>,
    pub ratio: Option<f64>,
    pub out: Option<PathBuf>,
}

impl ScenarioFile {
    pub fn load(path: &Path) -> LabResult<Self> {
        let config_err = |message: String| LabError::Config {
            path: path.display().to_string(),
            message,
        };
        let text = fs::read_to_string(path).map_err(|e| config_err(e.to_string()))?;
        toml::from_str(&text).map_err(|e| config_err(e.message().to_string()))
    }
}

/// A fully resolved scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub n: u32,
    pub l: f64,
    pub data: DataArg,
    pub zone: Zone,
    pub rel_tol: f64,
    pub max_evals: usize,
    pub t_min: f64,
    pub ratio: f64,
    pub t_max: f64,
    pub regime: Regime,
    pub out: Option<PathBuf>,
}

impl Scenario {
    pub fn resolve(flags: &ScenarioFlags) -> LabResult<Self> {
        let file = match &flags.config {
            Some(path) => ScenarioFile::load(path)?,
            None => ScenarioFile::default(),
        };
        let file_data = file
            .data
            .as_deref()
            .map(DataArg::from_str)
            .transpose()
            .map_err(LabError::Usage)?;
        let file_zone = file
            .region
            .as_deref()
            .map(parse_zone)
            .transpose()
            .map_err(LabError::Usage)?;

        let n = flags
            .n
            .or(file.n)
            .ok_or_else(|| LabError::Usage("--n is required".into()))?;
        let l = flags
            .l
            .or(file.l)
            .ok_or_else(|| LabError::Usage("--l is required".into()))?;
        let regime = classify_regime(n, l)?;
        if !regime.valid {
            return Err(LabError::Usage(format!(
                "(n, l) = ({n}, {l}): {}",
                regime.reason
            )));
        }
        let rel_tol = flags.tol.or(file.tol).unwrap_or(DEFAULT_REL_TOL);
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(LabError::Usage(format!(
                "--tol {rel_tol} must lie in (0, 1)"
            )));
        }
        let max_evals = flags
            .max_evals
            .or(file.max_evals)
            .unwrap_or(DEFAULT_MAX_EVALS);
        if max_evals == 0 {
            return Err(LabError::Usage("--max-evals must be positive".into()));
        }
        Ok(Self {
            n,
            l,
            data: flags.data.or(file_data).unwrap_or_default(),
            zone: flags.region.or(file_zone).unwrap_or(Zone::Full),
            rel_tol,
            max_evals,
            t_min: file.t_min.unwrap_or(DEFAULT_T_MIN),
            ratio: file.ratio.unwrap_or(DEFAULT_RATIO),
            t_max: flags
                .t_max
                .or(file.t_max)
                .unwrap_or_else(|| default_t_max(&regime)),
            regime,
            out: flags.out.clone().or(file.out),
        })
    }

    pub fn pair(&self) -> LabResult<DataPair> {
        self.data.build(self.n, self.l)
    }

    pub fn times(&self) -> LabResult<Vec<f64>> {
        Ok(geometric_times(self.t_min, self.ratio, self.t_max)?)
    }

    pub fn series_config(&self) -> SeriesConfig {
        SeriesConfig {
            quadrature: QuadratureConfig {
                rel_tol: self.rel_tol,
                max_evals: self.max_evals,
                ..SeriesConfig::default().quadrature
            },
        }
    }
}
