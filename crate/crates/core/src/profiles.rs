//! Candidate large-time profiles of `û(t, ξ)`.
//!
//! * wave-like: `û₁ e^{−t/(2r²)} sin(tr)/r + û₀ e^{−t/(2r²)} cos(tr)`
//! * heat-like: `(P₀ + P₁) e^{−t r²}`
//! * combined: their sum.

use libm::{cos, exp, sin};

use crate::data::DataPair;
use crate::error::{invalid, Result};

/// `e^{−x}` is flushed to zero beyond this exponent.
const UNDERFLOW_EXPONENT: f64 = 745.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    WaveLike,
    HeatLike,
    Combined,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::WaveLike => "wave",
            ProfileKind::HeatLike => "heat",
            ProfileKind::Combined => "combined",
        }
    }

    pub fn evaluate(self, t: f64, r: f64, pair: &DataPair) -> Result<f64> {
        match self {
            ProfileKind::WaveLike => wave_profile(t, r, pair),
            ProfileKind::HeatLike => Ok(heat_profile(t, r, pair)),
            ProfileKind::Combined => combined_profile(t, r, pair),
        }
    }

    /// Requires `t > 0` for the wave-bearing kinds; callers check once.
    #[inline]
    pub(crate) fn eval_unchecked(self, t: f64, r: f64, u0: f64, u1: f64, moment: f64) -> f64 {
        match self {
            ProfileKind::WaveLike => wave_value(t, r, u0, u1),
            ProfileKind::HeatLike => heat_value(t, r, moment),
            ProfileKind::Combined => wave_value(t, r, u0, u1) + heat_value(t, r, moment),
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid("t", t, "wave profile needs t > 0"));
    }
    Ok(())
}

#[inline]
pub(crate) fn wave_value(t: f64, r: f64, u0: f64, u1: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let exponent = t / (2.0 * r * r);
    if exponent > UNDERFLOW_EXPONENT {
        return 0.0;
    }
    let damp = exp(-exponent);
    let phase = t * r;
    damp * (u1 * sin(phase) / r + u0 * cos(phase))
}

#[inline]
pub(crate) fn heat_value(t: f64, r: f64, moment: f64) -> f64 {
    moment * exp(-t * r * r)
}

/// The wave-like profile at radius `r`; `0` at `r = 0` by continuity.
pub fn wave_profile(t: f64, r: f64, pair: &DataPair) -> Result<f64> {
    check_time(t)?;
    Ok(wave_value(t, r, pair.u0.uhat(r), pair.u1.uhat(r)))
}

pub fn heat_profile(t: f64, r: f64, pair: &DataPair) -> f64 {
    heat_value(t, r, pair.total_moment())
}

pub fn combined_profile(t: f64, r: f64, pair: &DataPair) -> Result<f64> {
    Ok(wave_profile(t, r, pair)? + heat_profile(t, r, pair))
}
