//! Numerics for the damped plate equation with rotational inertia,
//! `u_tt − Δu_tt + Δ²u − Δu_t = 0`, on the Fourier side.
//!
//! Each frequency radius `r = |ξ|` evolves by the scalar ODE
//! `(1+r²)û'' + û' + r²(1+r²)û = 0`. The crate evaluates its closed-form
//! solution, the wave-like and heat-like large-time profiles, radial
//! `L²` norms over frequency zones with certified tail truncation, and fits
//! decay rates to measured residual norms.
//!
//! Everything works without `std`; only `alloc` is needed.
//!
//! ```
//! use platelab_core::decay::{classify_regime, default_times, residual_series, Reference, SeriesConfig};
//! use platelab_core::{DataPair, Zone};
//!
//! let regime = classify_regime(3, 2.0).unwrap();
//! let pair = DataPair::gaussian(1.0, 3, 2.0).unwrap();
//! let times = default_times(1e4).unwrap();
//! let series =
//!     residual_series(&pair, Reference::Zero, Zone::Full, &times, &SeriesConfig::default()).unwrap();
//! assert!((series.slope().unwrap() - regime.solution_exponent).abs() < 0.1);
//! ```

#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod data;
pub mod decay;
pub mod error;
pub mod oracles;
pub mod profiles;
pub mod quadrature;
pub mod symbol;

pub use data::{DataFamily, DataPair, DataSpec};
pub use decay::{
    classify_regime, fit_power_law, mid_region_rate, residual_norm_at, residual_series,
    solution_norm_series, DecayLaw, LineFit, MidRate, Reference, Regime, ResidualSeries,
    SeriesConfig, SlopeCheck,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use profiles::ProfileKind;
pub use quadrature::{
    l2_region_norm, tail_cutoff, QuadratureConfig, QuadratureResult, Region, TailBound, TailTerm,
    Zone,
};
pub use symbol::{
    characteristic_roots, delta_cutoff, kernels, uhat_solution, uhat_time_derivative, zeta_root,
    Branch, BranchConstants, FrequencyRadius, ModeState,
};
