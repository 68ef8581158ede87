//! Radially symmetric initial data given by their Fourier transforms.
//!
//! A datum carries its moment `P = û(0)`, a constant `K` with
//! `|û(r) − P| ≤ K r` standing in for its `L^{1,1}` norm, and the supremum of
//! the Sobolev orders `s` for which `‖·‖_{H^s}` is finite.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{exp, fabs, lgamma, log1p, pow, sqrt};

use crate::error::{invalid, Error, Result};
use crate::quadrature::{
    integrate_squared, tail_cutoff, unit_sphere_area, QuadratureConfig, TailBound, TailTerm,
};

/// Points of the log-spaced grid used to maximize `|û(r) − P| / r`.
pub const SURROGATE_GRID_POINTS: usize = 10_000;
/// Range of that grid.
pub const SURROGATE_GRID_RANGE: (f64, f64) = (1e-6, 1e3);

/// Default excess regularity of Sobolev-edge data built for a regime.
pub const DEFAULT_EDGE_EXCESS: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DataFamily {
    /// `(π/a)^{n/2} e^{−r²/(4a)}`, the transform of `e^{−a|x|²}`.
    Gaussian {
        a: f64,
    },
    /// `(1 + r²)^{−σ/2}`, in `H^s` exactly for `s < σ − n/2`.
    SobolevEdge {
        sigma: f64,
    },
    /// `e^{−b r}`, the transform of a Poisson kernel. Its defect from the
    /// moment is linear in `r`, so it saturates the `K r` bound.
    Exponential {
        b: f64,
    },
    Zero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DataSpec {
    pub family: DataFamily,
    pub dimension: u32,
    pub moment: f64,
    pub l11_surrogate: f64,
    /// `+∞` for smooth data.
    pub sobolev_limit: f64,
    pub label: String,
}

fn check_dimension(n: u32) -> Result<()> {
    if n == 0 {
        return Err(invalid("n", 0.0, "dimension must be at least 1"));
    }
    Ok(())
}

impl DataSpec {
    pub fn gaussian(a: f64, n: u32) -> Result<Self> {
        check_dimension(n)?;
        if !(a > 0.0 && a.is_finite()) {
            return Err(invalid("a", a, "Gaussian width must be positive"));
        }
        let mut d = Self {
            family: DataFamily::Gaussian { a },
            dimension: n,
            moment: pow(PI / a, n as f64 / 2.0),
            l11_surrogate: 0.0,
            sobolev_limit: f64::INFINITY,
            label: format!("gaussian:a={a}"),
        };
        d.l11_surrogate = d.maximize_defect_slope();
        Ok(d)
    }

    pub fn sobolev_edge(sigma: f64, n: u32) -> Result<Self> {
        check_dimension(n)?;
        let half_n = n as f64 / 2.0;
        if !(sigma > half_n && sigma.is_finite()) {
            return Err(invalid(
                "sigma",
                sigma,
                "must exceed n/2 for a finite L2 norm",
            ));
        }
        let mut d = Self {
            family: DataFamily::SobolevEdge { sigma },
            dimension: n,
            moment: 1.0,
            l11_surrogate: 0.0,
            sobolev_limit: sigma - half_n,
            label: format!("edge:sigma={sigma}"),
        };
        d.l11_surrogate = d.maximize_defect_slope();
        Ok(d)
    }

    pub fn exponential(b: f64, n: u32) -> Result<Self> {
        check_dimension(n)?;
        if !(b > 0.0 && b.is_finite()) {
            return Err(invalid("b", b, "decay rate must be positive"));
        }
        // 1 − e^{−br} ≤ br with equality in the limit r → 0.
        Ok(Self {
            family: DataFamily::Exponential { b },
            dimension: n,
            moment: 1.0,
            l11_surrogate: b,
            sobolev_limit: f64::INFINITY,
            label: format!("exp:b={b}"),
        })
    }

    pub fn zero(n: u32) -> Result<Self> {
        check_dimension(n)?;
        Ok(Self {
            family: DataFamily::Zero,
            dimension: n,
            moment: 0.0,
            l11_surrogate: 0.0,
            sobolev_limit: f64::INFINITY,
            label: String::from("zero"),
        })
    }

    /// Sobolev-edge datum of regularity exactly `l + excess`.
    pub fn edge_for_regularity(l: f64, excess: f64, n: u32) -> Result<Self> {
        Self::sobolev_edge(l + n as f64 / 2.0 + excess, n)
    }

    /// `û(r)`.
    #[inline]
    pub fn uhat(&self, r: f64) -> f64 {
        match self.family {
            DataFamily::Gaussian { a } => self.moment * exp(-r * r / (4.0 * a)),
            DataFamily::SobolevEdge { sigma } => exp(-0.5 * sigma * log1p(r * r)),
            DataFamily::Exponential { b } => exp(-b * r),
            DataFamily::Zero => 0.0,
        }
    }

    /// The `(A, B)` split `û = A − iB + P`. Radial real data have real
    /// transforms, so `B = 0` and `A = û − P`.
    pub fn ab_decomposition(&self, r: f64) -> (f64, f64) {
        (self.uhat(r) - self.moment, 0.0)
    }

    /// Terms bounding `|û(r)|` for `r ≥ 1`.
    pub fn tail_terms(&self) -> Vec<TailTerm> {
        match self.family {
            DataFamily::Gaussian { a } => vec![TailTerm::new(self.moment, 0.0, 1.0 / (4.0 * a))],
            // (1+r²)^{−σ/2} ≤ r^{−σ}
            DataFamily::SobolevEdge { sigma } => vec![TailTerm::power_law(1.0, -sigma)],
            // e^{−br} r^p ≤ (p/(be))^p
            DataFamily::Exponential { b } => {
                let p = 24.0;
                vec![TailTerm::power_law(
                    pow(p / (b * core::f64::consts::E), p),
                    -p,
                )]
            }
            DataFamily::Zero => Vec::new(),
        }
    }

    /// `‖·‖_{H^s}` with the norm taken directly on the Fourier side.
    pub fn h_norm(&self, s: f64) -> Result<f64> {
        self.h_norm_with(s, &QuadratureConfig::with_tol(1e-11))
    }

    pub fn h_norm_with(&self, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(invalid("s", s, "Sobolev order must be nonnegative"));
        }
        if s >= self.sobolev_limit {
            return Err(Error::Divergent {
                order: s,
                limit: self.sobolev_limit,
            });
        }
        if let DataFamily::SobolevEdge { sigma } = self.family {
            // ∫_0^∞ (1+r²)^{s−σ} r^{n−1} dr = B(n/2, σ−s−n/2) / 2
            let half_n = self.dimension as f64 / 2.0;
            let ln_beta = lgamma(half_n) + lgamma(sigma - s - half_n) - lgamma(sigma - s);
            return Ok(sqrt(0.5 * unit_sphere_area(self.dimension) * exp(ln_beta)));
        }
        // (1+r²)^{s/2} ≤ 2^{s/2} r^s for r ≥ 1.
        let weight = TailTerm::power_law(pow(2.0, s / 2.0), s);
        let bound = TailBound::new(
            1.0,
            self.tail_terms()
                .into_iter()
                .map(|t| t.times(weight))
                .collect(),
        );
        let xi = tail_cutoff(Some(&bound), self.dimension, cfg.tol)?;
        let sq = integrate_squared(
            &|r: f64| pow(1.0 + r * r, s / 2.0) * self.uhat(r),
            0.0,
            xi,
            self.dimension,
            0.0,
            cfg,
            cfg.tol,
        )?;
        Ok(sq.to_norm().value)
    }

    /// `(∫_0^R (1+r²)^s |û|² ω r^{n−1} dr)^{1/2}`, for probing divergence under
    /// cutoff extension.
    pub fn h_norm_truncated(&self, s: f64, cutoff: f64, cfg: &QuadratureConfig) -> Result<f64> {
        let sq = integrate_squared(
            &|r: f64| pow(1.0 + r * r, s / 2.0) * self.uhat(r),
            0.0,
            cutoff,
            self.dimension,
            0.0,
            cfg,
            cfg.tol,
        )?;
        Ok(sq.to_norm().value)
    }

    /// Grid maximum of `|û(r) − P| / r`, polished by golden-section search
    /// around the best grid point and padded by a relative 1e−9.
    fn maximize_defect_slope(&self) -> f64 {
        let slope = |r: f64| fabs(self.uhat(r) - self.moment) / r;
        let (lo, hi) = SURROGATE_GRID_RANGE;
        let ratio = pow(hi / lo, 1.0 / (SURROGATE_GRID_POINTS - 1) as f64);
        let mut best = (0usize, f64::NEG_INFINITY);
        let mut r = lo;
        let mut grid = Vec::with_capacity(SURROGATE_GRID_POINTS);
        for i in 0..SURROGATE_GRID_POINTS {
            grid.push(r);
            let v = slope(r);
            if v > best.1 {
                best = (i, v);
            }
            r *= ratio;
        }
        let (i, mut value) = best;
        let mut a = grid[i.saturating_sub(1)];
        let mut b = grid[(i + 1).min(SURROGATE_GRID_POINTS - 1)];
        let inv_phi = 0.618_033_988_749_894_9;
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        for _ in 0..200 {
            if slope(c) > slope(d) {
                b = d;
            } else {
                a = c;
            }
            c = b - inv_phi * (b - a);
            d = a + inv_phi * (b - a);
            if b - a < 1e-14 * b {
                break;
            }
        }
        value = value.max(slope(0.5 * (a + b)));
        value * (1.0 + 1e-9)
    }
}

/// Initial data `(u₀, u₁)` with the regularity index `l` they are tested at:
/// `u₀ ∈ H^{l+1}`, `u₁ ∈ H^l`.
#[derive(Debug, Clone, PartialEq)]
pub struct DataPair {
    pub u0: DataSpec,
    pub u1: DataSpec,
    pub dimension: u32,
    pub regularity: f64,
}

impl DataPair {
    pub fn new(u0: DataSpec, u1: DataSpec, regularity: f64) -> Result<Self> {
        if u0.dimension != u1.dimension {
            return Err(invalid(
                "dimension",
                u1.dimension as f64,
                "u0 and u1 must live in the same dimension",
            ));
        }
        if !(regularity >= 0.0 && regularity.is_finite()) {
            return Err(invalid(
                "l",
                regularity,
                "regularity must be finite and nonnegative",
            ));
        }
        Ok(Self {
            dimension: u0.dimension,
            u0,
            u1,
            regularity,
        })
    }

    pub fn gaussian(a: f64, n: u32, l: f64) -> Result<Self> {
        Self::new(DataSpec::gaussian(a, n)?, DataSpec::gaussian(a, n)?, l)
    }

    /// `u₁` of regularity `l + excess`, `u₀` one order smoother.
    pub fn sobolev_edge(n: u32, l: f64, excess: f64) -> Result<Self> {
        Self::new(
            DataSpec::edge_for_regularity(l + 1.0, excess, n)?,
            DataSpec::edge_for_regularity(l, excess, n)?,
            l,
        )
    }

    /// `P₀ + P₁`.
    pub fn total_moment(&self) -> f64 {
        self.u0.moment + self.u1.moment
    }

    /// `I₀ = ‖u₁‖_{H^l} + ‖u₀‖_{H^{l+1}} + K₁ + K₀` with the `L^{1,1}` norms
    /// replaced by the linear-bound constants.
    pub fn i0(&self) -> Result<f64> {
        let l = self.regularity;
        Ok(self.u1.h_norm(l)?
            + self.u0.h_norm(l + 1.0)?
            + self.u1.l11_surrogate
            + self.u0.l11_surrogate)
    }

    pub fn label(&self) -> String {
        format!("u0={};u1={}", self.u0.label, self.u1.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::unit_sphere_area;

    #[test]
    fn gaussian_quarter_width_in_one_dimension() {
        let d = DataSpec::gaussian(0.25, 1).unwrap();
        assert!((d.moment - 2.0 * PI.sqrt()).abs() < 1e-14);
        for r in [0.0, 0.3, 1.0, 2.5] {
            assert!((d.uhat(r) - (4.0 * PI).sqrt() * (-r * r).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn moments_equal_value_at_origin() {
        let cat = [
            DataSpec::gaussian(1.0, 3).unwrap(),
            DataSpec::gaussian(0.3, 10).unwrap(),
            DataSpec::sobolev_edge(8.0, 10).unwrap(),
            DataSpec::sobolev_edge(2.0, 1).unwrap(),
            DataSpec::exponential(1.5, 4).unwrap(),
            DataSpec::zero(2).unwrap(),
        ];
        for d in &cat {
            assert_eq!(d.uhat(0.0), d.moment, "{}", d.label);
        }
    }

    #[test]
    fn linear_defect_bound_on_dense_grid() {
        let cat = [
            DataSpec::gaussian(1.0, 1).unwrap(),
            DataSpec::gaussian(0.1, 3).unwrap(),
            DataSpec::sobolev_edge(8.0, 10).unwrap(),
            DataSpec::sobolev_edge(5.75, 7).unwrap(),
            DataSpec::exponential(2.0, 3).unwrap(),
        ];
        for d in &cat {
            for i in 0..=10_000 {
                let r = 100.0 * i as f64 / 10_000.0;
                let (a, b) = d.ab_decomposition(r);
                assert_eq!(b, 0.0);
                assert!(a.abs() <= d.l11_surrogate * r, "{} at r = {r}", d.label);
            }
        }
    }

    #[test]
    fn ab_decomposition_examples() {
        let d = DataSpec::gaussian(1.0, 1).unwrap();
        assert_eq!(d.ab_decomposition(0.0), (0.0, 0.0));
        let (a, _) = d.ab_decomposition(1.0);
        assert!((a - PI.sqrt() * ((-0.25f64).exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(DataSpec::gaussian(0.0, 1).is_err());
        assert!(DataSpec::gaussian(-1.0, 1).is_err());
        assert!(DataSpec::sobolev_edge(5.0, 10).is_err());
        assert!(DataSpec::sobolev_edge(4.0, 10).is_err());
        assert!(DataSpec::exponential(0.0, 2).is_err());
        assert!(DataSpec::gaussian(1.0, 0).is_err());
    }

    #[test]
    fn edge_sobolev_limit() {
        let d = DataSpec::sobolev_edge(8.0, 10).unwrap();
        assert_eq!(d.sobolev_limit, 3.0);
        assert!(d.h_norm(2.0).is_ok());
        assert!(matches!(d.h_norm(3.0), Err(Error::Divergent { .. })));
        assert!(matches!(d.h_norm(3.5), Err(Error::Divergent { .. })));
    }

    #[test]
    fn gaussian_h0_closed_form() {
        // ∫ (π/a)^n e^{−r²/(2a)} dξ = (π/a)^n (2πa)^{n/2}
        for (a, n) in [(1.0, 3u32), (0.5, 1), (2.0, 4)] {
            let d = DataSpec::gaussian(a, n).unwrap();
            let exact = (PI / a).powi(n as i32) * (2.0 * PI * a).powf(n as f64 / 2.0);
            let got = d.h_norm(0.0).unwrap();
            assert!((got * got - exact).abs() < 1e-9 * exact, "a = {a}, n = {n}");
        }
    }

    #[test]
    fn gaussian_h2_matches_direct_midpoint_quadrature() {
        let d = DataSpec::gaussian(1.0, 3).unwrap();
        let h = 1e-4;
        let mut acc = 0.0;
        let mut r = 0.5 * h;
        while r < 40.0 {
            let u = d.uhat(r);
            acc += (1.0 + r * r).powi(2) * u * u * unit_sphere_area(3) * r * r * h;
            r += h;
        }
        let got = d.h_norm(2.0).unwrap();
        assert!((got - acc.sqrt()).abs() < 1e-7 * got);
        // Independent high-precision value of ‖·‖²_{H²}.
        assert!((got * got - 10_743.408_798_845_166).abs() < 1e-10 * got * got);
    }

    #[test]
    fn edge_h2_matches_beta_function_value() {
        // ω₉ ∫ (1+r²)^{−6} r⁹ dr = ω₉ B(5, 1)/2 = ω₉/10
        let d = DataSpec::sobolev_edge(8.0, 10).unwrap();
        let exact = unit_sphere_area(10) / 10.0;
        let got = d.h_norm(2.0).unwrap();
        assert!((got * got - exact).abs() < 1e-8);
        assert!((exact - 2.550_164_039_877_345).abs() < 1e-12);
    }

    #[test]
    fn edge_closed_form_matches_quadrature() {
        let d = DataSpec::sobolev_edge(8.0, 10).unwrap();
        let cfg = QuadratureConfig::with_tol(1e-12);
        let numeric = d.h_norm_truncated(0.0, 1e4, &cfg).unwrap();
        assert!((numeric - d.h_norm(0.0).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn h_norm_monotone_in_order() {
        let d = DataSpec::sobolev_edge(7.0, 6).unwrap();
        let mut prev = 0.0;
        for k in 0..8 {
            let s = 0.5 * k as f64;
            let v = d.h_norm(s).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn cutoff_extension_grows_only_above_limit() {
        let d = DataSpec::sobolev_edge(8.0, 10).unwrap();
        let cfg = QuadratureConfig::with_tol(1e-9);
        let norms = |s: f64| -> Vec<f64> {
            [1e1, 1e2, 1e3]
                .iter()
                .map(|&c| d.h_norm_truncated(s, c, &cfg).unwrap())
                .collect()
        };
        let below = norms(2.0);
        assert!((below[2] - below[1]) < 0.1 * (below[1] - below[0]));
        let above = norms(3.5);
        // ∫ r^{2(3.5−8)+9} dr = ∫ r^0 dr grows linearly with the cutoff.
        assert!(above[2] > 3.0 * above[1] && above[1] > 3.0 * above[0]);
    }

    #[test]
    fn pair_helpers() {
        let p = DataPair::sobolev_edge(10, 2.0, 0.25).unwrap();
        assert_eq!(p.u1.family, DataFamily::SobolevEdge { sigma: 7.25 });
        assert_eq!(p.u0.family, DataFamily::SobolevEdge { sigma: 8.25 });
        assert_eq!(p.total_moment(), 2.0);
        assert!(p.i0().unwrap().is_finite());
        let mismatch = DataPair::new(
            DataSpec::gaussian(1.0, 2).unwrap(),
            DataSpec::gaussian(1.0, 3).unwrap(),
            2.0,
        );
        assert!(mismatch.is_err());
    }

    #[test]
    fn i0_diverges_when_pair_too_rough() {
        // u₁ only in H^s for s < 2.25, asked at l = 3.
        let p = DataPair::new(
            DataSpec::sobolev_edge(9.25, 10).unwrap(),
            DataSpec::sobolev_edge(7.25, 10).unwrap(),
            3.0,
        )
        .unwrap();
        assert!(matches!(p.i0(), Err(Error::Divergent { .. })));
    }
}
