//! Fourier-side solution of the damped plate equation with rotational inertia.
//!
//! Every frequency radius `r = |ξ|` evolves independently under
//!
//! ```text
//! (1 + r²) û'' + û' + r² (1 + r²) û = 0,
//! ```
//!
//! whose characteristic roots are real for `r ≤ ζ` and complex for `r > ζ`,
//! where `ζ` solves `4ζ²(1+ζ²)² = 1`. The solution is written through two
//! kernels `E₀`, `E₁` so that
//! `û(t) = û₀ E₀(t) + (û₁ + û₀ / (2(1+r²))) E₁(t)`.
//!
//! Near `ζ` the two roots collide and the closed forms lose digits, so a
//! narrow band of discriminant values is evaluated through the even power
//! series shared by `cos`/`cosh` and `sin(x)/x`/`sinh(x)/x`.

use libm::{cos, exp, expm1, fabs, sin, sqrt};
use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Half-width, in discriminant value, of the band around the double root
/// where the kernels are summed as power series.
pub const CRITICAL_BAND_TOL: f64 = 1e-6;

/// Largest `|x²|` (with `x` the kernel phase) summed as a series. Beyond it the
/// closed forms are accurate even inside the band.
const SERIES_MAX_ARG2: f64 = 1.0;

const ROOT_TOL: f64 = 1e-15;

/// A frequency radius `|ξ| ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FrequencyRadius(f64);

impl FrequencyRadius {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(invalid(
                "r",
                r,
                "frequency radius must be finite and nonnegative",
            ));
        }
        Ok(Self(r))
    }

    /// Callers guarantee `r` is finite and nonnegative.
    pub(crate) const fn from_raw(r: f64) -> Self {
        Self(r)
    }

    pub const fn get(self) -> f64 {
        self.0
    }

    /// `1 + r²`.
    pub fn alpha(self) -> f64 {
        1.0 + self.0 * self.0
    }

    /// `1 − 4r²(1+r²)²`; positive below `ζ`, negative above.
    pub fn discriminant(self) -> f64 {
        discriminant(self.0)
    }
}

pub(crate) fn discriminant(r: f64) -> f64 {
    let a = 1.0 + r * r;
    1.0 - 4.0 * r * r * a * a
}

/// Which side of the double root a radius sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Two distinct negative real roots (`r < ζ`).
    Overdamped,
    /// Discriminant within [`CRITICAL_BAND_TOL`] of zero.
    Critical,
    /// Complex-conjugate pair (`r > ζ`).
    Oscillatory,
}

/// Characteristic roots at one frequency radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeState {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub discriminant: f64,
    pub branch: Branch,
}

/// The branch point, the low-frequency cutoff and the series band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchConstants {
    pub zeta: f64,
    pub delta: f64,
    pub critical_band_tol: f64,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Overdamped => "overdamped",
            Branch::Critical => "critical",
            Branch::Oscillatory => "oscillatory",
        }
    }
}

impl BranchConstants {
    pub fn compute() -> Self {
        Self {
            zeta: zeta_root(),
            delta: delta_cutoff(),
            critical_band_tol: CRITICAL_BAND_TOL,
        }
    }
}

/// Solves `4s²(1+s²)² = target` for `s ∈ (0, 1)` with safeguarded Newton.
///
/// The left side is increasing on `[0, 1]` and ranges over `[0, 16]`.
fn solve_branch_equation(target: f64) -> f64 {
    let h = |s: f64| {
        let a = 1.0 + s * s;
        4.0 * s * s * a * a - target
    };
    // d/ds 4s²a² = 8s a² + 16 s³ a = 8 s a (a + 2 s²)
    let dh = |s: f64| {
        let a = 1.0 + s * s;
        8.0 * s * a * (a + 2.0 * s * s)
    };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut s = 0.5;
    for _ in 0..200 {
        let v = h(s);
        if v == 0.0 {
            return s;
        }
        if v < 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        let newton = s - v / dh(s);
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if fabs(next - s) <= ROOT_TOL * s {
            return next;
        }
        s = next;
    }
    s
}

/// The branch point `ζ ∈ (0,1)` where `4ζ²(1+ζ²)² = 1`.
pub fn zeta_root() -> f64 {
    solve_branch_equation(1.0)
}

/// The low-frequency cutoff `δ` with `1 − 4δ²(1+δ²)² = 1/2`.
///
/// This is the largest radius for which the discriminant stays in `[1/2, 1]`.
pub fn delta_cutoff() -> f64 {
    solve_branch_equation(0.5)
}

/// Both roots of `(1+r²)λ² + λ + r²(1+r²) = 0`.
///
/// For real roots the larger-magnitude root is formed first and the other
/// comes from `λ₁λ₂ = r²`, so `λ₁ ≈ −r²` keeps full precision for small `r`.
pub fn characteristic_roots(r: FrequencyRadius) -> ModeState {
    let rr = r.get();
    let a = r.alpha();
    let disc = r.discriminant();
    let branch = if fabs(disc) <= CRITICAL_BAND_TOL {
        Branch::Critical
    } else if disc > 0.0 {
        Branch::Overdamped
    } else {
        Branch::Oscillatory
    };
    let (lambda1, lambda2) = if disc >= 0.0 {
        let big = -(1.0 + sqrt(disc)) / (2.0 * a);
        let small = rr * rr / big + 0.0;
        (Complex64::new(small, 0.0), Complex64::new(big, 0.0))
    } else {
        let re = -1.0 / (2.0 * a);
        let im = sqrt(-disc) / (2.0 * a);
        (Complex64::new(re, im), Complex64::new(re, -im))
    };
    ModeState {
        lambda1,
        lambda2,
        discriminant: disc,
        branch,
    }
}

/// The pair `(E₀(t, r), E₁(t, r))`.
pub fn kernels(t: f64, r: FrequencyRadius) -> (f64, f64) {
    debug_assert!(t >= 0.0);
    let rr = r.get();
    let a = r.alpha();
    let disc = r.discriminant();
    let half_rate = 1.0 / (2.0 * a);
    let x2 = t * t * disc / (4.0 * a * a);

    if fabs(disc) <= CRITICAL_BAND_TOL && fabs(x2) <= SERIES_MAX_ARG2 {
        let (c, s) = even_series(x2);
        let decay = exp(-t * half_rate);
        return (decay * c, decay * t * s);
    }

    if disc > 0.0 {
        let sd = sqrt(disc);
        let lambda2 = -(1.0 + sd) / (2.0 * a);
        let lambda1 = rr * rr / lambda2;
        let gap = sd / a;
        let e1 = exp(lambda1 * t);
        let e2 = exp(lambda2 * t);
        (0.5 * (e1 + e2), e1 * (-expm1(-gap * t)) / gap)
    } else {
        let y = sqrt(-disc) / (2.0 * a);
        let phase = t * y;
        let decay = exp(-t * half_rate);
        (decay * cos(phase), decay * sin(phase) / y)
    }
}

/// `Σ w^k/(2k)!` and `Σ w^k/(2k+1)!`; equal to `cosh√w`, `sinh√w/√w` for
/// `w ≥ 0` and to `cos√−w`, `sin√−w/√−w` for `w < 0`.
fn even_series(w: f64) -> (f64, f64) {
    let mut c = 1.0;
    let mut s = 1.0;
    let mut tc = 1.0;
    let mut ts = 1.0;
    for k in 1..40 {
        let kf = k as f64;
        tc *= w / ((2.0 * kf - 1.0) * (2.0 * kf));
        ts *= w / ((2.0 * kf) * (2.0 * kf + 1.0));
        c += tc;
        s += ts;
        if fabs(tc) < 1e-18 * fabs(c) && fabs(ts) < 1e-18 * fabs(s) {
            break;
        }
    }
    (c, s)
}

pub fn e0_kernel(t: f64, r: FrequencyRadius) -> f64 {
    kernels(t, r).0
}

pub fn e1_kernel(t: f64, r: FrequencyRadius) -> f64 {
    kernels(t, r).1
}

/// `û(t, ξ)` for radial data with transforms `u0hat`, `u1hat` at radius `r`.
pub fn uhat_solution(t: f64, r: FrequencyRadius, u0hat: Complex64, u1hat: Complex64) -> Complex64 {
    let (e0, e1) = kernels(t, r);
    combine(r, e0, e1, u0hat, u1hat)
}

#[inline]
pub(crate) fn combine(
    r: FrequencyRadius,
    e0: f64,
    e1: f64,
    u0: Complex64,
    u1: Complex64,
) -> Complex64 {
    let half_rate = 1.0 / (2.0 * r.alpha());
    u0 * e0 + (u1 + u0 * half_rate) * e1
}

/// `∂ₜû(t, ξ)`.
///
/// Differentiating the root form gives `∂ₜE₁ = E₀ − E₁/(2(1+r²))` and
/// `∂ₜ(λ₁e^{λ₂t} − λ₂e^{λ₁t})/(λ₁−λ₂) = −r²E₁`, so the derivative reuses the
/// kernels, including their series form near the double root.
pub fn uhat_time_derivative(
    t: f64,
    r: FrequencyRadius,
    u0hat: Complex64,
    u1hat: Complex64,
) -> Complex64 {
    let (e0, e1) = kernels(t, r);
    let rr = r.get();
    let half_rate = 1.0 / (2.0 * r.alpha());
    u1hat * (e0 - half_rate * e1) - u0hat * (rr * rr * e1)
}
