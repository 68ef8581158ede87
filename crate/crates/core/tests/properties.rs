use platelab_core::data::DataPair;
use platelab_core::decay::{residual_norm_at, Reference, SeriesConfig};
use platelab_core::quadrature::{l2_region_norm, QuadratureConfig, Region, Zone};
use platelab_core::symbol::{characteristic_roots, kernels, uhat_solution, FrequencyRadius};
use platelab_core::{Complex64, ProfileKind};
use proptest::prelude::*;

proptest! {
    #[test]
    fn vieta(r in 0.0f64..50.0) {
        let m = characteristic_roots(FrequencyRadius::new(r).unwrap());
        let alpha = 1.0 + r * r;
        let sum = m.lambda1 + m.lambda2;
        let prod = m.lambda1 * m.lambda2;
        prop_assert!((sum.re + 1.0 / alpha).abs() <= 1e-12 * (1.0 / alpha).max(1e-300) + 1e-15);
        prop_assert!(sum.im.abs() <= 1e-12 * (1.0 + m.lambda1.norm()));
        prop_assert!((prod.re - r * r).abs() <= 1e-12 * (r * r).max(1e-300));
    }

    #[test]
    fn kernels_start_at_identity(r in 0.0f64..20.0) {
        let (e0, e1) = kernels(0.0, FrequencyRadius::new(r).unwrap());
        prop_assert_eq!(e0, 1.0);
        prop_assert_eq!(e1, 0.0);
    }

    #[test]
    fn solution_is_linear_in_data(
        r in 0.0f64..5.0, t in 0.0f64..40.0,
        a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0, d in -3.0f64..3.0,
    ) {
        let fr = FrequencyRadius::new(r).unwrap();
        let (x0, x1) = (Complex64::new(a, b), Complex64::new(c, d));
        let (y0, y1) = (Complex64::new(b, -c), Complex64::new(d, a));
        let lhs = uhat_solution(t, fr, x0 + y0, x1 + y1);
        let rhs = uhat_solution(t, fr, x0, x1) + uhat_solution(t, fr, y0, y1);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn norm_scales_with_integrand(s in -100.0f64..100.0, n in 1u32..8) {
        let cfg = QuadratureConfig::with_tol(1e-12);
        let f = |r: f64| (-r * r).exp() * (2.0 * r).cos();
        let base = l2_region_norm(f, Region::full(12.0), n, 2.0, &cfg).unwrap().value;
        let scaled = l2_region_norm(|r| s * f(r), Region::full(12.0), n, 2.0, &cfg).unwrap().value;
        prop_assert!((scaled - s.abs() * base).abs() <= 1e-12 * (1.0 + scaled));
    }
}

#[test]
fn halving_tolerance_stays_within_error_estimate() {
    let loose = SeriesConfig::default();
    let mut tight = loose;
    tight.quadrature.rel_tol *= 0.5;
    let cases = [
        (
            DataPair::gaussian(1.0, 3, 2.0).unwrap(),
            Reference::Zero,
            Zone::Full,
        ),
        (
            DataPair::sobolev_edge(7, 2.0, 0.25).unwrap(),
            Reference::Zero,
            Zone::Full,
        ),
        (
            DataPair::sobolev_edge(10, 2.0, 0.25).unwrap(),
            Reference::Profile(ProfileKind::WaveLike),
            Zone::High,
        ),
    ];
    for (pair, reference, zone) in &cases {
        for t in [10.0, 100.0, 400.0] {
            let (a, _) = residual_norm_at(pair, *reference, *zone, t, &loose).unwrap();
            let (b, _) = residual_norm_at(pair, *reference, *zone, t, &tight).unwrap();
            assert!(
                (a.value - b.value).abs() < a.est_error,
                "{} t={t}: {} vs {} (est {})",
                pair.label(),
                a.value,
                b.value,
                a.est_error
            );
        }
    }
}

#[test]
fn zero_data_give_zero_norms() {
    use platelab_core::data::DataSpec;
    let pair = DataPair::new(DataSpec::zero(5).unwrap(), DataSpec::zero(5).unwrap(), 2.0).unwrap();
    for zone in [Zone::Low, Zone::Mid, Zone::High, Zone::Full] {
        let (q, _) =
            residual_norm_at(&pair, Reference::Zero, zone, 20.0, &SeriesConfig::default()).unwrap();
        assert_eq!(q.value, 0.0);
    }
}

#[test]
fn self_subtraction_vanishes() {
    let pair = DataPair::sobolev_edge(7, 2.0, 0.25).unwrap();
    for zone in [Zone::Low, Zone::Mid, Zone::High, Zone::Full] {
        let (q, _) = residual_norm_at(
            &pair,
            Reference::Solution,
            zone,
            30.0,
            &SeriesConfig::default(),
        )
        .unwrap();
        assert_eq!(q.value, 0.0);
    }
}
