use extfd::numkernel::{beta, gamma, integrate_unit, log_gamma, sum_series, C64};
use proptest::prelude::*;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn log_gamma_recurrence(re in 0.1f64..50.0, im in -20.0f64..20.0) {
        let z = C64::new(re, im);
        let ratio = (log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap()).exp();
        prop_assert!(rel(ratio, z) < 1e-12, "z = {z}: {ratio}");
    }

    #[test]
    fn legendre_duplication(re in 0.1f64..50.0, im in -20.0f64..20.0) {
        // compared in logarithms: Γ(2z) overflows f64 over most of the strip
        let z = C64::new(re, im);
        let lhs = log_gamma(2.0 * z).unwrap();
        let rhs = (2.0 * z - 1.0) * std::f64::consts::LN_2 + log_gamma(z).unwrap() + log_gamma(z + 0.5).unwrap()
            - 0.5 * std::f64::consts::PI.ln();
        let d = lhs - rhs;
        let two_pi = 2.0 * std::f64::consts::PI;
        let wrapped = C64::new(d.re, d.im - two_pi * (d.im / two_pi).round());
        prop_assert!(wrapped.norm() < 1e-11 * lhs.norm().max(1.0), "z = {z}: {d}");
    }
}

#[test]
fn duplication_on_moderate_values() {
    for z in [C64::new(0.3, 0.0), C64::new(2.5, 1.5), C64::new(7.0, -3.0)] {
        let lhs = gamma(2.0 * z).unwrap();
        let rhs = C64::new(2.0, 0.0).powc(2.0 * z - 1.0) * gamma(z).unwrap() * gamma(z + 0.5).unwrap()
            / std::f64::consts::PI.sqrt();
        assert!(rel(lhs, rhs) < 1e-11, "{z}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn unit_quadrature_reproduces_beta(x in 0.05f64..6.0, y in 0.05f64..6.0) {
        let r = integrate_unit(
            |t, tc| C64::new(t.powf(x - 1.0) * tc.powf(y - 1.0), 0.0),
            x - 1.0,
            y - 1.0,
            1e-12,
        )
        .unwrap();
        let b = beta(C64::new(x, 0.0), C64::new(y, 0.0)).unwrap();
        prop_assert!(rel(r.value, b) < 1e-10, "({x},{y}): {} vs {b}", r.value);
    }

    #[test]
    fn geometric_series(ratio in -0.95f64..0.95) {
        let r = sum_series(|n| C64::new(ratio.powi(n as i32), 0.0), 1e-14, 10_000).unwrap();
        prop_assert!((r.value.re - 1.0 / (1.0 - ratio)).abs() < 1e-10 / (1.0 - ratio));
    }
}
