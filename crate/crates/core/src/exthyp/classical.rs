//! Kummer's ₁F₁ and Gauss's ₂F₁.

use crate::error::{Error, Result};
use crate::numkernel::{
    beta, format_c, integrate_unit_with, is_nonpositive_integer, log_gamma, principal_ln,
    sum_series_with, QuadConfig, Scaled, SeriesConfig, C64,
};

const SERIES_LIMIT: f64 = 650.0;

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// ₁F₁(a; b; x).
pub fn kummer_1f1(a: C64, b: C64, x: C64) -> Result<C64> {
    Ok(kummer_1f1_scaled(a, b, x)?.value())
}

/// ₁F₁(a; b; x) in scaled form, usable far beyond the f64 exponent range.
pub fn kummer_1f1_scaled(a: C64, b: C64, x: C64) -> Result<Scaled> {
    if is_nonpositive_integer(b) {
        return Err(Error::pole("1F1", format!("b = {}", format_c(b))));
    }
    if x.re == 0.0 && x.im == 0.0 {
        return Ok(Scaled::from_value(one()));
    }
    if is_nonpositive_integer(a) {
        return Ok(Scaled::from_value(series(a, b, x)?));
    }
    if x.re < 0.0 {
        if x.re < -40.0 && !is_nonpositive_integer(b - a) {
            // Algebraic asymptotic form; the exponential part is below
            // double precision. Avoids forming e^{x}·e^{-x} for huge |x|.
            if let Some(s) = divergent_sum(a, a - b + 1.0, -x) {
                let l = log_gamma(b)? - log_gamma(b - a)? - a * principal_ln(-x);
                return Ok(Scaled::exp_of(l).mul_value(s));
            }
        }
        // Kummer's transformation keeps the series free of cancellation.
        if is_nonpositive_integer(b - a) {
            return Ok(Scaled::exp_of(x).mul_value(series(b - a, b, -x)?));
        }
        return Ok(Scaled::exp_of(x).mul(kummer_1f1_scaled(b - a, b, -x)?));
    }
    if x.norm() > 30.0 {
        if let Some(v) = asymptotic(a, b, x)? {
            return Ok(v);
        }
    }
    if x.norm() > SERIES_LIMIT {
        return Err(Error::NoConvergence {
            operation: "1F1",
            evals: 0,
            abs_err: f64::INFINITY,
        });
    }
    Ok(Scaled::from_value(series(a, b, x)?))
}

fn series(a: C64, b: C64, x: C64) -> Result<C64> {
    let mut t = one();
    let cfg = SeriesConfig {
        tol: 1e-17,
        max_terms: 20_000,
        floor: 0.0,
    };
    let r = sum_series_with(
        |n| {
            if n > 0 {
                let k = (n - 1) as f64;
                t *= (a + k) * x / ((b + k) * n as f64);
            }
            t
        },
        &cfg,
    )?;
    Ok(r.value)
}

/// Large-|x| expansion for Re x ≥ 0; `None` when it cannot reach double
/// precision before its terms start to grow.
fn asymptotic(a: C64, b: C64, x: C64) -> Result<Option<Scaled>> {
    let ln_x = principal_ln(x);
    let dom_sum = match divergent_sum(b - a, one() - a, x) {
        Some(s) => s,
        None => return Ok(None),
    };
    let mut total = Scaled::from_value(dom_sum)
        .mul(Scaled::exp_of(log_gamma(b)? - log_gamma(a)? + x + (a - b) * ln_x));
    // The algebraic term is only visible when e^x does not dominate.
    if x.re < 40.0 && !is_nonpositive_integer(b - a) {
        let sub = match divergent_sum(a, a - b + 1.0, -x) {
            Some(s) => s,
            None => return Ok(None),
        };
        let sign = if x.im >= 0.0 { 1.0 } else { -1.0 };
        let ln_mx = ln_x - C64::new(0.0, sign * std::f64::consts::PI);
        let rec = Scaled::from_value(sub).mul(Scaled::exp_of(log_gamma(b)? - log_gamma(b - a)? - a * ln_mx));
        total = total.add(rec);
    }
    Ok(Some(total))
}

/// Σ (p)_k (r)_k / (k! z^k), truncated at the smallest term.
fn divergent_sum(p: C64, r: C64, z: C64) -> Option<C64> {
    let mut t = one();
    let mut s = one();
    let mut prev = 1.0;
    for k in 0..500 {
        let kf = k as f64;
        t *= (p + kf) * (r + kf) / ((kf + 1.0) * z);
        let m = t.norm();
        if m == 0.0 {
            return Some(s);
        }
        if m > prev {
            return None;
        }
        s += t;
        if m <= 1e-17 * s.norm() {
            return Some(s);
        }
        prev = m;
    }
    None
}

/// Evaluation route for ₂F₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypRoute {
    Series,
    Integral,
}

/// ₂F₁(a, b; c; z): series for |z| ≤ 0.9, Euler integral beyond when
/// Re c > Re b > 0.
pub fn gauss_2f1(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    if z.norm() > 0.9 && c.re > b.re && b.re > 0.0 {
        return gauss_2f1_route(a, b, c, z, HypRoute::Integral);
    }
    gauss_2f1_route(a, b, c, z, HypRoute::Series)
}

pub fn gauss_2f1_route(a: C64, b: C64, c: C64, z: C64, route: HypRoute) -> Result<C64> {
    if is_nonpositive_integer(c) {
        return Err(Error::pole("2F1", format!("c = {}", format_c(c))));
    }
    match route {
        HypRoute::Series => {
            let terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
            if !terminating && z.norm() >= 1.0 {
                return Err(Error::domain("2F1 series", "|z| < 1 required"));
            }
            let mut t = one();
            let cfg = SeriesConfig {
                tol: 1e-16,
                max_terms: 200_000,
                floor: 0.0,
            };
            let r = sum_series_with(
                |n| {
                    if n > 0 {
                        let k = (n - 1) as f64;
                        t *= (a + k) * (b + k) * z / ((c + k) * n as f64);
                    }
                    t
                },
                &cfg,
            )?;
            Ok(r.value)
        }
        HypRoute::Integral => {
            if !(c.re > b.re && b.re > 0.0) {
                return Err(Error::domain("2F1 integral", "Re c > Re b > 0 required"));
            }
            if z.im == 0.0 && z.re >= 1.0 {
                return Err(Error::domain("2F1 integral", "z on the cut [1, ∞)"));
            }
            let bm = b - 1.0;
            let cbm = c - b - 1.0;
            let f = |t: f64, tc: f64| {
                let base = one() - z * t;
                (bm * t.ln() + cbm * tc.ln() - a * principal_ln(base)).exp()
            };
            let r = integrate_unit_with(f, bm.re, cbm.re, &QuadConfig::relative(1e-13))?;
            Ok(r.value / beta(b, c - b)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_1f1(c(0.3), c(1.7), c(0.0)).unwrap(), c(1.0));
        let v = kummer_1f1(c(1.0), c(2.0), c(1.0)).unwrap();
        assert!((v.re - (1f64.exp() - 1.0)).abs() < 1e-15);
        let v = kummer_1f1(c(2.5), c(2.5), c(3.0)).unwrap();
        assert!((v.re - 3f64.exp()).abs() < 1e-13);
        assert!(kummer_1f1(c(1.0), c(-2.0), c(1.0)).is_err());
    }

    #[test]
    fn kummer_large_arguments() {
        // ₁F₁(1; 2; x) = (e^x − 1)/x
        for x in [45.0, 300.0, 1000.0, -1000.0, -1e250] {
            let v = kummer_1f1_scaled(c(1.0), c(2.0), c(x)).unwrap();
            let want = if x > 0.0 { x - x.ln() + (-(-x).exp_m1()).ln() } else { (-x.exp_m1()).ln() - (-x).ln() };
            assert!((v.ln_abs() - want).abs() < 1e-13, "x={x}");
        }
        // ₁F₁(1/2; 3/2; −x²) = √π erf(x)/(2x); erf(6) = 1 − 2.15e-17
        let v = kummer_1f1(c(0.5), c(1.5), c(-36.0)).unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt() / 12.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_2f1(c(1.0), c(2.0), c(3.0), c(0.0)).unwrap(), c(1.0));
        let v = gauss_2f1(c(1.0), c(1.0), c(2.0), c(0.5)).unwrap();
        assert!((v.re - 2.0 * 2f64.ln()).abs() < 1e-14);
        let s = gauss_2f1_route(c(2.0), c(0.5), c(1.5), c(0.3), HypRoute::Series).unwrap();
        let i = gauss_2f1_route(c(2.0), c(0.5), c(1.5), c(0.3), HypRoute::Integral).unwrap();
        assert!((s - i).norm() < 1e-10);
        assert!(gauss_2f1_route(c(2.0), c(0.5), c(1.5), c(1.2), HypRoute::Series).is_err());
    }
}
