use std::f64::consts::PI;

use super::complex::{is_nonpositive_integer, principal_ln, C64};
use super::series::{sum_series_with, SeriesConfig};
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Principal branch of ln Γ(z).
pub fn log_gamma(z: C64) -> Result<C64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("log_gamma", "argument must be finite"));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::pole("gamma", format_c(z)));
    }
    Ok(log_gamma_unchecked(z))
}

fn log_gamma_unchecked(z: C64) -> C64 {
    if z.re < 0.5 {
        // Reflection; the 2πi term restores continuity with the principal branch.
        let lns = ln_sin_pi(z);
        let sign = if z.im < 0.0 { -1.0 } else { 1.0 };
        let k = (z.re / 2.0 + 0.25).floor();
        let corr = C64::new(0.0, 2.0 * PI * sign * k);
        return C64::new(PI.ln(), 0.0) - lns - lanczos(C64::new(1.0, 0.0) - z) + corr;
    }
    lanczos(z)
}

fn lanczos(z: C64) -> C64 {
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    C64::new(LN_SQRT_2PI, 0.0) + (z + 0.5) * t.ln() - t + x.ln()
}

/// Principal ln sin(πz), safe for large |Im z|.
fn ln_sin_pi(z: C64) -> C64 {
    let w = z * PI;
    if w.im.abs() < 20.0 {
        return principal_ln(w.sin());
    }
    let (w, flip) = if w.im < 0.0 { (w.conj(), true) } else { (w, false) };
    let i = C64::new(0.0, 1.0);
    let tail = C64::new(1.0, 0.0) - (i * w * 2.0).exp();
    let mut r = C64::new(0.5f64.ln(), PI / 2.0) - i * w + tail.ln();
    r.im = wrap_angle(r.im);
    if flip {
        r.conj()
    } else {
        r
    }
}

fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = a - two_pi * (a / two_pi).round();
    if r <= -PI {
        r += two_pi;
    }
    if r > PI {
        r -= two_pi;
    }
    r
}

/// `exp(l)`, returned as an exactly real number when `real` is set and the
/// imaginary part of `l` is a multiple of π (sign of a real Γ value).
fn exp_signed(l: C64, real: bool) -> C64 {
    if real {
        let m = l.re.exp();
        let turns = (l.im / PI).round() as i64;
        let s = if turns.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        return C64::new(s * m, 0.0);
    }
    l.exp()
}

pub fn gamma(z: C64) -> Result<C64> {
    let l = log_gamma(z)?;
    Ok(exp_signed(l, z.im == 0.0))
}

/// 1/Γ(z); entire, so it is 0 at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        return C64::new(0.0, 0.0);
    }
    exp_signed(-log_gamma_unchecked(z), z.im == 0.0)
}

pub fn beta(x: C64, y: C64) -> Result<C64> {
    for (arg, name) in [(x, "x"), (y, "y"), (x + y, "x+y")] {
        if is_nonpositive_integer(arg) {
            return Err(Error::pole("beta", format!("{name} = {}", format_c(arg))));
        }
    }
    let l = log_gamma(x)? + log_gamma(y)? - log_gamma(x + y)?;
    Ok(exp_signed(l, x.im == 0.0 && y.im == 0.0))
}

/// Rising factorial (a)_n.
pub fn pochhammer(a: C64, n: u32) -> C64 {
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    if n <= 64 || is_nonpositive_integer(a) || is_nonpositive_integer(a + n as f64) {
        let mut p = C64::new(1.0, 0.0);
        for k in 0..n {
            p *= a + k as f64;
            if p.re == 0.0 && p.im == 0.0 {
                break;
            }
        }
        return p;
    }
    let l = log_gamma_unchecked(a + n as f64) - log_gamma_unchecked(a);
    exp_signed(l, a.im == 0.0)
}

/// Lower incomplete gamma γ(a, z) = ∫₀^z t^{a-1} e^{-t} dt, principal branch
/// of z^a. Re a > 0.
pub fn lower_incomplete_gamma(a: C64, z: C64) -> Result<C64> {
    if !(a.re > 0.0) {
        return Err(Error::domain("lower_incomplete_gamma", "Re a > 0 required"));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let za = (a * principal_ln(z)).exp();
    if z.re > 30.0 + a.norm() {
        // γ = Γ(a) − Γ(a, z), upper part by continued fraction.
        return Ok(gamma(a)? - upper_gamma_cf(a, z)?);
    }
    let cfg = SeriesConfig {
        tol: 1e-16,
        max_terms: 20_000,
        floor: 0.0,
    };
    if z.re > 0.0 {
        // z^a e^{-z} Σ z^n / (a)_{n+1}: positive terms for real z > 0
        let mut t = C64::new(1.0, 0.0) / a;
        let s = sum_series_with(
            |n| {
                if n > 0 {
                    t *= z / (a + n as f64);
                }
                t
            },
            &cfg,
        )?;
        return Ok(za * (-z).exp() * s.value);
    }
    // z^a Σ (-z)^n / (n! (a+n)): positive terms for real z < 0
    let mut p = C64::new(1.0, 0.0);
    let s = sum_series_with(
        |n| {
            if n > 0 {
                p *= -z / n as f64;
            }
            p / (a + n as f64)
        },
        &cfg,
    )?;
    Ok(za * s.value)
}

/// Γ(a, z) by the Legendre continued fraction (modified Lentz), Re z large.
fn upper_gamma_cf(a: C64, z: C64) -> Result<C64> {
    let tiny = 1e-300;
    let one = C64::new(1.0, 0.0);
    let mut b = z + 1.0 - a;
    let mut c = one / tiny;
    let mut d = one / b;
    let mut h = d;
    for i in 1..5000 {
        let an = -(i as f64) * (C64::new(i as f64, 0.0) - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < tiny {
            d = C64::new(tiny, 0.0);
        }
        c = b + an / c;
        if c.norm() < tiny {
            c = C64::new(tiny, 0.0);
        }
        d = one / d;
        let del = d * c;
        h *= del;
        if (del - one).norm() < 1e-16 {
            return Ok((a * principal_ln(z) - z).exp() * h);
        }
    }
    Err(Error::NoConvergence {
        operation: "upper incomplete gamma",
        evals: 5000,
        abs_err: f64::NAN,
    })
}

pub fn format_c(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn small_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.572_364_942_924_700_1).abs() < 1e-14);
        assert!((log_gamma(c(5.0, 0.0)).unwrap().re - 24f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(log_gamma(c(-2.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(log_gamma(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert_eq!(rgamma(c(-3.0, 0.0)), c(0.0, 0.0));
    }

    // Reference values from an arbitrary-precision loggamma.
    #[test]
    fn principal_branch_matches_reference() {
        let cases = [
            (c(-0.5, 0.0), c(1.265_512_123_484_645_4, -PI)),
            (c(-1.5, 0.0), c(0.860_047_015_376_481, -2.0 * PI)),
            (c(-2.5, 3.0), c(-7.478_236_042_050_315, -5.726_104_271_910_386_8)),
            (c(3.0, -40.0), c(-52.689_155_060_822_637, -111.405_132_415_459_97)),
            (c(0.25, 0.5), c(0.340_250_420_408_419_79, -1.195_183_009_887_590_3)),
            (c(-7.25, -0.5), c(-8.750_943_326_773_790_9, 23.365_992_828_634_705)),
            (c(40.0, 15.0), c(103.848_576_450_082_1, 55.490_771_070_660_851)),
        ];
        for (z, want) in cases {
            let got = log_gamma(z).unwrap();
            assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "{z}: {got} vs {want}");
        }
    }

    #[test]
    fn gamma_sign_for_negative_reals() {
        let g = gamma(c(-0.5, 0.0)).unwrap();
        assert_eq!(g.im, 0.0);
        assert!((g.re + 2.0 * PI.sqrt()).abs() < 1e-13);
        let g = gamma(c(-1.5, 0.0)).unwrap();
        assert!((g.re - 4.0 * PI.sqrt() / 3.0).abs() < 1e-13);
    }

    #[test]
    fn beta_examples() {
        assert!(close(beta(c(1.0, 0.0), c(1.0, 0.0)).unwrap(), c(1.0, 0.0), 1e-14));
        assert!(close(beta(c(0.5, 0.0), c(0.5, 0.0)).unwrap(), c(PI, 0.0), 1e-14));
        assert!(close(beta(c(2.0, 0.0), c(3.0, 0.0)).unwrap(), c(1.0 / 12.0, 0.0), 1e-14));
        assert!(beta(c(-1.0, 0.0), c(0.5, 0.0)).is_err());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(3.7, 1.0), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(1.0, 0.0), 5), c(120.0, 0.0));
        assert_eq!(pochhammer(c(-2.0, 0.0), 3), c(0.0, 0.0));
        let long = pochhammer(c(0.5, 0.0), 100);
        let direct: f64 = (0..100).map(|k| 0.5 + k as f64).product();
        assert!((long.re - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn incomplete_gamma_regimes() {
        // γ(1, z) = 1 − e^{−z}
        for z in [0.3, 5.0, -4.0, 80.0] {
            let g = lower_incomplete_gamma(c(1.0, 0.0), c(z, 0.0)).unwrap();
            assert!((g.re + (-z).exp_m1()).abs() < 1e-13 * (1.0 + g.re.abs()), "z={z}: {g}");
        }
        // γ(1/2, z) = √π erf(√z); erf(1) reference
        let g = lower_incomplete_gamma(c(0.5, 0.0), c(1.0, 0.0)).unwrap();
        assert!((g.re - PI.sqrt() * 0.842_700_792_949_714_9).abs() < 1e-14);
    }

    #[test]
    fn large_imaginary_parts_stay_finite() {
        let l = log_gamma(c(-3.3, 250.0)).unwrap();
        let r = log_gamma(c(-2.3, 250.0)).unwrap();
        // recurrence Γ(z+1) = zΓ(z)
        let diff = r - l - principal_ln(c(-3.3, 250.0));
        let k = (diff.im / (2.0 * PI)).round();
        assert!((diff - c(0.0, 2.0 * PI * k)).norm() < 1e-10);
    }
}
