//! The extended fractional derivative
//!
//! D f(z) = √(2/π)/Γ(α) ∫₀^z f(t)(z−t)^{α−1} t^η I_{v+1/2}(q; −p z^{μ+σ}/(t^μ(z−t)^σ)) dt,
//!
//! its closed forms on powers and rational functions, and the multiplicative
//! variant exp(D(ln f)).
//!
//! The operator is the bare integral; there is no outer z-derivative. Numeric
//! evaluation runs along t = zu for real z > 0.

mod pfd;
mod poly;

pub use pfd::{complex_pfd, eval_terms, pfd_from_real_form, PfdTerm, RationalFunction, RealPartialFractions};
pub use poly::{real_poly_roots, Field, Poly};

use crate::error::{Error, Result};
use crate::exthyp::{ext_beta_weighted, ExtBetaParams, ExtBetaSeries, HypRoute};
use crate::numkernel::{cpow, rgamma, QuadResult, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtFracParams {
    pub alpha: C64,
    pub eta: C64,
    pub p: C64,
    pub mu: f64,
    pub sigma: f64,
    pub v: C64,
    pub q: C64,
}

impl ExtFracParams {
    pub fn real(alpha: f64, eta: f64, p: f64, mu: f64, sigma: f64, v: f64, q: f64) -> Self {
        let c = |x| C64::new(x, 0.0);
        ExtFracParams {
            alpha: c(alpha),
            eta: c(eta),
            p: c(p),
            mu,
            sigma,
            v: c(v),
            q: c(q),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let op = "ext_frac_deriv";
        if !(self.alpha.re > 0.0) {
            return Err(Error::domain(op, "Re(alpha) > 0 required"));
        }
        if !(self.eta.re > 0.0) {
            return Err(Error::domain(op, "Re(eta) > 0 required"));
        }
        if !(self.p.re > 0.0) {
            return Err(Error::domain(op, "Re(p) > 0 required"));
        }
        if !(self.mu >= 0.0 && self.sigma >= 0.0) {
            return Err(Error::domain(op, "mu >= 0 and sigma >= 0 required"));
        }
        if !((self.v + self.q).re + 0.5 > 0.0) {
            return Err(Error::domain(op, "Re(v+q+1/2) > 0 required"));
        }
        if !((2.0 * self.v + self.q).re + 1.5 > 0.0) {
            return Err(Error::domain(op, "Re(2v+q+3/2) > 0 required"));
        }
        Ok(())
    }

    pub fn beta_params(&self) -> ExtBetaParams {
        ExtBetaParams::new(self.v, self.q, self.p, self.mu, self.sigma)
    }
}

fn real_positive(z: C64, op: &'static str) -> Result<f64> {
    if z.im != 0.0 || !(z.re > 0.0) || !z.re.is_finite() {
        return Err(Error::domain(op, "real z > 0 required"));
    }
    Ok(z.re)
}

fn power(z: C64, e: C64, op: &'static str) -> Result<C64> {
    cpow(z, e).ok_or_else(|| Error::domain(op, "z^(eta+alpha) undefined at z = 0"))
}

/// Quadrature for [`ext_frac_deriv`] with a fallible integrand, keeping the
/// error estimate and evaluation count.
pub fn ext_frac_deriv_quad<F>(f: F, z: C64, params: &ExtFracParams) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<C64>,
{
    params.validate()?;
    ext_frac_deriv_unchecked(f, z, params)
}

/// [`ext_frac_deriv_quad`] without the parameter checks, for comparing the
/// operator against others whose settings fall outside them (η ≤ 0, say).
/// Only integrability of the kernel integral is enforced.
pub fn ext_frac_deriv_unchecked<F>(f: F, z: C64, params: &ExtFracParams) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<C64>,
{
    let zr = real_positive(z, "ext_frac_deriv")?;
    let scale = power(z, params.alpha + params.eta, "ext_frac_deriv")? * rgamma(params.alpha);
    let r = ext_beta_weighted(params.eta, params.alpha - 1.0, &params.beta_params(), |u| f(zr * u))?;
    Ok(QuadResult {
        value: r.value * scale,
        abs_err: r.abs_err * scale.norm(),
        ..r
    })
}

/// D f(z) by quadrature on t = zu:
/// z^{α+η} √(2/π)/Γ(α) ∫₀¹ f(zu)(1−u)^{α−1} u^η I_{v+1/2}(q; −p/(u^μ(1−u)^σ)) du.
pub fn ext_frac_deriv<F>(f: F, z: C64, params: &ExtFracParams) -> Result<C64>
where
    F: Fn(f64) -> C64,
{
    Ok(ext_frac_deriv_quad(|t| Ok(f(t)), z, params)?.value)
}

/// D t^λ = z^{η+λ+α}/Γ(α) · B_{v,q}^{(μ,σ)}(η+λ, α−1; p).
pub fn frac_deriv_power(lambda: C64, z: C64, params: &ExtFracParams) -> Result<C64> {
    params.validate()?;
    let x = params.eta + lambda;
    if !((x + params.mu * params.q).re > -1.0) {
        return Err(Error::domain("frac_deriv_power", "Re(eta+lambda+mu*q) > -1 required"));
    }
    let b = crate::exthyp::ext_beta(x, params.alpha - 1.0, &params.beta_params())?;
    Ok(power(z, x + params.alpha, "frac_deriv_power")? * rgamma(params.alpha) * b)
}

fn nonnegative_integer(r: C64) -> Option<usize> {
    (r.im == 0.0 && r.re >= 0.0 && r.re.fract() == 0.0 && r.re < 1e6).then_some(r.re as usize)
}

/// Shifted power closed form evaluated against a shared memo.
struct ShiftedPower {
    value: C64,
    route: HypRoute,
}

fn shifted_power(series: &ExtBetaSeries, r: C64, xi: C64, z: C64, params: &ExtFracParams) -> Result<ShiftedPower> {
    if xi.re == 0.0 && xi.im == 0.0 {
        return Err(Error::domain("frac_deriv_shifted_power", "xi != 0 required"));
    }
    let ratio = z / xi;
    let (eta, y) = (params.eta, params.alpha - 1.0);
    let (raw, route) = if let Some(n) = nonnegative_integer(r) {
        // (−r)ₙ vanishes past n = r: a finite sum for any z/ξ
        let mut coef = C64::new(1.0, 0.0);
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..=n {
            if k > 0 {
                coef *= (-r + (k - 1) as f64) * ratio / k as f64;
            }
            acc += coef * series.shifted(eta, y, k)?;
        }
        (acc, HypRoute::Series)
    } else {
        let route = if ratio.norm() < 1.0 { HypRoute::Series } else { HypRoute::Integral };
        (series.gauss_unnormalized(-r, eta, y, ratio, route)?, route)
    };
    let lead = cpow(-xi, r).ok_or_else(|| Error::domain("frac_deriv_shifted_power", "xi != 0 required"))?;
    let value = lead * power(z, eta + params.alpha, "frac_deriv_shifted_power")? * rgamma(params.alpha) * raw;
    Ok(ShiftedPower { value, route })
}

/// D (t−ξ)^r = (−ξ)^r B(η, α−1) z^{η+α}/Γ(α) · F_{v,q;p}^{(μ,σ)}(−r, η; η+α−1; z/ξ)
/// with the principal branch of (−ξ)^r. The product B(η, α−1)·F is formed
/// directly, so α = 1 is allowed.
pub fn frac_deriv_shifted_power(r: C64, xi: C64, z: C64, params: &ExtFracParams) -> Result<C64> {
    params.validate()?;
    let series = ExtBetaSeries::new(&params.beta_params())?;
    Ok(shifted_power(&series, r, xi, z, params)?.value)
}

/// A pole that forced the integral representation of the hypergeometric
/// factor because |z/pole| ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchWarning {
    pub pole: C64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalDerivative {
    pub value: C64,
    pub terms: Vec<PfdTerm<C64>>,
    pub warnings: Vec<BranchWarning>,
}

/// D of a rational function through its complex partial fractions:
/// Σ coeff·(−pole)^{−s} B(η, α−1) z^{η+α}/Γ(α) · F(s, η; η+α−1; z/pole).
///
/// Terms are summed in partial-fraction order so the result is bit-stable.
pub fn frac_deriv_rational(rf: &RationalFunction<C64>, z: C64, params: &ExtFracParams) -> Result<RationalDerivative> {
    params.validate()?;
    let series = ExtBetaSeries::new(&params.beta_params())?;
    let terms = complex_pfd(rf);
    let mut value = C64::new(0.0, 0.0);
    let mut warnings: Vec<BranchWarning> = Vec::new();
    for t in &terms {
        let sp = shifted_power(&series, C64::new(-(t.order as f64), 0.0), t.pole, z, params)?;
        if sp.route == HypRoute::Integral && !warnings.iter().any(|w| w.pole == t.pole) {
            warnings.push(BranchWarning {
                pole: t.pole,
                message: format!(
                    "|z/pole| = {:.6} >= 1 at pole {}; integral representation used",
                    (z / t.pole).norm(),
                    crate::numkernel::format_c(t.pole)
                ),
            });
        }
        value += t.coeff * sp.value;
    }
    Ok(RationalDerivative { value, terms, warnings })
}

/// Multiplicative extended fractional derivative exp(D(ln f)).
///
/// The result is complex in general; for real parameters the kernel is real
/// and so is the value.
pub fn mefd<F>(f: F, z: C64, params: &ExtFracParams) -> Result<C64>
where
    F: Fn(f64) -> f64,
{
    let r = ext_frac_deriv_quad(
        |t| {
            let v = f(t);
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain("mefd", format!("f must be positive on (0, z); f({t:e}) = {v:e}")));
            }
            Ok(C64::new(v.ln(), 0.0))
        },
        z,
        params,
    )?;
    Ok(r.value.exp())
}

/// MEFD of f with ln f = Σ aₖ tᵏ: exp((1/Γ(α)) Σ aₖ z^{η+k+α} B_{v,q}^{(μ,σ)}(η+k, α−1; p)),
/// truncated after k_max.
pub fn mefd_analytic(coeffs: &[C64], z: C64, params: &ExtFracParams, k_max: usize) -> Result<C64> {
    params.validate()?;
    if !(z.norm() < 1.0) {
        return Err(Error::domain("mefd_analytic", "|z| < 1 required"));
    }
    let series = ExtBetaSeries::new(&params.beta_params())?;
    let y = params.alpha - 1.0;
    let base = power(z, params.eta + params.alpha, "mefd_analytic")?;
    let n = coeffs.len().min(k_max + 1);
    let mut sum = C64::new(0.0, 0.0);
    let mut last = C64::new(0.0, 0.0);
    let mut zk = C64::new(1.0, 0.0);
    for (k, a) in coeffs[..n].iter().enumerate() {
        if k > 0 {
            zk *= z;
        }
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        last = a * zk * series.shifted(params.eta, y, k)?;
        sum += last;
    }
    if coeffs.len() > n && last.norm() > 1e-10 * sum.norm().max(f64::MIN_POSITIVE) {
        return Err(Error::NoConvergence {
            operation: "mefd_analytic",
            evals: n,
            abs_err: (last * base * rgamma(params.alpha)).norm(),
        });
    }
    Ok((sum * base * rgamma(params.alpha)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn std_params() -> ExtFracParams {
        ExtFracParams::real(2.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5)
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn power_closed_form_matches_quadrature() {
        let p = std_params();
        let closed = frac_deriv_power(c(2.0), c(1.0), &p).unwrap();
        let numeric = ext_frac_deriv(|t| c(t * t), c(1.0), &p).unwrap();
        assert!(rel(numeric, closed) < 1e-7, "{numeric} {closed}");
    }

    #[test]
    fn zero_function() {
        assert_eq!(ext_frac_deriv(|_| c(0.0), c(0.7), &std_params()).unwrap(), c(0.0));
    }

    #[test]
    fn homogeneity_in_z() {
        let p = std_params();
        let a = frac_deriv_power(c(1.5), c(0.4), &p).unwrap();
        let b = frac_deriv_power(c(1.5), c(0.8), &p).unwrap();
        assert!(rel(b, a * 2f64.powf(1.0 + 1.5 + 2.0)) < 1e-12);
    }

    #[test]
    fn shifted_power_cases() {
        let p = std_params();
        let r0 = frac_deriv_shifted_power(c(0.0), c(2.0), c(0.5), &p).unwrap();
        assert!(rel(r0, frac_deriv_power(c(0.0), c(0.5), &p).unwrap()) < 1e-12);
        let r1 = frac_deriv_shifted_power(c(1.0), c(2.0), c(0.5), &p).unwrap();
        let lin = frac_deriv_power(c(1.0), c(0.5), &p).unwrap() - 2.0 * frac_deriv_power(c(0.0), c(0.5), &p).unwrap();
        assert!(rel(r1, lin) < 1e-12);
        let xi = C64::new(-3.0, 1.0);
        let rm = frac_deriv_shifted_power(c(-1.0), xi, c(0.5), &p).unwrap();
        let num = ext_frac_deriv(|t| 1.0 / (c(t) - xi), c(0.5), &p).unwrap();
        assert!(rel(rm, num) < 1e-6, "{rm} {num}");
    }

    #[test]
    fn shifted_power_outside_unit_ratio() {
        let p = ExtFracParams::real(1.5, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5);
        let xi = C64::new(-0.5, 0.25);
        let closed = frac_deriv_shifted_power(c(-2.0), xi, c(0.9), &p).unwrap();
        let num = ext_frac_deriv(|t| (c(t) - xi).powi(-2), c(0.9), &p).unwrap();
        assert!(rel(closed, num) < 1e-8, "{closed} {num}");
    }

    #[test]
    fn alpha_one_is_finite() {
        let p = ExtFracParams::real(1.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5);
        let closed = frac_deriv_shifted_power(c(-1.0), c(5.0), c(0.2), &p).unwrap();
        let num = ext_frac_deriv(|t| c(1.0 / (t - 5.0)), c(0.2), &p).unwrap();
        assert!(rel(closed, num) < 1e-8);
    }

    #[test]
    fn rational_example() {
        let p = ExtFracParams::real(1.5, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5);
        let z0 = C64::new(-3.0, 1.0);
        let rf = RationalFunction::new(vec![c(1.0), c(2.0)], vec![(z0, 3), (z0.conj(), 3)]).unwrap();
        let out = frac_deriv_rational(&rf, c(0.3), &p).unwrap();
        let num = ext_frac_deriv(|t| c((2.0 * t + 1.0) / (t * t + 6.0 * t + 10.0).powi(3)), c(0.3), &p).unwrap();
        assert!(rel(out.value, num) < 1e-6, "{} {num}", out.value);
        assert!(out.value.im.abs() < 1e-10);
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn rational_single_pole() {
        let p = std_params();
        let rf = RationalFunction::new(vec![c(1.0)], vec![(c(5.0), 1)]).unwrap();
        let out = frac_deriv_rational(&rf, c(0.2), &p).unwrap();
        let sp = frac_deriv_shifted_power(c(-1.0), c(5.0), c(0.2), &p).unwrap();
        assert!(rel(out.value, sp) < 1e-14);
    }

    #[test]
    fn rational_warns_for_near_poles() {
        let p = std_params();
        let rf = RationalFunction::new(vec![c(1.0)], vec![(C64::new(0.1, 0.3), 1), (C64::new(0.1, -0.3), 1)]).unwrap();
        let out = frac_deriv_rational(&rf, c(0.5), &p).unwrap();
        assert_eq!(out.warnings.len(), 2);
        let num = ext_frac_deriv(|t| c(1.0 / ((t - 0.1) * (t - 0.1) + 0.09)), c(0.5), &p).unwrap();
        assert!(rel(out.value, num) < 1e-7, "{} {num}", out.value);
    }

    #[test]
    fn mefd_examples() {
        let p = std_params();
        assert!(rel(mefd(|_| 1.0, c(0.6), &p).unwrap(), c(1.0)) < 1e-15);
        let m = mefd(|t| (t * t).exp(), c(0.6), &p).unwrap();
        assert!(rel(m, frac_deriv_power(c(2.0), c(0.6), &p).unwrap().exp()) < 1e-9);
        let m = mefd(|t| 2f64.powf(t - 3.0), c(0.5), &p).unwrap();
        let closed = (2f64.ln() * frac_deriv_shifted_power(c(1.0), c(3.0), c(0.5), &p).unwrap()).exp();
        assert!(rel(m, closed) < 1e-9);
        assert!(matches!(mefd(|t| t - 0.5, c(1.0), &p), Err(Error::Domain { .. })));
    }

    #[test]
    fn mefd_analytic_examples() {
        let p = std_params();
        let z = c(0.4);
        let a = mefd_analytic(&[c(0.0), c(0.0), c(1.0)], z, &p, 10).unwrap();
        assert!(rel(a, mefd(|t| (t * t).exp(), z, &p).unwrap()) < 1e-9);
        let a = mefd_analytic(&[c(1.0), c(1.0)], z, &p, 10).unwrap();
        assert!(rel(a, mefd(|t| (1.0 + t).exp(), z, &p).unwrap()) < 1e-7);
        let c0 = mefd_analytic(&[c(0.7)], z, &p, 0).unwrap();
        assert!(rel(c0, (0.7 * frac_deriv_power(c(0.0), z, &p).unwrap()).exp()) < 1e-12);
        assert!(mefd_analytic(&[c(1.0)], c(1.2), &p, 3).is_err());
    }

    #[test]
    fn rejects_bad_params() {
        let mut p = std_params();
        p.alpha = c(-0.5);
        assert!(frac_deriv_power(c(1.0), c(1.0), &p).is_err());
        assert!(ext_frac_deriv(|t| c(t), C64::new(1.0, 1.0), &std_params()).is_err());
    }
}
