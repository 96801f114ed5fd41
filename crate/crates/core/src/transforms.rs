//! Mellin and Laplace transforms: closed forms and quadrature oracles.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::extbessel::{BesselParams, EvalRoute, ExtBessel, Form};
use crate::exthyp::{ext_beta_quad, gauss_2f1, kummer_1f1, ExtBetaParams};
use crate::numkernel::{
    beta, format_c, gamma, integrate_halfline_with, is_nonpositive_integer, log_gamma,
    principal_ln, rgamma, HalflineConfig, QuadConfig, QuadResult, Scaled, C64,
};

/// A closed form next to its numeric oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformCheck {
    pub closed_form: C64,
    pub numeric: QuadResult,
    pub abs_discrepancy: f64,
}

impl TransformCheck {
    pub fn new(closed_form: C64, numeric: QuadResult) -> Self {
        TransformCheck {
            closed_form,
            numeric,
            abs_discrepancy: (closed_form - numeric.value).norm(),
        }
    }
}

fn pole_free(z: C64, what: &'static str) -> Result<()> {
    if is_nonpositive_integer(z) {
        return Err(Error::pole(what, format_c(z)));
    }
    Ok(())
}

/// ∫₀^∞ x^{s−1} f(x) dx with `left_exponent` the power of the full
/// integrand at 0.
pub fn mellin_numeric<F>(f: F, s: C64, left_exponent: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> C64,
{
    let sm = s - 1.0;
    integrate_halfline_with(
        |x| {
            let y = f(x);
            if y.re == 0.0 && y.im == 0.0 {
                return y;
            }
            y * (sm * x.ln()).exp()
        },
        &HalflineConfig {
            quad: QuadConfig {
                abs_tol: 1e-12,
                rel_tol: 1e-11,
                ..Default::default()
            },
            scale: 1.0,
            left_exponent,
        },
    )
}

/// ∫₀^∞ e^{−sx} f(x) dx; `f` returns a scaled value so that
/// exponentially growing integrands combine with e^{−sx} before rounding.
pub fn laplace_numeric<F>(f: F, s: C64, left_exponent: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Scaled>,
{
    let failure = std::cell::RefCell::new(None);
    let r = integrate_halfline_with(
        |x| match f(x) {
            Ok(v) => v.mul(Scaled::exp_of(-s * x)).value(),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                C64::new(0.0, 0.0)
            }
        },
        &HalflineConfig {
            quad: QuadConfig {
                abs_tol: 1e-13,
                rel_tol: 1e-12,
                ..Default::default()
            },
            scale: 1.0,
            left_exponent,
        },
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => r,
    }
}

/// Γ(α−s)Γ(β)Γ(s)/(Γ(α)Γ(β−s)) = ∫₀^∞ b^{s−1} ₁F₁(α; β; −b) db.
pub fn mellin_1f1_closed(alpha: C64, beta_: C64, s: C64) -> Result<C64> {
    if !(s.re > 0.0 && s.re < alpha.re) {
        return Err(Error::domain("mellin_1f1_closed", "0 < Re(s) < Re(alpha) required"));
    }
    pole_free(beta_, "gamma")?;
    Ok(gamma(alpha - s)? * gamma(beta_)? * gamma(s)? * rgamma(alpha) * rgamma(beta_ - s))
}

pub fn mellin_1f1_check(alpha: C64, beta_: C64, s: C64) -> Result<TransformCheck> {
    let closed = mellin_1f1_closed(alpha, beta_, s)?;
    let numeric = mellin_numeric(
        |b| kummer_1f1(alpha, beta_, C64::new(-b, 0.0)).unwrap_or(C64::new(f64::NAN, 0.0)),
        s,
        s.re - 1.0,
    )?;
    Ok(TransformCheck::new(closed, numeric))
}

/// The Mellin closed form for I_v(q;·) with the factor (−1)^{v+s−1}
/// (principal branch).
pub fn mellin_ext_bessel_closed(params: BesselParams, s: C64) -> Result<C64> {
    let BesselParams { v, q } = params;
    let phase = (C64::new(0.0, PI) * (v + s - 1.0)).exp();
    Ok(phase * mellin_core(v, q, s)?)
}

/// 2^{q−s−1/2} Γ(v+s) Γ(q−s) / (√π Γ(q+v−s+1/2)).
fn mellin_core(v: C64, q: C64, s: C64) -> Result<C64> {
    pole_free(v + s, "gamma")?;
    pole_free(q - s, "gamma")?;
    let l = (q - s - 0.5) * std::f64::consts::LN_2 + log_gamma(v + s)? + log_gamma(q - s)?
        - C64::new(0.5 * PI.ln(), 0.0);
    Ok(l.exp() * rgamma(q + v - s + 0.5))
}

/// ∫₀^∞ x^{s−1} I_v(q; −x) dx in closed form: the convergent reading of the
/// Mellin theorem, with phase e^{iπv} from (−x/2)^v.
pub fn mellin_ext_bessel_negated(params: BesselParams, s: C64) -> Result<C64> {
    let BesselParams { v, q } = params;
    let phase = (C64::new(0.0, PI) * v).exp();
    Ok(phase * mellin_core(v, q, s)?)
}

/// Quadrature of ∫₀^∞ x^{s−1} I_v(q; −x) dx.
pub fn mellin_ext_bessel_numeric(params: BesselParams, s: C64) -> Result<QuadResult> {
    let ev = ExtBessel::new(params, EvalRoute::Integral)?;
    mellin_numeric(
        |x| ev.eval(C64::new(-x, 0.0)).unwrap_or(C64::new(f64::NAN, 0.0)),
        s,
        (s + params.v).re - 1.0,
    )
}

/// Mellin transform in p of the extended beta.
///
/// `Form::Printed` is (√2/π) 2^{q−s−1/2} (−1)^v Γ(v+s)Γ(q−s)/Γ(q+v−s+1/2) ·
/// B(x+μs+1, y+σs+1). `Form::Corrected` uses the kernel order v+1/2, which
/// is what the substitution p → p t^μ(1−t)^σ actually produces.
pub fn mellin_ext_beta_closed(x: C64, y: C64, params: &ExtBetaParams, s: C64, form: Form) -> Result<C64> {
    let ExtBetaParams { v, q, mu, sigma, .. } = *params;
    let b = beta(x + mu * s + 1.0, y + sigma * s + 1.0)?;
    let sqrt_2_pi = (2.0 / PI).sqrt();
    match form {
        Form::Printed => {
            let phase = (C64::new(0.0, PI) * v).exp();
            // (√2/π) = √(2/π)/√π, so mellin_core already carries the 1/√π
            Ok(sqrt_2_pi * phase * mellin_core(v, q, s)? * b)
        }
        Form::Corrected => {
            let w = v + 0.5;
            let phase = (C64::new(0.0, PI) * w).exp();
            Ok(sqrt_2_pi * phase * mellin_core(w, q, s)? * b)
        }
    }
}

/// ∫₀^∞ p^{s−1} B_{v,q}^{(μ,σ)}(x, y; p) dp by nested quadrature.
pub fn mellin_ext_beta_numeric(x: C64, y: C64, params: &ExtBetaParams, s: C64) -> Result<QuadResult> {
    let failure = std::cell::RefCell::new(None);
    let sm = s - 1.0;
    let r = integrate_halfline_with(
        |p| {
            let mut pp = *params;
            pp.p = C64::new(p, 0.0);
            match ext_beta_quad(x, y, &pp, EvalRoute::Hypergeometric) {
                Ok(b) => b.value * (sm * p.ln()).exp(),
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    C64::new(0.0, 0.0)
                }
            }
        },
        &HalflineConfig {
            quad: QuadConfig {
                abs_tol: 1e-10,
                rel_tol: 1e-9,
                ..Default::default()
            },
            scale: 1.0,
            left_exponent: ((s + params.v).re - 0.5).min(0.0),
        },
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => r,
    }
}

/// L{I_v(q;·)}(s) = 2^{q+v−1/2} Γ(v+q) Γ(v+1) / (√π s^{v+1} Γ(q+2v+1/2)) ·
/// ₂F₁(v+1, v+q; 2v+q+1/2; 2/s), Re s > 2.
pub fn laplace_ext_bessel_closed(params: BesselParams, s: C64) -> Result<C64> {
    let BesselParams { v, q } = params;
    if !(s.re > 2.0) {
        return Err(Error::domain("laplace_ext_bessel_closed", "Re(s) > 2 required"));
    }
    pole_free(v + q, "gamma")?;
    pole_free(v + 1.0, "gamma")?;
    let c = q + 2.0 * v + 0.5;
    let l = (q + v - 0.5) * std::f64::consts::LN_2 + log_gamma(v + q)? + log_gamma(v + 1.0)?
        - C64::new(0.5 * PI.ln(), 0.0)
        - (v + 1.0) * principal_ln(s);
    let f = gauss_2f1(v + 1.0, v + q, c, 2.0 / s)?;
    Ok(l.exp() * rgamma(c) * f)
}

/// L{I_v}(s) as the shift s → s+1 of the q = 1/2 case, Re s > 1.
pub fn laplace_modified_bessel_closed(v: C64, s: C64) -> Result<C64> {
    if !(s.re > 1.0) {
        return Err(Error::domain("laplace_modified_bessel_closed", "Re(s) > 1 required"));
    }
    laplace_ext_bessel_closed(BesselParams::new(v, C64::new(0.5, 0.0)), s + 1.0)
}

/// The corollary exactly as printed, i.e. with the extra 1/Γ(q+2v+1/2)
/// (q = 1/2), kept for the audit.
pub fn laplace_modified_bessel_printed(v: C64, s: C64) -> Result<C64> {
    Ok(laplace_modified_bessel_closed(v, s)? * rgamma(2.0 * v + 1.0))
}

/// Quadrature of ∫₀^∞ e^{−sx} I_v(q;x) dx.
pub fn laplace_ext_bessel_numeric(params: BesselParams, s: C64) -> Result<QuadResult> {
    let ev = ExtBessel::new(params, EvalRoute::Integral)?;
    laplace_numeric(|x| ev.eval_scaled(C64::new(x, 0.0)), s, params.v.re.min(0.0))
}
