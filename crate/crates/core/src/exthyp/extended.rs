//! Extended beta B_{v,q}^{(μ,σ)}(x,y;p), the Gauss and confluent functions
//! built from it, and the extended gamma Γ_p^{v,q}.

use std::cell::RefCell;
use std::collections::HashMap;

use super::classical::{kummer_1f1, HypRoute};
use crate::error::{Error, Result};
use crate::extbessel::{BesselParams, EvalRoute, ExtBessel};
use crate::numkernel::{
    beta, gamma, integrate_unit_try, pochhammer, principal_ln, sum_series_with, QuadConfig,
    QuadResult, Scaled, SeriesConfig, C64,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtBetaParams {
    pub v: C64,
    pub q: C64,
    pub p: C64,
    pub mu: f64,
    pub sigma: f64,
}

impl ExtBetaParams {
    pub fn new(v: C64, q: C64, p: C64, mu: f64, sigma: f64) -> Self {
        ExtBetaParams { v, q, p, mu, sigma }
    }

    pub fn real(v: f64, q: f64, p: f64, mu: f64, sigma: f64) -> Self {
        ExtBetaParams::new(C64::new(v, 0.0), C64::new(q, 0.0), C64::new(p, 0.0), mu, sigma)
    }

    pub fn validate(&self) -> Result<()> {
        const OP: &str = "extended beta";
        if !(self.p.re > 0.0) {
            return Err(Error::domain(OP, "Re(p) > 0 required"));
        }
        if !(self.mu >= 0.0 && self.sigma >= 0.0) {
            return Err(Error::domain(OP, "mu, sigma >= 0 required"));
        }
        if !((self.v + self.q + 0.5).re > 0.0 && (2.0 * self.v + self.q + 1.5).re > 0.0) {
            return Err(Error::domain(
                OP,
                "min{Re(v+q+1/2), Re(2v+q+3/2)} > 0 required",
            ));
        }
        Ok(())
    }

    /// Parameters of the kernel I_{v+1/2}(q; ·).
    pub fn kernel_params(&self) -> BesselParams {
        BesselParams::new(self.v + 0.5, self.q)
    }
}

const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;

/// The kernel √(2/π)·I_{v+1/2}(q; −p/(t^μ (1−t)^σ)) of the extended beta.
#[derive(Debug, Clone)]
pub struct BetaKernel {
    bessel: ExtBessel,
    ln_p: C64,
    mu: f64,
    sigma: f64,
}

impl BetaKernel {
    pub fn new(params: &ExtBetaParams, route: EvalRoute) -> Result<Self> {
        params.validate()?;
        let route = match route {
            // The Γ-pole conditions of the series/1F1 forms coincide with the
            // definition's constraints; the integral route needs Re v > −1.
            EvalRoute::Integral if !(params.v.re > -1.0) => EvalRoute::Hypergeometric,
            r => r,
        };
        Ok(BetaKernel {
            bessel: ExtBessel::new(params.kernel_params(), route)?,
            ln_p: principal_ln(params.p),
            mu: params.mu,
            sigma: params.sigma,
        })
    }

    /// Kernel at `t` (with `tc = 1 − t`), scaled.
    pub fn at(&self, t: f64, tc: f64) -> Result<Scaled> {
        self.at_log(t.ln(), tc.ln())
    }

    fn at_log(&self, ln_t: f64, ln_tc: f64) -> Result<Scaled> {
        let ln_u = self.ln_p - self.mu * ln_t - self.sigma * ln_tc;
        Ok(self.bessel.eval_neg_ln(ln_u)?.mul_value(C64::new(SQRT_2_OVER_PI, 0.0)))
    }

    /// Kernel at an arbitrary argument −u (used by the extended gamma).
    fn at_u(&self, ln_u: C64) -> Result<Scaled> {
        Ok(self.bessel.eval_neg_ln(ln_u)?.mul_value(C64::new(SQRT_2_OVER_PI, 0.0)))
    }
}

fn beta_cfg() -> QuadConfig {
    QuadConfig::relative(1e-12)
}

/// Endpoint exponent of t^x·K where K ~ u^{-q} and u ~ t^{-μ}.
fn endpoint_exponent(x: C64, scale: f64, q: C64) -> f64 {
    if scale > 0.0 {
        (x + scale * q).re
    } else {
        x.re
    }
}

fn check_beta_args(x: C64, y: C64, params: &ExtBetaParams) -> Result<(f64, f64)> {
    let left = (x + params.mu * params.q).re;
    let right = (y + params.sigma * params.q).re;
    if !(left > -1.0) {
        return Err(Error::domain("ext_beta", "Re(x+mu*q) > -1 required"));
    }
    if !(right > -1.0) {
        return Err(Error::domain("ext_beta", "Re(y+sigma*q) > -1 required"));
    }
    Ok((
        endpoint_exponent(x, params.mu, params.q),
        endpoint_exponent(y, params.sigma, params.q),
    ))
}

/// ∫₀¹ t^x (1−t)^y g(t) K(t) dt with the extended-beta kernel.
fn kernel_integral<G>(kernel: &BetaKernel, x: C64, y: C64, exps: (f64, f64), g: G) -> Result<QuadResult>
where
    G: Fn(f64) -> C64,
{
    integrate_unit_try(
        |t, tc| {
            let (lt, ltc) = (t.ln(), tc.ln());
            let k = kernel.at_log(lt, ltc)?;
            let w = Scaled::exp_of(x * lt + y * ltc);
            Ok(k.mul(w).value() * g(t))
        },
        exps.0,
        exps.1,
        &beta_cfg(),
    )
}

/// B_{v,q}^{(μ,σ)}(x, y; p) = √(2/π) ∫₀¹ t^x (1−t)^y I_{v+1/2}(q; −p/(t^μ(1−t)^σ)) dt.
pub fn ext_beta(x: C64, y: C64, params: &ExtBetaParams) -> Result<C64> {
    Ok(ext_beta_quad(x, y, params, EvalRoute::Hypergeometric)?.value)
}

/// [`ext_beta`] with the kernel evaluated by a chosen route, returning the
/// quadrature bookkeeping.
pub fn ext_beta_quad(x: C64, y: C64, params: &ExtBetaParams, kernel_route: EvalRoute) -> Result<QuadResult> {
    let exps = check_beta_args(x, y, params)?;
    let kernel = BetaKernel::new(params, kernel_route)?;
    kernel_integral(&kernel, x, y, exps, |_| C64::new(1.0, 0.0))
}

/// √(2/π) ∫₀¹ t^x (1−t)^y g(t) I_{v+1/2}(q; −p/(t^μ(1−t)^σ)) dt for a
/// caller-supplied weight g.
pub fn ext_beta_weighted<G>(x: C64, y: C64, params: &ExtBetaParams, g: G) -> Result<QuadResult>
where
    G: Fn(f64) -> Result<C64>,
{
    let exps = check_beta_args(x, y, params)?;
    let kernel = BetaKernel::new(params, EvalRoute::Hypergeometric)?;
    integrate_unit_try(
        |t, tc| {
            let w = g(t)?;
            if w.re == 0.0 && w.im == 0.0 {
                return Ok(w);
            }
            let (lt, ltc) = (t.ln(), tc.ln());
            let k = kernel.at_log(lt, ltc)?;
            Ok(k.mul(Scaled::exp_of(x * lt + y * ltc)).value() * w)
        },
        exps.0,
        exps.1,
        &beta_cfg(),
    )
}

/// Memo of B(b+n, y) for n = 0, 1, … at fixed (b, y, params). Call-local.
pub struct ExtBetaSeries {
    kernel: BetaKernel,
    params: ExtBetaParams,
    memo: RefCell<HashMap<(u64, u64, u64, u64, usize), C64>>,
}

impl ExtBetaSeries {
    pub fn new(params: &ExtBetaParams) -> Result<Self> {
        Ok(ExtBetaSeries {
            kernel: BetaKernel::new(params, EvalRoute::Hypergeometric)?,
            params: *params,
            memo: RefCell::new(HashMap::new()),
        })
    }

    /// B_{v,q}^{(μ,σ)}(b+n, y; p).
    pub fn shifted(&self, b: C64, y: C64, n: usize) -> Result<C64> {
        let key = (b.re.to_bits(), b.im.to_bits(), y.re.to_bits(), y.im.to_bits(), n);
        if let Some(v) = self.memo.borrow().get(&key) {
            return Ok(*v);
        }
        let x = b + n as f64;
        let exps = check_beta_args(x, y, &self.params)?;
        let v = kernel_integral(&self.kernel, x, y, exps, |_| C64::new(1.0, 0.0))?.value;
        self.memo.borrow_mut().insert(key, v);
        Ok(v)
    }

    pub fn params(&self) -> &ExtBetaParams {
        &self.params
    }

    /// Σ (a)_n B_{v,q}^{(μ,σ)}(b+n, y; p) zⁿ/n!, i.e. B(b, y)·F(a, b; b+y; z)
    /// without the classical normalisation.
    fn gauss_series_raw(&self, a: C64, b: C64, y: C64, z: C64) -> Result<C64> {
        let mut coef = C64::new(1.0, 0.0);
        let mut failure = None;
        let cfg = SeriesConfig {
            tol: 1e-12,
            max_terms: 2_000,
            floor: 0.0,
        };
        let r = sum_series_with(
            |n| {
                if n > 0 {
                    coef *= (a + (n - 1) as f64) * z / n as f64;
                }
                if coef.re == 0.0 && coef.im == 0.0 {
                    return coef;
                }
                match self.shifted(b, y, n) {
                    Ok(bv) => coef * bv,
                    Err(e) => {
                        failure.get_or_insert(e);
                        C64::new(f64::NAN, 0.0)
                    }
                }
            },
            &cfg,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(r?.value)
    }

    /// B(b, y)·F_{v,q;p}^{(μ,σ)}(a, b; b+y; z). Finite whenever the
    /// extended beta integrals converge, including at poles of B(b, y).
    pub fn gauss_unnormalized(&self, a: C64, b: C64, y: C64, z: C64, route: HypRoute) -> Result<C64> {
        match route {
            HypRoute::Series => {
                if !(z.norm() < 1.0) {
                    return Err(Error::domain("ext_gauss_hyp series", "|z| < 1 required"));
                }
                self.gauss_series_raw(a, b, y, z)
            }
            HypRoute::Integral => {
                if z.im == 0.0 && z.re >= 1.0 {
                    return Err(Error::domain("ext_gauss_hyp integral", "|arg(1-z)| < pi required"));
                }
                let exps = check_beta_args(b, y, &self.params)?;
                let r = kernel_integral(&self.kernel, b, y, exps, |t| {
                    (-a * principal_ln(C64::new(1.0, 0.0) - z * t)).exp()
                })?;
                Ok(r.value)
            }
        }
    }

    /// F_{v,q;p}^{(μ,σ)}(a, b; c; z) with the shared memo.
    pub fn gauss(&self, a: C64, b: C64, c: C64, z: C64, route: HypRoute) -> Result<C64> {
        check_bc(b, c)?;
        let y = c - b;
        let norm = beta(b, y)?;
        Ok(self.gauss_unnormalized(a, b, y, z, route)? / norm)
    }
}

fn check_bc(b: C64, c: C64) -> Result<()> {
    if !(c.re > b.re && b.re > 0.0) {
        return Err(Error::domain("extended hypergeometric", "Re(c) > Re(b) > 0 required"));
    }
    Ok(())
}

/// F_{v,q;p}^{(μ,σ)}(a, b; c; z): series for |z| < 1, integral otherwise.
pub fn ext_gauss_hyp(a: C64, b: C64, c: C64, z: C64, params: &ExtBetaParams) -> Result<C64> {
    let route = if z.norm() < 1.0 { HypRoute::Series } else { HypRoute::Integral };
    ext_gauss_hyp_route(a, b, c, z, params, route)
}

pub fn ext_gauss_hyp_route(
    a: C64,
    b: C64,
    c: C64,
    z: C64,
    params: &ExtBetaParams,
    route: HypRoute,
) -> Result<C64> {
    ExtBetaSeries::new(params)?.gauss(a, b, c, z, route)
}

/// Φ_{v,q;p}^{(μ,σ)}(b; c; z), series by default.
pub fn ext_confluent(b: C64, c: C64, z: C64, params: &ExtBetaParams) -> Result<C64> {
    ext_confluent_route(b, c, z, params, HypRoute::Series)
}

pub fn ext_confluent_route(b: C64, c: C64, z: C64, params: &ExtBetaParams, route: HypRoute) -> Result<C64> {
    check_bc(b, c)?;
    let s = ExtBetaSeries::new(params)?;
    let y = c - b;
    match route {
        HypRoute::Series => {
            let norm = beta(b, y)?;
            let mut coef = C64::new(1.0, 0.0);
            let mut failure = None;
            let cfg = SeriesConfig {
                tol: 1e-12,
                max_terms: 2_000,
                floor: 0.0,
            };
            let r = sum_series_with(
                |n| {
                    if n > 0 {
                        coef *= z / n as f64;
                    }
                    match s.shifted(b, y, n) {
                        Ok(bv) => coef * bv,
                        Err(e) => {
                            failure.get_or_insert(e);
                            C64::new(f64::NAN, 0.0)
                        }
                    }
                },
                &cfg,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            Ok(r?.value / norm)
        }
        HypRoute::Integral => {
            let exps = check_beta_args(b, y, params)?;
            let r = kernel_integral(&s.kernel, b, y, exps, |t| (z * t).exp())?;
            Ok(r.value / beta(b, y)?)
        }
    }
}

/// Γ_p^{v,q}(x) = ∫₀¹ t^{x−1} I_{v+1/2}(q; −(t + p/t)) dt.
pub fn ext_gamma(x: C64, p: C64, v: C64, q: C64) -> Result<C64> {
    const OP: &str = "ext_gamma";
    if !(p.re > 0.0) {
        return Err(Error::domain(OP, "Re(p) > 0 required"));
    }
    if !(x.re > 0.0) {
        return Err(Error::domain(OP, "Re(x) > 0 required"));
    }
    if !((v + q).re > -0.5 && (2.0 * v + q).re > -1.5) {
        return Err(Error::domain(OP, "Re(v+q) > -1/2 and Re(2v+q) > -3/2 required"));
    }
    let kp = ExtBetaParams::new(v, q, p, 1.0, 0.0);
    let kernel = BetaKernel::new(&kp, EvalRoute::Hypergeometric)?;
    let xm = x - 1.0;
    let r = integrate_unit_try(
        |t, _| {
            let lt = t.ln();
            // ln(t + p/t) = ln(t² + p) − ln t
            let ln_u = principal_ln(p + t * t) - lt;
            let k = kernel.at_u(ln_u)?;
            Ok(k.mul(Scaled::exp_of(xm * lt)).value() / SQRT_2_OVER_PI)
        },
        ((x + q).re - 1.0).max(-0.9),
        0.0,
        &beta_cfg(),
    )?;
    Ok(r.value)
}

/// Both sides of Σ_k Γ(k+α)/k! ₁F₁(α+k; β; x) z^k = (1−z)^{−α} Γ(α) ₁F₁(α; β; x/(1−z)).
pub fn kummer_generating_check(alpha: C64, beta_: C64, x: C64, z: C64, k_max: usize) -> Result<(C64, C64)> {
    if !(z.norm() < 1.0) {
        return Err(Error::domain("kummer_generating_check", "|z| < 1 required"));
    }
    let g = gamma(alpha)?;
    let mut lhs = C64::new(0.0, 0.0);
    let mut zk = C64::new(1.0, 0.0);
    let mut fact = 1.0;
    for k in 0..=k_max {
        if k > 0 {
            zk *= z;
            fact *= k as f64;
        }
        // Γ(k+α) = Γ(α)(α)_k
        let coef = g * pochhammer(alpha, k as u32) / fact;
        lhs += coef * kummer_1f1(alpha + k as f64, beta_, x)? * zk;
    }
    let one = C64::new(1.0, 0.0);
    let rhs = (-alpha * principal_ln(one - z)).exp() * g * kummer_1f1(alpha, beta_, x / (one - z))?;
    Ok((lhs, rhs))
}

/// Reference integrand sampling for dense-grid cross-checks: the extended
/// beta integrand at a single t.
pub fn ext_beta_integrand(x: C64, y: C64, params: &ExtBetaParams, t: f64) -> Result<C64> {
    let kernel = BetaKernel::new(params, EvalRoute::Hypergeometric)?;
    let tc = 1.0 - t;
    Ok(kernel.at(t, tc)?.value() * (x * t.ln() + y * tc.ln()).exp())
}
