//! Double-exponential (tanh-sinh) quadrature on (0,1) and (0,∞).
//!
//! Integrands receive `(t, 1 - t)` with the smaller of the two computed
//! directly from the node map, so factors like `(1-t)^b` keep full relative
//! accuracy next to the right endpoint. No node lies on an endpoint.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::complex::{Scaled, C64};
use crate::error::{Error, Result};

pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_EVALS: usize = 200_000;

const MAX_LEVEL: usize = 12;
const MIN_LEVEL: usize = 3;
const S_MAX: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: DEFAULT_QUAD_TOL,
            rel_tol: 1e-12,
            max_evals: DEFAULT_MAX_EVALS,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Self {
        QuadConfig {
            abs_tol: tol,
            ..Default::default()
        }
    }

    /// Relative accuracy target, for callers whose result scale is unknown.
    pub fn relative(rel_tol: f64) -> Self {
        QuadConfig {
            abs_tol: 0.0,
            rel_tol,
            max_evals: DEFAULT_MAX_EVALS,
        }
    }

    fn tolerance(&self, value: f64, l1: f64) -> f64 {
        self.abs_tol
            .max(self.rel_tol * value)
            .max(64.0 * f64::EPSILON * l1)
    }
}

/// Result of a numeric integration.
///
/// `abs_err` is the difference between the last two refinement levels; the
/// true error of the final level is typically far smaller.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    pub abs_err: f64,
    pub evals: usize,
    pub converged: bool,
}

impl QuadResult {
    fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            abs_err: self.abs_err + other.abs_err,
            evals: self.evals + other.evals,
            converged: self.converged && other.converged,
        }
    }
}

#[derive(Clone, Copy)]
struct Node {
    d: f64,
    w: f64,
    center: bool,
}

fn node(s: f64) -> Node {
    let u = 0.5 * PI * s.sinh();
    let e = (-2.0 * u).exp();
    let d = e / (1.0 + e);
    let w = PI * s.cosh() * e / ((1.0 + e) * (1.0 + e));
    Node {
        d,
        w,
        center: s == 0.0,
    }
}

fn tables() -> &'static [Vec<Node>] {
    static TABLES: OnceLock<Vec<Vec<Node>>> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut levels = Vec::with_capacity(MAX_LEVEL + 1);
        levels.push((0..=S_MAX as usize).map(|j| node(j as f64)).collect());
        for k in 1..=MAX_LEVEL {
            let h = 0.5f64.powi(k as i32);
            let mut v = Vec::new();
            let mut j = 1usize;
            loop {
                let s = j as f64 * h;
                if s > S_MAX {
                    break;
                }
                v.push(node(s));
                j += 2;
            }
            levels.push(v);
        }
        levels
    })
}

fn tanh_sinh<F>(f: &mut F, cfg: &QuadConfig, op: &'static str) -> Result<QuadResult>
where
    F: FnMut(f64, f64) -> C64,
{
    let mut sum = C64::new(0.0, 0.0);
    let mut l1 = 0.0;
    let mut evals = 0usize;
    let mut prev: Option<C64> = None;
    let mut err = f64::INFINITY;
    for (k, level) in tables().iter().enumerate() {
        let cost: usize = level.iter().map(|n| if n.center { 1 } else { 2 }).sum();
        if evals + cost > cfg.max_evals {
            break;
        }
        for n in level {
            let pts: &[(f64, f64)] = if n.center {
                &[(0.5, 0.5)]
            } else {
                &[(n.d, 1.0 - n.d), (1.0 - n.d, n.d)]
            };
            for &(t, tc) in pts {
                let y = f(t, tc);
                if !(y.re.is_finite() && y.im.is_finite()) {
                    return Err(Error::domain(op, format!("integrand is not finite at t = {t:e}")));
                }
                sum += y * n.w;
                l1 += y.norm() * n.w;
            }
        }
        evals += cost;
        let h = 0.5f64.powi(k as i32);
        let est = sum * h;
        if let Some(p) = prev {
            err = (est - p).norm();
        }
        if k >= MIN_LEVEL && err <= cfg.tolerance(est.norm(), l1 * h) {
            return Ok(QuadResult {
                value: est,
                abs_err: err,
                evals,
                converged: true,
            });
        }
        prev = Some(est);
    }
    Err(Error::NoConvergence {
        operation: op,
        evals,
        abs_err: err,
    })
}

fn check_exponent(e: f64, side: &str) -> Result<()> {
    if !(e > -1.0) {
        return Err(Error::domain(
            "integrate_unit",
            format!("{side} endpoint exponent must exceed -1 (got {e})"),
        ));
    }
    Ok(())
}

/// ∫₀^{1/2} f, with the substitution t = u^k/2 (k = 1/(e+1)) when the
/// declared endpoint exponent `e` is negative.
fn half<F>(f: &F, e: f64, mirrored: bool, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> C64,
{
    let k = if e < 0.0 { 1.0 / (e + 1.0) } else { 1.0 };
    // Below this u the mapped integrand is flat (that is what the substitution
    // buys), but t itself would leave the normal f64 range: extrapolate.
    let u_floor = if k == 1.0 { 0.0 } else { (2e-290f64).powf(1.0 / k) };
    let mut g = |u: f64, _uc: f64| -> C64 {
        let u = u.max(u_floor);
        let near = 0.5 * if k == 1.0 { u } else { u.powf(k) };
        let jac = if k == 1.0 { 0.5 } else { 0.5 * k * u.powf(k - 1.0) };
        let far = 1.0 - near;
        let y = if mirrored { f(far, near) } else { f(near, far) };
        y * jac
    };
    tanh_sinh(&mut g, cfg, "integrate_unit")
}

/// ∫₀¹ f(t) dt where `f` is called as `f(t, 1-t)` and behaves like
/// `t^left_exponent` at 0 and `(1-t)^right_exponent` at 1.
pub fn integrate_unit<F>(f: F, left_exponent: f64, right_exponent: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> C64,
{
    integrate_unit_with(f, left_exponent, right_exponent, &QuadConfig::with_tol(tol))
}

pub fn integrate_unit_with<F>(
    f: F,
    left_exponent: f64,
    right_exponent: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> C64,
{
    check_exponent(left_exponent, "left")?;
    check_exponent(right_exponent, "right")?;
    let sub = QuadConfig {
        abs_tol: 0.5 * cfg.abs_tol,
        rel_tol: cfg.rel_tol,
        max_evals: cfg.max_evals / 2,
    };
    let l = half(&f, left_exponent, false, &sub)?;
    let r = half(&f, right_exponent, true, &sub)?;
    Ok(l.combine(r))
}

/// [`integrate_unit_with`] for integrands that can fail; the first error
/// raised by `f` is returned as is.
pub fn integrate_unit_try<F>(
    f: F,
    left_exponent: f64,
    right_exponent: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> Result<C64>,
{
    let failure: std::cell::RefCell<Option<Error>> = std::cell::RefCell::new(None);
    let g = |t: f64, tc: f64| match f(t, tc) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            C64::new(f64::NAN, 0.0)
        }
    };
    let r = integrate_unit_with(g, left_exponent, right_exponent, cfg);
    match failure.into_inner() {
        Some(e) => Err(e),
        None => r,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalflineConfig {
    pub quad: QuadConfig,
    /// Split point between the direct head and the inverted tail.
    pub scale: f64,
    /// Power behaviour of the integrand at 0.
    pub left_exponent: f64,
}

impl Default for HalflineConfig {
    fn default() -> Self {
        HalflineConfig {
            quad: QuadConfig::default(),
            scale: 1.0,
            left_exponent: 0.0,
        }
    }
}

/// ∫₀^∞ f(x) dx.
pub fn integrate_halfline<F>(f: F, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> C64,
{
    integrate_halfline_with(
        f,
        &HalflineConfig {
            quad: QuadConfig::with_tol(tol),
            ..Default::default()
        },
    )
}

pub fn integrate_halfline_with<F>(f: F, cfg: &HalflineConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> C64,
{
    let a = cfg.scale;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain("integrate_halfline", "scale must be positive"));
    }
    const OP: &str = "integrate_halfline";
    // Probe x·f(x) far out: a non-decaying profile means the tail diverges.
    let mut last = 0.0;
    let mut growing = true;
    for j in 1..=3 {
        let x = a * 2f64.powi(10 * j);
        let y = f(x);
        if !(y.re.is_finite() && y.im.is_finite()) {
            return Err(Error::DivergenceSuspected { operation: OP });
        }
        let m = y.norm() * x;
        if m == 0.0 || m < last {
            growing = false;
        }
        last = m;
    }
    if growing {
        return Err(Error::DivergenceSuspected { operation: OP });
    }
    let sub = QuadConfig {
        abs_tol: 0.5 * cfg.quad.abs_tol,
        ..cfg.quad
    };
    let head = integrate_unit_with(|t, _| f(a * t) * a, cfg.left_exponent, 0.0, &sub)
        .map_err(|e| relabel(e, OP))?;
    let tail = integrate_unit_with(
        |u, _| {
            let x = a / u;
            let y = f(x);
            if y.re == 0.0 && y.im == 0.0 {
                return y;
            }
            y * x * (1.0 / u)
        },
        0.0,
        0.0,
        &sub,
    )
    .map_err(|e| match e {
        Error::Domain { .. } => Error::DivergenceSuspected { operation: OP },
        other => relabel(other, OP),
    })?;
    Ok(head.combine(tail))
}

fn relabel(e: Error, op: &'static str) -> Error {
    match e {
        Error::NoConvergence { evals, abs_err, .. } => Error::NoConvergence {
            operation: op,
            evals,
            abs_err,
        },
        Error::Domain { condition, .. } => Error::Domain {
            operation: op,
            condition,
        },
        other => other,
    }
}

/// Output of [`integrate_beta_exp`]: the value in scaled form plus the
/// quadrature bookkeeping (`abs_err` is relative to the unscaled value).
#[derive(Debug, Clone, Copy)]
pub struct BetaExp {
    pub value: Scaled,
    pub rel_err: f64,
    pub evals: usize,
}

/// ∫₀¹ t^{a-1} (1-t)^{b-1} e^{w t} dt for Re a, Re b > 0.
///
/// Large |Re w| is handled by reflecting to Re w ≤ 0 and cutting the
/// interval where the exponential has decayed below double precision.
pub fn integrate_beta_exp(a: C64, b: C64, w: C64, cfg: &QuadConfig) -> Result<BetaExp> {
    if !(a.re > 0.0 && b.re > 0.0) {
        return Err(Error::domain(
            "integrate_beta_exp",
            "both beta exponents need positive real part",
        ));
    }
    if w.re > 0.0 {
        let r = integrate_beta_exp(b, a, -w, cfg)?;
        return Ok(BetaExp {
            value: r.value.mul(Scaled::exp_of(w)),
            ..r
        });
    }
    let am = a - 1.0;
    let bm = b - 1.0;
    let lam = -w.re;
    let width = a.norm() + 40.0 + 6.0 * a.norm().sqrt();
    if lam <= width {
        let f = |t: f64, tc: f64| (am * t.ln() + bm * tc.ln() + w * t).exp();
        let r = integrate_unit_with(f, am.re, bm.re, cfg)?;
        let mag = r.value.norm();
        return Ok(BetaExp {
            value: Scaled::from_value(r.value),
            rel_err: if mag > 0.0 { r.abs_err / mag } else { r.abs_err },
            evals: r.evals,
        });
    }
    // Head on (0, T) carries everything visible in double precision.
    let cut = width / lam;
    let ln_cut = cut.ln();
    let head = integrate_unit_with(
        |u: f64, _| {
            let tc = 1.0 - cut * u;
            (am * u.ln() + bm * tc.ln() + w * cut * u).exp()
        },
        am.re,
        0.0,
        cfg,
    )?;
    let head_mag = head.value.norm();
    let tail_cfg = QuadConfig {
        abs_tol: cfg.rel_tol.max(1e-16) * head_mag,
        rel_tol: cfg.rel_tol,
        max_evals: cfg.max_evals,
    };
    // Tail on (T, 1), factored relative to the head's exp(a ln T).
    let tail = integrate_unit_with(
        |u: f64, uc: f64| {
            let t = cut + (1.0 - cut) * u;
            let tc = (1.0 - cut) * uc;
            (am * (t.ln() - ln_cut) + bm * tc.ln() + w * (t - cut) + w * cut).exp() * ((1.0 - cut) / cut)
        },
        0.0,
        bm.re,
        &tail_cfg,
    )?;
    let sum = head.value + tail.value;
    let scale = Scaled::exp_of(a * ln_cut);
    let mag = sum.norm();
    Ok(BetaExp {
        value: scale.mul_value(sum),
        rel_err: if mag > 0.0 {
            (head.abs_err + tail.abs_err) / mag
        } else {
            head.abs_err + tail.abs_err
        },
        evals: head.evals + tail.evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn unit_examples() {
        let r = integrate_unit(|t, tc| c(1.0 / (t * tc).sqrt()), -0.5, -0.5, 1e-10).unwrap();
        assert!((r.value.re - PI).abs() < 1e-10, "{}", r.value);
        let r = integrate_unit(|t, _| c(t.exp()), 0.0, 0.0, 1e-10).unwrap();
        assert!((r.value.re - (1f64.exp() - 1.0)).abs() < 1e-12);
        let r = integrate_unit(|t, tc| c((t * tc).sqrt()), 0.5, 0.5, 1e-10).unwrap();
        assert!((r.value.re - PI / 8.0).abs() < 1e-12);
        assert!(r.converged && r.evals > 0 && r.evals <= DEFAULT_MAX_EVALS);
    }

    #[test]
    fn strong_endpoint_singularity() {
        // ∫ t^{-0.97} dt = 1/0.03
        let r = integrate_unit(|t, _| c(t.powf(-0.97)), -0.97, 0.0, 1e-10).unwrap();
        assert!((r.value.re - 1.0 / 0.03).abs() < 1e-9 * 33.0, "{}", r.value);
    }

    #[test]
    fn bad_exponent_is_domain_error() {
        let r = integrate_unit(|_, _| c(1.0), -1.0, 0.0, 1e-10);
        assert!(matches!(r, Err(Error::Domain { .. })));
    }

    #[test]
    fn budget_exhaustion_reports_no_convergence() {
        let cfg = QuadConfig {
            abs_tol: 1e-300,
            rel_tol: 0.0,
            max_evals: 400,
        };
        let r = integrate_unit_with(|t, _| c((40.0 * t).sin()), 0.0, 0.0, &cfg);
        assert!(matches!(r, Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn halfline_examples() {
        let r = integrate_halfline(|x| c((-x).exp()), 1e-10).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-10);
        let r = integrate_halfline(|x| c(x * (-x).exp()), 1e-10).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-10);
        let r = integrate_halfline(|x| c(x.sqrt() * (-x).exp()), 1e-10).unwrap();
        assert!((r.value.re - PI.sqrt() / 2.0).abs() < 1e-10);
        let r = integrate_halfline(|x| c(1.0 / (1.0 + x * x)), 1e-10).unwrap();
        assert!((r.value.re - PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn halfline_divergence() {
        let r = integrate_halfline(|x| c(1.0 / (1.0 + x)), 1e-10);
        assert!(matches!(r, Err(Error::DivergenceSuspected { .. })));
        let r = integrate_halfline(|x| c(x.exp()), 1e-10);
        assert!(matches!(r, Err(Error::DivergenceSuspected { .. })));
    }

    #[test]
    fn beta_exp_regimes() {
        let cfg = QuadConfig::relative(1e-13);
        // w = 0: plain beta B(2, 3) = 1/12
        let r = integrate_beta_exp(c(2.0), c(3.0), c(0.0), &cfg).unwrap();
        assert!((r.value.value().re - 1.0 / 12.0).abs() < 1e-15);
        // a = b = 1: (e^w - 1)/w, both signs and large |w|
        for w in [-3.0, 5.0, -2000.0, 600.0] {
            let r = integrate_beta_exp(c(1.0), c(1.0), c(w), &cfg).unwrap();
            let want_ln = if w > 0.0 {
                w + (-(-w).exp_m1()).ln() - w.ln()
            } else {
                (-(w.exp_m1())).ln() - (-w).ln()
            };
            assert!((r.value.ln_abs() - want_ln).abs() < 1e-12, "w={w}");
        }
        // a = 3, b = 1, w = -1e4: ≈ Γ(3)/1e12
        let r = integrate_beta_exp(c(3.0), c(1.0), c(-1e4), &cfg).unwrap();
        assert!((r.value.value().re * 1e12 - 2.0).abs() < 1e-11);
    }
}
