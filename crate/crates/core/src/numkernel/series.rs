use super::complex::C64;
use crate::error::{Error, Result};

pub const DEFAULT_SERIES_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub tol: f64,
    pub max_terms: usize,
    /// Lower bound for the scale against which terms are compared; 1 by
    /// default, smaller for sums that are legitimately tiny.
    pub floor: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            tol: DEFAULT_SERIES_TOL,
            max_terms: 10_000,
            floor: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: C64,
    pub terms_used: usize,
    pub last_term_magnitude: f64,
    pub converged: bool,
}

/// Σ_{n≥0} term(n), stopping after three consecutive terms below
/// `tol·max(1, |partial sum|)`.
pub fn sum_series<F>(term: F, tol: f64, max_terms: usize) -> Result<SeriesResult>
where
    F: FnMut(usize) -> C64,
{
    sum_series_with(
        term,
        &SeriesConfig {
            tol,
            max_terms,
            ..Default::default()
        },
    )
}

pub fn sum_series_with<F>(mut term: F, cfg: &SeriesConfig) -> Result<SeriesResult>
where
    F: FnMut(usize) -> C64,
{
    // Neumaier summation, componentwise.
    let (mut s_re, mut c_re) = (0.0f64, 0.0f64);
    let (mut s_im, mut c_im) = (0.0f64, 0.0f64);
    let mut small = 0;
    let mut last = f64::INFINITY;
    for n in 0..cfg.max_terms {
        let t = term(n);
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::domain("sum_series", format!("term {n} is not finite")));
        }
        neumaier(&mut s_re, &mut c_re, t.re);
        neumaier(&mut s_im, &mut c_im, t.im);
        last = t.norm();
        let total = C64::new(s_re + c_re, s_im + c_im);
        if last <= cfg.tol * total.norm().max(cfg.floor) {
            small += 1;
            if small == 3 {
                return Ok(SeriesResult {
                    value: total,
                    terms_used: n + 1,
                    last_term_magnitude: last,
                    converged: true,
                });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence {
        operation: "sum_series",
        evals: cfg.max_terms,
        abs_err: last,
    })
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}
