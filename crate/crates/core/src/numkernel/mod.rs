//! Scalar foundation: complex helpers, gamma family, quadrature and series
//! summation shared by every other module.

mod complex;
mod gamma;
mod quad;
mod series;

pub use complex::{cis, cpow, is_nonpositive_integer, principal_ln, Scaled, C64};
pub use gamma::{beta, gamma, log_gamma, lower_incomplete_gamma, pochhammer, rgamma};
pub use gamma::format_c;
pub use quad::{
    integrate_halfline, integrate_halfline_with, integrate_unit, integrate_unit_try,
    integrate_unit_with,
    integrate_beta_exp, BetaExp, HalflineConfig, QuadConfig, QuadResult, DEFAULT_MAX_EVALS,
    DEFAULT_QUAD_TOL,
};
pub use series::{sum_series, sum_series_with, SeriesConfig, SeriesResult, DEFAULT_SERIES_TOL};
