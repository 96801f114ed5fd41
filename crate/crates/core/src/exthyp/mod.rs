//! Classical confluent and Gauss hypergeometric functions, and the extended
//! beta, Gauss, confluent and gamma functions whose kernel is I_{v+1/2}(q;·).

mod classical;
mod extended;

pub use classical::{gauss_2f1, gauss_2f1_route, kummer_1f1, kummer_1f1_scaled, HypRoute};
pub use extended::{
    ext_beta, ext_beta_integrand, ext_beta_quad, ext_beta_weighted, ext_confluent, ext_confluent_route, ext_gamma,
    ext_gauss_hyp, ext_gauss_hyp_route, kummer_generating_check, BetaKernel, ExtBetaParams,
    ExtBetaSeries,
};
