//! Special-function kernel: orthogonal polynomials by three-term recurrence,
//! log-gamma and the Airy function `Ai`.
//!
//! Everything here is a pure function of its arguments.

mod airy;
mod gamma;
mod poly;

pub use airy::{airy_ai, airy_ai_prime, airy_ai_zero, AIRY_MAX_ARG};
pub use gamma::{ln_beta, log_gamma};
pub use poly::{
    chebyshev_u, eval_poly, eval_poly_with, gegenbauer, gegenbauer_derivative,
    gegenbauer_from_jacobi, hermite, jacobi, DomainMode, PolyFamily, PolyKind, MAX_DEGREE,
};
