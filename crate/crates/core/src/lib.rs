//! Supersymmetric hierarchy of the infinite square well.
//!
//! The potentials `V_S(x) = E0 * S(S+1) / sin^2(pi x / a)` on `(0, a)` are the
//! repeated superpartners of the infinite square well. This crate provides:
//!
//! * [`specfun`]: orthogonal polynomials, log-gamma and Airy functions;
//! * [`sisw`]: closed-form energies and eigenfunctions of the hierarchy, plus
//!   the trigonometric Poschl-Teller parameterization that contains it;
//! * [`susy_engine`]: ladder operators and a grid-based partner-potential
//!   engine that builds hierarchies for arbitrary seed potentials;
//! * [`verify`]: independent numerical oracles (quadrature, Numerov shooting,
//!   residuals, expectation values, virial theorem);
//! * [`momentum`]: momentum-space wavefunctions and large-`p` tail fits.
//!
//! Numerical sweeps fan out with rayon when the `parallel` feature is enabled
//! (the default); see [`par::Execution`].

pub mod error;
pub mod fit;
pub mod momentum;
pub mod par;
pub mod sisw;
pub mod specfun;
pub mod susy_engine;
pub mod verify;

pub use error::{Error, Result};
pub use sisw::{StateIndex, WellConfig};
