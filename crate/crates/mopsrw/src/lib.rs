//! Hypergeometric multiple orthogonal polynomials on the step-line, their
//! banded Jacobi matrices, the associated Markov chains, and exact
//! verification of the closed-form identities they satisfy.
//!
//! Everything structural (moments, Gauss-Borel factorization, recurrence
//! coefficients, stochastic normalizations, Christoffel transformations,
//! generalized-moment summations) is computed in exact rational arithmetic;
//! floating point appears only in weight evaluation, asymptotic reports and
//! Monte Carlo simulation.

pub mod christoffel;
pub mod emit;
pub mod error;
pub mod gaussborel;
pub mod hyper;
pub mod jacobi;
pub mod kmcg;
pub mod lu;
pub mod matrix;
pub mod pade;
pub mod poly;
pub mod rational;
pub mod sim;
pub mod stochastic;
pub mod tuple;
pub mod uniform;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rational::{fmt_rat, kappa, parse_rat, Rat};
pub use tuple::Tuple;
