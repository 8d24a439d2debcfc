//! Fractional integrals and derivatives of order `0 < n < 1`, solvers for
//! Abel's integral equation, and the tautochrone construction built on them.
//!
//! The modules stack bottom-up: [`special`] (gamma and beta), [`quadrature`]
//! (weakly singular integrals), [`fracops`] (Riemann–Liouville integral and
//! Caputo derivative), [`abel`] (forward map and solvers) and
//! [`tautochrone`] (curve reconstruction and descent simulation).

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod abel;
pub mod error;
pub mod fracops;
pub mod order;
pub mod quadrature;
pub mod special;
pub mod tautochrone;

pub use abel::{AbelProblem, ArcLengthSolution, Backend};
pub use error::{Error, Result};
pub use fracops::{FunctionSpec, PiecewisePowerSum, PowerSum, Segment};
pub use order::Order;
pub use quadrature::{QuadratureConfig, TabulatedFunction};
pub use special::PositiveReal;
pub use tautochrone::{CurveSamples, DescentResult};
