//! Second-order Riccati equations as Lie systems.
//!
//! The crate maps a second-order Riccati equation to a Hamiltonian system on
//! the half-plane `p < 0` through the Legendre transform of the Lagrangian
//! `L = 1/(v + U(t, x))`, and works with that system's Lie-algebraic
//! structure: five vector fields closing on a Lie algebra, a group action
//! whose fundamental fields span it, three first integrals on four copies
//! of phase space, and the superposition rule that rebuilds the general
//! solution from three particular ones and two constants.
//!
//! - [`timefn`]: time-dependent coefficients with exact derivatives.
//! - [`model`]: the potential, the Riccati coefficients, Legendre maps, both right-hand sides.
//! - [`integrator`]: adaptive Dormand-Prince integration and dense sampling.
//! - [`liealg`]: the vector fields, their brackets and the group action.
//! - [`superpose`]: first integrals and the superposition rule.
//! - [`sampling`]: seeded random potentials and phase points.
//! - [`cli`]: config files, CSV tables and the `riccati-lie` commands.

pub mod cli;
pub mod error;
pub mod integrator;
pub mod liealg;
pub mod model;
pub mod sampling;
pub mod superpose;
pub mod timefn;

pub use error::{Error, ErrorClass, Result};
pub use model::{LagrangianPoint, PhasePoint, PotentialSpec, RiccatiSpec};
pub use timefn::{TimeExpr, TimeFn};
