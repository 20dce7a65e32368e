//! Constrained min-max optimization over probability simplices.
//!
//! The crate implements the Optimistic Multiplicative Weights Update (OMWU)
//! dynamics for convex-concave games on simplex domains, together with
//! projected OGDA and plain MWU baselines, an equilibrium/KKT toolkit, and a
//! spectral stability analyzer that assembles the Jacobian of the lifted OMWU
//! map at a fixed point and certifies local contraction.
//!
//! Modules:
//! - [`games`]: payoff-oracle abstraction and the built-in game families.
//! - [`dynamics`]: steppers, trajectory execution and convergence metrics.
//! - [`equilibrium`]: KKT certification, exact bilinear equilibria via LP,
//!   duality gaps.
//! - [`spectral`]: Jacobian assembly, spectrum reductions, contraction
//!   verdicts.
//! - [`harness`]: experiment campaigns, CSV/SVG outputs, CLI plumbing.

pub mod dynamics;
pub mod equilibrium;
pub mod fdiff;
pub mod games;
pub mod harness;
pub mod linalg;
pub mod spectral;

pub use games::{GameOracle, SimplexPoint};
