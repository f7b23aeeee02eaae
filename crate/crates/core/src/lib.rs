//! Exact polyhedral computation for fiber polytopes and toric degenerations.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`]: rationals, exact linear algebra, integer lattices.
//! * [`lp`] and [`dd`]: an exact simplex solver and the double description
//!   method over integer cones.
//! * [`polytope`]: dual-description polytopes, faces, volumes, lattice points.
//! * [`fan`]: rational polyhedral cones, normal fans and common refinements.
//! * [`fiber`]: projections, chamber complexes, fiber polytopes.
//! * [`flag`]: hypersimplices, Gelfand-Tsetlin polytopes, type A root data and
//!   the representation-theoretic counting oracles.

pub mod budget;
pub mod dd;
pub mod error;
pub mod exact;
pub mod fan;
pub mod fiber;
pub mod flag;
pub mod lp;
pub mod polytope;

pub use budget::Budget;
pub use error::{Error, Result};
pub use exact::{AffineLattice, QMatrix, QVector, Rational};
pub use fan::{Cone, FVector, Fan};
pub use fiber::{ChamberComplex, FiberPolytopeResult, Projection};
pub use polytope::{Face, HPolytope, Polytope, VPolytope};
