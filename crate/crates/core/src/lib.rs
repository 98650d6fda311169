//! Exact tropical enumerative invariants of toric surfaces.
//!
//! Counts of plane tropical curves through points in Mikhalkin position:
//! complex counts, refined counts in `y`, signed real counts with conjugate
//! pairs of points, and relative refined counts with boundary tangency.

pub mod conditions;
pub mod engines;
pub mod error;
pub mod floordiag;
pub mod invariants;
pub mod lattice;
pub mod qpoly;
pub mod tropcurve;

pub use error::{Error, Result};
