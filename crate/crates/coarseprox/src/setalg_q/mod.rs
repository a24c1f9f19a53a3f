//! Exact algebra of subsets of ℚ≥0 built from rational intervals and rational progressions.

pub mod discrete;
pub mod interval;
pub mod qset;
mod upset;

pub use discrete::{
    avoid_offset, intersect, solve_offset, subtract, DiscreteSet, DiscreteView, OffsetLattice,
    RatAP,
};
pub use interval::{Interval, IntervalSet};
pub use qset::{Features, QSet, QSetWire};
