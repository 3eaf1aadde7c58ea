//! Locally correct Fréchet matchings between polygonal curves.
//!
//! A Fréchet matching pairs up the points of two curves monotonically while
//! realizing the minimum possible maximum matched distance. Many matchings
//! achieve that optimum, and some of them are visibly bad away from the
//! bottleneck. This crate computes *locally correct* matchings — matchings
//! that restrict to an optimal matching on every matched subcurve pair — in
//! both the continuous and the discrete (vertex-to-vertex) setting:
//!
//! - [`compute_lcfm`] builds a continuous matching by recursively splitting
//!   the free-space diagram at a realizing critical event,
//! - [`compute_discrete_lcfm`] builds a discrete matching in O(mn) with an
//!   incremental tree over the distance grid,
//! - [`frechet_distance`] / [`discrete_frechet`] compute the distances
//!   themselves,
//! - [`verify_lc_continuous`] / [`verify_lc_discrete`] are independent
//!   brute-force verifiers that certify local correctness on small
//!   instances.
//!
//! All geometry is generic over the scalar type through [`Scalar`]
//! (`f32` or `f64`); the `…2d` aliases fix `f64` for everyday use.

use std::fmt::{Debug, Display};

use num_traits::Float;

pub mod continuous;
pub mod curve;
pub mod discrete;
mod error;
pub mod events;
pub mod freespace;
pub mod oracles;

pub use continuous::{
    compute_lcfm, find_realizing_event, frechet_candidate_values, frechet_distance,
    matching_max_distance, min_connecting_value, split_at_event, ParamMatching, SplitParts,
};
pub use curve::{Curve, ParamPoint, Point2, Segment2};
pub use discrete::{
    build_grid, compute_discrete_lcfm, discrete_frechet, discrete_lcfm_path, FaceSide, GridNode,
    MatchGrid, MatchTree, NodeStatus, ParentPreference, PathMax, Shortcut,
};
pub use error::Error;
pub use events::{
    candidate_events, dedup_same_boundary, enumerate_events, type_b_value, type_c_value,
    BoundaryPos, CriticalEvent, EventKind, Orientation, Side,
};
pub use freespace::{decide_connected, decide_standard, free_interval, Interval, ReachabilityState};
pub use oracles::{
    bottleneck_path_value, enumerate_monotone_paths, verify_lc_continuous, verify_lc_discrete,
    VerificationReport,
};

/// Scalar coordinate type: `f32` or `f64`.
pub trait Scalar: Float + Debug + Display + 'static {}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Double-precision aliases for the common case.
pub type Point2d = Point2<f64>;
pub type Segment2d = Segment2<f64>;
pub type Curve2d = Curve<f64>;
pub type ParamPoint2d = ParamPoint<f64>;
pub type ParamMatching2d = ParamMatching<f64>;
pub type CriticalEvent2d = CriticalEvent<f64>;
pub type Interval2d = Interval<f64>;
pub type MatchGrid2d = MatchGrid<f64>;
