//! Explicit hyperbolic surface families, an independent closed-geodesic
//! oracle built on holonomy, and the Teichmüller / Thurston / Weil–Petersson
//! distance bounds evaluated on them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything touching files,
//! the command line or text formats lives in the `systolic-atlas` crate.
//!
//! Module map:
//!
//! - [`hyp_trig`]: right triangle, trirectangle, pentagon and hexagon
//!   identities, collar widths and Maskit's extremal length sandwich.
//! - [`pants_graph`]: trivalent trees, pants gluing graphs, combinatorial
//!   curve paths and the separation / coverage criteria.
//! - [`holonomy`]: Fenchel–Nielsen surfaces realised as tilings of the
//!   hyperbolic plane, their holonomy representation and a complete
//!   enumeration of closed geodesics below a length cutoff.
//! - [`surface_models`]: the tree surface, the rotation family `S_g(c, t)`
//!   and the chain surface, plus the solvers for `c1` and `(c2, t2)`.
//! - [`distance_bounds`]: filling, extremal length, twist dilatation and
//!   diameter based distance bounds.
//! - [`wp_bounds`]: Weil–Petersson threshold arithmetic.
#![no_std]
// `!(x > y)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod distance_bounds;
pub mod holonomy;
pub mod hyp_trig;
pub mod math;
pub mod pants_graph;
pub mod solve;
pub mod surface_models;
pub mod wp_bounds;

pub use distance_bounds::{BoundKind, BoundReport};
pub use holonomy::{FnSurface, GeodesicRecord, HolonomyError, HolonomyRep, Mat2, Word};
pub use hyp_trig::{AngleRad, DomainError, HypLength};
pub use pants_graph::{GluingGraph, GraphError, TrivalentTree};
pub use surface_models::{ChainSpec, ModelError, NamedCurve, RotFamilySpec};
pub use wp_bounds::WpConstants;
