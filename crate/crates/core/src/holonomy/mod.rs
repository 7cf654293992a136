//! Fenchel–Nielsen surfaces as tilings of the hyperbolic plane.
//!
//! [`FnSurface`] cuts every piece of a [`GluingGraph`](crate::GluingGraph)
//! into two right-angled polygons and records how polygon sides are glued,
//! twists included. [`HolonomyRep`] develops one copy of each polygon into
//! the upper half plane and reads off the deck transformations; lengths of
//! closed geodesics are `2 arccosh(|tr|/2)` of their holonomy.
//!
//! [`enumerate_geodesics`] is a complete search: it develops the tiling far
//! enough that every closed geodesic below the cutoff has a lift through a
//! fixed disk, then merges lifts of the same geodesic. It does not rely on
//! word lengths, so it cannot miss a class through a bad pruning bound.

mod enumerate;
mod mat2;
mod rep;
mod surface;
mod word;

use alloc::string::String;
use core::fmt;

pub use enumerate::{enumerate_geodesics, systole_bruteforce, GeodesicRecord, DEFAULT_BUDGET};
pub use mat2::{barycenter, from_hyperboloid, to_hyperboloid, uhp_distance, Mat2};
pub use rep::{geodesic_length, HolonomyRep};
pub use surface::{FnSurface, MarkedPath, SideKind, Step, Tile, TileCrossing};
pub use word::Word;

#[derive(Clone, Debug, PartialEq)]
pub enum HolonomyError {
    /// The pieces cannot be realised with the given cuffs, or the developed
    /// polygons do not fit together.
    Construction(String),
    /// The word is trivial after free reduction.
    TrivialWord,
    /// Elliptic or parabolic holonomy; never happens on a closed surface.
    NotHyperbolic {
        trace: f64,
    },
    BadWord(String),
    UnknownGenerator(usize),
    UnknownEdge(usize),
    BadPath(String),
    InvalidCutoff(f64),
    /// More polygons were needed than the budget allows.
    Budget {
        polygons: usize,
    },
    /// Nothing at or below the cutoff.
    NoGeodesic(f64),
}

impl fmt::Display for HolonomyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Construction(msg) => write!(f, "construction failed: {msg}"),
            Self::TrivialWord => write!(f, "word is trivial"),
            Self::NotHyperbolic { trace } => write!(f, "holonomy is not hyperbolic (trace {trace})"),
            Self::BadWord(tok) => write!(f, "cannot parse word letter {tok:?}"),
            Self::UnknownGenerator(k) => write!(f, "generator {k} does not exist"),
            Self::UnknownEdge(e) => write!(f, "edge {e} does not exist"),
            Self::BadPath(msg) => write!(f, "bad marked path: {msg}"),
            Self::InvalidCutoff(c) => write!(f, "invalid cutoff {c}"),
            Self::Budget { polygons } => write!(f, "enumeration budget exceeded after {polygons} polygons"),
            Self::NoGeodesic(c) => write!(f, "no closed geodesic of length at most {c}"),
        }
    }
}

impl core::error::Error for HolonomyError {}
