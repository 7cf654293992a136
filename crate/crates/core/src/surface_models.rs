//! The tree surface, the rotation family `S_g(c, t)` and the chain surface,
//! together with the solvers for `c1` and `(c2, t2)`.
//!
//! # Marking of `S_g(c, t)`
//!
//! `S_g(c, t)` is two `(g+1)`-holed spheres `A` (piece 0) and `B` (piece 1).
//! Slot `k` of `A` is glued to slot `-k mod (g+1)` of `B`, every cuff has
//! length `c` and twist `t`. With this choice, seam `k` of `A` and seam
//! `-k-1` of `B` close up into the curve `α` through cuffs `k` and `k+1`
//! when `t = 0`. Curves are indexed from 1 as in `α_1, …, α_{g+1}`:
//!
//! - `γ_k` is cuff `k-1` of `A`;
//! - `α_k` leaves `A` through cuff `k` and returns through cuff `k-1`,
//!   following the seams and the twist;
//! - `β_k` is `α_k` with one extra turn around cuff `k` (the image of `α_k`
//!   under a Dehn twist along `γ_{k+1}`), turned against the twist so that
//!   its length drops as `t` grows from 0.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::holonomy::{geodesic_length, FnSurface, HolonomyError, HolonomyRep, MarkedPath, Step};
use crate::hyp_trig::{self, HypLength};
use crate::math;
use crate::pants_graph::{CuffEdge, GluingGraph, GraphError, Slot};
use crate::solve::{self, SolveError};

/// Cuff length of the chain pieces, taken from the literature.
pub const CHAIN_CUFF_DEFAULT: f64 = 6.980;

/// Generic crossing point on an arc; keeps paths away from polygon corners.
const FRAC: f64 = 0.381_966;

#[derive(Clone, Debug, PartialEq)]
pub enum ModelError {
    GenusTooSmall { g: usize, min: usize },
    InvalidParameter(&'static str, f64),
    IndexOutOfRange(usize),
    Graph(GraphError),
    Holonomy(HolonomyError),
    Solve(SolveError),
    Residual(f64),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GenusTooSmall { g, min } => write!(f, "genus {g} is below the minimum {min}"),
            Self::InvalidParameter(name, v) => write!(f, "invalid {name}: {v}"),
            Self::IndexOutOfRange(k) => write!(f, "curve index {k} out of range"),
            Self::Graph(e) => write!(f, "{e}"),
            Self::Holonomy(e) => write!(f, "{e}"),
            Self::Solve(e) => write!(f, "{e}"),
            Self::Residual(r) => write!(f, "solver residual {r:e} too large"),
        }
    }
}

impl core::error::Error for ModelError {}

impl From<GraphError> for ModelError {
    fn from(e: GraphError) -> Self {
        Self::Graph(e)
    }
}

impl From<HolonomyError> for ModelError {
    fn from(e: HolonomyError) -> Self {
        Self::Holonomy(e)
    }
}

impl From<SolveError> for ModelError {
    fn from(e: SolveError) -> Self {
        Self::Solve(e)
    }
}

/// A point `S_g(c, t)` of the rotation family.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RotFamilySpec {
    pub g: usize,
    pub c: f64,
    pub t: f64,
}

impl RotFamilySpec {
    pub fn new(g: usize, c: f64, t: f64) -> Result<Self, ModelError> {
        if g < 2 {
            return Err(ModelError::GenusTooSmall { g, min: 2 });
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(ModelError::InvalidParameter("cuff length", c));
        }
        if !(t >= 0.0 && t <= c / 2.0) {
            return Err(ModelError::InvalidParameter("twist", t));
        }
        Ok(Self { g, c, t })
    }

    pub fn graph(&self) -> Result<GluingGraph, ModelError> {
        rot_family_graph(self.g, self.c, self.t)
    }

    pub fn representation(&self) -> Result<HolonomyRep, ModelError> {
        Ok(HolonomyRep::new(&self.graph()?)?)
    }
}

/// Gluing graph of `S_g(c, t)` without range checks on `t`.
pub fn rot_family_graph(g: usize, c: f64, t: f64) -> Result<GluingGraph, ModelError> {
    if g < 2 {
        return Err(ModelError::GenusTooSmall { g, min: 2 });
    }
    let n = g + 1;
    let edges = (0..n)
        .map(|k| CuffEdge {
            a: Slot { piece: 0, slot: k },
            b: Slot { piece: 1, slot: (n - k) % n },
            length: c,
            twist: t,
        })
        .collect();
    Ok(GluingGraph::new(vec![n, n], edges, BTreeSet::new(), None)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CurveFamily {
    Alpha,
    Beta,
    Gamma,
}

/// `α_k`, `β_k` or `γ_k` with `k` in `1..=g+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NamedCurve {
    pub family: CurveFamily,
    pub k: usize,
}

impl NamedCurve {
    pub fn alpha(k: usize) -> Self {
        Self { family: CurveFamily::Alpha, k }
    }

    pub fn beta(k: usize) -> Self {
        Self { family: CurveFamily::Beta, k }
    }

    pub fn gamma(k: usize) -> Self {
        Self { family: CurveFamily::Gamma, k }
    }

    /// Marked path of the curve on `S_g(c, t)`.
    pub fn path(&self, g: usize) -> Result<MarkedPath, ModelError> {
        let n = g + 1;
        if self.k == 0 || self.k > n {
            return Err(ModelError::IndexOutOfRange(self.k));
        }
        let j = self.k - 1;
        let steps = match self.family {
            CurveFamily::Gamma => vec![Step::Seam(j), Step::Seam((j + n - 1) % n)],
            CurveFamily::Alpha | CurveFamily::Beta => {
                let wind = if self.family == CurveFamily::Beta { -1 } else { 0 };
                vec![
                    Step::Cuff { slot: (j + 1) % n, frac: FRAC, wind },
                    Step::Cuff { slot: (n - j) % n, frac: FRAC, wind: 0 },
                ]
            }
        };
        Ok(MarkedPath { piece: 0, steps })
    }
}

/// Holonomy length of a named curve.
pub fn curve_length(rep: &HolonomyRep, g: usize, curve: NamedCurve) -> Result<f64, ModelError> {
    let word = rep.path_word(&curve.path(g)?)?;
    Ok(geodesic_length(rep, &word)?)
}

/// Length of a named curve on `S_g(c, t)`. `γ` is the cuff length by
/// definition; `α` and `β` come from the holonomy.
pub fn l_curve(spec: &RotFamilySpec, curve: NamedCurve) -> Result<HypLength, ModelError> {
    if curve.k == 0 || curve.k > spec.g + 1 {
        return Err(ModelError::IndexOutOfRange(curve.k));
    }
    let value = match curve.family {
        CurveFamily::Gamma => spec.c,
        _ => curve_length(&spec.representation()?, spec.g, curve)?,
    };
    HypLength::new(value).map_err(|_| ModelError::InvalidParameter("length", value))
}

/// Length of a named curve from the product of crossing transforms along
/// its path; skips building generators and relators.
pub fn path_length(surface: &FnSurface, g: usize, curve: NamedCurve) -> Result<f64, ModelError> {
    let m = surface.path_holonomy(&curve.path(g)?)?;
    Ok(m.translation_length().ok_or(HolonomyError::NotHyperbolic { trace: m.trace() })?)
}

/// `l_α` and `l_β` on `S_g(c, t)` for any real `t`.
fn alpha_beta(g: usize, c: f64, t: f64) -> Result<(f64, f64), ModelError> {
    let s = FnSurface::new(&rot_family_graph(g, c, t)?)?;
    Ok((path_length(&s, g, NamedCurve::alpha(1))?, path_length(&s, g, NamedCurve::beta(1))?))
}

fn alpha_length(g: usize, c: f64, t: f64) -> Result<f64, ModelError> {
    let s = FnSurface::new(&rot_family_graph(g, c, t)?)?;
    path_length(&s, g, NamedCurve::alpha(1))
}

/// Closed form of `l_α` at `t = 0`: twice the seam.
pub fn alpha_closed_form(g: usize, c: f64) -> f64 {
    4.0 * math::asinh(math::cos(math::PI / (g + 1) as f64) / math::sinh(c / 4.0))
}

/// Closed form of `c1`.
pub fn c1_closed_form(g: usize) -> f64 {
    4.0 * math::asinh(math::sqrt(math::cos(math::PI / (g + 1) as f64)))
}

/// The cuff length with `l_α(c, 0) = c`, by bisection on `[0.1, 10]` over
/// holonomy lengths.
pub fn solve_c1(g: usize) -> Result<HypLength, ModelError> {
    if g < 2 {
        return Err(ModelError::GenusTooSmall { g, min: 2 });
    }
    let c = solve::bisect(|c| Ok::<_, ModelError>(alpha_length(g, c, 0.0)? - c), 0.1, 10.0, 1e-13)?;
    HypLength::new(c).map_err(|_| ModelError::InvalidParameter("c1", c))
}

/// Solution of `l_α = l_β = c` on `S_g(c, t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct C2T2 {
    pub c2: f64,
    pub t2: f64,
    /// `l_α - c` at the solution.
    pub residual_alpha: f64,
    /// `l_β - c` at the solution.
    pub residual_beta: f64,
}

/// The twist at which `l_α = l_β` for a fixed cuff length.
fn balancing_twist(g: usize, c: f64) -> Result<f64, ModelError> {
    solve::bisect(
        |t| {
            let (a, b) = alpha_beta(g, c, t)?;
            Ok::<_, ModelError>(b - a)
        },
        1e-6 * c,
        c / 2.0,
        1e-12,
    )
}

/// Solves `l_α(c, t) = c` and `l_β(c, t) = c`. A nested bisection (the
/// balancing twist for each `c`, then `c`) brackets the root and a Newton
/// step polishes it.
pub fn solve_c2_t2(g: usize) -> Result<C2T2, ModelError> {
    if g < 2 {
        return Err(ModelError::GenusTooSmall { g, min: 2 });
    }
    let c1 = c1_closed_form(g);
    let outer = |c: f64| -> Result<f64, ModelError> {
        let t = balancing_twist(g, c)?;
        Ok(alpha_length(g, c, t)? - c)
    };
    let c = solve::bisect(outer, c1, 10.0, 1e-10)?;
    let t = balancing_twist(g, c)?;
    let residual = |x: [f64; 2]| -> Result<[f64; 2], ModelError> {
        let (a, b) = alpha_beta(g, x[0], x[1])?;
        Ok([a - x[0], b - x[0]])
    };
    let ([c2, t2], r) =
        solve::newton2(residual, [c, t], 1e-12, 20).or_else(|_: ModelError| residual([c, t]).map(|r| ([c, t], r)))?;
    let worst = r[0].abs().max(r[1].abs());
    if worst >= 1e-8 || !(t2 > 0.0 && t2 < c2 / 2.0) {
        return Err(ModelError::Residual(worst));
    }
    Ok(C2T2 { c2, t2, residual_alpha: r[0], residual_beta: r[1] })
}

/// The chain surface: `g - 1` four-holed spheres in a cycle.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChainSpec {
    pub g: usize,
    pub cuff: f64,
}

impl ChainSpec {
    pub fn new(g: usize, cuff: f64) -> Result<Self, ModelError> {
        if g < 2 {
            return Err(ModelError::GenusTooSmall { g, min: 2 });
        }
        if !(cuff.is_finite() && cuff > 0.0) {
            return Err(ModelError::InvalidParameter("cuff length", cuff));
        }
        Ok(Self { g, cuff })
    }

    pub fn pieces(&self) -> usize {
        self.g - 1
    }

    /// Piece `k` meets piece `k + 1` along its slots 2 and 3, which are
    /// glued to slots 1 and 0 of the next piece. All twists vanish.
    pub fn graph(&self) -> Result<GluingGraph, ModelError> {
        let m = self.pieces();
        let mut edges = Vec::with_capacity(2 * m);
        for k in 0..m {
            let next = (k + 1) % m;
            for (s, s2) in [(2, 1), (3, 0)] {
                edges.push(CuffEdge {
                    a: Slot { piece: k, slot: s },
                    b: Slot { piece: next, slot: s2 },
                    length: self.cuff,
                    twist: 0.0,
                });
            }
        }
        Ok(GluingGraph::new(vec![4; m], edges, BTreeSet::new(), None)?)
    }
}

/// Seam of the four-holed chain pieces: `sinh(c/4) sinh(d/2) = cos(π/4)`.
pub fn chain_seam(spec: &ChainSpec) -> Result<HypLength, ModelError> {
    let c = HypLength::new(spec.cuff).map_err(|_| ModelError::InvalidParameter("cuff length", spec.cuff))?;
    let half = hyp_trig::seam_half(c, 4).map_err(|_| ModelError::InvalidParameter("cuff length", spec.cuff))?;
    HypLength::new(2.0 * half.get()).map_err(|_| ModelError::InvalidParameter("seam", 2.0 * half.get()))
}
