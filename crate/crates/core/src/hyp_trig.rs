//! Hyperbolic trigonometry of right-angled polygons.
//!
//! Conventions follow Buser's tables: in a right-angled hexagon `a, b, c` are
//! three pairwise non-adjacent sides and `γ` is the side opposite `c`. All
//! lengths are in units of curvature −1.

use core::fmt;

use crate::math::{self, PI};

/// A strictly positive, finite hyperbolic length.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct HypLength(f64);

impl HypLength {
    pub fn new(value: f64) -> Result<Self, DomainError> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(DomainError::NonPositiveLength(value))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// An angle in the open interval `(0, π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct AngleRad(f64);

impl AngleRad {
    pub fn new(value: f64) -> Result<Self, DomainError> {
        if value.is_finite() && value > 0.0 && value < PI {
            Ok(Self(value))
        } else {
            Err(DomainError::AngleOutOfRange(value))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DomainError {
    NonPositiveLength(f64),
    AngleOutOfRange(f64),
    /// `cot α · cot β ≤ 1`: the two angles do not close up a right triangle.
    NoSuchTriangle {
        cot_product: f64,
    },
    /// `sinh a · sinh b ≥ 1`: no trirectangle with an acute fourth angle.
    NoSuchTrirectangle {
        sinh_product: f64,
    },
    /// `sinh a · sinh b ≤ 1`: no right-angled pentagon.
    NoSuchPentagon {
        sinh_product: f64,
    },
    /// The hexagon identity gives `cosh c ≤ 1`.
    NoSuchHexagon {
        cosh_value: f64,
    },
    /// Regular right-angled polygons need at least three cuffs.
    PolygonOrder(usize),
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveLength(v) => write!(f, "length must be positive and finite, got {v}"),
            Self::AngleOutOfRange(v) => write!(f, "angle {v} outside the admissible range"),
            Self::NoSuchTriangle { cot_product } => {
                write!(f, "no hyperbolic right triangle: cot α cot β = {cot_product} ≤ 1")
            }
            Self::NoSuchTrirectangle { sinh_product } => {
                write!(f, "no trirectangle: sinh a sinh b = {sinh_product} ≥ 1")
            }
            Self::NoSuchPentagon { sinh_product } => {
                write!(f, "no right-angled pentagon: sinh a sinh b = {sinh_product} ≤ 1")
            }
            Self::NoSuchHexagon { cosh_value } => {
                write!(f, "no right-angled hexagon: cosh c would be {cosh_value} ≤ 1")
            }
            Self::PolygonOrder(n) => write!(f, "polygon order must be at least 3, got {n}"),
        }
    }
}

impl core::error::Error for DomainError {}

/// Hypotenuse `c` of a right triangle with acute angles `α, β`:
/// `cosh c = cot α cot β`.
pub fn right_triangle_hyp(alpha: AngleRad, beta: AngleRad) -> Result<HypLength, DomainError> {
    let product = math::cot(alpha.get()) * math::cot(beta.get());
    // The ideal case cot·cot = 1 is a rounding hair away from 1 for π/4, π/4.
    if !(product > 1.0 + 1e-14) {
        return Err(DomainError::NoSuchTriangle { cot_product: product });
    }
    HypLength::new(math::acosh(product))
}

/// Fourth angle `φ` of a trirectangle with sides `a, b` meeting at the right
/// angle opposite `φ`: `cos φ = sinh a sinh b`.
pub fn trirectangle_angle(a: HypLength, b: HypLength) -> Result<AngleRad, DomainError> {
    let product = math::sinh(a.get()) * math::sinh(b.get());
    if product >= 1.0 {
        return Err(DomainError::NoSuchTrirectangle { sinh_product: product });
    }
    AngleRad::new(math::acos(product))
}

/// Inverse of [`trirectangle_angle`] in its second argument: the side `b`
/// with `sinh a sinh b = cos φ`. Needs `φ < π/2`.
pub fn trirectangle_side(a: HypLength, phi: AngleRad) -> Result<HypLength, DomainError> {
    let cos_phi = math::cos(phi.get());
    if cos_phi <= 0.0 {
        return Err(DomainError::AngleOutOfRange(phi.get()));
    }
    HypLength::new(math::asinh(cos_phi / math::sinh(a.get())))
}

/// Side `c` of a right-angled pentagon opposite the vertex between `a` and
/// `b`: `cosh c = sinh a sinh b`.
pub fn pentagon_side(a: HypLength, b: HypLength) -> Result<HypLength, DomainError> {
    let product = math::sinh(a.get()) * math::sinh(b.get());
    if !(product > 1.0) {
        return Err(DomainError::NoSuchPentagon { sinh_product: product });
    }
    HypLength::new(math::acosh(product))
}

/// Right-angled hexagon: `cosh c = sinh a sinh b cosh γ − cosh a cosh b`,
/// where `a, b, c` are alternate sides and `γ` is opposite `c`.
pub fn hexagon_side(a: HypLength, b: HypLength, gamma: HypLength) -> Result<HypLength, DomainError> {
    let (a, b, g) = (a.get(), b.get(), gamma.get());
    let rhs = math::sinh(a) * math::sinh(b) * math::cosh(g) - math::cosh(a) * math::cosh(b);
    if !(rhs > 1.0) {
        return Err(DomainError::NoSuchHexagon { cosh_value: rhs });
    }
    HypLength::new(math::acosh(rhs))
}

/// The hexagon identity solved for `γ`: given three alternate sides
/// `a, b, c`, the side opposite `c`. Every positive triple is realised, so
/// this only fails on invalid lengths.
///
/// For a pair of pants cut along its seams, `a, b, c` are cuff half-lengths
/// and the result is the seam opposite the `c` half-cuff.
pub fn hexagon_opposite_side(a: HypLength, b: HypLength, c: HypLength) -> HypLength {
    let (a, b, c) = (a.get(), b.get(), c.get());
    let value = (math::cosh(c) + math::cosh(a) * math::cosh(b)) / (math::sinh(a) * math::sinh(b));
    HypLength(math::acosh(value))
}

/// Half seam of the `n`-holed sphere built from two regular right-angled
/// `2n`-gons whose cuffs have length `c`:
/// `sinh(s/2) sinh(c/4) = cos(π/n)`.
pub fn seam_half(c: HypLength, n: usize) -> Result<HypLength, DomainError> {
    if n < 3 {
        return Err(DomainError::PolygonOrder(n));
    }
    let value = math::cos(PI / n as f64) / math::sinh(c.get() / 4.0);
    HypLength::new(math::asinh(value))
}

/// Angle `θ` of the strip that lifts a collar of width `w`:
/// `cos θ = 1 / cosh w`.
pub fn collar_angle(w: HypLength) -> AngleRad {
    // Gudermannian form: sin θ = tanh w, cos θ = 1/cosh w.
    AngleRad(math::atan2(math::sinh(w.get()), 1.0))
}

/// Width of the collar whose lifted strip has angle `θ ∈ (0, π/2)`.
pub fn collar_width(theta: AngleRad) -> Result<HypLength, DomainError> {
    if theta.get() >= PI / 2.0 {
        return Err(DomainError::AngleOutOfRange(theta.get()));
    }
    HypLength::new(math::asinh(math::tan(theta.get())))
}

/// Maskit's comparison for a geodesic of length `l` with a collar of angle
/// `θ`: `l/π ≤ Ext ≤ l/(2θ)`. Returns `(lower, upper)`.
pub fn maskit_bounds(l: HypLength, theta: AngleRad) -> Result<(f64, f64), DomainError> {
    if theta.get() >= PI / 2.0 {
        return Err(DomainError::AngleOutOfRange(theta.get()));
    }
    Ok((l.get() / PI, l.get() / (2.0 * theta.get())))
}
