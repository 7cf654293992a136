//! Floating point kernel shared by the crate.
//!
//! `core` has no transcendental functions, so everything goes through `libm`.

pub use core::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, LN_2, PI, SQRT_2};

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub fn log10(x: f64) -> f64 {
    libm::log10(x)
}
#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub fn tan(x: f64) -> f64 {
    libm::tan(x)
}
#[inline]
pub fn acos(x: f64) -> f64 {
    libm::acos(x)
}
#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}
#[inline]
pub fn sinh(x: f64) -> f64 {
    libm::sinh(x)
}
#[inline]
pub fn cosh(x: f64) -> f64 {
    libm::cosh(x)
}
#[inline]
pub fn asinh(x: f64) -> f64 {
    libm::asinh(x)
}
#[inline]
pub fn acosh(x: f64) -> f64 {
    libm::acosh(x)
}
#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}
#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

/// `cot(x) = cos(x) / sin(x)`.
#[inline]
pub fn cot(x: f64) -> f64 {
    cos(x) / sin(x)
}

/// `arccosh 2`, the side of the regular right-angled hexagon.
pub fn acosh2() -> f64 {
    acosh(2.0)
}

/// Reduce `x` into `[0, period)`.
pub fn rem_euclid(x: f64, period: f64) -> f64 {
    let r = x - period * floor(x / period);
    if r >= period {
        r - period
    } else if r < 0.0 {
        0.0
    } else {
        r
    }
}
