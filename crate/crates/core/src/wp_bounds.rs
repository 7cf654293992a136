//! Weil–Petersson distance thresholds and the large-genus threshold
//! arithmetic for random surfaces.
//!
//! Genera of interest are far beyond `f64` range, so every function takes
//! `log g` instead of `g`.

use core::fmt;

use crate::math;
use crate::solve;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WpError {
    InvalidInput(&'static str, f64),
    /// No crossover up to the given `log g`.
    NotFound(f64),
}

impl fmt::Display for WpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidInput(name, v) => write!(f, "invalid {name}: {v}"),
            Self::NotFound(max) => write!(f, "no crossover for log g up to {max}"),
        }
    }
}

impl core::error::Error for WpError {}

/// Lipschitz constants of `√sys` and `√inj` along Weil–Petersson geodesics,
/// and the `ε` of the injectivity radius profile.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WpConstants {
    pub a_sys: f64,
    pub b_inj: f64,
    pub eps: f64,
}

impl Default for WpConstants {
    fn default() -> Self {
        Self { a_sys: 0.5492, b_inj: 0.3884, eps: 0.1 }
    }
}

impl WpConstants {
    pub fn new(a_sys: f64, b_inj: f64, eps: f64) -> Result<Self, WpError> {
        positive("a_sys", a_sys)?;
        positive("b_inj", b_inj)?;
        positive("epsilon", eps)?;
        Ok(Self { a_sys, b_inj, eps })
    }
}

fn positive(name: &'static str, v: f64) -> Result<f64, WpError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(WpError::InvalidInput(name, v))
    }
}

fn log_log(log_g: f64) -> Result<f64, WpError> {
    if !(log_g.is_finite() && log_g > 1.0) {
        return Err(WpError::InvalidInput("log g", log_g));
    }
    Ok(math::ln(log_g))
}

/// `Q = ¼ log g − (¾ + ε/2) log log g`. Non-positive values carry no
/// information.
pub fn inj_profile(log_g: f64, consts: &WpConstants) -> Result<f64, WpError> {
    let ll = log_log(log_g)?;
    Ok(0.25 * log_g - (0.75 + consts.eps / 2.0) * ll)
}

/// Result of eliminating the systole between the two Lipschitz estimates.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Elimination {
    /// `(√(2Q) − √L) / (a + √2 b)`, before clamping.
    pub closed_form: f64,
    /// The same minimax found numerically.
    pub numeric: f64,
    /// Systole at which the two estimates balance.
    pub s_star: f64,
    /// `max(closed_form, 0)`.
    pub value: f64,
}

/// `min over s ≥ 0 of max((√s − √L)/a, (√Q − √(s/2))/b)`.
///
/// Both pieces are affine in `u = √s`, one increasing and one decreasing,
/// so the minimum sits where they cross.
pub fn eliminate_sys(q: f64, l: f64, consts: &WpConstants) -> Result<Elimination, WpError> {
    let q = positive("Q", q)?;
    let l = positive("L", l)?;
    let (a, b) = (consts.a_sys, consts.b_inj);
    let (sq, sl) = (math::sqrt(q), math::sqrt(l));
    let objective = |u: f64| f64::max((u - sl) / a, (sq - u / math::SQRT_2) / b);
    let hi = 2.0 * (math::SQRT_2 * sq + sl) + 1.0;
    let (_, numeric) = solve::golden_min(objective, 0.0, hi, 1e-13 * hi);
    let closed_form = (math::SQRT_2 * sq - sl) / (a + math::SQRT_2 * b);
    let u_star = (a * sq + b * sl) / (b + a / math::SQRT_2);
    Ok(Elimination { closed_form, numeric, s_star: u_star * u_star, value: closed_form.max(0.0) })
}

/// The two estimates at systole `s`: `((√s − √L)/a, (√Q − √(s/2))/b)`.
pub fn constraint_pair(q: f64, l: f64, s: f64, consts: &WpConstants) -> (f64, f64) {
    let u = math::sqrt(s);
    ((u - math::sqrt(l)) / consts.a_sys, (math::sqrt(q) - u / math::SQRT_2) / consts.b_inj)
}

/// Lower bound recomputed from the constants: the elimination with
/// `Q = inj_profile` and `L = log log g`, clamped at 0.
pub fn recomputed_wp_threshold(log_g: f64, consts: &WpConstants) -> Result<f64, WpError> {
    let q = inj_profile(log_g, consts)?;
    if q <= 0.0 {
        return Ok(0.0);
    }
    Ok(eliminate_sys(q, log_log(log_g)?, consts)?.value)
}

/// Rounded closed form `0.6521 (√log g − √(7 log log g))`; may be negative.
pub fn rounded_wp_threshold(log_g: f64) -> Result<f64, WpError> {
    let ll = log_log(log_g)?;
    Ok(0.6521 * (math::sqrt(log_g) - math::sqrt(7.0 * ll)))
}

/// Leading coefficient of the recomputed threshold in `√log g`. With
/// `Q ≈ ¼ log g` the closed form starts as `√(log g / 2) / (a + √2 b)`.
pub fn recomputed_coefficient(consts: &WpConstants) -> f64 {
    1.0 / (math::SQRT_2 * (consts.a_sys + math::SQRT_2 * consts.b_inj))
}

/// Least-squares fit `y ≈ α √log g + β` over `n` log-spaced points of
/// `log g` in `[lo, hi]`. Returns `(α, β)`.
pub fn fit_sqrt_log<F>(mut f: F, lo: f64, hi: f64, n: usize) -> Result<(f64, f64), WpError>
where
    F: FnMut(f64) -> Result<f64, WpError>,
{
    positive("fit lower end", lo)?;
    if !(hi > lo) || n < 2 {
        return Err(WpError::InvalidInput("fit range", hi));
    }
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        let lg = math::exp(math::ln(lo) + (math::ln(hi) - math::ln(lo)) * i as f64 / (n - 1) as f64);
        let x = math::sqrt(lg);
        let y = f(lg)?;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let nf = n as f64;
    let alpha = (nf * sxy - sx * sy) / (nf * sxx - sx * sx);
    Ok((alpha, (sy - alpha * sx) / nf))
}

/// `¼ log((log g − 2 log log g) / (⅕ log log g)) − ⅕ log log g`; the
/// threshold argument needs this positive.
pub fn teich_margin(log_g: f64) -> Result<f64, WpError> {
    let ll = log_log(log_g)?;
    let num = log_g - 2.0 * ll;
    Ok(0.25 * math::ln(num / (0.2 * ll)) - 0.2 * ll)
}

/// Smallest `log g` in `(1, log_g_max]` with positive [`teich_margin`]:
/// a geometric scan of `log log g`, then bisection.
pub fn teich_threshold_crossover(log_g_max: f64) -> Result<f64, WpError> {
    if !(log_g_max.is_finite() && log_g_max > math::E) {
        return Err(WpError::InvalidInput("log g range", log_g_max));
    }
    let holds = |lg: f64| teich_margin(lg).is_ok_and(|m| m > 0.0);
    let top = math::ln(log_g_max);
    let steps = 4000;
    let mut prev = 1.0f64;
    for i in 1..=steps {
        let lg = math::exp(top * i as f64 / steps as f64);
        if holds(lg) {
            let (mut lo, mut hi) = (prev, lg);
            while hi - lo > 1e-12 * hi {
                let mid = 0.5 * (lo + hi);
                if holds(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(hi);
        }
        prev = lg;
    }
    Err(WpError::NotFound(log_g_max))
}

/// Tail estimate `B c e^{-c}` for the probability that the systole exceeds
/// `c`. `B` has no known value and must be supplied.
pub fn mp_tail(c: f64, b: f64) -> Result<f64, WpError> {
    positive("c_g", c)?;
    positive("B", b)?;
    Ok(b * c * math::exp(-c))
}
