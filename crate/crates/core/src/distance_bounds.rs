//! Distance bounds between the surfaces of [`surface_models`].
//!
//! Every bound comes back as a [`BoundReport`]. Lower bounds that come out
//! non-positive are still returned, with `vacuous` set; they are true but
//! say nothing.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::hyp_trig::{self, AngleRad, DomainError, HypLength};
use crate::math::{self, PI};
use crate::pants_graph::{self, GraphError};
use crate::solve;
use crate::surface_models::{self, ChainSpec, ModelError, C2T2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum BoundKind {
    Lower,
    Upper,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Lower => "lower",
            Self::Upper => "upper",
        })
    }
}

/// One evaluated bound with the inputs that produced it.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub name: String,
    pub value: f64,
    pub kind: BoundKind,
    /// A lower bound that is not positive.
    pub vacuous: bool,
    pub inputs: BTreeMap<String, f64>,
    /// Companion numbers printed next to the value, such as a looser closed
    /// form or a rounded constant.
    pub extra: BTreeMap<String, f64>,
    /// The formula evaluated, in words.
    pub source: String,
}

impl BoundReport {
    fn new(name: &str, value: f64, kind: BoundKind, source: &str) -> Self {
        Self {
            name: name.to_string(),
            value,
            kind,
            vacuous: kind == BoundKind::Lower && value <= 0.0,
            inputs: BTreeMap::new(),
            extra: BTreeMap::new(),
            source: source.to_string(),
        }
    }

    fn input(mut self, key: &str, v: f64) -> Self {
        self.inputs.insert(key.to_string(), v);
        self
    }

    fn extra(mut self, key: &str, v: f64) -> Self {
        self.extra.insert(key.to_string(), v);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundError {
    GenusTooSmall {
        g: usize,
        min: usize,
    },
    InvalidInput(&'static str, f64),
    /// `φ` outside the strip `(π/2 − θ, π/2 + θ)`.
    OutsideStrip {
        phi: f64,
        theta: f64,
    },
    Domain(DomainError),
    Graph(GraphError),
    Model(ModelError),
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GenusTooSmall { g, min } => write!(f, "genus {g} is below the minimum {min}"),
            Self::InvalidInput(name, v) => write!(f, "invalid {name}: {v}"),
            Self::OutsideStrip { phi, theta } => {
                write!(f, "angle {phi} outside the strip of half width {theta} around π/2")
            }
            Self::Domain(e) => write!(f, "{e}"),
            Self::Graph(e) => write!(f, "{e}"),
            Self::Model(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for BoundError {}

impl From<DomainError> for BoundError {
    fn from(e: DomainError) -> Self {
        Self::Domain(e)
    }
}

impl From<GraphError> for BoundError {
    fn from(e: GraphError) -> Self {
        Self::Graph(e)
    }
}

impl From<ModelError> for BoundError {
    fn from(e: ModelError) -> Self {
        Self::Model(e)
    }
}

fn check_genus(g: usize, min: usize) -> Result<(), BoundError> {
    if g < min {
        return Err(BoundError::GenusTooSmall { g, min });
    }
    Ok(())
}

/// `¼ log(L / sys)`: a surface whose systoles fill has total filling length
/// at most `L`.
pub fn filling_lower_bound(l: HypLength, sys: HypLength) -> BoundReport {
    let value = 0.25 * math::ln(l.get() / sys.get());
    BoundReport::new("filling", value, BoundKind::Lower, "1/4 log(L / sys)").input("L", l.get()).input("sys", sys.get())
}

/// Lower bound from the tree surfaces, `¼ log(log g − log 12)`.
///
/// When `g = 3·2ⁿ⁻¹` the tree surface is the joined tree of depth `n`, and
/// the sharper value `¼ log n` is computed along the way: the shortest curve
/// through the center piece has length at least `n · arccosh 2` while the
/// systole is `arccosh 2`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HoleBound {
    pub closed_form: BoundReport,
    pub exact: Option<BoundReport>,
}

pub fn thm_hole_bound(g: usize) -> Result<HoleBound, BoundError> {
    check_genus(g, 3)?;
    let gf = g as f64;
    let arg = math::ln(gf) - math::ln(12.0);
    // For g ≤ 12 the logarithm is undefined; the trivial bound 0 stands in.
    let value = if arg > 0.0 { 0.25 * math::ln(arg) } else { 0.0 };
    let closed_form = BoundReport::new("hole", value, BoundKind::Lower, "1/4 log(log g - log 12)")
        .input("g", gf)
        .extra("argument", arg);
    let n = pants_graph::tree_depth_for_genus(g)?;
    let exact = if 3usize << (n - 1) == g { Some(hole_bound_exact(n)?.input("g", gf)) } else { None };
    Ok(HoleBound { closed_form, exact })
}

/// `¼ log n` on the joined tree surface of depth `n`, through the tree,
/// the surface and the shortest curve through the center.
pub fn hole_bound_exact(n: usize) -> Result<BoundReport, BoundError> {
    let tree = pants_graph::build_joined_tree(n)?;
    let graph = pants_graph::surface_from_tree(&tree)?;
    let l = pants_graph::min_length_through_center(&graph, tree.center())?;
    let sys = HypLength::new(math::acosh2())?;
    let mut r = filling_lower_bound(l, sys);
    r.name = "hole_exact".to_string();
    r.source = "1/4 log n from the joined tree of depth n".to_string();
    Ok(r.input("n", n as f64))
}

/// `½ |log(ext1 / ext2)|`.
pub fn ext_ratio_distance(ext1: f64, ext2: f64) -> Result<f64, BoundError> {
    for (name, v) in [("extremal length", ext1), ("extremal length", ext2)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(BoundError::InvalidInput(name, v));
        }
    }
    Ok(0.5 * (math::ln(ext1) - math::ln(ext2)).abs())
}

/// Strip angle `θ` of the half collar of `γ` on `S_g(c, 0)`, from
/// `cos θ = (1 + cos²(π/(g+1)) / sinh²(c/4))^(-1/2)`.
pub fn strip_angle(g: usize, c: f64) -> Result<AngleRad, BoundError> {
    if !(c.is_finite() && c > 0.0) {
        return Err(BoundError::InvalidInput("cuff length", c));
    }
    let q = math::cos(PI / (g + 1) as f64) / math::sinh(c / 4.0);
    Ok(AngleRad::new(math::atan2(q, 1.0))?)
}

/// The same angle from the half seam and the collar formula.
pub fn strip_angle_from_seam(g: usize, c: f64) -> Result<AngleRad, BoundError> {
    let w = hyp_trig::seam_half(HypLength::new(c)?, g + 1)?;
    Ok(hyp_trig::collar_angle(w))
}

/// `½ log(π c2 / (2 θ c1))`, the extremal length ratio of `γ` between
/// `S_g(c1, 0)` and `S_g(c2, 0)` after the Maskit comparison.
pub fn dist_s1_mid(g: usize) -> Result<BoundReport, BoundError> {
    check_genus(g, 2)?;
    let c1 = surface_models::solve_c1(g)?.get();
    let sol = surface_models::solve_c2_t2(g)?;
    dist_s1_mid_from(g, c1, sol.c2)
}

pub fn dist_s1_mid_from(g: usize, c1: f64, c2: f64) -> Result<BoundReport, BoundError> {
    check_genus(g, 2)?;
    let theta = strip_angle(g, c2)?;
    let (lo1, _) = hyp_trig::maskit_bounds(HypLength::new(c1)?, theta)?;
    let (_, hi2) = hyp_trig::maskit_bounds(HypLength::new(c2)?, theta)?;
    let value = 0.5 * math::ln(hi2 / lo1);
    Ok(BoundReport::new("s1_mid", value, BoundKind::Upper, "1/2 log(pi c2 / (2 theta c1))")
        .input("g", g as f64)
        .input("c1", c1)
        .input("c2", c2)
        .input("theta", theta.get()))
}

/// `Φ(φ)` and `Φ′(φ)` for the radial stretch `r e^{iφ} ↦ r Φ(φ) e^{iφ}` that
/// carries the unit circle onto the geodesic from `i` to `e^{t2/2 + i sin θ}`.
pub fn phi_and_derivative(t2: f64, theta: AngleRad, phi: f64) -> (f64, f64) {
    let k = math::sinh(t2 / 2.0) / math::sin(theta.get());
    let kc = k * math::cos(phi);
    let root = math::sqrt(kc * kc + 1.0);
    let value = kc + root;
    (value, -k * math::sin(phi) * value / root)
}

fn dilatation_unchecked(t2: f64, theta: AngleRad, phi: f64) -> f64 {
    let (p, dp) = phi_and_derivative(t2, theta, phi);
    let r = math::sqrt(p * p + 0.25 * dp * dp);
    let h = 0.5 * dp.abs();
    (r + h) / (r - h)
}

fn check_twist(t2: f64) -> Result<(), BoundError> {
    if !(t2.is_finite() && t2 >= 0.0) {
        return Err(BoundError::InvalidInput("twist", t2));
    }
    Ok(())
}

/// Dilatation `K(φ) = (√(Φ² + Φ′²/4) + |Φ′|/2) / (√(Φ² + Φ′²/4) − |Φ′|/2)`.
pub fn twist_dilatation(t2: f64, theta: AngleRad, phi: AngleRad) -> Result<f64, BoundError> {
    check_twist(t2)?;
    let (phi, th) = (phi.get(), theta.get());
    if !(th > 0.0 && th < PI / 2.0) {
        return Err(BoundError::Domain(DomainError::AngleOutOfRange(th)));
    }
    if !((phi - PI / 2.0).abs() < th) {
        return Err(BoundError::OutsideStrip { phi, theta: th });
    }
    Ok(dilatation_unchecked(t2, theta, phi))
}

/// Number of grid points used for the supremum of `K`.
pub const DILATATION_GRID: usize = 20_001;

/// `n` evenly spaced samples `(φ, K(φ))` over the open strip.
pub fn dilatation_profile(t2: f64, theta: AngleRad, n: usize) -> Result<Vec<(f64, f64)>, BoundError> {
    check_twist(t2)?;
    let th = theta.get();
    if !(th > 0.0 && th < PI / 2.0) {
        return Err(BoundError::Domain(DomainError::AngleOutOfRange(th)));
    }
    let lo = PI / 2.0 - th;
    let step = 2.0 * th / (n + 1) as f64;
    Ok((1..=n)
        .map(|i| {
            let phi = lo + step * i as f64;
            (phi, dilatation_unchecked(t2, theta, phi))
        })
        .collect())
}

/// `sup K` over the strip: grid maximum refined by golden section between
/// its neighbours. Returns `(φ*, K(φ*))`.
pub fn dilatation_sup(t2: f64, theta: AngleRad, grid: usize) -> Result<(f64, f64), BoundError> {
    let samples = dilatation_profile(t2, theta, grid.max(3))?;
    let (i, _) = samples
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, s)| if s.1 > best.1 { (i, s.1) } else { best });
    let lo = samples[i.saturating_sub(1)].0;
    let hi = samples[(i + 1).min(samples.len() - 1)].0;
    let refined = solve::golden_max(|phi| dilatation_unchecked(t2, theta, phi), lo, hi, 1e-12);
    Ok(if refined.1 >= samples[i].1 { refined } else { samples[i] })
}

/// `½ log sup K`, the Teichmüller cost of the twist deformation on the
/// collars.
pub fn twist_distance_bound(t2: f64, theta: AngleRad) -> Result<BoundReport, BoundError> {
    let (phi, k) = dilatation_sup(t2, theta, DILATATION_GRID)?;
    Ok(BoundReport::new("twist", 0.5 * math::ln(k), BoundKind::Upper, "1/2 log sup K(phi)")
        .input("t2", t2)
        .input("theta", theta.get())
        .extra("phi_max", phi)
        .extra("k_max", k))
}

/// Both steps between `S_g(c1, 0)` and `S_g(c2, t2)` for one genus.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SmallDistance {
    pub c1: f64,
    pub solution: C2T2,
    pub mid: BoundReport,
    pub twist: BoundReport,
    pub total: BoundReport,
}

pub fn dist_small_total(g: usize) -> Result<SmallDistance, BoundError> {
    check_genus(g, 2)?;
    let c1 = surface_models::solve_c1(g)?.get();
    let solution = surface_models::solve_c2_t2(g)?;
    let mid = dist_s1_mid_from(g, c1, solution.c2)?;
    let twist = twist_distance_bound(solution.t2, strip_angle(g, solution.c2)?)?.input("g", g as f64);
    let total = BoundReport::new("small_total", mid.value + twist.value, BoundKind::Upper, "s1_mid + twist")
        .input("g", g as f64)
        .extra("s1_mid", mid.value)
        .extra("twist", twist.value);
    Ok(SmallDistance { c1, solution, mid, twist, total })
}

/// Lower bound on the diameter of the chain surface: `d · ⌊(g−1)/2 − 2⌋`
/// with `d` the chain seam. The rounded `0.6 ⌊(g−5)/2⌋` is kept in
/// `extra["claimed"]`.
pub fn diam_lower_s3(g: usize, cuff: HypLength) -> Result<BoundReport, BoundError> {
    check_genus(g, 5)?;
    let d = surface_models::chain_seam(&ChainSpec::new(g, cuff.get())?)?.get();
    let steps = math::floor((g as f64 - 1.0) / 2.0 - 2.0);
    let claimed = 0.6 * math::floor((g as f64 - 5.0) / 2.0);
    Ok(BoundReport::new("diam_s3", d * steps, BoundKind::Lower, "d floor((g-1)/2 - 2)")
        .input("g", g as f64)
        .input("cuff", cuff.get())
        .extra("seam", d)
        .extra("claimed", claimed))
}

/// Upper bound on the diameter of `S_g(c1, 0)`: `4 arccosh cot(π/(2g+2))`,
/// with the looser `4 log((4g+4)/π)` in `extra["closed_form"]`.
pub fn diam_upper_s1(g: usize) -> Result<BoundReport, BoundError> {
    check_genus(g, 2)?;
    let gf = g as f64;
    let exact = 4.0 * math::acosh(math::cot(PI / (2.0 * gf + 2.0)));
    let closed = 4.0 * math::ln((4.0 * gf + 4.0) / PI);
    Ok(BoundReport::new("diam_s1", exact, BoundKind::Upper, "4 arccosh cot(pi/(2g+2))")
        .input("g", gf)
        .extra("closed_form", closed))
}

/// Lower bounds on the distance between the chain surface and `S_g(c1, 0)`
/// from the Lipschitz constant of diameters.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LargeDistance {
    /// `½ log(g−6) − ½ log((40/3) log((4g+4)/π))`.
    pub closed_form: BoundReport,
    /// `½ log(diam_s3 / diam_s1)` with the exact diameters.
    pub recomputed: BoundReport,
}

pub fn dist_large_lower(g: usize) -> Result<LargeDistance, BoundError> {
    dist_large_lower_with(g, HypLength::new(surface_models::CHAIN_CUFF_DEFAULT)?)
}

pub fn dist_large_lower_with(g: usize, cuff: HypLength) -> Result<LargeDistance, BoundError> {
    check_genus(g, 13)?;
    let gf = g as f64;
    let value = 0.5 * math::ln(gf - 6.0) - 0.5 * math::ln(40.0 / 3.0 * math::ln((4.0 * gf + 4.0) / PI));
    let closed_form = BoundReport::new("large", value, BoundKind::Lower, "1/2 log(g-6) - 1/2 log(40/3 log((4g+4)/pi))")
        .input("g", gf);
    let lower = diam_lower_s3(g, cuff)?;
    let upper = diam_upper_s1(g)?;
    let recomputed = BoundReport::new(
        "large_recomputed",
        0.5 * math::ln(lower.value / upper.value),
        BoundKind::Lower,
        "1/2 log(diam_s3 / diam_s1)",
    )
    .input("g", gf)
    .input("cuff", cuff.get())
    .extra("diam_s3", lower.value)
    .extra("diam_s1", upper.value);
    Ok(LargeDistance { closed_form, recomputed })
}

/// Smallest `g` in `13..=max_g` from which both forms are positive, scanning
/// every genus. `None` when a form never turns positive in range.
pub fn large_crossovers(max_g: usize, cuff: HypLength) -> Result<(Option<usize>, Option<usize>), BoundError> {
    let mut closed = None;
    let mut recomputed = None;
    for g in 13..=max_g {
        let r = dist_large_lower_with(g, cuff)?;
        if closed.is_none() && !r.closed_form.vacuous {
            closed = Some(g);
        }
        if recomputed.is_none() && !r.recomputed.vacuous {
            recomputed = Some(g);
        }
        if closed.is_some() && recomputed.is_some() {
            break;
        }
    }
    Ok((closed, recomputed))
}
