//! Small scalar solvers: bisection, golden-section search and a damped
//! two-dimensional Newton iteration.

use core::fmt;

use crate::math;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SolveError {
    /// `f(lo)` and `f(hi)` have the same sign.
    NoBracket {
        lo: f64,
        hi: f64,
    },
    NoConvergence {
        iterations: usize,
    },
    SingularJacobian,
    NonFinite,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoBracket { lo, hi } => write!(f, "no sign change on [{lo}, {hi}]"),
            Self::NoConvergence { iterations } => write!(f, "no convergence after {iterations} iterations"),
            Self::SingularJacobian => write!(f, "singular Jacobian"),
            Self::NonFinite => write!(f, "non-finite function value"),
        }
    }
}

impl core::error::Error for SolveError {}

/// Root of `f` on `[lo, hi]` by bisection, to absolute tolerance `tol` in x.
pub fn bisect<F, E>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<SolveError>,
{
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if !(flo.is_finite() && fhi.is_finite()) {
        return Err(SolveError::NonFinite.into());
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return Err(SolveError::NoBracket { lo, hi }.into());
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if !fm.is_finite() {
            return Err(SolveError::NonFinite.into());
        }
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(SolveError::NoConvergence { iterations: 200 }.into())
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximiser of a unimodal `f` on `[lo, hi]`. Returns `(x, f(x))`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
        if x1 >= x2 {
            break;
        }
    }
    let x = 0.5 * (lo + hi);
    let fx = f(x);
    // The bracket ends can win on a monotone stretch.
    [(x, fx), (x1, f1), (x2, f2)].into_iter().fold((x, fx), |best, cand| if cand.1 > best.1 { cand } else { best })
}

/// Minimiser of a unimodal `f` on `[lo, hi]`. Returns `(x, f(x))`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_max(|x| -f(x), lo, hi, tol);
    (x, -v)
}

/// Newton's method for `F(x, y) = 0` with a forward-difference Jacobian.
/// Steps are halved until the residual norm decreases.
pub fn newton2<F, E>(mut f: F, mut x: [f64; 2], tol: f64, max_iter: usize) -> Result<([f64; 2], [f64; 2]), E>
where
    F: FnMut([f64; 2]) -> Result<[f64; 2], E>,
    E: From<SolveError>,
{
    let norm = |r: [f64; 2]| math::sqrt(r[0] * r[0] + r[1] * r[1]);
    let mut r = f(x)?;
    for _ in 0..max_iter {
        if norm(r) < tol {
            return Ok((x, r));
        }
        let h = 1e-7;
        let rx = f([x[0] + h, x[1]])?;
        let ry = f([x[0], x[1] + h])?;
        let j = [[(rx[0] - r[0]) / h, (ry[0] - r[0]) / h], [(rx[1] - r[1]) / h, (ry[1] - r[1]) / h]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if !det.is_finite() || det.abs() < 1e-300 {
            return Err(SolveError::SingularJacobian.into());
        }
        let dx = [(j[1][1] * r[0] - j[0][1] * r[1]) / det, (j[0][0] * r[1] - j[1][0] * r[0]) / det];
        let mut step = 1.0;
        loop {
            let cand = [x[0] - step * dx[0], x[1] - step * dx[1]];
            let rc = f(cand)?;
            if norm(rc) < norm(r) || step < 1e-6 {
                x = cand;
                r = rc;
                break;
            }
            step *= 0.5;
        }
    }
    if norm(r) < tol {
        Ok((x, r))
    } else {
        Err(SolveError::NoConvergence { iterations: max_iter }.into())
    }
}
