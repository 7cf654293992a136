use core::ops::Mul;

use crate::math;

/// A 2×2 real matrix of determinant one, acting on the upper half plane by
/// Möbius transformations.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// Translation by `d` along the imaginary axis: `i ↦ eᵈ i`.
    pub fn translation(d: f64) -> Self {
        let e = math::exp(d / 2.0);
        Self::new(e, 0.0, 0.0, 1.0 / e)
    }

    /// Rotation about `i` turning tangent vectors counterclockwise by `theta`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = (math::sin(theta / 2.0), math::cos(theta / 2.0));
        Self::new(c, s, -s, c)
    }

    /// Rotation by `π` about `i`.
    pub const fn half_turn() -> Self {
        Self::new(0.0, 1.0, -1.0, 0.0)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// Inverse, assuming determinant one.
    pub fn inverse(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    /// Rescale by `1/√det` so the determinant is one again.
    pub fn renormalized(&self) -> Self {
        let det = self.det();
        // Rescaling by a determinant that is itself rounding noise only
        // spreads the noise into the trace.
        let noise = 8.0 * f64::EPSILON * ((self.a * self.d).abs() + (self.b * self.c).abs());
        if det > 0.0 && (det - 1.0).abs() > noise.max(1e-15) {
            let s = 1.0 / math::sqrt(det);
            Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
        } else {
            *self
        }
    }

    /// Entry-wise distance to `±I`.
    pub fn distance_to_pm_identity(&self) -> f64 {
        let plus = (self.a - 1.0).abs().max(self.b.abs()).max(self.c.abs()).max((self.d - 1.0).abs());
        let minus = (self.a + 1.0).abs().max(self.b.abs()).max(self.c.abs()).max((self.d + 1.0).abs());
        plus.min(minus)
    }

    /// Image of `x + iy`.
    pub fn apply(&self, z: (f64, f64)) -> (f64, f64) {
        let (x, y) = z;
        // (a z + b) / (c z + d)
        let nr = self.a * x + self.b;
        let ni = self.a * y;
        let dr = self.c * x + self.d;
        let di = self.c * y;
        let den = dr * dr + di * di;
        ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)
    }

    /// Image of `i`.
    pub fn apply_i(&self) -> (f64, f64) {
        let den = self.c * self.c + self.d * self.d;
        ((self.a * self.c + self.b * self.d) / den, 1.0 / den)
    }

    /// Hyperbolic distance from `i` to its image: `cosh d = ‖M‖²_F / 2`.
    pub fn displacement_of_i(&self) -> f64 {
        math::acosh((0.5 * self.frobenius_sq()).max(1.0))
    }

    /// Translation length `2 arccosh(|tr|/2)`, or `None` unless hyperbolic.
    pub fn translation_length(&self) -> Option<f64> {
        let t = self.trace().abs();
        if t > 2.0 {
            Some(2.0 * math::acosh(t / 2.0))
        } else {
            None
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Hyperbolic distance between two points of the upper half plane.
pub fn uhp_distance(p: (f64, f64), q: (f64, f64)) -> f64 {
    let dx = p.0 - q.0;
    let dy = p.1 - q.1;
    let arg = 1.0 + (dx * dx + dy * dy) / (2.0 * p.1 * q.1);
    math::acosh(arg.max(1.0))
}

/// Hyperboloid coordinates `(X0, X1, X2)` of `x + iy`.
pub fn to_hyperboloid(z: (f64, f64)) -> [f64; 3] {
    let (x, y) = z;
    let r = x * x + y * y;
    [(r + 1.0) / (2.0 * y), (r - 1.0) / (2.0 * y), x / y]
}

/// Inverse of [`to_hyperboloid`] for a point on the upper sheet.
pub fn from_hyperboloid(p: [f64; 3]) -> (f64, f64) {
    let y = 1.0 / (p[0] - p[1]);
    (p[2] * y, y)
}

/// Normalised hyperboloid barycenter of a finite point set.
pub fn barycenter(points: &[(f64, f64)]) -> (f64, f64) {
    let mut s = [0.0; 3];
    for &z in points {
        let h = to_hyperboloid(z);
        for k in 0..3 {
            s[k] += h[k];
        }
    }
    let q = s[0] * s[0] - s[1] * s[1] - s[2] * s[2];
    let n = math::sqrt(q);
    from_hyperboloid([s[0] / n, s[1] / n, s[2] / n])
}
