use core::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

/// Row-major real 2x2 matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Mat2 {
    pub m: [[f64; 2]; 2],
}

pub type Vec2 = [f64; 2];

impl Mat2 {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const IDENTITY: Self = Self::new(1.0, 0.0, 0.0, 1.0);
    /// The standard complex structure, rotation by +pi/2.
    pub const J0: Self = Self::new(0.0, -1.0, 1.0, 0.0);
    /// Matrix of the area form: rho(u, v) = u^T OMEGA v.
    pub const OMEGA: Self = Self::new(0.0, 1.0, -1.0, 0.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub const fn diag(a: f64, d: f64) -> Self {
        Self::new(a, 0.0, 0.0, d)
    }

    pub fn from_cols(c0: Vec2, c1: Vec2) -> Self {
        Self::new(c0[0], c1[0], c0[1], c1[1])
    }

    pub fn col(&self, j: usize) -> Vec2 {
        [self.m[0][j], self.m[1][j]]
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]]
    }

    pub fn from_entries(e: [f64; 4]) -> Self {
        Self::new(e[0], e[1], e[2], e[3])
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Adjugate, so that `A * A.adj() = det(A) I`.
    pub fn adj(&self) -> Self {
        Self::new(self.m[1][1], -self.m[0][1], -self.m[1][0], self.m[0][0])
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        Some(self.adj().scale(1.0 / d))
    }

    /// Inverse of a matrix known to be invertible (e.g. unimodular).
    pub fn inv(&self) -> Self {
        self.inverse().expect("singular matrix")
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(s * self.m[0][0], s * self.m[0][1], s * self.m[1][0], s * self.m[1][1])
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        [self.m[0][0] * v[0] + self.m[0][1] * v[1], self.m[1][0] * v[0] + self.m[1][1] * v[1]]
    }

    /// Traceless part.
    pub fn traceless(&self) -> Self {
        *self - Self::IDENTITY.scale(0.5 * self.trace())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn dist(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|x| x.is_finite())
    }

    pub fn symmetry_defect(&self) -> f64 {
        (self.m[0][1] - self.m[1][0]).abs()
    }

    /// `0.5 * tr(self * other)`, the Killing-type pairing on sl(2).
    pub fn half_trace_pair(&self, other: &Self) -> f64 {
        0.5 * (*self * *other).trace()
    }

    /// Exponential of a traceless matrix in closed form.
    pub fn exp_traceless(&self) -> Self {
        // X^2 = -det(X) I
        let delta = -self.det();
        let (c, s) = if delta > 1e-12 {
            let r = libm::sqrt(delta);
            (libm::cosh(r), libm::sinh(r) / r)
        } else if delta < -1e-12 {
            let r = libm::sqrt(-delta);
            (libm::cos(r), libm::sin(r) / r)
        } else {
            // series to fourth order
            (1.0 + delta / 2.0 + delta * delta / 24.0, 1.0 + delta / 6.0 + delta * delta / 120.0)
        };
        Self::IDENTITY.scale(c) + self.scale(s)
    }

    /// Rotation by angle `phi` (counterclockwise on vectors).
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = (libm::sin(phi), libm::cos(phi));
        Self::new(c, -s, s, c)
    }

    /// Moebius action on the upper half-plane.
    pub fn mobius(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        let [[a, b], [c, d]] = self.m;
        (z * a + b) / (z * c + d)
    }
}

impl Index<(usize, usize)> for Mat2 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.m[i][j]
    }
}

impl Add for Mat2 {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(
            self.m[0][0] + r.m[0][0],
            self.m[0][1] + r.m[0][1],
            self.m[1][0] + r.m[1][0],
            self.m[1][1] + r.m[1][1],
        )
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl Sub for Mat2 {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(
            self.m[0][0] - r.m[0][0],
            self.m[0][1] - r.m[0][1],
            self.m[1][0] - r.m[1][0],
            self.m[1][1] - r.m[1][1],
        )
    }
}

impl Neg for Mat2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let a = &self.m;
        let b = &r.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Mul<Mat2> for f64 {
    type Output = Mat2;
    fn mul(self, m: Mat2) -> Mat2 {
        m.scale(self)
    }
}
