//! Linear complex structures on R^2 compatible with rho = dx ^ dy,
//! their tangent and cotangent vectors, and the SL(2,R) action.
//!
//! Conventions: `rho(u, v) = u^T OMEGA v`, `g_J = OMEGA J` (so `g_J0 = I`),
//! and the matrix of the bilinear form `sigma(., A .)` is `S A`.

use num_complex::Complex64;

use crate::error::{Error, Result};
pub use crate::mat2::{Mat2, Vec2};

/// Constructor tolerance, scaled by the size of the inputs.
pub const VALIDATION_TOL: f64 = 1e-12;

fn scaled_tol(scale: f64) -> f64 {
    VALIDATION_TOL * (1.0 + scale * scale)
}

/// A complex structure J with J^2 = -1, det J = 1 and J_21 > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearCx {
    j: Mat2,
}

impl LinearCx {
    pub const STANDARD: Self = Self { j: Mat2::J0 };

    pub fn new(j: Mat2) -> Result<Self> {
        if !j.is_finite() {
            return Err(Error::InvalidCx { residual: f64::INFINITY });
        }
        let residual = (j * j + Mat2::IDENTITY).max_abs().max(j.trace().abs());
        if residual > scaled_tol(j.max_abs()) || j.m[1][0] <= 0.0 {
            return Err(Error::InvalidCx { residual });
        }
        Ok(Self { j })
    }

    /// `J = [[a, -(1+a^2)/c], [c, -a]]`, `c > 0`.
    pub fn from_chart(a: f64, c: f64) -> Result<Self> {
        if !(c > 0.0) || !a.is_finite() || !c.is_finite() {
            return Err(Error::InvalidCx { residual: f64::INFINITY });
        }
        Ok(Self { j: Mat2::new(a, -(1.0 + a * a) / c, c, -a) })
    }

    pub fn chart(&self) -> (f64, f64) {
        (self.j.m[0][0], self.j.m[1][0])
    }

    pub fn mat(&self) -> Mat2 {
        self.j
    }

    /// `g_J = rho(., J .)`.
    pub fn metric(&self) -> Mat2 {
        Mat2::OMEGA * self.j
    }

    /// `g_J^{-1}`; `g_J` is unimodular so this is its adjugate.
    pub fn metric_inv(&self) -> Mat2 {
        self.metric().adj()
    }
}

impl Default for LinearCx {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// A symmetric bilinear form with `sigma(J., J.) = -sigma`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CotVec {
    s: Mat2,
}

impl CotVec {
    pub const ZERO: Self = Self { s: Mat2::ZERO };

    pub fn new(j: &LinearCx, s: Mat2) -> Result<Self> {
        if !s.is_finite() || s.symmetry_defect() != 0.0 {
            return Err(Error::InvalidCotVec { residual: s.symmetry_defect() });
        }
        let jm = j.mat();
        let residual = (jm.transpose() * s * jm + s).max_abs();
        if residual > scaled_tol(s.max_abs().max(1.0) * jm.max_abs()) {
            return Err(Error::InvalidCotVec { residual });
        }
        Ok(Self { s })
    }

    /// Symmetric matrix `[[p, q], [q, r]]` with `r` forced by tracelessness.
    pub fn from_chart(j: &LinearCx, p: f64, q: f64) -> Self {
        let (a, c) = j.chart();
        let b = -(1.0 + a * a) / c;
        let r = (b * p - 2.0 * a * q) / c;
        Self { s: Mat2::new(p, q, q, r) }
    }

    pub(crate) fn from_mat_unchecked(s: Mat2) -> Self {
        Self { s }
    }

    pub fn chart(&self) -> (f64, f64) {
        (self.s.m[0][0], self.s.m[0][1])
    }

    pub fn mat(&self) -> Mat2 {
        self.s
    }
}

/// A tangent vector to J(R^2) at J: `J' J + J J' = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TanVecJ {
    jd: Mat2,
}

impl TanVecJ {
    pub const ZERO: Self = Self { jd: Mat2::ZERO };

    pub fn new(j: &LinearCx, jd: Mat2) -> Result<Self> {
        if !jd.is_finite() {
            return Err(Error::InvalidTangent { residual: f64::INFINITY });
        }
        let jm = j.mat();
        let residual = (jd * jm + jm * jd).max_abs();
        if residual > scaled_tol(jd.max_abs().max(1.0) * jm.max_abs()) {
            return Err(Error::InvalidTangent { residual });
        }
        Ok(Self { jd })
    }

    /// Tangent vector from chart velocities (da, dc) at J.
    pub fn from_chart(j: &LinearCx, da: f64, dc: f64) -> Self {
        let (a, c) = j.chart();
        let db = -2.0 * a * da / c + (1.0 + a * a) * dc / (c * c);
        Self { jd: Mat2::new(da, db, dc, -da) }
    }

    pub(crate) fn from_mat_unchecked(jd: Mat2) -> Self {
        Self { jd }
    }

    pub fn chart(&self) -> (f64, f64) {
        (self.jd.m[0][0], self.jd.m[1][0])
    }

    pub fn mat(&self) -> Mat2 {
        self.jd
    }
}

pub fn metric_from_cx(j: &LinearCx) -> Mat2 {
    j.metric()
}

/// `<sigma, J'>_J = 1/2 tr(g^{-1} sigma J')`.
pub fn pairing(j: &LinearCx, s: &Mat2, jd: &Mat2) -> f64 {
    0.5 * (j.metric_inv() * *s * *jd).trace()
}

/// `<<sigma, sigma'>>_J = 1/2 tr(g^{-1} sigma g^{-1} sigma')`.
pub fn inner_cot(j: &LinearCx, s: &Mat2, s2: &Mat2) -> f64 {
    let gi = j.metric_inv();
    0.5 * (gi * *s * gi * *s2).trace()
}

/// `<<J', J''>> = 1/2 tr(J' J'')`.
pub fn inner_tan(jd: &Mat2, jd2: &Mat2) -> f64 {
    0.5 * (*jd * *jd2).trace()
}

/// `||sigma||_J^2 = -det(g^{-1} sigma)`.
pub fn cot_sq_norm(j: &LinearCx, s: &Mat2) -> f64 {
    -(j.metric_inv() * *s).det()
}

fn check_unimodular(a: &Mat2) -> Result<()> {
    let det = a.det();
    if !((det - 1.0).abs() <= 1e-9) {
        return Err(Error::NonUnimodular { det });
    }
    Ok(())
}

/// `A.(J, sigma) = (A J A^{-1}, A^{-T} sigma A^{-1})`.
pub fn sl2_act(a: &Mat2, j: &LinearCx, s: &CotVec) -> Result<(LinearCx, CotVec)> {
    check_unimodular(a)?;
    let ai = a.inv();
    let jn = LinearCx { j: *a * j.mat() * ai };
    let sn = ai.transpose() * s.mat() * ai;
    Ok((jn, CotVec { s: symmetrize(sn) }))
}

/// Differential of the action on tangent pairs.
pub fn sl2_act_tangent(a: &Mat2, jd: &Mat2, sd: &Mat2) -> Result<(Mat2, Mat2)> {
    check_unimodular(a)?;
    let ai = a.inv();
    Ok((*a * *jd * ai, symmetrize(ai.transpose() * *sd * ai)))
}

pub(crate) fn symmetrize(s: Mat2) -> Mat2 {
    let off = 0.5 * (s.m[0][1] + s.m[1][0]);
    Mat2::new(s.m[0][0], off, off, s.m[1][1])
}

/// `z = (a + i)/c`, the fixed point of J acting as a Moebius map.
pub fn to_halfplane(j: &LinearCx) -> (f64, f64) {
    let (a, c) = j.chart();
    (a / c, 1.0 / c)
}

pub fn from_halfplane(x: f64, y: f64) -> Result<LinearCx> {
    if !(y > 0.0) {
        return Err(Error::InvalidCx { residual: f64::INFINITY });
    }
    LinearCx::from_chart(x / y, 1.0 / y)
}

/// Differential of [`to_halfplane`]: `dz = (a' c - (a + i) c') / c^2`.
pub fn halfplane_differential(j: &LinearCx, jd: &Mat2) -> Complex64 {
    let (a, c) = j.chart();
    let (da, dc) = (jd.m[0][0], jd.m[1][0]);
    (Complex64::new(da * c, 0.0) - Complex64::new(a, 1.0) * dc) / (c * c)
}

/// Real and imaginary parts of `phi = sigma - i sigma(., J .)`.
pub fn quadratic_from_sigma(j: &LinearCx, s: &CotVec) -> (CotVec, CotVec) {
    let im = -(s.mat() * j.mat());
    (*s, CotVec { s: symmetrize(im) })
}
