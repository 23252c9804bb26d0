//! The para-hyperKähler structure (g, I, J, K) on T*J(R^2).
//!
//! A point is `(J, sigma)`; a tangent vector is `(J', sigma')` with
//! `tr(g^{-1} sigma') = -2 <sigma, J J'>`. The global chart is
//! `(a, c, p, q)`, see [`LinearCx::from_chart`] and [`CotVec::from_chart`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jspace::{
    cot_sq_norm, inner_cot, inner_tan, pairing, sl2_act, sl2_act_tangent, symmetrize, CotVec, LinearCx,
    TanVecJ,
};
use crate::linalg::Mat4;
use crate::mat2::Mat2;

/// Trace-constraint residual accepted silently.
pub const CONSTRAINT_TOL: f64 = 1e-11;
/// Trace-constraint residual repaired by projection; beyond this it is an error.
pub const PROJECTION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    I,
    J,
    K,
}

impl Structure {
    pub const ALL: [Structure; 3] = [Structure::I, Structure::J, Structure::K];

    pub fn name(self) -> &'static str {
        match self {
            Structure::I => "I",
            Structure::J => "J",
            Structure::K => "K",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CotangentPoint {
    j: LinearCx,
    s: CotVec,
    n2: f64,
    f: f64,
}

impl CotangentPoint {
    pub fn new(j: LinearCx, s: CotVec) -> Self {
        let n2 = cot_sq_norm(&j, &s.mat()).max(0.0);
        Self { j, s, n2, f: libm::sqrt(1.0 + n2) }
    }

    pub fn from_chart(x: [f64; 4]) -> Result<Self> {
        let j = LinearCx::from_chart(x[0], x[1])?;
        Ok(Self::new(j, CotVec::from_chart(&j, x[2], x[3])))
    }

    pub fn chart(&self) -> [f64; 4] {
        let (a, c) = self.j.chart();
        let (p, q) = self.s.chart();
        [a, c, p, q]
    }

    pub fn cx(&self) -> &LinearCx {
        &self.j
    }

    pub fn cot(&self) -> &CotVec {
        &self.s
    }

    pub fn jm(&self) -> Mat2 {
        self.j.mat()
    }

    pub fn sigma(&self) -> Mat2 {
        self.s.mat()
    }

    pub fn g(&self) -> Mat2 {
        self.j.metric()
    }

    pub fn g_inv(&self) -> Mat2 {
        self.j.metric_inv()
    }

    /// `f = sqrt(1 + ||sigma||^2)`.
    pub fn f(&self) -> f64 {
        self.f
    }

    /// `||sigma||_J^2`.
    pub fn sigma_sq_norm(&self) -> f64 {
        self.n2
    }

    /// `<sigma, X>` for an arbitrary matrix X.
    pub fn pair(&self, x: &Mat2) -> f64 {
        pairing(&self.j, &self.s.mat(), x)
    }
}

/// Tangent vector `(J', sigma')` at a [`CotangentPoint`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentPair {
    pub jd: Mat2,
    pub sd: Mat2,
    /// Set when a small trace-constraint violation was projected away.
    pub projected: bool,
}

impl TangentPair {
    pub const ZERO: Self = Self { jd: Mat2::ZERO, sd: Mat2::ZERO, projected: false };

    /// Validates `J'` and the trace constraint; residuals up to
    /// [`PROJECTION_TOL`] are projected and flagged.
    pub fn new(pt: &CotangentPoint, jd: Mat2, sd: Mat2) -> Result<Self> {
        TanVecJ::new(pt.cx(), jd)?;
        if !sd.is_finite() {
            return Err(Error::ConstraintViolation { residual: f64::INFINITY });
        }
        let sym = sd.symmetry_defect();
        if sym > PROJECTION_TOL * (1.0 + sd.max_abs()) {
            return Err(Error::ConstraintViolation { residual: sym });
        }
        let sd = symmetrize(sd);
        let gi = pt.g_inv();
        let residual = (gi * sd).trace() + 2.0 * pt.pair(&(pt.jm() * jd));
        let scale = 1.0 + gi.max_abs() * (sd.max_abs() + pt.sigma().max_abs() * jd.max_abs());
        if residual.abs() <= CONSTRAINT_TOL * scale {
            Ok(Self { jd, sd, projected: sym != 0.0 })
        } else if residual.abs() <= PROJECTION_TOL * scale {
            let sd = sd - pt.g().scale(0.5 * residual);
            Ok(Self { jd, sd, projected: true })
        } else {
            Err(Error::ConstraintViolation { residual })
        }
    }

    /// Tangent vector from chart velocities `(a', c', p', q')`.
    pub fn from_chart(pt: &CotangentPoint, v: [f64; 4]) -> Self {
        let [a, c, p, q] = pt.chart();
        let [da, dc, dp, dq] = v;
        let jd = TanVecJ::from_chart(pt.cx(), da, dc).mat();
        let b = -(1.0 + a * a) / c;
        let db_da = -2.0 * a / c;
        let db_dc = (1.0 + a * a) / (c * c);
        let r_a = (db_da * p - 2.0 * q) / c;
        let r_c = db_dc * p / c - (b * p - 2.0 * a * q) / (c * c);
        let dr = r_a * da + r_c * dc + (b / c) * dp - (2.0 * a / c) * dq;
        Self { jd, sd: Mat2::new(dp, dq, dq, dr), projected: false }
    }

    pub fn chart(&self) -> [f64; 4] {
        [self.jd.m[0][0], self.jd.m[1][0], self.sd.m[0][0], self.sd.m[0][1]]
    }

    /// g_J-traceless part of `sigma'`.
    pub fn sigma0(&self, pt: &CotangentPoint) -> Mat2 {
        self.sd - pt.g().scale(0.5 * (pt.g_inv() * self.sd).trace())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { jd: self.jd + o.jd, sd: self.sd + o.sd, projected: self.projected || o.projected }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { jd: self.jd.scale(s), sd: self.sd.scale(s), projected: self.projected }
    }

    pub fn dist(&self, o: &Self) -> f64 {
        self.jd.dist(&o.jd).max(self.sd.dist(&o.sd))
    }

    pub fn max_abs(&self) -> f64 {
        self.jd.max_abs().max(self.sd.max_abs())
    }
}

/// `(J', sigma') -> (J', g^{-1} sigma'_0)`.
pub fn tangent_decompose(pt: &CotangentPoint, v: &TangentPair) -> (TanVecJ, TanVecJ) {
    (TanVecJ::from_mat_unchecked(v.jd), TanVecJ::from_mat_unchecked(pt.g_inv() * v.sigma0(pt)))
}

/// Inverse of [`tangent_decompose`]: `sigma' = g(., K' .) - <sigma, J J'> g`.
pub fn tangent_compose(pt: &CotangentPoint, jd: &TanVecJ, kd: &TanVecJ) -> TangentPair {
    let g = pt.g();
    let sd = symmetrize(g * kd.mat() - g.scale(pt.pair(&(pt.jm() * jd.mat()))));
    TangentPair { jd: jd.mat(), sd, projected: false }
}

pub fn metric_g(pt: &CotangentPoint, v: &TangentPair, w: &TangentPair) -> f64 {
    let f = pt.f();
    f * inner_tan(&v.jd, &w.jd) - inner_cot(pt.cx(), &v.sigma0(pt), &w.sigma0(pt)) / f
}

pub fn apply_structure(l: Structure, pt: &CotangentPoint, v: &TangentPair) -> TangentPair {
    let f = pt.f();
    let j = pt.jm();
    let g = pt.g();
    let gi = pt.g_inv();
    let s0 = v.sigma0(pt);
    let (jd, sd) = match l {
        Structure::I => (-(j * v.jd), -(s0 * j) - g.scale(pt.pair(&v.jd))),
        Structure::J => {
            let c = inner_cot(pt.cx(), &pt.sigma(), &(s0 * j)) / f;
            ((gi * s0).scale(1.0 / f), (g * v.jd).scale(f) + g.scale(c))
        }
        Structure::K => {
            let c = inner_cot(pt.cx(), &pt.sigma(), &s0) / f;
            (-(j * gi * s0).scale(1.0 / f), -(g * v.jd * j).scale(f) - g.scale(c))
        }
    };
    TangentPair { jd, sd: symmetrize(sd), projected: v.projected }
}

/// `omega_X(v, w) = g(v, X w)`.
pub fn eval_form(x: Structure, pt: &CotangentPoint, v: &TangentPair, w: &TangentPair) -> f64 {
    metric_g(pt, v, &apply_structure(x, pt, w))
}

/// The same forms from their closed expressions.
pub fn eval_form_explicit(x: Structure, pt: &CotangentPoint, v: &TangentPair, w: &TangentPair) -> f64 {
    let j = pt.jm();
    let (s0, s0w) = (v.sigma0(pt), w.sigma0(pt));
    let p = |s: &Mat2, jd: &Mat2| pairing(pt.cx(), s, jd);
    match x {
        Structure::I => {
            let f = pt.f();
            -f * inner_tan(&v.jd, &(j * w.jd)) + inner_cot(pt.cx(), &s0, &(s0w * j)) / f
        }
        Structure::J => p(&s0w, &v.jd) - p(&s0, &w.jd),
        Structure::K => p(&s0w, &(j * v.jd)) - p(&s0, &(j * w.jd)),
    }
}

/// `omega^C = omega_J + i omega_K`.
pub fn eval_omega_c(pt: &CotangentPoint, v: &TangentPair, w: &TangentPair) -> Complex64 {
    Complex64::new(eval_form(Structure::J, pt, v, w), eval_form(Structure::K, pt, v, w))
}

/// `lambda^C(J', sigma') = <sigma, J'> + i <sigma, J J'>`.
pub fn liouville_c(pt: &CotangentPoint, v: &TangentPair) -> Complex64 {
    Complex64::new(pt.pair(&v.jd), pt.pair(&(pt.jm() * v.jd)))
}

/// Symplectic form of the zero section, `-<<J', J J''>> = -1/2 tr(J' J J'')`.
pub fn zero_section_form(j: &LinearCx, jd: &Mat2, jd2: &Mat2) -> f64 {
    -0.5 * (*jd * j.mat() * *jd2).trace()
}

/// Gram matrix of g in the chart basis.
pub fn gram_matrix(pt: &CotangentPoint) -> Mat4 {
    let basis = chart_basis(pt);
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            out[i][k] = metric_g(pt, &basis[i], &basis[k]);
        }
    }
    out
}

/// Numbers of positive and negative eigenvalues of the Gram matrix.
pub fn signature(pt: &CotangentPoint) -> (usize, usize) {
    let ev = crate::linalg::sym_eigenvalues(&gram_matrix(pt));
    let scale = ev.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let pos = ev.iter().filter(|&&x| x > 1e-12 * scale).count();
    let neg = ev.iter().filter(|&&x| x < -1e-12 * scale).count();
    (pos, neg)
}

pub fn chart_basis(pt: &CotangentPoint) -> [TangentPair; 4] {
    let e = |i: usize| {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        TangentPair::from_chart(pt, v)
    };
    [e(0), e(1), e(2), e(3)]
}

/// Matrix of an endomorphism in the chart basis (columns are images).
pub fn structure_matrix(l: Structure, pt: &CotangentPoint) -> Mat4 {
    let basis = chart_basis(pt);
    let mut out = [[0.0; 4]; 4];
    for (k, b) in basis.iter().enumerate() {
        let img = apply_structure(l, pt, b).chart();
        for i in 0..4 {
            out[i][k] = img[i];
        }
    }
    out
}

pub fn sl2_act_point(a: &Mat2, pt: &CotangentPoint) -> Result<CotangentPoint> {
    let (j, s) = sl2_act(a, pt.cx(), pt.cot())?;
    Ok(CotangentPoint::new(j, s))
}

pub fn sl2_act_pair(a: &Mat2, v: &TangentPair) -> Result<TangentPair> {
    let (jd, sd) = sl2_act_tangent(a, &v.jd, &v.sd)?;
    Ok(TangentPair { jd, sd, projected: v.projected })
}
