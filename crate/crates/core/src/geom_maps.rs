//! Maps out of T*J(R^2): the Mess map, the circle action and its
//! Hamiltonian, the constant-curvature maps C and C_theta, the
//! change of variables to embedding data (h, B), torus data and the
//! Beltrami pairing.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jspace::{symmetrize, CotVec, LinearCx, TanVecJ, Vec2};
use crate::mat2::Mat2;
use crate::para_algebra::ParaComplex;
use crate::phk_core::{zero_section_form, CotangentPoint, TangentPair};

/// First fundamental form and shape operator of a spacelike surface.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbeddingData {
    pub h: Mat2,
    pub b: Mat2,
}

impl EmbeddingData {
    pub fn new(h: Mat2, b: Mat2) -> Result<Self> {
        check_spd(&h)?;
        let hb = h * b;
        let scale = 1.0 + h.max_abs() * b.max_abs();
        if hb.symmetry_defect() > 1e-11 * scale || b.trace().abs() > 1e-11 * (1.0 + b.max_abs()) {
            return Err(Error::InvalidShapeOperator { det: b.det() });
        }
        Ok(Self { h, b })
    }
}

/// A pair of complex structures `(J_l, J_r)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CxPair {
    pub jl: LinearCx,
    pub jr: LinearCx,
}

fn check_spd(m: &Mat2) -> Result<()> {
    let ok = m.is_finite()
        && m.symmetry_defect() <= 1e-12 * (1.0 + m.max_abs())
        && m.m[0][0] > 0.0
        && m.det() > 0.0;
    if ok {
        Ok(())
    } else {
        Err(Error::NotPositiveDefinite)
    }
}

fn cx(m: Mat2) -> LinearCx {
    LinearCx::new(m).unwrap_or_else(|_| {
        // Only reachable through extreme rounding; renormalize through the chart.
        let (a, c) = (0.5 * (m.m[0][0] - m.m[1][1]), m.m[1][0]);
        LinearCx::from_chart(a, c).expect("complex structure left the chart")
    })
}

/// `J_l = f J + g^{-1} sigma`, `J_r = f J - g^{-1} sigma`.
pub fn mess_map(pt: &CotangentPoint) -> CxPair {
    let fj = pt.jm().scale(pt.f());
    let k = pt.g_inv() * pt.sigma();
    CxPair { jl: cx(fj + k), jr: cx(fj - k) }
}

/// `B = h^{-1} sigma` with `h = (1 + f) g_J`.
fn shape_operator(pt: &CotangentPoint) -> Mat2 {
    (pt.g_inv() * pt.sigma()).scale(1.0 / (1.0 + pt.f()))
}

fn conjugate(n: &Mat2, j: &Mat2) -> Mat2 {
    n.inv() * *j * *n
}

/// Mess map through the conjugation form `(1 -+ J B)^{-1} J (1 -+ J B)`.
pub fn mess_map_conjugation(pt: &CotangentPoint) -> CxPair {
    let j = pt.jm();
    let jb = j * shape_operator(pt);
    CxPair { jl: cx(conjugate(&(Mat2::IDENTITY - jb), &j)), jr: cx(conjugate(&(Mat2::IDENTITY + jb), &j)) }
}

/// Closed-form differential of the Mess map.
pub fn mess_differential(pt: &CotangentPoint, v: &TangentPair) -> (TanVecJ, TanVecJ) {
    let f = pt.f();
    let j = pt.jm();
    let k = (pt.g_inv() * v.sigma0(pt)).scale(1.0 / f);
    let qp = k + v.jd;
    let qm = k - v.jd;
    let l = j.scale(pt.pair(&qp)) + qp.scale(f);
    let r = j.scale(pt.pair(&qm)) - qm.scale(f);
    (TanVecJ::from_mat_unchecked(l), TanVecJ::from_mat_unchecked(r))
}

/// Product para-complex structure `(J_l', J_r') -> (J_l', -J_r')`.
pub fn para_structure(d: &(Mat2, Mat2)) -> (Mat2, Mat2) {
    (d.0, -d.1)
}

/// `Omega^B = 1/2 (Omega_l + Omega_r) + tau/2 (Omega_l - Omega_r)` on
/// `J(R^2) x J(R^2)`; in idempotent coordinates this is `(Omega_l, Omega_r)`.
pub fn omega_b(p: &CxPair, v: &(Mat2, Mat2), w: &(Mat2, Mat2)) -> ParaComplex {
    let l = zero_section_form(&p.jl, &v.0, &w.0);
    let r = zero_section_form(&p.jr, &v.1, &w.1);
    ParaComplex::from_idempotent(l, r)
}

/// `R_theta(J, sigma) = (J, cos(theta) sigma + sin(theta) sigma(., J .))`.
pub fn circle_act(pt: &CotangentPoint, theta: f64) -> CotangentPoint {
    let s = pt.sigma();
    let sn = s.scale(libm::cos(theta)) + (s * pt.jm()).scale(libm::sin(theta));
    CotangentPoint::new(*pt.cx(), CotVec::from_mat_unchecked(symmetrize(sn)))
}

pub fn circle_differential(pt: &CotangentPoint, theta: f64, v: &TangentPair) -> TangentPair {
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    let sd = v.sd.scale(c) + (v.sigma0(pt) * pt.jm()).scale(s) + pt.g().scale(s * pt.pair(&v.jd));
    TangentPair { jd: v.jd, sd: symmetrize(sd), projected: v.projected }
}

/// Infinitesimal generator of the circle action, `(0, sigma(., J .))`.
pub fn circle_generator(pt: &CotangentPoint) -> TangentPair {
    TangentPair { jd: Mat2::ZERO, sd: symmetrize(pt.sigma() * pt.jm()), projected: false }
}

/// `H(J, sigma) = f(||sigma||)`.
pub fn hamiltonian(pt: &CotangentPoint) -> f64 {
    pt.f()
}

/// `C(J, sigma) = ((1 - B)^{-1} J (1 - B), (1 + B)^{-1} J (1 + B))`.
pub fn cc_map(pt: &CotangentPoint) -> CxPair {
    let j = pt.jm();
    let b = shape_operator(pt);
    CxPair { jl: cx(conjugate(&(Mat2::IDENTITY - b), &j)), jr: cx(conjugate(&(Mat2::IDENTITY + b), &j)) }
}

/// `C_theta = C o R_theta`.
pub fn c_theta(pt: &CotangentPoint, theta: f64) -> CxPair {
    cc_map(&circle_act(pt, theta))
}

/// Closed-form differential of [`cc_map`], obtained by differentiating
/// `N^{-1} J N` with `N = 1 -+ B` directly.
pub fn cc_differential(pt: &CotangentPoint, v: &TangentPair) -> (TanVecJ, TanVecJ) {
    let j = pt.jm();
    let s = pt.sigma();
    let f = pt.f();
    let gi = pt.g_inv();
    let dgi = -(gi * (Mat2::OMEGA * v.jd) * gi);
    // ||sigma||^2 = -det(S) because det g = 1
    let df = -(s.adj() * v.sd).trace() / (2.0 * f);
    let b = (gi * s).scale(1.0 / (1.0 + f));
    let db = (dgi * s + gi * v.sd).scale(1.0 / (1.0 + f)) - (gi * s).scale(df / ((1.0 + f) * (1.0 + f)));
    let dconj = |n: Mat2, dn: Mat2| {
        let ni = n.inv();
        -(ni * dn * ni * j * n) + ni * v.jd * n + ni * j * dn
    };
    let l = dconj(Mat2::IDENTITY - b, -db);
    let r = dconj(Mat2::IDENTITY + b, db);
    (TanVecJ::from_mat_unchecked(l), TanVecJ::from_mat_unchecked(r))
}

pub fn c_theta_differential(pt: &CotangentPoint, theta: f64, v: &TangentPair) -> (TanVecJ, TanVecJ) {
    cc_differential(&circle_act(pt, theta), &circle_differential(pt, theta, v))
}

/// `(J, sigma) -> (h, B)` with `h = (1 + f) g_J`, `B = h^{-1} sigma`.
pub fn change_vars_fwd(pt: &CotangentPoint) -> EmbeddingData {
    EmbeddingData { h: pt.g().scale(1.0 + pt.f()), b: shape_operator(pt) }
}

/// `(h, B) -> (g, sigma) = ((1 + det B)/2 h, h B)`.
pub fn change_vars_bwd(h: &Mat2, b: &Mat2) -> Result<(Mat2, Mat2)> {
    let data = EmbeddingData::new(*h, *b)?;
    let det = data.b.det();
    if !(det > -1.0 && det <= 1e-15 * (1.0 + b.max_abs() * b.max_abs())) {
        return Err(Error::InvalidShapeOperator { det });
    }
    Ok((h.scale(0.5 * (1.0 + det)), symmetrize(*h * *b)))
}

/// Flat maximal-surface data of a torus: `h = ||sigma|| g_J`, `B = h^{-1} sigma`.
pub fn torus_normalize(pt: &CotangentPoint) -> Result<EmbeddingData> {
    let n = libm::sqrt(pt.sigma_sq_norm().max(0.0));
    if n < 1e-14 {
        return Err(Error::ZeroDifferential);
    }
    let h = pt.g().scale(n);
    Ok(EmbeddingData { h, b: (pt.g_inv() * pt.sigma()).scale(1.0 / n) })
}

/// Spatial part of `-dt^2 + h((cos t + sin t B) ., (cos t + sin t B) .)`.
pub fn metric_family(data: &EmbeddingData, t: f64) -> Mat2 {
    let a = Mat2::IDENTITY.scale(libm::cos(t)) + data.b.scale(libm::sin(t));
    symmetrize(a.transpose() * data.h * a)
}

/// Columns form an h-orthonormal eigenbasis of B, positive eigenvalue first.
pub fn shape_eigenbasis(data: &EmbeddingData) -> Result<Mat2> {
    let k = libm::sqrt((-data.b.det()).max(0.0));
    if k == 0.0 {
        return Err(Error::ZeroDifferential);
    }
    let eig = |lambda: f64| -> Vec2 {
        // kernel of B - lambda I; pick the better conditioned row
        let m = data.b - Mat2::IDENTITY.scale(lambda);
        let r0 = [-m.m[0][1], m.m[0][0]];
        let r1 = [-m.m[1][1], m.m[1][0]];
        let v = if libm::hypot(r0[0], r0[1]) >= libm::hypot(r1[0], r1[1]) { r0 } else { r1 };
        let hv = data.h.apply(v);
        let n = libm::sqrt(v[0] * hv[0] + v[1] * hv[1]);
        [v[0] / n, v[1] / n]
    };
    let mut p = Mat2::from_cols(eig(k), eig(-k));
    if p.det() < 0.0 {
        p = Mat2::from_cols(p.col(0), [-p.m[0][1], -p.m[1][1]]);
    }
    Ok(p)
}

/// `T` with `T J T^{-1} = J0` and `T^{-T} sigma T^{-1} = diag(1, -1)`,
/// together with the lattice `(T e1, T e2)`.
pub fn torus_lattice_normalize(pt: &CotangentPoint) -> Result<(Mat2, [Vec2; 2])> {
    if pt.sigma_sq_norm() < 1e-28 {
        return Err(Error::ZeroDifferential);
    }
    // M sends i to z = x + iy and conjugates J0 to J.
    let (a, c) = pt.cx().chart();
    let (x, y) = (a / c, 1.0 / c);
    let sy = libm::sqrt(y);
    let m = Mat2::new(sy, x / sy, 0.0, 1.0 / sy);
    let s1 = m.transpose() * pt.sigma() * m;
    let (p, q) = (s1.m[0][0], s1.m[0][1]);
    let rho2 = libm::sqrt(p * p + q * q);
    let psi = -0.5 * libm::atan2(q, p);
    let t = Mat2::rotation(psi).scale(libm::sqrt(rho2)) * m.inv();
    Ok((t, [t.col(0), t.col(1)]))
}

/// `h_l = h((1 - JB) ., (1 - JB) .)`, `h_r = h((1 + JB) ., (1 + JB) .)`.
pub fn left_right_metrics(data: &EmbeddingData, j: &LinearCx) -> (Mat2, Mat2) {
    let jb = j.mat() * data.b;
    let l = Mat2::IDENTITY - jb;
    let r = Mat2::IDENTITY + jb;
    (symmetrize(l.transpose() * data.h * l), symmetrize(r.transpose() * data.h * r))
}

/// Complex structure of the conformal class of `m`: `g_J = m / sqrt(det m)`.
pub fn cx_of_metric(m: &Mat2) -> Result<LinearCx> {
    check_spd(m)?;
    let j = -(Mat2::OMEGA * *m).scale(1.0 / libm::sqrt(m.det()));
    Ok(cx(j))
}

/// `(phi . nu')(e1, e2)` with `nu' = J' J / 2` and `{e1, e2 = J e1}` a
/// g_J-orthonormal basis; `phi(u, v) = u^T Re v + i u^T Im v`.
pub fn beltrami_pairing(j: &LinearCx, phi_re: &Mat2, phi_im: &Mat2, jd: &Mat2) -> Complex64 {
    let g = j.metric();
    let e1 = [1.0 / libm::sqrt(g.m[0][0]), 0.0];
    let e2 = j.mat().apply(e1);
    let nu = (*jd * j.mat()).scale(0.5);
    let phi = |u: Vec2, v: Vec2| {
        let bil = |m: &Mat2| {
            let mv = m.apply(v);
            u[0] * mv[0] + u[1] * mv[1]
        };
        Complex64::new(bil(phi_re), bil(phi_im))
    };
    (phi(nu.apply(e1), e2) - phi(nu.apply(e2), e1)) / Complex64::new(0.0, 2.0)
}
