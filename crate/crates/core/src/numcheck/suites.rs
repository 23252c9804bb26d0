//! Named verification suites over random samples.

use super::fd::{check_step, directional, fd_exterior_derivative_1, fd_exterior_derivative_2, nijenhuis};
use super::sample::Sampler;
use crate::ads3::{
    ads_metric, b_angle, b_length, conjugate_configuration, parallel_transport, signed_distance,
    transport_residual, verify_common_perpendicular, AdSElement, AdSTangent, BMat2,
};
use crate::error::{Error, Result};
use crate::geom_maps::{
    beltrami_pairing, c_theta, c_theta_differential, cc_map, change_vars_bwd, change_vars_fwd, circle_act,
    circle_differential, circle_generator, cx_of_metric, hamiltonian, left_right_metrics, mess_differential,
    mess_map, metric_family, omega_b, para_structure, shape_eigenbasis, torus_lattice_normalize,
    torus_normalize, CxPair,
};
use crate::jspace::{
    from_halfplane, inner_tan, quadratic_from_sigma, sl2_act, to_halfplane, CotVec, LinearCx, TanVecJ,
};
use crate::linalg::Mat4;
use crate::mat2::Mat2;
use crate::moment_maps::{eta, eta_c, infinitesimal_action, verify_moment};
use crate::para_algebra::{b_analytic, Analytic, ParaComplex};
use crate::phk_core::{
    apply_structure, chart_basis, eval_form, eval_omega_c, liouville_c, metric_g, signature, sl2_act_pair,
    sl2_act_point, structure_matrix, CotangentPoint, Structure, TangentPair,
};
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
use num_complex::Complex64;

pub const SUITES: [&str; 6] = ["algebra", "phk", "pullbacks", "moment", "ads", "torus"];

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub samples: usize,
    pub seed: u64,
    pub step: f64,
    pub max_residual: f64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub samples: usize,
    pub seed: u64,
    pub step: f64,
    /// Per-check tolerance overrides keyed by check name.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { samples: 1000, seed: 42, step: super::fd::DEFAULT_STEP, tolerances: BTreeMap::new() }
    }
}

struct Runner<'a> {
    cfg: &'a SuiteConfig,
    checks: Vec<CheckResult>,
}

impl Runner<'_> {
    fn run_n(&mut self, name: &str, tol: f64, n: usize, mut f: impl FnMut(&mut Sampler) -> Result<f64>) {
        let mut s = Sampler::for_check(self.cfg.seed, name);
        let mut max = 0.0f64;
        for _ in 0..n {
            let r = match f(&mut s) {
                Ok(r) if r.is_nan() => f64::INFINITY,
                Ok(r) => r,
                Err(_) => f64::INFINITY,
            };
            max = max.max(r);
        }
        let tolerance = self.cfg.tolerances.get(name).copied().unwrap_or(tol);
        self.checks.push(CheckResult {
            name: name.to_string(),
            samples: n,
            max_residual: max,
            tolerance,
            pass: max <= tolerance,
        });
    }

    fn run(&mut self, name: &str, tol: f64, f: impl FnMut(&mut Sampler) -> Result<f64>) {
        let n = self.cfg.samples;
        self.run_n(name, tol, n, f)
    }

    fn once(&mut self, name: &str, tol: f64, f: impl FnMut(&mut Sampler) -> Result<f64>) {
        self.run_n(name, tol, 1, f)
    }
}

/// `|a - b| / (1 + |a| + |b|)`.
fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs() + b.abs())
}

/// [`rel`] for bilinear quantities, scaled by the operand sizes `scale`.
fn rel_bi(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs() + b.abs() + scale)
}

fn rel_c(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + a.norm() + b.norm())
}

fn rel_m(a: &Mat2, b: &Mat2) -> f64 {
    a.dist(b) / (1.0 + a.max_abs() + b.max_abs())
}

fn rel_t(a: &TangentPair, b: &TangentPair) -> f64 {
    a.dist(b) / (1.0 + a.max_abs() + b.max_abs())
}

fn rel_pair(a: &(Mat2, Mat2), b: &(Mat2, Mat2)) -> f64 {
    rel_m(&a.0, &b.0).max(rel_m(&a.1, &b.1))
}

fn mats(d: &(TanVecJ, TanVecJ)) -> (Mat2, Mat2) {
    (d.0.mat(), d.1.mat())
}

fn max_abs<const N: usize, const M: usize>(a: &[[f64; M]; N]) -> f64 {
    crate::linalg::max_abs(a)
}

fn point_at(y: &[f64; 4]) -> Option<CotangentPoint> {
    CotangentPoint::from_chart(*y).ok()
}

fn pair_chart(p: &CxPair) -> [f64; 4] {
    let (al, cl) = p.jl.chart();
    let (ar, cr) = p.jr.chart();
    [al, cl, ar, cr]
}

fn pair_velocity(d: &(TanVecJ, TanVecJ)) -> [f64; 4] {
    let (l, r) = (d.0.mat(), d.1.mat());
    [l.m[0][0], l.m[1][0], r.m[0][0], r.m[1][0]]
}

/// Chart components `w(d_i, d_j)` of a 2-form.
fn form_components(x: Structure, pt: &CotangentPoint) -> Mat4 {
    let b = chart_basis(pt);
    core::array::from_fn(|i| core::array::from_fn(|j| eval_form(x, pt, &b[i], &b[j])))
}

fn form_field(x: Structure) -> impl Fn(&[f64; 4]) -> Mat4 {
    move |y| point_at(y).map(|p| form_components(x, &p)).unwrap_or([[f64::NAN; 4]; 4])
}

/// `dH(v) = -tr(adj(sigma) sigma') / 2f`, using `|sigma|^2 = -det sigma`.
fn dh(pt: &CotangentPoint, v: &TangentPair) -> f64 {
    -(pt.sigma().adj() * v.sd).trace() / (2.0 * pt.f())
}

fn algebra(r: &mut Runner) {
    r.run("algebra.product_components", 1e-12, |s| {
        let (x, y) = (s.para(10.0), s.para(10.0));
        let p = x * y;
        let (a, b) = (x.plus() * y.plus(), x.minus() * y.minus());
        Ok(rel(p.plus(), a).max(rel(p.minus(), b)))
    });
    r.run("algebra.idempotent_round_trip", 1e-14, |s| {
        let x = s.para(10.0);
        let y = ParaComplex::from_idempotent(x.plus(), x.minus());
        Ok((y.re - x.re).abs().max((y.im - x.im).abs()) / (1.0 + x.re.abs() + x.im.abs()))
    });
    r.run("algebra.conj_norm", 1e-14, |s| {
        let x = s.para(10.0);
        let n = x.conj() * x;
        let scale = 1.0 + x.re * x.re + x.im * x.im;
        Ok((n.re - x.sq_norm()).abs().max(n.im.abs()) / scale)
    });
    r.run("algebra.division", 1e-13, |s| {
        let x = s.para(10.0);
        let sign = |s: &mut Sampler| if s.uniform(0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
        let (p, m) = (sign(s) * s.uniform(0.5, 3.0), sign(s) * s.uniform(0.5, 3.0));
        let y = ParaComplex::from_idempotent(p, m);
        let q = (x * y).checked_div(y)?;
        Ok((q.re - x.re).abs().max((q.im - x.im).abs()) / (1.0 + x.re.abs() + x.im.abs()))
    });
    r.run("algebra.analytic_real", 1e-14, |s| {
        let mut worst = 0.0f64;
        for f in Analytic::ALL {
            let x = match f {
                Analytic::Arccosh => s.uniform(1.0, 5.0),
                Analytic::Log | Analytic::Sqrt => s.uniform(0.01, 5.0),
                _ => s.uniform(-3.0, 3.0),
            };
            let y = b_analytic(f, ParaComplex::new(x, 0.0))?;
            let expect = f.eval_real(x).ok_or(Error::UnknownSuite)?;
            worst = worst.max(rel(y.re, expect)).max(y.im.abs() / (1.0 + expect.abs()));
        }
        Ok(worst)
    });
    r.run("algebra.exp_components", 1e-13, |s| {
        // exp(a + tau b) = e^a (cosh b + tau sinh b)
        let x = s.para(3.0);
        let y = b_analytic(Analytic::Exp, x)?;
        let e = libm::exp(x.re);
        let (c, sh) = (e * libm::cosh(x.im), e * libm::sinh(x.im));
        Ok(rel(y.re, c).max(rel(y.im, sh)))
    });
    r.run("algebra.cos_angle_sum", 1e-12, |s| {
        let (t, d) = (s.angle(), s.angle());
        let c = b_analytic(Analytic::Cos, ParaComplex::new(t, d))?;
        let re = libm::cos(t) * libm::cos(d);
        let im = -libm::sin(t) * libm::sin(d);
        Ok((c.re - re).abs().max((c.im - im).abs()))
    });
}

fn phk(r: &mut Runner) {
    let h = r.cfg.step;
    r.run("phk.para_quaternionic", 1e-11, |s| {
        let pt = s.point();
        let v = s.tangent(&pt);
        let ap = |l, w: &TangentPair| apply_structure(l, &pt, w);
        let (iv, jv, kv) = (ap(Structure::I, &v), ap(Structure::J, &v), ap(Structure::K, &v));
        let res = [
            rel_t(&ap(Structure::I, &iv), &v.scale(-1.0)),
            rel_t(&ap(Structure::J, &jv), &v),
            rel_t(&ap(Structure::K, &kv), &v),
            rel_t(&ap(Structure::I, &jv), &kv),
            rel_t(&ap(Structure::J, &iv), &kv.scale(-1.0)),
        ];
        Ok(res.iter().fold(0.0f64, |m, x| m.max(*x)))
    });
    r.run("phk.compatibility", 1e-11, |s| {
        let pt = s.point();
        let (v, w) = (s.tangent(&pt), s.tangent(&pt));
        let g = metric_g(&pt, &v, &w);
        let mut worst = 0.0f64;
        for (l, sign) in [(Structure::I, 1.0), (Structure::J, -1.0), (Structure::K, -1.0)] {
            let gx = metric_g(&pt, &apply_structure(l, &pt, &v), &apply_structure(l, &pt, &w));
            worst = worst.max(rel(gx, sign * g));
        }
        Ok(worst)
    });
    r.run("phk.form_antisymmetry", 1e-12, |s| {
        let pt = s.point();
        let (v, w) = (s.tangent(&pt), s.tangent(&pt));
        let sc = v.max_abs() * w.max_abs();
        let mut worst = 0.0f64;
        for l in Structure::ALL {
            worst = worst.max(rel_bi(eval_form(l, &pt, &v, &w), -eval_form(l, &pt, &w, &v), sc));
        }
        Ok(worst)
    });
    r.run("phk.signature", 0.0, |s| {
        let pt = s.point();
        Ok(if signature(&pt) == (2, 2) { 0.0 } else { 1.0 })
    });
    r.run("phk.sl2_invariance", 1e-10, |s| {
        let pt = s.point();
        let (v, w) = (s.tangent(&pt), s.tangent(&pt));
        let a = s.unimodular();
        let q = sl2_act_point(&a, &pt)?;
        let (av, aw) = (sl2_act_pair(&a, &v)?, sl2_act_pair(&a, &w)?);
        let sc = v.max_abs() * w.max_abs() + av.max_abs() * aw.max_abs();
        let mut worst = rel_bi(metric_g(&q, &av, &aw), metric_g(&pt, &v, &w), sc);
        for l in Structure::ALL {
            worst = worst.max(rel_bi(eval_form(l, &q, &av, &aw), eval_form(l, &pt, &v, &w), sc));
        }
        let (l1, l0) = (liouville_c(&q, &av), liouville_c(&pt, &v));
        let sl = v.max_abs() + av.max_abs();
        Ok(worst.max((l1 - l0).norm() / (1.0 + l1.norm() + l0.norm() + sl)))
    });
    r.run("phk.tangent_product", 1e-11, |s| {
        let (a, c) = s.cx_chart();
        let j = LinearCx::from_chart(a, c)?;
        let x = TanVecJ::from_chart(&j, s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0)).mat();
        let y = TanVecJ::from_chart(&j, s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0)).mat();
        let rhs = Mat2::IDENTITY.scale(inner_tan(&x, &y)) - j.mat().scale(inner_tan(&(j.mat() * x), &y));
        Ok(rel_m(&(x * y), &rhs))
    });
    r.run("phk.triple_trace", 1e-11, |s| {
        let (a, c) = s.cx_chart();
        let j = LinearCx::from_chart(a, c)?;
        let mut t = || TanVecJ::from_chart(&j, s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0)).mat();
        let (x, y, z) = (t(), t(), t());
        Ok((x * y * z).trace().abs() / (1.0 + x.max_abs() * y.max_abs() * z.max_abs()))
    });
    r.run("phk.cotangent_transform", 1e-11, |s| {
        let pt = s.point();
        let a = s.unimodular();
        let (jn, sn) = sl2_act(&a, pt.cx(), pt.cot())?;
        let lhs = jn.metric_inv() * sn.mat();
        let rhs = a * pt.g_inv() * pt.sigma() * a.inv();
        Ok(rel_m(&lhs, &rhs))
    });
    r.run("phk.halfplane_equivariance", 1e-10, |s| {
        let (a, c) = s.cx_chart();
        let j = LinearCx::from_chart(a, c)?;
        let m = s.unimodular();
        let (jn, _) = sl2_act(&m, &j, &CotVec::ZERO)?;
        let (x, y) = to_halfplane(&j);
        let (xn, yn) = to_halfplane(&jn);
        let w = m.mobius(Complex64::new(x, y));
        Ok(rel_c(Complex64::new(xn, yn), w))
    });
    r.run("phk.halfplane_metric", 1e-9, |s| {
        let (a, c) = s.cx_chart();
        let (da, dc) = (s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0));
        let j = LinearCx::from_chart(a, c)?;
        let jd = TanVecJ::from_chart(&j, da, dc).mat();
        check_step(&[a, c], h)?;
        let z = |x: &[f64; 2]| match LinearCx::from_chart(x[0], x[1]) {
            Ok(j) => {
                let (x, y) = to_halfplane(&j);
                [x, y]
            }
            Err(_) => [f64::NAN; 2],
        };
        let dz = directional(&z, &[a, c], &[da, dc], h);
        let (_, y) = to_halfplane(&j);
        let back = from_halfplane(to_halfplane(&j).0, y)?;
        let hyp = (dz[0] * dz[0] + dz[1] * dz[1]) / (y * y);
        Ok(rel(inner_tan(&jd, &jd), hyp).max(rel_m(&back.mat(), &j.mat())))
    });
    r.run("phk.zero_section", 1e-12, |s| {
        let (a, c) = s.cx_chart();
        let j = LinearCx::from_chart(a, c)?;
        let pt = CotangentPoint::new(j, CotVec::ZERO);
        let v = TangentPair::from_chart(&pt, [s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0), 0.0, 0.0]);
        let w = TangentPair::from_chart(&pt, [s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0), 0.0, 0.0]);
        let g = rel(metric_g(&pt, &v, &w), inner_tan(&v.jd, &w.jd));
        let wi = eval_form(Structure::I, &pt, &v, &w);
        let o1 = rel(wi, -inner_tan(&v.jd, &(j.mat() * w.jd)));
        let o2 = rel(wi, crate::phk_core::zero_section_form(&j, &v.jd, &w.jd));
        Ok(g.max(o1).max(o2))
    });
    r.run("phk.closedness", 1e-5, |s| {
        let x = s.chart();
        let mut worst = 0.0f64;
        for l in Structure::ALL {
            let d = fd_exterior_derivative_2(form_field(l), &x, h)?;
            worst = worst.max(max_abs(&d.map(|m| max_abs(&m)).map(|v| [v])));
        }
        Ok(worst)
    });
    r.run("phk.nijenhuis", 1e-5, |s| {
        let x = s.chart();
        let mut worst = 0.0f64;
        for l in Structure::ALL {
            let field = move |y: &[f64; 4]| {
                point_at(y).map(|p| structure_matrix(l, &p)).unwrap_or([[f64::NAN; 4]; 4])
            };
            let n = nijenhuis(field, &x, h)?;
            worst = worst.max(max_abs(&n.map(|m| max_abs(&m)).map(|v| [v])));
        }
        Ok(worst)
    });
    r.run("phk.liouville", 1e-6, |s| {
        let x = s.chart();
        let pt = CotangentPoint::from_chart(x)?;
        let lam = |y: &[f64; 4]| match point_at(y) {
            Some(p) => {
                let b = chart_basis(&p);
                core::array::from_fn(|i| liouville_c(&p, &b[i]))
            }
            None => [Complex64::new(f64::NAN, 0.0); 4],
        };
        let re = fd_exterior_derivative_1(|y| lam(y).map(|z| z.re), &x, h)?;
        let im = fd_exterior_derivative_1(|y| lam(y).map(|z| z.im), &x, h)?;
        let oj = form_components(Structure::J, &pt);
        let ok = form_components(Structure::K, &pt);
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((re[i][j] + oj[i][j]).abs()).max((im[i][j] + ok[i][j]).abs());
            }
        }
        Ok(worst)
    });
}

fn pullbacks(r: &mut Runner) {
    let h = r.cfg.step;
    r.run("pullbacks.mess_forms", 1e-10, |s| {
        let pt = s.point();
        let (v, w) = (s.tangent(&pt), s.tangent(&pt));
        let m = mess_map(&pt);
        let (dv, dw) = (mats(&mess_differential(&pt, &v)), mats(&mess_differential(&pt, &w)));
        let ob = omega_b(&m, &dv, &dw);
        // Omega_l + Omega_r = 2 Re, Omega_l - Omega_r = 2 Im
        let oi = eval_form(Structure::I, &pt, &v, &w);
        let ok = eval_form(Structure::K, &pt, &v, &w);
        let sc = v.max_abs() * w.max_abs();
        Ok(rel_bi(2.0 * ob.re, 2.0 * oi, sc).max(rel_bi(2.0 * ob.im, 2.0 * ok, sc)))
    });
    r.run("pullbacks.mess_para", 1e-10, |s| {
        let pt = s.point();
        let v = s.tangent(&pt);
        let dv = mats(&mess_differential(&pt, &v));
        let lhs = mats(&mess_differential(&pt, &apply_structure(Structure::J, &pt, &v)));
        Ok(rel_pair(&lhs, &para_structure(&dv)))
    });
    r.run("pullbacks.mess_fd", 1e-6, |s| {
        let x = s.chart();
        let pt = CotangentPoint::from_chart(x)?;
        let v = s.velocity();
        check_step(&x, h)?;
        let f = |y: &[f64; 4]| point_at(y).map(|p| pair_chart(&mess_map(&p))).unwrap_or([f64::NAN; 4]);
        let fd = directional(&f, &x, &v, h);
        let exact = pair_velocity(&mess_differential(&pt, &TangentPair::from_chart(&pt, v)));
        Ok((0..4).fold(0.0f64, |m, i| m.max((fd[i] - exact[i]).abs())))
    });
    r.run("pullbacks.mess_equivariance", 1e-10, |s| {
        let pt = s.point();
        let a = s.unimodular();
        let m = mess_map(&sl2_act_point(&a, &pt)?);
        let m0 = mess_map(&pt);
        let ai = a.inv();
        // conjugation by A loses up to |A| |A^-1| |M| to rounding
        let cond = a.max_abs() * ai.max_abs();
        let r = |x: &Mat2, y: &Mat2| x.dist(&(a * *y * ai)) / (1.0 + x.max_abs() + y.max_abs() * cond);
        Ok(r(&m.jl.mat(), &m0.jl.mat()).max(r(&m.jr.mat(), &m0.jr.mat())))
    });
    r.run("pullbacks.circle_invariance", 1e-10, |s| {
        let pt = s.point();
        let (v, w) = (s.tangent(&pt), s.tangent(&pt));
        let t = s.angle();
        let q = circle_act(&pt, t);
        let (rv, rw) = (circle_differential(&pt, t, &v), circle_differential(&pt, t, &w));
        let g = rel(metric_g(&q, &rv, &rw), metric_g(&pt, &v, &w));
        let oi = rel(eval_form(Structure::I, &q, &rv, &rw), eval_form(Structure::I, &pt, &v, &w));
        let rot = Complex64::new(libm::cos(t), -libm::sin(t));
        let oc = rel_c(eval_omega_c(&q, &rv, &rw), eval_omega_c(&pt, &v, &w) * rot);
        Ok(g.max(oi).max(oc))
    });
    r.run("pullbacks.circle_structures", 1e-10, |s| {
        let pt = s.point();
        let v = s.tangent(&pt);
        let t = s.angle();
        let q = circle_act(&pt, t);
        let lhs = apply_structure(Structure::J, &q, &circle_differential(&pt, t, &v));
        let mix = apply_structure(Structure::J, &pt, &v)
            .scale(libm::cos(t))
            .add(&apply_structure(Structure::K, &pt, &v).scale(libm::sin(t)));
        Ok(rel_t(&lhs, &circle_differential(&pt, t, &mix)))
    });
    r.run("pullbacks.circle_fd", 1e-6, |s| {
        let x = s.chart();
        let pt = CotangentPoint::from_chart(x)?;
        let (v, t) = (s.velocity(), s.angle());
        check_step(&x, h)?;
        let f = |y: &[f64; 4]| point_at(y).map(|p| circle_act(&p, t).chart()).unwrap_or([f64::NAN; 4]);
        let fd = directional(&f, &x, &v, h);
        let exact = circle_differential(&pt, t, &TangentPair::from_chart(&pt, v)).chart();
        Ok((0..4).fold(0.0f64, |m, i| m.max((fd[i] - exact[i]).abs())))
    });
    r.run("pullbacks.hamiltonian", 1e-6, |s| {
        let x = s.chart();
        let pt = CotangentPoint::from_chart(x)?;
        let v = s.velocity();
        check_step(&x, h)?;
        let f = |y: &[f64; 4]| point_at(y).map(|p| hamiltonian(&p)).unwrap_or(f64::NAN);
        let fd = directional(&f, &x, &v, h);
        let tv = TangentPair::from_chart(&pt, v);
        let exact = eval_form(Structure::I, &pt, &circle_generator(&pt), &tv);
        Ok((fd - exact).abs().max((dh(&pt, &tv) - exact).abs()))
    });
    r.run("pullbacks.potential", 1e-5, |s| {
        let x = s.chart();
        let pt = CotangentPoint::from_chart(x)?;
        let mut worst = 0.0f64;
        for l in [Structure::J, Structure::K] {
            let alpha = move |y: &[f64; 4]| match point_at(y) {
                Some(p) => chart_basis(&p).map(|b| dh(&p, &apply_structure(l, &p, &b))),
                None => [f64::NAN; 4],
            };
            let d = fd_exterior_derivative_1(alpha, &x, h)?;
            let w = form_components(l, &pt);
            for i in 0..4 {
                for j in 0..4 {
                    worst = worst.max((d[i][j] + w[i][j]).abs());
                }
            }
        }
        Ok(worst)
    });
    r.run("pullbacks.cc_rotation", 1e-12, |s| {
        let pt = s.point();
        let c = cc_map(&pt);
        let m = mess_map(&circle_act(&pt, FRAC_PI_2));
        let ct = c_theta(&pt, -FRAC_PI_2);
        let m0 = mess_map(&pt);
        Ok(rel_m(&c.jl.mat(), &m.jl.mat())
            .max(rel_m(&c.jr.mat(), &m.jr.mat()))
            .max(rel_m(&ct.jl.mat(), &m0.jl.mat()))
            .max(rel_m(&ct.jr.mat(), &m0.jr.mat())))
    });
    r.run("pullbacks.c_theta_structure", 1e-10, |s| {
        let pt = s.point();
        let v = s.tangent(&pt);
        let t = s.angle();
        let dv = mats(&c_theta_differential(&pt, t, &v));
        let mixed = apply_structure(Structure::K, &pt, &v)
            .scale(libm::cos(t))
            .sub(&apply_structure(Structure::J, &pt, &v).scale(libm::sin(t)));
        let lhs = mats(&c_theta_differential(&pt, t, &mixed));
        Ok(rel_pair(&lhs, &para_structure(&dv)))
    });
    r.run("pullbacks.cc_fd", 1e-6, |s| {
        let x = s.chart();
        let pt = CotangentPoint::from_chart(x)?;
        let v = s.velocity();
        check_step(&x, h)?;
        let f = |y: &[f64; 4]| point_at(y).map(|p| pair_chart(&cc_map(&p))).unwrap_or([f64::NAN; 4]);
        let fd = directional(&f, &x, &v, h);
        let exact = pair_velocity(&crate::geom_maps::cc_differential(&pt, &TangentPair::from_chart(&pt, v)));
        Ok((0..4).fold(0.0f64, |m, i| m.max((fd[i] - exact[i]).abs())))
    });
    r.run("pullbacks.beltrami", 1e-12, |s| {
        let pt = s.point();
        let v = s.tangent(&pt);
        let (re, im) = quadratic_from_sigma(pt.cx(), pt.cot());
        let z = beltrami_pairing(pt.cx(), &re.mat(), &im.mat(), &v.jd);
        let expect = liouville_c(&pt, &v).conj() * Complex64::new(0.0, -0.5);
        Ok(rel_c(z, expect))
    });
}

fn moment(r: &mut Runner) {
    let h = r.cfg.step;
    r.run("moment.equivariance", 1e-11, |s| {
        let pt = s.point();
        let a = s.unimodular();
        let x = s.traceless();
        let moved = sl2_act_point(&a, &pt)?;
        let xc = a.inv() * x * a;
        let mut worst = 0.0f64;
        for l in Structure::ALL {
            let (e1, e0) = (eta(l, &moved), eta(l, &pt));
            let sc = e1.rep().max_abs() * x.max_abs() + e0.rep().max_abs() * xc.max_abs();
            worst = worst.max(rel_bi(e1.eval(&x), e0.eval(&xc), sc));
        }
        Ok(worst)
    });
    for l in Structure::ALL {
        let name = match l {
            Structure::I => "moment.identity_i",
            Structure::J => "moment.identity_j",
            Structure::K => "moment.identity_k",
        };
        r.run(name, 1e-6, |s| {
            let pt = s.point();
            let v = s.tangent(&pt);
            let x = s.traceless();
            verify_moment(l, &pt, &v, &x, h)
        });
    }
    r.run("moment.liouville", 1e-12, |s| {
        let pt = s.point();
        let x = s.traceless();
        let vx = infinitesimal_action(&x, &pt)?;
        Ok(rel_c(eta_c(&pt, &x), liouville_c(&pt, &vx)))
    });
    r.run("moment.naturality", 1e-11, |s| {
        let pt = s.point();
        let a = s.unimodular();
        let x = s.traceless();
        let lhs = infinitesimal_action(&x, &sl2_act_point(&a, &pt)?)?;
        let rhs = sl2_act_pair(&a, &infinitesimal_action(&(a.inv() * x * a), &pt)?)?;
        Ok(rel_t(&lhs, &rhs))
    });
    r.run("moment.action_derivative", 1e-6, |s| {
        let pt = s.point();
        let x = s.traceless();
        let vx = infinitesimal_action(&x, &pt)?;
        let curve = |t: f64| match sl2_act_point(&x.scale(t).exp_traceless(), &pt) {
            Ok(q) => {
                let (j, s) = (q.jm(), q.sigma());
                [j.m[0][0], j.m[0][1], j.m[1][0], s.m[0][0], s.m[0][1], s.m[1][1]]
            }
            Err(_) => [f64::NAN; 6],
        };
        let fd = super::fd::richardson(&curve, h);
        let (j, sd) = (vx.jd, vx.sd);
        let exact = [j.m[0][0], j.m[0][1], j.m[1][0], sd.m[0][0], sd.m[0][1], sd.m[1][1]];
        Ok((0..6).fold(0.0f64, |m, i| m.max((fd[i] - exact[i]).abs())))
    });
}

fn torus(r: &mut Runner) {
    r.run("torus.normalize", 1e-12, |s| {
        let e = torus_normalize(&s.point())?;
        Ok(e.b.trace().abs().max((e.b.det() + 1.0).abs()))
    });
    r.run("torus.metric_family", 1e-12, |s| {
        let e = torus_normalize(&s.point())?;
        let t = s.angle();
        let p = shape_eigenbasis(&e)?;
        let m = p.transpose() * metric_family(&e, t) * p;
        let s2 = libm::sin(2.0 * t);
        Ok(m.dist(&Mat2::diag(1.0 + s2, 1.0 - s2)))
    });
    r.run("torus.lattice", 1e-10, |s| {
        let pt = s.point();
        let (t, lattice) = torus_lattice_normalize(&pt)?;
        let ti = t.inv();
        let cols = rel_m(&Mat2::from_cols(lattice[0], lattice[1]), &t);
        Ok(rel_m(&(t * pt.jm() * ti), &Mat2::J0)
            .max(rel_m(&(ti.transpose() * pt.sigma() * ti), &Mat2::diag(1.0, -1.0)))
            .max(cols))
    });
    r.run("torus.change_of_variables", 1e-12, |s| {
        let pt = s.point();
        let e = change_vars_fwd(&pt);
        let f = pt.f();
        let r1 = (e.b.det() + pt.sigma_sq_norm() / ((1.0 + f) * (1.0 + f))).abs();
        let r2 = (1.0 + e.b.det() - 2.0 / (1.0 + f)).abs();
        Ok(r1.max(r2))
    });
    r.run("torus.round_trip", 1e-11, |s| {
        let pt = s.point();
        let e = change_vars_fwd(&pt);
        let (g, sg) = change_vars_bwd(&e.h, &e.b)?;
        Ok(rel_m(&g, &pt.g()).max(rel_m(&sg, &pt.sigma())))
    });
    r.run("torus.left_right_structures", 1e-10, |s| {
        let pt = s.point();
        let e = change_vars_fwd(&pt);
        let (hl, hr) = left_right_metrics(&e, pt.cx());
        let m = mess_map(&pt);
        Ok(rel_m(&cx_of_metric(&hl)?.mat(), &m.jl.mat()).max(rel_m(&cx_of_metric(&hr)?.mat(), &m.jr.mat())))
    });
}

fn ads(r: &mut Runner) {
    let h = r.cfg.step;
    r.once("ads.length_example", 1e-12, |_| {
        let e = core::f64::consts::E;
        let a = BMat2::compose(Mat2::diag(libm::exp(0.5), libm::exp(-0.5)), Mat2::diag(e, 1.0 / e));
        let l = b_length(&a)?;
        Ok((l.re - 1.5).abs().max((l.im + 0.5).abs()))
    });
    r.run("ads.length_additivity", 1e-10, |s| {
        let m = BMat2::compose(s.loxodromic(), s.loxodromic());
        let n = 1 + (s.uniform(0.0, 5.0) as u32).min(4);
        let l = b_length(&m)?;
        let ln = b_length(&m.pow(n))?;
        let k = n as f64;
        Ok(rel(ln.re, k * l.re).max((ln.im - k * l.im).abs() / (1.0 + ln.re.abs())))
    });
    r.run("ads.length_decomposition", 1e-12, |s| {
        let (a, b) = (s.loxodromic(), s.loxodromic());
        let l = b_length(&BMat2::compose(a, b))?;
        let lp = 2.0 * libm::acosh(0.5 * a.trace().abs());
        let lm = 2.0 * libm::acosh(0.5 * b.trace().abs());
        Ok(rel(l.re, 0.5 * (lp + lm)).max((l.im - 0.5 * (lp - lm)).abs() / (1.0 + lp + lm)))
    });
    r.run("ads.transport_isometry", 1e-11, |s| {
        let (x, y, z) = (s.traceless(), s.traceless(), s.traceless());
        let t = s.uniform(-1.0, 1.0);
        let g = AdSElement::new(x.scale(t).exp_traceless())?;
        let wy = AdSTangent::new(g, parallel_transport(&x, &y, t)?)?;
        let wz = AdSTangent::new(g, parallel_transport(&x, &z, t)?)?;
        let id = AdSElement::IDENTITY;
        let before = ads_metric(&AdSTangent::new(id, y)?, &AdSTangent::new(id, z)?)?;
        Ok(rel(ads_metric(&wy, &wz)?, before))
    });
    r.run("ads.transport_parallel", 1e-5, |s| {
        let (x, y) = (s.traceless(), s.traceless());
        let t = s.uniform(-1.0, 1.0);
        transport_residual(&x, &y, t, h)
    });
    r.run("ads.perpendicular", 1e-9, |s| {
        let (cfg, (pp, pm)) = s.configuration();
        let rep = verify_common_perpendicular(&cfg.0, &cfg.1)?;
        let th = b_angle(&cfg.0, &cfg.1)?;
        let d = (rep.distance - 0.5 * (pp - pm)).abs();
        let a = (rep.angle - 0.5 * (pp + pm)).abs();
        let b = (th.re - 0.5 * (pp + pm)).abs().max((th.im - 0.5 * (pp - pm)).abs());
        Ok(rep.max_orth_residual().max(d).max(a).max(b))
    });
    r.run("ads.isometry_invariance", 1e-9, |s| {
        let (cfg, _) = s.configuration();
        let (a, b) = (s.unimodular(), s.unimodular());
        let moved = conjugate_configuration(&cfg, &a, &b);
        let t1 = b_angle(&cfg.0, &cfg.1)?;
        let t2 = b_angle(&moved.0, &moved.1)?;
        let r1 = verify_common_perpendicular(&cfg.0, &cfg.1)?;
        let r2 = verify_common_perpendicular(&moved.0, &moved.1)?;
        Ok((t1.re - t2.re)
            .abs()
            .max((t1.im - t2.im).abs())
            .max((r1.distance - r2.distance).abs())
            .max((r1.angle - r2.angle).abs()))
    });
    r.run("ads.swap_cos", 1e-12, |s| {
        let (cfg, _) = s.configuration();
        let c1 = b_analytic(Analytic::Cos, b_angle(&cfg.0, &cfg.1)?)?;
        let c2 = b_analytic(Analytic::Cos, b_angle(&cfg.1, &cfg.0)?)?;
        Ok((c1.re + c2.re).abs().max((c1.im + c2.im).abs()))
    });
    r.run("ads.distance_antisymmetry", 1e-12, |s| {
        let p = AdSElement::new(s.unimodular())?;
        let c = s.unimodular();
        let u = c * Mat2::J0 * c.inv();
        let t = s.uniform(-1.4, 1.4);
        let q = AdSElement::new(p.mat() * u.scale(t).exp_traceless())?;
        Ok((signed_distance(&p, &q)? + signed_distance(&q, &p)?).abs())
    });
}

/// Runs a named suite (or `all`) and collects one result per check.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut r = Runner { cfg, checks: Vec::new() };
    let one = |r: &mut Runner, n: &str| match n {
        "algebra" => algebra(r),
        "phk" => phk(r),
        "pullbacks" => pullbacks(r),
        "moment" => moment(r),
        "ads" => ads(r),
        "torus" => torus(r),
        _ => unreachable!(),
    };
    match name {
        "all" => SUITES.iter().for_each(|n| one(&mut r, n)),
        n if SUITES.contains(&n) => one(&mut r, n),
        _ => return Err(Error::UnknownSuite),
    }
    let max_residual = r.checks.iter().fold(0.0f64, |m, c| m.max(c.max_residual));
    Ok(VerificationReport {
        suite: name.to_string(),
        samples: cfg.samples,
        seed: cfg.seed,
        step: cfg.step,
        max_residual,
        checks: r.checks,
    })
}
