//! Anti-de Sitter space as PSL(2,R): para-complex matrices, lengths,
//! principal axes, angles and the timelike common perpendicular.

use crate::error::{Component, Error, Result};
use crate::mat2::{Mat2, Vec2};
use crate::numcheck::fd::richardson;
use crate::para_algebra::ParaComplex;
use core::f64::consts::PI;
use num_complex::Complex64;

/// Future timelike direction at the identity, extended by left translation.
/// `-J0` generates counterclockwise rotations of the upper half-plane.
pub const FUTURE: Mat2 = Mat2::new(0.0, 1.0, -1.0, 0.0);

const DET_TOL: f64 = 1e-12;
const LIE_TOL: f64 = 1e-11;

fn mod_pi(x: f64) -> f64 {
    x - PI * libm::floor(x / PI)
}

/// 2x2 matrix over the para-complex numbers, kept together with its
/// idempotent components `A = A+ e+ + A- e-`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BMat2 {
    entries: [[ParaComplex; 2]; 2],
    plus: Mat2,
    minus: Mat2,
}

impl BMat2 {
    pub fn compose(plus: Mat2, minus: Mat2) -> Self {
        let entries = core::array::from_fn(|i| {
            core::array::from_fn(|j| ParaComplex::from_idempotent(plus.m[i][j], minus.m[i][j]))
        });
        Self { entries, plus, minus }
    }

    pub fn from_entries(entries: [[ParaComplex; 2]; 2]) -> Self {
        let comp = |f: fn(ParaComplex) -> f64| {
            Mat2::new(f(entries[0][0]), f(entries[0][1]), f(entries[1][0]), f(entries[1][1]))
        };
        Self { entries, plus: comp(ParaComplex::plus), minus: comp(ParaComplex::minus) }
    }

    pub fn identity() -> Self {
        Self::compose(Mat2::IDENTITY, Mat2::IDENTITY)
    }

    pub fn decompose(&self) -> (Mat2, Mat2) {
        (self.plus, self.minus)
    }

    pub fn entries(&self) -> [[ParaComplex; 2]; 2] {
        self.entries
    }

    pub fn component(&self, c: Component) -> Mat2 {
        match c {
            Component::Plus => self.plus,
            Component::Minus => self.minus,
        }
    }

    pub fn det(&self) -> ParaComplex {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    pub fn trace(&self) -> ParaComplex {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut p = Mat2::IDENTITY;
        let mut m = Mat2::IDENTITY;
        for _ in 0..n {
            p = p * self.plus;
            m = m * self.minus;
        }
        Self::compose(p, m)
    }
}

impl core::ops::Mul for BMat2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::compose(self.plus * o.plus, self.minus * o.minus)
    }
}

fn check_loxodromic(a: &Mat2, c: Component) -> Result<f64> {
    let t = a.trace();
    if !(t.abs() > 2.0) {
        return Err(Error::NotLoxodromic { component: c, trace: t });
    }
    Ok(t.abs())
}

/// Translation length `2 arccosh(|tr|/2)`.
pub fn translation_length(a: &Mat2, c: Component) -> Result<f64> {
    let t = check_loxodromic(a, c)?;
    Ok(2.0 * libm::acosh(0.5 * t))
}

/// `l+ e+ + l- e-` from the translation lengths of both components.
pub fn b_length(a: &BMat2) -> Result<ParaComplex> {
    let lp = translation_length(&a.plus, Component::Plus)?;
    let lm = translation_length(&a.minus, Component::Minus)?;
    Ok(ParaComplex::from_idempotent(lp, lm))
}

/// Element of PSL(2,R), normalized so the first nonzero entry is positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdSElement {
    m: Mat2,
}

pub fn psl_canonical(m: Mat2) -> Mat2 {
    match m.entries().iter().find(|x| **x != 0.0) {
        Some(x) if *x < 0.0 => -m,
        _ => m,
    }
}

impl AdSElement {
    pub const IDENTITY: Self = Self { m: Mat2::IDENTITY };

    pub fn new(m: Mat2) -> Result<Self> {
        let det = m.det();
        if !m.is_finite() || (det - 1.0).abs() > DET_TOL * (1.0 + m.max_abs() * m.max_abs()) {
            return Err(Error::NonUnimodular { det });
        }
        Ok(Self { m: psl_canonical(m) })
    }

    pub fn mat(&self) -> Mat2 {
        self.m
    }

    pub fn inv(&self) -> Self {
        Self { m: psl_canonical(self.m.inv()) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { m: psl_canonical(self.m * o.m) }
    }

    /// Distance to `o` in PSL, i.e. up to sign.
    pub fn dist(&self, o: &Self) -> f64 {
        self.m.dist(&o.m).min(self.m.dist(&(-o.m)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalType {
    Timelike,
    Spacelike,
    Lightlike,
}

/// Tangent vector `vel` at `base`, with `base^{-1} vel` traceless.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdSTangent {
    base: AdSElement,
    vel: Mat2,
}

impl AdSTangent {
    pub fn new(base: AdSElement, vel: Mat2) -> Result<Self> {
        let x = base.m.inv() * vel;
        let t = x.trace();
        if t.abs() > LIE_TOL * (1.0 + x.max_abs()) {
            return Err(Error::NotTraceless { trace: t });
        }
        Ok(Self { base, vel })
    }

    /// Left translate of the Lie algebra element `x` to `base`.
    pub fn from_lie(base: AdSElement, x: Mat2) -> Result<Self> {
        Self::new(base, base.m * x)
    }

    pub fn base(&self) -> AdSElement {
        self.base
    }

    pub fn vel(&self) -> Mat2 {
        self.vel
    }

    pub fn lie(&self) -> Mat2 {
        self.base.m.inv() * self.vel
    }

    pub fn causal_type(&self) -> CausalType {
        let x = self.lie();
        let n = x.half_trace_pair(&x);
        let tol = 1e-12 * (1.0 + x.max_abs() * x.max_abs());
        if n < -tol {
            CausalType::Timelike
        } else if n > tol {
            CausalType::Spacelike
        } else {
            CausalType::Lightlike
        }
    }
}

/// Bi-invariant metric `<X, Y> = tr(XY)/2` after left trivialization.
pub fn ads_metric(v: &AdSTangent, w: &AdSTangent) -> Result<f64> {
    if v.base.dist(&w.base) > DET_TOL * (1.0 + v.base.m.max_abs()) {
        return Err(Error::BaseMismatch);
    }
    let bi = v.base.m.inv();
    Ok((bi * v.vel).half_trace_pair(&(bi * w.vel)))
}

/// `base exp(t base^{-1} v)`.
pub fn geodesic(v: &AdSTangent, t: f64) -> AdSElement {
    let x = v.lie().traceless().scale(t);
    AdSElement { m: psl_canonical(v.base.m * x.exp_traceless()) }
}

fn check_traceless(x: &Mat2) -> Result<()> {
    let t = x.trace();
    if t.abs() > 1e-10 * (1.0 + x.max_abs()) {
        return Err(Error::NotTraceless { trace: t });
    }
    Ok(())
}

/// Parallel transport of `Y` (at the identity) along `exp(sX)`, `s in [0, t]`:
/// `g Y g` with `g = exp(tX/2)`, a tangent vector at `exp(tX)`.
pub fn parallel_transport(x: &Mat2, y: &Mat2, t: f64) -> Result<Mat2> {
    check_traceless(x)?;
    check_traceless(y)?;
    let g = x.scale(0.5 * t).exp_traceless();
    Ok(g * *y * g)
}

/// Covariant derivative `(D^l + D^r)/2` of the transported field at time
/// `t`, by finite differences; vanishes for a parallel field.
pub fn transport_residual(x: &Mat2, y: &Mat2, t: f64, h: f64) -> Result<f64> {
    check_traceless(x)?;
    check_traceless(y)?;
    let gamma = |s: f64| x.scale(s).exp_traceless();
    let field = |s: f64| gamma(0.5 * s) * *y * gamma(0.5 * s);
    let left = |s: f64| (gamma(t + s).inv() * field(t + s)).entries();
    let right = |s: f64| (field(t + s) * gamma(t + s).inv()).entries();
    let dl = Mat2::from_entries(richardson(&left, h));
    let dr = Mat2::from_entries(richardson(&right, h));
    let g = gamma(t);
    Ok((g * dl + dr * g).scale(0.5).max_abs())
}

/// Attracting and repelling eigendirections as angles in `[0, pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPoints {
    pub attracting: f64,
    pub repelling: f64,
}

impl FixedPoints {
    pub fn attracting_dir(&self) -> Vec2 {
        [libm::cos(self.attracting), libm::sin(self.attracting)]
    }

    pub fn repelling_dir(&self) -> Vec2 {
        [libm::cos(self.repelling), libm::sin(self.repelling)]
    }
}

fn direction_angle(v: Vec2) -> f64 {
    mod_pi(libm::atan2(v[1], v[0]))
}

/// Point `x/y` of the boundary of the upper half-plane; `inf` for `y = 0`.
pub fn boundary_point(angle: f64) -> f64 {
    let s = libm::sin(angle);
    if s == 0.0 {
        f64::INFINITY
    } else {
        libm::cos(angle) / s
    }
}

fn eigenvector(a: &Mat2, lambda: f64) -> Vec2 {
    let b = *a - Mat2::IDENTITY.scale(lambda);
    // kernel of b: use the row with the larger norm
    let r0 = b.m[0];
    let r1 = b.m[1];
    let r = if libm::hypot(r0[0], r0[1]) >= libm::hypot(r1[0], r1[1]) { r0 } else { r1 };
    let v = [-r[1], r[0]];
    let n = libm::hypot(v[0], v[1]);
    [v[0] / n, v[1] / n]
}

fn eigen(a: &Mat2, c: Component) -> Result<(f64, Vec2, Vec2)> {
    let t = check_loxodromic(a, c)?;
    let sgn = if a.trace() < 0.0 { -1.0 } else { 1.0 };
    let a = a.scale(sgn);
    let disc = libm::sqrt(0.25 * t * t - 1.0);
    let big = 0.5 * t + disc;
    let small = 1.0 / big;
    Ok((big, eigenvector(&a, big), eigenvector(&a, small)))
}

fn fixed_points_c(a: &Mat2, c: Component) -> Result<FixedPoints> {
    let (_, va, vr) = eigen(a, c)?;
    Ok(FixedPoints { attracting: direction_angle(va), repelling: direction_angle(vr) })
}

pub fn fixed_points(a: &Mat2) -> Result<FixedPoints> {
    fixed_points_c(a, Component::Plus)
}

/// Boundary endpoints (attracting, repelling) of the hyperbolic axis.
pub fn axis_h2(a: &Mat2) -> Result<(f64, f64)> {
    let fp = fixed_points(a)?;
    Ok((boundary_point(fp.attracting), boundary_point(fp.repelling)))
}

/// Unimodular `P` with `P^{-1} A P = +-diag(l, 1/l)`, `l > 1`.
fn axis_frame(a: &Mat2, c: Component) -> Result<Mat2> {
    let (_, va, vr) = eigen(a, c)?;
    let mut p = Mat2::from_cols(va, vr);
    let det = p.det();
    if det < 0.0 {
        p = Mat2::from_cols(va, [-vr[0], -vr[1]]);
    }
    Ok(p.scale(1.0 / libm::sqrt(det.abs())))
}

/// `E(y) = [[0, -y], [1/y, 0]]`, the half-turn about `iy`.
pub fn half_turn(y: f64) -> Mat2 {
    Mat2::new(0.0, -y, 1.0 / y, 0.0)
}

/// Spacelike geodesic through `point` with unit direction `direction`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpacelikeGeodesic {
    pub point: AdSElement,
    pub direction: AdSTangent,
    frames: (Mat2, Mat2),
}

impl SpacelikeGeodesic {
    /// Point `P E(y) Q^{-1}` of the axis.
    pub fn at(&self, y: f64) -> AdSElement {
        let (p, q) = self.frames;
        AdSElement { m: psl_canonical(p * half_turn(y) * q.inv()) }
    }

    /// Distance of `g` from the axis, measured as the diagonal part of
    /// `P^{-1} g Q` relative to its size.
    pub fn residual(&self, g: &AdSElement) -> f64 {
        let (p, q) = self.frames;
        let m = p.inv() * g.m * q;
        m.m[0][0].abs().max(m.m[1][1].abs()) / (1.0 + m.max_abs())
    }

    /// Left-trivialized unit direction (the same at every point).
    pub fn lie_direction(&self) -> Mat2 {
        self.direction.lie()
    }
}

/// Spacelike geodesic of order-two elements exchanging the axes of `gp`
/// and `gm`.
pub fn principal_axis(gp: &Mat2, gm: &Mat2) -> Result<SpacelikeGeodesic> {
    let p = axis_frame(gp, Component::Plus)?;
    let q = axis_frame(gm, Component::Minus)?;
    let point = AdSElement::new(p * Mat2::J0 * q.inv())?;
    // d/ds E(e^s) at s = 0
    let vel = p * Mat2::new(0.0, -1.0, -1.0, 0.0) * q.inv();
    let vel = if point.m.dist(&(p * Mat2::J0 * q.inv())) == 0.0 { vel } else { -vel };
    let direction = AdSTangent::new(point, vel)?;
    Ok(SpacelikeGeodesic { point, direction, frames: (p, q) })
}

/// Direction of the geodesic through `z` heading to the boundary point
/// with homogeneous coordinates `a`.
fn heading(z: Complex64, a: Vec2) -> Complex64 {
    let w = Complex64::new(a[0], 0.0) - z * a[1];
    Complex64::new(0.0, 1.0) * w * w
}

fn to_disk(v: Vec2) -> Complex64 {
    Complex64::new(v[0], -v[1]) / Complex64::new(v[0], v[1])
}

fn in_arc(x: f64, from: f64, to: f64) -> bool {
    mod_pi(x - from) < mod_pi(to - from)
}

/// Intersection point in the upper half-plane of the axes of `a` and `b`.
fn axes_intersection(a: &FixedPoints, b: &FixedPoints, c: Component) -> Result<Complex64> {
    let sep =
        in_arc(b.attracting, a.attracting, a.repelling) != in_arc(b.repelling, a.attracting, a.repelling);
    if !sep {
        return Err(Error::DisjointAxes { component: c });
    }
    // chords in the Klein model
    let p1 = to_disk(a.attracting_dir());
    let p2 = to_disk(a.repelling_dir());
    let q1 = to_disk(b.attracting_dir());
    let q2 = to_disk(b.repelling_dir());
    let (d1, d2, r) = (p2 - p1, q2 - q1, q1 - p1);
    let cross = |u: Complex64, v: Complex64| u.re * v.im - u.im * v.re;
    let den = cross(d1, d2);
    if den == 0.0 {
        return Err(Error::DisjointAxes { component: c });
    }
    let k = p1 + d1 * (cross(r, d2) / den);
    let zeta = k / (1.0 + libm::sqrt((1.0 - k.norm_sqr()).max(0.0)));
    let one = Complex64::new(1.0, 0.0);
    Ok(Complex64::new(0.0, 1.0) * (one + zeta) / (one - zeta))
}

struct Crossing {
    z: Complex64,
    phi: f64,
    cyclic: bool,
}

fn crossing(a: &Mat2, b: &Mat2, c: Component) -> Result<Crossing> {
    let fa = fixed_points_c(a, c)?;
    let fb = fixed_points_c(b, c)?;
    let z = axes_intersection(&fa, &fb, c)?;
    let ta = heading(z, fa.attracting_dir());
    let tb = heading(z, fb.attracting_dir());
    let phi = mod_pi((tb / ta).arg());
    let cyclic = in_arc(fb.attracting, fa.attracting, fa.repelling);
    Ok(Crossing { z, phi, cyclic })
}

fn crossings(a: &(Mat2, Mat2), b: &(Mat2, Mat2)) -> Result<(Crossing, Crossing)> {
    let cp = crossing(&a.0, &b.0, Component::Plus)?;
    let cm = crossing(&a.1, &b.1, Component::Minus)?;
    if cp.cyclic != cm.cyclic {
        return Err(Error::CyclicOrderMismatch);
    }
    Ok((cp, cm))
}

/// Counterclockwise intersection angles `(phi+, phi-)` in `(0, pi)` from the
/// axis of `a` to the axis of `b`, per component.
pub fn intersection_angles(a: &(Mat2, Mat2), b: &(Mat2, Mat2)) -> Result<(f64, f64)> {
    let (cp, cm) = crossings(a, b)?;
    Ok((cp.phi, cm.phi))
}

/// `theta + tau d` with `theta = (phi+ + phi-)/2`, `d = (phi+ - phi-)/2`.
pub fn b_angle(a: &(Mat2, Mat2), b: &(Mat2, Mat2)) -> Result<ParaComplex> {
    let (p, m) = intersection_angles(a, b)?;
    Ok(ParaComplex::from_idempotent(p, m))
}

/// Signed timelike distance from `p` to `q`, in `(-pi/2, pi/2)`, positive
/// when `q` lies in the future of `p`.
pub fn signed_distance(p: &AdSElement, q: &AdSElement) -> Result<f64> {
    let m = p.m.inv() * q.m;
    let mi = q.m.inv() * p.m;
    // symmetric in (p, q) up to exact negation of k
    let mut half = 0.25 * (m.trace() + mi.trace());
    let mut k = (m - mi).scale(0.5);
    if half < 0.0 {
        half = -half;
        k = -k;
    }
    let tol = 1e-9 * m.max_abs() * m.max_abs();
    if half > 1.0 + tol {
        return Err(Error::NotTimelike);
    }
    if half <= 1e-10 {
        return Err(Error::AntipodalPoints);
    }
    if k.det() < -tol {
        return Err(Error::NotTimelike);
    }
    let sin = libm::sqrt(k.det().max(0.0));
    let delta = libm::atan2(sin, half);
    Ok(if k.half_trace_pair(&FUTURE) > 0.0 { -delta } else { delta })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerpendicularReport {
    /// `|<U, D>|` at the feet on the first and second principal axis.
    pub orth_residual: [f64; 2],
    pub distance: f64,
    pub angle: f64,
    pub feet: (AdSElement, AdSElement),
}

impl PerpendicularReport {
    pub fn max_orth_residual(&self) -> f64 {
        self.orth_residual[0].max(self.orth_residual[1])
    }
}

/// Foot on the principal axis of `(gp, gm)` of the timelike geodesic of
/// elements sending `zm` to `zp`.
fn foot(gp: &Mat2, gm: &Mat2, zp: Complex64, zm: Complex64) -> Result<(AdSElement, Mat2)> {
    let p = axis_frame(gp, Component::Plus)?;
    let q = axis_frame(gm, Component::Minus)?;
    let tp = p.inv().mobius(zp).im;
    let tm = q.inv().mobius(zm).im;
    let y = libm::sqrt(tp * tm);
    let foot = AdSElement::new(p * half_turn(y) * q.inv())?;
    let dir = q * Mat2::diag(-1.0, 1.0) * q.inv();
    Ok((foot, dir))
}

/// Builds the timelike geodesic orthogonal to both principal axes and
/// reports the orthogonality defect, the signed distance between the feet
/// and the angle between the first axis and the transport of the second.
pub fn verify_common_perpendicular(a: &(Mat2, Mat2), b: &(Mat2, Mat2)) -> Result<PerpendicularReport> {
    let (cp, cm) = crossings(a, b)?;
    // move both intersection points to i
    let lift = |z: Complex64| {
        let sy = libm::sqrt(z.im);
        Mat2::new(sy, z.re / sy, 0.0, 1.0 / sy)
    };
    let (hp, hm) = (lift(cp.z), lift(cm.z));
    let (hpi, hmi) = (hp.inv(), hm.inv());
    let na = (hpi * a.0 * hp, hmi * a.1 * hm);
    let nb = (hpi * b.0 * hp, hmi * b.1 * hm);
    let i = Complex64::new(0.0, 1.0);
    let (fa, da) = foot(&na.0, &na.1, i, i)?;
    let (fb, db) = foot(&nb.0, &nb.1, i, i)?;
    // future unit generator of the rotations about i
    let u = FUTURE;
    let distance = signed_distance(&fa, &fb)?;
    let n = u.scale(distance);
    // carry db from fb back to fa, then left-trivialize at fa
    let w = parallel_transport(&(-n), &db, 1.0)?;
    let moved = n.exp_traceless() * w;
    let cos = da.half_trace_pair(&moved);
    let sin = 0.5 * u.half_trace_pair(&da.commutator(&moved));
    let angle = mod_pi(libm::atan2(sin, cos));
    let orth = [u.half_trace_pair(&da).abs(), u.half_trace_pair(&db).abs()];
    let feet = (AdSElement::new(hp * fa.m * hmi)?, AdSElement::new(hp * fb.m * hmi)?);
    Ok(PerpendicularReport { orth_residual: orth, distance, angle, feet })
}

/// Pair of loxodromic elements `(g+, g-)`, one per factor of PSL x PSL.
pub type AxisPair = (Mat2, Mat2);

/// Loxodromic with axis through `i` at counterclockwise angle `phi` from
/// the imaginary axis, translation `2 ln mu` towards its attracting end.
pub fn rotated_loxodromic(phi: f64, mu: f64) -> Mat2 {
    let r = Mat2::rotation(-0.5 * phi);
    r * Mat2::diag(mu, 1.0 / mu) * r.inv()
}

/// Configuration with both `alpha` axes on the imaginary axis and `beta`
/// axes crossing them at `i` with angles `phi+` and `phi-`.
pub fn normalized_configuration(lambda: (f64, f64), mu: (f64, f64), phi: (f64, f64)) -> (AxisPair, AxisPair) {
    let alpha = (Mat2::diag(lambda.0, 1.0 / lambda.0), Mat2::diag(lambda.1, 1.0 / lambda.1));
    let beta = (rotated_loxodromic(phi.0, mu.0), rotated_loxodromic(phi.1, mu.1));
    (alpha, beta)
}

/// Image of a configuration under `g -> A g B^{-1}`.
pub fn conjugate_configuration(cfg: &(AxisPair, AxisPair), a: &Mat2, b: &Mat2) -> (AxisPair, AxisPair) {
    let (ai, bi) = (a.inv(), b.inv());
    let f = |p: &AxisPair| (*a * p.0 * ai, *b * p.1 * bi);
    (f(&cfg.0), f(&cfg.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::para_algebra::{b_analytic, Analytic};
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{E, FRAC_PI_2, FRAC_PI_3};
    use proptest::prelude::*;

    fn d() -> Mat2 {
        Mat2::diag(1.0, -1.0)
    }

    fn sl2() -> impl Strategy<Value = Mat2> {
        (0.3..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b, c)| Mat2::new(a, b, c, (1.0 + b * c) / a))
    }

    fn traceless() -> impl Strategy<Value = Mat2> {
        prop::array::uniform3(-1.5..1.5f64).prop_map(|[a, b, c]| Mat2::new(a, b, c, -a))
    }

    /// Unimodular matrix with all entries in [-2, 2].
    fn bounded() -> impl Strategy<Value = Mat2> {
        (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_filter_map("entries in [-2, 2]", |(a, b, c)| {
            let d = (1.0 + b * c) / a;
            (d.abs() <= 2.0).then(|| Mat2::new(a, b, c, d))
        })
    }

    fn loxodromic() -> impl Strategy<Value = Mat2> {
        (1.2..4.0f64, sl2()).prop_map(|(l, a)| a * Mat2::diag(l, 1.0 / l) * a.inv())
    }

    fn configuration() -> impl Strategy<Value = (AxisPair, AxisPair)> {
        (1.1..5.0f64, 1.1..5.0f64, 1.1..5.0f64, 1.1..5.0f64, 0.1..3.04f64, 0.1..3.04f64, bounded(), bounded())
            .prop_map(|(l1, l2, m1, m2, p1, p2, a, b)| {
                conjugate_configuration(&normalized_configuration((l1, l2), (m1, m2), (p1, p2)), &a, &b)
            })
    }

    #[test]
    fn bmat_examples() {
        let id = BMat2::compose(Mat2::IDENTITY, Mat2::IDENTITY);
        assert_eq!(id, BMat2::identity());
        assert_eq!(id.entries()[0][0], ParaComplex::ONE);
        assert_eq!(id.entries()[0][1], ParaComplex::ZERO);
        let a = BMat2::compose(Mat2::diag(2.0, 0.5), Mat2::diag(3.0, 1.0 / 3.0));
        let t = a.trace();
        assert_abs_diff_eq!(t.plus(), 2.5, epsilon = 1e-15);
        assert_abs_diff_eq!(t.minus(), 10.0 / 3.0, epsilon = 1e-15);
        let (p, m) = (Mat2::new(1.0, 2.0, 0.5, 3.0), Mat2::new(-1.0, 0.25, 4.0, 2.0));
        let b = BMat2::compose(p, m);
        assert_eq!(b.decompose(), (p, m));
        let r = BMat2::from_entries(b.entries());
        assert!(r.decompose().0.dist(&p) <= 4.0 * f64::EPSILON * p.max_abs());
        assert!(r.decompose().1.dist(&m) <= 4.0 * f64::EPSILON * m.max_abs());
        let det = b.det();
        assert_abs_diff_eq!(det.plus(), p.det(), epsilon = 1e-14);
        assert_abs_diff_eq!(det.minus(), m.det(), epsilon = 1e-14);
        let prod = b * a;
        assert_eq!(prod.decompose(), (p * Mat2::diag(2.0, 0.5), m * Mat2::diag(3.0, 1.0 / 3.0)));
    }

    #[test]
    fn length_examples() {
        let a = BMat2::compose(Mat2::diag(libm::exp(0.5), libm::exp(-0.5)), Mat2::diag(E, 1.0 / E));
        let l = b_length(&a).unwrap();
        assert_abs_diff_eq!(l.re, 1.5, epsilon = 1e-14);
        assert_abs_diff_eq!(l.im, -0.5, epsilon = 1e-14);
        let b = BMat2::compose(Mat2::diag(E, 1.0 / E), Mat2::diag(E, 1.0 / E));
        let l = b_length(&b).unwrap();
        assert_abs_diff_eq!(l.re, 2.0, epsilon = 1e-14);
        assert_eq!(l.im, 0.0);
        let ell = BMat2::compose(Mat2::rotation(0.3), Mat2::diag(E, 1.0 / E));
        assert!(matches!(b_length(&ell), Err(Error::NotLoxodromic { component: Component::Plus, .. })));
        let ell = BMat2::compose(Mat2::diag(E, 1.0 / E), Mat2::IDENTITY);
        assert!(matches!(b_length(&ell), Err(Error::NotLoxodromic { component: Component::Minus, .. })));
        // negative trace is the same PSL element
        let neg = BMat2::compose(Mat2::diag(-E, -1.0 / E), Mat2::diag(E, 1.0 / E));
        assert_abs_diff_eq!(b_length(&neg).unwrap().re, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn metric_and_geodesic_examples() {
        let id = AdSElement::IDENTITY;
        let v = AdSTangent::new(id, Mat2::J0).unwrap();
        assert_eq!(ads_metric(&v, &v).unwrap(), -1.0);
        assert_eq!(v.causal_type(), CausalType::Timelike);
        let s = AdSTangent::new(id, d()).unwrap();
        assert_eq!(ads_metric(&s, &s).unwrap(), 1.0);
        assert_eq!(s.causal_type(), CausalType::Spacelike);
        let n = AdSTangent::new(id, Mat2::new(0.0, 1.0, 0.0, 0.0)).unwrap();
        assert_eq!(n.causal_type(), CausalType::Lightlike);
        assert_eq!(geodesic(&v, 0.0), id);
        let g = geodesic(&v, 0.7);
        assert!(g.mat().dist(&Mat2::rotation(0.7)) < 1e-15);
        assert!(geodesic(&v, PI).dist(&id) < 1e-15);
        let other = AdSTangent::new(g, g.mat() * Mat2::J0).unwrap();
        assert_eq!(ads_metric(&v, &other), Err(Error::BaseMismatch));
        assert!(matches!(AdSTangent::new(id, Mat2::IDENTITY), Err(Error::NotTraceless { .. })));
        assert!(matches!(AdSElement::new(Mat2::diag(2.0, 1.0)), Err(Error::NonUnimodular { .. })));
        assert_eq!(AdSElement::new(-Mat2::J0).unwrap().mat(), Mat2::new(0.0, 1.0, -1.0, 0.0));
        // Gram matrix on (diag(1,-1), [[0,1],[1,0]], J0) is diag(1, 1, -1)
        let basis = [d(), Mat2::new(0.0, 1.0, 1.0, 0.0), Mat2::J0];
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let vx = AdSTangent::new(id, *x).unwrap();
                let vy = AdSTangent::new(id, *y).unwrap();
                let expect = if i != j {
                    0.0
                } else if i == 2 {
                    -1.0
                } else {
                    1.0
                };
                assert_eq!(ads_metric(&vx, &vy).unwrap(), expect);
            }
        }
    }

    #[test]
    fn transport_examples() {
        assert_eq!(parallel_transport(&d(), &Mat2::J0, 0.0).unwrap(), Mat2::J0);
        for t in [0.3, 1.0, -2.0] {
            let w = parallel_transport(&d(), &Mat2::J0, t).unwrap();
            assert!(w.dist(&Mat2::J0) < 1e-14);
            let g = d().scale(t).exp_traceless();
            let x = g.inv() * w;
            assert!((x.half_trace_pair(&x) + 1.0).abs() < 1e-12);
            assert!(transport_residual(&d(), &Mat2::J0, t, 1e-3).unwrap() < 1e-8);
        }
        assert!(matches!(parallel_transport(&Mat2::IDENTITY, &d(), 1.0), Err(Error::NotTraceless { .. })));
    }

    #[test]
    fn fixed_point_examples() {
        let fp = fixed_points(&Mat2::diag(2.0, 0.5)).unwrap();
        assert_eq!((fp.attracting, fp.repelling), (0.0, FRAC_PI_2));
        let (att, rep) = axis_h2(&Mat2::diag(2.0, 0.5)).unwrap();
        assert_eq!(att, f64::INFINITY);
        assert_abs_diff_eq!(rep, 0.0, epsilon = 1e-16);
        let (att, rep) = axis_h2(&Mat2::new(2.0, 1.0, 1.0, 1.0)).unwrap();
        let s5 = libm::sqrt(5.0);
        assert_abs_diff_eq!(att, 0.5 * (1.0 + s5), epsilon = 1e-14);
        assert_abs_diff_eq!(rep, 0.5 * (1.0 - s5), epsilon = 1e-14);
        assert!(matches!(fixed_points(&Mat2::rotation(1.0)), Err(Error::NotLoxodromic { .. })));
        assert!(matches!(fixed_points(&Mat2::new(1.0, 1.0, 0.0, 1.0)), Err(Error::NotLoxodromic { .. })));
    }

    #[test]
    fn principal_axis_examples() {
        let g = Mat2::diag(2.0, 0.5);
        let ax = principal_axis(&g, &g).unwrap();
        assert!(ax.point.mat().dist(&psl_canonical(Mat2::J0)) < 1e-15);
        for y in [0.3, 1.0, 5.0] {
            assert!(ax.at(y).mat().dist(&psl_canonical(half_turn(y))) < 1e-15);
        }
        let x = ax.lie_direction();
        assert!((x.half_trace_pair(&x) - 1.0).abs() < 1e-12);
        assert_eq!(ax.direction.causal_type(), CausalType::Spacelike);
    }

    #[test]
    fn angle_examples() {
        let cfg = normalized_configuration((2.0, 2.0), (3.0, 1.5), (FRAC_PI_2, FRAC_PI_3));
        let th = b_angle(&cfg.0, &cfg.1).unwrap();
        assert_abs_diff_eq!(th.re, 5.0 * PI / 12.0, epsilon = 1e-12);
        assert_abs_diff_eq!(th.im, PI / 12.0, epsilon = 1e-12);
        let sym = normalized_configuration((2.0, 3.0), (1.5, 1.5), (1.1, 1.1));
        let th = b_angle(&sym.0, &sym.1).unwrap();
        assert_abs_diff_eq!(th.re, 1.1, epsilon = 1e-12);
        assert_abs_diff_eq!(th.im, 0.0, epsilon = 1e-12);
        let sw = b_angle(&cfg.1, &cfg.0).unwrap();
        let th = b_angle(&cfg.0, &cfg.1).unwrap();
        assert_abs_diff_eq!(sw.re, PI - th.re, epsilon = 1e-12);
        assert_abs_diff_eq!(sw.im, -th.im, epsilon = 1e-12);
        let c1 = b_analytic(Analytic::Cos, th).unwrap();
        let c2 = b_analytic(Analytic::Cos, sw).unwrap();
        assert_abs_diff_eq!(c1.re, -c2.re, epsilon = 1e-12);
        assert_abs_diff_eq!(c1.im, -c2.im, epsilon = 1e-12);
    }

    #[test]
    fn angle_errors() {
        let cfg = normalized_configuration((2.0, 2.0), (3.0, 3.0), (1.0, 2.0));
        // axis from 1 to 2, disjoint from the imaginary axis
        let p = Mat2::from_cols([2.0, 1.0], [1.0, 1.0]);
        let far = p * Mat2::diag(2.0, 0.5) * p.inv();
        let bad = (far, cfg.1 .1);
        assert_eq!(b_angle(&cfg.0, &bad), Err(Error::DisjointAxes { component: Component::Plus }));
        let bad = (cfg.1 .0, far);
        assert_eq!(b_angle(&cfg.0, &bad), Err(Error::DisjointAxes { component: Component::Minus }));
        let flipped = (cfg.1 .0, cfg.1 .1.inv());
        assert_eq!(b_angle(&cfg.0, &flipped), Err(Error::CyclicOrderMismatch));
        assert_eq!(verify_common_perpendicular(&cfg.0, &flipped), Err(Error::CyclicOrderMismatch));
    }

    #[test]
    fn perpendicular_examples() {
        let cfg = normalized_configuration((2.0, 1.5), (3.0, 2.5), (1.2, 1.2));
        let r = verify_common_perpendicular(&cfg.0, &cfg.1).unwrap();
        assert_eq!(r.distance, 0.0);
        assert!(r.feet.0.dist(&r.feet.1) < 1e-12);
        assert_abs_diff_eq!(r.angle, 1.2, epsilon = 1e-12);

        let dd = 0.4;
        let qa = AdSElement::new(Mat2::J0).unwrap();
        let half = FUTURE.scale(0.5 * dd).exp_traceless();
        let qb = AdSElement::new(half * Mat2::J0 * half).unwrap();
        assert_abs_diff_eq!(signed_distance(&qa, &qb).unwrap(), dd, epsilon = 1e-14);
        assert_abs_diff_eq!(signed_distance(&qb, &qa).unwrap(), -dd, epsilon = 1e-14);

        let cfg = normalized_configuration((2.0, 2.0), (3.0, 1.5), (FRAC_PI_2, FRAC_PI_3));
        let r = verify_common_perpendicular(&cfg.0, &cfg.1).unwrap();
        assert!(r.max_orth_residual() < 1e-12);
        assert_abs_diff_eq!(r.distance, PI / 12.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.angle, 5.0 * PI / 12.0, epsilon = 1e-12);

        let anti = AdSElement::new(Mat2::rotation(FRAC_PI_2)).unwrap();
        assert_eq!(signed_distance(&AdSElement::IDENTITY, &anti), Err(Error::AntipodalPoints));
        let hyp = AdSElement::new(Mat2::diag(2.0, 0.5)).unwrap();
        assert_eq!(signed_distance(&AdSElement::IDENTITY, &hyp), Err(Error::NotTimelike));
    }

    proptest! {
        #[test]
        fn length_is_additive(a in loxodromic(), b in loxodromic(), n in 1u32..=5) {
            let m = BMat2::compose(a, b);
            let l = b_length(&m).unwrap();
            let ln = b_length(&m.pow(n)).unwrap();
            prop_assert!((ln.re - n as f64 * l.re).abs() <= 1e-10 * (1.0 + ln.re.abs()));
            prop_assert!((ln.im - n as f64 * l.im).abs() <= 1e-10 * (1.0 + ln.re.abs()));
            let lp = translation_length(&a, Component::Plus).unwrap();
            let lm = translation_length(&b, Component::Minus).unwrap();
            prop_assert!((l.re - 0.5 * (lp + lm)).abs() <= 1e-12 * (1.0 + lp + lm));
            prop_assert!((l.im - 0.5 * (lp - lm)).abs() <= 1e-12 * (1.0 + lp + lm));
        }

        #[test]
        fn transport_is_parallel_isometry(x in traceless(), y in traceless(), z in traceless(), t in -1.5..1.5f64) {
            let gt = x.scale(t).exp_traceless();
            let wy = gt.inv() * parallel_transport(&x, &y, t).unwrap();
            let wz = gt.inv() * parallel_transport(&x, &z, t).unwrap();
            let scale = 1.0 + y.max_abs() * z.max_abs() * 4.0;
            prop_assert!((wy.half_trace_pair(&wz) - y.half_trace_pair(&z)).abs() <= 1e-11 * scale);
            prop_assert!(transport_residual(&x, &y, t, 1e-3).unwrap() <= 1e-5);
        }

        #[test]
        fn fixed_points_are_equivariant(a in loxodromic(), c in sl2()) {
            let (att, rep) = axis_h2(&a).unwrap();
            let (att2, rep2) = axis_h2(&(c * a * c.inv())).unwrap();
            let mob = |x: f64| {
                let den = c.m[1][0] * x + c.m[1][1];
                if x.is_infinite() { c.m[0][0] / c.m[1][0] } else { (c.m[0][0] * x + c.m[0][1]) / den }
            };
            let close = |u: f64, v: f64| {
                if u.abs() > 1e6 || v.abs() > 1e6 { (1.0 / u - 1.0 / v).abs() < 1e-6 } else { (u - v).abs() <= 1e-8 * (1.0 + u.abs()) }
            };
            prop_assert!(close(mob(att), att2), "{} {}", mob(att), att2);
            prop_assert!(close(mob(rep), rep2));
        }

        #[test]
        fn principal_axis_is_invariant(gp in loxodromic(), gm in loxodromic(), y in 0.2..5.0f64, a in sl2(), b in sl2()) {
            let ax = principal_axis(&gp, &gm).unwrap();
            let img = AdSElement::new(gp * ax.at(y).mat() * gm.inv()).unwrap();
            prop_assert!(ax.residual(&img) <= 1e-10);
            prop_assert!(ax.residual(&ax.at(y)) <= 1e-12);
            let x = ax.lie_direction();
            prop_assert!((x.half_trace_pair(&x) - 1.0).abs() <= 1e-10);
            let moved = principal_axis(&(a * gp * a.inv()), &(b * gm * b.inv())).unwrap();
            let img = AdSElement::new(a * ax.at(y).mat() * b.inv()).unwrap();
            prop_assert!(moved.residual(&img) <= 1e-10);
        }

        #[test]
        fn perpendicular_matches_angle(cfg in configuration()) {
            let th = b_angle(&cfg.0, &cfg.1).unwrap();
            let r = verify_common_perpendicular(&cfg.0, &cfg.1).unwrap();
            prop_assert!(r.max_orth_residual() <= 1e-9, "{:?}", r);
            prop_assert!((r.distance - th.im).abs() <= 1e-9, "{} vs {}", r.distance, th.im);
            prop_assert!((r.angle - th.re).abs() <= 1e-9, "{} vs {}", r.angle, th.re);
        }

        #[test]
        fn angle_is_isometry_invariant(cfg in configuration(), a in bounded(), b in bounded()) {
            let th = b_angle(&cfg.0, &cfg.1).unwrap();
            let moved = conjugate_configuration(&cfg, &a, &b);
            let th2 = b_angle(&moved.0, &moved.1).unwrap();
            prop_assert!((th.re - th2.re).abs() <= 1e-9 && (th.im - th2.im).abs() <= 1e-9);
            let r = verify_common_perpendicular(&cfg.0, &cfg.1).unwrap();
            let r2 = verify_common_perpendicular(&moved.0, &moved.1).unwrap();
            prop_assert!((r.distance - r2.distance).abs() <= 1e-9 && (r.angle - r2.angle).abs() <= 1e-9, "{:?} {:?} {:?}", r, r2, th);
        }

        #[test]
        fn signed_distance_is_antisymmetric(p in sl2(), c in sl2(), t in -1.4..1.4f64) {
            let u = c * Mat2::J0 * c.inv();
            let pa = AdSElement::new(p).unwrap();
            let q = AdSElement::new(p * u.scale(t).exp_traceless()).unwrap();
            let d1 = signed_distance(&pa, &q).unwrap();
            let d2 = signed_distance(&q, &pa).unwrap();
            prop_assert!((d1 + d2).abs() <= 1e-12);
            prop_assert!((d1.abs() - t.abs()).abs() <= 1e-9);
        }
    }
}
