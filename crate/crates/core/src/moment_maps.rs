//! Moment maps for the SL(2,R) action on the cotangent bundle of J(R^2).

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::numcheck::fd::{check_step, directional};
use crate::phk_core::{eval_form, CotangentPoint, Structure, TangentPair};
use num_complex::Complex64;

/// Element of sl2* stored as the traceless matrix `R` with `X -> tr(R X)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sl2Dual {
    rep: Mat2,
}

impl Sl2Dual {
    pub fn from_rep(m: Mat2) -> Self {
        Self { rep: m.traceless() }
    }

    pub fn rep(&self) -> Mat2 {
        self.rep
    }

    pub fn eval(&self, x: &Mat2) -> f64 {
        (self.rep * *x).trace()
    }
}

fn check_traceless(x: &Mat2) -> Result<()> {
    let t = x.trace();
    if t.abs() > 1e-10 * (1.0 + x.max_abs()) {
        return Err(Error::NotTraceless { trace: t });
    }
    Ok(())
}

pub fn eta(which: Structure, pt: &CotangentPoint) -> Sl2Dual {
    let gs = pt.g_inv() * pt.sigma();
    let rep = match which {
        Structure::I => pt.jm().scale(pt.f()),
        Structure::J => -(gs * pt.jm()),
        Structure::K => gs,
    };
    Sl2Dual::from_rep(rep)
}

/// `V_X = ([X, J], -X^T sigma - sigma X)`.
pub fn infinitesimal_action(x: &Mat2, pt: &CotangentPoint) -> Result<TangentPair> {
    check_traceless(x)?;
    let s = pt.sigma();
    Ok(TangentPair { jd: x.commutator(&pt.jm()), sd: -(x.transpose() * s + s * *x), projected: false })
}

/// `(eta_J + i eta_K)(X)`.
pub fn eta_c(pt: &CotangentPoint, x: &Mat2) -> Complex64 {
    Complex64::new(eta(Structure::J, pt).eval(x), eta(Structure::K, pt).eval(x))
}

/// `|d(eta^X)(v) - omega(V_X, v)|`, the derivative taken by finite differences
/// along the chart line through `pt` with velocity `v`.
pub fn verify_moment(
    which: Structure,
    pt: &CotangentPoint,
    v: &TangentPair,
    x: &Mat2,
    h: f64,
) -> Result<f64> {
    let vx = infinitesimal_action(x, pt)?;
    let base = pt.chart();
    check_step(&base, h)?;
    let dir = v.chart();
    let eta_x = |y: &[f64; 4]| match CotangentPoint::from_chart(*y) {
        Ok(p) => eta(which, &p).eval(x),
        Err(_) => f64::NAN,
    };
    let fd = directional(&eta_x, &base, &dir, h);
    let exact = eval_form(which, pt, &vx, v);
    Ok((fd - exact).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jspace::{CotVec, LinearCx};
    use crate::numcheck::fd::DEFAULT_STEP;
    use crate::phk_core::{liouville_c, sl2_act_pair, sl2_act_point};
    use proptest::prelude::*;

    fn d() -> Mat2 {
        Mat2::diag(1.0, -1.0)
    }

    fn point() -> impl Strategy<Value = CotangentPoint> {
        (-2.0..2.0f64, 0.2..5.0f64, -3.0..3.0f64, -3.0..3.0f64)
            .prop_map(|(a, c, p, q)| CotangentPoint::from_chart([a, c, p, q]).unwrap())
    }

    fn sl2() -> impl Strategy<Value = Mat2> {
        (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_filter_map("entries in [-2, 2]", |(a, b, c)| {
            let d = (1.0 + b * c) / a;
            (d.abs() <= 2.0).then(|| Mat2::new(a, b, c, d))
        })
    }

    fn traceless() -> impl Strategy<Value = Mat2> {
        prop::array::uniform3(-2.0..2.0f64).prop_map(|[a, b, c]| Mat2::new(a, b, c, -a))
    }

    #[test]
    fn eta_examples() {
        let j = LinearCx::STANDARD;
        let o = CotangentPoint::new(j, CotVec::ZERO);
        assert_eq!(eta(Structure::I, &o).eval(&Mat2::J0), -2.0);
        let p = CotangentPoint::new(j, CotVec::new(&j, d()).unwrap());
        assert_eq!(eta(Structure::K, &p).eval(&d()), 2.0);
        let nil = Mat2::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(eta(Structure::J, &p).rep(), Mat2::new(0.0, 1.0, 1.0, 0.0));
        assert_eq!(eta(Structure::J, &p).eval(&nil), 1.0);
    }

    #[test]
    fn infinitesimal_examples() {
        let j = LinearCx::STANDARD;
        let o = CotangentPoint::new(j, CotVec::ZERO);
        let v = infinitesimal_action(&d(), &o).unwrap();
        assert_eq!((v.jd, v.sd), (Mat2::new(0.0, -2.0, -2.0, 0.0), Mat2::ZERO));
        let p = CotangentPoint::new(j, CotVec::from_chart(&j, 0.7, -1.2));
        let v = infinitesimal_action(&Mat2::J0, &p).unwrap();
        assert_eq!(v.jd, Mat2::ZERO);
        assert!(v.sd.dist(&(p.sigma() * Mat2::J0).scale(-2.0)) < 1e-15);
        assert_eq!(infinitesimal_action(&Mat2::ZERO, &p).unwrap(), TangentPair::ZERO);
        assert!(matches!(infinitesimal_action(&Mat2::IDENTITY, &p), Err(Error::NotTraceless { .. })));
    }

    #[test]
    fn zero_section_derivative() {
        let o = CotangentPoint::new(LinearCx::STANDARD, CotVec::ZERO);
        let v = TangentPair::from_chart(&o, [0.3, -0.4, 0.5, 0.2]);
        for x in [d(), Mat2::J0, Mat2::new(0.0, 1.0, 0.0, 0.0)] {
            let r = verify_moment(Structure::I, &o, &v, &x, DEFAULT_STEP).unwrap();
            assert!(r <= 1e-8, "{r}");
            let direct = (v.jd * x).trace();
            let vx = infinitesimal_action(&x, &o).unwrap();
            assert!((eval_form(Structure::I, &o, &vx, &v) - direct).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn moment_identity(pt in point(), v in prop::array::uniform4(-1.0..1.0f64), x in traceless()) {
            let v = TangentPair::from_chart(&pt, v);
            for which in Structure::ALL {
                let r = verify_moment(which, &pt, &v, &x, DEFAULT_STEP).unwrap();
                prop_assert!(r <= 1e-6, "{} residual {}", which.name(), r);
            }
            // along V_X itself, with the chart velocity normalized
            let vx = infinitesimal_action(&x, &pt).unwrap();
            let n = vx.chart().iter().fold(0.0f64, |m, c| m.max(c.abs()));
            prop_assume!(n > 1e-8);
            let vx = TangentPair::from_chart(&pt, vx.chart().map(|c| c / n));
            for which in Structure::ALL {
                prop_assert!(verify_moment(which, &pt, &vx, &x, DEFAULT_STEP).unwrap() <= 1e-6);
            }
        }

        #[test]
        fn infinitesimal_action_is_derivative(pt in point(), x in traceless()) {
            let vx = infinitesimal_action(&x, &pt).unwrap();
            prop_assert!(TangentPair::new(&pt, vx.jd, vx.sd).is_ok());
            let curve = |t: f64| {
                let q = sl2_act_point(&x.scale(t).exp_traceless(), &pt).unwrap();
                let (j, s) = (q.jm(), q.sigma());
                [j.m[0][0], j.m[0][1], j.m[1][0], s.m[0][0], s.m[0][1], s.m[1][1]]
            };
            let fd = crate::numcheck::fd::richardson(&curve, DEFAULT_STEP);
            let exact = [vx.jd.m[0][0], vx.jd.m[0][1], vx.jd.m[1][0], vx.sd.m[0][0], vx.sd.m[0][1], vx.sd.m[1][1]];
            for i in 0..6 {
                prop_assert!((fd[i] - exact[i]).abs() <= 1e-6 * (1.0 + exact[i].abs()));
            }
        }

        #[test]
        fn equivariance(pt in point(), a in sl2(), x in traceless()) {
            let moved = sl2_act_point(&a, &pt).unwrap();
            let xc = a.inv() * x * a;
            for which in Structure::ALL {
                let lhs = eta(which, &moved).eval(&x);
                let rhs = eta(which, &pt).eval(&xc);
                let scale = 1.0 + eta(which, &pt).rep().max_abs() * xc.max_abs() + lhs.abs();
                prop_assert!((lhs - rhs).abs() <= 1e-11 * scale, "{} {} {}", which.name(), lhs, rhs);
            }
            let v1 = infinitesimal_action(&x, &moved).unwrap();
            let v2 = sl2_act_pair(&a, &infinitesimal_action(&xc, &pt).unwrap()).unwrap();
            prop_assert!(v1.dist(&v2) <= 1e-11 * (1.0 + v1.max_abs() + v2.max_abs()));
        }

        #[test]
        fn complex_moment_is_liouville(pt in point(), x in traceless()) {
            let vx = infinitesimal_action(&x, &pt).unwrap();
            let lhs = eta_c(&pt, &x);
            let rhs = liouville_c(&pt, &vx);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm() + pt.sigma().max_abs() * x.max_abs() * 4.0));
        }
    }
}
