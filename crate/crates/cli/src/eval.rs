//! `parahk eval`: pointwise quantities as JSON.

use crate::wire::{self, field, mat_json, num, opt_field, para_json, point_json, tangent_json, text};
use crate::CliError;
use parahk::ads3::{
    b_angle, b_length, fixed_points, intersection_angles, principal_axis, verify_common_perpendicular, BMat2,
};
use parahk::geom_maps::{
    c_theta, c_theta_differential, cc_differential, cc_map, circle_act, circle_differential, hamiltonian,
    mess_differential, mess_map, metric_family, torus_lattice_normalize, torus_normalize, CxPair,
};
use parahk::moment_maps::{eta, eta_c};
use parahk::phk_core::{
    apply_structure, eval_form, eval_omega_c, gram_matrix, liouville_c, metric_g, signature, CotangentPoint,
    Structure, TangentPair,
};
use serde_json::{json, Value};

type Res<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum AdsQuantity {
    Length,
    Axis,
    Angle,
    Perp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MapKind {
    Mess,
    Cc,
    Ctheta,
    Circle,
}

fn tangents(pt: &CotangentPoint, input: &Value, n: usize) -> Res<Vec<TangentPair>> {
    let arr = wire::array(field(input, "", "tangents")?, "tangents", None)?;
    if arr.len() < n {
        return Err(CliError::Parse(format!(
            "field `tangents`: expected {n} tangent vectors, got {}",
            arr.len()
        )));
    }
    arr.iter().take(n).enumerate().map(|(i, t)| wire::tangent(pt, t, &format!("tangents[{i}]"))).collect()
}

fn structure(q: &str) -> Option<Structure> {
    match q.chars().last()? {
        'I' => Some(Structure::I),
        'J' => Some(Structure::J),
        'K' => Some(Structure::K),
        _ => None,
    }
}

/// `{"point", "tangents", "quantity"}` on the cotangent bundle.
pub fn phk(input: &Value) -> Res<Value> {
    let pt = wire::point(field(input, "", "point")?, "point")?;
    let q = text(field(input, "", "quantity")?, "quantity")?;
    let value = match q {
        "g" => {
            let v = tangents(&pt, input, 2)?;
            json!(metric_g(&pt, &v[0], &v[1]))
        }
        "omegaI" | "omegaJ" | "omegaK" => {
            let v = tangents(&pt, input, 2)?;
            json!(eval_form(structure(q).unwrap(), &pt, &v[0], &v[1]))
        }
        "omegaC" => {
            let v = tangents(&pt, input, 2)?;
            let z = eval_omega_c(&pt, &v[0], &v[1]);
            wire::complex_json(z.re, z.im)
        }
        "liouville" => {
            let v = tangents(&pt, input, 1)?;
            let z = liouville_c(&pt, &v[0]);
            wire::complex_json(z.re, z.im)
        }
        "applyI" | "applyJ" | "applyK" => {
            let v = tangents(&pt, input, 1)?;
            tangent_json(&apply_structure(structure(q).unwrap(), &pt, &v[0]))
        }
        "hamiltonian" => json!(hamiltonian(&pt)),
        "gram" => json!(gram_matrix(&pt)),
        "signature" => {
            let (p, n) = signature(&pt);
            json!([p, n])
        }
        "moment" => {
            let x = wire::mat(field(input, "", "X")?, "X")?;
            if x.trace().abs() > 1e-10 * (1.0 + x.max_abs()) {
                return Err(parahk::Error::NotTraceless { trace: x.trace() }.into());
            }
            let z = eta_c(&pt, &x);
            json!({
                "I": eta(Structure::I, &pt).eval(&x),
                "J": eta(Structure::J, &pt).eval(&x),
                "K": eta(Structure::K, &pt).eval(&x),
                "C": wire::complex_json(z.re, z.im),
            })
        }
        other => {
            return Err(CliError::Parse(format!(
                "field `quantity`: unknown quantity `{other}` (expected g, omegaI, omegaJ, omegaK, \
                 omegaC, liouville, applyI, applyJ, applyK, hamiltonian, gram, signature, moment)"
            )))
        }
    };
    Ok(json!({ "value": value }))
}

fn pair_json(p: &CxPair) -> Value {
    json!({ "left": mat_json(&p.jl.mat()), "right": mat_json(&p.jr.mat()) })
}

fn theta(input: &Value) -> Res<f64> {
    num(field(input, "", "theta")?, "theta")
}

/// `{"point", "theta"?, "tangent"?}` through one of the geometric maps.
pub fn map(kind: MapKind, input: &Value) -> Res<Value> {
    let pt = wire::point(field(input, "", "point")?, "point")?;
    let v = opt_field(input, "", "tangent")?.map(|t| wire::tangent(&pt, t, "tangent")).transpose()?;
    let mut out = match kind {
        MapKind::Mess => {
            let mut o = pair_json(&mess_map(&pt));
            if let Some(v) = &v {
                o["differential"] = wire::tanj_pair_json(&mess_differential(&pt, v));
            }
            o
        }
        MapKind::Cc => {
            let mut o = pair_json(&cc_map(&pt));
            if let Some(v) = &v {
                o["differential"] = wire::tanj_pair_json(&cc_differential(&pt, v));
            }
            o
        }
        MapKind::Ctheta => {
            let t = theta(input)?;
            let mut o = pair_json(&c_theta(&pt, t));
            if let Some(v) = &v {
                o["differential"] = wire::tanj_pair_json(&c_theta_differential(&pt, t, v));
            }
            o
        }
        MapKind::Circle => {
            let t = theta(input)?;
            let mut o = json!({ "point": point_json(&circle_act(&pt, t)) });
            if let Some(v) = &v {
                o["differential"] = tangent_json(&circle_differential(&pt, t, v));
            }
            o
        }
    };
    out["hamiltonian"] = json!(hamiltonian(&pt));
    Ok(out)
}

/// Normalized embedding data of the torus and samples of the metric family,
/// each as the 3x3 Lorentzian matrix with the `-dt^2` entry appended.
pub fn torus(input: &Value) -> Res<Value> {
    let pt = wire::point(field(input, "", "point")?, "point")?;
    let ts: Vec<f64> = match opt_field(input, "", "t")? {
        Some(t) => wire::array(t, "t", None)?
            .iter()
            .enumerate()
            .map(|(i, x)| num(x, &format!("t[{i}]")))
            .collect::<Res<_>>()?,
        None => (0..4).map(|k| k as f64 * std::f64::consts::FRAC_PI_4).collect(),
    };
    let e = torus_normalize(&pt)?;
    let (t, lattice) = torus_lattice_normalize(&pt)?;
    let family: Vec<Value> = ts
        .iter()
        .map(|&s| {
            let m = metric_family(&e, s);
            json!({ "t": s, "metric": [[m.m[0][0], m.m[0][1], 0.0], [m.m[1][0], m.m[1][1], 0.0], [0.0, 0.0, -1.0]] })
        })
        .collect();
    Ok(json!({
        "h": mat_json(&e.h),
        "B": mat_json(&e.b),
        "T": mat_json(&t),
        "lattice": lattice,
        "metric_family": family,
    }))
}

pub fn ads(kind: AdsQuantity, input: &Value) -> Res<Value> {
    match kind {
        AdsQuantity::Length => {
            let (p, m) = wire::bmat(input, "")?;
            Ok(para_json(b_length(&BMat2::compose(p, m))?))
        }
        AdsQuantity::Axis => {
            let (p, m) = wire::bmat(input, "")?;
            let g = principal_axis(&p, &m)?;
            let fp = |a| -> Res<Value> {
                let f = fixed_points(a)?;
                Ok(json!({ "attracting": f.attracting, "repelling": f.repelling }))
            };
            Ok(json!({
                "point": mat_json(&g.point.mat()),
                "direction": mat_json(&g.direction.vel()),
                "fixed_points": { "plus": fp(&p)?, "minus": fp(&m)? },
            }))
        }
        AdsQuantity::Angle | AdsQuantity::Perp => {
            let a = wire::bmat(field(input, "", "alpha")?, "alpha")?;
            let b = wire::bmat(field(input, "", "beta")?, "beta")?;
            if kind == AdsQuantity::Angle {
                let (pp, pm) = intersection_angles(&a, &b)?;
                let th = b_angle(&a, &b)?;
                Ok(json!({ "re": th.re, "im": th.im, "phi": { "plus": pp, "minus": pm } }))
            } else {
                let r = verify_common_perpendicular(&a, &b)?;
                Ok(json!({
                    "distance": r.distance,
                    "angle": r.angle,
                    "orth_residual": r.orth_residual,
                    "feet": [mat_json(&r.feet.0.mat()), mat_json(&r.feet.1.mat())],
                }))
            }
        }
    }
}
