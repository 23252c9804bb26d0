//! JSON wire format: matrices as row-major nested arrays, para-complex
//! numbers as `{"re", "im"}`, angles in radians.

use crate::CliError;
use parahk::jspace::{CotVec, LinearCx, TanVecJ};
use parahk::phk_core::{CotangentPoint, TangentPair};
use parahk::{Mat2, ParaComplex};
use serde_json::{json, Map, Value};

type Res<T> = Result<T, CliError>;

fn parse_err(path: &str, what: &str) -> CliError {
    CliError::Parse(format!("field `{path}`: {what}"))
}

pub fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub fn field<'a>(v: &'a Value, path: &str, key: &str) -> Res<&'a Value> {
    opt_field(v, path, key)?.ok_or_else(|| parse_err(&join(path, key), "missing"))
}

pub fn opt_field<'a>(v: &'a Value, path: &str, key: &str) -> Res<Option<&'a Value>> {
    match v {
        Value::Object(m) => Ok(m.get(key).filter(|x| !x.is_null())),
        _ => Err(parse_err(path, "expected an object")),
    }
}

pub fn num(v: &Value, path: &str) -> Res<f64> {
    v.as_f64().ok_or_else(|| parse_err(path, "expected a number"))
}

pub fn text<'a>(v: &'a Value, path: &str) -> Res<&'a str> {
    v.as_str().ok_or_else(|| parse_err(path, "expected a string"))
}

pub fn array<'a>(v: &'a Value, path: &str, len: Option<usize>) -> Res<&'a Vec<Value>> {
    let a = v.as_array().ok_or_else(|| parse_err(path, "expected an array"))?;
    match len {
        Some(n) if a.len() != n => Err(parse_err(path, &format!("expected {n} elements, got {}", a.len()))),
        _ => Ok(a),
    }
}

pub fn nums<const N: usize>(v: &Value, path: &str) -> Res<[f64; N]> {
    let a = array(v, path, Some(N))?;
    let mut out = [0.0; N];
    for (i, x) in a.iter().enumerate() {
        out[i] = num(x, &format!("{path}[{i}]"))?;
    }
    Ok(out)
}

pub fn mat(v: &Value, path: &str) -> Res<Mat2> {
    let rows = array(v, path, Some(2))?;
    let r0: [f64; 2] = nums(&rows[0], &format!("{path}[0]"))?;
    let r1: [f64; 2] = nums(&rows[1], &format!("{path}[1]"))?;
    Ok(Mat2::new(r0[0], r0[1], r1[0], r1[1]))
}

/// `{"re", "im"}`, or a bare number for a real element.
pub fn para(v: &Value, path: &str) -> Res<ParaComplex> {
    if let Some(x) = v.as_f64() {
        return Ok(ParaComplex::new(x, 0.0));
    }
    let re = num(field(v, path, "re")?, &join(path, "re"))?;
    let im = num(field(v, path, "im")?, &join(path, "im"))?;
    Ok(ParaComplex::new(re, im))
}

/// `{"a", "c"}` chart coordinates or a full matrix.
pub fn cx(v: &Value, path: &str) -> Res<LinearCx> {
    if v.is_array() {
        return Ok(LinearCx::new(mat(v, path)?)?);
    }
    let a = num(field(v, path, "a")?, &join(path, "a"))?;
    let c = num(field(v, path, "c")?, &join(path, "c"))?;
    Ok(LinearCx::from_chart(a, c)?)
}

/// `{"p", "q"}` chart coordinates or a full symmetric matrix.
pub fn cot(j: &LinearCx, v: &Value, path: &str) -> Res<CotVec> {
    if v.is_array() {
        return Ok(CotVec::new(j, mat(v, path)?)?);
    }
    let p = num(field(v, path, "p")?, &join(path, "p"))?;
    let q = num(field(v, path, "q")?, &join(path, "q"))?;
    Ok(CotVec::from_chart(j, p, q))
}

/// `{"J", "sigma"}` (sigma defaults to zero) or `{"chart": [a, c, p, q]}`.
pub fn point(v: &Value, path: &str) -> Res<CotangentPoint> {
    if let Some(c) = opt_field(v, path, "chart")? {
        return Ok(CotangentPoint::from_chart(nums(c, &join(path, "chart"))?)?);
    }
    let j = cx(field(v, path, "J")?, &join(path, "J"))?;
    let s = match opt_field(v, path, "sigma")? {
        Some(s) => cot(&j, s, &join(path, "sigma"))?,
        None => CotVec::ZERO,
    };
    Ok(CotangentPoint::new(j, s))
}

/// `{"Jdot", "sigmadot"}` matrices or `{"chart": [a', c', p', q']}`.
pub fn tangent(pt: &CotangentPoint, v: &Value, path: &str) -> Res<TangentPair> {
    if let Some(c) = opt_field(v, path, "chart")? {
        return Ok(TangentPair::from_chart(pt, nums(c, &join(path, "chart"))?));
    }
    let jd = mat(field(v, path, "Jdot")?, &join(path, "Jdot"))?;
    let sd = mat(field(v, path, "sigmadot")?, &join(path, "sigmadot"))?;
    Ok(TangentPair::new(pt, jd, sd)?)
}

/// A PSL(2,B) element: `{"plus", "minus"}` components or `{"entries"}`, a
/// 2x2 array of para-complex numbers.
pub fn bmat(v: &Value, path: &str) -> Res<(Mat2, Mat2)> {
    if let Some(e) = opt_field(v, path, "entries")? {
        let p = join(path, "entries");
        let rows = array(e, &p, Some(2))?;
        let mut out = [[ParaComplex::new(0.0, 0.0); 2]; 2];
        for (i, row) in rows.iter().enumerate() {
            let cols = array(row, &format!("{p}[{i}]"), Some(2))?;
            for (j, x) in cols.iter().enumerate() {
                out[i][j] = para(x, &format!("{p}[{i}][{j}]"))?;
            }
        }
        return Ok(parahk::ads3::BMat2::from_entries(out).decompose());
    }
    let plus = mat(field(v, path, "plus")?, &join(path, "plus"))?;
    let minus = mat(field(v, path, "minus")?, &join(path, "minus"))?;
    Ok((plus, minus))
}

pub fn mat_json(m: &Mat2) -> Value {
    json!([[m.m[0][0], m.m[0][1]], [m.m[1][0], m.m[1][1]]])
}

pub fn para_json(z: ParaComplex) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn complex_json(re: f64, im: f64) -> Value {
    json!({ "re": re, "im": im })
}

pub fn point_json(pt: &CotangentPoint) -> Value {
    json!({ "J": mat_json(&pt.jm()), "sigma": mat_json(&pt.sigma()) })
}

pub fn tangent_json(v: &TangentPair) -> Value {
    let mut m = Map::new();
    m.insert("Jdot".into(), mat_json(&v.jd));
    m.insert("sigmadot".into(), mat_json(&v.sd));
    if v.projected {
        m.insert("projected".into(), Value::Bool(true));
    }
    Value::Object(m)
}

pub fn tanj_pair_json(d: &(TanVecJ, TanVecJ)) -> Value {
    json!({ "left": mat_json(&d.0.mat()), "right": mat_json(&d.1.mat()) })
}
