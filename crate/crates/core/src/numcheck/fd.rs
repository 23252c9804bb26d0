//! Central differences with one Richardson level on chart coordinates.

use crate::error::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-4;

/// Values that can be combined linearly by a difference scheme.
pub trait FdValue: Copy {
    fn axpby(a: f64, x: &Self, b: f64, y: &Self) -> Self;
}

impl FdValue for f64 {
    #[inline]
    fn axpby(a: f64, x: &Self, b: f64, y: &Self) -> Self {
        a * x + b * y
    }
}

impl<T: FdValue, const N: usize> FdValue for [T; N] {
    fn axpby(a: f64, x: &Self, b: f64, y: &Self) -> Self {
        core::array::from_fn(|i| T::axpby(a, &x[i], b, &y[i]))
    }
}

/// Chart points must keep `c - 2h > 0` (coordinate index 1).
pub fn check_step<const N: usize>(x: &[f64; N], h: f64) -> Result<()> {
    if N >= 2 && x[1] <= 2.0 * h {
        return Err(Error::StepTooLarge { c: x[1], h });
    }
    Ok(())
}

/// `(f(h) - f(-h)) / 2h` for a curve `f` through `f(0)`.
pub fn central<T: FdValue>(f: &impl Fn(f64) -> T, h: f64) -> T {
    let inv = 0.5 / h;
    T::axpby(inv, &f(h), -inv, &f(-h))
}

/// `(4 D(h/2) - D(h)) / 3`.
pub fn richardson<T: FdValue>(f: &impl Fn(f64) -> T, h: f64) -> T {
    T::axpby(4.0 / 3.0, &central(f, 0.5 * h), -1.0 / 3.0, &central(f, h))
}

/// Derivative of `F` along chart direction `dir` at `x`.
pub fn directional<T: FdValue, const N: usize>(
    f: &impl Fn(&[f64; N]) -> T,
    x: &[f64; N],
    dir: &[f64; N],
    h: f64,
) -> T {
    richardson(
        &|s: f64| {
            let y: [f64; N] = core::array::from_fn(|i| x[i] + s * dir[i]);
            f(&y)
        },
        h,
    )
}

/// `d F / d x_i`.
pub fn partial<T: FdValue, const N: usize>(f: &impl Fn(&[f64; N]) -> T, x: &[f64; N], i: usize, h: f64) -> T {
    let mut dir = [0.0; N];
    dir[i] = 1.0;
    directional(f, x, &dir, h)
}

/// Jacobian `J[k][i] = d F_k / d x_i`.
pub fn fd_differential<const N: usize, const M: usize>(
    f: impl Fn(&[f64; N]) -> [f64; M],
    x: &[f64; N],
    h: f64,
) -> Result<[[f64; N]; M]> {
    check_step(x, h)?;
    let mut out = [[0.0; N]; M];
    for i in 0..N {
        let col = partial(&f, x, i, h);
        for k in 0..M {
            out[k][i] = col[k];
        }
    }
    Ok(out)
}

/// `(d w)_{ij} = d_i w_j - d_j w_i` for a 1-form with components `w_j`.
pub fn fd_exterior_derivative_1<const N: usize>(
    form: impl Fn(&[f64; N]) -> [f64; N],
    x: &[f64; N],
    h: f64,
) -> Result<[[f64; N]; N]> {
    let jac = fd_differential(form, x, h)?;
    Ok(core::array::from_fn(|i| core::array::from_fn(|j| jac[j][i] - jac[i][j])))
}

/// `(d w)_{ijk} = d_i w_jk - d_j w_ik + d_k w_ij` for a 2-form.
pub fn fd_exterior_derivative_2<const N: usize>(
    form: impl Fn(&[f64; N]) -> [[f64; N]; N],
    x: &[f64; N],
    h: f64,
) -> Result<[[[f64; N]; N]; N]> {
    check_step(x, h)?;
    let d: [[[f64; N]; N]; N] = core::array::from_fn(|i| partial(&form, x, i, h));
    Ok(core::array::from_fn(|i| {
        core::array::from_fn(|j| core::array::from_fn(|k| d[i][j][k] - d[j][i][k] + d[k][i][j]))
    }))
}

/// Nijenhuis tensor of an endomorphism field `A` (columns are images of
/// coordinate vectors), `N[k][i][j]` = k-th component of `N(d_i, d_j)`.
///
/// `N(X, Y) = [AX, AY] - A[AX, Y] - A[X, AY] + A^2 [X, Y]`, and on
/// coordinate fields `[X, Y] = 0`.
pub fn nijenhuis<const N: usize>(
    field: impl Fn(&[f64; N]) -> [[f64; N]; N],
    x: &[f64; N],
    h: f64,
) -> Result<[[[f64; N]; N]; N]> {
    check_step(x, h)?;
    let a = field(x);
    // da[m][k][i] = d_m A^k_i
    let da: [[[f64; N]; N]; N] = core::array::from_fn(|m| partial(&field, x, m, h));
    // [A d_i, A d_j]^k = A^m_i d_m A^k_j - A^m_j d_m A^k_i
    // [A d_i, d_j]^k = -d_j A^k_i ;  [d_i, A d_j]^k = d_i A^k_j
    Ok(core::array::from_fn(|k| {
        core::array::from_fn(|i| {
            core::array::from_fn(|j| {
                let mut v = 0.0;
                for m in 0..N {
                    v += a[m][i] * da[m][k][j] - a[m][j] * da[m][k][i];
                    v += a[k][m] * da[j][m][i] - a[k][m] * da[i][m][j];
                }
                v
            })
        })
    }))
}
