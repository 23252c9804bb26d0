//! Small fixed-size dense helpers used by the chart calculus.

pub type Mat4 = [[f64; 4]; 4];

pub fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat4_identity() -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    out
}

pub fn max_abs<const N: usize, const M: usize>(a: &[[f64; M]; N]) -> f64 {
    a.iter().flatten().fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn max_abs_diff<const N: usize, const M: usize>(a: &[[f64; M]; N], b: &[[f64; M]; N]) -> f64 {
    let mut m = 0.0f64;
    for i in 0..N {
        for j in 0..M {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn sym_eigenvalues<const N: usize>(a: &[[f64; N]; N]) -> [f64; N] {
    let mut m = *a;
    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..N {
            for j in (i + 1)..N {
                off += m[i][j] * m[i][j];
            }
        }
        if off <= 1e-30 * (1.0 + max_abs(&m) * max_abs(&m)) {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                if m[p][q] == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..N {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..N {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut ev = [0.0; N];
    for i in 0..N {
        ev[i] = m[i][i];
    }
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}
