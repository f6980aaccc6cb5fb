//! Eigenvalues, norms and null spaces.

use crate::error::{Error, Result};

use super::matrix::{ComplexMatrix, C64};
use super::tolerance::Tolerance;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric matrix (row-major, `n x n`) by cyclic Jacobi
/// rotations, returned in ascending order.
pub fn symmetric_eigenvalues(n: usize, a: &[f64]) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let total: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    if total == 0.0 {
        return vec![0.0; n];
    }
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues of a Hermitian matrix through its real symmetric embedding
/// `[[A, -B], [B, A]]`, which carries every eigenvalue twice.
fn hermitian_eigenvalues_unchecked(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    let h = &(m + &m.adjoint()).scale_real(0.5);
    let big = 2 * n;
    let mut a = vec![0.0; big * big];
    for i in 0..n {
        for j in 0..n {
            let z = h.get(i, j);
            a[i * big + j] = z.re;
            a[(i + n) * big + j + n] = z.re;
            a[i * big + j + n] = -z.im;
            a[(i + n) * big + j] = z.im;
        }
    }
    symmetric_eigenvalues(big, &a)
        .into_iter()
        .step_by(2)
        .collect()
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_spectrum(m: &ComplexMatrix, tol: Tolerance) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "spectrum needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermitian_defect();
    if !tol.accepts(defect, m.frobenius_norm()) {
        return Err(Error::Domain(format!(
            "matrix is not Hermitian (‖m − m*‖ = {defect:.3e})"
        )));
    }
    Ok(hermitian_eigenvalues_unchecked(m))
}

/// Largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    if m.is_empty() {
        return Err(Error::Shape("operator norm of an empty matrix".into()));
    }
    let gram = if m.rows() <= m.cols() {
        m * &m.adjoint()
    } else {
        &m.adjoint() * m
    };
    let top = hermitian_eigenvalues_unchecked(&gram)
        .last()
        .copied()
        .unwrap_or(0.0);
    Ok(top.max(0.0).sqrt())
}

fn cube_scale(m: &ComplexMatrix) -> f64 {
    m.frobenius_norm().max(1.0).powi(3)
}

/// `‖v v* v − v‖_F`, the partial-isometry defect.
pub fn partial_isometry_residual(v: &ComplexMatrix) -> f64 {
    (&(&(v * &v.adjoint()) * v) - v).frobenius_norm()
}

/// `v v* v = v` within tolerance (scaled by `max(1, ‖v‖_F)^3`).
pub fn is_partial_isometry(v: &ComplexMatrix, tol: Tolerance) -> Result<bool> {
    if v.is_empty() {
        return Err(Error::Shape("partial isometry test on an empty matrix".into()));
    }
    Ok(tol.accepts(partial_isometry_residual(v), cube_scale(v)))
}

pub(crate) fn geodesic_scale(m: &ComplexMatrix) -> f64 {
    cube_scale(m)
}

/// Basis of the null space of a real `rows x cols` matrix (row-major),
/// via reduced row echelon form with partial pivoting. Pivots below
/// `rel * max|a|` count as zero.
pub fn real_nullspace(rows: usize, cols: usize, a: &[f64], rel: f64) -> Vec<Vec<f64>> {
    assert_eq!(a.len(), rows * cols);
    let mut m = a.to_vec();
    let cutoff = rel * a.iter().fold(0.0_f64, |acc, x| acc.max(x.abs())).max(f64::MIN_POSITIVE);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (best, val) = (r..rows)
            .map(|i| (i, m[i * cols + c].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= cutoff {
            for i in r..rows {
                m[i * cols + c] = 0.0;
            }
            continue;
        }
        if best != r {
            for k in 0..cols {
                m.swap(best * cols + k, r * cols + k);
            }
        }
        let p = m[r * cols + c];
        for k in 0..cols {
            m[r * cols + k] /= p;
        }
        for i in 0..rows {
            if i != r {
                let f = m[i * cols + c];
                if f != 0.0 {
                    for k in 0..cols {
                        m[i * cols + k] -= f * m[r * cols + k];
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0.0; cols];
            v[f] = 1.0;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row * cols + f];
            }
            v
        })
        .collect()
}

/// Euclidean norm of a complex vector.
pub fn complex_vec_norm(v: &[C64]) -> f64 {
    v.iter().map(C64::norm_sqr).sum::<f64>().sqrt()
}
