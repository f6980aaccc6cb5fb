use crate::error::{Error, Result};

use super::matrix::ComplexMatrix;
use super::tolerance::Tolerance;

/// A linear subspace of `rows x cols` matrices, held as a linearly independent
/// basis together with a Frobenius-orthonormal copy used for projections.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    rows: usize,
    cols: usize,
    basis: Vec<ComplexMatrix>,
    orthonormal: Vec<ComplexMatrix>,
}

/// Removes the components of `x` along the orthonormal set `q`, twice over
/// (one reorthogonalisation pass).
fn project_out(x: &ComplexMatrix, q: &[ComplexMatrix]) -> ComplexMatrix {
    let mut r = x.clone();
    for _ in 0..2 {
        for e in q {
            let c = e.inner(&r);
            r.axpy(-c, e);
        }
    }
    r
}

fn check_shapes(rows: usize, cols: usize, vectors: &[ComplexMatrix]) -> Result<()> {
    match vectors.iter().position(|v| v.shape() != (rows, cols)) {
        Some(k) => Err(Error::Shape(format!(
            "basis element {k} is {}x{}, expected {rows}x{cols}",
            vectors[k].rows(),
            vectors[k].cols()
        ))),
        None => Ok(()),
    }
}

/// Greedy orthonormalisation. Returns the indices kept and the orthonormal set.
/// A vector is kept when its residual exceeds `rel * max_norm` (numerical rank cut).
fn orthonormalise(vectors: &[ComplexMatrix], tol: Tolerance) -> (Vec<usize>, Vec<ComplexMatrix>) {
    let max_norm = vectors
        .iter()
        .map(ComplexMatrix::frobenius_norm)
        .fold(0.0, f64::max);
    let cut = (tol.rel * max_norm).max(tol.abs);
    let mut kept = Vec::new();
    let mut q: Vec<ComplexMatrix> = Vec::new();
    for (k, v) in vectors.iter().enumerate() {
        let r = project_out(v, &q);
        let norm = r.frobenius_norm();
        if norm > cut {
            kept.push(k);
            q.push(r.scale_real(1.0 / norm));
        }
    }
    (kept, q)
}

impl SubspaceBasis {
    /// Strict constructor: the elements must be linearly independent.
    pub fn new(rows: usize, cols: usize, basis: Vec<ComplexMatrix>, tol: Tolerance) -> Result<Self> {
        check_shapes(rows, cols, &basis)?;
        let (kept, orthonormal) = orthonormalise(&basis, tol);
        if kept.len() != basis.len() {
            let bad = (0..basis.len()).find(|k| !kept.contains(k)).unwrap_or(0);
            return Err(Error::Input(format!(
                "basis element {bad} is linearly dependent on the preceding ones"
            )));
        }
        Ok(Self {
            rows,
            cols,
            basis,
            orthonormal,
        })
    }

    /// Keeps an independent subset of `vectors` spanning the same space.
    pub fn spanning(rows: usize, cols: usize, vectors: &[ComplexMatrix], tol: Tolerance) -> Result<Self> {
        check_shapes(rows, cols, vectors)?;
        let (kept, orthonormal) = orthonormalise(vectors, tol);
        Ok(Self {
            rows,
            cols,
            basis: kept.into_iter().map(|k| vectors[k].clone()).collect(),
            orthonormal,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            basis: Vec::new(),
            orthonormal: Vec::new(),
        }
    }

    /// The whole matrix space, spanned by matrix units in row-major order.
    pub fn full(rows: usize, cols: usize) -> Self {
        let units: Vec<ComplexMatrix> = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| ComplexMatrix::unit(rows, cols, i, j)))
            .collect();
        Self {
            rows,
            cols,
            orthonormal: units.clone(),
            basis: units,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn orthonormal(&self) -> &[ComplexMatrix] {
        &self.orthonormal
    }

    /// Orthogonal projection of `x` onto the span.
    pub fn project(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check(x)?;
        Ok(x - &project_out(x, &self.orthonormal))
    }

    pub fn residual(&self, x: &ComplexMatrix) -> Result<f64> {
        self.check(x)?;
        Ok(project_out(x, &self.orthonormal).frobenius_norm())
    }

    pub fn contains(&self, x: &ComplexMatrix, tol: Tolerance) -> Result<bool> {
        Ok(tol.accepts(self.residual(x)?, x.frobenius_norm()))
    }

    /// Same span (each basis lies in the other).
    pub fn same_span(&self, other: &Self, tol: Tolerance) -> Result<bool> {
        if self.shape() != other.shape() || self.dim() != other.dim() {
            return Ok(false);
        }
        for x in &other.basis {
            if !self.contains(x, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check(&self, x: &ComplexMatrix) -> Result<()> {
        if x.shape() != (self.rows, self.cols) {
            return Err(Error::Shape(format!(
                "{}x{} matrix tested against a subspace of {}x{} matrices",
                x.rows(),
                x.cols(),
                self.rows,
                self.cols
            )));
        }
        Ok(())
    }
}

/// Frobenius distance from `x` to the span of `s`.
pub fn span_residual(x: &ComplexMatrix, s: &SubspaceBasis) -> Result<f64> {
    s.residual(x)
}

/// Numerical rank of a family of equally-shaped matrices: directions whose
/// residual falls below `rel * max_norm` are treated as zero.
pub fn numerical_rank(vectors: &[ComplexMatrix], tol: Tolerance) -> usize {
    orthonormalise(vectors, tol).0.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_examples() {
        let s = SubspaceBasis::new(
            2,
            2,
            vec![ComplexMatrix::unit(2, 2, 0, 0), ComplexMatrix::unit(2, 2, 1, 1)],
            Tolerance::default(),
        )
        .unwrap();
        assert_eq!(s.residual(&ComplexMatrix::unit(2, 2, 0, 0)).unwrap(), 0.0);
        assert_eq!(s.residual(&ComplexMatrix::unit(2, 2, 0, 1)).unwrap(), 1.0);
        let x = ComplexMatrix::from_real(&[&[0.0, 3.0], &[4.0, 0.0]]).unwrap();
        assert_eq!(s.residual(&x).unwrap(), 5.0);
        assert!(s.residual(&ComplexMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let e = ComplexMatrix::unit(1, 2, 0, 0);
        let twice = e.scale_real(2.0);
        let tol = Tolerance::default();
        assert!(SubspaceBasis::new(1, 2, vec![e.clone(), twice.clone()], tol).is_err());
        assert_eq!(SubspaceBasis::spanning(1, 2, &[e, twice], tol).unwrap().dim(), 1);
    }

    #[test]
    fn zero_subspace() {
        let z = SubspaceBasis::zero(2, 3);
        let x = ComplexMatrix::unit(2, 3, 1, 2);
        assert_eq!(z.dim(), 0);
        assert_eq!(z.residual(&x).unwrap(), 1.0);
        assert_eq!(numerical_rank(&[ComplexMatrix::zeros(2, 2)], Tolerance::default()), 0);
    }
}
