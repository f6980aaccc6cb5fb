use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matops::ComplexMatrix;

/// Block sizes `[n₁..n_p]` of the diagonal algebra `A = ⊕ M_{nᵢ}(ℂ)` inside
/// `B = M_n(ℂ)`, `n = Σ nᵢ`. Block labels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct BlockStructure {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl TryFrom<Vec<usize>> for BlockStructure {
    type Error = Error;
    fn try_from(sizes: Vec<usize>) -> Result<Self> {
        Self::new(sizes)
    }
}

impl From<BlockStructure> for Vec<usize> {
    fn from(b: BlockStructure) -> Self {
        b.sizes
    }
}

impl BlockStructure {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::Input("block structure needs at least one block".into()));
        }
        if let Some(k) = sizes.iter().position(|&n| n == 0) {
            return Err(Error::Input(format!("block {} has size 0", k + 1)));
        }
        let offsets = sizes
            .iter()
            .scan(0, |acc, &n| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect();
        Ok(Self { sizes, offsets })
    }

    /// `p` blocks of size 1: the diagonal matrices inside `M_p`.
    pub fn scalar(p: usize) -> Result<Self> {
        Self::new(vec![1; p])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of blocks `p`.
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Total dimension `n`.
    pub fn total(&self) -> usize {
        self.offsets.last().unwrap() + self.sizes.last().unwrap()
    }

    pub fn size(&self, i: usize) -> usize {
        self.sizes[i - 1]
    }

    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i - 1]
    }

    pub fn all_equal(&self) -> bool {
        self.sizes.iter().all(|&n| n == self.sizes[0])
    }

    /// Block label (1-based) containing the 0-based index `k`.
    pub fn block_of(&self, k: usize) -> usize {
        self.offsets.partition_point(|&o| o <= k)
    }

    pub(crate) fn check_square(&self, m: &ComplexMatrix, what: &str) -> Result<()> {
        let n = self.total();
        if m.shape() != (n, n) {
            return Err(Error::Shape(format!(
                "{what} is {}x{}, block structure {:?} needs {n}x{n}",
                m.rows(),
                m.cols(),
                self.sizes
            )));
        }
        Ok(())
    }

    /// Block `(i, j)` of an `n x n` matrix.
    pub fn extract(&self, m: &ComplexMatrix, i: usize, j: usize) -> ComplexMatrix {
        m.block(self.offset(i), self.offset(j), self.size(i), self.size(j))
    }

    /// `n x n` matrix with `b` at block `(i, j)` and zeros elsewhere.
    pub fn place(&self, i: usize, j: usize, b: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(b.shape(), (self.size(i), self.size(j)), "block shape mismatch");
        let n = self.total();
        let mut m = ComplexMatrix::zeros(n, n);
        m.set_block(self.offset(i), self.offset(j), b);
        m
    }

    /// Matrix units spanning `A`, as `n x n` matrices.
    pub fn diagonal_basis(&self) -> Vec<ComplexMatrix> {
        let n = self.total();
        (1..=self.count())
            .flat_map(|i| {
                let (o, s) = (self.offset(i), self.size(i));
                (0..s).flat_map(move |a| (0..s).map(move |b| ComplexMatrix::unit(n, n, o + a, o + b)))
            })
            .collect()
    }

    /// `Σ nᵢ²`, the dimension of `A`.
    pub fn diagonal_dim(&self) -> usize {
        self.sizes.iter().map(|n| n * n).sum()
    }

    /// Frobenius norm of every block, indexed `[i-1][j-1]`.
    pub fn block_norms(&self, m: &ComplexMatrix) -> Vec<Vec<f64>> {
        (1..=self.count())
            .map(|i| {
                (1..=self.count())
                    .map(|j| self.extract(m, i, j).frobenius_norm())
                    .collect()
            })
            .collect()
    }
}
