//! Normalisers of the block-diagonal algebra `A ⊂ M_n(ℂ)` and the
//! conditional expectation onto `A`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::fellbundle::{BlockStructure, UnitaryField};
use crate::groupoid::{Arrow, Bisection};
use crate::matops::{numerical_rank, ComplexMatrix, SubspaceBasis, Tolerance};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormaliserKind {
    NotNormaliser,
    Normaliser,
    /// `b² = 0`.
    Free,
    Invertible,
    Unitary,
}

impl NormaliserKind {
    pub fn is_normaliser(self) -> bool {
        self != Self::NotNormaliser
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormaliserClass {
    pub kind: NormaliserKind,
    /// Block column `j` ↦ block row `π(j)` for every column holding exactly one nonzero block.
    pub support: BTreeMap<usize, usize>,
    /// `pattern[i-1][j-1]` is true when block `(i, j)` counts as nonzero.
    pub pattern: Vec<Vec<bool>>,
}

impl NormaliserClass {
    /// The support as a global bisection, when it is a full permutation.
    pub fn permutation(&self) -> Option<Bisection> {
        let p = self.pattern.len();
        if self.support.len() != p {
            return None;
        }
        Bisection::new((1..=p).map(|j| self.support[&j]).collect()).ok()
    }
}

/// Nonzero-block pattern: a block counts when its Frobenius norm exceeds
/// `rel * ‖m‖_F`.
pub fn block_pattern(m: &ComplexMatrix, blocks: &BlockStructure, tol: Tolerance) -> Vec<Vec<bool>> {
    let cut = tol.rel * m.frobenius_norm();
    blocks
        .block_norms(m)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x > cut && x > 0.0).collect())
        .collect()
}

/// The block-diagonal algebra as a subspace of `M_n(ℂ)`.
pub fn diagonal_subspace(blocks: &BlockStructure) -> SubspaceBasis {
    let n = blocks.total();
    SubspaceBasis::new(n, n, blocks.diagonal_basis(), Tolerance::default()).expect("matrix units are independent")
}

/// `b* a b ∈ A` and `b a b* ∈ A` for every matrix unit `a` of `A`.
pub fn is_normaliser_bruteforce(b: &ComplexMatrix, blocks: &BlockStructure, tol: Tolerance) -> Result<bool> {
    blocks.check_square(b, "normaliser candidate")?;
    let algebra = diagonal_subspace(blocks);
    let bs = b.adjoint();
    let scale = b.frobenius_norm().powi(2);
    for a in algebra.elements() {
        let left = &(&bs * a) * b;
        let right = &(b * a) * &bs;
        for x in [left, right] {
            if !tol.accepts(algebra.residual(&x)?, scale) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn block_invertible(m: &ComplexMatrix, tol: Tolerance) -> bool {
    if !m.is_square() {
        return false;
    }
    let cols: Vec<ComplexMatrix> = (0..m.cols()).map(|j| m.block(0, j, m.rows(), 1)).collect();
    numerical_rank(&cols, tol) == m.cols()
}

/// Classifies `b` from its block-support pattern: a normaliser has at most
/// one nonzero block per block row and per block column.
pub fn normaliser_support(b: &ComplexMatrix, blocks: &BlockStructure, tol: Tolerance) -> Result<NormaliserClass> {
    blocks.check_square(b, "normaliser candidate")?;
    let pattern = block_pattern(b, blocks, tol);
    let p = blocks.count();
    let mut support = BTreeMap::new();
    let mut ok = true;
    for j in 1..=p {
        let rows: Vec<usize> = (1..=p).filter(|&i| pattern[i - 1][j - 1]).collect();
        match rows.as_slice() {
            [] => {}
            [i] => {
                support.insert(j, *i);
            }
            _ => ok = false,
        }
    }
    for i in 1..=p {
        if (1..=p).filter(|&j| pattern[i - 1][j - 1]).count() > 1 {
            ok = false;
        }
    }
    let kind = if !ok {
        NormaliserKind::NotNormaliser
    } else {
        let full = support.len() == p;
        let invertible = full
            && support.iter().all(|(&j, &i)| {
                blocks.size(i) == blocks.size(j) && block_invertible(&blocks.extract(b, i, j), tol)
            });
        let unitary = invertible
            && support.iter().all(|(&j, &i)| {
                let u = blocks.extract(b, i, j);
                tol.accepts(u.unitary_defect(), blocks.size(j) as f64)
            });
        let square = b * b;
        let free = tol.accepts(square.frobenius_norm(), b.frobenius_norm().powi(2));
        if unitary {
            NormaliserKind::Unitary
        } else if invertible {
            NormaliserKind::Invertible
        } else if free {
            NormaliserKind::Free
        } else {
            NormaliserKind::Normaliser
        }
    };
    Ok(NormaliserClass { kind, support, pattern })
}

/// `P(b)`: zero every off-diagonal block.
pub fn conditional_expectation(b: &ComplexMatrix, blocks: &BlockStructure) -> Result<ComplexMatrix> {
    blocks.check_square(b, "argument of the conditional expectation")?;
    let n = blocks.total();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 1..=blocks.count() {
        out.set_block(blocks.offset(i), blocks.offset(i), &blocks.extract(b, i, i));
    }
    Ok(out)
}

/// Lifts a size-compatible bisection to the unitary normaliser with block
/// `u_j` at `(π(j), j)`; identity blocks when no field is given.
pub fn bisection_to_normaliser(
    x: &Bisection,
    blocks: &BlockStructure,
    field: Option<&UnitaryField>,
) -> Result<ComplexMatrix> {
    if x.objects() != blocks.count() {
        return Err(Error::Input(format!(
            "bisection over {} objects, block structure has {}",
            x.objects(),
            blocks.count()
        )));
    }
    let n = blocks.total();
    let mut u = ComplexMatrix::zeros(n, n);
    for a in x.arrows() {
        let (r, d) = (blocks.size(a.range), blocks.size(a.domain));
        if r != d {
            return Err(Error::Unsupported(format!(
                "bisection sends block {} (size {d}) to block {} (size {r})",
                a.domain, a.range
            )));
        }
        let block = match field {
            Some(f) => f
                .get(Arrow::new(a.range, a.domain))
                .cloned()
                .ok_or_else(|| Error::Input(format!("field has no unitary on ({},{})", a.range, a.domain)))?,
            None => ComplexMatrix::identity(d),
        };
        u.set_block(blocks.offset(a.range), blocks.offset(a.domain), &block);
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matops::C64;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn diagonal_examples_from_matrix_units() {
        let blocks = BlockStructure::scalar(3).unwrap();
        let e = |i, j| ComplexMatrix::unit(3, 3, i, j);
        let chain = &e(0, 1) + &e(1, 2);
        let fork = &e(0, 1) + &e(0, 2);
        assert!(is_normaliser_bruteforce(&chain, &blocks, tol()).unwrap());
        assert!(!is_normaliser_bruteforce(&fork, &blocks, tol()).unwrap());
        assert!(is_normaliser_bruteforce(&ComplexMatrix::identity(3), &blocks, tol()).unwrap());
        assert_eq!(normaliser_support(&fork, &blocks, tol()).unwrap().kind, NormaliserKind::NotNormaliser);
        let a = ComplexMatrix::diag(&[C64::new(2.0, 1.0), C64::new(0.0, 0.0), C64::new(-1.0, 0.0)]);
        assert!(is_normaliser_bruteforce(&a, &blocks, tol()).unwrap());
    }

    #[test]
    fn off_diagonal_unit_is_free() {
        let blocks = BlockStructure::scalar(2).unwrap();
        let c = normaliser_support(&ComplexMatrix::unit(2, 2, 0, 1), &blocks, tol()).unwrap();
        assert_eq!(c.kind, NormaliserKind::Free);
        assert_eq!(c.support, [(2, 1)].into());
    }

    #[test]
    fn block_diagonal_unitary() {
        let blocks = BlockStructure::new(vec![2, 1]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut u = ComplexMatrix::zeros(3, 3);
        u.set_block(0, 0, &ComplexMatrix::from_real(&[&[s, s], &[-s, s]]).unwrap());
        u.set(2, 2, C64::new(0.0, 1.0));
        let c = normaliser_support(&u, &blocks, tol()).unwrap();
        assert_eq!(c.kind, NormaliserKind::Unitary);
        assert_eq!(c.permutation().unwrap(), Bisection::identity(2));
    }

    #[test]
    fn conditional_expectation_examples() {
        let blocks = BlockStructure::scalar(2).unwrap();
        let m = ComplexMatrix::from_real(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert_eq!(conditional_expectation(&m, &blocks).unwrap(), ComplexMatrix::diag_real(&[1.0, 4.0]));
        assert_eq!(
            conditional_expectation(&ComplexMatrix::unit(2, 2, 0, 1), &blocks).unwrap(),
            ComplexMatrix::zeros(2, 2)
        );
        let d = ComplexMatrix::diag_real(&[5.0, -1.0]);
        assert_eq!(conditional_expectation(&d, &blocks).unwrap(), d);
        assert!(conditional_expectation(&ComplexMatrix::zeros(3, 3), &blocks).is_err());
    }

    #[test]
    fn bisection_lifts() {
        let blocks = BlockStructure::scalar(2).unwrap();
        assert_eq!(
            bisection_to_normaliser(&Bisection::identity(2), &blocks, None).unwrap(),
            ComplexMatrix::identity(2)
        );
        let swap = Bisection::transposition(2, 1, 2).unwrap();
        assert_eq!(
            bisection_to_normaliser(&swap, &blocks, None).unwrap(),
            ComplexMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
        );
        let uneven = BlockStructure::new(vec![1, 2]).unwrap();
        assert!(matches!(
            bisection_to_normaliser(&swap, &uneven, None),
            Err(Error::Unsupported(_))
        ));
    }
}
