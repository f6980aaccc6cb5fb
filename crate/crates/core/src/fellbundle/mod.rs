//! Finite Fell bundles over pair groupoids.
//!
//! The fibre over the arrow `(i, j)` is a linear subspace of `nᵢ x nⱼ`
//! matrices, stored as an explicit basis. Multiplication is matrix
//! multiplication of blocks and the involution is the adjoint, so a bundle is
//! the same data as a block-structured subspace of `M_n(ℂ)`.

mod axioms;
mod blocks;
mod semidirect;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use axioms::{check_fell_axioms, check_saturated, check_unital, generic_element};
pub use blocks::BlockStructure;
pub use semidirect::{semidirect_bundle, SemidirectBundle, SemidirectElement, UnitaryField};

use crate::error::{Error, Result};
use crate::groupoid::{Arrow, PairGroupoid};
use crate::matops::{ComplexMatrix, SubspaceBasis, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct FellBundleFD {
    blocks: BlockStructure,
    fibres: BTreeMap<Arrow, SubspaceBasis>,
}

impl FellBundleFD {
    /// Arrows missing from `fibres` get the zero fibre.
    pub fn new(blocks: BlockStructure, mut fibres: BTreeMap<Arrow, SubspaceBasis>) -> Result<Self> {
        let p = blocks.count();
        for (a, f) in &fibres {
            if a.range == 0 || a.domain == 0 || a.range > p || a.domain > p {
                return Err(Error::Input(format!("fibre over ({},{}) outside 1..={p}", a.range, a.domain)));
            }
            let want = (blocks.size(a.range), blocks.size(a.domain));
            if f.shape() != want {
                return Err(Error::Shape(format!(
                    "fibre over ({},{}) holds {}x{} matrices, expected {}x{}",
                    a.range,
                    a.domain,
                    f.shape().0,
                    f.shape().1,
                    want.0,
                    want.1
                )));
            }
        }
        for a in PairGroupoid::new(p)?.arrows() {
            fibres
                .entry(a)
                .or_insert_with(|| SubspaceBasis::zero(blocks.size(a.range), blocks.size(a.domain)));
        }
        Ok(Self { blocks, fibres })
    }

    pub fn blocks(&self) -> &BlockStructure {
        &self.blocks
    }

    pub fn groupoid(&self) -> PairGroupoid {
        PairGroupoid::new(self.blocks.count()).expect("block structure is nonempty")
    }

    pub fn fibre(&self, a: Arrow) -> &SubspaceBasis {
        &self.fibres[&a]
    }

    pub fn fibres(&self) -> &BTreeMap<Arrow, SubspaceBasis> {
        &self.fibres
    }

    /// `Σ dim E_g`.
    pub fn total_dim(&self) -> usize {
        self.fibres.values().map(SubspaceBasis::dim).sum()
    }

    pub fn to_file(&self) -> BundleFile {
        BundleFile {
            blocks: self.blocks.sizes().to_vec(),
            fibres: self
                .fibres
                .iter()
                .filter(|(_, f)| f.dim() > 0)
                .map(|(a, f)| (a.key(), f.elements().to_vec()))
                .collect(),
        }
    }

    pub fn from_file(file: &BundleFile, tol: Tolerance) -> Result<Self> {
        let blocks = BlockStructure::new(file.blocks.clone())?;
        let p = blocks.count();
        let mut fibres = BTreeMap::new();
        for (key, mats) in &file.fibres {
            let a = Arrow::parse_key(key)?;
            if a.range == 0 || a.domain == 0 || a.range > p || a.domain > p {
                return Err(Error::Input(format!("fibre key {key:?} outside 1..={p}")));
            }
            let shape = (blocks.size(a.range), blocks.size(a.domain));
            let basis = SubspaceBasis::new(shape.0, shape.1, mats.clone(), tol)
                .map_err(|e| Error::Input(format!("fibre {key:?}: {e}")))?;
            fibres.insert(a, basis);
        }
        Self::new(blocks, fibres)
    }
}

/// JSON form: `{ "blocks": [n1,...], "fibres": { "i,j": [matrix, ...] } }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub blocks: Vec<usize>,
    #[serde(default)]
    pub fibres: BTreeMap<String, Vec<ComplexMatrix>>,
}

/// Fibre over `(i, j)` is the full `nᵢ x nⱼ` matrix space.
pub fn full_morita_bundle(blocks: &BlockStructure) -> FellBundleFD {
    let fibres = PairGroupoid::new(blocks.count())
        .expect("block structure is nonempty")
        .arrows()
        .map(|a| (a, SubspaceBasis::full(blocks.size(a.range), blocks.size(a.domain))))
        .collect();
    FellBundleFD {
        blocks: blocks.clone(),
        fibres,
    }
}

/// All fibre basis elements placed at their block positions inside `M_n(ℂ)`.
pub fn linking_algebra(b: &FellBundleFD) -> SubspaceBasis {
    let n = b.blocks.total();
    let placed: Vec<ComplexMatrix> = b
        .fibres
        .iter()
        .flat_map(|(a, f)| f.elements().iter().map(|e| b.blocks.place(a.range, a.domain, e)))
        .collect();
    SubspaceBasis::spanning(n, n, &placed, Tolerance::default()).expect("placed blocks have the ambient shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn morita_fibre_dimensions() {
        let b = full_morita_bundle(&BlockStructure::new(vec![1, 2]).unwrap());
        assert_eq!(b.fibre(Arrow::new(1, 2)).dim(), 2);
        assert_eq!(b.fibre(Arrow::new(1, 2)).shape(), (1, 2));
        let single = full_morita_bundle(&BlockStructure::new(vec![1]).unwrap());
        assert_eq!(single.fibres().len(), 1);
        assert_eq!(single.fibre(Arrow::unit(1)).dim(), 1);
    }

    #[test]
    fn linking_algebra_dimensions() {
        let two = BlockStructure::new(vec![1, 1]).unwrap();
        assert_eq!(linking_algebra(&full_morita_bundle(&two)).dim(), 4);
        let mixed = BlockStructure::new(vec![1, 2]).unwrap();
        assert_eq!(linking_algebra(&full_morita_bundle(&mixed)).dim(), 9);
        let diag: BTreeMap<_, _> = (1..=2)
            .map(|i| (Arrow::unit(i), SubspaceBasis::full(1, 1)))
            .collect();
        let d = FellBundleFD::new(two, diag).unwrap();
        assert_eq!(linking_algebra(&d).dim(), 2);
    }

    #[test]
    fn file_round_trip_and_defaults() {
        let json = r#"{"blocks":[1,1],"fibres":{"1,1":[[[[1,0]]]],"2,2":[[[[1,0]]]]}}"#;
        let file: BundleFile = serde_json::from_str(json).unwrap();
        let b = FellBundleFD::from_file(&file, Tolerance::default()).unwrap();
        assert_eq!(b.fibre(Arrow::new(1, 2)).dim(), 0);
        assert_eq!(b.to_file(), file);
        let bad: BundleFile = serde_json::from_str(r#"{"blocks":[1],"fibres":{"1,1":[[[[1,0],[0,0]]]]}}"#).unwrap();
        assert!(matches!(FellBundleFD::from_file(&bad, Tolerance::default()), Err(Error::Input(_))));
    }
}
