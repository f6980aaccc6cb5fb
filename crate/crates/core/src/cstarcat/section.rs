//! Self-adjoint sections of the domain map, seen as block-permutation
//! matrices inside `M_n(ℂ)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fellbundle::BlockStructure;
use crate::groupoid::Bisection;
use crate::matops::{ComplexMatrix, Tolerance};

use super::normaliser::block_pattern;

/// One morphism per object `j`, with target `π(j)`, for a permutation π.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSection {
    blocks: BlockStructure,
    perm: Bisection,
    blocks_data: BTreeMap<usize, ComplexMatrix>,
    assembled: ComplexMatrix,
    self_adjoint: bool,
}

impl DomainSection {
    /// Assembles a section from its permutation and blocks; `blocks_data[j]`
    /// must be `n_{π(j)} x n_j`.
    pub fn from_parts(
        blocks: &BlockStructure,
        perm: Bisection,
        blocks_data: BTreeMap<usize, ComplexMatrix>,
        tol: Tolerance,
    ) -> Result<Self> {
        let p = blocks.count();
        if perm.objects() != p {
            return Err(Error::Input(format!("permutation over {} objects, {p} blocks", perm.objects())));
        }
        if blocks_data.len() != p || blocks_data.keys().copied().ne(1..=p) {
            return Err(Error::Input(format!("section needs exactly one block for each of 1..={p}")));
        }
        let n = blocks.total();
        let mut assembled = ComplexMatrix::zeros(n, n);
        for (&j, b) in &blocks_data {
            let i = perm.image(j);
            if b.shape() != (blocks.size(i), blocks.size(j)) {
                return Err(Error::Shape(format!(
                    "section block for column {j} must be {}x{}",
                    blocks.size(i),
                    blocks.size(j)
                )));
            }
            assembled.set_block(blocks.offset(i), blocks.offset(j), b);
        }
        let self_adjoint = tol.accepts(assembled.hermitian_defect(), assembled.frobenius_norm());
        Ok(Self {
            blocks: blocks.clone(),
            perm,
            blocks_data,
            assembled,
            self_adjoint,
        })
    }

    pub fn blocks(&self) -> &BlockStructure {
        &self.blocks
    }

    pub fn perm(&self) -> &Bisection {
        &self.perm
    }

    pub fn block(&self, j: usize) -> &ComplexMatrix {
        &self.blocks_data[&j]
    }

    pub fn blocks_data(&self) -> &BTreeMap<usize, ComplexMatrix> {
        &self.blocks_data
    }

    pub fn assembled(&self) -> &ComplexMatrix {
        &self.assembled
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.self_adjoint
    }

    pub fn to_file(&self) -> SectionFile {
        SectionFile {
            perm: self.perm.images().to_vec(),
            blocks: self
                .blocks_data
                .iter()
                .map(|(j, b)| (j.to_string(), b.clone()))
                .collect(),
        }
    }

    pub fn from_file(blocks: &BlockStructure, file: &SectionFile, tol: Tolerance) -> Result<Self> {
        let perm = Bisection::new(file.perm.clone())?;
        let data = file
            .blocks
            .iter()
            .map(|(k, m)| {
                k.trim()
                    .parse::<usize>()
                    .map(|j| (j, m.clone()))
                    .map_err(|_| Error::Input(format!("section block key {k:?} is not an object label")))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Self::from_parts(blocks, perm, data, tol)
    }
}

/// JSON form: `{ "perm": [π(1)…π(p)], "blocks": { "j": matrix } }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionFile {
    pub perm: Vec<usize>,
    pub blocks: BTreeMap<String, ComplexMatrix>,
}

fn reject(reason: String) -> Error {
    Error::Refused { reason, report: None }
}

/// Accepts `σ` when each block column holds exactly one nonzero block, the
/// rows of those blocks form a permutation, and `σ = σ*`.
pub fn is_domain_section(sigma: &ComplexMatrix, blocks: &BlockStructure, tol: Tolerance) -> Result<DomainSection> {
    blocks.check_square(sigma, "section")?;
    let p = blocks.count();
    let pattern = block_pattern(sigma, blocks, tol);
    let mut images = Vec::with_capacity(p);
    for j in 1..=p {
        let rows: Vec<usize> = (1..=p).filter(|&i| pattern[i - 1][j - 1]).collect();
        match rows.as_slice() {
            [i] => images.push(*i),
            [] => {
                return Err(reject(format!(
                    "block column {j} has no nonzero block, so no morphism out of object {j} is chosen \
                     (supply the identity section explicitly if that is intended)"
                )))
            }
            many => {
                return Err(reject(format!(
                    "block column {j} has nonzero blocks in rows {many:?}; a section picks exactly one"
                )))
            }
        }
    }
    let perm = Bisection::new(images.clone())
        .map_err(|_| reject(format!("block rows {images:?} do not form a permutation, so r∘σ is not bijective")))?;
    let defect = sigma.hermitian_defect();
    if !tol.accepts(defect, sigma.frobenius_norm()) {
        return Err(reject(format!("section is not self-adjoint (‖σ − σ*‖ = {defect:.3e})")));
    }
    let data = (1..=p)
        .map(|j| (j, blocks.extract(sigma, perm.image(j), j)))
        .collect();
    let s = DomainSection::from_parts(blocks, perm, data, tol)?;
    debug_assert!(s.perm.is_involution());
    Ok(s)
}
