//! Finite even, real and S°-real spectral triples.
//!
//! The algebra `A = ⊕ M_{nᵢ}(ℂ)` acts block-diagonally on `H = ℂⁿ` with
//! multiplicity one. A real structure is stored as the matrix `K` of
//! `J ψ = K conj(ψ)`.

mod batteries;
mod mass;

use serde::{Deserialize, Serialize};

pub use batteries::{check_even_axioms, check_poincare, check_real_axioms, check_so_real, full_battery, PoincareVerdict};
pub use mass::{
    build_triple_from_mass_matrix, check_geodesic_equation, dirac_solution_space, extract_mass_matrix,
    geodesic_residual, standard_epsilon, standard_gamma, standard_real_structure, MassMatrix,
};

use crate::error::Result;
use crate::fellbundle::BlockStructure;
use crate::matops::ComplexMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSpectralTriple {
    pub blocks: BlockStructure,
    pub dirac: ComplexMatrix,
    pub gamma: Option<ComplexMatrix>,
    pub epsilon: Option<ComplexMatrix>,
    /// Matrix part of the antilinear `J = K ∘ conj`.
    pub real: Option<ComplexMatrix>,
}

impl FiniteSpectralTriple {
    /// Checks shapes only; the axiom batteries judge everything else.
    pub fn new(
        blocks: BlockStructure,
        dirac: ComplexMatrix,
        gamma: Option<ComplexMatrix>,
        epsilon: Option<ComplexMatrix>,
        real: Option<ComplexMatrix>,
    ) -> Result<Self> {
        blocks.check_square(&dirac, "D")?;
        for (name, op) in [("gamma", &gamma), ("epsilon", &epsilon), ("K", &real)] {
            if let Some(m) = op {
                blocks.check_square(m, name)?;
            }
        }
        Ok(Self {
            blocks,
            dirac,
            gamma,
            epsilon,
            real,
        })
    }

    pub fn dim(&self) -> usize {
        self.blocks.total()
    }

    pub fn to_file(&self) -> TripleFile {
        TripleFile {
            blocks: self.blocks.sizes().to_vec(),
            dirac: self.dirac.clone(),
            gamma: self.gamma.clone(),
            epsilon: self.epsilon.clone(),
            real: self.real.clone(),
        }
    }

    pub fn from_file(file: &TripleFile) -> Result<Self> {
        Self::new(
            BlockStructure::new(file.blocks.clone())?,
            file.dirac.clone(),
            file.gamma.clone(),
            file.epsilon.clone(),
            file.real.clone(),
        )
    }
}

/// JSON form: `{ "blocks": [...], "D": matrix, "gamma": matrix, "epsilon": matrix|null, "K": matrix|null }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleFile {
    pub blocks: Vec<usize>,
    #[serde(rename = "D")]
    pub dirac: ComplexMatrix,
    #[serde(default)]
    pub gamma: Option<ComplexMatrix>,
    #[serde(default)]
    pub epsilon: Option<ComplexMatrix>,
    #[serde(rename = "K", default)]
    pub real: Option<ComplexMatrix>,
}
