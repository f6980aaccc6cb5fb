use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fellbundle::{check_fell_axioms, check_unital, BlockStructure, BundleFile, FellBundleFD};
use crate::groupoid::Arrow;
use crate::matops::{SubspaceBasis, Tolerance};

/// Finite full C*-category: objects are the blocks `M_{nᵢ}(ℂ)`, the homset
/// `(i, j)` (morphisms `j → i`) is a subspace of `nᵢ x nⱼ` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct CStarCategoryFD {
    bundle: FellBundleFD,
}

impl CStarCategoryFD {
    pub fn blocks(&self) -> &BlockStructure {
        self.bundle.blocks()
    }

    pub fn objects(&self) -> usize {
        self.blocks().count()
    }

    pub fn homset(&self, range: usize, domain: usize) -> &SubspaceBasis {
        self.bundle.fibre(Arrow::new(range, domain))
    }

    pub fn homsets(&self) -> &BTreeMap<Arrow, SubspaceBasis> {
        self.bundle.fibres()
    }

    /// The same data read as a Fell bundle over the pair groupoid.
    pub fn to_bundle(&self) -> FellBundleFD {
        self.bundle.clone()
    }

    pub fn to_file(&self) -> BundleFile {
        self.bundle.to_file()
    }
}

/// Reads a unital bundle that passes the Fell axioms as a C*-category.
/// Refusals carry the failing report.
pub fn category_from_bundle(b: &FellBundleFD, tol: Tolerance) -> Result<CStarCategoryFD> {
    let mut report = check_fell_axioms(b, tol);
    report.push(check_unital(b, tol));
    if !report.passed() {
        let ids: Vec<&str> = report.failures().map(|r| r.id.as_str()).collect();
        return Err(Error::Refused {
            reason: format!("bundle is not a unital Fell bundle (failed: {})", ids.join(", ")),
            report: Some(Box::new(report)),
        });
    }
    Ok(CStarCategoryFD { bundle: b.clone() })
}
