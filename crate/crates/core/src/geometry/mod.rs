//! Finite spectral triples, spectral C*-categories and Fell bundle triples
//! as three presentations of the same data, plus inner fluctuations of the
//! Dirac operator.

mod fluctuation;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use fluctuation::{apply_path_lifting, fluctuate, one_form, FluctuationTerm};

use crate::cstarcat::{category_from_bundle, is_domain_section, normaliser_support, CStarCategoryFD, DomainSection, SectionFile};
use crate::error::{Error, Result};
use crate::fellbundle::{check_saturated, check_unital, full_morita_bundle, BlockStructure, BundleFile, FellBundleFD};
use crate::groupoid::Arrow;
use crate::matops::{ComplexMatrix, Tolerance};
use crate::report::AxiomReport;
use crate::sptriple::{full_battery, FiniteSpectralTriple};

/// A full C*-category with a chosen self-adjoint section of the domain map.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCStarCategoryFD {
    category: CStarCategoryFD,
    sigma: DomainSection,
}

fn homset_residual(category: &CStarCategoryFD, sigma: &DomainSection) -> Result<Option<(Arrow, f64)>> {
    let mut worst: Option<(Arrow, f64)> = None;
    for (&j, b) in sigma.blocks_data() {
        let a = Arrow::new(sigma.perm().image(j), j);
        let r = category.homset(a.range, a.domain).residual(b)?;
        if worst.is_none_or(|(_, w)| r > w) {
            worst = Some((a, r));
        }
    }
    Ok(worst)
}

impl SpectralCStarCategoryFD {
    /// Checks that σ is self-adjoint and that each of its blocks lies in the
    /// matching homset.
    pub fn new(category: CStarCategoryFD, sigma: DomainSection, tol: Tolerance) -> Result<Self> {
        if sigma.blocks() != category.blocks() {
            return Err(Error::Input("section and category have different block structures".into()));
        }
        if !sigma.is_self_adjoint() {
            return Err(Error::Input("section is not self-adjoint".into()));
        }
        if let Some((a, r)) = homset_residual(&category, &sigma)? {
            let scale = sigma.block(a.domain).frobenius_norm();
            if !tol.accepts(r, scale) {
                return Err(Error::Consistency {
                    what: format!("section block at {} lies outside its homset", a.key()),
                    residual: r,
                });
            }
        }
        Ok(Self { category, sigma })
    }

    pub fn category(&self) -> &CStarCategoryFD {
        &self.category
    }

    pub fn sigma(&self) -> &DomainSection {
        &self.sigma
    }

    pub fn blocks(&self) -> &BlockStructure {
        self.category.blocks()
    }

    pub fn to_file(&self) -> CategoryFile {
        let bundle = self.category.to_file();
        CategoryFile {
            blocks: bundle.blocks,
            homsets: bundle.fibres,
            sigma: self.sigma.to_file(),
        }
    }

    pub fn from_file(file: &CategoryFile, tol: Tolerance) -> Result<Self> {
        let bundle = FellBundleFD::from_file(
            &BundleFile {
                blocks: file.blocks.clone(),
                fibres: file.homsets.clone(),
            },
            tol,
        )?;
        let category = category_from_bundle(&bundle, tol)?;
        let sigma = DomainSection::from_file(category.blocks(), &file.sigma, tol)?;
        Self::new(category, sigma, tol)
    }
}

/// JSON form: `{ "blocks": [...], "homsets": { "i,j": [matrix, ...] }, "sigma": { "perm": [...], "blocks": {...} } }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub blocks: Vec<usize>,
    pub homsets: BTreeMap<String, Vec<ComplexMatrix>>,
    pub sigma: SectionFile,
}

/// Objects are the simple summands of `A`, homsets are the full Morita
/// bimodules and σ is `D` read as a domain section.
pub fn categorify(t: &FiniteSpectralTriple, tol: Tolerance) -> Result<SpectralCStarCategoryFD> {
    let report = full_battery(t, tol);
    if !report.passed() {
        let ids: Vec<&str> = report.failures().map(|r| r.id.as_str()).collect();
        return Err(Error::Refused {
            reason: format!("triple fails its axiom batteries (failed: {})", ids.join(", ")),
            report: Some(Box::new(report)),
        });
    }
    let sigma = is_domain_section(&t.dirac, &t.blocks, tol)?;
    let category = category_from_bundle(&full_morita_bundle(&t.blocks), tol)?;
    SpectralCStarCategoryFD::new(category, sigma, tol)
}

fn check_operator(name: &str, m: &ComplexMatrix, real_structure: bool, tol: Tolerance) -> Result<()> {
    let n = m.rows();
    let id = ComplexMatrix::identity(n);
    let scale = (n as f64).sqrt();
    let defects: Vec<(&str, f64)> = if real_structure {
        vec![("K conj(K) = I", (&(m * &m.conj()) - &id).frobenius_norm()), ("K unitary", m.unitary_defect())]
    } else {
        vec![("self-adjoint", m.hermitian_defect()), ("squares to I", (&(m * m) - &id).frobenius_norm())]
    };
    for (what, r) in defects {
        if !tol.accepts(r, scale) {
            return Err(Error::Input(format!("{name} is not {what} (residual {r:.3e})")));
        }
    }
    Ok(())
}

/// Rebuilds a triple from a spectral category: `A` from the objects, `D`
/// the assembled σ. Supplied γ, ε, K are validated against their own
/// invariants; run [`full_battery`] on the result for the joint axioms.
pub fn triple_from_category(
    c: &SpectralCStarCategoryFD,
    gamma: Option<ComplexMatrix>,
    epsilon: Option<ComplexMatrix>,
    real: Option<ComplexMatrix>,
    tol: Tolerance,
) -> Result<FiniteSpectralTriple> {
    let blocks = c.blocks().clone();
    for (name, op, is_k) in [("gamma", &gamma, false), ("epsilon", &epsilon, false), ("K", &real, true)] {
        if let Some(m) = op {
            blocks.check_square(m, name)?;
            check_operator(name, m, is_k, tol)?;
        }
    }
    FiniteSpectralTriple::new(blocks, c.sigma().assembled().clone(), gamma, epsilon, real)
}

/// A saturated unital Fell bundle over a pair groupoid with a path-lifting
/// operator: a normaliser of `A` supported on a global bisection.
#[derive(Debug, Clone, PartialEq)]
pub struct FellBundleTriple {
    bundle: FellBundleFD,
    pl: ComplexMatrix,
}

impl FellBundleTriple {
    pub fn new(bundle: FellBundleFD, pl: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let blocks = bundle.blocks().clone();
        blocks.check_square(&pl, "PL")?;
        let mut report = AxiomReport::new();
        report.push(check_saturated(&bundle, tol));
        report.push(check_unital(&bundle, tol));
        if !report.passed() {
            let ids: Vec<&str> = report.failures().map(|r| r.id.as_str()).collect();
            return Err(Error::Refused {
                reason: format!("bundle must be saturated and unital (failed: {})", ids.join(", ")),
                report: Some(Box::new(report)),
            });
        }
        let class = normaliser_support(&pl, &blocks, tol)?;
        let Some(perm) = class.permutation().filter(|_| class.kind.is_normaliser()) else {
            return Err(Error::Refused {
                reason: format!(
                    "PL must be a normaliser supported on a global bisection (kind {:?}, support {:?})",
                    class.kind, class.support
                ),
                report: None,
            });
        };
        for j in 1..=blocks.count() {
            let a = Arrow::new(perm.image(j), j);
            let b = blocks.extract(&pl, a.range, a.domain);
            let r = bundle.fibre(a).residual(&b)?;
            if !tol.accepts(r, b.frobenius_norm()) {
                return Err(Error::Consistency {
                    what: format!("PL block at {} lies outside its fibre", a.key()),
                    residual: r,
                });
            }
        }
        Ok(Self { bundle, pl })
    }

    pub fn bundle(&self) -> &FellBundleFD {
        &self.bundle
    }

    pub fn path_lifting(&self) -> &ComplexMatrix {
        &self.pl
    }

    pub fn hilbert_dim(&self) -> usize {
        self.pl.rows()
    }

    pub fn to_file(&self) -> FellTripleFile {
        let b = self.bundle.to_file();
        FellTripleFile {
            blocks: b.blocks,
            fibres: b.fibres,
            pl: self.pl.clone(),
        }
    }

    pub fn from_file(file: &FellTripleFile, tol: Tolerance) -> Result<Self> {
        let bundle = FellBundleFD::from_file(
            &BundleFile {
                blocks: file.blocks.clone(),
                fibres: file.fibres.clone(),
            },
            tol,
        )?;
        Self::new(bundle, file.pl.clone(), tol)
    }
}

/// JSON form: `{ "blocks": [...], "fibres": { "i,j": [matrix, ...] }, "PL": matrix }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FellTripleFile {
    pub blocks: Vec<usize>,
    pub fibres: BTreeMap<String, Vec<ComplexMatrix>>,
    #[serde(rename = "PL")]
    pub pl: ComplexMatrix,
}

/// Homsets become fibres and σ becomes the path-lifting operator.
pub fn fell_triple_from_category(c: &SpectralCStarCategoryFD, tol: Tolerance) -> Result<FellBundleTriple> {
    FellBundleTriple::new(c.category().to_bundle(), c.sigma().assembled().clone(), tol)
}

/// Inverse of [`fell_triple_from_category`]. Requires `PL = PL*`, which the
/// Fell triple itself does not.
pub fn category_from_fell_triple(f: &FellBundleTriple, tol: Tolerance) -> Result<SpectralCStarCategoryFD> {
    let category = category_from_bundle(f.bundle(), tol)?;
    let sigma = is_domain_section(f.path_lifting(), f.bundle().blocks(), tol)?;
    SpectralCStarCategoryFD::new(category, sigma, tol)
}
