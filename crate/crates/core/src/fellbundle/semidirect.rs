//! Semidirect-product bundles `G ⋉ C*(E⁰)` built from a field of unitaries.
//!
//! An element is a pair `(g, a)` with `g = (i, j)` and `a ∈ M_m(ℂ)`; it is
//! realised as the matrix `u_g a` in block `(i, j)`. The fibre product is the
//! one transported from matrix multiplication,
//! `(g, a)(h, b) = (gh, u_{gh}* u_g a u_h b)`, which equals
//! `(gh, α_g(a) b)` with `α_g(a) = u_g a u_g*` whenever `u_h = u_g* u_{gh}`
//! (in particular for `h = g*`). The involution is `(g, a)* = (g*, α_g(a*))`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groupoid::{compose_arrows, Arrow, PairGroupoid};
use crate::matops::{ComplexMatrix, SubspaceBasis, Tolerance};

use super::{BlockStructure, FellBundleFD};

/// Unitaries `u_g` on arrows between equally sized blocks, with
/// `u_{g*} = u_g*` and `u_{(i,i)} = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryField {
    blocks: BlockStructure,
    units: BTreeMap<Arrow, ComplexMatrix>,
}

impl UnitaryField {
    pub fn new(blocks: &BlockStructure, units: BTreeMap<Arrow, ComplexMatrix>, tol: Tolerance) -> Result<Self> {
        let p = blocks.count();
        for (&a, u) in &units {
            if a.range == 0 || a.domain == 0 || a.range > p || a.domain > p {
                return Err(Error::Input(format!("field arrow ({},{}) outside 1..={p}", a.range, a.domain)));
            }
            let (r, d) = (blocks.size(a.range), blocks.size(a.domain));
            if r != d {
                return Err(Error::Unsupported(format!(
                    "arrow ({},{}) joins blocks of sizes {r} and {d}; no unitary exists",
                    a.range, a.domain
                )));
            }
            if u.shape() != (r, r) {
                return Err(Error::Shape(format!("u({},{}) must be {r}x{r}", a.range, a.domain)));
            }
            let defect = u.unitary_defect();
            if !tol.accepts(defect, r as f64) {
                return Err(Error::Input(format!(
                    "u({},{}) is not unitary (‖u*u − I‖ = {defect:.3e})",
                    a.range, a.domain
                )));
            }
            if a.is_unit() && !tol.accepts((u - &ComplexMatrix::identity(r)).frobenius_norm(), r as f64) {
                return Err(Error::Input(format!("u({0},{0}) must be the identity", a.range)));
            }
            if let Some(v) = units.get(&a.inverse()) {
                let r2 = (v - &u.adjoint()).frobenius_norm();
                if !tol.accepts(r2, r as f64) {
                    return Err(Error::Input(format!(
                        "u({},{}) is not the adjoint of u({},{})",
                        a.domain, a.range, a.range, a.domain
                    )));
                }
            }
        }
        Ok(Self {
            blocks: blocks.clone(),
            units,
        })
    }

    /// Completes `generators` with adjoints on inverse arrows and identities on units.
    pub fn from_generators(
        blocks: &BlockStructure,
        generators: BTreeMap<Arrow, ComplexMatrix>,
        tol: Tolerance,
    ) -> Result<Self> {
        let mut units = generators.clone();
        for (a, u) in generators {
            units.entry(a.inverse()).or_insert_with(|| u.adjoint());
        }
        for i in 1..=blocks.count() {
            units
                .entry(Arrow::unit(i))
                .or_insert_with(|| ComplexMatrix::identity(blocks.size(i)));
        }
        Self::new(blocks, units, tol)
    }

    /// Identity on every arrow joining blocks of equal size.
    pub fn identity(blocks: &BlockStructure) -> Self {
        let units = PairGroupoid::new(blocks.count())
            .expect("nonempty")
            .arrows()
            .filter(|a| blocks.size(a.range) == blocks.size(a.domain))
            .map(|a| (a, ComplexMatrix::identity(blocks.size(a.range))))
            .collect();
        Self {
            blocks: blocks.clone(),
            units,
        }
    }

    pub fn get(&self, a: Arrow) -> Option<&ComplexMatrix> {
        self.units.get(&a)
    }

    pub fn blocks(&self) -> &BlockStructure {
        &self.blocks
    }

    pub fn is_total(&self) -> bool {
        self.units.len() == self.blocks.count() * self.blocks.count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemidirectElement {
    pub arrow: Arrow,
    pub coeff: ComplexMatrix,
}

#[derive(Debug, Clone)]
pub struct SemidirectBundle {
    field: UnitaryField,
    bundle: FellBundleFD,
}

impl SemidirectBundle {
    pub fn bundle(&self) -> &FellBundleFD {
        &self.bundle
    }

    pub fn field(&self) -> &UnitaryField {
        &self.field
    }

    fn u(&self, a: Arrow) -> &ComplexMatrix {
        self.field.get(a).expect("field is total")
    }

    fn check(&self, e: &SemidirectElement) -> Result<()> {
        let m = self.field.blocks().size(1);
        let p = self.field.blocks().count();
        if e.arrow.range == 0 || e.arrow.domain == 0 || e.arrow.range > p || e.arrow.domain > p {
            return Err(Error::Input(format!("arrow ({},{}) outside 1..={p}", e.arrow.range, e.arrow.domain)));
        }
        if e.coeff.shape() != (m, m) {
            return Err(Error::Shape(format!("coefficient must be {m}x{m}")));
        }
        Ok(())
    }

    /// `α_g(a) = u_g a u_g*`.
    pub fn alpha(&self, g: Arrow, a: &ComplexMatrix) -> ComplexMatrix {
        let u = self.u(g);
        &(u * a) * &u.adjoint()
    }

    pub fn multiply(&self, e1: &SemidirectElement, e2: &SemidirectElement) -> Result<SemidirectElement> {
        self.check(e1)?;
        self.check(e2)?;
        let gh = compose_arrows(e1.arrow, e2.arrow)?;
        let coeff = &(&(&(&self.u(gh).adjoint() * self.u(e1.arrow)) * &e1.coeff) * self.u(e2.arrow)) * &e2.coeff;
        Ok(SemidirectElement { arrow: gh, coeff })
    }

    /// `(gh, α_g(a) b)`; agrees with [`Self::multiply`] when `u_h = u_g* u_{gh}`.
    pub fn alpha_product(&self, e1: &SemidirectElement, e2: &SemidirectElement) -> Result<SemidirectElement> {
        self.check(e1)?;
        self.check(e2)?;
        let gh = compose_arrows(e1.arrow, e2.arrow)?;
        Ok(SemidirectElement {
            arrow: gh,
            coeff: &self.alpha(e1.arrow, &e1.coeff) * &e2.coeff,
        })
    }

    pub fn involution(&self, e: &SemidirectElement) -> Result<SemidirectElement> {
        self.check(e)?;
        Ok(SemidirectElement {
            arrow: e.arrow.inverse(),
            coeff: self.alpha(e.arrow, &e.coeff.adjoint()),
        })
    }

    /// The block `u_g a` of the concrete bundle.
    pub fn realize(&self, e: &SemidirectElement) -> Result<ComplexMatrix> {
        self.check(e)?;
        Ok(self.u(e.arrow) * &e.coeff)
    }

    /// Largest Frobenius discrepancy between the abstract product/involution
    /// and the concrete block products, over all composable arrows and all
    /// pairs of matrix-unit coefficients.
    pub fn presentation_residual(&self) -> f64 {
        let m = self.field.blocks().size(1);
        let units: Vec<ComplexMatrix> = (0..m)
            .flat_map(|i| (0..m).map(move |j| ComplexMatrix::unit(m, m, i, j)))
            .collect();
        let mut worst = 0.0_f64;
        for (g, h) in self.bundle.groupoid().composable_pairs() {
            for a in &units {
                let e1 = SemidirectElement { arrow: g, coeff: a.clone() };
                let star = self.involution(&e1).unwrap();
                let r = (&self.realize(&star).unwrap() - &self.realize(&e1).unwrap().adjoint()).frobenius_norm();
                worst = worst.max(r);
                for b in &units {
                    let e2 = SemidirectElement { arrow: h, coeff: b.clone() };
                    let abstract_side = self.realize(&self.multiply(&e1, &e2).unwrap()).unwrap();
                    let concrete = &self.realize(&e1).unwrap() * &self.realize(&e2).unwrap();
                    worst = worst.max((&abstract_side - &concrete).frobenius_norm());
                }
            }
        }
        worst
    }
}

/// Builds the semidirect bundle and verifies that the abstract and concrete
/// presentations multiply identically.
pub fn semidirect_bundle(blocks: &BlockStructure, field: UnitaryField, tol: Tolerance) -> Result<SemidirectBundle> {
    if !blocks.all_equal() {
        return Err(Error::Unsupported(format!(
            "semidirect bundles need equal block sizes, got {:?}",
            blocks.sizes()
        )));
    }
    if field.blocks() != blocks {
        return Err(Error::Input("field was built for a different block structure".into()));
    }
    if !field.is_total() {
        return Err(Error::Input("the unitary field must be defined on every arrow".into()));
    }
    let m = blocks.size(1);
    let fibres = PairGroupoid::new(blocks.count())?
        .arrows()
        .map(|a| {
            let u = field.get(a).expect("total");
            let elems: Vec<ComplexMatrix> = (0..m)
                .flat_map(|i| (0..m).map(move |j| ComplexMatrix::unit(m, m, i, j)))
                .map(|e| u * &e)
                .collect();
            SubspaceBasis::new(m, m, elems, tol).map(|s| (a, s))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let sd = SemidirectBundle {
        field,
        bundle: FellBundleFD::new(blocks.clone(), fibres)?,
    };
    let r = sd.presentation_residual();
    if !tol.accepts(r, m as f64) {
        return Err(Error::Consistency {
            what: "abstract and concrete semidirect products disagree".into(),
            residual: r,
        });
    }
    Ok(sd)
}
