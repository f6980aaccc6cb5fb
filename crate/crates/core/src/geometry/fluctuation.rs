//! Inner fluctuations `D ↦ Σ rⱼ Uⱼ D Uⱼ*` and path lifting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matops::{ComplexMatrix, Tolerance, C64};

/// One term `r U D U*` of a fluctuated Dirac operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTerm")]
pub struct FluctuationTerm {
    pub r: f64,
    #[serde(rename = "U")]
    u: ComplexMatrix,
}

#[derive(Deserialize)]
struct RawTerm {
    r: f64,
    #[serde(rename = "U")]
    u: ComplexMatrix,
}

impl TryFrom<RawTerm> for FluctuationTerm {
    type Error = Error;

    fn try_from(raw: RawTerm) -> Result<Self> {
        Self::new(raw.r, raw.u, Tolerance::default())
    }
}

fn check_unitary(u: &ComplexMatrix, tol: Tolerance) -> Result<()> {
    if !u.is_square() {
        return Err(Error::Shape(format!("U must be square, got {}x{}", u.rows(), u.cols())));
    }
    let r = u.unitary_defect();
    if !tol.accepts(r, (u.rows() as f64).sqrt()) {
        return Err(Error::Input(format!("U is not unitary (‖U*U − I‖_F = {r:.3e})")));
    }
    Ok(())
}

impl FluctuationTerm {
    pub fn new(r: f64, u: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::Input("fluctuation coefficient must be finite".into()));
        }
        check_unitary(&u, tol)?;
        Ok(Self { r, u })
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.u
    }
}

/// `Σ rⱼ Uⱼ D Uⱼ*`.
pub fn fluctuate(d: &ComplexMatrix, terms: &[FluctuationTerm]) -> Result<ComplexMatrix> {
    if !d.is_square() {
        return Err(Error::Shape("D must be square".into()));
    }
    let mut out = ComplexMatrix::zeros(d.rows(), d.cols());
    for (k, t) in terms.iter().enumerate() {
        if t.u.shape() != d.shape() {
            return Err(Error::Shape(format!(
                "term {k}: U is {}x{}, D is {}x{}",
                t.u.rows(),
                t.u.cols(),
                d.rows(),
                d.cols()
            )));
        }
        out.axpy(C64::new(t.r, 0.0), &(&(&t.u * d) * &t.u.adjoint()));
    }
    Ok(out)
}

/// `ω = U[D, U*]`, so that `U D U* = D + ω`.
pub fn one_form(d: &ComplexMatrix, u: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    check_unitary(u, tol)?;
    if u.shape() != d.shape() {
        return Err(Error::Shape("U and D differ in size".into()));
    }
    Ok(u * &d.commutator(&u.adjoint()))
}

/// `PL ψ`.
pub fn apply_path_lifting(pl: &ComplexMatrix, psi: &[C64]) -> Result<Vec<C64>> {
    pl.apply(psi)
}
