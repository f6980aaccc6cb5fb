//! Axiom batteries. Every row carries a stable `triple.*` identifier.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matops::{hermitian_spectrum, ComplexMatrix, Tolerance};
use crate::report::{AxiomRecord, AxiomReport, Method};

use super::FiniteSpectralTriple;

fn row(id: &str, residual: f64, scale: f64, tol: Tolerance, what: &str) -> AxiomRecord {
    let passed = tol.accepts(residual, scale);
    let witness = if passed {
        format!("{what} holds")
    } else {
        format!("{what} violated")
    };
    AxiomRecord::numeric(id, residual, scale, passed, witness)
}

fn not_applicable(id: &str, why: &str) -> AxiomReport {
    let mut r = AxiomReport::new();
    r.push(AxiomRecord::structural(id, format!("not applicable: {why}")).advisory());
    r
}

fn sqrt_n(t: &FiniteSpectralTriple) -> f64 {
    (t.dim() as f64).sqrt()
}

/// `D = D*`, `γ = γ*`, `γ² = I`, `Dγ + γD = 0`, `[a, γ] = 0` on matrix units of `A`.
pub fn check_even_axioms(t: &FiniteSpectralTriple, tol: Tolerance) -> AxiomReport {
    let d = &t.dirac;
    let nd = d.frobenius_norm();
    let mut r = AxiomReport::new();
    r.push(row("triple.even.D_selfadjoint", d.hermitian_defect(), nd, tol, "D = D*"));
    let Some(g) = &t.gamma else {
        return r;
    };
    let ng = g.frobenius_norm();
    let id = ComplexMatrix::identity(t.dim());
    r.push(row("triple.even.gamma_selfadjoint", g.hermitian_defect(), ng, tol, "γ = γ*"));
    r.push(row(
        "triple.even.gamma_involution",
        (&(g * g) - &id).frobenius_norm(),
        ng * ng,
        tol,
        "γ² = I",
    ));
    r.push(row(
        "triple.even.anticommute_gamma",
        d.anticommutator(g).frobenius_norm(),
        nd * ng,
        tol,
        "Dγ + γD = 0",
    ));
    let worst = t
        .blocks
        .diagonal_basis()
        .iter()
        .map(|a| a.commutator(g).frobenius_norm())
        .fold(0.0, f64::max);
    r.push(row("triple.even.gamma_commutes_A", worst, ng, tol, "[a, γ] = 0 for a ∈ A"));
    r.push(
        AxiomRecord::structural("triple.even.inner_derivation", "[D, a] ∈ B = M_n(ℂ) for every a ∈ A")
            .with_method(Method::Analytic),
    );
    r
}

/// `JbJ⁻¹ = K conj(b) K*` for each matrix unit of `A`.
fn opposite_units(t: &FiniteSpectralTriple, k: &ComplexMatrix) -> Vec<ComplexMatrix> {
    let ks = k.adjoint();
    t.blocks
        .diagonal_basis()
        .iter()
        .map(|b| &(k * &b.conj()) * &ks)
        .collect()
}

/// Real-structure battery: `J² = 1`, `J` antiunitary, `DJ = JD`, `[J, γ] = 0`
/// and `J A J⁻¹ ⊂ A` are enforced. The order-zero and first-order
/// conditions `[a, JbJ⁻¹] = 0`, `[[D, a], JbJ⁻¹] = 0` are computed and
/// reported as advisory rows: with multiplicity-one block-diagonal
/// representations they fail for generic mass matrices.
pub fn check_real_axioms(t: &FiniteSpectralTriple, tol: Tolerance) -> AxiomReport {
    let Some(k) = &t.real else {
        return not_applicable("triple.real", "no real structure K");
    };
    let n = t.dim();
    let id = ComplexMatrix::identity(n);
    let d = &t.dirac;
    let nd = d.frobenius_norm();
    let nk = sqrt_n(t);
    let mut r = AxiomReport::new();
    r.push(row("triple.real.J_squared", (&(k * &k.conj()) - &id).frobenius_norm(), nk, tol, "J² = 1"));
    r.push(row("triple.real.J_unitary", k.unitary_defect(), nk, tol, "J = J* = J⁻¹ (K unitary)"));
    r.push(row(
        "triple.real.commute_D",
        (&(d * k) - &(k * &d.conj())).frobenius_norm(),
        nd * nk,
        tol,
        "DJ = JD",
    ));
    if let Some(g) = &t.gamma {
        r.push(row(
            "triple.real.commute_gamma",
            (&(g * k) - &(k * &g.conj())).frobenius_norm(),
            g.frobenius_norm() * nk,
            tol,
            "[J, γ] = 0",
        ));
    }
    let algebra = crate::cstarcat::diagonal_subspace(&t.blocks);
    let opp = opposite_units(t, k);
    let preserve = opp
        .iter()
        .map(|c| algebra.residual(c).expect("square"))
        .fold(0.0, f64::max);
    r.push(row("triple.real.J_preserves_algebra", preserve, 1.0, tol, "J A J⁻¹ ⊂ A"));

    let units = t.blocks.diagonal_basis();
    let derivations: Vec<ComplexMatrix> = units.iter().map(|a| d.commutator(a)).collect();
    let mut zeroth = 0.0_f64;
    let mut first = 0.0_f64;
    for c in &opp {
        for (a, da) in units.iter().zip(&derivations) {
            zeroth = zeroth.max(a.commutator(c).frobenius_norm());
            first = first.max(da.commutator(c).frobenius_norm());
        }
    }
    r.push(row("triple.real.zeroth_order", zeroth, 1.0, tol, "[a, JbJ⁻¹] = 0").advisory());
    r.push(row("triple.real.first_order", first, nd, tol, "[[D, a], JbJ⁻¹] = 0").advisory());
    r
}

/// S°-reality: `ε = ε*`, `ε² = 1`, `[D, ε] = 0`, `[J, ε]₊ = 0` and the
/// spectrum of `ε` is `−1` and `+1`, each with multiplicity `n/2`.
pub fn check_so_real(t: &FiniteSpectralTriple, tol: Tolerance) -> AxiomReport {
    let Some(e) = &t.epsilon else {
        return not_applicable("triple.so_real", "no S°-grading ε");
    };
    let n = t.dim();
    let ne = e.frobenius_norm();
    let d = &t.dirac;
    let mut r = AxiomReport::new();
    r.push(row("triple.so_real.selfadjoint", e.hermitian_defect(), ne, tol, "ε = ε*"));
    r.push(row(
        "triple.so_real.involution",
        (&(e * e) - &ComplexMatrix::identity(n)).frobenius_norm(),
        ne * ne,
        tol,
        "ε² = 1",
    ));
    r.push(row(
        "triple.so_real.commute_D",
        d.commutator(e).frobenius_norm(),
        d.frobenius_norm() * ne,
        tol,
        "[D, ε] = 0",
    ));
    if let Some(k) = &t.real {
        r.push(row(
            "triple.so_real.anticommute_J",
            (&(e * k) + &(k * &e.conj())).frobenius_norm(),
            ne * sqrt_n(t),
            tol,
            "[J, ε]₊ = 0",
        ));
    }
    let spectrum_row = if n % 2 == 1 {
        AxiomRecord::numeric(
            "triple.so_real.spectrum",
            1.0,
            1.0,
            false,
            format!("dimension {n} is odd; eigenvalues (−I_l, +I_l) need n = 2l"),
        )
    } else {
        match hermitian_spectrum(e, tol) {
            Ok(s) => {
                let worst = s
                    .iter()
                    .enumerate()
                    .map(|(k, &x)| (x - if k < n / 2 { -1.0 } else { 1.0 }).abs())
                    .fold(0.0, f64::max);
                row("triple.so_real.spectrum", worst, 1.0, tol, "spectrum of ε is (−I_l, +I_l)")
            }
            Err(_) => AxiomRecord::numeric(
                "triple.so_real.spectrum",
                e.hermitian_defect(),
                ne,
                false,
                "ε is not Hermitian; spectrum undefined",
            ),
        }
    };
    r.push(spectrum_row);
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PoincareVerdict {
    pub dim_right: usize,
    pub dim_left: usize,
    /// `dim H_R − dim H_L ≠ 0`.
    pub satisfied: bool,
}

/// Dimensions of the `+1` (right) and `−1` (left) eigenspaces of `γ`.
pub fn check_poincare(t: &FiniteSpectralTriple) -> Result<PoincareVerdict> {
    let g = t
        .gamma
        .as_ref()
        .ok_or_else(|| Error::Input("the Poincaré check needs a grading γ".into()))?;
    let s = hermitian_spectrum(g, Tolerance::default())?;
    let dim_right = s.iter().filter(|&&x| x > 0.0).count();
    let dim_left = s.iter().filter(|&&x| x < 0.0).count();
    Ok(PoincareVerdict {
        dim_right,
        dim_left,
        satisfied: dim_right != dim_left,
    })
}

/// Even, real and S°-real batteries followed by an informational Poincaré row.
pub fn full_battery(t: &FiniteSpectralTriple, tol: Tolerance) -> AxiomReport {
    let mut r = check_even_axioms(t, tol);
    r.extend(check_real_axioms(t, tol));
    r.extend(check_so_real(t, tol));
    let poincare = match check_poincare(t) {
        Ok(v) => AxiomRecord::structural(
            "triple.poincare",
            format!(
                "dim H_R = {}, dim H_L = {}: duality condition {}",
                v.dim_right,
                v.dim_left,
                if v.satisfied { "satisfied" } else { "not satisfied" }
            ),
        ),
        Err(e) => AxiomRecord::structural("triple.poincare", format!("not evaluated: {e}")),
    };
    r.push(poincare.advisory());
    r
}
