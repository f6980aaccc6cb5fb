//! Inner fluctuations of a Dirac operator and transport along the
//! path-lifting operator.

use ncg::geometry::{apply_path_lifting, fluctuate, one_form, FluctuationTerm};
use ncg::matops::{ComplexMatrix, Tolerance, C64, ONE, ZERO};
use ncg::sptriple::{build_triple_from_mass_matrix, check_even_axioms, MassMatrix};

fn main() -> ncg::Result<()> {
    let tol = Tolerance::default();
    let t = build_triple_from_mass_matrix(&MassMatrix::new(ComplexMatrix::from_real(&[&[1.0]])?))?;
    let phase = |x: f64| C64::from_polar(1.0, x);

    // block-diagonal unitaries commute with γ, so Dγ + γD = 0 survives
    let u = ComplexMatrix::diag(&[phase(0.4), phase(-0.2), phase(0.4), phase(1.1)]);
    let terms = [
        FluctuationTerm::new(0.7, u.clone(), tol)?,
        FluctuationTerm::new(0.3, ComplexMatrix::identity(4), tol)?,
    ];
    let mut tf = t.clone();
    tf.dirac = fluctuate(&t.dirac, &terms)?;
    println!("fluctuated D:\n{:?}", tf.dirac);
    println!("even battery still passes: {}", check_even_axioms(&tf, tol).passed());

    let w = one_form(&t.dirac, &u, tol)?;
    let defect = &(&(&u * &t.dirac) * &u.adjoint()) - &(&t.dirac + &w);
    println!("‖U D U* − D − U[D, U*]‖ = {:.1e}", defect.frobenius_norm());

    let psi = [ONE, ZERO, ZERO, ZERO];
    let moved = apply_path_lifting(&t.dirac, &psi)?;
    let support: Vec<usize> = (0..4).filter(|&k| moved[k].norm() > 0.0).map(|k| k + 1).collect();
    println!("PL moves a state supported in block 1 to blocks {support:?}");
    Ok(())
}
