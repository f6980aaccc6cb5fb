//! Spectral triple → spectral C*-category → Fell bundle triple → back.

use ncg::geometry::{categorify, category_from_fell_triple, fell_triple_from_category, triple_from_category};
use ncg::matops::{ComplexMatrix, Tolerance};
use ncg::sptriple::{build_triple_from_mass_matrix, MassMatrix};

fn main() -> ncg::Result<()> {
    let tol = Tolerance::default();
    let t = build_triple_from_mass_matrix(&MassMatrix::new(ComplexMatrix::from_real(&[&[0.8, 0.6], &[-0.6, 0.8]])?))?;

    let c = categorify(&t, tol)?;
    println!(
        "category: {} objects, σ sends object j to {:?}",
        c.category().objects(),
        c.sigma().perm().images()
    );
    let f = fell_triple_from_category(&c, tol)?;
    println!(
        "Fell bundle triple: total fibre dimension {}, PL = D: {}",
        f.bundle().total_dim(),
        f.path_lifting() == &t.dirac
    );

    let c2 = category_from_fell_triple(&f, tol)?;
    let back = triple_from_category(&c2, t.gamma.clone(), t.epsilon.clone(), t.real.clone(), tol)?;
    println!("round trip reproduces the triple exactly: {}", back == t);

    let zero = build_triple_from_mass_matrix(&MassMatrix::new(ComplexMatrix::zeros(1, 1)))?;
    match categorify(&zero, tol) {
        Err(e) => println!("D = 0: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
