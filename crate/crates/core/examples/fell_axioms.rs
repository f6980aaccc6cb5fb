//! Fell bundles over pair groupoids: the full Morita bundle passes every
//! axiom, and three hand-built defects are caught by the right row.
//!
//! `cargo run --example fell_axioms -- DIR` also writes the Morita bundle
//! as `DIR/morita_1_2_2.json`.

use std::collections::BTreeMap;

use ncg::fellbundle::{
    check_fell_axioms, check_saturated, check_unital, full_morita_bundle, linking_algebra, semidirect_bundle,
    BlockStructure, FellBundleFD, UnitaryField,
};
use ncg::groupoid::Arrow;
use ncg::matops::{ComplexMatrix, SubspaceBasis, Tolerance};

fn main() -> ncg::Result<()> {
    let tol = Tolerance::default();
    let blocks = BlockStructure::new(vec![1, 2, 2])?;
    let morita = full_morita_bundle(&blocks);
    let mut report = check_fell_axioms(&morita, tol);
    report.push(check_saturated(&morita, tol));
    report.push(check_unital(&morita, tol));
    println!("full Morita bundle over blocks {:?}:", blocks.sizes());
    print!("{}", report.to_text());
    println!("linking algebra dimension: {}\n", linking_algebra(&morita).dim());

    // involution broken: E(1,2) is spanned by e12, but E(2,1) by e12 as well
    let scalar = BlockStructure::scalar(2)?;
    let one = |_| SubspaceBasis::full(1, 1);
    let mut fibres: BTreeMap<Arrow, SubspaceBasis> = [Arrow::unit(1), Arrow::unit(2)].into_iter().map(|a| (a, one(a))).collect();
    fibres.insert(Arrow::new(1, 2), SubspaceBasis::full(1, 1));
    let broken = FellBundleFD::new(scalar.clone(), fibres.clone())?;
    let r = check_fell_axioms(&broken, tol);
    println!("missing E(2,1): failures {:?}", r.failures().map(|f| f.id.as_str()).collect::<Vec<_>>());

    // zero off-diagonal fibres: fine as a Fell bundle, not saturated
    fibres.remove(&Arrow::new(1, 2));
    let diagonal_only = FellBundleFD::new(scalar.clone(), fibres)?;
    println!("zero off-diagonal fibre: saturated = {}", check_saturated(&diagonal_only, tol).passed);

    // diagonal fibre without its identity
    let b2 = BlockStructure::new(vec![2])?;
    let e11 = ComplexMatrix::unit(2, 2, 0, 0);
    let e12 = ComplexMatrix::unit(2, 2, 0, 1);
    let no_unit = FellBundleFD::new(
        b2,
        [(Arrow::unit(1), SubspaceBasis::new(2, 2, vec![e11, e12], tol)?)].into(),
    )?;
    println!("fibre span{{e11, e12}}: unital = {}", check_unital(&no_unit, tol).passed);

    // the semidirect product bundle for the identity field is the Morita bundle
    let sd = semidirect_bundle(&scalar, UnitaryField::identity(&scalar), tol)?;
    println!(
        "\nsemidirect bundle over 2 points: total fibre dimension {}, presentation residual {:.1e}",
        sd.bundle().total_dim(),
        sd.presentation_residual()
    );

    if let Some(dir) = std::env::args().nth(1) {
        let path = std::path::Path::new(&dir).join("morita_1_2_2.json");
        std::fs::write(&path, serde_json::to_string_pretty(&morita.to_file())? + "\n")?;
        println!("bundle written to {}", path.display());
    }
    Ok(())
}
