//! Build the four-sector spectral triple from a mass matrix, run the
//! batteries and read the mass matrix back.
//!
//! `cargo run --example mass_matrix_triple -- DIR` also writes the CLI
//! fixtures `mass_m1.json`, `gamma_identity.json` and `terms.json` to `DIR`.

use ncg::geometry::FluctuationTerm;
use ncg::matops::{is_partial_isometry, ComplexMatrix, Tolerance, C64};
use ncg::sptriple::{
    build_triple_from_mass_matrix, check_geodesic_equation, check_poincare, dirac_solution_space, extract_mass_matrix,
    full_battery, MassMatrix,
};

fn main() -> ncg::Result<()> {
    let tol = Tolerance::default();
    let m = MassMatrix::new(ComplexMatrix::from_rows(vec![
        vec![C64::new(1.0, 0.5), C64::new(0.0, -2.0)],
        vec![C64::new(0.3, 0.0), C64::new(-1.0, 1.0)],
    ])?);
    let t = build_triple_from_mass_matrix(&m)?;
    print!("{}", full_battery(&t, tol).to_text());

    let v = check_poincare(&t)?;
    println!("dim H_R = {}, dim H_L = {}", v.dim_right, v.dim_left);
    println!("mass matrix recovered: {}", extract_mass_matrix(&t, tol)? == m);

    for l in 1..=2 {
        println!("l = {l}: Dirac operators allowed by the symmetries form a real space of dimension {}", dirac_solution_space(l)?.len());
    }

    let projector = MassMatrix::new(ComplexMatrix::from_real(&[&[1.0, 0.0], &[0.0, 0.0]])?);
    for mm in [&projector, &m] {
        println!(
            "M(M*M − I) = 0: {} (partial isometry: {})",
            check_geodesic_equation(mm, tol),
            is_partial_isometry(mm.matrix(), tol)?
        );
    }

    if let Some(dir) = std::env::args().nth(1) {
        let dir = std::path::Path::new(&dir);
        let t1 = build_triple_from_mass_matrix(&MassMatrix::new(ComplexMatrix::from_real(&[&[1.0]])?))?;
        let mut bad = t1.clone();
        bad.gamma = Some(ComplexMatrix::identity(4));
        // phases chosen so that U D U* still commutes with J
        let u = ComplexMatrix::diag(&[C64::from_polar(1.0, 0.3), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::from_polar(1.0, 0.3)]);
        let terms = vec![FluctuationTerm::new(1.0, u, tol)?];
        let write = |name: &str, json: String| std::fs::write(dir.join(name), json + "\n");
        write("mass_m1.json", serde_json::to_string_pretty(&t1.to_file())?)?;
        write("gamma_identity.json", serde_json::to_string_pretty(&bad.to_file())?)?;
        write("terms.json", serde_json::to_string_pretty(&terms)?)?;
        println!("fixtures written to {}", dir.display());
    }
    Ok(())
}
