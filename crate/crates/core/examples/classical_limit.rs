//! Lattice Dirac operators on the circle converge to `−i d/dx`; a gauge
//! phase `e^{iθ}` adds the connection term `−θ′ f`.
//!
//! Run with `cargo run --example classical_limit`.

use ncg::climit::{convergence_report, gauge_covariance_check, LatticeConfig, Profile};

fn main() -> ncg::Result<()> {
    let flat = convergence_report(&Profile::Sine(1), None, &[64, 128, 256])?;
    print!("{}", flat.to_text());
    println!();

    let curved = convergence_report(&Profile::PlaneWave(1), Some(&Profile::Sine(1)), &[64, 128, 256])?;
    print!("{}", curved.to_text());
    println!();

    for n in [16, 64, 256] {
        let r = gauge_covariance_check(LatticeConfig::new(n)?, &Profile::Sine(1), &Profile::PlaneWave(1))?;
        println!("n = {n:>3}: gauge covariance residual {r:.2e}");
    }
    Ok(())
}
