//! Normalisers of the block-diagonal algebra and the conditional
//! expectation onto it.

use ncg::cstarcat::{
    bisection_to_normaliser, conditional_expectation, is_normaliser_bruteforce, normaliser_support,
};
use ncg::fellbundle::BlockStructure;
use ncg::groupoid::Bisection;
use ncg::matops::{ComplexMatrix, Tolerance};

fn main() -> ncg::Result<()> {
    let tol = Tolerance::default();
    let blocks = BlockStructure::new(vec![1, 2])?;

    let samples = [
        ("diagonal", ComplexMatrix::from_real(&[&[2.0, 0.0, 0.0], &[0.0, 1.0, 3.0], &[0.0, 0.0, 1.0]])?),
        ("off-diagonal unit", ComplexMatrix::unit(3, 3, 0, 1)),
        ("two blocks in a column", ComplexMatrix::from_real(&[&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])?),
    ];
    for (name, b) in &samples {
        let class = normaliser_support(b, &blocks, tol)?;
        let brute = is_normaliser_bruteforce(b, &blocks, tol)?;
        println!("{name:<24} kind {:?}, support {:?}, brute force says {brute}", class.kind, class.support);
    }

    let x = ComplexMatrix::from_fn(3, 3, |i, j| ncg::matops::C64::new((i * 3 + j) as f64, 1.0));
    let p = conditional_expectation(&x, &blocks)?;
    println!("\nP(x) keeps the diagonal blocks:\n{p:?}");
    let pp = conditional_expectation(&p, &blocks)?;
    println!("‖P(P(x)) − P(x)‖ = {:.1e}", (&pp - &p).frobenius_norm());

    let scalars = BlockStructure::scalar(3)?;
    let u = bisection_to_normaliser(&Bisection::new(vec![2, 3, 1])?, &scalars, None)?;
    let class = normaliser_support(&u, &scalars, tol)?;
    println!("\nthe 3-cycle lifts to a {:?} normaliser with support {:?}", class.kind, class.support);
    Ok(())
}
