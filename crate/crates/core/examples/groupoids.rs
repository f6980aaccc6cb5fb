//! Pair groupoids, bisections and partial bisections on three points.

use ncg::groupoid::{compose_arrows, compose_bisections, Arrow, Bisection, LocalBisection, PairGroupoid};

fn main() -> ncg::Result<()> {
    let g = PairGroupoid::new(3)?;
    println!("arrows of the pair groupoid on 3 points: {}", g.arrows().count());
    println!("composable pairs: {}", g.composable_pairs().count());

    // (1,2)∘(2,3) = (1,3); arrows point from domain to range
    let h = compose_arrows(Arrow::new(1, 2), Arrow::new(2, 3))?;
    println!("(1,2)∘(2,3) = {}", h.key());
    assert!(compose_arrows(Arrow::new(1, 2), Arrow::new(3, 1)).is_err());

    let all = Bisection::all(3);
    println!("global bisections: {} (one per permutation)", all.len());
    let swap = Bisection::transposition(3, 1, 2)?;
    let cycle = Bisection::new(vec![2, 3, 1])?;
    let prod = compose_bisections(&swap, &cycle)?;
    println!("(12)·(123) sends 1,2,3 to {:?}", prod.images());
    println!("involutions among them: {}", all.iter().filter(|b| b.is_involution()).count());

    println!("partial bisections on 2 points: {}", LocalBisection::all(2).len());
    Ok(())
}
