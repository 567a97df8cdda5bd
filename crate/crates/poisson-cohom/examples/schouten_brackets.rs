// Schouten brackets of polynomial multivector fields: [π, π] = 0 for a
// Poisson structure, and [π, [π, u]] = 0 for any u.

use anyhow::{ensure, Result};
use poisson_cohom::algebra::{rat, MultiIndex};
use poisson_cohom::fixtures;
use poisson_cohom::poisson::{schouten, MultiVector};

pub fn run_example() -> Result<()> {
    let pi = fixtures::quadratic_case2().to_multivector();
    let self_bracket = schouten(&pi, &pi);
    println!("π = {pi}\n[π, π] = {self_bracket}");
    ensure!(self_bracket.is_zero());

    let u = MultiVector::term(3, MultiIndex::new(vec![2, 0, 1]), vec![2], rat(1, 1));
    let du = schouten(&pi, &u);
    println!("[π, x1^2 x3 ∂2] = {du}");
    ensure!(schouten(&pi, &du).is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
