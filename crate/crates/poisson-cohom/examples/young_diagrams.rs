// Young-diagram bookkeeping: ∇(A, k), tower decompositions, and the
// signatures that index the summands of a weighted cochain space.

use anyhow::{ensure, Result};
use poisson_cohom::diagrams::{
    cochain_dims, enumerate_signatures, nabla, signature_dim, tower_decompose, CapProfile,
};

pub fn run_example() -> Result<()> {
    let diagrams = nabla(6, 3);
    println!("∇(6,3) = {diagrams:?}");
    ensure!(diagrams.len() == 3);

    let lambda = [4, 2, 1];
    let towers = tower_decompose(&lambda);
    println!("towers of {lambda:?}: {towers:?}");
    ensure!(towers == vec![3, 2, 1, 1]);

    // Polynomial generators S_j (j ≥ 1) on ℝ³ for a linear structure.
    let caps = CapProfile::polynomial(3, 1, 1);
    let caps = caps.truncated(caps.max_degree_for_weight(1).expect("weight 1 is reachable"));
    for sig in enumerate_signatures(&caps, 1, None) {
        println!("m = {}  {sig}  dim {}", sig.m(), signature_dim(&sig, &caps)?);
    }
    let dims = cochain_dims(&caps, 1);
    println!("dims of weight 1: {dims:?}");
    ensure!(dims == vec![0, 6, 18, 18, 6]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
