// The top cochain space obtained by wedging every generator up to a
// degree ℓ, and the vanishing of its cohomology.

use anyhow::{ensure, Result};
use poisson_cohom::complex::{Mode, ModeSpec};
use poisson_cohom::fixtures;
use poisson_cohom::multivector::top_betti_probe;
use poisson_cohom::poisson::Structure;

pub fn run_example() -> Result<()> {
    for (name, pi) in [("sl(2)", fixtures::sl2()), ("case 1", fixtures::quadratic_case1())] {
        let spec = ModeSpec::new(Mode::PolyBar, Structure::Poisson(pi))?;
        let r = top_betti_probe(&spec, 2)?;
        println!(
            "{name}, ℓ = 2: w0 = {}, m0 = {}, dim C^m0 = {}, rank below = {}, top Betti = {}",
            r.w0, r.m0, r.top_dim, r.rank_below, r.top_betti()
        );
        ensure!(r.holds());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
