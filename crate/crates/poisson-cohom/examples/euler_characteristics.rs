// Euler characteristics from diagram counts alone, compared with the
// alternating Betti sums of computed complexes.

use anyhow::{ensure, Result};
use poisson_cohom::complex::{Mode, ModeSpec};
use poisson_cohom::diagrams::{euler_combinatorial, euler_polymodule, CapProfile};
use poisson_cohom::engine::Engine;
use poisson_cohom::fixtures;
use poisson_cohom::poisson::Structure;

pub fn run_example() -> Result<()> {
    let linear: Vec<i128> = (0..=6).map(|w| euler_combinatorial(&CapProfile::polynomial(3, 1, 1), w)).collect();
    let quadratic: Vec<i128> = (1..=7).map(|w| euler_combinatorial(&CapProfile::polynomial(3, 2, 1), w)).collect();
    let cubic: Vec<i128> = (0..=6).map(|w| euler_combinatorial(&CapProfile::polynomial(3, 3, 1), w)).collect();
    println!("h = 1: {linear:?}\nh = 2: {quadratic:?}\nh = 3: {cubic:?}");
    ensure!(linear.iter().all(|&e| e == 0));
    ensure!(quadratic == vec![-3, -3, 7, 12, 15, -20, -54]);
    ensure!(cubic == vec![1, 0, -3, -6, -7, 3, 23]);

    let modules: Vec<i128> = (-6..=0).map(|w| euler_polymodule(3, 3, w)).collect();
    println!("poly-module, h = 3, w = -6..0: {modules:?}");
    ensure!(modules == vec![-1, -3, -3, -1, 0, 0, 0]);

    let spec = ModeSpec::new(Mode::PolyBar, Structure::Poisson(fixtures::quadratic_case2()))?;
    for w in 1..=4 {
        let r = Engine::new().run_weight(&spec, w)?;
        println!("case 2, w = {w}: Betti {:?}, Σ(−1)^m b_m = {}", r.betti(), r.betti_euler());
        ensure!(r.betti_euler() as i128 == euler_combinatorial(&spec.caps()?, w));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
