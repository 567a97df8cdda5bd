// Twin tables: the polynomial Lie algebra versus its Hamiltonian quotient
// modulo Casimirs, for the Heisenberg structure.

use anyhow::{ensure, Result};
use poisson_cohom::cli::render_table;
use poisson_cohom::complex::{Mode, ModeSpec};
use poisson_cohom::engine::Engine;
use poisson_cohom::fixtures;
use poisson_cohom::poisson::Structure;

pub fn run_example() -> Result<()> {
    let heis = Structure::Poisson(fixtures::heisenberg());
    let bar = ModeSpec::new(Mode::PolyBar, heis.clone())?;
    let ham = ModeSpec::new(Mode::Hamiltonian, heis)?;
    let engine = Engine::new();
    for w in 0..=3 {
        let (a, b) = (engine.run_weight(&bar, w)?, engine.run_weight(&ham, w)?);
        print!("{}{}", render_table(&a), render_table(&b));
    }
    let r = engine.run_weight(&ham, 3)?;
    ensure!(r.dims() == vec![14, 73, 114, 65, 10]);
    ensure!(r.betti() == vec![5, 19, 27, 13, 0]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
