// Betti tables of the polynomial Lie algebra of sl(2) in weights 1–4.

use anyhow::{ensure, Result};
use poisson_cohom::cli::render_table;
use poisson_cohom::complex::{Mode, ModeSpec};
use poisson_cohom::engine::{cross_check, Engine};
use poisson_cohom::fixtures;
use poisson_cohom::poisson::Structure;

pub fn run_example() -> Result<()> {
    let spec = ModeSpec::new(Mode::PolyBar, Structure::Poisson(fixtures::sl2()))?;
    let reports = Engine::new().run(&spec, 1..=4)?;
    for r in &reports {
        print!("{}", render_table(r));
        ensure!(cross_check(r).is_empty());
    }
    ensure!(reports[0].betti() == vec![1, 0, 0, 1]);
    ensure!(reports[1].betti().iter().all(|&b| b == 0));
    ensure!(reports[2].betti() == vec![1, 0, 0, 1, 0, 0]);
    ensure!(reports[3].dims() == vec![21, 198, 618, 891, 630, 195, 15]);
    ensure!(reports[3].betti() == vec![0, 1, 1, 0, 1, 1, 0]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
