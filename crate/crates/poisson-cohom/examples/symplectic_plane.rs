// The 0-homogeneous symplectic plane: the polynomial Lie algebra from
// degree 1 and its π-annihilator subcomplex.

use anyhow::{ensure, Result};
use poisson_cohom::cli::render_table;
use poisson_cohom::complex::{Mode, ModeSpec};
use poisson_cohom::engine::Engine;
use poisson_cohom::fixtures;
use poisson_cohom::poisson::Structure;

pub fn run_example() -> Result<()> {
    let plane = Structure::Poisson(fixtures::symplectic_plane());
    let bar = ModeSpec::new(Mode::PolyBar, plane.clone())?.with_start_degree(1)?;
    let engine = Engine::new();
    let r = engine.run_weight(&bar, 0)?;
    print!("{}", render_table(&r));
    ensure!(r.dims() == vec![1, 3, 11, 30, 45, 41, 23, 6]);
    ensure!(r.betti() == vec![1, 0, 0, 0, 0, 0, 0, 1]);

    let ann = ModeSpec::new(Mode::PiAnnihilator, plane)?;
    let a = engine.run_weight(&ann, 2)?;
    print!("{}", render_table(&a));
    ensure!(a.betti() == vec![0, 0, 1, 0, 0, 1, 0, 0, 0]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
