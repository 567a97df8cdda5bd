// Poisson-like cohomology: ℝ-wedges of graded vector fields with the
// ℝ-Schouten bracket against a Poisson-like 2-vector.

use anyhow::{ensure, Result};
use poisson_cohom::cli::render_table;
use poisson_cohom::complex::{Mode, ModeSpec};
use poisson_cohom::engine::Engine;
use poisson_cohom::fixtures;
use poisson_cohom::linalg::rank;
use poisson_cohom::multivector::poisson_like_complex;
use poisson_cohom::poisson::{phi_flatten, r_schouten, Structure};

pub fn run_example() -> Result<()> {
    let like = fixtures::poisson_like_linear();
    ensure!(r_schouten(&like.pi, &like.pi).is_zero(), "Poisson-like");
    println!("π = {}  flattens to  {}", like.pi, phi_flatten(&like.pi));

    let cx = poisson_like_complex(&Structure::PoissonLike(like), 1)?;
    let dims: Vec<usize> = (1..=4).map(|m| cx.dim(m)).collect();
    let ranks: Vec<usize> = (1..=4).map(|m| cx.coboundary(m).map(|d| rank(&d))).collect::<Result<_, _>>()?;
    println!("weight 1: dims {dims:?}, ranks {ranks:?}");
    ensure!(dims == vec![9, 27, 27, 9]);

    let constant = ModeSpec::new(Mode::PoissonLike, Structure::PoissonLike(fixtures::poisson_like_constant()))?;
    let report = Engine::new().run_weight(&constant, 3)?;
    print!("{}", render_table(&report));
    ensure!(report.betti() == vec![3, 11, 0]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
