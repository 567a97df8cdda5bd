// Poisson polynomial cohomology `S ⊗ Λ ℝⁿ` with `d = [π, ·]`, checked
// against the closed forms for the Heisenberg and sp(ℝ²) structures and
// the finite Lie algebra rows of so(4).

use anyhow::{ensure, Result};
use poisson_cohom::cli::render_table;
use poisson_cohom::complex::{Mode, ModeSpec};
use poisson_cohom::engine::{oracle_check, Engine};
use poisson_cohom::fixtures;
use poisson_cohom::multivector::{heisenberg_closed_form, sp2_closed_form};
use poisson_cohom::poisson::Structure;

pub fn run_example() -> Result<()> {
    let engine = Engine::new();
    let pi_bar = ModeSpec::new(Mode::PolyModule, Structure::Poisson(fixtures::pi_bar()))?;
    let r = engine.run_weight(&pi_bar, 5)?;
    print!("{}", render_table(&r));
    ensure!(r.betti() == vec![0, 7, 16, 9]);

    let heis = ModeSpec::new(Mode::PolyModule, Structure::Poisson(fixtures::heisenberg()))?;
    let sp2 = ModeSpec::new(Mode::PolyModule, Structure::Poisson(fixtures::sp2()))?;
    for w in 0..=4 {
        let (h, s) = (engine.run_weight(&heis, w)?, engine.run_weight(&sp2, w)?);
        println!("w = {w}: Heisenberg {:?} (predicted {:?}), sp(2) {:?} (predicted {:?})",
            h.betti(), heisenberg_closed_form(w)?, s.betti(), sp2_closed_form(w)?);
        ensure!(oracle_check(&heis, &h).is_empty() && oracle_check(&sp2, &s).is_empty());
    }

    let so4 = ModeSpec::new(Mode::PolyModule, Structure::Poisson(fixtures::so4()))?;
    let r = engine.run_weight(&so4, 0)?;
    println!("so(4), weight 0: Betti {:?}", r.betti());
    ensure!(r.betti() == vec![1, 0, 0, 2, 0, 0, 1]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
