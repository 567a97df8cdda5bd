// Running the shipped golden-table corpus.

use std::path::Path;

use anyhow::{ensure, Result};
use poisson_cohom::cli::run_goldens;
use poisson_cohom::engine::Engine;

pub fn run_example() -> Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("goldens");
    let summary = run_goldens(&dir, &Engine::new(), false)?;
    print!("{}", summary.render());
    ensure!(summary.failures.is_empty());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
