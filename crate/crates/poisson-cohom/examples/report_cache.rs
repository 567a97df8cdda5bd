// Structured reports, their round trip through text, and the on-disk
// cache keyed by a content hash.

use anyhow::{ensure, Result};
use poisson_cohom::complex::{Mode, ModeSpec};
use poisson_cohom::engine::{CacheKey, ComplexReport, Engine};
use poisson_cohom::fixtures;
use poisson_cohom::poisson::Structure;

pub fn run_example() -> Result<()> {
    let dir = tempfile::tempdir()?;
    let engine = Engine::new().with_cache_dir(dir.path()).with_jobs(2);
    let spec = ModeSpec::new(Mode::Hamiltonian, Structure::Poisson(fixtures::solvable()))?;

    let first = engine.run_weight(&spec, 2)?;
    let path = CacheKey::new(&spec, 2).path_in(dir.path());
    println!("cached at {}:\n{}", path.display(), std::fs::read_to_string(&path)?);
    let second = engine.run_weight(&spec, 2)?;
    ensure!(first.to_text() == second.to_text(), "cache hits are byte-identical");
    ensure!(ComplexReport::parse(&first.to_text())? == first);
    ensure!(first.betti() == vec![3, 4, 1, 0]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
