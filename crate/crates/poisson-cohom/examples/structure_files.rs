// Loading structure files, checking the Jacobi identity and rejecting a
// bracket that violates it.

use anyhow::{ensure, Result};
use poisson_cohom::algebra::RatPoly;
use poisson_cohom::poisson::{jacobi_check, parse_structure, poisson_bracket};

const SL2: &str = "# sl(2)\nn 3\nh 1\np 1 2 = x3\np 1 3 = -2*x1\np 2 3 = 2*x2\n";
const BROKEN: &str = "n 3\nh 1\np 1 2 = x3\np 1 3 = x1\np 2 3 = x1\n";

pub fn run_example() -> Result<()> {
    let structure = parse_structure(SL2, true)?;
    let pi = structure.as_poisson().expect("ordinary Poisson structure");
    println!("loaded n = {}, h = {}:\n{}", pi.n(), pi.h(), pi.to_text());

    let f = RatPoly::parse(3, "x1*x2")?;
    let g = RatPoly::parse(3, "x3^2")?;
    let b = poisson_bracket(pi, &f, &g);
    // x3^2 = C − 4·x1·x2 with C the quadratic Casimir, so the bracket vanishes.
    println!("{{x1*x2, x3^2}} = {b}");
    ensure!(b.is_zero());
    let h = poisson_bracket(pi, &RatPoly::parse(3, "x1")?, &RatPoly::parse(3, "x2*x3")?);
    println!("{{x1, x2*x3}} = {h}");
    ensure!(h == RatPoly::parse(3, "x3^2 - 2*x1*x2")?);

    let err = parse_structure(BROKEN, true).expect_err("the Jacobi identity fails");
    println!("rejected: {err}");
    let unchecked = parse_structure(BROKEN, false)?;
    let report = jacobi_check(unchecked.as_poisson().expect("poisson"));
    ensure!(!report.holds());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
