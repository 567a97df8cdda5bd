// Casimir polynomials, the normal form modulo Casimirs and the primal/dual
// bases of the Hamiltonian quotient.

use anyhow::{ensure, Result};
use poisson_cohom::algebra::RatPoly;
use poisson_cohom::casimir::{casimir_space, normal_form, quotient_basis, quotient_bracket};
use poisson_cohom::fixtures;

pub fn run_example() -> Result<()> {
    let sl2 = fixtures::sl2();
    for j in 0..=4 {
        let c = casimir_space(&sl2, j);
        let basis: Vec<String> = c.basis.iter().map(|f| f.to_string()).collect();
        println!("sl(2) Casimirs of degree {j}: dim {} {:?}", c.dim(), basis);
    }
    let c2 = casimir_space(&sl2, 2);
    ensure!(c2.basis == vec![RatPoly::parse(3, "4*x1*x2 + x3^2")?]);

    // φ(x1·x2) = −¼·x3²: the leading monomial x1·x2 is divided out.
    let nf = normal_form(&c2, &RatPoly::parse(3, "x1*x2")?)?;
    println!("normal form of x1*x2: {nf}");
    ensure!(nf == RatPoly::parse(3, "-1/4*x3^2")?);
    ensure!(normal_form(&c2, &nf)? == nf, "φ is idempotent");

    let q = quotient_basis(&sl2, 2);
    println!("degree-2 quotient: {} primal monomials", q.primal.len());
    ensure!(q.primal.len() == 5);

    let b = quotient_bracket(&sl2, &RatPoly::parse(3, "x1")?, &RatPoly::parse(3, "x2*x3")?);
    println!("[x1, x2*x3] in the quotient = {b}");
    ensure!(b == RatPoly::parse(3, "3/2*x3^2")?);

    let solvable = fixtures::solvable();
    let c3 = casimir_space(&solvable, 3);
    println!("solvable Casimirs of degree 3: {}", c3.basis[0]);
    ensure!(c3.dim() == 1 && c3.basis[0] == RatPoly::parse(3, "x1 + x2")?.pow(3));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
