//! Exact weight-graded Lie algebra cohomology of polynomial Poisson algebras.
//!
//! The crate computes Betti numbers and Euler characteristics of the
//! Chevalley–Eilenberg complexes attached to homogeneous Poisson structures
//! on `ℝⁿ`: the polynomial Lie algebra, its Hamiltonian quotient modulo
//! Casimirs, the π-annihilator subcomplex, the Poisson-like complex of graded
//! vector fields and the Poisson polynomial (module) complex.  All arithmetic
//! is exact over ℚ.

pub mod algebra;
pub mod casimir;
pub mod cli;
pub mod complex;
pub mod diagrams;
pub mod engine;
pub mod fixtures;
pub mod linalg;
pub mod multivector;
pub mod poisson;
