// Exact sparse rank and kernel computations over ℚ.

use anyhow::{ensure, Result};
use poisson_cohom::algebra::rat;
use poisson_cohom::linalg::{rank_kernel, SparseMatrix};

pub fn run_example() -> Result<()> {
    // Rows: (1, 2, 3), (4, 5, 6), (7, 8, 9) — rank 2, kernel spanned by (1, −2, 1).
    let dense: Vec<Vec<_>> = (0..3).map(|i| (1..=3).map(|j| rat(3 * i + j, 1)).collect()).collect();
    let m = SparseMatrix::from_dense(&dense);
    let r = rank_kernel(&m, true);
    let kernel = r.kernel_basis.expect("requested");
    println!("rank {}, kernel {:?}", r.rank, kernel);
    ensure!(r.rank == 2 && r.kernel_dim == 1);
    let v = SparseMatrix::from_columns(3, kernel);
    ensure!(m.mul(&v)?.is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
