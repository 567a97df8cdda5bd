//! Named example structures: the three-dimensional Lie–Poisson algebras,
//! homogeneous quadratic and higher structures on ℝ³, symplectic planes,
//! Poisson-like 2-vectors, and Lie–Poisson structures of matrix Lie algebras
//! built from explicit matrix bases.

use num::{One, Zero};

use crate::algebra::{int, MultiIndex, RatPoly, Rational};
use crate::linalg::{rref, SparseVec};
use crate::poisson::{Field, GradedMultiVector, PoissonLike, PoissonStructure, Structure};

/// A named fixture with a one-line description.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub structure: Structure,
}

fn poly(n: usize, s: &str) -> RatPoly {
    RatPoly::parse(n, s).expect("fixture polynomial")
}

fn structure(n: usize, h: u32, entries: &[(usize, usize, &str)]) -> PoissonStructure {
    PoissonStructure::new(n, h, entries.iter().map(|&(i, j, s)| (i, j, poly(n, s)))).expect("fixture structure")
}

/// `sl(2)`: `{x1,x2} = x3`, `{x1,x3} = −2x1`, `{x2,x3} = 2x2`.
pub fn sl2() -> PoissonStructure {
    structure(3, 1, &[(1, 2, "x3"), (1, 3, "-2*x1"), (2, 3, "2*x2")])
}

/// `so(3)`: `{x1,x2} = x3`, `{x1,x3} = −x2`, `{x2,x3} = x1`.
pub fn so3() -> PoissonStructure {
    structure(3, 1, &[(1, 2, "x3"), (1, 3, "-x2"), (2, 3, "x1")])
}

/// The Heisenberg algebra: `{x1,x2} = x3`.
pub fn heisenberg() -> PoissonStructure {
    structure(3, 1, &[(1, 2, "x3")])
}

/// A solvable Lie–Poisson structure (upper-triangular 2×2 type):
/// `{x1,x3} = x3`, `{x2,x3} = −x3`.  Its Casimirs are the powers of `x1 + x2`.
pub fn solvable() -> PoissonStructure {
    structure(3, 1, &[(1, 3, "x3"), (2, 3, "-x3")])
}

/// `sl(2) ⊕ ℝ` on ℝ⁴ (the fourth coordinate is a linear Casimir).
pub fn sl2_plus_line() -> PoissonStructure {
    structure(4, 1, &[(1, 2, "x3"), (1, 3, "-2*x1"), (2, 3, "2*x2")])
}

/// Quadratic case 1: `{x2,x3} = ½x1²`, `{x3,x1} = ½x2²`, `{x1,x2} = ½x3²`.
pub fn quadratic_case1() -> PoissonStructure {
    structure(3, 2, &[(2, 3, "1/2*x1^2"), (1, 3, "-1/2*x2^2"), (1, 2, "1/2*x3^2")])
}

/// Quadratic case 2: `{x1,x2} = x1x2`, `{x2,x3} = x2x3`, `{x3,x1} = x1x3`.
pub fn quadratic_case2() -> PoissonStructure {
    structure(3, 2, &[(1, 2, "x1*x2"), (2, 3, "x2*x3"), (1, 3, "-x1*x3")])
}

/// Quadratic case 3: `{x2,x3} = x1²`, `{x3,x1} = x1x3`, `{x1,x2} = x1x2`.
pub fn quadratic_case3() -> PoissonStructure {
    structure(3, 2, &[(2, 3, "x1^2"), (1, 3, "-x1*x3"), (1, 2, "x1*x2")])
}

/// `{x1,x2} = x3²` on ℝ³.
pub fn x3_squared() -> PoissonStructure {
    structure(3, 2, &[(1, 2, "x3^2")])
}

/// `{x1,x2} = x3³` on ℝ³.
pub fn x3_cubed() -> PoissonStructure {
    structure(3, 3, &[(1, 2, "x3^3")])
}

/// The symplectic plane: `{x1,x2} = 1`.
pub fn symplectic_plane() -> PoissonStructure {
    structure(2, 0, &[(1, 2, "1")])
}

/// The constant structure `{x1,x2} = 1` on ℝ³.
pub fn constant_r3() -> PoissonStructure {
    structure(3, 0, &[(1, 2, "1")])
}

/// `sp(ℝ²)` in the coordinates used for the polynomial-module theorem; it
/// has the same brackets as [`sl2`].
pub fn sp2() -> PoissonStructure {
    sl2()
}

/// The quadratic structure `π̄` with `{x1,x2} = x2² − x3²`,
/// `{x1,x3} = 2x2x3 + 2x3²` (image of the quadratic Poisson-like 2-vector).
pub fn pi_bar() -> PoissonStructure {
    structure(3, 2, &[(1, 2, "x2^2 - x3^2"), (1, 3, "2*x2*x3 + 2*x3^2")])
}

fn field(n: usize, mono: &str, axis: usize) -> Field {
    let p = poly(n, mono);
    let a = p.terms().next().expect("monomial").0.clone();
    Field::new(a, axis)
}

/// A graded vector field `monomial · ∂_axis`, written as (monomial, axis).
type FieldSpec<'a> = (&'a str, usize);

fn poisson_like(n: usize, h: u32, terms: &[(i64, FieldSpec, FieldSpec)]) -> PoissonLike {
    let mut pi = GradedMultiVector::zero(n, 2);
    for &(c, (m1, a1), (m2, a2)) in terms {
        pi.add_term(vec![field(n, m1, a1), field(n, m2, a2)], int(c));
    }
    PoissonLike::new(n, h, pi, true).expect("fixture Poisson-like 2-vector")
}

/// The constant Poisson-like 2-vector `∂1∧∂2` on ℝ³.
pub fn poisson_like_constant() -> PoissonLike {
    poisson_like(3, 0, &[(1, ("1", 1), ("1", 2))])
}

/// The linear Poisson-like 2-vector `(∂1 − ∂3)∧(x1∂3 + x3∂3)` on ℝ³.
pub fn poisson_like_linear() -> PoissonLike {
    poisson_like(
        3,
        1,
        &[
            (1, ("1", 1), ("x1", 3)),
            (1, ("1", 1), ("x3", 3)),
            (-1, ("1", 3), ("x1", 3)),
            (-1, ("1", 3), ("x3", 3)),
        ],
    )
}

/// The quadratic Poisson-like 2-vector whose flattening is [`pi_bar`].
pub fn poisson_like_quadratic() -> PoissonLike {
    poisson_like(
        3,
        2,
        &[
            (-1, ("1", 3), ("x2*x3", 1)),
            (1, ("x2", 1), ("x2", 2)),
            (1, ("x3", 1), ("x3", 3)),
            (1, ("1", 2), ("x3^2", 1)),
            (-1, ("x2", 2), ("x3", 1)),
            (1, ("x2", 1), ("x3", 3)),
            (-1, ("1", 3), ("x3^2", 1)),
            (1, ("1", 2), ("x2*x3", 1)),
        ],
    )
}

/// Family (1): `f ∂i∧∂j` for an arbitrary homogeneous `f`.
pub fn family_single(n: usize, i: usize, j: usize, f: &RatPoly) -> Option<PoissonStructure> {
    let h = f.homogeneous_degree()?;
    PoissonStructure::new(n, h, [(i, j, f.clone())]).ok()
}

/// Family (2) on ℝ³: `φ ∂1∧(f ∂2 + g ∂3)` with `f, g` functions of `x2, x3`
/// only.  The Jacobi identity holds under that restriction; factors that
/// depend on `x1` generally break it.
pub fn family_rank_two(phi: &RatPoly, f: &RatPoly, g: &RatPoly) -> Option<PoissonStructure> {
    let p12 = phi.mul(f).ok()?;
    let p13 = phi.mul(g).ok()?;
    let h = p12.homogeneous_degree().or_else(|| p13.homogeneous_degree())?;
    PoissonStructure::new(3, h, [(1, 2, p12), (1, 3, p13)]).ok()
}

/// Family (3-1) on ℝ³: `Σ c_i x_i^p x_{i+1}^p ∂i∧∂{i+1}` (indices mod 3).
pub fn family_cyclic_products(c: [i64; 3], p: u32) -> PoissonStructure {
    let entries = (1..=3).map(|i| {
        let j = i % 3 + 1;
        let mut e = vec![0u32; 3];
        e[i - 1] = p;
        e[j - 1] = p;
        (i, j, RatPoly::monomial(MultiIndex::new(e), int(c[i - 1])))
    });
    PoissonStructure::new(3, 2 * p, entries).expect("homogeneous")
}

/// Family (3-2) on ℝ³: `Σ c_i x_i^p ∂{i+1}∧∂{i+2}` (indices mod 3).
pub fn family_cyclic_powers(c: [i64; 3], p: u32) -> PoissonStructure {
    let entries = (1..=3).map(|i| {
        let j = i % 3 + 1;
        let k = j % 3 + 1;
        let mut e = vec![0u32; 3];
        e[i - 1] = p;
        (j, k, RatPoly::monomial(MultiIndex::new(e), int(c[i - 1])))
    });
    PoissonStructure::new(3, p, entries).expect("homogeneous")
}

/// Square matrices over ℚ, row-major.
pub type Matrix = Vec<Vec<Rational>>;

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j] += &a[i][k] * &b[k][j] - &b[i][k] * &a[k][j];
            }
        }
    }
    out
}

/// Lie–Poisson structure `{x_i, x_j} = Σ_k c^k_ij x_k` of the matrix Lie
/// algebra spanned by `basis` (which must be linearly independent and closed
/// under commutators).  Returns `None` otherwise.
pub fn lie_poisson_from_matrices(basis: &[Matrix]) -> Option<PoissonStructure> {
    let d = basis.len();
    let size = basis.first()?.len();
    let mut entries = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let target = commutator(&basis[i], &basis[j]);
            let rows: Vec<SparseVec> = (0..size * size)
                .map(|p| {
                    let (r, c) = (p / size, p % size);
                    let mut row: SparseVec = basis
                        .iter()
                        .enumerate()
                        .filter(|(_, b)| !b[r][c].is_zero())
                        .map(|(k, b)| (k as u32, b[r][c].clone()))
                        .collect();
                    if !target[r][c].is_zero() {
                        row.push((d as u32, target[r][c].clone()));
                    }
                    row
                })
                .collect();
            let (reduced, pivots) = rref(rows, d + 1);
            if pivots.contains(&d) || pivots.len() != d {
                return None;
            }
            let mut f = RatPoly::zero(d);
            for (k, row) in reduced.iter().enumerate() {
                if let Some((_, c)) = row.iter().find(|e| e.0 as usize == d) {
                    f.add_term(MultiIndex::unit(d, k + 1), c.clone());
                }
            }
            entries.push((i + 1, j + 1, f));
        }
    }
    PoissonStructure::new(d, 1, entries).ok()
}

fn elementary(size: usize, i: usize, j: usize) -> Matrix {
    let mut m = vec![vec![Rational::zero(); size]; size];
    m[i][j] = Rational::one();
    m
}

fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect()).collect()
}

/// Antisymmetric matrices `E_ij − E_ji` (`i < j`): a basis of `so(size)`.
pub fn so_basis(size: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            out.push(sub(&elementary(size, i, j), &elementary(size, j, i)));
        }
    }
    out
}

/// Off-diagonal `E_ij` followed by `E_ii − E_{i+1,i+1}`: a basis of `sl(size)`.
pub fn sl_basis(size: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..size {
        for j in 0..size {
            if i != j {
                out.push(elementary(size, i, j));
            }
        }
    }
    for i in 0..size.saturating_sub(1) {
        out.push(sub(&elementary(size, i, i), &elementary(size, i + 1, i + 1)));
    }
    out
}

/// Lie–Poisson structure of `so(4)` on ℝ⁶.
pub fn so4() -> PoissonStructure {
    lie_poisson_from_matrices(&so_basis(4)).expect("so(4) closes")
}

/// Lie–Poisson structure of `sl(3)` on ℝ⁸.
pub fn sl3() -> PoissonStructure {
    lie_poisson_from_matrices(&sl_basis(3)).expect("sl(3) closes")
}

/// Lie–Poisson structure of `so(5) ≅ sp(ℝ⁴)` on ℝ¹⁰.
pub fn so5() -> PoissonStructure {
    lie_poisson_from_matrices(&so_basis(5)).expect("so(5) closes")
}

/// Every named fixture.
pub fn all() -> Vec<Fixture> {
    use Structure::{Poisson as P, PoissonLike as L};
    vec![
        Fixture { name: "sl2", description: "sl(2) Lie-Poisson structure on R^3", structure: P(sl2()) },
        Fixture { name: "so3", description: "so(3) Lie-Poisson structure on R^3", structure: P(so3()) },
        Fixture { name: "heisenberg", description: "Heisenberg algebra {x1,x2}=x3", structure: P(heisenberg()) },
        Fixture { name: "solvable", description: "solvable Lie-Poisson structure {x1,x3}=x3, {x2,x3}=-x3", structure: P(solvable()) },
        Fixture { name: "sl2-plus-line", description: "sl(2) + R on R^4", structure: P(sl2_plus_line()) },
        Fixture { name: "quadratic-case1", description: "quadratic structure, case 1", structure: P(quadratic_case1()) },
        Fixture { name: "quadratic-case2", description: "quadratic structure, case 2", structure: P(quadratic_case2()) },
        Fixture { name: "quadratic-case3", description: "quadratic structure, case 3", structure: P(quadratic_case3()) },
        Fixture { name: "x3-squared", description: "{x1,x2}=x3^2 on R^3", structure: P(x3_squared()) },
        Fixture { name: "x3-cubed", description: "{x1,x2}=x3^3 on R^3", structure: P(x3_cubed()) },
        Fixture { name: "symplectic-plane", description: "symplectic plane {x1,x2}=1", structure: P(symplectic_plane()) },
        Fixture { name: "constant-r3", description: "{x1,x2}=1 on R^3", structure: P(constant_r3()) },
        Fixture { name: "pi-bar", description: "quadratic structure flattened from a Poisson-like 2-vector", structure: P(pi_bar()) },
        Fixture { name: "so4", description: "so(4) Lie-Poisson structure on R^6", structure: P(so4()) },
        Fixture { name: "sl3", description: "sl(3) Lie-Poisson structure on R^8", structure: P(sl3()) },
        Fixture { name: "so5", description: "so(5) Lie-Poisson structure on R^10", structure: P(so5()) },
        Fixture { name: "like-constant", description: "Poisson-like d1^d2 on R^3", structure: L(poisson_like_constant()) },
        Fixture { name: "like-linear", description: "Poisson-like (d1-d3)^(x1 d3 + x3 d3)", structure: L(poisson_like_linear()) },
        Fixture { name: "like-quadratic", description: "quadratic Poisson-like 2-vector flattening to pi-bar", structure: L(poisson_like_quadratic()) },
    ]
}

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<Structure> {
    all().into_iter().find(|f| f.name == name).map(|f| f.structure)
}
