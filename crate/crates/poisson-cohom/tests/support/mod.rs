//! Oracles, strategies and fixture lists shared by the test targets.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num::{BigRational, Zero};
use poisson_cohom::algebra::{int, mono_basis, MultiIndex, RatPoly, Rational};
use poisson_cohom::complex::{Mode, ModeSpec};
use poisson_cohom::fixtures;
use poisson_cohom::poisson::{MultiVector, PoissonStructure, Structure};
use proptest::prelude::*;

pub mod checks;

pub fn spec(mode: Mode, s: Structure) -> ModeSpec {
    ModeSpec::new(mode, s).expect("valid mode")
}

pub fn poisson(p: PoissonStructure) -> Structure {
    Structure::Poisson(p)
}

/// (mode, structure, weight) triples covering every complex kind at sizes
/// that keep the suite fast.
pub fn complexes() -> Vec<(ModeSpec, i64)> {
    let mut out = Vec::new();
    let linear = [fixtures::sl2(), fixtures::heisenberg(), fixtures::solvable(), fixtures::so3()];
    for pi in &linear {
        for w in 0..=3 {
            out.push((spec(Mode::PolyBar, poisson(pi.clone())), w));
            out.push((spec(Mode::Hamiltonian, poisson(pi.clone())), w));
            out.push((spec(Mode::PolyWithConstants, poisson(pi.clone())), w));
            out.push((spec(Mode::PolyModule, poisson(pi.clone())), w));
        }
    }
    for pi in [fixtures::quadratic_case1(), fixtures::quadratic_case2(), fixtures::quadratic_case3(), fixtures::x3_squared()] {
        for w in 1..=4 {
            out.push((spec(Mode::PolyBar, poisson(pi.clone())), w));
            out.push((spec(Mode::Hamiltonian, poisson(pi.clone())), w));
        }
        for w in -2..=3 {
            out.push((spec(Mode::PolyModule, poisson(pi.clone())), w));
        }
    }
    for w in -2..=1 {
        let plane = poisson(fixtures::symplectic_plane());
        out.push((spec(Mode::PolyBar, plane.clone()).with_start_degree(1).unwrap(), w));
        out.push((spec(Mode::PiAnnihilator, plane), w.max(0)));
    }
    for w in 0..=2 {
        out.push((spec(Mode::PoissonLike, Structure::PoissonLike(fixtures::poisson_like_linear())), w));
        out.push((spec(Mode::PoissonLike, Structure::PoissonLike(fixtures::poisson_like_constant())), w + 1));
    }
    out.push((spec(Mode::PoissonLike, Structure::PoissonLike(fixtures::poisson_like_quadratic())), -3));
    out
}

/// All partitions of `a` with parts at most `max`, by brute-force recursion.
pub fn partitions(a: u32, max: u32) -> Vec<Vec<u32>> {
    if a == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=a.min(max)).rev() {
        for mut rest in partitions(a - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Textbook row reduction over ℚ.
pub fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let n_cols = a.first().map(Vec::len).unwrap_or(0);
    let mut r = 0;
    for c in 0..n_cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                let pivot = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot).skip(c) {
                    *x -= p * &f;
                }
            }
        }
        r += 1;
    }
    r
}

/// Random integer matrices up to 30×30 with entries in [−9, 9]; a sparsity
/// level zeroes most entries.
pub fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=30, 1usize..=30, 0u32..=3).prop_flat_map(|(rows, cols, sparsity)| {
        proptest::collection::vec(
            proptest::collection::vec((-9i64..=9, 0u32..4).prop_map(move |(x, z)| if z < sparsity { 0 } else { x }), cols),
            rows,
        )
    })
}

/// Linear combination of multivectors as a term map (zero terms dropped), so
/// that zero multivectors of different nominal degree compare equal.
pub fn terms(parts: &[(&MultiVector, Rational)]) -> BTreeMap<(Vec<usize>, MultiIndex), Rational> {
    let mut out: BTreeMap<(Vec<usize>, MultiIndex), Rational> = BTreeMap::new();
    for (mv, c) in parts {
        for (axes, a, x) in mv.terms() {
            *out.entry((axes.clone(), a.clone())).or_insert_with(Rational::zero) += x * c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn small_poly(n: usize, degree: u32) -> impl Strategy<Value = RatPoly> {
    let basis = mono_basis(n, degree);
    let len = basis.len();
    proptest::collection::vec((0..len, -4i64..=4), 1..5).prop_map(move |terms| {
        RatPoly::from_terms(n, terms.into_iter().map(|(k, c)| (basis[k].clone(), int(c))))
    })
}

pub fn small_multivector(n: usize) -> impl Strategy<Value = MultiVector> {
    (0usize..=2).prop_flat_map(move |m| {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..=2, n), proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), m), -3i64..=3),
            1..4,
        )
        .prop_map(move |terms| {
            let mut mv = MultiVector::zero(n, m);
            for (e, axes, c) in terms {
                mv.add_term(MultiIndex::new(e), axes, int(c));
            }
            mv
        })
    })
}

