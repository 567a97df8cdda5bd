//! Property checks shared by the test targets and the acceptance harness.
//! Each returns a description of the first violation found.

use std::sync::Arc;

use num::One;
use poisson_cohom::algebra::{int, RatPoly, Rational};
use poisson_cohom::casimir::{casimir_space, normal_form};
use poisson_cohom::complex::{homology_vs_cohomology_check, with_constants_split, GenLabel, GeneratorSet, GradedComplex, LieComplex, Mode};
use poisson_cohom::diagrams::{nabla, tower_decompose};
use poisson_cohom::engine::{build_complex, ComplexReport};
use poisson_cohom::fixtures;
use poisson_cohom::linalg::{columns_to_matrix, rank, rank_kernel, SparseMatrix};
use poisson_cohom::poisson::{phi_flatten, poisson_bracket, r_schouten, schouten, GradedMultiVector, Structure};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use super::{complexes, dense_rank, matrix, partitions, poisson, small_multivector, small_poly, spec, terms};

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `d∘d = 0` on every built complex. Building a differential fails if an
/// entry leaves the weight-`w` basis, so this also checks weight
/// preservation.
pub fn coboundary_squares_to_zero() -> Check {
    for (s, w) in complexes() {
        let cx = build_complex(&s, w).map_err(err)?;
        if let Some((lo, hi)) = cx.degree_range() {
            for m in lo..hi {
                ensure(cx.square_is_zero(m).map_err(err)?, || format!("{} w={w} m={m}: d∘d ≠ 0", s.tag()))?;
            }
        }
    }
    Ok(())
}

/// `∂∘∂ = 0` for the Chevalley–Eilenberg boundary.
pub fn boundary_squares_to_zero() -> Check {
    for pi in [fixtures::sl2(), fixtures::heisenberg(), fixtures::quadratic_case3()] {
        let s = spec(Mode::PolyBar, poisson(pi));
        for w in 1..=3 {
            let cx = LieComplex::new(&s, w).map_err(err)?;
            let Some((lo, hi)) = cx.degree_range() else { continue };
            for m in lo + 2..=hi {
                let a = cx.boundary(m).map_err(err)?;
                let b = cx.boundary(m - 1).map_err(err)?;
                if a.n_cols() > 0 && b.n_cols() > 0 && a.n_rows() > 0 {
                    ensure(b.mul(&a).map_err(err)?.is_zero(), || format!("{} w={w} m={m}: ∂∘∂ ≠ 0", s.tag()))?;
                }
            }
        }
    }
    Ok(())
}

/// `dim H^m = dim H_m` per weight.
pub fn homology_equals_cohomology() -> Check {
    for pi in [fixtures::sl2(), fixtures::heisenberg()] {
        for mode in [Mode::PolyBar, Mode::Hamiltonian] {
            let s = spec(mode, poisson(pi.clone()));
            for w in 0..=4 {
                let cx = LieComplex::new(&s, w).map_err(err)?;
                let (hom, coh) = homology_vs_cohomology_check(&cx).map_err(err)?;
                ensure(hom == coh, || format!("{} w={w}: homology {hom:?} vs cohomology {coh:?}", s.tag()))?;
            }
        }
    }
    Ok(())
}

/// Adding constants splits the cochain spaces into the ḡ part and a
/// shifted copy.
pub fn constants_split_additively() -> Check {
    for pi in [fixtures::sl2(), fixtures::heisenberg(), fixtures::solvable()] {
        let s = spec(Mode::PolyWithConstants, poisson(pi));
        for w in 0..=5 {
            let cx = LieComplex::new(&s, w).map_err(err)?;
            for m in 0..=8 {
                let (bar, shifted) = with_constants_split(&s, m, w).map_err(err)?;
                ensure(cx.dim(m) as u128 == bar + shifted, || format!("w={w} m={m}: {} ≠ {bar} + {shifted}", cx.dim(m)))?;
            }
        }
    }
    Ok(())
}

/// The Poisson-like differential followed by flattening equals flattening
/// followed by the Schouten differential of the flattened structure.
pub fn flattening_commutes_with_differentials() -> Check {
    let cases = [
        (fixtures::poisson_like_linear(), 0..=2),
        (fixtures::poisson_like_quadratic(), -3..=-1),
        (fixtures::poisson_like_constant(), 2..=4),
    ];
    for (like, weights) in cases {
        let flat = phi_flatten(&like.pi);
        let s = spec(Mode::PoissonLike, Structure::PoissonLike(like.clone()));
        for w in weights {
            let caps = s.caps().map_err(err)?;
            let Some(max_degree) = caps.max_degree_for_weight(w) else { continue };
            let gens = Arc::new(GeneratorSet::build(&s, max_degree).map_err(err)?);
            let cx = LieComplex::with_degrees(&s, gens, w, Some(1..=3));
            for m in 1..=3 {
                let Some(basis) = cx.basis(m) else { continue };
                for element in basis.elements().take(40) {
                    let mut fields = Vec::new();
                    for &g in element {
                        match cx.gens.label(g) {
                            GenLabel::Field(f) => fields.push(f.clone()),
                            other => return Err(format!("unexpected generator {other}")),
                        }
                    }
                    let u = GradedMultiVector::wedge_of(like.n, fields, Rational::one());
                    let lhs = phi_flatten(&r_schouten(&like.pi, &u));
                    let rhs = schouten(&flat, &phi_flatten(&u));
                    ensure(lhs == rhs, || format!("w={w} m={m}: Φ∘d ≠ d∘Φ"))?;
                }
            }
        }
    }
    Ok(())
}

/// `∇(A, k)` equals brute-force enumeration for `A ≤ 20`; tower
/// decomposition is an involution.
pub fn nabla_matches_brute_force() -> Check {
    for a in 0..=20 {
        let all = partitions(a, a);
        for k in 0..=a {
            let mut expected: Vec<Vec<u32>> = all.iter().filter(|p| p.len() as u32 == k).cloned().collect();
            expected.sort_unstable_by(|x, y| y.cmp(x));
            ensure(nabla(a, k) == expected, || format!("∇({a},{k}) differs from brute force"))?;
        }
        for p in &all {
            ensure(tower_decompose(&tower_decompose(p)) == *p, || format!("{p:?}: conjugation is not an involution"))?;
        }
    }
    Ok(())
}

/// `φ` is idempotent, `g − φ(g)` is a Casimir, Casimir combinations map to
/// zero and a nonzero `φ(g)` is never a Casimir.
pub fn normal_form_properties(cases: u32) -> Check {
    let strategy = (0usize..4, 1u32..=4, proptest::collection::vec(-3i64..=3, 1..4), (1u32..=4).prop_flat_map(|d| small_poly(3, d)));
    runner(cases)
        .run(&strategy, |(which, degree, seed, g)| {
            let pi = [fixtures::sl2(), fixtures::heisenberg(), fixtures::solvable(), fixtures::quadratic_case2()][which].clone();
            let gdeg = g.homogeneous_degree().unwrap_or(degree);
            let cas = casimir_space(&pi, gdeg);
            let phi = normal_form(&cas, &g).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(normal_form(&cas, &phi).unwrap(), phi.clone());
            let diff = g.sub(&phi).unwrap();
            for i in 1..=3 {
                prop_assert!(poisson_bracket(&pi, &RatPoly::var(3, i), &diff).is_zero());
            }
            let cas_d = casimir_space(&pi, degree);
            let mut c = RatPoly::zero(3);
            for (f, k) in cas_d.basis.iter().zip(seed.iter().cycle()) {
                c.add_scaled(f, &int(*k));
            }
            prop_assert!(normal_form(&cas_d, &c).unwrap().is_zero());
            if !phi.is_zero() {
                prop_assert!(!(1..=3).all(|i| poisson_bracket(&pi, &RatPoly::var(3, i), &phi).is_zero()));
            }
            Ok(())
        })
        .map_err(err)
}

/// Graded Jacobi identity of the Schouten bracket.
pub fn schouten_graded_jacobi(cases: u32) -> Check {
    runner(cases)
        .run(&(small_multivector(3), small_multivector(3), small_multivector(3)), |(p, q, r)| {
            let (pd, qd) = (p.degree() as i64, q.degree() as i64);
            let sign = if ((pd - 1) * (qd - 1)).rem_euclid(2) == 0 { int(1) } else { int(-1) };
            let lhs = terms(&[(&schouten(&p, &schouten(&q, &r)), int(1))]);
            let rhs = terms(&[(&schouten(&schouten(&p, &q), &r), int(1)), (&schouten(&q, &schouten(&p, &r)), sign)]);
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(err)
}

/// Graded antisymmetry of the Schouten bracket.
pub fn schouten_graded_antisymmetry(cases: u32) -> Check {
    runner(cases)
        .run(&(small_multivector(3), small_multivector(3)), |(p, q)| {
            let (pd, qd) = (p.degree() as i64, q.degree() as i64);
            let sign = if ((pd - 1) * (qd - 1)).rem_euclid(2) == 0 { int(-1) } else { int(1) };
            prop_assert_eq!(terms(&[(&schouten(&p, &q), int(1))]), terms(&[(&schouten(&q, &p), sign)]));
            Ok(())
        })
        .map_err(err)
}

/// Reports survive a text round trip.
pub fn report_text_round_trip(cases: u32) -> Check {
    let strategy = (
        "[a-z][a-z:=0-9-]{0,20}",
        -50i64..50,
        0u32..4,
        proptest::collection::vec(0u64..1000, 0..8),
        0.0f64..1e4,
    );
    runner(cases)
        .run(&strategy, |(mode, weight, first, dims, seconds)| {
            let ranks: Vec<(u32, u64, u64)> = dims.iter().enumerate().map(|(k, &d)| (first + k as u32, d, d / 3)).collect();
            let r = ComplexReport::from_ranks(&mode, weight, &ranks, seconds);
            prop_assert_eq!(ComplexReport::parse(&r.to_text()).unwrap(), r);
            Ok(())
        })
        .map_err(err)
}

/// Sparse rank and kernel agree with dense rational elimination on random
/// integer matrices.
pub fn rank_oracle(cases: u32) -> Check {
    runner(cases)
        .run(&matrix(), |rows| {
            let dense: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            let m = SparseMatrix::from_dense(&dense);
            let expected = dense_rank(&rows);
            prop_assert_eq!(rank(&m), expected);
            prop_assert_eq!(rank(&m.transpose()), expected);
            let r = rank_kernel(&m, true);
            prop_assert_eq!(r.rank, expected);
            prop_assert_eq!(r.kernel_dim, m.n_cols() - expected);
            let kernel = r.kernel_basis.unwrap();
            prop_assert_eq!(kernel.len(), r.kernel_dim);
            if !kernel.is_empty() {
                let k = columns_to_matrix(m.n_cols(), &kernel);
                prop_assert!(m.mul(&k).unwrap().is_zero());
                prop_assert_eq!(rank(&k), kernel.len());
            }
            Ok(())
        })
        .map_err(err)
}
