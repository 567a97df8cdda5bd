//! Casimir polynomials degree by degree, the normal-form projector φ, and the
//! primal/dual bases of the Hamiltonian quotient `S_j / Casim_j`.
//!
//! Casimirs of degree `j` are the kernel of the linear map
//! `f ↦ ({x_1,f}, …, {x_n,f})` on degree-`j` polynomials.  The kernel basis is
//! echelonized against grevlex leading monomials, so dividing by it is a
//! single pass of the "remainder" formula
//! `φ(g) = g − Σ_i (coef of LM(f_i) in g / coef of LM(f_i) in f_i) f_i`.

use std::collections::HashMap;

use num::Zero;

use crate::algebra::{mono_basis, AlgebraError, MonomialOrder, MultiIndex, RatPoly, Rational};
use crate::linalg::{rank_kernel, rref, SparseMatrix, SparseVec};
use crate::poisson::{poisson_bracket, PoissonStructure};

/// Echelonized basis of the degree-`j` Casimir polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasimirBasis {
    pub n: usize,
    pub degree: u32,
    /// Primitive integer polynomials with strictly decreasing, pairwise
    /// distinct leading monomials; no element contains another's leading
    /// monomial.
    pub basis: Vec<RatPoly>,
}

impl CasimirBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Leading monomials `LM(f_1) > … > LM(f_k)`.
    pub fn leading_monomials(&self) -> Vec<MultiIndex> {
        self.basis.iter().map(|f| f.leading_monomial(MonomialOrder::Grevlex).expect("nonzero")).collect()
    }
}

/// Basis of `span{x_i, f}` images: the degree-`j` Casimir space of `π`.
pub fn casimir_space(pi: &PoissonStructure, j: u32) -> CasimirBasis {
    let n = pi.n();
    let monos = mono_basis(n, j);
    let target_degree = j as i64 + pi.h() as i64 - 1;
    if monos.is_empty() || target_degree < 0 {
        // Brackets land in negative degree, hence vanish: everything is Casimir.
        return echelonize(n, j, monos.iter().map(|a| RatPoly::monomial(a.clone(), Rational::from_integer(1.into()))).collect());
    }
    let targets = mono_basis(n, target_degree as u32);
    let tindex: HashMap<&MultiIndex, usize> = targets.iter().enumerate().map(|(k, a)| (a, k)).collect();
    let nt = targets.len();
    let mut columns: Vec<Vec<(u32, Rational)>> = Vec::with_capacity(monos.len());
    for a in &monos {
        let wa = RatPoly::monomial(a.clone(), Rational::from_integer(1.into()));
        let mut col = Vec::new();
        for i in 1..=n {
            let b = poisson_bracket(pi, &RatPoly::var(n, i), &wa);
            for (m, c) in b.terms() {
                col.push((((i - 1) * nt + tindex[m]) as u32, c.clone()));
            }
        }
        columns.push(col);
    }
    let mat = SparseMatrix::from_columns(n * nt, columns);
    let kernel = rank_kernel(&mat, true).kernel_basis.expect("requested");
    let polys = kernel
        .into_iter()
        .map(|v| RatPoly::from_terms(n, v.into_iter().map(|(k, c)| (monos[k as usize].clone(), c))))
        .collect();
    echelonize(n, j, polys)
}

/// Reduces a spanning set of degree-`j` polynomials to echelon form with
/// respect to grevlex leading monomials.
fn echelonize(n: usize, j: u32, polys: Vec<RatPoly>) -> CasimirBasis {
    let monos = mono_basis(n, j); // descending: column 0 is the largest monomial
    let index: HashMap<&MultiIndex, usize> = monos.iter().enumerate().map(|(k, a)| (a, k)).collect();
    let rows: Vec<SparseVec> = polys
        .iter()
        .map(|p| {
            let mut v: SparseVec = p.terms().map(|(a, c)| (index[a] as u32, c.clone())).collect();
            v.sort_unstable_by_key(|e| e.0);
            v
        })
        .collect();
    let (reduced, _) = rref(rows, monos.len());
    let basis = reduced
        .into_iter()
        .map(|row| RatPoly::from_terms(n, row.into_iter().map(|(k, c)| (monos[k as usize].clone(), c))).primitive())
        .collect();
    CasimirBasis { n, degree: j, basis }
}

/// Normal form `φ(g)` modulo the span of a Casimir basis.
pub fn normal_form(casimirs: &CasimirBasis, g: &RatPoly) -> Result<RatPoly, AlgebraError> {
    if g.n() != casimirs.n {
        return Err(AlgebraError::DimensionMismatch(g.n(), casimirs.n));
    }
    if !g.is_homogeneous_of(casimirs.degree) {
        return Err(AlgebraError::Parse {
            pos: 0,
            msg: format!("normal form in degree {} applied to {g}", casimirs.degree),
        });
    }
    let lms = casimirs.leading_monomials();
    let mut r = g.clone();
    // The basis is reduced, so one pass suffices; the loop re-passes until
    // no leading monomial survives.
    loop {
        let mut changed = false;
        for (f, lm) in casimirs.basis.iter().zip(&lms) {
            let c = r.coeff(lm);
            if !c.is_zero() {
                let lc = f.coeff(lm);
                r.add_scaled(f, &-(c / lc));
                changed = true;
            }
        }
        if !changed {
            return Ok(r);
        }
    }
}

/// Primal and dual bases of the quotient `S_j / Casim_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBasis {
    pub n: usize,
    pub degree: u32,
    /// Monomials fixed by φ (all degree-`j` monomials except the leading
    /// monomials of the Casimir basis), in grevlex-descending order.
    pub primal: Vec<MultiIndex>,
    /// Dual functionals `ζ_B = Σ_A (coef of w^B in φ(w^A)) z_A`, one per
    /// primal monomial, as sparse maps over all degree-`j` monomials.
    pub dual: Vec<Vec<(MultiIndex, Rational)>>,
}

/// Primal/dual bases of the degree-`j` Hamiltonian quotient.
pub fn quotient_basis(pi: &PoissonStructure, j: u32) -> QuotientBasis {
    quotient_basis_from(&casimir_space(pi, j))
}

/// Same as [`quotient_basis`] for an already computed Casimir basis.
pub fn quotient_basis_from(casimirs: &CasimirBasis) -> QuotientBasis {
    let (n, j) = (casimirs.n, casimirs.degree);
    let lms = casimirs.leading_monomials();
    let monos = mono_basis(n, j);
    let primal: Vec<MultiIndex> = monos.iter().filter(|a| !lms.contains(a)).cloned().collect();
    let images: Vec<RatPoly> = monos
        .iter()
        .map(|a| normal_form(casimirs, &RatPoly::monomial(a.clone(), Rational::from_integer(1.into()))).expect("degree"))
        .collect();
    let dual = primal
        .iter()
        .map(|b| {
            monos
                .iter()
                .zip(&images)
                .filter_map(|(a, img)| {
                    let c = img.coeff(b);
                    (!c.is_zero()).then(|| (a.clone(), c))
                })
                .collect()
        })
        .collect();
    QuotientBasis { n, degree: j, primal, dual }
}

/// Bracket in the quotient: `[f, g] = φ({f, g})` in degree `deg f + deg g + h − 2`.
pub fn quotient_bracket(pi: &PoissonStructure, f: &RatPoly, g: &RatPoly) -> RatPoly {
    let b = poisson_bracket(pi, f, g);
    match b.homogeneous_degree() {
        None => b,
        Some(d) => normal_form(&casimir_space(pi, d), &b).expect("homogeneous"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(n: usize, s: &str) -> RatPoly {
        RatPoly::parse(n, s).unwrap()
    }

    fn sl2() -> PoissonStructure {
        PoissonStructure::new(3, 1, [(1, 2, p(3, "x3")), (1, 3, p(3, "-2*x1")), (2, 3, p(3, "2*x2"))]).unwrap()
    }

    #[test]
    fn sl2_casimirs() {
        let pi = sl2();
        let c2 = casimir_space(&pi, 2);
        assert_eq!(c2.basis, vec![p(3, "4*x1*x2 + x3^2")]);
        for j in [1, 3, 5] {
            assert_eq!(casimir_space(&pi, j).dim(), 0);
        }
        assert_eq!(casimir_space(&pi, 0).dim(), 1);
    }

    #[test]
    fn normal_forms() {
        let c2 = casimir_space(&sl2(), 2);
        assert_eq!(normal_form(&c2, &p(3, "x1*x2")).unwrap(), p(3, "-1/4*x3^2"));
        assert_eq!(normal_form(&c2, &p(3, "x3^2")).unwrap(), p(3, "x3^2"));
        assert!(normal_form(&c2, &p(3, "4*x1*x2 + x3^2")).unwrap().is_zero());
        assert!(normal_form(&c2, &p(3, "x1")).is_err());
    }

    #[test]
    fn sl2_quotient_basis() {
        let q = quotient_basis(&sl2(), 2);
        assert_eq!(q.primal.len(), 5);
        let x3sq = MultiIndex::new(vec![0, 0, 2]);
        let k = q.primal.iter().position(|a| *a == x3sq).unwrap();
        assert_eq!(
            q.dual[k],
            vec![(MultiIndex::new(vec![1, 1, 0]), rat(-1, 4)), (x3sq, rat(1, 1))]
        );
    }

    #[test]
    fn quotient_brackets() {
        let pi = sl2();
        assert_eq!(quotient_bracket(&pi, &p(3, "x1"), &p(3, "x2*x3")), p(3, "3/2*x3^2"));
        let heis = PoissonStructure::new(3, 1, [(1, 2, p(3, "x3"))]).unwrap();
        assert!(quotient_bracket(&heis, &p(3, "x1"), &p(3, "x2")).is_zero());
    }

    #[test]
    fn sl2_plus_line_casimirs() {
        let pi = PoissonStructure::new(4, 1, [(1, 2, p(4, "x3")), (1, 3, p(4, "-2*x1")), (2, 3, p(4, "2*x2"))]).unwrap();
        let c1 = casimir_space(&pi, 1);
        assert_eq!(c1.leading_monomials(), vec![MultiIndex::new(vec![0, 0, 0, 1])]);
        let c4 = casimir_space(&pi, 4);
        assert_eq!(c4.dim(), 3);
        let q1 = quotient_basis_from(&c1);
        assert_eq!(q1.primal, mono_basis(4, 1)[..3].to_vec());
    }
}
