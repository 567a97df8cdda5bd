//! Poisson polynomial cohomology of multivector modules, the Poisson-like
//! complex, closed-form Betti predictions and the top-Betti probe.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use num::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{binomial, mono_basis, MultiIndex, Rational};
use crate::complex::{ComplexError, GeneratorSet, GradedComplex, LieComplex, Mode, ModeSpec};
use crate::diagrams::enumerate_signatures;
use crate::linalg::{rank, SparseMatrix};
use crate::poisson::{schouten, MultiVector, PoissonStructure, Structure};

/// Errors raised by the closed-form predictions and probes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultivectorError {
    #[error("the closed form needs w >= 0, got {0}")]
    NegativeWeight(i64),
    #[error("the probe needs a nontrivial structure")]
    TrivialStructure,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// The weight-`w` Poisson-like complex (`d = [π, ·]_ℝ` on ℝ-wedges of graded
/// vector fields).  The `m = 0` scalars are not part of the reported complex.
pub fn poisson_like_complex(structure: &Structure, w: i64) -> Result<LieComplex, ComplexError> {
    LieComplex::new(&ModeSpec::new(Mode::PoissonLike, structure.clone())?, w)
}

/// `C^m_w = S_{w+(h−1)m} ⊗ Λ^m ℝⁿ` with `d = [π, ·]` (Schouten bracket).
#[derive(Debug, Clone)]
pub struct PolyModuleComplex {
    pub pi: PoissonStructure,
    pub w: i64,
    bivector: MultiVector,
    /// Basis of each `C^m` as (axis tuple, monomial), `m = 0..=n`.
    bases: Vec<Vec<(Vec<usize>, MultiIndex)>>,
    index: Vec<HashMap<(Vec<usize>, MultiIndex), u32>>,
}

impl PolyModuleComplex {
    pub fn new(pi: &PoissonStructure, w: i64) -> Self {
        let (n, h) = (pi.n(), pi.h() as i64);
        let mut bases = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let p = w + (h - 1) * m as i64;
            let mut basis = Vec::new();
            if p >= 0 {
                for axes in (1..=n).combinations(m) {
                    for a in mono_basis(n, p as u32) {
                        basis.push((axes.clone(), a));
                    }
                }
            }
            bases.push(basis);
        }
        let index = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(k, e)| (e.clone(), k as u32)).collect())
            .collect();
        PolyModuleComplex { pi: pi.clone(), w, bivector: pi.to_multivector(), bases, index }
    }

    /// Polynomial degree of the coefficients in `C^m`.
    pub fn polynomial_degree(&self, m: u32) -> i64 {
        self.w + (self.pi.h() as i64 - 1) * m as i64
    }

    pub fn basis(&self, m: u32) -> &[(Vec<usize>, MultiIndex)] {
        self.bases.get(m as usize).map(|b| &b[..]).unwrap_or(&[])
    }

    /// `[π, u]` for one basis element.
    pub fn apply(&self, axes: &[usize], mono: &MultiIndex) -> MultiVector {
        let u = MultiVector::term(self.pi.n(), mono.clone(), axes.to_vec(), Rational::one());
        schouten(&self.bivector, &u)
    }
}

impl GradedComplex for PolyModuleComplex {
    fn degree_range(&self) -> Option<(u32, u32)> {
        let lo = self.bases.iter().position(|b| !b.is_empty())?;
        let hi = self.bases.iter().rposition(|b| !b.is_empty())?;
        Some((lo as u32, hi as u32))
    }

    fn dim(&self, m: u32) -> usize {
        self.basis(m).len()
    }

    fn differential(&self, m: u32) -> Result<SparseMatrix, ComplexError> {
        let src = self.basis(m);
        let n_rows = self.basis(m + 1).len();
        let empty = HashMap::new();
        let dst_index = self.index.get(m as usize + 1).unwrap_or(&empty);
        let columns: Result<Vec<_>, ComplexError> = src
            .par_iter()
            .map(|(axes, mono)| {
                let image = self.apply(axes, mono);
                image
                    .terms()
                    .map(|(ax, a, c)| {
                        let row = dst_index.get(&(ax.clone(), a.clone())).ok_or_else(|| {
                            ComplexError::WeightNotPreserved { m, w: self.w, source_elem: format!("{mono}") }
                        })?;
                        Ok((*row, c.clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(SparseMatrix::from_columns(n_rows, columns?))
    }
}

/// Predicted Betti numbers `(b0, b1, b2, b3)` of the Heisenberg
/// polynomial-module complex: `(1, w+3, 2w+3, w+1)` for `w > 0` and
/// `(1, 2, 2, 1)` at `w = 0`.
pub fn heisenberg_closed_form(w: i64) -> Result<[u64; 4], MultivectorError> {
    match w {
        w if w < 0 => Err(MultivectorError::NegativeWeight(w)),
        0 => Ok([1, 2, 2, 1]),
        w => {
            let w = w as u64;
            Ok([1, w + 3, 2 * w + 3, w + 1])
        }
    }
}

/// Predicted kernel dimensions of the Heisenberg polynomial-module
/// differentials for `w > 0`: `(1, C(3+w,2), (w+3)(w+1), C(w+2,2))`.
pub fn heisenberg_kernel_closed_form(w: i64) -> Result<[u64; 4], MultivectorError> {
    if w <= 0 {
        return Err(MultivectorError::NegativeWeight(w));
    }
    let w = w as u64;
    Ok([1, binomial(3 + w, 2), (w + 3) * (w + 1), binomial(w + 2, 2)])
}

/// Predicted Betti numbers of the `sp(ℝ²)` polynomial-module complex:
/// `(1, 0, 0, 1)` for even `w`, zero for odd `w`.
pub fn sp2_closed_form(w: i64) -> Result<[u64; 4], MultivectorError> {
    if w < 0 {
        return Err(MultivectorError::NegativeWeight(w));
    }
    Ok(if w % 2 == 0 { [1, 0, 0, 1] } else { [0; 4] })
}

/// Outcome of [`top_betti_probe`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopBettiReport {
    pub ell: u32,
    /// `w₀ = Σ_{j ≤ ℓ} weight(j)·cap(j)`.
    pub w0: i64,
    /// `m₀ = Σ_{j ≤ ℓ} cap(j)`.
    pub m0: u32,
    /// `dim C^{m₀}_{w₀}`.
    pub top_dim: usize,
    /// Whether `C^m_{w₀} = 0` for every `m > m₀`.
    pub above_empty: bool,
    /// `rank(d: C^{m₀−1}_{w₀} → C^{m₀}_{w₀})`.
    pub rank_below: usize,
}

impl TopBettiReport {
    /// `H^{m₀}_{w₀} = dim − rank`.
    pub fn top_betti(&self) -> i64 {
        self.top_dim as i64 - self.rank_below as i64
    }

    /// The predicted picture: a one-dimensional top space, nothing above it,
    /// and vanishing top cohomology.
    pub fn holds(&self) -> bool {
        self.top_dim == 1 && self.above_empty && self.top_betti() == 0
    }
}

/// Examines the top cochain space of the weight `w₀` obtained by wedging
/// every generator of degree `≤ ℓ`.
pub fn top_betti_probe(spec: &ModeSpec, ell: u32) -> Result<TopBettiReport, MultivectorError> {
    if spec.structure.as_poisson().map(PoissonStructure::is_trivial).unwrap_or(false) {
        return Err(MultivectorError::TrivialStructure);
    }
    let caps = spec.caps()?;
    let mut w0 = 0i64;
    let mut m0 = 0u32;
    for j in caps.start_degree..=ell {
        w0 += caps.weight(j) * caps.cap(j) as i64;
        m0 += caps.cap(j) as u32;
    }
    let max_degree = caps.max_degree_for_weight(w0).unwrap_or(ell).max(ell);
    let above_empty = enumerate_signatures(&caps.truncated(max_degree), w0, None).iter().all(|s| s.m() <= m0);
    let gens = Arc::new(GeneratorSet::build(spec, max_degree)?);
    let cx = LieComplex::with_degrees(spec, gens, w0, Some(m0.saturating_sub(1)..=m0));
    let rank_below = if m0 == 0 { 0 } else { rank(&cx.coboundary(m0 - 1)?) };
    Ok(TopBettiReport { ell, w0, m0, top_dim: cx.dim(m0), above_empty, rank_below })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RatPoly;

    fn heisenberg() -> PoissonStructure {
        PoissonStructure::new(3, 1, [(1, 2, RatPoly::parse(3, "x3").unwrap())]).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(heisenberg_closed_form(1).unwrap(), [1, 4, 5, 2]);
        assert_eq!(heisenberg_closed_form(0).unwrap(), [1, 2, 2, 1]);
        assert_eq!(heisenberg_closed_form(2).unwrap(), [1, 5, 7, 3]);
        assert!(heisenberg_closed_form(-1).is_err());
        assert_eq!(sp2_closed_form(3).unwrap(), [0, 0, 0, 0]);
        assert_eq!(sp2_closed_form(4).unwrap(), [1, 0, 0, 1]);
    }

    #[test]
    fn heisenberg_module_degree_zero_kernel() {
        let cx = PolyModuleComplex::new(&heisenberg(), 3);
        let d0 = cx.differential(0).unwrap();
        assert_eq!(cx.dim(0) - rank(&d0), 1);
    }

    #[test]
    fn squares_vanish() {
        let cx = PolyModuleComplex::new(&heisenberg(), 2);
        for m in 0..3 {
            assert!(cx.square_is_zero(m).unwrap());
        }
    }
}
