//! Cochain bases and exact differential matrices.
//!
//! Every wedge-type mode — the polynomial Lie algebra ḡ, the algebra with
//! constants, the Hamiltonian quotient, the π-annihilator subcomplex and the
//! Poisson-like complex — is described by a [`GeneratorSet`]: graded
//! generators (numbered canonically by degree, then by their order inside the
//! degree) together with the image `d̄(z_C) = Σ c · z_a∧z_b` of each
//! generator.  The coboundary of a wedge `z_{c1}∧…∧z_{cm}` is the derivation
//! `Σ_i (−1)^{i−1} z_{c1}∧…∧d̄(z_{ci})∧…∧z_{cm}`, re-sorted with signs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use num::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{int, mono_basis, MultiIndex, RatPoly, Rational};
use crate::casimir::{casimir_space, normal_form, CasimirBasis};
use crate::diagrams::{enumerate_signatures, signature_dim, CapProfile, DiagramSignature};
use crate::linalg::{columns_to_matrix, rank_kernel, SparseMatrix, SparseVec};
use crate::poisson::{r_schouten, Field, GradedMultiVector, PoissonStructure, Structure};

/// Errors raised while building complexes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("mode {mode} needs {needs}")]
    ModeMismatch { mode: Mode, needs: &'static str },
    #[error("unknown mode `{0}`")]
    UnknownMode(String),
    #[error("weight not preserved: degree-{m} cochain {source_elem} maps outside the weight-{w} basis")]
    WeightNotPreserved { m: u32, w: i64, source_elem: String },
    #[error("{0}")]
    Invalid(String),
}

/// The cohomology theories supported by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Polynomials of degree ≥ start (ḡ), constants quotiented out.
    PolyBar,
    /// All polynomials, including constants.
    PolyWithConstants,
    /// Polynomials modulo Casimirs (Hamiltonian vector fields).
    Hamiltonian,
    /// The subcomplex of ḡ-cochains σ with π∧σ = 0 (h = 0 only).
    PiAnnihilator,
    /// ℝ-wedges of graded vector fields with d = [π, ·]_ℝ.
    PoissonLike,
    /// Polynomials ⊗ constant multivectors with d = [π, ·].
    PolyModule,
}

impl Mode {
    pub const ALL: [Mode; 6] = [
        Mode::PolyBar,
        Mode::PolyWithConstants,
        Mode::Hamiltonian,
        Mode::PiAnnihilator,
        Mode::PoissonLike,
        Mode::PolyModule,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mode::PolyBar => "poly-bar",
            Mode::PolyWithConstants => "poly-with-constants",
            Mode::Hamiltonian => "hamiltonian",
            Mode::PiAnnihilator => "pi-annihilator",
            Mode::PoissonLike => "poisson-like",
            Mode::PolyModule => "poly-module",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = ComplexError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| ComplexError::UnknownMode(s.to_string()))
    }
}

/// A structure together with the cohomology theory to compute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeSpec {
    pub mode: Mode,
    pub structure: Structure,
    /// Lowest polynomial degree of ḡ generators (poly-bar mode only).
    pub start_degree: u32,
}

impl ModeSpec {
    /// Validates that the mode applies to the structure.  Poly-bar starts at
    /// degree 1 for `h > 0` and at degree 2 for `h = 0` (where `S_2` is the
    /// lowest subalgebra); see [`ModeSpec::with_start_degree`].
    pub fn new(mode: Mode, structure: Structure) -> Result<Self, ComplexError> {
        let h = structure.h();
        match (mode, &structure) {
            (Mode::PoissonLike, Structure::PoissonLike(_)) => {}
            (Mode::PoissonLike, _) => return Err(ComplexError::ModeMismatch { mode, needs: "a poisson-like structure" }),
            (_, Structure::PoissonLike(_)) => {
                return Err(ComplexError::ModeMismatch { mode, needs: "an ordinary Poisson structure" })
            }
            (Mode::PiAnnihilator, _) if h != 0 => {
                return Err(ComplexError::ModeMismatch { mode, needs: "a 0-homogeneous structure" })
            }
            _ => {}
        }
        let start_degree = match mode {
            Mode::PolyBar => {
                if h == 0 {
                    2
                } else {
                    1
                }
            }
            Mode::PiAnnihilator => 1,
            Mode::PolyWithConstants | Mode::Hamiltonian | Mode::PoissonLike | Mode::PolyModule => 0,
        };
        Ok(ModeSpec { mode, structure, start_degree })
    }

    /// Overrides the lowest generator degree of the poly-bar mode.  Degree 1
    /// with `h = 0` means polynomials modulo the central constants: brackets
    /// landing in degree 0 are dropped.
    pub fn with_start_degree(mut self, start: u32) -> Result<Self, ComplexError> {
        if self.mode != Mode::PolyBar {
            return Err(ComplexError::Invalid("a start degree only applies to poly-bar".into()));
        }
        self.start_degree = start;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.structure.n()
    }

    pub fn h(&self) -> u32 {
        self.structure.h()
    }

    /// Stable textual tag used in reports and cache keys.
    pub fn tag(&self) -> String {
        match self.mode {
            Mode::PolyBar => format!("poly-bar:start={}", self.start_degree),
            m => m.name().to_string(),
        }
    }

    fn poisson(&self) -> &PoissonStructure {
        self.structure.as_poisson().expect("validated in ModeSpec::new")
    }

    /// Caps of the generator pieces for wedge-type modes.
    pub fn caps(&self) -> Result<CapProfile, ComplexError> {
        let (n, h) = (self.n(), self.h());
        Ok(match self.mode {
            Mode::PolyBar | Mode::PolyWithConstants | Mode::PiAnnihilator => CapProfile::polynomial(n, h, self.start_degree),
            Mode::Hamiltonian => CapProfile::hamiltonian(self.poisson()),
            Mode::PoissonLike => CapProfile::multivector(n, h),
            Mode::PolyModule => {
                return Err(ComplexError::Invalid("the poly-module complex has no generator caps".into()))
            }
        })
    }
}

/// What a generator stands for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GenLabel {
    /// The dual functional `z_A` of a monomial (in the Hamiltonian mode, of a
    /// φ-fixed monomial: the dual-basis functional ζ_A).
    Monomial(MultiIndex),
    /// A graded vector field `w^A ∂_i`.
    Field(Field),
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLabel::Monomial(a) => write!(f, "z[{a}]"),
            GenLabel::Field(x) => write!(f, "[{x}]"),
        }
    }
}

/// Graded generators with their degree-1 coboundaries.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub caps: CapProfile,
    pub max_degree: u32,
    /// First generator id of each degree `0..=max_degree+1`.
    offsets: Vec<u32>,
    labels: Vec<GenLabel>,
    index: HashMap<GenLabel, u32>,
    /// `d̄(z_c) = Σ coef · z_a ∧ z_b` with `a < b`, per generator.
    dbar: Vec<Vec<(u32, u32, Rational)>>,
}

/// Poisson bracket of two monomials,
/// `{w^A, w^B} = Σ_{i<j} p_ij (a_i b_j − a_j b_i) w^{A+B−E_i−E_j}`.
pub fn monomial_bracket(pi: &PoissonStructure, a: &MultiIndex, b: &MultiIndex) -> RatPoly {
    let n = pi.n();
    let mut out = RatPoly::zero(n);
    let ab = a.add(b);
    for (i, j, p) in pi.entries() {
        let c = a.exponent(i) as i64 * b.exponent(j) as i64 - a.exponent(j) as i64 * b.exponent(i) as i64;
        if c == 0 {
            continue;
        }
        let base = ab.lower(i).and_then(|x| x.lower(j)).expect("positive exponents when c != 0");
        let c = int(c);
        for (m, v) in p.terms() {
            out.add_term(base.add(m), v * &c);
        }
    }
    out
}

impl GeneratorSet {
    /// Builds all generators of degree `≤ max_degree` and their coboundaries.
    pub fn build(spec: &ModeSpec, max_degree: u32) -> Result<Self, ComplexError> {
        let caps = spec.caps()?;
        let n = spec.n();
        let mut labels: Vec<GenLabel> = Vec::new();
        let mut offsets = Vec::with_capacity(max_degree as usize + 2);
        let mut casimirs: Vec<Option<CasimirBasis>> = Vec::new();
        for j in 0..=max_degree {
            offsets.push(labels.len() as u32);
            if j < caps.start_degree {
                casimirs.push(None);
                continue;
            }
            match spec.mode {
                Mode::PoissonLike => {
                    for a in mono_basis(n, j) {
                        for i in 1..=n {
                            labels.push(GenLabel::Field(Field::new(a.clone(), i)));
                        }
                    }
                    casimirs.push(None);
                }
                Mode::Hamiltonian => {
                    let cb = casimir_space(spec.poisson(), j);
                    let lms = cb.leading_monomials();
                    labels.extend(mono_basis(n, j).into_iter().filter(|a| !lms.contains(a)).map(GenLabel::Monomial));
                    casimirs.push(Some(cb));
                }
                _ => {
                    labels.extend(mono_basis(n, j).into_iter().map(GenLabel::Monomial));
                    casimirs.push(None);
                }
            }
            debug_assert_eq!(labels.len() as u64 - *offsets.last().unwrap() as u64, caps.cap(j));
        }
        offsets.push(labels.len() as u32);
        let index: HashMap<GenLabel, u32> = labels.iter().enumerate().map(|(k, l)| (l.clone(), k as u32)).collect();
        let mut set = GeneratorSet { caps, max_degree, offsets, labels, index, dbar: Vec::new() };
        set.dbar = match spec.mode {
            Mode::PoissonLike => set.poisson_like_dbar(&spec.structure.as_poisson_like().expect("validated").pi),
            _ => set.lie_dbar(spec.poisson(), &casimirs),
        };
        Ok(set)
    }

    fn lie_dbar(&self, pi: &PoissonStructure, casimirs: &[Option<CasimirBasis>]) -> Vec<Vec<(u32, u32, Rational)>> {
        let h = pi.h() as i64;
        let start = self.caps.start_degree;
        let maxd = self.max_degree;
        // All unordered degree pairs whose bracket lands inside the range.
        let mut degree_pairs = Vec::new();
        for da in start..=maxd {
            for db in da..=maxd {
                let dc = da as i64 + db as i64 + h - 2;
                if dc >= start as i64 && dc <= maxd as i64 {
                    degree_pairs.push((da, db, dc as u32));
                }
            }
        }
        let contributions: Vec<Vec<(u32, u32, u32, Rational)>> = degree_pairs
            .par_iter()
            .map(|&(da, db, dc)| {
                let mut out = Vec::new();
                for a in self.range(da) {
                    let lo = if da == db { a + 1 } else { self.offsets[db as usize] };
                    for b in lo..self.offsets[db as usize + 1] {
                        let (GenLabel::Monomial(ma), GenLabel::Monomial(mb)) = (&self.labels[a as usize], &self.labels[b as usize])
                        else {
                            unreachable!("polynomial generators")
                        };
                        let mut br = monomial_bracket(pi, ma, mb);
                        if br.is_zero() {
                            continue;
                        }
                        if let Some(Some(cb)) = casimirs.get(dc as usize) {
                            br = normal_form(cb, &br).expect("homogeneous bracket");
                        }
                        for (mc, coef) in br.terms() {
                            let c = self.index[&GenLabel::Monomial(mc.clone())];
                            out.push((c, a, b, -coef.clone()));
                        }
                    }
                }
                out
            })
            .collect();
        let mut dbar: Vec<Vec<(u32, u32, Rational)>> = vec![Vec::new(); self.labels.len()];
        for (c, a, b, coef) in contributions.into_iter().flatten() {
            dbar[c as usize].push((a, b, coef));
        }
        for v in &mut dbar {
            v.sort_by_key(|(a, b, _)| (*a, *b));
        }
        dbar
    }

    fn poisson_like_dbar(&self, pi: &GradedMultiVector) -> Vec<Vec<(u32, u32, Rational)>> {
        let n = pi.n();
        self.labels
            .par_iter()
            .map(|label| {
                let GenLabel::Field(v) = label else { unreachable!("field generators") };
                let image = r_schouten(pi, &GradedMultiVector::wedge_of(n, vec![v.clone()], Rational::one()));
                let mut out = Vec::new();
                for (fields, c) in image.terms() {
                    // Factors beyond the degree bound never survive in a
                    // cochain of the prepared weight.
                    let (Some(&a), Some(&b)) = (
                        self.index.get(&GenLabel::Field(fields[0].clone())),
                        self.index.get(&GenLabel::Field(fields[1].clone())),
                    ) else {
                        continue;
                    };
                    debug_assert!(a < b, "canonical field order matches generator order");
                    out.push((a, b, c.clone()));
                }
                out
            })
            .collect()
    }

    /// Generator ids of degree `j`.
    pub fn range(&self, j: u32) -> std::ops::Range<u32> {
        if j > self.max_degree {
            return 0..0;
        }
        self.offsets[j as usize]..self.offsets[j as usize + 1]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, gid: u32) -> &GenLabel {
        &self.labels[gid as usize]
    }

    pub fn gid(&self, label: &GenLabel) -> Option<u32> {
        self.index.get(label).copied()
    }

    /// Degree of a generator.
    pub fn degree_of(&self, gid: u32) -> u32 {
        (self.offsets.partition_point(|&o| o <= gid) - 1) as u32
    }

    /// `d̄` of one generator as `(coef, a, b)` terms meaning `coef · z_a∧z_b`.
    pub fn coboundary_on_generator(&self, gid: u32) -> &[(u32, u32, Rational)] {
        &self.dbar[gid as usize]
    }

    /// Human-readable form of a wedge of generators.
    pub fn describe(&self, element: &[u32]) -> String {
        if element.is_empty() {
            return "1".into();
        }
        element.iter().map(|&g| self.labels[g as usize].to_string()).join("^")
    }
}

/// Ordered basis of one cochain space: sorted generator-id lists.
#[derive(Debug, Clone)]
pub struct CochainBasis {
    pub m: u32,
    pub w: i64,
    pub signatures: Vec<DiagramSignature>,
    elements: Vec<Box<[u32]>>,
    index: HashMap<Box<[u32]>, u32>,
}

impl CochainBasis {
    /// Enumerates the basis from the signatures of `(m, w)`: signatures in
    /// lexicographic order, then generator combinations lexicographically.
    pub fn build(gens: &GeneratorSet, m: u32, w: i64) -> Self {
        let signatures = enumerate_signatures(&gens.caps, w, Some(m));
        let mut elements: Vec<Box<[u32]>> = Vec::new();
        for sig in &signatures {
            let per_degree: Vec<Vec<Vec<u32>>> = sig
                .multiplicities()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| gens.range(j as u32).combinations(k as usize).collect())
                .collect();
            if per_degree.is_empty() {
                elements.push(Box::new([]));
                continue;
            }
            for combo in per_degree.into_iter().multi_cartesian_product() {
                elements.push(combo.concat().into_boxed_slice());
            }
        }
        let index = elements.iter().enumerate().map(|(k, e)| (e.clone(), k as u32)).collect();
        CochainBasis { m, w, signatures, elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, k: usize) -> &[u32] {
        &self.elements[k]
    }

    pub fn elements(&self) -> impl Iterator<Item = &[u32]> {
        self.elements.iter().map(|e| &e[..])
    }

    pub fn position(&self, element: &[u32]) -> Option<u32> {
        self.index.get(element).copied()
    }
}

/// Inserts two distinct new generators `a < b` into the sorted `rest`, after
/// its first `slot` entries, and returns the sorted result with the sign of
/// the sorting permutation; `None` if either already occurs.
fn insert_pair(rest: &[u32], slot: usize, a: u32, b: u32) -> Option<(Vec<u32>, bool)> {
    let la = rest.partition_point(|&x| x < a);
    if rest.get(la) == Some(&a) {
        return None;
    }
    let lb = rest.partition_point(|&x| x < b);
    if rest.get(lb) == Some(&b) {
        return None;
    }
    let negative = (la.abs_diff(slot) + lb.abs_diff(slot)) % 2 == 1;
    let mut out = Vec::with_capacity(rest.len() + 2);
    out.extend_from_slice(&rest[..la]);
    out.push(a);
    out.extend_from_slice(&rest[la..lb]);
    out.push(b);
    out.extend_from_slice(&rest[lb..]);
    Some((out, negative))
}

/// A weight-`w` wedge-type cochain complex with all its bases built.
#[derive(Debug, Clone)]
pub struct LieComplex {
    pub spec_tag: String,
    pub w: i64,
    pub gens: Arc<GeneratorSet>,
    /// Built bases, keyed by `m`.
    bases: BTreeMap<u32, CochainBasis>,
    /// Largest `m` with a nonzero cochain space.
    m_top: Option<u32>,
    /// Lowest `m` reported (1 for the Poisson-like complex, else 0).
    pub m_min: u32,
}

impl LieComplex {
    /// Builds the generators and every nonzero cochain space of weight `w`.
    pub fn new(spec: &ModeSpec, w: i64) -> Result<Self, ComplexError> {
        if spec.mode == Mode::PolyModule {
            return Err(ComplexError::Invalid("use the poly-module complex".into()));
        }
        let caps = spec.caps()?;
        let max_degree = caps.max_degree_for_weight(w).unwrap_or(caps.start_degree);
        let gens = Arc::new(GeneratorSet::build(spec, max_degree)?);
        Ok(Self::with_generators(spec, gens, w))
    }

    /// Builds the bases of weight `w` over an existing generator set (whose
    /// degree range must cover the weight).
    pub fn with_generators(spec: &ModeSpec, gens: Arc<GeneratorSet>, w: i64) -> Self {
        Self::with_degrees(spec, gens, w, None)
    }

    /// Like [`LieComplex::with_generators`] but only materializes the bases
    /// of the cochain degrees in `only` (all degrees when `None`).
    pub fn with_degrees(
        spec: &ModeSpec,
        gens: Arc<GeneratorSet>,
        w: i64,
        only: Option<std::ops::RangeInclusive<u32>>,
    ) -> Self {
        let caps = gens.caps.truncated(gens.max_degree);
        let m_top = enumerate_signatures(&caps, w, None).iter().map(|s| s.m()).max();
        let m_min = if spec.mode == Mode::PoissonLike { 1 } else { 0 };
        let wanted: Vec<u32> = match (m_top, only) {
            (None, _) => Vec::new(),
            (Some(top), None) => (m_min..=top).collect(),
            (Some(top), Some(r)) => r.filter(|m| *m >= m_min && *m <= top).collect(),
        };
        let bases = wanted.par_iter().map(|&m| (m, CochainBasis::build(&gens, m, w))).collect();
        LieComplex { spec_tag: spec.tag(), w, gens, bases, m_top, m_min }
    }

    pub fn basis(&self, m: u32) -> Option<&CochainBasis> {
        self.bases.get(&m)
    }

    pub fn dim(&self, m: u32) -> usize {
        self.basis(m).map(CochainBasis::len).unwrap_or(0)
    }

    /// Largest `m` with a nonzero cochain space.
    pub fn m_max(&self) -> Option<u32> {
        self.m_top
    }

    /// Matrix of `d: C^m → C^{m+1}` (columns = source basis).
    pub fn coboundary(&self, m: u32) -> Result<SparseMatrix, ComplexError> {
        let empty = CochainBasis::empty(m, self.w);
        let src = self.basis(m).unwrap_or(&empty);
        let empty_dst = CochainBasis::empty(m + 1, self.w);
        let dst = self.basis(m + 1).unwrap_or(&empty_dst);
        let columns: Result<Vec<SparseVec>, ComplexError> = src
            .elements
            .par_iter()
            .map(|sigma| {
                let mut col: Vec<(u32, Rational)> = Vec::new();
                let mut rest: Vec<u32> = Vec::with_capacity(sigma.len());
                for i in 0..sigma.len() {
                    rest.clear();
                    rest.extend(sigma.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &g)| g));
                    for (a, b, coef) in self.gens.coboundary_on_generator(sigma[i]) {
                        let Some((target, negative)) = insert_pair(&rest, i, *a, *b) else { continue };
                        let row = dst.position(&target).ok_or_else(|| ComplexError::WeightNotPreserved {
                            m,
                            w: self.w,
                            source_elem: self.gens.describe(sigma),
                        })?;
                        let flip = negative ^ (i % 2 == 1);
                        col.push((row, if flip { -coef.clone() } else { coef.clone() }));
                    }
                }
                Ok(col)
            })
            .collect();
        Ok(SparseMatrix::from_columns(dst.len(), columns?))
    }

    /// Matrix of the Chevalley–Eilenberg boundary `∂: C_m → C_{m−1}` on the
    /// dual chain spaces, `∂(u_1∧…∧u_m) = Σ_{i<j} (−1)^{i+j} [u_i,u_j]∧…`.
    pub fn boundary(&self, m: u32) -> Result<SparseMatrix, ComplexError> {
        // Structure constants [g_a, g_b] = Σ c g_C, read off from d̄.
        let mut brackets: HashMap<(u32, u32), Vec<(u32, Rational)>> = HashMap::new();
        for c in 0..self.gens.len() as u32 {
            for (a, b, coef) in self.gens.coboundary_on_generator(c) {
                brackets.entry((*a, *b)).or_default().push((c, -coef.clone()));
            }
        }
        let empty = CochainBasis::empty(m, self.w);
        let src = self.basis(m).unwrap_or(&empty);
        let dst_m = m.checked_sub(1);
        let empty_dst = CochainBasis::empty(m.saturating_sub(1), self.w);
        let dst = dst_m.and_then(|k| self.basis(k)).unwrap_or(&empty_dst);
        let mut columns = Vec::with_capacity(src.len());
        for sigma in src.elements() {
            let mut col = Vec::new();
            for i in 0..sigma.len() {
                for j in i + 1..sigma.len() {
                    let Some(terms) = brackets.get(&(sigma[i], sigma[j])) else { continue };
                    let rest: Vec<u32> =
                        sigma.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, &g)| g).collect();
                    for (c, coef) in terms {
                        let pos = rest.partition_point(|x| x < c);
                        if rest.get(pos) == Some(c) {
                            continue;
                        }
                        let mut target = rest.clone();
                        target.insert(pos, *c);
                        let row = dst.position(&target).ok_or_else(|| ComplexError::WeightNotPreserved {
                            m,
                            w: self.w,
                            source_elem: self.gens.describe(sigma),
                        })?;
                        let negative = (i + j + pos) % 2 == 1;
                        col.push((row, if negative { -coef.clone() } else { coef.clone() }));
                    }
                }
            }
            columns.push(col);
        }
        Ok(SparseMatrix::from_columns(dst.len(), columns))
    }
}

impl CochainBasis {
    fn empty(m: u32, w: i64) -> Self {
        CochainBasis { m, w, signatures: Vec::new(), elements: Vec::new(), index: HashMap::new() }
    }
}

/// The π-annihilator subcomplex `A^m_w = {σ ∈ C^m_w : π∧σ = 0}` of ḡ
/// (generators from degree 1) for a 0-homogeneous structure, where `π` is
/// the 2-cochain `d̄δ = −Σ_{i<j} c_ij z_{ε_i}∧z_{ε_j}`.
#[derive(Debug, Clone)]
pub struct AnnihilatorComplex {
    /// The ambient ḡ complex of weight `w`.
    pub ambient: LieComplex,
    /// The ḡ complex of weight `w − 2` receiving `π∧`.
    pub shifted: LieComplex,
    /// `π` as `(coef, a, b)` with degree-1 generators `a < b`.
    pub pi_cochain: Vec<(u32, u32, Rational)>,
    /// Kernel basis of `π∧` on each `C^m_w` (index = m).
    kernels: Vec<Vec<SparseVec>>,
}

impl AnnihilatorComplex {
    pub fn new(spec: &ModeSpec, w: i64) -> Result<Self, ComplexError> {
        if spec.mode != Mode::PiAnnihilator {
            return Err(ComplexError::Invalid("not a pi-annihilator spec".into()));
        }
        let pi = spec.poisson();
        let caps = spec.caps()?;
        let max_degree = caps.max_degree_for_weight(w).unwrap_or(1).max(1);
        let gens = Arc::new(GeneratorSet::build(spec, max_degree)?);
        let ambient = LieComplex::with_generators(spec, gens.clone(), w);
        let shifted = LieComplex::with_generators(spec, gens.clone(), w - 2);
        let n = pi.n();
        let mut pi_cochain = Vec::new();
        for (i, j, p) in pi.entries() {
            let c = p.coeff(&MultiIndex::zero(n));
            let a = gens.gid(&GenLabel::Monomial(MultiIndex::unit(n, i))).expect("degree-1 generator");
            let b = gens.gid(&GenLabel::Monomial(MultiIndex::unit(n, j))).expect("degree-1 generator");
            pi_cochain.push((a, b, -c));
        }
        let mut out = AnnihilatorComplex { ambient, shifted, pi_cochain, kernels: Vec::new() };
        let mm = out.ambient.m_max().map(|x| x + 1).unwrap_or(0);
        let kernels: Vec<Vec<SparseVec>> = (0..mm)
            .into_par_iter()
            .map(|m| {
                let wedge = out.pi_wedge(m);
                rank_kernel(&wedge, true).kernel_basis.expect("requested")
            })
            .collect();
        out.kernels = kernels;
        Ok(out)
    }

    /// Matrix of `σ ↦ π∧σ` from `C^m_w` to `C^{m+2}_{w−2}`.
    pub fn pi_wedge(&self, m: u32) -> SparseMatrix {
        let empty = CochainBasis::empty(m, self.ambient.w);
        let src = self.ambient.basis(m).unwrap_or(&empty);
        let empty_dst = CochainBasis::empty(m + 2, self.ambient.w - 2);
        let dst = self.shifted.basis(m + 2).unwrap_or(&empty_dst);
        let columns = src
            .elements()
            .map(|sigma| {
                let mut col = Vec::new();
                for (a, b, c) in &self.pi_cochain {
                    if let Some((target, negative)) = insert_pair(sigma, 0, *a, *b) {
                        let row = dst.position(&target).expect("π∧ shifts the weight by −2");
                        col.push((row, if negative { -c.clone() } else { c.clone() }));
                    }
                }
                col
            })
            .collect();
        SparseMatrix::from_columns(dst.len(), columns)
    }

    pub fn dim(&self, m: u32) -> usize {
        self.kernels.get(m as usize).map(Vec::len).unwrap_or(0)
    }

    /// Kernel basis of `π∧` on `C^m_w` as a matrix (columns = basis of `A^m_w`).
    pub fn inclusion(&self, m: u32) -> SparseMatrix {
        let rows = self.ambient.dim(m);
        columns_to_matrix(rows, self.kernels.get(m as usize).map(|v| &v[..]).unwrap_or(&[]))
    }

    /// The restricted coboundary `d·K_m: A^m_w → C^{m+1}_w` (its rank equals
    /// the rank of `d` on the subcomplex).
    pub fn restricted_coboundary(&self, m: u32) -> Result<SparseMatrix, ComplexError> {
        let d = self.ambient.coboundary(m)?;
        Ok(d.mul(&self.inclusion(m)).expect("compatible shapes"))
    }

    /// True when `π∧dσ = 0` for every basis element of `A^m_w`.
    pub fn is_subcomplex_at(&self, m: u32) -> Result<bool, ComplexError> {
        let dk = self.restricted_coboundary(m)?;
        Ok(self.pi_wedge(m + 1).mul(&dk).expect("compatible shapes").is_zero())
    }
}

/// A finite cochain complex `C^{lo} → … → C^{hi}` with exact matrices.
pub trait GradedComplex: Sync {
    /// `(lo, hi)` bounding every nonzero cochain space, or `None` if all vanish.
    fn degree_range(&self) -> Option<(u32, u32)>;
    fn dim(&self, m: u32) -> usize;
    /// A matrix whose rank is the rank of `d: C^m → C^{m+1}` and whose
    /// columns correspond to a basis of `C^m`.
    fn differential(&self, m: u32) -> Result<SparseMatrix, ComplexError>;
    /// Checks `d_{m+1} ∘ d_m = 0` exactly.
    fn square_is_zero(&self, m: u32) -> Result<bool, ComplexError> {
        let a = self.differential(m)?;
        let b = self.differential(m + 1)?;
        if a.n_cols() == 0 || b.n_cols() == 0 {
            return Ok(true);
        }
        Ok(b.mul(&a).map_err(|e| ComplexError::Invalid(e.to_string()))?.is_zero())
    }
}

impl GradedComplex for LieComplex {
    fn degree_range(&self) -> Option<(u32, u32)> {
        let lo = self.bases.iter().find(|(_, b)| !b.is_empty()).map(|(m, _)| *m)?;
        let hi = self.bases.iter().rev().find(|(_, b)| !b.is_empty()).map(|(m, _)| *m)?;
        Some((lo, hi))
    }

    fn dim(&self, m: u32) -> usize {
        LieComplex::dim(self, m)
    }

    fn differential(&self, m: u32) -> Result<SparseMatrix, ComplexError> {
        self.coboundary(m)
    }
}

impl GradedComplex for AnnihilatorComplex {
    /// The degree range of the ambient complex, so that vanishing subspaces
    /// inside it are reported as zero rows.
    fn degree_range(&self) -> Option<(u32, u32)> {
        self.kernels.iter().any(|k| !k.is_empty()).then_some(())?;
        self.ambient.degree_range()
    }

    fn dim(&self, m: u32) -> usize {
        AnnihilatorComplex::dim(self, m)
    }

    fn differential(&self, m: u32) -> Result<SparseMatrix, ComplexError> {
        self.restricted_coboundary(m)
    }

    /// The ambient complex squares to zero and the subcomplex is preserved.
    fn square_is_zero(&self, m: u32) -> Result<bool, ComplexError> {
        Ok(self.ambient.square_is_zero(m)? && self.is_subcomplex_at(m)?)
    }
}

/// Betti numbers from the `∂`-complex and from the `d`-complex, per degree;
/// they agree when the spaces are finite dimensional.
pub fn homology_vs_cohomology_check(cx: &LieComplex) -> Result<(Vec<i64>, Vec<i64>), ComplexError> {
    let Some((lo, hi)) = cx.degree_range() else { return Ok((Vec::new(), Vec::new())) };
    let mut d_ranks = BTreeMap::new();
    let mut b_ranks = BTreeMap::new();
    for m in lo..=hi {
        d_ranks.insert(m, crate::linalg::rank(&cx.coboundary(m)?) as i64);
        b_ranks.insert(m, crate::linalg::rank(&cx.boundary(m)?) as i64);
    }
    let mut coh = Vec::new();
    let mut hom = Vec::new();
    for m in lo..=hi {
        let dim = cx.dim(m) as i64;
        let prev_d = if m == 0 { 0 } else { d_ranks.get(&(m - 1)).copied().unwrap_or(0) };
        coh.push(dim - d_ranks[&m] - prev_d);
        let next_b = b_ranks.get(&(m + 1)).copied().unwrap_or(0);
        hom.push(dim - b_ranks[&m] - next_b);
    }
    Ok((hom, coh))
}

/// Dimensions `(dim C^m_w(ḡ), dim C^{m−1}_{w+2−h}(ḡ))` of the two summands of
/// the complex with constants, for `h > 0`.
pub fn with_constants_split(spec: &ModeSpec, m: u32, w: i64) -> Result<(u128, u128), ComplexError> {
    let h = spec.h() as i64;
    if h == 0 {
        return Err(ComplexError::Invalid("the constants split needs h > 0".into()));
    }
    let bar = CapProfile::polynomial(spec.n(), spec.h(), 1);
    let dim = |m: u32, w: i64| -> u128 {
        enumerate_signatures(&bar, w, Some(m)).iter().map(|s| signature_dim(s, &bar).expect("within caps")).sum()
    };
    let shifted = if m == 0 { 0 } else { dim(m - 1, w + 2 - h) };
    Ok((dim(m, w), shifted))
}

/// Per-degree dimensions of the cochain spaces, via the signatures.
pub fn dims_from_signatures(caps: &CapProfile, w: i64) -> BTreeMap<u32, u128> {
    let mut out = BTreeMap::new();
    for s in enumerate_signatures(caps, w, None) {
        *out.entry(s.m()).or_insert(0) += signature_dim(&s, caps).expect("within caps");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;

    fn sl2() -> Structure {
        crate::poisson::parse_structure("n 3\nh 1\np 1 2 = x3\np 1 3 = -2*x1\np 2 3 = 2*x2\n", true).unwrap()
    }

    #[test]
    fn sl2_dbar_values() {
        let spec = ModeSpec::new(Mode::PolyBar, sl2()).unwrap();
        let gens = GeneratorSet::build(&spec, 2).unwrap();
        let g = |v: Vec<u32>| gens.gid(&GenLabel::Monomial(MultiIndex::new(v))).unwrap();
        // d̄ z_(1,0,0) = −2 z_(0,0,1)∧z_(1,0,0) = 2 z_(1,0,0)∧z_(0,0,1).
        assert_eq!(gens.coboundary_on_generator(g(vec![1, 0, 0])), &[(g(vec![1, 0, 0]), g(vec![0, 0, 1]), int(2))]);
        // d̄ z_(0,0,1) = z_(0,1,0)∧z_(1,0,0) = −z_(1,0,0)∧z_(0,1,0).
        assert_eq!(gens.coboundary_on_generator(g(vec![0, 0, 1])), &[(g(vec![1, 0, 0]), g(vec![0, 1, 0]), int(-1))]);
    }

    #[test]
    fn sl2_weight_one_ranks() {
        let spec = ModeSpec::new(Mode::PolyBar, sl2()).unwrap();
        let cx = LieComplex::new(&spec, 1).unwrap();
        let dims: Vec<usize> = (1..=4).map(|m| cx.dim(m)).collect();
        assert_eq!(dims, vec![6, 18, 18, 6]);
        let ranks: Vec<usize> = (1..=4).map(|m| rank(&cx.coboundary(m).unwrap())).collect();
        assert_eq!(ranks, vec![5, 13, 5, 0]);
    }

    #[test]
    fn insert_pair_signs() {
        // Sequences 2,1,3,5 and 1,3,2,5 have one inversion; 2,5,1,3 has three.
        assert_eq!(insert_pair(&[2, 5], 1, 1, 3), Some((vec![1, 2, 3, 5], true)));
        assert_eq!(insert_pair(&[2, 5], 0, 1, 3), Some((vec![1, 2, 3, 5], true)));
        assert_eq!(insert_pair(&[2, 5], 2, 1, 3), Some((vec![1, 2, 3, 5], true)));
        assert_eq!(insert_pair(&[2, 5], 0, 1, 6), Some((vec![1, 2, 5, 6], false)));
        assert_eq!(insert_pair(&[2, 5], 0, 2, 3), None);
    }
}
