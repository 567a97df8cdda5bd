//! Poisson structures, Poisson brackets, Schouten brackets of polynomial
//! multivector fields, and the ℝ-linear ("Poisson-like") refinement.
//!
//! A [`PoissonStructure`] is the antisymmetric table `p_ij = {x_i, x_j}` of
//! h-homogeneous polynomials.  [`MultiVector`] is an ordinary polynomial
//! multivector field; [`GradedMultiVector`] is an ℝ-linear combination of
//! wedges of monomial vector fields `w^A ∂_i` whose polynomial factors are
//! *not* merged across wedge slots.  [`phi_flatten`] merges them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use crate::algebra::{int, AlgebraError, MonomialOrder, MultiIndex, RatPoly, Rational};

/// Errors raised while loading or validating structures.
#[derive(Debug, Error)]
pub enum StructureError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Polynomial { line: usize, source: AlgebraError },
    #[error("entry p {i} {j} is not homogeneous of degree {h}: {poly}")]
    NotHomogeneous { i: usize, j: usize, h: u32, poly: String },
    #[error("Jacobi identity fails for (i,j,k) = ({i},{j},{k}); residual {residual}")]
    Jacobi { i: usize, j: usize, k: usize, residual: String },
    #[error("the Poisson-like 2-vector has a nonzero self-bracket")]
    NotPoissonLike,
    #[error("wedge term of total degree {found} in a structure declared {h}-homogeneous")]
    WedgeDegree { found: u32, h: u32 },
    #[error("missing `{0}` declaration")]
    Missing(&'static str),
}

/// An h-homogeneous Poisson structure on ℝⁿ given by `p_ij = {x_i, x_j}`.
#[derive(Clone, PartialEq, Eq)]
pub struct PoissonStructure {
    n: usize,
    h: u32,
    /// Nonzero entries `p_ij` with `i < j` (1-based).
    p: BTreeMap<(usize, usize), RatPoly>,
}

/// Outcome of [`jacobi_check`]: either success or one violating triple with
/// its nonzero residual polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub violation: Option<(usize, usize, usize, RatPoly)>,
}

impl JacobiReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

impl PoissonStructure {
    /// Builds a structure from `(i, j, p_ij)` entries (any order of `i, j`;
    /// `p_ji = −p_ij` is applied).  Homogeneity is checked; the Jacobi
    /// identity is not (see [`jacobi_check`]).
    pub fn new(
        n: usize,
        h: u32,
        entries: impl IntoIterator<Item = (usize, usize, RatPoly)>,
    ) -> Result<Self, StructureError> {
        let mut p: BTreeMap<(usize, usize), RatPoly> = BTreeMap::new();
        for (i, j, f) in entries {
            if i == j || i == 0 || j == 0 || i > n || j > n {
                return Err(StructureError::Syntax { line: 0, msg: format!("invalid index pair ({i},{j})") });
            }
            if !f.is_homogeneous_of(h) {
                return Err(StructureError::NotHomogeneous { i, j, h, poly: f.to_string() });
            }
            let (key, f) = if i < j { ((i, j), f) } else { ((j, i), f.neg()) };
            let slot = p.entry(key).or_insert_with(|| RatPoly::zero(n));
            slot.add_scaled(&f, &Rational::one());
        }
        p.retain(|_, f| !f.is_zero());
        Ok(PoissonStructure { n, h, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// `p_ij` for any 1-based pair, honouring antisymmetry.
    pub fn entry(&self, i: usize, j: usize) -> RatPoly {
        match i.cmp(&j) {
            Ordering::Equal => RatPoly::zero(self.n),
            Ordering::Less => self.p.get(&(i, j)).cloned().unwrap_or_else(|| RatPoly::zero(self.n)),
            Ordering::Greater => self.p.get(&(j, i)).map(RatPoly::neg).unwrap_or_else(|| RatPoly::zero(self.n)),
        }
    }

    /// Nonzero entries with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RatPoly)> {
        self.p.iter().map(|(&(i, j), f)| (i, j, f))
    }

    pub fn is_trivial(&self) -> bool {
        self.p.is_empty()
    }

    /// The 2-vector `Σ_{i<j} p_ij ∂_i∧∂_j`.
    pub fn to_multivector(&self) -> MultiVector {
        let mut mv = MultiVector::zero(self.n, 2);
        for (i, j, f) in self.entries() {
            for (a, c) in f.terms() {
                mv.add_term(a.clone(), vec![i, j], c.clone());
            }
        }
        mv
    }

    /// Canonical text form in the structure-file syntax.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\nh {}\n", self.n, self.h);
        for (i, j, f) in self.entries() {
            s.push_str(&format!("p {i} {j} = {f}\n"));
        }
        s
    }
}

impl fmt::Debug for PoissonStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PoissonStructure(n={}, h={}", self.n, self.h)?;
        for (i, j, p) in self.entries() {
            write!(f, ", p{i}{j}={p}")?;
        }
        write!(f, ")")
    }
}

/// Poisson bracket `{f, g} = Σ_{i<j} p_ij (∂_i f ∂_j g − ∂_j f ∂_i g)`.
pub fn poisson_bracket(pi: &PoissonStructure, f: &RatPoly, g: &RatPoly) -> RatPoly {
    let n = pi.n;
    let df: Vec<RatPoly> = (1..=n).map(|i| f.partial(i).expect("axis in range")).collect();
    let dg: Vec<RatPoly> = (1..=n).map(|i| g.partial(i).expect("axis in range")).collect();
    let mut out = RatPoly::zero(n);
    for (i, j, p) in pi.entries() {
        let a = df[i - 1].mul(&dg[j - 1]).expect("same n");
        let b = df[j - 1].mul(&dg[i - 1]).expect("same n");
        let diff = a.sub(&b).expect("same n");
        if !diff.is_zero() {
            out.add_scaled(&p.mul(&diff).expect("same n"), &Rational::one());
        }
    }
    out
}

/// Checks the Jacobi identity through the cyclic sums
/// `Σ_λ (p_kλ ∂_λ p_ij + p_iλ ∂_λ p_jk + p_jλ ∂_λ p_ki) = 0` for all `i<j<k`.
pub fn jacobi_check(pi: &PoissonStructure) -> JacobiReport {
    let n = pi.n;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let mut r = RatPoly::zero(n);
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let pab = pi.entry(a, b);
                    if pab.is_zero() {
                        continue;
                    }
                    for l in 1..=n {
                        let pcl = pi.entry(c, l);
                        if pcl.is_zero() {
                            continue;
                        }
                        let d = pab.partial(l).expect("axis");
                        r.add_scaled(&pcl.mul(&d).expect("same n"), &Rational::one());
                    }
                }
                if !r.is_zero() {
                    return JacobiReport { violation: Some((i, j, k, r)) };
                }
            }
        }
    }
    JacobiReport { violation: None }
}

/// The 1-homogeneous 2-vector on ℝ³
/// `(c1x1+c2x2+c3x3)∂1∧∂2 + (c4x1+c5x2+c6x3)∂2∧∂3 + (c7x1+c8x2+c9x3)∂3∧∂1`.
pub fn linear_candidate(c: &[Rational; 9]) -> PoissonStructure {
    let lin = |k: usize| {
        RatPoly::from_terms(3, (0..3).map(|v| (MultiIndex::unit(3, v + 1), c[k + v].clone())))
    };
    PoissonStructure::new(3, 1, [(1, 2, lin(0)), (2, 3, lin(3)), (3, 1, lin(6))])
        .expect("linear entries are 1-homogeneous")
}

/// Evaluates the three quadratic Poisson conditions on the coefficients of
/// [`linear_candidate`].
pub fn verify_linear_candidate(c: &[Rational; 9]) -> bool {
    let k = |i: usize| &c[i - 1];
    let e1 = k(1) * k(5) - k(2) * k(4) + k(4) * k(9) - k(6) * k(7);
    let e2 = k(1) * k(8) - k(2) * k(7) + k(5) * k(9) - k(6) * k(8);
    let e3 = k(1) * k(9) - k(2) * k(6) + k(3) * k(5) - k(3) * k(7);
    e1.is_zero() && e2.is_zero() && e3.is_zero()
}

/// Polynomial multivector field `Σ c · w^A ∂_{i1}∧…∧∂_{im}` with strictly
/// increasing axis tuples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiVector {
    n: usize,
    m: usize,
    terms: BTreeMap<(Vec<usize>, MultiIndex), Rational>,
}

/// Sorts a list of distinct small keys, returning the permutation sign, or
/// `None` when two keys coincide.
pub fn sort_with_sign<T: Ord>(v: &mut [T]) -> Option<i32> {
    let mut sign = 1;
    // Insertion sort: the inputs are short and usually nearly sorted.
    for k in 1..v.len() {
        let mut p = k;
        while p > 0 {
            match v[p - 1].cmp(&v[p]) {
                Ordering::Greater => {
                    v.swap(p - 1, p);
                    sign = -sign;
                    p -= 1;
                }
                Ordering::Equal => return None,
                Ordering::Less => break,
            }
        }
    }
    Some(sign)
}

impl MultiVector {
    pub fn zero(n: usize, m: usize) -> Self {
        MultiVector { n, m, terms: BTreeMap::new() }
    }

    /// A polynomial seen as a 0-vector.
    pub fn function(f: &RatPoly) -> Self {
        let mut mv = MultiVector::zero(f.n(), 0);
        for (a, c) in f.terms() {
            mv.add_term(a.clone(), Vec::new(), c.clone());
        }
        mv
    }

    /// `c · w^A ∂_{axes}` (axes in any order, 1-based).
    pub fn term(n: usize, a: MultiIndex, axes: Vec<usize>, c: Rational) -> Self {
        let mut mv = MultiVector::zero(n, axes.len());
        mv.add_term(a, axes, c);
        mv
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &MultiIndex, &Rational)> {
        self.terms.iter().map(|((ax, a), c)| (ax, a, c))
    }

    /// Adds `c · w^A ∂_{axes}`; the axes are sorted with sign and repeated
    /// axes give zero.
    pub fn add_term(&mut self, a: MultiIndex, mut axes: Vec<usize>, c: Rational) {
        assert_eq!(axes.len(), self.m, "multivector degree mismatch");
        let Some(sign) = sort_with_sign(&mut axes) else { return };
        let c = if sign < 0 { -c } else { c };
        if c.is_zero() {
            return;
        }
        let key = (axes, a);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &MultiVector, c: &Rational) {
        assert_eq!(self.m, other.m);
        for ((ax, a), v) in &other.terms {
            self.add_term(a.clone(), ax.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiVector {
        let mut out = MultiVector::zero(self.n, self.m);
        out.add_scaled(self, c);
        out
    }

    /// The coefficient polynomial of `∂_{axes}` (axes sorted).
    pub fn coefficient(&self, axes: &[usize]) -> RatPoly {
        RatPoly::from_terms(
            self.n,
            self.terms.iter().filter(|((ax, _), _)| ax == axes).map(|((_, a), c)| (a.clone(), c.clone())),
        )
    }

    /// Wedge product.
    pub fn wedge(&self, other: &MultiVector) -> MultiVector {
        let mut out = MultiVector::zero(self.n, self.m + other.m);
        for ((ax, a), c) in &self.terms {
            for ((bx, b), d) in &other.terms {
                let mut axes = ax.clone();
                axes.extend_from_slice(bx);
                out.add_term(a.add(b), axes, c * d);
            }
        }
        out
    }
}

impl fmt::Debug for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut axes_seen: Vec<&Vec<usize>> = self.terms.keys().map(|(ax, _)| ax).collect();
        axes_seen.dedup();
        for (k, ax) in axes_seen.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let coef = self.coefficient(ax);
            let dx: Vec<String> = ax.iter().map(|i| format!("d{i}")).collect();
            if dx.is_empty() {
                write!(f, "({coef})")?;
            } else {
                write!(f, "({coef})*{}", dx.join("^"))?;
            }
        }
        Ok(())
    }
}

/// Right derivative of the odd monomial `ξ_axes` by `ξ_i`: removes `i`
/// after moving it to the end, i.e. with sign `(−1)^{m−1−k}` for position `k`.
fn right_derivative(axes: &[usize], i: usize) -> Option<(Vec<usize>, i32)> {
    let k = axes.iter().position(|&x| x == i)?;
    let sign = if (axes.len() - 1 - k).is_multiple_of(2) { 1 } else { -1 };
    let mut rest = axes.to_vec();
    rest.remove(k);
    Some((rest, sign))
}

/// Schouten bracket of polynomial multivector fields, computed through odd
/// coordinates `ξ_i = ∂_i`:
/// `[P,Q] = Σ_i (P ∂⃖/∂ξ_i)(∂Q/∂x_i) − (−1)^{(p−1)(q−1)} (Q ∂⃖/∂ξ_i)(∂P/∂x_i)`.
/// It agrees with the decomposable formula
/// `Σ (−1)^{i+j} [X_i, Y_j] ∧ X̂ ∧ Ŷ`.
pub fn schouten(p: &MultiVector, q: &MultiVector) -> MultiVector {
    assert_eq!(p.n, q.n, "dimension mismatch");
    let (pd, qd) = (p.m, q.m);
    if pd + qd == 0 {
        return MultiVector::zero(p.n, 0);
    }
    let mut out = MultiVector::zero(p.n, pd + qd - 1);
    half_schouten(p, q, &Rational::one(), &mut out);
    let sign = if ((pd as i64 - 1) * (qd as i64 - 1)).rem_euclid(2) == 0 { -Rational::one() } else { Rational::one() };
    half_schouten(q, p, &sign, &mut out);
    out
}

/// `out += c · Σ_i (P ∂⃖/∂ξ_i)(∂Q/∂x_i)`.
fn half_schouten(p: &MultiVector, q: &MultiVector, c: &Rational, out: &mut MultiVector) {
    for ((pax, pa), pc) in &p.terms {
        for &i in pax {
            let (rest, s) = right_derivative(pax, i).expect("axis present");
            for ((qax, qa), qc) in &q.terms {
                let e = qa.exponent(i);
                if e == 0 {
                    continue;
                }
                let mono = pa.add(&qa.lower(i).expect("positive exponent"));
                let mut axes = rest.clone();
                axes.extend_from_slice(qax);
                let coef = pc * qc * int(e as i64) * int(s as i64) * c;
                out.add_term(mono, axes, coef);
            }
        }
    }
}

/// A monomial vector field `w^A ∂_i`, ordered canonically by
/// (degree, grevlex-descending position of `A`, axis).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field {
    pub mono: MultiIndex,
    pub axis: usize,
}

impl Field {
    pub fn new(mono: MultiIndex, axis: usize) -> Self {
        Field { mono, axis }
    }

    pub fn degree(&self) -> u32 {
        self.mono.degree()
    }
}

impl Ord for Field {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mono
            .degree()
            .cmp(&other.mono.degree())
            .then_with(|| MonomialOrder::Grevlex.cmp(&other.mono, &self.mono))
            .then_with(|| self.axis.cmp(&other.axis))
    }
}

impl PartialOrd for Field {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.degree() == 0 {
            write!(f, "d{}", self.axis)
        } else {
            write!(f, "{}*d{}", self.mono, self.axis)
        }
    }
}

/// Jacobi–Lie bracket of two monomial vector fields,
/// `[w^A∂_i, w^B∂_j] = w^A ∂_i(w^B) ∂_j − w^B ∂_j(w^A) ∂_i`.
pub fn field_bracket(u: &Field, v: &Field) -> Vec<(Field, Rational)> {
    let mut out = Vec::with_capacity(2);
    let b = v.mono.exponent(u.axis);
    if b > 0 {
        let mono = u.mono.add(&v.mono.lower(u.axis).expect("positive"));
        out.push((Field::new(mono, v.axis), int(b as i64)));
    }
    let a = u.mono.exponent(v.axis);
    if a > 0 {
        let mono = v.mono.add(&u.mono.lower(v.axis).expect("positive"));
        let f = Field::new(mono, u.axis);
        if let Some(pos) = out.iter().position(|(g, _)| *g == f) {
            out[pos].1 -= int(a as i64);
            if out[pos].1.is_zero() {
                out.remove(pos);
            }
        } else {
            out.push((f, int(-(a as i64))));
        }
    }
    out
}

/// ℝ-linear combination of wedges of monomial vector fields whose
/// polynomial factors are kept in their slots.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedMultiVector {
    n: usize,
    m: usize,
    terms: BTreeMap<Vec<Field>, Rational>,
}

impl GradedMultiVector {
    pub fn zero(n: usize, m: usize) -> Self {
        GradedMultiVector { n, m, terms: BTreeMap::new() }
    }

    /// A single wedge `c · f1∧…∧fm`.
    pub fn wedge_of(n: usize, fields: Vec<Field>, c: Rational) -> Self {
        let mut g = GradedMultiVector::zero(n, fields.len());
        g.add_term(fields, c);
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Field>, &Rational)> {
        self.terms.iter()
    }

    /// Adds `c · f1∧…∧fm`, sorting the factors canonically with the
    /// permutation sign; repeated factors give zero.
    pub fn add_term(&mut self, mut fields: Vec<Field>, c: Rational) {
        assert_eq!(fields.len(), self.m, "wedge degree mismatch");
        let Some(sign) = sort_with_sign(&mut fields) else { return };
        let c = if sign < 0 { -c } else { c };
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(fields.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&fields);
        }
    }

    pub fn add_scaled(&mut self, other: &GradedMultiVector, c: &Rational) {
        assert_eq!(self.m, other.m);
        for (f, v) in &other.terms {
            self.add_term(f.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> GradedMultiVector {
        let mut out = GradedMultiVector::zero(self.n, self.m);
        out.add_scaled(self, c);
        out
    }

    /// Total polynomial degree of every term, when all terms agree.
    pub fn polynomial_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|fs| fs.iter().map(Field::degree).sum::<u32>());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

impl fmt::Debug for GradedMultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedMultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (fields, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let names: Vec<String> = fields.iter().map(|x| format!("({x})")).collect();
            write!(f, "({c})*{}", names.join("^"))?;
        }
        Ok(())
    }
}

/// ℝ-linear Schouten bracket on unmerged wedges:
/// `[u1∧…∧up, v1∧…∧vq] = Σ_{i,j} (−1)^{i+j} [u_i, v_j] ∧ û ∧ v̂`.
/// Degree-0 arguments are scalars and bracket to zero.
pub fn r_schouten(p: &GradedMultiVector, q: &GradedMultiVector) -> GradedMultiVector {
    assert_eq!(p.n, q.n, "dimension mismatch");
    if p.m == 0 || q.m == 0 {
        return GradedMultiVector::zero(p.n, (p.m + q.m).saturating_sub(1));
    }
    let mut out = GradedMultiVector::zero(p.n, p.m + q.m - 1);
    for (u, cu) in &p.terms {
        for (v, cv) in &q.terms {
            let c = cu * cv;
            for i in 0..u.len() {
                for j in 0..v.len() {
                    let sign = if (i + j) % 2 == 0 { c.clone() } else { -c.clone() };
                    for (f, k) in field_bracket(&u[i], &v[j]) {
                        let mut fields = Vec::with_capacity(p.m + q.m - 1);
                        fields.push(f);
                        fields.extend(u.iter().enumerate().filter(|(a, _)| *a != i).map(|(_, x)| x.clone()));
                        fields.extend(v.iter().enumerate().filter(|(b, _)| *b != j).map(|(_, x)| x.clone()));
                        out.add_term(fields, &sign * k);
                    }
                }
            }
        }
    }
    out
}

/// The natural map Φ merging all polynomial factors into one coefficient.
pub fn phi_flatten(p: &GradedMultiVector) -> MultiVector {
    let mut out = MultiVector::zero(p.n, p.m);
    for (fields, c) in &p.terms {
        let mono = fields.iter().fold(MultiIndex::zero(p.n), |acc, f| acc.add(&f.mono));
        out.add_term(mono, fields.iter().map(|f| f.axis).collect(), c.clone());
    }
    out
}

/// A Poisson-like 2-vector together with its ambient dimension and
/// homogeneity.
#[derive(Clone, PartialEq, Eq)]
pub struct PoissonLike {
    pub n: usize,
    pub h: u32,
    pub pi: GradedMultiVector,
}

impl PoissonLike {
    /// Validates homogeneity and (unless `check` is false) the vanishing of
    /// the ℝ-Schouten self-bracket.
    pub fn new(n: usize, h: u32, pi: GradedMultiVector, check: bool) -> Result<Self, StructureError> {
        for (fields, _) in pi.terms() {
            let d: u32 = fields.iter().map(Field::degree).sum();
            if d != h {
                return Err(StructureError::WedgeDegree { found: d, h });
            }
        }
        if check && !r_schouten(&pi, &pi).is_zero() {
            return Err(StructureError::NotPoissonLike);
        }
        Ok(PoissonLike { n, h, pi })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("kind poisson-like\nn {}\nh {}\n", self.n, self.h);
        for (fields, c) in self.pi.terms() {
            let parts: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
            s.push_str(&format!("wedge {c} : {}\n", parts.join(" , ")));
        }
        s
    }
}

impl fmt::Debug for PoissonLike {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PoissonLike(n={}, h={}, {})", self.n, self.h, self.pi)
    }
}

/// A loaded structure file: either an ordinary Poisson structure or a
/// Poisson-like 2-vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Poisson(PoissonStructure),
    PoissonLike(PoissonLike),
}

impl Structure {
    pub fn n(&self) -> usize {
        match self {
            Structure::Poisson(p) => p.n(),
            Structure::PoissonLike(p) => p.n,
        }
    }

    pub fn h(&self) -> u32 {
        match self {
            Structure::Poisson(p) => p.h(),
            Structure::PoissonLike(p) => p.h,
        }
    }

    /// Canonical text form (what [`parse_structure`] reads back).
    pub fn to_text(&self) -> String {
        match self {
            Structure::Poisson(p) => p.to_text(),
            Structure::PoissonLike(p) => p.to_text(),
        }
    }

    pub fn as_poisson(&self) -> Option<&PoissonStructure> {
        match self {
            Structure::Poisson(p) => Some(p),
            Structure::PoissonLike(_) => None,
        }
    }

    pub fn as_poisson_like(&self) -> Option<&PoissonLike> {
        match self {
            Structure::PoissonLike(p) => Some(p),
            Structure::Poisson(_) => None,
        }
    }
}

/// Parses a structure file.
///
/// ```text
/// # sl(2)
/// n 3
/// h 1
/// p 1 2 = x3
/// p 1 3 = -2*x1
/// p 2 3 = 2*x2
/// ```
///
/// A Poisson-like file starts with `kind poisson-like` and lists terms as
/// `wedge <coefficient> : <field> , <field>` with fields such as `x2*x3*d1`
/// or `d3`.  With `check` the Jacobi identity (respectively the vanishing of
/// the ℝ-Schouten self-bracket) is enforced.
pub fn parse_structure(text: &str, check: bool) -> Result<Structure, StructureError> {
    let mut n: Option<usize> = None;
    let mut h: Option<u32> = None;
    let mut like = false;
    let mut entries: Vec<(usize, usize, RatPoly, usize)> = Vec::new();
    let mut wedges: Vec<(String, usize)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |msg: &str| StructureError::Syntax { line: line_no, msg: msg.to_string() };
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let value = rest.strip_prefix('=').map(str::trim).unwrap_or(rest);
        match head {
            "kind" => match value {
                "poisson" => like = false,
                "poisson-like" => like = true,
                _ => return Err(syntax("kind must be `poisson` or `poisson-like`")),
            },
            "n" => n = Some(value.parse().map_err(|_| syntax("n must be a positive integer"))?),
            "h" => h = Some(value.parse().map_err(|_| syntax("h must be a non-negative integer"))?),
            "p" => {
                let nn = n.ok_or(StructureError::Missing("n"))?;
                let (idx, poly) = rest.split_once('=').ok_or_else(|| syntax("expected `p i j = <polynomial>`"))?;
                let ij: Vec<usize> = idx
                    .split_whitespace()
                    .map(|s| s.parse().map_err(|_| syntax("bad index")))
                    .collect::<Result<_, _>>()?;
                if ij.len() != 2 {
                    return Err(syntax("expected two indices"));
                }
                let f = RatPoly::parse(nn, poly.trim())
                    .map_err(|source| StructureError::Polynomial { line: line_no, source })?;
                entries.push((ij[0], ij[1], f, line_no));
            }
            "wedge" => wedges.push((rest.to_string(), line_no)),
            _ => return Err(syntax("unknown declaration")),
        }
    }
    let n = n.ok_or(StructureError::Missing("n"))?;
    let h = h.ok_or(StructureError::Missing("h"))?;
    if n == 0 {
        return Err(StructureError::Syntax { line: 0, msg: "n must be positive".into() });
    }
    if like {
        if !entries.is_empty() {
            return Err(StructureError::Syntax { line: entries[0].3, msg: "`p` entries in a poisson-like file".into() });
        }
        let mut pi = GradedMultiVector::zero(n, 2);
        for (w, line) in wedges {
            let (c, fields) = parse_wedge(n, &w, line)?;
            pi.add_term(fields, c);
        }
        return Ok(Structure::PoissonLike(PoissonLike::new(n, h, pi, check)?));
    }
    if let Some((_, line)) = wedges.first() {
        return Err(StructureError::Syntax { line: *line, msg: "`wedge` line in a poisson file".into() });
    }
    for (i, j, _, line) in &entries {
        if *i == 0 || *j == 0 || *i > n || *j > n || i == j {
            return Err(StructureError::Syntax { line: *line, msg: format!("invalid index pair ({i},{j})") });
        }
    }
    let pi = PoissonStructure::new(n, h, entries.into_iter().map(|(i, j, f, _)| (i, j, f)))?;
    if check {
        if let Some((i, j, k, r)) = jacobi_check(&pi).violation {
            return Err(StructureError::Jacobi { i, j, k, residual: r.to_string() });
        }
    }
    Ok(Structure::Poisson(pi))
}

fn parse_wedge(n: usize, text: &str, line: usize) -> Result<(Rational, Vec<Field>), StructureError> {
    let syntax = |msg: String| StructureError::Syntax { line, msg };
    let (coef, fields) = text.split_once(':').ok_or_else(|| syntax("expected `wedge <c> : <field> , <field>`".into()))?;
    let c = RatPoly::parse(n, coef.trim()).map_err(|source| StructureError::Polynomial { line, source })?;
    let c = match c.homogeneous_degree() {
        Some(0) => c.coeff(&MultiIndex::zero(n)),
        None if c.is_zero() => Rational::zero(),
        _ => return Err(syntax("wedge coefficient must be a constant".into())),
    };
    let mut out = Vec::new();
    for part in fields.split(',') {
        let part = part.trim();
        let (mono_text, axis_text) = match part.rsplit_once('*') {
            Some((m, a)) => (m.trim(), a.trim()),
            None => ("1", part),
        };
        let axis: usize = axis_text
            .strip_prefix('d')
            .and_then(|s| s.parse().ok())
            .filter(|&a| a >= 1 && a <= n)
            .ok_or_else(|| syntax(format!("bad vector field `{part}`")))?;
        let mono = RatPoly::parse(n, mono_text).map_err(|source| StructureError::Polynomial { line, source })?;
        if mono.len() != 1 || !mono.terms().next().map(|(_, c)| c.is_one()).unwrap_or(false) {
            return Err(syntax(format!("`{mono_text}` is not a monomial")));
        }
        let a = mono.terms().next().expect("one term").0.clone();
        out.push(Field::new(a, axis));
    }
    if out.len() != 2 {
        return Err(syntax("a wedge term needs exactly two fields".into()));
    }
    Ok((c, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p3(s: &str) -> RatPoly {
        RatPoly::parse(3, s).unwrap()
    }

    fn sl2() -> PoissonStructure {
        PoissonStructure::new(3, 1, [(1, 2, p3("x3")), (1, 3, p3("-2*x1")), (2, 3, p3("2*x2"))]).unwrap()
    }

    #[test]
    fn brackets() {
        let pi = sl2();
        assert_eq!(poisson_bracket(&pi, &p3("x1"), &p3("x2*x3")), p3("x3^2 - 2*x1*x2"));
        let f = p3("x1^2 + 3*x2*x3");
        assert!(poisson_bracket(&pi, &f, &f).is_zero());
        let heis = PoissonStructure::new(3, 1, [(1, 2, p3("x3"))]).unwrap();
        assert_eq!(poisson_bracket(&heis, &p3("x1"), &p3("x2")), p3("x3"));
        assert!(poisson_bracket(&heis, &p3("x3"), &p3("x1*x2")).is_zero());
    }

    #[test]
    fn jacobi_examples() {
        let flat = PoissonStructure::new(3, 0, [(1, 2, p3("1"))]).unwrap();
        assert!(jacobi_check(&flat).holds());
        assert!(jacobi_check(&sl2()).holds());
        let bad = PoissonStructure::new(3, 1, [(1, 2, p3("x1")), (1, 3, p3("x2"))]).unwrap();
        let (_, _, _, residual) = jacobi_check(&bad).violation.unwrap();
        // ∂1 f · g − f · ∂1 g with f = x1, g = x2, up to orientation.
        assert_eq!(residual, p3("-x2"));
    }

    #[test]
    fn schouten_of_vector_field_and_function() {
        let x = MultiVector::term(3, MultiIndex::zero(3), vec![1], Rational::one());
        let f = MultiVector::function(&p3("x1^2"));
        assert_eq!(schouten(&x, &f), MultiVector::function(&p3("2*x1")));
    }

    #[test]
    fn phi_examples() {
        let x1 = MultiIndex::unit(3, 1);
        let u = GradedMultiVector::wedge_of(
            3,
            vec![Field::new(x1.clone(), 1), Field::new(x1.add(&x1), 1)],
            Rational::one(),
        );
        assert!(phi_flatten(&u).is_zero());
        let d = GradedMultiVector::wedge_of(
            3,
            vec![Field::new(MultiIndex::zero(3), 1), Field::new(MultiIndex::zero(3), 2)],
            Rational::one(),
        );
        assert_eq!(phi_flatten(&d), MultiVector::term(3, MultiIndex::zero(3), vec![1, 2], Rational::one()));
        assert!(r_schouten(&d, &d).is_zero());
    }

    #[test]
    fn linear_candidates() {
        let zero: [Rational; 9] = std::array::from_fn(|_| Rational::zero());
        assert!(verify_linear_candidate(&zero));
        // sl(2): p12 = x3, p23 = 2x2, p31 = 2x1.
        let mut c = zero.clone();
        c[2] = rat(1, 1);
        c[4] = rat(2, 1);
        c[6] = rat(2, 1);
        assert!(verify_linear_candidate(&c));
        assert!(jacobi_check(&linear_candidate(&c)).holds());
        let mut bad = zero;
        bad[0] = rat(1, 1);
        bad[4] = rat(1, 1);
        assert!(!verify_linear_candidate(&bad));
        assert!(!jacobi_check(&linear_candidate(&bad)).holds());
    }

    #[test]
    fn structure_file_round_trip() {
        let text = "# sl(2)\nn 3\nh 1\np 1 2 = x3\np 1 3 = -2*x1\np 2 3 = 2*x2\n";
        let s = parse_structure(text, true).unwrap();
        assert_eq!(s.as_poisson().unwrap(), &sl2());
        assert_eq!(parse_structure(&s.to_text(), true).unwrap(), s);
        assert!(matches!(
            parse_structure("n 3\nh 1\np 1 2 = x1\np 1 3 = x2\n", true),
            Err(StructureError::Jacobi { .. })
        ));
        assert!(parse_structure("n 3\nh 1\np 1 2 = x1\np 1 3 = x2\n", false).is_ok());
        assert!(matches!(
            parse_structure("n 3\nh 1\np 1 2 = x1^2\n", true),
            Err(StructureError::NotHomogeneous { .. })
        ));
        assert!(parse_structure("n 3\nh 1\np 1 2 = 2x1\n", true).is_err());
        assert!(parse_structure("h 1\n", true).is_err());
    }

    #[test]
    fn poisson_like_file_round_trip() {
        let text = "kind poisson-like\nn 3\nh 0\nwedge 1 : d1 , d2\n";
        let s = parse_structure(text, true).unwrap();
        assert_eq!(parse_structure(&s.to_text(), true).unwrap(), s);
        assert!(parse_structure("kind poisson-like\nn 3\nh 1\nwedge 1 : d1 , d2\n", true).is_err());
    }
}
