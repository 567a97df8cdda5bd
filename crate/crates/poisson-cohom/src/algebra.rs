//! Exact multi-index, monomial and polynomial arithmetic.
//!
//! Everything downstream is built on [`MultiIndex`] exponent tuples and sparse
//! [`RatPoly`] polynomials with exact rational coefficients.  A single global
//! monomial order — graded reverse lexicographic with `x1 > x2 > … > xn` — fixes
//! the numbering of monomials (their position in [`mono_basis`]) everywhere.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Exact rational numbers; the coefficient field of every computation.
pub type Rational = BigRational;

/// Convenience constructor for a rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for an integral rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Binomial coefficient `C(n, k)` (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Signed binomial `C(n, k)` that is zero for negative `n`.
pub fn binomial_i(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64) as i64
    }
}

/// Errors raised by polynomial arithmetic and parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0} variables vs {1} variables")]
    DimensionMismatch(usize, usize),
    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("axis {axis} is out of range for n = {n}")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Exponent tuple `A = (a1, …, an)` indexing the monomial `w^A = x1^a1 ⋯ xn^an`.
///
/// The derived equality is componentwise; the [`Ord`] implementation is the
/// graded reverse lexicographic order, so sorted containers iterate monomials
/// from smallest to largest.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// The exponent tuple of the constant monomial `1`.
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit index `E_i` (1-based axis), i.e. the monomial `x_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        MultiIndex(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of the 1-based variable `x_i`.
    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    /// Total degree `|A|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise sum (monomial product).
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `A − E_i` when `a_i > 0`.
    pub fn lower(&self, i: usize) -> Option<MultiIndex> {
        let e = self.0[i - 1];
        if e == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i - 1] = e - 1;
        Some(MultiIndex(v))
    }

    /// `A!` = Π aᵢ!.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &a in &self.0 {
            for k in 2..=a {
                acc *= k;
            }
        }
        acc
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        MonomialOrder::Grevlex.cmp(self, other)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MultiIndex {
    /// Writes the monomial `x1^a1*…` (or `1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", k + 1)?;
            } else {
                write!(f, "x{}^{}", k + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Monomial orders.  Only graded reverse lexicographic order is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic order with `x1 > x2 > … > xn`.
    #[default]
    Grevlex,
}

impl MonomialOrder {
    /// Compares two exponent tuples of the same length.
    pub fn cmp(&self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        match self {
            MonomialOrder::Grevlex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return da.cmp(&db);
                }
                // Same degree: the last differing variable decides, and the
                // tuple with the *smaller* exponent there is the larger monomial.
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// All exponent tuples of degree `j` in `n` variables, sorted descending by
/// grevlex.  The position of a tuple in this list is its canonical number.
pub fn mono_basis(n: usize, j: u32) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(binomial((n as u64 + j as u64).saturating_sub(1), j as u64) as usize);
    let mut cur = vec![0u32; n];
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        let n = cur.len();
        if k + 1 == n {
            cur[k] = left;
            out.push(MultiIndex(cur.clone()));
            cur[k] = 0;
            return;
        }
        for e in 0..=left {
            cur[k] = e;
            rec(k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    if n == 0 {
        if j == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    rec(0, j, &mut cur, &mut out);
    out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
    out
}

/// Sparse polynomial in `n` variables with exact rational coefficients.
///
/// No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    n: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl RatPoly {
    pub fn zero(n: usize) -> Self {
        RatPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// The variable `x_i` (1-based).
    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(n, i), Rational::one())
    }

    /// `c · w^A`.
    pub fn monomial(a: MultiIndex, c: Rational) -> Self {
        let n = a.n();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(a, c);
        }
        RatPoly { n, terms }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut p = RatPoly::zero(n);
        for (a, c) in terms {
            p.add_term(a, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
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

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of `w^A` (zero when absent).
    pub fn coeff(&self, a: &MultiIndex) -> Rational {
        self.terms.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c · w^A` in place.
    pub fn add_term(&mut self, a: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(a.n(), self.n);
        match self.terms.entry(a) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &RatPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (a, v) in &other.terms {
            self.add_term(a.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        let mut out = RatPoly::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> RatPoly {
        self.scale(&-Rational::one())
    }

    pub fn add(&self, other: &RatPoly) -> Result<RatPoly, AlgebraError> {
        self.check_n(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn sub(&self, other: &RatPoly) -> Result<RatPoly, AlgebraError> {
        self.check_n(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        Ok(out)
    }

    fn check_n(&self, other: &RatPoly) -> Result<(), AlgebraError> {
        if self.n != other.n {
            Err(AlgebraError::DimensionMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    /// Exact product.
    pub fn mul(&self, other: &RatPoly) -> Result<RatPoly, AlgebraError> {
        self.check_n(other)?;
        let mut out = RatPoly::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.add(b), x * y);
            }
        }
        Ok(out)
    }

    /// `self^e`.
    pub fn pow(&self, e: u32) -> RatPoly {
        let mut acc = RatPoly::one(self.n);
        for _ in 0..e {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// Exact partial derivative with respect to the 1-based variable `x_i`.
    pub fn partial(&self, i: usize) -> Result<RatPoly, AlgebraError> {
        if i == 0 || i > self.n {
            return Err(AlgebraError::AxisOutOfRange { axis: i, n: self.n });
        }
        let mut out = RatPoly::zero(self.n);
        for (a, c) in &self.terms {
            let e = a.exponent(i);
            if let Some(lo) = a.lower(i) {
                out.add_term(lo, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        Ok(out)
    }

    /// Antiderivative in `x_i` taken term-by-term (no constant of integration).
    pub fn integrate_monomialwise(&self, i: usize) -> Result<RatPoly, AlgebraError> {
        if i == 0 || i > self.n {
            return Err(AlgebraError::AxisOutOfRange { axis: i, n: self.n });
        }
        let mut out = RatPoly::zero(self.n);
        for (a, c) in &self.terms {
            let mut v = a.0.clone();
            v[i - 1] += 1;
            out.add_term(MultiIndex(v), c / Rational::from_integer(BigInt::from(a.exponent(i) + 1)));
        }
        Ok(out)
    }

    /// The grevlex-maximal monomial.
    pub fn leading_monomial(&self, order: MonomialOrder) -> Result<MultiIndex, AlgebraError> {
        match order {
            MonomialOrder::Grevlex => self
                .terms
                .keys()
                .next_back()
                .cloned()
                .ok_or(AlgebraError::ZeroPolynomial),
        }
    }

    /// `Some(d)` when every term has total degree `d`; the zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|a| a.degree());
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    /// True when zero or homogeneous of degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|a| a.degree() == d)
    }

    /// Dense coefficient vector against an ordered monomial list, or `None`
    /// when the polynomial has a term outside that list.
    pub fn dense_coefficients(&self, basis: &[MultiIndex]) -> Option<Vec<Rational>> {
        let index: std::collections::HashMap<&MultiIndex, usize> =
            basis.iter().enumerate().map(|(k, a)| (a, k)).collect();
        let mut out = vec![Rational::zero(); basis.len()];
        for (a, c) in &self.terms {
            out[*index.get(a)?] = c.clone();
        }
        Some(out)
    }

    /// Multiplies through so that all coefficients are coprime integers and the
    /// leading coefficient is positive.
    pub fn primitive(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = num::integer::lcm(den, c.denom().clone());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num::integer::gcd(g, (c.numer() * &den / c.denom()).abs());
        }
        let lead_negative = self.terms.values().next_back().map(|c| c.is_negative()).unwrap_or(false);
        let mut factor = Rational::new(den, g);
        if lead_negative {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Parses the text syntax `4*x1*x2 + x3^2 - 1/2*x1`.
    pub fn parse(n: usize, text: &str) -> Result<RatPoly, AlgebraError> {
        Parser::new(n, text).parse()
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatPoly {
    /// Terms in descending grevlex order, e.g. `4*x1*x2 + x3^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = a.degree() == 0;
            if abs.is_one() && !is_const {
                write!(f, "{a}")?;
            } else if is_const {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{a}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    n: usize,
    text: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(n: usize, text: &'a str) -> Self {
        Parser { n, text, tokens: Vec::new(), pos: 0 }
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse { pos, msg: msg.into() })
    }

    fn tokenize(&mut self) -> Result<(), AlgebraError> {
        let bytes = self.text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            match c {
                b' ' | b'\t' => {
                    i += 1;
                    continue;
                }
                b'0'..=b'9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let v: BigInt = self.text[start..i].parse().expect("digits");
                    self.tokens.push((start, Token::Num(v)));
                    continue;
                }
                b'x' => {
                    i += 1;
                    let ds = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if ds == i {
                        return self.err(start, "expected variable index after 'x'");
                    }
                    let k: usize = self.text[ds..i].parse().map_err(|_| AlgebraError::Parse {
                        pos: start,
                        msg: "bad variable index".into(),
                    })?;
                    if k == 0 || k > self.n {
                        return self.err(start, format!("variable x{k} out of range 1..={}", self.n));
                    }
                    self.tokens.push((start, Token::Var(k)));
                    continue;
                }
                b'+' => self.tokens.push((start, Token::Plus)),
                b'-' => self.tokens.push((start, Token::Minus)),
                b'*' => self.tokens.push((start, Token::Star)),
                b'/' => self.tokens.push((start, Token::Slash)),
                b'^' => self.tokens.push((start, Token::Caret)),
                b'(' => self.tokens.push((start, Token::LParen)),
                b')' => self.tokens.push((start, Token::RParen)),
                _ => return self.err(start, format!("unexpected character '{}'", c as char)),
            }
            i += 1;
        }
        Ok(())
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.text.len())
    }

    fn parse(mut self) -> Result<RatPoly, AlgebraError> {
        self.tokenize()?;
        if self.tokens.is_empty() {
            return self.err(0, "empty polynomial");
        }
        let p = self.expr()?;
        if self.pos != self.tokens.len() {
            return self.err(self.here(), "unexpected token (implicit multiplication is not allowed)");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<RatPoly, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc.add_scaled(&t, &Rational::one());
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc.add_scaled(&t, &-Rational::one());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatPoly, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = acc.mul(&f)?;
                }
                Some(Token::Slash) => {
                    let at = self.here();
                    self.pos += 1;
                    let f = self.unary()?;
                    let c = match f.homogeneous_degree() {
                        Some(0) => f.coeff(&MultiIndex::zero(self.n)),
                        _ => return self.err(at, "division only by a nonzero constant"),
                    };
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatPoly, AlgebraError> {
        if let Some(Token::Minus) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if let Some(Token::Plus) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatPoly, AlgebraError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let at = self.here();
            match self.tokens.get(self.pos).map(|(_, t)| t.clone()) {
                Some(Token::Num(e)) => {
                    self.pos += 1;
                    let e: u32 = u32::try_from(e).map_err(|_| AlgebraError::Parse {
                        pos: at,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => self.err(at, "expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatPoly, AlgebraError> {
        let at = self.here();
        match self.tokens.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Token::Num(v)) => {
                self.pos += 1;
                Ok(RatPoly::constant(self.n, Rational::from_integer(v)))
            }
            Some(Token::Var(k)) => {
                self.pos += 1;
                Ok(RatPoly::var(self.n, k))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.err(self.here(), "expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            _ => self.err(at, "expected a number, a variable or '('"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> RatPoly {
        RatPoly::parse(n, s).unwrap()
    }

    #[test]
    fn mono_basis_examples() {
        let b = mono_basis(3, 1);
        assert_eq!(b, vec![MultiIndex::unit(3, 1), MultiIndex::unit(3, 2), MultiIndex::unit(3, 3)]);
        assert_eq!(mono_basis(3, 2).len(), 6);
        assert_eq!(mono_basis(1, 5), vec![MultiIndex::new(vec![5])]);
        let names: Vec<String> = mono_basis(3, 2).iter().map(|a| a.to_string()).collect();
        assert_eq!(names, ["x1^2", "x1*x2", "x2^2", "x1*x3", "x2*x3", "x3^2"]);
    }

    #[test]
    fn products_and_derivatives() {
        assert_eq!(p(3, "x1").mul(&p(3, "x2")).unwrap(), p(3, "x1*x2"));
        let f = p(3, "4*x1*x2 + x3^2");
        assert_eq!(f.mul(&RatPoly::one(3)).unwrap(), f);
        let g = p(3, "2*x1*x2 + x3^2/2");
        assert_eq!(g.mul(&g).unwrap(), p(3, "4*x1^2*x2^2 + 2*x1*x2*x3^2 + 1/4*x3^4"));
        assert_eq!(p(3, "x3^2").partial(3).unwrap(), p(3, "2*x3"));
        assert_eq!(f.partial(1).unwrap(), p(3, "4*x2"));
        assert!(p(3, "x1^3").partial(2).unwrap().is_zero());
        assert!(matches!(f.mul(&RatPoly::one(2)), Err(AlgebraError::DimensionMismatch(3, 2))));
    }

    #[test]
    fn leading_monomials() {
        let f = p(3, "4*x1*x2 + x3^2");
        assert_eq!(f.leading_monomial(MonomialOrder::Grevlex).unwrap(), MultiIndex::new(vec![1, 1, 0]));
        assert_eq!(p(3, "x3^2").leading_monomial(MonomialOrder::Grevlex).unwrap(), MultiIndex::new(vec![0, 0, 2]));
        assert_eq!(p(4, "x4").leading_monomial(MonomialOrder::Grevlex).unwrap(), MultiIndex::new(vec![0, 0, 0, 1]));
        assert_eq!(RatPoly::zero(2).leading_monomial(MonomialOrder::Grevlex), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn parser_round_trip_and_errors() {
        let f = p(3, "-1/4*x3^2 + 2*(x1 - x2)*x3");
        assert_eq!(p(3, &f.to_string()), f);
        assert_eq!(p(2, "0"), RatPoly::zero(2));
        assert!(RatPoly::parse(3, "2x1").is_err());
        assert!(RatPoly::parse(3, "x4").is_err());
        assert!(RatPoly::parse(3, "x1 / x2").is_err());
        assert!(RatPoly::parse(3, "").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial_i(-1, 0), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn primitive_normalization() {
        assert_eq!(p(3, "-1/2*x1*x2 - 1/8*x3^2").primitive(), p(3, "4*x1*x2 + x3^2"));
    }
}
