//! Exact sparse linear algebra over the rationals.
//!
//! Ranks are computed by fraction-free elimination on integer vectors obtained
//! by clearing denominators column by column (which does not change the rank).
//! The matrix is first split into the connected components of its
//! row/column incidence graph; each block is eliminated independently, first
//! with machine integers and, if any intermediate value overflows, again with
//! arbitrary-precision integers.  Kernel bases are produced by a reduced row
//! echelon form over the rationals.

use std::collections::HashMap;
use std::io::{self, Write};

use num::{BigInt, Integer, One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::Rational;

/// Errors raised by matrix operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left_cols} columns vs {right_rows} rows")]
    DimensionMismatch { left_cols: usize, right_rows: usize },
    #[error("index ({row}, {col}) out of range for a {n_rows}x{n_cols} matrix")]
    OutOfRange { row: usize, col: usize, n_rows: usize, n_cols: usize },
}

/// A sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(u32, Rational)>;

/// Sparse exact matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    /// The zero matrix.
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix { n_rows, n_cols, cols: vec![Vec::new(); n_cols] }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Self {
        let cols = (0..n).map(|k| vec![(k as u32, Rational::one())]).collect();
        SparseMatrix { n_rows: n, n_cols: n, cols }
    }

    /// Builds a matrix from unsorted `(row, col, value)` triplets; repeated
    /// positions are summed and zeros dropped.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self, LinalgError> {
        let mut acc: Vec<HashMap<u32, Rational>> = vec![HashMap::new(); n_cols];
        for (r, c, v) in triplets {
            if r >= n_rows || c >= n_cols {
                return Err(LinalgError::OutOfRange { row: r, col: c, n_rows, n_cols });
            }
            *acc[c].entry(r as u32).or_insert_with(Rational::zero) += v;
        }
        let cols = acc.into_iter().map(normalize_map).collect();
        Ok(SparseMatrix { n_rows, n_cols, cols })
    }

    /// Builds a matrix from columns given as (possibly unsorted, possibly
    /// repeated) row/value lists.
    pub fn from_columns(n_rows: usize, columns: Vec<Vec<(u32, Rational)>>) -> Self {
        let n_cols = columns.len();
        let cols = columns
            .into_iter()
            .map(|c| {
                let mut m: HashMap<u32, Rational> = HashMap::with_capacity(c.len());
                for (r, v) in c {
                    assert!((r as usize) < n_rows, "row index out of range");
                    *m.entry(r).or_insert_with(Rational::zero) += v;
                }
                normalize_map(m)
            })
            .collect();
        SparseMatrix { n_rows, n_cols, cols }
    }

    /// Builds a matrix from dense rows (test and example convenience).
    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut cols = vec![Vec::new(); n_cols];
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    cols[c].push((r as u32, v.clone()));
                }
            }
        }
        SparseMatrix { n_rows, n_cols, cols }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn column(&self, c: usize) -> &[(u32, Rational)] {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.cols[c].binary_search_by_key(&(r as u32), |(k, _)| *k) {
            Ok(p) => self.cols[c][p].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Iterates `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r as usize, c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.n_rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                cols[*r as usize].push((c as u32, v.clone()));
            }
        }
        SparseMatrix { n_rows: self.n_cols, n_cols: self.n_rows, cols }
    }

    /// Exact product `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.n_cols != other.n_rows {
            return Err(LinalgError::DimensionMismatch { left_cols: self.n_cols, right_rows: other.n_rows });
        }
        let cols = other
            .cols
            .par_iter()
            .map(|bcol| {
                let mut acc: HashMap<u32, Rational> = HashMap::new();
                for (k, bv) in bcol {
                    for (r, av) in &self.cols[*k as usize] {
                        *acc.entry(*r).or_insert_with(Rational::zero) += av * bv;
                    }
                }
                normalize_map(acc)
            })
            .collect();
        Ok(SparseMatrix { n_rows: self.n_rows, n_cols: other.n_cols, cols })
    }

    /// Dense rows (small matrices only).
    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.n_cols]; self.n_rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Writes the coordinate-list dump: a `% rows cols` header followed by one
    /// `row col num/den` line per nonzero entry (0-based indices).
    pub fn write_coordinates(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "% {} {}", self.n_rows, self.n_cols)?;
        for (r, c, v) in self.entries() {
            writeln!(out, "{} {} {}/{}", r, c, v.numer(), v.denom())?;
        }
        Ok(())
    }
}

fn normalize_map(m: HashMap<u32, Rational>) -> SparseVec {
    let mut v: SparseVec = m.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    v.sort_unstable_by_key(|(r, _)| *r);
    v
}

/// Rank and kernel information of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub kernel_dim: usize,
    /// Kernel basis as sparse column vectors (only when requested).
    pub kernel_basis: Option<Vec<SparseVec>>,
}

/// Exact rank (and optionally a kernel basis) of `m`.
pub fn rank_kernel(m: &SparseMatrix, want_basis: bool) -> RankResult {
    if want_basis {
        let (rank, basis) = kernel_basis(m);
        RankResult { rank, kernel_dim: m.n_cols - rank, kernel_basis: Some(basis) }
    } else {
        let rank = rank(m);
        RankResult { rank, kernel_dim: m.n_cols - rank, kernel_basis: None }
    }
}

/// True iff `a · b` is exactly zero.
pub fn compose_is_zero(a: &SparseMatrix, b: &SparseMatrix) -> Result<bool, LinalgError> {
    Ok(a.mul(b)?.is_zero())
}

/// Exact rank over ℚ.
pub fn rank(m: &SparseMatrix) -> usize {
    let components = components(m);
    components
        .par_iter()
        .map(|cols| {
            let vectors: Vec<Vec<(u32, BigInt)>> = cols.iter().map(|&c| primitive_integer(&m.cols[c])).collect();
            block_rank(vectors)
        })
        .sum()
}

/// Connected components of the bipartite row/column incidence graph, as
/// lists of nonzero column indices (zero columns are dropped).
fn components(m: &SparseMatrix) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..m.n_cols).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: Vec<usize> = vec![usize::MAX; m.n_rows];
    for (c, col) in m.cols.iter().enumerate() {
        for (r, _) in col {
            let r = *r as usize;
            if owner[r] == usize::MAX {
                owner[r] = c;
            } else {
                let (a, b) = (find(&mut parent, owner[r]), find(&mut parent, c));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for c in 0..m.n_cols {
        if m.cols[c].is_empty() {
            continue;
        }
        let root = find(&mut parent, c);
        groups.entry(root).or_default().push(c);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

/// Clears denominators and removes the integer content of a sparse vector.
fn primitive_integer(v: &[(u32, Rational)]) -> Vec<(u32, BigInt)> {
    let mut den = BigInt::one();
    for (_, x) in v {
        den = den.lcm(x.denom());
    }
    let mut out: Vec<(u32, BigInt)> = v.iter().map(|(r, x)| (*r, x.numer() * (&den / x.denom()))).collect();
    let mut g = BigInt::zero();
    for (_, x) in &out {
        g = g.gcd(x);
    }
    if !g.is_one() && !g.is_zero() {
        for (_, x) in &mut out {
            *x = &*x / &g;
        }
    }
    out
}

/// Integer arithmetic used by the elimination kernel.  Operations on machine
/// integers report overflow with `None`.
trait ElimInt: Clone + Send + Sync + Sized {
    fn el_from_big(b: &BigInt) -> Option<Self>;
    fn el_is_zero(&self) -> bool;
    fn el_mul(&self, o: &Self) -> Option<Self>;
    fn el_sub(&self, o: &Self) -> Option<Self>;
    fn el_gcd(&self, o: &Self) -> Self;
    fn el_div_exact(&self, o: &Self) -> Self;
    fn el_is_one(&self) -> bool;
    fn el_neg(&self) -> Option<Self>;
}

impl ElimInt for i64 {
    fn el_from_big(b: &BigInt) -> Option<Self> {
        i64::try_from(b).ok().filter(|v| *v != i64::MIN)
    }
    fn el_is_zero(&self) -> bool {
        *self == 0
    }
    fn el_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o).filter(|v| *v != i64::MIN)
    }
    fn el_sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o).filter(|v| *v != i64::MIN)
    }
    fn el_gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), o.unsigned_abs());
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a as i64
    }
    fn el_div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn el_is_one(&self) -> bool {
        *self == 1
    }
    fn el_neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl ElimInt for BigInt {
    fn el_from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn el_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn el_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn el_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn el_gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn el_div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn el_is_one(&self) -> bool {
        One::is_one(self)
    }
    fn el_neg(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Rank of the span of integer vectors, trying machine integers first.
fn block_rank(vectors: Vec<Vec<(u32, BigInt)>>) -> usize {
    let small: Option<Vec<Vec<(u32, i64)>>> = vectors
        .iter()
        .map(|v| v.iter().map(|(r, x)| i64::el_from_big(x).map(|y| (*r, y))).collect())
        .collect();
    if let Some(small) = small {
        if let Some(r) = echelon_rank(small) {
            return r;
        }
    }
    echelon_rank(vectors).expect("arbitrary precision never overflows")
}

/// Fraction-free incremental echelon: each vector is reduced against the
/// stored pivot vectors on its leading coordinate until it vanishes or
/// acquires a fresh leading coordinate.  Coordinates are relabelled so that
/// the sparsest rows become leading positions first (a static Markowitz-style
/// heuristic), vectors are processed sparsest first, and all ties are broken
/// by index, so the computation is deterministic.
fn echelon_rank<T: ElimInt>(mut vectors: Vec<Vec<(u32, T)>>) -> Option<usize> {
    let mut count: HashMap<u32, u32> = HashMap::new();
    for v in &vectors {
        for (r, _) in v {
            *count.entry(*r).or_default() += 1;
        }
    }
    let mut rows: Vec<u32> = count.keys().copied().collect();
    rows.sort_by_key(|r| (count[r], *r));
    let key: HashMap<u32, u32> = rows.iter().enumerate().map(|(k, r)| (*r, k as u32)).collect();
    for v in &mut vectors {
        for e in v.iter_mut() {
            e.0 = key[&e.0];
        }
        v.sort_unstable_by_key(|e| e.0);
    }
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&k| (vectors[k].len(), k));

    let mut pivot_of: Vec<u32> = vec![u32::MAX; rows.len()];
    let mut pivots: Vec<Vec<(u32, T)>> = Vec::new();
    for k in order {
        let mut v = std::mem::take(&mut vectors[k]);
        while let Some((lead, _)) = v.first() {
            let p = pivot_of[*lead as usize];
            if p == u32::MAX {
                pivot_of[*lead as usize] = pivots.len() as u32;
                pivots.push(v);
                break;
            }
            v = eliminate(&v, &pivots[p as usize])?;
        }
    }
    Some(pivots.len())
}

/// Returns the primitive part of `a·v − b·p` where `a, b` cancel the common
/// leading coordinate.
fn eliminate<T: ElimInt>(v: &[(u32, T)], p: &[(u32, T)]) -> Option<Vec<(u32, T)>> {
    let (vl, pl) = (&v[0].1, &p[0].1);
    let g = vl.el_gcd(pl);
    let a = pl.el_div_exact(&g);
    let b = vl.el_div_exact(&g);
    let mut out: Vec<(u32, T)> = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push((v[i].0, v[i].1.el_mul(&a)?));
            i += 1;
        } else if take_p {
            let x = p[j].1.el_mul(&b)?;
            out.push((p[j].0, x.el_neg()?));
            j += 1;
        } else {
            let x = v[i].1.el_mul(&a)?.el_sub(&p[j].1.el_mul(&b)?)?;
            if !x.el_is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    let mut content: Option<T> = None;
    for (_, x) in &out {
        content = Some(match content {
            None => x.el_gcd(x),
            Some(c) => c.el_gcd(x),
        });
        if content.as_ref().map(|c| c.el_is_one()).unwrap_or(false) {
            break;
        }
    }
    if let Some(c) = content {
        if !c.el_is_one() && !c.el_is_zero() {
            for (_, x) in &mut out {
                *x = x.el_div_exact(&c);
            }
        }
    }
    Some(out)
}

/// Reduced row echelon form of sparse rational rows over `n_cols` columns.
/// Returns the nonzero reduced rows (sorted by pivot column) and the pivot
/// columns.
pub fn rref(rows: Vec<SparseVec>, n_cols: usize) -> (Vec<SparseVec>, Vec<usize>) {
    let mut active: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut done: Vec<SparseVec> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..n_cols {
        // Choose the shortest row whose leading entry sits in `col`.
        let mut best: Option<usize> = None;
        for (k, r) in active.iter().enumerate() {
            if r[0].0 as usize == col && best.map(|b| active[b].len() > r.len()).unwrap_or(true) {
                best = Some(k);
            }
        }
        let Some(b) = best else { continue };
        let mut prow = active.swap_remove(b);
        let inv = prow[0].1.recip();
        for e in &mut prow {
            e.1 = &e.1 * &inv;
        }
        for r in active.iter_mut().chain(done.iter_mut()) {
            if let Ok(pos) = r.binary_search_by_key(&(col as u32), |e| e.0) {
                let f = r[pos].1.clone();
                *r = axpy(r, &prow, &f);
            }
        }
        active.retain(|r| !r.is_empty());
        done.push(prow);
        pivots.push(col);
    }
    (done, pivots)
}

/// `r − f·p` for sorted sparse vectors.
fn axpy(r: &[(u32, Rational)], p: &[(u32, Rational)], f: &Rational) -> SparseVec {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        if j >= p.len() || (i < r.len() && r[i].0 < p[j].0) {
            out.push(r[i].clone());
            i += 1;
        } else if i >= r.len() || p[j].0 < r[i].0 {
            out.push((p[j].0, -(&p[j].1 * f)));
            j += 1;
        } else {
            let x = &r[i].1 - &p[j].1 * f;
            if !x.is_zero() {
                out.push((r[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank and a kernel basis via reduced row echelon form.  Each basis vector
/// has a 1 in one free column and zeros in the other free columns.
fn kernel_basis(m: &SparseMatrix) -> (usize, Vec<SparseVec>) {
    let t = m.transpose();
    let rows: Vec<SparseVec> = t.cols;
    let (reduced, pivots) = rref(rows, m.n_cols);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m.n_cols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..m.n_cols).filter(|&c| !is_pivot[c]) {
        let mut v: SparseVec = vec![(free as u32, Rational::one())];
        for (row, &p) in reduced.iter().zip(&pivots) {
            if let Ok(pos) = row.binary_search_by_key(&(free as u32), |e| e.0) {
                v.push((p as u32, -row[pos].1.clone()));
            }
        }
        v.sort_unstable_by_key(|e| e.0);
        basis.push(v);
    }
    (pivots.len(), basis)
}

/// Matrix whose columns are the given sparse vectors.
pub fn columns_to_matrix(n_rows: usize, vectors: &[SparseVec]) -> SparseMatrix {
    SparseMatrix { n_rows, n_cols: vectors.len(), cols: vectors.to_vec() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&dense(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&dense(&[&[1, 0], &[0, 1]])), 2);
        let z = SparseMatrix::zeros(3, 4);
        let r = rank_kernel(&z, true);
        assert_eq!((r.rank, r.kernel_dim), (0, 4));
        assert_eq!(r.kernel_basis.unwrap().len(), 4);
    }

    #[test]
    fn rational_entries() {
        let m = SparseMatrix::from_dense(&[vec![rat(1, 2), rat(1, 3)], vec![rat(3, 2), int(1)]]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = dense(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let r = rank_kernel(&m, true);
        assert_eq!(r.rank, 2);
        let k = columns_to_matrix(4, r.kernel_basis.as_ref().unwrap());
        assert!(compose_is_zero(&m, &k).unwrap());
        assert!(!compose_is_zero(&SparseMatrix::identity(2), &SparseMatrix::identity(2)).unwrap());
        assert!(compose_is_zero(&SparseMatrix::identity(0), &SparseMatrix::identity(0)).unwrap());
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = 3_000_000_000_i64;
        let m = dense(&[&[big, big - 1, 7], &[big + 1, big, 5], &[1, 3, big]]);
        assert_eq!(rank(&m), 3);
        let m2 = dense(&[&[big, big - 1], &[2 * big, 2 * big - 2]]);
        assert_eq!(rank(&m2), 1);
    }

    #[test]
    fn dimension_errors() {
        let a = SparseMatrix::zeros(2, 3);
        assert!(a.mul(&a).is_err());
        assert!(SparseMatrix::from_triplets(2, 2, [(2, 0, int(1))]).is_err());
    }

    #[test]
    fn coordinate_dump() {
        let m = SparseMatrix::from_dense(&[vec![rat(-1, 4), int(0)], vec![int(0), int(3)]]);
        let mut buf = Vec::new();
        m.write_coordinates(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "% 2 2\n0 0 -1/4\n1 1 3/1\n");
    }
}
