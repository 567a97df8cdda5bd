//! Young diagrams, tower decompositions and signature enumeration for
//! weight-graded (co)chain spaces, plus purely combinatorial Euler
//! characteristics.
//!
//! A cochain space of degree `m` and weight `w` is a direct sum of tensor
//! products `Λ^{k_0}S_0 ⊗ Λ^{k_1}S_1 ⊗ …` with `Σ k_j = m`,
//! `Σ k_j·wt(j) = w` and `0 ≤ k_j ≤ cap(j)`.  The multiplicities `[k_j]` are
//! a [`DiagramSignature`]; read as "k_j rows of length j" they form a Young
//! diagram of height `m`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::algebra::{binomial, binomial_i};
use crate::casimir::casimir_space;
use crate::poisson::PoissonStructure;

/// Errors raised by diagram operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("k_{degree} = {k} exceeds the cap {cap}")]
    CapViolation { degree: usize, k: u32, cap: u64 },
    #[error("tower height {m} is smaller than the diagram height {height}")]
    TowerTooShort { m: u32, height: u32 },
}

/// A Young diagram as weakly decreasing row lengths.
pub type Partition = Vec<u32>;

/// Multiplicities `k_j` of graded pieces `S_j` (index = degree `j`,
/// including the optional constants slot `k_0`).  Trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DiagramSignature {
    k: Vec<u32>,
}

impl DiagramSignature {
    /// Builds a signature from `k_0, k_1, …`.
    pub fn new(mut k: Vec<u32>) -> Self {
        while k.last() == Some(&0) {
            k.pop();
        }
        DiagramSignature { k }
    }

    /// Builds a signature from `(degree, multiplicity)` pairs.
    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let len = pairs.iter().map(|(j, _)| j + 1).max().unwrap_or(0);
        let mut k = vec![0; len];
        for &(j, v) in pairs {
            k[j] += v;
        }
        DiagramSignature::new(k)
    }

    /// `k_j` (zero beyond the stored range).
    pub fn k(&self, j: usize) -> u32 {
        self.k.get(j).copied().unwrap_or(0)
    }

    /// Multiplicities indexed by degree.
    pub fn multiplicities(&self) -> &[u32] {
        &self.k
    }

    /// Height `m = Σ k_j`.
    pub fn m(&self) -> u32 {
        self.k.iter().sum()
    }

    /// Weight `Σ k_j · (j + shift)`.
    pub fn weight(&self, shift: i64) -> i64 {
        self.k.iter().enumerate().map(|(j, &k)| k as i64 * (j as i64 + shift)).sum()
    }

    /// The diagram with `k_j` rows of length `j` (degree-0 entries ignored).
    pub fn to_partition(&self) -> Partition {
        let mut rows = Vec::new();
        for (j, &k) in self.k.iter().enumerate().rev() {
            if j == 0 {
                continue;
            }
            rows.extend(std::iter::repeat_n(j as u32, k as usize));
        }
        rows
    }

    /// Multiplicities of the row lengths of a partition.
    pub fn from_partition(lambda: &[u32]) -> Self {
        let mut k = vec![0; lambda.iter().copied().max().unwrap_or(0) as usize + 1];
        for &r in lambda {
            if r > 0 {
                k[r as usize] += 1;
            }
        }
        DiagramSignature::new(k)
    }

    /// Signature from a tower list: `k_j = ℓ_j − ℓ_{j+1}`, `k_s = ℓ_s`.
    pub fn from_towers(towers: &[u32]) -> Self {
        let mut k = vec![0; towers.len() + 1];
        for j in 0..towers.len() {
            let next = towers.get(j + 1).copied().unwrap_or(0);
            k[j + 1] = towers[j] - next;
        }
        DiagramSignature::new(k)
    }
}

impl fmt::Debug for DiagramSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DiagramSignature {
    /// `[k1=2,k3=1]` style, listing nonzero multiplicities only.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.k.iter().enumerate().filter(|(_, &k)| k > 0).map(|(j, k)| format!("k{j}={k}")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Young diagrams with `a` cells and exactly `k` rows, by the recursion
/// `∇(A,k) = T(k)·(∇(A−k,0) ⊔ … ⊔ ∇(A−k,k))`: every such diagram has a first
/// column of height `k`, and removing it leaves a diagram with at most `k`
/// rows.
pub fn nabla(a: u32, k: u32) -> Vec<Partition> {
    let mut memo = HashMap::new();
    nabla_memo(a, k, &mut memo)
}

fn nabla_memo(a: u32, k: u32, memo: &mut HashMap<(u32, u32), Vec<Partition>>) -> Vec<Partition> {
    if a == 0 && k == 0 {
        return vec![Vec::new()];
    }
    if k == 0 || a < k {
        return Vec::new();
    }
    if let Some(v) = memo.get(&(a, k)) {
        return v.clone();
    }
    let mut out = Vec::new();
    for k2 in (0..=k).rev() {
        for mu in nabla_memo(a - k, k2, memo) {
            // T(k)·μ: add one cell to each of the first k rows.
            let mut lambda: Partition = (0..k as usize).map(|r| mu.get(r).copied().unwrap_or(0) + 1).collect();
            lambda.sort_unstable_by(|x, y| y.cmp(x));
            out.push(lambda);
        }
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    memo.insert((a, k), out.clone());
    out
}

/// Column slicing of a diagram: `ℓ_j = #{i : λ_i ≥ j}` (the conjugate
/// partition).
pub fn tower_decompose(lambda: &[u32]) -> Vec<u32> {
    let width = lambda.iter().copied().max().unwrap_or(0);
    (1..=width).map(|j| lambda.iter().filter(|&&r| r >= j).count() as u32).collect()
}

/// `T(m)·λ` in signature form: `k̄_1 = m − Σk_j`, `k̄_{j+1} = k_j`.
pub fn prepend_tower(m: u32, sig: &DiagramSignature) -> Result<DiagramSignature, DiagramError> {
    let height = sig.m();
    if m < height {
        return Err(DiagramError::TowerTooShort { m, height });
    }
    let mut k = vec![0, m - height];
    k.extend(sig.multiplicities().iter().skip(1).copied());
    Ok(DiagramSignature::new(k))
}

/// Which family of generators a [`CapProfile`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CapKind {
    /// Homogeneous polynomials: `cap(j) = C(n−1+j, j)`.
    FullPolynomial,
    /// Hamiltonian quotient: `cap(j) = C(n−1+j, j) − dim Casim_j`.
    Hamiltonian,
    /// Graded vector fields `w^A ∂_i`: `cap(j) = n·C(n−1+j, j)`.
    Multivector,
    /// Polynomials tensor constant multivectors (no signature structure).
    PolynomialModule,
}

/// Caps and weights of graded generator pieces: degree `j ≥ start_degree`
/// contributes generators of weight `j + weight_shift`, at most `cap(j)` of
/// which can appear in one wedge.
#[derive(Clone)]
pub struct CapProfile {
    pub kind: CapKind,
    pub n: usize,
    pub start_degree: u32,
    pub weight_shift: i64,
    cap_fn: Arc<dyn Fn(u32) -> u64 + Send + Sync>,
}

impl fmt::Debug for CapProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CapProfile({:?}, n={}, start={}, shift={})",
            self.kind, self.n, self.start_degree, self.weight_shift
        )
    }
}

impl CapProfile {
    /// Polynomial generators `S_j`, `j ≥ start_degree`, of weight `j − 2 + h`.
    /// `start_degree = 0` includes the constants.
    pub fn polynomial(n: usize, h: u32, start_degree: u32) -> Self {
        CapProfile {
            kind: CapKind::FullPolynomial,
            n,
            start_degree,
            weight_shift: h as i64 - 2,
            cap_fn: Arc::new(move |j| binomial((n + j as usize) as u64 - 1, j as u64)),
        }
    }

    /// Hamiltonian quotient pieces `S_j / Casim_j` of a Poisson structure.
    pub fn hamiltonian(pi: &PoissonStructure) -> Self {
        let n = pi.n();
        let pi = pi.clone();
        let memo: Arc<Mutex<HashMap<u32, u64>>> = Arc::new(Mutex::new(HashMap::new()));
        CapProfile {
            kind: CapKind::Hamiltonian,
            n,
            start_degree: 0,
            weight_shift: pi.h() as i64 - 2,
            cap_fn: Arc::new(move |j| {
                if let Some(&c) = memo.lock().expect("cap memo").get(&j) {
                    return c;
                }
                let full = binomial((n + j as usize) as u64 - 1, j as u64);
                let c = full - casimir_space(&pi, j).dim() as u64;
                memo.lock().expect("cap memo").insert(j, c);
                c
            }),
        }
    }

    /// Graded vector fields `X_j` of weight `j + 1 − h`.
    pub fn multivector(n: usize, h: u32) -> Self {
        CapProfile {
            kind: CapKind::Multivector,
            n,
            start_degree: 0,
            weight_shift: 1 - h as i64,
            cap_fn: Arc::new(move |j| n as u64 * binomial((n + j as usize) as u64 - 1, j as u64)),
        }
    }

    /// Arbitrary caps (used by tests and by truncated profiles).
    pub fn custom(
        kind: CapKind,
        n: usize,
        start_degree: u32,
        weight_shift: i64,
        cap: impl Fn(u32) -> u64 + Send + Sync + 'static,
    ) -> Self {
        CapProfile { kind, n, start_degree, weight_shift, cap_fn: Arc::new(cap) }
    }

    /// The same profile restricted to degrees `≤ max_degree`.
    pub fn truncated(&self, max_degree: u32) -> Self {
        let inner = self.cap_fn.clone();
        CapProfile {
            cap_fn: Arc::new(move |j| if j <= max_degree { inner(j) } else { 0 }),
            ..self.clone()
        }
    }

    /// `cap(j)`, zero below the start degree.
    pub fn cap(&self, j: u32) -> u64 {
        if j < self.start_degree {
            0
        } else {
            (self.cap_fn)(j)
        }
    }

    /// Weight of a degree-`j` generator.
    pub fn weight(&self, j: u32) -> i64 {
        j as i64 + self.weight_shift
    }

    /// Largest degree whose generators can occur in a weight-`w` cochain:
    /// a single generator can only be balanced by the finitely many
    /// negative-weight generators.
    pub fn max_degree_for_weight(&self, w: i64) -> Option<u32> {
        let mut negative_total = 0i64;
        let mut j = self.start_degree;
        while self.weight(j) < 0 {
            negative_total += self.weight(j) * self.cap(j) as i64;
            j += 1;
        }
        let bound = w - negative_total - self.weight_shift;
        (bound >= self.start_degree as i64).then_some(bound as u32)
    }
}

/// All signatures of weight `w` (and height `m`, when given) admitted by the
/// caps, in lexicographic order of `(k_0, k_1, …)`.
pub fn enumerate_signatures(caps: &CapProfile, w: i64, m: Option<u32>) -> Vec<DiagramSignature> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; caps.start_degree as usize];
    dfs(caps, caps.start_degree, m, w, &mut cur, &mut out);
    out.sort();
    out
}

fn dfs(caps: &CapProfile, j: u32, count: Option<u32>, r: i64, cur: &mut Vec<u32>, out: &mut Vec<DiagramSignature>) {
    let wt = caps.weight(j);
    match count {
        Some(0) => {
            if r == 0 {
                out.push(DiagramSignature::new(cur.clone()));
            }
            return;
        }
        Some(c) => {
            // Every remaining generator weighs at least `wt`.
            if wt * c as i64 > r {
                return;
            }
        }
        None => {
            if wt > 0 && wt > r {
                if r == 0 {
                    out.push(DiagramSignature::new(cur.clone()));
                }
                return;
            }
        }
    }
    let cap = caps.cap(j);
    let kmax = match count {
        Some(c) => (c as u64).min(cap),
        None => cap,
    };
    let kmax = if wt > 0 { kmax.min((r / wt) as u64) } else { kmax };
    cur.push(0);
    for k in 0..=kmax as u32 {
        *cur.last_mut().expect("pushed") = k;
        dfs(caps, j + 1, count.map(|c| c - k), r - k as i64 * wt, cur, out);
    }
    cur.pop();
}

/// `Π_j C(cap(j), k_j)`.
pub fn signature_dim(sig: &DiagramSignature, caps: &CapProfile) -> Result<u128, DiagramError> {
    let mut d: u128 = 1;
    for (j, &k) in sig.multiplicities().iter().enumerate() {
        if k == 0 {
            continue;
        }
        let cap = caps.cap(j as u32);
        if k as u64 > cap {
            return Err(DiagramError::CapViolation { degree: j, k, cap });
        }
        d = d.checked_mul(binomial(cap, k as u64) as u128).expect("dimension overflows u128");
    }
    Ok(d)
}

/// Dimensions of the weight-`w` cochain spaces, indexed by `m`.
pub fn cochain_dims(caps: &CapProfile, w: i64) -> Vec<u128> {
    let mut dims: Vec<u128> = Vec::new();
    for sig in enumerate_signatures(caps, w, None) {
        let m = sig.m() as usize;
        if dims.len() <= m {
            dims.resize(m + 1, 0);
        }
        dims[m] += signature_dim(&sig, caps).expect("enumerated within caps");
    }
    dims
}

/// `Σ_m (−1)^m dim C^m_w` computed from the signatures alone.
pub fn euler_combinatorial(caps: &CapProfile, w: i64) -> i128 {
    cochain_dims(caps, w)
        .iter()
        .enumerate()
        .map(|(m, &d)| if m % 2 == 0 { d as i128 } else { -(d as i128) })
        .sum()
}

/// Euler characteristic of the polynomial-module complex
/// `Σ_m (−1)^m C(n−1+w+(h−1)m, n−1)·C(n,m)` over `m` with
/// `w + (h−1)m ≥ 0`.
pub fn euler_polymodule(n: usize, h: u32, w: i64) -> i128 {
    let n = n as i64;
    (0..=n)
        .map(|m| {
            let d = w + (h as i64 - 1) * m;
            if d < 0 {
                return 0;
            }
            let v = binomial_i(n - 1 + d, n - 1) as i128 * binomial_i(n, m) as i128;
            if m % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}
