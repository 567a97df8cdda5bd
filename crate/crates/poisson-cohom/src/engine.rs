//! The full pipeline: structure → mode → weights → [`ComplexReport`]s, with
//! an on-disk report cache and consistency checks.
//!
//! Reports serialize to a small line-oriented `key = value` format that
//! parses back losslessly.  Cached reports live at
//! `<cache>/<sha256 hex>.report`, keyed by the canonical structure text, the
//! mode tag, the weight and [`CODE_VERSION`].

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::complex::{
    homology_vs_cohomology_check, AnnihilatorComplex, ComplexError, GradedComplex, LieComplex, Mode, ModeSpec,
};
use crate::diagrams::{euler_combinatorial, euler_polymodule};
use crate::fixtures;
use crate::linalg::rank;
use crate::multivector::{heisenberg_closed_form, heisenberg_kernel_closed_form, sp2_closed_form, PolyModuleComplex};

/// Version tag mixed into every cache key; bump when results could change.
pub const CODE_VERSION: &str = concat!("poisson-cohom/", env!("CARGO_PKG_VERSION"), "/report-v1");

/// Environment variable naming the report cache directory.
pub const CACHE_ENV: &str = "POISSON_COHOM_CACHE";

/// Errors raised by the pipeline.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("report line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot start a thread pool: {0}")]
    Pool(String),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> EngineError + '_ {
    move |source| EngineError::Io { path: path.to_path_buf(), source }
}

/// One degree of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRow {
    pub m: u32,
    pub dim: u64,
    /// `dim ker(d: C^m → C^{m+1})`.
    pub kernel_dim: u64,
    /// `rank(d: C^m → C^{m+1})`.
    pub rank: u64,
    /// `kernel_dim(m) − rank(m−1)`.
    pub betti: i64,
}

/// Dimensions, kernels, ranks and Betti numbers of one weight-graded complex.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexReport {
    /// Mode tag, e.g. `poly-bar:start=1` or `hamiltonian`.
    pub mode: String,
    pub weight: i64,
    /// Consecutive degrees, lowest first.  Empty for an empty complex.
    pub rows: Vec<DegreeRow>,
    /// `Σ (−1)^m dim C^m`.
    pub euler: i64,
    /// Wall-clock seconds spent computing (not part of the mathematics).
    pub seconds: f64,
}

const REPORT_HEADER: &str = "poisson-cohom report v1";

impl ComplexReport {
    /// Assembles a report from `(m, dim, rank)` triples over consecutive degrees.
    pub fn from_ranks(mode: &str, weight: i64, ranks: &[(u32, u64, u64)], seconds: f64) -> Self {
        let mut rows = Vec::with_capacity(ranks.len());
        let mut prev_rank = 0u64;
        for &(m, dim, r) in ranks {
            let kernel_dim = dim - r;
            rows.push(DegreeRow { m, dim, kernel_dim, rank: r, betti: kernel_dim as i64 - prev_rank as i64 });
            prev_rank = r;
        }
        let euler = rows.iter().map(|r| sign(r.m) * r.dim as i64).sum();
        ComplexReport { mode: mode.to_string(), weight, rows, euler, seconds }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.m).collect()
    }

    pub fn dims(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.dim).collect()
    }

    pub fn kernels(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.kernel_dim).collect()
    }

    pub fn ranks(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.rank).collect()
    }

    pub fn betti(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.betti).collect()
    }

    /// Betti number in degree `m` (zero outside the reported range).
    pub fn betti_at(&self, m: u32) -> i64 {
        self.rows.iter().find(|r| r.m == m).map(|r| r.betti).unwrap_or(0)
    }

    /// `Σ (−1)^m betti_m`.
    pub fn betti_euler(&self) -> i64 {
        self.rows.iter().map(|r| sign(r.m) * r.betti).sum()
    }

    /// Stable structured text form; [`ComplexReport::parse`] reads it back.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{REPORT_HEADER}");
        let _ = writeln!(s, "mode = {}", self.mode);
        let _ = writeln!(s, "weight = {}", self.weight);
        let _ = writeln!(s, "euler = {}", self.euler);
        let _ = writeln!(s, "seconds = {:?}", self.seconds);
        let _ = writeln!(s, "columns = m dim ker rank betti");
        for r in &self.rows {
            let _ = writeln!(s, "row = {} {} {} {} {}", r.m, r.dim, r.kernel_dim, r.rank, r.betti);
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, EngineError> {
        let mut lines = text.lines().enumerate();
        let perr = |line: usize, msg: &str| EngineError::Parse { line: line + 1, msg: msg.to_string() };
        match lines.next() {
            Some((_, REPORT_HEADER)) => {}
            _ => return Err(perr(0, "missing report header")),
        }
        let (mut mode, mut weight, mut euler, mut seconds) = (None, None, None, None);
        let mut rows = Vec::new();
        for (k, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| perr(k, "expected `key = value`"))?;
            let value = value.trim();
            match key.trim() {
                "mode" => mode = Some(value.to_string()),
                "weight" => weight = Some(value.parse().map_err(|_| perr(k, "bad weight"))?),
                "euler" => euler = Some(value.parse().map_err(|_| perr(k, "bad euler"))?),
                "seconds" => seconds = Some(value.parse().map_err(|_| perr(k, "bad seconds"))?),
                "columns" => {
                    if value != "m dim ker rank betti" {
                        return Err(perr(k, "unsupported column layout"));
                    }
                }
                "row" => {
                    let v: Vec<i64> = value
                        .split_whitespace()
                        .map(|x| x.parse().map_err(|_| perr(k, "bad row entry")))
                        .collect::<Result<_, _>>()?;
                    if v.len() != 5 || v[..4].iter().any(|&x| x < 0) {
                        return Err(perr(k, "a row has five entries m dim ker rank betti"));
                    }
                    rows.push(DegreeRow {
                        m: v[0] as u32,
                        dim: v[1] as u64,
                        kernel_dim: v[2] as u64,
                        rank: v[3] as u64,
                        betti: v[4],
                    });
                }
                _ => return Err(perr(k, "unknown key")),
            }
        }
        Ok(ComplexReport {
            mode: mode.ok_or_else(|| perr(0, "missing mode"))?,
            weight: weight.ok_or_else(|| perr(0, "missing weight"))?,
            rows,
            euler: euler.ok_or_else(|| perr(0, "missing euler"))?,
            seconds: seconds.ok_or_else(|| perr(0, "missing seconds"))?,
        })
    }
}

fn sign(m: u32) -> i64 {
    if m.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Content hash identifying one cached report.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheKey(String);

impl CacheKey {
    /// Hashes the canonical structure text, the mode tag, the weight and
    /// [`CODE_VERSION`].
    pub fn new(spec: &ModeSpec, weight: i64) -> Self {
        let mut h = Sha256::new();
        for part in [spec.structure.to_text(), spec.tag(), weight.to_string(), CODE_VERSION.to_string()] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        CacheKey(hex::encode(h.finalize()))
    }

    pub fn hex(&self) -> &str {
        &self.0
    }

    /// `<dir>/<hex>.report`.
    pub fn path_in(&self, dir: &Path) -> PathBuf {
        dir.join(format!("{}.report", self.0))
    }
}

/// A violated invariant found by [`cross_check`] or [`oracle_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub name: &'static str,
    pub detail: String,
}

impl Violation {
    fn new(name: &'static str, detail: String) -> Self {
        Violation { name, detail }
    }
}

/// Internal consistency of a report: rank–nullity, the Betti formula and
/// both forms of the Euler characteristic.
pub fn cross_check(report: &ComplexReport) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut prev_rank = 0u64;
    for (k, r) in report.rows.iter().enumerate() {
        if r.kernel_dim + r.rank != r.dim {
            out.push(Violation::new(
                "rank-nullity",
                format!("m={}: ker {} + rank {} != dim {}", r.m, r.kernel_dim, r.rank, r.dim),
            ));
        }
        let next_dim = report.rows.get(k + 1).map(|n| n.dim).unwrap_or(0);
        if r.rank > next_dim {
            out.push(Violation::new("rank-bound", format!("m={}: rank {} exceeds dim C^{} = {next_dim}", r.m, r.rank, r.m + 1)));
        }
        let expected = r.kernel_dim as i64 - prev_rank as i64;
        if r.betti != expected || r.betti < 0 {
            out.push(Violation::new("betti", format!("m={}: betti {} but ker − previous rank = {expected}", r.m, r.betti)));
        }
        if k > 0 && report.rows[k - 1].m + 1 != r.m {
            out.push(Violation::new("degrees", format!("degree {} does not follow {}", r.m, report.rows[k - 1].m)));
        }
        prev_rank = r.rank;
    }
    let dims_euler: i64 = report.rows.iter().map(|r| sign(r.m) * r.dim as i64).sum();
    if dims_euler != report.euler || report.betti_euler() != report.euler {
        out.push(Violation::new(
            "euler",
            format!("stored {}, from dims {dims_euler}, from Betti {}", report.euler, report.betti_euler()),
        ));
    }
    out
}

/// Euler characteristic predicted from the diagram counts alone (`None` for
/// the π-annihilator subcomplex, which has no closed count).  The
/// Poisson-like complex starts at `m = 1`, so the empty wedge is removed.
pub fn predicted_euler(spec: &ModeSpec, w: i64) -> Option<i128> {
    match spec.mode {
        Mode::PolyModule => Some(euler_polymodule(spec.n(), spec.h(), w)),
        Mode::PiAnnihilator => None,
        Mode::PoissonLike => spec.caps().ok().map(|c| euler_combinatorial(&c, w) - i128::from(w == 0)),
        _ => spec.caps().ok().map(|c| euler_combinatorial(&c, w)),
    }
}

/// Independent oracles for a report computed from `spec`: the combinatorial
/// Euler characteristic and, for the Heisenberg and `sp(ℝ²)` polynomial
/// modules, the closed-form Betti and kernel predictions.
pub fn oracle_check(spec: &ModeSpec, report: &ComplexReport) -> Vec<Violation> {
    let mut out = Vec::new();
    let w = report.weight;
    if let Some(e) = predicted_euler(spec, w) {
        if e != report.euler as i128 {
            out.push(Violation::new("euler-formula", format!("computed {}, formula {e}", report.euler)));
        }
    }
    if spec.mode == Mode::PolyModule && w >= 0 {
        if let Some(pi) = spec.structure.as_poisson() {
            let betti: Vec<i64> = (0..4).map(|m| report.betti_at(m)).collect();
            let as_i64 = |v: [u64; 4]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
            if *pi == fixtures::heisenberg() {
                if let Ok(p) = heisenberg_closed_form(w) {
                    if as_i64(p) != betti {
                        out.push(Violation::new("closed-form", format!("Heisenberg Betti {betti:?}, predicted {p:?}")));
                    }
                }
                if let Ok(k) = heisenberg_kernel_closed_form(w) {
                    let kernels: Vec<u64> = report.kernels();
                    if kernels != k.to_vec() {
                        out.push(Violation::new("closed-form", format!("Heisenberg kernels {kernels:?}, predicted {k:?}")));
                    }
                }
            } else if *pi == fixtures::sp2() {
                if let Ok(p) = sp2_closed_form(w) {
                    if as_i64(p) != betti {
                        out.push(Violation::new("closed-form", format!("sp(2) Betti {betti:?}, predicted {p:?}")));
                    }
                }
            }
        }
    }
    out
}

/// Builds the complex of weight `w` for `spec`.
pub fn build_complex(spec: &ModeSpec, w: i64) -> Result<Box<dyn GradedComplex + Send>, EngineError> {
    Ok(match spec.mode {
        Mode::PolyModule => {
            let pi = spec.structure.as_poisson().ok_or(ComplexError::ModeMismatch { mode: spec.mode, needs: "an ordinary Poisson structure" })?;
            Box::new(PolyModuleComplex::new(pi, w))
        }
        Mode::PiAnnihilator => Box::new(AnnihilatorComplex::new(spec, w)?),
        _ => Box::new(LieComplex::new(spec, w)?),
    })
}

/// Structural verification of the weight-`w` complex: `d∘d = 0` in every
/// degree and, for wedge complexes, equality of homology and cohomology
/// Betti numbers.
pub fn verify_complex(spec: &ModeSpec, w: i64) -> Result<Vec<Violation>, EngineError> {
    let mut out = Vec::new();
    let cx = build_complex(spec, w)?;
    if let Some((lo, hi)) = cx.degree_range() {
        for m in lo..hi {
            if !cx.square_is_zero(m)? {
                out.push(Violation::new("d-squared", format!("d∘d != 0 from degree {m}")));
            }
        }
    }
    if !matches!(spec.mode, Mode::PolyModule | Mode::PiAnnihilator) {
        let lie = LieComplex::new(spec, w)?;
        let (hom, coh) = homology_vs_cohomology_check(&lie)?;
        if hom != coh {
            out.push(Violation::new("homology-duality", format!("homology {hom:?} vs cohomology {coh:?}")));
        }
    }
    Ok(out)
}

/// Ranks every differential of a built complex and assembles the report.
/// With `dump_dir`, each differential is also written in coordinate format.
pub fn analyze(
    cx: &(dyn GradedComplex + Send),
    mode: &str,
    w: i64,
    dump_dir: Option<&Path>,
) -> Result<ComplexReport, EngineError> {
    let start = Instant::now();
    let Some((lo, hi)) = cx.degree_range() else {
        return Ok(ComplexReport::from_ranks(mode, w, &[], start.elapsed().as_secs_f64()));
    };
    let ranks: Vec<(u32, u64, u64)> = (lo..=hi)
        .into_par_iter()
        .map(|m| -> Result<_, EngineError> {
            let dim = cx.dim(m) as u64;
            if m == hi || dim == 0 {
                return Ok((m, dim, 0));
            }
            let d = cx.differential(m)?;
            if let Some(dir) = dump_dir {
                let safe: String = mode.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
                let path = dir.join(format!("{safe}_w{w}_d{m}.mtx"));
                let mut f = io::BufWriter::new(fs::File::create(&path).map_err(io_err(&path))?);
                d.write_coordinates(&mut f).and_then(|_| f.flush()).map_err(io_err(&path))?;
            }
            Ok((m, dim, rank(&d) as u64))
        })
        .collect::<Result<_, _>>()?;
    Ok(ComplexReport::from_ranks(mode, w, &ranks, start.elapsed().as_secs_f64()))
}

/// Pipeline driver with optional cache, thread count and matrix dumps.
#[derive(Debug, Clone, Default)]
pub struct Engine {
    pub cache_dir: Option<PathBuf>,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    pub dump_dir: Option<PathBuf>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = Some(jobs);
        self
    }

    pub fn with_dump_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.dump_dir = Some(dir.into());
        self
    }

    /// One report per weight, in the given order.  Weights with no cochains
    /// give empty reports.
    pub fn run(&self, spec: &ModeSpec, weights: impl IntoIterator<Item = i64>) -> Result<Vec<ComplexReport>, EngineError> {
        let weights: Vec<i64> = weights.into_iter().collect();
        if weights.is_empty() {
            return Ok(Vec::new());
        }
        match self.jobs {
            None => weights.iter().map(|&w| self.run_weight(spec, w)).collect(),
            Some(jobs) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs.max(1))
                    .build()
                    .map_err(|e| EngineError::Pool(e.to_string()))?;
                pool.install(|| weights.iter().map(|&w| self.run_weight(spec, w)).collect())
            }
        }
    }

    /// The report of a single weight, served from the cache when present.
    pub fn run_weight(&self, spec: &ModeSpec, w: i64) -> Result<ComplexReport, EngineError> {
        let cached = self.cache_dir.as_ref().map(|dir| CacheKey::new(spec, w).path_in(dir));
        if let Some(path) = &cached {
            if let Ok(text) = fs::read_to_string(path) {
                if let Ok(report) = ComplexReport::parse(&text) {
                    return Ok(report);
                }
            }
        }
        if let Some(dir) = &self.dump_dir {
            fs::create_dir_all(dir).map_err(io_err(dir))?;
        }
        let start = Instant::now();
        let cx = build_complex(spec, w)?;
        let mut report = analyze(cx.as_ref(), &spec.tag(), w, self.dump_dir.as_deref())?;
        report.seconds = start.elapsed().as_secs_f64();
        if let Some(path) = &cached {
            write_atomically(path, &report.to_text())?;
        }
        Ok(report)
    }
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomically(path: &Path, text: &str) -> Result<(), EngineError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(dir))?;
    tmp.write_all(text.as_bytes()).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| EngineError::Io { path: path.to_path_buf(), source: e.error })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::Structure;

    fn sl2_spec() -> ModeSpec {
        ModeSpec::new(Mode::PolyBar, Structure::Poisson(fixtures::sl2())).unwrap()
    }

    #[test]
    fn sl2_weight_one() {
        let r = Engine::new().run_weight(&sl2_spec(), 1).unwrap();
        assert_eq!(r.dims(), vec![6, 18, 18, 6]);
        assert_eq!(r.kernels(), vec![1, 5, 13, 6]);
        assert_eq!(r.betti(), vec![1, 0, 0, 1]);
        assert_eq!(r.euler, 0);
        assert!(cross_check(&r).is_empty());
        assert!(oracle_check(&sl2_spec(), &r).is_empty());
    }

    #[test]
    fn corrupted_rank_is_reported() {
        let mut r = Engine::new().run_weight(&sl2_spec(), 1).unwrap();
        r.rows[1].rank += 1;
        r.rows[2].betti -= 1;
        let v = cross_check(&r);
        assert_eq!(v.iter().filter(|v| v.name == "rank-nullity").count(), 1);
    }

    #[test]
    fn report_round_trip() {
        let r = Engine::new().run_weight(&sl2_spec(), 2).unwrap();
        assert_eq!(ComplexReport::parse(&r.to_text()).unwrap(), r);
        let empty = ComplexReport::from_ranks("hamiltonian", -7, &[], 0.0);
        assert_eq!(ComplexReport::parse(&empty.to_text()).unwrap(), empty);
    }

    #[test]
    fn empty_weights() {
        assert!(Engine::new().run(&sl2_spec(), Vec::new()).unwrap().is_empty());
        let r = Engine::new().run_weight(&sl2_spec(), -5).unwrap();
        assert!(r.is_empty());
    }
}
