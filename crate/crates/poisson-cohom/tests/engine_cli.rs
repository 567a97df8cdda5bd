//! Engine caching and determinism, the structure files, golden corpus
//! handling and the command-line surface.

use std::fs;
use std::path::Path;
use std::process::Command as Process;

use clap::Parser;
use poisson_cohom::cli::{render_table, run, run_goldens, Cli, Outcome};
use poisson_cohom::complex::{Mode, ModeSpec};
use poisson_cohom::engine::{cross_check, CacheKey, ComplexReport, Engine};
use poisson_cohom::fixtures;
use poisson_cohom::poisson::{parse_structure, Structure};

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn heisenberg_ham() -> ModeSpec {
    ModeSpec::new(Mode::Hamiltonian, Structure::Poisson(fixtures::heisenberg())).unwrap()
}

fn run_cli(args: &[&str]) -> (anyhow::Result<Outcome>, String) {
    let cli = Cli::try_parse_from(std::iter::once("poisson-cohom").chain(args.iter().copied())).unwrap();
    let mut out = Vec::new();
    let r = run(&cli, &mut out);
    (r, String::from_utf8(out).unwrap())
}

#[test]
fn shipped_structure_files_match_fixtures() {
    for f in fixtures::all() {
        let path = manifest().join("structures").join(format!("{}.pstruct", f.name));
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(parse_structure(&text, true).unwrap(), f.structure, "{}", f.name);
    }
}

#[test]
fn heisenberg_hamiltonian_weight_four() {
    let r = Engine::new().run_weight(&heisenberg_ham(), 4).unwrap();
    assert_eq!(r.dims(), vec![20, 146, 322, 291, 100, 5]);
    assert_eq!(r.betti(), vec![6, 29, 57, 42, 8, 0]);
    assert!(cross_check(&r).is_empty());
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let engine = Engine::new().with_cache_dir(dir.path());
    let spec = heisenberg_ham();
    let first = engine.run_weight(&spec, 3).unwrap();
    let path = CacheKey::new(&spec, 3).path_in(dir.path());
    let stored = fs::read_to_string(&path).unwrap();
    assert_eq!(stored, first.to_text());
    assert!(path.file_name().unwrap().to_string_lossy().ends_with(".report"));
    let second = engine.run_weight(&spec, 3).unwrap();
    assert_eq!(second.to_text(), stored);
    // Different weight or mode → different key.
    assert_ne!(CacheKey::new(&spec, 3), CacheKey::new(&spec, 4));
    let bar = ModeSpec::new(Mode::PolyBar, Structure::Poisson(fixtures::heisenberg())).unwrap();
    assert_ne!(CacheKey::new(&spec, 3), CacheKey::new(&bar, 3));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let spec = ModeSpec::new(Mode::PolyBar, Structure::Poisson(fixtures::sl2())).unwrap();
    let strip = |r: &ComplexReport| (r.mode.clone(), r.weight, r.rows.clone(), r.euler);
    let one = Engine::new().with_jobs(1).run(&spec, 1..=4).unwrap();
    let three = Engine::new().with_jobs(3).run(&spec, 1..=4).unwrap();
    assert_eq!(one.iter().map(strip).collect::<Vec<_>>(), three.iter().map(strip).collect::<Vec<_>>());
}

#[test]
fn out_of_range_weight_is_an_empty_report() {
    let spec = ModeSpec::new(Mode::PolyBar, Structure::Poisson(fixtures::quadratic_case1())).unwrap();
    let r = Engine::new().run_weight(&spec, -1).unwrap();
    assert!(r.is_empty());
    assert!(render_table(&r).contains("(empty complex)"));
}

#[test]
fn tables_render_like_the_paper() {
    let spec = ModeSpec::new(Mode::PolyBar, Structure::Poisson(fixtures::sl2())).unwrap();
    let t = render_table(&Engine::new().run_weight(&spec, 1).unwrap());
    let expected = "poly-bar:start=1  weight 1\n\
                    m         1  2  3 4\n\
                    dim       6 18 18 6\n\
                    dim(ker)  1  5 13 6\n\
                    rank      5 13  5 0\n\
                    Betti     1  0  0 1\n\
                    Euler: 0\n";
    assert_eq!(t, expected);
    let case3 = ModeSpec::new(Mode::Hamiltonian, Structure::Poisson(fixtures::quadratic_case3())).unwrap();
    let r = Engine::new().run_weight(&case3, 2).unwrap();
    assert_eq!((r.dims(), r.betti()), (vec![5, 3], vec![2, 0]));
}

#[test]
fn structured_output_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_string_lossy().into_owned();
    let args = ["betti", "@solvable", "--mode", "hamiltonian", "--weights", "2", "--format", "structured", "--cache-dir", &cache];
    let (r1, out1) = run_cli(&args);
    let (r2, out2) = run_cli(&args);
    assert_eq!((r1.unwrap(), r2.unwrap()), (Outcome::Success, Outcome::Success));
    assert_eq!(out1, out2);
    let report = ComplexReport::parse(&out1).unwrap();
    assert_eq!(report.betti(), vec![3, 4, 1, 0]);
    assert_eq!(report.to_text(), out1);
}

#[test]
fn table_output_is_stable() {
    let args = ["betti", "@sl2", "--mode", "poly-bar", "--weights", "1..2"];
    let (_, a) = run_cli(&args);
    let (_, b) = run_cli(&args);
    assert_eq!(a, b);
}

#[test]
fn check_reports_jacobi_failures() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pstruct");
    fs::write(&bad, "n 3\nh 1\np 1 2 = x3\np 1 3 = x1\np 2 3 = x1\n").unwrap();
    let (r, out) = run_cli(&["check", &bad.to_string_lossy()]);
    assert_eq!(r.unwrap(), Outcome::Failure);
    assert!(out.contains("fails"));
    let (r, _) = run_cli(&["check", "@sl2"]);
    assert_eq!(r.unwrap(), Outcome::Success);
    let (r, _) = run_cli(&["betti", &bad.to_string_lossy(), "--mode", "poly-bar", "--weights", "1"]);
    assert!(r.is_err(), "a non-Poisson structure is bad input");
}

#[test]
fn casimir_diagrams_and_euler_commands() {
    let (r, out) = run_cli(&["casimir", "@sl2", "--degrees", "2"]);
    assert_eq!(r.unwrap(), Outcome::Success);
    assert!(out.contains("4*x1*x2 + x3^2"));
    let (r, out) = run_cli(&["diagrams", "@sl2", "--mode", "poly-bar", "--weight", "1"]);
    assert_eq!(r.unwrap(), Outcome::Success);
    assert!(out.contains("dim C^2 = 18"));
    let (r, out) = run_cli(&["euler", "@quadratic-case1", "--mode", "poly-bar", "--weights", "1..4", "--compute"]);
    assert_eq!(r.unwrap(), Outcome::Success);
    assert!(out.contains("w =   3  euler 7  computed 7"));
}

fn copy_goldens(names: &[&str], to: &Path) {
    for n in names {
        fs::copy(manifest().join("goldens").join(n), to.join(n)).unwrap();
    }
}

#[test]
fn perturbed_golden_fails_exactly_once() {
    let dir = tempfile::tempdir().unwrap();
    copy_goldens(&["sl2-bar-w1.golden", "heisenberg-ham-w2.golden", "pi-bar-module-w1.golden"], dir.path());
    let ok = run_goldens(dir.path(), &Engine::new(), false).unwrap();
    assert_eq!((ok.passed.len(), ok.failures.len()), (3, 0));

    let path = dir.path().join("heisenberg-ham-w2.golden");
    let text = fs::read_to_string(&path).unwrap().replace("betti = 4 9 10 5 0", "betti = 4 9 11 5 0");
    fs::write(&path, text).unwrap();
    let bad = run_goldens(dir.path(), &Engine::new(), false).unwrap();
    assert_eq!(bad.failures.len(), 1);
    assert_eq!(bad.failures[0].file, "heisenberg-ham-w2.golden");
    assert_eq!(bad.failures[0].problems.len(), 1);
    assert!(bad.failures[0].problems[0].contains("betti at m=3"));
    assert!(bad.render().contains("Heisenberg Hamiltonian quotient, weight 2 table"));
}

#[test]
fn empty_corpus_passes_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let s = run_goldens(dir.path(), &Engine::new(), false).unwrap();
    assert!(s.failures.is_empty() && s.passed.is_empty());
    assert_eq!(s.warnings.len(), 1);
}

#[test]
fn binary_exit_codes_and_cache_variable() {
    let bin = env!("CARGO_BIN_EXE_poisson-cohom");
    let dir = tempfile::tempdir().unwrap();
    let status = Process::new(bin)
        .args(["betti", "@heisenberg", "--mode", "poly-bar", "--weights", "1"])
        .env("POISSON_COHOM_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let spec = ModeSpec::new(Mode::PolyBar, Structure::Poisson(fixtures::heisenberg())).unwrap();
    assert!(CacheKey::new(&spec, 1).path_in(dir.path()).exists());

    let bad = Process::new(bin).args(["betti", "/nonexistent.pstruct", "--mode", "poly-bar", "--weights", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let usage = Process::new(bin).args(["betti"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));

    let corpus = tempfile::tempdir().unwrap();
    copy_goldens(&["sl2-bar-w1.golden"], corpus.path());
    let path = corpus.path().join("sl2-bar-w1.golden");
    fs::write(&path, fs::read_to_string(&path).unwrap().replace("betti = 1 0 0 1", "betti = 1 0 1 1")).unwrap();
    let failed = Process::new(bin).args(["goldens"]).arg(corpus.path()).env_remove("POISSON_COHOM_CACHE").output().unwrap();
    assert_eq!(failed.status.code(), Some(1));
}
