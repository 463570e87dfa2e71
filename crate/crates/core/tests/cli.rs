use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn gdewalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gdewalk")).args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--output-dir", dir.to_str().unwrap()]);
    gdewalk(&full)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn simulate_writes_frames_heatmap_and_manifest() {
    let dir = TempDir::new().unwrap();
    let out = run_in(dir.path(), &["simulate", "--R", "0.8", "--rho", "0.2", "--n", "20", "--t", "30"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("simulate: n=20 frames=30"));

    let csv = fs::read_to_string(dir.path().join("frames.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,x,prob_plus,prob_minus,prob_total"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 20 * 30);
    for r in &rows {
        assert!((r[2] + r[3] - r[4]).abs() < 1e-15);
    }
    // the quarter init puts probability 1/4 on the lattice and the walk keeps it
    for t in 0..30 {
        let sum: f64 = rows.iter().filter(|r| r[0] == t as f64).map(|r| r[4]).sum();
        assert!((sum - 0.25).abs() < 1e-12, "t={t}: {sum}");
    }

    let manifest = fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    for key in ["command=simulate", "n=20", "t=30", "init=quarter", "file=frames.csv", "file=heatmap.pgm"] {
        assert!(manifest.lines().any(|l| l == key), "missing {key}");
    }
    assert_eq!(fs::read_to_string(dir.path().join("heatmap.pgm")).unwrap(), golden("walk_r0.8_rho0.2_n20_t30.pgm"));
}

#[test]
fn showcase_heatmaps_match_golden() {
    let dir = TempDir::new().unwrap();
    let out = run_in(dir.path(), &["simulate", "--R", "0.8", "--rho", "0", "--formats", "pgm"]);
    assert!(out.status.success());
    assert!(!dir.path().join("frames.csv").exists());
    let pgm = fs::read_to_string(dir.path().join("heatmap.pgm")).unwrap();
    assert_eq!(pgm, golden("walk_r0.8_rho0_n100_t300.pgm"));

    let dir = TempDir::new().unwrap();
    let args = [
        "simulate", "--R", "0.4", "--rho", "0.5235987755982988", "--n", "40", "--t", "60", "--norm", "global",
        "--formats", "pgm",
    ];
    assert!(run_in(dir.path(), &args).status.success());
    let pgm = fs::read_to_string(dir.path().join("heatmap.pgm")).unwrap();
    assert_eq!(pgm, golden("walk_r0.4_rhopi6_n40_t60_global.pgm"));
}

#[test]
fn zero_rho_golden_is_mirror_symmetric() {
    let pgm = golden("walk_r0.8_rho0_n100_t300.pgm");
    let mut lines = pgm.lines();
    assert_eq!(lines.next(), Some("P2"));
    assert_eq!(lines.next(), Some("100 300"));
    assert_eq!(lines.next(), Some("255"));
    let rows: Vec<Vec<u32>> = lines.map(|l| l.split(' ').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 300);
    for row in &rows {
        let mirrored: Vec<u32> = row.iter().rev().copied().collect();
        assert_eq!(*row, mirrored);
        assert_eq!(row.iter().max(), Some(&255));
    }
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["simulate", "--R", "0.4", "--rho", "0.3", "--n", "24", "--t", "40"];
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let (oa, ob) = (run_in(a.path(), &args), run_in(b.path(), &args));
    assert_eq!(oa.stdout, ob.stdout);
    for f in ["frames.csv", "heatmap.pgm", "manifest.txt"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn dense_engine_produces_same_frames() {
    let base = ["simulate", "--R", "0.6", "--rho", "0.4", "--n", "16", "--t", "25", "--formats", "csv"];
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    assert!(run_in(a.path(), &base).status.success());
    let mut dense = base.to_vec();
    dense.extend(["--engine", "dense"]);
    assert!(run_in(b.path(), &dense).status.success());
    let parse = |d: &TempDir| -> Vec<f64> {
        fs::read_to_string(d.path().join("frames.csv"))
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
            .collect()
    };
    for (x, y) in parse(&a).iter().zip(parse(&b)) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn spectrum_and_paths_outputs() {
    let dir = TempDir::new().unwrap();
    let out = run_in(dir.path(), &["spectrum", "--R", "0.8", "--rho", "0.2", "--n", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("spectrum: 12 eigenvalues"));
    let csv = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert!(csv.starts_with("k,theta,branch,re,im,modulus\n"));
    for line in csv.lines().skip(1) {
        let modulus: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!((modulus - 1.0).abs() < 1e-10);
    }

    let dir = TempDir::new().unwrap();
    let out = run_in(dir.path(), &["paths", "--R", "0.8", "--rho", "0.2", "--n", "8", "--t", "3", "--site", "2"]);
    assert!(out.status.success());
    // 4^3 strings, each of which starts from a unit amplitude
    assert!(stdout(&out).contains("from 64 strings"));
    let csv = fs::read_to_string(dir.path().join("paths.csv")).unwrap();
    assert!(csv.starts_with("site,spin,re,im,path_count\n"));
    let prob: f64 = csv
        .lines()
        .skip(1)
        .map(|l| {
            let v: Vec<&str> = l.split(',').collect();
            let (re, im): (f64, f64) = (v[2].parse().unwrap(), v[3].parse().unwrap());
            re * re + im * im
        })
        .sum();
    assert!((prob - 1.0).abs() < 1e-12);
}

#[test]
fn coeffs_prints_roots_and_residuals() {
    let dir = TempDir::new().unwrap();
    // coeffs still needs its output directory for the manifest
    let blocker = dir.path().join("plain-file");
    fs::write(&blocker, "x").unwrap();
    let out = run_in(&blocker.join("sub"), &["coeffs"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run_in(dir.path(), &["coeffs", "--R", "0.4", "--rho", "0.5235987755982988"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let r1: f64 = text.lines().find_map(|l| l.strip_prefix("r1=")).unwrap().parse().unwrap();
    let r2: f64 = text.lines().find_map(|l| l.strip_prefix("r2=")).unwrap().parse().unwrap();
    assert!((r1 - 0.07585312423256163).abs() < 1e-15);
    assert!((r2 - 0.9133708466686242).abs() < 1e-15);
    assert!(text.lines().last().unwrap().starts_with("coeffs: max_residual="));
}

#[test]
fn converge_reports_order() {
    let dir = TempDir::new().unwrap();
    let out = run_in(dir.path(), &["converge", "--m", "1", "--rho", "0.5235987755982988", "--base-n", "32", "--levels", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let order: f64 = text.split("fitted_order=").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!(order > 0.5, "{order}");
    let csv = fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
    assert!(csv.starts_with("epsilon,n,steps,error,fitted_order\n"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad_mass = run_in(dir.path(), &["simulate", "--R", "1.5"]);
    assert_eq!(bad_mass.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_mass.stderr).starts_with("error:"));

    let no_coin = run_in(dir.path(), &["simulate", "--R", "0.8", "--rho", "1"]);
    assert_eq!(no_coin.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&no_coin.stderr).contains("no real coin"));

    assert_eq!(gdewalk(&["bogus"]).status.code(), Some(2));
    assert_eq!(gdewalk(&["simulate", "--n", "many"]).status.code(), Some(2));
    assert_eq!(gdewalk(&[]).status.code(), Some(2));
    assert_eq!(gdewalk(&["--version"]).status.code(), Some(0));
}
