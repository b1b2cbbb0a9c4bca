use std::fs::File;
use std::process::{Command, Output};

use scdcn::harness::{
    export_bench, export_histogram, read_bench_csv, read_histogram_csv, run_bench, run_loadsim, sample_pairs,
    Algorithm, BenchConfig, LoadConfig, BENCH_HEADER, LOAD_HEADER,
};
use scdcn::topology::NetworkSpec;

fn scdcn(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scdcn")).args(args.split_whitespace()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn stats_json() {
    let o = scdcn("stats --family ficonn --k 2 --n 36 --json");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["servers"], 117648);
    assert_eq!(v["switches"], 3268);
    assert_eq!(v["links"], 161766);
    assert_eq!(v["g"], serde_json::json!([19, 172]));
}

#[test]
fn route_text() {
    let o = scdcn("route --family dcell --k 1 --n 3 --src 1 --dst 5");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 0 3 5\nlen=3 order=2\n");
    let o = scdcn("route --family beta_dcell --k 2 --n 3 --src 4 --dst 150 --algo bfs");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn validate_small() {
    let o = scdcn("validate --family beta_dcell --k 2 --n 3");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(scdcn("stats --family ficonn --k 2 --n 5").status.code(), Some(2));
    assert_eq!(scdcn("stats --family dcell --k 9 --n 100").status.code(), Some(2));
    assert_eq!(scdcn("bench --family dcell --k 2 --n 3").status.code(), Some(1));
    assert_eq!(scdcn("route --family dcell --k 1 --n 3 --src 0 --dst 12").status.code(), Some(1));
    assert_eq!(scdcn("frobnicate").status.code(), Some(1));
    assert_eq!(scdcn("--help").status.code(), Some(0));
    assert_eq!(scdcn("validate --family dcell --k 3 --n 6 --capacity-gib 0.001").status.code(), Some(3));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bench.csv");
    let o = scdcn(&format!(
        "bench --family beta_dcell --k 2 --n 3 --pairs 500 --seed 7 --threads 1 --out {}",
        path.display()
    ));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some(BENCH_HEADER));
    let records = read_bench_csv(text.as_bytes()).unwrap();
    let algos: Vec<Algorithm> = records.iter().map(|r| r.algo).collect();
    assert_eq!(algos, Algorithm::ALL.to_vec());
    assert!(records.iter().all(|r| r.pairs == 500 && r.seed == 7 && !r.is_skipped()));
}

#[test]
fn bench_skips_bfs_over_budget() {
    let o = scdcn("bench --family dcell --k 2 --n 18 --algos dim,bfs --pairs 50 --seed 1 --capacity-gib 0.0001");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "dcell,2,18,bfs,50,1,,,,,,,"), "{out}");
}

#[test]
fn loadsim_writes_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("load.csv");
    let o = scdcn(&format!(
        "loadsim --family dcell --k 2 --n 3 --algo dim --flows 2000 --seed 3 --out {}",
        path.display()
    ));
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some(LOAD_HEADER));
    let rows = read_histogram_csv(text.as_bytes()).unwrap();
    let total: f64 = rows.iter().map(|r| r.2).sum();
    assert!((total - 1.0).abs() < 1e-5);
}

#[test]
fn export_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = NetworkSpec::ficonn(2, 4).unwrap();
    let pairs = sample_pairs(&spec, 300, 11).unwrap();
    let records = run_bench(&spec, &Algorithm::ALL, &pairs, 11, &BenchConfig::default()).unwrap();
    let path = dir.path().join("b.csv");
    export_bench(&records, &path).unwrap();
    let back = read_bench_csv(File::open(&path).unwrap()).unwrap();
    assert_eq!(back.len(), records.len());
    for (a, b) in records.iter().zip(&back) {
        assert_eq!((a.algo, a.pairs, a.max_len), (b.algo, b.pairs, b.max_len));
        assert!((a.mean_len.unwrap() - b.mean_len.unwrap()).abs() < 1e-6);
    }

    let hist = run_loadsim(&spec, Algorithm::GpI, 1000, 5, &LoadConfig::default()).unwrap();
    let path = dir.path().join("h.csv");
    export_histogram(&hist, &path).unwrap();
    let rows = read_histogram_csv(File::open(&path).unwrap()).unwrap();
    let counts: Vec<(u64, u64)> = rows.iter().map(|r| (r.0, r.1)).collect();
    let want: Vec<(u64, u64)> = hist.rows().iter().map(|r| (r.0, r.1)).collect();
    assert_eq!(counts, want);
}
