//! End-to-end behavior of the `scatspec` binary and the file formats.

use scatspec::spectrum::{OperatorTag, SpectrumRecord};
use scatspec::Dim;
use scatspec_cli::io;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scatspec"))
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("scatspec_cli_{tag}_{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn herglotz_writes_contract_csv() {
    let dir = tempdir("herglotz");
    let out = dir.join("a10.csv");
    let st = run(&[
        "herglotz",
        "--n",
        "3",
        "--kappa",
        "10",
        "--floor",
        "1e-12",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        st.status.success(),
        "{}",
        String::from_utf8_lossy(&st.stderr)
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("rank,sigma,degree_ell"));
    let first = lines.next().unwrap();
    assert!(first.starts_with("1,"), "{first}");
    assert!(io::sidecar_path(&out).exists());

    // Q spectrum is the A spectrum rescaled by kappa^{-(n-1)/2} = 1/10
    let out_q = dir.join("q10.csv");
    let st = run(&[
        "herglotz",
        "--n",
        "3",
        "--kappa",
        "10",
        "--operator",
        "q",
        "--floor",
        "1e-13",
        "--out",
        out_q.to_str().unwrap(),
    ]);
    assert!(st.status.success());
    let a = io::read_spectrum_csv(&out, None, None, None).unwrap();
    let q = io::read_spectrum_csv(&out_q, None, None, None).unwrap();
    for (ea, eq) in a.entries.iter().zip(&q.entries) {
        let rel = (eq.sigma * 10.0 - ea.sigma).abs() / ea.sigma;
        assert!(rel < 1e-15, "rank {}", ea.rank);
    }
}

#[test]
fn farfield_single_cell_value() {
    let dir = tempdir("farfield");
    let out = dir.join("f1.csv");
    let st = run(&[
        "farfield",
        "--n",
        "2",
        "--kappa",
        "1",
        "--grid",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(st.status.success());
    let rec = io::read_spectrum_csv(&out, None, None, None).unwrap();
    assert_eq!(rec.len(), 1);
    let two_pi = 2.0 * std::f64::consts::PI;
    assert!((rec.entries[0].sigma - two_pi).abs() < 1e-14);
    // no degree column for far-field spectra
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("rank,sigma\n"));
}

#[test]
fn csv_round_trip_is_bit_faithful() {
    let dir = tempdir("roundtrip");
    let path = dir.join("spec.csv");
    // awkward values: subnormal-ish, near-integer, many digits
    let sigmas = [
        2.0 * std::f64::consts::PI,
        1.0,
        0.12345678901234568,
        1.0000000000000002,
        3.141592653589793e-120,
        f64::MIN_POSITIVE, // smallest normal
    ];
    let record = SpectrumRecord::from_unsorted(
        Dim::Three,
        7.5,
        OperatorTag::HerglotzA,
        sigmas.iter().map(|s| (*s, Some(3))).collect(),
        BTreeMap::new(),
    );
    io::write_spectrum_csv(&record, &path).unwrap();
    let back = io::read_spectrum_csv(&path, None, None, None).unwrap();
    assert_eq!(back.len(), record.len());
    for (a, b) in record.entries.iter().zip(&back.entries) {
        assert_eq!(a.sigma.to_bits(), b.sigma.to_bits(), "rank {}", a.rank);
        assert_eq!(a.degree, b.degree);
        assert_eq!(a.rank, b.rank);
    }
    assert_eq!(back.dim, Dim::Three);
    assert_eq!(back.kappa, 7.5);
    assert_eq!(back.operator, OperatorTag::HerglotzA);
}

#[test]
fn outputs_are_byte_identical_across_runs_and_threads() {
    let dir = tempdir("determinism");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    let st = run(&[
        "farfield",
        "--n",
        "2",
        "--kappa",
        "4",
        "--grid",
        "12",
        "--out",
        a.to_str().unwrap(),
        "--threads",
        "1",
    ]);
    assert!(st.status.success());
    let st = run(&[
        "farfield",
        "--n",
        "2",
        "--kappa",
        "4",
        "--grid",
        "12",
        "--out",
        b.to_str().unwrap(),
        "--threads",
        "4",
    ]);
    assert!(st.status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(
        std::fs::read(io::sidecar_path(&a)).unwrap(),
        std::fs::read(io::sidecar_path(&b)).unwrap()
    );

    // seeded verification reports are reproducible too
    let r1 = run(&["verify", "determinant", "--trials", "64", "--seed", "11"]);
    let r2 = run(&["verify", "determinant", "--trials", "64", "--seed", "11"]);
    assert_eq!(r1.stdout, r2.stdout);
    assert!(!r1.stdout.is_empty());
}

#[test]
fn verify_exit_code_contract() {
    // all pass -> 0
    let ok = run(&["verify", "determinant", "--trials", "100", "--seed", "7"]);
    assert_eq!(ok.status.code(), Some(0));
    let lines = String::from_utf8(ok.stdout).unwrap();
    assert_eq!(lines.lines().count(), 100);
    assert!(lines.lines().all(|l| l.contains("\"pass\":true")));

    // impossible threshold -> every report fails -> 3
    let bad = run(&[
        "verify",
        "coarea2",
        "--n",
        "2",
        "--h",
        "gauss",
        "--max-rel-diff",
        "1e-30",
    ]);
    assert_eq!(bad.status.code(), Some(3));
    let lines = String::from_utf8(bad.stdout).unwrap();
    assert!(lines.lines().any(|l| l.contains("\"pass\":false")));

    // usage error -> 1
    let usage = run(&["verify", "not-an-identity"]);
    assert_eq!(usage.status.code(), Some(1));

    // compute failure (grid over the row cap) -> 2
    let compute = run(&[
        "farfield",
        "--n",
        "2",
        "--kappa",
        "1",
        "--grid",
        "150",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(compute.status.code(), Some(2));

    // missing seed on a randomized check -> usage error
    let seedless = run(&["verify", "determinant", "--trials", "10"]);
    assert_eq!(seedless.status.code(), Some(1));
}

#[test]
fn fit_recovers_synthetic_power_law() {
    let dir = tempdir("fit");
    let csv = dir.join("pow.csv");
    let mut text = String::from("x,y\n");
    for j in 1..=60 {
        let x = j as f64;
        text.push_str(&format!("{},{}\n", x, x.powf(-0.5)));
    }
    std::fs::write(&csv, text).unwrap();
    let out = run(&["fit", "--input", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let slope = v["slope"].as_f64().unwrap();
    assert!((slope + 0.5).abs() < 1e-12, "slope {slope}");
    assert!((v["r_squared"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn fit_reports_parse_errors_with_line_numbers() {
    let dir = tempdir("fiterr");
    let csv = dir.join("bad.csv");
    std::fs::write(&csv, "x,y\n1,2\n3,oops\n").unwrap();
    let out = run(&["fit", "--input", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(":3:"), "missing line number: {err}");
}

#[test]
fn sweep_then_sigma1_fit() {
    let dir = tempdir("sweep");
    let sw = dir.join("sw");
    let st = run(&[
        "sweep",
        "--n",
        "2",
        "--kappas",
        "2,4,8",
        "--grid",
        "16",
        "--normalized",
        "--mode",
        "top-k",
        "--top-k",
        "4",
        "--out-dir",
        sw.to_str().unwrap(),
    ]);
    assert!(
        st.status.success(),
        "{}",
        String::from_utf8_lossy(&st.stderr)
    );
    assert!(sw.join("sigma1.csv").exists());
    assert!(sw.join("farfield_n2_kappa4.csv").exists());
    let out = run(&["fit", "--input", sw.to_str().unwrap(), "--mode", "sigma1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let slope = v["slope"].as_f64().unwrap();
    assert!(slope < -0.3 && slope > -0.8, "slope {slope}");
}

#[test]
fn plot_emits_polylines_and_decade_ticks() {
    let dir = tempdir("plot");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    let mut text = String::from("rank,sigma\n");
    for j in 1..=50 {
        text.push_str(&format!("{},{}\n", j, 10.0 / (j as f64)));
    }
    std::fs::write(&a, &text).unwrap();
    let mut text = String::from("rank,sigma\n");
    for j in 1..=50 {
        text.push_str(&format!("{},{}\n", j, (j as f64).powf(-0.25)));
    }
    std::fs::write(&b, &text).unwrap();
    let svg_path = dir.join("p.svg");
    let st = run(&[
        "plot",
        "--inputs",
        &format!("{},{}", a.display(), b.display()),
        "--logx",
        "--logy",
        "--ref-slope",
        "-0.25",
        "--out",
        svg_path.to_str().unwrap(),
    ]);
    assert!(
        st.status.success(),
        "{}",
        String::from_utf8_lossy(&st.stderr)
    );
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);
    assert!(svg.contains("stroke-dasharray"), "reference line missing");
    assert!(
        svg.contains(">1e0<") || svg.contains(">1e-1<"),
        "decade tick labels missing"
    );
    assert!(
        svg.contains(">a<") && svg.contains(">b<"),
        "legend labels missing"
    );

    // empty series must error
    let empty = dir.join("empty.csv");
    std::fs::write(&empty, "rank,sigma\n").unwrap();
    let st = run(&[
        "plot",
        "--inputs",
        empty.to_str().unwrap(),
        "--out",
        dir.join("no.svg").to_str().unwrap(),
    ]);
    assert_eq!(st.status.code(), Some(2));
}

#[test]
fn fit_tail_mode_on_herglotz_spectrum() {
    let dir = tempdir("tail");
    let csv = dir.join("h.csv");
    let st = run(&[
        "herglotz",
        "--n",
        "3",
        "--kappa",
        "8",
        "--floor",
        "1e-16",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(st.status.success());
    let out = run(&["fit", "--input", csv.to_str().unwrap(), "--mode", "tail"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["slope"].as_f64().unwrap() < 0.0);
    assert!(v["r_squared"].as_f64().unwrap() > 0.97);
    assert!(v["knee_index"].as_u64().unwrap() > 20);
}

fn spectrum_fixture(path: &Path) {
    let mut text = String::from("rank,sigma\n");
    for j in 1..=120 {
        let sigma = if j <= 40 {
            1.0
        } else {
            (-(j as f64 - 40.0) / 6.0).exp()
        };
        text.push_str(&format!("{j},{sigma}\n"));
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn fit_stable_mode_needs_dimension_hints_without_sidecar() {
    let dir = tempdir("hints");
    let csv = dir.join("s.csv");
    spectrum_fixture(&csv);
    // no sidecar, no hints -> usage error
    let st = run(&["fit", "--input", csv.to_str().unwrap(), "--mode", "stable"]);
    assert_eq!(st.status.code(), Some(1));
    let st = run(&[
        "fit",
        "--input",
        csv.to_str().unwrap(),
        "--mode",
        "stable",
        "--n",
        "2",
        "--operator",
        "Farfield_F",
    ]);
    assert!(
        st.status.success(),
        "{}",
        String::from_utf8_lossy(&st.stderr)
    );
}

mod roundtrip_property {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        /// Any positive finite spectrum survives CSV serialization
        /// bit-for-bit.
        #[test]
        fn csv_round_trip_property(
            raw in prop::collection::vec(1e-300_f64..1e300, 1..40),
        ) {
            let dir = std::env::temp_dir()
                .join(format!("scatspec_prop_{}", std::process::id()));
            std::fs::create_dir_all(&dir).unwrap();
            let path = dir.join("prop.csv");
            let record = SpectrumRecord::from_unsorted(
                Dim::Two,
                1.5,
                OperatorTag::FarfieldF,
                raw.iter().map(|s| (*s, None)).collect(),
                BTreeMap::new(),
            );
            io::write_spectrum_csv(&record, &path).unwrap();
            let back = io::read_spectrum_csv(&path, None, None, None).unwrap();
            prop_assert_eq!(record.len(), back.len());
            for (a, b) in record.entries.iter().zip(&back.entries) {
                prop_assert_eq!(a.sigma.to_bits(), b.sigma.to_bits());
            }
        }
    }
}
