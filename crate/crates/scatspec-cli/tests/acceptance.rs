//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `--nocapture` to see them all).
//!
//! Criteria 4, 10 and the n=2, kappa=5 sub-case of criterion 11 encode
//! expectations that the measured operators do not meet; those tests
//! report FAIL with the measured numbers rather than loosening the check.

use scatspec::farfield::{farfield_singular_values, GridSpec};
use scatspec::herglotz::{herglotz_singular_values, lambda_ell};
use scatspec::identity::{
    check_ah_limit, check_coarea, check_hs_norm, cross_check_sigma, determinant_trials,
    CheckResolution, CoareaForm, RadialProfile,
};
use scatspec::linalg::{eigen_symmetric_full, EigenMode, SymmetricMatrixBuffer};
use scatspec::region::{detect_knee, fit_loglog, summarize_regions, FitTransform};
use scatspec::special::{bessel_j, BesselOrder};
use scatspec::spectrum::{OperatorTag, SpectrumRecord, Truncation};
use scatspec::Dim;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;
use std::time::Instant;

#[allow(clippy::excessive_precision)]
mod support {
    include!("../../scatspec/tests/support/bessel_table.rs");
}

fn conclude(criterion: u32, pass: bool, detail: &str) {
    println!(
        "criterion {criterion:02}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion:02}: {detail}");
}

/// Far-field m=60 full spectra shared by criteria 10 and 11.
fn farfield_m60(kappa: f64) -> &'static SpectrumRecord {
    static K4: OnceLock<SpectrumRecord> = OnceLock::new();
    static K8: OnceLock<SpectrumRecord> = OnceLock::new();
    let slot = if kappa == 4.0 { &K4 } else { &K8 };
    slot.get_or_init(|| {
        let grid = GridSpec::new(Dim::Two, 60).expect("grid");
        farfield_singular_values(Dim::Two, kappa, grid, true, EigenMode::Full).expect("spectrum")
    })
}

#[test]
fn criterion_01_farfield_sigma1_slope_n2() {
    let t0 = Instant::now();
    let grid = GridSpec::new(Dim::Two, 60).unwrap();
    let mut points = Vec::new();
    for kappa in [2.0, 4.0, 8.0, 16.0, 32.0] {
        let rec = farfield_singular_values(Dim::Two, kappa, grid, true, EigenMode::TopK(8))
            .expect("sweep point");
        points.push((kappa, rec.entries[0].sigma));
    }
    let fit = fit_loglog(&points, FitTransform::LogKappa, None).unwrap();
    let pass = (-0.55..=-0.45).contains(&fit.slope);
    conclude(
        1,
        pass,
        &format!(
            "sigma1(Ftilde) vs kappa slope {:.5} (band [-0.55, -0.45], R^2 {:.4}) in {:.1?}",
            fit.slope,
            fit.r_squared,
            t0.elapsed()
        ),
    );
}

#[test]
fn criterion_02_farfield_sigma1_slope_n3() {
    let t0 = Instant::now();
    let grid = GridSpec::new(Dim::Three, 12).unwrap();
    let mut points = Vec::new();
    for kappa in [2.0, 4.0, 8.0] {
        let rec = farfield_singular_values(Dim::Three, kappa, grid, true, EigenMode::TopK(64))
            .expect("sweep point");
        points.push((kappa, rec.entries[0].sigma));
    }
    let fit = fit_loglog(&points, FitTransform::LogKappa, None).unwrap();
    let pass = (-1.15..=-0.85).contains(&fit.slope);
    conclude(
        2,
        pass,
        &format!(
            "sigma1(Ftilde) vs kappa slope {:.5} (band [-1.15, -0.85]) in {:.1?}",
            fit.slope,
            t0.elapsed()
        ),
    );
}

fn herglotz_n3(kappa: f64) -> SpectrumRecord {
    herglotz_singular_values(Dim::Three, kappa, Truncation::SigmaFloor(1e-30)).expect("spectrum")
}

#[test]
fn criterion_03_herglotz_plateau() {
    let t0 = Instant::now();
    let mut medians = Vec::new();
    let mut detail = String::new();
    let mut pass = true;
    for kappa in [5.0, 10.0, 20.0] {
        let rec = herglotz_n3(kappa);
        let hi = (0.5 * kappa * kappa).floor() as usize;
        let window: Vec<f64> = rec.entries[..hi.min(rec.len())]
            .iter()
            .map(|e| e.sigma)
            .collect();
        let min = window.iter().cloned().fold(f64::MAX, f64::min);
        let max = window.iter().cloned().fold(f64::MIN, f64::max);
        let mut sorted = window.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        medians.push(sorted[sorted.len() / 2]);
        let ratio = min / max;
        pass &= ratio >= 0.2;
        detail.push_str(&format!("k={kappa}: min/max {ratio:.3}; "));
    }
    let spread = medians.iter().cloned().fold(f64::MIN, f64::max)
        / medians.iter().cloned().fold(f64::MAX, f64::min);
    pass &= spread <= 2.0;
    detail.push_str(&format!(
        "median spread {spread:.3} (cap 2.0) in {:.1?}",
        t0.elapsed()
    ));
    conclude(3, pass, &detail);
}

#[test]
fn criterion_04_herglotz_tail() {
    let t0 = Instant::now();
    let mut detail = String::new();
    let mut pass = true;
    let mut scaled_slopes = Vec::new();
    for kappa in [5.0, 10.0, 20.0] {
        let rec = herglotz_n3(kappa);
        let points = rec.rank_sigma_points();
        let k2 = kappa * kappa;
        let fit = fit_loglog(
            &points,
            FitTransform::PowRank(0.5),
            Some((4.0 * k2, 10.0 * k2)),
        )
        .expect("tail fit");
        pass &= fit.slope < 0.0;
        pass &= fit.r_squared >= 0.99;
        scaled_slopes.push((fit.slope * kappa).abs());
        detail.push_str(&format!(
            "k={kappa}: slope {:.4} R^2 {:.4} |s*k| {:.2}; ",
            fit.slope,
            fit.r_squared,
            fit.slope * kappa
        ));
    }
    let mean = scaled_slopes.iter().sum::<f64>() / scaled_slopes.len() as f64;
    let within = scaled_slopes.iter().all(|s| (s - mean).abs() <= 0.3 * mean);
    pass &= within;
    detail.push_str(&format!(
        "|s*k| within +-30% of mean: {within} in {:.1?}",
        t0.elapsed()
    ));
    conclude(4, pass, &detail);
}

#[test]
fn criterion_05_cross_formula_identity() {
    let t0 = Instant::now();
    let mut worst: f64 = 0.0;
    for kappa in [1.0, 5.0, 10.0] {
        for rep in cross_check_sigma(kappa, 50).expect("cross check") {
            if rep.lhs.max(rep.rhs) >= 1e-12 {
                worst = worst.max(rep.rel_diff);
            }
        }
    }
    conclude(
        5,
        worst <= 1e-8,
        &format!(
            "worst rel_diff {worst:.2e} (cap 1e-8) in {:.1?}",
            t0.elapsed()
        ),
    );
}

#[test]
fn criterion_06_coarea_exactness() {
    let t0 = Instant::now();
    let mut pass = true;
    let mut detail = String::new();
    for (dim, exact) in [(Dim::Two, 4.0 * PI * PI), (Dim::Three, 16.0 * PI * PI)] {
        let rep = check_coarea(
            dim,
            CoareaForm::Plain,
            RadialProfile::One,
            CheckResolution::default_for(dim),
        );
        let lhs_err = (rep.lhs - exact).abs();
        let rhs_err = (rep.rhs - exact).abs();
        pass &= lhs_err <= 1e-8 && rhs_err <= 1e-8;
        detail.push_str(&format!(
            "n={}: |lhs-exact| {lhs_err:.1e} |rhs-exact| {rhs_err:.1e}; ",
            dim.n()
        ));
    }
    let corpus = [
        RadialProfile::One,
        RadialProfile::Gauss,
        RadialProfile::Shell,
        RadialProfile::CosR,
    ];
    let mut worst: f64 = 0.0;
    for dim in [Dim::Two, Dim::Three] {
        for profile in corpus {
            for form in [CoareaForm::WithSine, CoareaForm::Plain] {
                let rep = check_coarea(dim, form, profile, CheckResolution::default_for(dim));
                worst = worst.max(rep.rel_diff);
            }
        }
    }
    pass &= worst <= 1e-6;
    detail.push_str(&format!(
        "corpus worst rel_diff {worst:.2e} (cap 1e-6) in {:.1?}",
        t0.elapsed()
    ));
    conclude(6, pass, &detail);
}

#[test]
fn criterion_07_hs_norm_identity() {
    let t0 = Instant::now();
    let mut pass = true;
    let mut detail = String::new();
    for kappa in [1.0, 2.0] {
        let rep = check_hs_norm(
            Dim::Three,
            kappa,
            RadialProfile::GaussHalf,
            CheckResolution::default_for(Dim::Three),
        );
        let closed = 4.0 * PI * PI * (1.0 - (-4.0 * kappa * kappa).exp());
        let lhs_rel = (rep.lhs - closed).abs() / closed;
        let rhs_rel = (rep.rhs - closed).abs() / closed;
        pass &= lhs_rel <= 1e-6 && rhs_rel <= 1e-6;
        detail.push_str(&format!(
            "n=3 k={kappa}: lhs {lhs_rel:.1e} rhs {rhs_rel:.1e}; "
        ));
    }
    let rep = check_hs_norm(
        Dim::Two,
        1.0,
        RadialProfile::GaussHalf,
        CheckResolution::default_for(Dim::Two),
    );
    pass &= rep.rel_diff <= 1e-6;
    detail.push_str(&format!(
        "n=2 rel_diff {:.1e} in {:.1?}",
        rep.rel_diff,
        t0.elapsed()
    ));
    conclude(7, pass, &detail);
}

#[test]
fn criterion_08_determinant_identity() {
    let t0 = Instant::now();
    let reports = determinant_trials(10, 1000, 0x5eed);
    let worst = reports.iter().map(|r| r.rel_diff).fold(0.0_f64, f64::max);
    conclude(
        8,
        reports.len() == 1000 && worst <= 1e-10,
        &format!(
            "1000 trials worst rel_diff {worst:.2e} (cap 1e-10) in {:.1?}",
            t0.elapsed()
        ),
    );
}

#[test]
fn criterion_09_ah_limit() {
    let t0 = Instant::now();
    let mut pass = true;
    let mut detail = String::new();
    // closed form |sin(2k)| / (2 pi k) at n=3, ell=0
    for kappa in [PI, 5.0, 47.0, 160.0] {
        let gap = (lambda_ell(Dim::Three, kappa, 0).unwrap() - 1.0 / PI).abs();
        let closed = (2.0 * kappa).sin().abs() / (2.0 * PI * kappa);
        let err = (gap - closed).abs();
        pass &= err <= 1e-10;
        detail.push_str(&format!("k={kappa:.2}: |gap-closed| {err:.1e}; "));
    }
    // O(1/kappa) scaling at n=2, ell=3
    let reps = check_ah_limit(Dim::Two, 3, &[10.0, 160.0]).unwrap();
    let g10 = (reps[0].lhs - reps[0].rhs).abs() * 10.0;
    let g160 = (reps[1].lhs - reps[1].rhs).abs() * 160.0;
    let ratio = g160 / g10;
    pass &= (0.1..=10.0).contains(&ratio);
    detail.push_str(&format!(
        "n=2 ell=3 (gap*k) ratio {ratio:.3} (band [0.1, 10]) in {:.1?}",
        t0.elapsed()
    ));
    conclude(9, pass, &detail);
}

#[test]
fn criterion_10_farfield_stable_slope() {
    let t0 = Instant::now();
    let rec = farfield_m60(8.0);
    let summary = summarize_regions(rec).expect("region summary");
    let fit = summary.stable_fit.expect("stable fit");
    let pass = (-0.35..=-0.15).contains(&fit.slope);
    conclude(
        10,
        pass,
        &format!(
            "stable_fit slope {:.4} over window {:?} (band [-0.35, -0.15], target -0.25), knee {} in {:.1?}",
            fit.slope,
            fit.window,
            summary.knee.index,
            t0.elapsed()
        ),
    );
}

#[test]
fn criterion_11_knee_locations() {
    let t0 = Instant::now();
    let mut pass = true;
    let mut detail = String::new();
    for dim in [Dim::Two, Dim::Three] {
        for kappa in [5.0, 10.0, 20.0] {
            let rec = herglotz_singular_values(dim, kappa, Truncation::SigmaFloor(1e-30)).unwrap();
            let knee = detect_knee(&rec).unwrap();
            let scale = kappa.powi(dim.n() as i32 - 1);
            let ratio = knee.index as f64 / scale;
            pass &= (0.5..=2.0).contains(&ratio);
            detail.push_str(&format!("H n={} k={kappa}: {ratio:.3}; ", dim.n()));
        }
    }
    for kappa in [4.0, 8.0] {
        let rec = farfield_m60(kappa);
        let knee = detect_knee(rec).unwrap();
        let ratio = knee.index as f64 / (kappa * kappa);
        pass &= (0.5..=2.0).contains(&ratio);
        detail.push_str(&format!("F n=2 k={kappa}: {ratio:.3}; "));
    }
    detail.push_str(&format!("(band [0.5, 2]) in {:.1?}", t0.elapsed()));
    conclude(11, pass, &detail);
}

#[test]
fn criterion_12_infrastructure() {
    let t0 = Instant::now();
    let mut pass = true;
    let mut detail = String::new();

    // Bessel corpus against the frozen 60-digit series oracle
    let mut worst: f64 = 0.0;
    for &(twice, x, expected) in support::BESSEL_ORACLE {
        let got = bessel_j(BesselOrder::from_twice(twice).unwrap(), x).unwrap();
        worst = worst.max((got - expected).abs() / expected.abs());
    }
    pass &= support::BESSEL_ORACLE.len() >= 50 && worst <= 1e-10;
    detail.push_str(&format!(
        "bessel {} pts worst rel {worst:.2e}; ",
        support::BESSEL_ORACLE.len()
    ));

    // eigensolver reconstruction on a random 200x200
    let n = 200;
    let mut rng = 0x243f6a8885a308d3_u64;
    let mut next = move || {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        (rng >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let mut m = SymmetricMatrixBuffer::zeros(n);
    for i in 0..n {
        for j in i..n {
            m.set_sym(i, j, next());
        }
    }
    let eig = eigen_symmetric_full(&m, true).unwrap();
    let q = eig.vectors.unwrap();
    let mut err2 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for l in 0..n {
                s += q.at(i, l) * eig.values[l] * q.at(j, l);
            }
            let d = m.at(i, j) - s;
            err2 += d * d;
        }
    }
    let recon = err2.sqrt() / m.frobenius_norm();
    pass &= recon <= 1e-8;
    detail.push_str(&format!("eig recon {recon:.2e}; "));

    // CSV round-trip bit-faithfulness
    let dir = std::env::temp_dir().join(format!("scatspec_acc_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roundtrip.csv");
    let record = SpectrumRecord::from_unsorted(
        Dim::Three,
        PI,
        OperatorTag::HerglotzA,
        (1..=64)
            .map(|j| {
                (
                    (j as f64).sqrt().recip() * PI.powi(-(j as i32 % 7)),
                    Some(j / 3),
                )
            })
            .collect(),
        BTreeMap::new(),
    );
    scatspec_cli::io::write_spectrum_csv(&record, &path).unwrap();
    let back = scatspec_cli::io::read_spectrum_csv(&path, None, None, None).unwrap();
    let faithful = record.len() == back.len()
        && record
            .entries
            .iter()
            .zip(&back.entries)
            .all(|(a, b)| a.sigma.to_bits() == b.sigma.to_bits());
    pass &= faithful;
    detail.push_str(&format!("csv bit-faithful {faithful}; "));

    // cmd_verify exit-code contract through the binary
    let ok = std::process::Command::new(env!("CARGO_BIN_EXE_scatspec"))
        .args(["verify", "determinant", "--trials", "25", "--seed", "3"])
        .output()
        .unwrap();
    let bad = std::process::Command::new(env!("CARGO_BIN_EXE_scatspec"))
        .args([
            "verify",
            "determinant",
            "--trials",
            "25",
            "--seed",
            "3",
            "--max-rel-diff",
            "1e-300",
        ])
        .output()
        .unwrap();
    let codes_ok = ok.status.code() == Some(0) && bad.status.code() == Some(3);
    pass &= codes_ok;
    detail.push_str(&format!(
        "verify exit codes (0/3) {codes_ok} in {:.1?}",
        t0.elapsed()
    ));
    conclude(12, pass, &detail);
}
