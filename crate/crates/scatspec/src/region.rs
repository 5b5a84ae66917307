//! Log-log slope fits, knee detection between the stable plateau and the
//! exponential tail, and the abstract instability-modulus lower bound.

use crate::error::{Error, Result};
use crate::spectrum::SpectrumRecord;
use std::f64::consts::E;

/// Abscissa transform applied before the least-squares fit of `log y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FitTransform {
    /// `t = log x`, x interpreted as a rank.
    LogRank,
    /// `t = x^p`.
    PowRank(f64),
    /// `t = log x`, x interpreted as a frequency (for sigma-vs-kappa fits).
    LogKappa,
}

impl FitTransform {
    fn apply(self, x: f64) -> f64 {
        match self {
            FitTransform::LogRank | FitTransform::LogKappa => x.ln(),
            FitTransform::PowRank(p) => x.powf(p),
        }
    }

    pub fn label(self) -> String {
        match self {
            FitTransform::LogRank => "log_j".into(),
            FitTransform::PowRank(p) => format!("j_pow({p})"),
            FitTransform::LogKappa => "log_kappa".into(),
        }
    }
}

/// Ordinary least squares of `log y` against the transformed abscissa.
#[derive(Clone, Debug)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Inclusive x-range the fit actually used.
    pub window: (f64, f64),
    pub transform: FitTransform,
}

/// Fits `log y = slope * transform(x) + intercept` over the points whose
/// abscissa lies in `window` (all points when `None`).
pub fn fit_loglog(
    points: &[(f64, f64)],
    transform: FitTransform,
    window: Option<(f64, f64)>,
) -> Result<FitResult> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &(x, y) in points {
        if let Some((lo, hi)) = window {
            if x < lo || x > hi {
                continue;
            }
        }
        if !(x > 0.0) || !(y > 0.0) {
            return Err(Error::Domain(format!(
                "fit_loglog requires positive coordinates, got ({x}, {y})"
            )));
        }
        xs.push(transform.apply(x));
        ys.push(y.ln());
    }
    if xs.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "{} points in window, need at least 3",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateFit(
            "all abscissae equal in the fit window".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        let fitted = slope * x + intercept;
        ss_res += (y - fitted) * (y - fitted);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    // constant data: ss_tot is pure rounding noise; call the flat fit exact
    let y_scale = ys.iter().map(|y| y * y).sum::<f64>().max(1e-300);
    let r_squared = if ss_tot <= 1e-24 * y_scale {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    let lo = points
        .iter()
        .map(|p| p.0)
        .filter(|x| window.is_none_or(|(a, b)| *x >= a && *x <= b))
        .fold(f64::INFINITY, f64::min);
    let hi = points
        .iter()
        .map(|p| p.0)
        .filter(|x| window.is_none_or(|(a, b)| *x >= a && *x <= b))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
        window: (lo, hi),
        transform,
    })
}

/// Plateau level and first crossing below `plateau / e`.
#[derive(Clone, Copy, Debug)]
pub struct Knee {
    /// 1-based rank of the first entry below the threshold; the last rank
    /// when the threshold is never crossed.
    pub index: usize,
    /// Median of the leading entries.
    pub plateau: f64,
    /// False when the spectrum never dropped below `plateau / e`.
    pub crossed: bool,
}

/// Finds the knee: plateau = median of the first `max(5, len/100)`
/// entries, knee = smallest rank with `sigma < plateau / e`.
pub fn detect_knee(spectrum: &SpectrumRecord) -> Result<Knee> {
    let len = spectrum.len();
    if len < 20 {
        return Err(Error::SpectrumTooShort {
            len,
            required: 20,
            what: "knee detection",
        });
    }
    let head = (len / 100).max(5);
    let mut lead: Vec<f64> = spectrum.entries[..head].iter().map(|e| e.sigma).collect();
    lead.sort_by(|a, b| a.partial_cmp(b).expect("finite sigmas"));
    let plateau = if head % 2 == 1 {
        lead[head / 2]
    } else {
        0.5 * (lead[head / 2 - 1] + lead[head / 2])
    };
    let threshold = plateau / E;
    for e in &spectrum.entries {
        if e.sigma < threshold {
            return Ok(Knee {
                index: e.rank,
                plateau,
                crossed: true,
            });
        }
    }
    Ok(Knee {
        index: len,
        plateau,
        crossed: false,
    })
}

/// Parameters of the singular-value envelope
/// `sigma_j <= min(h1, h2 exp(-mu j^beta))` entering the modulus bound.
#[derive(Clone, Copy, Debug)]
pub struct ModulusParams {
    pub h1: f64,
    pub h2: f64,
    pub mu: f64,
    pub beta: f64,
    pub gamma0: f64,
}

impl ModulusParams {
    pub fn new(h1: f64, h2: f64, mu: f64, beta: f64, gamma0: f64) -> Result<Self> {
        for (name, v) in [("h1", h1), ("h2", h2), ("mu", mu), ("beta", beta)] {
            if !(v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        if !(gamma0 >= 1.0) {
            return Err(Error::Domain(format!(
                "gamma0 must be at least 1, got {gamma0}"
            )));
        }
        Ok(Self {
            h1,
            h2,
            mu,
            beta,
            gamma0,
        })
    }

    /// Upper end of the validity window:
    /// `t < min(h1 2^{-gamma0}, h2 e^{-mu})`.
    pub fn t_max(&self) -> f64 {
        (self.h1 * 2.0_f64.powf(-self.gamma0)).min(self.h2 * (-self.mu).exp())
    }
}

/// Lower bound for the modulus of continuity of the inverse on the
/// polynomially-bounded set:
/// `max(t / h1, 2^{-gamma0} mu^{gamma0/beta} (log h2 + log(1/t))^{-gamma0/beta})`.
pub fn modulus_lower_bound(params: &ModulusParams, t: f64) -> Result<f64> {
    let t_max = params.t_max();
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    if t >= t_max {
        return Err(Error::Domain(format!(
            "t = {t} is outside the validity window t < min(h1 2^-gamma0, h2 e^-mu) = {t_max}"
        )));
    }
    let first = t / params.h1;
    let log_term = params.h2.ln() + (1.0 / t).ln();
    let exponent = params.gamma0 / params.beta;
    let second = 2.0_f64.powf(-params.gamma0) * params.mu.powf(exponent) * log_term.powf(-exponent);
    Ok(first.max(second))
}

/// Full two-region summary of a spectrum: plateau level, knee, a log-log
/// fit over the stable window `[2, knee/2]`, and a stretched-exponential
/// fit over the tail window `[2*knee, min(5*knee, len)]` with the
/// operator-appropriate power (`1/(n-1)` Herglotz, `1/(2n)` far field).
#[derive(Clone, Debug)]
pub struct RegionSummary {
    pub plateau_level: f64,
    pub knee: Knee,
    pub stable_fit: Option<FitResult>,
    pub tail_fit: Option<FitResult>,
    pub flags: Vec<String>,
}

pub fn summarize_regions(spectrum: &SpectrumRecord) -> Result<RegionSummary> {
    if spectrum.len() < 50 {
        return Err(Error::SpectrumTooShort {
            len: spectrum.len(),
            required: 50,
            what: "region summary",
        });
    }
    let knee = detect_knee(spectrum)?;
    let points = spectrum.rank_sigma_points();
    let mut flags = Vec::new();

    let stable_hi = (knee.index / 2) as f64;
    let stable_fit = match fit_loglog(&points, FitTransform::LogRank, Some((2.0, stable_hi))) {
        Ok(fit) => Some(fit),
        Err(_) => {
            flags.push("stable window collapsed".into());
            None
        }
    };

    let n = spectrum.dim.n() as f64;
    let p = if spectrum.operator.is_herglotz() {
        1.0 / (n - 1.0)
    } else {
        1.0 / (2.0 * n)
    };
    let tail_lo = (2 * knee.index) as f64;
    let tail_hi = ((5 * knee.index).min(spectrum.len())) as f64;
    let tail_fit = match fit_loglog(&points, FitTransform::PowRank(p), Some((tail_lo, tail_hi))) {
        Ok(fit) => Some(fit),
        Err(_) => {
            flags.push("tail window collapsed".into());
            None
        }
    };
    if !knee.crossed {
        flags.push("knee threshold never crossed".into());
    }

    Ok(RegionSummary {
        plateau_level: knee.plateau,
        knee,
        stable_fit,
        tail_fit,
        flags,
    })
}
