//! Bessel functions of the first kind for integer and half-integer orders,
//! spherical Bessel functions, and Gamma values at half-integer arguments.
//!
//! Evaluation strategy for `J_nu(x)`:
//!
//! * ascending power series when `x <= 8` or when `x^2/4 <= nu + 1`
//!   (in that regime the terms decrease from the start, so there is no
//!   cancellation at all);
//! * Hankel's asymptotic expansion for very large `x`;
//! * otherwise a normalized backward (Miller) recurrence, which is stable
//!   on both sides of the turning point `nu ~ x`. Integer orders are
//!   normalized with `J_0 + 2 sum J_{2k} = 1`; half-integer orders go
//!   through the spherical Bessel recurrence matched against the
//!   closed-form seeds `j_0 = sin x / x`, `j_1 = sin x / x^2 - cos x / x`.
//!
//! Magnitudes below [`UNDERFLOW_FLUSH`] are flushed to exact zero; the
//! spectrum builders treat such values as exact zeros.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Values with absolute value below this are flushed to 0.
pub const UNDERFLOW_FLUSH: f64 = 1e-290;

/// Bessel order stored as `2*nu`, so integer and half-integer orders are exact.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BesselOrder {
    twice: u32,
}

impl BesselOrder {
    pub const MAX_TWICE: u32 = 4096;

    /// Order `nu = twice / 2`.
    pub fn from_twice(twice: u32) -> Result<Self> {
        if twice > Self::MAX_TWICE {
            return Err(Error::Domain(format!(
                "Bessel order 2*nu = {twice} exceeds the cap {}",
                Self::MAX_TWICE
            )));
        }
        Ok(Self { twice })
    }

    /// Integer order `nu = n`.
    pub fn integer(n: u32) -> Result<Self> {
        Self::from_twice(n.saturating_mul(2))
    }

    /// Half-integer order `nu = ell + 1/2`.
    pub fn half_integer(ell: u32) -> Result<Self> {
        Self::from_twice(ell.saturating_mul(2).saturating_add(1))
    }

    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }
}

/// `J_nu(x)` for `x >= 0`.
///
/// Relative accuracy is about `1e-13` wherever the value is not tiny;
/// magnitudes under [`UNDERFLOW_FLUSH`] come back as exact 0.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("bessel_j requires x >= 0, got {x}")));
    }
    let nu = order.value();
    if x == 0.0 {
        return Ok(if order.twice == 0 { 1.0 } else { 0.0 });
    }
    let value = if series_applies(nu, x) {
        series_j(order, x)
    } else if x > 1e4 * (1.0 + nu) {
        hankel_j(nu, x)
    } else if order.is_integer() {
        miller_integer(order.twice / 2, x)
    } else {
        // J_{l+1/2}(x) = sqrt(2x/pi) j_l(x)
        let ell = (order.twice - 1) / 2;
        (2.0 * x / PI).sqrt() * spherical_value(ell, x)
    };
    Ok(flush(value))
}

/// Spherical Bessel function `j_ell(x) = sqrt(pi/(2x)) J_{ell+1/2}(x)`,
/// with the removable limit `j_0(0) = 1`, `j_ell(0) = 0` for `ell >= 1`.
pub fn spherical_j(ell: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!(
            "spherical_j requires x >= 0, got {x}"
        )));
    }
    // keep the J-order cap: 2(ell + 1/2) <= MAX_TWICE
    BesselOrder::half_integer(ell)?;
    if x == 0.0 {
        return Ok(if ell == 0 { 1.0 } else { 0.0 });
    }
    let nu = ell as f64 + 0.5;
    let value = if x > 1e4 * (1.0 + nu) {
        (PI / (2.0 * x)).sqrt() * hankel_j(nu, x)
    } else {
        spherical_value(ell, x)
    };
    Ok(flush(value))
}

/// `Gamma(k/2)` for `twice_arg = k >= 1`, via `Gamma(1) = 1`,
/// `Gamma(1/2) = sqrt(pi)` and the recurrence `Gamma(z+1) = z Gamma(z)`.
pub fn gamma_half_integer(twice_arg: u32) -> f64 {
    assert!(twice_arg >= 1, "gamma_half_integer requires twice_arg >= 1");
    let mut value = if twice_arg % 2 == 0 { 1.0 } else { PI.sqrt() };
    let mut k = if twice_arg % 2 == 0 { 2u32 } else { 1u32 };
    while k < twice_arg {
        value *= f64::from(k) / 2.0;
        k += 2;
    }
    value
}

fn flush(v: f64) -> f64 {
    if v.abs() < UNDERFLOW_FLUSH {
        0.0
    } else {
        v
    }
}

fn series_applies(nu: f64, x: f64) -> bool {
    x <= 8.0 || x * x / 4.0 <= nu + 1.0
}

/// Ascending series sum_m (-1)^m (x/2)^{2m+nu} / (m! Gamma(nu+m+1)).
fn series_j(order: BesselOrder, x: f64) -> f64 {
    let nu = order.value();
    let half = x / 2.0;
    let log_pref = nu * half.ln() - ln_gamma(nu + 1.0);
    if log_pref < -745.0 {
        return 0.0;
    }
    // prefactor directly when representable, otherwise through the log
    let pref = if log_pref.abs() < 690.0 && order.twice <= 300 {
        half.powf(nu) / gamma_half_integer(order.twice + 2)
    } else {
        log_pref.exp()
    };
    let z2 = half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..400 {
        let m = m as f64;
        term *= -z2 / (m * (nu + m));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    pref * sum
}

/// ln Gamma(z) for z > 0 by the Stirling series, shifting z above 15 first.
fn ln_gamma(mut z: f64) -> f64 {
    debug_assert!(z > 0.0);
    let mut shift = 0.0;
    while z < 15.0 {
        shift -= z.ln();
        z += 1.0;
    }
    let zi = 1.0 / (z * z);
    // Bernoulli tail B_2/(2*1*z) - B_4/(4*3*z^3) + ...
    let tail = (1.0 / 12.0
        + zi * (-1.0 / 360.0 + zi * (1.0 / 1260.0 + zi * (-1.0 / 1680.0 + zi * (1.0 / 1188.0)))))
        / z;
    shift + (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + tail
}

/// Miller start order: high enough above max(n, x) that the contamination
/// from the dominant solution decays below double precision.
fn miller_start(order: usize, x: f64) -> usize {
    let top = order.max(x.ceil() as usize).max(1);
    let mut m = top + (8.0 * (top as f64).cbrt()).ceil() as usize + 42;
    if m % 2 == 1 {
        m += 1;
    }
    m
}

const RESCALE_LIMIT: f64 = 1e250;
const RESCALE_FACTOR: f64 = 1e-250;

/// Backward recurrence for integer order, normalized with
/// `J_0(x) + 2 sum_{k>=1} J_{2k}(x) = 1`.
fn miller_integer(n: u32, x: f64) -> f64 {
    let n = n as usize;
    let m = miller_start(n, x);
    let mut above = 0.0_f64; // raw J_{c+1}
    let mut cur = 1e-200_f64; // raw J_c, arbitrary scale
    let mut norm = 0.0_f64;
    let mut saved = 0.0_f64;
    let mut c = m;
    loop {
        if c == n {
            saved = cur;
        }
        if c % 2 == 0 {
            norm += if c == 0 { cur } else { 2.0 * cur };
        }
        if c == 0 {
            break;
        }
        let below = (2.0 * c as f64 / x) * cur - above;
        above = cur;
        cur = below;
        c -= 1;
        if cur.abs() > RESCALE_LIMIT {
            cur *= RESCALE_FACTOR;
            above *= RESCALE_FACTOR;
            norm *= RESCALE_FACTOR;
            saved *= RESCALE_FACTOR;
        }
    }
    saved / norm
}

/// `j_ell(x)` for `x > 0`: ascending series where its terms decrease from
/// the start (no cancellation, which also protects the small-x regime where
/// the closed form of `j_1` cancels), closed-form seeds plus upward
/// recurrence below the turning point, Miller recurrence above it.
fn spherical_value(ell: u32, x: f64) -> f64 {
    let l = ell as usize;
    let j0 = x.sin() / x;
    if l == 0 {
        return j0;
    }
    if x * x <= (2 * l + 3) as f64 {
        return spherical_series(l, x);
    }
    let j1 = j0 / x - x.cos() / x;
    if l == 1 {
        return j1;
    }
    if (l as f64) <= x {
        let (mut prev, mut cur) = (j0, j1);
        for k in 1..l {
            let next = (2.0 * k as f64 + 1.0) / x * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    } else {
        spherical_miller(l, x)
    }
}

/// `j_l(x) = x^l/(2l+1)!! sum_m (-1)^m (x^2/2)^m / (m! prod (2l+2i+1))`,
/// used only where the terms are monotone decreasing.
fn spherical_series(l: usize, x: f64) -> f64 {
    let lf = l as f64;
    // (2l+1)!! = 2^{l+1} Gamma(l + 3/2) / sqrt(pi)
    let ln_pref = lf * x.ln() - ((lf + 1.0) * 2.0_f64.ln() + ln_gamma(lf + 1.5) - 0.5 * PI.ln());
    if ln_pref < -745.0 {
        return 0.0;
    }
    let z2 = 0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..200 {
        let mf = m as f64;
        term *= -z2 / (mf * (2.0 * lf + 2.0 * mf + 1.0));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    ln_pref.exp() * sum
}

/// Backward recurrence for the spherical Bessel function, matched against
/// whichever of the closed-form seeds `j_0`, `j_1` is better conditioned.
fn spherical_miller(l: usize, x: f64) -> f64 {
    let m = miller_start(l, x);
    let mut above = 0.0_f64;
    let mut cur = 1e-200_f64;
    let mut saved = 0.0_f64;
    let mut raw1 = 0.0_f64;
    let mut c = m;
    let raw0 = loop {
        if c == l {
            saved = cur;
        }
        if c == 1 {
            raw1 = cur;
        }
        if c == 0 {
            break cur;
        }
        let below = (2.0 * c as f64 + 1.0) / x * cur - above;
        above = cur;
        cur = below;
        c -= 1;
        if cur.abs() > RESCALE_LIMIT {
            cur *= RESCALE_FACTOR;
            above *= RESCALE_FACTOR;
            saved *= RESCALE_FACTOR;
            raw1 *= RESCALE_FACTOR;
        }
    };
    let j0 = x.sin() / x;
    let j1 = j0 / x - x.cos() / x;
    let scale = if j0.abs() >= j1.abs() {
        j0 / raw0
    } else {
        j1 / raw1
    };
    saved * scale
}

/// Hankel asymptotic expansion, valid far beyond the turning point.
fn hankel_j(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let chi = x - (0.5 * nu + 0.25) * PI;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..40u32 {
        let kf = k as f64;
        term *= (mu - (2.0 * kf - 1.0) * (2.0 * kf - 1.0)) / (kf * 8.0 * x);
        if term.abs() > last {
            break; // asymptotic tail started growing
        }
        last = term.abs();
        // sign pattern: P += (-1)^{k/2} c_k (k even), Q += (-1)^{(k-1)/2} c_k (k odd)
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}
