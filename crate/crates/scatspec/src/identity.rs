//! Numerical verification of exact integral and algebraic identities:
//! the two coarea reductions of double sphere integrals, the
//! Hilbert-Schmidt norm of the far-field kernel, the rank-two determinant
//! identity, and the large-frequency limit of the Bessel product integrals.

use crate::error::Result;
use crate::herglotz::lambda_ell;
use crate::linalg::{lu_determinant, DenseMatrix};
use crate::quadrature::{integrate_interval, sphere_pair_integral};
use crate::rng::SplitMix64;
use crate::special::gamma_half_integer;
use crate::Dim;
use std::collections::BTreeMap;
use std::f64::consts::PI;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdentityName {
    Coarea1,
    Coarea2,
    HsNorm,
    Determinant,
    AhLimit,
    CrossCheck,
}

impl IdentityName {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityName::Coarea1 => "coarea1",
            IdentityName::Coarea2 => "coarea2",
            IdentityName::HsNorm => "hs_norm",
            IdentityName::Determinant => "determinant",
            IdentityName::AhLimit => "ah_limit",
            IdentityName::CrossCheck => "cross_check",
        }
    }
}

impl std::fmt::Display for IdentityName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Two independently computed sides of one identity.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: IdentityName,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_diff: f64,
    pub params: BTreeMap<String, String>,
}

impl IdentityReport {
    pub fn new(identity: IdentityName, lhs: f64, rhs: f64) -> Self {
        let rel_diff = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1e-300);
        Self {
            identity,
            lhs,
            rhs,
            rel_diff,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl std::fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

/// Radial test profiles, bounded on [0, 2] (and rapidly decaying beyond,
/// where the Hilbert-Schmidt check evaluates them).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RadialProfile {
    /// h(r) = 1
    One,
    /// h(r) = exp(-r^2)
    Gauss,
    /// h(r) = exp(-r^2/2); the Fourier-side profile of the HS check
    GaussHalf,
    /// h(r) = 4 - r^2
    Shell,
    /// h(r) = cos r
    CosR,
}

impl RadialProfile {
    pub fn eval(self, r: f64) -> f64 {
        match self {
            RadialProfile::One => 1.0,
            RadialProfile::Gauss => (-r * r).exp(),
            RadialProfile::GaussHalf => (-0.5 * r * r).exp(),
            RadialProfile::Shell => 4.0 - r * r,
            RadialProfile::CosR => r.cos(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RadialProfile::One => "const",
            RadialProfile::Gauss => "gauss",
            RadialProfile::GaussHalf => "gauss_half",
            RadialProfile::Shell => "shell",
            RadialProfile::CosR => "cos",
        }
    }
}

/// Which coarea reduction to check: form 1 carries the
/// `sqrt(1 - (z.x)^2)` weight on the sphere side, form 2 none.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoareaForm {
    WithSine,
    Plain,
}

/// Resolution knobs for the quadrature-vs-quadrature identity checks.
#[derive(Clone, Copy, Debug)]
pub struct CheckResolution {
    /// Base resolution of the sphere rules on the double-integral side.
    pub sphere: usize,
    /// Panels of the substituted radial rule on the ball side.
    pub radial_panels: usize,
    pub gl_points: usize,
}

impl CheckResolution {
    pub fn default_for(dim: Dim) -> Self {
        match dim {
            // the |sin| kink on the circle side needs a fine trapezoid
            Dim::Two => Self {
                sphere: 4096,
                radial_panels: 16,
                gl_points: 16,
            },
            // the sqrt(1-t^2) endpoint factor limits the polar rule to
            // cubic convergence, so the resolution sits high
            Dim::Three => Self {
                sphere: 224,
                radial_panels: 16,
                gl_points: 16,
            },
        }
    }

    pub fn doubled(self) -> Self {
        Self {
            sphere: self.sphere * 2,
            radial_panels: self.radial_panels * 2,
            gl_points: self.gl_points,
        }
    }
}

/// The coarea constant in front of the ball integral:
/// form 1: `2^{3-n} pi^{(n-1)/2} / Gamma((n-1)/2)`, form 2 has `2^{4-n}`.
fn coarea_constant(dim: Dim, form: CoareaForm) -> f64 {
    let n = dim.n() as i32;
    let power = match form {
        CoareaForm::WithSine => 3 - n,
        CoareaForm::Plain => 4 - n,
    };
    let gamma = gamma_half_integer(dim.n() as u32 - 1); // Gamma((n-1)/2)
    2.0_f64.powi(power) * PI.powf((n as f64 - 1.0) / 2.0) / gamma
}

/// Checks one coarea reduction for a radial profile: the double sphere
/// integral of `h(|z - x|)` (optionally weighted by `sqrt(1-(z.x)^2)`)
/// against the weighted ball integral, evaluated radially after the
/// substitution `r = 2 sin(theta)` that removes the endpoint half powers.
pub fn check_coarea(
    dim: Dim,
    form: CoareaForm,
    profile: RadialProfile,
    res: CheckResolution,
) -> IdentityReport {
    let lhs = sphere_pair_integral(dim, res.sphere, |t| {
        let r = (2.0 - 2.0 * t).max(0.0).sqrt();
        let weight = match form {
            CoareaForm::WithSine => (1.0 - t * t).max(0.0).sqrt(),
            CoareaForm::Plain => 1.0,
        };
        profile.eval(r) * weight
    });
    let rhs = coarea_constant(dim, form)
        * dim.sphere_surface()
        * ball_radial_integral(dim, form, |r| profile.eval(r), res);
    IdentityReport::new(which_coarea(form), lhs, rhs)
        .with_param("n", dim)
        .with_param("h", profile.as_str())
        .with_param("sphere_resolution", res.sphere)
}

fn which_coarea(form: CoareaForm) -> IdentityName {
    match form {
        CoareaForm::WithSine => IdentityName::Coarea1,
        CoareaForm::Plain => IdentityName::Coarea2,
    }
}

/// `int_0^2 h(r) w(r) r^{n-1} dr` for the coarea weights
/// `w = (4-r^2)^{(n-2)/2}` (form 1) or `|r|^{-1} (4-r^2)^{(n-3)/2}`
/// (form 2), via `r = 2 sin(theta)`:
///
/// * n=2, form 1: `4 sin cos`            * n=3, form 1: `16 sin^2 cos^2`
/// * n=2, form 2: `1`                    * n=3, form 2: `2 sin(2 theta)`
fn ball_radial_integral<F: Fn(f64) -> f64>(
    dim: Dim,
    form: CoareaForm,
    h: F,
    res: CheckResolution,
) -> f64 {
    let jacobian: fn(f64) -> f64 = match (dim, form) {
        (Dim::Two, CoareaForm::WithSine) => |t| 4.0 * t.sin() * t.cos(),
        (Dim::Two, CoareaForm::Plain) => |_| 1.0,
        (Dim::Three, CoareaForm::WithSine) => |t| {
            let sc = t.sin() * t.cos();
            16.0 * sc * sc
        },
        (Dim::Three, CoareaForm::Plain) => |t| 2.0 * (2.0 * t).sin(),
    };
    let half_pi = PI / 2.0;
    integrate_interval(
        |t| h(2.0 * t.sin()) * jacobian(t),
        0.0,
        half_pi,
        half_pi / res.radial_panels as f64,
        res.gl_points,
    )
}

/// Checks the Hilbert-Schmidt norm identity of the far-field kernel:
/// `kappa^{n-1}` times the double sphere integral of
/// `|h_hat(kappa (w - t))|^2` against
/// `c_n int_{B_{2 kappa}} |h_hat|^2 |xi|^{-1} (4 - kappa^{-2}|xi|^2)^{(n-3)/2}`,
/// with `c_n` the plain coarea constant.
pub fn check_hs_norm(
    dim: Dim,
    kappa: f64,
    h_hat: RadialProfile,
    res: CheckResolution,
) -> IdentityReport {
    let lhs = dim.normalizing_power(kappa).powi(2)
        * sphere_pair_integral(dim, res.sphere, |t| {
            let r = kappa * (2.0 - 2.0 * t).max(0.0).sqrt();
            let v = h_hat.eval(r);
            v * v
        });
    // ball side after xi = 2 kappa sin(theta) * direction:
    //   n=2: kappa * dtheta      n=3: 2 kappa^2 sin(2 theta) dtheta
    let half_pi = PI / 2.0;
    let radial = integrate_interval(
        |t| {
            let v = h_hat.eval(2.0 * kappa * t.sin());
            let jac = match dim {
                Dim::Two => kappa,
                Dim::Three => 2.0 * kappa * kappa * (2.0 * t).sin(),
            };
            v * v * jac
        },
        0.0,
        half_pi,
        half_pi / res.radial_panels as f64,
        res.gl_points,
    );
    let rhs = coarea_constant(dim, CoareaForm::Plain) * dim.sphere_surface() * radial;
    IdentityReport::new(IdentityName::HsNorm, lhs, rhs)
        .with_param("n", dim)
        .with_param("kappa", kappa)
        .with_param("h_hat", h_hat.as_str())
        .with_param("sphere_resolution", res.sphere)
}

/// Rank-two determinant identity:
/// `det(2I - u u^T - v v^T) =
///  2^{m-1} (2 - u.u - v.v + (u.u)(v.v)/2 - (u.v)^2/2)`,
/// LU factorization on the left, the closed form on the right.
pub fn check_determinant(u: &[f64], v: &[f64]) -> IdentityReport {
    assert_eq!(u.len(), v.len(), "u and v must have the same length");
    let m = u.len();
    assert!((1..=12).contains(&m), "vector length must be in 1..=12");
    let mut a = DenseMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let diag = if i == j { 2.0 } else { 0.0 };
            a.set(i, j, diag - u[i] * u[j] - v[i] * v[j]);
        }
    }
    let lhs = lu_determinant(&a);
    let uu: f64 = u.iter().map(|x| x * x).sum();
    let vv: f64 = v.iter().map(|x| x * x).sum();
    let uv: f64 = u.iter().zip(v).map(|(x, y)| x * y).sum();
    let rhs = 2.0_f64.powi(m as i32 - 1) * (2.0 - uu - vv + 0.5 * uu * vv - 0.5 * uv * uv);
    IdentityReport::new(IdentityName::Determinant, lhs, rhs).with_param("m", m)
}

/// Seeded batch of determinant-identity trials with uniform entries in
/// [-1, 1] and sizes in `1..=max_m`.
pub fn determinant_trials(max_m: usize, trials: usize, seed: u64) -> Vec<IdentityReport> {
    let mut rng = SplitMix64::new(seed);
    (0..trials)
        .map(|t| {
            let m = 1 + (rng.next_u64() as usize) % max_m;
            let u: Vec<f64> = (0..m).map(|_| rng.next_symmetric()).collect();
            let v: Vec<f64> = (0..m).map(|_| rng.next_symmetric()).collect();
            check_determinant(&u, &v).with_param("trial", t)
        })
        .collect()
}

/// Large-frequency limit of the Bessel product integral: for every degree,
/// `Lambda_ell(kappa) -> 1/pi` as `kappa -> infinity`, at rate O(1/kappa).
/// One report per requested `kappa`, comparing `Lambda_ell(kappa)` (lhs)
/// against `1/pi` (rhs).
pub fn check_ah_limit(dim: Dim, ell: u32, kappas: &[f64]) -> Result<Vec<IdentityReport>> {
    kappas
        .iter()
        .map(|&kappa| {
            let lhs = lambda_ell(dim, kappa, ell)?;
            Ok(IdentityReport::new(IdentityName::AhLimit, lhs, 1.0 / PI)
                .with_param("n", dim)
                .with_param("ell", ell)
                .with_param("kappa", kappa))
        })
        .collect()
}

/// Cross-checks the two closed forms of the Herglotz singular value at
/// n = 3: `((2 pi)^3 Lambda_ell(kappa))^{1/2}` against
/// `4 pi kappa (int_0^1 r^2 j_ell(kappa r)^2 dr)^{1/2}`.
pub fn cross_check_sigma(kappa: f64, ell_max: u32) -> Result<Vec<IdentityReport>> {
    let reports = crate::exec::map_indexed(ell_max as usize + 1, |i| {
        let ell = i as u32;
        let lambda = lambda_ell(Dim::Three, kappa, ell)?;
        let lhs = (Dim::Three.two_pi_pow() * lambda.max(0.0)).sqrt();
        let panels = (kappa.ceil() as usize).max(8);
        let radial = integrate_interval(
            |r| {
                let j = crate::special::spherical_j(ell, kappa * r).expect("argument >= 0");
                r * r * j * j
            },
            0.0,
            1.0,
            1.0 / panels as f64,
            16,
        );
        let rhs = 4.0 * PI * kappa * radial.max(0.0).sqrt();
        Ok(IdentityReport::new(IdentityName::CrossCheck, lhs, rhs)
            .with_param("kappa", kappa)
            .with_param("ell", ell))
    });
    reports.into_iter().collect()
}
