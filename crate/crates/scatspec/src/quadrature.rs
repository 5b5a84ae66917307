//! Deterministic quadrature: Gauss-Legendre on intervals, composite panel
//! rules for oscillatory integrands, equispaced circle rules, product rules
//! on the 2-sphere, and polar/spherical product rules on balls.
//!
//! Every rule is a pure function of its parameters and sums its nodes in
//! ascending index order, so repeated evaluations are bit-identical.

use crate::error::{Error, Result};
use crate::Dim;
use std::f64::consts::PI;

/// Gauss-Legendre rule on [-1, 1]. Integrates polynomials of degree
/// `2k - 1` exactly.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub const MAX_POINTS: usize = 256;

    /// Nodes are the `k` Legendre roots found by Newton iteration.
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 || k > Self::MAX_POINTS {
            return Err(Error::Domain(format!(
                "Gauss-Legendre point count must be in 1..={}, got {k}",
                Self::MAX_POINTS
            )));
        }
        let mut nodes = vec![0.0; k];
        let mut weights = vec![0.0; k];
        for i in 0..k.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_k
            let mut x = (PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(k, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let (p, d) = legendre_and_derivative(k, x);
                    dp = d;
                    x -= p / d;
                    break;
                }
            }
            if k % 2 == 1 && i == k / 2 {
                x = 0.0;
                let (_, d) = legendre_and_derivative(k, x);
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // store the symmetric pair so the rule is exactly antisymmetric
            nodes[i] = -x.abs();
            nodes[k - 1 - i] = x.abs();
            weights[i] = w;
            weights[k - 1 - i] = w;
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over [a, b] with this rule mapped affinely.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: &F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x);
        }
        sum * half
    }
}

fn legendre_and_derivative(k: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 1..k {
        let jf = j as f64;
        let p2 = ((2.0 * jf + 1.0) * x * p1 - jf * p0) / (jf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = if (x * x - 1.0).abs() < 1e-300 {
        // endpoint derivative, not hit by interior roots
        0.5 * (k * (k + 1)) as f64 * x.powi(k as i32 + 1)
    } else {
        k as f64 * (x * p1 - p0) / (x * x - 1.0)
    };
    (p1, d)
}

/// Composite Gauss-Legendre over equal panels of length at most
/// `panel_len`, `k` points each, summed left to right.
pub fn integrate_interval<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    panel_len: f64,
    k: usize,
) -> f64 {
    assert!(a <= b, "integrate_interval requires a <= b");
    assert!(panel_len > 0.0, "integrate_interval requires panel_len > 0");
    if a == b {
        return 0.0;
    }
    let rule = GaussLegendre::new(k).expect("panel point count out of range");
    let panels = ((b - a) / panel_len).ceil() as usize;
    let step = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * step;
        let hi = if p + 1 == panels { b } else { lo + step };
        total += rule.integrate(lo, hi, &f);
    }
    total
}

/// Nodes and positive weights on a curve/surface/volume embedded in R^3;
/// 1- and 2-dimensional points leave trailing coordinates at zero.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
    /// Ambient dimension of the stored points (1, 2 or 3).
    pub point_dim: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Fixed-order (ascending node index) weighted sum.
    pub fn integrate<F: Fn([f64; 3]) -> f64>(&self, f: F) -> f64 {
        let mut sum = 0.0;
        for (p, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(*p);
        }
        sum
    }

    /// Same rule with every node rotated by `rot` (row-major 3x3).
    pub fn rotated(&self, rot: &[[f64; 3]; 3]) -> Self {
        let nodes = self
            .nodes
            .iter()
            .map(|p| {
                [
                    rot[0][0] * p[0] + rot[0][1] * p[1] + rot[0][2] * p[2],
                    rot[1][0] * p[0] + rot[1][1] * p[1] + rot[1][2] * p[2],
                    rot[2][0] * p[0] + rot[2][1] * p[1] + rot[2][2] * p[2],
                ]
            })
            .collect();
        Self {
            nodes,
            weights: self.weights.clone(),
            point_dim: 3,
        }
    }
}

/// Rule on the unit sphere S^{n-1} of R^n.
///
/// * `n = 2`: `resolution` equispaced angles, equal weights `2 pi / resolution`.
/// * `n = 3`: product of Gauss-Legendre in cos(polar) (`resolution` nodes)
///   and `2 * resolution` equispaced azimuths.
pub fn sphere_rule(dim: Dim, resolution: usize) -> QuadratureRule {
    assert!(resolution >= 4, "sphere_rule requires resolution >= 4");
    match dim {
        Dim::Two => {
            let w = 2.0 * PI / resolution as f64;
            let mut nodes = Vec::with_capacity(resolution);
            for i in 0..resolution {
                let th = 2.0 * PI * i as f64 / resolution as f64;
                nodes.push([th.cos(), th.sin(), 0.0]);
            }
            QuadratureRule {
                nodes,
                weights: vec![w; resolution],
                point_dim: 2,
            }
        }
        Dim::Three => {
            assert!(
                resolution <= GaussLegendre::MAX_POINTS,
                "S^2 rule resolution capped at {}",
                GaussLegendre::MAX_POINTS
            );
            let gl = GaussLegendre::new(resolution).expect("polar point count in range");
            let az = 2 * resolution;
            let wphi = 2.0 * PI / az as f64;
            let mut nodes = Vec::with_capacity(gl.len() * az);
            let mut weights = Vec::with_capacity(gl.len() * az);
            for (mu, wmu) in gl.nodes().iter().zip(gl.weights()) {
                let s = (1.0 - mu * mu).max(0.0).sqrt();
                for j in 0..az {
                    let phi = 2.0 * PI * j as f64 / az as f64;
                    nodes.push([s * phi.cos(), s * phi.sin(), *mu]);
                    weights.push(wmu * wphi);
                }
            }
            QuadratureRule {
                nodes,
                weights,
                point_dim: 3,
            }
        }
    }
}

/// Polar/spherical product rule on the ball of the given radius:
/// composite Gauss-Legendre in radius (weight `r^{n-1}`) times
/// [`sphere_rule`] directions.
pub fn ball_rule(
    dim: Dim,
    radius: f64,
    radial_panels: usize,
    k: usize,
    angular_resolution: usize,
) -> QuadratureRule {
    assert!(radial_panels >= 4, "ball_rule requires radial_panels >= 4");
    assert!(radius > 0.0, "ball_rule requires radius > 0");
    let sphere = sphere_rule(dim, angular_resolution);
    let gl = GaussLegendre::new(k).expect("radial point count in range");
    let step = radius / radial_panels as f64;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for p in 0..radial_panels {
        let lo = p as f64 * step;
        let mid = lo + 0.5 * step;
        let half = 0.5 * step;
        for (x, wr) in gl.nodes().iter().zip(gl.weights()) {
            let r = mid + half * x;
            let jac = r.powi(dim.n() as i32 - 1) * wr * half;
            for (dir, ws) in sphere.nodes.iter().zip(&sphere.weights) {
                nodes.push([r * dir[0], r * dir[1], r * dir[2]]);
                weights.push(jac * ws);
            }
        }
    }
    QuadratureRule {
        nodes,
        weights,
        point_dim: dim.n(),
    }
}

/// Quadrature of `f(z . x)` over S^{n-1} x S^{n-1} with the product of
/// [`sphere_rule`] with itself.
///
/// The sum is grouped by the azimuth difference (the rule is equispaced in
/// azimuth, so pairs with equal difference share the dot product), which
/// reduces the cost by a factor of the azimuth count without changing the
/// rule being evaluated.
pub fn sphere_pair_integral<F: Fn(f64) -> f64 + Sync + Send>(
    dim: Dim,
    resolution: usize,
    f: F,
) -> f64 {
    assert!(resolution >= 4);
    match dim {
        Dim::Two => {
            let m = resolution as f64;
            let mut sum = 0.0;
            for d in 0..resolution {
                sum += f((2.0 * PI * d as f64 / m).cos());
            }
            (2.0 * PI) * (2.0 * PI) / m * sum
        }
        Dim::Three => {
            assert!(resolution <= GaussLegendre::MAX_POINTS);
            let gl = GaussLegendre::new(resolution).expect("polar point count in range");
            let az = 2 * resolution;
            let wphi = 2.0 * PI / az as f64;
            let values = crate::exec::map_indexed(gl.len(), |a| {
                let mu_a = gl.nodes()[a];
                let s_a = (1.0 - mu_a * mu_a).max(0.0).sqrt();
                let mut row = 0.0;
                for (mu_b, w_b) in gl.nodes().iter().zip(gl.weights()) {
                    let s_b = (1.0 - mu_b * mu_b).max(0.0).sqrt();
                    let mut ring = 0.0;
                    for d in 0..az {
                        let c = (2.0 * PI * d as f64 / az as f64).cos();
                        ring += f(mu_a * mu_b + s_a * s_b * c);
                    }
                    row += w_b * ring;
                }
                gl.weights()[a] * row
            });
            let mut total = 0.0;
            for v in values {
                total += v;
            }
            total * wphi * wphi * az as f64
        }
    }
}

/// Naive double sum of `f(z . x)` over the product of two explicit rules.
/// Used where the two spheres carry different node sets (e.g. one of them
/// rotated).
pub fn pair_integral_explicit<F: Fn(f64) -> f64 + Sync + Send>(
    a: &QuadratureRule,
    b: &QuadratureRule,
    f: F,
) -> f64 {
    let rows = crate::exec::map_indexed(a.len(), |i| {
        let p = a.nodes[i];
        let mut row = 0.0;
        for (q, wq) in b.nodes.iter().zip(&b.weights) {
            row += wq * f(p[0] * q[0] + p[1] * q[1] + p[2] * q[2]);
        }
        a.weights[i] * row
    });
    let mut total = 0.0;
    for r in rows {
        total += r;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_rule() {
        let gl = GaussLegendre::new(1).unwrap();
        assert_eq!(gl.nodes(), &[0.0]);
        assert_eq!(gl.weights(), &[2.0]);
    }

    #[test]
    fn two_point_rule() {
        let gl = GaussLegendre::new(2).unwrap();
        let r = 1.0 / 3.0_f64.sqrt();
        assert!((gl.nodes()[0] + r).abs() < 1e-15);
        assert!((gl.nodes()[1] - r).abs() < 1e-15);
        assert!((gl.weights()[0] - 1.0).abs() < 1e-15);
        assert!((gl.weights()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degree_seven_exactness() {
        let gl = GaussLegendre::new(4).unwrap();
        let v = gl.integrate(-1.0, 1.0, &|x: f64| x.powi(6));
        assert!((v - 2.0 / 7.0).abs() < 1e-14);
    }

    #[test]
    fn rules_are_bit_identical() {
        for k in [3usize, 16, 64, 256] {
            let a = GaussLegendre::new(k).unwrap();
            let b = GaussLegendre::new(k).unwrap();
            assert_eq!(a.nodes(), b.nodes());
            assert_eq!(a.weights(), b.weights());
        }
        let s1 = sphere_rule(Dim::Three, 16);
        let s2 = sphere_rule(Dim::Three, 16);
        assert_eq!(s1.nodes, s2.nodes);
        assert_eq!(s1.weights, s2.weights);
    }

    #[test]
    fn all_weights_positive() {
        for k in [1usize, 2, 7, 33, 128, 256] {
            assert!(GaussLegendre::new(k)
                .unwrap()
                .weights()
                .iter()
                .all(|w| *w > 0.0));
        }
        for rule in [
            sphere_rule(Dim::Two, 9),
            sphere_rule(Dim::Three, 12),
            ball_rule(Dim::Two, 2.0, 6, 8, 16),
            ball_rule(Dim::Three, 2.0, 6, 8, 8),
        ] {
            assert!(rule.weights.iter().all(|w| *w > 0.0));
        }
    }

    #[test]
    fn interval_composites() {
        let v = integrate_interval(|r| r.sin(), 0.0, PI, 1.0, 16);
        assert!((v - 2.0).abs() < 1e-13);
        let v = integrate_interval(|r| r, 0.0, 2.0 * PI, 1.0, 16);
        assert!((v - 2.0 * PI * PI).abs() < 1e-12 * v.abs());
    }

    #[test]
    fn half_order_bessel_product_integral() {
        // r J_{1/2}(r)^2 = (2/pi) sin^2 r, so the integral over [0, 10]
        // is (2/pi)(5 - sin(20)/4)
        use crate::special::{bessel_j, BesselOrder};
        let half = BesselOrder::half_integer(0).unwrap();
        let v = integrate_interval(
            |r| {
                let j = bessel_j(half, r).unwrap();
                r * j * j
            },
            0.0,
            10.0,
            1.0,
            16,
        );
        let expected = (2.0 / PI) * (5.0 - (20.0_f64).sin() / 4.0);
        assert!((v - expected).abs() < 1e-12 * expected.abs());
    }

    #[test]
    fn sphere_measures() {
        let s1 = sphere_rule(Dim::Two, 8);
        assert!((s1.weight_sum() - 2.0 * PI).abs() < 1e-13);
        let s2 = sphere_rule(Dim::Three, 16);
        assert!((s2.weight_sum() - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn sphere_second_moment() {
        let s2 = sphere_rule(Dim::Three, 8);
        let v = s2.integrate(|p| p[2] * p[2]);
        assert!((v - 4.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn ball_volumes() {
        let b2 = ball_rule(Dim::Two, 1.5, 8, 12, 32);
        assert!((b2.weight_sum() - PI * 1.5 * 1.5).abs() < 1e-10);
        let b3 = ball_rule(Dim::Three, 1.5, 8, 12, 16);
        let vol = 4.0 / 3.0 * PI * 1.5_f64.powi(3);
        assert!((b3.weight_sum() - vol).abs() < 1e-10 * vol);
    }

    #[test]
    fn ball_with_inverse_radius_weight() {
        // integral of |y|^{-1} over the ball of radius 2 in R^3 is 8 pi
        let b3 = ball_rule(Dim::Three, 2.0, 8, 12, 16);
        let v = b3.integrate(|p| 1.0 / (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt());
        assert!((v - 8.0 * PI).abs() < 1e-8 * 8.0 * PI);
    }

    #[test]
    fn pair_integral_reduction_matches_explicit() {
        let f = |t: f64| (1.0 + 0.5 * t).exp();
        for dim in [Dim::Two, Dim::Three] {
            let res = 16;
            let rule = sphere_rule(dim, res);
            let explicit = pair_integral_explicit(&rule, &rule, f);
            let reduced = sphere_pair_integral(dim, res, f);
            assert!(
                (explicit - reduced).abs() < 1e-10 * explicit.abs(),
                "{dim:?}: {explicit} vs {reduced}"
            );
        }
    }

    #[test]
    fn refinement_is_monotone_on_smooth_integrands() {
        // successive refinements shrink |I_k - I_{k+1}| while above the
        // noise floor
        fn check_monotone(levels: &[f64]) {
            let diffs: Vec<f64> = levels.windows(2).map(|p| (p[0] - p[1]).abs()).collect();
            for pair in diffs.windows(2) {
                if pair[0] > 1e-12 {
                    assert!(
                        pair[1] <= pair[0],
                        "refinement not monotone: {} -> {}",
                        pair[0],
                        pair[1]
                    );
                }
            }
            assert!(
                diffs[diffs.len() - 1] <= diffs[0].max(1e-12),
                "no net convergence: {diffs:?}"
            );
        }

        let f = |r: f64| (-r * r).exp() * (3.0 * r).cos();
        let levels: Vec<f64> = (0..5)
            .map(|lvl| integrate_interval(f, 0.0, 4.0, 2.0 / (1 << lvl) as f64, 4))
            .collect();
        check_monotone(&levels);

        let spheres: Vec<f64> = [8usize, 16, 32, 64]
            .iter()
            .map(|res| sphere_rule(Dim::Three, *res).integrate(|p| (p[2] * 1.7).exp()))
            .collect();
        check_monotone(&spheres);
    }
}
