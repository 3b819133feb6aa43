//! Closed-form audits of the constants behind the thin-part construction.

use super::EPSILON_PRIME_RATIO;
use serde::{Deserialize, Serialize};

fn k_c(l: f64, eps: f64) -> f64 {
    (eps.sinh() / (l / 2.0).sinh()).acosh()
}

fn collar(l: f64) -> f64 {
    (1.0 / (l / 2.0).sinh()).asinh()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CollarReport {
    pub epsilon: f64,
    /// Smallest value of `w(ℓ) - K_C(ℓ)` over the grid.
    pub grid_min: f64,
    /// Limit of `w(ℓ) - K_C(ℓ)` as `ℓ -> 0`, namely `-ln sinh ε`.
    pub limit: f64,
    pub infimum: f64,
    pub threshold: f64,
    /// Every grid value is positive.
    pub positive: bool,
    pub passed: bool,
}

/// Margin between the collar width and the cylinder half-width, over a grid
/// of waist lengths in `(0, 2ε]`; passes when the infimum exceeds `ε/3`.
pub fn collar_margin_audit(eps: f64) -> CollarReport {
    let n = 20_000;
    let mut grid_min = f64::INFINITY;
    let mut positive = true;
    for k in 1..=n {
        let l = 2.0 * eps * k as f64 / n as f64;
        let m = collar(l) - k_c(l, eps);
        positive &= m > 0.0;
        grid_min = grid_min.min(m);
    }
    for l in [1e-9, 1e-6, 1e-3] {
        grid_min = grid_min.min(collar(l) - k_c(l, eps));
    }
    let limit = -eps.sinh().ln();
    let infimum = grid_min.min(limit);
    let threshold = eps / 3.0;
    CollarReport { epsilon: eps, grid_min, limit, infimum, threshold, positive, passed: positive && infimum > threshold }
}

/// Distances in the top half of a thin cylinder used to show that the
/// circumdisks of its standard triangles are empty.
#[derive(Clone, Copy, Debug)]
struct Quad {
    /// Across the cylinder, from waist midpoint to boundary midpoint.
    d_m_mplus: f64,
    /// From the waist midpoint to the circumcentre.
    d_m_c: f64,
    /// From the circumcentre to a waist vertex.
    d_c_x: f64,
    /// From the boundary midpoint to the nearest admissible outside point.
    d_mplus_p: f64,
}

/// `artanh(y)` given `y` and `1 - y` separately, for `y` close to one.
fn atanh_near_one(y: f64, one_minus_y: f64) -> f64 {
    0.5 * ((1.0 + y) / one_minus_y).ln()
}

/// `1 - tanh(x)` without cancellation.
fn one_minus_tanh(x: f64) -> f64 {
    let e = (-2.0 * x).exp();
    2.0 * e / (1.0 + e)
}

fn quad(l: f64, eps: f64) -> Quad {
    let k = k_c(l, eps);
    let c6 = (l / 6.0).cosh();
    let c6_minus_one = 2.0 * (l / 12.0).sinh().powi(2);
    let boundary_gap = 2.0 * ((l / 6.0).sinh() * k.cosh()).asinh();
    // Both tangents approach one as the waist shrinks.
    let y1 = k.tanh() / c6;
    let d_m_mplus = atanh_near_one(y1, (c6_minus_one + one_minus_tanh(k)) / c6);
    let t = (k / 2.0).tanh();
    let d_m_c = atanh_near_one(c6 * t, one_minus_tanh(k / 2.0) - c6_minus_one * t);
    let d_c_x = (c6 * d_m_c.cosh()).acosh();
    let d_mplus_p = ((eps / 2.0).cosh() / (boundary_gap / 2.0).cosh()).acosh();
    Quad { d_m_mplus, d_m_c, d_c_x, d_mplus_p }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AppendixAReport {
    pub epsilon: f64,
    pub epsilon_prime: f64,
    /// `d(m, m+) - d(m, c) - d(c, x)` at `ℓ = 2ε'`, and whether it decreases.
    pub first_min: f64,
    pub first_decreasing: bool,
    /// `d(m+, p)` at `ℓ = 1e-6`, and whether it increases.
    pub second_inf: f64,
    pub second_increasing: bool,
    /// Smallest value of the sum over the grid.
    pub sum_min: f64,
    /// Largest `d(x+_i, x+_{i+1})` over the grid, which must stay below ε.
    pub max_boundary_gap: f64,
    pub passed: bool,
}

/// Evaluates the circumdisk distances over `ℓ ∈ (0, 2ε']`.
pub fn appendix_a_audit(eps: f64) -> AppendixAReport {
    let ep = EPSILON_PRIME_RATIO * eps;
    let n = 20_000;
    let lo = 1e-6;
    let hi = 2.0 * ep;
    let mut prev: Option<Quad> = None;
    let mut first_decreasing = true;
    let mut second_increasing = true;
    let mut sum_min = f64::INFINITY;
    let mut max_boundary_gap: f64 = 0.0;
    for k in 0..=n {
        let l = lo + (hi - lo) * k as f64 / n as f64;
        let q = quad(l, eps);
        let first = q.d_m_mplus - q.d_m_c - q.d_c_x;
        if let Some(p) = prev {
            first_decreasing &= first < p.d_m_mplus - p.d_m_c - p.d_c_x;
            second_increasing &= q.d_mplus_p > p.d_mplus_p;
        }
        sum_min = sum_min.min(first + q.d_mplus_p);
        let gap = 2.0 * ((l / 6.0).sinh() * k_c(l, eps).cosh()).asinh();
        max_boundary_gap = max_boundary_gap.max(gap);
        prev = Some(q);
    }
    let end = quad(hi, eps);
    let start = quad(lo, eps);
    let first_min = end.d_m_mplus - end.d_m_c - end.d_c_x;
    let second_inf = start.d_mplus_p;
    AppendixAReport {
        epsilon: eps,
        epsilon_prime: ep,
        first_min,
        first_decreasing,
        second_inf,
        second_increasing,
        sum_min,
        max_boundary_gap,
        passed: first_decreasing && second_increasing && sum_min > 0.0 && max_boundary_gap < eps,
    }
}

/// The two inequalities showing that ε/2-disks about a standard cycle cover
/// its thick cylinder.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleCoverReport {
    pub epsilon: f64,
    /// `sinh ε / sinh ε'`, an upper bound for `cosh K_C`.
    pub cosh_kc_bound: f64,
    /// `cosh(ε/2) / cosh(ε/3)`, a lower bound for `cosh d(γ, p)`.
    pub cosh_reach_bound: f64,
    pub passed: bool,
}

pub fn standard_cycle_audit(eps: f64) -> CycleCoverReport {
    let ep = EPSILON_PRIME_RATIO * eps;
    let cosh_kc_bound = eps.sinh() / ep.sinh();
    let cosh_reach_bound = (eps / 2.0).cosh() / (eps / 3.0).cosh();
    CycleCoverReport { epsilon: eps, cosh_kc_bound, cosh_reach_bound, passed: cosh_kc_bound < cosh_reach_bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::{self, Mobius, C64};

    #[test]
    fn collar_margin_at_default_epsilon() {
        let r = collar_margin_audit(0.72);
        assert!(r.positive);
        assert!((r.infimum - 0.2435).abs() < 1e-3, "{}", r.infimum);
        assert!(r.passed);
    }

    #[test]
    fn collar_margin_fails_slightly_above() {
        let r = collar_margin_audit(0.73);
        assert!(r.infimum < 0.73 / 3.0);
        assert!(!r.passed);
    }

    #[test]
    fn circumdisk_margins() {
        let r = appendix_a_audit(0.72);
        assert!((r.first_min + 0.180).abs() < 1e-3, "{}", r.first_min);
        assert!((r.second_inf - 0.247).abs() < 1e-3, "{}", r.second_inf);
        assert!(r.sum_min > 0.06);
        assert!(r.first_decreasing && r.second_increasing && r.passed, "{r:?}");
    }

    #[test]
    fn cycle_cover_constants() {
        let r = standard_cycle_audit(0.72);
        assert!(r.cosh_kc_bound <= 1.02);
        assert!(r.cosh_reach_bound >= 1.03);
        assert!(r.passed);
    }

    /// Builds the Saccheri quadrilateral of a thin cylinder explicitly in the
    /// disk and measures the distances directly.
    #[test]
    fn closed_forms_match_coordinates() {
        let eps = 0.72;
        for l in [0.05, 0.4, 1.0, 1.4] {
            let q = quad(l, eps);
            let k = k_c(l, eps);
            // Waist along the real diameter, x_i and x_{i+1} at -l/6 and l/6.
            let up = |s: f64, h: f64| Mobius::translation_x(s).apply(hyp::polar(h, std::f64::consts::FRAC_PI_2));
            let (x0, x1) = (up(-l / 6.0, 0.0), up(l / 6.0, 0.0));
            let (y0, y1) = (up(-l / 6.0, k), up(l / 6.0, k));
            let circ = hyp::circumdisk(x0, x1, y1).unwrap();
            assert!((hyp::dist(circ.center, y0) - circ.radius).abs() < 1e-9);
            let m = C64::new(0.0, 0.0);
            let mplus = hyp::midpoint(y0, y1);
            assert!((hyp::dist(m, mplus) - q.d_m_mplus).abs() < 1e-9);
            assert!((hyp::dist(m, circ.center) - q.d_m_c).abs() < 1e-9);
            assert!((circ.radius - q.d_c_x).abs() < 1e-9);
            // The outside point at ε/2 from both boundary vertices.
            let p = Mobius::from_segment(mplus, m).apply(hyp::polar(q.d_mplus_p, std::f64::consts::PI));
            assert!((hyp::dist(p, y0) - eps / 2.0).abs() < 1e-9);
        }
    }
}
