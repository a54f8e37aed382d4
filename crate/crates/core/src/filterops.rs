//! Filtered measures `g_eps * mu` and their norms.
//!
//! Lebesgue norms `||g_eps * mu||_q` are computed by a midpoint rule on a
//! tensor grid of spacing `eps / points_per_scale`, restricted to points near
//! the support. `mu`-norms `||g_eps * mu||_{mu,s}` are exact atom sums.
//!
//! All sums are carried in unscaled kernel units (`G` rather than
//! `eps^-dim G`) and the powers of `eps` are applied in log space, so tiny and
//! huge scales do not overflow before the final result.

use crate::error::{Error, Result};
use crate::grid::{atom_reduce, grid_reduce};
use crate::kernels::RadialKernel;
use crate::measures::{dist2, DiscreteMeasure};
use crate::sum::pairwise_sum;

/// Smallest norm accepted before a scale is declared out of range.
pub const NORM_FLOOR: f64 = 1e-300;

/// Kernel truncation used by the exact atom sums; below this relative size
/// a term cannot change a sum that already holds the `G(0)` self term.
const ATOM_SUM_TOL: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Grid points per kernel scale; spacing is `eps / points_per_scale`.
    pub points_per_scale: usize,
    /// Relative kernel size at which the integration region is cut off.
    pub tail_tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { points_per_scale: 8, tail_tolerance: 1e-12 }
    }
}

impl QuadratureSpec {
    pub fn new(points_per_scale: usize, tail_tolerance: f64) -> Result<Self> {
        let q = Self { points_per_scale, tail_tolerance };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points_per_scale < 4 {
            return Err(Error::invalid(format!(
                "points_per_scale must be at least 4, got {}",
                self.points_per_scale
            )));
        }
        if !(self.tail_tolerance > 0.0 && self.tail_tolerance <= 1e-6) {
            return Err(Error::invalid(format!(
                "tail tolerance must lie in (0, 1e-6], got {}",
                self.tail_tolerance
            )));
        }
        Ok(())
    }

    pub fn spacing(&self, eps: f64) -> f64 {
        eps / self.points_per_scale as f64
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("scale must be positive and finite, got {eps}")))
    }
}

/// `(g_eps * mu)(x) = sum_i w_i g_eps(x - y_i)`, summed over every atom.
pub fn convolve_at(mu: &DiscreteMeasure, kernel: &RadialKernel, eps: f64, x: &[f64]) -> f64 {
    assert_eq!(x.len(), mu.dim(), "evaluation point has the wrong dimension");
    let inv = 1.0 / (eps * eps);
    let terms: Vec<f64> = mu
        .atoms()
        .map(|(y, w)| w * kernel.profile_sq(dist2(x, y) * inv))
        .collect();
    eps.powi(-(mu.dim() as i32)) * pairwise_sum(&terms)
}

/// `(h_eps * mu)(x)`.
pub fn convolve_negderiv_at(mu: &DiscreteMeasure, kernel: &RadialKernel, eps: f64, x: &[f64]) -> f64 {
    assert_eq!(x.len(), mu.dim(), "evaluation point has the wrong dimension");
    let inv = 1.0 / (eps * eps);
    let terms: Vec<f64> = mu
        .atoms()
        .map(|(y, w)| w * kernel.profiles_sq(dist2(x, y) * inv).1)
        .collect();
    eps.powi(-(mu.dim() as i32)) * pairwise_sum(&terms)
}

/// Grid sums in kernel units: `b = sum G^q`, `a = sum G^(q-1) H`, `c = sum H^q`,
/// where `G`, `H` are the unscaled convolutions at each grid point.
struct LebesgueSums {
    a: f64,
    b: f64,
    c: f64,
    spacing: f64,
}

fn lebesgue_sums(
    mu: &DiscreteMeasure,
    kernel: &RadialKernel,
    eps: f64,
    q: f64,
    quad: &QuadratureSpec,
    with_h: bool,
) -> LebesgueSums {
    let h = quad.spacing(eps);
    let reach = kernel.truncation_radius(eps, quad.tail_tolerance);
    let inv = 1.0 / (eps * eps);
    let coords = mu.coords();
    let weights = mu.weights();
    let dim = mu.dim();
    let [a, b, c] = grid_reduce(mu, h, 0.5, reach, |x, nb| {
        let mut sg = 0.0;
        let mut sh = 0.0;
        for &k in nb {
            let k = k as usize;
            let r2 = dist2(x, &coords[k * dim..(k + 1) * dim]) * inv;
            if with_h {
                let (g, hh) = kernel.profiles_sq(r2);
                sg += weights[k] * g;
                sh += weights[k] * hh;
            } else {
                sg += weights[k] * kernel.profile_sq(r2);
            }
        }
        if sg <= 0.0 {
            return [0.0, 0.0, if sh > 0.0 { sh.powf(q) } else { 0.0 }];
        }
        let gq1 = sg.powf(q - 1.0);
        [gq1 * sh, gq1 * sg, if with_h { sh.powf(q) } else { 0.0 }]
    });
    LebesgueSums { a, b, c, spacing: h }
}

/// `ln ||.||_q` from a kernel-unit grid sum.
fn ln_norm(sum: f64, spacing: f64, eps: f64, q: f64, dim: usize) -> f64 {
    let d = dim as f64;
    (sum.ln() + d * spacing.ln() - q * d * eps.ln()) / q
}

fn checked_norm(ln: f64, eps: f64, what: &str) -> Result<f64> {
    let v = ln.exp();
    if v.is_finite() && v >= NORM_FLOOR {
        Ok(v)
    } else {
        Err(Error::ScaleOutOfRange { eps, what: format!("{what} = {v:e} is outside floating range") })
    }
}

fn check_q_lebesgue(q: f64) -> Result<()> {
    if q > 1.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("Lebesgue norms need 1 < q < inf, got {q}")))
    }
}

/// `||g_eps * mu||_q` by midpoint quadrature.
pub fn lq_norm(
    mu: &DiscreteMeasure,
    kernel: &RadialKernel,
    eps: f64,
    q: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let ln = ln_lq_norm(mu, kernel, eps, q, quad)?;
    checked_norm(ln, eps, "norm")
}

/// `ln ||g_eps * mu||_q`; finite wherever the grid sum is positive.
pub(crate) fn ln_lq_norm(
    mu: &DiscreteMeasure,
    kernel: &RadialKernel,
    eps: f64,
    q: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    check_eps(eps)?;
    check_q_lebesgue(q)?;
    quad.validate()?;
    let s = lebesgue_sums(mu, kernel, eps, q, quad, false);
    if !(s.b > 0.0) {
        return Err(Error::ScaleOutOfRange { eps, what: "filtered measure vanishes on the grid".into() });
    }
    Ok(ln_norm(s.b, s.spacing, eps, q, mu.dim()))
}

/// Closed-form `||g_eps * mu||_q` for the Gaussian kernel and integer `q`.
///
/// Expands the `q`-th power into a sum over `q`-tuples of atoms; each term is
/// a Gaussian product integral. Cost is `atoms^q`, so only small measures are
/// accepted.
pub fn lq_norm_oracle_gaussian(mu: &DiscreteMeasure, eps: f64, q: u32) -> Result<f64> {
    check_eps(eps)?;
    if q < 2 {
        return Err(Error::invalid("oracle needs integer q >= 2"));
    }
    let n = mu.len();
    let cap = match q {
        2 => 2000,
        3 => 200,
        _ => (8.0e6f64).powf(1.0 / q as f64) as usize,
    };
    if n > cap {
        return Err(Error::AtomCap { requested: n as u128, cap });
    }
    let dim = mu.dim();
    let qf = q as f64;
    let inv = 1.0 / (eps * eps);

    // recursive enumeration of tuples, carrying the running sums
    fn walk(
        mu: &DiscreteMeasure,
        depth: u32,
        q: u32,
        w: f64,
        sum_y: &mut Vec<f64>,
        sum_sq: f64,
        inv: f64,
        out: &mut Vec<f64>,
    ) {
        if depth == q {
            let qf = q as f64;
            let center: f64 = sum_y.iter().map(|s| s * s).sum::<f64>() / qf;
            out.push(w * (-(sum_sq - center) * inv).exp());
            return;
        }
        for (y, wi) in mu.atoms() {
            for (s, c) in sum_y.iter_mut().zip(y) {
                *s += c;
            }
            let sq: f64 = y.iter().map(|c| c * c).sum();
            walk(mu, depth + 1, q, w * wi, sum_y, sum_sq + sq, inv, out);
            for (s, c) in sum_y.iter_mut().zip(y) {
                *s -= c;
            }
        }
    }

    let mut terms = Vec::with_capacity(n.pow(q));
    walk(mu, 0, q, 1.0, &mut vec![0.0; dim], 0.0, inv, &mut terms);
    let total = pairwise_sum(&terms);
    let d = dim as f64;
    // ||.||_q^q = eps^(-q d) (pi eps^2 / q)^(d/2) * total
    let ln_q = -qf * d * eps.ln() + 0.5 * d * (std::f64::consts::PI * eps * eps / qf).ln() + total.ln();
    checked_norm(ln_q / qf, eps, "oracle norm")
}

/// Per-atom sums in kernel units: `b = sum w G^s`, `a = sum w G^(s-1) H`, `c = sum w H^s`.
pub(crate) fn mu_sums(mu: &DiscreteMeasure, kernel: &RadialKernel, eps: f64, s: f64, with_h: bool) -> [f64; 3] {
    let reach = kernel.truncation_radius(eps, ATOM_SUM_TOL);
    let inv = 1.0 / (eps * eps);
    atom_reduce(mu, reach, |j, nb| {
        let yj = mu.point(j);
        let mut sg = 0.0;
        let mut sh = 0.0;
        for &k in nb {
            let k = k as usize;
            let r2 = dist2(yj, mu.point(k)) * inv;
            let (g, h) = kernel.profiles_sq(r2);
            sg += mu.weight(k) * g;
            sh += mu.weight(k) * h;
        }
        let w = mu.weight(j);
        if sg <= 0.0 {
            return [0.0, 0.0, 0.0];
        }
        let gs1 = sg.powf(s - 1.0);
        [w * gs1 * sh, w * gs1 * sg, if with_h { w * sh.powf(s) } else { 0.0 }]
    })
}

/// `||g_eps * mu||_{mu,s} = (sum_j w_j (g_eps * mu)(y_j)^s)^(1/s)`.
pub fn mu_norm(mu: &DiscreteMeasure, kernel: &RadialKernel, eps: f64, s: f64) -> Result<f64> {
    check_eps(eps)?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::invalid(format!("mu-norm exponent must be positive, got {s}")));
    }
    let [_, b, _] = mu_sums(mu, kernel, eps, s, false);
    if !(b > 0.0) {
        return Err(Error::ScaleOutOfRange { eps, what: "kernel vanishes at every atom".into() });
    }
    let d = mu.dim() as f64;
    checked_norm(b.ln() / s - d * eps.ln(), eps, "mu-norm")
}

/// Scale derivative of `||g_eps * mu||_q` and its log-log slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormDerivativeReport {
    pub eps: f64,
    pub q: f64,
    pub dim: usize,
    /// `||g_eps * mu||_q`.
    pub norm: f64,
    /// `d/deps ||g_eps * mu||_q`.
    pub d_deps: f64,
    /// `d/dlambda ln ||g_{e^lambda} * mu||_q` at `lambda = ln eps`.
    pub loglog_slope: f64,
    /// `||h_eps * mu||_q`.
    pub h_norm: f64,
    /// `-dim`.
    pub lower_bound: f64,
    /// `||h_eps * mu||_q / ||g_eps * mu||_q - dim`.
    pub upper_bound: f64,
}

/// Evaluates both derivative formulas on one quadrature grid.
pub fn norm_derivative(
    mu: &DiscreteMeasure,
    kernel: &RadialKernel,
    eps: f64,
    q: f64,
    quad: &QuadratureSpec,
) -> Result<NormDerivativeReport> {
    check_eps(eps)?;
    check_q_lebesgue(q)?;
    quad.validate()?;
    let dim = mu.dim();
    let d = dim as f64;
    let s = lebesgue_sums(mu, kernel, eps, q, quad, true);
    if !(s.b > 0.0) {
        return Err(Error::ScaleOutOfRange { eps, what: "filtered measure vanishes on the grid".into() });
    }
    let ln_g = ln_norm(s.b, s.spacing, eps, q, dim);
    let norm = checked_norm(ln_g, eps, "norm")?;
    let loglog_slope = s.a / s.b - d;
    // int g^(q-1) h dm / (eps ||g||^(q-1)) - dim ||g|| / eps
    let ln_num = s.a.ln() + d * s.spacing.ln() - q * d * eps.ln();
    let first = if s.a > 0.0 { (ln_num - (q - 1.0) * ln_g).exp() / eps } else { 0.0 };
    let d_deps = first - d * norm / eps;
    let h_norm = if s.c > 0.0 { ln_norm(s.c, s.spacing, eps, q, dim).exp() } else { 0.0 };
    Ok(NormDerivativeReport {
        eps,
        q,
        dim,
        norm,
        d_deps,
        loglog_slope,
        h_norm,
        lower_bound: -d,
        upper_bound: (s.c / s.b).powf(1.0 / q) - d,
    })
}

/// Derivative of `ln ||g_{e^lambda} * mu||_{mu,q-1}` with its bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationDerivativeReport {
    pub eps: f64,
    pub q: f64,
    pub value: f64,
    pub lower_bound: f64,
    /// `||h_eps * mu||_{mu,q-1} / ||g_eps * mu||_{mu,q-1} - dim`.
    pub upper_bound: f64,
}

pub fn correlation_derivative_report(
    mu: &DiscreteMeasure,
    kernel: &RadialKernel,
    eps: f64,
    q: f64,
) -> Result<CorrelationDerivativeReport> {
    check_eps(eps)?;
    if !(q >= 2.0 && q.is_finite()) {
        return Err(Error::invalid(format!("correlation derivative needs q >= 2, got {q}")));
    }
    let d = mu.dim() as f64;
    let [a, b, c] = mu_sums(mu, kernel, eps, q - 1.0, true);
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::ScaleOutOfRange { eps, what: "correlation sum underflows".into() });
    }
    Ok(CorrelationDerivativeReport {
        eps,
        q,
        value: a / b - d,
        lower_bound: -d,
        upper_bound: (c / b).powf(1.0 / (q - 1.0)) - d,
    })
}

/// `d/dlambda ln ||g_{e^lambda} * mu||_{mu,q-1}` at `lambda = ln eps`, for `q >= 2`.
pub fn correlation_log_derivative(
    mu: &DiscreteMeasure,
    kernel: &RadialKernel,
    eps: f64,
    q: f64,
) -> Result<f64> {
    correlation_derivative_report(mu, kernel, eps, q).map(|r| r.value)
}

/// Outcome of the slope-bound check; margins are positive when satisfied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeBoundCheck {
    pub passed: bool,
    /// `slope - lower`.
    pub lower_margin: f64,
    /// `upper - slope`.
    pub upper_margin: f64,
    /// `-slope`, only for the Gaussian kernel.
    pub gaussian_margin: Option<f64>,
}

pub const SLOPE_BOUND_TOL: f64 = 1e-6;

/// `-dim <= slope <= ||h||/||g|| - dim`, plus `slope <= 0` for the Gaussian.
pub fn check_slope_bounds(report: &NormDerivativeReport, kernel: &RadialKernel) -> SlopeBoundCheck {
    let lower_margin = report.loglog_slope - report.lower_bound;
    let upper_margin = report.upper_bound - report.loglog_slope;
    let gaussian_margin = kernel.is_gaussian().then_some(-report.loglog_slope);
    let passed = lower_margin >= -SLOPE_BOUND_TOL
        && upper_margin >= -SLOPE_BOUND_TOL
        && gaussian_margin.map_or(true, |m| m >= -SLOPE_BOUND_TOL);
    SlopeBoundCheck { passed, lower_margin, upper_margin, gaussian_margin }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn two_atoms() -> DiscreteMeasure {
        DiscreteMeasure::point_masses(&[vec![0.0], vec![1.0]], &[0.5, 0.5]).unwrap()
    }

    #[test]
    fn convolve_examples() {
        let k = RadialKernel::gaussian();
        let p = DiscreteMeasure::unit_point(1).unwrap();
        assert_eq!(convolve_at(&p, &k, 1.0, &[0.0]), 1.0);
        assert!((convolve_at(&p, &k, 1.0, &[1.0]) - 1.0 / E).abs() < 1e-16);
        let v = convolve_at(&two_atoms(), &k, 1.0, &[0.5]);
        assert!((v - (-0.25f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn lq_norm_point_mass_closed_form() {
        let k = RadialKernel::gaussian();
        let quad = QuadratureSpec::default();
        let p = DiscreteMeasure::unit_point(1).unwrap();
        let n = lq_norm(&p, &k, 1.0, 2.0, &quad).unwrap();
        assert!((n - (PI / 2.0).powf(0.25)).abs() < 1e-12);
        let n = lq_norm(&p, &k, 0.5, 2.0, &quad).unwrap();
        assert!((n - 2f64.sqrt() * (PI / 2.0).powf(0.25)).abs() < 1e-12);
        for (q, eps, dim) in [(1.5f64, 0.3f64, 2), (3.0, 2.0, 1), (2.5, 0.07, 2)] {
            let p = DiscreteMeasure::unit_point(dim).unwrap();
            let d = dim as f64;
            let expect = eps.powf(d * (1.0 - q) / q) * (PI / q).powf(d / (2.0 * q));
            let got = lq_norm(&p, &k, eps, q, &quad).unwrap();
            assert!((got - expect).abs() < 1e-9 * expect, "q={q} eps={eps}: {got} vs {expect}");
        }
    }

    #[test]
    fn lq_norm_is_homogeneous() {
        let k = RadialKernel::gaussian();
        let quad = QuadratureSpec::default();
        let m = two_atoms();
        let a = lq_norm(&m, &k, 0.4, 2.0, &quad).unwrap();
        let b = lq_norm(&m.scaled(3.0).unwrap(), &k, 0.4, 2.0, &quad).unwrap();
        assert!((b - 3.0 * a).abs() < 1e-12 * b);
    }

    #[test]
    fn oracle_two_atoms() {
        // norm^2 = (pi/2)^(1/2) (1 + e^(-1/2)) / 2
        let m = two_atoms();
        let expect = ((PI / 2.0).sqrt() * (1.0 + (-0.5f64).exp()) / 2.0).sqrt();
        let oracle = lq_norm_oracle_gaussian(&m, 1.0, 2).unwrap();
        assert!((oracle - expect).abs() < 1e-14);
        let quad = lq_norm(&m, &RadialKernel::gaussian(), 1.0, 2.0, &QuadratureSpec::default()).unwrap();
        assert!((quad - expect).abs() < 1e-10);
        let p = DiscreteMeasure::unit_point(1).unwrap();
        assert!((lq_norm_oracle_gaussian(&p, 1.0, 2).unwrap() - (PI / 2.0).powf(0.25)).abs() < 1e-15);
    }

    #[test]
    fn oracle_q3_matches_quadrature() {
        let m = DiscreteMeasure::point_masses(
            &[vec![0.0, 0.1], vec![0.4, -0.3], vec![1.0, 0.5]],
            &[0.2, 0.5, 0.3],
        )
        .unwrap();
        let o = lq_norm_oracle_gaussian(&m, 0.3, 3).unwrap();
        let g = lq_norm(&m, &RadialKernel::gaussian(), 0.3, 3.0, &QuadratureSpec::default()).unwrap();
        assert!((o - g).abs() < 1e-9 * o);
    }

    #[test]
    fn oracle_caps() {
        let big = DiscreteMeasure::uniform_grid(1, 201).unwrap();
        assert!(matches!(lq_norm_oracle_gaussian(&big, 1.0, 3), Err(Error::AtomCap { .. })));
        assert!(lq_norm_oracle_gaussian(&big, 1.0, 1).is_err());
    }

    #[test]
    fn mu_norm_examples() {
        let k = RadialKernel::gaussian();
        let p = DiscreteMeasure::unit_point(2).unwrap();
        assert!((mu_norm(&p, &k, 0.5, 1.7).unwrap() - 4.0).abs() < 1e-13);
        let v = mu_norm(&two_atoms(), &k, 1.0, 1.0).unwrap();
        assert!((v - (1.0 + 1.0 / E) / 2.0).abs() < 1e-15);
        // weights scaled by c scale the result by c^(1 + 1/s)
        let s = 2.5;
        let a = mu_norm(&two_atoms(), &k, 0.7, s).unwrap();
        let b = mu_norm(&two_atoms().scaled(2.0).unwrap(), &k, 0.7, s).unwrap();
        assert!((b / a - 2f64.powf(1.0 + 1.0 / s)).abs() < 1e-12);
    }

    #[test]
    fn point_mass_slopes() {
        let k = RadialKernel::gaussian();
        let quad = QuadratureSpec::default();
        for eps in [0.01, 0.3, 4.0] {
            let r = norm_derivative(&DiscreteMeasure::unit_point(1).unwrap(), &k, eps, 2.0, &quad).unwrap();
            assert!((r.loglog_slope + 0.5).abs() < 1e-10);
            let r = norm_derivative(&DiscreteMeasure::unit_point(2).unwrap(), &k, eps, 3.0, &quad).unwrap();
            assert!((r.loglog_slope + 4.0 / 3.0).abs() < 1e-10);
            assert!((r.loglog_slope - eps * r.d_deps / r.norm).abs() < 1e-10 * r.loglog_slope.abs());
            assert!(check_slope_bounds(&r, &k).passed);
        }
    }

    #[test]
    fn correlation_derivative_examples() {
        let k = RadialKernel::gaussian();
        let p = DiscreteMeasure::unit_point(1).unwrap();
        assert_eq!(correlation_log_derivative(&p, &k, 0.3, 2.0).unwrap(), -1.0);
        // two atoms, q = 2: (1/2)(1/2) 2 H(1) * 2 / ((1 + e^-1)/2) - 1
        let m = two_atoms();
        let exact = 2.0 * 0.25 * (2.0 / E) / ((1.0 + 1.0 / E) / 2.0) - 1.0;
        let v = correlation_log_derivative(&m, &k, 1.0, 2.0).unwrap();
        assert!((v - exact).abs() < 1e-14);
        let h = 1e-3;
        let f = |l: f64| mu_norm(&m, &k, l.exp(), 1.0).unwrap().ln();
        let fd = (f(h) - f(-h)) / (2.0 * h);
        assert!((fd - v).abs() < 1e-5);
        assert!(correlation_log_derivative(&m, &k, 1.0, 1.5).is_err());
    }

    #[test]
    fn uniform_grid_slopes_within_bounds() {
        let k = RadialKernel::gaussian();
        let m = DiscreteMeasure::uniform_grid(1, 64).unwrap();
        for j in 1..=8 {
            let r = norm_derivative(&m, &k, 2f64.powi(-j), 2.0, &QuadratureSpec::default()).unwrap();
            assert!(r.loglog_slope >= -1.0 - 1e-8 && r.loglog_slope <= 1e-8, "j={j}: {}", r.loglog_slope);
            assert!(check_slope_bounds(&r, &k).passed);
        }
    }

    #[test]
    fn bump_skips_gaussian_clause() {
        let k = RadialKernel::smooth_bump(0.5, 1.0).unwrap();
        let r = norm_derivative(&two_atoms(), &k, 0.8, 2.0, &QuadratureSpec::default()).unwrap();
        let c = check_slope_bounds(&r, &k);
        assert!(c.gaussian_margin.is_none());
        assert!(c.passed, "{c:?}");
    }

    #[test]
    fn validation_errors() {
        let k = RadialKernel::gaussian();
        let p = DiscreteMeasure::unit_point(1).unwrap();
        let quad = QuadratureSpec::default();
        assert!(lq_norm(&p, &k, 0.0, 2.0, &quad).is_err());
        assert!(lq_norm(&p, &k, 1.0, 1.0, &quad).is_err());
        assert!(QuadratureSpec::new(3, 1e-12).is_err());
        assert!(QuadratureSpec::new(8, 1e-3).is_err());
        assert!(mu_norm(&p, &k, 1.0, 0.0).is_err());
    }

    #[test]
    fn huge_scale_signals_out_of_range() {
        let k = RadialKernel::gaussian();
        let p = DiscreteMeasure::unit_point(2).unwrap();
        let e = lq_norm(&p, &k, 1e250, 3.0, &QuadratureSpec::default()).unwrap_err();
        assert!(e.is_numeric());
    }
}
