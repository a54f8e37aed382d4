//! Partition functions of a measure at scale `eps`.
//!
//! [`raw_sum`] is the box-counting sum `S(eps) = sum_k mu(eps k + eps [0,1)^dim)^q`.
//! The six [`PartitionKind`]s other than `RawSum` are normalized so that
//! `ln P(eps) / ln eps` tends to the Renyi dimension directly, i.e. each
//! carries its own `1/(q-1)` power.
//!
//! Values are computed in log space ([`evaluate_ln`]); [`evaluate`]
//! exponentiates and fails if the result leaves the floating range.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::filterops::{check_eps, ln_lq_norm, mu_sums, QuadratureSpec};
use crate::grid::{atom_reduce, grid_reduce};
use crate::kernels::RadialKernel;
use crate::measures::{dist2, DiscreteMeasure};

/// Relative slack on `|x - y| <= eps`, so atoms placed exactly one scale
/// apart are not split by rounding in the squared distance.
const CLOSED_BALL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PartitionKind {
    /// `S(eps)`, without the `1/(q-1)` power.
    RawSum,
    /// `S(eps)^(1/(q-1))`.
    BoxSum,
    /// `(sum_j w_j mu(B(y_j, eps))^(q-1))^(1/(q-1))`, closed balls.
    BallCorrelation,
    /// `(int mu(B(x, eps))^q eps^-dim dx)^(1/(q-1))`, by quadrature.
    BallLebesgue,
    /// `(sum_{j in Z^dim} (sum_k w_k G(|j - y_k/eps|))^q)^(1/(q-1))`.
    KernelLatticeSum(RadialKernel),
    /// `(sum_j w_j (sum_k w_k G(|y_j - y_k|/eps))^(q-1))^(1/(q-1))`.
    KernelCorrelation(RadialKernel),
    /// `eps^dim ||g_eps * mu||_q^(q/(q-1))`.
    KernelLebesgue(RadialKernel),
}

/// Command-line names, in canonical order.
pub const KIND_NAMES: [&str; 7] =
    ["raw", "box", "ball-corr", "ball-leb", "kernel-sum", "kernel-corr", "kernel-leb"];

impl PartitionKind {
    /// Builds a kind from its command-line name; kernel kinds take `kernel`.
    pub fn parse(name: &str, kernel: &RadialKernel) -> Result<Self> {
        Ok(match name {
            "raw" => Self::RawSum,
            "box" => Self::BoxSum,
            "ball-corr" => Self::BallCorrelation,
            "ball-leb" => Self::BallLebesgue,
            "kernel-sum" => Self::KernelLatticeSum(*kernel),
            "kernel-corr" => Self::KernelCorrelation(*kernel),
            "kernel-leb" => Self::KernelLebesgue(*kernel),
            other => {
                return Err(Error::invalid(format!(
                    "unknown partition kind '{other}' (expected one of {})",
                    KIND_NAMES.join("|")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::RawSum => "raw",
            Self::BoxSum => "box",
            Self::BallCorrelation => "ball-corr",
            Self::BallLebesgue => "ball-leb",
            Self::KernelLatticeSum(_) => "kernel-sum",
            Self::KernelCorrelation(_) => "kernel-corr",
            Self::KernelLebesgue(_) => "kernel-leb",
        }
    }

    /// The six normalized kinds, kernel kinds using `kernel`.
    pub fn normalized_kinds(kernel: &RadialKernel) -> [Self; 6] {
        [
            Self::BoxSum,
            Self::BallCorrelation,
            Self::BallLebesgue,
            Self::KernelLatticeSum(*kernel),
            Self::KernelCorrelation(*kernel),
            Self::KernelLebesgue(*kernel),
        ]
    }

    pub fn kernel(&self) -> Option<&RadialKernel> {
        match self {
            Self::KernelLatticeSum(k) | Self::KernelCorrelation(k) | Self::KernelLebesgue(k) => Some(k),
            _ => None,
        }
    }

    pub fn needs_quadrature(&self) -> bool {
        matches!(self, Self::BallLebesgue | Self::KernelLebesgue(_))
    }

    /// Whether `0 < q < 1` is meaningful for this kind.
    pub fn allows_small_q(&self) -> bool {
        matches!(self, Self::RawSum | Self::BoxSum | Self::KernelLatticeSum(_))
    }
}

impl fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_q(kind: &PartitionKind, q: f64) -> Result<()> {
    let ok = if kind.allows_small_q() { q > 0.0 && q != 1.0 } else { q > 1.0 };
    if ok && q.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("q = {q} is not valid for partition kind {kind}")))
    }
}

/// `S(eps) = sum_k mu(eps k + eps [0,1)^dim)^q`.
pub fn raw_sum(mu: &DiscreteMeasure, eps: f64, q: f64) -> Result<f64> {
    check_eps(eps)?;
    check_q(&PartitionKind::RawSum, q)?;
    Ok(mu.box_counts(eps).power_sum(q))
}

/// `P(eps)`; see [`evaluate_ln`].
pub fn evaluate(
    kind: &PartitionKind,
    mu: &DiscreteMeasure,
    eps: f64,
    q: f64,
    quad: Option<&QuadratureSpec>,
) -> Result<f64> {
    let ln = evaluate_ln(kind, mu, eps, q, quad)?;
    let v = ln.exp();
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::ScaleOutOfRange { eps, what: format!("{kind} partition function exp({ln}) overflows") })
    }
}

/// `ln P(eps)`. The quadrature spec is required by `BallLebesgue` and
/// `KernelLebesgue`; `KernelLatticeSum` uses its tail tolerance if given.
pub fn evaluate_ln(
    kind: &PartitionKind,
    mu: &DiscreteMeasure,
    eps: f64,
    q: f64,
    quad: Option<&QuadratureSpec>,
) -> Result<f64> {
    check_eps(eps)?;
    check_q(kind, q)?;
    if kind.needs_quadrature() && quad.is_none() {
        return Err(Error::invalid(format!("partition kind {kind} needs a quadrature spec")));
    }
    if let Some(quad) = quad {
        quad.validate()?;
    }
    let power = 1.0 / (q - 1.0);
    let ln = match kind {
        PartitionKind::RawSum => raw_sum(mu, eps, q)?.ln(),
        PartitionKind::BoxSum => power * raw_sum(mu, eps, q)?.ln(),
        PartitionKind::BallCorrelation => power * ball_correlation_sum(mu, eps, q).ln(),
        PartitionKind::BallLebesgue => power * ln_ball_lebesgue(mu, eps, q, quad.unwrap()),
        PartitionKind::KernelLatticeSum(k) => {
            let tol = quad.map_or(QuadratureSpec::default().tail_tolerance, |s| s.tail_tolerance);
            let reach = lattice_reach(k, eps, q, tol);
            power * kernel_lattice_raw(mu, k, eps, q, reach).ln()
        }
        PartitionKind::KernelCorrelation(k) => {
            let [_, b, _] = mu_sums(mu, k, eps, q - 1.0, false);
            power * b.ln()
        }
        PartitionKind::KernelLebesgue(k) => {
            let d = mu.dim() as f64;
            d * eps.ln() + q * power * ln_lq_norm(mu, k, eps, q, quad.unwrap())?
        }
    };
    if ln.is_nan() || ln == f64::INFINITY {
        return Err(Error::ScaleOutOfRange { eps, what: format!("{kind} partition function is not finite") });
    }
    Ok(ln)
}

/// `sum_j w_j mu(B(y_j, eps))^(q-1)` over closed balls.
fn ball_correlation_sum(mu: &DiscreteMeasure, eps: f64, q: f64) -> f64 {
    let r2 = eps * eps * (1.0 + CLOSED_BALL_SLACK);
    let reach = eps * (1.0 + CLOSED_BALL_SLACK);
    let [s] = atom_reduce(mu, reach, |j, nb| {
        let yj = mu.point(j);
        let mass: f64 = nb
            .iter()
            .filter(|&&k| dist2(yj, mu.point(k as usize)) <= r2)
            .map(|&k| mu.weight(k as usize))
            .sum();
        [mu.weight(j) * mass.powf(q - 1.0)]
    });
    s
}

/// `ln int mu(B(x, eps))^q eps^-dim dx` by the midpoint rule.
fn ln_ball_lebesgue(mu: &DiscreteMeasure, eps: f64, q: f64, quad: &QuadratureSpec) -> f64 {
    let h = quad.spacing(eps);
    let r2 = eps * eps;
    let [s] = grid_reduce(mu, h, 0.5, eps, |x, nb| {
        let mass: f64 = nb
            .iter()
            .filter(|&&k| dist2(x, mu.point(k as usize)) <= r2)
            .map(|&k| mu.weight(k as usize))
            .sum();
        [if mass > 0.0 { mass.powf(q) } else { 0.0 }]
    });
    // h^dim * eps^-dim = points_per_scale^-dim
    s.ln() - mu.dim() as f64 * (quad.points_per_scale as f64).ln()
}

/// Distance from the support beyond which lattice terms are dropped.
///
/// For `q < 1` small kernel values are raised to a power below one, so the
/// cutoff is tightened to keep each dropped term below `tol` after the power.
pub fn lattice_reach(kernel: &RadialKernel, eps: f64, q: f64, tol: f64) -> f64 {
    let tol = if q < 1.0 { tol.powf(1.0 / q).max(1e-300) } else { tol };
    kernel.truncation_radius(eps, tol)
}

/// `sum_{j in Z^dim} (sum_k w_k G(|j - y_k/eps|))^q` over lattice points
/// within `reach` of an atom.
pub fn kernel_lattice_raw(mu: &DiscreteMeasure, kernel: &RadialKernel, eps: f64, q: f64, reach: f64) -> f64 {
    let inv = 1.0 / (eps * eps);
    let [s] = grid_reduce(mu, eps, 0.0, reach, |x, nb| {
        let g: f64 = nb
            .iter()
            .map(|&k| mu.weight(k as usize) * kernel.profile_sq(dist2(x, mu.point(k as usize)) * inv))
            .sum();
        [if g > 0.0 { g.powf(q) } else { 0.0 }]
    });
    s
}

fn require_positive_center(kernel: &RadialKernel) -> Result<()> {
    if kernel.profile(0.0) > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("kernel must be positive at the origin"))
    }
}

/// `eps^dim ||g_eps * mu||_{mu,q-1} / S(eps)^(1/(q-1))` for each scale.
///
/// Bounded above and below along any sequence of scales; the ratio is also
/// invariant under `mu -> c mu`.
pub fn ratio_correlation_vs_boxes(
    mu: &DiscreteMeasure,
    kernel: &RadialKernel,
    eps_list: &[f64],
    q: f64,
) -> Result<Vec<f64>> {
    require_positive_center(kernel)?;
    if !(q > 1.0) {
        return Err(Error::invalid(format!("correlation ratio needs q > 1, got {q}")));
    }
    let num = PartitionKind::KernelCorrelation(*kernel);
    eps_list
        .par_iter()
        .map(|&eps| {
            let a = evaluate_ln(&num, mu, eps, q, None)?;
            let b = evaluate_ln(&PartitionKind::BoxSum, mu, eps, q, None)?;
            Ok((a - b).exp())
        })
        .collect()
}

/// `sum_j (int G(|j - y/eps|) dmu(y))^q / S(eps)` for each scale.
pub fn ratio_kernel_sum_vs_boxes(
    mu: &DiscreteMeasure,
    kernel: &RadialKernel,
    eps_list: &[f64],
    q: f64,
) -> Result<Vec<f64>> {
    require_positive_center(kernel)?;
    check_q(&PartitionKind::KernelLatticeSum(*kernel), q)?;
    let tol = QuadratureSpec::default().tail_tolerance;
    eps_list
        .par_iter()
        .map(|&eps| {
            check_eps(eps)?;
            let num = kernel_lattice_raw(mu, kernel, eps, q, lattice_reach(kernel, eps, q, tol));
            let den = raw_sum(mu, eps, q)?;
            Ok(num / den)
        })
        .collect()
}

/// Outcome of [`jump_test`].
#[derive(Debug, Clone, PartialEq)]
pub struct JumpReport {
    /// Largest `|d_i| / max(|d_{i-1}|, |d_{i+1}|)` over the steps `d_i`.
    pub worst_ratio: f64,
    /// Index `i` of the worst step `v[i-1] -> v[i]`.
    pub worst_index: usize,
    /// Largest absolute step.
    pub max_step: f64,
    pub passed: bool,
}

/// Default allowed ratio of a step to its neighbors.
pub const JUMP_FACTOR: f64 = 5.0;

/// Flags steps of a finely sampled curve that are much larger than the
/// neighboring steps. On a smooth curve adjacent steps are nearly equal; a
/// discontinuity shows up as one step with flat neighbors.
pub fn jump_test(values: &[f64], factor: f64) -> JumpReport {
    let steps: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-12 * scale.max(f64::MIN_POSITIVE);
    let mut report = JumpReport { worst_ratio: 0.0, worst_index: 0, max_step: 0.0, passed: true };
    for (i, d) in steps.iter().enumerate() {
        let left = if i > 0 { steps[i - 1].abs() } else { 0.0 };
        let right = steps.get(i + 1).map_or(0.0, |s| s.abs());
        let local = left.max(right);
        report.max_step = report.max_step.max(d.abs());
        if d.abs() <= floor {
            continue;
        }
        let ratio = d.abs() / local.max(floor);
        if ratio > report.worst_ratio {
            report.worst_ratio = ratio;
            report.worst_index = i + 1;
        }
        if d.abs() > factor * local + floor {
            report.passed = false;
        }
    }
    report
}

/// Samples `P` at `n` log-spaced scales over `[eps_lo, eps_hi]` and runs [`jump_test`].
pub fn refinement_jump_test(
    kind: &PartitionKind,
    mu: &DiscreteMeasure,
    q: f64,
    eps_lo: f64,
    eps_hi: f64,
    n: usize,
    quad: Option<&QuadratureSpec>,
) -> Result<JumpReport> {
    if !(eps_lo > 0.0 && eps_hi > eps_lo && n >= 3) {
        return Err(Error::invalid("jump test needs 0 < eps_lo < eps_hi and n >= 3"));
    }
    let (a, b) = (eps_lo.ln(), eps_hi.ln());
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let eps = (a + (b - a) * i as f64 / (n - 1) as f64).exp();
            evaluate(kind, mu, eps, q, quad)
        })
        .collect::<Result<_>>()?;
    Ok(jump_test(&values, JUMP_FACTOR))
}
