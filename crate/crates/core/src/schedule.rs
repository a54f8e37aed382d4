//! Scale schedules and the growth of adjacent-scale norm differences.
//!
//! Along `eps_n = n^-t` the differences
//! `Delta_n = | ||g_{eps_n} * mu||_q - ||g_{eps_{n-1}} * mu||_q |` grow like
//! `n^m` with `m = t (q-1)/q (dim - D) - 1`, so they are sub-polynomial
//! exactly when `t` does not exceed the critical exponent
//! `t* = q / ((q-1)(dim - D))`. Along `eps_n = 2^-n` they instead grow
//! geometrically whenever `D < dim`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filterops::{lq_norm, QuadratureSpec};
use crate::kernels::RadialKernel;
use crate::measures::DiscreteMeasure;

/// Slack on `m_hat <= 0` for membership in the admissible set of rates.
pub const MEMBERSHIP_SLACK: f64 = 0.1;

/// How far a dimension estimate may leave `[0, dim]` before it is rejected.
pub const DIMENSION_SLACK: f64 = 0.1;

/// Minimum number of finite differences for the geometric statistic.
pub const MIN_GEOMETRIC_DIFFS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScheduleKind {
    /// `eps_n = n^-t`.
    Power { t: f64 },
    /// `eps_n = 2^-n`.
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaleSchedule {
    #[serde(flatten)]
    pub kind: ScheduleKind,
    pub n0: u32,
    pub n1: u32,
}

impl ScaleSchedule {
    pub fn power(t: f64, n0: u32, n1: u32) -> Result<Self> {
        Self { kind: ScheduleKind::Power { t }, n0, n1 }.validated()
    }

    pub fn geometric(n0: u32, n1: u32) -> Result<Self> {
        Self { kind: ScheduleKind::Geometric, n0, n1 }.validated()
    }

    fn validated(self) -> Result<Self> {
        if self.n0 < 2 {
            return Err(Error::invalid(format!("schedules start at n >= 2, got {}", self.n0)));
        }
        if self.n1 <= self.n0 {
            return Err(Error::invalid(format!("empty schedule range {}..{}", self.n0, self.n1)));
        }
        if let ScheduleKind::Power { t } = self.kind {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::invalid(format!("power schedule needs t > 0, got {t}")));
            }
        }
        Ok(self)
    }

    pub fn eps(&self, n: u32) -> f64 {
        match self.kind {
            ScheduleKind::Power { t } => (n as f64).powf(-t),
            ScheduleKind::Geometric => 2f64.powi(-(n as i32)),
        }
    }

    pub fn indices(&self) -> Vec<u32> {
        (self.n0..=self.n1).collect()
    }

    pub fn scales(&self) -> Vec<f64> {
        self.indices().into_iter().map(|n| self.eps(n)).collect()
    }
}

/// Parses `pow:t=T,n=N0..N1` and `geo:n=N0..N1`.
impl FromStr for ScaleSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("bad schedule '{s}' (expected pow:t=T,n=N0..N1 or geo:n=N0..N1)"));
        let (head, rest) = s.split_once(':').ok_or_else(bad)?;
        let mut t = None;
        let mut range = None;
        for field in rest.split(',') {
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "t" => t = Some(value.trim().parse::<f64>().map_err(|_| bad())?),
                "n" => {
                    let (a, b) = value.split_once("..").ok_or_else(bad)?;
                    let a = a.trim().parse::<u32>().map_err(|_| bad())?;
                    let b = b.trim().parse::<u32>().map_err(|_| bad())?;
                    range = Some((a, b));
                }
                _ => return Err(bad()),
            }
        }
        let (n0, n1) = range.ok_or_else(bad)?;
        match head {
            "pow" => Self::power(t.ok_or_else(bad)?, n0, n1),
            "geo" if t.is_none() => Self::geometric(n0, n1),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ScaleSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ScheduleKind::Power { t } => write!(f, "pow:t={t},n={}..{}", self.n0, self.n1),
            ScheduleKind::Geometric => write!(f, "geo:n={}..{}", self.n0, self.n1),
        }
    }
}

/// `t* = q / ((q-1)(dim - d_lower))`, `+inf` when `d_lower = dim`.
pub fn critical_exponent(q: f64, dim: usize, d_lower: f64) -> Result<f64> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::invalid(format!("critical exponent needs q > 1, got {q}")));
    }
    let d = dim as f64;
    if !(d_lower >= -DIMENSION_SLACK && d_lower <= d + DIMENSION_SLACK) {
        return Err(Error::invalid(format!("dimension estimate {d_lower} lies outside [0, {dim}]")));
    }
    let gap = d - d_lower.clamp(0.0, d);
    if gap <= 1e-9 {
        return Ok(f64::INFINITY);
    }
    Ok(q / ((q - 1.0) * gap))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScheduleReport {
    pub schedule: ScaleSchedule,
    pub q: f64,
    pub dim: usize,
    pub n: Vec<u32>,
    pub eps: Vec<f64>,
    /// `||g_{eps_n} * mu||_q`.
    pub norms: Vec<f64>,
    /// `Delta_n` for `n = n0+1 ..= n1`.
    pub diffs: Vec<f64>,
    /// Growth statistic. Power: least-squares slope of `ln Delta_n` against
    /// `ln n` over the tail. Geometric: slope of `ln Delta_n` against `n`.
    pub m_hat: f64,
    /// Power: max of `ln Delta_n / ln n` over the tail (the literal limsup
    /// ratio, biased by `ln c / ln n`). Geometric: same as `m_hat`.
    pub m_ratio: f64,
    /// `+inf` when no finite critical rate exists; `NaN` until set.
    pub critical_t: f64,
    pub in_i_q: bool,
}

impl ScheduleReport {
    /// `ln Delta_n`, `-inf` for zero differences.
    pub fn ln_diffs(&self) -> Vec<f64> {
        self.diffs.iter().map(|d| d.ln()).collect()
    }

    /// `ln Delta_n / ln n`.
    pub fn ratios(&self) -> Vec<f64> {
        self.n[1..].iter().zip(self.ln_diffs()).map(|(&n, l)| l / (n as f64).ln()).collect()
    }

    /// Fills in the critical exponent for a lower-dimension estimate.
    pub fn with_critical_exponent(mut self, d_lower: f64) -> Result<Self> {
        self.critical_t = critical_exponent(self.q, self.dim, d_lower)?;
        Ok(self)
    }
}

/// Norms along the schedule and the growth statistics of their differences.
pub fn run_schedule(
    mu: &DiscreteMeasure,
    kernel: &RadialKernel,
    schedule: &ScaleSchedule,
    q: f64,
    quad: &QuadratureSpec,
) -> Result<ScheduleReport> {
    let n = schedule.indices();
    let eps = schedule.scales();
    let norms: Vec<f64> = eps
        .par_iter()
        .map(|&e| lq_norm(mu, kernel, e, q, quad))
        .collect::<Result<_>>()?;
    let diffs: Vec<f64> = norms.windows(2).map(|w| (w[1] - w[0]).abs()).collect();

    let mut report = ScheduleReport {
        schedule: *schedule,
        q,
        dim: mu.dim(),
        n,
        eps,
        norms,
        diffs,
        m_hat: f64::NAN,
        m_ratio: f64::NAN,
        critical_t: f64::NAN,
        in_i_q: false,
    };
    match schedule.kind {
        ScheduleKind::Power { .. } => {
            let (m_ratio, m_hat) = power_growth(&report)?;
            report.m_hat = m_hat;
            report.m_ratio = m_ratio;
        }
        ScheduleKind::Geometric => {
            let (xs, ys) = finite_diff_points(&report, |n| n as f64);
            if xs.len() < 2 {
                return Err(Error::Degenerate("fewer than 2 nonzero differences".into()));
            }
            report.m_hat = slope(&xs, &ys);
            report.m_ratio = report.m_hat;
        }
    }
    report.in_i_q = report.m_hat <= MEMBERSHIP_SLACK;
    Ok(report)
}

/// `(n-coordinate, ln Delta_n)` for the nonzero differences.
fn finite_diff_points(report: &ScheduleReport, x: impl Fn(u32) -> f64) -> (Vec<f64>, Vec<f64>) {
    report.n[1..]
        .iter()
        .zip(report.ln_diffs())
        .filter(|(_, l)| l.is_finite())
        .map(|(&n, l)| (x(n), l))
        .unzip()
}

/// Tail max of `ln Delta_n / ln n` and tail slope of `ln Delta_n` against `ln n`.
fn power_growth(report: &ScheduleReport) -> Result<(f64, f64)> {
    let (xs, ys) = finite_diff_points(report, |n| (n as f64).ln());
    if xs.len() < 3 {
        return Err(Error::Degenerate(format!("only {} nonzero differences", xs.len())));
    }
    let take = ((crate::dimension::TAIL_FRACTION * xs.len() as f64).ceil() as usize).max(3).min(xs.len());
    let (xs, ys) = (&xs[xs.len() - take..], &ys[ys.len() - take..]);
    let m_ratio = xs.iter().zip(ys).map(|(x, y)| y / x).fold(f64::NEG_INFINITY, f64::max);
    Ok((m_ratio, slope(xs, ys)))
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Least-squares slope of `ln Delta_n` against `n` on a geometric schedule.
pub fn geometric_blowup_stat(report: &ScheduleReport) -> Result<f64> {
    if report.schedule.kind != ScheduleKind::Geometric {
        return Err(Error::invalid("geometric blow-up statistic needs a geometric schedule"));
    }
    let (xs, ys) = finite_diff_points(report, |n| n as f64);
    if xs.len() < MIN_GEOMETRIC_DIFFS {
        return Err(Error::Degenerate(format!(
            "{} nonzero differences, need at least {MIN_GEOMETRIC_DIFFS}",
            xs.len()
        )));
    }
    Ok(slope(&xs, &ys))
}
