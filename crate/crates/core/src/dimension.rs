//! Orders of growth of sampled functions and Renyi dimension estimates.
//!
//! For `f` sampled at scales `eps_i`, the upper and lower orders are the
//! limsup and liminf of `ln f / ln eps`. From finitely many samples they are
//! approximated by the max and min of that ratio over the tail of the series
//! (the smallest scales). The least-squares slope over the same tail is
//! reported alongside as the practical estimator; it is insensitive to
//! constant prefactors, which bias the ratio by `ln c / ln eps`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filterops::{ln_lq_norm, QuadratureSpec};
use crate::kernels::RadialKernel;
use crate::measures::DiscreteMeasure;
use crate::partitions::{evaluate_ln, PartitionKind};

/// Fraction of the series, from the fine end, used for estimation.
pub const TAIL_FRACTION: f64 = 0.6;

/// Samples `(lambda_i, v_i)` with `lambda_i = ln eps_i` strictly monotone.
/// `v_i = -inf` marks a zero sample.
#[derive(Debug, Clone, PartialEq)]
pub struct LogLogSeries {
    lambda: Vec<f64>,
    values: Vec<f64>,
}

impl LogLogSeries {
    pub fn new(lambda: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if lambda.len() != values.len() {
            return Err(Error::invalid("series abscissae and values differ in length"));
        }
        if lambda.iter().any(|l| !l.is_finite()) || values.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(Error::invalid("series holds a non-finite abscissa or a NaN / +inf value"));
        }
        let inc = lambda.windows(2).all(|w| w[1] > w[0]);
        let dec = lambda.windows(2).all(|w| w[1] < w[0]);
        if !(inc || dec) {
            return Err(Error::invalid("series abscissae must be strictly monotone"));
        }
        let finite = values.iter().filter(|v| v.is_finite()).count();
        if finite < 3 {
            return Err(Error::Degenerate(format!("series has {finite} finite points, need at least 3")));
        }
        Ok(Self { lambda, values })
    }

    /// Series `ln f(eps)` from samples at decreasing scales.
    pub fn from_scales(eps: &[f64], ln_values: Vec<f64>) -> Result<Self> {
        Self::new(eps.iter().map(|e| e.ln()).collect(), ln_values)
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `v_i / lambda_i`, `NaN` where undefined.
    pub fn ratios(&self) -> Vec<f64> {
        self.lambda
            .iter()
            .zip(&self.values)
            .map(|(l, v)| if v.is_finite() && *l != 0.0 { v / l } else { f64::NAN })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderEstimate {
    /// Max of `v / lambda` over the window.
    pub upper: f64,
    /// Min of `v / lambda` over the window.
    pub lower: f64,
    /// Least-squares slope of `v` against `lambda` over the window.
    pub slope: f64,
    pub intercept: f64,
    /// Half-open index range `[start, end)` of the window.
    pub window: (usize, usize),
    /// Largest deviation of a windowed sample from the fitted line.
    pub residual: f64,
    /// The window spans less than one decade of scales.
    pub low_confidence: bool,
    /// Number of `-inf` samples left out.
    pub excluded: usize,
}

/// Orders from the final [`TAIL_FRACTION`] of the series.
pub fn estimate_orders(series: &LogLogSeries) -> Result<OrderEstimate> {
    estimate_orders_with(series, TAIL_FRACTION)
}

pub fn estimate_orders_with(series: &LogLogSeries, tail_fraction: f64) -> Result<OrderEstimate> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::invalid(format!("tail fraction must lie in (0, 1], got {tail_fraction}")));
    }
    let n = series.len();
    let take = ((tail_fraction * n as f64).ceil() as usize).clamp(3.min(n), n);
    let start = n - take;
    let window: Vec<usize> = (start..n).filter(|&i| series.values[i].is_finite()).collect();
    let excluded = n - (0..n).filter(|&i| series.values[i].is_finite()).count();
    if window.len() < 2 {
        return Err(Error::Degenerate(format!("only {} finite points in the estimation window", window.len())));
    }

    let xs: Vec<f64> = window.iter().map(|&i| series.lambda[i]).collect();
    let ys: Vec<f64> = window.iter().map(|&i| series.values[i]).collect();
    let (slope, intercept) = least_squares(&xs, &ys);
    let residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).abs())
        .fold(0.0, f64::max);

    let ratios = series.ratios();
    let tail: Vec<f64> = window.iter().map(|&i| ratios[i]).filter(|r| r.is_finite()).collect();
    if tail.is_empty() {
        return Err(Error::Degenerate("no defined ratio ln f / ln eps in the window".into()));
    }
    let upper = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lower = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    let span = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - xs.iter().cloned().fold(f64::INFINITY, f64::min);

    Ok(OrderEstimate {
        upper,
        lower,
        slope,
        intercept,
        window: (start, n),
        residual,
        low_confidence: span < std::f64::consts::LN_10,
        excluded,
    })
}

/// Ordinary least squares `y = a + b x`; returns `(b, a)`.
fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let b = sxy / sxx;
    (b, my - b * mx)
}

fn check_decreasing(eps: &[f64]) -> Result<()> {
    if eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
        return Err(Error::invalid("scales must be positive and finite"));
    }
    if eps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::invalid("scales must be strictly decreasing"));
    }
    Ok(())
}

/// `ln P(eps_i)` for each scale, evaluated in parallel.
pub fn sample_series(
    kind: &PartitionKind,
    mu: &DiscreteMeasure,
    q: f64,
    eps: &[f64],
    quad: Option<&QuadratureSpec>,
) -> Result<LogLogSeries> {
    check_decreasing(eps)?;
    let values: Vec<f64> = eps
        .par_iter()
        .map(|&e| evaluate_ln(kind, mu, e, q, quad))
        .collect::<Result<_>>()?;
    LogLogSeries::from_scales(eps, values)
}

/// Renyi dimension estimate from the `P` series of `kind`.
pub fn renyi_dimension(
    kind: &PartitionKind,
    mu: &DiscreteMeasure,
    q: f64,
    eps: &[f64],
    quad: Option<&QuadratureSpec>,
) -> Result<OrderEstimate> {
    estimate_orders(&sample_series(kind, mu, q, eps, quad)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuerinCheck {
    /// Growth exponent of `x -> ||g_{1/x} * mu||_q` (least-squares slope).
    pub lhs: f64,
    /// `(q-1)/q (dim - D)` with `D` the box-sum dimension slope.
    pub rhs: f64,
    /// Upper order of the norm by the literal ratio `ln f / ln x`.
    pub lhs_ratio: f64,
    /// Box-sum dimension estimate used for `rhs`.
    pub dimension: f64,
    pub norm_fit: OrderEstimate,
    pub box_fit: OrderEstimate,
}

/// Compares the growth of `||g_{1/x} * mu||_q` as `x -> inf` with
/// `(q-1)/q (dim - D_q)`, sampling at the given increasing `x`.
pub fn guerin_exponent_check(
    mu: &DiscreteMeasure,
    kernel: &RadialKernel,
    q: f64,
    x_list: &[f64],
    quad: &QuadratureSpec,
) -> Result<GuerinCheck> {
    if x_list.iter().any(|x| !(*x > 0.0 && x.is_finite())) || x_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("x values must be positive and strictly increasing"));
    }
    let eps: Vec<f64> = x_list.iter().map(|x| 1.0 / x).collect();
    let ln_norms: Vec<f64> = eps
        .par_iter()
        .map(|&e| ln_lq_norm(mu, kernel, e, q, quad))
        .collect::<Result<_>>()?;
    let norm_series = LogLogSeries::new(x_list.iter().map(|x| x.ln()).collect(), ln_norms)?;
    let norm_fit = estimate_orders(&norm_series)?;
    let box_fit = renyi_dimension(&PartitionKind::BoxSum, mu, q, &eps, None)?;
    let d = mu.dim() as f64;
    let dimension = box_fit.slope.clamp(0.0, d);
    Ok(GuerinCheck {
        lhs: norm_fit.slope,
        rhs: (q - 1.0) / q * (d - dimension),
        lhs_ratio: norm_fit.upper,
        dimension,
        norm_fit,
        box_fit,
    })
}

/// Scales `base^a, base^(a-1), ..., base^b` for integer exponents `a > b`.
pub fn power_scales(base: f64, a: i32, b: i32) -> Vec<f64> {
    (b..=a).rev().map(|k| base.powi(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const CANTOR_D: f64 = std::f64::consts::LN_2 / 1.0986122886681098;

    fn cantor10() -> DiscreteMeasure {
        DiscreteMeasure::cantor(10, 1.0 / 3.0, 0.5).unwrap()
    }

    #[test]
    fn exact_power_law_is_recovered_exactly() {
        let lambda: Vec<f64> = (1..=10).map(|k| -(k as f64) * 0.7).collect();
        let values: Vec<f64> = lambda.iter().map(|l| 1.3 * l).collect();
        let est = estimate_orders(&LogLogSeries::new(lambda, values).unwrap()).unwrap();
        assert!((est.slope - 1.3).abs() < 1e-12);
        assert!((est.upper - 1.3).abs() < 1e-12 && (est.lower - 1.3).abs() < 1e-12);
        assert!(est.residual < 1e-12);
        assert_eq!(est.window, (4, 10));
    }

    #[test]
    fn oscillating_series_spans_both_slopes() {
        // slopes alternate 0.5 / 0.7 on segments [-10^(k+1), -10^k]
        let mut lambda = Vec::new();
        let mut values = Vec::new();
        let mut v_at = -1.0 * 0.6;
        for k in 0..6 {
            let s = if k % 2 == 0 { 0.5 } else { 0.7 };
            let (a, b) = (10f64.powi(k), 10f64.powi(k + 1));
            for i in 1..=20 {
                let l = -(a + (b - a) * i as f64 / 20.0);
                lambda.push(l);
                values.push(v_at + s * (l + a));
            }
            v_at += s * (a - b);
        }
        let est = estimate_orders(&LogLogSeries::new(lambda, values).unwrap()).unwrap();
        assert!(est.lower <= 0.5 + 0.03, "{est:?}");
        assert!(est.upper >= 0.7 - 0.03, "{est:?}");
        assert!(est.lower <= est.upper);
    }

    #[test]
    fn series_validation() {
        assert!(LogLogSeries::new(vec![-1.0, -2.0], vec![1.0, 2.0]).is_err());
        assert!(LogLogSeries::new(vec![-1.0, -2.0, -1.5], vec![1.0, 2.0, 3.0]).is_err());
        assert!(matches!(
            LogLogSeries::new(vec![-1.0, -2.0, -3.0, -4.0], vec![1.0, f64::NEG_INFINITY, f64::NEG_INFINITY, 2.0]),
            Err(Error::Degenerate(_))
        ));
        let s = LogLogSeries::new(vec![-1.0, -2.0, -3.0, -4.0], vec![-1.0, f64::NEG_INFINITY, -3.0, -4.0]).unwrap();
        let est = estimate_orders(&s).unwrap();
        assert_eq!(est.excluded, 1);
        assert!((est.slope - 1.0).abs() < 1e-12);
        assert!(sample_series(&PartitionKind::BoxSum, &cantor10(), 2.0, &[0.1, 0.2, 0.05], None).is_err());
    }

    #[test]
    fn short_range_is_low_confidence() {
        let lambda = vec![-1.0, -1.5, -2.0, -2.5];
        let est = estimate_orders(&LogLogSeries::new(lambda.clone(), lambda).unwrap()).unwrap();
        assert!(est.low_confidence);
    }

    #[test]
    fn cantor_box_series_is_exact() {
        let eps = power_scales(3.0, -2, -8);
        let s = sample_series(&PartitionKind::BoxSum, &cantor10(), 2.0, &eps, None).unwrap();
        for (k, v) in (2..=8).zip(s.values()) {
            assert!((v + k as f64 * std::f64::consts::LN_2).abs() < 1e-12, "k={k} v={v}");
        }
        let est = estimate_orders(&s).unwrap();
        assert!((est.slope - CANTOR_D).abs() < 1e-9);
        assert!((est.upper - CANTOR_D).abs() < 1e-9 && (est.lower - CANTOR_D).abs() < 1e-9);
    }

    #[test]
    fn uniform_box_series_follows_ln_eps() {
        let u = DiscreteMeasure::uniform_grid(1, 256).unwrap();
        let eps = power_scales(2.0, -2, -7);
        let s = sample_series(&PartitionKind::BoxSum, &u, 2.0, &eps, None).unwrap();
        for (l, v) in s.lambda().iter().zip(s.values()) {
            assert!((l - v).abs() < 1e-12);
        }
    }

    #[test]
    fn point_mass_every_kind_has_dimension_zero() {
        let p = DiscreteMeasure::unit_point(1).unwrap();
        let g = RadialKernel::gaussian();
        let quad = QuadratureSpec::default();
        let eps = power_scales(2.0, -4, -10);
        let mut kinds = PartitionKind::normalized_kinds(&g).to_vec();
        kinds.push(PartitionKind::RawSum);
        for kind in kinds {
            let s = sample_series(&kind, &p, 2.0, &eps, Some(&quad)).unwrap();
            let first = s.values()[0];
            assert!(s.values().iter().all(|v| (v - first).abs() < 1e-9), "{kind}");
            let est = estimate_orders(&s).unwrap();
            assert!(est.slope.abs() <= 0.02, "{kind}: {est:?}");
        }
    }

    #[test]
    fn cantor_all_kinds_agree() {
        let g = RadialKernel::gaussian();
        let quad = QuadratureSpec::default();
        let eps = power_scales(3.0, -2, -7);
        let mu = cantor10();
        let mut slopes = Vec::new();
        for kind in PartitionKind::normalized_kinds(&g) {
            let est = renyi_dimension(&kind, &mu, 2.0, &eps, Some(&quad)).unwrap();
            assert!((est.slope - CANTOR_D).abs() <= 0.03, "{kind}: {est:?}");
            assert!(est.lower <= est.upper);
            slopes.push(est.slope);
        }
        let spread = slopes.iter().cloned().fold(f64::MIN, f64::max) - slopes.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread <= 0.06, "{slopes:?}");
    }

    #[test]
    fn uniform_slopes_near_one() {
        let g = RadialKernel::gaussian();
        let quad = QuadratureSpec::default();
        let u = DiscreteMeasure::uniform_grid(1, 256).unwrap();
        let eps = power_scales(2.0, -2, -7);
        for q in [1.5, 2.0, 3.0] {
            for kind in PartitionKind::normalized_kinds(&g) {
                let est = renyi_dimension(&kind, &u, q, &eps, Some(&quad)).unwrap();
                // closed balls lose O(eps) of their mass at the ends of [0, 1]
                let tol = if kind == PartitionKind::BallCorrelation { 0.12 } else { 0.05 };
                assert!((est.slope - 1.0).abs() <= tol, "q={q} {kind}: {est:?}");
            }
        }
    }

    #[test]
    fn box_slope_invariant_under_scaling() {
        let eps = power_scales(3.0, -2, -7);
        let mu = cantor10();
        let a = renyi_dimension(&PartitionKind::BoxSum, &mu, 2.0, &eps, None).unwrap();
        let b = renyi_dimension(&PartitionKind::BoxSum, &mu.scaled(7.0).unwrap(), 2.0, &eps, None).unwrap();
        assert!((a.slope - b.slope).abs() <= 0.02);
    }

    #[test]
    fn guerin_examples() {
        let g = RadialKernel::gaussian();
        let quad = QuadratureSpec::default();

        let p = DiscreteMeasure::unit_point(1).unwrap();
        let xs: Vec<f64> = (1..=8).map(|k| 2f64.powi(k)).collect();
        let r = guerin_exponent_check(&p, &g, 2.0, &xs, &quad).unwrap();
        assert!((r.lhs - 0.5).abs() < 1e-9 && (r.rhs - 0.5).abs() < 1e-12, "{r:?}");

        let xs: Vec<f64> = (2..=7).map(|k| 3f64.powi(k)).collect();
        let r = guerin_exponent_check(&cantor10(), &g, 2.0, &xs, &quad).unwrap();
        let expect = 0.5 * (1.0 - CANTOR_D);
        assert!((r.lhs - expect).abs() <= 0.05 && (r.rhs - expect).abs() <= 0.05, "{r:?}");

        let u = DiscreteMeasure::uniform_grid(1, 256).unwrap();
        let xs: Vec<f64> = (1..=8).map(|k| 2f64.powi(k)).collect();
        let r = guerin_exponent_check(&u, &g, 2.0, &xs, &quad).unwrap();
        assert!(r.lhs.abs() <= 0.05 && r.rhs.abs() <= 0.05, "{r:?}");
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn lower_never_exceeds_upper(vals in prop::collection::vec(-5.0f64..5.0, 3..30)) {
            let lambda: Vec<f64> = (1..=vals.len()).map(|k| -(k as f64)).collect();
            let est = estimate_orders(&LogLogSeries::new(lambda, vals).unwrap()).unwrap();
            prop_assert!(est.lower <= est.upper);
        }

        #[test]
        fn affine_series_slope_is_exact(a in -3.0f64..3.0, b in -2.0f64..2.0, n in 3usize..20) {
            let lambda: Vec<f64> = (1..=n).map(|k| -(k as f64) * 0.5).collect();
            let values: Vec<f64> = lambda.iter().map(|l| a + b * l).collect();
            let est = estimate_orders(&LogLogSeries::new(lambda, values).unwrap()).unwrap();
            prop_assert!((est.slope - b).abs() < 1e-9);
            prop_assert!(est.residual < 1e-9);
        }
    }
}
