//! Radial filter kernels.
//!
//! A kernel is a radial profile `G(r)` together with `H(r) = -r G'(r)`, the
//! negative radial derivative. The scaled kernel is
//! `g_eps(x) = eps^-dim G(|x| / eps)` and likewise for `h_eps`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    /// `G(r) = exp(-r^2)`.
    Gaussian,
    /// C1 cubic smoothstep from 1 on `[0, inner]` down to 0 on `[outer, inf)`.
    SmoothBump { inner: f64, outer: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialKernel {
    kind: KernelKind,
}

impl RadialKernel {
    pub fn gaussian() -> Self {
        Self { kind: KernelKind::Gaussian }
    }

    pub fn smooth_bump(inner: f64, outer: f64) -> Result<Self> {
        if !(inner > 0.0 && outer > inner && outer.is_finite()) {
            return Err(Error::invalid(format!(
                "smooth bump needs 0 < inner < outer, got inner={inner}, outer={outer}"
            )));
        }
        Ok(Self { kind: KernelKind::SmoothBump { inner, outer } })
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn is_gaussian(&self) -> bool {
        matches!(self.kind, KernelKind::Gaussian)
    }

    /// `G(r)`.
    pub fn profile(&self, r: f64) -> f64 {
        match self.kind {
            KernelKind::Gaussian => (-r * r).exp(),
            KernelKind::SmoothBump { inner, outer } => {
                if r <= inner {
                    1.0
                } else if r >= outer {
                    0.0
                } else {
                    let s = (r - inner) / (outer - inner);
                    1.0 - s * s * (3.0 - 2.0 * s)
                }
            }
        }
    }

    /// `H(r) = -r G'(r)`.
    pub fn negderiv_profile(&self, r: f64) -> f64 {
        match self.kind {
            KernelKind::Gaussian => 2.0 * r * r * (-r * r).exp(),
            KernelKind::SmoothBump { inner, outer } => {
                if r <= inner || r >= outer {
                    0.0
                } else {
                    let w = outer - inner;
                    let s = (r - inner) / w;
                    r * 6.0 * s * (1.0 - s) / w
                }
            }
        }
    }

    /// `(G, H)` from the squared radius; avoids a square root for the Gaussian.
    #[inline]
    pub(crate) fn profiles_sq(&self, r2: f64) -> (f64, f64) {
        match self.kind {
            KernelKind::Gaussian => {
                let g = (-r2).exp();
                (g, 2.0 * r2 * g)
            }
            KernelKind::SmoothBump { .. } => {
                let r = r2.sqrt();
                (self.profile(r), self.negderiv_profile(r))
            }
        }
    }

    #[inline]
    pub(crate) fn profile_sq(&self, r2: f64) -> f64 {
        match self.kind {
            KernelKind::Gaussian => (-r2).exp(),
            KernelKind::SmoothBump { .. } => self.profile(r2.sqrt()),
        }
    }

    /// `sup_r H(r)`.
    pub fn max_negderiv(&self) -> f64 {
        match self.kind {
            KernelKind::Gaussian => 2.0 / std::f64::consts::E,
            KernelKind::SmoothBump { inner, outer } => {
                // stationary point of (inner + s w) s (1 - s) on (0, 1)
                let w = outer - inner;
                let b = w - inner;
                let s = (b + (b * b + 3.0 * w * inner).sqrt()) / (3.0 * w);
                self.negderiv_profile(inner + s * w)
            }
        }
    }

    /// `g_eps(x) = eps^-dim G(|x| / eps)`, with `dim = x.len()`.
    pub fn eval_scaled(&self, eps: f64, x: &[f64]) -> f64 {
        let r = x.iter().map(|c| c * c).sum::<f64>().sqrt() / eps;
        eps.powi(-(x.len() as i32)) * self.profile(r)
    }

    /// `h_eps(x) = eps^-dim H(|x| / eps)`.
    pub fn eval_scaled_negderiv(&self, eps: f64, x: &[f64]) -> f64 {
        let r = x.iter().map(|c| c * c).sum::<f64>().sqrt() / eps;
        eps.powi(-(x.len() as i32)) * self.negderiv_profile(r)
    }

    /// Radius beyond which both `G(|x|/eps)` and `H(|x|/eps)` stay below
    /// `tol * max(G(0), sup H)`.
    pub fn truncation_radius(&self, eps: f64, tol: f64) -> f64 {
        assert!(tol > 0.0 && tol < 1.0, "truncation tolerance must lie in (0, 1)");
        eps * self.unit_truncation_radius(tol)
    }

    fn unit_truncation_radius(&self, tol: f64) -> f64 {
        match self.kind {
            KernelKind::Gaussian => {
                // u = r^2; G = e^-u and H = 2u e^-u, with H >= G once u >= 1/2
                if tol >= 2.0 / std::f64::consts::E {
                    return (-tol.ln()).max(0.0).sqrt();
                }
                let mut u = (2.0 / tol).ln() + 1.0;
                for _ in 0..100 {
                    let next = (2.0 * u / tol).ln();
                    if (next - u).abs() < 1e-14 * u {
                        u = next;
                        break;
                    }
                    u = next;
                }
                u.sqrt()
            }
            KernelKind::SmoothBump { outer, .. } => outer,
        }
    }

    /// Outer radius of the support, if compact.
    pub fn support_radius(&self) -> Option<f64> {
        match self.kind {
            KernelKind::Gaussian => None,
            KernelKind::SmoothBump { outer, .. } => Some(outer),
        }
    }
}

impl std::str::FromStr for RadialKernel {
    type Err = Error;

    /// `gaussian` or `bump:INNER,OUTER`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("gaussian") {
            return Ok(Self::gaussian());
        }
        if let Some(rest) = s.strip_prefix("bump:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() == 2 {
                let inner = parts[0].trim().parse::<f64>();
                let outer = parts[1].trim().parse::<f64>();
                if let (Ok(a), Ok(b)) = (inner, outer) {
                    return Self::smooth_bump(a, b);
                }
            }
        }
        Err(Error::invalid(format!("unknown kernel '{s}', expected gaussian or bump:INNER,OUTER")))
    }
}

impl std::fmt::Display for RadialKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            KernelKind::Gaussian => write!(f, "gaussian"),
            KernelKind::SmoothBump { inner, outer } => write!(f, "bump:{inner},{outer}"),
        }
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn kernel() -> impl Strategy<Value = RadialKernel> {
        prop_oneof![
            Just(RadialKernel::gaussian()),
            (0.1f64..1.0, 0.1f64..1.0)
                .prop_map(|(a, w)| RadialKernel::smooth_bump(a, a + w).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn scaling_identity(k in kernel(), eps in 0.01f64..10.0,
                            x in prop::collection::vec(-3.0f64..3.0, 1..4)) {
            let lhs = k.eval_scaled(eps, &x);
            let xs: Vec<f64> = x.iter().map(|c| c / eps).collect();
            let rhs = eps.powi(-(x.len() as i32)) * k.eval_scaled(1.0, &xs);
            // exp(-s) inherits a relative error of about s * ulp from its argument
            let s: f64 = xs.iter().map(|c| c * c).sum();
            prop_assert!((lhs - rhs).abs() <= 1e-14 * (1.0 + s) * lhs.abs().max(1e-300) + 1e-300);
        }

        #[test]
        fn radial_derivative_identity(eps in 0.05f64..5.0,
                                      x in prop::collection::vec(-2.0f64..2.0, 1..4)) {
            // d/deps g_eps(x) = (h_eps(x) - dim g_eps(x)) / eps
            let k = RadialKernel::gaussian();
            let d = x.len() as f64;
            // keep |x| / eps moderate so the central difference is accurate
            prop_assume!(x.iter().map(|c| c * c).sum::<f64>() <= 16.0 * eps * eps);
            let step = 1e-5 * eps;
            let fd = (k.eval_scaled(eps + step, &x) - k.eval_scaled(eps - step, &x)) / (2.0 * step);
            let exact = (k.eval_scaled_negderiv(eps, &x) - d * k.eval_scaled(eps, &x)) / eps;
            let scale = exact.abs().max(k.eval_scaled(eps, &x) / eps).max(1e-300);
            prop_assert!((fd - exact).abs() <= 1e-6 * scale, "fd={} exact={}", fd, exact);
        }

        #[test]
        fn profiles_nonnegative_and_monotone(k in kernel(), e in -6.0f64..3.0) {
            let r = 10f64.powf(e);
            prop_assert!(k.negderiv_profile(r) >= 0.0);
            prop_assert!(k.profile(r) >= 0.0);
            prop_assert!(k.profile(r * 1.01) <= k.profile(r));
        }
    }
}
