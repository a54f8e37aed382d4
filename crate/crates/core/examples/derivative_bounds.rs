//! Log-log slope of the filtered norm against scale, checked against its
//! two-sided bounds and a finite difference.

use renyi_filter::filterops::{check_slope_bounds, lq_norm, norm_derivative};
use renyi_filter::{DiscreteMeasure, QuadratureSpec, RadialKernel};

fn main() -> renyi_filter::Result<()> {
    let mu = DiscreteMeasure::random(30, 2, 7)?;
    let g = RadialKernel::gaussian();
    let quad = QuadratureSpec::default();
    let q = 2.0;
    let h = 1e-4;

    println!("{:>10} {:>10} {:>10} {:>10} {:>10}", "eps", "slope", "lower", "upper", "fd");
    for k in 0..10 {
        let eps = 10f64.powf(1.0 - 0.3 * k as f64);
        let r = norm_derivative(&mu, &g, eps, q, &quad)?;
        let ln_norm = |l: f64| lq_norm(&mu, &g, l.exp(), q, &quad).map(f64::ln);
        let fd = (ln_norm(eps.ln() + h)? - ln_norm(eps.ln() - h)?) / (2.0 * h);
        let ok = check_slope_bounds(&r, &g).passed;
        println!(
            "{eps:>10.4} {:>10.5} {:>10.5} {:>10.5} {fd:>10.5} {}",
            r.loglog_slope,
            r.lower_bound,
            r.upper_bound,
            if ok { "" } else { "out of bounds" }
        );
    }
    Ok(())
}
