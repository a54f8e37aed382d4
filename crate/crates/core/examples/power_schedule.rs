//! Differences of filtered norms along eps_n = n^-t for a point mass, where
//! the critical rate is exactly t = 2.

use renyi_filter::schedule::{run_schedule, ScaleSchedule};
use renyi_filter::{DiscreteMeasure, QuadratureSpec, RadialKernel};

fn main() -> renyi_filter::Result<()> {
    let mu = DiscreteMeasure::unit_point(1)?;
    let g = RadialKernel::gaussian();
    let quad = QuadratureSpec::default();

    for t in [1.0, 1.5, 2.0, 3.0, 4.0] {
        let schedule = ScaleSchedule::power(t, 2, 64)?;
        let report = run_schedule(&mu, &g, &schedule, 2.0, &quad)?.with_critical_exponent(0.0)?;
        println!(
            "t = {t:<4} m_hat = {:>7.4}  m_ratio = {:>7.4}  t* = {}  bounded differences: {}",
            report.m_hat, report.m_ratio, report.critical_t, report.in_i_q
        );
    }
    Ok(())
}
