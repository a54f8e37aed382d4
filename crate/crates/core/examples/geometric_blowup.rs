//! On eps_n = 2^-n the norm differences of a Cantor measure grow like
//! 2^(n (q-1)/q (1-D)); a uniform measure has geometrically shrinking ones.

use renyi_filter::schedule::{geometric_blowup_stat, run_schedule, ScaleSchedule};
use renyi_filter::{DiscreteMeasure, QuadratureSpec, RadialKernel};

fn main() -> renyi_filter::Result<()> {
    let g = RadialKernel::gaussian();
    let quad = QuadratureSpec::default();
    let d = 2f64.ln() / 3f64.ln();

    let cases = [
        ("cantor", DiscreteMeasure::cantor(10, 1.0 / 3.0, 0.5)?, 12),
        ("uniform", DiscreteMeasure::uniform_grid(1, 2048)?, 10),
    ];
    for (name, mu, n1) in cases {
        let report = run_schedule(&mu, &g, &ScaleSchedule::geometric(2, n1)?, 2.0, &quad)?;
        println!("{name}: slope of ln diff vs n = {:.4}", geometric_blowup_stat(&report)?);
        for (n, diff) in report.n[1..].iter().zip(&report.diffs) {
            println!("  n = {n:>2}  diff = {diff:.6e}");
        }
    }
    println!("cantor prediction: {:.4}", 0.5 * (1.0 - d) * 2f64.ln());
    Ok(())
}
