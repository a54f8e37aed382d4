//! Estimates the correlation dimension of the middle-thirds Cantor measure
//! with every partition function and compares against ln 2 / ln 3.

use renyi_filter::dimension::{power_scales, renyi_dimension};
use renyi_filter::{DiscreteMeasure, PartitionKind, QuadratureSpec, RadialKernel};

fn main() -> renyi_filter::Result<()> {
    let mu = DiscreteMeasure::cantor(10, 1.0 / 3.0, 0.5)?;
    let eps = power_scales(3.0, -2, -7);
    let quad = QuadratureSpec::default();
    let exact = 2f64.ln() / 3f64.ln();

    println!("{} atoms, exact D_2 = {exact:.6}", mu.len());
    println!("{:<12} {:>9} {:>9} {:>9}", "kind", "slope", "lower", "upper");
    for kind in PartitionKind::normalized_kinds(&RadialKernel::gaussian()) {
        let est = renyi_dimension(&kind, &mu, 2.0, &eps, Some(&quad))?;
        println!("{:<12} {:>9.5} {:>9.5} {:>9.5}", kind.name(), est.slope, est.lower, est.upper);
    }
    Ok(())
}
