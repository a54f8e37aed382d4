//! Kernel partition functions stay within constant factors of box counting.

use renyi_filter::dimension::power_scales;
use renyi_filter::partitions::{ratio_correlation_vs_boxes, ratio_kernel_sum_vs_boxes};
use renyi_filter::{DiscreteMeasure, RadialKernel};

fn main() -> renyi_filter::Result<()> {
    let mu = DiscreteMeasure::cantor(8, 1.0 / 3.0, 0.5)?;
    let g = RadialKernel::gaussian();
    let eps = power_scales(3.0, -1, -7);
    let corr = ratio_correlation_vs_boxes(&mu, &g, &eps, 2.0)?;
    let sum = ratio_kernel_sum_vs_boxes(&mu, &g, &eps, 2.0)?;

    println!("{:>10} {:>12} {:>12}", "eps", "correlation", "kernel sum");
    for ((e, c), s) in eps.iter().zip(&corr).zip(&sum) {
        println!("{e:>10.6} {c:>12.6} {s:>12.6}");
    }
    let point = DiscreteMeasure::unit_point(1)?;
    let theta = ratio_kernel_sum_vs_boxes(&point, &g, &[1.0], 2.0)?[0];
    println!("point mass kernel-sum ratio {theta:.9} (sum of exp(-2 j^2))");
    Ok(())
}
