//! Two atoms at distance 1: the closed-ball correlation sum jumps at eps = 1,
//! the kernel versions vary smoothly.

use renyi_filter::partitions::{evaluate, refinement_jump_test};
use renyi_filter::{DiscreteMeasure, PartitionKind, RadialKernel};

fn main() -> renyi_filter::Result<()> {
    let mu = DiscreteMeasure::point_masses(&[vec![0.0], vec![1.0]], &[0.5, 0.5])?;
    let g = RadialKernel::gaussian();
    let kinds = [PartitionKind::BallCorrelation, PartitionKind::KernelCorrelation(g), PartitionKind::KernelLatticeSum(g)];

    println!("{:>8} {:>12} {:>12} {:>12}", "eps", "ball-corr", "kernel-corr", "kernel-sum");
    for eps in [0.9, 0.99, 0.999999, 1.0, 1.01, 1.1] {
        print!("{eps:>8}");
        for kind in &kinds {
            print!(" {:>12.6}", evaluate(kind, &mu, eps, 2.0, None)?);
        }
        println!();
    }
    for kind in &kinds {
        let r = refinement_jump_test(kind, &mu, 2.0, 0.75, 1.5, 1000, None)?;
        println!("{kind}: worst step ratio {:.2}, continuous: {}", r.worst_ratio, r.passed);
    }
    Ok(())
}
