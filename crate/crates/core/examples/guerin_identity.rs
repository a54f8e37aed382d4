//! Growth rate of ||g_{1/x} * mu||_q as x grows against (q-1)/q (dim - D_q).

use renyi_filter::dimension::{guerin_exponent_check, power_scales};
use renyi_filter::{DiscreteMeasure, QuadratureSpec, RadialKernel};

fn main() -> renyi_filter::Result<()> {
    let g = RadialKernel::gaussian();
    let quad = QuadratureSpec::default();
    let cases = [
        ("point", DiscreteMeasure::unit_point(1)?, power_scales(2.0, 8, 1)),
        ("cantor", DiscreteMeasure::cantor(10, 1.0 / 3.0, 0.5)?, power_scales(3.0, 7, 2)),
        ("uniform", DiscreteMeasure::uniform_grid(1, 256)?, power_scales(2.0, 8, 1)),
    ];
    for (name, mu, mut xs) in cases {
        xs.reverse();
        for q in [2.0, 3.0] {
            let r = guerin_exponent_check(&mu, &g, q, &xs, &quad)?;
            println!("{name:<8} q = {q}: growth {:.4}, predicted {:.4} (D = {:.4})", r.lhs, r.rhs, r.dimension);
        }
    }
    Ok(())
}
