//! Treats a grayscale image as a measure on the unit square and estimates
//! its box dimension. Pass a PGM path, or run without arguments to use a
//! generated Sierpinski carpet.

use renyi_filter::dimension::{power_scales, renyi_dimension};
use renyi_filter::{DiscreteMeasure, PartitionKind};

fn carpet(side: usize) -> String {
    let mut out = format!("P2\n{side} {side}\n1\n");
    for y in 0..side {
        let row: Vec<&str> = (0..side)
            .map(|x| {
                let (mut a, mut b) = (x, y);
                while a > 0 || b > 0 {
                    if a % 3 == 1 && b % 3 == 1 {
                        return "0";
                    }
                    a /= 3;
                    b /= 3;
                }
                "1"
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = match std::env::args().nth(1) {
        Some(p) => std::path::PathBuf::from(p),
        None => {
            let p = std::env::temp_dir().join("renyi-carpet.pgm");
            std::fs::write(&p, carpet(243))?;
            p
        }
    };
    let mu = DiscreteMeasure::from_pgm(&path)?;
    println!("{}: {} nonzero pixels", path.display(), mu.len());
    for q in [2.0, 3.0] {
        let est = renyi_dimension(&PartitionKind::BoxSum, &mu, q, &power_scales(3.0, -1, -4), None)?;
        println!("q = {q}: box dimension {:.4}", est.slope);
    }
    println!("carpet dimension ln 8 / ln 3 = {:.4}", 8f64.ln() / 3f64.ln());
    Ok(())
}
