//! Sparse tensor grids near the support of a measure.
//!
//! Space is cut into cubic blocks whose side is at least the interaction
//! reach. Only blocks within one block of an atom are visited, and each
//! grid point only looks at atoms in the surrounding `3^dim` blocks, so a
//! point never misses an atom closer than the reach.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::measures::DiscreteMeasure;
use crate::sum::pairwise_sum_rows;

type Key = Vec<i64>;

struct Bins {
    dim: usize,
    map: HashMap<Key, Vec<u32>>,
}

impl Bins {
    fn new(mu: &DiscreteMeasure, side: f64) -> Self {
        let dim = mu.dim();
        let mut map: HashMap<Key, Vec<u32>> = HashMap::new();
        for (i, (p, _)) in mu.atoms().enumerate() {
            let key: Key = p.iter().map(|&c| (c / side).floor() as i64).collect();
            map.entry(key).or_default().push(i as u32);
        }
        Self { dim, map }
    }

    fn sorted_keys(&self) -> Vec<&Key> {
        let mut keys: Vec<&Key> = self.map.keys().collect();
        keys.sort();
        keys
    }

    /// Atoms in the `3^dim` bins around `key`, in a fixed order.
    fn neighbors(&self, key: &[i64]) -> Vec<u32> {
        let mut out = Vec::new();
        let mut probe = key.to_vec();
        for offs in offsets(self.dim) {
            for d in 0..self.dim {
                probe[d] = key[d] + offs[d];
            }
            if let Some(v) = self.map.get(&probe) {
                out.extend_from_slice(v);
            }
        }
        out
    }
}

fn offsets(dim: usize) -> Vec<Vec<i64>> {
    let mut all = vec![vec![]];
    for _ in 0..dim {
        all = all
            .into_iter()
            .flat_map(|v| {
                (-1..=1).map(move |o| {
                    let mut w = v.clone();
                    w.push(o);
                    w
                })
            })
            .collect();
    }
    all
}

/// Sums `f(x, neighbors)` over grid points `x = (i + offset) * h`, `i` in
/// `Z^dim`, restricted to points within `reach` (in the block sense) of an atom.
/// Returns the raw sum; callers multiply by the cell volume when integrating.
pub(crate) fn grid_reduce<const N: usize, F>(
    mu: &DiscreteMeasure,
    h: f64,
    offset: f64,
    reach: f64,
    f: F,
) -> [f64; N]
where
    F: Fn(&[f64], &[u32]) -> [f64; N] + Sync,
{
    let dim = mu.dim();
    let m = ((reach / h).ceil() as i64).max(1);
    let side = m as f64 * h;
    let bins = Bins::new(mu, side);

    let mut blocks: Vec<Key> = Vec::with_capacity(bins.map.len() * 3usize.pow(dim as u32));
    let offs = offsets(dim);
    for key in bins.map.keys() {
        for o in &offs {
            blocks.push(key.iter().zip(o).map(|(k, d)| k + d).collect());
        }
    }
    blocks.sort_unstable();
    blocks.dedup();

    let partial: Vec<[f64; N]> = blocks
        .par_iter()
        .map(|block| {
            let nb = bins.neighbors(block);
            let mut acc = [0.0; N];
            if nb.is_empty() {
                return acc;
            }
            let mut idx: Vec<i64> = block.iter().map(|b| b * m).collect();
            let start = idx.clone();
            let mut x = vec![0.0; dim];
            loop {
                for d in 0..dim {
                    x[d] = (idx[d] as f64 + offset) * h;
                }
                let v = f(&x, &nb);
                for (a, y) in acc.iter_mut().zip(v) {
                    *a += y;
                }
                // odometer over the block's m^dim points
                let mut d = 0;
                loop {
                    if d == dim {
                        return acc;
                    }
                    idx[d] += 1;
                    if idx[d] < start[d] + m {
                        break;
                    }
                    idx[d] = start[d];
                    d += 1;
                }
            }
        })
        .collect();
    pairwise_sum_rows(&partial)
}

/// Sums `f(j, neighbors_of_j)` over atoms `j`, where the neighbor list holds
/// every atom within `reach` of atom `j` (and possibly a few farther ones).
pub(crate) fn atom_reduce<const N: usize, F>(mu: &DiscreteMeasure, reach: f64, f: F) -> [f64; N]
where
    F: Fn(usize, &[u32]) -> [f64; N] + Sync,
{
    let side = if reach.is_finite() && reach > 0.0 { reach } else { f64::INFINITY };
    if !side.is_finite() {
        let all: Vec<u32> = (0..mu.len() as u32).collect();
        let rows: Vec<[f64; N]> = (0..mu.len()).into_par_iter().map(|j| f(j, &all)).collect();
        return pairwise_sum_rows(&rows);
    }
    let bins = Bins::new(mu, side);
    let keys = bins.sorted_keys();
    let rows: Vec<[f64; N]> = keys
        .par_iter()
        .map(|key| {
            let nb = bins.neighbors(key);
            let own = &bins.map[*key];
            let per_atom: Vec<[f64; N]> = own.iter().map(|&j| f(j as usize, &nb)).collect();
            pairwise_sum_rows(&per_atom)
        })
        .collect();
    pairwise_sum_rows(&rows)
}
