//! Finite atomic measures with compact support.
//!
//! A [`DiscreteMeasure`] is a list of weighted atoms in `dim` dimensions.
//! Every evaluator in the crate works on these; continuum measures (Cantor,
//! Lebesgue on the cube) are represented by fine atomic approximants.

use std::fs;
use std::path::Path;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the number of atoms a generator may produce.
pub const DEFAULT_ATOM_CAP: usize = 1 << 22;

/// A finite Borel measure given by positive point masses.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    dim: usize,
    coords: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    /// Builds a measure from row-major coordinates (`weights.len() * dim` values).
    pub fn from_flat(dim: usize, coords: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if weights.is_empty() {
            return Err(Error::invalid("measure has no atoms"));
        }
        if coords.len() != weights.len() * dim {
            return Err(Error::invalid(format!(
                "expected {} coordinates for {} atoms in dimension {dim}, got {}",
                weights.len() * dim,
                weights.len(),
                coords.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::invalid(format!("atom weight must be positive and finite, got {w}")));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("atom coordinates must be finite"));
        }
        Ok(Self { dim, coords, weights })
    }

    /// Point masses at `points` with the given weights (not normalized).
    pub fn point_masses(points: &[Vec<f64>], weights: &[f64]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("measure has no atoms"));
        }
        if points.len() != weights.len() {
            return Err(Error::invalid(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::invalid("points have mismatched dimensions"));
        }
        let coords = points.iter().flatten().copied().collect();
        Self::from_flat(dim, coords, weights.to_vec())
    }

    /// Unit point mass at the origin of `R^dim`.
    pub fn unit_point(dim: usize) -> Result<Self> {
        Self::from_flat(dim, vec![0.0; dim], vec![1.0])
    }

    /// Depth-`depth` approximant of the self-similar Cantor measure on [0, 1].
    ///
    /// Atoms sit at the left endpoints of the `2^depth` surviving intervals;
    /// the left branch carries probability `p`.
    pub fn cantor(depth: u32, ratio: f64, p: f64) -> Result<Self> {
        Self::cantor_capped(depth, ratio, p, DEFAULT_ATOM_CAP)
    }

    pub fn cantor_capped(depth: u32, ratio: f64, p: f64, cap: usize) -> Result<Self> {
        if !(ratio > 0.0 && ratio <= 0.5) {
            return Err(Error::invalid(format!("cantor ratio must lie in (0, 1/2], got {ratio}")));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::invalid(format!("cantor probability must lie in (0, 1), got {p}")));
        }
        let requested = 1u128.checked_shl(depth).unwrap_or(u128::MAX);
        if depth >= 64 || requested > cap as u128 {
            return Err(Error::AtomCap { requested, cap });
        }
        let n = 1usize << depth;
        let mut coords = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for code in 0..n {
            // bit (depth - i) of `code` is the branch taken at level i
            let mut x = 0.0;
            let mut w = 1.0;
            for level in 0..depth {
                let right = (code >> level) & 1 == 1;
                x = ratio * x + if right { 1.0 - ratio } else { 0.0 };
                w *= if right { 1.0 - p } else { p };
            }
            coords.push(x);
            weights.push(w);
        }
        Self::from_flat(1, coords, weights)
    }

    /// `per_axis^dim` equal atoms at the cell centers of the unit cube.
    pub fn uniform_grid(dim: usize, per_axis: usize) -> Result<Self> {
        Self::uniform_grid_capped(dim, per_axis, DEFAULT_ATOM_CAP)
    }

    pub fn uniform_grid_capped(dim: usize, per_axis: usize, cap: usize) -> Result<Self> {
        if dim == 0 || per_axis == 0 {
            return Err(Error::invalid("uniform grid needs dim >= 1 and per_axis >= 1"));
        }
        let requested = (per_axis as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if requested > cap as u128 {
            return Err(Error::AtomCap { requested, cap });
        }
        let n = requested as usize;
        let w = 1.0 / n as f64;
        let mut coords = Vec::with_capacity(n * dim);
        for idx in 0..n {
            let mut rem = idx;
            for _ in 0..dim {
                coords.push(((rem % per_axis) as f64 + 0.5) / per_axis as f64);
                rem /= per_axis;
            }
        }
        Self::from_flat(dim, coords, vec![w; n])
    }

    /// `atoms` points uniform in `[0, 1]^dim` with weights uniform in
    /// `[0.1, 1)`, reproducible from `seed`.
    pub fn random(atoms: usize, dim: usize, seed: u64) -> Result<Self> {
        if atoms == 0 || dim == 0 {
            return Err(Error::invalid("random measure needs atoms >= 1 and dim >= 1"));
        }
        if atoms > DEFAULT_ATOM_CAP {
            return Err(Error::AtomCap { requested: atoms as u128, cap: DEFAULT_ATOM_CAP });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..atoms * dim).map(|_| rng.random_range(0.0..1.0)).collect();
        let weights = (0..atoms).map(|_| rng.random_range(0.1..1.0)).collect();
        Self::from_flat(dim, coords, weights)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.coords.chunks_exact(self.dim).zip(self.weights.iter().copied())
    }

    pub fn total_mass(&self) -> f64 {
        crate::sum::pairwise_sum(&self.weights)
    }

    /// Smallest `R` with every atom in the closed ball of radius `R` about 0.
    pub fn support_radius(&self) -> f64 {
        self.coords
            .chunks_exact(self.dim)
            .map(|p| p.iter().map(|c| c * c).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    /// Axis-aligned bounding box `(lo, hi)` of the atoms.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for p in self.coords.chunks_exact(self.dim) {
            for d in 0..self.dim {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        (lo, hi)
    }

    /// The same atoms with every weight multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::from_flat(
            self.dim,
            self.coords.clone(),
            self.weights.iter().map(|w| w * c).collect(),
        )
    }

    /// Probability normalization.
    pub fn normalized(&self) -> Self {
        let m = self.total_mass();
        Self {
            dim: self.dim,
            coords: self.coords.clone(),
            weights: self.weights.iter().map(|w| w / m).collect(),
        }
    }

    /// Smallest distance between two distinct atom positions, `None` for a single atom.
    pub fn min_spacing(&self) -> Option<f64> {
        if self.len() < 2 {
            return None;
        }
        if self.dim == 1 {
            let mut xs = self.coords.clone();
            xs.sort_by(f64::total_cmp);
            return xs.windows(2).map(|w| w[1] - w[0]).filter(|d| *d > 0.0).reduce(f64::min);
        }
        // bounded brute force; the spacing check is advisory
        let n = self.len().min(4096);
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = dist2(self.point(i), self.point(j)).sqrt();
                if d > 0.0 {
                    best = best.min(d);
                }
            }
        }
        best.is_finite().then_some(best)
    }

    /// Masses `mu(eps*k + eps*[0,1)^dim)` of the occupied grid cells.
    pub fn box_counts(&self, eps: f64) -> BoxCounts {
        assert!(eps > 0.0, "box_counts needs eps > 0");
        let n = self.len();
        let mut keys = Vec::with_capacity(n * self.dim);
        for p in self.coords.chunks_exact(self.dim) {
            keys.extend(p.iter().map(|&x| cell_index(x, eps)));
        }
        let dim = self.dim;
        let key = |i: usize| &keys[i * dim..(i + 1) * dim];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| key(a).cmp(key(b)));
        let mut cells = Vec::new();
        let mut i = 0;
        while i < n {
            let k = key(order[i]);
            let mut mass = 0.0;
            let mut j = i;
            while j < n && key(order[j]) == k {
                mass += self.weights[order[j]];
                j += 1;
            }
            cells.push((k.to_vec(), mass));
            i = j;
        }
        BoxCounts { eps, cells }
    }

    /// Reads a measure from a binary (P5) or ASCII (P2) PGM image.
    ///
    /// Each nonzero pixel becomes an atom at its center, scaled by the longer
    /// image side; weights are intensities normalized to total mass 1.
    pub fn from_pgm(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = fs::read(path).map_err(|source| Error::Io { path: path.into(), source })?;
        let bad = |reason: String| Error::Image { path: path.into(), reason };
        if !(bytes.starts_with(b"P2") || bytes.starts_with(b"P5")) {
            return Err(bad("not a P2/P5 graymap".into()));
        }
        let img = image::load_from_memory_with_format(&bytes, image::ImageFormat::Pnm)
            .map_err(|e| bad(e.to_string()))?
            .into_luma16();
        let (w, h) = img.dimensions();
        let scale = w.max(h) as f64;
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for (col, row, px) in img.enumerate_pixels() {
            let v = px.0[0];
            if v > 0 {
                points.push((col as f64 + 0.5) / scale);
                points.push((row as f64 + 0.5) / scale);
                weights.push(v as f64);
            }
        }
        if weights.is_empty() {
            return Err(bad("image has no nonzero pixels".into()));
        }
        let total = crate::sum::pairwise_sum(&weights);
        weights.iter_mut().for_each(|w| *w /= total);
        Self::from_flat(2, points, weights)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&MeasureFile::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MeasureFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn save_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()?).map_err(|source| Error::Io { path: path.into(), source })
    }

    pub fn load_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
        Self::from_json(&text)
    }
}

/// Cell index `floor(x / eps)` with values within a few ulps of a cell
/// boundary assigned to the cell above it, so atoms placed on grid lines by
/// construction land in the half-open cell they belong to.
pub fn cell_index(x: f64, eps: f64) -> i64 {
    let r = x / eps;
    let k = r.round();
    if (r - k).abs() <= 8.0 * f64::EPSILON * k.abs().max(1.0) {
        k as i64
    } else {
        r.floor() as i64
    }
}

pub(crate) fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Occupied cells of the `eps`-grid and their masses, sorted by index.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxCounts {
    eps: f64,
    cells: Vec<(Vec<i64>, f64)>,
}

impl BoxCounts {
    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&[i64], f64)> + '_ {
        self.cells.iter().map(|(k, m)| (k.as_slice(), *m))
    }

    pub fn masses(&self) -> Vec<f64> {
        self.cells.iter().map(|(_, m)| *m).collect()
    }

    pub fn get(&self, k: &[i64]) -> Option<f64> {
        self.cells
            .binary_search_by(|(key, _)| key.as_slice().cmp(k))
            .ok()
            .map(|i| self.cells[i].1)
    }

    pub fn total(&self) -> f64 {
        crate::sum::pairwise_sum(&self.masses())
    }

    /// `sum_k mass_k^q`.
    pub fn power_sum(&self, q: f64) -> f64 {
        let terms: Vec<f64> = self.cells.iter().map(|(_, m)| m.powf(q)).collect();
        crate::sum::pairwise_sum(&terms)
    }
}

#[derive(Serialize, Deserialize)]
struct AtomRecord {
    x: Vec<f64>,
    w: f64,
}

/// On-disk layout: `{"dim": int, "atoms": [{"x": [..], "w": ..}]}`.
#[derive(Serialize, Deserialize)]
struct MeasureFile {
    dim: usize,
    atoms: Vec<AtomRecord>,
}

impl From<&DiscreteMeasure> for MeasureFile {
    fn from(m: &DiscreteMeasure) -> Self {
        MeasureFile {
            dim: m.dim,
            atoms: m.atoms().map(|(x, w)| AtomRecord { x: x.to_vec(), w }).collect(),
        }
    }
}

impl TryFrom<MeasureFile> for DiscreteMeasure {
    type Error = Error;

    fn try_from(f: MeasureFile) -> Result<Self> {
        if f.atoms.iter().any(|a| a.x.len() != f.dim) {
            return Err(Error::invalid(format!("atom coordinate count differs from dim {}", f.dim)));
        }
        let weights = f.atoms.iter().map(|a| a.w).collect();
        let coords = f.atoms.into_iter().flat_map(|a| a.x).collect();
        DiscreteMeasure::from_flat(f.dim, coords, weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn random_is_reproducible() {
        let a = DiscreteMeasure::random(30, 2, 7).unwrap();
        assert_eq!(a, DiscreteMeasure::random(30, 2, 7).unwrap());
        assert_ne!(a, DiscreteMeasure::random(30, 2, 8).unwrap());
        assert!(a.coords().iter().all(|c| (0.0..1.0).contains(c)));
        assert!(DiscreteMeasure::random(0, 2, 1).is_err());
    }

    #[test]
    fn point_masses_examples() {
        let m = DiscreteMeasure::point_masses(&[vec![0.0]], &[1.0]).unwrap();
        assert_eq!(m.total_mass(), 1.0);
        let m = DiscreteMeasure::point_masses(&[vec![0.0], vec![1.0]], &[0.5, 0.5]).unwrap();
        assert_eq!(m.total_mass(), 1.0);
        let m = DiscreteMeasure::point_masses(&[vec![0.0, 0.0], vec![1.0, 1.0]], &[2.0, 3.0]).unwrap();
        assert_eq!((m.dim(), m.total_mass()), (2, 5.0));
    }

    #[test]
    fn point_masses_errors() {
        assert!(DiscreteMeasure::point_masses(&[], &[]).is_err());
        assert!(DiscreteMeasure::point_masses(&[vec![0.0]], &[0.0]).is_err());
        assert!(DiscreteMeasure::point_masses(&[vec![0.0]], &[-1.0]).is_err());
        assert!(DiscreteMeasure::point_masses(&[vec![0.0], vec![1.0, 2.0]], &[1.0, 1.0]).is_err());
        assert!(DiscreteMeasure::point_masses(&[vec![0.0]], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn cantor_small_depths() {
        let m = DiscreteMeasure::cantor(0, 1.0 / 3.0, 0.5).unwrap();
        assert_eq!((m.len(), m.point(0)[0], m.weight(0)), (1, 0.0, 1.0));
        let m = DiscreteMeasure::cantor(1, 1.0 / 3.0, 0.5).unwrap();
        let mut xs: Vec<f64> = m.coords().to_vec();
        xs.sort_by(f64::total_cmp);
        assert_eq!(xs[0], 0.0);
        assert!((xs[1] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(m.weights(), &[0.5, 0.5]);
        assert!((m.support_radius() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn cantor_weights_are_binomial_products() {
        let (p, d) = (0.3, 7);
        let m = DiscreteMeasure::cantor(d, 1.0 / 3.0, p).unwrap();
        for &w in m.weights() {
            let ok = (0..=d).any(|a| {
                let expect = p.powi(a as i32) * (1.0 - p).powi((d - a) as i32);
                (w - expect).abs() <= 1e-15 * expect
            });
            assert!(ok, "weight {w} is not p^a (1-p)^(d-a)");
        }
        assert!((m.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cantor_cap_and_parameter_errors() {
        assert!(matches!(
            DiscreteMeasure::cantor_capped(5, 1.0 / 3.0, 0.5, 16),
            Err(Error::AtomCap { requested: 32, cap: 16 })
        ));
        assert!(DiscreteMeasure::cantor(23, 1.0 / 3.0, 0.5).is_err());
        assert!(DiscreteMeasure::cantor(2, 0.6, 0.5).is_err());
        assert!(DiscreteMeasure::cantor(2, 1.0 / 3.0, 1.0).is_err());
    }

    #[test]
    fn uniform_grid_examples() {
        let m = DiscreteMeasure::uniform_grid(1, 1).unwrap();
        assert_eq!((m.point(0)[0], m.weight(0)), (0.5, 1.0));
        let m = DiscreteMeasure::uniform_grid(1, 4).unwrap();
        assert_eq!(m.coords(), &[0.125, 0.375, 0.625, 0.875]);
        assert!(m.weights().iter().all(|&w| w == 0.25));
        let m = DiscreteMeasure::uniform_grid(2, 16).unwrap();
        assert_eq!(m.len(), 256);
        let s2 = m.box_counts(1.0 / 16.0).power_sum(2.0);
        assert!((s2 - 1.0 / 256.0).abs() < 1e-15);
        assert!(DiscreteMeasure::uniform_grid_capped(2, 100, 1000).is_err());
    }

    #[test]
    fn support_radius_examples() {
        let m = DiscreteMeasure::unit_point(1).unwrap();
        assert_eq!((m.total_mass(), m.support_radius()), (1.0, 0.0));
        let m = DiscreteMeasure::point_masses(&[vec![0.0], vec![1.0]], &[0.5, 0.5]).unwrap();
        assert_eq!((m.total_mass(), m.support_radius()), (1.0, 1.0));
    }

    #[test]
    fn box_counts_half_open_cells() {
        let m = DiscreteMeasure::unit_point(1).unwrap();
        let b = m.box_counts(1.0);
        assert_eq!((b.len(), b.get(&[0])), (1, Some(1.0)));
        let m = DiscreteMeasure::point_masses(&[vec![0.0], vec![1.0]], &[0.5, 0.5]).unwrap();
        let b = m.box_counts(1.0);
        assert_eq!((b.get(&[0]), b.get(&[1])), (Some(0.5), Some(0.5)));
    }

    #[test]
    fn box_counts_depth_two_cantor() {
        // atoms 0, 2/9, 2/3, 8/9 lie on cell boundaries of the 1/9 grid
        let m = DiscreteMeasure::cantor(2, 1.0 / 3.0, 0.5).unwrap();
        let b = m.box_counts(1.0 / 9.0);
        let keys: Vec<i64> = b.cells().map(|(k, _)| k[0]).collect();
        assert_eq!(keys, vec![0, 2, 6, 8]);
        assert!(b.masses().iter().all(|&w| w == 0.25));
    }

    #[test]
    fn cantor_raw_sums_are_exact_at_triadic_scales() {
        let m = DiscreteMeasure::cantor(10, 1.0 / 3.0, 0.5).unwrap();
        assert_eq!(m.len(), 1024);
        for k in 0..=10 {
            // brute force: group atoms by their first k ternary digits
            let mut groups: BTreeMap<u64, f64> = BTreeMap::new();
            for i in 0..m.len() {
                let x = m.point(i)[0];
                let digits = (x * 3f64.powi(k) + 1e-9).floor() as u64;
                *groups.entry(digits).or_default() += m.weight(i);
            }
            let brute: f64 = groups.values().map(|w| w * w).sum();
            let s2 = m.box_counts(3f64.powi(-k)).power_sum(2.0);
            let expect = 2f64.powi(-k);
            assert!((brute - expect).abs() < 1e-14 * expect.max(1e-300) + 1e-15);
            assert!((s2 - expect).abs() < 1e-12 * expect, "k={k}: {s2} vs {expect}");
        }
    }

    #[test]
    fn json_roundtrip_cantor() {
        let m = DiscreteMeasure::cantor(3, 1.0 / 3.0, 0.5).unwrap();
        let back = DiscreteMeasure::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn json_rejects_empty_and_mismatched() {
        assert!(DiscreteMeasure::from_json(r#"{"dim":1,"atoms":[]}"#).is_err());
        assert!(DiscreteMeasure::from_json(r#"{"dim":2,"atoms":[{"x":[0],"w":1}]}"#).is_err());
        assert!(DiscreteMeasure::from_json(r#"{"dim":1,"atoms":[{"x":[0],"w":-1}]}"#).is_err());
    }

    fn write_tmp(bytes: &[u8]) -> tempfile::NamedTempFile {
        use std::io::Write;
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(bytes).unwrap();
        f
    }

    #[test]
    fn pgm_single_pixel_and_symmetry() {
        let f = write_tmp(b"P2\n1 1\n255\n255\n");
        let m = DiscreteMeasure::from_pgm(f.path()).unwrap();
        assert_eq!((m.len(), m.weight(0)), (1, 1.0));
        assert_eq!(m.point(0), &[0.5, 0.5]);

        let mut bin = b"P5\n2 1\n255\n".to_vec();
        bin.extend([100u8, 100u8]);
        let f = write_tmp(&bin);
        let m = DiscreteMeasure::from_pgm(f.path()).unwrap();
        assert_eq!(m.weights(), &[0.5, 0.5]);
        assert_eq!(m.point(1), &[0.75, 0.25]);
    }

    #[test]
    fn pgm_sixteen_bit_ascii() {
        let f = write_tmp(b"P2\n# comment\n3 1\n65535\n0 1000 3000\n");
        let m = DiscreteMeasure::from_pgm(f.path()).unwrap();
        assert_eq!(m.len(), 2);
        assert!((m.weight(0) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn pgm_errors() {
        let f = write_tmp(b"P2\n2 1\n255\n0 0\n");
        assert!(matches!(DiscreteMeasure::from_pgm(f.path()), Err(Error::Image { .. })));
        let f = write_tmp(b"P2\n2 x\n255\n0 0\n");
        assert!(matches!(DiscreteMeasure::from_pgm(f.path()), Err(Error::Image { .. })));
        let f = write_tmp(b"P6\n1 1\n255\n\x01\x02\x03");
        assert!(matches!(DiscreteMeasure::from_pgm(f.path()), Err(Error::Image { .. })));
        assert!(matches!(
            DiscreteMeasure::from_pgm("/nonexistent/file.pgm"),
            Err(Error::Io { .. })
        ));
    }
}
