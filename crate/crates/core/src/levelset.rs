//! Sublevel sets `{z : |theta(z)| < eps}` rasterized on a square grid over
//! `[-1, 1]^2`, with connected-component labeling and PGM output.
//!
//! The modulus is sampled once per resolution into a [`ModulusField`];
//! thresholding a field is exact, so occupancy is monotone in `eps` cell by cell.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::{Inner, Spec, C64};

pub const MIN_RESOLUTION: usize = 16;
pub const MAX_RESOLUTION: usize = 8192;
/// Width of the excluded boundary collar, in cells.
pub const COLLAR_CELLS: f64 = 2.0;
/// Truncation must stay below this fraction of `min(eps, 1 - eps)`.
pub const TRUNCATION_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    Four,
    #[default]
    Eight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PgmMode {
    #[default]
    Occupancy,
    Labels,
}

/// Cell-center coordinates of cell `(row, col)`; row 0 is the top edge.
pub fn cell_center(resolution: usize, row: usize, col: usize) -> C64 {
    let n = resolution as f64;
    // integer numerators keep the grid exactly symmetric under quarter turns
    let x = (2.0 * col as f64 + 1.0 - n) / n;
    let y = (n - 2.0 * row as f64 - 1.0) / n;
    C64::new(x, y)
}

/// Radius beyond which cells are not sampled.
pub fn collar_radius(resolution: usize) -> f64 {
    1.0 - COLLAR_CELLS / resolution as f64
}

fn check_resolution(resolution: usize) -> Result<()> {
    if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&resolution) {
        return Err(Error::Parameter {
            name: "resolution",
            value: resolution as f64,
            reason: "resolution must lie in 16..=8192",
        });
    }
    Ok(())
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Parameter {
            name: "epsilon",
            value: epsilon,
            reason: "epsilon must lie in (0, 1)",
        });
    }
    Ok(())
}

/// Sampled `|theta|` at cell centers; collar cells hold `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusField {
    pub resolution: usize,
    pub values: Vec<f64>,
    /// Truncation bound at the collar radius.
    pub truncation_bound: f64,
}

impl ModulusField {
    pub fn sample(spec: &Spec, resolution: usize) -> Result<Self> {
        check_resolution(resolution)?;
        let f = Inner::new(spec)?;
        let rmax = collar_radius(resolution);
        let rows: Vec<Vec<f64>> = (0..resolution)
            .into_par_iter()
            .map(|i| {
                (0..resolution)
                    .map(|j| {
                        let z = cell_center(resolution, i, j);
                        if z.norm() >= rmax {
                            Ok(f64::INFINITY)
                        } else {
                            f.value(z).map(|v| v.norm())
                        }
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            resolution,
            values: rows.concat(),
            truncation_bound: spec.truncation_bound(rmax),
        })
    }

    pub fn truncation_ok(&self, epsilon: f64) -> bool {
        self.truncation_bound < TRUNCATION_FRACTION * epsilon.min(1.0 - epsilon)
    }

    /// Occupancy at `epsilon`, labeled with 8-connectivity.
    pub fn grid(&self, epsilon: f64) -> Result<LevelSetGrid> {
        self.grid_with(epsilon, Connectivity::Eight)
    }

    pub fn grid_with(&self, epsilon: f64, connectivity: Connectivity) -> Result<LevelSetGrid> {
        check_epsilon(epsilon)?;
        let occupancy = self.values.iter().map(|&v| v < epsilon).collect();
        let mut grid = LevelSetGrid {
            epsilon,
            resolution: self.resolution,
            occupancy,
            labels: Vec::new(),
            component_count: 0,
            truncation_ok: self.truncation_ok(epsilon),
            truncation_bound: self.truncation_bound,
        };
        grid.relabel(connectivity);
        Ok(grid)
    }
}

/// Rasterized sublevel set. `labels[k]` is 0 for empty cells and a dense
/// component id in `1..=component_count` otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetGrid {
    pub epsilon: f64,
    pub resolution: usize,
    pub occupancy: Vec<bool>,
    pub labels: Vec<u32>,
    pub component_count: usize,
    pub truncation_ok: bool,
    pub truncation_bound: f64,
}

impl LevelSetGrid {
    /// Grid from an explicit row-major occupancy bitmap; `epsilon` is 0.
    pub fn from_occupancy(resolution: usize, occupancy: Vec<bool>) -> Self {
        assert_eq!(occupancy.len(), resolution * resolution, "bitmap size");
        let mut grid = Self {
            epsilon: 0.0,
            resolution,
            occupancy,
            labels: Vec::new(),
            component_count: 0,
            truncation_ok: true,
            truncation_bound: 0.0,
        };
        grid.relabel(Connectivity::Eight);
        grid
    }

    pub fn occupied(&self, row: usize, col: usize) -> bool {
        self.occupancy[row * self.resolution + col]
    }

    pub fn label(&self, row: usize, col: usize) -> u32 {
        self.labels[row * self.resolution + col]
    }

    pub fn occupied_cells(&self) -> usize {
        self.occupancy.iter().filter(|&&o| o).count()
    }

    /// Occupied area in the coordinates of `[-1, 1]^2`.
    pub fn occupied_area(&self) -> f64 {
        let h = 2.0 / self.resolution as f64;
        self.occupied_cells() as f64 * h * h
    }

    /// Occupied cells over sampled (non-collar) cells.
    pub fn area_fraction(&self) -> f64 {
        let rmax = collar_radius(self.resolution);
        let n = self.resolution;
        let sampled = (0..n * n)
            .filter(|k| cell_center(n, k / n, k % n).norm() < rmax)
            .count();
        if sampled == 0 {
            0.0
        } else {
            self.occupied_cells() as f64 / sampled as f64
        }
    }

    fn relabel(&mut self, connectivity: Connectivity) {
        let (labels, count) = label_bitmap(self.resolution, &self.occupancy, connectivity);
        self.labels = labels;
        self.component_count = count;
    }
}

struct DisjointSet {
    parent: Vec<u32>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

fn label_bitmap(n: usize, occ: &[bool], connectivity: Connectivity) -> (Vec<u32>, usize) {
    let mut ds = DisjointSet::new(occ.len());
    for i in 0..n {
        for j in 0..n {
            let k = i * n + j;
            if !occ[k] {
                continue;
            }
            if j > 0 && occ[k - 1] {
                ds.union(k as u32, (k - 1) as u32);
            }
            if i > 0 {
                let up = k - n;
                if occ[up] {
                    ds.union(k as u32, up as u32);
                }
                if connectivity == Connectivity::Eight {
                    if j > 0 && occ[up - 1] {
                        ds.union(k as u32, (up - 1) as u32);
                    }
                    if j + 1 < n && occ[up + 1] {
                        ds.union(k as u32, (up + 1) as u32);
                    }
                }
            }
        }
    }
    let mut ids = vec![0u32; occ.len()];
    let mut labels = vec![0u32; occ.len()];
    let mut next = 0u32;
    for k in 0..occ.len() {
        if occ[k] {
            let root = ds.find(k as u32) as usize;
            if ids[root] == 0 {
                next += 1;
                ids[root] = next;
            }
            labels[k] = ids[root];
        }
    }
    (labels, next as usize)
}

/// Samples `|theta| < epsilon` at cell centers and labels the result.
/// A grid whose truncation is insufficient is still returned, flagged.
pub fn sample_grid(spec: &Spec, epsilon: f64, resolution: usize) -> Result<LevelSetGrid> {
    check_epsilon(epsilon)?;
    ModulusField::sample(spec, resolution)?.grid(epsilon)
}

/// Recomputes labels with 8-connectivity.
pub fn label_components(grid: LevelSetGrid) -> LevelSetGrid {
    label_components_with(grid, Connectivity::Eight)
}

pub fn label_components_with(mut grid: LevelSetGrid, connectivity: Connectivity) -> LevelSetGrid {
    grid.relabel(connectivity);
    grid
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentVerdict {
    Connected,
    Disconnected,
    Unstable,
}

impl ComponentVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ComponentVerdict::Connected => "connected",
            ComponentVerdict::Disconnected => "disconnected",
            ComponentVerdict::Unstable => "unstable",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OneComponentReport {
    pub verdict: ComponentVerdict,
    pub epsilon: f64,
    pub resolutions: Vec<usize>,
    pub counts: Vec<usize>,
    pub truncation_ok: Vec<bool>,
}

/// Connectivity verdict across increasing resolutions. This is numerical
/// evidence at grid scale, not a proof.
pub fn one_component_test(
    spec: &Spec,
    epsilon: f64,
    resolutions: &[usize],
) -> Result<OneComponentReport> {
    check_epsilon(epsilon)?;
    if resolutions.len() < 2 || resolutions.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter {
            name: "resolutions",
            value: resolutions.len() as f64,
            reason: "need at least two strictly increasing resolutions",
        });
    }
    let grids: Vec<LevelSetGrid> = resolutions
        .iter()
        .map(|&r| sample_grid(spec, epsilon, r))
        .collect::<Result<_>>()?;
    let counts: Vec<usize> = grids.iter().map(|g| g.component_count).collect();
    let truncation_ok: Vec<bool> = grids.iter().map(|g| g.truncation_ok).collect();
    let verdict = if truncation_ok.iter().any(|ok| !ok) {
        ComponentVerdict::Unstable
    } else if counts.iter().all(|&c| c == 1) {
        ComponentVerdict::Connected
    } else if counts.iter().all(|&c| c >= 2) && counts.windows(2).all(|w| w[1] >= w[0]) {
        ComponentVerdict::Disconnected
    } else {
        ComponentVerdict::Unstable
    };
    Ok(OneComponentReport {
        verdict,
        epsilon,
        resolutions: resolutions.to_vec(),
        counts,
        truncation_ok,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonSearch {
    /// Smallest bracketed level found connected.
    pub epsilon: f64,
    /// Largest bracketed level found not connected (0 if none was probed).
    pub lower: f64,
    pub truncation_ok: bool,
}

/// Bisection for the smallest `eps` whose grid has exactly one component.
/// `None` when the grid at `eps = 1 - 1/resolution` is already disconnected.
pub fn smallest_connected_epsilon(
    spec: &Spec,
    resolution: usize,
    tol: f64,
) -> Result<Option<EpsilonSearch>> {
    if !(tol >= 1e-4) {
        return Err(Error::Parameter {
            name: "tol",
            value: tol,
            reason: "bisection tolerance must be at least 1e-4",
        });
    }
    let field = ModulusField::sample(spec, resolution)?;
    let mut hi = 1.0 - 1.0 / resolution as f64;
    if field.grid(hi)?.component_count != 1 {
        return Ok(None);
    }
    let mut lo = 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if field.grid(mid)?.component_count == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(EpsilonSearch {
        epsilon: hi,
        lower: lo,
        truncation_ok: field.truncation_ok(hi),
    }))
}

/// Plain PGM (P2) text for the grid, one image row per line.
pub fn render_pgm(grid: &LevelSetGrid, mode: PgmMode) -> String {
    let n = grid.resolution;
    let maxval = match mode {
        PgmMode::Occupancy => 1,
        PgmMode::Labels => grid.component_count.max(1),
    };
    let mut out = String::with_capacity(n * n * 2 + 32);
    let _ = write!(out, "P2\n{n} {n}\n{maxval}\n");
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(' ');
            }
            let v = match mode {
                PgmMode::Occupancy => u32::from(grid.occupied(i, j)),
                PgmMode::Labels => grid.label(i, j),
            };
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests;
