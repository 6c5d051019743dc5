//! Certified piecewise-constant brackets for continuous functions on `(0,1)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::sqrt;
use crate::spaces::NormKernel;

use super::TransformError;

/// Right-continuous step function in binary64 on `[0, end)`, given by cell ends and values.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatStep {
    ends: Vec<f64>,
    values: Vec<f64>,
}

impl FloatStep {
    /// Cells `[grid[i], grid[i+1])` with `values[i]`; `grid[0]` must be 0.
    pub fn from_cells(grid: &[f64], values: Vec<f64>) -> Self {
        assert_eq!(grid.len(), values.len() + 1, "one value per cell");
        FloatStep { ends: grid[1..].to_vec(), values }
    }

    pub fn ends(&self) -> &[f64] {
        &self.ends
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, t: f64) -> f64 {
        let i = self.ends.partition_point(|&e| e <= t);
        self.values.get(i).copied().unwrap_or(0.0)
    }

    /// `(measure, value)` per cell.
    pub fn levels(&self) -> Vec<(f64, f64)> {
        let mut prev = 0.0;
        self.ends
            .iter()
            .zip(&self.values)
            .map(|(&e, &v)| {
                let len = e - prev;
                prev = e;
                (len, v)
            })
            .collect()
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn norm(&self, kernel: &NormKernel) -> f64 {
        kernel.norm_levels(&self.levels())
    }
}

/// Refinement controls for [`Enclosure`] construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeOptions {
    /// Target for `upper − lower` on every cell, relative to the supremum of the function.
    pub rel_gap: f64,
    pub max_pieces: usize,
}

impl Default for EnvelopeOptions {
    fn default() -> Self {
        EnvelopeOptions { rel_gap: 1e-5, max_pieces: 1 << 20 }
    }
}

/// Lower and upper step functions on a common grid of `(0,1)` with `lower ≤ F ≤ upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure {
    grid: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Enclosure {
    /// Builds an enclosure from `bounds(t0, t1) = (inf, sup)` of `F` on `[t0, t1]`, splitting
    /// cells of the initial grid until each gap is within `rel_gap·sup F`.
    pub(crate) fn refine<B>(initial: &[f64], bounds: B, opts: EnvelopeOptions) -> Result<Self, TransformError>
    where
        B: Fn(f64, f64) -> (f64, f64),
    {
        let mut cells: Vec<(f64, f64, f64, f64)> = initial
            .windows(2)
            .filter(|w| w[0] < w[1])
            .map(|w| {
                let (lo, hi) = bounds(w[0], w[1]);
                (w[0], w[1], lo, hi)
            })
            .collect();
        // Every lower bound seen is at most sup F, so the target only grows as refinement
        // finds larger ones. Before any positive lower bound shows up, the upper bounds set
        // the scale.
        let mut floor = cells.iter().map(|c| c.2).fold(0.0, f64::max);
        let ceiling = cells.iter().map(|c| c.3).fold(0.0, f64::max);
        let mut target = opts.rel_gap * if floor > 0.0 { floor } else { ceiling };

        let mut grid = vec![0.0];
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        cells.reverse();
        while let Some((t0, t1, lo, hi)) = cells.pop() {
            if hi - lo <= target {
                grid.push(t1);
                lower.push(lo);
                upper.push(hi);
                continue;
            }
            let mid = if t0 == 0.0 {
                t1 / 8.0
            } else if t1 > 4.0 * t0 {
                sqrt(t0 * t1)
            } else {
                0.5 * (t0 + t1)
            };
            if !(t0 < mid && mid < t1) {
                grid.push(t1);
                lower.push(lo);
                upper.push(hi);
                continue;
            }
            if lower.len() + cells.len() + 2 > opts.max_pieces {
                return Err(TransformError::ResourceExhausted(opts.max_pieces));
            }
            let (lo2, hi2) = bounds(mid, t1);
            let (lo1, hi1) = bounds(t0, mid);
            if lo1.max(lo2) > floor {
                floor = lo1.max(lo2);
                target = target.max(opts.rel_gap * floor);
            }
            cells.push((mid, t1, lo2, hi2));
            cells.push((t0, mid, lo1, hi1));
        }
        Ok(Enclosure { grid, lower, upper })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self) -> FloatStep {
        FloatStep::from_cells(&self.grid, self.lower.clone())
    }

    pub fn upper(&self) -> FloatStep {
        FloatStep::from_cells(&self.grid, self.upper.clone())
    }

    /// Largest `upper − lower` over the cells.
    pub fn max_gap(&self) -> f64 {
        self.lower.iter().zip(&self.upper).map(|(l, u)| u - l).fold(0.0, f64::max)
    }

    pub fn sup(&self) -> f64 {
        self.upper.iter().copied().fold(0.0, f64::max)
    }

    /// Bracket `(‖lower‖, ‖upper‖)` for the norm of the enclosed function.
    pub fn norm_bracket(&self, kernel: &NormKernel) -> (f64, f64) {
        (self.lower().norm(kernel), self.upper().norm(kernel))
    }

    /// Whether `y` lies in the bracket at `t`.
    pub fn contains(&self, t: f64, y: f64, slack: f64) -> bool {
        let i = self.grid[1..].partition_point(|&e| e <= t);
        if i >= self.lower.len() {
            return false;
        }
        self.lower[i] - slack <= y && y <= self.upper[i] + slack
    }
}
