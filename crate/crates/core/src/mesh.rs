use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::operator::EllipticityBounds;

/// Uniform mesh `r_i = i·h`, `i = 0..=N`, on `[0, R_max]` for radial
/// functions in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_max: f64,
    intervals: usize,
    dim: usize,
}

impl RadialGrid {
    pub const MIN_INTERVALS: usize = 16;

    pub fn new(r_max: f64, intervals: usize, dim: usize) -> Result<Self> {
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::InvalidGrid(format!("R_max must be positive, got {r_max}")));
        }
        if intervals < Self::MIN_INTERVALS {
            return Err(Error::InvalidGrid(format!(
                "need at least {} intervals, got {intervals}",
                Self::MIN_INTERVALS
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidGrid("dimension must be at least 1".into()));
        }
        Ok(Self { r_max, intervals, dim })
    }

    /// Grid with spacing as close as possible to `h`.
    pub fn with_spacing(r_max: f64, h: f64, dim: usize) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidGrid(format!("spacing must be positive, got {h}")));
        }
        Self::new(r_max, (r_max / h).round() as usize, dim)
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Number of intervals `N`.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn h(&self) -> f64 {
        self.r_max / self.intervals as f64
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn r(&self, i: usize) -> f64 {
        i as f64 * self.h()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.h();
        (0..self.len()).map(move |i| i as f64 * h)
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> ProfileField {
        ProfileField { grid: *self, values: self.nodes().map(f).collect() }
    }

    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        Self::new(self.r_max, self.intervals, dim)
    }
}

/// Truncation radius `max(2(nΛ/(2λ) + Λ + 1), 10)`.
pub fn default_r_max(bounds: EllipticityBounds, dim: usize) -> f64 {
    let (_, alpha_hi) = bounds.exponent_interval(dim);
    f64::max(2.0 * (alpha_hi + bounds.Lambda() + 1.0), 10.0)
}

/// Values of a radial function on the nodes of a [`RadialGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileField {
    pub grid: RadialGrid,
    pub values: Vec<f64>,
}

impl ProfileField {
    pub fn new(grid: RadialGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "profile has {} values but the grid has {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: RadialGrid) -> Self {
        Self { grid, values: vec![0.0; grid.len()] }
    }

    /// Divide by the value at the origin.
    pub fn normalized(mut self) -> Result<Self> {
        let v0 = self.values[0];
        if !(v0 > 0.0 && v0.is_finite()) {
            return Err(Error::InvalidArgument(format!("cannot normalize by origin value {v0}")));
        }
        for v in &mut self.values {
            *v /= v0;
        }
        Ok(self)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| c * v).collect() }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `sup |self − other|` over nodes with `r ≤ r_limit`.
    pub fn sup_distance(&self, other: &ProfileField, r_limit: f64) -> f64 {
        self.grid
            .nodes()
            .zip(self.values.iter().zip(&other.values))
            .take_while(|(r, _)| *r <= r_limit + 1e-12)
            .fold(0.0, |m, (_, (a, b))| m.max((a - b).abs()))
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "r,phi")?;
        for (r, v) in self.grid.nodes().zip(&self.values) {
            writeln!(out, "{r:.16e},{v:.16e}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Read a CSV written by [`ProfileField::write_csv`]. The nodes must be
    /// uniformly spaced starting at zero.
    pub fn read_csv<R: BufRead>(input: R, dim: usize) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines.next().transpose()?.unwrap_or_default();
        if header.trim() != "r,phi" {
            return Err(Error::ProfileFormat(format!("expected header `r,phi`, got `{header}`")));
        }
        let mut rs = Vec::new();
        let mut values = Vec::new();
        for (k, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let (r, v) = line
                .split_once(',')
                .ok_or_else(|| Error::ProfileFormat(format!("row {} has no comma", k + 2)))?;
            let parse = |s: &str| {
                s.trim().parse::<f64>().map_err(|_| Error::ProfileFormat(format!("bad number `{s}` in row {}", k + 2)))
            };
            rs.push(parse(r)?);
            values.push(parse(v)?);
        }
        if rs.len() < 2 || rs[0] != 0.0 {
            return Err(Error::ProfileFormat("profile must start at r = 0 with at least two rows".into()));
        }
        let grid = RadialGrid::new(*rs.last().unwrap(), rs.len() - 1, dim)?;
        let h = grid.h();
        for (i, r) in rs.iter().enumerate() {
            if (r - i as f64 * h).abs() > 1e-9 * (1.0 + r.abs()) {
                return Err(Error::ProfileFormat(format!("node {i} at r={r} is not on a uniform grid")));
            }
        }
        Self::new(grid, values)
    }
}
