//! Monotone three-point discretization of `F(D²u) − ½ r u′` on a radial grid.
//!
//! For every control `p` of the operator's [`ControlSet`] and every unknown
//! node `i < N` the linear operator
//! `L_p u = −(c_rad D2 u + c_tan (n−1) D1 u / r) − (r/2) D1 u`
//! is stored as three coefficients on `u[i-1], u[i], u[i+1]`. The discrete
//! operator is `F_h(u)_i = opt_p (L_p u)_i` with `u[N] = 0`.
//!
//! Each first-derivative term is centred where the centred stencil keeps the
//! off-diagonals nonpositive for all controls and forward otherwise, so every
//! `L_p` is an M-matrix with zero row sums.
//!
//! Where the active control changes between two nodes, `u‴` jumps and the
//! centred second difference picks up an `O(h)` error whose size depends on
//! the switch position inside the cell. The eigen-solvers remove it with a
//! lagged correction (see [`RadialStencil::set_kink_correction`]), which
//! restores clean second-order convergence of `α`.

use crate::error::Result;
use crate::mesh::RadialGrid;
use crate::operator::{ControlSet, Extremum, OperatorSpec};
use crate::tridiag;

#[derive(Debug, Clone)]
pub(crate) struct RadialStencil {
    extremum: Extremum,
    controls: usize,
    rows: usize,
    coef: Vec<[f64; 3]>,
    cs: ControlSet,
    grid: RadialGrid,
    drift: bool,
    /// Per-node correction `e_i` subtracted from `D2 u` (zero away from kinks).
    shift: Vec<f64>,
    kinks: Vec<usize>,
}

impl RadialStencil {
    pub fn new(spec: &OperatorSpec, grid: &RadialGrid, drift: bool) -> Self {
        Self::from_controls(&spec.control_set(), grid, drift)
    }

    pub fn from_controls(cs: &ControlSet, grid: &RadialGrid, drift: bool) -> Self {
        let h = grid.h();
        let h2 = h * h;
        let rows = grid.intervals();
        let m = (grid.dim() - 1) as f64;
        let np = cs.controls.len();
        let mut coef = vec![[0.0; 3]; rows * np];
        for (p, c) in cs.controls.iter().enumerate() {
            let s = c.trace_weight(grid.dim());
            coef[p] = [0.0, 2.0 * s / h2, -2.0 * s / h2];
        }
        for i in 1..rows {
            let r = grid.r(i);
            let tan_central =
                m == 0.0 || cs.controls.iter().all(|c| c.tangential * m * h <= 2.0 * c.radial * r * (1.0 + 1e-12));
            let drift_central = !drift
                || cs.controls.iter().all(|c| {
                    let k = if tan_central { c.tangential * m / r } else { 0.0 };
                    (k + 0.5 * r) * h <= 2.0 * c.radial * (1.0 + 1e-12)
                });
            for (p, c) in cs.controls.iter().enumerate() {
                let kt = c.tangential * m / r;
                let kd = if drift { 0.5 * r } else { 0.0 };
                let mut lo = -c.radial / h2;
                let mut up = -c.radial / h2;
                if tan_central {
                    lo += kt / (2.0 * h);
                    up -= kt / (2.0 * h);
                } else {
                    up -= kt / h;
                }
                if drift_central {
                    lo += kd / (2.0 * h);
                    up -= kd / (2.0 * h);
                } else {
                    up -= kd / h;
                }
                let lo = lo.min(0.0);
                let up = up.min(0.0);
                coef[i * np + p] = [lo, -(lo + up), up];
            }
        }
        Self {
            extremum: cs.extremum,
            controls: np,
            rows,
            coef,
            cs: cs.clone(),
            grid: *grid,
            drift,
            shift: vec![0.0; rows],
            kinks: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Largest diagonal coefficient over nodes and controls.
    #[cfg(test)]
    pub fn max_diag(&self) -> f64 {
        self.coef.iter().fold(0.0f64, |m, c| m.max(c[1]))
    }

    #[inline]
    fn row(&self, i: usize, p: usize) -> &[f64; 3] {
        &self.coef[i * self.controls + p]
    }

    #[inline]
    fn neighbours(u: &[f64], i: usize, rows: usize) -> (f64, f64, f64) {
        let left = if i > 0 { u[i - 1] } else { 0.0 };
        let right = if i + 1 < rows { u[i + 1] } else { 0.0 };
        (left, u[i], right)
    }

    #[inline]
    fn value(&self, i: usize, p: usize, l: f64, c: f64, r: f64) -> f64 {
        let k = self.row(i, p);
        k[0] * l + k[1] * c + k[2] * r + self.cs.controls[p].radial * self.shift[i]
    }

    /// Locate control switches of the continuous equation `L u = v` between
    /// adjacent nodes and set the correction for the jump of `u‴` there.
    /// The branch values use first differences only.
    pub fn set_kink_correction(&mut self, u: &[f64], v: &[f64]) {
        for &i in &self.kinks {
            self.shift[i] = 0.0;
        }
        self.kinks.clear();
        if self.controls == 1 || self.rows < 4 {
            return;
        }
        let h = self.grid.h();
        let m = (self.grid.dim() - 1) as f64;
        let branches = |i: usize, out: &mut Vec<f64>| -> usize {
            let r = self.grid.r(i);
            let d1 = (u[i + 1] - u[i - 1]) / (2.0 * h);
            let target = v[i] + if self.drift { 0.5 * r * d1 } else { 0.0 };
            out.clear();
            out.extend(self.cs.controls.iter().map(|c| (-c.tangential * m * d1 / r - target) / c.radial));
            self.cs.active_branch(target, d1 / r, self.grid.dim())
        };
        let (mut here, mut next) = (Vec::new(), Vec::new());
        let mut p = branches(1, &mut here);
        for i in 1..self.rows - 2 {
            let q = branches(i + 1, &mut next);
            if q != p {
                let gi = here[p] - here[q];
                let gn = next[p] - next[q];
                let jump = gi - gn;
                let scale = here[p].abs().max(next[q].abs());
                if jump.abs() > 1e-14 * scale {
                    let theta = (gi / jump).clamp(0.0, 1.0);
                    self.shift[i] += jump * (1.0 - theta).powi(3) / 6.0;
                    self.shift[i + 1] += jump * theta.powi(3) / 6.0;
                    self.kinks.push(i);
                    self.kinks.push(i + 1);
                }
            }
            p = q;
            std::mem::swap(&mut here, &mut next);
        }
    }

    /// `out[i] = F_h(u)_i` for `i < N`; entries of `u` beyond `N − 1` are
    /// ignored and treated as zero.
    pub fn apply(&self, u: &[f64], out: &mut [f64]) {
        let rows = self.rows;
        let np = self.controls;
        let ends = [0, rows - 1];
        if np == 1 {
            for ((o, k), w) in out[1..rows - 1].iter_mut().zip(&self.coef[1..rows - 1]).zip(u[..rows].windows(3)) {
                *o = k[0] * w[0] + k[1] * w[1] + k[2] * w[2];
            }
        } else {
            match self.extremum {
                Extremum::Sup => self.interior_opt::<true>(u, out),
                Extremum::Inf => self.interior_opt::<false>(u, out),
            }
        }
        for i in ends {
            let (l, c, r) = Self::neighbours(u, i, rows);
            let mut best = self.value(i, 0, l, c, r);
            for p in 1..np {
                let v = self.value(i, p, l, c, r);
                best = match self.extremum {
                    Extremum::Sup => best.max(v),
                    Extremum::Inf => best.min(v),
                };
            }
            out[i] = best;
        }
        for &i in &self.kinks {
            if i > 0 && i + 1 < rows {
                let (l, c, r) = Self::neighbours(u, i, rows);
                let mut best = self.value(i, 0, l, c, r);
                for p in 1..np {
                    let v = self.value(i, p, l, c, r);
                    best = match self.extremum {
                        Extremum::Sup => best.max(v),
                        Extremum::Inf => best.min(v),
                    };
                }
                out[i] = best;
            }
        }
    }

    fn interior_opt<const SUP: bool>(&self, u: &[f64], out: &mut [f64]) {
        let (rows, np) = (self.rows, self.controls);
        for ((o, ks), w) in
            out[1..rows - 1].iter_mut().zip(self.coef[np..(rows - 1) * np].chunks_exact(np)).zip(u[..rows].windows(3))
        {
            let mut best = ks[0][0] * w[0] + ks[0][1] * w[1] + ks[0][2] * w[2];
            for k in &ks[1..] {
                let v = k[0] * w[0] + k[1] * w[1] + k[2] * w[2];
                if (SUP && v > best) || (!SUP && v < best) {
                    best = v;
                }
            }
            *o = best;
        }
    }

    /// Replace each node's control by a strictly better one for `u`.
    /// Returns the number of nodes that changed.
    pub fn improve_policy(&self, u: &[f64], policy: &mut [usize]) -> usize {
        let rows = self.rows;
        let mut changed = 0;
        for (i, slot) in policy.iter_mut().enumerate().take(rows) {
            let (l, c, r) = Self::neighbours(u, i, rows);
            let cur = *slot;
            let k = self.row(i, cur);
            let margin = 1e-13 * (k[0] * l).abs().max((k[1] * c).abs()).max((k[2] * r).abs());
            let mut best = self.value(i, cur, l, c, r);
            let mut idx = cur;
            for p in 0..self.controls {
                let v = self.value(i, p, l, c, r);
                let better = match self.extremum {
                    Extremum::Sup => v > best + margin,
                    Extremum::Inf => v < best - margin,
                };
                if better {
                    best = v;
                    idx = p;
                }
            }
            if idx != cur {
                *slot = idx;
                changed += 1;
            }
        }
        changed
    }

    /// Solve `L_policy u = rhs` for the unknowns `u[0..N]`.
    pub fn solve_policy(&self, policy: &[usize], rhs: &[f64], u: &mut [f64]) -> Result<()> {
        let rows = self.rows;
        let mut lower = vec![0.0; rows];
        let mut diag = vec![0.0; rows];
        let mut upper = vec![0.0; rows];
        for i in 0..rows {
            let k = self.row(i, policy[i]);
            lower[i] = k[0];
            diag[i] = k[1];
            upper[i] = k[2];
        }
        if self.kinks.is_empty() {
            return tridiag::solve(&lower, &diag, &upper, &rhs[..rows], &mut u[..rows]);
        }
        let mut shifted = rhs[..rows].to_vec();
        for &i in &self.kinks {
            shifted[i] -= self.cs.controls[policy[i]].radial * self.shift[i];
        }
        tridiag::solve(&lower, &diag, &upper, &shifted, &mut u[..rows])
    }

    /// Diagonal coefficient of node `i` under `policy`.
    pub fn diag(&self, i: usize, p: usize) -> f64 {
        self.row(i, p)[1]
    }

    /// Off-diagonal coefficients, for structural checks.
    #[cfg(test)]
    pub fn coefficients(&self) -> &[[f64; 3]] {
        &self.coef
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn specs() -> Vec<OperatorSpec> {
        vec![
            OperatorSpec::heat(),
            OperatorSpec::pucci_plus(1.0, 4.0).unwrap(),
            OperatorSpec::pucci_minus(1.0, 4.0).unwrap(),
            OperatorSpec::barenblatt(0.9).unwrap(),
            OperatorSpec::barenblatt(0.5).unwrap().dual(),
        ]
    }

    #[test]
    fn rows_are_m_matrix_rows() {
        for spec in specs() {
            for dim in 1..=4 {
                for h in [0.01, 0.05, 0.2] {
                    let grid = RadialGrid::with_spacing(40.0, h, dim).unwrap();
                    for drift in [false, true] {
                        let st = RadialStencil::new(&spec, &grid, drift);
                        for k in st.coefficients() {
                            assert!(k[0] <= 0.0 && k[2] <= 0.0 && k[1] > 0.0, "{spec} {k:?}");
                            assert!((k[0] + k[1] + k[2]).abs() <= 1e-12 * k[1]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_stability_bound() {
        for spec in specs() {
            for dim in 1..=4 {
                let grid = RadialGrid::with_spacing(10.0, 0.01, dim).unwrap();
                let st = RadialStencil::new(&spec, &grid, false);
                let bound = 2.0 * dim as f64 * spec.bounds().Lambda() / (grid.h() * grid.h());
                assert!(st.max_diag() <= bound * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn consistent_on_quadratic_at_origin() {
        let grid = RadialGrid::new(1.0, 100, 3).unwrap();
        let st = RadialStencil::new(&OperatorSpec::heat(), &grid, true);
        let u: Vec<f64> = grid.nodes().map(|r| 1.0 - r * r).collect();
        let mut out = vec![0.0; grid.intervals()];
        st.apply(&u, &mut out);
        // −Δ(1 − r²) = 2n, drift −(r/2)(−2r) = r²
        assert!((out[0] - 6.0).abs() < 1e-9);
        assert!((out[50] - (6.0 + 0.25)).abs() < 1e-9);
    }

    #[test]
    fn improvement_keeps_ties() {
        let grid = RadialGrid::new(1.0, 32, 2).unwrap();
        let st = RadialStencil::new(&OperatorSpec::pucci_plus(1.0, 2.0).unwrap(), &grid, true);
        let u = vec![0.0; grid.len()];
        let mut policy = vec![2; grid.intervals()];
        assert_eq!(st.improve_policy(&u, &mut policy), 0);
        assert!(policy.iter().all(|&p| p == 2));
    }
}
