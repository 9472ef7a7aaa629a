//! Reconstruction of the auxiliary potential from the translation kernel.
//!
//! With `F` from the moment solver, the layer kernel `K(x, t)` solves
//!
//! `K(x,t) + W(x,t) + int_0^x K(x,s) W(s,t) ds = 0`,  `0 <= t <= x`,
//!
//! where `W(x,t) = (F(x+t) + F(|x-t|)) / 2`, and the auxiliary potential is
//! recovered from the diagonal, `Q(x) = 2 d/dx K(x,x)`.  Each row `x = x_i`
//! is a small dense linear system once the integral is replaced by a
//! trapezoid sum over the same uniform grid, so the solve marches row by row
//! with no coupling between rows.  On a uniform grid every argument `x_m +
//! t_j` and `|x_m - t_j|` is again a grid point, so `F` is evaluated once per
//! node.

use crate::error::{Error, Result};
use crate::liouville::{physical_potential, PotentialCurve, TransformParams};
use crate::moments::SpectralExpansion;

/// Grid choices for the reconstruction.
#[derive(Debug, Clone, Copy)]
pub struct GlOptions {
    /// Uniform step of the transformed grid.
    pub step: f64,
    /// Smallest radius carried back to the physical potential.
    pub r_min: f64,
}

impl GlOptions {
    /// Defaults scaled to the transform: step `0.02 |c|` (a fixed resolution
    /// in `log r`, so the work does not depend on `c`) down to `r = 0.01 a`.
    pub fn for_transform(p: &TransformParams) -> Self {
        GlOptions {
            step: 0.02 * p.c.abs(),
            r_min: 0.01 * p.a,
        }
    }
}

/// Solved layer kernel on the triangular grid: `rows[i][j] = K(x_i, x_j)`,
/// `j <= i`.
#[derive(Debug, Clone)]
pub struct LayerSolution {
    pub xs: Vec<f64>,
    rows: Vec<Vec<f64>>,
}

impl LayerSolution {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.rows.iter().enumerate().map(|(i, r)| r[i]).collect()
    }

    /// Largest defect of row `i` when substituted back into the discretized
    /// equation with kernel values `f` on the doubled grid, relative to the
    /// size of the terms in the row (the kernel grows exponentially towards
    /// small radii, so an absolute defect would reject healthy solves).
    fn row_defect(&self, f: &[f64], i: usize) -> f64 {
        let step = if self.xs.len() > 1 { self.xs[1] } else { 0.0 };
        let row = &self.rows[i];
        let mut worst = 0.0f64;
        let mut scale = 1.0f64;
        for j in 0..=i {
            let mut v = row[j] + omega(f, i, j);
            scale = scale.max(row[j].abs()).max(omega(f, i, j).abs());
            for (m, km) in row.iter().enumerate() {
                let w = if m == 0 || m == i { 0.5 } else { 1.0 };
                v += w * step * km * omega(f, m, j);
            }
            worst = worst.max(v.abs());
        }
        worst / scale
    }
}

/// `W(x_m, t_j)` from tabulated kernel values `f[u] = F(u step)`.
fn omega(f: &[f64], m: usize, j: usize) -> f64 {
    0.5 * (f[m + j] + f[m.abs_diff(j)])
}

/// Solve the layer equation for a translation kernel `f` on the uniform grid
/// `0, step, ..., >= x_max`.
pub fn solve_layer<F: Fn(f64) -> f64>(f: F, x_max: f64, step: f64) -> Result<LayerSolution> {
    if !(step > 0.0) || !step.is_finite() || !(x_max > 0.0) || !x_max.is_finite() {
        return Err(Error::domain("layer solve needs positive step and extent"));
    }
    let n = (x_max / step).ceil() as usize;
    if n < 4 {
        return Err(Error::domain("layer grid has fewer than five points"));
    }
    if n > 200_000 {
        return Err(Error::domain(format!("layer grid of {n} rows is unreasonably fine")));
    }
    let xs: Vec<f64> = (0..=n).map(|i| i as f64 * step).collect();
    let fv: Vec<f64> = (0..=2 * n).map(|u| f(u as f64 * step)).collect();
    if fv.iter().any(|v| !v.is_finite()) {
        return Err(Error::numerical("reconstruction", "kernel not finite on the grid"));
    }

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    rows.push(vec![-fv[0]]);
    for i in 1..=n {
        let dim = i + 1;
        let m = nalgebra::DMatrix::from_fn(dim, dim, |j, mm| {
            let w = if mm == 0 || mm == i { 0.5 } else { 1.0 };
            let quad = w * step * omega(&fv, mm, j);
            if j == mm {
                1.0 + quad
            } else {
                quad
            }
        });
        let rhs = nalgebra::DVector::from_fn(dim, |j, _| -omega(&fv, i, j));
        let sol = m.lu().solve(&rhs).ok_or_else(|| {
            Error::numerical(
                "reconstruction",
                format!("layer system singular at x = {:.4}", xs[i]),
            )
        })?;
        rows.push(sol.iter().copied().collect());
    }
    let sol = LayerSolution { xs, rows };
    // spot-check a few rows; the solve itself should satisfy them to
    // rounding, so anything large means the system went bad
    let worst = [n / 4, n / 2, 3 * n / 4, n]
        .iter()
        .map(|&i| sol.row_defect(&fv, i))
        .fold(0.0f64, f64::max);
    if worst > 1e-9 {
        return Err(Error::numerical(
            "reconstruction",
            format!("layer rows violate their equations by {worst:.2e}"),
        ));
    }
    Ok(sol)
}

/// Fourth-order differentiation of a uniformly sampled curve.
pub fn grid_derivative(xs: &[f64], vals: &[f64]) -> Result<Vec<f64>> {
    let n = xs.len();
    if n < 5 || vals.len() != n {
        return Err(Error::domain("derivative needs at least five matched samples"));
    }
    let step = xs[1] - xs[0];
    let d = 12.0 * step;
    let mut out = Vec::with_capacity(n);
    out.push((-25.0 * vals[0] + 48.0 * vals[1] - 36.0 * vals[2] + 16.0 * vals[3] - 3.0 * vals[4]) / d);
    out.push((-3.0 * vals[0] - 10.0 * vals[1] + 18.0 * vals[2] - 6.0 * vals[3] + vals[4]) / d);
    for i in 2..n - 2 {
        out.push((vals[i - 2] - 8.0 * vals[i - 1] + 8.0 * vals[i + 1] - vals[i + 2]) / d);
    }
    out.push((-vals[n - 5] + 6.0 * vals[n - 4] - 18.0 * vals[n - 3] + 10.0 * vals[n - 2]
        + 3.0 * vals[n - 1]) / d);
    out.push((3.0 * vals[n - 5] - 16.0 * vals[n - 4] + 36.0 * vals[n - 3] - 48.0 * vals[n - 2]
        + 25.0 * vals[n - 1]) / d);
    Ok(out)
}

/// Full reconstruction report for one `(c, h)` choice.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub expansion: SpectralExpansion,
    pub transform: TransformParams,
    /// Auxiliary potential `Q(x)` on the ascending transformed grid.
    pub aux: PotentialCurve,
    /// Physical potential `q(r)` on the ascending radial grid.
    pub curve: PotentialCurve,
    /// `K(0,0)`, which consistent data pin to `h`.
    pub boundary_kernel: f64,
}

impl Reconstruction {
    /// Reconstructed value at the cut-off radius.
    pub fn q_at_support(&self) -> f64 {
        *self.curve.values.last().unwrap()
    }
}

/// Run the layer solve for a solved expansion and carry the result back to
/// the physical potential.
pub fn reconstruct(exp: &SpectralExpansion, opts: &GlOptions) -> Result<Reconstruction> {
    let p = TransformParams::new(exp.a, exp.c, exp.k)?;
    if !(opts.r_min > 0.0) || opts.r_min >= p.a {
        return Err(Error::domain(format!(
            "reconstruction floor r_min = {} outside (0, a)",
            opts.r_min
        )));
    }
    if !(opts.step > 0.0) || !opts.step.is_finite() {
        return Err(Error::domain("grid step must be positive"));
    }
    let x_max = p.x_of_r(opts.r_min)?;
    let layer = solve_layer(|x| exp.evaluate(x), x_max, opts.step)?;
    let diag = layer.diagonal();
    let qx: Vec<f64> = grid_derivative(&layer.xs, &diag)?
        .into_iter()
        .map(|v| 2.0 * v)
        .collect();
    let boundary_kernel = diag[0];
    let aux = PotentialCurve::new(layer.xs, qx)?;
    let curve = physical_potential(&aux, &p)?;
    Ok(Reconstruction {
        expansion: exp.clone(),
        transform: p,
        aux,
        curve,
        boundary_kernel,
    })
}
