//! Log-scale Liouville change of variables.
//!
//! The radial equation at fixed wavenumber `k` on `0 < r <= a` is mapped to a
//! half-line problem in `x = c ln(r/a)` with `c < 0`, so that `r = a` becomes
//! `x = 0` and `r -> 0` becomes `x -> +infinity`.  A potential `q(r)` cut off
//! at `a` turns into the auxiliary potential
//!
//! `Q(x) = (r^2 / c^2) (q(r) - k^2)`, with `r = a e^{x/c}`,
//!
//! which decays like `e^{2x/c}` and is therefore integrable on the half line.
//! The scale `c` (and the boundary constant `h` used later) are free
//! reconstruction parameters; different choices give different auxiliary
//! problems for the same physical potential.

use crate::error::{Error, Result};

/// Parameters of the change of variables: cut-off radius `a`, log scale
/// `c < 0`, wavenumber `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformParams {
    pub a: f64,
    pub c: f64,
    pub k: f64,
}

impl TransformParams {
    pub fn new(a: f64, c: f64, k: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::domain(format!("cut-off radius a = {a} must be positive")));
        }
        if !(c < 0.0) || !c.is_finite() {
            return Err(Error::domain(format!("transform scale c = {c} must be negative")));
        }
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::domain(format!("wavenumber k = {k} must be positive")));
        }
        Ok(TransformParams { a, c, k })
    }

    /// `x(r) = c ln(r/a)` for `0 < r <= a`.
    pub fn x_of_r(&self, r: f64) -> Result<f64> {
        if !(r > 0.0 && r <= self.a) {
            return Err(Error::domain(format!(
                "radius {r} outside (0, {}]",
                self.a
            )));
        }
        Ok(self.c * (r / self.a).ln())
    }

    /// `r(x) = a e^{x/c}` for `x >= 0`.
    pub fn r_of_x(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(Error::domain(format!("transformed coordinate {x} negative")));
        }
        Ok(self.a * (x / self.c).exp())
    }
}

/// A sampled curve: `values[i]` at `grid[i]`.  Used both for `q(r)` on a
/// radial grid and for `Q(x)` on the transformed grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialCurve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl PotentialCurve {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::domain("curve grid and values differ in length"));
        }
        Ok(PotentialCurve { grid, values })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// Auxiliary potential value `Q(x)` for a physical potential given as a
/// function of `r`.
pub fn auxiliary_potential<F: Fn(f64) -> f64>(
    q: F,
    p: &TransformParams,
    x: f64,
) -> Result<f64> {
    let r = p.r_of_x(x)?;
    Ok(r * r / (p.c * p.c) * (q(r) - p.k * p.k))
}

/// Map a curve `Q(x)` on an ascending x-grid back to `q(r)` on the
/// corresponding (ascending) radial grid:
/// `q(r) = k^2 + (c^2 / r^2) Q(x(r))`.
pub fn physical_potential(aux: &PotentialCurve, p: &TransformParams) -> Result<PotentialCurve> {
    let mut rs = Vec::with_capacity(aux.len());
    let mut qs = Vec::with_capacity(aux.len());
    for (&x, &qv) in aux.grid.iter().zip(&aux.values).rev() {
        let r = p.r_of_x(x)?;
        rs.push(r);
        qs.push(p.k * p.k + p.c * p.c / (r * r) * qv);
    }
    PotentialCurve::new(rs, qs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_roundtrip() {
        let p = TransformParams::new(2.0, -0.3, 1.0).unwrap();
        for &r in &[1e-4, 0.01, 0.5, 1.0, 1.999, 2.0] {
            let x = p.x_of_r(r).unwrap();
            assert!(x >= 0.0);
            let back = p.r_of_x(x).unwrap();
            assert!((back - r).abs() < 1e-12 * r);
        }
        assert!((p.x_of_r(2.0).unwrap()).abs() < 1e-15);
        assert!(p.x_of_r(2.1).is_err());
        assert!(p.x_of_r(0.0).is_err());
        assert!(p.r_of_x(-0.1).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(TransformParams::new(-1.0, -0.3, 1.0).is_err());
        assert!(TransformParams::new(2.0, 0.3, 1.0).is_err());
        assert!(TransformParams::new(2.0, 0.0, 1.0).is_err());
        assert!(TransformParams::new(2.0, -0.3, 0.0).is_err());
    }

    #[test]
    fn constant_well_becomes_exponential() {
        // for q = C on (0, a], Q(x) = -s e^{-2 t x} with
        // s = ((k^2 - C) a^2) / c^2 and t = 1/|c|
        let (a, c, k, cval) = (2.0, -0.7, 1.0, 0.8);
        let p = TransformParams::new(a, c, k).unwrap();
        let s = (k * k - cval) * a * a / (c * c);
        let t = 1.0 / c.abs();
        for &x in &[0.0, 0.3, 1.0, 2.5, 6.0] {
            let qx = auxiliary_potential(|_| cval, &p, x).unwrap();
            let want = -s * (-2.0 * t * x).exp();
            assert!((qx - want).abs() < 1e-12 * want.abs().max(1e-12));
        }
    }

    #[test]
    fn physical_roundtrip() {
        // transform a smooth potential and map it back
        let p = TransformParams::new(1.5, -0.74, 1.5).unwrap();
        let q = |r: f64| -4.0 * (-5.0 * r * r).exp();
        let xs: Vec<f64> = (0..=60).map(|i| i as f64 * 0.05).collect();
        let mut qs = Vec::new();
        for &x in &xs {
            qs.push(auxiliary_potential(q, &p, x).unwrap());
        }
        let aux = PotentialCurve::new(xs, qs).unwrap();
        let phys = physical_potential(&aux, &p).unwrap();
        assert!(phys.grid.windows(2).all(|w| w[1] > w[0]));
        for (&r, &qr) in phys.grid.iter().zip(&phys.values) {
            assert!((qr - q(r)).abs() < 1e-10);
        }
        assert!((phys.grid.last().unwrap() - 1.5).abs() < 1e-12);
    }
}
