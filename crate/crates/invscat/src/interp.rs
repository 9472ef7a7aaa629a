//! Monotone (Fritsch-Carlson) cubic interpolation.
//!
//! Used in two places: resampling reconstructed potential curves for the
//! total-variation smoothness measure, and evaluating tabulated potentials
//! inside the forward solver.  The monotonicity-preserving slope limiter
//! matters for the smoothness measure: an overshooting spline would inflate
//! the total variation of perfectly clean curves.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::domain(
                "monotone cubic: need at least two nodes with matching lengths",
            ));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain(
                "monotone cubic: abscissas must be strictly increasing",
            ));
        }
        let n = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let slope: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        let mut ds = vec![0.0; n];
        if n == 2 {
            ds[0] = slope[0];
            ds[1] = slope[0];
        } else {
            for i in 1..n - 1 {
                if slope[i - 1] * slope[i] <= 0.0 {
                    ds[i] = 0.0;
                } else {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    ds[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
                }
            }
            ds[0] = edge_slope(h[0], h[1], slope[0], slope[1]);
            ds[n - 1] = edge_slope(h[n - 2], h[n - 3], slope[n - 2], slope[n - 3]);
        }
        Ok(MonotoneCubic { xs, ys, ds })
    }

    /// Hermite evaluation; arguments outside the node range are clamped.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = self.xs.partition_point(|&t| t <= x) - 1;
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.ds[i] + h01 * self.ys[i + 1] + h11 * h * self.ds[i + 1]
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }
}

fn edge_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    // three-point end-slope estimate with the usual shape limiters
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d * s0 <= 0.0 {
        0.0
    } else if s0 * s1 < 0.0 && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}
