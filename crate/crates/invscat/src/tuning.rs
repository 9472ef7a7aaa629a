//! Choosing the free reconstruction parameters `(c, h)`.
//!
//! Every `(c, h)` pair reconstructs *some* potential from the same phase
//! shifts; the physically useful pairs are the ones whose curve does not
//! oscillate.  The selection criterion is the total variation of the
//! reconstructed curve away from the origin (the region below `r_lo` is
//! dominated by the reconstruction floor and excluded), measured on a
//! monotonicity-preserving resampling so that the metric reflects the curve
//! and not the spline.  A grid of candidate pairs is scanned, failures and
//! all, and the smallest total variation wins with ties broken toward the
//! gentler transform (smaller `|c|`, then smaller `|h|`).

use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;
use crate::liouville::PotentialCurve;

/// Total variation of the curve on `[r_lo, end]`, measured on a 10x
/// monotone-cubic resampling.  The window must contain at least ten nodes.
pub fn smoothness(curve: &PotentialCurve, r_lo: f64) -> Result<f64> {
    if curve.len() < 2 {
        return Err(Error::domain("smoothness needs a sampled curve"));
    }
    let end = *curve.grid.last().unwrap();
    if !(r_lo < end) {
        return Err(Error::domain(format!(
            "smoothness window [{r_lo}, {end}] is empty"
        )));
    }
    let lo = r_lo.max(curve.grid[0]);
    let inside = curve.grid.iter().filter(|&&r| r >= lo).count();
    if inside < 10 {
        return Err(Error::domain(format!(
            "smoothness window holds {inside} nodes, need at least 10"
        )));
    }
    let spline = MonotoneCubic::new(curve.grid.clone(), curve.values.clone())?;
    let samples = 10 * inside;
    let step = (end - lo) / samples as f64;
    let mut tv = 0.0;
    let mut prev = spline.eval(lo);
    for i in 1..=samples {
        let v = spline.eval(lo + step * i as f64);
        tv += (v - prev).abs();
        prev = v;
    }
    Ok(tv)
}

/// One evaluated grid cell: the measured total variation, or the error that
/// stopped the pipeline there.
#[derive(Debug, Clone)]
pub struct TuneCell {
    pub c: f64,
    pub h: f64,
    pub smoothness: std::result::Result<f64, String>,
}

/// Outcome of a grid scan.
#[derive(Debug, Clone)]
pub struct TuneReport {
    /// All cells in row-major `(c, h)` order.
    pub cells: Vec<TuneCell>,
    /// `(c, h, smoothness)` of the winner, unless every cell failed.
    pub best: Option<(f64, f64, f64)>,
}

/// Evaluate `pipeline` (phases in, reconstructed curve out) over the product
/// grid `cs x hs` and rank the outcomes.  `jobs > 1` distributes cells over
/// that many threads; the report is identical either way.
pub fn grid_search<F>(
    pipeline: F,
    cs: &[f64],
    hs: &[f64],
    r_lo: f64,
    jobs: usize,
) -> Result<TuneReport>
where
    F: Fn(f64, f64) -> Result<PotentialCurve> + Sync,
{
    if cs.is_empty() || hs.is_empty() {
        return Err(Error::domain("tuning grid is empty"));
    }
    if cs.iter().any(|&c| !(c < 0.0) || !c.is_finite()) {
        return Err(Error::domain("tuning grid: every c must be negative"));
    }
    if hs.iter().any(|&h| !h.is_finite()) {
        return Err(Error::domain("tuning grid: every h must be finite"));
    }
    let pairs: Vec<(f64, f64)> = cs
        .iter()
        .flat_map(|&c| hs.iter().map(move |&h| (c, h)))
        .collect();
    let eval_cell = |&(c, h): &(f64, f64)| TuneCell {
        c,
        h,
        smoothness: pipeline(c, h)
            .and_then(|curve| smoothness(&curve, r_lo))
            .map_err(|e| e.to_string()),
    };
    let cells: Vec<TuneCell> = if jobs > 1 && pairs.len() > 1 {
        let workers = jobs.min(pairs.len());
        let mut slots: Vec<Option<TuneCell>> = vec![None; pairs.len()];
        std::thread::scope(|scope| {
            let mut handles = Vec::with_capacity(workers);
            for w in 0..workers {
                let pairs = &pairs;
                let eval_cell = &eval_cell;
                handles.push(scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut i = w;
                    while i < pairs.len() {
                        out.push((i, eval_cell(&pairs[i])));
                        i += workers;
                    }
                    out
                }));
            }
            for handle in handles {
                for (i, cell) in handle.join().expect("tuning worker panicked") {
                    slots[i] = Some(cell);
                }
            }
        });
        slots.into_iter().map(|c| c.unwrap()).collect()
    } else {
        pairs.iter().map(eval_cell).collect()
    };

    let mut best: Option<(f64, f64, f64)> = None;
    for cell in &cells {
        let Ok(s) = cell.smoothness else { continue };
        let better = match best {
            None => true,
            Some((bc, bh, bs)) => {
                (s, cell.c.abs(), cell.h.abs()) < (bs, bc.abs(), bh.abs())
            }
        };
        if better {
            best = Some((cell.c, cell.h, s));
        }
    }
    Ok(TuneReport { cells, best })
}
