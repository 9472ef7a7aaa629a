//! Exact rational solve of the structured (Cauchy) moment system.
//!
//! Every input of the solve is an exact dyadic rational: the nodes are
//! half-integers and `f64` products, and each double-double moment is by
//! definition the sum of two `f64`s.  The closed-form Cauchy inverse is a
//! rational function of the nodes, so the coefficient vector can be computed
//! with no rounding at all using big-integer rationals, and rounded to
//! double-double only at the end.
//!
//! This matters at high order: inverse entries grow to ~1e34 by dimension 30
//! while the solution stays twenty digits smaller, so even double-double
//! products lose most of their accuracy to the final cancellation.  The
//! exact path sidesteps the whole issue at O(P^2) rational operations, using
//! the factored form of the inverse:
//!
//! `B_ij = C(j) R(i) / ((x_j + y_i) Py(i) Px(j))` with
//! `C(j) = prod_m (x_j + y_m)`, `R(i) = prod_m (x_m + y_i)`,
//! `Px(j) = prod_{m != j} (x_m - x_j)`, `Py(i) = prod_{m != i} (y_m - y_i)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dd::Dd;
use crate::error::{Error, Result};

fn f64_to_ratio(v: f64) -> Result<BigRational> {
    BigRational::from_float(v)
        .ok_or_else(|| Error::numerical("moment-solver", format!("non-finite value {v}")))
}

pub(crate) fn dd_to_ratio(v: Dd) -> Result<BigRational> {
    Ok(f64_to_ratio(v.hi)? + f64_to_ratio(v.lo)?)
}

pub(crate) fn ratio_to_dd(r: &BigRational) -> Dd {
    let hi = r.to_f64().unwrap_or(f64::INFINITY);
    if !hi.is_finite() {
        return Dd::from_f64(hi);
    }
    let rest = r - BigRational::from_float(hi).unwrap();
    Dd::new(hi, rest.to_f64().unwrap_or(0.0))
}

/// Solve `sum_j A_ij z_j = rhs_i` with `A_ij = 1/(xs[i] + ys[j])` exactly.
///
/// Returns the solution rounded to double-double.  Degenerate node pairs and
/// vanishing denominators surface as numerical errors, mirroring the checks
/// of the double-double inverse.
pub(crate) fn cauchy_solve_exact(xs: &[Dd], ys: &[Dd], rhs: &[Dd]) -> Result<Vec<Dd>> {
    let n = xs.len();
    assert!(ys.len() == n && rhs.len() == n && n > 0);
    let xs: Vec<BigRational> = xs.iter().map(|&v| dd_to_ratio(v)).collect::<Result<_>>()?;
    let ys: Vec<BigRational> = ys.iter().map(|&v| dd_to_ratio(v)).collect::<Result<_>>()?;
    let rhs: Vec<BigRational> = rhs.iter().map(|&v| dd_to_ratio(v)).collect::<Result<_>>()?;

    // the closed form needs pairwise-distinct nodes within each family and
    // nonvanishing sums across families; thresholds match the inexact path
    let scale = xs
        .iter()
        .chain(&ys)
        .map(|v| v.to_f64().unwrap_or(0.0).abs())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    for (fam, name) in [(&xs, "x"), (&ys, "y")] {
        for i in 0..n {
            for j in i + 1..n {
                let d = (&fam[i] - &fam[j]).to_f64().unwrap_or(0.0).abs();
                if d < 1e-10 * scale {
                    return Err(Error::numerical(
                        "moment-solver",
                        format!("degenerate {name}-nodes at indices {i}, {j}"),
                    ));
                }
            }
        }
    }
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            if (x + y).to_f64().unwrap_or(0.0).abs() < 1e-12 * scale {
                return Err(Error::numerical(
                    "moment-solver",
                    format!("cauchy node collision: x[{i}] + y[{j}] vanishes"),
                ));
            }
        }
    }

    let one = || BigRational::from_integer(BigInt::from(1));
    // C(j) = prod_m (x_j + y_m), R(i) = prod_m (x_m + y_i)
    let cprod: Vec<BigRational> = (0..n)
        .map(|j| ys.iter().fold(one(), |acc, y| acc * (&xs[j] + y)))
        .collect();
    let rprod: Vec<BigRational> = (0..n)
        .map(|i| xs.iter().fold(one(), |acc, x| acc * (x + &ys[i])))
        .collect();
    // Px(j) = prod_{m != j} (x_m - x_j), Py(i) = prod_{m != i} (y_m - y_i)
    let pxprod: Vec<BigRational> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&m| m != j)
                .fold(one(), |acc, m| acc * (&xs[m] - &xs[j]))
        })
        .collect();
    let pyprod: Vec<BigRational> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&m| m != i)
                .fold(one(), |acc, m| acc * (&ys[m] - &ys[i]))
        })
        .collect();

    // z_i = R(i)/Py(i) * sum_j [C(j) rhs_j / Px(j)] / (x_j + y_i)
    let t: Vec<BigRational> = (0..n)
        .map(|j| &cprod[j] * &rhs[j] / &pxprod[j])
        .collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut s = BigRational::zero();
        for j in 0..n {
            s += &t[j] / (&xs[j] + &ys[i]);
        }
        let z = s * &rprod[i] / &pyprod[i];
        if z.numer().abs().bits() as i64 - z.denom().abs().bits() as i64 > 1020 {
            return Err(Error::numerical(
                "moment-solver",
                "exact cauchy solution overflows f64",
            ));
        }
        out.push(ratio_to_dd(&z));
    }
    Ok(out)
}
