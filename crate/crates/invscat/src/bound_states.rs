//! Bound states of the auxiliary half-line problem for a constant well.
//!
//! For `q = C` on `(0, a]` the auxiliary potential is exactly a decaying
//! exponential, `Q(x) = -s e^{-2tx}` with `sqrt(s) = kappa a / |c|`,
//! `t = 1/|c|` and `kappa^2 = k^2 - C`, and its spectrum is available in
//! closed form: `lambda = -(mu/|c|)^2` at every order `mu > 0` with
//!
//! `J'_mu(kappa a) + (h |c| / kappa a) J_mu(kappa a) = 0`.
//!
//! At `h = 0` the count of such roots steps up each time `kappa a` crosses a
//! positive zero of `J_1`, which partitions the `kappa a` axis into sectors
//! with a fixed number of bound states.  The weight each bound state carries
//! in the spectral function is the simple-pole residue `1 / m'(lambda)` of
//! the boundary function `m(lambda) = -sqrt(s) J'_mu / J_mu`.

use crate::error::{Error, Result};
use crate::specfun::{bessel_j, bessel_j_prime};

const MAX_KAPPA_A: f64 = 35.0;

fn check_kappa_a(kappa_a: f64) -> Result<()> {
    if !(kappa_a > 0.0) || !kappa_a.is_finite() {
        return Err(Error::domain(format!("kappa a = {kappa_a} must be positive")));
    }
    if kappa_a > MAX_KAPPA_A {
        return Err(Error::domain(format!(
            "kappa a = {kappa_a} beyond the supported range (<= {MAX_KAPPA_A})"
        )));
    }
    Ok(())
}

/// Bisection on a bracketing interval; `f` must change sign across it.
fn bisect<F: Fn(f64) -> Result<f64>>(f: F, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = f(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-12 * (1.0 + mid.abs()) {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (flo < 0.0) == (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// First `n` positive zeros of `J_1`: the `kappa a` values where the
/// `h = 0` bound-state count increases by one.
pub fn sector_boundaries(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > 14 {
        return Err(Error::domain("sector boundaries available up to order 14"));
    }
    let f = |x: f64| bessel_j(1.0, x);
    let mut out = Vec::with_capacity(n);
    let mut x = 0.5;
    let mut fx = f(x)?;
    while out.len() < n {
        let next = x + 0.05;
        if next > 49.9 {
            return Err(Error::numerical("assessment", "sector scan left the safe range"));
        }
        let fnext = f(next)?;
        if fx == 0.0 || (fx < 0.0) != (fnext < 0.0) {
            out.push(bisect(f, x, next)?);
        }
        x = next;
        fx = fnext;
    }
    Ok(out)
}

/// Number of bound states of the auxiliary problem at `h = 0`.  There is
/// always at least one; each sector boundary below `kappa a` adds another.
pub fn count_bound_states_h0(kappa_a: f64) -> Result<usize> {
    check_kappa_a(kappa_a)?;
    let mut count = 1;
    for z in sector_boundaries(14)? {
        if z < kappa_a {
            count += 1;
        } else {
            break;
        }
    }
    Ok(count)
}

/// True when `kappa a` sits within `tol` of a sector boundary, where the
/// count (and everything downstream of it) is unreliable.
pub fn near_sector_boundary(kappa_a: f64, tol: f64) -> Result<bool> {
    check_kappa_a(kappa_a)?;
    if !(tol >= 0.0) {
        return Err(Error::domain("boundary tolerance must be nonnegative"));
    }
    Ok(sector_boundaries(14)?
        .iter()
        .any(|z| (z - kappa_a).abs() < tol))
}

fn condition(mu: f64, kappa_a: f64, c: f64, h: f64) -> Result<f64> {
    let mut v = bessel_j_prime(mu, kappa_a)?;
    if h != 0.0 {
        v += h * c.abs() / kappa_a * bessel_j(mu, kappa_a)?;
    }
    Ok(v)
}

/// Bound-state positions `lambda_i < 0` of the auxiliary problem, deepest
/// last, by scanning the order `mu` and refining each sign change.
pub fn bound_state_positions(kappa_a: f64, c: f64, h: f64) -> Result<Vec<f64>> {
    check_kappa_a(kappa_a)?;
    if !(c < 0.0) || !c.is_finite() {
        return Err(Error::domain(format!("transform scale c = {c} must be negative")));
    }
    if !h.is_finite() {
        return Err(Error::domain("boundary constant h must be finite"));
    }
    let mu_max = (kappa_a + 5.0).min(39.9);
    let steps = 4000usize;
    let dx = (mu_max - 1e-9) / steps as f64;
    let f = |mu: f64| condition(mu, kappa_a, c, h);
    let mut roots = Vec::new();
    let mut x = 1e-9;
    let mut fx = f(x)?;
    for _ in 0..steps {
        let next = x + dx;
        let fnext = f(next)?;
        if fx == 0.0 || (fx < 0.0) != (fnext < 0.0) {
            roots.push(bisect(f, x, next)?);
        }
        x = next;
        fx = fnext;
    }
    // lambda = -(mu/|c|)^2, descending in mu means deepest last
    Ok(roots.iter().map(|mu| -(mu / c.abs()).powi(2)).collect())
}

/// Boundary function `m(lambda) = -sqrt(s) J'_mu(kappa a) / J_mu(kappa a)`
/// with `mu = |c| sqrt(-lambda)`; bound states solve `m(lambda) = h`.
fn m_of_lambda(lambda: f64, kappa_a: f64, c: f64) -> Result<f64> {
    let mu = c.abs() * (-lambda).sqrt();
    let j = bessel_j(mu, kappa_a)?;
    if j.abs() < 1e-300 {
        return Err(Error::numerical("assessment", "boundary function pole"));
    }
    Ok(-(kappa_a / c.abs()) * bessel_j_prime(mu, kappa_a)? / j)
}

/// Spectral weight of the bound state at `lambda0`: the residue
/// `1 / m'(lambda0)`, evaluated by central differences.
pub fn step_height(kappa_a: f64, c: f64, h: f64, lambda0: f64) -> Result<f64> {
    check_kappa_a(kappa_a)?;
    if !(c < 0.0) || !c.is_finite() {
        return Err(Error::domain(format!("transform scale c = {c} must be negative")));
    }
    if !(lambda0 < 0.0) || !lambda0.is_finite() {
        return Err(Error::domain(format!("bound-state position {lambda0} must be negative")));
    }
    if (m_of_lambda(lambda0, kappa_a, c)? - h).abs() > 1e-4 * (1.0 + h.abs()) {
        return Err(Error::domain(format!(
            "lambda = {lambda0} is not a bound state of this configuration"
        )));
    }
    let d = 1e-5 * lambda0.abs().max(0.1);
    let mp = m_of_lambda(lambda0 + d, kappa_a, c)?;
    let mm = m_of_lambda(lambda0 - d, kappa_a, c)?;
    let slope = (mp - mm) / (2.0 * d);
    if slope == 0.0 || !slope.is_finite() {
        return Err(Error::numerical("assessment", "boundary function slope degenerate"));
    }
    Ok(1.0 / slope)
}

/// Outcome of the one-bound-state reduction test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reducibility {
    /// Only one bound state to begin with.
    AlreadyOne,
    /// Two bound states, but a steeper transform scale brings the
    /// configuration back to one.
    ReducibleToOne,
    /// Beyond the guaranteed window; reduction may or may not exist.
    OutsideLemma,
}

/// Classify `kappa a` against the one-bound-state window: below the first
/// `J_1` zero there is one state; up to the second `J_0` zero a reduction to
/// one state is guaranteed; beyond that no guarantee holds.
pub fn reducibility_window(kappa_a: f64) -> Result<Reducibility> {
    check_kappa_a(kappa_a)?;
    let first_j1 = sector_boundaries(1)?[0];
    if kappa_a < first_j1 {
        return Ok(Reducibility::AlreadyOne);
    }
    // second positive zero of J_0
    let f = |x: f64| bessel_j(0.0, x);
    let z2 = bisect(f, 5.0, 6.0)?;
    if kappa_a < z2 {
        Ok(Reducibility::ReducibleToOne)
    } else {
        Ok(Reducibility::OutsideLemma)
    }
}
