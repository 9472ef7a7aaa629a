//! Forward problem: scattering phase shifts of a cut-off radial potential.
//!
//! Two independent routes are provided.  [`solve_phase_shifts`] integrates
//! the radial equation numerically (fourth-order Runge-Kutta on a geometric
//! mesh with step-doubling Richardson control) and matches the outer
//! solution; it works for any potential shape.  [`constant_well_phase_shift`]
//! evaluates the closed form for a constant well via interior Bessel
//! log-derivatives and is exact up to rounding; it doubles as an oracle for
//! the ODE route and as the noise-free data generator for tests.

use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;
use crate::specfun;

#[derive(Debug, Clone)]
pub enum WellShape {
    /// `q(r) = c0` for `r <= a`.
    Constant { c0: f64 },
    /// `q(r) = amp * exp(-alpha r^2)` for `r <= a`.
    Gauss { amp: f64, alpha: f64 },
    /// `q(r) = v0 / (1 + exp((r - radius)/diffuseness))` for `r <= a`.
    WoodsSaxon {
        v0: f64,
        radius: f64,
        diffuseness: f64,
    },
    /// Tabulated values, interpolated monotone-cubically.
    Table(MonotoneCubic),
}

/// A radial potential supported on `(0, a]` and identically zero beyond.
#[derive(Debug, Clone)]
pub struct RadialPotential {
    pub shape: WellShape,
    pub a: f64,
}

impl RadialPotential {
    pub fn constant(c0: f64, a: f64) -> Result<Self> {
        check_a(a)?;
        Ok(RadialPotential {
            shape: WellShape::Constant { c0 },
            a,
        })
    }

    pub fn gauss(amp: f64, alpha: f64, a: f64) -> Result<Self> {
        check_a(a)?;
        Ok(RadialPotential {
            shape: WellShape::Gauss { amp, alpha },
            a,
        })
    }

    pub fn woods_saxon(v0: f64, radius: f64, diffuseness: f64, a: f64) -> Result<Self> {
        check_a(a)?;
        if diffuseness <= 0.0 {
            return Err(Error::domain("woods-saxon diffuseness must be positive"));
        }
        Ok(RadialPotential {
            shape: WellShape::WoodsSaxon {
                v0,
                radius,
                diffuseness,
            },
            a,
        })
    }

    /// Tabulated potential; the cut-off is the last abscissa.
    pub fn from_table(rs: Vec<f64>, qs: Vec<f64>) -> Result<Self> {
        let table = MonotoneCubic::new(rs, qs)?;
        let a = table.x_max();
        check_a(a)?;
        Ok(RadialPotential {
            shape: WellShape::Table(table),
            a,
        })
    }

    pub fn q(&self, r: f64) -> f64 {
        if r > self.a {
            return 0.0;
        }
        match &self.shape {
            WellShape::Constant { c0 } => *c0,
            WellShape::Gauss { amp, alpha } => amp * (-alpha * r * r).exp(),
            WellShape::WoodsSaxon {
                v0,
                radius,
                diffuseness,
            } => v0 / (1.0 + ((r - radius) / diffuseness).exp()),
            WellShape::Table(t) => t.eval(r),
        }
    }
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("cut-off radius a = {a} must be positive")));
    }
    Ok(())
}

/// Phase shifts `deltas[l]` for `l = 0..=l_max` at wavenumber `k`, each
/// folded into `(-pi/2, pi/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseShiftSet {
    pub k: f64,
    pub a: f64,
    pub deltas: Vec<f64>,
}

impl PhaseShiftSet {
    pub fn new(k: f64, a: f64, deltas: Vec<f64>) -> Result<Self> {
        if !(k > 0.0) || !(a > 0.0) {
            return Err(Error::domain("phase shift set needs k > 0 and a > 0"));
        }
        Ok(PhaseShiftSet { k, a, deltas })
    }

    pub fn l_max(&self) -> usize {
        self.deltas.len().saturating_sub(1)
    }
}

/// Fold an angle into `(-pi/2, pi/2]` (phase shifts are only defined
/// modulo pi here).
pub(crate) fn fold_phase(d: f64) -> f64 {
    use std::f64::consts::PI;
    let mut v = d - PI * (d / PI).round();
    if v <= -PI / 2.0 {
        v += PI;
    }
    v
}

/// Match interior data `(u, u')` at `r = a` to the free outer solution and
/// return the phase shift.  Writing the outer solution as
/// `sqrt(r) [J_nu(kr) - tan(delta) Y_nu(kr)]`, continuity of `u'/u` gives
/// `tan(delta)` as a ratio of two Wronskian-like combinations.
fn match_phase(u: f64, up: f64, k: f64, a: f64, l: u32) -> Result<f64> {
    let nu = l as f64 + 0.5;
    let ka = k * a;
    let j = specfun::bessel_j(nu, ka)?;
    let jp = specfun::bessel_j_prime(nu, ka)?;
    let y = specfun::bessel_y_halfint(l, ka)?;
    let yp = specfun::bessel_y_halfint_prime(l, ka)?;
    let num = up * j - u * (j / (2.0 * a) + k * jp);
    let den = up * y - u * (y / (2.0 * a) + k * yp);
    let delta = (num / den).atan();
    if !delta.is_finite() {
        return Err(Error::numerical(
            "forward",
            format!("indeterminate phase match at l={l}"),
        ));
    }
    Ok(fold_phase(delta))
}

/// One Runge-Kutta pass over a geometric mesh with `n` steps; returns
/// `(u, u')` at `r = a`, rescaled as needed to avoid overflow.
fn integrate_radial(pot: &RadialPotential, k: f64, l: u32, n: usize) -> (f64, f64) {
    let a = pot.a;
    let r0 = 1e-6 * a;
    let ll = (l * (l + 1)) as f64;
    let rhs = |r: f64, u: f64, up: f64| -> (f64, f64) {
        (up, (ll / (r * r) + pot.q(r) - k * k) * u)
    };
    let ratio = (a / r0).powf(1.0 / n as f64);
    let mut r = r0;
    let mut u = 1.0f64;
    let mut up = (l as f64 + 1.0) / r0;
    for i in 0..n {
        let r_next = if i + 1 == n { a } else { r0 * ratio.powi(i as i32 + 1) };
        let h = r_next - r;
        let (k1u, k1v) = rhs(r, u, up);
        let (k2u, k2v) = rhs(r + 0.5 * h, u + 0.5 * h * k1u, up + 0.5 * h * k1v);
        let (k3u, k3v) = rhs(r + 0.5 * h, u + 0.5 * h * k2u, up + 0.5 * h * k2v);
        let (k4u, k4v) = rhs(r_next, u + h * k3u, up + h * k3v);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        up += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        r = r_next;
        if u.abs() > 1e250 || up.abs() > 1e250 {
            u *= 2f64.powi(-512);
            up *= 2f64.powi(-512);
        }
    }
    (u, up)
}

/// Phase shift for one partial wave by direct integration of the radial
/// equation, with step-doubling until two successive meshes agree to
/// `ode_tol` and one Richardson extrapolation on top.
pub fn phase_shift_ode(pot: &RadialPotential, k: f64, l: u32, ode_tol: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::domain("wavenumber must be positive"));
    }
    if !(ode_tol > 0.0 && ode_tol < 1.0) {
        return Err(Error::domain(format!("ode_tol {ode_tol} outside (0, 1)")));
    }
    let mut n = 64 * (l as usize + 1);
    let (u, up) = integrate_radial(pot, k, l, n);
    let mut prev = match_phase(u, up, k, pot.a, l)?.tan();
    while n <= (1 << 21) {
        n *= 2;
        let (u, up) = integrate_radial(pot, k, l, n);
        let cur = match_phase(u, up, k, pot.a, l)?.tan();
        if (cur - prev).abs() <= ode_tol * cur.abs().max(1.0) {
            // RK4 converges at fourth order in the step, so one Richardson
            // step on tan(delta) removes the leading error term
            let extr = (16.0 * cur - prev) / 15.0;
            return Ok(fold_phase(extr.atan()));
        }
        prev = cur;
    }
    Err(Error::numerical(
        "forward",
        format!("phase shift did not converge at l={l} (tol {ode_tol})"),
    ))
}

/// Phase shifts for `l = 0..=l_max` by ODE integration.
pub fn solve_phase_shifts(
    pot: &RadialPotential,
    k: f64,
    l_max: u32,
    ode_tol: f64,
) -> Result<PhaseShiftSet> {
    let mut deltas = Vec::with_capacity(l_max as usize + 1);
    for l in 0..=l_max {
        deltas.push(phase_shift_ode(pot, k, l, ode_tol)?);
    }
    PhaseShiftSet::new(k, pot.a, deltas)
}

/// Exact phase shift of the constant well `q = c0` on `(0, a]`.
///
/// The interior log-derivative is a Bessel ratio: `I` when `c0 > k^2`
/// (evanescent interior), `J` when `c0 < k^2`, and the plain power `r^{l+1}`
/// at the crossover.  The match is arranged as a cross-multiplication so a
/// node of the interior solution exactly at `r = a` stays finite.
pub fn constant_well_phase_shift(c0: f64, a: f64, k: f64, l: u32) -> Result<f64> {
    check_a(a)?;
    if !(k > 0.0) {
        return Err(Error::domain("wavenumber must be positive"));
    }
    let nu = l as f64 + 0.5;
    // interior ratio r u'/u - 1/2 at r = a, as numerator/denominator
    let gap = c0 - k * k;
    let (upper, lower) = if gap.abs() < 1e-14 * (k * k).max(1.0) {
        (crate::dd::Dd::from_f64(nu), crate::dd::Dd::ONE)
    } else {
        let xi = gap.abs().sqrt() * a;
        specfun::bessel_xratio_parts_dd(nu, xi, gap > 0.0)?
    };
    let (rin, s) = (upper.to_f64(), lower.to_f64());
    let ka = k * a;
    let j = specfun::bessel_j(nu, ka)?;
    let jp = specfun::bessel_j_prime(nu, ka)?;
    let y = specfun::bessel_y_halfint(l, ka)?;
    let yp = specfun::bessel_y_halfint_prime(l, ka)?;
    let num = ka * jp * s - rin * j;
    let den = ka * yp * s - rin * y;
    let delta = (num / den).atan();
    if !delta.is_finite() {
        return Err(Error::numerical(
            "forward",
            format!("indeterminate constant-well match at l={l}"),
        ));
    }
    Ok(fold_phase(delta))
}
