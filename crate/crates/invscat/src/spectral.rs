//! From phase shifts to moments of the auxiliary spectral function.
//!
//! Each phase shift `delta_l` pins the outer log-derivative of the partial
//! wave at `r = a`, which under the log-scale transform becomes one sample
//! `m(lambda_l)` of the Weyl function of the auxiliary half-line problem at
//! `lambda_l = -(l+1/2)^2 / c^2`.  Comparing against the reference problem
//! (zero potential, boundary constant `h`) turns each sample into a moment
//!
//! `mu_l = (l+1/2) / (kaR_l - c h) - 1`,
//!
//! where `kaR_l = ka (J' - tan(delta) Y') / (J - tan(delta) Y)` at `ka`, all
//! Bessel orders `l + 1/2`.  These moments are what the Cauchy-matrix solver
//! consumes.
//!
//! [`constant_well_moments`] generates the same moments for an exactly
//! solvable well directly from interior Bessel log-derivatives, carried in
//! double-double precision.  That path never sees the `tan(delta)`
//! cancellation, so it provides noise-free data for high-order convergence
//! studies (the `f64` phase route is limited to rounding in `delta` itself).

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::forward::PhaseShiftSet;
use crate::specfun;

/// Weyl-function sample `m(lambda_l) = kaR / c` for one phase shift.
pub fn m_value(delta: f64, l: u32, ka: f64, c: f64) -> Result<f64> {
    if !(c < 0.0) {
        return Err(Error::domain("transform scale c must be negative"));
    }
    Ok(ka_r(delta, l, ka)? / c)
}

/// Reference Weyl sample for the zero potential: `m0 = (l+1/2)/c`.
pub fn m0_value(l: u32, c: f64) -> f64 {
    (l as f64 + 0.5) / c
}

/// Moment of the spectral-function difference for one phase shift.
pub fn moment(delta: f64, l: u32, ka: f64, c: f64, h: f64) -> Result<f64> {
    if !(c < 0.0) {
        return Err(Error::domain("transform scale c must be negative"));
    }
    let nu = l as f64 + 0.5;
    let denom = ka_r(delta, l, ka)? - c * h;
    if denom.abs() < 1e-12 * nu {
        return Err(Error::numerical(
            "spectral",
            format!("moment denominator vanishes at l={l} (m(lambda) = h)"),
        ));
    }
    Ok(nu / denom - 1.0)
}

/// `ka (J' - t Y') / (J - t Y)` with `t = tan(delta)`, order `l + 1/2`.
fn ka_r(delta: f64, l: u32, ka: f64) -> Result<f64> {
    let nu = l as f64 + 0.5;
    let t = delta.tan();
    let j = specfun::bessel_j(nu, ka)?;
    let jp = specfun::bessel_j_prime(nu, ka)?;
    let y = specfun::bessel_y_halfint(l, ka)?;
    let yp = specfun::bessel_y_halfint_prime(l, ka)?;
    let den = j - t * y;
    if den.abs() < 1e-12 * (j.abs() + (t * y).abs()) {
        return Err(Error::numerical(
            "spectral",
            format!("phase shift at l={l} sits on a pole of the auxiliary Weyl function"),
        ));
    }
    Ok(ka * (jp - t * yp) / den)
}

/// Moments `mu_0 .. mu_{P-1}` together with the transform parameters they
/// were computed for.  Values are carried in double-double internally; the
/// extra digits only matter when the moments come from the noise-free
/// generator, but storing them uniformly keeps one code path.
#[derive(Debug, Clone)]
pub struct MomentSet {
    pub c: f64,
    pub h: f64,
    pub k: f64,
    pub a: f64,
    mus: Vec<Dd>,
}

impl MomentSet {
    /// Moments from measured phase shifts; `n_phases` limits how many
    /// partial waves are consumed (default: all).
    pub fn from_phases(
        set: &PhaseShiftSet,
        c: f64,
        h: f64,
        n_phases: Option<usize>,
    ) -> Result<MomentSet> {
        let p = n_phases.unwrap_or(set.deltas.len());
        if p == 0 || p > set.deltas.len() {
            return Err(Error::domain(format!(
                "requested {p} phases, have {}",
                set.deltas.len()
            )));
        }
        let ka = set.k * set.a;
        let mut mus = Vec::with_capacity(p);
        for (l, &d) in set.deltas.iter().take(p).enumerate() {
            mus.push(Dd::from_f64(moment(d, l as u32, ka, c, h)?));
        }
        Ok(MomentSet {
            c,
            h,
            k: set.k,
            a: set.a,
            mus,
        })
    }

    /// Wrap externally computed moments.
    pub fn from_values(c: f64, h: f64, k: f64, a: f64, mus: Vec<f64>) -> Result<MomentSet> {
        if !(c < 0.0) || mus.is_empty() {
            return Err(Error::domain("moment set needs c < 0 and at least one moment"));
        }
        Ok(MomentSet {
            c,
            h,
            k,
            a,
            mus: mus.into_iter().map(Dd::from_f64).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.mus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mus.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.mus.iter().map(|m| m.to_f64()).collect()
    }

    pub(crate) fn values_dd(&self) -> &[Dd] {
        &self.mus
    }
}

/// Noise-free moments for the constant well `q = c0` on `(0, a]`, computed
/// from interior log-derivatives in double-double precision.
pub fn constant_well_moments(
    c0: f64,
    a: f64,
    k: f64,
    c: f64,
    h: f64,
    count: usize,
) -> Result<MomentSet> {
    if !(c < 0.0) || !(a > 0.0) || !(k > 0.0) || count == 0 {
        return Err(Error::domain(
            "constant_well_moments needs a > 0, k > 0, c < 0, count > 0",
        ));
    }
    let gap = c0 - k * k;
    let ch = Dd::from_f64(c).mul_f64(h);
    let mut mus = Vec::with_capacity(count);
    for l in 0..count {
        let nu = l as f64 + 0.5;
        let ka_r = if gap.abs() < 1e-14 * (k * k).max(1.0) {
            Dd::from_f64(nu)
        } else {
            let xi = gap.abs().sqrt() * a;
            if gap > 0.0 {
                specfun::bessel_i_xratio_dd(nu, xi)?
            } else {
                specfun::bessel_j_xratio_dd(nu, xi)?
            }
        };
        let denom = ka_r.sub(ch);
        if denom.hi.abs() < 1e-12 * nu {
            return Err(Error::numerical(
                "spectral",
                format!("moment denominator vanishes at l={l}"),
            ));
        }
        mus.push(Dd::from_f64(nu).div(denom).add_f64(-1.0));
    }
    Ok(MomentSet {
        c,
        h,
        k,
        a,
        mus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::constant_well_phase_shift;

    // q = 1.2 on (0, 2], k = 1, c = -0.3, h = -0.5: reference moments from
    // 60-digit arithmetic
    const WELL12_MOMENTS: [f64; 11] = [
        -0.171427965718,
        -0.0042935387112,
        0.0150784022661,
        0.0179803634317,
        0.0175644492207,
        0.0163939147829,
        0.0151226813951,
        0.013932406146,
        0.012866846821,
        0.0119266385157,
        0.0110995290223,
    ];

    #[test]
    fn m_value_free_reference() {
        // delta = 0, l = 0, ka = 2, c = -1: m = 2 J'/(c J) at order 1/2
        let m = m_value(0.0, 0, 2.0, -1.0).unwrap();
        assert!((m - 1.415315108720572).abs() < 1e-13);
        // reference sample: m0 = (l+1/2)/c
        assert!((m0_value(3, -0.5) - -7.0).abs() < 1e-15);
    }

    #[test]
    fn moments_from_phases_match_reference() {
        let deltas: Vec<f64> = (0..11)
            .map(|l| constant_well_phase_shift(1.2, 2.0, 1.0, l).unwrap())
            .collect();
        let set = PhaseShiftSet::new(1.0, 2.0, deltas).unwrap();
        let mus = MomentSet::from_phases(&set, -0.3, -0.5, None)
            .unwrap()
            .values();
        for (l, (&got, &want)) in mus.iter().zip(&WELL12_MOMENTS).enumerate() {
            assert!(
                (got - want).abs() < 1e-9,
                "mu_{l} = {got}, want {want}"
            );
        }
    }

    #[test]
    fn generator_matches_phase_route() {
        let gen = constant_well_moments(1.2, 2.0, 1.0, -0.3, -0.5, 11)
            .unwrap()
            .values();
        for (l, (&got, &want)) in gen.iter().zip(&WELL12_MOMENTS).enumerate() {
            assert!(
                (got - want).abs() < 1e-12,
                "generator mu_{l} = {got}, want {want}"
            );
        }
        // oscillatory interior branch (c0 < k^2) against the phase route
        let gen08 = constant_well_moments(0.8, 2.0, 1.0, -1.0, 0.0, 6)
            .unwrap()
            .values();
        let deltas: Vec<f64> = (0..6)
            .map(|l| constant_well_phase_shift(0.8, 2.0, 1.0, l).unwrap())
            .collect();
        let set = PhaseShiftSet::new(1.0, 2.0, deltas).unwrap();
        let from_phases = MomentSet::from_phases(&set, -1.0, 0.0, None)
            .unwrap()
            .values();
        for (l, (&g, &p)) in gen08.iter().zip(&from_phases).enumerate() {
            assert!((g - p).abs() < 1e-11, "branch mismatch at l={l}: {g} vs {p}");
        }
    }

    #[test]
    fn pole_is_detected() {
        // choose tan(delta) = J/Y so the denominator vanishes exactly
        let nu = 0.5f64;
        let ka = 2.0f64;
        let j = specfun::bessel_j(nu, ka).unwrap();
        let y = specfun::bessel_y_halfint(0, ka).unwrap();
        let delta = (j / y).atan();
        assert!(matches!(
            moment(delta, 0, ka, -1.0, 0.0),
            Err(Error::Numerical { .. })
        ));
    }

    #[test]
    fn truncation_count_is_respected() {
        let deltas: Vec<f64> = (0..11)
            .map(|l| constant_well_phase_shift(1.2, 2.0, 1.0, l).unwrap())
            .collect();
        let set = PhaseShiftSet::new(1.0, 2.0, deltas).unwrap();
        let m5 = MomentSet::from_phases(&set, -0.3, -0.5, Some(5)).unwrap();
        assert_eq!(m5.len(), 5);
        assert!(MomentSet::from_phases(&set, -0.3, -0.5, Some(12)).is_err());
    }
}
