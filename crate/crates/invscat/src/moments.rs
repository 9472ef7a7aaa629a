//! Structured moment problem: from moments to a finite exponential
//! representation of the spectral difference.
//!
//! The translation kernel of the reconstruction is
//!
//! `F(x) = sum_i hw_i e^{beta_i x} + sum_n c_n e^{-n x}`,
//!
//! a finite sum of decaying lattice exponentials (`n = 0, 1, 2, ...`) plus
//! one term per bound state of the auxiliary problem (`beta_i =
//! sqrt(-lambda_i) > 0`; a fitted `beta < 0` is a "spurious" bound term and
//! is reported as such).  Each moment is a weighted sum of simple fractions
//! in these rates, so with the rates fixed the coefficients solve a linear
//! system whose matrix is a Cauchy matrix `A_ij = 1/(x_i + y_j)` over the
//! node families `x_l = l + 1/2` and `y_n = -c n`.
//!
//! Cauchy matrices are notoriously ill-conditioned, but their inverse is
//! known in closed form as a product of node differences, so the solve does
//! not have to go through elimination.  Even so, contracting the inverse
//! against the moments cancels catastrophically: by order 30 the inverse
//! entries reach ~1e34 while the coefficients stay below ~1e18, so ~17
//! digits vanish in the sum and even double-double arithmetic is not enough.
//! All the inputs are exact dyadic rationals, though (half-integer `x`
//! nodes, products of floats for the `y` nodes, double-double moments), so
//! the square solves run in exact rational arithmetic ([`crate::exact`])
//! and round only the final coefficients.  The explicit double-double
//! inverse is kept for inspecting the matrix itself.

use crate::dd::{self, Dd};
use crate::error::{Error, Result};
use crate::spectral::MomentSet;

/// Node families of the structured system: entries `A_ij = 1/(xs[i] + ys[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyNodes {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

/// Explicit inverse of the Cauchy matrix over the given nodes.
pub fn cauchy_inverse(nodes: &CauchyNodes) -> Result<Vec<Vec<f64>>> {
    if nodes.xs.len() != nodes.ys.len() || nodes.xs.is_empty() {
        return Err(Error::domain("cauchy_inverse: need equal, nonzero node counts"));
    }
    let xs: Vec<Dd> = nodes.xs.iter().map(|&v| Dd::from_f64(v)).collect();
    let ys: Vec<Dd> = nodes.ys.iter().map(|&v| Dd::from_f64(v)).collect();
    let inv = cauchy_inverse_dd(&xs, &ys)?;
    Ok(inv
        .into_iter()
        .map(|row| row.into_iter().map(|v| v.to_f64()).collect())
        .collect())
}

/// Running product in sign/exponent/mantissa form: the value is
/// `mant * 2^exp2` with the double-double mantissa kept near unit magnitude.
/// Factor counts here are small, but individual partial products overflow
/// `f64` long before the final entry does, hence the explicit exponent.
struct ScaledProduct {
    mant: Dd,
    exp2: i64,
}

impl ScaledProduct {
    fn new(initial: Dd) -> Self {
        let mut p = ScaledProduct {
            mant: initial,
            exp2: 0,
        };
        p.normalize();
        p
    }

    fn mul(&mut self, f: Dd) {
        self.mant = self.mant.mul(f);
        self.normalize();
    }

    fn div(&mut self, f: Dd) {
        self.mant = self.mant.div(f);
        self.normalize();
    }

    fn normalize(&mut self) {
        let m = self.mant.hi.abs();
        if m == 0.0 {
            return;
        }
        if !(1e-60..=1e60).contains(&m) {
            let k = m.log2().floor() as i32;
            self.mant = self.mant.ldexp(-k);
            self.exp2 += k as i64;
        }
    }

    fn value(&self) -> Result<Dd> {
        if self.exp2.abs() > 1000 {
            return Err(Error::numerical(
                "moment-solver",
                format!("cauchy inverse entry overflows f64 (2^{})", self.exp2),
            ));
        }
        Ok(self.mant.ldexp(self.exp2 as i32))
    }
}

/// Closed-form Cauchy inverse in double-double:
/// `B_ij = (x_j + y_i) prod_{m != i} (x_j + y_m)/(y_m - y_i)
///                    prod_{m != j} (x_m + y_i)/(x_m - x_j)`.
///
/// Public for identity checks: the entries grow so fast with dimension that
/// an `A * B = I` contraction through [`cauchy_inverse`]'s rounded `f64`
/// entries is limited by that rounding, not by the formula.
pub fn cauchy_inverse_dd(xs: &[Dd], ys: &[Dd]) -> Result<Vec<Vec<Dd>>> {
    let n = xs.len();
    let scale = xs
        .iter()
        .chain(ys)
        .map(|v| v.hi.abs())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    for (fam, name) in [(xs, "x"), (ys, "y")] {
        for i in 0..n {
            for j in i + 1..n {
                if fam[i].sub(fam[j]).hi.abs() < 1e-10 * scale {
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
            if x.add(*y).hi.abs() < 1e-12 * scale {
                return Err(Error::numerical(
                    "moment-solver",
                    format!("cauchy node collision: x[{i}] + y[{j}] vanishes"),
                ));
            }
        }
    }
    let mut out = vec![vec![Dd::ZERO; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut p = ScaledProduct::new(xs[j].add(ys[i]));
            for m in 0..n {
                if m != i {
                    p.mul(xs[j].add(ys[m]));
                    p.div(ys[m].sub(ys[i]));
                }
                if m != j {
                    p.mul(xs[m].add(ys[i]));
                    p.div(xs[m].sub(xs[j]));
                }
            }
            out[i][j] = p.value()?;
        }
    }
    Ok(out)
}

/// Finite exponential representation of the translation kernel, the output
/// of all three solvers.
#[derive(Debug, Clone)]
pub struct SpectralExpansion {
    pub c: f64,
    pub h: f64,
    pub k: f64,
    pub a: f64,
    /// first lattice index (0 normally, 1 when the constant term is dropped)
    n0: usize,
    /// `(beta_i, half_weight_i)` per bound term
    bound: Vec<(Dd, Dd)>,
    /// lattice coefficients `c_n`, `n = n0, n0+1, ...`
    coeffs: Vec<Dd>,
}

impl SpectralExpansion {
    /// Signed rates `beta_i`; negative means a spurious bound term.
    pub fn betas(&self) -> Vec<f64> {
        self.bound.iter().map(|(b, _)| b.to_f64()).collect()
    }

    /// Bound-state positions `lambda_i = -beta_i^2`.
    pub fn lambdas(&self) -> Vec<f64> {
        self.bound
            .iter()
            .map(|(b, _)| {
                let bf = b.to_f64();
                -bf * bf
            })
            .collect()
    }

    pub fn bound_half_weights(&self) -> Vec<f64> {
        self.bound.iter().map(|(_, w)| w.to_f64()).collect()
    }

    /// Full bound-state weights `b_i = 2 * half_weight_i`.
    pub fn bound_weights(&self) -> Vec<f64> {
        self.bound.iter().map(|(_, w)| 2.0 * w.to_f64()).collect()
    }

    pub fn coefficients(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64()).collect()
    }

    /// Index of the first lattice coefficient.
    pub fn n_offset(&self) -> usize {
        self.n0
    }

    /// True when a fitted bound term has a non-positive rate, i.e. the data
    /// did not actually support a bound state there.
    pub fn spurious(&self) -> bool {
        self.bound.iter().any(|(b, _)| b.to_f64() <= 0.0)
    }

    /// `F(0)`; consistent data give `F(0) = -h` up to truncation.
    pub fn f_zero(&self) -> f64 {
        let mut s = Dd::ZERO;
        for (_, w) in &self.bound {
            s = s.add(*w);
        }
        for cn in &self.coeffs {
            s = s.add(*cn);
        }
        s.to_f64()
    }

    pub fn f0_residual(&self) -> f64 {
        self.f_zero() + self.h
    }

    /// Kernel value `F(x)`.  The lattice coefficients reach enormous
    /// magnitudes at high order while `F` stays of order one, so the sum is
    /// carried in double-double.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.evaluate_dd(x).to_f64()
    }

    pub(crate) fn evaluate_dd(&self, x: f64) -> Dd {
        let mut s = Dd::ZERO;
        for (b, w) in &self.bound {
            s = s.add(w.mul(b.mul_f64(x).exp()));
        }
        let e = Dd::from_f64(-x).exp();
        let mut p = e.powi(self.n0 as i32);
        for cn in &self.coeffs {
            s = s.add(cn.mul(p));
            p = p.mul(e);
        }
        s
    }

    /// Moments this expansion generates (the forward direction of the
    /// moment map); used by tests and the multi-bound-state residual.
    pub fn implied_moments(&self, count: usize) -> Vec<f64> {
        (0..count)
            .map(|l| {
                forward_moment(
                    self.c,
                    l,
                    &self.bound,
                    self.n0,
                    &self.coeffs,
                )
                .to_f64()
            })
            .collect()
    }
}

/// `mu_l` implied by rates and coefficients:
/// `mu_l = -c [ sum_i hw_i/(nu_l + c beta_i) + sum_n c_n/(nu_l - c n) ]`.
fn forward_moment(c: f64, l: usize, bound: &[(Dd, Dd)], n0: usize, coeffs: &[Dd]) -> Dd {
    let nu = l as f64 + 0.5;
    let mut s = Dd::ZERO;
    for (b, w) in bound {
        let den = b.mul_f64(c).add_f64(nu);
        s = s.add(w.div(den));
    }
    for (i, cn) in coeffs.iter().enumerate() {
        let n = (n0 + i) as f64;
        let den = Dd::from_f64(c).mul_f64(-n).add_f64(nu);
        s = s.add(cn.div(den));
    }
    s.mul_f64(-c)
}

fn lattice_nodes(c: f64, n0: usize, count: usize) -> Vec<Dd> {
    (0..count)
        .map(|i| Dd::from_f64(-c).mul_f64((n0 + i) as f64))
        .collect()
}

fn x_nodes(count: usize) -> Vec<Dd> {
    (0..count).map(|l| Dd::from_f64(l as f64 + 0.5)).collect()
}

/// Solve the moment problem with no bound term: `P` moments determine the
/// `P` lattice coefficients through the inverse Cauchy matrix.
pub fn solve_zero_bs(mu: &MomentSet, drop_c0: bool) -> Result<SpectralExpansion> {
    let p = mu.len();
    if p == 0 {
        return Err(Error::domain("no moments supplied"));
    }
    let n0 = usize::from(drop_c0);
    let xs = x_nodes(p);
    let ys = lattice_nodes(mu.c, n0, p);
    // The contraction of the inverse against the moments cancels violently
    // (inverse entries grow like 1e34 by P = 30 while the answer stays below
    // 1e18), so the solve runs in exact rational arithmetic on the dyadic
    // inputs and only the final division by -c rounds.
    let z = crate::exact::cauchy_solve_exact(&xs, &ys, mu.values_dd())?;
    let coeffs: Vec<Dd> = z.into_iter().map(|zi| zi.div_f64(-mu.c)).collect();
    Ok(SpectralExpansion {
        c: mu.c,
        h: mu.h,
        k: mu.k,
        a: mu.a,
        n0,
        bound: Vec::new(),
        coeffs,
    })
}

/// Solve the moment problem with one bound term.
///
/// For a fixed rate `beta` the system is square (bound node `y = c beta`
/// plus lattice nodes) and `F(0) = hw + sum c_n` turns out to be exactly
/// affine in `beta`; two trial solves therefore determine the unique rate
/// with `F(0) = -h`, and one final solve at that rate gives the expansion.
/// Trial rates default to `1/|c|` and `2/|c|`.
pub fn solve_one_bs(mu: &MomentSet, trials: Option<(f64, f64)>) -> Result<SpectralExpansion> {
    let p = mu.len();
    if p < 2 {
        return Err(Error::domain("one-bound-state solve needs at least two moments"));
    }
    let c = mu.c;
    let (t1, t2) = trials.unwrap_or((1.0 / c.abs(), 2.0 / c.abs()));
    if t1 <= 0.0 || t2 <= 0.0 || (t1 - t2).abs() < 1e-12 * t1.abs() {
        return Err(Error::domain("trial rates must be positive and distinct"));
    }
    let s1 = one_bs_f0(mu, adjust_trial(c, t1, p))?;
    let s2 = one_bs_f0(mu, adjust_trial(c, t2, p))?;
    let b1 = Dd::from_f64(adjust_trial(c, t1, p));
    let b2 = Dd::from_f64(adjust_trial(c, t2, p));
    let slope_den = s2.sub(s1);
    if slope_den.hi == 0.0 {
        return Err(Error::numerical(
            "moment-solver",
            "bound-state rate is indeterminate: F(0) does not depend on it",
        ));
    }
    // solve S(beta) = -h for the affine S
    let target = Dd::from_f64(-mu.h);
    let beta = b1.add(target.sub(s1).mul(b2.sub(b1)).div(slope_den));
    let (bound, coeffs) = one_bs_solve_at(mu, beta)?;
    let exp = SpectralExpansion {
        c,
        h: mu.h,
        k: mu.k,
        a: mu.a,
        n0: 0,
        bound,
        coeffs,
    };
    if (exp.f_zero() + mu.h).abs() > 1e-6 * mu.h.abs().max(1.0) {
        return Err(Error::numerical(
            "moment-solver",
            "one-bound-state closure failed: F(0) missed its target",
        ));
    }
    Ok(exp)
}

/// Nudge a trial rate off any node collision: the bound node `c beta` must
/// stay clear of the `x`-nodes `l + 1/2` (their sum enters the Cauchy
/// matrix) and, for negative rates, of the lattice nodes themselves.
fn adjust_trial(c: f64, mut beta: f64, p: usize) -> f64 {
    for _ in 0..16 {
        let node = beta * c.abs();
        let hits_x = (0..p).any(|l| (node - (l as f64 + 0.5)).abs() < 1e-6 * (1.0 + node.abs()));
        let hits_y = (0..p).any(|n| (node + n as f64).abs() < 1e-6 * (1.0 + node.abs()));
        if !hits_x && !hits_y {
            break;
        }
        beta *= 1.03;
    }
    beta
}

fn one_bs_f0(mu: &MomentSet, beta: f64) -> Result<Dd> {
    let (bound, coeffs) = one_bs_solve_at(mu, Dd::from_f64(beta))?;
    let mut s = bound[0].1;
    for cn in &coeffs {
        s = s.add(*cn);
    }
    Ok(s)
}

fn one_bs_solve_at(mu: &MomentSet, beta: Dd) -> Result<(Vec<(Dd, Dd)>, Vec<Dd>)> {
    let p = mu.len();
    let xs = x_nodes(p);
    let mut ys = Vec::with_capacity(p);
    ys.push(beta.mul_f64(mu.c));
    ys.extend(lattice_nodes(mu.c, 0, p - 1));
    let z = crate::exact::cauchy_solve_exact(&xs, &ys, mu.values_dd())?;
    let mut all: Vec<Dd> = z.into_iter().map(|zi| zi.div_f64(-mu.c)).collect();
    let coeffs = all.split_off(1);
    Ok((vec![(beta, all[0])], coeffs))
}

/// Options for the multi-bound-state solve.
#[derive(Debug, Clone, Copy)]
pub struct MultiBsOptions {
    /// Enforce `sum b_i + sum c_n = -h` with the full weights instead of the
    /// half weights.  The half-weight closure is the one consistent with
    /// `F(0) = -h` and is the default.
    pub literal_weights: bool,
    pub max_iter: usize,
    /// Target for the largest residual, relative to the largest moment.  The
    /// default is strict because the recovered coefficients inherit the
    /// conditioning of the system (roughly 1e5 by order ten), so a slack
    /// residual still means loose coefficients.  If the iteration stalls
    /// before the target it is accepted within `1e4 * tol` and rejected
    /// beyond that.
    pub tol: f64,
}

impl Default for MultiBsOptions {
    fn default() -> Self {
        MultiBsOptions {
            literal_weights: false,
            max_iter: 200,
            tol: 1e-15,
        }
    }
}

/// Solve the moment problem with `B >= 1` bound terms.
///
/// The rates enter the moment equations through simple poles, so a Newton
/// step on all variables at once is only trustworthy inside a tiny
/// neighbourhood of the current denominators.  Instead the linear variables
/// (weights and lattice coefficients) are eliminated at each candidate rate
/// vector by least squares over the full system (moment equations plus the
/// `F(0)` closure), and a Levenberg-Marquardt iteration drives the `B`
/// remaining rates against the projected residual.  `init_lambdas` supplies
/// `B` distinct negative starting positions, typically from
/// [`crate::bound_states`].
pub fn solve_multi_bs(
    mu: &MomentSet,
    init_lambdas: &[f64],
    opts: &MultiBsOptions,
) -> Result<SpectralExpansion> {
    let b = init_lambdas.len();
    let p = mu.len();
    if b == 0 {
        return Err(Error::domain("multi-bound-state solve needs at least one position"));
    }
    if p < 2 * b + 1 {
        return Err(Error::domain(format!(
            "{b} bound states need at least {} moments, have {p}",
            2 * b + 1
        )));
    }
    if init_lambdas.iter().any(|&l| !(l < 0.0)) {
        return Err(Error::domain("initial bound-state positions must be negative"));
    }
    for i in 0..b {
        for j in i + 1..b {
            if (init_lambdas[i] - init_lambdas[j]).abs() < 1e-6 {
                return Err(Error::domain("initial bound-state positions must be distinct"));
            }
        }
    }
    let ncoef = p - 2 * b + 1;
    let c = mu.c;
    let wrow = if opts.literal_weights { 2.0 } else { 1.0 };
    let mut betas: Vec<f64> = init_lambdas.iter().map(|&l| (-l).sqrt()).collect();
    if !rates_usable(c, &betas, p) {
        return Err(Error::domain(
            "initial bound-state positions collide with a lattice or matrix node",
        ));
    }

    let mu_scale = mu
        .values_dd()
        .iter()
        .map(|m| m.hi.abs())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let (mut r, mut hws, mut coeffs) = projected_residual(mu, &betas, ncoef, wrow)?;
    let mut lm = 1e-3f64;
    for _ in 0..opts.max_iter {
        let rmax = r.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if rmax <= opts.tol * mu_scale {
            let bd: Vec<Dd> = betas.iter().map(|&v| Dd::from_f64(v)).collect();
            return finish_multi(mu, bd, hws, coeffs);
        }
        // finite-difference Jacobian of the projected residual in the rates
        let mut jac = vec![vec![0.0f64; b]; p + 1];
        for j in 0..b {
            let hstep = 1e-6 * betas[j].abs().max(1.0);
            let mut bp = betas.clone();
            bp[j] += hstep;
            let mut bm = betas.clone();
            bm[j] -= hstep;
            let (rp, _, _) = projected_residual(mu, &bp, ncoef, wrow)?;
            let (rm, _, _) = projected_residual(mu, &bm, ncoef, wrow)?;
            for i in 0..=p {
                jac[i][j] = (rp[i] - rm[i]) / (2.0 * hstep);
            }
        }
        let mut jtj = vec![vec![0.0f64; b]; b];
        let mut jtr = vec![0.0f64; b];
        for i in 0..b {
            for j in 0..b {
                jtj[i][j] = jac.iter().map(|row| row[i] * row[j]).sum();
            }
            jtr[i] = jac.iter().zip(&r).map(|(row, v)| row[i] * v).sum();
        }
        let rnorm: f64 = r.iter().map(|v| v * v).sum();
        let mut moved = false;
        while lm < 1e12 {
            // damped normal equations (J^T J + lm diag) s = J^T r
            let mut m = nalgebra::DMatrix::zeros(b, b);
            for i in 0..b {
                for j in 0..b {
                    m[(i, j)] = jtj[i][j];
                }
                m[(i, i)] += lm * jtj[i][i].max(1e-300);
            }
            let rhs = nalgebra::DVector::from_column_slice(&jtr);
            let Some(step) = m.lu().solve(&rhs) else {
                lm *= 8.0;
                continue;
            };
            let trial: Vec<f64> = betas.iter().zip(step.iter()).map(|(v, s)| v - s).collect();
            if rates_usable(c, &trial, p) {
                if let Ok((rt, ht, ct)) = projected_residual(mu, &trial, ncoef, wrow) {
                    let tnorm: f64 = rt.iter().map(|v| v * v).sum();
                    if tnorm < rnorm {
                        betas = trial;
                        r = rt;
                        hws = ht;
                        coeffs = ct;
                        lm = (lm / 3.0).max(1e-12);
                        moved = true;
                        break;
                    }
                }
            }
            lm *= 8.0;
        }
        if !moved {
            let rmax = r.iter().map(|v| v.abs()).fold(0.0, f64::max);
            if rmax <= 1e4 * opts.tol * mu_scale {
                let bd: Vec<Dd> = betas.iter().map(|&v| Dd::from_f64(v)).collect();
                return finish_multi(mu, bd, hws, coeffs);
            }
            return Err(Error::numerical(
                "moment-solver",
                "bound-state iteration stalled (no descent step)",
            ));
        }
        // coalescence guard on the positions
        for i in 0..b {
            for j in i + 1..b {
                let li = -betas[i].powi(2);
                let lj = -betas[j].powi(2);
                if (li - lj).abs() < 1e-6 {
                    return Err(Error::numerical(
                        "moment-solver",
                        format!("bound-state positions coalesced near lambda = {li:.6}"),
                    ));
                }
            }
        }
        lm = lm.max(1e-12);
    }
    Err(Error::numerical(
        "moment-solver",
        format!("bound-state iteration did not converge in {} steps", opts.max_iter),
    ))
}

/// Eliminate the linear variables at fixed rates and return the residual of
/// the full system (moment equations, then the closure row), as `f64` for
/// the outer iteration, together with the eliminated weights and
/// coefficients.
fn projected_residual(
    mu: &MomentSet,
    betas: &[f64],
    ncoef: usize,
    wrow: f64,
) -> Result<(Vec<f64>, Vec<Dd>, Vec<Dd>)> {
    let bd: Vec<Dd> = betas.iter().map(|&v| Dd::from_f64(v)).collect();
    let (hws, coeffs) = linear_init(mu, &bd, ncoef, wrow)?;
    let r = residual(mu, &bd, &hws, &coeffs, wrow);
    Ok((r.iter().map(|v| v.to_f64()).collect(), hws, coeffs))
}

fn rates_usable(c: f64, betas: &[f64], p: usize) -> bool {
    // the matrix denominators nu_l + c*beta (positive rates can hit a
    // half-integer node) and, for negative rates, the bound node against the
    // lattice nodes -c*n must all stay clear of zero
    betas.iter().all(|&bf| {
        if !bf.is_finite() {
            return false;
        }
        let node = bf * c.abs();
        let clear_x = (0..p).all(|l| (node - (l as f64 + 0.5)).abs() > 1e-9 * (1.0 + node.abs()));
        let clear_y = (0..p).all(|n| (node + n as f64).abs() > 1e-9 * (1.0 + node.abs()));
        clear_x && clear_y
    })
}

fn residual(mu: &MomentSet, betas: &[Dd], hws: &[Dd], coeffs: &[Dd], wrow: f64) -> Vec<Dd> {
    let p = mu.len();
    let bound: Vec<(Dd, Dd)> = betas.iter().copied().zip(hws.iter().copied()).collect();
    let mut g = Vec::with_capacity(p + 1);
    for (l, m) in mu.values_dd().iter().enumerate() {
        g.push(forward_moment(mu.c, l, &bound, 0, coeffs).sub(*m));
    }
    let mut closure = Dd::from_f64(mu.h);
    for w in hws {
        closure = closure.add(w.mul_f64(wrow));
    }
    for cn in coeffs {
        closure = closure.add(*cn);
    }
    g.push(closure);
    g
}

fn linear_init(
    mu: &MomentSet,
    betas: &[Dd],
    ncoef: usize,
    wrow: f64,
) -> Result<(Vec<Dd>, Vec<Dd>)> {
    let b = betas.len();
    let p = mu.len();
    let cols = b + ncoef;
    let c = mu.c;
    let mut design = vec![vec![Dd::ZERO; cols]; p + 1];
    let mut rhs: Vec<Dd> = mu.values_dd().to_vec();
    rhs.push(Dd::from_f64(-mu.h));
    for l in 0..p {
        let nu = l as f64 + 0.5;
        for i in 0..b {
            design[l][i] = Dd::from_f64(-c).div(betas[i].mul_f64(c).add_f64(nu));
        }
        for n in 0..ncoef {
            design[l][b + n] = Dd::from_f64(-c).div(Dd::from_f64(-c).mul_f64(n as f64).add_f64(nu));
        }
    }
    for i in 0..b {
        design[p][i] = Dd::from_f64(wrow);
    }
    for n in 0..ncoef {
        design[p][b + n] = Dd::ONE;
    }
    // normal equations
    let mut ata = vec![vec![Dd::ZERO; cols]; cols];
    let mut atb = vec![Dd::ZERO; cols];
    for i in 0..cols {
        for j in 0..cols {
            let mut s = Dd::ZERO;
            for row in design.iter() {
                s = s.add(row[i].mul(row[j]));
            }
            ata[i][j] = s;
        }
        let mut s = Dd::ZERO;
        for (row, r) in design.iter().zip(&rhs) {
            s = s.add(row[i].mul(*r));
        }
        atb[i] = s;
    }
    let sol = dd::solve_linear(ata, atb).ok_or_else(|| {
        Error::numerical("moment-solver", "singular normal equations in initialization")
    })?;
    let (hws, coeffs) = sol.split_at(b);
    Ok((hws.to_vec(), coeffs.to_vec()))
}

fn finish_multi(
    mu: &MomentSet,
    betas: Vec<Dd>,
    hws: Vec<Dd>,
    coeffs: Vec<Dd>,
) -> Result<SpectralExpansion> {
    let mut bound: Vec<(Dd, Dd)> = betas.into_iter().zip(hws).collect();
    // ascending in lambda = -beta^2, i.e. deepest first
    bound.sort_by(|a, b| {
        let la = -a.0.to_f64().powi(2);
        let lb = -b.0.to_f64().powi(2);
        la.partial_cmp(&lb).unwrap()
    });
    Ok(SpectralExpansion {
        c: mu.c,
        h: mu.h,
        k: mu.k,
        a: mu.a,
        n0: 0,
        bound,
        coeffs,
    })
}
