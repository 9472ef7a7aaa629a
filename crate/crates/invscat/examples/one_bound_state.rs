//! A well deep enough that the transformed problem carries one bound state.
//!
//! The moment problem then has one nonlinear unknown, the decay rate of the
//! bound term.  The solver pins it from two linear solves at trial rates
//! (the closure sum F(0) is affine in the rate) plus a secant polish, and
//! the assessment module predicts the same position from (kappa*a, c, h)
//! alone -- two routes to one number.

use invscat::bound_states;
use invscat::gl::{self, GlOptions};
use invscat::liouville::TransformParams;
use invscat::moments;
use invscat::spectral;

fn main() -> invscat::Result<()> {
    // flat well q = 0.8 on (0, 2], k = 1, standard map (c, h) = (-1, 0)
    let (c0, a, k) = (0.8, 2.0, 1.0);
    let (c, h) = (-1.0, 0.0);
    let mu = spectral::constant_well_moments(c0, a, k, c, h, 11)?;

    let exp = moments::solve_one_bs(&mu, None)?;
    println!("fitted:   lambda = {:.8}, weight = {:.8}", exp.lambdas()[0], exp.bound_weights()[0]);
    println!("closure residual F(0) + h = {:.2e}", exp.f0_residual());

    // the auxiliary operator for a flat well is an exponential well, so the
    // assessment with kappa^2 = k^2 - q0 is exact, not an estimate
    let kappa_a = (k * k - c0).sqrt() * a;
    let assessed = bound_states::bound_state_positions(kappa_a, c, h)?;
    let lam = assessed[assessed.len() - 1];
    println!("assessed: lambda = {:.8}, weight = {:.8}", lam, bound_states::step_height(kappa_a, c, h, lam)?);

    let params = TransformParams::new(a, c, k)?;
    let rec = gl::reconstruct(&exp, &GlOptions::for_transform(&params))?;
    let dev = rec
        .curve
        .grid
        .iter()
        .zip(&rec.curve.values)
        .filter(|(r, _)| (0.5..=2.0).contains(*r))
        .map(|(_, q)| (q - c0).abs())
        .fold(0.0f64, f64::max);
    println!("max |q - 0.8| on [0.5, 2] = {dev:.1e}");
    Ok(())
}
