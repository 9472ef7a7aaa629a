//! Inversion of measured phase shifts read from files, with the results
//! converted back to physical units.
//!
//! Two data sets ship with the crate: electron-argon at 12 eV (atomic units,
//! where the radial equation gives q = 2V) and neutron-alpha at 9.6 MeV
//! (spin-split rows that the parser folds into spin-averaged phases;
//! V = q * hbar^2 / 2m in MeV for the n-alpha reduced mass).

use std::path::Path;

use invscat::io::{self, InversionConfig};
use invscat::liouville::PotentialCurve;

fn deepest(curve: &PotentialCurve) -> (f64, f64) {
    curve
        .grid
        .iter()
        .zip(&curve.values)
        .fold((0.0, f64::INFINITY), |acc, (&r, &q)| {
            if q < acc.1 {
                (r, q)
            } else {
                acc
            }
        })
}

fn main() -> invscat::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");

    let set = io::parse_phase_file(&data.join("e_ar.phases"))?;
    println!("electron-argon: k = {}, a = {}, {} waves", set.k, set.a, set.deltas.len());
    let cfg = InversionConfig {
        c: -3.70,
        h: 1.9,
        ..InversionConfig::default()
    };
    let out = io::run_inversion(&set, &cfg)?;
    println!("  bound state lambda = {:.6}", out.expansion.lambdas()[0]);
    let (r, q) = deepest(&out.reconstruction.curve);
    println!("  V = q/2 has its minimum {:.4} hartree at r = {:.3} bohr", q / 2.0, r);

    let set = io::parse_phase_file(&data.join("n_alpha_9.6mev.phases"))?;
    println!();
    println!(
        "neutron-alpha: k = {}, a = {}, spin-averaged phases {:?}",
        set.k, set.a, set.deltas
    );
    let cfg = InversionConfig {
        c: -4.25,
        ..InversionConfig::default()
    };
    let out = io::run_inversion(&set, &cfg)?;
    println!("  bound state lambda = {:.6}", out.expansion.lambdas()[0]);
    // hbar^2 / (2 mu) for the n-alpha reduced mass, MeV fm^2
    let v_scale = 25.944477334819986;
    let (r, q) = deepest(&out.reconstruction.curve);
    println!("  V has its minimum {:.2} MeV at r = {:.3} fm", v_scale * q, r);
    Ok(())
}
