//! Compute phase shifts for the three built-in well shapes and print them in
//! the phase-file format that the inversion side reads back.
//!
//! For the flat well the integrator is checked against the closed-form
//! Bessel-ratio value wave by wave.

use invscat::forward::{self, RadialPotential};
use invscat::io;

fn main() -> invscat::Result<()> {
    let k = 1.0;

    let flat = RadialPotential::constant(1.2, 2.0)?;
    let solved = forward::solve_phase_shifts(&flat, k, 10, 1e-10)?;
    println!("flat well q = 1.2 on (0, 2], k = 1");
    println!("{:>3} {:>22} {:>22} {:>10}", "l", "integrated", "closed form", "diff");
    for (l, &d) in solved.deltas.iter().enumerate() {
        let exact = forward::constant_well_phase_shift(1.2, 2.0, k, l as u32)?;
        println!("{l:>3} {d:>22.15} {exact:>22.15} {:>10.1e}", d - exact);
    }

    let gauss = RadialPotential::gauss(-4.0, 5.0, 1.5)?;
    let gauss_set = forward::solve_phase_shifts(&gauss, 1.5, 6, 1e-10)?;
    println!();
    println!("Gaussian well -4 exp(-5 r^2) on (0, 1.5], as a phase file:");
    print!("{}", io::render_phase_file(&gauss_set));

    let ws = RadialPotential::woods_saxon(-4.0, 0.5, 0.1, 2.0)?;
    let ws_set = forward::solve_phase_shifts(&ws, 1.5, 3, 1e-10)?;
    println!();
    println!("Woods-Saxon well -4 / (1 + exp((r - 0.5)/0.1)) on (0, 2]:");
    print!("{}", io::render_phase_file(&ws_set));
    Ok(())
}
