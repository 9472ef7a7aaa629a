//! Tour of the bound-state assessment: how many bound states the transformed
//! problem carries, where they sit, and when a multi-state configuration can
//! be traded for a single-state one by raising the boundary parameter h.
//!
//! Everything here depends only on (kappa*a, c, h) -- no phase shifts, no
//! moment solve.

use invscat::bound_states::{self, Reducibility};

fn main() -> invscat::Result<()> {
    println!("sector boundaries in kappa*a (h = 0):");
    for (i, b) in bound_states::sector_boundaries(4)?.iter().enumerate() {
        println!("  {} state(s) appear at kappa*a = {b:.10}", i + 1);
    }

    println!();
    println!("{:>8} {:>7}", "kappa*a", "count");
    for ka in [1.0, 4.0, 7.5, 11.0, 14.0] {
        println!("{ka:>8.1} {:>7}", bound_states::count_bound_states_h0(ka)?);
    }

    let (kappa_a, c) = (4.92, -1.5);
    println!();
    println!("positions at kappa*a = {kappa_a}, c = {c}, shallowest first:");
    for h in [0.0, 5.0] {
        let pos = bound_states::bound_state_positions(kappa_a, c, h)?;
        println!("  h = {h}:");
        for lam in &pos {
            match bound_states::step_height(kappa_a, c, h, *lam) {
                Ok(b) => println!("    lambda = {lam:>13.8}, step height = {b:.8}"),
                Err(why) => println!("    lambda = {lam:>13.8} ({why})"),
            }
        }
    }

    println!();
    for ka in [2.0, 4.92, 9.0] {
        let verdict = match bound_states::reducibility_window(ka)? {
            Reducibility::AlreadyOne => "one bound state to begin with",
            Reducibility::ReducibleToOne => "reducible to one state by raising h",
            Reducibility::OutsideLemma => "beyond the guaranteed reduction window",
        };
        println!("kappa*a = {ka:>5}: {verdict}");
    }
    Ok(())
}
