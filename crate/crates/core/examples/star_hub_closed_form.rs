//! Hub-versus-rest negativity of the harmonic star at zero temperature:
//! full covariance against the single-mode closed form, and its decay with
//! the number of oscillators.
//!
//! ```bash
//! cargo run --example star_hub_closed_form
//! ```

use thermaneg::gaussian::{
    min_symplectic_negativity, single_mode_negativity, star_macroscopic_limit_trend, star_reduced_closed_form,
    thermal_covariance,
};
use thermaneg::lattice::{build_star_potential, Topology};
use thermaneg::partitions::central_vs_rest;

fn main() -> thermaneg::Result<()> {
    let c = 1.0;
    println!("{:>5} {:>14} {:>14} {:>14}", "n", "Delta", "E_N closed", "E_N full");
    for n in [3, 4, 6, 10, 20] {
        let (a, b) = star_reduced_closed_form(n, c)?;
        let closed = single_mode_negativity(a * b)?;
        let state = thermal_covariance(&build_star_potential(n, c)?, 0.0)?;
        let full = min_symplectic_negativity(&state, &central_vs_rest(n, Topology::Star)?)?;
        println!("{n:>5} {:>14.10} {:>14.10} {:>14.10}", a * b, closed.e_n, full.e_n);
    }
    println!("\nlarge-n trend (c = 1)");
    for row in star_macroscopic_limit_trend(c, &[10, 100, 1_000, 10_000, 100_000, 1_000_000])? {
        println!("{:>9} E_N = {:.6}", row.n, row.e_n);
    }
    Ok(())
}
