//! Log-negativity of harmonic thermal states through the spectral route and
//! the symplectic cross-check.
//!
//! ```bash
//! cargo run --example gaussian_log_negativity
//! ```

use thermaneg::gaussian::{log_negativity_symplectic_oracle, HarmonicSystem};
use thermaneg::lattice::{build_potential, ModelSpec, Topology};
use thermaneg::partitions::{even_odd, half_half};

fn main() -> thermaneg::Result<()> {
    let c: f64 = 0.4;
    let two = build_potential(&ModelSpec::harmonic(Topology::RingNn, 2, c))?;
    let e_l = HarmonicSystem::new(&two)?.log_negativity(0.0, &half_half(2, Topology::RingNn)?)?;
    println!("two sites, T=0: E_l = {e_l:.10}, closed form {:.10}", 0.5 * ((1.0 + c) / (1.0 - c)).log2());

    let n = 16;
    let potential = build_potential(&ModelSpec::harmonic(Topology::RingNn, n, c))?;
    let system = HarmonicSystem::new(&potential)?;
    println!("\nring n={n}, c={c}");
    println!("{:>6} {:>10} {:>14} {:>14} {:>10}", "T", "cut", "spectral E_l", "oracle E_l", "E_N");
    for t in [0.0, 0.2, 0.4, 0.45, 0.5, 0.55] {
        for p in [even_odd(n, Topology::RingNn)?, half_half(n, Topology::RingNn)?] {
            let neg = system.negativity(t, &p)?;
            let oracle = log_negativity_symplectic_oracle(&potential, t, &p)?;
            println!("{t:>6} {:>10} {:>14.10} {oracle:>14.10} {:>10.4e}", p.id(), neg.e_l, neg.e_n);
        }
    }
    Ok(())
}
