//! Negativity of spin-1/2 XX Gibbs states: the two-qubit Bell ground state
//! and a transfer sweep on a ten-site ring.
//!
//! ```bash
//! cargo run --example spin_thermal_negativity
//! ```

use thermaneg::analysis::{sweep, Model};
use thermaneg::lattice::{ModelSpec, Topology};
use thermaneg::partitions::{half_half, Family};

fn main() -> thermaneg::Result<()> {
    let pair = Model::build(ModelSpec::spin(Topology::RingNn, 2, 0.0))?;
    let e_n = pair.negativity(0.0, &half_half(2, Topology::RingNn)?)?.e_n;
    println!("two spins, T=0: E_N = {e_n:.12}");

    let ring = Model::build(ModelSpec::spin(Topology::RingNn, 10, 1.9))?;
    let parts = Family::TransferReverse.generate(10, Topology::RingNn)?;
    let grid = sweep(&ring, &[3.0, 3.15, 3.25], &parts)?;
    println!("\nring n=10, h=1.9");
    for r in &grid.rows {
        let neg = r.outcome.as_ref().expect("cell evaluated");
        println!(
            "  T={:<5} {:<11} area {:>2}  E_N = {:.6e}  {}",
            r.temperature,
            r.partition_id,
            r.area,
            neg.e_n,
            if neg.is_ppt() { "PPT" } else { "NPT" }
        );
    }
    Ok(())
}
