//! Threshold gaps between two cuts as the system grows: constant on the
//! ring, size-dependent on the star.
//!
//! ```bash
//! cargo run --example size_scaling
//! ```

use thermaneg::analysis::{type2_gap_table, GapTable, ThresholdOptions};
use thermaneg::lattice::{ModelSpec, Topology};
use thermaneg::partitions::Family;

fn print(table: &GapTable) {
    println!("{} vs {} on {} {}", table.certificate_id, table.witness_id, table.base.kind, table.base.topology);
    for r in &table.rows {
        println!(
            "  n={:<4} T_th {:.6} / {:.6}  gap {:.6}",
            r.n, r.t_th_certificate, r.t_th_witness, r.gap
        );
    }
    println!("  max relative deviation of the gap: {:.4}", table.max_relative_deviation);
}

fn main() -> thermaneg::Result<()> {
    let opts = ThresholdOptions { tol: 1e-5, ..Default::default() };
    let ring = type2_gap_table(
        ModelSpec::harmonic(Topology::RingNn, 8, 0.4),
        &[8, 16, 32, 64],
        &Family::HalfHalf,
        &Family::EvenOdd,
        &opts,
    )?;
    print(&ring);
    let star = type2_gap_table(
        ModelSpec::harmonic(Topology::Star, 4, 1.0),
        &[4, 6, 8, 12, 16],
        &Family::HalfHalf,
        &Family::Central,
        &opts,
    )?;
    print(&star);
    Ok(())
}
