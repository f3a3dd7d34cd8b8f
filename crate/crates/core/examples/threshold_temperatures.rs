//! Temperatures at which individual cuts become PPT.
//!
//! ```bash
//! cargo run --example threshold_temperatures
//! ```

use thermaneg::analysis::{threshold_temperature, Model, ThresholdOptions};
use thermaneg::lattice::{ModelSpec, Topology};
use thermaneg::partitions::{central_vs_rest, even_odd, half_half, single_external_vs_rest};

fn main() -> thermaneg::Result<()> {
    let opts = ThresholdOptions::default();
    for n in [8, 16, 32] {
        let model = Model::build(ModelSpec::harmonic(Topology::RingNn, n, 0.4))?;
        for p in [even_odd(n, Topology::RingNn)?, half_half(n, Topology::RingNn)?] {
            let r = threshold_temperature(&model, &p, &opts)?;
            println!(
                "harmonic ring n={n:<3} {:<10} T_th = {:.8}  bracket [{:.8}, {:.8}]  {} evaluations",
                r.partition_id, r.t_th, r.bracket.0, r.bracket.1, r.evaluations
            );
        }
    }
    for n in [4, 6, 8] {
        let model = Model::build(ModelSpec::spin(Topology::Star, n, 0.0))?;
        for p in [central_vs_rest(n, Topology::Star)?, single_external_vs_rest(n, 2, Topology::Star)?] {
            let r = threshold_temperature(&model, &p, &opts)?;
            println!("spin star n={n:<3} {:<10} T_th = {:.8}", r.partition_id, r.t_th);
        }
    }
    Ok(())
}
