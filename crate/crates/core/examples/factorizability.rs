//! Rank-one residual of a temperature x partition negativity grid.
//!
//! ```bash
//! cargo run --example factorizability
//! ```

use nalgebra::DMatrix;
use thermaneg::analysis::{negativity_matrix, rank1_residual, sweep, temperature_of, Model};
use thermaneg::lattice::{ModelSpec, Topology};
use thermaneg::partitions::Family;

fn main() -> thermaneg::Result<()> {
    let product = DMatrix::from_fn(3, 4, |i, j| (1.0 + i as f64) * (0.5 + j as f64).sqrt());
    println!("exact product grid: residual {:.3e}", rank1_residual(&product)?);

    let model = Model::build(ModelSpec::harmonic(Topology::RingNn, 128, 0.4))?;
    let temps = [2.5, 2.4, 2.0].map(|b| temperature_of(b).expect("positive beta"));
    let grid = sweep(&model, &temps, &Family::Blocks(None).generate(128, Topology::RingNn)?)?;
    let (t, ids, m) = negativity_matrix(&grid)?;
    println!("ring n=128, c=0.4, alternating blocks: T = {t:?}");
    println!("columns {ids:?}");
    println!("E_N{m:.4e}");
    println!("residual {:.6e}", rank1_residual(&m)?);
    Ok(())
}
