//! Temperature windows in which a certificate cut is PPT while a witness
//! cut is still entangled.
//!
//! ```bash
//! cargo run --example bound_entanglement_window
//! ```

use thermaneg::analysis::{bound_entanglement_window, Model, ThresholdOptions};
use thermaneg::lattice::{ModelSpec, Topology};
use thermaneg::partitions::{central_vs_rest, even_odd, half_half};

fn main() -> thermaneg::Result<()> {
    let opts = ThresholdOptions::default();
    let cases = [
        (ModelSpec::harmonic(Topology::RingNn, 16, 0.4), even_odd(16, Topology::RingNn)?),
        (ModelSpec::harmonic(Topology::RingNn, 16, 0.0), even_odd(16, Topology::RingNn)?),
        (ModelSpec::harmonic(Topology::Star, 8, 1.0), central_vs_rest(8, Topology::Star)?),
        (ModelSpec::spin(Topology::Star, 6, 0.0), central_vs_rest(6, Topology::Star)?),
    ];
    for (spec, witness) in cases {
        let model = Model::build(spec)?;
        let certificate = half_half(spec.n_sites, spec.topology)?;
        let w = bound_entanglement_window(&model, &certificate, &witness, &opts)?;
        match w.window {
            Some((lo, hi)) => println!(
                "{spec}: {} PPT, {} entangled for {lo:.6} < T < {hi:.6}{}",
                w.certificate_id,
                w.witness_id,
                if w.swapped { " (roles swapped)" } else { "" }
            ),
            None => println!("{spec}: no window"),
        }
        if let Some(note) = w.note {
            println!("    note: {note}");
        }
    }
    Ok(())
}
