//! Coupling matrices of the harmonic ring and star, and the XX spin
//! Hamiltonian's spectrum.
//!
//! ```bash
//! cargo run --example lattice_potentials
//! ```

use std::f64::consts::PI;

use thermaneg::lattice::{build_potential, build_spin_hamiltonian, ModelSpec, Topology};
use thermaneg::spin::SpinSpectrum;

fn main() -> thermaneg::Result<()> {
    let (n, c) = (8, 0.4);
    let ring = build_potential(&ModelSpec::harmonic(Topology::RingNn, n, c))?;
    let mut eig: Vec<f64> = ring.matrix().clone().symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    let mut circulant: Vec<f64> = (0..n).map(|k| 1.0 - 2.0 * c * (2.0 * PI * k as f64 / n as f64).cos()).collect();
    circulant.sort_by(f64::total_cmp);
    println!("ring n={n}, c={c}");
    println!("  first row      {:?}", ring.matrix().row(0).iter().collect::<Vec<_>>());
    for (a, b) in eig.iter().zip(&circulant) {
        println!("  eigenvalue {a:.12}   1 - 2c cos(2 pi k/n) = {b:.12}");
    }

    let star = build_potential(&ModelSpec::harmonic(Topology::Star, 5, 1.0))?;
    println!("\nstar n=5, c=1\n{}", star.matrix());

    let h = build_spin_hamiltonian(&ModelSpec::spin(Topology::RingNn, 2, 0.0))?;
    println!("two-spin XX Hamiltonian\n{}", h.matrix());
    let spectrum = SpinSpectrum::new(&build_spin_hamiltonian(&ModelSpec::spin(Topology::Star, 6, 0.5))?)?;
    println!("spin star n=6, h=0.5: ground energy {:.10}", spectrum.ground_energy());
    Ok(())
}
