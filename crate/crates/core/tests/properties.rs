//! Property checks across the public API.

use proptest::prelude::*;

use thermaneg::analysis::{threshold_temperature, Model, ThresholdOptions};
use thermaneg::gaussian::{log_negativity_symplectic_oracle, HarmonicSystem};
use thermaneg::lattice::{build_potential, ModelSpec, Topology};
use thermaneg::partitions::{self, Family, Partition};
use thermaneg::spin;

fn families(n: usize, topology: Topology) -> Vec<Partition> {
    [
        Family::EvenOdd,
        Family::HalfHalf,
        Family::Blocks(None),
        Family::Transfer,
        Family::Central,
        Family::External(None),
    ]
    .iter()
    .filter_map(|f| f.generate(n, topology).ok())
    .flatten()
    .collect()
}

fn topology() -> impl Strategy<Value = Topology> {
    prop_oneof![Just(Topology::RingNn), Just(Topology::Star)]
}

fn harmonic_spec() -> impl Strategy<Value = ModelSpec> {
    (topology(), 2usize..=10, 0.0f64..1.0).prop_map(|(t, n, u)| {
        let c = match t {
            Topology::RingNn => 0.49 * u,
            Topology::Star => 0.05 + 2.95 * u,
        };
        ModelSpec::harmonic(t, n, c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_complement_symmetry(spec in harmonic_spec(), t in prop_oneof![Just(0.0), 0.02f64..5.0], pick in any::<prop::sample::Index>()) {
        let system = HarmonicSystem::new(&build_potential(&spec).unwrap()).unwrap();
        let parts = families(spec.n_sites, spec.topology);
        let p = pick.get(&parts);
        let a = system.log_negativity(t, p).unwrap();
        let b = system.log_negativity(t, &p.negated()).unwrap();
        prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    #[test]
    fn gaussian_ring_rotation_invariance(n in 3usize..=12, c in 0.0f64..0.49, t in 0.02f64..3.0, shift in 1usize..12, pick in any::<prop::sample::Index>()) {
        let spec = ModelSpec::harmonic(Topology::RingNn, n, c);
        let system = HarmonicSystem::new(&build_potential(&spec).unwrap()).unwrap();
        let parts = families(n, Topology::RingNn);
        let p = pick.get(&parts);
        let a = system.log_negativity(t, p).unwrap();
        let b = system.log_negativity(t, &p.rotated(shift % n).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    #[test]
    fn gaussian_negativity_decreases_with_temperature(spec in harmonic_spec(), t in 0.02f64..3.0, dt in 0.01f64..1.0, pick in any::<prop::sample::Index>()) {
        let system = HarmonicSystem::new(&build_potential(&spec).unwrap()).unwrap();
        let parts = families(spec.n_sites, spec.topology);
        let p = pick.get(&parts);
        let cold = system.log_negativity(t, p).unwrap();
        let hot = system.log_negativity(t + dt, p).unwrap();
        prop_assert!(hot <= cold + 1e-9, "E_l({}) = {hot} > E_l({t}) = {cold}", t + dt);
    }

    #[test]
    fn gaussian_routes_agree(spec in harmonic_spec(), t in prop_oneof![Just(0.0), 0.05f64..5.0], pick in any::<prop::sample::Index>()) {
        let potential = build_potential(&spec).unwrap();
        let parts = families(spec.n_sites, spec.topology);
        let p = pick.get(&parts);
        let a = HarmonicSystem::new(&potential).unwrap().log_negativity(t, p).unwrap();
        let b = log_negativity_symplectic_oracle(&potential, t, p).unwrap();
        prop_assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spin_complement_symmetry(top in topology(), n in 2usize..=7, h in -2.0f64..2.0, t in prop_oneof![Just(0.0), 0.1f64..4.0], pick in any::<prop::sample::Index>()) {
        let model = Model::build(ModelSpec::spin(top, n, h)).unwrap();
        let parts = families(n, top);
        let p = pick.get(&parts);
        let a = model.negativity(t, p).unwrap().e_n;
        let b = model.negativity(t, &p.negated()).unwrap().e_n;
        prop_assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn spin_ring_rotation_invariance(n in 3usize..=8, h in -2.0f64..2.0, t in 0.1f64..4.0, shift in 1usize..8, pick in any::<prop::sample::Index>()) {
        let model = Model::build(ModelSpec::spin(Topology::RingNn, n, h)).unwrap();
        let parts = families(n, Topology::RingNn);
        let p = pick.get(&parts);
        let a = model.negativity(t, p).unwrap().e_n;
        let b = model.negativity(t, &p.rotated(shift % n).unwrap()).unwrap().e_n;
        prop_assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn spin_partial_transpose_preserves_trace(top in topology(), n in 2usize..=6, h in -2.0f64..2.0, t in 0.1f64..4.0, pick in any::<prop::sample::Index>()) {
        let model = Model::build(ModelSpec::spin(top, n, h)).unwrap();
        let parts = families(n, top);
        let p = pick.get(&parts);
        let h_mat = thermaneg::lattice::build_spin_hamiltonian(model.spec()).unwrap();
        let state = spin::thermal_state(&h_mat, t).unwrap();
        let pt = spin::partial_transpose(state.rho(), p).unwrap();
        prop_assert!((pt.trace() - 1.0).abs() < 1e-12);
        let spectrum = spin::pt_spectrum(&state, p).unwrap();
        prop_assert!((spectrum.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        let neg: f64 = spectrum.iter().filter(|&&l| l < 0.0).map(|l| -l).sum();
        let direct = model.negativity(t, p).unwrap().e_n;
        prop_assert!((neg - direct).abs() < 1e-10);
    }
}

#[test]
fn star_hub_entries_are_permutation_invariant() {
    // relabelling outer sites leaves every single-external cut equal
    for n in [4, 6, 9] {
        let model = Model::build(ModelSpec::harmonic(Topology::Star, n, 1.0)).unwrap();
        let values: Vec<f64> = (2..=n)
            .map(|s| {
                let p = partitions::single_external_vs_rest(n, s, Topology::Star).unwrap();
                model.negativity(0.7, &p).unwrap().e_l
            })
            .collect();
        for v in &values {
            assert!((v - values[0]).abs() < 1e-10, "{values:?}");
        }
    }
}

#[test]
fn thresholds_are_bit_reproducible() {
    let model = Model::build(ModelSpec::harmonic(Topology::Star, 8, 1.0)).unwrap();
    let p = partitions::central_vs_rest(8, Topology::Star).unwrap();
    let opts = ThresholdOptions::default();
    let a = threshold_temperature(&model, &p, &opts).unwrap();
    let b = threshold_temperature(&model, &p, &opts).unwrap();
    assert_eq!(a, b);
    assert!(model.negativity(a.bracket.0, &p).unwrap().e_n >= thermaneg::EPS_PPT);
    assert!(model.negativity(a.bracket.1, &p).unwrap().e_n < thermaneg::EPS_PPT);
}

#[test]
fn spin_sector_eigensolver_regression() {
    // a sector of this ring once came back with an eigen-residual of 1e-2
    let model = Model::build(ModelSpec::spin(Topology::RingNn, 7, -0.621442726079094)).unwrap();
    let p = partitions::single_external_vs_rest(7, 2, Topology::RingNn).unwrap();
    let t = 0.7084469368952757;
    let base = model.negativity(t, &p).unwrap().e_n;
    for shift in 1..7 {
        let v = model.negativity(t, &p.rotated(shift).unwrap()).unwrap().e_n;
        assert!((v - base).abs() < 1e-12, "shift {shift}: {v} vs {base}");
    }
}
