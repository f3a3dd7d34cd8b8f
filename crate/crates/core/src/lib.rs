//! Thermal-state entanglement of harmonic and spin-1/2 many-body models on
//! ring and star topologies.
//!
//! The crate builds Gibbs states of quadratic oscillator Hamiltonians
//! (through their covariance matrices) and of XX spin models (through exact
//! diagonalization), evaluates bipartite negativities across families of
//! partitions, locates the temperatures at which each partition becomes PPT,
//! and reports the temperature windows in which some cuts are PPT while
//! others remain entangled.
//!
//! Module map:
//!
//! - [`lattice`]: potentials `V` and spin Hamiltonians for rings and stars
//! - [`partitions`]: bipartition families and boundary areas
//! - [`gaussian`]: thermal covariance matrices and log-negativity
//! - [`spin`]: spin Gibbs states, partial transposition, negativity
//! - [`analysis`]: sweeps, threshold temperatures, windows, area-law diagnostics
//! - [`cli`]: config files, presets and CSV output behind the `thermaneg` binary

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod error;
pub mod gaussian;
pub mod lattice;
pub mod partitions;
pub mod spin;

pub use error::{Error, Result};

/// A partition is declared PPT when its negativity `E_N` is below this value.
pub const EPS_PPT: f64 = 1e-10;

/// Negativity `E_N` and log-negativity `E_l = log2(1 + E_N)` of one cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Negativity {
    pub e_n: f64,
    pub e_l: f64,
}

impl Negativity {
    pub fn from_linear(e_n: f64) -> Self {
        // `+ 0.0` turns an empty-sum `-0.0` into `0.0`
        let e_n = e_n + 0.0;
        Self {
            e_n,
            e_l: e_n.ln_1p() / std::f64::consts::LN_2,
        }
    }

    pub fn from_log(e_l: f64) -> Self {
        let e_l = e_l + 0.0;
        Self {
            e_n: (e_l * std::f64::consts::LN_2).exp_m1(),
            e_l,
        }
    }

    pub fn is_ppt(&self) -> bool {
        self.e_n < EPS_PPT
    }
}
