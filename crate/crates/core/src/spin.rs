//! Gibbs states of the spin-1/2 models, partial transposition and the
//! negativity `E_N = Σ_{λ<0} |λ|` of the partially transposed state.
//!
//! The model Hamiltonians are real and conserve the total magnetization, so
//! the Hamiltonian is diagonalized one magnetization sector at a time and the
//! density matrix is real symmetric. The partial transpose of such a state
//! conserves `M_B - M_A` (magnetizations of the untransposed and transposed
//! blocks), which is used to split its spectrum into independent blocks.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::gaussian::check_eigen_residual;
use crate::lattice::SpinHamiltonian;
use crate::partitions::Partition;
use crate::Negativity;

/// Eigenvalues of `ρ^{T_A}` below `-NEGATIVE_CUTOFF` count as negative.
pub const NEGATIVE_CUTOFF: f64 = 1e-12;

/// Relative energy window that defines the ground space at `T = 0`.
pub const GROUND_DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
struct Sector {
    indices: Vec<usize>,
    energies: DVector<f64>,
    vectors: DMatrix<f64>,
}

/// Eigendecomposition of a spin Hamiltonian, computed once and shared by
/// every temperature.
#[derive(Debug, Clone)]
pub struct SpinSpectrum {
    n: usize,
    sectors: Vec<Sector>,
    e_min: f64,
}

impl SpinSpectrum {
    pub fn new(hamiltonian: &SpinHamiltonian) -> Result<Self> {
        let n = hamiltonian.n();
        let h = hamiltonian.matrix();
        let dim = h.nrows();
        let mut by_ups: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for x in 0..dim {
            by_ups[x.count_ones() as usize].push(x);
        }
        for x in 0..dim {
            for y in 0..dim {
                if x.count_ones() != y.count_ones() && h[(x, y)] != 0.0 {
                    return Err(Error::InvalidModel(
                        "Hamiltonian does not conserve the total magnetization".into(),
                    ));
                }
            }
        }
        let mut sectors = Vec::with_capacity(n + 1);
        for indices in by_ups.into_iter().filter(|v| !v.is_empty()) {
            let k = indices.len();
            let block = DMatrix::from_fn(k, k, |a, b| h[(indices[a], indices[b])]);
            let block = (&block + block.transpose()) * 0.5;
            let eig = block.clone().symmetric_eigen();
            check_eigen_residual(&block, &eig.eigenvectors, &eig.eigenvalues)?;
            sectors.push(Sector {
                indices,
                energies: eig.eigenvalues,
                vectors: eig.eigenvectors,
            });
        }
        let e_min = sectors
            .iter()
            .flat_map(|s| s.energies.iter().copied())
            .fold(f64::INFINITY, f64::min);
        Ok(Self { n, sectors, e_min })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground_energy(&self) -> f64 {
        self.e_min
    }

    /// All eigenvalues, ascending.
    pub fn energies(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self
            .sectors
            .iter()
            .flat_map(|s| s.energies.iter().copied())
            .collect();
        e.sort_by(f64::total_cmp);
        e
    }

    /// `exp(-H/T)/Z`; at `T = 0` the uniform mixture over the ground space.
    pub fn thermal_state(&self, t: f64) -> Result<SpinThermalState> {
        if !(t >= 0.0) {
            return Err(Error::NegativeTemperature(t));
        }
        let ground_window = GROUND_DEGENERACY_TOL * self.e_min.abs().max(1.0);
        let weight = |e: f64| {
            if t == 0.0 {
                if e - self.e_min <= ground_window {
                    1.0
                } else {
                    0.0
                }
            } else {
                (-(e - self.e_min) / t).exp()
            }
        };
        let weights: Vec<DVector<f64>> = self
            .sectors
            .iter()
            .map(|s| s.energies.map(weight))
            .collect();
        let z: f64 = weights.iter().map(|w| w.sum()).sum();

        let dim = 1usize << self.n;
        let mut rho = DMatrix::zeros(dim, dim);
        for (sector, w) in self.sectors.iter().zip(&weights) {
            let mut scaled = sector.vectors.clone();
            for (k, mut col) in scaled.column_iter_mut().enumerate() {
                col *= w[k] / z;
            }
            let block = scaled * sector.vectors.transpose();
            let idx = &sector.indices;
            for (a, &x) in idx.iter().enumerate() {
                for (b, &y) in idx.iter().enumerate() {
                    rho[(x, y)] = 0.5 * (block[(a, b)] + block[(b, a)]);
                }
            }
        }
        Ok(SpinThermalState {
            rho,
            n: self.n,
            temperature: Some(t),
            conserves_magnetization: true,
        })
    }
}

/// Real symmetric density matrix of `n` spins.
#[derive(Debug, Clone)]
pub struct SpinThermalState {
    rho: DMatrix<f64>,
    n: usize,
    temperature: Option<f64>,
    conserves_magnetization: bool,
}

impl SpinThermalState {
    /// Wraps an arbitrary real density matrix of dimension `2^n`.
    pub fn from_matrix(rho: DMatrix<f64>) -> Result<Self> {
        let dim = rho.nrows();
        if !rho.is_square() || !dim.is_power_of_two() || dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "density matrix must be 2^n x 2^n, got {}x{}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let n = dim.trailing_zeros() as usize;
        let conserves = (0..dim).all(|x| {
            (0..dim).all(|y| x.count_ones() == y.count_ones() || rho[(x, y)] == 0.0)
        });
        Ok(Self {
            rho,
            n,
            temperature: None,
            conserves_magnetization: conserves,
        })
    }

    pub fn rho(&self) -> &DMatrix<f64> {
        &self.rho
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn temperature(&self) -> Option<f64> {
        self.temperature
    }
}

pub fn thermal_state(hamiltonian: &SpinHamiltonian, t: f64) -> Result<SpinThermalState> {
    SpinSpectrum::new(hamiltonian)?.thermal_state(t)
}

/// Bit mask of the `+1` sites of a partition in the basis index.
fn transposed_mask(partition: &Partition) -> usize {
    let n = partition.n();
    partition
        .plus_sites()
        .fold(0, |acc, i| acc | crate::lattice::site_bit(n, i))
}

fn check_size(dim: usize, partition: &Partition) -> Result<()> {
    if partition.n() >= usize::BITS as usize || dim != 1usize << partition.n() {
        return Err(Error::InvalidPartition(format!(
            "partition over {} sites does not match a matrix of dimension {dim}",
            partition.n()
        )));
    }
    Ok(())
}

/// Transposes the tensor indices of every site labeled `+1`.
pub fn partial_transpose(rho: &DMatrix<f64>, partition: &Partition) -> Result<DMatrix<f64>> {
    check_size(rho.nrows(), partition)?;
    let mask = transposed_mask(partition);
    let dim = rho.nrows();
    Ok(DMatrix::from_fn(dim, dim, |x, y| {
        let swap = (x ^ y) & mask;
        rho[(x ^ swap, y ^ swap)]
    }))
}

/// Spectrum of `ρ^{T_A}` (unsorted).
pub fn pt_spectrum(state: &SpinThermalState, partition: &Partition) -> Result<Vec<f64>> {
    check_size(state.rho.nrows(), partition)?;
    if !state.conserves_magnetization {
        let pt = partial_transpose(&state.rho, partition)?;
        return Ok(pt.symmetric_eigenvalues().iter().copied().collect());
    }
    let mask = transposed_mask(partition);
    let dim = state.rho.nrows();
    let n = state.n as i64;
    // charge M_B - M_A, shifted to be non-negative
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); 2 * n as usize + 1];
    for x in 0..dim {
        let a = (x & mask).count_ones() as i64;
        let b = (x & !mask).count_ones() as i64;
        groups[(b - a + n) as usize].push(x);
    }
    let rho = &state.rho;
    let mut out = Vec::with_capacity(dim);
    for idx in groups.into_iter().filter(|g| !g.is_empty()) {
        let k = idx.len();
        let block = DMatrix::from_fn(k, k, |a, b| {
            let (x, y) = (idx[a], idx[b]);
            let swap = (x ^ y) & mask;
            rho[(x ^ swap, y ^ swap)]
        });
        if k == 1 {
            out.push(block[(0, 0)]);
        } else {
            out.extend(block.symmetric_eigenvalues().iter().copied());
        }
    }
    Ok(out)
}

/// `E_N` summed over eigenvalues of `ρ^{T_A}` below the noise cutoff, and
/// `E_l = log2(1 + E_N)`.
pub fn negativity(state: &SpinThermalState, partition: &Partition) -> Result<Negativity> {
    let e_n: f64 = pt_spectrum(state, partition)?
        .iter()
        .filter(|&&l| l < -NEGATIVE_CUTOFF)
        .map(|l| -l)
        .sum();
    Ok(Negativity::from_linear(e_n))
}
