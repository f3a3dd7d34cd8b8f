//! Thermal covariance matrices of quadratic Hamiltonians and their
//! bipartite log-negativity.
//!
//! Two routes are provided. [`HarmonicSystem::log_negativity`] evaluates
//! `E_l = Σ_k log2 max(1, λ_k(Q))` with `Q = P ω⁻ P ω⁺`,
//! `ω^± = W(T)⁻¹ V^{±1/2}`, from a general real eigensolver.
//! [`log_negativity_symplectic_oracle`] flips the momentum sign on the `+1`
//! block of the covariance and reads the partially transposed symplectic
//! eigenvalues `ν̃` directly. The eigenvalues of `Q` are `ν̃⁻²`, so the oracle
//! reports `Σ max(0, -log2 ν̃²)` to stay on the same normalization.
//!
//! The single-mode formula used for the star hub ([`single_mode_negativity`])
//! works with `ν` itself: `E_N = (1 - ν)/ν`, `E_l = -log2 ν`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lattice::PotentialMatrix;
use crate::partitions::Partition;
use crate::Negativity;

/// Relative size of imaginary parts of `eig(Q)` tolerated before the
/// computation is declared broken.
pub const IMAG_TOLERANCE: f64 = 1e-9;

/// Eigenvalues of `Q` at or below `1 + LAMBDA_CUTOFF` do not contribute.
pub const LAMBDA_CUTOFF: f64 = 1e-12;

/// Deflation thresholds tried in turn by the Schur iteration. The tightest
/// one stalls on the clustered spectra of the star, the looser ones still
/// resolve eigenvalues far below [`IMAG_TOLERANCE`].
const SCHUR_EPS: [f64; 4] = [4.0 * f64::EPSILON, 1e-14, 1e-13, 1e-12];

/// `V^{1/2}` and `V^{-1/2}`.
#[derive(Debug, Clone)]
pub struct MatrixFunctionPair {
    pub sqrt: DMatrix<f64>,
    pub inv_sqrt: DMatrix<f64>,
}

/// Position and momentum blocks of a Gibbs state, `γ = X ⊕ P`.
#[derive(Debug, Clone)]
pub struct ThermalGaussianState {
    pub x_block: DMatrix<f64>,
    pub p_block: DMatrix<f64>,
    pub temperature: f64,
}

impl ThermalGaussianState {
    pub fn n(&self) -> usize {
        self.x_block.nrows()
    }

    /// Symplectic eigenvalues, ascending.
    pub fn symplectic_eigenvalues(&self) -> Vec<f64> {
        symplectic_of_blocks(&self.x_block, &self.p_block)
    }
}

/// Spectral decomposition of a potential, reused across temperatures.
#[derive(Debug, Clone)]
pub struct HarmonicSystem {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl HarmonicSystem {
    pub fn new(potential: &PotentialMatrix) -> Result<Self> {
        let v = potential.matrix();
        let sym = (v + v.transpose()) * 0.5;
        let eig = sym.clone().symmetric_eigen();
        check_eigen_residual(&sym, &eig.eigenvectors, &eig.eigenvalues)?;
        if let Some(bad) = eig.eigenvalues.iter().find(|&&l| !(l > 0.0)) {
            return Err(Error::InvalidModel(format!(
                "potential has non-positive eigenvalue {bad:e}"
            )));
        }
        Ok(Self {
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// `U f(Λ) Uᵀ`, symmetrized.
    fn spectral(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let u = &self.eigenvectors;
        let mut scaled = u.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= f(self.eigenvalues[k]);
        }
        let m = scaled * u.transpose();
        (&m + m.transpose()) * 0.5
    }

    pub fn sqrt_pair(&self) -> MatrixFunctionPair {
        MatrixFunctionPair {
            sqrt: self.spectral(f64::sqrt),
            inv_sqrt: self.spectral(|l| 1.0 / l.sqrt()),
        }
    }

    pub fn thermal_state(&self, t: f64) -> Result<ThermalGaussianState> {
        check_temperature(t)?;
        Ok(ThermalGaussianState {
            x_block: self.spectral(|l| thermal_factor(l.sqrt(), t) / l.sqrt()),
            p_block: self.spectral(|l| thermal_factor(l.sqrt(), t) * l.sqrt()),
            temperature: t,
        })
    }

    /// `W(T)` as a matrix.
    pub fn thermal_matrix(&self, t: f64) -> Result<DMatrix<f64>> {
        check_temperature(t)?;
        Ok(self.spectral(|l| thermal_factor(l.sqrt(), t)))
    }

    /// Eigenvalues of `Q = P ω⁻ P ω⁺` (real parts, imaginary parts checked).
    pub fn q_spectrum(&self, t: f64, partition: &Partition) -> Result<Vec<f64>> {
        check_temperature(t)?;
        let n = self.n();
        if partition.n() != n {
            return Err(Error::InvalidPartition(format!(
                "partition has {} sites, model has {n}",
                partition.n()
            )));
        }
        let omega_minus = self.spectral(|l| 1.0 / (l.sqrt() * thermal_factor(l.sqrt(), t)));
        let omega_plus = self.spectral(|l| l.sqrt() / thermal_factor(l.sqrt(), t));
        let signs = partition.labels();
        // P ω⁻ P is ω⁻ with entries scaled by the sign products
        let p_omega_p = DMatrix::from_fn(n, n, |i, j| {
            omega_minus[(i, j)] * f64::from(signs[i] * signs[j])
        });
        let q = p_omega_p * omega_plus;

        let max_iter = 50 * n + 100;
        let schur = SCHUR_EPS
            .iter()
            .find_map(|&eps| q.clone().try_schur(eps, max_iter))
            .ok_or_else(|| Error::NumericalBreakdown("Schur iteration did not converge".into()))?;
        let eig = schur.complex_eigenvalues();
        let radius = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let max_imag = eig.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if max_imag > IMAG_TOLERANCE * radius {
            return Err(Error::NumericalBreakdown(format!(
                "eigenvalues of Q have imaginary parts up to {max_imag:e} (spectral radius {radius:e})"
            )));
        }
        Ok(eig.iter().map(|z| z.re).collect())
    }

    /// Log-negativity in bits from the spectrum of `Q`.
    pub fn log_negativity(&self, t: f64, partition: &Partition) -> Result<f64> {
        let spectrum = self.q_spectrum(t, partition)?;
        Ok(spectrum
            .iter()
            .filter(|&&l| l > 1.0 + LAMBDA_CUTOFF)
            .map(|l| l.log2())
            .sum())
    }

    /// `E_l` from [`Self::log_negativity`] together with `E_N = 2^{E_l} - 1`.
    pub fn negativity(&self, t: f64, partition: &Partition) -> Result<Negativity> {
        let e_l = self.log_negativity(t, partition)?;
        Ok(Negativity::from_log(e_l))
    }
}

/// Rejects a symmetric eigendecomposition whose residual `‖A V - V Λ‖` is not
/// at round-off level.
pub(crate) fn check_eigen_residual(a: &DMatrix<f64>, vectors: &DMatrix<f64>, values: &DVector<f64>) -> Result<()> {
    let mut av = a * vectors;
    for (k, mut col) in av.column_iter_mut().enumerate() {
        col.axpy(-values[k], &vectors.column(k), 1.0);
    }
    let scale = 1.0 + a.amax();
    let residual = av.amax();
    if residual > 1e-9 * scale * a.nrows() as f64 {
        return Err(Error::NumericalBreakdown(format!(
            "symmetric eigendecomposition residual {residual:e}"
        )));
    }
    Ok(())
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTemperature(t));
    }
    Ok(())
}

/// One eigenvalue of `W(T)`: `coth(ω / 2T)`, and 1 at `T = 0`.
pub fn thermal_factor(omega: f64, t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        1.0 / (omega / (2.0 * t)).tanh()
    }
}

pub fn matrix_sqrt_pair(potential: &PotentialMatrix) -> Result<MatrixFunctionPair> {
    Ok(HarmonicSystem::new(potential)?.sqrt_pair())
}

/// `γ(T) = [V^{-1/2} W(T)] ⊕ [V^{1/2} W(T)]`.
pub fn thermal_covariance(potential: &PotentialMatrix, t: f64) -> Result<ThermalGaussianState> {
    check_temperature(t)?;
    HarmonicSystem::new(potential)?.thermal_state(t)
}

pub fn log_negativity_spectral(potential: &PotentialMatrix, t: f64, partition: &Partition) -> Result<f64> {
    HarmonicSystem::new(potential)?.log_negativity(t, partition)
}

/// Symplectic eigenvalues of a block-diagonal covariance `X ⊕ Y`:
/// square roots of `eig(X^{1/2} Y X^{1/2})`, ascending.
fn symplectic_of_blocks(x: &DMatrix<f64>, y: &DMatrix<f64>) -> Vec<f64> {
    let x_sym = (x + x.transpose()) * 0.5;
    let eig = x_sym.symmetric_eigen();
    let mut root = eig.eigenvectors.clone();
    for (k, mut col) in root.column_iter_mut().enumerate() {
        col *= eig.eigenvalues[k].max(0.0).sqrt();
    }
    let x_half = &root * eig.eigenvectors.transpose();
    let m = &x_half * y * &x_half;
    let m = (&m + m.transpose()) * 0.5;
    let mut nu: Vec<f64> = m.symmetric_eigenvalues().iter().map(|v| v.max(0.0).sqrt()).collect();
    nu.sort_by(f64::total_cmp);
    nu
}

/// Partially transposed symplectic eigenvalues `ν̃` (ascending): the momentum
/// block is conjugated by the sign matrix of the partition.
pub fn pt_symplectic_spectrum(state: &ThermalGaussianState, partition: &Partition) -> Result<Vec<f64>> {
    let n = state.n();
    if partition.n() != n {
        return Err(Error::InvalidPartition(format!(
            "partition has {} sites, state has {n}",
            partition.n()
        )));
    }
    let s = partition.labels();
    let flipped = DMatrix::from_fn(n, n, |i, j| state.p_block[(i, j)] * f64::from(s[i] * s[j]));
    Ok(symplectic_of_blocks(&state.x_block, &flipped))
}

/// Literal `W(T) = 1 + 2 [exp(V^{1/2}/T) - 1]⁻¹` via a matrix exponential.
fn literal_thermal_matrix(sqrt_v: &DMatrix<f64>, t: f64) -> Result<DMatrix<f64>> {
    let n = sqrt_v.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    if t == 0.0 {
        return Ok(id);
    }
    let arg = sqrt_v / t;
    if arg.amax() > 600.0 {
        return Err(Error::NumericalBreakdown(format!(
            "exp(V^(1/2)/T) overflows at T = {t}"
        )));
    }
    let denom = arg.exp() - &id;
    let inv = denom
        .try_inverse()
        .ok_or_else(|| Error::NumericalBreakdown("exp(V^(1/2)/T) - 1 is singular".into()))?;
    Ok(id + inv * 2.0)
}

/// Independent cross-check of [`log_negativity_spectral`] through the
/// symplectic spectrum of the partially transposed covariance matrix.
///
/// `W(T)` is built from the matrix exponential rather than spectrally, so the
/// temperature must keep `‖V^{1/2}‖/T` below the exponential's overflow range.
pub fn log_negativity_symplectic_oracle(potential: &PotentialMatrix, t: f64, partition: &Partition) -> Result<f64> {
    check_temperature(t)?;
    let pair = matrix_sqrt_pair(potential)?;
    let w = literal_thermal_matrix(&pair.sqrt, t)?;
    let state = ThermalGaussianState {
        x_block: &pair.inv_sqrt * &w,
        p_block: &pair.sqrt * &w,
        temperature: t,
    };
    let nu = pt_symplectic_spectrum(&state, partition)?;
    Ok(nu
        .iter()
        .filter(|&&v| v * v < 1.0 / (1.0 + LAMBDA_CUTOFF))
        .map(|v| -(v * v).log2())
        .sum())
}

/// Negativity from the smallest partially transposed symplectic eigenvalue,
/// in the single-mode convention `E_N = (1 - ν̃)/ν̃`, `E_l = -log2 ν̃`.
///
/// Exact for a pure state whose `+1` block is a single mode, such as the
/// star hub at `T = 0`.
pub fn min_symplectic_negativity(state: &ThermalGaussianState, partition: &Partition) -> Result<Negativity> {
    let nu = pt_symplectic_spectrum(state, partition)?;
    let nu_min = nu.first().copied().unwrap_or(1.0);
    Ok(negativity_from_nu(nu_min))
}

fn negativity_from_nu(nu: f64) -> Negativity {
    if nu >= 1.0 {
        Negativity { e_n: 0.0, e_l: 0.0 }
    } else {
        Negativity {
            e_n: (1.0 - nu) / nu,
            e_l: -nu.log2(),
        }
    }
}

/// Diagonal entries `(a, b)` of the hub's reduced covariance at `T = 0`:
/// `a = 1/N + (N-1)/N √(1+Nc)`, `b = 1/N + (N-1)/(N √(1+Nc))`.
///
/// `a` is the hub entry of `V^{1/2}` and `b` that of `V^{-1/2}`; only the
/// product `a b` enters the negativity.
pub fn star_reduced_closed_form(n: usize, c: f64) -> Result<(f64, f64)> {
    if n < 2 || !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidModel(format!(
            "star closed form needs n >= 2 and c > 0, got n={n}, c={c}"
        )));
    }
    let nf = n as f64;
    let root = (1.0 + nf * c).sqrt();
    let a = 1.0 / nf + (nf - 1.0) / nf * root;
    let b = 1.0 / nf + (nf - 1.0) / (nf * root);
    Ok((a, b))
}

/// Single-mode negativity from the determinant `Δ` of a reduced covariance:
/// `ν = √Δ - √(Δ - 1)`, `E_N = max(0, (1 - ν)/ν)`.
pub fn single_mode_negativity(delta: f64) -> Result<Negativity> {
    if !(delta >= 1.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "reduced covariance determinant must be >= 1, got {delta}"
        )));
    }
    Ok(negativity_from_nu(delta.sqrt() - (delta - 1.0).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarLimitRow {
    pub n: usize,
    pub delta: f64,
    pub e_n: f64,
}

/// Closed-form hub negativity at `T = 0` along a list of star sizes.
pub fn star_macroscopic_limit_trend(c: f64, n_list: &[usize]) -> Result<Vec<StarLimitRow>> {
    n_list
        .iter()
        .map(|&n| {
            let (a, b) = star_reduced_closed_form(n, c)?;
            let delta = a * b;
            Ok(StarLimitRow {
                n,
                delta,
                e_n: single_mode_negativity(delta)?.e_n,
            })
        })
        .collect()
}
