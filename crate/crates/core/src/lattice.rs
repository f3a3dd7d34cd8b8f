//! Coupling matrices and spin Hamiltonians for the ring and star topologies.
//!
//! Sites are 0-based here; the hub of a star is site 0 (site 1 in all
//! user-facing I/O).

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of spins in a dense spin model.
pub const DEFAULT_MAX_SPIN_SITES: usize = 12;

/// Environment variable that overrides [`DEFAULT_MAX_SPIN_SITES`].
pub const MAX_SPIN_SITES_ENV: &str = "THERMANEG_MAX_SPIN_SITES";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Harmonic,
    SpinHalf,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Harmonic => "harmonic",
            ModelKind::SpinHalf => "spin_half",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    RingNn,
    Star,
}

impl Topology {
    pub fn as_str(self) -> &'static str {
        match self {
            Topology::RingNn => "ring_nn",
            Topology::Star => "star",
        }
    }

    /// Interaction bonds as 0-based site pairs.
    ///
    /// A two-site ring has a single bond; the star's hub is site 0.
    pub fn edges(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            Topology::RingNn => match n {
                0 | 1 => Vec::new(),
                2 => vec![(0, 1)],
                _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            },
            Topology::Star => (1..n).map(|j| (0, j)).collect(),
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Model descriptor shared by both engines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub topology: Topology,
    pub n_sites: usize,
    pub coupling: f64,
    /// Longitudinal field; ignored for harmonic models.
    pub field: f64,
}

impl ModelSpec {
    pub fn harmonic(topology: Topology, n_sites: usize, coupling: f64) -> Self {
        Self {
            kind: ModelKind::Harmonic,
            topology,
            n_sites,
            coupling,
            field: 0.0,
        }
    }

    pub fn spin(topology: Topology, n_sites: usize, field: f64) -> Self {
        Self {
            kind: ModelKind::SpinHalf,
            topology,
            n_sites,
            coupling: 1.0,
            field,
        }
    }

    /// Same model at a different size.
    pub fn with_sites(self, n_sites: usize) -> Self {
        Self { n_sites, ..self }
    }

    /// Field as used by the engine: always zero for harmonic models.
    pub fn effective_field(&self) -> f64 {
        match self.kind {
            ModelKind::Harmonic => 0.0,
            ModelKind::SpinHalf => self.field,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return Err(Error::InvalidModel(format!(
                "n_sites must be at least 2, got {}",
                self.n_sites
            )));
        }
        if !self.coupling.is_finite() || !self.field.is_finite() {
            return Err(Error::InvalidModel("coupling and field must be finite".into()));
        }
        if self.kind == ModelKind::Harmonic {
            match self.topology {
                Topology::RingNn if !(0.0..0.5).contains(&self.coupling) => {
                    return Err(Error::InvalidModel(format!(
                        "harmonic ring needs 0 <= c < 1/2, got {}",
                        self.coupling
                    )));
                }
                Topology::Star if self.coupling <= 0.0 => {
                    return Err(Error::InvalidModel(format!(
                        "harmonic star needs c > 0, got {}",
                        self.coupling
                    )));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModelKind::Harmonic => write!(
                f,
                "harmonic {} n={} c={}",
                self.topology, self.n_sites, self.coupling
            ),
            ModelKind::SpinHalf => write!(
                f,
                "spin_half {} n={} h={}",
                self.topology, self.n_sites, self.field
            ),
        }
    }
}

/// Real symmetric positive-definite potential matrix of a quadratic Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialMatrix {
    entries: DMatrix<f64>,
}

impl PotentialMatrix {
    /// Wraps an arbitrary matrix after checking symmetry and positive definiteness.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::InvalidModel("potential must be a non-empty square matrix".into()));
        }
        let n = entries.nrows();
        for i in 0..n {
            for j in 0..i {
                if entries[(i, j)] != entries[(j, i)] {
                    return Err(Error::InvalidModel(format!(
                        "potential is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let min_eig = entries.clone().symmetric_eigenvalues().min();
        if !(min_eig > 0.0) {
            return Err(Error::InvalidModel(format!(
                "potential is not positive definite (minimum eigenvalue {min_eig:e})"
            )));
        }
        Ok(Self { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

/// `circ(1, -c, 0, ..., 0, -c)`. A two-site ring carries a single bond.
pub fn build_ring_potential(n: usize, c: f64) -> Result<PotentialMatrix> {
    if n < 2 {
        return Err(Error::InvalidModel(format!("ring needs at least 2 sites, got {n}")));
    }
    if !(0.0..0.5).contains(&c) {
        return Err(Error::InvalidModel(format!("ring coupling must satisfy 0 <= c < 1/2, got {c}")));
    }
    let mut v = DMatrix::identity(n, n);
    for (i, j) in Topology::RingNn.edges(n) {
        v[(i, j)] = -c;
        v[(j, i)] = -c;
    }
    PotentialMatrix::new(v)
}

/// Hub (site 0) coupled with strength `c` to every outer site.
pub fn build_star_potential(n: usize, c: f64) -> Result<PotentialMatrix> {
    if n < 2 {
        return Err(Error::InvalidModel(format!("star needs at least 2 sites, got {n}")));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidModel(format!("star coupling must be positive, got {c}")));
    }
    let mut v = DMatrix::identity(n, n) * (1.0 + c);
    v[(0, 0)] = 1.0 + (n as f64 - 1.0) * c;
    for j in 1..n {
        v[(0, j)] = -c;
        v[(j, 0)] = -c;
    }
    PotentialMatrix::new(v)
}

/// Potential for a harmonic [`ModelSpec`].
pub fn build_potential(spec: &ModelSpec) -> Result<PotentialMatrix> {
    if spec.kind != ModelKind::Harmonic {
        return Err(Error::InvalidModel("potential requested for a spin model".into()));
    }
    spec.validate()?;
    match spec.topology {
        Topology::RingNn => build_ring_potential(spec.n_sites, spec.coupling),
        Topology::Star => build_star_potential(spec.n_sites, spec.coupling),
    }
}

/// Spin cap from [`MAX_SPIN_SITES_ENV`], falling back to the default.
pub fn max_spin_sites() -> usize {
    std::env::var(MAX_SPIN_SITES_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_SPIN_SITES)
}

/// Dense XX Hamiltonian with a uniform longitudinal field.
///
/// Basis state `x` has site `i` in the bit `n - 1 - i`, so site 0 is the
/// leftmost tensor factor; a cleared bit is spin up (`σz = +1`).
/// All matrix elements are real.
#[derive(Debug, Clone)]
pub struct SpinHamiltonian {
    n: usize,
    field: f64,
    edges: Vec<(usize, usize)>,
    entries: DMatrix<f64>,
}

impl SpinHamiltonian {
    /// Builds `H = -Σ_<ij> (σx σx + σy σy) + h Σ σz` for the given bonds.
    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>, field: f64, max_sites: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("spin model needs at least one site".into()));
        }
        if n > max_sites || n >= usize::BITS as usize - 1 {
            return Err(Error::DimensionOverflow { n, max: max_sites });
        }
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= n || j >= n || i == j) {
            return Err(Error::InvalidModel(format!("bad bond ({}, {})", i + 1, j + 1)));
        }
        let dim = 1usize << n;
        let mut h = DMatrix::zeros(dim, dim);
        for x in 0..dim {
            let ups = n as i64 - 2 * x.count_ones() as i64;
            h[(x, x)] = field * ups as f64;
            for &(i, j) in &edges {
                let bi = site_bit(n, i);
                let bj = site_bit(n, j);
                // -(σxσx + σyσy) = -2(|01><10| + |10><01|)
                if ((x & bi) == 0) != ((x & bj) == 0) {
                    h[(x ^ bi ^ bj, x)] -= 2.0;
                }
            }
        }
        Ok(Self {
            n,
            field,
            edges,
            entries: h,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }
}

/// Bit mask of a 0-based site in the computational basis index.
#[inline]
pub fn site_bit(n: usize, site: usize) -> usize {
    1usize << (n - 1 - site)
}

pub fn build_spin_hamiltonian(spec: &ModelSpec) -> Result<SpinHamiltonian> {
    build_spin_hamiltonian_with_limit(spec, max_spin_sites())
}

pub fn build_spin_hamiltonian_with_limit(spec: &ModelSpec, max_sites: usize) -> Result<SpinHamiltonian> {
    if spec.kind != ModelKind::SpinHalf {
        return Err(Error::InvalidModel("spin Hamiltonian requested for a harmonic model".into()));
    }
    spec.validate()?;
    SpinHamiltonian::from_edges(
        spec.n_sites,
        spec.topology.edges(spec.n_sites),
        spec.field,
        max_sites,
    )
}
