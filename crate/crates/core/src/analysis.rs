//! Sweeps over (temperature, partition) grids, PPT threshold temperatures,
//! bound-entanglement windows and area-law diagnostics.

use log::warn;
use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::HarmonicSystem;
use crate::lattice::{self, ModelKind, ModelSpec, Topology};
use crate::partitions::{self, Family, Partition};
use crate::spin::{self, SpinSpectrum};
use crate::{Negativity, EPS_PPT};

enum Engine {
    Harmonic(HarmonicSystem),
    Spin(SpinSpectrum),
}

/// A model together with its cached decomposition.
pub struct Model {
    spec: ModelSpec,
    engine: Engine,
}

/// Thermal state of a [`Model`] at one temperature, ready for many cuts.
pub enum StateAt<'a> {
    Harmonic { system: &'a HarmonicSystem, t: f64 },
    Spin(spin::SpinThermalState),
}

impl StateAt<'_> {
    pub fn negativity(&self, partition: &Partition) -> Result<Negativity> {
        match self {
            StateAt::Harmonic { system, t } => system.negativity(*t, partition),
            StateAt::Spin(state) => spin::negativity(state, partition),
        }
    }
}

impl Model {
    pub fn build(spec: ModelSpec) -> Result<Self> {
        Self::build_with_limit(spec, lattice::max_spin_sites())
    }

    pub fn build_with_limit(spec: ModelSpec, max_spin_sites: usize) -> Result<Self> {
        spec.validate()?;
        let engine = match spec.kind {
            ModelKind::Harmonic => Engine::Harmonic(HarmonicSystem::new(&lattice::build_potential(&spec)?)?),
            ModelKind::SpinHalf => {
                let h = lattice::build_spin_hamiltonian_with_limit(&spec, max_spin_sites)?;
                Engine::Spin(SpinSpectrum::new(&h)?)
            }
        };
        Ok(Self { spec, engine })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn state_at(&self, t: f64) -> Result<StateAt<'_>> {
        if !(t >= 0.0) {
            return Err(Error::NegativeTemperature(t));
        }
        Ok(match &self.engine {
            Engine::Harmonic(system) => StateAt::Harmonic { system, t },
            Engine::Spin(spectrum) => StateAt::Spin(spectrum.thermal_state(t)?),
        })
    }

    pub fn negativity(&self, t: f64, partition: &Partition) -> Result<Negativity> {
        self.check_partition(partition)?;
        self.state_at(t)?.negativity(partition)
    }

    fn check_partition(&self, partition: &Partition) -> Result<()> {
        if partition.n() != self.spec.n_sites {
            return Err(Error::InvalidPartition(format!(
                "partition {} has {} sites, model has {}",
                partition.id(),
                partition.n(),
                self.spec.n_sites
            )));
        }
        Ok(())
    }
}

/// Inverse temperature; `T = 0` maps to infinity.
pub fn beta_of(t: f64) -> f64 {
    if t == 0.0 {
        f64::INFINITY
    } else {
        1.0 / t
    }
}

/// Temperature from an inverse temperature, rejecting `β <= 0`.
pub fn temperature_of(beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::InvalidArgument(format!("beta must be positive, got {beta}")));
    }
    Ok(if beta.is_infinite() { 0.0 } else { 1.0 / beta })
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub model: ModelSpec,
    pub temperature: f64,
    pub beta: f64,
    pub partition_id: String,
    pub mask: String,
    pub area: usize,
    pub outcome: std::result::Result<Negativity, Error>,
}

impl SweepRow {
    pub fn is_ppt(&self) -> Option<bool> {
        self.outcome.as_ref().ok().map(Negativity::is_ppt)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepGrid {
    pub rows: Vec<SweepRow>,
}

impl SweepGrid {
    pub fn failed_cells(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome.is_err()).count()
    }
}

/// Negativities over the full `temperatures × partitions` grid, temperature
/// outer. Cells run concurrently; a failing cell is recorded, never fatal.
pub fn sweep(model: &Model, temperatures: &[f64], partitions: &[Partition]) -> Result<SweepGrid> {
    for p in partitions {
        model.check_partition(p)?;
    }
    let rows = temperatures
        .par_iter()
        .map(|&t| {
            let state = model.state_at(t);
            partitions
                .par_iter()
                .map(|p| SweepRow {
                    model: *model.spec(),
                    temperature: t,
                    beta: beta_of(t),
                    partition_id: p.id().to_string(),
                    mask: p.mask(),
                    area: p.area(),
                    outcome: match &state {
                        Ok(s) => s.negativity(p),
                        Err(e) => Err(e.clone()),
                    },
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(SweepGrid { rows })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdOptions {
    pub t_lo: f64,
    pub t_hi: f64,
    pub tol: f64,
    pub scan_points: usize,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        Self {
            t_lo: 0.01,
            t_hi: 20.0,
            tol: 1e-6,
            scan_points: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult {
    pub model: ModelSpec,
    pub partition_id: String,
    pub t_th: f64,
    /// Entangled at the lower end, PPT at the upper end.
    pub bracket: (f64, f64),
    pub tolerance: f64,
    pub evaluations: usize,
    /// More than one entangled-to-PPT transition was seen in the coarse scan.
    pub multiple_crossings: bool,
}

/// Temperature above which `partition` is PPT.
///
/// A coarse scan locates the last entangled-to-PPT transition on
/// `[t_lo, t_hi]`, which is then bisected down to `tol`.
pub fn threshold_temperature(model: &Model, partition: &Partition, opts: &ThresholdOptions) -> Result<ThresholdResult> {
    model.check_partition(partition)?;
    if !(opts.t_lo > 0.0 && opts.t_hi > opts.t_lo && opts.tol > 0.0) || opts.scan_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "threshold search needs 0 < T_lo < T_hi, tol > 0 and >= 2 scan points, got {opts:?}"
        )));
    }
    let mut evaluations = 0usize;
    let mut value = |t: f64| -> Result<f64> {
        evaluations += 1;
        Ok(model.negativity(t, partition)?.e_n)
    };

    let m = opts.scan_points;
    let grid: Vec<f64> = (0..m)
        .map(|i| {
            if i == m - 1 {
                opts.t_hi
            } else {
                opts.t_lo + (opts.t_hi - opts.t_lo) * i as f64 / (m - 1) as f64
            }
        })
        .collect();
    let values = grid.iter().map(|&t| value(t)).collect::<Result<Vec<f64>>>()?;

    if values[0] < EPS_PPT {
        return Err(Error::NotEntangledAtLow { t: opts.t_lo, value: values[0] });
    }
    if values[m - 1] >= EPS_PPT {
        return Err(Error::StillEntangledAtHigh { t: opts.t_hi, value: values[m - 1] });
    }
    let crossings: Vec<usize> = (0..m - 1)
        .filter(|&i| values[i] >= EPS_PPT && values[i + 1] < EPS_PPT)
        .collect();
    let multiple_crossings = crossings.len() > 1;
    if multiple_crossings {
        warn!(
            "{} / {}: {} PPT transitions in the coarse scan, using the largest-T one",
            model.spec(),
            partition.id(),
            crossings.len()
        );
    }
    let i = *crossings.last().expect("endpoint signs guarantee a crossing");
    let (mut lo, mut hi) = (grid[i], grid[i + 1]);
    while hi - lo > opts.tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if value(mid)? >= EPS_PPT {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdResult {
        model: *model.spec(),
        partition_id: partition.id().to_string(),
        t_th: 0.5 * (lo + hi),
        bracket: (lo, hi),
        tolerance: hi - lo,
        evaluations,
        multiple_crossings,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowResult {
    pub model: ModelSpec,
    /// The cut that is PPT inside the window (lower threshold).
    pub certificate_id: String,
    /// The cut that is still entangled inside the window (higher threshold).
    pub witness_id: String,
    /// `true` when the caller's certificate had the higher threshold and the
    /// roles were exchanged.
    pub swapped: bool,
    pub window: Option<(f64, f64)>,
    pub note: Option<String>,
}

/// Temperature range in which the certificate cut is PPT while the witness
/// cut is still entangled.
///
/// Endpoints are ordered numerically; the cut with the lower threshold is
/// reported as the certificate. A certificate that is never entangled on the
/// search range contributes `t_lo` as its threshold.
pub fn bound_entanglement_window(
    model: &Model,
    certificate: &Partition,
    witness: &Partition,
    opts: &ThresholdOptions,
) -> Result<WindowResult> {
    let threshold = |p: &Partition| match threshold_temperature(model, p, opts) {
        Ok(r) => Ok(Some(r.t_th)),
        Err(Error::NotEntangledAtLow { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let (t_cert, t_wit) = rayon::join(|| threshold(certificate), || threshold(witness));
    let (t_cert, t_wit) = (t_cert?, t_wit?);

    let (t_cert, t_wit, swapped) = match (t_cert, t_wit) {
        (None, None) => (None, None, false),
        (Some(c), None) => (None, Some(c), true),
        (c, Some(w)) if c.unwrap_or(opts.t_lo) > w => (Some(w), c, true),
        (c, w) => (c, w, false),
    };
    let (cert, wit) = if swapped { (witness, certificate) } else { (certificate, witness) };

    let note = (model.spec().topology == Topology::Star).then(|| {
        "star has no translational symmetry: PPT of one cut does not rule out distillation across other cuts"
            .to_string()
    });
    let window = match t_wit {
        Some(high) => {
            let low = t_cert.unwrap_or(opts.t_lo);
            (high > low).then_some((low, high))
        }
        None => None,
    };
    if let Some((low, high)) = window {
        let mid = 0.5 * (low + high);
        let state = model.state_at(mid)?;
        let cert_neg = state.negativity(cert)?;
        let wit_neg = state.negativity(wit)?;
        if !cert_neg.is_ppt() || wit_neg.is_ppt() {
            return Err(Error::NumericalBreakdown(format!(
                "window midpoint T = {mid}: certificate E_N = {:e}, witness E_N = {:e}",
                cert_neg.e_n, wit_neg.e_n
            )));
        }
    }
    Ok(WindowResult {
        model: *model.spec(),
        certificate_id: cert.id().to_string(),
        witness_id: wit.id().to_string(),
        swapped,
        window,
        note,
    })
}

/// Relative distance of a matrix from its best rank-one approximation:
/// `sqrt(Σ_{k>=2} σ_k²) / sqrt(Σ_k σ_k²)`.
pub fn rank1_residual(m: &DMatrix<f64>) -> Result<f64> {
    let total = m.norm();
    if !(total > 0.0) {
        return Err(Error::InvalidArgument("factorizability needs a non-zero grid".into()));
    }
    if m.nrows() < 2 || m.ncols() < 2 {
        return Ok(0.0);
    }
    let mut sv: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let tail: f64 = sv[1..].iter().map(|s| s * s).sum();
    Ok(tail.sqrt() / total)
}

/// Assembles `M[T_i][partition_j]` of `E_N` values from a single-model grid
/// (rows and columns in first-appearance order).
pub fn negativity_matrix(grid: &SweepGrid) -> Result<(Vec<f64>, Vec<String>, DMatrix<f64>)> {
    let first = grid
        .rows
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty grid".into()))?;
    let mut temps: Vec<f64> = Vec::new();
    let mut ids: Vec<String> = Vec::new();
    for r in &grid.rows {
        if r.model != first.model {
            return Err(Error::InvalidArgument("grid mixes several models".into()));
        }
        if !temps.contains(&r.temperature) {
            temps.push(r.temperature);
        }
        if !ids.contains(&r.partition_id) {
            ids.push(r.partition_id.clone());
        }
    }
    let mut m = DMatrix::from_element(temps.len(), ids.len(), f64::NAN);
    for r in &grid.rows {
        let i = temps.iter().position(|&t| t == r.temperature).unwrap();
        let j = ids.iter().position(|id| *id == r.partition_id).unwrap();
        let value = match &r.outcome {
            Ok(neg) => neg.e_n,
            Err(e) => return Err(e.clone()),
        };
        m[(i, j)] = value;
    }
    if m.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidArgument("grid is not a complete temperature x partition table".into()));
    }
    Ok((temps, ids, m))
}

/// Strict-area-law diagnostic: how far the `E_N` table is from a product
/// `f(T) g(A)`. Zero certifies factorization; larger values refute it.
pub fn rank1_factorizability(grid: &SweepGrid) -> Result<f64> {
    let (_, _, m) = negativity_matrix(grid)?;
    rank1_residual(&m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub n: usize,
    pub t_th_certificate: f64,
    pub t_th_witness: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapTable {
    pub base: ModelSpec,
    pub certificate_id: String,
    pub witness_id: String,
    pub rows: Vec<GapRow>,
    /// `max_n |gap_n - mean| / |mean|`.
    pub max_relative_deviation: f64,
}

fn single_partition(family: &Family, n: usize, topology: Topology) -> Result<Partition> {
    let mut ps = family.generate(n, topology)?;
    if ps.len() != 1 {
        return Err(Error::InvalidPartition(format!(
            "family {family:?} yields {} partitions, expected one",
            ps.len()
        )));
    }
    Ok(ps.remove(0))
}

/// Threshold gap between two partition families across system sizes.
pub fn type2_gap_table(
    base: ModelSpec,
    n_list: &[usize],
    certificate: &Family,
    witness: &Family,
    opts: &ThresholdOptions,
) -> Result<GapTable> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("empty size list".into()));
    }
    let rows = n_list
        .par_iter()
        .map(|&n| {
            let model = Model::build(base.with_sites(n))?;
            let cert = single_partition(certificate, n, base.topology)?;
            let wit = single_partition(witness, n, base.topology)?;
            let (tc, tw) = rayon::join(
                || threshold_temperature(&model, &cert, opts),
                || threshold_temperature(&model, &wit, opts),
            );
            let (tc, tw) = (tc?.t_th, tw?.t_th);
            Ok(GapRow {
                n,
                t_th_certificate: tc,
                t_th_witness: tw,
                gap: tw - tc,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mean = rows.iter().map(|r| r.gap).sum::<f64>() / rows.len() as f64;
    let max_relative_deviation = rows
        .iter()
        .map(|r| (r.gap - mean).abs() / mean.abs())
        .fold(0.0, f64::max);
    let first_n = n_list[0];
    Ok(GapTable {
        base,
        certificate_id: single_partition(certificate, first_n, base.topology)?.id().to_string(),
        witness_id: single_partition(witness, first_n, base.topology)?.id().to_string(),
        rows,
        max_relative_deviation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingOptions {
    pub t_min: f64,
    pub t_max: f64,
    pub scan_points: usize,
    pub tol: f64,
}

impl Default for CrossingOptions {
    fn default() -> Self {
        Self {
            t_min: 0.5,
            t_max: 4.0,
            scan_points: 64,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossingResult {
    pub n_a: usize,
    pub n_b: usize,
    pub t_star: f64,
    pub bracket: (f64, f64),
    /// Sign changes of `E_N(n_a) - E_N(n_b)` seen in the coarse scan.
    pub sign_changes: usize,
    /// `E_N(n_a) - E_N(n_b)` is positive below the crossing.
    pub a_larger_below: bool,
}

/// Temperature where the single-external-site negativities of two spin stars
/// of different size cross. The first crossing on the scan is refined.
pub fn star_external_crossing(n_a: usize, n_b: usize, h: f64, opts: &CrossingOptions) -> Result<CrossingResult> {
    if n_a == n_b {
        return Err(Error::InvalidArgument(format!("crossing needs two different sizes, got {n_a} twice")));
    }
    if !(opts.t_min > 0.0 && opts.t_max > opts.t_min && opts.tol > 0.0) || opts.scan_points < 2 {
        return Err(Error::InvalidArgument(format!("bad crossing options {opts:?}")));
    }
    let (ma, mb) = rayon::join(
        || Model::build(ModelSpec::spin(Topology::Star, n_a, h)),
        || Model::build(ModelSpec::spin(Topology::Star, n_b, h)),
    );
    let (ma, mb) = (ma?, mb?);
    let pa = partitions::single_external_vs_rest(n_a, 2, Topology::Star)?;
    let pb = partitions::single_external_vs_rest(n_b, 2, Topology::Star)?;
    let diff = |t: f64| -> Result<f64> {
        let (a, b) = rayon::join(|| ma.negativity(t, &pa), || mb.negativity(t, &pb));
        Ok(a?.e_n - b?.e_n)
    };
    let sign = |d: f64| {
        if d > EPS_PPT {
            1
        } else if d < -EPS_PPT {
            -1
        } else {
            0
        }
    };

    let m = opts.scan_points;
    let grid: Vec<f64> = (0..m)
        .map(|i| opts.t_min + (opts.t_max - opts.t_min) * i as f64 / (m - 1) as f64)
        .collect();
    let signs = grid
        .par_iter()
        .map(|&t| diff(t).map(sign))
        .collect::<Result<Vec<i32>>>()?;
    // consecutive non-zero samples of opposite sign
    let nonzero: Vec<usize> = (0..m).filter(|&i| signs[i] != 0).collect();
    let changes: Vec<(usize, usize)> = nonzero
        .windows(2)
        .filter(|w| signs[w[0]] != signs[w[1]])
        .map(|w| (w[0], w[1]))
        .collect();
    let &(i, j) = changes
        .first()
        .ok_or(Error::NoSignChange { lo: opts.t_min, hi: opts.t_max })?;
    let below = signs[i];
    let (mut lo, mut hi) = (grid[i], grid[j]);
    while hi - lo > opts.tol {
        let mid = 0.5 * (lo + hi);
        if sign(diff(mid)?) == below {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CrossingResult {
        n_a,
        n_b,
        t_star: 0.5 * (lo + hi),
        bracket: (lo, hi),
        sign_changes: changes.len(),
        a_larger_below: below > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{central_vs_rest, even_odd, half_half};

    fn ring(n: usize, c: f64) -> Model {
        Model::build(ModelSpec::harmonic(Topology::RingNn, n, c)).unwrap()
    }

    #[test]
    fn beta_conversions() {
        assert_eq!(beta_of(0.0), f64::INFINITY);
        assert_eq!(beta_of(0.5), 2.0);
        assert_eq!(temperature_of(2.5).unwrap(), 0.4);
        assert!(temperature_of(0.0).is_err());
        assert!(temperature_of(-1.0).is_err());
    }

    #[test]
    fn empty_schedule_gives_empty_grid() {
        let m = ring(8, 0.4);
        let ps = vec![half_half(8, Topology::RingNn).unwrap()];
        assert!(sweep(&m, &[], &ps).unwrap().rows.is_empty());
    }

    #[test]
    fn sweep_row_order_and_size_check() {
        let m = ring(8, 0.4);
        let ps = Family::Blocks(None).generate(8, Topology::RingNn).unwrap();
        let grid = sweep(&m, &[0.4, 0.5], &ps).unwrap();
        assert_eq!(grid.rows.len(), 6);
        assert_eq!(grid.rows[0].temperature, 0.4);
        assert_eq!(grid.rows[2].partition_id, "blocks-2^3");
        assert_eq!(grid.rows[3].temperature, 0.5);
        assert_eq!(grid.failed_cells(), 0);
        for r in &grid.rows {
            let neg = r.outcome.as_ref().unwrap();
            assert_eq!(r.is_ppt(), Some(neg.e_n < EPS_PPT));
        }
        let wrong = vec![half_half(6, Topology::RingNn).unwrap()];
        assert!(sweep(&m, &[0.4], &wrong).is_err());
    }

    #[test]
    fn negative_temperature_cells_are_flagged() {
        let m = ring(4, 0.4);
        let ps = vec![half_half(4, Topology::RingNn).unwrap()];
        let grid = sweep(&m, &[0.3, -1.0], &ps).unwrap();
        assert_eq!(grid.failed_cells(), 1);
        assert!(grid.rows[1].is_ppt().is_none());
    }

    #[test]
    fn ring_thresholds_order() {
        let m = ring(8, 0.4);
        let opts = ThresholdOptions::default();
        let eo = threshold_temperature(&m, &even_odd(8, Topology::RingNn).unwrap(), &opts).unwrap();
        let hh = threshold_temperature(&m, &half_half(8, Topology::RingNn).unwrap(), &opts).unwrap();
        assert!(eo.t_th > hh.t_th);
        for r in [&eo, &hh] {
            assert!(r.bracket.1 - r.bracket.0 <= opts.tol);
            assert!(!r.multiple_crossings);
        }
        // reference values from an independent numpy evaluation
        assert!((eo.t_th - 0.537879).abs() < 1e-5);
        assert!((hh.t_th - 0.414805).abs() < 1e-5);
    }

    #[test]
    fn threshold_brackets_are_verified() {
        let m = ring(8, 0.4);
        let p = even_odd(8, Topology::RingNn).unwrap();
        let r = threshold_temperature(&m, &p, &ThresholdOptions::default()).unwrap();
        assert!(m.negativity(r.bracket.0, &p).unwrap().e_n >= EPS_PPT);
        assert!(m.negativity(r.bracket.1, &p).unwrap().e_n < EPS_PPT);
        let again = threshold_temperature(&m, &p, &ThresholdOptions::default()).unwrap();
        assert_eq!(r.t_th.to_bits(), again.t_th.to_bits());
        assert_eq!(r.evaluations, again.evaluations);
    }

    #[test]
    fn threshold_errors_are_distinct() {
        let m = ring(8, 0.0);
        let p = half_half(8, Topology::RingNn).unwrap();
        assert!(matches!(
            threshold_temperature(&m, &p, &ThresholdOptions::default()),
            Err(Error::NotEntangledAtLow { .. })
        ));
        let m = ring(8, 0.4);
        let p = even_odd(8, Topology::RingNn).unwrap();
        let opts = ThresholdOptions { t_hi: 0.3, ..Default::default() };
        assert!(matches!(
            threshold_temperature(&m, &p, &opts),
            Err(Error::StillEntangledAtHigh { .. })
        ));
    }

    #[test]
    fn spin_star_central_threshold_depends_on_size() {
        // n = 6 and n = 10 thresholds differ; frozen from a dense numpy evaluation
        let opts = ThresholdOptions { tol: 1e-6, ..Default::default() };
        let t = |n| {
            let m = Model::build(ModelSpec::spin(Topology::Star, n, 0.0)).unwrap();
            threshold_temperature(&m, &central_vs_rest(n, Topology::Star).unwrap(), &opts)
                .unwrap()
                .t_th
        };
        assert!((t(6) - 3.771375).abs() < 1e-5);
        assert!((t(10) - 5.058670).abs() < 1e-5);
    }

    #[test]
    fn ring_window_is_non_empty() {
        let m = ring(16, 0.4);
        let w = bound_entanglement_window(
            &m,
            &half_half(16, Topology::RingNn).unwrap(),
            &even_odd(16, Topology::RingNn).unwrap(),
            &ThresholdOptions::default(),
        )
        .unwrap();
        let (lo, hi) = w.window.unwrap();
        assert!(lo < hi);
        assert!(!w.swapped);
        assert_eq!(w.certificate_id, "half-half");
        assert!(w.note.is_none());
    }

    #[test]
    fn uncoupled_window_is_empty() {
        let m = ring(16, 0.0);
        let w = bound_entanglement_window(
            &m,
            &half_half(16, Topology::RingNn).unwrap(),
            &even_odd(16, Topology::RingNn).unwrap(),
            &ThresholdOptions::default(),
        )
        .unwrap();
        assert!(w.window.is_none());
    }

    #[test]
    fn star_window_matches_thresholds() {
        let m = Model::build(ModelSpec::harmonic(Topology::Star, 8, 1.0)).unwrap();
        let opts = ThresholdOptions::default();
        let hh = half_half(8, Topology::Star).unwrap();
        let co = central_vs_rest(8, Topology::Star).unwrap();
        let w = bound_entanglement_window(&m, &hh, &co, &opts).unwrap();
        let (lo, hi) = w.window.unwrap();
        assert_eq!(lo, threshold_temperature(&m, &hh, &opts).unwrap().t_th);
        assert_eq!(hi, threshold_temperature(&m, &co, &opts).unwrap().t_th);
        assert!(w.note.is_some());
        // reversed roles are reordered
        let w2 = bound_entanglement_window(&m, &co, &hh, &opts).unwrap();
        assert!(w2.swapped);
        assert_eq!(w2.certificate_id, "half-half");
        assert_eq!(w2.window, w.window);
    }

    #[test]
    fn rank_one_residuals() {
        let f = [0.3, 1.1, 2.0, 0.05];
        let g = [1.0, 2.5, 7.0];
        let m = DMatrix::from_fn(4, 3, |i, j| f[i] * g[j]);
        assert!(rank1_residual(&m).unwrap() < 1e-12);
        assert_eq!(rank1_residual(&DMatrix::from_row_slice(1, 3, &[1.0, 2.0, 5.0])).unwrap(), 0.0);
        assert_eq!(rank1_residual(&DMatrix::from_row_slice(3, 1, &[1.0, 2.0, 5.0])).unwrap(), 0.0);
        assert!(rank1_residual(&DMatrix::zeros(2, 2)).is_err());
        let id = DMatrix::<f64>::identity(2, 2);
        assert!((rank1_residual(&id).unwrap() - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn factorizability_of_zero_grid_rejected() {
        let m = ring(8, 0.0);
        let ps = Family::Blocks(None).generate(8, Topology::RingNn).unwrap();
        let grid = sweep(&m, &[0.2, 0.4], &ps).unwrap();
        assert!(rank1_factorizability(&grid).is_err());
    }

    #[test]
    fn gap_table_singleton() {
        let t = type2_gap_table(
            ModelSpec::harmonic(Topology::RingNn, 8, 0.4),
            &[8],
            &Family::HalfHalf,
            &Family::EvenOdd,
            &ThresholdOptions { tol: 1e-4, ..Default::default() },
        )
        .unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.max_relative_deviation, 0.0);
        assert!(type2_gap_table(
            ModelSpec::harmonic(Topology::RingNn, 8, 0.4),
            &[8],
            &Family::Blocks(None),
            &Family::EvenOdd,
            &ThresholdOptions::default()
        )
        .is_err());
    }

    #[test]
    fn crossing_preconditions() {
        assert!(star_external_crossing(4, 4, 0.0, &CrossingOptions::default()).is_err());
        // both stars are PPT for the external cut on this range
        let far = CrossingOptions { t_min: 4.0, t_max: 6.0, ..Default::default() };
        assert!(matches!(
            star_external_crossing(4, 6, 0.0, &far),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn crossing_six_eight() {
        let opts = CrossingOptions { t_min: 1.5, t_max: 3.0, scan_points: 48, tol: 1e-5 };
        let r = star_external_crossing(6, 8, 0.0, &opts).unwrap();
        assert!(r.t_star > 1.5 && r.t_star < 3.0);
        assert!(r.a_larger_below);
    }
}
