//! Bipartition families and their boundary areas.
//!
//! A partition assigns `+1` or `-1` to every site. Its serialized mask is a
//! string of `+`/`-` characters with site 1 leftmost. Identifiers are stable:
//! `even-odd`, `half-half`, `blocks-2^k`, `transfer-k`, `central`,
//! `external-j` (1-based `j`), `custom`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Topology;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<i8>,
    area: usize,
    id: String,
    topology: Topology,
}

impl Partition {
    /// Generic constructor; labels must be `±1` with both signs present.
    pub fn from_labels(labels: Vec<i8>, topology: Topology, id: impl Into<String>) -> Result<Self> {
        if labels.iter().any(|&l| l != 1 && l != -1) {
            return Err(Error::InvalidPartition("labels must be +1 or -1".into()));
        }
        if !labels.contains(&1) || !labels.contains(&-1) {
            return Err(Error::InvalidPartition("both blocks must be non-empty".into()));
        }
        let area = boundary_area(&labels, topology, labels.len())?;
        Ok(Self {
            labels,
            area,
            id: id.into(),
            topology,
        })
    }

    /// Parses a `+`/`-` mask (the Unicode minus sign is accepted too).
    pub fn from_mask(mask: &str, topology: Topology, id: impl Into<String>) -> Result<Self> {
        let labels = mask
            .chars()
            .map(|ch| match ch {
                '+' => Ok(1),
                '-' | '\u{2212}' => Ok(-1),
                other => Err(Error::InvalidPartition(format!("unexpected mask character {other:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::from_labels(labels, topology, id)
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn area(&self) -> usize {
        self.area
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn mask(&self) -> String {
        self.labels.iter().map(|&l| if l > 0 { '+' } else { '-' }).collect()
    }

    /// 0-based sites carrying `+1` (the partially transposed block).
    pub fn plus_sites(&self) -> impl Iterator<Item = usize> + '_ {
        self.labels.iter().enumerate().filter(|(_, &l)| l > 0).map(|(i, _)| i)
    }

    /// Complementary partition (all labels flipped).
    pub fn negated(&self) -> Self {
        Self {
            labels: self.labels.iter().map(|l| -l).collect(),
            area: self.area,
            id: self.id.clone(),
            topology: self.topology,
        }
    }

    /// Moves the label of site `i` to site `i + shift (mod n)`.
    pub fn rotated(&self, shift: usize) -> Result<Self> {
        let n = self.n();
        let mut labels = vec![0; n];
        for (i, &l) in self.labels.iter().enumerate() {
            labels[(i + shift) % n] = l;
        }
        Self::from_labels(labels, self.topology, self.id.clone())
    }

    /// Same labels with a different identifier.
    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] area {}", self.id, self.mask(), self.area)
    }
}

/// Number of interaction bonds whose endpoints carry opposite labels.
///
/// On the ring the count runs over the cyclic neighbour pairs `(i, i+1 mod n)`,
/// so a two-site ring sees its single bond from both sides and a contiguous
/// block always has area 2.
pub fn boundary_area(labels: &[i8], topology: Topology, n: usize) -> Result<usize> {
    if labels.len() != n {
        return Err(Error::InvalidPartition(format!(
            "partition has {} labels but the model has {n} sites",
            labels.len()
        )));
    }
    let area = match topology {
        Topology::RingNn => (0..n).filter(|&i| labels[i] != labels[(i + 1) % n]).count(),
        Topology::Star => topology
            .edges(n)
            .into_iter()
            .filter(|&(i, j)| labels[i] != labels[j])
            .count(),
    };
    Ok(area)
}

fn require_even(n: usize, min: usize, what: &str) -> Result<()> {
    if !n.is_multiple_of(2) || n < min {
        return Err(Error::InvalidPartition(format!(
            "{what} needs an even number of sites >= {min}, got {n}"
        )));
    }
    Ok(())
}

/// Odd sites (1, 3, ...) labeled `+1`, even sites `-1`.
pub fn even_odd(n: usize, topology: Topology) -> Result<Partition> {
    require_even(n, 4, "even-odd")?;
    let labels = (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    Partition::from_labels(labels, topology, "even-odd")
}

/// Sites `1..=n/2` labeled `+1`. On the star the hub sits in the `+1` block.
pub fn half_half(n: usize, topology: Topology) -> Result<Partition> {
    require_even(n, 2, "half-half")?;
    let labels = (0..n).map(|i| if i < n / 2 { 1 } else { -1 }).collect();
    Partition::from_labels(labels, topology, "half-half")
}

/// `2^nb_exp` alternating contiguous blocks over `2^n_exp` sites.
pub fn alternating_blocks(n_exp: u32, nb_exp: u32, topology: Topology) -> Result<Partition> {
    if nb_exp < 1 || nb_exp > n_exp || n_exp >= usize::BITS - 1 {
        return Err(Error::InvalidPartition(format!(
            "block exponent must satisfy 1 <= n_b <= n, got n_b={nb_exp}, n={n_exp}"
        )));
    }
    let n = 1usize << n_exp;
    let block = 1usize << (n_exp - nb_exp);
    let labels = (0..n).map(|i| if (i / block).is_multiple_of(2) { 1 } else { -1 }).collect();
    Partition::from_labels(labels, topology, format!("blocks-2^{nb_exp}"))
}

/// Starts at even-odd and moves even sites 2, 4, ... one at a time into the
/// odd block, ending with site `n` alone. Element `k` has `k` sites moved.
pub fn transfer_sweep(n: usize, topology: Topology) -> Result<Vec<Partition>> {
    require_even(n, 4, "transfer sweep")?;
    let mut labels: Vec<i8> = (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    let mut out = Vec::with_capacity(n / 2);
    out.push(Partition::from_labels(labels.clone(), topology, "transfer-0")?);
    for k in 1..n / 2 {
        labels[2 * k - 1] = 1;
        out.push(Partition::from_labels(labels.clone(), topology, format!("transfer-{k}"))?);
    }
    Ok(out)
}

/// Hub (site 1) against everything else.
pub fn central_vs_rest(n: usize, topology: Topology) -> Result<Partition> {
    if n < 2 {
        return Err(Error::InvalidPartition(format!("central vs rest needs n >= 2, got {n}")));
    }
    let labels = (0..n).map(|i| if i == 0 { 1 } else { -1 }).collect();
    Partition::from_labels(labels, topology, "central")
}

/// One outer site (1-based `site`, `2 <= site <= n`) against everything else.
pub fn single_external_vs_rest(n: usize, site: usize, topology: Topology) -> Result<Partition> {
    if site < 2 || site > n {
        return Err(Error::InvalidPartition(format!(
            "external site must satisfy 2 <= site <= {n}, got {site}"
        )));
    }
    let labels = (0..n).map(|i| if i + 1 == site { 1 } else { -1 }).collect();
    Partition::from_labels(labels, topology, format!("external-{site}"))
}

/// Named partition family, as used in experiment configs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    EvenOdd,
    HalfHalf,
    /// Alternating blocks; `None` means every `n_b` from 1 to `log2 n`.
    Blocks(Option<Vec<u32>>),
    Transfer,
    /// Transfer sweep traversed from the half-half end.
    TransferReverse,
    Central,
    /// 1-based outer sites; `None` means site 2.
    External(Option<Vec<usize>>),
}

impl Family {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "even-odd" => Family::EvenOdd,
            "half-half" => Family::HalfHalf,
            "blocks" => Family::Blocks(None),
            "transfer" => Family::Transfer,
            "transfer-reverse" => Family::TransferReverse,
            "central" => Family::Central,
            "external" => Family::External(None),
            other => {
                return Err(Error::InvalidPartition(format!("unknown partition family {other:?}")))
            }
        })
    }

    pub fn generate(&self, n: usize, topology: Topology) -> Result<Vec<Partition>> {
        match self {
            Family::EvenOdd => Ok(vec![even_odd(n, topology)?]),
            Family::HalfHalf => Ok(vec![half_half(n, topology)?]),
            Family::Blocks(exps) => {
                if !n.is_power_of_two() || n < 2 {
                    return Err(Error::InvalidPartition(format!(
                        "alternating blocks need a power-of-two size, got {n}"
                    )));
                }
                let n_exp = n.trailing_zeros();
                let exps = exps.clone().unwrap_or_else(|| (1..=n_exp).collect());
                exps.into_iter()
                    .map(|nb| alternating_blocks(n_exp, nb, topology))
                    .collect()
            }
            Family::Transfer => transfer_sweep(n, topology),
            Family::TransferReverse => {
                let mut sweep = transfer_sweep(n, topology)?;
                sweep.reverse();
                Ok(sweep)
            }
            Family::Central => Ok(vec![central_vs_rest(n, topology)?]),
            Family::External(sites) => sites
                .clone()
                .unwrap_or_else(|| vec![2])
                .into_iter()
                .map(|s| single_external_vs_rest(n, s, topology))
                .collect(),
        }
    }
}
