//! Spectrum containers: a computed, descending-sorted singular-value
//! sequence for one operator at one `(n, kappa)`, with provenance metadata.

use crate::error::{Error, Result};
use crate::Dim;
use std::collections::BTreeMap;

/// Which operator a spectrum belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OperatorTag {
    /// Normalized Herglotz map (carries the `kappa^{(n-1)/2}` factor).
    HerglotzA,
    /// Plain Herglotz map, `Q = kappa^{-(n-1)/2} A`.
    HerglotzQ,
    /// Normalized linearized far-field map.
    FarfieldF,
    /// Unnormalized far-field map, `F~ = kappa^{-(n-1)/2} F`.
    FarfieldFtilde,
}

impl OperatorTag {
    pub fn as_str(self) -> &'static str {
        match self {
            OperatorTag::HerglotzA => "Herglotz_A",
            OperatorTag::HerglotzQ => "Herglotz_Q",
            OperatorTag::FarfieldF => "Farfield_F",
            OperatorTag::FarfieldFtilde => "Farfield_Ftilde",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Herglotz_A" => Ok(OperatorTag::HerglotzA),
            "Herglotz_Q" => Ok(OperatorTag::HerglotzQ),
            "Farfield_F" => Ok(OperatorTag::FarfieldF),
            "Farfield_Ftilde" => Ok(OperatorTag::FarfieldFtilde),
            other => Err(Error::Domain(format!("unknown operator tag `{other}`"))),
        }
    }

    pub fn is_herglotz(self) -> bool {
        matches!(self, OperatorTag::HerglotzA | OperatorTag::HerglotzQ)
    }
}

impl std::fmt::Display for OperatorTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One singular value with its 1-based rank and, for Herglotz spectra, the
/// spherical-harmonic degree it came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub rank: usize,
    pub sigma: f64,
    pub degree: Option<u32>,
}

/// Truncation rule for spectrum generation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Truncation {
    /// Keep at most this many entries (counted with multiplicity).
    MaxCount(usize),
    /// Drop singular values below this floor.
    SigmaFloor(f64),
}

/// A descending-sorted singular-value sequence for one operator at one
/// `(n, kappa)`.
#[derive(Clone, Debug)]
pub struct SpectrumRecord {
    pub dim: Dim,
    pub kappa: f64,
    pub operator: OperatorTag,
    pub entries: Vec<SpectrumEntry>,
    pub method_meta: BTreeMap<String, String>,
}

impl SpectrumRecord {
    /// Sorts descending (ties broken by degree, then stably), assigns
    /// contiguous ranks from 1, and drops non-positive values.
    pub fn from_unsorted(
        dim: Dim,
        kappa: f64,
        operator: OperatorTag,
        mut values: Vec<(f64, Option<u32>)>,
        method_meta: BTreeMap<String, String>,
    ) -> Self {
        values.retain(|(sigma, _)| *sigma > 0.0);
        values.sort_by(|a, b| {
            b.0.partial_cmp(&a.0)
                .expect("singular values are finite")
                .then_with(|| a.1.cmp(&b.1))
        });
        let entries = values
            .into_iter()
            .enumerate()
            .map(|(i, (sigma, degree))| SpectrumEntry {
                rank: i + 1,
                sigma,
                degree,
            })
            .collect();
        Self {
            dim,
            kappa,
            operator,
            entries,
            method_meta,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Singular values only, descending.
    pub fn sigmas(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.sigma).collect()
    }

    /// `(rank, sigma)` pairs for fitting.
    pub fn rank_sigma_points(&self) -> Vec<(f64, f64)> {
        self.entries
            .iter()
            .map(|e| (e.rank as f64, e.sigma))
            .collect()
    }

    /// Checks the container invariants: positive sigmas, non-increasing
    /// order, contiguous ranks.
    pub fn validate(&self) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            if e.rank != i + 1 {
                return Err(Error::Domain(format!(
                    "rank {} at position {i} is not contiguous",
                    e.rank
                )));
            }
            if !(e.sigma > 0.0) {
                return Err(Error::Domain(format!(
                    "non-positive sigma {} at rank {}",
                    e.sigma, e.rank
                )));
            }
            if i > 0 && self.entries[i - 1].sigma < e.sigma {
                return Err(Error::Domain(format!("sigma increases at rank {}", e.rank)));
            }
        }
        Ok(())
    }

    /// Multiplies every singular value by `factor`, keeping order and ranks.
    pub fn scaled(mut self, factor: f64, operator: OperatorTag) -> Self {
        for e in &mut self.entries {
            e.sigma *= factor;
        }
        self.operator = operator;
        self
    }
}

/// Dimension of spherical harmonics of degree `ell` on S^{n-1}:
/// `n = 2`: 1 for the constant, 2 for every higher degree;
/// `n = 3`: `2 ell + 1`.
pub fn multiplicity(dim: Dim, ell: u32) -> usize {
    match dim {
        Dim::Two => {
            if ell == 0 {
                1
            } else {
                2
            }
        }
        Dim::Three => 2 * ell as usize + 1,
    }
}
