//! Nystrom discretization of the far-field normal operator on the unit
//! cube: midpoint collocation of the convolution kernel
//! `G(d) = (2 pi)^n kappa^{n-1} (kappa d)^{2-n} J_{n/2-1}(kappa d)^2`,
//! eigenvalues of the resulting Gram matrix, and the induced approximate
//! singular values `sigma_j = sqrt(|lambda_j|)`.

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigenvalues, EigenMode, SymmetricMatrixBuffer, SymmetricOperator};
use crate::special::{bessel_j, BesselOrder};
use crate::spectrum::{OperatorTag, SpectrumRecord};
use crate::Dim;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Uniform midpoint discretization of `[0,1]^dim` with `m` cells per axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub dim: Dim,
    pub m: usize,
}

impl GridSpec {
    pub fn new(dim: Dim, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("grid must have at least one cell".into()));
        }
        Ok(Self { dim, m })
    }

    /// Total collocation points `m^dim`.
    pub fn points(&self) -> usize {
        self.m.pow(self.dim.n() as u32)
    }

    /// `m^{-dim}`.
    pub fn cell_volume(&self) -> f64 {
        (self.m as f64).powi(-(self.dim.n() as i32))
    }

    /// Midpoint of cell `idx` under row-major (last axis fastest) ordering.
    pub fn midpoint(&self, idx: usize) -> [f64; 3] {
        let m = self.m;
        let h = 1.0 / m as f64;
        match self.dim {
            Dim::Two => {
                let i1 = idx / m;
                let i2 = idx % m;
                [(i1 as f64 + 0.5) * h, (i2 as f64 + 0.5) * h, 0.0]
            }
            Dim::Three => {
                let i3 = idx % m;
                let rest = idx / m;
                let i2 = rest % m;
                let i1 = rest / m;
                [
                    (i1 as f64 + 0.5) * h,
                    (i2 as f64 + 0.5) * h,
                    (i3 as f64 + 0.5) * h,
                ]
            }
        }
    }
}

/// Convolution kernel of the far-field normal operator at separation
/// `dist`, with the removable limit at 0:
/// `G(0) = (2 pi)^n kappa^{n-1} 2^{2-n} / Gamma(n/2)^2`.
pub fn farfield_kernel(dim: Dim, kappa: f64, dist: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    if !(dist >= 0.0) {
        return Err(Error::Domain(format!("dist must be >= 0, got {dist}")));
    }
    let z = kappa * dist;
    match dim {
        Dim::Two => {
            // (2 pi)^2 kappa J_0(z)^2; the z^{2-n} factor is 1
            let j = bessel_j(BesselOrder::integer(0).expect("order 0"), z)?;
            Ok(4.0 * PI * PI * kappa * j * j)
        }
        Dim::Three => {
            // z^{-1} J_{1/2}(z)^2 = (2/pi) (sin z / z)^2, limit 2/pi at 0
            let sinc = if z == 0.0 { 1.0 } else { z.sin() / z };
            Ok(16.0 * PI * PI * kappa * kappa * sinc * sinc)
        }
    }
}

/// Default cap on the Gram matrix size.
pub const DEFAULT_ROW_CAP: usize = 20_000;

/// Gram matrix of the discretized normal operator:
/// entry `(i, j) = G(|x_i - x_j|) * cell_volume`.
pub fn assemble_gram(dim: Dim, kappa: f64, grid: GridSpec) -> Result<SymmetricMatrixBuffer> {
    assemble_gram_capped(dim, kappa, grid, DEFAULT_ROW_CAP)
}

pub fn assemble_gram_capped(
    dim: Dim,
    kappa: f64,
    grid: GridSpec,
    row_cap: usize,
) -> Result<SymmetricMatrixBuffer> {
    let n_points = grid.points();
    if n_points > row_cap {
        return Err(Error::MemoryCap {
            rows: n_points,
            cap: row_cap,
        });
    }
    let op = KernelGram::new(dim, kappa, grid)?;
    let m = grid.m;
    let table = &op.table;
    let mut data = vec![0.0_f64; n_points * n_points];
    match dim {
        Dim::Two => {
            crate::exec::fill_rows(&mut data, n_points, |i, row| {
                let (i1, i2) = (i / m, i % m);
                for (j, slot) in row.iter_mut().enumerate() {
                    let (j1, j2) = (j / m, j % m);
                    *slot = table[i1.abs_diff(j1) * m + i2.abs_diff(j2)];
                }
            });
        }
        Dim::Three => {
            crate::exec::fill_rows(&mut data, n_points, |i, row| {
                let i3 = i % m;
                let i2 = (i / m) % m;
                let i1 = i / (m * m);
                for (j, slot) in row.iter_mut().enumerate() {
                    let j3 = j % m;
                    let j2 = (j / m) % m;
                    let j1 = j / (m * m);
                    let d = (i1.abs_diff(j1) * m + i2.abs_diff(j2)) * m + i3.abs_diff(j3);
                    *slot = table[d];
                }
            });
        }
    }
    Ok(SymmetricMatrixBuffer::from_raw(n_points, data))
}

/// The Gram matrix as a matrix-free operator: entries are looked up in the
/// per-axis offset table, so memory stays O(m^dim) instead of O(m^{2 dim}).
/// Lets top-k mode run on grids too large to materialize (e.g. 40^3).
pub struct KernelGram {
    dim: Dim,
    m: usize,
    n_points: usize,
    /// Kernel value times cell volume per axis-offset tuple; both (i, j)
    /// and (j, i) read the same slot, so symmetry is exact.
    table: Vec<f64>,
}

impl KernelGram {
    pub fn new(dim: Dim, kappa: f64, grid: GridSpec) -> Result<Self> {
        if grid.dim != dim {
            return Err(Error::Domain("grid dimension mismatch".into()));
        }
        let m = grid.m;
        let h = 1.0 / m as f64;
        let vol = grid.cell_volume();
        let table: Result<Vec<f64>> = match dim {
            Dim::Two => crate::exec::map_indexed(m * m, |t| {
                let d1 = (t / m) as f64 * h;
                let d2 = (t % m) as f64 * h;
                let dist = (d1 * d1 + d2 * d2).sqrt();
                Ok(farfield_kernel(dim, kappa, dist)? * vol)
            })
            .into_iter()
            .collect(),
            Dim::Three => crate::exec::map_indexed(m * m * m, |t| {
                let d3 = (t % m) as f64 * h;
                let rest = t / m;
                let d2 = (rest % m) as f64 * h;
                let d1 = (rest / m) as f64 * h;
                let dist = (d1 * d1 + d2 * d2 + d3 * d3).sqrt();
                Ok(farfield_kernel(dim, kappa, dist)? * vol)
            })
            .into_iter()
            .collect(),
        };
        Ok(Self {
            dim,
            m,
            n_points: grid.points(),
            table: table?,
        })
    }
}

impl SymmetricOperator for KernelGram {
    fn size(&self) -> usize {
        self.n_points
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let m = self.m;
        let table = &self.table;
        let out = crate::exec::map_indexed(self.n_points, |i| match self.dim {
            Dim::Two => {
                let (i1, i2) = (i / m, i % m);
                let mut s = 0.0;
                for (j, xj) in x.iter().enumerate() {
                    let (j1, j2) = (j / m, j % m);
                    s += table[i1.abs_diff(j1) * m + i2.abs_diff(j2)] * xj;
                }
                s
            }
            Dim::Three => {
                let i3 = i % m;
                let i2 = (i / m) % m;
                let i1 = i / (m * m);
                let mut s = 0.0;
                for (j, xj) in x.iter().enumerate() {
                    let j3 = j % m;
                    let j2 = (j / m) % m;
                    let j1 = j / (m * m);
                    let d = (i1.abs_diff(j1) * m + i2.abs_diff(j2)) * m + i3.abs_diff(j3);
                    s += table[d] * xj;
                }
                s
            }
        });
        y.copy_from_slice(&out);
    }
}

/// Approximate singular values `sigma_j = sqrt(|lambda_j|)` of the
/// far-field map on the given grid, descending. With `normalized` the
/// spectrum is rescaled by `kappa^{-(n-1)/2}` (the unnormalized operator).
pub fn farfield_singular_values(
    dim: Dim,
    kappa: f64,
    grid: GridSpec,
    normalized: bool,
    mode: EigenMode,
) -> Result<SpectrumRecord> {
    // grids too large to materialize still run in top-k mode, matrix-free
    let eigenvalues = match mode {
        EigenMode::TopK(k) if grid.points() > DEFAULT_ROW_CAP => {
            let op = KernelGram::new(dim, kappa, grid)?;
            crate::linalg::lanczos_topk_op(&op, k, &crate::linalg::LanczosOptions::default())?
        }
        _ => {
            let gram = assemble_gram(dim, kappa, grid)?;
            symmetric_eigenvalues(&gram, mode)?
        }
    };
    spectrum_from_eigenvalues(dim, kappa, grid, normalized, mode, &eigenvalues)
}

/// Builds the spectrum record from already-computed Gram eigenvalues.
pub fn spectrum_from_eigenvalues(
    dim: Dim,
    kappa: f64,
    grid: GridSpec,
    normalized: bool,
    mode: EigenMode,
    eigenvalues: &[f64],
) -> Result<SpectrumRecord> {
    let scale = if normalized {
        1.0 / dim.normalizing_power(kappa)
    } else {
        1.0
    };
    let values: Vec<(f64, Option<u32>)> = eigenvalues
        .iter()
        .map(|l| (l.abs().sqrt() * scale, None))
        .collect();
    let mut meta = BTreeMap::new();
    meta.insert("grid_m".into(), format!("{}", grid.m));
    meta.insert("domain".into(), format!("[0,1]^{}", dim.n()));
    meta.insert("normalized".into(), format!("{normalized}"));
    meta.insert(
        "eig_mode".into(),
        match mode {
            EigenMode::Full => "full".into(),
            EigenMode::TopK(k) => format!("top_k={k}"),
        },
    );
    let tag = if normalized {
        OperatorTag::FarfieldFtilde
    } else {
        OperatorTag::FarfieldF
    };
    let record = SpectrumRecord::from_unsorted(dim, kappa, tag, values, meta);
    record.validate()?;
    Ok(record)
}
