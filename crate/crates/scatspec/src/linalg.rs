//! Small dense linear-algebra kernels: LU determinant with partial
//! pivoting, Householder tridiagonalization, implicit-shift QL, and Lanczos
//! with full reorthogonalization for the leading eigenvalues.
//!
//! Kernels are single-threaded except the Lanczos matrix-vector product,
//! which parallelizes across rows with per-row (fixed-order) reductions.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

/// Determinant by LU factorization with partial pivoting; singular
/// matrices give 0.
pub fn lu_determinant(m: &DenseMatrix) -> f64 {
    assert_eq!(m.rows, m.cols, "lu_determinant requires a square matrix");
    assert!(m.rows <= 64, "lu_determinant caps the size at 64");
    let n = m.rows;
    if n == 0 {
        return 1.0;
    }
    let mut a = m.data.clone();
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_abs = a[col * n + col].abs();
        for r in col + 1..n {
            let v = a[r * n + col].abs();
            if v > pivot_abs {
                pivot_abs = v;
                pivot_row = r;
            }
        }
        if pivot_abs == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(col * n + j, pivot_row * n + j);
            }
            det = -det;
        }
        let pivot = a[col * n + col];
        det *= pivot;
        for r in col + 1..n {
            let factor = a[r * n + col] / pivot;
            if factor != 0.0 {
                for j in col + 1..n {
                    a[r * n + j] -= factor * a[col * n + j];
                }
            }
        }
    }
    det
}

/// Dense real symmetric matrix, full row-major storage. Writes go through
/// [`SymmetricMatrixBuffer::set_sym`], which mirrors the entry, so the
/// buffer is symmetric by construction.
#[derive(Clone, Debug)]
pub struct SymmetricMatrixBuffer {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrixBuffer {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Takes ownership of a full row-major buffer that is already symmetric.
    pub fn from_raw(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `y = A x`, rows in parallel, each row summed in index order.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        let n = self.n;
        let data = &self.data;
        let out = crate::exec::map_indexed(n, |i| {
            let row = &data[i * n..(i + 1) * n];
            let mut s = 0.0;
            for (a, b) in row.iter().zip(x) {
                s += a * b;
            }
            s
        });
        y.copy_from_slice(&out);
    }
}

/// Symmetric linear map given by its action; lets Lanczos run without
/// materializing the matrix.
pub trait SymmetricOperator: Sync {
    fn size(&self) -> usize;
    /// `y = A x`; must be deterministic for fixed input.
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

impl SymmetricOperator for SymmetricMatrixBuffer {
    fn size(&self) -> usize {
        SymmetricMatrixBuffer::size(self)
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.matvec(x, y);
    }
}

/// Eigenvalue extraction mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenMode {
    /// Householder tridiagonalization + implicit-shift QL; all eigenvalues.
    Full,
    /// Lanczos with full reorthogonalization; the `k` largest eigenvalues.
    TopK(usize),
}

/// Cap for the dense path of [`symmetric_eigenvalues`].
pub const FULL_SOLVER_CAP: usize = 5000;

/// All or top-k eigenvalues, descending.
pub fn symmetric_eigenvalues(m: &SymmetricMatrixBuffer, mode: EigenMode) -> Result<Vec<f64>> {
    match mode {
        EigenMode::Full => {
            if m.size() > FULL_SOLVER_CAP {
                return Err(Error::MemoryCap {
                    rows: m.size(),
                    cap: FULL_SOLVER_CAP,
                });
            }
            let eig = eigen_symmetric_full(m, false)?;
            let mut vals = eig.values;
            vals.reverse();
            Ok(vals)
        }
        EigenMode::TopK(k) => {
            if k > m.size() {
                return Err(Error::Domain(format!(
                    "top_k = {k} exceeds the matrix size {}",
                    m.size()
                )));
            }
            lanczos_topk(m, k, &LanczosOptions::default())
        }
    }
}

/// Full symmetric eigendecomposition; values ascending, eigenvector `j`
/// stored in column `j` when requested.
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Option<DenseMatrix>,
}

pub fn eigen_symmetric_full(
    m: &SymmetricMatrixBuffer,
    want_vectors: bool,
) -> Result<SymmetricEigen> {
    let n = m.size();
    if n == 0 {
        return Ok(SymmetricEigen {
            values: vec![],
            vectors: want_vectors.then(|| DenseMatrix::zeros(0, 0)),
        });
    }
    let mut z = m.data().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut z, n, &mut d, &mut e, want_vectors);
    ql_implicit(
        &mut d,
        &mut e,
        if want_vectors { Some(&mut z) } else { None },
        n,
    )?;
    // ascending sort, permuting columns alongside when present
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("eigenvalues are finite"));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors = want_vectors.then(|| {
        let mut v = DenseMatrix::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..n {
                v.set(row, new_col, z[row * n + old_col]);
            }
        }
        v
    });
    Ok(SymmetricEigen { values, vectors })
}

/// Householder reduction to tridiagonal form (EISPACK tred2 lineage).
/// On exit `d` holds the diagonal, `e[1..]` the subdiagonal; with
/// `accumulate` the transformation matrix is left in `z`.
fn tridiagonalize(z: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64], accumulate: bool) {
    for j in 0..n {
        d[j] = z[(n - 1) * n + j];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = z[(i - 1) * n + j];
                z[i * n + j] = 0.0;
                z[j * n + i] = 0.0;
            }
        } else {
            for item in d.iter_mut().take(i) {
                *item /= scale;
                h += *item * *item;
            }
            let mut f = d[i - 1];
            let mut g = if f > 0.0 { -h.sqrt() } else { h.sqrt() };
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }
            for j in 0..i {
                f = d[j];
                z[j * n + i] = f;
                g = e[j] + z[j * n + j] * f;
                for k in j + 1..i {
                    g += z[k * n + j] * d[k];
                    e[k] += z[k * n + j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    z[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = z[(i - 1) * n + j];
                z[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }

    if accumulate {
        for i in 0..n - 1 {
            z[(n - 1) * n + i] = z[i * n + i];
            z[i * n + i] = 1.0;
            let h = d[i + 1];
            if h != 0.0 {
                for k in 0..=i {
                    d[k] = z[k * n + (i + 1)] / h;
                }
                for j in 0..=i {
                    let mut g = 0.0;
                    for k in 0..=i {
                        g += z[k * n + (i + 1)] * z[k * n + j];
                    }
                    for k in 0..=i {
                        z[k * n + j] -= g * d[k];
                    }
                }
            }
            for k in 0..=i {
                z[k * n + (i + 1)] = 0.0;
            }
        }
        for j in 0..n {
            d[j] = z[(n - 1) * n + j];
            z[(n - 1) * n + j] = 0.0;
        }
        z[(n - 1) * n + (n - 1)] = 1.0;
    } else {
        for j in 0..n {
            d[j] = z[j * n + j];
        }
    }
    e[0] = 0.0;
}

/// Implicit-shift QL on a symmetric tridiagonal; iteration cap 30 per
/// eigenvalue. Rotations are applied to the columns of `z` when given.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>, n: usize) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    // negligibility is judged against the matrix scale: rank-deficient
    // inputs leave long stretches of noise-level entries that a locally
    // relative test never deflates
    let anorm = (0..n)
        .map(|i| d[i].abs() + e[i].abs())
        .fold(0.0_f64, f64::max);
    let threshold = f64::EPSILON * anorm.max(f64::MIN_POSITIVE);
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // find a negligible subdiagonal element
            let mut m = l;
            while m + 1 < n {
                if e[m].abs() <= threshold {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 30 {
                return Err(Error::EigenIterations {
                    index: l,
                    max_iterations: 30,
                });
            }
            // Wilkinson shift
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflowed = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // rotation annihilated early; recover and re-sweep
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflowed = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        f = z[k * n + (i + 1)];
                        z[k * n + (i + 1)] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if underflowed {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Options for the restarted Lanczos eigensolver.
#[derive(Clone, Debug)]
pub struct LanczosOptions {
    /// Ritz residual tolerance, relative to the largest |eigenvalue|.
    pub tolerance: f64,
    /// Hard cap on the Krylov basis size per restart round.
    pub max_subspace: usize,
    /// Number of deflation restarts; each round re-seeds orthogonally to
    /// the locked eigenvectors, which is what recovers degenerate copies.
    pub max_rounds: usize,
    /// Seed for the deterministic start vectors.
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_subspace: 600,
            max_rounds: 16,
            seed: 0x5ca75bec,
        }
    }
}

/// Leading `k` eigenvalues (descending, by signed value) of a symmetric
/// matrix by Lanczos with full reorthogonalization and deflation restarts.
pub fn lanczos_topk(
    m: &SymmetricMatrixBuffer,
    k: usize,
    opts: &LanczosOptions,
) -> Result<Vec<f64>> {
    lanczos_topk_op(m, k, opts)
}

/// Matrix-free variant of [`lanczos_topk`]: only the operator action is
/// needed, so kernel-structured matrices never have to be materialized.
pub fn lanczos_topk_op<A: SymmetricOperator + ?Sized>(
    m: &A,
    k: usize,
    opts: &LanczosOptions,
) -> Result<Vec<f64>> {
    let n = m.size();
    if k == 0 {
        return Ok(vec![]);
    }
    if k > n {
        return Err(Error::Domain(format!(
            "top_k = {k} exceeds the matrix size {n}"
        )));
    }
    if k == n || n <= 32 {
        // small problems: materialize through unit vectors and go dense
        let mut dense = SymmetricMatrixBuffer::zeros(n);
        let mut unit = vec![0.0; n];
        let mut col = vec![0.0; n];
        for j in 0..n {
            unit[j] = 1.0;
            m.apply(&unit, &mut col);
            unit[j] = 0.0;
            for (i, v) in col.iter().enumerate().skip(j) {
                dense.set_sym(i, j, *v);
            }
        }
        let mut vals = eigen_symmetric_full(&dense, false)?.values;
        vals.reverse();
        vals.truncate(k);
        return Ok(vals);
    }

    let mut locked_vals: Vec<f64> = Vec::new();
    let mut locked_vecs: Vec<Vec<f64>> = Vec::new();
    let mut rng = SplitMix64::new(opts.seed);
    let mut carried_seed: Option<Vec<f64>> = None;

    for _round in 0..opts.max_rounds {
        if locked_vals.len() >= k {
            break;
        }
        let remaining = k - locked_vals.len();
        let budget = (2 * remaining + 64)
            .max(96)
            .min(opts.max_subspace)
            .min(n - locked_vecs.len());
        if budget == 0 {
            break;
        }
        let v0 = match carried_seed.take() {
            Some(mut v) => {
                for q in &locked_vecs {
                    let c = dot(&v, q);
                    axpy(&mut v, -c, q);
                }
                let nrm = norm(&v);
                if nrm > 1e-6 {
                    scale(&mut v, 1.0 / nrm);
                    Some(v)
                } else {
                    fresh_start_vector(n, &locked_vecs, &mut rng)
                }
            }
            None => fresh_start_vector(n, &locked_vecs, &mut rng),
        };
        let Some(v0) = v0 else {
            break; // locked vectors already span everything reachable
        };

        let mut basis: Vec<Vec<f64>> = vec![v0];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut w = vec![0.0; n];
        let mut exhausted = false;

        while alpha.len() < budget && !exhausted {
            let j = alpha.len();
            m.apply(&basis[j], &mut w);
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            // full reorthogonalization against locked and current bases
            for _ in 0..2 {
                for q in &locked_vecs {
                    let c = dot(&w, q);
                    axpy(&mut w, -c, q);
                }
                for q in &basis {
                    let c = dot(&w, q);
                    axpy(&mut w, -c, q);
                }
            }
            let b = norm(&w);
            if b < 1e-13 {
                exhausted = true;
            } else {
                beta.push(b);
                let mut next = w.clone();
                scale(&mut next, 1.0 / b);
                basis.push(next);
            }
        }

        if alpha.is_empty() {
            continue;
        }

        // Ritz values/vectors of the small tridiagonal section
        let s = alpha.len();
        let mut tri = SymmetricMatrixBuffer::zeros(s);
        for i in 0..s {
            tri.set_sym(i, i, alpha[i]);
            if i + 1 < s {
                tri.set_sym(i, i + 1, beta[i]);
            }
        }
        let eig = eigen_symmetric_full(&tri, true)?;
        let vecs = eig.vectors.expect("vectors requested");
        let scale_ref = eig
            .values
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        let tail_beta = if exhausted { 0.0 } else { beta[s - 1] };

        // Lock converged Ritz pairs from the top down, stopping at the
        // first unconverged one: anything above the locked set stays in the
        // complement and is picked up by a later round, so the locked set
        // is always a prefix of the reachable spectrum.
        let mut locked_this_round = 0usize;
        for idx in (0..s).rev() {
            if locked_vals.len() >= k {
                break;
            }
            let theta = eig.values[idx];
            let residual = tail_beta * vecs.at(s - 1, idx).abs();
            if residual > opts.tolerance * scale_ref {
                if locked_this_round == 0 && !exhausted {
                    // carry the best unconverged Ritz vector into the next
                    // round instead of starting from scratch
                    let mut y = vec![0.0; n];
                    for (j, base_vec) in basis.iter().take(s).enumerate() {
                        axpy(&mut y, vecs.at(j, idx), base_vec);
                    }
                    carried_seed = Some(y);
                }
                break;
            }
            let mut y = vec![0.0; n];
            for (j, base_vec) in basis.iter().take(s).enumerate() {
                axpy(&mut y, vecs.at(j, idx), base_vec);
            }
            for q in &locked_vecs {
                let c = dot(&y, q);
                axpy(&mut y, -c, q);
            }
            let nrm = norm(&y);
            if nrm < 1e-8 {
                continue; // numerically a duplicate of a locked vector
            }
            scale(&mut y, 1.0 / nrm);
            locked_vals.push(theta);
            locked_vecs.push(y);
            locked_this_round += 1;
        }
    }

    let mut sorted = locked_vals.clone();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    if locked_vals.len() < k {
        return Err(Error::LanczosConvergence {
            requested: k,
            converged: locked_vals.len(),
            partial: sorted,
        });
    }
    sorted.truncate(k);
    Ok(sorted)
}

/// Deterministic start vector orthogonal to the locked set.
fn fresh_start_vector(n: usize, locked: &[Vec<f64>], rng: &mut SplitMix64) -> Option<Vec<f64>> {
    for _attempt in 0..8 {
        let mut v: Vec<f64> = (0..n).map(|_| rng.next_symmetric()).collect();
        for _ in 0..2 {
            for q in locked {
                let c = dot(&v, q);
                axpy(&mut v, -c, q);
            }
        }
        let nrm = norm(&v);
        if nrm > 1e-6 {
            scale(&mut v, 1.0 / nrm);
            return Some(v);
        }
    }
    None
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn scale(v: &mut [f64], s: f64) {
    for x in v.iter_mut() {
        *x *= s;
    }
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}
