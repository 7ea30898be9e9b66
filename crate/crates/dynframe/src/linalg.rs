//! Dense complex linear algebra shared by every other module.
//!
//! Matrices are `nalgebra` dynamic matrices over `Complex<f64>`; the heavy
//! decompositions (SVD, Hermitian eigensolves, general eigenvalues) are
//! delegated to `faer`, which stays fast at the sizes the commutant
//! computations reach. All operations are pure; values are immutable after
//! construction.
//!
//! Convention: the inner product `inner(f, g)` is linear in the FIRST
//! argument and conjugate-linear in the second, so analysis coefficients read
//! verbatim as `inner(x, f_w)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = nalgebra::DVector<C64>;

/// Default relative cutoff separating numerical rank from nullspace.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;
/// Relative cutoff used by the least-squares pseudo-inverse.
pub const LSTSQ_CUTOFF: f64 = 1e-12;

/// `<f, g>`, linear in `f`, conjugate-linear in `g`.
pub fn inner(f: &CVector, g: &CVector) -> C64 {
    g.dotc(f)
}

pub fn ensure_finite(m: &CMatrix, what: &str) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} contains NaN/Inf entries")))
    }
}

fn to_faer(m: &CMatrix) -> faer::Mat<faer::c64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| {
        let z = m[(i, j)];
        faer::c64::new(z.re, z.im)
    })
}

fn from_faer(m: faer::MatRef<'_, faer::c64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        let z = m[(i, j)];
        C64::new(z.re, z.im)
    })
}

/// Full or thin singular value decomposition `M = U diag(sigma) V*`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// Singular values, descending.
    pub singular_values: Vec<f64>,
    /// Left singular vectors (columns).
    pub u: CMatrix,
    /// Right singular vectors (columns), NOT conjugated.
    pub v: CMatrix,
}

impl SvdResult {
    /// Numerical rank at a relative cutoff.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let s0 = self.singular_values.first().copied().unwrap_or(0.0);
        self.singular_values.iter().filter(|&&s| s > rel_tol * s0).count()
    }

    /// `U diag(sigma) V*`.
    pub fn reconstruct(&self) -> CMatrix {
        let k = self.singular_values.len();
        let mut us = self.u.columns(0, k).clone_owned();
        for (j, &s) in self.singular_values.iter().enumerate() {
            us.column_mut(j).scale_mut(s);
        }
        &us * self.v.columns(0, k).adjoint()
    }
}

fn svd_impl(m: &CMatrix, full: bool) -> Result<SvdResult> {
    ensure_finite(m, "svd input")?;
    let fm = to_faer(m);
    let (u, s, v) = if full {
        let svd = fm
            .svd()
            .map_err(|e| Error::NonConvergence(format!("svd: {e:?}")))?;
        (
            from_faer(svd.U()),
            svd.S().column_vector().iter().map(|z| z.re).collect::<Vec<_>>(),
            from_faer(svd.V()),
        )
    } else {
        let svd = fm
            .thin_svd()
            .map_err(|e| Error::NonConvergence(format!("svd: {e:?}")))?;
        (
            from_faer(svd.U()),
            svd.S().column_vector().iter().map(|z| z.re).collect::<Vec<_>>(),
            from_faer(svd.V()),
        )
    };
    Ok(SvdResult { singular_values: s, u, v })
}

/// Thin SVD; singular values descending.
pub fn svd(m: &CMatrix) -> Result<SvdResult> {
    svd_impl(m, false)
}

/// Full SVD (square `U` and `V`), needed when the cokernel matters.
pub fn svd_full(m: &CMatrix) -> Result<SvdResult> {
    svd_impl(m, true)
}

/// Largest singular value.
pub fn op_norm(m: &CMatrix) -> Result<f64> {
    Ok(svd(m)?.singular_values.first().copied().unwrap_or(0.0))
}

/// Orthonormal basis of the numerical nullspace of `M` at a relative cutoff.
///
/// Dimension is `#{sigma_i <= tol * sigma_1}` counting the implicit zero
/// singular values of a wide matrix; the zero matrix yields the full space.
pub fn nullspace(m: &CMatrix, rel_tol: f64) -> Result<CMatrix> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::InvalidInput(format!("nullspace cutoff {rel_tol} outside (0,1)")));
    }
    // A full decomposition keeps the cokernel columns of V when cols > rows.
    let dec = if m.nrows() < m.ncols() { svd_full(m)? } else { svd(m)? };
    let s0 = dec.singular_values.first().copied().unwrap_or(0.0);
    let cutoff = rel_tol * s0;
    let mut cols: Vec<usize> = Vec::new();
    for j in 0..m.ncols() {
        let s = dec.singular_values.get(j).copied().unwrap_or(0.0);
        if s <= cutoff {
            cols.push(j);
        }
    }
    let mut out = CMatrix::zeros(m.ncols(), cols.len());
    for (k, &j) in cols.iter().enumerate() {
        out.set_column(k, &dec.v.column(j));
    }
    Ok(out)
}

/// Orthonormal basis of the numerical range of `M` at a relative cutoff.
pub fn orthonormal_range(m: &CMatrix, rel_tol: f64) -> Result<CMatrix> {
    let dec = svd(m)?;
    let r = dec.rank(rel_tol);
    Ok(dec.u.columns(0, r).clone_owned())
}

/// Moore-Penrose pseudo-inverse at a relative singular value cutoff.
pub fn pinv(m: &CMatrix, rel_tol: f64) -> Result<CMatrix> {
    let dec = svd(m)?;
    let s0 = dec.singular_values.first().copied().unwrap_or(0.0);
    let k = dec.singular_values.len();
    let mut vs = dec.v.columns(0, k).clone_owned();
    for (j, &s) in dec.singular_values.iter().enumerate() {
        let inv = if s > rel_tol * s0 && s > 0.0 { 1.0 / s } else { 0.0 };
        vs.column_mut(j).scale_mut(inv);
    }
    Ok(&vs * dec.u.columns(0, k).adjoint())
}

/// Minimum-norm least-squares solution of `M X = B` with its residual norm
/// (Frobenius over all right-hand sides).
pub fn lstsq(m: &CMatrix, b: &CMatrix) -> Result<(CMatrix, f64)> {
    lstsq_with_cutoff(m, b, LSTSQ_CUTOFF)
}

pub fn lstsq_with_cutoff(m: &CMatrix, b: &CMatrix, rel_tol: f64) -> Result<(CMatrix, f64)> {
    if m.nrows() != b.nrows() {
        return Err(Error::DimMismatch(format!(
            "lstsq: matrix has {} rows, rhs has {}",
            m.nrows(),
            b.nrows()
        )));
    }
    let x = pinv(m, rel_tol)? * b;
    let residual = (m * &x - b).norm();
    Ok((x, residual))
}

/// Vector-valued convenience wrapper over [`lstsq`].
pub fn lstsq_vec(m: &CMatrix, b: &CVector) -> Result<(CVector, f64)> {
    let rhs = CMatrix::from_column_slice(b.len(), 1, b.as_slice());
    let (x, residual) = lstsq(m, &rhs)?;
    Ok((CVector::from_column_slice(x.as_slice()), residual))
}

/// Eigendecomposition of a Hermitian matrix: eigenvalues ascending with
/// orthonormal eigenvectors. The input is symmetrized internally; deviations
/// beyond `1e-10 * ||M||` are rejected.
pub fn eig_hermitian(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    ensure_finite(m, "eig_hermitian input")?;
    if m.nrows() != m.ncols() {
        return Err(Error::DimMismatch(format!("eig_hermitian: {}x{}", m.nrows(), m.ncols())));
    }
    let norm = m.norm();
    let dev = (m - m.adjoint()).norm();
    if norm > 0.0 && dev > 1e-10 * norm {
        return Err(Error::NotHermitian { deviation: dev / norm });
    }
    let h = (m + m.adjoint()).scale(0.5);
    let eig = to_faer(&h)
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::NonConvergence(format!("eig_hermitian: {e:?}")))?;
    let mut pairs: Vec<(f64, usize)> = eig
        .S()
        .column_vector()
        .iter()
        .map(|z| z.re)
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let vecs = from_faer(eig.U());
    let n = m.nrows();
    let mut values = Vec::with_capacity(n);
    let mut sorted = CMatrix::zeros(n, n);
    for (k, (l, i)) in pairs.into_iter().enumerate() {
        values.push(l);
        sorted.set_column(k, &vecs.column(i));
    }
    Ok((values, sorted))
}

/// Inverse of a Hermitian positive definite matrix through its
/// eigendecomposition. Fails as [`Error::NotAFrame`] when the smallest
/// eigenvalue is not positive at the rank cutoff.
pub fn hermitian_inverse(m: &CMatrix) -> Result<CMatrix> {
    let (values, vectors) = eig_hermitian(m)?;
    let top = values.last().copied().unwrap_or(0.0);
    let bottom = values.first().copied().unwrap_or(0.0);
    if !(bottom > DEFAULT_RANK_TOL * top && top > 0.0) {
        return Err(Error::NotAFrame { lower: bottom.max(0.0), upper: top });
    }
    let mut scaled = vectors.clone();
    for (j, &l) in values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(1.0 / l);
    }
    Ok(&scaled * vectors.adjoint())
}

/// Spectral radius `max |lambda_i|` from a general eigenvalue computation.
pub fn spectral_radius(m: &CMatrix) -> Result<f64> {
    ensure_finite(m, "spectral_radius input")?;
    if m.nrows() != m.ncols() {
        return Err(Error::DimMismatch(format!("spectral_radius: {}x{}", m.nrows(), m.ncols())));
    }
    if m.nrows() == 0 {
        return Ok(0.0);
    }
    let ev = to_faer(m)
        .eigenvalues::<faer::c64>()
        .map_err(|e| Error::NonConvergence(format!("spectral_radius: {e:?}")))?;
    Ok(ev.iter().map(|z| (z.re * z.re + z.im * z.im).sqrt()).fold(0.0, f64::max))
}

/// Largest principal-angle sine between the column spaces of two matrices
/// with orthonormal columns. Returns 1.0 when the dimensions differ; this is
/// exactly the operator norm of the difference of the two orthogonal
/// projectors when they agree.
pub fn subspace_sine(qa: &CMatrix, qb: &CMatrix) -> Result<f64> {
    if qa.nrows() != qb.nrows() {
        return Err(Error::DimMismatch("subspace_sine: ambient dimensions differ".into()));
    }
    if qa.ncols() != qb.ncols() {
        return Ok(1.0);
    }
    if qa.ncols() == 0 {
        return Ok(0.0);
    }
    let cross = qa.adjoint() * qb;
    let ra = qb - qa * &cross;
    let rb = qa - qb * cross.adjoint();
    Ok(op_norm(&ra)?.max(op_norm(&rb)?).min(1.0))
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

/// Wire format for dense complex matrices: row-major real and imaginary
/// parts. Vectors are `r x 1` matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

pub fn mat_to_json(m: &CMatrix) -> MatrixJson {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut re = Vec::with_capacity(rows * cols);
    let mut im = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            re.push(m[(i, j)].re);
            im.push(m[(i, j)].im);
        }
    }
    MatrixJson { rows, cols, re, im }
}

pub fn mat_from_json(j: &MatrixJson) -> Result<CMatrix> {
    if j.rows == 0 || j.cols == 0 {
        return Err(Error::InvalidInput("matrix dimensions must be positive".into()));
    }
    let n = j.rows * j.cols;
    if j.re.len() != n || j.im.len() != n {
        return Err(Error::InvalidInput(format!(
            "matrix payload length {}/{} does not match {}x{}",
            j.re.len(),
            j.im.len(),
            j.rows,
            j.cols
        )));
    }
    let m = CMatrix::from_fn(j.rows, j.cols, |i, k| {
        let idx = i * j.cols + k;
        C64::new(j.re[idx], j.im[idx])
    });
    ensure_finite(&m, "matrix JSON")?;
    Ok(m)
}

pub fn vec_to_json(v: &CVector) -> MatrixJson {
    mat_to_json(&CMatrix::from_column_slice(v.len(), 1, v.as_slice()))
}

pub fn vec_from_json(j: &MatrixJson) -> Result<CVector> {
    if j.cols != 1 {
        return Err(Error::InvalidInput(format!("expected a column vector, got {} cols", j.cols)));
    }
    let m = mat_from_json(j)?;
    Ok(CVector::from_column_slice(m.as_slice()))
}
