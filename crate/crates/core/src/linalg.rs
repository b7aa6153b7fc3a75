//! Row-major adapters over faer decompositions.

use faer::{Mat, MatRef, Side};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub(crate) fn view(data: &[C64], rows: usize, cols: usize) -> MatRef<'_, C64> {
    MatRef::from_row_major_slice(data, rows, cols)
}

pub(crate) fn to_row_major(m: MatRef<'_, C64>) -> Vec<C64> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut out = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            out.push(m[(i, j)]);
        }
    }
    out
}

/// `a (m x k) · b (k x n)`, all row-major.
pub fn matmul(a: &[C64], b: &[C64], m: usize, k: usize, n: usize) -> Vec<C64> {
    let prod: Mat<C64> = view(a, m, k) * view(b, k, n);
    to_row_major(prod.as_ref())
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(data: &[C64], dim: usize) -> Result<Vec<f64>> {
    view(data, dim, dim)
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Numerical(format!("eigensolver: {e:?}")))
}

/// Thin SVD `A = U diag(s) V^H` of a row-major `rows x cols` matrix. Returns
/// `U` (`rows x k`, row-major), `s` (descending) and `V^H` (`k x cols`).
pub struct ThinSvd {
    pub u: Vec<C64>,
    pub s: Vec<f64>,
    pub vh: Vec<C64>,
    pub rank: usize,
}

/// Non-square inputs are first reduced to a square triangular factor by QR
/// along the long dimension. faer's direct thin SVD loses ~1e-8 in
/// reconstruction on rectangular inputs with many exactly-zero singular
/// values, which symmetric MPS bonds produce routinely.
pub fn thin_svd(data: &[C64], rows: usize, cols: usize) -> Result<ThinSvd> {
    let a = view(data, rows, cols);
    let rank = rows.min(cols);
    let err = |e| Error::Numerical(format!("svd: {e:?}"));
    let (u, s, v): (Mat<C64>, Vec<f64>, Mat<C64>) = if rows > cols {
        let qr = a.qr();
        let q = qr.compute_thin_Q();
        let svd = qr.thin_R().svd().map_err(err)?;
        let s = svd.S().column_vector().iter().map(|x| x.re).collect();
        (&q * svd.U(), s, svd.V().to_owned())
    } else if rows < cols {
        let qr = a.adjoint().qr();
        let q = qr.compute_thin_Q();
        let svd = qr.thin_R().adjoint().svd().map_err(err)?;
        let s = svd.S().column_vector().iter().map(|x| x.re).collect();
        (svd.U().to_owned(), s, &q * svd.V())
    } else {
        let svd = a.svd().map_err(err)?;
        let s = svd.S().column_vector().iter().map(|x| x.re).collect();
        (svd.U().to_owned(), s, svd.V().to_owned())
    };
    let u = to_row_major(u.as_ref());
    let mut vh = Vec::with_capacity(rank * cols);
    for i in 0..rank {
        for j in 0..cols {
            vh.push(v[(j, i)].conj());
        }
    }
    Ok(ThinSvd { u, s, vh, rank })
}

/// Thin QR of a row-major matrix: `Q` (`rows x k`) and `R` (`k x cols`).
pub fn thin_qr(data: &[C64], rows: usize, cols: usize) -> (Vec<C64>, Vec<C64>, usize) {
    let qr = view(data, rows, cols).qr();
    let q = qr.compute_thin_Q();
    let r = qr.thin_R();
    let k = rows.min(cols);
    (to_row_major(q.as_ref()), to_row_major(r), k)
}
