//! Small shared helpers on complex matrices: norms, hermitian checks,
//! span bookkeeping for Krylov-style breadth-first searches, and
//! polynomial root finding via the companion matrix.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Eigh, Norm, SVD, UPLO};
use num_complex::Complex64 as C64;

pub fn eye(n: usize) -> Array2<C64> {
    Array2::eye(n)
}

pub fn e1(n: usize) -> Array1<C64> {
    let mut v = Array1::zeros(n);
    v[0] = C64::new(1.0, 0.0);
    v
}

pub fn dagger(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

pub fn hermitian_part(m: &Array2<C64>) -> Array2<C64> {
    (m + &dagger(m)).mapv(|z| z * 0.5)
}

/// `(M - M*) / 2i`, the matrix imaginary part.
pub fn imag_part(m: &Array2<C64>) -> Array2<C64> {
    (m - &dagger(m)).mapv(|z| z * C64::new(0.0, -0.5))
}

pub fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_defect(m: &Array2<C64>) -> f64 {
    max_abs(&(m - &dagger(m)))
}

pub fn fro_norm(m: &Array2<C64>) -> f64 {
    m.norm_l2()
}

/// Operator norm = largest singular value.
pub fn op_norm(m: &Array2<C64>) -> f64 {
    let (_, s, _) = m.svd(false, false).expect("svd failed");
    s.iter().copied().fold(0.0, f64::max)
}

pub fn smallest_sv(m: &Array2<C64>) -> f64 {
    let (_, s, _) = m.svd(false, false).expect("svd failed");
    s.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Smallest eigenvalue of a hermitian matrix.
pub fn min_eig_hermitian(m: &Array2<C64>) -> f64 {
    let (vals, _) = m.eigh(UPLO::Lower).expect("eigh failed");
    vals.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Kronecker product `a (x) b`.
pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[[i, j]];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[[i * rb + k, j * cb + l]] = aij * b[[k, l]];
                }
            }
        }
    }
    out
}

/// Column-major vectorization, so that `vec(A R B) = (B^t (x) A) vec(R)`.
pub fn vec_mat(m: &Array2<C64>) -> Array1<C64> {
    let (r, c) = m.dim();
    let mut v = Array1::zeros(r * c);
    for j in 0..c {
        for i in 0..r {
            v[j * r + i] = m[[i, j]];
        }
    }
    v
}

pub fn unvec_mat(v: &Array1<C64>, rows: usize, cols: usize) -> Array2<C64> {
    let mut m = Array2::zeros((rows, cols));
    for j in 0..cols {
        for i in 0..rows {
            m[[i, j]] = v[j * rows + i];
        }
    }
    m
}

/// Roots of `c_0 + c_1 z + ... + c_n z^n` via the companion matrix.
/// Leading coefficients smaller than `1e-14 * max|c|` are stripped.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut cs: Vec<C64> = coeffs.to_vec();
    while let Some(last) = cs.last() {
        if last.norm() <= 1e-14 * scale && cs.len() > 1 {
            cs.pop();
        } else {
            break;
        }
    }
    let n = cs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = cs[n];
    let mut comp = Array2::<C64>::zeros((n, n));
    for i in 1..n {
        comp[[i, i - 1]] = C64::new(1.0, 0.0);
    }
    for i in 0..n {
        comp[[i, n - 1]] = -cs[i] / lead;
    }
    let (vals, _) = comp.eig().expect("companion eig failed");
    vals.to_vec()
}

/// Outcome of offering a vector to a [`SpanBasis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanAdd {
    Added,
    InSpan,
}

/// Orthonormal basis accumulated by Gram-Schmidt with re-orthogonalization.
/// Residuals are judged against `tol * scale` where `scale` is the largest
/// vector norm seen; residuals within a factor 10 of the threshold set the
/// `ambiguous` flag.
pub struct SpanBasis {
    basis: Vec<Array1<C64>>,
    tol: f64,
    scale: f64,
    pub ambiguous: bool,
}

impl SpanBasis {
    pub fn new(tol: f64) -> Self {
        SpanBasis {
            basis: Vec::new(),
            tol,
            scale: 0.0,
            ambiguous: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> &[Array1<C64>] {
        &self.basis
    }

    fn project_out(&self, v: &mut Array1<C64>) {
        for b in &self.basis {
            let c: C64 = b.iter().zip(v.iter()).map(|(bi, vi)| bi.conj() * vi).sum();
            *v = &*v - &b.mapv(|z| z * c);
        }
    }

    /// Norm of the component of `v` orthogonal to the current span.
    pub fn residual_norm(&self, v: &Array1<C64>) -> f64 {
        let mut w = v.clone();
        self.project_out(&mut w);
        self.project_out(&mut w);
        w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn offer(&mut self, v: &Array1<C64>) -> SpanAdd {
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        self.scale = self.scale.max(norm);
        if self.scale == 0.0 {
            return SpanAdd::InSpan;
        }
        let mut w = v.clone();
        self.project_out(&mut w);
        self.project_out(&mut w);
        let r = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let thr = self.tol * self.scale;
        if r > thr / 10.0 && r < thr * 10.0 {
            self.ambiguous = true;
        }
        if r <= thr {
            SpanAdd::InSpan
        } else {
            let wn = w.mapv(|z| z / r);
            self.basis.push(wn);
            SpanAdd::Added
        }
    }

    /// True if the span is all of the ambient space.
    pub fn is_full(&self, n: usize) -> bool {
        self.basis.len() == n
    }
}
