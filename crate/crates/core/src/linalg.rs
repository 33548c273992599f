//! Dense complex linear algebra used by the rest of the kernel.
//!
//! Everything here is self-contained (no BLAS/LAPACK) so the crate stays
//! `no_std`-compatible.  The eigensolver is a cyclic Jacobi iteration for
//! Hermitian matrices; the SVD is a one-sided Jacobi iteration, which keeps
//! relative accuracy on small singular values — that matters because rank
//! decisions downstream threshold at `eps * sigma_max`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex64;

use crate::error::Error;

/// Convenience constructor for a complex scalar.
#[inline]
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// |z| without relying on std float methods.
#[inline]
pub fn cabs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// Conjugate-linear-in-the-first-argument inner product of two vectors.
pub fn vdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x.conj() * y;
    }
    acc
}

/// Euclidean norm of a complex vector.
pub fn vnorm(a: &[Complex64]) -> f64 {
    let mut acc = 0.0;
    for x in a {
        acc += x.re * x.re + x.im * x.im;
    }
    libm::sqrt(acc)
}

/// Deterministic RNG used everywhere randomness is needed.
pub fn rng_from_seed(seed: u64) -> rand_chacha::ChaCha12Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha12Rng::seed_from_u64(seed)
}

/// Uniform complex scalar with re, im in [-1, 1].
pub fn random_complex<R: rand::Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut m = CMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Square diagonal matrix from complex entries.
    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = *e;
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn dagger(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            t += self[(i, i)];
        }
        t
    }

    /// Hilbert-Schmidt inner product Tr(self† other).
    pub fn hs_dot(&self, other: &CMatrix) -> Complex64 {
        debug_assert_eq!(self.rows, other.rows);
        debug_assert_eq!(self.cols, other.cols);
        vdot(&self.data, &other.data)
    }

    pub fn frob_norm(&self) -> f64 {
        vnorm(&self.data)
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0;
        for z in &self.data {
            let a = cabs(*z);
            if a > m {
                m = a;
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> CMatrix {
        let mut out = self.clone();
        for z in &mut out.data {
            *z *= s;
        }
        out
    }

    pub fn scale_c(&self, s: Complex64) -> CMatrix {
        let mut out = self.clone();
        for z in &mut out.data {
            *z *= s;
        }
        out
    }

    /// (self + self†)/2; also forces the diagonal to be exactly real.
    pub fn hermitize(&self) -> CMatrix {
        debug_assert!(self.is_square());
        let n = self.rows;
        let mut out = CMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let z = (self[(r, c)] + self[(c, r)].conj()) * 0.5;
                out[(r, c)] = if r == c { Complex64::new(z.re, 0.0) } else { z };
            }
        }
        out
    }

    /// Frobenius norm of self - self†.
    pub fn herm_defect(&self) -> f64 {
        (self - &self.dagger()).frob_norm()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Complex64]) {
        debug_assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    /// Horizontally stack columns of `cols_of` (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Complex64>]) -> CMatrix {
        let mut m = CMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            m.set_column(j, col);
        }
        m
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(v.len(), self.cols);
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for r in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            let base = r * self.cols;
            for c in 0..self.cols {
                acc += self.data[base + c] * v[c];
            }
            out[r] = acc;
        }
        out
    }

    /// Kronecker product: (self ⊗ other)[(i*p + k), (j*q + l)] = self[i,j] * other[k,l].
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (p, q) = (other.rows, other.cols);
        let mut out = CMatrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out[(i * p + k, j * q + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Max-abs entrywise distance.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        debug_assert_eq!(self.rows, other.rows);
        debug_assert_eq!(self.cols, other.cols);
        let mut m = 0.0;
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            let d = cabs(*a - *b);
            if d > m {
                m = d;
            }
        }
        m
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.cols, rhs.cols);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += *b;
        }
        out
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.cols, rhs.cols);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a -= *b;
        }
        out
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(-1.0)
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rb = k * rhs.cols;
                let ob = r * rhs.cols;
                for c in 0..rhs.cols {
                    out.data[ob + c] += a * rhs.data[rb + c];
                }
            }
        }
        out
    }
}

/// AB - BA.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    &(a * b) - &(b * a)
}

const JACOBI_MAX_SWEEPS: usize = 64;

/// Off-diagonal Frobenius norm squared.
fn off_diag_sq(w: &CMatrix) -> f64 {
    let n = w.rows;
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                let z = w[(p, q)];
                s += z.re * z.re + z.im * z.im;
            }
        }
    }
    s
}

/// Eigendecomposition of a Hermitian matrix via cyclic Jacobi rotations.
///
/// Returns `(eigenvalues ascending, U)` with `A = U diag(λ) U†` and the
/// columns of `U` orthonormal eigenvectors.  Fails with `NotSelfAdjoint`
/// if the input is not Hermitian at a loose tolerance, and with
/// `NumericalFailure` if the sweep budget is exhausted.
pub fn eigh(a: &CMatrix) -> Result<(Vec<f64>, CMatrix), Error> {
    assert!(a.is_square());
    let n = a.rows;
    let scale = a.frob_norm();
    if scale > 0.0 {
        let defect = a.herm_defect();
        if defect > 1e-8 * (1.0 + scale) {
            return Err(Error::NotSelfAdjoint { defect });
        }
    }
    let mut w = a.hermitize();
    let mut v = CMatrix::identity(n);
    if n <= 1 {
        let evals = (0..n).map(|i| w[(i, i)].re).collect();
        return Ok((evals, v));
    }
    let target = 1e-28 * (scale * scale).max(f64::MIN_POSITIVE);
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diag_sq(&w) <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let z = w[(p, q)];
                let r = cabs(z);
                if r <= 1e-300 {
                    continue;
                }
                let ph = z / r;
                let alpha = w[(p, p)].re;
                let gamma = w[(q, q)].re;
                let tau = (gamma - alpha) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                let sig = ph * s; // rotation: col_p' = c col_p - conj(sig) col_q; col_q' = sig col_p + c col_q
                let sig_conj = sig.conj();
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    let new_p = wip * c - wiq * sig_conj;
                    let new_q = wip * sig + wiq * c;
                    w[(i, p)] = new_p;
                    w[(i, q)] = new_q;
                    w[(p, i)] = new_p.conj();
                    w[(q, i)] = new_q.conj();
                }
                w[(p, p)] = Complex64::new(alpha - t * r, 0.0);
                w[(q, q)] = Complex64::new(gamma + t * r, 0.0);
                w[(p, q)] = Complex64::new(0.0, 0.0);
                w[(q, p)] = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * sig_conj;
                    v[(i, q)] = vip * sig + viq * c;
                }
            }
        }
    }
    if !converged && off_diag_sq(&w) > target {
        return Err(Error::NumericalFailure("jacobi eigensolver did not converge"));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        w[(i, i)]
            .re
            .partial_cmp(&w[(j, j)].re)
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let evals: Vec<f64> = order.iter().map(|&i| w[(i, i)].re).collect();
    let mut u = CMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            u[(i, new_j)] = v[(i, old_j)];
        }
    }
    Ok((evals, u))
}

/// Thin singular value decomposition `A = U Σ V†`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// rows × k, orthonormal columns (k = min(rows, cols)).
    pub u: CMatrix,
    /// Singular values, descending.
    pub sigma: Vec<f64>,
    /// cols × k, orthonormal columns.
    pub v: CMatrix,
}

/// One-sided Jacobi SVD.  Works on the columns directly (never forms A†A),
/// which preserves the relative accuracy of small singular values.
pub fn svd(a: &CMatrix) -> Result<Svd, Error> {
    if a.rows < a.cols {
        // Decompose the adjoint (tall) and swap the roles of U and V.
        let s = svd(&a.dagger())?;
        return Ok(Svd {
            u: s.v,
            sigma: s.sigma,
            v: s.u,
        });
    }
    let (m, n) = (a.rows, a.cols);
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v = CMatrix::identity(n);
    if n > 1 {
        let mut converged = false;
        for _ in 0..JACOBI_MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let aa = {
                        let mut s = 0.0;
                        for z in &w[p] {
                            s += z.re * z.re + z.im * z.im;
                        }
                        s
                    };
                    let bb = {
                        let mut s = 0.0;
                        for z in &w[q] {
                            s += z.re * z.re + z.im * z.im;
                        }
                        s
                    };
                    if aa <= 1e-300 || bb <= 1e-300 {
                        continue;
                    }
                    let z = vdot(&w[p], &w[q]);
                    let r = cabs(z);
                    if r <= 1e-15 * libm::sqrt(aa * bb) {
                        continue;
                    }
                    rotated = true;
                    let ph = z / r;
                    let tau = (bb - aa) / (2.0 * r);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                    } else {
                        -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                    };
                    let c = 1.0 / libm::sqrt(1.0 + t * t);
                    let s = t * c;
                    let sig = ph * s;
                    let sig_conj = sig.conj();
                    for i in 0..m {
                        let wip = w[p][i];
                        let wiq = w[q][i];
                        w[p][i] = wip * c - wiq * sig_conj;
                        w[q][i] = wip * sig + wiq * c;
                    }
                    for i in 0..n {
                        let vip = v[(i, p)];
                        let viq = v[(i, q)];
                        v[(i, p)] = vip * c - viq * sig_conj;
                        v[(i, q)] = vip * sig + viq * c;
                    }
                }
            }
            if !rotated {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NumericalFailure("jacobi svd did not converge"));
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = w.iter().map(|col| vnorm(col)).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(core::cmp::Ordering::Equal));
    let sigma: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let mut u = CMatrix::zeros(m, n);
    let mut v_sorted = CMatrix::zeros(n, n);
    let mut zero_cols: Vec<usize> = Vec::new();
    for (new_j, &old_j) in order.iter().enumerate() {
        if norms[old_j] > 1e-300 {
            let inv = 1.0 / norms[old_j];
            for i in 0..m {
                u[(i, new_j)] = w[old_j][i] * inv;
            }
        } else {
            zero_cols.push(new_j);
        }
        for i in 0..n {
            v_sorted[(i, new_j)] = v[(i, old_j)];
        }
    }
    if !zero_cols.is_empty() {
        // Fill the zero-σ columns of U with an orthonormal completion so U
        // always has orthonormal columns.
        let nonzero: Vec<Vec<Complex64>> = (0..n)
            .filter(|j| !zero_cols.contains(j))
            .map(|j| u.column(j))
            .collect();
        let completion = orthonormal_completion(m, &nonzero, zero_cols.len())?;
        for (slot, col) in zero_cols.iter().zip(completion.iter()) {
            u.set_column(*slot, col);
        }
    }
    Ok(Svd { u, sigma, v: v_sorted })
}

/// Extend `existing` (orthonormal vectors in C^dim) by `count` further
/// orthonormal vectors drawn from the standard basis via modified
/// Gram-Schmidt with reorthogonalization.
pub fn orthonormal_completion(
    dim: usize,
    existing: &[Vec<Complex64>],
    count: usize,
) -> Result<Vec<Vec<Complex64>>, Error> {
    let mut basis: Vec<Vec<Complex64>> = existing.to_vec();
    let mut added: Vec<Vec<Complex64>> = Vec::new();
    for k in 0..dim {
        if added.len() == count {
            break;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[k] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for b in &basis {
                let coeff = vdot(b, &v);
                for i in 0..dim {
                    v[i] -= coeff * b[i];
                }
            }
        }
        let nrm = vnorm(&v);
        if nrm > 1e-6 {
            let inv = 1.0 / nrm;
            for z in &mut v {
                *z *= inv;
            }
            basis.push(v.clone());
            added.push(v);
        }
    }
    if added.len() != count {
        return Err(Error::NumericalFailure("orthonormal completion fell short"));
    }
    Ok(added)
}

/// Householder QR, returning only the square upper-triangular factor R
/// (n×n).  Requires rows ≥ cols.  The singular values of R equal those of
/// the input, so R is a cheap stand-in for rank analysis of tall matrices.
pub fn qr_r(a: &CMatrix) -> CMatrix {
    assert!(a.rows >= a.cols, "qr_r requires a tall or square matrix");
    let (m, n) = (a.rows, a.cols);
    let mut w = a.clone();
    let mut v = vec![Complex64::new(0.0, 0.0); m];
    for j in 0..n {
        let mut nx = 0.0;
        for i in j..m {
            let z = w[(i, j)];
            nx += z.re * z.re + z.im * z.im;
        }
        let nx = libm::sqrt(nx);
        if nx <= 1e-300 {
            continue;
        }
        let x0 = w[(j, j)];
        let ph = if cabs(x0) > 1e-300 {
            x0 / cabs(x0)
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -ph * nx;
        // v = x - alpha e1  (first component adds magnitudes: stable choice)
        v[j] = x0 - alpha;
        for i in j + 1..m {
            v[i] = w[(i, j)];
        }
        let vn = vnorm(&v[j..m]);
        if vn <= 1e-300 {
            continue;
        }
        let inv = 1.0 / vn;
        for i in j..m {
            v[i] *= inv;
        }
        for c in j..n {
            let mut tau = Complex64::new(0.0, 0.0);
            for i in j..m {
                tau += v[i].conj() * w[(i, c)];
            }
            let tau2 = tau * 2.0;
            for i in j..m {
                let correction = tau2 * v[i];
                let cur = w[(i, c)];
                w[(i, c)] = cur - correction;
            }
        }
    }
    let mut r = CMatrix::zeros(n, n);
    for i in 0..n {
        for jc in i..n {
            r[(i, jc)] = w[(i, jc)];
        }
    }
    r
}

/// Orthonormal basis (as matrix columns) of the numerical kernel of `a`:
/// directions whose singular value is ≤ `rel_eps * sigma_max`.
pub fn nullspace(a: &CMatrix, rel_eps: f64) -> Result<CMatrix, Error> {
    let n = a.cols;
    let work = if a.rows > a.cols { qr_r(a) } else { a.clone() };
    let dec = svd(&work)?;
    let sigma_max = dec.sigma.first().copied().unwrap_or(0.0);
    if sigma_max <= 1e-300 {
        return Ok(CMatrix::identity(n));
    }
    let cut = rel_eps * sigma_max;
    let k = dec.sigma.len();
    let rank = dec.sigma.iter().take_while(|&&s| s > cut).count();
    if k == n {
        // V is square: the trailing columns are already the kernel basis.
        let cols: Vec<Vec<Complex64>> = (rank..n).map(|j| dec.v.column(j)).collect();
        Ok(CMatrix::from_columns(n, &cols))
    } else {
        // Wide input: kernel = orthogonal complement of the row space.
        let row_space: Vec<Vec<Complex64>> = (0..rank).map(|j| dec.v.column(j)).collect();
        let extra = orthonormal_completion(n, &row_space, n - rank)?;
        Ok(CMatrix::from_columns(n, &extra))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_matrix(rng: &mut impl rand::Rng, m: usize, n: usize) -> CMatrix {
        CMatrix::from_fn(m, n, |_, _| random_complex(rng))
    }

    #[test]
    fn arithmetic_and_kron_basics() {
        let a = CMatrix::from_fn(2, 2, |r, c| cx((r * 2 + c) as f64, 0.0));
        let i2 = CMatrix::identity(2);
        assert_eq!(&a * &i2, a);
        let k = i2.kron(&a);
        assert_eq!(k.rows, 4);
        assert_eq!(k[(2, 2)], cx(0.0, 0.0));
        assert_eq!(k[(3, 2)], cx(2.0, 0.0));
        let tr = a.trace();
        assert_eq!(tr, cx(3.0, 0.0));
    }

    #[test]
    fn eigh_known_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let a = CMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) | (1, 1) => cx(2.0, 0.0),
            (0, 1) => cx(0.0, 1.0),
            _ => cx(0.0, -1.0),
        });
        let (evals, u) = eigh(&a).unwrap();
        assert!((evals[0] - 1.0).abs() < 1e-14);
        assert!((evals[1] - 3.0).abs() < 1e-14);
        let recon = &(&u * &CMatrix::diag(&[cx(evals[0], 0.0), cx(evals[1], 0.0)])) * &u.dagger();
        assert!(recon.max_abs_diff(&a) < 1e-14);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let mut rng = rng_from_seed(7);
        for n in [3usize, 8, 17] {
            let g = random_matrix(&mut rng, n, n);
            let a = (&g + &g.dagger()).scale(0.5);
            let (evals, u) = eigh(&a).unwrap();
            let lam: Vec<Complex64> = evals.iter().map(|&e| cx(e, 0.0)).collect();
            let recon = &(&u * &CMatrix::diag(&lam)) * &u.dagger();
            assert!(recon.max_abs_diff(&a) < 1e-12 * (1.0 + a.frob_norm()));
            let gram = &u.dagger() * &u;
            assert!(gram.max_abs_diff(&CMatrix::identity(n)) < 1e-13);
            for w in evals.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let a = CMatrix::from_fn(2, 2, |r, c| cx((r + 2 * c) as f64, 1.0));
        assert!(matches!(eigh(&a), Err(Error::NotSelfAdjoint { .. })));
    }

    #[test]
    fn svd_reconstructs_tall_and_wide() {
        let mut rng = rng_from_seed(11);
        for (m, n) in [(7usize, 4usize), (4, 7), (5, 5)] {
            let a = random_matrix(&mut rng, m, n);
            let dec = svd(&a).unwrap();
            let k = m.min(n);
            assert_eq!(dec.sigma.len(), k);
            let sig: Vec<Complex64> = dec.sigma.iter().map(|&s| cx(s, 0.0)).collect();
            let recon = &(&dec.u * &CMatrix::diag(&sig)) * &dec.v.dagger();
            assert!(recon.max_abs_diff(&a) < 1e-12 * (1.0 + a.frob_norm()));
            let gu = &dec.u.dagger() * &dec.u;
            let gv = &dec.v.dagger() * &dec.v;
            assert!(gu.max_abs_diff(&CMatrix::identity(k)) < 1e-13);
            assert!(gv.max_abs_diff(&CMatrix::identity(k)) < 1e-13);
            for w in dec.sigma.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn svd_handles_rank_deficiency_exactly() {
        // Build A = u1 v1† * 3 + u2 v2† * 1e-9 in C^5: tiny σ must survive.
        let mut rng = rng_from_seed(13);
        let g = random_matrix(&mut rng, 5, 5);
        let a0 = (&g + &g.dagger()).scale(0.5);
        let (_, q) = eigh(&a0).unwrap();
        let u1 = q.column(0);
        let u2 = q.column(1);
        let v1 = q.column(2);
        let v2 = q.column(3);
        let mut a = CMatrix::zeros(5, 5);
        for i in 0..5 {
            for j in 0..5 {
                a[(i, j)] = u1[i] * v1[j].conj() * 3.0 + u2[i] * v2[j].conj() * 1e-9;
            }
        }
        let dec = svd(&a).unwrap();
        assert!((dec.sigma[0] - 3.0).abs() < 1e-12);
        assert!((dec.sigma[1] - 1e-9).abs() < 1e-21, "tiny σ lost: {}", dec.sigma[1]);
        assert!(dec.sigma[2] < 1e-15);
    }

    #[test]
    fn qr_preserves_singular_values() {
        let mut rng = rng_from_seed(17);
        let a = random_matrix(&mut rng, 9, 4);
        let r = qr_r(&a);
        let sa = svd(&a).unwrap().sigma;
        let sr = svd(&r).unwrap().sigma;
        for (x, y) in sa.iter().zip(sr.iter()) {
            assert!((x - y).abs() < 1e-12 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn nullspace_of_known_rank() {
        let mut rng = rng_from_seed(19);
        // 5×5 with rank 3.
        let g = random_matrix(&mut rng, 5, 5);
        let (_, q) = eigh(&(&g + &g.dagger()).scale(0.5)).unwrap();
        let sig = [3.0, 2.0, 1.0, 0.0, 0.0];
        let mut a = CMatrix::zeros(5, 5);
        for (k, s) in sig.iter().enumerate() {
            let col = q.column(k);
            for i in 0..5 {
                for j in 0..5 {
                    a[(i, j)] += col[i] * col[j].conj() * *s;
                }
            }
        }
        let ns = nullspace(&a, 1e-10).unwrap();
        assert_eq!(ns.cols, 2);
        for j in 0..2 {
            let img = a.apply(&ns.column(j));
            assert!(vnorm(&img) < 1e-12);
        }
        // Tall: stack a on top of a (same kernel).
        let mut tall = CMatrix::zeros(10, 5);
        for i in 0..5 {
            for j in 0..5 {
                tall[(i, j)] = a[(i, j)];
                tall[(i + 5, j)] = a[(i, j)];
            }
        }
        let ns2 = nullspace(&tall, 1e-10).unwrap();
        assert_eq!(ns2.cols, 2);
        // Wide: 3×5 of rank 2.
        let mut wide = CMatrix::zeros(3, 5);
        for j in 0..5 {
            let c0 = q.column(0);
            let c1 = q.column(1);
            wide[(0, j)] = c0[j].conj() * 2.0;
            wide[(1, j)] = c1[j].conj();
            wide[(2, j)] = c0[j].conj() + c1[j].conj();
        }
        let ns3 = nullspace(&wide, 1e-10).unwrap();
        assert_eq!(ns3.cols, 3);
        for j in 0..3 {
            let img = wide.apply(&ns3.column(j));
            assert!(vnorm(&img) < 1e-12);
        }
        let gram = &ns3.dagger() * &ns3;
        assert!(gram.max_abs_diff(&CMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn completion_produces_unitary_extension() {
        let mut rng = rng_from_seed(23);
        let g = random_matrix(&mut rng, 4, 4);
        let (_, q) = eigh(&(&g + &g.dagger()).scale(0.5)).unwrap();
        let existing = [q.column(0), q.column(1)];
        let extra = orthonormal_completion(4, &existing, 2).unwrap();
        let mut all = existing.to_vec();
        all.extend(extra);
        let u = CMatrix::from_columns(4, &all);
        let gram = &u.dagger() * &u;
        assert!(gram.max_abs_diff(&CMatrix::identity(4)) < 1e-12);
    }
}
