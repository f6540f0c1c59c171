//! Dense complex matrices and the eigen solvers the finite-section numerics
//! need, generic over the real scalar.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{lit, real, Real};

/// Column-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::default(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = real(T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Complex<T>>]) -> Result<Self> {
        let rows = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("ragged columns".into()));
        }
        Ok(Self {
            rows,
            cols: cols.len(),
            data: cols.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> &[Complex<T>] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            for k in 0..self.cols {
                let b = other[(k, j)];
                if b.norm_sqr() == T::zero() {
                    continue;
                }
                let col = self.column(k);
                let dst = &mut out.data[j * self.rows..(j + 1) * self.rows];
                for (d, &a) in dst.iter_mut().zip(col) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut out = vec![Complex::default(); self.rows];
        for (j, &x) in v.iter().enumerate().take(self.cols) {
            if x.norm_sqr() == T::zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.column(j)) {
                *o += a * x;
            }
        }
        out
    }

    /// `M* v`.
    pub fn adjoint_mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.cols)
            .map(|j| {
                self.column(j)
                    .iter()
                    .zip(v)
                    .fold(Complex::default(), |acc, (&a, &x)| acc + a.conj() * x)
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|a| a.norm()).fold(T::zero(), T::max)
    }

    /// `(A + A*)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * lit::<T>(0.5))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.cols).all(|j| (0..j.min(self.rows)).all(|i| self[(i, j)].norm() == T::zero()))
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Row-major entries.
    pub fn row_major(&self) -> impl Iterator<Item = (usize, usize, Complex<T>)> + '_ {
        (0..self.rows).flat_map(move |i| (0..self.cols).map(move |j| (i, j, self[(i, j)])))
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[j * self.rows + i]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[j * self.rows + i]
    }
}

pub fn vec_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt()
}

pub fn dot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).fold(Complex::default(), |acc, (&x, &y)| acc + x * y.conj())
}

/// Householder vector `v` (unit) and `α` with `(I − 2vv*)x = α e₁`.
fn householder<T: Real>(x: &[Complex<T>]) -> Option<(Vec<Complex<T>>, Complex<T>)> {
    let norm = vec_norm(x);
    if norm == T::zero() {
        return None;
    }
    let tail: T = x[1..].iter().map(|z| z.norm_sqr()).sum();
    if tail == T::zero() {
        return None;
    }
    let phase = if x[0].norm() == T::zero() {
        real(T::one())
    } else {
        x[0] / x[0].norm()
    };
    let alpha = -phase * norm;
    let mut v = x.to_vec();
    v[0] -= alpha;
    let vn = vec_norm(&v);
    for z in v.iter_mut() {
        *z /= vn;
    }
    Some((v, alpha))
}

/// Two-sided similarity `A ← (I − 2vv*) A (I − 2vv*)` acting on indices `off..`.
fn reflect_both<T: Real>(a: &mut Matrix<T>, v: &[Complex<T>], off: usize, first_col: usize) {
    let n = a.rows;
    let two = lit::<T>(2.0);
    for j in first_col..n {
        let mut s = Complex::default();
        for (k, &vk) in v.iter().enumerate() {
            s += vk.conj() * a[(off + k, j)];
        }
        s *= two;
        for (k, &vk) in v.iter().enumerate() {
            a[(off + k, j)] -= vk * s;
        }
    }
    for i in 0..n {
        let mut s = Complex::default();
        for (k, &vk) in v.iter().enumerate() {
            s += a[(i, off + k)] * vk;
        }
        s *= two;
        for (k, &vk) in v.iter().enumerate() {
            a[(i, off + k)] -= s * vk.conj();
        }
    }
}

fn upper_hessenberg<T: Real>(m: &Matrix<T>) -> Matrix<T> {
    let n = m.rows;
    let mut a = m.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex<T>> = (k + 1..n).map(|i| a[(i, k)]).collect();
        if let Some((v, _)) = householder(&x) {
            reflect_both(&mut a, &v, k + 1, k);
        }
    }
    a
}

/// `G = [[c, s], [−s̄, c]]` with `G [a, b]ᵀ = [r, 0]ᵀ`.
fn givens<T: Real>(a: Complex<T>, b: Complex<T>) -> (T, Complex<T>) {
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if r == T::zero() {
        return (T::one(), Complex::default());
    }
    if a.norm() == T::zero() {
        return (T::zero(), b.conj() / b.norm());
    }
    let c = a.norm() / r;
    let s = (a / a.norm()) * b.conj() / r;
    (c, s)
}

/// All eigenvalues of a square matrix: Householder reduction to Hessenberg
/// form, then shifted complex QR with Givens rotations. Triangular inputs
/// return their diagonal.
pub fn eigenvalues<T: Real>(m: &Matrix<T>) -> Result<Vec<Complex<T>>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("eigenvalues of a non-square matrix".into()));
    }
    let n = m.rows;
    if m.is_lower_triangular() || m.adjoint().is_lower_triangular() {
        return Ok(m.diagonal());
    }
    let mut h = upper_hessenberg(m);
    let eps = T::epsilon();
    let mut eig = vec![Complex::default(); n];
    let mut hi = n as isize - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let cap = 60 * n.max(1);
    let scale = m.frobenius_norm().max(T::min_positive_value());
    while hi >= 0 {
        let hiu = hi as usize;
        // deflation search
        let mut l = hiu;
        while l > 0 {
            let s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            let s = if s == T::zero() { scale } else { s };
            if h[(l, l - 1)].norm() <= eps * s {
                h[(l, l - 1)] = Complex::default();
                break;
            }
            l -= 1;
        }
        if l == hiu {
            eig[hiu] = h[(hiu, hiu)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > cap {
            return Err(Error::ConvergenceFailure {
                method: "hessenberg-qr",
                iterations: total,
                residual: h[(hiu, hiu - 1)].norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        let mu = if iter % 11 == 10 {
            // exceptional shift
            h[(hiu, hiu)] + real(h[(hiu, hiu - 1)].norm() * lit(0.75))
        } else {
            let a = h[(hiu - 1, hiu - 1)];
            let b = h[(hiu - 1, hiu)];
            let c = h[(hiu, hiu - 1)];
            let d = h[(hiu, hiu)];
            let half = (a - d) * lit::<T>(0.5);
            let root = (half * half + b * c).sqrt();
            let mid = (a + d) * lit::<T>(0.5);
            let (e1, e2) = (mid + root, mid - root);
            if (e1 - d).norm() < (e2 - d).norm() {
                e1
            } else {
                e2
            }
        };
        for i in l..=hiu {
            h[(i, i)] -= mu;
        }
        let mut rots = Vec::with_capacity(hiu - l);
        for k in l..hiu {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hiu {
                let (x, y) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = l + idx;
            for i in l..=(k + 1).min(hiu) {
                let (x, y) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
        }
        for i in l..=hiu {
            h[(i, i)] += mu;
        }
    }
    Ok(eig)
}

/// Eigenvalues (ascending) of a Hermitian matrix: Householder
/// tridiagonalization, then implicit QL on the real tridiagonal form.
pub fn hermitian_eigenvalues<T: Real>(m: &Matrix<T>) -> Result<Vec<T>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("eigenvalues of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut a = m.hermitian_part();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex<T>> = (k + 1..n).map(|i| a[(i, k)]).collect();
        if let Some((v, _)) = householder(&x) {
            reflect_both(&mut a, &v, k + 1, k);
        }
    }
    let mut d: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e: Vec<T> = (0..n).map(|i| if i + 1 < n { a[(i + 1, i)].norm() } else { T::zero() }).collect();
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(d)
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix
/// (diagonal `d`, subdiagonal `e[i] = T[i+1, i]`); eigenvalues overwrite `d`.
fn tridiagonal_ql<T: Real>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let eps = T::epsilon();
    let two = lit::<T>(2.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::ConvergenceFailure {
                    method: "tridiagonal-ql",
                    iterations: iter,
                    residual: e[l].to_f64().unwrap_or(f64::NAN),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

/// Cyclic complex Jacobi for small Hermitian matrices: eigenvalues ascending
/// with unit eigenvectors as columns.
pub fn hermitian_eigen_jacobi<T: Real>(m: &Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("eigen of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut a = m.hermitian_part();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius_norm().max(T::min_positive_value());
    let mut converged = n < 2;
    let mut off = T::zero();
    for _sweep in 0..100 {
        off = T::zero();
        for q in 0..n {
            for p in 0..q {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= T::epsilon() * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= T::min_positive_value() {
                    continue;
                }
                let phase = apq / mag;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (lit::<T>(2.0) * mag);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                // columns: p ← c·p − s·e^{−iθ}… with e^{iθ} the phase of a_pq
                let ph = phase.conj();
                for i in 0..n {
                    let (x, y) = (a[(i, p)], a[(i, q)]);
                    a[(i, p)] = x * c - y * ph * s;
                    a[(i, q)] = x * s + y * ph * c;
                }
                for j in 0..n {
                    let (x, y) = (a[(p, j)], a[(q, j)]);
                    a[(p, j)] = x * c - y * ph.conj() * s;
                    a[(q, j)] = x * s + y * ph.conj() * c;
                }
                for i in 0..n {
                    let (x, y) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = x * c - y * ph * s;
                    v[(i, q)] = x * s + y * ph * c;
                }
            }
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            method: "jacobi",
            iterations: 100,
            residual: off.sqrt().to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let vals = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((vals, vecs))
}

/// Lower Cholesky factor of a Hermitian positive definite matrix.
pub fn cholesky<T: Real>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("Cholesky of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut diag = m[(j, j)].re;
        for k in 0..j {
            diag -= l[(j, k)].norm_sqr();
        }
        if !(diag > T::zero()) {
            return Err(Error::InvalidParameter("matrix is not positive definite".into()));
        }
        let djj = diag.sqrt();
        l[(j, j)] = real(djj);
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Solves `L x = b` for lower-triangular `L`.
pub fn forward_substitute<T: Real>(l: &Matrix<T>, b: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = l.rows;
    let mut x = vec![Complex::default(); n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Solves `L* x = b` for lower-triangular `L`.
pub fn backward_substitute_adjoint<T: Real>(l: &Matrix<T>, b: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = l.rows;
    let mut x = vec![Complex::default(); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[(k, i)].conj() * x[k];
        }
        x[i] = s / l[(i, i)].conj();
    }
    x
}

/// Largest `λ` with `A x = λ B x` for Hermitian `A` and positive definite `B`,
/// with its eigenvector.
pub fn generalized_top_eigen<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<(T, Vec<Complex<T>>)> {
    let l = cholesky(b)?;
    let n = a.rows;
    // C = L⁻¹ A L⁻*
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        cols.push(forward_substitute(&l, a.column(j)));
    }
    let y = Matrix::from_columns(&cols)?;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let row: Vec<Complex<T>> = (0..n).map(|k| y[(j, k)].conj()).collect();
        cols.push(forward_substitute(&l, &row));
    }
    let c = Matrix::from_columns(&cols)?.adjoint();
    let (vals, vecs) = hermitian_eigen_jacobi(&c)?;
    let top = vals[n - 1];
    let x = backward_substitute_adjoint(&l, vecs.column(n - 1));
    Ok((top, x))
}

/// Largest singular value by power iteration on `M*M` from a seeded random
/// start. Returns `(σ, iterations, relative residual)`.
pub fn power_norm<T: Real>(m: &Matrix<T>, seed: u64, max_iter: usize, rel_tol: T) -> Result<(T, usize, T)> {
    let n = m.cols;
    if n == 0 {
        return Ok((T::zero(), 0, T::zero()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<Complex<T>> = (0..n)
        .map(|_| Complex::new(lit(rng.gen_range(-1.0..1.0)), lit(rng.gen_range(-1.0..1.0))))
        .collect();
    let nv = vec_norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut lambda = T::zero();
    let mut residual = T::infinity();
    for it in 1..=max_iter {
        let mv = m.mul_vec(&v);
        let w = m.adjoint_mul_vec(&mv);
        lambda = vec_norm(&mv).powi(2);
        let wn = vec_norm(&w);
        if wn == T::zero() {
            return Ok((T::zero(), it, T::zero()));
        }
        residual = w
            .iter()
            .zip(&v)
            .map(|(&a, &b)| (a - b * lambda).norm_sqr())
            .sum::<T>()
            .sqrt()
            / lambda;
        if residual <= rel_tol {
            return Ok((lambda.sqrt(), it, residual));
        }
        v = w.into_iter().map(|x| x / wn).collect();
    }
    Err(Error::ConvergenceFailure {
        method: "power-iteration",
        iterations: max_iter,
        residual: residual.to_f64().unwrap_or(f64::NAN) * lambda.to_f64().unwrap_or(1.0).max(0.0).sqrt(),
    })
}
