//! Dense square matrices and a symmetric eigensolver.
//!
//! The eigensolver is the classic two-stage reduction: Householder
//! tridiagonalization followed by the implicit-shift QL iteration (the
//! EISPACK `tred2`/`tql2` pair, eigenvalues only). Dense storage is deliberate:
//! every instance in this crate is at most a few hundred rows, and the solver
//! has to be bit-for-bit reproducible across platforms.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sum(&self, i: usize) -> T {
        self.row(i).iter().copied().sum()
    }

    pub fn max_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn matvec(&self, x: &[T], out: &mut [T]) {
        debug_assert_eq!(x.len(), self.n);
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = T::zero();
            for (a, b) in self.row(i).iter().zip(x.iter()) {
                acc += *a * *b;
            }
            *slot = acc;
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// All eigenvalues, sorted descending. Fails if the input is not
    /// symmetric to within `sym_tol` or if the QL iteration stalls.
    pub fn symmetric_eigenvalues(&self, sym_tol: T) -> Result<Vec<T>> {
        let asym = self.max_asymmetry();
        if asym > sym_tol {
            return Err(Error::NotSymmetric(asym.to_f64().unwrap_or(f64::NAN)));
        }
        let (mut d, mut e) = householder_tridiagonalize(&mut self.clone());
        ql_eigenvalues(&mut d, &mut e)?;
        d.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
        Ok(d)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
/// Returns (diagonal, subdiagonal) with the subdiagonal in `e[1..]`.
/// Ported from the EISPACK/Jama `tred2` with eigenvector accumulation removed.
fn householder_tridiagonalize<T: Scalar>(a: &mut Matrix<T>) -> (Vec<T>, Vec<T>) {
    let n = a.n;
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    if n == 0 {
        return (d, e);
    }

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = T::zero();
        if l > 0 {
            let mut scale = T::zero();
            for k in 0..=l {
                scale += a[(i, k)].abs();
            }
            if scale == T::zero() {
                e[i] = a[(i, l)];
            } else {
                for k in 0..=l {
                    a[(i, k)] /= scale;
                    h += a[(i, k)] * a[(i, k)];
                }
                let f = a[(i, l)];
                let g = if f >= T::zero() { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[(i, l)] = f - g;
                let mut f_acc = T::zero();
                for j in 0..=l {
                    let mut g = T::zero();
                    for k in 0..=j {
                        g += a[(j, k)] * a[(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g += a[(k, j)] * a[(i, k)];
                    }
                    e[j] = g / h;
                    f_acc += e[j] * a[(i, j)];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        let delta = f * e[k] + g * a[(i, k)];
                        a[(j, k)] -= delta;
                    }
                }
            }
        } else {
            e[i] = a[(i, l)];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[(i, i)];
    }
    (d, e)
}

/// Implicit-shift QL iteration on a tridiagonal matrix. `d` holds the
/// diagonal, `e[1..]` the subdiagonal; on return `d` holds eigenvalues.
fn ql_eigenvalues<T: Scalar>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();
    let eps = T::epsilon();

    for l in 0..n {
        let mut iter = 0usize;
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
            if iter > 64 {
                return Err(Error::EigenNoConvergence(64));
            }
            let two = T::c(2.0);
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            let sign_r = if g >= T::zero() { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
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

/// Second, independent estimate of the largest eigenvalue of a symmetric
/// matrix restricted to the orthogonal complement of the all-ones vector.
/// Deterministic power iteration; used to cross-check the QL solver.
pub fn power_iteration_lambda2<T: Scalar>(m: &Matrix<T>, max_iter: usize, tol: T) -> T {
    let n = m.n();
    let nf = T::us(n);
    let mut v: Vec<T> = (0..n).map(|i| T::us(i + 1).sin()).collect();
    let mut w = vec![T::zero(); n];
    let deflate = |x: &mut [T]| {
        let mean = x.iter().copied().sum::<T>() / nf;
        for xi in x.iter_mut() {
            *xi -= mean;
        }
    };
    deflate(&mut v);
    let mut lambda = T::zero();
    for _ in 0..max_iter {
        m.matvec(&v, &mut w);
        deflate(&mut w);
        let norm = w.iter().map(|x| *x * *x).sum::<T>().sqrt();
        if norm == T::zero() {
            return T::zero();
        }
        for (vi, wi) in v.iter_mut().zip(w.iter()) {
            *vi = *wi / norm;
        }
        m.matvec(&v, &mut w);
        let next = v.iter().zip(w.iter()).map(|(a, b)| *a * *b).sum::<T>();
        if (next - lambda).abs() <= tol * T::one().max(next.abs()) {
            return next;
        }
        lambda = next;
    }
    lambda
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_laplacian(n: usize) -> Matrix<f64> {
        let mut m = Matrix::zeros(n);
        for i in 0..n - 1 {
            m[(i, i)] += 1.0;
            m[(i + 1, i + 1)] += 1.0;
            m[(i, i + 1)] -= 1.0;
            m[(i + 1, i)] -= 1.0;
        }
        m
    }

    #[test]
    fn path_laplacian_spectrum_matches_closed_form() {
        for n in [2usize, 3, 5, 8, 13] {
            let mut expected: Vec<f64> = (0..n)
                .map(|j| {
                    let t = (std::f64::consts::PI * j as f64 / (2.0 * n as f64)).sin();
                    4.0 * t * t
                })
                .collect();
            expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let got = path_laplacian(n).symmetric_eigenvalues(1e-12).unwrap();
            for (g, e) in got.iter().zip(expected.iter()) {
                assert!((g - e).abs() < 1e-10 * n as f64, "n={n}: {g} vs {e}");
            }
        }
    }

    #[test]
    fn cycle_laplacian_spectrum_matches_closed_form() {
        let n = 7;
        let mut m = Matrix::<f64>::zeros(n);
        for i in 0..n {
            let j = (i + 1) % n;
            m[(i, i)] += 1.0;
            m[(j, j)] += 1.0;
            m[(i, j)] -= 1.0;
            m[(j, i)] -= 1.0;
        }
        let mut expected: Vec<f64> = (0..n)
            .map(|j| 2.0 - 2.0 * (std::f64::consts::TAU * j as f64 / n as f64).cos())
            .collect();
        expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let got = m.symmetric_eigenvalues(1e-12).unwrap();
        for (g, e) in got.iter().zip(expected.iter()) {
            assert!((g - e).abs() < 1e-10, "{g} vs {e}");
        }
    }

    #[test]
    fn complete_graph_spectrum() {
        let n = 9;
        let m = Matrix::from_fn(n, |i, j| if i == j { (n - 1) as f64 } else { -1.0 });
        let eigs = m.symmetric_eigenvalues(1e-12).unwrap();
        assert!((eigs[n - 1]).abs() < 1e-10);
        for e in &eigs[..n - 1] {
            assert!((e - n as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn trace_and_frobenius_are_preserved() {
        let n = 12;
        let mut rng = crate::rng::SplitMix64::new(99);
        let mut m = Matrix::<f64>::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v = rng.next_f64() - 0.5;
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        let eigs = m.symmetric_eigenvalues(1e-12).unwrap();
        let trace: f64 = (0..n).map(|i| m[(i, i)]).sum();
        let frob: f64 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum();
        assert!((eigs.iter().sum::<f64>() - trace).abs() < 1e-9);
        assert!((eigs.iter().map(|e| e * e).sum::<f64>() - frob).abs() < 1e-9);
    }

    #[test]
    fn rejects_asymmetric_input() {
        let mut m = Matrix::<f64>::identity(3);
        m[(0, 1)] = 1e-3;
        assert!(m.symmetric_eigenvalues(1e-9).is_err());
    }

    #[test]
    fn power_iteration_agrees_with_ql() {
        let n = 6;
        let m = Matrix::from_fn(n, |i, j| {
            if i == j {
                1.0 - 0.4 / n as f64 * (n - 1) as f64
            } else {
                0.4 / n as f64
            }
        });
        // Doubly stochastic; lambda2 should be 1 - 0.4 = 0.6.
        let eigs = m.symmetric_eigenvalues(1e-12).unwrap();
        let p = power_iteration_lambda2(&m, 20_000, 1e-14);
        assert!((eigs[1] - p).abs() < 1e-10, "{} vs {p}", eigs[1]);
    }

    #[test]
    fn works_in_f32_too() {
        let m = Matrix::<f32>::from_fn(4, |i, j| if i == j { 3.0 } else { -1.0 });
        let eigs = m.symmetric_eigenvalues(1e-5).unwrap();
        assert!((eigs[3]).abs() < 1e-5);
        assert!((eigs[0] - 4.0).abs() < 1e-4);
    }
}
