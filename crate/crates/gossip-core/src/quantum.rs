//! Reduction of qudit-network symmetrization dynamics to classical gossip.
//!
//! A network state is a density matrix on `N` qudits. Expanding it in a
//! trace-orthogonal Hermitian basis per site turns the matrix into a real
//! coefficient vector indexed by tuples `(mu_1, .., mu_N)`, and a pairwise
//! swap update acts by transposing two tuple positions. Averaging the swap
//! projectors over the edge activity gives a doubly stochastic operator on
//! tuple space whose connected components are the orbits of tuples under
//! position permutations. The component whose tuples have a single odd
//! position reproduces the underlying graph, and the second eigenvalue is
//! the same on every nontrivial component.

use crate::error::{Error, Result};
use crate::gossip::{ProbabilityAssignment, SYMMETRY_TOL};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::topology::Topology;
use num_complex::Complex;
use serde::Serialize;
use std::collections::BTreeMap;

/// Ceiling on the coefficient-space dimension `(d^2)^N`.
pub const MAX_QUANTUM_DIM: usize = 1000;

/// Dense complex square matrix, row-major. Only what the basis construction
/// and the density-matrix oracles need.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    pub n: usize,
    pub data: Vec<Complex<T>>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex::new(T::zero(), T::zero()); n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.n + j] = v;
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let n = self.n * other.n;
        let mut out = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.get(i, j);
                for k in 0..other.n {
                    for l in 0..other.n {
                        out.set(i * other.n + k, j * other.n + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n)
            .map(|i| self.get(i, i))
            .fold(Complex::new(T::zero(), T::zero()), |acc, v| acc + v)
    }

    /// `tr(A B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        let n = self.n;
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..n {
            for k in 0..n {
                acc += self.get(i, k) * other.get(k, i);
            }
        }
        acc
    }
}

/// Hermitian trace-orthogonal basis of `d x d` matrices: a scaled identity,
/// symmetric and antisymmetric pair combinations, and the diagonal ladder,
/// normalized so `tr(b_a b_b) = 2 delta_ab`. Only orthogonality matters for
/// the coefficient reduction, so the standard construction is used.
#[derive(Debug, Clone)]
pub struct GellMannBasis<T> {
    pub d: usize,
    pub matrices: Vec<CMatrix<T>>,
}

pub fn gellmann_basis<T: Scalar>(d: usize) -> Result<GellMannBasis<T>> {
    if d < 2 {
        return Err(Error::InvalidParameter("basis needs d >= 2".into()));
    }
    let mut matrices = Vec::with_capacity(d * d);
    let zero = T::zero();
    let one = T::one();

    let mut id = CMatrix::zeros(d);
    let scale = (T::c(2.0) / T::us(d)).sqrt();
    for i in 0..d {
        id.set(i, i, Complex::new(scale, zero));
    }
    matrices.push(id);

    for j in 0..d {
        for k in (j + 1)..d {
            let mut sym = CMatrix::zeros(d);
            sym.set(j, k, Complex::new(one, zero));
            sym.set(k, j, Complex::new(one, zero));
            matrices.push(sym);

            let mut anti = CMatrix::zeros(d);
            anti.set(j, k, Complex::new(zero, -one));
            anti.set(k, j, Complex::new(zero, one));
            matrices.push(anti);
        }
    }
    for l in 1..d {
        let norm = (T::c(2.0) / (T::us(l) * T::us(l + 1))).sqrt();
        let mut diag = CMatrix::zeros(d);
        for m in 0..l {
            diag.set(m, m, Complex::new(norm, zero));
        }
        diag.set(l, l, Complex::new(-norm * T::us(l), zero));
        matrices.push(diag);
    }
    Ok(GellMannBasis { d, matrices })
}

/// Real expansion coefficients of an `N`-qudit state, indexed by tuples
/// `(mu_1, .., mu_N)` over `0..d^2`, big-endian (`mu_1` is the slowest).
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientState<T> {
    pub d: usize,
    pub n: usize,
    pub coeffs: Vec<T>,
}

pub fn coefficient_dim(d: usize, n: usize) -> Result<usize> {
    let base = d * d;
    let mut dim = 1usize;
    for _ in 0..n {
        dim = dim
            .checked_mul(base)
            .ok_or(Error::SizeGuard(usize::MAX, MAX_QUANTUM_DIM))?;
        if dim > MAX_QUANTUM_DIM {
            return Err(Error::SizeGuard(dim, MAX_QUANTUM_DIM));
        }
    }
    Ok(dim)
}

impl<T: Scalar> CoefficientState<T> {
    pub fn new(d: usize, n: usize, coeffs: Vec<T>) -> Result<Self> {
        let dim = coefficient_dim(d, n)?;
        if coeffs.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {dim} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { d, n, coeffs })
    }

    pub fn tuple_of(&self, mut idx: usize) -> Vec<usize> {
        let base = self.d * self.d;
        let mut tuple = vec![0usize; self.n];
        for slot in (0..self.n).rev() {
            tuple[slot] = idx % base;
            idx /= base;
        }
        tuple
    }
}

/// Flat index of a tuple, big-endian.
pub fn index_of(d: usize, tuple: &[usize]) -> usize {
    let base = d * d;
    tuple.iter().fold(0usize, |acc, &m| acc * base + m)
}

/// Index obtained by exchanging tuple positions `j` and `k`.
fn swapped_index(d: usize, n: usize, idx: usize, j: usize, k: usize) -> usize {
    let base = d * d;
    let pj = base.pow((n - 1 - j) as u32);
    let pk = base.pow((n - 1 - k) as u32);
    let mj = idx / pj % base;
    let mk = idx / pk % base;
    idx + mk * pj + mj * pk - mj * pj - mk * pk
}

/// Exchange the coefficients at tuple positions `j` and `k`.
pub fn swap_coefficients<T: Scalar>(
    state: &CoefficientState<T>,
    j: usize,
    k: usize,
) -> Result<CoefficientState<T>> {
    if j == k || j >= state.n || k >= state.n {
        return Err(Error::InvalidParameter(format!(
            "swap positions ({j},{k}) invalid for {} sites",
            state.n
        )));
    }
    let mut out = state.coeffs.clone();
    for idx in 0..state.coeffs.len() {
        let target = swapped_index(state.d, state.n, idx, j, k);
        out[target] = state.coeffs[idx];
    }
    Ok(CoefficientState {
        d: state.d,
        n: state.n,
        coeffs: out,
    })
}

/// The expected swap-average operator on coefficient space, stored sparse:
/// each row holds the diagonal plus at most one entry per edge.
#[derive(Debug, Clone)]
pub struct QuantumGossipOperator<T> {
    pub d: usize,
    pub n_sites: usize,
    pub dim: usize,
    pub rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> QuantumGossipOperator<T> {
    pub fn matvec(&self, x: &[T], out: &mut [T]) {
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = T::zero();
            for &(j, w) in row {
                acc += w * x[j];
            }
            out[i] = acc;
        }
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                m[(i, j)] += w;
            }
        }
        m
    }
}

/// Build the swap-average operator for an assignment on the underlying
/// graph: each edge contributes its activity times the projector averaging a
/// tuple with its transposition.
pub fn build_quantum_operator<T: Scalar>(
    topology: &Topology,
    assignment: &ProbabilityAssignment<T>,
    d: usize,
) -> Result<QuantumGossipOperator<T>> {
    if d < 2 {
        return Err(Error::InvalidParameter("qudit dimension d >= 2".into()));
    }
    assignment.validate(topology)?;
    let n = topology.n_vertices;
    let dim = coefficient_dim(d, n)?;
    let half = T::c(0.5);

    // per-edge activity P_j P_jk + P_k P_kj, summing to one
    let weights: Vec<((usize, usize), T)> = topology
        .edges
        .iter()
        .map(|&(a, b)| {
            let w = assignment.clock[a] * assignment.p(a, b)
                + assignment.clock[b] * assignment.p(b, a);
            ((a, b), w)
        })
        .collect();

    let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); dim];
    for (idx, slot) in rows.iter_mut().enumerate() {
        let mut diag = T::zero();
        let mut off: Vec<(usize, T)> = Vec::new();
        for &((a, b), w) in &weights {
            let target = swapped_index(d, n, idx, a, b);
            if target == idx {
                diag += w; // fixed tuple: the projector acts as identity
            } else {
                diag += w * half;
                off.push((target, w * half));
            }
        }
        slot.push((idx, diag));
        slot.extend(off);
    }
    Ok(QuantumGossipOperator {
        d,
        n_sites: n,
        dim,
        rows,
    })
}

/// One connected component of tuple space under position swaps, labeled by
/// the multiplicity partition of its tuples.
#[derive(Debug, Clone, Serialize)]
pub struct InducedComponent {
    pub partition: Vec<usize>,
    pub indices: Vec<usize>,
}

/// Group tuple space by value multiset. For a connected underlying graph the
/// edge transpositions generate every position permutation, so the orbits
/// are exactly the tuples sharing a multiset of values.
pub fn induced_components(d: usize, n: usize) -> Result<Vec<InducedComponent>> {
    let dim = coefficient_dim(d, n)?;
    let base = d * d;
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for idx in 0..dim {
        let mut tuple = Vec::with_capacity(n);
        let mut rest = idx;
        for _ in 0..n {
            tuple.push(rest % base);
            rest /= base;
        }
        tuple.sort_unstable();
        groups.entry(tuple).or_default().push(idx);
    }
    Ok(groups
        .into_iter()
        .map(|(key, indices)| {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for v in key {
                *counts.entry(v).or_insert(0) += 1;
            }
            let mut partition: Vec<usize> = counts.into_values().collect();
            partition.sort_unstable_by(|a, b| b.cmp(a));
            InducedComponent { partition, indices }
        })
        .collect())
}

/// Second-largest eigenvalue of the operator restricted to the orthogonal
/// complement of its stationary space (one stationary direction per
/// component). Computed per component with the dense solver; components are
/// position-permutation orbits, so they hold at most `N!` tuples each.
pub fn lambda2_quantum<T: Scalar>(op: &QuantumGossipOperator<T>) -> Result<T> {
    let components = induced_components(op.d, op.n_sites)?;
    let mut best = T::zero();
    for comp in &components {
        if comp.indices.len() < 2 {
            continue;
        }
        best = best.max(component_lambda2(op, &comp.indices)?);
    }
    Ok(best)
}

fn component_lambda2<T: Scalar>(op: &QuantumGossipOperator<T>, indices: &[usize]) -> Result<T> {
    let pos: BTreeMap<usize, usize> = indices.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut sub = Matrix::zeros(indices.len());
    for (p, &i) in indices.iter().enumerate() {
        for &(j, w) in &op.rows[i] {
            let q = *pos
                .get(&j)
                .ok_or_else(|| Error::SolverFailure("component not swap-invariant".into()))?;
            sub[(p, q)] += w;
        }
    }
    let eigs = sub.symmetric_eigenvalues(T::c(SYMMETRY_TOL))?;
    Ok(eigs[1])
}

/// Second route to the same number: deterministic power iteration on the
/// sparse operator with the stationary space deflated by subtracting
/// per-component means. Cross-checked against the component route in tests.
pub fn lambda2_quantum_power<T: Scalar>(
    op: &QuantumGossipOperator<T>,
    max_iter: usize,
    tol: T,
) -> Result<T> {
    let components = induced_components(op.d, op.n_sites)?;
    let deflate = |x: &mut [T]| {
        for comp in &components {
            let mean = comp.indices.iter().map(|&i| x[i]).sum::<T>() / T::us(comp.indices.len());
            for &i in &comp.indices {
                x[i] -= mean;
            }
        }
    };
    let mut v: Vec<T> = (0..op.dim).map(|i| T::us(i + 1).sin()).collect();
    deflate(&mut v);
    let mut w = vec![T::zero(); op.dim];
    let mut lambda = T::zero();
    for _ in 0..max_iter {
        op.matvec(&v, &mut w);
        deflate(&mut w);
        let norm = w.iter().map(|x| *x * *x).sum::<T>().sqrt();
        if norm == T::zero() {
            return Ok(T::zero());
        }
        for (vi, wi) in v.iter_mut().zip(w.iter()) {
            *vi = *wi / norm;
        }
        op.matvec(&v, &mut w);
        let next = v.iter().zip(w.iter()).map(|(a, b)| *a * *b).sum::<T>();
        if (next - lambda).abs() <= tol * T::one().max(next.abs()) {
            return Ok(next);
        }
        lambda = next;
    }
    Ok(lambda)
}

/// Per-partition second eigenvalues and the comparison against the classical
/// operator on the underlying graph.
#[derive(Debug, Clone, Serialize)]
pub struct CollapseReport<T> {
    pub lambda2_quantum: T,
    pub lambda2_classical: T,
    pub per_partition: Vec<(Vec<usize>, T)>,
    pub max_deviation: T,
    pub ok: bool,
}

/// Check that the coefficient-space operator reproduces the classical second
/// eigenvalue globally and on every nontrivial component.
pub fn verify_spectral_collapse<T: Scalar>(
    topology: &Topology,
    assignment: &ProbabilityAssignment<T>,
    d: usize,
    tol: T,
) -> Result<CollapseReport<T>> {
    let classical = crate::gossip::lambda2_of(topology, assignment)?;
    let op = build_quantum_operator(topology, assignment, d)?;
    let quantum = lambda2_quantum(&op)?;

    let components = induced_components(d, topology.n_vertices)?;
    let mut per_partition: Vec<(Vec<usize>, T)> = Vec::new();
    let mut max_dev = (quantum - classical).abs();
    for comp in &components {
        if comp.indices.len() < 2 {
            continue;
        }
        let l = component_lambda2(&op, &comp.indices)?;
        max_dev = max_dev.max((l - classical).abs());
        if !per_partition.iter().any(|(p, _)| *p == comp.partition) {
            per_partition.push((comp.partition.clone(), l));
        }
    }
    Ok(CollapseReport {
        lambda2_quantum: quantum,
        lambda2_classical: classical,
        per_partition,
        max_deviation: max_dev,
        ok: max_dev <= tol,
    })
}

// Density-matrix side: the Hilbert-space oracle for the coefficient action.

/// `b_{mu_1} kron .. kron b_{mu_N}` for one tuple.
pub fn basis_product<T: Scalar>(basis: &GellMannBasis<T>, tuple: &[usize]) -> CMatrix<T> {
    let mut acc = basis.matrices[tuple[0]].clone();
    for &m in &tuple[1..] {
        acc = acc.kron(&basis.matrices[m]);
    }
    acc
}

/// Expand a density matrix into tuple coefficients, normalized so the
/// all-zero tuple (pure trace) carries coefficient one.
pub fn expand_density<T: Scalar>(
    rho: &CMatrix<T>,
    basis: &GellMannBasis<T>,
    n: usize,
) -> Result<CoefficientState<T>> {
    let d = basis.d;
    let dim = coefficient_dim(d, n)?;
    if rho.n != d.pow(n as u32) {
        return Err(Error::DimensionMismatch(format!(
            "density matrix is {}x{}, expected side {}",
            rho.n,
            rho.n,
            d.pow(n as u32)
        )));
    }
    let base = d * d;
    let mut coeffs = vec![T::zero(); dim];
    let mut norm = T::zero();
    for (idx, slot) in coeffs.iter_mut().enumerate() {
        let mut tuple = vec![0usize; n];
        let mut rest = idx;
        for s in (0..n).rev() {
            tuple[s] = rest % base;
            rest /= base;
        }
        let lam = basis_product(basis, &tuple);
        let tr = rho.trace_product(&lam);
        *slot = tr.re;
        if idx == 0 {
            norm = tr.re;
        }
    }
    if norm == T::zero() {
        return Err(Error::InvalidParameter("traceless density matrix".into()));
    }
    for c in coeffs.iter_mut() {
        *c /= norm;
    }
    CoefficientState::new(d, n, coeffs)
}

/// Unitary that exchanges qudits `j` and `k` on the full Hilbert space.
pub fn swap_unitary<T: Scalar>(d: usize, n: usize, j: usize, k: usize) -> CMatrix<T> {
    let dim = d.pow(n as u32);
    let mut u = CMatrix::zeros(dim);
    let pow = |e: usize| d.pow(e as u32);
    let pj = pow(n - 1 - j);
    let pk = pow(n - 1 - k);
    for a in 0..dim {
        let dj = a / pj % d;
        let dk = a / pk % d;
        let b = a + dk * pj + dj * pk - dj * pj - dk * pk;
        u.set(b, a, Complex::new(T::one(), T::zero()));
    }
    u
}

/// Random density matrix (Hermitian, positive, unit trace) from a seeded
/// complex square root.
pub fn random_density(d: usize, n: usize, rng: &mut crate::rng::SplitMix64) -> CMatrix<f64> {
    let dim = d.pow(n as u32);
    let mut a = CMatrix::<f64>::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            a.set(i, j, Complex::new(rng.next_normal(), rng.next_normal()));
        }
    }
    let rho = a.matmul(&a.adjoint());
    let tr = rho.trace().re;
    let mut out = rho;
    for v in out.data.iter_mut() {
        *v /= Complex::new(tr, 0.0);
    }
    out
}
