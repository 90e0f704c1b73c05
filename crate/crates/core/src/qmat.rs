//! Dense complex linear algebra for the spectral oracle path.
//!
//! Matrices are small (4×4 for the pair, at most 256×256 for chains), so
//! everything is dense, row-major and allocation-per-operation.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Absolute tolerance on `|A[i][j] - conj(A[j][i])|` for Hermitian inputs.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues in `[-SQRT_CLAMP, 0)` are treated as zero by [`matrix_sqrt`].
pub const SQRT_CLAMP: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square matrix of complex entries, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension { expected: 1, found: 0 });
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidDimension {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::InvalidDimension {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(dim, entries)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(psi: &[Complex64]) -> Self {
        Self::from_fn(psi.len(), |i, j| psi[i] * psi[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Entrywise complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise `|A - B|`; infinite when the dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A[i][j] - conj(A[j][i])|`.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.max_asymmetry() <= HERMITIAN_TOL
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * x[j]).sum())
            .collect()
    }

    pub fn kron(&self, other: &Self) -> Self {
        kron(self, other)
    }

    fn check_same_dim(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_same_dim(rhs);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_same_dim(rhs);
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_same_dim(rhs);
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Pauli matrices in the `{|+⟩, |−⟩}` (σᶻ = ±1) basis.
pub mod pauli {
    use super::ComplexMatrix;
    use num_complex::Complex64;

    pub fn sigma_x() -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        m[(1, 0)] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn sigma_y() -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = Complex64::new(0.0, -1.0);
        m[(1, 0)] = Complex64::new(0.0, 1.0);
        m
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&[1.0, -1.0])
    }

    /// σʸ ⊗ σʸ, the spin-flip operator for two qubits.
    pub fn sigma_yy() -> ComplexMatrix {
        sigma_y().kron(&sigma_y())
    }
}

/// Spectral decomposition `A = V diag(values) V†` of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `Σ_k w_k |v_k⟩⟨v_k|`.
    pub fn synthesize(&self, weights: &[f64]) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n);
        for (k, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                if vik == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.synthesize(&self.values)
    }

    /// Applies `f` to every eigenvalue; a non-finite image is a domain error.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
        let weights = self
            .values
            .iter()
            .map(|&x| {
                let y = f(x);
                if y.is_finite() {
                    Ok(y)
                } else {
                    Err(Error::Domain { eigenvalue: x })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.synthesize(&weights))
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Eigenvalues come back ascending (stable with respect to the order in which
/// they end up on the diagonal). Each eigenvector is rotated so that its
/// largest-magnitude component is real and positive.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    let asym = a.max_asymmetry();
    if asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian { asymmetry: asym });
    }
    let n = a.dim;

    // Work on the exactly Hermitian part.
    let mut m = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex64::new(a[(i, i)].re, 0.0)
        } else {
            (a[(i, j)] + a[(j, i)].conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                if jacobi_rotate(&mut m, &mut v, p, q) {
                    rotated = true;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let values = order.iter().map(|&k| diag[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        let phase = canonical_phase(&v, k);
        for i in 0..n {
            vectors[(i, col)] = v[(i, k)] * phase;
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Annihilates `m[p][q]`. Returns false when the element is already
/// negligible relative to the diagonal.
fn jacobi_rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) -> bool {
    let n = m.dim;
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return false;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    if r <= f64::EPSILON * libm::sqrt((app * aqq).abs()) {
        return false;
    }

    // diag(1, e^{-iφ}) makes the pair real; then a real Jacobi rotation.
    let e = (apq / r).conj();
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;

    // U = [[c, s], [-s e, c e]] on the (p, q) plane.
    let u_qp = e * -s;
    let u_qq = e * c;

    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * c + akq * u_qp;
        m[(k, q)] = akp * s + akq * u_qq;
    }
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = apk * c + aqk * u_qp.conj();
        m[(q, k)] = apk * s + aqk * u_qq.conj();
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = Complex64::new(app - t * r, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * r, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * u_qp;
        v[(k, q)] = vkp * s + vkq * u_qq;
    }
    true
}

/// Unit phase that makes the first (near-)largest component of column `k`
/// real and positive.
fn canonical_phase(v: &ComplexMatrix, k: usize) -> Complex64 {
    let n = v.dim;
    let max = (0..n).map(|i| v[(i, k)].norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return ONE;
    }
    let pivot = (0..n)
        .map(|i| v[(i, k)])
        .find(|z| z.norm() >= max * (1.0 - 1e-12))
        .unwrap_or(ONE);
    pivot.conj() / pivot.norm()
}

/// `Σ_k f(λ_k) |v_k⟩⟨v_k|` for Hermitian `a`.
pub fn matrix_function(a: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    hermitian_eigen(a)?.map(f)
}

pub fn matrix_exp(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    matrix_function(a, libm::exp)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn matrix_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(a)?;
    sqrt_from_eigen(&eig, SQRT_CLAMP)
}

pub(crate) fn sqrt_from_eigen(eig: &EigenDecomposition, clamp: f64) -> Result<ComplexMatrix> {
    if let Some(&bad) = eig.values.iter().find(|&&x| x < -clamp) {
        return Err(Error::Domain { eigenvalue: bad });
    }
    eig.map(|x| libm::sqrt(x.max(0.0)))
}

/// Normalized Gibbs state `e^{-βH}/Z` built by spectral calculus.
#[derive(Debug, Clone)]
pub struct GibbsState {
    pub rho: ComplexMatrix,
    /// `ln Z`, computed without forming `e^{-βE}` for the ground energy.
    pub log_partition: f64,
}

pub fn gibbs_state(h: &ComplexMatrix, beta: f64) -> Result<GibbsState> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::param("beta", beta, "must be finite and non-negative"));
    }
    let eig = hermitian_eigen(h)?;
    let e0 = eig.values[0];
    let weights: Vec<f64> = eig.values.iter().map(|&e| libm::exp(-beta * (e - e0))).collect();
    let sum: f64 = weights.iter().sum();
    let probs: Vec<f64> = weights.iter().map(|w| w / sum).collect();
    Ok(GibbsState {
        rho: eig.synthesize(&probs),
        log_partition: -beta * e0 + libm::log(sum),
    })
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    ComplexMatrix::from_fn(na * nb, |i, j| a[(i / nb, j / nb)] * b[(i % nb, j % nb)])
}

/// Reduced density matrix of two qubits out of `num_sites`.
///
/// Site 0 is the leftmost tensor factor. The kept pair is ordered with the
/// lower site index as the left factor of the 4×4 result.
pub fn partial_trace(rho: &ComplexMatrix, keep: (usize, usize), num_sites: usize) -> Result<ComplexMatrix> {
    if num_sites < 2 || num_sites >= usize::BITS as usize {
        return Err(Error::InvalidDimension {
            expected: 2,
            found: num_sites,
        });
    }
    let dim = 1usize << num_sites;
    if rho.dim != dim {
        return Err(Error::InvalidDimension {
            expected: dim,
            found: rho.dim,
        });
    }
    let (lo, hi) = if keep.0 < keep.1 { keep } else { (keep.1, keep.0) };
    if lo == hi || hi >= num_sites {
        return Err(Error::InvalidDimension {
            expected: num_sites,
            found: hi.max(lo),
        });
    }
    let bit_lo = num_sites - 1 - lo;
    let bit_hi = num_sites - 1 - hi;
    let kept_mask = (1usize << bit_lo) | (1usize << bit_hi);
    let pair_index = |x: usize| ((x >> bit_lo) & 1) << 1 | ((x >> bit_hi) & 1);

    let mut out = ComplexMatrix::zeros(4);
    for i in 0..dim {
        let rest = i & !kept_mask;
        let pi = pair_index(i);
        // Only columns that agree with row i on the traced-out sites.
        for pj in 0..4 {
            let j = rest | ((pj >> 1) << bit_lo) | ((pj & 1) << bit_hi);
            out[(pi, pj)] += rho[(i, j)];
        }
    }
    Ok(out)
}
