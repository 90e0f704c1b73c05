//! Two-qubit entanglement measures.
//!
//! The general Wootters concurrence needs the `λᵢ`, the square roots of the
//! eigenvalues of `ρρ̃`. They are obtained here as the singular values of
//! `√ρ·√ρ̃`, read off the Hermitian dilation `[[0, A], [A†, 0]]`. This gives
//! the same numbers as `√eig(√ρ ρ̃ √ρ)` (since `√ρ ρ̃ √ρ = A A†`) but keeps
//! the absolute error of the small `λᵢ` at rounding level instead of its
//! square root, which matters for nearly pure thermal states.

use num_complex::Complex64;

use crate::qmat::{hermitian_eigen, pauli, sqrt_from_eigen, ComplexMatrix};
use crate::{Error, Result};

/// `|tr ρ − 1|` allowed by [`concurrence_general`].
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-10;
/// `|‖ψ‖² − 1|` allowed by [`pure_concurrence`].
pub const NORM_TOL: f64 = 1e-10;

const PROB_TOL: f64 = 1e-14;
const SUM_TOL: f64 = 1e-12;

/// Concurrence value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    pub const ZERO: Concurrence = Concurrence(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..=1.0 + SUM_TOL).contains(&value) {
            return Err(Error::param("C", value, "outside [0, 1]"));
        }
        Ok(Concurrence(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_entangled(self) -> bool {
        self.0 > 0.0
    }

    pub fn formation(self) -> f64 {
        formation_unchecked(self.0.min(1.0))
    }
}

/// Density matrix whose only nonzero entries are the diagonal and the
/// `|+−⟩ ↔ |−+⟩` coherence:
///
/// ```text
/// ⎡ u₊                ⎤
/// ⎢     w + a   z     ⎥
/// ⎢     z     w − a   ⎥
/// ⎣                u₋ ⎦
/// ```
///
/// `a` is zero for a uniform field and nonzero otherwise; it does not enter
/// the concurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub u_plus: f64,
    pub u_minus: f64,
    pub w: f64,
    pub w_asym: f64,
    pub z: f64,
}

impl XState {
    pub fn new(u_plus: f64, u_minus: f64, w: f64, z: f64) -> Result<Self> {
        Self::with_asymmetry(u_plus, u_minus, w, 0.0, z)
    }

    pub fn with_asymmetry(u_plus: f64, u_minus: f64, w: f64, w_asym: f64, z: f64) -> Result<Self> {
        let x = XState {
            u_plus,
            u_minus,
            w,
            w_asym,
            z,
        };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [self.u_plus, self.u_minus, self.w, self.w_asym, self.z];
        if let Some(&bad) = fields.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidState {
                reason: "non-finite entry",
                value: bad,
            });
        }
        let total = self.u_plus + self.u_minus + 2.0 * self.w;
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidState {
                reason: "u_plus + u_minus + 2w != 1",
                value: total,
            });
        }
        let smallest = self.u_plus.min(self.u_minus).min(self.w - self.w_asym.abs());
        if smallest < -PROB_TOL {
            return Err(Error::InvalidState {
                reason: "negative population",
                value: smallest,
            });
        }
        let bound = libm::sqrt((self.w * self.w - self.w_asym * self.w_asym).max(0.0));
        if self.z.abs() > bound + SUM_TOL {
            return Err(Error::InvalidState {
                reason: "|z| exceeds the central-block bound",
                value: self.z,
            });
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m =
            ComplexMatrix::from_diagonal(&[self.u_plus, self.w + self.w_asym, self.w - self.w_asym, self.u_minus]);
        m[(1, 2)] = Complex64::new(self.z, 0.0);
        m[(2, 1)] = Complex64::new(self.z, 0.0);
        m
    }
}

/// `2·max(0, |z| − √(u₊u₋))`.
pub fn concurrence_xstate(x: &XState) -> Result<Concurrence> {
    x.validate()?;
    let cross = libm::sqrt(x.u_plus.max(0.0) * x.u_minus.max(0.0));
    Concurrence::new(2.0 * (x.z.abs() - cross).max(0.0))
}

/// `ρ̃ = (σʸ ⊗ σʸ) ρ* (σʸ ⊗ σʸ)`.
pub fn spin_flip(rho: &ComplexMatrix) -> ComplexMatrix {
    let yy = pauli::sigma_yy();
    &(&yy * &rho.conj()) * &yy
}

/// The `λᵢ` of the Wootters formula in decreasing order.
pub fn wootters_lambdas(rho: &ComplexMatrix) -> Result<[f64; 4]> {
    check_density_matrix(rho)?;
    let eig = hermitian_eigen(rho)?;
    if eig.values[0] < -PSD_TOL {
        return Err(Error::InvalidState {
            reason: "negative eigenvalue",
            value: eig.values[0],
        });
    }
    let sqrt_rho = sqrt_from_eigen(&eig, PSD_TOL)?;
    let a = &sqrt_rho * &spin_flip(&sqrt_rho);

    let dilation = ComplexMatrix::from_fn(8, |i, j| match (i < 4, j < 4) {
        (true, false) => a[(i, j - 4)],
        (false, true) => a[(j, i - 4)].conj(),
        _ => Complex64::new(0.0, 0.0),
    });
    let sv = hermitian_eigen(&dilation)?.values;
    Ok([sv[7].max(0.0), sv[6].max(0.0), sv[5].max(0.0), sv[4].max(0.0)])
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)` of a two-qubit state.
pub fn concurrence_general(rho: &ComplexMatrix) -> Result<Concurrence> {
    let l = wootters_lambdas(rho)?;
    Concurrence::new((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

fn check_density_matrix(rho: &ComplexMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::InvalidDimension {
            expected: 4,
            found: rho.dim(),
        });
    }
    let asym = rho.max_asymmetry();
    if asym > crate::qmat::HERMITIAN_TOL {
        return Err(Error::NotHermitian { asymmetry: asym });
    }
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::InvalidState {
            reason: "trace is not 1",
            value: tr,
        });
    }
    Ok(())
}

/// `2|ad − bc|` for `ψ = a|++⟩ + b|+−⟩ + c|−+⟩ + d|−−⟩`.
pub fn pure_concurrence(psi: &[Complex64; 4]) -> Result<Concurrence> {
    let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm2 - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidState {
            reason: "state is not normalized",
            value: norm2,
        });
    }
    let [a, b, c, d] = *psi;
    Concurrence::new((2.0 * (a * d - b * c).norm()).min(1.0))
}

/// `h(x) = −x log₂ x − (1 − x) log₂(1 − x)`, with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    xlog2x(x) + xlog2x(1.0 - x)
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * libm::log2(x)
    }
}

/// `E(C) = h((1 + √(1 − C²))/2)`.
pub fn entanglement_of_formation(c: f64) -> Result<f64> {
    if !(-SUM_TOL..=1.0 + SUM_TOL).contains(&c) {
        return Err(Error::param("C", c, "outside [0, 1]"));
    }
    Ok(formation_unchecked(c.clamp(0.0, 1.0)))
}

fn formation_unchecked(c: f64) -> f64 {
    let r = libm::sqrt((1.0 - c) * (1.0 + c));
    // 1 − x computed as C²/(2(1 + r)) so tiny C keeps its precision.
    let small = c * c / (2.0 * (1.0 + r));
    let large = 1.0 - small;
    xlog2x(large) + xlog2x(small)
}
