//! The two-spin Hamiltonian, its closed-form spectrum and ground-state phases.

use core::fmt;

use num_complex::Complex64;

use crate::qmat::ComplexMatrix;
use crate::{Error, Result};

/// Below this `|δ|` the mixed-sector eigenvectors use their `δ → 0` limit.
pub const DELTA_LIMIT: f64 = 1e-14;

/// Half-width of the degenerate band around a ground-state phase boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Parameters `(J, B, b)` of the pair Hamiltonian.
///
/// `B` is stored as `|B|`: every observable is even in `B`. The sign of `b`
/// is kept (it selects which spin sees the larger field) but nothing
/// downstream depends on it except the labelling of amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairParams {
    coupling: f64,
    field: f64,
    inhomogeneity: f64,
    delta: f64,
    xi: f64,
}

impl PairParams {
    pub fn new(coupling: f64, field: f64, inhomogeneity: f64) -> Result<Self> {
        check_coupling(coupling)?;
        check_finite("B", field)?;
        check_finite("b", inhomogeneity)?;
        let delta = inhomogeneity / coupling;
        Ok(Self {
            coupling,
            field: field.abs(),
            inhomogeneity,
            delta,
            xi: libm::hypot(1.0, delta),
        })
    }

    /// Parameters from the inhomogeneity `ξ ≥ 1` instead of `b`; the
    /// resulting `b = |J|·√(ξ² − 1)` is non-negative.
    pub fn from_xi(coupling: f64, field: f64, xi: f64) -> Result<Self> {
        check_coupling(coupling)?;
        check_finite("B", field)?;
        if !(xi.is_finite() && xi >= 1.0) {
            return Err(Error::param("xi", xi, "must be finite and >= 1"));
        }
        let inhomogeneity = coupling.abs() * libm::sqrt((xi - 1.0) * (xi + 1.0));
        Ok(Self {
            coupling,
            field: field.abs(),
            inhomogeneity,
            delta: inhomogeneity / coupling,
            xi,
        })
    }

    /// `J`.
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// `B ≥ 0`.
    pub fn field(&self) -> f64 {
        self.field
    }

    /// `b`.
    pub fn inhomogeneity(&self) -> f64 {
        self.inhomogeneity
    }

    /// `δ = b/J`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `ξ = √(1 + δ²)`.
    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// `ξ − 1`, without cancellation for small `δ`.
    pub fn xi_minus_one(&self) -> f64 {
        self.delta * self.delta / (1.0 + self.xi)
    }

    pub fn is_ferromagnetic(&self) -> bool {
        self.coupling < 0.0
    }

    /// Same `(J, B)` with `b → −b`.
    pub fn mirrored(&self) -> Self {
        Self {
            inhomogeneity: -self.inhomogeneity,
            delta: -self.delta,
            ..*self
        }
    }
}

fn check_coupling(j: f64) -> Result<()> {
    if !j.is_finite() || j == 0.0 {
        return Err(Error::param("J", j, "must be finite and nonzero"));
    }
    Ok(())
}

fn check_finite(name: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::param(name, x, "must be finite"));
    }
    Ok(())
}

/// `J σ₁·σ₂ + (B + b) σ₁ᶻ + (B − b) σ₂ᶻ` in the basis `|++⟩, |+−⟩, |−+⟩, |−−⟩`.
pub fn build_hamiltonian(p: &PairParams) -> ComplexMatrix {
    let (j, bf, bi) = (p.coupling, p.field, p.inhomogeneity);
    let mut h = ComplexMatrix::from_diagonal(&[j + 2.0 * bf, -j + 2.0 * bi, -j - 2.0 * bi, j - 2.0 * bf]);
    h[(1, 2)] = Complex64::new(2.0 * j, 0.0);
    h[(2, 1)] = Complex64::new(2.0 * j, 0.0);
    h
}

/// Amplitudes over `|++⟩, |+−⟩, |−+⟩, |−−⟩`.
pub type Amplitudes = [Complex64; 4];

/// The four eigenpairs `φ₁..φ₄` with
/// `E₁ = J + 2B`, `E₂ = J − 2B`, `E₃ = −J(1 − 2ξ)`, `E₄ = −J(1 + 2ξ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSpectrum {
    pub energies: [f64; 4],
    pub states: [Amplitudes; 4],
}

impl PairSpectrum {
    pub fn ground_energy(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_energy(&self) -> f64 {
        self.energies.iter().map(|e| e.abs()).fold(0.0, f64::max)
    }
}

pub fn closed_form_spectrum(p: &PairParams) -> PairSpectrum {
    let (j, bf, xi, delta) = (p.coupling, p.field, p.xi, p.delta);
    let energies = [j + 2.0 * bf, j - 2.0 * bf, -j * (1.0 - 2.0 * xi), -j * (1.0 + 2.0 * xi)];

    let zero = Complex64::new(0.0, 0.0);
    let re = |x: f64| Complex64::new(x, 0.0);
    let (a, d) = if delta.abs() < DELTA_LIMIT {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        (h, h)
    } else {
        // a = δ − 1 + ξ, d = δ + 1 − ξ over √(2(δ² + (1 − ξ)²))
        let s = p.xi_minus_one();
        let norm = libm::sqrt(2.0 * (delta * delta + s * s));
        ((delta + s) / norm, (delta - s) / norm)
    };
    let states = [
        [re(1.0), zero, zero, zero],
        [zero, zero, zero, re(1.0)],
        [zero, re(a), re(d), zero],
        [zero, re(d), re(-a), zero],
    ];
    PairSpectrum { energies, states }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseLabel {
    /// Ground state `|−−⟩`.
    Product,
    /// Ground state in the `S_z = 0` sector (`φ₃` for `J < 0`, `φ₄` for `J > 0`).
    Entangled,
    /// Both candidates degenerate within [`BOUNDARY_TOL`].
    Boundary,
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseLabel::Product => "ProductPhase",
            PhaseLabel::Entangled => "EntangledPhase",
            PhaseLabel::Boundary => "Boundary",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundPhase {
    pub label: PhaseLabel,
    pub energy: f64,
    /// `0` for the product phase, `1/ξ` for the entangled phase, and the
    /// zero-temperature limit `1/(2ξ)` of the equal mixture on the boundary.
    pub concurrence: f64,
}

/// Critical `ξ` separating the two ground states at field `B`:
/// `1 + B/|J|` for `J < 0` and `B/J − 1` for `J > 0`.
pub fn boundary_xi(coupling: f64, field: f64) -> f64 {
    let scaled = field.abs() / coupling.abs();
    if coupling < 0.0 {
        scaled + 1.0
    } else {
        scaled - 1.0
    }
}

pub fn ground_phase(p: &PairParams) -> GroundPhase {
    let spec = closed_form_spectrum(p);
    let product_energy = spec.energies[1];
    let entangled_energy = if p.is_ferromagnetic() {
        spec.energies[2]
    } else {
        spec.energies[3]
    };
    let gap = p.xi - boundary_xi(p.coupling, p.field);
    if gap.abs() <= BOUNDARY_TOL {
        GroundPhase {
            label: PhaseLabel::Boundary,
            energy: product_energy.min(entangled_energy),
            concurrence: 0.5 / p.xi,
        }
    } else if gap < 0.0 {
        GroundPhase {
            label: PhaseLabel::Product,
            energy: product_energy,
            concurrence: 0.0,
        }
    } else {
        GroundPhase {
            label: PhaseLabel::Entangled,
            energy: entangled_energy,
            concurrence: 1.0 / p.xi,
        }
    }
}
