//! Thermal states of the pair and their concurrence.
//!
//! Temperatures are in units with `k = 1`. All closed-form quantities are
//! evaluated from Boltzmann weights shifted by the ground energy,
//! `pᵢ = e^{−β(Eᵢ − E_min)}`, so numerators and denominators never overflow
//! even when `e^{−βE}` alone would.

use core::fmt;

use crate::entanglement::{concurrence_general, Concurrence, XState};
use crate::model::{build_hamiltonian, closed_form_spectrum, PairParams};
use crate::qmat::{gibbs_state, ComplexMatrix};
use crate::{Error, Result};

/// Upper bound on `β·max|Eᵢ|` accepted by [`ThermalPoint::new`].
pub const MAX_EXPONENT: f64 = 700.0;

/// Inverse-temperature search window for threshold roots.
pub const BETA_MIN: f64 = 1e-9;
pub const BETA_MAX: f64 = 1e3;
/// Bisection stops once the bracket is this narrow in `β`.
pub const BETA_TOL: f64 = 1e-14;
/// Points in the logarithmic sign scan used to check root uniqueness.
pub const SCAN_POINTS: usize = 1000;

/// Pair parameters at a positive temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalPoint {
    params: PairParams,
    temperature: f64,
}

impl ThermalPoint {
    pub fn new(params: PairParams, temperature: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::param("T", temperature, "must be finite and > 0"));
        }
        let exponent = closed_form_spectrum(&params).max_abs_energy() / temperature;
        if exponent > MAX_EXPONENT {
            return Err(Error::Overflow { exponent });
        }
        Ok(Self { params, temperature })
    }

    pub fn params(&self) -> &PairParams {
        &self.params
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }
}

/// Shifted Boltzmann weights in the `φ₁..φ₄` order.
struct Weights {
    p: [f64; 4],
    sum: f64,
    ground: f64,
}

fn weights(pt: &ThermalPoint) -> Weights {
    let spec = closed_form_spectrum(&pt.params);
    let ground = spec.ground_energy();
    let beta = pt.beta();
    let p = spec.energies.map(|e| libm::exp(-beta * (e - ground)));
    Weights {
        p,
        sum: p.iter().sum(),
        ground,
    }
}

/// `ln Z` with `Z = 2e^{−βJ} cosh 2βB + 2e^{βJ} cosh 2βJξ`.
pub fn log_partition_function(pt: &ThermalPoint) -> f64 {
    let w = weights(pt);
    -pt.beta() * w.ground + libm::log(w.sum)
}

/// `Z`; finite for every valid [`ThermalPoint`].
pub fn partition_function(pt: &ThermalPoint) -> f64 {
    libm::exp(log_partition_function(pt))
}

/// The Gibbs state `e^{−βH}/Z` in closed form.
pub fn gibbs_xstate(pt: &ThermalPoint) -> Result<XState> {
    let Weights { p, sum, .. } = weights(pt);
    let (xi, delta) = (pt.params.xi(), pt.params.delta());
    // Central block: e^{βJ}[cosh(2βJξ)·1 − sinh(2βJξ)·(δσᶻ + σˣ)/ξ].
    let half_split = 0.5 * (p[3] - p[2]) / sum;
    XState::with_asymmetry(
        p[0] / sum,
        p[1] / sum,
        0.5 * (p[2] + p[3]) / sum,
        -delta / xi * half_split,
        -half_split / xi,
    )
}

/// `C = (2/Z)·max(0, (1/ξ)e^{βJ}|sinh 2βJξ| − e^{−βJ})`.
pub fn concurrence_closed_form(pt: &ThermalPoint) -> Result<Concurrence> {
    let Weights { p, sum, .. } = weights(pt);
    let coherence = 0.5 * (p[3] - p[2]).abs() / pt.params.xi();
    let cross = libm::sqrt(p[0] * p[1]);
    Concurrence::new((2.0 * (coherence - cross) / sum).max(0.0))
}

/// Gibbs state built by exponentiating the Hamiltonian matrix numerically.
pub fn gibbs_matrix_oracle(pt: &ThermalPoint) -> Result<ComplexMatrix> {
    Ok(gibbs_state(&build_hamiltonian(&pt.params), pt.beta())?.rho)
}

/// Concurrence through the matrix route: spectral `e^{−βH}` followed by the
/// general Wootters formula. Independent of every closed-form expression.
pub fn concurrence_oracle(pt: &ThermalPoint) -> Result<Concurrence> {
    concurrence_general(&gibbs_matrix_oracle(pt)?)
}

/// `ln[(1/ξ)e^{βJ}|sinh 2βJξ|] − ln e^{−βJ}`; positive exactly when the
/// thermal state is entangled. `B` does not appear.
pub fn entanglement_margin(coupling: f64, xi: f64, beta: f64) -> f64 {
    let x = 2.0 * beta * coupling.abs() * xi;
    let ln_sinh = if x > 1.0 {
        x + libm::log(-libm::expm1(-2.0 * x)) - core::f64::consts::LN_2
    } else {
        libm::log(libm::sinh(x))
    };
    2.0 * beta * coupling + ln_sinh - libm::log(xi)
}

/// Whether `C > 0` at this point. The answer depends on `(J, ξ, T)` only.
pub fn is_entangled(pt: &ThermalPoint) -> bool {
    entanglement_margin(pt.params.coupling(), pt.params.xi(), pt.beta()) > 0.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingSign {
    /// `J = −1`.
    Ferromagnetic,
    /// `J = +1`.
    Antiferromagnetic,
}

impl CouplingSign {
    pub fn of(coupling: f64) -> Self {
        if coupling < 0.0 {
            CouplingSign::Ferromagnetic
        } else {
            CouplingSign::Antiferromagnetic
        }
    }

    pub fn coupling(self) -> f64 {
        match self {
            CouplingSign::Ferromagnetic => -1.0,
            CouplingSign::Antiferromagnetic => 1.0,
        }
    }
}

impl fmt::Display for CouplingSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CouplingSign::Ferromagnetic => "ferromagnetic",
            CouplingSign::Antiferromagnetic => "antiferromagnetic",
        })
    }
}

/// `g(β) = e^{2βJ} sinh(2βξ) − ξ` for `J = ±1`. Its root in `β` is the
/// inverse threshold temperature; `g < 0` on the hot (separable) side.
pub fn threshold_function(sign: CouplingSign, xi: f64, beta: f64) -> f64 {
    let j = sign.coupling();
    0.5 * (libm::exp(2.0 * beta * (j + xi)) - libm::exp(2.0 * beta * (j - xi))) - xi
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    /// `T_c = 1/β_c`, or `None` when `g` has no root in the search window.
    pub temperature: Option<f64>,
    /// Final `(β_lo, β_hi)` with `g(β_lo) ≤ 0 < g(β_hi)` when a root exists.
    pub bracket: (f64, f64),
    /// `g` at the returned root, or at the hot end of the window otherwise.
    pub residual: f64,
}

/// Threshold temperature above which the pair is separable, for `J = ±1`.
///
/// The root is bracketed by doubling `β` from 1 and then bisected down to
/// [`BETA_TOL`]. Before that `g` is sign-scanned on a log grid over
/// `[BETA_MIN, BETA_MAX]`; more than one sign change is an error.
pub fn threshold_temperature(sign: CouplingSign, xi: f64) -> Result<ThresholdResult> {
    if !(xi.is_finite() && xi >= 1.0) {
        return Err(Error::param("xi", xi, "must be finite and >= 1"));
    }
    let g = |beta: f64| threshold_function(sign, xi, beta);

    let log_span = libm::log(BETA_MAX / BETA_MIN);
    let mut changes = 0;
    let mut prev = g(BETA_MIN) > 0.0;
    for k in 1..SCAN_POINTS {
        let beta = BETA_MIN * libm::exp(log_span * k as f64 / (SCAN_POINTS - 1) as f64);
        let positive = g(beta) > 0.0;
        if positive != prev {
            changes += 1;
        }
        prev = positive;
    }
    if changes > 1 {
        return Err(Error::MultipleRoots { count: changes });
    }

    let mut lo = BETA_MIN;
    let mut hi = 1.0;
    while g(hi) <= 0.0 {
        if hi >= BETA_MAX {
            return Ok(ThresholdResult {
                temperature: None,
                bracket: (lo, hi),
                residual: g(hi),
            });
        }
        lo = hi;
        hi = (2.0 * hi).min(BETA_MAX);
    }

    while hi - lo > BETA_TOL {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (g_lo, g_hi) = (g(lo), g(hi));
    let (root, residual) = if g_lo.abs() <= g_hi.abs() {
        (lo, g_lo)
    } else {
        (hi, g_hi)
    };
    Ok(ThresholdResult {
        temperature: Some(1.0 / root),
        bracket: (lo, hi),
        residual,
    })
}
