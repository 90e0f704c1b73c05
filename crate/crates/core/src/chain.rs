//! Heisenberg chains of 2 to 8 spins in site-dependent fields.
//!
//! Pairwise thermal concurrence on the chain is reported next to the pair
//! model evaluated at the chain's mean field and an effective inhomogeneity
//! `ξ_eff = √(1 + ⟨b²⟩/J²)`, where `⟨b²⟩` is the variance of the local
//! fields. No agreement between the two numbers is asserted.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::entanglement::concurrence_general;
use crate::model::PairParams;
use crate::qmat::{gibbs_state, partial_trace, ComplexMatrix};
use crate::thermal::{concurrence_closed_form, ThermalPoint};
use crate::{Error, Result};

pub const MIN_SITES: usize = 2;
pub const MAX_SITES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    Open,
    /// Adds the bond `(n − 1, 0)`; ignored for two sites, which would
    /// otherwise double the single bond.
    Periodic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainParams {
    coupling: f64,
    fields: Vec<f64>,
    boundary: Boundary,
}

impl ChainParams {
    pub fn new(coupling: f64, fields: Vec<f64>, boundary: Boundary) -> Result<Self> {
        let n = fields.len();
        if !(MIN_SITES..=MAX_SITES).contains(&n) {
            return Err(Error::param("n_sites", n as f64, "must be in [2, 8]"));
        }
        if !coupling.is_finite() || coupling == 0.0 {
            return Err(Error::param("J", coupling, "must be finite and nonzero"));
        }
        if let Some(&bad) = fields.iter().find(|f| !f.is_finite()) {
            return Err(Error::param("fields", bad, "must be finite"));
        }
        Ok(Self {
            coupling,
            fields,
            boundary,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.fields.len()
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.n_sites();
        let mut bonds: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        if self.boundary == Boundary::Periodic && n > 2 {
            bonds.push((n - 1, 0));
        }
        bonds
    }

    /// `⟨B⟩`.
    pub fn mean_field(&self) -> f64 {
        self.fields.iter().sum::<f64>() / self.n_sites() as f64
    }

    /// `⟨b²⟩ = (1/N) Σ (Bᵢ − ⟨B⟩)²`.
    pub fn field_variance(&self) -> f64 {
        let mean = self.mean_field();
        self.fields.iter().map(|b| (b - mean) * (b - mean)).sum::<f64>() / self.n_sites() as f64
    }

    /// `√(1 + ⟨b²⟩/J²)`; reduces to the pair `ξ` for two sites.
    pub fn effective_xi(&self) -> f64 {
        libm::sqrt(1.0 + self.field_variance() / (self.coupling * self.coupling))
    }
}

/// `J Σ σᵢ·σⱼ + Σ Bᵢ σᵢᶻ` over the bonds. Site 0 is the leftmost tensor
/// factor; basis index bit 0 means spin up (`σᶻ = +1`).
pub fn build_chain_hamiltonian(cp: &ChainParams) -> ComplexMatrix {
    let n = cp.n_sites();
    let dim = 1usize << n;
    let bit = |site: usize| 1usize << (n - 1 - site);
    let spin = |x: usize, site: usize| if x & bit(site) == 0 { 1.0 } else { -1.0 };
    let bonds = cp.bonds();
    let flip = Complex64::new(2.0 * cp.coupling, 0.0);

    let mut h = ComplexMatrix::zeros(dim);
    for x in 0..dim {
        let mut diag = 0.0;
        for (site, &b) in cp.fields.iter().enumerate() {
            diag += b * spin(x, site);
        }
        for &(i, j) in &bonds {
            let zz = spin(x, i) * spin(x, j);
            diag += cp.coupling * zz;
            if zz < 0.0 {
                // σˣσˣ + σʸσʸ = 2(σ⁺σ⁻ + σ⁻σ⁺) swaps antiparallel neighbours.
                h[(x, x ^ bit(i) ^ bit(j))] += flip;
            }
        }
        h[(x, x)] += Complex64::new(diag, 0.0);
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainReport {
    pub pair: (usize, usize),
    pub temperature: f64,
    pub concurrence: f64,
    pub effective_xi: f64,
    /// Pair-model concurrence at `(J, ⟨B⟩, ξ_eff, T)`.
    pub pair_model_concurrence: f64,
    /// `|concurrence − pair_model_concurrence|`.
    pub gap: f64,
}

/// Reduced thermal state of `pair` (lower site is the left factor).
pub fn reduced_pair_state(cp: &ChainParams, pair: (usize, usize), temperature: f64) -> Result<ComplexMatrix> {
    check_pair(cp, pair)?;
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(Error::param("T", temperature, "must be finite and > 0"));
    }
    let gibbs = gibbs_state(&build_chain_hamiltonian(cp), 1.0 / temperature)?;
    partial_trace(&gibbs.rho, pair, cp.n_sites())
}

pub fn chain_pair_concurrence(cp: &ChainParams, pair: (usize, usize), temperature: f64) -> Result<ChainReport> {
    let reduced = reduced_pair_state(cp, pair, temperature)?;
    let concurrence = concurrence_general(&reduced)?.value();

    let effective_xi = cp.effective_xi();
    let pair_params = PairParams::from_xi(cp.coupling, cp.mean_field(), effective_xi)?;
    let pair_model = concurrence_closed_form(&ThermalPoint::new(pair_params, temperature)?)?.value();

    Ok(ChainReport {
        pair,
        temperature,
        concurrence,
        effective_xi,
        pair_model_concurrence: pair_model,
        gap: (concurrence - pair_model).abs(),
    })
}

fn check_pair(cp: &ChainParams, (i, j): (usize, usize)) -> Result<()> {
    let n = cp.n_sites();
    if i >= j {
        return Err(Error::param("pair", i as f64, "first index must be below the second"));
    }
    if j >= n {
        return Err(Error::InvalidDimension { expected: n, found: j });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_hamiltonian;
    use crate::qmat::{hermitian_eigen, kron, pauli};
    use alloc::vec;

    fn site_op(op: &ComplexMatrix, site: usize, n: usize) -> ComplexMatrix {
        let mut out = if site == 0 {
            op.clone()
        } else {
            ComplexMatrix::identity(2)
        };
        for s in 1..n {
            let f = if s == site {
                op.clone()
            } else {
                ComplexMatrix::identity(2)
            };
            out = kron(&out, &f);
        }
        out
    }

    /// Chain Hamiltonian assembled from Kronecker products of Pauli matrices.
    fn kron_hamiltonian(cp: &ChainParams) -> ComplexMatrix {
        let n = cp.n_sites();
        let paulis = [pauli::sigma_x(), pauli::sigma_y(), pauli::sigma_z()];
        let mut h = ComplexMatrix::zeros(1 << n);
        for (i, j) in cp.bonds() {
            for s in &paulis {
                let term = &site_op(s, i, n) * &site_op(s, j, n);
                h = &h + &term.scale_real(cp.coupling());
            }
        }
        for (site, &b) in cp.fields().iter().enumerate() {
            h = &h + &site_op(&pauli::sigma_z(), site, n).scale_real(b);
        }
        h
    }

    #[test]
    fn two_sites_match_pair_hamiltonian() {
        let (j, bf, bi) = (-0.8, 0.6, 0.35);
        let cp = ChainParams::new(j, vec![bf + bi, bf - bi], Boundary::Open).unwrap();
        let pair = build_hamiltonian(&PairParams::new(j, bf, bi).unwrap());
        assert!(build_chain_hamiltonian(&cp).max_abs_diff(&pair) < 1e-15);
        let periodic = ChainParams::new(j, vec![bf + bi, bf - bi], Boundary::Periodic).unwrap();
        assert!(build_chain_hamiltonian(&periodic).max_abs_diff(&pair) < 1e-15);
    }

    #[test]
    fn bit_construction_matches_kron() {
        for boundary in [Boundary::Open, Boundary::Periodic] {
            let cp = ChainParams::new(1.3, vec![0.2, -0.7, 1.1, 0.4], boundary).unwrap();
            let diff = build_chain_hamiltonian(&cp).max_abs_diff(&kron_hamiltonian(&cp));
            assert!(diff < 1e-14, "{boundary:?}: {diff}");
        }
    }

    #[test]
    fn uniform_periodic_conserves_magnetization() {
        let cp = ChainParams::new(1.0, vec![0.5; 3], Boundary::Periodic).unwrap();
        let h = build_chain_hamiltonian(&cp);
        let sz = (0..3)
            .map(|s| site_op(&pauli::sigma_z(), s, 3))
            .fold(ComplexMatrix::zeros(8), |acc, m| &acc + &m);
        let comm = &(&h * &sz) - &(&sz * &h);
        assert!(comm.max_abs() < 1e-12);
    }

    #[test]
    fn global_flip_reverses_fields() {
        let fields = vec![0.3, -1.2, 0.8, 0.1];
        let neg: Vec<f64> = fields.iter().map(|b| -b).collect();
        let a = hermitian_eigen(&build_chain_hamiltonian(
            &ChainParams::new(-1.0, fields, Boundary::Open).unwrap(),
        ))
        .unwrap();
        let b = hermitian_eigen(&build_chain_hamiltonian(
            &ChainParams::new(-1.0, neg, Boundary::Open).unwrap(),
        ))
        .unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() < 1e-11);
        }
    }

    #[test]
    fn range_and_pair_errors() {
        assert!(ChainParams::new(1.0, vec![0.0], Boundary::Open).is_err());
        assert!(ChainParams::new(1.0, vec![0.0; 9], Boundary::Open).is_err());
        assert!(ChainParams::new(0.0, vec![0.0; 3], Boundary::Open).is_err());
        let cp = ChainParams::new(1.0, vec![0.0; 3], Boundary::Open).unwrap();
        assert!(chain_pair_concurrence(&cp, (1, 1), 1.0).is_err());
        assert!(chain_pair_concurrence(&cp, (2, 1), 1.0).is_err());
        assert!(chain_pair_concurrence(&cp, (0, 3), 1.0).is_err());
        assert!(chain_pair_concurrence(&cp, (0, 1), 0.0).is_err());
    }

    #[test]
    fn field_statistics() {
        let cp = ChainParams::new(-1.0, vec![1.0, 0.0, -1.0], Boundary::Open).unwrap();
        assert_eq!(cp.mean_field(), 0.0);
        assert!((cp.field_variance() - 2.0 / 3.0).abs() < 1e-15);
        assert!((cp.effective_xi() - libm::sqrt(5.0 / 3.0)).abs() < 1e-15);
        let two = ChainParams::new(2.0, vec![1.5, 0.5], Boundary::Open).unwrap();
        let pair = PairParams::new(2.0, 1.0, 0.5).unwrap();
        assert!((two.effective_xi() - pair.xi()).abs() < 1e-15);
    }

    #[test]
    fn three_site_report_is_valid() {
        let cp = ChainParams::new(-1.0, vec![1.0, 0.0, -1.0], Boundary::Open).unwrap();
        for pair in [(0, 1), (1, 2), (0, 2)] {
            let r = chain_pair_concurrence(&cp, pair, 0.1).unwrap();
            assert!((0.0..=1.0).contains(&r.concurrence));
            assert!(r.effective_xi >= 1.0);
            assert!((r.gap - (r.concurrence - r.pair_model_concurrence).abs()).abs() < 1e-15);
        }
    }
}
