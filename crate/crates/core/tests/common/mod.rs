#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use spinpair_core::entanglement::XState;
use spinpair_core::qmat::ComplexMatrix;
use spinpair_core::Complex64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_pure_state(rng: &mut impl Rng) -> [Complex64; 4] {
    let mut v = [(); 4].map(|_| gaussian(rng));
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

/// `GG†/tr(GG†)` with complex Gaussian `G`.
pub fn random_mixed_state(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian(rng));
    let rho = &g * &g.adjoint();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian(rng));
    (&g + &g.adjoint()).scale_real(0.5)
}

pub fn random_unitary_2(rng: &mut impl Rng) -> ComplexMatrix {
    let (a, b) = (gaussian(rng), gaussian(rng));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    ComplexMatrix::new(2, vec![a * phase, -b.conj() * phase, b * phase, a.conj() * phase]).unwrap()
}

pub fn random_xstate(rng: &mut impl Rng) -> XState {
    let (a, b, c): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let total = a + b + 2.0 * c;
    let (u_plus, u_minus, w) = (a / total, b / total, c / total);
    let w_asym = w * rng.random_range(-0.9..0.9);
    let bound = (w * w - w_asym * w_asym).sqrt();
    let z = bound * rng.random_range(-1.0..1.0);
    XState::with_asymmetry(u_plus, u_minus, w, w_asym, z).unwrap()
}
