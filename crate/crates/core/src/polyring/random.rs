//! Seeded generators for "generic" test and scenario data.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::monomial::{monomials_of_degree, Monomial};
use super::multipoly::MultiPoly;
use crate::exactnum::GaussianRational;

/// Coefficients of generated polynomials are integers in `[-COEFF_BOUND, COEFF_BOUND]`.
pub const COEFF_BOUND: i64 = 9;

pub struct PolyRng {
    rng: ChaCha8Rng,
}

impl PolyRng {
    pub fn new(seed: u64) -> Self {
        PolyRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream `index` of `seed`.
    pub fn stream(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        PolyRng { rng }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn nonzero_int(&mut self) -> i64 {
        loop {
            let v = self.int(-COEFF_BOUND, COEFF_BOUND);
            if v != 0 {
                return v;
            }
        }
    }

    pub fn scalar(&mut self) -> GaussianRational {
        GaussianRational::from_int(self.int(-COEFF_BOUND, COEFF_BOUND))
    }

    pub fn nonzero_scalar(&mut self) -> GaussianRational {
        GaussianRational::from_int(self.nonzero_int())
    }

    pub fn int_vector(&mut self, n: usize) -> Vec<GaussianRational> {
        (0..n).map(|_| self.scalar()).collect()
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Standard complex normal sample (Box-Muller).
    pub fn complex_normal(&mut self) -> Complex64 {
        let u1: f64 = self.rng.random::<f64>().max(1e-300);
        let u2: f64 = self.rng.random::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        let th = 2.0 * std::f64::consts::PI * u2;
        Complex64::new(r * th.cos(), r * th.sin()) / std::f64::consts::SQRT_2
    }

    /// Dense homogeneous polynomial of degree `d` with every coefficient
    /// drawn from `[-9, 9]`, redrawn until nonzero.
    pub fn homogeneous(&mut self, nvars: usize, d: u32) -> MultiPoly {
        loop {
            let terms = monomials_of_degree(nvars, d)
                .into_iter()
                .map(|m| (m.0.to_vec(), self.scalar()));
            let p = MultiPoly::from_terms(nvars, terms).expect("lengths agree");
            if !p.is_zero() {
                return p;
            }
        }
    }
}

/// Sparse random polynomial with at most `nterms` terms of total degree ≤ `deg`.
pub fn random_poly(rng: &mut PolyRng, nvars: usize, deg: u32, nterms: usize) -> MultiPoly {
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let d = rng.int(0, deg as i64) as u32;
        let ms = monomials_of_degree(nvars, d);
        let m: &Monomial = &ms[rng.int(0, ms.len() as i64 - 1) as usize];
        terms.push((m.0.to_vec(), rng.scalar()));
    }
    MultiPoly::from_terms(nvars, terms).expect("lengths agree")
}
