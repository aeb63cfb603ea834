use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::multipoly::MultiPoly;
use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<GaussianRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| GaussianRational::from_int(v)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![GaussianRational::one()],
        }
    }

    /// Reads a polynomial in one variable.
    pub fn from_multipoly(p: &MultiPoly) -> Self {
        assert_eq!(p.nvars(), 1, "univariate input expected");
        let d = p.total_degree().unwrap_or(0) as usize;
        let mut c = vec![GaussianRational::zero(); d + 1];
        for (m, v) in p.terms() {
            c[m.0[0] as usize] = v.clone();
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    /// Order of vanishing at t = 0.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.inv();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn eval(&self, t: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_int(k as i64))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = d.leading().unwrap().inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![GaussianRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = &r[k + j] - &(&c * dc);
                r[k + j] = v;
            }
            q[k] = c;
        }
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = uni_gcd(self, &self.derivative()).expect("nonzero");
        self.div_rem(&g).expect("nonzero gcd").0.monic()
    }
}

/// Monic gcd by the Euclidean algorithm.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y)?.1;
        x = y;
        y = r.monic();
    }
    Ok(x.monic())
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = GaussianRational::zero();
        UniPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = GaussianRational::zero();
        UniPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) - o.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        UniPoly::new(c)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})t^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::random::PolyRng;

    #[test]
    fn gcd_examples() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(uni_gcd(&a, &b).unwrap(), UniPoly::from_ints(&[-1, 1]));
        let c = UniPoly::from_ints(&[1, 0, 1]);
        let d = UniPoly::from_ints(&[2, 1]);
        assert_eq!(uni_gcd(&c, &d).unwrap(), UniPoly::one());
        assert!(uni_gcd(&UniPoly::zero(), &UniPoly::zero()).is_err());
    }

    #[test]
    fn gcd_of_constructed_products() {
        let mut rng = PolyRng::new(9);
        for _ in 0..20 {
            let p = UniPoly::new(rng.int_vector(4)).monic();
            let q = UniPoly::new(rng.int_vector(3));
            let r = UniPoly::new(rng.int_vector(3));
            if p.degree() != Some(3) || uni_gcd(&q, &r).unwrap().degree() != Some(0) {
                continue;
            }
            let g = uni_gcd(&(&p * &q), &(&p * &r)).unwrap();
            assert_eq!(g, p);
            assert!((&p * &q).div_rem(&g).unwrap().1.is_zero());
        }
    }

    #[test]
    fn squarefree() {
        // (t-1)^2 (t+2)
        let a = UniPoly::from_ints(&[-1, 1]);
        let b = UniPoly::from_ints(&[2, 1]);
        let p = &(&a * &a) * &b;
        assert_eq!(p.squarefree_part(), &a * &b);
    }
}
