//! Sparse multivariate polynomials over Q(i).
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], so iteration is in
//! ascending graded-lex order and the leading term is the last entry.
//!
//! Division by a single divisor `f`: repeatedly cancel the leading term of
//! the running dividend `g` against `LT(f)` when `LT(f) | LT(g)`, otherwise
//! move `LT(g)` to the remainder. Every step strictly lowers the leading
//! monomial, so the loop ends. If `g = q·f` exactly, then `LT(g) = LT(q)·LT(f)`
//! is always divisible and no term is ever moved to the remainder: for one
//! divisor the remainder is zero exactly when `f` divides `g`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::monomial::Monomial;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

/// Common denominator and `(monomial, re, im)` numerators.
type Cleared<'a> = (BigInt, Vec<(&'a Monomial, i64, i64)>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussianRational::one())
    }

    /// The coordinate function `z_j`.
    pub fn var(nvars: usize, j: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, j), GaussianRational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: GaussianRational) -> Self {
        assert_eq!(m.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, it: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u16>, GaussianRational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            if e.len() != nvars {
                return Err(Error::NvarsMismatch(e.len(), nvars));
            }
            p.add_term(Monomial::from_slice(&e), c);
        }
        Ok(p)
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u16], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms.iter().map(|(e, c)| (e.to_vec(), GaussianRational::from_int(*c))),
        )
        .expect("exponent length")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in the single variable `j`.
    pub fn degree_in(&self, j: usize) -> Option<u16> {
        self.terms.keys().map(|m| m.0[j]).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, o: &MultiPoly) -> Result<()> {
        if self.nvars != o.nvars {
            Err(Error::NvarsMismatch(self.nvars, o.nvars))
        } else {
            Ok(())
        }
    }

    /// Exact ring arithmetic with an explicit variable-count check.
    pub fn arith(&self, o: &MultiPoly, op: ArithOp) -> Result<MultiPoly> {
        self.check(o)?;
        Ok(match op {
            ArithOp::Add => self.add_ref(o),
            ArithOp::Sub => self.add_scaled(o, &-GaussianRational::one()),
            ArithOp::Mul => self.mul_ref(o),
        })
    }

    fn add_ref(&self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// `self + c·o`.
    pub fn add_scaled(&self, o: &MultiPoly, c: &GaussianRational) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        if c.is_zero() {
            return out;
        }
        for (m, v) in &o.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Coefficients times their common denominator, when they all fit in i64.
    fn cleared_i64(&self) -> Option<Cleared<'_>> {
        let l = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
        let int = |q: &BigRational| (q.numer() * (&l / q.denom())).to_i64();
        let v = self
            .terms
            .iter()
            .map(|(m, c)| Some((m, int(&c.re)?, int(&c.im)?)))
            .collect::<Option<Vec<_>>>()?;
        Some((l, v))
    }

    /// Product on cleared machine integers; `None` on overflow.
    fn mul_small(&self, o: &MultiPoly) -> Option<MultiPoly> {
        let (l1, a) = self.cleared_i64()?;
        let (l2, b) = o.cleared_i64()?;
        let mut acc: HashMap<Monomial, (i128, i128)> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
        for &(m1, ar, ai) in &a {
            let (ar, ai) = (ar as i128, ai as i128);
            for &(m2, br, bi) in &b {
                let (br, bi) = (br as i128, bi as i128);
                let re = (ar * br).checked_sub(ai * bi)?;
                let im = (ar * bi).checked_add(ai * br)?;
                let e = acc.entry(m1.mul(m2)).or_insert((0, 0));
                e.0 = e.0.checked_add(re)?;
                e.1 = e.1.checked_add(im)?;
            }
        }
        let den = l1 * l2;
        let q = |x: i128| BigRational::new(BigInt::from(x), den.clone());
        Some(MultiPoly {
            nvars: self.nvars,
            terms: acc
                .into_iter()
                .filter(|(_, (re, im))| *re != 0 || *im != 0)
                .map(|(m, (re, im))| (m, GaussianRational::new(q(re), q(im))))
                .collect(),
        })
    }

    fn mul_ref(&self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "nvars mismatch");
        if self.is_zero() || o.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        if let Some(p) = self.mul_small(o) {
            return p;
        }
        self.mul_big(o)
    }

    fn mul_big(&self, o: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, j: usize) -> Result<MultiPoly> {
        if j >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: j,
                bound: self.nvars,
            });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[j] -= 1;
            out.add_term(dm, c.mul_int(e as i64));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars)
            .map(|j| self.partial_derivative(j).expect("in range"))
            .collect()
    }

    /// Common total degree of all terms, after checking the Euler identity
    /// `Σ_j z_j ∂_j f = d·f` exactly.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        let d = self.total_degree().ok_or(Error::ZeroPolynomial)?;
        if self.terms.keys().any(|m| m.degree() != d) {
            return Err(Error::Inhomogeneous);
        }
        let mut euler = MultiPoly::zero(self.nvars);
        for j in 0..self.nvars {
            euler = &euler + &(&MultiPoly::var(self.nvars, j) * &self.partial_derivative(j)?);
        }
        if euler != self.scale(&GaussianRational::from_int(d as i64)) {
            return Err(Error::Inconsistent("Euler identity failed".into()));
        }
        Ok(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.total_degree() {
            None => true,
            Some(d) => self.terms.keys().all(|m| m.degree() == d),
        }
    }

    /// Single-divisor division: `(q, r)` with `g = q·self + r`, no term of `r`
    /// divisible by `LT(self)`.
    pub fn div_rem_of(&self, g: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        self.check(g)?;
        let (lm, lc) = self.leading_term().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = lc.inv();
        let mut p = g.clone();
        let mut q = MultiPoly::zero(self.nvars);
        let mut r = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c * &lc_inv;
                let neg = -&qc;
                for (fm, fc) in &self.terms {
                    p.add_term(fm.mul(&qm), fc * &neg);
                }
                q.add_term(qm, qc);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        Ok((q, r))
    }

    /// If `self` divides `g`, the quotient.
    pub fn divides(&self, g: &MultiPoly) -> Result<Option<MultiPoly>> {
        let (q, r) = self.div_rem_of(g)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// `self / z_j` when every term contains `z_j`.
    pub fn div_by_var(&self, j: usize) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[j] == 0 {
                return None;
            }
            let mut k = m.clone();
            k.0[j] -= 1;
            terms.insert(k, c.clone());
        }
        Some(MultiPoly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn eval(&self, z: &[GaussianRational]) -> GaussianRational {
        assert_eq!(z.len(), self.nvars);
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &z[j].pow(e as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn eval_c64(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= z[j].powu(e as u32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sum of coefficient magnitudes; bounds |f| on the unit polydisc.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.values().map(|c| c.to_c64().norm()).sum()
    }

    /// Composition `f(images_0, ..., images_{n})`, all images sharing one
    /// variable count.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::NvarsMismatch(images.len(), self.nvars));
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if images.iter().any(|p| p.nvars != target) {
            return Err(Error::Dimension("images with different variable counts".into()));
        }
        let maxdeg: Vec<u16> = (0..self.nvars).map(|j| self.degree_in(j).unwrap_or(0)).collect();
        let powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .zip(&maxdeg)
            .map(|(p, &d)| {
                let mut v = vec![MultiPoly::one(target)];
                for k in 1..=d as usize {
                    let next = &v[k - 1] * p;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[j][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `f(base + t·dir)` as a univariate polynomial in `t`.
    pub fn restrict_to_line(&self, base: &[GaussianRational], dir: &[GaussianRational]) -> Result<UniPoly> {
        if base.len() != self.nvars || dir.len() != self.nvars {
            return Err(Error::NvarsMismatch(base.len(), self.nvars));
        }
        let images: Vec<MultiPoly> = base
            .iter()
            .zip(dir)
            .map(|(b, d)| MultiPoly::constant(1, b.clone()) + MultiPoly::var(1, 0).scale(d))
            .collect();
        Ok(UniPoly::from_multipoly(&self.substitute(&images)?))
    }

    /// Coefficients of `self` as a polynomial in `z_j`, lowest power first;
    /// each coefficient keeps the full variable set with `z_j` absent.
    pub fn coefficients_in(&self, j: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(j).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); d + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let k = m.0[j] as usize;
            let mut mm = m.clone();
            mm.0[j] = 0;
            out[k].add_term(mm, c.clone());
        }
        out
    }

    /// Substitutes `z_j = value` and keeps the variable count.
    pub fn specialize(&self, j: usize, value: &GaussianRational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[j];
            let mut mm = m.clone();
            mm.0[j] = 0;
            out.add_term(mm, c * &value.pow(e as u32));
        }
        out
    }

    /// Drops variable `j` (which must not occur).
    pub fn drop_var(&self, j: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            debug_assert_eq!(m.0[j], 0);
            let mut e = m.0.clone();
            e.remove(j);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// True when `self = c·o` for some nonzero scalar c.
    pub fn is_proportional(&self, o: &MultiPoly) -> bool {
        if self.nvars != o.nvars || self.terms.len() != o.terms.len() || self.is_zero() {
            return false;
        }
        let (m0, c0) = self.leading_term().unwrap();
        let Some(d0) = o.terms.get(m0) else { return false };
        let ratio = d0 / c0;
        self.terms
            .iter()
            .all(|(m, c)| o.terms.get(m).is_some_and(|d| *d == c * &ratio))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "nvars mismatch");
        self.add_ref(o)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "nvars mismatch");
        self.add_scaled(o, &-GaussianRational::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.mul_ref(o)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: MultiPoly) -> MultiPoly {
        &self + &o
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: MultiPoly) -> MultiPoly {
        &self - &o
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: MultiPoly) -> MultiPoly {
        &self * &o
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-GaussianRational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| if e == 1 { format!("z{j}") } else { format!("z{j}^{e}") })
                    .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::random::{random_poly, PolyRng};
    use proptest::prelude::*;

    fn z(n: usize, j: usize) -> MultiPoly {
        MultiPoly::var(n, j)
    }

    #[test]
    fn machine_integer_product_matches_exact() {
        let mut rng = PolyRng::new(40);
        for _ in 0..20 {
            let f = random_poly(&mut rng, 3, 3, 6).scale(&"2/3-1/7i".parse().unwrap());
            let g = random_poly(&mut rng, 3, 2, 5).scale(&"5/11".parse().unwrap());
            assert_eq!(f.mul_small(&g).unwrap(), f.mul_big(&g));
        }
        let huge = MultiPoly::constant(2, "9223372036854775808".parse().unwrap()).add_ref(&z(2, 0));
        assert!(huge.mul_small(&huge).is_none());
        assert_eq!(&huge * &huge, huge.mul_big(&huge));
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&z(2, 0) + &z(2, 1)) * &(&z(2, 0) - &z(2, 1));
        let expect = MultiPoly::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert_eq!(p, expect);
        assert!((&p * &MultiPoly::zero(2)).is_zero());
    }

    #[test]
    fn trinomial_square() {
        let s = &(&z(3, 0) + &z(3, 1)) + &z(3, 2);
        let sq = &s * &s;
        assert_eq!(sq.num_terms(), 6);
        assert_eq!(
            sq.coefficient(&Monomial::from_slice(&[1, 1, 0])),
            GaussianRational::from_int(2)
        );
        assert_eq!(
            sq.coefficient(&Monomial::from_slice(&[0, 0, 2])),
            GaussianRational::from_int(1)
        );
    }

    #[test]
    fn arith_rejects_mismatch() {
        assert!(z(2, 0).arith(&z(3, 0), ArithOp::Add).is_err());
    }

    #[test]
    fn derivatives() {
        let f = MultiPoly::from_int_terms(3, &[(&[2, 1, 0], 1)]);
        assert_eq!(
            f.partial_derivative(0).unwrap(),
            MultiPoly::from_int_terms(3, &[(&[1, 1, 0], 2)])
        );
        assert!(MultiPoly::one(3).partial_derivative(0).unwrap().is_zero());
        let g = MultiPoly::from_int_terms(3, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[1, 1, 1], 1)]);
        assert_eq!(
            g.partial_derivative(2).unwrap(),
            MultiPoly::from_int_terms(3, &[(&[1, 1, 0], 1)])
        );
        assert!(g.partial_derivative(3).is_err());
    }

    #[test]
    fn homogeneous_degree_cases() {
        let f = MultiPoly::from_int_terms(2, &[(&[2, 1], 1)]);
        assert_eq!(f.homogeneous_degree().unwrap(), 3);
        let g = MultiPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 2], 1)]);
        assert_eq!(g.homogeneous_degree(), Err(Error::Inhomogeneous));
        assert_eq!(MultiPoly::zero(2).homogeneous_degree(), Err(Error::ZeroPolynomial));
        let mut rng = PolyRng::new(5);
        let cubic = rng.homogeneous(4, 3);
        assert_eq!(cubic.homogeneous_degree().unwrap(), 3);
    }

    #[test]
    fn divisibility_examples() {
        let f = &z(3, 0) + &z(3, 1);
        let q = &z(3, 0).pow(2) - &z(3, 2).pow(2);
        let g = &f * &q;
        assert_eq!(f.divides(&g).unwrap(), Some(q));
        assert_eq!(f.divides(&(&g + &z(3, 0))).unwrap(), None);
        assert!(MultiPoly::zero(3).divides(&g).is_err());
    }

    #[test]
    fn restriction_examples() {
        let g = |v: i64| GaussianRational::from_int(v);
        let f = &z(2, 0) * &z(2, 1);
        let u = f.restrict_to_line(&[g(0), g(0)], &[g(1), g(1)]).unwrap();
        assert_eq!(u, UniPoly::new(vec![g(0), g(0), g(1)]));
        let h = &z(2, 0).pow(2) + &z(2, 1).pow(2);
        let u = h.restrict_to_line(&[g(1), g(0)], &[g(0), g(1)]).unwrap();
        assert_eq!(u, UniPoly::new(vec![g(1), g(0), g(1)]));
    }

    #[test]
    fn restriction_degree_bound_on_random_lines() {
        let mut rng = PolyRng::new(11);
        let f = random_poly(&mut rng, 3, 4, 6);
        for _ in 0..10 {
            let base = rng.int_vector(3);
            let dir = rng.int_vector(3);
            let u = f.restrict_to_line(&base, &dir).unwrap();
            assert!(u.degree().unwrap_or(0) as u32 <= f.total_degree().unwrap());
        }
    }

    #[test]
    fn euler_identity_random() {
        let mut rng = PolyRng::new(3);
        for d in 1..5 {
            let f = rng.homogeneous(4, d);
            let mut e = MultiPoly::zero(4);
            for j in 0..4 {
                e = &e + &(&z(4, j) * &f.partial_derivative(j).unwrap());
            }
            assert_eq!(e, f.scale(&GaussianRational::from_int(d as i64)));
        }
    }

    #[test]
    fn divides_product_and_not_perturbed() {
        let mut rng = PolyRng::new(17);
        for k in 0..100 {
            let f = random_poly(&mut rng, 3, 1 + (k % 3) as u32, 4);
            let q = random_poly(&mut rng, 3, (k % 4) as u32, 4);
            if f.is_constant() {
                continue;
            }
            let g = &f * &q;
            let got = f.divides(&g).unwrap().expect("divisible");
            assert_eq!(&got * &f, g);
            // a monomial not divisible by f (lower degree than f) cannot be absorbed
            let m = MultiPoly::var(3, k % 3);
            if f.total_degree().unwrap() > 1 {
                assert!(f.divides(&(&g + &m)).unwrap().is_none());
            }
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(seed in 0u64..500) {
            let mut rng = PolyRng::new(seed);
            let a = random_poly(&mut rng, 3, 2, 4);
            let b = random_poly(&mut rng, 3, 2, 4);
            let c = random_poly(&mut rng, 3, 1, 3);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn restriction_is_multiplicative(seed in 0u64..200) {
            let mut rng = PolyRng::new(seed);
            let a = random_poly(&mut rng, 3, 2, 4);
            let b = random_poly(&mut rng, 3, 2, 4);
            let base = rng.int_vector(3);
            let dir = rng.int_vector(3);
            let lhs = (&a * &b).restrict_to_line(&base, &dir).unwrap();
            let rhs = &a.restrict_to_line(&base, &dir).unwrap() * &b.restrict_to_line(&base, &dir).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
