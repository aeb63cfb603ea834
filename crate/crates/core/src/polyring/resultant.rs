//! Sylvester resultants of polynomials in one distinguished variable with
//! multivariate coefficients.

use num_traits::One;

use super::multipoly::MultiPoly;
use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;

fn trim(c: &[MultiPoly]) -> &[MultiPoly] {
    let mut n = c.len();
    while n > 0 && c[n - 1].is_zero() {
        n -= 1;
    }
    &c[..n]
}

/// Determinant of the Sylvester matrix of `a = Σ a_k t^k` and `b = Σ b_k t^k`
/// (coefficients lowest power first). Computed by fraction-free Bareiss
/// elimination with exact polynomial division.
pub fn sylvester_resultant(a: &[MultiPoly], b: &[MultiPoly]) -> Result<MultiPoly> {
    let a = trim(a);
    let b = trim(b);
    if a.is_empty() || b.is_empty() {
        return Err(Error::Degenerate("zero polynomial in resultant".into()));
    }
    let nvars = a[0].nvars();
    if a.iter().chain(b).any(|p| p.nvars() != nvars) {
        return Err(Error::Dimension("resultant coefficients disagree on nvars".into()));
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return Ok(MultiPoly::one(nvars));
    }
    let mut mat: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::zero(nvars); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

/// Resultant of `f` and `g` with respect to variable `j`; the result keeps
/// the variable count but no longer involves `z_j`.
pub fn resultant_in_var(f: &MultiPoly, g: &MultiPoly, j: usize) -> Result<MultiPoly> {
    sylvester_resultant(&f.coefficients_in(j), &g.coefficients_in(j))
}

pub fn bareiss_determinant(mut a: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let size = a.len();
    let nvars = a[0][0].nvars();
    let mut prev = MultiPoly::one(nvars);
    let mut negate = false;
    for k in 0..size {
        let pivot_row = (k..size)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].num_terms());
        let Some(p) = pivot_row else {
            return Ok(MultiPoly::zero(nvars));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if prev.is_constant() {
                    num.scale(&prev.constant_term().inv())
                } else {
                    prev.divides(&num)?
                        .ok_or_else(|| Error::Inconsistent("inexact Bareiss division".into()))?
                };
            }
            a[i][k] = MultiPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    Ok(if negate {
        det.scale(&-GaussianRational::one())
    } else {
        det
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::random::PolyRng;
    use crate::polyring::unipoly::{uni_gcd, UniPoly};
    use num_traits::Zero;

    fn s() -> MultiPoly {
        MultiPoly::var(1, 0)
    }
    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(1, GaussianRational::from_int(v))
    }

    #[test]
    fn linear_pair() {
        // a = t - s, b = t - 2s  → Sylvester [[1,-s],[1,-2s]] → det = -s
        let a = vec![-&s(), c(1)];
        let b = vec![-&s().scale(&GaussianRational::from_int(2)), c(1)];
        let r = sylvester_resultant(&a, &b).unwrap();
        assert!(r == s() || r == -&s(), "{r}");
    }

    #[test]
    fn common_root_gives_zero() {
        let a = vec![c(0), c(1)];
        assert!(sylvester_resultant(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn coprime_constants() {
        let r = sylvester_resultant(&[c(2)], &[c(3)]).unwrap();
        assert!(r.is_constant() && !r.is_zero());
    }

    #[test]
    fn zero_input_rejected() {
        assert!(sylvester_resultant(&[MultiPoly::zero(1)], &[c(1), c(1)]).is_err());
    }

    /// Resultant vanishes at a specialization exactly when the specialized
    /// polynomials share a root (leading coefficients are kept constant).
    #[test]
    fn vanishing_matches_univariate_gcd() {
        let mut rng = PolyRng::new(21);
        let mut hits = 0;
        for trial in 0..25 {
            // a(t, s) = t^2 + a1(s) t + a0(s); b(t, s) = t^2 + b1(s) t + b0(s)
            let lin = |rng: &mut PolyRng| &MultiPoly::constant(1, rng.scalar()) + &s().scale(&rng.scalar());
            let a = vec![lin(&mut rng), lin(&mut rng), c(1)];
            let mut b = vec![lin(&mut rng), lin(&mut rng), c(1)];
            if trial % 3 == 0 {
                // force a shared root t = s at s = 0 sample
                b = a.clone();
                b[0] = &b[0] + &s();
            }
            let r = sylvester_resultant(&a, &b).unwrap();
            for sv in -3..=3 {
                let v = GaussianRational::from_int(sv);
                let ua = UniPoly::new(a.iter().map(|p| p.eval(std::slice::from_ref(&v))).collect());
                let ub = UniPoly::new(b.iter().map(|p| p.eval(std::slice::from_ref(&v))).collect());
                let g = uni_gcd(&ua, &ub).unwrap();
                let vanishes = r.eval(std::slice::from_ref(&v)).is_zero();
                assert_eq!(vanishes, g.degree().unwrap() > 0, "trial {trial} s={sv}");
                hits += vanishes as usize;
            }
        }
        assert!(hits > 0);
    }
}
