//! Dense complex Newton iteration for square and overdetermined polynomial systems.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::polyring::numeric::merged_degrees;
use crate::polyring::{FloatPolyGrad, PowerTable};

#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions {
    /// Stop once `max |F_k|` falls below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tol: 1e-12,
            max_iter: 50,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NewtonOutcome {
    pub x: Vec<Complex64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Runs Newton on `F(x) = 0`; `eval` returns values and the Jacobian.
/// Overdetermined systems take Gauss–Newton steps.
/// Returns `None` on a singular Jacobian, divergence or no convergence.
pub fn newton<F>(eval: F, x0: Vec<Complex64>, opts: NewtonOptions) -> Option<NewtonOutcome>
where
    F: Fn(&[Complex64]) -> (Vec<Complex64>, DMatrix<Complex64>),
{
    let mut x = x0;
    for it in 0..=opts.max_iter {
        let (f, j) = eval(&x);
        let residual = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if !residual.is_finite() {
            return None;
        }
        if residual <= opts.tol {
            return Some(NewtonOutcome {
                x,
                residual,
                iterations: it,
            });
        }
        if it == opts.max_iter {
            break;
        }
        let rhs = DVector::from_vec(f);
        let step = if j.nrows() == j.ncols() {
            j.lu().solve(&rhs)?
        } else {
            j.svd(true, true).solve(&rhs, 1e-14).ok()?
        };
        for (xi, si) in x.iter_mut().zip(step.iter()) {
            *xi -= si;
        }
        if x.iter().any(|v| !v.is_finite() || v.norm() > 1e12) {
            return None;
        }
    }
    None
}

/// A compiled polynomial system `x ↦ (P_k(embed(x)))_k` where the unknowns
/// fill the non-fixed slots of the ambient point.
pub struct CompiledSystem {
    pub polys: Vec<FloatPolyGrad>,
    /// per polynomial, `1 / Σ|coefficients|`
    pub weights: Vec<f64>,
    maxdeg: Vec<usize>,
}

impl CompiledSystem {
    pub fn new(polys: Vec<FloatPolyGrad>) -> Self {
        let nvars = polys.first().map_or(0, |p| p.value.nvars());
        let mut all = Vec::new();
        for p in &polys {
            all.push(&p.value);
        }
        let maxdeg = merged_degrees(all, nvars);
        let weights = polys
            .iter()
            .map(|p| {
                if p.value.norm() > 0.0 {
                    1.0 / p.value.norm()
                } else {
                    1.0
                }
            })
            .collect();
        CompiledSystem { polys, weights, maxdeg }
    }

    pub fn power_table(&self, z: &[Complex64]) -> PowerTable {
        PowerTable::new(z, &self.maxdeg)
    }

    /// Weighted values and weighted gradients (ambient coordinates).
    pub fn eval(&self, z: &[Complex64], which: &[usize]) -> (Vec<Complex64>, Vec<Vec<Complex64>>) {
        let pw = self.power_table(z);
        let mut vals = Vec::with_capacity(which.len());
        let mut grads = Vec::with_capacity(which.len());
        for &k in which {
            let p = &self.polys[k];
            let w = self.weights[k];
            vals.push(p.value.eval_with(&pw) * w);
            grads.push(p.grad.iter().map(|g| g.eval_with(&pw) * w).collect());
        }
        (vals, grads)
    }

    /// Weighted values only.
    pub fn values(&self, z: &[Complex64]) -> Vec<Complex64> {
        let pw = self.power_table(z);
        self.polys
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| p.value.eval_with(&pw) * *w)
            .collect()
    }
}

pub fn unit_normalize(z: &[Complex64]) -> Vec<Complex64> {
    let n = z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    z.iter().map(|v| v / n).collect()
}

/// Unit norm, then rotate so the largest-modulus coordinate is real positive.
pub fn projective_normalize(z: &[Complex64]) -> Vec<Complex64> {
    let u = unit_normalize(z);
    let big = u
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or_default();
    let phase = big.conj() / big.norm();
    u.iter().map(|v| v * phase).collect()
}

pub fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::MultiPoly;

    #[test]
    fn solves_linear_in_one_step() {
        // x + 2y = 3, x - y = 0
        let eval = |x: &[Complex64]| {
            let f = vec![x[0] + x[1] * 2.0 - 3.0, x[0] - x[1]];
            let one = Complex64::new(1.0, 0.0);
            let j = DMatrix::from_row_slice(2, 2, &[one, one * 2.0, one, -one]);
            (f, j)
        };
        let out = newton(eval, vec![Complex64::new(5.0, 1.0); 2], NewtonOptions::default()).unwrap();
        assert_eq!(out.iterations, 1);
        assert!((out.x[0] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn quadratic_root() {
        let p = FloatPolyGrad::new(&(&MultiPoly::var(1, 0) * &MultiPoly::var(1, 0)));
        let sys = CompiledSystem::new(vec![p]);
        let eval = |x: &[Complex64]| {
            let (v, g) = sys.eval(x, &[0]);
            let shifted = vec![v[0] - 2.0 * sys.weights[0]];
            (shifted, DMatrix::from_row_slice(1, 1, &[g[0][0]]))
        };
        let out = newton(eval, vec![Complex64::new(1.0, 0.1)], NewtonOptions::default()).unwrap();
        assert!((out.x[0].norm() - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn normalization_is_projective() {
        let z = vec![Complex64::new(1.0, 1.0), Complex64::new(0.0, 3.0)];
        let w: Vec<Complex64> = z.iter().map(|v| v * Complex64::new(-2.0, 0.5)).collect();
        assert!(distance(&projective_normalize(&z), &projective_normalize(&w)) < 1e-12);
    }
}
