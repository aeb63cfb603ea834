//! Floating-point images of exact polynomials, compiled once for fast
//! repeated evaluation in Newton iterations and quadrature.

use num_complex::Complex64;

use super::multipoly::MultiPoly;

#[derive(Clone, Debug)]
pub struct FloatPoly {
    nvars: usize,
    maxdeg: Vec<usize>,
    terms: Vec<(Vec<u16>, Complex64)>,
    norm: f64,
}

impl FloatPoly {
    pub fn new(p: &MultiPoly) -> Self {
        let nvars = p.nvars();
        let maxdeg = (0..nvars).map(|j| p.degree_in(j).unwrap_or(0) as usize).collect();
        let terms: Vec<(Vec<u16>, Complex64)> = p.terms().map(|(m, c)| (m.exps().to_vec(), c.to_c64())).collect();
        let norm = terms.iter().map(|(_, c)| c.norm()).sum();
        FloatPoly {
            nvars,
            maxdeg,
            terms,
            norm,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Sum of coefficient magnitudes.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let pw = PowerTable::new(z, &self.maxdeg);
        self.eval_with(&pw)
    }

    pub fn eval_with(&self, pw: &PowerTable) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = *c;
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= pw.get(j, k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn max_degree(&self) -> &[usize] {
        &self.maxdeg
    }
}

/// Powers `z_j^k` for all variables up to a per-variable bound.
pub struct PowerTable {
    pows: Vec<Vec<Complex64>>,
}

impl PowerTable {
    pub fn new(z: &[Complex64], maxdeg: &[usize]) -> Self {
        let pows = z
            .iter()
            .zip(maxdeg)
            .map(|(&x, &d)| {
                let mut v = Vec::with_capacity(d + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                v.push(acc);
                for _ in 0..d {
                    acc *= x;
                    v.push(acc);
                }
                v
            })
            .collect();
        PowerTable { pows }
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.pows[j][k]
    }
}

/// Elementwise maximum of degree bounds.
pub fn merged_degrees<'a>(polys: impl IntoIterator<Item = &'a FloatPoly>, nvars: usize) -> Vec<usize> {
    let mut out = vec![0; nvars];
    for p in polys {
        for (o, &d) in out.iter_mut().zip(p.max_degree()) {
            *o = (*o).max(d);
        }
    }
    out
}

/// A polynomial together with its gradient, compiled.
#[derive(Clone, Debug)]
pub struct FloatPolyGrad {
    pub value: FloatPoly,
    pub grad: Vec<FloatPoly>,
}

impl FloatPolyGrad {
    pub fn new(p: &MultiPoly) -> Self {
        FloatPolyGrad {
            value: FloatPoly::new(p),
            grad: p.gradient().iter().map(FloatPoly::new).collect(),
        }
    }
}

/// Relative size of `|f(z)|` for a point scaled to unit norm:
/// `|f(ẑ)| / Σ|coefficients|`.
pub fn relative_value(p: &FloatPoly, z: &[Complex64]) -> f64 {
    let n: f64 = z.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let zh: Vec<Complex64> = z.iter().map(|x| x / n).collect();
    if p.norm() == 0.0 {
        return 0.0;
    }
    p.eval(&zh).norm() / p.norm()
}
