//! Exterior algebra of polynomial differential forms and vector fields on
//! C^N (N = `nvars`).
//!
//! Sign conventions, fixed once and pinned by tests:
//! * `dz_I ∧ dz_J` is rewritten in ascending order, with sign `(-1)^t` where
//!   `t` counts pairs `(i, j) ∈ I × J` with `i > j`.
//! * `i_X(dz_{i_1} ∧ ... ∧ dz_{i_p}) = Σ_k (-1)^{k-1} X_{i_k} dz_{i_1} ∧ ..(omit k).. ∧ dz_{i_p}`.
//! * `ν = dz_0 ∧ ... ∧ dz_{N-1}`, so `i_X ν = Σ_k (-1)^k X_k dz_{omit k}` and the
//!   rotational of an (N-2)-form ω has `X_k = (-1)^k · [coefficient of dz_{omit k} in dω]`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::polyring::MultiPoly;

pub type Indices = Vec<usize>;

/// Alternating p-form with polynomial coefficients, keyed by ascending index tuples.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Indices, MultiPoly>,
}

/// Polynomial vector field `Σ_k X_k ∂/∂z_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    pub components: Vec<MultiPoly>,
}

/// Sign of the permutation sorting `i ++ j` (both ascending, disjoint).
pub(crate) fn merge_sign(i: &[usize], j: &[usize]) -> Option<(Indices, bool)> {
    let mut inversions = 0usize;
    let mut out = Vec::with_capacity(i.len() + j.len());
    let (mut a, mut b) = (0, 0);
    while a < i.len() || b < j.len() {
        if b == j.len() || (a < i.len() && i[a] < j[b]) {
            out.push(i[a]);
            a += 1;
        } else if a == i.len() || j[b] < i[a] {
            // j[b] jumps over the remaining elements of i
            inversions += i.len() - a;
            out.push(j[b]);
            b += 1;
        } else {
            return None;
        }
    }
    Some((out, inversions % 2 == 1))
}

/// All ascending p-subsets of `0..n`.
pub fn index_tuples(n: usize, p: usize) -> Vec<Indices> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Indices, out: &mut Vec<Indices>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            if n - k < p - cur.len() {
                break;
            }
            cur.push(k);
            rec(k + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

impl PolyForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        PolyForm {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn function(f: MultiPoly) -> Self {
        let mut a = Self::zero(f.nvars(), 0);
        a.add_term(vec![], f);
        a
    }

    /// `dz_i`.
    pub fn dz(nvars: usize, i: usize) -> Self {
        let mut a = Self::zero(nvars, 1);
        a.add_term(vec![i], MultiPoly::one(nvars));
        a
    }

    /// `dz_0 ∧ ... ∧ dz_{N-1}`.
    pub fn volume(nvars: usize) -> Self {
        let mut a = Self::zero(nvars, nvars);
        a.add_term((0..nvars).collect(), MultiPoly::one(nvars));
        a
    }

    /// `df = Σ_j ∂_j f dz_j`.
    pub fn differential(f: &MultiPoly) -> Self {
        let n = f.nvars();
        let mut a = Self::zero(n, 1);
        for j in 0..n {
            a.add_term(vec![j], f.partial_derivative(j).expect("in range"));
        }
        a
    }

    /// Builds from `(indices, coefficient)` records; unsorted tuples are
    /// sorted with the corresponding sign, repeated indices rejected.
    pub fn from_terms<I>(nvars: usize, degree: usize, it: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Indices, MultiPoly)>,
    {
        let mut a = Self::zero(nvars, degree);
        for (idx, f) in it {
            if idx.len() != degree {
                return Err(Error::Dimension(format!(
                    "index tuple {idx:?} has length {}, expected {degree}",
                    idx.len()
                )));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= nvars) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    bound: nvars,
                });
            }
            if f.nvars() != nvars {
                return Err(Error::NvarsMismatch(f.nvars(), nvars));
            }
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Dimension(format!("repeated index in {idx:?}")));
            }
            let odd = permutation_parity(&idx);
            a.add_term(sorted, if odd { -&f } else { f });
        }
        Ok(a)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Indices, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> MultiPoly {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    /// Coefficients over all ascending tuples, including zeros.
    pub fn dense_coefficients(&self) -> Vec<(Indices, MultiPoly)> {
        index_tuples(self.nvars, self.degree)
            .into_iter()
            .map(|i| {
                let c = self.coefficient(&i);
                (i, c)
            })
            .collect()
    }

    fn add_term(&mut self, idx: Indices, f: MultiPoly) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &f;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_shape(&self, o: &PolyForm) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::NvarsMismatch(self.nvars, o.nvars));
        }
        if self.degree != o.degree {
            return Err(Error::Dimension(format!(
                "adding forms of degree {} and {}",
                self.degree, o.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &PolyForm) -> Result<PolyForm> {
        self.same_shape(o)?;
        let mut out = self.clone();
        for (i, f) in &o.terms {
            out.add_term(i.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &PolyForm) -> Result<PolyForm> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PolyForm {
        self.scale(&-GaussianRational::one())
    }

    pub fn scale(&self, c: &GaussianRational) -> PolyForm {
        let mut out = PolyForm::zero(self.nvars, self.degree);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), f.scale(c));
        }
        out
    }

    /// `g · self`.
    pub fn mul_poly(&self, g: &MultiPoly) -> PolyForm {
        let mut out = PolyForm::zero(self.nvars, self.degree);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), f * g);
        }
        out
    }

    pub fn wedge(&self, o: &PolyForm) -> Result<PolyForm> {
        if self.nvars != o.nvars {
            return Err(Error::NvarsMismatch(self.nvars, o.nvars));
        }
        let mut out = PolyForm::zero(self.nvars, self.degree + o.degree);
        if self.degree + o.degree > self.nvars {
            return Ok(out);
        }
        for (i, f) in &self.terms {
            for (j, g) in &o.terms {
                if let Some((k, odd)) = merge_sign(i, j) {
                    let prod = f * g;
                    out.add_term(k, if odd { -&prod } else { prod });
                }
            }
        }
        Ok(out)
    }

    pub fn exterior_derivative(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.nvars, self.degree + 1);
        if self.degree >= self.nvars {
            return out;
        }
        for (i, f) in &self.terms {
            for j in 0..self.nvars {
                if i.contains(&j) {
                    continue;
                }
                let df = f.partial_derivative(j).expect("in range");
                if df.is_zero() {
                    continue;
                }
                let (k, odd) = merge_sign(&[j], i).expect("disjoint");
                out.add_term(k, if odd { -&df } else { df });
            }
        }
        out
    }

    pub fn contract(&self, x: &PolyVectorField) -> Result<PolyForm> {
        if self.degree == 0 {
            return Err(Error::DegreeZero);
        }
        if x.components.len() != self.nvars {
            return Err(Error::NvarsMismatch(x.components.len(), self.nvars));
        }
        let mut out = PolyForm::zero(self.nvars, self.degree - 1);
        for (i, f) in &self.terms {
            for (k, &ik) in i.iter().enumerate() {
                let xk = &x.components[ik];
                if xk.is_zero() {
                    continue;
                }
                let mut rest = i.clone();
                rest.remove(k);
                let t = f * xk;
                out.add_term(rest, if k % 2 == 1 { -&t } else { t });
            }
        }
        Ok(out)
    }

    /// Pullback along the affine map `z = M·s + offset`, with `M` of size
    /// `nvars × m`. Returns a form in `m` variables.
    pub fn pullback_affine(&self, m: &ExactMatrix, offset: &[GaussianRational]) -> Result<PolyForm> {
        if m.rows() != self.nvars || offset.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "map has {} rows, form has {} variables",
                m.rows(),
                self.nvars
            )));
        }
        let target = m.cols();
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| {
                let mut p = MultiPoly::constant(target, offset[i].clone());
                for j in 0..target {
                    p = &p + &MultiPoly::var(target, j).scale(&m[(i, j)]);
                }
                p
            })
            .collect();
        let targets = index_tuples(target, self.degree);
        let mut out = PolyForm::zero(target, self.degree);
        if self.degree > target {
            return Ok(out);
        }
        for (i, f) in &self.terms {
            let g = f.substitute(&images)?;
            if g.is_zero() {
                continue;
            }
            for j in &targets {
                let minor = ExactMatrix::from_rows(
                    i.iter()
                        .map(|&r| j.iter().map(|&c| m[(r, c)].clone()).collect())
                        .collect(),
                )?
                .determinant()?;
                if !minor.is_zero() {
                    out.add_term(j.clone(), g.scale(&minor));
                }
            }
        }
        Ok(out)
    }

    /// Pullback along a linear map of maximal rank `z = M·s`.
    pub fn pullback_linear(&self, m: &ExactMatrix) -> Result<PolyForm> {
        if m.rank() != m.cols() {
            return Err(Error::RankDeficient);
        }
        self.pullback_affine(m, &vec![GaussianRational::zero(); m.rows()])
    }

    /// Restriction to the affine chart `z_chart = 1` (variables of the chart
    /// are the remaining `z`'s in order).
    pub fn dehomogenize(&self, chart: usize) -> Result<PolyForm> {
        let n = self.nvars;
        if chart >= n {
            return Err(Error::IndexOutOfRange { index: chart, bound: n });
        }
        let mut m = ExactMatrix::zeros(n, n - 1);
        let mut offset = vec![GaussianRational::zero(); n];
        offset[chart] = GaussianRational::one();
        let mut col = 0;
        for i in 0..n {
            if i != chart {
                m[(i, col)] = GaussianRational::one();
                col += 1;
            }
        }
        self.pullback_affine(&m, &offset)
    }

    pub fn evaluate(&self, z: &[Complex64]) -> NumericForm {
        assert_eq!(z.len(), self.nvars);
        NumericForm {
            degree: self.degree,
            coefficients: self.terms.iter().map(|(i, f)| (i.clone(), f.eval_c64(z))).collect(),
        }
    }

    /// The vector field X with `dω = i_X ν`, for ω of degree `nvars - 2`.
    pub fn rotational(&self) -> Result<PolyVectorField> {
        if self.degree + 2 != self.nvars {
            return Err(Error::Dimension(format!(
                "rotational needs degree {} (got {})",
                self.nvars.saturating_sub(2),
                self.degree
            )));
        }
        let dw = self.exterior_derivative();
        let n = self.nvars;
        let components = (0..n)
            .map(|k| {
                let omit: Indices = (0..n).filter(|&i| i != k).collect();
                let c = dw.coefficient(&omit);
                if k % 2 == 1 {
                    -&c
                } else {
                    c
                }
            })
            .collect();
        Ok(PolyVectorField { components })
    }

    /// Every coefficient polynomial (nonzero ones only).
    pub fn coefficient_polys(&self) -> Vec<&MultiPoly> {
        self.terms.values().collect()
    }
}

pub(crate) fn permutation_parity(idx: &[usize]) -> bool {
    let mut inv = 0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] > idx[b] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

impl std::fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PolyForm[n={}, p={}]{{", self.nvars, self.degree)?;
        for (k, (i, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i:?}: {c}")?;
        }
        write!(f, "}}")
    }
}

impl PolyVectorField {
    pub fn new(components: Vec<MultiPoly>) -> Self {
        PolyVectorField { components }
    }

    /// `R = Σ z_j ∂/∂z_j`.
    pub fn radial(nvars: usize) -> Self {
        PolyVectorField {
            components: (0..nvars).map(|j| MultiPoly::var(nvars, j)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval_c64(z)).collect()
    }
}

/// Coefficientwise numeric value of a form at a point.
#[derive(Clone, Debug)]
pub struct NumericForm {
    pub degree: usize,
    pub coefficients: BTreeMap<Indices, Complex64>,
}

impl NumericForm {
    pub fn max_abs(&self) -> f64 {
        self.coefficients.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn get(&self, idx: &[usize]) -> Complex64 {
        self.coefficients.get(idx).copied().unwrap_or_default()
    }
}

impl Zero for NumericForm {
    fn zero() -> Self {
        NumericForm {
            degree: 0,
            coefficients: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.coefficients.values().all(|c| c.norm() == 0.0)
    }
}

impl std::ops::Add for NumericForm {
    type Output = NumericForm;
    fn add(mut self, o: NumericForm) -> NumericForm {
        for (k, v) in o.coefficients {
            *self.coefficients.entry(k).or_default() += v;
        }
        self
    }
}
