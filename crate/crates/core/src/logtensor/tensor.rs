//! Alternating tensors in Λ^p(C^r*) with exact entries. Index tuples are
//! stored 0-based and ascending; `e_j*` is the j-th dual basis covector.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::forms::{index_tuples, merge_sign, permutation_parity, Indices};
use crate::polyring::PolyRng;

#[derive(Clone, PartialEq, Eq)]
pub struct ResidueTensor {
    r: usize,
    p: usize,
    entries: BTreeMap<Indices, GaussianRational>,
}

/// A 1-form `Σ c_j e_j*`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Covector {
    pub coords: Vec<GaussianRational>,
}

impl Covector {
    pub fn new(coords: Vec<GaussianRational>) -> Self {
        Covector { coords }
    }

    pub fn basis(r: usize, j: usize) -> Self {
        let mut coords = vec![GaussianRational::zero(); r];
        coords[j] = GaussianRational::one();
        Covector { coords }
    }

    pub fn r(&self) -> usize {
        self.coords.len()
    }

    pub fn to_tensor(&self) -> ResidueTensor {
        let mut t = ResidueTensor::zero(self.r(), 1);
        for (j, c) in self.coords.iter().enumerate() {
            t.add_entry(vec![j], c.clone());
        }
        t
    }
}

impl From<&Covector> for ResidueTensor {
    fn from(c: &Covector) -> Self {
        c.to_tensor()
    }
}

impl ResidueTensor {
    pub fn zero(r: usize, p: usize) -> Self {
        ResidueTensor {
            r,
            p,
            entries: BTreeMap::new(),
        }
    }

    /// The degree-0 tensor `c`.
    pub fn scalar(r: usize, c: GaussianRational) -> Self {
        let mut t = Self::zero(r, 0);
        t.add_entry(vec![], c);
        t
    }

    /// Builds from 0-based tuples in any order; reordering picks up the
    /// permutation sign, repeated indices are rejected.
    pub fn from_entries<I>(r: usize, p: usize, it: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Indices, GaussianRational)>,
    {
        if p > r {
            return Err(Error::Dimension(format!("degree {p} exceeds pole count {r}")));
        }
        let mut t = Self::zero(r, p);
        for (idx, c) in it {
            if idx.len() != p {
                return Err(Error::Dimension(format!(
                    "tuple {idx:?} has length {}, expected {p}",
                    idx.len()
                )));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= r) {
                return Err(Error::IndexOutOfRange { index: bad, bound: r });
            }
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Dimension(format!("repeated index in {idx:?}")));
            }
            t.add_entry(sorted, if permutation_parity(&idx) { -c } else { c });
        }
        Ok(t)
    }

    pub fn from_int_entries(r: usize, p: usize, entries: &[(&[usize], i64)]) -> Self {
        Self::from_entries(
            r,
            p,
            entries
                .iter()
                .map(|(i, c)| (i.to_vec(), GaussianRational::from_int(*c))),
        )
        .expect("well-formed literal")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Indices, &GaussianRational)> {
        self.entries.iter()
    }

    pub fn get(&self, idx: &[usize]) -> GaussianRational {
        self.entries.get(idx).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// The single entry of a degree-0 tensor.
    pub fn scalar_value(&self) -> GaussianRational {
        self.get(&[])
    }

    fn add_entry(&mut self, idx: Indices, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.entries.entry(idx.clone()).or_insert_with(GaussianRational::zero);
        *e += &c;
        if e.is_zero() {
            self.entries.remove(&idx);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut t = Self::zero(self.r, self.p);
        for (i, v) in &self.entries {
            t.add_entry(i.clone(), v * c);
        }
        t
    }

    pub fn add(&self, o: &ResidueTensor) -> Result<Self> {
        if self.r != o.r || self.p != o.p {
            return Err(Error::Dimension(format!(
                "adding Λ^{}(C^{}) and Λ^{}(C^{})",
                self.p, self.r, o.p, o.r
            )));
        }
        let mut t = self.clone();
        for (i, v) in &o.entries {
            t.add_entry(i.clone(), v.clone());
        }
        Ok(t)
    }

    /// Dense coordinates over `index_tuples(r, p)`.
    pub fn to_vector(&self) -> Vec<GaussianRational> {
        index_tuples(self.r, self.p).iter().map(|i| self.get(i)).collect()
    }

    pub fn from_vector(r: usize, p: usize, v: &[GaussianRational]) -> Self {
        let mut t = Self::zero(r, p);
        for (i, c) in index_tuples(r, p).into_iter().zip(v) {
            t.add_entry(i, c.clone());
        }
        t
    }

    pub fn as_covector(&self) -> Option<Covector> {
        (self.p == 1).then(|| Covector::new(self.to_vector()))
    }
}

impl fmt::Debug for ResidueTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ^{}(C^{}){{", self.p, self.r)?;
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let one_based: Vec<usize> = i.iter().map(|x| x + 1).collect();
            write!(f, "{one_based:?}: {c}")?;
        }
        write!(f, "}}")
    }
}

pub fn tensor_wedge(a: &ResidueTensor, b: &ResidueTensor) -> Result<ResidueTensor> {
    if a.r != b.r {
        return Err(Error::PoleCountMismatch(a.r, b.r));
    }
    let mut out = ResidueTensor::zero(a.r, a.p + b.p);
    if a.p + b.p > a.r {
        return Ok(out);
    }
    for (i, x) in &a.entries {
        for (j, y) in &b.entries {
            if let Some((k, odd)) = merge_sign(i, j) {
                let v = x * y;
                out.add_entry(k, if odd { -v } else { v });
            }
        }
    }
    Ok(out)
}

/// `α_1 ∧ ... ∧ α_k`.
pub fn wedge_all(r: usize, covs: &[Covector]) -> Result<ResidueTensor> {
    let mut acc = ResidueTensor::scalar(r, GaussianRational::one());
    for c in covs {
        acc = tensor_wedge(&acc, &c.to_tensor())?;
    }
    Ok(acc)
}

pub fn tensor_contract(a: &ResidueTensor, u: &[GaussianRational]) -> Result<ResidueTensor> {
    if a.p == 0 {
        return Err(Error::DegreeZero);
    }
    if u.len() != a.r {
        return Err(Error::PoleCountMismatch(u.len(), a.r));
    }
    let mut out = ResidueTensor::zero(a.r, a.p - 1);
    for (i, x) in &a.entries {
        for (k, &ik) in i.iter().enumerate() {
            if u[ik].is_zero() {
                continue;
            }
            let mut rest = i.clone();
            rest.remove(k);
            let v = x * &u[ik];
            out.add_entry(rest, if k % 2 == 1 { -v } else { v });
        }
    }
    Ok(out)
}

fn basis_vector(r: usize, j: usize) -> Vec<GaussianRational> {
    Covector::basis(r, j).coords
}

/// Matrix of `v ↦ i_v a`, rows indexed by `(p-1)`-tuples.
fn contraction_matrix(a: &ResidueTensor) -> Result<ExactMatrix> {
    let rows = index_tuples(a.r, a.p - 1);
    let pos: BTreeMap<&Indices, usize> = rows.iter().enumerate().map(|(k, i)| (i, k)).collect();
    let mut m = ExactMatrix::zeros(rows.len(), a.r);
    for j in 0..a.r {
        let c = tensor_contract(a, &basis_vector(a.r, j))?;
        for (i, v) in c.entries() {
            m[(pos[i], j)] = v.clone();
        }
    }
    Ok(m)
}

/// Basis of `{v : i_v a = 0}`.
pub fn tensor_kernel(a: &ResidueTensor) -> Result<Vec<Vec<GaussianRational>>> {
    if a.is_zero() {
        return Err(Error::ZeroTensor);
    }
    if a.p == 0 {
        return Err(Error::DegreeZero);
    }
    Ok(contraction_matrix(a)?.kernel_basis())
}

pub fn is_decomposable(a: &ResidueTensor) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroTensor);
    }
    if a.p == 0 {
        return Ok(true);
    }
    Ok(tensor_kernel(a)?.len() == a.r - a.p)
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub c: GaussianRational,
    pub covectors: Vec<Covector>,
}

impl Decomposition {
    pub fn rewedge(&self) -> Result<ResidueTensor> {
        let r = self.covectors.first().map_or(0, |c| c.r());
        Ok(wedge_all(r, &self.covectors)?.scale(&self.c))
    }
}

/// `a = c · α_1 ∧ ... ∧ α_p` with the `α_i` spanning the annihilator of ker(a).
pub fn decompose(a: &ResidueTensor) -> Result<Decomposition> {
    if !is_decomposable(a)? {
        return Err(Error::NotDecomposable);
    }
    let kernel = if a.p == 0 { vec![] } else { tensor_kernel(a)? };
    let covectors: Vec<Covector> = if kernel.is_empty() {
        (0..a.r).map(|j| Covector::basis(a.r, j)).collect()
    } else {
        ExactMatrix::from_rows(kernel)?
            .kernel_basis()
            .into_iter()
            .map(Covector::new)
            .collect()
    };
    if covectors.len() != a.p {
        return Err(Error::Inconsistent(format!(
            "annihilator has dimension {}, expected {}",
            covectors.len(),
            a.p
        )));
    }
    let mu = wedge_all(a.r, &covectors)?;
    let (idx, v) = a.entries().next().expect("nonzero");
    let m = mu.get(idx);
    if m.is_zero() {
        return Err(Error::Inconsistent("re-wedge misses a support entry".into()));
    }
    let c = v * &m.inv();
    if mu.scale(&c) != *a {
        return Err(Error::Inconsistent("re-wedge differs from input".into()));
    }
    if a.p == 2 {
        cross_check_p2(a)?;
    }
    Ok(Decomposition { c, covectors })
}

/// For a decomposable 2-tensor θ with θ(u, v) = λ_ij ≠ 0 at u = e_i, v = e_j:
/// θ = (1/θ(u,v)) i_u θ ∧ i_v θ.
fn cross_check_p2(a: &ResidueTensor) -> Result<()> {
    let (idx, lam) = a.entries().next().expect("nonzero");
    let iu = tensor_contract(a, &basis_vector(a.r, idx[0]))?;
    let iv = tensor_contract(a, &basis_vector(a.r, idx[1]))?;
    if tensor_wedge(&iu, &iv)?.scale(&lam.inv()) != *a {
        return Err(Error::Inconsistent("i_u θ ∧ i_v θ construction disagrees".into()));
    }
    Ok(())
}

/// Obstructions to decomposability; empty exactly when `a` is decomposable.
pub fn plucker_defects(a: &ResidueTensor) -> Result<Vec<GaussianRational>> {
    if a.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let mut out = Vec::new();
    match a.p {
        0 | 1 => {}
        2 => {
            for q in index_tuples(a.r, 4) {
                let l = |x: usize, y: usize| a.get(&[q[x], q[y]]);
                let psi = &(&(&l(0, 1) * &l(2, 3)) - &(&l(0, 2) * &l(1, 3))) + &(&l(0, 3) * &l(1, 2));
                if !psi.is_zero() {
                    out.push(psi);
                }
            }
        }
        p => {
            for xi in index_tuples(a.r, p - 1) {
                let mut c = a.clone();
                for &k in xi.iter().rev() {
                    c = tensor_contract(&c, &basis_vector(a.r, k))?;
                }
                let w = tensor_wedge(&c, a)?;
                out.extend(w.entries().map(|(_, v)| v.clone()));
            }
        }
    }
    Ok(out)
}

/// Entry `μ_{kl}` (0-based k, l) of a corank-2 tensor: the coefficient of the
/// complementary tuple, antisymmetric in (k, l).
fn corank2_mu(a: &ResidueTensor, k: usize, l: usize) -> GaussianRational {
    if k == l {
        return GaussianRational::zero();
    }
    let (lo, hi) = (k.min(l), k.max(l));
    let comp: Indices = (0..a.r).filter(|&j| j != lo && j != hi).collect();
    let v = a.get(&comp);
    if k < l {
        v
    } else {
        -v
    }
}

#[derive(Clone, Debug)]
pub struct Corank2Decomposition {
    /// `θ_3, ..., θ_r`.
    pub thetas: Vec<Covector>,
    /// `μ_12^{r-3}`.
    pub factor: GaussianRational,
}

/// Explicit factorization of a decomposable tensor with `r = p + 2`.
///
/// With `ρ_k^j = (-1)^{k-1} μ_{kj}` (1-based), the covectors are
/// `θ_j = -ρ_j^2 e_1* - ρ_j^1 e_2* + ρ_2^1 e_j*`, j = 3..r, and
/// `θ_3 ∧ ... ∧ θ_r = μ_12^{r-3} a`.
pub fn decompose_corank2(a: &ResidueTensor) -> Result<Corank2Decomposition> {
    if a.r != a.p + 2 {
        return Err(Error::Dimension(format!(
            "corank-2 factorization needs r = p + 2 (r = {}, p = {})",
            a.r, a.p
        )));
    }
    if !is_decomposable(a)? {
        return Err(Error::NotDecomposable);
    }
    let mu12 = corank2_mu(a, 0, 1);
    if mu12.is_zero() {
        return Err(Error::ZeroNormalizer(
            "μ_12 vanishes; reorder the poles so that the entry omitting poles 1 and 2 is nonzero".into(),
        ));
    }
    // 1-based ρ_k^j = (-1)^{k-1} μ_kj
    let rho = |k: usize, j: usize| {
        let m = corank2_mu(a, k - 1, j - 1);
        if (k - 1) % 2 == 1 {
            -m
        } else {
            m
        }
    };
    let r = a.r;
    let rho21 = rho(2, 1);
    let thetas: Vec<Covector> = (3..=r)
        .map(|j| {
            let mut c = vec![GaussianRational::zero(); r];
            c[0] = -rho(j, 2);
            c[1] = -rho(j, 1);
            c[j - 1] = rho21.clone();
            Covector::new(c)
        })
        .collect();
    let factor = mu12.pow((r - 3) as u32);
    if wedge_all(r, &thetas)? != a.scale(&factor) {
        return Err(Error::Inconsistent(
            "corank-2 re-wedge differs from μ_12^{r-3}·a".into(),
        ));
    }
    Ok(Corank2Decomposition { thetas, factor })
}

/// `i_R` in Φ-coordinates: contraction against the degree vector.
pub fn radial_contraction(a: &ResidueTensor, degrees: &[u32]) -> Result<ResidueTensor> {
    if degrees.len() != a.r {
        return Err(Error::PoleCountMismatch(degrees.len(), a.r));
    }
    let d: Vec<GaussianRational> = degrees.iter().map(|&x| GaussianRational::from_int(x as i64)).collect();
    tensor_contract(a, &d)
}

/// Basis of the p-tensors annihilated by the radial contraction.
pub fn radial_kernel(degrees: &[u32], p: usize) -> Result<Vec<ResidueTensor>> {
    let r = degrees.len();
    if p == 0 || p > r {
        return Err(Error::Dimension(format!("need 1 ≤ p ≤ r (p = {p}, r = {r})")));
    }
    let cols = index_tuples(r, p);
    let rows = index_tuples(r, p - 1);
    let pos: BTreeMap<&Indices, usize> = rows.iter().enumerate().map(|(k, i)| (i, k)).collect();
    let mut m = ExactMatrix::zeros(rows.len(), cols.len());
    for (c, idx) in cols.iter().enumerate() {
        let e = ResidueTensor::from_entries(r, p, [(idx.clone(), GaussianRational::one())])?;
        for (i, v) in radial_contraction(&e, degrees)?.entries() {
            m[(pos[i], c)] = v.clone();
        }
    }
    Ok(m.kernel_basis()
        .into_iter()
        .map(|v| ResidueTensor::from_vector(r, p, &v))
        .collect())
}

pub fn random_covector(rng: &mut PolyRng, r: usize) -> Covector {
    Covector::new(rng.int_vector(r))
}

/// Dense random tensor with integer entries in [-9, 9].
pub fn random_tensor(rng: &mut PolyRng, r: usize, p: usize) -> ResidueTensor {
    let v = rng.int_vector(index_tuples(r, p).len());
    ResidueTensor::from_vector(r, p, &v)
}

/// Wedge of `p` random covectors, redrawn until nonzero.
pub fn random_decomposable(rng: &mut PolyRng, r: usize, p: usize) -> ResidueTensor {
    loop {
        let covs: Vec<Covector> = (0..p).map(|_| random_covector(rng, r)).collect();
        let t = wedge_all(r, &covs).expect("same r");
        if !t.is_zero() {
            return t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(r: usize, j: usize) -> ResidueTensor {
        Covector::basis(r, j).to_tensor()
    }

    fn q(v: i64) -> GaussianRational {
        GaussianRational::from_int(v)
    }

    #[test]
    fn wedge_examples() {
        let e12 = tensor_wedge(&e(4, 0), &e(4, 1)).unwrap();
        assert_eq!(e12, ResidueTensor::from_int_entries(4, 2, &[(&[0, 1], 1)]));
        assert!(tensor_wedge(&e12, &e(4, 1)).unwrap().is_zero());
    }

    #[test]
    fn graded_anticommutativity() {
        let mut rng = PolyRng::new(31);
        for k in 0..40 {
            let (p, s) = (1 + k % 3, 1 + k % 2);
            let a = random_tensor(&mut rng, 6, p);
            let b = random_tensor(&mut rng, 6, s);
            let ab = tensor_wedge(&a, &b).unwrap();
            let ba = tensor_wedge(&b, &a).unwrap();
            assert_eq!(ab, if p * s % 2 == 1 { ba.scale(&q(-1)) } else { ba });
        }
    }

    #[test]
    fn contraction_examples() {
        let e12 = tensor_wedge(&e(4, 0), &e(4, 1)).unwrap();
        assert_eq!(tensor_contract(&e12, &basis_vector(4, 0)).unwrap(), e(4, 1));
        assert!(tensor_contract(&e12, &basis_vector(4, 2)).unwrap().is_zero());
        let mut rng = PolyRng::new(32);
        for _ in 0..30 {
            let a = random_tensor(&mut rng, 5, 3);
            let u = rng.int_vector(5);
            let c = tensor_contract(&tensor_contract(&a, &u).unwrap(), &u).unwrap();
            assert!(c.is_zero());
        }
    }

    #[test]
    fn kernel_examples() {
        let e12 = tensor_wedge(&e(4, 0), &e(4, 1)).unwrap();
        let k = tensor_kernel(&e12).unwrap();
        assert_eq!(k, vec![basis_vector(4, 2), basis_vector(4, 3)]);
        let s = ResidueTensor::from_int_entries(4, 2, &[(&[0, 1], 1), (&[2, 3], 1)]);
        assert!(tensor_kernel(&s).unwrap().is_empty());
        assert_eq!(tensor_kernel(&ResidueTensor::zero(4, 2)), Err(Error::ZeroTensor));
    }

    #[test]
    fn kernel_dimension_bound() {
        let mut rng = PolyRng::new(33);
        for k in 0..100 {
            let r = 3 + k % 5;
            let p = 1 + k % r.min(4);
            let a = random_tensor(&mut rng, r, p);
            if a.is_zero() {
                continue;
            }
            let a = if k % 3 == 0 {
                random_decomposable(&mut rng, r, p)
            } else {
                a
            };
            assert!(tensor_kernel(&a).unwrap().len() <= r - p);
        }
    }

    #[test]
    fn decomposability_examples() {
        let s = ResidueTensor::from_int_entries(4, 2, &[(&[0, 1], 1), (&[2, 3], 1)]);
        assert!(!is_decomposable(&s).unwrap());
        assert_eq!(plucker_defects(&s).unwrap(), vec![q(1)]);
        let mut rng = PolyRng::new(34);
        for _ in 0..20 {
            let a = random_tensor(&mut rng, 3, 2);
            if !a.is_zero() {
                assert!(is_decomposable(&a).unwrap());
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let e12 = tensor_wedge(&e(4, 0), &e(4, 1)).unwrap();
        let d = decompose(&e12).unwrap();
        assert_eq!(d.rewedge().unwrap(), e12);
        let t = ResidueTensor::from_int_entries(3, 2, &[(&[0, 1], 1), (&[0, 2], 1), (&[1, 2], 1)]);
        assert_eq!(decompose(&t).unwrap().rewedge().unwrap(), t);
        let s = ResidueTensor::from_int_entries(4, 2, &[(&[0, 1], 1), (&[2, 3], 1)]);
        assert_eq!(decompose(&s).unwrap_err(), Error::NotDecomposable);
    }

    #[test]
    fn decompose_round_trip_seeded() {
        let mut rng = PolyRng::new(35);
        for k in 0..200 {
            let r = 2 + k % 7;
            let p = 1 + (k / 7) % r.min(4);
            let a = random_decomposable(&mut rng, r, p);
            let d = decompose(&a).unwrap();
            assert_eq!(d.rewedge().unwrap(), a, "r={r} p={p}");
            // scaling keeps the span
            let b = a.scale(&GaussianRational::from_parts((3, 2), (-1, 1)));
            let db = decompose(&b).unwrap();
            let span_a = ExactMatrix::from_rows(d.covectors.iter().map(|c| c.coords.clone()).collect()).unwrap();
            let mut both: Vec<Vec<GaussianRational>> = d.covectors.iter().map(|c| c.coords.clone()).collect();
            both.extend(db.covectors.iter().map(|c| c.coords.clone()));
            assert_eq!(ExactMatrix::from_rows(both).unwrap().rank(), span_a.rank());
        }
    }

    #[test]
    fn mutual_consistency() {
        let mut rng = PolyRng::new(36);
        for k in 0..500 {
            let r = 2 + k % 7;
            let p = 1 + (k / 7) % r.min(4);
            let a = if k % 2 == 0 {
                random_decomposable(&mut rng, r, p)
            } else {
                random_tensor(&mut rng, r, p)
            };
            if a.is_zero() {
                continue;
            }
            let dec = is_decomposable(&a).unwrap();
            assert_eq!(plucker_defects(&a).unwrap().is_empty(), dec, "r={r} p={p} {a:?}");
            assert_eq!(decompose(&a).is_ok(), dec);
        }
    }

    #[test]
    fn nondecomposable_p3() {
        let mut rng = PolyRng::new(37);
        let a = random_tensor(&mut rng, 6, 3);
        assert!(!is_decomposable(&a).unwrap());
        assert!(!plucker_defects(&a).unwrap().is_empty());
    }

    #[test]
    fn corank2_formula() {
        let mut rng = PolyRng::new(38);
        let mut done = 0;
        for k in 0..60 {
            let p = 1 + k % 4;
            let a = random_decomposable(&mut rng, p + 2, p);
            match decompose_corank2(&a) {
                Ok(d) => {
                    assert_eq!(wedge_all(p + 2, &d.thetas).unwrap(), a.scale(&d.factor));
                    assert_eq!(decompose(&a).unwrap().rewedge().unwrap(), a);
                    done += 1;
                }
                Err(Error::ZeroNormalizer(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(done > 50);
        let s = ResidueTensor::from_int_entries(4, 2, &[(&[0, 1], 1), (&[2, 3], 1)]);
        assert_eq!(decompose_corank2(&s).unwrap_err(), Error::NotDecomposable);
    }

    #[test]
    fn corank2_first_slot_sign_is_forced() {
        // With +ρ_j^2 in the first slot the identity already fails for r = 4.
        let mut rng = PolyRng::new(39);
        let a = random_decomposable(&mut rng, 4, 2);
        let d = decompose_corank2(&a).unwrap();
        let flipped: Vec<Covector> = d
            .thetas
            .iter()
            .map(|t| {
                let mut c = t.coords.clone();
                c[0] = -c[0].clone();
                Covector::new(c)
            })
            .collect();
        assert_ne!(wedge_all(4, &flipped).unwrap(), a.scale(&d.factor));
    }

    #[test]
    fn radial_examples() {
        let th = Covector::new(vec![q(2), q(-1), q(5)]).to_tensor();
        assert_eq!(radial_contraction(&th, &[1, 2, 3]).unwrap().scalar_value(), q(15));
        // θ_0^j = -d_j/d_1 e_1* + e_j*
        let th = Covector::new(vec![GaussianRational::from_ratio(-3, 2), q(0), q(1)]).to_tensor();
        assert!(radial_contraction(&th, &[2, 5, 3]).unwrap().is_zero());
        assert!(radial_contraction(&th, &[2, 5]).is_err());
    }

    #[test]
    fn radial_kernel_dimensions() {
        let k = radial_kernel(&[1, 1], 1).unwrap();
        assert_eq!(k, vec![ResidueTensor::from_int_entries(2, 1, &[(&[0], 1), (&[1], -1)])]);
        assert_eq!(radial_kernel(&[1; 6], 2).unwrap().len(), 10);
        for p in 1..5 {
            let degrees: Vec<u32> = (1..=p as u32 + 1).collect();
            assert_eq!(radial_kernel(&degrees, p).unwrap().len(), 1);
        }
    }
}
