//! Kupka and generalized Kupka singularities of two-dimensional foliations,
//! the perturbation family of logarithmic 1-forms along a Kupka curve, and
//! the eigenvalue conditions (Poincaré domain, non-resonance).

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::forms::PolyForm;
use crate::logtensor::{radial_contraction, Covector};
use crate::polyring::FloatPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KupkaKind {
    Regular,
    Kupka,
    #[serde(rename = "gK")]
    GeneralizedKupka,
    #[serde(rename = "ndgK")]
    NondegenerateGeneralizedKupka,
    Degenerate,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct KupkaTolerances {
    /// Relative magnitude below which ω and dω count as zero.
    pub zero: f64,
    /// Eigenvalues (relative to the largest) below this count as zero.
    pub eigen: f64,
}

impl Default for KupkaTolerances {
    fn default() -> Self {
        KupkaTolerances {
            zero: 1e-9,
            eigen: 1e-6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KupkaVerdict {
    pub kind: KupkaKind,
    pub omega_magnitude: f64,
    pub d_omega_magnitude: f64,
    /// Eigenvalues of the linear part of rot(ω), affine chart, as `[re, im]`.
    pub eigenvalues: Option<Vec<[f64; 2]>>,
    /// Affine chart used: `z_chart = 1`.
    pub chart: usize,
}

impl KupkaVerdict {
    pub fn eigenvalues_c64(&self) -> Option<Vec<Complex64>> {
        self.eigenvalues
            .as_ref()
            .map(|v| v.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
    }
}

/// `max_I |a_I(x)| / max_I Σ|coeff(a_I)|`.
fn relative_magnitude(a: &PolyForm, x: &[Complex64]) -> f64 {
    let scale = a.terms().map(|(_, c)| c.coefficient_norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    a.evaluate(x).max_abs() / scale
}

/// Classifies the point `z` (homogeneous coordinates) for the foliation of
/// the homogeneous form `w` (a p-form on C^{n+1}). The chart is the largest
/// coordinate; the rotational is taken there, so rot needs `p = n - 2`.
pub fn kupka_classify(w: &PolyForm, z: &[Complex64], tol: &KupkaTolerances) -> Result<KupkaVerdict> {
    if z.len() != w.nvars() {
        return Err(Error::NvarsMismatch(z.len(), w.nvars()));
    }
    let chart = (0..z.len())
        .max_by(|&a, &b| z[a].norm().total_cmp(&z[b].norm()))
        .ok_or_else(|| Error::Dimension("empty point".into()))?;
    let x: Vec<Complex64> = (0..z.len()).filter(|&k| k != chart).map(|k| z[k] / z[chart]).collect();
    let wa = w.dehomogenize(chart)?;
    let dwa = wa.exterior_derivative();
    let omega_magnitude = relative_magnitude(&wa, &x);
    let d_omega_magnitude = relative_magnitude(&dwa, &x);
    let mut verdict = KupkaVerdict {
        kind: KupkaKind::Regular,
        omega_magnitude,
        d_omega_magnitude,
        eigenvalues: None,
        chart,
    };
    if omega_magnitude > tol.zero {
        return Ok(verdict);
    }
    if d_omega_magnitude > tol.zero {
        verdict.kind = KupkaKind::Kupka;
        return Ok(verdict);
    }
    let rot = wa.rotational()?;
    let comps: Vec<FloatPoly> = rot.components.iter().map(FloatPoly::new).collect();
    let m = x.len();
    let mut partials = Vec::with_capacity(m * m);
    for comp in &rot.components {
        for c in 0..m {
            partials.push(FloatPoly::new(&comp.partial_derivative(c)?));
        }
    }
    let jac = DMatrix::from_fn(m, m, |r, c| partials[r * m + c].eval(&x));
    let scale = comps
        .iter()
        .map(|p| p.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let jmax = jac.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if jmax / scale <= tol.zero {
        verdict.kind = KupkaKind::Degenerate;
        return Ok(verdict);
    }
    let eig = jac
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::Numerical("Schur form did not converge".into()))?;
    let eig: Vec<Complex64> = eig.iter().copied().collect();
    let big = eig.iter().map(|v| v.norm()).fold(0.0, f64::max);
    verdict.kind = if eig.iter().all(|v| v.norm() > tol.eigen * big) {
        KupkaKind::NondegenerateGeneralizedKupka
    } else {
        KupkaKind::GeneralizedKupka
    };
    verdict.eigenvalues = Some(eig.iter().map(|v| [v.re, v.im]).collect());
    Ok(verdict)
}

/// Parameter table `t_{ji}`: rows j = 2..n-1, columns i = n..r.
pub type PerturbationParams = Vec<Vec<GaussianRational>>;

pub fn zero_params(n: usize, r: usize) -> PerturbationParams {
    vec![vec![GaussianRational::zero(); r + 1 - n]; n - 2]
}

fn ratio(a: u32, b: u32) -> GaussianRational {
    GaussianRational::from_ratio(a as i64, b as i64)
}

/// Covectors `θ^j = e_j* - A_j e_1* - Σ_i B_{ji} e_i*`, j = 2..n-1, with
/// `A_j = d_j/d_1 - Σ_i t_{ji}` and `B_{ji} = (d_1/d_i) t_{ji}` (i = n..r).
pub fn perturbation_family(degrees: &[u32], n: usize, tau: &PerturbationParams) -> Result<Vec<Covector>> {
    let r = degrees.len();
    if n < 4 || r < n {
        return Err(Error::Dimension(format!(
            "perturbation family needs r ≥ n ≥ 4 (r = {r}, n = {n})"
        )));
    }
    if tau.len() != n - 2 || tau.iter().any(|row| row.len() != r + 1 - n) {
        return Err(Error::Dimension(format!(
            "parameter table must be {} × {}",
            n - 2,
            r + 1 - n
        )));
    }
    let d1 = degrees[0];
    let mut out = Vec::with_capacity(n - 2);
    for (row, j) in tau.iter().zip(2..n) {
        let mut c = vec![GaussianRational::zero(); r];
        let mut a = ratio(degrees[j - 1], d1);
        for t in row {
            a = &a - t;
        }
        c[0] = -a;
        c[j - 1] = GaussianRational::one();
        for (t, i) in row.iter().zip(n..=r) {
            c[i - 1] = -(&ratio(d1, degrees[i - 1]) * t);
        }
        let cov = Covector::new(c);
        if !radial_contraction(&cov.to_tensor(), degrees)?.is_zero() {
            return Err(Error::Inconsistent(format!("θ^{j} is not radial-annihilated")));
        }
        out.push(cov);
    }
    Ok(out)
}

/// Eigenvalues `ρ_1 = d_1`, `ρ_j = d_j - d_1 Σ_i t_{ji}` of the normal type
/// at generic points of `S = {f_1 = ... = f_{n-1} = 0}`.
pub fn normal_type_eigenvalues(degrees: &[u32], n: usize, tau: &PerturbationParams) -> Result<Vec<GaussianRational>> {
    perturbation_family(degrees, n, tau)?;
    let d1 = GaussianRational::from_int(degrees[0] as i64);
    let mut out = vec![d1.clone()];
    for (row, j) in tau.iter().zip(2..n) {
        let mut rho = GaussianRational::from_int(degrees[j - 1] as i64);
        for t in row {
            rho = &rho - &(&d1 * t);
        }
        out.push(rho);
    }
    Ok(out)
}

/// Exact solution of `x_1 + ... + x_n = 0`, `x_j - A_j x_1 - B_j x_n = 0`
/// (j = 2..n-1), scaled so that `x_1 = d_1` when possible.
pub fn kupka_eigenvalue_system(degrees: &[u32], n: usize, tau: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
    if degrees.len() != n || n < 3 {
        return Err(Error::Dimension(format!(
            "eigenvalue system needs r = n ≥ 3 (r = {}, n = {n})",
            degrees.len()
        )));
    }
    if tau.len() != n - 2 {
        return Err(Error::Dimension(format!("τ must have {} entries", n - 2)));
    }
    let d1 = degrees[0];
    let mut rows = vec![vec![GaussianRational::one(); n]];
    for (t, j) in tau.iter().zip(2..n) {
        let a = &ratio(degrees[j - 1], d1) - t;
        let b = &ratio(d1, degrees[n - 1]) * t;
        let mut row = vec![GaussianRational::zero(); n];
        row[0] = -a;
        row[j - 1] = GaussianRational::one();
        row[n - 1] = -b;
        rows.push(row);
    }
    let m = ExactMatrix::from_rows(rows)?;
    if m.rank() != n - 1 {
        return Err(Error::Degenerate(format!(
            "eigenvalue system has kernel dimension {}",
            n - m.rank()
        )));
    }
    let mut x = m.solve_homogeneous()?;
    if !x[0].is_zero() {
        let s = &GaussianRational::from_int(d1 as i64) * &x[0].inv();
        x.iter_mut().for_each(|v| *v = &*v * &s);
    }
    Ok(x)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PoincareVerdict {
    pub in_domain: bool,
    /// Unit `a` with all `Re(a·ρ_j) > 0`, when in the domain.
    pub witness: Option<[f64; 2]>,
}

const ANGLE_TOL: f64 = 1e-9;

/// Whether the values lie in an open half-plane through 0.
pub fn poincare_domain_check(values: &[Complex64]) -> Result<PoincareVerdict> {
    if values.is_empty() {
        return Err(Error::Dimension("empty eigenvalue list".into()));
    }
    if values.iter().any(|v| v.norm() == 0.0) {
        return Err(Error::Degenerate("zero eigenvalue".into()));
    }
    let mut args: Vec<f64> = values.iter().map(|v| v.arg()).collect();
    args.sort_by(f64::total_cmp);
    let two_pi = 2.0 * std::f64::consts::PI;
    let (mut gap, mut after) = (args[0] + two_pi - args[args.len() - 1], args[0]);
    for w in args.windows(2) {
        if w[1] - w[0] > gap {
            gap = w[1] - w[0];
            after = w[1];
        }
    }
    if gap <= std::f64::consts::PI + ANGLE_TOL {
        return Ok(PoincareVerdict {
            in_domain: false,
            witness: None,
        });
    }
    // occupied arc runs from `after` counterclockwise over 2π - gap
    let mid = after + (two_pi - gap) / 2.0;
    let a = Complex64::from_polar(1.0, -mid);
    Ok(PoincareVerdict {
        in_domain: true,
        witness: Some([a.re, a.im]),
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct NonresonanceVerdict {
    pub nonresonant: bool,
    /// `(j, m)` with `ρ_j = Σ_{i≠j} m_i ρ_i` (0-based j, m_j = 0).
    pub relation: Option<(usize, Vec<u32>)>,
}

const RESONANCE_TOL: f64 = 1e-9;

fn enumerate_resonances<F>(weights: &[f64], is_relation: F) -> Result<NonresonanceVerdict>
where
    F: Fn(usize, &[u32]) -> bool,
{
    let n = weights.len();
    for j in 0..n {
        let bound = weights[j] + RESONANCE_TOL * weights[j].abs().max(1.0);
        let mut m = vec![0u32; n];
        // depth-first over i ≠ j
        fn rec<F: Fn(usize, &[u32]) -> bool>(
            i: usize,
            j: usize,
            used: f64,
            bound: f64,
            w: &[f64],
            m: &mut Vec<u32>,
            is_relation: &F,
        ) -> bool {
            if i == w.len() {
                return m.iter().sum::<u32>() >= 1 && is_relation(j, m);
            }
            if i == j {
                return rec(i + 1, j, used, bound, w, m, is_relation);
            }
            let mut k = 0u32;
            loop {
                let u = used + k as f64 * w[i];
                if u > bound {
                    break;
                }
                m[i] = k;
                if rec(i + 1, j, u, bound, w, m, is_relation) {
                    return true;
                }
                k += 1;
            }
            m[i] = 0;
            false
        }
        if rec(0, j, 0.0, bound, weights, &mut m, &is_relation) {
            return Ok(NonresonanceVerdict {
                nonresonant: false,
                relation: Some((j, m)),
            });
        }
    }
    Ok(NonresonanceVerdict {
        nonresonant: true,
        relation: None,
    })
}

fn rotated_weights(values: &[Complex64]) -> Result<Vec<f64>> {
    let v = poincare_domain_check(values)?;
    let [re, im] = v
        .witness
        .ok_or_else(|| Error::Degenerate("values are not in the Poincaré domain".into()))?;
    let a = Complex64::new(re, im);
    Ok(values.iter().map(|r| (a * r).re).collect())
}

/// Numeric non-resonance test (relations checked to 1e-9 relative).
pub fn nonresonance_check(rho: &[Complex64]) -> Result<NonresonanceVerdict> {
    let w = rotated_weights(rho)?;
    let scale = rho.iter().map(|v| v.norm()).fold(0.0, f64::max);
    enumerate_resonances(&w, |j, m| {
        let s: Complex64 = m.iter().zip(rho).map(|(&k, r)| r * k as f64).sum();
        (s - rho[j]).norm() <= RESONANCE_TOL * scale
    })
}

/// Exact non-resonance test for Gaussian-rational eigenvalues.
pub fn nonresonance_check_exact(rho: &[GaussianRational]) -> Result<NonresonanceVerdict> {
    let approx: Vec<Complex64> = rho.iter().map(|v| v.to_c64()).collect();
    let w = rotated_weights(&approx)?;
    enumerate_resonances(&w, |j, m| {
        let mut s = GaussianRational::zero();
        for (&k, r) in m.iter().zip(rho) {
            if k > 0 {
                s += &r.mul_int(k as i64);
            }
        }
        s == rho[j]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logtensor::{is_decomposable, wedge_all};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn q(v: i64) -> GaussianRational {
        GaussianRational::from_int(v)
    }

    #[test]
    fn family_at_zero_and_perturbed() {
        let d = [1, 2, 2, 3, 1];
        let f0 = perturbation_family(&d, 4, &zero_params(4, 5)).unwrap();
        assert_eq!(f0.len(), 2);
        // θ_0^2 = e_2* - 2 e_1*
        assert_eq!(f0[0].coords, vec![q(-2), q(1), q(0), q(0), q(0)]);
        let tau = vec![
            vec![GaussianRational::from_ratio(1, 7), q(2)],
            vec![GaussianRational::from_parts((1, 3), (1, 2)), q(-1)],
        ];
        let ft = perturbation_family(&d, 4, &tau).unwrap();
        assert!(is_decomposable(&wedge_all(5, &ft).unwrap()).unwrap());
        assert!(perturbation_family(&d, 4, &vec![vec![q(0)]; 2]).is_err());
    }

    #[test]
    fn eigen_system_examples() {
        assert_eq!(
            kupka_eigenvalue_system(&[1, 1, 1, 5], 4, &[q(0), q(0)]).unwrap(),
            vec![q(1), q(1), q(1), q(-3)]
        );
        assert_eq!(
            kupka_eigenvalue_system(&[1, 2, 2, 7], 4, &[q(0), q(0)]).unwrap(),
            vec![q(1), q(2), q(2), q(-5)]
        );
        let tau = [
            GaussianRational::from_ratio(1, 10),
            GaussianRational::from_ratio(-1, 20),
        ];
        let x = kupka_eigenvalue_system(&[1, 2, 3, 2], 4, &tau).unwrap();
        let sum = x.iter().fold(GaussianRational::zero(), |a, b| &a + b);
        assert!(sum.is_zero());
    }

    #[test]
    fn poincare_examples() {
        let v = poincare_domain_check(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert!(v.in_domain);
        let [re, im] = v.witness.unwrap();
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        assert!(!poincare_domain_check(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap().in_domain);
        assert!(poincare_domain_check(&[c(1.0, 0.0), c(0.0, 1.0)]).unwrap().in_domain);
        assert!(poincare_domain_check(&[c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn resonance_examples() {
        let v = nonresonance_check_exact(&[q(1), q(2)]).unwrap();
        assert!(!v.nonresonant);
        assert_eq!(v.relation, Some((1, vec![2, 0])));
        assert!(nonresonance_check_exact(&[q(2), q(3)]).unwrap().nonresonant);
        assert!(!nonresonance_check_exact(&[q(3), q(3), q(3)]).unwrap().nonresonant);
        assert!(nonresonance_check(&[c(2.0, 0.0), c(3.0, 0.0)]).unwrap().nonresonant);
        assert!(nonresonance_check_exact(&[q(1), q(-1)]).is_err());
    }
}
