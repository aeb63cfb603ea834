//! The deformation family `θ^j_τ` end to end: build the (n-2)-form, classify
//! a generic point of `S = {f_1 = ... = f_{n-1} = 0}` and a point of
//! `F = S ∩ {f_n = 0}`, and compare the rotational's spectrum with the
//! exact eigenvalue system.

use num_complex::Complex64;
use serde::Serialize;

use super::kupka::{
    kupka_classify, kupka_eigenvalue_system, nonresonance_check_exact, normal_type_eigenvalues, perturbation_family,
    poincare_domain_check, KupkaKind, KupkaTolerances, NonresonanceVerdict, PerturbationParams, PoincareVerdict,
};
use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;
use crate::logtensor::{expand, wedge_all, LogFoliationSpec, PoleSystem};
use crate::residue::find_base_point;

/// Relative tolerance for matching spectra up to a common scale.
pub const SPECTRUM_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct PerturbationRow {
    pub tau: Vec<Vec<String>>,
    /// classification at a generic point of S
    pub generic_kind: KupkaKind,
    /// classification at a point of F
    pub special_kind: KupkaKind,
    pub rotational_eigenvalues: Vec<[f64; 2]>,
    /// exact solution of the eigenvalue system (only when r = n)
    pub predicted: Option<Vec<String>>,
    pub spectrum_matches: Option<bool>,
    pub normal_type: Vec<String>,
    pub normal_type_poincare: PoincareVerdict,
    pub normal_type_nonresonance: NonresonanceVerdict,
    /// some `a` puts `x_1..x_{n-1}` in `Re > 0` and `x_n` in `Re < 0`
    pub transverse_split: Option<bool>,
}

impl PerturbationRow {
    /// Kupka along S, n.d.g.K. at F, spectrum as predicted and the
    /// half-plane split of the prediction.
    pub fn passed(&self) -> bool {
        self.generic_kind == KupkaKind::Kupka
            && self.special_kind == KupkaKind::NondegenerateGeneralizedKupka
            && self.spectrum_matches != Some(false)
            && self.transverse_split != Some(false)
            && self.normal_type_poincare.in_domain
    }
}

/// Whether `numeric` equals `s · exact` as multisets for some nonzero `s`.
pub fn matches_up_to_scale(numeric: &[Complex64], exact: &[Complex64], rel_tol: f64) -> bool {
    if numeric.len() != exact.len() || exact.is_empty() {
        return false;
    }
    let big = numeric.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let Some(anchor) = exact.iter().position(|v| v.norm() > 0.0) else {
        return false;
    };
    numeric.iter().any(|&cand| {
        if cand.norm() == 0.0 {
            return false;
        }
        let s = cand / exact[anchor];
        let mut used = vec![false; numeric.len()];
        exact.iter().all(|x| {
            let target = s * x;
            let hit = (0..numeric.len())
                .filter(|&k| !used[k])
                .min_by(|&a, &b| (numeric[a] - target).norm().total_cmp(&(numeric[b] - target).norm()));
            match hit {
                Some(k) if (numeric[k] - target).norm() <= rel_tol * big => {
                    used[k] = true;
                    true
                }
                _ => false,
            }
        })
    })
}

/// The split of the predicted spectrum: the first n-1 values in an open
/// half-plane and the last one strictly on the other side.
fn transverse_split(x: &[Complex64]) -> Result<bool> {
    let (head, last) = x.split_at(x.len() - 1);
    let v = poincare_domain_check(head)?;
    Ok(match v.witness {
        Some([re, im]) => (Complex64::new(re, im) * last[0]).re < 0.0,
        None => false,
    })
}

pub fn perturbation_row(poles: &PoleSystem, tau: &PerturbationParams, seed: u64) -> Result<PerturbationRow> {
    let n = poles.n();
    let degrees = poles.degrees();
    let covs = perturbation_family(degrees, n, tau)?;
    let spec = LogFoliationSpec::new(poles.clone(), wedge_all(poles.r(), &covs)?)?;
    let w = expand(&spec)?;
    let tol = KupkaTolerances::default();

    let s_index: Vec<usize> = (0..n - 1).collect();
    let generic = kupka_classify(&w, &find_base_point(poles, &s_index, seed)?, &tol)?;
    let f_index: Vec<usize> = (0..n).collect();
    let special = kupka_classify(&w, &find_base_point(poles, &f_index, seed.wrapping_add(1))?, &tol)?;
    let eig = special.eigenvalues_c64().unwrap_or_default();

    let (predicted, spectrum_matches, split) = if poles.r() == n {
        let t: Vec<GaussianRational> = tau.iter().map(|row| row[0].clone()).collect();
        let x = kupka_eigenvalue_system(degrees, n, &t)?;
        let xc: Vec<Complex64> = x.iter().map(|v| v.to_c64()).collect();
        (
            Some(x.iter().map(|v| v.to_string()).collect()),
            Some(matches_up_to_scale(&eig, &xc, SPECTRUM_TOL)),
            Some(transverse_split(&xc)?),
        )
    } else {
        (None, None, None)
    };

    let rho = normal_type_eigenvalues(degrees, n, tau)?;
    let rho_c: Vec<Complex64> = rho.iter().map(|v| v.to_c64()).collect();
    Ok(PerturbationRow {
        tau: tau
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect(),
        generic_kind: generic.kind,
        special_kind: special.kind,
        rotational_eigenvalues: eig.iter().map(|v| [v.re, v.im]).collect(),
        predicted,
        spectrum_matches,
        normal_type: rho.iter().map(|v| v.to_string()).collect(),
        normal_type_poincare: poincare_domain_check(&rho_c)?,
        normal_type_nonresonance: nonresonance_check_exact(&rho)?,
        transverse_split: split,
    })
}

/// Rows for a sweep of parameter tables, in input order.
pub fn perturbation_sweep(poles: &PoleSystem, taus: &[PerturbationParams], seed: u64) -> Result<Vec<PerturbationRow>> {
    if taus.is_empty() {
        return Err(Error::Dimension("empty τ sweep".into()));
    }
    taus.iter().map(|t| perturbation_row(poles, t, seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::kupka::zero_params;
    use crate::polyring::PolyRng;

    fn poles(seed: u64, degrees: &[u32]) -> PoleSystem {
        let mut rng = PolyRng::new(seed);
        PoleSystem::new(4, degrees.iter().map(|&d| rng.homogeneous(5, d)).collect()).unwrap()
    }

    fn tau(vals: &[&str]) -> PerturbationParams {
        vals.iter().map(|v| vec![v.parse().unwrap()]).collect()
    }

    #[test]
    fn unperturbed_linear() {
        let row = perturbation_row(&poles(5, &[1, 1, 1, 1]), &zero_params(4, 4), 1).unwrap();
        assert!(row.passed(), "{row:?}");
        assert_eq!(row.predicted.as_deref().unwrap(), ["1", "1", "1", "-3"]);
    }

    #[test]
    fn perturbed_mixed_degrees() {
        let p = poles(6, &[1, 2, 1, 1]);
        for t in [tau(&["0", "0"]), tau(&["1/10", "1/7"]), tau(&["1/20+1/30i", "-1/9"])] {
            let row = perturbation_row(&p, &t, 2).unwrap();
            assert!(row.passed(), "{row:?}");
        }
    }

    #[test]
    fn scale_matching() {
        let c = |v: f64| Complex64::new(v, 0.0);
        let s = Complex64::new(0.5, -2.0);
        let exact = [c(1.0), c(2.0), c(-3.0)];
        let num: Vec<Complex64> = [c(-3.0), c(1.0), c(2.0)].iter().map(|v| v * s).collect();
        assert!(matches_up_to_scale(&num, &exact, 1e-9));
        assert!(!matches_up_to_scale(&[c(1.0), c(1.0), c(-3.0)], &exact, 1e-9));
    }
}
