//! Exact verdicts: logarithmic and closedness criteria, invariance,
//! degree theory, integrability of 2-forms and first integrals.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::forms::PolyForm;
use crate::logtensor::{expand, plucker_defects, tensor_wedge, LogFoliationSpec, PoleSystem};
use crate::polyring::{MultiPoly, PolyRng};

/// `f_j | df_j ∧ w` for every pole.
pub fn is_logarithmic(w: &PolyForm, poles: &PoleSystem) -> Result<bool> {
    Ok(invariant_components_of(w, poles)?.into_iter().all(|b| b))
}

/// For each pole, whether `f_j` divides every coefficient of `df_j ∧ w`.
pub fn invariant_components_of(w: &PolyForm, poles: &PoleSystem) -> Result<Vec<bool>> {
    if w.nvars() != poles.nvars() && poles.r() > 0 {
        return Err(Error::NvarsMismatch(w.nvars(), poles.nvars()));
    }
    poles
        .polys()
        .iter()
        .map(|f| {
            let t = PolyForm::differential(f).wedge(w)?;
            for (_, c) in t.terms() {
                if f.divides(c)?.is_none() {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect()
}

pub fn invariant_pole_components(spec: &LogFoliationSpec) -> Result<Vec<bool>> {
    invariant_components_of(&expand(spec)?, &spec.poles)
}

/// `F·dw = dF ∧ w` with `F = f_1⋯f_r`, i.e. `d(w/F) = 0`.
pub fn is_closed_form(w: &PolyForm, poles: &PoleSystem) -> Result<bool> {
    let f = poles.product();
    let lhs = w.exterior_derivative().mul_poly(&f);
    let rhs = PolyForm::differential(&f).wedge(w)?;
    Ok(lhs == rhs)
}

pub fn is_closed_log(spec: &LogFoliationSpec) -> Result<bool> {
    is_closed_form(&expand(spec)?, &spec.poles)
}

/// `Σ d_j - p - 1`.
pub fn foliation_degree(spec: &LogFoliationSpec) -> Result<u32> {
    let d = spec.poles.total_degree() as i64 - spec.p() as i64 - 1;
    u32::try_from(d).map_err(|_| Error::Degenerate(format!("negative degree {d}")))
}

/// Seed-pinned outcome of the restriction to a random (p+1)-dimensional subspace.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictionDegree {
    pub degree: u32,
    pub attempts: usize,
}

const RESTRICTION_RETRIES: usize = 5;

/// Degree of the tangency polynomial `G` with `T*ω̃ = G · i_R(ds_0 ∧ ... ∧ ds_p)`
/// for a random integer linear map `T: C^{p+1} → C^{n+1}`.
pub fn degree_by_restriction(spec: &LogFoliationSpec, seed: u64) -> Result<RestrictionDegree> {
    let (n, p) = (spec.n(), spec.p());
    if p + 1 > n {
        return Err(Error::Dimension(format!(
            "restriction needs p ≤ n - 1 (p = {p}, n = {n})"
        )));
    }
    let w = expand(spec)?;
    let mut rng = PolyRng::new(seed);
    for attempt in 1..=RESTRICTION_RETRIES + 1 {
        let m = loop {
            let rows: Vec<Vec<GaussianRational>> = (0..=n).map(|_| rng.int_vector(p + 1)).collect();
            let m = ExactMatrix::from_rows(rows)?;
            if m.rank() == p + 1 {
                break m;
            }
        };
        let pb = w.pullback_linear(&m)?;
        if let Some(g) = tangency_polynomial(&pb)? {
            return Ok(RestrictionDegree {
                degree: g.homogeneous_degree()?,
                attempts: attempt,
            });
        }
    }
    Err(Error::NonGeneric(format!(
        "tangency polynomial vanished on {} random subspaces",
        RESTRICTION_RETRIES + 1
    )))
}

/// For a top-minus-one form Ω on C^{p+1} with `i_R Ω = 0`, the polynomial G
/// with `Ω = G · Σ_k (-1)^k s_k ds_{omit k}`; `None` when Ω = 0.
fn tangency_polynomial(pb: &PolyForm) -> Result<Option<MultiPoly>> {
    let m = pb.nvars();
    if pb.is_zero() {
        return Ok(None);
    }
    let omit = |k: usize| -> Vec<usize> { (0..m).filter(|&i| i != k).collect() };
    let c0 = pb.coefficient(&omit(0));
    let g = if c0.is_zero() {
        // fall back to another index to read G
        let k = (0..m)
            .find(|&k| !pb.coefficient(&omit(k)).is_zero())
            .expect("nonzero form");
        let ck = pb.coefficient(&omit(k));
        let g = ck
            .div_by_var(k)
            .ok_or_else(|| Error::Inconsistent(format!("coefficient not divisible by s_{k}")))?;
        if k % 2 == 1 {
            -&g
        } else {
            g
        }
    } else {
        c0.div_by_var(0)
            .ok_or_else(|| Error::Inconsistent("coefficient not divisible by s_0".into()))?
    };
    for k in 0..m {
        let want = &g * &MultiPoly::var(m, k);
        let want = if k % 2 == 1 { -&want } else { want };
        if pb.coefficient(&omit(k)) != want {
            return Err(Error::Inconsistent(format!(
                "restricted form is not G·i_R(vol) at index {k}"
            )));
        }
    }
    Ok(Some(g))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IntegrabilityVerdict {
    /// All Plücker quadrics vanish on the residue tensor.
    pub tensor_plucker: bool,
    /// `η ∧ η = 0` at tensor level; evaluated only when `n ≥ 4`.
    pub tensor_wedge_zero: Option<bool>,
    /// `ω̃ ∧ ω̃ = 0` as a polynomial 4-form.
    pub symbolic_wedge_zero: bool,
}

pub fn integrability_p2(spec: &LogFoliationSpec) -> Result<IntegrabilityVerdict> {
    if spec.p() != 2 {
        return Err(Error::Dimension(format!(
            "integrability test needs p = 2 (got {})",
            spec.p()
        )));
    }
    let tensor_plucker = plucker_defects(&spec.tensor)?.is_empty();
    let tensor_wedge_zero = (spec.n() >= 4)
        .then(|| tensor_wedge(&spec.tensor, &spec.tensor).map(|t| t.is_zero()))
        .transpose()?;
    let w = expand(spec)?;
    let symbolic_wedge_zero = w.wedge(&w)?.is_zero();
    Ok(IntegrabilityVerdict {
        tensor_plucker,
        tensor_wedge_zero,
        symbolic_wedge_zero,
    })
}

/// `(f_1^{k_1}, ..., f_{p+1}^{k_{p+1}})`.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstIntegral {
    pub components: Vec<(MultiPoly, u64)>,
}

impl FirstIntegral {
    pub fn exponents(&self) -> Vec<u64> {
        self.components.iter().map(|(_, k)| *k).collect()
    }
}

/// Exponents with `k_j d_j` constant and coprime, from the degrees alone.
pub fn first_integral_exponents(degrees: &[u32]) -> Vec<u64> {
    let l = degrees.iter().fold(1u64, |acc, &d| acc.lcm(&(d as u64)));
    let ks: Vec<u64> = degrees.iter().map(|&d| l / d as u64).collect();
    let g = ks.iter().fold(0u64, |acc, &k| acc.gcd(&k));
    ks.into_iter().map(|k| k / g.max(1)).collect()
}

/// First integral of a spec with `r = p + 1`, verified by
/// `(d_1 f_1 df_j - d_j f_j df_1) ∧ ω̃ = 0` for j = 2..r.
pub fn first_integral(spec: &LogFoliationSpec) -> Result<FirstIntegral> {
    let (r, p) = (spec.poles.r(), spec.p());
    if r != p + 1 {
        return Err(Error::Dimension(format!(
            "first integral needs r = p + 1 (r = {r}, p = {p})"
        )));
    }
    if !spec.is_projective()? {
        return Err(Error::Inconsistent(
            "tensor is not annihilated by the radial contraction".into(),
        ));
    }
    let w = expand(spec)?;
    let f = spec.poles.polys();
    let d = spec.poles.degrees();
    let d1 = GaussianRational::from_int(d[0] as i64);
    let df1 = PolyForm::differential(&f[0]);
    for j in 1..r {
        let dj = GaussianRational::from_int(d[j] as i64);
        let a = PolyForm::differential(&f[j]).mul_poly(&f[0].scale(&d1));
        let b = df1.mul_poly(&f[j].scale(&dj));
        if !a.sub(&b)?.wedge(&w)?.is_zero() {
            return Err(Error::Inconsistent(format!(
                "f_{}^{}/f_1^{} is not constant along the leaves",
                j + 1,
                d[0],
                d[j]
            )));
        }
    }
    let ks = first_integral_exponents(d);
    Ok(FirstIntegral {
        components: f.iter().cloned().zip(ks).collect(),
    })
}
