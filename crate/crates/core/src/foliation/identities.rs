//! Exact structural identities checked on a spec and seeded auxiliary data.

use num_traits::One;
use serde::Serialize;

use super::criteria::{is_closed_log, is_logarithmic};
use crate::error::Result;
use crate::exactnum::GaussianRational;
use crate::forms::{PolyForm, PolyVectorField};
use crate::logtensor::{expand, radial_contraction, random_tensor, tensor_wedge, LogFoliationSpec};
use crate::polyring::PolyRng;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityReport {
    /// `d(dω̃) = 0`
    pub d_squared: bool,
    /// `d(ω̃ ∧ β) = dω̃ ∧ β + (-1)^p ω̃ ∧ dβ` and `d(gω̃) = dg ∧ ω̃ + g dω̃`
    pub leibniz: bool,
    /// `F · Φ(a ∧ b) = Φ(a) ∧ Φ(b)` for a seeded 1-tensor `b`
    pub phi_homomorphism: bool,
    /// `i_R df_j = d_j f_j`
    pub euler: bool,
    /// `i_R Φ(a) = Φ(i_R a)` with the degree-weighted contraction
    pub radial_compatibility: bool,
    pub closed: bool,
    pub logarithmic: bool,
}

impl IdentityReport {
    pub fn all(&self) -> bool {
        self.d_squared
            && self.leibniz
            && self.phi_homomorphism
            && self.euler
            && self.radial_compatibility
            && self.closed
            && self.logarithmic
    }
}

pub fn identity_suite(spec: &LogFoliationSpec, seed: u64) -> Result<IdentityReport> {
    let poles = &spec.poles;
    let nv = poles.nvars();
    let w = expand(spec)?;
    let dw = w.exterior_derivative();
    let mut rng = PolyRng::new(seed);
    let b = random_tensor(&mut rng, poles.r(), 1);
    let beta = poles.expand_tensor(&b)?;

    let sign = if spec.p().is_multiple_of(2) {
        GaussianRational::one()
    } else {
        -GaussianRational::one()
    };
    let leibniz_wedge = w.wedge(&beta)?.exterior_derivative()
        == dw
            .wedge(&beta)?
            .add(&w.wedge(&beta.exterior_derivative())?.scale(&sign))?;
    let g = rng.homogeneous(nv, 2);
    let leibniz_fn =
        w.mul_poly(&g).exterior_derivative() == PolyForm::differential(&g).wedge(&w)?.add(&dw.mul_poly(&g))?;

    let phi_homomorphism = poles
        .expand_tensor(&tensor_wedge(&spec.tensor, &b)?)?
        .mul_poly(&poles.product())
        == w.wedge(&beta)?;

    let radial = PolyVectorField::radial(nv);
    let mut euler = true;
    for (f, &d) in poles.polys().iter().zip(poles.degrees()) {
        let lhs = PolyForm::differential(f).contract(&radial)?;
        euler &= lhs == PolyForm::function(f.scale(&GaussianRational::from_int(d as i64)));
    }
    let radial_compatibility =
        w.contract(&radial)? == poles.expand_tensor(&radial_contraction(&spec.tensor, poles.degrees())?)?;

    Ok(IdentityReport {
        d_squared: dw.exterior_derivative().is_zero(),
        leibniz: leibniz_wedge && leibniz_fn,
        phi_homomorphism,
        euler,
        radial_compatibility,
        closed: is_closed_log(spec)?,
        logarithmic: is_logarithmic(&w, poles)?,
    })
}
