//! Polynomial differential forms: wedge, exterior derivative, contraction
//! with the radial field and the Euler identity.

use logfol::exactnum::GaussianRational;
use logfol::forms::{PolyForm, PolyVectorField};
use logfol::polyring::PolyRng;

fn main() -> logfol::Result<()> {
    let nvars = 4;
    let mut rng = PolyRng::new(3);
    let f = rng.homogeneous(nvars, 3);
    let g = rng.homogeneous(nvars, 2);
    let df = PolyForm::differential(&f);
    let dg = PolyForm::differential(&g);

    let w = df.wedge(&dg)?;
    println!("df ∧ dg has {} nonzero coefficients", w.terms().count());
    println!("d(df ∧ dg) = 0: {}", w.exterior_derivative().is_zero());
    println!("df ∧ df = 0: {}", df.wedge(&df)?.is_zero());

    // i_R df = deg(f) f
    let radial = PolyVectorField::radial(nvars);
    let euler = df.contract(&radial)?;
    let expected = PolyForm::function(f.scale(&GaussianRational::from_int(3)));
    println!("i_R df = 3 f: {}", euler == expected);

    // i_R(dz_0 ∧ ... ∧ dz_3) is the projective volume form
    let vol = PolyForm::volume(nvars).contract(&radial)?;
    for (idx, c) in vol.terms() {
        println!("  dz{idx:?}: {c}");
    }
    println!("i_R i_R vol = 0: {}", vol.contract(&radial)?.is_zero());
    Ok(())
}
