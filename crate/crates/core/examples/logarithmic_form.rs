//! A logarithmic foliation from poles and a residue tensor: the
//! denominator-cleared form, the logarithmic and closedness criteria,
//! invariance of the poles, the degree and integrability.

use logfol::foliation::{
    degree_by_restriction, foliation_degree, integrability_p2, invariant_pole_components, is_closed_log, is_logarithmic,
};
use logfol::logtensor::{expand, radial_kernel, LogFoliationSpec, PoleSystem};
use logfol::polyring::PolyRng;

fn main() -> logfol::Result<()> {
    let mut rng = PolyRng::new(5);
    let degrees = [1, 1, 2, 2];
    let polys = degrees.iter().map(|&d| rng.homogeneous(4, d)).collect();
    let poles = PoleSystem::new(3, polys)?;

    // tensors annihilated by the degree-weighted radial contraction descend to ℙ³
    let kernel = radial_kernel(&degrees, 2)?;
    println!(
        "projective 2-tensors for degrees {degrees:?}: dimension {}",
        kernel.len()
    );
    let mut tensor = kernel[0].clone();
    for t in &kernel[1..] {
        tensor = tensor.add(&t.scale(&rng.nonzero_scalar()))?;
    }
    let spec = LogFoliationSpec::new(poles, tensor)?;
    println!("projective: {}", spec.is_projective()?);

    let w = expand(&spec)?;
    println!(
        "ω̃ = Π f_j · η is a polynomial {}-form with {} terms",
        w.degree(),
        w.terms().count()
    );
    println!("logarithmic: {}", is_logarithmic(&w, &spec.poles)?);
    println!("closed after division: {}", is_closed_log(&spec)?);
    println!("poles invariant: {:?}", invariant_pole_components(&spec)?);

    let formula = foliation_degree(&spec)?;
    let restricted = degree_by_restriction(&spec, 5)?;
    println!("degree: Σd - p - 1 = {formula}, by restriction = {}", restricted.degree);

    let v = integrability_p2(&spec)?;
    println!(
        "integrability: Plücker {}, ω̃∧ω̃ = 0 {}, η∧η = 0 {:?}",
        v.tensor_plucker, v.symbolic_wedge_zero, v.tensor_wedge_zero
    );
    Ok(())
}
