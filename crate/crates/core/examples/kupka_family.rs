//! Generalized Kupka singularities of the perturbed family of two-dimensional
//! logarithmic foliations on ℙ⁴: the spectrum of the rotational field at a
//! point of F against the exact eigenvalue system, and the normal type.

use logfol::exactnum::GaussianRational;
use logfol::foliation::{
    kupka_eigenvalue_system, nonresonance_check, perturbation_family, perturbation_sweep, poincare_domain_check,
    zero_params,
};
use logfol::logtensor::{radial_contraction, PoleSystem};
use logfol::polyring::PolyRng;
use num_complex::Complex64;

fn q(s: &str) -> GaussianRational {
    s.parse().expect("literal")
}

fn main() -> logfol::Result<()> {
    let degrees = [1u32, 2, 1, 1];
    let n = 4;

    let covs = perturbation_family(&degrees, n, &zero_params(n, 4))?;
    for (k, c) in covs.iter().enumerate() {
        let coords: Vec<String> = c.coords.iter().map(|x| x.to_string()).collect();
        let radial = radial_contraction(&c.to_tensor(), &degrees)?;
        println!(
            "θ^{} = [{}], radial contraction {}",
            k + 2,
            coords.join(", "),
            radial.scalar_value()
        );
    }
    let lam = kupka_eigenvalue_system(&degrees, n, &vec![GaussianRational::from_int(0); n - 2])?;
    println!(
        "eigenvalue system at τ = 0: {:?}",
        lam.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );

    let mut rng = PolyRng::new(6);
    let poles = PoleSystem::new(n, degrees.iter().map(|&d| rng.homogeneous(n + 1, d)).collect())?;
    let taus = vec![
        zero_params(n, 4),
        vec![vec![q("1/10")], vec![q("1/7")]],
        vec![vec![q("1/20+1/30i")], vec![q("-1/9")]],
    ];
    for row in perturbation_sweep(&poles, &taus, 6)? {
        println!("τ = {:?}", row.tau);
        println!("  along S: {:?}, at F: {:?}", row.generic_kind, row.special_kind);
        let eig: Vec<String> = row
            .rotational_eigenvalues
            .iter()
            .map(|[a, b]| format!("{a:.6}{b:+.6}i"))
            .collect();
        println!("  spectrum of rot: [{}]", eig.join(", "));
        println!(
            "  predicted {:?}, matches up to scale: {:?}",
            row.predicted, row.spectrum_matches
        );
        println!(
            "  normal type {:?}: Poincaré {}, nonresonant {}",
            row.normal_type, row.normal_type_poincare.in_domain, row.normal_type_nonresonance.nonresonant
        );
    }

    let c = |re: f64, im: f64| Complex64::new(re, im);
    for vals in [
        vec![c(1.0, 0.0), c(2.0, 0.0)],
        vec![c(2.0, 0.0), c(3.0, 0.0)],
        vec![c(1.0, 0.0), c(-1.0, 0.0)],
    ] {
        let pd = poincare_domain_check(&vals)?;
        let nr = if pd.in_domain {
            Some(nonresonance_check(&vals)?.nonresonant)
        } else {
            None
        };
        let shown: Vec<String> = vals.iter().map(|v| format!("{v}")).collect();
        println!("({}): Poincaré {}, nonresonant {nr:?}", shown.join(", "), pd.in_domain);
    }
    Ok(())
}
