//! Residue tensors: the kernel test for decomposability, explicit
//! factorization, Plücker defects and the corank-2 construction.

use logfol::exactnum::GaussianRational;
use logfol::logtensor::{
    decompose, decompose_corank2, is_decomposable, plucker_defects, random_decomposable, tensor_kernel, wedge_all,
    ResidueTensor,
};
use logfol::polyring::PolyRng;

fn show(v: &[GaussianRational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn main() -> logfol::Result<()> {
    // e1∧e2 + e3∧e4 is the smallest indecomposable 2-vector
    let a = ResidueTensor::from_int_entries(4, 2, &[(&[0, 1], 1), (&[2, 3], 1)]);
    println!("e1∧e2 + e3∧e4: decomposable = {}", is_decomposable(&a)?);
    println!("  Plücker defects: [{}]", show(&plucker_defects(&a)?));

    let mut rng = PolyRng::new(11);
    let b = random_decomposable(&mut rng, 6, 3);
    println!("random 3-vector in Λ³ℂ⁶: {} entries", b.entries().count());
    println!("  kernel dimension = {} (r - p = 3)", tensor_kernel(&b)?.len());
    let d = decompose(&b)?;
    println!("  c = {}", d.c);
    for (k, t) in d.covectors.iter().enumerate() {
        println!("  θ_{} = [{}]", k + 1, show(&t.coords));
    }
    println!("  c·θ_1∧θ_2∧θ_3 == a: {}", d.rewedge()? == b);

    let perturbed = b.add(&ResidueTensor::from_int_entries(6, 3, &[(&[0, 1, 5], 1)]))?;
    println!(
        "after perturbing one entry: {} defects",
        plucker_defects(&perturbed)?.len()
    );

    // r = p + 2: explicit covectors with θ_3∧...∧θ_r = μ_12^{r-3} a
    let c = random_decomposable(&mut rng, 5, 3);
    let k = decompose_corank2(&c)?;
    println!("corank 2: factor μ_12^2 = {}", k.factor);
    println!("  identity holds: {}", wedge_all(5, &k.thetas)? == c.scale(&k.factor));
    Ok(())
}
