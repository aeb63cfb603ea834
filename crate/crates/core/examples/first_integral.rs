//! With r = p + 1 poles the foliation has the rational first integral
//! (f_1^{k_1} : ... : f_r^{k_r}) with k_j d_j constant.

use logfol::foliation::{first_integral, first_integral_exponents};
use logfol::logtensor::LogFoliationSpec;
use logfol::polyring::PolyRng;

fn main() -> logfol::Result<()> {
    for (seed, degrees) in [(17u64, vec![1, 2, 3]), (4, vec![2, 2, 4]), (9, vec![1, 1, 3, 2])] {
        let p = degrees.len() - 1;
        let spec = LogFoliationSpec::random_projective(&mut PolyRng::new(seed), 3, &degrees, p)?;
        println!(
            "degrees {degrees:?}, p = {p}: predicted k = {:?}",
            first_integral_exponents(&degrees)
        );
        let fi = first_integral(&spec)?;
        for (j, (f, k)) in fi.components.iter().enumerate() {
            println!(
                "  f_{}^{k}  ({} terms, degree {})",
                j + 1,
                f.num_terms(),
                f.total_degree().unwrap_or(0) as u64 * k
            );
        }
    }
    Ok(())
}
