//! Six generic planes in ℙ³ with a generic projective residue tensor give a
//! degree-3 foliation by curves. Count its singularities on each line ℓ_i∩ℓ_j
//! and each plane exactly, then find the ones off the divisor numerically.

use std::time::Instant;

use logfol::foliation::{divisor_singularity_audit, OffDivisorOptions, P3_EXPECTED_TOTAL};
use logfol::scenario::builtin_example;

fn main() -> logfol::Result<()> {
    let s = builtin_example("p3-planes")?;
    let t = Instant::now();
    let opts = OffDivisorOptions {
        seed: s.seed,
        ..OffDivisorOptions::default()
    };
    let a = divisor_singularity_audit(&s.spec, &opts)?;
    println!("per plane: {:?} (sum {})", a.per_plane, a.plane_sum);
    let lines: Vec<usize> = a.per_line.iter().map(|(_, c)| *c).collect();
    println!("per line:  {lines:?} (sum {})", a.line_sum);
    println!("triple points: {}", a.triple_points);
    println!(
        "on the divisor: {} - {} + {} = {}",
        a.plane_sum, a.line_sum, a.triple_points, a.inclusion_exclusion_total
    );
    println!(
        "off the divisor: {} distinct points from {} converged starts of {}",
        a.off_divisor_found, a.off_divisor.converged, a.off_divisor.starts
    );
    for (z, res) in a.off_divisor.points.iter().zip(&a.off_divisor.residuals) {
        let coords: Vec<String> = z.iter().map(|[re, im]| format!("{re:+.6}{im:+.6}i")).collect();
        println!("  [{}]  residual {res:.1e}", coords.join(", "));
    }
    println!(
        "total {} (expected {P3_EXPECTED_TOTAL}) in {:.1?}",
        a.total,
        t.elapsed()
    );
    Ok(())
}
