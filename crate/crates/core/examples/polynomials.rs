//! Sparse multivariate polynomials: arithmetic, derivatives, restriction to
//! a line and elimination by Sylvester resultants.

use logfol::exactnum::GaussianRational;
use logfol::polyring::{resultant_in_var, uni_gcd, ArithOp, MultiPoly};

fn main() -> logfol::Result<()> {
    // f = x^2 + y^2 - 1, g = x - y  in ℚ[x, y]
    let f = MultiPoly::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]);
    let g = MultiPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
    println!("f = {f}");
    println!("g = {g}");
    println!("f*g = {}", f.arith(&g, ArithOp::Mul)?);
    println!("df/dx = {}", f.partial_derivative(0)?);

    // eliminating x leaves 2y^2 - 1: the two intersection points
    let r = resultant_in_var(&f, &g, 0)?;
    println!("Res_x(f, g) = {r}");

    // homogeneous division is exact
    let h = f.arith(&g, ArithOp::Mul)?;
    let q = g.divides(&h)?.expect("g divides f*g");
    println!("(f*g)/g == f: {}", q == f);

    // restrict to the line t ↦ (t, 1 - t), then gcd with the restriction of g
    let one = GaussianRational::from_int(1);
    let zero = GaussianRational::from_int(0);
    let base = [zero.clone(), one.clone()];
    let dir = [one.clone(), -one];
    let fl = f.restrict_to_line(&base, &dir)?;
    let gl = g.restrict_to_line(&base, &dir)?;
    println!(
        "f on line: degree {:?}, g on line: degree {:?}",
        fl.degree(),
        gl.degree()
    );
    println!("gcd degree = {:?}", uni_gcd(&fl, &gl)?.degree());
    Ok(())
}
