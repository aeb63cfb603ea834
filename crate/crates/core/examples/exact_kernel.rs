//! Exact arithmetic over ℚ(i) and nullspaces of exact matrices.

use logfol::exactnum::{kernel_basis, ExactMatrix, GaussianRational};

fn main() -> logfol::Result<()> {
    let a: GaussianRational = "1/3+2/5i".parse()?;
    let b: GaussianRational = "-7/2".parse()?;
    println!("a = {a}, b = {b}");
    println!("a*b = {}, a/b = {}, |a|^2 = {}", &a * &b, &a / &b, a.norm_sqr());
    println!("a * a^-1 = {}", &a * &a.inv());

    // rank 2 in ℚ^4: the kernel has dimension 2
    let m = ExactMatrix::from_int_rows(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
    println!("rank = {}", m.rank());
    for v in kernel_basis(&m) {
        let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let image: Vec<String> = m.mul_vec(&v).iter().map(|x| x.to_string()).collect();
        println!("kernel vector [{}] -> M v = [{}]", shown.join(", "), image.join(", "));
    }

    let c = ExactMatrix::from_rows(vec![
        vec![a.clone(), GaussianRational::i()],
        vec![b.clone(), GaussianRational::from_ratio(1, 7)],
    ])?;
    println!("det = {}", c.determinant()?);
    Ok(())
}
