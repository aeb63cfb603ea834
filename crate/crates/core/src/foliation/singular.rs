//! Singular points of foliations defined by arrangements of planes in ℙ³:
//! exact counts on the lines ℓ_i ∩ ℓ_j and on the planes ℓ_j, and a
//! numeric search for singularities off the pole divisor.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::forms::{index_tuples, PolyForm};
use crate::logtensor::{expand, LogFoliationSpec};
use crate::newton::{distance, newton, projective_normalize, CompiledSystem, NewtonOptions};
use crate::polyring::{resultant_in_var, uni_gcd, FloatPoly, FloatPolyGrad, Monomial, MultiPoly, PolyRng, UniPoly};

/// The total the worked example quotes for a degree-3 foliation on ℙ³.
pub const P3_EXPECTED_TOTAL: i64 = 40;

fn check_plane_arrangement(spec: &LogFoliationSpec) -> Result<()> {
    if spec.n() != 3 || spec.p() != 2 {
        return Err(Error::Dimension(format!(
            "plane-arrangement counts need n = 3, p = 2 (n = {}, p = {})",
            spec.n(),
            spec.p()
        )));
    }
    if spec.poles.degrees().iter().any(|&d| d != 1) {
        return Err(Error::Dimension("plane-arrangement counts need linear poles".into()));
    }
    Ok(())
}

fn linear_coefficients(f: &MultiPoly) -> Vec<GaussianRational> {
    (0..f.nvars())
        .map(|c| f.coefficient(&Monomial::var(f.nvars(), c)))
        .collect()
}

/// Linear images `z_c = Σ_k P[c][k] s_k`.
fn linear_images(p: &ExactMatrix) -> Vec<MultiPoly> {
    (0..p.rows())
        .map(|c| {
            let mut acc = MultiPoly::zero(p.cols());
            for k in 0..p.cols() {
                acc = acc.add_scaled(&MultiPoly::var(p.cols(), k), &p[(c, k)]);
            }
            acc
        })
        .collect()
}

fn columns_to_matrix(cols: &[Vec<GaussianRational>]) -> Result<ExactMatrix> {
    ExactMatrix::from_rows(cols.to_vec()).map(|m| m.transpose())
}

/// Number of common zeros (with multiplicity) of binary forms in (s, t),
/// or `None` if all vanish identically.
fn binary_common_zeros(forms: &[MultiPoly]) -> Result<Option<usize>> {
    let nonzero: Vec<&MultiPoly> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(None);
    }
    let mut g: Option<UniPoly> = None;
    let mut at_infinity = usize::MAX;
    for f in nonzero {
        let affine = UniPoly::from_multipoly(&f.specialize(1, &GaussianRational::one()).drop_var(1));
        g = Some(match g {
            None => affine.monic(),
            Some(g) => uni_gcd(&g, &affine)?,
        });
        let v = f.terms().map(|(m, _)| m.exps()[1] as usize).min().unwrap_or(0);
        at_infinity = at_infinity.min(v);
    }
    Ok(Some(g.and_then(|g| g.degree()).unwrap_or(0) + at_infinity))
}

fn restricted_coefficients(w: &PolyForm, images: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    w.terms().map(|(_, c)| c.substitute(images)).collect()
}

fn line_count_of(w: &PolyForm, spec: &LogFoliationSpec, i: usize, j: usize) -> Result<usize> {
    let f = spec.poles.polys();
    let r = f.len();
    for &k in &[i, j] {
        if k >= r {
            return Err(Error::IndexOutOfRange { index: k, bound: r });
        }
    }
    let m = ExactMatrix::from_rows(vec![linear_coefficients(&f[i]), linear_coefficients(&f[j])])?;
    if i == j || m.rank() != 2 {
        return Err(Error::Degenerate(format!(
            "planes {} and {} are dependent",
            i + 1,
            j + 1
        )));
    }
    let basis = m.kernel_basis();
    // chart b1 + s·b0 of the line; the rest of the degree sits at s = ∞
    let d = spec.poles.total_degree() as usize - spec.p();
    let mut g: Option<UniPoly> = None;
    let mut at_infinity = usize::MAX;
    for (_, c) in w.terms() {
        let affine = c.restrict_to_line(&basis[1], &basis[0])?;
        let Some(deg) = affine.degree() else { continue };
        at_infinity = at_infinity.min(d - deg);
        g = Some(match g {
            None => affine.monic(),
            Some(g) => uni_gcd(&g, &affine)?,
        });
    }
    let g = g.ok_or(Error::LineInSingularSet)?;
    Ok(g.degree().unwrap_or(0) + at_infinity)
}

/// Common zeros of the coefficients of ω̃ on the line ℓ_i ∩ ℓ_j (0-based),
/// counted with multiplicity; both affine charts of the line are covered.
pub fn line_singularity_count(spec: &LogFoliationSpec, i: usize, j: usize) -> Result<usize> {
    check_plane_arrangement(spec)?;
    line_count_of(&expand(spec)?, spec, i, j)
}

const PLANE_ATTEMPTS: usize = 8;
const PLANE_COMBINATIONS: usize = 3;

fn plane_count_of(w: &PolyForm, spec: &LogFoliationSpec, j: usize, seed: u64) -> Result<usize> {
    let f = spec.poles.polys();
    if j >= f.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            bound: f.len(),
        });
    }
    let basis = ExactMatrix::from_rows(vec![linear_coefficients(&f[j])])?.kernel_basis();
    let b = columns_to_matrix(&basis)?;
    let mut rng = PolyRng::stream(seed, j as u64);
    for _ in 0..PLANE_ATTEMPTS {
        let t = loop {
            let rows: Vec<Vec<GaussianRational>> = (0..3).map(|_| rng.int_vector(3)).collect();
            let t = ExactMatrix::from_rows(rows)?;
            if t.rank() == 3 {
                break t;
            }
        };
        let h = restricted_coefficients(w, &linear_images(&b.mul(&t)?))?;
        let h: Vec<MultiPoly> = h.into_iter().filter(|p| !p.is_zero()).collect();
        if h.is_empty() {
            return Err(Error::Degenerate(format!("plane {} lies in the singular set", j + 1)));
        }
        let deg = h[0].total_degree().unwrap_or(0);
        let affine: Vec<MultiPoly> = h
            .iter()
            .map(|p| p.specialize(2, &GaussianRational::one()).drop_var(2))
            .collect();
        let combo = |rng: &mut PolyRng| {
            let mut g = MultiPoly::zero(2);
            for a in &affine {
                g = g.add_scaled(a, &rng.nonzero_scalar());
            }
            g
        };
        let g1 = combo(&mut rng);
        let ylead = g1.coefficient(&Monomial::from_slice(&[0, deg as u16]));
        if ylead.is_zero() {
            continue;
        }
        let mut gcd: Option<UniPoly> = None;
        let mut degenerate = false;
        for _ in 0..PLANE_COMBINATIONS {
            let gk = combo(&mut rng);
            let res = resultant_in_var(&g1, &gk, 1)?;
            if res.is_zero() {
                degenerate = true;
                break;
            }
            let res = UniPoly::from_multipoly(&res.drop_var(1));
            gcd = Some(match gcd {
                None => res.monic(),
                Some(g) => uni_gcd(&g, &res)?,
            });
        }
        if degenerate {
            continue;
        }
        let at_infinity: Vec<MultiPoly> = h
            .iter()
            .map(|p| p.specialize(2, &GaussianRational::zero()).drop_var(2))
            .collect();
        let Some(inf) = binary_common_zeros(&at_infinity)? else {
            continue;
        };
        return Ok(gcd.and_then(|g| g.degree()).unwrap_or(0) + inf);
    }
    Err(Error::NonGeneric(format!(
        "resultant elimination on plane {} stayed degenerate after {PLANE_ATTEMPTS} chart changes; reseed",
        j + 1
    )))
}

/// Common zeros of the coefficients of ω̃ on the plane ℓ_j (0-based): random
/// chart, Sylvester resultants of random coefficient combinations, gcd of the
/// eliminants, plus the zeros on the line at infinity of the chart.
pub fn plane_singularity_count(spec: &LogFoliationSpec, j: usize, seed: u64) -> Result<usize> {
    check_plane_arrangement(spec)?;
    plane_count_of(&expand(spec)?, spec, j, seed)
}

/// The point ℓ_i = ℓ_j = ℓ_k = 0.
pub fn triple_point(spec: &LogFoliationSpec, idx: &[usize]) -> Result<Vec<GaussianRational>> {
    let rows: Vec<Vec<GaussianRational>> = idx
        .iter()
        .map(|&k| linear_coefficients(&spec.poles.polys()[k]))
        .collect();
    let k = ExactMatrix::from_rows(rows)?.kernel_basis();
    if k.len() != 1 {
        return Err(Error::Degenerate(format!("planes {idx:?} are not in general position")));
    }
    Ok(k.into_iter().next().unwrap())
}

/// Whether every coefficient of ω̃ vanishes at the exact point.
pub fn is_exact_singular_point(w: &PolyForm, z: &[GaussianRational]) -> bool {
    w.terms().all(|(_, c)| c.eval(z).is_zero())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct OffDivisorOptions {
    pub starts: usize,
    pub seed: u64,
    pub residual_tol: f64,
    pub dedup_tol: f64,
    /// Minimum of `|f_k(ẑ)| / Σ|coeff(f_k)|` over poles for a point to count as off the divisor.
    pub divisor_tol: f64,
}

impl Default for OffDivisorOptions {
    fn default() -> Self {
        OffDivisorOptions {
            starts: 2000,
            seed: 0,
            residual_tol: 1e-8,
            dedup_tol: 1e-6,
            divisor_tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OffDivisorReport {
    pub starts: usize,
    /// starts that converged to an off-divisor singular point, before dedup
    pub converged: usize,
    /// Unit-norm, phase-normalized points, as `[re, im]` pairs.
    pub points: Vec<Vec<[f64; 2]>>,
    pub residuals: Vec<f64>,
}

/// Multi-start Newton search for zeros of a 2-form's coefficients off the
/// pole divisor. Start `k` works in the chart `z_{k mod N} = 1` and runs
/// Gauss-Newton on all coefficients at once (the square subsystems carry
/// spurious solution curves).
pub fn off_divisor_singularities(spec: &LogFoliationSpec, opts: &OffDivisorOptions) -> Result<OffDivisorReport> {
    if spec.p() != 2 {
        return Err(Error::Dimension("off-divisor search is implemented for 2-forms".into()));
    }
    let w = expand(spec)?;
    let nv = spec.poles.nvars();
    let tuples = index_tuples(nv, 2);
    let coeffs: Vec<FloatPolyGrad> = tuples.iter().map(|i| FloatPolyGrad::new(&w.coefficient(i))).collect();
    let sys = CompiledSystem::new(coeffs);
    let poles: Vec<FloatPoly> = spec.poles.polys().iter().map(FloatPoly::new).collect();

    let candidates: Vec<Option<(Vec<Complex64>, f64)>> = (0..opts.starts)
        .into_par_iter()
        .map(|k| {
            let a = k % nv;
            // all coefficients: the square subsystem {ω_ab} has spurious curves
            let which: Vec<usize> = (0..tuples.len()).collect();
            let free: Vec<usize> = (0..nv).filter(|&c| c != a).collect();
            let mut rng = PolyRng::stream(opts.seed, k as u64);
            let x0: Vec<Complex64> = free.iter().map(|_| rng.complex_normal()).collect();
            let embed = |x: &[Complex64]| {
                let mut z = vec![Complex64::new(1.0, 0.0); nv];
                for (c, v) in free.iter().zip(x) {
                    z[*c] = *v;
                }
                z
            };
            let eval = |x: &[Complex64]| {
                let (vals, grads) = sys.eval(&embed(x), &which);
                let jac = DMatrix::from_fn(which.len(), free.len(), |r, c| grads[r][free[c]]);
                (vals, jac)
            };
            let out = newton(
                eval,
                x0,
                NewtonOptions {
                    tol: 1e-13,
                    max_iter: 80,
                },
            )?;
            let z = projective_normalize(&embed(&out.x));
            let residual = sys.values(&z).iter().map(|v| v.norm()).fold(0.0, f64::max);
            if residual >= opts.residual_tol {
                return None;
            }
            let off = poles.iter().all(|f| f.eval(&z).norm() / f.norm() > opts.divisor_tol);
            off.then_some((z, residual))
        })
        .collect();

    let converged = candidates.iter().filter(|c| c.is_some()).count();
    let mut found: Vec<(Vec<Complex64>, f64)> = Vec::new();
    for (z, res) in candidates.into_iter().flatten() {
        match found.iter_mut().find(|(y, _)| distance(y, &z) < opts.dedup_tol) {
            Some(entry) => entry.1 = entry.1.min(res),
            None => found.push((z, res)),
        }
    }
    found.sort_by(|a, b| {
        a.0.iter()
            .flat_map(|c| [c.re, c.im])
            .zip(b.0.iter().flat_map(|c| [c.re, c.im]))
            .map(|(x, y)| x.total_cmp(&y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(OffDivisorReport {
        starts: opts.starts,
        converged,
        residuals: found.iter().map(|(_, r)| *r).collect(),
        points: found
            .into_iter()
            .map(|(z, _)| z.iter().map(|c| [c.re, c.im]).collect())
            .collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularityReport {
    pub per_plane: Vec<usize>,
    /// `((i, j), count)` with 1-based plane indices.
    pub per_line: Vec<((usize, usize), usize)>,
    pub triple_points: usize,
    pub plane_sum: usize,
    pub line_sum: usize,
    pub inclusion_exclusion_total: i64,
    pub off_divisor_found: usize,
    pub off_divisor: OffDivisorReport,
    /// On-divisor plus off-divisor count, for comparison with the quoted total.
    pub total: i64,
}

/// Full count for an arrangement of planes in ℙ³.
pub fn divisor_singularity_audit(spec: &LogFoliationSpec, opts: &OffDivisorOptions) -> Result<SingularityReport> {
    check_plane_arrangement(spec)?;
    let w = expand(spec)?;
    let r = spec.poles.r();
    let per_plane = (0..r)
        .into_par_iter()
        .map(|j| plane_count_of(&w, spec, j, opts.seed))
        .collect::<Result<Vec<usize>>>()?;
    let pairs = index_tuples(r, 2);
    let per_line = pairs
        .par_iter()
        .map(|ij| line_count_of(&w, spec, ij[0], ij[1]).map(|c| ((ij[0] + 1, ij[1] + 1), c)))
        .collect::<Result<Vec<_>>>()?;
    let mut triple_points = 0;
    for t in index_tuples(r, 3) {
        let z = triple_point(spec, &t)?;
        if !is_exact_singular_point(&w, &z) {
            return Err(Error::Inconsistent(format!("triple point {t:?} is not singular")));
        }
        triple_points += 1;
    }
    let plane_sum: usize = per_plane.iter().sum();
    let line_sum: usize = per_line.iter().map(|(_, c)| c).sum();
    let inclusion_exclusion_total = plane_sum as i64 - line_sum as i64 + triple_points as i64;
    let off_divisor = off_divisor_singularities(spec, opts)?;
    let off_divisor_found = off_divisor.points.len();
    Ok(SingularityReport {
        per_plane,
        per_line,
        triple_points,
        plane_sum,
        line_sum,
        inclusion_exclusion_total,
        off_divisor_found,
        total: inclusion_exclusion_total + off_divisor_found as i64,
        off_divisor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logtensor::{radial_kernel, PoleSystem, ResidueTensor};

    fn p3_spec(seed: u64) -> LogFoliationSpec {
        let mut rng = PolyRng::new(seed);
        let poles = PoleSystem::new(3, (0..6).map(|_| rng.homogeneous(4, 1)).collect()).unwrap();
        let mut t = ResidueTensor::zero(6, 2);
        for b in radial_kernel(poles.degrees(), 2).unwrap() {
            t = t.add(&b.scale(&rng.nonzero_scalar())).unwrap();
        }
        LogFoliationSpec::new(poles, t).unwrap()
    }

    #[test]
    fn binary_zero_counting() {
        let s = MultiPoly::var(2, 0);
        let t = MultiPoly::var(2, 1);
        // s t^2 (s - t): zeros [0:1], [1:0]×2, [1:1]
        let f = &(&s * &(&t * &t)) * &(&s - &t);
        assert_eq!(binary_common_zeros(std::slice::from_ref(&f)).unwrap(), Some(4));
        let g = &(&t * &t) * &(&s + &t);
        assert_eq!(binary_common_zeros(&[f, g]).unwrap(), Some(2));
        assert_eq!(binary_common_zeros(&[MultiPoly::zero(2)]).unwrap(), None);
    }

    #[test]
    fn lines_and_planes_of_the_example() {
        let spec = p3_spec(61);
        let w = expand(&spec).unwrap();
        for ij in index_tuples(6, 2) {
            assert_eq!(line_count_of(&w, &spec, ij[0], ij[1]).unwrap(), 4);
        }
        for j in 0..6 {
            assert_eq!(plane_count_of(&w, &spec, j, 1).unwrap(), 13);
        }
        for t in index_tuples(6, 3) {
            assert!(is_exact_singular_point(&w, &triple_point(&spec, &t).unwrap()));
        }
    }

    #[test]
    fn three_planes_degenerate_pencil() {
        // r = 3 planes on ℙ³: every line ℓ_i ∩ ℓ_j lies in the singular set
        // or carries a single extra zero, depending on the tensor.
        let mut rng = PolyRng::new(62);
        let poles = PoleSystem::new(3, (0..3).map(|_| rng.homogeneous(4, 1)).collect()).unwrap();
        let t = radial_kernel(poles.degrees(), 2).unwrap().remove(0);
        let spec = LogFoliationSpec::new(poles, t).unwrap();
        for ij in index_tuples(3, 2) {
            let c = line_singularity_count(&spec, ij[0], ij[1]);
            assert!(matches!(c, Ok(1) | Err(Error::LineInSingularSet)), "{c:?}");
        }
    }

    #[test]
    fn dependent_planes_rejected() {
        let spec = p3_spec(63);
        assert!(matches!(line_singularity_count(&spec, 2, 2), Err(Error::Degenerate(_))));
    }

    #[test]
    fn audit_reaches_forty_with_two_off_divisor_points() {
        for seed in [61, 7] {
            let r = divisor_singularity_audit(&p3_spec(seed), &OffDivisorOptions::default()).unwrap();
            assert_eq!(r.off_divisor_found, 2, "seed {seed}");
            assert!(r.off_divisor.residuals.iter().all(|&x| x < 1e-8));
            assert_eq!(r.total, P3_EXPECTED_TOTAL, "seed {seed}");
        }
    }
}
