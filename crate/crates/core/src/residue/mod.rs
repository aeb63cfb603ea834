//! Numeric recovery of the residues λ_I by quadrature over a small torus
//! around a point of X_I = {f_i = 0, i ∈ I}.
//!
//! The torus is `z(t) = m + ε Σ_k e^{i t_k} v_k` with `v_k` a right inverse of
//! the Jacobian of `(f_i)_{i∈I}` at `m`. It is not the coordinate torus
//! `|f_i| = ε`, but it is homologous to it once the winding numbers of every
//! `f_j` along every circle are certified. Since η is closed the integral
//! only depends on that class.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{index_tuples, Indices};
use crate::logtensor::{expand, LogFoliationSpec, PoleSystem};
use crate::newton::{newton, projective_normalize, CompiledSystem, NewtonOptions};
use crate::polyring::numeric::{merged_degrees, relative_value};
use crate::polyring::{FloatPoly, FloatPolyGrad, PolyRng, PowerTable};

type C64 = Complex64;

pub const BASE_STARTS: usize = 100;
/// Smallest relative `|f_k(m)|` allowed for poles outside I.
pub const OFF_DIVISOR_TOL: f64 = 1e-3;
pub const INITIAL_RADIUS: f64 = 0.1;
pub const MAX_HALVINGS: usize = 20;
/// Nodes per circle for the admissibility scan and winding integrals.
pub const SAMPLE_NODES: usize = 64;
pub const WINDING_TOL: f64 = 1e-6;
/// Poles outside I must stay above this multiple of ε on the torus.
pub const CLEARANCE: f64 = 0.1;
pub const COARSE_NODES: usize = 32;
pub const FINE_NODES: usize = 64;
/// Largest tolerated gap between the coarse and fine quadratures.
pub const CONVERGENCE_TOL: f64 = 1e-6;
pub const RESIDUE_TOL: f64 = 1e-8;
pub const MAX_QUADRATURE_DEGREE: usize = 3;

#[derive(Clone, Debug)]
pub struct TorusCycle {
    /// 0-based ascending pole indices.
    pub index: Indices,
    pub base: Vec<C64>,
    pub directions: Vec<Vec<C64>>,
    pub eps: f64,
    pub nodes: usize,
}

impl TorusCycle {
    pub fn p(&self) -> usize {
        self.directions.len()
    }

    pub fn point(&self, t: &[f64]) -> Vec<C64> {
        let mut z = self.base.clone();
        for (v, &tk) in self.directions.iter().zip(t) {
            let w = C64::from_polar(self.eps, tk);
            for (zi, vi) in z.iter_mut().zip(v) {
                *zi += w * vi;
            }
        }
        z
    }

    /// `∂z/∂t_k = i ε e^{i t_k} v_k`.
    pub fn tangent(&self, k: usize, t: f64) -> Vec<C64> {
        let w = C64::i() * C64::from_polar(self.eps, t);
        self.directions[k].iter().map(|v| w * v).collect()
    }

    pub fn with_radius(&self, eps: f64) -> Self {
        TorusCycle { eps, ..self.clone() }
    }
}

fn compile_poles(poles: &PoleSystem) -> CompiledSystem {
    CompiledSystem::new(poles.polys().iter().map(FloatPolyGrad::new).collect())
}

fn check_index(poles: &PoleSystem, index: &[usize]) -> Result<()> {
    if index.is_empty() || index.len() > poles.n() {
        return Err(Error::Dimension(format!(
            "residue index of length {} on P^{}",
            index.len(),
            poles.n()
        )));
    }
    for (k, &i) in index.iter().enumerate() {
        if i >= poles.r() {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                bound: poles.r(),
            });
        }
        if k > 0 && index[k - 1] >= i {
            return Err(Error::Dimension("residue index must be strictly increasing".into()));
        }
    }
    Ok(())
}

fn jacobian(sys: &CompiledSystem, z: &[C64], index: &[usize]) -> DMatrix<C64> {
    let (_, grads) = sys.eval(z, index);
    DMatrix::from_fn(index.len(), z.len(), |r, c| grads[r][c])
}

/// A point of X_I off every other pole, scaled to unit norm.
pub fn find_base_point(poles: &PoleSystem, index: &[usize], seed: u64) -> Result<Vec<C64>> {
    check_index(poles, index)?;
    let nv = poles.nvars();
    let p = index.len();
    let sys = compile_poles(poles);
    let mut rng = PolyRng::stream(seed, 0);
    // slice the cone by random affine hyperplanes a·z = 1
    let affine: Vec<Vec<C64>> = (0..nv - p)
        .map(|_| (0..nv).map(|_| rng.complex_normal()).collect())
        .collect();
    let eval = |z: &[C64]| {
        let (mut vals, grads) = sys.eval(z, index);
        for a in &affine {
            vals.push(a.iter().zip(z).map(|(x, y)| x * y).sum::<C64>() - 1.0);
        }
        let jac = DMatrix::from_fn(nv, nv, |r, c| if r < p { grads[r][c] } else { affine[r - p][c] });
        (vals, jac)
    };
    for s in 0..BASE_STARTS {
        let mut rng = PolyRng::stream(seed, 1 + s as u64);
        let x0: Vec<C64> = (0..nv).map(|_| rng.complex_normal()).collect();
        let Some(out) = newton(eval, x0, NewtonOptions::default()) else {
            continue;
        };
        let z = projective_normalize(&out.x);
        let clear = (0..poles.r())
            .filter(|k| !index.contains(k))
            .all(|k| relative_value(&sys.polys[k].value, &z) >= OFF_DIVISOR_TOL);
        if !clear {
            continue;
        }
        let sv = jacobian(&sys, &z, index).singular_values();
        if sv.min() <= 1e-8 * sv.max().max(1.0) {
            continue;
        }
        return Ok(z);
    }
    Err(Error::Numerical(format!(
        "no base point on X_I for I = {:?} after {BASE_STARTS} starts",
        index.iter().map(|i| i + 1).collect::<Vec<_>>()
    )))
}

/// Builds the torus at `m`, halving ε from 0.1 until it validates.
pub fn build_cycle(poles: &PoleSystem, index: &[usize], m: &[C64]) -> Result<TorusCycle> {
    check_index(poles, index)?;
    if m.len() != poles.nvars() {
        return Err(Error::NvarsMismatch(m.len(), poles.nvars()));
    }
    let sys = compile_poles(poles);
    let j = jacobian(&sys, m, index);
    let jh = j.adjoint();
    let gram = (&j * &jh)
        .try_inverse()
        .ok_or_else(|| Error::Numerical("pole gradients are dependent at the base point".into()))?;
    let v = jh * gram;
    let directions: Vec<Vec<C64>> = (0..index.len())
        .map(|k| v.column(k).iter().copied().collect())
        .collect();
    let mut cycle = TorusCycle {
        index: index.to_vec(),
        base: m.to_vec(),
        directions,
        eps: INITIAL_RADIUS,
        nodes: FINE_NODES,
    };
    let mut last = None;
    for _ in 0..=MAX_HALVINGS {
        match validate_with(&sys, &cycle) {
            Ok(()) => return Ok(cycle),
            Err(e) => last = Some(e),
        }
        cycle.eps *= 0.5;
    }
    Err(Error::Numerical(format!(
        "no admissible radius after {MAX_HALVINGS} halvings ({})",
        last.map(|e| e.to_string()).unwrap_or_default()
    )))
}

/// Checks clearance from the divisors on a sample grid and that the winding
/// number of `f_j` along circle k is δ for the k-th pole of I and 0 otherwise.
pub fn validate_cycle(poles: &PoleSystem, cycle: &TorusCycle) -> Result<()> {
    check_index(poles, &cycle.index)?;
    if cycle.base.len() != poles.nvars() || cycle.directions.len() != cycle.index.len() {
        return Err(Error::Dimension("cycle does not match the pole system".into()));
    }
    validate_with(&compile_poles(poles), cycle)
}

fn grid(n: usize, p: usize) -> impl Iterator<Item = Vec<f64>> {
    let total = n.pow(p as u32);
    (0..total).map(move |mut s| {
        let mut t = vec![0.0; p];
        for tk in t.iter_mut() {
            *tk = 2.0 * PI * (s % n) as f64 / n as f64;
            s /= n;
        }
        t
    })
}

fn validate_with(sys: &CompiledSystem, cycle: &TorusCycle) -> Result<()> {
    let r = sys.polys.len();
    let p = cycle.p();
    let mut min_in = f64::INFINITY;
    let mut min_out = f64::INFINITY;
    for t in grid(SAMPLE_NODES, p) {
        let vals = sys.values(&cycle.point(&t));
        for (k, v) in vals.iter().enumerate() {
            let slot = if cycle.index.contains(&k) {
                &mut min_in
            } else {
                &mut min_out
            };
            *slot = slot.min(v.norm());
        }
    }
    // NaN also rejects
    if min_in.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::CycleInvalid("torus meets a pole of I".into()));
    }
    if min_out <= CLEARANCE * cycle.eps {
        return Err(Error::CycleInvalid(format!(
            "torus comes within {min_out:.3e} of a pole outside I (ε = {:.3e})",
            cycle.eps
        )));
    }
    let all: Vec<usize> = (0..r).collect();
    let mut winding = vec![vec![C64::new(0.0, 0.0); p]; r];
    for k in 0..p {
        for s in 0..SAMPLE_NODES {
            let tk = 2.0 * PI * s as f64 / SAMPLE_NODES as f64;
            let mut t = vec![0.0; p];
            t[k] = tk;
            let z = cycle.point(&t);
            let dz = cycle.tangent(k, tk);
            let (vals, grads) = sys.eval(&z, &all);
            for j in 0..r {
                let df: C64 = grads[j].iter().zip(&dz).map(|(g, d)| g * d).sum();
                winding[j][k] += df / vals[j];
            }
        }
    }
    let scale = C64::i() * SAMPLE_NODES as f64;
    for w in winding.iter_mut().flatten() {
        *w /= scale;
    }
    for (j, row) in winding.iter().enumerate() {
        for (k, w) in row.iter().enumerate() {
            let expected = if cycle.index.get(k) == Some(&j) { 1.0 } else { 0.0 };
            if (w - expected).norm() > WINDING_TOL {
                let table = winding_rows(&winding);
                return Err(Error::CycleInvalid(format!(
                    "winding of f_{} along circle {} is {:.6} (expected {expected}); matrix {table:?}",
                    j + 1,
                    k + 1,
                    w.re
                )));
            }
        }
    }
    Ok(())
}

fn winding_rows(w: &[Vec<C64>]) -> Vec<Vec<f64>> {
    w.iter()
        .map(|row| row.iter().map(|x| (x.re * 1e6).round() / 1e6).collect())
        .collect()
}

/// η = ω̃ / ∏f compiled for quadrature.
struct CompiledEta {
    coeffs: Vec<(Indices, FloatPoly)>,
    poles: Vec<FloatPoly>,
    maxdeg: Vec<usize>,
}

impl CompiledEta {
    fn new(spec: &LogFoliationSpec) -> Result<Self> {
        let w = expand(spec)?;
        let coeffs: Vec<(Indices, FloatPoly)> = w.terms().map(|(i, c)| (i.clone(), FloatPoly::new(c))).collect();
        let poles: Vec<FloatPoly> = spec.poles.polys().iter().map(FloatPoly::new).collect();
        let nv = spec.poles.nvars();
        let maxdeg = merged_degrees(coeffs.iter().map(|(_, c)| c).chain(&poles), nv);
        Ok(CompiledEta { coeffs, poles, maxdeg })
    }

    /// η(z)(T_1, ..., T_p) for tangent vectors `cols`.
    fn pairing(&self, z: &[C64], cols: &[Vec<C64>]) -> C64 {
        let pw = PowerTable::new(z, &self.maxdeg);
        let denom: C64 = self.poles.iter().map(|f| f.eval_with(&pw)).product();
        let mut num = C64::new(0.0, 0.0);
        for (idx, c) in &self.coeffs {
            num += c.eval_with(&pw) * minor(cols, idx);
        }
        num / denom
    }
}

/// Determinant of the rows `rows` of the matrix with columns `cols`.
fn minor(cols: &[Vec<C64>], rows: &[usize]) -> C64 {
    let m = |r: usize, c: usize| cols[c][rows[r]];
    match rows.len() {
        1 => m(0, 0),
        2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
        3 => {
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        }
        k => DMatrix::from_fn(k, k, m).determinant(),
    }
}

/// Tensor-product trapezoid rule for `(2πi)^{-p} ∫ η` with `n` nodes per circle.
fn quadrature(eta: &CompiledEta, cycle: &TorusCycle, n: usize) -> C64 {
    let p = cycle.p();
    let h = 2.0 * PI / n as f64;
    let partial: Vec<C64> = (0..n)
        .into_par_iter()
        .map(|s0| {
            let mut acc = C64::new(0.0, 0.0);
            for rest in grid(n, p - 1) {
                let mut t = Vec::with_capacity(p);
                t.push(h * s0 as f64);
                t.extend(rest);
                let cols: Vec<Vec<C64>> = (0..p).map(|k| cycle.tangent(k, t[k])).collect();
                acc += eta.pairing(&cycle.point(&t), &cols);
            }
            acc
        })
        .collect();
    let sum: C64 = partial.iter().sum();
    sum / (C64::i() * n as f64).powu(p as u32)
}

#[derive(Clone, Copy, Debug)]
pub struct TorusResidue {
    /// value at 64 nodes per circle
    pub value: C64,
    /// value at 32 nodes per circle
    pub coarse: C64,
}

fn check_cycle(spec: &LogFoliationSpec, index: &[usize], cycle: &TorusCycle) -> Result<()> {
    check_index(&spec.poles, index)?;
    if index.len() != spec.p() || cycle.index != index {
        return Err(Error::Dimension("cycle, index and form degree disagree".into()));
    }
    if index.len() > MAX_QUADRATURE_DEGREE {
        return Err(Error::Dimension(format!(
            "quadrature limited to p ≤ {MAX_QUADRATURE_DEGREE}"
        )));
    }
    Ok(())
}

/// `(2πi)^{-p} ∫ η` over a validated cycle.
pub fn torus_residue(spec: &LogFoliationSpec, index: &[usize], cycle: &TorusCycle) -> Result<TorusResidue> {
    check_cycle(spec, index, cycle)?;
    let eta = CompiledEta::new(spec)?;
    let coarse = quadrature(&eta, cycle, COARSE_NODES);
    let value = quadrature(&eta, cycle, FINE_NODES);
    if (value - coarse).norm() > CONVERGENCE_TOL {
        return Err(Error::Numerical(format!(
            "quadrature not converged: |R64 - R32| = {:.3e}",
            (value - coarse).norm()
        )));
    }
    Ok(TorusResidue { value, coarse })
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueRow {
    /// 1-based pole indices
    pub index: Vec<usize>,
    pub exact: String,
    pub recovered: [f64; 2],
    pub error: f64,
    pub eps: f64,
    pub nodes: usize,
    pub seed: u64,
}

fn job_seed(seed: u64, job: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(job as u64)
}

/// Base point, cycle and quadrature for one index tuple.
pub fn recover_residue(spec: &LogFoliationSpec, index: &[usize], seed: u64) -> Result<ResidueRow> {
    let m = find_base_point(&spec.poles, index, seed)?;
    let mut cycle = build_cycle(&spec.poles, index, &m)?;
    // a nearby pole outside I slows the trapezoid rule; shrink until converged
    let mut halvings = 0;
    let res = loop {
        match torus_residue(spec, index, &cycle) {
            Err(Error::Numerical(_)) if halvings < MAX_HALVINGS => {
                cycle = cycle.with_radius(cycle.eps * 0.5);
                validate_cycle(&spec.poles, &cycle)?;
                halvings += 1;
            }
            other => break other?,
        }
    };
    let exact = spec.tensor.get(index);
    Ok(ResidueRow {
        index: index.iter().map(|i| i + 1).collect(),
        error: (res.value - exact.to_c64()).norm(),
        exact: exact.to_string(),
        recovered: [res.value.re, res.value.im],
        eps: cycle.eps,
        nodes: cycle.nodes,
        seed,
    })
}

/// Recovers every λ_I; one independent job per I, sorted by I.
pub fn recover_residues(spec: &LogFoliationSpec, seed: u64) -> Result<Vec<ResidueRow>> {
    let tuples = index_tuples(spec.poles.r(), spec.p());
    tuples
        .par_iter()
        .enumerate()
        .map(|(k, i)| recover_residue(spec, i, job_seed(seed, k)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralDecay {
    pub index: Vec<usize>,
    pub eps: f64,
    pub error_coarse: f64,
    pub error_fine: f64,
    /// `error_coarse / max(error_fine, machine epsilon)`
    pub ratio: f64,
}

/// Grows the radius of a validated cycle in steps of 1.25 while it stays
/// admissible and keeps the largest radius at which the 32-node rule is
/// still within the convergence tolerance. There the coarse error is
/// measurably above roundoff, so the 32→64 improvement is observable.
pub fn spectral_decay(spec: &LogFoliationSpec, index: &[usize], seed: u64) -> Result<SpectralDecay> {
    let m = find_base_point(&spec.poles, index, seed)?;
    let base = build_cycle(&spec.poles, index, &m)?;
    check_cycle(spec, index, &base)?;
    let sys = compile_poles(&spec.poles);
    let eta = CompiledEta::new(spec)?;
    let exact = spec.tensor.get(index).to_c64();
    let mut best: Option<(f64, f64, f64)> = None;
    let mut eps = base.eps;
    for _ in 0..60 {
        let cycle = base.with_radius(eps);
        if validate_with(&sys, &cycle).is_err() {
            break;
        }
        let e32 = (quadrature(&eta, &cycle, COARSE_NODES) - exact).norm();
        let e64 = (quadrature(&eta, &cycle, FINE_NODES) - exact).norm();
        if e32 <= CONVERGENCE_TOL {
            best = Some((eps, e32, e64));
        }
        eps *= 1.25;
    }
    let (eps, e32, e64) = best.ok_or_else(|| Error::Numerical("no admissible radius for the decay study".into()))?;
    Ok(SpectralDecay {
        index: index.iter().map(|i| i + 1).collect(),
        eps,
        error_coarse: e32,
        error_fine: e64,
        ratio: e32 / e64.max(f64::EPSILON),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational;
    use crate::logtensor::{radial_kernel, ResidueTensor};
    use crate::polyring::MultiPoly;

    fn coordinate_spec() -> LogFoliationSpec {
        let poles = PoleSystem::new(2, (0..3).map(|j| MultiPoly::var(3, j)).collect()).unwrap();
        let t = ResidueTensor::from_int_entries(3, 2, &[(&[0, 1], 1), (&[0, 2], -1), (&[1, 2], 1)]);
        LogFoliationSpec::new(poles, t).unwrap()
    }

    fn generic_spec(seed: u64, n: usize, degrees: &[u32], p: usize) -> LogFoliationSpec {
        let mut rng = PolyRng::new(seed);
        let poles = PoleSystem::new(n, degrees.iter().map(|&d| rng.homogeneous(n + 1, d)).collect()).unwrap();
        let mut t = ResidueTensor::zero(degrees.len(), p);
        for b in radial_kernel(poles.degrees(), p).unwrap() {
            t = t.add(&b.scale(&rng.nonzero_scalar())).unwrap();
        }
        LogFoliationSpec::new(poles, t).unwrap()
    }

    #[test]
    fn model_bicircle_gives_one() {
        let spec = coordinate_spec();
        let m = find_base_point(&spec.poles, &[0, 1], 1).unwrap();
        assert!(m[0].norm() < 1e-12 && m[1].norm() < 1e-12);
        let cycle = build_cycle(&spec.poles, &[0, 1], &m).unwrap();
        assert_eq!(cycle.eps, INITIAL_RADIUS);
        let r = torus_residue(&spec, &[0, 1], &cycle).unwrap();
        assert!((r.value - 1.0).norm() < 1e-12, "{}", r.value);
    }

    #[test]
    fn swapped_directions_are_rejected() {
        let spec = generic_spec(3, 3, &[1, 1, 1, 1, 1, 1], 2);
        let m = find_base_point(&spec.poles, &[0, 1], 5).unwrap();
        let mut cycle = build_cycle(&spec.poles, &[0, 1], &m).unwrap();
        validate_cycle(&spec.poles, &cycle).unwrap();
        cycle.directions.swap(0, 1);
        assert!(matches!(
            validate_cycle(&spec.poles, &cycle),
            Err(Error::CycleInvalid(_))
        ));
    }

    #[test]
    fn too_many_poles_in_index() {
        let spec = generic_spec(3, 2, &[1, 1, 1, 1], 1);
        assert!(matches!(
            find_base_point(&spec.poles, &[0, 1, 2], 0),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn recovers_plane_arrangement_residues() {
        let spec = generic_spec(61, 3, &[1, 1, 1, 1, 1, 1], 2);
        let rows = recover_residues(&spec, 9).unwrap();
        assert_eq!(rows.len(), 15);
        for row in &rows {
            assert!(row.error < RESIDUE_TOL, "{row:?}");
        }
    }

    #[test]
    fn recovers_quadric_residues_and_scales_linearly() {
        let spec = generic_spec(4, 2, &[1, 2, 2], 1);
        let scaled = LogFoliationSpec::new(
            spec.poles.clone(),
            spec.tensor.scale(&"7/3".parse::<GaussianRational>().unwrap()),
        )
        .unwrap();
        let a = recover_residues(&spec, 2).unwrap();
        let b = recover_residues(&scaled, 2).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.error < RESIDUE_TOL && y.error < RESIDUE_TOL, "{x:?} {y:?}");
            let (xr, yr) = (
                C64::new(x.recovered[0], x.recovered[1]),
                C64::new(y.recovered[0], y.recovered[1]),
            );
            assert!((xr * (7.0 / 3.0) - yr).norm() < 1e-8);
        }
    }

    #[test]
    fn decay_from_32_to_64_nodes() {
        let spec = generic_spec(61, 3, &[1, 1, 1, 1, 1, 1], 2);
        let d = spectral_decay(&spec, &[0, 1], 3).unwrap();
        eprintln!("{d:?}");
        assert!(d.ratio >= 1e3, "{d:?}");
    }
}
