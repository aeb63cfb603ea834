//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always show; the process fails if any criterion fails.

use std::time::{Duration, Instant};

use logfol::exactnum::GaussianRational;
use logfol::foliation::{
    degree_by_restriction, divisor_singularity_audit, first_integral, first_integral_exponents, foliation_degree,
    identity_suite, kupka_eigenvalue_system, line_singularity_count, nonresonance_check, plane_singularity_count,
    poincare_domain_check, OffDivisorOptions,
};
use logfol::logtensor::{
    decompose, decompose_corank2, is_decomposable, plucker_defects, random_decomposable, wedge_all, LogFoliationSpec,
    ResidueTensor,
};
use logfol::polyring::PolyRng;
use logfol::residue::{recover_residues, spectral_decay};
use logfol::scenario::builtin_example;
use num_complex::Complex64;

// tolerances and budgets, pinned
const RESIDUE_TOL: f64 = 1e-8;
const NEWTON_RESIDUAL_TOL: f64 = 1e-8;
const DECAY_RATIO: f64 = 1e3;
const LINE_BUDGET: Duration = Duration::from_secs(10);
const PLANE_BUDGET: Duration = Duration::from_secs(60);
const OFF_DIVISOR_BUDGET: Duration = Duration::from_secs(120);
const RESIDUE_BUDGET: Duration = Duration::from_secs(30);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

type Criterion = fn() -> logfol::Result<Verdict>;

fn p3() -> logfol::Result<LogFoliationSpec> {
    Ok(builtin_example("p3-planes")?.spec)
}

fn line_counts() -> logfol::Result<Verdict> {
    let spec = p3()?;
    let t = Instant::now();
    let mut counts = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            counts.push(line_singularity_count(&spec, i, j)?);
        }
    }
    let el = t.elapsed();
    let ok = counts.len() == 15 && counts.iter().all(|&c| c == 4) && el < LINE_BUDGET;
    Ok(verdict(
        ok,
        format!("15 lines, counts {counts:?}, {el:.2?} (budget {LINE_BUDGET:?})"),
    ))
}

fn plane_counts() -> logfol::Result<Verdict> {
    let spec = p3()?;
    let t = Instant::now();
    let counts = (0..6)
        .map(|j| plane_singularity_count(&spec, j, 61))
        .collect::<logfol::Result<Vec<_>>>()?;
    let el = t.elapsed();
    let ok = counts.iter().all(|&c| c == 13) && el < PLANE_BUDGET;
    Ok(verdict(
        ok,
        format!("counts {counts:?}, {el:.2?} (budget {PLANE_BUDGET:?})"),
    ))
}

fn audit() -> logfol::Result<logfol::foliation::SingularityReport> {
    let opts = OffDivisorOptions {
        seed: 61,
        ..OffDivisorOptions::default()
    };
    divisor_singularity_audit(&p3()?, &opts)
}

fn inclusion_exclusion() -> logfol::Result<Verdict> {
    let a = audit()?;
    let ok = (a.plane_sum, a.line_sum, a.triple_points) == (78, 60, 20) && a.inclusion_exclusion_total == 38;
    Ok(verdict(
        ok,
        format!(
            "{} - {} + {} = {}",
            a.plane_sum, a.line_sum, a.triple_points, a.inclusion_exclusion_total
        ),
    ))
}

fn off_divisor() -> logfol::Result<Verdict> {
    let t = Instant::now();
    let a = audit()?;
    let el = t.elapsed();
    let worst = a.off_divisor.residuals.iter().cloned().fold(0.0, f64::max);
    let ok = a.off_divisor_found == 2 && worst < NEWTON_RESIDUAL_TOL && el < OFF_DIVISOR_BUDGET;
    Ok(verdict(
        ok,
        format!(
            "{} distinct points, max residual {worst:.1e}, total {}, {el:.2?} (budget {OFF_DIVISOR_BUDGET:?})",
            a.off_divisor_found, a.total
        ),
    ))
}

/// 20 seeded specs over p ∈ {1,2,3}, n ∈ {3,4,5}.
fn degree_corpus() -> logfol::Result<Vec<LogFoliationSpec>> {
    let shapes = [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (5, 3)];
    let mut rng = PolyRng::new(2024);
    (0..20)
        .map(|k| {
            let (n, p) = shapes[k % shapes.len()];
            let r = p + 1 + k % 3;
            let degrees: Vec<u32> = (0..r).map(|_| rng.int(1, 2) as u32).collect();
            LogFoliationSpec::random_projective(&mut rng, n, &degrees, p)
        })
        .collect()
}

fn degree_agreement() -> logfol::Result<Verdict> {
    let mut bad = Vec::new();
    let specs = degree_corpus()?;
    for (k, spec) in specs.iter().enumerate() {
        let formula = foliation_degree(spec)?;
        let got = degree_by_restriction(spec, k as u64)?.degree;
        if got != formula {
            bad.push((k, formula, got));
        }
    }
    Ok(verdict(
        bad.is_empty(),
        format!("{} specs, mismatches {bad:?}", specs.len()),
    ))
}

fn residue_recovery() -> logfol::Result<Verdict> {
    let t = Instant::now();
    let cases: [(u64, usize, &[u32], usize); 5] = [
        (61, 3, &[1, 1, 1, 1, 1, 1], 2),
        (8, 2, &[1, 1, 2], 1),
        (12, 3, &[2, 1, 2], 1),
        (31, 3, &[1, 2, 1, 2], 2),
        (44, 4, &[1, 1, 2, 1], 2),
    ];
    let (mut rows, mut worst) = (0, 0.0f64);
    for (seed, n, degrees, p) in cases {
        let spec = LogFoliationSpec::random_projective(&mut PolyRng::new(seed), n, degrees, p)?;
        for row in recover_residues(&spec, seed)? {
            rows += 1;
            worst = worst.max(row.error);
        }
    }
    let decay = spectral_decay(&p3()?, &[0, 1], 61)?;
    let el = t.elapsed();
    let ok = worst < RESIDUE_TOL && decay.ratio >= DECAY_RATIO && el < RESIDUE_BUDGET;
    Ok(verdict(
        ok,
        format!(
            "{rows} residues, max error {worst:.1e}; 32→64 nodes {:.1e} → {:.1e} (ratio {:.1e}); {el:.2?} (budget {RESIDUE_BUDGET:?})",
            decay.error_coarse, decay.error_fine, decay.ratio
        ),
    ))
}

fn decomposition_round_trip() -> logfol::Result<Verdict> {
    let mut rng = PolyRng::new(7);
    let (mut good, mut flagged) = (0, 0);
    for _ in 0..200 {
        let p = rng.int(1, 4) as usize;
        let r = rng.int(p as i64 + 1, 8) as usize;
        let a = random_decomposable(&mut rng, r, p);
        if is_decomposable(&a)? && decompose(&a)?.rewedge()? == a {
            good += 1;
        }
    }
    for _ in 0..200 {
        // indecomposables exist only for 2 ≤ p ≤ r - 2
        let p = rng.int(2, 4) as usize;
        let r = rng.int(p as i64 + 2, 8) as usize;
        let a = random_decomposable(&mut rng, r, p);
        let mut idx: Vec<usize> = (0..r).collect();
        for k in 0..r {
            idx.swap(k, rng.int(k as i64, r as i64 - 1) as usize);
        }
        let mut e = idx[..p].to_vec();
        e.sort_unstable();
        let bump = ResidueTensor::from_entries(r, p, [(e, rng.nonzero_scalar())])?;
        let b = a.add(&bump)?;
        if !is_decomposable(&b)? && !plucker_defects(&b)?.is_empty() {
            flagged += 1;
        }
    }
    Ok(verdict(
        good == 200 && flagged == 200,
        format!("{good}/200 decomposable round trips, {flagged}/200 perturbed flagged"),
    ))
}

fn corank2_identity() -> logfol::Result<Verdict> {
    let mut rng = PolyRng::new(8);
    let mut ok = 0;
    for _ in 0..50 {
        let p = rng.int(1, 4) as usize;
        let a = random_decomposable(&mut rng, p + 2, p);
        let d = decompose_corank2(&a)?;
        if wedge_all(p + 2, &d.thetas)? == a.scale(&d.factor) {
            ok += 1;
        }
    }
    Ok(verdict(ok == 50, format!("{ok}/50 identities exact")))
}

fn first_integrals() -> logfol::Result<Verdict> {
    let spec = LogFoliationSpec::random_projective(&mut PolyRng::new(17), 3, &[1, 2, 3], 2)?;
    let k = first_integral(&spec)?.exponents();
    let mut ok = k == [6, 3, 2];
    let mut rng = PolyRng::new(9);
    let mut passed = 0;
    for t in 0..10 {
        let p = 1 + t % 3;
        let n = p + 1 + t % 2;
        let degrees: Vec<u32> = (0..=p).map(|_| rng.int(1, 3) as u32).collect();
        let spec = LogFoliationSpec::random_projective(&mut rng, n, &degrees, p)?;
        if first_integral(&spec)?.exponents() == first_integral_exponents(&degrees) {
            passed += 1;
        }
    }
    ok &= passed == 10;
    Ok(verdict(
        ok,
        format!("d = (1,2,3): k = {k:?}; {passed}/10 seeded r = p + 1 specs"),
    ))
}

fn eigenvalue_system() -> logfol::Result<Verdict> {
    let vectors: [&[u32]; 10] = [
        &[1, 1, 1, 1],
        &[1, 2, 2, 1],
        &[2, 1, 3, 1],
        &[1, 1, 1],
        &[3, 2, 1],
        &[1, 2, 3, 4, 5],
        &[2, 2, 2, 2, 2],
        &[1, 3, 1, 2],
        &[4, 1, 1, 1, 2, 1],
        &[1, 1, 2, 2, 3, 3],
    ];
    let mut exact = 0;
    for d in vectors {
        let n = d.len();
        let x = kupka_eigenvalue_system(d, n, &vec![GaussianRational::from_int(0); n - 2])?;
        let mut want: Vec<GaussianRational> = d[..n - 1]
            .iter()
            .map(|&v| GaussianRational::from_int(v as i64))
            .collect();
        want.push(GaussianRational::from_int(-(d[..n - 1].iter().sum::<u32>() as i64)));
        if x == want {
            exact += 1;
        }
    }

    let c = |re: f64, im: f64| Complex64::new(re, im);
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    // (values, in Poincaré domain, nonresonant when in domain)
    let table: Vec<(Vec<Complex64>, bool, Option<bool>)> = vec![
        (vec![c(1., 0.), c(2., 0.)], true, Some(false)),
        (vec![c(2., 0.), c(3., 0.)], true, Some(true)),
        (vec![c(1., 0.), c(-1., 0.)], false, None),
        (vec![c(1., 0.), c(2., 0.), c(3., 0.)], true, Some(false)),
        (vec![c(1., 0.), c(0., 1.)], true, Some(true)),
        (vec![c(1., 0.), c(1., 0.), c(1., 0.)], true, Some(false)),
        (vec![c(3., 0.), c(5., 0.), c(7., 0.)], true, Some(true)),
        (vec![c(0., 1.), c(0., -1.)], false, None),
        (vec![c(1., 0.), w, w * w], false, None),
        (vec![c(-1., 0.), c(-2., 0.)], true, Some(false)),
        (vec![c(1., 1.), c(2., 2.)], true, Some(false)),
        (vec![c(1., 0.), c(-1., 1.)], true, Some(true)),
    ];
    let mut matched = 0;
    for (vals, dom, nr) in &table {
        let pd = poincare_domain_check(vals)?;
        let got = if pd.in_domain {
            Some(nonresonance_check(vals)?.nonresonant)
        } else {
            None
        };
        if pd.in_domain == *dom && got == *nr {
            matched += 1;
        }
    }
    Ok(verdict(
        exact == 10 && matched == table.len(),
        format!(
            "{exact}/10 degree vectors exact at τ = 0, {matched}/{} table rows",
            table.len()
        ),
    ))
}

fn identities() -> logfol::Result<Verdict> {
    let mut specs = degree_corpus()?;
    for name in ["p3-planes", "rational-fibration", "perturbation-family"] {
        specs.push(builtin_example(name)?.spec);
    }
    let mut failed = Vec::new();
    for (k, spec) in specs.iter().enumerate() {
        if !identity_suite(spec, k as u64)?.all() {
            failed.push(k);
        }
    }
    Ok(verdict(
        failed.is_empty(),
        format!("{} specs, failing {failed:?}", specs.len()),
    ))
}

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("line singularity counts", line_counts),
        ("plane singularity counts", plane_counts),
        ("inclusion-exclusion", inclusion_exclusion),
        ("off-divisor singularities", off_divisor),
        ("degree agreement", degree_agreement),
        ("residue recovery", residue_recovery),
        ("decomposition round trip", decomposition_round_trip),
        ("corank-2 identity", corank2_identity),
        ("first integral", first_integrals),
        ("eigenvalue system", eigenvalue_system),
        ("identity suite", identities),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = f().unwrap_or_else(|e| verdict(false, format!("error: {e}")));
        if !v.passed {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<28} {}  {}  [{:.2?}]",
            k + 1,
            name,
            if v.passed { "PASS" } else { "FAIL" },
            v.detail,
            t.elapsed()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
