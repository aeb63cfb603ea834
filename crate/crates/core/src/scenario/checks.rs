//! Named checks a scenario can request. Each entry lists the library
//! operations it exercises, so coverage of the API is testable.

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::Scenario;
use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;
use crate::foliation::{
    degree_by_restriction, divisor_singularity_audit, first_integral, foliation_degree, identity_suite,
    integrability_p2, invariant_pole_components, is_closed_log, is_exact_singular_point, is_logarithmic,
    kupka_classify, line_singularity_count, nonresonance_check, off_divisor_singularities, perturbation_sweep,
    plane_singularity_count, poincare_domain_check, triple_point, KupkaKind, KupkaTolerances, OffDivisorOptions,
    PerturbationParams,
};
use crate::forms::index_tuples;
use crate::logtensor::{
    decompose, decompose_corank2, expand, is_decomposable, plucker_defects, radial_kernel, tensor_kernel, wedge_all,
};
use crate::residue::{recover_residues, spectral_decay};
use num_complex::Complex64;

/// Verdict of a check that ran to completion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub detail: Value,
}

type Runner = fn(&Scenario, &Map<String, Value>) -> Result<Outcome>;

pub struct CheckDef {
    pub name: &'static str,
    pub about: &'static str,
    pub params: &'static [&'static str],
    /// library operations reached by this check
    pub operations: &'static [&'static str],
    pub run: Runner,
}

/// Every public operation the checks are expected to reach.
pub const OPERATIONS: &[&str] = &[
    "kernel_basis",
    "solve_homogeneous",
    "sylvester_resultant",
    "arith",
    "partial_derivative",
    "homogeneous_degree",
    "divides",
    "restrict_to_line",
    "uni_gcd",
    "wedge",
    "exterior_derivative",
    "contract",
    "pullback_linear",
    "evaluate",
    "rotational",
    "tensor_wedge",
    "tensor_contract",
    "tensor_kernel",
    "is_decomposable",
    "decompose",
    "plucker_defects",
    "decompose_corank2",
    "radial_contraction",
    "radial_kernel",
    "expand",
    "is_logarithmic",
    "is_closed_log",
    "foliation_degree",
    "degree_by_restriction",
    "integrability_p2",
    "first_integral",
    "invariant_pole_components",
    "line_singularity_count",
    "plane_singularity_count",
    "divisor_singularity_audit",
    "kupka_classify",
    "perturbation_family",
    "kupka_eigenvalue_system",
    "poincare_domain_check",
    "nonresonance_check",
    "find_base_point",
    "build_cycle",
    "torus_residue",
];

pub static REGISTRY: &[CheckDef] = &[
    CheckDef {
        name: "closed",
        about: "dη = 0 for η = ω̃ / ∏f",
        params: &[],
        operations: &["is_closed_log", "expand", "exterior_derivative", "wedge"],
        run: closed,
    },
    CheckDef {
        name: "corank2",
        about: "explicit factorization when r = p + 2",
        params: &[],
        operations: &["decompose_corank2", "tensor_wedge"],
        run: corank2,
    },
    CheckDef {
        name: "decomposition",
        about: "kernel test, factorization and Plücker defects of the tensor",
        params: &["expect_decomposable"],
        operations: &[
            "is_decomposable",
            "tensor_kernel",
            "kernel_basis",
            "tensor_contract",
            "decompose",
            "plucker_defects",
            "tensor_wedge",
        ],
        run: decomposition,
    },
    CheckDef {
        name: "degree",
        about: "Σd - p - 1 against the tangency degree on a random subspace",
        params: &["expected"],
        operations: &[
            "foliation_degree",
            "degree_by_restriction",
            "pullback_linear",
            "divides",
        ],
        run: degree,
    },
    CheckDef {
        name: "first_integral",
        about: "(f_1^{k_1}, ..., f_{p+1}^{k_{p+1}}) when r = p + 1",
        params: &["expected_exponents"],
        operations: &["first_integral", "wedge"],
        run: first_integral_check,
    },
    CheckDef {
        name: "identities",
        about: "d² = 0, Leibniz, Φ multiplicativity, Euler, radial compatibility",
        params: &[],
        operations: &[
            "expand",
            "arith",
            "wedge",
            "exterior_derivative",
            "contract",
            "tensor_wedge",
            "radial_contraction",
            "homogeneous_degree",
            "is_closed_log",
            "is_logarithmic",
        ],
        run: identities,
    },
    CheckDef {
        name: "integrability",
        about: "ω̃ ∧ ω̃ = 0 and the Plücker test for 2-forms",
        params: &[],
        operations: &["integrability_p2", "plucker_defects", "tensor_wedge", "wedge"],
        run: integrability,
    },
    CheckDef {
        name: "kupka_point",
        about: "classification of a given point",
        params: &["point", "expected"],
        operations: &["kupka_classify", "rotational", "partial_derivative", "evaluate"],
        run: kupka_point,
    },
    CheckDef {
        name: "kupka_sweep",
        about: "deformation family: Kupka along S, n.d.g.K. at F, spectrum and normal type",
        params: &["taus"],
        operations: &[
            "perturbation_family",
            "kupka_eigenvalue_system",
            "solve_homogeneous",
            "kupka_classify",
            "rotational",
            "poincare_domain_check",
            "nonresonance_check",
            "find_base_point",
        ],
        run: kupka_sweep,
    },
    CheckDef {
        name: "line_singularities",
        about: "exact singularity count on every line f_i = f_j = 0",
        params: &["expected"],
        operations: &["line_singularity_count", "restrict_to_line", "uni_gcd", "kernel_basis"],
        run: line_singularities,
    },
    CheckDef {
        name: "logarithmic",
        about: "f_j divides df_j ∧ ω̃ for every pole",
        params: &[],
        operations: &["is_logarithmic", "invariant_pole_components", "divides"],
        run: logarithmic,
    },
    CheckDef {
        name: "off_divisor",
        about: "multi-start Newton search for singular points off the poles",
        params: &["starts", "expected"],
        operations: &["expand"],
        run: off_divisor,
    },
    CheckDef {
        name: "plane_singularities",
        about: "exact singularity count on every plane via resultants",
        params: &["expected"],
        operations: &["plane_singularity_count", "sylvester_resultant", "uni_gcd"],
        run: plane_singularities,
    },
    CheckDef {
        name: "projective",
        about: "the tensor lies in the kernel of the weighted radial contraction",
        params: &[],
        operations: &["radial_contraction", "radial_kernel", "kernel_basis"],
        run: projective,
    },
    CheckDef {
        name: "residues",
        about: "every λ_I recovered by torus quadrature",
        params: &[],
        operations: &["find_base_point", "build_cycle", "torus_residue", "expand"],
        run: residues,
    },
    CheckDef {
        name: "singularity_audit",
        about: "plane, line and triple-point counts with inclusion–exclusion plus the off-divisor search",
        params: &[
            "starts",
            "expected_plane_sum",
            "expected_line_sum",
            "expected_triple_points",
            "expected_off_divisor",
            "expected_total",
        ],
        operations: &[
            "divisor_singularity_audit",
            "line_singularity_count",
            "plane_singularity_count",
        ],
        run: singularity_audit,
    },
    CheckDef {
        name: "spectral_decay",
        about: "quadrature error improvement from 32 to 64 nodes per circle",
        params: &["index"],
        operations: &["find_base_point", "build_cycle", "torus_residue"],
        run: spectral_decay_check,
    },
    CheckDef {
        name: "spectrum",
        about: "Poincaré domain and non-resonance of a given eigenvalue list",
        params: &["values", "expect_poincare", "expect_nonresonant"],
        operations: &["poincare_domain_check", "nonresonance_check"],
        run: spectrum,
    },
    CheckDef {
        name: "triple_points",
        about: "every triple intersection of planes is an exact singular point",
        params: &[],
        operations: &["kernel_basis", "expand"],
        run: triple_points,
    },
];

pub fn lookup(name: &str) -> Option<&'static CheckDef> {
    REGISTRY.iter().find(|c| c.name == name)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable detail")
}

fn bad_param(key: &str, why: &str) -> Error {
    Error::Scenario(vec![format!("parameter {key:?}: {why}")])
}

fn opt_u64(p: &Map<String, Value>, key: &str) -> Result<Option<u64>> {
    p.get(key)
        .map(|v| {
            v.as_u64()
                .ok_or_else(|| bad_param(key, "expected a non-negative integer"))
        })
        .transpose()
}

fn opt_bool(p: &Map<String, Value>, key: &str) -> Result<Option<bool>> {
    p.get(key)
        .map(|v| v.as_bool().ok_or_else(|| bad_param(key, "expected a boolean")))
        .transpose()
}

fn opt_u64_list(p: &Map<String, Value>, key: &str) -> Result<Option<Vec<u64>>> {
    p.get(key)
        .map(|v| serde_json::from_value::<Vec<u64>>(v.clone()).map_err(|e| bad_param(key, &e.to_string())))
        .transpose()
}

fn complex_list(p: &Map<String, Value>, key: &str) -> Result<Vec<Complex64>> {
    let v = p.get(key).ok_or_else(|| bad_param(key, "required"))?;
    let pairs: Vec<[f64; 2]> = serde_json::from_value(v.clone()).map_err(|e| bad_param(key, &e.to_string()))?;
    Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}

fn expect_eq(expected: Option<u64>, got: u64) -> bool {
    expected.is_none_or(|e| e == got)
}

fn closed(s: &Scenario, _: &Map<String, Value>) -> Result<Outcome> {
    let ok = is_closed_log(&s.spec)?;
    Ok(Outcome {
        passed: ok,
        detail: json!({ "closed": ok }),
    })
}

fn corank2(s: &Scenario, _: &Map<String, Value>) -> Result<Outcome> {
    let a = &s.spec.tensor;
    let d = decompose_corank2(a)?;
    let ok = wedge_all(a.r(), &d.thetas)? == a.scale(&d.factor);
    Ok(Outcome {
        passed: ok,
        detail: json!({
            "factor": d.factor.to_string(),
            "thetas": d.thetas.iter().map(|t| t.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "identity": ok,
        }),
    })
}

fn decomposition(s: &Scenario, p: &Map<String, Value>) -> Result<Outcome> {
    let expect = opt_bool(p, "expect_decomposable")?.unwrap_or(true);
    let a = &s.spec.tensor;
    let kernel_dim = tensor_kernel(a)?.len();
    let dec = is_decomposable(a)?;
    let defects = plucker_defects(a)?;
    let rewedge = if dec {
        Some(decompose(a)?.rewedge()? == *a)
    } else {
        None
    };
    let consistent = dec == defects.is_empty() && rewedge != Some(false);
    Ok(Outcome {
        passed: consistent && dec == expect,
        detail: json!({
            "decomposable": dec,
            "kernel_dim": kernel_dim,
            "plucker_defects": defects.len(),
            "rewedge_exact": rewedge,
        }),
    })
}

fn degree(s: &Scenario, p: &Map<String, Value>) -> Result<Outcome> {
    let expected = opt_u64(p, "expected")?;
    let formula = foliation_degree(&s.spec)?;
    let restricted = degree_by_restriction(&s.spec, s.seed)?;
    Ok(Outcome {
        passed: formula == restricted.degree && expect_eq(expected, formula as u64),
        detail: json!({ "formula": formula, "restriction": restricted.degree, "attempts": restricted.attempts }),
    })
}

fn first_integral_check(s: &Scenario, p: &Map<String, Value>) -> Result<Outcome> {
    let expected = opt_u64_list(p, "expected_exponents")?;
    let fi = first_integral(&s.spec)?;
    let k = fi.exponents();
    Ok(Outcome {
        passed: expected.as_ref().is_none_or(|e| *e == k),
        detail: json!({ "exponents": k, "degrees": s.spec.poles.degrees() }),
    })
}

fn identities(s: &Scenario, _: &Map<String, Value>) -> Result<Outcome> {
    let r = identity_suite(&s.spec, s.seed)?;
    Ok(Outcome {
        passed: r.all(),
        detail: to_value(&r),
    })
}

fn integrability(s: &Scenario, _: &Map<String, Value>) -> Result<Outcome> {
    let v = integrability_p2(&s.spec)?;
    Ok(Outcome {
        passed: v.symbolic_wedge_zero && v.tensor_wedge_zero != Some(false),
        detail: to_value(&v),
    })
}

fn kupka_tolerances(s: &Scenario) -> KupkaTolerances {
    KupkaTolerances {
        zero: s.tolerances.kupka_zero,
        eigen: s.tolerances.kupka_eigen,
    }
}

fn kupka_point(s: &Scenario, p: &Map<String, Value>) -> Result<Outcome> {
    let z = complex_list(p, "point")?;
    let expected: Option<KupkaKind> = p
        .get("expected")
        .map(|v| serde_json::from_value(v.clone()).map_err(|e| bad_param("expected", &e.to_string())))
        .transpose()?;
    let v = kupka_classify(&expand(&s.spec)?, &z, &kupka_tolerances(s))?;
    Ok(Outcome {
        passed: expected.is_none_or(|e| e == v.kind),
        detail: to_value(&v),
    })
}

fn kupka_sweep(s: &Scenario, p: &Map<String, Value>) -> Result<Outcome> {
    let v = p.get("taus").ok_or_else(|| bad_param("taus", "required"))?;
    let taus: Vec<PerturbationParams> =
        serde_json::from_value(v.clone()).map_err(|e| bad_param("taus", &e.to_string()))?;
    let rows = perturbation_sweep(&s.spec.poles, &taus, s.seed)?;
    Ok(Outcome {
        passed: rows.iter().all(|r| r.passed()),
        detail: to_value(&rows),
    })
}

fn pairs(r: usize) -> Vec<(usize, usize)> {
    index_tuples(r, 2).into_iter().map(|t| (t[0], t[1])).collect()
}

fn line_singularities(s: &Scenario, p: &Map<String, Value>) -> Result<Outcome> {
    let expected = opt_u64(p, "expected")?;
    let mut rows = Vec::new();
    for (i, j) in pairs(s.spec.poles.r()) {
        rows.push(((i + 1, j + 1), line_singularity_count(&s.spec, i, j)? as u64));
    }
    Ok(Outcome {
        passed: rows.iter().all(|(_, c)| expect_eq(expected, *c)),
        detail: json!({ "counts": rows, "sum": rows.iter().map(|(_, c)| c).sum::<u64>() }),
    })
}

fn logarithmic(s: &Scenario, _: &Map<String, Value>) -> Result<Outcome> {
    let log = is_logarithmic(&expand(&s.spec)?, &s.spec.poles)?;
    let inv = invariant_pole_components(&s.spec)?;
    Ok(Outcome {
        passed: log && inv.iter().all(|b| *b),
        detail: json!({ "logarithmic": log, "invariant_components": inv }),
    })
}

fn off_divisor_options(s: &Scenario, p: &Map<String, Value>) -> Result<OffDivisorOptions> {
    let mut o = OffDivisorOptions {
        seed: s.seed,
        residual_tol: s.tolerances.newton_residual,
        dedup_tol: s.tolerances.dedup,
        divisor_tol: s.tolerances.divisor,
        ..OffDivisorOptions::default()
    };
    if let Some(k) = opt_u64(p, "starts")? {
        o.starts = k as usize;
    }
    Ok(o)
}

fn off_divisor(s: &Scenario, p: &Map<String, Value>) -> Result<Outcome> {
    let expected = opt_u64(p, "expected")?;
    let r = off_divisor_singularities(&s.spec, &off_divisor_options(s, p)?)?;
    Ok(Outcome {
        passed: expect_eq(expected, r.points.len() as u64),
        detail: to_value(&r),
    })
}

fn plane_singularities(s: &Scenario, p: &Map<String, Value>) -> Result<Outcome> {
    let expected = opt_u64(p, "expected")?;
    let counts = (0..s.spec.poles.r())
        .map(|j| plane_singularity_count(&s.spec, j, s.seed).map(|c| c as u64))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome {
        passed: counts.iter().all(|c| expect_eq(expected, *c)),
        detail: json!({ "counts": counts, "sum": counts.iter().sum::<u64>() }),
    })
}

fn projective(s: &Scenario, _: &Map<String, Value>) -> Result<Outcome> {
    let ok = s.spec.is_projective()?;
    let dim = radial_kernel(s.spec.poles.degrees(), s.spec.p())?.len();
    Ok(Outcome {
        passed: ok,
        detail: json!({ "projective": ok, "radial_kernel_dim": dim }),
    })
}

fn residues(s: &Scenario, _: &Map<String, Value>) -> Result<Outcome> {
    let rows = recover_residues(&s.spec, s.seed)?;
    let worst = rows.iter().map(|r| r.error).fold(0.0, f64::max);
    Ok(Outcome {
        passed: worst < s.tolerances.residue,
        detail: json!({ "max_error": worst, "tolerance": s.tolerances.residue, "rows": rows }),
    })
}

fn singularity_audit(s: &Scenario, p: &Map<String, Value>) -> Result<Outcome> {
    let r = divisor_singularity_audit(&s.spec, &off_divisor_options(s, p)?)?;
    let checks = [
        ("expected_plane_sum", r.plane_sum as i64),
        ("expected_line_sum", r.line_sum as i64),
        ("expected_triple_points", r.triple_points as i64),
        ("expected_off_divisor", r.off_divisor_found as i64),
        ("expected_total", r.total),
    ];
    let mut passed = true;
    for (key, got) in checks {
        if let Some(e) = opt_u64(p, key)? {
            passed &= e as i64 == got;
        }
    }
    Ok(Outcome {
        passed,
        detail: to_value(&r),
    })
}

fn spectral_decay_check(s: &Scenario, p: &Map<String, Value>) -> Result<Outcome> {
    let index: Vec<usize> = match opt_u64_list(p, "index")? {
        Some(i) => i.iter().map(|&k| (k as usize).wrapping_sub(1)).collect(),
        None => s
            .spec
            .tensor
            .entries()
            .next()
            .map(|(i, _)| i.clone())
            .ok_or(Error::ZeroTensor)?,
    };
    let d = spectral_decay(&s.spec, &index, s.seed)?;
    Ok(Outcome {
        passed: d.ratio >= s.tolerances.decay_ratio,
        detail: to_value(&d),
    })
}

fn spectrum(_: &Scenario, p: &Map<String, Value>) -> Result<Outcome> {
    let values = complex_list(p, "values")?;
    let poincare = poincare_domain_check(&values)?;
    let nonres = nonresonance_check(&values)?;
    let ok = opt_bool(p, "expect_poincare")?.is_none_or(|e| e == poincare.in_domain)
        && opt_bool(p, "expect_nonresonant")?.is_none_or(|e| e == nonres.nonresonant);
    Ok(Outcome {
        passed: ok,
        detail: json!({ "poincare": poincare, "nonresonance": nonres }),
    })
}

fn triple_points(s: &Scenario, _: &Map<String, Value>) -> Result<Outcome> {
    let w = expand(&s.spec)?;
    let mut found = 0;
    let mut singular = 0;
    for idx in index_tuples(s.spec.poles.r(), 3) {
        let z: Vec<GaussianRational> = triple_point(&s.spec, &idx)?;
        found += 1;
        if is_exact_singular_point(&w, &z) {
            singular += 1;
        }
    }
    Ok(Outcome {
        passed: found == singular,
        detail: json!({ "triple_points": found, "singular": singular }),
    })
}
