//! Ready-made scenarios reproducing the worked examples.

use serde_json::{json, Value};

use super::{CheckRequest, Scenario, Tolerances};
use crate::error::{Error, Result};
use crate::foliation::{perturbation_family, zero_params};
use crate::logtensor::{wedge_all, LogFoliationSpec, PoleSystem};
use crate::polyring::PolyRng;

pub const BUILTIN_NAMES: [&str; 3] = ["p3-planes", "rational-fibration", "perturbation-family"];

fn req(name: &str, params: Value) -> CheckRequest {
    CheckRequest {
        name: name.into(),
        params,
    }
}

fn plain(name: &str) -> CheckRequest {
    req(name, Value::Null)
}

/// Six generic planes in ℙ³ and a generic projective tensor of degree 2.
fn p3_planes() -> Result<Scenario> {
    let seed = 61;
    let spec = LogFoliationSpec::random_projective(&mut PolyRng::new(seed), 3, &[1; 6], 2)?;
    Ok(Scenario {
        name: "p3-planes".into(),
        seed,
        spec,
        checks: vec![
            req(
                "singularity_audit",
                json!({
                    "expected_plane_sum": 78,
                    "expected_line_sum": 60,
                    "expected_triple_points": 20,
                    "expected_off_divisor": 2,
                    "expected_total": 40,
                }),
            ),
            req("line_singularities", json!({ "expected": 4 })),
            req("plane_singularities", json!({ "expected": 13 })),
            plain("triple_points"),
            req("degree", json!({ "expected": 3 })),
            plain("residues"),
            plain("spectral_decay"),
            plain("identities"),
            plain("integrability"),
            plain("projective"),
        ],
        tolerances: Tolerances::default(),
    })
}

/// Three poles of degrees 1, 2, 3 on ℙ³ with p = 2: a pencil-type fibration.
fn rational_fibration() -> Result<Scenario> {
    let seed = 17;
    let spec = LogFoliationSpec::random_projective(&mut PolyRng::new(seed), 3, &[1, 2, 3], 2)?;
    Ok(Scenario {
        name: "rational-fibration".into(),
        seed,
        spec,
        checks: vec![
            req("first_integral", json!({ "expected_exponents": [6, 3, 2] })),
            req("degree", json!({ "expected": 3 })),
            req("decomposition", json!({ "expect_decomposable": true })),
            plain("closed"),
            plain("logarithmic"),
            plain("identities"),
            plain("integrability"),
            plain("residues"),
        ],
        tolerances: Tolerances::default(),
    })
}

/// Four poles on ℙ⁴ with degrees (1, 2, 1, 1); the tensor is the
/// unperturbed member θ^2 ∧ θ^3 and the sweep deforms it.
fn perturbation_family_example() -> Result<Scenario> {
    let seed = 6;
    let degrees = [1, 2, 1, 1];
    let mut rng = PolyRng::new(seed);
    let poles = PoleSystem::new(4, degrees.iter().map(|&d| rng.homogeneous(5, d)).collect())?;
    let covs = perturbation_family(&degrees, 4, &zero_params(4, 4))?;
    let spec = LogFoliationSpec::new(poles, wedge_all(4, &covs)?)?;
    Ok(Scenario {
        name: "perturbation-family".into(),
        seed,
        spec,
        checks: vec![
            req(
                "kupka_sweep",
                json!({ "taus": [[["0"], ["0"]], [["1/10"], ["1/7"]], [["1/20+1/30i"], ["-1/9"]], [["-1/13"], ["1/50"]]] }),
            ),
            // normal type at τ = 0: (d_1, d_2, d_3) = (1, 2, 1), resonant since 2 = 2·1
            req(
                "spectrum",
                json!({ "values": [[1.0, 0.0], [2.0, 0.0], [1.0, 0.0]], "expect_poincare": true, "expect_nonresonant": false }),
            ),
            req("degree", json!({ "expected": 2 })),
            req("decomposition", json!({ "expect_decomposable": true })),
            plain("projective"),
            plain("closed"),
            plain("identities"),
        ],
        tolerances: Tolerances::default(),
    })
}

pub fn builtin_example(name: &str) -> Result<Scenario> {
    match name {
        "p3-planes" => p3_planes(),
        "rational-fibration" => rational_fibration(),
        "perturbation-family" => perturbation_family_example(),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}
