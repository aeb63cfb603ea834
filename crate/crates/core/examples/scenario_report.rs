//! Scenarios: build one in code, round-trip it through its JSON file format,
//! run the checks and read the report.

use logfol::logtensor::LogFoliationSpec;
use logfol::polyring::PolyRng;
use logfol::scenario::{parse_scenario_str, run, CheckRequest, Scenario, Tolerances, REGISTRY};
use serde_json::json;

fn main() -> logfol::Result<()> {
    println!("available checks:");
    for def in REGISTRY {
        println!("  {:<20} {}", def.name, def.about);
    }

    let seed = 23;
    let spec = LogFoliationSpec::random_projective(&mut PolyRng::new(seed), 3, &[1, 1, 2], 2)?;
    let check = |name: &str, params: serde_json::Value| CheckRequest {
        name: name.into(),
        params,
    };
    let s = Scenario {
        name: "two-planes-and-a-quadric".into(),
        seed,
        spec,
        checks: vec![
            check("degree", json!({ "expected": 1 })),
            check("first_integral", json!({ "expected_exponents": [2, 2, 1] })),
            check("closed", json!(null)),
            check("residues", json!(null)),
            // r = p + 2 fails here, so this one is recorded as an error
            check("corank2", json!(null)),
        ],
        tolerances: Tolerances::default(),
    };

    let text = s.to_json();
    let back = parse_scenario_str(&text)?;
    println!(
        "scenario file is {} bytes and re-parses: {}",
        text.len(),
        back.to_json() == text
    );

    let report = run(&back);
    print!("{}", report.summary());
    println!("exit code would be {}", report.exit_code());
    let residues = report.checks.iter().find(|c| c.name == "residues").expect("requested");
    println!("residue detail: {}", residues.detail);
    Ok(())
}
