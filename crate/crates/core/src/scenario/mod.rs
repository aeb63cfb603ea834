//! Scenario files: a pole system, a residue tensor and a list of checks.
//!
//! ```json
//! {
//!   "schema": "logfol.scenario/1",
//!   "name": "two-lines",
//!   "n": 1,
//!   "seed": 7,
//!   "poles": [[["1", [1, 0]]], [["1", [0, 1]]]],
//!   "tensor": {"r": 2, "p": 1, "entries": [[[1], "1"], [[2], "-1"]]},
//!   "checks": ["closed", {"name": "degree", "params": {"expected": 0}}]
//! }
//! ```
//!
//! A pole is a list of `[coefficient, exponents]` terms; tensor indices are
//! 1-based. Parsing reports every violation, not just the first.

pub mod builtin;
pub mod checks;
pub mod run;

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;
use crate::logtensor::{LogFoliationSpec, PoleSystem, ResidueTensor};
use crate::polyring::MultiPoly;

pub use builtin::{builtin_example, BUILTIN_NAMES};
pub use checks::{lookup, CheckDef, REGISTRY};
pub use run::{run, CheckReport, CheckStatus, Report};

pub const SCENARIO_SCHEMA: &str = "logfol.scenario/1";
pub const REPORT_SCHEMA: &str = "logfol.report/1";
pub const TENSOR_SCHEMA: &str = "logfol.tensor/1";

/// `[coefficient, exponents]`
pub type TermFile = (String, Vec<u16>);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub r: usize,
    pub p: usize,
    /// `[1-based indices, coefficient]`
    pub entries: Vec<(Vec<usize>, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CheckEntry {
    Name(String),
    Full {
        name: String,
        #[serde(default, skip_serializing_if = "Value::is_null")]
        params: Value,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema: String,
    #[serde(default)]
    pub name: String,
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
    pub poles: Vec<Vec<TermFile>>,
    pub tensor: TensorFile,
    #[serde(default)]
    pub checks: Vec<CheckEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRequest {
    pub name: String,
    pub params: Value,
}

/// Numeric thresholds a scenario may override.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Tolerances {
    /// recovered residue vs exact entry
    pub residue: f64,
    /// off-divisor Newton residual
    pub newton_residual: f64,
    pub dedup: f64,
    /// relative |f| below which a point counts as on a pole
    pub divisor: f64,
    /// minimum N=32 → N=64 error improvement
    pub decay_ratio: f64,
    pub kupka_zero: f64,
    pub kupka_eigen: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residue: crate::residue::RESIDUE_TOL,
            newton_residual: 1e-8,
            dedup: 1e-6,
            divisor: 1e-6,
            decay_ratio: 1e3,
            kupka_zero: 1e-9,
            kupka_eigen: 1e-6,
        }
    }
}

impl Tolerances {
    fn pairs(&self) -> [(&'static str, f64); 7] {
        [
            ("residue", self.residue),
            ("newton_residual", self.newton_residual),
            ("dedup", self.dedup),
            ("divisor", self.divisor),
            ("decay_ratio", self.decay_ratio),
            ("kupka_zero", self.kupka_zero),
            ("kupka_eigen", self.kupka_eigen),
        ]
    }

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "residue" => &mut self.residue,
            "newton_residual" => &mut self.newton_residual,
            "dedup" => &mut self.dedup,
            "divisor" => &mut self.divisor,
            "decay_ratio" => &mut self.decay_ratio,
            "kupka_zero" => &mut self.kupka_zero,
            "kupka_eigen" => &mut self.kupka_eigen,
            _ => return None,
        })
    }

    /// Entries that differ from the defaults.
    fn overrides(&self) -> BTreeMap<String, f64> {
        let base = Tolerances::default().pairs();
        self.pairs()
            .iter()
            .zip(base)
            .filter(|(a, b)| a.1 != b.1)
            .map(|(a, _)| (a.0.to_string(), a.1))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub seed: u64,
    pub spec: LogFoliationSpec,
    pub checks: Vec<CheckRequest>,
    pub tolerances: Tolerances,
}

fn parse_scalar(s: &str, at: &str, errs: &mut Vec<String>) -> Option<GaussianRational> {
    match s.parse() {
        Ok(v) => Some(v),
        Err(_) => {
            errs.push(format!("{at}: malformed scalar literal {s:?}"));
            None
        }
    }
}

fn parse_poles(file: &ScenarioFile, errs: &mut Vec<String>) -> Vec<MultiPoly> {
    let nv = file.n + 1;
    let mut polys = Vec::new();
    for (k, terms) in file.poles.iter().enumerate() {
        let at = format!("pole {}", k + 1);
        let mut ok = true;
        let mut parsed = Vec::new();
        for (t, (c, e)) in terms.iter().enumerate() {
            let here = format!("{at} term {}", t + 1);
            if e.len() != nv {
                errs.push(format!("{here}: {} exponents for {nv} variables", e.len()));
                ok = false;
            }
            match parse_scalar(c, &here, errs) {
                Some(v) => parsed.push((e.clone(), v)),
                None => ok = false,
            }
        }
        if !ok {
            continue;
        }
        let Ok(f) = MultiPoly::from_terms(nv, parsed) else {
            errs.push(format!("{at}: malformed terms"));
            continue;
        };
        match f.homogeneous_degree() {
            Err(Error::ZeroPolynomial) => errs.push(format!("{at}: polynomial is zero")),
            Err(_) => errs.push(format!("{at}: not homogeneous")),
            Ok(0) => errs.push(format!("{at}: constant")),
            Ok(_) => polys.push((k, f)),
        }
    }
    for a in 0..polys.len() {
        for b in a + 1..polys.len() {
            if polys[a].1.is_proportional(&polys[b].1) {
                errs.push(format!(
                    "poles {} and {}: pairwise non-proportional violated",
                    polys[a].0 + 1,
                    polys[b].0 + 1
                ));
            }
        }
    }
    polys.into_iter().map(|(_, f)| f).collect()
}

fn parse_tensor_into(t: &TensorFile, errs: &mut Vec<String>) -> Option<ResidueTensor> {
    let before = errs.len();
    if t.p > t.r {
        errs.push(format!("tensor degree p = {} exceeds r = {}", t.p, t.r));
    }
    let mut entries = Vec::new();
    for (idx, c) in &t.entries {
        let at = format!("tensor entry {idx:?}");
        if idx.len() != t.p {
            errs.push(format!("{at}: {} indices for degree {}", idx.len(), t.p));
        }
        if let Some(bad) = idx.iter().find(|&&i| i == 0 || i > t.r) {
            errs.push(format!("{at}: index {bad} out of range 1..={}", t.r));
        }
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            errs.push(format!("{at}: repeated index"));
        }
        if let Some(v) = parse_scalar(c, &at, errs) {
            entries.push((idx.iter().map(|i| i.saturating_sub(1)).collect::<Vec<_>>(), v));
        }
    }
    if errs.len() > before {
        return None;
    }
    match ResidueTensor::from_entries(t.r, t.p, entries) {
        Ok(a) if a.is_zero() => {
            errs.push("tensor is zero".into());
            None
        }
        Ok(a) => Some(a),
        Err(e) => {
            errs.push(format!("tensor: {e}"));
            None
        }
    }
}

/// Validates a tensor file on its own (schema optional).
pub fn parse_tensor_str(src: &str) -> Result<ResidueTensor> {
    let t: TensorFile = serde_json::from_str(src).map_err(|e| Error::Scenario(vec![format!("tensor json: {e}")]))?;
    let mut errs = Vec::new();
    if let Some(s) = &t.schema {
        if s != TENSOR_SCHEMA {
            errs.push(format!("schema {s:?} is not {TENSOR_SCHEMA:?}"));
        }
    }
    let a = parse_tensor_into(&t, &mut errs);
    match a {
        Some(a) if errs.is_empty() => Ok(a),
        _ => Err(Error::Scenario(errs)),
    }
}

pub fn tensor_to_file(a: &ResidueTensor) -> TensorFile {
    TensorFile {
        schema: None,
        r: a.r(),
        p: a.p(),
        entries: a
            .entries()
            .map(|(i, c)| (i.iter().map(|x| x + 1).collect(), c.to_string()))
            .collect(),
    }
}

fn check_requests(file: &ScenarioFile, errs: &mut Vec<String>) -> Vec<CheckRequest> {
    let mut out = Vec::new();
    for entry in &file.checks {
        let (name, params) = match entry {
            CheckEntry::Name(n) => (n.clone(), Value::Null),
            CheckEntry::Full { name, params } => (name.clone(), params.clone()),
        };
        let Some(def) = lookup(&name) else {
            errs.push(format!("unknown check {name:?}"));
            continue;
        };
        match &params {
            Value::Null => {}
            Value::Object(m) => {
                for k in m.keys() {
                    if !def.params.contains(&k.as_str()) {
                        errs.push(format!("check {name:?}: unknown parameter {k:?}"));
                    }
                }
            }
            _ => errs.push(format!("check {name:?}: params must be an object")),
        }
        out.push(CheckRequest { name, params });
    }
    out
}

pub fn parse_scenario_str(src: &str) -> Result<Scenario> {
    let file: ScenarioFile =
        serde_json::from_str(src).map_err(|e| Error::Scenario(vec![format!("scenario json: {e}")]))?;
    let mut errs = Vec::new();
    if file.schema != SCENARIO_SCHEMA {
        errs.push(format!("schema {:?} is not {SCENARIO_SCHEMA:?}", file.schema));
    }
    let polys = parse_poles(&file, &mut errs);
    if file.tensor.r != file.poles.len() {
        errs.push(format!(
            "tensor r = {} but {} poles given",
            file.tensor.r,
            file.poles.len()
        ));
    }
    let tensor = parse_tensor_into(&file.tensor, &mut errs);
    let checks = check_requests(&file, &mut errs);
    let mut tolerances = Tolerances::default();
    for (k, v) in &file.tolerances {
        match tolerances.slot(k) {
            Some(slot) if v.is_finite() && *v > 0.0 => *slot = *v,
            Some(_) => errs.push(format!("tolerance {k:?} must be positive")),
            None => errs.push(format!("unknown tolerance {k:?}")),
        }
    }
    if !errs.is_empty() {
        return Err(Error::Scenario(errs));
    }
    let spec = PoleSystem::new(file.n, polys)
        .and_then(|poles| LogFoliationSpec::new(poles, tensor.expect("validated")))
        .map_err(|e| Error::Scenario(vec![e.to_string()]))?;
    Ok(Scenario {
        name: file.name,
        seed: file.seed,
        spec,
        checks,
        tolerances,
    })
}

pub fn parse_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let src =
        std::fs::read_to_string(path.as_ref()).map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_scenario_str(&src)
}

impl Scenario {
    pub fn to_file(&self) -> ScenarioFile {
        let poles = self
            .spec
            .poles
            .polys()
            .iter()
            .map(|f| f.terms().map(|(m, c)| (c.to_string(), m.exps().to_vec())).collect())
            .collect();
        ScenarioFile {
            schema: SCENARIO_SCHEMA.into(),
            name: self.name.clone(),
            n: self.spec.n(),
            seed: self.seed,
            poles,
            tensor: tensor_to_file(&self.spec.tensor),
            checks: self
                .checks
                .iter()
                .map(|c| match &c.params {
                    Value::Null => CheckEntry::Name(c.name.clone()),
                    p => CheckEntry::Full {
                        name: c.name.clone(),
                        params: p.clone(),
                    },
                })
                .collect(),
            tolerances: self.tolerances.overrides(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("scenario serializes")
    }
}
