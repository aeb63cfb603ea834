//! Exact computation with logarithmic p-forms on projective space and the
//! foliations they define.
//!
//! A foliation is given by poles `f_1, ..., f_r` (homogeneous polynomials in
//! `n + 1` variables) and a residue tensor `a ∈ Λ^p(ℂ^r)*`, which stand for
//! `η = Σ λ_I df_{i_1}/f_{i_1} ∧ ... ∧ df_{i_p}/f_{i_p}`. Everything symbolic is
//! exact over ℚ(i); the singularity search and residue quadrature are numeric
//! with pinned tolerances and seeds.
//!
//! The examples are the intended entry point, one per capability:
//!
//! | example | shows |
//! |---|---|
//! | `exact_kernel` | ℚ(i) arithmetic, rank, nullspaces |
//! | `polynomials` | sparse polynomials, resultants, restriction to lines |
//! | `differential_forms` | wedge, `d`, radial contraction |
//! | `decompose_tensor` | decomposability, factorization, Plücker defects, corank 2 |
//! | `logarithmic_form` | building a spec, log and closedness criteria, degree |
//! | `first_integral` | rational first integrals when `r = p + 1` |
//! | `p3_singularities` | exact and numeric singularity count for six planes in ℙ³ |
//! | `torus_residues` | residues by torus quadrature, spectral decay |
//! | `kupka_family` | Kupka points, rotational spectrum, normal type |
//! | `scenario_report` | scenario files, the check registry, reports |
//!
//! ```text
//! cargo run --release --example p3_singularities
//! ```

pub mod error;
pub mod exactnum;
pub mod foliation;
pub mod forms;
pub mod logtensor;
pub mod newton;
pub mod polyring;
pub mod residue;
pub mod scenario;

pub use error::{Error, Result};
