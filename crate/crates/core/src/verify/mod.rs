//! Independent certification of triangulations.
//!
//! The checks only read the [`TriComplex`] and the atlas: circumdisks are
//! recomputed from the stored lift words and intruders are searched for by
//! plain tile enumeration.

mod checks;
mod mutate;

pub use checks::{check_delaunay, check_distance_paths, check_simplicial, check_structure, count_audits, jungerman_ringel};
pub use mutate::{mutate, mutation_suite, Mutation};

use crate::delaunay::TriComplex;
use crate::error::Result;
use crate::surface::Atlas;
use crate::thickthin::EPSILON;
use serde::{Deserialize, Serialize};

/// Evidence attached to a failed (or, for margins, passed) check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// An edge joining a vertex to itself.
    Loop { edge: usize, vertex: usize },
    /// Two distinct edges with the same endpoints.
    DoubleEdge { edges: [usize; 2], endpoints: [usize; 2] },
    /// A lifted vertex strictly inside a triangle's circumdisk.
    Intruder { triangle: usize, vertex: usize, position: [f64; 2], depth: f64 },
    /// A triangle without a compact circumdisk.
    OpenCircumcircle { triangle: usize },
    /// An edge longer than the distance between its endpoints.
    Shortcut { edge: usize, realized: f64, distance: f64, word: Vec<u32>, generators: Vec<i32> },
    /// A structural defect of the complex.
    Structure { message: String },
    /// A failed counting identity or bound.
    Count { lhs: f64, rhs: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Distance from failure: positive when the check holds with room to
    /// spare, negative when it fails.
    pub margin: f64,
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn new(name: &str, passed: bool, margin: f64, witness: Option<Witness>) -> Self {
        CheckResult { name: name.to_string(), passed, margin, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl Certificate {
    pub fn new(checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Certificate { checks, passed }
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Slack for the closed circumdisk test.
    pub delaunay_tol: f64,
    /// Slack for edge length against surface distance.
    pub distance_tol: f64,
    pub epsilon: f64,
    /// Also check `v <= 151 g`.
    pub thick_thin: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { delaunay_tol: 1e-9, distance_tol: 1e-7, epsilon: EPSILON, thick_thin: false }
    }
}

/// Runs every check. Structural failures skip the geometric checks, which
/// need a well-formed complex; they are then reported as failed.
pub fn verify(t: &TriComplex, atlas: &Atlas, opts: &VerifyOptions) -> Result<Certificate> {
    let structure = check_structure(t, atlas);
    let well_formed = structure.passed;
    let mut checks = vec![structure, check_simplicial(t)];
    if well_formed {
        checks.push(check_delaunay(t, atlas, opts.delaunay_tol)?);
        checks.push(check_distance_paths(t, atlas, opts.distance_tol)?);
    } else {
        let skipped = Some(Witness::Structure { message: "skipped: complex is not well formed".into() });
        checks.push(CheckResult::new("delaunay", false, f64::NAN, skipped.clone()));
        checks.push(CheckResult::new("distance_paths", false, f64::NAN, skipped));
    }
    checks.extend(count_audits(t, atlas.genus, opts.epsilon, opts.thick_thin));
    Ok(Certificate::new(checks))
}
