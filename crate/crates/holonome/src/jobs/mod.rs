//! Batch job runner behind the CLI: one `run` verb driven by a task field,
//! machine-readable reports, deterministic suites.

mod cache;
mod describe;
mod runner;

pub use cache::cached_rep;
pub use describe::describe;
pub use runner::{run_job, suite, suite_names, write_report_atomic, RunOutcome};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const SCHEMA_VERSION: &str = "1";
/// Matrices larger than this are omitted from reports unless full dumps
/// are forced.
pub const MATRIX_DUMP_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    Flatness,
    Monodromy,
    Spectra,
    Hecke,
    Bmw,
    BraidRelations,
    KdCompare,
    Qweyl,
    Rmatrix,
    V0Check,
    DualityCheck,
    SchurWeyl,
}

impl TaskKind {
    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::Flatness => "flatness",
            TaskKind::Monodromy => "monodromy",
            TaskKind::Spectra => "spectra",
            TaskKind::Hecke => "hecke",
            TaskKind::Bmw => "bmw",
            TaskKind::BraidRelations => "braid-relations",
            TaskKind::KdCompare => "kd-compare",
            TaskKind::Qweyl => "qweyl",
            TaskKind::Rmatrix => "rmatrix",
            TaskKind::V0Check => "v0-check",
            TaskKind::DualityCheck => "duality-check",
            TaskKind::SchurWeyl => "schur-weyl",
        }
    }

    pub fn parse(s: &str) -> Result<TaskKind> {
        TaskKind::all()
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown task: {s}")))
    }

    pub fn all() -> &'static [TaskKind] {
        &[
            TaskKind::Flatness,
            TaskKind::Monodromy,
            TaskKind::Spectra,
            TaskKind::Hecke,
            TaskKind::Bmw,
            TaskKind::BraidRelations,
            TaskKind::KdCompare,
            TaskKind::Qweyl,
            TaskKind::Rmatrix,
            TaskKind::V0Check,
            TaskKind::DualityCheck,
            TaskKind::SchurWeyl,
        ]
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// One batch job. Unknown fields are rejected so typos in job files fail
/// loudly with exit code 2.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub task: TaskKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<String>,
    /// kz | casimir | ckz, where a task involves a connection.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Highest weight for rank-1 quantum modules.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Pass/fail threshold for residual-style tasks; defaults per task.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<usize>>,
    /// Row count for the polynomial model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_block: Option<Vec<i64>>,
    /// Adds a root vector to the first residue: designed failure path.
    #[serde(default)]
    pub perturb: bool,
    #[serde(default)]
    pub fixed_step: bool,
    /// Force full matrix dumps past the size cap.
    #[serde(default)]
    pub dump_matrices: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl JobSpec {
    pub fn new(task: TaskKind) -> JobSpec {
        JobSpec {
            task,
            algebra: None,
            rep: None,
            connection: None,
            n: None,
            m: None,
            h: None,
            q: None,
            tol: None,
            threshold: None,
            lambda: None,
            mu: None,
            k: None,
            word_len: None,
            weight_block: None,
            perturb: false,
            fixed_step: false,
            dump_matrices: false,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.tol {
            if t <= 0.0 {
                return Err(Error::InvalidInput("tol must be positive".into()));
            }
        }
        if let Some(t) = self.threshold {
            if t <= 0.0 {
                return Err(Error::InvalidInput("threshold must be positive".into()));
            }
        }
        let need = |present: bool, name: &str| -> Result<()> {
            if present {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!("task {} requires `{name}`", self.task)))
            }
        };
        match self.task {
            TaskKind::Flatness | TaskKind::V0Check => {
                need(self.algebra.is_some(), "algebra")?;
                need(self.rep.is_some(), "rep")?;
            }
            TaskKind::Monodromy
            | TaskKind::Spectra
            | TaskKind::Hecke
            | TaskKind::Bmw
            | TaskKind::BraidRelations
            | TaskKind::KdCompare => {
                need(self.algebra.is_some(), "algebra")?;
            }
            TaskKind::Qweyl | TaskKind::Rmatrix => {
                need(self.algebra.is_some() || self.m.is_some(), "algebra or m")?;
            }
            TaskKind::DualityCheck => {
                need(
                    self.k.is_some() && self.n.is_some() && self.lambda.is_some(),
                    "k, n, lambda",
                )?;
            }
            TaskKind::SchurWeyl => {
                need(self.n.is_some(), "n")?;
            }
        }
        Ok(())
    }

    pub fn h_c64(&self) -> crate::linalg::C64 {
        let [re, im] = self.h.unwrap_or([0.0, 0.0]);
        crate::linalg::C64::new(re, im)
    }

    pub fn tol_or_default(&self) -> f64 {
        self.tol.unwrap_or(1e-10)
    }
}
