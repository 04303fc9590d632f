//! The JSON report and the input digests that key the cache.

use std::collections::BTreeMap;

use gradus_core::constructions::ClassicalReport;
use gradus_core::lefschetz::LefschetzReport;
use gradus_core::{FieldSpec, RankCertificate};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

pub const SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum JobVerdict {
    Full,
    Deficient,
    TriviallyRational,
    SlFound,
    SlNotFound,
}

impl JobVerdict {
    pub fn passed(self) -> bool {
        matches!(self, Self::Full | Self::TriviallyRational | Self::SlFound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobRecord {
    pub job_id: String,
    pub inputs_digest: String,
    pub verdict: JobVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<RankCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<LefschetzReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical: Option<ClassicalReport>,
    /// File name of the matrix dump, relative to the dump directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_dump: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub by_verdict: BTreeMap<JobVerdict, usize>,
}

impl Summary {
    pub fn of(jobs: &[JobRecord]) -> Self {
        let mut by_verdict = BTreeMap::new();
        for j in jobs {
            *by_verdict.entry(j.verdict).or_insert(0) += 1;
        }
        let passed = jobs.iter().filter(|j| j.verdict.passed()).count();
        Self {
            total: jobs.len(),
            passed,
            failed: jobs.len() - passed,
            by_verdict,
        }
    }
}

/// Wall-clock data, kept apart so the rest of the report is reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub total_ms: u64,
    pub jobs: Vec<JobTiming>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobTiming {
    pub job_id: String,
    pub elapsed_ms: u64,
    pub cached: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: u32,
    pub tool_version: String,
    pub config: RunConfig,
    pub jobs: Vec<JobRecord>,
    pub summary: Summary,
    pub timing: Timing,
}

impl Report {
    pub fn new(config: &RunConfig, jobs: Vec<JobRecord>, timing: Timing) -> Self {
        Self {
            schema: SCHEMA,
            tool_version: TOOL_VERSION.into(),
            config: config.clone(),
            summary: Summary::of(&jobs),
            jobs,
            timing,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        let r: Self = serde_json::from_str(text)?;
        if r.schema != SCHEMA {
            return Err(serde::de::Error::custom(format!("unsupported schema {}", r.schema)));
        }
        Ok(r)
    }
}

/// Everything a job's result depends on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum JobInputs {
    PropMain {
        /// Sorted entries; the input order does not affect the result.
        degrees: [u32; 4],
        field: FieldSpec,
        seed: Option<u64>,
    },
    Lefschetz {
        degrees: Vec<u32>,
        field: FieldSpec,
    },
    NlClassical {
        degree: u32,
        field: FieldSpec,
    },
}

impl JobInputs {
    /// SHA-256 of the canonical JSON of the inputs and the tool version.
    pub fn digest(&self) -> String {
        #[derive(Serialize)]
        struct Keyed<'a> {
            tool_version: &'a str,
            inputs: &'a JobInputs,
        }
        let canonical = serde_json::to_vec(&Keyed {
            tool_version: TOOL_VERSION,
            inputs: self,
        })
        .expect("inputs serialize");
        hex::encode(Sha256::digest(&canonical))
    }
}
