//! The registry of verification claims C01–C21, with a deterministic runner
//! and JSON reporting.
//!
//! Each claim recomputes one body of results from the library layer and
//! compares it against frozen expected values. The runner derives an
//! independent seed for every claim from the master seed, so a run over a
//! fixed field, seed, and sample budget is reproducible byte for byte.

mod defs;

use std::time::Instant;

use serde::Serialize;

use crate::scalars::FieldDescriptor;
use defs::{registry, Ctx, Outcome};

/// Payload format version.
pub const PAYLOAD_VERSION: u32 = 1;

/// The working field requested on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    /// The rational numbers.
    Rational,
    /// The prime field with `p` elements.
    Prime(u64),
    /// The quadratic extension with `p²` elements.
    Quadratic(u64),
}

impl FieldSpec {
    /// Parses `rational`, `fp:<p>`, or `fp2:<p>`.
    pub fn parse(text: &str) -> Result<Self, String> {
        if text == "rational" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(p) = text.strip_prefix("fp2:") {
            let p: u64 = p.parse().map_err(|_| format!("invalid prime in {text:?}"))?;
            return Ok(FieldSpec::Quadratic(p));
        }
        if let Some(p) = text.strip_prefix("fp:") {
            let p: u64 = p.parse().map_err(|_| format!("invalid prime in {text:?}"))?;
            return Ok(FieldSpec::Prime(p));
        }
        Err(format!("unknown field {text:?}: expected rational, fp:<p>, or fp2:<p>"))
    }

    /// Canonical label, matching the command-line syntax.
    pub fn label(&self) -> String {
        match self {
            FieldSpec::Rational => "rational".to_string(),
            FieldSpec::Prime(p) => format!("fp:{p}"),
            FieldSpec::Quadratic(p) => format!("fp2:{p}"),
        }
    }

    /// Validates the choice into a field descriptor.
    pub fn descriptor(&self) -> Result<FieldDescriptor, String> {
        match self {
            FieldSpec::Rational => Ok(FieldDescriptor::Rationals),
            FieldSpec::Prime(p) => {
                FieldDescriptor::prime(*p).map_err(|e| format!("fp:{p}: {e}"))
            }
            FieldSpec::Quadratic(p) => {
                FieldDescriptor::quadratic(*p).map_err(|e| format!("fp2:{p}: {e}"))
            }
        }
    }
}

/// Configuration of one verification run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Working field for the field-generic claims.
    pub field: FieldSpec,
    /// Master seed; each claim derives its own stream from it.
    pub seed: u64,
    /// Sampling budget hint.
    pub samples: usize,
    /// Whether to record wall-clock times (off keeps payloads reproducible).
    pub timings: bool,
    /// Worker threads (0 = serial).
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldSpec::Prime(97),
            seed: 0,
            samples: 200,
            timings: false,
            jobs: 0,
        }
    }
}

/// Outcome status of one claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// All checks held.
    Pass,
    /// At least one check failed.
    Fail,
    /// The claim does not apply to the requested configuration.
    Skipped,
}

/// Report for a single claim. Field order here is the JSON key order.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    /// Claim id, `C01`..`C21`.
    pub id: &'static str,
    /// Outcome.
    pub status: Status,
    /// Summary of the computed values (or the skip reason).
    pub computed: String,
    /// The frozen expected values.
    pub expected: &'static str,
    /// Whether the expected values are frozen from the reference account or
    /// from an independent enumeration oracle.
    pub provenance: &'static str,
    /// The derived per-claim seed.
    pub seed: u64,
    /// Wall-clock milliseconds (0 unless timings were requested).
    pub millis: u64,
    /// Minimal witness of the first failures, present only on failure or skip.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Echo of the configuration inside the payload.
#[derive(Debug, Clone, Serialize)]
pub struct PayloadConfig {
    /// Field label as given on the command line.
    pub field: String,
    /// Master seed.
    pub seed: u64,
    /// Sampling budget hint.
    pub samples: usize,
}

/// The full result of a run.
#[derive(Debug, Clone, Serialize)]
pub struct RunPayload {
    /// Payload format version.
    pub version: u32,
    /// Echo of the configuration.
    pub config: PayloadConfig,
    /// One report per selected claim, in id order.
    pub reports: Vec<ClaimReport>,
}

impl RunPayload {
    /// Serializes the payload as pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("payload serialization");
        text.push('\n');
        text
    }

    /// True when every selected claim passed (skips count as not passed).
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.status == Status::Pass)
    }
}

/// Static description of a claim for listings.
#[derive(Debug, Clone)]
pub struct ClaimInfo {
    /// Claim id, `C01`..`C21`.
    pub id: &'static str,
    /// One-line title.
    pub title: &'static str,
    /// Library modules the claim exercises.
    pub dependencies: &'static [&'static str],
    /// `reference` (frozen from the reference account) or `oracle`
    /// (independently enumerated).
    pub provenance: &'static str,
    /// Supported fields, as prose.
    pub fields: &'static str,
}

/// Errors from the runner entry points.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    /// A selected id is not in the registry.
    #[error("unknown claim {0:?}; ids run C01..C21")]
    UnknownClaim(String),
    /// The configuration cannot be used.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Derives the per-claim seed from the master seed and the claim id
/// (FNV-1a over the seed bytes then the id bytes).
pub fn claim_seed(master: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in master.to_le_bytes().into_iter().chain(id.bytes()) {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Lists every claim in id order.
pub fn list_claims() -> Vec<ClaimInfo> {
    registry().iter().map(|def| def.info.clone()).collect()
}

fn run_one(def: &defs::ClaimDef, config: &RunConfig, fd: &FieldDescriptor) -> ClaimReport {
    let seed = claim_seed(config.seed, def.info.id);
    let ctx = Ctx { spec: config.field, fd: fd.clone(), seed, samples: config.samples };
    let start = Instant::now();
    let outcome = (def.run)(&ctx);
    let millis = if config.timings { start.elapsed().as_millis() as u64 } else { 0 };
    let (status, computed, witness) = match outcome {
        Outcome::Done { pass: true, computed, .. } => (Status::Pass, computed, None),
        Outcome::Done { pass: false, computed, witness } => (Status::Fail, computed, witness),
        Outcome::Skip { reason } => (Status::Skipped, "skipped".to_string(), Some(reason)),
    };
    ClaimReport {
        id: def.info.id,
        status,
        computed,
        expected: def.expected,
        provenance: def.info.provenance,
        seed,
        millis,
        witness,
    }
}

/// Runs the selected claims (`all`, or an empty selection, means every one)
/// under the given configuration.
pub fn run(selection: &[String], config: &RunConfig) -> Result<RunPayload, RunError> {
    let fd = config.field.descriptor().map_err(RunError::InvalidConfig)?;
    if config.samples == 0 {
        return Err(RunError::InvalidConfig("samples must be positive".into()));
    }

    let defs = registry();
    let selected: Vec<&defs::ClaimDef> = if selection.is_empty()
        || (selection.len() == 1 && selection[0] == "all")
    {
        defs.iter().collect()
    } else {
        let mut picked: Vec<&defs::ClaimDef> = Vec::new();
        for id in selection {
            let def = defs
                .iter()
                .find(|d| d.info.id == id.as_str())
                .ok_or_else(|| RunError::UnknownClaim(id.clone()))?;
            if !picked.iter().any(|d| d.info.id == def.info.id) {
                picked.push(def);
            }
        }
        picked.sort_by_key(|d| d.info.id);
        picked
    };

    let mut reports: Vec<ClaimReport> = if config.jobs <= 1 {
        selected.iter().map(|def| run_one(def, config, &fd)).collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| RunError::InvalidConfig(format!("worker pool: {e}")))?;
        pool.install(|| selected.par_iter().map(|def| run_one(def, config, &fd)).collect())
    };
    reports.sort_by_key(|r| r.id);
    Ok(RunPayload {
        version: PAYLOAD_VERSION,
        config: PayloadConfig {
            field: config.field.label(),
            seed: config.seed,
            samples: config.samples,
        },
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(selection: &[&str]) -> Vec<String> {
        selection.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn eigen_claim_reports_the_multiplicities() {
        let payload = run(&ids(&["C11"]), &RunConfig::default()).unwrap();
        assert_eq!(payload.reports.len(), 1);
        let rep = &payload.reports[0];
        assert_eq!(rep.status, Status::Pass);
        assert!(rep.computed.contains("(1, 4, 13, 12, 6)"), "computed: {}", rep.computed);
    }

    #[test]
    fn dimension_claim_reports_22_and_20() {
        let payload = run(&ids(&["C19"]), &RunConfig::default()).unwrap();
        let rep = &payload.reports[0];
        assert_eq!(rep.status, Status::Pass);
        assert!(rep.computed.contains("22"), "computed: {}", rep.computed);
        assert!(rep.computed.contains("20"), "computed: {}", rep.computed);
    }

    #[test]
    fn cheap_subset_is_reproducible_byte_for_byte() {
        let config = RunConfig { seed: 1, ..RunConfig::default() };
        let selection = ids(&["C11", "C14", "C17", "C18", "C19"]);
        let first = run(&selection, &config).unwrap().to_json();
        let second = run(&selection, &config).unwrap().to_json();
        assert_eq!(first, second);
        assert!(first.contains("\"version\""));
    }

    #[test]
    fn unknown_ids_are_rejected() {
        let err = run(&ids(&["C99"]), &RunConfig::default()).unwrap_err();
        assert!(matches!(err, RunError::UnknownClaim(_)));
    }

    #[test]
    fn invalid_fields_are_rejected() {
        assert!(FieldSpec::parse("fp:abc").is_err());
        assert!(FieldSpec::parse("f97").is_err());
        let spec = FieldSpec::parse("fp:91").unwrap();
        assert!(spec.descriptor().is_err(), "91 = 7 * 13 is not prime");
        let config = RunConfig { field: spec, ..RunConfig::default() };
        assert!(matches!(run(&ids(&["C11"]), &config), Err(RunError::InvalidConfig(_))));
    }

    #[test]
    fn finite_field_claims_skip_over_the_rationals() {
        let config = RunConfig { field: FieldSpec::Rational, ..RunConfig::default() };
        let payload = run(&ids(&["C20"]), &config).unwrap();
        let rep = &payload.reports[0];
        assert_eq!(rep.status, Status::Skipped);
        assert_eq!(rep.computed, "skipped");
        assert!(rep.witness.is_some());
        assert!(!payload.all_passed(), "a skip must not count as a pass");
    }

    #[test]
    fn registry_lists_all_claims_in_order() {
        let infos = list_claims();
        assert_eq!(infos.len(), 21);
        for (k, info) in infos.iter().enumerate() {
            assert_eq!(info.id, format!("C{:02}", k + 1));
            assert!(!info.title.is_empty());
            assert!(!info.dependencies.is_empty());
        }
        let c20 = &infos[19];
        assert!(c20.dependencies.contains(&"wx_geometry"));
    }

    #[test]
    fn payload_keys_appear_in_declaration_order() {
        let payload = run(&ids(&["C11"]), &RunConfig::default()).unwrap();
        let json = payload.to_json();
        let version_pos = json.find("\"version\"").unwrap();
        let config_pos = json.find("\"config\"").unwrap();
        let reports_pos = json.find("\"reports\"").unwrap();
        assert!(version_pos < config_pos && config_pos < reports_pos);
        let id_pos = json.find("\"id\"").unwrap();
        let status_pos = json.find("\"status\"").unwrap();
        let computed_pos = json.find("\"computed\"").unwrap();
        let expected_pos = json.find("\"expected\"").unwrap();
        assert!(id_pos < status_pos && status_pos < computed_pos && computed_pos < expected_pos);
        assert!(!json.contains("\"witness\""), "passing reports carry no witness");
    }

    #[test]
    fn derived_seeds_differ_between_claims_and_masters() {
        assert_ne!(claim_seed(0, "C01"), claim_seed(0, "C02"));
        assert_ne!(claim_seed(0, "C01"), claim_seed(1, "C01"));
        assert_eq!(claim_seed(7, "C13"), claim_seed(7, "C13"));
    }

    #[test]
    fn duplicate_selections_run_once() {
        let payload = run(&ids(&["C11", "C11", "C19"]), &RunConfig::default()).unwrap();
        let got: Vec<&str> = payload.reports.iter().map(|r| r.id).collect();
        assert_eq!(got, vec!["C11", "C19"]);
    }
}
