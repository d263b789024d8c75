use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bounds::DigitMode;
use crate::engine::{
    AllOnesRecord, Candidate, CaseId, CutoffRecord, ExclusionCertificate, ExclusionReason, Filter, FilterSet,
    OptimizeResult, RangeOutcome, RangeReport, RothCRecord, TailRecord, Verdict,
};
use crate::report::rational::ExactRational;

/// Bumped whenever a key is added, removed or renamed.
pub const SCHEMA_VERSION: &str = "1.0.0";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Verify,
    VerifyRange,
    Optimize,
    Cutoff,
    Table,
    Compare,
    Tail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

/// Echo of the invocation, embedded in every document. Thread count is left
/// out on purpose: it never changes the result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub r: Option<u64>,
    pub r_from: Option<u64>,
    pub r_to: Option<u64>,
    pub delta: Option<ExactRational>,
    pub k_max_override: Option<u64>,
    pub filters: FilterSet,
    pub grid_step: Option<ExactRational>,
    pub format: Format,
    pub digits: DigitMode,
    pub full: bool,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            r: None,
            r_from: None,
            r_to: None,
            delta: None,
            k_max_override: None,
            filters: FilterSet::standard(),
            grid_step: None,
            format: Format::Json,
            digits: DigitMode::Four,
            full: false,
            output_path: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateDoc {
    pub k: u64,
    pub m: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    pub case: CaseId,
    pub f: i64,
}

impl From<&Candidate> for CandidateDoc {
    fn from(c: &Candidate) -> Self {
        Self {
            k: c.k(),
            m: c.m(),
            big_m: c.big_m(),
            case: c.case_id(),
            f: c.f_value().try_into().expect("f value fits in i64"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludedDoc {
    pub k: u64,
    pub m: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    pub case: CaseId,
    pub f: i64,
    pub reason: String,
}

impl ExcludedDoc {
    fn new(c: &Candidate, reason: ExclusionReason) -> Self {
        let CandidateDoc { k, m, big_m, case, f } = c.into();
        Self {
            k,
            m,
            big_m,
            case,
            f,
            reason: reason.name().to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdCount {
    pub k: u64,
    pub count: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub total: u64,
}

impl Timings {
    pub fn from_millis(ms: u128) -> Self {
        Self {
            total: ms.min(u64::MAX as u128) as u64,
        }
    }
}

/// Serialized form of one `verify` run. Key order is the field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub tool_version: String,
    pub config: RunConfig,
    pub verdict: Verdict,
    pub k_max: u64,
    pub filters: FilterSet,
    pub beyond_baseline: Vec<Filter>,
    pub r: u64,
    pub delta: ExactRational,
    pub full: bool,
    pub domain_size: u64,
    pub cutoff_record: CutoffRecord,
    pub all_ones_record: AllOnesRecord,
    pub roth_c_record: RothCRecord,
    pub excluded: Vec<ExcludedDoc>,
    pub survivors: Vec<CandidateDoc>,
    pub threshold_rejection_counts: Vec<ThresholdCount>,
    pub timings_ms: Timings,
}

impl CertificateDocument {
    pub fn new(config: RunConfig, cert: &ExclusionCertificate, timings: Timings) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            config,
            verdict: cert.verdict,
            k_max: cert.k_max,
            filters: cert.filters.clone(),
            beyond_baseline: cert.beyond_baseline(),
            r: cert.r,
            delta: cert.delta.clone().into(),
            full: cert.full,
            domain_size: cert.domain_size,
            cutoff_record: cert.cutoff.clone(),
            all_ones_record: cert.all_ones.clone(),
            roth_c_record: cert.roth_c.clone(),
            excluded: cert
                .excluded
                .iter()
                .map(|e| ExcludedDoc::new(&e.candidate, e.reason))
                .collect(),
            survivors: cert.survivors.iter().map(CandidateDoc::from).collect(),
            threshold_rejection_counts: cert
                .threshold_rejection_counts
                .iter()
                .map(|&(k, count)| ThresholdCount { k, count })
                .collect(),
            timings_ms: timings,
        }
    }

    pub fn without_timings(&self) -> Self {
        Self {
            timings_ms: Timings::default(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeEntryDoc {
    pub r: u64,
    /// `"square"` or `"verified"`.
    pub kind: String,
    pub verdict: Verdict,
    /// Exact `1/s` for squares.
    pub value: Option<ExactRational>,
    pub delta: Option<ExactRational>,
    pub k_max: Option<u64>,
    pub domain_size: Option<u64>,
    pub threshold_rejections: Option<u64>,
    pub excluded_count: Option<u64>,
    pub survivors: Vec<CandidateDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeDocument {
    pub schema_version: String,
    pub tool_version: String,
    pub config: RunConfig,
    pub verdict: Verdict,
    pub r_from: u64,
    pub r_to: u64,
    pub filters: FilterSet,
    pub beyond_baseline: Vec<Filter>,
    /// Present for a uniform `δ` whose degree bound is at least 2.
    pub tail_record: Option<TailRecord>,
    pub entries: Vec<RangeEntryDoc>,
    pub timings_ms: Timings,
}

impl RangeDocument {
    pub fn new(
        config: RunConfig,
        report: &RangeReport,
        filters: &FilterSet,
        tail_record: Option<TailRecord>,
        timings: Timings,
    ) -> Self {
        let entries = report
            .entries
            .iter()
            .map(|e| match &e.outcome {
                RangeOutcome::Square { value, .. } => RangeEntryDoc {
                    r: e.r,
                    kind: "square".into(),
                    verdict: Verdict::Pass,
                    value: Some(value.clone().into()),
                    delta: None,
                    k_max: None,
                    domain_size: None,
                    threshold_rejections: None,
                    excluded_count: None,
                    survivors: Vec::new(),
                },
                RangeOutcome::Verified(cert) => RangeEntryDoc {
                    r: e.r,
                    kind: "verified".into(),
                    verdict: cert.verdict,
                    value: None,
                    delta: Some(cert.delta.clone().into()),
                    k_max: Some(cert.k_max),
                    domain_size: Some(cert.domain_size),
                    threshold_rejections: Some(cert.threshold_rejections()),
                    excluded_count: Some(cert.accounted() - cert.threshold_rejections() - cert.survivors.len() as u64),
                    survivors: cert.survivors.iter().map(CandidateDoc::from).collect(),
                },
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            config,
            verdict: report.verdict,
            r_from: report.r_from,
            r_to: report.r_to,
            filters: filters.clone(),
            beyond_baseline: filters.beyond_baseline(),
            tail_record,
            entries,
            timings_ms: timings,
        }
    }

    pub fn without_timings(&self) -> Self {
        Self {
            timings_ms: Timings::default(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeDoc {
    pub delta: ExactRational,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizeDocument {
    pub schema_version: String,
    pub tool_version: String,
    pub config: RunConfig,
    pub r: u64,
    pub grid_step: ExactRational,
    pub delta: ExactRational,
    pub filters: FilterSet,
    pub beyond_baseline: Vec<Filter>,
    pub binding: Vec<CandidateDoc>,
    pub probes: Vec<ProbeDoc>,
    pub timings_ms: Timings,
}

impl OptimizeDocument {
    pub fn new(config: RunConfig, res: &OptimizeResult, filters: &FilterSet, timings: Timings) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            config,
            r: res.r,
            grid_step: res.grid_step.clone().into(),
            delta: res.delta.clone().into(),
            filters: filters.clone(),
            beyond_baseline: filters.beyond_baseline(),
            binding: res.binding.iter().map(CandidateDoc::from).collect(),
            probes: res
                .probes
                .iter()
                .map(|(d, v)| ProbeDoc {
                    delta: d.clone().into(),
                    verdict: *v,
                })
                .collect(),
            timings_ms: timings,
        }
    }
}
