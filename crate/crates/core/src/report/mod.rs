//! Serialization of certificates, range reports and comparison tables.

mod document;
mod emit;
mod rational;

pub use document::{
    CandidateDoc, CertificateDocument, Command, ExcludedDoc, Format, OptimizeDocument, ProbeDoc, RangeDocument,
    RangeEntryDoc, RunConfig, ThresholdCount, Timings, SCHEMA_VERSION, TOOL_VERSION,
};
pub use emit::{emit_certificate, emit_optimize, emit_range, emit_table, parse_certificate, parse_range};
pub use rational::{format_rational, parse_rational, ExactRational};
