//! The exhaustive exclusion of submaximal curves below `1/(√r + δ)`.
//!
//! For fixed `(r, δ)` every candidate `C ∈ |kL₁|` with `k` below the degree
//! cutoff and a Roth-shaped multiplicity pattern is pushed through the
//! threshold test, Roth's constraints and the Xu-type inequalities `f₁..f₅`.
//! Anything left over is a survivor; a run with no survivors certifies the
//! bound.

mod candidate;
mod certificate;
mod enumerate;
mod filters;
mod lemmas;
mod optimize;
mod range;

pub use candidate::{f_value, Candidate, CaseId};
pub use certificate::{verify_delta, Exclusion, ExclusionCertificate, Verdict, VerifyOptions};
pub use enumerate::{classify, domain, enumerate_candidates, sum_limit, CandidateStatus, ExclusionReason};
pub use filters::{roth_b_filter, roth_sum_filter, Filter, FilterSet};
pub use lemmas::{
    all_ones_excluded, cutoff_holds, cutoff_record, k_cutoff, roth_c_check, roth_c_summary, tail_threshold,
    xu_survivor_count, AllOnesRecord, CutoffRecord, RothCRecord, TailRecord, UNIFORM_K_MAX,
};
pub use optimize::{optimize_delta, OptimizeResult};
pub use range::{theorem_delta, verify_range, DeltaPolicy, RangeEntry, RangeOutcome, RangeReport};
