use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::candidate::Candidate;
use crate::engine::enumerate::{check_inputs, scan_cells, CandidateStatus, ExclusionReason};
use crate::engine::filters::{Filter, FilterSet};
use crate::engine::lemmas::{all_ones_excluded, cutoff_record, roth_c_summary, AllOnesRecord, CutoffRecord, RothCRecord};
use crate::error::Result;
use crate::quad::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        if self == Verdict::Pass && other == Verdict::Pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exclusion {
    pub candidate: Candidate,
    pub reason: ExclusionReason,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Forces the degree bound instead of `k_cutoff(δ) - 1`.
    pub k_max: Option<u64>,
    /// List threshold rejections individually.
    pub full: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

/// Transcript of one exhaustive run for a fixed `(r, δ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusionCertificate {
    pub r: u64,
    pub delta: Rational,
    pub k_max: u64,
    pub cutoff: CutoffRecord,
    pub filters: FilterSet,
    pub all_ones: AllOnesRecord,
    pub roth_c: RothCRecord,
    /// Sorted by `(k, m, M)`. Threshold rejections appear only in full mode.
    pub excluded: Vec<Exclusion>,
    pub survivors: Vec<Candidate>,
    /// `(k, count)` for every `k` in `1..=k_max`.
    pub threshold_rejection_counts: Vec<(u64, u64)>,
    pub domain_size: u64,
    pub full: bool,
    pub verdict: Verdict,
}

impl ExclusionCertificate {
    pub fn beyond_baseline(&self) -> Vec<Filter> {
        self.filters.beyond_baseline()
    }

    pub fn threshold_rejections(&self) -> u64 {
        self.threshold_rejection_counts.iter().map(|(_, n)| n).sum()
    }

    /// Threshold rejections + other exclusions + survivors; equals
    /// `domain_size` for a well-formed certificate.
    pub fn accounted(&self) -> u64 {
        let listed = self
            .excluded
            .iter()
            .filter(|e| e.reason != ExclusionReason::AboveThreshold)
            .count() as u64;
        self.threshold_rejections() + listed + self.survivors.len() as u64
    }
}

pub(crate) fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(job),
        None => job(),
    }
}

/// Run the exhaustive exclusion for `(r, δ)`.
pub fn verify_delta(r: u64, delta: &Rational, filters: &FilterSet, opts: &VerifyOptions) -> Result<ExclusionCertificate> {
    with_threads(opts.threads, || verify_delta_inner(r, delta, filters, opts))
}

pub(crate) fn verify_delta_inner(
    r: u64,
    delta: &Rational,
    filters: &FilterSet,
    opts: &VerifyOptions,
) -> Result<ExclusionCertificate> {
    check_inputs(r, delta)?;
    let cutoff = cutoff_record(r, delta, opts.k_max)?;
    let k_max = cutoff.k_max;
    let cells = if k_max == 0 {
        Vec::new()
    } else {
        scan_cells(r, delta, k_max, filters, opts.full)?
    };

    let mut excluded = Vec::new();
    let mut survivors = Vec::new();
    let mut counts = Vec::with_capacity(cells.len());
    let mut domain_size = 0;
    for cell in cells {
        counts.push((cell.k, cell.threshold_rejections));
        domain_size += cell.domain_size;
        for (candidate, status) in cell.entries {
            match status {
                CandidateStatus::Survivor => survivors.push(candidate),
                CandidateStatus::Excluded(reason) => excluded.push(Exclusion { candidate, reason }),
            }
        }
    }
    excluded.sort_by_key(|e| e.candidate.key());
    survivors.sort_by_key(|c| c.key());

    let verdict = if survivors.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ExclusionCertificate {
        r,
        delta: delta.clone(),
        k_max,
        cutoff,
        filters: filters.clone(),
        all_ones: all_ones_excluded(r)?,
        roth_c: roth_c_summary(k_max),
        excluded,
        survivors,
        threshold_rejection_counts: counts,
        domain_size,
        full: opts.full,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::rat;

    #[test]
    fn table_entries_pass() {
        for (r, d) in [(3, 18), (7, 11)] {
            let cert = verify_delta(r, &rat(d, 1000), &FilterSet::standard(), &VerifyOptions::default()).unwrap();
            assert_eq!(cert.verdict, Verdict::Pass, "r = {r}");
            assert!(cert.survivors.is_empty());
            assert_eq!(cert.accounted(), cert.domain_size);
        }
    }

    #[test]
    fn small_delta_fails_with_witness() {
        let cert = verify_delta(2, &rat(1, 100), &FilterSet::standard(), &VerifyOptions::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail);
        assert_eq!(cert.k_max, 49);
        assert_eq!(cert.survivors[0].key(), (7, 5, 5));
        assert_eq!(cert.survivors[0].f_value(), -2);
        assert_eq!(cert.accounted(), cert.domain_size);
    }

    #[test]
    fn full_mode_lists_threshold_rejections() {
        let opts = VerifyOptions {
            full: true,
            ..VerifyOptions::default()
        };
        let cert = verify_delta(5, &rat(14, 1000), &FilterSet::standard(), &opts).unwrap();
        let listed = cert
            .excluded
            .iter()
            .filter(|e| e.reason == ExclusionReason::AboveThreshold)
            .count() as u64;
        assert_eq!(listed, cert.threshold_rejections());
        assert_eq!(cert.excluded.len() as u64 + cert.survivors.len() as u64, cert.domain_size);
    }

    #[test]
    fn large_delta_needs_no_enumeration() {
        let cert = verify_delta(2, &rat(1, 2), &FilterSet::standard(), &VerifyOptions::default()).unwrap();
        assert_eq!((cert.k_max, cert.domain_size), (0, 0));
        assert_eq!(cert.verdict, Verdict::Pass);
    }

    #[test]
    fn beyond_baseline_label() {
        let cert = verify_delta(2, &rat(15, 1000), &FilterSet::standard_with_roth_b(), &VerifyOptions::default()).unwrap();
        assert_eq!(cert.beyond_baseline(), vec![Filter::RothB]);
        assert_eq!(cert.verdict, Verdict::Pass);
    }
}
