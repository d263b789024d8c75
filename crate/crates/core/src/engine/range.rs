use rayon::prelude::*;

use crate::engine::certificate::{verify_delta_inner, with_threads, ExclusionCertificate, Verdict, VerifyOptions};
use crate::engine::filters::FilterSet;
use crate::error::{Error, Result};
use crate::quad::{floor_sqrt, is_perfect_square, rat, Rational};

/// Which `δ` to verify at each `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaPolicy {
    /// Tabulated `δ(r)`, `0.013` from `r = 10` on.
    Theorem,
    /// Tabulated `δ(r)` with `0.010` from `r = 23` on.
    ImprovedTail,
    Uniform(Rational),
}

impl DeltaPolicy {
    /// `None` for squares, which have an exact value instead.
    pub fn delta_for(&self, r: u64) -> Option<Rational> {
        if r < 2 || is_perfect_square(r) {
            return None;
        }
        match self {
            DeltaPolicy::Uniform(d) => Some(d.clone()),
            DeltaPolicy::ImprovedTail if r >= 23 => Some(rat(1, 100)),
            DeltaPolicy::Theorem | DeltaPolicy::ImprovedTail => theorem_delta(r),
        }
    }
}

/// Tabulated `δ(r)` for non-square `r >= 2`.
pub fn theorem_delta(r: u64) -> Option<Rational> {
    if r < 2 || is_perfect_square(r) {
        return None;
    }
    let thousandths = match r {
        2 => 31,
        3 => 18,
        5 => 14,
        6 => 22,
        7 => 11,
        8 => 12,
        _ => 13,
    };
    Some(rat(thousandths, 1000))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RangeOutcome {
    /// `r = s²`: the constant is exactly `1/s`.
    Square { s: u64, value: Rational },
    Verified(Box<ExclusionCertificate>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeEntry {
    pub r: u64,
    pub outcome: RangeOutcome,
}

impl RangeEntry {
    pub fn verdict(&self) -> Verdict {
        match &self.outcome {
            RangeOutcome::Square { .. } => Verdict::Pass,
            RangeOutcome::Verified(cert) => cert.verdict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeReport {
    pub r_from: u64,
    pub r_to: u64,
    pub entries: Vec<RangeEntry>,
    pub verdict: Verdict,
}

impl RangeReport {
    pub fn failures(&self) -> impl Iterator<Item = &RangeEntry> {
        self.entries.iter().filter(|e| e.verdict() == Verdict::Fail)
    }
}

pub fn verify_range(
    r_from: u64,
    r_to: u64,
    policy: &DeltaPolicy,
    filters: &FilterSet,
    opts: &VerifyOptions,
) -> Result<RangeReport> {
    if r_from < 2 || r_from > r_to {
        return Err(Error::OutOfRange(format!("need 2 <= r_from <= r_to, got {r_from}..{r_to}")));
    }
    let entries = with_threads(opts.threads, || {
        (r_from..=r_to)
            .into_par_iter()
            .map(|r| -> Result<RangeEntry> {
                let outcome = match policy.delta_for(r) {
                    None => {
                        let s = floor_sqrt(r as u128) as u64;
                        RangeOutcome::Square {
                            s,
                            value: rat(1, s as i64),
                        }
                    }
                    Some(delta) => RangeOutcome::Verified(Box::new(verify_delta_inner(r, &delta, filters, opts)?)),
                };
                Ok(RangeEntry { r, outcome })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let verdict = entries.iter().fold(Verdict::Pass, |acc, e| acc.and(e.verdict()));
    Ok(RangeReport {
        r_from,
        r_to,
        entries,
        verdict,
    })
}
