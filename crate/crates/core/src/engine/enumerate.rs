use rayon::prelude::*;

use crate::engine::candidate::Candidate;
use crate::engine::filters::{roth_b_filter, roth_sum_filter, Filter, FilterSet};
use crate::error::{Error, Result};
use crate::quad::{ceil_sqrt, is_perfect_square, Rational};
use crate::surface::{check_delta, sum_below_threshold, MultiplicityPattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExclusionReason {
    AboveThreshold,
    RothSumBound,
    RothB,
    /// Carries the positive `fᵢ` value.
    XuPositive(i128),
}

impl ExclusionReason {
    pub fn name(&self) -> &'static str {
        match self {
            ExclusionReason::AboveThreshold => "above_threshold",
            ExclusionReason::RothSumBound => "roth_sum_bound",
            ExclusionReason::RothB => "roth_b",
            ExclusionReason::XuPositive(_) => "xu_positive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CandidateStatus {
    Excluded(ExclusionReason),
    Survivor,
}

impl CandidateStatus {
    pub fn is_survivor(&self) -> bool {
        matches!(self, CandidateStatus::Survivor)
    }
}

pub(crate) fn check_inputs(r: u64, delta: &Rational) -> Result<()> {
    if r < 2 {
        return Err(Error::PointCount { min: 2, got: r });
    }
    if is_perfect_square(r) {
        return Err(Error::PerfectSquare(r));
    }
    check_delta(delta, true)
}

/// Upper bound on `Σ = (r-1)m + M` for degree `k`: `⌈k√r⌉ + 1`. Roth d), e)
/// and f) all keep `Σ` at or below it.
pub fn sum_limit(r: u64, k: u64) -> u128 {
    ceil_sqrt(r as u128 * k as u128 * k as u128) + 1
}

/// Every Roth-shaped `(m, M)` with positive entries, `Σ <= sum_limit`, and not
/// both equal to one, in `(m, M)` order.
pub fn domain(r: u64, k: u64) -> impl Iterator<Item = (u64, u64)> {
    let lim = sum_limit(r, k);
    let step = r as u128 - 1;
    (1u128..)
        .take_while(move |m| step * m < lim)
        .flat_map(move |m| (1..=lim - step * m).map(move |big_m| (m as u64, big_m as u64)))
        .filter(|&(m, big_m)| !(m == 1 && big_m == 1))
}

/// Status of one candidate under `filters`, applied in order.
pub fn classify(candidate: &Candidate, filters: &FilterSet, delta: &Rational) -> Result<CandidateStatus> {
    let below = if filters.contains(Filter::Threshold) {
        sum_below_threshold(candidate.r(), candidate.k(), candidate.pattern().total(), delta)?
    } else {
        true
    };
    Ok(classify_with(candidate, filters, below))
}

fn classify_with(candidate: &Candidate, filters: &FilterSet, below_threshold: bool) -> CandidateStatus {
    for filter in filters.iter() {
        let rejected = match filter {
            Filter::Threshold => (!below_threshold).then_some(ExclusionReason::AboveThreshold),
            Filter::RothDef => (!roth_sum_filter(candidate)).then_some(ExclusionReason::RothSumBound),
            // b) says nothing about equal multiplicities
            Filter::RothB => (candidate.m() != candidate.big_m()
                && !roth_b_filter(candidate).expect("distinct multiplicities"))
            .then_some(ExclusionReason::RothB),
            Filter::Xu => {
                let f = candidate.f_value();
                (f > 0).then_some(ExclusionReason::XuPositive(f))
            }
        };
        if let Some(reason) = rejected {
            return CandidateStatus::Excluded(reason);
        }
    }
    CandidateStatus::Survivor
}

/// One degree `k` of the enumeration.
#[derive(Clone, Debug, Default)]
pub(crate) struct CellScan {
    pub k: u64,
    pub domain_size: u64,
    pub threshold_rejections: u64,
    /// Everything except threshold rejections, unless those were requested.
    pub entries: Vec<(Candidate, CandidateStatus)>,
}

pub(crate) fn scan_cell(
    r: u64,
    k: u64,
    delta: &Rational,
    filters: &FilterSet,
    keep_threshold: bool,
) -> Result<CellScan> {
    let lim = sum_limit(r, k);
    // The threshold depends on the pattern only through Σ <= lim.
    let below: Vec<bool> = if filters.contains(Filter::Threshold) {
        (0..=lim)
            .map(|sum| if sum == 0 { Ok(false) } else { sum_below_threshold(r, k, sum, delta) })
            .collect::<Result<_>>()?
    } else {
        vec![true; lim as usize + 1]
    };
    let mut cell = CellScan {
        k,
        ..CellScan::default()
    };
    for (m, big_m) in domain(r, k) {
        let pattern = MultiplicityPattern::new(r, m, big_m)?;
        let candidate = Candidate::new(k, pattern)?;
        let status = classify_with(&candidate, filters, below[pattern.total() as usize]);
        cell.domain_size += 1;
        if status == CandidateStatus::Excluded(ExclusionReason::AboveThreshold) {
            cell.threshold_rejections += 1;
            if !keep_threshold {
                continue;
            }
        }
        cell.entries.push((candidate, status));
    }
    Ok(cell)
}

pub(crate) fn scan_cells(
    r: u64,
    delta: &Rational,
    k_max: u64,
    filters: &FilterSet,
    keep_threshold: bool,
) -> Result<Vec<CellScan>> {
    check_inputs(r, delta)?;
    // collect() keeps k order whatever the scheduling.
    (1..=k_max)
        .into_par_iter()
        .map(|k| scan_cell(r, k, delta, filters, keep_threshold))
        .collect()
}

/// Every candidate with `k <= k_max` and its status, ordered by `(k, m, M)`.
pub fn enumerate_candidates(
    r: u64,
    delta: &Rational,
    k_max: u64,
    filters: &FilterSet,
) -> Result<Vec<(Candidate, CandidateStatus)>> {
    if k_max == 0 {
        return Err(Error::OutOfRange("k_max must be >= 1".into()));
    }
    Ok(scan_cells(r, delta, k_max, filters, true)?
        .into_iter()
        .flat_map(|cell| cell.entries)
        .collect())
}
