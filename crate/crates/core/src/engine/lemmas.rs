//! The finite side lemmas that make the exhaustive check complete: the degree
//! cutoff, the all-multiplicities-one exclusion, Roth c) on a fake projective
//! plane, and the large-`r` tail.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::engine::candidate::CaseId;
use crate::error::{Error, Result};
use crate::quad::{ceil_sqrt, int, rat, sign_with_root, QuadReal, Rational};
use crate::surface::{check_delta, CurveClass};

/// Worst-case degree bound used uniformly for every `r` in the original
/// argument (`δ = 0.01`).
pub const UNIFORM_K_MAX: u64 = 49;

/// Whether `k/(k√r + slack) >= 1/(√r + δ)`.
///
/// Both denominators are positive, so this is `k(√r + δ) >= k√r + slack`,
/// compared in ℚ(√r).
pub fn cutoff_holds(k: u64, r: u64, delta: &Rational, slack: &Rational) -> bool {
    let k_rat = int(k);
    match QuadReal::sqrt_of(r) {
        Ok(root) => {
            let lhs = root.scale(&k_rat).add_rational(&(&k_rat * delta));
            let rhs = root.scale(&k_rat).add_rational(slack);
            lhs.compare(&rhs).expect("same field") != Ordering::Less
        }
        // square r: √r is rational and cancels outright
        Err(_) => &k_rat * delta >= *slack,
    }
}

/// Smallest `k` with `k/(k√r + 1/2) >= 1/(√r + δ)`.
///
/// Found by searching the inequality itself, then checked against the closed
/// form `⌈1/(2δ)⌉`.
pub fn k_cutoff(delta: &Rational) -> Result<u64> {
    check_delta(delta, true)?;
    let half = rat(1, 2);
    let holds = |k: u64| cutoff_holds(k, 2, delta, &half);
    let mut hi = 1u64;
    while !holds(hi) {
        hi = hi
            .checked_mul(2)
            .ok_or_else(|| Error::OutOfRange("delta too small for a u64 cutoff".into()))?;
    }
    let mut lo = hi / 2;
    // invariant: holds(hi), and lo == 0 or !holds(lo)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let closed = (Rational::one() / (int(2) * delta)).ceil().to_integer();
    assert_eq!(
        BigInt::from(hi),
        closed,
        "cutoff search disagrees with ceil(1/(2 delta))"
    );
    Ok(hi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutoffRecord {
    pub k_cutoff: u64,
    pub k_max: u64,
    pub k_max_overridden: bool,
    /// The cutoff with slack `1/2` (equal multiplicities) holds for this `r`.
    pub equal_case_holds: bool,
    /// The cutoff also holds with slack `1/r` (one distinct multiplicity).
    pub distinct_case_holds: bool,
    pub uniform_k_max: u64,
}

pub fn cutoff_record(r: u64, delta: &Rational, k_max_override: Option<u64>) -> Result<CutoffRecord> {
    let k_cutoff = k_cutoff(delta)?;
    let slack_r = Rational::new(BigInt::one(), BigInt::from(r));
    Ok(CutoffRecord {
        k_cutoff,
        k_max: k_max_override.unwrap_or(k_cutoff - 1),
        k_max_overridden: k_max_override.is_some(),
        equal_case_holds: cutoff_holds(k_cutoff, r, delta, &rat(1, 2)),
        distinct_case_holds: cutoff_holds(k_cutoff, r, delta, &slack_r),
        uniform_k_max: UNIFORM_K_MAX,
    })
}

/// Two incompatible conditions on a submaximal curve whose multiplicities are
/// all one: submaximality forces `k < √r`, while `r` independent conditions on
/// `|kL₁|` force `k >= (3 + √(1+8r))/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllOnesRecord {
    pub r: u64,
    /// Largest `k` with `k < √r`.
    pub submaximal_k_max: u64,
    /// Smallest `k` with `k >= (3 + √(1+8r))/2`.
    pub dimension_k_min: u64,
    /// `submaximal_k_max < √r <= submaximal_k_max + 1`, checked in ℚ(√r).
    pub submaximal_bound_checked: bool,
    /// `(3 + √(1+8r))/2 > submaximal_k_max`, checked in ℚ(√(1+8r)).
    pub dimension_bound_checked: bool,
    pub excluded: bool,
}

pub fn all_ones_excluded(r: u64) -> Result<AllOnesRecord> {
    if r < 2 {
        return Err(Error::PointCount { min: 2, got: r });
    }
    let k_sub = (ceil_sqrt(r as u128) - 1) as u64;
    let below = sign_with_root(&int(k_sub), &int(-1), r) < 0;
    let next_not_below = sign_with_root(&int(k_sub + 1), &int(-1), r) >= 0;
    let submaximal_bound_checked = below && next_not_below;

    let disc = 1 + 8 * r;
    let dimension_k_min = (3 + ceil_sqrt(disc as u128)).div_ceil(2) as u64;
    // (3 + √disc)/2 - k_sub > 0
    let gap = sign_with_root(&(rat(3, 2) - int(k_sub)), &rat(1, 2), disc) > 0;
    // dimension_k_min really is the least integer above (3 + √disc)/2.
    let at_min = sign_with_root(&(int(dimension_k_min) - rat(3, 2)), &rat(-1, 2), disc) >= 0;
    let before_min = sign_with_root(&(int(dimension_k_min - 1) - rat(3, 2)), &rat(-1, 2), disc) < 0;
    let dimension_bound_checked = gap && at_min && before_min;

    let record = AllOnesRecord {
        r,
        submaximal_k_max: k_sub,
        dimension_k_min,
        submaximal_bound_checked,
        dimension_bound_checked,
        excluded: submaximal_bound_checked && dimension_bound_checked && k_sub < dimension_k_min,
    };
    assert!(record.excluded, "all-ones exclusion failed for r = {r}");
    Ok(record)
}

/// Roth c): a submaximal curve with a zero multiplicity has `C² = -1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RothCRecord {
    pub k_from: u64,
    pub k_to: u64,
    pub min_self_intersection: u128,
    pub required_self_intersection: i64,
    pub impossible: bool,
}

pub fn roth_c_check(curve: CurveClass) -> RothCRecord {
    let c2 = curve.self_intersection();
    RothCRecord {
        k_from: curve.k(),
        k_to: curve.k(),
        min_self_intersection: c2,
        required_self_intersection: -1,
        impossible: (c2 as i128) != -1,
    }
}

/// The zero-multiplicity case over every degree `1..=k_max`.
pub fn roth_c_summary(k_max: u64) -> RothCRecord {
    let mut summary = RothCRecord {
        k_from: 1,
        k_to: k_max,
        min_self_intersection: 1,
        required_self_intersection: -1,
        impossible: true,
    };
    for k in 1..=k_max {
        let rec = roth_c_check(CurveClass::new(k).expect("k >= 1"));
        summary.impossible &= rec.impossible;
        summary.min_self_intersection = summary.min_self_intersection.min(rec.min_self_intersection);
    }
    summary
}

/// Above `r = k_max² - 3` no pattern with a multiplicity `>= 2` satisfies any
/// `fᵢ <= 0` for `k <= k_max`; the weakest family is `f₅` at `M = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailRecord {
    pub k_max: u64,
    pub r_threshold: u64,
    pub statement: String,
    pub beyond_baseline: bool,
}

pub fn tail_threshold(k_max: u64) -> Result<TailRecord> {
    if k_max < 2 {
        return Err(Error::OutOfRange(format!("tail lemma needs k_max >= 2, got {k_max}")));
    }
    let r_threshold = k_max
        .checked_mul(k_max)
        .map(|v| v - 3)
        .ok_or_else(|| Error::OutOfRange("k_max too large".into()))?;
    Ok(TailRecord {
        k_max,
        r_threshold,
        statement: format!(
            "for r > {r_threshold} and k <= {k_max} every pattern with a multiplicity >= 2 has f > 0; \
             with the all-ones exclusion, 1/(sqrt(r)+delta) holds for every delta whose cutoff is <= {}",
            k_max + 1
        ),
        beyond_baseline: true,
    })
}

/// Patterns in the enumeration domain (any `k <= k_max`) with a multiplicity
/// `>= 2` and `fᵢ <= 0`, ignoring every other filter.
pub fn xu_survivor_count(r: u64, k_max: u64) -> u64 {
    let mut count = 0;
    for k in 1..=k_max {
        let lim = ceil_sqrt(r as u128 * k as u128 * k as u128) + 1;
        let step = r as u128 - 1;
        let mut m = 1u128;
        while step * m < lim {
            let max_big = lim - step * m;
            for big_m in 1..=max_big {
                if let Some(case) = CaseId::classify(m as u64, big_m as u64) {
                    if case.polynomial(k, r, m as u64, big_m as u64) <= 0 {
                        count += 1;
                    }
                }
            }
            m += 1;
        }
    }
    count
}
