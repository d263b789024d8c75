//! Exclusion filters derived from Roth's structure theorem for submaximal
//! curves and from the Xu-type self-intersection bound.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::engine::candidate::Candidate;
use crate::error::{Error, Result};
use crate::quad::{ceil_sqrt, int, sign_with_root, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    /// Ratio below `1/(√r + δ)`.
    Threshold,
    /// Roth d), e), f).
    RothDef,
    /// Roth b); not used by the original argument.
    RothB,
    /// `fᵢ <= 0`.
    Xu,
}

impl Filter {
    pub fn name(self) -> &'static str {
        match self {
            Filter::Threshold => "threshold",
            Filter::RothDef => "roth_def",
            Filter::RothB => "roth_b",
            Filter::Xu => "xu",
        }
    }

    pub fn is_beyond_baseline(self) -> bool {
        self == Filter::RothB
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Filter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "threshold" => Ok(Filter::Threshold),
            "roth_def" => Ok(Filter::RothDef),
            "roth_b" => Ok(Filter::RothB),
            "xu" => Ok(Filter::Xu),
            other => Err(Error::UnknownFilter(other.to_string())),
        }
    }
}

/// Ordered set of enabled filters. Order decides which reason an excluded
/// candidate is tagged with; it never changes the survivor set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FilterSet(Vec<Filter>);

impl Default for FilterSet {
    fn default() -> Self {
        Self::standard()
    }
}

impl FilterSet {
    /// threshold + Roth d/e/f + Xu.
    pub fn standard() -> Self {
        Self(vec![Filter::Threshold, Filter::RothDef, Filter::Xu])
    }

    pub fn standard_with_roth_b() -> Self {
        Self(vec![Filter::Threshold, Filter::RothDef, Filter::RothB, Filter::Xu])
    }

    pub fn ordered(filters: impl IntoIterator<Item = Filter>) -> Self {
        let mut out = Vec::new();
        for f in filters {
            if !out.contains(&f) {
                out.push(f);
            }
        }
        Self(out)
    }

    /// Same filters in the fixed order threshold, roth_def, roth_b, xu.
    pub fn canonical(filters: impl IntoIterator<Item = Filter>) -> Self {
        let mut out: Vec<Filter> = filters.into_iter().collect();
        out.sort();
        out.dedup();
        Self(out)
    }

    pub fn contains(&self, f: Filter) -> bool {
        self.0.contains(&f)
    }

    pub fn iter(&self) -> impl Iterator<Item = Filter> + '_ {
        self.0.iter().copied()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.0.iter().map(|f| f.name()).collect()
    }

    pub fn beyond_baseline(&self) -> Vec<Filter> {
        self.iter().filter(|f| f.is_beyond_baseline()).collect()
    }
}

impl FromStr for FilterSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let filters = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Filter>>>()?;
        Ok(Self::canonical(filters))
    }
}

/// Roth d) together with e) (equal multiplicities) or f) (one distinct).
pub fn roth_sum_filter(c: &Candidate) -> bool {
    let (r, k, m, big_m) = (c.r() as u128, c.k() as u128, c.m() as u128, c.big_m() as u128);
    let sum = c.pattern().total();
    // d) Σ = ⌈√(rC²)⌉ with C² = k².
    if sum != ceil_sqrt(r * k * k) {
        return false;
    }
    if m == big_m {
        // e) rm² - C² <= m
        r * m * m <= k * k + m
    } else {
        // f) Σ - k√r < 1/r  <=>  (Σ - 1/r) - k√r < 0
        let a = int(BigInt::from(sum)) - Rational::new(1.into(), BigInt::from(r));
        let b = -int(BigInt::from(k));
        sign_with_root(&a, &b, c.r()) < 0
    }
}

/// Roth b): `-D² <= (m - M)² < -r/(r-1)·D²` with `D² = k² - (r-1)m² - M²`.
pub fn roth_b_filter(c: &Candidate) -> Result<bool> {
    if c.m() == c.big_m() {
        return Err(Error::EqualMultiplicities);
    }
    let (r, k, m, big_m) = (c.r() as i128, c.k() as i128, c.m() as i128, c.big_m() as i128);
    let d_sq = k * k - (r - 1) * m * m - big_m * big_m;
    let gap = (m - big_m) * (m - big_m);
    // r - 1 >= 1, so the strict bound cross-multiplies without flipping.
    Ok(-d_sq <= gap && (r - 1) * gap < -r * d_sq)
}
