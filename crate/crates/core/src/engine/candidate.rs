use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::Rational;
use crate::surface::{self, CurveClass, MultiplicityPattern};

/// Which Xu-type inequality applies to a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseId {
    /// `M = m >= 2`
    F1,
    /// `1 < M < m`
    F2,
    /// `1 < m < M`
    F3,
    /// `M = 1 < m`
    F4,
    /// `m = 1 < M`
    F5,
}

impl CaseId {
    pub const ALL: [CaseId; 5] = [CaseId::F1, CaseId::F2, CaseId::F3, CaseId::F4, CaseId::F5];

    /// `None` for the all-ones pattern and for zero multiplicities, which are
    /// handled by dedicated lemmas instead.
    pub fn classify(m: u64, big_m: u64) -> Option<CaseId> {
        if m == 0 || big_m == 0 || (m == 1 && big_m == 1) {
            return None;
        }
        Some(if m == big_m {
            CaseId::F1
        } else if big_m == 1 {
            CaseId::F4
        } else if m == 1 {
            CaseId::F5
        } else if big_m < m {
            CaseId::F2
        } else {
            CaseId::F3
        })
    }

    /// The polynomial itself, evaluated without checking that the case fits
    /// the pattern. `m` is the multiplicity shared by `r - 1` points, `big_m`
    /// the remaining one.
    pub fn polynomial(self, k: u64, r: u64, m: u64, big_m: u64) -> i128 {
        let (k, r, m, big_m) = (k as i128, r as i128, m as i128, big_m as i128);
        let k2 = k * k;
        match self {
            CaseId::F1 => r * m * m - m + 2 - k2,
            CaseId::F2 => (r - 1) * m * m + big_m * big_m - big_m + 2 - k2,
            CaseId::F3 => (r - 1) * m * m + big_m * big_m - m + 2 - k2,
            CaseId::F4 => (r - 1) * m * m + 1 - m + 2 - k2,
            CaseId::F5 => (r - 1) + big_m * big_m - big_m + 2 - k2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::F1 => "F1",
            CaseId::F2 => "F2",
            CaseId::F3 => "F3",
            CaseId::F4 => "F4",
            CaseId::F5 => "F5",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown case '{s}'")))
    }
}

/// Xu-type value `fᵢ(k, r, m, M)`; a candidate is excluded when it is positive.
pub fn f_value(case: CaseId, k: u64, r: u64, m: u64, big_m: u64) -> Result<i128> {
    if CaseId::classify(m, big_m) != Some(case) {
        return Err(Error::CaseMismatch {
            case: case.to_string(),
            m,
            big_m,
        });
    }
    Ok(case.polynomial(k, r, m, big_m))
}

/// A possible submaximal curve `C ∈ |kL₁|` through `r` very general points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Candidate {
    curve: CurveClass,
    pattern: MultiplicityPattern,
    case_id: CaseId,
}

impl Candidate {
    pub fn new(k: u64, pattern: MultiplicityPattern) -> Result<Self> {
        let curve = CurveClass::new(k)?;
        if pattern.has_zero() {
            return Err(Error::ZeroMultiplicity);
        }
        let case_id = CaseId::classify(pattern.m(), pattern.big_m()).ok_or_else(|| {
            Error::OutOfRange("the all-ones pattern is not a candidate".to_string())
        })?;
        Ok(Self {
            curve,
            pattern,
            case_id,
        })
    }

    pub fn from_parts(r: u64, k: u64, m: u64, big_m: u64) -> Result<Self> {
        Self::new(k, MultiplicityPattern::new(r, m, big_m)?)
    }

    pub fn r(&self) -> u64 {
        self.pattern.r()
    }

    pub fn k(&self) -> u64 {
        self.curve.k()
    }

    pub fn m(&self) -> u64 {
        self.pattern.m()
    }

    pub fn big_m(&self) -> u64 {
        self.pattern.big_m()
    }

    pub fn curve(&self) -> CurveClass {
        self.curve
    }

    pub fn pattern(&self) -> MultiplicityPattern {
        self.pattern
    }

    pub fn case_id(&self) -> CaseId {
        self.case_id
    }

    pub fn f_value(&self) -> i128 {
        self.case_id.polynomial(self.k(), self.r(), self.m(), self.big_m())
    }

    pub fn ratio(&self) -> Rational {
        surface::ratio(self.curve, self.pattern).expect("candidates have positive multiplicities")
    }

    /// Sort key of certificate entries.
    pub fn key(&self) -> (u64, u64, u64) {
        (self.k(), self.m(), self.big_m())
    }
}
