//! Numerical intersection theory on a fake projective plane and the shape of
//! candidate submaximal curves.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{int, is_perfect_square, QuadReal, Rational};

/// Numerical invariants of a fake projective plane polarized by the ample
/// generator `L₁` of Néron–Severi modulo torsion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FakeProjectivePlane {
    c1_sq: i64,
    c2: i64,
    l1_sq: i64,
    gonality_floor: u64,
}

impl Default for FakeProjectivePlane {
    fn default() -> Self {
        Self::new()
    }
}

impl FakeProjectivePlane {
    pub const fn new() -> Self {
        let plane = Self {
            c1_sq: 9,
            c2: 3,
            l1_sq: 1,
            gonality_floor: 2,
        };
        assert!(plane.c1_sq == 3 * plane.c2 && plane.c1_sq == 9 && plane.l1_sq == 1);
        plane
    }

    pub fn c1_sq(&self) -> i64 {
        self.c1_sq
    }

    pub fn c2(&self) -> i64 {
        self.c2
    }

    pub fn l1_sq(&self) -> i64 {
        self.l1_sq
    }

    /// No rational or elliptic curves live on a fake projective plane, so the
    /// normalization of any curve has gonality at least 2.
    pub fn gonality_floor(&self) -> u64 {
        self.gonality_floor
    }

    pub fn curve(&self, k: u64) -> Result<CurveClass> {
        CurveClass::new(k)
    }

    /// Minimum self-intersection of a general member of a nontrivial family of
    /// curves with a point of multiplicity `>= m` at a very general point.
    pub fn xu_floor(&self, m: u64) -> Result<u128> {
        if m < 2 {
            return Err(Error::XuMultiplicity(m));
        }
        let m = m as u128;
        Ok(m * (m - 1) + self.gonality_floor as u128)
    }
}

/// `xu_floor` on the fake projective plane.
pub fn xu_floor(m: u64) -> Result<u128> {
    FakeProjectivePlane::new().xu_floor(m)
}

/// A curve class `C ∈ |kL₁|`. Picard number one and `L₁² = 1` force
/// `C·L₁ = k` and `C² = k²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveClass {
    k: u64,
}

impl CurveClass {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Self { k })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn degree(&self) -> u64 {
        self.k
    }

    pub fn self_intersection(&self) -> u128 {
        (self.k as u128) * (self.k as u128)
    }
}

/// Multiplicity `m` at `r - 1` very general points and `M` at the last one.
///
/// At least `r - 1` multiplicities of a submaximal curve coincide, so this is
/// the only shape the engine represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiplicityPattern {
    r: u64,
    m: u64,
    #[serde(rename = "M")]
    big_m: u64,
}

impl MultiplicityPattern {
    pub fn new(r: u64, m: u64, big_m: u64) -> Result<Self> {
        if r < 2 {
            return Err(Error::PointCount { min: 2, got: r });
        }
        if m == 0 && big_m == 0 {
            return Err(Error::EmptyPattern);
        }
        Ok(Self { r, m, big_m })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// Multiplicity shared by `r - 1` points.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Multiplicity at the remaining point.
    pub fn big_m(&self) -> u64 {
        self.big_m
    }

    pub fn total(&self) -> u128 {
        (self.r as u128 - 1) * self.m as u128 + self.big_m as u128
    }

    pub fn has_zero(&self) -> bool {
        self.m == 0 || self.big_m == 0
    }

    pub fn is_all_ones(&self) -> bool {
        self.m == 1 && self.big_m == 1
    }
}

/// Seshadri ratio `k / ((r-1)m + M)` in lowest terms.
pub fn ratio(curve: CurveClass, pattern: MultiplicityPattern) -> Result<Rational> {
    let total = pattern.total();
    if total == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    Ok(Rational::new(BigInt::from(curve.k()), BigInt::from(total)))
}

/// Whether `k/Σ < 1/(√r + δ)` with `Σ = (r-1)m + M`.
///
/// Clearing the positive denominators gives `Σ - kδ - k√r > 0`, a single sign
/// query in ℚ(√r).
pub fn is_below_threshold(curve: CurveClass, pattern: MultiplicityPattern, delta: &Rational) -> Result<bool> {
    if delta.is_negative() {
        return Err(Error::InvalidDelta("non-negative"));
    }
    let r = pattern.r();
    if is_perfect_square(r) {
        return Err(Error::PerfectSquare(r));
    }
    if pattern.total() == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    sum_below_threshold(r, curve.k(), pattern.total(), delta)
}

/// The threshold test depends on the pattern only through `Σ`.
pub(crate) fn sum_below_threshold(r: u64, k: u64, total: u128, delta: &Rational) -> Result<bool> {
    let k_rat = int(k);
    let a = int(total) - &k_rat * delta;
    let x = QuadReal::new(a, -k_rat, r)?;
    Ok(x.sign() > 0)
}

/// `δ` values must be exact and non-negative.
pub fn check_delta(delta: &Rational, strict: bool) -> Result<()> {
    if strict && !delta.is_positive() {
        return Err(Error::InvalidDelta("positive"));
    }
    if delta.is_negative() {
        return Err(Error::InvalidDelta("non-negative"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::rat;

    fn pat(r: u64, m: u64, big_m: u64) -> MultiplicityPattern {
        MultiplicityPattern::new(r, m, big_m).unwrap()
    }

    fn curve(k: u64) -> CurveClass {
        CurveClass::new(k).unwrap()
    }

    #[test]
    fn plane_constants() {
        let x = FakeProjectivePlane::new();
        assert_eq!((x.c1_sq(), x.c2(), x.l1_sq(), x.gonality_floor()), (9, 3, 1, 2));
        let c = x.curve(7).unwrap();
        assert_eq!((c.degree(), c.self_intersection()), (7, 49));
        assert_eq!(CurveClass::new(0), Err(Error::ZeroDegree));
    }

    #[test]
    fn ratios() {
        assert_eq!(ratio(curve(7), pat(2, 5, 5)).unwrap(), rat(7, 10));
        assert_eq!(ratio(curve(1), pat(2, 1, 1)).unwrap(), rat(1, 2));
        assert_eq!(ratio(curve(3), pat(5, 1, 2)).unwrap(), rat(1, 2));
    }

    #[test]
    fn pattern_validation() {
        assert_eq!(MultiplicityPattern::new(2, 0, 0), Err(Error::EmptyPattern));
        assert_eq!(MultiplicityPattern::new(1, 1, 1), Err(Error::PointCount { min: 2, got: 1 }));
        assert!(pat(3, 0, 1).has_zero());
        assert_eq!(pat(5, 3, 2).total(), 14);
    }

    #[test]
    fn xu_values() {
        assert_eq!(xu_floor(2).unwrap(), 4);
        assert_eq!(xu_floor(3).unwrap(), 8);
        assert_eq!(xu_floor(5).unwrap(), 22);
        assert_eq!(xu_floor(1), Err(Error::XuMultiplicity(1)));
        assert_eq!(xu_floor(0), Err(Error::XuMultiplicity(0)));
    }

    #[test]
    fn thresholds() {
        assert!(!is_below_threshold(curve(7), pat(2, 5, 5), &rat(31, 1000)).unwrap());
        assert!(is_below_threshold(curve(7), pat(2, 5, 5), &rat(1, 100)).unwrap());
        assert!(is_below_threshold(curve(1), pat(2, 1, 1), &rat(0, 1)).unwrap());
        assert_eq!(
            is_below_threshold(curve(1), pat(4, 1, 1), &rat(0, 1)),
            Err(Error::PerfectSquare(4))
        );
        assert!(is_below_threshold(curve(1), pat(2, 1, 1), &rat(-1, 10)).is_err());
    }
}
