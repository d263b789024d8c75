//! Reference implementations that share no code with the engine: decimal
//! interval evaluation of `a + b√n` and a naive enumeration of surviving
//! multiplicity patterns. Slow and simple on purpose.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{pow, One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn qi(n: impl Into<BigInt>) -> Q {
    BigRational::from_integer(n.into())
}

/// `[lo, hi]` containing `√n`, of width `10^-digits`.
pub fn sqrt_interval(n: u64, digits: u32) -> (Q, Q) {
    let scale = pow(BigInt::from(10), digits as usize);
    let s = (BigInt::from(n) * &scale * &scale).sqrt();
    (
        BigRational::new(s.clone(), scale.clone()),
        BigRational::new(s + 1, scale),
    )
}

/// Interval enclosure of `a + b√n`.
pub fn enclose(a: &Q, b: &Q, n: u64, digits: u32) -> (Q, Q) {
    let (lo, hi) = sqrt_interval(n, digits);
    let (x, y) = (a + b * &lo, a + b * &hi);
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Sign of `a + b√n` at the given precision; `None` when the enclosure
/// straddles zero. Exact zeros are recognised only as `b = 0, a = 0` or a
/// perfect-square `n` handled by the caller.
pub fn interval_sign(a: &Q, b: &Q, n: u64, digits: u32) -> Option<i8> {
    if b.is_zero() {
        return Some(sign_of(a));
    }
    let (lo, hi) = enclose(a, b, n, digits);
    if lo.is_positive() {
        Some(1)
    } else if hi.is_negative() {
        Some(-1)
    } else {
        None
    }
}

fn sign_of(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Smallest `s` with `s² >= n`, by counting.
pub fn ceil_sqrt_naive(n: u64) -> u64 {
    let mut s = 0u64;
    while s * s < n {
        s += 1;
    }
    s
}

/// `k/Σ < 1/(√r + δ)`, i.e. `Σ - kδ > k√r`, decided by squaring.
pub fn ratio_below(r: u64, k: u64, sum: u64, delta: &Q) -> bool {
    let lhs = qi(sum) - qi(k) * delta;
    lhs.is_positive() && &lhs * &lhs > qi(k * k * r)
}

/// The Xu-type polynomial for `(m, M)`, `None` for the all-ones pattern.
pub fn xu_f(k: i128, r: i128, m: i128, big_m: i128) -> Option<i128> {
    let base = (r - 1) * m * m + 2 - k * k;
    match (m, big_m) {
        (1, 1) => None,
        _ if m == big_m => Some(r * m * m - m + 2 - k * k),
        (_, 1) => Some(base + 1 - m),
        (1, _) => Some((r - 1) + big_m * big_m - big_m + 2 - k * k),
        _ if big_m < m => Some(base + big_m * big_m - big_m),
        _ => Some(base + big_m * big_m - m),
    }
}

/// Roth d) with e) or f), written out from the statements.
pub fn roth_ok(r: u64, k: u64, m: u64, big_m: u64) -> bool {
    let sum = (r - 1) * m + big_m;
    if sum != ceil_sqrt_naive(r * k * k) {
        return false;
    }
    if m == big_m {
        (r * m * m) as i128 - (k * k) as i128 <= m as i128
    } else {
        // Σ - 1/r < k√r with Σ - 1/r > 0
        let lhs = qi(sum) - q(1, r as i64);
        &lhs * &lhs < qi(k * k * r)
    }
}

/// Every `(k, m, M)` with `k <= k_max`, `1 <= m, M <= bound`, not all ones,
/// that passes the threshold, Roth d/e/f and `f <= 0`.
pub fn brute_force_survivors(r: u64, k_max: u64, delta: &Q, bound: u64) -> BTreeSet<(u64, u64, u64)> {
    let mut out = BTreeSet::new();
    for k in 1..=k_max {
        for m in 1..=bound {
            for big_m in 1..=bound {
                if m == 1 && big_m == 1 {
                    continue;
                }
                let sum = (r - 1) * m + big_m;
                if !ratio_below(r, k, sum, delta) || !roth_ok(r, k, m, big_m) {
                    continue;
                }
                let f = xu_f(k as i128, r as i128, m as i128, big_m as i128).expect("not all ones");
                if f <= 0 {
                    out.insert((k, m, big_m));
                }
            }
        }
    }
    out
}

/// Sign of `1/(√r + δ) - √(49r+8)/(7r+1)` from two independent enclosures.
pub fn interval_thm_minus_szsz(r: u64, delta: &Q, digits: u32) -> Option<i8> {
    let (lo, hi) = sqrt_interval(r, digits);
    let thm = (Q::one() / (&hi + delta), Q::one() / (&lo + delta));
    let (slo, shi) = sqrt_interval(49 * r + 8, digits);
    let d = qi(7 * r + 1);
    let szsz = (slo / &d, shi / &d);
    if thm.0 > szsz.1 {
        Some(1)
    } else if thm.1 < szsz.0 {
        Some(-1)
    } else {
        None
    }
}

/// Parses a plain decimal such as `"0.3149"` into an exact rational.
pub fn decimal_to_q(s: &str) -> Option<Q> {
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = format!("{whole}{frac}");
    let n: BigInt = digits.parse().ok()?;
    Some(BigRational::new(n, pow(BigInt::from(10), frac.len())))
}
