//! Reference bounds for multipoint Seshadri constants and their comparison.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::engine::theorem_delta;
use crate::error::{Error, Result};
use crate::quad::{decimal_string, floor_sqrt, int, is_perfect_square, rat, sign_with_root, Rational, RoundMode};

/// An exact positive real used as a bound.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoundValue {
    Exact(Rational),
    /// `1/(√r + δ)`
    ReciprocalSqrtShift { r: u64, delta: Rational },
    /// `√radicand / denominator`
    SqrtRatio { radicand: u64, denominator: u64 },
}

impl BoundValue {
    pub fn kind(&self) -> &'static str {
        match self {
            BoundValue::Exact(_) => "exact_rational",
            BoundValue::ReciprocalSqrtShift { .. } => "reciprocal_sqrt_shift",
            BoundValue::SqrtRatio { .. } => "sqrt_ratio",
        }
    }

    /// `(a, b, n)` with value `a + b√n`; `n` may be a perfect square.
    pub fn parts(&self) -> (Rational, Rational, u64) {
        match self {
            BoundValue::Exact(q) => (q.clone(), Rational::zero(), 0),
            BoundValue::ReciprocalSqrtShift { r, delta } => {
                let root = floor_sqrt(*r as u128);
                if root * root == *r as u128 {
                    let v = Rational::one() / (int(BigInt::from(root)) + delta);
                    return (v, Rational::zero(), 0);
                }
                // 1/(√r + δ) = (√r - δ)/(r - δ²); r - δ² != 0 as √r is irrational.
                let norm = int(*r) - delta * delta;
                (-delta / &norm, Rational::one() / norm, *r)
            }
            BoundValue::SqrtRatio {
                radicand,
                denominator,
            } => (Rational::zero(), rat(1, *denominator as i64), *radicand),
        }
    }

    pub fn decimal(&self, places: u32, mode: RoundMode) -> String {
        let (a, b, n) = self.parts();
        decimal_string(&a, &b, n, places, mode)
    }

    /// Lower-bound rendering: never exceeds the value.
    pub fn floor_decimal(&self, places: u32) -> String {
        self.decimal(places, RoundMode::Floor)
    }

    /// Exact comparison of the value against a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        let (a, b, n) = self.parts();
        sign_with_root(&(a - q), &b, n).cmp(&0)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        let (a, b, n) = self.parts();
        if b.is_zero() {
            return Some(a);
        }
        let root = floor_sqrt(n as u128);
        (root * root == n as u128).then(|| a + b * int(BigInt::from(root)))
    }

    /// Lossy, for logs only.
    pub fn to_f64(&self) -> f64 {
        let (a, b, n) = self.parts();
        a.to_f64().unwrap_or(f64::NAN) + b.to_f64().unwrap_or(f64::NAN) * (n as f64).sqrt()
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(q) => write!(f, "{q}"),
            BoundValue::ReciprocalSqrtShift { r, delta } => write!(f, "1/(sqrt({r}) + {delta})"),
            BoundValue::SqrtRatio {
                radicand,
                denominator,
            } => write!(f, "sqrt({radicand})/{denominator}"),
        }
    }
}

/// Szemberg's bound `⌊√(L²/r)⌋` for the ample generator of a Picard-number-one
/// surface.
pub fn szemberg_floor(l_sq: u64, r: u64) -> Result<u64> {
    if l_sq == 0 || r == 0 {
        return Err(Error::OutOfRange("L² and r must be positive".into()));
    }
    // s² <= L²/r  <=>  s² <= ⌊L²/r⌋
    Ok(floor_sqrt((l_sq / r) as u128) as u64)
}

/// `ε(X, L; s²) = √(L²)/s` on a Picard-number-one surface.
pub fn square_case(r: u64, l_sq: u64) -> Result<BoundValue> {
    if r == 0 || !is_perfect_square(r) {
        return Err(Error::NotPerfectSquare(r));
    }
    if l_sq == 0 {
        return Err(Error::OutOfRange("L² must be positive".into()));
    }
    let s = floor_sqrt(r as u128) as u64;
    Ok(if is_perfect_square(l_sq) {
        BoundValue::Exact(rat(floor_sqrt(l_sq as u128) as i64, s as i64))
    } else {
        BoundValue::SqrtRatio {
            radicand: l_sq,
            denominator: s,
        }
    })
}

/// Known values of `ε(ℙ², O(1); r)`.
pub fn p2_reference(r: u64) -> Option<Rational> {
    let (num, den) = match r {
        2..=4 => (1, 2),
        5 | 6 => (2, 5),
        7 => (3, 8),
        8 => (6, 17),
        9 => (1, 3),
        16 => (1, 4),
        _ => return None,
    };
    Some(rat(num, den))
}

/// `ε(ℙ², O(1); r) >= √(49r+8)/(7r+1)` for `r >= 10`.
pub fn szsz_p2_bound(r: u64) -> Result<BoundValue> {
    if r < 10 {
        return Err(Error::PointCount { min: 10, got: r });
    }
    Ok(BoundValue::SqrtRatio {
        radicand: 49 * r + 8,
        denominator: 7 * r + 1,
    })
}

/// A bound obtained through `ε(X, L₁; r) >= ε(X, L₁; p)·ε(ℙ², O(1); r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductBound {
    pub value: BoundValue,
    pub single_point_constant: Rational,
    pub provenance: [&'static str; 2],
}

/// Transfers a ℙ² bound to the fake projective plane. The single-point
/// constant of `L₁` is exactly one, so the value is unchanged.
pub fn roe_product_bound(p2_value: BoundValue) -> ProductBound {
    let single_point_constant = Rational::one();
    let value = match p2_value {
        BoundValue::Exact(q) => BoundValue::Exact(q * &single_point_constant),
        other => other,
    };
    ProductBound {
        value,
        single_point_constant,
        provenance: [
            "product inequality eps(X,L1;r) >= eps(X,L1;p) * eps(P2,O(1);r)",
            "single-point constant eps(X,L1;p) = 1",
        ],
    }
}

/// Ordering of `1/(√r + δ)` against `√(49r+8)/(7r+1)`.
///
/// With `s = √(49r+8)` and `t = (7r+1)/s - δ`, the theorem bound is larger iff
/// `t > √r`. When `t > 0` squaring and multiplying by `s²` turn this into the
/// sign of `A - B·s` with `A = (7r+1)² - 49r² - 8r + δ²(49r+8)` and
/// `B = 2δ(7r+1)`: one radical.
pub fn compare_thm_vs_szsz(r: u64, delta: &Rational) -> Result<Ordering> {
    if r < 10 {
        return Err(Error::PointCount { min: 10, got: r });
    }
    if is_perfect_square(r) {
        return Err(Error::PerfectSquare(r));
    }
    if delta.is_negative() {
        return Err(Error::InvalidDelta("non-negative"));
    }
    let n = 49 * r + 8;
    let lead = int(7 * r + 1);
    let n_rat = int(n);
    // t > 0  <=>  (7r+1)² > δ²(49r+8)
    if &lead * &lead <= delta * delta * &n_rat {
        return Ok(Ordering::Less);
    }
    let r_rat = int(r);
    let a = &lead * &lead - int(49) * &r_rat * &r_rat - int(8) * &r_rat + delta * delta * &n_rat;
    let b = -(int(2) * delta * &lead);
    Ok(sign_with_root(&a, &b, n).cmp(&0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DigitMode {
    /// Four decimals everywhere.
    #[default]
    Four,
    /// Each row at the precision of the reference table.
    #[value(name = "paper", alias = "printed")]
    #[serde(rename = "paper")]
    Printed,
}

/// How a row appears in the reference comparison table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrintedRow {
    pub r: u64,
    pub p2: &'static str,
    pub fpp: &'static str,
    /// Digits after the point in the FPP column (0 for exact values).
    pub fpp_places: u32,
    pub fpp_strict: bool,
}

pub const PRINTED_TABLE: [PrintedRow; 15] = [
    PrintedRow { r: 2, p2: "1/2", fpp: "0.69", fpp_places: 2, fpp_strict: true },
    PrintedRow { r: 3, p2: "1/2", fpp: "0.5701", fpp_places: 4, fpp_strict: false },
    PrintedRow { r: 4, p2: "1/2", fpp: "1/2", fpp_places: 0, fpp_strict: false },
    PrintedRow { r: 5, p2: "2/5", fpp: "0.44", fpp_places: 2, fpp_strict: false },
    PrintedRow { r: 6, p2: "2/5", fpp: "0.4046", fpp_places: 4, fpp_strict: false },
    PrintedRow { r: 7, p2: "3/8", fpp: "0.3763", fpp_places: 4, fpp_strict: false },
    PrintedRow { r: 8, p2: "6/17", fpp: "0.3391", fpp_places: 4, fpp_strict: false },
    PrintedRow { r: 9, p2: "1/3", fpp: "1/3", fpp_places: 0, fpp_strict: false },
    PrintedRow { r: 10, p2: "0.3143", fpp: "0.3149", fpp_places: 4, fpp_strict: false },
    PrintedRow { r: 11, p2: "0.2998", fpp: "0.3003", fpp_places: 4, fpp_strict: false },
    PrintedRow { r: 12, p2: "0.2872", fpp: "0.2876", fpp_places: 4, fpp_strict: false },
    PrintedRow { r: 13, p2: "0.2760", fpp: "0.2763", fpp_places: 4, fpp_strict: false },
    PrintedRow { r: 14, p2: "0.2661", fpp: "0.2663", fpp_places: 4, fpp_strict: false },
    PrintedRow { r: 15, p2: "0.2571", fpp: "0.2573", fpp_places: 4, fpp_strict: false },
    PrintedRow { r: 16, p2: "1/4", fpp: "1/4", fpp_places: 0, fpp_strict: false },
];

pub fn printed_row(r: u64) -> Option<&'static PrintedRow> {
    PRINTED_TABLE.iter().find(|row| row.r == r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub value: BoundValue,
    /// Exact value rather than a lower bound.
    pub exact: bool,
}

impl TableCell {
    /// `"1/2"` for exact cells, otherwise the floor-rendered decimal.
    pub fn plain(&self, places: u32) -> String {
        match (&self.value, self.exact) {
            (BoundValue::Exact(q), true) => q.to_string(),
            _ => self.value.floor_decimal(places),
        }
    }

    pub fn render(&self, places: u32, strict: bool) -> String {
        if self.exact {
            self.plain(places)
        } else {
            format!("{} {}", if strict { ">" } else { "≥" }, self.plain(places))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub r: u64,
    pub p2: TableCell,
    pub fpp: TableCell,
    pub flags: Vec<String>,
}

impl TableRow {
    /// `(places, strict)` used for the FPP cell in `mode`.
    pub fn fpp_format(&self, mode: DigitMode) -> (u32, bool) {
        match (mode, printed_row(self.r)) {
            (DigitMode::Printed, Some(p)) if !self.fpp.exact => (p.fpp_places, p.fpp_strict),
            _ => (4, false),
        }
    }

    pub fn p2_text(&self, _mode: DigitMode) -> String {
        self.p2.render(4, false)
    }

    pub fn fpp_text(&self, mode: DigitMode) -> String {
        let (places, strict) = self.fpp_format(mode);
        self.fpp.render(places, strict)
    }
}

fn printed_rational(s: &str) -> Option<Rational> {
    crate::report::parse_rational(s).ok()
}

/// Flags comparing a computed cell with its printed counterpart.
fn cell_flags(column: &str, cell: &TableCell, printed: &str, places: u32, flags: &mut Vec<String>) {
    let ours = if cell.exact { cell.plain(4) } else { cell.plain(places.max(1)) };
    if ours != printed {
        flags.push(format!("{column}_printed_differs:{printed}"));
    }
    if !cell.exact {
        if let Some(q) = printed_rational(printed) {
            if cell.value.cmp_rational(&q) == Ordering::Less {
                flags.push(format!("{column}_printed_exceeds_bound"));
            }
        }
    }
}

/// One row per `r` in `r_from..=r_to` (empty when `r_from > r_to`).
pub fn comparison_table(r_from: u64, r_to: u64) -> Result<Vec<TableRow>> {
    if r_from < 2 && r_from <= r_to {
        return Err(Error::PointCount { min: 2, got: r_from });
    }
    let mut rows = Vec::new();
    for r in r_from..=r_to {
        let p2 = match p2_reference(r) {
            Some(q) => TableCell {
                value: BoundValue::Exact(q),
                exact: true,
            },
            None => TableCell {
                value: roe_product_bound(szsz_p2_bound(r)?).value,
                exact: false,
            },
        };
        let fpp = match theorem_delta(r) {
            Some(delta) => TableCell {
                value: BoundValue::ReciprocalSqrtShift { r, delta },
                exact: false,
            },
            None => TableCell {
                value: square_case(r, 1)?,
                exact: true,
            },
        };
        let mut flags = Vec::new();
        if let Some(printed) = printed_row(r) {
            cell_flags("p2", &p2, printed.p2, 4, &mut flags);
            cell_flags("fpp", &fpp, printed.fpp, printed.fpp_places, &mut flags);
        }
        rows.push(TableRow { r, p2, fpp, flags });
    }
    Ok(rows)
}
