use num_bigint::BigInt;
use num_traits::Signed;

use crate::engine::candidate::Candidate;
use crate::engine::certificate::{verify_delta_inner, with_threads, Verdict, VerifyOptions};
use crate::engine::enumerate::check_inputs;
use crate::engine::filters::FilterSet;
use crate::error::{Error, Result};
use crate::quad::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimizeResult {
    pub r: u64,
    pub grid_step: Rational,
    /// Smallest passing grid point.
    pub delta: Rational,
    /// Survivors one grid step below `delta`; empty when `delta` is the first
    /// grid point.
    pub binding: Vec<Candidate>,
    /// Every `(δ, verdict)` the search evaluated, in evaluation order.
    pub probes: Vec<(Rational, Verdict)>,
}

/// Smallest `δ ∈ {s, 2s, ...}` for which `verify_delta` passes.
///
/// Passing is monotone in `δ`: a larger `δ` shrinks both the set of ratios
/// below the threshold and the degree bound. That makes binary search on the
/// grid index exact.
pub fn optimize_delta(r: u64, grid_step: &Rational, filters: &FilterSet, opts: &VerifyOptions) -> Result<OptimizeResult> {
    if !grid_step.is_positive() {
        return Err(Error::InvalidDelta("a positive grid step"));
    }
    check_inputs(r, grid_step)?;
    with_threads(opts.threads, || {
        let point = |i: u64| grid_step * int(i);
        let mut probes = Vec::new();
        let mut run = |i: u64| -> Result<Verdict> {
            let verdict = verify_delta_inner(r, &point(i), filters, opts)?.verdict;
            probes.push((point(i), verdict));
            Ok(verdict)
        };
        // Σ - k√r <= 2 on the whole domain, so nothing is below the threshold
        // once δ >= 2, even with a forced k_max.
        let top: BigInt = (int(2) / grid_step).ceil().to_integer();
        let mut hi: u64 = top
            .try_into()
            .map_err(|_| Error::OutOfRange("grid step too small".into()))?;
        if run(hi)? == Verdict::Fail {
            return Err(Error::OutOfRange(format!("no passing delta up to {}", point(hi))));
        }
        let mut lo = 0u64;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if run(mid)? == Verdict::Pass {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let binding = if hi > 1 {
            verify_delta_inner(r, &point(hi - 1), filters, opts)?.survivors
        } else {
            Vec::new()
        };
        Ok(OptimizeResult {
            r,
            grid_step: grid_step.clone(),
            delta: point(hi),
            binding,
            probes,
        })
    })
}
