//! Ultimate-periodicity checks on complexity tables, and the numerical
//! scan of `b_{t_m,k}` for `k >= 3` against period `m^k`.

use serde::Serialize;

use crate::binomial::{check_bound, PsiLayout};
use crate::error::{Error, Result};
use crate::host::{HostStrategy, WordSource};
use crate::table::{complexity_profile, ComplexityTable};
use crate::tm::tm_source;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Violated { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicityReport {
    pub period_tested: usize,
    pub offset: usize,
    /// Inclusive range of `n` whose value was compared with `n + period`.
    pub window: (usize, usize),
    pub verdict: Verdict,
    pub values: Vec<(usize, u64)>,
}

impl PeriodicityReport {
    pub fn is_consistent(&self) -> bool {
        self.verdict == Verdict::Consistent
    }
}

/// Checks `value(n + period) = value(n)` for every covered `n >= offset`.
///
/// The table must cover `[offset, offset + 2·period)` without gaps.
pub fn periodicity_check(
    table: &ComplexityTable,
    period: usize,
    offset: usize,
) -> Result<PeriodicityReport> {
    if period == 0 {
        return Err(Error::Precondition("period must be positive".into()));
    }
    if let Some(missing) = (offset..offset + 2 * period).find(|&n| table.get(n).is_none()) {
        return Err(Error::Coverage(format!(
            "n = {missing} missing; need [{offset}, {}) at least",
            offset + 2 * period
        )));
    }
    let last = table.rows().map(|r| r.n).max().unwrap_or(offset);
    let mut verdict = Verdict::Consistent;
    let mut hi = offset;
    for n in offset..=last.saturating_sub(period) {
        let (Some(a), Some(b)) = (table.get(n), table.get(n + period)) else {
            continue;
        };
        hi = n;
        if a != b {
            verdict = Verdict::Violated { n };
            break;
        }
    }
    Ok(PeriodicityReport {
        period_tested: period,
        offset,
        window: (offset, hi),
        verdict,
        values: table.slice(offset..=last).rows().map(|r| (r.n, r.value)).collect(),
    })
}

/// 64 MB.
pub const DEFAULT_BUDGET_MB: u64 = 64;

/// Bytes of `Ψ_k` state needed to hold one vector per window of the host
/// words used for the largest `n`.
pub fn scan_state_estimate(source: &WordSource, m: usize, k: usize, n_max: usize) -> Result<u64> {
    let layout = PsiLayout::new(m, k)?;
    let windows: u64 = source
        .cover_lengths(n_max)?
        .into_iter()
        .map(|len| (len + 1).saturating_sub(n_max) as u64)
        .sum();
    Ok((layout.len() as u64)
        .saturating_mul(16)
        .saturating_mul(windows))
}

/// Default upper end of a scan: three periods.
pub fn default_scan_n_max(m: usize, k: usize) -> Option<usize> {
    m.checked_pow(k as u32)?.checked_mul(3)
}

/// Computes `b_{t_m,k}(n)` for `n ∈ [m^k, n_max]` and reports whether the
/// data is consistent with period `m^k` from offset `m^k`.
///
/// The offset is an assumption carried over from the `k = 1, 2` cases.
/// The verdict is evidence only.
pub fn conjecture_scan(m: usize, k: usize, n_max: usize, budget_mb: u64) -> Result<PeriodicityReport> {
    if k < 3 {
        return Err(Error::Precondition(format!("scan is for k >= 3, got {k}")));
    }
    let period = m
        .checked_pow(k as u32)
        .ok_or_else(|| Error::Overflow(format!("{m}^{k}")))?;
    let needed = period
        .checked_mul(3)
        .ok_or_else(|| Error::Overflow(format!("3·{m}^{k}")))?;
    if n_max < needed {
        return Err(Error::Precondition(format!(
            "n_max must be at least 3·m^k = {needed}, got {n_max}"
        )));
    }
    let source = tm_source(m)?;
    let bytes = scan_state_estimate(&source, m, k, n_max)?;
    let budget = budget_mb.saturating_mul(1 << 20);
    if bytes > budget {
        return Err(Error::Budget {
            needed_mb: bytes.div_ceil(1 << 20),
            budget_mb,
        });
    }
    check_bound(n_max, k)?;
    let table = complexity_profile(&source, k, m, period..=n_max, &HostStrategy::Cover)?;
    periodicity_check(&table, period, period)
}
