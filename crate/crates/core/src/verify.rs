//! Finite-range machine checks of the parity, range and upper-bound
//! statements about dimension values, the largest-part lemma, the growth
//! scaffolding, and cross-checks between independent computations.
//!
//! Every suite returns a [`CheckReport`]. Pass/fail suites fail exactly when
//! they found a counterexample; report-only suites collect observations for
//! statements that are only claimed asymptotically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::dims::{
    chat_bruteforce, check_omega_scale, omega2_closed_form, omega_len_bruteforce,
    smooth_bounded_sets, DimTable, ORACLE_MAX_N,
};
use crate::error::{Error, Result};
use crate::partition::{
    distinct_arm_values, distinct_of, enumerate_partitions, enumerate_partitions_bounded,
    for_each_marking, sum_of_squares,
};
use crate::sequences::{fgk, h_over_nk};

/// Counterexamples kept per suite; the count beyond this is still reported.
const MAX_COUNTEREXAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    ReportOnly,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::ReportOnly => "report-only",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub n: u32,
    pub value: u64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: &'static str,
    pub n_lo: u32,
    pub n_hi: u32,
    pub status: CheckStatus,
    pub counterexamples: Vec<Finding>,
    /// Counterexamples found, including any beyond those stored.
    pub counterexample_total: usize,
    pub observations: Vec<Finding>,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

struct Collector {
    suite: &'static str,
    n_lo: u32,
    n_hi: u32,
    report_only: bool,
    counterexamples: Vec<Finding>,
    total: usize,
    observations: Vec<Finding>,
    start: Instant,
}

impl Collector {
    fn new(suite: &'static str, n_lo: u32, n_hi: u32, report_only: bool) -> Self {
        Self {
            suite,
            n_lo,
            n_hi,
            report_only,
            counterexamples: Vec::new(),
            total: 0,
            observations: Vec::new(),
            start: Instant::now(),
        }
    }

    fn fail(&mut self, n: u32, value: u64, detail: impl Into<String>) {
        self.total += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(Finding {
                n,
                value,
                detail: detail.into(),
            });
        }
    }

    fn observe(&mut self, n: u32, value: u64, detail: impl Into<String>) {
        self.observations.push(Finding {
            n,
            value,
            detail: detail.into(),
        });
    }

    fn finish(self) -> CheckReport {
        let status = if self.report_only {
            CheckStatus::ReportOnly
        } else if self.total > 0 {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        };
        CheckReport {
            suite: self.suite,
            n_lo: self.n_lo,
            n_hi: self.n_hi,
            status,
            counterexamples: self.counterexamples,
            counterexample_total: self.total,
            observations: self.observations,
            elapsed: self.start.elapsed(),
        }
    }
}

fn check_span(what: &'static str, lo: u32, hi: u32, min: u32, max: u32) -> Result<()> {
    if lo < min || lo > hi {
        return Err(Error::OutOfRange {
            what,
            got: lo.into(),
            lo: min.into(),
            hi: hi.into(),
        });
    }
    if hi > max {
        return Err(Error::OracleBound { n: hi, bound: max });
    }
    Ok(())
}

fn check_table(table: &DimTable, needed: u32) -> Result<()> {
    if table.n_max() < needed {
        return Err(Error::OutOfRange {
            what: "table n_max",
            got: table.n_max().into(),
            lo: needed.into(),
            hi: u64::from(u32::MAX),
        });
    }
    Ok(())
}

fn describe(parts: &[u32], marks: &[(u32, u32)]) -> String {
    let parts: Vec<String> = parts.iter().map(u32::to_string).collect();
    let marks: Vec<String> = marks
        .iter()
        .filter(|&&(_, c)| c > 0)
        .map(|&(v, c)| format!("{v}x{c}"))
        .collect();
    format!("({}) marks=[{}]", parts.join(","), marks.join(","))
}

/// Exhaustive check over every marked partition of each `n`:
/// parity, `N >= n`, `N <= n² + 2` for two or more parts,
/// `N <= (n - ℓ + 1)² + ℓ - 1` without marks, the same bound plus `2n` in
/// general, `N < n²` for `n >= 4` and three or more parts, and that the
/// realizable values above `n² - 2` are exactly `{n², n² + 2, n² + 2n}`.
pub fn verify_bounds(n_lo: u32, n_hi: u32) -> Result<CheckReport> {
    check_span("n_lo for bounds", n_lo, n_hi, 2, crate::dims::OMEGA_MAX_N)?;
    let mut out = Collector::new("bounds", n_lo, n_hi, false);
    for n in n_lo..=n_hi {
        let nn = u64::from(n);
        let n2 = nn * nn;
        let mut top: BTreeSet<u64> = BTreeSet::new();
        let mut it = enumerate_partitions(n);
        while let Some(parts) = it.next_parts() {
            let len = parts.len() as u64;
            let sq = sum_of_squares(parts);
            let unmarked_cap = (nn - len + 1).pow(2) + len - 1;
            for_each_marking(&distinct_of(parts), None, |marks| {
                let m: u32 = marks.iter().map(|&(_, c)| c).sum();
                let value = sq + 2 * marks.iter().map(|&(v, c)| u64::from(v * c)).sum::<u64>();
                let mut bad = |what: &str| {
                    out.fail(n, value, format!("{}: {what}", describe(parts, marks)));
                };
                if value % 2 != nn % 2 {
                    bad("parity differs from n");
                }
                if value < nn {
                    bad("below n");
                }
                if len >= 2 && value > n2 + 2 {
                    bad("exceeds n^2 + 2 with at least two parts");
                }
                if m == 0 && value > unmarked_cap {
                    bad("exceeds (n - l + 1)^2 + l - 1 without marks");
                }
                if value > unmarked_cap + 2 * nn {
                    bad("exceeds (n - l + 1)^2 + l - 1 + 2n");
                }
                if n >= 4 && len >= 3 && value >= n2 {
                    bad("reaches n^2 with three or more parts");
                }
                if value + 2 > n2 {
                    top.insert(value);
                }
            });
        }
        let expected: BTreeSet<u64> = [n2, n2 + 2, n2 + 2 * nn].into();
        if top != expected {
            for &v in top.symmetric_difference(&expected) {
                out.fail(
                    n,
                    v,
                    format!("values above n^2 - 2 are {top:?}, expected {expected:?}"),
                );
            }
        }
    }
    Ok(out.finish())
}

/// For `n >= 7`: (a) every `N ∈ Ĉ(n)` with `N > 3n²/4` has a realizing
/// partition whose largest part exceeds `n/2`; (b) partitions with all parts
/// at most `n/2` have sum of squares at most `3n²/4`.
pub fn verify_lemma_largest(n_lo: u32, n_hi: u32) -> Result<CheckReport> {
    if n_lo < 7 {
        return Err(Error::LemmaHypothesis(n_lo));
    }
    check_span("n_lo for lemma-largest", n_lo, n_hi, 7, ORACLE_MAX_N)?;
    let mut out = Collector::new("lemma-largest", n_lo, n_hi, false);
    for n in n_lo..=n_hi {
        let nn = u64::from(n);
        let three_quarters = 3 * nn * nn;
        // value -> (realized with a part > n/2, some partition realizing it)
        let mut big: BTreeMap<u64, (bool, Vec<u32>)> = BTreeMap::new();
        let mut it = enumerate_partitions(n);
        while let Some(parts) = it.next_parts() {
            let sq = sum_of_squares(parts);
            if 4 * sq > three_quarters {
                let has_big = 2 * u64::from(parts[0]) > nn;
                let entry = big.entry(sq).or_insert_with(|| (false, parts.to_vec()));
                entry.0 |= has_big;
            }
        }
        for (&value, (ok, witness)) in &big {
            if !ok {
                out.fail(
                    n,
                    value,
                    format!("only realized with parts <= n/2, e.g. {witness:?}"),
                );
            }
        }

        let mut it = enumerate_partitions_bounded(n, n / 2);
        let mut best: Option<(u64, Vec<u32>)> = None;
        while let Some(parts) = it.next_parts() {
            let sq = sum_of_squares(parts);
            if best.as_ref().map_or(true, |(b, _)| sq > *b) {
                best = Some((sq, parts.to_vec()));
            }
        }
        if let Some((x, parts)) = best {
            out.observe(n, x, format!("X(n) attained by {parts:?}"));
            if 4 * x > three_quarters {
                out.fail(n, x, format!("X(n) exceeds 3n^2/4 via {parts:?}"));
            }
        }
    }
    Ok(out.finish())
}

/// The `k` with `(k² + 3k + 1)/2 <= n < ((k+1)² + 3(k+1) + 1)/2`, if any.
pub fn numh_k(n: u32) -> Option<u32> {
    let two_n = 2 * u64::from(n);
    let q = |k: u64| k * k + 3 * k + 1;
    let mut k = 1u64;
    if q(k) > two_n {
        return None;
    }
    while q(k + 1) <= two_n {
        k += 1;
    }
    Some(k as u32)
}

/// Report-only: for each `n`, whether `ĥ(n) = ĉ(n+1) - ĉ(n) >= ĉ(k)` with
/// `k` chosen by [`numh_k`]. The inequality is only derived for large `n`.
pub fn verify_numh(n_lo: u32, n_hi: u32, table: &DimTable) -> Result<CheckReport> {
    check_span("n_lo for numh", n_lo, n_hi, 1, u32::MAX - 1)?;
    check_table(table, n_hi + 1)?;
    let rows = fgk(n_hi);
    let mut out = Collector::new("numh", n_lo, n_hi, true);
    for n in n_lo..=n_hi {
        let h_hat = table.c_hat(n + 1)? - table.c_hat(n)?;
        let Some(k) = numh_k(n) else {
            out.observe(n, h_hat, "skipped: no k >= 1 satisfies the bracket");
            continue;
        };
        let c_hat_k = table.c_hat(k)?;
        let verdict = if h_hat >= c_hat_k { "holds" } else { "fails" };
        let mut detail = format!("k={k} h_hat={h_hat} c_hat(k)={c_hat_k} {verdict}");
        if let Some(r) = h_over_nk(table, &rows, n) {
            detail.push_str(&format!(" h/(n*k(n))={r:.4}"));
        }
        out.observe(n, h_hat, detail);
    }
    Ok(out.finish())
}

/// The number of distinct Young-diagram arm totals over partitions of `n`
/// equals `ĉ(n)`, which is `c(n) + 1` for `n >= 2`.
pub fn verify_arms(n_lo: u32, n_hi: u32, table: &DimTable) -> Result<CheckReport> {
    check_span("n_lo for arms", n_lo, n_hi, 1, ORACLE_MAX_N)?;
    check_table(table, n_hi)?;
    let mut out = Collector::new("arms", n_lo, n_hi, false);
    for n in n_lo..=n_hi {
        let arms = distinct_arm_values(n).len() as u64;
        let c_hat = table.c_hat(n)?;
        if arms != c_hat {
            out.fail(n, arms, format!("{arms} distinct arm totals but c_hat(n)={c_hat}"));
        } else if n >= 2 {
            out.observe(n, arms, format!("distinct arm totals = c(n) + 1 = {c_hat}"));
        }
    }
    Ok(out.finish())
}

/// The recurrence's `Ĉ(n)` equals the brute-force enumeration bit for bit.
pub fn verify_brute(n_lo: u32, n_hi: u32, table: &DimTable) -> Result<CheckReport> {
    check_span("n_lo for brute", n_lo, n_hi, 0, ORACLE_MAX_N)?;
    check_table(table, n_hi)?;
    let mut out = Collector::new("brute", n_lo, n_hi, false);
    for n in n_lo..=n_hi {
        let dp = table.set(n)?;
        let oracle = chat_bruteforce(n)?;
        if *dp != oracle {
            for v in dp.to_btree().symmetric_difference(&oracle.to_btree()) {
                out.fail(n, *v, "recurrence and enumeration disagree");
            }
        }
    }
    Ok(out.finish())
}

/// The four-family closed form of `Ω(n, 2)` equals enumeration.
pub fn verify_prop7(n_lo: u32, n_hi: u32) -> Result<CheckReport> {
    check_span("n_lo for prop7", n_lo, n_hi, 2, crate::dims::OMEGA_MAX_N)?;
    let mut out = Collector::new("prop7", n_lo, n_hi, false);
    for n in n_lo..=n_hi {
        let closed = omega2_closed_form(n);
        let brute = omega_len_bruteforce(n, 2)?;
        for v in closed.difference(&brute) {
            out.fail(n, *v, "in closed form only");
        }
        for v in brute.difference(&closed) {
            out.fail(n, *v, "in enumeration only");
        }
    }
    Ok(out.finish())
}

/// Checks on the `f`/`k` sequences for `0..=n_max`: `f(n) ≡ n (mod 2)`,
/// `{n, n+2, .., f(n)} ⊆ Ĉ(n)`, `f(n) >= 2n` for `n >= 4`, `k`
/// non-decreasing, `k(18) = 7`, and `c(n) >= (f(n) - n)/2`.
pub fn verify_sequences(n_max: u32, table: &DimTable) -> Result<CheckReport> {
    check_table(table, n_max)?;
    let rows = fgk(n_max);
    let mut out = Collector::new("sequences", 0, n_max, false);
    for row in &rows {
        let n = row.n;
        let nn = u64::from(n);
        if row.f % 2 != nn % 2 {
            out.fail(n, row.f, "f(n) parity differs from n");
        }
        let set = table.set(n)?;
        if row.f < nn {
            out.fail(n, row.f, "f(n) < n");
        } else if let Some(missing) =
            (0..=((row.f - nn) / 2) as usize).find(|&j| !set.test_bit(j))
        {
            out.fail(
                n,
                set.value_at(missing),
                format!("missing from C_hat(n) though <= f(n) = {}", row.f),
            );
        }
        if n >= 4 && row.f < 2 * nn {
            out.fail(n, row.f, "f(n) < 2n");
        }
        if n >= 2 {
            let (prev, cur) = (rows[n as usize - 1].k, row.k);
            if cur < prev {
                out.fail(n, cur.unwrap_or(0).into(), format!("k decreases from {prev:?}"));
            }
            let c = table.c_of(n)?;
            if 2 * c + nn < row.f {
                out.fail(n, c, format!("c(n) < (f(n) - n)/2 with f(n) = {}", row.f));
            }
        }
    }
    if let Some(row) = rows.get(18) {
        let k18 = row.k.unwrap_or(0);
        out.observe(18, k18.into(), format!("k(18) = {k18}"));
        if k18 != 7 {
            out.fail(18, k18.into(), "k(18) != 7");
        }
    }
    Ok(out.finish())
}

/// `|H(n)|` from the set difference equals `h(n) = c(n+1) - c(n) - 1` for
/// `n_lo..=n_hi`, and for `n <= smooth_max` the enumerated non-compact
/// smooth-bounded values equal `H(n)`.
pub fn verify_consistency(
    n_lo: u32,
    n_hi: u32,
    smooth_max: u32,
    table: &DimTable,
) -> Result<CheckReport> {
    check_span("n_lo for consistency", n_lo, n_hi, 2, u32::MAX - 1)?;
    check_table(table, n_hi + 1)?;
    let smooth_hi = smooth_max.min(n_hi);
    if smooth_hi >= n_lo {
        check_omega_scale(smooth_hi)?;
    }
    let mut out = Collector::new("consistency", n_lo, n_hi, false);
    for n in n_lo..=n_hi {
        let big_h = table.big_h_set(n)?;
        let h = table.h_of(n)?;
        if big_h.count() != h {
            out.fail(n, big_h.count(), format!("|H(n)| != h(n) = {h}"));
        }
        if n <= smooth_hi {
            let sb = smooth_bounded_sets(n, table)?;
            if sb.noncompact != big_h {
                for v in sb.noncompact.to_btree().symmetric_difference(&big_h.to_btree()) {
                    out.fail(n, *v, "smooth-bounded non-compact set differs from H(n)");
                }
            }
        }
    }
    Ok(out.finish())
}
