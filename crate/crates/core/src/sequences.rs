//! The auxiliary sequences `f`, `g`, `k` used to show that sums of squares
//! fill an interval `{n, n + 2, .., f(n)}`, and the `c(n)/n²`, `h(n)/n`
//! ratio diagnostics.

use serde::Serialize;

use crate::dims::DimTable;

/// One row of the `f`/`g`/`k` recurrence. `g(n) = (f(n) + n + 4) / 2` may be
/// a half-integer, so it is kept doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FgkRow {
    pub n: u32,
    pub f: u64,
    pub two_g: u64,
    /// Undefined at `n = 0`.
    pub k: Option<u32>,
}

impl FgkRow {
    pub fn g(&self) -> f64 {
        self.two_g as f64 / 2.0
    }
}

/// Rows `0..=n_max` of
///
/// ```text
/// f(0) = 0,  k(1) = 0,
/// f(n) = (n - k(n))² + f(k(n)),
/// g(n) = (f(n) + n + 4) / 2,
/// k(n) = max { 0 <= κ < n : g(κ) <= n }.
/// ```
pub fn fgk(n_max: u32) -> Vec<FgkRow> {
    let mut rows: Vec<FgkRow> = Vec::with_capacity(n_max as usize + 1);
    rows.push(FgkRow {
        n: 0,
        f: 0,
        two_g: 4,
        k: None,
    });
    for n in 1..=n_max {
        let k = if n == 1 {
            0
        } else {
            // g(0) = 2 <= n, so the scan always stops.
            (0..n)
                .rev()
                .find(|&kappa| rows[kappa as usize].two_g <= 2 * u64::from(n))
                .expect("g(0) <= n for n >= 2")
        };
        let d = u64::from(n - k);
        let f = d * d + rows[k as usize].f;
        rows.push(FgkRow {
            n,
            f,
            two_g: f + u64::from(n) + 4,
            k: Some(k),
        });
    }
    rows
}

/// `num / den` truncated to four decimal places, e.g. `0.4646`.
pub fn format_ratio(num: u64, den: u64) -> String {
    assert!(den > 0, "ratio with zero denominator");
    let scaled = u128::from(num) * 10_000 / u128::from(den);
    format!("{}.{:04}", scaled / 10_000, scaled % 10_000)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioRow {
    pub n: u32,
    pub c: u64,
    pub c_over_n2: String,
    /// Absent for the last `n` of the table.
    pub h: Option<u64>,
    pub h_over_n: Option<String>,
}

/// `c(n)`, `c(n)/n²`, `h(n)`, `h(n)/n` for each requested `n`. Values
/// outside the table are skipped.
pub fn ratio_table(table: &DimTable, ns: &[u32]) -> Vec<RatioRow> {
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let Ok(c) = table.c_of(n) else {
            log::warn!("n = {n} is outside the table (2..={}), skipped", table.n_max());
            continue;
        };
        let h = table.h_of(n).ok();
        let nn = u64::from(n);
        rows.push(RatioRow {
            n,
            c,
            c_over_n2: format_ratio(c, nn * nn),
            h,
            h_over_n: h.map(|h| format_ratio(h, nn)),
        });
    }
    rows
}

/// `h(n) / (n k(n))`, reported as a diagnostic only.
pub fn h_over_nk(table: &DimTable, rows: &[FgkRow], n: u32) -> Option<f64> {
    let h = table.h_of(n).ok()?;
    let k = rows.get(n as usize)?.k?;
    (k > 0).then(|| h as f64 / (f64::from(n) * f64::from(k)))
}
