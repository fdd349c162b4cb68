//! Text form of a pattern: the free entries row by row from the bottom,
//! rows separated by `;` and entries within a row by `,`.
//!
//! For `sl_4` with `p = 2` the pattern with `m11 = 1`, `(m12, m22) = (1, 0)`
//! and `m23 = 1` reads `1;1,0;1`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{bounds, GTPattern};
use crate::error::{Error, Result};

pub fn format_pattern(pattern: &GTPattern) -> String {
    let mut rows = Vec::new();
    for k in 1..pattern.n() {
        let (a, b) = pattern.bounds(k);
        let row: Vec<String> = (a..=b).map(|i| format!("{}", pattern.m(i, k))).collect();
        rows.push(row.join(","));
    }
    rows.join(";")
}

pub fn parse_pattern(n: usize, p: usize, lambda: usize, text: &str) -> Result<GTPattern> {
    crate::quiver::validate(n, p, lambda)?;
    let rows: Vec<&str> = text.trim().split(';').collect();
    if rows.len() != n - 1 {
        return Err(Error::Parse(format!(
            "`{text}` has {} rows, expected {}",
            rows.len(),
            n - 1
        )));
    }
    let mut free = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let k = idx + 1;
        let (a, b) = bounds(n, p, k);
        let entries: Vec<&str> = row.split(',').collect();
        if entries.len() != b + 1 - a {
            return Err(Error::Parse(format!(
                "row {k} of `{text}` has {} entries, expected {}",
                entries.len(),
                b + 1 - a
            )));
        }
        for e in entries {
            let v = e
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("`{e}` is not an integer")))?;
            free.push(v);
        }
    }
    GTPattern::from_free_entries(n, p, lambda, &free)
}
