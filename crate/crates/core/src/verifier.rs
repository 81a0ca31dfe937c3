//! Exhaustive cyclic-window verification of (sub-)perfectness, with
//! coverage statistics and duplicate reporting.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use crate::cyclic_map::CyclicMap;
use crate::error::{Budget, Error, Result};
use crate::patterns2d::{pattern_key, Pattern, PatternKey};
use crate::words::{necklace_poly_big, Alphabet};

/// Cap on recorded duplicate witnesses.
const WITNESS_CAP: usize = 100;

/// One duplicated window: the pattern and two positions where it occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuplicateWitness {
    pub pattern: Pattern,
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// Result of scanning all `M * N` cyclic windows of a map.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub height: usize,
    pub width: usize,
    pub win_rows: usize,
    pub win_cols: usize,
    pub alphabet_size: usize,
    pub distinct_windows: u64,
    /// Capped at 100 entries.
    pub duplicate_witnesses: Vec<DuplicateWitness>,
    /// Exact ratio of distinct windows to all `k^(mn)` patterns.
    pub coverage_ratio: BigRational,
    pub is_sub_perfect: bool,
    pub is_perfect: bool,
    pub is_de_bruijn_ring: bool,
}

/// Scans every cyclic `(m, n)` window of `map`, detecting duplicates by
/// canonical pattern key.
pub fn verify(map: &CyclicMap, m: usize, n: usize, budget: &Budget) -> Result<VerificationReport> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("window shape must be >= 1".into()));
    }
    let windows = (map.height() as u64)
        .checked_mul(map.width() as u64)
        .ok_or_else(|| Error::BudgetExceeded("window count overflows".into()))?;
    if windows > budget.max_windows {
        return Err(Error::BudgetExceeded(format!(
            "map has {windows} windows, budget is {}",
            budget.max_windows
        )));
    }

    let k = map.alphabet_size();
    let mut seen: HashMap<PatternKey, (usize, usize)> = HashMap::with_capacity(windows as usize);
    let mut witnesses = Vec::new();
    let mut buf = Vec::with_capacity(m * n);
    for r in 0..map.height() {
        for c in 0..map.width() {
            map.window_cells(r, c, m, n, &mut buf);
            let key = pattern_key(&buf, k);
            match seen.entry(key) {
                std::collections::hash_map::Entry::Vacant(slot) => {
                    slot.insert((r, c));
                }
                std::collections::hash_map::Entry::Occupied(slot) => {
                    if witnesses.len() < WITNESS_CAP {
                        witnesses.push(DuplicateWitness {
                            pattern: Pattern::new(m, n, buf.clone(), Alphabet::new(k)?)?,
                            first: *slot.get(),
                            second: (r, c),
                        });
                    }
                }
            }
        }
    }

    let distinct = seen.len() as u64;
    let total_patterns = BigUint::from(k).pow(
        (m * n)
            .try_into()
            .map_err(|_| Error::BudgetExceeded("window area too large".into()))?,
    );
    let coverage_ratio = BigRational::new(BigUint::from(distinct).into(), total_patterns.into());

    let is_sub_perfect = distinct == windows;
    let is_perfect = is_sub_perfect
        && BigUint::from(windows) == BigUint::from(k).pow((m * n) as u32);
    let is_de_bruijn_ring = map.height() == m
        && is_sub_perfect
        && BigUint::from(map.width())
            == necklace_poly_big(&BigUint::from(k).pow(n as u32), m as u64);

    Ok(VerificationReport {
        height: map.height(),
        width: map.width(),
        win_rows: m,
        win_cols: n,
        alphabet_size: k,
        distinct_windows: distinct,
        duplicate_witnesses: witnesses,
        coverage_ratio,
        is_sub_perfect,
        is_perfect,
        is_de_bruijn_ring,
    })
}

/// Exact fraction of all `k^(mn)` patterns occurring in the map.
pub fn coverage(map: &CyclicMap, m: usize, n: usize, budget: &Budget) -> Result<BigRational> {
    Ok(verify(map, m, n, budget)?.coverage_ratio)
}

#[derive(Serialize)]
struct WitnessJson {
    rows: Vec<String>,
    first: (usize, usize),
    second: (usize, usize),
}

#[derive(Serialize)]
struct ReportJson {
    #[serde(rename = "M")]
    height: usize,
    #[serde(rename = "N")]
    width: usize,
    m: usize,
    n: usize,
    k: usize,
    distinct_windows: u64,
    duplicate_witnesses: Vec<WitnessJson>,
    coverage_numerator: String,
    coverage_denominator: String,
    is_sub_perfect: bool,
    is_perfect: bool,
    is_de_bruijn_ring: bool,
}

impl VerificationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "type: ({}, {}; {},{})_{}\n",
            self.height, self.width, self.win_rows, self.win_cols, self.alphabet_size
        ));
        out.push_str(&format!(
            "windows scanned: {}\n",
            self.height as u64 * self.width as u64
        ));
        out.push_str(&format!("distinct windows: {}\n", self.distinct_windows));
        out.push_str(&format!(
            "coverage: {}/{}\n",
            self.coverage_ratio.numer(),
            self.coverage_ratio.denom()
        ));
        out.push_str(&format!("sub-perfect: {}\n", yes_no(self.is_sub_perfect)));
        out.push_str(&format!("perfect: {}\n", yes_no(self.is_perfect)));
        out.push_str(&format!(
            "de Bruijn ring: {}\n",
            yes_no(self.is_de_bruijn_ring)
        ));
        if !self.duplicate_witnesses.is_empty() {
            out.push_str(&format!(
                "duplicates (showing {}):\n",
                self.duplicate_witnesses.len()
            ));
            for w in &self.duplicate_witnesses {
                out.push_str(&format!(
                    "  window at ({}, {}) repeats at ({}, {})\n",
                    w.first.0, w.first.1, w.second.0, w.second.1
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let witnesses = self
            .duplicate_witnesses
            .iter()
            .map(|w| WitnessJson {
                rows: (0..w.pattern.rows())
                    .map(|r| {
                        w.pattern
                            .row(r)
                            .iter()
                            .map(|&c| Alphabet::symbol_char(c).unwrap_or('?'))
                            .collect()
                    })
                    .collect(),
                first: w.first,
                second: w.second,
            })
            .collect();
        let json = ReportJson {
            height: self.height,
            width: self.width,
            m: self.win_rows,
            n: self.win_cols,
            k: self.alphabet_size,
            distinct_windows: self.distinct_windows,
            duplicate_witnesses: witnesses,
            coverage_numerator: self.coverage_ratio.numer().to_string(),
            coverage_denominator: self.coverage_ratio.denom().to_string(),
            is_sub_perfect: self.is_sub_perfect,
            is_perfect: self.is_perfect,
            is_de_bruijn_ring: self.is_de_bruijn_ring,
        };
        serde_json::to_string_pretty(&json).expect("report serializes")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
