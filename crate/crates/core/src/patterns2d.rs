//! Two-dimensional pattern semantics: vertical rotations, row-Lyndon
//! classification, radix encoding and aperiodicity counting.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::words::{necklace_poly_big, Alphabet};

/// An `(m, n)` array of symbols over an [`Alphabet`], stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    rows: usize,
    cols: usize,
    cells: Vec<u8>,
    k: usize,
}

impl Pattern {
    pub fn new(rows: usize, cols: usize, cells: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(
                "pattern dimensions must be >= 1".into(),
            ));
        }
        if cells.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "expected {} cells, got {}",
                rows * cols,
                cells.len()
            )));
        }
        if let Some(&bad) = cells.iter().find(|&&c| !alphabet.contains(c)) {
            return Err(Error::InvalidArgument(format!(
                "cell {bad} out of range for alphabet of size {}",
                alphabet.size()
            )));
        }
        Ok(Pattern {
            rows,
            cols,
            cells,
            k: alphabet.size(),
        })
    }

    pub fn from_rows(rows: &[Vec<u8>], alphabet: Alphabet) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Pattern::new(m, n, rows.concat(), alphabet)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn cell(&self, r: usize, c: usize) -> u8 {
        self.cells[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.cells[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.cell(r, c)).collect()
    }

    /// The pattern with rows cyclically shifted so that row `offset` of
    /// `self` becomes row 0.
    pub fn rotate_rows(&self, offset: usize) -> Pattern {
        let mut cells = Vec::with_capacity(self.cells.len());
        for r in 0..self.rows {
            cells.extend_from_slice(self.row((r + offset) % self.rows));
        }
        Pattern {
            rows: self.rows,
            cols: self.cols,
            cells,
            k: self.k,
        }
    }

    /// The row rotation whose row sequence, read as a word over the
    /// alphabet of rows, is lexicographically minimal, together with the
    /// rotation offset. Ties resolve to the smallest offset.
    ///
    /// Rows compare as super-letters, which coincides with row-major
    /// comparison of the rotated cell sequence.
    pub fn row_lexmin(&self) -> (Pattern, usize) {
        let mut best = self.clone();
        let mut best_offset = 0;
        for offset in 1..self.rows {
            let cand = self.rotate_rows(offset);
            if cand.cells < best.cells {
                best = cand;
                best_offset = offset;
            }
        }
        (best, best_offset)
    }

    /// True iff the `m` vertical rotations of the pattern are pairwise
    /// distinct.
    pub fn is_row_aperiodic(&self) -> bool {
        (1..self.rows).all(|offset| self.rotate_rows(offset).cells != self.cells)
    }

    /// True iff the row word is strictly smaller than all its nontrivial
    /// rotations.
    pub fn is_row_lyndon(&self) -> bool {
        (1..self.rows).all(|offset| self.cells < self.rotate_rows(offset).cells)
    }

    /// Column concatenation `[self | other]`; both patterns must share the
    /// row count.
    pub fn hconcat(&self, other: &Pattern) -> Pattern {
        assert_eq!(self.rows, other.rows, "row counts must match");
        let cols = self.cols + other.cols;
        let mut cells = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            cells.extend_from_slice(self.row(r));
            cells.extend_from_slice(other.row(r));
        }
        Pattern {
            rows: self.rows,
            cols,
            cells,
            k: self.k.max(other.k),
        }
    }

    /// The subpattern of columns `range.start..range.end`.
    pub fn column_slice(&self, start: usize, end: usize) -> Pattern {
        assert!(start <= end && end <= self.cols);
        let mut cells = Vec::with_capacity(self.rows * (end - start));
        for r in 0..self.rows {
            cells.extend_from_slice(&self.row(r)[start..end]);
        }
        Pattern {
            rows: self.rows,
            cols: end - start,
            cells,
            k: self.k,
        }
    }

    /// Radix-`k` row-major encoding of the cells.
    pub fn code(&self) -> PatternCode {
        PatternCode {
            value: radix_value(&self.cells, self.k),
            rows: self.rows,
            cols: self.cols,
            k: self.k,
        }
    }

    /// Injective lookup key; prefers a fixed-width integer when the code
    /// space fits 128 bits.
    pub fn key(&self) -> PatternKey {
        pattern_key(&self.cells, self.k)
    }
}

/// Advances `digits` to the next radix-`k` value; false once the odometer
/// wraps back to all zeros.
pub(crate) fn increment_radix(digits: &mut [u8], k: usize) -> bool {
    for slot in digits.iter_mut().rev() {
        *slot += 1;
        if (*slot as usize) < k {
            return true;
        }
        *slot = 0;
    }
    false
}

fn radix_value(cells: &[u8], k: usize) -> BigUint {
    let k = BigUint::from(k);
    let mut value = BigUint::zero();
    for &c in cells {
        value = value * &k + BigUint::from(c);
    }
    value
}

/// Canonical integer key of a pattern: the radix-`k` value of its cells in
/// row-major order, together with the shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCode {
    value: BigUint,
    rows: usize,
    cols: usize,
    k: usize,
}

impl PatternCode {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    /// Inverse of [`Pattern::code`].
    pub fn decode(&self) -> Result<Pattern> {
        let k = BigUint::from(self.k);
        let mut cells = vec![0u8; self.rows * self.cols];
        let mut v = self.value.clone();
        for slot in cells.iter_mut().rev() {
            let digit = &v % &k;
            *slot = digit.to_u8().expect("digit below alphabet size");
            v /= &k;
        }
        if !v.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "code value exceeds k^(mn) for shape ({}, {})",
                self.rows, self.cols
            )));
        }
        Pattern::new(
            self.rows,
            self.cols,
            cells,
            Alphabet::new(self.k)?,
        )
    }
}

/// Compact injective window key. `Narrow` carries the radix-`k` value when
/// it fits in 128 bits; larger code spaces fall back to a big integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternKey {
    Narrow(u128),
    Wide(BigUint),
}

/// Computes the key of a cell slice without building a [`Pattern`].
pub fn pattern_key(cells: &[u8], k: usize) -> PatternKey {
    if fits_u128(k, cells.len()) {
        let mut value = 0u128;
        for &c in cells {
            value = value * k as u128 + c as u128;
        }
        PatternKey::Narrow(value)
    } else {
        PatternKey::Wide(radix_value(cells, k))
    }
}

/// True iff k^len <= 2^128, i.e. every radix value fits in a u128.
fn fits_u128(k: usize, len: usize) -> bool {
    if k <= 1 {
        return true;
    }
    let mut acc = 1u128;
    for _ in 0..len {
        match acc.checked_mul(k as u128) {
            Some(v) => acc = v,
            None => return false,
        }
    }
    true
}

/// Number of row-aperiodic `(m, n)` patterns over `k` letters:
/// `m * M(k^n, m)`.
pub fn count_row_aperiodic(m: u64, n: u64, k: u64) -> BigUint {
    assert!(m >= 1 && n >= 1 && k >= 1);
    let base = BigUint::from(k).pow(n.try_into().expect("n fits u32"));
    necklace_poly_big(&base, m) * BigUint::from(m)
}

/// Ratio of row-aperiodic to all `(m, n)` patterns, kept both in the
/// unreduced printed form and as a reduced rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApRatio {
    pub numerator: BigUint,
    pub denominator: BigUint,
    pub reduced: BigRational,
}

pub fn ap_ratio(m: u64, n: u64, k: u64) -> ApRatio {
    let numerator = count_row_aperiodic(m, n, k);
    let denominator = BigUint::from(k).pow((m * n).try_into().expect("mn fits u32"));
    let reduced = BigRational::new(
        numerator.clone().into(),
        denominator.clone().into(),
    );
    ApRatio {
        numerator,
        denominator,
        reduced,
    }
}

/// Enumerates every `(m, n)` pattern over `k` letters in lexicographic
/// cell order. Guarded; intended for oracles and small constructions.
pub fn enumerate_patterns(m: usize, n: usize, k: usize) -> Result<Vec<Pattern>> {
    let guard = 10_000_000u64;
    let count = (k as u64).checked_pow(
        (m * n)
            .try_into()
            .map_err(|_| Error::BudgetExceeded("mn too large".into()))?,
    );
    if count.is_none() || count.unwrap() > guard {
        return Err(Error::BudgetExceeded(format!(
            "k^(mn) = {k}^{} exceeds the enumeration guard {guard}",
            m * n
        )));
    }
    let alphabet = Alphabet::new(k)?;
    let mut cells = vec![0u8; m * n];
    let mut out = Vec::with_capacity(count.unwrap() as usize);
    loop {
        out.push(Pattern::new(m, n, cells.clone(), alphabet)?);
        if !increment_radix(&mut cells, k) {
            return Ok(out);
        }
    }
}

/// Brute-force count of patterns with `m` distinct vertical rotations;
/// oracle for [`count_row_aperiodic`].
pub fn count_row_aperiodic_brute(m: usize, n: usize, k: usize) -> Result<u64> {
    let mut count = 0;
    for p in enumerate_patterns(m, n, k)? {
        if p.is_row_aperiodic() {
            count += 1;
        }
    }
    Ok(count)
}

/// Distinct vertical rotations of a pattern; oracle helper.
pub fn distinct_vertical_rotations(p: &Pattern) -> usize {
    let set: HashSet<Vec<u8>> = (0..p.rows())
        .map(|o| p.rotate_rows(o).cells)
        .collect();
    set.len()
}
