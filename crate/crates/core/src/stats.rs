//! Exact-arithmetic tables: row-aperiodic pattern ratios, square-map
//! coverage comparisons and the sparse-marker coverage bound. All decimal
//! renderings come from long division of exact rationals, never from
//! floating point.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::composer::square_map_size;
use crate::error::{Error, Result};
use crate::patterns2d::ap_ratio;

/// One cell of the row-aperiodic ratio table: the unreduced fraction
/// `m * M(k^n, m) / k^(mn)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub numerator: BigUint,
    pub denominator: BigUint,
}

/// One row of the square-map size comparison: side length `N` of the
/// `(n, n)` map over alphabet `k^2`, the side length `k^(n^2)` of a
/// hypothetical torus of the same type, and the coverage percentage
/// `100 * N^2 / torus^2` rendered to 15 decimals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageRow {
    pub k: u64,
    pub n: u64,
    pub side: BigUint,
    pub torus_side: BigUint,
    pub ratio: BigRational,
    pub percent: String,
}

/// Ratios of row-aperiodic to all patterns over inclusive parameter ranges,
/// ordered by `(m, n, k)`.
pub fn table1(
    m_range: (u64, u64),
    n_range: (u64, u64),
    k_range: (u64, u64),
) -> Vec<Table1Row> {
    let mut rows = Vec::new();
    for m in m_range.0..=m_range.1 {
        for n in n_range.0..=n_range.1 {
            for k in k_range.0..=k_range.1 {
                let r = ap_ratio(m, n, k);
                rows.push(Table1Row {
                    m,
                    n,
                    k,
                    numerator: r.numerator,
                    denominator: r.denominator,
                });
            }
        }
    }
    rows
}

/// Square-map size comparison over inclusive ranges, ordered by `(k, n)`.
pub fn table2(k_range: (u64, u64), n_range: (u64, u64)) -> Result<Vec<CoverageRow>> {
    let mut rows = Vec::new();
    for k in k_range.0..=k_range.1 {
        for n in n_range.0..=n_range.1 {
            rows.push(coverage_row(k, n)?);
        }
    }
    Ok(rows)
}

/// A single square-map comparison row.
pub fn coverage_row(k: u64, n: u64) -> Result<CoverageRow> {
    let side = square_map_size(k, n)?;
    let torus_side = BigUint::from(k).pow(
        (n * n)
            .try_into()
            .map_err(|_| Error::InvalidArgument("n^2 too large".into()))?,
    );
    let side_sq = &side * &side;
    let torus_sq = &torus_side * &torus_side;
    let ratio = BigRational::new(side_sq.clone().into(), torus_sq.clone().into());
    let percent = percent_string(&side_sq, &torus_sq, 15);
    Ok(CoverageRow {
        k,
        n,
        side,
        torus_side,
        ratio,
        percent,
    })
}

/// Renders `100 * num / den` with exactly `decimals` fraction digits by
/// long division, rounding the last digit half away from zero.
pub fn percent_string(num: &BigUint, den: &BigUint, decimals: u32) -> String {
    decimal_string(&(num * BigUint::from(100u32)), den, decimals)
}

/// Renders `num / den` with exactly `decimals` fraction digits, rounding
/// half away from zero.
pub fn decimal_string(num: &BigUint, den: &BigUint, decimals: u32) -> String {
    let scale = BigUint::from(10u32).pow(decimals);
    let scaled = num * &scale;
    let mut q = &scaled / den;
    let r = &scaled % den;
    if &r * 2u32 >= *den {
        q += 1u32;
    }
    let digits = q.to_string();
    if decimals == 0 {
        return digits;
    }
    let decimals = decimals as usize;
    let padded = if digits.len() <= decimals {
        format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = padded.len() - decimals;
    format!("{}.{}", &padded[..split], &padded[split..])
}

/// Coverage fraction of a marker-based construction that uses `d < k`
/// base letters: `d^(mn-1) * k / k^(mn)`, together with its upper bound
/// `((k-1)/k)^(mn-1)`. The fraction never exceeds the bound, with equality
/// at `d = k - 1`; both vanish as the window grows.
pub fn sparse_marker_coverage(
    d: u64,
    k: u64,
    m: u64,
    n: u64,
) -> Result<(BigRational, BigRational)> {
    if d == 0 || d >= k {
        return Err(Error::InvalidArgument(format!(
            "need 0 < d < k, got d={d}, k={k}"
        )));
    }
    let mn = (m * n) as u32;
    let value = BigRational::new(
        BigInt::from(d).pow(mn - 1) * BigInt::from(k),
        BigInt::from(k).pow(mn),
    );
    let bound = BigRational::new(
        BigInt::from(k - 1).pow(mn - 1),
        BigInt::from(k).pow(mn - 1),
    );
    debug_assert!(value <= bound);
    Ok((value, bound))
}

/// CSV emitter for [`table1`] rows; columns `m,n,k,numerator,denominator`.
pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut out = String::from("m,n,k,numerator,denominator\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.m, r.n, r.k, r.numerator, r.denominator
        ));
    }
    out
}

/// CSV emitter for [`table2`] rows; columns `k,n,N,Ntilde,percent`.
pub fn table2_csv(rows: &[CoverageRow]) -> String {
    let mut out = String::from("k,n,N,Ntilde,percent\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.k, r.n, r.side, r.torus_side, r.percent
        ));
    }
    out
}

/// Aligned text emitter for [`table1`].
pub fn table1_text(rows: &[Table1Row]) -> String {
    let mut lines: Vec<[String; 4]> = vec![[
        "m".into(),
        "n".into(),
        "k".into(),
        "aperiodic/total".into(),
    ]];
    for r in rows {
        lines.push([
            r.m.to_string(),
            r.n.to_string(),
            r.k.to_string(),
            format!("{}/{}", r.numerator, r.denominator),
        ]);
    }
    align(&lines)
}

/// Aligned text emitter for [`table2`].
pub fn table2_text(rows: &[CoverageRow]) -> String {
    let mut lines: Vec<[String; 4]> = vec![[
        "k".into(),
        "n".into(),
        "N/Ntilde".into(),
        "coverage %".into(),
    ]];
    for r in rows {
        lines.push([
            r.k.to_string(),
            r.n.to_string(),
            format!("{}/{}", r.side, r.torus_side),
            r.percent.clone(),
        ]);
    }
    align(&lines)
}

fn align(lines: &[[String; 4]]) -> String {
    let mut widths = [0usize; 4];
    for line in lines {
        for (w, cell) in widths.iter_mut().zip(line) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for line in lines {
        for (i, (w, cell)) in widths.iter().zip(line).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(&format!("{cell:<w$}"));
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
    out
}
