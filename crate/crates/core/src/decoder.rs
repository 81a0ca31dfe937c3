//! Absolute-position decoding of observed windows in composed maps:
//! split the window into its factor-alphabet layers, look each half up in
//! a per-layer table, and recombine the residues by the Chinese remainder
//! theorem.
//!
//! The tables hold one entry per layer window, the square root of the map
//! size. Memory could be cut further to O(mn) by regenerating the rings
//! during each lookup instead of storing tables, at the cost of a full
//! ring construction per decode; that mode is not implemented here.

use std::collections::HashMap;

use num_integer::Integer;

use crate::composer::ProductMap;
use crate::error::{Error, Result};
use crate::patterns2d::{pattern_key, Pattern, PatternKey};
use crate::words::Alphabet;

/// Absolute position in a composed map, `row < M`, `col < N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

/// Precomputed reconstruction `x = r_small (mod small), x = r_large (mod
/// large)` for coprime moduli.
#[derive(Debug, Clone, Copy)]
struct CrtPair {
    small: u64,
    large: u64,
    /// Inverse of `small` modulo `large`.
    inv: u64,
}

impl CrtPair {
    fn new(small: u64, large: u64) -> Result<Self> {
        if small.gcd(&large) != 1 {
            return Err(Error::InvalidArgument(format!(
                "moduli {small} and {large} are not coprime; positions are ambiguous"
            )));
        }
        let e = i128::extended_gcd(&(small as i128), &(large as i128));
        let inv = e.x.rem_euclid(large as i128) as u64;
        Ok(CrtPair { small, large, inv })
    }

    fn combine(&self, r_small: u64, r_large: u64) -> u64 {
        let diff = (r_large as i128 - r_small as i128).rem_euclid(self.large as i128) as u64;
        let t = (diff as u128 * self.inv as u128 % self.large as u128) as u64;
        r_small + self.small * t
    }
}

/// Lookup tables over both layers plus the CRT data for a composed map.
#[derive(Debug, Clone)]
pub struct DecoderIndex {
    m: usize,
    n: usize,
    k1: usize,
    k2: usize,
    layer1_width: usize,
    layer2_height: usize,
    table1: HashMap<PatternKey, (u32, u32)>,
    table2: HashMap<PatternKey, (u32, u32)>,
    row_crt: CrtPair,
    col_crt: CrtPair,
}

/// Work performed by one decode, in instrumented units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeCost {
    pub cell_reads: usize,
    pub table_lookups: usize,
}

/// Builds the decoder index from a composed map: every cyclic window of
/// each layer is keyed canonically and mapped to its position.
pub fn build_index(pm: &ProductMap) -> Result<DecoderIndex> {
    let spec = &pm.spec;
    let (m, n) = (spec.m, spec.n);
    let n1 = pm.layer1.width();
    let m2 = pm.layer2.height();

    let fill = |map: &crate::cyclic_map::CyclicMap,
                    rows: usize,
                    cols: usize,
                    layer: u8|
     -> Result<HashMap<PatternKey, (u32, u32)>> {
        let mut table = HashMap::with_capacity(rows * cols);
        let mut buf = Vec::with_capacity(m * n);
        for r in 0..rows {
            for c in 0..cols {
                map.window_cells(r, c, m, n, &mut buf);
                let key = pattern_key(&buf, map.alphabet_size());
                if table.insert(key, (r as u32, c as u32)).is_some() {
                    return Err(Error::Internal(format!(
                        "layer {layer} repeats a window; it is not sub-perfect"
                    )));
                }
            }
        }
        Ok(table)
    };

    let table1 = fill(&pm.layer1, m, n1, 1)?;
    let table2 = fill(&pm.layer2, m2, n, 2)?;
    debug_assert_eq!(table1.len(), m * n1);
    debug_assert_eq!(table2.len(), n * m2);

    Ok(DecoderIndex {
        m,
        n,
        k1: spec.k1,
        k2: spec.k2,
        layer1_width: n1,
        layer2_height: m2,
        table1,
        table2,
        row_crt: CrtPair::new(m as u64, m2 as u64)?,
        col_crt: CrtPair::new(n as u64, n1 as u64)?,
    })
}

impl DecoderIndex {
    pub fn table_sizes(&self) -> (usize, usize) {
        (self.table1.len(), self.table2.len())
    }

    /// Decoded map height `M = m * M2`.
    pub fn map_height(&self) -> usize {
        self.m * self.layer2_height
    }

    /// Decoded map width `N = n * N1`.
    pub fn map_width(&self) -> usize {
        self.n * self.layer1_width
    }

    /// Looks up the absolute position whose window equals `window`.
    pub fn decode(&self, window: &Pattern) -> Result<Position> {
        self.decode_with_cost(window).0
    }

    /// Same as [`DecoderIndex::decode`], also reporting the work done.
    pub fn decode_with_cost(&self, window: &Pattern) -> (Result<Position>, DecodeCost) {
        let mut cost = DecodeCost {
            cell_reads: 0,
            table_lookups: 0,
        };
        let split = split_window_counted(window, self.k1, self.k2, &mut cost.cell_reads);
        let (w1, w2) = match split {
            Ok(pair) => pair,
            Err(e) => return (Err(e), cost),
        };

        cost.table_lookups += 1;
        let Some(&(r1, c1)) = self.table1.get(&w1.key()) else {
            return (Err(Error::NotInMap { layer: 1 }), cost);
        };
        cost.table_lookups += 1;
        let Some(&(r2, c2)) = self.table2.get(&w2.key()) else {
            return (Err(Error::NotInMap { layer: 2 }), cost);
        };

        let row = self.row_crt.combine(r1 as u64, r2 as u64) as usize;
        let col = self.col_crt.combine(c2 as u64, c1 as u64) as usize;
        (Ok(Position { row, col }), cost)
    }
}

/// Splits a window over the product alphabet into its layer patterns:
/// high digits `cell / k2` over `k1` and low digits `cell % k2` over `k2`.
pub fn split_window(window: &Pattern, k1: usize, k2: usize) -> Result<(Pattern, Pattern)> {
    let mut reads = 0;
    split_window_counted(window, k1, k2, &mut reads)
}

fn split_window_counted(
    window: &Pattern,
    k1: usize,
    k2: usize,
    cell_reads: &mut usize,
) -> Result<(Pattern, Pattern)> {
    let k2u = k2 as u8;
    let mut high = Vec::with_capacity(window.cells().len());
    let mut low = Vec::with_capacity(window.cells().len());
    for &cell in window.cells() {
        if cell as usize >= k1 * k2 {
            return Err(Error::InvalidArgument(format!(
                "cell {cell} out of range for product alphabet {}",
                k1 * k2
            )));
        }
        *cell_reads += 1;
        high.push(cell / k2u);
        *cell_reads += 1;
        low.push(cell % k2u);
    }
    Ok((
        Pattern::new(window.rows(), window.cols(), high, Alphabet::new(k1)?)?,
        Pattern::new(window.rows(), window.cols(), low, Alphabet::new(k2)?)?,
    ))
}

/// Runs instrumented decodes over `windows` and checks that the cost is
/// identical for each: `2 m n` cell reads plus at most two lookups,
/// independent of the map dimensions.
pub fn decode_complexity_probe(idx: &DecoderIndex, windows: &[Pattern]) -> Result<DecodeCost> {
    let mut uniform: Option<DecodeCost> = None;
    for w in windows {
        let (result, cost) = idx.decode_with_cost(w);
        // Misses are fine; the probe is about work, not coverage.
        if let Err(Error::InvalidArgument(msg)) = result {
            return Err(Error::InvalidArgument(msg));
        }
        let hit_cost = DecodeCost {
            cell_reads: 2 * idx.m * idx.n,
            table_lookups: 2,
        };
        if cost.cell_reads != hit_cost.cell_reads || cost.table_lookups > 2 {
            return Err(Error::Internal(format!(
                "decode cost {cost:?} deviates from the expected {hit_cost:?}"
            )));
        }
        match uniform {
            Some(prev) if result.is_ok() && prev != cost => {
                return Err(Error::Internal(
                    "decode cost varies between windows".into(),
                ))
            }
            None if result.is_ok() => uniform = Some(cost),
            _ => {}
        }
    }
    uniform.ok_or_else(|| Error::InvalidArgument("no window decoded successfully".into()))
}
