//! Turns an Euler cycle of a ring graph into a de Bruijn ring, and trims
//! rings by removing stair-pattern columns to reach coprime dimensions.

use crate::cyclic_map::CyclicMap;
use crate::error::{Budget, Error, Result};
use crate::ring_graph::{build_ring_graph, euler_cycle};

/// Builds the `(m, M(k^n, m); m, n)_k` de Bruijn ring: a height-`m`
/// sub-perfect map of maximal width containing every row-aperiodic
/// `(m, n)` pattern exactly once.
///
/// The ring starts as the all-zero `(m, n-1)` block; each Euler-cycle edge
/// appends its label column, after which the ring is rotated vertically by
/// the smallest offset making its last `n-1` columns equal the edge's
/// target vertex.
pub fn build_ring(m: usize, n: usize, k: usize, budget: &Budget) -> Result<CyclicMap> {
    let graph = build_ring_graph(m, n, k, budget)?;
    let cycle = euler_cycle(&graph)?;
    let width = graph.edges().len();
    let steps = width - (n - 1);

    // The appended column of step i receives every vertical rotation applied
    // from step i onward, so per-step offsets are computed first and applied
    // once as suffix sums. The last n-1 columns after step i-1 are exactly
    // the target vertex of edge i-1, which makes each offset computable from
    // the cycle alone.
    let mut offsets = Vec::with_capacity(steps);
    for i in 0..steps {
        let prev_vertex = &graph.vertices()[cycle.vertex_after(&graph, i)];
        let next_vertex = &graph.vertices()[cycle.vertex_after(&graph, i + 1)];
        let label = &graph.edges()[cycle.edges[i]].label;
        // Current trailing n-1 columns: the previous vertex shifted left by
        // one column, then the fresh label.
        let mut trailing: Vec<Vec<u8>> = (1..n - 1).map(|c| prev_vertex.column(c)).collect();
        trailing.push(label.clone());
        let offset = (0..m)
            .find(|&o| {
                (0..n - 1).all(|c| {
                    (0..m).all(|r| trailing[c][(r + o) % m] == next_vertex.cell(r, c))
                })
            })
            .ok_or_else(|| {
                Error::Internal(
                    "no vertical rotation aligns the ring with the next vertex; \
                     Euler cycle corrupt"
                        .into(),
                )
            })?;
        offsets.push(offset);
    }

    let mut suffix = 0usize;
    let mut columns = vec![vec![0u8; m]; width];
    for i in (0..steps).rev() {
        suffix = (suffix + offsets[i]) % m;
        let label = &graph.edges()[cycle.edges[i]].label;
        let col = &mut columns[n - 1 + i];
        for (r, cell) in col.iter_mut().enumerate() {
            *cell = label[(r + suffix) % m];
        }
    }
    // The leading n-1 all-zero columns are rotation invariant.

    CyclicMap::from_columns(&columns, k, (m, n))
}

/// The height-`m` column with `i` zeros followed by `m - i` ones,
/// `1 <= i <= m-1`.
pub fn stair_column(i: usize, m: usize) -> Result<Vec<u8>> {
    if i == 0 || i >= m {
        return Err(Error::InvalidArgument(format!(
            "stair index {i} out of range 1..={}",
            m - 1
        )));
    }
    let mut col = vec![1u8; m];
    col[..i].fill(0);
    Ok(col)
}

/// Removes `j` columns from a de Bruijn ring, one per stair pattern
/// `i = 1..=j`: each stair pattern occupies the unique cyclic run of `n`
/// identical columns equal to a vertical rotation of `stair_column(i, m)`,
/// and the first column of that run is deleted. The result stays
/// sub-perfect and has width reduced by `j`.
pub fn trim_ring(ring: &CyclicMap, j: usize) -> Result<CyclicMap> {
    let m = ring.height();
    let (wm, wn) = ring.window();
    if m != wm {
        return Err(Error::InvalidArgument(
            "trimming expects a ring of height m".into(),
        ));
    }
    if j >= m {
        return Err(Error::InvalidArgument(format!(
            "cannot trim {j} columns from a height-{m} ring; maximum is {}",
            m - 1
        )));
    }
    let mut columns = ring.columns();
    for i in 1..=j {
        let stair = stair_column(i, m)?;
        let rotations: Vec<Vec<u8>> = (0..m)
            .map(|o| (0..m).map(|r| stair[(r + o) % m]).collect())
            .collect();
        let width = columns.len();
        let hits: Vec<usize> = (0..width)
            .filter(|&c| {
                rotations.contains(&columns[c])
                    && (1..wn).all(|d| columns[(c + d) % width] == columns[c])
            })
            .collect();
        match hits.as_slice() {
            [start] => {
                columns.remove(*start);
            }
            [] => {
                return Err(Error::Internal(format!(
                    "stair run {i} not found; input is not a de Bruijn ring"
                )))
            }
            _ => {
                return Err(Error::Internal(format!(
                    "stair run {i} is not unique at columns {hits:?}"
                )))
            }
        }
    }
    CyclicMap::from_columns(&columns, ring.alphabet_size(), (wm, wn))
}
