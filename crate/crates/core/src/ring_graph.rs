//! The `(m, n)_k` ring graph: a labeled multidigraph on row-lexmin
//! representatives of `(m, n-1)` patterns whose Euler cycles yield
//! de Bruijn rings.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Budget, Error, Result};
use crate::euler::eulerian_cycle;
use crate::patterns2d::Pattern;
use crate::words::{necklace_poly_big, Alphabet};

/// One labeled edge; the label is a height-`m` column completing the
/// source vertex to a row-aperiodic `(m, n)` pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingEdge {
    pub from: usize,
    pub to: usize,
    pub label: Vec<u8>,
}

#[derive(Debug, Clone)]
pub struct RingGraph {
    m: usize,
    n: usize,
    k: usize,
    vertices: Vec<Pattern>,
    edges: Vec<RingEdge>,
    adjacency: Vec<Vec<usize>>,
}

impl RingGraph {
    pub fn params(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.k)
    }

    pub fn vertices(&self) -> &[Pattern] {
        &self.vertices
    }

    pub fn edges(&self) -> &[RingEdge] {
        &self.edges
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    /// Index of the all-zero vertex. Vertices are sorted, so it is 0.
    pub fn zero_vertex(&self) -> usize {
        0
    }

    /// Edge-list text dump, one line per edge:
    /// `src_vertex_cells -> dst_vertex_cells label_cells` with pattern rows
    /// joined by `/` and the label written top to bottom.
    pub fn dump_edge_list(&self) -> String {
        let render_pattern = |p: &Pattern| -> String {
            (0..p.rows())
                .map(|r| {
                    p.row(r)
                        .iter()
                        .map(|&c| Alphabet::symbol_char(c).unwrap_or('?'))
                        .collect::<String>()
                })
                .collect::<Vec<_>>()
                .join("/")
        };
        let mut out = String::new();
        for e in &self.edges {
            let label: String = e
                .label
                .iter()
                .map(|&c| Alphabet::symbol_char(c).unwrap_or('?'))
                .collect();
            out.push_str(&format!(
                "{} -> {} {}\n",
                render_pattern(&self.vertices[e.from]),
                render_pattern(&self.vertices[e.to]),
                label
            ));
        }
        out
    }

    /// Structural invariants: every vertex is its own row-lexmin, the edge
    /// count equals `M(k^n, m)`, in-degree equals out-degree everywhere and
    /// the graph is weakly connected.
    pub fn check_invariants(&self) -> Result<()> {
        for v in &self.vertices {
            if v.row_lexmin().0 != *v {
                return Err(Error::Internal("vertex is not a row-lexmin".into()));
            }
        }
        let expected = necklace_poly_big(
            &BigUint::from(self.k).pow(self.n as u32),
            self.m as u64,
        );
        if BigUint::from(self.edges.len()) != expected {
            return Err(Error::Internal(format!(
                "edge count {} differs from M(k^n, m) = {expected}",
                self.edges.len()
            )));
        }
        let mut in_deg = vec![0usize; self.vertices.len()];
        let mut out_deg = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            out_deg[e.from] += 1;
            in_deg[e.to] += 1;
        }
        if in_deg != out_deg {
            return Err(Error::Internal("in-degree differs from out-degree".into()));
        }
        if !self.is_weakly_connected() {
            return Err(Error::Internal("graph is not weakly connected".into()));
        }
        Ok(())
    }

    /// BFS over the undirected view.
    pub fn is_weakly_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut undirected = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            undirected[e.from].push(e.to);
            undirected[e.to].push(e.from);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &undirected[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.vertices.len()
    }
}

/// Builds the `(m, n)_k` ring graph.
///
/// Vertices are the row-lexmin representatives of all `(m, n-1)` patterns,
/// sorted lexicographically by cells. For a vertex `P` and a column `R`,
/// an edge labeled `R` exists iff `[P | R]` is row-aperiodic and no
/// smaller column produces the same rotation class; it points to the
/// row-lexmin of the last `n-1` columns of `[P | R]`. Adjacency lists are
/// ordered by label.
pub fn build_ring_graph(m: usize, n: usize, k: usize, budget: &Budget) -> Result<RingGraph> {
    if m < 2 || n < 2 || k < 2 {
        return Err(Error::InvalidArgument(
            "ring graphs need m >= 2, n >= 2, k >= 2".into(),
        ));
    }
    let expected_edges = necklace_poly_big(&BigUint::from(k).pow(n as u32), m as u64);
    if expected_edges > BigUint::from(budget.max_edges) {
        return Err(Error::BudgetExceeded(format!(
            "ring graph would have M(k^n, m) = {expected_edges} edges, budget is {}",
            budget.max_edges
        )));
    }

    let alphabet = Alphabet::new(k)?;

    // Enumerate vertices in lexicographic cell order; a pattern is kept iff
    // it is its own row-lexmin. The all-zero pattern comes first.
    let mut vertices = Vec::new();
    let mut vertex_index = HashMap::new();
    let mut cells = vec![0u8; m * (n - 1)];
    loop {
        let p = Pattern::new(m, n - 1, cells.clone(), alphabet)?;
        if p.row_lexmin().0 == p {
            vertex_index.insert(cells.clone(), vertices.len());
            vertices.push(p);
        }
        if !crate::patterns2d::increment_radix(&mut cells, k) {
            break;
        }
    }

    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for (vi, vertex) in vertices.iter().enumerate() {
        // Offsets fixing the vertex; a smaller column in the same rotation
        // class can only arise from one of these.
        let stabilizer: Vec<usize> = (1..m)
            .filter(|&o| vertex.rotate_rows(o) == *vertex)
            .collect();
        let mut label = vec![0u8; m];
        loop {
            let column = Pattern::new(m, 1, label.clone(), alphabet)?;
            let q = vertex.hconcat(&column);
            if q.is_row_aperiodic() && is_minimal_label(&label, &stabilizer, m) {
                let tail = q.column_slice(1, n);
                let (target, _) = tail.row_lexmin();
                let to = *vertex_index
                    .get(target.cells())
                    .ok_or_else(|| Error::Internal("edge target is not a vertex".into()))?;
                adjacency[vi].push(edges.len());
                edges.push(RingEdge {
                    from: vi,
                    to,
                    label: label.clone(),
                });
            }
            if !crate::patterns2d::increment_radix(&mut label, k) {
                break;
            }
        }
    }

    let graph = RingGraph {
        m,
        n,
        k,
        vertices,
        edges,
        adjacency,
    };
    graph.check_invariants()?;
    Ok(graph)
}

/// True iff no vertex-stabilizing rotation maps `label` to a smaller
/// column. For a row-aperiodic source vertex the stabilizer is trivial and
/// every label is minimal.
fn is_minimal_label(label: &[u8], stabilizer: &[usize], m: usize) -> bool {
    stabilizer.iter().all(|&o| {
        (0..m)
            .map(|i| label[(i + o) % m])
            .ge(label.iter().copied())
    })
}

/// An Eulerian cycle through a ring graph: the edge ids in walk order,
/// starting and ending at the all-zero vertex.
#[derive(Debug, Clone)]
pub struct EulerCycle {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl EulerCycle {
    /// The vertex reached after the first `i` edges.
    pub fn vertex_after(&self, g: &RingGraph, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            g.edges()[self.edges[i - 1]].to
        }
    }
}

/// Deterministic Hierholzer walk: from each vertex the smallest-labeled
/// unused edge is taken; closed subwalks are spliced at the first vertex,
/// in cycle order, that still has unused edges.
pub fn euler_cycle(g: &RingGraph) -> Result<EulerCycle> {
    let pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.from, e.to)).collect();
    let start = g.zero_vertex();
    let edges = eulerian_cycle(&pairs, g.adjacency(), start)
        .ok_or_else(|| Error::Internal("ring graph walk failed; graph not Eulerian".into()))?;
    Ok(EulerCycle { start, edges })
}
