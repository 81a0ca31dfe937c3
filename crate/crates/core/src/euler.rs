//! Euler-cycle traversal for labeled multidigraphs.
//!
//! The walk is fully deterministic: at every vertex the lowest-priority
//! unused edge is taken (adjacency lists are consumed in order), and each
//! closed subwalk is spliced into the main cycle at the first position,
//! in cycle order, whose vertex still has unused edges.

/// Returns the edge ids of an Eulerian cycle through `edges`, starting and
/// ending at `start`. `adj[v]` lists the ids of v's outgoing edges in
/// priority order. Returns `None` if the graph is not Eulerian from `start`
/// (a walk gets stuck away from its origin, or edges remain unused).
pub(crate) fn eulerian_cycle(
    edges: &[(usize, usize)],
    adj: &[Vec<usize>],
    start: usize,
) -> Option<Vec<usize>> {
    if edges.is_empty() {
        return Some(Vec::new());
    }
    let mut cursor = vec![0usize; adj.len()];

    // Greedy walk from `from` until stuck; for a balanced graph the walk can
    // only get stuck back at `from`.
    let walk = |from: usize, cursor: &mut [usize]| -> Option<Vec<usize>> {
        let mut path = Vec::new();
        let mut v = from;
        while cursor[v] < adj[v].len() {
            let e = adj[v][cursor[v]];
            cursor[v] += 1;
            path.push(e);
            v = edges[e].1;
        }
        if v == from && !path.is_empty() {
            Some(path)
        } else {
            None
        }
    };

    const NIL: usize = usize::MAX;
    // Singly linked list of edge ids, so splices are O(length of subwalk).
    let mut value: Vec<usize> = Vec::with_capacity(edges.len());
    let mut next: Vec<usize> = Vec::with_capacity(edges.len());

    let first = walk(start, &mut cursor)?;
    let mut head = NIL;
    for &e in first.iter().rev() {
        value.push(e);
        next.push(head);
        head = value.len() - 1;
    }

    let mut prev = NIL;
    let mut pos = head;
    while pos != NIL {
        let v = edges[value[pos]].0;
        if cursor[v] < adj[v].len() {
            let sub = walk(v, &mut cursor)?;
            // Link the subwalk in front of `pos`.
            let mut chain_head = pos;
            for &e in sub.iter().rev() {
                value.push(e);
                next.push(chain_head);
                chain_head = value.len() - 1;
            }
            if prev == NIL {
                head = chain_head;
            } else {
                next[prev] = chain_head;
            }
            pos = chain_head;
        } else {
            prev = pos;
            pos = next[pos];
        }
    }

    let mut cycle = Vec::with_capacity(edges.len());
    let mut node = head;
    while node != NIL {
        cycle.push(value[node]);
        node = next[node];
    }
    if cycle.len() == edges.len() {
        Some(cycle)
    } else {
        None
    }
}
