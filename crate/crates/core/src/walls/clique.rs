//! Maximum clique by branch and bound with a greedy-colouring bound.

use fixedbitset::FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CliqueResult {
    pub members: Vec<usize>,
    /// False when the node budget ran out before the search space was closed.
    pub certified: bool,
}

struct Search<'a> {
    adj: &'a [FixedBitSet],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
    aborted: bool,
}

/// `adj[v]` must be symmetric and irreflexive. Ties resolve towards the
/// clique found first in index order, so the result is deterministic.
pub(crate) fn max_clique(adj: &[FixedBitSet], budget: Option<u64>) -> CliqueResult {
    let n = adj.len();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut s = Search {
        adj,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        budget,
        aborted: false,
    };
    expand(&mut s, all);
    let mut members = s.best;
    members.sort_unstable();
    CliqueResult {
        members,
        certified: !s.aborted,
    }
}

/// Greedy sequential colouring; returns vertices ordered by colour together
/// with the colour count up to and including each vertex.
fn colour_sort(adj: &[FixedBitSet], p: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(p.count_ones(..));
    let mut bounds = Vec::with_capacity(order.capacity());
    let mut uncoloured = p.clone();
    let mut colour = 0;
    while !uncoloured.is_clear() {
        colour += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = q.minimum() {
            uncoloured.set(v, false);
            q.set(v, false);
            q.difference_with(&adj[v]);
            order.push(v);
            bounds.push(colour);
        }
    }
    (order, bounds)
}

fn expand(s: &mut Search<'_>, mut p: FixedBitSet) {
    let (order, bounds) = colour_sort(s.adj, &p);
    for i in (0..order.len()).rev() {
        if s.current.len() + bounds[i] <= s.best.len() {
            return;
        }
        s.nodes += 1;
        if s.budget.is_some_and(|b| s.nodes > b) {
            s.aborted = true;
            return;
        }
        let v = order[i];
        s.current.push(v);
        let mut next = p.clone();
        next.intersect_with(&s.adj[v]);
        if next.is_clear() {
            if s.current.len() > s.best.len() {
                s.best = s.current.clone();
            }
        } else {
            expand(s, next);
        }
        s.current.pop();
        p.set(v, false);
        if s.aborted {
            return;
        }
    }
}
