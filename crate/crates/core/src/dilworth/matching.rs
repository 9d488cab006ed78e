//! Hopcroft–Karp maximum bipartite matching.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Right partner of each left vertex.
    pub left: Vec<Option<usize>>,
    /// Left partner of each right vertex.
    pub right: Vec<Option<usize>>,
    pub size: usize,
}

/// `adj[u]` lists the right neighbours of left vertex `u`. Neighbours are
/// tried in the given order, which fixes the result.
pub fn hopcroft_karp(right_count: usize, adj: &[Vec<usize>]) -> Matching {
    let n = adj.len();
    let mut pair_l = vec![NIL; n];
    let mut pair_r = vec![NIL; right_count];
    let mut dist = vec![0usize; n];
    let mut size = 0;
    loop {
        // Layer the free left vertices and everything reachable by alternating paths.
        let mut queue = VecDeque::new();
        for u in 0..n {
            if pair_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = pair_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; n];
        for u in 0..n {
            if pair_l[u] == NIL && augment(u, adj, &mut pair_l, &mut pair_r, &mut dist, &mut next) {
                size += 1;
            }
        }
    }
    Matching {
        left: pair_l.iter().map(|&v| (v != NIL).then_some(v)).collect(),
        right: pair_r.iter().map(|&u| (u != NIL).then_some(u)).collect(),
        size,
    }
}

fn augment(
    root: usize,
    adj: &[Vec<usize>],
    pair_l: &mut [usize],
    pair_r: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    // Iterative depth-first search along the layering.
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        if next[u] == adj[u].len() {
            dist[u] = usize::MAX;
            stack.pop();
            continue;
        }
        let v = adj[u][next[u]];
        let w = pair_r[v];
        if w == NIL {
            // Flip the path recorded on the stack.
            let mut right = v;
            while let Some(l) = stack.pop() {
                let prev = pair_l[l];
                pair_l[l] = right;
                pair_r[right] = l;
                right = prev;
            }
            return true;
        }
        if dist[w] == dist[u] + 1 && dist[w] != usize::MAX {
            stack.push(w);
        } else {
            next[u] += 1;
        }
    }
    false
}
