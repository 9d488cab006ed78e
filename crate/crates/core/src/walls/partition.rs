//! Edge classes under the square relation and their two sides.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::MedianGraph;

pub(crate) struct EdgePartition {
    pub class_of_edge: Vec<usize>,
    /// Edge ids per class, ascending. Classes are numbered by their least edge.
    pub classes: Vec<Vec<usize>>,
    /// Per class, the side not containing vertex 0.
    pub upper: Vec<FixedBitSet>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Unions opposite edges of every chordless 4-cycle.
pub(crate) fn square_classes(g: &MedianGraph) -> (Vec<usize>, Vec<Vec<usize>>) {
    let m = g.edge_count();
    let mut uf = UnionFind::new(m);
    for a in 0..g.vertex_count() {
        let nb = g.neighbors(a);
        for (i, &b) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                if g.has_edge(b, c) {
                    continue;
                }
                for &d in g.neighbors(b) {
                    if d == a || d <= a || !g.has_edge(d, c) || g.has_edge(a, d) {
                        continue;
                    }
                    let e = |x, y| g.edge_id(x, y).expect("edge");
                    uf.union(e(a, b), e(c, d));
                    uf.union(e(a, c), e(b, d));
                }
            }
        }
    }
    let mut class_of_root = vec![usize::MAX; m];
    let mut class_of_edge = vec![0; m];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for e in 0..m {
        let r = uf.find(e);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes.len();
            classes.push(Vec::new());
        }
        class_of_edge[e] = class_of_root[r];
        classes[class_of_root[r]].push(e);
    }
    (class_of_edge, classes)
}

/// Square classes together with their sides; fails unless every class
/// splits the graph into exactly two components crossed by all its edges.
pub(crate) fn partition_edges(g: &MedianGraph) -> Result<EdgePartition> {
    let (class_of_edge, classes) = square_classes(g);
    let n = g.vertex_count();
    let mut upper = Vec::with_capacity(classes.len());
    let mut comp = vec![usize::MAX; n];
    for (c, members) in classes.iter().enumerate() {
        comp.iter_mut().for_each(|x| *x = usize::MAX);
        let mut components = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = components;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if comp[w] == usize::MAX
                        && class_of_edge[g.edge_id(u, w).expect("edge")] != c
                    {
                        comp[w] = components;
                        queue.push_back(w);
                    }
                }
            }
            components += 1;
        }
        if components != 2 {
            return Err(Error::NotTwoSided {
                class: c,
                components,
            });
        }
        if let Some(&e) = members.iter().find(|&&e| {
            let (u, v) = g.edges()[e];
            comp[u] == comp[v]
        }) {
            let (u, v) = g.edges()[e];
            return Err(Error::NotMedianGraph(format!(
                "edge {}-{} of class {c} does not cross between its sides",
                g.label(u),
                g.label(v)
            )));
        }
        let mut side = FixedBitSet::with_capacity(n);
        for v in 0..n {
            if comp[v] == 1 {
                side.insert(v);
            }
        }
        upper.push(side);
    }
    Ok(EdgePartition {
        class_of_edge,
        classes,
        upper,
    })
}
