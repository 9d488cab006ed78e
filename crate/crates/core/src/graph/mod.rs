//! Finite median graphs: the 1-skeleta of finite CAT(0) cube complexes.
//!
//! A [`MedianGraph`] is loaded unvalidated from a [`GraphDocument`] or built
//! by a generator, and becomes usable by the wall machinery once
//! [`MedianGraph::verify_median`] has passed. Vertices are dense indices;
//! labels are opaque tokens used only for I/O.

mod document;
mod generators;
mod verify;

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use document::{GeneratorSpec, GraphDocument};
pub use generators::generate;
pub use verify::{MedianReport, MedianWitness, Verdict, VerifyMethod};

pub type Vertex = usize;

#[derive(Debug, Clone)]
pub struct MedianGraph {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
    adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
    edge_ids: HashMap<(Vertex, Vertex), usize>,
    validated: bool,
}

impl MedianGraph {
    /// Builds a graph from a document. The result is connected and simple
    /// but not yet validated as median.
    pub fn load(doc: &GraphDocument) -> Result<Self> {
        if let Some(spec) = &doc.generator {
            if !doc.vertices.is_empty() || !doc.edges.is_empty() {
                return Err(Error::Schema(
                    "a document holds either a generator or an explicit vertex/edge list".into(),
                ));
            }
            return generate(spec);
        }
        let mut index = HashMap::with_capacity(doc.vertices.len());
        for (i, label) in doc.vertices.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(label.clone()));
            }
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (a, b) in &doc.edges {
            let (Some(&u), Some(&v)) = (index.get(a), index.get(b)) else {
                return Err(Error::DanglingEdge(a.clone(), b.clone()));
            };
            edges.push((u, v));
        }
        Self::from_parts(doc.vertices.clone(), edges)
    }

    /// Builds a graph from labels and index pairs, rejecting loops,
    /// repeated edges and disconnected input.
    pub fn from_parts(labels: Vec<String>, raw_edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(label.clone()));
            }
        }
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (u, v) in raw_edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange(u.max(v)));
            }
            if u == v {
                return Err(Error::SelfLoop(labels[u].clone()));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        for pair in edges.windows(2) {
            if pair[0] == pair[1] {
                let (u, v) = pair[0];
                return Err(Error::DuplicateEdge(labels[u].clone(), labels[v].clone()));
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut edge_ids = HashMap::with_capacity(edges.len());
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            edge_ids.insert((u, v), e);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let graph = MedianGraph {
            labels,
            index,
            adj,
            edges,
            edge_ids,
            validated: false,
        };
        let components = graph.component_count();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(graph)
    }

    fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub(crate) fn mark_validated(&mut self) {
        self.validated = true;
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Result<Vertex> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<Vertex> {
        if v < self.vertex_count() {
            Ok(v)
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`; the position is the edge id.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edge_ids.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Breadth-first distances from `source` to every vertex.
    pub fn distances_from(&self, source: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, x: Vertex, y: Vertex) -> Result<usize> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok(self.distances_from(x)[y])
    }

    /// All-pairs distances; quadratic memory, intended for small graphs.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count())
            .map(|s| self.distances_from(s))
            .collect()
    }

    /// `I(a, b)`: the vertices lying on some geodesic from `a` to `b`.
    pub fn interval(&self, a: Vertex, b: Vertex) -> Result<FixedBitSet> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let da = self.distances_from(a);
        let db = self.distances_from(b);
        Ok(interval_from_rows(&da, &db))
    }

    /// The unique vertex of `I(a,b) ∩ I(b,c) ∩ I(a,c)`.
    pub fn median(&self, a: Vertex, b: Vertex, c: Vertex) -> Result<Vertex> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        self.check_vertex(c)?;
        let da = self.distances_from(a);
        let db = self.distances_from(b);
        let dc = self.distances_from(c);
        let mut found = None;
        let mut count = 0;
        for m in 0..self.vertex_count() {
            if da[m] + db[m] == da[b] && db[m] + dc[m] == db[c] && da[m] + dc[m] == da[c] {
                count += 1;
                found = Some(m);
            }
        }
        match (count, found) {
            (1, Some(m)) => Ok(m),
            _ => Err(Error::NotMedianGraph(format!(
                "triple ({}, {}, {}) has {count} medians",
                self.labels[a], self.labels[b], self.labels[c]
            ))),
        }
    }

    /// Subgraph induced on `keep`, with the original labels. The result is
    /// unvalidated; `Disconnected` is returned if `keep` is not connected.
    pub fn induced_subgraph(&self, keep: &FixedBitSet) -> Result<(MedianGraph, Vec<Vertex>)> {
        let members: Vec<Vertex> = keep.ones().collect();
        let mut local = HashMap::with_capacity(members.len());
        for (i, &v) in members.iter().enumerate() {
            local.insert(v, i);
        }
        let labels = members.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((*local.get(&u)?, *local.get(&v)?)))
            .collect();
        Ok((MedianGraph::from_parts(labels, edges)?, members))
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
                .collect(),
            generator: None,
        }
    }

    /// Index of the lexicographically least label.
    pub fn lex_least_vertex(&self) -> Vertex {
        (0..self.vertex_count())
            .min_by(|&a, &b| self.labels[a].cmp(&self.labels[b]))
            .unwrap_or(0)
    }

    /// A geodesic from `a` to `b`, choosing the least-index neighbour that
    /// makes progress at every step.
    pub fn geodesic(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let db = self.distances_from(b);
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| db[w] + 1 == db[cur])
                .expect("connected graph has a descending neighbour");
            path.push(cur);
        }
        path
    }
}

pub(crate) fn interval_from_rows(da: &[usize], db: &[usize]) -> FixedBitSet {
    let n = da.len();
    let target = da.iter().zip(db).map(|(&x, &y)| x + y).min().unwrap_or(0);
    let mut set = FixedBitSet::with_capacity(n);
    for v in 0..n {
        if da[v] + db[v] == target {
            set.insert(v);
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(vertices: &[&str], edges: &[(&str, &str)]) -> GraphDocument {
        GraphDocument {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            generator: None,
        }
    }

    fn gen(name: &str, params: &[i64]) -> MedianGraph {
        generate(&GeneratorSpec::new(name, params)).unwrap()
    }

    #[test]
    fn load_single_edge() {
        let g = MedianGraph::load(&doc(&["a", "b"], &[("a", "b")])).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert!(!g.is_validated());
    }

    #[test]
    fn load_errors() {
        let err = MedianGraph::load(&doc(&["a", "b"], &[("a", "z")])).unwrap_err();
        assert_eq!(err.code(), "DANGLING_EDGE");
        let err = MedianGraph::load(&doc(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]))
            .unwrap_err();
        assert_eq!(err, Error::Disconnected { components: 2 });
        let err = MedianGraph::load(&doc(&["a", "a"], &[])).unwrap_err();
        assert_eq!(err.code(), "DUPLICATE_VERTEX");
        let err = MedianGraph::load(&doc(&["a", "b"], &[("a", "b"), ("b", "a")])).unwrap_err();
        assert_eq!(err.code(), "DUPLICATE_EDGE");
        let err = MedianGraph::load(&doc(&["a"], &[("a", "a")])).unwrap_err();
        assert_eq!(err.code(), "SELF_LOOP");
    }

    #[test]
    fn distances_on_fixtures() {
        let p5 = gen("path", &[5]);
        assert_eq!(p5.distance(p5.vertex("v0").unwrap(), p5.vertex("v5").unwrap()).unwrap(), 5);
        assert_eq!(p5.distance(3, 3).unwrap(), 0);
        let g33 = gen("grid", &[3, 3]);
        let a = g33.vertex("(0,0)").unwrap();
        let b = g33.vertex("(3,3)").unwrap();
        assert_eq!(g33.distance(a, b).unwrap(), 6);
        assert!(g33.distance(a, 99).is_err());
    }

    #[test]
    fn intervals() {
        let g33 = gen("grid", &[3, 3]);
        let v = |s: &str| g33.vertex(s).unwrap();
        let i = g33.interval(v("(0,0)"), v("(0,0)")).unwrap();
        assert_eq!(i.ones().collect::<Vec<_>>(), vec![v("(0,0)")]);
        let i = g33.interval(v("(0,0)"), v("(1,1)")).unwrap();
        let mut got: Vec<_> = i.ones().map(|x| g33.label(x).to_string()).collect();
        got.sort();
        assert_eq!(got, ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
    }

    /// Every vertex visited by some shortest path, found by enumerating paths.
    fn interval_by_paths(g: &MedianGraph, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let d = g.distance_matrix();
        let target = d[a][b];
        let mut hit = vec![false; g.vertex_count()];
        let mut path = vec![a];
        fn walk(
            g: &MedianGraph,
            d: &[Vec<usize>],
            b: Vertex,
            target: usize,
            path: &mut Vec<Vertex>,
            hit: &mut [bool],
        ) {
            let cur = *path.last().unwrap();
            if path.len() - 1 == target {
                if cur == b {
                    for &v in path.iter() {
                        hit[v] = true;
                    }
                }
                return;
            }
            for &w in g.neighbors(cur) {
                if !path.contains(&w) {
                    path.push(w);
                    walk(g, d, b, target, path, hit);
                    path.pop();
                }
            }
        }
        walk(g, &d, b, target, &mut path, &mut hit);
        (0..g.vertex_count()).filter(|&v| hit[v]).collect()
    }

    #[test]
    fn interval_matches_path_enumeration_on_cyclic_squares() {
        let c5 = gen("cyclic_squares", &[5]);
        let b0 = c5.vertex("b0").unwrap();
        let b2 = c5.vertex("b2").unwrap();
        let expected = interval_by_paths(&c5, b0, b2);
        let got: Vec<_> = c5.interval(b0, b2).unwrap().ones().collect();
        assert_eq!(got, expected);
        for a in 0..c5.vertex_count() {
            for b in 0..c5.vertex_count() {
                let got: Vec<_> = c5.interval(a, b).unwrap().ones().collect();
                assert_eq!(got, interval_by_paths(&c5, a, b));
            }
        }
    }

    #[test]
    fn medians_on_fixtures() {
        let g33 = gen("grid", &[3, 3]);
        let v = |s: &str| g33.vertex(s).unwrap();
        assert_eq!(g33.median(v("(0,0)"), v("(3,0)"), v("(0,3)")).unwrap(), v("(0,0)"));
        let t3 = gen("tree", &[3, 1]);
        let c = t3.vertex("o").unwrap();
        assert_eq!(t3.median(1, 2, 3).unwrap(), c);
        assert_eq!(g33.median(v("(2,1)"), v("(2,1)"), v("(0,3)")).unwrap(), v("(2,1)"));
    }

    #[test]
    fn median_reports_non_median_triples() {
        let c6 = MedianGraph::load(&doc(
            &["v0", "v1", "v2", "v3", "v4", "v5"],
            &[("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v0")],
        ))
        .unwrap();
        assert_eq!(c6.median(0, 2, 4).unwrap_err().code(), "NOT_MEDIAN_GRAPH");
    }

    #[test]
    fn metric_axioms_on_small_fixtures() {
        for g in [gen("grid", &[2, 3]), gen("cyclic_squares", &[6]), gen("staircase", &[4])] {
            let d = g.distance_matrix();
            let n = g.vertex_count();
            for x in 0..n {
                assert_eq!(d[x][x], 0);
                for y in 0..n {
                    assert_eq!(d[x][y], d[y][x]);
                    if x != y {
                        assert!(d[x][y] > 0);
                    }
                    for z in 0..n {
                        assert!(d[x][z] <= d[x][y] + d[y][z]);
                    }
                }
            }
        }
    }

    #[test]
    fn induced_subgraph_keeps_labels() {
        let g = gen("path", &[3]);
        let mut keep = FixedBitSet::with_capacity(4);
        keep.insert(1);
        keep.insert(2);
        let (sub, map) = g.induced_subgraph(&keep).unwrap();
        assert_eq!(map, vec![1, 2]);
        assert_eq!(sub.labels(), ["v1", "v2"]);
        assert_eq!(sub.edge_count(), 1);
        keep.insert(0);
        keep.set(1, false);
        assert!(g.induced_subgraph(&keep).is_err());
    }
}
