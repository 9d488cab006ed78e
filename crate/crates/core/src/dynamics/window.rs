//! Finite windows: convex hulls of balls in a lazy complex.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::lazy::{Automorphism, LazyComplex, Oracle, Point};
use crate::error::{Error, Result};
use crate::graph::{MedianGraph, Vertex};
use crate::walls::{WallId, WallSet};

/// Largest window, in vertices, that will be built.
pub const WINDOW_VERTEX_LIMIT: usize = 250_000;

/// An ambient edge `(near, far)` with `far` one step further from the basepoint.
pub type Edge = (Point, Point);

/// Names ambient walls by their edge nearest the basepoint, which is unique.
pub(crate) struct WallNamer<'a> {
    pub oracle: Oracle<'a>,
    root: HashMap<Edge, Edge>,
}

impl<'a> WallNamer<'a> {
    pub fn new(complex: &'a dyn LazyComplex) -> Self {
        WallNamer {
            oracle: Oracle::new(complex),
            root: HashMap::new(),
        }
    }

    pub fn orient(&mut self, a: Point, b: Point) -> Edge {
        if self.oracle.layer(&a) < self.oracle.layer(&b) {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// The edge of the wall through `(a, b)` nearest the basepoint.
    ///
    /// If `b` has a second neighbour `c` one step nearer, the square through
    /// `a`, `b`, `c` has a fourth corner `m`, and `(m, c)` is parallel to
    /// `(a, b)`. Otherwise `b` is the gate of the basepoint onto the far
    /// halfspace and `(a, b)` is the root.
    pub fn root(&mut self, a: &Point, b: &Point) -> Edge {
        if let Some(r) = self.root.get(&(a.clone(), b.clone())) {
            return r.clone();
        }
        let k = self.oracle.layer(b);
        let others: Vec<Point> = self
            .oracle
            .neighbors(b)
            .into_iter()
            .filter(|c| c != a)
            .collect();
        let mut down = None;
        for c in others {
            if self.oracle.layer(&c) + 1 == k {
                down = Some(c);
                break;
            }
        }
        let r = match down {
            None => (a.clone(), b.clone()),
            Some(c) => {
                let m = self
                    .oracle
                    .neighbors(a)
                    .into_iter()
                    .find(|m| k >= 2 && self.oracle.layer(m) + 2 == k && self.oracle.adjacent(m, &c))
                    .expect("median graphs satisfy the quadrangle condition");
                self.root(&m, &c)
            }
        };
        self.root.insert((a.clone(), b.clone()), r.clone());
        r
    }

    /// Distance from the basepoint to the far halfspace of a wall.
    pub fn depth(&mut self, root: &Edge) -> usize {
        self.oracle.layer(&root.1)
    }

    pub fn root_of_image(&mut self, g: &dyn Automorphism, root: &Edge, power: i64) -> Edge {
        let a = g.power(&root.0, power);
        let b = g.power(&root.1, power);
        let (a, b) = self.orient(a, b);
        self.root(&a, &b)
    }
}

/// The convex hull of `B_R(x0)` as a finite median graph.
pub struct Window {
    pub radius: usize,
    pub points: Vec<Point>,
    index: HashMap<Point, Vertex>,
    pub graph: MedianGraph,
    pub walls: WallSet,
    /// Vertices at distance at most `radius` from the basepoint.
    pub ball: FixedBitSet,
    roots: Vec<Edge>,
    root_index: HashMap<Edge, WallId>,
    /// Distance from the basepoint to the far halfspace, per wall.
    pub depth: Vec<usize>,
}

impl Window {
    /// The basepoint is always vertex 0.
    pub(crate) fn build(namer: &mut WallNamer<'_>, radius: usize) -> Result<Window> {
        let x0 = namer.oracle.x0.clone();
        let cap = 3 * radius;
        let mut index = HashMap::from([(x0.clone(), 0)]);
        let mut points = vec![x0];
        let mut queue = VecDeque::from([0]);
        while let Some(z) = queue.pop_front() {
            let zp = points[z].clone();
            let k = namer.oracle.layer(&zp);
            for w in namer.oracle.neighbors(&zp) {
                if index.contains_key(&w) || namer.oracle.layer(&w) != k + 1 {
                    continue;
                }
                let root = namer.root(&zp, &w);
                if namer.depth(&root) > radius {
                    continue;
                }
                if k + 1 > cap {
                    return Err(Error::MedianClosureOverflow { reached: k + 1, cap });
                }
                if points.len() == WINDOW_VERTEX_LIMIT {
                    return Err(Error::WindowTooLarge(WINDOW_VERTEX_LIMIT));
                }
                index.insert(w.clone(), points.len());
                queue.push_back(points.len());
                points.push(w);
            }
        }
        let mut edges = Vec::new();
        let mut ball = FixedBitSet::with_capacity(points.len());
        for (u, p) in points.iter().enumerate() {
            if namer.oracle.layer(p) <= radius {
                ball.insert(u);
            }
            for q in namer.oracle.neighbors(p) {
                if let Some(&v) = index.get(&q) {
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
        }
        let labels = points.iter().map(|p| namer.oracle.complex.label(p)).collect();
        let mut graph = MedianGraph::from_parts(labels, edges)?;
        let report = graph.verify_median();
        if !report.passed() {
            return Err(Error::NotMedianGraph(format!(
                "window of radius {radius}: {}",
                report.reason.unwrap_or_else(|| "median check failed".into())
            )));
        }
        let walls = WallSet::compute(&graph)?;
        let mut roots = Vec::with_capacity(walls.len());
        let mut depth = Vec::with_capacity(walls.len());
        for h in walls.ids() {
            let (u, v) = walls.representative_edge(h);
            let (a, b) = namer.orient(points[u].clone(), points[v].clone());
            let r = namer.root(&a, &b);
            depth.push(namer.depth(&r));
            roots.push(r);
        }
        let root_index = roots.iter().cloned().zip(walls.ids()).collect();
        Ok(Window {
            radius,
            points,
            index,
            graph,
            walls,
            ball,
            roots,
            root_index,
            depth,
        })
    }

    pub fn vertex(&self, p: &Point) -> Option<Vertex> {
        self.index.get(p).copied()
    }

    pub fn root(&self, h: WallId) -> &Edge {
        &self.roots[h]
    }

    pub fn wall(&self, root: &Edge) -> Option<WallId> {
        self.root_index.get(root).copied()
    }

    pub fn too_small(&self, detail: impl Into<String>) -> Error {
        Error::WindowTooSmall {
            radius: self.radius,
            detail: detail.into(),
        }
    }

    /// Checks that `g` and its inverse preserve adjacency on every window
    /// edge and compose to the identity on every window vertex.
    pub(crate) fn check_automorphism(&self, namer: &mut WallNamer<'_>, g: &dyn Automorphism) -> Result<()> {
        for p in &self.points {
            if &g.inverse(&g.apply(p)) != p || &g.apply(&g.inverse(p)) != p {
                return Err(Error::BadAutomorphism(format!(
                    "{} is not inverted at {}",
                    g.name(),
                    namer.oracle.complex.label(p)
                )));
            }
        }
        for &(u, v) in self.graph.edges() {
            let (a, b) = (&self.points[u], &self.points[v]);
            if !namer.oracle.adjacent(&g.apply(a), &g.apply(b)) || !namer.oracle.adjacent(&g.inverse(a), &g.inverse(b)) {
                return Err(Error::BadAutomorphism(format!(
                    "{} breaks the edge {} - {}",
                    g.name(),
                    self.graph.label(u),
                    self.graph.label(v)
                )));
            }
        }
        Ok(())
    }
}
