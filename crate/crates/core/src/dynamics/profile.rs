//! Essentiality and growth profiles over a range of window radii.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::lazy::LazyComplex;
use super::window::{Edge, WallNamer, Window};
use crate::error::{Error, Result};
use crate::graph::MedianGraph;
use crate::walls::{Side, WallId, WallSet};

fn multi_source_bfs(g: &MedianGraph, sources: &FixedBitSet) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue: VecDeque<usize> = sources.ones().collect();
    for s in sources.ones() {
        dist[s] = 0;
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Largest distance from a vertex of the `side` halfspace to the other one.
fn halfspace_depth(g: &MedianGraph, ws: &WallSet, h: WallId, side: Side) -> usize {
    let dist = multi_source_bfs(g, ws.halfspace(h, side.flip()));
    ws.halfspace(h, side).ones().map(|v| dist[v]).max().unwrap_or(0)
}

fn sorted_radii(radii: &[usize]) -> Result<Vec<usize>> {
    let mut r = radii.to_vec();
    r.sort_unstable();
    r.dedup();
    if r.is_empty() {
        return Err(Error::BadParams("at least one radius is required".into()));
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfspaceDepths {
    /// Labels of the wall's edge nearest the basepoint.
    pub edge: (String, String),
    /// Depth of the halfspace containing the basepoint, per radius.
    pub near: Vec<usize>,
    /// Depth of the other halfspace, per radius.
    pub far: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EssentialityProfile {
    pub complex: String,
    pub radii: Vec<usize>,
    /// Walls of the smallest window.
    pub walls: Vec<HalfspaceDepths>,
}

/// For every wall of the smallest window, the depth of both halfspaces in
/// each window: the largest distance from a vertex of the halfspace to the
/// complementary halfspace.
pub fn essentiality_profile(complex: &dyn LazyComplex, radii: &[usize]) -> Result<EssentialityProfile> {
    let radii = sorted_radii(radii)?;
    let mut namer = WallNamer::new(complex);
    let windows = radii
        .iter()
        .map(|&r| Window::build(&mut namer, r))
        .collect::<Result<Vec<_>>>()?;
    let roots: Vec<Edge> = windows[0].walls.ids().map(|h| windows[0].root(h).clone()).collect();
    let mut walls = Vec::with_capacity(roots.len());
    for root in &roots {
        let mut entry = HalfspaceDepths {
            edge: (complex.label(&root.0), complex.label(&root.1)),
            near: Vec::new(),
            far: Vec::new(),
        };
        for w in &windows {
            let h = w.wall(root).expect("windows grow with the radius");
            // The basepoint is vertex 0 and always on the lower side.
            entry.near.push(halfspace_depth(&w.graph, &w.walls, h, Side::Lower));
            entry.far.push(halfspace_depth(&w.graph, &w.walls, h, Side::Upper));
        }
        walls.push(entry);
    }
    Ok(EssentialityProfile {
        complex: complex.name(),
        radii,
        walls,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallShape {
    pub edge: (String, String),
    pub dual_edges: usize,
    /// Diameter of the graph on dual edges, two being adjacent when they
    /// are opposite sides of a square.
    pub edge_class_diameter: usize,
    /// Depth of the wall as a complex in its own right: the largest
    /// distance, inside the carrier, from a carrier vertex to the carrier of
    /// a crossing wall. Zero when nothing crosses.
    pub wall_depth: usize,
    pub crossing_walls: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperplaneProfile {
    pub complex: String,
    pub radius: usize,
    pub walls: Vec<WallShape>,
    pub max_wall_depth: usize,
}

/// How deep each wall of the window is as a complex of its own.
pub fn hyperplane_essentiality_profile(complex: &dyn LazyComplex, radius: usize) -> Result<HyperplaneProfile> {
    let mut namer = WallNamer::new(complex);
    let w = Window::build(&mut namer, radius)?;
    let ws = &w.walls;
    let walls: Vec<WallShape> = ws
        .ids()
        .map(|h| {
            let mut lower = ws.carrier(h).clone();
            lower.intersect_with(ws.halfspace(h, Side::Lower));
            let side: Vec<usize> = lower.ones().collect();
            let edge_class_diameter = side
                .iter()
                .flat_map(|&a| side.iter().map(move |&b| (a, b)))
                .map(|(a, b)| ws.distance(a, b))
                .max()
                .unwrap_or(0);
            let mut wall_depth = 0;
            for k in ws.crossing_row(h).ones() {
                let mut target = ws.carrier(h).clone();
                target.intersect_with(ws.carrier(k));
                let dist = multi_source_bfs(&w.graph, &target);
                for v in ws.carrier(h).ones() {
                    wall_depth = wall_depth.max(dist[v]);
                }
            }
            let (a, b) = w.root(h);
            WallShape {
                edge: (complex.label(a), complex.label(b)),
                dual_edges: ws.dual_edges(h).len(),
                edge_class_diameter,
                wall_depth,
                crossing_walls: ws.crossing_row(h).count_ones(..),
            }
        })
        .collect();
    Ok(HyperplaneProfile {
        complex: complex.name(),
        radius,
        max_wall_depth: walls.iter().map(|s| s.wall_depth).max().unwrap_or(0),
        walls,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub radius: usize,
    /// `|B_R(x0)|`.
    pub vol: usize,
    /// Number of walls crossing `B_R(x0)`.
    pub hvol: usize,
    pub max_facing: usize,
    /// False when `max_facing` is only a lower bound.
    pub facing_certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthProfile {
    pub complex: String,
    pub rows: Vec<GrowthRow>,
}

pub fn growth_profile(complex: &dyn LazyComplex, radii: &[usize]) -> Result<GrowthProfile> {
    let radii = sorted_radii(radii)?;
    let mut namer = WallNamer::new(complex);
    let mut rows = Vec::with_capacity(radii.len());
    for r in radii {
        let w = Window::build(&mut namer, r)?;
        let all: Vec<WallId> = w.walls.ids().collect();
        let (max_facing, facing_certified) = if all.is_empty() {
            (0, true)
        } else {
            let s = w.walls.max_facing_tuple(&all)?;
            (s.size, s.certified)
        };
        rows.push(GrowthRow {
            radius: r,
            vol: w.ball.count_ones(..),
            hvol: w.walls.len(),
            max_facing,
            facing_certified,
        });
    }
    Ok(GrowthProfile {
        complex: complex.name(),
        rows,
    })
}
