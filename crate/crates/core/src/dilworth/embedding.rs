//! Walls meeting a ball, restriction quotients and grid embeddings of balls.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{k_bound, ChainPartition, HalfspacePoset, KBound, OrientationPolicy};
use crate::error::{Error, Result};
use crate::graph::{MedianGraph, Vertex};
use crate::walls::{FacingSearch, Side, WallId, WallSet};

/// The walls crossing the closed ball `B_R(x0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallWallSet {
    pub x0: Vertex,
    pub radius: usize,
    pub ball: FixedBitSet,
    pub walls: Vec<WallId>,
}

pub fn hyperplanes_in_ball(g: &MedianGraph, ws: &WallSet, x0: Vertex, radius: usize) -> Result<BallWallSet> {
    g.check_vertex(x0)?;
    let dist = g.distances_from(x0);
    let mut ball = FixedBitSet::with_capacity(g.vertex_count());
    for (v, &d) in dist.iter().enumerate() {
        if d <= radius {
            ball.insert(v);
        }
    }
    let walls = ws.walls_crossing_set(&ball).ones().collect();
    Ok(BallWallSet {
        x0,
        radius,
        ball,
        walls,
    })
}

/// The cube complex dual to a subset of walls.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub graph: MedianGraph,
    /// Quotient vertex of each original vertex.
    pub class_of: Vec<Vertex>,
    /// Original wall of each quotient wall.
    pub wall_map: Vec<WallId>,
    pub walls: WallSet,
}

/// Collapses every wall outside `subset`. Classes are numbered by their
/// least member and take that member's label.
pub fn restriction_quotient(g: &MedianGraph, ws: &WallSet, subset: &[WallId]) -> Result<Quotient> {
    for &h in subset {
        ws.check_wall(h)?;
    }
    let mut mask = FixedBitSet::with_capacity(ws.len());
    mask.extend(subset.iter().copied());
    if mask.is_clear() {
        return Err(Error::EmptySet);
    }
    let n = g.vertex_count();
    let mut key_to_class: HashMap<FixedBitSet, Vertex> = HashMap::new();
    let mut class_of = Vec::with_capacity(n);
    let mut labels = Vec::new();
    for v in 0..n {
        let mut key = ws.orientation(v).clone();
        key.intersect_with(&mask);
        let next = key_to_class.len();
        let c = *key_to_class.entry(key).or_insert(next);
        if c == next {
            labels.push(g.label(v).to_string());
        }
        class_of.push(c);
    }
    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, _)| mask.contains(ws.wall_of_edge(e)))
        .map(|(_, &(u, v))| {
            let (a, b) = (class_of[u], class_of[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let mut graph = MedianGraph::from_parts(labels, edges)?;
    let report = graph.verify_median();
    if !report.passed() {
        return Err(Error::NotMedianGraph(report.reason.unwrap_or_else(|| "quotient failed the median check".into())));
    }
    let walls = WallSet::compute(&graph)?;
    let mut reps = vec![usize::MAX; graph.vertex_count()];
    for (v, &c) in class_of.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = v;
        }
    }
    let wall_map = walls
        .ids()
        .map(|q| {
            let (a, b) = walls.representative_edge(q);
            let mut diff = ws.separating_bits(reps[a], reps[b]);
            diff.intersect_with(&mask);
            diff.minimum().expect("adjacent classes differ on one wall")
        })
        .collect();
    Ok(Quotient {
        graph,
        class_of,
        wall_map,
        walls,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridEmbedding {
    pub x0: Vertex,
    pub radius: usize,
    /// Number of chains, which is the dimension of the target grid.
    pub dimension: usize,
    pub k: KBound,
    pub within_k: bool,
    pub ball_walls: usize,
    /// `2 R K(D, N)`.
    pub ball_wall_bound: u64,
    pub within_ball_wall_bound: bool,
    pub partition: ChainPartition,
    /// Chosen halfspace of each chain wall, chain by chain.
    pub sides: Vec<Vec<Side>>,
    /// Vertices of the ball in index order with their coordinates.
    pub coordinates: Vec<(Vertex, Vec<i64>)>,
    pub facing_search_certified: bool,
    pub pairs_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum EmbeddingOutcome {
    FacingTuple { search: FacingSearch },
    Embedding(Box<GridEmbedding>),
}

/// Either a facing `(N + 1)`-tuple among the walls meeting `B_R(x0)`, or an
/// ℓ1-isometric embedding of that ball into a grid, checked on every pair.
pub fn grid_embedding(
    g: &MedianGraph,
    ws: &WallSet,
    x0: Vertex,
    radius: usize,
    n: usize,
) -> Result<EmbeddingOutcome> {
    if n == 0 {
        return Err(Error::BadParams("N must be at least 1".into()));
    }
    let hr = hyperplanes_in_ball(g, ws, x0, radius)?;
    let search = ws.max_facing_tuple(&hr.walls)?;
    if search.size > n {
        let mut search = search;
        search.walls.truncate(n + 1);
        let keep = search.walls.clone();
        search.halfspaces.retain(|(h, _)| keep.contains(h));
        search.size = n + 1;
        return Ok(EmbeddingOutcome::FacingTuple { search });
    }
    let dimension = ws.dimension().0;
    let k = k_bound(dimension.max(1) as u64, n as u64)?;
    let poset = HalfspacePoset::oriented(g, ws, &hr.walls, OrientationPolicy::LexLeast);
    let cover = poset.poset.min_chain_cover();
    let partition = ChainPartition {
        chains: cover.iter().map(|c| poset.walls_of(c)).collect(),
        antichain: poset.walls_of(&poset.poset.max_antichain()),
    };
    let sides: Vec<Vec<Side>> = cover
        .iter()
        .map(|c| c.iter().map(|&i| poset.elements[i].1).collect())
        .collect();
    let raw = |v: Vertex| -> Vec<i64> {
        partition
            .chains
            .iter()
            .zip(&sides)
            .map(|(chain, s)| chain.iter().zip(s).filter(|&(&h, &side)| ws.side_of(h, v) != side).count() as i64)
            .collect()
    };
    let origin = raw(x0);
    let coordinates: Vec<(Vertex, Vec<i64>)> = hr
        .ball
        .ones()
        .map(|v| {
            let c = raw(v).iter().zip(&origin).map(|(a, b)| a - b).collect();
            (v, c)
        })
        .collect();
    let mut pairs = 0;
    for (i, (u, cu)) in coordinates.iter().enumerate() {
        let du = g.distances_from(*u);
        for (v, cv) in &coordinates[i + 1..] {
            let l1: i64 = cu.iter().zip(cv).map(|(a, b)| (a - b).abs()).sum();
            if l1 as usize != du[*v] {
                return Err(Error::EmbeddingVerificationFailed(*u, *v));
            }
            pairs += 1;
        }
    }
    let bound = 2 * radius as u64 * k.value;
    Ok(EmbeddingOutcome::Embedding(Box::new(GridEmbedding {
        x0,
        radius,
        dimension: partition.chains.len(),
        within_k: partition.chains.len() as u64 <= k.value,
        k,
        ball_walls: hr.walls.len(),
        ball_wall_bound: bound,
        within_ball_wall_bound: hr.walls.len() as u64 <= bound,
        partition,
        sides,
        coordinates,
        facing_search_certified: search.certified,
        pairs_checked: pairs,
    })))
}
