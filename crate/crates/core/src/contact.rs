//! The contact graph on walls, vertex projections, the single-point check
//! and hierarchy paths.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::convexity::{gate_projection, ConvexSubcomplex};
use crate::error::{Error, Result};
use crate::graph::{MedianGraph, Vertex};
use crate::walls::{WallId, WallSet};

/// Largest wall count for which the four-point check is offered.
pub const HYPERBOLICITY_LIMIT: usize = 60;

const UNREACHABLE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactDefinition {
    CarrierIntersection,
    NoThirdSeparates,
}

#[derive(Debug, Clone)]
pub struct ContactGraph {
    adj: Vec<FixedBitSet>,
    dist: Vec<Vec<usize>>,
    provenance: ContactDefinition,
}

/// `h ~ k` iff their carriers meet.
pub fn adjacency_by_carriers(ws: &WallSet) -> Vec<FixedBitSet> {
    let w = ws.len();
    let mut adj = vec![FixedBitSet::with_capacity(w); w];
    for h in 0..w {
        for k in h + 1..w {
            if !ws.carrier(h).is_disjoint(ws.carrier(k)) {
                adj[h].insert(k);
                adj[k].insert(h);
            }
        }
    }
    adj
}

/// `h ~ k` iff no third wall has `N(h)` and `N(k)` in opposite halfspaces.
pub fn adjacency_by_separation(ws: &WallSet) -> Vec<FixedBitSet> {
    use crate::walls::Side;
    let w = ws.len();
    // inside[m][s]: walls whose carrier lies in halfspace s of m.
    let inside: Vec<[FixedBitSet; 2]> = (0..w)
        .map(|m| {
            [Side::Lower, Side::Upper].map(|s| {
                let mut set = FixedBitSet::with_capacity(w);
                for a in 0..w {
                    if a != m && ws.carrier(a).is_subset(ws.halfspace(m, s)) {
                        set.insert(a);
                    }
                }
                set
            })
        })
        .collect();
    let mut adj = vec![FixedBitSet::with_capacity(w); w];
    for h in 0..w {
        for k in h + 1..w {
            let separated = (0..w).any(|m| {
                m != h
                    && m != k
                    && ((inside[m][0].contains(h) && inside[m][1].contains(k))
                        || (inside[m][1].contains(h) && inside[m][0].contains(k)))
            });
            if !separated {
                adj[h].insert(k);
                adj[k].insert(h);
            }
        }
    }
    adj
}

impl ContactGraph {
    /// Builds the graph by carrier intersection and checks it against the
    /// separation definition.
    pub fn build(ws: &WallSet) -> Result<ContactGraph> {
        let adj = adjacency_by_carriers(ws);
        let alt = adjacency_by_separation(ws);
        for h in 0..ws.len() {
            if adj[h] != alt[h] {
                let k = adj[h]
                    .symmetric_difference(&alt[h])
                    .next()
                    .expect("rows differ");
                return Err(Error::DefinitionMismatch(h, k));
            }
        }
        let dist = (0..adj.len()).map(|s| bfs(&adj, s)).collect();
        Ok(ContactGraph {
            adj,
            dist,
            provenance: ContactDefinition::CarrierIntersection,
        })
    }

    pub fn provenance(&self) -> ContactDefinition {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn adjacent(&self, h: WallId, k: WallId) -> bool {
        self.adj[h].contains(k)
    }

    pub fn neighbors(&self, h: WallId) -> impl Iterator<Item = WallId> + '_ {
        self.adj[h].ones()
    }

    pub fn edges(&self) -> Vec<(WallId, WallId)> {
        let mut out = Vec::new();
        for h in 0..self.len() {
            for k in self.adj[h].ones().filter(|&k| k > h) {
                out.push((h, k));
            }
        }
        out
    }

    pub fn distance(&self, h: WallId, k: WallId) -> Result<usize> {
        if h >= self.len() {
            return Err(Error::UnknownWall(h));
        }
        if k >= self.len() {
            return Err(Error::UnknownWall(k));
        }
        Ok(self.dist[h][k])
    }

    /// Lexicographically least geodesic from `h` to `k`.
    pub fn geodesic(&self, h: WallId, k: WallId) -> Result<Vec<WallId>> {
        let d = self.distance(h, k)?;
        if d == UNREACHABLE {
            return Err(Error::Disconnected { components: 2 });
        }
        let mut path = vec![h];
        let mut cur = h;
        while cur != k {
            cur = self.adj[cur]
                .ones()
                .find(|&m| self.dist[m][k] + 1 == self.dist[cur][k])
                .expect("geodesic step exists");
            path.push(cur);
        }
        Ok(path)
    }

    pub fn diameter_of(&self, set: &[WallId]) -> usize {
        let mut best = 0;
        for &a in set {
            for &b in set {
                best = best.max(self.dist[a][b]);
            }
        }
        best
    }

    /// Gromov four-point constant, doubled so it stays an integer. `None`
    /// above [`HYPERBOLICITY_LIMIT`] walls.
    pub fn four_point_delta_doubled(&self) -> Option<usize> {
        let w = self.len();
        if w > HYPERBOLICITY_LIMIT {
            return None;
        }
        let d = &self.dist;
        let mut worst = 0;
        for a in 0..w {
            for b in a + 1..w {
                for c in b + 1..w {
                    for e in c + 1..w {
                        let mut sums = [d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]];
                        sums.sort_unstable();
                        worst = worst.max(sums[2] - sums[1]);
                    }
                }
            }
        }
        Some(worst)
    }
}

fn bfs(adj: &[FixedBitSet], s: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for w in adj[u].ones() {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// `π(x)`: walls whose carrier contains `x`, ascending.
pub fn project_vertex(g: &MedianGraph, ws: &WallSet, x: Vertex) -> Result<Vec<WallId>> {
    g.check_vertex(x)?;
    let mut walls: Vec<WallId> = g
        .neighbors(x)
        .iter()
        .map(|&u| ws.wall_between(g, x, u).expect("edge"))
        .collect();
    walls.sort_unstable();
    walls.dedup();
    Ok(walls)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SinglePointReport {
    pub v: WallId,
    pub h: WallId,
    pub contact_distance: usize,
    /// `𝔤_{N(v)}(N(h))`.
    pub image: Vec<Vertex>,
    /// Walls other than `v` crossing the image.
    pub crossing_walls: Vec<WallId>,
    /// Dual edges of `v` touching the image: the image inside the wall itself.
    pub wall_image_edges: usize,
    pub single_point: bool,
}

/// Projects the carrier of `h` onto the carrier of `v`.
pub fn single_point_check(
    ws: &WallSet,
    cg: &ContactGraph,
    v: WallId,
    h: WallId,
) -> Result<SinglePointReport> {
    ws.check_wall(v)?;
    ws.check_wall(h)?;
    if v == h {
        return Err(Error::SameWall(v));
    }
    let nv = ConvexSubcomplex::carrier(ws, v);
    let nh = ConvexSubcomplex::carrier(ws, h);
    let image = gate_projection(ws, &nv, &nh);
    let crossing_walls: Vec<WallId> = image.crossing_walls().ones().filter(|&a| a != v).collect();
    let wall_image_edges = ws
        .dual_edges(v)
        .iter()
        .filter(|&&e| {
            let (a, b) = ws.edge(e);
            image.contains(a) || image.contains(b)
        })
        .count();
    Ok(SinglePointReport {
        v,
        h,
        contact_distance: cg.distance(v, h)?,
        image: image.vertices().ones().collect(),
        single_point: crossing_walls.is_empty(),
        crossing_walls,
        wall_image_edges,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyPath {
    pub walls: Vec<WallId>,
    /// `x_1 = x, ..., x_{k+1} = y`.
    pub anchors: Vec<Vertex>,
    /// Vertex sequence of each `γ_i`, from `x_i` to `x_{i+1}`.
    pub pieces: Vec<Vec<Vertex>>,
    /// Vertex sequence of the concatenation `γ`.
    pub path: Vec<Vertex>,
    pub reductions: usize,
}

impl HierarchyPath {
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.path.len() <= 1
    }

    /// Edges of `γ` in order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.path.windows(2).map(|p| (p[0], p[1])).collect()
    }
}

/// Geodesic from `a` to `b` using only vertices of the convex set `within`,
/// stepping to the least-index neighbour that gets closer.
fn geodesic_within(g: &MedianGraph, ws: &WallSet, within: &FixedBitSet, a: Vertex, b: Vertex) -> Vec<Vertex> {
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        let d = ws.distance(cur, b);
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| within.contains(w) && ws.distance(w, b) + 1 == d)
            .expect("convex sets contain geodesics between their points");
        path.push(cur);
    }
    path
}

/// Builds a hierarchy path from `x` to `y`. `hx` and `hy` default to the
/// least wall of `π(x)` and `π(y)`.
pub fn hierarchy_path(
    g: &MedianGraph,
    ws: &WallSet,
    cg: &ContactGraph,
    x: Vertex,
    y: Vertex,
    hx: Option<WallId>,
    hy: Option<WallId>,
) -> Result<HierarchyPath> {
    let px = project_vertex(g, ws, x)?;
    let py = project_vertex(g, ws, y)?;
    let pick = |given: Option<WallId>, pi: &[WallId], v: Vertex| -> Result<WallId> {
        match given {
            Some(h) => {
                ws.check_wall(h)?;
                if pi.contains(&h) {
                    Ok(h)
                } else {
                    Err(Error::BadParams(format!(
                        "{} is not in the carrier of wall {h}",
                        g.label(v)
                    )))
                }
            }
            None => pi
                .first()
                .copied()
                .ok_or_else(|| Error::BadParams(format!("{} lies in no carrier", g.label(v)))),
        }
    };
    let h1 = pick(hx, &px, x)?;
    let hk = pick(hy, &py, y)?;
    let mut walls = cg.geodesic(h1, hk)?;
    let k = walls.len();
    let carriers: Vec<ConvexSubcomplex> = ws.ids().map(|h| ConvexSubcomplex::carrier(ws, h)).collect();

    let mut anchors = vec![x; k + 1];
    anchors[k] = y;
    let regate = |anchors: &mut Vec<Vertex>, walls: &[WallId], from: usize| {
        for i in from..k {
            anchors[i] = carriers[walls[i]].gate(ws, anchors[i - 1]);
        }
    };
    regate(&mut anchors, &walls, 1);
    let initial: usize = (0..k).map(|i| ws.distance(anchors[i], anchors[i + 1])).sum();
    let cap = ws.len().max(1) * initial.max(1);
    let mut reductions = 0;

    loop {
        // Which piece each wall is first crossed in, looking for a repeat.
        let mut first_piece = vec![usize::MAX; ws.len()];
        let mut clash = None;
        'scan: for i in 0..k {
            for h in ws.separating_set(anchors[i], anchors[i + 1]) {
                if first_piece[h] != usize::MAX {
                    clash = Some((first_piece[h], i, h));
                    break 'scan;
                }
                first_piece[h] = i;
            }
        }
        let Some((i, j, h)) = clash else { break };
        if j != i + 2 {
            return Err(Error::HierarchyReduction(format!(
                "wall {h} crossed in pieces {i} and {j}, which the contact geodesic rules out"
            )));
        }
        reductions += 1;
        if reductions > cap {
            return Err(Error::HierarchyReduction(format!(
                "no convergence after {cap} reductions"
            )));
        }
        walls[i + 1] = h;
        regate(&mut anchors, &walls, i + 1);
    }

    let pieces: Vec<Vec<Vertex>> = (0..k)
        .map(|i| geodesic_within(g, ws, carriers[walls[i]].vertices(), anchors[i], anchors[i + 1]))
        .collect();
    let mut path = vec![x];
    for p in &pieces {
        path.extend_from_slice(&p[1..]);
    }
    Ok(HierarchyPath {
        walls,
        anchors,
        pieces,
        path,
        reductions,
    })
}
