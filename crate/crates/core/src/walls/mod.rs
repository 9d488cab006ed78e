//! Walls (hyperplanes) of a median graph and the relations between them.
//!
//! A wall is a class of the square relation on edges. Each wall cuts the
//! graph into two halfspaces; by convention the lower side `⃖h` is the one
//! containing vertex 0, so a vertex's orientation bitset is exactly the set
//! of walls separating it from vertex 0.

pub(crate) mod clique;
pub(crate) mod partition;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{MedianGraph, Vertex};

pub type WallId = usize;

/// Candidate sets up to this size get an unbounded facing-tuple search.
pub const FACING_EXHAUSTIVE_LIMIT: usize = 25;
/// Node budget for larger facing-tuple searches.
pub const FACING_SEARCH_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
        }
    }

    fn from_upper(upper: bool) -> Side {
        if upper {
            Side::Upper
        } else {
            Side::Lower
        }
    }
}

/// Where a wall sits relative to another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    Same,
    Crosses,
    In(Side),
}

#[derive(Debug, Clone)]
pub struct WallSet {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    edge_wall: Vec<WallId>,
    wall_edges: Vec<Vec<usize>>,
    upper: Vec<FixedBitSet>,
    lower: Vec<FixedBitSet>,
    carrier: Vec<FixedBitSet>,
    orient: Vec<FixedBitSet>,
    lookup: HashMap<FixedBitSet, Vertex>,
    crossing: Vec<FixedBitSet>,
    position: Vec<Position>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacingCheck {
    pub facing: bool,
    /// On success, the pairwise-disjoint halfspace chosen for each wall.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<Vec<(WallId, Side)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacingSearch {
    pub walls: Vec<WallId>,
    pub halfspaces: Vec<(WallId, Side)>,
    pub size: usize,
    /// True when the search closed; otherwise `size` is only a lower bound.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quarter {
    pub sides: (Side, Side),
    pub vertices: usize,
    pub walls: Vec<WallId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuarterspaceAudit {
    pub h: WallId,
    pub v: WallId,
    pub quarters: Vec<Quarter>,
    pub nonempty_quarters: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallSummary {
    pub id: WallId,
    pub edge: (String, String),
    pub dual_edges: usize,
    pub lower_size: usize,
    pub upper_size: usize,
    pub carrier_size: usize,
    pub crossing: Vec<WallId>,
}

impl WallSet {
    /// Computes the walls of a graph that has passed median verification.
    pub fn compute(g: &MedianGraph) -> Result<WallSet> {
        if !g.is_validated() {
            return Err(Error::NotMedianGraph(
                "graph has not passed median verification".into(),
            ));
        }
        Self::build(g)
    }

    pub(crate) fn build(g: &MedianGraph) -> Result<WallSet> {
        let part = partition::partition_edges(g)?;
        let n = g.vertex_count();
        let w = part.classes.len();
        let mut full = FixedBitSet::with_capacity(n);
        full.insert_range(..);
        let lower: Vec<FixedBitSet> = part
            .upper
            .iter()
            .map(|u| {
                let mut l = full.clone();
                l.difference_with(u);
                l
            })
            .collect();
        let mut carrier = vec![FixedBitSet::with_capacity(n); w];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            carrier[part.class_of_edge[e]].insert(u);
            carrier[part.class_of_edge[e]].insert(v);
        }
        let mut orient = vec![FixedBitSet::with_capacity(w); n];
        for (h, side) in part.upper.iter().enumerate() {
            for v in side.ones() {
                orient[v].insert(h);
            }
        }
        let lookup = orient
            .iter()
            .enumerate()
            .map(|(v, b)| (b.clone(), v))
            .collect();
        let mut crossing = vec![FixedBitSet::with_capacity(w); w];
        let mut position = vec![Position::Same; w * w];
        for h in 0..w {
            for k in h + 1..w {
                let quarters_nonempty = [&lower[h], &part.upper[h]].iter().all(|a| {
                    [&lower[k], &part.upper[k]].iter().all(|b| !a.is_disjoint(b))
                });
                if quarters_nonempty {
                    crossing[h].insert(k);
                    crossing[k].insert(h);
                    position[h * w + k] = Position::Crosses;
                    position[k * w + h] = Position::Crosses;
                } else {
                    let (ku, _) = g.edges()[part.classes[k][0]];
                    let (hu, _) = g.edges()[part.classes[h][0]];
                    position[h * w + k] = Position::In(Side::from_upper(part.upper[h].contains(ku)));
                    position[k * w + h] = Position::In(Side::from_upper(part.upper[k].contains(hu)));
                }
            }
        }
        Ok(WallSet {
            n,
            edges: g.edges().to_vec(),
            edge_wall: part.class_of_edge,
            wall_edges: part.classes,
            upper: part.upper,
            lower,
            carrier,
            orient,
            lookup,
            crossing,
            position,
        })
    }

    pub fn len(&self) -> usize {
        self.wall_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wall_edges.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn ids(&self) -> std::ops::Range<WallId> {
        0..self.len()
    }

    pub fn check_wall(&self, h: WallId) -> Result<WallId> {
        if h < self.len() {
            Ok(h)
        } else {
            Err(Error::UnknownWall(h))
        }
    }

    fn check_vertex(&self, v: Vertex) -> Result<Vertex> {
        if v < self.n {
            Ok(v)
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    /// Ids of the edges dual to `h`, ascending.
    pub fn dual_edges(&self, h: WallId) -> &[usize] {
        &self.wall_edges[h]
    }

    pub fn edge(&self, e: usize) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn wall_of_edge(&self, e: usize) -> WallId {
        self.edge_wall[e]
    }

    /// The least dual edge of `h`, oriented lower side first.
    pub fn representative_edge(&self, h: WallId) -> (Vertex, Vertex) {
        let (u, v) = self.edges[self.wall_edges[h][0]];
        if self.upper[h].contains(u) {
            (v, u)
        } else {
            (u, v)
        }
    }

    pub fn halfspace(&self, h: WallId, side: Side) -> &FixedBitSet {
        match side {
            Side::Lower => &self.lower[h],
            Side::Upper => &self.upper[h],
        }
    }

    pub fn side_of(&self, h: WallId, v: Vertex) -> Side {
        Side::from_upper(self.orient[v].contains(h))
    }

    pub fn carrier(&self, h: WallId) -> &FixedBitSet {
        &self.carrier[h]
    }

    /// Walls separating `v` from vertex 0.
    pub fn orientation(&self, v: Vertex) -> &FixedBitSet {
        &self.orient[v]
    }

    pub fn vertex_with_orientation(&self, bits: &FixedBitSet) -> Option<Vertex> {
        self.lookup.get(bits).copied()
    }

    pub fn separates(&self, h: WallId, x: Vertex, y: Vertex) -> Result<bool> {
        self.check_wall(h)?;
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok(self.orient[x].contains(h) != self.orient[y].contains(h))
    }

    /// `W(x, y)`, ascending.
    pub fn separating_set(&self, x: Vertex, y: Vertex) -> Vec<WallId> {
        let mut bits = self.orient[x].clone();
        bits.symmetric_difference_with(&self.orient[y]);
        bits.ones().collect()
    }

    pub fn separating_bits(&self, x: Vertex, y: Vertex) -> FixedBitSet {
        let mut bits = self.orient[x].clone();
        bits.symmetric_difference_with(&self.orient[y]);
        bits
    }

    pub fn distance(&self, x: Vertex, y: Vertex) -> usize {
        self.orient[x].symmetric_difference_count(&self.orient[y])
    }

    /// Median through the majority orientation.
    pub fn median(&self, a: Vertex, b: Vertex, c: Vertex) -> Vertex {
        let mut ab = self.orient[a].clone();
        ab.intersect_with(&self.orient[b]);
        let mut m = self.orient[a].clone();
        m.union_with(&self.orient[b]);
        m.intersect_with(&self.orient[c]);
        m.union_with(&ab);
        self.lookup[&m]
    }

    pub fn crosses(&self, h: WallId, k: WallId) -> Result<bool> {
        self.check_wall(h)?;
        self.check_wall(k)?;
        if h == k {
            return Err(Error::SameWall(h));
        }
        Ok(self.crossing[h].contains(k))
    }

    pub fn crossing_row(&self, h: WallId) -> &FixedBitSet {
        &self.crossing[h]
    }

    /// Position of `k` relative to `h`.
    pub fn position(&self, h: WallId, k: WallId) -> Position {
        self.position[h * self.len() + k]
    }

    pub fn disjoint(&self, h: WallId, k: WallId) -> bool {
        matches!(self.position(h, k), Position::In(_))
    }

    /// True iff `m` separates `h` from `k`: both lie in opposite halfspaces of `m`.
    pub fn separates_walls(&self, m: WallId, h: WallId, k: WallId) -> bool {
        match (self.position(m, h), self.position(m, k)) {
            (Position::In(a), Position::In(b)) => a != b,
            _ => false,
        }
    }

    /// Largest set of pairwise crossing walls.
    pub fn dimension(&self) -> (usize, Vec<WallId>) {
        let r = clique::max_clique(&self.crossing, None);
        (r.members.len(), r.members)
    }

    /// Facing test: pairwise disjoint and no member separates two others.
    pub fn is_facing_tuple(&self, set: &[WallId]) -> Result<FacingCheck> {
        for &h in set {
            self.check_wall(h)?;
        }
        let no = FacingCheck {
            facing: false,
            halfspaces: None,
        };
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                if a == b || !self.disjoint(a, b) {
                    return Ok(no);
                }
            }
        }
        for &m in set {
            for (i, &a) in set.iter().enumerate() {
                for &b in &set[i + 1..] {
                    if m != a && m != b && self.separates_walls(m, a, b) {
                        return Ok(no);
                    }
                }
            }
        }
        let halfspaces = set
            .iter()
            .map(|&h| {
                let side = set
                    .iter()
                    .find(|&&k| k != h)
                    .map(|&k| match self.position(h, k) {
                        Position::In(s) => s.flip(),
                        _ => unreachable!("members are pairwise disjoint"),
                    })
                    .unwrap_or(Side::Lower);
                (h, side)
            })
            .collect();
        Ok(FacingCheck {
            facing: true,
            halfspaces: Some(halfspaces),
        })
    }

    /// Facing test through halfspaces alone: looks for one halfspace per wall
    /// with all choices pairwise disjoint. Each disjoint pair of walls admits
    /// exactly one disjoint pair of sides, so the choice is forced pairwise.
    pub fn facing_by_assignment(&self, set: &[WallId]) -> Option<Vec<Side>> {
        let mut chosen: Vec<Option<Side>> = vec![None; set.len()];
        if set.len() == 1 {
            return Some(vec![Side::Lower]);
        }
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                let mut found = None;
                for si in [Side::Lower, Side::Upper] {
                    for sj in [Side::Lower, Side::Upper] {
                        if self
                            .halfspace(set[i], si)
                            .is_disjoint(self.halfspace(set[j], sj))
                        {
                            found = Some((si, sj));
                        }
                    }
                }
                let (si, sj) = found?;
                for (slot, s) in [(i, si), (j, sj)] {
                    match chosen[slot] {
                        Some(prev) if prev != s => return None,
                        _ => chosen[slot] = Some(s),
                    }
                }
            }
        }
        chosen.into_iter().collect()
    }

    /// Maximum facing tuple within `candidates`, as a maximum clique among
    /// their halfspaces under disjointness.
    pub fn max_facing_tuple(&self, candidates: &[WallId]) -> Result<FacingSearch> {
        for &h in candidates {
            self.check_wall(h)?;
        }
        let mut cand = candidates.to_vec();
        cand.sort_unstable();
        cand.dedup();
        let m = cand.len();
        let mut adj = vec![FixedBitSet::with_capacity(2 * m); 2 * m];
        for i in 0..m {
            for j in i + 1..m {
                if let (Position::In(si), Position::In(sj)) =
                    (self.position(cand[i], cand[j]), self.position(cand[j], cand[i]))
                {
                    let a = 2 * i + (si.flip() == Side::Upper) as usize;
                    let b = 2 * j + (sj.flip() == Side::Upper) as usize;
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        let budget = (m > FACING_EXHAUSTIVE_LIMIT).then_some(FACING_SEARCH_BUDGET);
        let r = clique::max_clique(&adj, budget);
        let halfspaces: Vec<(WallId, Side)> = r
            .members
            .iter()
            .map(|&x| (cand[x / 2], Side::from_upper(x % 2 == 1)))
            .collect();
        Ok(FacingSearch {
            walls: halfspaces.iter().map(|&(h, _)| h).collect(),
            size: halfspaces.len(),
            halfspaces,
            certified: r.certified,
        })
    }

    /// Chain test: singletons are chains, pairs must be disjoint, and longer
    /// sequences need every interior wall to separate its neighbours.
    pub fn is_chain(&self, seq: &[WallId]) -> Result<bool> {
        for &h in seq {
            self.check_wall(h)?;
        }
        Ok(match seq.len() {
            0 => false,
            1 => true,
            2 => seq[0] != seq[1] && self.disjoint(seq[0], seq[1]),
            _ => seq
                .windows(3)
                .all(|t| self.separates_walls(t[1], t[0], t[2])),
        })
    }

    /// Chain test through halfspaces alone: returns sides with
    /// `A_1 ⊊ A_2 ⊊ ... ⊊ A_n` when such a nested choice exists.
    pub fn nested_sides(&self, seq: &[WallId]) -> Option<Vec<Side>> {
        if seq.is_empty() {
            return None;
        }
        if seq.len() == 1 {
            return Some(vec![Side::Lower]);
        }
        let mut sides = Vec::with_capacity(seq.len());
        for i in 0..seq.len() {
            let (h, toward, away) = if i + 1 < seq.len() {
                (seq[i], seq[i + 1], true)
            } else {
                (seq[i], seq[i - 1], false)
            };
            let probe = self.carrier[toward].minimum()?;
            let probe_side = self.side_of(h, probe);
            sides.push(if away { probe_side.flip() } else { probe_side });
        }
        for i in 0..seq.len() - 1 {
            let a = self.halfspace(seq[i], sides[i]);
            let b = self.halfspace(seq[i + 1], sides[i + 1]);
            if !(a.is_subset(b) && a != b) {
                return None;
            }
        }
        Some(sides)
    }

    /// Longest chain among `candidates`, by a longest path in the strict
    /// containment order of their halfspaces.
    pub fn max_chain(&self, candidates: &[WallId]) -> Vec<WallId> {
        let mut elems: Vec<(WallId, Side)> = Vec::with_capacity(2 * candidates.len());
        for &h in candidates {
            elems.push((h, Side::Lower));
            elems.push((h, Side::Upper));
        }
        elems.sort_by_key(|&(h, s)| (self.halfspace(h, s).count_ones(..), h, s));
        let m = elems.len();
        let mut best = vec![1usize; m];
        let mut prev = vec![usize::MAX; m];
        for j in 0..m {
            let bj = self.halfspace(elems[j].0, elems[j].1);
            for i in 0..j {
                if elems[i].0 == elems[j].0 {
                    continue;
                }
                let bi = self.halfspace(elems[i].0, elems[i].1);
                if best[i] + 1 > best[j] && bi.is_subset(bj) && bi != bj {
                    best[j] = best[i] + 1;
                    prev[j] = i;
                }
            }
        }
        let Some(end) = (0..m).max_by_key(|&j| (best[j], std::cmp::Reverse(j))) else {
            return Vec::new();
        };
        let mut chain = vec![elems[end].0];
        let mut cur = end;
        while prev[cur] != usize::MAX {
            cur = prev[cur];
            chain.push(elems[cur].0);
        }
        chain.reverse();
        chain
    }

    /// For each quarterspace of a crossing pair, the walls whose carrier it contains.
    pub fn quarterspace_audit(&self, h: WallId, v: WallId) -> Result<QuarterspaceAudit> {
        if !self.crosses(h, v)? {
            return Err(Error::NotCrossing(h, v));
        }
        let mut quarters = Vec::with_capacity(4);
        for sh in [Side::Lower, Side::Upper] {
            for sv in [Side::Lower, Side::Upper] {
                let mut q = self.halfspace(h, sh).clone();
                q.intersect_with(self.halfspace(v, sv));
                let walls = self.ids().filter(|&a| self.carrier[a].is_subset(&q)).collect();
                quarters.push(Quarter {
                    sides: (sh, sv),
                    vertices: q.count_ones(..),
                    walls,
                });
            }
        }
        let nonempty_quarters = quarters.iter().filter(|q| !q.walls.is_empty()).count();
        Ok(QuarterspaceAudit {
            h,
            v,
            quarters,
            nonempty_quarters,
        })
    }

    /// Disjoint, and no wall crosses both.
    pub fn strongly_separated(&self, h: WallId, v: WallId) -> Result<bool> {
        self.check_wall(h)?;
        self.check_wall(v)?;
        if h == v {
            return Err(Error::SameWall(h));
        }
        Ok(self.disjoint(h, v) && self.crossing[h].is_disjoint(&self.crossing[v]))
    }

    pub fn summary(&self, g: &MedianGraph, h: WallId) -> WallSummary {
        let (u, v) = self.representative_edge(h);
        WallSummary {
            id: h,
            edge: (g.label(u).to_string(), g.label(v).to_string()),
            dual_edges: self.wall_edges[h].len(),
            lower_size: self.lower[h].count_ones(..),
            upper_size: self.upper[h].count_ones(..),
            carrier_size: self.carrier[h].count_ones(..),
            crossing: self.crossing[h].ones().collect(),
        }
    }

    /// Walls with vertices of `set` on both sides.
    pub fn walls_crossing_set(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for h in self.ids() {
            if !set.is_subset(&self.lower[h]) && !set.is_subset(&self.upper[h]) {
                out.insert(h);
            }
        }
        out
    }

    /// The wall dual to the edge `u`–`v`, if it is an edge.
    pub fn wall_between(&self, g: &MedianGraph, u: Vertex, v: Vertex) -> Option<WallId> {
        g.edge_id(u, v).map(|e| self.edge_wall[e])
    }
}

#[cfg(test)]
mod tests;
