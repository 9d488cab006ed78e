//! Halfspace posets, Dilworth partitions and chain extraction.

mod embedding;
pub mod matching;
pub mod ramsey;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{MedianGraph, Vertex};
use crate::walls::{clique, Side, WallId, WallSet};

pub use embedding::{
    grid_embedding, hyperplanes_in_ball, restriction_quotient, BallWallSet, EmbeddingOutcome,
    GridEmbedding, Quotient,
};
pub use matching::{hopcroft_karp, Matching};
pub use ramsey::{k_bound, ramsey_bound, KBound, RamseyBound};

/// A finite strict partial order given by its full (transitive) relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    /// `above[i]` holds every `j` with `i < j`.
    above: Vec<FixedBitSet>,
}

impl Poset {
    /// Builds the order from a strict comparison. The caller supplies a
    /// relation that is already irreflexive and transitive.
    pub fn from_fn(n: usize, less: impl Fn(usize, usize) -> bool) -> Poset {
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if i != j && less(i, j) {
                    above[i].insert(j);
                }
            }
        }
        Poset { above }
    }

    pub fn len(&self) -> usize {
        self.above.len()
    }

    pub fn is_empty(&self) -> bool {
        self.above.is_empty()
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    fn matching(&self) -> Matching {
        let adj: Vec<Vec<usize>> = self.above.iter().map(|row| row.ones().collect()).collect();
        hopcroft_karp(self.len(), &adj)
    }

    /// Minimum chain cover as a minimum path cover of the transitive DAG.
    /// Chains are listed bottom to top, ordered by their least element.
    pub fn min_chain_cover(&self) -> Vec<Vec<usize>> {
        let m = self.matching();
        let mut chains = Vec::new();
        for start in 0..self.len() {
            if m.right[start].is_some() {
                continue;
            }
            let mut chain = vec![start];
            let mut cur = start;
            while let Some(next) = m.left[cur] {
                chain.push(next);
                cur = next;
            }
            chains.push(chain);
        }
        chains
    }

    /// Maximum antichain from a minimum vertex cover of the matching graph.
    pub fn max_antichain(&self) -> Vec<usize> {
        let n = self.len();
        let m = self.matching();
        // Alternating reachability from free left vertices.
        let mut left_seen = vec![false; n];
        let mut right_seen = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&u| m.left[u].is_none()).collect();
        for &u in &stack {
            left_seen[u] = true;
        }
        while let Some(u) = stack.pop() {
            for v in self.above[u].ones() {
                if right_seen[v] || m.left[u] == Some(v) {
                    continue;
                }
                right_seen[v] = true;
                if let Some(w) = m.right[v] {
                    if !left_seen[w] {
                        left_seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        (0..n).filter(|&x| left_seen[x] && !right_seen[x]).collect()
    }

    pub fn is_antichain(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| !self.comparable(a, b)))
    }

    pub fn is_chain(&self, seq: &[usize]) -> bool {
        seq.windows(2).all(|p| self.less(p[0], p[1]))
    }
}

/// How to pick one halfspace per wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "policy", content = "arg")]
pub enum OrientationPolicy {
    /// The halfspace containing the vertex with the least label.
    LexLeast,
    /// The halfspace containing the given vertex.
    TowardVertex(Vertex),
    /// Independent fair coin per wall, from the given seed.
    Random(u64),
}

impl OrientationPolicy {
    pub fn sides(&self, g: &MedianGraph, ws: &WallSet, walls: &[WallId]) -> Vec<Side> {
        match *self {
            OrientationPolicy::LexLeast => {
                let v = g.lex_least_vertex();
                walls.iter().map(|&h| ws.side_of(h, v)).collect()
            }
            OrientationPolicy::TowardVertex(v) => walls.iter().map(|&h| ws.side_of(h, v)).collect(),
            OrientationPolicy::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                walls
                    .iter()
                    .map(|_| if rng.gen_bool(0.5) { Side::Upper } else { Side::Lower })
                    .collect()
            }
        }
    }
}

/// One halfspace per wall, ordered by strict containment.
#[derive(Debug, Clone)]
pub struct HalfspacePoset {
    pub elements: Vec<(WallId, Side)>,
    pub poset: Poset,
}

impl HalfspacePoset {
    pub fn new(ws: &WallSet, elements: Vec<(WallId, Side)>) -> HalfspacePoset {
        let poset = Poset::from_fn(elements.len(), |i, j| {
            let a = ws.halfspace(elements[i].0, elements[i].1);
            let b = ws.halfspace(elements[j].0, elements[j].1);
            a.is_subset(b) && a != b
        });
        HalfspacePoset { elements, poset }
    }

    pub fn oriented(g: &MedianGraph, ws: &WallSet, walls: &[WallId], policy: OrientationPolicy) -> Self {
        let sides = policy.sides(g, ws, walls);
        Self::new(ws, walls.iter().copied().zip(sides).collect())
    }

    pub fn walls_of(&self, idx: &[usize]) -> Vec<WallId> {
        idx.iter().map(|&i| self.elements[i].0).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainPartition {
    /// Each chain as wall ids, smallest halfspace first.
    pub chains: Vec<Vec<WallId>>,
    pub antichain: Vec<WallId>,
}

pub fn dilworth_partition(p: &HalfspacePoset) -> ChainPartition {
    ChainPartition {
        chains: p.poset.min_chain_cover().iter().map(|c| p.walls_of(c)).collect(),
        antichain: p.walls_of(&p.poset.max_antichain()),
    }
}

/// Checks on the colouring of antichain pairs into crossing and facing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntichainAudit {
    pub size: usize,
    pub bound: u64,
    pub within_bound: bool,
    /// Largest pairwise-crossing subset; never more than the dimension.
    pub largest_crossing_clique: usize,
    /// Largest facing subset; never more than `N`.
    pub largest_facing_subset: usize,
    pub facing_subset_certified: bool,
    /// Every incomparable pair either crosses or faces.
    pub pairs_cross_or_face: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainExtraction {
    pub walls: usize,
    pub dimension: usize,
    pub n: usize,
    pub k: KBound,
    pub orientation: OrientationPolicy,
    pub chain: Vec<WallId>,
    pub chain_sides: Vec<Side>,
    pub chain_length: usize,
    /// `⌈|walls| / K(D, N)⌉`.
    pub guaranteed: usize,
    pub guarantee: String,
    pub guarantee_holds: bool,
    pub partition: ChainPartition,
    pub antichain: AntichainAudit,
    pub largest_facing_tuple: usize,
    pub facing_search_certified: bool,
}

fn dedup_walls(ws: &WallSet, walls: &[WallId]) -> Result<Vec<WallId>> {
    for &h in walls {
        ws.check_wall(h)?;
    }
    let mut w = walls.to_vec();
    w.sort_unstable();
    w.dedup();
    if w.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(w)
}

fn audit_antichain(ws: &WallSet, antichain: &[WallId], bound: u64) -> Result<AntichainAudit> {
    let m = antichain.len();
    let mut adj = vec![FixedBitSet::with_capacity(m); m];
    let mut pairs_ok = true;
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (antichain[i], antichain[j]);
            if ws.crossing_row(a).contains(b) {
                adj[i].insert(j);
                adj[j].insert(i);
            } else if !ws.is_facing_tuple(&[a, b])?.facing {
                pairs_ok = false;
            }
        }
    }
    let crossing = clique::max_clique(&adj, None).members.len();
    let facing = ws.max_facing_tuple(antichain)?;
    Ok(AntichainAudit {
        size: m,
        bound,
        within_bound: m as u64 <= bound,
        largest_crossing_clique: crossing,
        largest_facing_subset: facing.size,
        facing_subset_certified: facing.certified,
        pairs_cross_or_face: pairs_ok,
    })
}

/// Extracts a long chain from `walls`, given that they contain no facing
/// `(N + 1)`-tuple. The bound is checked first by a facing-tuple search.
pub fn extract_chain(
    g: &MedianGraph,
    ws: &WallSet,
    walls: &[WallId],
    n: usize,
    policy: OrientationPolicy,
) -> Result<ChainExtraction> {
    let walls = dedup_walls(ws, walls)?;
    if n == 0 {
        return Err(Error::BadParams("N must be at least 1".into()));
    }
    let facing = ws.max_facing_tuple(&walls)?;
    if facing.size > n {
        return Err(Error::FacingBoundViolated(facing.walls[..n + 1].to_vec()));
    }
    let dimension = ws.dimension().0;
    let k = k_bound(dimension as u64, n as u64)?;
    let poset = HalfspacePoset::oriented(g, ws, &walls, policy);
    let cover = poset.poset.min_chain_cover();
    let antichain_idx = poset.poset.max_antichain();
    let best = cover
        .iter()
        .max_by_key(|c| (c.len(), std::cmp::Reverse(c[0])))
        .expect("nonempty poset");
    let chain = poset.walls_of(best);
    let chain_sides = best.iter().map(|&i| poset.elements[i].1).collect();
    let guaranteed = walls.len().div_ceil(k.value as usize);
    let partition = ChainPartition {
        chains: cover.iter().map(|c| poset.walls_of(c)).collect(),
        antichain: poset.walls_of(&antichain_idx),
    };
    let antichain = audit_antichain(ws, &partition.antichain, k.value)?;
    Ok(ChainExtraction {
        walls: walls.len(),
        dimension,
        n,
        guarantee: format!("≥ {guaranteed} = ⌈{}/{}⌉", walls.len(), k.value),
        guarantee_holds: chain.len() >= guaranteed,
        chain_length: chain.len(),
        k,
        orientation: policy,
        chain,
        chain_sides,
        guaranteed,
        partition,
        antichain,
        largest_facing_tuple: facing.size,
        facing_search_certified: facing.certified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodesicChainReport {
    pub extraction: ChainExtraction,
    pub x: Vertex,
    pub y: Vertex,
    pub path: Vec<Vertex>,
    /// Walls of the input set crossed by the path.
    pub crossed: usize,
    pub guaranteed: usize,
    pub guarantee_holds: bool,
}

/// Pair budget above which endpoints are taken as the least vertices of
/// the two extreme halfspaces instead of the best pair between them.
const ENDPOINT_SEARCH_LIMIT: usize = 4_000_000;

/// A geodesic crossing many walls of a set with no facing triple.
pub fn geodesic_crossing_chain(
    g: &MedianGraph,
    ws: &WallSet,
    walls: &[WallId],
    policy: OrientationPolicy,
) -> Result<GeodesicChainReport> {
    let extraction = extract_chain(g, ws, walls, 2, policy)?;
    let first = (extraction.chain[0], extraction.chain_sides[0]);
    let last = *extraction.chain.last().unwrap();
    let last_side = *extraction.chain_sides.last().unwrap();
    let inner = ws.halfspace(first.0, first.1);
    let outer = ws.halfspace(last, last_side.flip());
    let mut mask = FixedBitSet::with_capacity(ws.len());
    for &h in walls {
        mask.insert(h);
    }
    let crossed = |x: Vertex, y: Vertex| {
        let mut s = ws.separating_bits(x, y);
        s.intersect_with(&mask);
        s.count_ones(..)
    };
    let (mut x, mut y) = (inner.minimum().unwrap(), outer.minimum().unwrap());
    if inner.count_ones(..) * outer.count_ones(..) <= ENDPOINT_SEARCH_LIMIT {
        let mut best = crossed(x, y);
        for a in inner.ones() {
            for b in outer.ones() {
                let c = crossed(a, b);
                if c > best {
                    (best, x, y) = (c, a, b);
                }
            }
        }
    }
    let path = g.geodesic(x, y);
    let count = crossed(x, y);
    let guaranteed = extraction.walls.div_ceil(extraction.k.value as usize);
    Ok(GeodesicChainReport {
        extraction,
        x,
        y,
        path,
        crossed: count,
        guaranteed,
        guarantee_holds: count >= guaranteed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodesicChain {
    pub separating: usize,
    pub dimension: usize,
    pub chain: Vec<WallId>,
    /// `⌈|W(x, y)| / D⌉`.
    pub guaranteed: usize,
    pub guarantee_holds: bool,
    pub partition: ChainPartition,
}

/// Orients every wall separating `x` from `y` towards `x` and returns the
/// longest chain of a Dilworth partition.
pub fn chain_in_geodesic(g: &MedianGraph, ws: &WallSet, x: Vertex, y: Vertex) -> Result<GeodesicChain> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::BadParams("x and y must differ".into()));
    }
    let sep = ws.separating_set(x, y);
    let poset = HalfspacePoset::oriented(g, ws, &sep, OrientationPolicy::TowardVertex(x));
    let partition = dilworth_partition(&poset);
    let chain = partition
        .chains
        .iter()
        .max_by_key(|c| c.len())
        .cloned()
        .unwrap_or_default();
    let dimension = ws.dimension().0;
    let guaranteed = sep.len().div_ceil(dimension.max(1));
    Ok(GeodesicChain {
        separating: sep.len(),
        dimension,
        guarantee_holds: chain.len() >= guaranteed,
        chain,
        guaranteed,
        partition,
    })
}
