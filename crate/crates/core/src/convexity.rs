//! Convex subcomplexes, hulls and gate maps.
//!
//! A convex subcomplex is stored with the set of walls crossing it. The gate
//! of `x` is then the vertex that agrees with `x` on every crossing wall and
//! with the subcomplex on every other wall.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{MedianGraph, Vertex};
use crate::walls::{Side, WallId, WallSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexSubcomplex {
    vertices: FixedBitSet,
    crossing: FixedBitSet,
    anchor: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexityCheck {
    pub convex: bool,
    /// `(a, b, z)` with `a, b` in the set and `μ(a, b, z)` outside it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[Vertex; 3]>,
}

impl ConvexSubcomplex {
    /// Wraps a vertex set after checking that it is convex.
    pub fn new(ws: &WallSet, vertices: FixedBitSet) -> Result<Self> {
        let check = is_convex(ws, &vertices)?;
        match check.witness {
            Some(w) => Err(Error::NotConvex(w)),
            None => Ok(Self::trusted(ws, vertices)),
        }
    }

    /// Caller guarantees convexity and non-emptiness.
    pub(crate) fn trusted(ws: &WallSet, vertices: FixedBitSet) -> Self {
        let anchor = vertices.minimum().expect("nonempty convex set");
        let crossing = ws.walls_crossing_set(&vertices);
        ConvexSubcomplex {
            vertices,
            crossing,
            anchor,
        }
    }

    pub fn carrier(ws: &WallSet, h: WallId) -> Self {
        Self::trusted(ws, ws.carrier(h).clone())
    }

    pub fn halfspace(ws: &WallSet, h: WallId, side: Side) -> Self {
        Self::trusted(ws, ws.halfspace(h, side).clone())
    }

    pub fn vertex(ws: &WallSet, v: Vertex) -> Self {
        let mut set = FixedBitSet::with_capacity(ws.vertex_count());
        set.insert(v);
        Self::trusted(ws, set)
    }

    pub fn vertices(&self) -> &FixedBitSet {
        &self.vertices
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(v)
    }

    pub fn len(&self) -> usize {
        self.vertices.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Walls with vertices of the subcomplex on both sides.
    pub fn crossing_walls(&self) -> &FixedBitSet {
        &self.crossing
    }

    /// Nearest-point projection of `x`.
    pub fn gate(&self, ws: &WallSet, x: Vertex) -> Vertex {
        if self.vertices.contains(x) {
            return x;
        }
        let mut bits = ws.orientation(x).clone();
        bits.intersect_with(&self.crossing);
        let mut rest = ws.orientation(self.anchor).clone();
        rest.difference_with(&self.crossing);
        bits.union_with(&rest);
        ws.vertex_with_orientation(&bits)
            .expect("gate orientation is realised in a median graph")
    }

    pub fn diameter(&self, ws: &WallSet) -> usize {
        let members: Vec<Vertex> = self.vertices.ones().collect();
        let mut best = 0;
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                best = best.max(ws.distance(a, b));
            }
        }
        best
    }
}

/// Median-closure test. The witness is the first `(a, b, z)` found with
/// `a < b` in the set and `z` scanned from the highest index down.
pub fn is_convex(ws: &WallSet, set: &FixedBitSet) -> Result<ConvexityCheck> {
    if set.is_clear() {
        return Err(Error::EmptySet);
    }
    if let Some(v) = set.ones().find(|&v| v >= ws.vertex_count()) {
        return Err(Error::VertexOutOfRange(v));
    }
    if halfspace_filter(ws, set) == *set {
        return Ok(ConvexityCheck {
            convex: true,
            witness: None,
        });
    }
    let members: Vec<Vertex> = set.ones().collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            for z in (0..ws.vertex_count()).rev() {
                if !set.contains(ws.median(a, b, z)) {
                    return Ok(ConvexityCheck {
                        convex: false,
                        witness: Some([a, b, z]),
                    });
                }
            }
        }
    }
    unreachable!("a set differing from its hull has a median outside it")
}

fn halfspace_filter(ws: &WallSet, set: &FixedBitSet) -> FixedBitSet {
    let mut hull = FixedBitSet::with_capacity(ws.vertex_count());
    hull.insert_range(..);
    for h in ws.ids() {
        for side in [Side::Lower, Side::Upper] {
            if set.is_subset(ws.halfspace(h, side)) {
                hull.intersect_with(ws.halfspace(h, side));
            }
        }
    }
    hull
}

/// Intersection of all halfspaces containing `set`.
pub fn convex_hull(ws: &WallSet, set: &FixedBitSet) -> Result<ConvexSubcomplex> {
    if set.is_clear() {
        return Err(Error::EmptySet);
    }
    if let Some(v) = set.ones().find(|&v| v >= ws.vertex_count()) {
        return Err(Error::VertexOutOfRange(v));
    }
    Ok(ConvexSubcomplex::trusted(ws, halfspace_filter(ws, set)))
}

/// Hull by repeatedly adding `μ(a, b, z)` for `a, b` in the set.
pub fn median_closure(ws: &WallSet, set: &FixedBitSet) -> FixedBitSet {
    let mut closed = set.clone();
    let mut frontier: Vec<Vertex> = set.ones().collect();
    let mut members: Vec<Vertex> = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &a in &frontier {
            for &b in &members {
                for z in 0..ws.vertex_count() {
                    let m = ws.median(a, b, z);
                    if !closed.contains(m) {
                        closed.insert(m);
                        next.push(m);
                    }
                }
            }
        }
        members.extend(&next);
        frontier = next;
    }
    closed
}

/// Gate of `x` onto an arbitrary vertex set, which must be convex.
pub fn gate_onto_set(ws: &WallSet, set: &FixedBitSet, x: Vertex) -> Result<Vertex> {
    if x >= ws.vertex_count() {
        return Err(Error::VertexOutOfRange(x));
    }
    let y = ConvexSubcomplex::new(ws, set.clone())?;
    Ok(y.gate(ws, x))
}

/// `𝔤_Y(Z)`.
pub fn gate_projection(ws: &WallSet, y: &ConvexSubcomplex, z: &ConvexSubcomplex) -> ConvexSubcomplex {
    let mut image = FixedBitSet::with_capacity(ws.vertex_count());
    for v in z.vertices().ones() {
        image.insert(y.gate(ws, v));
    }
    ConvexSubcomplex::trusted(ws, image)
}

/// Gate onto a wall: the gate onto its carrier, tagged with the side of the
/// wall it lies on.
pub fn gate_to_wall(ws: &WallSet, h: WallId, x: Vertex) -> (Vertex, Side) {
    let g = ConvexSubcomplex::carrier(ws, h).gate(ws, x);
    (g, ws.side_of(h, g))
}

/// Labels of a vertex set in index order.
pub fn labels_of(g: &MedianGraph, set: &FixedBitSet) -> Vec<String> {
    set.ones().map(|v| g.label(v).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fixture(name: &str, params: &[i64]) -> (MedianGraph, WallSet) {
        let mut g = generate(&GeneratorSpec::new(name, params)).unwrap();
        assert!(g.verify_median().passed());
        let w = WallSet::compute(&g).unwrap();
        (g, w)
    }

    fn set_of(g: &MedianGraph, labels: &[&str]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(g.vertex_count());
        for l in labels {
            s.insert(g.vertex(l).unwrap());
        }
        s
    }

    /// Closure under graph intervals computed from breadth-first distances.
    fn interval_closure(g: &MedianGraph, set: &FixedBitSet) -> FixedBitSet {
        let d = g.distance_matrix();
        let n = g.vertex_count();
        let mut closed = set.clone();
        loop {
            let members: Vec<_> = closed.ones().collect();
            let mut grew = false;
            for &a in &members {
                for &b in &members {
                    for v in 0..n {
                        if d[a][v] + d[v][b] == d[a][b] && !closed.contains(v) {
                            closed.insert(v);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return closed;
            }
        }
    }

    fn random_set(rng: &mut ChaCha8Rng, n: usize, k: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        for _ in 0..k {
            s.insert(rng.gen_range(0..n));
        }
        s
    }

    fn fixtures() -> Vec<(MedianGraph, WallSet)> {
        vec![
            fixture("grid", &[3, 3]),
            fixture("grid", &[2, 2, 2]),
            fixture("tree", &[3, 3]),
            fixture("staircase", &[6]),
            fixture("cyclic_squares", &[6]),
            fixture("path", &[7]),
        ]
    }

    #[test]
    fn convexity_examples() {
        let (g, w) = fixture("grid", &[3, 3]);
        let l = set_of(&g, &["(0,0)", "(0,1)", "(1,0)"]);
        let check = is_convex(&w, &l).unwrap();
        assert!(!check.convex);
        let [a, b, z] = check.witness.unwrap();
        assert_eq!(
            [g.label(a), g.label(b), g.label(z)],
            ["(0,1)", "(1,0)", "(3,3)"]
        );
        assert_eq!(g.label(w.median(a, b, z)), "(1,1)");
        assert!(is_convex(&w, &set_of(&g, &["(2,2)"])).unwrap().convex);
        for h in w.ids() {
            assert!(is_convex(&w, w.halfspace(h, Side::Upper)).unwrap().convex);
        }
        let empty = FixedBitSet::with_capacity(16);
        assert_eq!(is_convex(&w, &empty).unwrap_err().code(), "EMPTY_SET");
    }

    #[test]
    fn hull_examples() {
        let (g, w) = fixture("grid", &[3, 3]);
        let hull = convex_hull(&w, &set_of(&g, &["(0,0)", "(2,1)"])).unwrap();
        let mut got = labels_of(&g, hull.vertices());
        got.sort();
        assert_eq!(got, ["(0,0)", "(0,1)", "(1,0)", "(1,1)", "(2,0)", "(2,1)"]);
        let single = convex_hull(&w, &set_of(&g, &["(3,1)"])).unwrap();
        assert_eq!(labels_of(&g, single.vertices()), ["(3,1)"]);
    }

    #[test]
    fn hull_of_pair_is_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fx = fixtures();
        for _ in 0..200 {
            let (g, w) = &fx[rng.gen_range(0..fx.len())];
            let n = g.vertex_count();
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(x);
            s.insert(y);
            assert_eq!(convex_hull(w, &s).unwrap().vertices(), &g.interval(x, y).unwrap());
        }
    }

    #[test]
    fn hull_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (g, w) in fixtures() {
            for _ in 0..15 {
                let k = rng.gen_range(1..5);
                let s = random_set(&mut rng, g.vertex_count(), k);
                let hull = convex_hull(&w, &s).unwrap();
                assert_eq!(hull.vertices(), &median_closure(&w, &s));
                assert_eq!(hull.vertices(), &interval_closure(&g, &s));
                assert!(is_convex(&w, hull.vertices()).unwrap().convex);
                let again = convex_hull(&w, hull.vertices()).unwrap();
                assert_eq!(again.vertices(), hull.vertices());
                let mut bigger = s.clone();
                bigger.union_with(&random_set(&mut rng, g.vertex_count(), 2));
                let big_hull = convex_hull(&w, &bigger).unwrap();
                assert!(hull.vertices().is_subset(big_hull.vertices()));
            }
        }
    }

    #[test]
    fn convexity_agrees_with_median_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (g, w) in fixtures() {
            for _ in 0..30 {
                let k = rng.gen_range(1..6);
                let s = random_set(&mut rng, g.vertex_count(), k);
                let check = is_convex(&w, &s).unwrap();
                let closed = interval_closure(&g, &s) == s;
                assert_eq!(check.convex, closed);
                if let Some([a, b, z]) = check.witness {
                    assert!(s.contains(a) && s.contains(b));
                    assert!(!s.contains(g.median(a, b, z).unwrap()));
                }
            }
        }
    }

    #[test]
    fn gate_examples() {
        let (g, w) = fixture("grid", &[3, 3]);
        let col0 = set_of(&g, &["(0,0)", "(0,1)", "(0,2)", "(0,3)"]);
        let x = g.vertex("(2,3)").unwrap();
        assert_eq!(g.label(gate_onto_set(&w, &col0, x).unwrap()), "(0,3)");
        assert_eq!(gate_onto_set(&w, &col0, 3).unwrap(), 3);
        let l = set_of(&g, &["(0,0)", "(0,1)", "(1,0)"]);
        assert_eq!(gate_onto_set(&w, &l, x).unwrap_err().code(), "NOT_CONVEX");

        let (t, tw) = fixture("tree", &[3, 1]);
        let y = set_of(&t, &["o", "o.0"]);
        assert_eq!(t.label(gate_onto_set(&tw, &y, t.vertex("o.1").unwrap()).unwrap()), "o");
    }

    #[test]
    fn gate_is_unique_nearest_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (g, w) in fixtures() {
            let d = g.distance_matrix();
            for _ in 0..10 {
                let k = rng.gen_range(1..4);
                let y = convex_hull(&w, &random_set(&mut rng, g.vertex_count(), k)).unwrap();
                for x in 0..g.vertex_count() {
                    let gx = y.gate(&w, x);
                    let best = y.vertices().ones().map(|v| d[x][v]).min().unwrap();
                    assert_eq!(d[x][gx], best);
                    assert_eq!(y.vertices().ones().filter(|&v| d[x][v] == best).count(), 1);
                    for h in w.ids() {
                        let separates_from_y = y.vertices().ones().all(|v| w.separates(h, x, v).unwrap());
                        assert_eq!(w.separates(h, x, gx).unwrap(), separates_from_y);
                    }
                }
            }
        }
    }

    #[test]
    fn gate_lipschitz_and_separation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (g, w) in fixtures() {
            let n = g.vertex_count();
            for _ in 0..6 {
                let k = rng.gen_range(1..4);
                let y = convex_hull(&w, &random_set(&mut rng, n, k)).unwrap();
                let gates: Vec<_> = (0..n).map(|x| y.gate(&w, x)).collect();
                for a in 0..n {
                    for b in 0..n {
                        assert!(w.distance(gates[a], gates[b]) <= w.distance(a, b));
                        for h in w.ids() {
                            let lhs = w.separates(h, gates[a], gates[b]).unwrap();
                            let rhs = y.crossing_walls().contains(h) && w.separates(h, a, b).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projection_examples() {
        let (g, w) = fixture("grid", &[3, 3]);
        let col = |i: usize| {
            let labels: Vec<String> = (0..4).map(|j| format!("({i},{j})")).collect();
            let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
            ConvexSubcomplex::new(&w, set_of(&g, &refs)).unwrap()
        };
        let p = gate_projection(&w, &col(0), &col(3));
        assert_eq!(p.vertices(), col(0).vertices());
        let inner = ConvexSubcomplex::new(&w, set_of(&g, &["(0,1)", "(0,2)"])).unwrap();
        assert_eq!(gate_projection(&w, &col(0), &inner).vertices(), inner.vertices());
    }

    #[test]
    fn projection_crossing_and_diameter() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (g, w) in fixtures() {
            let n = g.vertex_count();
            for _ in 0..20 {
                let (ky, kz) = (rng.gen_range(1..4), rng.gen_range(1..4));
                let y = convex_hull(&w, &random_set(&mut rng, n, ky)).unwrap();
                let z = convex_hull(&w, &random_set(&mut rng, n, kz)).unwrap();
                let yz = gate_projection(&w, &y, &z);
                let zy = gate_projection(&w, &z, &y);
                assert!(is_convex(&w, yz.vertices()).unwrap().convex);
                let mut both = y.crossing_walls().clone();
                both.intersect_with(z.crossing_walls());
                assert_eq!(yz.crossing_walls(), &both);
                assert_eq!(yz.diameter(&w), zy.diameter(&w));
            }
        }
    }

    #[test]
    fn wall_gate_tags_side() {
        let (g, w) = fixture("path", &[5]);
        let (v, side) = gate_to_wall(&w, 2, g.vertex("v5").unwrap());
        assert_eq!(g.label(v), "v3");
        assert_eq!(side, Side::Upper);
        let (v, side) = gate_to_wall(&w, 2, 0);
        assert_eq!(g.label(v), "v2");
        assert_eq!(side, Side::Lower);
    }
}
