use super::*;
use crate::graph::{generate, GeneratorSpec};
use proptest::prelude::*;

fn fixture(name: &str, params: &[i64]) -> (MedianGraph, WallSet) {
    let mut g = generate(&GeneratorSpec::new(name, params)).unwrap();
    assert!(g.verify_median().passed());
    let w = WallSet::compute(&g).unwrap();
    (g, w)
}

fn wall(g: &MedianGraph, w: &WallSet, a: &str, b: &str) -> WallId {
    w.wall_between(g, g.vertex(a).unwrap(), g.vertex(b).unwrap())
        .expect("edge")
}

/// Djoković halfspace of the edge `u`–`v`: vertices strictly closer to `u`.
fn djokovic(g: &MedianGraph, u: Vertex, v: Vertex) -> FixedBitSet {
    let du = g.distances_from(u);
    let dv = g.distances_from(v);
    let mut set = FixedBitSet::with_capacity(g.vertex_count());
    for x in 0..g.vertex_count() {
        if du[x] < dv[x] {
            set.insert(x);
        }
    }
    set
}

fn small_fixtures() -> Vec<(MedianGraph, WallSet)> {
    vec![
        fixture("path", &[5]),
        fixture("grid", &[3, 3]),
        fixture("grid", &[2, 1, 2]),
        fixture("tree", &[3, 1]),
        fixture("tree", &[3, 3]),
        fixture("staircase", &[5]),
        fixture("cyclic_squares", &[5]),
        fixture("cyclic_squares", &[7]),
    ]
}

#[test]
fn unvalidated_graph_rejected() {
    let g = generate(&GeneratorSpec::new("path", &[2])).unwrap();
    assert_eq!(WallSet::compute(&g).unwrap_err().code(), "NOT_MEDIAN_GRAPH");
}

#[test]
fn wall_counts() {
    assert_eq!(fixture("path", &[5]).1.len(), 5);
    assert_eq!(fixture("grid", &[3, 3]).1.len(), 6);
    let (_, c5) = fixture("cyclic_squares", &[5]);
    assert_eq!(c5.len(), 5);
    for h in c5.ids() {
        assert_eq!(c5.dual_edges(h).len(), 3);
    }
    assert_eq!(fixture("staircase", &[10]).1.len(), 20);
}

#[test]
fn cyclic_square_walls_span_consecutive_squares() {
    let (g, w) = fixture("cyclic_squares", &[5]);
    for i in 0..5 {
        let h = wall(&g, &w, "c", &format!("a{i}"));
        let mut expected = vec![
            g.edge_id(0, g.vertex(&format!("a{i}")).unwrap()).unwrap(),
            g.edge_id(
                g.vertex(&format!("b{i}")).unwrap(),
                g.vertex(&format!("a{}", (i + 1) % 5)).unwrap(),
            )
            .unwrap(),
            g.edge_id(
                g.vertex(&format!("a{}", (i + 4) % 5)).unwrap(),
                g.vertex(&format!("b{}", (i + 4) % 5)).unwrap(),
            )
            .unwrap(),
        ];
        expected.sort_unstable();
        assert_eq!(w.dual_edges(h), expected.as_slice());
    }
}

#[test]
fn halfspaces_match_djokovic_sets() {
    for (g, w) in small_fixtures() {
        for h in w.ids() {
            let (u, v) = w.representative_edge(h);
            assert_eq!(w.halfspace(h, Side::Lower), &djokovic(&g, u, v));
            assert_eq!(w.halfspace(h, Side::Upper), &djokovic(&g, v, u));
            assert!(w.halfspace(h, Side::Lower).contains(0));
        }
    }
}

#[test]
fn separating_set_size_is_distance() {
    for (g, w) in small_fixtures() {
        let d = g.distance_matrix();
        for x in 0..g.vertex_count() {
            for y in 0..g.vertex_count() {
                assert_eq!(w.separating_set(x, y).len(), d[x][y]);
                assert_eq!(w.distance(x, y), d[x][y]);
            }
        }
    }
}

#[test]
fn separation_examples() {
    let (g, w) = fixture("path", &[5]);
    assert!(w.separates(2, g.vertex("v0").unwrap(), g.vertex("v5").unwrap()).unwrap());
    assert!(!w.separates(2, 3, 3).unwrap());
    assert_eq!(w.separates(9, 0, 1).unwrap_err().code(), "UNKNOWN_WALL");
    assert_eq!(
        w.separating_set(g.vertex("v1").unwrap(), g.vertex("v4").unwrap()),
        vec![1, 2, 3]
    );
    assert!(w.separating_set(4, 4).is_empty());

    let (g, w) = fixture("grid", &[3, 3]);
    let col1 = wall(&g, &w, "(1,0)", "(2,0)");
    let v = |s| g.vertex(s).unwrap();
    assert!(w.separates(col1, v("(0,2)"), v("(3,2)")).unwrap());
    assert_eq!(w.separating_set(v("(0,0)"), v("(3,3)")), (0..6).collect::<Vec<_>>());
}

#[test]
fn halfspaces_and_carriers_are_median_closed() {
    for (g, w) in small_fixtures().into_iter().take(6) {
        let n = g.vertex_count();
        for h in w.ids() {
            for set in [
                w.halfspace(h, Side::Lower),
                w.halfspace(h, Side::Upper),
                w.carrier(h),
            ] {
                for a in set.ones() {
                    for b in set.ones() {
                        for z in 0..n {
                            assert!(set.contains(g.median(a, b, z).unwrap()));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn fast_median_agrees_with_intervals() {
    for (g, w) in small_fixtures() {
        let n = g.vertex_count().min(24);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(w.median(a, b, c), g.median(a, b, c).unwrap());
                }
            }
        }
    }
}

/// Crossing via a 4-cycle carrying dual edges of both walls.
fn square_crossing(g: &MedianGraph, w: &WallSet, h: WallId, k: WallId) -> bool {
    for a in 0..g.vertex_count() {
        for &b in g.neighbors(a) {
            for &c in g.neighbors(a) {
                if b >= c {
                    continue;
                }
                for &d in g.neighbors(b) {
                    if d != a && g.has_edge(d, c) {
                        let ab = w.wall_between(g, a, b).unwrap();
                        let ac = w.wall_between(g, a, c).unwrap();
                        if (ab, ac) == (h, k) || (ab, ac) == (k, h) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

#[test]
fn crossing_agrees_with_square_witness() {
    for (g, w) in small_fixtures() {
        for h in w.ids() {
            assert_eq!(w.crosses(h, h).unwrap_err(), Error::SameWall(h));
            for k in w.ids().filter(|&k| k != h) {
                let c = w.crosses(h, k).unwrap();
                assert_eq!(c, w.crosses(k, h).unwrap());
                assert_eq!(c, square_crossing(&g, &w, h, k));
            }
        }
    }
}

#[test]
fn crossing_examples() {
    let (g, w) = fixture("grid", &[3, 3]);
    let vert = wall(&g, &w, "(0,0)", "(1,0)");
    let vert2 = wall(&g, &w, "(1,0)", "(2,0)");
    let horiz = wall(&g, &w, "(0,0)", "(0,1)");
    assert!(w.crosses(vert, horiz).unwrap());
    assert!(!w.crosses(vert, vert2).unwrap());

    let (g, w) = fixture("cyclic_squares", &[5]);
    for i in 0..5 {
        let h = wall(&g, &w, "c", &format!("a{i}"));
        let next = wall(&g, &w, "c", &format!("a{}", (i + 1) % 5));
        let skip = wall(&g, &w, "c", &format!("a{}", (i + 2) % 5));
        assert!(w.crosses(h, next).unwrap());
        assert!(!w.crosses(h, skip).unwrap());
    }
}

#[test]
fn dimensions() {
    assert_eq!(fixture("path", &[5]).1.dimension().0, 1);
    assert_eq!(fixture("grid", &[3, 3]).1.dimension().0, 2);
    assert_eq!(fixture("grid", &[2, 2, 2]).1.dimension().0, 3);
    assert_eq!(fixture("cyclic_squares", &[5]).1.dimension().0, 2);
    assert_eq!(fixture("tree", &[3, 3]).1.dimension().0, 1);
    assert_eq!(fixture("path", &[0]).1.dimension().0, 0);
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    (1u32..1 << n)
        .filter(|m| m.count_ones() as usize <= max)
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect()
}

#[test]
fn facing_characterisations_agree() {
    for (_, w) in small_fixtures() {
        if w.len() > 14 {
            continue;
        }
        for s in subsets(w.len(), 4) {
            let a = w.is_facing_tuple(&s).unwrap();
            let b = w.facing_by_assignment(&s);
            assert_eq!(a.facing, b.is_some(), "{s:?}");
            if let (Some(hs), Some(sides)) = (a.halfspaces, b) {
                assert_eq!(hs.iter().map(|&(_, s)| s).collect::<Vec<_>>(), sides);
                for (i, &(x, sx)) in hs.iter().enumerate() {
                    for &(y, sy) in &hs[i + 1..] {
                        assert!(w.halfspace(x, sx).is_disjoint(w.halfspace(y, sy)));
                    }
                }
            }
        }
    }
}

#[test]
fn facing_examples() {
    let (_, t3) = fixture("tree", &[3, 1]);
    assert!(t3.is_facing_tuple(&[0, 1, 2]).unwrap().facing);
    let (_, p5) = fixture("path", &[5]);
    assert!(!p5.is_facing_tuple(&[0, 1, 2]).unwrap().facing);
    let (_, c5) = fixture("cyclic_squares", &[5]);
    for s in subsets(5, 5).into_iter().filter(|s| s.len() == 3) {
        assert!(!c5.is_facing_tuple(&s).unwrap().facing);
        assert!(c5.facing_by_assignment(&s).is_none());
    }
}

fn brute_max_facing(w: &WallSet) -> usize {
    subsets(w.len(), w.len())
        .into_iter()
        .filter(|s| w.facing_by_assignment(s).is_some())
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

#[test]
fn max_facing_matches_subset_search() {
    for (_, w) in small_fixtures() {
        if w.len() > 14 {
            continue;
        }
        let all: Vec<_> = w.ids().collect();
        let r = w.max_facing_tuple(&all).unwrap();
        assert!(r.certified);
        assert_eq!(r.size, brute_max_facing(&w));
        assert!(w.is_facing_tuple(&r.walls).unwrap().facing);
    }
    let (_, t3) = fixture("tree", &[3, 1]);
    assert_eq!(t3.max_facing_tuple(&[0, 1, 2]).unwrap().size, 3);
    let (_, g33) = fixture("grid", &[3, 3]);
    assert_eq!(g33.max_facing_tuple(&(0..6).collect::<Vec<_>>()).unwrap().size, 2);
}

#[test]
fn tree_facing_tuple_is_the_leaf_count() {
    let (g, w) = fixture("tree", &[3, 4]);
    let all: Vec<_> = w.ids().collect();
    let r = w.max_facing_tuple(&all).unwrap();
    let leaves = (0..g.vertex_count()).filter(|&v| g.neighbors(v).len() == 1).count();
    assert_eq!(leaves, 24);
    assert!(r.certified);
    assert_eq!(r.size, leaves);
    // In a tree a facing family of edges is an antichain of subtrees, so at
    // most one wall per leaf can face the others.
    let pendant: Vec<_> = (0..g.vertex_count())
        .filter(|&v| g.neighbors(v).len() == 1)
        .map(|v| w.wall_between(&g, v, g.neighbors(v)[0]).unwrap())
        .collect();
    assert!(w.is_facing_tuple(&pendant).unwrap().facing);
}

#[test]
fn chain_examples() {
    let (_, p5) = fixture("path", &[5]);
    assert!(p5.is_chain(&[0, 1, 2, 3, 4]).unwrap());
    assert!(p5.is_chain(&[3]).unwrap());
    assert!(!p5.is_chain(&[0, 2, 1]).unwrap());
    let (g, g33) = fixture("grid", &[3, 3]);
    let vert = wall(&g, &g33, "(0,0)", "(1,0)");
    let horiz = wall(&g, &g33, "(0,0)", "(0,1)");
    assert!(!g33.is_chain(&[vert, horiz]).unwrap());
    assert!(g33.nested_sides(&[vert, horiz]).is_none());
    let (g, st) = fixture("staircase", &[4]);
    let seq: Vec<_> = (0..4)
        .map(|i| wall(&g, &st, &format!("({i},{i})"), &format!("({},{i})", i + 1)))
        .collect();
    assert!(st.is_chain(&seq).unwrap());
    assert!(st.nested_sides(&seq).is_some());
}

#[test]
fn chain_characterisations_agree() {
    for (_, w) in small_fixtures() {
        if w.len() > 10 {
            continue;
        }
        let n = w.len();
        let mut seqs: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    seqs.push(vec![a, b]);
                    for c in 0..n {
                        if c != a && c != b {
                            seqs.push(vec![a, b, c]);
                            for d in 0..n {
                                if d != a && d != b && d != c {
                                    seqs.push(vec![a, b, c, d]);
                                }
                            }
                        }
                    }
                }
            }
        }
        for s in seqs {
            assert_eq!(w.is_chain(&s).unwrap(), w.nested_sides(&s).is_some(), "{s:?}");
        }
    }
}

/// Longest strictly nested sequence of halfspaces by exhaustive extension.
fn brute_max_chain(w: &WallSet) -> usize {
    fn grow(w: &WallSet, last: (WallId, Side), used: &mut Vec<WallId>) -> usize {
        let mut best = used.len();
        for h in w.ids() {
            if used.contains(&h) {
                continue;
            }
            for s in [Side::Lower, Side::Upper] {
                let a = w.halfspace(last.0, last.1);
                let b = w.halfspace(h, s);
                if a.is_subset(b) && a != b {
                    used.push(h);
                    best = best.max(grow(w, (h, s), used));
                    used.pop();
                }
            }
        }
        best
    }
    let mut best = 0;
    for h in w.ids() {
        for s in [Side::Lower, Side::Upper] {
            best = best.max(grow(w, (h, s), &mut vec![h]));
        }
    }
    best
}

#[test]
fn max_chain_matches_exhaustive_nesting() {
    for (_, w) in small_fixtures() {
        if w.len() > 12 {
            continue;
        }
        let all: Vec<_> = w.ids().collect();
        let c = w.max_chain(&all);
        assert!(w.is_chain(&c).unwrap());
        assert_eq!(c.len(), brute_max_chain(&w));
    }
    let (_, c5) = fixture("cyclic_squares", &[5]);
    assert_eq!(c5.max_chain(&(0..5).collect::<Vec<_>>()).len(), 2);
    let (_, st10) = fixture("staircase", &[10]);
    let c = st10.max_chain(&(0..20).collect::<Vec<_>>());
    assert_eq!(c.len(), 10);
    assert!(st10.is_chain(&c).unwrap());
}

#[test]
fn quarterspace_examples() {
    let (_, g33) = fixture("grid", &[3, 3]);
    for h in g33.ids() {
        for k in g33.ids() {
            if h != k && g33.crosses(h, k).unwrap() {
                let a = g33.quarterspace_audit(h, k).unwrap();
                assert_eq!(a.nonempty_quarters, 0);
            }
        }
    }
    assert_eq!(g33.quarterspace_audit(0, 2).unwrap_err().code(), "NOT_CROSSING");

    let (g, st) = fixture("staircase", &[3]);
    let h = wall(&g, &st, "(1,1)", "(2,1)");
    let v = wall(&g, &st, "(1,1)", "(1,2)");
    let a = st.quarterspace_audit(h, v).unwrap();
    assert_eq!(a.nonempty_quarters, 2);
    let first: Vec<_> = [wall(&g, &st, "(0,0)", "(1,0)"), wall(&g, &st, "(0,0)", "(0,1)")]
        .into_iter()
        .collect();
    let last: Vec<_> = [wall(&g, &st, "(2,2)", "(3,2)"), wall(&g, &st, "(2,2)", "(2,3)")]
        .into_iter()
        .collect();
    let mut found: Vec<Vec<WallId>> = a.quarters.iter().map(|q| q.walls.clone()).filter(|w| !w.is_empty()).collect();
    found.iter_mut().for_each(|w| w.sort_unstable());
    let mut expected = vec![first, last];
    expected.iter_mut().for_each(|w| w.sort_unstable());
    expected.sort();
    found.sort();
    assert_eq!(found, expected);

    let (_, sq) = fixture("grid", &[1, 1]);
    assert_eq!(sq.quarterspace_audit(0, 1).unwrap().nonempty_quarters, 0);
}

#[test]
fn strong_separation_examples() {
    let (_, p5) = fixture("path", &[5]);
    assert!(p5.strongly_separated(0, 2).unwrap());
    let (g, g33) = fixture("grid", &[3, 3]);
    let a = wall(&g, &g33, "(0,0)", "(1,0)");
    let b = wall(&g, &g33, "(2,0)", "(3,0)");
    assert!(!g33.strongly_separated(a, b).unwrap());
    let (g, st5) = fixture("staircase", &[5]);
    let s1 = wall(&g, &st5, "(1,1)", "(2,1)");
    let s3 = wall(&g, &st5, "(3,3)", "(4,3)");
    assert!(st5.strongly_separated(s1, s3).unwrap());
    // No wall crosses both.
    for k in st5.ids() {
        assert!(!(st5.crossing_row(k).contains(s1) && st5.crossing_row(k).contains(s3)));
    }
    let s2 = wall(&g, &st5, "(2,2)", "(3,2)");
    assert!(st5.strongly_separated(s1, s2).unwrap());
    let s1b = wall(&g, &st5, "(1,1)", "(1,2)");
    assert!(!st5.strongly_separated(s1, s1b).unwrap());
    assert_eq!(st5.strongly_separated(s1, s1).unwrap_err().code(), "SAME_WALL");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn separating_set_is_distance_on_random_grids(w1 in 0i64..4, w2 in 0i64..4, w3 in 0i64..3) {
        let (g, w) = fixture("grid", &[w1, w2, w3]);
        let d = g.distance_matrix();
        for x in 0..g.vertex_count() {
            for y in 0..g.vertex_count() {
                prop_assert_eq!(w.separating_set(x, y).len(), d[x][y]);
            }
        }
    }

    #[test]
    fn median_is_symmetric(k in 4i64..8, a in 0usize..100, b in 0usize..100, c in 0usize..100) {
        let (_, w) = fixture("cyclic_squares", &[k]);
        let n = w.vertex_count();
        let (a, b, c) = (a % n, b % n, c % n);
        let m = w.median(a, b, c);
        for p in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            prop_assert_eq!(w.median(p[0], p[1], p[2]), m);
        }
        prop_assert_eq!(w.median(a, a, b), a);
    }
}
