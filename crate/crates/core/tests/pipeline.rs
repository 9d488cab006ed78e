use cubecomb::contact::{hierarchy_path, ContactGraph};
use cubecomb::convexity::{convex_hull, is_convex};
use cubecomb::dilworth::{extract_chain, grid_embedding, EmbeddingOutcome, OrientationPolicy};
use cubecomb::{generate, GeneratorSpec, GraphDocument, MedianGraph, WallSet};
use fixedbitset::FixedBitSet;
use proptest::prelude::*;

fn load(json: &str) -> (MedianGraph, WallSet) {
    let doc = GraphDocument::from_json(json).unwrap();
    let mut g = MedianGraph::load(&doc).unwrap();
    assert!(g.verify_median().passed());
    let ws = WallSet::compute(&g).unwrap();
    (g, ws)
}

#[test]
fn explicit_document_end_to_end() {
    // Two squares sharing an edge.
    let (g, ws) = load(
        r#"{"vertices": ["a","b","c","d","e","f"],
            "edges": [["a","b"],["b","c"],["d","e"],["e","f"],["a","d"],["b","e"],["c","f"]]}"#,
    );
    assert_eq!(ws.len(), 3);
    assert_eq!(ws.dimension().0, 2);
    let cg = ContactGraph::build(&ws).unwrap();
    assert_eq!(cg.edges().len(), 3);
    let (a, f) = (g.vertex("a").unwrap(), g.vertex("f").unwrap());
    let hp = hierarchy_path(&g, &ws, &cg, a, f, None, None).unwrap();
    assert_eq!(hp.len(), 3);
    let walls: Vec<usize> = ws.ids().collect();
    let r = extract_chain(&g, &ws, &walls, 2, OrientationPolicy::LexLeast).unwrap();
    assert_eq!(r.chain_length, 2);
    let mut set = FixedBitSet::with_capacity(6);
    set.insert(a);
    set.insert(f);
    assert!(!is_convex(&ws, &set).unwrap().convex);
    assert_eq!(convex_hull(&ws, &set).unwrap().len(), 6);
}

#[test]
fn generator_document_round_trip() {
    let doc = GraphDocument {
        generator: Some(GeneratorSpec::parse("product:path:2*staircase:2").unwrap()),
        ..Default::default()
    };
    let (g, ws) = load(&doc.to_json());
    assert_eq!(g.vertex_count(), 3 * 7);
    assert_eq!(ws.len(), 2 + 4);
    let back = MedianGraph::load(&g.to_document()).unwrap();
    assert_eq!(back.edges(), g.edges());
}

fn small_spec() -> impl Strategy<Value = GeneratorSpec> {
    prop_oneof![
        (1i64..5).prop_map(|n| GeneratorSpec::new("path", &[n])),
        (1i64..4, 1i64..4).prop_map(|(a, b)| GeneratorSpec::new("grid", &[a, b])),
        (1i64..5).prop_map(|n| GeneratorSpec::new("staircase", &[n])),
        (2i64..4, 1i64..3).prop_map(|(d, h)| GeneratorSpec::new("tree", &[d, h])),
        (4i64..7).prop_map(|k| GeneratorSpec::new("cyclic_squares", &[k])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn products_are_median_and_embed(a in small_spec(), b in small_spec(), seed in 0u64..1000) {
        let mut g = generate(&GeneratorSpec::product(a, b)).unwrap();
        prop_assume!(g.vertex_count() <= 400);
        prop_assert!(g.verify_median().passed());
        let ws = WallSet::compute(&g).unwrap();
        let x = seed as usize % g.vertex_count();
        let d = g.distances_from(x);
        for y in 0..g.vertex_count() {
            prop_assert_eq!(ws.distance(x, y), d[y]);
        }
        let n = ws.max_facing_tuple(&ws.ids().collect::<Vec<_>>()).unwrap().size.max(1);
        match grid_embedding(&g, &ws, x, 2, n).unwrap() {
            EmbeddingOutcome::Embedding(e) => prop_assert!(e.within_k),
            EmbeddingOutcome::FacingTuple { .. } => prop_assert!(false, "no tuple beyond the maximum"),
        }
    }
}
