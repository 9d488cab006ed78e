//! Subcommand implementations.

use std::fs;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use cubecomb::contact::{hierarchy_path, single_point_check, ContactGraph};
use cubecomb::convexity::{convex_hull, gate_to_wall, is_convex, labels_of, ConvexSubcomplex};
use cubecomb::dilworth::{
    chain_in_geodesic, extract_chain, geodesic_crossing_chain, grid_embedding, restriction_quotient,
    EmbeddingOutcome, OrientationPolicy, RamseyBound,
};
use cubecomb::dynamics::{
    automorphism, classify, contact_orbit_series, essentiality_profile, growth_profile,
    hyperplane_essentiality_profile, lazy_complex, FiniteComplex, LazyComplex,
};
use cubecomb::graph::MedianReport;
use cubecomb::walls::WallId;
use cubecomb::{Error, GeneratorSpec, GraphDocument, MedianGraph, Vertex, WallSet};
use fixedbitset::FixedBitSet;

use crate::report::{envelope, error_value, render, InputId};
use crate::{Cli, Command, WallArgs};

/// Error codes meaning the input, or a precondition the caller declared,
/// was checked and refuted.
const REFUTATION_CODES: &[&str] = &["NOT_MEDIAN_GRAPH", "NOT_TWO_SIDED", "FACING_BOUND_VIOLATED", "NOT_CONVEX"];

enum Failure {
    Usage(String),
    Lib(Error),
    /// The input failed the median check.
    Invalid(MedianReport),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Success {
    result: Value,
    ramsey: Vec<RamseyBound>,
    exit: u8,
}

impl Success {
    fn new(result: Value) -> Self {
        Success {
            result,
            ramsey: Vec::new(),
            exit: 0,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialise")
}

pub fn run(cli: &Cli) -> u8 {
    let name = cli.command.name();
    let mut input = InputId::new("unknown".into(), b"");
    let outcome = execute(cli, &mut input);
    let (value, exit) = match outcome {
        Ok(s) => (envelope(name, &input, cli.seed, &s.ramsey, s.result), s.exit),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return 1;
        }
        Err(Failure::Invalid(report)) => {
            eprintln!("error: input is not a median graph");
            let err = error_value("NOT_MEDIAN_GRAPH", "input is not a median graph", Some(to_value(&report)));
            (envelope(name, &input, cli.seed, &[], err), 2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            let detail = match &e {
                Error::FacingBoundViolated(t) => Some(json!({ "facing_tuple": t })),
                Error::NotConvex(w) => Some(json!({ "witness": w })),
                _ => None,
            };
            let exit = if REFUTATION_CODES.contains(&e.code()) { 2 } else { 1 };
            (envelope(name, &input, cli.seed, &[], error_value(e.code(), &e.to_string(), detail)), exit)
        }
    };
    let text = render(&value, cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{text}"),
    }
    exit
}

/// Raw input bytes and their parsed document.
fn read_document(cli: &Cli, input: &mut InputId) -> Outcome<GraphDocument> {
    match (&cli.input, &cli.generator) {
        (Some(_), Some(_)) => Err(Failure::Usage("--input and --generator are mutually exclusive".into())),
        (None, None) => Err(Failure::Usage("one of --input or --generator is required".into())),
        (Some(path), None) => {
            let bytes = fs::read(path).map_err(|e| Failure::Usage(format!("--input {}: {e}", path.display())))?;
            *input = InputId::new(format!("file:{}", path.display()), &bytes);
            let text = String::from_utf8(bytes).map_err(|_| Failure::Usage("--input is not UTF-8".into()))?;
            Ok(GraphDocument::from_json(&text)?)
        }
        (None, Some(spec)) => {
            *input = InputId::new(format!("generator:{spec}"), spec.as_bytes());
            Ok(GraphDocument {
                generator: Some(GeneratorSpec::parse(spec)?),
                ..Default::default()
            })
        }
    }
}

struct Loaded {
    g: MedianGraph,
    ws: WallSet,
}

fn load(cli: &Cli, input: &mut InputId) -> Outcome<Loaded> {
    let doc = read_document(cli, input)?;
    let mut g = MedianGraph::load(&doc)?;
    let report = g.verify_median();
    if !report.passed() {
        return Err(Failure::Invalid(report));
    }
    let ws = WallSet::compute(&g)?;
    Ok(Loaded { g, ws })
}

fn load_lazy(cli: &Cli, input: &mut InputId) -> Outcome<Arc<dyn LazyComplex>> {
    if let (None, Some(spec)) = (&cli.input, &cli.generator) {
        *input = InputId::new(format!("generator:{spec}"), spec.as_bytes());
        return Ok(lazy_complex(&GeneratorSpec::parse(spec)?)?);
    }
    let doc = read_document(cli, input)?;
    let mut g = MedianGraph::load(&doc)?;
    let report = g.verify_median();
    if !report.passed() {
        return Err(Failure::Invalid(report));
    }
    Ok(Arc::new(FiniteComplex::new(g)?))
}

fn vertex(g: &MedianGraph, label: &str) -> Outcome<Vertex> {
    Ok(g.vertex(label.trim())?)
}

fn vertex_set(g: &MedianGraph, values: &[String]) -> Outcome<FixedBitSet> {
    let mut set = FixedBitSet::with_capacity(g.vertex_count());
    for part in values.iter().flat_map(|v| v.split(';')) {
        if !part.trim().is_empty() {
            set.insert(vertex(g, part)?);
        }
    }
    if set.is_clear() {
        return Err(Failure::Lib(Error::EmptySet));
    }
    Ok(set)
}

fn wall_list(ws: &WallSet, text: &str) -> Outcome<Vec<WallId>> {
    if text.trim() == "all" {
        return Ok(ws.ids().collect());
    }
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let h: WallId = part
            .parse()
            .map_err(|_| Failure::Usage(format!("--walls: {part:?} is not a wall id")))?;
        out.push(ws.check_wall(h)?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn policy(g: &MedianGraph, text: &str, seed: u64) -> Outcome<OrientationPolicy> {
    match text.split_once(':') {
        None if text == "lex" => Ok(OrientationPolicy::LexLeast),
        None if text == "random" => Ok(OrientationPolicy::Random(seed)),
        Some(("toward", v)) => Ok(OrientationPolicy::TowardVertex(vertex(g, v)?)),
        _ => Err(Failure::Usage(format!(
            "--orientation: expected lex, random or toward:<vertex>, got {text:?}"
        ))),
    }
}

fn radii(text: &str) -> Outcome<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Failure::Usage(format!("--radii: {s:?} is not a radius"))))
        .collect()
}

fn labels(g: &MedianGraph, vs: &[Vertex]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

/// Wall ids with the labels of a representative edge.
fn wall_edges(g: &MedianGraph, ws: &WallSet, walls: &[WallId]) -> Value {
    Value::Array(
        walls
            .iter()
            .map(|&h| {
                let (a, b) = ws.representative_edge(h);
                json!({ "wall": h, "edge": [g.label(a), g.label(b)] })
            })
            .collect(),
    )
}

fn execute(cli: &Cli, input: &mut InputId) -> Outcome<Success> {
    match &cli.command {
        Command::Validate => {
            let doc = read_document(cli, input)?;
            let mut g = MedianGraph::load(&doc)?;
            let report = g.verify_median();
            let exit = if report.passed() { 0 } else { 2 };
            Ok(Success {
                exit,
                ..Success::new(to_value(&report))
            })
        }
        Command::Walls { h } => {
            let Loaded { g, ws } = load(cli, input)?;
            let (dimension, witness) = ws.dimension();
            let all: Vec<WallId> = ws.ids().collect();
            let walls: Vec<Value> = match h {
                Some(h) => vec![to_value(&ws.summary(&g, ws.check_wall(*h)?))],
                None => all.iter().map(|&h| to_value(&ws.summary(&g, h))).collect(),
            };
            let facing = if all.is_empty() { None } else { Some(ws.max_facing_tuple(&all)?) };
            Ok(Success::new(json!({
                "count": ws.len(),
                "dimension": dimension,
                "dimension_witness": witness,
                "max_facing_tuple": facing,
                "walls": walls,
            })))
        }
        Command::Contact { h, v, hyperbolicity } => {
            let Loaded { g, ws } = load(cli, input)?;
            let cg = ContactGraph::build(&ws)?;
            let mut out = json!({
                "walls": cg.len(),
                "definition": cg.provenance(),
                "edges": cg.edges(),
                "wall_edges": wall_edges(&g, &ws, &ws.ids().collect::<Vec<_>>()),
            });
            match (h, v) {
                (Some(h), Some(v)) => {
                    let d = cg.distance(*h, *v)?;
                    out["pair"] = json!({
                        "h": h,
                        "v": v,
                        "distance": d,
                        "geodesic": cg.geodesic(*h, *v)?,
                        "single_point": if h != v { Some(single_point_check(&ws, &cg, *v, *h)?) } else { None },
                    });
                }
                (None, None) => {}
                _ => return Err(Failure::Usage("--h and --v go together".into())),
            }
            if *hyperbolicity {
                out["four_point_delta_doubled"] = match cg.four_point_delta_doubled() {
                    Some(d) => json!(d),
                    None => json!(format!("skipped: more than {} walls", cubecomb::contact::HYPERBOLICITY_LIMIT)),
                };
            }
            Ok(Success::new(out))
        }
        Command::Hull { set } => {
            let Loaded { g, ws } = load(cli, input)?;
            let s = vertex_set(&g, set)?;
            let check = is_convex(&ws, &s)?;
            let hull = convex_hull(&ws, &s)?;
            Ok(Success::new(json!({
                "set": labels_of(&g, &s),
                "convex": check.convex,
                "witness": check.witness.map(|w| labels(&g, &w)),
                "hull": labels_of(&g, hull.vertices()),
                "hull_size": hull.len(),
                "crossing_walls": hull.crossing_walls().ones().collect::<Vec<_>>(),
            })))
        }
        Command::Gate { x, set, h } => {
            let Loaded { g, ws } = load(cli, input)?;
            let xv = vertex(&g, x)?;
            match (set.is_empty(), h) {
                (false, None) => {
                    let y = ConvexSubcomplex::new(&ws, vertex_set(&g, set)?)?;
                    let gate = y.gate(&ws, xv);
                    Ok(Success::new(json!({
                        "x": x,
                        "gate": g.label(gate),
                        "distance": ws.distance(xv, gate),
                        "separating_walls": ws.separating_set(xv, gate),
                    })))
                }
                (true, Some(h)) => {
                    let h = ws.check_wall(*h)?;
                    let (gate, side) = gate_to_wall(&ws, h, xv);
                    Ok(Success::new(json!({
                        "x": x,
                        "wall": h,
                        "gate": g.label(gate),
                        "side": side,
                        "distance": ws.distance(xv, gate),
                    })))
                }
                _ => Err(Failure::Usage("give exactly one of --set or --h".into())),
            }
        }
        Command::Chains { walls, n } => {
            let Loaded { g, ws } = load(cli, input)?;
            let WallArgs { walls, orientation } = walls;
            let list = wall_list(&ws, walls)?;
            let r = extract_chain(&g, &ws, &list, *n, policy(&g, orientation, cli.seed)?)?;
            let best = ws.max_chain(&list);
            let mut out = to_value(&r);
            out["chain_edges"] = wall_edges(&g, &ws, &r.chain);
            out["max_chain"] = json!({ "length": best.len(), "walls": best });
            Ok(Success {
                ramsey: vec![r.k.ramsey],
                ..Success::new(out)
            })
        }
        Command::Geodesic { walls, x, y } => {
            let Loaded { g, ws } = load(cli, input)?;
            match (x, y) {
                (Some(x), Some(y)) => {
                    let (a, b) = (vertex(&g, x)?, vertex(&g, y)?);
                    let r = chain_in_geodesic(&g, &ws, a, b)?;
                    let mut out = to_value(&r);
                    out["x"] = json!(x);
                    out["y"] = json!(y);
                    out["chain_edges"] = wall_edges(&g, &ws, &r.chain);
                    Ok(Success::new(out))
                }
                (None, None) => {
                    let list = wall_list(&ws, &walls.walls)?;
                    let r = geodesic_crossing_chain(&g, &ws, &list, policy(&g, &walls.orientation, cli.seed)?)?;
                    let ramsey = vec![r.extraction.k.ramsey];
                    Ok(Success {
                        ramsey,
                        ..Success::new(json!({
                            "x": g.label(r.x),
                            "y": g.label(r.y),
                            "path": labels(&g, &r.path),
                            "crossed": r.crossed,
                            "walls": r.extraction.walls,
                            "guaranteed": r.guaranteed,
                            "guarantee": r.extraction.guarantee,
                            "guarantee_holds": r.guarantee_holds,
                            "chain": r.extraction.chain,
                        }))
                    })
                }
                _ => Err(Failure::Usage("--x and --y go together".into())),
            }
        }
        Command::Embed { x0, r, n } => {
            let Loaded { g, ws } = load(cli, input)?;
            let x0 = match x0 {
                Some(l) => vertex(&g, l)?,
                None => g.lex_least_vertex(),
            };
            match grid_embedding(&g, &ws, x0, *r, *n)? {
                EmbeddingOutcome::FacingTuple { search } => Ok(Success::new(json!({
                    "outcome": "facing_tuple",
                    "x0": g.label(x0),
                    "radius": r,
                    "facing_tuple": search,
                }))),
                EmbeddingOutcome::Embedding(e) => {
                    let mut out = to_value(&e);
                    out["outcome"] = json!("embedding");
                    out["x0"] = json!(g.label(x0));
                    out["coordinates"] = Value::Object(
                        e.coordinates
                            .iter()
                            .map(|(v, c)| (g.label(*v).to_string(), json!(c)))
                            .collect(),
                    );
                    Ok(Success {
                        ramsey: vec![e.k.ramsey],
                        ..Success::new(out)
                    })
                }
            }
        }
        Command::Quotient { walls } => {
            let Loaded { g, ws } = load(cli, input)?;
            let list = wall_list(&ws, walls)?;
            let q = restriction_quotient(&g, &ws, &list)?;
            let class_of: serde_json::Map<String, Value> = q
                .class_of
                .iter()
                .enumerate()
                .map(|(v, &c)| (g.label(v).to_string(), json!(q.graph.label(c))))
                .collect();
            Ok(Success::new(json!({
                "subset": list,
                "vertices": q.graph.vertex_count(),
                "edges": q.graph.edge_count(),
                "graph": to_value(&q.graph.to_document()),
                "class_of": class_of,
                "wall_map": q.wall_map,
            })))
        }
        Command::Quarterspaces { h, v } => {
            let Loaded { g, ws } = load(cli, input)?;
            match (h, v) {
                (Some(h), Some(v)) => {
                    let audit = ws.quarterspace_audit(*h, *v)?;
                    let mut out = to_value(&audit);
                    out["pair_edges"] = wall_edges(&g, &ws, &[*h, *v]);
                    Ok(Success::new(out))
                }
                (None, None) => {
                    let mut pairs = Vec::new();
                    for a in ws.ids() {
                        for b in ws.crossing_row(a).ones().filter(|&b| b > a) {
                            let audit = ws.quarterspace_audit(a, b)?;
                            pairs.push(json!({ "h": a, "v": b, "nonempty_quarters": audit.nonempty_quarters }));
                        }
                    }
                    Ok(Success::new(json!({ "crossing_pairs": pairs })))
                }
                _ => Err(Failure::Usage("--h and --v go together".into())),
            }
        }
        Command::Hierarchy { x, y, hx, hy } => {
            let Loaded { g, ws } = load(cli, input)?;
            let cg = ContactGraph::build(&ws)?;
            let (a, b) = (vertex(&g, x)?, vertex(&g, y)?);
            let p = hierarchy_path(&g, &ws, &cg, a, b, *hx, *hy)?;
            Ok(Success::new(json!({
                "x": x,
                "y": y,
                "length": p.len(),
                "distance": ws.distance(a, b),
                "walls": p.walls,
                "anchors": labels(&g, &p.anchors),
                "pieces": p.pieces.iter().map(|piece| labels(&g, piece)).collect::<Vec<_>>(),
                "path": labels(&g, &p.path),
                "reductions": p.reductions,
            })))
        }
        Command::Dynamics { auto, nmax, r, radii: extra } => {
            let complex = load_lazy(cli, input)?;
            let g = automorphism(&*complex, auto)?;
            let report = classify(&*complex, &*g, *nmax, *r)?;
            let mut out = to_value(&report);
            if let Some(text) = extra {
                out["contact_orbit_series"] = to_value(&contact_orbit_series(&*complex, &*g, *nmax, &radii(text)?)?);
            }
            Ok(Success::new(out))
        }
        Command::Growth { radii: text, essentiality } => {
            let complex = load_lazy(cli, input)?;
            let list = radii(text)?;
            let mut out = json!({ "growth": growth_profile(&*complex, &list)? });
            if *essentiality {
                let positive: Vec<usize> = list.iter().copied().filter(|&r| r > 0).collect();
                if positive.is_empty() {
                    return Err(Failure::Usage("--essentiality needs a positive radius".into()));
                }
                out["essentiality"] = to_value(&essentiality_profile(&*complex, &positive)?);
                let top = *positive.iter().max().unwrap();
                out["hyperplanes"] = to_value(&hyperplane_essentiality_profile(&*complex, top)?);
            }
            Ok(Success::new(out))
        }
    }
}
