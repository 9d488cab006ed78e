use std::collections::HashMap;

use super::{GeneratorSpec, MedianGraph, Vertex};
use crate::error::{Error, Result};

const MAX_VERTICES: usize = 2_000_000;

/// Builds one of the built-in fixtures.
///
/// * `path:n`: `n` edges, labels `v0..vn`.
/// * `grid:w1,..,wd`: product of paths with `wi` edges, labels `(i,j,..)`.
/// * `tree:degree,depth`: every internal vertex has `degree` neighbours.
/// * `staircase:n`: `n` unit squares glued corner to corner along the diagonal.
/// * `cyclic_squares:k`: `k >= 4` squares arranged cyclically around a vertex.
/// * `product`: cartesian product of the two factor specs.
pub fn generate(spec: &GeneratorSpec) -> Result<MedianGraph> {
    let p = &spec.params;
    let bad = |msg: &str| Err(Error::BadParams(format!("{spec}: {msg}")));
    if spec.name != "product" && !spec.factors.is_empty() {
        return bad("only product takes factors");
    }
    match spec.name.as_str() {
        "path" => match p.as_slice() {
            [n] if *n >= 0 => path(*n as usize),
            _ => bad("expected path:n with n >= 0"),
        },
        "grid" => {
            if p.is_empty() || p.iter().any(|&w| w < 0) {
                return bad("expected grid:w1,..,wd with every wi >= 0");
            }
            let widths: Vec<usize> = p.iter().map(|&w| w as usize).collect();
            let size = widths
                .iter()
                .try_fold(1usize, |acc, &w| acc.checked_mul(w + 1))
                .filter(|&s| s <= MAX_VERTICES);
            if size.is_none() {
                return bad("grid too large");
            }
            grid(&widths)
        }
        "tree" => match p.as_slice() {
            [d, h] if *d >= 2 && *h >= 0 && *h <= 40 => {
                let (d, h) = (*d as usize, *h as usize);
                let mut total = 1usize;
                let mut level = 1usize;
                for i in 0..h {
                    level = level.saturating_mul(if i == 0 { d } else { d - 1 });
                    total = total.saturating_add(level);
                }
                if total > MAX_VERTICES {
                    return bad("tree too large");
                }
                tree(d, h)
            }
            _ => bad("expected tree:degree,depth with degree >= 2, depth >= 0"),
        },
        "staircase" => match p.as_slice() {
            [n] if *n >= 1 && (*n as usize) < MAX_VERTICES / 3 => staircase(*n as usize),
            _ => bad("expected staircase:n with n >= 1"),
        },
        "cyclic_squares" => match p.as_slice() {
            [k] if *k >= 4 && (*k as usize) < MAX_VERTICES / 3 => cyclic_squares(*k as usize),
            _ => bad("expected cyclic_squares:k with k >= 4"),
        },
        "product" => {
            if spec.factors.len() != 2 || !p.is_empty() {
                return bad("product takes exactly two factors");
            }
            let a = generate(&spec.factors[0])?;
            let b = generate(&spec.factors[1])?;
            if a.vertex_count().saturating_mul(b.vertex_count()) > MAX_VERTICES {
                return bad("product too large");
            }
            Ok(product(&a, &b))
        }
        other => Err(Error::BadParams(format!("unknown generator {other:?}"))),
    }
}

fn build(labels: Vec<String>, edges: Vec<(Vertex, Vertex)>) -> Result<MedianGraph> {
    MedianGraph::from_parts(labels, edges)
}

fn path(n: usize) -> Result<MedianGraph> {
    let labels = (0..=n).map(|i| format!("v{i}")).collect();
    build(labels, (0..n).map(|i| (i, i + 1)).collect())
}

fn grid(widths: &[usize]) -> Result<MedianGraph> {
    let dims: Vec<usize> = widths.iter().map(|w| w + 1).collect();
    let total: usize = dims.iter().product();
    // Row-major with the first coordinate most significant, so index order
    // is the lexicographic order of coordinates.
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let mut labels = Vec::with_capacity(total);
    let mut edges = Vec::new();
    for idx in 0..total {
        let coords: Vec<usize> = (0..dims.len()).map(|i| idx / strides[i] % dims[i]).collect();
        let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
        labels.push(format!("({})", parts.join(",")));
        for i in 0..dims.len() {
            if coords[i] + 1 < dims[i] {
                edges.push((idx, idx + strides[i]));
            }
        }
    }
    build(labels, edges)
}

fn tree(degree: usize, depth: usize) -> Result<MedianGraph> {
    let mut labels = vec!["o".to_string()];
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    for level in 0..depth {
        let children = if level == 0 { degree } else { degree - 1 };
        let mut next = Vec::with_capacity(frontier.len() * children);
        for &parent in &frontier {
            for c in 0..children {
                let id = labels.len();
                labels.push(format!("{}.{c}", labels[parent]));
                edges.push((parent, id));
                next.push(id);
            }
        }
        frontier = next;
    }
    build(labels, edges)
}

fn staircase(n: usize) -> Result<MedianGraph> {
    let mut labels = Vec::with_capacity(3 * n + 1);
    let mut index = HashMap::new();
    for x in 0..=n {
        for y in x.saturating_sub(1)..=(x + 1).min(n) {
            index.insert((x, y), labels.len());
            labels.push(format!("({x},{y})"));
        }
    }
    let mut edges = Vec::new();
    for (&(x, y), &v) in &index {
        if let Some(&w) = index.get(&(x + 1, y)) {
            edges.push((v, w));
        }
        if let Some(&w) = index.get(&(x, y + 1)) {
            edges.push((v, w));
        }
    }
    build(labels, edges)
}

fn cyclic_squares(k: usize) -> Result<MedianGraph> {
    // 0 = centre, 1..=k inner ring a_i, k+1..=2k outer corners b_i.
    // Square i is c, a_i, b_i, a_{i+1}.
    let mut labels = vec!["c".to_string()];
    labels.extend((0..k).map(|i| format!("a{i}")));
    labels.extend((0..k).map(|i| format!("b{i}")));
    let a = |i: usize| 1 + i % k;
    let b = |i: usize| 1 + k + i % k;
    let mut edges = Vec::with_capacity(3 * k);
    for i in 0..k {
        edges.push((0, a(i)));
        edges.push((a(i), b(i)));
        edges.push((b(i), a(i + 1)));
    }
    build(labels, edges)
}

/// Cartesian product; labels are `a*b`.
pub(crate) fn product(ga: &MedianGraph, gb: &MedianGraph) -> MedianGraph {
    let nb = gb.vertex_count();
    let mut labels = Vec::with_capacity(ga.vertex_count() * nb);
    for a in ga.labels() {
        for b in gb.labels() {
            labels.push(format!("{a}*{b}"));
        }
    }
    let mut edges = Vec::new();
    for &(u, v) in ga.edges() {
        for b in 0..nb {
            edges.push((u * nb + b, v * nb + b));
        }
    }
    for a in 0..ga.vertex_count() {
        for &(u, v) in gb.edges() {
            edges.push((a * nb + u, a * nb + v));
        }
    }
    build(labels, edges).expect("product of connected simple graphs")
}
