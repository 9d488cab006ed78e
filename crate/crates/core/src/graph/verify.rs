//! Median-graph recognition.
//!
//! The production route certifies the median property through walls: the
//! square classes must each cut the graph in two, the resulting orientation
//! map must be an isometry into the hypercube, and no vertex may admit a
//! consistent single-wall flip that is missing from the graph. Together
//! these say every consistent orientation is a vertex, which for a partial
//! cube is equivalent to being median. Inputs that are not partial cubes are
//! handed to a brute-force triple scan, which also serves as the test oracle.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{interval_from_rows, MedianGraph, Vertex};
use crate::walls::partition::partition_edges;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMethod {
    WallCertificate,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MedianWitness {
    pub triple: [Vertex; 3],
    pub labels: [String; 3],
    pub median_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MedianReport {
    pub verdict: Verdict,
    pub method: VerifyMethod,
    pub vertices: usize,
    pub edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MedianWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl MedianReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Above this many vertices the brute-force route computes intervals on
/// demand instead of tabulating all of them.
const INTERVAL_TABLE_LIMIT: usize = 600;

impl MedianGraph {
    /// Checks the unique-median property and marks the graph validated on
    /// success. Failure is reported, not raised.
    pub fn verify_median(&mut self) -> MedianReport {
        let report = match certify(self) {
            Certificate::Median => self.report(Verdict::Pass, VerifyMethod::WallCertificate, None, None),
            Certificate::Missing(reason) => match majority_witness(self) {
                Some(w) => self.report(Verdict::Fail, VerifyMethod::WallCertificate, Some(w), Some(reason)),
                None => self.verify_median_brute_force(),
            },
            Certificate::NotPartialCube(reason) => {
                let mut r = self.verify_median_brute_force();
                r.reason = Some(reason);
                r
            }
        };
        if report.passed() {
            self.mark_validated();
        }
        report
    }

    /// Exhaustive scan over all triples `a < b < c`; does not mark the graph.
    pub fn verify_median_brute_force(&self) -> MedianReport {
        let n = self.vertex_count();
        let rows = self.distance_matrix();
        let table: Option<Vec<FixedBitSet>> = (n <= INTERVAL_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    t.push(interval_from_rows(&rows[a], &rows[b]));
                }
            }
            t
        });
        let interval = |a: usize, b: usize| -> FixedBitSet {
            match &table {
                Some(t) => t[a * n + b].clone(),
                None => interval_from_rows(&rows[a], &rows[b]),
            }
        };
        for a in 0..n {
            for b in a + 1..n {
                let iab = interval(a, b);
                for c in b + 1..n {
                    let mut meet = iab.clone();
                    meet.intersect_with(&interval(b, c));
                    meet.intersect_with(&interval(a, c));
                    let count = meet.count_ones(..);
                    if count != 1 {
                        let w = self.witness([a, b, c], count);
                        return self.report(Verdict::Fail, VerifyMethod::BruteForce, Some(w), None);
                    }
                }
            }
        }
        self.report(Verdict::Pass, VerifyMethod::BruteForce, None, None)
    }

    fn witness(&self, triple: [Vertex; 3], median_count: usize) -> MedianWitness {
        MedianWitness {
            triple,
            labels: triple.map(|v| self.label(v).to_string()),
            median_count,
        }
    }

    fn report(
        &self,
        verdict: Verdict,
        method: VerifyMethod,
        witness: Option<MedianWitness>,
        reason: Option<String>,
    ) -> MedianReport {
        MedianReport {
            verdict,
            method,
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            witness,
            reason,
        }
    }
}

enum Certificate {
    Median,
    Missing(String),
    NotPartialCube(String),
}

struct Orientations {
    walls: usize,
    bits: Vec<FixedBitSet>,
}

fn orientations(g: &MedianGraph) -> Result<Orientations, String> {
    let part = partition_edges(g).map_err(|e| e.to_string())?;
    let walls = part.classes.len();
    let n = g.vertex_count();
    let mut bits = vec![FixedBitSet::with_capacity(walls); n];
    for (h, side) in part.upper.iter().enumerate() {
        for v in side.ones() {
            bits[v].insert(h);
        }
    }
    for s in 0..n {
        let dist = g.distances_from(s);
        for t in 0..n {
            if dist[t] != bits[s].symmetric_difference_count(&bits[t]) {
                return Err(format!(
                    "{} and {} are separated by a different number of classes than their distance",
                    g.label(s),
                    g.label(t)
                ));
            }
        }
    }
    Ok(Orientations { walls, bits })
}

fn certify(g: &MedianGraph) -> Certificate {
    let orient = match orientations(g) {
        Ok(o) => o,
        Err(reason) => return Certificate::NotPartialCube(reason),
    };
    let w = orient.walls;
    let n = g.vertex_count();
    // Encode a vertex over 2w bits: bit 2h + side.
    let encode = |v: Vertex| {
        let mut e = FixedBitSet::with_capacity(2 * w);
        for h in 0..w {
            e.insert(2 * h + orient.bits[v].contains(h) as usize);
        }
        e
    };
    let codes: Vec<FixedBitSet> = (0..n).map(encode).collect();
    // allowed[2h + s]: the (wall, side) pairs whose halfspace meets side s of h.
    let mut allowed = vec![FixedBitSet::with_capacity(2 * w); 2 * w];
    for v in 0..n {
        for h in 0..w {
            allowed[2 * h + orient.bits[v].contains(h) as usize].union_with(&codes[v]);
        }
    }
    for (h, set) in allowed.iter_mut().enumerate() {
        let wall = h / 2;
        set.insert(2 * wall);
        set.insert(2 * wall + 1);
    }
    for v in 0..n {
        for h in 0..w {
            let flipped = !orient.bits[v].contains(h);
            let has_neighbour = g
                .neighbors(v)
                .iter()
                .any(|&u| orient.bits[u].contains(h) == flipped);
            if has_neighbour {
                continue;
            }
            if codes[v].is_subset(&allowed[2 * h + flipped as usize]) {
                return Certificate::Missing(format!(
                    "flipping {} across class {h} gives a consistent orientation with no vertex",
                    g.label(v)
                ));
            }
        }
    }
    Certificate::Median
}

/// For a partial cube the only candidate median of a triple is the vertex
/// with the majority orientation, so a missing majority is a witness.
fn majority_witness(g: &MedianGraph) -> Option<MedianWitness> {
    let orient = orientations(g).ok()?;
    let n = g.vertex_count();
    let lookup: HashMap<&FixedBitSet, Vertex> =
        orient.bits.iter().enumerate().map(|(v, b)| (b, v)).collect();
    for a in 0..n {
        for b in a + 1..n {
            let mut ab = orient.bits[a].clone();
            ab.intersect_with(&orient.bits[b]);
            let mut either = orient.bits[a].clone();
            either.union_with(&orient.bits[b]);
            for c in b + 1..n {
                let mut maj = either.clone();
                maj.intersect_with(&orient.bits[c]);
                maj.union_with(&ab);
                if !lookup.contains_key(&maj) {
                    return Some(g.witness([a, b, c], 0));
                }
            }
        }
    }
    None
}
