//! Locally finite periodic complexes given by neighbour oracles, and their
//! automorphisms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{generate, GeneratorSpec, MedianGraph};

/// A vertex of a lazy complex. The encoding belongs to the complex.
pub type Point = Vec<i64>;

/// A median graph presented by a neighbour oracle and an exact distance.
pub trait LazyComplex: Send + Sync {
    fn name(&self) -> String;
    fn basepoint(&self) -> Point;
    /// Neighbours in a fixed order.
    fn neighbors(&self, p: &Point) -> Vec<Point>;
    fn distance(&self, p: &Point, q: &Point) -> usize;
    fn label(&self, p: &Point) -> String;
    /// The built-in generator of the automorphism group used by `shift`.
    fn shift(&self) -> Result<Arc<dyn Automorphism>>;
}

/// An automorphism with its inverse.
pub trait Automorphism: Send + Sync {
    fn name(&self) -> String;
    fn apply(&self, p: &Point) -> Point;
    fn inverse(&self, p: &Point) -> Point;
}

impl dyn Automorphism + '_ {
    /// `g^n(p)` for any integer `n`.
    pub fn power(&self, p: &Point, n: i64) -> Point {
        let mut q = p.clone();
        for _ in 0..n.unsigned_abs() {
            q = if n > 0 { self.apply(&q) } else { self.inverse(&q) };
        }
        q
    }
}

fn l1(p: &Point, q: &Point) -> usize {
    p.iter().zip(q).map(|(a, b)| a.abs_diff(*b) as usize).sum()
}

fn tuple_label(p: &Point) -> String {
    let parts: Vec<String> = p.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// The integers.
#[derive(Debug, Clone, Copy)]
pub struct Line;

impl LazyComplex for Line {
    fn name(&self) -> String {
        "line".into()
    }
    fn basepoint(&self) -> Point {
        vec![0]
    }
    fn neighbors(&self, p: &Point) -> Vec<Point> {
        vec![vec![p[0] + 1], vec![p[0] - 1]]
    }
    fn distance(&self, p: &Point, q: &Point) -> usize {
        l1(p, q)
    }
    fn label(&self, p: &Point) -> String {
        p[0].to_string()
    }
    fn shift(&self) -> Result<Arc<dyn Automorphism>> {
        Ok(Arc::new(Translation::new(vec![1])))
    }
}

/// The standard square tiling of `Z^d`.
#[derive(Debug, Clone, Copy)]
pub struct Lattice(pub usize);

impl LazyComplex for Lattice {
    fn name(&self) -> String {
        format!("lattice:{}", self.0)
    }
    fn basepoint(&self) -> Point {
        vec![0; self.0]
    }
    fn neighbors(&self, p: &Point) -> Vec<Point> {
        let mut out = Vec::with_capacity(2 * self.0);
        for step in [1, -1] {
            for i in 0..self.0 {
                let mut q = p.clone();
                q[i] += step;
                out.push(q);
            }
        }
        out
    }
    fn distance(&self, p: &Point, q: &Point) -> usize {
        l1(p, q)
    }
    fn label(&self, p: &Point) -> String {
        tuple_label(p)
    }
    fn shift(&self) -> Result<Arc<dyn Automorphism>> {
        let mut v = vec![0; self.0];
        v[0] = 1;
        Ok(Arc::new(Translation::new(v)))
    }
}

/// The bi-infinite staircase: unit squares `[i, i+1]^2` joined corner to
/// corner, i.e. the lattice points `(x, y)` with `|x - y| <= 1`.
#[derive(Debug, Clone, Copy)]
pub struct Staircase;

impl LazyComplex for Staircase {
    fn name(&self) -> String {
        "staircase".into()
    }
    fn basepoint(&self) -> Point {
        vec![0, 0]
    }
    fn neighbors(&self, p: &Point) -> Vec<Point> {
        Lattice(2)
            .neighbors(p)
            .into_iter()
            .filter(|q| q[0].abs_diff(q[1]) <= 1)
            .collect()
    }
    fn distance(&self, p: &Point, q: &Point) -> usize {
        // A monotone lattice path between band points stays in the band.
        l1(p, q)
    }
    fn label(&self, p: &Point) -> String {
        tuple_label(p)
    }
    fn shift(&self) -> Result<Arc<dyn Automorphism>> {
        Ok(Arc::new(Translation::new(vec![1, 1])))
    }
}

/// The Cayley graph of the free product of `k` copies of `Z/2`: the
/// `k`-regular tree. Points are reduced words in the letters `0..k`.
#[derive(Debug, Clone, Copy)]
pub struct Tree(pub usize);

fn reduce_product(prefix: &[i64], word: &[i64]) -> Point {
    let mut out: Vec<i64> = word.to_vec();
    for &a in prefix.iter().rev() {
        if out.first() == Some(&a) {
            out.remove(0);
        } else {
            out.insert(0, a);
        }
    }
    out
}

impl LazyComplex for Tree {
    fn name(&self) -> String {
        format!("tree:{}", self.0)
    }
    fn basepoint(&self) -> Point {
        Vec::new()
    }
    fn neighbors(&self, p: &Point) -> Vec<Point> {
        (0..self.0 as i64)
            .map(|a| {
                let mut q = p.clone();
                if q.last() == Some(&a) {
                    q.pop();
                } else {
                    q.push(a);
                }
                q
            })
            .collect()
    }
    fn distance(&self, p: &Point, q: &Point) -> usize {
        let common = p.iter().zip(q).take_while(|(a, b)| a == b).count();
        p.len() + q.len() - 2 * common
    }
    fn label(&self, p: &Point) -> String {
        if p.is_empty() {
            "e".into()
        } else {
            p.iter().map(i64::to_string).collect::<Vec<_>>().join(".")
        }
    }
    fn shift(&self) -> Result<Arc<dyn Automorphism>> {
        if self.0 < 2 {
            return Err(Error::BadAutomorphism("tree shift needs at least two letters".into()));
        }
        TreeTranslation::new(self.0, vec![0, 1]).map(|t| Arc::new(t) as Arc<dyn Automorphism>)
    }
}

/// Cartesian product. A point is `[len(a), a.., b..]`.
pub struct Product(pub Arc<dyn LazyComplex>, pub Arc<dyn LazyComplex>);

fn split(p: &Point) -> (Point, Point) {
    let la = p[0] as usize;
    (p[1..1 + la].to_vec(), p[1 + la..].to_vec())
}

fn join(a: &Point, b: &Point) -> Point {
    let mut out = Vec::with_capacity(1 + a.len() + b.len());
    out.push(a.len() as i64);
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out
}

impl LazyComplex for Product {
    fn name(&self) -> String {
        format!("product:{}*{}", self.0.name(), self.1.name())
    }
    fn basepoint(&self) -> Point {
        join(&self.0.basepoint(), &self.1.basepoint())
    }
    fn neighbors(&self, p: &Point) -> Vec<Point> {
        let (a, b) = split(p);
        let mut out: Vec<Point> = self.0.neighbors(&a).iter().map(|x| join(x, &b)).collect();
        out.extend(self.1.neighbors(&b).iter().map(|y| join(&a, y)));
        out
    }
    fn distance(&self, p: &Point, q: &Point) -> usize {
        let (a, b) = split(p);
        let (c, d) = split(q);
        self.0.distance(&a, &c) + self.1.distance(&b, &d)
    }
    fn label(&self, p: &Point) -> String {
        let (a, b) = split(p);
        format!("{}*{}", self.0.label(&a), self.1.label(&b))
    }
    fn shift(&self) -> Result<Arc<dyn Automorphism>> {
        Ok(Arc::new(ProductMap(self.0.shift()?, self.1.shift()?)))
    }
}

/// A finite median graph viewed as a lazy complex. Points are `[index]`.
pub struct FiniteComplex {
    graph: MedianGraph,
    dist: Vec<Vec<usize>>,
}

impl FiniteComplex {
    pub fn new(mut graph: MedianGraph) -> Result<Self> {
        let report = graph.verify_median();
        if !report.passed() {
            return Err(Error::NotMedianGraph(
                report.reason.unwrap_or_else(|| "median check failed".into()),
            ));
        }
        let dist = graph.distance_matrix();
        Ok(FiniteComplex { graph, dist })
    }

    pub fn graph(&self) -> &MedianGraph {
        &self.graph
    }
}

impl LazyComplex for FiniteComplex {
    fn name(&self) -> String {
        "finite".into()
    }
    fn basepoint(&self) -> Point {
        vec![self.graph.lex_least_vertex() as i64]
    }
    fn neighbors(&self, p: &Point) -> Vec<Point> {
        self.graph.neighbors(p[0] as usize).iter().map(|&v| vec![v as i64]).collect()
    }
    fn distance(&self, p: &Point, q: &Point) -> usize {
        self.dist[p[0] as usize][q[0] as usize]
    }
    fn label(&self, p: &Point) -> String {
        self.graph.label(p[0] as usize).to_string()
    }
    fn shift(&self) -> Result<Arc<dyn Automorphism>> {
        Ok(Arc::new(Identity))
    }
}

/// Translation of a lattice-like complex by a fixed vector.
#[derive(Debug, Clone)]
pub struct Translation {
    pub vector: Vec<i64>,
}

impl Translation {
    pub fn new(vector: Vec<i64>) -> Self {
        Translation { vector }
    }
}

impl Automorphism for Translation {
    fn name(&self) -> String {
        format!("translate:{}", self.vector.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    }
    fn apply(&self, p: &Point) -> Point {
        p.iter().zip(&self.vector).map(|(a, b)| a + b).collect()
    }
    fn inverse(&self, p: &Point) -> Point {
        p.iter().zip(&self.vector).map(|(a, b)| a - b).collect()
    }
}

/// Left multiplication by a reduced word in the tree group.
#[derive(Debug, Clone)]
pub struct TreeTranslation {
    word: Vec<i64>,
    reversed: Vec<i64>,
}

impl TreeTranslation {
    pub fn new(k: usize, word: Vec<i64>) -> Result<Self> {
        if word.iter().any(|&a| a < 0 || a >= k as i64) {
            return Err(Error::BadAutomorphism(format!("letters must lie in 0..{k}")));
        }
        if word.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadAutomorphism("word is not reduced".into()));
        }
        let reversed = word.iter().rev().copied().collect();
        Ok(TreeTranslation { word, reversed })
    }
}

impl Automorphism for TreeTranslation {
    fn name(&self) -> String {
        format!("word:{}", self.word.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    }
    fn apply(&self, p: &Point) -> Point {
        reduce_product(&self.word, p)
    }
    fn inverse(&self, p: &Point) -> Point {
        reduce_product(&self.reversed, p)
    }
}

/// Coordinatewise action on a product.
pub struct ProductMap(pub Arc<dyn Automorphism>, pub Arc<dyn Automorphism>);

impl Automorphism for ProductMap {
    fn name(&self) -> String {
        format!("{}*{}", self.0.name(), self.1.name())
    }
    fn apply(&self, p: &Point) -> Point {
        let (a, b) = split(p);
        join(&self.0.apply(&a), &self.1.apply(&b))
    }
    fn inverse(&self, p: &Point) -> Point {
        let (a, b) = split(p);
        join(&self.0.inverse(&a), &self.1.inverse(&b))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Identity;

impl Automorphism for Identity {
    fn name(&self) -> String {
        "identity".into()
    }
    fn apply(&self, p: &Point) -> Point {
        p.clone()
    }
    fn inverse(&self, p: &Point) -> Point {
        p.clone()
    }
}

/// Builds a lazy complex from a generator spec. `line`, `lattice:d`,
/// `grid` (the plane), `staircase`, `tree:k` and `product:A*B` are infinite;
/// every other spec, including `grid:..` and `staircase:n`, is generated
/// as a finite graph.
pub fn lazy_complex(spec: &GeneratorSpec) -> Result<Arc<dyn LazyComplex>> {
    let p = &spec.params;
    let positive = |v: i64, what: &str| -> Result<usize> {
        if v < 1 {
            return Err(Error::BadParams(format!("{what} must be at least 1")));
        }
        Ok(v as usize)
    };
    Ok(match (spec.name.as_str(), p.len()) {
        ("line", 0) => Arc::new(Line),
        ("grid", 0) => Arc::new(Lattice(2)),
        ("lattice", 1) => Arc::new(Lattice(positive(p[0], "lattice dimension")?)),
        ("staircase", 0) => Arc::new(Staircase),
        ("tree", 1) => Arc::new(Tree(positive(p[0], "tree degree")?)),
        ("product", 0) if spec.factors.len() >= 2 => {
            let mut acc = lazy_complex(&spec.factors[0])?;
            for f in &spec.factors[1..] {
                acc = Arc::new(Product(acc, lazy_complex(f)?));
            }
            acc
        }
        _ => Arc::new(FiniteComplex::new(generate(spec)?)?),
    })
}

/// Parses `shift`, `identity`, `translate:a,b,..` or `word:a,b,..`.
pub fn automorphism(complex: &dyn LazyComplex, text: &str) -> Result<Arc<dyn Automorphism>> {
    let (name, args) = text.split_once(':').unwrap_or((text, ""));
    let nums = || -> Result<Vec<i64>> {
        args.split(',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::BadAutomorphism(format!("bad integer {s:?}")))
            })
            .collect()
    };
    match name {
        "shift" => complex.shift(),
        "identity" => Ok(Arc::new(Identity)),
        "translate" => Ok(Arc::new(Translation::new(nums()?))),
        "word" => {
            let k = complex
                .name()
                .strip_prefix("tree:")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::BadAutomorphism("word maps need a tree".into()))?;
            Ok(Arc::new(TreeTranslation::new(k, nums()?)?))
        }
        _ => Err(Error::BadAutomorphism(format!("unknown automorphism {text:?}"))),
    }
}

/// Memoised neighbour lists and basepoint distances.
pub(crate) struct Oracle<'a> {
    pub complex: &'a dyn LazyComplex,
    pub x0: Point,
    neighbors: HashMap<Point, Vec<Point>>,
    layer: HashMap<Point, usize>,
}

impl<'a> Oracle<'a> {
    pub fn new(complex: &'a dyn LazyComplex) -> Self {
        Oracle {
            x0: complex.basepoint(),
            complex,
            neighbors: HashMap::new(),
            layer: HashMap::new(),
        }
    }

    pub fn neighbors(&mut self, p: &Point) -> Vec<Point> {
        if let Some(n) = self.neighbors.get(p) {
            return n.clone();
        }
        let n = self.complex.neighbors(p);
        self.neighbors.insert(p.clone(), n.clone());
        n
    }

    pub fn layer(&mut self, p: &Point) -> usize {
        if let Some(&d) = self.layer.get(p) {
            return d;
        }
        let d = self.complex.distance(&self.x0, p);
        self.layer.insert(p.clone(), d);
        d
    }

    pub fn adjacent(&mut self, p: &Point, q: &Point) -> bool {
        self.neighbors(p).contains(q)
    }
}
