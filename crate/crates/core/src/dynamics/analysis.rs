//! Orbit statistics of an automorphism, measured inside one window.

use serde::Serialize;

use super::lazy::{Automorphism, LazyComplex, Point};
use super::window::{Edge, WallNamer, Window};
use crate::contact::ContactGraph;
use crate::convexity::ConvexSubcomplex;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::walls::WallId;

pub const DEFAULT_NMAX: usize = 8;

pub fn default_radius(nmax: usize) -> usize {
    4 * nmax
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeSample {
    pub n: usize,
    pub distance: usize,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallRef {
    pub wall: WallId,
    /// Labels of the wall's edge nearest the basepoint.
    pub edge: (String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizedWall {
    pub wall: WallRef,
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionBound {
    pub x: String,
    /// Largest displacement over all window walls, for `n = 1..=nmax`.
    pub per_step: Vec<usize>,
    pub max: usize,
    pub worst_wall: Option<WallRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skewering {
    pub wall: WallRef,
    pub skewers: bool,
    pub reason: String,
    /// A vertex of the deepest halfspace, and a vertex in the outer
    /// halfspace but not the inner one.
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "LOXODROMIC-CONSISTENT")]
    LoxodromicConsistent,
    #[serde(rename = "STABILIZED-WALL")]
    StabilizedWall,
    #[serde(rename = "BOUNDED-ORBIT")]
    BoundedOrbit,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::LoxodromicConsistent => "LOXODROMIC-CONSISTENT",
            Verdict::StabilizedWall => "STABILIZED-WALL",
            Verdict::BoundedOrbit => "BOUNDED-ORBIT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub complex: String,
    pub automorphism: String,
    pub radius: usize,
    pub nmax: usize,
    pub window_vertices: usize,
    pub window_walls: usize,
    pub slopes: Vec<SlopeSample>,
    pub stabilized: Option<StabilizedWall>,
    pub wall: WallRef,
    /// Window contact distance from the wall to its `n`-th image, `n = 0..=nmax`.
    pub contact_orbit: Vec<usize>,
    /// `min d(h, g^n h) / n` over `n = 1..=nmax`.
    pub contact_lower_slope: f64,
    pub orbit_contact_diameter: usize,
    /// Largest orbit diameter among walls crossed by the orbit path, when a
    /// wall is stabilized.
    pub path_wall_orbit_diameter: Option<usize>,
    pub projection: ProjectionBound,
    pub skewering: Option<Skewering>,
    pub verdict: Verdict,
    pub evidence: String,
    pub caveat: String,
}

/// A window around the basepoint together with one automorphism.
pub struct Analysis<'a> {
    complex: &'a dyn LazyComplex,
    g: &'a dyn Automorphism,
    namer: WallNamer<'a>,
    pub window: Window,
    contact: Option<ContactGraph>,
}

impl<'a> Analysis<'a> {
    pub fn new(complex: &'a dyn LazyComplex, g: &'a dyn Automorphism, radius: usize) -> Result<Self> {
        let mut namer = WallNamer::new(complex);
        let window = Window::build(&mut namer, radius)?;
        window.check_automorphism(&mut namer, g)?;
        Ok(Analysis {
            complex,
            g,
            namer,
            window,
            contact: None,
        })
    }

    pub fn contact(&mut self) -> Result<&ContactGraph> {
        if self.contact.is_none() {
            self.contact = Some(ContactGraph::build(&self.window.walls)?);
        }
        Ok(self.contact.as_ref().unwrap())
    }

    pub fn wall_ref(&self, h: WallId) -> WallRef {
        let (a, b) = self.window.root(h);
        WallRef {
            wall: h,
            edge: (self.complex.label(a), self.complex.label(b)),
        }
    }

    pub fn check_wall(&self, h: WallId) -> Result<WallId> {
        self.window.walls.check_wall(h)
    }

    /// The wall dual to the edge from the basepoint to its first neighbour
    /// in the window.
    pub fn default_wall(&self) -> Result<WallId> {
        let v = *self
            .window
            .graph
            .neighbors(0)
            .first()
            .ok_or_else(|| self.window.too_small("the window has no walls"))?;
        Ok(self.window.walls.wall_between(&self.window.graph, 0, v).expect("edge"))
    }

    fn point_vertex(&self, p: &Point, what: &str) -> Result<Vertex> {
        self.window
            .vertex(p)
            .ok_or_else(|| self.window.too_small(format!("{what} ({}) lies outside", self.complex.label(p))))
    }

    /// Window vertex of `g^n(p)`.
    pub fn orbit_vertex(&self, p: &Point, n: i64) -> Result<Vertex> {
        self.point_vertex(&self.g.power(p, n), &format!("g^{n} orbit point"))
    }

    fn image_root(&mut self, h: WallId, n: i64) -> Edge {
        let root = self.window.root(h).clone();
        self.namer.root_of_image(self.g, &root, n)
    }

    /// Window wall `g^n h`.
    pub fn wall_image(&mut self, h: WallId, n: i64) -> Result<WallId> {
        let r = self.image_root(h, n);
        self.window.wall(&r).ok_or_else(|| {
            self.window
                .too_small(format!("g^{n} of wall {h} has nearest edge at depth {}", self.namer.depth(&r)))
        })
    }

    pub fn translation_slope(&self, nmax: usize) -> Result<Vec<SlopeSample>> {
        let x0 = self.namer.oracle.x0.clone();
        let dist = self.window.graph.distances_from(0);
        (1..=nmax)
            .map(|n| {
                let v = self.orbit_vertex(&x0, n as i64)?;
                Ok(SlopeSample {
                    n,
                    distance: dist[v],
                    slope: dist[v] as f64 / n as f64,
                })
            })
            .collect()
    }

    /// First window wall, by id, with `g^p h = h` for some `1 <= p <= nmax`.
    pub fn stabilized_wall_search(&mut self, nmax: usize) -> Option<StabilizedWall> {
        for h in self.window.walls.ids() {
            let root = self.window.root(h).clone();
            for p in 1..=nmax {
                if self.namer.root_of_image(self.g, &root, p as i64) == root {
                    return Some(StabilizedWall {
                        wall: self.wall_ref(h),
                        period: p,
                    });
                }
            }
        }
        None
    }

    /// Window contact distances `d(h, g^n h)` for `n = 0..=nmax`.
    pub fn contact_orbit_growth(&mut self, h: WallId, nmax: usize) -> Result<Vec<usize>> {
        self.check_wall(h)?;
        let images = (0..=nmax as i64)
            .map(|n| self.wall_image(h, n))
            .collect::<Result<Vec<_>>>()?;
        let cg = self.contact()?;
        images.iter().map(|&k| cg.distance(h, k)).collect()
    }

    /// Diameter of `{g^i h : |i| <= nmax}` in the window contact graph.
    pub fn orbit_contact_diameter(&mut self, h: WallId, nmax: usize) -> Result<usize> {
        self.check_wall(h)?;
        let n = nmax as i64;
        let images = (-n..=n).map(|i| self.wall_image(h, i)).collect::<Result<Vec<_>>>()?;
        Ok(self.contact()?.diameter_of(&images))
    }

    /// Largest displacement `d(g_h(x), g_h(g^n x))` over all window walls,
    /// measured in the wall itself: carrier gate distance, less one when the
    /// wall separates the two gates.
    pub fn projection_bound(&self, x: &Point, nmax: usize) -> Result<ProjectionBound> {
        let ws = &self.window.walls;
        let xv = self.point_vertex(x, "x")?;
        let orbit = (1..=nmax as i64)
            .map(|n| self.orbit_vertex(x, n))
            .collect::<Result<Vec<_>>>()?;
        let mut per_step = vec![0; nmax];
        let mut worst: Option<(usize, WallId)> = None;
        for h in ws.ids() {
            let carrier = ConvexSubcomplex::carrier(ws, h);
            let gx = carrier.gate(ws, xv);
            for (i, &y) in orbit.iter().enumerate() {
                let gy = carrier.gate(ws, y);
                let d = ws.distance(gx, gy) - usize::from(ws.side_of(h, gx) != ws.side_of(h, gy));
                per_step[i] = per_step[i].max(d);
                if worst.map_or(true, |(best, _)| d > best) {
                    worst = Some((d, h));
                }
            }
        }
        Ok(ProjectionBound {
            x: self.complex.label(x),
            max: per_step.iter().copied().max().unwrap_or(0),
            per_step,
            worst_wall: worst.map(|(_, h)| self.wall_ref(h)),
        })
    }

    /// Whether `g` moves the halfspace of `h` containing `gh` strictly inside itself.
    pub fn skewering_check(&mut self, h: WallId) -> Result<Skewering> {
        self.check_wall(h)?;
        let gh = self.wall_image(h, 1)?;
        let g2h = self.wall_image(h, 2)?;
        let wall = self.wall_ref(h);
        let ws = &self.window.walls;
        let fail = |reason: &str| Skewering {
            wall: wall.clone(),
            skewers: false,
            reason: reason.into(),
            witnesses: Vec::new(),
        };
        if gh == h {
            return Ok(fail("g stabilizes the wall"));
        }
        if ws.crossing_row(h).contains(gh) {
            return Ok(fail("the wall crosses its image"));
        }
        if g2h == gh || ws.crossing_row(gh).contains(g2h) {
            return Ok(fail("the image is not disjoint from its own image"));
        }
        let outer_side = ws.side_of(h, ws.representative_edge(gh).0);
        let inner_side = ws.side_of(gh, ws.representative_edge(g2h).0);
        let outer = ws.halfspace(h, outer_side);
        let inner = ws.halfspace(gh, inner_side);
        if !inner.is_subset(outer) {
            return Ok(fail("the inner halfspace leaves the outer one"));
        }
        let deep = inner.minimum().expect("halfspaces are nonempty");
        let mut gap = outer.clone();
        gap.difference_with(inner);
        let Some(between) = gap.minimum() else {
            return Ok(fail("the containment is not strict"));
        };
        let g = &self.window.graph;
        Ok(Skewering {
            wall,
            skewers: true,
            reason: format!("{outer_side:?} halfspace of the wall strictly contains the {inner_side:?} halfspace of its image"),
            witnesses: vec![g.label(deep).to_string(), g.label(between).to_string()],
        })
    }

    pub fn classify(&mut self, nmax: usize) -> Result<ClassificationReport> {
        let slopes = self.translation_slope(nmax)?;
        let stabilized = self.stabilized_wall_search(nmax);
        let h = self.default_wall()?;
        let contact_orbit = self.contact_orbit_growth(h, nmax)?;
        let contact_lower_slope = (1..=nmax)
            .map(|n| contact_orbit[n] as f64 / n as f64)
            .fold(f64::INFINITY, f64::min);
        let orbit_contact_diameter = self.orbit_contact_diameter(h, nmax)?;
        let path_wall_orbit_diameter = match stabilized {
            Some(_) => {
                let end = self.orbit_vertex(&self.namer.oracle.x0.clone(), nmax as i64)?;
                let mut worst = 0;
                for k in self.window.walls.separating_set(0, end) {
                    worst = worst.max(self.orbit_contact_diameter(k, nmax)?);
                }
                Some(worst)
            }
            None => None,
        };
        let x0 = self.namer.oracle.x0.clone();
        let projection = self.projection_bound(&x0, nmax)?;
        let skewering = match self.skewering_check(h) {
            Ok(s) => Some(s),
            Err(Error::WindowTooSmall { .. }) => None,
            Err(e) => return Err(e),
        };
        let half = nmax.div_ceil(2);
        let projection_flat = projection.per_step[..half].iter().max() == Some(&projection.max);
        let contact_monotone = contact_orbit.windows(2).all(|w| w[0] <= w[1]);
        let (verdict, evidence) = if let Some(s) = &stabilized {
            (
                Verdict::StabilizedWall,
                format!("g^{} fixes wall {}", s.period, s.wall.wall),
            )
        } else if orbit_contact_diameter <= 3 {
            (
                Verdict::BoundedOrbit,
                format!("orbit of wall {h} has contact diameter {orbit_contact_diameter} <= 3"),
            )
        } else if contact_lower_slope > 0.0 && contact_monotone && projection_flat {
            (
                Verdict::LoxodromicConsistent,
                format!(
                    "no stabilized wall up to n = {nmax}; d(h, g^n h) >= {contact_lower_slope} n; projection displacement stays at {}",
                    projection.max
                ),
            )
        } else {
            (
                Verdict::Inconclusive,
                "orbit statistics fit none of the patterns".to_string(),
            )
        };
        Ok(ClassificationReport {
            complex: self.complex.name(),
            automorphism: self.g.name(),
            radius: self.window.radius,
            nmax,
            window_vertices: self.window.graph.vertex_count(),
            window_walls: self.window.walls.len(),
            slopes,
            stabilized,
            wall: self.wall_ref(h),
            contact_orbit,
            contact_lower_slope,
            orbit_contact_diameter,
            path_wall_orbit_diameter,
            projection,
            skewering,
            verdict,
            evidence,
            caveat: "window contact distances are upper bounds for ambient ones; verdicts are consistency checks on a finite window".into(),
        })
    }
}

/// Window contact distances `d(h, g^n h)` at each radius, for the wall
/// through the basepoint's first edge. Values can only drop as the radius
/// grows; `monotone` records whether they did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactOrbitSeries {
    pub wall: (String, String),
    pub by_radius: Vec<(usize, Vec<usize>)>,
    pub monotone: bool,
    pub stable: bool,
}

pub fn contact_orbit_series(
    complex: &dyn LazyComplex,
    g: &dyn Automorphism,
    nmax: usize,
    radii: &[usize],
) -> Result<ContactOrbitSeries> {
    let mut by_radius = Vec::new();
    let mut wall = None;
    let mut root: Option<Edge> = None;
    for &r in radii {
        let mut a = Analysis::new(complex, g, r)?;
        let h = match &root {
            None => {
                let h = a.default_wall()?;
                root = Some(a.window.root(h).clone());
                wall = Some(a.wall_ref(h).edge);
                h
            }
            Some(e) => a
                .window
                .wall(e)
                .ok_or_else(|| a.window.too_small("reference wall missing"))?,
        };
        by_radius.push((r, a.contact_orbit_growth(h, nmax)?));
    }
    let mut sorted = by_radius.clone();
    sorted.sort_by_key(|(r, _)| *r);
    let monotone = sorted
        .windows(2)
        .all(|w| w[0].1.iter().zip(&w[1].1).all(|(a, b)| b <= a));
    let stable = sorted.windows(2).last().map_or(true, |w| w[0].1 == w[1].1);
    Ok(ContactOrbitSeries {
        wall: wall.unwrap_or_default(),
        by_radius,
        monotone,
        stable,
    })
}

pub fn classify(
    complex: &dyn LazyComplex,
    g: &dyn Automorphism,
    nmax: usize,
    radius: Option<usize>,
) -> Result<ClassificationReport> {
    if nmax == 0 {
        return Err(Error::BadParams("nmax must be at least 1".into()));
    }
    Analysis::new(complex, g, radius.unwrap_or_else(|| default_radius(nmax)))?.classify(nmax)
}
