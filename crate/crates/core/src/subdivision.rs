//! Rectangular subdivisions, the primal graph they define, and its edge labeling.

use std::collections::HashSet;

use thiserror::Error;

use crate::geometry::{seg_common, Axis, GeometryError, Pt, Rect};
use crate::scalar::Scalar;

pub const POLE_SOUTH: &str = "v_S";
pub const POLE_NORTH: &str = "v_N";
pub const POLE_WEST: &str = "v_W";
pub const POLE_EAST: &str = "v_E";
pub const POLE_NAMES: [&str; 4] = [POLE_SOUTH, POLE_NORTH, POLE_WEST, POLE_EAST];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SubdivisionError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("subdivision has no rectangles")]
    Empty,
    #[error("duplicate rectangle id {0}")]
    DuplicateId(String),
    #[error("rectangle {id} extends outside the bounds")]
    OutOfBounds { id: String },
    #[error("rectangles {a} and {b} overlap")]
    Overlap { a: String, b: String },
    #[error("bounds are not covered; gap at ({x}, {y})")]
    Gap { x: f64, y: f64 },
    #[error("four rectangles meet at ({x}, {y}): {ids:?}")]
    FourCorners { x: f64, y: f64, ids: Vec<String> },
    #[error("id {0} is reserved for the boundary poles")]
    ReservedId(String),
}

/// A validated partition of `bounds` into named rectangles.
#[derive(Clone, Debug, PartialEq)]
pub struct Subdivision<S> {
    bounds: Rect<S>,
    rects: Vec<Rect<S>>,
}

impl<S: Scalar> Subdivision<S> {
    /// Validates and canonicalizes (rects sorted by `(y1, x1)`).
    pub fn new(bounds: Rect<S>, mut rects: Vec<Rect<S>>) -> Result<Self, SubdivisionError> {
        if rects.is_empty() {
            return Err(SubdivisionError::Empty);
        }
        let mut seen = HashSet::new();
        for r in &rects {
            if r.x1 >= r.x2 || r.y1 >= r.y2 {
                return Err(GeometryError::DegenerateRect { id: r.id.clone() }.into());
            }
            if !seen.insert(r.id.as_str()) {
                return Err(SubdivisionError::DuplicateId(r.id.clone()));
            }
            if r.x1 < bounds.x1 || r.x2 > bounds.x2 || r.y1 < bounds.y1 || r.y2 > bounds.y2 {
                return Err(SubdivisionError::OutOfBounds { id: r.id.clone() });
            }
        }
        for (i, a) in rects.iter().enumerate() {
            for b in &rects[i + 1..] {
                if a.interiors_overlap(b) {
                    return Err(SubdivisionError::Overlap { a: a.id.clone(), b: b.id.clone() });
                }
            }
        }
        let covered = rects.iter().fold(S::zero(), |acc, r| acc + r.area());
        if covered != bounds.area() {
            let p = find_gap(&bounds, &rects);
            return Err(SubdivisionError::Gap { x: p.x.approx(), y: p.y.approx() });
        }
        check_four_corners(&rects)?;
        rects.sort_by(|a, b| a.y1.cmp_total(&b.y1).then_with(|| a.x1.cmp_total(&b.x1)));
        Ok(Subdivision { bounds, rects })
    }

    /// Uses the bounding box of `rects` as the bounds.
    pub fn from_rects(rects: Vec<Rect<S>>) -> Result<Self, SubdivisionError> {
        let bounds = bounding_box(&rects).ok_or(SubdivisionError::Empty)?;
        Self::new(bounds, rects)
    }

    pub fn bounds(&self) -> &Rect<S> {
        &self.bounds
    }

    pub fn rects(&self) -> &[Rect<S>] {
        &self.rects
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Rect<S>> {
        self.rects.iter().find(|r| r.id == id)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.rects.iter().position(|r| r.id == id)
    }

    /// The four pole rectangles if the subdivision is framed by them: one
    /// rectangle owning the full bottom side, one the full top side, and the
    /// left and right sides each covered by exactly those two plus one more.
    pub fn pole_frame(&self) -> Option<Poles> {
        let b = &self.bounds;
        let south = self.rects.iter().position(|r| r.x1 == b.x1 && r.x2 == b.x2 && r.y1 == b.y1)?;
        let north = self.rects.iter().position(|r| r.x1 == b.x1 && r.x2 == b.x2 && r.y2 == b.y2)?;
        if south == north {
            return None;
        }
        let (s, n) = (&self.rects[south], &self.rects[north]);
        let side = |on_side: &dyn Fn(&Rect<S>) -> bool| -> Option<usize> {
            let found: Vec<usize> = (0..self.rects.len()).filter(|&i| i != south && i != north && on_side(&self.rects[i])).collect();
            match found.as_slice() {
                [i] if self.rects[*i].y1 == s.y2 && self.rects[*i].y2 == n.y1 => Some(*i),
                _ => None,
            }
        };
        let west = side(&|r| r.x1 == b.x1)?;
        let east = side(&|r| r.x2 == b.x2)?;
        Some(Poles { south, north, west, east })
    }
}

pub fn bounding_box<S: Scalar>(rects: &[Rect<S>]) -> Option<Rect<S>> {
    let first = rects.first()?;
    let mut bb = Rect { id: "bounds".into(), ..first.clone() };
    for r in &rects[1..] {
        if r.x1 < bb.x1 {
            bb.x1 = r.x1.clone();
        }
        if r.y1 < bb.y1 {
            bb.y1 = r.y1.clone();
        }
        if r.x2 > bb.x2 {
            bb.x2 = r.x2.clone();
        }
        if r.y2 > bb.y2 {
            bb.y2 = r.y2.clone();
        }
    }
    Some(bb)
}

fn sorted_unique<S: Scalar>(mut v: Vec<S>) -> Vec<S> {
    v.sort_by(|a, b| a.cmp_total(b));
    v.dedup();
    v
}

fn find_gap<S: Scalar>(bounds: &Rect<S>, rects: &[Rect<S>]) -> Pt<S> {
    let xs = sorted_unique(rects.iter().flat_map(|r| [r.x1.clone(), r.x2.clone()]).chain([bounds.x1.clone(), bounds.x2.clone()]).collect());
    let ys = sorted_unique(rects.iter().flat_map(|r| [r.y1.clone(), r.y2.clone()]).chain([bounds.y1.clone(), bounds.y2.clone()]).collect());
    for wy in ys.windows(2) {
        for wx in xs.windows(2) {
            let c = Pt::new(S::midpoint(&wx[0], &wx[1]), S::midpoint(&wy[0], &wy[1]));
            if bounds.contains_strict(&c) && !rects.iter().any(|r| r.contains_strict(&c)) {
                return c;
            }
        }
    }
    bounds.center()
}

fn check_four_corners<S: Scalar>(rects: &[Rect<S>]) -> Result<(), SubdivisionError> {
    let corners: Vec<(Pt<S>, usize)> = rects.iter().enumerate().flat_map(|(i, r)| r.corners().into_iter().map(move |c| (c, i))).collect();
    for (k, (p, _)) in corners.iter().enumerate() {
        if corners[..k].iter().any(|(q, _)| q == p) {
            continue;
        }
        let owners: Vec<usize> = corners.iter().filter(|(q, _)| q == p).map(|(_, i)| *i).collect();
        if owners.len() >= 4 {
            return Err(SubdivisionError::FourCorners {
                x: p.x.approx(),
                y: p.y.approx(),
                ids: owners.iter().map(|&i| rects[i].id.clone()).collect(),
            });
        }
    }
    Ok(())
}

/// Indices of the four outer rectangles of a framed subdivision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Poles {
    pub south: usize,
    pub north: usize,
    pub west: usize,
    pub east: usize,
}

impl Poles {
    pub fn contains(&self, v: usize) -> bool {
        v == self.south || v == self.north || v == self.west || v == self.east
    }
}

/// Red edges record horizontal adjacencies (bottom to top), blue edges
/// vertical ones (left to right).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LabeledEdge {
    pub from: usize,
    pub to: usize,
    pub color: Color,
    /// One of the four edges between poles.
    pub exterior: bool,
}

/// Primal graph of a subdivision with its embedding and edge labeling.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledGraph {
    pub ids: Vec<String>,
    pub edges: Vec<LabeledEdge>,
    /// Counterclockwise order of incident edge indices around each vertex.
    pub rotation: Vec<Vec<usize>>,
    pub poles: Option<Poles>,
}

impl LabeledGraph {
    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|s| s == id)
    }

    pub fn other(&self, e: usize, v: usize) -> usize {
        let edge = &self.edges[e];
        if edge.from == v {
            edge.to
        } else {
            edge.from
        }
    }

    /// `(from, to, color)` triples by id, sorted. Handy for comparing labelings.
    pub fn labeled_pairs(&self) -> Vec<(String, String, Color)> {
        let mut out: Vec<_> = self.edges.iter().map(|e| (self.ids[e.from].clone(), self.ids[e.to].clone(), e.color)).collect();
        out.sort();
        out
    }

    pub fn edges_of(&self, color: Color) -> impl Iterator<Item = &LabeledEdge> {
        self.edges.iter().filter(move |e| e.color == color)
    }
}

/// One vertex per rectangle, one edge per shared segment, labeled by
/// adjacency type. The rotation system is read off the rectangle boundaries.
pub fn derive_primal<S: Scalar>(s: &Subdivision<S>) -> LabeledGraph {
    derive_from_rects(s.rects(), s.pole_frame())
}

/// As [`derive_primal`] but over a bare list of rectangles (no validation).
pub fn derive_from_rects<S: Scalar>(rects: &[Rect<S>], poles: Option<Poles>) -> LabeledGraph {
    let n = rects.len();
    let mut edges = Vec::new();
    // (vertex, side 0..4 = bottom, right, top, left, position key, edge)
    let mut incidences: Vec<Vec<(u8, S, usize)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let Some(c) = seg_common(&rects[i], &rects[j]) else { continue };
            let e = edges.len();
            let (from, to, color) = match c.axis {
                Axis::Horizontal if rects[i].y2 == c.seg.a.y => (i, j, Color::Red),
                Axis::Horizontal => (j, i, Color::Red),
                Axis::Vertical if rects[i].x2 == c.seg.a.x => (i, j, Color::Blue),
                Axis::Vertical => (j, i, Color::Blue),
            };
            let exterior = poles.is_some_and(|p| p.contains(from) && p.contains(to));
            edges.push(LabeledEdge { from, to, color, exterior });
            let mid_x = S::midpoint(&c.seg.a.x, &c.seg.b.x);
            let mid_y = S::midpoint(&c.seg.a.y, &c.seg.b.y);
            // Walking each boundary counterclockwise: bottom left-to-right,
            // right bottom-to-top, top right-to-left, left top-to-bottom.
            let (from_side, to_side, key_from, key_to) = match color {
                Color::Red => (2u8, 0u8, -mid_x.clone(), mid_x),
                Color::Blue => (1u8, 3u8, mid_y.clone(), -mid_y),
            };
            incidences[from].push((from_side, key_from, e));
            incidences[to].push((to_side, key_to, e));
        }
    }
    let rotation = incidences
        .into_iter()
        .map(|mut inc| {
            inc.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp_total(&b.1)));
            inc.into_iter().map(|(_, _, e)| e).collect()
        })
        .collect();
    LabeledGraph { ids: rects.iter().map(|r| r.id.clone()).collect(), edges, rotation, poles }
}

/// Surrounds the subdivision with four unit-thick pole strips. `v_S` and
/// `v_N` span the widened width; `v_W` and `v_E` sit between them so the
/// pole-to-pole contacts are all horizontal. Framed inputs are returned as is.
pub fn augment_boundary<S: Scalar>(s: &Subdivision<S>) -> Result<Subdivision<S>, SubdivisionError> {
    if let Some(p) = s.pole_frame() {
        let named = |i: usize, name: &str| s.rects()[i].id == name;
        if named(p.south, POLE_SOUTH) && named(p.north, POLE_NORTH) && named(p.west, POLE_WEST) && named(p.east, POLE_EAST) {
            return Ok(s.clone());
        }
    }
    if let Some(r) = s.rects().iter().find(|r| POLE_NAMES.contains(&r.id.as_str())) {
        return Err(SubdivisionError::ReservedId(r.id.clone()));
    }
    let b = s.bounds();
    let one = S::one();
    let (x0, y0) = (b.x1.clone() - one.clone(), b.y1.clone() - one.clone());
    let (x3, y3) = (b.x2.clone() + one.clone(), b.y2.clone() + one);
    let mut rects = s.rects().to_vec();
    rects.push(Rect::new(POLE_SOUTH, x0.clone(), y0.clone(), x3.clone(), b.y1.clone())?);
    rects.push(Rect::new(POLE_NORTH, x0.clone(), b.y2.clone(), x3.clone(), y3.clone())?);
    rects.push(Rect::new(POLE_WEST, x0.clone(), b.y1.clone(), b.x1.clone(), b.y2.clone())?);
    rects.push(Rect::new(POLE_EAST, b.x2.clone(), b.y1.clone(), x3.clone(), b.y2.clone())?);
    Subdivision::new(Rect::new("bounds", x0, y0, x3, y3)?, rects)
}

/// Incidence class of an edge seen from one endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Incidence {
    RedOut,
    BlueIn,
    RedIn,
    BlueOut,
}

impl Incidence {
    fn of(e: &LabeledEdge, v: usize) -> Self {
        match (e.color, e.from == v) {
            (Color::Red, true) => Incidence::RedOut,
            (Color::Red, false) => Incidence::RedIn,
            (Color::Blue, true) => Incidence::BlueOut,
            (Color::Blue, false) => Incidence::BlueIn,
        }
    }

    fn short(self) -> &'static str {
        match self {
            Incidence::RedOut => "R+",
            Incidence::BlueIn => "B-",
            Incidence::RedIn => "R-",
            Incidence::BlueOut => "B+",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelViolation {
    pub vertex: String,
    pub observed: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelReport {
    pub violations: Vec<RelViolation>,
}

impl RelReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the local labeling rule at every internal vertex and the pole
/// conditions.
pub fn validate_rel(g: &LabeledGraph) -> RelReport {
    let mut report = RelReport::default();
    let Some(poles) = g.poles else {
        report.violations.push(RelViolation {
            vertex: String::new(),
            observed: String::new(),
            reason: "graph has no pole frame".into(),
        });
        return report;
    };
    for v in 0..g.vertex_count() {
        let classes: Vec<Incidence> = g.rotation[v].iter().map(|&e| Incidence::of(&g.edges[e], v)).collect();
        let observed = classes.iter().map(|c| c.short()).collect::<Vec<_>>().join(" ");
        let mut fail = |reason: &str| {
            report.violations.push(RelViolation { vertex: g.ids[v].clone(), observed: observed.clone(), reason: reason.into() })
        };
        if poles.contains(v) {
            let expected = if v == poles.south {
                Incidence::RedOut
            } else if v == poles.north {
                Incidence::RedIn
            } else if v == poles.west {
                Incidence::BlueOut
            } else {
                Incidence::BlueIn
            };
            let ok = g.rotation[v].iter().all(|&e| {
                let edge = &g.edges[e];
                if edge.exterior {
                    let (f, t) = (edge.from, edge.to);
                    edge.color == Color::Red
                        && ((f == poles.south && (t == poles.west || t == poles.east))
                            || (t == poles.north && (f == poles.west || f == poles.east)))
                } else {
                    Incidence::of(edge, v) == expected
                }
            });
            if !ok {
                fail("pole edge has wrong color or direction");
            }
            continue;
        }
        if !cyclic_four_groups(&classes) {
            fail("incident edges do not form the four counterclockwise groups R+ B- R- B+");
        }
    }
    report
}

fn cyclic_four_groups(classes: &[Incidence]) -> bool {
    const ORDER: [Incidence; 4] = [Incidence::RedOut, Incidence::BlueIn, Incidence::RedIn, Incidence::BlueOut];
    let Some(start) = classes.iter().position(|&c| c == Incidence::RedOut) else { return false };
    // rewind to the first element of the RedOut run (cyclically)
    let n = classes.len();
    let mut s = start;
    while classes[(s + n - 1) % n] == Incidence::RedOut {
        s = (s + n - 1) % n;
        if s == start {
            return false;
        }
    }
    let mut group = 0;
    for k in 0..n {
        let c = classes[(s + k) % n];
        while group < 4 && ORDER[group] != c {
            group += 1;
        }
        if group == 4 {
            return false;
        }
    }
    // every group must be non-empty
    ORDER.iter().all(|o| classes.contains(o))
}
