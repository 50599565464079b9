//! Text formats: `.rsub` subdivisions, `.draw` drawings, and JSON dumps of the
//! labeled graph and the face plan.
//!
//! Coordinates are exact. On input they may be JSON numbers or strings holding
//! a decimal (`-1.25`, `3e-2`) or a fraction (`7/3`); on output they are
//! strings, `p/q` or a plain integer.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::drawing::{DrawingMeta, SimDrawing, Vertex};
use crate::geometry::{Gate, Pt, Rect};
use crate::scalar::Scalar;
use crate::stgraph::{DualNode, FacePlan};
use crate::subdivision::{Color, LabeledGraph, Subdivision, SubdivisionError};
use crate::Rat;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("bad coordinate {0:?}")]
    Number(String),
    #[error("bad field {0}")]
    Field(String),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
}

pub type Result<T> = std::result::Result<T, IoError>;

/// Parses `p/q`, an integer, or a decimal with optional exponent.
pub fn parse_rational(text: &str) -> Result<Rat> {
    let bad = || IoError::Number(text.to_string());
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(k) => (&t[..k], t[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rat::from_integer(all * Pow::pow(&ten, scale as u32))
    } else {
        Rat::new(all, Pow::pow(&ten, (-scale) as u32))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn coord(v: &Value, what: &str) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(IoError::Field(what.to_string())),
    }
}

/// Decimal mirror of an exact value.
fn approx(r: &Rat) -> f64 {
    r.approx()
}

#[derive(Deserialize)]
struct RawRect {
    id: String,
    x1: Value,
    y1: Value,
    x2: Value,
    y2: Value,
}

impl RawRect {
    fn exact(&self) -> Result<Rect<Rat>> {
        let f = |v: &Value, name: &str| coord(v, &format!("{}.{name}", self.id));
        Ok(Rect::new(self.id.clone(), f(&self.x1, "x1")?, f(&self.y1, "y1")?, f(&self.x2, "x2")?, f(&self.y2, "y2")?)
            .map_err(SubdivisionError::from)?)
    }
}

#[derive(Deserialize)]
struct RawRsub {
    #[serde(default)]
    bounds: Option<Vec<Value>>,
    rects: Vec<RawRect>,
}

#[derive(Serialize)]
struct OutRect {
    id: String,
    x1: String,
    y1: String,
    x2: String,
    y2: String,
}

impl OutRect {
    fn new(r: &Rect<Rat>) -> Self {
        OutRect {
            id: r.id.clone(),
            x1: format_rational(&r.x1),
            y1: format_rational(&r.y1),
            x2: format_rational(&r.x2),
            y2: format_rational(&r.y2),
        }
    }
}

#[derive(Serialize)]
struct OutRsub {
    bounds: [String; 4],
    rects: Vec<OutRect>,
}

/// Reads a `.rsub` document. Without `bounds` the bounding box is used.
pub fn parse_rsub(text: &str) -> Result<Subdivision<Rat>> {
    let raw: RawRsub = serde_json::from_str(text)?;
    let rects = raw.rects.iter().map(RawRect::exact).collect::<Result<Vec<_>>>()?;
    match raw.bounds {
        None => Ok(Subdivision::from_rects(rects)?),
        Some(b) => {
            if b.len() != 4 {
                return Err(IoError::Field("bounds".into()));
            }
            let c = b.iter().map(|v| coord(v, "bounds")).collect::<Result<Vec<_>>>()?;
            let bounds = Rect::new("bounds", c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()).map_err(SubdivisionError::from)?;
            Ok(Subdivision::new(bounds, rects)?)
        }
    }
}

pub fn write_rsub(s: &Subdivision<Rat>) -> String {
    let b = s.bounds();
    let doc = OutRsub {
        bounds: [format_rational(&b.x1), format_rational(&b.y1), format_rational(&b.x2), format_rational(&b.y2)],
        rects: s.rects().iter().map(OutRect::new).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[derive(Serialize, Deserialize)]
struct DrawRect {
    id: String,
    x1: String,
    y1: String,
    x2: String,
    y2: String,
    approx: [f64; 4],
}

#[derive(Serialize, Deserialize)]
struct DrawVertex {
    id: String,
    x: String,
    y: String,
    approx: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct DrawGate {
    owner: String,
    lo: String,
    hi: String,
}

#[derive(Serialize, Deserialize)]
struct DrawMeta {
    steps: usize,
    width: String,
    width_approx: f64,
    augmented: bool,
}

#[derive(Serialize, Deserialize)]
struct DrawDoc {
    meta: DrawMeta,
    rects: Vec<DrawRect>,
    vertices: Vec<DrawVertex>,
    #[serde(default)]
    gates: Vec<DrawGate>,
}

pub fn write_draw(d: &SimDrawing<Rat>) -> String {
    let doc = DrawDoc {
        meta: DrawMeta {
            steps: d.meta.steps,
            width: format_rational(&d.meta.width),
            width_approx: approx(&d.meta.width),
            augmented: d.meta.augmented,
        },
        rects: d
            .rects
            .iter()
            .map(|r| DrawRect {
                id: r.id.clone(),
                x1: format_rational(&r.x1),
                y1: format_rational(&r.y1),
                x2: format_rational(&r.x2),
                y2: format_rational(&r.y2),
                approx: [approx(&r.x1), approx(&r.y1), approx(&r.x2), approx(&r.y2)],
            })
            .collect(),
        vertices: d
            .vertices
            .iter()
            .map(|v| DrawVertex {
                id: v.id.clone(),
                x: format_rational(&v.at.x),
                y: format_rational(&v.at.y),
                approx: [approx(&v.at.x), approx(&v.at.y)],
            })
            .collect(),
        gates: d
            .meta
            .gates
            .iter()
            .map(|g| DrawGate { owner: g.owner.clone(), lo: format_rational(&g.lo), hi: format_rational(&g.hi) })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// Reads a `.draw` document. Only the exact fields are used; the decimal
/// mirrors are ignored.
pub fn parse_draw(text: &str) -> Result<SimDrawing<Rat>> {
    let doc: DrawDoc = serde_json::from_str(text)?;
    let rects = doc
        .rects
        .iter()
        .map(|r| {
            Rect::new(r.id.clone(), parse_rational(&r.x1)?, parse_rational(&r.y1)?, parse_rational(&r.x2)?, parse_rational(&r.y2)?)
                .map_err(|e| IoError::Subdivision(e.into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let vertices = doc
        .vertices
        .iter()
        .map(|v| Ok(Vertex { id: v.id.clone(), at: Pt::new(parse_rational(&v.x)?, parse_rational(&v.y)?) }))
        .collect::<Result<Vec<_>>>()?;
    let gates = doc
        .gates
        .iter()
        .map(|g| Ok(Gate { owner: g.owner.clone(), lo: parse_rational(&g.lo)?, hi: parse_rational(&g.hi)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimDrawing {
        rects,
        vertices,
        meta: DrawingMeta { steps: doc.meta.steps, width: parse_rational(&doc.meta.width)?, augmented: doc.meta.augmented, gates },
    })
}

#[derive(Serialize)]
struct GraphEdge<'a> {
    from: &'a str,
    to: &'a str,
    color: &'static str,
    exterior: bool,
}

#[derive(Serialize)]
struct GraphPoles<'a> {
    south: &'a str,
    north: &'a str,
    west: &'a str,
    east: &'a str,
}

#[derive(Serialize)]
struct GraphDoc<'a> {
    vertices: &'a [String],
    poles: Option<GraphPoles<'a>>,
    edges: Vec<GraphEdge<'a>>,
}

fn color_name(c: Color) -> &'static str {
    match c {
        Color::Red => "red",
        Color::Blue => "blue",
    }
}

/// Labeled graph as JSON, edges sorted by color then endpoints.
pub fn write_graph(g: &LabeledGraph) -> String {
    let mut edges: Vec<GraphEdge> = g
        .edges
        .iter()
        .map(|e| GraphEdge { from: &g.ids[e.from], to: &g.ids[e.to], color: color_name(e.color), exterior: e.exterior })
        .collect();
    edges.sort_by_key(|e| (e.color != "red", e.from, e.to));
    let doc = GraphDoc {
        vertices: &g.ids,
        poles: g.poles.map(|p| GraphPoles {
            south: &g.ids[p.south],
            north: &g.ids[p.north],
            west: &g.ids[p.west],
            east: &g.ids[p.east],
        }),
        edges,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[derive(Serialize)]
struct PlanFace {
    id: usize,
    left: Vec<String>,
    right: Vec<String>,
}

#[derive(Serialize)]
struct PlanDoc {
    faces: Vec<PlanFace>,
    dual_edges: Vec<(String, String)>,
    order: Vec<usize>,
}

/// Face list, dual edges and face order as JSON.
pub fn write_face_plan(plan: &FacePlan, ids: &[String]) -> String {
    let names = |path: &[usize]| path.iter().map(|&v| ids[v].clone()).collect();
    let node = |d: DualNode| match d {
        DualNode::Source => "s*".to_string(),
        DualNode::Sink => "t*".to_string(),
        DualNode::Face(f) => format!("f{f}"),
    };
    let doc = PlanDoc {
        faces: plan.faces.iter().map(|f| PlanFace { id: f.id, left: names(&f.left), right: names(&f.right) }).collect(),
        dual_edges: plan.dual_edges.iter().map(|&(a, b)| (node(a), node(b))).collect(),
        order: plan.order.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}
