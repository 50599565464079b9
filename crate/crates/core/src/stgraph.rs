//! The red st-digraph, its faces, merged dual and the face-by-face growth
//! sequence that drives the layout.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use thiserror::Error;

use crate::subdivision::{validate_rel, Color, LabeledGraph, Poles};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StGraphError {
    #[error("edge labeling is invalid at {0:?}")]
    InvalidRel(Vec<String>),
    #[error("graph has a directed cycle")]
    Cyclic,
    #[error("expected exactly one source and one sink, found sources {sources:?} and sinks {sinks:?}")]
    SourceSink { sources: Vec<String>, sinks: Vec<String> },
    #[error("face {0} is not bounded by two directed paths")]
    MalformedFace(usize),
    #[error("dual digraph is not an st-digraph")]
    BadDual,
    #[error("step {step}: left boundary of the face is not contiguous on the current right boundary")]
    NotContiguous { step: usize },
}

/// Planar st-digraph with an inherited rotation system.
#[derive(Clone, Debug, PartialEq)]
pub struct StDigraph {
    pub ids: Vec<String>,
    /// Directed edges `(from, to)`.
    pub edges: Vec<(usize, usize)>,
    /// Counterclockwise incident edge indices per vertex.
    pub rotation: Vec<Vec<usize>>,
    pub source: usize,
    pub sink: usize,
    pub poles: Poles,
}

impl StDigraph {
    /// Sources and sinks are recomputed and acyclicity is checked.
    pub fn new(ids: Vec<String>, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>, poles: Poles) -> Result<Self, StGraphError> {
        let n = ids.len();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for &(a, b) in &edges {
            outdeg[a] += 1;
            indeg[b] += 1;
        }
        let sources: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let sinks: Vec<usize> = (0..n).filter(|&v| outdeg[v] == 0).collect();
        if sources.len() != 1 || sinks.len() != 1 {
            return Err(StGraphError::SourceSink {
                sources: sources.iter().map(|&v| ids[v].clone()).collect(),
                sinks: sinks.iter().map(|&v| ids[v].clone()).collect(),
            });
        }
        let g = StDigraph { ids, edges, rotation, source: sources[0], sink: sinks[0], poles };
        if topological_order(n, &g.edges).is_none() {
            return Err(StGraphError::Cyclic);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }
}

/// Kahn's algorithm, smallest index first. `None` if there is a cycle.
pub fn topological_order(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(a, b) in edges {
        indeg[b] += 1;
        out[a].push(b);
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// The red subgraph plus the four pole edges, oriented from `v_S` to `v_N`.
pub fn build_red(g: &LabeledGraph) -> Result<StDigraph, StGraphError> {
    let report = validate_rel(g);
    if !report.passed() {
        return Err(StGraphError::InvalidRel(report.violations.into_iter().map(|v| v.vertex).collect()));
    }
    let poles = g.poles.expect("validated labeling has poles");
    let mut remap = vec![usize::MAX; g.edges.len()];
    let mut edges = Vec::new();
    for (k, e) in g.edges.iter().enumerate() {
        if e.color == Color::Red {
            remap[k] = edges.len();
            edges.push((e.from, e.to));
        }
    }
    let rotation = g
        .rotation
        .iter()
        .map(|rot| rot.iter().filter(|&&e| remap[e] != usize::MAX).map(|&e| remap[e]).collect())
        .collect();
    let r = StDigraph::new(g.ids.clone(), edges, rotation, poles)?;
    if r.source != poles.south || r.sink != poles.north {
        return Err(StGraphError::SourceSink { sources: vec![r.ids[r.source].clone()], sinks: vec![r.ids[r.sink].clone()] });
    }
    Ok(r)
}

/// Node of the merged dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DualNode {
    /// External face, left side.
    Source,
    /// External face, right side.
    Sink,
    Face(usize),
}

/// An internal face with its two boundary paths, both from the face's
/// source to its sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FacePlan {
    pub faces: Vec<Face>,
    pub dual_edges: Vec<(DualNode, DualNode)>,
    /// Internal face ids in topological order of the dual.
    pub order: Vec<usize>,
}

impl FacePlan {
    pub fn dual_vertex_count(&self) -> usize {
        self.faces.len() + 2
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }
}

/// Returns (left path, right path) of an internal face.
pub fn face_boundaries(plan: &FacePlan, f: usize) -> (&[usize], &[usize]) {
    let face = plan.face(f);
    (&face.left, &face.right)
}

/// Traces faces through the rotation system, builds the merged dual and a
/// deterministic topological order of the internal faces.
pub fn build_face_plan(r: &StDigraph) -> Result<FacePlan, StGraphError> {
    let m = r.edges.len();
    // dart 2e: along edge e; 2e+1: against it
    let dart_tail = |d: usize| if d.is_multiple_of(2) { r.edges[d / 2].0 } else { r.edges[d / 2].1 };
    let dart_head = |d: usize| if d.is_multiple_of(2) { r.edges[d / 2].1 } else { r.edges[d / 2].0 };
    let next = |d: usize| -> usize {
        let v = dart_head(d);
        let rot = &r.rotation[v];
        let pos = rot.iter().position(|&e| e == d / 2).expect("edge in rotation");
        let e = rot[(pos + rot.len() - 1) % rot.len()];
        if r.edges[e].0 == v {
            2 * e
        } else {
            2 * e + 1
        }
    };
    let mut face_of = vec![usize::MAX; 2 * m];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for d0 in 0..2 * m {
        if face_of[d0] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut cycle = Vec::new();
        let mut d = d0;
        loop {
            face_of[d] = id;
            cycle.push(d);
            d = next(d);
            if d == d0 {
                break;
            }
            if cycle.len() > 2 * m {
                return Err(StGraphError::MalformedFace(id));
            }
        }
        cycles.push(cycle);
    }
    // The external face lies left of v_S -> v_W.
    let outer_edge = r
        .edges
        .iter()
        .position(|&(a, b)| a == r.poles.south && b == r.poles.west)
        .ok_or(StGraphError::BadDual)?;
    let outer = face_of[2 * outer_edge];
    let mut faces = Vec::new();
    let mut cycle_to_face = vec![usize::MAX; cycles.len()];
    for (c, cycle) in cycles.iter().enumerate() {
        if c == outer {
            continue;
        }
        let id = faces.len();
        cycle_to_face[c] = id;
        faces.push(split_face(id, cycle, &dart_tail, &dart_head)?);
    }
    let node = |c: usize, left_side: bool| {
        if c == outer {
            if left_side {
                DualNode::Source
            } else {
                DualNode::Sink
            }
        } else {
            DualNode::Face(cycle_to_face[c])
        }
    };
    let mut dual: BTreeSet<(DualNode, DualNode)> = BTreeSet::new();
    for (e, &(a, b)) in r.edges.iter().enumerate() {
        if a == r.source && b == r.sink {
            continue;
        }
        let left = node(face_of[2 * e], true);
        let right = node(face_of[2 * e + 1], false);
        dual.insert((left, right));
    }
    let dual_edges: Vec<_> = dual.into_iter().collect();
    check_dual(faces.len(), &dual_edges)?;
    let internal: Vec<(usize, usize)> = dual_edges
        .iter()
        .filter_map(|&(a, b)| match (a, b) {
            (DualNode::Face(x), DualNode::Face(y)) => Some((x, y)),
            _ => None,
        })
        .collect();
    let order = topological_order(faces.len(), &internal).ok_or(StGraphError::BadDual)?;
    Ok(FacePlan { faces, dual_edges, order })
}

fn split_face(
    id: usize,
    cycle: &[usize],
    tail: &dyn Fn(usize) -> usize,
    head: &dyn Fn(usize) -> usize,
) -> Result<Face, StGraphError> {
    let n = cycle.len();
    let forward = |k: usize| cycle[k % n].is_multiple_of(2);
    // the face source is where a backward run hands over to a forward run
    let starts: Vec<usize> = (0..n).filter(|&k| forward(k) && !forward(k + n - 1)).collect();
    if starts.len() != 1 {
        return Err(StGraphError::MalformedFace(id));
    }
    let s = starts[0];
    let mut right = vec![tail(cycle[s])];
    let mut k = s;
    while forward(k) {
        right.push(head(cycle[k % n]));
        k += 1;
    }
    let mut left_rev = vec![tail(cycle[k % n])];
    while !forward(k) {
        left_rev.push(head(cycle[k % n]));
        k += 1;
    }
    left_rev.reverse();
    if left_rev.first() != right.first() || left_rev.last() != right.last() {
        return Err(StGraphError::MalformedFace(id));
    }
    let inner_left: BTreeSet<_> = left_rev[1..left_rev.len() - 1].iter().collect();
    if right[1..right.len() - 1].iter().any(|v| inner_left.contains(v)) {
        return Err(StGraphError::MalformedFace(id));
    }
    Ok(Face { id, left: left_rev, right })
}

fn check_dual(faces: usize, edges: &[(DualNode, DualNode)]) -> Result<(), StGraphError> {
    let index = |d: DualNode| match d {
        DualNode::Source => faces,
        DualNode::Sink => faces + 1,
        DualNode::Face(f) => f,
    };
    let flat: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (index(a), index(b))).collect();
    topological_order(faces + 2, &flat).ok_or(StGraphError::BadDual)?;
    let mut indeg = vec![0; faces + 2];
    let mut outdeg = vec![0; faces + 2];
    for &(a, b) in &flat {
        outdeg[a] += 1;
        indeg[b] += 1;
    }
    let sources: Vec<_> = (0..faces + 2).filter(|&v| indeg[v] == 0).collect();
    let sinks: Vec<_> = (0..faces + 2).filter(|&v| outdeg[v] == 0).collect();
    if sources != [faces] || sinks != [faces + 1] {
        return Err(StGraphError::BadDual);
    }
    Ok(())
}

/// One induction step: the face's left path `u_1..u_a` sits contiguously on
/// the current right boundary; `v_1..v_b` replace its interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthStep {
    pub index: usize,
    pub face: usize,
    pub left: Vec<usize>,
    pub added: Vec<usize>,
    /// Right boundary (bottom to top) before the step.
    pub boundary_before: Vec<usize>,
    /// Position of `u_1` in `boundary_before`.
    pub offset: usize,
}

/// Initial right boundary (left path of the first face) and the sequence of
/// growth steps, with contiguity checked at each step.
pub fn subgraph_sequence(plan: &FacePlan) -> Result<(Vec<usize>, Vec<GrowthStep>), StGraphError> {
    let first = plan.order.first().ok_or(StGraphError::BadDual)?;
    let initial = plan.face(*first).left.clone();
    let mut boundary = initial.clone();
    let mut steps = Vec::with_capacity(plan.order.len());
    for (index, &f) in plan.order.iter().enumerate() {
        let face = plan.face(f);
        let a = face.left.len();
        let offset = boundary
            .windows(a)
            .position(|w| w == face.left.as_slice())
            .ok_or(StGraphError::NotContiguous { step: index })?;
        let added = face.right[1..face.right.len() - 1].to_vec();
        let before = boundary.clone();
        boundary.splice(offset + 1..offset + a - 1, added.iter().copied());
        steps.push(GrowthStep { index, face: f, left: face.left.clone(), added, boundary_before: before, offset });
    }
    Ok((initial, steps))
}
