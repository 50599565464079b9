//! Face-by-face construction of a scaled dual together with a straight-line
//! drawing of its primal graph.
//!
//! Each step stretches the current right boundary, opens a notch for the new
//! rectangles, picks a gate on the right side of every critical rectangle,
//! stretches again until every gate is visible (possibly after moving one
//! boundary per non-diverging neighbor), and finally places the new vertices.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::drawing::{strip_boundary, DrawingMeta, SimDrawing, Vertex};
use crate::geometry::{
    boundary_shift_interval, min_stretch_diverging, min_stretch_diverging_interval, min_stretch_horizontal,
    min_stretch_nondiverging, seg_common, visibility_region, Gate, GeometryError, Line, Orientation, Pt, Rect,
};
use crate::scalar::{max_of, min_of, next_integer, simplest_between, Scalar};
use crate::stgraph::{build_face_plan, build_red, subgraph_sequence, GrowthStep, StGraphError};
use crate::subdivision::{
    augment_boundary, derive_from_rects, derive_primal, Color, LabeledGraph, Poles, Subdivision, SubdivisionError,
    POLE_EAST, POLE_NORTH, POLE_SOUTH, POLE_WEST,
};
use crate::verify::edge_crossing;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Graph(#[from] StGraphError),
    #[error("step {step}: adjacencies cannot be realized: {msg}")]
    Inconsistent { step: usize, msg: String },
    #[error("step {step}: {source}")]
    Geometry { step: usize, source: GeometryError },
    #[error("step {step}: invariant violated: {msg}")]
    Invariant { step: usize, msg: String },
}

impl ConstructError {
    /// True when the input itself is at fault rather than the construction.
    pub fn is_input_error(&self) -> bool {
        matches!(self, ConstructError::Subdivision(_) | ConstructError::Graph(_) | ConstructError::Inconsistent { .. })
    }
}

pub type Result<T> = std::result::Result<T, ConstructError>;

/// Current dual `D_i` with the vertices placed so far. Indices follow the
/// labeled graph of the augmented instance.
#[derive(Clone, Debug, PartialEq)]
pub struct LayoutState<S> {
    pub ids: Vec<String>,
    pub rects: Vec<Option<Rect<S>>>,
    pub points: Vec<Option<Pt<S>>>,
    /// Rectangles touching the right edge, bottom to top.
    pub stack: Vec<usize>,
    /// Common x2 of the stack.
    pub right: S,
    pub gates: Vec<Gate<S>>,
    pub placement: Placement,
}

/// How free choices inside open intervals are made.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Placement {
    /// Simplest rational in a central window of each interval and integer
    /// right edges. Keeps coordinate sizes small.
    #[default]
    Compact,
    /// Midpoints, middle thirds, exact halving of clearances, `max + 1`.
    Centered,
}

impl Placement {
    /// A point of the open interval `(lo, hi)` near its center.
    fn inside<S: Scalar>(self, lo: &S, hi: &S) -> S {
        match self {
            Placement::Centered => S::midpoint(lo, hi),
            Placement::Compact => {
                let q = (hi.clone() - lo.clone()) / S::from_int(4);
                simplest_between(&(lo.clone() + q.clone()), &(hi.clone() - q))
            }
        }
    }

    /// A point of `(lo, hi)` anywhere.
    fn anywhere<S: Scalar>(self, lo: &S, hi: &S) -> S {
        match self {
            Placement::Centered => S::midpoint(lo, hi),
            Placement::Compact => simplest_between(lo, hi),
        }
    }

    /// New right edge strictly beyond `x`.
    fn beyond<S: Scalar>(self, x: &S) -> S {
        match self {
            Placement::Centered => x.clone() + S::one(),
            Placement::Compact => next_integer(x),
        }
    }
}

impl<S: Scalar> LayoutState<S> {
    pub fn rect(&self, v: usize) -> &Rect<S> {
        self.rects[v].as_ref().expect("rectangle placed")
    }

    pub fn point(&self, v: usize) -> &Pt<S> {
        self.points[v].as_ref().expect("vertex placed")
    }

    pub fn placed(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ids.len()).filter(|&v| self.rects[v].is_some())
    }

    pub fn placed_rects(&self) -> Vec<Rect<S>> {
        self.rects.iter().flatten().cloned().collect()
    }

    fn rect_mut(&mut self, v: usize) -> &mut Rect<S> {
        self.rects[v].as_mut().expect("rectangle placed")
    }
}

/// Three stacked unit boxes for `v_S`, `v_W`, `v_N` with vertices at their
/// centers.
pub fn base_case<S: Scalar>(ids: &[String], poles: Poles, placement: Placement) -> LayoutState<S> {
    let n = ids.len();
    let mut state = LayoutState {
        ids: ids.to_vec(),
        rects: vec![None; n],
        points: vec![None; n],
        stack: vec![poles.south, poles.west, poles.north],
        right: S::one(),
        gates: Vec::new(),
        placement,
    };
    for (level, &v) in state.stack.clone().iter().enumerate() {
        let y = S::from_int(level as i64);
        let r = Rect { id: ids[v].clone(), x1: S::zero(), y1: y.clone(), x2: S::one(), y2: y + S::one() };
        state.points[v] = Some(r.center());
        state.rects[v] = Some(r);
    }
    state
}

/// How a threshold was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdKind {
    Horizontal,
    Diverging,
    NonDiverging,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Threshold<S> {
    pub u: usize,
    pub v: usize,
    pub kind: ThresholdKind,
    pub x: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Shift<S> {
    pub u: usize,
    /// Index into `vs` of the lower rectangle of the moved boundary.
    pub below: usize,
    pub y: S,
}

/// Everything decided during one induction step.
#[derive(Clone, Debug, PartialEq)]
pub struct StepPlan<S> {
    pub step: usize,
    /// `u_1..u_a`.
    pub us: Vec<usize>,
    /// `v_1..v_b`.
    pub vs: Vec<usize>,
    /// Per `v_q`: inclusive range of interior positions in `us` it touches.
    pub ranges: Vec<(usize, usize)>,
    pub critical: Vec<bool>,
    pub gates: Vec<Option<Gate<S>>>,
    pub thresholds: Vec<Threshold<S>>,
    pub shifts: Vec<Shift<S>>,
    /// Right edge before the notch was opened.
    pub notch_left: S,
}

impl<S: Scalar> StepPlan<S> {
    /// Positions in `us` of all neighbors of `v_q`, bottom to top.
    pub fn neighbors(&self, q: usize) -> Vec<usize> {
        let (p, l) = self.ranges[q];
        let mut out = Vec::new();
        if q == 0 {
            out.push(0);
        }
        out.extend(p..=l);
        if q + 1 == self.vs.len() {
            out.push(self.us.len() - 1);
        }
        out
    }

    /// Boundaries (as indices `q` of the lower rectangle) inside the span of
    /// interior `u_j`.
    fn boundaries_in(&self, j: usize) -> Vec<usize> {
        (0..self.vs.len().saturating_sub(1)).filter(|&q| self.ranges[q].1 == j).collect()
    }
}

fn inconsistent(step: usize, msg: impl Into<String>) -> ConstructError {
    ConstructError::Inconsistent { step, msg: msg.into() }
}

fn invariant(step: usize, msg: impl Into<String>) -> ConstructError {
    ConstructError::Invariant { step, msg: msg.into() }
}

fn geom(step: usize) -> impl Fn(GeometryError) -> ConstructError {
    move |source| ConstructError::Geometry { step, source }
}

/// Stretches the stack (except `u_2..u_{a-1}`) by one and inserts
/// `v_1..v_b` in the notch, with boundaries spaced evenly inside the span of
/// the `u` they fall into.
pub fn open_notch<S: Scalar>(state: &mut LayoutState<S>, g: &LabeledGraph, step: &GrowthStep) -> Result<StepPlan<S>> {
    let i = step.index;
    let us = step.left.clone();
    let vs = step.added.clone();
    let (a, b) = (us.len(), vs.len());
    if a < 3 {
        return Err(inconsistent(i, "face has no interior left vertex"));
    }
    if b == 0 {
        return Err(inconsistent(i, "face adds no vertices"));
    }
    let offset = state
        .stack
        .windows(a)
        .position(|w| w == us.as_slice())
        .ok_or_else(|| invariant(i, "left boundary is not contiguous on the stack"))?;

    let blue: HashSet<(usize, usize)> = g.edges_of(Color::Blue).map(|e| (e.from, e.to)).collect();
    let red: HashSet<(usize, usize)> = g.edges_of(Color::Red).map(|e| (e.from, e.to)).collect();
    let mut ranges = Vec::with_capacity(b);
    for (q, &v) in vs.iter().enumerate() {
        let touching: Vec<usize> = (1..a - 1).filter(|&j| blue.contains(&(us[j], v))).collect();
        let (Some(&p), Some(&l)) = (touching.first(), touching.last()) else {
            return Err(inconsistent(i, format!("{} has no left neighbor", g.ids[v])));
        };
        if touching.len() != l - p + 1 {
            return Err(inconsistent(i, format!("left neighbors of {} are not contiguous", g.ids[v])));
        }
        ranges.push((p, l));
        let below = if q == 0 { us[0] } else { vs[q - 1] };
        if !red.contains(&(below, v)) {
            return Err(inconsistent(i, format!("{} is not above {}", g.ids[v], g.ids[below])));
        }
    }
    if !red.contains(&(vs[b - 1], us[a - 1])) {
        return Err(inconsistent(i, format!("{} is not above {}", g.ids[us[a - 1]], g.ids[vs[b - 1]])));
    }
    if ranges[0].0 != 1 || ranges[b - 1].1 != a - 2 {
        return Err(inconsistent(i, "new rectangles do not cover the notch"));
    }
    for q in 0..b - 1 {
        if ranges[q + 1].0 != ranges[q].1 {
            return Err(inconsistent(i, format!("{} and {} do not share a left neighbor", g.ids[vs[q]], g.ids[vs[q + 1]])));
        }
    }

    let w = state.right.clone();
    let new_right = w.clone() + S::one();
    let interior: BTreeSet<usize> = us[1..a - 1].iter().copied().collect();
    for &s in &state.stack.clone() {
        if !interior.contains(&s) {
            state.rect_mut(s).x2 = new_right.clone();
        }
    }

    let mut plan = StepPlan {
        step: i,
        us: us.clone(),
        vs: vs.clone(),
        ranges,
        critical: Vec::new(),
        gates: vec![None; b],
        thresholds: Vec::new(),
        shifts: Vec::new(),
        notch_left: w.clone(),
    };
    plan.critical = (0..b).map(|q| plan.neighbors(q).len() >= 2).collect();

    let mut bounds = vec![S::zero(); b + 1];
    bounds[0] = state.rect(us[0]).y2.clone();
    bounds[b] = state.rect(us[a - 1]).y1.clone();
    for j in 1..a - 1 {
        let inside = plan.boundaries_in(j);
        let span = state.rect(us[j]);
        let h = span.height();
        let step_h = h / S::from_int(inside.len() as i64 + 1);
        for (k, &q) in inside.iter().enumerate() {
            let target = span.y1.clone() + step_h.clone() * S::from_int(k as i64 + 1);
            bounds[q + 1] = match state.placement {
                Placement::Centered => target,
                Placement::Compact => {
                    let half = step_h.clone() / S::two();
                    state.placement.anywhere(&(target.clone() - half.clone()), &(target + half))
                }
            };
        }
    }
    for (q, &v) in vs.iter().enumerate() {
        let r = Rect::new(g.ids[v].clone(), w.clone(), bounds[q].clone(), new_right.clone(), bounds[q + 1].clone())
            .map_err(geom(i))?;
        state.rects[v] = Some(r);
    }
    state.stack.splice(offset + 1..offset + a - 1, vs.iter().copied());
    state.right = new_right;
    Ok(plan)
}

/// Gate of each critical `v_q`: middle third of the open interval between
/// its lowest and highest neighbor vertex. Where that neighbor is `u_1` or
/// `u_a` the notch edge is used instead of the vertex height.
pub fn place_gates<S: Scalar>(state: &LayoutState<S>, plan: &mut StepPlan<S>) -> Result<()> {
    let a = plan.us.len();
    let notch_lo = state.rect(plan.us[0]).y2.clone();
    let notch_hi = state.rect(plan.us[a - 1]).y1.clone();
    for q in 0..plan.vs.len() {
        if !plan.critical[q] {
            continue;
        }
        let nb = plan.neighbors(q);
        let (lo, hi) = (nb[0], nb[nb.len() - 1]);
        let l = if lo == 0 { notch_lo.clone() } else { state.point(plan.us[lo]).y.clone() };
        let h = if hi == a - 1 { notch_hi.clone() } else { state.point(plan.us[hi]).y.clone() };
        if l >= h {
            return Err(invariant(plan.step, format!("empty gate interval for {}", state.ids[plan.vs[q]])));
        }
        let third = (h.clone() - l.clone()) / S::from_int(3);
        let (glo, ghi) = match state.placement {
            Placement::Centered => (l.clone() + third.clone(), h - third),
            Placement::Compact => {
                let sixth = third.clone() / S::two();
                let glo = simplest_between(&(l.clone() + sixth.clone()), &(l.clone() + third.clone()));
                let ghi = simplest_between(&(h.clone() - third), &(h - sixth));
                (glo, ghi)
            }
        };
        let gate = Gate::new(state.ids[plan.vs[q]].clone(), glo, ghi).map_err(geom(plan.step))?;
        plan.gates[q] = Some(gate);
    }
    Ok(())
}

/// Smallest common right edge at which every gate is (or, for non-diverging
/// neighbors, can be made) visible from every neighbor, plus one.
pub fn compute_stretch<S: Scalar>(state: &LayoutState<S>, plan: &mut StepPlan<S>) -> Result<S> {
    let a = plan.us.len();
    let b = plan.vs.len();
    let step = plan.step;
    let mut thresholds = Vec::new();
    for q in 0..b {
        let Some(gate) = plan.gates[q].clone() else { continue };
        let v = plan.vs[q];
        let rv = state.rect(v);
        for j in plan.neighbors(q) {
            let u = plan.us[j];
            let (ru, pu) = (state.rect(u), state.point(u));
            let (kind, x) = if j == 0 {
                (ThresholdKind::Horizontal, min_stretch_horizontal(pu, ru, rv, &gate, Orientation::UBelow).map_err(geom(step))?)
            } else if j == a - 1 {
                (ThresholdKind::Horizontal, min_stretch_horizontal(pu, ru, rv, &gate, Orientation::UAbove).map_err(geom(step))?)
            } else if visibility_region(pu, ru, rv).map_err(geom(step))?.is_diverging() {
                let full = min_stretch_diverging(pu, ru, rv).map_err(geom(step))?;
                let on_gate = min_stretch_diverging_interval(pu, ru, rv, &gate.lo, &gate.hi).map_err(geom(step))?;
                (ThresholdKind::Diverging, max_of(&full, &on_gate))
            } else {
                (ThresholdKind::NonDiverging, min_stretch_nondiverging(pu, ru, rv, &gate).map_err(geom(step))?)
            };
            thresholds.push(Threshold { u, v, kind, x });
        }
    }
    let mut x = state.right.clone();
    for t in &thresholds {
        x = max_of(&x, &t.x);
    }
    plan.thresholds = thresholds;
    Ok(state.placement.beyond(&x))
}

/// Moves the whole right boundary to `x`.
pub fn apply_stretch<S: Scalar>(state: &mut LayoutState<S>, x: S) {
    for s in state.stack.clone() {
        state.rect_mut(s).x2 = x.clone();
    }
    state.right = x;
}

fn set_boundary<S: Scalar>(state: &mut LayoutState<S>, plan: &StepPlan<S>, q: usize, y: S) {
    state.rect_mut(plan.vs[q]).y2 = y.clone();
    state.rect_mut(plan.vs[q + 1]).y1 = y;
}

/// For every interior `u` whose span holds boundaries between new
/// rectangles: if its vertex lies above the lowest such boundary, that
/// boundary is lifted towards it; if below the highest, that one is lowered.
/// A lone moved end that overtakes the other end pulls it to exactly the
/// vertex height. The non-critical boundaries in between are respaced.
pub fn resolve_nondiverging<S: Scalar>(state: &mut LayoutState<S>, plan: &mut StepPlan<S>) -> Result<()> {
    let step = plan.step;
    let a = plan.us.len();
    for j in 1..a - 1 {
        let inside = plan.boundaries_in(j);
        let (Some(&first), Some(&last)) = (inside.first(), inside.last()) else { continue };
        let u = plan.us[j];
        let pu = state.point(u).clone();
        let ru = state.rect(u).clone();
        let lo_now = state.rect(plan.vs[first]).y2.clone();
        let hi_now = state.rect(plan.vs[last]).y2.clone();
        let gate_of = |q: usize| {
            plan.gates[q].clone().ok_or_else(|| invariant(step, format!("{} needs a gate", state.ids[plan.vs[q]])))
        };

        let lifted = if pu.y > lo_now {
            let g = gate_of(first)?;
            let (lo, hi) = boundary_shift_interval(&pu, &ru, state.rect(plan.vs[first]), &g).map_err(geom(step))?;
            Some(state.placement.inside(&lo, &hi))
        } else {
            None
        };
        let lowered = if pu.y < hi_now {
            let g = gate_of(last + 1)?;
            let (lo, hi) = boundary_shift_interval(&pu, &ru, state.rect(plan.vs[last + 1]), &g).map_err(geom(step))?;
            Some(state.placement.inside(&lo, &hi))
        } else {
            None
        };
        if lifted.is_none() && lowered.is_none() {
            continue;
        }
        if first == last {
            let y = lifted.or(lowered).expect("one end moved");
            set_boundary(state, plan, first, y.clone());
            plan.shifts.push(Shift { u, below: first, y });
            continue;
        }
        let mut lo = lifted.clone().unwrap_or(lo_now);
        let mut hi = lowered.clone().unwrap_or(hi_now);
        if lifted.is_some() && lowered.is_none() && lo >= hi {
            hi = pu.y.clone();
        }
        if lowered.is_some() && lifted.is_none() && hi <= lo {
            lo = pu.y.clone();
        }
        if lo >= hi {
            return Err(invariant(step, format!("boundaries inside {} cross", state.ids[u])));
        }
        let m = inside.len();
        let gap = (hi.clone() - lo.clone()) / S::from_int(m as i64 - 1);
        let half = gap.clone() / S::two();
        for (k, &q) in inside.iter().enumerate() {
            let y = if k == 0 {
                lo.clone()
            } else if k + 1 == m {
                hi.clone()
            } else {
                let target = lo.clone() + gap.clone() * S::from_int(k as i64);
                state.placement.anywhere(&(target.clone() - half.clone()), &(target + half.clone()))
            };
            set_boundary(state, plan, q, y.clone());
            if k == 0 || k + 1 == m {
                plan.shifts.push(Shift { u, below: q, y });
            }
        }
    }
    check_gates(state, plan)
}

/// Every gate lies strictly inside its owner's right side and is visible
/// from every neighbor.
fn check_gates<S: Scalar>(state: &LayoutState<S>, plan: &StepPlan<S>) -> Result<()> {
    let step = plan.step;
    for q in 0..plan.vs.len() {
        let Some(g) = &plan.gates[q] else { continue };
        let rv = state.rect(plan.vs[q]);
        if !g.strictly_inside(rv) {
            return Err(invariant(step, format!("gate of {} touches the ends of its right side", rv.id)));
        }
        for j in plan.neighbors(q) {
            let u = plan.us[j];
            let vis = visibility_region(state.point(u), state.rect(u), rv).map_err(geom(step))?;
            for y in [&g.lo, &g.hi] {
                if !vis.contains(&Pt::new(rv.x2.clone(), y.clone())) {
                    return Err(invariant(step, format!("gate of {} not visible from {}", rv.id, state.ids[u])));
                }
            }
        }
    }
    Ok(())
}

/// Places `v_1..v_b`: critical ones just left of their gate's midpoint by
/// half the clearance to the nearest delimiting line, non-critical ones just
/// right of the midpoint of their shared segment.
pub fn place_step_vertices<S: Scalar>(state: &mut LayoutState<S>, plan: &StepPlan<S>) -> Result<()> {
    let step = plan.step;
    let two = S::two();
    let four = S::from_int(4);
    for q in 0..plan.vs.len() {
        let v = plan.vs[q];
        let rv = state.rect(v).clone();
        let nb = plan.neighbors(q);
        let p = match &plan.gates[q] {
            Some(g) => {
                let y = state.placement.inside(&g.lo, &g.hi);
                let mut reach = rv.x1.clone();
                for &j in &nb {
                    let u = plan.us[j];
                    let apex = state.point(u);
                    let common = seg_common(state.rect(u), &rv).ok_or_else(|| invariant(step, "neighbors stopped touching"))?;
                    for end in [common.lo(), common.hi()] {
                        if let Some(x) = Line::through(apex.clone(), end.clone()).x_at(&y) {
                            if x < rv.x2 && x > reach {
                                reach = x;
                            }
                        }
                    }
                }
                if reach >= rv.x2 {
                    return Err(invariant(step, format!("no clearance for {}", rv.id)));
                }
                let x = match state.placement {
                    Placement::Centered => rv.x2.clone() - (rv.x2.clone() - reach) / two.clone(),
                    Placement::Compact => simplest_between(&reach, &rv.x2),
                };
                Pt::new(x, y)
            }
            None => {
                let u = plan.us[nb[0]];
                let pu = state.point(u);
                let ym = state.placement.inside(&rv.y1, &rv.y2);
                let h = rv.height();
                let mut d = min_of(&(rv.width() / four.clone()), &(h.clone() / four.clone()));
                let dy = (ym.clone() - pu.y.clone()).abs();
                if dy.is_positive() {
                    d = min_of(&d, &(h * (rv.x1.clone() - pu.x.clone()) / (four.clone() * dy)));
                }
                let x = match state.placement {
                    Placement::Centered => rv.x1.clone() + d,
                    Placement::Compact => simplest_between(&rv.x1, &(rv.x1.clone() + d)),
                };
                Pt::new(x, ym)
            }
        };
        if !rv.contains_strict(&p) {
            return Err(invariant(step, format!("vertex of {} not inside its rectangle", rv.id)));
        }
        for &j in &nb {
            let u = plan.us[j];
            let vis = visibility_region(state.point(u), state.rect(u), &rv).map_err(geom(step))?;
            if !vis.contains(&p) {
                return Err(invariant(step, format!("vertex of {} not visible from {}", rv.id, state.ids[u])));
            }
        }
        state.points[v] = Some(p);
    }
    for g in plan.gates.iter().flatten() {
        state.gates.push(g.clone());
    }
    Ok(())
}

/// Checks that the placed part is a valid dual labeled like the input and
/// that all its edges are drawn correctly.
pub fn check_state<S: Scalar>(state: &LayoutState<S>, input: &LabeledGraph, step: usize) -> Result<()> {
    let rects = state.placed_rects();
    Subdivision::from_rects(rects.clone()).map_err(|e| invariant(step, format!("layout is not a subdivision: {e}")))?;
    let placed: HashSet<&str> = rects.iter().map(|r| r.id.as_str()).collect();
    let expected: BTreeSet<_> = input
        .labeled_pairs()
        .into_iter()
        .filter(|(a, b, _)| placed.contains(a.as_str()) && placed.contains(b.as_str()))
        .collect();
    let derived = derive_from_rects(&rects, None);
    let actual: BTreeSet<_> = derived.labeled_pairs().into_iter().collect();
    if expected != actual {
        let diff: Vec<_> = expected.symmetric_difference(&actual).collect();
        return Err(invariant(step, format!("labeling differs from the input on {diff:?}")));
    }
    for e in &derived.edges {
        let (ru, rv) = (&rects[e.from], &rects[e.to]);
        let (Some(pu), Some(pv)) = (state.points[index(state, &ru.id)].as_ref(), state.points[index(state, &rv.id)].as_ref())
        else {
            return Err(invariant(step, format!("{} or {} has no vertex", ru.id, rv.id)));
        };
        edge_crossing(pu, pv, ru, rv).map_err(|msg| invariant(step, format!("edge {}-{}: {msg}", ru.id, rv.id)))?;
    }
    Ok(())
}

fn index<S>(state: &LayoutState<S>, id: &str) -> usize {
    state.ids.iter().position(|s| s == id).expect("known id")
}

/// Read-only view handed to the step hook.
#[derive(Clone, Debug)]
pub struct StepSnapshot<'a, S> {
    /// 0 for the base case, then 1..=k.
    pub step: usize,
    pub state: &'a LayoutState<S>,
    pub plan: Option<&'a StepPlan<S>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Run [`check_state`] after every step.
    pub check_steps: bool,
    pub placement: Placement,
}

/// Full pipeline: augment, plan, base case, one step per face, strip.
pub fn run<S: Scalar>(sub: &Subdivision<S>) -> Result<SimDrawing<S>> {
    run_with(sub, RunOptions::default(), |_| {})
}

pub fn run_with<S: Scalar>(
    sub: &Subdivision<S>,
    options: RunOptions,
    mut hook: impl FnMut(&StepSnapshot<'_, S>),
) -> Result<SimDrawing<S>> {
    let already_framed = sub.get(POLE_SOUTH).is_some();
    let aug = augment_boundary(sub)?;
    let g = derive_primal(&aug);
    let red = build_red(&g)?;
    let face_plan = build_face_plan(&red)?;
    let (initial, steps) = subgraph_sequence(&face_plan)?;
    let poles = red.poles;
    if initial != [poles.south, poles.west, poles.north] {
        return Err(invariant(0, "first face is not bounded by the west pole"));
    }

    let mut state = base_case::<S>(&g.ids, poles, options.placement);
    hook(&StepSnapshot { step: 0, state: &state, plan: None });
    for gs in &steps {
        let n = gs.index + 1;
        let mut gs = gs.clone();
        gs.index = n;
        let mut plan = open_notch(&mut state, &g, &gs)?;
        place_gates(&state, &mut plan)?;
        let x = compute_stretch(&state, &mut plan)?;
        apply_stretch(&mut state, x);
        resolve_nondiverging(&mut state, &mut plan)?;
        place_step_vertices(&mut state, &plan)?;
        if options.check_steps {
            check_state(&state, &g, n)?;
        }
        hook(&StepSnapshot { step: n, state: &state, plan: Some(&plan) });
    }
    if state.rects.iter().any(Option::is_none) {
        return Err(invariant(steps.len(), "some rectangles were never placed"));
    }

    let rects: Vec<Rect<S>> = state.rects.iter().flatten().cloned().collect();
    let vertices = state
        .points
        .iter()
        .zip(&state.ids)
        .map(|(p, id)| Vertex { id: id.clone(), at: p.clone().expect("all placed") })
        .collect();
    let drawing = SimDrawing {
        rects,
        vertices,
        meta: DrawingMeta { steps: steps.len(), width: state.right.clone(), augmented: !already_framed, gates: state.gates.clone() },
    };
    let mut out = strip_boundary(drawing).map_err(|e| invariant(steps.len(), e.to_string()))?;
    let order: Vec<&str> = sub.rects().iter().map(|r| r.id.as_str()).collect();
    out.rects.sort_by_key(|r| order.iter().position(|id| *id == r.id));
    out.vertices.sort_by_key(|v| order.iter().position(|id| *id == v.id));
    Ok(out)
}

/// Ids of the poles in the order south, west, north, east.
pub fn pole_ids() -> [&'static str; 4] {
    [POLE_SOUTH, POLE_WEST, POLE_NORTH, POLE_EAST]
}
