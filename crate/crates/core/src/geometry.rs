//! Exact planar primitives and the visibility solvers used by the layout.
//!
//! Every predicate is decided with the scalar's own arithmetic; with
//! [`crate::Rat`] there is no rounding anywhere on a decision path. Lines are
//! kept in two-point form and compared through cross products.

use std::fmt;

use thiserror::Error;

use crate::scalar::{max_of, min_of, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("degenerate rectangle {id}: requires x1 < x2 and y1 < y2")]
    DegenerateRect { id: String },
    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,
    #[error("rectangles {u} and {v} share no boundary segment of positive length")]
    NotAdjacent { u: String, v: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no stretch makes the interval visible: {0}")]
    Unreachable(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Clone, Debug, PartialEq)]
pub struct Pt<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Pt<S> {
    pub fn new(x: S, y: S) -> Self {
        Pt { x, y }
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Pt<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Vertical,
    Horizontal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Seg<S> {
    pub a: Pt<S>,
    pub b: Pt<S>,
}

impl<S: Scalar> Seg<S> {
    pub fn new(a: Pt<S>, b: Pt<S>) -> Result<Self> {
        if a == b {
            return Err(GeometryError::DegenerateSegment);
        }
        Ok(Seg { a, b })
    }

    pub fn axis(&self) -> Option<Axis> {
        if self.a.x == self.b.x {
            Some(Axis::Vertical)
        } else if self.a.y == self.b.y {
            Some(Axis::Horizontal)
        } else {
            None
        }
    }

    /// True when `p` lies on the segment but is neither endpoint.
    pub fn relative_interior_contains(&self, p: &Pt<S>) -> bool {
        orient(&self.a, &self.b, p).is_zero() && *p != self.a && *p != self.b && within_box(&self.a, &self.b, p)
    }
}

/// Axis-aligned rectangle with a name.
#[derive(Clone, Debug, PartialEq)]
pub struct Rect<S> {
    pub id: String,
    pub x1: S,
    pub y1: S,
    pub x2: S,
    pub y2: S,
}

impl<S: Scalar> Rect<S> {
    pub fn new(id: impl Into<String>, x1: S, y1: S, x2: S, y2: S) -> Result<Self> {
        let id = id.into();
        if x1 >= x2 || y1 >= y2 {
            return Err(GeometryError::DegenerateRect { id });
        }
        Ok(Rect { id, x1, y1, x2, y2 })
    }

    pub fn width(&self) -> S {
        self.x2.clone() - self.x1.clone()
    }

    pub fn height(&self) -> S {
        self.y2.clone() - self.y1.clone()
    }

    pub fn area(&self) -> S {
        self.width() * self.height()
    }

    pub fn center(&self) -> Pt<S> {
        Pt::new(S::midpoint(&self.x1, &self.x2), S::midpoint(&self.y1, &self.y2))
    }

    pub fn contains_strict(&self, p: &Pt<S>) -> bool {
        self.x1 < p.x && p.x < self.x2 && self.y1 < p.y && p.y < self.y2
    }

    pub fn contains_closed(&self, p: &Pt<S>) -> bool {
        self.x1 <= p.x && p.x <= self.x2 && self.y1 <= p.y && p.y <= self.y2
    }

    /// Rightmost side, bottom to top.
    pub fn right_side(&self) -> Seg<S> {
        Seg {
            a: Pt::new(self.x2.clone(), self.y1.clone()),
            b: Pt::new(self.x2.clone(), self.y2.clone()),
        }
    }

    pub fn corners(&self) -> [Pt<S>; 4] {
        [
            Pt::new(self.x1.clone(), self.y1.clone()),
            Pt::new(self.x2.clone(), self.y1.clone()),
            Pt::new(self.x2.clone(), self.y2.clone()),
            Pt::new(self.x1.clone(), self.y2.clone()),
        ]
    }

    /// Bottom, right, top, left.
    pub fn sides(&self) -> [Seg<S>; 4] {
        let [p0, p1, p2, p3] = self.corners();
        [
            Seg { a: p0.clone(), b: p1.clone() },
            Seg { a: p1, b: p2.clone() },
            Seg { a: p2, b: p3.clone() },
            Seg { a: p3, b: p0 },
        ]
    }

    /// Positive-area overlap of the interiors.
    pub fn interiors_overlap(&self, other: &Rect<S>) -> bool {
        self.x1 < other.x2 && other.x1 < self.x2 && self.y1 < other.y2 && other.y1 < self.y2
    }

    pub fn with_x2(&self, x2: S) -> Rect<S> {
        Rect { x2, ..self.clone() }
    }
}

/// Signed doubled area of the triangle (a, b, c); positive when counterclockwise.
pub fn orient<S: Scalar>(a: &Pt<S>, b: &Pt<S>, c: &Pt<S>) -> S {
    (b.x.clone() - a.x.clone()) * (c.y.clone() - a.y.clone())
        - (b.y.clone() - a.y.clone()) * (c.x.clone() - a.x.clone())
}

fn within_box<S: Scalar>(a: &Pt<S>, b: &Pt<S>, p: &Pt<S>) -> bool {
    min_of(&a.x, &b.x) <= p.x && p.x <= max_of(&a.x, &b.x) && min_of(&a.y, &b.y) <= p.y && p.y <= max_of(&a.y, &b.y)
}

/// Closed-segment intersection test.
pub fn segments_intersect<S: Scalar>(s: &Seg<S>, t: &Seg<S>) -> bool {
    let d1 = orient(&t.a, &t.b, &s.a);
    let d2 = orient(&t.a, &t.b, &s.b);
    let d3 = orient(&s.a, &s.b, &t.a);
    let d4 = orient(&s.a, &s.b, &t.b);
    let opposite = |p: &S, q: &S| (p.is_positive() && q.is_negative()) || (p.is_negative() && q.is_positive());
    if opposite(&d1, &d2) && opposite(&d3, &d4) {
        return true;
    }
    (d1.is_zero() && within_box(&t.a, &t.b, &s.a))
        || (d2.is_zero() && within_box(&t.a, &t.b, &s.b))
        || (d3.is_zero() && within_box(&s.a, &s.b, &t.a))
        || (d4.is_zero() && within_box(&s.a, &s.b, &t.b))
}

/// Maximal shared boundary segment of two rectangles.
#[derive(Clone, Debug, PartialEq)]
pub struct Common<S> {
    /// Endpoints ordered bottom-to-top (vertical) or left-to-right (horizontal).
    pub seg: Seg<S>,
    pub axis: Axis,
}

impl<S: Scalar> Common<S> {
    pub fn lo(&self) -> &Pt<S> {
        &self.seg.a
    }

    pub fn hi(&self) -> &Pt<S> {
        &self.seg.b
    }
}

/// The maximal common boundary of `u` and `v`, or `None` if they only meet
/// in a point or not at all.
pub fn seg_common<S: Scalar>(u: &Rect<S>, v: &Rect<S>) -> Option<Common<S>> {
    let x_touch = if u.x2 == v.x1 {
        Some(u.x2.clone())
    } else if v.x2 == u.x1 {
        Some(u.x1.clone())
    } else {
        None
    };
    if let Some(x) = x_touch {
        let lo = max_of(&u.y1, &v.y1);
        let hi = min_of(&u.y2, &v.y2);
        if lo < hi {
            return Some(Common {
                seg: Seg { a: Pt::new(x.clone(), lo), b: Pt::new(x, hi) },
                axis: Axis::Vertical,
            });
        }
        return None;
    }
    let y_touch = if u.y2 == v.y1 {
        Some(u.y2.clone())
    } else if v.y2 == u.y1 {
        Some(u.y1.clone())
    } else {
        None
    };
    let y = y_touch?;
    let lo = max_of(&u.x1, &v.x1);
    let hi = min_of(&u.x2, &v.x2);
    (lo < hi).then(|| Common {
        seg: Seg { a: Pt::new(lo, y.clone()), b: Pt::new(hi, y) },
        axis: Axis::Horizontal,
    })
}

/// Line through two distinct points.
#[derive(Clone, Debug, PartialEq)]
pub struct Line<S> {
    pub p: Pt<S>,
    pub q: Pt<S>,
}

impl<S: Scalar> Line<S> {
    pub fn through(p: Pt<S>, q: Pt<S>) -> Self {
        Line { p, q }
    }

    pub fn is_vertical(&self) -> bool {
        self.p.x == self.q.x
    }

    pub fn is_horizontal(&self) -> bool {
        self.p.y == self.q.y
    }

    /// y-coordinate at abscissa `x`; `None` for vertical lines.
    pub fn y_at(&self, x: &S) -> Option<S> {
        if self.is_vertical() {
            return None;
        }
        let dx = self.q.x.clone() - self.p.x.clone();
        let dy = self.q.y.clone() - self.p.y.clone();
        Some(self.p.y.clone() + dy * (x.clone() - self.p.x.clone()) / dx)
    }

    /// x-coordinate at ordinate `y`; `None` for horizontal lines.
    pub fn x_at(&self, y: &S) -> Option<S> {
        if self.is_horizontal() {
            return None;
        }
        let dx = self.q.x.clone() - self.p.x.clone();
        let dy = self.q.y.clone() - self.p.y.clone();
        Some(self.p.x.clone() + dx * (y.clone() - self.p.y.clone()) / dy)
    }

    /// Sign of the slope: -1, 0 or 1 (vertical lines report 0 as well).
    pub fn slope_sign(&self) -> i8 {
        if self.is_vertical() {
            return 0;
        }
        let s = (self.q.y.clone() - self.p.y.clone()) * (self.q.x.clone() - self.p.x.clone());
        if s.is_positive() {
            1
        } else if s.is_negative() {
            -1
        } else {
            0
        }
    }
}

/// Where the apex sits relative to a vertical shared segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApexPosition {
    /// Inside the closed y-range of the segment: the delimiting lines have
    /// slopes of opposite sign (or one of them is horizontal).
    Diverging,
    /// Above the segment: the blind part of `R(v)` is at the top.
    Above,
    /// Below the segment: the blind part of `R(v)` is at the bottom.
    Below,
}

/// Points of `host` that the apex sees through the shared segment.
#[derive(Clone, Debug, PartialEq)]
pub struct VisRegion<S> {
    pub host: Rect<S>,
    pub apex: Pt<S>,
    pub common: Common<S>,
}

impl<S: Scalar> VisRegion<S> {
    /// Delimiting line through the apex and the low (bottom or left) end.
    pub fn lower_line(&self) -> Line<S> {
        Line::through(self.apex.clone(), self.common.lo().clone())
    }

    /// Delimiting line through the apex and the high (top or right) end.
    pub fn upper_line(&self) -> Line<S> {
        Line::through(self.apex.clone(), self.common.hi().clone())
    }

    pub fn position(&self) -> Option<ApexPosition> {
        if self.common.axis != Axis::Vertical {
            return None;
        }
        let y = &self.apex.y;
        Some(if y > &self.common.hi().y {
            ApexPosition::Above
        } else if y < &self.common.lo().y {
            ApexPosition::Below
        } else {
            ApexPosition::Diverging
        })
    }

    pub fn is_diverging(&self) -> bool {
        self.position() == Some(ApexPosition::Diverging)
    }

    /// Exact membership: `q` is in the closed host, strictly beyond the shared
    /// segment's line, and strictly inside the open wedge at the apex.
    pub fn contains(&self, q: &Pt<S>) -> bool {
        if !self.host.contains_closed(q) {
            return false;
        }
        let (e1, e2) = (self.common.lo(), self.common.hi());
        let apex_side = orient(e1, e2, &self.apex);
        let q_side = orient(e1, e2, q);
        if !(q_side * apex_side).is_negative() {
            return false;
        }
        let r1 = orient(&self.apex, e1, e2);
        let r2 = orient(&self.apex, e2, e1);
        (orient(&self.apex, e1, q) * r1).is_positive() && (orient(&self.apex, e2, q) * r2).is_positive()
    }
}

/// Visibility region of the point `p` (placed in `u`) inside `v`.
pub fn visibility_region<S: Scalar>(p: &Pt<S>, u: &Rect<S>, v: &Rect<S>) -> Result<VisRegion<S>> {
    if !u.contains_strict(p) {
        return Err(GeometryError::Precondition(format!("apex is not strictly inside {}", u.id)));
    }
    let common = seg_common(u, v).ok_or_else(|| GeometryError::NotAdjacent { u: u.id.clone(), v: v.id.clone() })?;
    Ok(VisRegion { host: v.clone(), apex: p.clone(), common })
}

fn vertical_left_of<S: Scalar>(u: &Rect<S>, v: &Rect<S>) -> Result<()> {
    match seg_common(u, v) {
        Some(c) if c.axis == Axis::Vertical && u.x2 == v.x1 => Ok(()),
        Some(_) => Err(GeometryError::Precondition(format!(
            "{} must be vertically adjacent to and left of {}",
            u.id, v.id
        ))),
        None => Err(GeometryError::NotAdjacent { u: u.id.clone(), v: v.id.clone() }),
    }
}

/// Part of `R(v)` hidden from `p` on the side the apex overhangs.
///
/// Returns `None` when the whole right side is visible. When the delimiting
/// line clears `R(v)` entirely the full right side is returned.
pub fn blind_segment<S: Scalar>(p: &Pt<S>, u: &Rect<S>, v: &Rect<S>) -> Result<Option<Seg<S>>> {
    vertical_left_of(u, v)?;
    let vis = visibility_region(p, u, v)?;
    let x = v.x2.clone();
    match vis.position() {
        Some(ApexPosition::Above) => {
            let t = vis.upper_line().y_at(&x).expect("apex is left of the segment");
            if t >= v.y2 {
                return Ok(None);
            }
            let lo = max_of(&t, &v.y1);
            Ok(Some(Seg { a: Pt::new(x.clone(), lo), b: Pt::new(x, v.y2.clone()) }))
        }
        Some(ApexPosition::Below) => {
            let t = vis.lower_line().y_at(&x).expect("apex is left of the segment");
            if t <= v.y1 {
                return Ok(None);
            }
            let hi = min_of(&t, &v.y2);
            Ok(Some(Seg { a: Pt::new(x.clone(), v.y1.clone()), b: Pt::new(x, hi) }))
        }
        _ => Err(GeometryError::Precondition("apex is diverging; blind segment undefined".into())),
    }
}

/// Designated sub-interval of the owner's right side.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate<S> {
    pub owner: String,
    pub lo: S,
    pub hi: S,
}

impl<S: Scalar> Gate<S> {
    pub fn new(owner: impl Into<String>, lo: S, hi: S) -> Result<Self> {
        if lo >= hi {
            return Err(GeometryError::Precondition("gate requires lo < hi".into()));
        }
        Ok(Gate { owner: owner.into(), lo, hi })
    }

    pub fn mid(&self) -> S {
        S::midpoint(&self.lo, &self.hi)
    }

    /// Strictly inside the owner's y-range (no endpoint of `R(owner)` touched).
    pub fn strictly_inside(&self, owner: &Rect<S>) -> bool {
        owner.y1 < self.lo && self.hi < owner.y2
    }
}

/// Abscissa where the line through `apex` and `end` reaches height `y`.
fn crossing_x<S: Scalar>(apex: &Pt<S>, end: &Pt<S>, y: &S) -> S {
    apex.x.clone() + (y.clone() - apex.y.clone()) * (end.x.clone() - apex.x.clone()) / (end.y.clone() - apex.y.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    UAbove,
    UBelow,
}

/// Smallest common right edge for `u` and `v` (horizontally adjacent, right
/// sides aligned) from which the whole gate interval stays visible from `p`.
pub fn min_stretch_horizontal<S: Scalar>(
    p: &Pt<S>,
    u: &Rect<S>,
    v: &Rect<S>,
    g: &Gate<S>,
    orientation: Orientation,
) -> Result<S> {
    if u.x2 != v.x2 {
        return Err(GeometryError::Precondition(format!("{} and {} must share their right edge", u.id, v.id)));
    }
    let vis = visibility_region(p, u, v)?;
    if vis.common.axis != Axis::Horizontal {
        return Err(GeometryError::Precondition(format!("{} and {} are not horizontally adjacent", u.id, v.id)));
    }
    let h = vis.common.lo().y.clone();
    match orientation {
        Orientation::UAbove if u.y1 != h => {
            return Err(GeometryError::Precondition(format!("{} is not above {}", u.id, v.id)))
        }
        Orientation::UBelow if u.y2 != h => {
            return Err(GeometryError::Precondition(format!("{} is not below {}", u.id, v.id)))
        }
        _ => {}
    }
    let beyond = match orientation {
        Orientation::UAbove => g.hi > h,
        Orientation::UBelow => g.lo < h,
    };
    if beyond {
        return Err(GeometryError::Unreachable(format!("gate of {} crosses the shared boundary", g.owner)));
    }
    // The right end of the shared segment travels with the stretch, so only
    // the line through the left end constrains visibility of R(v).
    let left = vis.common.lo().clone();
    if p.x >= left.x {
        return Ok(v.x2.clone());
    }
    let target = match orientation {
        Orientation::UAbove => &g.lo,
        Orientation::UBelow => &g.hi,
    };
    Ok(max_of(&v.x2, &crossing_x(p, &left, target)))
}

/// Smallest right edge of `v` from which the closed interval `[lo, hi]` on the
/// right side lies between both delimiting lines of a diverging apex.
pub fn min_stretch_diverging_interval<S: Scalar>(p: &Pt<S>, u: &Rect<S>, v: &Rect<S>, lo: &S, hi: &S) -> Result<S> {
    vertical_left_of(u, v)?;
    let vis = visibility_region(p, u, v)?;
    if !vis.is_diverging() {
        return Err(GeometryError::Precondition(format!("{} is not a diverging neighbor of {}", u.id, v.id)));
    }
    let mut x = v.x2.clone();
    let bottom = vis.common.lo();
    if bottom.y == p.y {
        if lo < &p.y {
            return Err(GeometryError::Unreachable("interval dips below a horizontal delimiting line".into()));
        }
    } else {
        x = max_of(&x, &crossing_x(p, bottom, lo));
    }
    let top = vis.common.hi();
    if top.y == p.y {
        if hi > &p.y {
            return Err(GeometryError::Unreachable("interval rises above a horizontal delimiting line".into()));
        }
    } else {
        x = max_of(&x, &crossing_x(p, top, hi));
    }
    Ok(x)
}

/// Smallest right edge of `v` from which all of `R(v)` is visible from a
/// diverging apex.
pub fn min_stretch_diverging<S: Scalar>(p: &Pt<S>, u: &Rect<S>, v: &Rect<S>) -> Result<S> {
    min_stretch_diverging_interval(p, u, v, &v.y1, &v.y2)
}

/// Smallest right edge of `v` from which the gate overlaps the blind segment
/// (closed) and sits on the visible side of the far delimiting line.
///
/// The far-line condition is what lets the subsequent boundary shift succeed:
/// the shift only moves the near line.
pub fn min_stretch_nondiverging<S: Scalar>(p: &Pt<S>, u: &Rect<S>, v: &Rect<S>, g: &Gate<S>) -> Result<S> {
    vertical_left_of(u, v)?;
    let vis = visibility_region(p, u, v)?;
    let (near, far, near_target, far_target) = match vis.position() {
        Some(ApexPosition::Above) => (vis.common.hi(), vis.common.lo(), &g.hi, &g.lo),
        Some(ApexPosition::Below) => (vis.common.lo(), vis.common.hi(), &g.lo, &g.hi),
        _ => return Err(GeometryError::Precondition(format!("{} is a diverging neighbor of {}", u.id, v.id))),
    };
    let x = max_of(&v.x2, &crossing_x(p, near, near_target));
    Ok(max_of(&x, &crossing_x(p, far, far_target)))
}

/// New y-coordinate for the boundary of `v` nearest the apex so that the gate
/// becomes visible: `y2(v)` when the apex is above the segment, `y1(v)` when
/// below. Picks the midpoint of the open feasible interval.
pub fn boundary_shift_nondiverging<S: Scalar>(p: &Pt<S>, u: &Rect<S>, v: &Rect<S>, g: &Gate<S>) -> Result<S> {
    let (lo, hi) = boundary_shift_interval(p, u, v, g)?;
    Ok(S::midpoint(&lo, &hi))
}

/// Open interval of feasible positions for the shifted boundary.
pub fn boundary_shift_interval<S: Scalar>(p: &Pt<S>, u: &Rect<S>, v: &Rect<S>, g: &Gate<S>) -> Result<(S, S)> {
    vertical_left_of(u, v)?;
    let vis = visibility_region(p, u, v)?;
    let w = u.x2.clone();
    let ratio = (v.x2.clone() - p.x.clone()) / (w - p.x.clone());
    match vis.position() {
        Some(ApexPosition::Above) => {
            if g.hi >= p.y {
                return Err(GeometryError::Unreachable("gate reaches the apex height".into()));
            }
            let near = vis.upper_line().y_at(&v.x2).expect("apex left of segment");
            if near > g.hi {
                return Err(GeometryError::Precondition(format!("gate of {} is disjoint from the blind segment", g.owner)));
            }
            let bound = p.y.clone() - (p.y.clone() - g.hi.clone()) / ratio;
            Ok((bound, p.y.clone()))
        }
        Some(ApexPosition::Below) => {
            if g.lo <= p.y {
                return Err(GeometryError::Unreachable("gate reaches the apex height".into()));
            }
            let near = vis.lower_line().y_at(&v.x2).expect("apex left of segment");
            if near < g.lo {
                return Err(GeometryError::Precondition(format!("gate of {} is disjoint from the blind segment", g.owner)));
            }
            let bound = p.y.clone() + (g.lo.clone() - p.y.clone()) / ratio;
            Ok((p.y.clone(), bound))
        }
        _ => Err(GeometryError::Precondition(format!("{} is a diverging neighbor of {}", u.id, v.id))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn rect(id: &str, c: [i64; 4]) -> Rect<Rat> {
        Rect::new(id, r(c[0]), r(c[1]), r(c[2]), r(c[3])).unwrap()
    }

    fn pt(x: i64, y: i64) -> Pt<Rat> {
        Pt::new(r(x), r(y))
    }

    #[test]
    fn common_vertical() {
        let c = seg_common(&rect("u", [0, 0, 2, 4]), &rect("v", [2, 1, 3, 3])).unwrap();
        assert_eq!(c.axis, Axis::Vertical);
        assert_eq!(c.seg, Seg { a: pt(2, 1), b: pt(2, 3) });
    }

    #[test]
    fn common_horizontal() {
        let c = seg_common(&rect("u", [0, 4, 4, 6]), &rect("v", [2, 0, 4, 4])).unwrap();
        assert_eq!(c.axis, Axis::Horizontal);
        assert_eq!(c.seg, Seg { a: pt(2, 4), b: pt(4, 4) });
    }

    #[test]
    fn common_none_for_disjoint_or_corner() {
        assert!(seg_common(&rect("u", [0, 0, 1, 1]), &rect("v", [5, 5, 6, 6])).is_none());
        assert!(seg_common(&rect("u", [0, 0, 1, 1]), &rect("v", [1, 1, 2, 2])).is_none());
    }

    #[test]
    fn common_works_with_floats() {
        let u = Rect::new("u", 0.0, 0.0, 2.0, 4.0).unwrap();
        let v = Rect::new("v", 2.0, 1.0, 3.0, 3.0).unwrap();
        let c = seg_common(&u, &v).unwrap();
        assert_eq!(c.seg.a, Pt::new(2.0, 1.0));
    }

    #[test]
    fn degenerate_rect_rejected() {
        assert!(matches!(Rect::new("v", r(2), r(1), r(3), r(1)), Err(GeometryError::DegenerateRect { .. })));
    }

    #[test]
    fn diverging_region_lines() {
        let vis = visibility_region(&pt(1, 2), &rect("u", [0, 0, 2, 4]), &rect("v", [2, 1, 3, 3])).unwrap();
        assert!(vis.is_diverging());
        // y = 3 - x and y = x + 1
        assert_eq!(vis.lower_line().y_at(&r(3)), Some(r(0)));
        assert_eq!(vis.upper_line().y_at(&r(3)), Some(r(4)));
        assert_eq!(vis.lower_line().slope_sign(), -1);
        assert_eq!(vis.upper_line().slope_sign(), 1);
    }

    #[test]
    fn non_diverging_region() {
        let vis = visibility_region(&pt(1, 5), &rect("u", [0, 2, 2, 6]), &rect("v", [2, 0, 4, 4])).unwrap();
        assert!(!vis.is_diverging());
        assert_eq!(vis.position(), Some(ApexPosition::Above));
        // slopes -1 and -3
        assert_eq!(vis.upper_line().y_at(&r(3)), Some(r(3)));
        assert_eq!(vis.lower_line().y_at(&r(3)), Some(r(-1)));
    }

    #[test]
    fn symmetric_region() {
        let vis = visibility_region(&pt(1, 2), &rect("u", [0, 0, 2, 4]), &rect("v", [2, 0, 3, 4])).unwrap();
        for k in 0..=8 {
            let a = Pt::new(q(5, 2), q(k, 2));
            let b = Pt::new(q(5, 2), r(4) - q(k, 2));
            assert_eq!(vis.contains(&a), vis.contains(&b));
        }
    }

    #[test]
    fn apex_on_boundary_rejected() {
        let err = visibility_region(&pt(2, 2), &rect("u", [0, 0, 2, 4]), &rect("v", [2, 0, 3, 4])).unwrap_err();
        assert!(matches!(err, GeometryError::Precondition(_)));
    }

    #[test]
    fn blind_top() {
        let b = blind_segment(&pt(1, 5), &rect("u", [0, 2, 2, 6]), &rect("v", [2, 0, 4, 4])).unwrap().unwrap();
        assert_eq!(b, Seg { a: pt(4, 2), b: pt(4, 4) });
    }

    #[test]
    fn blind_bottom_mirror() {
        // reflection of the previous case about y = 3
        let b = blind_segment(&pt(1, 1), &rect("u", [0, 0, 2, 4]), &rect("v", [2, 2, 4, 6])).unwrap().unwrap();
        assert_eq!(b, Seg { a: pt(4, 2), b: pt(4, 4) });
    }

    #[test]
    fn blind_covers_everything_when_line_clears() {
        let b = blind_segment(&pt(1, 5), &rect("u", [0, 2, 2, 6]), &rect("v", [2, 0, 100, 4])).unwrap().unwrap();
        assert_eq!(b, Seg { a: pt(100, 0), b: pt(100, 4) });
    }

    #[test]
    fn blind_rejects_diverging() {
        assert!(blind_segment(&pt(1, 2), &rect("u", [0, 0, 2, 4]), &rect("v", [2, 1, 3, 3])).is_err());
    }

    #[test]
    fn horizontal_threshold() {
        // line through (1,5) and the left end (2,4) is y = 6 - x
        let (u, v) = (rect("u", [0, 4, 4, 6]), rect("v", [2, 0, 4, 4]));
        let g = Gate::new("v", r(1), r(3)).unwrap();
        assert_eq!(min_stretch_horizontal(&pt(1, 5), &u, &v, &g, Orientation::UAbove).unwrap(), r(5));
        let g = Gate::new("v", q(5, 2), r(3)).unwrap();
        assert_eq!(min_stretch_horizontal(&pt(1, 5), &u, &v, &g, Orientation::UAbove).unwrap(), r(4));
    }

    #[test]
    fn horizontal_apex_over_left_end_sees_everything() {
        let (u, v) = (rect("u", [0, 4, 4, 6]), rect("v", [2, 0, 4, 4]));
        let g = Gate::new("v", r(2), r(3)).unwrap();
        assert_eq!(min_stretch_horizontal(&pt(2, 5), &u, &v, &g, Orientation::UAbove).unwrap(), r(4));
    }

    #[test]
    fn horizontal_below_mirror() {
        // reflect the (1,5) case about y = 3
        let (u, v) = (rect("u", [0, 0, 4, 2]), rect("v", [2, 2, 4, 6]));
        let g = Gate::new("v", r(3), r(5)).unwrap();
        assert_eq!(min_stretch_horizontal(&pt(1, 1), &u, &v, &g, Orientation::UBelow).unwrap(), r(5));
    }

    #[test]
    fn horizontal_requires_aligned_right_edges() {
        let (u, v) = (rect("u", [0, 4, 5, 6]), rect("v", [2, 0, 4, 4]));
        let g = Gate::new("v", r(1), r(3)).unwrap();
        assert!(min_stretch_horizontal(&pt(1, 5), &u, &v, &g, Orientation::UAbove).is_err());
    }

    #[test]
    fn diverging_thresholds() {
        let u = rect("u", [0, 0, 2, 4]);
        assert_eq!(min_stretch_diverging(&pt(1, 2), &u, &rect("v", [2, 1, 3, 3])).unwrap(), r(3));
        assert_eq!(min_stretch_diverging(&pt(1, 2), &u, &rect("v", [2, 0, 3, 10])).unwrap(), r(5));
    }

    #[test]
    fn diverging_rejects_non_diverging() {
        assert!(min_stretch_diverging(&pt(1, 5), &rect("u", [0, 2, 2, 6]), &rect("v", [2, 0, 4, 4])).is_err());
    }

    #[test]
    fn nondiverging_thresholds() {
        let (u, v) = (rect("u", [0, 2, 2, 6]), rect("v", [2, 0, 4, 4]));
        let g = Gate::new("v", r(1), q(3, 2)).unwrap();
        assert_eq!(min_stretch_nondiverging(&pt(1, 5), &u, &v, &g).unwrap(), q(9, 2));
        let g = Gate::new("v", r(3), q(7, 2)).unwrap();
        assert_eq!(min_stretch_nondiverging(&pt(1, 5), &u, &v, &g).unwrap(), r(4));
    }

    #[test]
    fn nondiverging_bottom_mirror() {
        // reflection about y = 3 of the first case: gate [4.5, 5]
        let (u, v) = (rect("u", [0, 0, 2, 4]), rect("v", [2, 2, 4, 6]));
        let g = Gate::new("v", q(9, 2), r(5)).unwrap();
        assert_eq!(min_stretch_nondiverging(&pt(1, 1), &u, &v, &g).unwrap(), q(9, 2));
    }

    #[test]
    fn shift_top() {
        let (u, v) = (rect("u", [0, 2, 2, 6]), rect("v", [2, 0, 4, 4]));
        let g = Gate::new("v", r(3), q(7, 2)).unwrap();
        let y = boundary_shift_nondiverging(&pt(1, 5), &u, &v, &g).unwrap();
        assert_eq!(y, q(19, 4));
        let moved = Rect { y2: y, ..v };
        let vis = visibility_region(&pt(1, 5), &u, &moved).unwrap();
        assert_eq!(vis.upper_line().y_at(&r(4)), Some(q(17, 4)));
    }

    #[test]
    fn shift_bottom_mirror() {
        let (u, v) = (rect("u", [0, 0, 2, 4]), rect("v", [2, 2, 4, 6]));
        let g = Gate::new("v", q(5, 2), r(3)).unwrap();
        assert_eq!(boundary_shift_nondiverging(&pt(1, 1), &u, &v, &g).unwrap(), q(5, 4));
    }

    #[test]
    fn shift_with_gate_touching_blind_endpoint() {
        // blind is (2,4]; gate [1,2] touches it at y = 2 only
        let (u, v) = (rect("u", [0, 2, 2, 6]), rect("v", [2, 0, 4, 4]));
        let g = Gate::new("v", r(1), r(2)).unwrap();
        // bound = 5 - 3/3 = 4, midpoint of (4, 5)
        assert_eq!(boundary_shift_nondiverging(&pt(1, 5), &u, &v, &g).unwrap(), q(9, 2));
    }

    #[test]
    fn shift_requires_overlap() {
        let (u, v) = (rect("u", [0, 2, 2, 6]), rect("v", [2, 0, 4, 4]));
        let g = Gate::new("v", r(1), q(3, 2)).unwrap();
        assert!(matches!(
            boundary_shift_nondiverging(&pt(1, 5), &u, &v, &g),
            Err(GeometryError::Precondition(_))
        ));
    }

    #[test]
    fn segment_intersection_cases() {
        let s = Seg { a: pt(0, 0), b: pt(2, 2) };
        assert!(segments_intersect(&s, &Seg { a: pt(0, 2), b: pt(2, 0) }));
        assert!(segments_intersect(&s, &Seg { a: pt(2, 2), b: pt(3, 0) }));
        assert!(!segments_intersect(&s, &Seg { a: pt(3, 3), b: pt(4, 4) }));
        assert!(segments_intersect(&s, &Seg { a: pt(1, 1), b: pt(4, 4) }));
    }
}
