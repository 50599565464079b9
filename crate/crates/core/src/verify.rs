//! Construction-blind checker for simultaneous drawings.
//!
//! Only the input subdivision and the output drawing are consulted.

use std::collections::BTreeSet;
use std::fmt;

use crate::drawing::SimDrawing;
use crate::geometry::{orient, seg_common, segments_intersect, Pt, Rect, Seg};
use crate::scalar::Scalar;
use crate::subdivision::{derive_from_rects, Color, Subdivision};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Subdivision,
    Containment,
    SingleCrossing,
    Planarity,
    Scaling,
}

impl Check {
    pub const ALL: [Check; 5] = [Check::Subdivision, Check::Containment, Check::SingleCrossing, Check::Planarity, Check::Scaling];

    pub fn name(self) -> &'static str {
        match self {
            Check::Subdivision => "subdivision",
            Check::Containment => "containment",
            Check::SingleCrossing => "single-crossing",
            Check::Planarity => "planarity",
            Check::Scaling => "scaling",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    /// Vertex id or `u-v` pair the violation is about.
    pub subject: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check_passed(&self, check: Check) -> bool {
        self.violations.iter().all(|v| v.check != check)
    }

    fn push(&mut self, check: Check, subject: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation { check, subject: subject.into(), detail: detail.into() });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in Check::ALL {
            writeln!(f, "{}: {}", c.name(), if self.check_passed(c) { "pass" } else { "FAIL" })?;
        }
        for v in &self.violations {
            writeln!(f, "  [{}] {}: {}", v.check.name(), v.subject, v.detail)?;
        }
        Ok(())
    }
}

/// Point where the segment from `p` (strictly inside `r`) towards `q` leaves
/// `r`, or `None` if `q` is inside the closed rectangle.
fn exit_point<S: Scalar>(p: &Pt<S>, q: &Pt<S>, r: &Rect<S>) -> Option<Pt<S>> {
    let dx = q.x.clone() - p.x.clone();
    let dy = q.y.clone() - p.y.clone();
    let mut t: Option<S> = None;
    let mut consider = |cand: S| {
        if t.as_ref().is_none_or(|cur| &cand < cur) {
            t = Some(cand);
        }
    };
    if dx.is_positive() {
        consider((r.x2.clone() - p.x.clone()) / dx.clone());
    } else if dx.is_negative() {
        consider((r.x1.clone() - p.x.clone()) / dx.clone());
    }
    if dy.is_positive() {
        consider((r.y2.clone() - p.y.clone()) / dy.clone());
    } else if dy.is_negative() {
        consider((r.y1.clone() - p.y.clone()) / dy.clone());
    }
    let t = t?;
    if t >= S::one() {
        return None;
    }
    Some(Pt::new(p.x.clone() + t.clone() * dx, p.y.clone() + t * dy))
}

/// Check (3) for a single edge: the open segment between the two vertices
/// meets the rectangle boundaries exactly once, inside the relative interior
/// of the shared segment.
pub fn edge_crossing<S: Scalar>(pu: &Pt<S>, pv: &Pt<S>, u: &Rect<S>, v: &Rect<S>) -> Result<(), String> {
    if !u.contains_strict(pu) || !v.contains_strict(pv) {
        return Err("endpoint not strictly inside its rectangle".into());
    }
    let common = seg_common(u, v).ok_or("rectangles are not adjacent")?;
    let e = exit_point(pu, pv, u).ok_or("segment does not leave the first rectangle")?;
    if !common.seg.relative_interior_contains(&e) {
        return Err(format!("segment leaves {} at ({:?}, {:?}) outside the shared segment", u.id, e.x, e.y));
    }
    Ok(())
}

fn pair_name(a: &str, b: &str) -> String {
    format!("{a}-{b}")
}

/// Runs all five checks.
pub fn verify<S: Scalar>(input: &Subdivision<S>, output: &SimDrawing<S>) -> VerificationReport {
    let mut report = VerificationReport::default();

    if let Err(e) = Subdivision::from_rects(output.rects.clone()) {
        report.push(Check::Subdivision, "output", e.to_string());
    }
    for r in &output.rects {
        if input.get(&r.id).is_none() {
            report.push(Check::Subdivision, r.id.clone(), "rectangle not present in the input");
        }
    }

    let points: Vec<Option<&Pt<S>>> = output.rects.iter().map(|r| output.vertex(&r.id)).collect();
    for (r, p) in output.rects.iter().zip(&points) {
        match p {
            None => report.push(Check::Containment, r.id.clone(), "no vertex"),
            Some(p) if !r.contains_strict(p) => {
                report.push(Check::Containment, r.id.clone(), "vertex not strictly inside its rectangle")
            }
            _ => {}
        }
    }

    let g = derive_from_rects(&output.rects, None);
    let mut segs: Vec<(usize, usize, Seg<S>)> = Vec::new();
    for e in &g.edges {
        let (u, v) = (&output.rects[e.from], &output.rects[e.to]);
        let name = pair_name(&u.id, &v.id);
        let (Some(pu), Some(pv)) = (points[e.from], points[e.to]) else {
            report.push(Check::SingleCrossing, name, "missing vertex");
            continue;
        };
        if let Err(msg) = edge_crossing(pu, pv, u, v) {
            report.push(Check::SingleCrossing, name, msg);
        }
        if pu != pv {
            segs.push((e.from, e.to, Seg { a: pu.clone(), b: pv.clone() }));
        }
    }

    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (a1, b1, s) = &segs[i];
            let (a2, b2, t) = &segs[j];
            let bad = if let Some((shared, other_s, other_t)) = shared_endpoint(s, t) {
                overlapping_rays(shared, other_s, other_t)
            } else {
                let _ = (a1, b1, a2, b2);
                segments_intersect(s, t)
            };
            if bad {
                report.push(
                    Check::Planarity,
                    format!("{} x {}", pair_name(&g.ids[*a1], &g.ids[*b1]), pair_name(&g.ids[*a2], &g.ids[*b2])),
                    "edges intersect",
                );
            }
        }
    }

    let expected: BTreeSet<(String, String, Color)> = derive_from_rects(input.rects(), None).labeled_pairs().into_iter().collect();
    let expected: BTreeSet<_> = expected
        .into_iter()
        .filter(|(a, b, _)| output.rect(a).is_some() && output.rect(b).is_some())
        .collect();
    let actual: BTreeSet<_> = g.labeled_pairs().into_iter().collect();
    for (a, b, c) in expected.difference(&actual) {
        report.push(Check::Scaling, pair_name(a, b), format!("{c:?} adjacency missing or changed in the output"));
    }
    for (a, b, c) in actual.difference(&expected) {
        report.push(Check::Scaling, pair_name(a, b), format!("{c:?} adjacency not present in the input"));
    }
    report
}

fn shared_endpoint<'a, S: Scalar>(s: &'a Seg<S>, t: &'a Seg<S>) -> Option<(&'a Pt<S>, &'a Pt<S>, &'a Pt<S>)> {
    if s.a == t.a {
        Some((&s.a, &s.b, &t.b))
    } else if s.a == t.b {
        Some((&s.a, &s.b, &t.a))
    } else if s.b == t.a {
        Some((&s.b, &s.a, &t.b))
    } else if s.b == t.b {
        Some((&s.b, &s.a, &t.a))
    } else {
        None
    }
}

/// Two segments from a common point overlap iff they leave it in the same
/// direction.
fn overlapping_rays<S: Scalar>(o: &Pt<S>, p: &Pt<S>, q: &Pt<S>) -> bool {
    if !orient(o, p, q).is_zero() {
        return false;
    }
    let dot = (p.x.clone() - o.x.clone()) * (q.x.clone() - o.x.clone()) + (p.y.clone() - o.y.clone()) * (q.y.clone() - o.y.clone());
    dot.is_positive()
}

fn cross<S: Scalar>(ax: &S, ay: &S, bx: &S, by: &S) -> S {
    ax.clone() * by.clone() - ay.clone() * bx.clone()
}

/// Intersection of two closed segments: no point, one point, or an overlap
/// given by its two ends.
fn intersection_points<S: Scalar>(s: &Seg<S>, t: &Seg<S>) -> Vec<Pt<S>> {
    let (rx, ry) = (s.b.x.clone() - s.a.x.clone(), s.b.y.clone() - s.a.y.clone());
    let (qx, qy) = (t.b.x.clone() - t.a.x.clone(), t.b.y.clone() - t.a.y.clone());
    let (wx, wy) = (t.a.x.clone() - s.a.x.clone(), t.a.y.clone() - s.a.y.clone());
    let denom = cross(&rx, &ry, &qx, &qy);
    let zero = S::zero();
    let one = S::one();
    if !denom.is_zero() {
        let a = cross(&wx, &wy, &qx, &qy) / denom.clone();
        let b = cross(&wx, &wy, &rx, &ry) / denom;
        if a >= zero && a <= one && b >= zero && b <= one {
            return vec![Pt::new(s.a.x.clone() + a.clone() * rx, s.a.y.clone() + a * ry)];
        }
        return vec![];
    }
    if !cross(&wx, &wy, &rx, &ry).is_zero() {
        return vec![];
    }
    // collinear: project onto s
    let len2 = rx.clone() * rx.clone() + ry.clone() * ry.clone();
    let param = |p: &Pt<S>| ((p.x.clone() - s.a.x.clone()) * rx.clone() + (p.y.clone() - s.a.y.clone()) * ry.clone()) / len2.clone();
    let (mut t0, mut t1) = (param(&t.a), param(&t.b));
    if t0 > t1 {
        std::mem::swap(&mut t0, &mut t1);
    }
    let lo = if t0 > zero { t0 } else { zero };
    let hi = if t1 < one { t1 } else { one };
    if lo > hi {
        return vec![];
    }
    let at = |k: &S| Pt::new(s.a.x.clone() + k.clone() * rx.clone(), s.a.y.clone() + k.clone() * ry.clone());
    if lo == hi {
        vec![at(&lo)]
    } else {
        vec![at(&lo), at(&hi)]
    }
}

/// Per-edge count of distinct points where the open edge segment meets any
/// rectangle side, by brute force over all sides. An edge running along a
/// side counts at least twice.
pub fn naive_crossing_oracle<S: Scalar>(output: &SimDrawing<S>) -> Vec<(String, String, usize)> {
    let g = derive_from_rects(&output.rects, None);
    let mut out = Vec::new();
    for e in &g.edges {
        let (u, v) = (&output.rects[e.from].id, &output.rects[e.to].id);
        let (Some(pu), Some(pv)) = (output.vertex(u), output.vertex(v)) else { continue };
        out.push((u.clone(), v.clone(), crossing_count(pu, pv, &output.rects)));
    }
    out
}

/// Distinct boundary points on the open segment `pu`–`pv`.
pub fn crossing_count<S: Scalar>(pu: &Pt<S>, pv: &Pt<S>, rects: &[Rect<S>]) -> usize {
    boundary_points(pu, pv, rects).len()
}

/// Distinct points where the open segment `pu`–`pv` meets a side of one of
/// `rects`. A stretch running along a side contributes its two ends.
pub fn boundary_points<S: Scalar>(pu: &Pt<S>, pv: &Pt<S>, rects: &[Rect<S>]) -> Vec<Pt<S>> {
    let edge = Seg { a: pu.clone(), b: pv.clone() };
    let (ex1, ex2) = if pu.x <= pv.x { (&pu.x, &pv.x) } else { (&pv.x, &pu.x) };
    let (ey1, ey2) = if pu.y <= pv.y { (&pu.y, &pv.y) } else { (&pv.y, &pu.y) };
    let mut pts: Vec<Pt<S>> = Vec::new();
    for r in rects {
        if &r.x1 > ex2 || &r.x2 < ex1 || &r.y1 > ey2 || &r.y2 < ey1 {
            continue;
        }
        for side in r.sides() {
            for p in intersection_points(&edge, &side) {
                if &p != pu && &p != pv && !pts.contains(&p) {
                    pts.push(p);
                }
            }
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{DrawingMeta, Vertex};
    use crate::Rat;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn rect(id: &str, c: [i64; 4]) -> Rect<Rat> {
        Rect::new(id, Rat::from_int(c[0]), Rat::from_int(c[1]), Rat::from_int(c[2]), Rat::from_int(c[3])).unwrap()
    }

    fn pin5() -> Subdivision<Rat> {
        Subdivision::new(
            rect("bounds", [0, 0, 10, 10]),
            vec![rect("a", [0, 0, 7, 3]), rect("b", [7, 0, 10, 7]), rect("c", [3, 7, 10, 10]), rect("d", [0, 3, 3, 10]), rect("e", [3, 3, 7, 7])],
        )
        .unwrap()
    }

    /// A hand-placed valid drawing of the pinwheel.
    fn pin5_drawing() -> SimDrawing<Rat> {
        let s = pin5();
        let at = |id: &str| -> Pt<Rat> {
            match id {
                "a" => Pt::new(Rat::from_int(3), Rat::from_int(1)),
                "b" => Pt::new(Rat::from_int(9), Rat::from_int(3)),
                "c" => Pt::new(Rat::from_int(8), Rat::from_int(9)),
                "d" => Pt::new(Rat::from_int(2), q(15, 2)),
                _ => Pt::new(Rat::from_int(5), Rat::from_int(5)),
            }
        };
        SimDrawing {
            rects: s.rects().to_vec(),
            vertices: s.rects().iter().map(|r| Vertex { id: r.id.clone(), at: at(&r.id) }).collect(),
            meta: DrawingMeta { steps: 0, width: Rat::from_int(10), augmented: false, gates: vec![] },
        }
    }

    #[test]
    fn hand_drawing_passes() {
        let d = pin5_drawing();
        let report = verify(&pin5(), &d);
        assert!(report.passed(), "{report}");
        for (_, _, n) in naive_crossing_oracle(&d) {
            assert_eq!(n, 1);
        }
    }

    #[test]
    fn vertex_outside_reported() {
        let mut d = pin5_drawing();
        d.vertices[0].at = Pt::new(Rat::from_int(20), Rat::from_int(20));
        let report = verify(&pin5(), &d);
        assert!(!report.check_passed(Check::Containment));
        assert!(report.violations.iter().any(|v| v.check == Check::Containment && v.subject == d.vertices[0].id));
    }

    #[test]
    fn widened_rect_changes_adjacency_type() {
        // b grows over the top of a: the a-b contact turns horizontal
        let input = Subdivision::new(rect("bounds", [0, 0, 2, 1]), vec![rect("a", [0, 0, 1, 1]), rect("b", [1, 0, 2, 1])]).unwrap();
        let rects = vec![rect("a", [0, 0, 1, 1]), rect("b", [0, 1, 1, 2])];
        let d = SimDrawing {
            vertices: rects.iter().map(|r| Vertex { id: r.id.clone(), at: r.center() }).collect(),
            rects,
            meta: DrawingMeta { steps: 0, width: Rat::from_int(1), augmented: false, gates: vec![] },
        };
        let report = verify(&input, &d);
        assert!(!report.check_passed(Check::Scaling));
        assert!(report.violations.iter().any(|v| v.check == Check::Scaling && v.subject == "a-b"));
    }

    #[test]
    fn crossing_through_third_rect_fails() {
        // d's vertex high up and a's far right: the segment clips e
        let mut d = pin5_drawing();
        for v in &mut d.vertices {
            if v.id == "a" {
                v.at = Pt::new(Rat::from_int(6), Rat::from_int(2));
            }
            if v.id == "d" {
                v.at = Pt::new(q(5, 2), Rat::from_int(9));
            }
        }
        let report = verify(&pin5(), &d);
        assert!(!report.check_passed(Check::SingleCrossing));
        let oracle = naive_crossing_oracle(&d);
        assert!(oracle.iter().any(|(a, b, n)| a == "a" && b == "d" && *n >= 2));
    }

    #[test]
    fn crossing_at_segment_endpoint_fails() {
        let a = rect("a", [0, 0, 2, 2]);
        let b = rect("b", [2, 0, 4, 1]);
        // passes exactly through (2, 1), the top end of the shared segment
        let pu = Pt::new(Rat::from_int(1), q(3, 2));
        let pv = Pt::new(Rat::from_int(3), q(1, 2));
        assert!(edge_crossing(&pu, &pv, &a, &b).is_err());
        let pv = Pt::new(Rat::from_int(3), q(1, 4));
        assert!(edge_crossing(&pu, &pv, &a, &b).is_ok());
    }

    #[test]
    fn intersection_cases() {
        let s = Seg { a: Pt::new(0.0, 0.0), b: Pt::new(2.0, 0.0) };
        let t = Seg { a: Pt::new(1.0, -1.0), b: Pt::new(1.0, 1.0) };
        assert_eq!(intersection_points(&s, &t), vec![Pt::new(1.0, 0.0)]);
        let u = Seg { a: Pt::new(1.0, 0.0), b: Pt::new(3.0, 0.0) };
        assert_eq!(intersection_points(&s, &u).len(), 2);
        let w = Seg { a: Pt::new(0.0, 1.0), b: Pt::new(2.0, 1.0) };
        assert!(intersection_points(&s, &w).is_empty());
    }

    #[test]
    fn shared_endpoint_overlap() {
        let o = Pt::new(0.0, 0.0);
        assert!(overlapping_rays(&o, &Pt::new(1.0, 1.0), &Pt::new(2.0, 2.0)));
        assert!(!overlapping_rays(&o, &Pt::new(1.0, 1.0), &Pt::new(-2.0, -2.0)));
        assert!(!overlapping_rays(&o, &Pt::new(1.0, 1.0), &Pt::new(2.0, 1.0)));
    }
}
