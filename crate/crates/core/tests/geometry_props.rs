//! Randomized checks of the visibility solvers against direct line-crossing
//! evaluations and a brute-force segment oracle.

use proptest::prelude::*;
use simdual::geometry::{
    blind_segment, boundary_shift_interval, boundary_shift_nondiverging, min_stretch_diverging,
    min_stretch_diverging_interval, min_stretch_horizontal, min_stretch_nondiverging, seg_common, visibility_region,
    ApexPosition, Gate, Orientation, Pt, Rect,
};
use simdual::verify::boundary_points;
use simdual::{Rat, Scalar};

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn rect(id: &str, x1: Rat, y1: Rat, x2: Rat, y2: Rat) -> Rect<Rat> {
    Rect::new(id, x1, y1, x2, y2).unwrap()
}

/// `u` left of `v` along `x = 0`, apex strictly inside `u`.
#[derive(Clone, Debug)]
struct Vertical {
    p: Pt<Rat>,
    u: Rect<Rat>,
    v: Rect<Rat>,
}

fn vertical() -> impl Strategy<Value = Vertical> {
    (1i64..40, -40i64..40, 1i64..40, -40i64..40, 1i64..40, 1i64..40, 1i64..99, 1i64..99)
        .prop_filter_map("shared segment", |(a, uy1, uh, vy1, vh, vx2, tx, ty)| {
            let (uy2, vy2) = (uy1 + uh, vy1 + vh);
            if uy1.max(vy1) >= uy2.min(vy2) {
                return None;
            }
            let u = rect("u", q(-a, 4), q(uy1, 4), q(0, 1), q(uy2, 4));
            let v = rect("v", q(0, 1), q(vy1, 4), q(vx2, 4), q(vy2, 4));
            let p = Pt::new(u.x1.clone() * q(100 - tx, 100), u.y1.clone() + u.height() * q(ty, 100));
            Some(Vertical { p, u, v })
        })
}

fn apex_position(c: &Vertical) -> ApexPosition {
    visibility_region(&c.p, &c.u, &c.v).unwrap().position().unwrap()
}

fn diverging() -> impl Strategy<Value = Vertical> {
    vertical().prop_filter("diverging apex", |c| apex_position(c) == ApexPosition::Diverging)
}

fn nondiverging() -> impl Strategy<Value = Vertical> {
    vertical().prop_filter("nondiverging apex", |c| apex_position(c) != ApexPosition::Diverging)
}

/// Height at which the line from `p` to `target` crosses `x = 0`.
fn cross_y(p: &Pt<Rat>, target: &Pt<Rat>) -> Rat {
    p.y.clone() + (target.y.clone() - p.y.clone()) * (Rat::from_int(0) - p.x.clone()) / (target.x.clone() - p.x.clone())
}

/// Closed visibility of a point on the far side of `x = 0`, with `v`
/// imagined stretched out to the point.
fn sees_closed(c: &Vertical, target: &Pt<Rat>) -> bool {
    let (lo, hi) = (max(&c.u.y1, &c.v.y1), min(&c.u.y2, &c.v.y2));
    let y = cross_y(&c.p, target);
    target.x > Rat::from_int(0) && c.v.y1 <= target.y && target.y <= c.v.y2 && y >= lo && y <= hi
}

fn sees_open(c: &Vertical, target: &Pt<Rat>) -> bool {
    let (lo, hi) = (max(&c.u.y1, &c.v.y1), min(&c.u.y2, &c.v.y2));
    let y = cross_y(&c.p, target);
    target.x > Rat::from_int(0) && c.v.y1 <= target.y && target.y <= c.v.y2 && y > lo && y < hi
}

fn max(a: &Rat, b: &Rat) -> Rat {
    if a > b { a.clone() } else { b.clone() }
}

fn min(a: &Rat, b: &Rat) -> Rat {
    if a < b { a.clone() } else { b.clone() }
}

fn probes(x: &Rat) -> [Rat; 4] {
    [x.clone(), x.clone() + Rat::from_int(1), x.clone() + Rat::from_int(10), x.clone() + Rat::from_int(1000)]
}

fn gate_in(lo: &Rat, hi: &Rat, a: i64, b: i64) -> Gate<Rat> {
    let (a, b) = (a.min(b), a.max(b) + 1);
    let h = hi.clone() - lo.clone();
    Gate::new("v", lo.clone() + h.clone() * q(a, 102), lo.clone() + h * q(b, 102)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn diverging_covers_right_side(c in diverging()) {
        let vis = visibility_region(&c.p, &c.u, &c.v).unwrap();
        prop_assume!(vis.position() == Some(ApexPosition::Diverging));
        let lo = max(&c.u.y1, &c.v.y1);
        let hi = min(&c.u.y2, &c.v.y2);
        prop_assume!(c.p.y != lo && c.p.y != hi);
        let x = min_stretch_diverging(&c.p, &c.u, &c.v).unwrap();
        prop_assert!(x >= c.v.x2);
        for xp in probes(&x) {
            prop_assert!(sees_closed(&c, &Pt::new(xp.clone(), c.v.y1.clone())));
            prop_assert!(sees_closed(&c, &Pt::new(xp, c.v.y2.clone())));
        }
    }

    #[test]
    fn diverging_interval_covers_gate(c in diverging(), a in 1i64..100, b in 1i64..100) {
        let vis = visibility_region(&c.p, &c.u, &c.v).unwrap();
        prop_assume!(vis.position() == Some(ApexPosition::Diverging));
        let lo = max(&c.u.y1, &c.v.y1);
        let hi = min(&c.u.y2, &c.v.y2);
        prop_assume!(c.p.y != lo && c.p.y != hi);
        let g = gate_in(&c.v.y1, &c.v.y2, a, b);
        let x = min_stretch_diverging_interval(&c.p, &c.u, &c.v, &g.lo, &g.hi).unwrap();
        for xp in probes(&x) {
            prop_assert!(sees_closed(&c, &Pt::new(xp.clone(), g.lo.clone())));
            prop_assert!(sees_closed(&c, &Pt::new(xp, g.hi.clone())));
        }
    }

    #[test]
    fn nondiverging_threshold_reaches_blind(c in nondiverging(), a in 1i64..100, b in 1i64..100) {
        let vis = visibility_region(&c.p, &c.u, &c.v).unwrap();
        let pos = vis.position().unwrap();
        prop_assume!(pos != ApexPosition::Diverging);
        // gate inside R(v) and strictly on the far side of the apex height
        let (glo, ghi) = match pos {
            ApexPosition::Above => (c.v.y1.clone(), min(&c.v.y2, &c.p.y)),
            _ => (max(&c.v.y1, &c.p.y), c.v.y2.clone()),
        };
        prop_assume!(glo < ghi);
        let g = gate_in(&glo, &ghi, a, b);
        let x = min_stretch_nondiverging(&c.p, &c.u, &c.v, &g).unwrap();
        let (lo, hi) = (max(&c.u.y1, &c.v.y1), min(&c.u.y2, &c.v.y2));
        for xp in probes(&x) {
            let near = Pt::new(xp.clone(), if pos == ApexPosition::Above { g.hi.clone() } else { g.lo.clone() });
            let far = Pt::new(xp, if pos == ApexPosition::Above { g.lo.clone() } else { g.hi.clone() });
            let (yn, yf) = (cross_y(&c.p, &near), cross_y(&c.p, &far));
            if pos == ApexPosition::Above {
                // near end of the gate in the closed top blind part, far end not below the segment
                prop_assert!(yn >= hi);
                prop_assert!(yf >= lo);
            } else {
                prop_assert!(yn <= lo);
                prop_assert!(yf <= hi);
            }
        }
    }

    #[test]
    fn boundary_shift_makes_gate_visible(c in nondiverging(), a in 1i64..100, b in 1i64..100, k in 0usize..4) {
        let vis = visibility_region(&c.p, &c.u, &c.v).unwrap();
        let pos = vis.position().unwrap();
        prop_assume!(pos != ApexPosition::Diverging);
        let (glo, ghi) = match pos {
            ApexPosition::Above => (c.v.y1.clone(), min(&c.v.y2, &c.p.y)),
            _ => (max(&c.v.y1, &c.p.y), c.v.y2.clone()),
        };
        prop_assume!(glo < ghi);
        let g = gate_in(&glo, &ghi, a, b);
        let x = min_stretch_nondiverging(&c.p, &c.u, &c.v, &g).unwrap();
        let mut c = c;
        c.v.x2 = probes(&x)[k].clone();
        let y = boundary_shift_nondiverging(&c.p, &c.u, &c.v, &g).unwrap();
        let (ilo, ihi) = boundary_shift_interval(&c.p, &c.u, &c.v, &g).unwrap();
        prop_assert!(ilo < y && y < ihi);
        if pos == ApexPosition::Above {
            prop_assert!(y >= c.v.y2 && y < c.p.y);
            c.v.y2 = y;
        } else {
            prop_assert!(y <= c.v.y1 && y > c.p.y);
            c.v.y1 = y;
        }
        for gy in [&g.lo, &g.hi] {
            prop_assert!(sees_closed(&c, &Pt::new(c.v.x2.clone(), gy.clone())));
        }
        prop_assert!(sees_open(&c, &Pt::new(c.v.x2.clone(), g.mid())));
        // the near end is strictly visible; only the far line may touch the gate
        let near = if pos == ApexPosition::Above { &g.hi } else { &g.lo };
        let yn = cross_y(&c.p, &Pt::new(c.v.x2.clone(), near.clone()));
        let strict = if pos == ApexPosition::Above { yn < c.v.y2 } else { yn > c.v.y1 };
        prop_assert!(strict);
    }

    #[test]
    fn horizontal_threshold_covers_gate(
        a in 1i64..40, b in 1i64..40, x0 in 1i64..40, uh in 1i64..40, vh in 1i64..40,
        tx in 1i64..99, ty in 1i64..99, ga in 1i64..100, gb in 1i64..100, mirror in any::<bool>(),
    ) {
        // u above v, sharing y = 0; the right sides are aligned at x0
        let x0 = q(x0, 4);
        let mut u = rect("u", q(-a, 4), Rat::from_int(0), x0.clone(), q(uh, 4));
        let mut v = rect("v", q(-b, 4), q(-vh, 4), x0, Rat::from_int(0));
        let mut p = Pt::new(u.x1.clone() + u.width() * q(tx, 100), u.height() * q(ty, 100));
        let mut g = gate_in(&v.y1, &v.y2, ga, gb);
        let mut orientation = Orientation::UAbove;
        if mirror {
            let flip = |r: &Rect<Rat>| rect(&r.id, r.x1.clone(), -r.y2.clone(), r.x2.clone(), -r.y1.clone());
            u = flip(&u);
            v = flip(&v);
            p.y = -p.y;
            g = Gate::new("v", -g.hi.clone(), -g.lo.clone()).unwrap();
            orientation = Orientation::UBelow;
        }
        let x = min_stretch_horizontal(&p, &u, &v, &g, orientation).unwrap();
        prop_assert!(x >= v.x2);
        for xp in probes(&x) {
            let (mut u, mut v) = (u.clone(), v.clone());
            u.x2 = xp.clone();
            v.x2 = xp.clone();
            let left = max(&u.x1, &v.x1);
            for gy in [&g.lo, &g.hi] {
                let t = Pt::new(xp.clone(), gy.clone());
                // abscissa where p -> t crosses y = 0
                let xc = p.x.clone() + (t.x.clone() - p.x.clone()) * (Rat::from_int(0) - p.y.clone()) / (t.y.clone() - p.y.clone());
                prop_assert!(xc >= left && xc <= xp);
            }
        }
    }

    #[test]
    fn blind_and_visible_split_right_side(c in nondiverging(), ks in prop::collection::vec(0i64..=64, 1..12)) {
        let vis = visibility_region(&c.p, &c.u, &c.v).unwrap();
        let pos = vis.position().unwrap();
        prop_assume!(pos != ApexPosition::Diverging);
        // the far delimiting line must clear R(v) for the two parts to cover it
        let far_end = if pos == ApexPosition::Above { vis.common.lo().clone() } else { vis.common.hi().clone() };
        let at_x2 = far_end.y.clone() + (far_end.y.clone() - c.p.y.clone()) * c.v.x2.clone() / (Rat::from_int(0) - c.p.x.clone());
        let clears = if pos == ApexPosition::Above { at_x2 < c.v.y1 } else { at_x2 > c.v.y2 };
        prop_assume!(clears);
        let near_end = if pos == ApexPosition::Above { vis.common.hi().clone() } else { vis.common.lo().clone() };
        let t_near = near_end.y.clone() + (near_end.y.clone() - c.p.y.clone()) * c.v.x2.clone() / (Rat::from_int(0) - c.p.x.clone());
        let blind = blind_segment(&c.p, &c.u, &c.v).unwrap();
        let mut ys: Vec<Rat> = ks.iter().map(|k| c.v.y1.clone() + c.v.height() * q(*k, 64)).collect();
        if let Some(b) = &blind {
            ys.push(b.a.y.clone());
            ys.push(b.b.y.clone());
        }
        for y in ys {
            let t = Pt::new(c.v.x2.clone(), y.clone());
            let in_blind = blind.as_ref().is_some_and(|b| b.a.y <= y && y <= b.b.y);
            let in_vis = vis.contains(&t);
            let is_end = blind.as_ref().is_some_and(|b| b.a.y == y || b.b.y == y);
            prop_assert!(in_blind || in_vis || y == t_near);
            prop_assert_eq!(in_vis, sees_open(&c, &t));
            prop_assert!(!(in_blind && in_vis) || is_end);
        }
    }
}

/// Adjacent pair `u`, `v` (either orientation) with apex in `u`.
fn adjacent_pair() -> impl Strategy<Value = (Pt<Rat>, Rect<Rat>, Rect<Rat>)> {
    (vertical(), 0u8..4).prop_map(|(c, turn)| {
        // rotate the vertical configuration by multiples of 90 degrees
        let rot = |p: &Pt<Rat>| match turn {
            0 => p.clone(),
            1 => Pt::new(-p.y.clone(), p.x.clone()),
            2 => Pt::new(-p.x.clone(), -p.y.clone()),
            _ => Pt::new(p.y.clone(), -p.x.clone()),
        };
        let rot_rect = |r: &Rect<Rat>| {
            let a = rot(&Pt::new(r.x1.clone(), r.y1.clone()));
            let b = rot(&Pt::new(r.x2.clone(), r.y2.clone()));
            rect(&r.id, min(&a.x, &b.x), min(&a.y, &b.y), max(&a.x, &b.x), max(&a.y, &b.y))
        };
        (rot(&c.p), rot_rect(&c.u), rot_rect(&c.v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn visibility_matches_segment_oracle((p, u, v) in adjacent_pair(), pts in prop::collection::vec((0i64..=40, 0i64..=40), 200)) {
        let vis = visibility_region(&p, &u, &v).unwrap();
        let common = seg_common(&u, &v).unwrap();
        for (i, j) in pts {
            let t = Pt::new(v.x1.clone() + v.width() * q(i, 40), v.y1.clone() + v.height() * q(j, 40));
            let hits = boundary_points(&p, &t, &[u.clone(), v.clone()]);
            let oracle = hits.len() == 1 && common.seg.relative_interior_contains(&hits[0]);
            prop_assert_eq!(vis.contains(&t), oracle, "q = ({:?}, {:?})", t.x, t.y);
        }
    }
}
