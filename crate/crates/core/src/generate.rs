//! Random subdivisions from guillotine cuts and pinwheel substitutions.
//!
//! Every cut uses a coordinate that has never been used before, so no four
//! rectangles can meet in a point.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::Rect;
use crate::scalar::Scalar;
use crate::subdivision::Subdivision;
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenOptions {
    /// Number of rectangles, at least 1.
    pub count: usize,
    pub seed: u64,
    /// Probability that a refinement substitutes a pinwheel instead of a cut.
    pub pinwheel: f64,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions { count: 10, seed: 0, pinwheel: 0.0 }
    }
}

struct Fresh {
    xs: HashSet<Rat>,
    ys: HashSet<Rat>,
}

impl Fresh {
    fn pick(used: &mut HashSet<Rat>, rng: &mut ChaCha8Rng, lo: &Rat, hi: &Rat, avoid: Option<&Rat>) -> Rat {
        loop {
            let k = Rat::from_int(rng.gen_range(20..=80));
            let c = lo.clone() + (hi.clone() - lo.clone()) * k / Rat::from_int(100);
            if !used.contains(&c) && avoid != Some(&c) {
                used.insert(c.clone());
                return c;
            }
        }
    }
}

fn boxed(x1: &Rat, y1: &Rat, x2: &Rat, y2: &Rat) -> Rect<Rat> {
    Rect { id: String::new(), x1: x1.clone(), y1: y1.clone(), x2: x2.clone(), y2: y2.clone() }
}

/// The five rectangles of a pinwheel inside `r` with inner square
/// `[xa, xb] x [ya, yb]`.
fn pinwheel(r: &Rect<Rat>, xa: &Rat, xb: &Rat, ya: &Rat, yb: &Rat) -> [Rect<Rat>; 5] {
    [
        boxed(&r.x1, &r.y1, xb, ya),
        boxed(xb, &r.y1, &r.x2, yb),
        boxed(xa, yb, &r.x2, &r.y2),
        boxed(&r.x1, ya, xa, &r.y2),
        boxed(xa, ya, xb, yb),
    ]
}

/// A random valid subdivision of `[0, 100]^2`, deterministic per seed.
/// Rectangles are named `r1..rn` in canonical order.
pub fn generate(opts: GenOptions) -> Subdivision<Rat> {
    let count = opts.count.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (zero, side) = (Rat::from_int(0), Rat::from_int(100));
    let mut fresh = Fresh { xs: HashSet::from([zero.clone(), side.clone()]), ys: HashSet::from([zero.clone(), side.clone()]) };
    let mut rects = vec![boxed(&zero, &zero, &side, &side)];
    while rects.len() < count {
        let k = rng.gen_range(0..rects.len());
        let r = rects.swap_remove(k);
        if rects.len() + 5 <= count && rng.gen_bool(opts.pinwheel.clamp(0.0, 1.0)) {
            let xa = Fresh::pick(&mut fresh.xs, &mut rng, &r.x1, &r.x2, None);
            let xb = Fresh::pick(&mut fresh.xs, &mut rng, &r.x1, &r.x2, Some(&xa));
            let ya = Fresh::pick(&mut fresh.ys, &mut rng, &r.y1, &r.y2, None);
            let yb = Fresh::pick(&mut fresh.ys, &mut rng, &r.y1, &r.y2, Some(&ya));
            let (xa, xb) = if xa < xb { (xa, xb) } else { (xb, xa) };
            let (ya, yb) = if ya < yb { (ya, yb) } else { (yb, ya) };
            rects.extend(pinwheel(&r, &xa, &xb, &ya, &yb));
        } else if rng.gen_bool(0.5) {
            let x = Fresh::pick(&mut fresh.xs, &mut rng, &r.x1, &r.x2, None);
            rects.push(boxed(&r.x1, &r.y1, &x, &r.y2));
            rects.push(boxed(&x, &r.y1, &r.x2, &r.y2));
        } else {
            let y = Fresh::pick(&mut fresh.ys, &mut rng, &r.y1, &r.y2, None);
            rects.push(boxed(&r.x1, &r.y1, &r.x2, &y));
            rects.push(boxed(&r.x1, &y, &r.x2, &r.y2));
        }
    }
    rects.sort_by(|a, b| a.y1.cmp(&b.y1).then_with(|| a.x1.cmp(&b.x1)));
    for (k, r) in rects.iter_mut().enumerate() {
        r.id = format!("r{}", k + 1);
    }
    let mut bounds = boxed(&zero, &zero, &side, &side);
    bounds.id = "bounds".into();
    Subdivision::new(bounds, rects).expect("generated subdivision is valid")
}
