//! SVG output. Coordinates are converted to `f64` here and nowhere else.

use std::fmt::Write as _;

use anyhow::{ensure, Result};
use simdual::drawing::SimDrawing;
use simdual::geometry::{seg_common, Gate, Pt, Rect};
use simdual::subdivision::derive_from_rects;
use simdual::{Rat, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    /// Pixels per unit; `None` fits the longer side to 800 px.
    pub scale: Option<f64>,
    /// Decimal places for SVG coordinates.
    pub precision: usize,
    pub rects: bool,
    pub labels: bool,
    pub edges: bool,
    pub gates: bool,
    /// Cone from each edge's first vertex through the shared segment.
    pub wedges: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { scale: None, precision: 2, rects: true, labels: true, edges: true, gates: false, wedges: false }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<()> {
        ensure!(self.precision >= 1, "precision must be at least 1");
        if let Some(s) = self.scale {
            ensure!(s.is_finite() && s > 0.0, "scale must be positive");
        }
        Ok(())
    }
}

const MARGIN: f64 = 20.0;
const FIT: f64 = 800.0;

/// What gets drawn, already in exact coordinates.
pub struct Scene<'a> {
    pub rects: &'a [Rect<Rat>],
    /// Vertex per rectangle id; rectangles without one are drawn empty.
    pub points: Vec<(&'a str, &'a Pt<Rat>)>,
    pub gates: &'a [Gate<Rat>],
}

impl<'a> Scene<'a> {
    pub fn of_drawing(d: &'a SimDrawing<Rat>) -> Self {
        Scene { rects: &d.rects, points: d.vertices.iter().map(|v| (v.id.as_str(), &v.at)).collect(), gates: &d.meta.gates }
    }

    fn point(&self, id: &str) -> Option<&'a Pt<Rat>> {
        self.points.iter().find(|(v, _)| *v == id).map(|(_, p)| *p)
    }
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    precision: usize,
}

impl Frame {
    fn x(&self, x: &Rat) -> String {
        format!("{:.*}", self.precision, MARGIN + (x.approx() - self.min_x) * self.scale)
    }

    /// Flipped so that larger y is higher on the page.
    fn y(&self, y: &Rat) -> String {
        format!("{:.*}", self.precision, MARGIN + (self.max_y - y.approx()) * self.scale)
    }

    fn len(&self, d: &Rat) -> String {
        format!("{:.*}", self.precision, d.approx() * self.scale)
    }

    fn pt(&self, p: &Pt<Rat>) -> String {
        format!("{},{}", self.x(&p.x), self.y(&p.y))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render_svg(scene: &Scene<'_>, opts: &RenderOptions) -> String {
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (i, r) in scene.rects.iter().enumerate() {
        let (x1, y1, x2, y2) = (r.x1.approx(), r.y1.approx(), r.x2.approx(), r.y2.approx());
        if i == 0 {
            (min_x, min_y, max_x, max_y) = (x1, y1, x2, y2);
        } else {
            (min_x, min_y, max_x, max_y) = (min_x.min(x1), min_y.min(y1), max_x.max(x2), max_y.max(y2));
        }
    }
    let (w, h) = (max_x - min_x, max_y - min_y);
    let scale = opts.scale.unwrap_or_else(|| if w.max(h) > 0.0 { FIT / w.max(h) } else { 1.0 });
    let f = Frame { min_x, max_y, scale, precision: opts.precision };
    let p = opts.precision;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let (cw, ch) = (w * scale + 2.0 * MARGIN, h * scale + 2.0 * MARGIN);
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{cw:.p$}\" height=\"{ch:.p$}\" viewBox=\"0 0 {cw:.p$} {ch:.p$}\">"
    );

    if opts.rects {
        out.push_str("<g class=\"rects\" fill=\"#f4f1ea\" stroke=\"#333\" stroke-width=\"1\">\n");
        for r in scene.rects {
            let _ = writeln!(
                out,
                "<rect id=\"r-{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
                escape(&r.id),
                f.x(&r.x1),
                f.y(&r.y2),
                f.len(&r.width()),
                f.len(&r.height())
            );
        }
        out.push_str("</g>\n");
    }

    let g = derive_from_rects(scene.rects, None);
    let ends = |e: &simdual::subdivision::LabeledEdge| {
        let (u, v) = (&scene.rects[e.from], &scene.rects[e.to]);
        Some((u, v, scene.point(&u.id)?, scene.point(&v.id)?))
    };

    if opts.wedges {
        out.push_str("<g class=\"wedges\" fill=\"#6a9fd8\" fill-opacity=\"0.15\" stroke=\"none\">\n");
        for e in &g.edges {
            let Some((u, v, pu, _)) = ends(e) else { continue };
            let Some(c) = seg_common(u, v) else { continue };
            let _ = writeln!(out, "<polygon points=\"{} {} {}\"/>", f.pt(pu), f.pt(c.lo()), f.pt(c.hi()));
        }
        out.push_str("</g>\n");
    }

    if opts.edges {
        out.push_str("<g class=\"edges\" stroke=\"#c0392b\" stroke-width=\"1.5\">\n");
        for e in &g.edges {
            let Some((_, _, pu, pv)) = ends(e) else { continue };
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                f.x(&pu.x),
                f.y(&pu.y),
                f.x(&pv.x),
                f.y(&pv.y)
            );
        }
        out.push_str("</g>\n");
    }

    if opts.gates {
        out.push_str("<g class=\"gates\" stroke=\"#27ae60\" stroke-width=\"4\" fill=\"none\">\n");
        for gate in scene.gates {
            let Some(r) = scene.rects.iter().find(|r| r.id == gate.owner) else { continue };
            let _ = writeln!(out, "<path d=\"M {} {} L {} {}\"/>", f.x(&r.x2), f.y(&gate.lo), f.x(&r.x2), f.y(&gate.hi));
        }
        out.push_str("</g>\n");
    }

    out.push_str("<g class=\"vertices\" fill=\"#111\">\n");
    for r in scene.rects {
        if let Some(pt) = scene.point(&r.id) {
            let _ = writeln!(out, "<circle cx=\"{}\" cy=\"{}\" r=\"{:.p$}\"/>", f.x(&pt.x), f.y(&pt.y), 3.0);
        }
    }
    out.push_str("</g>\n");

    if opts.labels {
        out.push_str("<g class=\"labels\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555\">\n");
        for r in scene.rects {
            let Some(pt) = scene.point(&r.id) else { continue };
            let _ = writeln!(
                out,
                "<text x=\"{:.p$}\" y=\"{:.p$}\">{}</text>",
                MARGIN + (pt.x.approx() - min_x) * scale + 4.0,
                MARGIN + (max_y - pt.y.approx()) * scale - 4.0,
                escape(&r.id)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
