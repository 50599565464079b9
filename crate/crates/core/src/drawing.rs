//! Output of the construction: rectangles plus one point per rectangle.

use thiserror::Error;

use crate::geometry::{Gate, Pt, Rect};
use crate::scalar::Scalar;
use crate::subdivision::{bounding_box, derive_from_rects, LabeledGraph, POLE_NAMES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("nothing to strip: the drawing is empty")]
    Empty,
    #[error("stripping the poles leaves no rectangles")]
    NothingLeft,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex<S> {
    pub id: String,
    pub at: Pt<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DrawingMeta<S> {
    /// Number of induction steps performed.
    pub steps: usize,
    /// Width of the final layout.
    pub width: S,
    /// Whether the four pole strips are still part of the drawing.
    pub augmented: bool,
    /// Gates of the critical vertices, kept for debug rendering.
    pub gates: Vec<Gate<S>>,
}

/// A rectangular dual with a point inside each rectangle. The edges are the
/// adjacencies of the rectangles; they are derived, not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SimDrawing<S> {
    pub rects: Vec<Rect<S>>,
    pub vertices: Vec<Vertex<S>>,
    pub meta: DrawingMeta<S>,
}

impl<S: Scalar> SimDrawing<S> {
    pub fn rect(&self, id: &str) -> Option<&Rect<S>> {
        self.rects.iter().find(|r| r.id == id)
    }

    pub fn vertex(&self, id: &str) -> Option<&Pt<S>> {
        self.vertices.iter().find(|v| v.id == id).map(|v| &v.at)
    }

    /// Primal graph of the rectangles, indices into `rects`.
    pub fn graph(&self) -> LabeledGraph {
        derive_from_rects(&self.rects, None)
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }
}

/// Removes the pole rectangles and their vertices from a drawing of an
/// augmented instance. Drawings that were not augmented come back unchanged.
pub fn strip_boundary<S: Scalar>(d: SimDrawing<S>) -> Result<SimDrawing<S>, DrawingError> {
    if d.rects.is_empty() {
        return Err(DrawingError::Empty);
    }
    if !d.meta.augmented {
        return Ok(d);
    }
    let keep = |id: &str| !POLE_NAMES.contains(&id);
    let rects: Vec<_> = d.rects.into_iter().filter(|r| keep(&r.id)).collect();
    let bbox = bounding_box(&rects).ok_or(DrawingError::NothingLeft)?;
    Ok(SimDrawing {
        vertices: d.vertices.into_iter().filter(|v| keep(&v.id)).collect(),
        meta: DrawingMeta {
            steps: d.meta.steps,
            width: bbox.width(),
            augmented: false,
            gates: d.meta.gates.into_iter().filter(|g| keep(&g.owner)).collect(),
        },
        rects,
    })
}
