//! Command implementations behind the `simdual` binary.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure,
//! 3 internal invariant violation.

pub mod render;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use simdual::construct::{run_with, ConstructError, RunOptions, StepSnapshot};
use simdual::drawing::SimDrawing;
use simdual::generate::{generate, GenOptions};
use simdual::io::{parse_draw, parse_rsub, write_draw, write_face_plan, write_graph, write_rsub};
use simdual::stgraph::{build_face_plan, build_red};
use simdual::subdivision::{augment_boundary, derive_primal};
use simdual::verify::verify;
use simdual::{Rat, RatSubdivision};

pub use render::{render_svg, RenderOptions, Scene};
pub use simdual::construct::Placement;

#[derive(Debug)]
pub enum Failure {
    Input(anyhow::Error),
    Verification(String),
    Internal(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "invalid input: {e:#}"),
            Failure::Verification(_) => write!(f, "verification failed"),
            Failure::Internal(e) => write!(f, "internal error: {e:#}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

pub type Outcome<T> = Result<T, Failure>;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Outcome<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display())).map_err(Failure::Internal)
}

pub fn load_subdivision(path: &Path) -> Outcome<RatSubdivision> {
    let text = read(path)?;
    Ok(parse_rsub(&text).with_context(|| path.display().to_string())?)
}

pub fn load_drawing(path: &Path) -> Outcome<SimDrawing<Rat>> {
    let text = read(path)?;
    Ok(parse_draw(&text).with_context(|| path.display().to_string())?)
}

#[derive(Clone, Debug)]
pub struct DrawArgs {
    pub input: PathBuf,
    pub output: PathBuf,
    pub verify: bool,
    /// Directory for one SVG per induction step.
    pub steps: Option<PathBuf>,
    pub check_steps: bool,
    pub placement: Placement,
}

#[derive(Clone, Debug)]
pub struct DrawSummary {
    pub rects: usize,
    pub steps: usize,
    pub verified: bool,
    pub frames: usize,
}

fn construct_failure(e: ConstructError) -> Failure {
    if e.is_input_error() {
        Failure::Input(e.into())
    } else {
        Failure::Internal(e.into())
    }
}

/// Builds the drawing, writes it, then verifies it against the input.
pub fn cmd_draw(args: &DrawArgs) -> Outcome<DrawSummary> {
    let sub = load_subdivision(&args.input)?;
    if let Some(dir) = &args.steps {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display())).map_err(Failure::Internal)?;
    }
    let mut frames = 0;
    let mut frame_error = None;
    let options = RunOptions { check_steps: args.check_steps, placement: args.placement };
    let hook = |snap: &StepSnapshot<'_, Rat>| {
        let Some(dir) = &args.steps else { return };
        if snap.step == 0 || frame_error.is_some() {
            return;
        }
        let svg = step_svg(snap);
        match fs::write(dir.join(format!("step_{:03}.svg", snap.step)), svg) {
            Ok(()) => frames += 1,
            Err(e) => frame_error = Some(e),
        }
    };
    let drawing = run_with(&sub, options, hook).map_err(construct_failure)?;
    if let Some(e) = frame_error {
        return Err(Failure::Internal(anyhow!(e).context("cannot write step frame")));
    }
    write(&args.output, &write_draw(&drawing))?;
    let mut summary = DrawSummary { rects: drawing.rects.len(), steps: drawing.meta.steps, verified: false, frames };
    if args.verify {
        let report = verify(&sub, &drawing);
        if !report.passed() {
            return Err(Failure::Verification(report.to_string()));
        }
        summary.verified = true;
    }
    Ok(summary)
}

/// The current layout of one step, poles included, with gates shown.
fn step_svg(snap: &StepSnapshot<'_, Rat>) -> String {
    let state = snap.state;
    let rects = state.placed_rects();
    let points = state.placed().filter_map(|v| Some((state.ids[v].as_str(), state.points[v].as_ref()?))).collect();
    let scene = Scene { rects: &rects, points, gates: &state.gates };
    render_svg(&scene, &RenderOptions { gates: true, ..Default::default() })
}

/// A random instance as `.rsub` text.
pub fn cmd_gen(count: usize, seed: u64, pinwheel: f64) -> Outcome<String> {
    if count == 0 {
        return Err(Failure::Input(anyhow!("count must be at least 1")));
    }
    if !(0.0..=1.0).contains(&pinwheel) {
        return Err(Failure::Input(anyhow!("pinwheel probability must lie in [0, 1]")));
    }
    Ok(write_rsub(&generate(GenOptions { count, seed, pinwheel })))
}

pub fn cmd_render(input: &Path, output: &Path, opts: &RenderOptions) -> Outcome<()> {
    opts.validate()?;
    let drawing = load_drawing(input)?;
    write(output, &render_svg(&Scene::of_drawing(&drawing), opts))
}

/// Labeled graph of the input, optionally with the four poles added.
pub fn cmd_derive(input: &Path, augment: bool) -> Outcome<String> {
    let mut sub = load_subdivision(input)?;
    if augment {
        sub = augment_boundary(&sub).map_err(|e| Failure::Input(e.into()))?;
    }
    Ok(write_graph(&derive_primal(&sub)))
}

/// Faces of the red st-digraph of the augmented input and their order.
pub fn cmd_plan(input: &Path) -> Outcome<String> {
    let sub = load_subdivision(input)?;
    let aug = augment_boundary(&sub).map_err(|e| Failure::Input(e.into()))?;
    let g = derive_primal(&aug);
    let red = build_red(&g).map_err(|e| Failure::Input(e.into()))?;
    let plan = build_face_plan(&red).map_err(|e| Failure::Input(e.into()))?;
    Ok(write_face_plan(&plan, &g.ids))
}

/// Report text; a failed report is returned as [`Failure::Verification`].
pub fn cmd_verify(input: &Path, drawing: &Path) -> Outcome<String> {
    let sub = load_subdivision(input)?;
    let d = load_drawing(drawing)?;
    let report = verify(&sub, &d);
    if report.passed() {
        Ok(report.to_string())
    } else {
        Err(Failure::Verification(report.to_string()))
    }
}
