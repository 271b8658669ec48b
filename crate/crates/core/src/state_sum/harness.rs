use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::biparcel::Biparcel;
use crate::complex::{candidate_sites, pachner_move, DirectedTriangulation, MoveKind, Site};
use crate::error::{Error, Result};

use super::{invariant_with, EvalOptions};

/// Random (kind, site) draws per step before giving up.
pub const MAX_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub index: usize,
    #[serde(rename = "move")]
    pub kind: String,
    pub site: Vec<u32>,
    pub re: f64,
    pub im: f64,
    pub deviation: f64,
    pub vertices: usize,
    pub tets: usize,
}

/// Invariant values along a move sequence.
#[derive(Clone, Debug, Serialize)]
pub struct Trace {
    pub initial_re: f64,
    pub initial_im: f64,
    pub steps: Vec<TraceStep>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip)]
    pub last: Option<DirectedTriangulation>,
}

struct Tracer<'a> {
    biparcel: &'a Biparcel,
    options: &'a EvalOptions,
    trace: Trace,
    initial: num_complex::Complex64,
}

impl<'a> Tracer<'a> {
    fn start(biparcel: &'a Biparcel, t: &DirectedTriangulation, options: &'a EvalOptions) -> Result<Self> {
        let initial = invariant_with(biparcel, t, options)?.value;
        let trace = Trace {
            initial_re: initial.re,
            initial_im: initial.im,
            steps: Vec::new(),
            max_deviation: 0.0,
            tolerance: options.tolerance,
            passed: true,
            last: Some(t.clone()),
        };
        Ok(Self { biparcel, options, trace, initial })
    }

    fn record(&mut self, kind: MoveKind, site: &Site, t: DirectedTriangulation) -> Result<()> {
        let value = invariant_with(self.biparcel, &t, self.options)?.value;
        let deviation = (value - self.initial).norm();
        self.trace.max_deviation = self.trace.max_deviation.max(deviation);
        self.trace.passed = self.trace.max_deviation <= self.options.tolerance;
        self.trace.steps.push(TraceStep {
            index: self.trace.steps.len(),
            kind: kind.name().to_string(),
            site: site.vertices(),
            re: value.re,
            im: value.im,
            deviation,
            vertices: t.complex().vertex_count(),
            tets: t.complex().tets().len(),
        });
        self.trace.last = Some(t);
        Ok(())
    }

    fn current(&self) -> &DirectedTriangulation {
        self.trace.last.as_ref().unwrap()
    }
}

/// Applies the moves in order, recomputing the invariant after each.
pub fn invariance_check(
    biparcel: &Biparcel,
    t: &DirectedTriangulation,
    moves: &[(MoveKind, Site)],
    options: &EvalOptions,
) -> Result<Trace> {
    let mut tracer = Tracer::start(biparcel, t, options)?;
    for (index, (kind, site)) in moves.iter().enumerate() {
        let out = pachner_move(tracer.current(), *kind, site)
            .map_err(|e| Error::MoveFailed { index, source: Box::new(e) })?;
        tracer.record(*kind, site, out.triangulation)?;
    }
    Ok(tracer.trace)
}

/// Applies `steps` random moves drawn from `kinds`, seeded for reproducibility.
pub fn random_moves(
    biparcel: &Biparcel,
    t: &DirectedTriangulation,
    kinds: &[MoveKind],
    steps: usize,
    seed: u64,
    options: &EvalOptions,
) -> Result<Trace> {
    if kinds.is_empty() {
        return Err(Error::InvalidArgument("no move kinds to draw from".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tracer = Tracer::start(biparcel, t, options)?;
    for step in 0..steps {
        let mut applied = false;
        for _ in 0..MAX_ATTEMPTS {
            let kind = *kinds.choose(&mut rng).unwrap();
            let sites = candidate_sites(tracer.current(), kind);
            let Some(site) = sites.choose(&mut rng) else { continue };
            if let Ok(out) = pachner_move(tracer.current(), kind, site) {
                let site = site.clone();
                tracer.record(kind, &site, out.triangulation)?;
                applied = true;
                break;
            }
        }
        if !applied {
            return Err(Error::NoApplicableMove { step, attempts: MAX_ATTEMPTS });
        }
    }
    Ok(tracer.trace)
}
