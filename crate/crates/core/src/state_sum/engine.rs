use std::collections::HashMap;

use num_complex::Complex64;

use crate::biparcel::{Biparcel, Orientation, TetKey};
use crate::complex::DirectedTriangulation;
use crate::error::{Error, Result};
use crate::gaunt::{Category, Functor};

use super::{Amplitude, EvalOptions};

/// How the base of a directed triangulation maps into the base of a biparcel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseMap {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl BaseMap {
    /// Picks the evident functor from the stratum poset `gamma` into `base`:
    /// everything to the identity if `base` has one object, otherwise objects
    /// by name (or by rank when the names differ but the counts agree) and
    /// arrows to the unique arrow between the images.
    pub fn infer(gamma: &Category, base: &Category) -> Result<Self> {
        let objects: Vec<usize> = if base.objects().len() == 1 {
            vec![0; gamma.objects().len()]
        } else if let Some(by_name) = gamma.objects().iter().map(|o| base.object(o)).collect::<Option<Vec<_>>>() {
            by_name
        } else if gamma.objects().len() == base.objects().len() {
            (0..gamma.objects().len()).collect()
        } else {
            return Err(Error::BaseMismatch(format!(
                "strata {:?} do not match base objects {:?}",
                gamma.objects(),
                base.objects()
            )));
        };
        let mut arrows = Vec::with_capacity(gamma.arrows().len());
        for a in gamma.arrows() {
            let (x, y) = (objects[a.src], objects[a.tgt]);
            let hom = base.hom(x, y);
            let image = if x == y && base.objects().len() == 1 {
                Some(base.identity(x))
            } else if hom.len() == 1 {
                Some(hom[0])
            } else {
                None
            };
            let image = image.ok_or_else(|| {
                Error::BaseMismatch(format!("arrow {} has {} candidate images in the base", a.id, hom.len()))
            })?;
            arrows.push(image);
        }
        let map = Self { objects, arrows };
        map.check(gamma, base)?;
        Ok(map)
    }

    pub fn from_functor(functor: Functor, gamma: &Category, base: &Category) -> Result<Self> {
        let map = Self { objects: functor.objects, arrows: functor.arrows };
        map.check(gamma, base)?;
        Ok(map)
    }

    fn check(&self, gamma: &Category, base: &Category) -> Result<()> {
        Functor { objects: self.objects.clone(), arrows: self.arrows.clone() }
            .validate(gamma, base)
            .map_err(|e| Error::BaseMismatch(e.to_string()))
    }
}

/// One admissible coloring: simples per directed edge and multiplicity
/// indices per directed triangle, both in the triangulation's index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    /// Base object per vertex, in ascending vertex id order.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub triangles: Vec<u32>,
}

#[derive(Clone, Copy, Debug)]
enum Level {
    Edge(usize),
    Triangle(usize),
}

struct TetSlot {
    edges: [usize; 6],
    triangles: [usize; 4],
    sign: Orientation,
}

/// The state sum compiled into a flat backtracking schedule. Each edge is
/// followed by the triangles it completes; a tet is weighted at the level
/// that assigns its last triangle.
pub(crate) struct Problem<'a> {
    biparcel: &'a Biparcel,
    levels: Vec<Level>,
    candidates: Vec<Vec<usize>>,
    triangle_edges: Vec<[usize; 3]>,
    tets: Vec<TetSlot>,
    closing: Vec<Vec<usize>>,
    prefactor: Complex64,
    vertex_objects: Vec<usize>,
    n_edges: usize,
}

impl<'a> Problem<'a> {
    pub(crate) fn new(biparcel: &'a Biparcel, t: &DirectedTriangulation, map: &BaseMap) -> Result<Self> {
        let candidates: Vec<Vec<usize>> =
            t.edges().iter().map(|e| biparcel.simples_over(map.arrows[e.arrow]).to_vec()).collect();
        let mut completed_at: Vec<Vec<usize>> = vec![Vec::new(); t.edges().len()];
        for (i, tri) in t.triangles().iter().enumerate() {
            completed_at[*tri.edges.iter().max().unwrap()].push(i);
        }
        let mut levels = Vec::new();
        let mut level_of_triangle = vec![0; t.triangles().len()];
        for (e, tris) in completed_at.iter().enumerate() {
            levels.push(Level::Edge(e));
            for &tri in tris {
                level_of_triangle[tri] = levels.len();
                levels.push(Level::Triangle(tri));
            }
        }
        let mut closing = vec![Vec::new(); levels.len()];
        let tets: Vec<TetSlot> = t
            .tets()
            .iter()
            .map(|tet| TetSlot { edges: tet.edges, triangles: tet.triangles, sign: tet.sign })
            .collect();
        for (i, tet) in tets.iter().enumerate() {
            let last = tet.triangles.iter().map(|&tri| level_of_triangle[tri]).max().unwrap();
            closing[last].push(i);
        }
        let mut vertex_objects = Vec::new();
        let mut prefactor = Complex64::new(1.0, 0.0);
        for (v, _) in t.complex().vertices() {
            let o = map.objects[t.vertex_object(v)];
            vertex_objects.push(o);
            let c = biparcel.vertex_constant(o);
            if c.norm() == 0.0 {
                return Err(Error::ValidationFailed(format!("vertex constant of object {o} vanishes")));
            }
            prefactor /= c;
        }
        Ok(Self {
            biparcel,
            levels,
            candidates,
            triangle_edges: t.triangles().iter().map(|tri| tri.edges).collect(),
            tets,
            closing,
            prefactor,
            vertex_objects,
            n_edges: t.edges().len(),
        })
    }

    pub(crate) fn first_choices(&self) -> usize {
        match self.levels.first() {
            Some(Level::Edge(e)) => self.candidates[*e].len(),
            _ => 1,
        }
    }
}

/// Explicit-stack odometer over the levels of a [`Problem`].
pub(crate) struct Walker {
    choice: Vec<usize>,
    limit: Vec<usize>,
    weight: Vec<Complex64>,
    edge_color: Vec<usize>,
    triangle_index: Vec<u32>,
    memo: HashMap<(TetKey, Orientation), Complex64>,
    depth: usize,
    fresh: bool,
    done: bool,
    /// Restricts the first level to a single choice.
    pin: Option<usize>,
}

impl Walker {
    pub(crate) fn new(problem: &Problem<'_>, pin: Option<usize>) -> Self {
        let n = problem.levels.len();
        let mut weight = vec![Complex64::default(); n + 1];
        weight[0] = problem.prefactor;
        Self {
            choice: vec![0; n],
            limit: vec![0; n],
            weight,
            edge_color: vec![0; problem.n_edges],
            triangle_index: vec![0; problem.triangle_edges.len()],
            memo: HashMap::new(),
            depth: 0,
            fresh: true,
            done: false,
            pin,
        }
    }

    fn choices(&self, p: &Problem<'_>, d: usize) -> usize {
        match p.levels[d] {
            Level::Edge(e) => p.candidates[e].len(),
            Level::Triangle(t) => {
                let [a, b, c] = p.triangle_edges[t].map(|e| self.edge_color[e]);
                p.biparcel.mult(a, b, c) as usize
            }
        }
    }

    fn assign(&mut self, p: &Problem<'_>, d: usize) -> Complex64 {
        let k = self.choice[d];
        match p.levels[d] {
            Level::Edge(e) => {
                let s = p.candidates[e][k];
                self.edge_color[e] = s;
                p.biparcel.simples()[s].dim
            }
            Level::Triangle(t) => {
                self.triangle_index[t] = k as u32;
                let mut w = Complex64::new(1.0, 0.0);
                for &i in &p.closing[d] {
                    let tet = &p.tets[i];
                    let key = TetKey {
                        edges: tet.edges.map(|e| self.edge_color[e]),
                        triangles: tet.triangles.map(|t| self.triangle_index[t]),
                    };
                    let biparcel = p.biparcel;
                    let a = *self.memo.entry((key, tet.sign)).or_insert_with_key(|(key, sign)| {
                        biparcel.amplitude(key, *sign).expect("admissible colorings have admissible tets")
                    });
                    w *= a;
                }
                w
            }
        }
    }

    /// Moves to the next complete coloring; `false` once exhausted.
    pub(crate) fn advance(&mut self, p: &Problem<'_>) -> bool {
        let n = p.levels.len();
        if self.done {
            return false;
        }
        if self.depth == n {
            if n == 0 {
                self.done = true;
                return false;
            }
            self.depth -= 1;
            self.fresh = false;
        }
        loop {
            let d = self.depth;
            if self.fresh {
                match (d, self.pin) {
                    (0, Some(k)) => {
                        self.choice[0] = k;
                        self.limit[0] = (k + 1).min(self.choices(p, 0));
                    }
                    _ => {
                        self.choice[d] = 0;
                        self.limit[d] = self.choices(p, d);
                    }
                }
            } else {
                self.choice[d] += 1;
            }
            if self.choice[d] < self.limit[d] {
                let w = self.assign(p, d);
                self.weight[d + 1] = self.weight[d] * w;
                self.depth += 1;
                self.fresh = true;
                if self.depth == n {
                    return true;
                }
            } else if d == 0 {
                self.done = true;
                return false;
            } else {
                self.depth -= 1;
                self.fresh = false;
            }
        }
    }

    fn coloring(&self, p: &Problem<'_>) -> Coloring {
        Coloring {
            vertices: p.vertex_objects.clone(),
            edges: self.edge_color.clone(),
            triangles: self.triangle_index.clone(),
        }
    }

    pub(crate) fn sum(mut self, p: &Problem<'_>) -> (Complex64, u64) {
        let mut total = Complex64::default();
        let mut count = 0;
        let n = p.levels.len();
        while self.advance(p) {
            total += self.weight[n];
            count += 1;
        }
        (total, count)
    }
}

/// Stream of admissible colorings in backtracking order.
pub struct Colorings<'a> {
    problem: Problem<'a>,
    walker: Walker,
}

impl Iterator for Colorings<'_> {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.walker.advance(&self.problem) {
            Some(self.walker.coloring(&self.problem))
        } else {
            None
        }
    }
}

/// Every admissible coloring of `t`, edges in index order with the
/// triangles each edge completes right after it.
pub fn enumerate_colorings<'a>(b: &'a Biparcel, t: &DirectedTriangulation) -> Result<Colorings<'a>> {
    let map = BaseMap::infer(t.gamma(), b.base())?;
    let problem = Problem::new(b, t, &map)?;
    let walker = Walker::new(&problem, None);
    Ok(Colorings { problem, walker })
}

/// The state sum of `t` with the base map inferred from the strata.
pub fn invariant(b: &Biparcel, t: &DirectedTriangulation) -> Result<Amplitude> {
    invariant_with(b, t, &EvalOptions::default())
}

pub fn invariant_with(b: &Biparcel, t: &DirectedTriangulation, options: &EvalOptions) -> Result<Amplitude> {
    let map = BaseMap::infer(t.gamma(), b.base())?;
    evaluate(b, t, &map, options)
}

/// The state sum of `t` over an explicit base map.
pub fn evaluate(b: &Biparcel, t: &DirectedTriangulation, map: &BaseMap, options: &EvalOptions) -> Result<Amplitude> {
    if options.threads == 0 {
        return Err(Error::InvalidArgument("threads must be at least 1".into()));
    }
    let problem = Problem::new(b, t, map)?;
    let (value, colorings) = if options.threads == 1 {
        Walker::new(&problem, None).sum(&problem)
    } else {
        let parts = problem.first_choices();
        let mut results = vec![(Complex64::default(), 0u64); parts];
        let chunk = parts.div_ceil(options.threads).max(1);
        std::thread::scope(|scope| {
            for (c, slots) in results.chunks_mut(chunk).enumerate() {
                let problem = &problem;
                scope.spawn(move || {
                    for (k, slot) in slots.iter_mut().enumerate() {
                        *slot = Walker::new(problem, Some(c * chunk + k)).sum(problem);
                    }
                });
            }
        });
        results.into_iter().fold((Complex64::default(), 0), |(v, n), (w, m)| (v + w, n + m))
    };
    Ok(Amplitude { value, colorings, tolerance: options.tolerance })
}
