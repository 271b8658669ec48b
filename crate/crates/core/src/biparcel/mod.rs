//! Categorical input data: simple 1-arrows over the arrows of a base
//! category, their dimensions and duals, fusion multiplicities and the two
//! tetrahedron amplitude tables.
//!
//! [`BicategoryData`] is the JSON form. [`Bicategory`] is the indexed form
//! over any finite base; [`Biparcel`] additionally requires a gaunt base and
//! is what the state sum consumes.

mod consistency;

use std::collections::{BTreeMap, HashMap};
use std::ops::Deref;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaunt::{Category, CategoryFile};
use crate::report::Report;

pub use consistency::check_move_consistency;

/// Default absolute tolerance for scalar comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleEntry {
    pub id: String,
    pub over: String,
    pub dim_re: f64,
    pub dim_im: f64,
    pub dual: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub mult: u32,
}

/// One tetrahedron amplitude. Edge colors follow the vertex order
/// `i=01, j=12, k=23, l=03, m=02, n=13`; triangle indices pick basis vectors
/// of the multiplicity spaces of `012, 123, 013, 023`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetEntry {
    pub i: String,
    pub j: String,
    pub k: String,
    pub l: String,
    pub m: String,
    pub n: String,
    pub t012: u32,
    pub t123: u32,
    pub t013: u32,
    pub t023: u32,
    pub re: f64,
    pub im: f64,
}

/// Category data file. Omitted fusion entries mean multiplicity 0, omitted
/// tetrahedron entries mean amplitude 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BicategoryData {
    pub base: CategoryFile,
    pub simples: Vec<SimpleEntry>,
    pub identity_simples: BTreeMap<String, String>,
    pub fusion: Vec<FusionEntry>,
    pub tet_plus: Vec<TetEntry>,
    pub tet_minus: Vec<TetEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Simple {
    pub id: String,
    pub over: usize,
    pub dim: Complex64,
    pub dual: Option<usize>,
}

/// Sign attached to a tetrahedron: whether its direction order agrees with
/// the ambient orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn from_sign(sign: i8) -> Self {
        if sign >= 0 {
            Orientation::Plus
        } else {
            Orientation::Minus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        }
    }
}

/// Index form of a colored tetrahedron: simples on `01,12,23,03,02,13` and
/// multiplicity indices on `012,123,013,023`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TetKey {
    pub edges: [usize; 6],
    pub triangles: [u32; 4],
}

/// Named form of [`TetKey`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TetColoring {
    pub edges: [String; 6],
    pub triangles: [u32; 4],
}

/// Indexed categorical data over an arbitrary finite base.
#[derive(Clone, Debug)]
pub struct Bicategory {
    base: Category,
    simples: Vec<Simple>,
    simple_index: HashMap<String, usize>,
    over: Vec<Vec<usize>>,
    identity_simples: Vec<usize>,
    fusion: BTreeMap<(usize, usize), Vec<(usize, u32)>>,
    mult: HashMap<(usize, usize, usize), u32>,
    tet_plus: HashMap<TetKey, Complex64>,
    tet_minus: HashMap<TetKey, Complex64>,
    c: Vec<Complex64>,
}

impl PartialEq for Bicategory {
    fn eq(&self, other: &Self) -> bool {
        self.to_data() == other.to_data()
    }
}

fn tet_key(
    entry: &TetEntry,
    lookup: &impl Fn(&str) -> Result<usize>,
) -> Result<TetKey> {
    Ok(TetKey {
        edges: [
            lookup(&entry.i)?,
            lookup(&entry.j)?,
            lookup(&entry.k)?,
            lookup(&entry.l)?,
            lookup(&entry.m)?,
            lookup(&entry.n)?,
        ],
        triangles: [entry.t012, entry.t123, entry.t013, entry.t023],
    })
}

impl Bicategory {
    /// Indexes the data, rejecting dangling references and duplicate keys.
    /// Numeric consistency is left to [`Bicategory::validate`].
    pub fn from_data(data: &BicategoryData) -> Result<Self> {
        let base = Category::from_file(&data.base)?;
        let mut entries: Vec<&SimpleEntry> = data.simples.iter().collect();
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let mut simple_index = HashMap::new();
        for (i, s) in entries.iter().enumerate() {
            if simple_index.insert(s.id.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate simple {}", s.id)));
            }
        }
        let lookup = |name: &str| {
            simple_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Malformed(format!("unknown simple {name}")))
        };
        let mut simples = Vec::with_capacity(entries.len());
        let mut over = vec![Vec::new(); base.arrows().len()];
        for (i, s) in entries.iter().enumerate() {
            let arrow = base
                .arrow(&s.over)
                .ok_or_else(|| Error::Malformed(format!("simple {} lies over unknown arrow {}", s.id, s.over)))?;
            let dual = s.dual.as_deref().map(lookup).transpose()?;
            over[arrow].push(i);
            simples.push(Simple { id: s.id.clone(), over: arrow, dim: Complex64::new(s.dim_re, s.dim_im), dual });
        }
        let mut identity_simples = vec![usize::MAX; base.objects().len()];
        for (o, s) in &data.identity_simples {
            let oi = base
                .object(o)
                .ok_or_else(|| Error::Malformed(format!("identity simple for unknown object {o}")))?;
            identity_simples[oi] = lookup(s)?;
        }
        if let Some(o) = identity_simples.iter().position(|&s| s == usize::MAX) {
            return Err(Error::Malformed(format!("object {} has no identity simple", base.objects()[o])));
        }
        let mut fusion: BTreeMap<(usize, usize), Vec<(usize, u32)>> = BTreeMap::new();
        let mut mult = HashMap::new();
        for f in &data.fusion {
            let (a, b, c) = (lookup(&f.a)?, lookup(&f.b)?, lookup(&f.c)?);
            if f.mult == 0 {
                continue;
            }
            if mult.insert((a, b, c), f.mult).is_some() {
                return Err(Error::Malformed(format!("fusion entry {} {} {} listed twice", f.a, f.b, f.c)));
            }
            fusion.entry((a, b)).or_default().push((c, f.mult));
        }
        for v in fusion.values_mut() {
            v.sort_unstable();
        }
        let mut tables = [HashMap::new(), HashMap::new()];
        for (table, entries) in tables.iter_mut().zip([&data.tet_plus, &data.tet_minus]) {
            for e in entries {
                let key = tet_key(e, &lookup)?;
                if table.insert(key, Complex64::new(e.re, e.im)).is_some() {
                    return Err(Error::Malformed(format!("tetrahedron entry {key:?} listed twice")));
                }
            }
        }
        let [tet_plus, tet_minus] = tables;
        let c = (0..base.objects().len())
            .map(|o| over[base.identity(o)].iter().map(|&s| simples[s].dim * simples[s].dim).sum())
            .collect();
        Ok(Self { base, simples, simple_index, over, identity_simples, fusion, mult, tet_plus, tet_minus, c })
    }

    pub fn to_data(&self) -> BicategoryData {
        let name = |s: usize| self.simples[s].id.clone();
        let simples = self
            .simples
            .iter()
            .map(|s| SimpleEntry {
                id: s.id.clone(),
                over: self.base.arrows()[s.over].id.clone(),
                dim_re: s.dim.re,
                dim_im: s.dim.im,
                dual: s.dual.map(name),
            })
            .collect();
        let identity_simples = self
            .identity_simples
            .iter()
            .enumerate()
            .map(|(o, &s)| (self.base.objects()[o].clone(), name(s)))
            .collect();
        let mut fusion: Vec<FusionEntry> = self
            .mult
            .iter()
            .map(|(&(a, b, c), &mult)| FusionEntry { a: name(a), b: name(b), c: name(c), mult })
            .collect();
        fusion.sort_by(|x, y| (&x.a, &x.b, &x.c).cmp(&(&y.a, &y.b, &y.c)));
        let table = |t: &HashMap<TetKey, Complex64>| {
            let mut keys: Vec<&TetKey> = t.keys().collect();
            keys.sort_by_key(|k| (k.edges.map(name), k.triangles));
            keys.into_iter()
                .map(|k| {
                    let [i, j, kk, l, m, n] = k.edges.map(name);
                    TetEntry {
                        i,
                        j,
                        k: kk,
                        l,
                        m,
                        n,
                        t012: k.triangles[0],
                        t123: k.triangles[1],
                        t013: k.triangles[2],
                        t023: k.triangles[3],
                        re: t[k].re,
                        im: t[k].im,
                    }
                })
                .collect()
        };
        BicategoryData {
            base: self.base.to_file(),
            simples,
            identity_simples,
            fusion,
            tet_plus: table(&self.tet_plus),
            tet_minus: table(&self.tet_minus),
        }
    }

    pub fn base(&self) -> &Category {
        &self.base
    }

    pub fn simples(&self) -> &[Simple] {
        &self.simples
    }

    pub fn simple(&self, id: &str) -> Option<usize> {
        self.simple_index.get(id).copied()
    }

    pub fn simples_over(&self, arrow: usize) -> &[usize] {
        &self.over[arrow]
    }

    pub fn identity_simple(&self, object: usize) -> usize {
        self.identity_simples[object]
    }

    /// Fusion multiplicity `N(a, b, c)`.
    pub fn mult(&self, a: usize, b: usize, c: usize) -> u32 {
        self.mult.get(&(a, b, c)).copied().unwrap_or(0)
    }

    /// Non-zero summands of `a b`.
    pub fn products(&self, a: usize, b: usize) -> &[(usize, u32)] {
        self.fusion.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `c(n)`: sum of squared dimensions of simples over the identity of `n`.
    pub fn vertex_constant(&self, object: usize) -> Complex64 {
        self.c[object]
    }

    pub fn global_constant(&self, object: &str) -> Result<Complex64> {
        let o = self
            .base
            .object(object)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown object {object}")))?;
        Ok(self.c[o])
    }

    /// All four triangle hom-spaces of the key are non-zero and the indices are in range.
    pub fn admissible(&self, key: &TetKey) -> bool {
        let [i, j, k, l, m, n] = key.edges;
        let t = key.triangles;
        t[0] < self.mult(i, j, m) && t[1] < self.mult(j, k, n) && t[2] < self.mult(i, n, l) && t[3] < self.mult(m, k, l)
    }

    /// Table lookup; `None` for inadmissible keys, zero for admissible keys not listed.
    pub fn amplitude(&self, key: &TetKey, sign: Orientation) -> Option<Complex64> {
        if !self.admissible(key) {
            return None;
        }
        let table = match sign {
            Orientation::Plus => &self.tet_plus,
            Orientation::Minus => &self.tet_minus,
        };
        Some(table.get(key).copied().unwrap_or_default())
    }

    pub fn tet_amplitude(&self, coloring: &TetColoring, sign: Orientation) -> Result<Complex64> {
        let mut edges = [0; 6];
        for (slot, id) in edges.iter_mut().zip(&coloring.edges) {
            *slot = self
                .simple(id)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown simple {id}")))?;
        }
        let key = TetKey { edges, triangles: coloring.triangles };
        self.amplitude(&key, sign)
            .ok_or_else(|| Error::InadmissibleColoring(format!("{:?} {:?}", coloring.edges, coloring.triangles)))
    }

    fn describe(&self, key: &TetKey) -> String {
        let names: Vec<&str> = key.edges.iter().map(|&s| self.simples[s].id.as_str()).collect();
        format!("{names:?} {:?}", key.triangles)
    }

    /// Local consistency checks. Never fails; every finding is a report entry.
    pub fn validate(&self, tolerance: f64) -> Report {
        let mut r = Report::new();
        for name in [
            "simple-dims-nonzero",
            "identity-simples",
            "vertex-constants",
            "fusion-over-composite",
            "unit-law",
            "completeness",
            "dual-involution",
            "dual-endpoints",
            "dual-dims",
            "duality-pairing",
            "tet-admissibility",
        ] {
            r.declare(name);
        }
        let base = &self.base;
        let id = |s: usize| self.simples[s].id.as_str();

        for s in &self.simples {
            if s.dim.norm() <= tolerance {
                r.fail("simple-dims-nonzero", s.id.clone());
            }
        }
        for (o, &s) in self.identity_simples.iter().enumerate() {
            let simple = &self.simples[s];
            if simple.over != base.identity(o) {
                r.fail("identity-simples", format!("{} is not over the identity of {}", simple.id, base.objects()[o]));
            }
            if (simple.dim - 1.0).norm() > tolerance {
                r.fail("identity-simples", format!("dim {} = {}", simple.id, simple.dim));
            }
            if simple.dual != Some(s) {
                r.fail("identity-simples", format!("{} is not self-dual", simple.id));
            }
        }
        for (o, c) in self.c.iter().enumerate() {
            if c.norm() <= tolerance {
                r.fail("vertex-constants", format!("c({}) = {c}", base.objects()[o]));
            }
        }
        let mut entries: Vec<_> = self.mult.keys().copied().collect();
        entries.sort_unstable();
        for (a, b, c) in entries {
            let (sa, sb, sc) = (&self.simples[a], &self.simples[b], &self.simples[c]);
            if base.compose(sa.over, sb.over) != Some(sc.over) {
                r.fail("fusion-over-composite", format!("N({}, {}, {})", sa.id, sb.id, sc.id));
            }
        }
        for (a, s) in self.simples.iter().enumerate() {
            let left = self.identity_simples[base.src(s.over)];
            let right = self.identity_simples[base.tgt(s.over)];
            if self.products(left, a) != [(a, 1)] {
                r.fail("unit-law", format!("{} {}", id(left), s.id));
            }
            if self.products(a, right) != [(a, 1)] {
                r.fail("unit-law", format!("{} {}", s.id, id(right)));
            }
        }
        for (a, sa) in self.simples.iter().enumerate() {
            for (b, sb) in self.simples.iter().enumerate() {
                if base.compose(sa.over, sb.over).is_none() {
                    continue;
                }
                let total: Complex64 =
                    self.products(a, b).iter().map(|&(c, m)| self.simples[c].dim * m as f64).sum();
                if (total - sa.dim * sb.dim).norm() > tolerance {
                    r.fail("completeness", format!("({}, {})", sa.id, sb.id));
                }
            }
        }
        for (a, s) in self.simples.iter().enumerate() {
            let Some(d) = s.dual else { continue };
            let sd = &self.simples[d];
            if sd.dual != Some(a) {
                r.fail("dual-involution", s.id.clone());
            }
            if base.src(sd.over) != base.tgt(s.over) || base.tgt(sd.over) != base.src(s.over) {
                r.fail("dual-endpoints", format!("{} / {}", s.id, sd.id));
            }
            if (sd.dim - s.dim).norm() > tolerance {
                r.fail("dual-dims", format!("{} / {}", s.id, sd.id));
            }
            let unit = self.identity_simples[base.src(s.over)];
            if self.mult(a, d, unit) != 1 {
                r.fail("duality-pairing", format!("N({}, {}, {}) != 1", s.id, sd.id, id(unit)));
            }
        }
        for table in [&self.tet_plus, &self.tet_minus] {
            let mut keys: Vec<&TetKey> = table.keys().collect();
            keys.sort_unstable();
            for key in keys {
                if table[key].norm() > 0.0 && !self.admissible(key) {
                    r.fail("tet-admissibility", self.describe(key));
                }
            }
        }
        r
    }
}

/// Categorical data over a gaunt base, ready to color triangulations.
#[derive(Clone, Debug, PartialEq)]
pub struct Biparcel(Bicategory);

impl Biparcel {
    pub fn new(bicategory: Bicategory) -> Result<Self> {
        let laws = bicategory.base().check_laws();
        if !laws.passed() {
            let c = laws.failed().next().unwrap();
            return Err(Error::Malformed(format!("base violates {}: {:?}", c.name, c.witnesses)));
        }
        if let Err((f, g)) = bicategory.base().check_gaunt() {
            return Err(Error::NotGaunt(format!("{f} and {g} are inverse")));
        }
        Ok(Self(bicategory))
    }

    pub fn from_data(data: &BicategoryData) -> Result<Self> {
        Self::new(Bicategory::from_data(data)?)
    }

    pub fn into_inner(self) -> Bicategory {
        self.0
    }
}

impl Deref for Biparcel {
    type Target = Bicategory;

    fn deref(&self) -> &Bicategory {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_passes_everything() {
        let b = catalog::trivial();
        assert!(b.validate(DEFAULT_TOLERANCE).passed());
        assert_eq!(b.global_constant("1").unwrap(), Complex64::new(1.0, 0.0));
        assert!(b.global_constant("nope").is_err());
    }

    #[test]
    fn vec_z2_constant_and_completeness() {
        let b = catalog::vec_cyclic(2, 0);
        let r = b.validate(DEFAULT_TOLERANCE);
        assert!(r.passed(), "{r:?}");
        assert!((b.global_constant("1").unwrap() - 2.0).norm() < 1e-12);
    }

    #[test]
    fn broken_dim_fails_completeness_at_gg() {
        let mut data = catalog::vec_cyclic(2, 0).to_data();
        data.simples.iter_mut().find(|s| s.id == "1").unwrap().dim_re = 2.0;
        let b = Biparcel::from_data(&data).unwrap();
        let r = b.validate(DEFAULT_TOLERANCE);
        let c = r.check("completeness").unwrap();
        assert!(!c.passed);
        assert!(c.witnesses.contains(&"(1, 1)".to_string()), "{c:?}");
    }

    #[test]
    fn fibonacci_constant() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        // phi is the positive root of x^2 = x + 1
        assert!((phi * phi - phi - 1.0).abs() < 1e-14);
        let b = catalog::fibonacci();
        let c = b.global_constant("1").unwrap();
        assert!((c.re - (1.0 + phi * phi)).abs() < 1e-12);
        assert!((c.re - 3.618_033_988_7).abs() < 1e-9);
        assert!(b.validate(DEFAULT_TOLERANCE).passed());
    }

    #[test]
    fn z2_cocycle_amplitudes() {
        let b = catalog::vec_cyclic(2, 1);
        let g = |s: &str| s.to_string();
        // generator on the path edges 01, 12, 23; the remaining edges are forced
        let key = TetColoring {
            edges: [g("1"), g("1"), g("1"), g("1"), g("0"), g("0")],
            triangles: [0; 4],
        };
        assert_eq!(b.tet_amplitude(&key, Orientation::Plus).unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(b.tet_amplitude(&key, Orientation::Minus).unwrap(), Complex64::new(-1.0, 0.0));
        let all_g = TetColoring { edges: std::array::from_fn(|_| g("1")), triangles: [0; 4] };
        assert!(matches!(b.tet_amplitude(&all_g, Orientation::Plus), Err(Error::InadmissibleColoring(_))));
        let trivial = catalog::vec_cyclic(2, 0);
        assert_eq!(trivial.tet_amplitude(&key, Orientation::Plus).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn amplitude_lookup_is_pure() {
        let b = catalog::fibonacci();
        let t = b.simple("tau").unwrap();
        let key = TetKey { edges: [t; 6], triangles: [0; 4] };
        let first = b.amplitude(&key, Orientation::Plus).unwrap();
        for _ in 0..10 {
            assert_eq!(b.amplitude(&key, Orientation::Plus).unwrap().re.to_bits(), first.re.to_bits());
        }
    }

    #[test]
    fn dangling_references_are_malformed() {
        let mut data = catalog::vec_cyclic(2, 0).to_data();
        data.fusion.push(FusionEntry { a: "0".into(), b: "7".into(), c: "0".into(), mult: 1 });
        assert!(matches!(Bicategory::from_data(&data), Err(Error::Malformed(_))));
    }

    #[test]
    fn data_round_trip() {
        let b = catalog::fibonacci();
        let back = Biparcel::from_data(&b.to_data()).unwrap();
        assert_eq!(back, b);
    }
}
