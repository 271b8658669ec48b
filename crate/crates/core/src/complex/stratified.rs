use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;

pub type VertexId = u32;

/// Highest stratum dimension: the bulk.
pub const BULK: u8 = 3;

/// A tetrahedron as an ordered vertex tuple. `sign = +1` means the tuple
/// order is positively oriented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tet {
    pub v: [VertexId; 4],
    pub sign: i8,
}

/// Parity of the permutation sorting `items`: `+1` even, `-1` odd.
pub fn sort_parity<T: Ord>(items: &[T]) -> i8 {
    let mut inversions = 0;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] > items[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Oriented boundary triangles of a tet, each as a sorted triple with sign.
pub fn oriented_faces(tet: &Tet) -> [([VertexId; 3], i8); 4] {
    std::array::from_fn(|i| {
        let mut face = [0; 3];
        let mut k = 0;
        for (j, &v) in tet.v.iter().enumerate() {
            if j != i {
                face[k] = v;
                k += 1;
            }
        }
        let sign = tet.sign * if i % 2 == 0 { 1 } else { -1 } * sort_parity(&face);
        face.sort_unstable();
        (face, sign)
    })
}

/// Closed simplicial 3-complex whose vertices carry stratum dimensions.
///
/// The stratum of an edge or triangle is the maximum of its vertex strata
/// unless an explicit override says otherwise; tetrahedra always lie in the
/// bulk. Overrides exist so that non-flag-like input can be represented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedComplex {
    strata: BTreeMap<VertexId, u8>,
    tets: Vec<Tet>,
    overrides: BTreeMap<Vec<VertexId>, u8>,
}

impl StratifiedComplex {
    pub fn new(
        vertices: impl IntoIterator<Item = (VertexId, u8)>,
        tets: Vec<Tet>,
        overrides: BTreeMap<Vec<VertexId>, u8>,
    ) -> Result<Self> {
        let mut strata = BTreeMap::new();
        for (v, s) in vertices {
            if s > BULK {
                return Err(Error::Malformed(format!("vertex {v} has stratum {s} > 3")));
            }
            if strata.insert(v, s).is_some() {
                return Err(Error::Malformed(format!("duplicate vertex {v}")));
            }
        }
        let mut seen = BTreeSet::new();
        for t in &tets {
            if t.sign != 1 && t.sign != -1 {
                return Err(Error::Malformed(format!("tet {:?} has sign {}", t.v, t.sign)));
            }
            if let Some(v) = t.v.iter().find(|v| !strata.contains_key(v)) {
                return Err(Error::Malformed(format!("tet {:?} uses unknown vertex {v}", t.v)));
            }
            let mut key = t.v;
            key.sort_unstable();
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!("tet {:?} repeats a vertex", t.v)));
            }
            if !seen.insert(key) {
                return Err(Error::Malformed(format!("tet {key:?} listed twice")));
            }
        }
        let complex = Self { strata, tets, overrides: BTreeMap::new() };
        let edges: BTreeSet<_> = complex.edges().into_iter().map(|e| e.to_vec()).collect();
        let triangles: BTreeSet<_> = complex.triangles().into_iter().map(|t| t.to_vec()).collect();
        let mut normalized = BTreeMap::new();
        for (mut simplex, s) in overrides {
            simplex.sort_unstable();
            let known = match simplex.len() {
                2 => edges.contains(&simplex),
                3 => triangles.contains(&simplex),
                _ => false,
            };
            if !known {
                return Err(Error::Malformed(format!("stratum override for {simplex:?}, which is not an edge or triangle")));
            }
            if s > BULK {
                return Err(Error::Malformed(format!("override stratum {s} > 3")));
            }
            normalized.insert(simplex, s);
        }
        Ok(Self { overrides: normalized, ..complex })
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, u8)> + '_ {
        self.strata.iter().map(|(&v, &s)| (v, s))
    }

    pub fn vertex_count(&self) -> usize {
        self.strata.len()
    }

    pub fn stratum(&self, v: VertexId) -> Option<u8> {
        self.strata.get(&v).copied()
    }

    pub fn tets(&self) -> &[Tet] {
        &self.tets
    }

    pub fn overrides(&self) -> &BTreeMap<Vec<VertexId>, u8> {
        &self.overrides
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.strata.keys().next_back().copied()
    }

    pub fn edges(&self) -> Vec<[VertexId; 2]> {
        let mut set = BTreeSet::new();
        for t in &self.tets {
            for i in 0..4 {
                for j in i + 1..4 {
                    let (a, b) = (t.v[i], t.v[j]);
                    set.insert([a.min(b), a.max(b)]);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn triangles(&self) -> Vec<[VertexId; 3]> {
        let mut set = BTreeSet::new();
        for t in &self.tets {
            for (face, _) in oriented_faces(t) {
                set.insert(face);
            }
        }
        set.into_iter().collect()
    }

    /// Vertex strata that actually occur, ascending.
    pub fn levels(&self) -> Vec<u8> {
        self.strata.values().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Lowest stratum containing the simplex (vertex list in any order).
    pub fn stratum_of(&self, simplex: &[VertexId]) -> u8 {
        match simplex.len() {
            1 => self.strata[&simplex[0]],
            4 => BULK,
            _ => {
                let mut key = simplex.to_vec();
                key.sort_unstable();
                self.overrides
                    .get(&key)
                    .copied()
                    .unwrap_or_else(|| self.induced_stratum(simplex))
            }
        }
    }

    fn induced_stratum(&self, simplex: &[VertexId]) -> u8 {
        simplex.iter().map(|v| self.strata[v]).max().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.strata.len() as i64 - self.edges().len() as i64 + self.triangles().len() as i64 - self.tets.len() as i64
    }

    pub fn tets_containing(&self, simplex: &[VertexId]) -> Vec<usize> {
        (0..self.tets.len())
            .filter(|&i| simplex.iter().all(|v| self.tets[i].v.contains(v)))
            .collect()
    }

    /// Vertices sharing an edge with `v`.
    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for t in &self.tets {
            if t.v.contains(&v) {
                out.extend(t.v.iter().copied().filter(|&u| u != v));
            }
        }
        out
    }

    /// Every triangle in exactly two tets, with opposite induced orientations.
    pub fn check_closed_oriented(&self) -> Report {
        let mut r = Report::new();
        r.declare("closed");
        r.declare("orientation");
        let mut faces: BTreeMap<[VertexId; 3], Vec<i8>> = BTreeMap::new();
        for t in &self.tets {
            for (face, sign) in oriented_faces(t) {
                faces.entry(face).or_default().push(sign);
            }
        }
        for (face, signs) in faces {
            if signs.len() != 2 {
                r.fail("closed", format!("{face:?} lies in {} tets", signs.len()));
            } else if signs[0] == signs[1] {
                r.fail("orientation", format!("{face:?}"));
            }
        }
        r
    }

    /// Checks that every stratum closure is a subcomplex: no face lies in a
    /// higher stratum than a simplex containing it.
    pub fn check_strata_closed(&self) -> Result<()> {
        for (simplex, &s) in &self.overrides {
            for face in proper_faces(simplex) {
                if self.stratum_of(&face) > s {
                    return Err(Error::InvalidStratification(format!(
                        "face {face:?} of {simplex:?} lies outside stratum {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Flag-likeness: every simplex meets each closed stratum in a single face.
    /// Also reports broken subcomplex closure and simplices too large for
    /// their stratum.
    pub fn validate_flaglike(&self) -> Report {
        let mut r = Report::new();
        r.declare("subcomplex");
        r.declare("stratum-dimension");
        r.declare("flag");
        let mut simplices: Vec<Vec<VertexId>> = Vec::new();
        simplices.extend(self.edges().iter().map(|e| e.to_vec()));
        simplices.extend(self.triangles().iter().map(|t| t.to_vec()));
        for t in &self.tets {
            let mut v = t.v.to_vec();
            v.sort_unstable();
            simplices.push(v);
        }
        for simplex in &simplices {
            let s = self.stratum_of(simplex);
            if (s as usize) + 1 < simplex.len() {
                r.fail("stratum-dimension", format!("{simplex:?} in stratum {s}"));
            }
            if proper_faces(simplex).iter().any(|f| self.stratum_of(f) > s) {
                r.fail("subcomplex", format!("{simplex:?}"));
            }
            if !self.meets_strata_in_faces(simplex) {
                r.fail("flag", format!("{simplex:?}"));
            }
        }
        r
    }

    fn meets_strata_in_faces(&self, simplex: &[VertexId]) -> bool {
        let faces = all_faces(simplex);
        let strata: Vec<u8> = faces.iter().map(|f| self.stratum_of(f)).collect();
        for k in 0..BULK {
            let span: BTreeSet<VertexId> = faces
                .iter()
                .zip(&strata)
                .filter(|(_, &s)| s <= k)
                .flat_map(|(f, _)| f.iter().copied())
                .collect();
            if span.is_empty() {
                continue;
            }
            let span: Vec<VertexId> = span.into_iter().collect();
            // the intersection must be the full closure of the simplex spanned by it
            if faces.iter().zip(&strata).any(|(f, &s)| {
                let inside = f.iter().all(|v| span.contains(v));
                inside != (s <= k)
            }) {
                return false;
            }
        }
        true
    }

    /// Same vertices and tets with all strata induced from vertex labels.
    pub fn without_overrides(&self) -> Self {
        Self { strata: self.strata.clone(), tets: self.tets.clone(), overrides: BTreeMap::new() }
    }

    /// Replaces `removed` tets by `added` vertex sets, orienting each new tet
    /// so that the oriented boundary of the region is unchanged. Fails if the
    /// two regions do not share a boundary.
    pub(crate) fn retriangulate(
        &self,
        removed: &[usize],
        added: &[[VertexId; 4]],
        new_vertex: Option<(VertexId, u8)>,
        removed_vertex: Option<VertexId>,
    ) -> Result<Self> {
        let boundary = region_boundary(removed.iter().map(|&i| &self.tets[i]));
        let mut new_tets = Vec::with_capacity(added.len());
        for vs in added {
            let probe = Tet { v: *vs, sign: 1 };
            let sign = oriented_faces(&probe)
                .iter()
                .find_map(|(face, s)| boundary.get(face).map(|b| b * s))
                .ok_or_else(|| Error::InapplicableSite(format!("new tet {vs:?} touches no boundary face")))?;
            new_tets.push(Tet { v: *vs, sign });
        }
        if region_boundary(new_tets.iter()) != boundary {
            return Err(Error::InapplicableSite("replacement does not fill the same boundary".into()));
        }
        let mut strata = self.strata.clone();
        if let Some((v, s)) = new_vertex {
            strata.insert(v, s);
        }
        if let Some(v) = removed_vertex {
            strata.remove(&v);
        }
        let mut tets: Vec<Tet> = self
            .tets
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, t)| *t)
            .collect();
        tets.extend(new_tets);
        Self::new(strata, tets, BTreeMap::new())
    }

    /// Disjoint union; vertex ids of `other` are shifted past those of `self`.
    /// Returns the union and the shift applied.
    pub fn disjoint_union(&self, other: &Self) -> (Self, VertexId) {
        let shift = self.max_vertex_id().map_or(0, |m| m + 1);
        let mut strata = self.strata.clone();
        strata.extend(other.strata.iter().map(|(&v, &s)| (v + shift, s)));
        let mut tets = self.tets.clone();
        tets.extend(other.tets.iter().map(|t| Tet { v: t.v.map(|v| v + shift), sign: t.sign }));
        let mut overrides = self.overrides.clone();
        overrides.extend(
            other.overrides.iter().map(|(k, &s)| (k.iter().map(|v| v + shift).collect(), s)),
        );
        (Self { strata, tets, overrides }, shift)
    }

    pub fn to_file(&self, order: Option<&BTreeMap<u8, Vec<VertexId>>>) -> TriangulationFile {
        TriangulationFile {
            vertices: self.vertices().map(|(id, stratum)| VertexRecord { id, stratum }).collect(),
            tets: self.tets.iter().map(|t| TetRecord { v: t.v, sign: t.sign }).collect(),
            order: order.map(|o| o.iter().map(|(s, vs)| (s.to_string(), vs.clone())).collect()),
            simplex_strata: self
                .overrides
                .iter()
                .map(|(simplex, &stratum)| SimplexStratum { simplex: simplex.clone(), stratum })
                .collect(),
        }
    }

    /// Parses a file into the complex and its optional per-stratum order.
    pub fn from_file(file: &TriangulationFile) -> Result<(Self, Option<BTreeMap<u8, Vec<VertexId>>>)> {
        let complex = Self::new(
            file.vertices.iter().map(|v| (v.id, v.stratum)),
            file.tets.iter().map(|t| Tet { v: t.v, sign: t.sign }).collect(),
            file.simplex_strata.iter().map(|s| (s.simplex.clone(), s.stratum)).collect(),
        )?;
        let order = match &file.order {
            None => None,
            Some(o) => {
                let mut parsed = BTreeMap::new();
                for (k, vs) in o {
                    let s: u8 = k
                        .parse()
                        .map_err(|_| Error::Malformed(format!("order key {k} is not a stratum dimension")))?;
                    parsed.insert(s, vs.clone());
                }
                Some(parsed)
            }
        };
        Ok((complex, order))
    }
}

fn region_boundary<'a>(tets: impl Iterator<Item = &'a Tet>) -> BTreeMap<[VertexId; 3], i8> {
    let mut faces: BTreeMap<[VertexId; 3], Vec<i8>> = BTreeMap::new();
    for t in tets {
        for (face, sign) in oriented_faces(t) {
            faces.entry(face).or_default().push(sign);
        }
    }
    faces.into_iter().filter(|(_, s)| s.len() == 1).map(|(f, s)| (f, s[0])).collect()
}

/// Non-empty faces of a simplex, including the simplex itself.
pub(crate) fn all_faces(simplex: &[VertexId]) -> Vec<Vec<VertexId>> {
    let n = simplex.len();
    (1..(1u32 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).map(|i| simplex[i]).collect())
        .collect()
}

fn proper_faces(simplex: &[VertexId]) -> Vec<Vec<VertexId>> {
    all_faces(simplex).into_iter().filter(|f| f.len() < simplex.len()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: VertexId,
    pub stratum: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TetRecord {
    pub v: [VertexId; 4],
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexStratum {
    pub simplex: Vec<VertexId>,
    pub stratum: u8,
}

/// Triangulation file. `order` maps a stratum dimension to its vertices in
/// order; `simplex_strata` overrides induced strata of edges and triangles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationFile {
    pub vertices: Vec<VertexRecord>,
    pub tets: Vec<TetRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<BTreeMap<String, Vec<VertexId>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub simplex_strata: Vec<SimplexStratum>,
}
