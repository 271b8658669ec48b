//! Bistellar moves and the stratified moves that subdivide a surface
//! triangle (2-6) or a knot edge (3-6), together with their inverses.
//!
//! Bulk moves leave every lower-stratum simplex untouched. The 2-6 move
//! performs a 1-3 move inside the surface stratum, the 3-6 move a 1-2 move
//! on the knot. A new vertex is inserted into its stratum order right after
//! the earliest site vertex of that stratum.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::directed::{DirectedTriangulation, StratumOrders};
use super::stratified::{StratifiedComplex, VertexId, BULK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    OneFour,
    FourOne,
    TwoThree,
    ThreeTwo,
    TwoSix,
    SixTwo,
    ThreeSix,
    SixThree,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::OneFour,
        MoveKind::FourOne,
        MoveKind::TwoThree,
        MoveKind::ThreeTwo,
        MoveKind::TwoSix,
        MoveKind::SixTwo,
        MoveKind::ThreeSix,
        MoveKind::SixThree,
    ];

    pub const BULK: [MoveKind; 4] = [MoveKind::OneFour, MoveKind::FourOne, MoveKind::TwoThree, MoveKind::ThreeTwo];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::OneFour => "1-4",
            MoveKind::FourOne => "4-1",
            MoveKind::TwoThree => "2-3",
            MoveKind::ThreeTwo => "3-2",
            MoveKind::TwoSix => "2-6",
            MoveKind::SixTwo => "6-2",
            MoveKind::ThreeSix => "3-6",
            MoveKind::SixThree => "6-3",
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            MoveKind::OneFour => MoveKind::FourOne,
            MoveKind::FourOne => MoveKind::OneFour,
            MoveKind::TwoThree => MoveKind::ThreeTwo,
            MoveKind::ThreeTwo => MoveKind::TwoThree,
            MoveKind::TwoSix => MoveKind::SixTwo,
            MoveKind::SixTwo => MoveKind::TwoSix,
            MoveKind::ThreeSix => MoveKind::SixThree,
            MoveKind::SixThree => MoveKind::ThreeSix,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown move {s}")))
    }
}

/// Where a move acts, as sorted vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Tet([VertexId; 4]),
    Triangle([VertexId; 3]),
    Edge([VertexId; 2]),
    Vertex(VertexId),
}

impl Site {
    pub fn vertices(&self) -> Vec<VertexId> {
        match self {
            Site::Tet(v) => v.to_vec(),
            Site::Triangle(v) => v.to_vec(),
            Site::Edge(v) => v.to_vec(),
            Site::Vertex(v) => vec![*v],
        }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vertices())
    }
}

#[derive(Clone, Debug)]
pub struct MoveOutcome {
    pub triangulation: DirectedTriangulation,
    /// Site of the inverse move that undoes this one.
    pub created: Site,
}

fn sorted<const N: usize>(mut v: [VertexId; N]) -> [VertexId; N] {
    v.sort_unstable();
    v
}

fn inapplicable(msg: impl Into<String>) -> Error {
    Error::InapplicableSite(msg.into())
}

struct Plan {
    removed: Vec<usize>,
    added: Vec<[VertexId; 4]>,
    new_vertex: Option<(VertexId, u8)>,
    removed_vertex: Option<VertexId>,
    created: Site,
}

/// Star of a simplex together with its link vertices.
fn star(c: &StratifiedComplex, simplex: &[VertexId]) -> (Vec<usize>, Vec<VertexId>) {
    let tets = c.tets_containing(simplex);
    let link: BTreeSet<VertexId> = tets
        .iter()
        .flat_map(|&i| c.tets()[i].v)
        .filter(|v| !simplex.contains(v))
        .collect();
    (tets, link.into_iter().collect())
}

/// Checks that the star of `center` is exactly the join of `center` with the given tets' other vertices.
fn star_matches(c: &StratifiedComplex, tets: &[usize], center: &[VertexId], expected: &[Vec<VertexId>]) -> bool {
    let have: BTreeSet<Vec<VertexId>> = tets
        .iter()
        .map(|&i| {
            let mut v: Vec<VertexId> = c.tets()[i].v.iter().copied().filter(|v| !center.contains(v)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let want: BTreeSet<Vec<VertexId>> = expected
        .iter()
        .map(|v| {
            let mut v = v.clone();
            v.sort_unstable();
            v
        })
        .collect();
    tets.len() == expected.len() && have == want
}

fn triangle_exists(c: &StratifiedComplex, t: &[VertexId]) -> bool {
    !c.tets_containing(t).is_empty()
}

fn plan(t: &DirectedTriangulation, kind: MoveKind, site: &Site) -> Result<Plan> {
    let c = t.complex();
    let fresh = c.max_vertex_id().map_or(0, |m| m + 1);
    let stratum = |v: VertexId| {
        c.stratum(v).ok_or_else(|| inapplicable(format!("unknown vertex {v}")))
    };
    for v in site.vertices() {
        stratum(v)?;
    }
    match (kind, site) {
        (MoveKind::OneFour, Site::Tet(vs)) => {
            let tets = c.tets_containing(vs);
            let &[i] = tets.as_slice() else {
                return Err(inapplicable(format!("{vs:?} is not a tet")));
            };
            let x = fresh;
            let added = (0..4)
                .map(|k| {
                    let mut v = c.tets()[i].v;
                    v[k] = x;
                    v
                })
                .collect();
            Ok(Plan { removed: vec![i], added, new_vertex: Some((x, BULK)), removed_vertex: None, created: Site::Vertex(x) })
        }
        (MoveKind::FourOne, Site::Vertex(x)) => {
            if stratum(*x)? != BULK {
                return Err(inapplicable(format!("vertex {x} is not in the bulk")));
            }
            let (tets, link) = star(c, &[*x]);
            if tets.len() != 4 || link.len() != 4 {
                return Err(inapplicable(format!("vertex {x} has {} tets and {} neighbours", tets.len(), link.len())));
            }
            if !c.tets_containing(&link).is_empty() {
                return Err(inapplicable(format!("tet {link:?} already exists")));
            }
            let v = [link[0], link[1], link[2], link[3]];
            Ok(Plan { removed: tets, added: vec![v], new_vertex: None, removed_vertex: Some(*x), created: Site::Tet(v) })
        }
        (MoveKind::TwoThree, Site::Triangle(abc)) => {
            let s = c.stratum_of(abc);
            if s != BULK {
                return Err(inapplicable(format!("triangle {abc:?} lies in stratum {s}")));
            }
            let (tets, apexes) = star(c, abc);
            if tets.len() != 2 || apexes.len() != 2 {
                return Err(inapplicable(format!("triangle {abc:?} is not shared by two tets")));
            }
            let (d, e) = (apexes[0], apexes[1]);
            if t.edge(d, e).is_some() {
                return Err(inapplicable(format!("edge {d}-{e} already exists")));
            }
            if stratum(d)?.max(stratum(e)?) != BULK {
                return Err(Error::WouldBreakFlagLikeness(format!("new edge {d}-{e} would join two lower-stratum vertices")));
            }
            let [a, b, cc] = *abc;
            let added = vec![[a, b, d, e], [b, cc, d, e], [a, cc, d, e]];
            Ok(Plan { removed: tets, added, new_vertex: None, removed_vertex: None, created: Site::Edge([d, e]) })
        }
        (MoveKind::ThreeTwo, Site::Edge(de)) => {
            let s = c.stratum_of(de);
            if s != BULK {
                return Err(inapplicable(format!("edge {de:?} lies in stratum {s}")));
            }
            let (tets, link) = star(c, de);
            if tets.len() != 3 || link.len() != 3 {
                return Err(inapplicable(format!("edge {de:?} has degree {}", tets.len())));
            }
            if triangle_exists(c, &link) {
                return Err(inapplicable(format!("triangle {link:?} already exists")));
            }
            let abc = [link[0], link[1], link[2]];
            if c.stratum_of(&abc) != BULK {
                return Err(Error::WouldBreakFlagLikeness(format!("new triangle {abc:?} would lie in a lower stratum")));
            }
            let added = vec![[abc[0], abc[1], abc[2], de[0]], [abc[0], abc[1], abc[2], de[1]]];
            Ok(Plan { removed: tets, added, new_vertex: None, removed_vertex: None, created: Site::Triangle(abc) })
        }
        (MoveKind::TwoSix, Site::Triangle(abc)) => {
            let s = c.stratum_of(abc);
            if s != 2 {
                return Err(inapplicable(format!("triangle {abc:?} lies in stratum {s}, not the surface")));
            }
            let (tets, apexes) = star(c, abc);
            if tets.len() != 2 || apexes.len() != 2 {
                return Err(inapplicable(format!("triangle {abc:?} is not shared by two tets")));
            }
            let x = fresh;
            let [a, b, cc] = *abc;
            let mut added = Vec::new();
            for &p in &apexes {
                added.extend([[a, b, x, p], [b, cc, x, p], [a, cc, x, p]]);
            }
            Ok(Plan { removed: tets, added, new_vertex: Some((x, 2)), removed_vertex: None, created: Site::Vertex(x) })
        }
        (MoveKind::SixTwo, Site::Vertex(x)) => {
            if stratum(*x)? != 2 {
                return Err(inapplicable(format!("vertex {x} is not in the surface")));
            }
            let (tets, link) = star(c, &[*x]);
            let (surface, other): (Vec<VertexId>, Vec<VertexId>) =
                link.iter().partition(|&&u| c.stratum_of(&[*x, u]) <= 2);
            if tets.len() != 6 || surface.len() != 3 || other.len() != 2 {
                return Err(inapplicable(format!("vertex {x} does not have the star of a subdivided triangle")));
            }
            let [a, b, cc] = [surface[0], surface[1], surface[2]];
            let expected: Vec<Vec<VertexId>> = other
                .iter()
                .flat_map(|&p| [vec![a, b, p], vec![b, cc, p], vec![a, cc, p]])
                .collect();
            if !star_matches(c, &tets, &[*x], &expected) {
                return Err(inapplicable(format!("vertex {x} does not have the star of a subdivided triangle")));
            }
            if triangle_exists(c, &[a, b, cc]) {
                return Err(inapplicable(format!("triangle {:?} already exists", [a, b, cc])));
            }
            if c.stratum_of(&[a, b, cc]) < 2 {
                return Err(Error::WouldBreakFlagLikeness(format!(
                    "triangle {:?} would lie in the knot",
                    [a, b, cc]
                )));
            }
            let added = other.iter().map(|&p| [a, b, cc, p]).collect();
            Ok(Plan {
                removed: tets,
                added,
                new_vertex: None,
                removed_vertex: Some(*x),
                created: Site::Triangle([a, b, cc]),
            })
        }
        (MoveKind::ThreeSix, Site::Edge(ab)) => {
            let s = c.stratum_of(ab);
            if s != 1 {
                return Err(inapplicable(format!("edge {ab:?} lies in stratum {s}, not the knot")));
            }
            let (tets, link) = star(c, ab);
            if tets.len() != 3 || link.len() != 3 {
                return Err(inapplicable(format!("knot edge {ab:?} does not have a three-edge link")));
            }
            check_knot_link(c, &link)?;
            let x = fresh;
            let mut added = Vec::new();
            for &i in &tets {
                let v = c.tets()[i].v;
                added.push(v.map(|u| if u == ab[1] { x } else { u }));
                added.push(v.map(|u| if u == ab[0] { x } else { u }));
            }
            Ok(Plan { removed: tets, added, new_vertex: Some((x, 1)), removed_vertex: None, created: Site::Vertex(x) })
        }
        (MoveKind::SixThree, Site::Vertex(x)) => {
            if stratum(*x)? != 1 {
                return Err(inapplicable(format!("vertex {x} is not on the knot")));
            }
            let (tets, link) = star(c, &[*x]);
            let (knot, ring): (Vec<VertexId>, Vec<VertexId>) = link.iter().partition(|&&u| c.stratum_of(&[*x, u]) <= 1);
            if tets.len() != 6 || knot.len() != 2 || ring.len() != 3 {
                return Err(inapplicable(format!("vertex {x} does not have the star of a subdivided knot edge")));
            }
            let pairs = [[ring[0], ring[1]], [ring[1], ring[2]], [ring[0], ring[2]]];
            let expected: Vec<Vec<VertexId>> =
                knot.iter().flat_map(|&k| pairs.iter().map(move |p| vec![k, p[0], p[1]])).collect();
            if !star_matches(c, &tets, &[*x], &expected) {
                return Err(inapplicable(format!("vertex {x} does not have the star of a subdivided knot edge")));
            }
            check_knot_link(c, &ring)?;
            let (a, b) = (knot[0], knot[1]);
            if t.edge(a, b).is_some() {
                return Err(inapplicable(format!("edge {a}-{b} already exists")));
            }
            let added = pairs.iter().map(|p| [a, b, p[0], p[1]]).collect();
            Ok(Plan { removed: tets, added, new_vertex: None, removed_vertex: Some(*x), created: Site::Edge([a, b]) })
        }
        _ => Err(inapplicable(format!("{kind} does not act on {site:?}"))),
    }
}

/// A knot edge may be subdivided when its link avoids the knot and meets
/// the surface in at most one vertex.
fn check_knot_link(c: &StratifiedComplex, link: &[VertexId]) -> Result<()> {
    let strata: Vec<u8> = link.iter().map(|&v| c.stratum(v).unwrap()).collect();
    if strata.iter().any(|&s| s < 2) {
        return Err(inapplicable(format!("link {link:?} touches the knot")));
    }
    if strata.iter().filter(|&&s| s == 2).count() > 1 {
        return Err(inapplicable(format!("link {link:?} meets the surface more than once")));
    }
    Ok(())
}

fn updated_orders(t: &DirectedTriangulation, p: &Plan, site: &Site) -> StratumOrders {
    let mut order = t.orders().clone();
    if let Some(v) = p.removed_vertex {
        for vs in order.values_mut() {
            vs.retain(|&u| u != v);
        }
        order.retain(|_, vs| !vs.is_empty());
    }
    if let Some((x, s)) = p.new_vertex {
        let list = order.entry(s).or_default();
        let anchor = site
            .vertices()
            .into_iter()
            .filter(|&v| t.complex().stratum(v) == Some(s))
            .filter_map(|v| list.iter().position(|&u| u == v))
            .min();
        match anchor {
            Some(i) => list.insert(i + 1, x),
            None => list.insert(0, x),
        }
    }
    order
}

/// Applies one move at `site`, returning the new directed triangulation and
/// the site at which the inverse move undoes it.
pub fn pachner_move(t: &DirectedTriangulation, kind: MoveKind, site: &Site) -> Result<MoveOutcome> {
    let p = plan(t, kind, site)?;
    let complex = t.complex().retriangulate(&p.removed, &p.added, p.new_vertex, p.removed_vertex)?;
    let flag = complex.validate_flaglike();
    if let Some(c) = flag.failed().next() {
        return Err(Error::WouldBreakFlagLikeness(format!("{}: {:?}", c.name, c.witnesses)));
    }
    let order = updated_orders(t, &p, site);
    let triangulation = DirectedTriangulation::direct(&complex, Some(&order), t.mode())
        .map_err(|e| Error::WouldBreakDirectability(e.to_string()))?;
    Ok(MoveOutcome { triangulation, created: p.created })
}

/// Every site of the right shape for `kind`, whether or not the move applies.
pub fn candidate_sites(t: &DirectedTriangulation, kind: MoveKind) -> Vec<Site> {
    let c = t.complex();
    match kind {
        MoveKind::OneFour => c.tets().iter().map(|t| Site::Tet(sorted(t.v))).collect(),
        MoveKind::TwoThree | MoveKind::TwoSix => c.triangles().into_iter().map(Site::Triangle).collect(),
        MoveKind::ThreeTwo | MoveKind::ThreeSix => c.edges().into_iter().map(Site::Edge).collect(),
        MoveKind::FourOne | MoveKind::SixTwo | MoveKind::SixThree => c.vertices().map(|(v, _)| Site::Vertex(v)).collect(),
    }
}

/// Sites where `kind` applies, in a deterministic order.
pub fn applicable_sites(t: &DirectedTriangulation, kind: MoveKind) -> Vec<Site> {
    let mut sites: Vec<Site> =
        candidate_sites(t, kind).into_iter().filter(|s| pachner_move(t, kind, s).is_ok()).collect();
    sites.sort();
    sites
}
