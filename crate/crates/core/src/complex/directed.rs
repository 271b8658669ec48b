use std::collections::{BTreeMap, HashMap};

use crate::biparcel::Orientation;
use crate::error::{Error, Result};
use crate::gaunt::{poset_on, Category};

use super::stratified::{sort_parity, StratifiedComplex, VertexId};

/// How strata and edge directions determine arrows of the base.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Base is the poset of occurring stratum dimensions; edges between
    /// strata point from the lower to the higher dimension.
    #[default]
    ExitDimension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedEdge {
    pub tail: VertexId,
    pub head: VertexId,
    /// Arrow of [`DirectedTriangulation::gamma`].
    pub arrow: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedTriangle {
    /// Vertices in direction order.
    pub vertices: [VertexId; 3],
    /// Edge indices of `01, 12, 02`.
    pub edges: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedTet {
    /// Vertices in direction order.
    pub vertices: [VertexId; 4],
    /// Edge indices of `01, 12, 23, 03, 02, 13`.
    pub edges: [usize; 6],
    /// Triangle indices of `012, 123, 013, 023`.
    pub triangles: [usize; 4],
    pub sign: Orientation,
}

/// Per-stratum vertex orders, keyed by stratum dimension.
pub type StratumOrders = BTreeMap<u8, Vec<VertexId>>;

/// A flag-like complex with every edge directed and mapped to an arrow of
/// the base category.
#[derive(Clone, Debug)]
pub struct DirectedTriangulation {
    complex: StratifiedComplex,
    order: StratumOrders,
    position: HashMap<VertexId, usize>,
    mode: Mode,
    gamma: Category,
    levels: Vec<u8>,
    edges: Vec<DirectedEdge>,
    edge_index: HashMap<[VertexId; 2], usize>,
    triangles: Vec<DirectedTriangle>,
    tets: Vec<DirectedTet>,
}

/// Isomorphism invariant of a directed triangulation: vertices relabelled
/// by (stratum, order position), tets sorted with normalized signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub strata: Vec<u8>,
    pub tets: Vec<([u32; 4], i8)>,
}

/// Orders every stratum by vertex id.
pub fn default_orders(complex: &StratifiedComplex) -> StratumOrders {
    let mut order: StratumOrders = BTreeMap::new();
    for (v, s) in complex.vertices() {
        order.entry(s).or_default().push(v);
    }
    order
}

impl DirectedTriangulation {
    /// Directs a flag-like complex: edges inside a stratum follow the given
    /// order, edges between strata go from lower to higher dimension.
    pub fn direct(complex: &StratifiedComplex, orders: Option<&StratumOrders>, mode: Mode) -> Result<Self> {
        Self::build(complex, orders, mode, &[])
    }

    /// Rebuilds with one edge reversed against the direction rule. Always
    /// fails validation; exists to exercise the checks.
    pub fn with_reversed_edge(&self, a: VertexId, b: VertexId) -> Result<Self> {
        Self::build(&self.complex, Some(&self.order), self.mode, &[[a.min(b), a.max(b)]])
    }

    fn build(
        complex: &StratifiedComplex,
        orders: Option<&StratumOrders>,
        mode: Mode,
        reversed: &[[VertexId; 2]],
    ) -> Result<Self> {
        let flag = complex.validate_flaglike();
        if let Some(c) = flag.failed().next() {
            return Err(Error::NotFlagLike(format!("{}: {:?}", c.name, c.witnesses)));
        }
        let closed = complex.check_closed_oriented();
        if let Some(c) = closed.failed().next() {
            return Err(Error::InvalidStratification(format!("{}: {:?}", c.name, c.witnesses)));
        }
        let order = match orders {
            Some(o) => o.clone(),
            None => default_orders(complex),
        };
        let mut position = HashMap::new();
        let expected = default_orders(complex);
        for (s, vs) in &expected {
            let mut given = order.get(s).cloned().unwrap_or_default();
            given.sort_unstable();
            if &given != vs {
                return Err(Error::InvalidArgument(format!("order for stratum {s} is not a permutation of its vertices")));
            }
        }
        if let Some(s) = order.keys().find(|s| !expected.contains_key(s)) {
            return Err(Error::InvalidArgument(format!("order lists stratum {s}, which has no vertices")));
        }
        for vs in order.values() {
            for (i, &v) in vs.iter().enumerate() {
                position.insert(v, i);
            }
        }
        let levels = complex.levels();
        let labels: Vec<String> = levels.iter().map(|l| l.to_string()).collect();
        let gamma = poset_on(&labels)?;
        let level_of = |v: VertexId| levels.iter().position(|&l| l == complex.stratum(v).unwrap()).unwrap();
        let arrow_between = |x: usize, y: usize| gamma.arrow(&format!("{}->{}", labels[x], labels[y]));

        let stratum = |v: VertexId| complex.stratum(v).unwrap();
        let rank = |v: VertexId| (stratum(v), position[&v]);
        let mut edges = Vec::new();
        let mut edge_index = HashMap::new();
        for e in complex.edges() {
            let (mut tail, mut head) = if rank(e[0]) < rank(e[1]) { (e[0], e[1]) } else { (e[1], e[0]) };
            if reversed.contains(&e) {
                std::mem::swap(&mut tail, &mut head);
            }
            if stratum(tail) > stratum(head) {
                return Err(Error::NotDirectable(format!("edge {tail}->{head} enters a lower stratum")));
            }
            if stratum(tail) == stratum(head) && position[&tail] > position[&head] {
                return Err(Error::NotDirectable(format!("edge {tail}->{head} runs against the stratum order")));
            }
            let arrow = match mode {
                Mode::ExitDimension => arrow_between(level_of(tail), level_of(head)).ok_or_else(|| {
                    Error::NotDirectable(format!("no arrow for edge {tail}->{head}"))
                })?,
            };
            edge_index.insert(e, edges.len());
            edges.push(DirectedEdge { tail, head, arrow });
        }
        let edge_of = |a: VertexId, b: VertexId| edge_index[&[a.min(b), a.max(b)]];
        let points = |a: VertexId, b: VertexId| edges[edge_of(a, b)].tail == a;

        let mut triangle_index = HashMap::new();
        let mut triangles = Vec::new();
        for t in complex.triangles() {
            let sorted = direction_sort(&t, &points).ok_or_else(|| {
                Error::NotDirectable(format!("edge directions on triangle {t:?} form a cycle"))
            })?;
            let [u, v, w] = sorted;
            let e = [edge_of(u, v), edge_of(v, w), edge_of(u, w)];
            if gamma.compose(edges[e[0]].arrow, edges[e[1]].arrow) != Some(edges[e[2]].arrow) {
                return Err(Error::DeltaInconsistent(format!("{sorted:?}")));
            }
            triangle_index.insert(t, triangles.len());
            triangles.push(DirectedTriangle { vertices: sorted, edges: e });
        }
        let triangle_of = |a: VertexId, b: VertexId, c: VertexId| {
            let mut k = [a, b, c];
            k.sort_unstable();
            triangle_index[&k]
        };
        let mut tets = Vec::new();
        for t in complex.tets() {
            let sorted = direction_sort(&t.v, &points).ok_or_else(|| {
                Error::NotDirectable(format!("edge directions on tet {:?} form a cycle", t.v))
            })?;
            let [a, b, c, d] = sorted;
            let perm: Vec<usize> = sorted.iter().map(|v| t.v.iter().position(|w| w == v).unwrap()).collect();
            let sign = Orientation::from_sign(t.sign * sort_parity(&perm));
            tets.push(DirectedTet {
                vertices: sorted,
                edges: [edge_of(a, b), edge_of(b, c), edge_of(c, d), edge_of(a, d), edge_of(a, c), edge_of(b, d)],
                triangles: [triangle_of(a, b, c), triangle_of(b, c, d), triangle_of(a, b, d), triangle_of(a, c, d)],
                sign,
            });
        }
        Ok(Self {
            complex: complex.without_overrides(),
            order,
            position,
            mode,
            gamma,
            levels,
            edges,
            edge_index,
            triangles,
            tets,
        })
    }

    pub fn complex(&self) -> &StratifiedComplex {
        &self.complex
    }

    pub fn orders(&self) -> &StratumOrders {
        &self.order
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Base category of the directed structure: the poset of occurring
    /// stratum dimensions, with objects named by the dimension.
    pub fn gamma(&self) -> &Category {
        &self.gamma
    }

    pub fn levels(&self) -> &[u8] {
        &self.levels
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn edge(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.edge_index.get(&[a.min(b), a.max(b)]).copied()
    }

    pub fn triangles(&self) -> &[DirectedTriangle] {
        &self.triangles
    }

    pub fn tets(&self) -> &[DirectedTet] {
        &self.tets
    }

    /// Object of [`Self::gamma`] naming the stratum of `v`.
    pub fn vertex_object(&self, v: VertexId) -> usize {
        let s = self.complex.stratum(v).unwrap();
        self.levels.iter().position(|&l| l == s).unwrap()
    }

    pub fn position(&self, v: VertexId) -> usize {
        self.position[&v]
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let mut vs: Vec<(u8, usize, VertexId)> =
            self.complex.vertices().map(|(v, s)| (s, self.position[&v], v)).collect();
        vs.sort_unstable();
        let label: HashMap<VertexId, u32> = vs.iter().enumerate().map(|(i, &(_, _, v))| (v, i as u32)).collect();
        let mut tets: Vec<([u32; 4], i8)> = self
            .complex
            .tets()
            .iter()
            .map(|t| {
                let mut l = t.v.map(|v| label[&v]);
                let sign = t.sign * sort_parity(&l);
                l.sort_unstable();
                (l, sign)
            })
            .collect();
        tets.sort_unstable();
        CanonicalForm { strata: vs.iter().map(|&(s, _, _)| s).collect(), tets }
    }
}

/// Orders the vertices of a simplex so that every edge points forward;
/// `None` if the directions contain a cycle.
fn direction_sort<const N: usize>(
    simplex: &[VertexId; N],
    points: &impl Fn(VertexId, VertexId) -> bool,
) -> Option<[VertexId; N]> {
    let mut out_degree: Vec<(usize, VertexId)> = simplex
        .iter()
        .map(|&v| (simplex.iter().filter(|&&w| w != v && points(v, w)).count(), v))
        .collect();
    out_degree.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    // a tournament is transitive exactly when out-degrees are N-1, ..., 0
    if out_degree.iter().enumerate().any(|(i, &(d, _))| d != N - 1 - i) {
        return None;
    }
    Some(std::array::from_fn(|i| out_degree[i].1))
}
