use std::collections::{BTreeMap, HashMap};

use crate::error::Result;

use super::stratified::{sort_parity, StratifiedComplex, Tet, VertexId, BULK};

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Barycentric subdivision. The barycenter of each simplex is placed in the
/// lowest stratum containing that simplex, so the result is flag-like with
/// induced strata.
///
/// New vertex ids: original vertices first (ascending), then edges,
/// triangles and tets in sorted order.
pub fn barycentric_subdivide(complex: &StratifiedComplex) -> Result<StratifiedComplex> {
    complex.check_strata_closed()?;
    let mut id: HashMap<Vec<VertexId>, VertexId> = HashMap::new();
    let mut strata = Vec::new();
    let mut add = |simplex: Vec<VertexId>, stratum: u8| {
        let next = strata.len() as VertexId;
        id.insert(simplex, next);
        strata.push((next, stratum));
    };
    for (v, s) in complex.vertices() {
        add(vec![v], s);
    }
    for e in complex.edges() {
        add(e.to_vec(), complex.stratum_of(&e));
    }
    for t in complex.triangles() {
        add(t.to_vec(), complex.stratum_of(&t));
    }
    let mut sorted_tets: Vec<Vec<VertexId>> = complex
        .tets()
        .iter()
        .map(|t| {
            let mut v = t.v.to_vec();
            v.sort_unstable();
            v
        })
        .collect();
    sorted_tets.sort_unstable();
    for t in sorted_tets {
        add(t, BULK);
    }

    let key = |vs: &[VertexId]| {
        let mut k = vs.to_vec();
        k.sort_unstable();
        id[&k]
    };
    let mut tets = Vec::with_capacity(24 * complex.tets().len());
    for t in complex.tets() {
        for p in permutations4() {
            let v = p.map(|i| t.v[i]);
            tets.push(Tet {
                v: [key(&v[..1]), key(&v[..2]), key(&v[..3]), key(&v)],
                sign: t.sign * sort_parity(&p),
            });
        }
    }
    StratifiedComplex::new(strata, tets, BTreeMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::generators::{boundary_4_simplex, sphere_join_unknot};

    #[test]
    fn subdivided_boundary_counts() {
        let s = barycentric_subdivide(&boundary_4_simplex()).unwrap();
        assert_eq!(s.tets().len(), 120);
        assert_eq!(s.vertex_count(), 5 + 10 + 10 + 5);
        assert_eq!(s.euler_characteristic(), 0);
        assert!(s.check_closed_oriented().passed());
        assert!(s.validate_flaglike().passed());
    }

    #[test]
    fn knot_doubles_in_length() {
        let s = barycentric_subdivide(&sphere_join_unknot()).unwrap();
        let knot: Vec<_> = s.edges().into_iter().filter(|e| s.stratum_of(e) == 1).collect();
        assert_eq!(knot.len(), 6);
        // still a single cycle: every knot vertex meets two knot edges
        for (v, st) in s.vertices() {
            if st == 1 {
                assert_eq!(knot.iter().filter(|e| e.contains(&v)).count(), 2);
            }
        }
        assert!(s.validate_flaglike().passed());
    }
}
