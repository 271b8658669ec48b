//! Small closed triangulations used as fixtures and CLI outputs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::directed::{DirectedTriangulation, StratumOrders};
use super::stratified::{StratifiedComplex, Tet, BULK};

pub const NAMES: [&str; 3] = ["boundary_4_simplex", "sphere_join_unknot", "sphere_join_unknot_disk"];

/// The boundary of the 4-simplex on vertices `0..5`, all bulk.
pub fn boundary_4_simplex() -> StratifiedComplex {
    let tets = (0..5u32)
        .map(|i| {
            let v: Vec<u32> = (0..5).filter(|&j| j != i).collect();
            Tet { v: [v[0], v[1], v[2], v[3]], sign: if i % 2 == 0 { 1 } else { -1 } }
        })
        .collect();
    StratifiedComplex::new((0..5).map(|v| (v, BULK)), tets, BTreeMap::new()).unwrap()
}

fn join_of_triangles(strata: [u8; 6]) -> StratifiedComplex {
    let mut tets = Vec::with_capacity(9);
    for i in 0..3u32 {
        for j in 0..3u32 {
            tets.push(Tet { v: [i, (i + 1) % 3, 3 + j, 3 + (j + 1) % 3], sign: 1 });
        }
    }
    StratifiedComplex::new((0..6).map(|v| (v, strata[v as usize])), tets, BTreeMap::new()).unwrap()
}

/// S^3 as the join of two triangles `0 1 2` and `3 4 5`; the first is the
/// knot stratum.
pub fn sphere_join_unknot() -> StratifiedComplex {
    join_of_triangles([1, 1, 1, BULK, BULK, BULK])
}

/// [`sphere_join_unknot`] with the cone from vertex 3 over the knot marked as
/// a spanning disk.
pub fn sphere_join_unknot_disk() -> StratifiedComplex {
    join_of_triangles([1, 1, 1, 2, BULK, BULK])
}

pub fn disjoint_union(a: &StratifiedComplex, b: &StratifiedComplex) -> StratifiedComplex {
    a.disjoint_union(b).0
}

/// Disjoint union of directed triangulations, concatenating stratum orders.
pub fn disjoint_union_directed(a: &DirectedTriangulation, b: &DirectedTriangulation) -> Result<DirectedTriangulation> {
    let (complex, shift) = a.complex().disjoint_union(b.complex());
    let mut order: StratumOrders = a.orders().clone();
    for (s, vs) in b.orders() {
        order.entry(*s).or_default().extend(vs.iter().map(|v| v + shift));
    }
    DirectedTriangulation::direct(&complex, Some(&order), a.mode())
}

pub fn by_name(name: &str) -> Result<StratifiedComplex> {
    match name {
        "boundary_4_simplex" => Ok(boundary_4_simplex()),
        "sphere_join_unknot" => Ok(sphere_join_unknot()),
        "sphere_join_unknot_disk" => Ok(sphere_join_unknot_disk()),
        _ => Err(Error::InvalidArgument(format!("unknown generator {name}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::directed::Mode;

    fn counts(c: &StratifiedComplex) -> (usize, usize, usize, usize) {
        (c.vertex_count(), c.edges().len(), c.triangles().len(), c.tets().len())
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn boundary_counts_are_binomials() {
        let c = boundary_4_simplex();
        let expected = (binomial(5, 1), binomial(5, 2), binomial(5, 3), binomial(5, 4));
        assert_eq!(counts(&c), expected);
        assert_eq!(counts(&c), (5, 10, 10, 5));
        assert!(c.check_closed_oriented().passed());
    }

    #[test]
    fn join_counts_and_euler_characteristic() {
        let c = sphere_join_unknot();
        assert_eq!(counts(&c), (6, 15, 18, 9));
        assert_eq!(c.euler_characteristic(), 0);
        assert!(c.check_closed_oriented().passed());
    }

    #[test]
    fn disk_is_a_cone_on_the_knot() {
        let c = sphere_join_unknot_disk();
        let disk: Vec<_> = c.triangles().into_iter().filter(|t| c.stratum_of(t) == 2).collect();
        assert_eq!(disk, vec![[0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        let knot: Vec<_> = c.edges().into_iter().filter(|e| c.stratum_of(e) == 1).collect();
        assert_eq!(knot, vec![[0, 1], [0, 2], [1, 2]]);
        assert!(c.validate_flaglike().passed());
    }

    #[test]
    fn every_generator_is_flaglike_and_directable() {
        for name in NAMES {
            let c = by_name(name).unwrap();
            assert!(c.validate_flaglike().passed(), "{name}");
            DirectedTriangulation::direct(&c, None, Mode::ExitDimension).unwrap();
        }
        assert!(by_name("lens_space").is_err());
    }

    #[test]
    fn union_of_two_boundaries() {
        let b = boundary_4_simplex();
        let u = disjoint_union(&b, &b);
        assert_eq!(u.tets().len(), 10);
        assert_eq!(u.vertex_count(), 10);
        // two components: no tet mixes the halves
        assert!(u.tets().iter().all(|t| t.v.iter().all(|&v| v < 5) || t.v.iter().all(|&v| v >= 5)));
    }
}
