//! Local move checks on a single 4-simplex.
//!
//! The boundary of the 4-simplex splits along any set `S` of its tets into
//! two balls with the same boundary. Comparing the state sums of the two
//! balls for every boundary coloring is the 1-4 move (`|S| = 1`) and the 2-3
//! move (`|S| = 2`). Vertices are colored along every chain of four
//! composable base arrows, so the defect versions of both moves are covered.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::report::Report;

use super::{Bicategory, Orientation, TetKey};

/// Edges of the 4-simplex as vertex pairs, in a fixed order.
const EDGES: [[usize; 2]; 10] =
    [[0, 1], [0, 2], [1, 2], [0, 3], [1, 3], [2, 3], [0, 4], [1, 4], [2, 4], [3, 4]];
const TRIANGLES: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 1, 3],
    [0, 2, 3],
    [1, 2, 3],
    [0, 1, 4],
    [0, 2, 4],
    [1, 2, 4],
    [0, 3, 4],
    [1, 3, 4],
    [2, 3, 4],
];

fn edge_index(a: usize, b: usize) -> usize {
    EDGES.iter().position(|e| *e == [a.min(b), a.max(b)]).unwrap()
}

fn triangle_index(v: [usize; 3]) -> usize {
    TRIANGLES.iter().position(|t| *t == v).unwrap()
}

/// Tet `i` omits vertex `i`.
fn tet_vertices(i: usize) -> [usize; 4] {
    let v: Vec<usize> = (0..5).filter(|&j| j != i).collect();
    [v[0], v[1], v[2], v[3]]
}

/// A face lies in the interior of the ball spanned by `side` exactly when
/// every tet missing one of its vertices belongs to `side`.
fn interior(face: &[usize], side: &[usize]) -> bool {
    (0..5).filter(|v| !face.contains(v)).all(|v| side.contains(&v))
}

struct Full {
    edges: [usize; 10],
    triangles: [u32; 10],
}

/// All colorings of the 4-simplex whose vertices follow `chain`.
fn colorings(b: &Bicategory, arrow: &[[usize; 5]; 5]) -> Vec<Full> {
    let mut out = Vec::new();
    let mut edges = [0usize; 10];
    fn assign(b: &Bicategory, arrow: &[[usize; 5]; 5], k: usize, edges: &mut [usize; 10], out: &mut Vec<Full>) {
        if k == 10 {
            let mults: Vec<u32> = TRIANGLES
                .iter()
                .map(|&[u, v, w]| b.mult(edges[edge_index(u, v)], edges[edge_index(v, w)], edges[edge_index(u, w)]))
                .collect();
            let mut idx = [0u32; 10];
            loop {
                out.push(Full { edges: *edges, triangles: idx });
                let mut pos = 0;
                while pos < 10 {
                    idx[pos] += 1;
                    if idx[pos] < mults[pos] {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == 10 {
                    return;
                }
            }
        }
        let [u, v] = EDGES[k];
        for &s in b.simples_over(arrow[u][v]) {
            edges[k] = s;
            // prune as soon as a triangle is fully colored with an empty hom-space
            let closes = TRIANGLES.iter().filter(|t| {
                let last = [edge_index(t[0], t[1]), edge_index(t[1], t[2]), edge_index(t[0], t[2])];
                last.iter().max() == Some(&k)
            });
            let ok = closes.into_iter().all(|&[x, y, z]| {
                b.mult(edges[edge_index(x, y)], edges[edge_index(y, z)], edges[edge_index(x, z)]) > 0
            });
            if ok {
                assign(b, arrow, k + 1, edges, out);
            }
        }
    }
    assign(b, arrow, 0, &mut edges, &mut out);
    out
}

fn tet_key(f: &Full, v: [usize; 4]) -> TetKey {
    let [a, bb, c, d] = v;
    let e = |x, y| f.edges[edge_index(x, y)];
    let t = |x, y, z| f.triangles[triangle_index([x, y, z])];
    TetKey {
        edges: [e(a, bb), e(bb, c), e(c, d), e(a, d), e(a, c), e(bb, d)],
        triangles: [t(a, bb, c), t(bb, c, d), t(a, bb, d), t(a, c, d)],
    }
}

/// Ball weight: interior vertices, edges and the tets of `side`. Boundary
/// weights are shared by both sides and left out.
fn ball_weight(b: &Bicategory, f: &Full, objects: &[usize; 5], side: &[usize], flip: bool) -> Complex64 {
    let mut w = Complex64::new(1.0, 0.0);
    for v in 0..5 {
        if interior(&[v], side) {
            w /= b.vertex_constant(objects[v]);
        }
    }
    for (k, e) in EDGES.iter().enumerate() {
        if interior(e, side) {
            w *= b.simples()[f.edges[k]].dim;
        }
    }
    for &i in side {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let sign = if flip { -sign } else { sign };
        w *= b.amplitude(&tet_key(f, tet_vertices(i)), Orientation::from_sign(sign)).unwrap_or_default();
    }
    w
}

/// Boundary data of a full coloring relative to `side`: colors of every face
/// that is not interior to either ball.
fn boundary_key(f: &Full, side: &[usize], other: &[usize]) -> (Vec<usize>, Vec<u32>) {
    let edges = (0..10).filter(|&k| !interior(&EDGES[k], side) && !interior(&EDGES[k], other)).map(|k| f.edges[k]);
    let triangles = (0..10)
        .filter(|&k| !interior(&TRIANGLES[k], side) && !interior(&TRIANGLES[k], other))
        .map(|k| f.triangles[k]);
    (edges.collect(), triangles.collect())
}

fn interior_key(f: &Full, side: &[usize]) -> (Vec<usize>, Vec<u32>) {
    let edges = (0..10).filter(|&k| interior(&EDGES[k], side)).map(|k| f.edges[k]);
    let triangles = (0..10).filter(|&k| interior(&TRIANGLES[k], side)).map(|k| f.triangles[k]);
    (edges.collect(), triangles.collect())
}

/// Chains `x0 -> x1 -> x2 -> x3 -> x4` of base arrows, as the table of all
/// composites `arrow[u][v]` for `u <= v`.
fn nerve_chains(b: &Bicategory) -> Vec<([usize; 5], [[usize; 5]; 5])> {
    let base = b.base();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = base.arrows().iter().enumerate().map(|(i, _)| vec![i]).collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        if path.len() == 4 {
            let mut objects = [0; 5];
            objects[0] = base.src(path[0]);
            for (i, &g) in path.iter().enumerate() {
                objects[i + 1] = base.tgt(g);
            }
            let mut arrow = [[usize::MAX; 5]; 5];
            let mut ok = true;
            for u in 0..5 {
                arrow[u][u] = base.identity(objects[u]);
                for v in u + 1..5 {
                    match base.compose(arrow[u][v - 1], path[v - 1]) {
                        Some(a) => arrow[u][v] = a,
                        None => ok = false,
                    }
                    if !ok {
                        break;
                    }
                }
            }
            if ok {
                out.push((objects, arrow));
            }
            continue;
        }
        let last = *path.last().unwrap();
        for g in (0..base.arrows().len()).rev() {
            if base.src(g) == base.tgt(last) {
                let mut p = path.clone();
                p.push(g);
                stack.push(p);
            }
        }
    }
    out
}

/// Compares both sides of the 1-4 and 2-3 moves on every boundary coloring
/// of the 4-simplex. Check names are `move-1-4` and `move-2-3`.
pub fn check_move_consistency(b: &Bicategory, tolerance: f64) -> Report {
    let mut report = Report::new();
    report.declare("move-1-4");
    report.declare("move-2-3");
    let mut sides: Vec<Vec<usize>> = (0..5).map(|i| vec![i]).collect();
    for i in 0..5 {
        for j in i + 1..5 {
            sides.push(vec![i, j]);
        }
    }
    for (objects, arrow) in nerve_chains(b) {
        let full = colorings(b, &arrow);
        for side in &sides {
            let other: Vec<usize> = (0..5).filter(|i| !side.contains(i)).collect();
            let name = if side.len() == 1 { "move-1-4" } else { "move-2-3" };
            let mut sums: HashMap<(Vec<usize>, Vec<u32>), [Complex64; 2]> = HashMap::new();
            let mut seen = [std::collections::HashSet::new(), std::collections::HashSet::new()];
            let mut order = Vec::new();
            for f in &full {
                let key = boundary_key(f, side, &other);
                if !sums.contains_key(&key) {
                    order.push(key.clone());
                }
                let entry = sums.entry(key.clone()).or_insert([Complex64::default(); 2]);
                for (s, (region, flip)) in [(side.as_slice(), false), (other.as_slice(), true)].into_iter().enumerate() {
                    if seen[s].insert((key.clone(), interior_key(f, region))) {
                        entry[s] += ball_weight(b, f, &objects, region, flip);
                    }
                }
            }
            for key in order {
                let [small, large] = sums[&key];
                if (small - large).norm() > tolerance {
                    let names: Vec<&str> = key.0.iter().map(|&s| b.simples()[s].id.as_str()).collect();
                    let objs: Vec<&str> = objects.iter().map(|&o| b.base().objects()[o].as_str()).collect();
                    report.fail(
                        name,
                        format!(
                            "objects {objs:?} tets {side:?}: boundary edges {names:?} triangles {:?}: {small} vs {large}",
                            key.1
                        ),
                    );
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_faces_of_the_splits() {
        // one tet against four: the four tets share the omitted vertex
        assert!(interior(&[0], &[1, 2, 3, 4]));
        assert!(interior(&[0, 1], &[1, 2, 3, 4]));
        assert!(!interior(&[1, 2], &[1, 2, 3, 4]));
        // two tets against three: the triangle 2 3 4 is shared by tets 0 and 1
        assert!(interior(&[2, 3, 4], &[0, 1]));
        assert!(interior(&[0, 1], &[2, 3, 4]));
        assert!(!interior(&[0, 1, 2], &[0, 1]));
    }

    #[test]
    fn chains_of_a_point() {
        let b = crate::catalog::vec_cyclic(2, 0);
        assert_eq!(nerve_chains(&b).len(), 1);
        // Z/2: edges of the 4-simplex colored flatly, determined by four free labels
        let chains = nerve_chains(&b);
        assert_eq!(colorings(&b, &chains[0].1).len(), 16);
    }
}
