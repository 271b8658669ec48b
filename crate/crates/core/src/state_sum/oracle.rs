use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::complex::{DirectedTriangulation, BULK};
use crate::constructions::Cochain3;
use crate::error::{Error, Result};

use super::Amplitude;

/// Dijkgraaf–Witten count for a finite group and 3-cocycle on an unstratified
/// triangulation: `|G|^-V` times the sum over flat edge labelings of the
/// product of `omega(g01, g12, g23)` raised to the tet orientation.
///
/// Written independently of the coloring engine; only the vertex order is
/// taken from `t`.
pub fn dw_oracle(omega: &Cochain3, t: &DirectedTriangulation, tolerance: f64) -> Result<Amplitude> {
    let complex = t.complex();
    if let Some((v, s)) = complex.vertices().find(|&(_, s)| s != BULK) {
        return Err(Error::Unsupported(format!("vertex {v} lies in stratum {s}; the oracle needs a bulk-only input")));
    }
    let group = omega.group();
    let n = group.order();
    let rank = |v: u32| t.position(v);

    // (ordered vertices, +1 or -1)
    let mut simplices = Vec::new();
    let mut edges = BTreeSet::new();
    let mut triangles = BTreeSet::new();
    for tet in complex.tets() {
        let mut sorted = tet.v;
        sorted.sort_by_key(|&v| rank(v));
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if rank(tet.v[i]) > rank(tet.v[j]) {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { tet.sign } else { -tet.sign };
        for i in 0..4 {
            for j in i + 1..4 {
                edges.insert((sorted[i], sorted[j]));
                for k in j + 1..4 {
                    triangles.insert((sorted[i], sorted[j], sorted[k]));
                }
            }
        }
        simplices.push((sorted, sign));
    }
    let edges: Vec<(u32, u32)> = edges.into_iter().collect();
    let slot: BTreeMap<(u32, u32), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    // triangles become checkable once their last edge is labeled
    let mut checks: Vec<Vec<[usize; 3]>> = vec![Vec::new(); edges.len()];
    for &(a, b, c) in &triangles {
        let e = [slot[&(a, b)], slot[&(b, c)], slot[&(a, c)]];
        checks[*e.iter().max().unwrap()].push(e);
    }

    let mut labels = vec![0usize; edges.len()];
    let mut total = Complex64::default();
    let mut count = 0u64;
    let mut stack = vec![0usize];
    // iterative depth-first search over labelings, one group element per edge
    while let Some(&next) = stack.last() {
        let depth = stack.len() - 1;
        if next == n {
            stack.pop();
            if let Some(top) = stack.last_mut() {
                *top += 1;
            }
            continue;
        }
        labels[depth] = next;
        let flat = checks[depth].iter().all(|&[ab, bc, ac]| group.mul(labels[ab], labels[bc]) == labels[ac]);
        if !flat {
            *stack.last_mut().unwrap() += 1;
            continue;
        }
        if depth + 1 < edges.len() {
            stack.push(0);
            continue;
        }
        let mut w = Complex64::new(1.0, 0.0);
        for (v, sign) in &simplices {
            let g = |a: u32, b: u32| labels[slot[&(a, b)]];
            let value = omega.value(g(v[0], v[1]), g(v[1], v[2]), g(v[2], v[3]));
            w *= if *sign > 0 { value } else { value.inv() };
        }
        total += w;
        count += 1;
        *stack.last_mut().unwrap() += 1;
    }
    let scale = (n as f64).powi(-(complex.vertex_count() as i32));
    Ok(Amplitude { value: total * scale, colorings: count, tolerance })
}
