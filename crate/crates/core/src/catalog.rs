//! Shipped categories.

use num_complex::Complex64;

use crate::biparcel::{Bicategory, BicategoryData, Biparcel, FusionEntry, TetEntry};
use crate::constructions::{
    fusion_biparcel, grading_span, pointed_biparcel, pullback, vec_group, Cochain3, FusionData, FusionSimple,
    MultifusionData, SectorSimple,
};
use crate::error::{Error, Result};
use crate::gaunt::{cyclic_table, group_as_groupoid, poset_chain, Functor};

pub const NAMES: [&str; 8] =
    ["trivial", "vec-z2", "vec-z2-omega", "vec-z3", "fibonacci", "defect-z2", "defect-z4", "defect-fibonacci"];

fn tet(edges: [&str; 6], value: Complex64) -> TetEntry {
    let [i, j, k, l, m, n] = edges.map(String::from);
    TetEntry { i, j, k, l, m, n, t012: 0, t123: 0, t013: 0, t023: 0, re: value.re, im: value.im }
}

fn fusion(a: &str, b: &str, c: &str) -> FusionEntry {
    FusionEntry { a: a.into(), b: b.into(), c: c.into(), mult: 1 }
}

/// One simple of dimension 1; every amplitude is 1.
pub fn trivial() -> Biparcel {
    let one = Complex64::new(1.0, 0.0);
    fusion_biparcel(&FusionData {
        unit: "1".into(),
        simples: vec![FusionSimple { id: "1".into(), dim_re: 1.0, dim_im: 0.0, dual: Some("1".into()) }],
        fusion: vec![fusion("1", "1", "1")],
        tet_plus: vec![tet(["1"; 6], one)],
        tet_minus: vec![tet(["1"; 6], one)],
    })
    .expect("trivial data validates")
}

/// `Vec_{Z/n}` twisted by the `k`-th power of the standard 3-cocycle.
pub fn vec_cyclic(n: usize, k: usize) -> Biparcel {
    vec_group(&Cochain3::cyclic(n, k).expect("cyclic cochain")).expect("cyclic cocycle")
}

/// The Fibonacci category: simples `1` and `tau` with `tau tau = 1 + tau`.
/// Amplitudes are the tetrahedrally symmetric 6j symbols
/// `F^{ijk}_{l;mn} / sqrt(d_m d_n)`.
pub fn fibonacci() -> Biparcel {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let dim = |s: &str| if s == "tau" { phi } else { 1.0 };
    let allowed = |a: &str, b: &str, c: &str| {
        let taus = [a, b, c].iter().filter(|&&x| x == "tau").count();
        taus != 1
    };
    let names = ["1", "tau"];
    let mut entries = Vec::new();
    for code in 0..64 {
        let [i, j, k, l, m, n] = std::array::from_fn::<&str, 6, _>(|b| names[code >> (5 - b) & 1]);
        if !(allowed(i, j, m) && allowed(j, k, n) && allowed(i, n, l) && allowed(m, k, l)) {
            continue;
        }
        let f = if [i, j, k, l].iter().all(|&x| x == "tau") {
            match (m, n) {
                ("1", "1") => 1.0 / phi,
                ("tau", "tau") => -1.0 / phi,
                _ => 1.0 / phi.sqrt(),
            }
        } else {
            1.0
        };
        let value = Complex64::new(f / (dim(m) * dim(n)).sqrt(), 0.0);
        entries.push(tet([i, j, k, l, m, n], value));
    }
    let mut fusion_table = vec![fusion("1", "1", "1"), fusion("1", "tau", "tau"), fusion("tau", "1", "tau")];
    fusion_table.extend([fusion("tau", "tau", "1"), fusion("tau", "tau", "tau")]);
    fusion_biparcel(&FusionData {
        unit: "1".into(),
        simples: vec![
            FusionSimple { id: "1".into(), dim_re: 1.0, dim_im: 0.0, dual: Some("1".into()) },
            FusionSimple { id: "tau".into(), dim_re: phi, dim_im: 0.0, dual: Some("tau".into()) },
        ],
        fusion: fusion_table,
        tet_plus: entries.clone(),
        tet_minus: entries,
    })
    .expect("Fibonacci data validates")
}

/// Matrix units `E_ij` on two sectors: `E_ij E_jk = E_ik`, all dimensions 1.
pub fn matrix_units_2x2() -> MultifusionData {
    let sectors = ["1", "2"];
    let e = |i: &str, j: &str| format!("E{i}{j}");
    let mut simples = Vec::new();
    let mut fusion_table = Vec::new();
    let mut tets = Vec::new();
    for i in sectors {
        for j in sectors {
            simples.push(SectorSimple {
                id: e(i, j),
                sector: [i.into(), j.into()],
                dim_re: 1.0,
                dim_im: 0.0,
                dual: Some(e(j, i)),
            });
            for k in sectors {
                fusion_table.push(fusion(&e(i, j), &e(j, k), &e(i, k)));
                for l in sectors {
                    let edges = [e(i, j), e(j, k), e(k, l), e(i, l), e(i, k), e(j, l)];
                    tets.push(tet(edges.each_ref().map(String::as_str), Complex64::new(1.0, 0.0)));
                }
            }
        }
    }
    MultifusionData {
        sectors: sectors.map(String::from).to_vec(),
        simples,
        identity_simples: sectors.iter().map(|&j| (j.to_string(), e(j, j))).collect(),
        fusion: fusion_table,
        tet_plus: tets.clone(),
        tet_minus: tets,
    }
}

/// The functor from the chain `1 < ... < len` to `Z/n` sending `i->j` to `j - i`.
pub fn chain_to_cyclic(len: usize, n: usize) -> Functor {
    let chain = poset_chain(len).expect("non-empty chain");
    Functor {
        objects: vec![0; len],
        arrows: chain.arrows().iter().map(|a| (a.tgt - a.src) % n).collect(),
    }
}

/// `Vec_{Z/4}` with the standard cocycle, graded by reduction to `Z/2`.
pub fn z4_over_z2_data() -> BicategoryData {
    let z2 = group_as_groupoid(&cyclic_table(2)).expect("Z/2");
    grading_span(&Cochain3::cyclic(4, 1).expect("cyclic cochain"), &z2, &[0, 1, 0, 1]).expect("reduction mod 2")
}

/// Pointed data over the chain `1 < 2 < 3`: `Z/2` with the sign cocycle, each
/// step between strata sent to the generator.
pub fn defect_z2_chain3() -> Biparcel {
    let chain = poset_chain(3).expect("chain");
    pointed_biparcel(&Cochain3::cyclic(2, 1).expect("cochain"), &chain, &chain_to_cyclic(3, 2)).expect("cocycle")
}

/// [`z4_over_z2_data`] pulled back to the chain `1 < 2 < 3`: every stratum
/// carries `Vec_{Z/2}` on the even elements and each step between strata is
/// colored by the odd ones.
pub fn defect_z4_chain3() -> Biparcel {
    let chain = poset_chain(3).expect("chain");
    let data = Bicategory::from_data(&z4_over_z2_data()).expect("graded data");
    pullback(&data, &chain, &chain_to_cyclic(3, 2)).expect("pullback")
}

/// Fibonacci on every arrow of the chain `1 < 2 < 3`.
pub fn defect_fibonacci_chain3() -> Biparcel {
    let chain = poset_chain(3).expect("chain");
    let fib = fibonacci();
    pullback(&fib, &chain, &Functor::to_point(&chain, fib.base())).expect("pullback")
}

pub fn by_name(name: &str) -> Result<Biparcel> {
    Ok(match name {
        "trivial" => trivial(),
        "vec-z2" => vec_cyclic(2, 0),
        "vec-z2-omega" => vec_cyclic(2, 1),
        "vec-z3" => vec_cyclic(3, 0),
        "fibonacci" => fibonacci(),
        "defect-z2" => defect_z2_chain3(),
        "defect-z4" => defect_z4_chain3(),
        "defect-fibonacci" => defect_fibonacci_chain3(),
        _ => return Err(Error::InvalidArgument(format!("unknown category {name}"))),
    })
}
