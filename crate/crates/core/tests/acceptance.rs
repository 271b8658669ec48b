//! Acceptance criteria, one line per criterion. Runs as a plain binary so
//! the lines show up in `cargo test` output.

use std::process::ExitCode;
use std::time::Instant;

use biparcel_tv::biparcel::{check_move_consistency, Bicategory, DEFAULT_TOLERANCE};
use biparcel_tv::catalog;
use biparcel_tv::complex::generators::{self, disjoint_union_directed};
use biparcel_tv::complex::{pachner_move, DirectedTriangulation, Mode, MoveKind, Site, StratumOrders};
use biparcel_tv::constructions::{
    check_cocycle, multifusion_sectors, sharp_construction, vec_group_data, Cochain3,
};
use biparcel_tv::gaunt::{cyclic_table, group_as_groupoid, FiniteGroupoid};
use biparcel_tv::state_sum::{dw_oracle, invariance_check, invariant, random_moves, EvalOptions};
use biparcel_tv::{Biparcel, Result};
use num_complex::Complex64;

const EXACT: f64 = 1e-12;
const TOL: f64 = 1e-9;

fn direct(c: &biparcel_tv::complex::StratifiedComplex) -> DirectedTriangulation {
    DirectedTriangulation::direct(c, None, Mode::ExitDimension).unwrap()
}

fn four_generators() -> Vec<(String, DirectedTriangulation)> {
    let mut out: Vec<(String, DirectedTriangulation)> = generators::NAMES
        .iter()
        .map(|&n| (n.to_string(), direct(&generators::by_name(n).unwrap())))
        .collect();
    let union = disjoint_union_directed(&out[0].1, &out[2].1).unwrap();
    out.push(("boundary_4_simplex + sphere_join_unknot_disk".into(), union));
    out
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn trivial_normalization() -> Result<Outcome> {
    let b = catalog::trivial();
    let mut worst: f64 = 0.0;
    for (_, t) in four_generators() {
        worst = worst.max(invariant(&b, &t)?.deviation(Complex64::new(1.0, 0.0)));
    }
    Ok(Outcome { passed: worst <= EXACT, detail: format!("max |Z - 1| = {worst:.1e} (tol {EXACT:.0e})") })
}

fn dw_equivalence() -> Result<Outcome> {
    let z2 = || group_as_groupoid(&cyclic_table(2)).unwrap();
    let z3 = || group_as_groupoid(&cyclic_table(3)).unwrap();
    let cases: Vec<(&str, Cochain3)> = vec![
        ("Z/2", Cochain3::trivial(z2())),
        ("Z/2 omega", Cochain3::cyclic(2, 1)?),
        ("Z/3", Cochain3::trivial(z3())),
    ];
    let start = direct(&generators::boundary_4_simplex());
    let after14 = pachner_move(&start, MoveKind::OneFour, &Site::Tet([0, 1, 2, 3]))?.triangulation;
    let after23 = pachner_move(&after14, MoveKind::TwoThree, &Site::Triangle([1, 2, 3]))?.triangulation;
    let mut worst: f64 = 0.0;
    let mut values = Vec::new();
    for (name, omega) in &cases {
        let b = biparcel_tv::constructions::vec_group(omega)?;
        for t in [&start, &after14, &after23] {
            let z = invariant(&b, t)?;
            worst = worst.max(z.deviation(dw_oracle(omega, t, TOL)?.value));
        }
        values.push((name, invariant(&b, &start)?.value));
    }
    let z2_value = (values[0].1 - 0.5).norm();
    let z3_value = (values[2].1 - 1.0 / 3.0).norm();
    Ok(Outcome {
        passed: worst <= TOL && z2_value <= TOL && z3_value <= TOL,
        detail: format!(
            "max |Z - DW| = {worst:.1e} over 3 triangulations; Z(Vec Z/2) = {:.12}, Z(Vec Z/3) = {:.12} (tol {TOL:.0e})",
            values[0].1.re, values[2].1.re
        ),
    })
}

fn bulk_moves() -> Result<Outcome> {
    let start = direct(&generators::boundary_4_simplex());
    let mut worst: f64 = 0.0;
    let mut moves = 0;
    for name in ["vec-z2-omega", "fibonacci"] {
        let b = catalog::by_name(name)?;
        for seed in 0..20 {
            let trace = random_moves(&b, &start, &MoveKind::BULK, 5, seed, &EvalOptions::default())?;
            worst = worst.max(trace.max_deviation);
            moves += trace.steps.len();
        }
    }
    Ok(Outcome {
        passed: worst <= TOL,
        detail: format!("40 seeded sequences, {moves} moves, max deviation {worst:.1e} (tol {TOL:.0e})"),
    })
}

fn defect_moves() -> Result<Outcome> {
    let start = direct(&generators::sphere_join_unknot_disk());
    let mut worst: f64 = 0.0;
    let mut isomorphic = true;
    for name in ["defect-z2", "defect-z4", "defect-fibonacci"] {
        let b = catalog::by_name(name)?;
        for (kind, site) in [(MoveKind::TwoSix, Site::Triangle([0, 1, 3])), (MoveKind::ThreeSix, Site::Edge([0, 1]))] {
            let created = pachner_move(&start, kind, &site)?.created;
            let trace = invariance_check(&b, &start, &[(kind, site), (kind.inverse(), created)], &EvalOptions::default())?;
            worst = worst.max(trace.max_deviation);
            isomorphic &= trace.last.unwrap().canonical_form() == start.canonical_form();
        }
    }
    Ok(Outcome {
        passed: worst <= TOL && isomorphic,
        detail: format!(
            "2-6/6-2 and 3-6/6-3 with defect-z2, defect-z4, defect-fibonacci: max deviation {worst:.1e}, round trip isomorphic: {isomorphic}"
        ),
    })
}

fn multiplicativity() -> Result<Outcome> {
    let gens: Vec<DirectedTriangulation> =
        generators::NAMES.iter().map(|&n| direct(&generators::by_name(n).unwrap())).collect();
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for name in ["vec-z2", "fibonacci"] {
        let b = catalog::by_name(name)?;
        for x in &gens {
            for y in &gens {
                let union = disjoint_union_directed(x, y)?;
                let product = invariant(&b, x)?.value * invariant(&b, y)?.value;
                worst = worst.max(invariant(&b, &union)?.deviation(product));
                pairs += 1;
            }
        }
    }
    Ok(Outcome { passed: worst <= TOL, detail: format!("{pairs} pairs, max deviation {worst:.1e} (tol {TOL:.0e})") })
}

/// Sign-valued cochains on Z/2 that are 1 whenever at most one argument is
/// the generator; the four remaining triples are free.
fn sign_cochains() -> Vec<Cochain3> {
    let free = [(0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)];
    (0..16)
        .map(|mask: usize| {
            let g = group_as_groupoid(&cyclic_table(2)).unwrap();
            Cochain3::from_fn(g, |a, b, c| match free.iter().position(|&t| t == (a, b, c)) {
                Some(bit) if mask >> bit & 1 == 1 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(1.0, 0.0),
            })
            .unwrap()
        })
        .collect()
}

fn validator_soundness() -> Result<Outcome> {
    let mut agree = 0;
    let mut cocycles = 0;
    for omega in sign_cochains() {
        let is_cocycle = check_cocycle(&omega, TOL).is_ok();
        let data = vec_group_data(&omega).to_bicategory_data();
        let b = Bicategory::from_data(&data)?;
        let accepted = check_move_consistency(&b, TOL).passed();
        cocycles += is_cocycle as usize;
        agree += (is_cocycle == accepted) as usize;
    }
    Ok(Outcome {
        passed: agree == 16,
        detail: format!("{agree}/16 verdicts agree with the cocycle check ({cocycles} cocycles)"),
    })
}

fn reordered(t: &DirectedTriangulation, f: impl Fn(&mut Vec<u32>)) -> Result<DirectedTriangulation> {
    let mut order: StratumOrders = t.orders().clone();
    order.values_mut().for_each(f);
    DirectedTriangulation::direct(t.complex(), Some(&order), t.mode())
}

fn reordering() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for name in ["sphere_join_unknot", "sphere_join_unknot_disk"] {
        let t = direct(&generators::by_name(name)?);
        let variants = [reordered(&t, |v| v.reverse())?, reordered(&t, |v| v.rotate_left(1))?];
        for cat in ["vec-z2-omega", "fibonacci", "defect-z4", "defect-fibonacci"] {
            let b = catalog::by_name(cat)?;
            let base = invariant(&b, &t)?.value;
            for v in &variants {
                worst = worst.max(invariant(&b, v)?.deviation(base));
                runs += 1;
            }
        }
    }
    Ok(Outcome { passed: worst <= TOL, detail: format!("{runs} reorderings, max deviation {worst:.1e} (tol {TOL:.0e})") })
}

fn completeness() -> Result<Outcome> {
    let mut shipped: Vec<(String, Bicategory)> = catalog::NAMES
        .iter()
        .map(|&n| Ok((n.to_string(), catalog::by_name(n)?.into_inner())))
        .collect::<Result<_>>()?;
    shipped.push(("matrix-units".into(), Bicategory::from_data(&multifusion_sectors(&catalog::matrix_units_2x2())?)?));
    shipped.push(("z4-over-z2".into(), Bicategory::from_data(&catalog::z4_over_z2_data())?));
    let fib: Biparcel = catalog::fibonacci();
    let codiscrete = FiniteGroupoid::codiscrete(2)?;
    shipped.push(("fibonacci#codiscrete".into(), Bicategory::from_data(&sharp_construction(&fib, &codiscrete)?)?));
    let failing: Vec<&str> = shipped
        .iter()
        .filter(|(_, b)| !b.validate(DEFAULT_TOLERANCE).check("completeness").unwrap().passed)
        .map(|(n, _)| n.as_str())
        .collect();
    let phi = fib.simples()[fib.simple("tau").unwrap()].dim.re;
    let golden = (phi * phi - phi - 1.0).abs();
    Ok(Outcome {
        passed: failing.is_empty() && golden <= TOL,
        detail: format!("{} categories, failing: {failing:?}; |phi^2 - phi - 1| = {golden:.1e}", shipped.len()),
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>); 8] = [
        ("trivial category normalization", trivial_normalization),
        ("Dijkgraaf-Witten oracle equivalence", dw_equivalence),
        ("invariance under bulk moves", bulk_moves),
        ("invariance under defect moves", defect_moves),
        ("multiplicativity under disjoint union", multiplicativity),
        ("move-consistency validator soundness", validator_soundness),
        ("reordering invariance", reordering),
        ("completeness validator", completeness),
    ];
    let total = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (mark, detail) = match run() {
            Ok(o) if o.passed => ("PASS", o.detail),
            Ok(o) => ("FAIL", o.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        failures += (mark == "FAIL") as usize;
        println!("[{mark}] {} {name}: {detail} [{:.2?}]", i + 1, start.elapsed());
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failures, criteria.len(), total.elapsed());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
