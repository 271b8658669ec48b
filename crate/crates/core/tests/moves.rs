use biparcel_tv::catalog;
use biparcel_tv::complex::generators;
use biparcel_tv::complex::{applicable_sites, pachner_move, DirectedTriangulation, Mode, MoveKind};
use biparcel_tv::state_sum::{random_moves, EvalOptions};
use proptest::prelude::*;

const CREATING: [MoveKind; 4] = [MoveKind::OneFour, MoveKind::TwoThree, MoveKind::TwoSix, MoveKind::ThreeSix];

/// A generator after a few random moves, to get away from the symmetric start.
fn scrambled(name: &str, warmup: usize, seed: u64) -> DirectedTriangulation {
    let t = DirectedTriangulation::direct(&generators::by_name(name).unwrap(), None, Mode::ExitDimension).unwrap();
    let kinds = if name == "boundary_4_simplex" { MoveKind::BULK.to_vec() } else { MoveKind::ALL.to_vec() };
    random_moves(&catalog::trivial(), &t, &kinds, warmup, seed, &EvalOptions::default()).unwrap().last.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn creating_move_then_inverse_is_identity(
        gen in 0usize..3,
        warmup in 0usize..3,
        seed in any::<u64>(),
        kind in 0usize..4,
        pick in any::<prop::sample::Index>(),
    ) {
        let t = scrambled(generators::NAMES[gen], warmup, seed);
        let kind = CREATING[kind];
        let sites = applicable_sites(&t, kind);
        prop_assume!(!sites.is_empty());
        let out = pachner_move(&t, kind, pick.get(&sites)).unwrap();
        let c = out.triangulation.complex();
        prop_assert!(c.check_closed_oriented().passed());
        prop_assert!(c.validate_flaglike().passed());
        prop_assert_eq!(c.euler_characteristic(), 0);
        let back = pachner_move(&out.triangulation, kind.inverse(), &out.created).unwrap();
        prop_assert_eq!(back.triangulation.canonical_form(), t.canonical_form());
    }

    #[test]
    fn every_applicable_move_keeps_the_manifold(gen in 0usize..3, seed in any::<u64>(), kind in 0usize..8) {
        let t = scrambled(generators::NAMES[gen], 2, seed);
        let kind = MoveKind::ALL[kind];
        for site in applicable_sites(&t, kind) {
            let out = pachner_move(&t, kind, &site).unwrap();
            let c = out.triangulation.complex();
            prop_assert!(c.check_closed_oriented().passed());
            prop_assert!(c.validate_flaglike().passed());
            let knot = |c: &biparcel_tv::complex::StratifiedComplex| c.edges().iter().any(|e| c.stratum_of(e) == 1);
            prop_assert_eq!(knot(c), knot(t.complex()));
        }
    }
}
