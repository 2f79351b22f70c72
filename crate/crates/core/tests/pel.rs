use std::cmp::Ordering;

use genus4::exactfield::ComplexBall;
use genus4::fixtures;
use genus4::intlat::{int_mat, to_rational};
use genus4::pel::*;
use genus4::periods::*;
use genus4::scalar::ratio;
use genus4::{IntMat, TowerElem};
use num_traits::Zero;

fn module() -> PelModule {
    build_module(&fixtures::m3(), &fixtures::module_generators()).unwrap()
}

fn datum() -> FamilyDatum {
    let m = module();
    let (g0, g1) = m.trace_data(&fixtures::j3());
    FamilyDatum {
        t: solve_t(&g0, &g1).unwrap(),
        module: m,
        w: fixtures::w_from_family_row(),
        conventions: Conventions::default(),
    }
}

fn solution(d: &FamilyDatum) -> MatchSolution {
    match_solver(&d.ambient_periods(), &fixtures::z3_special()).unwrap()
}

#[test]
fn module_and_trace_data() {
    let m = module();
    let (g0, g1) = m.trace_data(&fixtures::j3());
    assert_eq!(g0, int_mat(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]));
    assert_eq!(g1, int_mat(&[&[-1, 0, 0], &[0, 0, 1], &[0, 2, 9]]));
}

#[test]
fn bad_generators_rejected() {
    let err = build_module(&fixtures::m3(), &[vec![1, 0, 0, 0, 0, 0], vec![1, 0, 0, 0, 0, 0], vec![0, 0, 1, 0, 0, 0]]);
    assert!(matches!(err, Err(PelError::NotABasis { .. })));
    assert_eq!(build_module(&IntMat::identity(6), &fixtures::module_generators()), Err(PelError::NotOrderThree));
}

#[test]
fn t_matches_printed_and_is_integral() {
    let d = datum();
    assert_eq!(d.t.matrix(), &fixtures::t_displayed());
    assert_eq!(signature(&d.t, 128).unwrap(), (2, 1));
    assert_eq!(signature(&d.t.neg(), 128).unwrap(), (1, 2));
    let report = integrality_check(&d.module, d.t.matrix(), &fixtures::j3()).unwrap();
    assert!(report.ok(), "{report:?}");
    let half = d.t.matrix().map(|x| x.scale(&ratio(1, 2)));
    let report = integrality_check(&d.module, &half, &fixtures::j3()).unwrap();
    assert!(!report.non_integral.is_empty());
}

#[test]
fn diagonalizers() {
    let d = datum();
    assert!(defw_residual(d.t.matrix(), &d.w).is_zero());
    assert!(!defw_residual(d.t.matrix(), &fixtures::w_displayed()).is_zero());
    match diagonalize_w(&d.t, 256).unwrap() {
        Diagonalizer::Exact(w) => assert!(defw_residual(d.t.matrix(), &w).is_zero()),
        Diagonalizer::Ball(_) => panic!("expected a tower-valued W"),
    }
}

#[test]
fn convention_search_selects_sigma_identity_grouped() {
    let d = datum();
    let cands = search_conventions(&d.w, d.module.l(), &fixtures::z_s_displayed(), &fixtures::z3_special(), &fixtures::j3());
    for c in &cands {
        eprintln!("{} agree={} anchor={}", c.conventions.label(), c.agreement, c.anchor_ok);
    }
    assert_eq!(select_conventions(&cands).unwrap(), Conventions::default());
}

#[test]
fn first_columns_of_family() {
    let f = datum().periods();
    let ai = TowerElem::fourth_root3_pow(-1);
    assert_eq!(f[(0, 0)], AffineForm::linear(Param::Z2, ai.clone()));
    assert!(f[(1, 0)].is_zero());
    assert_eq!(f[(2, 0)], AffineForm::constant(ai.clone()));
    assert_eq!(f[(0, 3)], AffineForm::linear(Param::Z2, ai.clone() * TowerElem::zeta_pow(4)));
    assert_eq!(f[(2, 3)], AffineForm::constant(ai * TowerElem::zeta_pow(8)));
}

#[test]
fn matching_recovers_special_point() {
    let d = datum();
    let sol = solution(&d);
    let [z1, z2] = fixtures::special_point();
    assert_eq!(sol.z1, z1);
    assert_eq!(sol.z2, z2);
    assert_eq!(sol.constants()[0], fixtures::matching_constants()[0]);
    let n = ball_norm_sq(&z1.embed(128), &z2.embed(128));
    assert_eq!((ComplexBall::from_int(1) - n.clone()).real_sign(), Some(Ordering::Greater));
    let lo = ComplexBall::from_rational(&ratio(844, 1000), 64);
    let hi = ComplexBall::from_rational(&ratio(846, 1000), 64);
    assert_eq!((n.clone() - lo).real_sign(), Some(Ordering::Greater));
    assert_eq!((hi - n).real_sign(), Some(Ordering::Greater));
}

#[test]
fn self_match_recovers_point() {
    let d = datum();
    let fam = d.ambient_periods();
    let mut pt = ExactPoint::new();
    let z1 = TowerElem::rational(ratio(1, 5)) + TowerElem::i().scale(&ratio(1, 7));
    let z2 = TowerElem::zeta().scale(&ratio(-1, 3));
    pt.insert(Param::Z1, z1.clone());
    pt.insert(Param::Z2, z2.clone());
    let target = fam.try_map(|a| a.eval_exact(&pt)).unwrap();
    let sol = match_solver(&fam, &target).unwrap();
    assert_eq!((sol.z1, sol.z2), (z1, z2));
    assert!(sol.c.is_identity());
}

#[test]
fn prym_family_properties() {
    let d = datum();
    let sol = solution(&d);
    let p = prym_family(&sol.c, &d.ambient_periods(), &fixtures::j3()).unwrap();
    assert_eq!(p.eval_exact(&sol.point()).unwrap(), fixtures::z3_special());
    assert!(first_relation_holds(&p));
    let a = [TowerElem::zeta_pow(4), TowerElem::zeta_pow(8), TowerElem::zeta_pow(8)];
    assert!(automorphism_check(&a, p.entries(), &to_rational(&fixtures::m3())).holds);
    assert!(endomorphism_check(&d.periods(), d.conventions).holds);
    let ai = TowerElem::fourth_root3_pow(-1);
    assert_eq!(p.entries()[(0, 0)], AffineForm::linear(Param::Z2, ai * fixtures::matching_constants()[0].clone()));

    for (z1, z2) in sample_points() {
        let mut bp = BallPoint::new();
        bp.insert(Param::Z1, z1);
        bp.insert(Param::Z2, z2);
        assert!(riemann_positivity(&p, &bp, 128).unwrap().is_positive());
    }
}

fn sample_points() -> Vec<(ComplexBall, ComplexBall)> {
    let [z1, z2] = fixtures::special_point();
    vec![
        (z1.embed(128), z2.embed(128)),
        (ComplexBall::zero(), ComplexBall::zero()),
        (
            ComplexBall::from_rational(&ratio(1, 3), 128),
            ComplexBall::from_rational(&ratio(-1, 4), 128).mul_i(),
        ),
    ]
}

#[test]
fn polarization_identity_at_samples() {
    let d = datum();
    let f = d.periods();
    let pairing = d.module.pairing(&fixtures::j3());
    for (z1, z2) in sample_points() {
        let bad = polarization_identity_check(&f, &pairing, &z1, &z2, 128).unwrap();
        assert!(bad.is_empty(), "{bad:?}");
    }
}

#[test]
fn genus4_family_from_prym_family() {
    let d = datum();
    let sol = solution(&d);
    let p = prym_family(&sol.c, &d.ambient_periods(), &fixtures::j3()).unwrap();
    let g = genus4_family(
        &AffineForm::param(Param::Tau),
        p.entries(),
        &fixtures::base_change(),
        &fixtures::ELLIPTIC_COLUMNS,
        &fixtures::PRYM_COLUMNS,
    )
    .unwrap();
    assert!(first_relation_holds(&g));
    let at_special = g.substitute(&sol.point());
    assert_eq!(at_special.entries(), fixtures::genus4_period_matrix().entries());
    let [z1, z2] = fixtures::special_point();
    let mut bp = BallPoint::new();
    bp.insert(Param::Tau, ComplexBall::from_int(1).mul_i());
    bp.insert(Param::Z1, z1.embed(128));
    bp.insert(Param::Z2, z2.embed(128));
    assert!(riemann_positivity(&g, &bp, 128).unwrap().is_positive());
}

#[test]
fn audit_flags_known_divergences() {
    let d = datum();
    let sol = solution(&d);
    let items = errata::audit(&d, &sol);
    for it in &items {
        eprintln!("{}: {}/{} {:?}", it.subject, it.agree(), it.total, it.disagreements);
    }
    assert!(items.iter().all(|i| !i.is_fatal()));
    assert_eq!(items[0].disagreements, vec![(1, 2), (1, 5)]);
}

