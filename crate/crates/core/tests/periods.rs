use genus4::exactfield::ComplexBall;
use genus4::fixtures::{self, ELLIPTIC_COLUMNS, PRYM_COLUMNS};
use genus4::intlat::{same_lattice, to_rational};
use genus4::periods::*;
use genus4::{IntMat, TowerElem};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn tau_point(re: i64, im: i64) -> BallPoint {
    let mut p = BallPoint::new();
    p.insert(Param::Tau, ComplexBall::from_int(re) + ComplexBall::from_int(im).mul_i());
    p
}

fn prym() -> PeriodMatrix {
    PeriodMatrix::from_constant(&fixtures::z3_special(), fixtures::j3()).unwrap()
}

#[test]
fn genus4_matrix_satisfies_first_relation() {
    assert!(first_relation_holds(&fixtures::genus4_period_matrix()));
}

#[test]
fn prym_block_satisfies_first_relation() {
    assert!(first_relation_holds(&prym()));
    let displayed = PeriodMatrix::from_constant(&fixtures::z3_special_displayed(), fixtures::j3()).unwrap();
    assert!(!first_relation_holds(&displayed));
}

#[test]
fn perturbed_entry_is_detected() {
    let p = fixtures::genus4_period_matrix();
    let mut e = p.entries().clone();
    e[(2, 3)] = e[(2, 3)].clone() + AffineForm::constant(TowerElem::one());
    let q = PeriodMatrix::from_matrix(e, p.polarization().gram().clone()).unwrap();
    assert!(!first_relation_holds(&q));
}

#[test]
fn positivity_in_upper_half_plane() {
    let p = fixtures::genus4_period_matrix();
    for (re, im) in [(0, 1), (0, 2), (1, 1)] {
        assert!(riemann_positivity(&p, &tau_point(re, im), 128).unwrap().is_positive());
    }
    assert!(!riemann_positivity(&p, &tau_point(0, -1), 128).unwrap().is_positive());
    assert!(riemann_positivity(&prym(), &BallPoint::new(), 128).unwrap().is_positive());
}

#[test]
fn split_recovers_published_sublattices() {
    let p = fixtures::genus4_period_matrix();
    let split = isogeny_split(&p).unwrap();
    assert_eq!(split.elliptic.len(), 2);
    assert_eq!(split.prym.len(), 6);
    let b = fixtures::base_change();
    let cols = |idx: &[usize]| -> Vec<Vec<BigInt>> { idx.iter().map(|&j| b.col(j)).collect() };
    assert!(same_lattice(&split.elliptic, &cols(&ELLIPTIC_COLUMNS)));
    assert!(same_lattice(&split.prym, &cols(&PRYM_COLUMNS)));
}

#[test]
fn base_change_block_diagonalizes() {
    let p = fixtures::genus4_period_matrix();
    let prod = affine_right_mul(p.entries(), &int_to_tower(&fixtures::base_change()));
    let tau = AffineForm::param(Param::Tau);
    let [e1, e2] = elliptic_block(&tau);
    assert_eq!(prod[(0, 0)], e1);
    assert_eq!(prod[(0, 4)], e2);
    let z3 = fixtures::z3_special();
    for i in 0..3 {
        assert!(prod[(i + 1, 0)].is_zero() && prod[(i + 1, 4)].is_zero());
        for (j, &c) in PRYM_COLUMNS.iter().enumerate() {
            assert!(prod[(0, c)].is_zero());
            assert_eq!(prod[(i + 1, c)], AffineForm::constant(z3[(i, j)].clone()), "({i},{j})");
        }
    }
}

#[test]
fn family_round_trips() {
    let p = fixtures::genus4_period_matrix();
    let prym = prym();
    let g = genus4_family(
        &AffineForm::param(Param::Tau),
        prym.entries(),
        &fixtures::base_change(),
        &ELLIPTIC_COLUMNS,
        &PRYM_COLUMNS,
    )
    .unwrap();
    assert_eq!(g.entries(), p.entries());
}

#[test]
fn m3_intertwines_on_one_side_only() {
    let a = [TowerElem::zeta_pow(4), TowerElem::zeta_pow(8), TowerElem::zeta_pow(8)];
    let results = side_search(&a, prym().entries(), &fixtures::m3());
    let passing: Vec<_> = results.iter().filter(|r| r.2.holds).collect();
    assert_eq!(passing.len(), 1);
    assert_eq!(passing[0].0, SideVariant::Direct);
    let r = &passing[0].1;
    let j3 = to_rational(&fixtures::j3());
    assert_eq!(r.transpose().mul(&j3).mul(r), j3);
}

#[test]
fn period_model_reproduces_matrix() {
    let x = fixtures::e_basis();
    let pu = fixtures::u_periods();
    let model = affine_right_mul(&pu, &int_to_tower(&x));
    assert_eq!(&model, fixtures::genus4_period_matrix().entries());
}

#[test]
fn deck_shift_is_an_automorphism_of_the_genus4_matrix() {
    let h = fixtures::homology_model();
    let r = h.deck_action(&fixtures::e_basis()).unwrap();
    assert!(r.iter().all(|q| q.is_integer()));
    let chi = fixtures::deck_characters();
    let p = fixtures::genus4_period_matrix();
    assert!(automorphism_check(&chi, p.entries(), &r).holds);
    let chi_bar: Vec<TowerElem> = chi.iter().map(TowerElem::conj).collect();
    assert!(!automorphism_check(&chi_bar, p.entries(), &r).holds);
}

#[test]
fn json_round_trip() {
    let p = fixtures::genus4_period_matrix();
    let v = p.to_json();
    assert_eq!(v["g"], 4);
    assert_eq!(v["params"], serde_json::json!(["tau"]));
    assert_eq!(PeriodMatrix::from_json(&v).unwrap(), p);
}

#[test]
fn shape_errors() {
    let bad = PeriodMatrix::new(vec![vec![AffineForm::zero(); 3]], IntMat::standard_symplectic(1));
    assert!(matches!(bad, Err(PeriodError::Shape(_))));
    let degenerate = PeriodMatrix::new(vec![vec![AffineForm::zero(); 2]], IntMat::zeros(2, 2));
    assert_eq!(degenerate, Err(PeriodError::DegeneratePolarization));
}
