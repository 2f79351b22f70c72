use genus4::covers::{verify_homology_model, CoverError, CyclicCoverData, HomologyCheck, HomologyModel};
use genus4::fixtures;
use num_bigint::BigInt;
use serde_json::json;

fn curve() -> CyclicCoverData {
    CyclicCoverData::from_json(&json!({"n": 6, "exponents": [["-1", 1], ["0", 1], ["t", 1], ["inf", 3]]})).unwrap()
}

#[test]
fn table_of_the_degree_six_curve() {
    let c = curve();
    assert_eq!(c.genus().unwrap(), 4);
    let rows = c.eigenspace_dims().unwrap();
    assert_eq!(rows.iter().map(|r| r.dim).collect::<Vec<_>>(), [0, 0, 1, 1, 2]);
    assert_eq!(rows.iter().map(|r| r.rank).collect::<Vec<_>>(), [2, 1, 2, 1, 2]);
}

#[test]
fn malformed_cover_data() {
    let unbalanced = CyclicCoverData::from_json(&json!({"n": 6, "exponents": [["a", 1], ["b", 1]]}));
    assert_eq!(unbalanced, Err(CoverError::UnbalancedExponents { n: 6, sum: 2 }));
    assert!(matches!(CyclicCoverData::from_json(&json!({"n": 6})), Err(CoverError::Json(_))));
    let bad_item = CyclicCoverData::from_json(&json!({"n": 6, "exponents": [["a", 1], 5]}));
    assert_eq!(bad_item, Err(CoverError::Json("exponents[1] must be [label, integer]".into())));
    let disconnected = CyclicCoverData::new(4, vec![("a".into(), 2), ("b".into(), 2)]).unwrap();
    assert_eq!(disconnected.genus(), Err(CoverError::Disconnected(2)));
}

#[test]
fn corrected_basis_passes_every_check() {
    let r = verify_homology_model(&fixtures::homology_model(), &fixtures::GENERATING_MINOR, &fixtures::e_basis());
    assert!(r.all_passed(), "{:?}", r.failures());
}

#[test]
fn printed_basis_fails_only_the_gram_check() {
    let r = verify_homology_model(
        &fixtures::homology_model(),
        &fixtures::GENERATING_MINOR,
        &fixtures::e_basis_displayed(),
    );
    let failed: Vec<HomologyCheck> = r.failures().iter().map(|o| o.check).collect();
    assert_eq!(failed, vec![HomologyCheck::SymplecticGram]);
}

#[test]
fn perturbed_intersection_matrix_is_caught() {
    let mut m = fixtures::intersection_matrix();
    m[(0, 2)] = BigInt::from(1);
    m[(2, 0)] = BigInt::from(-1);
    let h = HomologyModel::new(m, fixtures::deck_shift());
    let r = verify_homology_model(&h, &fixtures::GENERATING_MINOR, &fixtures::e_basis());
    assert!(!r.passed(HomologyCheck::ShiftEquivariant));
    assert!(r.passed(HomologyCheck::SkewSymmetric));

    let mut m = fixtures::intersection_matrix();
    m[(0, 1)] = BigInt::from(1);
    let h = HomologyModel::new(m, fixtures::deck_shift());
    let r = verify_homology_model(&h, &fixtures::GENERATING_MINOR, &fixtures::e_basis());
    assert!(!r.passed(HomologyCheck::SkewSymmetric));
}

#[test]
fn deck_shift_has_order_six_on_homology() {
    let h = fixtures::homology_model();
    assert_eq!(h.shift_matrix().pow(6), genus4::IntMat::identity(12));
    assert!(!h.shift_matrix().pow(3).is_identity());
}
