use genus4::covers::CyclicCoverData;
use genus4::exactfield::ComplexBall;
use genus4::intlat::{det_bareiss, is_unimodular, smith_normal_form, symplectic_basis, AlternatingForm};
use genus4::pel::{t_from_traces, SkewHermitian3};
use genus4::scalar::ratio;
use genus4::{CycloElem, IntMat, Matrix, TowerElem, TowerMat};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn cyclo() -> impl Strategy<Value = CycloElem> {
    prop::array::uniform4((-20i64..=20, 1i64..=6)).prop_map(|c| CycloElem::new(c.map(|(n, d)| ratio(n, d))))
}

fn tower() -> impl Strategy<Value = TowerElem> {
    (cyclo(), cyclo()).prop_map(|(b, a)| TowerElem::new(b, a))
}

fn as_complex(x: &TowerElem) -> Complex64 {
    let (re, im) = x.embed(64).to_f64_pair();
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn tower_embedding_and_conjugation(x in tower(), y in tower()) {
        let fine = |v: &TowerElem| v.embed(256);
        prop_assert!(x.embed(64).contains(&fine(&x)));
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert!(x.embed(64).conj().contains(&fine(&x.conj())));
        let xy = x.clone() * y.clone();
        prop_assert!((x.embed(64) * y.embed(64)).contains(&fine(&xy)));
        let sum = x.clone() + y.clone();
        prop_assert!((x.embed(64) + y.embed(64)).contains(&fine(&sum)));

        // the generic Complex64 scalar agrees with the certified embedding
        let approx = as_complex(&x) * as_complex(&y);
        let exact = as_complex(&xy);
        prop_assert!((approx - exact).norm() <= 1e-9 * (1.0 + exact.norm()));
    }
}

fn alternating(n: usize, upper: &[i64]) -> IntMat {
    let mut m = IntMat::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = BigInt::from(upper[k]);
            m[(j, i)] = -BigInt::from(upper[k]);
            k += 1;
        }
    }
    m
}

fn alternating_strategy() -> impl Strategy<Value = IntMat> {
    prop_oneof![Just(4usize), Just(6usize)].prop_flat_map(|n| {
        prop::collection::vec(-6i64..=6, n * (n - 1) / 2).prop_map(move |u| alternating(n, &u))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn symplectic_basis_reaches_frobenius_form(e in alternating_strategy()) {
        prop_assume!(!det_bareiss(&e).is_zero());
        let form = AlternatingForm::new(e.clone()).unwrap();
        let b = symplectic_basis(&form).unwrap();
        prop_assert!(is_unimodular(&b.s));
        prop_assert_eq!(b.s.transpose().mul(&e).mul(&b.s), Matrix::frobenius_form(&b.d));
        prop_assert!(b.d.iter().all(|d| d.is_positive()));
        for w in b.d.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        let mut doubled: Vec<BigInt> = b.d.iter().flat_map(|d| [d.clone(), d.clone()]).collect();
        doubled.sort();
        prop_assert_eq!(doubled, smith_normal_form(&e).divisors());
    }
}

fn cover_strategy() -> impl Strategy<Value = (u32, Vec<i64>)> {
    (2u32..=12, 3usize..=6).prop_flat_map(|(n, k)| {
        (Just(n), prop::collection::vec(1i64..n as i64, k - 1)).prop_map(|(n, mut ex)| {
            let s: i64 = ex.iter().sum();
            ex.push((-s).rem_euclid(n as i64));
            (n, ex)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn eigenspace_dims_sum_to_genus((n, ex) in cover_strategy()) {
        let mut points: Vec<(String, i64)> =
            ex.iter().take(ex.len() - 1).enumerate().map(|(k, &a)| (format!("b{k}"), a)).collect();
        points.push(("inf".to_string(), *ex.last().unwrap()));
        let cover = CyclicCoverData::new(n, points).unwrap();
        prop_assume!(cover.genus().is_ok());
        let g = cover.genus().unwrap();
        let rows = cover.eigenspace_dims().unwrap();
        prop_assert_eq!(rows.iter().map(|r| r.dim).sum::<u32>(), g);
        for r in &rows {
            let partner = rows.iter().find(|s| s.index == n - r.index).unwrap();
            prop_assert_eq!(r.rank, r.dim + partner.dim);
        }
    }
}

fn eisenstein() -> impl Strategy<Value = TowerElem> {
    (-9i64..=9, -9i64..=9, 1i64..=3)
        .prop_map(|(p, q, d)| TowerElem::rational(ratio(p, d)) + TowerElem::rho().scale(&ratio(q, d)))
}

fn skew_hermitian() -> impl Strategy<Value = TowerMat> {
    (prop::collection::vec(eisenstein(), 3), prop::collection::vec(-9i64..=9, 3)).prop_map(|(off, diag)| {
        // √−3 = 1 + 2ρ spans the purely imaginary part of Q(ρ)
        let s = TowerElem::one() + TowerElem::rho().scale(&ratio(2, 1));
        let mut t = TowerMat::zeros(3, 3);
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            t[(i, j)] = off[k].clone();
            t[(j, i)] = -off[k].conj();
        }
        for (i, &d) in diag.iter().enumerate() {
            t[(i, i)] = s.scale(&ratio(d, 1));
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trace_data_round_trips(t in skew_hermitian()) {
        prop_assume!(!t.det().is_zero());
        let form = SkewHermitian3::new(t.clone()).unwrap();
        let (g0, g1) = form.traces().unwrap();
        prop_assert_eq!(t_from_traces(&g0, &g1), t);
    }

    #[test]
    fn ball_products_enclose_exact_products(x in tower()) {
        let lo = ComplexBall::from_rational(&ratio(1, 3), 40) * x.embed(40);
        let exact = (TowerElem::rational(ratio(1, 3)) * x.clone()).embed(256);
        prop_assert!(lo.contains(&exact));
    }
}
