use sbdo_core::covariance::{
    bracket_table, check_intertwine_b, check_intertwine_f, check_multiplication,
    check_restriction, expected_conformal_algebra, generators,
};
use sbdo_core::jordan::JordanAlgebra;
use sbdo_core::linalg;
use sbdo_core::source::{build_b, build_d, build_f};

const IDS: [&str; 5] = ["R", "Rpq:1,1", "Rpq:2,1", "Sym2", "Rpq:2,2"];

fn failing<T>(rows: Vec<(String, T)>, zero: impl Fn(&T) -> bool) -> Vec<String> {
    rows.into_iter().filter(|r| !zero(&r.1)).map(|r| r.0).collect()
}

#[test]
fn generators_span_the_conformal_algebra() {
    for id in IDS {
        let a = JordanAlgebra::from_id(id).unwrap();
        let gens = generators(&a).unwrap();
        let (dim, compact) = expected_conformal_algebra(&a);
        assert_eq!(gens.len(), dim, "{id}");
        let table = bracket_table(&a, &gens).unwrap();
        assert!(table.jacobi_holds(), "{id}");
        let (pos, neg, zero) = linalg::inertia(&table.killing_form());
        assert_eq!((pos + neg, neg, zero), (dim, compact, 0), "{id}");
    }
}

#[test]
fn restriction_and_multiplication_intertwine() {
    for id in IDS {
        let a = JordanAlgebra::from_id(id).unwrap();
        let gens = generators(&a).unwrap();
        assert!(failing(check_restriction(&a, &gens), |b| b.is_zero()).is_empty(), "{id}");
        assert!(failing(check_multiplication(&a, &gens), |o| o.is_zero()).is_empty(), "{id}");
    }
}

#[test]
fn source_operators_intertwine() {
    for id in IDS {
        let a = JordanAlgebra::from_id(id).unwrap();
        let gens = generators(&a).unwrap();
        let f = build_f(&a, &build_d(&a));
        assert!(failing(check_intertwine_f(&a, &gens, &f), |o| o.is_zero()).is_empty(), "{id}");
        for k in 1..=2 {
            let b = build_b(&a, &f, k);
            assert!(failing(check_intertwine_b(&a, &gens, &b.b, k), |b| b.is_zero()).is_empty(), "{id} k={k}");
        }
    }
}

#[test]
fn unshifted_or_mislabelled_operators_fail() {
    for id in ["Rpq:1,1", "Sym2"] {
        let a = JordanAlgebra::from_id(id).unwrap();
        let gens = generators(&a).unwrap();
        let d = build_d(&a);
        assert!(!failing(check_intertwine_f(&a, &gens, &d), |o| o.is_zero()).is_empty(), "{id}");
        let f = build_f(&a, &d);
        let b1 = build_b(&a, &f, 1);
        assert!(!failing(check_intertwine_b(&a, &gens, &b1.b, 2), |b| b.is_zero()).is_empty(), "{id}");
    }
}
