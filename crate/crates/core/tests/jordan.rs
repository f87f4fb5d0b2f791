use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbdo_core::jordan::{Block, JordanAlgebra, JordanError, CATALOG};
use sbdo_core::poly::{int, rat, Rational};

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect()
}

fn geo(a: &JordanAlgebra, x: &[Rational]) -> Vec<Rational> {
    let mut g = x.to_vec();
    g.resize(4 * a.n, Rational::zero());
    g
}

#[test]
fn jordan_identity_and_power_associativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for id in CATALOG {
        let a = JordanAlgebra::from_id(id).unwrap();
        for _ in 0..50 {
            let x = random_vec(&mut rng, a.n);
            let y = random_vec(&mut rng, a.n);
            let x2 = a.product(&x, &x);
            assert_eq!(
                a.product(&x2, &a.product(&x, &y)),
                a.product(&x, &a.product(&x2, &y)),
                "{id}"
            );
            assert_eq!(a.product(&x, &y), a.product(&y, &x), "{id}");
            assert_eq!(a.product(&x2, &x), a.product(&x, &x2), "{id}");
            let x4 = a.product(&x2, &x2);
            assert_eq!(a.product(&a.product(&x2, &x), &x), x4, "{id}");
        }
    }
}

#[test]
fn unit_and_frame() {
    for id in CATALOG {
        let a = JordanAlgebra::from_id(id).unwrap();
        let x: Vec<Rational> = (0..a.n as i64).map(|i| rat(i + 2, 3)).collect();
        assert_eq!(a.product(&a.unit, &x), x, "{id}");
        a.check_frame().unwrap();
        assert_eq!(a.frame.len(), a.r, "{id}");
        assert_eq!(a.det_at(&a.unit), int(1), "{id}");
        assert_eq!(a.trace_at(&a.unit), int(a.r as i64), "{id}");
    }
}

#[test]
fn peirce_invariants_match_catalog() {
    for id in CATALOG {
        let a = JordanAlgebra::from_id(id).unwrap();
        let pd = a.peirce_data().unwrap();
        assert_eq!(pd.d, a.d, "{id}");
        assert_eq!(a.n, a.r + a.r * (a.r - 1) / 2 * a.d + a.r * a.e, "{id}");
    }
}

#[test]
fn det_on_frame_diagonal_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for id in CATALOG {
        let a = JordanAlgebra::from_id(id).unwrap();
        for _ in 0..10 {
            let coeffs = random_vec(&mut rng, a.r);
            let mut x = vec![Rational::zero(); a.n];
            for (c, ci) in coeffs.iter().zip(&a.frame) {
                for k in 0..a.n {
                    x[k] += c * &ci[k];
                }
            }
            let prod: Rational = coeffs.iter().cloned().fold(Rational::one(), |acc, c| acc * c);
            assert_eq!(a.det_at(&x), prod, "{id}");
        }
    }
}

#[test]
fn principal_minors() {
    for id in ["R", "Sym2", "Sym3", "spin:3", "spin:4", "spin:5", "Rpq:1,1", "Rpq:2,1"] {
        let a = JordanAlgebra::from_id(id).unwrap();
        let minors = a.minors(Block::X);
        assert_eq!(minors.len(), a.r_plus, "{id}");
        for m in &minors {
            assert_eq!(m.eval(&geo(&a, &a.unit), &[]), int(1), "{id}: {m}");
        }
        assert_eq!(minors.last().unwrap(), &a.det(Block::X), "{id}");
    }
}

#[test]
fn hua_identity_at_rational_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for id in CATALOG {
        let a = JordanAlgebra::from_id(id).unwrap();
        let mut checked = 0;
        while checked < 20 {
            let x = random_vec(&mut rng, a.n);
            let y = random_vec(&mut rng, a.n);
            match a.hua_check(&x, &y) {
                Ok(ok) => {
                    assert!(ok, "{id}: x={x:?} y={y:?}");
                    checked += 1;
                }
                Err(JordanError::Singular) => continue,
                Err(e) => panic!("{id}: {e}"),
            }
        }
    }
}

#[test]
fn inverse_and_adjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for id in CATALOG {
        let a = JordanAlgebra::from_id(id).unwrap();
        for _ in 0..10 {
            let x = random_vec(&mut rng, a.n);
            if a.det_at(&x).is_zero() {
                continue;
            }
            let inv = a.inverse(&x).unwrap();
            assert_eq!(a.product(&x, &inv), a.unit, "{id}");
            let adj: Vec<Rational> = a.adjoint(Block::X).iter().map(|p| p.eval(&geo(&a, &x), &[])).collect();
            let scaled: Vec<Rational> = inv.iter().map(|v| v * a.det_at(&x)).collect();
            assert_eq!(adj, scaled, "{id}");
        }
    }
}

#[test]
fn sym2_examples() {
    let a = JordanAlgebra::sym(2);
    let e11 = vec![int(1), int(0), int(0)];
    assert_eq!(a.product(&e11, &e11), e11);
    assert_eq!(a.det_at(&[int(2), int(1), int(3)]), int(5));
    assert!(matches!(
        a.try_product(&[int(1)], &e11),
        Err(JordanError::Dimension { .. })
    ));
}

#[test]
fn unknown_ids_are_rejected() {
    for id in ["Sym9", "Rpq:0,2", "spin:1", "foo"] {
        assert!(JordanAlgebra::from_id(id).is_err(), "{id}");
    }
}
