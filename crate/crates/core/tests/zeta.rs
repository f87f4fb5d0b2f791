use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbdo_core::zeta::quad::integrate;
use sbdo_core::zeta::*;

fn cr(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn instances(id: CaseId) -> Vec<(usize, usize)> {
    match id {
        CaseId::EuclA => vec![(2, 4), (2, 8), (3, 2), (3, 4), (3, 8), (4, 4), (5, 2)],
        CaseId::EuclAPrime => vec![(2, 2), (2, 6), (4, 2), (6, 2)],
        CaseId::EuclB1 => vec![(2, 1), (2, 5), (2, 9)],
        CaseId::EuclB3 => vec![(2, 3), (2, 7)],
        CaseId::EuclC0 => vec![(4, 1), (8, 1)],
        CaseId::EuclC1 => vec![(1, 1), (5, 1), (9, 1)],
        CaseId::EuclC2 => vec![(2, 1), (6, 1)],
        CaseId::EuclC3 => vec![(3, 1), (7, 1)],
        _ => vec![],
    }
}

fn random_s(rng: &mut ChaCha8Rng, case: &FECase) -> C64 {
    loop {
        let s = C64::new(rng.gen_range(-2.5..2.5), rng.gen_range(-1.0..1.0));
        if fe_matrix(case, s).is_ok() {
            return s;
        }
    }
}

#[test]
fn gamma_omega_closed_forms() {
    let s = C64::new(0.7, 0.4);
    assert!((gamma_v(1, 3, s) - gamma(s / 2.0)).norm() < 1e-15);
    assert!((gamma_omega(1, 1, 1, s) - gamma(s)).norm() < 1e-15);
    let ratio = gamma_omega(3, 2, 1, s + 1.0) / gamma_omega(3, 2, 1, s);
    assert!((ratio - s * (s - 0.5)).norm() < 1e-13);
}

#[test]
fn fs_sums_case_a() {
    let s = C64::new(0.31, 0.17);
    for (r, d) in [(3usize, 2usize), (2, 4)] {
        let u = fs_u_matrix(r, d, s);
        let e = (-C64::i() * PI * r as f64 * s / 2.0).exp();
        for k in 0..=r {
            let plus: C64 = (0..=r).map(|l| u[l][k]).sum();
            let minus: C64 = (0..=r).map(|l| u[l][k] * (-1f64).powi(l as i32)).sum();
            let ep = cr(2f64.powi(r as i32)) * e * (PI * s / 2.0).cos().powu(r as u32);
            let em = (2.0 * C64::i()).powu(r as u32)
                * (-1f64).powi(k as i32)
                * e
                * (PI * s / 2.0).sin().powu(r as u32);
            assert!((plus - ep).norm() < 1e-12 * ep.norm());
            assert!((minus - em).norm() < 1e-12 * em.norm());
        }
    }
}

#[test]
fn fs_sums_reproduce_every_euclidean_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for id in CaseId::EUCLIDEAN {
        for (r, d) in instances(id) {
            let case = FECase::euclidean(id, r, d).unwrap();
            for _ in 0..10 {
                let s = random_s(&mut rng, &case);
                let (derived, span) = fs_derived_matrix(&case, s).unwrap();
                let closed = fe_matrix(&case, s).unwrap();
                assert!(span < 1e-12, "{id} r={r} d={d}: rows leave the basis span ({span:e})");
                let dist = derived.relative_distance(&closed);
                assert!(dist < 1e-12, "{id} r={r} d={d} s={s}: {dist:e}");
            }
        }
    }
}

#[test]
fn displayed_forms_that_differ_from_fs_sums() {
    let s = C64::new(0.23, 0.41);
    let off = |id, r, d| {
        let case = FECase::euclidean(id, r, d).unwrap();
        let (derived, _) = fs_derived_matrix(&case, s).unwrap();
        derived.relative_distance(&fe_matrix_printed(&case, s).unwrap())
    };
    for (id, r, d) in [(CaseId::EuclA, 3, 4), (CaseId::EuclB1, 2, 5), (CaseId::EuclB3, 2, 3)] {
        assert!(off(id, r, d) < 1e-12);
    }
    for (id, r, d) in [
        (CaseId::EuclAPrime, 2, 2),
        (CaseId::EuclC0, 4, 1),
        (CaseId::EuclC1, 5, 1),
        (CaseId::EuclC2, 2, 1),
        (CaseId::EuclC3, 3, 1),
    ] {
        assert!(off(id, r, d) > 1e-2, "{id}");
    }
    // c1/c3 differ by exactly a factor 2
    for (id, r) in [(CaseId::EuclC1, 5), (CaseId::EuclC3, 7)] {
        let case = FECase::euclidean(id, r, 1).unwrap();
        let mut printed = fe_matrix_printed(&case, s).unwrap();
        printed.prefactor *= 2.0;
        assert!(printed.relative_distance(&fe_matrix(&case, s).unwrap()) < 1e-14);
    }
}

#[test]
fn corrected_c2_agrees_with_b1_at_rank_two() {
    let s = C64::new(-0.37, 0.28);
    let b1 = fe_matrix(&FECase::euclidean(CaseId::EuclB1, 2, 1).unwrap(), s).unwrap();
    let c2 = fe_matrix(&FECase::euclidean(CaseId::EuclC2, 2, 1).unwrap(), s).unwrap();
    assert!(b1.relative_distance(&c2) < 1e-14);
}

#[test]
fn scalar_cases() {
    let s = C64::new(0.3, 0.1);
    let case = FECase::scalar(CaseId::TypeIIIIVScalar, 8, 2, 4, 1).unwrap();
    let m = fe_matrix(&case, s).unwrap();
    let expect = C64::new(PI, 0.0).powc(-2.0 * s - 4.0) * gamma((2.0 * s + 8.0) / 2.0) / gamma(-s);
    assert!((m.matrix[0][0] - expect).norm() < 1e-13 * expect.norm());
    assert_eq!(m.matrix[0][0], m.matrix[1][1]);
    let case = FECase::scalar(CaseId::TypeIIScalar, 9, 3, 2, 3).unwrap();
    let m = fe_matrix(&case, s).unwrap();
    let pi = C64::new(PI, 0.0).powc(-3.0 * s - 4.5);
    let plus = pi * gamma_v(3, 2, s + 3.0) / gamma_v(3, 2, -s);
    let minus = C64::i().powu(3) * pi * gamma_v(3, 2, s + 4.0) / gamma_v(3, 2, 1.0 - s);
    assert!((m.matrix[0][0] - plus).norm() < 1e-13 * plus.norm());
    assert!((m.matrix[1][1] - minus).norm() < 1e-13 * minus.norm());
    assert!(matches!(
        fe_matrix(&case, cr(0.0)),
        Err(ZetaError::NearPole(_))
    ));
}

#[test]
fn gaussian_moment_on_line() {
    let mut f = GaussPoly::zero(1, PI);
    f.terms.insert(vec![0], 1.0);
    let z = zeta_direct(&ZetaSpace::real(), &f, cr(1.0), Sign::Plus).unwrap();
    assert!((z - cr(1.0 / PI)).norm() < 1e-12);
    let odd = HermiteFunction::new(vec![1], Kernel::TwoPi).to_gauss_poly();
    let z = zeta_direct(&ZetaSpace::real(), &odd, cr(0.8), Sign::Plus).unwrap();
    assert!(z.norm() < 1e-14);
}

#[test]
fn radial_quadrature_matches_gamma() {
    // ∫ |x|^s e^{−πx²} dx = π^{−(s+1)/2} Γ((s+1)/2)
    let f = HermiteFunction::new(vec![0], Kernel::TwoPi).to_gauss_poly();
    for s in [C64::new(0.4, 0.0), C64::new(1.3, 0.7), C64::new(0.05, -0.3)] {
        let z = zeta_direct(&ZetaSpace::real(), &f, s, Sign::Plus).unwrap();
        let expect = C64::new(PI, 0.0).powc(-(s + 1.0) / 2.0) * gamma((s + 1.0) / 2.0);
        assert!((z - expect).norm() < 1e-10 * expect.norm(), "{s}");
    }
}

#[test]
fn orbit_recombination_on_line() {
    for orders in [vec![0u32], vec![1], vec![3]] {
        let f = HermiteFunction::new(orders, Kernel::TwoPi).to_gauss_poly();
        let s = C64::new(0.6, 0.3);
        let [z0, z1] = orbit_integrals_line(&f, s).unwrap();
        let sp = ZetaSpace::real();
        let plus = zeta_direct(&sp, &f, s, Sign::Plus).unwrap();
        let minus = zeta_direct(&sp, &f, s, Sign::Minus).unwrap();
        assert!((plus - (z0 + z1)).norm() < 1e-14);
        assert!((minus - (z0 - z1)).norm() < 1e-14);
        let [ze, zo] = even_odd_from_orbits(&[z0, z1]);
        assert_eq!((ze, zo), (z0, z1));
    }
    let z = [cr(1.0), cr(2.0), cr(3.0), cr(4.0), cr(5.0)];
    assert_eq!(even_odd_from_orbits(&z), [cr(1.0 - 3.0 + 5.0), cr(2.0 - 4.0)]);
}

#[test]
fn gelfand_shilov_decomposition() {
    let sp = ZetaSpace::rpq(2, 1).unwrap();
    let s = C64::new(0.37, -0.6);
    for k in 0..20 {
        let x = [(k as f64 * 0.77).sin() * 2.0, (k as f64 * 1.3).cos(), (k as f64 * 0.4).sin() * 1.7];
        let p = sp.det_at(&x);
        let plus = det_power(p, s, Sign::Plus);
        let minus = det_power(p, s, Sign::Minus);
        assert!((plus - (p_plus_power(p, s) + p_minus_power(p, s))).norm() < 1e-14);
        assert!((minus - (p_plus_power(p, s) - p_minus_power(p, s))).norm() < 1e-14);
    }
}

#[test]
fn hermite_functions_are_fourier_eigenfunctions() {
    for kernel in [Kernel::TwoPi, Kernel::Unitary] {
        for k in 0..5u32 {
            let h = HermiteFunction::new(vec![k], kernel);
            let f = h.to_gauss_poly();
            let lam = h.fourier_eigenvalue();
            for x in [0.0, 0.31, -0.8, 1.4] {
                let w = kernel.phase();
                let g = |y: f64| C64::from_polar(1.0, w * x * y) * f.eval(&[y]);
                let v = integrate(&g, -12.0, 12.0, 1e-13, 1e-12).unwrap();
                let expect = lam * f.eval(&[x]);
                assert!((v - expect).norm() < 1e-9, "{kernel:?} k={k} x={x}");
            }
        }
    }
}

#[test]
fn ladder_factor_matches_symbolic_bernstein() {
    use sbdo_core::bernstein::bs_factor;
    use sbdo_core::jordan::{JordanAlgebra, Param};
    use sbdo_core::poly::rat;
    for (p, q) in [(1usize, 1usize), (2, 1), (1, 2)] {
        let alg = JordanAlgebra::rpq(p, q);
        let b = bs_factor(&alg, 2);
        let sp = ZetaSpace::rpq(p, q).unwrap();
        for (num, den) in [(3i64, 7i64), (-5, 3), (11, 2)] {
            let v = b
                .specialize(&[(Param::BigLambda.var(), rat(num, den))])
                .as_constant()
                .unwrap();
            let sigma = num as f64 / den as f64;
            let v: f64 = v.to_string().split('/').map(|t| t.parse::<f64>().unwrap()).fold(f64::NAN, |acc, t| if acc.is_nan() { t } else { acc / t });
            assert!((sp.bernstein_b(cr(sigma)).re - v).abs() < 1e-12);
        }
    }
}

#[test]
fn ladder_overlap_both_signs() {
    let spaces = [
        ZetaSpace::real(),
        ZetaSpace::rpq(1, 1).unwrap(),
        ZetaSpace::rpq(2, 1).unwrap(),
        ZetaSpace::rpq(1, 2).unwrap(),
        ZetaSpace::sym2(),
    ];
    for sp in spaces {
        let orders: Vec<u32> = (0..sp.n as u32).map(|j| (j * 2) % 3).collect();
        let f = HermiteFunction::new(orders, sp.kernel).to_gauss_poly();
        let sign = if sp.r % 2 == 0 { 1.0 } else { -1.0 };
        for sigma in [C64::new(0.6, 0.0), C64::new(0.45, 0.3)] {
            for eps in [Sign::Plus, Sign::Minus] {
                let direct = zeta_direct(&sp, &f, sigma, eps).unwrap();
                let up = zeta_direct(&sp, &sp.ladder_operator(&f), sigma + 1.0, eps.flip()).unwrap();
                let ladder = up * sign / sp.bernstein_b(sigma);
                assert!(
                    (direct - ladder).norm() < 1e-7 * direct.norm().max(1e-3),
                    "{} {eps:?} σ={sigma}: {direct} vs {ladder}",
                    sp.name
                );
            }
        }
    }
}

#[test]
fn ladder_round_trip_on_split_plane() {
    let sp = ZetaSpace::rpq(1, 1).unwrap();
    let mut f = GaussPoly::zero(2, PI);
    f.terms.insert(vec![0, 0], 1.0);
    f = f.add(&f.diff(0).scale(0.3));
    let down = zeta_numeric(&sp, &f, cr(-1.5), Sign::Plus).unwrap();
    assert_eq!(down.ladder_depth, 2);
    let l2 = sp.ladder_operator(&sp.ladder_operator(&f));
    let direct = zeta_direct(&sp, &l2, cr(0.5), Sign::Plus).unwrap();
    let b = sp.bernstein_b(cr(-1.5)) * sp.bernstein_b(cr(-0.5));
    assert!((down.value - direct / b).norm() < 1e-12 * direct.norm());
}

#[test]
fn ladder_refuses_bernstein_zero() {
    let sp = ZetaSpace::rpq(2, 1).unwrap();
    let f = HermiteFunction::new(vec![0, 0, 0], Kernel::Unitary).to_gauss_poly();
    assert!(matches!(
        zeta_numeric(&sp, &f, cr(-1.02), Sign::Plus),
        Err(ZetaError::NearPole(_))
    ));
    let r = fe_check(&sp, &HermiteFunction::new(vec![0, 0, 0], Kernel::Unitary), cr(0.5));
    assert!(matches!(r, Err(ZetaError::NearPole(_))));
}

fn fe(sp: &ZetaSpace, orders: Vec<u32>, s: C64) -> FeReport {
    fe_check(sp, &HermiteFunction::new(orders, sp.kernel), s).unwrap()
}

#[test]
fn functional_equation_real_line() {
    let sp = ZetaSpace::real();
    for k in [0u32, 1, 2, 3] {
        for s in [0.3, 0.7, 1.2] {
            let r = fe(&sp, vec![k], cr(s));
            assert!(r.residual <= 1e-6, "h{k} s={s}: {}", r.residual);
            assert!(r.lhs.iter().any(|z| z.norm() > 1e-3));
        }
    }
    let r = fe(&sp, vec![2], C64::new(0.4, 0.9));
    assert!(r.residual <= 1e-6);
}

#[test]
fn functional_equation_split_plane() {
    let sp = ZetaSpace::rpq(1, 1).unwrap();
    for orders in [vec![0u32, 0], vec![2, 0], vec![0, 4], vec![4, 2]] {
        for s in [0.4, 0.9] {
            let r = fe(&sp, orders.clone(), cr(s));
            assert!(r.residual <= 1e-4, "{orders:?} s={s}: {}", r.residual);
            assert!(r.lhs.iter().any(|z| z.norm() > 1e-3));
        }
    }
}

#[test]
fn functional_equation_three_dimensional() {
    for sp in [ZetaSpace::rpq(2, 1).unwrap(), ZetaSpace::rpq(1, 2).unwrap(), ZetaSpace::sym2()] {
        for orders in [vec![0u32, 0, 0], vec![2, 0, 0], vec![0, 2, 2]] {
            for s in [C64::new(0.5, 0.2), cr(0.3)] {
                let r = fe(&sp, orders.clone(), s);
                assert!(r.residual <= 1e-3, "{} {orders:?} s={s}: {}", sp.name, r.residual);
                assert!(r.lhs.iter().any(|z| z.norm() > 1e-3));
            }
        }
    }
}

#[test]
fn displayed_c_forms_fail_numerically() {
    // real line against the displayed c1 prefactor
    let sp = ZetaSpace::real();
    let f = HermiteFunction::new(vec![0], Kernel::TwoPi);
    let s = cr(0.7);
    let case = sp.fe_case();
    let good = fe_check(&sp, &f, s).unwrap();
    let printed = fe_matrix_printed(&case, s).unwrap();
    let g = f.to_gauss_poly();
    let wp = zeta_numeric(&sp, &g, -s - 1.0, Sign::Plus).unwrap().value;
    let wm = zeta_numeric(&sp, &g, -s - 1.0, Sign::Minus).unwrap().value;
    let rhs = printed.apply([(wp + wm) / 2.0, (wp - wm) / 2.0]);
    assert!((rhs[0] - good.lhs[0]).norm() > 0.4 * good.lhs[0].norm());

    // Sym(2) against the displayed c2 matrix
    let sp = ZetaSpace::sym2();
    let f = HermiteFunction::new(vec![0, 2, 0], Kernel::TwoPi);
    let case = FECase::euclidean(CaseId::EuclC2, 2, 1).unwrap();
    let good = fe_check(&sp, &f, s).unwrap();
    let g = f.to_gauss_poly();
    let wp = zeta_numeric(&sp, &g, -s - 1.5, Sign::Plus).unwrap().value;
    let wm = zeta_numeric(&sp, &g, -s - 1.5, Sign::Minus).unwrap().value;
    let corrected = fe_matrix(&case, s).unwrap().apply([wp, wm]);
    let printed = fe_matrix_printed(&case, s).unwrap().apply([wp, wm]);
    let err = |v: [C64; 2]| (0..2).map(|i| (v[i] - good.lhs[i]).norm()).fold(0.0, f64::max);
    let size = good.lhs[0].norm().max(good.lhs[1].norm());
    assert!(err(corrected) < 1e-8 * size);
    assert!(err(printed) > 1e-2 * size);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_reflection(re in -3.0f64..3.0, im in 0.05f64..2.0) {
        let z = C64::new(re, im);
        let lhs = gamma(z) * gamma(1.0 - z);
        let rhs = PI / (PI * z).sin();
        prop_assert!((lhs - rhs).norm() < 1e-11 * rhs.norm());
    }

    #[test]
    fn fs_rows_stay_in_basis_span(re in -2.0f64..2.0, im in -1.0f64..1.0, pick in 0usize..8) {
        let id = CaseId::EUCLIDEAN[pick];
        let (r, d) = instances(id)[0];
        let case = FECase::euclidean(id, r, d).unwrap();
        let s = C64::new(re, im);
        prop_assume!(fe_matrix(&case, s).is_ok());
        let (derived, span) = fs_derived_matrix(&case, s).unwrap();
        prop_assert!(span < 1e-11);
        prop_assert!(derived.relative_distance(&fe_matrix(&case, s).unwrap()) < 1e-11);
    }

    #[test]
    fn det_power_sign_rule(t in -5.0f64..5.0, re in -1.0f64..2.0, im in -1.0f64..1.0) {
        prop_assume!(t.abs() > 1e-6);
        let s = C64::new(re, im);
        let plus = det_power(t, s, Sign::Plus);
        let minus = det_power(t, s, Sign::Minus);
        prop_assert!((minus - plus * t.signum()).norm() < 1e-14 * plus.norm().max(1.0));
    }
}
