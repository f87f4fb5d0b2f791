//! Acceptance report: one line per criterion, nonzero exit on any failure.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbdo_core::bernstein::{bs_apply_in, w_space};
use sbdo_core::covariance::{
    bracket_table, check_intertwine_b, check_intertwine_f, expected_conformal_algebra, generators,
};
use sbdo_core::fischer::{fischer_pair, leibniz_expand, partial_op, taylor_expand, Polarity};
use sbdo_core::jordan::{Block, JordanAlgebra, JordanError, Param, CATALOG};
use sbdo_core::linalg;
use sbdo_core::poly::{int, rat, MPoly, Monomial, Rational, Var};
use sbdo_core::source::{
    build_b, build_d, build_f, classical_rc, closed_forms, proportional_bidiff, proportional_ops,
    symbol_theorem_check, verify_d,
};
use sbdo_core::zeta::{
    fe_check, fe_matrix, fs_derived_matrix, zeta_direct, CaseId, FECase, HermiteFunction, Sign,
    ZetaSpace,
};

const SEED: u64 = 20;
const FS_TOL: f64 = 1e-12;
const FE_TOL_LINE: f64 = 1e-6;
const FE_TOL_PLANE: f64 = 1e-4;
const FE_TOL_SPACE: f64 = 1e-3;
const FE_TIME: Duration = Duration::from_secs(60);
const LADDER_TOL: f64 = 1e-7;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn algebra(id: &str) -> JordanAlgebra {
    JordanAlgebra::from_id(id).expect("catalog id")
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    let mut slowest = Duration::ZERO;
    for id in ["R", "Rpq:1,1", "Rpq:2,1", "Rpq:2,2", "Sym2", "Sym3"] {
        let a = algebra(id);
        let t = Instant::now();
        let d = build_d(&a);
        total += verify_d(&a, &d, 4).map_err(|e| format!("{id}: {e}"))?;
        slowest = slowest.max(t.elapsed());
    }
    Ok(format!("{total} monomials, zero residual, slowest algebra {slowest:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut scalar: Option<Rational> = None;
    for (p, q) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
        let a = JordanAlgebra::rpq(p, q);
        let d = build_d(&a);
        ensure(d == closed_forms::d_rpq(&a), || format!("D differs on ({p},{q})"))?;
        let f = build_f(&a, &d);
        let cf = proportional_ops(&f, &closed_forms::f_rpq(&a))
            .ok_or_else(|| format!("F not proportional on ({p},{q})"))?;
        let cb = proportional_bidiff(&build_b(&a, &f, 1).b, &closed_forms::b1_rpq(&a))
            .ok_or_else(|| format!("B1 not proportional on ({p},{q})"))?;
        ensure(cf == cb && !cf.is_zero(), || format!("scalars {cf} and {cb} on ({p},{q})"))?;
        ensure(scalar.as_ref().is_none_or(|s| *s == cf), || format!("scalar changes on ({p},{q})"))?;
        scalar = Some(cf);
    }
    Ok(format!("D exact; F and B1 share scalar {}", scalar.unwrap()))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for id in ["R", "Rpq:1,1", "Rpq:2,1", "Rpq:1,2", "Rpq:2,2", "Sym2", "Sym3", "spin:4"] {
        let a = algebra(id);
        let w = w_space(&a);
        for p in &w.basis {
            bs_apply_in(&a, &w, p).map_err(|e| format!("{id}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} basis elements, exact"))
}

fn criterion_4() -> Outcome {
    let mut out = vec![];
    for id in ["R", "Rpq:1,1", "Rpq:2,1"] {
        let a = algebra(id);
        let f = build_f(&a, &build_d(&a));
        for k in 1..=2 {
            let c = symbol_theorem_check(&a, &build_b(&a, &f, k)).map_err(|e| format!("{id} k={k}: {e}"))?;
            ensure(!c.is_zero(), || format!("{id} k={k}: zero scalar"))?;
            out.push(format!("{id}/k{k}:{c}"));
        }
    }
    Ok(format!("scalars {}", out.join(" ")))
}

fn criterion_5() -> Outcome {
    let a = JordanAlgebra::real();
    let f = build_f(&a, &build_d(&a));
    let mut out = vec![];
    for k in 1..=3u32 {
        let b = build_b(&a, &f, k);
        let mut constant: Option<Rational> = None;
        for l in 1..=4 {
            for m in 1..=4 {
                let vals = [(Param::Lambda.var(), int(l)), (Param::Mu.var(), int(m))];
                let c = proportional_bidiff(&b.b.specialize(&vals), &classical_rc(&a, l, m, k))
                    .ok_or_else(|| format!("k={k} ({l},{m}) not proportional"))?;
                ensure(constant.as_ref().is_none_or(|x| *x == c), || format!("k={k}: constant varies at ({l},{m})"))?;
                constant = Some(c);
            }
        }
        out.push(format!("k{k}:{}", constant.unwrap()));
    }
    Ok(format!("constants {}", out.join(" ")))
}

fn criterion_6() -> Outcome {
    let mut checks = 0;
    for id in ["Rpq:1,1", "Rpq:2,1", "Rpq:2,2"] {
        let a = algebra(id);
        let gens = generators(&a).map_err(|e| format!("{id}: {e}"))?;
        let table = bracket_table(&a, &gens).map_err(|e| format!("{id}: {e}"))?;
        let (dim, compact) = expected_conformal_algebra(&a);
        let (pos, neg, zero) = linalg::inertia(&table.killing_form());
        ensure(table.jacobi_holds(), || format!("{id}: Jacobi"))?;
        ensure((pos + neg, neg, zero) == (dim, compact, 0), || {
            format!("{id}: Killing inertia ({pos},{neg},{zero})")
        })?;
        let f = build_f(&a, &build_d(&a));
        for (g, r) in check_intertwine_f(&a, &gens, &f) {
            ensure(r.is_zero(), || format!("{id}: F fails on {g}"))?;
            checks += 1;
        }
        for k in 1..=2 {
            let b = build_b(&a, &f, k);
            for (g, r) in check_intertwine_b(&a, &gens, &b.b, k) {
                ensure(r.is_zero(), || format!("{id}: B{k} fails on {g}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} generator residuals identically zero; bracket tables match"))
}

fn instances(id: CaseId) -> &'static [(usize, usize)] {
    match id {
        CaseId::EuclA => &[(2, 4), (2, 8), (3, 2), (3, 4), (3, 8), (4, 4), (5, 2)],
        CaseId::EuclAPrime => &[(2, 2), (2, 6), (4, 2), (6, 2)],
        CaseId::EuclB1 => &[(2, 1), (2, 5), (2, 9)],
        CaseId::EuclB3 => &[(2, 3), (2, 7)],
        CaseId::EuclC0 => &[(4, 1), (8, 1)],
        CaseId::EuclC1 => &[(1, 1), (5, 1), (9, 1)],
        CaseId::EuclC2 => &[(2, 1), (6, 1)],
        CaseId::EuclC3 => &[(3, 1), (7, 1)],
        _ => &[],
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for id in CaseId::EUCLIDEAN {
        for &(r, d) in instances(id) {
            let case = FECase::euclidean(id, r, d).map_err(|e| e.to_string())?;
            let mut done = 0;
            while done < 10 {
                let s = C64::new(rng.gen_range(-2.5..2.5), rng.gen_range(-1.0..1.0));
                let Ok(closed) = fe_matrix(&case, s) else { continue };
                let (derived, span) = fs_derived_matrix(&case, s).map_err(|e| e.to_string())?;
                let dist = derived.relative_distance(&closed).max(span);
                ensure(dist <= FS_TOL, || format!("{id} r={r} d={d} s={s}: {dist:e}"))?;
                worst = worst.max(dist);
                done += 1;
                n += 1;
            }
        }
    }
    Ok(format!("{n} evaluations over 8 cases, worst {worst:.1e} (tol {FS_TOL:e})"))
}

fn fe_group(sp: &ZetaSpace, fns: &[Vec<u32>], ss: &[C64], tol: f64) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for orders in fns {
        for &s in ss {
            let t = Instant::now();
            let r = fe_check(sp, &HermiteFunction::new(orders.clone(), sp.kernel), s)
                .map_err(|e| format!("{} {orders:?} s={s}: {e}", sp.name))?;
            let el = t.elapsed();
            ensure(r.residual <= tol, || format!("{} {orders:?} s={s}: {:e}", sp.name, r.residual))?;
            ensure(el <= FE_TIME, || format!("{} {orders:?} s={s}: {el:?}", sp.name))?;
            worst = worst.max(r.residual);
        }
    }
    Ok(worst)
}

fn criterion_8() -> Outcome {
    let re = |x: f64| C64::new(x, 0.0);
    let line = fe_group(
        &ZetaSpace::real(),
        &[vec![0], vec![2]],
        &[re(0.3), re(0.7), re(1.2)],
        FE_TOL_LINE,
    )?;
    let plane = fe_group(
        &ZetaSpace::rpq(1, 1).map_err(|e| e.to_string())?,
        &[vec![0, 0], vec![2, 0]],
        &[re(0.4), re(0.9)],
        FE_TOL_PLANE,
    )?;
    let space = fe_group(
        &ZetaSpace::rpq(2, 1).map_err(|e| e.to_string())?,
        &[vec![0, 0, 0], vec![2, 0, 0]],
        &[C64::new(0.5, 0.2), re(0.3)],
        FE_TOL_SPACE,
    )?;
    Ok(format!("worst residuals R {line:.1e}, R^(1,1) {plane:.1e}, R^(2,1) {space:.1e}"))
}

fn random_poly(rng: &mut ChaCha8Rng, a: &JordanAlgebra, deg: u8) -> MPoly {
    let mut p = MPoly::zero(a.ring());
    for _ in 0..5 {
        let mut m = Monomial::one(a.ring().width());
        let mut left = deg;
        for s in a.block_slots(Block::X) {
            let e = rng.gen_range(0..=left);
            m.0[s] = e;
            left -= e;
        }
        p.add_term(m, int(rng.gen_range(-5..=5)));
    }
    p
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    // Fischer adjunction
    for id in CATALOG {
        let a = algebra(id);
        for _ in 0..10 {
            let p = random_poly(&mut rng, &a, 4);
            let q = random_poly(&mut rng, &a, 3);
            let j = rng.gen_range(0..a.n);
            let xj = a.coord(Block::X, j);
            let dp = partial_op(&a, &xj, Block::X, Polarity::Fischer).apply(&p);
            ensure(fischer_pair(&a, &(&xj * &q), &p) == fischer_pair(&a, &q, &dp), || {
                format!("adjunction fails on {id}")
            })?;
        }
    }
    // Taylor and Leibniz
    for id in ["R", "Rpq:1,1", "Rpq:2,1", "Sym2", "Sym3"] {
        let a = algebra(id);
        let p = a.det(Block::X);
        let (x, y) = (a.coords(Block::X), a.coords(Block::Y));
        let map: HashMap<Var, MPoly> = (0..a.n).map(|j| (a.var(Block::X, j), &x[j] + &y[j])).collect();
        let mut sum = MPoly::zero(a.ring());
        for (b, c) in taylor_expand(&a, &p) {
            sum += &(&b * &c);
        }
        ensure(sum == p.substitute(&map).unwrap(), || format!("Taylor fails on {id}"))?;
        for _ in 0..5 {
            let f = random_poly(&mut rng, &a, 3);
            let g = random_poly(&mut rng, &a, 3);
            let direct = partial_op(&a, &p, Block::X, Polarity::Fischer).apply(&(&f * &g));
            ensure(leibniz_expand(&a, &p, &f, &g) == direct, || format!("Leibniz fails on {id}"))?;
        }
    }
    // Hua identity
    for id in CATALOG {
        let a = algebra(id);
        let mut checked = 0;
        while checked < 20 {
            let mut v = || -> Vec<Rational> {
                (0..a.n).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect()
            };
            let (x, y) = (v(), v());
            match a.hua_check(&x, &y) {
                Ok(true) => checked += 1,
                Ok(false) => return Err(format!("Hua fails on {id}")),
                Err(JordanError::Singular) => {}
                Err(e) => return Err(format!("{id}: {e}")),
            }
        }
    }
    // ladder overlap
    let mut worst: f64 = 0.0;
    for sp in [
        ZetaSpace::real(),
        ZetaSpace::rpq(1, 1).unwrap(),
        ZetaSpace::rpq(2, 1).unwrap(),
        ZetaSpace::sym2(),
    ] {
        let orders: Vec<u32> = (0..sp.n as u32).map(|_| rng.gen_range(0..3)).collect();
        let f = HermiteFunction::new(orders, sp.kernel).to_gauss_poly();
        let sign = if sp.r % 2 == 0 { 1.0 } else { -1.0 };
        for sigma in [C64::new(0.6, 0.0), C64::new(0.45, 0.3)] {
            for eps in [Sign::Plus, Sign::Minus] {
                let direct = zeta_direct(&sp, &f, sigma, eps).map_err(|e| e.to_string())?;
                let up = zeta_direct(&sp, &sp.ladder_operator(&f), sigma + 1.0, eps.flip())
                    .map_err(|e| e.to_string())?;
                let ladder = up * sign / sp.bernstein_b(sigma);
                let rel = (direct - ladder).norm() / direct.norm().max(1e-3);
                ensure(rel <= LADDER_TOL, || format!("ladder overlap {} {eps:?} σ={sigma}: {rel:e}", sp.name))?;
                worst = worst.max(rel);
            }
        }
    }
    Ok(format!("seed {SEED}; adjunction, Taylor, Leibniz, Hua exact; ladder worst {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 9] = [
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
        criterion_8, criterion_9,
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let t = Instant::now();
        match c() {
            Ok(msg) => println!("criterion {}: PASS ({msg}) [{:.2?}]", i + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL ({msg}) [{:.2?}]", i + 1, t.elapsed());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
