use std::collections::HashMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbdo_core::bernstein::{bs_apply_in, double_sharp_scalar, sharp_matches_points, w_space};
use sbdo_core::covariance::{
    bracket_table, check_intertwine_b, check_intertwine_f, check_multiplication,
    check_restriction, expected_conformal_algebra, generators,
};
use sbdo_core::fischer::{
    fischer_pair, leibniz_expand, partial_op, taylor_expand, translate_span, Polarity,
};
use sbdo_core::jordan::{Block, JordanAlgebra, Kind, Param};
use sbdo_core::linalg;
use sbdo_core::poly::{int, MPoly, Monomial, Var};
use sbdo_core::source::{
    build_b, build_d, build_f, classical_rc, closed_forms, proportional_bidiff, proportional_ops,
    symbol_ck, symbol_ck_recurrence, symbol_theorem_check, verify_d, verify_d_direct,
    verify_d_operator,
};

use crate::report::Report;

fn failing<T>(rows: Vec<(String, T)>, zero: impl Fn(&T) -> bool) -> Vec<String> {
    rows.into_iter().filter(|r| !zero(&r.1)).map(|r| r.0).collect()
}

fn verdict(r: &mut Report, id: &str, bad: Vec<String>, total: usize) {
    if bad.is_empty() {
        r.push(id, true, format!("{total} generators, zero residual"));
    } else {
        r.push(id, false, format!("nonzero residual on {}", bad.join(", ")));
    }
}

pub fn source(alg: &JordanAlgebra, degree: u32) -> Report {
    let mut r = Report::new("verify source", &alg.id);
    let d = build_d(alg);
    r.from_result("source.identity", verify_d(alg, &d, degree), |n| {
        format!("{n} monomials of degree <= {degree}")
    });
    let low = degree.min(2);
    r.from_result("source.identity_direct", verify_d_direct(alg, &d, low), |n| {
        format!("{n} monomials of degree <= {low}")
    });
    let op_ok = verify_d_operator(alg, &d);
    r.push("source.operator_form", op_ok, "coefficientwise comparison of the conjugated operator");
    if matches!(alg.kind, Kind::Spin { .. }) {
        r.push("source.closed_form_d", d == closed_forms::d_rpq(alg), "exact coefficient match");
        let f = build_f(alg, &d);
        let cf = proportional_ops(&f, &closed_forms::f_rpq(alg));
        let cb = proportional_bidiff(&build_b(alg, &f, 1).b, &closed_forms::b1_rpq(alg));
        let ok = cf.is_some() && cf == cb;
        let detail = match (&cf, &cb) {
            (Some(a), Some(b)) => format!("scalars F {a}, B1 {b}"),
            _ => "not proportional".into(),
        };
        r.push("source.closed_form_f_b1", ok, detail);
    }
    r.finish()
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

pub fn fischer(alg: &JordanAlgebra, seed: u64, samples: usize) -> Report {
    let mut r = Report::new("verify fischer", &alg.id);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let det = alg.det(Block::X);
    let w = translate_span(alg, &det);

    let mut dual_ok = true;
    for (i, b) in w.basis.iter().enumerate() {
        for (j, d) in w.dual.iter().enumerate() {
            let v = fischer_pair(alg, d, b);
            let want = if i == j { MPoly::one(alg.ring()) } else { MPoly::zero(alg.ring()) };
            dual_ok &= v == want;
        }
    }
    r.push("fischer.dual_basis", dual_ok, format!("dim W_k = {:?}", w.dims()));

    let minors_ok = alg.minors(Block::X).iter().enumerate().all(|(k, m)| {
        w.coordinates(alg, m).is_some_and(|c| {
            c.iter().zip(&w.degrees).all(|(x, &d)| x.is_zero() || d as usize == k + 1)
        })
    });
    r.push("fischer.minors_in_w", minors_ok, "principal minors lie in the graded pieces");

    let (mut sym, mut adj, mut leib) = (true, true, true);
    for _ in 0..samples {
        let p = random_poly(&mut rng, alg, 4);
        let q = random_poly(&mut rng, alg, 3);
        sym &= fischer_pair(alg, &p, &q) == fischer_pair(alg, &q, &p);
        let norm = fischer_pair(alg, &p, &p).as_constant().unwrap_or_default();
        sym &= norm >= Zero::zero() && (norm.is_zero() == p.is_zero());
        let j = rng.gen_range(0..alg.n);
        let xj = alg.coord(Block::X, j);
        let dp = partial_op(alg, &xj, Block::X, Polarity::Fischer).apply(&p);
        adj &= fischer_pair(alg, &(&xj * &q), &p) == fischer_pair(alg, &q, &dp);
        let f = random_poly(&mut rng, alg, 3);
        let direct = partial_op(alg, &det, Block::X, Polarity::Fischer).apply(&(&f * &q));
        leib &= leibniz_expand(alg, &det, &f, &q) == direct;
    }
    r.push("fischer.symmetric_positive", sym, format!("{samples} random pairs, seed {seed}"));
    r.push("fischer.adjunction", adj, format!("{samples} random pairs, seed {seed}"));
    r.push("fischer.leibniz", leib, format!("{samples} random pairs, seed {seed}"));

    let (x, y) = (alg.coords(Block::X), alg.coords(Block::Y));
    let map: HashMap<Var, MPoly> = (0..alg.n).map(|j| (alg.var(Block::X, j), &x[j] + &y[j])).collect();
    let mut sum = MPoly::zero(alg.ring());
    for (b, c) in taylor_expand(alg, &det) {
        sum += &(&b * &c);
    }
    r.push("fischer.taylor", sum == det.substitute(&map).unwrap(), "det(x+y) reassembled");
    r.finish()
}

pub fn bernstein(alg: &JordanAlgebra) -> Report {
    let mut r = Report::new("verify bernstein", &alg.id);
    let w = w_space(alg);
    for (i, p) in w.basis.iter().enumerate() {
        let id = format!("bernstein.w{:02}", i);
        match bs_apply_in(alg, &w, p) {
            Ok(c) => {
                let pts = sharp_matches_points(alg, p, &c.sharp, 10);
                r.push(id, pts, format!("k={} p={} sharp={} b(0)={}", c.k, p, c.sharp, c.proportionality));
            }
            Err(e) => r.push(id, false, e.to_string()),
        }
    }
    let ds: Vec<_> = w.basis.iter().map(|p| double_sharp_scalar(alg, p)).collect();
    let ok = ds.iter().all(|c| c.as_ref().is_some_and(|c| !c.is_zero()));
    r.push("bernstein.double_sharp", ok, format!("{} basis elements", ds.len()));
    r.finish()
}

pub fn covariance(alg: &JordanAlgebra, k: u32) -> Report {
    let mut r = Report::new("verify covariance", &alg.id);
    let gens = match generators(alg) {
        Ok(g) => g,
        Err(e) => {
            r.push("covariance.generators", false, e.to_string());
            return r.finish();
        }
    };
    let (dim, compact) = expected_conformal_algebra(alg);
    r.push("covariance.generators", gens.len() == dim, format!("{} generators, expected {dim}", gens.len()));
    match bracket_table(alg, &gens) {
        Ok(t) => {
            let (pos, neg, zero) = linalg::inertia(&t.killing_form());
            r.push("covariance.jacobi", t.jacobi_holds(), "structure constants");
            r.push(
                "covariance.killing",
                (pos + neg, neg, zero) == (dim, compact, 0),
                format!("inertia ({pos},{neg},{zero}), expected compact part {compact}"),
            );
        }
        Err(e) => r.push("covariance.brackets", false, e.to_string()),
    }
    let n = gens.len();
    verdict(&mut r, "covariance.restriction", failing(check_restriction(alg, &gens), |b| b.is_zero()), n);
    verdict(&mut r, "covariance.multiplication", failing(check_multiplication(alg, &gens), |o| o.is_zero()), n);
    let f = build_f(alg, &build_d(alg));
    verdict(&mut r, "covariance.source_f", failing(check_intertwine_f(alg, &gens, &f), |o| o.is_zero()), n);
    for j in 1..=k {
        let b = build_b(alg, &f, j);
        let bad = failing(check_intertwine_b(alg, &gens, &b.b, j), |b| b.is_zero());
        verdict(&mut r, &format!("covariance.bracket_k{j}"), bad, n);
    }
    r.finish()
}

fn swap(alg: &JordanAlgebra, p: &MPoly) -> MPoly {
    let moved = alg.rename(p, &[(Block::Xi, Block::Zeta), (Block::Zeta, Block::Xi)]);
    let map: HashMap<Var, MPoly> = [
        (Param::Lambda.var(), alg.param(Param::Mu)),
        (Param::Mu.var(), alg.param(Param::Lambda)),
    ]
    .into_iter()
    .collect();
    moved.substitute(&map).unwrap()
}

pub fn symbols(alg: &JordanAlgebra, k: u32) -> Report {
    let mut r = Report::new("verify symbols", &alg.id);
    let d = build_d(alg);
    let f = build_f(alg, &d);
    for j in 1..=k {
        let c = symbol_ck(alg, j);
        r.push(
            format!("symbols.recurrence_k{j}"),
            symbol_ck_recurrence(alg, &d, j) == c,
            "iterated D against the Rodrigues-type formula",
        );
        let sign = if (alg.r as u32 * j) % 2 == 1 { int(-1) } else { int(1) };
        r.push(format!("symbols.swap_k{j}"), swap(alg, &c) == c.scale(&sign), format!("sign {sign}"));
        let b = build_b(alg, &f, j);
        r.from_result(&format!("symbols.theorem_k{j}"), symbol_theorem_check(alg, &b), |c| {
            format!("scalar {c}")
        });
        if alg.n == 1 {
            let mut consts = vec![];
            for l in 1..=4 {
                for m in 1..=4 {
                    let vals = [(Param::Lambda.var(), int(l)), (Param::Mu.var(), int(m))];
                    consts.push(proportional_bidiff(&b.b.specialize(&vals), &classical_rc(alg, l, m, j)));
                }
            }
            let ok = consts[0].is_some() && consts.iter().all(|c| *c == consts[0]);
            let detail = match &consts[0] {
                Some(c) if ok => format!("constant {c} on (l,m) in 1..4"),
                _ => "no single constant".into(),
            };
            r.push(format!("symbols.rankin_cohen_k{j}"), ok, detail);
        }
    }
    r.finish()
}
