//! The operator `D_{s,t}`, its Fourier conjugate `F_{λ,μ}`, iterates,
//! generalized Rankin–Cohen operators and their symbols.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::bernstein::{bs_factor_at, det_difference_op, sharp_in, w_space};
use crate::fischer::{partial_op, taylor_expand, DualBasisPair, Polarity};
use crate::jordan::{Block, JordanAlgebra, Param};
use crate::poly::{int, rat, MPoly, Monomial, Rational, Var};
use crate::weyl::{BiDiffOp, DerivativeCache, MultiIndex, TwistedElement, WeylOp};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SourceError {
    #[error("identity fails on monomial {0}")]
    Residual(String),
    #[error("operators are not proportional: {0}")]
    NotProportional(String),
}

/// `X_p(E)` with `p(∂)∘det^E = det^{E−1}∘X_p(E)` on block `b`, for `p ∈ W`
/// given in block `x`.
pub fn twist_operator(
    alg: &JordanAlgebra,
    w: &DualBasisPair,
    p: &MPoly,
    b: Block,
    e: &MPoly,
) -> WeylOp {
    let mut op = WeylOp::zero(alg.ring());
    let e_minus_one = e - &MPoly::one(alg.ring());
    for (ej, cj) in taylor_expand(alg, p) {
        let k = ej.total_degree().unwrap_or(0);
        let sharp = sharp_in(alg, w, &ej).expect("derivatives of W stay in W");
        let coeff = &bs_factor_at(alg, k, &e_minus_one) * &alg.rename(&sharp, &[(Block::X, b)]);
        let d = partial_op(alg, &cj, b, Polarity::Trace);
        op = op.add(&d.left_mul(&coeff));
    }
    op
}

/// `D_{s,t}` in the blocks `(ξ, ζ)` with symbolic `s, t`.
pub fn build_d(alg: &JordanAlgebra) -> WeylOp {
    let w = w_space(alg);
    let s = alg.param(Param::S);
    let t = alg.param(Param::T);
    let r = alg.r as u32;
    let mut d = WeylOp::zero(alg.ring());
    for (bi, qi) in taylor_expand(alg, &alg.det(Block::X)) {
        let ki = bi.total_degree().unwrap_or(0);
        let qi = alg.rename(&qi, &[(Block::Y, Block::X)]);
        let xop = twist_operator(alg, &w, &bi, Block::Xi, &s);
        let yop = twist_operator(alg, &w, &qi, Block::Zeta, &t);
        let mut term = xop.compose(&yop);
        if (r - ki) % 2 == 1 {
            term = term.scale(&-Rational::one());
        }
        d = d.add(&term);
    }
    d
}

/// All monomials of degree `≤ degree` in the given blocks.
pub fn monomials(alg: &JordanAlgebra, blocks: &[Block], degree: u32) -> Vec<MPoly> {
    let slots: Vec<usize> = blocks.iter().flat_map(|&b| alg.block_slots(b)).collect();
    let mut out = vec![];
    let mut exps = vec![0u8; slots.len()];
    fn rec(
        i: usize,
        left: u32,
        exps: &mut Vec<u8>,
        slots: &[usize],
        alg: &JordanAlgebra,
        out: &mut Vec<MPoly>,
    ) {
        if i == slots.len() {
            let mut m = Monomial::one(alg.ring().width());
            for (k, &s) in slots.iter().enumerate() {
                m.0[s] = exps[k];
            }
            out.push(MPoly::from_terms(alg.ring(), [(m, Rational::one())]));
            return;
        }
        for e in 0..=left {
            exps[i] = e as u8;
            rec(i + 1, left - e, exps, slots, alg, out);
        }
        exps[i] = 0;
    }
    rec(0, degree, &mut exps, &slots, alg, &mut out);
    out
}

/// `det^{−s}det^{−t}∘det(∂ξ−∂ζ)∘det^s det^t = Σ_γ det(ξ)^{−r}det(ζ)^{−r} K_γ ∂^γ`
/// in the blocks `(ξ, ζ)`, from the Leibniz rule on shared derivatives of
/// `det(ξ)^s det(ζ)^t`. Returns the pairs `(γ, K_γ)`.
pub fn conjugated_difference(alg: &JordanAlgebra) -> Vec<(MultiIndex, MPoly)> {
    let lhs_op = det_difference_op(alg, Block::Xi, Block::Zeta);
    let start = TwistedElement::det_powers(
        alg,
        &[(Block::Xi, alg.param(Param::S), 0), (Block::Zeta, alg.param(Param::T), 0)],
        MPoly::one(alg.ring()),
    );
    let r = alg.r as i64;
    let mut cache = DerivativeCache::new(&start);
    let mut acc: BTreeMap<MultiIndex, MPoly> = BTreeMap::new();
    for (alpha, c) in lhs_op.terms() {
        let mut gamma = MultiIndex::from_elem(0, alpha.len());
        loop {
            let delta: MultiIndex = alpha.iter().zip(&gamma).map(|(a, g)| a - g).collect();
            let mut binom = Rational::one();
            for (a, g) in alpha.iter().zip(&gamma) {
                binom *= Rational::from(binomial(*a as u64, *g as u64));
            }
            let q = cache
                .get(&delta)
                .q_at_offsets(&[-r, -r])
                .expect("offsets stay above −r");
            let term = (c * &q).scale(&binom);
            let entry = acc
                .entry(gamma.clone())
                .or_insert_with(|| MPoly::zero(alg.ring()));
            *entry += &term;
            // next γ ≤ α in mixed radix
            let mut i = 0;
            while i < gamma.len() {
                if gamma[i] < alpha[i] {
                    gamma[i] += 1;
                    break;
                }
                gamma[i] = 0;
                i += 1;
            }
            if i == gamma.len() {
                break;
            }
        }
    }
    acc.into_iter().filter(|(_, k)| !k.is_zero()).collect()
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// `det(ξ)^{r−1} det(ζ)^{r−1}`.
fn twist_normalizer(alg: &JordanAlgebra) -> MPoly {
    let r = alg.r as u32 - 1;
    &alg.det(Block::Xi).pow(r) * &alg.det(Block::Zeta).pow(r)
}

/// Checks `det(∂ξ−∂ζ)[det(ξ)^s det(ζ)^t f] = det(ξ)^{s−1}det(ζ)^{t−1} D f`
/// for every monomial `f` of degree `≤ degree`; returns the number checked.
pub fn verify_d(alg: &JordanAlgebra, d: &WeylOp, degree: u32) -> Result<usize, SourceError> {
    let norm = twist_normalizer(alg);
    let mut k = vec![];
    for (gamma, kg) in conjugated_difference(alg) {
        let Some(q) = kg.div_exact(&norm) else {
            return Err(SourceError::Residual(format!("non-polynomial coefficient at {gamma:?}")));
        };
        k.push((gamma, q));
    }
    let monos = monomials(alg, &[Block::Xi, Block::Zeta], degree);
    let bad = monos.par_iter().find_any(|f| {
        let mut lhs = MPoly::zero(alg.ring());
        for (gamma, kg) in &k {
            let df = f.diff_multi(gamma);
            if !df.is_zero() {
                lhs += &(kg * &df);
            }
        }
        lhs != d.apply(f)
    });
    match bad {
        Some(f) => Err(SourceError::Residual(f.to_text())),
        None => Ok(monos.len()),
    }
}

/// The same identity as an equality of operators: every coefficient of the
/// conjugated difference operator matches `det(ξ)^{r−1}det(ζ)^{r−1}` times
/// the matching coefficient of `D`.
pub fn verify_d_operator(alg: &JordanAlgebra, d: &WeylOp) -> bool {
    let k = conjugated_difference(alg);
    let norm = twist_normalizer(alg);
    let nonzero = d.terms().filter(|(_, c)| !c.is_zero()).count();
    nonzero == k.len()
        && k.iter()
            .all(|(gamma, kg)| *kg == &norm * &d.coefficient(gamma))
}

/// Reference check straight from the twisted calculus, one monomial at a time.
pub fn verify_d_direct(alg: &JordanAlgebra, d: &WeylOp, degree: u32) -> Result<usize, SourceError> {
    let lhs_op = det_difference_op(alg, Block::Xi, Block::Zeta);
    let s = alg.param(Param::S);
    let t = alg.param(Param::T);
    let monos = monomials(alg, &[Block::Xi, Block::Zeta], degree);
    let bad = monos.par_iter().find_any(|f| {
        let start = TwistedElement::det_powers(
            alg,
            &[(Block::Xi, s.clone(), 0), (Block::Zeta, t.clone(), 0)],
            (*f).clone(),
        );
        let lhs = lhs_op.apply_twisted(&start);
        let rhs = TwistedElement::det_powers(
            alg,
            &[(Block::Xi, s.clone(), -1), (Block::Zeta, t.clone(), -1)],
            d.apply(f),
        );
        !lhs.equals(&rhs)
    });
    match bad {
        Some(f) => Err(SourceError::Residual(f.to_text())),
        None => Ok(monos.len()),
    }
}

fn shift_map(alg: &JordanAlgebra, pairs: &[(Param, MPoly)]) -> HashMap<Var, MPoly> {
    let _ = alg;
    pairs.iter().map(|(p, v)| (p.var(), v.clone())).collect()
}

/// `n/r` as a rational.
pub fn n_over_r(alg: &JordanAlgebra) -> Rational {
    rat(alg.n as i64, alg.r as i64)
}

/// `F_{λ,μ}`: Fourier conjugate of `D_{s,t}` at `s = λ−n/r+1, t = μ−n/r+1`.
pub fn build_f(alg: &JordanAlgebra, d: &WeylOp) -> WeylOp {
    let shift = alg.constant(int(1) - n_over_r(alg));
    let map = shift_map(
        alg,
        &[
            (Param::S, &alg.param(Param::Lambda) + &shift),
            (Param::T, &alg.param(Param::Mu) + &shift),
        ],
    );
    d.substitute_params(&map).fourier(alg, true)
}

/// `λ ↦ λ+k, μ ↦ μ+k`.
pub fn shift_weights(alg: &JordanAlgebra, op: &WeylOp, k: i64) -> WeylOp {
    let c = alg.constant(int(k));
    let map = shift_map(
        alg,
        &[
            (Param::Lambda, &alg.param(Param::Lambda) + &c),
            (Param::Mu, &alg.param(Param::Mu) + &c),
        ],
    );
    op.substitute_params(&map)
}

/// `F^{(k)} = F_{λ+k−1,μ+k−1} ∘ ⋯ ∘ F_{λ,μ}`.
pub fn iterate_f(alg: &JordanAlgebra, f: &WeylOp, k: u32) -> WeylOp {
    let mut acc = WeylOp::identity(alg.ring());
    for j in 0..k {
        acc = shift_weights(alg, f, j as i64).compose(&acc);
    }
    acc
}

#[derive(Clone, Debug)]
pub struct RCOperator {
    pub k: u32,
    pub b: BiDiffOp,
    pub symbol: MPoly,
}

/// `B^{(k)} = res ∘ F^{(k)}`.
pub fn build_b(alg: &JordanAlgebra, f: &WeylOp, k: u32) -> RCOperator {
    let fk = iterate_f(alg, f, k);
    let b = BiDiffOp::from_restriction(alg, &fk);
    let symbol = b.symbol(alg);
    RCOperator { k, b, symbol }
}

/// `c^{(k)}_{λ,μ}(ξ,ζ)` from `det(∂ξ−∂ζ)^k[det(ξ)^{λ+k}det(ζ)^{μ+k}]`.
pub fn symbol_ck(alg: &JordanAlgebra, k: u32) -> MPoly {
    let op = det_difference_op(alg, Block::Xi, Block::Zeta);
    let mut e = TwistedElement::det_powers(
        alg,
        &[
            (Block::Xi, alg.param(Param::Lambda), k as i64),
            (Block::Zeta, alg.param(Param::Mu), k as i64),
        ],
        MPoly::one(alg.ring()),
    );
    for _ in 0..k {
        e = op.apply_twisted(&e);
    }
    e.q_at_offsets(&[0, 0]).expect("offsets return to zero")
}

/// `c^{(k)}_{λ,μ} = D_{λ+1,μ+1}(c^{(k−1)}_{λ+1,μ+1})`.
pub fn symbol_ck_recurrence(alg: &JordanAlgebra, d: &WeylOp, k: u32) -> MPoly {
    let one = alg.constant(int(1));
    let d_shift = d.substitute_params(&shift_map(
        alg,
        &[
            (Param::S, &alg.param(Param::Lambda) + &one),
            (Param::T, &alg.param(Param::Mu) + &one),
        ],
    ));
    let mut c = MPoly::one(alg.ring());
    for _ in 0..k {
        let shifted = c
            .substitute(&shift_map(
                alg,
                &[
                    (Param::Lambda, &alg.param(Param::Lambda) + &one),
                    (Param::Mu, &alg.param(Param::Mu) + &one),
                ],
            ))
            .unwrap();
        c = d_shift.apply(&shifted);
    }
    c
}

/// `λ ↦ λ+a, μ ↦ μ+a` on a polynomial.
pub fn shift_poly_weights(alg: &JordanAlgebra, p: &MPoly, a: &Rational) -> MPoly {
    let c = alg.constant(a.clone());
    p.substitute(&shift_map(
        alg,
        &[
            (Param::Lambda, &alg.param(Param::Lambda) + &c),
            (Param::Mu, &alg.param(Param::Mu) + &c),
        ],
    ))
    .unwrap()
}

/// Rational `c` with `a = c·b`, if one exists.
pub fn proportional(a: &MPoly, b: &MPoly) -> Option<Rational> {
    if b.is_zero() {
        return a.is_zero().then(Rational::one);
    }
    let (m, cb) = b.leading()?;
    let ca = a
        .terms()
        .find(|(ma, _)| *ma == m)
        .map(|(_, c)| c.clone())?;
    let ratio = ca / cb;
    (ratio != Rational::zero() && *a == b.scale(&ratio)).then_some(ratio)
}

/// Rational `c` with `a = c·b` for operators.
pub fn proportional_ops(a: &WeylOp, b: &WeylOp) -> Option<Rational> {
    let (idx, cb) = b.terms().next()?;
    let ca = a.coefficient(idx);
    let ratio = proportional(&ca, cb)?;
    (a == &b.scale(&ratio)).then_some(ratio)
}

/// Symbol theorem: returns the scalar `c` with
/// `symbol(B^{(k)}) = c · c^{(k)}_{λ−n/r, μ−n/r}`.
pub fn symbol_theorem_check(alg: &JordanAlgebra, b: &RCOperator) -> Result<Rational, SourceError> {
    let ck = symbol_ck(alg, b.k);
    let shifted = shift_poly_weights(alg, &ck, &-n_over_r(alg));
    proportional(&b.symbol, &shifted).ok_or_else(|| {
        SourceError::NotProportional(format!("symbol of B^({}) vs shifted c^({})", b.k, b.k))
    })
}

fn binom_rat(n: i64, k: i64) -> Rational {
    if k < 0 || k > n {
        return Rational::zero();
    }
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(b)
}

/// `Σ_{a+b=k} (−1)^a C(ℓ+k−1, b) C(m+k−1, a) ∂x^a ∂y^b` on the line.
pub fn classical_rc(alg: &JordanAlgebra, l: i64, m: i64, k: u32) -> BiDiffOp {
    assert_eq!(alg.n, 1);
    let mut op = BiDiffOp::zero(alg);
    let k = k as i64;
    for a in 0..=k {
        let b = k - a;
        let c = binom_rat(l + k - 1, b) * binom_rat(m + k - 1, a);
        let c = if a % 2 == 1 { -c } else { c };
        let ia: MultiIndex = MultiIndex::from_elem(a as u8, 1);
        let ib: MultiIndex = MultiIndex::from_elem(b as u8, 1);
        op.add_term(ia, ib, alg.constant(c));
    }
    op
}

/// Rational `c` with `a = c·b` for bi-differential operators.
pub fn proportional_bidiff(a: &BiDiffOp, b: &BiDiffOp) -> Option<Rational> {
    proportional_ops(&a.lift(), &b.lift())
}

/// Closed forms on `ℝ^{p,q}` in the `(x,y)`/`(ξ,ζ)` coordinates of the spin model.
pub mod closed_forms {
    use super::*;

    fn signs(alg: &JordanAlgebra) -> Vec<Rational> {
        let p = match alg.kind {
            crate::jordan::Kind::Spin { p, .. } => p,
            _ => panic!("closed forms exist for ℝ^{{p,q}} only"),
        };
        (0..alg.n).map(|j| if j < p { int(1) } else { int(-1) }).collect()
    }

    /// `P(a,b) = Σ ε_j a_j b_j` on two polynomial vectors.
    fn form(eps: &[Rational], a: &[MPoly], b: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero(a[0].arena());
        for j in 0..eps.len() {
            out += &(&a[j] * &b[j]).scale(&eps[j]);
        }
        out
    }

    fn deriv(alg: &JordanAlgebra, idx: &[(Block, usize, u8)]) -> WeylOp {
        let mut i = MultiIndex::from_elem(0, alg.ring().ngeo());
        for &(b, j, e) in idx {
            i[alg.block_slots(b).start + j] += e;
        }
        let mut op = WeylOp::zero(alg.ring());
        op.add_term(i, MPoly::one(alg.ring()));
        op
    }

    /// `P(∂_a + c∂_b)` as an operator.
    fn p_of_partials(alg: &JordanAlgebra, a: Block, b: Option<(Block, Rational)>) -> WeylOp {
        let eps = signs(alg);
        let mut op = WeylOp::zero(alg.ring());
        for j in 0..alg.n {
            let da = deriv(alg, &[(a, j, 1)]);
            let lin = match &b {
                None => da,
                Some((bb, c)) => da.add(&deriv(alg, &[(*bb, j, 1)]).scale(c)),
            };
            op = op.add(&lin.compose(&lin).scale(&eps[j]));
        }
        op
    }

    fn mixed(alg: &JordanAlgebra, a: Block, b: Block) -> WeylOp {
        let eps = signs(alg);
        let mut op = WeylOp::zero(alg.ring());
        for j in 0..alg.n {
            op = op.add(&deriv(alg, &[(a, j, 1), (b, j, 1)]).scale(&eps[j]));
        }
        op
    }

    /// `D_{s,t}` on `(ξ, ζ)`.
    pub fn d_rpq(alg: &JordanAlgebra) -> WeylOp {
        let eps = signs(alg);
        let n = int(alg.n as i64);
        let (xi, ze) = (alg.coords(Block::Xi), alg.coords(Block::Zeta));
        let (s, t) = (alg.param(Param::S), alg.param(Param::T));
        let px = form(&eps, &xi, &xi);
        let py = form(&eps, &ze, &ze);
        let pxy = form(&eps, &xi, &ze);
        let lap = p_of_partials(alg, Block::Xi, Some((Block::Zeta, int(-1))));
        let mut op = lap.left_mul(&(&px * &py));
        let mut e1 = WeylOp::zero(alg.ring());
        let mut e2 = WeylOp::zero(alg.ring());
        for j in 0..alg.n {
            let dd = deriv(alg, &[(Block::Xi, j, 1)]).sub(&deriv(alg, &[(Block::Zeta, j, 1)]));
            e1 = e1.add(&dd.left_mul(&xi[j]));
            e2 = e2.add(&dd.scale(&int(-1)).left_mul(&ze[j]));
        }
        op = op.add(&e1.left_mul(&(&s * &py).scale(&int(4))));
        op = op.add(&e2.left_mul(&(&t * &px).scale(&int(4))));
        let two = alg.constant(int(2));
        let c_t = &(&t.scale(&int(2)) - &two) + &alg.constant(n.clone());
        let c_s = &(&s.scale(&int(2)) - &two) + &alg.constant(n);
        let zero_order = &(&(&(&t.scale(&int(2)) * &c_t) * &px) - &(&(&s * &t).scale(&int(8)) * &pxy))
            + &(&(&s.scale(&int(2)) * &c_s) * &py);
        op.add(&WeylOp::multiplication(&zero_order))
    }

    fn shifted_weight(alg: &JordanAlgebra, p: Param) -> MPoly {
        // −w + n/2 − 1
        &(-&alg.param(p)) + &alg.constant(rat(alg.n as i64, 2) - int(1))
    }

    /// `F_{λ,μ}` on `(x, y)`, with the second first-order term read as
    /// `Σ(y_j−x_j)∂y_j P(∂x)`.
    pub fn f_rpq(alg: &JordanAlgebra) -> WeylOp {
        let eps = signs(alg);
        let (x, y) = (alg.coords(Block::X), alg.coords(Block::Y));
        let (lam, mu) = (alg.param(Param::Lambda), alg.param(Param::Mu));
        let a = shifted_weight(alg, Param::Lambda);
        let b = shifted_weight(alg, Param::Mu);
        let diff: Vec<MPoly> = x.iter().zip(&y).map(|(u, v)| u - v).collect();
        let pdx = p_of_partials(alg, Block::X, None);
        let pdy = p_of_partials(alg, Block::Y, None);
        let mut op = pdx.compose(&pdy).left_mul(&-&form(&eps, &diff, &diff));
        let mut t1 = WeylOp::zero(alg.ring());
        let mut t2 = WeylOp::zero(alg.ring());
        for j in 0..alg.n {
            t1 = t1.add(&deriv(alg, &[(Block::X, j, 1)]).compose(&pdy).left_mul(&diff[j]));
            t2 = t2.add(&deriv(alg, &[(Block::Y, j, 1)]).compose(&pdx).left_mul(&-&diff[j]));
        }
        op = op.add(&t1.left_mul(&a.scale(&int(4))));
        op = op.add(&t2.left_mul(&b.scale(&int(4))));
        op = op.add(&pdy.left_mul(&(&lam * &a).scale(&int(4))));
        op = op.add(&pdx.left_mul(&(&mu * &b).scale(&int(4))));
        op.add(&mixed(alg, Block::X, Block::Y).left_mul(&(&a * &b).scale(&int(8))))
    }

    /// `B^{(1)}_{λ,μ}` as a bi-differential operator.
    pub fn b1_rpq(alg: &JordanAlgebra) -> BiDiffOp {
        let (lam, mu) = (alg.param(Param::Lambda), alg.param(Param::Mu));
        let a = shifted_weight(alg, Param::Lambda);
        let b = shifted_weight(alg, Param::Mu);
        let pdx = p_of_partials(alg, Block::X, None);
        let pdy = p_of_partials(alg, Block::Y, None);
        let op = pdx
            .left_mul(&(&mu * &b))
            .add(&pdy.left_mul(&(&lam * &a)))
            .add(&mixed(alg, Block::X, Block::Y).left_mul(&(&a * &b).scale(&int(2))))
            .scale(&int(4));
        BiDiffOp::from_restriction(alg, &op)
    }
}
