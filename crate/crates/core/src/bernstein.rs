//! Bernstein–Sato identities on powers of the determinant.

use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use crate::fischer::{partial_op, partial_op_map, translate_span, DualBasisPair, Polarity};
use crate::jordan::{Block, JordanAlgebra, Param};
use crate::poly::{int, rat, MPoly, Rational, Var};
use crate::weyl::{TwistedElement, WeylOp};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BernsteinError {
    #[error("polynomial is not in the translate span of det")]
    NotInW,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("identity failed for {0}")]
    IdentityFailed(String),
}

/// `ν^k Π_{j=1}^k (E + 1 + (d/2)(j−1))` for a symbolic exponent `E`.
pub fn bs_factor_at(alg: &JordanAlgebra, k: u32, e: &MPoly) -> MPoly {
    let mut f = MPoly::one(alg.ring());
    for j in 1..=k {
        let shift = int(1) + rat(alg.d as i64, 2) * int(j as i64 - 1);
        f = &f * (&(e + &alg.constant(shift)).scale(&alg.nu));
    }
    f
}

pub fn bs_factor(alg: &JordanAlgebra, k: u32) -> MPoly {
    bs_factor_at(alg, k, &alg.param(Param::BigLambda))
}

/// Roots of the Bernstein factor in `Λ`: `−1 − (d/2)(j−1)`.
pub fn bs_roots(alg: &JordanAlgebra, k: u32) -> Vec<Rational> {
    (1..=k)
        .map(|j| -int(1) - rat(alg.d as i64, 2) * int(j as i64 - 1))
        .collect()
}

/// The space `W`: translate span of `det` in block `x`.
pub fn w_space(alg: &JordanAlgebra) -> DualBasisPair {
    translate_span(alg, &alg.det(Block::X))
}

#[derive(Clone, Debug)]
pub struct BSCertificate {
    pub p: MPoly,
    pub k: u32,
    pub sharp: MPoly,
    pub factors: MPoly,
    /// `c` with `p(∂)det = c·p♯`.
    pub proportionality: Rational,
}

fn check_in_w(alg: &JordanAlgebra, w: &DualBasisPair, p: &MPoly) -> Result<u32, BernsteinError> {
    let k = p.total_degree().unwrap_or(0);
    if !p.is_geo_homogeneous(k) || p.has_params() {
        return Err(BernsteinError::NotHomogeneous);
    }
    w.coordinates(alg, p).ok_or(BernsteinError::NotInW)?;
    Ok(k)
}

/// `p♯(x) = p(x^{-1})det(x)`, computed as `p(x^♯)/det^{k−1}`.
pub fn sharp(alg: &JordanAlgebra, p: &MPoly) -> Result<MPoly, BernsteinError> {
    sharp_in(alg, &w_space(alg), p)
}

pub fn sharp_in(
    alg: &JordanAlgebra,
    w: &DualBasisPair,
    p: &MPoly,
) -> Result<MPoly, BernsteinError> {
    let k = check_in_w(alg, w, p)?;
    Ok(sharp_unchecked(alg, p, k))
}

fn sharp_unchecked(alg: &JordanAlgebra, p: &MPoly, k: u32) -> MPoly {
    let adj = alg.adjoint(Block::X);
    let map: HashMap<Var, MPoly> = (0..alg.n)
        .map(|j| (alg.var(Block::X, j), adj[j].clone()))
        .collect();
    let composed = p.substitute(&map).unwrap();
    if k == 0 {
        return &composed * &alg.det(Block::X);
    }
    composed
        .div_exact(&alg.det(Block::X).pow(k - 1))
        .expect("p(x^♯) is divisible by det^{k-1}")
}

/// Deterministic invertible rational sample points.
pub fn sample_points(alg: &JordanAlgebra, count: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![];
    let mut i: i64 = 0;
    while out.len() < count {
        i += 1;
        let x: Vec<Rational> = (0..alg.n as i64)
            .map(|j| rat(((i * 37 + j * 11 + i * j * 5) % 23) - 11, 1 + (i + 2 * j) % 5))
            .collect();
        if !alg.det_at(&x).is_zero() {
            out.push(x);
        }
    }
    out
}

/// Checks `p♯(x) = p(x^{-1})det(x)` at rational points.
pub fn sharp_matches_points(alg: &JordanAlgebra, p: &MPoly, sharp: &MPoly, count: usize) -> bool {
    sample_points(alg, count).iter().all(|x| {
        let inv = alg.inverse(x).unwrap();
        let mut g = inv.clone();
        g.resize(4 * alg.n, Rational::zero());
        let lhs = p.eval(&g, &[]) * alg.det_at(x);
        let mut gx = x.clone();
        gx.resize(4 * alg.n, Rational::zero());
        sharp.eval(&gx, &[]) == lhs
    })
}

/// Verifies `p(∂)det^{Λ+1} = b_k(Λ)·p♯·det^Λ` with symbolic `Λ`.
pub fn bs_apply(alg: &JordanAlgebra, p: &MPoly) -> Result<BSCertificate, BernsteinError> {
    bs_apply_in(alg, &w_space(alg), p)
}

pub fn bs_apply_in(
    alg: &JordanAlgebra,
    w: &DualBasisPair,
    p: &MPoly,
) -> Result<BSCertificate, BernsteinError> {
    let k = check_in_w(alg, w, p)?;
    let sharp = sharp_unchecked(alg, p, k);
    let factors = bs_factor(alg, k);
    let lam = alg.param(Param::BigLambda);
    let start = TwistedElement::det_powers(alg, &[(Block::X, lam.clone(), 1)], MPoly::one(alg.ring()));
    let op = partial_op(alg, p, Block::X, Polarity::Trace);
    let got = op.apply_twisted(&start);
    let expect = TwistedElement::det_powers(alg, &[(Block::X, lam, 0)], &factors * &sharp);
    if !got.equals(&expect) {
        return Err(BernsteinError::IdentityFailed(p.to_text()));
    }
    let pdet = op.apply(&alg.det(Block::X));
    let b0 = factors
        .specialize(&[(Param::BigLambda.var(), Rational::zero())])
        .as_constant()
        .unwrap();
    if pdet != sharp.scale(&b0) {
        return Err(BernsteinError::IdentityFailed(format!(
            "{} (proportionality with ∂(p)det)",
            p.to_text()
        )));
    }
    Ok(BSCertificate {
        p: p.clone(),
        k,
        sharp,
        factors,
        proportionality: b0,
    })
}

/// Scalar `c` with `(p♯)♯ = c·p`, if `p` and its double sharp are proportional.
pub fn double_sharp_scalar(alg: &JordanAlgebra, p: &MPoly) -> Option<Rational> {
    let w = w_space(alg);
    let s = sharp_in(alg, &w, p).ok()?;
    let ss = sharp_in(alg, &w, &s).ok()?;
    let (m, c) = p.leading()?;
    let c2 = ss
        .terms()
        .find(|(m2, _)| *m2 == m)
        .map(|(_, c)| c.clone())?;
    let ratio = c2 / c;
    (ss == p.scale(&ratio)).then_some(ratio)
}

/// `det(∂_a − ∂_b)` as an operator on blocks `(a, b)`, built from `det(x−y)`.
pub fn det_difference_op(alg: &JordanAlgebra, a: Block, b: Block) -> WeylOp {
    let x = alg.coords(Block::X);
    let y = alg.coords(Block::Y);
    let map: HashMap<Var, MPoly> = (0..alg.n)
        .map(|j| (alg.var(Block::X, j), &x[j] - &y[j]))
        .collect();
    let dxy = alg.det(Block::X).substitute(&map).unwrap();
    partial_op_map(
        alg,
        &dxy,
        &[(Block::X, a), (Block::Y, b)],
        Polarity::Trace,
    )
}

/// `c` with `det(∂_a−∂_b)[det(a)^{E+1}det(b)^{F+1}] = c·det(a)^E det(b)^F`.
pub fn c_poly_blocks(alg: &JordanAlgebra, a: Block, b: Block, e: &MPoly, f: &MPoly) -> MPoly {
    let op = det_difference_op(alg, a, b);
    let start = TwistedElement::det_powers(
        alg,
        &[(a, e.clone(), 1), (b, f.clone(), 1)],
        MPoly::one(alg.ring()),
    );
    op.apply_twisted(&start)
        .q_at_offsets(&[0, 0])
        .expect("det powers align")
}

/// `c_{s,t}(x,y)` with symbolic `s, t`.
pub fn c_poly(alg: &JordanAlgebra) -> MPoly {
    c_poly_blocks(
        alg,
        Block::X,
        Block::Y,
        &alg.param(Param::S),
        &alg.param(Param::T),
    )
}

/// The factor of the rank-`r` identity `det(∂)det^{σ+1} = b(σ)det^σ`
/// indexed as `Π_{k=0}^{r−1}(σ+1+kd/2)`.
pub fn zeta_bernstein_roots(alg: &JordanAlgebra) -> Vec<Rational> {
    (0..alg.r as i64)
        .map(|k| -int(1) - rat(alg.d as i64, 2) * int(k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_line() {
        let a = JordanAlgebra::real();
        let x = a.coord(Block::X, 0);
        let cert = bs_apply(&a, &x).unwrap();
        assert_eq!(cert.sharp, MPoly::one(a.ring()));
        let lam = a.param(Param::BigLambda);
        assert_eq!(cert.factors, &lam + &MPoly::one(a.ring()));
    }

    #[test]
    fn sym2_first_minor() {
        let a = JordanAlgebra::sym(2);
        let x = a.coords(Block::X);
        assert_eq!(sharp(&a, &x[0]).unwrap(), x[2]);
        assert_eq!(sharp(&a, &MPoly::one(a.ring())).unwrap(), a.det(Block::X));
        assert_eq!(sharp(&a, &x[0].pow(2)), Err(BernsteinError::NotInW));
    }

    #[test]
    fn c_poly_line() {
        let a = JordanAlgebra::real();
        let s = a.param(Param::S);
        let t = a.param(Param::T);
        let one = MPoly::one(a.ring());
        let expect = &(&(&s + &one) * &a.coord(Block::Y, 0)) - &(&(&t + &one) * &a.coord(Block::X, 0));
        assert_eq!(c_poly(&a), expect);
    }
}
