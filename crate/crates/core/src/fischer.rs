//! Fischer inner product, constant-coefficient operators `∂(p)`,
//! translate spans with dual bases, and the generalized Taylor and
//! Leibniz formulas.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::jordan::{Block, JordanAlgebra};
use crate::linalg;
use crate::poly::{Exponents, MPoly, Monomial, Rational};
use crate::weyl::{MultiIndex, WeylOp};

/// How coordinate functions turn into derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    /// `x_j ↦ |g_j|^{-1}∂_j`; defines the positive Fischer product.
    Fischer,
    /// `x_j ↦ g_j^{-1}∂_j` from the trace form itself.
    Trace,
}

fn weight(alg: &JordanAlgebra, j: usize, pol: Polarity) -> Rational {
    match pol {
        Polarity::Fischer => alg.fischer_weight(j),
        Polarity::Trace => alg.polarity(j),
    }
}

/// `p(∂)` acting on the variables of block `to`; `p` may use any block,
/// coordinate `j` of every block is read as the `j`-th direction.
pub fn partial_op(alg: &JordanAlgebra, p: &MPoly, to: Block, pol: Polarity) -> WeylOp {
    let map: Vec<(Block, Block)> = Block::ALL.iter().map(|&b| (b, to)).collect();
    partial_op_map(alg, p, &map, pol)
}

/// `p(∂)` where the variables of block `from` become derivatives in block `to`.
pub fn partial_op_map(
    alg: &JordanAlgebra,
    p: &MPoly,
    map: &[(Block, Block)],
    pol: Polarity,
) -> WeylOp {
    let n = alg.n;
    let ng = alg.ring().ngeo();
    let target = |slot: usize| -> usize {
        let from = Block::ALL[slot / n];
        let to = map
            .iter()
            .find(|(f, _)| *f == from)
            .map(|(_, t)| *t)
            .expect("block without a derivative target");
        alg.block_slots(to).start
    };
    let mut op = WeylOp::zero(alg.ring());
    for (m, c) in p.terms() {
        let mut idx = MultiIndex::from_elem(0, ng);
        let mut w = c.clone();
        let mut param_part = Monomial::one(alg.ring().width());
        for (slot, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if slot < ng {
                let j = slot % n;
                idx[target(slot) + j] += e;
                let g = weight(alg, j, pol);
                for _ in 0..e {
                    w /= &g;
                }
            } else {
                param_part.0[slot] = e;
            }
        }
        op.add_term(idx, MPoly::from_terms(alg.ring(), [(param_part, w)]));
    }
    op
}

/// `(p, q)_F = ∂(p)q(0)`; parameter dependence is carried through.
pub fn fischer_pair(alg: &JordanAlgebra, p: &MPoly, q: &MPoly) -> MPoly {
    let n = alg.n;
    let pc = p.geo_coefficients();
    let qc = q.geo_coefficients();
    let mut out = MPoly::zero(alg.ring());
    for (m, a) in &pc {
        let Some(b) = qc.get(m) else { continue };
        let mut w = Rational::one();
        for (slot, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let g = alg.fischer_weight(slot % n);
            for k in 1..=e {
                w *= Rational::from_integer(BigInt::from(k));
                w /= &g;
            }
        }
        out += &(a * b).scale(&w);
    }
    out
}

fn fischer_scalar(alg: &JordanAlgebra, p: &MPoly, q: &MPoly) -> Rational {
    fischer_pair(alg, p, q)
        .as_constant()
        .expect("Fischer pairing of parameter-free polynomials")
}

/// Graded basis of a polynomial space with its Fischer-dual basis.
#[derive(Clone, Debug)]
pub struct DualBasisPair {
    pub basis: Vec<MPoly>,
    pub dual: Vec<MPoly>,
    pub degrees: Vec<u32>,
}

impl DualBasisPair {
    /// `dim W_k` for `k = 0..=max degree`.
    pub fn dims(&self) -> Vec<usize> {
        let top = self.degrees.iter().copied().max().unwrap_or(0);
        (0..=top)
            .map(|k| self.degrees.iter().filter(|&&d| d == k).count())
            .collect()
    }

    pub fn of_degree(&self, k: u32) -> Vec<&MPoly> {
        self.basis
            .iter()
            .zip(&self.degrees)
            .filter(|(_, &d)| d == k)
            .map(|(b, _)| b)
            .collect()
    }

    /// Coordinates of `q` in the basis, or `None` when `q` is outside the span.
    pub fn coordinates(&self, alg: &JordanAlgebra, q: &MPoly) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self
            .dual
            .iter()
            .map(|d| fischer_scalar(alg, d, q))
            .collect();
        let mut rebuilt = MPoly::zero(alg.ring());
        for (c, b) in coords.iter().zip(&self.basis) {
            rebuilt += &b.scale(c);
        }
        (rebuilt == *q).then_some(coords)
    }
}

/// Row-reduced basis of the span of homogeneous polynomials of one degree.
fn span_basis(polys: &[MPoly]) -> Vec<MPoly> {
    let Some(first) = polys.first() else {
        return vec![];
    };
    let arena = first.arena().clone();
    let mut monos: Vec<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    monos.sort();
    monos.dedup();
    monos.reverse();
    let index: BTreeMap<Monomial, usize> =
        monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: linalg::Matrix = polys
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); monos.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    let pivots = linalg::rref(&mut rows);
    rows.truncate(pivots.len());
    rows.into_iter()
        .map(|row| {
            MPoly::from_terms(
                &arena,
                row.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (monos[i].clone(), c)),
            )
        })
        .collect()
}

/// Span of all partial derivatives of a homogeneous `p`, graded by degree.
pub fn translate_span(alg: &JordanAlgebra, p: &MPoly) -> DualBasisPair {
    assert!(!p.has_params(), "translate span needs a parameter-free polynomial");
    let top = p.total_degree().unwrap_or(0);
    assert!(p.is_geo_homogeneous(top), "translate span needs a homogeneous polynomial");
    let mut levels: Vec<Vec<MPoly>> = vec![vec![]; top as usize + 1];
    levels[top as usize] = span_basis(std::slice::from_ref(p));
    let ng = alg.ring().ngeo();
    for k in (0..top as usize).rev() {
        let mut ders = vec![];
        for b in &levels[k + 1] {
            for s in 0..ng {
                let d = b.diff_slot(s, 1);
                if !d.is_zero() {
                    ders.push(d);
                }
            }
        }
        levels[k] = span_basis(&ders);
    }
    let mut basis = vec![];
    let mut dual = vec![];
    let mut degrees = vec![];
    for (k, level) in levels.iter().enumerate() {
        let gram: linalg::Matrix = level
            .iter()
            .map(|a| level.iter().map(|b| fischer_scalar(alg, a, b)).collect())
            .collect();
        let inv = linalg::inverse(&gram).expect("Fischer Gram matrix is positive definite");
        for (i, b) in level.iter().enumerate() {
            let mut d = MPoly::zero(alg.ring());
            for (j, bj) in level.iter().enumerate() {
                d += &bj.scale(&inv[j][i]);
            }
            basis.push(b.clone());
            dual.push(d);
            degrees.push(k as u32);
        }
    }
    DualBasisPair {
        basis,
        dual,
        degrees,
    }
}

/// `p(x+y) = Σ b_i(x)·(∂(b̃_i)p)(y)` for `p` in block `x`; returns the
/// pairs `(b_i(x), (∂(b̃_i)p)(y))`.
pub fn taylor_expand(alg: &JordanAlgebra, p: &MPoly) -> Vec<(MPoly, MPoly)> {
    let span = translate_span(alg, p);
    span.basis
        .iter()
        .zip(&span.dual)
        .filter_map(|(b, d)| {
            let c = partial_op(alg, d, Block::X, Polarity::Fischer).apply(p);
            (!c.is_zero()).then(|| (b.clone(), alg.rename(&c, &[(Block::X, Block::Y)])))
        })
        .collect()
}

/// `∂(p)(fg) = Σ ∂(∂(b̃_i)p)f · ∂(b_i)g`, all in block `x`.
pub fn leibniz_expand(alg: &JordanAlgebra, p: &MPoly, f: &MPoly, g: &MPoly) -> MPoly {
    let mut out = MPoly::zero(alg.ring());
    for (b, c) in taylor_expand(alg, p) {
        let c = alg.rename(&c, &[(Block::Y, Block::X)]);
        let df = partial_op(alg, &c, Block::X, Polarity::Fischer).apply(f);
        if df.is_zero() {
            continue;
        }
        let dg = partial_op(alg, &b, Block::X, Polarity::Fischer).apply(g);
        out += &(&df * &dg);
    }
    out
}

/// Geometric exponent key of a monomial with all parameters stripped.
pub fn geo_key(alg: &JordanAlgebra, m: &Monomial) -> Exponents {
    m.0[..alg.ring().ngeo()].iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn monomial_norms() {
        let a = JordanAlgebra::rpq(1, 1);
        let x = a.coords(Block::X);
        assert_eq!(fischer_pair(&a, &x[0].pow(2), &x[0].pow(2)), a.constant(int(2)));
        let m = &x[0] * &x[1];
        assert_eq!(fischer_pair(&a, &m, &m), a.constant(int(1)));
    }

    #[test]
    fn det_span_dims() {
        for (alg, dims) in [
            (JordanAlgebra::rpq(2, 1), vec![1, 3, 1]),
            (JordanAlgebra::sym(2), vec![1, 3, 1]),
            (JordanAlgebra::sym(3), vec![1, 6, 6, 1]),
        ] {
            assert_eq!(translate_span(&alg, &alg.det(Block::X)).dims(), dims);
        }
    }

    #[test]
    fn linear_span() {
        let a = JordanAlgebra::rpq(2, 1);
        let x0 = a.coord(Block::X, 0);
        let s = translate_span(&a, &x0);
        assert_eq!(s.basis, vec![MPoly::one(a.ring()), x0]);
    }
}
