//! Polynomial-coefficient differential operators, bi-differential operators,
//! twisted determinant powers, symbols and formal Fourier conjugation.
//!
//! Operators are stored normal-ordered: coefficients to the left of
//! derivatives, `Σ a_α(x) ∂^α`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::jordan::{Block, JordanAlgebra};
use crate::poly::{same_arena, Exponents, MPoly, Rational, Var, VarArena};

pub type MultiIndex = Exponents;

fn binomial(n: u8, k: u8) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

fn factorial(n: u8) -> BigInt {
    (1..=n as u32).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// All `γ ≤ α` componentwise.
fn sub_indices(alpha: &MultiIndex) -> Vec<MultiIndex> {
    let mut out = vec![alpha.iter().map(|_| 0u8).collect::<MultiIndex>()];
    for (slot, &a) in alpha.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for g in &out {
            for k in 0..=a {
                let mut h = g.clone();
                h[slot] = k;
                next.push(h);
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug)]
pub struct WeylOp {
    arena: Arc<VarArena>,
    terms: BTreeMap<MultiIndex, MPoly>,
}

impl PartialEq for WeylOp {
    fn eq(&self, other: &Self) -> bool {
        same_arena(&self.arena, &other.arena) && self.terms == other.terms
    }
}

impl Eq for WeylOp {}

impl WeylOp {
    pub fn zero(arena: &Arc<VarArena>) -> Self {
        WeylOp {
            arena: arena.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn index0(&self) -> MultiIndex {
        MultiIndex::from_elem(0, self.arena.ngeo())
    }

    pub fn identity(arena: &Arc<VarArena>) -> Self {
        WeylOp::multiplication(&MPoly::one(arena))
    }

    pub fn multiplication(p: &MPoly) -> Self {
        let mut op = WeylOp::zero(p.arena());
        let i0 = op.index0();
        op.add_term(i0, p.clone());
        op
    }

    /// `∂/∂v` for a geometric variable slot.
    pub fn partial(arena: &Arc<VarArena>, slot: usize) -> Self {
        let mut op = WeylOp::zero(arena);
        let mut idx = op.index0();
        idx[slot] = 1;
        op.add_term(idx, MPoly::one(arena));
        op
    }

    pub fn arena(&self) -> &Arc<VarArena> {
        &self.arena
    }

    pub fn add_term(&mut self, idx: MultiIndex, coeff: MPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(c) => {
                *c += &coeff;
                if c.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms
            .keys()
            .map(|a| a.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn coefficient(&self, idx: &[u8]) -> MPoly {
        let key: MultiIndex = idx.iter().copied().collect();
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(|| MPoly::zero(&self.arena))
    }

    pub fn add(&self, other: &WeylOp) -> WeylOp {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeylOp) -> WeylOp {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), -v);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> WeylOp {
        self.map_coeffs(|p| p.scale(c))
    }

    /// Left multiplication by a polynomial.
    pub fn left_mul(&self, p: &MPoly) -> WeylOp {
        self.map_coeffs(|c| p * c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&MPoly) -> MPoly) -> WeylOp {
        let mut out = WeylOp::zero(&self.arena);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(v));
        }
        out
    }

    pub fn specialize(&self, values: &[(Var, Rational)]) -> WeylOp {
        self.map_coeffs(|c| c.specialize(values))
    }

    pub fn substitute_params(&self, map: &HashMap<Var, MPoly>) -> WeylOp {
        self.map_coeffs(|c| c.substitute(map).expect("same arena"))
    }

    /// Noncommutative product `self ∘ other`.
    pub fn compose(&self, other: &WeylOp) -> WeylOp {
        let mut acc: HashMap<MultiIndex, MPoly> = HashMap::new();
        for (alpha, a) in &self.terms {
            let gammas = sub_indices(alpha);
            for (beta, b) in &other.terms {
                for gamma in &gammas {
                    let db = b.diff_multi(gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let mut c = BigInt::one();
                    for (s, &g) in gamma.iter().enumerate() {
                        if g > 0 {
                            c *= binomial(alpha[s], g);
                        }
                    }
                    let idx: MultiIndex = alpha
                        .iter()
                        .zip(gamma)
                        .zip(beta)
                        .map(|((a, g), b)| a - g + b)
                        .collect();
                    let term = (a * &db).scale(&Rational::from_integer(c));
                    match acc.get_mut(&idx) {
                        Some(v) => *v += &term,
                        None => {
                            acc.insert(idx, term);
                        }
                    }
                }
            }
        }
        WeylOp {
            arena: self.arena.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn commutator(&self, other: &WeylOp) -> WeylOp {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn apply(&self, f: &MPoly) -> MPoly {
        let mut out = MPoly::zero(&self.arena);
        for (alpha, a) in &self.terms {
            let d = f.diff_multi(alpha);
            if !d.is_zero() {
                out += &(a * &d);
            }
        }
        out
    }

    /// Applies the operator to a twisted determinant-power expression.
    pub fn apply_twisted(&self, e: &TwistedElement) -> TwistedElement {
        let mut memo: HashMap<MultiIndex, TwistedElement> = HashMap::new();
        let zero = self.index0();
        memo.insert(zero, e.clone());
        let mut parts = Vec::with_capacity(self.terms.len());
        for (alpha, a) in &self.terms {
            let d = derive_memo(&mut memo, alpha);
            parts.push(d.mul_poly(a));
        }
        TwistedElement::sum(&e.bases, parts)
    }

    /// Formal Fourier conjugation.
    ///
    /// Forward sends operators in `(ξ, ζ)` to operators in `(x, y)` by the
    /// anti-homomorphism `ξ_j ↦ g_j^{-1}∂x_j`, `∂ξ_j ↦ g_j x_j` (likewise
    /// `ζ → y`), so `a(ξ)∂ξ^β ↦ (g x)^β a(g^{-1}∂x)`. Inverse sends
    /// `x_j ↦ g_j^{-1}∂ξ_j`, `∂x_j ↦ g_j ξ_j`. This is the transpose of
    /// conjugation by the Fourier transform; the analytic map carries an
    /// extra `i^{|β|−|α|}` per term.
    pub fn fourier(&self, alg: &JordanAlgebra, forward: bool) -> WeylOp {
        let mut map = Vec::new();
        let pairs = if forward {
            [(Block::Xi, Block::X), (Block::Zeta, Block::Y)]
        } else {
            [(Block::X, Block::Xi), (Block::Y, Block::Zeta)]
        };
        for (from, to) in pairs {
            for j in 0..alg.n {
                let g = alg.polarity(j);
                map.push((
                    alg.block_slots(from).start + j,
                    alg.block_slots(to).start + j,
                    g.recip(),
                    g,
                ));
            }
        }
        self.anti_conjugate(&map)
    }

    /// Anti-homomorphism `v_from ↦ cv·∂_to`, `∂_from ↦ cd·v_to` (needs
    /// `cv·cd = 1`); unmapped variables and derivatives are kept.
    pub fn anti_conjugate(&self, map: &[(usize, usize, Rational, Rational)]) -> WeylOp {
        let arena = &self.arena;
        let ng = arena.ngeo();
        let lookup: HashMap<usize, (usize, Rational, Rational)> = map
            .iter()
            .map(|(f, t, cv, cd)| (*f, (*t, cv.clone(), cd.clone())))
            .collect();
        let mut out = WeylOp::zero(arena);
        for (alpha, coeff) in &self.terms {
            // image of ∂^α: multiplication, plus any unmapped derivatives
            let mut mult = crate::poly::Monomial::one(arena.width());
            let mut mult_c = Rational::one();
            let mut kept = self.index0();
            for (slot, &e) in alpha.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match lookup.get(&slot) {
                    Some((t, _, cd)) => {
                        mult.0[*t] += e;
                        for _ in 0..e {
                            mult_c *= cd;
                        }
                    }
                    None => kept[slot] = e,
                }
            }
            let left = MPoly::from_terms(arena, [(mult, mult_c)]);
            // image of a(v): derivatives from mapped variables
            for (m, c) in coeff.terms() {
                let mut fixed = crate::poly::Monomial::one(arena.width());
                let mut idx = kept.clone();
                let mut w = c.clone();
                for (slot, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    match lookup.get(&slot) {
                        Some((t, cv, _)) if slot < ng => {
                            idx[*t] += e;
                            for _ in 0..e {
                                w *= cv;
                            }
                        }
                        _ => fixed.0[slot] = e,
                    }
                }
                let fixed = MPoly::from_terms(arena, [(fixed, w)]);
                let mut d = WeylOp::zero(arena);
                d.add_term(idx, MPoly::one(arena));
                // (g x)^β ∘ [fixed · ∂^γ] with fixed commuting with the mapped block
                out = out.add(&WeylOp::multiplication(&left).compose(&d.left_mul(&fixed)));
            }
        }
        out
    }

    /// Full symbol on `V×V`: `∂x_j ↦ g_j ξ_j`, `∂y_j ↦ g_j ζ_j`.
    ///
    /// The analytic symbol is `i^{|α|+|β|}` times each term.
    pub fn symbol(&self, alg: &JordanAlgebra) -> MPoly {
        let mut out = MPoly::zero(&self.arena);
        for (idx, c) in &self.terms {
            out += &(c * &derivative_symbol(alg, idx));
        }
        out
    }

    /// Renders `Σ coeff·∂^α` with derivatives named after their variables.
    pub fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = vec![];
        for (idx, c) in self.terms.iter().rev() {
            let d = render_derivative(&self.arena, idx, latex);
            let cs = if latex { c.to_latex() } else { c.to_text() };
            let cs = if c.len() > 1 { format!("({cs})") } else { cs };
            parts.push(if d.is_empty() {
                cs
            } else if cs == "1" {
                d
            } else if latex {
                format!("{cs}\\,{d}")
            } else {
                format!("{cs}*{d}")
            });
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {p}")),
            }
        }
        out
    }
}

fn render_derivative(arena: &VarArena, idx: &MultiIndex, latex: bool) -> String {
    let mut parts = vec![];
    for (slot, &e) in idx.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = arena.name(Var::Geo(slot));
        let base = if latex {
            let pos = name.find(|c: char| c.is_ascii_digit());
            let (stem, sub) = match pos {
                Some(p) => (&name[..p], name[p..].to_string()),
                None => (name, String::new()),
            };
            let stem = match stem {
                "ξ" => "\\xi",
                "ζ" => "\\zeta",
                s => s,
            };
            if sub.is_empty() {
                format!("\\partial_{{{stem}}}")
            } else {
                format!("\\partial_{{{stem}_{{{sub}}}}}")
            }
        } else {
            format!("d[{name}]")
        };
        parts.push(match (e, latex) {
            (1, _) => base,
            (_, true) => format!("{base}^{{{e}}}"),
            (_, false) => format!("{base}^{e}"),
        });
    }
    parts.join(if latex { "" } else { "*" })
}

fn derivative_symbol(alg: &JordanAlgebra, idx: &MultiIndex) -> MPoly {
    let arena = alg.ring();
    let mut out = MPoly::one(arena);
    let n = alg.n;
    for (slot, &e) in idx.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let (block, j) = (slot / n, slot % n);
        let target = match block {
            0 => Block::Xi,
            1 => Block::Zeta,
            _ => panic!("symbol of derivative outside the x/y blocks"),
        };
        let g = alg.polarity(j);
        out = &out * &alg.coord(target, j).scale(&g).pow(e as u32);
    }
    out
}

fn derive_memo(
    memo: &mut HashMap<MultiIndex, TwistedElement>,
    alpha: &MultiIndex,
) -> TwistedElement {
    if let Some(t) = memo.get(alpha) {
        return t.clone();
    }
    let j = alpha.iter().position(|&e| e > 0).unwrap();
    let mut lower = alpha.clone();
    lower[j] -= 1;
    let prev = derive_memo(memo, &lower);
    let d = prev.diff_slot(j);
    memo.insert(alpha.clone(), d.clone());
    d
}

/// Memoized derivatives `∂^α e` of one twisted element.
pub struct DerivativeCache {
    memo: HashMap<MultiIndex, TwistedElement>,
}

impl DerivativeCache {
    pub fn new(e: &TwistedElement) -> Self {
        let mut memo = HashMap::new();
        memo.insert(MultiIndex::from_elem(0, e.q.arena().ngeo()), e.clone());
        DerivativeCache { memo }
    }

    pub fn get(&mut self, alpha: &MultiIndex) -> TwistedElement {
        derive_memo(&mut self.memo, alpha)
    }
}

/// One factor `B^{E}` of a twisted element, with symbolic exponent `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistBase {
    pub base: MPoly,
    pub exponent: MPoly,
}

/// `Π_i B_i^{E_i + a_i} · Q` with symbolic `E_i` and integer offsets `a_i`.
#[derive(Clone, Debug)]
pub struct TwistedElement {
    pub bases: Arc<Vec<TwistBase>>,
    pub offsets: Vec<i64>,
    pub q: MPoly,
}

impl TwistedElement {
    pub fn new(bases: Arc<Vec<TwistBase>>, offsets: Vec<i64>, q: MPoly) -> Self {
        assert_eq!(bases.len(), offsets.len());
        TwistedElement { bases, offsets, q }
    }

    /// `det(x)^{E_x + a} det(y)^{E_y + b} Q` for an algebra.
    pub fn det_powers(
        alg: &JordanAlgebra,
        factors: &[(Block, MPoly, i64)],
        q: MPoly,
    ) -> Self {
        let bases = factors
            .iter()
            .map(|(b, e, _)| TwistBase {
                base: alg.det(*b),
                exponent: e.clone(),
            })
            .collect();
        let offsets = factors.iter().map(|f| f.2).collect();
        TwistedElement::new(Arc::new(bases), offsets, q)
    }

    pub fn mul_poly(&self, p: &MPoly) -> TwistedElement {
        TwistedElement {
            bases: self.bases.clone(),
            offsets: self.offsets.clone(),
            q: p * &self.q,
        }
    }

    pub fn diff_slot(&self, slot: usize) -> TwistedElement {
        let v = Var::Geo(slot);
        let active: Vec<usize> = (0..self.bases.len())
            .filter(|&i| self.bases[i].base.uses_var(v))
            .collect();
        if active.is_empty() {
            return TwistedElement {
                bases: self.bases.clone(),
                offsets: self.offsets.clone(),
                q: self.q.diff(v).unwrap(),
            };
        }
        let arena = self.q.arena().clone();
        let mut q = MPoly::zero(&arena);
        for &i in &active {
            let b = &self.bases[i];
            let e = &b.exponent + &MPoly::constant(&arena, Rational::from(BigInt::from(self.offsets[i])));
            let mut t = &e * &b.base.diff(v).unwrap();
            for &k in &active {
                if k != i {
                    t = &t * &self.bases[k].base;
                }
            }
            q += &(&t * &self.q);
        }
        let mut prod = self.q.diff(v).unwrap();
        for &k in &active {
            prod = &prod * &self.bases[k].base;
        }
        q += &prod;
        let mut offsets = self.offsets.clone();
        for &i in &active {
            offsets[i] -= 1;
        }
        TwistedElement {
            bases: self.bases.clone(),
            offsets,
            q,
        }
    }

    /// `Q'` with `self = Π B^{E+target} Q'`, or `None` if not divisible.
    pub fn q_at_offsets(&self, target: &[i64]) -> Option<MPoly> {
        let mut q = self.q.clone();
        for (i, b) in self.bases.iter().enumerate() {
            let diff = self.offsets[i] - target[i];
            if diff > 0 {
                q = &q * &b.base.pow(diff as u32);
            } else if diff < 0 {
                q = q.div_exact(&b.base.pow((-diff) as u32))?;
            }
        }
        Some(q)
    }

    pub fn sum(bases: &Arc<Vec<TwistBase>>, parts: Vec<TwistedElement>) -> TwistedElement {
        let k = bases.len();
        let arena = bases
            .first()
            .map(|b| b.base.arena().clone())
            .or_else(|| parts.first().map(|p| p.q.arena().clone()))
            .expect("empty twisted sum without bases");
        let nonzero: Vec<&TwistedElement> = parts.iter().filter(|p| !p.q.is_zero()).collect();
        let target: Vec<i64> = (0..k)
            .map(|i| nonzero.iter().map(|p| p.offsets[i]).min().unwrap_or(0))
            .collect();
        let mut q = MPoly::zero(&arena);
        for p in nonzero {
            q += &p.q_at_offsets(&target).unwrap();
        }
        TwistedElement {
            bases: bases.clone(),
            offsets: target,
            q,
        }
    }

    pub fn add(&self, other: &TwistedElement) -> TwistedElement {
        TwistedElement::sum(&self.bases, vec![self.clone(), other.clone()])
    }

    /// Equality as functions (normal forms compared at common offsets).
    pub fn equals(&self, other: &TwistedElement) -> bool {
        let target: Vec<i64> = self
            .offsets
            .iter()
            .zip(&other.offsets)
            .map(|(a, b)| *a.min(b))
            .collect();
        self.q_at_offsets(&target) == other.q_at_offsets(&target)
    }

    /// Plain polynomial obtained when every `E_i + a_i` becomes a
    /// nonnegative integer under the given parameter values.
    pub fn realize(&self, values: &[(Var, Rational)]) -> Option<MPoly> {
        let mut p = self.q.specialize(values);
        for (i, b) in self.bases.iter().enumerate() {
            let e = b.exponent.specialize(values).as_constant()?
                + Rational::from(BigInt::from(self.offsets[i]));
            if !e.is_integer() || e < Rational::zero() {
                return None;
            }
            let e: u32 = e.to_integer().try_into().ok()?;
            p = &p * &b.base.pow(e);
        }
        Some(p)
    }
}

/// Bi-differential operator `V×V → V`: apply `Σ c(x) ∂x^α ∂y^β`, then set `y = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiDiffOp {
    pub n: usize,
    arena: Arc<VarArena>,
    terms: BTreeMap<(MultiIndex, MultiIndex), MPoly>,
}

impl BiDiffOp {
    pub fn zero(alg: &JordanAlgebra) -> Self {
        BiDiffOp {
            n: alg.n,
            arena: alg.ring().clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The restriction `res: f(x,y) ↦ f(x,x)`.
    pub fn restriction(alg: &JordanAlgebra) -> Self {
        let mut b = BiDiffOp::zero(alg);
        let z: MultiIndex = MultiIndex::from_elem(0, alg.n);
        b.add_term(z.clone(), z, MPoly::one(alg.ring()));
        b
    }

    /// `res ∘ op` for an operator on `V×V`.
    pub fn from_restriction(alg: &JordanAlgebra, op: &WeylOp) -> Self {
        let mut b = BiDiffOp::zero(alg);
        let xs = alg.block_slots(Block::X);
        let ys = alg.block_slots(Block::Y);
        for (idx, c) in op.terms() {
            assert!(
                idx.iter()
                    .enumerate()
                    .all(|(s, &e)| e == 0 || xs.contains(&s) || ys.contains(&s)),
                "operator differentiates outside x/y"
            );
            let a: MultiIndex = idx[xs.clone()].iter().copied().collect();
            let bb: MultiIndex = idx[ys.clone()].iter().copied().collect();
            b.add_term(a, bb, alg.rename(c, &[(Block::Y, Block::X)]));
        }
        b
    }

    pub fn add_term(&mut self, a: MultiIndex, b: MultiIndex, c: MPoly) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &MPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &[u8], b: &[u8]) -> MPoly {
        let key = (a.iter().copied().collect(), b.iter().copied().collect());
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(|| MPoly::zero(&self.arena))
    }

    pub fn sub(&self, other: &BiDiffOp) -> BiDiffOp {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> BiDiffOp {
        let mut out = BiDiffOp {
            n: self.n,
            arena: self.arena.clone(),
            terms: BTreeMap::new(),
        };
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v.scale(c));
        }
        out
    }

    pub fn specialize(&self, values: &[(Var, Rational)]) -> BiDiffOp {
        let mut out = BiDiffOp {
            n: self.n,
            arena: self.arena.clone(),
            terms: BTreeMap::new(),
        };
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v.specialize(values));
        }
        out
    }

    /// True when no coefficient depends on a geometric variable.
    pub fn is_constant_coefficient(&self) -> bool {
        let ng = self.arena.ngeo();
        self.terms.values().all(|c| {
            c.terms()
                .all(|(m, _)| m.0[..ng].iter().all(|&e| e == 0))
        })
    }

    /// View as an operator on `V×V` whose coefficients depend on `x` only.
    pub fn lift(&self) -> WeylOp {
        let n = self.n;
        let mut op = WeylOp::zero(&self.arena);
        for ((a, b), c) in &self.terms {
            let mut idx = MultiIndex::from_elem(0, self.arena.ngeo());
            idx[..n].copy_from_slice(a);
            idx[n..2 * n].copy_from_slice(b);
            op.add_term(idx, c.clone());
        }
        op
    }

    pub fn apply(&self, alg: &JordanAlgebra, f: &MPoly) -> MPoly {
        alg.rename(&self.lift().apply(f), &[(Block::Y, Block::X)])
    }

    /// `res ∘ (B̃ ∘ F)`: the composition `B∘F` of a bi-differential
    /// operator with an operator on `V×V`.
    pub fn sharp_compose(&self, alg: &JordanAlgebra, f: &WeylOp) -> BiDiffOp {
        BiDiffOp::from_restriction(alg, &self.lift().compose(f))
    }

    /// Symbol in `(x, ξ, ζ)`: `∂x_j ↦ g_j ξ_j`, `∂y_j ↦ g_j ζ_j`.
    ///
    /// The analytic symbol carries an extra `i^{|α|+|β|}` per term.
    pub fn symbol(&self, alg: &JordanAlgebra) -> MPoly {
        self.lift().symbol(alg)
    }

    pub fn order(&self) -> u32 {
        self.lift().order()
    }
}

/// `b # f = Σ_{γ,δ} (γ!δ!)^{-1} g^{-γ-δ} ∂ξ^γ∂ζ^δ b · (∂x^γ∂y^δ f)|_{y=x}`.
pub fn sharp_product(alg: &JordanAlgebra, b: &MPoly, f: &MPoly) -> MPoly {
    let arena = alg.ring();
    let n = alg.n;
    let xi = alg.block_slots(Block::Xi).start;
    let zeta = alg.block_slots(Block::Zeta).start;
    let bound_xi: Vec<u8> = (0..n)
        .map(|j| b.degree_in(&[alg.var(Block::Xi, j)]).unwrap_or(0) as u8)
        .collect();
    let bound_zeta: Vec<u8> = (0..n)
        .map(|j| b.degree_in(&[alg.var(Block::Zeta, j)]).unwrap_or(0) as u8)
        .collect();
    let mut bound: MultiIndex = bound_xi.iter().copied().collect();
    bound.extend(bound_zeta.iter().copied());
    let mut out = MPoly::zero(arena);
    for gd in sub_indices(&bound) {
        let (gamma, delta) = gd.split_at(n);
        let mut db = b.clone();
        let mut df = f.clone();
        let mut w = Rational::one();
        for j in 0..n {
            let g = alg.polarity(j);
            for (k, slot_sym, slot_geo) in [
                (gamma[j], xi + j, alg.block_slots(Block::X).start + j),
                (delta[j], zeta + j, alg.block_slots(Block::Y).start + j),
            ] {
                if k == 0 {
                    continue;
                }
                db = db.diff_slot(slot_sym, k);
                df = df.diff_slot(slot_geo, k);
                w /= Rational::from_integer(factorial(k));
                for _ in 0..k {
                    w /= &g;
                }
            }
        }
        if db.is_zero() || df.is_zero() {
            continue;
        }
        let df = alg.rename(&df, &[(Block::Y, Block::X)]);
        out += &(&db * &df).scale(&w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn canonical_commutation() {
        let a = JordanAlgebra::real();
        let r = a.ring();
        let d = WeylOp::partial(r, 0);
        let x = WeylOp::multiplication(&a.coord(Block::X, 0));
        assert_eq!(d.commutator(&x), WeylOp::identity(r));
    }

    #[test]
    fn euler_squared() {
        let a = JordanAlgebra::real();
        let r = a.ring();
        let x = a.coord(Block::X, 0);
        let e = WeylOp::multiplication(&x).compose(&WeylOp::partial(r, 0));
        let sq = e.compose(&e);
        let mut expect = WeylOp::zero(r);
        let mut i2 = MultiIndex::from_elem(0, 4);
        i2[0] = 2;
        expect.add_term(i2, x.pow(2));
        let mut i1 = MultiIndex::from_elem(0, 4);
        i1[0] = 1;
        expect.add_term(i1, x.clone());
        assert_eq!(sq, expect);
        for k in 0..5u32 {
            assert_eq!(sq.apply(&x.pow(k)), x.pow(k).scale(&int((k * k) as i64)));
        }
    }

    #[test]
    fn power_rule_twisted() {
        let a = JordanAlgebra::real();
        let lam = a.param(crate::jordan::Param::BigLambda);
        let e = TwistedElement::det_powers(&a, &[(Block::X, lam.clone(), 0)], MPoly::one(a.ring()));
        let d = WeylOp::partial(a.ring(), 0).apply_twisted(&e);
        assert_eq!(d.offsets, vec![-1]);
        assert_eq!(d.q, lam);
    }

    #[test]
    fn fourier_round_trip() {
        let a = JordanAlgebra::rpq(1, 1);
        let r = a.ring();
        let xi = WeylOp::multiplication(&a.coord(Block::Xi, 1));
        let op = xi.compose(&WeylOp::partial(r, a.block_slots(Block::Zeta).start));
        let back = op.fourier(&a, true).fourier(&a, false);
        assert_eq!(back, op);
    }
}
