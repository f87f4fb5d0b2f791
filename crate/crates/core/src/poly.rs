//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables live in a [`VarArena`] and come in two disjoint classes:
//! geometric variables (coordinates that operators differentiate) and
//! commuting symbolic parameters (weights such as `s`, `t`, `λ`, `μ`).
//! Both are stored as exponent slots of one [`Monomial`]; parameters are
//! never differentiated.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;
use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operands live in different variable arenas")]
    ArenaMismatch,
    #[error("cannot differentiate with respect to parameter `{0}`")]
    DiffParameter(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A variable slot: geometric coordinate or symbolic parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Geo(usize),
    Param(usize),
}

/// Names of every variable slot a polynomial may use.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarArena {
    geo: Vec<String>,
    params: Vec<String>,
}

impl VarArena {
    pub fn new<S: Into<String>>(
        geo: impl IntoIterator<Item = S>,
        params: impl IntoIterator<Item = S>,
    ) -> Arc<Self> {
        Arc::new(VarArena {
            geo: geo.into_iter().map(Into::into).collect(),
            params: params.into_iter().map(Into::into).collect(),
        })
    }

    pub fn ngeo(&self) -> usize {
        self.geo.len()
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn width(&self) -> usize {
        self.geo.len() + self.params.len()
    }

    pub fn slot(&self, v: Var) -> usize {
        match v {
            Var::Geo(i) => {
                assert!(i < self.geo.len(), "geometric index {i} out of range");
                i
            }
            Var::Param(i) => {
                assert!(i < self.params.len(), "parameter index {i} out of range");
                self.geo.len() + i
            }
        }
    }

    pub fn name(&self, v: Var) -> &str {
        match v {
            Var::Geo(i) => &self.geo[i],
            Var::Param(i) => &self.params[i],
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        if let Some(i) = self.geo.iter().position(|g| g == name) {
            return Some(Var::Geo(i));
        }
        self.params.iter().position(|p| p == name).map(Var::Param)
    }

    pub fn param(&self, name: &str) -> Option<Var> {
        self.params.iter().position(|p| p == name).map(Var::Param)
    }

    fn var_of_slot(&self, slot: usize) -> Var {
        if slot < self.geo.len() {
            Var::Geo(slot)
        } else {
            Var::Param(slot - self.geo.len())
        }
    }
}

pub type Exponents = SmallVec<[u8; 32]>;

/// Exponent vector (geometric slots first, then parameters).
///
/// Ordered graded-lexicographically: total degree first, then the
/// exponent vectors compared slot by slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Exponents);

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial(SmallVec::from_elem(0, width))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn geo_degree(&self, ngeo: usize) -> u32 {
        self.0[..ngeo].iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in the variables of an arena.
#[derive(Clone, Debug)]
pub struct MPoly {
    arena: Arc<VarArena>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        same_arena(&self.arena, &other.arena) && self.terms == other.terms
    }
}

impl Eq for MPoly {}

pub fn same_arena(a: &Arc<VarArena>, b: &Arc<VarArena>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl MPoly {
    pub fn zero(arena: &Arc<VarArena>) -> Self {
        MPoly {
            arena: arena.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arena: &Arc<VarArena>, c: Rational) -> Self {
        let mut p = MPoly::zero(arena);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(arena.width()), c);
        }
        p
    }

    pub fn one(arena: &Arc<VarArena>) -> Self {
        MPoly::constant(arena, Rational::one())
    }

    pub fn var(arena: &Arc<VarArena>, v: Var) -> Self {
        let mut m = Monomial::one(arena.width());
        m.0[arena.slot(v)] = 1;
        MPoly::from_terms(arena, [(m, Rational::one())])
    }

    pub fn from_terms(
        arena: &Arc<VarArena>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = MPoly::zero(arena);
        for (m, c) in terms {
            assert_eq!(m.0.len(), arena.width(), "monomial width mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Monomial `Π v^e` with coefficient `c`.
    pub fn term(arena: &Arc<VarArena>, c: Rational, powers: &[(Var, u8)]) -> Self {
        let mut m = Monomial::one(arena.width());
        for &(v, e) in powers {
            m.0[arena.slot(v)] += e;
        }
        MPoly::from_terms(arena, [(m, c)])
    }

    pub fn arena(&self) -> &Arc<VarArena> {
        &self.arena
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

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.arena.width()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Returns the constant if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest degree in the geometric variables alone.
    pub fn geo_degree(&self) -> Option<u32> {
        let ng = self.arena.ngeo();
        self.terms.keys().map(|m| m.geo_degree(ng)).max()
    }

    pub fn is_geo_homogeneous(&self, degree: u32) -> bool {
        let ng = self.arena.ngeo();
        self.terms.keys().all(|m| m.geo_degree(ng) == degree)
    }

    /// Degree in the listed variables only.
    pub fn degree_in(&self, vars: &[Var]) -> Option<u32> {
        let slots: Vec<usize> = vars.iter().map(|&v| self.arena.slot(v)).collect();
        self.terms
            .keys()
            .map(|m| slots.iter().map(|&s| m.0[s] as u32).sum())
            .max()
    }

    pub fn has_params(&self) -> bool {
        let ng = self.arena.ngeo();
        self.terms.keys().any(|m| m.0[ng..].iter().any(|&e| e > 0))
    }

    pub fn uses_var(&self, v: Var) -> bool {
        let s = self.arena.slot(v);
        self.terms.keys().any(|m| m.0[s] > 0)
    }

    fn check(&self, other: &MPoly) -> Result<(), PolyError> {
        if same_arena(&self.arena, &other.arena) {
            Ok(())
        } else {
            Err(PolyError::ArenaMismatch)
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in other.terms.iter() {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        Ok(MPoly {
            arena: self.arena.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.arena);
        }
        MPoly {
            arena: self.arena.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one(&self.arena);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Formal partial derivative in a geometric variable.
    pub fn diff(&self, v: Var) -> Result<MPoly, PolyError> {
        match v {
            Var::Param(_) => Err(PolyError::DiffParameter(self.arena.name(v).to_string())),
            Var::Geo(_) => Ok(self.diff_slot(self.arena.slot(v), 1)),
        }
    }

    /// Repeated derivative `∂^k` with respect to a geometric slot.
    pub fn diff_slot(&self, slot: usize, k: u8) -> MPoly {
        if k == 0 {
            return self.clone();
        }
        let mut out = MPoly::zero(&self.arena);
        for (m, c) in self.terms.iter() {
            let e = m.0[slot];
            if e < k {
                continue;
            }
            let mut factor = BigInt::one();
            for j in 0..k {
                factor *= BigInt::from(e - j);
            }
            let mut m2 = m.clone();
            m2.0[slot] = e - k;
            out.add_term(m2, c * Rational::from_integer(factor));
        }
        out
    }

    /// Applies `∂^α` for a multi-index over geometric slots.
    pub fn diff_multi(&self, alpha: &[u8]) -> MPoly {
        let mut p = self.clone();
        for (slot, &k) in alpha.iter().enumerate() {
            if k > 0 {
                p = p.diff_slot(slot, k);
                if p.is_zero() {
                    break;
                }
            }
        }
        p
    }

    /// Simultaneous substitution; variables not in the map are kept.
    pub fn substitute(&self, assignment: &HashMap<Var, MPoly>) -> Result<MPoly, PolyError> {
        for p in assignment.values() {
            self.check(p)?;
        }
        let width = self.arena.width();
        let subs: Vec<Option<&MPoly>> = (0..width)
            .map(|s| assignment.get(&self.arena.var_of_slot(s)))
            .collect();
        let mut power_cache: HashMap<(usize, u8), MPoly> = HashMap::new();
        let mut out = MPoly::zero(&self.arena);
        for (m, c) in self.terms.iter() {
            let mut kept = Monomial::one(width);
            let mut factor = MPoly::constant(&self.arena, c.clone());
            for (slot, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match subs[slot] {
                    None => kept.0[slot] = e,
                    Some(q) => {
                        let qp = power_cache
                            .entry((slot, e))
                            .or_insert_with(|| q.pow(e as u32))
                            .clone();
                        factor = &factor * &qp;
                    }
                }
            }
            let kept_poly = MPoly::from_terms(&self.arena, [(kept, Rational::one())]);
            out += &(&factor * &kept_poly);
        }
        Ok(out)
    }

    /// Substitutes rational values for some variables.
    pub fn specialize(&self, values: &[(Var, Rational)]) -> MPoly {
        let map: HashMap<Var, MPoly> = values
            .iter()
            .map(|(v, q)| (*v, MPoly::constant(&self.arena, q.clone())))
            .collect();
        self.substitute(&map).expect("same arena")
    }

    /// Evaluates at a full assignment of geometric slots (parameters must be absent
    /// or given in `params`).
    pub fn eval(&self, geo: &[Rational], params: &[Rational]) -> Rational {
        let ng = self.arena.ngeo();
        let mut total = Rational::zero();
        for (m, c) in self.terms.iter() {
            let mut v = c.clone();
            for (slot, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = if slot < ng { &geo[slot] } else { &params[slot - ng] };
                v *= pow_rat(x, e as u32);
            }
            total += v;
        }
        total
    }

    /// Evaluates in floating point; all parameters must be supplied.
    pub fn eval_f64(&self, geo: &[f64], params: &[f64]) -> f64 {
        let ng = self.arena.ngeo();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (slot, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        let x = if slot < ng { geo[slot] } else { params[slot - ng] };
                        v *= x.powi(e as i32);
                    }
                }
                v
            })
            .sum()
    }

    /// Renames geometric slots: slot `i` goes to `map[i]`.
    pub fn permute_geo(&self, map: &[usize]) -> MPoly {
        let ng = self.arena.ngeo();
        let mut out = MPoly::zero(&self.arena);
        for (m, c) in self.terms.iter() {
            let mut m2 = Monomial::one(self.arena.width());
            for i in 0..ng {
                if m.0[i] > 0 {
                    m2.0[map[i]] += m.0[i];
                }
            }
            m2.0[ng..].copy_from_slice(&m.0[ng..]);
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Splits into `Σ geo_monomial · param_coefficient`.
    pub fn geo_coefficients(&self) -> BTreeMap<Exponents, MPoly> {
        let ng = self.arena.ngeo();
        let mut out: BTreeMap<Exponents, MPoly> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            let key: Exponents = m.0[..ng].iter().copied().collect();
            let mut pm = Monomial::one(self.arena.width());
            pm.0[ng..].copy_from_slice(&m.0[ng..]);
            out.entry(key)
                .or_insert_with(|| MPoly::zero(&self.arena))
                .add_term(pm, c.clone());
        }
        out
    }

    /// Highest term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        assert!(same_arena(&self.arena, &divisor.arena));
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.arena);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c / &lc;
            let t = MPoly::from_terms(&self.arena, [(qm, qc)]);
            rem -= &(&t * divisor);
            quot += &t;
        }
        Some(quot)
    }

    /// Canonical text rendering, highest graded-lex term first.
    pub fn to_text(&self) -> String {
        self.render(false)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.render_monomial(m, latex);
            let coeff_is_one = a.is_one();
            if mono.is_empty() {
                s.push_str(&render_rational(&a, latex));
            } else {
                if !coeff_is_one {
                    s.push_str(&render_rational(&a, latex));
                    s.push_str(if latex { " " } else { "*" });
                }
                s.push_str(&mono);
            }
        }
        s
    }

    fn render_monomial(&self, m: &Monomial, latex: bool) -> String {
        let mut parts = Vec::new();
        for (slot, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = self.arena.name(self.arena.var_of_slot(slot));
            let name = if latex { latex_name(name) } else { name.to_string() };
            parts.push(match (e, latex) {
                (1, _) => name,
                (_, false) => format!("{name}^{e}"),
                (_, true) => format!("{name}^{{{e}}}"),
            });
        }
        parts.join(if latex { " " } else { "*" })
    }

    /// Parses the canonical text form produced by [`MPoly::to_text`].
    pub fn parse(arena: &Arc<VarArena>, text: &str) -> Result<MPoly, PolyError> {
        let text = text.trim();
        if text == "0" {
            return Ok(MPoly::zero(arena));
        }
        let mut out = MPoly::zero(arena);
        let mut rest = text;
        let mut sign_next: i64 = 1;
        if let Some(r) = rest.strip_prefix('-') {
            sign_next = -1;
            rest = r;
        }
        loop {
            let (chunk, next) = match (rest.find(" + "), rest.find(" - ")) {
                (None, None) => (rest, None),
                (a, b) => {
                    let (pos, sgn) = match (a, b) {
                        (Some(a), Some(b)) if a < b => (a, 1),
                        (Some(_), Some(b)) => (b, -1),
                        (Some(a), None) => (a, 1),
                        (None, Some(b)) => (b, -1),
                        (None, None) => unreachable!(),
                    };
                    (&rest[..pos], Some((sgn, &rest[pos + 3..])))
                }
            };
            let mut c = int(sign_next);
            let mut m = Monomial::one(arena.width());
            for factor in chunk.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(PolyError::Parse(format!("empty factor in `{chunk}`")));
                }
                if factor.chars().next().is_some_and(|ch| ch.is_ascii_digit()) {
                    c *= parse_rational(factor)?;
                } else {
                    let (name, e) = match factor.split_once('^') {
                        Some((n, e)) => (
                            n,
                            e.parse::<u8>()
                                .map_err(|_| PolyError::Parse(format!("bad exponent `{e}`")))?,
                        ),
                        None => (factor, 1),
                    };
                    let v = arena
                        .lookup(name)
                        .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                    m.0[arena.slot(v)] += e;
                }
            }
            out.add_term(m, c);
            match next {
                None => break,
                Some((sgn, r)) => {
                    sign_next = sgn;
                    rest = r;
                }
            }
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let bad = || PolyError::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn render_rational(q: &Rational, latex: bool) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if latex {
        let sign = if q.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", q.numer().abs(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn latex_name(name: &str) -> String {
    let greek = [
        ("λ", "\\lambda"),
        ("μ", "\\mu"),
        ("ξ", "\\xi"),
        ("ζ", "\\zeta"),
        ("Λ", "\\Lambda"),
    ];
    let mut base = name.to_string();
    let mut sub = String::new();
    if let Some(pos) = name.find(|c: char| c.is_ascii_digit()) {
        base = name[..pos].to_string();
        sub = name[pos..].to_string();
    }
    for (g, l) in greek {
        if base == g {
            base = l.to_string();
        }
    }
    if sub.is_empty() {
        base
    } else {
        format!("{base}_{{{sub}}}")
    }
}

pub fn pow_rat(x: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        self.checked_add(rhs).expect("arena mismatch")
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        self.checked_sub(rhs).expect("arena mismatch")
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        self.checked_mul(rhs).expect("arena mismatch")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        assert!(same_arena(&self.arena, &rhs.arena), "arena mismatch");
        for (m, c) in rhs.terms.iter() {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        assert!(same_arena(&self.arena, &rhs.arena), "arena mismatch");
        for (m, c) in rhs.terms.iter() {
            self.add_term(m.clone(), -c.clone());
        }
    }
}
