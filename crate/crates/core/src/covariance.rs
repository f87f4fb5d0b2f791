//! Infinitesimal conformal action on weighted densities and symbolic
//! intertwining checks for `F_{λ,μ}` and `B^{(k)}`.
//!
//! A generator with vector field `V` acts on densities of weight `λ` by
//! `dπ_λ(X) = −V·∇ − λ·m`, with `m = (r/2n)·div V`. Every multiplier is
//! compared against a finite-difference oracle built from exact group paths.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::bernstein::sample_points;
use crate::jordan::{Block, JordanAlgebra, Kind, Param};
use crate::linalg::{self, Matrix};
use crate::poly::{int, rat, MPoly, Monomial, Rational};
use crate::weyl::{BiDiffOp, MultiIndex, WeylOp};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CovarianceError {
    #[error("generator {name} disagrees with the oracle at {point:?}: {got} vs {expect}")]
    OracleMismatch {
        name: String,
        point: Vec<f64>,
        got: f64,
        expect: f64,
    },
    #[error("generators are linearly dependent")]
    Dependent,
    #[error("bracket [{0}, {1}] leaves the span of the generators")]
    NotClosed(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    Translation(usize),
    /// `V(x) = A x` in coordinates.
    Linear(Matrix),
    /// `V(x) = −P(x)e_j`, tangent to `ι∘n_{−te_j}∘ι`.
    Special(usize),
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub kind: GenKind,
    /// Components of `V` in block `x`.
    pub field: Vec<MPoly>,
    /// `V·∇` in block `x`.
    pub vectorfield: WeylOp,
    /// `m` with `dπ_λ = −V·∇ − λm`.
    pub multiplier: MPoly,
}

fn unit(n: usize, j: usize) -> Vec<Rational> {
    (0..n)
        .map(|i| if i == j { Rational::one() } else { Rational::zero() })
        .collect()
}

fn linear_field(alg: &JordanAlgebra, a: &Matrix) -> Vec<MPoly> {
    let x = alg.coords(Block::X);
    a.iter()
        .map(|row| {
            let mut v = MPoly::zero(alg.ring());
            for (c, xk) in row.iter().zip(&x) {
                if !c.is_zero() {
                    v += &xk.scale(c);
                }
            }
            v
        })
        .collect()
}

fn special_field(alg: &JordanAlgebra, j: usize) -> Vec<MPoly> {
    let x = alg.coords(Block::X);
    let w: Vec<MPoly> = unit(alg.n, j).into_iter().map(|c| alg.constant(c)).collect();
    let xw = alg.product_poly(&x, &w);
    let xxw = alg.product_poly(&x, &xw);
    let x2 = alg.product_poly(&x, &x);
    let x2w = alg.product_poly(&x2, &w);
    xxw.iter()
        .zip(&x2w)
        .map(|(a, b)| &b.clone() - &a.scale(&int(2)))
        .collect()
}

fn make(alg: &JordanAlgebra, name: String, kind: GenKind) -> Generator {
    let field = match &kind {
        GenKind::Translation(j) => unit(alg.n, *j).into_iter().map(|c| alg.constant(c)).collect(),
        GenKind::Linear(a) => linear_field(alg, a),
        GenKind::Special(j) => special_field(alg, *j),
    };
    let mut vectorfield = WeylOp::zero(alg.ring());
    let mut div = MPoly::zero(alg.ring());
    for (j, v) in field.iter().enumerate() {
        let slot = alg.block_slots(Block::X).start + j;
        vectorfield = vectorfield.add(&WeylOp::partial(alg.ring(), slot).left_mul(v));
        div += &v.diff_slot(slot, 1);
    }
    let multiplier = div.scale(&rat(alg.r as i64, 2 * alg.n as i64));
    Generator {
        name,
        kind,
        field,
        vectorfield,
        multiplier,
    }
}

/// Signs `ε_k` of `det = Σ ε_k x_k²` for the quadratic cases.
fn quadratic_signs(alg: &JordanAlgebra) -> Option<Vec<Rational>> {
    match alg.kind {
        Kind::Real => Some(vec![Rational::one()]),
        Kind::Spin { .. } => {
            let det = alg.det(Block::X);
            let x = alg.coords(Block::X);
            let eps: Vec<Rational> = x
                .iter()
                .map(|xk| {
                    let sq = xk.pow(2);
                    let (m, _) = sq.leading().unwrap();
                    det.terms()
                        .find(|(m2, _)| *m2 == m)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(Rational::zero)
                })
                .collect();
            Some(eps)
        }
        Kind::Sym(_) => None,
    }
}

/// Linear structure fields beyond the dilation: pseudo-rotations for the
/// quadratic cases, otherwise a basis of `span{L(a), [L(a),L(b)]}`.
fn structure_fields(alg: &JordanAlgebra) -> Vec<(String, Matrix)> {
    let n = alg.n;
    if let Some(eps) = quadratic_signs(alg) {
        let mut out = vec![];
        for j in 0..n {
            for k in j + 1..n {
                let mut a = vec![vec![Rational::zero(); n]; n];
                a[j][k] = eps[k].clone();
                a[k][j] = -eps[j].clone();
                out.push((format!("rotation_{}{}", j + 1, k + 1), a));
            }
        }
        return out;
    }
    let ls: Vec<Matrix> = (0..n).map(|a| alg.mult_matrix(&unit(n, a))).collect();
    let mut cands: Vec<Matrix> = ls.clone();
    for a in 0..n {
        for b in a + 1..n {
            let ab = linalg::mat_mul(&ls[a], &ls[b]);
            let ba = linalg::mat_mul(&ls[b], &ls[a]);
            cands.push(
                ab.iter()
                    .zip(&ba)
                    .map(|(r1, r2)| r1.iter().zip(r2).map(|(u, v)| u - v).collect())
                    .collect(),
            );
        }
    }
    // greedy basis, starting from the identity so the dilation is excluded
    let flat = |m: &Matrix| -> Vec<Rational> { m.iter().flatten().cloned().collect() };
    let mut rows = vec![flat(&linalg::identity(n))];
    let mut out = vec![];
    for c in cands {
        let mut trial = rows.clone();
        trial.push(flat(&c));
        if linalg::rank(&trial) == trial.len() {
            rows = trial;
            out.push((format!("structure_{}", out.len() + 1), c));
        }
    }
    out
}

/// Translations, dilation, structure fields and special conformal fields,
/// each validated against the finite-difference oracle.
pub fn generators(alg: &JordanAlgebra) -> Result<Vec<Generator>, CovarianceError> {
    let gens = generators_unchecked(alg);
    for g in &gens {
        validate(alg, g)?;
    }
    Ok(gens)
}

pub fn generators_unchecked(alg: &JordanAlgebra) -> Vec<Generator> {
    let n = alg.n;
    let mut gens = vec![];
    for j in 0..n {
        gens.push(make(alg, format!("translation_{}", j + 1), GenKind::Translation(j)));
    }
    gens.push(make(alg, "dilation".into(), GenKind::Linear(linalg::identity(n))));
    for (name, a) in structure_fields(alg) {
        gens.push(make(alg, name, GenKind::Linear(a)));
    }
    for j in 0..n {
        gens.push(make(alg, format!("special_{}", j + 1), GenKind::Special(j)));
    }
    gens
}

/// `dπ_w(X)` acting on block `b`.
pub fn action(alg: &JordanAlgebra, g: &Generator, b: Block, weight: &MPoly) -> WeylOp {
    let mv = [(Block::X, b)];
    let mut op = WeylOp::zero(alg.ring());
    for (j, v) in g.field.iter().enumerate() {
        let slot = alg.block_slots(b).start + j;
        op = op.sub(&WeylOp::partial(alg.ring(), slot).left_mul(&alg.rename(v, &mv)));
    }
    let m = alg.rename(&g.multiplier, &mv);
    op.sub(&WeylOp::multiplication(&(weight * &m)))
}

/// `dπ_λ(X)⊗1 + 1⊗dπ_μ(X)` on `V×V`.
pub fn tensor_action(alg: &JordanAlgebra, g: &Generator, lambda: &MPoly, mu: &MPoly) -> WeylOp {
    action(alg, g, Block::X, lambda).add(&action(alg, g, Block::Y, mu))
}

/// Operator `T̃` on `V×V` with `res∘T̃ = dπ_w(X)∘res`.
fn diagonal_action(alg: &JordanAlgebra, g: &Generator, weight: &MPoly) -> WeylOp {
    let mut op = WeylOp::zero(alg.ring());
    for (j, v) in g.field.iter().enumerate() {
        for b in [Block::X, Block::Y] {
            let slot = alg.block_slots(b).start + j;
            op = op.sub(&WeylOp::partial(alg.ring(), slot).left_mul(v));
        }
    }
    op.sub(&WeylOp::multiplication(&(weight * &g.multiplier)))
}

fn weights(alg: &JordanAlgebra, shift: i64) -> (MPoly, MPoly) {
    let c = alg.constant(int(shift));
    (
        &alg.param(Param::Lambda) + &c,
        &alg.param(Param::Mu) + &c,
    )
}

/// `F∘T_{λ,μ}(X) − T_{λ+1,μ+1}(X)∘F` for every generator.
pub fn check_intertwine_f(
    alg: &JordanAlgebra,
    gens: &[Generator],
    f: &WeylOp,
) -> Vec<(String, WeylOp)> {
    let (l0, m0) = weights(alg, 0);
    let (l1, m1) = weights(alg, 1);
    gens.iter()
        .map(|g| {
            let lhs = f.compose(&tensor_action(alg, g, &l0, &m0));
            let rhs = tensor_action(alg, g, &l1, &m1).compose(f);
            (g.name.clone(), lhs.sub(&rhs))
        })
        .collect()
}

/// `B∘T_{λ,μ}(X) − dπ_{λ+μ+2k}(X)∘B` for every generator.
pub fn check_intertwine_b(
    alg: &JordanAlgebra,
    gens: &[Generator],
    b: &BiDiffOp,
    k: u32,
) -> Vec<(String, BiDiffOp)> {
    let (l, m) = weights(alg, 0);
    let target = &(&l + &m) + &alg.constant(int(2 * k as i64));
    let lifted = b.lift();
    gens.iter()
        .map(|g| {
            let lhs = b.sharp_compose(alg, &tensor_action(alg, g, &l, &m));
            let rhs =
                BiDiffOp::from_restriction(alg, &diagonal_action(alg, g, &target).compose(&lifted));
            (g.name.clone(), lhs.sub(&rhs))
        })
        .collect()
}

/// `res∘T_{λ,μ}(X) − dπ_{λ+μ}(X)∘res`.
pub fn check_restriction(alg: &JordanAlgebra, gens: &[Generator]) -> Vec<(String, BiDiffOp)> {
    check_intertwine_b(alg, gens, &BiDiffOp::restriction(alg), 0)
}

/// `M∘T_{λ,μ}(X) − T_{λ−1,μ−1}(X)∘M` with `M` multiplication by `det(x−y)`.
pub fn check_multiplication(alg: &JordanAlgebra, gens: &[Generator]) -> Vec<(String, WeylOp)> {
    let x = alg.coords(Block::X);
    let y = alg.coords(Block::Y);
    let map = (0..alg.n)
        .map(|j| (alg.var(Block::X, j), &x[j] - &y[j]))
        .collect();
    let m = WeylOp::multiplication(&alg.det(Block::X).substitute(&map).unwrap());
    let (l0, m0) = weights(alg, 0);
    let (l1, m1) = weights(alg, -1);
    gens.iter()
        .map(|g| {
            let lhs = m.compose(&tensor_action(alg, g, &l0, &m0));
            let rhs = tensor_action(alg, g, &l1, &m1).compose(&m);
            (g.name.clone(), lhs.sub(&rhs))
        })
        .collect()
}

/// Structure constants `[X_a, X_b] = Σ_c C[a][b][c] X_c` of `dπ_λ`.
#[derive(Clone, Debug)]
pub struct BracketTable {
    pub names: Vec<String>,
    pub constants: Vec<Vec<Vec<Rational>>>,
}

fn flatten(op: &WeylOp) -> BTreeMap<(MultiIndex, Monomial), Rational> {
    let mut out = BTreeMap::new();
    for (idx, c) in op.terms() {
        for (m, v) in c.terms() {
            out.insert((idx.clone(), m.clone()), v.clone());
        }
    }
    out
}

/// Brackets of `dπ_λ(X)` with symbolic `λ`, solved exactly in the span of
/// the generators.
pub fn bracket_table(
    alg: &JordanAlgebra,
    gens: &[Generator],
) -> Result<BracketTable, CovarianceError> {
    let lam = alg.param(Param::Lambda);
    let ops: Vec<WeylOp> = gens.iter().map(|g| action(alg, g, Block::X, &lam)).collect();
    let flat: Vec<_> = ops.iter().map(flatten).collect();
    let mut keys: Vec<_> = flat.iter().flat_map(|f| f.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let column = |f: &BTreeMap<(MultiIndex, Monomial), Rational>, keys: &[(MultiIndex, Monomial)]| {
        keys.iter()
            .map(|k| f.get(k).cloned().unwrap_or_else(Rational::zero))
            .collect::<Vec<_>>()
    };
    let cols: Vec<Vec<Rational>> = flat.iter().map(|f| column(f, &keys)).collect();
    let mat = linalg::transpose(&cols);
    if linalg::rank(&mat) != gens.len() {
        return Err(CovarianceError::Dependent);
    }
    let nb = gens.len();
    let mut constants = vec![vec![vec![Rational::zero(); nb]; nb]; nb];
    for a in 0..nb {
        for b in a + 1..nb {
            let br = flatten(&ops[a].commutator(&ops[b]));
            if br.keys().any(|k| keys.binary_search(k).is_err()) {
                return Err(CovarianceError::NotClosed(gens[a].name.clone(), gens[b].name.clone()));
            }
            let sol = linalg::solve(&mat, &column(&br, &keys)).ok_or_else(|| {
                CovarianceError::NotClosed(gens[a].name.clone(), gens[b].name.clone())
            })?;
            for c in 0..nb {
                constants[b][a][c] = -sol[c].clone();
                constants[a][b][c] = sol[c].clone();
            }
        }
    }
    Ok(BracketTable {
        names: gens.iter().map(|g| g.name.clone()).collect(),
        constants,
    })
}

impl BracketTable {
    /// `K(a,b) = tr(ad a ∘ ad b)`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.names.len();
        let c = &self.constants;
        let mut k = vec![vec![Rational::zero(); n]; n];
        for a in 0..n {
            for b in a..n {
                let mut s = Rational::zero();
                for i in 0..n {
                    for j in 0..n {
                        if !c[b][i][j].is_zero() && !c[a][j][i].is_zero() {
                            s += &c[b][i][j] * &c[a][j][i];
                        }
                    }
                }
                k[a][b] = s.clone();
                k[b][a] = s;
            }
        }
        k
    }

    /// Jacobi identity from the structure constants.
    pub fn jacobi_holds(&self) -> bool {
        let n = self.names.len();
        let c = &self.constants;
        for a in 0..n {
            for b in a + 1..n {
                for d in b + 1..n {
                    for out in 0..n {
                        let mut s = Rational::zero();
                        for e in 0..n {
                            s += &c[b][d][e] * &c[a][e][out];
                            s += &c[d][a][e] * &c[b][e][out];
                            s += &c[a][b][e] * &c[d][e][out];
                        }
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// `(dim, dim of a maximal compact subalgebra)` of the expected conformal
/// algebra: `so(p+1,q+1)` for `ℝ^{p,q}`, `sp(2m,ℝ)` for `Sym(m)`.
pub fn expected_conformal_algebra(alg: &JordanAlgebra) -> (usize, usize) {
    match alg.kind {
        Kind::Sym(m) => (m * (2 * m + 1), m * m),
        _ => {
            let eps = quadratic_signs(alg).unwrap();
            let p = eps.iter().filter(|e| e.is_positive()).count();
            let q = eps.len() - p;
            let n = p + q + 2;
            (n * (n - 1) / 2, p * (p + 1) / 2 + q * (q + 1) / 2)
        }
    }
}

// ---- finite-difference oracle ----

/// One exact conformal map.
#[derive(Clone, Debug)]
pub enum Step {
    Translate(Vec<f64>),
    Linear(Vec<Vec<f64>>),
    /// `ι: x ↦ −x^{-1}`.
    Inversion,
}

fn mat_inverse_f64(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .unwrap();
        m.swap(c, p);
        let d = m[c][c];
        for v in m[c].iter_mut() {
            *v /= d;
        }
        for i in 0..n {
            if i != c {
                let f = m[i][c];
                let row = m[c].clone();
                for (v, rv) in m[i].iter_mut().zip(row) {
                    *v -= f * rv;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn mat_exp_f64(a: &Matrix, t: f64) -> Vec<Vec<f64>> {
    let n = a.len();
    let af: Vec<Vec<f64>> = a
        .iter()
        .map(|r| r.iter().map(|v| v.to_f64().unwrap() * t).collect())
        .collect();
    let mut out: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut term = out.clone();
    for k in 1..40 {
        let next: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| term[i][l] * af[l][j]).sum::<f64>() / k as f64)
                    .collect()
            })
            .collect();
        term = next;
        for i in 0..n {
            for j in 0..n {
                out[i][j] += term[i][j];
            }
        }
    }
    out
}

/// Inverse of a composition of steps (steps apply left to right).
pub fn invert_steps(steps: &[Step]) -> Vec<Step> {
    steps
        .iter()
        .rev()
        .map(|s| match s {
            Step::Translate(v) => Step::Translate(v.iter().map(|x| -x).collect()),
            Step::Linear(a) => Step::Linear(mat_inverse_f64(a)),
            Step::Inversion => Step::Inversion,
        })
        .collect()
}

/// `(g(x), c(g,x))` via `c(g₂g₁,x) = c(g₂,g₁x)c(g₁,x)`, `c(n_v)=1`,
/// `c(ℓ)=χ(ℓ)^{-1}`, `c(ι,x)=det(x)²`.
pub fn apply_steps(alg: &JordanAlgebra, steps: &[Step], x: &[f64]) -> Option<(Vec<f64>, f64)> {
    let mut p = x.to_vec();
    let mut c = 1.0;
    for s in steps {
        match s {
            Step::Translate(v) => {
                for (a, b) in p.iter_mut().zip(v) {
                    *a += b;
                }
            }
            Step::Linear(a) => {
                let q: Vec<f64> = a
                    .iter()
                    .map(|r| r.iter().zip(&p).map(|(u, v)| u * v).sum())
                    .collect();
                let d0 = alg.det_f64(&p);
                let d1 = alg.det_f64(&q);
                if d0.abs() < 1e-8 || d1.abs() < 1e-8 {
                    return None;
                }
                c *= d0 / d1;
                p = q;
            }
            Step::Inversion => {
                let d = alg.det_f64(&p);
                if d.abs() < 1e-8 {
                    return None;
                }
                c *= d * d;
                p = alg.inverse_f64(&p).into_iter().map(|v| -v).collect();
            }
        }
    }
    Some((p, c))
}

/// Exact path `t ↦ g_t` tangent to the generator.
pub fn path(g: &Generator, n: usize, t: f64) -> Vec<Step> {
    let e = |j: usize, s: f64| -> Vec<f64> { (0..n).map(|i| if i == j { s } else { 0.0 }).collect() };
    match &g.kind {
        GenKind::Translation(j) => vec![Step::Translate(e(*j, t))],
        GenKind::Linear(a) => vec![Step::Linear(mat_exp_f64(a, t))],
        GenKind::Special(j) => vec![Step::Inversion, Step::Translate(e(*j, -t)), Step::Inversion],
    }
}

/// `d/dt|₀ c(g_t^{-1},x)^{−λ/2} f(g_t^{-1}x)` by Richardson-extrapolated
/// central differences; `None` near the singular locus.
pub fn oracle_finite_difference(
    alg: &JordanAlgebra,
    path: &dyn Fn(f64) -> Vec<Step>,
    f: &MPoly,
    x: &[f64],
    lambda: f64,
) -> Option<f64> {
    let ng = alg.ring().ngeo();
    let np = alg.ring().nparams();
    let value = |t: f64| -> Option<f64> {
        let (y, c) = apply_steps(alg, &invert_steps(&path(t)), x)?;
        if c <= 0.0 {
            return None;
        }
        let mut geo = y;
        geo.resize(ng, 0.0);
        Some(c.powf(-lambda / 2.0) * f.eval_f64(&geo, &vec![0.0; np]))
    };
    let levels = 6;
    let mut table: Vec<f64> = vec![];
    let mut h = 1e-2;
    for _ in 0..levels {
        table.push((value(h)? - value(-h)?) / (2.0 * h));
        h /= 2.0;
    }
    let mut pow4 = 4.0;
    for k in 1..levels {
        for i in (k..levels).rev() {
            table[i] = (pow4 * table[i] - table[i - 1]) / (pow4 - 1.0);
        }
        pow4 *= 4.0;
    }
    Some(table[levels - 1])
}

fn probe(alg: &JordanAlgebra) -> MPoly {
    let x = alg.coords(Block::X);
    let mut f = MPoly::one(alg.ring());
    for (j, xj) in x.iter().enumerate() {
        f += &xj.scale(&int(j as i64 + 2));
    }
    f += &(&x[0].pow(2) * &x[alg.n - 1]);
    f
}

/// Compares `dπ_λ(X)f` with the oracle at 20 points and two weights.
pub fn validate(alg: &JordanAlgebra, g: &Generator) -> Result<(), CovarianceError> {
    let f = probe(alg);
    let ng = alg.ring().ngeo();
    let np = alg.ring().nparams();
    let pts: Vec<Vec<f64>> = sample_points(alg, 20)
        .iter()
        .map(|p| p.iter().map(|v| v.to_f64().unwrap()).collect())
        .collect();
    for lam in [rat(7, 10), rat(-13, 10)] {
        let op = action(alg, g, Block::X, &alg.constant(lam.clone()));
        let df = op.apply(&f);
        for x in &pts {
            let pathf = |t: f64| path(g, alg.n, t);
            let Some(got) = oracle_finite_difference(alg, &pathf, &f, x, lam.to_f64().unwrap())
            else {
                continue;
            };
            let mut geo = x.clone();
            geo.resize(ng, 0.0);
            let expect = df.eval_f64(&geo, &vec![0.0; np]);
            if (got - expect).abs() > 1e-6 * (1.0 + expect.abs()) {
                return Err(CovarianceError::OracleMismatch {
                    name: g.name.clone(),
                    point: x.clone(),
                    got,
                    expect,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dilation_multiplier_is_half_rank() {
        let a = JordanAlgebra::rpq(2, 1);
        let g = generators(&a).unwrap();
        let d = g.iter().find(|g| g.name == "dilation").unwrap();
        assert_eq!(d.multiplier, a.constant(rat(a.r as i64, 2)));
    }

    #[test]
    fn line_is_sl2() {
        let a = JordanAlgebra::real();
        let g = generators(&a).unwrap();
        assert_eq!(g.len(), 3);
        let t = bracket_table(&a, &g).unwrap();
        assert_eq!(linalg::inertia(&t.killing_form()), (2, 1, 0));
    }

    #[test]
    fn translation_oracle_is_exact_direction() {
        let a = JordanAlgebra::rpq(1, 1);
        let x0 = a.coord(Block::X, 0);
        let pathf = |t: f64| vec![Step::Translate(vec![t, 0.0])];
        let d = oracle_finite_difference(&a, &pathf, &x0, &[0.3, 0.1], 1.5).unwrap();
        // π(n_{tv}) f(x) = f(x − tv)
        assert!((d + 1.0).abs() < 1e-10);
        let constant = |_t: f64| vec![];
        let d = oracle_finite_difference(&a, &constant, &x0.pow(3), &[0.3, 0.1], 1.5).unwrap();
        assert!(d.abs() < 1e-12);
    }
}
