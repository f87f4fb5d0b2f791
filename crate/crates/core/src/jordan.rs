//! Concrete simple real Jordan algebras.
//!
//! Every instance fixes rational coordinates `x_1..x_n` in which the trace
//! form `τ(x,y) = tr(x∘y)` is diagonal. All polynomials attached to an
//! instance live in one shared arena holding four coordinate blocks
//! (`x`, `y`, `ξ`, `ζ`) and the parameters `s, t, λ, μ, Λ, M`.

use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::poly::{int, rat, MPoly, Rational, Var, VarArena};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JordanError {
    #[error("unknown algebra id `{0}`")]
    UnknownAlgebra(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("element is not invertible")]
    Singular,
    #[error("frame is not a Jordan frame: {0}")]
    BadFrame(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    X,
    Y,
    Xi,
    Zeta,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::X, Block::Y, Block::Xi, Block::Zeta];

    fn index(self) -> usize {
        match self {
            Block::X => 0,
            Block::Y => 1,
            Block::Xi => 2,
            Block::Zeta => 3,
        }
    }

    fn stem(self) -> &'static str {
        match self {
            Block::X => "x",
            Block::Y => "y",
            Block::Xi => "ξ",
            Block::Zeta => "ζ",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    S,
    T,
    Lambda,
    Mu,
    BigLambda,
    BigM,
}

impl Param {
    pub const ALL: [Param; 6] = [
        Param::S,
        Param::T,
        Param::Lambda,
        Param::Mu,
        Param::BigLambda,
        Param::BigM,
    ];

    pub fn var(self) -> Var {
        Var::Param(self as usize)
    }

    pub fn name(self) -> &'static str {
        ["s", "t", "λ", "μ", "Λ", "M"][self as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Real,
    /// `ℝ×ℝ^{n−1}` with `det = x_1²+…+x_p²−x_{p+1}²−…−x_n²`.
    Spin { p: usize, q: usize },
    /// Symmetric `m×m` matrices.
    Sym(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeirceData {
    /// `dims[i][j]` for `i ≤ j`, indexed by frame positions.
    pub dims: Vec<Vec<usize>>,
    pub d: usize,
    pub e: usize,
}

type Table = Vec<Vec<Vec<(usize, Rational)>>>;

#[derive(Clone, Debug)]
pub struct JordanAlgebra {
    pub id: String,
    pub kind: Kind,
    pub n: usize,
    pub r: usize,
    pub r_plus: usize,
    pub d: usize,
    pub e: usize,
    /// `table[i][j]` lists `(k, c)` with `e_i∘e_j = Σ c e_k`.
    pub table: Table,
    /// Diagonal of the trace form.
    pub trace_diag: Vec<Rational>,
    pub cartan_signs: Vec<i8>,
    /// Scale `ν` of the polarity `g = τ/ν` used for `∂(p)`.
    pub nu: Rational,
    pub unit: Vec<Rational>,
    pub frame: Vec<Vec<Rational>>,
    arena: Arc<VarArena>,
    det_x: MPoly,
    trace_x: MPoly,
    adj_x: Vec<MPoly>,
    minors_x: Vec<MPoly>,
}

pub const CATALOG: &[&str] = &[
    "R", "Rpq:1,1", "Rpq:2,1", "Rpq:1,2", "Rpq:2,2", "Rpq:3,1", "Sym2", "Sym3", "spin:3", "spin:4",
    "spin:5",
];

fn e_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

impl JordanAlgebra {
    pub fn from_id(id: &str) -> Result<Self, JordanError> {
        let bad = || JordanError::UnknownAlgebra(id.to_string());
        match id {
            "R" => Ok(Self::real()),
            "Sym2" => Ok(Self::sym(2)),
            "Sym3" => Ok(Self::sym(3)),
            _ => {
                if let Some(rest) = id.strip_prefix("Rpq:") {
                    let (p, q) = rest.split_once(',').ok_or_else(bad)?;
                    let p: usize = p.trim().parse().map_err(|_| bad())?;
                    let q: usize = q.trim().parse().map_err(|_| bad())?;
                    if p == 0 || q == 0 || p + q > 6 {
                        return Err(bad());
                    }
                    Ok(Self::rpq(p, q))
                } else if let Some(rest) = id.strip_prefix("spin:") {
                    let n: usize = rest.trim().parse().map_err(|_| bad())?;
                    if !(2..=6).contains(&n) {
                        return Err(bad());
                    }
                    Ok(Self::spin(n))
                } else {
                    Err(bad())
                }
            }
        }
    }

    pub fn real() -> Self {
        let table = vec![vec![vec![(0, Rational::one())]]];
        Self::assemble("R".into(), Kind::Real, 1, 1, 1, 0, 0, table, int(1), vec![e_vec(1, 0)])
    }

    /// `ℝ^{p,q}` realized as a spin factor; needs `p, q ≥ 1`.
    pub fn rpq(p: usize, q: usize) -> Self {
        assert!(p >= 1 && q >= 1);
        let n = p + q;
        // B(u,v) = −Σ_{2..p} u_j v_j + Σ_{>p} u_j v_j on the last n−1 slots
        let b = |j: usize| -> Rational { if j < p { int(-1) } else { int(1) } };
        let mut table: Table = vec![vec![vec![]; n]; n];
        table[0][0] = vec![(0, int(1))];
        for j in 1..n {
            table[0][j] = vec![(j, int(1))];
            table[j][0] = vec![(j, int(1))];
            table[j][j] = vec![(0, b(j))];
        }
        let half = rat(1, 2);
        let mut c1 = vec![Rational::zero(); n];
        c1[0] = half.clone();
        c1[p] = half.clone();
        let mut c2 = vec![Rational::zero(); n];
        c2[0] = half.clone();
        c2[p] = -half;
        Self::assemble(
            format!("Rpq:{p},{q}"),
            Kind::Spin { p, q },
            n,
            2,
            2,
            n - 2,
            0,
            table,
            int(2),
            vec![c1, c2],
        )
    }

    /// Euclidean spin factor `J(n) = ℝ×ℝ^{n−1}`, i.e. `ℝ^{1,n−1}`.
    pub fn spin(n: usize) -> Self {
        let mut a = Self::rpq(1, n - 1);
        a.id = format!("spin:{n}");
        a
    }

    pub fn sym(m: usize) -> Self {
        let pairs = sym_pairs(m);
        let n = pairs.len();
        let index = |i: usize, j: usize| -> usize {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            pairs.iter().position(|&p| p == (a, b)).unwrap()
        };
        let matrix_of = |k: usize| -> Matrix {
            let (i, j) = pairs[k];
            let mut mm = vec![vec![Rational::zero(); m]; m];
            mm[i][j] = Rational::one();
            mm[j][i] = Rational::one();
            mm
        };
        let mut table: Table = vec![vec![vec![]; n]; n];
        for a in 0..n {
            for b in 0..n {
                let (ma, mb) = (matrix_of(a), matrix_of(b));
                let ab = linalg::mat_mul(&ma, &mb);
                let ba = linalg::mat_mul(&mb, &ma);
                let mut entries = vec![];
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    let v = (&ab[i][j] + &ba[i][j]) * rat(1, 2);
                    if !v.is_zero() {
                        entries.push((k, v));
                    }
                }
                table[a][b] = entries;
            }
        }
        let frame = (0..m).map(|i| e_vec(n, index(i, i))).collect();
        Self::assemble(
            format!("Sym{m}"),
            Kind::Sym(m),
            n,
            m,
            m,
            1,
            0,
            table,
            int(1),
            frame,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        id: String,
        kind: Kind,
        n: usize,
        r: usize,
        r_plus: usize,
        d: usize,
        e: usize,
        table: Table,
        nu: Rational,
        frame: Vec<Vec<Rational>>,
    ) -> Self {
        let mut geo = Vec::with_capacity(4 * n);
        for b in Block::ALL {
            for i in 0..n {
                geo.push(if n == 1 {
                    b.stem().to_string()
                } else {
                    format!("{}{}", b.stem(), i + 1)
                });
            }
        }
        let arena = VarArena::new(geo, Param::ALL.iter().map(|p| p.name().to_string()));
        let unit = match &kind {
            Kind::Real | Kind::Spin { .. } => e_vec(n, 0),
            Kind::Sym(m) => {
                let pairs = sym_pairs(*m);
                (0..n)
                    .map(|k| if pairs[k].0 == pairs[k].1 { int(1) } else { int(0) })
                    .collect()
            }
        };
        let xs: Vec<MPoly> = (0..n).map(|i| MPoly::var(&arena, Var::Geo(i))).collect();
        let trace_x = match &kind {
            Kind::Real => xs[0].clone(),
            Kind::Spin { .. } => xs[0].scale(&int(2)),
            Kind::Sym(m) => {
                let pairs = sym_pairs(*m);
                let mut t = MPoly::zero(&arena);
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if i == j {
                        t += &xs[k];
                    }
                }
                t
            }
        };
        let mut alg = JordanAlgebra {
            id,
            kind,
            n,
            r,
            r_plus,
            d,
            e,
            table,
            trace_diag: vec![],
            cartan_signs: vec![],
            nu,
            unit,
            frame,
            arena: arena.clone(),
            det_x: MPoly::zero(&arena),
            trace_x,
            adj_x: vec![],
            minors_x: vec![],
        };
        // τ(e_i, e_j) = tr(e_i∘e_j); coordinates are chosen so that it is diagonal
        let tr_lin: Vec<Rational> = (0..n)
            .map(|i| alg.trace_x.eval(&e_vec(n, i), &[]))
            .collect();
        let trace_of = |v: &[Rational]| -> Rational {
            v.iter().zip(&tr_lin).fold(Rational::zero(), |a, (x, t)| a + x * t)
        };
        for i in 0..n {
            for j in 0..n {
                let v = trace_of(&alg.product(&e_vec(n, i), &e_vec(n, j)));
                assert!(i == j || v.is_zero(), "trace form must be diagonal");
                if i == j {
                    alg.trace_diag.push(v);
                }
            }
        }
        alg.cartan_signs = alg
            .trace_diag
            .iter()
            .map(|t| if t.is_positive() { 1 } else { -1 })
            .collect();
        alg.adj_x = alg.build_adjoint(&xs);
        alg.det_x = alg.build_det(&xs);
        alg.minors_x = alg.build_minors(&xs);
        alg
    }

    fn build_adjoint(&self, xs: &[MPoly]) -> Vec<MPoly> {
        let unit: Vec<MPoly> = self
            .unit
            .iter()
            .map(|c| MPoly::constant(&self.arena, c.clone()))
            .collect();
        let tr = &self.trace_x;
        match self.r {
            1 => unit,
            2 => unit
                .iter()
                .zip(xs)
                .map(|(u, x)| &(tr * u) - x)
                .collect(),
            3 => {
                let x2 = self.product_poly(xs, xs);
                let tr_x2 = self.trace_poly(&x2);
                let a2 = (&(tr * tr) - &tr_x2).scale(&rat(1, 2));
                (0..self.n)
                    .map(|k| &(&x2[k] - &(tr * &xs[k])) + &(&a2 * &unit[k]))
                    .collect()
            }
            _ => unimplemented!("rank > 3"),
        }
    }

    fn build_det(&self, xs: &[MPoly]) -> MPoly {
        // x∘x^♯ = det(x)·1
        let prod = self.product_poly(xs, &self.adj_x);
        let k = self.unit.iter().position(|c| !c.is_zero()).unwrap();
        let det = prod[k].scale(&self.unit[k].recip());
        debug_assert!((0..self.n).all(|i| prod[i] == det.scale(&self.unit[i])));
        det
    }

    fn build_minors(&self, xs: &[MPoly]) -> Vec<MPoly> {
        match &self.kind {
            Kind::Real => vec![xs[0].clone()],
            Kind::Spin { p, .. } => vec![&xs[0] + &xs[*p], self.det_x.clone()],
            Kind::Sym(m) => {
                let pairs = sym_pairs(*m);
                let entry = |i: usize, j: usize| {
                    let (a, b) = if i <= j { (i, j) } else { (j, i) };
                    xs[pairs.iter().position(|&p| p == (a, b)).unwrap()].clone()
                };
                (1..=*m)
                    .map(|k| {
                        let mat: Vec<Vec<MPoly>> =
                            (0..k).map(|i| (0..k).map(|j| entry(i, j)).collect()).collect();
                        poly_det(&mat)
                    })
                    .collect()
            }
        }
    }

    pub fn ring(&self) -> &Arc<VarArena> {
        &self.arena
    }

    pub fn is_euclidean(&self) -> bool {
        self.cartan_signs.iter().all(|&s| s > 0)
    }

    pub fn var(&self, b: Block, i: usize) -> Var {
        Var::Geo(b.index() * self.n + i)
    }

    pub fn block_slots(&self, b: Block) -> std::ops::Range<usize> {
        b.index() * self.n..(b.index() + 1) * self.n
    }

    pub fn coord(&self, b: Block, i: usize) -> MPoly {
        MPoly::var(&self.arena, self.var(b, i))
    }

    pub fn coords(&self, b: Block) -> Vec<MPoly> {
        (0..self.n).map(|i| self.coord(b, i)).collect()
    }

    pub fn param(&self, p: Param) -> MPoly {
        MPoly::var(&self.arena, p.var())
    }

    pub fn constant(&self, c: Rational) -> MPoly {
        MPoly::constant(&self.arena, c)
    }

    /// Moves every variable of block `from` to block `to`.
    pub fn rename(&self, p: &MPoly, moves: &[(Block, Block)]) -> MPoly {
        let mut map: Vec<usize> = (0..4 * self.n).collect();
        for &(from, to) in moves {
            for i in 0..self.n {
                map[from.index() * self.n + i] = to.index() * self.n + i;
            }
        }
        p.permute_geo(&map)
    }

    pub fn det(&self, b: Block) -> MPoly {
        self.rename(&self.det_x, &[(Block::X, b)])
    }

    pub fn trace(&self, b: Block) -> MPoly {
        self.rename(&self.trace_x, &[(Block::X, b)])
    }

    /// Principal minors `Δ_1..Δ_{r₊}` in block `b`.
    pub fn minors(&self, b: Block) -> Vec<MPoly> {
        self.minors_x
            .iter()
            .map(|m| self.rename(m, &[(Block::X, b)]))
            .collect()
    }

    /// Components of the adjoint `x^♯` (so that `x∘x^♯ = det(x)·1`).
    pub fn adjoint(&self, b: Block) -> Vec<MPoly> {
        self.adj_x
            .iter()
            .map(|m| self.rename(m, &[(Block::X, b)]))
            .collect()
    }

    /// `g_i = τ_ii/ν`; `∂(x_i)` acts as `g_i^{-1}∂/∂x_i`.
    pub fn polarity(&self, i: usize) -> Rational {
        &self.trace_diag[i] / &self.nu
    }

    /// Positive weights `|g_i|` used by the Fischer product.
    pub fn fischer_weight(&self, i: usize) -> Rational {
        self.polarity(i).abs()
    }

    fn check_dim(&self, v: usize) -> Result<(), JordanError> {
        if v == self.n {
            Ok(())
        } else {
            Err(JordanError::Dimension {
                expected: self.n,
                got: v,
            })
        }
    }

    pub fn try_product(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, JordanError> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        Ok(self.product(x, y))
    }

    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in &self.table[i][j] {
                    out[*k] += xi * yj * c;
                }
            }
        }
        out
    }

    pub fn product_f64(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                for (k, c) in &self.table[i][j] {
                    out[*k] += x[i] * y[j] * c.to_f64().unwrap();
                }
            }
        }
        out
    }

    pub fn product_poly(&self, x: &[MPoly], y: &[MPoly]) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(&self.arena); self.n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.table[i][j].is_empty() {
                    continue;
                }
                let xy = xi * yj;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &xy.scale(c);
                }
            }
        }
        out
    }

    fn trace_poly(&self, v: &[MPoly]) -> MPoly {
        let mut t = MPoly::zero(&self.arena);
        for (i, vi) in v.iter().enumerate() {
            let c = self.trace_x.eval(&e_vec(self.n, i), &[]);
            if !c.is_zero() {
                t += &vi.scale(&c);
            }
        }
        t
    }

    fn point(&self, x: &[Rational]) -> Vec<Rational> {
        let mut g = x.to_vec();
        g.resize(4 * self.n, Rational::zero());
        g
    }

    pub fn det_at(&self, x: &[Rational]) -> Rational {
        self.det_x.eval(&self.point(x), &[])
    }

    pub fn det_f64(&self, x: &[f64]) -> f64 {
        let mut g = x.to_vec();
        g.resize(4 * self.n, 0.0);
        self.det_x.eval_f64(&g, &[])
    }

    pub fn trace_at(&self, x: &[Rational]) -> Rational {
        self.trace_x.eval(&self.point(x), &[])
    }

    pub fn inverse(&self, x: &[Rational]) -> Result<Vec<Rational>, JordanError> {
        self.check_dim(x.len())?;
        let dt = self.det_at(x);
        if dt.is_zero() {
            return Err(JordanError::Singular);
        }
        let g = self.point(x);
        Ok(self.adj_x.iter().map(|a| a.eval(&g, &[]) / &dt).collect())
    }

    pub fn inverse_f64(&self, x: &[f64]) -> Vec<f64> {
        let mut g = x.to_vec();
        g.resize(4 * self.n, 0.0);
        let dt = self.det_x.eval_f64(&g, &[]);
        self.adj_x.iter().map(|a| a.eval_f64(&g, &[]) / dt).collect()
    }

    /// Matrix of `L(v): x ↦ v∘x`.
    pub fn mult_matrix(&self, v: &[Rational]) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.n)
            .map(|j| self.product(v, &e_vec(self.n, j)))
            .collect();
        linalg::transpose(&cols)
    }

    pub fn check_frame(&self) -> Result<(), JordanError> {
        let n = self.n;
        let mut sum = vec![Rational::zero(); n];
        for (i, ci) in self.frame.iter().enumerate() {
            self.check_dim(ci.len())?;
            for (j, cj) in self.frame.iter().enumerate() {
                let p = self.product(ci, cj);
                let expect = if i == j { ci.clone() } else { vec![Rational::zero(); n] };
                if p != expect {
                    return Err(JordanError::BadFrame(format!("c{}∘c{}", i + 1, j + 1)));
                }
            }
            for k in 0..n {
                sum[k] += &ci[k];
            }
        }
        if sum != self.unit {
            return Err(JordanError::BadFrame("Σc_i ≠ 1".into()));
        }
        Ok(())
    }

    /// Simultaneous eigenspaces of the `L(c_k)`.
    pub fn peirce_data(&self) -> Result<PeirceData, JordanError> {
        self.check_frame()?;
        let m = self.frame.len();
        let ls: Vec<Matrix> = self.frame.iter().map(|c| self.mult_matrix(c)).collect();
        let n = self.n;
        let space_dim = |eigs: &[Rational]| -> usize {
            let mut rows: Matrix = vec![];
            for (k, l) in ls.iter().enumerate() {
                for i in 0..n {
                    let mut row = l[i].clone();
                    row[i] -= &eigs[k];
                    rows.push(row);
                }
            }
            n - linalg::rank(&rows)
        };
        let mut dims = vec![vec![0; m]; m];
        let mut total = 0;
        for i in 0..m {
            for j in i..m {
                let mut eigs = vec![Rational::zero(); m];
                if i == j {
                    eigs[i] = int(1);
                } else {
                    eigs[i] = rat(1, 2);
                    eigs[j] = rat(1, 2);
                }
                dims[i][j] = space_dim(&eigs);
                total += dims[i][j];
            }
        }
        if total != n {
            return Err(JordanError::BadFrame(format!(
                "Peirce spaces span {total} of {n} dimensions"
            )));
        }
        let diag = dims[0][0];
        if (0..m).any(|i| dims[i][i] != diag) {
            return Err(JordanError::BadFrame("unequal diagonal blocks".into()));
        }
        let off = if m > 1 { dims[0][1] } else { 0 };
        if (0..m).any(|i| (i + 1..m).any(|j| dims[i][j] != off)) {
            return Err(JordanError::BadFrame("unequal off-diagonal blocks".into()));
        }
        Ok(PeirceData {
            dims,
            d: off,
            e: diag - 1,
        })
    }

    /// `det(−x^{-1}+y^{-1}) = det(x)^{-1} det(x−y) det(y)^{-1}`.
    pub fn hua_check(&self, x: &[Rational], y: &[Rational]) -> Result<bool, JordanError> {
        let xi = self.inverse(x)?;
        let yi = self.inverse(y)?;
        let diff: Vec<Rational> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        if self.det_at(&diff).is_zero() {
            return Err(JordanError::Singular);
        }
        let lhs_arg: Vec<Rational> = xi.iter().zip(&yi).map(|(a, b)| b - a).collect();
        let lhs = self.det_at(&lhs_arg);
        let rhs = self.det_at(&diff) / (self.det_at(x) * self.det_at(y));
        Ok(lhs == rhs)
    }
}

fn sym_pairs(m: usize) -> Vec<(usize, usize)> {
    let mut v = vec![];
    for i in 0..m {
        for j in i..m {
            v.push((i, j));
        }
    }
    v
}

/// Cofactor expansion of a small polynomial matrix.
pub fn poly_det(m: &[Vec<MPoly>]) -> MPoly {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let arena = m[0][0].arena().clone();
    let mut total = MPoly::zero(&arena);
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &poly_det(&minor);
        if j % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}
