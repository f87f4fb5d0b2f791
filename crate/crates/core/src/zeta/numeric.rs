//! Numeric zeta integrals on `ℝ`, `ℝ^{p,q}` (n ≤ 3) and `Sym(2,ℝ)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::gamma::gamma_real;
use super::hermite::{GaussPoly, HermiteFunction, Kernel};
use super::matrices::{fe_matrix, Basis, CaseId, FECase, POLE_MARGIN};
use super::quad::{integrate, integrate_half_line};
use super::ZetaError;

const ABS_TOL: f64 = 1e-13;
const REL_TOL: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `det = x` on the line, or `det = κ·(x₁²+…+x_p² − x_{p+1}² − …)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geometry {
    Line,
    Quadratic { p: usize, q: usize, kappa: f64 },
}

/// An algebra in orthonormal coordinates with its Fourier convention.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaSpace {
    pub name: String,
    pub geometry: Geometry,
    pub kernel: Kernel,
    pub n: usize,
    pub r: usize,
}

impl ZetaSpace {
    pub fn real() -> Self {
        ZetaSpace { name: "R".into(), geometry: Geometry::Line, kernel: Kernel::TwoPi, n: 1, r: 1 }
    }

    /// `ℝ^{p,q}` with `P(x)` in standard coordinates and the `e^{i⟨x,y⟩}` kernel.
    pub fn rpq(p: usize, q: usize) -> Result<Self, ZetaError> {
        if p == 0 || q == 0 || p + q > 3 {
            return Err(ZetaError::Unsupported(format!("Rpq:{p},{q}")));
        }
        Ok(ZetaSpace {
            name: format!("Rpq:{p},{q}"),
            geometry: Geometry::Quadratic { p, q, kappa: 1.0 },
            kernel: Kernel::Unitary,
            n: p + q,
            r: 2,
        })
    }

    /// `Sym(2,ℝ)` in the trace-orthonormal coordinates `v₁ = (a+c)/√2`,
    /// `v₂ = √2·b`, `v₃ = (a−c)/√2`, where `det = (v₁² − v₂² − v₃²)/2`.
    pub fn sym2() -> Self {
        ZetaSpace {
            name: "Sym2".into(),
            geometry: Geometry::Quadratic { p: 1, q: 2, kappa: 0.5 },
            kernel: Kernel::TwoPi,
            n: 3,
            r: 2,
        }
    }

    pub fn parse(id: &str) -> Result<Self, ZetaError> {
        let id = id.trim();
        if id == "R" || id == "real" {
            return Ok(ZetaSpace::real());
        }
        if id == "Sym2" || id == "sym:2" {
            return Ok(ZetaSpace::sym2());
        }
        if let Some(rest) = id.strip_prefix("Rpq:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() == 2 {
                if let (Ok(p), Ok(q)) = (parts[0].trim().parse(), parts[1].trim().parse()) {
                    return ZetaSpace::rpq(p, q);
                }
            }
        }
        Err(ZetaError::Unsupported(id.to_string()))
    }

    /// Case whose theorem governs this space.
    pub fn fe_case(&self) -> FECase {
        match self.geometry {
            Geometry::Line => FECase::euclidean(CaseId::EuclC1, 1, 1).unwrap(),
            Geometry::Quadratic { p, q, .. } if self.kernel == Kernel::Unitary => FECase::rpq(p, q),
            Geometry::Quadratic { .. } => FECase::euclidean(CaseId::EuclB1, 2, 1).unwrap(),
        }
    }

    /// Roots in `σ` of the ladder factor `b(σ)`.
    pub fn bernstein_roots(&self) -> Vec<f64> {
        match self.geometry {
            Geometry::Line => vec![-1.0],
            Geometry::Quadratic { .. } => vec![-1.0, -(self.n as f64) / 2.0],
        }
    }

    /// `b(σ)` with `L|det|^{σ+1,ε} = b(σ)|det|^{σ,−ε}` for the ladder operator `L`.
    pub fn bernstein_b(&self, sigma: C64) -> C64 {
        match self.geometry {
            Geometry::Line => sigma + 1.0,
            Geometry::Quadratic { kappa, .. } => {
                4.0 * kappa * (sigma + 1.0) * (sigma + self.n as f64 / 2.0)
            }
        }
    }

    /// The ladder operator: `d/dx` on the line, `P(∂)` on quadratic spaces.
    pub fn ladder_operator(&self, f: &GaussPoly) -> GaussPoly {
        match self.geometry {
            Geometry::Line => f.diff(0),
            Geometry::Quadratic { p, q, .. } => {
                let w: Vec<f64> = (0..p + q).map(|j| if j < p { 1.0 } else { -1.0 }).collect();
                f.diagonal_laplacian(&w)
            }
        }
    }

    pub fn det_at(&self, x: &[f64]) -> f64 {
        match self.geometry {
            Geometry::Line => x[0],
            Geometry::Quadratic { p, kappa, .. } => {
                kappa
                    * x.iter()
                        .enumerate()
                        .map(|(j, v)| if j < p { v * v } else { -v * v })
                        .sum::<f64>()
            }
        }
    }

    fn check_dim(&self, f: &GaussPoly) -> Result<(), ZetaError> {
        if f.n != self.n {
            return Err(ZetaError::Dimension { got: f.n, expect: self.n });
        }
        Ok(())
    }
}

/// `|t|^s sgn(t)^ε`, with the sign handled explicitly.
pub fn det_power(t: f64, s: C64, eps: Sign) -> C64 {
    if t == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let m = (s * t.abs().ln()).exp();
    if t < 0.0 && eps == Sign::Minus {
        -m
    } else {
        m
    }
}

/// `P₊(x)^s` with `P₊ = P·χ_{P>0}`.
pub fn p_plus_power(t: f64, s: C64) -> C64 {
    if t > 0.0 {
        (s * t.ln()).exp()
    } else {
        C64::new(0.0, 0.0)
    }
}

/// `P₋(x)^s` with `P₋ = −P·χ_{P<0}`.
pub fn p_minus_power(t: f64, s: C64) -> C64 {
    if t < 0.0 {
        (s * (-t).ln()).exp()
    } else {
        C64::new(0.0, 0.0)
    }
}

/// `∫_0^∞ ρ^{N+2σ}e^{−gρ²}dρ` (or `ρ^{N+σ}` on the line).
fn radial(power: C64, rate: f64) -> Result<C64, ZetaError> {
    let f = |x: f64| {
        if x == 0.0 {
            return C64::new(0.0, 0.0);
        }
        (power * x.ln() - rate * x * x).exp()
    };
    Ok(integrate_half_line(&f, ABS_TOL, REL_TOL)?)
}

/// `∫_0^{π/2} cos^{a}θ sin^{b}θ |cos2θ|^σ sgn(cos2θ)^ε dθ`, split at the
/// cone `θ = π/4` with `|θ − π/4| = (π/4)w²`.
fn angular(a: u32, b: u32, sigma: C64, eps: Sign) -> Result<C64, ZetaError> {
    let side = |sgn: f64| {
        move |w: f64| {
            let t = PI / 4.0 * w * w;
            let theta = PI / 4.0 + sgn * t;
            let cone = (2.0 * t).sin();
            if cone == 0.0 {
                return C64::new(0.0, 0.0);
            }
            let jac = PI / 2.0 * w;
            let trig = theta.cos().powi(a as i32) * theta.sin().powi(b as i32);
            (sigma * cone.ln()).exp() * (trig * jac)
        }
    };
    let inner = integrate(&side(-1.0), 0.0, 1.0, ABS_TOL, REL_TOL)?;
    let outer = integrate(&side(1.0), 0.0, 1.0, ABS_TOL, REL_TOL)?;
    Ok(inner + outer * eps.value())
}

/// `∫_{S^{k−1}} ω^α dω`.
fn sphere_moment(alpha: &[u32]) -> f64 {
    if alpha.iter().any(|a| a % 2 == 1) {
        return 0.0;
    }
    let k = alpha.len() as f64;
    let total: u32 = alpha.iter().sum();
    let num: f64 = alpha.iter().map(|a| gamma_real((*a as f64 + 1.0) / 2.0)).product();
    2.0 * num / gamma_real((total as f64 + k) / 2.0)
}

/// Orbit integrals `(Z₀, Z₁)` over `(0,∞)` and `(−∞,0)` on the line.
pub fn orbit_integrals_line(f: &GaussPoly, s: C64) -> Result<[C64; 2], ZetaError> {
    if f.n != 1 {
        return Err(ZetaError::Dimension { got: f.n, expect: 1 });
    }
    if s.re <= 0.0 {
        return Err(ZetaError::NearPole(format!("direct quadrature needs Re s > 0, got {s}")));
    }
    let terms: Vec<(u32, f64)> = f.terms.iter().map(|(e, c)| (e[0], *c)).collect();
    let parts: Result<Vec<(C64, C64)>, ZetaError> = terms
        .par_iter()
        .map(|(m, c)| {
            let v = radial(s + *m as f64, f.rate)? * *c;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            Ok((v, v * sign))
        })
        .collect();
    let (z0, z1) = parts?
        .into_iter()
        .fold((C64::new(0.0, 0.0), C64::new(0.0, 0.0)), |acc, v| (acc.0 + v.0, acc.1 + v.1));
    Ok([z0, z1])
}

/// `Z^e = Σ(−1)^κ Z_{2κ}` and `Z^o = Σ(−1)^κ Z_{2κ+1}` from orbit integrals.
pub fn even_odd_from_orbits(z: &[C64]) -> [C64; 2] {
    let mut out = [C64::new(0.0, 0.0); 2];
    for (l, v) in z.iter().enumerate() {
        let sign = if (l / 2) % 2 == 0 { 1.0 } else { -1.0 };
        out[l % 2] += v * sign;
    }
    out
}

/// `Z_ε(f, s) = ∫ f(x)|det x|^s sgn(det x)^ε dx` for `Re s > 0`.
pub fn zeta_direct(space: &ZetaSpace, f: &GaussPoly, s: C64, eps: Sign) -> Result<C64, ZetaError> {
    space.check_dim(f)?;
    if s.re <= 0.0 {
        return Err(ZetaError::NearPole(format!("direct quadrature needs Re s > 0, got {s}")));
    }
    match space.geometry {
        Geometry::Line => {
            let [z0, z1] = orbit_integrals_line(f, s)?;
            Ok(z0 + z1 * eps.value())
        }
        Geometry::Quadratic { p, q, kappa } => {
            let mut grouped: BTreeMap<(u32, u32), f64> = BTreeMap::new();
            for (e, c) in &f.terms {
                let m = sphere_moment(&e[..p]) * sphere_moment(&e[p..]);
                if m != 0.0 {
                    let key = (e[..p].iter().sum(), e[p..].iter().sum());
                    *grouped.entry(key).or_insert(0.0) += c * m;
                }
            }
            let keys: Vec<((u32, u32), f64)> = grouped.into_iter().collect();
            let n = (p + q) as f64;
            let parts: Result<Vec<C64>, ZetaError> = keys
                .par_iter()
                .map(|((ap, aq), c)| {
                    let rad = radial(2.0 * s + n - 1.0 + (*ap + *aq) as f64, f.rate)?;
                    let ang = angular(p as u32 - 1 + ap, q as u32 - 1 + aq, s, eps)?;
                    Ok(rad * ang * *c)
                })
                .collect();
            let total: C64 = parts?.into_iter().sum();
            Ok(total * (s * kappa.ln()).exp())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaValue {
    pub value: C64,
    pub ladder_depth: usize,
}

/// `Z_ε(f, s)`, continued to `Re s ≤ 0` by
/// `Z_ε(f,σ) = (−1)^r b(σ)^{−1} Z_{−ε}(Lf, σ+1)`.
pub fn zeta_numeric(space: &ZetaSpace, f: &GaussPoly, s: C64, eps: Sign) -> Result<ZetaValue, ZetaError> {
    space.check_dim(f)?;
    let mut sigma = s;
    let mut g = f.clone();
    let mut e = eps;
    let mut factor = C64::new(1.0, 0.0);
    let mut depth = 0;
    let sign = if space.r.is_multiple_of(2) { 1.0 } else { -1.0 };
    while sigma.re <= 0.0 {
        for root in space.bernstein_roots() {
            if (sigma - root).norm() < POLE_MARGIN {
                return Err(ZetaError::NearPole(format!("b(σ) vanishes at σ = {root} (σ = {sigma})")));
            }
        }
        factor *= sign / space.bernstein_b(sigma);
        g = space.ladder_operator(&g);
        e = e.flip();
        sigma += 1.0;
        depth += 1;
    }
    let v = zeta_direct(space, &g, sigma, e)?;
    Ok(ZetaValue { value: factor * v, ladder_depth: depth })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeReport {
    pub case: CaseId,
    pub s: C64,
    pub lhs: [C64; 2],
    pub rhs: [C64; 2],
    pub residual: f64,
    pub ladder_depth: usize,
}

/// Both sides of the functional equation for a Hermite test function.
pub fn fe_check(space: &ZetaSpace, f: &HermiteFunction, s: C64) -> Result<FeReport, ZetaError> {
    if f.kernel != space.kernel {
        return Err(ZetaError::Unsupported(format!(
            "{:?} kernel on {}",
            f.kernel, space.name
        )));
    }
    let case = space.fe_case();
    let matrix = fe_matrix(&case, s)?;
    let g = f.to_gauss_poly();
    space.check_dim(&g)?;
    let lam = f.fourier_eigenvalue();
    let zp = zeta_numeric(space, &g, s, Sign::Plus)?;
    let zm = zeta_numeric(space, &g, s, Sign::Minus)?;
    let lhs = [lam * zp.value, lam * zm.value];
    let dual = -s - case.shift();
    let wp = zeta_numeric(space, &g, dual, Sign::Plus)?;
    let wm = zeta_numeric(space, &g, dual, Sign::Minus)?;
    let v = match matrix.basis {
        Basis::PlusMinus => [wp.value, wm.value],
        Basis::EvenOdd => {
            if space.r != 1 {
                return Err(ZetaError::Unsupported(format!("even/odd basis on {}", space.name)));
            }
            [(wp.value + wm.value) / 2.0, (wp.value - wm.value) / 2.0]
        }
    };
    let rhs = matrix.apply(v);
    let size = lhs.iter().chain(rhs.iter()).map(|z| z.norm()).fold(0.0, f64::max);
    let diff = (0..2).map(|i| (lhs[i] - rhs[i]).norm()).fold(0.0, f64::max);
    let residual = if size == 0.0 { 0.0 } else { diff / size };
    let depth = [zp, zm, wp, wm].iter().map(|z| z.ladder_depth).max().unwrap();
    Ok(FeReport { case: case.id, s, lhs, rhs, residual, ladder_depth: depth })
}
