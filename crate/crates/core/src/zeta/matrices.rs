//! Functional-equation matrices and the Faraut–Satake coefficients.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64 as C64;

use super::gamma::{gamma, gamma_omega, gamma_omega_args, gamma_v, pole_distance};
use super::ZetaError;

/// Minimum distance from a pole of any `Γ` factor.
pub const POLE_MARGIN: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseId {
    TypeIIScalar,
    TypeIIIIVScalar,
    Rpq,
    EuclA,
    EuclAPrime,
    EuclB1,
    EuclB3,
    EuclC0,
    EuclC1,
    EuclC2,
    EuclC3,
}

impl CaseId {
    pub const EUCLIDEAN: [CaseId; 8] = [
        CaseId::EuclA,
        CaseId::EuclAPrime,
        CaseId::EuclB1,
        CaseId::EuclB3,
        CaseId::EuclC0,
        CaseId::EuclC1,
        CaseId::EuclC2,
        CaseId::EuclC3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::TypeIIScalar => "typeII_scalar",
            CaseId::TypeIIIIVScalar => "typeIIIIV_scalar",
            CaseId::Rpq => "Rpq",
            CaseId::EuclA => "eucl_a",
            CaseId::EuclAPrime => "eucl_a'",
            CaseId::EuclB1 => "eucl_b1",
            CaseId::EuclB3 => "eucl_b3",
            CaseId::EuclC0 => "eucl_c0",
            CaseId::EuclC1 => "eucl_c1",
            CaseId::EuclC2 => "eucl_c2",
            CaseId::EuclC3 => "eucl_c3",
        }
    }

    pub fn parse(s: &str) -> Result<CaseId, ZetaError> {
        let all = [
            CaseId::TypeIIScalar,
            CaseId::TypeIIIIVScalar,
            CaseId::Rpq,
        ]
        .into_iter()
        .chain(CaseId::EUCLIDEAN);
        for c in all {
            if c.name() == s || (c == CaseId::EuclAPrime && s == "eucl_a_prime") {
                return Ok(c);
            }
        }
        Err(ZetaError::UnknownCase(s.to_string()))
    }

    /// `(r, d)` admissibility for the Euclidean cases.
    pub fn admits(self, r: usize, d: usize) -> bool {
        match self {
            CaseId::EuclA => d.is_multiple_of(2) && (d.is_multiple_of(4) || r % 2 == 1),
            CaseId::EuclAPrime => d % 4 == 2 && r.is_multiple_of(2),
            CaseId::EuclB1 => r == 2 && d % 4 == 1,
            CaseId::EuclB3 => r == 2 && d % 4 == 3,
            CaseId::EuclC0 => d == 1 && r.is_multiple_of(4),
            CaseId::EuclC1 => d == 1 && r % 4 == 1,
            CaseId::EuclC2 => d == 1 && r % 4 == 2,
            CaseId::EuclC3 => d == 1 && r % 4 == 3,
            _ => false,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Vector the matrix acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// `(Z₊, Z₋)`.
    PlusMinus,
    /// `(Z^e, Z^o)`.
    EvenOdd,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FECase {
    pub id: CaseId,
    pub n: usize,
    pub r: usize,
    pub d: usize,
    pub r_plus: usize,
    pub p: usize,
    pub q: usize,
}

impl FECase {
    pub fn euclidean(id: CaseId, r: usize, d: usize) -> Result<FECase, ZetaError> {
        if !id.admits(r, d) {
            return Err(ZetaError::Inadmissible { case: id, r, d });
        }
        Ok(FECase { id, n: r + d * r * (r - 1) / 2, r, d, r_plus: r, p: 0, q: 0 })
    }

    /// Every Euclidean case whose hypotheses hold for `(r, d)`.
    pub fn euclidean_all(r: usize, d: usize) -> Vec<FECase> {
        CaseId::EUCLIDEAN
            .into_iter()
            .filter_map(|c| FECase::euclidean(c, r, d).ok())
            .collect()
    }

    pub fn rpq(p: usize, q: usize) -> FECase {
        let n = p + q;
        FECase { id: CaseId::Rpq, n, r: 2, d: n.saturating_sub(2), r_plus: 2, p, q }
    }

    pub fn scalar(id: CaseId, n: usize, r: usize, d: usize, r_plus: usize) -> Result<FECase, ZetaError> {
        match id {
            CaseId::TypeIIScalar | CaseId::TypeIIIIVScalar => {
                Ok(FECase { id, n, r, d, r_plus, p: 0, q: 0 })
            }
            _ => Err(ZetaError::UnknownCase(id.name().to_string())),
        }
    }

    pub fn basis(&self) -> Basis {
        match self.id {
            CaseId::EuclC1 | CaseId::EuclC3 => Basis::EvenOdd,
            _ => Basis::PlusMinus,
        }
    }

    /// `n/r`.
    pub fn shift(&self) -> f64 {
        self.n as f64 / self.r as f64
    }
}

/// `prefactor·matrix`, acting on `basis` at `−s−n/r`.
#[derive(Clone, Debug, PartialEq)]
pub struct FEMatrix {
    pub prefactor: C64,
    pub matrix: [[C64; 2]; 2],
    pub basis: Basis,
}

impl FEMatrix {
    pub fn full(&self) -> [[C64; 2]; 2] {
        let m = &self.matrix;
        [
            [self.prefactor * m[0][0], self.prefactor * m[0][1]],
            [self.prefactor * m[1][0], self.prefactor * m[1][1]],
        ]
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = self.full();
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Max entrywise difference of the full matrices relative to their size.
    pub fn relative_distance(&self, other: &FEMatrix) -> f64 {
        let a = self.full();
        let b = other.full();
        let mut diff: f64 = 0.0;
        let mut size: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                diff = diff.max((a[i][j] - b[i][j]).norm());
                size = size.max(a[i][j].norm()).max(b[i][j].norm());
            }
        }
        if self.basis != other.basis {
            return f64::INFINITY;
        }
        if size == 0.0 {
            0.0
        } else {
            diff / size
        }
    }
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn check_poles(args: &[C64]) -> Result<(), ZetaError> {
    for z in args {
        if pole_distance(*z) < POLE_MARGIN {
            return Err(ZetaError::NearPole(format!("Γ({z})")));
        }
    }
    Ok(())
}

fn gamma_v_args(r_plus: usize, d: usize, s: C64) -> Vec<C64> {
    (1..=r_plus)
        .map(|k| s / 2.0 - (k as f64 - 1.0) * d as f64 / 4.0)
        .collect()
}

/// `(2π)^{−ra}Γ_Ω(a)`.
fn omega_factor(case: &FECase, a: C64) -> Result<C64, ZetaError> {
    check_poles(&gamma_omega_args(case.r, case.d, a))?;
    let two_pi = c(2.0 * PI);
    Ok(two_pi.powc(-(case.r as f64) * a) * gamma_omega(case.n, case.r, case.d, a))
}

fn scalar_matrix(plus: C64, minus: C64) -> [[C64; 2]; 2] {
    [[plus, C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), minus]]
}

fn b_pattern(a: C64, three: bool) -> [[C64; 2]; 2] {
    let b = a + 0.5;
    let s1 = (PI * b / 2.0).sin();
    let c1 = (PI * b / 2.0).cos();
    let s2 = (PI * a / 2.0).sin();
    let c2 = (PI * a / 2.0).cos();
    if three {
        [[c1 * c2, c1 * s2], [s1 * c2, -s1 * s2]]
    } else {
        [[s1 * c2, -s1 * s2], [c1 * c2, c1 * s2]]
    }
}

fn rpq_matrix(case: &FECase, s: C64) -> Result<FEMatrix, ZetaError> {
    let n = case.n as f64;
    check_poles(&[s + 1.0, s + n / 2.0])?;
    let gam = c(2.0).powc(2.0 * s + n) * PI.powf(n / 2.0 - 1.0) * gamma(s + 1.0) * gamma(s + n / 2.0);
    let pq = (case.p as f64 - case.q as f64) * PI / 4.0;
    let (cpq, spq) = (pq.cos(), pq.sin());
    let sn = (n * PI / 4.0).sin();
    let cn = (n * PI / 4.0).cos();
    let arg = (s + n / 4.0) * PI;
    let m = [
        [cpq * (sn - arg.sin()), spq * (arg.cos() - cn)],
        [spq * (arg.cos() + cn), -cpq * (sn + arg.sin())],
    ];
    Ok(FEMatrix { prefactor: gam, matrix: m, basis: Basis::PlusMinus })
}

fn scalar_case(case: &FECase, s: C64) -> Result<FEMatrix, ZetaError> {
    let (n, r) = (case.n as f64, case.r as f64);
    let pi_pow = c(PI).powc(-r * s - n / 2.0);
    let gv = |z: C64| -> Result<C64, ZetaError> {
        check_poles(&gamma_v_args(case.r_plus, case.d, z))?;
        Ok(gamma_v(case.r_plus, case.d, z))
    };
    let ratio = |num: C64, den: C64| -> Result<C64, ZetaError> {
        let d = gv(den)?;
        if !d.norm().is_finite() || d.norm() == 0.0 {
            return Err(ZetaError::NearPole(format!("Γ_V({den})")));
        }
        Ok(gv(num)? / d)
    };
    let (plus, minus) = match case.id {
        CaseId::TypeIIScalar => {
            let p = pi_pow * ratio(s + n / r, -s)?;
            let m = C64::i().powu(case.r as u32) * pi_pow * ratio(s + 1.0 + n / r, 1.0 - s)?;
            (p, m)
        }
        _ => {
            let v = pi_pow * ratio(2.0 * s + 2.0 * n / r, -2.0 * s)?;
            (v, v)
        }
    };
    Ok(FEMatrix { prefactor: c(1.0), matrix: scalar_matrix(plus, minus), basis: Basis::PlusMinus })
}

/// Prefactor and matrix of the functional equation for `case` at `s`.
///
/// Euclidean cases (a′), (c0)–(c3) use the forms obtained from the
/// Faraut–Satake sums; [`fe_matrix_printed`] keeps the displayed ones.
pub fn fe_matrix(case: &FECase, s: C64) -> Result<FEMatrix, ZetaError> {
    let a = s + case.shift();
    let r = case.r;
    let ru = r as u32;
    let basis = case.basis();
    let half = PI * a / 2.0;
    let zero = C64::new(0.0, 0.0);
    let out = match case.id {
        CaseId::TypeIIScalar | CaseId::TypeIIIIVScalar => return scalar_case(case, s),
        CaseId::Rpq => return rpq_matrix(case, s),
        CaseId::EuclA => FEMatrix {
            prefactor: c(2f64.powi(r as i32)) * omega_factor(case, a)?,
            matrix: [
                [half.cos().powu(ru), zero],
                [zero, C64::i().powu(ru) * half.sin().powu(ru)],
            ],
            basis,
        },
        CaseId::EuclAPrime => FEMatrix {
            prefactor: c(2f64.powi(r as i32)) * omega_factor(case, a)?,
            matrix: [
                [zero, C64::i().powu(ru) * half.sin().powu(ru)],
                [half.cos().powu(ru), zero],
            ],
            basis,
        },
        CaseId::EuclB1 | CaseId::EuclB3 => FEMatrix {
            prefactor: c(2.0 * 2f64.sqrt()) * omega_factor(case, a)?,
            matrix: b_pattern(a, case.id == CaseId::EuclB3),
            basis,
        },
        CaseId::EuclC0 | CaseId::EuclC2 => FEMatrix {
            prefactor: c(2f64.powf(r as f64 / 2.0) * 2f64.sqrt())
                * omega_factor(case, a)?
                * (PI * a).cos().powf((r as f64 - 2.0) / 2.0),
            matrix: b_pattern(a, case.id == CaseId::EuclC0),
            basis,
        },
        CaseId::EuclC1 | CaseId::EuclC3 => {
            let k = (r / 2) as u32;
            let pre = c(2.0)
                * (2.0 * C64::i()).powu(k)
                * omega_factor(case, a)?
                * (PI * a).sin().powu(k);
            let cs = half.cos();
            let is = C64::i() * half.sin();
            let matrix = if case.id == CaseId::EuclC1 {
                [[cs, cs], [is, -is]]
            } else {
                [[is, -is], [cs, cs]]
            };
            FEMatrix { prefactor: pre, matrix, basis }
        }
    };
    Ok(out)
}

/// The matrices exactly as displayed in the theorems, including the forms
/// that disagree with the Faraut–Satake sums.
pub fn fe_matrix_printed(case: &FECase, s: C64) -> Result<FEMatrix, ZetaError> {
    let a = s + case.shift();
    let r = case.r;
    let ru = r as u32;
    let half = PI * a / 2.0;
    let zero = C64::new(0.0, 0.0);
    let i = C64::i();
    match case.id {
        CaseId::EuclAPrime => Ok(FEMatrix {
            prefactor: c(2f64.powi(r as i32)) * omega_factor(case, a)?,
            matrix: [
                [i.powu(ru) * half.sin().powu(ru), zero],
                [zero, half.cos().powu(ru)],
            ],
            basis: Basis::PlusMinus,
        }),
        CaseId::EuclC0 | CaseId::EuclC2 => {
            let pre = C64::from_polar(1.0, PI / 4.0)
                * 2f64.powf((r as f64 - 1.0) / 2.0)
                * omega_factor(case, a)?
                * (PI * a).cos().powf(r as f64 / 2.0);
            let one = c(1.0);
            let matrix = if case.id == CaseId::EuclC0 {
                [[-i, one], [one, -i]]
            } else {
                [[one, -i], [-i, one]]
            };
            Ok(FEMatrix { prefactor: pre, matrix, basis: Basis::PlusMinus })
        }
        CaseId::EuclC1 | CaseId::EuclC3 => {
            let mut m = fe_matrix(case, s)?;
            m.prefactor /= 2.0;
            Ok(m)
        }
        _ => fe_matrix(case, s),
    }
}

/// Dense complex polynomial in `y`, lowest degree first.
fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[C64], k: usize) -> Vec<C64> {
    (0..k).fold(vec![c(1.0)], |acc, _| poly_mul(&acc, a))
}

/// `P_κ(a, b)` with `a` constant and `b = β·y`, as a polynomial in `y`.
fn p_kappa(d: usize, kappa: usize, a: C64, beta: C64) -> Vec<C64> {
    let sum = [a, beta];
    if d.is_multiple_of(2) {
        poly_pow(&sum, kappa)
    } else {
        let diff = [-a, beta];
        poly_mul(&poly_pow(&sum, kappa / 2), &poly_pow(&diff, kappa - kappa / 2))
    }
}

/// `u_{ℓ,κ}(s)` at `[ℓ][κ]`, read off from
/// `Σ_ℓ y^ℓ u_{ℓ,κ} = ξ^{−(r−κ)}P_κ(ξe^{−iπs}, y)P_{r−κ}(1, ξe^{−iπs}y)`.
pub fn fs_u_matrix(r: usize, d: usize, s: C64) -> Vec<Vec<C64>> {
    let xi = C64::from_polar(1.0, PI * d as f64 * (r as f64 + 1.0) / 2.0);
    let e = (-C64::i() * PI * s).exp();
    let mut u = vec![vec![C64::new(0.0, 0.0); r + 1]; r + 1];
    for kappa in 0..=r {
        let left = p_kappa(d, kappa, xi * e, c(1.0));
        let right = p_kappa(d, r - kappa, c(1.0), xi * e);
        let scale = xi.powi(-((r - kappa) as i32));
        let full = poly_mul(&left, &right);
        for (l, v) in full.iter().enumerate().take(r + 1) {
            u[l][kappa] = scale * v;
        }
    }
    u
}

/// Matrix obtained from the Faraut–Satake sums, expressed in the case's basis.
/// Returns the matrix and the residual of the orbit rows outside the basis span.
pub fn fs_derived_matrix(case: &FECase, s: C64) -> Result<(FEMatrix, f64), ZetaError> {
    let r = case.r;
    let a = s + case.shift();
    let u = fs_u_matrix(r, case.d, a);
    let pre = omega_factor(case, a)? * (C64::i() * PI * r as f64 * a / 2.0).exp();
    let basis = case.basis();
    let b: [Vec<f64>; 2] = match basis {
        Basis::PlusMinus => [
            vec![1.0; r + 1],
            (0..=r).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect(),
        ],
        Basis::EvenOdd => [
            (0..=r).map(|k| if k % 2 == 1 { 0.0 } else if (k / 2) % 2 == 0 { 1.0 } else { -1.0 }).collect(),
            (0..=r).map(|k| if k % 2 == 0 { 0.0 } else if (k / 2) % 2 == 0 { 1.0 } else { -1.0 }).collect(),
        ],
    };
    let rows: Vec<Vec<C64>> = [1.0f64, -1.0]
        .iter()
        .map(|sign| {
            (0..=r)
                .map(|k| (0..=r).map(|l| sign.powi(l as i32) * u[l][k]).sum())
                .collect()
        })
        .collect();
    let size = rows
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    let mut m = [[C64::new(0.0, 0.0); 2]; 2];
    let mut residual: f64 = 0.0;
    for (row, coeffs) in rows.iter().enumerate() {
        let (c0, c1) = match basis {
            Basis::PlusMinus => ((coeffs[0] + coeffs[1]) / 2.0, (coeffs[0] - coeffs[1]) / 2.0),
            Basis::EvenOdd => (coeffs[0], coeffs[1]),
        };
        for k in 0..=r {
            let fit = c0 * b[0][k] + c1 * b[1][k];
            residual = residual.max((fit - coeffs[k]).norm() / size);
        }
        m[row] = [c0, c1];
    }
    Ok((FEMatrix { prefactor: pre, matrix: m, basis }, residual))
}
