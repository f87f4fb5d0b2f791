//! Adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("quadrature did not reach tolerance on [{a}, {b}] (error estimate {err:e})")]
    NoConvergence { a: f64, b: f64, err: f64 },
    #[error("integrand is not finite at {0}")]
    NotFinite(f64),
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> Result<(C64, f64), QuadError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    if !fc.re.is_finite() || !fc.im.is_finite() {
        return Err(QuadError::NotFinite(c));
    }
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let f1 = f(c - x);
        let f2 = f(c + x);
        for (v, at) in [(f1, c - x), (f2, c + x)] {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(QuadError::NotFinite(at));
            }
        }
        k += (f1 + f2) * WGK[i];
        if i % 2 == 1 {
            g += (f1 + f2) * WG[i / 2];
        }
    }
    Ok((k * h, ((k - g) * h).norm()))
}

/// `∫_a^b f` with adaptive bisection until the Kronrod–Gauss difference is
/// below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> C64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<C64, QuadError> {
    let (whole, err) = kronrod(f, a, b)?;
    let mut panels = vec![(a, b, whole, err)];
    let mut total = whole;
    let mut total_err = err;
    let mut iterations = 0;
    while total_err > abs_tol.max(rel_tol * total.norm()) {
        iterations += 1;
        if iterations > 4000 {
            return Err(QuadError::NoConvergence { a, b, err: total_err });
        }
        let (i, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (pa, pb, pv, pe) = panels.swap_remove(i);
        let m = 0.5 * (pa + pb);
        let (l, le) = kronrod(f, pa, m)?;
        let (r, re) = kronrod(f, m, pb)?;
        total += l + r - pv;
        total_err += le + re - pe;
        panels.push((pa, m, l, le));
        panels.push((m, pb, r, re));
        if iterations % 64 == 0 {
            total = panels.iter().map(|p| p.2).sum();
            total_err = panels.iter().map(|p| p.3).sum();
        }
    }
    Ok(total)
}

/// `∫_0^∞ f` through `x = t/(1−t)`.
pub fn integrate_half_line<F: Fn(f64) -> C64>(
    f: &F,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<C64, QuadError> {
    let g = |t: f64| {
        let u = 1.0 - t;
        let x = t / u;
        let v = f(x);
        if v == C64::new(0.0, 0.0) {
            v
        } else {
            v / (u * u)
        }
    };
    integrate(&g, 0.0, 1.0, abs_tol, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let v = integrate(&|x: f64| C64::new(x * x * x, 0.0), 0.0, 2.0, 1e-14, 1e-14).unwrap();
        assert!((v.re - 4.0).abs() < 1e-13);
    }

    #[test]
    fn gaussian_half_line() {
        let v = integrate_half_line(&|x: f64| C64::new((-x * x).exp(), 0.0), 1e-13, 1e-13).unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
    }
}
