//! Complex Γ (Lanczos) and the gamma factors of a Jordan algebra.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(z)` for `Re z ≥ 1/2` (principal branch of the Lanczos form).
fn ln_gamma_right(z: C64) -> C64 {
    let z = z - 1.0;
    let mut a = C64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

/// `Γ(z)`; infinite at the poles `0, −1, −2, …`.
pub fn gamma(z: C64) -> C64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return C64::new(f64::INFINITY, 0.0);
    }
    if z.re < 0.5 {
        PI / ((PI * z).sin() * gamma(1.0 - z))
    } else {
        ln_gamma_right(z).exp()
    }
}

pub fn gamma_real(x: f64) -> f64 {
    gamma(C64::new(x, 0.0)).re
}

/// Distance from `z` to the nearest pole of `Γ`.
pub fn pole_distance(z: C64) -> f64 {
    if z.re > 0.5 {
        return f64::INFINITY;
    }
    let k = z.re.round().min(0.0);
    (z - k).norm()
}

/// `Γ_V(s) = Π_{k=1}^{r₊} Γ(s/2 − (k−1)d/4)`.
pub fn gamma_v(r_plus: usize, d: usize, s: C64) -> C64 {
    (1..=r_plus)
        .map(|k| gamma(s / 2.0 - (k as f64 - 1.0) * d as f64 / 4.0))
        .product()
}

/// Gindikin `Γ_Ω(s) = (2π)^{(n−r)/2} Π_{j=1}^r Γ(s − (j−1)d/2)`.
pub fn gamma_omega(n: usize, r: usize, d: usize, s: C64) -> C64 {
    let pre = (2.0 * PI).powf((n as f64 - r as f64) / 2.0);
    let prod: C64 = (1..=r)
        .map(|j| gamma(s - (j as f64 - 1.0) * d as f64 / 2.0))
        .product();
    pre * prod
}

/// Arguments of the `Γ` factors in `Γ_Ω(s)`.
pub fn gamma_omega_args(r: usize, d: usize, s: C64) -> Vec<C64> {
    (1..=r).map(|j| s - (j as f64 - 1.0) * d as f64 / 2.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_half() {
        assert!((gamma_real(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma_real(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma_real(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn recursion_in_complex_plane() {
        for z in [C64::new(0.3, 0.7), C64::new(-2.4, 1.1), C64::new(4.2, -3.0)] {
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!((lhs - rhs).norm() < 1e-13 * lhs.norm());
        }
    }
}
