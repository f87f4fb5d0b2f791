//! Gaussian-times-polynomial test functions with exact Fourier transforms.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;

/// Fourier kernel convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    /// `f̂(x) = ∫ e^{2πi⟨x,y⟩} f(y) dy`.
    TwoPi,
    /// `f̂(x) = ∫ e^{i⟨x,y⟩} f(y) dy`.
    Unitary,
}

impl Kernel {
    /// Gaussian rate `g` of the ground state `e^{−g|x|²}`.
    pub fn rate(self) -> f64 {
        match self {
            Kernel::TwoPi => PI,
            Kernel::Unitary => 0.5,
        }
    }

    fn scale(self) -> f64 {
        match self {
            Kernel::TwoPi => (2.0 * PI).sqrt(),
            Kernel::Unitary => 1.0,
        }
    }

    pub fn phase(self) -> f64 {
        match self {
            Kernel::TwoPi => 2.0 * PI,
            Kernel::Unitary => 1.0,
        }
    }
}

/// `p(x)·e^{−g|x|²}` with `p` stored by exponent vector.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussPoly {
    pub n: usize,
    pub rate: f64,
    pub terms: BTreeMap<Vec<u32>, f64>,
}

impl GaussPoly {
    pub fn zero(n: usize, rate: f64) -> Self {
        GaussPoly { n, rate, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, e: Vec<u32>, c: f64) {
        if c == 0.0 {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert(0.0);
        *slot += c;
        if *slot == 0.0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &GaussPoly) -> GaussPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: f64) -> GaussPoly {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    /// `∂_j`, including the Gaussian factor.
    pub fn diff(&self, j: usize) -> GaussPoly {
        let mut out = GaussPoly::zero(self.n, self.rate);
        for (e, c) in &self.terms {
            if e[j] > 0 {
                let mut e2 = e.clone();
                e2[j] -= 1;
                out.add_term(e2, c * e[j] as f64);
            }
            let mut e3 = e.clone();
            e3[j] += 1;
            out.add_term(e3, -2.0 * self.rate * c);
        }
        out
    }

    /// `Σ_j w_j ∂_j²`.
    pub fn diagonal_laplacian(&self, weights: &[f64]) -> GaussPoly {
        let mut out = GaussPoly::zero(self.n, self.rate);
        for (j, w) in weights.iter().enumerate() {
            out = out.add(&self.diff(j).diff(j).scale(*w));
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let p: f64 = self
            .terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(x).map(|(k, v)| v.powi(*k as i32)).product::<f64>())
            .sum();
        p * (-self.rate * r2).exp()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }
}

/// Physicists' Hermite polynomial coefficients, lowest degree first.
pub fn hermite_coefficients(k: u32) -> Vec<f64> {
    let mut prev = vec![1.0];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 2.0];
    for m in 1..k {
        let mut next = vec![0.0; cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= 2.0 * m as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Tensor product of Hermite functions `Π_j H_{k_j}(c x_j) e^{−g x_j²}`,
/// each an eigenfunction of the Fourier transform for `kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteFunction {
    pub orders: Vec<u32>,
    pub kernel: Kernel,
}

impl HermiteFunction {
    pub fn new(orders: Vec<u32>, kernel: Kernel) -> Self {
        HermiteFunction { orders, kernel }
    }

    pub fn to_gauss_poly(&self) -> GaussPoly {
        let n = self.orders.len();
        let c = self.kernel.scale();
        let mut out = GaussPoly::zero(n, self.kernel.rate());
        out.terms.insert(vec![0; n], 1.0);
        for (j, k) in self.orders.iter().enumerate() {
            let h = hermite_coefficients(*k);
            let mut next = GaussPoly::zero(n, out.rate);
            for (e, v) in &out.terms {
                for (m, hc) in h.iter().enumerate() {
                    let mut e2 = e.clone();
                    e2[j] += m as u32;
                    next.add_term(e2, v * hc * c.powi(m as i32));
                }
            }
            out = next;
        }
        out
    }

    /// `f̂ = λ·f`.
    pub fn fourier_eigenvalue(&self) -> C64 {
        let n = self.orders.len() as i32;
        let k: u32 = self.orders.iter().sum();
        let i_pow = C64::i().powu(k);
        match self.kernel {
            Kernel::TwoPi => i_pow,
            Kernel::Unitary => i_pow * (2.0 * PI).powf(n as f64 / 2.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_recurrence() {
        assert_eq!(hermite_coefficients(2), vec![-2.0, 0.0, 4.0]);
        assert_eq!(hermite_coefficients(3), vec![0.0, -12.0, 0.0, 8.0]);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let f = HermiteFunction::new(vec![2, 1], Kernel::Unitary).to_gauss_poly();
        let d = f.diff(0);
        let x = [0.3, -0.7];
        let h = 1e-6;
        let fd = (f.eval(&[x[0] + h, x[1]]) - f.eval(&[x[0] - h, x[1]])) / (2.0 * h);
        assert!((fd - d.eval(&x)).abs() < 1e-7);
    }
}
