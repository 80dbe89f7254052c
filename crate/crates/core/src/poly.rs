//! Dense univariate real polynomials with ascending coefficient storage.
//!
//! The zero polynomial is the empty coefficient list. Construction trims
//! trailing coefficients that are negligible relative to the largest one,
//! which keeps degree bookkeeping stable under roundoff.

use num_complex::Complex64;

/// Relative threshold used to trim trailing near-zero coefficients.
pub const TRIM_RELATIVE: f64 = 1e-12;

/// Real polynomial, coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming the tail.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1.0] }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c·x^k.
    pub fn monomial(c: f64, k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// Monic polynomial with the given real roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut p = Poly::one();
        for &r in roots {
            p = p.mul(&Poly::new(vec![-r, 1.0]));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    fn trim(&mut self) {
        let max = self.coeffs.iter().fold(0.0_f64, |acc, c| acc.max(c.abs()));
        if max == 0.0 {
            self.coeffs.clear();
            return;
        }
        let tol = TRIM_RELATIVE * max;
        while let Some(&last) = self.coeffs.last() {
            if last.abs() <= tol {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Horner evaluation at a complex point.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Poly::new(coeffs)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(k) + other.coeff(k);
        }
        Poly::new(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(k) - other.coeff(k);
        }
        Poly::new(coeffs)
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }

    /// Multiplies by (x - r).
    pub fn mul_linear(&self, r: f64) -> Poly {
        self.mul(&Poly::new(vec![-r, 1.0]))
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

/// Monic real polynomial from a complex root list in which non-real roots
/// appear in conjugate pairs (consecutively, as emitted by the QR solver).
pub fn monic_from_conjugate_roots(roots: &[Complex64]) -> Poly {
    let mut p = Poly::one();
    let mut i = 0;
    while i < roots.len() {
        let z = roots[i];
        if z.im == 0.0 {
            p = p.mul_linear(z.re);
            i += 1;
        } else {
            // conjugate pair: x^2 - 2 Re(z) x + |z|^2
            p = p.mul(&Poly::new(vec![z.norm_sqr(), -2.0 * z.re, 1.0]));
            i += 2;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eval_constant_and_hand_cases() {
        assert_abs_diff_eq!(Poly::one().eval(7.3), 1.0);
        // x^2 - 1 at 2
        assert_abs_diff_eq!(Poly::new(vec![-1.0, 0.0, 1.0]).eval(2.0), 3.0);
        // x^3 - 2x at 0
        assert_abs_diff_eq!(Poly::new(vec![0.0, -2.0, 0.0, 1.0]).eval(0.0), 0.0);
    }

    #[test]
    fn derivative_hand_cases() {
        let p = Poly::new(vec![-1.0, 0.0, 1.0]); // x^2 - 1
        assert_eq!(p.derivative(), Poly::new(vec![0.0, 2.0]));
        assert_eq!(Poly::constant(5.0).derivative(), Poly::zero());
        let q = Poly::new(vec![0.0, -2.0, 0.0, 1.0]); // x^3 - 2x
        assert_eq!(q.derivative(), Poly::new(vec![-2.0, 0.0, 3.0]));
    }

    #[test]
    fn zero_polynomial_is_canonical() {
        assert!(Poly::new(vec![0.0, 0.0]).is_zero());
        assert_eq!(Poly::new(vec![0.0]).degree_i64(), -1);
    }

    #[test]
    fn trim_is_relative() {
        // 1e-30 next to 1.0 trims; alone it survives.
        let p = Poly::new(vec![1.0, 1e-30]);
        assert_eq!(p.degree(), Some(0));
        let q = Poly::new(vec![1e-30]);
        assert_eq!(q.degree(), Some(0));
    }

    #[test]
    fn conjugate_root_assembly() {
        let roots = [
            Complex64::new(1.0, 2.0),
            Complex64::new(1.0, -2.0),
            Complex64::new(-3.0, 0.0),
        ];
        let p = monic_from_conjugate_roots(&roots);
        // (x^2 - 2x + 5)(x + 3) = x^3 + x^2 - x + 15
        assert_abs_diff_eq!(p.coeff(0), 15.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.coeff(1), -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.coeff(2), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.coeff(3), 1.0, epsilon = 1e-12);
    }
}
