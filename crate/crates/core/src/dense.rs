//! Dense square matrices with the LU plumbing used by the spectral routines.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{monic_from_conjugate_roots, Poly};

/// Row-major dense square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn check_finite(&self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j).is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn add_scaled_identity(&self, s: f64) -> DenseMatrix {
        let mut m = self.clone();
        for i in 0..self.n {
            m.set(i, i, m.get(i, i) + s);
        }
        m
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, other.n);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        DenseMatrix { n: self.n, data }
    }

    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0_f64, f64::max)
    }

    /// Leading principal submatrix of order k.
    pub fn leading(&self, k: usize) -> DenseMatrix {
        assert!(k <= self.n);
        let mut m = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// Checks the (p,q) band pattern: entries with col-row > p or row-col > q
    /// must vanish (relative to the largest entry).
    pub fn check_bandwidths(&self, p: usize, q: usize) -> Result<()> {
        let tol = TRIM_BAND * self.norm_max();
        for i in 0..self.n {
            for j in 0..self.n {
                let inside = j as i64 - (i as i64) <= p as i64 && i as i64 - (j as i64) <= q as i64;
                if !inside && self.get(i, j).abs() > tol {
                    return Err(Error::NotBanded {
                        p,
                        q,
                        row: i,
                        col: j,
                        value: self.get(i, j),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn lu(&self) -> Lu {
        Lu::decompose(self)
    }

    /// det(self), via partial-pivot LU.
    pub fn det(&self) -> f64 {
        self.lu().det()
    }

    /// Solves self · x = rhs.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        self.lu().solve(rhs)
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        let lu = self.lu();
        let n = self.n;
        let mut inv = Self::zeros(n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.fill(0.0);
            e[j] = 1.0;
            let col = lu.solve(&e)?;
            for i in 0..n {
                inv.set(i, j, col[i]);
            }
        }
        Ok(inv)
    }

    /// self^k by repeated multiplication.
    pub fn power(&self, k: usize) -> DenseMatrix {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }
}

const TRIM_BAND: f64 = 1e-12;

/// Partial-pivot LU decomposition.
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    fn decompose(m: &DenseMatrix) -> Lu {
        let n = m.n;
        let mut lu = m.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let mut pivot = k;
            let mut max = lu[k * n + k].abs();
            for i in k + 1..n {
                let v = lu[i * n + k].abs();
                if v > max {
                    max = v;
                    pivot = i;
                }
            }
            if max == 0.0 {
                singular = true;
                continue;
            }
            if pivot != k {
                for j in 0..n {
                    lu.swap(k * n + j, pivot * n + j);
                }
                perm.swap(k, pivot);
                sign = -sign;
            }
            let pe = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pe;
                lu[i * n + k] = f;
                if f != 0.0 {
                    for j in k + 1..n {
                        lu[i * n + j] -= f * lu[k * n + j];
                    }
                }
            }
        }
        Lu {
            n,
            lu,
            perm,
            sign,
            singular,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> f64 {
        if self.singular {
            return 0.0;
        }
        let mut d = self.sign;
        for k in 0..self.n {
            d *= self.lu[k * self.n + k];
        }
        d
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        if self.singular {
            return Err(Error::Degenerate {
                context: "LU solve".into(),
                position: 0,
            });
        }
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 1..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        Ok(x)
    }
}

/// Gaussian elimination solve for complex systems (used by the resolvent).
pub fn solve_complex(a: &[Vec<Complex64>], rhs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.len();
    let mut m: Vec<Vec<Complex64>> = a.to_vec();
    let mut x: Vec<Complex64> = rhs.to_vec();
    for k in 0..n {
        let mut pivot = k;
        let mut best = m[k][k].norm_sqr();
        for i in k + 1..n {
            let v = m[i][k].norm_sqr();
            if v > best {
                best = v;
                pivot = i;
            }
        }
        if best == 0.0 {
            return Err(Error::Degenerate {
                context: "complex solve".into(),
                position: k,
            });
        }
        m.swap(k, pivot);
        x.swap(k, pivot);
        let pe = m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / pe;
            if f != Complex64::new(0.0, 0.0) {
                for j in k..n {
                    let v = m[k][j];
                    m[i][j] -= f * v;
                }
                let v = x[k];
                x[i] -= f * v;
            }
        }
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in i + 1..n {
            s -= m[i][j] * x[j];
        }
        x[i] = s / m[i][i];
    }
    Ok(x)
}

/// Monic characteristic polynomial det(xI - M), assembled from the
/// eigenvalue list (conjugate pairs combined into real quadratics).
pub fn charpoly(m: &DenseMatrix) -> Result<Poly> {
    m.check_finite()?;
    let eig = crate::eigen::eigenvalues_unordered(m)?;
    Ok(monic_from_conjugate_roots(&eig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn lu_det_and_solve() {
        let m = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert_abs_diff_eq!(m.det(), 3.0, epsilon = 1e-12);
        let x = m.solve(&[1.0, 0.0]).unwrap();
        assert_abs_diff_eq!(x[0], 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], -1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn charpoly_hand_cases() {
        let m = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let p = charpoly(&m).unwrap();
        assert_abs_diff_eq!(p.coeff(0), -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.coeff(1), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.coeff(2), 1.0, epsilon = 1e-12);

        let z = DenseMatrix::zeros(1);
        let pz = charpoly(&z).unwrap();
        assert_eq!(pz.coeffs(), &[0.0, 1.0]);
        assert_abs_diff_eq!(pz.eval(3.0), 3.0, epsilon = 1e-12);

        let m2 = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let p2 = charpoly(&m2).unwrap();
        // x^2 - 4x + 3
        assert_abs_diff_eq!(p2.coeff(0), 3.0, epsilon = 1e-10);
        assert_abs_diff_eq!(p2.coeff(1), -4.0, epsilon = 1e-10);
        assert_abs_diff_eq!(p2.coeff(2), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn non_finite_rejected() {
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 1, f64::NAN);
        assert!(charpoly(&m).is_err());
    }

    #[test]
    fn complex_solve_small() {
        let a = vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, -1.0), Complex64::new(1.0, 0.0)],
        ];
        let rhs = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let x = solve_complex(&a, &rhs).unwrap();
        // verify A x = rhs
        for i in 0..2 {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..2 {
                s += a[i][j] * x[j];
            }
            assert!((s - rhs[i]).norm() < 1e-12);
        }
    }
}
