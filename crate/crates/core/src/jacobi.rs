//! Tridiagonal (Jacobi) spectral machinery: recursion polynomials, second
//! kind polynomials, truncated polynomials, Christoffel--Darboux kernels,
//! masses, discrete spectral measure, step function and the scalar Weyl
//! function.
//!
//! The matrix has diagonal m_n, positive subdiagonal ℓ_n and unit
//! superdiagonal; it is symmetrizable by H = diag(H_n), H_n = ℓ_1⋯ℓ_n,
//! which is how truncation eigenvalues are computed here.

use num_complex::Complex64;

use crate::band::BandedMatrix;
use crate::dense::DenseMatrix;
use crate::eigen;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Relative eigenvalue gap below which the spectrum is treated as
/// degenerate (the generalized-eigenvector regime is out of scope).
pub const DEGENERATE_GAP: f64 = 1e-10;

/// Semi-infinite Jacobi matrix: diagonal `m_n` (n ≥ 0), subdiagonal
/// `ℓ_n > 0` (n ≥ 1), superdiagonal ≡ 1, with ℓ_0 = 1 by convention.
#[derive(Debug, Clone)]
pub struct JacobiMatrix {
    m: Vec<f64>,
    ell: Vec<f64>, // ell[j-1] = ℓ_j for j ≥ 1
    n_max: usize,
}

impl JacobiMatrix {
    /// `m` needs n_max+1 entries, `ell` needs n_max entries (ℓ_1..ℓ_{n_max}),
    /// all strictly positive.
    pub fn new(m: Vec<f64>, ell: Vec<f64>, n_max: usize) -> Result<Self> {
        if m.len() < n_max + 1 {
            return Err(Error::Invalid(format!(
                "diagonal holds {} entries, needs {}",
                m.len(),
                n_max + 1
            )));
        }
        if ell.len() < n_max {
            return Err(Error::Invalid(format!(
                "subdiagonal holds {} entries, needs {}",
                ell.len(),
                n_max
            )));
        }
        for (j, &l) in ell.iter().enumerate() {
            if !(l > 0.0) {
                return Err(Error::Invalid(format!(
                    "subdiagonal entry ell[{}] = {l} must be positive",
                    j + 1
                )));
            }
        }
        for (j, &v) in m.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::Invalid(format!("diagonal entry m[{j}] not finite")));
            }
        }
        Ok(JacobiMatrix { m, ell, n_max })
    }

    /// Constant-coefficient matrix m_n ≡ m, ℓ_n ≡ ell.
    pub fn constant(m: f64, ell: f64, n_max: usize) -> Result<Self> {
        JacobiMatrix::new(vec![m; n_max + 1], vec![ell; n_max], n_max)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn diag(&self, n: usize) -> f64 {
        self.m[n]
    }

    /// ℓ_j for j ≥ 1 (ℓ_0 = 1 by convention).
    pub fn ell(&self, j: usize) -> f64 {
        if j == 0 {
            1.0
        } else {
            self.ell[j - 1]
        }
    }

    /// Leading principal submatrix of order N+1.
    pub fn truncate(&self, n: usize) -> Result<DenseMatrix> {
        if n >= self.n_max {
            return Err(Error::OutOfRange {
                index: n,
                limit: self.n_max,
            });
        }
        let mut t = DenseMatrix::zeros(n + 1);
        for i in 0..=n {
            t.set(i, i, self.m[i]);
            if i > 0 {
                t.set(i, i - 1, self.ell(i));
                t.set(i - 1, i, 1.0);
            }
        }
        Ok(t)
    }

    /// Banded-matrix view (p = q = 1), for the shift search and probes.
    pub fn to_banded(&self) -> Result<BandedMatrix> {
        let sub: Vec<f64> = (1..=self.n_max).map(|j| self.ell(j)).collect();
        let sup = vec![1.0; self.n_max];
        BandedMatrix::new(
            1,
            1,
            vec![sub, self.m[..=self.n_max].to_vec(), sup],
            self.n_max,
        )
    }

    /// Recursion polynomials P_0..P_{N+1}, the symmetrizer values
    /// H_0..H_N and the left family Q_n = P_n / H_n.
    pub fn recursion_polys(&self, n: usize) -> (Vec<Poly>, Vec<f64>, Vec<Poly>) {
        let mut ps = Vec::with_capacity(n + 2);
        ps.push(Poly::one());
        let mut prev = Poly::zero(); // P_{-1}
        for k in 0..=n {
            // P_{k+1} = (x - m_k) P_k - ℓ_k P_{k-1}
            let pk = ps[k].clone();
            let next = pk
                .mul(&Poly::new(vec![-self.m[k], 1.0]))
                .sub(&prev.scale(self.ell(k)));
            prev = pk;
            ps.push(next);
        }
        let mut hs = Vec::with_capacity(n + 1);
        let mut h = 1.0;
        hs.push(1.0);
        for j in 1..=n {
            h *= self.ell(j);
            hs.push(h);
        }
        let qs = ps[..=n]
            .iter()
            .zip(&hs)
            .map(|(p, &h)| p.scale(1.0 / h))
            .collect();
        (ps, hs, qs)
    }

    /// Second-kind polynomial P^{(1)}_{N+1}: the characteristic polynomial
    /// of the once-deflated truncation, generated by the recursion with
    /// P^{(1)}_0 = 0, P^{(1)}_1 = 1 (running from n = 1 upward).
    pub fn second_kind(&self, n: usize) -> Poly {
        let mut prev = Poly::zero(); // P^{(1)}_0
        let mut cur = Poly::one(); // P^{(1)}_1
        for k in 1..=n {
            let next = cur
                .mul(&Poly::new(vec![-self.m[k], 1.0]))
                .sub(&prev.scale(self.ell(k)));
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Truncated polynomials P^{\[k\]}_{N+1} for k = 0..N+1, generated
    /// backward from P^{\[N+1\]}_{N+1} = 1, P^{\[N+2\]}_{N+1} = 0.
    pub fn truncated_polys(&self, n: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); n + 2];
        out[n + 1] = Poly::one();
        let mut above = Poly::zero(); // P^{[N+2]}
        for k in (0..=n).rev() {
            // P^{[k]} = (x - m_k) P^{[k+1]} - ℓ_{k+1} P^{[k+2]}
            let next = out[k + 1]
                .mul(&Poly::new(vec![-self.m[k], 1.0]))
                .sub(&above.scale(self.ell(k + 1)));
            above = out[k + 1].clone();
            out[k] = next;
        }
        out
    }

    /// Numeric evaluation of P_0..P_{N+1} at x by the recurrence.
    pub fn eval_recursion(&self, n: usize, x: f64) -> Vec<f64> {
        let mut vals = Vec::with_capacity(n + 2);
        vals.push(1.0);
        let mut prev = 0.0;
        for k in 0..=n {
            let cur = vals[k];
            let next = (x - self.m[k]) * cur - self.ell(k) * prev;
            prev = cur;
            vals.push(next);
        }
        vals
    }

    /// Numeric complex evaluation of (P_{N+1}(z), P^{(1)}_{N+1}(z)).
    pub fn eval_pair_complex(&self, n: usize, z: Complex64) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut p_prev = zero;
        let mut p_cur = one;
        let mut s_prev = zero; // P^{(1)}_{-? } bookkeeping below
        let mut s_cur = zero;
        // P^{(1)}: 0 at index 0, 1 at index 1
        let mut s_next_seed = one;
        for k in 0..=n {
            let zp = z - self.m[k];
            let p_next = zp * p_cur - self.ell(k) * p_prev;
            p_prev = p_cur;
            p_cur = p_next;
            if k == 0 {
                s_prev = zero;
                s_cur = s_next_seed;
                s_next_seed = zero;
            } else {
                let s_next = zp * s_cur - self.ell(k) * s_prev;
                s_prev = s_cur;
                s_cur = s_next;
            }
        }
        (p_cur, s_cur)
    }

    /// Spectral data of the truncation of order N+1.
    pub fn spectral_data(&self, n: usize) -> Result<JacobiSpectralData> {
        let t = self.truncate(n)?;
        // symmetrize: off_i = sqrt(ℓ_{i+1})
        let diag: Vec<f64> = (0..=n).map(|i| self.m[i]).collect();
        let off: Vec<f64> = (1..=n).map(|j| self.ell(j).sqrt()).collect();
        let mut lambdas = eigen::sym_tridiagonal_eigenvalues(&diag, &off)?;
        lambdas.reverse(); // descending
        let scale = t.norm_one().max(1.0);
        for w in lambdas.windows(2) {
            let gap = w[0] - w[1];
            if gap < DEGENERATE_GAP * scale {
                return Err(Error::DegenerateSpectrum {
                    a: w[0],
                    b: w[1],
                    gap,
                });
            }
        }

        let size = n + 1;
        let mut masses = Vec::with_capacity(size);
        let mut masses_second_kind = Vec::with_capacity(size);
        let mut christoffel = Vec::with_capacity(size);
        // deflated truncation J^{[N,1]} for the determinant route
        let deflated = self.deflated_truncation(n);
        for k in 0..size {
            let x = lambdas[k];
            // Christoffel number: λ_{N,k} = Σ P_l(x)^2 / H_l (positive sum)
            let pvals = self.eval_recursion(n, x);
            let mut h = 1.0;
            let mut lam_nk = pvals[0] * pvals[0];
            for l in 1..=n {
                h *= self.ell(l);
                lam_nk += pvals[l] * pvals[l] / h;
            }
            christoffel.push(lam_nk);
            masses.push(1.0 / lam_nk);
            // second route: P^{(1)}_{N+1}(λ)/P'_{N+1}(λ) with the numerator
            // as a shifted determinant and the derivative as a gap product
            // det(xI - J1) = (-1)^N det(J1 - xI), deflated size N
            let p1 = match &deflated {
                Some(d) => d.add_scaled_identity(-x).det() * if n % 2 == 0 { 1.0 } else { -1.0 },
                None => 1.0,
            };
            let mut dp = 1.0;
            for (l, &lam) in lambdas.iter().enumerate() {
                if l != k {
                    dp *= x - lam;
                }
            }
            masses_second_kind.push(p1 / dp);
        }
        Ok(JacobiSpectralData {
            n,
            lambdas,
            masses,
            masses_second_kind,
            christoffel,
        })
    }

    /// J^{\[N,1\]}: rows and columns 1..N of the truncation. None for N = 0.
    fn deflated_truncation(&self, n: usize) -> Option<DenseMatrix> {
        if n == 0 {
            return None;
        }
        let mut d = DenseMatrix::zeros(n);
        for i in 0..n {
            d.set(i, i, self.m[i + 1]);
            if i > 0 {
                d.set(i, i - 1, self.ell(i + 1));
                d.set(i - 1, i, 1.0);
            }
        }
        Some(d)
    }

    /// Non-confluent Christoffel--Darboux check at (x, y).
    ///
    /// lhs = Σ_{n=0}^{N} P_n(x) P_n(y) / H_n,
    /// rhs = (P_{N+1}(x) P_N(y) − P_N(x) P_{N+1}(y)) / (H_N (x−y));
    /// the orientation is the one that keeps the confluent kernel positive.
    pub fn cd_check(&self, n: usize, x: f64, y: f64) -> CdCheck {
        let px = self.eval_recursion(n, x);
        let py = self.eval_recursion(n, y);
        let mut h = 1.0;
        let mut lhs = px[0] * py[0];
        let mut scale = (px[0] * py[0]).abs();
        for l in 1..=n {
            h *= self.ell(l);
            let term = px[l] * py[l] / h;
            lhs += term;
            scale += term.abs();
        }
        let h_n = h;
        let rhs = (px[n + 1] * py[n] - px[n] * py[n + 1]) / (h_n * (x - y));
        let scale = scale.max(rhs.abs()).max(1.0);
        CdCheck {
            lhs,
            rhs,
            residual: (lhs - rhs).abs() / scale,
        }
    }

    /// Confluent Christoffel--Darboux value at x:
    /// (P'_{N+1} P_N − P'_N P_{N+1}) / H_N = Σ P_n(x)^2 / H_n ≥ 0.
    pub fn cd_confluent(&self, n: usize, x: f64) -> CdConfluent {
        let pv = self.eval_recursion(n, x);
        // derivative recurrence alongside the values
        let mut dprev = 0.0;
        let mut dcur = 0.0; // P'_0 = 0
        let mut vals_prev = 0.0;
        let mut vals_cur = 1.0;
        for k in 0..=n {
            let dnext = vals_cur + (x - self.m[k]) * dcur - self.ell(k) * dprev;
            let vnext = (x - self.m[k]) * vals_cur - self.ell(k) * vals_prev;
            dprev = dcur;
            dcur = dnext;
            vals_prev = vals_cur;
            vals_cur = vnext;
        }
        // now vals_cur = P_{N+1}(x), dcur = P'_{N+1}(x), vals_prev = P_N, dprev = P'_N
        let mut h = 1.0;
        let mut sum = pv[0] * pv[0];
        for l in 1..=n {
            h *= self.ell(l);
            sum += pv[l] * pv[l] / h;
        }
        let wronskian = (dcur * vals_prev - dprev * vals_cur) / h;
        CdConfluent {
            sum,
            wronskian_form: wronskian,
            residual: (sum - wronskian).abs() / sum.abs().max(1.0),
        }
    }

    /// Scalar Weyl function S^{\[N\]}(z) = P^{(1)}_{N+1}(z)/P_{N+1}(z),
    /// cross-checked against the partial-fraction form Σ μ_k/(z−λ_k).
    pub fn weyl(&self, n: usize, z: Complex64) -> Result<WeylPoint> {
        let data = self.spectral_data(n)?;
        let scale = 1.0 + data.lambdas[0].abs().max(data.lambdas[n].abs());
        let min_dist = data
            .lambdas
            .iter()
            .map(|&l| (z - l).norm())
            .fold(f64::INFINITY, f64::min);
        if min_dist <= 1e-12 * scale {
            return Err(Error::PoleProximity {
                z: format!("{z}"),
                distance: min_dist,
            });
        }
        let (p, p1) = self.eval_pair_complex(n, z);
        let ratio = p1 / p;
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, &lam) in data.lambdas.iter().enumerate() {
            sum += data.masses[k] / (z - lam);
        }
        let residual = (ratio - sum).norm() / sum.norm().max(1e-300);
        Ok(WeylPoint {
            value: ratio,
            partial_fraction: sum,
            residual,
        })
    }
}

/// Eigenvalues, masses and Christoffel numbers of a Jacobi truncation.
#[derive(Debug, Clone)]
pub struct JacobiSpectralData {
    pub n: usize,
    /// Strictly decreasing eigenvalues of J^{\[N\]}.
    pub lambdas: Vec<f64>,
    /// Masses μ_k = 1/λ_{N,k} (sum-of-squares route; always positive).
    pub masses: Vec<f64>,
    /// Masses by the second-kind route P^{(1)}_{N+1}(λ_k)/P'_{N+1}(λ_k).
    pub masses_second_kind: Vec<f64>,
    /// Christoffel numbers λ_{N,k} = Σ_l P_l(λ_k)^2/H_l.
    pub christoffel: Vec<f64>,
}

impl JacobiSpectralData {
    /// Right-continuous distribution function of the discrete measure:
    /// total mass of eigenvalues ≤ x. Zero below the smallest eigenvalue,
    /// one at and above the largest.
    pub fn step_function(&self, x: f64) -> f64 {
        self.lambdas
            .iter()
            .zip(&self.masses)
            .filter(|(&l, _)| l <= x)
            .map(|(_, &m)| m)
            .sum()
    }

    /// Moment Σ_k μ_k λ_k^j of the discrete measure.
    pub fn moment(&self, j: usize) -> f64 {
        self.lambdas
            .iter()
            .zip(&self.masses)
            .map(|(&l, &m)| m * l.powi(j as i32))
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct CdCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct CdConfluent {
    pub sum: f64,
    pub wronskian_form: f64,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct WeylPoint {
    pub value: Complex64,
    pub partial_fraction: Complex64,
    pub residual: f64,
}
