//! Semi-infinite banded matrices given by their diagonal generator sequences.
//!
//! A matrix with `p` superdiagonals and `q` subdiagonals is represented by
//! one entry sequence per diagonal offset `d` in `-q..=p`, valid on the
//! operational window `0..=n_max`. The tridiagonal case is `(p,q) = (1,1)`
//! and the representative banded case is `(p,q) = (2,3)`, whose extreme
//! bands must not vanish.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Banded matrix with explicit generator sequences per diagonal.
#[derive(Debug, Clone)]
pub struct BandedMatrix {
    p: usize,
    q: usize,
    /// bands\[d + q\] holds diagonal offset d; entry k is T_{k+|d|,k} for
    /// d < 0 and T_{k,k+d} for d >= 0.
    bands: Vec<Vec<f64>>,
    n_max: usize,
}

impl BandedMatrix {
    /// Builds a banded matrix from per-diagonal sequences keyed by offset
    /// (index `d + q` into `bands`). Lengths must cover the window.
    pub fn new(p: usize, q: usize, bands: Vec<Vec<f64>>, n_max: usize) -> Result<Self> {
        if bands.len() != p + q + 1 {
            return Err(Error::Invalid(format!(
                "expected {} diagonals for widths ({p},{q}), got {}",
                p + q + 1,
                bands.len()
            )));
        }
        for (bi, band) in bands.iter().enumerate() {
            let d = bi as i64 - q as i64;
            let need = (n_max + 1).saturating_sub(d.unsigned_abs() as usize);
            if band.len() < need {
                return Err(Error::Invalid(format!(
                    "diagonal {d} holds {} entries, needs {need} for n_max {n_max}",
                    band.len()
                )));
            }
            for (k, v) in band.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::Invalid(format!(
                        "diagonal {d} entry {k} is not finite"
                    )));
                }
            }
        }
        let m = BandedMatrix { p, q, bands, n_max };
        m.check_extreme_bands()?;
        Ok(m)
    }

    /// Nonvanishing of both extreme bands, required by the (2,3) recursion
    /// structure (and of the subdiagonal in the tridiagonal case).
    fn check_extreme_bands(&self) -> Result<()> {
        if self.p == 2 && self.q == 3 {
            for k in 0..=(self.n_max.saturating_sub(3)) {
                let lo = self.entry(k + 3, k);
                let hi = self.entry(k, k + 2);
                if lo == 0.0 || hi == 0.0 {
                    return Err(Error::Invalid(format!(
                        "extreme band entry vanishes at index {k} (lower {lo}, upper {hi})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Entry T_{i,j}; zero outside the band, zero outside the window.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let d = j as i64 - i as i64;
        if d > self.p as i64 || -d > self.q as i64 {
            return 0.0;
        }
        let band = &self.bands[(d + self.q as i64) as usize];
        let k = if d < 0 { j } else { i };
        band.get(k).copied().unwrap_or(0.0)
    }

    /// Leading principal submatrix of order N+1.
    pub fn truncate(&self, n: usize) -> Result<DenseMatrix> {
        if n >= self.n_max {
            return Err(Error::OutOfRange {
                index: n,
                limit: self.n_max,
            });
        }
        let size = n + 1;
        let mut m = DenseMatrix::zeros(size);
        for i in 0..size {
            let lo = i.saturating_sub(self.q);
            let hi = (i + self.p).min(n);
            for j in lo..=hi {
                m.set(i, j, self.entry(i, j));
            }
        }
        Ok(m)
    }

    /// Shifts the main diagonal by s; all other bands unchanged.
    pub fn shift(&self, s: f64) -> BandedMatrix {
        let mut bands = self.bands.clone();
        for v in bands[self.q].iter_mut() {
            *v += s;
        }
        BandedMatrix {
            p: self.p,
            q: self.q,
            bands,
            n_max: self.n_max,
        }
    }

    /// Largest |entry| over the represented window (boundedness proxy).
    pub fn sup_entry(&self) -> f64 {
        self.bands
            .iter()
            .flat_map(|b| b.iter())
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Assembles the banded matrix L_1 ... L_q Δ U_p ... U_1 from unit
    /// bidiagonal factor sequences and a diagonal. `lowers\[k\]` holds the
    /// subdiagonal entries of L_{k+1}, `uppers\[j\]` the superdiagonal entries
    /// of U_{p-j} (so `uppers` is listed in product order U_p, ..., U_1).
    pub fn from_bidiagonal_factors(
        lowers: &[Vec<f64>],
        delta: &[f64],
        uppers: &[Vec<f64>],
        n_max: usize,
    ) -> Result<Self> {
        let q = lowers.len();
        let p = uppers.len();
        let size = n_max + 1;
        if delta.len() < size {
            return Err(Error::Invalid(format!(
                "diagonal factor holds {} entries, needs {size}",
                delta.len()
            )));
        }
        for (k, l) in lowers.iter().enumerate() {
            if l.len() + 1 < size {
                return Err(Error::Invalid(format!(
                    "lower factor {} holds {} entries, needs {}",
                    k + 1,
                    l.len(),
                    size - 1
                )));
            }
        }
        for (j, u) in uppers.iter().enumerate() {
            if u.len() + 1 < size {
                return Err(Error::Invalid(format!(
                    "upper factor {} holds {} entries, needs {}",
                    p - j,
                    u.len(),
                    size - 1
                )));
            }
        }
        // dense product of the truncated factors; truncation commutes with
        // the product for triangular factor chains
        let mut prod = DenseMatrix::identity(size);
        for l in lowers {
            let mut f = DenseMatrix::identity(size);
            for i in 1..size {
                f.set(i, i - 1, l[i - 1]);
            }
            prod = prod.matmul(&f);
        }
        let mut dm = DenseMatrix::zeros(size);
        for i in 0..size {
            dm.set(i, i, delta[i]);
        }
        prod = prod.matmul(&dm);
        for u in uppers {
            let mut f = DenseMatrix::identity(size);
            for i in 1..size {
                f.set(i - 1, i, u[i - 1]);
            }
            prod = prod.matmul(&f);
        }
        let mut bands: Vec<Vec<f64>> = Vec::with_capacity(p + q + 1);
        for bi in 0..=(p + q) {
            let d = bi as i64 - q as i64;
            let len = size - d.unsigned_abs() as usize;
            let mut band = Vec::with_capacity(len);
            for k in 0..len {
                let (i, j) = if d < 0 {
                    (k + d.unsigned_abs() as usize, k)
                } else {
                    (k, k + d as usize)
                };
                band.push(prod.get(i, j));
            }
            bands.push(band);
        }
        BandedMatrix::new(p, q, bands, n_max)
    }
}
