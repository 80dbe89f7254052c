//! Bidiagonal factorization of banded truncations, total-nonnegativity
//! certification by Neville elimination, oscillatory tests and the Darboux
//! transformations.
//!
//! A truncation of a (p,q)-banded matrix is peeled into
//! `L_1 ... L_q Δ U_p ... U_1` with unit bidiagonal factors. The boundary
//! slots that the truncated product cannot determine (the factorization of
//! an n×n band carries `p + q - 2` more parameters than the matrix has
//! entries) are fixed to zero, which makes the factorization unique; the
//! positivity certificate therefore ranges over the structurally determined
//! entries only.

use crate::band::BandedMatrix;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Position of the first nonpositive parameter found during factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// "L1".."L3", "delta", "U1".."U2"
    pub factor: String,
    pub index: usize,
    pub value: f64,
}

/// Unit-bidiagonal factorization `L_1 ... L_q Δ U_p ... U_1` of a banded
/// truncation, with the positivity certificate.
#[derive(Debug, Clone)]
pub struct BidiagonalFactorization {
    /// lowers\[k\] holds the subdiagonal of L_{k+1}.
    pub lowers: Vec<Vec<f64>>,
    pub delta: Vec<f64>,
    /// uppers\[j\] holds the superdiagonal of U_{p-j} (product order).
    pub uppers: Vec<Vec<f64>>,
    /// True iff every structurally determined parameter is strictly positive.
    pub positive: bool,
    /// First nonpositive structural parameter, when `positive` is false.
    pub first_violation: Option<Violation>,
}

impl BidiagonalFactorization {
    pub fn q(&self) -> usize {
        self.lowers.len()
    }

    pub fn p(&self) -> usize {
        self.uppers.len()
    }

    pub fn size(&self) -> usize {
        self.delta.len()
    }

    /// Reassembles the product L_1 ... L_q Δ U_p ... U_1.
    pub fn assemble(&self) -> DenseMatrix {
        let n = self.size();
        let mut prod = DenseMatrix::identity(n);
        for l in &self.lowers {
            prod = prod.matmul(&lower_bidiagonal(n, l));
        }
        let mut d = DenseMatrix::zeros(n);
        for i in 0..n {
            d.set(i, i, self.delta[i]);
        }
        prod = prod.matmul(&d);
        for u in &self.uppers {
            prod = prod.matmul(&upper_bidiagonal(n, u));
        }
        prod
    }

    /// Factor list in product order: q lowers, Δ, p uppers.
    fn factor_list(&self) -> Vec<DenseMatrix> {
        let n = self.size();
        let mut list: Vec<DenseMatrix> =
            self.lowers.iter().map(|l| lower_bidiagonal(n, l)).collect();
        let mut d = DenseMatrix::zeros(n);
        for i in 0..n {
            d.set(i, i, self.delta[i]);
        }
        list.push(d);
        list.extend(self.uppers.iter().map(|u| upper_bidiagonal(n, u)));
        list
    }
}

fn lower_bidiagonal(n: usize, sub: &[f64]) -> DenseMatrix {
    let mut m = DenseMatrix::identity(n);
    for i in 1..n {
        m.set(i, i - 1, sub[i - 1]);
    }
    m
}

fn upper_bidiagonal(n: usize, sup: &[f64]) -> DenseMatrix {
    let mut m = DenseMatrix::identity(n);
    for i in 1..n {
        m.set(i - 1, i, sup[i - 1]);
    }
    m
}

/// Peels the banded matrix into bidiagonal factors.
///
/// Lower factors are produced outermost first: each pass removes the lowest
/// remaining subdiagonal by row elimination against the updated previous
/// row; the upper factors are peeled from the right by the analogous column
/// passes, and the diagonal remains. A zero pivot makes the elimination
/// impossible and is a hard failure; nonpositive parameters complete the
/// factorization but clear the `positive` flag, keeping the certificate
/// inspectable.
pub fn factorize(m: &DenseMatrix, p: usize, q: usize) -> Result<BidiagonalFactorization> {
    m.check_finite()?;
    m.check_bandwidths(p, q)?;
    let n = m.n();
    let mut work = m.clone();
    let mut lowers: Vec<Vec<f64>> = Vec::with_capacity(q);

    for band in (1..=q).rev() {
        let mut sub = vec![0.0; n.saturating_sub(1)];
        for i in 1..n {
            if i >= band {
                let col = i - band;
                let num = work.get(i, col);
                let piv = work.get(i - 1, col);
                if piv == 0.0 {
                    if num == 0.0 {
                        continue;
                    }
                    return Err(Error::Degenerate {
                        context: format!("lower band -{band} elimination"),
                        position: i,
                    });
                }
                let c = num / piv;
                sub[i - 1] = c;
                for j in 0..n {
                    let v = work.get(i, j) - c * work.get(i - 1, j);
                    work.set(i, j, v);
                }
                work.set(i, col, 0.0);
            }
        }
        lowers.push(sub);
    }

    let mut uppers_rev: Vec<Vec<f64>> = Vec::with_capacity(p);
    for band in (1..=p).rev() {
        let mut sup = vec![0.0; n.saturating_sub(1)];
        for j in 1..n {
            if j >= band {
                let row = j - band;
                let num = work.get(row, j);
                let piv = work.get(row, j - 1);
                if piv == 0.0 {
                    if num == 0.0 {
                        continue;
                    }
                    return Err(Error::Degenerate {
                        context: format!("upper band +{band} elimination"),
                        position: j,
                    });
                }
                let v = num / piv;
                sup[j - 1] = v;
                for i in 0..n {
                    let w = work.get(i, j) - v * work.get(i, j - 1);
                    work.set(i, j, w);
                }
                work.set(row, j, 0.0);
            }
        }
        uppers_rev.push(sup);
    }

    let mut delta = vec![0.0; n];
    for i in 0..n {
        let d = work.get(i, i);
        if d == 0.0 {
            return Err(Error::Degenerate {
                context: "diagonal pivot".into(),
                position: i,
            });
        }
        delta[i] = d;
    }

    // uppers were produced rightmost (U_1) first; product order is U_p..U_1
    let uppers: Vec<Vec<f64>> = uppers_rev.into_iter().rev().collect();

    // positivity certificate over structurally determined entries: L_k has
    // no entries at rows < q - k + 1, U_j none at columns < p - j + 1
    let mut first_violation = None;
    'outer: for (kk, sub) in lowers.iter().enumerate() {
        let band = q - kk; // this factor eliminated band -band and is L_{q-band+1}
        let start = band.saturating_sub(1);
        for (i, &v) in sub.iter().enumerate().skip(start) {
            if v <= 0.0 {
                first_violation = Some(Violation {
                    factor: format!("L{}", kk + 1),
                    index: i,
                    value: v,
                });
                break 'outer;
            }
        }
    }
    if first_violation.is_none() {
        for (i, &v) in delta.iter().enumerate() {
            if v <= 0.0 {
                first_violation = Some(Violation {
                    factor: "delta".into(),
                    index: i,
                    value: v,
                });
                break;
            }
        }
    }
    if first_violation.is_none() {
        // uppers[jj] is U_{p-jj}; it was peeled while removing band +(p-jj),
        // so its first p-(p-jj) = jj slots are structural zeros
        'outer2: for (jj, sup) in uppers.iter().enumerate() {
            let factor_index = p - jj;
            for (i, &v) in sup.iter().enumerate().skip(jj) {
                if v <= 0.0 {
                    first_violation = Some(Violation {
                        factor: format!("U{factor_index}"),
                        index: i,
                        value: v,
                    });
                    break 'outer2;
                }
            }
        }
    }

    Ok(BidiagonalFactorization {
        lowers,
        delta,
        uppers,
        positive: first_violation.is_none(),
        first_violation,
    })
}

/// Which clause of the oscillatory criterion failed.
#[derive(Debug, Clone, PartialEq)]
pub enum OscillatoryFailure {
    NotTotallyNonnegative { row: usize, col: usize },
    Singular,
    NonpositiveSubdiagonal { index: usize },
    NonpositiveSuperdiagonal { index: usize },
}

/// Verdict of the oscillatory test with the failed clause, if any.
#[derive(Debug, Clone)]
pub struct OscillatoryVerdict {
    pub oscillatory: bool,
    pub failure: Option<OscillatoryFailure>,
}

/// Gantmacher–Krein test: totally nonnegative (certified by nonnegative
/// Neville elimination parameters of the matrix and its transpose),
/// nonsingular, and with strictly positive first sub- and superdiagonals.
pub fn is_oscillatory(m: &DenseMatrix) -> OscillatoryVerdict {
    let n = m.n();
    for i in 0..n.saturating_sub(1) {
        if m.get(i + 1, i) <= 0.0 {
            return OscillatoryVerdict {
                oscillatory: false,
                failure: Some(OscillatoryFailure::NonpositiveSubdiagonal { index: i }),
            };
        }
        if m.get(i, i + 1) <= 0.0 {
            return OscillatoryVerdict {
                oscillatory: false,
                failure: Some(OscillatoryFailure::NonpositiveSuperdiagonal { index: i }),
            };
        }
    }
    let scale = m.norm_max().max(1.0);
    let tol = 1e-13 * scale;
    for mat in [m.clone(), m.transpose()] {
        match neville_nonnegative(&mat) {
            Ok(pivots) => {
                for (i, &piv) in pivots.iter().enumerate() {
                    if piv < -tol {
                        return OscillatoryVerdict {
                            oscillatory: false,
                            failure: Some(OscillatoryFailure::NotTotallyNonnegative {
                                row: i,
                                col: i,
                            }),
                        };
                    }
                    if piv <= tol {
                        return OscillatoryVerdict {
                            oscillatory: false,
                            failure: Some(OscillatoryFailure::Singular),
                        };
                    }
                }
            }
            Err((row, col)) => {
                return OscillatoryVerdict {
                    oscillatory: false,
                    failure: Some(OscillatoryFailure::NotTotallyNonnegative { row, col }),
                };
            }
        }
    }
    OscillatoryVerdict {
        oscillatory: true,
        failure: None,
    }
}

/// Complete Neville elimination of the lower triangle, bottom-up per column
/// with consecutive rows. Returns the diagonal pivots, or the position of
/// the entry certifying a negative minor / impossible elimination.
fn neville_nonnegative(m: &DenseMatrix) -> std::result::Result<Vec<f64>, (usize, usize)> {
    let n = m.n();
    let mut a = m.clone();
    let scale = a.norm_max().max(1.0);
    let tol = 1e-13 * scale;
    for j in 0..n {
        for i in (j + 1..n).rev() {
            let num = a.get(i, j);
            if num.abs() <= tol {
                a.set(i, j, 0.0);
                continue;
            }
            if num < 0.0 {
                return Err((i, j));
            }
            let piv = a.get(i - 1, j);
            if piv <= tol {
                // nonzero entry below a vanishing one: elimination impossible
                return Err((i, j));
            }
            let c = num / piv;
            for col in j..n {
                let v = a.get(i, col) - c * a.get(i - 1, col);
                a.set(i, col, v);
            }
            a.set(i, j, 0.0);
        }
    }
    Ok((0..n).map(|i| a.get(i, i)).collect())
}

/// Cyclic Darboux permutation of the factorization product.
///
/// Variant `+a` (1 ≤ a ≤ q) moves the leading `a` lower factors to the back;
/// variant `-b` (1 ≤ b ≤ p) moves the trailing `b` upper factors to the
/// front. All variants are similarity transforms of the original truncation.
pub fn darboux_transform(f: &BidiagonalFactorization, variant: i32) -> Result<DenseMatrix> {
    let p = f.p();
    let q = f.q();
    if variant == 0 || variant > q as i32 || variant < -(p as i32) {
        return Err(Error::InvalidVariant { variant, p, q });
    }
    let list = f.factor_list();
    let len = list.len();
    let rot = if variant > 0 {
        variant as usize
    } else {
        len - variant.unsigned_abs() as usize
    };
    let n = f.size();
    let mut prod = DenseMatrix::identity(n);
    for idx in 0..len {
        prod = prod.matmul(&list[(idx + rot) % len]);
    }
    Ok(prod)
}

/// Smallest shift s on a bisection grid such that the truncation of T + sI
/// has an all-positive factorization. Resolution 1e-6·(1 + ‖T^{\[N\]}‖₁);
/// fails if nothing positive is found below 10·‖T^{\[N\]}‖₁.
pub fn find_oscillatory_shift(t: &BandedMatrix, n: usize) -> Result<f64> {
    let trunc = t.truncate(n)?;
    let norm = trunc.norm_one();
    let resolution = 1e-6 * (1.0 + norm);
    let ceiling = 10.0 * norm.max(1.0);

    let positive_at = |s: f64| -> bool {
        t.shift(s)
            .truncate(n)
            .ok()
            .and_then(|m| factorize(&m, t.p(), t.q()).ok())
            .map(|f| f.positive)
            .unwrap_or(false)
    };

    if positive_at(0.0) {
        return Ok(0.0);
    }
    let mut hi = resolution.max(1e-3 * (1.0 + norm));
    while !positive_at(hi) {
        hi *= 2.0;
        if hi > ceiling {
            return Err(Error::SearchExhausted { ceiling });
        }
    }
    let mut lo = 0.0;
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if positive_at(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ones_t1(n_max: usize) -> BandedMatrix {
        let ones = vec![1.0; n_max];
        let delta = vec![1.0; n_max + 1];
        BandedMatrix::from_bidiagonal_factors(
            &[ones.clone(), ones.clone(), ones.clone()],
            &delta,
            &[ones.clone(), ones.clone()],
            n_max,
        )
        .unwrap()
    }

    #[test]
    fn tridiagonal_hand_case() {
        let m = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let f = factorize(&m, 1, 1).unwrap();
        assert!(f.positive);
        assert_abs_diff_eq!(f.lowers[0][0], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(f.delta[0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(f.delta[1], 1.5, epsilon = 1e-14);
        assert_abs_diff_eq!(f.uppers[0][0], 0.5, epsilon = 1e-14);
        let r = f.assemble();
        assert!(r.sub(&m).norm_max() <= 1e-14);
    }

    #[test]
    fn degenerate_pivot_is_hard_failure() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let err = factorize(&m, 1, 1).unwrap_err();
        match err {
            Error::Degenerate { position, .. } => assert_eq!(position, 1),
            e => panic!("expected degenerate failure, got {e}"),
        }
    }

    #[test]
    fn reference_matrix_factorization() {
        // truncations of the all-ones product: positive certificate, unit
        // diagonal, exact reassembly
        let t = ones_t1(12);
        for n in [1usize, 3, 7, 11] {
            let m = t.truncate(n).unwrap();
            let f = factorize(&m, 2, 3).unwrap();
            assert!(f.positive, "positive certificate expected at N={n}");
            for d in &f.delta {
                assert_abs_diff_eq!(*d, 1.0, epsilon = 1e-10);
            }
            let back = f.assemble();
            assert!(back.sub(&m).norm_max() <= 1e-10 * m.norm_max());
        }
    }

    #[test]
    fn zero_gauge_values_match_hand_elimination() {
        // 4x4 all-ones truncation: hand Neville values
        let t = ones_t1(6);
        let m = t.truncate(3).unwrap();
        let f = factorize(&m, 2, 3).unwrap();
        assert_abs_diff_eq!(f.lowers[0][2], 1.0 / 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(f.lowers[1][1], 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(f.lowers[1][2], 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(f.lowers[2][0], 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(f.lowers[2][1], 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(f.lowers[2][2], 5.0 / 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(f.uppers[0][0], 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(f.uppers[0][1], 1.5, epsilon = 1e-13);
        assert_abs_diff_eq!(f.uppers[0][2], 4.0 / 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(f.uppers[1][1], 0.5, epsilon = 1e-13);
        assert_abs_diff_eq!(f.uppers[1][2], 2.0 / 3.0, epsilon = 1e-13);
    }

    #[test]
    fn oscillatory_hand_cases() {
        let yes = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!(is_oscillatory(&yes).oscillatory);
        let no = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let v = is_oscillatory(&no);
        assert!(!v.oscillatory);
        let yes2 = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 7.0]]).unwrap();
        assert!(is_oscillatory(&yes2).oscillatory);
    }

    #[test]
    fn darboux_jacobi_analogue() {
        // [[2,1],[1,2]] = L Δ U; variant +1 gives Δ U L = [[2.5,1],[0.75,1.5]]
        let m = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let f = factorize(&m, 1, 1).unwrap();
        let d = darboux_transform(&f, 1).unwrap();
        assert_abs_diff_eq!(d.get(0, 0), 2.5, epsilon = 1e-13);
        assert_abs_diff_eq!(d.get(0, 1), 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(d.get(1, 0), 0.75, epsilon = 1e-13);
        assert_abs_diff_eq!(d.get(1, 1), 1.5, epsilon = 1e-13);
        // characteristic polynomial preserved: x^2 - 4x + 3
        let cp = crate::dense::charpoly(&d).unwrap();
        assert_abs_diff_eq!(cp.coeff(0), 3.0, epsilon = 1e-10);
        assert_abs_diff_eq!(cp.coeff(1), -4.0, epsilon = 1e-10);
    }

    #[test]
    fn darboux_identity_factorization() {
        let f = BidiagonalFactorization {
            lowers: vec![vec![0.0; 3]; 3],
            delta: vec![1.0; 4],
            uppers: vec![vec![0.0; 3]; 2],
            positive: false,
            first_violation: None,
        };
        for v in [-2, -1, 1, 2, 3] {
            let d = darboux_transform(&f, v).unwrap();
            assert!(d.sub(&DenseMatrix::identity(4)).norm_max() == 0.0);
        }
        assert!(darboux_transform(&f, 4).is_err());
        assert!(darboux_transform(&f, -3).is_err());
    }

    #[test]
    fn shift_search_jacobi() {
        // free Jacobi: at N=1 the threshold is s = 1
        let j = crate::jacobi::JacobiMatrix::constant(0.0, 1.0, 10).unwrap();
        let b = j.to_banded().unwrap();
        let s = find_oscillatory_shift(&b, 1).unwrap();
        assert!(s > 1.0 && s < 1.0 + 1e-4, "s = {s}");
        // N=5: threshold -2cos(6π/7) ≈ 1.8019
        let s5 = find_oscillatory_shift(&b, 5).unwrap();
        let bound = -2.0 * (6.0 * std::f64::consts::PI / 7.0).cos();
        assert!(s5 >= bound - 1e-9 && s5 < bound + 1e-4, "s5 = {s5}");
    }

    #[test]
    fn shift_search_trivial_for_positive_product() {
        let t = ones_t1(8);
        assert_abs_diff_eq!(find_oscillatory_shift(&t, 4).unwrap(), 0.0);
    }

    #[test]
    fn shift_search_exhausts_on_negative_extreme_band() {
        // a diagonal shift never touches the extreme bands, so a negative
        // entry there defeats every candidate factorization
        let n_max = 6;
        let mut bands = Vec::new();
        for bi in 0..6usize {
            let d = bi as i64 - 3;
            let len = n_max + 1 - d.unsigned_abs() as usize;
            bands.push(vec![1.0; len]);
        }
        bands[0][0] = -1.0;
        let t = BandedMatrix::new(2, 3, bands, n_max).unwrap();
        match find_oscillatory_shift(&t, 4) {
            Err(Error::SearchExhausted { .. }) => {}
            other => panic!("expected exhausted search, got {other:?}"),
        }
    }
}
