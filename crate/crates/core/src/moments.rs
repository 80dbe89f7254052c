//! Moment analytics for the (2,3) banded case: moments from powers of the
//! operator, the block-Hankel moment matrix with its Gauss--Borel
//! factorization, second-kind matrix polynomials, the Weyl function matrix,
//! convergence probes, contour biorthogonality and the mixed multiple
//! Gauss quadrature rules.
//!
//! The Gauss--Borel residual ‖B·M·A − I‖ is evaluated in exact rational
//! arithmetic. Every f64 is a rational number, so the biorthogonality
//! identity can be checked without the catastrophic cancellation that makes
//! the floating triple product meaningless beyond dimension ten or so (the
//! moment matrix is Hankel-like, with condition growing exponentially in
//! the dimension).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::band::BandedMatrix;
use crate::dense::{solve_complex, DenseMatrix};
use crate::error::{Error, Result};
use crate::mixed::{
    eval_type1, eval_type2, quadrature_degree, InitialConditions, TruncationSpectrum,
};

fn check_widths(t: &BandedMatrix) -> Result<()> {
    if t.p() != 2 || t.q() != 3 {
        return Err(Error::Invalid(format!(
            "moment machinery requires band widths (2,3), got ({},{})",
            t.p(),
            t.q()
        )));
    }
    Ok(())
}

/// Truncation order that reproduces the semi-infinite moment of degree n
/// exactly: a length-n band path from the top rows cannot pass index 2n+1.
fn moment_truncation(n: usize) -> usize {
    2 * n + 3
}

/// Ψ_n = ξ^{-1} · (top-left 2×3 block of T^n) · ν^{-T}, computed on the
/// truncation of order 2n+3 (exact by band reachability).
pub fn moments_from_t(t: &BandedMatrix, n: usize, ic: &InitialConditions) -> Result<[[f64; 3]; 2]> {
    check_widths(t)?;
    let m = moment_truncation(n);
    if m >= t.n_max() {
        return Err(Error::OutOfRange {
            index: m,
            limit: t.n_max(),
        });
    }
    let size = m + 1;
    // iterate T^n e_j for j = 0,1,2 using the band structure
    let mut cols: [Vec<f64>; 3] = [vec![0.0; size], vec![0.0; size], vec![0.0; size]];
    for (j, col) in cols.iter_mut().enumerate() {
        col[j] = 1.0;
    }
    for _ in 0..n {
        for col in cols.iter_mut() {
            let mut next = vec![0.0; size];
            for (i, nx) in next.iter_mut().enumerate() {
                let lo = i.saturating_sub(t.q());
                let hi = (i + t.p()).min(size - 1);
                let mut acc = 0.0;
                for jj in lo..=hi {
                    acc += t.entry(i, jj) * col[jj];
                }
                *nx = acc;
            }
            *col = next;
        }
    }
    let block = [
        [cols[0][0], cols[1][0], cols[2][0]],
        [cols[0][1], cols[1][1], cols[2][1]],
    ];
    Ok(apply_ic_transforms(block, ic))
}

/// ξ^{-1} · block · ν^{-T}
fn apply_ic_transforms(block: [[f64; 3]; 2], ic: &InitialConditions) -> [[f64; 3]; 2] {
    // left: ξ^{-1} = [[1,0],[-ξ₁,1]]
    let left = [
        block[0],
        [
            block[1][0] - ic.xi_1 * block[0][0],
            block[1][1] - ic.xi_1 * block[0][1],
            block[1][2] - ic.xi_1 * block[0][2],
        ],
    ];
    // right: · ν^{-T}, i.e. rows of the result are ν^{-1} applied to rows
    [ic.nu_inv_apply(left[0]), ic.nu_inv_apply(left[1])]
}

/// Scalar block-Hankel moment matrix with the interleave
/// M_{2j+b-1, 3k+a-1} = (Ψ_{j+k})_{b,a}.
#[derive(Debug, Clone)]
pub struct MomentMatrix {
    pub dim: usize,
    pub data: DenseMatrix,
    /// Ψ_0 .. Ψ_{jmax+kmax}
    pub psis: Vec<[[f64; 3]; 2]>,
}

pub fn moment_matrix(t: &BandedMatrix, ic: &InitialConditions, dim: usize) -> Result<MomentMatrix> {
    check_widths(t)?;
    if dim == 0 {
        return Err(Error::Invalid(
            "moment matrix dimension must be positive".into(),
        ));
    }
    let jmax = (dim - 1) / 2;
    let kmax = (dim - 1) / 3;
    let mut psis = Vec::with_capacity(jmax + kmax + 1);
    for n in 0..=(jmax + kmax) {
        psis.push(moments_from_t(t, n, ic)?);
    }
    let mut data = DenseMatrix::zeros(dim);
    for r in 0..dim {
        let j = r / 2;
        let b = r % 2;
        for c in 0..dim {
            let k = c / 3;
            let a = c % 3;
            data.set(r, c, psis[j + k][b][a]);
        }
    }
    Ok(MomentMatrix { dim, data, psis })
}

/// Gauss--Borel factorization data: the Taylor-coefficient matrices of the
/// two recursion families and the exact residual of B·M·A = I.
#[derive(Debug, Clone)]
pub struct GaussBorel {
    /// Row m holds the coefficients of the type II pair at polynomial
    /// index m: column 2j+b-1 is the x^j coefficient of B^b_m.
    pub b_mat: DenseMatrix,
    /// Column m holds the coefficients of the type I triple at polynomial
    /// index m: row 3j+a-1 is the x^j coefficient of A^a_m.
    pub a_mat: DenseMatrix,
    /// max |(B·M·A - I)_{n,m}|, evaluated in exact rational arithmetic.
    pub residual: f64,
    /// Exact leading-minor determinants of the moment matrix (staircase
    /// products), as f64 approximations.
    pub leading_minors: Vec<f64>,
}

/// Exact dyadic decomposition: x = num / 2^shift (num integer, shift ≥ 0).
fn dyadic(x: f64) -> (BigInt, u32) {
    if x == 0.0 {
        return (BigInt::from(0), 0);
    }
    let bits = x.to_bits();
    let neg = bits >> 63 == 1;
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = bits & ((1u64 << 52) - 1);
    let (mut m, mut e) = if raw_exp == 0 {
        (mantissa, -1074i64)
    } else {
        (mantissa | (1u64 << 52), raw_exp - 1075)
    };
    let tz = m.trailing_zeros() as i64;
    m >>= tz;
    e += tz;
    let mut num = BigInt::from(m);
    if e > 0 {
        num <<= e as usize;
        e = 0;
    }
    if neg {
        num = -num;
    }
    (num, (-e) as u32)
}

fn big_ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    BigRational::new(num.clone(), den.clone())
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// Integer view of the scaled matrix 2^p · T and the initial conditions.
struct IntScaled {
    /// tnum\[(i,j)\] would be entry · 2^p; computed on demand
    p: u32,
    pic: u32,
    xi1: BigInt,
    nu: [BigInt; 3],
}

fn int_scale(t: &BandedMatrix, ic: &InitialConditions, lim: usize) -> IntScaled {
    let mut p = 0u32;
    for i in 0..=lim.min(t.n_max()) {
        let lo = i.saturating_sub(t.q());
        let hi = (i + t.p()).min(t.n_max());
        for j in lo..=hi {
            p = p.max(dyadic(t.entry(i, j)).1);
        }
    }
    let mut pic = 0u32;
    for v in [ic.xi_1, ic.nu1_1, ic.nu1_2, ic.nu2_2] {
        pic = pic.max(dyadic(v).1);
    }
    let scale_to = |x: f64, target: u32| -> BigInt {
        let (num, sh) = dyadic(x);
        num << (target - sh) as usize
    };
    IntScaled {
        p,
        pic,
        xi1: scale_to(ic.xi_1, pic),
        nu: [
            scale_to(ic.nu1_1, pic),
            scale_to(ic.nu1_2, pic),
            scale_to(ic.nu2_2, pic),
        ],
    }
}

impl IntScaled {
    fn tnum(&self, t: &BandedMatrix, i: usize, j: usize) -> BigInt {
        let (num, sh) = dyadic(t.entry(i, j));
        debug_assert!(sh <= self.p, "entry ({i},{j}) outside the scanned window");
        num << (self.p - sh) as usize
    }
}

/// Integer-numerator recursion families of the scaled matrix 2^p·T; the
/// coefficient j of B^{b+1}_m is b\[b\]\[m\]\[j\] / b_den\[m\], and likewise for A.
struct IntFamilies {
    b: [Vec<Vec<BigInt>>; 2],
    b_den: Vec<BigInt>,
    a: [Vec<Vec<BigInt>>; 3],
    a_den: Vec<BigInt>,
}

fn int_families(t: &BandedMatrix, sc: &IntScaled, upto: usize) -> Result<IntFamilies> {
    let one = || BigInt::from(1) << sc.pic as usize;
    let zero = BigInt::from(0);
    let mut b: [Vec<Vec<BigInt>>; 2] = [
        vec![vec![one()], vec![sc.xi1.clone()]],
        vec![vec![zero.clone()], vec![one()]],
    ];
    let mut b_den: Vec<BigInt> = vec![BigInt::from(1) << sc.pic as usize; 2.min(upto + 1)];
    if upto == 0 {
        b_den.truncate(1);
    }
    for n in 0..upto.saturating_sub(1) {
        // target denominator level m+1 = n+1
        let level = b_den[n + 1].clone();
        let mut next_rows: [Vec<BigInt>; 2] = [Vec::new(), Vec::new()];
        for (fam_idx, fam) in b.iter().enumerate() {
            // x · B_n, rescaled to the current level
            let scale_n = &level / &b_den[n];
            let mut combo: Vec<BigInt> = vec![zero.clone(); fam[n].len() + 1];
            for (jj, c) in fam[n].iter().enumerate() {
                combo[jj + 1] = c * &scale_n;
            }
            for j in n.saturating_sub(3)..=(n + 1) {
                let tv = sc.tnum(t, n, j);
                if tv == zero {
                    continue;
                }
                let scale_j = &level / &b_den[j];
                let factor = tv * scale_j;
                if combo.len() < fam[j].len() {
                    combo.resize(fam[j].len(), zero.clone());
                }
                for (jj, c) in fam[j].iter().enumerate() {
                    combo[jj] -= c * &factor;
                }
            }
            next_rows[fam_idx] = combo;
        }
        let e = sc.tnum(t, n, n + 2);
        if e == zero {
            return Err(Error::Degenerate {
                context: "vanishing upper extreme band".into(),
                position: n,
            });
        }
        let (sign, e_abs) = if e < zero { (-1, -e) } else { (1, e) };
        for row in next_rows.iter_mut() {
            if sign < 0 {
                for c in row.iter_mut() {
                    *c = -c.clone();
                }
            }
        }
        b_den.push(level * e_abs);
        b[0].push(std::mem::take(&mut next_rows[0]));
        b[1].push(std::mem::take(&mut next_rows[1]));
    }
    let mut a: [Vec<Vec<BigInt>>; 3] = [
        vec![vec![one()], vec![sc.nu[0].clone()], vec![sc.nu[1].clone()]],
        vec![vec![zero.clone()], vec![one()], vec![sc.nu[2].clone()]],
        vec![vec![zero.clone()], vec![zero.clone()], vec![one()]],
    ];
    let mut a_den: Vec<BigInt> = vec![BigInt::from(1) << sc.pic as usize; 3.min(upto + 1)];
    for n in 0..upto.saturating_sub(2) {
        let level = a_den[n + 2].clone();
        let mut next_rows: [Vec<BigInt>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (fam_idx, fam) in a.iter().enumerate() {
            let scale_n = &level / &a_den[n];
            let mut combo: Vec<BigInt> = vec![zero.clone(); fam[n].len() + 1];
            for (jj, c) in fam[n].iter().enumerate() {
                combo[jj + 1] = c * &scale_n;
            }
            for i in n.saturating_sub(2)..=(n + 2) {
                let tv = sc.tnum(t, i, n);
                if tv == zero {
                    continue;
                }
                let scale_i = &level / &a_den[i];
                let factor = tv * scale_i;
                if combo.len() < fam[i].len() {
                    combo.resize(fam[i].len(), zero.clone());
                }
                for (jj, c) in fam[i].iter().enumerate() {
                    combo[jj] -= c * &factor;
                }
            }
            next_rows[fam_idx] = combo;
        }
        let f = sc.tnum(t, n + 3, n);
        if f == zero {
            return Err(Error::Degenerate {
                context: "vanishing lower extreme band".into(),
                position: n,
            });
        }
        let (sign, f_abs) = if f < zero { (-1, -f) } else { (1, f) };
        for row in next_rows.iter_mut() {
            if sign < 0 {
                for c in row.iter_mut() {
                    *c = -c.clone();
                }
            }
        }
        a_den.push(level * f_abs);
        a[0].push(std::mem::take(&mut next_rows[0]));
        a[1].push(std::mem::take(&mut next_rows[1]));
        a[2].push(std::mem::take(&mut next_rows[2]));
    }
    Ok(IntFamilies { b, b_den, a, a_den })
}

/// Exact integer moment numerators of the scaled matrix with the initial
/// condition transforms applied: value = num / 2^{3·pic}.
fn int_moments(t: &BandedMatrix, sc: &IntScaled, upto: usize) -> Result<Vec<[[BigInt; 3]; 2]>> {
    let mlim = moment_truncation(upto);
    if mlim >= t.n_max() {
        return Err(Error::OutOfRange {
            index: mlim,
            limit: t.n_max(),
        });
    }
    let size = mlim + 1;
    let zero = BigInt::from(0);
    let mut cols: Vec<Vec<BigInt>> = (0..3)
        .map(|j| {
            let mut c = vec![zero.clone(); size];
            c[j] = BigInt::from(1);
            c
        })
        .collect();
    // ξ^{-1} numerators over 2^{pic}, ν^{-1} numerators over 2^{2·pic}
    let pic1 = BigInt::from(1) << sc.pic as usize;
    let pic2 = BigInt::from(1) << (2 * sc.pic) as usize;
    let xi_inv = [
        [pic1.clone(), zero.clone()],
        [-sc.xi1.clone(), pic1.clone()],
    ];
    let a_ = &sc.nu[0];
    let b_ = &sc.nu[1];
    let c_ = &sc.nu[2];
    let nu_inv = [
        [pic2.clone(), zero.clone(), zero.clone()],
        [-(a_ << sc.pic as usize), pic2.clone(), zero.clone()],
        [
            a_ * c_ - (b_ << sc.pic as usize),
            -(c_ << sc.pic as usize),
            pic2.clone(),
        ],
    ];
    let mut out = Vec::with_capacity(upto + 1);
    for _deg in 0..=upto {
        let raw = [
            [cols[0][0].clone(), cols[1][0].clone(), cols[2][0].clone()],
            [cols[0][1].clone(), cols[1][1].clone(), cols[2][1].clone()],
        ];
        // left: ξ^{-1}, right: · ν^{-T}
        let mut left = [
            [zero.clone(), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), zero.clone()],
        ];
        for bb in 0..2 {
            for cc in 0..3 {
                left[bb][cc] = &xi_inv[bb][0] * &raw[0][cc] + &xi_inv[bb][1] * &raw[1][cc];
            }
        }
        let mut psi = [
            [zero.clone(), zero.clone(), zero.clone()],
            [zero.clone(), zero.clone(), zero.clone()],
        ];
        for bb in 0..2 {
            for aa in 0..3 {
                let mut acc = zero.clone();
                for dd in 0..3 {
                    acc += &nu_inv[aa][dd] * &left[bb][dd];
                }
                psi[bb][aa] = acc;
            }
        }
        out.push(psi);
        for col in cols.iter_mut() {
            let mut next = vec![zero.clone(); size];
            for (i, nx) in next.iter_mut().enumerate() {
                let lo = i.saturating_sub(t.q());
                let hi = (i + t.p()).min(size - 1);
                let mut acc = zero.clone();
                for jj in lo..=hi {
                    if t.entry(i, jj) != 0.0 {
                        acc += sc.tnum(t, i, jj) * &col[jj];
                    }
                }
                *nx = acc;
            }
            *col = next;
        }
    }
    Ok(out)
}

/// Gauss--Borel factorization of the moment matrix of scalar dimension
/// `dim`: returns the coefficient matrices and the exact biorthogonality
/// residual. The identity is evaluated for the dyadically scaled matrix
/// 2^p·T, for which it coincides with the original one term by term.
/// Fails when the residual exceeds 1e-7 or a leading minor vanishes.
pub fn gauss_borel(t: &BandedMatrix, ic: &InitialConditions, dim: usize) -> Result<GaussBorel> {
    check_widths(t)?;
    if dim == 0 {
        return Err(Error::Invalid("dimension must be positive".into()));
    }
    let jmax = (dim - 1) / 2;
    let kmax = (dim - 1) / 3;
    let lim = moment_truncation(jmax + kmax);
    let sc = int_scale(t, ic, lim + 1);
    let fams = int_families(t, &sc, dim.saturating_sub(1).max(2))?;
    let psis = int_moments(t, &sc, jmax + kmax)?;
    let zero = BigInt::from(0);

    let coeff = |rows: &Vec<Vec<BigInt>>, m: usize, j: usize| -> BigInt {
        rows.get(m)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(|| zero.clone())
    };

    // f64 coefficient matrices of the original (unscaled) matrix: the
    // degree-j coefficient picks up 2^{p·j}
    let mut b_mat = DenseMatrix::zeros(dim);
    let mut a_mat = DenseMatrix::zeros(dim);
    for m in 0..dim {
        for c in 0..dim {
            let j = c / 2;
            let bb = c % 2;
            let num = coeff(&fams.b[bb], m, j) << (sc.p as usize * j);
            b_mat.set(m, c, big_ratio_f64(&num, &fams.b_den[m]));
        }
        for r in 0..dim {
            let j = r / 3;
            let aa = r % 3;
            let num = coeff(&fams.a[aa], m, j) << (sc.p as usize * j);
            a_mat.set(r, m, big_ratio_f64(&num, &fams.a_den[m]));
        }
    }

    // exact triple-product residual; all moments share the denominator
    // 2^{3·pic}, so each (n,m) entry has denominator b_den·2^{3·pic}·a_den
    let pic3 = BigInt::from(1) << (3 * sc.pic) as usize;
    let mut residual: f64 = 0.0;
    for n in 0..dim {
        for m in 0..dim {
            let mut s = zero.clone();
            for c in 0..dim {
                let j = c / 2;
                let bb = c % 2;
                let bc = coeff(&fams.b[bb], n, j);
                if bc == zero {
                    continue;
                }
                for r in 0..dim {
                    let jj = r / 3;
                    let aa = r % 3;
                    let ac = coeff(&fams.a[aa], m, jj);
                    if ac == zero {
                        continue;
                    }
                    s += &bc * &psis[j + jj][bb][aa] * &ac;
                }
            }
            let den = &fams.b_den[n] * &pic3 * &fams.a_den[m];
            if n == m {
                s -= &den;
            }
            if s != zero {
                residual = residual.max(big_ratio_f64(&s, &den).abs());
            }
        }
    }

    // staircase leading minors of the original moment matrix:
    // det M_k = Π_{m<k} 1 / (diag(B)_m diag(A)_m)
    let mut leading_minors = Vec::with_capacity(dim);
    let mut det_num = BigInt::from(1);
    let mut det_den = BigInt::from(1);
    for m in 0..dim {
        let jb = m / 2;
        let bb = m % 2;
        let ja = m / 3;
        let aa = m % 3;
        let db = coeff(&fams.b[bb], m, jb) << (sc.p as usize * jb);
        let da = coeff(&fams.a[aa], m, ja) << (sc.p as usize * ja);
        if db == zero || da == zero {
            return Err(Error::Regularity { minor: m + 1 });
        }
        det_num = det_num * &fams.b_den[m] * &fams.a_den[m];
        det_den = det_den * db * da;
        leading_minors.push(big_ratio_f64(&det_num, &det_den));
    }

    if residual > 1e-7 {
        return Err(Error::ToleranceExceeded {
            context: "Gauss-Borel biorthogonality B·M·A = I".into(),
            residual,
            tolerance: 1e-7,
        });
    }
    Ok(GaussBorel {
        b_mat,
        a_mat,
        residual,
        leading_minors,
    })
}

/// Second-kind matrix polynomial value at z, by two routes.
#[derive(Debug, Clone)]
pub struct SecondKindMatrix {
    /// Residue form Σ_k ρ_k μ_kᵀ Π_{l≠k}(z−λ_l).
    pub value: [[f64; 3]; 2],
    /// Adjugate form ξ^{-1} E₂ adj(zI−T^{\[N\]}) E₃ᵀ ν^{-T}.
    pub adjugate_route: [[f64; 3]; 2],
    pub residual: f64,
}

pub fn second_kind_matrix(
    t: &BandedMatrix,
    spec: &TruncationSpectrum,
    ic: &InitialConditions,
    z: f64,
) -> Result<SecondKindMatrix> {
    check_widths(t)?;
    let n = spec.n;
    // residue route
    let mut value = [[0.0; 3]; 2];
    for k in 0..spec.lambdas.len() {
        let mut prod = 1.0;
        for (l, &other) in spec.lambdas.iter().enumerate() {
            if l != k {
                prod *= z - other;
            }
        }
        for b in 0..2 {
            for a in 0..3 {
                value[b][a] += spec.rho[k][b] * spec.mu[k][a] * prod;
            }
        }
    }
    // adjugate route: det(zI−T) (zI−T)^{-1} on the first three basis vectors
    let trunc = t.truncate(n)?;
    // zI − T
    let mut zi_t = DenseMatrix::zeros(n + 1);
    for i in 0..=n {
        for j in 0..=n {
            zi_t.set(i, j, -trunc.get(i, j) + if i == j { z } else { 0.0 });
        }
    }
    let lu = zi_t.lu();
    let det = lu.det();
    let mut raw = [[0.0; 3]; 2];
    if lu.is_singular() {
        return Err(Error::PoleProximity {
            z: format!("{z}"),
            distance: 0.0,
        });
    }
    for j in 0..3.min(n + 1) {
        let mut e = vec![0.0; n + 1];
        e[j] = 1.0;
        let col = lu.solve(&e)?;
        for b in 0..2.min(n + 1) {
            raw[b][j] = det * col[b];
        }
    }
    let adjugate_route = apply_ic_transforms(raw, ic);
    let mut residual: f64 = 0.0;
    let scale = value
        .iter()
        .flatten()
        .fold(0.0_f64, |s, v| s.max(v.abs()))
        .max(1e-300);
    for b in 0..2 {
        for a in 0..3 {
            residual = residual.max((value[b][a] - adjugate_route[b][a]).abs() / scale);
        }
    }
    if residual > 1e-7 {
        return Err(Error::ToleranceExceeded {
            context: "second-kind matrix cross-check".into(),
            residual,
            tolerance: 1e-7,
        });
    }
    Ok(SecondKindMatrix {
        value,
        adjugate_route,
        residual,
    })
}

/// Weyl function matrix at z with the three computation routes.
#[derive(Debug, Clone)]
pub struct WeylMatrix {
    pub z: Complex64,
    pub n: usize,
    /// S^{\[N\]}(z) by the partial-fraction (residue) route.
    pub s: [[Complex64; 3]; 2],
    /// Resolvent route ξ^{-1} E₂ (zI−T)^{-1} E₃ᵀ ν^{-T}.
    pub resolvent_route: [[Complex64; 3]; 2],
    /// Ratio route P^{(1)}_{N+1}(z) / P_{N+1}(z).
    pub ratio_route: [[Complex64; 3]; 2],
    pub residual: f64,
}

pub fn weyl_matrix(
    t: &BandedMatrix,
    spec: &TruncationSpectrum,
    ic: &InitialConditions,
    z: Complex64,
) -> Result<WeylMatrix> {
    check_widths(t)?;
    let n = spec.n;
    let scale = 1.0 + spec.lambdas[0].abs();
    let min_dist = spec
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
    let zero = Complex64::new(0.0, 0.0);
    // partial fractions
    let mut s = [[zero; 3]; 2];
    for (k, &lam) in spec.lambdas.iter().enumerate() {
        let g = Complex64::new(1.0, 0.0) / (z - lam);
        for b in 0..2 {
            for a in 0..3 {
                s[b][a] += spec.rho[k][b] * spec.mu[k][a] * g;
            }
        }
    }
    // resolvent
    let trunc = t.truncate(n)?;
    let size = n + 1;
    let a_cplx: Vec<Vec<Complex64>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let v = -trunc.get(i, j);
                    Complex64::new(v, 0.0) + if i == j { z } else { zero }
                })
                .collect()
        })
        .collect();
    let mut raw = [[zero; 3]; 2];
    for j in 0..3.min(size) {
        let mut e = vec![zero; size];
        e[j] = Complex64::new(1.0, 0.0);
        let col = solve_complex(&a_cplx, &e)?;
        for b in 0..2.min(size) {
            raw[b][j] = col[b];
        }
    }
    let resolvent_route = apply_ic_transforms_complex(raw, ic);
    // ratio: P^{(1)}(z)/P(z) assembled from the spectral data
    let mut p = Complex64::new(1.0, 0.0);
    for &lam in &spec.lambdas {
        p *= z - lam;
    }
    let mut ratio_route = [[zero; 3]; 2];
    for k in 0..spec.lambdas.len() {
        let mut prod = Complex64::new(1.0, 0.0);
        for (l, &other) in spec.lambdas.iter().enumerate() {
            if l != k {
                prod *= z - other;
            }
        }
        for b in 0..2 {
            for a in 0..3 {
                ratio_route[b][a] += spec.rho[k][b] * spec.mu[k][a] * prod;
            }
        }
    }
    for row in ratio_route.iter_mut() {
        for v in row.iter_mut() {
            *v /= p;
        }
    }
    let norm_s = s
        .iter()
        .flatten()
        .fold(0.0_f64, |acc, v| acc.max(v.norm()))
        .max(1e-300);
    let mut residual: f64 = 0.0;
    for b in 0..2 {
        for a in 0..3 {
            residual = residual.max((s[b][a] - resolvent_route[b][a]).norm() / norm_s);
            residual = residual.max((s[b][a] - ratio_route[b][a]).norm() / norm_s);
        }
    }
    Ok(WeylMatrix {
        z,
        n,
        s,
        resolvent_route,
        ratio_route,
        residual,
    })
}

fn apply_ic_transforms_complex(
    block: [[Complex64; 3]; 2],
    ic: &InitialConditions,
) -> [[Complex64; 3]; 2] {
    let left = [
        block[0],
        [
            block[1][0] - ic.xi_1 * block[0][0],
            block[1][1] - ic.xi_1 * block[0][1],
            block[1][2] - ic.xi_1 * block[0][2],
        ],
    ];
    let nu_inv = |v: [Complex64; 3]| -> [Complex64; 3] {
        let w1 = v[0];
        let w2 = v[1] - ic.nu1_1 * v[0];
        let w3 = v[2] - ic.nu1_2 * v[0] - ic.nu2_2 * w2;
        [w1, w2, w3]
    };
    [nu_inv(left[0]), nu_inv(left[1])]
}

/// Weyl convergence probe: the resolvent-route values S^{\[N\]}(z) over a
/// list of truncation orders, with successive max-norm differences.
/// Tridiagonal inputs produce the 1×1 scalar Weyl value.
#[derive(Debug, Clone)]
pub struct WeylProbe {
    pub orders: Vec<usize>,
    /// values\[i\] is a rows×cols table (1×1 or 2×3)
    pub values: Vec<Vec<Vec<Complex64>>>,
    pub diffs: Vec<f64>,
    pub monotone_decreasing: bool,
}

pub fn weyl_convergence_probe(
    t: &BandedMatrix,
    ic: &InitialConditions,
    z: Complex64,
    orders: &[usize],
) -> Result<WeylProbe> {
    if orders.is_empty() {
        return Err(Error::Invalid("empty truncation order list".into()));
    }
    let max_n = *orders.iter().max().unwrap();
    // keep z clear of the accumulating spectra
    let top = t.truncate(max_n)?;
    let eigs = crate::eigen::eigenvalues(&top)?;
    let scale = eigs
        .values
        .first()
        .map(|v| v.norm())
        .unwrap_or(1.0)
        .max(1.0);
    let min_dist = eigs
        .values
        .iter()
        .map(|v| (z - v).norm())
        .fold(f64::INFINITY, f64::min);
    if min_dist <= 0.01 * scale {
        return Err(Error::PoleProximity {
            z: format!("{z}"),
            distance: min_dist,
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut values = Vec::with_capacity(orders.len());
    for &n in orders {
        let trunc = t.truncate(n)?;
        let size = n + 1;
        let a_cplx: Vec<Vec<Complex64>> = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        let v = -trunc.get(i, j);
                        Complex64::new(v, 0.0) + if i == j { z } else { zero }
                    })
                    .collect()
            })
            .collect();
        if t.p() == 2 && t.q() == 3 {
            let mut raw = [[zero; 3]; 2];
            for j in 0..3.min(size) {
                let mut e = vec![zero; size];
                e[j] = Complex64::new(1.0, 0.0);
                let col = solve_complex(&a_cplx, &e)?;
                for b in 0..2.min(size) {
                    raw[b][j] = col[b];
                }
            }
            let s = apply_ic_transforms_complex(raw, ic);
            values.push(s.iter().map(|row| row.to_vec()).collect());
        } else {
            let mut e = vec![zero; size];
            e[0] = Complex64::new(1.0, 0.0);
            let col = solve_complex(&a_cplx, &e)?;
            values.push(vec![vec![col[0]]]);
        }
    }
    let mut diffs = Vec::new();
    for w in values.windows(2) {
        let mut d: f64 = 0.0;
        for (r0, r1) in w[0].iter().zip(&w[1]) {
            for (v0, v1) in r0.iter().zip(r1) {
                d = d.max((v1 - v0).norm());
            }
        }
        diffs.push(d);
    }
    let monotone_decreasing = diffs.windows(2).all(|d| d[1] <= d[0]);
    Ok(WeylProbe {
        orders: orders.to_vec(),
        values,
        diffs,
        monotone_decreasing,
    })
}

/// Residue evaluation of the contour biorthogonality integral
/// ∮ B_n(z) Ŝ(z) A_m(z)ᵀ dz/(2πi) with Ŝ ≈ S^{\[M\]}: the sum of
/// B_n(λ_k) ρ_k μ_kᵀ A_m(λ_k)ᵀ over the poles enclosed by the circle
/// |z| < radius (the orientation is fixed so the diagonal case yields +1).
pub fn contour_biorthogonality_check(
    t: &BandedMatrix,
    spec: &TruncationSpectrum,
    ic: &InitialConditions,
    n: usize,
    m: usize,
    radius: f64,
) -> Result<f64> {
    check_widths(t)?;
    if !(radius > 0.0) {
        return Err(Error::Invalid(format!("radius {radius} must be positive")));
    }
    let scale = spec.lambdas[0].abs().max(1.0);
    for &lam in &spec.lambdas {
        if (lam.abs() - radius).abs() <= 1e-9 * scale {
            return Err(Error::Invalid(format!(
                "pole {lam} too close to the contour of radius {radius}"
            )));
        }
    }
    let mut total = 0.0;
    for (k, &lam) in spec.lambdas.iter().enumerate() {
        if lam.abs() >= radius {
            continue;
        }
        let bv = eval_type2(t, ic, lam, n);
        let av = eval_type1(t, ic, lam, m);
        let bn = bv[n];
        let am = av[m];
        let mut s = 0.0;
        for b in 0..2 {
            for a in 0..3 {
                s += bn[b] * spec.rho[k][b] * spec.mu[k][a] * am[a];
            }
        }
        total += s;
    }
    Ok(total)
}

/// Gauss quadrature report for a measure entry (b, a).
#[derive(Debug, Clone)]
pub struct QuadratureCheck {
    pub b: usize,
    pub a: usize,
    pub n: usize,
    /// d_{b,a}(N)
    pub degree: i64,
    /// Largest consecutive moment degree with relative residual < 1e-8.
    pub observed: i64,
    /// Relative residuals for moment degrees 0..=d+1.
    pub residuals: Vec<f64>,
    /// Absolute residual at degree d+1 (the optimality probe).
    pub probe_absolute: f64,
    pub pass: bool,
}

/// Compares Σ_k ρ_{k,b} μ_{k,a} λ_k^n against (Ψ_n)_{b,a} for
/// n = 0, 1, 2, ...; exactness holds up to the degree of precision
/// d_{b,a}(N) and generically fails beyond it.
pub fn gauss_quadrature_check(
    t: &BandedMatrix,
    spec: &TruncationSpectrum,
    ic: &InitialConditions,
    b: usize,
    a: usize,
) -> Result<QuadratureCheck> {
    check_widths(t)?;
    if !(1..=2).contains(&b) || !(1..=3).contains(&a) {
        return Err(Error::Invalid(format!(
            "measure entry ({b},{a}) out of range"
        )));
    }
    let n = spec.n;
    let degree = quadrature_degree(b, a, n);
    let cap = degree.max(0) + 5;
    let mut residuals = Vec::new();
    let mut observed: i64 = -1;
    let mut consecutive = true;
    let mut probe_absolute = 0.0;
    for deg in 0..=cap {
        let psi = moments_from_t(t, deg as usize, ic)?[b - 1][a - 1];
        let mut q = 0.0;
        let mut scale = 0.0;
        for (k, &lam) in spec.lambdas.iter().enumerate() {
            let term = spec.rho[k][b - 1] * spec.mu[k][a - 1] * lam.powi(deg as i32);
            q += term;
            scale += term.abs();
        }
        let rel = (q - psi).abs() / scale.max(1e-300);
        if deg <= degree + 1 {
            residuals.push(rel);
        }
        if deg == degree + 1 {
            probe_absolute = (q - psi).abs();
        }
        if consecutive && rel < 1e-8 {
            observed = deg;
        } else {
            consecutive = false;
        }
    }
    Ok(QuadratureCheck {
        b,
        a,
        n,
        degree,
        observed,
        residuals,
        probe_absolute,
        pass: observed >= degree,
    })
}

/// Full table of quadrature checks over the six measure entries.
pub fn quadrature_table(
    t: &BandedMatrix,
    spec: &TruncationSpectrum,
    ic: &InitialConditions,
) -> Result<Vec<QuadratureCheck>> {
    let mut out = Vec::with_capacity(6);
    for b in 1..=2usize {
        for a in 1..=3usize {
            out.push(gauss_quadrature_check(t, spec, ic, b, a)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixed;
    use crate::mixed::truncation_spectrum;
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
    fn moments_hand_values() {
        let t = ones_t1(40);
        let ic = InitialConditions::identity();
        let psi0 = moments_from_t(&t, 0, &ic).unwrap();
        assert_eq!(psi0, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        let psi1 = moments_from_t(&t, 1, &ic).unwrap();
        assert_eq!(psi1, [[1.0, 2.0, 1.0], [3.0, 7.0, 5.0]]);
    }

    #[test]
    fn moments_independent_of_truncation_margin() {
        // the top block of a power only sees indices a band path can reach,
        // so enlarging the truncation changes nothing, bit for bit
        let t = ones_t1(60);
        let ic = InitialConditions::identity();
        for deg in [1usize, 3, 6] {
            let psi = moments_from_t(&t, deg, &ic).unwrap();
            let big = t.truncate(2 * deg + 10).unwrap().power(deg);
            for b in 0..2 {
                for a in 0..3 {
                    assert_eq!(psi[b][a], big.get(b, a), "degree {deg} entry ({b},{a})");
                }
            }
        }
    }

    #[test]
    fn moment_matrix_interleave() {
        let t = ones_t1(40);
        let ic = InitialConditions::identity();
        let m = moment_matrix(&t, &ic, 6).unwrap();
        assert_abs_diff_eq!(m.data.get(0, 0), 1.0);
        assert_abs_diff_eq!(m.data.get(1, 2), 0.0);
        assert_abs_diff_eq!(m.data.get(0, 3), 1.0);
        // block-Hankel: entry depends only on j+k and (b,a)
        assert_abs_diff_eq!(m.data.get(2, 0), m.data.get(0, 3)); // both Ψ_1[1,1]
    }

    #[test]
    fn gauss_borel_reference_exact() {
        let t = ones_t1(70);
        let ic = InitialConditions::identity();
        let gb = gauss_borel(&t, &ic, 12).unwrap();
        // integer-exact case: the residual vanishes identically
        assert!(gb.residual < 1e-8, "residual {}", gb.residual);
        // staircase: coefficients above the degree bound vanish
        for m in 0..12usize {
            for c in 0..12usize {
                let j = c / 2;
                let b = c % 2;
                if (j as i64) > mixed::degree_type2(b + 1, m) {
                    assert_eq!(gb.b_mat.get(m, c), 0.0, "B staircase at ({m},{c})");
                }
            }
        }
    }

    #[test]
    fn gauss_borel_coefficients_match_float_recursion() {
        // the integer-exact family coefficients (rescaled back from the
        // dyadically scaled matrix) must agree with the plain f64 recursion
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let n_max = 40;
        let mut fac = |len: usize| -> Vec<f64> {
            (0..len)
                .map(|_| rng.random_range(13u32..=128) as f64 / 64.0)
                .collect()
        };
        let l1 = fac(n_max);
        let l2 = fac(n_max);
        let l3 = fac(n_max);
        let delta = fac(n_max + 1);
        let u2 = fac(n_max);
        let u1 = fac(n_max);
        let t =
            BandedMatrix::from_bidiagonal_factors(&[l1, l2, l3], &delta, &[u2, u1], n_max).unwrap();
        let ic = InitialConditions::new(0.25, -0.5, 1.5, 0.75);
        let dim = 10;
        let gb = gauss_borel(&t, &ic, dim).unwrap();
        let fams = mixed::recursion_vectors(&t, dim, dim, &ic).unwrap();
        for m in 0..dim {
            for c in 0..dim {
                let j = c / 2;
                let b = c % 2;
                let expect = fams.b[b][m].coeff(j);
                let got = gb.b_mat.get(m, c);
                let scale = expect.abs().max(1.0);
                assert!(
                    (got - expect).abs() <= 1e-12 * scale,
                    "B coeff ({m},{c}): {got} vs {expect}"
                );
            }
            for r in 0..dim {
                let j = r / 3;
                let a = r % 3;
                let expect = fams.a[a][m].coeff(j);
                let got = gb.a_mat.get(r, m);
                let scale = expect.abs().max(1.0);
                assert!(
                    (got - expect).abs() <= 1e-12 * scale,
                    "A coeff ({r},{m}): {got} vs {expect}"
                );
            }
        }
        // nonidentity initial conditions keep the exact residual at zero
        assert_eq!(gb.residual, 0.0);
    }

    #[test]
    fn gauss_borel_scalar_one_by_one() {
        let t = ones_t1(40);
        let ic = InitialConditions::identity();
        let gb = gauss_borel(&t, &ic, 1).unwrap();
        assert_abs_diff_eq!(gb.b_mat.get(0, 0), 1.0);
        assert_abs_diff_eq!(gb.a_mat.get(0, 0), 1.0);
        assert!(gb.residual == 0.0);
    }

    #[test]
    fn second_kind_reference() {
        let t = ones_t1(40);
        let ic = InitialConditions::identity();
        // N = 0: value = ρ_1 μ_1ᵀ = [[1,0,0],[0,0,0]] for identity ICs
        let s0 = truncation_spectrum(&t, 0, &ic).unwrap();
        let sk0 = second_kind_matrix(&t, &s0, &ic, 5.0).unwrap();
        assert_abs_diff_eq!(sk0.value[0][0], 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(sk0.value[1][1], 0.0, epsilon = 1e-10);
        // N = 1 at z = 0: two-node formula
        let s1 = truncation_spectrum(&t, 1, &ic).unwrap();
        let sk1 = second_kind_matrix(&t, &s1, &ic, 0.0).unwrap();
        let mut expect = [[0.0; 3]; 2];
        for k in 0..2 {
            let other = s1.lambdas[1 - k];
            for b in 0..2 {
                for a in 0..3 {
                    expect[b][a] += s1.rho[k][b] * s1.mu[k][a] * (0.0 - other);
                }
            }
        }
        for b in 0..2 {
            for a in 0..3 {
                assert_abs_diff_eq!(sk1.value[b][a], expect[b][a], epsilon = 1e-9);
            }
        }
        assert!(sk1.residual < 1e-9);
    }

    #[test]
    fn weyl_matrix_routes_agree() {
        let t = ones_t1(40);
        let ic = InitialConditions::identity();
        let s = truncation_spectrum(&t, 8, &ic).unwrap();
        let z = Complex64::new(40.0, 1.0);
        let w = weyl_matrix(&t, &s, &ic, z).unwrap();
        assert!(w.residual < 1e-7, "residual {}", w.residual);
        // z S(z) -> mass matrix at large z
        let zfar = Complex64::new(1e6, 0.0);
        let wf = weyl_matrix(&t, &s, &ic, zfar).unwrap();
        assert!((wf.s[0][0] * zfar - Complex64::new(1.0, 0.0)).norm() < 1e-4);
        assert!((wf.s[1][1] * zfar - Complex64::new(1.0, 0.0)).norm() < 1e-4);
        // entry (2,3) decays faster than 1/z for identity ICs
        assert!((wf.s[1][2] * zfar).norm() < 1e-4);
        // pole proximity rejected
        let zpole = Complex64::new(s.lambdas[0], 0.0);
        assert!(weyl_matrix(&t, &s, &ic, zpole).is_err());
    }

    #[test]
    fn weyl_probe_reference() {
        let t = ones_t1(45);
        let ic = InitialConditions::identity();
        let z = Complex64::new(30.0, 0.0);
        let p = weyl_convergence_probe(&t, &ic, z, &[5, 10, 20, 40]).unwrap();
        assert_eq!(p.diffs.len(), 3);
        assert!(p.monotone_decreasing, "diffs: {:?}", p.diffs);
        // single order: empty diff list
        let p1 = weyl_convergence_probe(&t, &ic, z, &[5]).unwrap();
        assert!(p1.diffs.is_empty());
    }

    #[test]
    fn contour_reference() {
        let t = ones_t1(40);
        let ic = InitialConditions::identity();
        let spec = truncation_spectrum(&t, 12, &ic).unwrap();
        let radius = spec.lambdas[0].abs() + 1.0;
        for n in 0..3usize {
            for m in 0..3usize {
                let v = contour_biorthogonality_check(&t, &spec, &ic, n, m, radius).unwrap();
                let expect = if n == m { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(v, expect, epsilon = 1e-8);
            }
        }
        // contour below the whole (positive) spectrum encloses nothing
        let v = contour_biorthogonality_check(&t, &spec, &ic, 0, 0, 1e-6).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn quadrature_reference() {
        let t = ones_t1(60);
        let ic = InitialConditions::identity();
        let spec = truncation_spectrum(&t, 4, &ic).unwrap();
        let table = quadrature_table(&t, &spec, &ic).unwrap();
        let d11 = table.iter().find(|c| c.b == 1 && c.a == 1).unwrap();
        assert_eq!(d11.degree, 4);
        assert!(d11.pass);
        let d23 = table.iter().find(|c| c.b == 2 && c.a == 3).unwrap();
        assert_eq!(d23.degree, 2);
        assert!(d23.pass);
        // n = 0 is exact whenever the degree of precision is nonnegative
        for c in &table {
            if c.degree >= 0 {
                assert!(c.residuals[0] < 1e-8);
            }
        }
    }
}
