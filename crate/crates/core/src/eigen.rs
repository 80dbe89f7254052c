//! Eigenvalue solvers.
//!
//! The general real solver follows the classical balance / Householder
//! Hessenberg / Francis double-shift QR chain used by EISPACK and JAMA
//! (the latter is public domain); only eigenvalues are accumulated. The
//! symmetric tridiagonal solver is an implicit-shift QL iteration.

use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Outcome of a full eigenvalue computation.
#[derive(Debug, Clone)]
pub struct EigenOutcome {
    /// Eigenvalues sorted by descending real part, ties by descending
    /// imaginary part.
    pub values: Vec<Complex64>,
    /// Total QR iterations spent.
    pub iterations: usize,
}

/// All eigenvalues of a real square matrix, sorted by descending real part.
pub fn eigenvalues(m: &DenseMatrix) -> Result<EigenOutcome> {
    m.check_finite()?;
    let (mut values, iterations) = hqr(m)?;
    sort_descending(&mut values);
    Ok(EigenOutcome { values, iterations })
}

/// Eigenvalues in QR deflation order with conjugate pairs adjacent; used by
/// the characteristic-polynomial assembly.
pub fn eigenvalues_unordered(m: &DenseMatrix) -> Result<Vec<Complex64>> {
    m.check_finite()?;
    Ok(hqr(m)?.0)
}

fn sort_descending(values: &mut [Complex64]) {
    values.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
}

/// Simple 2-radix balancing (scaling only, no permutations).
fn balance(a: &mut Vec<Vec<f64>>) {
    let n = a.len();
    let radix: f64 = 2.0;
    let sqrdx = radix * radix;
    let mut done = false;
    let mut sweeps = 0;
    while !done && sweeps < 50 {
        done = true;
        sweeps += 1;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / radix;
                let mut f = 1.0;
                let s = c + r;
                let mut cc = c;
                while cc < g {
                    f *= radix;
                    cc *= sqrdx;
                }
                g = r * radix;
                while cc > g {
                    f /= radix;
                    cc /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let ginv = 1.0 / f;
                    for j in 0..n {
                        a[i][j] *= ginv;
                    }
                    for j in 0..n {
                        a[j][i] *= f;
                    }
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form (no transform accumulation).
fn hessenberg(a: &mut Vec<Vec<f64>>) {
    let n = a.len();
    if n <= 2 {
        return;
    }
    for m in 1..n - 1 {
        let mut scale = 0.0;
        for i in m..n {
            scale += a[i][m - 1].abs();
        }
        if scale == 0.0 {
            continue;
        }
        let mut h = 0.0;
        let mut ort = vec![0.0; n];
        for i in (m..n).rev() {
            ort[i] = a[i][m - 1] / scale;
            h += ort[i] * ort[i];
        }
        let mut g = h.sqrt();
        if ort[m] > 0.0 {
            g = -g;
        }
        h -= ort[m] * g;
        ort[m] -= g;
        // apply Householder similarity from both sides
        for j in m..n {
            let mut f = 0.0;
            for i in (m..n).rev() {
                f += ort[i] * a[i][j];
            }
            f /= h;
            for i in m..n {
                a[i][j] -= f * ort[i];
            }
        }
        for i in 0..n {
            let mut f = 0.0;
            for j in (m..n).rev() {
                f += ort[j] * a[i][j];
            }
            f /= h;
            for j in m..n {
                a[i][j] -= f * ort[j];
            }
        }
        a[m][m - 1] = scale * g;
        for i in m + 1..n {
            a[i][m - 1] = 0.0;
        }
    }
}

/// Francis double-shift QR on a Hessenberg matrix; eigenvalues only.
/// Conjugate pairs are pushed adjacently.
fn hqr(m: &DenseMatrix) -> Result<(Vec<Complex64>, usize)> {
    let nn = m.n();
    if nn == 0 {
        return Ok((Vec::new(), 0));
    }
    let mut h: Vec<Vec<f64>> = (0..nn)
        .map(|i| (0..nn).map(|j| m.get(i, j)).collect())
        .collect();
    balance(&mut h);
    hessenberg(&mut h);

    let eps = f64::EPSILON;
    let mut values: Vec<Complex64> = Vec::with_capacity(nn);
    let mut n = nn as isize - 1;
    let low = 0isize;
    let mut exshift = 0.0;
    let mut iter = 0usize;
    let mut total_iter = 0usize;
    let max_total = 50 * nn.max(1);

    // running norm of the active block
    let mut norm = 0.0;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[i][j].abs();
        }
    }

    while n >= low {
        // find small subdiagonal element
        let mut l = n;
        while l > low {
            let s = h[(l - 1) as usize][(l - 1) as usize].abs() + h[l as usize][l as usize].abs();
            let s = if s == 0.0 { norm } else { s };
            if h[l as usize][(l - 1) as usize].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // one root found
            values.push(Complex64::new(h[n as usize][n as usize] + exshift, 0.0));
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // two roots: solve the trailing 2x2
            let nu = n as usize;
            let w = h[nu][nu - 1] * h[nu - 1][nu];
            let p = (h[nu - 1][nu - 1] - h[nu][nu]) / 2.0;
            let q = p * p + w;
            let z = q.abs().sqrt();
            let x = h[nu][nu] + exshift;
            if q >= 0.0 {
                // real pair
                let z = if p >= 0.0 { p + z } else { p - z };
                let r1 = x + z;
                let r2 = if z != 0.0 { x - w / z } else { r1 };
                values.push(Complex64::new(r1, 0.0));
                values.push(Complex64::new(r2, 0.0));
            } else {
                values.push(Complex64::new(x + p, z));
                values.push(Complex64::new(x + p, -z));
            }
            n -= 2;
            iter = 0;
        } else {
            // form shift
            let nu = n as usize;
            let mut x = h[nu][nu];
            let mut y = h[nu - 1][nu - 1];
            let mut w = h[nu][nu - 1] * h[nu - 1][nu];

            if iter == 10 || iter == 20 {
                // exceptional shift
                exshift += x;
                for i in low as usize..=nu {
                    h[i][i] -= x;
                }
                let s = h[nu][nu - 1].abs() + h[nu - 1][nu - 2].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }

            iter += 1;
            total_iter += 1;
            if total_iter > max_total {
                return Err(Error::EigenNoConvergence {
                    iterations: total_iter,
                });
            }

            // look for two consecutive small subdiagonals
            let mut mm = n - 2;
            let (mut p, mut q, mut r);
            loop {
                let mu = mm as usize;
                let z = h[mu][mu];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / h[mu + 1][mu] + h[mu][mu + 1];
                q = h[mu + 1][mu + 1] - z - rr - ss;
                r = h[mu + 2][mu + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if mm == l {
                    break;
                }
                let hmm = h[mu][mu - 1].abs() * (q.abs() + r.abs());
                let hnn = p.abs() * (h[mu - 1][mu - 1].abs() + z.abs() + h[mu + 1][mu + 1].abs());
                if hmm < eps * hnn {
                    break;
                }
                mm -= 1;
            }

            for i in (mm + 2)..=n {
                h[i as usize][(i - 2) as usize] = 0.0;
                if i > mm + 2 {
                    h[i as usize][(i - 3) as usize] = 0.0;
                }
            }

            // double QR sweep on rows l..n
            for k in mm..n {
                let ku = k as usize;
                let notlast = k != n - 1;
                if k != mm {
                    p = h[ku][ku - 1];
                    q = h[ku + 1][ku - 1];
                    r = if notlast { h[ku + 2][ku - 1] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                let s = (p * p + q * q + r * r).sqrt();
                let s = if p < 0.0 { -s } else { s };
                if s == 0.0 {
                    continue;
                }
                if k != mm {
                    h[ku][ku - 1] = -s * x;
                } else if l != mm {
                    h[ku][ku - 1] = -h[ku][ku - 1];
                }
                p += s;
                x = p / s;
                y = q / s;
                let zz = r / s;
                q /= p;
                r /= p;

                // row modification
                for j in ku..nn {
                    let mut pp = h[ku][j] + q * h[ku + 1][j];
                    if notlast {
                        pp += r * h[ku + 2][j];
                        h[ku + 2][j] -= pp * zz;
                    }
                    h[ku][j] -= pp * x;
                    h[ku + 1][j] -= pp * y;
                }
                // column modification
                let upper = n.min(k + 3) as usize;
                for i in 0..=upper {
                    let mut pp = x * h[i][ku] + y * h[i][ku + 1];
                    if notlast {
                        pp += zz * h[i][ku + 2];
                        h[i][ku + 2] -= pp * r;
                    }
                    h[i][ku] -= pp;
                    h[i][ku + 1] -= pp * q;
                }
            }
        }
    }

    Ok((values, total_iter))
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.
/// `diag` has length n, `off` length n-1. Returns ascending order.
pub fn sym_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    assert!(off.len() + 1 >= n, "off-diagonal too short");
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&off[..n - 1]);
    let mut total_iter = 0usize;
    for l in 0..n {
        let mut iter = 0;
        loop {
            // find a negligible off-diagonal element
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            total_iter += 1;
            if iter > 50 {
                return Err(Error::EigenNoConvergence {
                    iterations: total_iter,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let sgn = if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sgn);
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}
