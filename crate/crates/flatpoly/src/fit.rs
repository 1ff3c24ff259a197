//! Fitting symmetry-operator coefficients from exact flat residuals.

use crate::kernel::{is_ckt, KernelError};
use crate::poly::{monomials_of_degree, Poly};
use crate::tensor::PolyTensor;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Result of an exact coefficient fit.
#[derive(Debug, Clone, PartialEq)]
pub enum FitOutcome {
    Unique(Vec<BigRational>),
    Underdetermined,
    Inconsistent,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// First-order operator Df = σ·∇f + A (div σ) f applied to f, with the
/// A-part returned separately so residuals stay linear in the unknowns.
fn order1_parts(sigma: &PolyTensor, f: &Poly) -> (Poly, Poly) {
    let n = sigma.nval;
    let mut main = Poly::zero(n);
    for a in 0..n {
        main = main.add(&sigma.get(&[a]).mul(&f.diff(a)));
    }
    let div = sigma.divergence(0);
    (main, div.get(&[]).mul(f))
}

fn order2_parts(sigma: &PolyTensor, f: &Poly) -> (Poly, Poly, Poly) {
    let n = sigma.nval;
    let mut main = Poly::zero(n);
    for a in 0..n {
        for b in 0..n {
            main = main.add(&sigma.get(&[a, b]).mul(&f.diff(a).diff(b)));
        }
    }
    let nu = sigma.divergence(0);
    let mut mid = Poly::zero(n);
    for b in 0..n {
        mid = mid.add(&nu.get(&[b]).mul(&f.diff(b)));
    }
    let dd = nu.divergence(0);
    (main, mid, dd.get(&[]).mul(f))
}

fn laplacian(f: &Poly) -> Poly {
    let n = f.nvars;
    let mut acc = Poly::zero(n);
    for i in 0..n {
        acc = acc.add(&f.diff(i).diff(i));
    }
    acc.neg()
}

/// Residual Δ(Df) − D̂(Δf) for the first-order ansatz with concrete
/// rational coefficients (a, b). σ must be a conformal Killing vector.
pub fn verify_order1(
    sigma: &PolyTensor,
    f: &Poly,
    a: &BigRational,
    b: &BigRational,
) -> Result<Poly, KernelError> {
    if !is_ckt(sigma) {
        return Err(KernelError::NotAConformalKilling);
    }
    let (m, s) = order1_parts(sigma, f);
    let df = m.add(&s.scale(a));
    let lf = laplacian(f);
    let (m2, s2) = order1_parts(sigma, &lf);
    let dhat_lf = m2.add(&s2.scale(b));
    Ok(laplacian(&df).sub(&dhat_lf))
}

/// Residual Δ(Df) − D̂(Δf) for the second-order ansatz with concrete
/// coefficients (a1, b1, a2, b2). σ must be a rank-2 conformal Killing
/// tensor.
pub fn verify_order2(
    sigma: &PolyTensor,
    f: &Poly,
    coeffs: &[BigRational; 4],
) -> Result<Poly, KernelError> {
    if !is_ckt(sigma) {
        return Err(KernelError::NotAConformalKilling);
    }
    let (main, mid, low) = order2_parts(sigma, f);
    let df = main.add(&mid.scale(&coeffs[0])).add(&low.scale(&coeffs[1]));
    let lf = laplacian(f);
    let (main2, mid2, low2) = order2_parts(sigma, &lf);
    let dhat_lf = main2
        .add(&mid2.scale(&coeffs[2]))
        .add(&low2.scale(&coeffs[3]));
    Ok(laplacian(&df).sub(&dhat_lf))
}

/// Deterministic pseudo-random f polynomials; the generator is a plain
/// xorshift with the given seed, so runs are reproducible.
pub fn random_polys(nval: usize, degree: usize, count: usize, seed: u64) -> Vec<Poly> {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut out = vec![];
    for _ in 0..count {
        let mut p = Poly::zero(nval);
        for d in 0..=degree {
            for e in monomials_of_degree(nval, d) {
                let r = next() % 7;
                if r < 2 {
                    let num = (next() % 9) as i64 - 4;
                    let den = (next() % 3 + 1) as i64;
                    if num != 0 {
                        p.add_term(e, &rat(num, den));
                    }
                }
            }
        }
        out.push(p);
    }
    out
}

/// Exact dense solve of rows·x = rhs with BigRational entries.
fn solve_exact(mut rows: Vec<Vec<BigRational>>, nunk: usize) -> FitOutcome {
    let nrows = rows.len();
    let mut pivots = vec![];
    let mut r = 0usize;
    for col in 0..nunk {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for j in col..=nunk {
            rows[r][j] = &rows[r][j] * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..=nunk {
                row[j] = &row[j] - &(&f * &pivot_row[j]);
            }
        }
        pivots.push(col);
        r += 1;
    }
    for row in &rows {
        if row[..nunk].iter().all(|c| c.is_zero()) && !row[nunk].is_zero() {
            return FitOutcome::Inconsistent;
        }
    }
    if pivots.len() < nunk {
        return FitOutcome::Underdetermined;
    }
    let mut sol = vec![BigRational::zero(); nunk];
    for (ri, &col) in pivots.iter().enumerate() {
        sol[col] = rows[ri][nunk].clone();
    }
    FitOutcome::Unique(sol)
}

fn f_samples(nval: usize, order: usize, seed: u64) -> Vec<Poly> {
    let deg = order + 3;
    let mut fs = vec![];
    for d in 1..=deg {
        for e in monomials_of_degree(nval, d) {
            fs.push(Poly::monomial(nval, e, BigRational::one()));
        }
    }
    fs.extend(random_polys(nval, deg, 5, seed));
    fs
}

/// Fit (A, B) of the first-order ansatz over the given CKV samples.
pub fn fit_order1(sigmas: &[PolyTensor], nval: usize, seed: u64) -> Result<FitOutcome, KernelError> {
    let fs = f_samples(nval, 1, seed);
    let mut rows: Vec<Vec<BigRational>> = vec![];
    let mut last: Option<FitOutcome> = None;
    for sigma in sigmas {
        if !is_ckt(sigma) {
            return Err(KernelError::NotAConformalKilling);
        }
        for f in &fs {
            let (m, s) = order1_parts(sigma, f);
            let lf = laplacian(f);
            let (m2, s2) = order1_parts(sigma, &lf);
            let const_part = laplacian(&m).sub(&m2);
            let a_part = laplacian(&s);
            let b_part = s2.neg();
            let mut exps: Vec<Vec<u8>> = vec![];
            for p in [&const_part, &a_part, &b_part] {
                for (e, _) in p.terms() {
                    if !exps.contains(e) {
                        exps.push(e.clone());
                    }
                }
            }
            for e in exps {
                let get = |p: &Poly| {
                    p.terms()
                        .find(|(ee, _)| *ee == &e)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(BigRational::zero)
                };
                rows.push(vec![get(&a_part), get(&b_part), -get(&const_part)]);
            }
        }
        let sol = solve_exact(rows.clone(), 2);
        if matches!(sol, FitOutcome::Unique(_)) && last.as_ref() == Some(&sol) {
            return Ok(sol);
        }
        last = Some(sol);
    }
    Ok(last.unwrap_or(FitOutcome::Underdetermined))
}

/// Fit (A1, B1, A2, B2) of the second-order ansatz over rank-2 CKT samples.
pub fn fit_order2(sigmas: &[PolyTensor], nval: usize, seed: u64) -> Result<FitOutcome, KernelError> {
    let fs = f_samples(nval, 2, seed);
    let mut rows: Vec<Vec<BigRational>> = vec![];
    let mut last: Option<FitOutcome> = None;
    for sigma in sigmas {
        if !is_ckt(sigma) {
            return Err(KernelError::NotAConformalKilling);
        }
        for f in &fs {
            let (main, mid, low) = order2_parts(sigma, f);
            let lf = laplacian(f);
            let (main2, mid2, low2) = order2_parts(sigma, &lf);
            let const_part = laplacian(&main).sub(&main2);
            let parts = [
                laplacian(&mid),
                laplacian(&low),
                mid2.neg(),
                low2.neg(),
            ];
            let mut exps: Vec<Vec<u8>> = vec![];
            for p in parts.iter().chain([&const_part]) {
                for (e, _) in p.terms() {
                    if !exps.contains(e) {
                        exps.push(e.clone());
                    }
                }
            }
            for e in exps {
                let get = |p: &Poly| {
                    p.terms()
                        .find(|(ee, _)| *ee == &e)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(BigRational::zero)
                };
                let mut row: Vec<BigRational> = parts.iter().map(get).collect();
                row.push(-get(&const_part));
                rows.push(row);
            }
        }
        let sol = solve_exact(rows.clone(), 4);
        if matches!(sol, FitOutcome::Unique(_)) && last.as_ref() == Some(&sol) {
            return Ok(sol);
        }
        last = Some(sol);
    }
    Ok(last.unwrap_or(FitOutcome::Underdetermined))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ckv_basis;

    #[test]
    fn order1_fit_matches_closed_form() {
        // A = (n-2)/2n, B = (n+2)/2n
        for n in [4usize, 6] {
            let basis = ckv_basis(n);
            let fit = fit_order1(&basis, n, 0xC0FFEE).unwrap();
            let nn = n as i64;
            match fit {
                FitOutcome::Unique(sol) => {
                    assert_eq!(sol[0], rat(nn - 2, 2 * nn), "A at n={}", n);
                    assert_eq!(sol[1], rat(nn + 2, 2 * nn), "B at n={}", n);
                }
                other => panic!("expected unique fit, got {:?}", other),
            }
        }
    }

    #[test]
    fn order1_identity_verifies_pointwise() {
        let n = 4;
        let dilation = &ckv_basis(n)[n + n * (n - 1) / 2];
        let f = random_polys(n, 4, 1, 42).pop().unwrap();
        let r = verify_order1(dilation, &f, &rat(1, 4), &rat(3, 4)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn zero_sigma_gives_zero_residual() {
        let n = 4;
        let z = PolyTensor::zeros(n, 1);
        let f = Poly::var(n, 0);
        let r = verify_order1(&z, &f, &rat(9, 7), &rat(1, 3)).unwrap();
        assert!(r.is_zero());
    }
}
