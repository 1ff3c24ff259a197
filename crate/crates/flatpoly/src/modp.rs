//! Dense exact linear algebra modulo the Mersenne prime 2^61 − 1, with
//! rational reconstruction back to ℚ.
//!
//! Mod-p elimination alone only bounds the rank from below, so callers
//! certify results: reconstructed kernel vectors are verified exactly
//! over ℚ, which sandwiches the nullity (nullity_p ≥ nullity_ℚ, and the
//! verified vectors show nullity_ℚ ≥ nullity_p).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub const P: u64 = (1u64 << 61) - 1;

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    let t = (a as u128) * (b as u128);
    let folded = (t & P as u128) + (t >> 61);
    let folded = (folded & P as u128) + (folded >> 61);
    let mut r = folded as u64;
    if r >= P {
        r -= P;
    }
    r
}

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn pow(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> u64 {
    assert!(a != 0, "inverse of zero mod p");
    pow(a, P - 2)
}

/// Reduce a rational number mod p; panics if the denominator is
/// divisible by p (cannot happen for the small denominators here).
pub fn from_rational(q: &BigRational) -> u64 {
    let p = BigInt::from(P);
    let num = ((q.numer() % &p) + &p) % &p;
    let den = ((q.denom() % &p) + &p) % &p;
    let num_u64: u64 = num.try_into().unwrap();
    let den_u64: u64 = den.try_into().unwrap();
    mul(num_u64, inv(den_u64))
}

/// Row-reduced echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>, ncols: usize) -> Vec<usize> {
    let mut pivots = vec![];
    let mut r = 0usize;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pinv = inv(rows[r][col]);
        for j in col..=ncols.min(rows[r].len() - 1) {
            rows[r][j] = mul(rows[r][j], pinv);
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row.is_empty() {
                continue;
            }
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..row.len() {
                row[j] = sub(row[j], mul(f, pivot_row[j]));
            }
        }
        rows[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Nullspace basis of the homogeneous system rows·x = 0 (rows have
/// exactly `ncols` entries). One basis vector per free column, with a
/// 1 in the free position.
pub fn nullspace(mut rows: Vec<Vec<u64>>, ncols: usize) -> Vec<Vec<u64>> {
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let pivots = rref(&mut rows, ncols);
    let mut basis = vec![];
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (ri, &pc) in pivots.iter().enumerate() {
            let c = rows[ri][free];
            if c != 0 {
                v[pc] = sub(0, c);
            }
        }
        basis.push(v);
    }
    basis
}

/// Rational reconstruction of a mod p: the unique x/y with
/// |x|, y ≤ sqrt(p/2), if it exists.
pub fn reconstruct(a: u64) -> Option<BigRational> {
    if a == 0 {
        return Some(BigRational::zero());
    }
    let bound = BigInt::from(1u64 << 30); // sqrt(P/2) ≈ 2^30
    let mut r0 = BigInt::from(P);
    let mut r1 = BigInt::from(a);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::from(1);
    while r1 >= bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let den = t1.abs();
    let num = if t1.is_negative() { -r1 } else { r1 };
    Some(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_inverse() {
        for a in [1u64, 2, 7, 123456789, P - 1] {
            assert_eq!(mul(a, inv(a)), 1);
        }
    }

    #[test]
    fn reconstruct_small_fractions() {
        for (n, d) in [(1i64, 3i64), (-2, 7), (5, 1), (22, 21)] {
            let q = BigRational::new(n.into(), d.into());
            let a = from_rational(&q);
            assert_eq!(reconstruct(a).unwrap(), q);
        }
    }

    #[test]
    fn nullspace_of_singular_matrix() {
        // x + y = 0 twice
        let rows = vec![vec![1, 1], vec![1, 1]];
        let ns = nullspace(rows, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], P - 1);
        assert_eq!(ns[0][1], 1);
    }
}
