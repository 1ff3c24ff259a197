//! Dense integer-coefficient polynomials in the dimension symbol `n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in `n` with arbitrary-precision integer coefficients,
/// stored densely by ascending degree. The zero polynomial has an
/// empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Poly::from_coeffs(vec![c.into()])
    }

    /// The monomial `n`.
    pub fn n() -> Self {
        Poly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    /// Build from ascending-degree coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// gcd of all coefficients, with the sign of the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading_coeff().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Divide out the content; result has positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        self.exact_div_scalar(&c)
    }

    fn exact_div_scalar(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(c);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact polynomial division; panics if the remainder is nonzero.
    /// Only used where divisibility is guaranteed (gcd cofactors,
    /// fraction-free elimination).
    pub fn exact_div(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Poly::zero();
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree().unwrap();
        let nd = self.degree().unwrap();
        assert!(nd >= dd, "exact_div: degree too small");
        let mut q = vec![BigInt::zero(); nd - dd + 1];
        let lead = d.leading_coeff();
        for k in (0..q.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(&lead);
            assert!(r.is_zero(), "exact_div: inexact division");
            for j in 0..=dd {
                let t = &d.coeffs[j] * &qc;
                rem[k + j] -= t;
            }
            q[k] = qc;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "exact_div: nonzero remainder");
        Poly::from_coeffs(q)
    }

    /// Pseudo-remainder of self by d (both treated as primitive parts upstream).
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let mut r = self.clone();
        let dd = d.degree().unwrap();
        let lead = d.leading_coeff();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.leading_coeff();
            // r := lead * r - top * n^(rd-dd) * d
            let mut new = r.scale(&lead).coeffs;
            for j in 0..=dd {
                let t = &d.coeffs[j] * &top;
                new[rd - dd + j] -= t;
            }
            r = Poly::from_coeffs(new);
        }
        r
    }

    /// gcd via the primitive pseudo-remainder sequence; the result is
    /// primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b;
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// Evaluate at an integer value of `n`, exactly.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            out.push(a + b);
        }
        Poly::from_coeffs(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match deg {
                0 => write!(f, "{}", mag)?,
                1 => {
                    if unit {
                        write!(f, "n")?
                    } else {
                        write!(f, "{}*n", mag)?
                    }
                }
                _ => {
                    if unit {
                        write!(f, "n^{}", deg)?
                    } else {
                        write!(f, "{}*n^{}", mag, deg)?
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_cancels_common_factor() {
        // (n^2 - 1) and (n - 1)*(2n) share (n - 1)
        let a = Poly::from_i64s(&[-1, 0, 1]);
        let b = &Poly::from_i64s(&[-1, 1]) * &Poly::from_i64s(&[0, 2]);
        let g = a.gcd(&b);
        assert_eq!(g, Poly::from_i64s(&[-1, 1]));
    }

    #[test]
    fn exact_div_roundtrip() {
        let a = Poly::from_i64s(&[2, 5, 3]);
        let b = Poly::from_i64s(&[1, 1]);
        let q = a.exact_div(&b);
        assert_eq!(&q * &b, a);
    }

    #[test]
    fn display_readable() {
        let p = Poly::from_i64s(&[-2, 0, 1]);
        assert_eq!(p.to_string(), "n^2 - 2");
    }
}
