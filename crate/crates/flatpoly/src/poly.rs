//! Multivariate polynomials over ℚ with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial in `nvars` variables; keys are exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub nvars: usize,
    terms: BTreeMap<Vec<u8>, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, BigRational::one())
    }

    pub fn int(nvars: usize, k: i64) -> Self {
        Poly::constant(nvars, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exp = vec![0u8; nvars];
        exp[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(exp, BigRational::one());
        p
    }

    pub fn monomial(nvars: usize, exp: Vec<u8>, c: BigRational) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    pub fn add_term(&mut self, exp: Vec<u8>, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(entry) => {
                *entry += c;
                if entry.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, &(ca * cb));
            }
        }
        out
    }

    /// Partial derivative with respect to variable i.
    pub fn diff(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[i] -= 1;
            let k = BigRational::from_integer(BigInt::from(e[i] as i64));
            out.add_term(exp, &(c * k));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
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
            let mag = c.abs();
            let has_vars = e.iter().any(|&x| x > 0);
            if !mag.is_one() || !has_vars {
                write!(f, "{}", mag)?;
            }
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "x{}", i)?,
                    _ => write!(f, "x{}^{}", i, p)?,
                }
            }
        }
        Ok(())
    }
}

/// All exponent vectors in `nvars` variables of total degree exactly `d`,
/// in lexicographic order.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Vec<u8>> {
    let mut out = vec![];
    let mut cur = vec![0u8; nvars];
    fn rec(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, pos: usize, left: usize) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u8;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for k in 0..=left {
            cur[pos] = k as u8;
            rec(out, cur, pos + 1, left - k);
        }
        cur[pos] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, d);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diff_product_rule() {
        let n = 3;
        let x = Poly::var(n, 0);
        let y = Poly::var(n, 1);
        let p = x.mul(&y).add(&x.mul(&x));
        let d = p.diff(0);
        let expect = y.add(&x.scale(&BigRational::from_integer(BigInt::from(2))));
        assert_eq!(d, expect);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
    }
}
