//! The coefficient field ℚ(n): rational functions in the dimension symbol.

use super::poly::Poly;
use crate::error::EngineError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A reduced fraction of integer polynomials in `n`. Invariants: the
/// denominator is nonzero with positive leading coefficient, numerator
/// and denominator are coprime, and their integer contents are coprime.
/// Equality of canonical representatives is the engine-wide zero test.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduced canonical representative of p/q. Errors on q = 0.
    pub fn normalize(p: Poly, q: Poly) -> Result<RatFunc, EngineError> {
        if q.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        if p.is_zero() {
            return Ok(RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = p.gcd(&q);
        let mut num = p.exact_div(&g);
        let mut den = q.exact_div(&g);
        // clear the integer content jointly, keep the denominator positive
        let cn = num.content();
        let cd = den.content();
        let c = cn.gcd_abs(&cd);
        num = num.exact_div(&Poly::constant(c.clone()));
        den = den.exact_div(&Poly::constant(c));
        if den.leading_coeff().is_negative() {
            num = -&num;
            den = -&den;
        }
        Ok(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(k: i64) -> Self {
        RatFunc {
            num: Poly::constant(k),
            den: Poly::one(),
        }
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        RatFunc::normalize(Poly::constant(p), Poly::constant(q)).expect("nonzero denominator")
    }

    /// The symbol `n` itself.
    pub fn n() -> Self {
        RatFunc {
            num: Poly::n(),
            den: Poly::one(),
        }
    }

    /// Build from a numerator/denominator pair given by ascending
    /// integer coefficients, e.g. `of(&[-2, 1], &[0, 2])` = (n-2)/(2n).
    pub fn of(num: &[i64], den: &[i64]) -> Self {
        RatFunc::normalize(Poly::from_i64s(num), Poly::from_i64s(den)).expect("nonzero denominator")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &RatFunc::one()
    }

    pub fn inv(&self) -> Result<RatFunc, EngineError> {
        RatFunc::normalize(self.den.clone(), self.num.clone())
    }

    /// Exact evaluation at an integer dimension; errors if the
    /// denominator vanishes there.
    pub fn eval(&self, nval: i64) -> Result<BigRational, EngineError> {
        let x = BigInt::from(nval);
        let d = self.den.eval_int(&x);
        if d.is_zero() {
            return Err(EngineError::PoleAtDimension(nval));
        }
        Ok(BigRational::new(self.num.eval_int(&x), d))
    }

    /// Substitute a fixed integer dimension, staying inside ℚ(n) as a
    /// constant. Used to re-run whole pipelines at fixed n.
    pub fn at_dimension(&self, nval: i64) -> Result<RatFunc, EngineError> {
        let v = self.eval(nval)?;
        Ok(RatFunc::normalize(
            Poly::from_coeffs(vec![v.numer().clone()]),
            Poly::from_coeffs(vec![v.denom().clone()]),
        )?)
    }
}

trait GcdAbs {
    fn gcd_abs(&self, other: &BigInt) -> BigInt;
}

impl GcdAbs for BigInt {
    fn gcd_abs(&self, other: &BigInt) -> BigInt {
        use num_integer::Integer;
        self.abs().gcd(&other.abs())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::normalize(num, den).expect("denominator product nonzero")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("denominator product nonzero")
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero in Q(n)");
        RatFunc::normalize(&self.num * &rhs.den, &self.den * &rhs.num).expect("checked nonzero")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            return write!(f, "{}", self.num);
        }
        let num_terms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        let den_terms = self.den.coeffs().iter().filter(|c| !c.is_zero()).count();
        if num_terms > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        if den_terms > 1 {
            write!(f, "({})", self.den)
        } else {
            write!(f, "{}", self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_ratfunc(&s).map_err(serde::de::Error::custom)
    }
}

/// Parse the display format back; only needed for JSON round-trips.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc, String> {
    let s = s.trim();
    let (num_s, den_s) = match split_fraction(s) {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num = parse_poly(num_s)?;
    let den = parse_poly(den_s)?;
    RatFunc::normalize(num, den).map_err(|e| e.to_string())
}

fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn parse_poly(s: &str) -> Result<Poly, String> {
    let mut s = s.trim();
    if s.starts_with('(') && s.ends_with(')') {
        s = &s[1..s.len() - 1];
    }
    let normalized = s.replace(" - ", " +-").replace("- ", "-");
    let mut acc = Poly::zero();
    for raw in normalized.split('+') {
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        acc = &acc + &parse_monomial(t)?;
    }
    Ok(acc)
}

fn parse_monomial(t: &str) -> Result<Poly, String> {
    let (sign, t) = if let Some(rest) = t.strip_prefix('-') {
        (-1i64, rest.trim())
    } else {
        (1i64, t)
    };
    let (coeff_s, pow) = if let Some(idx) = t.find('n') {
        let c = t[..idx].trim().trim_end_matches('*').trim();
        let rest = &t[idx + 1..];
        let p = if let Some(ps) = rest.strip_prefix('^') {
            ps.trim().parse::<usize>().map_err(|e| e.to_string())?
        } else {
            1
        };
        (c, p)
    } else {
        (t, 0)
    };
    let coeff: BigInt = if coeff_s.is_empty() {
        BigInt::from(1)
    } else {
        coeff_s.parse().map_err(|_| format!("bad coefficient {coeff_s:?}"))?
    };
    let mut coeffs = vec![BigInt::zero(); pow + 1];
    coeffs[pow] = coeff * BigInt::from(sign);
    Ok(Poly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        // (n-2)/(2n) stays canonical
        let a = RatFunc::of(&[-2, 1], &[0, 2]);
        assert_eq!(a.to_string(), "(n - 2)/(2*n)");
        // zero numerator collapses
        let z = RatFunc::of(&[0], &[1, 1]);
        assert_eq!(z, RatFunc::zero());
        // (2n^2+2n)/(2n) = n+1
        let c = RatFunc::of(&[0, 2, 2], &[0, 2]);
        assert_eq!(c.to_string(), "n + 1");
    }

    #[test]
    fn scale_invariance() {
        let a = RatFunc::of(&[-2, 1], &[0, 2]);
        let b = RatFunc::of(&[6, -3], &[0, -6]);
        assert_eq!(a, b);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFunc::normalize(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn display_roundtrip() {
        for r in [
            RatFunc::of(&[-2, 1], &[0, 2]),
            RatFunc::of(&[-1], &[-3, 3]),
            RatFunc::of(&[2], &[-3, 0, 3]),
            RatFunc::from_int(7),
            RatFunc::zero(),
            RatFunc::of(&[0, 0, 5], &[1]),
        ] {
            let parsed = parse_ratfunc(&r.to_string()).unwrap();
            assert_eq!(parsed, r, "roundtrip of {}", r);
        }
    }
}
