//! Exact Laurent polynomials in one indeterminate with big-integer coefficients.
//!
//! Storage is dense: a lowest exponent plus a coefficient vector. The vector
//! never starts or ends with a zero, so structural equality is polynomial
//! equality and the zero polynomial is the empty vector.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Extreme exponents of a nonzero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degrees {
    pub max: i64,
    pub min: i64,
    pub span: i64,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * X^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self { low: e, coeffs: vec![c.into()] };
        p.normalize();
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` terms; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc += &Self::monomial(c, e);
        }
        acc
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn loop_value() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        if self.is_zero() || e < self.low {
            return BigInt::zero();
        }
        self.coeffs.get((e - self.low) as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn degrees(&self) -> Result<Degrees> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let min = self.low;
        let max = self.low + self.coeffs.len() as i64 - 1;
        Ok(Degrees { max, min, span: max - min })
    }

    /// Multiplies by `c * X^e`.
    pub fn scale(&self, c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + e, coeffs: self.coeffs.iter().map(|x| x * &c).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `X -> X^-1`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let high = self.low + self.coeffs.len() as i64 - 1;
        Self { low: -high, coeffs: self.coeffs.iter().rev().cloned().collect() }
    }

    /// Rewrites a polynomial in `A` as one in `t` under `A = t^(-1/4)`, so the
    /// term `c A^e` becomes `c t^(-e/4)`.
    pub fn substitute_quarter(&self) -> Result<Self> {
        if let Some((e, _)) = self.terms().find(|(e, _)| e.rem_euclid(4) != 0) {
            return Err(Error::NonIntegerExponent { exponent: e });
        }
        Ok(Self::from_terms(self.terms().map(|(e, c)| (-e / 4, c.clone()))))
    }

    /// Evaluates at an integer point. Negative exponents require `x = ±1`.
    pub fn eval_unit(&self, x: i64) -> Option<BigInt> {
        if x != 1 && x != -1 {
            return None;
        }
        let mut acc = BigInt::zero();
        for (e, c) in self.terms() {
            if x == -1 && e.rem_euclid(2) == 1 {
                acc -= c;
            } else {
                acc += c;
            }
        }
        Some(acc)
    }

    /// Coefficients keyed by exponent, the JSON encoding used by reports.
    pub fn to_map(&self) -> BTreeMap<String, String> {
        self.terms().map(|(e, c)| (e.to_string(), c.to_string())).collect()
    }

    /// Renders with the given variable name: decreasing exponents, `c*X^e`
    /// terms, unit coefficients elided, constant term bare.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let mag = c.abs();
            if e == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(var);
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out
    }

    /// Parses the [`render`](Self::render) format back.
    pub fn parse(text: &str, var: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        if s.is_empty() {
            return Err(bad(0, "empty polynomial"));
        }
        if s == "0" {
            return Ok(Self::zero());
        }
        let bytes = s.as_bytes();
        let mut i = 0;
        let mut acc = Self::zero();
        while i < bytes.len() {
            let mut sign = BigInt::one();
            match bytes[i] {
                b'+' => i += 1,
                b'-' => {
                    sign = -sign;
                    i += 1;
                }
                _ if i != 0 => return Err(bad(i, "expected '+' or '-'")),
                _ => {}
            }
            let digits = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let has_coeff = i > digits;
            let coeff = if has_coeff {
                s[digits..i].parse::<BigInt>().map_err(|_| bad(digits, "bad coefficient"))?
            } else {
                BigInt::one()
            };
            if has_coeff && bytes.get(i) == Some(&b'*') {
                i += 1;
                if !s[i..].starts_with(var) {
                    return Err(bad(i, "expected variable after '*'"));
                }
            }
            if !s[i..].starts_with(var) {
                if !has_coeff {
                    return Err(bad(i, "expected term"));
                }
                acc += &Self::monomial(sign * coeff, 0);
                continue;
            }
            i += var.len();
            if bytes.get(i) != Some(&b'^') {
                return Err(bad(i, "expected '^'"));
            }
            i += 1;
            let exp = i;
            if bytes.get(i) == Some(&b'-') {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let e: i64 = s[exp..i].parse().map_err(|_| bad(exp, "bad exponent"))?;
            acc += &Self::monomial(sign * coeff, e);
        }
        Ok(acc)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("A"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render("A"))
    }
}

impl<'a> AddAssign<&'a LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &'a LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let low = self.low.min(rhs.low);
        let high = (self.low + self.coeffs.len() as i64).max(rhs.low + rhs.coeffs.len() as i64);
        if low < self.low {
            let pad = (self.low - low) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(BigInt::zero(), pad));
            self.low = low;
        }
        self.coeffs.resize((high - low) as usize, BigInt::zero());
        let off = (rhs.low - self.low) as usize;
        for (i, c) in rhs.coeffs.iter().enumerate() {
            self.coeffs[off + i] += c;
        }
        self.normalize();
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut out = LaurentPoly { low: self.low + rhs.low, coeffs };
        out.normalize();
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // Small coefficients go out as JSON numbers, anything wider as strings.
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.terms().count()))?;
        for (e, c) in self.terms() {
            match c.to_i64() {
                Some(v) => map.serialize_entry(&e.to_string(), &v)?,
                None => map.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}
