//! Laurent polynomials in `q = y^(1/2)` and formal products of quantum integers.
//!
//! Exponents are always stored as powers of `q`; the corresponding power of `y`
//! is `exp / 2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact Laurent polynomial in `q` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    /// Builds a polynomial from `(exp, coeff)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `coeff(k) == coeff(-k)` for every `k`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, v)| (e + by, v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; fails with `NotPolynomial` on a nonzero remainder.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly> {
        let (dlo, dhi) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::NotPolynomial),
        };
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        while let Some(rhi) = rem.max_exp() {
            let rlo = rem.min_exp().unwrap();
            if rhi - rlo < dhi - dlo {
                return Err(Error::NotPolynomial);
            }
            let (q, r) = rem.coeff(rhi).div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::NotPolynomial);
            }
            let e = rhi - dhi;
            rem = &rem - &divisor.shift(e).scale(&q);
            quot.add_term(e, q);
        }
        Ok(quot)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match e {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a QPoly);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.coeffs.len()))?;
                for (e, c) in self.0.terms() {
                    seq.serialize_element(&serde_json::json!({
                        "exp": e,
                        "coeff": c.to_string(),
                    }))?;
                }
                seq.end()
            }
        }
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("variable", "q")?;
        m.serialize_entry("meaning", "q = y^(1/2)")?;
        m.serialize_entry("coefficients", &Coeffs(self))?;
        m.end()
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

/// The quantum integer `[a] = q^{-(a-1)} + q^{-(a-3)} + ... + q^{a-1}`.
pub fn qint(a: i64) -> Result<QPoly> {
    if a <= 0 {
        return Err(Error::NonPositiveQuantumInteger(a));
    }
    Ok(QPoly::from_terms(
        (0..a).map(|k| (-(a - 1) + 2 * k, BigInt::one())),
    ))
}

/// Value at `y = 1`: the sum of the coefficients.
pub fn poly_eval_y1(p: &QPoly) -> BigInt {
    p.terms().map(|(_, c)| c).sum()
}

/// Value at `y = -1`, obtained by substituting `q = i`.
pub fn poly_limit_yneg1(p: &QPoly) -> Result<BigRational> {
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (e, c) in p.terms() {
        match e.rem_euclid(4) {
            0 => re += c,
            1 => im += c,
            2 => re -= c,
            _ => im -= c,
        }
    }
    if !im.is_zero() {
        return Err(Error::NonRealAtI);
    }
    Ok(BigRational::from_integer(re))
}

/// `scalar * q^monomial_exp * prod [numerator] / prod [denominator]`.
///
/// Entries are kept sorted; `canonical` cancels common entries and drops ones,
/// after which structural equality coincides with equality of rational functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QProduct {
    pub scalar: BigRational,
    pub monomial_exp: i64,
    pub numerator: Vec<u64>,
    pub denominator: Vec<u64>,
}

impl QProduct {
    pub fn one() -> Self {
        Self {
            scalar: BigRational::one(),
            monomial_exp: 0,
            numerator: vec![],
            denominator: vec![],
        }
    }

    pub fn new(numerator: Vec<u64>, denominator: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = numerator.iter().chain(&denominator).find(|&&a| a == 0) {
            return Err(Error::NonPositiveQuantumInteger(bad as i64));
        }
        Ok(Self {
            numerator,
            denominator,
            ..Self::one()
        }
        .canonical())
    }

    pub fn canonical(mut self) -> Self {
        self.numerator.retain(|&a| a != 1);
        self.denominator.retain(|&a| a != 1);
        self.numerator.sort_unstable();
        self.denominator.sort_unstable();
        let (mut i, mut j) = (0, 0);
        let (mut num, mut den) = (Vec::new(), Vec::new());
        while i < self.numerator.len() || j < self.denominator.len() {
            match (self.numerator.get(i), self.denominator.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    num.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    den.push(*b);
                    j += 1;
                }
                (Some(a), None) => {
                    num.push(*a);
                    i += 1;
                }
                (None, Some(b)) => {
                    den.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        self.numerator = num;
        self.denominator = den;
        self
    }

    pub fn mul(&self, other: &QProduct) -> QProduct {
        let mut numerator = self.numerator.clone();
        numerator.extend_from_slice(&other.numerator);
        let mut denominator = self.denominator.clone();
        denominator.extend_from_slice(&other.denominator);
        QProduct {
            scalar: &self.scalar * &other.scalar,
            monomial_exp: self.monomial_exp + other.monomial_exp,
            numerator,
            denominator,
        }
        .canonical()
    }
}

impl fmt::Display for QProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.scalar)?;
        if self.monomial_exp != 0 {
            write!(f, "*q^{}", self.monomial_exp)?;
        }
        for a in &self.numerator {
            write!(f, "*[{a}]")?;
        }
        for a in &self.denominator {
            write!(f, "/[{a}]")?;
        }
        Ok(())
    }
}

/// Value at `y = 1`, where `[a]` becomes `a`.
pub fn eval_y1(p: &QProduct) -> BigRational {
    let num: BigInt = p.numerator.iter().map(|&a| BigInt::from(a)).product();
    let den: BigInt = p.denominator.iter().map(|&a| BigInt::from(a)).product();
    &p.scalar * BigRational::new(num, den)
}

fn is_even(a: u64) -> bool {
    a.is_multiple_of(2)
}

/// Leading behaviour of `[a]` near `y = -1`, with the common factor
/// `y^(1/2) + y^(-1/2)` of even entries stripped.
fn yneg1_factor(a: u64) -> BigRational {
    if is_even(a) {
        let sign = if (a / 2 - 1).is_multiple_of(2) { 1 } else { -1 };
        BigRational::from_integer(BigInt::from(sign * (a / 2) as i64))
    } else {
        let sign = if ((a - 1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        };
        BigRational::from_integer(BigInt::from(sign))
    }
}

/// Limit as `y -> -1`.
pub fn limit_yneg1(p: &QProduct) -> Result<BigRational> {
    let even_num = p.numerator.iter().filter(|&&a| is_even(a)).count();
    let even_den = p.denominator.iter().filter(|&&a| is_even(a)).count();
    if even_den > even_num {
        return Err(Error::PoleAtMinusOne);
    }
    if even_num > even_den || p.scalar.is_zero() {
        return Ok(BigRational::zero());
    }
    let mono = poly_limit_yneg1(&QPoly::monomial(p.monomial_exp, BigInt::one()))?;
    let mut v = &p.scalar * mono;
    for &a in &p.numerator {
        v *= yneg1_factor(a);
    }
    for &a in &p.denominator {
        v /= yneg1_factor(a);
    }
    Ok(v)
}

/// Expands the product into a Laurent polynomial.
pub fn qproduct_to_poly(p: &QProduct) -> Result<QPoly> {
    let mut acc = QPoly::monomial(p.monomial_exp, p.scalar.numer().clone());
    for &a in &p.numerator {
        acc = &acc * &qint(a as i64)?;
    }
    for &a in &p.denominator {
        acc = acc.div_exact(&qint(a as i64)?)?;
    }
    acc.div_exact(&QPoly::constant(p.scalar.denom().clone()))
}
