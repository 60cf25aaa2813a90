//! Dense univariate polynomials over the integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modpoly::PrimeFieldPoly;
use crate::prime::Prime;

/// A nonnegative integer or `Infinity`, the value of `v_p(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Finite(u64),
    Infinity,
}

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinity => None,
        }
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a + b),
            _ => ExtNat::Infinity,
        }
    }
}

impl PartialEq<u64> for ExtNat {
    fn eq(&self, other: &u64) -> bool {
        *self == ExtNat::Finite(*other)
    }
}

impl PartialOrd<u64> for ExtNat {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.cmp(&ExtNat::Finite(*other)))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinity => f.write_str("inf"),
        }
    }
}

/// `v_p(c)` for an integer, by repeated exact division.
pub fn int_valuation(c: &BigInt, p: &Prime) -> ExtNat {
    if c.is_zero() {
        return ExtNat::Infinity;
    }
    let p = BigInt::from(p.value().clone());
    let mut n = c.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return ExtNat::Finite(k);
        }
        n = q;
        k += 1;
    }
}

/// Polynomial with arbitrary precision integer coefficients.
///
/// `coeffs[k]` is the coefficient of `x^k`; the highest stored coefficient is
/// never zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BigIntPoly {
    coeffs: Vec<BigInt>,
}

impl BigIntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut poly = BigIntPoly { coeffs };
        poly.trim();
        poly
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        BigIntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Division by a monic polynomial: returns `(q, r)` with
    /// `self = divisor * q + r` and `deg r < deg divisor`.
    pub fn divmod_monic(&self, divisor: &BigIntPoly) -> Result<(BigIntPoly, BigIntPoly)> {
        if !divisor.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((BigIntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[k + db]);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs[..db].iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((BigIntPoly::new(quot), BigIntPoly::new(rem)))
    }

    /// `min_k v_p(coeff_k)`, `Infinity` for the zero polynomial.
    pub fn valuation(&self, p: &Prime) -> ExtNat {
        self.coeffs
            .iter()
            .map(|c| int_valuation(c, p))
            .min()
            .unwrap_or(ExtNat::Infinity)
    }

    pub fn reduce_mod_p(&self, p: &Prime) -> PrimeFieldPoly {
        let modulus = BigInt::from(p.value().clone());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.mod_floor(&modulus)
                    .to_biguint()
                    .expect("mod_floor by a positive modulus is nonnegative")
            })
            .collect();
        PrimeFieldPoly::new(p.clone(), coeffs)
    }

    /// Exact division by `p^k`.
    pub fn scaled_by_p_power(&self, p: &Prime, k: u64) -> Result<BigIntPoly> {
        let pk = BigInt::from(p.value().pow(k as u32));
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(&pk);
            if !r.is_zero() {
                return Err(Error::NotDivisible {
                    poly: self.to_string(),
                    p: p.to_string(),
                    k,
                });
            }
            out.push(q);
        }
        Ok(BigIntPoly::new(out))
    }

    /// Integer lift of an `F_p` polynomial with coefficients in `[0, p)`.
    pub fn lift(a: &PrimeFieldPoly) -> Self {
        Self::new(
            a.coeffs()
                .iter()
                .map(|c| BigInt::from_biguint(Sign::Plus, c.clone()))
                .collect(),
        )
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, b: &BigIntPoly) -> BigIntPoly {
        let db = b.coeffs.len() - 1;
        let lb = b.leading().expect("nonzero divisor").clone();
        let mut r = self.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let lr = r.pop().expect("nonempty");
            let shift = r.len() - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (j, bj) in b.coeffs[..db].iter().enumerate() {
                r[shift + j] -= &lr * bj;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        BigIntPoly::new(r)
    }

    /// Primitive gcd over `Z[x]`, which is also the gcd over `Q[x]` up to a
    /// unit.
    pub fn gcd_primitive(&self, other: &BigIntPoly) -> BigIntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// `gcd(F, F') = 1` over the rationals.
    pub fn is_squarefree_over_q(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd_primitive(&self.derivative()).is_constant(),
        }
    }

    pub fn mul(&self, other: &BigIntPoly) -> BigIntPoly {
        if self.is_zero() || other.is_zero() {
            return BigIntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BigIntPoly::new(out)
    }
}

impl Add for &BigIntPoly {
    type Output = BigIntPoly;

    fn add(self, rhs: &BigIntPoly) -> BigIntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BigIntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &BigIntPoly {
    type Output = BigIntPoly;

    fn sub(self, rhs: &BigIntPoly) -> BigIntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BigIntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &BigIntPoly {
    type Output = BigIntPoly;

    fn mul(self, rhs: &BigIntPoly) -> BigIntPoly {
        BigIntPoly::mul(self, rhs)
    }
}

impl Neg for &BigIntPoly {
    type Output = BigIntPoly;

    fn neg(self) -> BigIntPoly {
        BigIntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BigIntPoly {
            type Output = BigIntPoly;
            fn $m(self, rhs: BigIntPoly) -> BigIntPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub);

impl From<Vec<i64>> for BigIntPoly {
    fn from(coeffs: Vec<i64>) -> Self {
        Self::from_i64s(&coeffs)
    }
}

/// Writes terms from the highest degree down, e.g. `x^7 + 3x^5 - 28x - 14`.
pub(crate) fn write_terms<I>(f: &mut fmt::Formatter<'_>, var: &str, terms: I) -> fmt::Result
where
    I: Iterator<Item = (usize, (bool, String))>,
{
    let mut first = true;
    for (k, (negative, magnitude)) in terms {
        let sign = match (first, negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        first = false;
        let coeff = if magnitude == "1" && k > 0 {
            ""
        } else {
            magnitude.as_str()
        };
        match k {
            0 => write!(f, "{sign}{magnitude}")?,
            1 => write!(f, "{sign}{coeff}{var}")?,
            _ => write!(f, "{sign}{coeff}{var}^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for BigIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, (c.is_negative(), c.magnitude().to_string())));
        write_terms(f, "x", terms)
    }
}

impl fmt::Debug for BigIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigIntPoly({self})")
    }
}
