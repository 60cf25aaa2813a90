//! Polynomials over `F_p` and over `F_q = F_p[x]/(φ̄)`.
//!
//! Residual polynomials live in `F_q[Y]`; only their irreducibility is ever
//! needed, so `F_q[Y]` has arithmetic and Rabin's test but no factorization.

mod factor;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{self, ExtField, Field, PrimeField};
use crate::intpoly::write_terms;
use crate::prime::Prime;

pub use factor::fp_factor;

/// Polynomial over `F_p` in canonical form: coefficients in `[0, p)`,
/// constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeFieldPoly {
    p: Prime,
    coeffs: Vec<BigUint>,
}

impl PrimeFieldPoly {
    /// Reduces every coefficient mod `p`.
    pub fn new(p: Prime, coeffs: Vec<BigUint>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c % p.value()).collect();
        Self::from_reduced(p, coeffs)
    }

    pub fn from_u64s(p: &Prime, coeffs: &[u64]) -> Self {
        Self::new(
            p.clone(),
            coeffs.iter().map(|&c| BigUint::from(c)).collect(),
        )
    }

    fn from_reduced(p: Prime, coeffs: Vec<BigUint>) -> Self {
        let coeffs = field::trim(
            &PrimeField {
                p: p.value().clone(),
            },
            coeffs,
        );
        PrimeFieldPoly { p, coeffs }
    }

    pub fn zero(p: &Prime) -> Self {
        PrimeFieldPoly {
            p: p.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: &Prime) -> Self {
        PrimeFieldPoly {
            p: p.clone(),
            coeffs: vec![BigUint::one()],
        }
    }

    pub fn x(p: &Prime) -> Self {
        Self::from_u64s(p, &[0, 1])
    }

    pub fn prime(&self) -> &Prime {
        &self.p
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    fn field(&self) -> PrimeField {
        PrimeField {
            p: self.p.value().clone(),
        }
    }

    fn check(&self, other: &PrimeFieldPoly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(
                self.p.to_string(),
                other.p.to_string(),
            ));
        }
        Ok(())
    }

    fn wrap(&self, coeffs: Vec<BigUint>) -> Self {
        PrimeFieldPoly {
            p: self.p.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &PrimeFieldPoly) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(field::add(&self.field(), &self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &PrimeFieldPoly) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(field::sub(&self.field(), &self.coeffs, &other.coeffs)))
    }

    pub fn mul(&self, other: &PrimeFieldPoly) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(field::mul(&self.field(), &self.coeffs, &other.coeffs)))
    }

    pub fn pow(&self, k: usize) -> Self {
        let k_field = self.field();
        let mut acc = vec![BigUint::one()];
        for _ in 0..k {
            acc = field::mul(&k_field, &acc, &self.coeffs);
        }
        self.wrap(acc)
    }

    /// Euclidean division by a nonzero polynomial.
    pub fn divrem(&self, other: &PrimeFieldPoly) -> Result<(Self, Self)> {
        self.check(other)?;
        if other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (q, r) = field::divrem(&self.field(), &self.coeffs, &other.coeffs);
        Ok((self.wrap(q), self.wrap(r)))
    }

    /// `true` iff `other` divides `self` (`other` nonzero).
    pub fn divisible_by(&self, other: &PrimeFieldPoly) -> Result<bool> {
        Ok(self.divrem(other)?.1.is_zero())
    }

    pub fn monic(&self) -> Self {
        self.wrap(field::monic(&self.field(), &self.coeffs))
    }

    pub fn derivative(&self) -> Self {
        let k = self.field();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &(BigUint::from(i) % &k.p)))
            .collect();
        self.wrap(field::trim(&k, coeffs))
    }

    /// Irreducibility over `F_p`; constants are rejected.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.degree().is_none_or(|d| d == 0) {
            return Err(Error::Constant(self.to_string()));
        }
        Ok(field::is_irreducible(&self.field(), &self.coeffs))
    }

    /// Canonical factor order: ascending degree, then lexicographic on the
    /// coefficient vector read from the constant term up.
    pub fn canonical_cmp(&self, other: &PrimeFieldPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, (false, c.to_string())));
        write_terms(f, var, terms)
    }
}

impl fmt::Display for PrimeFieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "x")
    }
}

impl fmt::Debug for PrimeFieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeFieldPoly({self} mod {})", self.p)
    }
}

/// Monic gcd over `F_p`; `gcd(0, 0) = 0`.
pub fn fp_gcd(a: &PrimeFieldPoly, b: &PrimeFieldPoly) -> Result<PrimeFieldPoly> {
    a.check(b)?;
    Ok(a.wrap(field::gcd(&a.field(), &a.coeffs, &b.coeffs)))
}

struct CtxInner {
    modulus: PrimeFieldPoly,
    field: ExtField,
}

/// The finite field `F_p[x]/(φ̄)` of order `p^m`.
///
/// The modulus is checked to be monic irreducible on construction, so every
/// context is a field.
#[derive(Clone)]
pub struct ExtFieldCtx(Arc<CtxInner>);

impl ExtFieldCtx {
    pub fn new(modulus: PrimeFieldPoly) -> Result<Self> {
        if !modulus.is_monic() || modulus.degree() == Some(0) || !modulus.is_irreducible()? {
            return Err(Error::InvalidFieldModulus(modulus.to_string()));
        }
        let field = ExtField {
            base: modulus.field(),
            modulus: modulus.coeffs.clone(),
        };
        Ok(ExtFieldCtx(Arc::new(CtxInner { modulus, field })))
    }

    /// `F_p` itself, presented as `F_p[x]/(x)`.
    pub fn prime_field(p: &Prime) -> Self {
        Self::new(PrimeFieldPoly::x(p)).expect("x is irreducible")
    }

    pub fn prime(&self) -> &Prime {
        &self.0.modulus.p
    }

    pub fn modulus(&self) -> &PrimeFieldPoly {
        &self.0.modulus
    }

    /// `m = deg φ̄`.
    pub fn degree(&self) -> usize {
        self.0.field.degree()
    }

    /// Number of elements `p^m`.
    pub fn order(&self) -> BigUint {
        self.0.field.order()
    }

    pub fn zero(&self) -> ExtFieldElem {
        self.elem_raw(Vec::new())
    }

    pub fn one(&self) -> ExtFieldElem {
        self.elem_raw(vec![BigUint::one()])
    }

    /// Class of a polynomial over `F_p` (the residue map).
    pub fn elem(&self, rep: &PrimeFieldPoly) -> Result<ExtFieldElem> {
        if rep.p != *self.prime() {
            return Err(Error::ModulusMismatch(
                rep.p.to_string(),
                self.prime().to_string(),
            ));
        }
        Ok(self.elem_raw(self.0.field.reduce(&rep.coeffs)))
    }

    /// Every element of the field, in no particular order. For tests and
    /// brute-force checks on small fields only.
    pub fn elements(&self) -> Vec<ExtFieldElem> {
        let p = self.prime().to_u64().expect("small field");
        let m = self.degree();
        let total = p.pow(m as u32);
        (0..total)
            .map(|mut n| {
                let digits = (0..m)
                    .map(|_| {
                        let d = n % p;
                        n /= p;
                        d
                    })
                    .collect::<Vec<_>>();
                self.elem(&PrimeFieldPoly::from_u64s(self.prime(), &digits))
                    .expect("same prime")
            })
            .collect()
    }

    fn elem_raw(&self, rep: Vec<BigUint>) -> ExtFieldElem {
        ExtFieldElem {
            ctx: self.clone(),
            rep,
        }
    }

    fn same(&self, other: &ExtFieldCtx) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.modulus == other.0.modulus
    }
}

impl PartialEq for ExtFieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for ExtFieldCtx {}

impl fmt::Debug for ExtFieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[x]/({})", self.prime(), self.modulus())
    }
}

/// Element of `F_p[x]/(φ̄)`, stored as its reduced representative.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtFieldElem {
    ctx: ExtFieldCtx,
    rep: Vec<BigUint>,
}

/// Operation selector for [`fq_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FqOp {
    Add,
    Mul,
    Inv,
}

impl ExtFieldElem {
    pub fn ctx(&self) -> &ExtFieldCtx {
        &self.ctx
    }

    pub fn rep(&self) -> PrimeFieldPoly {
        PrimeFieldPoly::from_reduced(self.ctx.prime().clone(), self.rep.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rep.len() == 1 && self.rep[0].is_one()
    }

    fn check(&self, other: &ExtFieldElem) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ExtFieldElem) -> Result<Self> {
        self.check(other)?;
        Ok(self
            .ctx
            .elem_raw(self.ctx.0.field.add(&self.rep, &other.rep)))
    }

    pub fn sub(&self, other: &ExtFieldElem) -> Result<Self> {
        self.check(other)?;
        Ok(self
            .ctx
            .elem_raw(self.ctx.0.field.sub(&self.rep, &other.rep)))
    }

    pub fn mul(&self, other: &ExtFieldElem) -> Result<Self> {
        self.check(other)?;
        Ok(self
            .ctx
            .elem_raw(self.ctx.0.field.mul(&self.rep, &other.rep)))
    }

    pub fn inv(&self) -> Result<Self> {
        let inv = self.ctx.0.field.inv(&self.rep).ok_or(Error::ZeroInverse)?;
        Ok(self.ctx.elem_raw(inv))
    }

    /// Display as a polynomial in `x`, parenthesized when it has more than
    /// one term and `wrap` is set.
    fn fmt_coeff(&self, wrap: bool) -> String {
        let s = self.rep().to_string();
        let terms = self.rep.iter().filter(|c| !c.is_zero()).count();
        if wrap && terms > 1 {
            format!("({s})")
        } else {
            s
        }
    }
}

impl fmt::Display for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_coeff(false))
    }
}

impl fmt::Debug for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtFieldElem({self} in {:?})", self.ctx)
    }
}

/// `a op b` in `F_q`; `b` is ignored (and may be `None`) for `Inv`.
pub fn fq_arith(
    ctx: &ExtFieldCtx,
    op: FqOp,
    a: &ExtFieldElem,
    b: Option<&ExtFieldElem>,
) -> Result<ExtFieldElem> {
    if a.ctx != *ctx || b.is_some_and(|b| b.ctx != *ctx) {
        return Err(Error::ContextMismatch);
    }
    match op {
        FqOp::Inv => a.inv(),
        FqOp::Add | FqOp::Mul => {
            let b = b.ok_or_else(|| Error::Internal("binary operation without operand".into()))?;
            if op == FqOp::Add {
                a.add(b)
            } else {
                a.mul(b)
            }
        }
    }
}

/// Polynomial in `Y` over `F_q`; coefficient `k` multiplies `Y^k`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtFieldPoly {
    ctx: ExtFieldCtx,
    coeffs: Vec<Vec<BigUint>>,
}

impl ExtFieldPoly {
    pub fn new(ctx: &ExtFieldCtx, coeffs: Vec<ExtFieldElem>) -> Result<Self> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.ctx != *ctx {
                return Err(Error::ContextMismatch);
            }
            raw.push(c.rep);
        }
        Ok(Self::from_raw(ctx, raw))
    }

    fn from_raw(ctx: &ExtFieldCtx, coeffs: Vec<Vec<BigUint>>) -> Self {
        ExtFieldPoly {
            ctx: ctx.clone(),
            coeffs: field::trim(&ctx.0.field, coeffs),
        }
    }

    pub fn ctx(&self) -> &ExtFieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> Vec<ExtFieldElem> {
        self.coeffs
            .iter()
            .map(|c| self.ctx.elem_raw(c.clone()))
            .collect()
    }

    pub fn coeff(&self, k: usize) -> ExtFieldElem {
        self.ctx
            .elem_raw(self.coeffs.get(k).cloned().unwrap_or_default())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &ExtFieldElem) -> Result<Self> {
        if c.ctx != self.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(Self::from_raw(
            &self.ctx,
            field::scale(&self.ctx.0.field, &self.coeffs, &c.rep),
        ))
    }

    pub fn mul(&self, other: &ExtFieldPoly) -> Result<Self> {
        fq_poly_mul(self, other)
    }

    /// Evaluation at a point of `F_q` (Horner).
    pub fn eval(&self, y: &ExtFieldElem) -> Result<ExtFieldElem> {
        let mut acc = self.ctx.zero();
        for c in self.coeffs().into_iter().rev() {
            acc = acc.mul(y)?.add(&c)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for ExtFieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let monomial = match k {
                0 => String::new(),
                1 => "Y".to_string(),
                _ => format!("Y^{k}"),
            };
            match (k, c.is_one()) {
                (0, _) => write!(f, "{}", c.fmt_coeff(false))?,
                (_, true) => f.write_str(&monomial)?,
                (_, false) => write!(f, "{}*{monomial}", c.fmt_coeff(true))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExtFieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtFieldPoly({self} over {:?})", self.ctx)
    }
}

pub fn fq_poly_mul(a: &ExtFieldPoly, b: &ExtFieldPoly) -> Result<ExtFieldPoly> {
    if a.ctx != b.ctx {
        return Err(Error::ContextMismatch);
    }
    Ok(ExtFieldPoly::from_raw(
        &a.ctx,
        field::mul(&a.ctx.0.field, &a.coeffs, &b.coeffs),
    ))
}

/// Irreducibility over `F_q` by Rabin's criterion.
pub fn fq_irreducible(a: &ExtFieldPoly) -> Result<bool> {
    if a.degree().is_none_or(|d| d == 0) {
        return Err(Error::Constant(a.to_string()));
    }
    Ok(field::is_irreducible(&a.ctx.0.field, &a.coeffs))
}
