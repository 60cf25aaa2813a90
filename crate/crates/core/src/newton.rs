//! Single-slope Newton data of a φ-adic expansion, the slope condition, and
//! the residual polynomial.
//!
//! With `s` the last digit index of valuation zero, the slope is
//! `λ = v_p(a_L) / (L - s) = h / e` in lowest terms and
//! `d = gcd(v_p(a_L), L - s)`. The slope condition asks every digit past `s`
//! to lie on or above the segment from `(s, 0)` to `(L, v_p(a_L))`:
//! `e · v_p(a_(s+i)) ≥ i · h` for `i = 1..=L-s`. All comparisons are made on
//! integers; λ is never rounded.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::intpoly::{BigIntPoly, ExtNat};
use crate::modpoly::{ExtFieldCtx, ExtFieldPoly};
use crate::phiadic::{digit_valuations, PhiExpansion};
use crate::prime::Prime;

/// Whether `φ̄` divides the reduction of the expanded polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `s < L`: a genuine slope.
    DividesCase,
    /// `s = L`: `λ = 0`, `d = L`, `e = 1`.
    CoprimeCase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonData {
    pub p: Prime,
    /// `L`, the expansion length.
    pub length: usize,
    pub s: usize,
    /// `v_p(a_L)`.
    pub v: ExtNat,
    pub lambda: Ratio<u64>,
    pub d: u64,
    pub e: u64,
    pub h: u64,
    pub case: CaseTag,
}

/// Outcome of the slope condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LVerdict {
    pub satisfied: bool,
    /// Smallest `i` with `e · v_p(a_(s+i)) < i · h`; present iff not satisfied.
    pub witness: Option<usize>,
}

pub fn newton_data(exp: &PhiExpansion, p: &Prime) -> Result<NewtonData> {
    let vals = digit_valuations(exp, p);
    if vals[0] != 0 {
        return Err(Error::NonUnitLeading(exp.coeff(0).to_string()));
    }
    let length = exp.length();
    let s = vals
        .iter()
        .rposition(|v| *v == 0)
        .expect("a_0 has valuation zero");
    let v = vals[length];
    if s == length {
        return Ok(NewtonData {
            p: p.clone(),
            length,
            s,
            v,
            lambda: Ratio::from_integer(0),
            d: length as u64,
            e: 1,
            h: 0,
            case: CaseTag::CoprimeCase,
        });
    }
    let height = v.finite().ok_or(Error::ZeroTail)?;
    let run = (length - s) as u64;
    let d = height.gcd(&run);
    let (e, h) = (run / d, height / d);
    Ok(NewtonData {
        p: p.clone(),
        length,
        s,
        v,
        lambda: Ratio::new_raw(h, e),
        d,
        e,
        h,
        case: CaseTag::DividesCase,
    })
}

pub fn check_l_property(exp: &PhiExpansion, nd: &NewtonData) -> LVerdict {
    if nd.case == CaseTag::CoprimeCase {
        return LVerdict {
            satisfied: true,
            witness: None,
        };
    }
    let witness = (1..=nd.length - nd.s).find(|&i| match exp.coeff(nd.s + i).valuation(&nd.p) {
        ExtNat::Infinity => false,
        ExtNat::Finite(v) => nd.e * v < i as u64 * nd.h,
    });
    LVerdict {
        satisfied: witness.is_none(),
        witness,
    }
}

/// Residue class of `a / p^k` in `ctx`, zero when `v_p(a) > k`.
fn residue_of_scaled(a: &BigIntPoly, k: u64, ctx: &ExtFieldCtx) -> Result<crate::ExtFieldElem> {
    let p = ctx.prime();
    let scaled = a.scaled_by_p_power(p, k)?;
    ctx.elem(&scaled.reduce_mod_p(p))
}

/// The residual polynomial `Σ t_i Y^(d-i)` over `ctx = F_p[x]/(φ̄)`, with
/// `t_i = red(a_(s+ie) / p^(ih))` in the dividing case and `t_i = red(a_i)`
/// otherwise. Only digits at stride `e` are read; the others reduce to zero
/// under the slope condition.
pub fn residual_poly(
    exp: &PhiExpansion,
    nd: &NewtonData,
    ctx: &ExtFieldCtx,
) -> Result<ExtFieldPoly> {
    if *ctx.prime() != nd.p || *ctx.modulus() != exp.phi().reduce_mod_p(&nd.p) {
        return Err(Error::ContextMismatch);
    }
    let (base, count, stride, step) = match nd.case {
        CaseTag::CoprimeCase => (0, nd.length, 1usize, 0u64),
        CaseTag::DividesCase => {
            let verdict = check_l_property(exp, nd);
            if let Some(witness) = verdict.witness {
                return Err(Error::SlopeConditionViolated { witness });
            }
            (nd.s, nd.d as usize, nd.e as usize, nd.h)
        }
    };
    // t_i multiplies Y^(count - i)
    let mut coeffs = Vec::with_capacity(count + 1);
    for i in (0..=count).rev() {
        let a = exp.coeff(base + i * stride);
        coeffs.push(residue_of_scaled(a, i as u64 * step, ctx)?);
    }
    if coeffs.last().is_none_or(|t0| t0.is_zero()) {
        return Err(Error::Internal(
            "leading residual coefficient vanished".into(),
        ));
    }
    ExtFieldPoly::new(ctx, coeffs)
}
