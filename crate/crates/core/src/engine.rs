//! Per-factor certification and the global valuation count.
//!
//! For `F̄ = ∏ φ̄_i^(l_i)` every factor is examined independently. A factor is
//! certified when `l_i = 1`, or when `F` satisfies the slope condition for
//! `φ_i` and the residual polynomial is irreducible; it then carries exactly
//! one valuation with `e = l_i / d_i` and `f = m_i d_i`. A factor violating
//! the slope condition is reducible over `Z_p` and contributes at least two
//! valuations. Anything else is inconclusive (at least one valuation).

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intpoly::BigIntPoly;
use crate::modpoly::{fp_factor, fq_irreducible, ExtFieldCtx, ExtFieldPoly, PrimeFieldPoly};
use crate::newton::{check_l_property, newton_data, residual_poly, CaseTag, LVerdict, NewtonData};
use crate::phiadic::phi_expand;
use crate::prime::Prime;

/// Why a factor contributing two or more valuations does so.
pub const SLOPE_VIOLATION_JUSTIFICATION: &str = "a factor whose expansion fails the slope \
     condition is reducible over the p-adic integers, so it carries at least two valuations";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorStatus {
    CertifiedIrreducible,
    LViolated,
    Inconclusive,
}

impl FactorStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FactorStatus::CertifiedIrreducible => "certified_irreducible",
            FactorStatus::LViolated => "l_violated",
            FactorStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorAnalysis {
    pub phi_bar: PrimeFieldPoly,
    pub phi_lift: BigIntPoly,
    /// Multiplicity of `φ̄` in `F̄`.
    pub l: usize,
    /// `deg φ̄`.
    pub m: usize,
    pub newton: NewtonData,
    pub l_verdict: LVerdict,
    pub residual: Option<ExtFieldPoly>,
    pub residual_irreducible: Option<bool>,
    pub status: FactorStatus,
    /// Ramification index, when certified.
    pub e: Option<u64>,
    /// Residue degree, when certified.
    pub f: Option<u64>,
    pub min_valuations: u64,
}

/// Global conclusion about the number of valuations extending `v_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Exactly `n = r` valuations.
    ExactCount(u64),
    /// At least `n > r` valuations (some factor violates the slope condition).
    AtLeast(u64),
    /// Some factor is inconclusive; at least `n` valuations.
    Unresolved(u64),
}

impl Verdict {
    pub fn n(self) -> u64 {
        match self {
            Verdict::ExactCount(n) | Verdict::AtLeast(n) | Verdict::Unresolved(n) => n,
        }
    }

    pub fn kind(self) -> &'static str {
        match self {
            Verdict::ExactCount(_) => "exact",
            Verdict::AtLeast(_) => "at_least",
            Verdict::Unresolved(_) => "unresolved",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ExactCount(n) => write!(f, "exactly {n}"),
            Verdict::AtLeast(n) => write!(f, "at least {n}"),
            Verdict::Unresolved(n) => write!(f, "unresolved, at least {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub poly: BigIntPoly,
    pub prime: Prime,
    /// Number of distinct irreducible factors of `F̄`.
    pub r: usize,
    pub factors: Vec<FactorAnalysis>,
    pub verdict: Verdict,
    pub dedekind_divides_index: Option<bool>,
    /// Set when some factor violates the slope condition.
    pub justification: Option<String>,
    pub warnings: Vec<String>,
}

/// Lift of `φ̄` with coefficients in `[0, p)`.
pub fn canonical_lift(phi_bar: &PrimeFieldPoly) -> BigIntPoly {
    BigIntPoly::lift(phi_bar)
}

fn check_monic_nonconstant(f: &BigIntPoly) -> Result<()> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    if f.is_constant() {
        return Err(Error::Constant(f.to_string()));
    }
    Ok(())
}

/// Exact multiplicity of `phi_bar` in `f_bar`.
fn multiplicity(f_bar: &PrimeFieldPoly, phi_bar: &PrimeFieldPoly) -> Result<usize> {
    let mut rest = f_bar.clone();
    let mut count = 0;
    loop {
        let (q, r) = rest.divrem(phi_bar)?;
        if !r.is_zero() {
            return Ok(count);
        }
        rest = q;
        count += 1;
    }
}

fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

/// Analyzes one factor `φ̄` of `F mod p` with its multiplicity `l`, using the
/// canonical lift.
pub fn analyze_factor(
    f: &BigIntPoly,
    p: &Prime,
    phi_bar: &PrimeFieldPoly,
    l: usize,
) -> Result<FactorAnalysis> {
    check_monic_nonconstant(f)?;
    if !phi_bar.is_monic() || phi_bar.degree() == Some(0) || !phi_bar.is_irreducible()? {
        return Err(Error::InvalidFieldModulus(phi_bar.to_string()));
    }
    let found = multiplicity(&f.reduce_mod_p(p), phi_bar)?;
    if found == 0 {
        return Err(Error::NotAFactor {
            phi: phi_bar.to_string(),
            poly: f.to_string(),
        });
    }
    if found != l {
        return Err(Error::MultiplicityMismatch {
            phi: phi_bar.to_string(),
            expected: l,
            found,
        });
    }
    analyze_factor_with_lift(f, p, &canonical_lift(phi_bar), l)
}

/// Same as [`analyze_factor`] for an arbitrary monic lift of `φ̄`; the
/// caller guarantees the multiplicity.
pub fn analyze_factor_with_lift(
    f: &BigIntPoly,
    p: &Prime,
    lift: &BigIntPoly,
    l: usize,
) -> Result<FactorAnalysis> {
    if !lift.is_monic() {
        return Err(Error::NotMonic(lift.to_string()));
    }
    let phi_bar = lift.reduce_mod_p(p);
    let ctx = ExtFieldCtx::new(phi_bar.clone())?;
    let m = ctx.degree();

    let mut phi_lift = lift.clone();
    let mut exp = phi_expand(f, &phi_lift)?;
    if exp.coeff(exp.length()).is_zero() {
        if f != lift {
            return Err(Error::ReducibleOverIntegers {
                poly: f.to_string(),
                phi: lift.to_string(),
            });
        }
        // F is its own lift; shift by p so the tail digit is -p
        phi_lift = lift + &BigIntPoly::constant(BigInt::from(p.value().clone()));
        exp = phi_expand(f, &phi_lift)?;
    }

    let newton = newton_data(&exp, p)?;
    if newton.case != CaseTag::DividesCase {
        return Err(internal(format!(
            "{phi_bar} divides F mod p but the expansion is coprime"
        )));
    }
    if newton.length - newton.s != l {
        return Err(internal(format!(
            "L - s = {} differs from the multiplicity {l} of {phi_bar}",
            newton.length - newton.s
        )));
    }
    let l_verdict = check_l_property(&exp, &newton);
    let residual = if l_verdict.satisfied {
        Some(residual_poly(&exp, &newton, &ctx)?)
    } else {
        None
    };
    let residual_irreducible = residual.as_ref().map(fq_irreducible).transpose()?;

    let certified = if l == 1 {
        if newton.d != 1 {
            return Err(internal(format!("multiplicity one but d = {}", newton.d)));
        }
        true
    } else {
        l_verdict.satisfied && residual_irreducible == Some(true)
    };
    let (status, e, f_deg, min_valuations) = if certified {
        let e = l as u64 / newton.d;
        let f_deg = m as u64 * newton.d;
        if e * f_deg != (l * m) as u64 {
            return Err(internal("e * f differs from l * m"));
        }
        (FactorStatus::CertifiedIrreducible, Some(e), Some(f_deg), 1)
    } else if !l_verdict.satisfied {
        (FactorStatus::LViolated, None, None, 2)
    } else {
        (FactorStatus::Inconclusive, None, None, 1)
    };

    Ok(FactorAnalysis {
        phi_bar,
        phi_lift,
        l,
        m,
        newton,
        l_verdict,
        residual,
        residual_irreducible,
        status,
        e,
        f: f_deg,
        min_valuations,
    })
}

/// Folds per-factor statuses into the global verdict.
pub fn aggregate(factors: &[FactorAnalysis]) -> Verdict {
    let n = factors.iter().map(|fa| fa.min_valuations).sum();
    let has = |s| factors.iter().any(|fa| fa.status == s);
    if has(FactorStatus::LViolated) {
        Verdict::AtLeast(n)
    } else if has(FactorStatus::Inconclusive) {
        Verdict::Unresolved(n)
    } else {
        Verdict::ExactCount(n)
    }
}

/// Full report for a monic polynomial `F`, assumed irreducible over the
/// rationals (only squarefreeness is checked).
pub fn analyze(f: &BigIntPoly, p: &Prime, seed: u64) -> Result<AnalysisReport> {
    check_monic_nonconstant(f)?;
    if !f.is_squarefree_over_q() {
        return Err(Error::NotSquarefree(f.to_string()));
    }
    let fbar_factors = fp_factor(&f.reduce_mod_p(p), seed)?;
    let factors = fbar_factors
        .iter()
        .map(|(phi_bar, l)| analyze_factor_with_lift(f, p, &canonical_lift(phi_bar), *l))
        .collect::<Result<Vec<_>>>()?;

    let total: usize = factors.iter().map(|fa| fa.l * fa.m).sum();
    if Some(total) != f.degree() {
        return Err(internal("factor degrees do not add up to deg F"));
    }
    let verdict = aggregate(&factors);
    let dedekind = dedekind_from_factors(f, p, &fbar_factors)?;
    let mut warnings = Vec::new();
    if !p.certified() {
        warnings.push(format!("{p} exceeds 2^64 and is only a probable prime"));
    }
    Ok(AnalysisReport {
        poly: f.clone(),
        prime: p.clone(),
        r: factors.len(),
        justification: matches!(verdict, Verdict::AtLeast(_))
            .then(|| SLOPE_VIOLATION_JUSTIFICATION.to_string()),
        factors,
        verdict,
        dedekind_divides_index: Some(dedekind),
        warnings,
    })
}

/// `true` iff `p` divides the index `[Z_K : Z[α]]`, by Dedekind's criterion.
pub fn dedekind_divides_index(f: &BigIntPoly, p: &Prime, seed: u64) -> Result<bool> {
    check_monic_nonconstant(f)?;
    let factors = fp_factor(&f.reduce_mod_p(p), seed)?;
    dedekind_from_factors(f, p, &factors)
}

/// With `M = (F - ∏ φ_i^(l_i)) / p` for `[0, p)` lifts, `p` divides the
/// index iff some `φ̄_i` with `l_i ≥ 2` divides `M̄`.
fn dedekind_from_factors(
    f: &BigIntPoly,
    p: &Prime,
    factors: &[(PrimeFieldPoly, usize)],
) -> Result<bool> {
    if factors.iter().all(|(_, l)| *l == 1) {
        return Ok(false);
    }
    let product = factors.iter().fold(BigIntPoly::one(), |acc, (phi_bar, l)| {
        &acc * &canonical_lift(phi_bar).pow(*l as u32)
    });
    let m = (f - &product)
        .scaled_by_p_power(p, 1)
        .map_err(|_| internal("F minus the lifted factorization is not divisible by p"))?;
    let m_bar = m.reduce_mod_p(p);
    for (phi_bar, l) in factors {
        if *l >= 2 && m_bar.divisible_by(phi_bar)? {
            return Ok(true);
        }
    }
    Ok(false)
}
