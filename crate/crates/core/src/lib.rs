//! Exact computation of the extensions of the p-adic valuation to a number
//! field `K = Q[x]/(F)` from the factorization of `F` modulo `p`.
//!
//! For every monic irreducible factor `φ̄` of `F mod p` with multiplicity `l`
//! the engine expands `F` in powers of a lift `φ`, reads off the single
//! Newton slope `λ = h/e`, checks that every expansion coefficient lies on or
//! above that slope, and builds the residual polynomial over `F_p[x]/(φ̄)`.
//! When the residual polynomial is irreducible (or `l = 1`) the factor
//! contributes exactly one valuation with ramification index `l/d` and
//! residue degree `deg φ · d`.
//!
//! ```
//! use ramify_core::{analyze, BigIntPoly, Prime, Verdict};
//!
//! let f = BigIntPoly::from_i64s(&[48, 0, 0, 36, 0, 0, 1]);
//! let report = analyze(&f, &Prime::new(2u32).unwrap(), 0).unwrap();
//! assert_eq!(report.verdict, Verdict::ExactCount(1));
//! assert_eq!((report.factors[0].e, report.factors[0].f), (Some(3), Some(2)));
//! ```

pub mod engine;
mod error;
mod field;
pub mod intpoly;
pub mod modpoly;
pub mod newton;
pub mod phiadic;
pub mod prime;
pub mod report;

pub use engine::{
    analyze, analyze_factor, analyze_factor_with_lift, canonical_lift, dedekind_divides_index,
    AnalysisReport, FactorAnalysis, FactorStatus, Verdict,
};
pub use error::{Error, Result};
pub use intpoly::{BigIntPoly, ExtNat};
pub use modpoly::{
    fp_factor, fp_gcd, fq_irreducible, ExtFieldCtx, ExtFieldElem, ExtFieldPoly, PrimeFieldPoly,
};
pub use newton::{check_l_property, newton_data, residual_poly, CaseTag, LVerdict, NewtonData};
pub use phiadic::{phi_expand, phi_expand_product, reconstruct, PhiExpansion};
pub use prime::Prime;
