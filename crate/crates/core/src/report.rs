//! Machine-readable form of an [`AnalysisReport`].
//!
//! Field names are part of the CLI's JSON contract. Slopes are exact
//! fractions and residual polynomials are strings such as `"Y + x"`, where
//! `x` is the class of `x` in `F_p[x]/(φ̄)`.

use serde::{Deserialize, Serialize};

use crate::engine::{AnalysisReport, FactorAnalysis, Verdict};
use crate::intpoly::ExtNat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub kind: String,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    pub phi: String,
    pub phi_lift: String,
    pub l: usize,
    pub m: usize,
    pub s: usize,
    /// `null` encodes an infinite valuation.
    pub v: Option<u64>,
    pub lambda: Fraction,
    pub d: u64,
    pub e_slope: u64,
    pub h_slope: u64,
    #[serde(rename = "L_satisfied")]
    pub l_satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual_irreducible: Option<bool>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub f: Option<u64>,
    pub min_valuations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub poly: String,
    pub prime: String,
    pub r: usize,
    pub factors: Vec<FactorJson>,
    pub verdict: VerdictJson,
    pub dedekind_divides_index: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub justification: Option<String>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl From<&FactorAnalysis> for FactorJson {
    fn from(fa: &FactorAnalysis) -> Self {
        let nd = &fa.newton;
        FactorJson {
            phi: fa.phi_bar.to_string(),
            phi_lift: fa.phi_lift.to_string(),
            l: fa.l,
            m: fa.m,
            s: nd.s,
            v: match nd.v {
                ExtNat::Finite(v) => Some(v),
                ExtNat::Infinity => None,
            },
            lambda: Fraction {
                num: *nd.lambda.numer(),
                den: *nd.lambda.denom(),
            },
            d: nd.d,
            e_slope: nd.e,
            h_slope: nd.h,
            l_satisfied: fa.l_verdict.satisfied,
            witness: fa.l_verdict.witness,
            residual: fa.residual.as_ref().map(ToString::to_string),
            residual_irreducible: fa.residual_irreducible,
            status: fa.status.as_str().to_string(),
            e: fa.e,
            f: fa.f,
            min_valuations: fa.min_valuations,
        }
    }
}

impl From<Verdict> for VerdictJson {
    fn from(v: Verdict) -> Self {
        VerdictJson {
            kind: v.kind().to_string(),
            n: v.n(),
        }
    }
}

impl From<&AnalysisReport> for ReportJson {
    fn from(r: &AnalysisReport) -> Self {
        ReportJson {
            poly: r.poly.to_string(),
            prime: r.prime.to_string(),
            r: r.r,
            factors: r.factors.iter().map(FactorJson::from).collect(),
            verdict: r.verdict.into(),
            dedekind_divides_index: r.dedekind_divides_index,
            justification: r.justification.clone(),
            warnings: r.warnings.clone(),
        }
    }
}

impl ReportJson {
    /// Internal consistency of a (possibly deserialized) report: every
    /// verdict and per-factor field agrees with the others.
    pub fn validate(&self) -> Result<(), String> {
        let allowed = ["certified_irreducible", "l_violated", "inconclusive"];
        let mut n = 0;
        for (i, fa) in self.factors.iter().enumerate() {
            let ctx = |msg: &str| format!("factor {i} ({}): {msg}", fa.phi);
            if !allowed.contains(&fa.status.as_str()) {
                return Err(ctx("unknown status"));
            }
            if fa.lambda.den == 0
                || num_integer::gcd(fa.lambda.num, fa.lambda.den) > 1 && fa.lambda.num != 0
            {
                return Err(ctx("lambda is not a reduced fraction"));
            }
            if fa.lambda.num != fa.h_slope || fa.lambda.den != fa.e_slope {
                return Err(ctx("lambda disagrees with h_slope / e_slope"));
            }
            if fa.l_satisfied == fa.witness.is_some() {
                return Err(ctx(
                    "witness must be present exactly when the slope condition fails",
                ));
            }
            let certified = fa.status == "certified_irreducible";
            if certified != (fa.e.is_some() && fa.f.is_some()) {
                return Err(ctx("e and f must be present exactly for certified factors"));
            }
            if let (Some(e), Some(f)) = (fa.e, fa.f) {
                if e * f != (fa.l * fa.m) as u64 || e * fa.d != fa.l as u64 {
                    return Err(ctx("e * f must equal l * m with e = l / d"));
                }
            }
            let expected_min = if fa.status == "l_violated" { 2 } else { 1 };
            if fa.min_valuations != expected_min {
                return Err(ctx("min_valuations does not match the status"));
            }
            n += fa.min_valuations;
        }
        if self.r != self.factors.len() {
            return Err("r differs from the number of factors".into());
        }
        if self.verdict.n != n {
            return Err("verdict n differs from the sum of min_valuations".into());
        }
        let any = |s: &str| self.factors.iter().any(|fa| fa.status == s);
        let kind = if any("l_violated") {
            "at_least"
        } else if any("inconclusive") {
            "unresolved"
        } else {
            "exact"
        };
        if self.verdict.kind != kind {
            return Err(format!(
                "verdict kind {} should be {kind}",
                self.verdict.kind
            ));
        }
        Ok(())
    }
}
