//! Text and JSON renderings of the library's results.

use std::fmt::Write as _;

use ramify_core::report::{Fraction, ReportJson};
use ramify_core::{
    AnalysisReport, CaseTag, ExtNat, FactorAnalysis, FactorStatus, LVerdict, NewtonData,
    PhiExpansion, Prime, Verdict,
};
use serde_json::{json, Value};

fn plural(n: u64) -> &'static str {
    if n == 1 {
        "valuation"
    } else {
        "valuations"
    }
}

fn lambda(nd: &NewtonData) -> String {
    if *nd.lambda.denom() == 1 {
        nd.lambda.numer().to_string()
    } else {
        format!("{}/{}", nd.lambda.numer(), nd.lambda.denom())
    }
}

fn slope_line(nd: &NewtonData, lv: &LVerdict) -> String {
    match lv.witness {
        None => "satisfied".into(),
        Some(i) => format!("violated at i = {i} (a_{})", nd.s + i),
    }
}

/// Final line of an analysis; for an exact count it lists `e` and `f` of
/// each valuation in factor order.
pub fn verdict_line(report: &AnalysisReport) -> String {
    match report.verdict {
        Verdict::ExactCount(n) => {
            let parts: Vec<String> = report
                .factors
                .iter()
                .map(|fa| {
                    format!(
                        "e={} f={}",
                        fa.e.expect("certified factor"),
                        fa.f.expect("certified factor")
                    )
                })
                .collect();
            format!("exactly {n} {}: {}", plural(n), parts.join("; "))
        }
        Verdict::AtLeast(n) => format!("at least {n} {}", plural(n)),
        Verdict::Unresolved(n) => format!("at least {n} {} (unresolved)", plural(n)),
    }
}

fn factor_text(out: &mut String, fa: &FactorAnalysis) {
    let nd = &fa.newton;
    let _ = writeln!(
        out,
        "factor {} (l = {}, m = {}, lift {})",
        fa.phi_bar, fa.l, fa.m, fa.phi_lift
    );
    let _ = writeln!(
        out,
        "  s = {}, v = {}, lambda = {}, d = {}, e_slope = {}, h_slope = {}",
        nd.s,
        nd.v,
        lambda(nd),
        nd.d,
        nd.e,
        nd.h
    );
    let _ = writeln!(out, "  slope condition: {}", slope_line(nd, &fa.l_verdict));
    if let Some(res) = &fa.residual {
        let irr = match fa.residual_irreducible {
            Some(true) => "irreducible",
            _ => "reducible",
        };
        let _ = writeln!(out, "  residual: {res} ({irr})");
    }
    let _ = match (fa.status, fa.e, fa.f) {
        (FactorStatus::CertifiedIrreducible, Some(e), Some(f)) => {
            writeln!(out, "  status: {}, e = {e}, f = {f}", fa.status.as_str())
        }
        _ => writeln!(
            out,
            "  status: {}, at least {} {}",
            fa.status.as_str(),
            fa.min_valuations,
            plural(fa.min_valuations)
        ),
    };
}

pub fn dedekind_line(divides: bool) -> &'static str {
    if divides {
        "p divides ind(alpha)"
    } else {
        "p does not divide ind(alpha)"
    }
}

pub fn report_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "polynomial: {}", report.poly);
    let _ = writeln!(out, "prime: {}", report.prime);
    let _ = writeln!(out, "factors of F mod p: {}", report.r);
    for fa in &report.factors {
        factor_text(&mut out, fa);
    }
    if let Some(div) = report.dedekind_divides_index {
        let _ = writeln!(out, "dedekind: {}", dedekind_line(div));
    }
    if let Some(j) = &report.justification {
        let _ = writeln!(out, "justification: {j}");
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = write!(out, "verdict: {}", verdict_line(report));
    out
}

pub fn report_json(report: &AnalysisReport) -> Value {
    serde_json::to_value(ReportJson::from(report)).expect("report serializes")
}

pub fn expansion_text(exp: &PhiExpansion, p: Option<&Prime>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "phi: {}", exp.phi());
    let _ = write!(out, "L = {}", exp.length());
    for (j, a) in exp.coeffs().iter().enumerate() {
        let _ = write!(out, "\na_{j} = {a}");
        if let Some(p) = p {
            let _ = write!(out, "  (v_p = {})", a.valuation(p));
        }
    }
    out
}

fn ext_json(v: ExtNat) -> Value {
    match v {
        ExtNat::Finite(v) => json!(v),
        ExtNat::Infinity => Value::Null,
    }
}

pub fn expansion_json(poly: &str, exp: &PhiExpansion, p: Option<&Prime>) -> Value {
    let mut v = json!({
        "poly": poly,
        "phi": exp.phi().to_string(),
        "length": exp.length(),
        "coeffs": exp.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    if let Some(p) = p {
        v["prime"] = json!(p.to_string());
        v["valuations"] = exp
            .coeffs()
            .iter()
            .map(|a| ext_json(a.valuation(p)))
            .collect();
    }
    v
}

fn case_str(case: CaseTag) -> &'static str {
    match case {
        CaseTag::DividesCase => "divides",
        CaseTag::CoprimeCase => "coprime",
    }
}

pub fn newton_text(phi: &str, nd: &NewtonData, lv: &LVerdict) -> String {
    format!(
        "phi {phi}: L = {}, s = {}, v = {}, lambda = {}, d = {}, e_slope = {}, h_slope = {}, \
         case = {}, slope condition: {}",
        nd.length,
        nd.s,
        nd.v,
        lambda(nd),
        nd.d,
        nd.e,
        nd.h,
        case_str(nd.case),
        slope_line(nd, lv)
    )
}

pub fn newton_json(phi: &str, nd: &NewtonData, lv: &LVerdict) -> Value {
    let mut v = json!({
        "phi": phi,
        "length": nd.length,
        "s": nd.s,
        "v": ext_json(nd.v),
        "lambda": serde_json::to_value(Fraction { num: *nd.lambda.numer(), den: *nd.lambda.denom() })
            .expect("fraction serializes"),
        "d": nd.d,
        "e_slope": nd.e,
        "h_slope": nd.h,
        "case": case_str(nd.case),
        "L_satisfied": lv.satisfied,
    });
    if let Some(w) = lv.witness {
        v["witness"] = json!(w);
    }
    v
}
