use std::collections::BTreeMap;
use std::process::Command;

use proptest::prelude::*;
use ramify_cli::{parse_poly, run_with_stdin, CliError, Outcome};
use ramify_core::report::ReportJson;
use ramify_core::BigIntPoly;
use serde_json::Value;

const SEPTIC: &str = "x^7 + 3x^5 + 18x^4 + 9x^3 + 6x^2 + 48x + 24";
const SEXTIC: &str = "x^6+36x^3+48";
const NONIC: &str = "x^9+48x^7+6x^6+24x^5+12x^4+3x^3+18x^2+6x+12";

const FIXTURES: &[(&str, &str)] = &[
    ("2", SEPTIC),
    ("2", SEXTIC),
    ("2", NONIC),
    ("2", "x^4+16x+4"),
    ("2", "x^4-2x^3+8x^2-8x+2"),
    ("2", "x^4-2x^3+8x^2-12x+2"),
    ("3", "x^3 - 3x + 1"),
    ("5", "x^2 + 1"),
    ("7", "x^5 - 2"),
];

fn ramify(args: &[&str]) -> Outcome {
    ramify_stdin(args, "")
}

fn ramify_stdin(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("ramify").chain(args.iter().copied());
    run_with_stdin(argv, &mut stdin.as_bytes())
}

fn report(prime: &str, poly: &str) -> ReportJson {
    let out = ramify(&["analyze", "--poly", poly, "--prime", prime, "--json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let report: ReportJson = serde_json::from_str(&out.stdout).expect("schema-conforming JSON");
    report.validate().expect("consistent report");
    report
}

#[test]
fn sextic_text_report() {
    let out = ramify(&["analyze", "--poly", SEXTIC, "--prime", "2"]);
    assert_eq!(out.code, 0);
    assert!(
        out.stdout
            .trim_end()
            .ends_with("exactly 1 valuation: e=3 f=2"),
        "{}",
        out.stdout
    );
}

#[test]
fn septic_text_lists_both_valuations() {
    let out = ramify(&["analyze", "--poly", SEPTIC, "--prime", "2"]);
    assert!(out
        .stdout
        .trim_end()
        .ends_with("exactly 2 valuations: e=1 f=3; e=2 f=2"));
    assert!(out.stdout.contains("residual: Y + x (irreducible)"));
}

#[test]
fn nonic_json_verdict() {
    let r = report("2", NONIC);
    assert_eq!((r.verdict.kind.as_str(), r.verdict.n), ("at_least", 4));
    assert_eq!(r.r, 3);
    let x = &r.factors[0];
    assert_eq!((x.phi.as_str(), x.status.as_str()), ("x", "l_violated"));
    assert_eq!(x.witness, Some(2));
    assert!(r.justification.is_some());
}

#[test]
fn dedekind_subcommand() {
    let out = ramify(&["dedekind", "--poly", "x^4-2x^3+8x^2-12x+2", "--prime", "2"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "p does not divide ind(alpha)");
    let out = ramify(&["dedekind", "--poly", SEXTIC, "--prime", "2", "--json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["dedekind_divides_index"], Value::Bool(true));
}

#[test]
fn expand_and_newton_subcommands() {
    let out = ramify(&["expand", "--poly", SEPTIC, "--phi", "x^2 + x + 1"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "phi: x^2 + x + 1\nL = 3\na_0 = x - 3\na_1 = 6x + 17\na_2 = -28x - 14\na_3 = 58x + 24\n"
    );
    let out = ramify(&[
        "expand", "--poly", SEPTIC, "--phi", "x", "--prime", "2", "--json",
    ]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["length"], 7);
    assert_eq!(v["valuations"][7], 3);

    let out = ramify(&[
        "newton", "--poly", NONIC, "--prime", "2", "--phi", "x", "--json",
    ]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v[0]["witness"], 2);
    assert_eq!(v[0]["lambda"]["num"], 2);
    assert_eq!(v[0]["lambda"]["den"], 3);

    let out = ramify(&["newton", "--poly", SEPTIC, "--prime", "2"]);
    assert_eq!(out.stdout.lines().count(), 2);
    assert!(out
        .stdout
        .contains("phi x^2 + x + 1: L = 3, s = 1, v = 1, lambda = 1/2"));
}

/// Pulls `key = value` pairs out of a text report, one map per factor plus
/// one for the header and verdict.
fn text_numbers(text: &str) -> (BTreeMap<String, String>, Vec<BTreeMap<String, String>>) {
    let mut head = BTreeMap::new();
    let mut factors: Vec<BTreeMap<String, String>> = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("factor ") {
            let mut m = BTreeMap::new();
            let (phi, rest) = rest.split_once(" (").unwrap();
            m.insert("phi".into(), phi.to_string());
            for kv in rest.trim_end_matches(')').split(", ") {
                if let Some((k, v)) = kv.split_once(" = ") {
                    m.insert(k.into(), v.into());
                }
            }
            factors.push(m);
        } else if let Some(rest) = line.strip_prefix("  ") {
            let m = factors.last_mut().unwrap();
            if let Some(status) = rest.strip_prefix("status: ") {
                let mut parts = status.split(", ");
                m.insert("status".into(), parts.next().unwrap().into());
                for kv in parts {
                    if let Some((k, v)) = kv.split_once(" = ") {
                        m.insert(k.into(), v.into());
                    }
                }
            } else if let Some(cond) = rest.strip_prefix("slope condition: ") {
                m.insert("slope".into(), cond.into());
            } else if let Some(res) = rest.strip_prefix("residual: ") {
                m.insert("residual".into(), res.into());
            } else {
                for kv in rest.split(", ") {
                    let (k, v) = kv.split_once(" = ").unwrap();
                    m.insert(k.into(), v.into());
                }
            }
        } else if let Some((k, v)) = line.split_once(": ") {
            head.insert(k.to_string(), v.to_string());
        }
    }
    (head, factors)
}

#[test]
fn text_and_json_agree_on_fixtures() {
    for (p, poly) in FIXTURES {
        let json = report(p, poly);
        let text = ramify(&["analyze", "--poly", poly, "--prime", p]).stdout;
        let (head, factors) = text_numbers(&text);
        assert_eq!(head["polynomial"], json.poly);
        assert_eq!(head["prime"], json.prime);
        assert_eq!(head["factors of F mod p"], json.r.to_string());
        assert_eq!(factors.len(), json.factors.len());
        for (t, j) in factors.iter().zip(&json.factors) {
            let lambda = if j.lambda.den == 1 {
                j.lambda.num.to_string()
            } else {
                format!("{}/{}", j.lambda.num, j.lambda.den)
            };
            let v = j.v.map_or("inf".to_string(), |v| v.to_string());
            assert_eq!(t["phi"], j.phi);
            assert_eq!(t["l"], j.l.to_string());
            assert_eq!(t["m"], j.m.to_string());
            assert_eq!(t["s"], j.s.to_string());
            assert_eq!(t["v"], v);
            assert_eq!(t["lambda"], lambda);
            assert_eq!(t["d"], j.d.to_string());
            assert_eq!(t["e_slope"], j.e_slope.to_string());
            assert_eq!(t["h_slope"], j.h_slope.to_string());
            assert_eq!(t["status"], j.status);
            assert_eq!(t.get("e").cloned(), j.e.map(|e| e.to_string()));
            assert_eq!(t.get("f").cloned(), j.f.map(|f| f.to_string()));
            assert_eq!(t["slope"] == "satisfied", j.l_satisfied);
            if let Some(w) = j.witness {
                assert!(t["slope"].starts_with(&format!("violated at i = {w} ")));
            }
            assert_eq!(
                t.get("residual")
                    .map(|r| r.split(" (").next().unwrap().to_string()),
                j.residual
            );
        }
        let verdict = &head["verdict"];
        let n = json.verdict.n;
        match json.verdict.kind.as_str() {
            "exact" => assert!(verdict.starts_with(&format!("exactly {n} "))),
            kind => {
                assert!(verdict.starts_with(&format!("at least {n} ")));
                assert_eq!(verdict.ends_with("(unresolved)"), kind == "unresolved");
            }
        }
        let dedekind = if json.dedekind_divides_index == Some(true) {
            "p divides ind(alpha)"
        } else {
            "p does not divide ind(alpha)"
        };
        assert_eq!(head["dedekind"], dedekind);
    }
}

#[test]
fn validator_rejects_inconsistent_reports() {
    let good = report("2", NONIC);
    let mut bad = good.clone();
    bad.verdict.kind = "exact".into();
    assert!(bad.validate().is_err());
    let mut bad = good.clone();
    bad.verdict.n = 3;
    assert!(bad.validate().is_err());
    let mut bad = good.clone();
    bad.factors[0].witness = None;
    assert!(bad.validate().is_err());
    let mut bad = good.clone();
    bad.factors[1].e = Some(1);
    assert!(bad.validate().is_err());
    let mut bad = good;
    bad.factors[2].lambda.num = 2;
    assert!(bad.validate().is_err());

    let out = ramify(&["analyze", "--poly", SEPTIC, "--prime", "2", "--json"]).stdout;
    let mut v: Value = serde_json::from_str(&out).unwrap();
    v["factors"][0]["surprise"] = Value::Bool(true);
    assert!(serde_json::from_value::<ReportJson>(v).is_err());
}

#[test]
fn exit_codes() {
    assert_eq!(ramify(&["--help"]).code, 0);
    assert_eq!(ramify(&["--version"]).code, 0);
    assert_eq!(ramify(&[]).code, 1);
    assert_eq!(ramify(&["factor"]).code, 1);
    assert_eq!(ramify(&["analyze", "--poly", "x^2+1"]).code, 1);
    assert_eq!(
        ramify(&["analyze", "--poly", "x^2+*1", "--prime", "2"]).code,
        1
    );
    assert_eq!(
        ramify(&["analyze", "--poly", "x^2+1", "--prime", "two"]).code,
        1
    );
    assert_eq!(
        ramify(&["analyze", "--poly", "3x^2+1", "--prime", "2"]).code,
        2
    );
    assert_eq!(
        ramify(&["analyze", "--poly", "x^2+1", "--prime", "9"]).code,
        2
    );
    assert_eq!(
        ramify(&["analyze", "--poly", "x^2+1", "--prime", "1"]).code,
        2
    );
    // (x^2 + 1)^2 is not squarefree
    assert_eq!(
        ramify(&["analyze", "--poly", "x^4+2x^2+1", "--prime", "3"]).code,
        2
    );
    assert_eq!(ramify(&["expand", "--poly", "x^3", "--phi", "2x"]).code, 2);

    let internal = CliError::Core(ramify_core::Error::Internal("broken".into()));
    assert_eq!(internal.exit_code(), 3);
    let err = ramify(&["analyze", "--poly", "x^2+y", "--prime", "2"]).stderr;
    assert!(err.contains("position 4"), "{err}");
}

#[test]
fn poly_from_stdin() {
    let out = ramify_stdin(
        &["analyze", "--poly", "-", "--prime", "2"],
        &format!("{SEXTIC}\n"),
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out
        .stdout
        .trim_end()
        .ends_with("exactly 1 valuation: e=3 f=2"));
}

fn batch_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("ramify-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn batch_isolates_failures_and_keeps_order() {
    let contents =
        format!("# fixtures\n2 ; {SEXTIC}\n\n2 ; 3x^2 + 1\nnot a line\n2 ; {NONIC}\n5 ; x^2 + 1\n");
    let path = batch_file("mixed", &contents);
    let p = path.to_str().unwrap();

    let out = ramify(&["analyze", "--input", p]);
    assert_eq!(out.code, 2);
    let headers: Vec<&str> = out
        .stdout
        .lines()
        .filter(|l| l.starts_with("== line"))
        .collect();
    assert_eq!(
        headers,
        [
            "== line 2 ==",
            "== line 4 ==",
            "== line 5 ==",
            "== line 6 ==",
            "== line 7 =="
        ]
    );
    assert!(out.stdout.contains("exactly 1 valuation: e=3 f=2"));
    assert!(out
        .stdout
        .contains("error: polynomial 3x^2 + 1 is not monic"));

    let out = ramify(&["analyze", "--input", p, "--json", "--seed", "7"]);
    let lines: Vec<Value> = out
        .stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let numbers: Vec<u64> = lines.iter().map(|v| v["line"].as_u64().unwrap()).collect();
    assert_eq!(numbers, [2, 4, 5, 6, 7]);
    assert_eq!(lines[1]["exit_code"], 2);
    assert_eq!(lines[2]["exit_code"], 1);
    for v in [&lines[0], &lines[3], &lines[4]] {
        let r: ReportJson = serde_json::from_value(v["report"].clone()).unwrap();
        r.validate().unwrap();
    }
    assert_eq!(lines[3]["report"]["verdict"]["n"], 4);

    let out = ramify(&["dedekind", "--input", p]);
    assert!(out.stdout.contains("p does not divide ind(alpha)"));
    std::fs::remove_file(path).unwrap();

    let many: String = (0..40)
        .map(|i| format!("{} ; x^2 + {}\n", [2, 3, 5, 7][i % 4], 2 * i + 1))
        .collect();
    let path = batch_file("many", &many);
    let out = ramify(&["analyze", "--input", path.to_str().unwrap(), "--json"]);
    let order: Vec<u64> = out
        .stdout
        .lines()
        .map(|l| {
            serde_json::from_str::<Value>(l).unwrap()["line"]
                .as_u64()
                .unwrap()
        })
        .collect();
    assert_eq!(order, (1..=40).collect::<Vec<_>>());
    std::fs::remove_file(path).unwrap();

    assert_eq!(
        ramify(&["analyze", "--input", "/nonexistent/ramify-batch"]).code,
        1
    );
}

#[test]
fn seed_does_not_change_reports() {
    for (p, poly) in FIXTURES {
        let base = ramify(&["analyze", "--poly", poly, "--prime", p, "--json"]).stdout;
        for seed in ["1", "42", "18446744073709551615"] {
            let other = ramify(&[
                "analyze", "--poly", poly, "--prime", p, "--json", "--seed", seed,
            ]);
            assert_eq!(other.stdout, base);
        }
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_ramify");
    let out = Command::new(bin)
        .args(["analyze", "--poly", SEXTIC, "--prime", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .ends_with("e=3 f=2"));
    let out = Command::new(bin)
        .args(["analyze", "--poly", "2x+1", "--prime", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn arb_poly() -> impl Strategy<Value = BigIntPoly> {
    prop::collection::vec(
        prop_oneof![
            3 => -20i64..20,
            1 => any::<i64>(),
        ],
        0..10,
    )
    .prop_map(|c| BigIntPoly::from_i64s(&c))
}

/// Random spellings of a polynomial: shuffled, split and repeated terms with
/// optional `*`, explicit `^1` / `^0` and arbitrary spacing.
fn arb_expression() -> impl Strategy<Value = String> {
    let term = (any::<bool>(), 0u32..50, 0usize..6, 0u8..4, " {0,2}");
    prop::collection::vec(term, 1..8).prop_map(|terms| {
        let mut s = String::new();
        for (i, (neg, c, k, style, ws)) in terms.into_iter().enumerate() {
            let sign = if neg { "-" } else { "+" };
            if i > 0 || neg {
                s.push_str(&format!("{ws}{sign}{ws}"));
            }
            let power = match (k, style % 2) {
                (0, 0) => String::new(),
                (1, 0) => "x".into(),
                (k, _) => format!("x{ws}^{ws}{k}"),
            };
            let body = match (style, power.is_empty()) {
                (_, true) => c.to_string(),
                (0, _) if c == 1 => power,
                (1, _) => format!("{c}{ws}*{ws}{power}"),
                _ => format!("{c}{power}"),
            };
            s.push_str(&body);
        }
        s
    })
}

proptest! {
    #[test]
    fn print_then_parse_round_trips(f in arb_poly()) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn parse_print_parse_is_stable(text in arb_expression()) {
        let once = parse_poly(&text).unwrap();
        let printed = once.to_string();
        let twice = parse_poly(&printed).unwrap();
        prop_assert_eq!(&twice, &once);
        prop_assert_eq!(twice.to_string(), printed);
    }

    #[test]
    fn garbage_never_panics(text in "[-+*^x0-9 a]{0,12}") {
        let _ = parse_poly(&text);
    }
}
