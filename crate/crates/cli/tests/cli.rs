use std::process::{Command, Output};

use charvar_core::partitions::enumerate_partitions;
use charvar_core::{CharVarEngine, GroupKind, RatPoly, StratumQuery};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

fn charvar(args: &[&str]) -> Output {
    charvar_env(args, None)
}

fn charvar_env(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_charvar"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("CHARVAR_THREADS", t),
        None => cmd.env_remove("CHARVAR_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ints(v: &[i64]) -> RatPoly {
    RatPoly::from_ints(v.iter().copied())
}

fn from_big(v: Vec<BigInt>) -> RatPoly {
    RatPoly::from_coeffs(v.into_iter().map(BigRational::from_integer).collect())
}

#[test]
fn documented_examples() {
    assert_eq!(
        stdout(&charvar(&[
            "epoly", "--group", "sl", "--n", "2", "--r", "2"
        ])),
        "x^3\n"
    );
    assert_eq!(
        stdout(&charvar(&[
            "euler", "--group", "sl", "--n", "4", "--r", "3"
        ])),
        "8\n"
    );
    assert_eq!(
        stdout(&charvar(&[
            "epoly", "--group", "gl", "--n", "1", "--r", "3"
        ])),
        "x^3 - 3x^2 + 3x - 1\n"
    );
}

#[test]
fn sl2_is_sum_of_strata() {
    let whole = stdout(&charvar(&[
        "epoly", "--group", "sl", "--n", "2", "--r", "2", "--format", "json",
    ]));
    let parts: Vec<RatPoly> = ["2", "1^2"]
        .iter()
        .map(|m| {
            let out = charvar(&[
                "epoly",
                "--group",
                "sl",
                "--n",
                "2",
                "--r",
                "2",
                "--stratum",
                m,
                "--format",
                "json",
            ]);
            json_poly(&serde_json::from_str(&stdout(&out)).unwrap())
        })
        .collect();
    let whole = json_poly(&serde_json::from_str(&whole).unwrap());
    assert_eq!(&parts[0] + &parts[1], whole);
    assert_eq!(parts[0], ints(&[-1, 0, -1, 1]));
}

fn json_poly(v: &Value) -> RatPoly {
    from_big(
        v["coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.to_string().parse().unwrap())
            .collect(),
    )
}

#[test]
fn json_schema_and_roundtrip() {
    let out = charvar(&[
        "table",
        "--group",
        "pgl",
        "--n-max",
        "4",
        "--r-max",
        "3",
        "--per-stratum",
        "--format",
        "json",
    ]);
    let rows: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    let engine = CharVarEngine::new();
    let mut expected_rows = 0;
    for n in 1..=4 {
        expected_rows += 3 * enumerate_partitions(n).len();
    }
    assert_eq!(rows.len(), expected_rows);
    for row in &rows {
        let keys: Vec<&str> = row
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(
            keys,
            [
                "group",
                "n",
                "r",
                "stratum",
                "variable",
                "coefficients",
                "degree",
                "euler_char"
            ]
        );
        let n = row["n"].as_u64().unwrap() as usize;
        let r = row["r"].as_u64().unwrap() as usize;
        let stratum = charvar_core::partitions::enumerate_partitions(n)
            .into_iter()
            .find(|m| m.to_string() == row["stratum"].as_str().unwrap())
            .unwrap();
        let q = StratumQuery::new(GroupKind::Pgl, n, r, Some(stratum)).unwrap();
        let poly = json_poly(row);
        assert_eq!(poly, engine.e_group(&q).unwrap());
        assert_eq!(row["degree"].as_u64().map(|d| d as usize), poly.degree());
        assert_eq!(
            row["euler_char"].to_string(),
            engine.euler_char(&q).unwrap().to_string()
        );
    }
}

#[test]
fn big_coefficients_survive_json() {
    // (x-1)^80 has coefficients near 10^23
    let out = charvar(&[
        "epoly", "--group", "gl", "--n", "1", "--r", "80", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let poly = json_poly(&v);
    let engine = CharVarEngine::new();
    let expected = engine
        .e_group(&StratumQuery::whole(GroupKind::Gl, 1, 80).unwrap())
        .unwrap();
    assert!(expected.coeffs().iter().any(|c| c.numer().bits() > 64));
    assert_eq!(poly, expected);
}

#[test]
fn csv_roundtrip() {
    let out = charvar(&[
        "table",
        "--group",
        "sl",
        "--n-max",
        "4",
        "--r-max",
        "3",
        "--per-stratum",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        [
            "group",
            "n",
            "r",
            "stratum",
            "degree",
            "euler_char",
            "coefficients"
        ]
    );
    let engine = CharVarEngine::new();
    let mut count = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        assert_eq!(&rec[0], "SL");
        let n: usize = rec[1].parse().unwrap();
        let r: usize = rec[2].parse().unwrap();
        let stratum = enumerate_partitions(n)
            .into_iter()
            .find(|m| m.to_string() == rec[3])
            .unwrap();
        let poly = from_big(
            rec[6]
                .split_whitespace()
                .map(|c| c.parse().unwrap())
                .collect(),
        );
        let q = StratumQuery::new(GroupKind::Sl, n, r, Some(stratum)).unwrap();
        assert_eq!(poly, engine.e_group(&q).unwrap());
        assert_eq!(
            rec[5].to_string(),
            engine.euler_char(&q).unwrap().to_string()
        );
        count += 1;
    }
    assert_eq!(count, 3 * (1 + 2 + 3 + 5));
}

/// Reads back `(x-1)^{v}\left(terms\right)` as printed by the LaTeX format.
fn parse_latex(s: &str) -> RatPoly {
    let s = s.trim();
    if s == "0" {
        return RatPoly::zero();
    }
    let (v, rest) = if let Some(rest) = s.strip_prefix("(x-1)") {
        match rest.strip_prefix("^{") {
            Some(r) => {
                let end = r.find('}').unwrap();
                (r[..end].parse::<usize>().unwrap(), &r[end + 1..])
            }
            None => (1, rest),
        }
    } else {
        (0, s)
    };
    let terms = rest
        .strip_prefix("\\left(")
        .and_then(|r| r.strip_suffix("\\right)"))
        .unwrap_or(rest);
    let cofactor = if terms.is_empty() {
        RatPoly::one()
    } else {
        parse_terms(terms)
    };
    cofactor * RatPoly::x_minus_one_pow(v)
}

fn parse_terms(s: &str) -> RatPoly {
    let mut total = RatPoly::zero();
    for term in s.replace(" - ", " + -").split(" + ") {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, term),
        };
        let (coeff, power) = match body.find('x') {
            Some(i) => {
                let c = if i == 0 {
                    BigInt::from(1)
                } else {
                    body[..i].parse().unwrap()
                };
                let p = match body[i + 1..].strip_prefix("^{") {
                    Some(r) => r.trim_end_matches('}').parse().unwrap(),
                    None => 1,
                };
                (c, p)
            }
            None => (body.parse().unwrap(), 0),
        };
        total = total + RatPoly::monomial(BigRational::from_integer(coeff * sign), power);
    }
    total
}

#[test]
fn latex_roundtrip() {
    let out = charvar(&[
        "table",
        "--group",
        "gl",
        "--n-max",
        "4",
        "--r-max",
        "3",
        "--per-stratum",
        "--format",
        "latex",
    ]);
    let text = stdout(&out);
    let engine = CharVarEngine::new();
    let mut lines = text.lines();
    for n in 1..=4 {
        for r in 1..=3 {
            for m in enumerate_partitions(n) {
                let line = lines.next().unwrap();
                let rhs = line.split_once(" = ").unwrap().1;
                assert_eq!(parse_latex(rhs), engine.e_gl_stratum(r, &m), "{line}");
            }
        }
    }
    assert!(lines.next().is_none());
}

#[test]
fn table_is_deterministic_across_threads() {
    for format in ["human", "json", "csv", "latex"] {
        let args = [
            "table",
            "--group",
            "sl",
            "--n-max",
            "4",
            "--r-max",
            "4",
            "--per-stratum",
            "--format",
            format,
        ];
        let one = charvar_env(&args, Some("1"));
        let many = charvar_env(&args, Some("8"));
        let again = charvar_env(&args, None);
        assert_eq!(stdout(&one), stdout(&many), "{format}");
        assert_eq!(stdout(&one), stdout(&again), "{format}");
    }
}

fn error_name(args: &[&str]) -> String {
    let out = charvar(args);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    let start = err.find("error[").expect("error tag") + 6;
    err[start..start + err[start..].find(']').unwrap()].to_string()
}

#[test]
fn errors_are_named() {
    let base = [
        "epoly",
        "--group",
        "sl",
        "--n",
        "4",
        "--r",
        "2",
        "--stratum",
    ];
    let with = |s: &'static str| {
        let mut v = base.to_vec();
        v.push(s);
        v
    };
    assert_eq!(error_name(&with("1^2 2 1")), "SumMismatch");
    assert_eq!(error_name(&with("1^x")), "SyntaxError");
    assert_eq!(error_name(&with("0 4")), "ZeroPart");
    assert_eq!(
        error_name(&["verify", "--n", "2", "--r", "2", "--q", "6"]),
        "UnsupportedField"
    );
    assert_eq!(
        error_name(&["verify", "--n", "3", "--r", "2", "--q", "7"]),
        "TooLarge"
    );
    assert_eq!(
        error_name(&["epoly", "--group", "gl", "--n", "0", "--r", "2"]),
        "InvalidInput"
    );
    let out = charvar_env(
        &["euler", "--group", "sl", "--n", "2", "--r", "2"],
        Some("lots"),
    );
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("error[InvalidThreads]"));
}

#[test]
fn verify_reports_rows() {
    let text = stdout(&charvar(&[
        "verify", "--n", "2", "--r", "2", "--q", "3", "--q", "5",
    ]));
    assert!(text.contains("  68  yes"), "{text}");
    assert!(text.contains(" 1584  yes"), "{text}");
    assert!(text.ends_with("verdict: pass\n"));
}

#[test]
fn selftest_subset() {
    let text = stdout(&charvar(&[
        "selftest",
        "--criterion",
        "3",
        "--criterion",
        "9",
    ]));
    assert_eq!(
        text.lines().filter(|l| l.contains(" PASS ")).count(),
        2,
        "{text}"
    );
    assert_eq!(
        error_name(&["selftest", "--criterion", "12"]),
        "SelftestFailed"
    );
}
