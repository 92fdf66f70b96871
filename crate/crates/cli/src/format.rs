//! Output formats. Everything except `human` carries the full ascending
//! coefficient list and can be parsed back.

use std::fmt::Write as _;
use std::str::FromStr;

use charvar_core::{GroupKind, Partition, RatPoly};
use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
    Latex,
}

/// What the human and LaTeX formats lead with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Polynomial,
    EulerChar,
}

/// One computed cell: a polynomial with integer coefficients and its value
/// at `x = 1`.
#[derive(Clone, Debug)]
pub struct Record {
    pub group: GroupKind,
    pub n: usize,
    pub r: usize,
    pub stratum: Option<Partition>,
    pub coefficients: Vec<BigInt>,
    pub euler_char: BigInt,
}

impl Record {
    pub fn new(
        group: GroupKind,
        n: usize,
        r: usize,
        stratum: Option<Partition>,
        poly: &RatPoly,
    ) -> Option<Self> {
        let coefficients = poly.integer_coeffs()?;
        let euler_char = coefficients.iter().sum();
        Some(Self {
            group,
            n,
            r,
            stratum,
            coefficients,
            euler_char,
        })
    }

    pub fn poly(&self) -> RatPoly {
        RatPoly::from_coeffs(
            self.coefficients
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        )
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    fn label(&self) -> String {
        let mut s = format!("{}_{} r={}", self.group, self.n, self.r);
        if let Some(m) = &self.stratum {
            write!(s, " [{m}]").unwrap();
        }
        s
    }

    fn to_json(&self) -> Value {
        let big =
            |v: &BigInt| Value::Number(Number::from_str(&v.to_string()).expect("integer literal"));
        let mut obj = Map::new();
        obj.insert("group".into(), self.group.as_str().into());
        obj.insert("n".into(), self.n.into());
        obj.insert("r".into(), self.r.into());
        if let Some(m) = &self.stratum {
            obj.insert("stratum".into(), m.to_string().into());
        }
        obj.insert("variable".into(), "x".into());
        obj.insert(
            "coefficients".into(),
            Value::Array(self.coefficients.iter().map(big).collect()),
        );
        obj.insert(
            "degree".into(),
            self.degree().map_or(Value::Null, |d| d.into()),
        );
        obj.insert("euler_char".into(), big(&self.euler_char));
        Value::Object(obj)
    }
}

pub const CSV_HEADER: [&str; 7] = [
    "group",
    "n",
    "r",
    "stratum",
    "degree",
    "euler_char",
    "coefficients",
];

/// Renders one record (`single`) or a table of them.
pub fn render(
    records: &[Record],
    format: Format,
    quantity: Quantity,
    single: bool,
) -> Result<String, csv::Error> {
    let mut out = String::new();
    match format {
        Format::Human => {
            for rec in records {
                let poly = rec.poly();
                match (single, quantity) {
                    (true, Quantity::Polynomial) => writeln!(out, "{poly}"),
                    (true, Quantity::EulerChar) => writeln!(out, "{}", rec.euler_char),
                    (false, Quantity::Polynomial) => {
                        writeln!(out, "{}: {poly}  (chi = {})", rec.label(), rec.euler_char)
                    }
                    (false, Quantity::EulerChar) => {
                        writeln!(out, "{}: {}", rec.label(), rec.euler_char)
                    }
                }
                .unwrap();
            }
        }
        Format::Json => {
            let value = if single && records.len() == 1 {
                records[0].to_json()
            } else {
                Value::Array(records.iter().map(Record::to_json).collect())
            };
            writeln!(out, "{value}").unwrap();
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for rec in records {
                let coeffs: Vec<String> =
                    rec.coefficients.iter().map(ToString::to_string).collect();
                w.write_record([
                    rec.group.as_str().to_string(),
                    rec.n.to_string(),
                    rec.r.to_string(),
                    rec.stratum
                        .as_ref()
                        .map(ToString::to_string)
                        .unwrap_or_default(),
                    rec.degree().map(|d| d.to_string()).unwrap_or_default(),
                    rec.euler_char.to_string(),
                    coeffs.join(" "),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            out = String::from_utf8(bytes).expect("csv output is utf-8");
        }
        Format::Latex => {
            for rec in records {
                let lhs = latex_label(rec);
                match quantity {
                    Quantity::Polynomial => writeln!(out, "e({lhs}) = {}", latex_poly(&rec.poly())),
                    Quantity::EulerChar => writeln!(out, "\\chi({lhs}) = {}", rec.euler_char),
                }
                .unwrap();
            }
        }
    }
    Ok(out)
}

fn latex_label(rec: &Record) -> String {
    let stratum = match &rec.stratum {
        Some(m) => {
            let parts: Vec<String> = m
                .blocks()
                .map(|(j, k)| {
                    if k == 1 {
                        j.to_string()
                    } else {
                        format!("{j}^{{{k}}}")
                    }
                })
                .collect();
            format!("^{{[{}]}}", parts.join("\\,"))
        }
        None => String::new(),
    };
    format!(
        "\\mathcal{{X}}_{{{}}}{stratum}{}_{{{}}}",
        rec.r, rec.group, rec.n
    )
}

/// `(x-1)^{v}\left(q\right)` with `v` the order of vanishing at `x = 1`.
pub fn latex_poly(p: &RatPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let one = BigRational::one();
    let x_minus_one = RatPoly::x_minus_one_pow(1);
    let mut q = p.clone();
    let mut v = 0;
    while q.eval(&one).is_zero() {
        q = q.exact_div(&x_minus_one).expect("root at 1 divides");
        v += 1;
    }
    let factor = match v {
        0 => String::new(),
        1 => "(x-1)".into(),
        _ => format!("(x-1)^{{{v}}}"),
    };
    if v == 0 {
        latex_terms(&q)
    } else if q == RatPoly::one() {
        factor
    } else {
        format!("{factor}\\left({}\\right)", latex_terms(&q))
    }
}

fn latex_terms(p: &RatPoly) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            write!(out, " {sign} ").unwrap();
        }
        let a = c.abs();
        let coeff = if a.is_integer() {
            a.to_integer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
        };
        let var = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{{{k}}}"),
        };
        if var.is_empty() {
            out.push_str(&coeff);
        } else if a.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&coeff);
            out.push_str(&var);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(poly: RatPoly, stratum: Option<Partition>) -> Record {
        Record::new(GroupKind::Sl, 4, 2, stratum, &poly).unwrap()
    }

    #[test]
    fn latex_groups_the_root_at_one() {
        let p = RatPoly::from_ints([1, 0, 1]) * RatPoly::x_minus_one_pow(3);
        assert_eq!(latex_poly(&p), "(x-1)^{3}\\left(x^{2} + 1\\right)");
        assert_eq!(latex_poly(&RatPoly::x_minus_one_pow(1)), "(x-1)");
        assert_eq!(
            latex_poly(&RatPoly::from_ints([-1, -2, 0, 1])),
            "x^{3} - 2x - 1"
        );
        assert_eq!(latex_poly(&RatPoly::zero()), "0");
    }

    #[test]
    fn json_schema() {
        let r = rec(RatPoly::from_ints([0, 0, 0, 1]), None);
        let v = r.to_json();
        assert_eq!(v["group"], "SL");
        assert_eq!(v["variable"], "x");
        assert_eq!(v["degree"], 3);
        assert_eq!(v["euler_char"], 1);
        assert!(v.get("stratum").is_none());
        let s = rec(RatPoly::zero(), Some(Partition::uniform(4, 2).unwrap()));
        let v = s.to_json();
        assert_eq!(v["stratum"], "2^2");
        assert_eq!(v["degree"], Value::Null);
        assert_eq!(v["coefficients"], Value::Array(vec![]));
    }

    #[test]
    fn human_single() {
        let r = rec(RatPoly::from_ints([-1, 0, -1, 1]), None);
        let poly = render(
            std::slice::from_ref(&r),
            Format::Human,
            Quantity::Polynomial,
            true,
        )
        .unwrap();
        assert_eq!(poly, "x^3 - x^2 - 1\n");
        let chi = render(&[r], Format::Human, Quantity::EulerChar, true).unwrap();
        assert_eq!(chi, "-1\n");
    }

    #[test]
    fn latex_labels() {
        let r = rec(
            RatPoly::one(),
            Some(Partition::from_parts(&[1, 1, 2]).unwrap()),
        );
        assert_eq!(latex_label(&r), "\\mathcal{X}_{2}^{[1^{2}\\,2]}SL_{4}");
    }
}
