//! Stratum labels in exponent notation: `"1^2 2"` is the partition 1 + 1 + 2.
//!
//! Grammar: `PART (SPACE PART)*` with `PART := INT ("^" INT)?`. Repeated part
//! sizes accumulate.

use charvar_core::Partition;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("cannot parse stratum {text:?}: {reason}")]
    SyntaxError { text: String, reason: String },
    #[error("stratum {text:?} has size {sum}, expected {n}")]
    SumMismatch { text: String, sum: usize, n: usize },
    #[error("stratum {text:?} has a zero part or exponent")]
    ZeroPart { text: String },
}

impl PartitionError {
    pub fn name(&self) -> &'static str {
        match self {
            PartitionError::SyntaxError { .. } => "SyntaxError",
            PartitionError::SumMismatch { .. } => "SumMismatch",
            PartitionError::ZeroPart { .. } => "ZeroPart",
        }
    }
}

pub fn parse_partition(text: &str, n: usize) -> Result<Partition, PartitionError> {
    let syntax = |reason: String| PartitionError::SyntaxError {
        text: text.to_string(),
        reason,
    };
    let int = |token: &str| -> Result<usize, PartitionError> {
        if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax(format!("expected an integer, found {token:?}")));
        }
        token
            .parse()
            .map_err(|_| syntax(format!("integer {token} is too large")))
    };

    let mut mult = vec![0usize; n];
    let mut sum = 0usize;
    let mut any = false;
    for token in text.split_ascii_whitespace() {
        any = true;
        let (part, exp) = match token.split_once('^') {
            Some((p, e)) => (int(p)?, int(e)?),
            None => (int(token)?, 1),
        };
        if part == 0 || exp == 0 {
            return Err(PartitionError::ZeroPart {
                text: text.to_string(),
            });
        }
        sum = part
            .checked_mul(exp)
            .and_then(|a| sum.checked_add(a))
            .ok_or_else(|| syntax("partition size overflows".into()))?;
        if part <= n {
            mult[part - 1] += exp;
        }
    }
    if !any {
        return Err(syntax("empty stratum".into()));
    }
    if sum != n {
        return Err(PartitionError::SumMismatch {
            text: text.to_string(),
            sum,
            n,
        });
    }
    Partition::from_multiplicities(n, &mult).map_err(|e| syntax(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = parse_partition("1^2 2", 4).unwrap();
        assert_eq!(p.multiplicities(), &[2, 1, 0, 0]);
        assert_eq!(
            parse_partition("4", 4).unwrap(),
            Partition::uniform(4, 4).unwrap()
        );
        assert_eq!(
            parse_partition("1^2 2", 5).unwrap_err().name(),
            "SumMismatch"
        );
    }

    #[test]
    fn errors() {
        for (text, name) in [
            ("", "SyntaxError"),
            ("   ", "SyntaxError"),
            ("1^", "SyntaxError"),
            ("^2", "SyntaxError"),
            ("a", "SyntaxError"),
            ("1^2^3", "SyntaxError"),
            ("-1 5", "SyntaxError"),
            ("0 4", "ZeroPart"),
            ("2^0 4", "ZeroPart"),
            ("5", "SumMismatch"),
            ("99999999999999999999", "SyntaxError"),
        ] {
            assert_eq!(
                parse_partition(text, 4).unwrap_err().name(),
                name,
                "{text:?}"
            );
        }
    }

    #[test]
    fn repeated_parts_accumulate() {
        assert_eq!(
            parse_partition("1 1 2", 4).unwrap(),
            parse_partition("1^2 2", 4).unwrap()
        );
    }

    #[test]
    fn display_roundtrip() {
        for n in 1..=7 {
            for p in charvar_core::partitions::enumerate_partitions(n) {
                assert_eq!(parse_partition(&p.to_string(), n).unwrap(), p);
            }
        }
    }
}
