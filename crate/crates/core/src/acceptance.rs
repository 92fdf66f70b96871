//! End-to-end invariant suite, shared by the `acceptance` test target and the
//! command-line `selftest`.
//!
//! Each criterion runs a fixed grid of exact checks and reports every failing
//! case, so a red result says where the disagreement is.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charvar::{
    b_poly_closed, b_poly_series, predicted_euler_char, CharVarEngine, GroupKind, StratumQuery,
};
use crate::closed_forms::{self, first_mismatch};
use crate::fforacle::{self, Verdict};
use crate::partitions::{enumerate_partitions, Partition};
use crate::plethystic::{
    adams, adams_inverse, divisors, moebius, pexp, plog, plog_closed, totient,
};
use crate::poly::RatPoly;
use crate::series::TruncSeries;

pub const CRITERIA: usize = 11;

const CROSS_PATH_BUDGET: Duration = Duration::from_secs(60);
const ORACLE_BUDGET: Duration = Duration::from_secs(600);
const RANDOM_CASES: usize = 200;
const RANDOM_ORDER: usize = 8;
const RANDOM_SEED: u64 = 0x5eed_c0de;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// Passed, with tolerated discrepancies listed in the notes.
    Warn,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub status: Status,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// The one-line summary.
    pub fn summary(&self) -> String {
        format!(
            "criterion {:>2} {} {} ({} checks, {} failed, {:.2}s)",
            self.id,
            self.status.as_str(),
            self.title,
            self.checks,
            self.failures.len(),
            self.elapsed.as_secs_f64()
        )
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summary())?;
        for line in &self.failures {
            write!(f, "\n    fail: {line}")?;
        }
        for line in &self.notes {
            write!(f, "\n    note: {line}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.checks += 1;
        self.failures.push(msg);
    }
}

pub fn title(id: usize) -> &'static str {
    match id {
        1 => "closed and series paths for B_n agree",
        2 => "published closed forms of B_n, n <= 4",
        3 => "published closed form of e(SL_3)",
        4 => "published closed form of e(SL_4)",
        5 => "degree, leading coefficient and B_n(1) = 0",
        6 => "strata divisible by (x-1)^r with integer quotients",
        7 => "PExp of irreducible series gives the GL series",
        8 => "Euler characteristics of SL and GL strata",
        9 => "Euler characteristics for n = 4 and prime n",
        10 => "finite-field point counts",
        11 => "plethystic identities on random series",
        _ => "unknown criterion",
    }
}

/// Runs one criterion (`1..=CRITERIA`).
pub fn run(id: usize, engine: &CharVarEngine) -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::default();
    match id {
        1 => cross_path(&mut tally, start),
        2 => irreducible_forms(&mut tally, engine),
        3 => sl_form(&mut tally, engine, 3, 1..=4),
        4 => sl_form(&mut tally, engine, 4, 1..=2),
        5 => degree_normalization(&mut tally, engine),
        6 => divisibility(&mut tally, engine),
        7 => pexp_identity(&mut tally, engine),
        8 => euler_chars(&mut tally, engine),
        9 => euler_examples(&mut tally, engine),
        10 => oracle(&mut tally, engine, start),
        11 => plethystic_suite(&mut tally),
        _ => tally.fail(format!("no criterion {id}")),
    }
    let status = if !tally.failures.is_empty() {
        Status::Fail
    } else if !tally.notes.is_empty() {
        Status::Warn
    } else {
        Status::Pass
    };
    CriterionReport {
        id,
        title: title(id),
        status,
        checks: tally.checks,
        failures: tally.failures,
        notes: tally.notes,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(engine: &CharVarEngine) -> Vec<CriterionReport> {
    (1..=CRITERIA).map(|id| run(id, engine)).collect()
}

fn cross_path(t: &mut Tally, start: Instant) {
    for r in 2..=4 {
        let series = b_poly_series(6, r);
        for n in 1..=6 {
            let closed = b_poly_closed(n, r);
            t.check(closed == series[n - 1], || {
                let m = first_mismatch(&closed, &series[n - 1]).expect("unequal");
                format!(
                    "n = {n}, r = {r}: closed vs series differ at x^{}",
                    m.degree
                )
            });
        }
    }
    let elapsed = start.elapsed();
    t.check(elapsed < CROSS_PATH_BUDGET, || {
        format!(
            "took {:.1}s, budget {}s",
            elapsed.as_secs_f64(),
            CROSS_PATH_BUDGET.as_secs()
        )
    });
}

fn irreducible_forms(t: &mut Tally, engine: &CharVarEngine) {
    for n in 1..=4 {
        let form = closed_forms::irreducible(n).expect("n <= 4");
        for r in 2..=5 {
            let printed = form.eval(r - 1);
            let computed = engine.irreducible(n, r);
            t.check(printed == computed, || {
                let m = first_mismatch(&printed, &computed).expect("unequal");
                format!("B_{n} at r = {r}: {m}")
            });
        }
    }
}

fn sl_form(
    t: &mut Tally,
    engine: &CharVarEngine,
    n: usize,
    s_range: std::ops::RangeInclusive<usize>,
) {
    let form = if n == 3 {
        closed_forms::sl3()
    } else {
        closed_forms::sl4()
    };
    for s in s_range {
        let printed = form.eval(s);
        let query = StratumQuery::whole(GroupKind::Sl, n, s + 1).expect("valid query");
        match engine.e_group(&query) {
            Ok(computed) => t.check(printed == computed, || {
                let m = first_mismatch(&printed, &computed).expect("unequal");
                format!("SL_{n} at s = {s}: {m}")
            }),
            Err(e) => t.fail(format!("SL_{n} at s = {s}: {e}")),
        }
        if !printed.is_integral() {
            t.notes.push(format!(
                "printed form at s = {s} has non-integer coefficients"
            ));
        }
    }
}

fn degree_normalization(t: &mut Tally, engine: &CharVarEngine) {
    let one = BigRational::one();
    for r in 2..=4 {
        let list = engine.irreducible_list(8, r);
        for (i, b) in list.iter().take(8).enumerate() {
            let n = i + 1;
            let expected = n * n * (r - 1) + 1;
            t.check(b.degree() == Some(expected), || {
                format!("deg B_{n}^{r} = {:?}, expected {expected}", b.degree())
            });
            t.check(b.leading_coeff() == Some(&one), || {
                format!(
                    "B_{n}^{r} leading coefficient {:?}",
                    b.leading_coeff().map(|c| c.to_string())
                )
            });
            t.check(b.eval(&one).is_zero(), || format!("B_{n}^{r}(1) != 0"));
        }
    }
}

fn divisibility(t: &mut Tally, engine: &CharVarEngine) {
    for r in 1..=4 {
        let divisor = RatPoly::x_minus_one_pow(r);
        for n in 1..=6 {
            for (m, e) in engine.e_gl_strata(n, r) {
                t.check(e.is_integral(), || {
                    format!("GL_{n} stratum [{m}], r = {r}: non-integer coefficients")
                });
                match e.exact_div(&divisor) {
                    Ok(q) => t.check(q.is_integral(), || {
                        format!(
                            "GL_{n} stratum [{m}], r = {r}: quotient has non-integer coefficients"
                        )
                    }),
                    Err(err) => t.fail(format!("GL_{n} stratum [{m}], r = {r}: {err}")),
                }
            }
        }
    }
}

fn pexp_identity(t: &mut Tally, engine: &CharVarEngine) {
    const ORDER: usize = 6;
    for r in 1..=4 {
        let irr = engine.irreducible_list(ORDER, r);
        let b = TruncSeries::from_coeffs(
            ORDER,
            std::iter::once(RatPoly::zero()).chain(irr.iter().take(ORDER).cloned()),
        );
        let totals = TruncSeries::from_coeffs(
            ORDER,
            std::iter::once(RatPoly::one()).chain((1..=ORDER).map(|n| engine.e_gl_total(n, r))),
        );
        match pexp(&b) {
            Ok(lhs) => {
                for n in 0..=ORDER {
                    t.check(lhs.coeff(n) == totals.coeff(n), || {
                        format!("r = {r}: coefficient of t^{n} differs")
                    });
                }
            }
            Err(e) => t.fail(format!("r = {r}: {e}")),
        }
    }
}

fn euler_chars(t: &mut Tally, engine: &CharVarEngine) {
    for r in 2..=5 {
        for n in 1..=8 {
            let nn = BigInt::from(n);
            let whole = StratumQuery::whole(GroupKind::Sl, n, r).expect("valid query");
            let expected = BigInt::from(totient(n as u64)) * num_traits::pow(nn.clone(), r - 2);
            compare_chi(t, engine, &whole, &BigRational::from_integer(expected));
            for m in enumerate_partitions(n) {
                let sl = StratumQuery::new(GroupKind::Sl, n, r, Some(m.clone())).expect("valid");
                let expected = match m.uniform_part() {
                    Some(d) => BigRational::new(
                        BigInt::from(moebius(d as u64)) * num_traits::pow(nn.clone(), r - 1),
                        BigInt::from(d),
                    ),
                    None => BigRational::zero(),
                };
                compare_chi(t, engine, &sl, &expected);
                let gl = StratumQuery::new(GroupKind::Gl, n, r, Some(m)).expect("valid");
                compare_chi(t, engine, &gl, &BigRational::zero());
            }
        }
    }
}

fn compare_chi(t: &mut Tally, engine: &CharVarEngine, q: &StratumQuery, expected: &BigRational) {
    let label = describe(q);
    match engine.euler_char(q) {
        Ok(chi) => t.check(BigRational::from_integer(chi.clone()) == *expected, || {
            format!("{label}: chi = {chi}, expected {expected}")
        }),
        Err(e) => t.fail(format!("{label}: {e}")),
    }
}

fn describe(q: &StratumQuery) -> String {
    match &q.stratum {
        Some(m) => format!("{}_{} [{m}], r = {}", q.group, q.n, q.r),
        None => format!("{}_{}, r = {}", q.group, q.n, q.r),
    }
}

fn euler_examples(t: &mut Tally, engine: &CharVarEngine) {
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    for r in 2..=5u32 {
        let four = |e: u32| 4i64.pow(e);
        let cases = [
            (
                Some(Partition::uniform(4, 1).expect("1 | 4")),
                int(four(r - 1)),
            ),
            (
                Some(Partition::uniform(4, 2).expect("2 | 4")),
                int(-2 * four(r - 2)),
            ),
            (None, int(2 * four(r - 2))),
        ];
        for (stratum, expected) in cases {
            let q = StratumQuery::new(GroupKind::Sl, 4, r as usize, stratum).expect("valid");
            compare_chi(t, engine, &q, &expected);
        }
        for p in [2i64, 3, 5, 7] {
            let pn = p as usize;
            let cases = [
                (Partition::uniform(pn, 1).expect("valid"), int(p.pow(r - 1))),
                (
                    Partition::uniform(pn, pn).expect("valid"),
                    int(-p.pow(r - 2)),
                ),
            ];
            for (m, expected) in cases {
                let q = StratumQuery::new(GroupKind::Sl, pn, r as usize, Some(m)).expect("valid");
                compare_chi(t, engine, &q, &expected);
            }
            // the closed formula agrees on the same cases
            let whole = StratumQuery::whole(GroupKind::Sl, pn, r as usize).expect("valid");
            t.check(
                predicted_euler_char(&whole) == int((p - 1) * p.pow(r - 2)),
                || format!("closed chi formula for SL_{p}, r = {r}"),
            );
        }
    }
    // divisor sums of the stratum values recover the whole variety
    for n in [4usize, 6, 8] {
        let total: BigRational = divisors(n as u64)
            .iter()
            .map(|&d| {
                let q = StratumQuery::new(
                    GroupKind::Sl,
                    n,
                    3,
                    Some(Partition::uniform(n, d as usize).expect("d | n")),
                )
                .expect("valid");
                predicted_euler_char(&q)
            })
            .sum();
        let whole = StratumQuery::whole(GroupKind::Sl, n, 3).expect("valid");
        t.check(total == predicted_euler_char(&whole), || {
            format!("stratum sum for n = {n}")
        });
    }
}

/// `(n, r, field sizes)` compared against `B_n^r(q)`.
pub const ORACLE_CASES: [(usize, usize, &[u32]); 4] = [
    (1, 2, &[2, 3, 4, 5, 7]),
    (2, 2, &[2, 3, 4, 5]),
    (2, 3, &[2, 3]),
    (3, 2, &[2]),
];

fn oracle(t: &mut Tally, engine: &CharVarEngine, start: Instant) {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(1).build() {
        Ok(pool) => pool,
        Err(e) => return t.fail(format!("thread pool: {e}")),
    };
    for (n, r, qs) in ORACLE_CASES {
        match pool.install(|| fforacle::verify(n, r, qs, engine)) {
            Ok(report) => {
                for row in &report.rows {
                    let msg = format!(
                        "n = {n}, r = {r}, q = {}: counted {}, B_n(q) = {}",
                        row.q, row.classes, row.symbolic
                    );
                    if row.matches {
                        t.check(true, String::new);
                    } else if report.verdict == Verdict::Warning {
                        t.checks += 1;
                        t.notes.push(msg);
                    } else {
                        t.fail(msg);
                    }
                }
            }
            Err(e) => t.fail(format!("n = {n}, r = {r}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    t.check(elapsed < ORACLE_BUDGET, || {
        format!(
            "took {:.1}s single-threaded, budget {}s",
            elapsed.as_secs_f64(),
            ORACLE_BUDGET.as_secs()
        )
    });
}

fn random_poly(rng: &mut ChaCha8Rng) -> RatPoly {
    let degree = rng.random_range(0..=3);
    RatPoly::from_ints((0..=degree).map(|_| rng.random_range(-3i64..=3)))
}

/// A series with zero constant term and random integer-polynomial coefficients.
fn random_series(rng: &mut ChaCha8Rng) -> TruncSeries {
    TruncSeries::from_coeffs(
        RANDOM_ORDER,
        std::iter::once(RatPoly::zero()).chain((1..=RANDOM_ORDER).map(|_| random_poly(rng))),
    )
}

fn plethystic_suite(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let one = TruncSeries::one(RANDOM_ORDER);
    for case in 0..RANDOM_CASES {
        let f = random_series(&mut rng);
        let g = random_series(&mut rng);
        let unit = &one + &f;

        let roundtrip = pexp(&f).and_then(|e| plog(&e));
        t.check(roundtrip.ok().as_ref() == Some(&f), || {
            format!("case {case}: plog(pexp(f)) != f")
        });
        let roundtrip = plog(&unit).and_then(|l| pexp(&l));
        t.check(roundtrip.ok().as_ref() == Some(&unit), || {
            format!("case {case}: pexp(plog(1 + f)) != 1 + f")
        });

        let lhs = pexp(&(&f + &g));
        let rhs = pexp(&f).and_then(|a| a.mul(&pexp(&g)?));
        t.check(lhs.is_ok() && lhs.ok() == rhs.ok(), || {
            format!("case {case}: pexp(f + g) != pexp(f) pexp(g)")
        });

        let a = adams(&f).and_then(|a| adams_inverse(&a));
        t.check(a.ok().as_ref() == Some(&f), || {
            format!("case {case}: adams_inverse(adams(f)) != f")
        });
        let a = adams_inverse(&f).and_then(|a| adams(&a));
        t.check(a.ok().as_ref() == Some(&f), || {
            format!("case {case}: adams(adams_inverse(f)) != f")
        });

        let l = plog(&unit);
        t.check(l.is_ok() && l.ok() == plog_closed(&unit).ok(), || {
            format!("case {case}: plog and closed plog differ")
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_lines() {
        let report = CriterionReport {
            id: 3,
            title: title(3),
            status: Status::Fail,
            checks: 4,
            failures: vec!["x".into()],
            notes: vec![],
            elapsed: Duration::from_millis(1500),
        };
        assert_eq!(
            report.summary(),
            "criterion  3 FAIL published closed form of e(SL_3) (4 checks, 1 failed, 1.50s)"
        );
        assert_eq!(report.to_string().lines().count(), 2);
        assert!(!report.passed());
    }

    #[test]
    fn unknown_criterion_fails() {
        let engine = CharVarEngine::new();
        assert!(!run(12, &engine).passed());
    }

    #[test]
    fn fast_criteria_pass() {
        let engine = CharVarEngine::new();
        for id in [3, 9] {
            let report = run(id, &engine);
            assert!(report.passed(), "{report}");
        }
    }
}
