//! Published closed forms in the rank parameter `s = r - 1`, kept as symbolic
//! expressions so they can be checked against the pipeline for any `s`.
//!
//! The expressions are transcribed term for term as printed, including any
//! misprints. Comparing them with computed polynomials is the point; do not
//! "fix" them here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::poly::RatPoly;

/// A polynomial expression in `x` whose exponents may depend on `s`.
#[derive(Clone, Debug)]
pub enum Expr {
    Poly(RatPoly),
    /// `base^(a*s + b)`
    Pow(Box<Expr>, usize, usize),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
}

impl Expr {
    pub fn ints(coeffs: &[i64]) -> Self {
        Expr::Poly(RatPoly::from_ints(coeffs.iter().copied()))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Expr::Poly(RatPoly::constant(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// `self^(a*s + b)`
    pub fn pow(&self, a: usize, b: usize) -> Self {
        Expr::Pow(Box::new(self.clone()), a, b)
    }

    pub fn eval(&self, s: usize) -> RatPoly {
        match self {
            Expr::Poly(p) => p.clone(),
            Expr::Pow(base, a, b) => base.eval(s).pow(a * s + b),
            Expr::Sum(terms) => terms.iter().map(|t| t.eval(s)).sum(),
            Expr::Prod(factors) => factors.iter().map(|f| f.eval(s)).product(),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        match self {
            Expr::Sum(mut terms) => {
                terms.push(rhs);
                Expr::Sum(terms)
            }
            lhs => Expr::Sum(vec![lhs, rhs]),
        }
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::ints(&[-1]) * self
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        match self {
            Expr::Prod(mut factors) => {
                factors.push(rhs);
                Expr::Prod(factors)
            }
            lhs => Expr::Prod(vec![lhs, rhs]),
        }
    }
}

/// Bases that recur in every formula.
struct Bases {
    x: Expr,
    one: Expr,
    /// x - 1
    xm1: Expr,
    /// x + 1
    xp1: Expr,
    /// x^2 + 1
    x2p1: Expr,
    /// x^2 - 1
    x2m1: Expr,
    /// x^2 + x + 1
    cyc3: Expr,
    /// x^3 + x^2 + x + 1
    cyc4: Expr,
}

fn bases() -> Bases {
    Bases {
        x: Expr::ints(&[0, 1]),
        one: Expr::ints(&[1]),
        xm1: Expr::ints(&[-1, 1]),
        xp1: Expr::ints(&[1, 1]),
        x2p1: Expr::ints(&[1, 0, 1]),
        x2m1: Expr::ints(&[-1, 0, 1]),
        cyc3: Expr::ints(&[1, 1, 1]),
        cyc4: Expr::ints(&[1, 1, 1, 1]),
    }
}

/// Closed form of `B_n^{s+1}` for `n` in `1..=4`.
pub fn irreducible(n: usize) -> Option<Expr> {
    let Bases {
        x,
        one,
        xm1,
        xp1,
        x2p1,
        x2m1,
        cyc3,
        cyc4,
    } = bases();
    let h = || Expr::frac(1, 2);
    let body = match n {
        1 => xm1.pow(1, 0),
        2 => {
            xm1.pow(1, 0)
                * (xm1.pow(1, 0) * x.pow(1, 0) * (xp1.pow(1, 0) - one.clone())
                    + h() * xm1.pow(1, 0)
                    - h() * xp1.pow(1, 0))
        }
        3 => {
            let inner = Expr::frac(1, 3) - x.pow(1, 0)
                + x.pow(1, 0) * xp1.pow(1, 0)
                + x.pow(3, 0)
                + x.pow(3, 0) * xp1.pow(1, 0) * cyc3.pow(1, 0)
                - Expr::ints(&[2]) * x.pow(3, 0) * xp1.pow(1, 0);
            xm1.pow(1, 0) * (-Expr::frac(1, 3) * cyc3.pow(1, 0) + xm1.pow(2, 0) * inner)
        }
        4 => {
            let one_minus_xp1 = || one.clone() - xp1.pow(1, 0);
            let t1 = Expr::frac(1, 4) * xm1.pow(2, 0);
            let t2 = -Expr::frac(1, 4) * xp1.pow(2, 0);
            let t3 = x2m1.pow(1, 0) * x.pow(1, 0) * one_minus_xp1();
            let t4 = h() * xp1.pow(2, 0) * x.pow(2, 0) * (one.clone() - x2p1.pow(1, 0));
            let t5 = h() * xm1.pow(2, 0) * x.pow(2, 0) * one_minus_xp1().pow(0, 2);
            let t6 = -(xm1.pow(2, 0)
                * x.pow(3, 0)
                * (-(xp1.pow(1, 0) * cyc3.pow(1, 0)) + Expr::ints(&[2]) * xp1.pow(1, 0)
                    - one.clone()));
            let t7 = -(xm1.pow(2, 0)
                * x.pow(6, 0)
                * (-(xp1.pow(1, 0) * cyc3.pow(1, 0) * cyc4.pow(1, 0))
                    + Expr::ints(&[2]) * xp1.pow(1, 0) * cyc3.pow(1, 0)
                    + xp1.pow(2, 0)
                    - Expr::ints(&[3]) * xp1.pow(1, 0)
                    + one.clone()));
            xm1.pow(2, 0) * (t1 + t2 + t3 + t4 + t5 + t6 + t7)
        }
        _ => return None,
    };
    // each printed form is B_n / (x - 1)
    Some(xm1 * body)
}

/// Closed form of `e(X_{s+1} SL_3)`.
pub fn sl3() -> Expr {
    let Bases {
        x, xm1, xp1, cyc3, ..
    } = bases();
    Expr::frac(1, 2) * xm1.pow(1, 1) * xp1.pow(1, 0) * x.clone()
        + Expr::frac(1, 3) * cyc3.pow(1, 0) * x.clone() * xp1.clone()
        + xm1.pow(2, 0)
            * (xp1.pow(1, 0)
                * (x.pow(3, 0) * cyc3.pow(1, 0) + x.pow(1, 1) - Expr::ints(&[2]) * x.pow(3, 0))
                + x.pow(3, 0)
                - x.pow(1, 1)
                + Expr::frac(1, 6) * x.clone() * xp1.clone())
}

/// Closed form of `e(X_{s+1} SL_4)`, one summand per printed line.
pub fn sl4() -> Expr {
    let Bases {
        x,
        one,
        xm1,
        xp1,
        x2p1,
        cyc3,
        cyc4,
        ..
    } = bases();
    let c = Expr::frac;
    let two = || Expr::ints(&[2]);
    let lines = vec![
        xm1.pow(3, 1)
            * (xp1.pow(2, 0) * c(1, 2) * x.pow(2, 0)
                + xp1.pow(1, 0)
                    * (x.pow(3, 0) * cyc3.pow(1, 0) - two() * x.pow(3, 0) - x.pow(2, 0)
                        + c(3, 2) * x.pow(1, 0))),
        xm1.pow(3, 1) * (x.pow(3, 0) + c(1, 2) * x.pow(2, 0) - c(3, 2) * x.pow(1, 0) + c(11, 24))
            + c(1, 24) * xm1.pow(3, 3),
        xm1.pow(3, 0) * xp1.pow(2, 0) * (-x.pow(6, 0) + c(1, 2) * x.pow(2, 0)),
        xm1.pow(3, 0)
            * xp1.pow(1, 0)
            * x.pow(6, 0)
            * (cyc3.pow(1, 0) * cyc4.pow(1, 0) - two() * cyc3.pow(1, 0) + Expr::ints(&[3])),
        xm1.pow(3, 0)
            * xp1.pow(1, 0)
            * (x.pow(3, 0) * (cyc3.pow(1, 0) - two()) - x.pow(2, 0) + c(1, 2) * x.pow(1, 0)),
        xm1.pow(3, 0)
            * (-x.pow(6, 0) + x.pow(3, 0) + c(1, 2) * x.pow(2, 0) - c(1, 2) * x.pow(1, 0)
                + c(1, 2)),
        xm1.pow(2, 2) * c(1, 4) * xm1.pow(1, 1),
        xm1.pow(2, 1)
            * c(1, 2)
            * xp1.pow(1, 0)
            * (-(xp1.pow(1, 0) * x.pow(1, 0)) + x.pow(1, 0) - c(1, 2)),
        xm1.pow(2, 0) * xp1.pow(1, 0) * c(1, 2) * x.pow(1, 0) * (one.clone() - xp1.pow(1, 0)),
        xm1.pow(1, 1)
            * (xp1.clone() * c(1, 3) * x.clone() * cyc3.pow(1, 0)
                + c(1, 8) * xp1.pow(2, 0) * Expr::ints(&[2, 2, 1])),
        xm1.pow(1, 0)
            * xp1.pow(2, 0)
            * (c(1, 2) * x.pow(2, 1) * (x2p1.pow(1, 0) - one.clone()) + c(1, 4) * xm1.clone()),
        -(c(1, 4) * xp1.pow(1, 1) * x2p1.pow(1, 0)) + c(1, 4) * cyc4.pow(1, 1),
    ];
    Expr::Sum(lines)
}

/// The lowest-degree coefficient where a transcribed form and a computed
/// polynomial disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMismatch {
    pub degree: usize,
    pub transcribed: BigRational,
    pub pipeline: BigRational,
}

impl fmt::Display for CoeffMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coefficient of x^{}: transcribed {}, pipeline {}",
            self.degree, self.transcribed, self.pipeline
        )
    }
}

pub fn first_mismatch(transcribed: &RatPoly, pipeline: &RatPoly) -> Option<CoeffMismatch> {
    let len = transcribed.coeffs().len().max(pipeline.coeffs().len());
    (0..len).find_map(|k| {
        let (a, b) = (transcribed.coeff(k), pipeline.coeff(k));
        (a != b).then_some(CoeffMismatch {
            degree: k,
            transcribed: a,
            pipeline: b,
        })
    })
}
