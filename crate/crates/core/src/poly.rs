//! Dense univariate polynomials in `x` with exact rational coefficients.
//!
//! Coefficients are stored in ascending degree order. The highest stored
//! coefficient is always nonzero; the zero polynomial stores nothing.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self { coeffs }
    }

    pub fn x_pow(degree: usize) -> Self {
        Self::monomial(BigRational::one(), degree)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Builds a polynomial from ascending integer coefficients.
    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `(x - 1)^k`, expanded by the binomial theorem.
    pub fn x_minus_one_pow(k: usize) -> Self {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut binom = BigInt::one();
        for i in 0..=k {
            let sign = if (k - i).is_multiple_of(2) { 1 } else { -1 };
            coeffs.push(BigRational::from_integer(&binom * sign));
            binom = binom * (k - i) / (i + 1);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Ascending integer coefficients, or `None` if any coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Least common multiple of the coefficient denominators.
    fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficients after clearing denominators by `den`.
    fn scaled_numerators(&self, den: &BigInt) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| c.numer() * (den / c.denom()))
            .collect()
    }

    /// Exact product by schoolbook multiplication over cleared denominators.
    fn schoolbook_mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let da = self.denominator_lcm();
        let db = other.denominator_lcm();
        let a = self.scaled_numerators(&da);
        let b = other.scaled_numerators(&db);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        let den = da * db;
        let coeffs = if den.is_one() {
            out.into_iter().map(BigRational::from_integer).collect()
        } else {
            out.into_iter()
                .map(|c| BigRational::new(c, den.clone()))
                .collect()
        };
        Self::from_coeffs(coeffs)
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Polynomial long division: returns `(q, r)` with `self = q*den + r`, `deg r < deg den`.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self)> {
        let dd = den.degree().ok_or(Error::DivisionByZero)?;
        let lead = den.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in den.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + i] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient `q` with `q * den == self`; fails if the remainder is nonzero.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(den)?;
        match r.degree() {
            None => Ok(q),
            Some(remainder_degree) => Err(Error::NotDivisible { remainder_degree }),
        }
    }

    /// `p(x^h)`. For `h = 0` this is the constant `p(1)`.
    pub fn substitute_power(&self, h: usize) -> Self {
        if h == 0 {
            return Self::constant(self.eval(&BigRational::one()));
        }
        if h == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len() - 1) * h + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * h] = c.clone();
        }
        Self { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, v: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * v + c)
    }
}

impl From<BigRational> for RatPoly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for RatPoly {
    fn from(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }
}

impl AddAssign<&RatPoly> for RatPoly {
    fn add_assign(&mut self, rhs: &RatPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl SubAssign<&RatPoly> for RatPoly {
    fn sub_assign(&mut self, rhs: &RatPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&RatPoly> for &RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: &RatPoly) -> RatPoly {
                $body(self, rhs)
            }
        }
        impl $trait<RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: RatPoly) -> RatPoly {
                $body(&self, &rhs)
            }
        }
        impl $trait<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: &RatPoly) -> RatPoly {
                $body(&self, rhs)
            }
        }
        impl $trait<RatPoly> for &RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: RatPoly) -> RatPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RatPoly, b: &RatPoly| {
    let mut out = a.clone();
    out += b;
    out
});
forward_binop!(Sub, sub, |a: &RatPoly, b: &RatPoly| {
    let mut out = a.clone();
    out -= b;
    out
});
forward_binop!(Mul, mul, |a: &RatPoly, b: &RatPoly| a.schoolbook_mul(b));

impl Zero for RatPoly {
    fn zero() -> Self {
        RatPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl std::iter::Sum for RatPoly {
    fn sum<I: Iterator<Item = RatPoly>>(iter: I) -> Self {
        iter.fold(RatPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for RatPoly {
    fn product<I: Iterator<Item = RatPoly>>(iter: I) -> Self {
        iter.fold(RatPoly::one(), |acc, p| acc * p)
    }
}

/// Descending powers with explicit signs, e.g. `x^5 - 3x^4 + 2x - 1`.
/// Fractional coefficients are parenthesised: `(1/2)x^2`.
impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let abs = c.abs();
            if k == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                if abs.is_integer() {
                    write!(f, "{abs}")?;
                } else {
                    write!(f, "({abs})")?;
                }
            }
            if k == 1 {
                f.write_str("x")?;
            } else {
                write!(f, "x^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c.iter().copied())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Schoolbook product written without denominator clearing.
    fn naive_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
        if a.is_zero() || b.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); a.coeffs().len() + b.coeffs().len() - 1];
        for (i, x) in a.coeffs().iter().enumerate() {
            for (j, y) in b.coeffs().iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        RatPoly::from_coeffs(out)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
    }

    #[test]
    fn multiplicative_identity() {
        let a = p(&[3, 0, -2, 7]);
        assert_eq!(&a * &RatPoly::one(), a);
        assert_eq!(&RatPoly::one() * &a, a);
    }

    #[test]
    fn square_of_x_minus_one_times_cubic() {
        // (x-1)^2 (x^3 - x^2 - 1)
        let lhs = RatPoly::x_minus_one_pow(2) * p(&[-1, 0, -1, 1]);
        assert_eq!(lhs, p(&[-1, 2, -2, 3, -3, 1]));
        assert_eq!(
            lhs,
            naive_mul(&RatPoly::x_minus_one_pow(2), &p(&[-1, 0, -1, 1]))
        );
    }

    #[test]
    fn x_minus_one_pow_matches_repeated_product() {
        for k in 0..8 {
            let expected = (0..k).map(|_| p(&[-1, 1])).product::<RatPoly>();
            assert_eq!(RatPoly::x_minus_one_pow(k), expected);
        }
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        let b22 = p(&[-1, 2, -2, 3, -3, 1]);
        assert_eq!(
            b22.exact_div(&RatPoly::x_minus_one_pow(2)).unwrap(),
            p(&[-1, 0, -1, 1])
        );
        assert_eq!(
            p(&[1, 0, 1]).exact_div(&p(&[-1, 1])),
            Err(Error::NotDivisible {
                remainder_degree: 0
            })
        );
        assert_eq!(
            p(&[1, 1]).exact_div(&RatPoly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn division_with_rational_leading_coefficient() {
        let den = RatPoly::from_coeffs(vec![q(1, 3), q(2, 1)]);
        let a = p(&[4, -1, 0, 5]);
        assert_eq!((&a * &den).exact_div(&den).unwrap(), a);
    }

    #[test]
    fn substitute_power_examples() {
        assert_eq!(p(&[1, 1]).substitute_power(3), p(&[1, 0, 0, 1]));
        let a = p(&[5, -3, 2]);
        assert_eq!(a.substitute_power(1), a);
        // -(x - 1) evaluated at x^2
        assert_eq!(p(&[1, -1]).substitute_power(2), p(&[1, 0, -1]));
        assert_eq!(a.substitute_power(0), p(&[4]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-1, 0, 1]).eval(&q(1, 1)), q(0, 1));
        let b22 = p(&[-1, 2, -2, 3, -3, 1]);
        assert_eq!(b22.eval(&q(3, 1)), q(68, 1));
        assert_eq!(b22.eval(&q(5, 1)), q(1584, 1));
    }

    #[test]
    fn normalization_invariants() {
        let a = RatPoly::from_coeffs(vec![q(2, -4), q(0, 1), q(0, 3)]);
        assert_eq!(a.degree(), Some(0));
        assert_eq!(a.coeffs()[0].denom(), &BigInt::from(2));
        assert_eq!(a.coeffs()[0].numer(), &BigInt::from(-1));
        assert_eq!((&a - &a).coeffs().len(), 0);
        assert_eq!(RatPoly::zero().degree(), None);
    }

    #[test]
    fn display_descending() {
        assert_eq!(
            p(&[-1, 2, -2, 3, -3, 1]).to_string(),
            "x^5 - 3x^4 + 3x^3 - 2x^2 + 2x - 1"
        );
        assert_eq!(RatPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        let half = RatPoly::from_coeffs(vec![q(-1, 2), q(0, 1), q(1, 2)]);
        assert_eq!(half.to_string(), "(1/2)x^2 - 1/2");
    }

    fn small_poly() -> impl Strategy<Value = RatPoly> {
        prop::collection::vec((-20i64..=20, 1i64..=6), 0..7)
            .prop_map(|cs| RatPoly::from_coeffs(cs.into_iter().map(|(n, d)| q(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn mul_matches_naive(a in small_poly(), b in small_poly()) {
            prop_assert_eq!(&a * &b, naive_mul(&a, &b));
        }

        #[test]
        fn mul_commutative(a in small_poly(), b in small_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn mul_associative(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        }

        #[test]
        fn distributive(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn degree_is_additive(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }

        #[test]
        fn exact_div_inverts_mul(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        }

        #[test]
        fn div_rem_reconstructs(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (quot, rem) = a.div_rem(&b).unwrap();
            prop_assert!(rem.degree().is_none_or(|d| d < b.degree().unwrap()));
            prop_assert_eq!(&quot * &b + rem, a);
        }

        #[test]
        fn substitution_is_multiplicative(a in small_poly(), b in small_poly(), h in 1usize..5) {
            prop_assert_eq!(
                (&a * &b).substitute_power(h),
                a.substitute_power(h) * b.substitute_power(h)
            );
        }

        #[test]
        fn eval_of_substitution(a in small_poly(), h in 1usize..5, n in -5i64..5, d in 1i64..4) {
            let v = q(n, d);
            let vh = (0..h).fold(BigRational::one(), |acc, _| acc * &v);
            prop_assert_eq!(a.substitute_power(h).eval(&v), a.eval(&vh));
        }
    }
}
