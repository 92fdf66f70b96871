//! Formal power series in `t` truncated at a fixed order, with [`RatPoly`]
//! coefficients.
//!
//! A series of order `N` tracks the coefficients of `t^0 ..= t^N`. Binary
//! operations require both operands to carry the same order.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::RatPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<RatPoly>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![RatPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = RatPoly::one();
        s
    }

    /// Series from coefficients of `t^0, t^1, ...`; missing entries are zero
    /// and entries beyond `order` are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = RatPoly>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `t` (or zero at order 0).
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = RatPoly::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &RatPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RatPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: RatPoly) {
        self.coeffs[k] = c;
    }

    pub fn into_coeffs(self) -> Vec<RatPoly> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Multiplies every coefficient by the polynomial `c`.
    pub fn scale(&self, c: &RatPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn require_unit_constant(&self) -> Result<()> {
        if self.coeffs[0] != RatPoly::one() {
            return Err(Error::NonUnitConstantTerm);
        }
        Ok(())
    }

    fn require_zero_constant(&self) -> Result<()> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        Ok(())
    }

    /// Multiplicative inverse of a series with constant term 1, via
    /// `b_n = -sum_{k=1..n} a_k b_{n-k}`.
    pub fn invert(&self) -> Result<Self> {
        self.require_unit_constant()?;
        let n = self.order();
        let mut b = Self::one(n);
        for m in 1..=n {
            let mut acc = RatPoly::zero();
            for k in 1..=m {
                acc += &(&self.coeffs[k] * &b.coeffs[m - k]);
            }
            b.coeffs[m] = -acc;
        }
        Ok(b)
    }

    /// `sum_{k=1..N} c_k g^k` for `g` with zero constant term.
    fn power_sum(g: &Self, weights: impl Fn(usize) -> BigRational) -> Result<Self> {
        let n = g.order();
        let mut out = Self::zero(n);
        let mut power = g.clone();
        for k in 1..=n {
            out = out.try_add(&power.scale_rational(&weights(k)))?;
            if k < n {
                power = power.mul(g)?;
            }
        }
        Ok(out)
    }

    /// `log(f)` for `f` with constant term 1: `z - z^2/2 + z^3/3 - ...` at `z = f - 1`.
    pub fn log(&self) -> Result<Self> {
        self.require_unit_constant()?;
        let z = self.try_sub(&Self::one(self.order()))?;
        Self::power_sum(&z, |k| {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), BigInt::from(k))
        })
    }

    /// `exp(f)` for `f` with constant term 0.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let mut factorial = BigInt::one();
        let mut inv_factorials = vec![BigRational::one()];
        for k in 1..=self.order() {
            factorial *= k;
            inv_factorials.push(BigRational::new(BigInt::one(), factorial.clone()));
        }
        let sum = Self::power_sum(self, |k| inv_factorials[k].clone())?;
        sum.try_add(&Self::one(self.order()))
    }

    /// The operator `S`: multiplies the coefficient of `t^n` by `x^{(r-1) n(n-1)/2}`.
    pub fn shift(&self, r: usize) -> Self {
        let s = r.saturating_sub(1);
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| {
                    let e = s * n * n.saturating_sub(1) / 2;
                    if e == 0 || c.is_zero() {
                        c.clone()
                    } else {
                        c * RatPoly::x_pow(e)
                    }
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Panics on order mismatch; use [`TruncSeries::try_add`] for fallible addition.
impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_add(rhs).expect("series orders must agree")
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_sub(rhs).expect("series orders must agree")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: i64) -> RatPoly {
        RatPoly::from(v)
    }

    fn q(n: i64, d: i64) -> RatPoly {
        RatPoly::constant(BigRational::new(n.into(), d.into()))
    }

    /// `F(t) = 1 + sum_n ((x-1)(x^2-1)...(x^n-1))^{r-1} t^n`, built directly.
    fn f_series(order: usize, r: usize) -> TruncSeries {
        let mut prod = RatPoly::one();
        let mut coeffs = vec![RatPoly::one()];
        for n in 1..=order {
            prod = prod * (RatPoly::x_pow(n) - RatPoly::one());
            coeffs.push(prod.pow(r - 1));
        }
        TruncSeries::from_coeffs(order, coeffs)
    }

    #[test]
    fn mul_small() {
        let a = TruncSeries::from_coeffs(3, [c(1), c(1)]);
        let b = TruncSeries::from_coeffs(3, [c(1), c(-1)]);
        assert_eq!(
            a.mul(&b).unwrap(),
            TruncSeries::from_coeffs(3, [c(1), c(0), c(-1)])
        );
        assert_eq!(a.mul(&TruncSeries::one(3)).unwrap(), a);
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = TruncSeries::one(3);
        let b = TruncSeries::one(4);
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch { left: 3, right: 4 }));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn invert_geometric() {
        let a = TruncSeries::from_coeffs(3, [c(1), c(1)]);
        let expected = TruncSeries::from_coeffs(3, [c(1), c(-1), c(1), c(-1)]);
        assert_eq!(a.invert().unwrap(), expected);
        assert_eq!(
            TruncSeries::from_coeffs(3, [c(2)]).invert(),
            Err(Error::NonUnitConstantTerm)
        );
    }

    #[test]
    fn invert_f_series_first_coefficients() {
        for r in 2..=4 {
            let f = f_series(8, r);
            let inv = f.invert().unwrap();
            assert!(f.mul(&inv).unwrap() == TruncSeries::one(8));
            let xm1 = RatPoly::x_minus_one_pow(1);
            let xp1 = RatPoly::from_ints([1, 1]);
            // b_1 = -(x-1)^{r-1}
            assert_eq!(inv.coeff(1), &-xm1.pow(r - 1));
            // b_2 = (x-1)^{2r-2} (1 - (x+1)^{r-1})
            assert_eq!(
                inv.coeff(2),
                &(xm1.pow(2 * r - 2) * (RatPoly::one() - xp1.pow(r - 1)))
            );
        }
    }

    #[test]
    fn log_and_exp_small() {
        let one_plus_t = TruncSeries::from_coeffs(3, [c(1), c(1)]);
        assert_eq!(
            one_plus_t.log().unwrap(),
            TruncSeries::from_coeffs(3, [c(0), c(1), q(-1, 2), q(1, 3)])
        );
        assert!(TruncSeries::one(5).log().unwrap().is_zero());
        assert_eq!(
            TruncSeries::t(3).exp().unwrap(),
            TruncSeries::from_coeffs(3, [c(1), c(1), q(1, 2), q(1, 6)])
        );
        assert_eq!(TruncSeries::zero(4).exp().unwrap(), TruncSeries::one(4));
        assert_eq!(TruncSeries::one(2).exp(), Err(Error::NonZeroConstantTerm));
        assert_eq!(TruncSeries::zero(2).log(), Err(Error::NonUnitConstantTerm));
    }

    #[test]
    fn shift_examples() {
        let f = TruncSeries::from_coeffs(2, [c(1), c(1), c(1)]);
        assert_eq!(
            f.shift(2),
            TruncSeries::from_coeffs(2, [c(1), c(1), RatPoly::x()])
        );
        let g = f_series(6, 3);
        assert_eq!(g.shift(1), g);
        let inv = g.invert().unwrap();
        let shifted = inv.shift(3);
        for n in 0usize..=6 {
            let e: usize = 2 * n * n.saturating_sub(1) / 2;
            assert_eq!(shifted.coeff(n), &(inv.coeff(n) * RatPoly::x_pow(e)));
        }
    }

    pub(crate) fn poly_strategy(max_degree: usize) -> impl Strategy<Value = RatPoly> {
        prop::collection::vec(-5i64..=5, 0..=max_degree + 1).prop_map(RatPoly::from_ints)
    }

    pub(crate) fn series_strategy(
        order: usize,
        constant: i64,
        max_degree: usize,
    ) -> impl Strategy<Value = TruncSeries> {
        prop::collection::vec(poly_strategy(max_degree), order).prop_map(move |tail| {
            TruncSeries::from_coeffs(order, std::iter::once(RatPoly::from(constant)).chain(tail))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn inverse_is_two_sided(f in series_strategy(8, 1, 4)) {
            let g = f.invert().unwrap();
            prop_assert_eq!(f.mul(&g).unwrap(), TruncSeries::one(8));
            prop_assert_eq!(g.mul(&f).unwrap(), TruncSeries::one(8));
        }

        #[test]
        fn exp_log_roundtrip(f in series_strategy(8, 1, 4)) {
            prop_assert_eq!(f.log().unwrap().exp().unwrap(), f);
        }

        #[test]
        fn log_exp_roundtrip(f in series_strategy(8, 0, 4)) {
            prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
        }

        #[test]
        fn shift_preserves_support(f in series_strategy(8, 1, 3), r in 1usize..5) {
            let s = f.shift(r);
            for k in 0..=8 {
                prop_assert_eq!(s.coeff(k).is_zero(), f.coeff(k).is_zero());
            }
        }
    }
}
