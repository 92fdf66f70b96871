//! Adams operator, plethystic exponential and logarithm, and the arithmetic
//! functions they rely on.
//!
//! `Psi(x^i t^k) = sum_{l>=1} x^{li} t^{lk} / l` extended linearly, with
//! inverse `Psi^{-1}(x^j t^k) = sum_{l>=1} mu(l)/l x^{jl} t^{kl}`.
//! `PExp(f) = exp(Psi(f))` and `PLog(f) = Psi^{-1}(log f)`.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, multinomial};
use crate::poly::RatPoly;
use crate::series::TruncSeries;

/// Prime factorization by trial division, as `(p, e)` pairs ascending in `p`.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Memo tables for the Moebius function, Euler's totient and divisor lists.
/// Lookups take a shared lock; misses compute outside the lock and insert.
#[derive(Debug, Default)]
pub struct ArithCache {
    moebius: RwLock<HashMap<u64, i8>>,
    totient: RwLock<HashMap<u64, u64>>,
    divisors: RwLock<HashMap<u64, Arc<[u64]>>>,
}

fn memo<V: Clone>(table: &RwLock<HashMap<u64, V>>, n: u64, compute: impl FnOnce() -> V) -> V {
    if let Some(v) = table.read().unwrap().get(&n) {
        return v.clone();
    }
    let v = compute();
    table.write().unwrap().entry(n).or_insert(v).clone()
}

impl ArithCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn moebius(&self, n: u64) -> i8 {
        assert!(n >= 1, "moebius is defined on positive integers");
        memo(&self.moebius, n, || {
            let f = factorize(n);
            if f.iter().any(|&(_, e)| e > 1) {
                0
            } else if f.len().is_multiple_of(2) {
                1
            } else {
                -1
            }
        })
    }

    pub fn totient(&self, n: u64) -> u64 {
        assert!(n >= 1, "totient is defined on positive integers");
        memo(&self.totient, n, || {
            factorize(n)
                .into_iter()
                .fold(n, |acc, (p, _)| acc / p * (p - 1))
        })
    }

    /// Divisors of `n` in ascending order.
    pub fn divisors(&self, n: u64) -> Arc<[u64]> {
        assert!(n >= 1, "divisors are defined on positive integers");
        memo(&self.divisors, n, || {
            let mut divs = vec![1u64];
            for (p, e) in factorize(n) {
                let current = divs.clone();
                let mut pk = 1;
                for _ in 0..e {
                    pk *= p;
                    divs.extend(current.iter().map(|d| d * pk));
                }
            }
            divs.sort_unstable();
            divs.into()
        })
    }
}

static ARITH: LazyLock<ArithCache> = LazyLock::new(ArithCache::new);

/// Process-wide arithmetic cache.
pub fn arith() -> &'static ArithCache {
    &ARITH
}

pub fn moebius(n: u64) -> i8 {
    ARITH.moebius(n)
}

pub fn totient(n: u64) -> u64 {
    ARITH.totient(n)
}

pub fn divisors(n: u64) -> Arc<[u64]> {
    ARITH.divisors(n)
}

fn divisors_usize(n: usize) -> impl Iterator<Item = usize> {
    divisors(n as u64).to_vec().into_iter().map(|d| d as usize)
}

fn ratio(num: i64, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn require_zero_constant(f: &TruncSeries) -> Result<()> {
    if !f.coeff(0).is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    Ok(())
}

/// The Adams operator, truncated at the order of `f`.
pub fn adams(f: &TruncSeries) -> Result<TruncSeries> {
    require_zero_constant(f)?;
    let order = f.order();
    let mut out = TruncSeries::zero(order);
    for k in 1..=order {
        let c = f.coeff(k);
        if c.is_zero() {
            continue;
        }
        for l in 1..=order / k {
            let term = c.substitute_power(l).scale(&ratio(1, l));
            let acc = out.coeff(k * l) + &term;
            out.set_coeff(k * l, acc);
        }
    }
    Ok(out)
}

/// Inverse Adams operator: the coefficient of `t^n` is
/// `sum_{d | n} mu(n/d)/(n/d) g_d(x^{n/d})`.
pub fn adams_inverse(g: &TruncSeries) -> Result<TruncSeries> {
    require_zero_constant(g)?;
    let order = g.order();
    let mut out = TruncSeries::zero(order);
    for n in 1..=order {
        let mut acc = RatPoly::zero();
        for d in divisors_usize(n) {
            let e = n / d;
            let mu = moebius(e as u64);
            if mu == 0 || g.coeff(d).is_zero() {
                continue;
            }
            acc += &g.coeff(d).substitute_power(e).scale(&ratio(mu.into(), e));
        }
        out.set_coeff(n, acc);
    }
    Ok(out)
}

pub fn pexp(f: &TruncSeries) -> Result<TruncSeries> {
    adams(f)?.exp()
}

pub fn plog(f: &TruncSeries) -> Result<TruncSeries> {
    adams_inverse(&f.log()?)
}

/// PLog through the partition sum
/// `sum_{d|n} sum_{[k] in P_d} mu(n/d)/(n/d) (-1)^{|k|-1}/|k| multinom(k) prod_j f_j(x^{n/d})^{k_j}`.
///
/// Shares no code with [`plog`] beyond polynomial arithmetic; the two are
/// cross-checked in tests.
pub fn plog_closed(f: &TruncSeries) -> Result<TruncSeries> {
    if *f.coeff(0) != RatPoly::one() {
        return Err(Error::NonUnitConstantTerm);
    }
    let order = f.order();
    let mut out = TruncSeries::zero(order);
    for n in 1..=order {
        let mut acc = RatPoly::zero();
        for d in divisors_usize(n) {
            let e = n / d;
            let mu = moebius(e as u64);
            if mu == 0 {
                continue;
            }
            let substituted: Vec<RatPoly> =
                (1..=d).map(|j| f.coeff(j).substitute_power(e)).collect();
            let mut inner = RatPoly::zero();
            for k in enumerate_partitions(d) {
                let len = k.length();
                let sign = if len % 2 == 1 { 1 } else { -1 };
                let weight =
                    ratio(sign, len) * BigRational::from_integer(multinomial(k.multiplicities()));
                let product: RatPoly = k
                    .blocks()
                    .map(|(j, kj)| substituted[j - 1].pow(kj))
                    .product();
                inner += &product.scale(&weight);
            }
            acc += &inner.scale(&ratio(mu.into(), e));
        }
        out.set_coeff(n, acc);
    }
    Ok(out)
}
