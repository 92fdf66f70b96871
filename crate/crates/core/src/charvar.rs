//! E-polynomials of free-group character varieties and their polystable strata.
//!
//! `B_n^r(x)` is the E-polynomial of the irreducible locus of the `GL_n`
//! character variety of the rank-`r` free group. It is produced from
//!
//! ```text
//! F(t) = 1 + sum_{n>=1} ((x-1)(x^2-1)...(x^n-1))^{r-1} t^n
//! sum_n B_n^r t^n = (1 - x) PLog(S(F^{-1}(t)))
//! ```
//!
//! Stratum polynomials are sums over rectangular partitions of products of
//! `B_l^r(x^h)^{k} / (k! h^k)`. `SL_n` and `PGL_n` strata share the same
//! polynomial, obtained by exact division by `(x-1)^r`.
//!
//! The formulas are stated for `r >= 2`. With `r = 1` the pipeline still runs
//! and gives `B_1^1 = x - 1`, `B_n^1 = 0` for `n >= 2`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{
    enumerate_partitions, enumerate_rect_partitions, fiber, multinomial, Partition, RectPartition,
};
use crate::plethystic::{divisors, moebius, plog, totient};
use crate::poly::RatPoly;
use crate::series::TruncSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Gl,
    Sl,
    Pgl,
}

impl GroupKind {
    pub const ALL: [GroupKind; 3] = [GroupKind::Gl, GroupKind::Sl, GroupKind::Pgl];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::Gl => "GL",
            GroupKind::Sl => "SL",
            GroupKind::Pgl => "PGL",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(GroupKind::Gl),
            "sl" => Ok(GroupKind::Sl),
            "pgl" => Ok(GroupKind::Pgl),
            _ => Err(Error::InvalidInput(format!(
                "unknown group {s:?}; expected gl, sl or pgl"
            ))),
        }
    }
}

/// A request for one E-polynomial: the whole character variety when
/// `stratum` is `None`, else the polystable stratum it names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StratumQuery {
    pub group: GroupKind,
    pub n: usize,
    pub r: usize,
    pub stratum: Option<Partition>,
}

impl StratumQuery {
    pub fn new(group: GroupKind, n: usize, r: usize, stratum: Option<Partition>) -> Result<Self> {
        if n == 0 || r == 0 {
            return Err(Error::InvalidInput("n and r must be positive".into()));
        }
        if let Some(m) = &stratum {
            if m.n() != n {
                return Err(Error::InvalidInput(format!(
                    "stratum [{m}] is a partition of {}, not {n}",
                    m.n()
                )));
            }
        }
        Ok(Self {
            group,
            n,
            r,
            stratum,
        })
    }

    pub fn whole(group: GroupKind, n: usize, r: usize) -> Result<Self> {
        Self::new(group, n, r, None)
    }
}

/// `F(t)` truncated at `order`.
pub fn f_series(order: usize, r: usize) -> TruncSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(RatPoly::one());
    let mut prod = RatPoly::one();
    for n in 1..=order {
        prod = prod * (RatPoly::x_pow(n) - RatPoly::one());
        coeffs.push(prod.pow(r - 1));
    }
    TruncSeries::from_coeffs(order, coeffs)
}

/// `F^{-1}(t) = 1 + sum b_n t^n`.
pub fn f_inverse(order: usize, r: usize) -> TruncSeries {
    f_series(order, r)
        .invert()
        .expect("F(t) has constant term 1")
}

fn check_rank(n: usize, r: usize) {
    assert!(
        n >= 1 && r >= 1,
        "n and r must be positive (got n = {n}, r = {r})"
    );
}

/// `B_n^r` from the partition-sum expression
/// `(x-1) sum_{d|n} mu(n/d)/(n/d) sum_{[k] in P_d} (-1)^{|k|}/|k| multinom(k)
///  prod_j b_j(x^{n/d})^{k_j} x^{(n/d)(r-1) k_j C(j,2)}`.
pub fn b_poly_closed(n: usize, r: usize) -> RatPoly {
    check_rank(n, r);
    let b = f_inverse(n, r);
    let mut total = RatPoly::zero();
    for &d in divisors(n as u64).iter() {
        let d = d as usize;
        let e = n / d;
        let mu = moebius(e as u64);
        if mu == 0 {
            continue;
        }
        // f_j(x^e) = b_j(x^e) x^{e (r-1) C(j,2)}
        let f: Vec<RatPoly> = (1..=d)
            .map(|j| {
                let shift = e * (r - 1) * j * (j - 1) / 2;
                b.coeff(j).substitute_power(e) * RatPoly::x_pow(shift)
            })
            .collect();
        let mut inner = RatPoly::zero();
        for k in enumerate_partitions(d) {
            let len = k.length();
            let sign: i64 = if len % 2 == 0 { 1 } else { -1 };
            let weight = BigRational::new(sign.into(), len.into())
                * BigRational::from_integer(multinomial(k.multiplicities()));
            let product: RatPoly = k.blocks().map(|(j, kj)| f[j - 1].pow(kj)).product();
            inner += &product.scale(&weight);
        }
        total += &inner.scale(&BigRational::new(mu.into(), e.into()));
    }
    total * RatPoly::x_minus_one_pow(1)
}

/// `[B_1^r, ..., B_{n_max}^r]` from `(1 - x) PLog(S(F^{-1}(t)))`.
pub fn b_poly_series(n_max: usize, r: usize) -> Vec<RatPoly> {
    check_rank(n_max, r);
    let shifted = f_inverse(n_max, r).shift(r);
    let logged = plog(&shifted).expect("S(F^{-1}) has constant term 1");
    let one_minus_x = RatPoly::from_ints([1, -1]);
    logged
        .into_coeffs()
        .into_iter()
        .skip(1)
        .map(|c| c * &one_minus_x)
        .collect()
}

/// Closed-form Euler characteristic of an `SL_n`/`PGL_n` stratum or of the
/// whole variety; always zero for `GL_n`.
///
/// Whole variety: `phi(n) n^{r-2}`. Stratum `[d^{n/d}]`: `mu(d)/d n^{r-1}`.
/// Any other stratum: 0. Computed without touching any polynomial.
pub fn predicted_euler_char(q: &StratumQuery) -> BigRational {
    if q.group == GroupKind::Gl {
        return BigRational::zero();
    }
    let n = BigInt::from(q.n);
    let n_pow = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(num_traits::pow(n.clone(), e as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(n.clone(), (-e) as usize))
        }
    };
    let r = q.r as i64;
    match &q.stratum {
        None => BigRational::from_integer(totient(q.n as u64).into()) * n_pow(r - 2),
        Some(m) => match m.uniform_part() {
            Some(d) => BigRational::new(moebius(d as u64).into(), BigInt::from(d)) * n_pow(r - 1),
            None => BigRational::zero(),
        },
    }
}

/// Memoizing evaluator for stratum polynomials.
///
/// Caches `B_l^r` lists per `r` and the substituted values `B_l^r(x^h)`.
/// Safe to share across threads; concurrent misses may compute the same entry
/// twice, the first insertion wins.
#[derive(Debug, Default)]
pub struct CharVarEngine {
    irreducible: RwLock<HashMap<usize, Arc<Vec<RatPoly>>>>,
    substituted: RwLock<HashMap<(usize, usize, usize), Arc<RatPoly>>>,
}

impl CharVarEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// `[B_1^r, ..., B_{n_max}^r]` (possibly longer), computed on demand.
    pub fn irreducible_list(&self, n_max: usize, r: usize) -> Arc<Vec<RatPoly>> {
        if let Some(list) = self.irreducible.read().unwrap().get(&r) {
            if list.len() >= n_max {
                return Arc::clone(list);
            }
        }
        let list = Arc::new(b_poly_series(n_max, r));
        let mut table = self.irreducible.write().unwrap();
        let entry = table.entry(r).or_insert_with(|| Arc::clone(&list));
        if entry.len() < list.len() {
            *entry = Arc::clone(&list);
        }
        Arc::clone(entry)
    }

    /// `B_n^r`, the E-polynomial of the irreducible `GL_n` locus.
    pub fn irreducible(&self, n: usize, r: usize) -> RatPoly {
        self.irreducible_list(n, r)[n - 1].clone()
    }

    /// `B_l^r(x^h)`.
    pub fn irreducible_at_power(&self, l: usize, r: usize, h: usize) -> Arc<RatPoly> {
        let key = (l, r, h);
        if let Some(p) = self.substituted.read().unwrap().get(&key) {
            return Arc::clone(p);
        }
        let p = Arc::new(self.irreducible_list(l, r)[l - 1].substitute_power(h));
        Arc::clone(self.substituted.write().unwrap().entry(key).or_insert(p))
    }

    /// `prod_{l,h} B_l^r(x^h)^{k_{l,h}} / (k_{l,h}! h^{k_{l,h}})`.
    pub fn rect_term(&self, rp: &RectPartition, r: usize) -> RatPoly {
        let mut product = RatPoly::one();
        let mut denominator = BigInt::one();
        for ((l, h), k) in rp.blocks() {
            product = product * self.irreducible_at_power(l, r, h).pow(k);
            for i in 1..=k {
                denominator *= i * h;
            }
        }
        product.scale(&BigRational::new(BigInt::one(), denominator))
    }

    /// E-polynomial of the `GL_n` stratum labelled by `m`.
    pub fn e_gl_stratum(&self, r: usize, m: &Partition) -> RatPoly {
        check_rank(m.n(), r);
        fiber(m).iter().map(|rp| self.rect_term(rp, r)).sum()
    }

    /// Every `GL_n` stratum polynomial, in partition enumeration order.
    pub fn e_gl_strata(&self, n: usize, r: usize) -> Vec<(Partition, RatPoly)> {
        enumerate_partitions(n)
            .into_iter()
            .map(|m| {
                let e = self.e_gl_stratum(r, &m);
                (m, e)
            })
            .collect()
    }

    /// E-polynomial of the whole `GL_n` character variety, summed directly
    /// over all rectangular partitions.
    pub fn e_gl_total(&self, n: usize, r: usize) -> RatPoly {
        check_rank(n, r);
        enumerate_rect_partitions(n)
            .iter()
            .map(|rp| self.rect_term(rp, r))
            .sum()
    }

    fn e_gl(&self, q: &StratumQuery) -> RatPoly {
        match &q.stratum {
            Some(m) => self.e_gl_stratum(q.r, m),
            None => self.e_gl_total(q.n, q.r),
        }
    }

    /// E-polynomial for the query's group. `SL_n` and `PGL_n` divide the
    /// `GL_n` polynomial by `(x-1)^r`; the division and the integrality of
    /// the result are checked.
    pub fn e_group(&self, q: &StratumQuery) -> Result<RatPoly> {
        let gl = self.e_gl(q);
        let poly = match q.group {
            GroupKind::Gl => gl,
            GroupKind::Sl | GroupKind::Pgl => gl.exact_div(&RatPoly::x_minus_one_pow(q.r))?,
        };
        if let Some(c) = poly.coeffs().iter().find(|c| !c.is_integer()) {
            return Err(Error::NonIntegral {
                value: c.to_string(),
            });
        }
        Ok(poly)
    }

    /// Euler characteristic: the group's polynomial evaluated at `x = 1`,
    /// after the `(x-1)^r` division for `SL_n`/`PGL_n`.
    pub fn euler_char(&self, q: &StratumQuery) -> Result<BigInt> {
        let value = self.e_group(q)?.eval(&BigRational::one());
        if !value.is_integer() {
            return Err(Error::NonIntegral {
                value: value.to_string(),
            });
        }
        Ok(value.to_integer())
    }
}
