//! Integer partitions as multiplicity vectors, rectangular partitions, and
//! the gluing map between them.
//!
//! A partition of `n` is stored as `[k_1, ..., k_n]` with `sum j*k_j = n`.
//! Its text form is the exponent notation `1^2 2` for `[1^2 2]`.
//!
//! Enumeration orders are fixed:
//! - [`enumerate_partitions`] is ascending lexicographic on the multiplicity
//!   vector, so `[n]` comes first and `[1^n]` last.
//! - [`enumerate_rect_partitions`] groups by glued partition (in the order
//!   above) and lists each fiber in [`fiber`] order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    mult: Vec<usize>,
}

impl Partition {
    /// Builds `[1^{k_1} ... n^{k_n}]` from multiplicities; the vector may be
    /// shorter than `n` (missing entries are zero) but not longer.
    pub fn from_multiplicities(n: usize, mult: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "partitions are of positive integers".into(),
            ));
        }
        if mult.len() > n && mult[n..].iter().any(|&k| k != 0) {
            return Err(Error::InvalidInput(format!(
                "multiplicity vector {mult:?} has parts larger than {n}"
            )));
        }
        let mut v = vec![0; n];
        v[..mult.len().min(n)].copy_from_slice(&mult[..mult.len().min(n)]);
        let total: usize = v.iter().enumerate().map(|(i, k)| (i + 1) * k).sum();
        if total != n {
            return Err(Error::InvalidInput(format!(
                "multiplicities {mult:?} sum to {total}, not {n}"
            )));
        }
        Ok(Self { mult: v })
    }

    /// Builds a partition from a list of (positive) parts.
    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        let n: usize = parts.iter().sum();
        if parts.contains(&0) {
            return Err(Error::InvalidInput("parts must be positive".into()));
        }
        let mut mult = vec![0; n];
        for &p in parts {
            mult[p - 1] += 1;
        }
        Self::from_multiplicities(n, &mult)
    }

    /// `[d^{n/d}]`: the partition of `n` into equal parts of size `d`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        if d == 0 || !n.is_multiple_of(d) {
            return Err(Error::InvalidInput(format!("{d} does not divide {n}")));
        }
        let mut mult = vec![0; n];
        mult[d - 1] = n / d;
        Self::from_multiplicities(n, &mult)
    }

    pub fn n(&self) -> usize {
        self.mult.len()
    }

    /// `|[k]| = sum k_j`, the number of parts.
    pub fn length(&self) -> usize {
        self.mult.iter().sum()
    }

    /// `k_j` for `j >= 1`; zero beyond `n`.
    pub fn multiplicity(&self, j: usize) -> usize {
        j.checked_sub(1)
            .and_then(|i| self.mult.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    /// `(j, k_j)` for every part size present, ascending in `j`.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (i + 1, k))
    }

    /// Whether all parts have the same size; returns that size.
    pub fn uniform_part(&self) -> Option<usize> {
        let mut it = self.blocks();
        let (d, _) = it.next()?;
        it.next().is_none().then_some(d)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, k) in self.blocks() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{j}")?;
            } else {
                write!(f, "{j}^{k}")?;
            }
        }
        Ok(())
    }
}

/// A multiset of `l x h` rectangles of total area `n`, stored as
/// `(l, h) -> k_{l,h}` with every stored multiplicity positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RectPartition {
    n: usize,
    blocks: BTreeMap<(usize, usize), usize>,
}

impl RectPartition {
    pub fn new(blocks: impl IntoIterator<Item = ((usize, usize), usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((l, h), k) in blocks {
            if l == 0 || h == 0 {
                return Err(Error::InvalidInput(
                    "rectangle sides must be positive".into(),
                ));
            }
            if k > 0 {
                *map.entry((l, h)).or_insert(0) += k;
            }
        }
        let n: usize = map.iter().map(|(&(l, h), &k)| l * h * k).sum();
        if n == 0 {
            return Err(Error::InvalidInput("empty rectangular partition".into()));
        }
        Ok(Self { n, blocks: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `((l, h), k_{l,h})` in ascending `(l, h)` order.
    pub fn blocks(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.blocks.iter().map(|(&lh, &k)| (lh, k))
    }

    pub fn multiplicity(&self, l: usize, h: usize) -> usize {
        self.blocks.get(&(l, h)).copied().unwrap_or(0)
    }
}

impl fmt::Display for RectPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, ((l, h), k)) in self.blocks().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if k == 1 {
                write!(f, "({l}x{h})")?;
            } else {
                write!(f, "({l}x{h})^{k}")?;
            }
        }
        f.write_str("]")
    }
}

/// All partitions of `n` as multiplicity vectors, ascending lexicographic.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(largest: usize, remaining: usize, mult: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { mult: mult.clone() });
            return;
        }
        if largest == 0 {
            return;
        }
        for k in (0..=remaining / largest).rev() {
            mult[largest - 1] = k;
            rec(largest - 1, remaining - k * largest, mult, out);
        }
        mult[largest - 1] = 0;
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(n, n, &mut vec![0; n], &mut out);
    out.sort();
    out
}

/// `m! / (k_1! ... k_d!)` with `m = sum k_i`.
pub fn multinomial(parts: &[usize]) -> BigInt {
    let mut result = BigInt::one();
    let mut total = 0usize;
    for &k in parts {
        for i in 1..=k {
            total += 1;
            result = result * total / i;
        }
    }
    result
}

/// Sends `[[k]]` to `[1^{m_1} ... n^{m_n}]` with `m_l = sum_h h * k_{l,h}`.
pub fn glue(rp: &RectPartition) -> Partition {
    let mut mult = vec![0; rp.n];
    for ((l, h), k) in rp.blocks() {
        mult[l - 1] += h * k;
    }
    Partition { mult }
}

/// All rectangular partitions gluing to `m`.
///
/// The column lengths `h` for rows of width `l` form a partition of `m_l`, so
/// the fiber is a product over the part sizes of `m`.
pub fn fiber(m: &Partition) -> Vec<RectPartition> {
    let mut acc: Vec<Vec<((usize, usize), usize)>> = vec![Vec::new()];
    for (l, m_l) in m.blocks() {
        let choices = enumerate_partitions(m_l);
        let mut next = Vec::with_capacity(acc.len() * choices.len());
        for prefix in &acc {
            for p in &choices {
                let mut blocks = prefix.clone();
                blocks.extend(p.blocks().map(|(h, k)| ((l, h), k)));
                next.push(blocks);
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|blocks| RectPartition {
            n: m.n(),
            blocks: blocks.into_iter().collect(),
        })
        .collect()
}

/// All rectangular partitions of `n`: the fibers of every partition of `n`,
/// concatenated in [`enumerate_partitions`] order.
pub fn enumerate_rect_partitions(n: usize) -> Vec<RectPartition> {
    enumerate_partitions(n).iter().flat_map(fiber).collect()
}
