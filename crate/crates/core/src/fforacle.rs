//! Brute-force point counts over finite fields.
//!
//! Counts `PGL_n(F_q)`-orbits of absolutely irreducible `r`-tuples in
//! `GL_n(F_q)`. A tuple is absolutely irreducible iff the unital algebra it
//! generates is all of `M_n(F_q)`, and such tuples have scalar stabilizers,
//! so the orbit count is the tuple count divided by `|PGL_n(F_q)|`. The result
//! should equal `B_n^r(q)`.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::charvar::CharVarEngine;
use crate::error::{Error, Result};

/// Largest `q^{n^2}` that [`enumerate_gl`] will scan.
pub const MATRIX_SPACE_LIMIT: u128 = 10_000_000;
/// Largest `|GL_n(F_q)|^r` that [`count_irr_classes`] will scan.
pub const TUPLE_LIMIT: u128 = 50_000_000;
/// Matrices up to 4x4 fit in the fixed storage.
pub const MAX_DIM: usize = 4;

/// A finite field with at most 9 elements, given by addition and
/// multiplication tables on `0..q`.
///
/// Prime fields use residues mod `p`. `F_4`, `F_8` and `F_9` encode
/// `c_0 + c_1 a + c_2 a^2` as `c_0 + c_1 p + c_2 p^2`, where `a` is a root of
/// `x^2 + x + 1`, `x^3 + x + 1` and `x^2 + 1` respectively.
#[derive(Clone, Debug)]
pub struct FiniteField {
    q: u8,
    p: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        // (p, k, low coefficients of the monic modulus of degree k)
        let (p, k, modulus): (u8, usize, &[u8]) = match q {
            2 | 3 | 5 | 7 => (q as u8, 1, &[]),
            4 => (2, 2, &[1, 1]),
            8 => (2, 3, &[1, 1, 0]),
            9 => (3, 2, &[1, 0]),
            _ => return Err(Error::UnsupportedField(q)),
        };
        let q = q as u8;
        let digits = |v: u8| -> Vec<u8> {
            let mut v = v;
            (0..k)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[u8]| -> u8 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let size = q as usize;
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * size + b as usize] = encode(&sum);

                let mut prod = vec![0u16; 2 * k - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + *x as u16 * *y as u16) % p as u16;
                    }
                }
                // x^deg = -(modulus) reduces degrees >= k
                for deg in (k..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &m) in modulus.iter().enumerate() {
                        let sub = c * m as u16 % p as u16;
                        let slot = &mut prod[deg - k + i];
                        *slot = (*slot + p as u16 - sub) % p as u16;
                    }
                }
                let reduced: Vec<u8> = prod[..k].iter().map(|&c| c as u8).collect();
                mul[a as usize * size + b as usize] = encode(&reduced);
            }
        }
        let mut neg = vec![0; size];
        let mut inv = vec![0; size];
        for a in 0..q {
            for b in 0..q {
                if add[a as usize * size + b as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[a as usize * size + b as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        let field = Self {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        };
        field.check_axioms()?;
        Ok(field)
    }

    fn check_axioms(&self) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::InvalidInput(format!(
                "tables for F_{} violate {what}",
                self.q
            )))
        };
        for a in 0..self.q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return fail("identities");
            }
            if self.add(a, self.neg(a)) != 0 || (a != 0 && self.mul(a, self.inv(a)) != 1) {
                return fail("inverses");
            }
            for b in 0..self.q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                for c in 0..self.q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return fail("associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> u32 {
        self.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `inv(0) = 0`.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
}

/// An `n x n` matrix over a [`FiniteField`], row-major, `n <= 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: u8,
    e: [u8; MAX_DIM * MAX_DIM],
}

impl Matrix {
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let n = rows.len();
        assert!(
            n <= MAX_DIM && rows.iter().all(|r| r.len() == n),
            "square matrix up to 4x4"
        );
        let mut e = [0; MAX_DIM * MAX_DIM];
        for (i, row) in rows.iter().enumerate() {
            e[i * n..(i + 1) * n].copy_from_slice(row);
        }
        Self { n: n as u8, e }
    }

    pub fn identity(n: usize) -> Self {
        let mut e = [0; MAX_DIM * MAX_DIM];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Self { n: n as u8, e }
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.e[i * self.dim() + j]
    }

    pub fn entries(&self) -> &[u8] {
        &self.e[..self.dim() * self.dim()]
    }

    pub fn mul(&self, other: &Self, f: &FiniteField) -> Self {
        let n = self.dim();
        let mut e = [0; MAX_DIM * MAX_DIM];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.e[i * n + k], other.e[k * n + j]));
                }
                e[i * n + j] = acc;
            }
        }
        Self { n: self.n, e }
    }

    /// Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self, f: &FiniteField) -> Option<Self> {
        let n = self.dim();
        let mut a = self.e;
        let mut b = Self::identity(n).e;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
                b.swap(col * n + j, pivot * n + j);
            }
            let s = f.inv(a[col * n + col]);
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], s);
                b[col * n + j] = f.mul(b[col * n + j], s);
            }
            for r in 0..n {
                let factor = a[r * n + col];
                if r == col || factor == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    b[r * n + j] = f.sub(b[r * n + j], f.mul(factor, b[col * n + j]));
                }
            }
        }
        Some(Self { n: self.n, e: b })
    }

    pub fn is_invertible(&self, f: &FiniteField) -> bool {
        let n = self.dim();
        let mut a = self.e;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return false;
            };
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            let s = f.inv(a[col * n + col]);
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], s);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        true
    }
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: usize, q: u32) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|i| qn - (q as u128).pow(i as u32)).product()
}

/// Every invertible `n x n` matrix over `f`, in lexicographic order of entries.
pub fn enumerate_gl(n: usize, f: &FiniteField) -> Result<Vec<Matrix>> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::InvalidInput(format!(
            "matrix size {n} outside 1..=4"
        )));
    }
    let q = f.order() as u128;
    let space = q.checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if space > MATRIX_SPACE_LIMIT {
        return Err(Error::TooLarge {
            what: "n x n matrices",
            size: space,
            limit: MATRIX_SPACE_LIMIT,
        });
    }
    let mut out = Vec::with_capacity(gl_order(n, f.order()) as usize);
    let mut m = Matrix {
        n: n as u8,
        e: [0; MAX_DIM * MAX_DIM],
    };
    for index in 0..space as u64 {
        let mut rest = index;
        for slot in (0..n * n).rev() {
            m.e[slot] = (rest % q as u64) as u8;
            rest /= q as u64;
        }
        if m.is_invertible(f) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Row-echelon basis of a subspace of `F_q^{n^2}`. Every stored row has a 1
/// at its pivot and zeros at the pivots of earlier rows.
struct Span<'a> {
    field: &'a FiniteField,
    rows: Vec<([u8; MAX_DIM * MAX_DIM], usize)>,
}

impl<'a> Span<'a> {
    fn new(field: &'a FiniteField) -> Self {
        Self {
            field,
            rows: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if independent of the current rows.
    fn insert(&mut self, m: &Matrix) -> bool {
        let f = self.field;
        let len = m.dim() * m.dim();
        let mut v = m.e;
        for (row, pivot) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for i in 0..len {
                    v[i] = f.sub(v[i], f.mul(c, row[i]));
                }
            }
        }
        let Some(pivot) = v[..len].iter().position(|&c| c != 0) else {
            return false;
        };
        let s = f.inv(v[pivot]);
        for c in &mut v[..len] {
            *c = f.mul(*c, s);
        }
        self.rows.push((v, pivot));
        true
    }
}

/// Whether the unital algebra generated by `tuple` is all of `M_n(F_q)`.
///
/// Breadth-first closure: starting from the identity, left-multiply each new
/// basis element by every generator and keep the independent products.
pub fn is_abs_irreducible(tuple: &[Matrix], f: &FiniteField) -> bool {
    let Some(first) = tuple.first() else {
        return false;
    };
    let n = first.dim();
    let full = n * n;
    let id = Matrix::identity(n);
    let mut span = Span::new(f);
    span.insert(&id);
    if span.dim() == full {
        return true;
    }
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in tuple {
            let product = g.mul(&w, f);
            if span.insert(&product) {
                if span.dim() == full {
                    return true;
                }
                queue.push_back(product);
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCount {
    /// Absolutely irreducible `r`-tuples in `GL_n(F_q)^r`.
    pub raw: u64,
    pub pgl_order: u64,
    /// `raw / |PGL_n(F_q)|`.
    pub classes: u64,
}

/// Number of isomorphism classes of absolutely irreducible `r`-tuples over `f`.
pub fn count_irr_classes(n: usize, r: usize, f: &FiniteField) -> Result<OrbitCount> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be positive".into()));
    }
    let gl = enumerate_gl(n, f)?;
    let tuples = (gl.len() as u128)
        .checked_pow(r as u32)
        .unwrap_or(u128::MAX);
    if tuples > TUPLE_LIMIT {
        return Err(Error::TooLarge {
            what: "matrix tuples",
            size: tuples,
            limit: TUPLE_LIMIT,
        });
    }
    let pgl_order = (gl.len() / (f.order() as usize - 1)) as u64;
    let raw: u64 = (0..gl.len())
        .into_par_iter()
        .map(|first| count_with_first(&gl, first, r, f))
        .sum();
    if !raw.is_multiple_of(pgl_order) {
        return Err(Error::NonIntegerOrbitCount { raw, pgl_order });
    }
    Ok(OrbitCount {
        raw,
        pgl_order,
        classes: raw / pgl_order,
    })
}

/// Irreducible tuples whose first entry is `gl[first]`.
fn count_with_first(gl: &[Matrix], first: usize, r: usize, f: &FiniteField) -> u64 {
    let mut idx = vec![0usize; r];
    idx[0] = first;
    let mut tuple = vec![gl[first]; r];
    let mut count = 0;
    loop {
        for (slot, &i) in tuple.iter_mut().zip(&idx).skip(1) {
            *slot = gl[i];
        }
        if is_abs_irreducible(&tuple, f) {
            count += 1;
        }
        // odometer over positions 1..r
        let mut pos = r;
        loop {
            if pos == 1 {
                return count;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < gl.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRow {
    pub n: usize,
    pub r: usize,
    pub q: u32,
    pub raw: u64,
    pub classes: u64,
    /// `B_n^r(q)`.
    pub symbolic: BigRational,
    pub matches: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Mismatches confined to a single characteristic.
    Warning,
    /// Mismatches at two or more characteristics.
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: usize,
    pub r: usize,
    pub rows: Vec<VerifyRow>,
    pub verdict: Verdict,
}

/// Compares the brute-force count with `B_n^r(q)` for each field size.
///
/// A mismatch at a single characteristic is reported as a warning, since
/// polynomial-count identities may fail at finitely many primes; mismatches at
/// two or more characteristics fail.
pub fn verify(n: usize, r: usize, qs: &[u32], engine: &CharVarEngine) -> Result<VerifyReport> {
    let b = engine.irreducible(n, r);
    let mut rows = Vec::with_capacity(qs.len());
    let mut bad_chars: BTreeMap<u32, usize> = BTreeMap::new();
    for &q in qs {
        let field = FiniteField::new(q)?;
        let count = count_irr_classes(n, r, &field)?;
        let symbolic = b.eval(&BigRational::from_integer(BigInt::from(q)));
        let matches = symbolic == BigRational::from_integer(BigInt::from(count.classes));
        if !matches {
            *bad_chars.entry(field.characteristic()).or_default() += 1;
        }
        rows.push(VerifyRow {
            n,
            r,
            q,
            raw: count.raw,
            classes: count.classes,
            symbolic,
            matches,
        });
    }
    let verdict = match bad_chars.len() {
        0 => Verdict::Pass,
        1 => Verdict::Warning,
        _ => Verdict::Fail,
    };
    Ok(VerifyReport {
        n,
        r,
        rows,
        verdict,
    })
}
