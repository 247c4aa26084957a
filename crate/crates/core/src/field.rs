//! Exact arithmetic in GF(q), q = p^k.
//!
//! Elements are encoded as integers in `[0, q)`. For `k > 1` the base-`p`
//! digits of the encoding (least significant first) are the coordinates of
//! the element in the polynomial basis `1, t, t^2, ...` of `GF(p)[t]/(m(t))`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted.
pub const MAX_ORDER: u32 = 1 << 16;

/// Fields up to this order get precomputed operation tables.
const TABLE_LIMIT: u32 = 256;

/// An element of some `GF(q)`, stored as its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic context for `GF(p^k)`. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients low to high, length `k + 1`. Empty for prime fields.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self)
    }
}

/// `"p"`, `"p^k"`, or `"p^k mod=c_0,...,c_k"`.
impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.order_string())?;
        if let Some(m) = self.modulus_string() {
            write!(f, " mod={m}")?;
        }
        Ok(())
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FieldSpec::parse(s)
    }
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// The prime field `GF(p)`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, &[])
    }

    /// `GF(p^k)` with the given modulus (coefficients low to high, monic, degree `k`).
    /// For `k = 1` the modulus must be empty.
    pub fn new(p: u32, k: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::usage(format!("characteristic {p} is not prime")));
        }
        if k == 0 {
            return Err(Error::usage("extension degree must be at least 1"));
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or_else(|| Error::usage(format!("field order {p}^{k} exceeds {MAX_ORDER}")))?
            as u32;
        let modulus = if k == 1 {
            if !modulus.is_empty() {
                return Err(Error::usage("prime fields take no modulus"));
            }
            Vec::new()
        } else {
            if modulus.is_empty() {
                return Err(Error::usage(format!(
                    "GF({p}^{k}) needs an explicit irreducible modulus (mod=c_0,...,c_{k})"
                )));
            }
            if modulus.len() != k as usize + 1 {
                return Err(Error::usage(format!(
                    "modulus must have {} coefficients, got {}",
                    k + 1,
                    modulus.len()
                )));
            }
            if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
                return Err(Error::usage(format!("modulus coefficient {c} not in GF({p})")));
            }
            if modulus[k as usize] != 1 {
                return Err(Error::usage("modulus must be monic"));
            }
            if !gfp::is_irreducible(modulus, p) {
                return Err(Error::usage(format!(
                    "modulus {modulus:?} is reducible over GF({p})"
                )));
            }
            modulus.to_vec()
        };
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            inner.tables = Some(Tables::build(&inner));
        }
        Ok(FieldSpec(Arc::new(inner)))
    }

    /// Parses `"p"`, `"p^k"`, with optional `mod=c_0,...,c_k` separated by whitespace or `;`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut order: Option<&str> = None;
        let mut modulus: Vec<u32> = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ';').filter(|t| !t.is_empty()) {
            if let Some(m) = tok.strip_prefix("mod=") {
                modulus = parse_u32_list(m).map_err(|e| Error::usage(format!("bad modulus: {e}")))?;
            } else if order.is_none() {
                order = Some(tok);
            } else {
                return Err(Error::usage(format!("unexpected token {tok:?} in field spec")));
            }
        }
        let order = order.ok_or_else(|| Error::usage("empty field spec"))?;
        let (p, k) = match order.split_once('^') {
            Some((p, k)) => (parse_u32(p)?, parse_u32(k)?),
            None => prime_power(parse_u32(order)?)
                .ok_or_else(|| Error::usage(format!("{order} is not a prime power")))?,
        };
        Self::new(p, k, &modulus)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// `"p"` or `"p^k"`.
    pub fn order_string(&self) -> String {
        if self.0.k == 1 {
            self.0.p.to_string()
        } else {
            format!("{}^{}", self.0.p, self.0.k)
        }
    }

    /// `"c_0,...,c_k"` for extension fields.
    pub fn modulus_string(&self) -> Option<String> {
        if self.0.modulus.is_empty() {
            None
        } else {
            Some(join_u32(&self.0.modulus))
        }
    }

    /// Checked conversion from an integer encoding.
    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value < self.0.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::usage(format!(
                "{value} is not an element of GF({})",
                self.order_string()
            )))
        }
    }

    /// The image of the integer `n` under `Z -> GF(p) ⊂ GF(q)`.
    pub fn from_integer(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// All `q` elements in increasing encoding.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.0.q).map(FieldElement)
    }

    /// Nonzero elements in increasing encoding.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.0.q).map(FieldElement)
    }

    #[inline]
    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.0.q
    }

    #[inline]
    fn idx(&self, a: FieldElement, b: FieldElement) -> usize {
        a.0 as usize * self.0.q as usize + b.0 as usize
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        match &self.0.tables {
            Some(t) => FieldElement(t.add[self.idx(a, b)]),
            None => FieldElement(self.0.add_raw(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a));
        match &self.0.tables {
            Some(t) => FieldElement(t.neg[a.0 as usize]),
            None => FieldElement(self.0.neg_raw(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        match &self.0.tables {
            Some(t) => FieldElement(t.mul[self.idx(a, b)]),
            None => FieldElement(self.0.mul_raw(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        debug_assert!(self.contains(a));
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0.tables {
            Some(t) => FieldElement(t.inv[a.0 as usize]),
            None => FieldElement(self.0.inv_raw(a.0)),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn check_pair(&self, a: FieldElement, b: FieldElement) -> Result<()> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::usage(format!(
                    "element {x} does not belong to GF({})",
                    self.order_string()
                )));
            }
        }
        Ok(())
    }

    /// [`add`](Self::add) with operand validation.
    pub fn try_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check_pair(a, b)?;
        Ok(self.add(a, b))
    }

    /// [`mul`](Self::mul) with operand validation.
    pub fn try_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check_pair(a, b)?;
        Ok(self.mul(a, b))
    }

    /// Table-free arithmetic, used to cross-check the tables.
    #[doc(hidden)]
    pub fn reference_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.0.mul_raw(a.0, b.0))
    }

    #[doc(hidden)]
    pub fn reference_add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.0.add_raw(a.0, b.0))
    }

    #[doc(hidden)]
    pub fn reference_inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement(self.0.inv_raw(a.0)))
    }
}

impl Inner {
    fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut out = vec![0; self.k as usize];
        for d in out.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add_raw(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&sum)
    }

    fn neg_raw(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.pack(&d)
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let prod = gfp::mul(&self.digits(a), &self.digits(b), self.p);
        let mut r = gfp::rem(&prod, &self.modulus, self.p);
        r.resize(self.k as usize, 0);
        self.pack(&r)
    }

    fn inv_raw(&self, a: u32) -> u32 {
        if self.k == 1 {
            return gfp::inv_mod(a, self.p);
        }
        let mut r = gfp::inv_mod_poly(&self.digits(a), &self.modulus, self.p);
        r.resize(self.k as usize, 0);
        self.pack(&r)
    }
}

impl Tables {
    fn build(f: &Inner) -> Self {
        let q = f.q as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in a..q {
                let s = f.add_raw(a as u32, b as u32);
                let m = f.mul_raw(a as u32, b as u32);
                add[a * q + b] = s;
                add[b * q + a] = s;
                mul[a * q + b] = m;
                mul[b * q + a] = m;
            }
        }
        let neg = (0..q as u32).map(|a| f.neg_raw(a)).collect();
        let inv = (0..q as u32)
            .map(|a| if a == 0 { 0 } else { f.inv_raw(a) })
            .collect();
        Tables { add, mul, neg, inv }
    }
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::usage(format!("expected a non-negative integer, got {s:?}")))
}

pub(crate) fn parse_u32_list(s: &str) -> std::result::Result<Vec<u32>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| format!("bad integer {t:?}")))
        .collect()
}

pub(crate) fn join_u32(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Dense polynomials over GF(p), coefficients low to high.
mod gfp {
    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        // extended Euclid on integers
        let (mut r0, mut r1) = (p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quo = r0 / r1;
            (r0, r1) = (r1, r0 - quo * r1);
            (t0, t1) = (t1, t0 - quo * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(p as i64) as u32
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Quotient and remainder of `a / b`, `b` nonzero.
    pub fn divmod(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let mut b = b.to_vec();
        trim(&mut b);
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), p) as u64;
        let mut quo = vec![0u32; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = (*r.last().unwrap() as u64 * lead_inv % p as u64) as u32;
            quo[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                let sub = (c as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        trim(&mut quo);
        (quo, r)
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        divmod(a, b, p).1
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Inverse of `a` modulo the irreducible `m`, by extended Euclid.
    pub fn inv_mod_poly(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        let (mut t0, mut t1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (quo, r2) = divmod(&r0, &r1, p);
            let t2 = sub(&t0, &mul(&quo, &t1, p), p);
            (r0, r1) = (r1, r2);
            (t0, t1) = (t1, t2);
        }
        // r0 is a nonzero constant since m is irreducible and a is nonzero
        debug_assert_eq!(r0.len(), 1);
        let c = inv_mod(r0[0], p) as u64;
        let mut out: Vec<u32> = t0.iter().map(|&x| (x as u64 * c % p as u64) as u32).collect();
        trim(&mut out);
        rem(&out, m, p)
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = m.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for low in 0..count {
                let mut div = Vec::with_capacity(d + 1);
                let mut v = low;
                for _ in 0..d {
                    div.push((v % p as u64) as u32);
                    v /= p as u64;
                }
                div.push(1);
                if rem(m, &div, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(s: &str) -> FieldSpec {
        FieldSpec::parse(s).unwrap()
    }

    fn e(f: &FieldSpec, v: u32) -> FieldElement {
        f.element(v).unwrap()
    }

    /// Small fields used for exhaustive axiom checks, q <= 16.
    fn small_fields() -> Vec<FieldSpec> {
        [
            "2", "3", "5", "7", "11", "13", "2^2 mod=1,1,1", "2^3 mod=1,1,0,1", "3^2 mod=1,0,1",
            "2^4 mod=1,1,0,0,1",
        ]
        .iter()
        .map(|s| gf(s))
        .collect()
    }

    #[test]
    fn add_examples() {
        let f3 = gf("3");
        assert_eq!(f3.add(e(&f3, 2), e(&f3, 2)), e(&f3, 1));
        let f4 = gf("2^2 mod=1,1,1");
        // t = 2
        assert_eq!(f4.add(e(&f4, 2), e(&f4, 2)), FieldElement::ZERO);
        for f in small_fields() {
            for a in f.elements() {
                assert_eq!(f.add(a, FieldElement::ZERO), a);
            }
        }
    }

    #[test]
    fn mul_examples() {
        let f4 = gf("2^2 mod=1,1,1");
        // t * t = t + 1
        assert_eq!(f4.mul(e(&f4, 2), e(&f4, 2)), e(&f4, 3));
        let f5 = gf("5");
        assert_eq!(f5.mul(e(&f5, 3), e(&f5, 4)), e(&f5, 2));
        for f in small_fields() {
            for a in f.elements() {
                assert_eq!(f.mul(a, FieldElement::ONE), a);
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let f5 = gf("5");
        assert_eq!(f5.inv(e(&f5, 3)).unwrap(), e(&f5, 2));
        let f2 = gf("2");
        assert_eq!(f2.inv(FieldElement::ONE).unwrap(), FieldElement::ONE);
        let f9 = gf("3^2 mod=1,0,1");
        for a in f9.nonzero_elements() {
            assert_eq!(f9.mul(a, f9.inv(a).unwrap()), FieldElement::ONE);
        }
        assert_eq!(f9.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn pow_examples() {
        let f5 = gf("5");
        assert_eq!(f5.pow(e(&f5, 2), 4), FieldElement::ONE);
        let f3 = gf("3");
        assert_eq!(f3.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        for f in small_fields() {
            let q = f.order() as u64;
            for a in f.nonzero_elements() {
                assert_eq!(f.pow(a, q - 1), FieldElement::ONE);
            }
            for a in f.elements() {
                assert_eq!(f.pow(a, q), a);
            }
        }
    }

    #[test]
    fn enumeration() {
        let f3 = gf("3");
        assert_eq!(f3.elements().map(|a| a.value()).collect::<Vec<_>>(), vec![0, 1, 2]);
        let f4 = gf("2^2 mod=1,1,1");
        assert_eq!(f4.elements().map(|a| a.value()).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(gf("3^2 mod=1,0,1").elements().count(), 9);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO, "{f:?}");
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE, "{f:?}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for f in small_fields().into_iter().filter(|f| f.degree() > 1) {
            let p = f.characteristic() as u64;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                }
            }
        }
    }

    #[test]
    fn tables_match_reference_arithmetic() {
        for f in small_fields() {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.reference_mul(a, b));
                    assert_eq!(f.add(a, b), f.reference_add(a, b));
                }
                if !a.is_zero() {
                    assert_eq!(f.inv(a).unwrap(), f.reference_inv(a).unwrap());
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        // 2^9 > TABLE_LIMIT, t^9 + t^4 + 1 is irreducible over GF(2)
        let f = FieldSpec::new(2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]).unwrap();
        assert!(f.0.tables.is_none());
        for v in [1, 2, 3, 100, 511] {
            let a = e(&f, v);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            assert_eq!(f.pow(a, 511), FieldElement::ONE);
        }
        let g = FieldSpec::prime(257).unwrap();
        assert_eq!(g.mul(e(&g, 256), e(&g, 256)), FieldElement::ONE);
    }

    #[test]
    fn construction_errors() {
        assert!(FieldSpec::parse("4").is_err());
        assert!(FieldSpec::parse("2^2").is_err(), "no silent default modulus");
        // t^2 + 1 = (t + 1)^2 over GF(2)
        assert!(FieldSpec::parse("2^2 mod=1,0,1").is_err());
        assert!(FieldSpec::parse("2^2 mod=1,1,0").is_err(), "not monic");
        assert!(FieldSpec::parse("3 mod=1,1").is_err());
        assert!(FieldSpec::parse("").is_err());
        assert!(FieldSpec::parse("2^20 mod=1").is_err());
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["3", "2^2 mod=1,1,1", "3^2 mod=1,0,1"] {
            assert_eq!(gf(s).to_string(), s);
        }
        assert_eq!(gf("2^2;mod=1,1,1"), gf("2^2 mod=1,1,1"));
        assert_eq!(gf("4 mod=1,1,1"), gf("2^2 mod=1,1,1"));
        assert_eq!(gf("9 mod=1,0,1").to_string(), "3^2 mod=1,0,1");
        assert!(FieldSpec::parse("6").is_err());
        assert!(FieldSpec::parse("1").is_err());
        assert_ne!(gf("3^2 mod=1,0,1"), gf("3^2 mod=2,2,1"));
    }

    #[test]
    fn checked_ops_reject_foreign_elements() {
        let f3 = gf("3");
        let f5 = gf("5");
        let four = e(&f5, 4);
        assert!(matches!(f3.try_add(four, FieldElement::ONE), Err(Error::Usage(_))));
        assert!(matches!(f3.try_mul(FieldElement::ONE, four), Err(Error::Usage(_))));
        assert!(f3.element(3).is_err());
    }
}
