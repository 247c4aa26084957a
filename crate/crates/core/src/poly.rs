//! Formal multivariate polynomials over GF(q).
//!
//! Exponents are never reduced with `x^q = x`: degree arguments depend on the
//! formal degree, not on the function a polynomial induces.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Tag recorded in certificates for the column order of evaluation matrices.
pub const MONOMIAL_ORDER: &str = "grlex-v1";

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically on the exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The monomial `x_i` (0-based `i`).
    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMode {
    Exactly,
    AtMost,
}

/// All monomials in `n` variables of total degree `d` (or `<= d`), in graded-lex order.
pub fn monomials_of_degree(n: usize, d: u32, mode: DegreeMode) -> Vec<Monomial> {
    let degrees = match mode {
        DegreeMode::Exactly => d..=d,
        DegreeMode::AtMost => 0..=d,
    };
    let mut out = Vec::new();
    for deg in degrees {
        let mut buf = vec![0u32; n];
        push_compositions(&mut buf, 0, deg, &mut out);
    }
    out
}

// Emits exponent vectors summing to `remaining` in increasing lex order.
fn push_compositions(buf: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == buf.len() {
        buf[pos] = remaining;
        out.push(Monomial(buf.to_vec()));
        return;
    }
    if buf.is_empty() {
        if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    for e in 0..=remaining {
        buf[pos] = e;
        push_compositions(buf, pos + 1, remaining - e, out);
    }
    buf[pos] = 0;
}

/// Total degree; the zero polynomial has degree `NegInfinity`, below every integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse polynomial in `n` variables; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    spec: FieldSpec,
    n: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{:?}, n={}]({})", self.spec, self.n, self)
    }
}

impl Polynomial {
    pub fn zero(spec: &FieldSpec, n: usize) -> Self {
        Polynomial {
            spec: spec.clone(),
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(spec: &FieldSpec, n: usize, c: FieldElement) -> Self {
        Self::from_terms(spec, n, [(Monomial::one(n), c)]).expect("constant term is well formed")
    }

    /// Builds a polynomial, combining repeated monomials and dropping zero coefficients.
    pub fn from_terms(
        spec: &FieldSpec,
        n: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Self> {
        let mut p = Self::zero(spec, n);
        for (m, c) in terms {
            if m.num_vars() != n {
                return Err(Error::usage(format!(
                    "monomial has {} variables, polynomial has {n}",
                    m.num_vars()
                )));
            }
            if !spec.contains(c) {
                return Err(Error::usage(format!("coefficient {c} outside GF({})", spec.order_string())));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.spec.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        // grlex order puts the highest degree last
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |m| Degree::Finite(m.degree()))
    }

    /// `Some(d)` if every term has degree `d`. The zero polynomial is
    /// homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => Some(0),
            Some(d) => degs.all(|e| e == d).then_some(d),
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.spec != other.spec || self.n != other.n {
            return Err(Error::usage("polynomials over different rings"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), self.spec.neg(c));
        }
        Ok(out)
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let mut out = Self::zero(&self.spec, self.n);
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), self.spec.mul(a, c));
        }
        out
    }

    fn check_point(&self, x: &[FieldElement]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::usage(format!(
                "point has dimension {}, polynomial has {} variables",
                x.len(),
                self.n
            )));
        }
        if let Some(c) = x.iter().find(|c| !self.spec.contains(**c)) {
            return Err(Error::usage(format!("coordinate {c} outside the field")));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[FieldElement]) -> Result<FieldElement> {
        self.check_point(x)?;
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[FieldElement]) -> FieldElement {
        let f = &self.spec;
        let mut acc = FieldElement::ZERO;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (&xi, &e) in x.iter().zip(m.exponents()) {
                if e > 0 {
                    t = f.mul(t, f.pow(xi, e as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Sub-polynomial made of the total-degree-`i` terms.
    pub fn homogeneous_part(&self, i: u32) -> Polynomial {
        Polynomial {
            spec: self.spec.clone(),
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == i)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Terms of total degree at most `i`.
    pub fn truncate_degree(&self, i: u32) -> Polynomial {
        Polynomial {
            spec: self.spec.clone(),
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= i)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// The univariate polynomial `a -> f(base + a * direction)`, by symbolic expansion.
    pub fn restrict_to_line(
        &self,
        base: &[FieldElement],
        direction: &[FieldElement],
    ) -> Result<UnivariatePolynomial> {
        self.check_point(base)?;
        self.check_point(direction)?;
        let f = &self.spec;
        // powers[i][e] = (base_i + a * dir_i)^e
        let max_exp: Vec<u32> = (0..self.n)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<UnivariatePolynomial>> = (0..self.n)
            .map(|i| {
                let lin = UnivariatePolynomial::new(f, vec![base[i], direction[i]]);
                let mut pw = vec![UnivariatePolynomial::one(f)];
                for e in 1..=max_exp[i] as usize {
                    pw.push(pw[e - 1].mul(&lin));
                }
                pw
            })
            .collect();
        let mut acc = vec![FieldElement::ZERO; self.degree().finite().map_or(0, |d| d as usize + 1)];
        for (m, &c) in &self.terms {
            let mut t = UnivariatePolynomial::new(f, vec![c]);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            for (j, &tc) in t.coeffs.iter().enumerate() {
                acc[j] = f.add(acc[j], tc);
            }
        }
        Ok(UnivariatePolynomial::new(f, acc))
    }

    /// Coefficient of `a^e` in `self(base + a * direction)`.
    pub fn top_coefficient_on_line(
        &self,
        direction: &[FieldElement],
        base: &[FieldElement],
        e: u32,
    ) -> Result<FieldElement> {
        Ok(self.restrict_to_line(base, direction)?.coefficient(e as usize))
    }

    /// Checks `f(c * x) = c^d * f(x)` at each point, for homogeneous `f` of degree `d`.
    pub fn check_scaling<'a>(
        &self,
        c: FieldElement,
        points: impl IntoIterator<Item = &'a [FieldElement]>,
    ) -> Result<bool> {
        let d = self
            .homogeneous_degree()
            .ok_or_else(|| Error::usage("scaling identity needs a homogeneous polynomial"))?;
        let f = &self.spec;
        let cd = f.pow(c, d as u64);
        for x in points {
            self.check_point(x)?;
            let cx: Vec<FieldElement> = x.iter().map(|&xi| f.mul(c, xi)).collect();
            if self.evaluate_unchecked(&cx) != f.mul(cd, self.evaluate_unchecked(x)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parses the text form written by `Display`: `"c*x1^e1*x2^e2+..."`, or `"0"`.
    /// Variables are 1-based; `x1` means `x1^1`; a missing coefficient means 1.
    pub fn parse(spec: &FieldSpec, n: usize, s: &str) -> Result<Polynomial> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        let mut p = Self::zero(spec, n);
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(Error::parse(0, "empty term"));
            }
            let mut coeff = FieldElement::ONE;
            let mut exps = vec![0u32; n];
            for factor in term.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, exp) = match var.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (var, "1"),
                    };
                    let idx: usize = idx
                        .parse()
                        .map_err(|_| Error::parse(0, format!("bad variable in {factor:?}")))?;
                    let exp: u32 = exp
                        .parse()
                        .map_err(|_| Error::parse(0, format!("bad exponent in {factor:?}")))?;
                    if idx == 0 || idx > n {
                        return Err(Error::parse(0, format!("variable x{idx} out of range 1..={n}")));
                    }
                    exps[idx - 1] += exp;
                } else {
                    let v: u32 = factor
                        .parse()
                        .map_err(|_| Error::parse(0, format!("bad factor {factor:?}")))?;
                    let c = spec
                        .element(v)
                        .map_err(|_| Error::parse(0, format!("coefficient {v} outside the field")))?;
                    coeff = spec.mul(coeff, c);
                }
            }
            p.add_term(Monomial(exps), coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            write!(f, "{c}")?;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    write!(f, "*x{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial in the line parameter `a`, coefficients by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl UnivariatePolynomial {
    pub fn new(spec: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePolynomial {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn one(spec: &FieldSpec) -> Self {
        Self::new(spec, vec![FieldElement::ONE])
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coefficient(&self, e: usize) -> FieldElement {
        self.coeffs.get(e).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            l => Degree::Finite(l as u32 - 1),
        }
    }

    pub fn evaluate(&self, a: FieldElement) -> FieldElement {
        let f = &self.spec;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn mul(&self, other: &UnivariatePolynomial) -> UnivariatePolynomial {
        let f = &self.spec;
        if self.is_zero() || other.is_zero() {
            return Self::new(f, Vec::new());
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, out)
    }
}
