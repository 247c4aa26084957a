//! The affine space `F_q^n`: point encodings, canonical directions, and lines.
//!
//! A point `(c_1, ..., c_n)` is encoded as the mixed-radix integer
//! `c_1 q^{n-1} + ... + c_n`, coordinate 1 most significant.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Largest `q^n` the space helpers will index densely.
pub const MAX_SPACE_POINTS: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    spec: FieldSpec,
    n: usize,
    size: u64,
}

impl Space {
    pub fn new(spec: &FieldSpec, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("dimension must be at least 1"));
        }
        let size = (spec.order() as u64)
            .checked_pow(n as u32)
            .filter(|&s| s <= MAX_SPACE_POINTS)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "q^n = {}^{n} exceeds {MAX_SPACE_POINTS} points",
                    spec.order()
                ))
            })?;
        Ok(Space {
            spec: spec.clone(),
            n,
            size,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `q^n`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn encode(&self, point: &[FieldElement]) -> u64 {
        debug_assert_eq!(point.len(), self.n);
        let q = self.spec.order() as u64;
        point.iter().fold(0, |acc, c| acc * q + c.value() as u64)
    }

    pub fn try_encode(&self, point: &[FieldElement]) -> Result<u64> {
        if point.len() != self.n {
            return Err(Error::usage(format!(
                "point has dimension {}, expected {}",
                point.len(),
                self.n
            )));
        }
        if let Some(c) = point.iter().find(|c| !self.spec.contains(**c)) {
            return Err(Error::usage(format!("coordinate {c} outside the field")));
        }
        Ok(self.encode(point))
    }

    pub fn decode(&self, mut code: u64) -> Vec<FieldElement> {
        debug_assert!(code < self.size);
        let q = self.spec.order() as u64;
        let mut out = vec![FieldElement::ZERO; self.n];
        for c in out.iter_mut().rev() {
            *c = self.spec.element((code % q) as u32).expect("digit below q");
            code /= q;
        }
        out
    }

    pub fn decode_values(&self, code: u64) -> Vec<u32> {
        self.decode(code).iter().map(|c| c.value()).collect()
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
        (0..self.size).map(|c| self.decode(c))
    }

    pub fn scale(&self, c: FieldElement, x: &[FieldElement]) -> Vec<FieldElement> {
        x.iter().map(|&xi| self.spec.mul(c, xi)).collect()
    }

    /// `base + a * dir`.
    pub fn line_point(&self, base: &[FieldElement], a: FieldElement, dir: &[FieldElement]) -> Vec<FieldElement> {
        base.iter()
            .zip(dir)
            .map(|(&b, &d)| self.spec.add(b, self.spec.mul(a, d)))
            .collect()
    }

    /// Encodings of `{base + a * dir : a ∈ F}`, indexed by `a`.
    pub fn line(&self, base: &[FieldElement], dir: &[FieldElement]) -> Vec<u64> {
        self.spec
            .elements()
            .map(|a| self.encode(&self.line_point(base, a, dir)))
            .collect()
    }

    /// All canonical directions (first nonzero coordinate 1), by increasing encoding.
    /// There are `(q^n - 1) / (q - 1)` of them.
    pub fn canonical_directions(&self) -> Vec<Direction> {
        (1..self.size)
            .map(|c| self.decode(c))
            .filter(|v| v.iter().find(|c| !c.is_zero()) == Some(&FieldElement::ONE))
            .map(Direction)
            .collect()
    }

    /// One base point per line of the parallel class of `dir`: the points whose
    /// coordinate at the pivot of `dir` is zero, by increasing encoding.
    pub fn transversal(&self, dir: &Direction) -> Vec<Vec<FieldElement>> {
        (0..self.transversal_len())
            .map(|i| self.transversal_point(dir, i))
            .collect()
    }

    /// `q^{n-1}`, the number of lines in each parallel class.
    pub fn transversal_len(&self) -> u64 {
        self.size / self.spec.order() as u64
    }

    /// The `index`-th transversal point of `dir`.
    pub fn transversal_point(&self, dir: &Direction, mut index: u64) -> Vec<FieldElement> {
        let pivot = dir.pivot();
        let q = self.spec.order() as u64;
        // inserting a zero digit at the pivot preserves the order of the rest
        let mut out = vec![FieldElement::ZERO; self.n];
        for i in (0..self.n).rev().filter(|&i| i != pivot) {
            out[i] = self.spec.element((index % q) as u32).expect("digit below q");
            index /= q;
        }
        out
    }

    /// The transversal base point of the line through `point` in direction `dir`.
    pub fn line_base(&self, point: &[FieldElement], dir: &Direction) -> Vec<FieldElement> {
        let a = self.spec.neg(point[dir.pivot()]);
        self.line_point(point, a, dir.coords())
    }
}

/// Canonical direction vector: nonzero, first nonzero coordinate equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction(Vec<FieldElement>);

impl Direction {
    /// Scales a nonzero vector to its canonical representative.
    pub fn canonicalize(spec: &FieldSpec, v: &[FieldElement]) -> Result<Self> {
        let lead = v
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::usage("the zero vector has no direction"))?;
        let inv = spec.inv(lead)?;
        Ok(Direction(v.iter().map(|&c| spec.mul(inv, c)).collect()))
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn values(&self) -> Vec<u32> {
        self.0.iter().map(|c| c.value()).collect()
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).expect("directions are nonzero")
    }
}

/// A line `{base + a * direction}` recorded by coordinate values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRecord {
    pub direction: Vec<u32>,
    pub base: Vec<u32>,
}
