//! Dense Gaussian elimination over GF(q) and the vanishing-polynomial solver.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::kakeya::PointSet;
use crate::poly::{monomials_of_degree, DegreeMode, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>, // row-major
}

impl Matrix {
    pub fn zeros(spec: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            spec: spec.clone(),
            rows,
            cols,
            entries: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(spec: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::ONE;
        }
        m
    }

    pub fn from_rows(spec: &FieldSpec, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::usage("ragged matrix rows"));
        }
        if rows.iter().flatten().any(|&c| !spec.contains(c)) {
            return Err(Error::usage("matrix entry outside the field"));
        }
        Ok(Matrix {
            spec: spec.clone(),
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        })
    }

    /// Integer-encoded entries, for tests and small literals.
    pub fn from_values(spec: &FieldSpec, rows: &[&[u32]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| spec.element(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(spec, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::usage("vector length does not match column count"));
        }
        let f = &self.spec;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row echelon form and its pivot columns (strictly increasing).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.spec;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m[(r, c)]).expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = f.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                let factor = m[(i, c)];
                if i == r || factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f.mul(factor, m[(r, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A nonzero kernel vector, or `None` when the kernel is trivial. The free
    /// column with the smallest index is set to 1 and all other free columns to 0.
    pub fn nullspace_vector(&self) -> Option<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut v = vec![FieldElement::ZERO; self.cols];
        v[free] = FieldElement::ONE;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = self.spec.neg(r[(row, free)]);
        }
        Some(v)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;

    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.entries[i * self.cols + j]
    }
}

/// Rows: points of `k`; columns: monomials in graded-lex order.
pub fn evaluation_matrix(k: &PointSet, monomials: &[Monomial]) -> Matrix {
    let f = k.spec();
    let mut m = Matrix::zeros(f, k.len(), monomials.len());
    for (i, p) in k.points().enumerate() {
        for (j, mono) in monomials.iter().enumerate() {
            m[(i, j)] = mono
                .exponents()
                .iter()
                .zip(&p)
                .fold(FieldElement::ONE, |acc, (&e, &x)| f.mul(acc, f.pow(x, e as u64)));
        }
    }
    m
}

/// A nonzero polynomial of degree `d` (homogeneous, or at most `d`) vanishing on
/// `k`, or `None` if only the zero polynomial does. Deterministic: the
/// coefficient vector is [`Matrix::nullspace_vector`] of the evaluation matrix.
pub fn vanishing_polynomial(k: &PointSet, d: u32, mode: DegreeMode) -> Option<Polynomial> {
    let n = k.dim();
    let monomials = monomials_of_degree(n, d, mode);
    let v = evaluation_matrix(k, &monomials).nullspace_vector()?;
    let g = Polynomial::from_terms(k.spec(), n, monomials.into_iter().zip(v))
        .expect("monomials and coefficients come from the same ring");
    debug_assert!(!g.is_zero());
    debug_assert!(k.points().all(|x| g.evaluate_unchecked(&x).is_zero()));
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::space::Space;

    fn gf(s: &str) -> FieldSpec {
        FieldSpec::parse(s).unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn random_matrix(f: &FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let rows: Vec<Vec<_>> = (0..rows)
            .map(|_| (0..cols).map(|_| f.element(rng.gen_range(0..f.order())).unwrap()).collect())
            .collect();
        Matrix::from_rows(f, &rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf("5");
        let id = Matrix::identity(&f, 4);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2, 3]));
        let z = Matrix::zeros(&f, 3, 2);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        let f2 = gf("2");
        let m = Matrix::from_values(&f2, &[&[1, 1], &[1, 1]]).unwrap();
        let expect = Matrix::from_values(&f2, &[&[1, 1], &[0, 0]]).unwrap();
        assert_eq!(m.rref(), (expect, vec![0]));
    }

    #[test]
    fn rref_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for s in ["2", "7", "2^3 mod=1,1,0,1"] {
            let f = gf(s);
            for _ in 0..50 {
                let m = random_matrix(&f, rng.gen_range(1..7), rng.gen_range(1..9), &mut rng);
                let (r, p) = m.rref();
                assert_eq!(r.rref(), (r.clone(), p.clone()));
                assert!(p.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn nullspace_examples() {
        let f = gf("3");
        let m = Matrix::from_values(&f, &[&[1, 0, 0]]).unwrap();
        let v: Vec<u32> = m.nullspace_vector().unwrap().iter().map(|c| c.value()).collect();
        assert_eq!(v, vec![0, 1, 0]);
        let inv = Matrix::from_values(&f, &[&[1, 2], &[0, 1]]).unwrap();
        assert_eq!(inv.nullspace_vector(), None);
    }

    #[test]
    fn nullspace_multiply_back() {
        let f = gf("7");
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let m = random_matrix(&f, 5, 8, &mut rng);
            let v = m.nullspace_vector().expect("5x8 has a kernel");
            assert!(v.iter().any(|c| !c.is_zero()));
            assert!(m.mul_vec(&v).unwrap().iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn vanishing_examples() {
        let f = gf("3");
        let k = PointSet::from_values(&f, 2, &[vec![0, 0]]).unwrap();
        let g = vanishing_polynomial(&k, 1, DegreeMode::AtMost).unwrap();
        assert_eq!(g, Polynomial::parse(&f, 2, "x2").unwrap());
        let full = PointSet::full(&f, 2).unwrap();
        assert_eq!(vanishing_polynomial(&full, 2, DegreeMode::AtMost), None);
        let empty = PointSet::empty(&f, 2).unwrap();
        let one = vanishing_polynomial(&empty, 0, DegreeMode::Exactly).unwrap();
        assert_eq!(one, Polynomial::constant(&f, 2, FieldElement::ONE));
    }

    #[test]
    fn small_sets_always_have_vanishing_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (s, n, d) in [("5", 2, 3u32), ("3", 3, 2), ("7", 2, 4), ("2^2 mod=1,1,1", 3, 2)] {
            let f = gf(s);
            let sp = Space::new(&f, n).unwrap();
            let monos = binomial(d as u64 + n as u64 - 1, n as u64 - 1);
            for _ in 0..50 {
                let size = rng.gen_range(0..monos);
                let codes: Vec<u64> = (0..size).map(|_| rng.gen_range(0..sp.size())).collect();
                let k = PointSet::from_encodings(&sp, codes).unwrap();
                let g = vanishing_polynomial(&k, d, DegreeMode::Exactly).expect("pigeonhole");
                assert_eq!(g.homogeneous_degree(), Some(d));
                assert!(k.points().all(|x| g.evaluate(&x).unwrap().is_zero()));
            }
        }
    }
}
