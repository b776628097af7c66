//! Exact row reduction over the rationals, used to present path spaces
//! modulo relations.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// A subspace of `Q^dim` kept in fully reduced row echelon form.
#[derive(Debug, Clone, Default)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(dim: usize) -> Self {
        Subspace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Subtracts the span from `v` so that all pivot coordinates vanish.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
    }

    /// Adds `v` to the span. Returns `false` if it was already contained.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Coordinates not used as pivots; their unit vectors give a basis of the
    /// quotient `Q^dim / span`.
    pub fn free_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = alloc::vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|&k| !is_pivot[k]).collect()
    }
}

/// A presentation `Q^dim / relations` with a fixed quotient basis.
#[derive(Debug, Clone)]
pub struct Quotient {
    relations: Subspace,
    basis: Vec<usize>,
}

impl Quotient {
    pub fn new(relations: Subspace) -> Self {
        let basis = relations.free_coordinates();
        Quotient { relations, basis }
    }

    pub fn free(dim: usize) -> Self {
        Quotient::new(Subspace::new(dim))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.relations.ambient_dim()
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn project(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        self.relations.reduce(&mut v);
        self.basis.iter().map(|&k| v[k].clone()).collect()
    }
}

pub fn unit(dim: usize, k: usize) -> Vec<Rational> {
    let mut v = alloc::vec![Rational::zero(); dim];
    v[k] = Rational::one();
    v
}

/// Rank of an integer matrix over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let dim = rows.first().map_or(0, Vec::len);
    let mut span = Subspace::new(dim);
    for row in rows {
        span.insert(
            row.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        );
    }
    span.rank()
}
