use std::fmt;
use std::ops::{Add, Mul, Sub};

use faer::Mat;
use num_complex::Complex64;

use super::{Cyclotomic, CyclotomicError, Rational};

/// Dense matrix over Q(ζ_m); all entries share one order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    entries: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<Cyclotomic>,
    ) -> Result<Self, CyclotomicError> {
        if rows == 0 || cols == 0 {
            return Err(CyclotomicError::Shape("matrix must be non-empty".into()));
        }
        if entries.len() != rows * cols {
            return Err(CyclotomicError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let order = entries[0].order();
        if let Some(bad) = entries.iter().find(|e| e.order() != order) {
            return Err(CyclotomicError::OrderMismatch(order, bad.order()));
        }
        Ok(CycMatrix {
            rows,
            cols,
            order,
            entries,
        })
    }

    /// Builds from rows of possibly mixed orders, embedding into their lcm.
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self, CyclotomicError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CyclotomicError::Shape("ragged rows".into()));
        }
        let order = rows
            .iter()
            .flatten()
            .fold(1u32, |acc, x| super::lcm_u32(acc, x.order()));
        let entries = rows
            .into_iter()
            .flatten()
            .map(|x| x.embed(order))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(r, c, entries)
    }

    pub fn zero(rows: usize, cols: usize, order: u32) -> Self {
        CycMatrix {
            rows,
            cols,
            order,
            entries: vec![Cyclotomic::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        Self::scalar(n, &Cyclotomic::one(order))
    }

    pub fn scalar(n: usize, value: &Cyclotomic) -> Self {
        let mut m = Self::zero(n, n, value.order());
        for i in 0..n {
            m.entries[i * n + i] = value.clone();
        }
        m
    }

    pub fn diagonal(values: &[Cyclotomic]) -> Result<Self, CyclotomicError> {
        let n = values.len();
        let mut rows = vec![vec![Cyclotomic::zero(1); n]; n];
        for (i, v) in values.iter().enumerate() {
            rows[i][i] = v.clone();
        }
        Self::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn embed(&self, order: u32) -> Result<Self, CyclotomicError> {
        if order == self.order {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(order))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            order,
            entries,
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).conj());
            }
        }
        CycMatrix {
            rows: self.cols,
            cols: self.rows,
            order: self.order,
            entries,
        }
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.rows.min(self.cols)).fold(Cyclotomic::zero(self.order), |acc, i| {
            &acc + self.get(i, i)
        })
    }

    /// `trace(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &CycMatrix) -> Cyclotomic {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = Cyclotomic::zero(super::lcm_u32(self.order, other.order));
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, i);
                if !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
        }
        acc
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let entries: Vec<Cyclotomic> = self
            .entries
            .iter()
            .map(|e| {
                if e.is_zero() {
                    Cyclotomic::zero(super::lcm_u32(self.order, c.order()))
                } else {
                    e * c
                }
            })
            .collect();
        let order = entries[0].order();
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            order,
            entries,
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            entries: self.entries.iter().map(|e| e.scale(q)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Cyclotomic::is_zero)
    }

    /// Entrywise equality of values, regardless of the ambient orders.
    pub fn equals(&self, other: &CycMatrix) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<Cyclotomic> {
        if !self.is_square() {
            return None;
        }
        let c = self.get(0, 0).clone();
        let ok = (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    *e == c
                } else {
                    e.is_zero()
                }
            })
        });
        ok.then_some(c)
    }

    /// Exact test of `M · M† = I`.
    pub fn is_unitary(&self) -> bool {
        self.is_square() && (self * &self.adjoint()).is_identity()
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn to_complex(&self) -> Mat<Complex64> {
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_complex())
    }
}

impl<'a> Mul<&'a CycMatrix> for &'a CycMatrix {
    type Output = CycMatrix;

    fn mul(self, rhs: &'a CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let order = super::lcm_u32(self.order, rhs.order);
        let mut entries = vec![Cyclotomic::zero(order); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut entries[i * rhs.cols + j];
                    *slot = &*slot + &(a * b);
                }
            }
        }
        CycMatrix {
            rows: self.rows,
            cols: rhs.cols,
            order,
            entries,
        }
    }
}

impl<'a> Add<&'a CycMatrix> for &'a CycMatrix {
    type Output = CycMatrix;

    fn add(self, rhs: &'a CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries: Vec<Cyclotomic> = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            order: entries[0].order(),
            entries,
        }
    }
}

impl<'a> Sub<&'a CycMatrix> for &'a CycMatrix {
    type Output = CycMatrix;

    fn sub(self, rhs: &'a CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries: Vec<Cyclotomic> = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            order: entries[0].order(),
            entries,
        }
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMatrix[{}x{}, order {}]", self.rows, self.cols, self.order)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
