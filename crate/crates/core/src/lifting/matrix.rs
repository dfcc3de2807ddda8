use std::fmt;
use std::ops::Mul;

use num_rational::BigRational;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Field, Ring};

/// Square matrix over a ring, stored row-major. Indices are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupMatrix<F> {
    dim: usize,
    entries: Vec<F>,
}

impl<F: Ring> GroupMatrix<F> {
    pub fn zero(dim: usize) -> Self {
        GroupMatrix { dim, entries: vec![F::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for k in 0..dim {
            m.set(k, k, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        GroupMatrix { dim, entries: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> GroupMatrix<G> {
        GroupMatrix { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zero(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).clone() + a.clone() * b.clone();
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zero(d);
        for r in 0..d {
            for c in 0..d {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    fn is_unitriangular(&self, upper: bool) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let v = self.get(r, c);
                if r == c {
                    v.is_one()
                } else if (c < r) == upper {
                    v.is_zero()
                } else {
                    true
                }
            })
        })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_unitriangular(true)
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_unitriangular(false)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r == c || self.get(r, c).is_zero()))
    }
}

impl<F: Field> GroupMatrix<F> {
    /// Determinant of the submatrix on the given (0-based) rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> F {
        assert_eq!(rows.len(), cols.len());
        let sub = GroupMatrix::from_rows(
            rows.iter().map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect()).collect(),
        );
        sub.det()
    }

    pub fn det(&self) -> F {
        let d = self.dim;
        let mut a = self.clone();
        let mut det = F::one();
        for k in 0..d {
            let Some(p) = (k..d).find(|&r| !a.get(r, k).is_zero()) else {
                return F::zero();
            };
            if p != k {
                for c in 0..d {
                    let tmp = a.get(k, c).clone();
                    a.set(k, c, a.get(p, c).clone());
                    a.set(p, c, tmp);
                }
                det = -det;
            }
            let pivot = a.get(k, k).clone();
            det = det * pivot.clone();
            for r in k + 1..d {
                let f = a.get(r, k).clone() / pivot.clone();
                if f.is_zero() {
                    continue;
                }
                for c in k..d {
                    let v = a.get(r, c).clone() - f.clone() * a.get(k, c).clone();
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    /// Leading principal minors `Delta_1, ..., Delta_n`.
    pub fn leading_principal_minors(&self) -> Vec<F> {
        (1..=self.dim).map(|k| self.minor(&(0..k).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>())).collect()
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(d);
        for k in 0..d {
            let p = (k..d).find(|&r| !a.get(r, k).is_zero()).ok_or(Error::Singular)?;
            if p != k {
                for c in 0..d {
                    let (x, y) = (a.get(k, c).clone(), a.get(p, c).clone());
                    a.set(k, c, y);
                    a.set(p, c, x);
                    let (x, y) = (inv.get(k, c).clone(), inv.get(p, c).clone());
                    inv.set(k, c, y);
                    inv.set(p, c, x);
                }
            }
            let pivot = a.get(k, k).recip();
            for c in 0..d {
                a.set(k, c, a.get(k, c).clone() * pivot.clone());
                inv.set(k, c, inv.get(k, c).clone() * pivot.clone());
            }
            for r in 0..d {
                if r == k {
                    continue;
                }
                let f = a.get(r, k).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..d {
                    a.set(r, c, a.get(r, c).clone() - f.clone() * a.get(k, c).clone());
                    inv.set(r, c, inv.get(r, c).clone() - f.clone() * inv.get(k, c).clone());
                }
            }
        }
        Ok(inv)
    }
}

impl<F: Ring> Mul for &GroupMatrix<F> {
    type Output = GroupMatrix<F>;
    fn mul(self, rhs: Self) -> GroupMatrix<F> {
        GroupMatrix::mul(self, rhs)
    }
}

impl<F: fmt::Display> fmt::Display for GroupMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.entries[r * self.dim + c].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Exact matrices serialize as nested lists of `"p/q"` strings.
impl Serialize for GroupMatrix<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.dim))?;
        for row in self.entries.chunks(self.dim) {
            let row: Vec<String> = row.iter().map(format_rational).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}
