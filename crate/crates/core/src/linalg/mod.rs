//! Exact integer and rational linear algebra.
//!
//! Every quantity is an unbounded [`BigInt`] or a [`BigRational`] kept in
//! lowest terms. Matrices store generators as rows; relations among
//! generators are therefore *left* kernels (`x · M = 0`).

mod hnf;
mod lattice;
mod simplex;

pub use hnf::{hnf, rank};
pub use lattice::{
    kernel_lattice, lattice_intersection, primitive, saturation, solve_in_lattice,
    span_intersection,
};
pub use simplex::lp_feasible;
pub(crate) use lattice::solve_hnf;

use std::fmt;
use std::ops::{Deref, Index};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A vector of unbounded integers. Ordering is lexicographic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        IntVector(vec![BigInt::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Gcd of the absolute values of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `Some(q)` with `self = q · other` when the vectors are proportional.
    pub fn ratio_to(&self, other: &IntVector) -> Option<BigRational> {
        let pivot = other.0.iter().position(|c| !c.is_zero())?;
        let q = BigRational::new(self.0[pivot].clone(), other.0[pivot].clone());
        let ok = self.0.iter().zip(&other.0).all(|(a, b)| {
            BigRational::from_integer(a.clone()) == &q * BigRational::from_integer(b.clone())
        });
        ok.then_some(q)
    }

    /// True when `self` and `other` are nonzero and point in the same direction.
    pub fn is_parallel_to(&self, other: &IntVector) -> bool {
        matches!(self.ratio_to(other), Some(q) if q.is_positive())
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl Deref for IntVector {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl From<Vec<BigInt>> for IntVector {
    fn from(v: Vec<BigInt>) -> Self {
        IntVector(v)
    }
}

impl From<&[i64]> for IntVector {
    fn from(v: &[i64]) -> Self {
        IntVector::from_i64s(v)
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(v: [i64; N]) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(crate::json::JsonInt))
    }
}

/// A rectangular integer matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: Vec<IntVector>,
    cols: usize,
}

impl IntMatrix {
    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn new(rows: Vec<IntVector>, cols: usize) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.dim() != cols {
                return Err(Error::RaggedRows {
                    row: i,
                    got: r.dim(),
                    expected: cols,
                });
            }
        }
        Ok(IntMatrix { rows, cols })
    }

    /// Builds a matrix from nonempty rows, taking the column count from the first.
    pub fn from_rows(rows: Vec<IntVector>) -> Result<Self> {
        let cols = rows.first().map(IntVector::dim).ok_or(Error::EmptyInput)?;
        Self::new(rows, cols)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| IntVector::from_i64s(r)).collect())
    }

    pub fn empty(cols: usize) -> Self {
        IntMatrix {
            rows: Vec::new(),
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: (0..n).map(|i| IntVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<IntVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &IntVector {
        &self.rows[i]
    }

    /// Row vector times matrix: `Σ x_i · row_i`.
    pub fn left_mul(&self, x: &[BigInt]) -> IntVector {
        debug_assert_eq!(x.len(), self.nrows());
        let mut out = vec![BigInt::zero(); self.cols];
        for (xi, row) in x.iter().zip(&self.rows) {
            if xi.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row.iter()) {
                *o += xi * r;
            }
        }
        IntVector(out)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        debug_assert_eq!(self.cols, other.nrows());
        IntMatrix {
            rows: self.rows.iter().map(|r| other.left_mul(r)).collect(),
            cols: other.cols,
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.cols)
            .map(|j| IntVector(self.rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        IntMatrix {
            rows,
            cols: self.nrows(),
        }
    }

    /// Rows of `self` followed by the rows of `other`.
    pub fn stack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::AmbientMismatch(self.cols, other.cols));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(IntMatrix {
            rows,
            cols: self.cols,
        })
    }

    pub fn negated(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows.iter().map(IntVector::neg).collect(),
            cols: self.cols,
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.rows[i][j]
    }
}

/// A basis of a sublattice of `Z^n`: Z-linearly independent rows.
///
/// Bases produced by this module are in Hermite normal form, so two bases of
/// the same lattice compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeBasis {
    basis: IntMatrix,
}

impl LatticeBasis {
    /// The lattice generated by the rows of `m` (rows need not be independent).
    pub fn from_generators(m: &IntMatrix) -> Self {
        let (h, _) = hnf(m);
        let rows = h.into_rows().into_iter().filter(|r| !r.is_zero()).collect();
        LatticeBasis {
            basis: IntMatrix {
                rows,
                cols: m.ncols(),
            },
        }
    }

    pub fn zero(ambient: usize) -> Self {
        LatticeBasis {
            basis: IntMatrix::empty(ambient),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rows(&self) -> &[IntVector] {
        self.basis.rows()
    }

    /// Membership test: `v ∈ L`.
    pub fn contains(&self, v: &IntVector) -> bool {
        solve_in_lattice(v, self).is_some()
    }
}

impl Serialize for LatticeBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.basis.rows())
    }
}

/// A vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalVector(coords)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot_int(&self, v: &IntVector) -> BigRational {
        self.0
            .iter()
            .zip(v.iter())
            .map(|(a, b)| a * BigRational::from_integer(b.clone()))
            .sum()
    }

    /// Least common multiple of the denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |l, q| l.lcm(q.denom()))
    }

    /// The positive multiple of `self` that is a primitive integer vector.
    /// Returns the zero vector for the zero input.
    pub fn to_primitive_integer(&self) -> IntVector {
        let d = self.common_denominator();
        let v = IntVector(
            self.0
                .iter()
                .map(|q| (q * BigRational::from_integer(d.clone())).to_integer())
                .collect(),
        );
        let g = v.content();
        if g.is_zero() {
            v
        } else {
            IntVector(v.0.iter().map(|c| c / &g).collect())
        }
    }
}

impl Deref for RationalVector {
    type Target = [BigRational];
    fn deref(&self) -> &[BigRational] {
        &self.0
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|q| q.to_string()))
    }
}

/// Rational helper: `q` as a `BigRational` from two machine integers.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
