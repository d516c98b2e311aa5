use std::cmp::Ordering;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{IntVector, LatticeBasis};

/// `x^{u⁺} − x^{u⁻}` with exponent vectors of length `m`.
///
/// Elements of a toric ideal returned by this module have disjoint supports
/// and `uplus` is the leading term. Intermediate results of [`buchberger`]
/// on non-saturated input may share support.
///
/// [`buchberger`]: super::buchberger
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Binomial {
    pub uplus: IntVector,
    pub uminus: IntVector,
}

impl Binomial {
    /// `(b⁺, b⁻)` for a lattice vector `b`.
    pub fn from_lattice_vector(b: &IntVector) -> Binomial {
        let zero = num_bigint::BigInt::default();
        let plus = b.iter().map(|x| if x > &zero { x.clone() } else { zero.clone() }).collect();
        let minus = b.iter().map(|x| if x < &zero { -x } else { zero.clone() }).collect();
        Binomial {
            uplus: IntVector::new(plus),
            uminus: IntVector::new(minus),
        }
    }

    pub fn nvars(&self) -> usize {
        self.uplus.dim()
    }

    /// `u⁺ − u⁻`.
    pub fn exponent_difference(&self) -> IntVector {
        self.uplus.sub(&self.uminus)
    }

    pub fn has_disjoint_supports(&self) -> bool {
        self.uplus
            .iter()
            .zip(self.uminus.iter())
            .all(|(p, q)| p.is_zero() || q.is_zero())
    }
}

/// One generator per basis row: `b ↦ x^{b⁺} − x^{b⁻}`.
pub fn lattice_to_binomials(b: &LatticeBasis) -> Vec<Binomial> {
    b.rows().iter().filter(|r| !r.is_zero()).map(Binomial::from_lattice_vector).collect()
}

/// Weighted graded reverse lexicographic order.
///
/// Monomials compare by `w`-degree first; ties are broken reverse
/// lexicographically with `cheapest` as the last variable, then the
/// remaining variables from `m − 1` down to `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    weights: Vec<i64>,
    cheapest: usize,
    tiebreak: Vec<usize>,
}

impl TermOrder {
    /// Standard grevlex on `m` variables.
    pub fn grevlex(m: usize) -> TermOrder {
        TermOrder::weighted(vec![1; m], m.saturating_sub(1))
    }

    /// # Panics
    /// If a weight is not positive or `cheapest` is out of range.
    pub fn weighted(weights: Vec<i64>, cheapest: usize) -> TermOrder {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        assert!(cheapest < weights.len(), "cheapest variable out of range");
        let tiebreak = std::iter::once(cheapest)
            .chain((0..weights.len()).rev().filter(|&v| v != cheapest))
            .collect();
        TermOrder {
            weights,
            cheapest,
            tiebreak,
        }
    }

    pub fn with_cheapest(&self, cheapest: usize) -> TermOrder {
        TermOrder::weighted(self.weights.clone(), cheapest)
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn cheapest(&self) -> usize {
        self.cheapest
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub(crate) fn degree(&self, u: &[i64]) -> i64 {
        self.weights.iter().zip(u).map(|(w, x)| w * x).sum()
    }

    pub(crate) fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        self.degree(a).cmp(&self.degree(b)).then_with(|| {
            self.tiebreak
                .iter()
                .find(|&&v| a[v] != b[v])
                .map_or(Ordering::Equal, |&v| b[v].cmp(&a[v]))
        })
    }
}

/// Engine-side binomial, `lead > trail` once oriented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bin {
    pub lead: Vec<i64>,
    pub trail: Vec<i64>,
}

impl Bin {
    pub fn from_public(b: &Binomial) -> Result<Bin> {
        let conv = |u: &IntVector| -> Result<Vec<i64>> {
            u.iter()
                .map(|x| {
                    x.to_i64()
                        .filter(|&v| v >= 0)
                        .ok_or_else(|| Error::BudgetExceeded(format!("exponent {x} out of range")))
                })
                .collect()
        };
        Ok(Bin {
            lead: conv(&b.uplus)?,
            trail: conv(&b.uminus)?,
        })
    }

    pub fn to_public(&self) -> Binomial {
        Binomial {
            uplus: IntVector::from_i64s(&self.lead),
            uminus: IntVector::from_i64s(&self.trail),
        }
    }

    /// Swaps terms so that `lead > trail`; `None` for the zero binomial.
    pub fn oriented(mut self, ord: &TermOrder) -> Option<Bin> {
        match ord.cmp(&self.lead, &self.trail) {
            Ordering::Equal => None,
            Ordering::Less => {
                std::mem::swap(&mut self.lead, &mut self.trail);
                Some(self)
            }
            Ordering::Greater => Some(self),
        }
    }
}

pub(crate) fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn coprime(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// `m · t / l`, the image of `m` under the rewrite `l → t`.
pub(crate) fn rewrite(m: &[i64], l: &[i64], t: &[i64]) -> Vec<i64> {
    m.iter().zip(l).zip(t).map(|((m, l), t)| m - l + t).collect()
}
