//! The affine semigroup `N A`: exact membership with certificates and the
//! semigroup of multiples `{t ≥ 1 : t·b ∈ N A}`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cone::{self, member};
use crate::error::{Error, Result};
use crate::linalg::{self, lp_feasible, IntMatrix, IntVector};

/// An ordered list `A = {a_0, …, a_{m-1}}` of nonzero vectors in `Z^n`.
///
/// Indices are positional and identify generators in partitions and
/// decomposition trees. Repeated vectors are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    vectors: Vec<IntVector>,
    ambient: usize,
    name: Option<String>,
}

impl GeneratorSet {
    pub fn new(vectors: Vec<IntVector>) -> Result<Self> {
        let ambient = vectors.first().map(IntVector::dim).ok_or(Error::EmptyInput)?;
        for (i, v) in vectors.iter().enumerate() {
            if v.dim() != ambient {
                return Err(Error::RaggedRows {
                    row: i,
                    got: v.dim(),
                    expected: ambient,
                });
            }
            if v.is_zero() {
                return Err(Error::ZeroGenerator(i));
            }
        }
        if ambient == 0 {
            return Err(Error::ZeroGenerator(0));
        }
        Ok(GeneratorSet {
            vectors,
            ambient,
            name: None,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| IntVector::from_i64s(r)).collect())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn get(&self, i: usize) -> &IntVector {
        &self.vectors[i]
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::new(self.vectors.clone(), self.ambient).expect("validated on construction")
    }

    /// The generators with the given indices, in the given order.
    pub fn subset(&self, indices: &[usize]) -> GeneratorSet {
        assert!(!indices.is_empty(), "subsets of generators are nonempty");
        GeneratorSet {
            vectors: indices.iter().map(|&i| self.vectors[i].clone()).collect(),
            ambient: self.ambient,
            name: None,
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &GeneratorSet) -> Result<GeneratorSet> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut vectors = self.vectors.clone();
        vectors.extend(other.vectors.iter().cloned());
        Ok(GeneratorSet {
            vectors,
            ambient: self.ambient,
            name: None,
        })
    }

    /// Every generator multiplied by a positive integer.
    pub fn scaled(&self, k: &BigInt) -> GeneratorSet {
        assert!(k.is_positive(), "scale factor must be positive");
        GeneratorSet {
            vectors: self.vectors.iter().map(|v| v.scale(k)).collect(),
            ambient: self.ambient,
            name: None,
        }
    }

    /// Z-linear independence of the generators.
    pub fn is_independent(&self) -> bool {
        linalg::rank(&self.matrix()) == self.len()
    }

    /// Lattice `Z A`.
    pub fn lattice(&self) -> linalg::LatticeBasis {
        linalg::LatticeBasis::from_generators(&self.matrix())
    }
}

impl Serialize for GeneratorSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vectors.serialize(s)
    }
}

/// Nonnegative integer coefficients with `Σ n_i a_i = b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MembershipCertificate {
    #[serde(serialize_with = "crate::json::big_seq")]
    pub coefficients: Vec<BigInt>,
}

impl MembershipCertificate {
    /// `Σ n_i a_i`.
    pub fn evaluate(&self, a: &GeneratorSet) -> IntVector {
        a.matrix().left_mul(&self.coefficients)
    }
}

/// `N A` is pointed exactly when `pos_Q(A)` is strongly convex.
pub fn validate(a: &GeneratorSet) -> bool {
    cone::is_strongly_convex(a).is_pointed()
}

/// Decides `b ∈ N A`.
///
/// Depth-first search over the generators in index order, trying the largest
/// admissible coefficient first; coefficients are bounded through an integer
/// positive functional `c` by `n_i ≤ (c·b)/(c·a_i)`. The certificate returned
/// is the lexicographically greatest one.
pub fn membership(b: &IntVector, a: &GeneratorSet) -> Result<Option<MembershipCertificate>> {
    check_ambient(b, a)?;
    let c = cone::integer_functional(a)?;
    Ok(membership_with(b, a.vectors(), &c))
}

/// Membership using a precomputed functional that is positive on `gens`.
pub(crate) fn membership_with(
    b: &IntVector,
    gens: &[IntVector],
    c: &IntVector,
) -> Option<MembershipCertificate> {
    let weights: Vec<BigInt> = gens.iter().map(|g| c.dot(g)).collect();
    debug_assert!(weights.iter().all(Signed::is_positive));
    let tails = (0..gens.len())
        .map(|i| {
            let m = IntMatrix::from_rows(gens[i..].to_vec()).expect("nonempty uniform rows");
            let (h, u) = linalg::hnf(&m);
            let independent = linalg::rank(&m) == gens.len() - i;
            Tail { h, u, independent }
        })
        .collect();
    let mut search = Search {
        gens,
        weights: &weights,
        c,
        tails,
        failed: HashSet::new(),
        coeffs: vec![BigInt::zero(); gens.len()],
    };
    search
        .run(0, b.clone())
        .then(|| MembershipCertificate {
            coefficients: search.coeffs,
        })
}

/// HNF data of `gens[i..]`.
struct Tail {
    h: IntMatrix,
    u: IntMatrix,
    independent: bool,
}

struct Search<'a> {
    gens: &'a [IntVector],
    weights: &'a [BigInt],
    c: &'a IntVector,
    tails: Vec<Tail>,
    failed: HashSet<(usize, IntVector)>,
    coeffs: Vec<BigInt>,
}

impl Search<'_> {
    fn run(&mut self, i: usize, residual: IntVector) -> bool {
        if residual.is_zero() {
            for x in &mut self.coeffs[i..] {
                x.set_zero();
            }
            return true;
        }
        if i == self.gens.len() {
            return false;
        }
        let budget = self.c.dot(&residual);
        if !budget.is_positive() {
            return false;
        }
        let tail = &self.tails[i];
        let Some(x) = linalg::solve_hnf(&residual, &tail.h, &tail.u) else {
            return false;
        };
        if tail.independent {
            // The representation is unique.
            if x.iter().any(Signed::is_negative) {
                return false;
            }
            for (dst, v) in self.coeffs[i..].iter_mut().zip(x.iter()) {
                *dst = v.clone();
            }
            return true;
        }
        let key = (i, residual);
        if self.failed.contains(&key) {
            return false;
        }
        let residual = key.1;
        if member(&residual, &self.gens[i..]).is_none() {
            self.failed.insert((i, residual));
            return false;
        }
        let mut n = budget.div_floor(&self.weights[i]);
        let mut rest = residual.sub(&self.gens[i].scale(&n));
        loop {
            if self.run(i + 1, rest.clone()) {
                self.coeffs[i] = n;
                return true;
            }
            if n.is_zero() {
                break;
            }
            n -= 1;
            rest = rest.add(&self.gens[i]);
        }
        self.failed.insert((i, residual));
        false
    }
}

/// `∃ t ≥ 1 : t·b ∈ N A`, equivalently `b ∈ pos_Q(A)`.
pub fn exists_positive_multiple(b: &IntVector, a: &GeneratorSet) -> Result<bool> {
    check_multiple_args(b, a)?;
    Ok(member(b, a.vectors()).is_some())
}

/// Least `t ≥ 1` with `t·b ∈ N A`.
///
/// The search is bounded by the common denominator `T` of one rational cone
/// certificate, since `T·b` has an integral certificate.
pub fn smallest_multiple(b: &IntVector, a: &GeneratorSet) -> Result<Option<BigInt>> {
    check_multiple_args(b, a)?;
    let Some(lambda) = member(b, a.vectors()) else {
        return Ok(None);
    };
    let bound = lambda.common_denominator();
    let c = cone::integer_functional(a)?;
    let mut t = BigInt::one();
    while t <= bound {
        if membership_with(&b.scale(&t), a.vectors(), &c).is_some() {
            return Ok(Some(t));
        }
        t += 1;
    }
    Err(Error::Internal(format!(
        "{bound}·{b} should lie in the semigroup"
    )))
}

/// The semigroup of multiples `M = {t ≥ 1 : t·b ∈ N A}`.
///
/// Every member is a multiple of `step`, and every multiple of `step` that is
/// at least `complete_from` is a member. `members` lists the members found up
/// to and including `scanned_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplesTrace {
    pub base: IntVector,
    #[serde(serialize_with = "crate::json::big")]
    pub step: BigInt,
    #[serde(serialize_with = "crate::json::big_seq")]
    pub members: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::big")]
    pub complete_from: BigInt,
    #[serde(serialize_with = "crate::json::big")]
    pub scanned_to: BigInt,
}

impl MultiplesTrace {
    pub fn contains(&self, t: &BigInt) -> bool {
        if !t.is_positive() || !t.is_multiple_of(&self.step) {
            return false;
        }
        *t >= self.complete_from || self.members.binary_search(t).is_ok()
    }

    /// Members in increasing order, continuing past the scanned range.
    pub fn iter(&self) -> impl Iterator<Item = BigInt> + '_ {
        let tail_start = self.scanned_to.clone() + &self.step;
        let step = self.step.clone();
        self.members
            .iter()
            .cloned()
            .chain(std::iter::successors(Some(tail_start), move |t| {
                Some(t + &step)
            }))
    }

    pub fn smallest(&self) -> &BigInt {
        &self.members[0]
    }
}

/// Scans `t·b ∈ N A` for increasing `t` until the conductor is passed.
///
/// The multiples form a semigroup contained in `step·N` that contains all
/// large multiples of `step`. Once `s/step` consecutive multiples of `step`
/// are members, where `s` is the smallest member, adding `s` covers every
/// later multiple, so the scan stops.
pub fn multiples_trace(b: &IntVector, a: &GeneratorSet) -> Result<MultiplesTrace> {
    check_multiple_args(b, a)?;
    if member(b, a.vectors()).is_none() {
        return Err(Error::NoMultipleExists);
    }
    let c = cone::integer_functional(a)?;
    Ok(trace_with(b, a, &c))
}

/// [`multiples_trace`] for `b ∈ pos(A)` and a functional positive on `A`.
pub(crate) fn trace_with(b: &IntVector, a: &GeneratorSet, c: &IntVector) -> MultiplesTrace {
    let step = multiples_period(b, a);
    let mut members: Vec<BigInt> = Vec::new();
    let mut run_start: Option<BigInt> = None;
    let mut run_len = BigInt::zero();
    let mut t = step.clone();
    loop {
        let hit = membership_with(&b.scale(&t), a.vectors(), c).is_some();
        if hit {
            members.push(t.clone());
            if run_start.is_none() {
                run_start = Some(t.clone());
                run_len.set_zero();
            }
            run_len += 1;
            let needed = &members[0] / &step;
            if run_len >= needed {
                return MultiplesTrace {
                    base: b.clone(),
                    step,
                    members,
                    complete_from: run_start.expect("run has started"),
                    scanned_to: t,
                };
            }
        } else {
            run_start = None;
        }
        t += &step;
    }
}

/// Generator of the group generated by `{t ∈ Z : t·b ∈ N A}`, assuming
/// `b ∈ pos(A)`.
///
/// The coefficient vectors `n ≥ 0` with `n·A ∈ Q⁺ b` form a cone whose
/// integer points generate the lattice of its span. That span is the set of
/// `n` supported on the generators of the smallest face containing `b` with
/// `n·A ∈ Q b`; the multipliers it realises are `D·Z` for a rational `D`,
/// and the integral ones are the multiples of the numerator of `D`.
pub(crate) fn multiples_period(b: &IntVector, a: &GeneratorSet) -> BigInt {
    let m = a.len();
    let n = a.ambient();

    // Generators that occur with positive weight in some representation of a
    // positive multiple of b.
    let mut rows: Vec<IntVector> = a.vectors().to_vec();
    rows.push(b.neg());
    let eq = IntMatrix::new(rows, n).expect("uniform rows");
    let zero = IntVector::zeros(n);
    let face: Vec<usize> = (0..m)
        .filter(|&i| lp_feasible(&eq, &zero, &[i]).is_some())
        .collect();
    debug_assert!(!face.is_empty(), "b is a nonzero member of the cone");

    // Integer n on the face with n·A ∈ Q b: kernel of A_F · P, P spanning b^⊥.
    let b_col = IntMatrix::new(b.iter().map(|x| IntVector::new(vec![x.clone()])).collect(), 1)
        .expect("single column");
    let perp = linalg::kernel_lattice(&b_col);
    let face_gens: Vec<IntVector> = face.iter().map(|&i| a.get(i).clone()).collect();
    let relations = if perp.rank() == 0 {
        IntMatrix::identity(face.len())
    } else {
        let p = perp.basis().transpose();
        let projected = IntMatrix::new(face_gens.clone(), n)
            .expect("uniform rows")
            .mul(&p);
        linalg::kernel_lattice(&projected).basis().clone()
    };

    let pivot = b.iter().position(|x| !x.is_zero()).expect("b is nonzero");
    let face_matrix = IntMatrix::new(face_gens, n).expect("uniform rows");
    let mut num_gcd = BigInt::zero();
    for row in relations.rows() {
        let image = face_matrix.left_mul(row);
        let t = BigRational::new(image[pivot].clone(), b[pivot].clone());
        num_gcd = num_gcd.gcd(t.numer());
    }
    debug_assert!(num_gcd.is_positive());
    num_gcd
}

fn check_ambient(b: &IntVector, a: &GeneratorSet) -> Result<()> {
    if b.dim() != a.ambient() {
        return Err(Error::AmbientMismatch(b.dim(), a.ambient()));
    }
    Ok(())
}

fn check_multiple_args(b: &IntVector, a: &GeneratorSet) -> Result<()> {
    check_ambient(b, a)?;
    if b.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !validate(a) {
        return Err(Error::NotPointed);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(rows: &[&[i64]]) -> GeneratorSet {
        GeneratorSet::from_i64_rows(rows).unwrap()
    }

    fn v(c: &[i64]) -> IntVector {
        IntVector::from_i64s(c)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn cert(a: &GeneratorSet, b: &[i64]) -> Option<Vec<i64>> {
        membership(&v(b), a).unwrap().map(|c| {
            assert_eq!(c.evaluate(a), v(b));
            c.coefficients.iter().map(|x| x.try_into().unwrap()).collect()
        })
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(GeneratorSet::new(vec![]), Err(Error::EmptyInput));
        assert_eq!(
            GeneratorSet::from_i64_rows(&[&[1, 2], &[0, 0]]),
            Err(Error::ZeroGenerator(1))
        );
        assert!(matches!(
            GeneratorSet::from_i64_rows(&[&[1, 2], &[3]]),
            Err(Error::RaggedRows { row: 1, .. })
        ));
    }

    #[test]
    fn validation_examples() {
        assert!(validate(&gs(&[&[4], &[6], &[9]])));
        assert!(!validate(&gs(&[&[1, 0], &[-1, 0]])));
        assert!(validate(&gs(&[&[1, 1], &[-1, 1], &[0, 1]])));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(cert(&gs(&[&[4], &[6]]), &[18]), Some(vec![3, 1]));
        assert_eq!(cert(&gs(&[&[4], &[5]]), &[3]), None);
        assert_eq!(cert(&gs(&[&[1, 0], &[0, 1]]), &[0, 0]), Some(vec![0, 0]));
        assert_eq!(cert(&gs(&[&[4], &[5]]), &[-4]), None);
        assert_eq!(cert(&gs(&[&[3], &[5], &[7]]), &[11]), Some(vec![2, 1, 0]));
        assert_eq!(
            membership(&v(&[1]), &gs(&[&[1], &[-1]])),
            Err(Error::NotPointed)
        );
    }

    #[test]
    fn membership_in_higher_dimension() {
        let a = gs(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]);
        assert_eq!(cert(&a, &[0, 0, 2]), Some(vec![1, 1, 0, 0]));
        assert_eq!(cert(&a, &[0, 0, 1]), None);
        assert_eq!(cert(&a, &[1, 1, 2]), Some(vec![1, 0, 1, 0]));
    }

    #[test]
    fn positive_multiples() {
        let a = gs(&[&[4], &[5]]);
        assert!(exists_positive_multiple(&v(&[3]), &a).unwrap());
        assert!(!exists_positive_multiple(&v(&[-1]), &a).unwrap());
        let b = gs(&[&[1, 0, 1], &[-1, 0, 1]]);
        assert!(exists_positive_multiple(&v(&[0, 0, 1]), &b).unwrap());
        assert_eq!(
            exists_positive_multiple(&v(&[0]), &a),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn smallest_multiple_examples() {
        assert_eq!(smallest_multiple(&v(&[3]), &gs(&[&[4], &[5]])).unwrap(), Some(big(3)));
        assert_eq!(smallest_multiple(&v(&[18]), &gs(&[&[4], &[6]])).unwrap(), Some(big(1)));
        assert_eq!(smallest_multiple(&v(&[1]), &gs(&[&[2]])).unwrap(), Some(big(2)));
        assert_eq!(smallest_multiple(&v(&[-1]), &gs(&[&[2]])).unwrap(), None);
        let b = gs(&[&[1, 0, 1], &[-1, 0, 1]]);
        assert_eq!(smallest_multiple(&v(&[0, 0, 1]), &b).unwrap(), Some(big(2)));
    }

    #[test]
    fn trace_examples() {
        let t = multiples_trace(&v(&[3]), &gs(&[&[4], &[5]])).unwrap();
        assert_eq!(t.step, big(1));
        assert_eq!(t.complete_from, big(3));
        assert_eq!(t.members, vec![big(3), big(4), big(5)]);
        assert!(!t.contains(&big(2)));
        assert!(t.contains(&big(100)));

        let t = multiples_trace(&v(&[18]), &gs(&[&[4], &[6]])).unwrap();
        assert_eq!(t.complete_from, big(1));

        let t = multiples_trace(&v(&[1]), &gs(&[&[1]])).unwrap();
        assert_eq!((t.step.clone(), t.complete_from.clone()), (big(1), big(1)));

        assert_eq!(
            multiples_trace(&v(&[-1]), &gs(&[&[1]])),
            Err(Error::NoMultipleExists)
        );
    }

    #[test]
    fn trace_with_holes() {
        // 7·{3,5}: 7t ∈ ⟨3,5⟩ ⇔ 7t ∉ {1,2,4,7}, i.e. t ≠ 1.
        let t = multiples_trace(&v(&[7]), &gs(&[&[3], &[5]])).unwrap();
        assert_eq!(t.smallest(), &big(2));
        assert_eq!(t.complete_from, big(2));
        let first: Vec<BigInt> = t.iter().take(4).collect();
        assert_eq!(first, vec![big(2), big(3), big(4), big(5)]);
    }

    #[test]
    fn trace_with_period_two() {
        // Along the z-axis only (0,0,2) contributes: multiples are 2N.
        let a = gs(&[&[1, 0, 0], &[0, 0, 2], &[1, 0, 1]]);
        let t = multiples_trace(&v(&[0, 0, 1]), &a).unwrap();
        assert_eq!(t.step, big(2));
        assert_eq!(t.complete_from, big(2));
        assert!(!t.contains(&big(3)));
        assert!(t.contains(&big(4)));
    }

    #[test]
    fn period_for_numerical_semigroups_is_one() {
        assert_eq!(multiples_period(&v(&[3]), &gs(&[&[4], &[5]])), big(1));
        assert_eq!(multiples_period(&v(&[2]), &gs(&[&[4], &[6]])), big(1));
        // 4 and 6 only produce even numbers, so odd t·1 are never reached.
        assert_eq!(multiples_period(&v(&[1]), &gs(&[&[4], &[6]])), big(2));
    }
}
