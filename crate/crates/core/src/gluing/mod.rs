//! Gluing and s-gluing of index partitions, and the recursive decisions built
//! on them.
//!
//! A partition `E1 ⊔ E2` of the generator indices is a gluing when the two
//! lattices meet in a line `Z a` and `a` lies in both semigroups; it is an
//! s-gluing when only some positive multiple `t·a` does. Recursively gluing
//! down to linearly independent leaves decides complete intersections of
//! `N A` ([`is_complete_intersection`]) and of the cone `pos(A)`
//! ([`is_ci_cone`]).

mod chain;
mod search;

pub use chain::{chain_of_partitions, PartitionChain};
pub use search::{
    is_ci_cone, is_ci_cone_with, is_complete_intersection, is_complete_intersection_with,
    Decision, SearchOptions, DEFAULT_MAX_GENS,
};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::cone;
use crate::error::{Error, Result};
use crate::linalg::{lattice_intersection, IntMatrix, IntVector, LatticeBasis};
use crate::semigroup::{membership_with, GeneratorSet, MembershipCertificate};

/// Certificate that `N A = N A^{E1} + N A^{E2}` is a gluing along `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingCertificate {
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
    pub a: IntVector,
    /// `a` in `N A^{E1}`, coefficients in the order of `e1`.
    pub cert1: MembershipCertificate,
    pub cert2: MembershipCertificate,
    /// HNF basis of `Z A^{E1} ∩ Z A^{E2}`.
    pub lattice: LatticeBasis,
}

/// Certificate of an s-gluing: `t·a` lies in both parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SGluingCertificate {
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
    pub a: IntVector,
    #[serde(serialize_with = "crate::json::big")]
    pub t: BigInt,
    /// `t·a` in `N A^{E1}`.
    pub cert1: MembershipCertificate,
    pub cert2: MembershipCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Gluing(GluingCertificate),
    SGluing(SGluingCertificate),
}

impl Certificate {
    pub fn e1(&self) -> &[usize] {
        match self {
            Certificate::Gluing(c) => &c.e1,
            Certificate::SGluing(c) => &c.e1,
        }
    }

    pub fn e2(&self) -> &[usize] {
        match self {
            Certificate::Gluing(c) => &c.e2,
            Certificate::SGluing(c) => &c.e2,
        }
    }

    pub fn a(&self) -> &IntVector {
        match self {
            Certificate::Gluing(c) => &c.a,
            Certificate::SGluing(c) => &c.a,
        }
    }
}

/// Type of the cone direct sum realised at a tree node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SumType {
    /// `a` lies on no extreme ray of either part.
    Internal,
    External,
}

/// Binary decomposition of an index set into linearly independent leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionTree {
    Leaf {
        indices: Vec<usize>,
    },
    Node {
        left: Box<DecompositionTree>,
        right: Box<DecompositionTree>,
        cert: Certificate,
        sum_type: SumType,
    },
}

impl DecompositionTree {
    /// All indices covered, sorted.
    pub fn indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.leaves().into_iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Leaf index sets from left to right.
    pub fn leaves(&self) -> Vec<&[usize]> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let DecompositionTree::Leaf { indices } = t {
                out.push(indices.as_slice());
            }
        });
        out
    }

    /// Internal nodes in pre-order.
    pub fn nodes(&self) -> Vec<&DecompositionTree> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if matches!(t, DecompositionTree::Node { .. }) {
                out.push(t);
            }
        });
        out
    }

    pub fn count(&self, ty: SumType) -> usize {
        self.nodes()
            .iter()
            .filter(|n| matches!(n, DecompositionTree::Node { sum_type, .. } if *sum_type == ty))
            .count()
    }

    pub fn depth(&self) -> usize {
        match self {
            DecompositionTree::Leaf { .. } => 1,
            DecompositionTree::Node { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// The same tree with every index increased by `offset`.
    pub fn shifted(&self, offset: usize) -> DecompositionTree {
        let shift = |xs: &[usize]| xs.iter().map(|i| i + offset).collect::<Vec<_>>();
        match self {
            DecompositionTree::Leaf { indices } => DecompositionTree::Leaf {
                indices: shift(indices),
            },
            DecompositionTree::Node {
                left,
                right,
                cert,
                sum_type,
            } => {
                let mut cert = cert.clone();
                match &mut cert {
                    Certificate::Gluing(c) => {
                        c.e1 = shift(&c.e1);
                        c.e2 = shift(&c.e2);
                    }
                    Certificate::SGluing(c) => {
                        c.e1 = shift(&c.e1);
                        c.e2 = shift(&c.e2);
                    }
                }
                DecompositionTree::Node {
                    left: Box::new(left.shifted(offset)),
                    right: Box::new(right.shifted(offset)),
                    cert,
                    sum_type: *sum_type,
                }
            }
        }
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a DecompositionTree)) {
        f(self);
        if let DecompositionTree::Node { left, right, .. } = self {
            left.walk(f);
            right.walk(f);
        }
    }
}

/// Decides whether `E1 ⊔ E2` is a gluing of `A`.
pub fn check_gluing(a: &GeneratorSet, e1: &[usize], e2: &[usize]) -> Result<Option<GluingCertificate>> {
    check_partition(a.len(), e1, e2)?;
    let c = cone::integer_functional(a)?;
    Ok(glue(a, e1, e2, &c))
}

/// Decides whether `E1 ⊔ E2` is an s-gluing of `A`, with the least `t`.
pub fn check_s_gluing(a: &GeneratorSet, e1: &[usize], e2: &[usize]) -> Result<Option<SGluingCertificate>> {
    check_partition(a.len(), e1, e2)?;
    let c = cone::integer_functional(a)?;
    Ok(s_glue(a, e1, e2, &c))
}

fn check_partition(m: usize, e1: &[usize], e2: &[usize]) -> Result<()> {
    if e1.is_empty() || e2.is_empty() {
        return Err(Error::BadPartition("both parts must be nonempty".into()));
    }
    let mut seen = BTreeSet::new();
    for &i in e1.iter().chain(e2) {
        if i >= m {
            return Err(Error::BadPartition(format!("index {i} out of range 0..{m}")));
        }
        if !seen.insert(i) {
            return Err(Error::BadPartition(format!("index {i} appears twice")));
        }
    }
    if seen.len() != m {
        let missing = (0..m).find(|i| !seen.contains(i)).expect("some index is missing");
        return Err(Error::BadPartition(format!("index {missing} is not covered")));
    }
    Ok(())
}

fn part(a: &GeneratorSet, idx: &[usize]) -> Vec<IntVector> {
    idx.iter().map(|&i| a.get(i).clone()).collect()
}

/// The rank-one generator of `Z A^{E1} ∩ Z A^{E2}`, if the intersection is a line.
fn shared_lattice_line(g1: &[IntVector], g2: &[IntVector], n: usize) -> Option<LatticeBasis> {
    let l1 = LatticeBasis::from_generators(&IntMatrix::new(g1.to_vec(), n).ok()?);
    let l2 = LatticeBasis::from_generators(&IntMatrix::new(g2.to_vec(), n).ok()?);
    let l = lattice_intersection(&l1, &l2).ok()?;
    (l.rank() == 1).then_some(l)
}

pub(crate) fn glue(a: &GeneratorSet, e1: &[usize], e2: &[usize], c: &IntVector) -> Option<GluingCertificate> {
    let g1 = part(a, e1);
    let g2 = part(a, e2);
    let lattice = shared_lattice_line(&g1, &g2, a.ambient())?;
    let gen = lattice.rows()[0].clone();
    for v in [gen.clone(), gen.neg()] {
        let Some(cert1) = membership_with(&v, &g1, c) else {
            continue;
        };
        let Some(cert2) = membership_with(&v, &g2, c) else {
            continue;
        };
        return Some(GluingCertificate {
            e1: e1.to_vec(),
            e2: e2.to_vec(),
            a: v,
            cert1,
            cert2,
            lattice,
        });
    }
    None
}

pub(crate) fn s_glue(a: &GeneratorSet, e1: &[usize], e2: &[usize], c: &IntVector) -> Option<SGluingCertificate> {
    let g1 = part(a, e1);
    let g2 = part(a, e2);
    let lattice = shared_lattice_line(&g1, &g2, a.ambient())?;
    let gen = lattice.rows()[0].clone();
    let (v, l1, l2) = [gen.clone(), gen.neg()].into_iter().find_map(|v| {
        let l1 = cone::member(&v, &g1)?;
        let l2 = cone::member(&v, &g2)?;
        Some((v, l1, l2))
    })?;

    // Clearing the denominators of each rational certificate gives a valid
    // multiplier, so the least common one is at most their lcm.
    let bound = l1.common_denominator().lcm(&l2.common_denominator());
    let mut t = BigInt::one();
    let (t, cert1, cert2) = loop {
        assert!(t <= bound, "lcm of certificate denominators is a common multiplier");
        let tv = v.scale(&t);
        if let Some(c1) = membership_with(&tv, &g1, c) {
            if let Some(c2) = membership_with(&tv, &g2, c) {
                break (t, c1, c2);
            }
        }
        t += 1;
    };
    Some(SGluingCertificate {
        e1: e1.to_vec(),
        e2: e2.to_vec(),
        a: v,
        t,
        cert1,
        cert2,
    })
}

/// Internal when `a` is parallel to no extreme ray of either part.
pub(crate) fn classify(a: &IntVector, g1: &[IntVector], g2: &[IntVector]) -> SumType {
    let on_ray = |g: &[IntVector]| cone::rays_of(g).iter().any(|r| r.contains(a));
    if on_ray(g1) || on_ray(g2) {
        SumType::External
    } else {
        SumType::Internal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(rows: &[&[i64]]) -> GeneratorSet {
        GeneratorSet::from_i64_rows(rows).unwrap()
    }

    fn coeffs(c: &MembershipCertificate) -> Vec<i64> {
        c.coefficients.iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn gluing_examples() {
        let a = gs(&[&[4], &[6], &[9]]);
        let g = check_gluing(&a, &[0, 1], &[2]).unwrap().unwrap();
        assert_eq!(g.a, IntVector::from([18]));
        assert_eq!(coeffs(&g.cert1), vec![3, 1]);
        assert_eq!(coeffs(&g.cert2), vec![2]);

        let a = gs(&[&[3], &[4], &[5]]);
        assert_eq!(check_gluing(&a, &[0], &[1, 2]).unwrap(), None);

        let a = gs(&[&[1, 0], &[0, 1]]);
        assert_eq!(check_gluing(&a, &[0], &[1]).unwrap(), None);
    }

    #[test]
    fn s_gluing_examples() {
        let a = gs(&[&[3], &[4], &[5]]);
        let s = check_s_gluing(&a, &[0], &[1, 2]).unwrap().unwrap();
        assert_eq!((s.a.clone(), s.t.clone()), (IntVector::from([3]), BigInt::from(3)));
        assert_eq!(coeffs(&s.cert1), vec![3]);
        assert_eq!(coeffs(&s.cert2), vec![1, 1]);

        let a = gs(&[&[4], &[6], &[9]]);
        let s = check_s_gluing(&a, &[0, 1], &[2]).unwrap().unwrap();
        assert_eq!(s.t, BigInt::from(1));

        let a = gs(&[&[1, 0], &[0, 1]]);
        assert_eq!(check_s_gluing(&a, &[0], &[1]).unwrap(), None);
    }

    #[test]
    fn bipyramid_glues_at_twice_the_apex() {
        let a = gs(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]);
        let g = check_gluing(&a, &[0, 1], &[2, 3]).unwrap().unwrap();
        assert_eq!(g.a, IntVector::from([0, 0, 2]));
        let s = check_s_gluing(&a, &[0, 1], &[2, 3]).unwrap().unwrap();
        assert_eq!(s.t, BigInt::from(1));
        assert_eq!(
            classify(&g.a, &part(&a, &[0, 1]), &part(&a, &[2, 3])),
            SumType::Internal
        );
    }

    #[test]
    fn partitions_are_validated() {
        let a = gs(&[&[4], &[6], &[9]]);
        for (e1, e2) in [
            (vec![], vec![0, 1, 2]),
            (vec![0, 1], vec![1, 2]),
            (vec![0], vec![1]),
            (vec![0, 1], vec![3]),
        ] {
            assert!(matches!(
                check_gluing(&a, &e1, &e2),
                Err(Error::BadPartition(_))
            ));
        }
        let line = gs(&[&[1], &[-1]]);
        assert_eq!(check_gluing(&line, &[0], &[1]), Err(Error::NotPointed));
    }

    #[test]
    fn gluing_implies_s_gluing_with_unit_multiple() {
        let a = gs(&[&[6], &[10], &[15], &[4]]);
        for (e1, e2) in [(vec![0, 1], vec![2, 3]), (vec![0], vec![1, 2, 3]), (vec![0, 3], vec![1, 2])] {
            if check_gluing(&a, &e1, &e2).unwrap().is_some() {
                let s = check_s_gluing(&a, &e1, &e2).unwrap().unwrap();
                assert_eq!(s.t, BigInt::from(1));
            }
        }
    }
}
