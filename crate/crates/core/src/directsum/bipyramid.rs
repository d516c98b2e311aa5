use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::cone::{self, Ray};
use crate::error::{Error, Result};
use crate::gluing;
use crate::linalg::{self, span_intersection, IntMatrix, IntVector};
use crate::semigroup::GeneratorSet;

/// `{e_i + e_n, -e_i + e_n : i < n}`, the iterated internal sum of `n - 1`
/// two-dimensional simplex cones along `e_n`.
pub fn bipyramid(n: usize) -> Result<GeneratorSet> {
    if n < 2 {
        return Err(Error::BadDimension { min: 2, got: n });
    }
    let apex = IntVector::unit(n, n - 1);
    let mut vectors = Vec::with_capacity(2 * (n - 1));
    for i in 0..n - 1 {
        let e = IntVector::unit(n, i);
        vectors.push(apex.add(&e));
        vectors.push(apex.sub(&e));
    }
    Ok(GeneratorSet::new(vectors)?.with_name(format!("bipyramid-{n}")))
}

/// How a general bipyramidal cone is assembled from two-dimensional simplex
/// cones by internal sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BipyramidTree {
    Simplex {
        rays: Vec<Ray>,
    },
    Sum {
        a: IntVector,
        left: Box<BipyramidTree>,
        right: Box<BipyramidTree>,
    },
}

/// Splits the extreme rays of `pos(A)` recursively into internal sums of
/// two-dimensional simplex cones; `None` when no such splitting exists.
///
/// An internal sum keeps every extreme ray of both parts, so searching over
/// partitions of the ray set is complete. Every general bipyramidal cone has
/// exactly `2·dim - 2` rays, which prunes most subsets.
pub fn is_general_bipyramidal(a: &GeneratorSet) -> Result<Option<BipyramidTree>> {
    let rays = cone::extreme_rays(a)?;
    if rays.len() > 63 {
        return Err(Error::TooManyGenerators {
            got: rays.len(),
            limit: 63,
        });
    }
    let mut search = Search {
        rays: rays.into_iter().map(Ray::into_direction).collect(),
        ambient: a.ambient(),
        memo: HashMap::new(),
    };
    let full = (1u64 << search.rays.len()) - 1;
    Ok(search.solve(full))
}

struct Search {
    rays: Vec<IntVector>,
    ambient: usize,
    memo: HashMap<u64, Option<BipyramidTree>>,
}

impl Search {
    fn pick(&self, mask: u64) -> Vec<IntVector> {
        (0..self.rays.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.rays[i].clone())
            .collect()
    }

    fn rank(&self, mask: u64) -> usize {
        linalg::rank(&IntMatrix::new(self.pick(mask), self.ambient).expect("uniform rows"))
    }

    fn solve(&mut self, mask: u64) -> Option<BipyramidTree> {
        if let Some(t) = self.memo.get(&mask) {
            return t.clone();
        }
        let t = self.solve_uncached(mask);
        self.memo.insert(mask, t.clone());
        t
    }

    fn solve_uncached(&mut self, mask: u64) -> Option<BipyramidTree> {
        let count = mask.count_ones() as usize;
        let dim = self.rank(mask);
        if dim < 2 || count != 2 * dim - 2 {
            return None;
        }
        if dim == 2 {
            let rays = self.pick(mask).into_iter().map(|r| Ray::through(&r).expect("nonzero")).collect();
            return Some(BipyramidTree::Simplex { rays });
        }
        let idx: Vec<usize> = (0..self.rays.len()).filter(|i| mask >> i & 1 == 1).collect();
        let (lowest, rest) = idx.split_first().expect("nonempty");
        // Each part needs at least two rays.
        for size in 1..rest.len().saturating_sub(1) {
            for comb in rest.iter().copied().combinations(size) {
                let m1 = comb.iter().fold(1u64 << lowest, |m, &i| m | 1 << i);
                let m2 = mask & !m1;
                let (d1, d2) = (self.rank(m1), self.rank(m2));
                if d1 + d2 != dim + 1
                    || m1.count_ones() as usize != 2 * d1 - 2
                    || m2.count_ones() as usize != 2 * d2 - 2
                {
                    continue;
                }
                let (r1, r2) = (self.pick(m1), self.pick(m2));
                let Some(a) = internal_line(&r1, &r2, self.ambient) else {
                    continue;
                };
                let Some(left) = self.solve(m1) else { continue };
                let Some(right) = self.solve(m2) else { continue };
                return Some(BipyramidTree::Sum {
                    a,
                    left: Box::new(left),
                    right: Box::new(right),
                });
            }
        }
        None
    }
}

/// Shared line of two ray sets in both cones and on no ray of either.
fn internal_line(r1: &[IntVector], r2: &[IntVector], n: usize) -> Option<IntVector> {
    let m1 = IntMatrix::new(r1.to_vec(), n).ok()?;
    let m2 = IntMatrix::new(r2.to_vec(), n).ok()?;
    let span = span_intersection(&m1, &m2).ok()?;
    if span.rank() != 1 {
        return None;
    }
    let gen = span.rows()[0].clone();
    let a = [gen.clone(), gen.neg()]
        .into_iter()
        .find(|v| cone::member(v, r1).is_some() && cone::member(v, r2).is_some())?;
    let on_ray = r1.iter().chain(r2).any(|r| a.is_parallel_to(r));
    (!on_ray).then_some(a)
}

/// The extreme-ray bound `k ≤ 2n - 2` for a complete intersection cone and
/// its equality case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub bound_holds: bool,
    pub equality: bool,
    pub bipyramidal: bool,
    /// The bound holds and equality occurs exactly for bipyramidal cones.
    pub consistent: bool,
}

pub fn check_ray_bound(a: &GeneratorSet) -> Result<BoundReport> {
    let rays = cone::extreme_rays(a)?;
    let n = cone::cone_dim(a);
    if n < 2 {
        return Err(Error::DimensionOne);
    }
    if !gluing::is_ci_cone(a)?.verdict {
        return Err(Error::NotCICone);
    }
    let k = rays.len();
    let bipyramidal = is_general_bipyramidal(a)?.is_some();
    let bound_holds = k <= 2 * n - 2;
    let equality = k == 2 * n - 2;
    Ok(BoundReport {
        n,
        k,
        bound_holds,
        equality,
        bipyramidal,
        consistent: bound_holds && equality == bipyramidal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(rows: &[&[i64]]) -> GeneratorSet {
        GeneratorSet::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn bipyramid_family() {
        assert_eq!(bipyramid(2).unwrap().vectors(), gs(&[&[1, 1], &[-1, 1]]).vectors());
        assert_eq!(
            bipyramid(3).unwrap().vectors(),
            gs(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]).vectors()
        );
        for n in 2..=5 {
            let b = bipyramid(n).unwrap();
            assert_eq!(b.len(), 2 * n - 2);
            assert_eq!(cone::extreme_rays(&b).unwrap().len(), 2 * n - 2);
            assert!(is_general_bipyramidal(&b).unwrap().is_some(), "n = {n}");
        }
        assert_eq!(bipyramid(1), Err(Error::BadDimension { min: 2, got: 1 }));
    }

    #[test]
    fn simplex_cones() {
        assert!(is_general_bipyramidal(&gs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap().is_none());
        assert!(is_general_bipyramidal(&gs(&[&[2, 1], &[1, 3]])).unwrap().is_some());
        assert!(is_general_bipyramidal(&gs(&[&[4]])).unwrap().is_none());
    }

    #[test]
    fn ray_bound_reports() {
        let r = check_ray_bound(&bipyramid(5).unwrap()).unwrap();
        assert_eq!((r.n, r.k), (5, 8));
        assert!(r.bound_holds && r.equality && r.bipyramidal && r.consistent);

        assert_eq!(check_ray_bound(&gs(&[&[4], &[6], &[9]])), Err(Error::DimensionOne));
        let pentagon = gs(&[&[1, 0, 1], &[0, 1, 1], &[-1, 1, 1], &[-1, -1, 1], &[1, -1, 1]]);
        assert_eq!(check_ray_bound(&pentagon), Err(Error::NotCICone));
    }

    #[test]
    fn internal_sum_of_two_and_three_simplex() {
        // pos{(1,0,0,1),(-1,0,0,1)} ⊕ pos{(0,1,0,1),(0,0,1,1),(0,-1,-1,1)} along e_4.
        let a = gs(&[
            &[1, 0, 0, 1],
            &[-1, 0, 0, 1],
            &[0, 1, 0, 1],
            &[0, 0, 1, 1],
            &[0, -1, -1, 1],
        ]);
        let r = check_ray_bound(&a).unwrap();
        assert_eq!((r.n, r.k), (4, 5));
        assert!(r.bound_holds && !r.equality && !r.bipyramidal && r.consistent);
    }
}
