//! Direct sums of cones along a shared line, general bipyramidal cones, the
//! `2n - 2` extreme-ray bound, the rescaling witness for complete
//! intersections, and a seeded instance generator.

mod bipyramid;
mod random;
mod witness;

pub use bipyramid::{bipyramid, check_ray_bound, is_general_bipyramidal, BipyramidTree, BoundReport};
pub use random::{
    non_pointed_pair, random_ci_instance, random_direct_sum_pair, random_partition, random_witness_pair,
    GenMode, PairKind,
};
pub use witness::{ci_witness, WitnessResult};

use serde::Serialize;

use crate::cone::{self, Ray};
use crate::error::{Error, Result};
use crate::gluing::SumType;
use crate::linalg::{span_intersection, IntVector};
use crate::semigroup::GeneratorSet;

/// Which external case of the ray count applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExternalCase {
    /// `a` spans an extreme ray of both cones.
    SharedRay,
    /// `a` spans an extreme ray of exactly one cone and disappears in the sum.
    AbsorbedRay,
}

/// `σ1 ⊕_a σ2` with its ray accounting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectSumResult {
    pub generators: GeneratorSet,
    pub a: IntVector,
    pub sum_type: SumType,
    pub external_case: Option<ExternalCase>,
    pub dims: (usize, usize),
    pub dim: usize,
    pub ray_counts: (usize, usize),
    pub predicted_rays: usize,
    pub actual_rays: Vec<Ray>,
}

/// The direct sum of `pos(A1)` and `pos(A2)`, when their spans meet in a line
/// `Q a` with `a` (or `-a`) in both cones.
pub fn direct_sum(a1: &GeneratorSet, a2: &GeneratorSet) -> Result<Option<DirectSumResult>> {
    if a1.ambient() != a2.ambient() {
        return Err(Error::AmbientMismatch(a1.ambient(), a2.ambient()));
    }
    if !cone::is_strongly_convex(a1).is_pointed() || !cone::is_strongly_convex(a2).is_pointed() {
        return Err(Error::NotPointed);
    }
    let Some(a) = shared_line(a1, a2)? else {
        return Ok(None);
    };

    let rays1 = cone::rays_of(a1.vectors());
    let rays2 = cone::rays_of(a2.vectors());
    let on1 = rays1.iter().any(|r| r.contains(&a));
    let on2 = rays2.iter().any(|r| r.contains(&a));
    let (sum_type, external_case) = match (on1, on2) {
        (false, false) => (SumType::Internal, None),
        (true, true) => (SumType::External, Some(ExternalCase::SharedRay)),
        _ => (SumType::External, Some(ExternalCase::AbsorbedRay)),
    };
    let k = rays1.len() + rays2.len();
    let predicted_rays = if sum_type == SumType::Internal { k } else { k - 1 };
    let generators = a1.concat(a2)?;
    Ok(Some(DirectSumResult {
        dims: (cone::cone_dim(a1), cone::cone_dim(a2)),
        dim: cone::cone_dim(&generators),
        ray_counts: (rays1.len(), rays2.len()),
        actual_rays: cone::rays_of(generators.vectors()),
        generators,
        a,
        sum_type,
        external_case,
        predicted_rays,
    }))
}

/// Primitive generator of `span(A1) ∩ span(A2)` lying in both cones.
///
/// `None` when the spans do not meet in a line or neither sign of the
/// generator lies in both cones.
pub fn shared_line(a1: &GeneratorSet, a2: &GeneratorSet) -> Result<Option<IntVector>> {
    let span = span_intersection(&a1.matrix(), &a2.matrix())?;
    if span.rank() != 1 {
        return Ok(None);
    }
    let gen = span.rows()[0].clone();
    Ok([gen.clone(), gen.neg()]
        .into_iter()
        .find(|v| cone::member(v, a1.vectors()).is_some() && cone::member(v, a2.vectors()).is_some()))
}

/// Adding a single ray `r` from the span of `σ1` is external and leaves
/// `σ1` unchanged.
pub fn absorbs_ray(a1: &GeneratorSet, r: &IntVector) -> Result<bool> {
    let single = GeneratorSet::new(vec![r.clone()])?;
    let Some(sum) = direct_sum(a1, &single)? else {
        return Ok(false);
    };
    Ok(sum.sum_type == SumType::External && cone::cones_equal(&sum.generators, a1)?)
}
