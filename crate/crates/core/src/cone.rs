//! Rational polyhedral cones `pos_Q(A)` given by generator lists.
//!
//! All tests reduce to exact feasibility problems solved by
//! [`lp_feasible`]; extreme rays are the primitive generator directions that
//! are not in the cone of the remaining directions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, lp_feasible, IntMatrix, IntVector, RationalVector};
use crate::semigroup::GeneratorSet;

/// A primitive integer direction `Q⁺ r`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Ray(IntVector);

impl Ray {
    /// The ray through a nonzero vector.
    pub fn through(v: &IntVector) -> Result<Ray> {
        Ok(Ray(linalg::primitive(v)?.0))
    }

    pub fn direction(&self) -> &IntVector {
        &self.0
    }

    pub fn into_direction(self) -> IntVector {
        self.0
    }

    /// True when `v` is a positive multiple of this ray's direction.
    pub fn contains(&self, v: &IntVector) -> bool {
        v.is_parallel_to(&self.0)
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ray{}", self.0)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Outcome of the pointedness test, with an exact certificate either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Convexity {
    /// `c · a_i > 0` for every generator; `c` is a primitive integer vector.
    Pointed { functional: RationalVector },
    /// A nonzero `x` with `x ∈ σ` and `-x ∈ σ`.
    NotPointed { lineality: IntVector },
}

impl Convexity {
    pub fn is_pointed(&self) -> bool {
        matches!(self, Convexity::Pointed { .. })
    }
}

/// A cone together with its cached invariants.
#[derive(Clone, Debug)]
pub struct Cone {
    generators: GeneratorSet,
    dim: usize,
    convexity: Convexity,
    extreme_rays: Vec<Ray>,
}

impl Cone {
    pub fn new(generators: GeneratorSet) -> Cone {
        let dim = cone_dim(&generators);
        let convexity = is_strongly_convex(&generators);
        let extreme_rays = if convexity.is_pointed() {
            rays_of(generators.vectors())
        } else {
            Vec::new()
        };
        Cone {
            generators,
            dim,
            convexity,
            extreme_rays,
        }
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_pointed(&self) -> bool {
        self.convexity.is_pointed()
    }

    pub fn convexity(&self) -> &Convexity {
        &self.convexity
    }

    /// Extreme rays, sorted lexicographically. Errors on non-pointed cones.
    pub fn extreme_rays(&self) -> Result<&[Ray]> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        Ok(&self.extreme_rays)
    }
}

/// Dimension of `pos_Q(A)`, i.e. the rank of the generators.
pub fn cone_dim(a: &GeneratorSet) -> usize {
    linalg::rank(&a.matrix())
}

/// Decides `σ ∩ (-σ) = {0}` and returns the matching certificate.
pub fn is_strongly_convex(a: &GeneratorSet) -> Convexity {
    strong_convexity(a.vectors(), a.ambient())
}

pub(crate) fn strong_convexity(gens: &[IntVector], ambient: usize) -> Convexity {
    if let Some(c) = separating_functional(gens, ambient) {
        return Convexity::Pointed {
            functional: c.to_rational(),
        };
    }
    // Gordan: some λ ≥ 0, Σλ = 1 with Σ λ_i a_i = 0; any a_j with λ_j > 0 is
    // then in σ ∩ (-σ).
    let rows: Vec<IntVector> = gens
        .iter()
        .map(|g| {
            let mut v = g.to_vec();
            v.push(BigInt::from(1));
            IntVector::new(v)
        })
        .collect();
    let eq = IntMatrix::new(rows, ambient + 1).expect("uniform rows");
    let mut rhs = IntVector::zeros(ambient + 1).into_inner();
    rhs[ambient] = BigInt::from(1);
    let lambda = lp_feasible(&eq, &IntVector::new(rhs), &[])
        .expect("Gordan alternative: non-pointed cones have a positive dependency");
    let j = lambda
        .iter()
        .position(Signed::is_positive)
        .expect("λ sums to one");
    Convexity::NotPointed {
        lineality: gens[j].clone(),
    }
}

/// Primitive integer `c` with `c · a_i ≥ 1` for all generators, if one exists.
pub(crate) fn separating_functional(gens: &[IntVector], ambient: usize) -> Option<IntVector> {
    let m = gens.len();
    // Variables: p (ambient), q (ambient), slack s (m); c = p - q.
    // Equation i: (p - q) · a_i - s_i = 1.
    let mut rows = Vec::with_capacity(2 * ambient + m);
    for k in 0..ambient {
        rows.push(IntVector::new(gens.iter().map(|g| g[k].clone()).collect()));
    }
    for k in 0..ambient {
        rows.push(IntVector::new(gens.iter().map(|g| -&g[k]).collect()));
    }
    for i in 0..m {
        rows.push(IntVector::unit(m, i).neg());
    }
    let eq = IntMatrix::new(rows, m).expect("uniform rows");
    let rhs = IntVector::new(vec![BigInt::from(1); m]);
    let x = lp_feasible(&eq, &rhs, &[])?;
    let c = RationalVector::new(
        (0..ambient)
            .map(|k| &x[k] - &x[ambient + k])
            .collect(),
    );
    Some(c.to_primitive_integer())
}

/// A `c` with `c · a_i > 0` for every generator. Errors when `σ` is not pointed.
pub fn positive_functional(a: &GeneratorSet) -> Result<RationalVector> {
    match is_strongly_convex(a) {
        Convexity::Pointed { functional } => Ok(functional),
        Convexity::NotPointed { .. } => Err(Error::NotPointed),
    }
}

/// Integer version of [`positive_functional`].
pub(crate) fn integer_functional(a: &GeneratorSet) -> Result<IntVector> {
    separating_functional(a.vectors(), a.ambient()).ok_or(Error::NotPointed)
}

/// Nonnegative rational `λ` with `Σ λ_i a_i = v`, or `None`.
pub fn cone_membership(v: &IntVector, a: &GeneratorSet) -> Result<Option<RationalVector>> {
    check_ambient(v, a)?;
    Ok(member(v, a.vectors()))
}

pub(crate) fn member(v: &IntVector, gens: &[IntVector]) -> Option<RationalVector> {
    if gens.is_empty() {
        return v.is_zero().then(RationalVector::default);
    }
    let eq = IntMatrix::from_rows(gens.to_vec()).expect("nonempty uniform rows");
    lp_feasible(&eq, v, &[])
}

/// Relative-interior membership: `v = Σ λ_i a_i` with every `λ_i > 0`.
pub fn relint_membership(v: &IntVector, a: &GeneratorSet) -> Result<bool> {
    check_ambient(v, a)?;
    let strict: Vec<usize> = (0..a.len()).collect();
    Ok(lp_feasible(&a.matrix(), v, &strict).is_some())
}

/// Extreme rays of a pointed cone, as sorted primitive directions.
pub fn extreme_rays(a: &GeneratorSet) -> Result<Vec<Ray>> {
    if !is_strongly_convex(a).is_pointed() {
        return Err(Error::NotPointed);
    }
    Ok(rays_of(a.vectors()))
}

/// Extreme rays of `pos(gens)`; the caller guarantees pointedness.
pub(crate) fn rays_of(gens: &[IntVector]) -> Vec<Ray> {
    let dirs: Vec<IntVector> = gens
        .iter()
        .map(|g| linalg::primitive(g).expect("generators are nonzero").0)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    (0..dirs.len())
        .filter(|&i| {
            let others: Vec<IntVector> = dirs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, d)| d.clone())
                .collect();
            member(&dirs[i], &others).is_none()
        })
        .map(|i| Ray(dirs[i].clone()))
        .collect()
}

/// True when the number of extreme rays equals the dimension.
pub fn is_simplex(a: &GeneratorSet) -> Result<bool> {
    Ok(extreme_rays(a)?.len() == cone_dim(a))
}

/// Equality of pointed cones via their extreme rays.
pub fn cones_equal(a: &GeneratorSet, b: &GeneratorSet) -> Result<bool> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch(a.ambient(), b.ambient()));
    }
    Ok(extreme_rays(a)? == extreme_rays(b)?)
}

fn check_ambient(v: &IntVector, a: &GeneratorSet) -> Result<()> {
    if v.dim() != a.ambient() {
        return Err(Error::AmbientMismatch(v.dim(), a.ambient()));
    }
    Ok(())
}

#[cfg(test)]
pub(crate) fn evaluates_positive(c: &RationalVector, v: &IntVector) -> bool {
    c.dot_int(v).is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    fn gs(rows: &[&[i64]]) -> GeneratorSet {
        GeneratorSet::from_i64_rows(rows).unwrap()
    }

    fn v(c: &[i64]) -> IntVector {
        IntVector::from_i64s(c)
    }

    fn bipyramid3() -> GeneratorSet {
        gs(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]])
    }

    #[test]
    fn dimensions() {
        assert_eq!(cone_dim(&gs(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(cone_dim(&gs(&[&[4], &[6], &[9]])), 1);
        assert_eq!(cone_dim(&bipyramid3()), 3);
    }

    #[test]
    fn line_is_not_pointed() {
        match is_strongly_convex(&gs(&[&[1, 0], &[-1, 0]])) {
            Convexity::NotPointed { lineality } => assert_eq!(lineality, v(&[1, 0])),
            other => panic!("expected a line, got {other:?}"),
        }
        assert_eq!(
            positive_functional(&gs(&[&[1, 0], &[-1, 0]])),
            Err(Error::NotPointed)
        );
    }

    #[test]
    fn pointed_cones_have_positive_functionals() {
        for a in [
            gs(&[&[1, 1], &[-1, 1]]),
            gs(&[&[1, 0], &[0, 1], &[1, 1]]),
            gs(&[&[4], &[6], &[9]]),
            bipyramid3(),
        ] {
            let c = positive_functional(&a).unwrap();
            for g in a.vectors() {
                assert!(evaluates_positive(&c, g));
            }
        }
        assert_eq!(
            positive_functional(&gs(&[&[1, 1], &[-1, 1]])).unwrap(),
            RationalVector::new(vec![ratio(0, 1), ratio(1, 1)])
        );
        assert_eq!(
            positive_functional(&gs(&[&[4], &[6], &[9]])).unwrap(),
            RationalVector::new(vec![ratio(1, 1)])
        );
    }

    #[test]
    fn membership_examples() {
        let a = gs(&[&[1, 0, 1], &[-1, 0, 1]]);
        let l = cone_membership(&v(&[0, 0, 2]), &a).unwrap().unwrap();
        assert_eq!(l.coords(), &[ratio(1, 1), ratio(1, 1)]);

        let l = cone_membership(&v(&[3]), &gs(&[&[4], &[5]])).unwrap().unwrap();
        assert_eq!(l.coords(), &[ratio(3, 4), ratio(0, 1)]);

        // (0,1) = (1,1) - (1,0) needs a negative coefficient.
        assert!(cone_membership(&v(&[0, 1]), &gs(&[&[1, 0], &[1, 1]]))
            .unwrap()
            .is_none());

        assert_eq!(
            cone_membership(&v(&[1]), &gs(&[&[1, 0]])),
            Err(Error::AmbientMismatch(1, 2))
        );
    }

    #[test]
    fn relint_examples() {
        let a = gs(&[&[1, 0, 1], &[-1, 0, 1]]);
        assert!(relint_membership(&v(&[0, 0, 1]), &a).unwrap());
        assert!(!relint_membership(&v(&[1, 0, 1]), &a).unwrap());
        assert!(!relint_membership(&v(&[0, 0]), &gs(&[&[1, 0]])).unwrap());
    }

    #[test]
    fn extreme_ray_examples() {
        let rays = |a: &GeneratorSet| -> Vec<IntVector> {
            extreme_rays(a)
                .unwrap()
                .into_iter()
                .map(Ray::into_direction)
                .collect()
        };
        assert_eq!(
            rays(&gs(&[&[1, 0], &[0, 1], &[1, 1]])),
            vec![v(&[0, 1]), v(&[1, 0])]
        );
        assert_eq!(
            rays(&gs(&[&[2, 0], &[1, 0], &[0, 1]])),
            vec![v(&[0, 1]), v(&[1, 0])]
        );
        assert_eq!(rays(&bipyramid3()).len(), 4);
        assert_eq!(
            extreme_rays(&gs(&[&[1, 0], &[-1, 0]])),
            Err(Error::NotPointed)
        );
    }

    #[test]
    fn simplex_examples() {
        assert!(is_simplex(&gs(&[&[1, 0], &[0, 1]])).unwrap());
        assert!(!is_simplex(&bipyramid3()).unwrap());
        assert!(is_simplex(&gs(&[&[4], &[6], &[9]])).unwrap());
    }

    #[test]
    fn cone_equality_examples() {
        assert!(cones_equal(&gs(&[&[1, 0], &[0, 1]]), &gs(&[&[2, 0], &[0, 3], &[1, 1]])).unwrap());
        assert!(!cones_equal(&gs(&[&[1, 0]]), &gs(&[&[0, 1]])).unwrap());
        assert_eq!(
            cones_equal(&gs(&[&[1, 0]]), &gs(&[&[1]])),
            Err(Error::AmbientMismatch(2, 1))
        );
    }

    #[test]
    fn cached_cone_matches_free_functions() {
        let c = Cone::new(bipyramid3());
        assert_eq!(c.dim(), 3);
        assert!(c.is_pointed());
        assert_eq!(c.extreme_rays().unwrap(), extreme_rays(&bipyramid3()).unwrap());
        let line = Cone::new(gs(&[&[1], &[-1]]));
        assert_eq!(line.extreme_rays(), Err(Error::NotPointed));
    }
}
