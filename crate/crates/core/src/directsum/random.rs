use std::ops::Range;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ci_witness;
use crate::error::{Error, Result};
use crate::gluing;
use crate::linalg::{self, IntMatrix, IntVector};
use crate::semigroup::GeneratorSet;

const MAX_ATTEMPTS: usize = 32;

/// How parts are merged by [`random_ci_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenMode {
    /// Rescale and glue: the result is a complete intersection semigroup.
    Gluing,
    /// Plain union along a shared line: the result is a CI cone.
    SGluing,
}

impl GenMode {
    pub fn as_str(self) -> &'static str {
        match self {
            GenMode::Gluing => "gluing",
            GenMode::SGluing => "s-gluing",
        }
    }
}

/// Target case for [`random_direct_sum_pair`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    Internal,
    SharedRay,
    AbsorbedRay,
}

impl PairKind {
    pub const ALL: [PairKind; 3] = [PairKind::Internal, PairKind::SharedRay, PairKind::AbsorbedRay];
}

fn rng_for(seed: u64, attempt: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add((attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn rank(vs: &[IntVector], n: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    linalg::rank(&IntMatrix::new(vs.to_vec(), n).expect("uniform rows"))
}

/// `p·a + w` with `w` placed on the coordinates `new`.
fn lift(a: &IntVector, p: i64, w: &[i64], new: &Range<usize>) -> IntVector {
    let mut v = a.scale(&int(p)).into_inner();
    for (k, x) in new.clone().zip(w) {
        v[k] += *x;
    }
    IntVector::new(v)
}

/// Generators in `span(a, e_k : k ∈ new)` whose cone contains `a`, either as
/// an extreme ray or off every ray. `extra` generators beyond a basis are
/// added; with `extra = 0` the set is linearly independent.
fn part_along(
    rng: &mut ChaCha8Rng,
    a: &IntVector,
    new: Range<usize>,
    a_on_ray: bool,
    extra: usize,
) -> Option<Vec<IntVector>> {
    let n = a.dim();
    let j = new.len();
    if j == 0 {
        return a_on_ray.then(|| vec![a.scale(&int(rng.gen_range(1..=3)))]);
    }
    let w = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..j).map(|_| rng.gen_range(-2..=2)).collect() };
    let gens = if a_on_ray {
        // Every w in the open half-space ψ·w > 0 makes a a face of the cone.
        let psi = loop {
            let p = w(rng);
            if p.iter().any(|&x| x != 0) {
                break p;
            }
        };
        let mut gens = vec![a.clone()];
        while gens.len() < j + 1 + extra {
            let wi = w(rng);
            let side: i64 = wi.iter().zip(&psi).map(|(x, y)| x * y).sum();
            if side > 0 {
                gens.push(lift(a, rng.gen_range(0..=2), &wi, &new));
            }
        }
        gens
    } else {
        // The w's sum to zero, so a is a positive combination of the lifts.
        let r = j + 1 + extra;
        let mut ws: Vec<Vec<i64>> = (0..r - 1).map(|_| w(rng)).collect();
        let last: Vec<i64> = (0..j).map(|k| -ws.iter().map(|x| x[k]).sum::<i64>()).collect();
        ws.push(last);
        if ws.iter().any(|x| x.iter().all(|&c| c == 0)) {
            return None;
        }
        ws.iter().map(|wi| lift(a, rng.gen_range(1..=2), wi, &new)).collect()
    };
    (rank(&gens, n) == j + 1).then_some(gens)
}

/// A random nonzero point of `N C`, made primitive.
fn point_in(rng: &mut ChaCha8Rng, c: &GeneratorSet) -> IntVector {
    let k = rng.gen_range(1..=2.min(c.len()));
    let mut idx: Vec<usize> = (0..c.len()).collect();
    idx.shuffle(rng);
    let mut p = IntVector::zeros(c.ambient());
    for &i in &idx[..k] {
        p = p.add(&c.get(i).scale(&int(rng.gen_range(1..=2))));
    }
    linalg::primitive(&p).map(|x| x.0).unwrap_or(p)
}

/// Random coordinate permutation followed by at most one shear; both are
/// unimodular, so every lattice and cone property is preserved.
fn mix(rng: &mut ChaCha8Rng, sets: &mut [Vec<IntVector>], n: usize) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let shear = (n >= 2 && rng.gen_bool(0.5)).then(|| {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        (i, j, if rng.gen_bool(0.5) { 1 } else { -1 })
    });
    for set in sets.iter_mut() {
        for v in set.iter_mut() {
            let mut x: Vec<BigInt> = perm.iter().map(|&p| v[p].clone()).collect();
            if let Some((i, j, s)) = shear {
                let add = &x[j] * int(s);
                x[i] += add;
            }
            *v = IntVector::new(x);
        }
    }
}

/// A seeded complete intersection (`Gluing`) or CI cone (`SGluing`) of rank
/// `dim` in `Z^dim` with `dim + steps` generators.
///
/// Starts from a free set and merges `steps` further free sets, each living
/// in the span of a point `a` of the current semigroup and some fresh
/// coordinates. In `Gluing` mode each merge goes through [`ci_witness`]. The
/// result is post-checked by the matching decision procedure.
pub fn random_ci_instance(seed: u64, dim: usize, steps: usize, mode: GenMode) -> Result<GeneratorSet> {
    if dim == 0 {
        return Err(Error::BadDimension { min: 1, got: 0 });
    }
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = rng_for(seed, attempt);
        let Some(a) = build_instance(&mut rng, dim, steps, mode)? else {
            continue;
        };
        let ok = match mode {
            GenMode::Gluing => gluing::is_complete_intersection(&a)?.verdict,
            GenMode::SGluing => gluing::is_ci_cone(&a)?.verdict,
        };
        if ok {
            return Ok(a.with_name(format!("random-{}-{seed}-{dim}-{steps}", mode.as_str())));
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

fn build_instance(rng: &mut ChaCha8Rng, dim: usize, steps: usize, mode: GenMode) -> Result<Option<GeneratorSet>> {
    let r0 = if steps == 0 { dim } else { rng.gen_range(1..=dim) };
    let mut fresh = vec![0usize; steps];
    for _ in r0..dim {
        fresh[rng.gen_range(0..steps)] += 1;
    }

    let first: Vec<IntVector> = if r0 == 1 {
        let mut v = vec![0i64; dim];
        v[0] = rng.gen_range(1..=7);
        vec![IntVector::from_i64s(&v)]
    } else {
        let mut tries = 0;
        loop {
            let vs: Vec<IntVector> = (0..r0)
                .map(|_| {
                    let mut v = vec![0i64; dim];
                    for x in &mut v[..r0] {
                        *x = rng.gen_range(-2..=3);
                    }
                    IntVector::from_i64s(&v)
                })
                .collect();
            if rank(&vs, dim) == r0 {
                break vs;
            }
            tries += 1;
            if tries > 100 {
                return Ok(None);
            }
        }
    };
    let mut current = GeneratorSet::new(first)?;
    let mut next = r0;
    for &j in &fresh {
        let a = point_in(rng, &current);
        let on_ray = j == 0 || rng.gen_bool(0.5);
        let Some(part) = part_along(rng, &a, next..next + j, on_ray, 0) else {
            return Ok(None);
        };
        let part = GeneratorSet::new(part)?;
        current = match mode {
            GenMode::SGluing => current.concat(&part)?,
            GenMode::Gluing => match ci_witness(&current, &part) {
                Ok(w) => w.generators,
                Err(Error::NoAdmissiblePair { .. }) => return Ok(None),
                Err(e) => return Err(e),
            },
        };
        next += j;
    }
    let mut vs = vec![current.vectors().to_vec()];
    mix(rng, &mut vs, dim);
    let mut vs = vs.pop().expect("one set");
    vs.shuffle(rng);
    Ok(Some(GeneratorSet::new(vs)?))
}

/// Two pointed generator sets whose cones form a direct sum of the given
/// kind, in ambient dimension at most 6. The shared line is a coordinate
/// axis before a final unimodular mix.
pub fn random_direct_sum_pair(seed: u64, kind: PairKind) -> (GeneratorSet, GeneratorSet) {
    for attempt in 0.. {
        let mut rng = rng_for(seed, attempt);
        if let Some(pair) = build_pair(&mut rng, kind) {
            return pair;
        }
    }
    unreachable!("the attempt loop is unbounded")
}

fn build_pair(rng: &mut ChaCha8Rng, kind: PairKind) -> Option<(GeneratorSet, GeneratorSet)> {
    let (ray1, ray2) = match kind {
        PairKind::Internal => (false, false),
        PairKind::SharedRay => (true, true),
        PairKind::AbsorbedRay => (true, false),
    };
    let min_dim = |ray: bool| if ray { 1 } else { 2 };
    let n1 = rng.gen_range(min_dim(ray1)..=4);
    let n2 = rng.gen_range(min_dim(ray2)..=(7 - n1).min(4));
    if n2 < min_dim(ray2) {
        return None;
    }
    let n = n1 + n2 - 1;
    let a = IntVector::unit(n, 0);
    let extra = |rng: &mut ChaCha8Rng, d: usize| if d == 1 { 0 } else { rng.gen_range(0..=2) };
    let e1 = extra(rng, n1);
    let e2 = extra(rng, n2);
    let p1 = part_along(rng, &a, 1..n1, ray1, e1)?;
    let p2 = part_along(rng, &a, n1..n, ray2, e2)?;
    let mut sets = vec![p1, p2];
    mix(rng, &mut sets, n);
    if kind == PairKind::AbsorbedRay && rng.gen_bool(0.5) {
        sets.swap(0, 1);
    }
    let p2 = GeneratorSet::new(sets.pop()?).ok()?;
    let p1 = GeneratorSet::new(sets.pop()?).ok()?;
    Some((p1, p2))
}

/// A direct-sum pair in which one or both parts gain a line `±v` inside
/// their own span.
pub fn non_pointed_pair(seed: u64) -> (GeneratorSet, GeneratorSet) {
    let mut rng = rng_for(seed, usize::MAX);
    let kind = *PairKind::ALL.choose(&mut rng).expect("nonempty");
    let (a1, a2) = random_direct_sum_pair(seed, kind);
    let which = rng.gen_range(0..3);
    let widen = |rng: &mut ChaCha8Rng, p: &GeneratorSet| -> GeneratorSet {
        let i = rng.gen_range(0..p.len());
        let j = rng.gen_range(0..p.len());
        let mut v = p.get(i).scale(&int(rng.gen_range(1..=2)));
        if i != j {
            v = v.sub(p.get(j));
        }
        if v.is_zero() {
            v = p.get(i).clone();
        }
        let mut vs = p.vectors().to_vec();
        vs.push(v.clone());
        vs.push(v.neg());
        GeneratorSet::new(vs).expect("nonzero rows")
    };
    match which {
        0 => (widen(&mut rng, &a1), a2),
        1 => (a1, widen(&mut rng, &a2)),
        _ => (widen(&mut rng, &a1), widen(&mut rng, &a2)),
    }
}

/// A pointed set with an index partition: either a shuffled direct-sum pair
/// split along its parts, or random vectors split at random.
pub fn random_partition(seed: u64) -> (GeneratorSet, Vec<usize>, Vec<usize>) {
    let mut rng = rng_for(seed, usize::MAX - 1);
    if rng.gen_bool(0.5) {
        let kind = *PairKind::ALL.choose(&mut rng).expect("nonempty");
        let (a1, a2) = random_direct_sum_pair(seed, kind);
        let m = a1.len() + a2.len();
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut rng);
        let all = a1.concat(&a2).expect("same ambient");
        let vs: Vec<IntVector> = order.iter().map(|&i| all.get(i).clone()).collect();
        let e1: Vec<usize> = (0..m).filter(|&p| order[p] < a1.len()).collect();
        let e2: Vec<usize> = (0..m).filter(|&p| order[p] >= a1.len()).collect();
        return (GeneratorSet::new(vs).expect("nonzero rows"), e1, e2);
    }
    let n = rng.gen_range(2..=4);
    let m = rng.gen_range(n + 1..=n + 3);
    let vs: Vec<IntVector> = (0..m)
        .map(|_| {
            let mut v: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-2..=2)).collect();
            v.push(rng.gen_range(1..=3));
            IntVector::from_i64s(&v)
        })
        .collect();
    let mut e1 = vec![0];
    let mut e2 = Vec::new();
    for i in 1..m {
        if rng.gen_bool(0.5) {
            e1.push(i);
        } else {
            e2.push(i);
        }
    }
    if e2.is_empty() {
        e2.push(e1.pop().expect("e1 has more than one index"));
    }
    (GeneratorSet::new(vs).expect("last coordinate is positive"), e1, e2)
}

/// Two complete intersections whose lattices meet in a line: a random
/// [`GenMode::Gluing`] instance and a free set through one of its points.
pub fn random_witness_pair(seed: u64) -> Result<(GeneratorSet, GeneratorSet)> {
    let mut rng = rng_for(seed, usize::MAX - 2);
    let dim = rng.gen_range(1..=3);
    let steps = rng.gen_range(1..=2);
    let base = random_ci_instance(seed, dim, steps, GenMode::Gluing)?;
    for _ in 0..MAX_ATTEMPTS {
        let j = rng.gen_range(0..=2);
        let n = dim + j;
        let padded: Vec<IntVector> = base
            .vectors()
            .iter()
            .map(|v| {
                let mut x = v.to_vec();
                x.resize(n, BigInt::from(0));
                IntVector::new(x)
            })
            .collect();
        let padded = GeneratorSet::new(padded)?;
        let a = point_in(&mut rng, &padded);
        let on_ray = j == 0 || rng.gen_bool(0.5);
        if let Some(part) = part_along(&mut rng, &a, dim..n, on_ray, 0) {
            return Ok((padded, GeneratorSet::new(part)?));
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone;
    use crate::directsum::{direct_sum, ExternalCase};
    use crate::gluing::SumType;

    #[test]
    fn instances_are_deterministic() {
        for mode in [GenMode::Gluing, GenMode::SGluing] {
            let a = random_ci_instance(7, 2, 2, mode).unwrap();
            let b = random_ci_instance(7, 2, 2, mode).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn instance_shapes() {
        let free = random_ci_instance(3, 3, 0, GenMode::Gluing).unwrap();
        assert_eq!(free.len(), 3);
        assert!(free.is_independent());

        let num = random_ci_instance(1, 1, 2, GenMode::Gluing).unwrap();
        assert_eq!((num.ambient(), num.len()), (1, 3));
        assert!(gluing::is_complete_intersection(&num).unwrap().verdict);

        let c = random_ci_instance(5, 4, 3, GenMode::SGluing).unwrap();
        assert_eq!(cone::cone_dim(&c), 4);
        assert!(gluing::is_ci_cone(&c).unwrap().verdict);

        assert_eq!(
            random_ci_instance(0, 0, 1, GenMode::Gluing),
            Err(Error::BadDimension { min: 1, got: 0 })
        );
    }

    #[test]
    fn pairs_hit_their_kind() {
        for seed in 0..12 {
            for kind in PairKind::ALL {
                let (a1, a2) = random_direct_sum_pair(seed, kind);
                let s = direct_sum(&a1, &a2).unwrap().expect("pair forms a direct sum");
                let got = match (s.sum_type, s.external_case) {
                    (SumType::Internal, _) => PairKind::Internal,
                    (_, Some(ExternalCase::SharedRay)) => PairKind::SharedRay,
                    _ => PairKind::AbsorbedRay,
                };
                assert_eq!(got, kind, "seed {seed}");
                assert!(s.generators.ambient() <= 6);
            }
        }
    }

    #[test]
    fn non_pointed_pairs_contain_a_line() {
        for seed in 0..10 {
            let (a1, a2) = non_pointed_pair(seed);
            assert!(!cone::is_strongly_convex(&a1).is_pointed() || !cone::is_strongly_convex(&a2).is_pointed());
        }
    }
}
