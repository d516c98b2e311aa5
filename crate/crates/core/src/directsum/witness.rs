use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::cone;
use crate::error::{Error, Result};
use crate::gluing::{self, glue, Certificate, DecompositionTree};
use crate::linalg::{lattice_intersection, IntVector};
use crate::semigroup::{multiples_trace, GeneratorSet};

/// A complete intersection `τ·A1 ∪ μ·A2` with the same cone as `A1 ∪ A2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessResult {
    #[serde(serialize_with = "crate::json::big")]
    pub mu: BigInt,
    #[serde(serialize_with = "crate::json::big")]
    pub tau: BigInt,
    /// Content of the shared lattice generator `a`.
    #[serde(serialize_with = "crate::json::big")]
    pub g: BigInt,
    pub a: IntVector,
    pub generators: GeneratorSet,
    pub tree: DecompositionTree,
}

/// Rescales two complete intersections whose lattices meet in a line so that
/// their union glues.
///
/// With `Z A1 ∩ Z A2 = Z a`, pick `μ` with `μ·a ∈ N A1` and `τ` with
/// `τ·a ∈ N A2`, coprime to each other and to the content `g` of `a`. Then
/// `Z τA1 ∩ Z μA2 = Z τμa` and `τμa` lies in both rescaled semigroups. The
/// pair is the lexicographically least admissible one.
///
/// The multiples of `a` in `N A_i` all lie in `d_i·N` for a period `d_i`
/// that need not be 1; when the periods and `g` are not pairwise coprime no
/// admissible pair exists and `NoAdmissiblePair` is returned.
pub fn ci_witness(a1: &GeneratorSet, a2: &GeneratorSet) -> Result<WitnessResult> {
    if a1.ambient() != a2.ambient() {
        return Err(Error::AmbientMismatch(a1.ambient(), a2.ambient()));
    }
    let tree1 = gluing::is_complete_intersection(a1)?.tree.ok_or(Error::PartNotCI(1))?;
    let tree2 = gluing::is_complete_intersection(a2)?.tree.ok_or(Error::PartNotCI(2))?;

    let line = lattice_intersection(&a1.lattice(), &a2.lattice())?;
    if line.rank() != 1 {
        return Err(Error::NoSharedLine);
    }
    let gen = line.rows()[0].clone();
    let a = [gen.clone(), gen.neg()]
        .into_iter()
        .find(|v| cone::member(v, a1.vectors()).is_some() && cone::member(v, a2.vectors()).is_some())
        .ok_or(Error::NoSharedLine)?;
    let g = a.content();

    let trace1 = multiples_trace(&a, a1)?;
    let trace2 = multiples_trace(&a, a2)?;
    let (d1, d2) = (&trace1.step, &trace2.step);
    if !d1.gcd(d2).is_one() || !d1.gcd(&g).is_one() || !d2.gcd(&g).is_one() {
        return Err(Error::NoAdmissiblePair {
            period1: d1.clone(),
            period2: d2.clone(),
            content: g,
        });
    }

    // The first μ coprime to g and d2 admits some τ, since trace2 holds every
    // large multiple of d2; the least such τ completes the least pair.
    let mu = trace1
        .iter()
        .find(|mu| mu.gcd(&g).is_one() && mu.gcd(d2).is_one())
        .expect("trace1 holds every large multiple of d1");
    let tau = trace2
        .iter()
        .find(|tau| tau.gcd(&mu).is_one() && tau.gcd(&g).is_one())
        .expect("trace2 holds every large multiple of d2");

    let scaled1 = a1.scaled(&tau);
    let scaled2 = a2.scaled(&mu);
    let generators = scaled1.concat(&scaled2)?;
    let m1 = a1.len();
    let e1: Vec<usize> = (0..m1).collect();
    let e2: Vec<usize> = (m1..generators.len()).collect();
    let c = cone::integer_functional(&generators)?;
    let cert = glue(&generators, &e1, &e2, &c)
        .ok_or_else(|| Error::Internal("rescaled parts do not glue".into()))?;
    let sum_type = gluing::classify(&cert.a, scaled1.vectors(), scaled2.vectors());
    let left = rescale_tree(&tree1, &scaled1, 0)?;
    let right = rescale_tree(&tree2, &scaled2, m1)?;
    Ok(WitnessResult {
        mu,
        tau,
        g,
        a,
        generators,
        tree: DecompositionTree::Node {
            left: Box::new(left),
            right: Box::new(right),
            cert: Certificate::Gluing(cert),
            sum_type,
        },
    })
}

/// A tree for `k·A` from a tree for `A`: gluings survive uniform scaling, so
/// the certificates are recomputed on the scaled set with the same shape.
fn rescale_tree(tree: &DecompositionTree, scaled: &GeneratorSet, offset: usize) -> Result<DecompositionTree> {
    let c = cone::integer_functional(scaled)?;
    let rebuilt = rebuild(tree, scaled, &c)?;
    Ok(rebuilt.shifted(offset))
}

fn rebuild(tree: &DecompositionTree, a: &GeneratorSet, c: &IntVector) -> Result<DecompositionTree> {
    match tree {
        DecompositionTree::Leaf { .. } => Ok(tree.clone()),
        DecompositionTree::Node {
            left,
            right,
            cert,
            sum_type,
        } => {
            let cert = glue(a, cert.e1(), cert.e2(), c)
                .ok_or_else(|| Error::Internal("scaled gluing failed".into()))?;
            Ok(DecompositionTree::Node {
                left: Box::new(rebuild(left, a, c)?),
                right: Box::new(rebuild(right, a, c)?),
                cert: Certificate::Gluing(cert),
                sum_type: *sum_type,
            })
        }
    }
}
