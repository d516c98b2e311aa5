use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use super::{classify, glue, part, s_glue, Certificate, DecompositionTree};
use crate::cone;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, IntVector};
use crate::semigroup::GeneratorSet;

/// Default bound on `m` for the partition search.
pub const DEFAULT_MAX_GENS: usize = 16;

const HARD_MAX_GENS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Inputs with more generators are refused with `TooManyGenerators`.
    pub max_gens: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_gens: DEFAULT_MAX_GENS,
        }
    }
}

/// A verdict with its decomposition tree when positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub verdict: bool,
    pub tree: Option<DecompositionTree>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Gluing,
    SGluing,
}

/// Decides whether `N A` is a complete intersection by recursive gluing.
pub fn is_complete_intersection(a: &GeneratorSet) -> Result<Decision> {
    is_complete_intersection_with(a, SearchOptions::default())
}

pub fn is_complete_intersection_with(a: &GeneratorSet, opts: SearchOptions) -> Result<Decision> {
    decide(a, Mode::Gluing, opts)
}

/// Decides whether `pos(A)` is a complete intersection cone by recursive
/// s-gluing.
pub fn is_ci_cone(a: &GeneratorSet) -> Result<Decision> {
    is_ci_cone_with(a, SearchOptions::default())
}

pub fn is_ci_cone_with(a: &GeneratorSet, opts: SearchOptions) -> Result<Decision> {
    decide(a, Mode::SGluing, opts)
}

fn decide(a: &GeneratorSet, mode: Mode, opts: SearchOptions) -> Result<Decision> {
    let limit = opts.max_gens.min(HARD_MAX_GENS);
    if a.len() > limit {
        return Err(Error::TooManyGenerators { got: a.len(), limit });
    }
    let c = cone::integer_functional(a)?;
    let mut search = Search {
        a,
        c,
        mode,
        memo: HashMap::new(),
        ranks: HashMap::new(),
    };
    let full = if a.len() == 64 { u64::MAX } else { (1u64 << a.len()) - 1 };
    let tree = search.solve(full);
    Ok(Decision {
        verdict: tree.is_some(),
        tree,
    })
}

struct Search<'a> {
    a: &'a GeneratorSet,
    c: IntVector,
    mode: Mode,
    memo: HashMap<u64, Option<DecompositionTree>>,
    ranks: HashMap<u64, usize>,
}

fn indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn mask_of(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | 1 << i)
}

impl Search<'_> {
    fn rank(&mut self, mask: u64) -> usize {
        if let Some(&r) = self.ranks.get(&mask) {
            return r;
        }
        let rows = part(self.a, &indices(mask));
        let r = linalg::rank(&IntMatrix::new(rows, self.a.ambient()).expect("uniform rows"));
        self.ranks.insert(mask, r);
        r
    }

    fn solve(&mut self, mask: u64) -> Option<DecompositionTree> {
        if let Some(t) = self.memo.get(&mask) {
            return t.clone();
        }
        let t = self.solve_uncached(mask);
        self.memo.insert(mask, t.clone());
        t
    }

    fn solve_uncached(&mut self, mask: u64) -> Option<DecompositionTree> {
        let idx = indices(mask);
        let rank = self.rank(mask);
        if rank == idx.len() {
            return Some(DecompositionTree::Leaf { indices: idx });
        }
        let (lowest, rest) = idx.split_first().expect("nonempty subset");
        for size in 0..rest.len() {
            for comb in rest.iter().copied().combinations(size) {
                let mut e1 = vec![*lowest];
                e1.extend(comb);
                let m1 = mask_of(&e1);
                let m2 = mask & !m1;
                // A shared line needs rank(E1) + rank(E2) = rank(E) + 1.
                if self.rank(m1) + self.rank(m2) != rank + 1 {
                    continue;
                }
                let e2 = indices(m2);
                let cert = match self.mode {
                    Mode::Gluing => glue(self.a, &e1, &e2, &self.c).map(Certificate::Gluing),
                    Mode::SGluing => s_glue(self.a, &e1, &e2, &self.c).map(Certificate::SGluing),
                };
                let Some(cert) = cert else { continue };
                let Some(left) = self.solve(m1) else { continue };
                let Some(right) = self.solve(m2) else { continue };
                let sum_type = classify(cert.a(), &part(self.a, &e1), &part(self.a, &e2));
                return Some(DecompositionTree::Node {
                    left: Box::new(left),
                    right: Box::new(right),
                    cert,
                    sum_type,
                });
            }
        }
        None
    }
}
