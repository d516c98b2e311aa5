use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::binomial::{divides, lattice_to_binomials, rewrite, Bin, Binomial, TermOrder};
use super::buchberger::{groebner, saturate_engine, Budget, Meter};
use crate::cone;
use crate::error::{Error, Result};
use crate::linalg::{self, kernel_lattice};
use crate::semigroup::GeneratorSet;

/// Size guards and work limits for [`is_ci_oracle_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    pub max_gens: usize,
    /// Largest absolute generator entry accepted.
    pub max_entry: u64,
    pub budget: Budget,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_gens: 8,
            max_entry: 30,
            budget: Budget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    /// Reduced Gröbner basis of `I_A` in the `A`-weighted grevlex order.
    pub markov: Vec<Binomial>,
    pub mu: usize,
    /// `m − rank(A)`.
    pub height: usize,
    pub is_ci: bool,
}

pub fn is_ci_oracle(a: &GeneratorSet) -> Result<OracleReport> {
    is_ci_oracle_with(a, &OracleConfig::default())
}

/// Computes `I_A` from a lattice basis of `ker_Z(A)` by saturation and
/// compares its minimal number of generators with its height.
pub fn is_ci_oracle_with(a: &GeneratorSet, cfg: &OracleConfig) -> Result<OracleReport> {
    let ord = weighted_order(a)?;
    if a.len() > cfg.max_gens {
        return Err(Error::BudgetExceeded(format!(
            "{} generators exceed the oracle limit of {}",
            a.len(),
            cfg.max_gens
        )));
    }
    let limit = BigInt::from(cfg.max_entry);
    if a.vectors().iter().flat_map(|v| v.iter()).any(|x| x.abs() > limit) {
        return Err(Error::BudgetExceeded(format!(
            "entries exceed the oracle limit of {}",
            cfg.max_entry
        )));
    }
    let mut meter = Meter::new(cfg.budget);
    let seed = lattice_to_binomials(&kernel_lattice(&a.matrix()))
        .iter()
        .map(Bin::from_public)
        .collect::<Result<Vec<_>>>()?;
    let markov = saturate_engine(seed, &ord, &mut meter)?;
    let mu = minimal_engine(markov.clone(), &ord, &mut meter)?.len();
    let height = a.len() - linalg::rank(&a.matrix());
    Ok(OracleReport {
        markov: markov.iter().map(Bin::to_public).collect(),
        mu,
        height,
        is_ci: mu == height,
    })
}

/// `μ` of the ideal generated by `gens`, which must be homogeneous for the
/// `A`-grading.
///
/// Generators are dropped greedily in decreasing `A`-degree (ties
/// lexicographic) whenever they lie in the ideal of the others. For a
/// pointed grading any irredundant homogeneous generating set is minimal, so
/// the count does not depend on the order.
pub fn minimal_generator_count(gens: &[Binomial], a: &GeneratorSet, budget: Budget) -> Result<usize> {
    Ok(minimal_generators(gens, a, budget)?.len())
}

/// The irredundant subset left by the greedy removal.
pub fn minimal_generators(gens: &[Binomial], a: &GeneratorSet, budget: Budget) -> Result<Vec<Binomial>> {
    let ord = weighted_order(a)?;
    let gens = gens
        .iter()
        .map(|b| {
            if b.nvars() != a.len() {
                return Err(Error::AmbientMismatch(b.nvars(), a.len()));
            }
            Bin::from_public(b)
        })
        .collect::<Result<Vec<_>>>()?;
    let kept = minimal_engine(gens, &ord, &mut Meter::new(budget))?;
    Ok(kept.iter().map(Bin::to_public).collect())
}

fn minimal_engine(gens: Vec<Bin>, ord: &TermOrder, meter: &mut Meter) -> Result<Vec<Bin>> {
    let mut gens: Vec<(i64, Binomial, Bin)> = gens
        .into_iter()
        .filter_map(|b| b.oriented(ord))
        .map(|b| (ord.degree(&b.lead), b.to_public(), b))
        .collect();
    gens.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
    let mut kept: Vec<Bin> = gens.into_iter().map(|(_, _, b)| b).collect();
    let mut i = 0;
    while i < kept.len() {
        let rest: Vec<Bin> = kept.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, b)| b.clone()).collect();
        let gb = groebner(rest, ord, meter)?;
        let candidate = kept[i].clone();
        if reduces_to_zero(candidate, &gb) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

fn reduces_to_zero(b: Bin, gb: &[Bin]) -> bool {
    let nf = |mut u: Vec<i64>| {
        while let Some(h) = gb.iter().find(|h| divides(&h.lead, &u)) {
            u = rewrite(&u, &h.lead, &h.trail);
        }
        u
    };
    nf(b.lead) == nf(b.trail)
}

/// Weighted grevlex with weights `c · a_j` for a positive functional `c`.
fn weighted_order(a: &GeneratorSet) -> Result<TermOrder> {
    let c = cone::integer_functional(a)?;
    let weights = a
        .vectors()
        .iter()
        .map(|v| {
            c.dot(v)
                .to_i64()
                .ok_or_else(|| Error::BudgetExceeded("grading weights out of range".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TermOrder::weighted(weights, a.len() - 1))
}
