use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use super::binomial::{coprime, divides, lcm, rewrite, Bin, Binomial, TermOrder};
use crate::error::{Error, Result};
use crate::linalg::IntVector;

/// Work limits for one oracle call.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// S-pairs examined.
    pub max_pairs: usize,
    /// Single reduction steps.
    pub max_steps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 200_000,
            max_steps: 20_000_000,
        }
    }
}

pub(crate) struct Meter {
    budget: Budget,
    pairs: usize,
    steps: usize,
}

impl Meter {
    pub fn new(budget: Budget) -> Meter {
        Meter {
            budget,
            pairs: 0,
            steps: 0,
        }
    }

    fn pair(&mut self) -> Result<()> {
        self.pairs += 1;
        if self.pairs > self.budget.max_pairs {
            return Err(Error::BudgetExceeded(format!("more than {} S-pairs", self.budget.max_pairs)));
        }
        Ok(())
    }

    fn step(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget.max_steps {
            return Err(Error::BudgetExceeded(format!(
                "more than {} reduction steps",
                self.budget.max_steps
            )));
        }
        Ok(())
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// The S-polynomial of `x^a − x^b` and `x^c − x^d` is `x^{l−a+b} − x^{l−c+d}`
/// with `l = lcm(a, c)`, and reducing `x^p − x^q` by `x^a − x^b` gives
/// `x^{p−a+b} − x^q`. Both stay differences of two monomials, so the whole
/// computation runs on exponent pairs with coefficients `±1`.
pub fn buchberger(gens: &[Binomial], ord: &TermOrder, budget: Budget) -> Result<Vec<Binomial>> {
    let gens = to_engine(gens, ord)?;
    let g = groebner(gens, ord, &mut Meter::new(budget))?;
    Ok(g.iter().map(Bin::to_public).collect())
}

/// Generators of `I : (x_1 ⋯ x_m)^∞`.
///
/// For each variable `x_i` the basis is recomputed in the order with `x_i`
/// cheapest and every element is divided by the largest power of `x_i`
/// dividing it. Passes repeat until none divides. The result is the reduced
/// basis in `ord`. Requires the input to be homogeneous for the weights of
/// `ord`.
pub fn saturate(gens: &[Binomial], ord: &TermOrder, budget: Budget) -> Result<Vec<Binomial>> {
    let gens = to_engine(gens, ord)?;
    let g = saturate_engine(gens, ord, &mut Meter::new(budget))?;
    Ok(g.iter().map(Bin::to_public).collect())
}

/// Normal form of `x^u` modulo a Gröbner basis `gb` of `ord`.
pub fn normal_form(u: &IntVector, gb: &[Binomial], ord: &TermOrder) -> Result<IntVector> {
    let gb = to_engine(gb, ord)?;
    let u = Bin::from_public(&Binomial {
        uplus: u.clone(),
        uminus: u.clone(),
    })?
    .lead;
    let nf = monomial_nf(u, &gb, &mut Meter::new(Budget::default()))?;
    Ok(IntVector::from_i64s(&nf))
}

/// `b ∈ ideal(gb)` for a Gröbner basis `gb` of `ord`.
pub fn in_ideal(b: &Binomial, gb: &[Binomial], ord: &TermOrder) -> Result<bool> {
    Ok(normal_form(&b.uplus, gb, ord)? == normal_form(&b.uminus, gb, ord)?)
}

fn to_engine(gens: &[Binomial], ord: &TermOrder) -> Result<Vec<Bin>> {
    gens.iter()
        .map(|b| {
            if b.nvars() != ord.nvars() || b.uminus.dim() != ord.nvars() {
                return Err(Error::AmbientMismatch(b.nvars(), ord.nvars()));
            }
            Bin::from_public(b)
        })
        .collect()
}

pub(crate) fn saturate_engine(mut cur: Vec<Bin>, ord: &TermOrder, meter: &mut Meter) -> Result<Vec<Bin>> {
    loop {
        let mut changed = false;
        for i in 0..ord.nvars() {
            let mut g = groebner(cur, &ord.with_cheapest(i), meter)?;
            for b in &mut g {
                let k = b.lead[i].min(b.trail[i]);
                if k > 0 {
                    b.lead[i] -= k;
                    b.trail[i] -= k;
                    changed = true;
                }
            }
            cur = g;
        }
        if !changed {
            return groebner(cur, ord, meter);
        }
    }
}

pub(crate) fn groebner(gens: Vec<Bin>, ord: &TermOrder, meter: &mut Meter) -> Result<Vec<Bin>> {
    let mut g: Vec<Bin> = Vec::new();
    // Normal selection: least lcm degree first, then by index.
    let mut queue: BinaryHeap<Reverse<(i64, usize, usize)>> = BinaryHeap::new();
    let push = |g: &mut Vec<Bin>, queue: &mut BinaryHeap<_>, b: Bin| {
        let j = g.len();
        for (i, h) in g.iter().enumerate() {
            queue.push(Reverse((ord.degree(&lcm(&h.lead, &b.lead)), i, j)));
        }
        g.push(b);
    };
    for b in gens {
        if let Some(r) = reduce(b, &g, ord, meter)? {
            push(&mut g, &mut queue, r);
        }
    }
    while let Some(Reverse((_, i, j))) = queue.pop() {
        meter.pair()?;
        let (bi, bj) = (&g[i], &g[j]);
        if coprime(&bi.lead, &bj.lead) {
            continue;
        }
        let l = lcm(&bi.lead, &bj.lead);
        let s = Bin {
            lead: rewrite(&l, &bi.lead, &bi.trail),
            trail: rewrite(&l, &bj.lead, &bj.trail),
        };
        if let Some(r) = reduce(s, &g, ord, meter)? {
            push(&mut g, &mut queue, r);
        }
    }
    interreduce(g, ord, meter)
}

/// Top-reduces `b` until its leading term is irreducible.
fn reduce(mut b: Bin, g: &[Bin], ord: &TermOrder, meter: &mut Meter) -> Result<Option<Bin>> {
    loop {
        let Some(o) = b.oriented(ord) else {
            return Ok(None);
        };
        b = o;
        let Some(h) = g.iter().find(|h| divides(&h.lead, &b.lead)) else {
            return Ok(Some(b));
        };
        meter.step()?;
        b.lead = rewrite(&b.lead, &h.lead, &h.trail);
    }
}

fn monomial_nf(mut u: Vec<i64>, g: &[Bin], meter: &mut Meter) -> Result<Vec<i64>> {
    while let Some(h) = g.iter().find(|h| divides(&h.lead, &u)) {
        meter.step()?;
        u = rewrite(&u, &h.lead, &h.trail);
    }
    Ok(u)
}

fn interreduce(mut g: Vec<Bin>, ord: &TermOrder, meter: &mut Meter) -> Result<Vec<Bin>> {
    g.sort_by(|a, b| ord.cmp(&a.lead, &b.lead));
    let mut kept: Vec<Bin> = Vec::with_capacity(g.len());
    for b in g {
        if !kept.iter().any(|k| divides(&k.lead, &b.lead)) {
            kept.push(b);
        }
    }
    // A trailing term is below its own leading term, so only other elements
    // can rewrite it.
    for i in 0..kept.len() {
        let trail = std::mem::take(&mut kept[i].trail);
        kept[i].trail = monomial_nf(trail, &kept, meter)?;
    }
    kept.reverse();
    Ok(kept)
}
