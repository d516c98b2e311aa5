//! Property tests against brute-force oracles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use toric_ci::cone;
use toric_ci::directsum::{random_ci_instance, GenMode};
use toric_ci::gluing::{chain_of_partitions, is_ci_cone, is_complete_intersection, Certificate, DecompositionTree};
use toric_ci::linalg::{hnf, kernel_lattice, lattice_intersection, lp_feasible, rank, solve_in_lattice};
use toric_ci::semigroup::{membership, multiples_trace};
use toric_ci::toric::{buchberger, in_ideal, is_ci_oracle, normal_form, Binomial, Budget, TermOrder};
use toric_ci::{GeneratorSet, IntMatrix, IntVector, LatticeBasis};

fn matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(lo..=hi, cols), rows).prop_map(move |rs| {
        IntMatrix::new(rs.iter().map(|r| IntVector::from_i64s(r)).collect(), cols).unwrap()
    })
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=4, 1usize..=4)
}

/// Determinant by rational elimination.
fn det(m: &IntMatrix) -> BigRational {
    let n = m.nrows();
    let mut a: Vec<Vec<BigRational>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = a[r][c].clone() / a[c][c].clone();
            for k in c..n {
                let v = f.clone() * a[c][k].clone();
                a[r][k] -= v;
            }
        }
    }
    d
}

fn combine(coeffs: &[i64], rows: &[IntVector], cols: usize) -> IntVector {
    rows.iter()
        .zip(coeffs)
        .fold(IntVector::zeros(cols), |acc, (r, &c)| acc.add(&r.scale(&BigInt::from(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_unimodular_and_echelon(m in shape().prop_flat_map(|(r, c)| matrix(r, c, -6, 6))) {
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert_eq!(det(&u).abs(), BigRational::one());
        // Pivots move strictly right; entries above a pivot are reduced.
        let mut last: Option<usize> = None;
        for (i, row) in h.rows().iter().enumerate() {
            match row.iter().position(|x| !x.is_zero()) {
                None => prop_assert!(h.rows()[i..].iter().all(IntVector::is_zero)),
                Some(p) => {
                    prop_assert!(last.map_or(true, |l| p > l));
                    prop_assert!(row[p].is_positive());
                    for above in &h.rows()[..i] {
                        prop_assert!(!above[p].is_negative() && above[p] < row[p]);
                    }
                    last = Some(p);
                }
            }
        }
        prop_assert_eq!(rank(&m), h.rows().iter().filter(|r| !r.is_zero()).count());
    }

    #[test]
    fn kernel_rows_annihilate(m in shape().prop_flat_map(|(r, c)| matrix(r, c, -6, 6))) {
        let k = kernel_lattice(&m);
        prop_assert_eq!(k.rank(), m.nrows() - rank(&m));
        for x in k.rows() {
            prop_assert!(m.left_mul(x).is_zero());
        }
    }

    #[test]
    fn intersections_lie_in_both(
        (m1, m2, c1, c2) in (1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(r1, r2, n)| (
            matrix(r1, n, -4, 4),
            matrix(r2, n, -4, 4),
            prop::collection::vec(-3i64..=3, r1),
            prop::collection::vec(-3i64..=3, r2),
        ))
    ) {
        let (l1, l2) = (LatticeBasis::from_generators(&m1), LatticeBasis::from_generators(&m2));
        let both = lattice_intersection(&l1, &l2).unwrap();
        for v in both.rows() {
            prop_assert!(solve_in_lattice(v, &l1).is_some());
            prop_assert!(solve_in_lattice(v, &l2).is_some());
        }
        // Any vector found in both lattices is in the intersection.
        let v = combine(&c1, m1.rows(), m1.ncols());
        if solve_in_lattice(&v, &l2).is_some() {
            prop_assert!(both.contains(&v));
        }
        let w = combine(&c2, m2.rows(), m2.ncols());
        if l1.contains(&w) {
            prop_assert!(both.contains(&w));
        }
    }

    #[test]
    fn lp_solutions_are_exact(
        (eq, x) in (1usize..=5, 1usize..=4).prop_flat_map(|(r, c)| (
            matrix(r, c, -5, 5),
            prop::collection::vec(0i64..=4, r),
        ))
    ) {
        let rhs = combine(&x, eq.rows(), eq.ncols());
        let strict: Vec<usize> = (0..x.len()).filter(|&i| x[i] > 0).collect();
        let sol = lp_feasible(&eq, &rhs, &strict).expect("a nonnegative solution exists");
        prop_assert!(sol.coords().iter().all(|v| !v.is_negative()));
        for &i in &strict {
            prop_assert!(sol.coords()[i].is_positive());
        }
        for j in 0..eq.ncols() {
            let s: BigRational = eq.rows().iter().zip(sol.coords()).map(|(r, v)| v * BigRational::from_integer(r[j].clone())).sum();
            prop_assert_eq!(s, BigRational::from_integer(rhs[j].clone()));
        }
    }

    #[test]
    fn lp_detects_infeasibility(eq in (1usize..=4, 1usize..=3).prop_flat_map(|(r, c)| matrix(r, c, -5, 5))) {
        // Force the last coordinate positive on every row; a negative target is then unreachable.
        let n = eq.ncols() + 1;
        let rows: Vec<IntVector> = eq.rows().iter().map(|r| {
            let mut v = r.to_vec();
            v.push(BigInt::one());
            IntVector::new(v)
        }).collect();
        let eq = IntMatrix::new(rows, n).unwrap();
        let mut target = vec![BigInt::zero(); n];
        target[n - 1] = BigInt::from(-1);
        prop_assert!(lp_feasible(&eq, &IntVector::new(target), &[]).is_none());
    }

    #[test]
    fn membership_matches_enumeration(
        gens in prop::collection::vec((-3i64..=3, 1i64..=3), 1..=4),
        b in (-6i64..=6, 0i64..=6),
    ) {
        let rows: Vec<Vec<i64>> = gens.iter().map(|&(x, y)| vec![x, y]).collect();
        let a = GeneratorSet::new(rows.iter().map(|r| IntVector::from_i64s(r)).collect()).unwrap();
        let target = IntVector::from_i64s(&[b.0, b.1]);
        let brute = reachable(&rows, (b.0, b.1));
        let cert = membership(&target, &a).unwrap();
        prop_assert_eq!(cert.is_some(), brute);
        if let Some(c) = cert {
            prop_assert!(c.coefficients.iter().all(|x| !x.is_negative()));
            prop_assert_eq!(c.evaluate(&a), target);
        }
    }

    #[test]
    fn multiples_trace_matches_membership(
        gens in prop::collection::vec((-3i64..=3, 1i64..=3), 1..=3),
        b in (-3i64..=3, 1i64..=3),
    ) {
        let rows: Vec<Vec<i64>> = gens.iter().map(|&(x, y)| vec![x, y]).collect();
        let a = GeneratorSet::new(rows.iter().map(|r| IntVector::from_i64s(r)).collect()).unwrap();
        let v = IntVector::from_i64s(&[b.0, b.1]);
        let Ok(trace) = multiples_trace(&v, &a) else { return Ok(()); };
        for t in 1..=12i64 {
            let tb = v.scale(&BigInt::from(t));
            let member = membership(&tb, &a).unwrap().is_some();
            prop_assert_eq!(trace.contains(&BigInt::from(t)), member, "t = {}", t);
        }
    }
}

/// `b ∈ N A` by exhaustive search; generators have positive last coordinate.
fn reachable(rows: &[Vec<i64>], b: (i64, i64)) -> bool {
    fn go(rows: &[Vec<i64>], i: usize, x: i64, y: i64) -> bool {
        if y == 0 {
            return x == 0 || rows[i..].is_empty() && x == 0;
        }
        if i == rows.len() || y < 0 {
            return false;
        }
        let (gx, gy) = (rows[i][0], rows[i][1]);
        (0..=y / gy).any(|k| go(rows, i + 1, x - k * gx, y - k * gy))
    }
    go(rows, 0, b.0, b.1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_instances_carry_valid_trees(seed in 0u64..100_000, dim in 1usize..=3, steps in 0usize..=2, sg in any::<bool>()) {
        let mode = if sg { GenMode::SGluing } else { GenMode::Gluing };
        let a = random_ci_instance(seed, dim, steps, mode).unwrap();
        prop_assert_eq!(a.len(), dim + steps);
        prop_assert_eq!(cone::cone_dim(&a), dim);
        let d = if sg { is_ci_cone(&a).unwrap() } else { is_complete_intersection(&a).unwrap() };
        prop_assert!(d.verdict);
        let tree = d.tree.unwrap();
        let chain = chain_of_partitions(&tree, &a).unwrap();
        prop_assert!(chain.accounting_holds());
        prop_assert_eq!(*chain.d_values.last().unwrap(), 0);
        check_certificates(&a, &tree)?;
    }
}

fn check_certificates(a: &GeneratorSet, t: &DecompositionTree) -> Result<(), TestCaseError> {
    if let DecompositionTree::Node { left, right, cert, .. } = t {
        let target = match cert {
            Certificate::Gluing(c) => {
                prop_assert!(c.lattice.contains(&c.a));
                c.a.clone()
            }
            Certificate::SGluing(c) => {
                prop_assert!(c.t.is_positive());
                c.a.scale(&c.t)
            }
        };
        let (c1, c2) = match cert {
            Certificate::Gluing(c) => (&c.cert1, &c.cert2),
            Certificate::SGluing(c) => (&c.cert1, &c.cert2),
        };
        prop_assert_eq!(c1.evaluate(&a.subset(cert.e1())), target.clone());
        prop_assert_eq!(c2.evaluate(&a.subset(cert.e2())), target);
        check_certificates(a, left)?;
        check_certificates(a, right)?;
    }
    Ok(())
}

/// `μ(I_A)` from fibers: for each degree `b`, the fiber `{x : A x = b}` with
/// `x ~ y` when their supports meet contributes `components − 1` minimal
/// generators. Degrees are scanned up to `bound` in the grading `w`.
fn fiber_mu(a: &GeneratorSet, w: &[i64], bound: i64) -> usize {
    let m = a.len();
    let mut fibers: BTreeMap<IntVector, Vec<Vec<i64>>> = BTreeMap::new();
    let mut x = vec![0i64; m];
    fn walk(
        a: &GeneratorSet,
        w: &[i64],
        i: usize,
        left: i64,
        x: &mut Vec<i64>,
        fibers: &mut BTreeMap<IntVector, Vec<Vec<i64>>>,
    ) {
        if i == x.len() {
            let b = a.matrix().left_mul(&x.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>());
            fibers.entry(b).or_default().push(x.clone());
            return;
        }
        for k in 0..=left / w[i] {
            x[i] = k;
            walk(a, w, i + 1, left - k * w[i], x, fibers);
        }
        x[i] = 0;
    }
    walk(a, w, 0, bound, &mut x, &mut fibers);
    fibers
        .values()
        .map(|f| {
            let mut parent: Vec<usize> = (0..f.len()).collect();
            fn find(p: &mut Vec<usize>, i: usize) -> usize {
                if p[i] != i {
                    let r = find(p, p[i]);
                    p[i] = r;
                }
                p[i]
            }
            for i in 0..f.len() {
                for j in i + 1..f.len() {
                    if (0..m).any(|k| f[i][k] > 0 && f[j][k] > 0) {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        parent[ri] = rj;
                    }
                }
            }
            (0..f.len()).filter(|&i| find(&mut parent, i) == i).count() - 1
        })
        .sum()
}

fn grading(a: &GeneratorSet) -> Vec<i64> {
    let c = cone::positive_functional(a).unwrap().to_primitive_integer();
    a.vectors().iter().map(|v| c.dot(v).to_i64().unwrap()).collect()
}

fn oracle_agrees_with_fibers(a: &GeneratorSet) {
    let r = is_ci_oracle(a).unwrap();
    let w = grading(a);
    let max_deg = r
        .markov
        .iter()
        .map(|b| b.uplus.iter().zip(&w).map(|(e, wi)| e.to_i64().unwrap() * wi).sum::<i64>())
        .max()
        .unwrap_or(0);
    let mu = fiber_mu(a, &w, 2 * max_deg);
    assert_eq!(r.mu, mu, "{a:?}");
    assert!(r.mu >= r.height);
}

#[test]
fn oracle_mu_matches_fiber_graphs() {
    for (x, y, z) in [(4, 6, 9), (3, 4, 5), (3, 5, 7), (5, 6, 7), (4, 5, 6), (6, 10, 15), (3, 7, 11)] {
        oracle_agrees_with_fibers(&GeneratorSet::from_i64_rows(&[&[x], &[y], &[z]]).unwrap());
    }
    oracle_agrees_with_fibers(&GeneratorSet::from_i64_rows(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]).unwrap());
    oracle_agrees_with_fibers(&GeneratorSet::from_i64_rows(&[&[1, 0], &[1, 1], &[1, 2], &[1, 3]]).unwrap());
    oracle_agrees_with_fibers(&GeneratorSet::from_i64_rows(&[&[2, 0], &[0, 2], &[1, 1], &[3, 1]]).unwrap());
    oracle_agrees_with_fibers(&GeneratorSet::from_i64_rows(&[&[4], &[5], &[6], &[7]]).unwrap());
}

#[test]
fn oracle_markov_bases_are_sound() {
    for rows in [
        vec![vec![4], vec![6], vec![9]],
        vec![vec![3], vec![5], vec![7]],
        vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]],
        vec![vec![2, 1], vec![1, 2], vec![1, 1], vec![3, 1]],
    ] {
        let r: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let a = GeneratorSet::from_i64_rows(&r).unwrap();
        let rep = is_ci_oracle(&a).unwrap();
        let ord = TermOrder::weighted(grading(&a), a.len() - 1);
        for b in &rep.markov {
            assert!(b.has_disjoint_supports());
            assert_eq!(a.matrix().left_mul(&b.uplus), a.matrix().left_mul(&b.uminus));
            // Normal forms are idempotent.
            for u in [&b.uplus, &b.uminus] {
                let nf = normal_form(u, &rep.markov, &ord).unwrap();
                assert_eq!(normal_form(&nf, &rep.markov, &ord).unwrap(), nf);
            }
        }
        // Every S-pair reduces to zero.
        for (i, p) in rep.markov.iter().enumerate() {
            for q in &rep.markov[i + 1..] {
                let l: Vec<BigInt> = p.uplus.iter().zip(q.uplus.iter()).map(|(x, y)| x.max(y).clone()).collect();
                let l = IntVector::new(l);
                let s = Binomial {
                    uplus: l.sub(&p.uplus).add(&p.uminus),
                    uminus: l.sub(&q.uplus).add(&q.uminus),
                };
                assert!(in_ideal(&s, &rep.markov, &ord).unwrap());
            }
        }
        // The basis is its own reduced basis.
        assert_eq!(buchberger(&rep.markov, &ord, Budget::default()).unwrap(), rep.markov);
    }
}
