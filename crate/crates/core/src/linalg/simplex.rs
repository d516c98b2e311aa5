//! Exact phase-one simplex with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, IntVector, RationalVector};

/// Exact linear feasibility: a rational `λ ≥ 0` with `λ · eq = rhs` and
/// `λ_j > 0` for every `j` in `strict`, or `None`.
///
/// Rows of `eq` are the variables, columns are the equations. The witness is
/// a deterministic function of the input.
pub fn lp_feasible(eq: &IntMatrix, rhs: &IntVector, strict: &[usize]) -> Option<RationalVector> {
    let m = eq.nrows();
    let n = eq.ncols();
    assert_eq!(rhs.dim(), n, "rhs length must match the equation count");
    assert!(strict.iter().all(|&j| j < m), "strict index out of range");

    if strict.is_empty() {
        let a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..m).map(|j| int(&eq[(j, i)])).collect())
            .collect();
        let b: Vec<BigRational> = rhs.iter().map(int).collect();
        return phase_one(a, b).map(RationalVector::new);
    }

    // Homogenise: μ · eq = w · rhs with μ_j ≥ 1 on strict indices and w ≥ 1;
    // shift μ_j = 1 + μ'_j, w = 1 + w' and recover λ = μ / w.
    let mut is_strict = vec![false; m];
    for &j in strict {
        is_strict[j] = true;
    }
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        let mut row: Vec<BigRational> = (0..m).map(|j| int(&eq[(j, i)])).collect();
        row.push(-int(&rhs[i]));
        a.push(row);
        let shift: BigInt = (0..m).filter(|&j| is_strict[j]).map(|j| &eq[(j, i)]).sum();
        b.push(int(&(&rhs[i] - shift)));
    }
    let x = phase_one(a, b)?;
    let w = &x[m] + BigRational::one();
    let lambda = (0..m)
        .map(|j| {
            let mu = if is_strict[j] {
                &x[j] + BigRational::one()
            } else {
                x[j].clone()
            };
            mu / &w
        })
        .collect();
    Some(RationalVector::new(lambda))
}

fn int(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Finds `x ≥ 0` with `A x = b` (A is rows × vars) or reports infeasibility.
fn phase_one(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let vars = a.first().map_or(0, Vec::len);
    if rows == 0 {
        return Some(vec![BigRational::zero(); vars]);
    }
    for (row, bi) in a.iter_mut().zip(b.iter_mut()) {
        if bi.is_negative() {
            for x in row.iter_mut() {
                *x = -std::mem::take(x);
            }
            *bi = -std::mem::take(bi);
        }
    }

    // Tableau columns: original vars, then one artificial per row.
    let total = vars + rows;
    let mut t: Vec<Vec<BigRational>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..rows).map(|k| {
                if k == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (vars..total).collect();

    // Reduced costs of "minimise the sum of artificials".
    let mut cost: Vec<BigRational> = (0..total)
        .map(|j| {
            if j < vars {
                -t.iter().map(|row| row[j].clone()).sum::<BigRational>()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let mut objective: BigRational = -b.iter().cloned().sum::<BigRational>();

    loop {
        let Some(enter) = (0..total).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if !t[i][enter].is_positive() {
                continue;
            }
            let r = &b[i] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => r < *lr || (r == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, r));
            }
        }
        // Phase one is bounded below by zero, so a ratio always exists.
        let (p, _) = leave.expect("phase-one objective is bounded");

        let piv = t[p][enter].clone();
        for x in t[p].iter_mut() {
            *x /= &piv;
        }
        b[p] /= &piv;
        let pivot_row = t[p].clone();
        let pivot_rhs = b[p].clone();
        for i in 0..rows {
            if i == p || t[i][enter].is_zero() {
                continue;
            }
            let f = t[i][enter].clone();
            for (x, y) in t[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            b[i] -= &f * &pivot_rhs;
        }
        let f = cost[enter].clone();
        for (x, y) in cost.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        objective -= &f * &pivot_rhs;
        basis[p] = enter;
    }

    if !objective.is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); vars];
    for (i, &j) in basis.iter().enumerate() {
        if j < vars {
            x[j] = b[i].clone();
        }
    }
    Some(x)
}
