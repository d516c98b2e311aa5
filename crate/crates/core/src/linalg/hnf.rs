use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, IntVector};

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `H = U · M`, `U` unimodular, and `H` in echelon form
/// with positive pivots and every entry above a pivot reduced into
/// `[0, pivot)`. Zero rows of `H` come last; the corresponding rows of `U`
/// span the left kernel of `M`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut h: Vec<Vec<BigInt>> = m.rows().iter().map(|r| r.to_vec()).collect();
    let mut u: Vec<Vec<BigInt>> = IntMatrix::identity(rows)
        .into_rows()
        .into_iter()
        .map(IntVector::into_inner)
        .collect();

    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid on column c over rows r.. until a single nonzero entry remains.
        loop {
            let pivot = (r..rows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()).then(i.cmp(&j)));
            let Some(p) = pivot else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                sub_scaled_row(&mut h, i, r, &q);
                sub_scaled_row(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                sub_scaled_row(&mut h, i, r, &q);
                sub_scaled_row(&mut u, i, r, &q);
            }
        }
        r += 1;
    }

    let to_matrix = |rows: Vec<Vec<BigInt>>, cols: usize| {
        IntMatrix::new(rows.into_iter().map(IntVector::new).collect(), cols)
            .expect("rows keep their length")
    };
    (to_matrix(h, cols), to_matrix(u, rows))
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = hnf(m);
    h.rows().iter().filter(|r| !r.is_zero()).count()
}

fn sub_scaled_row(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    if q.is_one() {
        for (x, y) in t.iter_mut().zip(s) {
            *x -= y;
        }
    } else {
        for (x, y) in t.iter_mut().zip(s) {
            *x -= q * y;
        }
    }
}

fn negate_row(a: &mut [Vec<BigInt>], i: usize) {
    for x in a[i].iter_mut() {
        *x = -std::mem::take(x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn already_reduced_matrix_is_fixed() {
        let m = mat(&[&[2, 0], &[0, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, m);
        assert_eq!(u.mul(&m), h);
    }

    #[test]
    fn single_column_reduces_to_gcd() {
        let (h, u) = hnf(&mat(&[&[4], &[6]]));
        assert_eq!(h, mat(&[&[2], &[0]]));
        assert_eq!(u.mul(&mat(&[&[4], &[6]])), h);
    }

    #[test]
    fn dependent_rows_leave_zero_row() {
        let (h, _) = hnf(&mat(&[&[1, 2], &[2, 4]]));
        assert_eq!(h, mat(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn entries_above_pivots_are_reduced() {
        let m = mat(&[&[3, 5, 7], &[0, 4, 1], &[-2, 1, 9]]);
        let (h, u) = hnf(&m);
        assert_eq!(u.mul(&m), h);
        let mut last_pivot_col = None;
        for (i, row) in h.rows().iter().enumerate() {
            let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            assert!(last_pivot_col.map_or(true, |l| pc > l));
            last_pivot_col = Some(pc);
            let p = &row[pc];
            assert!(p.is_positive());
            for above in 0..i {
                let e = &h[(above, pc)];
                assert!(!e.is_negative() && e < p, "entry {e} above pivot {p}");
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&mat(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&mat(&[&[4, 6, 9]])), 1);
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&IntMatrix::empty(3)), 0);
    }
}
