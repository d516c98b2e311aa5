use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{hnf, IntMatrix, IntVector, LatticeBasis};
use crate::error::{Error, Result};

/// Basis of the left kernel `{x ∈ Z^m : x · M = 0}`.
///
/// The kernel is read off the transformation matrix of the Hermite normal
/// form, so the result is saturated.
pub fn kernel_lattice(m: &IntMatrix) -> LatticeBasis {
    let (h, u) = hnf(m);
    let rows: Vec<IntVector> = h
        .rows()
        .iter()
        .zip(u.rows())
        .filter(|(hr, _)| hr.is_zero())
        .map(|(_, ur)| ur.clone())
        .collect();
    let k = IntMatrix::new(rows, m.nrows()).expect("rows of U have length m");
    LatticeBasis::from_generators(&k)
}

/// Basis of `L1 ∩ L2`, via the kernel of the stacked matrix `[B1; -B2]`.
pub fn lattice_intersection(b1: &LatticeBasis, b2: &LatticeBasis) -> Result<LatticeBasis> {
    if b1.ambient() != b2.ambient() {
        return Err(Error::AmbientMismatch(b1.ambient(), b2.ambient()));
    }
    let r1 = b1.rank();
    if r1 == 0 || b2.rank() == 0 {
        return Ok(LatticeBasis::zero(b1.ambient()));
    }
    let stacked = b1.basis().stack(&b2.basis().negated())?;
    let kernel = kernel_lattice(&stacked);
    let images: Vec<IntVector> = kernel
        .rows()
        .iter()
        .map(|xy| b1.basis().left_mul(&xy[..r1]))
        .collect();
    let m = IntMatrix::new(images, b1.ambient())?;
    Ok(LatticeBasis::from_generators(&m))
}

/// Integer points of the rational row space of `m`: `span_Q(rows) ∩ Z^n`.
pub fn saturation(m: &IntMatrix) -> LatticeBasis {
    let n = m.ncols();
    if m.nrows() == 0 {
        return LatticeBasis::zero(n);
    }
    // Orthogonal complement W = {y : M·y = 0}, then V ∩ Z^n = {x : x·W = 0}.
    let complement = kernel_lattice(&m.transpose());
    if complement.rank() == 0 {
        return LatticeBasis::from_generators(&IntMatrix::identity(n));
    }
    let w_cols = complement.basis().transpose();
    kernel_lattice(&w_cols)
}

/// Saturated integer basis of `span_Q(M1) ∩ span_Q(M2)`.
///
/// Each basis row is primitive; for a one-dimensional intersection the single
/// row is the primitive generator with positive leading entry.
pub fn span_intersection(m1: &IntMatrix, m2: &IntMatrix) -> Result<LatticeBasis> {
    if m1.ncols() != m2.ncols() {
        return Err(Error::AmbientMismatch(m1.ncols(), m2.ncols()));
    }
    let n = m1.ncols();
    if m1.nrows() == 0 || m2.nrows() == 0 {
        return Ok(LatticeBasis::zero(n));
    }
    let stacked = m1.stack(&m2.negated())?;
    let kernel = kernel_lattice(&stacked);
    let images: Vec<IntVector> = kernel
        .rows()
        .iter()
        .map(|xy| m1.left_mul(&xy[..m1.nrows()]))
        .filter(|v| !v.is_zero())
        .collect();
    if images.is_empty() {
        return Ok(LatticeBasis::zero(n));
    }
    Ok(saturation(&IntMatrix::new(images, n)?))
}

/// Coefficients `x` with `x · B = v`, or `None` when `v ∉ Z B`.
pub fn solve_in_lattice(v: &IntVector, b: &LatticeBasis) -> Option<IntVector> {
    if v.dim() != b.ambient() {
        return None;
    }
    let (h, u) = hnf(b.basis());
    solve_hnf(v, &h, &u)
}

/// Integer `x` with `x · M = v` given `(H, U) = hnf(M)`.
pub(crate) fn solve_hnf(v: &IntVector, h: &IntMatrix, u: &IntMatrix) -> Option<IntVector> {
    let mut residual: Vec<BigInt> = v.to_vec();
    let mut y = vec![BigInt::zero(); h.nrows()];
    for (i, row) in h.rows().iter().enumerate() {
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            break;
        };
        // Columns left of the pivot must already be cleared.
        if residual[..pc].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = residual[pc].div_rem(&row[pc]);
        if !r.is_zero() {
            return None;
        }
        for (res, hv) in residual.iter_mut().zip(row.iter()) {
            *res -= &q * hv;
        }
        y[i] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(u.left_mul(&y))
}

/// Splits `v` into its primitive direction and content: `v = g · p`.
pub fn primitive(v: &IntVector) -> Result<(IntVector, BigInt)> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    debug_assert!(g.is_positive());
    let p = IntVector::new(v.iter().map(|c| c / &g).collect());
    Ok((p, g))
}
