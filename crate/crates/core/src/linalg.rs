//! Exact dense row reduction over complex rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::ComplexRational;

pub type ExactMatrix = Vec<Vec<ComplexRational>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut ExactMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let inv = ComplexRational::one()
            .checked_div(&m[r][c])
            .expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            let pivot_row = m[r][c..cols].to_vec();
            for (x, p) in m[i][c..cols].iter_mut().zip(&pivot_row) {
                *x -= &(&factor * p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}`, one vector per free column, in column order.
pub fn nullspace(m: &ExactMatrix, cols: usize) -> Vec<Vec<ComplexRational>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![ComplexRational::zero(); cols];
        v[free] = ComplexRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&work[row][free];
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b` for square nonsingular `A`.
pub fn solve(a: &ExactMatrix, b: &[ComplexRational]) -> Result<Vec<ComplexRational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument(
            "solve expects a square system".into(),
        ));
    }
    let mut aug: ExactMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::InvalidArgument("singular system".into()));
    }
    Ok(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}
