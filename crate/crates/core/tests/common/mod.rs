#![allow(dead_code)]

use kohn_spectra::scalar::{int, ComplexRational};
use kohn_spectra::RossiParam;
use num_rational::BigRational;

/// Published matrix of `□_b^t / h` on `H_3`, row `i` holding the image of `f_i`.
/// Each entry is `c0 + c_s |t|² + c_t t` (the listing has `t̄`, equal to `t` for real `t`).
pub const REFERENCE_H3_DIAGONAL: [(i64, i64); 16] = [
    (3, 0),
    (3, 0),
    (3, 0),
    (3, 0),
    (4, 3),
    (4, 3),
    (4, 3),
    (4, 3),
    (3, 4),
    (3, 4),
    (3, 4),
    (3, 4),
    (0, 3),
    (0, 3),
    (0, 3),
    (0, 3),
];

/// `(row, col, c_t)` off-diagonal entries.
pub const REFERENCE_H3_OFFDIAG: [(usize, usize, i64); 16] = [
    (0, 11, -6),
    (1, 10, 6),
    (2, 8, -6),
    (3, 9, -6),
    (4, 14, -2),
    (5, 13, 2),
    (6, 12, -2),
    (7, 15, -2),
    (8, 2, -2),
    (9, 3, -2),
    (10, 1, 2),
    (11, 0, -2),
    (12, 6, -6),
    (13, 5, 6),
    (14, 4, -6),
    (15, 7, -6),
];

pub fn reference_h3(t: &RossiParam) -> Vec<Vec<ComplexRational>> {
    let s = t.t_sq();
    let tau = t.t_abs().clone();
    let mut f = vec![vec![ComplexRational::from_int(0); 16]; 16];
    for (i, (c0, cs)) in REFERENCE_H3_DIAGONAL.iter().enumerate() {
        f[i][i] = ComplexRational::real(int(*c0) + &s * int(*cs));
    }
    for (row, col, ct) in REFERENCE_H3_OFFDIAG {
        f[row][col] = ComplexRational::real(&tau * int(ct));
    }
    f
}

pub fn reference_h3_f64(t: &RossiParam) -> nalgebra::DMatrix<f64> {
    let f = reference_h3(t);
    nalgebra::DMatrix::from_fn(16, 16, |i, j| {
        kohn_spectra::scalar::rational_to_f64(&f[i][j].re)
    })
}

pub fn t(n: i64, d: i64) -> RossiParam {
    RossiParam::from_ratio(n, d).unwrap()
}

/// `{1/10, 2/10, ..., 9/10}`
pub fn tenths() -> Vec<RossiParam> {
    (1..=9).map(|n| t(n, 10)).collect()
}

/// `{1/20, 2/20, ..., 19/20}`
pub fn twentieths() -> Vec<RossiParam> {
    (1..=19).map(|n| t(n, 20)).collect()
}

pub fn quarters() -> Vec<RossiParam> {
    vec![t(1, 4), t(1, 2), t(3, 4)]
}

/// Dense determinant by fraction-exact Gaussian elimination.
pub fn dense_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    use num_traits::{One, Zero};
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|r| !a[*r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            let pivot_row = a[col][col..n].to_vec();
            for (x, q) in a[r][col..n].iter_mut().zip(&pivot_row) {
                *x -= &factor * q;
            }
        }
    }
    det
}

/// Eigenvalues of a real matrix that is similar to a symmetric one, via the
/// general (Schur) solver; imaginary parts must vanish.
pub fn real_eigenvalues(m: nalgebra::DMatrix<f64>) -> Vec<f64> {
    let ev = m.complex_eigenvalues();
    let mut out: Vec<f64> = ev
        .iter()
        .map(|c| {
            assert!(c.im.abs() < 1e-8, "non-real eigenvalue {c}");
            c.re
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}
