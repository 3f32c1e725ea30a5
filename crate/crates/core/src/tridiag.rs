//! Tridiagonal spectra: symmetrization, continuants, Sturm bisection,
//! Cauchy interlacing and the decay bound for the smallest eigenvalue on `W`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rossi::{coefficients, BlockKind, OperatorComponents};
use crate::scalar::{int, rat, rational_to_f64, RossiParam};
use crate::unipoly::UniPoly;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_BISECTION_STEPS: usize = 200;
pub const INTERLACING_SLACK: f64 = 1e-10;
/// Eigenvalues with `|λ| ≤ ZERO_THRESHOLD · h` count as kernel on even spaces.
pub const ZERO_THRESHOLD: f64 = 1e-9;

/// Symmetric tridiagonal matrix: `diag[0..k]`, `offdiag[0..k−1] ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.len().saturating_sub(1) != offdiag.len() {
            return Err(Error::InvalidArgument(format!(
                "{} diagonal entries need {} off-diagonal entries, got {}",
                diag.len(),
                diag.len().saturating_sub(1),
                offdiag.len()
            )));
        }
        if offdiag.iter().any(|e| *e < 0.0 || !e.is_finite()) || diag.iter().any(|d| !d.is_finite())
        {
            return Err(Error::InvalidArgument(
                "entries must be finite, off-diagonals non-negative".into(),
            ));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Leading principal `i × i` submatrix.
    pub fn leading(&self, i: usize) -> SymTridiag {
        let i = i.min(self.dim());
        SymTridiag {
            diag: self.diag[..i].to_vec(),
            offdiag: self.offdiag[..i.saturating_sub(1)].to_vec(),
        }
    }

    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.offdiag[i - 1] } else { 0.0 }
                + if i + 1 < n { self.offdiag[i] } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`: the count of negative pivots
    /// in the `LDLᵀ` factorization of `A − xI` (shifted continuant ratios).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut pivot = 1.0;
        for i in 0..self.dim() {
            let coupling = if i > 0 {
                self.offdiag[i - 1] * self.offdiag[i - 1]
            } else {
                0.0
            };
            pivot = self.diag[i] - x - coupling / pivot;
            if pivot == 0.0 {
                pivot = -f64::EPSILON * (x.abs() + 1.0);
            }
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// `idx`-th smallest eigenvalue (0-based) by bisection to absolute `tol`.
    pub fn eigenvalue(&self, idx: usize, tol: f64) -> Result<f64> {
        if idx >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: idx,
                limit: self.dim(),
            });
        }
        if tol <= 0.0 || tol.is_nan() {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * (lo.abs().max(hi.abs()) + 1.0);
        lo -= pad;
        hi += pad;
        for _ in 0..MAX_BISECTION_STEPS {
            if hi - lo <= tol {
                return Ok(0.5 * (lo + hi));
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > idx {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::NoConvergence {
            tol,
            iterations: MAX_BISECTION_STEPS,
        })
    }

    pub fn eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        (0..self.dim()).map(|i| self.eigenvalue(i, tol)).collect()
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let n = self.dim();
        nalgebra::DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 1 == j {
                self.offdiag[i]
            } else if j + 1 == i {
                self.offdiag[j]
            } else {
                0.0
            }
        })
    }
}

/// Smallest eigenvalue to absolute tolerance `tol`.
pub fn lambda_min(st: &SymTridiag, tol: f64) -> Result<f64> {
    if st.dim() == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    st.eigenvalue(0, tol)
}

/// Diagonal similarity `A = S B S^{−1}` taking a real tridiagonal matrix with
/// `u_j l_j > 0` to the symmetric `B` with off-diagonals `√(u_j l_j)`.
/// A decoupled position (`u_j = l_j = 0`) is kept as a zero off-diagonal.
pub fn symmetrize(diag: &[f64], upper: &[f64], lower: &[f64]) -> Result<SymTridiag> {
    if upper.len() != lower.len() {
        return Err(Error::InvalidArgument(
            "upper and lower lengths differ".into(),
        ));
    }
    let offdiag = upper
        .iter()
        .zip(lower)
        .enumerate()
        .map(|(j, (u, l))| {
            let product = u * l;
            if product > 0.0 {
                Ok(product.sqrt())
            } else if *u == 0.0 && *l == 0.0 {
                Ok(0.0)
            } else {
                Err(Error::NotSymmetrizable { j: j + 1, product })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SymTridiag::new(diag.to_vec(), offdiag)
}

/// Eigenvalues of the leading `(k−1)`-minor separate those of the full matrix:
/// `λ_1 ≤ ν_1 ≤ λ_2 ≤ ... ≤ ν_{k−1} ≤ λ_k`, checked with slack `1e−10`.
pub fn interlacing_check(st: &SymTridiag) -> Result<bool> {
    let k = st.dim();
    if k < 2 {
        return Err(Error::InvalidArgument(
            "interlacing needs dimension at least 2".into(),
        ));
    }
    let lambda = st.eigenvalues(DEFAULT_TOL)?;
    let nu = st.leading(k - 1).eigenvalues(DEFAULT_TOL)?;
    Ok(nu.iter().enumerate().all(|(i, v)| {
        lambda[i] <= v + INTERLACING_SLACK && *v <= lambda[i + 1] + INTERLACING_SLACK
    }))
}

/// Tridiagonal block whose entries are polynomials in `s = |t|²`:
/// `diag[j]` and the products `coupling[j] = u_j l_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamTridiag {
    pub diag: Vec<UniPoly>,
    pub coupling: Vec<UniPoly>,
}

impl ParamTridiag {
    /// The `V` or `W` block of `H_{2k−1}`; `u_j l_j = c_j² s` in both cases.
    pub fn for_block(kind: BlockKind, k: u32) -> Self {
        let k = k as i64;
        let diag = (1..=k)
            .map(|j| {
                UniPoly::linear(
                    coefficients::diag_const(kind, k, j),
                    coefficients::diag_t2(kind, k, j),
                )
            })
            .collect();
        let coupling = (1..k)
            .map(|j| UniPoly::linear(0, coefficients::upper_coeff(kind, k, j)))
            .collect();
        Self { diag, coupling }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn leading(&self, i: usize) -> Self {
        Self {
            diag: self.diag[..i].to_vec(),
            coupling: self.coupling[..i.saturating_sub(1)].to_vec(),
        }
    }

    pub fn at(&self, s: &BigRational) -> ExactSymTridiag {
        ExactSymTridiag {
            diag: self.diag.iter().map(|d| d.eval(s)).collect(),
            offdiag_sq: self.coupling.iter().map(|c| c.eval(s)).collect(),
        }
    }
}

/// `f_0 = 1`, `f_1 = d_1`, `f_i = d_i f_{i−1} − u_{i−1} l_{i−1} f_{i−2}`;
/// `f_i = det(A_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuantSeq {
    pub values: Vec<UniPoly>,
}

impl ContinuantSeq {
    /// `f_i`, i.e. `det(A_i)`.
    pub fn det(&self, i: usize) -> &UniPoly {
        &self.values[i]
    }

    pub fn last(&self) -> &UniPoly {
        self.values.last().expect("f_0 is always present")
    }
}

pub fn continuants(block: &ParamTridiag) -> ContinuantSeq {
    let mut values = Vec::with_capacity(block.dim() + 1);
    values.push(UniPoly::one());
    for i in 0..block.dim() {
        let mut next = &block.diag[i] * &values[i];
        if i > 0 {
            next = &next - &(&block.coupling[i - 1] * &values[i - 1]);
        }
        values.push(next);
    }
    ContinuantSeq { values }
}

/// `(a_j, b_j, c_j²)` of the symmetrized `W` block:
/// `a_j = (2j)(2k−2j)`, `b_j = (2j−1)(2k+1−2j)`, `c_j² = (2j+1)(2j)(2k−2j)(2k−1−2j)`.
pub fn w_coefficients(k: u32, j: u32) -> (i64, i64, i64) {
    let (k, j) = (k as i64, j as i64);
    (
        coefficients::diag_const(BlockKind::W, k, j),
        coefficients::diag_t2(BlockKind::W, k, j),
        coefficients::upper_coeff(BlockKind::W, k, j),
    )
}

/// `det(A_i) = a_1⋯a_i + b_1 a_2⋯a_i s + ... + b_1⋯b_i s^i` for the `W` block.
pub fn det_closed_form(k: u32, i: u32) -> Result<UniPoly> {
    if i == 0 || i > k {
        return Err(Error::IndexOutOfRange {
            index: i as usize,
            limit: k as usize,
        });
    }
    let a: Vec<BigRational> = (1..=i).map(|j| int(w_coefficients(k, j).0)).collect();
    let b: Vec<BigRational> = (1..=i).map(|j| int(w_coefficients(k, j).1)).collect();
    let mut coeffs = Vec::with_capacity(i as usize + 1);
    for r in 0..=i as usize {
        let bs = b[..r].iter().fold(BigRational::one(), |acc, x| acc * x);
        let as_ = a[r..].iter().fold(BigRational::one(), |acc, x| acc * x);
        coeffs.push(bs * as_);
    }
    Ok(UniPoly::new(coeffs))
}

/// Symmetric tridiagonal matrix with exact diagonal and exact squared
/// off-diagonals, so that `√(u_j l_j)` never has to be formed.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSymTridiag {
    pub diag: Vec<BigRational>,
    pub offdiag_sq: Vec<BigRational>,
}

impl ExactSymTridiag {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `det(A_i − xI)` for `i = 0..=k`.
    pub fn shifted_continuants(&self, x: &BigRational) -> Vec<BigRational> {
        let mut f = Vec::with_capacity(self.dim() + 1);
        f.push(BigRational::one());
        for i in 0..self.dim() {
            let mut next = (&self.diag[i] - x) * &f[i];
            if i > 0 {
                next -= &self.offdiag_sq[i - 1] * &f[i - 1];
            }
            f.push(next);
        }
        f
    }

    /// Sylvester: `A − xI` is positive definite iff every leading minor is
    /// positive, i.e. iff `x < λ_min`.
    ///
    /// Runs on integers: with `D` clearing every denominator, the scaled
    /// continuants `D^i f_i` keep the signs of `f_i` and need no gcd.
    pub fn lambda_min_exceeds(&self, x: &BigRational) -> bool {
        let denom = self
            .diag
            .iter()
            .chain(&self.offdiag_sq)
            .fold(x.denom().clone(), |acc, r| acc.lcm(r.denom()));
        let scaled = |r: &BigRational| r.numer() * (&denom / r.denom());
        let d_sq = &denom * &denom;
        let shift = scaled(x);
        let mut prev = BigInt::one();
        let mut cur = BigInt::one();
        for i in 0..self.dim() {
            let mut next = (scaled(&self.diag[i]) - &shift) * &cur;
            if i > 0 {
                let e = &self.offdiag_sq[i - 1];
                next -= e.numer() * (&d_sq / e.denom()) * &prev;
            }
            if !next.is_positive() {
                return false;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        true
    }

    /// Upper Gershgorin bound, using `e ≤ (1 + e²)/2` to stay rational.
    fn upper_bound(&self) -> BigRational {
        let half = rat(1, 2);
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut r = self.diag[i].clone();
                if i > 0 {
                    r += (BigRational::one() + &self.offdiag_sq[i - 1]) * &half;
                }
                if i + 1 < n {
                    r += (BigRational::one() + &self.offdiag_sq[i]) * &half;
                }
                r
            })
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    fn lower_bound(&self) -> BigRational {
        let half = rat(1, 2);
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut r = self.diag[i].clone();
                if i > 0 {
                    r -= (BigRational::one() + &self.offdiag_sq[i - 1]) * &half;
                }
                if i + 1 < n {
                    r -= (BigRational::one() + &self.offdiag_sq[i]) * &half;
                }
                r
            })
            .min()
            .unwrap_or_else(BigRational::zero)
    }

    /// Bracket `[lo, hi]` around `λ_min` with `hi − lo ≤ rel_tol · max(|lo|, |hi|)`.
    ///
    /// Positive `λ_min` is first located by halving from the upper bound, so
    /// the relative accuracy holds even when `λ_min` is many orders of
    /// magnitude below the matrix entries.
    pub fn lambda_min_bracket(&self, rel_tol: f64) -> Result<(BigRational, BigRational)> {
        if self.dim() == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        if rel_tol <= 0.0 || rel_tol.is_nan() {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        let two = int(2);
        let mut hi = self.upper_bound() + BigRational::one();
        let mut lo;
        let zero = BigRational::zero();
        if self.lambda_min_exceeds(&zero) {
            // λ_min > 0: shrink hi by halving while λ_min stays below hi/2.
            let mut steps = 0;
            loop {
                let half = &hi / &two;
                if self.lambda_min_exceeds(&half) {
                    lo = half;
                    break;
                }
                hi = half;
                steps += 1;
                if steps > 4 * 1024 {
                    return Err(Error::NoConvergence {
                        tol: rel_tol,
                        iterations: steps,
                    });
                }
            }
        } else {
            lo = self.lower_bound() - BigRational::one();
        }
        let tol = BigRational::from_float(rel_tol).unwrap_or_else(|| rat(1, 1_000_000_000_000));
        for _ in 0..4 * MAX_BISECTION_STEPS {
            let scale = lo.abs().max(hi.abs());
            if &hi - &lo <= &tol * &scale {
                return Ok((lo, hi));
            }
            let mid = (&lo + &hi) / &two;
            if self.lambda_min_exceeds(&mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Err(Error::NoConvergence {
            tol: rel_tol,
            iterations: 4 * MAX_BISECTION_STEPS,
        })
    }

    pub fn lambda_min(&self, rel_tol: f64) -> Result<f64> {
        let (lo, hi) = self.lambda_min_bracket(rel_tol)?;
        Ok(rational_to_f64(&((lo + hi) / int(2))))
    }

    pub fn to_f64(&self) -> SymTridiag {
        SymTridiag {
            diag: self.diag.iter().map(rational_to_f64).collect(),
            offdiag: self
                .offdiag_sq
                .iter()
                .map(|e| rational_to_f64(e).sqrt())
                .collect(),
        }
    }
}

/// Symmetrized `W` block of `H_{2k−1}` at `s = |t|²` (without `h`).
pub fn symmetrized_w_block(k: u32, t: &RossiParam) -> SymTridiag {
    ParamTridiag::for_block(BlockKind::W, k)
        .at(&t.t_sq())
        .to_f64()
}

/// `h (2k−1) √k |t|^{2k}`, the bound as originally derived.
pub fn uncorrected_bound(k: u32, t: &RossiParam) -> f64 {
    let s = t.t_sq();
    t.h_f64() * (2 * k - 1) as f64 * (k as f64).sqrt() * rational_to_f64(&s).powi(k as i32)
}

/// `h (2k−1) √(e · max(k−1, 1)) |t|^{2k}`, from `Σ_{j<k} 1/(2j) ≤ (1 + ln(k−1))/2`.
pub fn corrected_bound(k: u32, t: &RossiParam) -> f64 {
    let s = t.t_sq();
    let km1 = k.saturating_sub(1).max(1) as f64;
    t.h_f64()
        * (2 * k - 1) as f64
        * (std::f64::consts::E * km1).sqrt()
        * rational_to_f64(&s).powi(k as i32)
}

/// `Σ_{j=1}^{k−1} 1/(2j)`, the exponent in the product bound.
pub fn half_harmonic_sum(k: u32) -> f64 {
    (1..k).map(|j| 1.0 / (2.0 * j as f64)).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub k: u32,
    pub t: RossiParam,
    pub h: f64,
    /// Smallest eigenvalue of `□_b^t` on `W ⊂ H_{2k−1}`, including `h`.
    pub lambda_min: f64,
    /// `h det(A) / det(A_{k−1})`
    pub det_ratio: f64,
    pub uncorrected_bound: f64,
    pub corrected_bound: f64,
    /// `0 < λ_min ≤ det(A)/det(A_{k−1})` verified in exact arithmetic.
    pub certified: bool,
}

impl BoundReport {
    /// `0 < λ_min ≤ det ratio ≤ corrected bound`.
    pub fn chain_holds(&self) -> bool {
        self.certified
            && self.lambda_min > 0.0
            && self.lambda_min <= self.det_ratio * (1.0 + 1e-12)
            && self.det_ratio <= self.corrected_bound
    }
}

pub fn bound_chain(k: u32, t: &RossiParam) -> Result<BoundReport> {
    bound_chain_with_tol(k, t, DEFAULT_TOL)
}

/// [`bound_chain`] with `λ_min` resolved to relative tolerance `rel_tol`.
pub fn bound_chain_with_tol(k: u32, t: &RossiParam, rel_tol: f64) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if t.is_zero() {
        return Err(Error::InvalidArgument(
            "the bound chain needs 0 < |t| < 1".into(),
        ));
    }
    let s = t.t_sq();
    let block = ParamTridiag::for_block(BlockKind::W, k);
    let cont = continuants(&block);
    let ratio = cont.det(k as usize).eval(&s) / cont.det(k as usize - 1).eval(&s);
    let exact = block.at(&s);
    let (lo, hi) = exact.lambda_min_bracket(rel_tol)?;
    let certified =
        exact.lambda_min_exceeds(&BigRational::zero()) && !exact.lambda_min_exceeds(&ratio);
    let h = t.h_f64();
    Ok(BoundReport {
        k,
        t: t.clone(),
        h,
        lambda_min: h * rational_to_f64(&((lo + hi) / int(2))),
        det_ratio: h * rational_to_f64(&ratio),
        uncorrected_bound: uncorrected_bound(k, t),
        corrected_bound: corrected_bound(k, t),
        certified,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RowParity {
    Odd,
    Even,
}

impl RowParity {
    pub fn as_str(self) -> &'static str {
        match self {
            RowParity::Odd => "odd",
            RowParity::Even => "even",
        }
    }
}

/// One point of a sweep. For odd rows `lambda_min` is the smallest eigenvalue
/// on `H_{2k−1}` (from `W`); for even rows the smallest nonzero one on `H_{2k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub k: u32,
    pub parity: RowParity,
    pub t: RossiParam,
    pub h: f64,
    pub lambda_min: f64,
    pub det_ratio: Option<f64>,
    pub uncorrected_bound: Option<f64>,
    pub corrected_bound: Option<f64>,
    /// Odd rows: whether the bound chain holds.
    pub chain_holds: Option<bool>,
}

impl From<BoundReport> for SweepRow {
    fn from(r: BoundReport) -> Self {
        let holds = r.chain_holds();
        SweepRow {
            k: r.k,
            parity: RowParity::Odd,
            t: r.t,
            h: r.h,
            lambda_min: r.lambda_min,
            det_ratio: Some(r.det_ratio),
            uncorrected_bound: Some(r.uncorrected_bound),
            corrected_bound: Some(r.corrected_bound),
            chain_holds: Some(holds),
        }
    }
}

/// Smallest eigenvalue of `M` (with `h`) above `zero_threshold · h`, or `None`
/// if the whole spectrum is kernel.
pub fn smallest_nonzero(
    components: &OperatorComponents,
    t: &RossiParam,
    zero_threshold: f64,
) -> Option<f64> {
    let h = t.h_f64();
    components
        .assemble(t, crate::rossi::MatrixMode::Numeric)
        .eigenvalues()
        .into_iter()
        .map(|ev| ev * h)
        .find(|ev| ev.abs() > zero_threshold * h)
}

/// Odd rows for `k = 1..=k_max` and/or even rows, one per `(k, t)`, ordered by
/// parity, then `k`, then grid position. Even rows use `zero_threshold`
/// (relative to `h`) to separate the kernel.
pub fn sweep(
    k_max: u32,
    t_grid: &[RossiParam],
    parity: Parity,
    zero_threshold: f64,
) -> Result<Vec<SweepRow>> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    if let Some(bad) = t_grid.iter().find(|t| t.is_zero()) {
        return Err(Error::InvalidArgument(format!(
            "grid point t = {bad} is not in (0, 1)"
        )));
    }
    let mut rows = Vec::new();
    if matches!(parity, Parity::Odd | Parity::Both) {
        let pairs: Vec<(u32, &RossiParam)> = (1..=k_max)
            .flat_map(|k| t_grid.iter().map(move |t| (k, t)))
            .collect();
        let odd: Vec<SweepRow> = pairs
            .par_iter()
            .map(|(k, t)| bound_chain(*k, t).map(SweepRow::from))
            .collect::<Result<_>>()?;
        rows.extend(odd);
    }
    if matches!(parity, Parity::Even | Parity::Both) {
        let even: Vec<Vec<SweepRow>> = (1..=k_max)
            .into_par_iter()
            .map(|k| {
                let comps = OperatorComponents::for_degree(2 * k)?;
                Ok(t_grid
                    .iter()
                    .map(|t| SweepRow {
                        k,
                        parity: RowParity::Even,
                        t: t.clone(),
                        h: t.h_f64(),
                        lambda_min: smallest_nonzero(&comps, t, zero_threshold).unwrap_or(f64::NAN),
                        det_ratio: None,
                        uncorrected_bound: None,
                        corrected_bound: None,
                        chain_holds: None,
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;
        rows.extend(even.into_iter().flatten());
    }
    Ok(rows)
}
