//! Matrices of `□_b^t` on `H_m(S³)`.
//!
//! Two routes are provided and checked against each other:
//!
//! - [`assemble_full`] applies the operator to every element of the derivative
//!   basis and expands the image back in that basis with exact inner products;
//! - [`closed_form_block`] writes down the tridiagonal matrix on the invariant
//!   chains `V_i = span{f_i, Lbar² f_i, ...}` and `W_i = span{Lbar f_i, Lbar³ f_i, ...}`
//!   of `H_{2k−1}`, where `f_i` runs over the basis of `H_{0,2k−1}`.
//!
//! All matrices use the column convention (column `j` holds the coordinates of
//! the image of basis vector `j`) and have the global factor `h` factored out.

use std::collections::BTreeMap;

use nalgebra::{Complex, DMatrix};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::harmonics::{basis_hm, basis_hm_bidegrees, basis_hpq_derivative};
use crate::poly::{
    apply_boxbt_unscaled, apply_lbar, boxbt_components, sphere_inner_product, sphere_norm_sq,
    Polynomial,
};
use crate::scalar::{int, rational_to_f64, ComplexRational, RossiParam};
use crate::tridiag::symmetrize;

pub const DEFAULT_EXACT_LIMIT: u32 = 5;
pub const EXACT_LIMIT_ENV: &str = "KOHN_SPECTRA_EXACT_LIMIT";

/// Largest `k` handled in exact arithmetic; `KOHN_SPECTRA_EXACT_LIMIT` overrides the default.
pub fn exact_limit() -> u32 {
    std::env::var(EXACT_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_EXACT_LIMIT)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixMode {
    Exact,
    Numeric,
}

/// Row-major `dim × dim` storage.
#[derive(Clone, Debug, PartialEq)]
pub enum Entries {
    Exact(Vec<ComplexRational>),
    Numeric(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub degree: u32,
    pub dim: usize,
    pub entries: Entries,
    pub basis_labels: Vec<Polynomial>,
    /// `⟨f_i, f_i⟩` of each basis element, used to pass to the orthonormal frame.
    pub norms_sq: Vec<BigRational>,
    pub h_factored: bool,
}

impl OperatorMatrix {
    pub fn get_f64(&self, row: usize, col: usize) -> f64 {
        let idx = row * self.dim + col;
        match &self.entries {
            Entries::Exact(e) => rational_to_f64(&e[idx].re),
            Entries::Numeric(e) => e[idx],
        }
    }

    pub fn get_exact(&self, row: usize, col: usize) -> Option<&ComplexRational> {
        match &self.entries {
            Entries::Exact(e) => e.get(row * self.dim + col),
            Entries::Numeric(_) => None,
        }
    }

    pub fn is_nonzero(&self, row: usize, col: usize) -> bool {
        match &self.entries {
            Entries::Exact(e) => !e[row * self.dim + col].is_zero(),
            Entries::Numeric(e) => e[row * self.dim + col] != 0.0,
        }
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get_f64(i, j))
    }

    /// `N^{1/2} M N^{−1/2}` with `N = diag⟨f_i, f_i⟩`: the matrix in the
    /// orthonormalized basis, symmetric because `□_b^t` is self-adjoint.
    pub fn orthonormal_form(&self) -> DMatrix<f64> {
        let norms: Vec<f64> = self
            .norms_sq
            .iter()
            .map(|n| rational_to_f64(n).sqrt())
            .collect();
        DMatrix::from_fn(self.dim, self.dim, |i, j| {
            self.get_f64(i, j) * norms[i] / norms[j]
        })
    }

    /// Sorted eigenvalues (still without `h` when `h_factored` is set).
    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.dim == 0 {
            return Vec::new();
        }
        let a = self.orthonormal_form();
        let sym = (&a + a.transpose()) * 0.5;
        let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || !self.is_nonzero(i, j)))
    }
}

/// `g = Σ c_i f_i` for an orthogonal family `{f_i}`; fails if `g` has a
/// component outside their span.
pub fn expand_in_orthogonal_basis(
    g: &Polynomial,
    basis: &[Polynomial],
    norms_sq: &[BigRational],
) -> Result<Vec<ComplexRational>> {
    let mut coeffs = vec![ComplexRational::zero(); basis.len()];
    if g.is_zero() {
        return Ok(coeffs);
    }
    let parts = g.bidegree_parts();
    let mut residual = g.clone();
    for (i, f) in basis.iter().enumerate() {
        let Ok(bd) = f.bidegree() else { continue };
        let Some(part) = parts.get(&bd) else { continue };
        let ip = sphere_inner_product(part, f);
        if ip.is_zero() {
            continue;
        }
        let c = ip.scale(&(BigRational::one() / &norms_sq[i]));
        residual = &residual - &f.scale(&c);
        coeffs[i] = c;
    }
    if residual.is_zero() {
        Ok(coeffs)
    } else {
        Err(Error::NotInSpan)
    }
}

/// The four `t`-independent pieces of `□_b^t / h` on `H_m`:
/// matrices of `−L Lbar`, `−Lbar L`, `−L²`, `−Lbar²`, so that
/// `M(t) = C0 + |t|² C1 + t C2 + t̄ C3`.
#[derive(Clone, Debug)]
pub struct OperatorComponents {
    pub degree: u32,
    pub basis: Vec<Polynomial>,
    pub norms_sq: Vec<BigRational>,
    pub parts: [Vec<ComplexRational>; 4],
}

impl OperatorComponents {
    pub fn for_degree(m: u32) -> Result<Self> {
        let basis = basis_hm(m).elements;
        let norms_sq: Vec<BigRational> = basis.iter().map(sphere_norm_sq).collect();
        let n = basis.len();
        let mut parts: [Vec<ComplexRational>; 4] =
            std::array::from_fn(|_| vec![ComplexRational::zero(); n * n]);
        for (j, f) in basis.iter().enumerate() {
            for (c, image) in boxbt_components(f).iter().enumerate() {
                let col = expand_in_orthogonal_basis(image, &basis, &norms_sq)?;
                for (i, v) in col.into_iter().enumerate() {
                    parts[c][i * n + j] = v;
                }
            }
        }
        Ok(Self {
            degree: m,
            basis,
            norms_sq,
            parts,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exact `M(t)` for real `t = |t|`.
    pub fn combine(&self, t: &RossiParam) -> Vec<ComplexRational> {
        let tau = ComplexRational::real(t.t_abs().clone());
        let s = ComplexRational::real(t.t_sq());
        let [c0, c1, c2, c3] = &self.parts;
        (0..c0.len())
            .map(|idx| {
                let mut v = c0[idx].clone();
                if !c1[idx].is_zero() {
                    v += &(&c1[idx] * &s);
                }
                if !c2[idx].is_zero() {
                    v += &(&c2[idx] * &tau);
                }
                if !c3[idx].is_zero() {
                    v += &(&c3[idx] * &tau);
                }
                v
            })
            .collect()
    }

    /// `M(t)` for complex `t`, in floating point, already moved to the
    /// orthonormal frame (Hermitian).
    pub fn hermitian_complex(&self, t: Complex<f64>) -> DMatrix<Complex<f64>> {
        let n = self.dim();
        let norms: Vec<f64> = self
            .norms_sq
            .iter()
            .map(|x| rational_to_f64(x).sqrt())
            .collect();
        let as_c = |c: &ComplexRational| {
            let (re, im) = c.to_f64_pair();
            Complex::new(re, im)
        };
        let weights = [Complex::new(t.norm_sqr(), 0.0), t, t.conj()];
        DMatrix::from_fn(n, n, |i, j| {
            let idx = i * n + j;
            let mut v = as_c(&self.parts[0][idx]);
            for (w, part) in weights.iter().zip(&self.parts[1..]) {
                v += w * as_c(&part[idx]);
            }
            v * (norms[i] / norms[j])
        })
    }

    pub fn assemble(&self, t: &RossiParam, mode: MatrixMode) -> OperatorMatrix {
        let exact = self.combine(t);
        let entries = match mode {
            MatrixMode::Exact => Entries::Exact(exact),
            MatrixMode::Numeric => {
                Entries::Numeric(exact.iter().map(|c| rational_to_f64(&c.re)).collect())
            }
        };
        OperatorMatrix {
            degree: self.degree,
            dim: self.dim(),
            entries,
            basis_labels: self.basis.clone(),
            norms_sq: self.norms_sq.clone(),
            h_factored: true,
        }
    }
}

/// Matrix of `□_b^t / h` on `H_m(S³)` in the derivative basis.
pub fn assemble_full(m: u32, t: &RossiParam, mode: MatrixMode) -> Result<OperatorMatrix> {
    Ok(OperatorComponents::for_degree(m)?.assemble(t, mode))
}

/// `pq + q` for each basis element of `H_m`, the diagonal of `assemble_full(m, 0)`.
pub fn boxb_diagonal(m: u32) -> Vec<u32> {
    basis_hm_bidegrees(m)
        .into_iter()
        .map(|(p, q)| p * q + q)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    V,
    W,
}

impl BlockKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BlockKind::V => "V",
            BlockKind::W => "W",
        }
    }
}

/// `k × k` tridiagonal block of `□_b^t / h` on a `V` or `W` chain.
/// `upper[j]` sits at `(j, j+1)` and `lower[j]` at `(j+1, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VWBlock {
    pub k: u32,
    pub kind: BlockKind,
    pub diag: Vec<BigRational>,
    pub upper: Vec<BigRational>,
    pub lower: Vec<BigRational>,
}

impl VWBlock {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> BigRational {
        if row == col {
            self.diag[row].clone()
        } else if row + 1 == col {
            self.upper[row].clone()
        } else if col + 1 == row {
            self.lower[col].clone()
        } else {
            BigRational::zero()
        }
    }

    /// `u_j l_j`
    pub fn couplings(&self) -> Vec<BigRational> {
        self.upper
            .iter()
            .zip(&self.lower)
            .map(|(u, l)| u * l)
            .collect()
    }

    pub fn diag_f64(&self) -> Vec<f64> {
        self.diag.iter().map(rational_to_f64).collect()
    }

    pub fn upper_f64(&self) -> Vec<f64> {
        self.upper.iter().map(rational_to_f64).collect()
    }

    pub fn lower_f64(&self) -> Vec<f64> {
        self.lower.iter().map(rational_to_f64).collect()
    }

    /// Sorted eigenvalues without `h`.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let st = symmetrize(&self.diag_f64(), &self.upper_f64(), &self.lower_f64())?;
        st.eigenvalues(1e-13)
    }
}

/// Integer parts of the block coefficients, with `j` 1-based as in
/// `d_j = diag_const + |t|² diag_t2` and `u_j = −|t| · upper_coeff`.
pub mod coefficients {
    use super::BlockKind;

    pub fn diag_const(kind: BlockKind, k: i64, j: i64) -> i64 {
        match kind {
            BlockKind::V => (2 * j - 1) * (2 * k + 1 - 2 * j),
            BlockKind::W => (2 * j) * (2 * k - 2 * j),
        }
    }

    pub fn diag_t2(kind: BlockKind, k: i64, j: i64) -> i64 {
        match kind {
            BlockKind::V => (2 * j - 2) * (2 * k + 2 - 2 * j),
            BlockKind::W => (2 * j - 1) * (2 * k + 1 - 2 * j),
        }
    }

    /// Magnitude of the super-diagonal, `u_j = −|t| · upper_coeff(j)`, for `1 ≤ j < k`.
    pub fn upper_coeff(kind: BlockKind, k: i64, j: i64) -> i64 {
        match kind {
            BlockKind::V => (2 * j) * (2 * j - 1) * (2 * k + 1 - 2 * j) * (2 * k - 2 * j),
            BlockKind::W => (2 * j + 1) * (2 * j) * (2 * k - 2 * j) * (2 * k - 1 - 2 * j),
        }
    }
}

/// Closed-form tridiagonal block, `h` factored out.
///
/// ```text
/// V: d_j = (2j−1)(2k+1−2j) + |t|²(2j−2)(2k+2−2j),  u_j = −t (2j)(2j−1)(2k+1−2j)(2k−2j)
/// W: d_j = (2j)(2k−2j) + |t|²(2j−1)(2k+1−2j),      u_j = −t (2j+1)(2j)(2k−2j)(2k−1−2j)
/// l_j = −t̄
/// ```
pub fn closed_form_block(k: u32, kind: BlockKind, t: &RossiParam) -> Result<VWBlock> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let tau = t.t_abs().clone();
    let s = t.t_sq();
    let k = k as i64;
    let diag = (1..=k)
        .map(|j| {
            int(coefficients::diag_const(kind, k, j)) + &s * int(coefficients::diag_t2(kind, k, j))
        })
        .collect();
    let upper = (1..k)
        .map(|j| -(&tau * int(coefficients::upper_coeff(kind, k, j))))
        .collect();
    let lower = (1..k).map(|_| -tau.clone()).collect();
    Ok(VWBlock {
        k: k as u32,
        kind,
        diag,
        upper,
        lower,
    })
}

/// `(V_i, W_i)` chains: `v_j = Lbar^{2j−2} f_i`, `w_j = Lbar^{2j−1} f_i` for
/// `j = 1..=k`, with `f_i` the `i`-th element of the derivative basis of `H_{0,2k−1}`.
pub fn vw_chain(k: u32, i: usize) -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let seeds = basis_hpq_derivative(0, 2 * k - 1).elements;
    let seed = seeds.get(i).ok_or(Error::IndexOutOfRange {
        index: i,
        limit: seeds.len(),
    })?;
    let mut v = Vec::with_capacity(k as usize);
    let mut w = Vec::with_capacity(k as usize);
    let mut cur = seed.clone();
    for sigma in 0..2 * k {
        if sigma % 2 == 0 {
            v.push(cur.clone());
        } else {
            w.push(cur.clone());
        }
        cur = apply_lbar(&cur);
    }
    Ok((v, w))
}

/// Exact matrix of `□_b^t / h` on one chain, by applying the operator and
/// expanding in the chain. Fails if the chain is not invariant.
pub fn chain_matrix(chain: &[Polynomial], t: &RossiParam) -> Result<Vec<Vec<BigRational>>> {
    let norms: Vec<BigRational> = chain.iter().map(sphere_norm_sq).collect();
    let n = chain.len();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (j, f) in chain.iter().enumerate() {
        let col = expand_in_orthogonal_basis(&apply_boxbt_unscaled(f, t), chain, &norms)?;
        for (i, c) in col.into_iter().enumerate() {
            if !c.is_real() {
                return Err(Error::InvalidArgument("non-real chain coefficient".into()));
            }
            m[i][j] = c.re;
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockMismatch {
    pub chain: usize,
    pub kind: BlockKind,
    pub row: usize,
    pub col: usize,
    pub oracle: BigRational,
    pub closed_form: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub k: u32,
    pub t: RossiParam,
    pub chains: usize,
    /// Every `□_b^t` image stayed inside its own chain.
    pub invariant: bool,
    /// The oracle matrices agree exactly across all `i`.
    pub independent_of_chain: bool,
    pub mismatches: Vec<BlockMismatch>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.invariant && self.independent_of_chain && self.mismatches.is_empty()
    }
}

/// Checks every chain of `H_{2k−1}` against the given `V` and `W` blocks.
pub fn verify_blocks(
    k: u32,
    t: &RossiParam,
    v_block: &VWBlock,
    w_block: &VWBlock,
) -> Result<InvarianceReport> {
    let limit = exact_limit();
    if k > limit {
        return Err(Error::ExactLimitExceeded { k, limit });
    }
    let chains = (2 * k) as usize;
    let mut invariant = true;
    let mut mismatches = Vec::new();
    let mut seen: BTreeMap<BlockKind, Vec<Vec<BigRational>>> = BTreeMap::new();
    let mut independent = true;
    for i in 0..chains {
        let (v, w) = vw_chain(k, i)?;
        for (kind, chain, block) in [(BlockKind::V, v, v_block), (BlockKind::W, w, w_block)] {
            let oracle = match chain_matrix(&chain, t) {
                Ok(m) => m,
                Err(Error::NotInSpan) => {
                    invariant = false;
                    continue;
                }
                Err(e) => return Err(e),
            };
            match seen.get(&kind) {
                Some(first) if *first != oracle => independent = false,
                Some(_) => {}
                None => {
                    seen.insert(kind, oracle.clone());
                }
            }
            for (row, oracle_row) in oracle.iter().enumerate() {
                for (col, value) in oracle_row.iter().enumerate() {
                    let expected = if row < block.dim() && col < block.dim() {
                        block.entry(row, col)
                    } else {
                        BigRational::zero()
                    };
                    if *value != expected {
                        mismatches.push(BlockMismatch {
                            chain: i,
                            kind,
                            row,
                            col,
                            oracle: value.clone(),
                            closed_form: expected,
                        });
                    }
                }
            }
        }
    }
    Ok(InvarianceReport {
        k,
        t: t.clone(),
        chains,
        invariant,
        independent_of_chain: independent,
        mismatches,
    })
}

/// `□_b^t` maps each chain to itself, with coefficients equal to [`closed_form_block`].
pub fn verify_invariance(k: u32, t: &RossiParam) -> Result<InvarianceReport> {
    let v = closed_form_block(k, BlockKind::V, t)?;
    let w = closed_form_block(k, BlockKind::W, t)?;
    verify_blocks(k, t, &v, &w)
}

/// Groups sorted values that agree to `rel_tol` and counts multiplicities.
pub fn cluster_eigenvalues(sorted: &[f64], rel_tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &x in sorted {
        match out.last_mut() {
            Some((rep, count)) if (x - *rep).abs() <= rel_tol * rep.abs().max(x.abs()).max(1.0) => {
                *count += 1
            }
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Spectrum of `□_b^t` on `H_{2k−1}` (including `h`) from the two blocks, each
/// eigenvalue carried with multiplicity `2k` per block it comes from.
pub fn spectrum_multiplicity(k: u32, t: &RossiParam) -> Result<Vec<(f64, usize)>> {
    let h = t.h_f64();
    let mut all = Vec::new();
    for kind in [BlockKind::V, BlockKind::W] {
        for ev in closed_form_block(k, kind, t)?.eigenvalues()? {
            all.extend(std::iter::repeat_n(ev * h, 2 * k as usize));
        }
    }
    all.sort_by(f64::total_cmp);
    Ok(cluster_eigenvalues(&all, 1e-9))
}
