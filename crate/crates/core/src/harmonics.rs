//! Bases of the spherical-harmonic spaces `H_{p,q}(S³)` and `H_m(S³)`, and the
//! harmonic decomposition `f = Σ_j |z|^{2j} f_{m−2j}` of homogeneous polynomials.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, solve, ExactMatrix};
use crate::poly::{laplacian, Monomial, Polynomial, Var};
use crate::scalar::ComplexRational;

/// `H_{p,q}`: harmonic polynomials of bidegree `(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BidegreeSpace {
    pub p: u32,
    pub q: u32,
}

impl BidegreeSpace {
    pub fn new(p: u32, q: u32) -> Self {
        Self { p, q }
    }

    pub fn dim(&self) -> usize {
        (self.p + self.q + 1) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarmonicSpace {
    Bidegree(BidegreeSpace),
    Degree(u32),
}

impl HarmonicSpace {
    pub fn dim(&self) -> usize {
        match self {
            HarmonicSpace::Bidegree(b) => b.dim(),
            HarmonicSpace::Degree(m) => ((m + 1) * (m + 1)) as usize,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicBasis {
    pub space: HarmonicSpace,
    pub elements: Vec<Polynomial>,
}

impl HarmonicBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Polynomial> {
        self.elements.iter()
    }
}

/// Monomials `z1^a1 z2^(p−a1) zb1^b1 zb2^(q−b1)` spanning `P_{p,q}`.
pub fn bidegree_monomials(p: u32, q: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((p + 1) * (q + 1)) as usize);
    for a1 in 0..=p {
        for b1 in 0..=q {
            out.push(Monomial::new(a1, p - a1, b1, q - b1));
        }
    }
    out
}

fn coords(f: &Polynomial, monos: &[Monomial]) -> Vec<ComplexRational> {
    monos.iter().map(|m| f.coeff(m)).collect()
}

fn from_coords(v: &[ComplexRational], monos: &[Monomial]) -> Polynomial {
    Polynomial::from_terms(monos.iter().copied().zip(v.iter().cloned()))
}

/// Kernel of `Δ : P_{p,q} → P_{p−1,q−1}`, found by exact row reduction.
pub fn basis_hpq_solve(p: u32, q: u32) -> HarmonicBasis {
    let space = HarmonicSpace::Bidegree(BidegreeSpace::new(p, q));
    let domain = bidegree_monomials(p, q);
    if p == 0 || q == 0 {
        return HarmonicBasis {
            space,
            elements: domain.into_iter().map(Polynomial::monomial).collect(),
        };
    }
    let target = bidegree_monomials(p - 1, q - 1);
    let images: Vec<Vec<ComplexRational>> = domain
        .iter()
        .map(|m| coords(&laplacian(&Polynomial::monomial(*m)), &target))
        .collect();
    let matrix: ExactMatrix = (0..target.len())
        .map(|r| images.iter().map(|col| col[r].clone()).collect())
        .collect();
    let elements = nullspace(&matrix, domain.len())
        .iter()
        .map(|v| from_coords(v, &domain))
        .collect();
    HarmonicBasis { space, elements }
}

/// `numer / |z|^{2 power}`, the exact form of derivatives of `|z|^{−2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentTerm {
    pub numer: Polynomial,
    pub power: u32,
}

impl LaurentTerm {
    /// `|z|^{−2}`
    pub fn inverse_norm_sq() -> Self {
        Self {
            numer: Polynomial::one(),
            power: 1,
        }
    }

    /// `∂_v (P R^{−N}) = (R ∂_v P − N P ∂_v R) R^{−(N+1)}` with `R = |z|²`.
    pub fn derive(&self, v: Var) -> Self {
        let r = Polynomial::norm_sq();
        let dr = r.derive(v);
        let n = ComplexRational::from_int(self.power as i64);
        let numer = &(&r * &self.numer.derive(v)) - &(&self.numer * &dr).scale(&n);
        Self {
            numer,
            power: self.power + 1,
        }
    }

    /// Restriction to the sphere, where `|z|² = 1`.
    ///
    /// For iterated derivatives of `|z|^{−2}` the numerator is homogeneous and
    /// is itself the Kelvin transform of the derivative, hence harmonic.
    pub fn restrict_to_sphere(&self) -> Polynomial {
        self.numer.clone()
    }
}

/// Multi-indices `(α, β)` with `|α| = p`, `|β| = q` and `α1 = 0` or `β1 = 0`,
/// in canonical order: first `α = (0, p)` with `β1` ascending, then `β = (0, q)`
/// with `α1 = 1..=p`.
pub fn derivative_multi_indices(p: u32, q: u32) -> Vec<([u32; 2], [u32; 2])> {
    let mut out = Vec::with_capacity((p + q + 1) as usize);
    for b1 in 0..=q {
        out.push(([0, p], [b1, q - b1]));
    }
    for a1 in 1..=p {
        out.push(([a1, p - a1], [0, q]));
    }
    out
}

/// `Dbar^α D^β |z|^{−2}` restricted to the sphere.
pub fn kelvin_derivative(alpha: [u32; 2], beta: [u32; 2]) -> Polynomial {
    let steps = [
        (Var::Zbar1, alpha[0]),
        (Var::Zbar2, alpha[1]),
        (Var::Z1, beta[0]),
        (Var::Z2, beta[1]),
    ];
    let mut term = LaurentTerm::inverse_norm_sq();
    for (v, n) in steps {
        for _ in 0..n {
            term = term.derive(v);
        }
    }
    term.restrict_to_sphere()
}

type BasisCache = Mutex<HashMap<(u32, u32), Arc<Vec<Polynomial>>>>;

fn derivative_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Orthogonal basis of `H_{p,q}(S³)` from derivatives of `|z|^{−2}`, keeping
/// the raw derivative scalars (e.g. `−6 zb2³`).
pub fn basis_hpq_derivative(p: u32, q: u32) -> HarmonicBasis {
    let cached = derivative_cache()
        .lock()
        .expect("basis cache poisoned")
        .get(&(p, q))
        .cloned();
    let elements = match cached {
        Some(e) => e,
        None => {
            let built: Arc<Vec<Polynomial>> = Arc::new(
                derivative_multi_indices(p, q)
                    .into_iter()
                    .map(|(a, b)| kelvin_derivative(a, b))
                    .collect(),
            );
            derivative_cache()
                .lock()
                .expect("basis cache poisoned")
                .entry((p, q))
                .or_insert(built)
                .clone()
        }
    };
    HarmonicBasis {
        space: HarmonicSpace::Bidegree(BidegreeSpace::new(p, q)),
        elements: elements.as_ref().clone(),
    }
}

/// Basis of `H_m(S³)`: the bidegree bases for `(0, m), (1, m−1), ..., (m, 0)`
/// concatenated.
pub fn basis_hm(m: u32) -> HarmonicBasis {
    let elements = (0..=m)
        .flat_map(|p| basis_hpq_derivative(p, m - p).elements)
        .collect();
    HarmonicBasis {
        space: HarmonicSpace::Degree(m),
        elements,
    }
}

/// Bidegree of each element of [`basis_hm`], in the same order.
pub fn basis_hm_bidegrees(m: u32) -> Vec<(u32, u32)> {
    (0..=m)
        .flat_map(|p| std::iter::repeat_n((p, m - p), (m + 1) as usize))
        .collect()
}

/// Unique decomposition `f = Σ_j |z|^{2j} f_{m−2j}` with each `f_{m−2j}`
/// harmonic. Returns `(j, f_{m−2j})` for every `j = 0..=m/2`, zero parts included.
pub fn decompose(f: &Polynomial) -> Result<Vec<(u32, Polynomial)>> {
    let m = f.total_degree()?;
    let levels = m / 2;
    let mut parts = vec![Polynomial::zero(); levels as usize + 1];
    for ((p, q), piece) in f.bidegree_parts() {
        let depth = p.min(q);
        let monos = bidegree_monomials(p, q);
        let r = Polynomial::norm_sq();
        let mut columns: Vec<(u32, Polynomial)> = Vec::with_capacity(monos.len());
        for j in 0..=depth {
            let lift = r.pow(j);
            for h in basis_hpq_derivative(p - j, q - j).elements {
                columns.push((j, &lift * &h));
            }
        }
        debug_assert_eq!(columns.len(), monos.len());
        let a: ExactMatrix = monos
            .iter()
            .map(|mono| columns.iter().map(|(_, c)| c.coeff(mono)).collect())
            .collect();
        let x = solve(&a, &coords(&piece, &monos)).map_err(|_| Error::NotInSpan)?;
        let mut col = 0;
        for j in 0..=depth {
            for h in basis_hpq_derivative(p - j, q - j).elements {
                if !x[col].is_zero() {
                    parts[j as usize] = &parts[j as usize] + &h.scale(&x[col]);
                }
                col += 1;
            }
        }
    }
    Ok(parts
        .into_iter()
        .enumerate()
        .map(|(j, h)| (j as u32, h))
        .collect())
}
