//! Sparse polynomials in `z1, z2, zb1, zb2` with exact complex-rational
//! coefficients, and the first- and second-order operators built from the
//! tangential vector fields of the 3-sphere.
//!
//! Sign conventions:
//!
//! ```text
//! L    = zb1 ∂/∂z2 − zb2 ∂/∂z1
//! Lbar = z1 ∂/∂zb2 − z2 ∂/∂zb1
//! □_b  = −L Lbar
//! □_b^t = −h (L Lbar + |t|² Lbar L + t L² + t̄ Lbar²)
//! ```
//!
//! With these, `□_b f = (pq + q) f` for harmonic `f` of bidegree `(p, q)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{ComplexRational, RossiParam};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z1,
    Z2,
    Zbar1,
    Zbar2,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z1, Var::Z2, Var::Zbar1, Var::Zbar2];

    pub fn name(self) -> &'static str {
        match self {
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::Zbar1 => "zb1",
            Var::Zbar2 => "zb2",
        }
    }
}

/// `z1^a1 z2^a2 zb1^b1 zb2^b2`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub a1: u32,
    pub a2: u32,
    pub b1: u32,
    pub b2: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        a1: 0,
        a2: 0,
        b1: 0,
        b2: 0,
    };

    pub const fn new(a1: u32, a2: u32, b1: u32, b2: u32) -> Self {
        Self { a1, a2, b1, b2 }
    }

    pub fn var(v: Var) -> Self {
        let mut m = Self::ONE;
        *m.exp_mut(v) = 1;
        m
    }

    pub fn exp(&self, v: Var) -> u32 {
        match v {
            Var::Z1 => self.a1,
            Var::Z2 => self.a2,
            Var::Zbar1 => self.b1,
            Var::Zbar2 => self.b2,
        }
    }

    fn exp_mut(&mut self, v: Var) -> &mut u32 {
        match v {
            Var::Z1 => &mut self.a1,
            Var::Z2 => &mut self.a2,
            Var::Zbar1 => &mut self.b1,
            Var::Zbar2 => &mut self.b2,
        }
    }

    /// Holomorphic degree.
    pub fn p(&self) -> u32 {
        self.a1 + self.a2
    }

    /// Antiholomorphic degree.
    pub fn q(&self) -> u32 {
        self.b1 + self.b2
    }

    pub fn degree(&self) -> u32 {
        self.p() + self.q()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.a1 + other.a1,
            self.a2 + other.a2,
            self.b1 + other.b1,
            self.b2 + other.b2,
        )
    }

    /// Complex conjugate: swaps holomorphic and antiholomorphic exponents.
    pub fn conj(&self) -> Monomial {
        Monomial::new(self.b1, self.b2, self.a1, self.a2)
    }

    /// Torus weight `(a1 − b1, a2 − b2)`; monomials of different weight are
    /// orthogonal on the sphere.
    pub fn weight(&self) -> (i64, i64) {
        (
            self.a1 as i64 - self.b1 as i64,
            self.a2 as i64 - self.b2 as i64,
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                f.write_str(v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial in canonical form: zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, ComplexRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ComplexRational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn one() -> Self {
        Self::constant(ComplexRational::one())
    }

    pub fn term(c: ComplexRational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(ComplexRational::one(), m)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    /// |z|² = z1 zb1 + z2 zb2
    pub fn norm_sq() -> Self {
        Self::monomial(Monomial::new(1, 0, 1, 0)) + Self::monomial(Monomial::new(0, 1, 0, 1))
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, ComplexRational)>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: ComplexRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ComplexRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&ComplexRational::real(r.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.conj(), a.conj()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `(p, q)` shared by every term; errors on the zero polynomial or mixed bidegrees.
    pub fn bidegree(&self) -> Result<(u32, u32)> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        let bd = (first.p(), first.q());
        if it.all(|m| (m.p(), m.q()) == bd) {
            Ok(bd)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn total_degree(&self) -> Result<u32> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        let d = first.degree();
        if it.all(|m| m.degree() == d) {
            Ok(d)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Splits into pieces of pure bidegree, keyed by `(p, q)`.
    pub fn bidegree_parts(&self) -> BTreeMap<(u32, u32), Polynomial> {
        let mut out: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry((m.p(), m.q()))
                .or_default()
                .add_term(*m, c.clone());
        }
        out
    }

    pub fn derive(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            *dm.exp_mut(v) -= 1;
            out.add_term(dm, c.scale(&BigRational::from_integer(BigInt::from(e))));
        }
        out
    }

    /// Evaluates at a point of ℂ², with `zb` taken as the conjugates of `z`.
    pub fn eval_f64(&self, z1: (f64, f64), z2: (f64, f64)) -> (f64, f64) {
        let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        let cpow = |base: (f64, f64), e: u32| (0..e).fold((1.0, 0.0), |acc, _| cmul(acc, base));
        let zb1 = (z1.0, -z1.1);
        let zb2 = (z2.0, -z2.1);
        let mut acc = (0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_f64_pair();
            v = cmul(v, cpow(z1, m.a1));
            v = cmul(v, cpow(z2, m.a2));
            v = cmul(v, cpow(zb1, m.b1));
            v = cmul(v, cpow(zb2, m.b2));
            acc.0 += v.0;
            acc.1 += v.1;
        }
        acc
    }
}

impl std::ops::Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl std::ops::Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl std::ops::Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl std::ops::Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl std::ops::Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl std::ops::Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

pub fn derive(p: &Polynomial, v: Var) -> Polynomial {
    p.derive(v)
}

/// `L = zb1 ∂/∂z2 − zb2 ∂/∂z1`; maps bidegree `(p, q)` to `(p − 1, q + 1)`.
pub fn apply_l(p: &Polynomial) -> Polynomial {
    p.derive(Var::Z2).mul_monomial(&Monomial::var(Var::Zbar1))
        - p.derive(Var::Z1).mul_monomial(&Monomial::var(Var::Zbar2))
}

/// `Lbar = z1 ∂/∂zb2 − z2 ∂/∂zb1`; maps bidegree `(p, q)` to `(p + 1, q − 1)`.
pub fn apply_lbar(p: &Polynomial) -> Polynomial {
    p.derive(Var::Zbar2).mul_monomial(&Monomial::var(Var::Z1))
        - p.derive(Var::Zbar1).mul_monomial(&Monomial::var(Var::Z2))
}

pub fn apply_lbar_pow(p: &Polynomial, n: u32) -> Polynomial {
    (0..n).fold(p.clone(), |acc, _| apply_lbar(&acc))
}

/// `Δ = 4 (∂²/∂z1∂zb1 + ∂²/∂z2∂zb2)`
pub fn laplacian(p: &Polynomial) -> Polynomial {
    let four = ComplexRational::from_int(4);
    (p.derive(Var::Zbar1).derive(Var::Z1) + p.derive(Var::Zbar2).derive(Var::Z2)).scale(&four)
}

pub fn is_harmonic(p: &Polynomial) -> bool {
    laplacian(p).is_zero()
}

/// `□_b = −L Lbar`
pub fn apply_boxb(p: &Polynomial) -> Polynomial {
    -apply_l(&apply_lbar(p))
}

/// The four pieces of `□_b^t` before the parameters are attached:
/// `(−L Lbar p, −Lbar L p, −L² p, −Lbar² p)`.
pub fn boxbt_components(p: &Polynomial) -> [Polynomial; 4] {
    let lp = apply_l(p);
    let lbp = apply_lbar(p);
    [
        -apply_l(&lbp),
        -apply_lbar(&lp),
        -apply_l(&lp),
        -apply_lbar(&lbp),
    ]
}

/// `□_b^t p / h` for complex `t`.
pub fn apply_boxbt_complex_unscaled(p: &Polynomial, t: &ComplexRational) -> Polynomial {
    let [c0, c1, c2, c3] = boxbt_components(p);
    let t_sq = ComplexRational::real(t.norm_sqr());
    c0 + c1.scale(&t_sq) + c2.scale(t) + c3.scale(&t.conj())
}

/// `□_b^t p` for complex `t` with `|t| < 1`, including the factor `h`.
pub fn apply_boxbt_complex(p: &Polynomial, t: &ComplexRational) -> Result<Polynomial> {
    let s = t.norm_sqr();
    if s >= BigRational::one() {
        return Err(Error::ParamOutOfRange(t.to_string()));
    }
    let one = BigRational::one();
    let h = (&one + &s) / ((&one - &s) * (&one - &s));
    Ok(apply_boxbt_complex_unscaled(p, t).scale_rational(&h))
}

/// `□_b^t p / h` with `t` taken real and equal to `|t|`.
pub fn apply_boxbt_unscaled(p: &Polynomial, t: &RossiParam) -> Polynomial {
    apply_boxbt_complex_unscaled(p, &ComplexRational::real(t.t_abs().clone()))
}

/// `□_b^t p = −h (L Lbar + |t|² Lbar L + |t| L² + |t| Lbar²) p`.
pub fn apply_boxbt(p: &Polynomial, t: &RossiParam) -> Polynomial {
    apply_boxbt_unscaled(p, t).scale_rational(&t.h())
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `∫_{S³} z^γ zb^γ dσ` for the unit-mass surface measure: `γ! / (|γ| + 1)!`.
pub fn monomial_sphere_integral(g1: u32, g2: u32) -> BigRational {
    BigRational::new(factorial(g1) * factorial(g2), factorial(g1 + g2 + 1))
}

/// `⟨f, g⟩ = ∫_{S³} f ḡ dσ` with the unit-mass measure, in closed form.
pub fn sphere_inner_product(f: &Polynomial, g: &Polynomial) -> ComplexRational {
    let mut acc = ComplexRational::zero();
    for (m, a) in f.terms() {
        for (n, b) in g.terms() {
            // f-term × conj(g-term) = z^{m.a + n.b} zb^{m.b + n.a}
            let hol = (m.a1 + n.b1, m.a2 + n.b2);
            let anti = (m.b1 + n.a1, m.b2 + n.a2);
            if hol != anti {
                continue;
            }
            let w = monomial_sphere_integral(hol.0, hol.1);
            acc += &(a * &b.conj()).scale(&w);
        }
    }
    acc
}

/// Squared norm `⟨f, f⟩`, always real and non-negative.
pub fn sphere_norm_sq(f: &Polynomial) -> BigRational {
    sphere_inner_product(f, f).re
}

impl fmt::Display for Polynomial {
    /// `coeff * z1^a z2^b zb1^c zb2^d` terms joined by ` + `, highest monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} * {m}")?;
            }
        }
        Ok(())
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_monomial(s: &str) -> Result<Monomial> {
    let err = || Error::Parse {
        what: "monomial",
        input: s.to_string(),
    };
    let mut m = Monomial::ONE;
    for tok in s.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (name, e) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<u32>().map_err(|_| err())?),
            None => (tok, 1),
        };
        let v = Var::ALL
            .into_iter()
            .find(|v| v.name() == name)
            .ok_or_else(err)?;
        *m.exp_mut(v) += e;
    }
    Ok(m)
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse {
                what: "polynomial",
                input: s.to_string(),
            });
        }
        let mut p = Polynomial::zero();
        for term in split_top_level(trimmed, '+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse {
                    what: "polynomial term",
                    input: s.to_string(),
                });
            }
            let pieces = split_top_level(term, '*');
            let (c, m) = match pieces.as_slice() {
                [c, m] => (c.parse::<ComplexRational>()?, parse_monomial(m)?),
                [single] if single.trim_start().starts_with('z') => {
                    (ComplexRational::one(), parse_monomial(single)?)
                }
                [single] => (single.parse::<ComplexRational>()?, Monomial::ONE),
                _ => {
                    return Err(Error::Parse {
                        what: "polynomial term",
                        input: term.to_string(),
                    })
                }
            };
            p.add_term(m, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn poly(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn c(n: i64) -> ComplexRational {
        ComplexRational::from_int(n)
    }

    #[test]
    fn derive_examples() {
        assert_eq!(derive(&poly("z1^2 zb2"), Var::Z1), poly("2 * z1 zb2"));
        assert!(derive(&poly("zb2^3"), Var::Z1).is_zero());
        assert_eq!(derive(&poly("z1 zb1"), Var::Zbar1), poly("z1"));
        assert!(derive(&poly("5"), Var::Z2).is_zero());
    }

    #[test]
    fn lewy_operator_examples() {
        assert_eq!(apply_lbar(&poly("zb2^3")), poly("3 * z1 zb2^2"));
        assert_eq!(apply_l(&poly("3 * z1 zb2^2")), poly("-3 * zb2^3"));
        assert!(apply_l(&poly("zb1^5")).is_zero());
        assert!(apply_lbar(&poly("z1^4 z2")).is_zero());
    }

    #[test]
    fn laplacian_examples() {
        assert!(laplacian(&poly("z1 zb2^2")).is_zero());
        assert_eq!(laplacian(&poly("z1 zb1")), poly("4"));
        let p = &Polynomial::norm_sq() * &Polynomial::var(Var::Z1);
        assert_eq!(p, poly("z1^2 zb1 + z1 z2 zb2"));
        // Δ(|x|² f) = 2n f + 4 x·∇f in ℝ⁴ gives 8 z1 + 4 z1
        assert_eq!(laplacian(&p), poly("12 * z1"));
    }

    #[test]
    fn boxb_examples() {
        let f = poly("z1 zb2^2");
        assert_eq!(apply_boxb(&f), f.scale(&c(4)));
        assert!(apply_boxb(&poly("z1^3")).is_zero());
        assert_eq!(apply_boxb(&poly("zb2^3")), poly("3 * zb2^3"));
    }

    #[test]
    fn boxbt_examples() {
        let t = RossiParam::from_ratio(1, 3).unwrap();
        let h = ComplexRational::real(t.h());
        let tt = ComplexRational::real(t.t_abs().clone());
        let f = poly("zb2^3");
        // −t̄ Lbar² zb2³ = −6 t z1² zb2
        let expected = (poly("3 * zb2^3") - poly("z1^2 zb2").scale(&c(6)).scale(&tt)).scale(&h);
        assert_eq!(apply_boxbt(&f, &t), expected);

        // (3,0): Lbar kills it, −|t|² Lbar L gives 3|t|², −t L² feeds (1, 2)
        let g = poly("z1^3");
        let l2 = apply_l(&apply_l(&g));
        let expected =
            (g.scale(&ComplexRational::real(t.t_sq() * int(3))) - l2.scale(&tt)).scale(&h);
        assert_eq!(apply_boxbt(&g, &t), expected);
        assert_eq!(l2, poly("6 * z1 zb2^2"));
    }

    #[test]
    fn boxbt_at_zero_is_boxb() {
        let t = RossiParam::zero();
        for s in [
            "zb2^3",
            "z1 zb2^2 + 3 * z2^2",
            "(1, 2) * z1 zb1 + -1/3 * z2 zb2^4",
        ] {
            let f = poly(s);
            assert_eq!(apply_boxbt(&f, &t), apply_boxb(&f));
        }
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(
            sphere_inner_product(&Polynomial::one(), &Polynomial::one()),
            c(1)
        );
        assert_eq!(
            sphere_inner_product(&poly("z1"), &poly("z1")),
            ComplexRational::real(rat(1, 2))
        );
        assert!(sphere_inner_product(&poly("z1 zb2"), &poly("z2 zb1")).is_zero());
        // |z|² = 1 on the sphere
        assert_eq!(
            sphere_inner_product(&Polynomial::norm_sq(), &Polynomial::one()),
            c(1)
        );
    }

    #[test]
    fn inner_product_is_sesquilinear() {
        let f = poly("z1 zb2 + 2 * z2 zb1");
        let g = poly("(0, 1) * z2 zb1");
        let i = ComplexRational::i();
        assert_eq!(
            sphere_inner_product(&f.scale(&i), &g),
            &i * &sphere_inner_product(&f, &g)
        );
        assert_eq!(
            sphere_inner_product(&f, &g.scale(&i)),
            &i.conj() * &sphere_inner_product(&f, &g)
        );
    }

    #[test]
    fn bidegree_requires_nonzero_homogeneous() {
        assert_eq!(Polynomial::zero().bidegree(), Err(Error::ZeroPolynomial));
        assert_eq!(poly("z1 + zb1").bidegree(), Err(Error::NotHomogeneous));
        assert_eq!(poly("z1 + zb1").total_degree(), Ok(1));
        assert_eq!(poly("z1 zb2^2").bidegree(), Ok((1, 2)));
    }

    #[test]
    fn text_format() {
        let p = poly("4 * z1 zb1 zb2 + -2 * z2 zb2^2");
        assert_eq!(p.to_string(), "4 * z1 zb1 zb2 + -2 * z2 zb2^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(poly("0"), Polynomial::zero());
        assert_eq!(poly("z1 z1"), poly("z1^2"));
        let q = poly("(1/2, -3) * z1^2 zb2 + 7/5 + zb1");
        assert_eq!(q.to_string().parse::<Polynomial>().unwrap(), q);
        assert!("z3".parse::<Polynomial>().is_err());
        assert!("1 + ".parse::<Polynomial>().is_err());
        assert!("2 * z1 * z2".parse::<Polynomial>().is_err());
    }
}
