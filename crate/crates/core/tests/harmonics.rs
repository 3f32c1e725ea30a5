use kohn_spectra::harmonics::{
    basis_hm, basis_hm_bidegrees, basis_hpq_derivative, basis_hpq_solve, decompose,
};
use kohn_spectra::linalg::{rref, ExactMatrix};
use kohn_spectra::poly::{
    is_harmonic, monomial_sphere_integral, sphere_inner_product, sphere_norm_sq, Monomial,
    Polynomial,
};
use kohn_spectra::scalar::{rat, rational_to_f64, ComplexRational};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

const H3_LISTING: [&str; 16] = [
    "-6 * zb2^3",
    "-6 * zb1 zb2^2",
    "-6 * zb1^2 zb2",
    "-6 * zb1^3",
    "4 * z1 zb1 zb2 + -2 * z2 zb2^2",
    "2 * z1 zb1^2 + -4 * z2 zb1 zb2",
    "-6 * z2 zb1^2",
    "-6 * z1 zb2^2",
    "4 * z1 z2 zb1 + -2 * z2^2 zb2",
    "-6 * z2^2 zb1",
    "2 * z1^2 zb1 + -4 * z1 z2 zb2",
    "-6 * z1^2 zb2",
    "-6 * z2^3",
    "-6 * z1 z2^2",
    "-6 * z1^2 z2",
    "-6 * z1^3",
];

fn rank(rows: Vec<Vec<ComplexRational>>) -> usize {
    let mut m: ExactMatrix = rows;
    rref(&mut m).len()
}

fn coords(f: &Polynomial, p: u32, q: u32) -> Vec<ComplexRational> {
    kohn_spectra::harmonics::bidegree_monomials(p, q)
        .iter()
        .map(|m| f.coeff(m))
        .collect()
}

#[test]
fn h3_basis_matches_published_listing() {
    let expected: Vec<Polynomial> = H3_LISTING.iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(basis_hm(3).elements, expected);
}

#[test]
fn dimensions_up_to_total_degree_12() {
    for m in 0..=12u32 {
        for p in 0..=m {
            let q = m - p;
            let b = basis_hpq_derivative(p, q);
            assert_eq!(b.len(), (p + q + 1) as usize);
            assert!(b
                .iter()
                .all(|f| is_harmonic(f) && f.bidegree() == Ok((p, q))));
            assert_eq!(rank(b.iter().map(|f| coords(f, p, q)).collect()), b.len());
        }
        assert_eq!(basis_hm(m).len(), ((m + 1) * (m + 1)) as usize);
        assert_eq!(basis_hm_bidegrees(m).len(), basis_hm(m).len());
    }
}

#[test]
fn solved_and_derivative_bases_span_the_same_space() {
    for m in 0..=8u32 {
        for p in 0..=m {
            let q = m - p;
            let a: Vec<_> = basis_hpq_solve(p, q)
                .iter()
                .map(|f| coords(f, p, q))
                .collect();
            let b: Vec<_> = basis_hpq_derivative(p, q)
                .iter()
                .map(|f| coords(f, p, q))
                .collect();
            let dim = a.len();
            assert_eq!(dim, b.len());
            let joint: Vec<_> = a.into_iter().chain(b).collect();
            assert_eq!(rank(joint), dim, "bidegree ({p}, {q})");
        }
    }
}

#[test]
fn gram_matrix_is_diagonal_within_and_across_bidegrees() {
    for m in 1..=5u32 {
        let b = basis_hm(m);
        for (i, f) in b.iter().enumerate() {
            assert!(sphere_norm_sq(f) > rat(0, 1));
            for g in b.iter().skip(i + 1) {
                assert!(sphere_inner_product(f, g).is_zero());
            }
        }
    }
    // distinct total degrees
    for f in basis_hm(2).iter() {
        for g in basis_hm(4).iter() {
            assert!(sphere_inner_product(f, g).is_zero());
        }
    }
}

#[test]
fn sphere_integral_closed_form() {
    // ∫|z1|² = 1/2, ∫|z1|⁴ = 1/3, ∫|z1|²|z2|² = 1/6
    assert_eq!(monomial_sphere_integral(1, 0), rat(1, 2));
    assert_eq!(monomial_sphere_integral(2, 0), rat(1, 3));
    assert_eq!(monomial_sphere_integral(1, 1), rat(1, 6));
    assert_eq!(monomial_sphere_integral(0, 0), rat(1, 1));
}

#[test]
fn inner_product_agrees_with_monte_carlo() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed_0003);
    let samples = 200_000;
    let points: Vec<((f64, f64), (f64, f64))> = (0..samples)
        .map(|_| {
            let x: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            ((x[0] / r, x[1] / r), (x[2] / r, x[3] / r))
        })
        .collect();
    let pairs: [(&str, &str); 4] = [
        ("z1 zb1", "1"),
        ("z1 zb1 zb2", "z1 zb1 zb2"),
        (
            "4 * z1 zb1 zb2 + -2 * z2 zb2^2",
            "4 * z1 zb1 zb2 + -2 * z2 zb2^2",
        ),
        ("z1^2 zb1^2", "z2 zb2"),
    ];
    for (fs, gs) in pairs {
        let f: Polynomial = fs.parse().unwrap();
        let g: Polynomial = gs.parse().unwrap();
        let exact = rational_to_f64(&sphere_inner_product(&f, &g).re);
        let mut acc = 0.0;
        for (z1, z2) in &points {
            let a = f.eval_f64(*z1, *z2);
            let b = g.eval_f64(*z1, *z2);
            acc += a.0 * b.0 + a.1 * b.1;
        }
        let mc = acc / samples as f64;
        let scale = exact.abs().max(1.0);
        assert!(
            (mc - exact).abs() < 1e-2 * scale,
            "{fs} / {gs}: {mc} vs {exact}"
        );
    }
}

fn monomial(max: u32) -> impl Strategy<Value = Monomial> {
    (0..=max, 0..=max, 0..=max, 0..=max).prop_map(|(a, b, c, d)| Monomial::new(a, b, c, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_reassembles(monos in prop::collection::vec((monomial(3), -5i64..=5), 1..5)) {
        // homogeneous: keep the terms sharing the first term's degree
        let deg = monos[0].0.degree();
        let f = Polynomial::from_terms(
            monos
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (*m, ComplexRational::from_int(*c))),
        );
        prop_assume!(!f.is_zero());
        let parts = decompose(&f).unwrap();
        let r = Polynomial::norm_sq();
        let mut sum = Polynomial::zero();
        for (j, h) in &parts {
            prop_assert!(is_harmonic(h));
            if !h.is_zero() {
                prop_assert_eq!(h.total_degree().unwrap(), deg - 2 * j);
            }
            sum = &sum + &(&r.pow(*j) * h);
        }
        prop_assert_eq!(sum, f);
    }
}
