//! Independent checks of the catalog multiplicities and lattice spectra.
//!
//! Harmonic-polynomial dimensions are computed as kernel dimensions of the
//! Laplacian (and of the Sp(1) raising operator) on monomial bases, by
//! Gaussian elimination mod a prime. Representation dimensions come from the
//! Weyl dimension formula. Torus counts come from a direct enumeration
//! against a 50-digit decimal value of π.

mod common;

use std::collections::HashMap;

use collapse_spectra::spectra::{
    complex_projective_multiplicity, quaternionic_projective_multiplicity, sphere_multiplicity, spectrum_of,
    SpaceDescriptor,
};
use collapse_spectra::Scalar;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = 1_000_000_007;

fn monomials(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in monomials(vars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % P, P - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = inv_mod(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % P;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + P - f * y % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Matrix of a linear operator given by its action on monomials.
fn operator_rows<K: Clone + Eq + std::hash::Hash>(
    domain: &[K],
    codomain: &[K],
    apply: impl Fn(&K) -> Vec<(i64, K)>,
) -> Vec<Vec<u64>> {
    let index: HashMap<&K, usize> = codomain.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = vec![vec![0u64; domain.len()]; codomain.len()];
    for (j, m) in domain.iter().enumerate() {
        for (c, image) in apply(m) {
            let i = index[&image];
            rows[i][j] = (rows[i][j] as i64 + c).rem_euclid(P as i64) as u64;
        }
    }
    rows
}

/// dim of harmonic homogeneous polynomials of degree k on ℝ^{n+1}.
fn harmonic_dimension(n: usize, k: u32) -> usize {
    let vars = n + 1;
    let domain = monomials(vars, k);
    if k < 2 {
        return domain.len();
    }
    let codomain = monomials(vars, k - 2);
    let rows = operator_rows(&domain, &codomain, |m| {
        (0..vars)
            .filter(|&i| m[i] >= 2)
            .map(|i| {
                let mut out = m.clone();
                out[i] -= 2;
                ((m[i] * (m[i] - 1)) as i64, out)
            })
            .collect()
    });
    domain.len() - rank_mod_p(rows)
}

type Bidegree = (Vec<u32>, Vec<u32>);

fn bidegree_monomials(vars: usize, p: u32, q: u32) -> Vec<Bidegree> {
    let mut out = Vec::new();
    for a in monomials(vars, p) {
        for b in monomials(vars, q) {
            out.push((a.clone(), b));
        }
    }
    out
}

/// Σ ∂²/∂z_i∂z̄_i on z^α z̄^β.
fn complex_laplacian(vars: usize) -> impl Fn(&Bidegree) -> Vec<(i64, Bidegree)> {
    move |(a, b)| {
        (0..vars)
            .filter(|&i| a[i] > 0 && b[i] > 0)
            .map(|i| {
                let (mut a2, mut b2) = (a.clone(), b.clone());
                a2[i] -= 1;
                b2[i] -= 1;
                ((a[i] * b[i]) as i64, (a2, b2))
            })
            .collect()
    }
}

/// Dimension of S¹-invariant harmonics of degree 2k on S^{2n+1}.
fn cp_oracle(n: usize, k: u32) -> usize {
    let vars = n + 1;
    let domain = bidegree_monomials(vars, k, k);
    if k == 0 {
        return 1;
    }
    let codomain = bidegree_monomials(vars, k - 1, k - 1);
    let rows = operator_rows(&domain, &codomain, complex_laplacian(vars));
    domain.len() - rank_mod_p(rows)
}

/// Dimension of Sp(1)-invariant harmonics of degree 2k on S^{4n+3}, using
/// coordinates (z, u) on ℍ^{n+1} in which the Hopf circle acts by scalars:
/// the invariants are the weight-zero harmonics killed by the raising
/// operator `E = Σ z_i ∂/∂ū_i − u_i ∂/∂z̄_i`.
fn hp_oracle(n: usize, k: u32) -> usize {
    if k == 0 {
        return 1;
    }
    let half = n + 1;
    let vars = 2 * half;
    let domain = bidegree_monomials(vars, k, k);
    let lap_codomain = bidegree_monomials(vars, k - 1, k - 1);
    let mut rows = operator_rows(&domain, &lap_codomain, complex_laplacian(vars));
    let e_codomain = bidegree_monomials(vars, k + 1, k - 1);
    rows.extend(operator_rows(&domain, &e_codomain, |(a, b)| {
        let mut out = Vec::new();
        for i in 0..half {
            let (z, u) = (i, i + half);
            // z ∂/∂ū
            if b[u] > 0 {
                let (mut a2, mut b2) = (a.clone(), b.clone());
                a2[z] += 1;
                b2[u] -= 1;
                out.push((b[u] as i64, (a2, b2)));
            }
            // −u ∂/∂z̄
            if b[z] > 0 {
                let (mut a2, mut b2) = (a.clone(), b.clone());
                a2[u] += 1;
                b2[z] -= 1;
                out.push((-(b[z] as i64), (a2, b2)));
            }
        }
        out
    }));
    domain.len() - rank_mod_p(rows)
}

fn weyl_su(n: usize, k: i64) -> BigRational {
    // SU(n+1), highest weight k(ε₁ − ε_{n+1})
    let r = n + 1;
    let mut lambda = vec![0i64; r];
    lambda[0] = k;
    lambda[r - 1] = -k;
    let mut acc = BigRational::one();
    for i in 0..r {
        for j in i + 1..r {
            let gap = (j - i) as i64;
            acc *= BigRational::new((lambda[i] - lambda[j] + gap).into(), gap.into());
        }
    }
    acc
}

#[test]
fn sphere_multiplicities_match_harmonic_kernel() {
    for n in 1..=4 {
        for k in 0..=10u32 {
            assert_eq!(sphere_multiplicity(n as u32, k as u64) as usize, harmonic_dimension(n, k), "S^{n}, k={k}");
        }
    }
}

#[test]
fn sphere_stream_uses_those_multiplicities() {
    for n in 1..=4u32 {
        let mut s = spectrum_of(&SpaceDescriptor::unit_sphere(n)).unwrap();
        for k in 0..=6u64 {
            let e = s.entry(k as usize).unwrap().clone();
            assert_eq!(e.value, Scalar::from_int((k * (k + n as u64 - 1)) as i64));
            assert_eq!(e.multiplicity as usize, harmonic_dimension(n as usize, k as u32));
        }
    }
}

#[test]
fn complex_projective_multiplicities() {
    for n in 1..=2usize {
        for k in 0..=4u32 {
            let got = complex_projective_multiplicity(n as u32, k as u64);
            assert_eq!(got as usize, cp_oracle(n, k), "CP^{n}, k={k}");
        }
        for k in 0..=6 {
            let got = complex_projective_multiplicity(n as u32, k as u64);
            assert_eq!(BigRational::from_integer(got.into()), weyl_su(n, k as i64), "CP^{n}, k={k}");
        }
    }
}

#[test]
fn quaternionic_projective_multiplicities() {
    for (n, kmax) in [(1usize, 3u32), (2, 2)] {
        for k in 0..=kmax {
            let got = quaternionic_projective_multiplicity(n as u32, k as u64);
            assert_eq!(got as usize, hp_oracle(n, k), "HP^{n}, k={k}");
        }
    }
    for n in 1..=2usize {
        for k in 0..=6 {
            let got = quaternionic_projective_multiplicity(n as u32, k as u64);
            assert_eq!(BigRational::from_integer(got.into()), common::weyl_sp(n + 1, k as i64), "HP^{n}, k={k}");
        }
    }
}

#[test]
fn so3_is_even_part_of_three_sphere() {
    // ℤ₂-invariant harmonics on S³ are the even degrees
    let mut so3 = spectrum_of(&SpaceDescriptor::So3 { radius: Scalar::one() }).unwrap();
    for (i, k) in (0..=8u32).step_by(2).enumerate() {
        let e = so3.entry(i).unwrap();
        assert_eq!(e.value, Scalar::from_int((k * (k + 2)) as i64));
        assert_eq!(e.multiplicity as usize, harmonic_dimension(3, k));
    }
}

fn inverse(g: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    match g.len() {
        2 => {
            let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
            vec![
                vec![&g[1][1] / &det, -&g[0][1] / &det],
                vec![-&g[1][0] / &det, &g[0][0] / &det],
            ]
        }
        3 => {
            let c = |i: usize, j: usize| {
                let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
                let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
                &g[r0][c0] * &g[r1][c1] - &g[r0][c1] * &g[r1][c0]
            };
            let det = (0..3).map(|j| &g[0][j] * c(0, j)).fold(BigRational::zero(), |a, b| a + b);
            (0..3).map(|i| (0..3).map(|j| c(j, i) / &det).collect()).collect()
        }
        _ => unimplemented!(),
    }
}

/// Number of nonzero dual vectors with 4π²·Q(x) < level.
fn brute_torus_count(gram: &[Vec<BigRational>], level: &BigRational) -> u64 {
    let d = gram.len();
    let dual = inverse(gram);
    // 4π² > 39
    let radius_sq = level / BigRational::from_integer(39.into());
    // |x_i|² ≤ R·G_ii on the ellipsoid xᵀG⁻¹x ≤ R
    let bounds: Vec<i64> = (0..d)
        .map(|i| {
            let b: f64 = num_traits::ToPrimitive::to_f64(&(&radius_sq * &gram[i][i])).unwrap();
            b.sqrt().ceil() as i64 + 1
        })
        .collect();
    let mut count = 0;
    let mut x = bounds.iter().map(|b| -b).collect::<Vec<_>>();
    loop {
        if x.iter().any(|v| *v != 0) {
            let mut q = BigRational::zero();
            for i in 0..d {
                for j in 0..d {
                    q += &dual[i][j] * BigRational::from_integer((x[i] * x[j]).into());
                }
            }
            if common::below(&BigRational::zero(), &(q * BigRational::from_integer(4.into())), level) {
                count += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return count;
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}

fn random_gram(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<i64>> {
    loop {
        let mut g = vec![vec![0i64; d]; d];
        for i in 0..d {
            g[i][i] = rng.gen_range(1..=4);
            for j in 0..i {
                let v = rng.gen_range(-1..=1);
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        let ok = match d {
            2 => g[0][0] * g[1][1] - g[0][1] * g[1][0] > 0,
            _ => {
                let m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
                let det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
                    - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
                    + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
                m2 > 0 && det > 0
            }
        };
        if ok {
            return g;
        }
    }
}

#[test]
fn torus_counts_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..20 {
        let d = if case % 2 == 0 { 2 } else { 3 };
        let g = random_gram(&mut rng, d);
        let level = BigRational::new(rng.gen_range(100..40_000).into(), 100.into());
        let descriptor = SpaceDescriptor::FlatTorus {
            gram: g.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect(),
        };
        let gram_q: Vec<Vec<BigRational>> =
            g.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
        let mut s = spectrum_of(&descriptor).unwrap();
        let got = s.counting_below(&Scalar::from_rational(level.clone()), true).unwrap();
        assert_eq!(got, brute_torus_count(&gram_q, &level), "gram {g:?}, level {level}");
    }
}

#[test]
fn identity_torus_low_values() {
    // |v|² ∈ {1, 2, 4} below 5, each with four vectors; 3 is not a sum of two squares
    let mut s = spectrum_of(&SpaceDescriptor::unit_torus(2)).unwrap();
    let got = s.eigenvalues_below(&(Scalar::pi2() * Scalar::from_int(20)), true).unwrap();
    let norms: Vec<_> = got.iter().map(|e| (e.value.clone() / (Scalar::pi2() * Scalar::from_int(4)), e.multiplicity)).collect();
    assert_eq!(norms, vec![(Scalar::from_int(1), 4), (Scalar::from_int(2), 4), (Scalar::from_int(4), 4)]);
}

#[test]
fn weyl_law_on_spheres() {
    // N(T) ≈ ω_n vol(S^n) T^{n/2} / (2π)^n
    let unit_ball = |n: f64| std::f64::consts::PI.powf(n / 2.0) / libm_gamma(n / 2.0 + 1.0);
    for n in 1..=4u32 {
        let nf = n as f64;
        let vol = (nf + 1.0) * unit_ball(nf + 1.0);
        let constant = unit_ball(nf) * vol / (2.0 * std::f64::consts::PI).powf(nf);
        let mut s = spectrum_of(&SpaceDescriptor::unit_sphere(n)).unwrap();
        for t in [100, 200, 300, 400] {
            let count = s.counting_below(&Scalar::from_int(t), true).unwrap() as f64;
            let ratio = count / (constant * (t as f64).powf(nf / 2.0));
            assert!((0.5..2.0).contains(&ratio), "S^{n}, T={t}: ratio {ratio}");
        }
    }
}

fn libm_gamma(x: f64) -> f64 {
    // x is a positive integer or half-integer here
    if x == 1.0 {
        1.0
    } else if x == 0.5 {
        std::f64::consts::PI.sqrt()
    } else {
        (x - 1.0) * libm_gamma(x - 1.0)
    }
}
