#![allow(dead_code)]

use std::sync::Arc;

use lcverify_core::rational::{int, rat};
use lcverify_core::{IdealGens, Monomial, Polynomial, Rational, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn graded_ring(n: usize) -> Arc<Ring> {
    let vars = (0..n).map(|i| (format!("x{i}"), int(1))).collect();
    Ring::graded(vars).unwrap()
}

pub fn coefficient(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let num = rng.gen_range(-6i64..=6);
        if num != 0 {
            return rat(num, rng.gen_range(1i64..=3));
        }
    }
}

pub fn monomial_of_degree(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u32; n];
    for _ in 0..degree {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exponents(exps)
}

/// Homogeneous of total degree `degree` with up to `terms` terms.
pub fn homogeneous(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, degree: u32, terms: usize) -> Polynomial {
    let n = ring.nvars();
    let t = (0..terms).map(|_| (monomial_of_degree(rng, n, degree), coefficient(rng))).collect();
    Polynomial::from_terms(ring, t)
}

/// Mixed degrees up to `max_degree`.
pub fn polynomial(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, max_degree: u32, terms: usize) -> Polynomial {
    let n = ring.nvars();
    let t = (0..terms)
        .map(|_| {
            let d = rng.gen_range(0..=max_degree);
            (monomial_of_degree(rng, n, d), coefficient(rng))
        })
        .collect();
    Polynomial::from_terms(ring, t)
}

/// A homogeneous membership instance: `(f, I)` with `deg f <= 6` in at most
/// eight variables. About half the targets are built inside the ideal.
pub fn membership_instance(rng: &mut ChaCha8Rng) -> (Polynomial, IdealGens) {
    let n = rng.gen_range(2..=8);
    let ring = graded_ring(n);
    let k = rng.gen_range(1..=3);
    let gens: Vec<Polynomial> = (0..k)
        .map(|_| loop {
            let d = rng.gen_range(1..=3);
            let terms = rng.gen_range(1..=3);
            let g = homogeneous(rng, &ring, d, terms);
            if !g.is_zero() {
                break g;
            }
        })
        .collect();
    let max_gen = gens.iter().map(|g| g.homogeneous_degree().unwrap()).max().unwrap();
    let lo = max_gen.to_integer().try_into().unwrap_or(1u32);
    let degree = rng.gen_range(lo..=6);
    let f = if rng.gen_bool(0.5) {
        gens.iter().fold(Polynomial::zero(&ring), |acc, g| {
            let dg: u32 = g.homogeneous_degree().unwrap().to_integer().try_into().unwrap();
            let q = homogeneous(rng, &ring, degree - dg, 2);
            &acc + &(&q * g)
        })
    } else {
        let terms = rng.gen_range(1..=4);
        homogeneous(rng, &ring, degree, terms)
    };
    let f = if f.is_zero() { homogeneous(rng, &ring, degree, 2) } else { f };
    (f, IdealGens::new(&ring, gens).unwrap())
}
