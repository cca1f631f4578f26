//! Deterministic inputs for the kernel benchmarks.

use lcverify_core::{IdealGens, Polynomial, Ring};

/// Homogenized cyclic-`n` ideal in `x0..x{n-1}, h`.
pub fn cyclic(n: usize) -> IdealGens {
    let mut vars: Vec<(String, lcverify_core::Rational)> =
        (0..n).map(|i| (format!("x{i}"), lcverify_core::rational::int(1))).collect();
    vars.push(("h".into(), lcverify_core::rational::int(1)));
    let ring = Ring::graded(vars).unwrap();
    let x = |i: usize| Polynomial::var_index(&ring, i % n);
    let h = Polynomial::var_index(&ring, n);
    let mut gens = Vec::new();
    for k in 1..n {
        let mut sum = Polynomial::zero(&ring);
        for i in 0..n {
            sum = &sum + &(0..k).fold(Polynomial::one(&ring), |acc, j| &acc * &x(i + j));
        }
        gens.push(sum);
    }
    let prod = (0..n).fold(Polynomial::one(&ring), |acc, i| &acc * &x(i));
    gens.push(&prod - &h.pow(n as u32));
    IdealGens::new(&ring, gens).unwrap()
}

/// `(x0^d, ..., x{n-1}^d)` plus one generic form of degree `d`, and a
/// target of degree `d + 1` lying in it.
pub fn membership(n: usize, d: u32) -> (Polynomial, IdealGens) {
    let vars = (0..n).map(|i| (format!("x{i}"), lcverify_core::rational::int(1))).collect();
    let ring = Ring::graded(vars).unwrap();
    let x = |i: usize| Polynomial::var_index(&ring, i);
    let mut gens: Vec<Polynomial> = (0..n).map(|i| x(i).pow(d)).collect();
    let linear = (0..n).fold(Polynomial::zero(&ring), |acc, i| &acc + &x(i));
    gens.push(linear.pow(d));
    let f = &(&x(0) * &gens[n]) + &(&x(n - 1) * &gens[0]);
    (f, IdealGens::new(&ring, gens).unwrap())
}
