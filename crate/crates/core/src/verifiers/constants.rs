use std::sync::Arc;

use num::{Signed, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::divide;
use crate::poly::Polynomial;
use crate::presentation::RootSpec;
use crate::rational::{int, Rational};
use crate::ring::Ring;

/// A tower of quadratic extensions `Q(e_1, .., e_k)` with `e_i^2 = kappa_i`,
/// `kappa_i` a polynomial in the older constants. Elements are kept reduced
/// (every `e_i` to degree at most 1).
#[derive(Clone, Debug)]
pub struct ConstantField {
    ring: Arc<Ring>,
    names: Vec<String>,
    kappas: Vec<Polynomial>,
    relations: Vec<Polynomial>,
}

impl Default for ConstantField {
    fn default() -> Self {
        ConstantField::new()
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

impl ConstantField {
    pub fn new() -> Self {
        let ring = Ring::new(Vec::new(), Vec::new()).expect("empty ring");
        ConstantField { ring, names: Vec::new(), kappas: Vec::new(), relations: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn rational(&self, r: Rational) -> Polynomial {
        Polynomial::constant(&self.ring, r)
    }

    /// Brings `p` (over any ring naming only these constants) into the
    /// current ring and reduces it.
    pub fn element(&self, p: &Polynomial) -> Result<Polynomial> {
        let p = p.embed(&self.ring)?;
        if self.relations.is_empty() {
            return Ok(p);
        }
        Ok(divide(&p, &self.relations, false, &Budget::unlimited())?.remainder)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        budget.charge((a.len() * b.len()) as u64)?;
        self.element(&a.embed(&self.ring)?.checked_mul(&b.embed(&self.ring)?)?)
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        a.embed(&self.ring)?.checked_add(&b.embed(&self.ring)?)
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        a.embed(&self.ring)?.checked_sub(&b.embed(&self.ring)?)
    }

    /// `1/x` via `1/(x0 + x1 e) = (x0 - x1 e) / (x0^2 - x1^2 kappa)` on the
    /// newest constant `e` occurring in `x`.
    pub fn inverse(&self, x: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        let x = self.element(x)?;
        if x.is_zero() {
            return Err(Error::Singular("division by zero in the constant field".into()));
        }
        let newest = (0..self.names.len()).rev().find(|&k| x.involves(self.ring.var_index(&self.names[k]).unwrap()));
        let Some(k) = newest else {
            let c = x.leading_coeff().unwrap().recip();
            return Ok(self.rational(c));
        };
        let e = Polynomial::var(&self.ring, &self.names[k])?;
        let idx = self.ring.var_index(&self.names[k])?;
        let (mut x0, mut x1) = (Vec::new(), Vec::new());
        for (m, c) in x.terms() {
            let mut exps = m.exponents().to_vec();
            if exps[idx] == 1 {
                exps[idx] = 0;
                x1.push((crate::ring::Monomial::from_exponents(exps), c.clone()));
            } else {
                x0.push((m.clone(), c.clone()));
            }
        }
        let x0 = Polynomial::from_terms(&self.ring, x0);
        let x1 = Polynomial::from_terms(&self.ring, x1);
        let norm = self.sub(&self.mul(&x0, &x0, budget)?, &self.mul(&self.mul(&x1, &x1, budget)?, &self.kappas[k], budget)?)?;
        if norm.is_zero() {
            return Err(Error::Singular(format!("{x} is a zero divisor in the constant algebra")));
        }
        let inv = self.inverse(&norm, budget)?;
        let conj = self.sub(&x0, &self.mul(&x1, &e, budget)?)?;
        self.mul(&conj, &inv, budget)
    }

    /// Adjoins `e` with `e^2 = kappa` as the newest constant.
    pub fn adjoin(&mut self, name: &str, kappa: &Polynomial) -> Result<Polynomial> {
        let kappa = self.element(kappa)?;
        let mut vars: Vec<(String, Rational)> = self.names.iter().map(|n| (n.clone(), Rational::zero())).collect();
        vars.push((name.to_string(), Rational::zero()));
        let mut blocks = vec![vec![name.to_string()]];
        blocks.extend(self.names.iter().rev().map(|n| vec![n.clone()]));
        let ring = Ring::new(vars, blocks)?;
        self.kappas = self.kappas.iter().map(|k| k.embed(&ring)).collect::<Result<_>>()?;
        self.relations = self.relations.iter().map(|k| k.embed(&ring)).collect::<Result<_>>()?;
        let kappa = kappa.embed(&ring)?;
        let e = Polynomial::var(&ring, name)?;
        self.relations.push(&e.pow(2) - &kappa);
        self.kappas.push(kappa);
        self.names.push(name.to_string());
        self.ring = ring;
        Ok(e)
    }

    /// A square root of `lambda`. A rational `lambda` that is a rational
    /// square times a product of existing rational radicands reuses those
    /// constants; otherwise a new constant `name` is adjoined and its
    /// [`RootSpec`] returned.
    pub fn sqrt(&mut self, lambda: &Polynomial, name: &str) -> Result<(Polynomial, Option<RootSpec>)> {
        let lambda = self.element(lambda)?;
        if lambda.is_zero() {
            return Err(Error::Singular("square root of zero requested".into()));
        }
        if lambda.is_constant() {
            let l = lambda.leading_coeff().unwrap().clone();
            let rational: Vec<(usize, Rational)> = self
                .kappas
                .iter()
                .enumerate()
                .filter(|(_, k)| k.is_constant())
                .map(|(i, k)| (i, k.leading_coeff().unwrap().clone()))
                .collect();
            if rational.len() <= 16 {
                for mask in 0u32..(1 << rational.len()) {
                    let mut prod = int(1);
                    let mut root = self.rational(int(1));
                    for (bit, (i, k)) in rational.iter().enumerate() {
                        if mask & (1 << bit) != 0 {
                            prod *= k;
                            root = &root * &Polynomial::var(&self.ring, &self.names[*i])?;
                        }
                    }
                    if let Some(s) = rational_sqrt(&(&l / &prod)) {
                        return Ok((root.scale(&s), None));
                    }
                }
            }
        }
        let e = self.adjoin(name, &lambda)?;
        let spec = RootSpec::new(name, 2, self.kappas.last().unwrap().clone());
        Ok((e, Some(spec)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn reuse_and_inverse() {
        let b = Budget::default();
        let mut k = ConstantField::new();
        let (i, spec) = k.sqrt(&k.rational(int(-1)), "B").unwrap();
        assert!(spec.is_some());
        let (g, spec) = k.sqrt(&k.rational(int(-2)), "G").unwrap();
        assert!(spec.is_some());
        // -2 = 2 * (-1) is not a rational square times -1, but 2 = (-2)(-1)
        let (two, spec) = k.sqrt(&k.rational(int(2)), "H").unwrap();
        assert!(spec.is_none());
        assert_eq!(k.mul(&two, &two, &b).unwrap(), k.rational(int(2)));
        let (h, spec) = k.sqrt(&k.rational(rat(-9, 4)), "X").unwrap();
        assert!(spec.is_none());
        assert_eq!(h, k.element(&i).unwrap().scale(&rat(3, 2)));

        let x = k.add(&i, &g).unwrap();
        let inv = k.inverse(&x, &b).unwrap();
        assert_eq!(k.mul(&x, &inv, &b).unwrap(), k.rational(int(1)));
        assert!(k.inverse(&k.rational(int(0)), &b).is_err());
    }

    #[test]
    fn nested_radicand() {
        let b = Budget::default();
        let mut k = ConstantField::new();
        let (i, _) = k.sqrt(&k.rational(int(-1)), "B").unwrap();
        let kappa = k.add(&i, &k.rational(int(1))).unwrap();
        let (e, spec) = k.sqrt(&kappa, "E").unwrap();
        assert!(spec.is_some());
        assert_eq!(k.mul(&e, &e, &b).unwrap(), k.element(&kappa).unwrap());
        let inv = k.inverse(&e, &b).unwrap();
        assert_eq!(k.mul(&e, &inv, &b).unwrap(), k.rational(int(1)));
    }
}
