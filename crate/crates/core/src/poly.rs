//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::rational::{DegreeQ, Rational};
use crate::ring::{Monomial, Ring};

/// A polynomial over the ambient [`Ring`]. Terms are stored strictly
/// descending in the ring's term order, without zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Rational)>,
}

/// Operation selector for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum ArithOp<'a> {
    Add(&'a Polynomial),
    Sub(&'a Polynomial),
    Mul(&'a Polynomial),
    Pow(u32),
}

/// Checked polynomial arithmetic; fails with "ambient mismatch" when the
/// operands live over different variable tables.
pub fn poly_arith(f: &Polynomial, op: ArithOp<'_>) -> Result<Polynomial> {
    match op {
        ArithOp::Add(g) => f.checked_add(g),
        ArithOp::Sub(g) => f.checked_sub(g),
        ArithOp::Mul(g) => f.checked_mul(g),
        ArithOp::Pow(k) => Ok(f.pow(k)),
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        Ok(Self::var_index(ring, ring.var_index(name)?))
    }

    pub fn var_index(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), Rational::one())
    }

    /// Canonicalizes an arbitrary list of terms: merges duplicates, drops
    /// zeros and sorts.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ring.nvars());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<Ring>, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Terms already sorted descending with no duplicates or zeros.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn same_ambient(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ambient(&self, other: &Polynomial) -> Result<()> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match ring.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m.clone(), if negate { -c } else { c.clone() }));
                    }
                    Ordering::Equal => {
                        let (m, c1) = a.next().unwrap();
                        let (_, c2) = b.next().unwrap();
                        let c = if negate { c1 - c2 } else { c1 + c2 };
                        if !c.is_zero() {
                            out.push((m.clone(), c));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                }
                (None, None) => break,
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(c, m);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(c, m);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    /// `c * m * self`; multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, tc)| (m.clone(), tc * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `self - c * m * g` in a single merge pass.
    pub(crate) fn sub_mul_term(&self, c: &Rational, m: &Monomial, g: &Polynomial) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => ring.cmp(&x.0, &y.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => break,
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, -c));
                }
                Ordering::Equal => {
                    let (m, c1) = a.next().unwrap();
                    let (_, c2) = b.next().unwrap();
                    let c = c1 - c2;
                    if !c.is_zero() {
                        out.push((m.clone(), c));
                    }
                }
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Indicator of which variables occur.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[var] > 0)
    }

    /// Splits into homogeneous components under `grading` (one rational
    /// degree per ambient variable). Empty iff `self` is zero.
    pub fn degree_components_in(&self, grading: &[Rational]) -> BTreeMap<Rational, Polynomial> {
        assert_eq!(grading.len(), self.ring.nvars(), "grading must cover every variable");
        let mut parts: BTreeMap<Rational, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m
                .exponents()
                .iter()
                .zip(grading)
                .filter(|(e, _)| **e > 0)
                .fold(Rational::zero(), |acc, (e, g)| acc + g * BigInt::from(*e));
            parts.entry(d).or_default().push((m.clone(), c.clone()));
        }
        parts.into_iter().map(|(d, t)| (d, Polynomial::from_sorted(&self.ring, t))).collect()
    }

    /// Homogeneous components under the ring's own grading.
    pub fn degree_components(&self) -> BTreeMap<Rational, Polynomial> {
        self.degree_components_in(self.ring.degrees())
    }

    /// Least degree carrying a nonzero component; infinity for zero.
    pub fn order_valuation_in(&self, grading: &[Rational]) -> DegreeQ {
        match self.degree_components_in(grading).into_keys().next() {
            Some(d) => DegreeQ::Finite(d),
            None => DegreeQ::Infinity,
        }
    }

    pub fn order_valuation(&self) -> DegreeQ {
        self.order_valuation_in(self.ring.degrees())
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<Rational> {
        let comps = self.degree_components();
        if comps.len() == 1 {
            comps.into_keys().next()
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Re-expresses this polynomial over `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        let used = self.support();
        let mut map = vec![usize::MAX; self.ring.nvars()];
        for (i, u) in used.iter().enumerate() {
            if *u {
                map[i] = target.var_index(self.ring.name(i))?;
            }
        }
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    if x > 0 {
                        e[map[i]] = x;
                    }
                }
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Ring homomorphism image: variable `i` is sent to `images[i]`.
    pub fn evaluate(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Invalid(format!(
                "expected {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        for im in images {
            if !Arc::ptr_eq(&im.ring, &target) && *im.ring != *target {
                return Err(Error::AmbientMismatch);
            }
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let p = powers.entry((i, e)).or_insert_with(|| images[i].pow(e));
                    t = t.mul_unchecked(p);
                }
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Exact division by `g` in the free polynomial ring.
    pub fn exact_div(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(g)?;
        let (lm, lc) = match g.terms.first() {
            Some(t) => t,
            None => return Err(Error::InexactDivision),
        };
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = lm.quotient_of(&m).ok_or(Error::InexactDivision)?;
            let qc = c / lc;
            rem = rem.sub_mul_term(&qc, &q, g);
            quot.push((q, qc));
        }
        Ok(Polynomial::from_sorted(&self.ring, quot))
    }

    pub fn to_canonical_string(&self) -> String {
        crate::parse::format_polynomial(self)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ambient(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_polynomial(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// Operator forms panic on ambient mismatch; use `poly_arith` or the
// `checked_*` methods for fallible arithmetic.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ambient mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ambient mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ambient mismatch")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
