use std::cmp::Ordering;
use std::sync::Arc;

use num::{One, Zero};

use crate::budget::Budget;
use crate::error::Result;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::ring::{Monomial, Ring};

/// Leading-monomial index for divisor lookup.
pub(crate) struct DivisorTable {
    lms: Vec<Monomial>,
    masks: Vec<u64>,
}

impl DivisorTable {
    pub fn new(basis: &[Polynomial]) -> Self {
        let mut t = DivisorTable { lms: Vec::with_capacity(basis.len()), masks: Vec::with_capacity(basis.len()) };
        for g in basis {
            t.push(g);
        }
        t
    }

    pub fn push(&mut self, g: &Polynomial) {
        let lm = g.leading_monomial().expect("basis elements are nonzero").clone();
        self.masks.push(lm.support_mask());
        self.lms.push(lm);
    }

    pub fn find(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        let mask = m.support_mask();
        (0..self.lms.len())
            .find(|&i| Some(i) != skip && self.masks[i] & !mask == 0 && self.lms[i].divides(m))
    }
}

/// `a - c*q*g` where `a` is a descending slice of terms.
fn merge_sub(
    ring: &Arc<Ring>,
    a: &[(Monomial, Rational)],
    c: &Rational,
    q: &Monomial,
    g: &Polynomial,
) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut x = a.iter().peekable();
    let mut y = g.terms().iter().map(|(m, gc)| (m.mul(q), gc * c)).peekable();
    loop {
        let ord = match (x.peek(), y.peek()) {
            (Some(s), Some(t)) => ring.cmp(&s.0, &t.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => break,
        };
        match ord {
            Ordering::Greater => out.push(x.next().unwrap().clone()),
            Ordering::Less => {
                let (m, v) = y.next().unwrap();
                out.push((m, -v));
            }
            Ordering::Equal => {
                let (m, v1) = x.next().unwrap();
                let (_, v2) = y.next().unwrap();
                let v = v1 - v2;
                if !v.is_zero() {
                    out.push((m.clone(), v));
                }
            }
        }
    }
    out
}

/// Result of dividing a polynomial by a list of polynomials.
pub struct Division {
    pub remainder: Polynomial,
    /// `quotients[k]` multiplies `basis[k]`; present only when requested.
    pub quotients: Option<Vec<Polynomial>>,
    pub steps: u64,
}

/// Full multivariate division: afterwards no term of the remainder is
/// divisible by any leading monomial of `basis`, and
/// `f = sum quotients[k]*basis[k] + remainder`.
pub fn divide(f: &Polynomial, basis: &[Polynomial], with_quotients: bool, budget: &Budget) -> Result<Division> {
    let table = DivisorTable::new(basis);
    divide_with_table(f, basis, &table, None, with_quotients, budget)
}

pub(crate) fn divide_with_table(
    f: &Polynomial,
    basis: &[Polynomial],
    table: &DivisorTable,
    skip: Option<usize>,
    with_quotients: bool,
    budget: &Budget,
) -> Result<Division> {
    let ring = f.ring().clone();
    let mut work: Vec<(Monomial, Rational)> = f.terms().to_vec();
    let mut pos = 0usize;
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut quot: Vec<Vec<(Monomial, Rational)>> = if with_quotients { vec![Vec::new(); basis.len()] } else { Vec::new() };
    let mut steps = 0u64;
    while pos < work.len() {
        let (m, c) = &work[pos];
        match table.find(m, skip) {
            Some(k) => {
                let g = &basis[k];
                let (lm, lc) = &g.terms()[0];
                let q = lm.quotient_of(m).expect("divisor found");
                let coef = if lc.is_one() { c.clone() } else { c / lc };
                let tail = merge_sub(&ring, &work[pos..], &coef, &q, g);
                rem.extend(work.drain(..pos));
                work = tail;
                pos = 0;
                if with_quotients {
                    quot[k].push((q, coef));
                }
                steps += 1;
                budget.charge(work.len() as u64 + 1)?;
            }
            None => pos += 1,
        }
    }
    rem.extend(work);
    let quotients = with_quotients.then(|| quot.into_iter().map(|t| Polynomial::from_terms(&ring, t)).collect());
    Ok(Division { remainder: Polynomial::from_sorted(&ring, rem), quotients, steps })
}
