//! Variable tables, exponent vectors and weighted block term orders.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, Rational};

/// Exponent vector over the ambient variable table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial(e.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i % 64` set when variable `i` occurs.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
    }

    /// The single variable index if this is a pure power `v^e`, e > 0.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }
}

/// Weighted block order.
///
/// Blocks are compared in list order (newest-adjoined block first). Inside a
/// block monomials compare by weighted degree, then ordinary degree, then
/// reverse lexicographically with the block's variable list giving the
/// variable precedence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    weights: Vec<u64>,
    blocks: Vec<Vec<usize>>,
}

impl MonomialOrder {
    pub const TIE_BREAK: &'static str = "block-weighted-degrevlex";

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// A vector whose lexicographic order agrees with this term order.
    pub fn sort_key(&self, m: &Monomial) -> Vec<i64> {
        let e = m.exponents();
        let mut key = Vec::with_capacity(e.len() + 2 * self.blocks.len());
        for block in &self.blocks {
            key.push(block.iter().map(|&v| self.weights[v] as i64 * e[v] as i64).sum());
            key.push(block.iter().map(|&v| e[v] as i64).sum());
            key.extend(block.iter().rev().map(|&v| -(e[v] as i64)));
        }
        key
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        for block in &self.blocks {
            let (mut wa, mut wb, mut da, mut db) = (0u64, 0u64, 0u64, 0u64);
            for &v in block {
                wa += self.weights[v] * a[v] as u64;
                wb += self.weights[v] * b[v] as u64;
                da += a[v] as u64;
                db += b[v] as u64;
            }
            match wa.cmp(&wb).then(da.cmp(&db)) {
                Ordering::Equal => {}
                o => return o,
            }
            for &v in block.iter().rev() {
                if a[v] != b[v] {
                    return b[v].cmp(&a[v]);
                }
            }
        }
        Ordering::Equal
    }
}

/// The ambient variable table: names, rational degrees and the term order.
#[derive(Clone, Debug)]
pub struct Ring {
    names: Vec<String>,
    degrees: Vec<Rational>,
    order: MonomialOrder,
    index: HashMap<String, usize>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.degrees == other.degrees && self.order == other.order
    }
}

impl Eq for Ring {}

impl Ring {
    /// Builds a ring from `(name, degree)` pairs and an ordered block list
    /// (newest block first). Every variable must occur in exactly one block.
    pub fn new(vars: Vec<(String, Rational)>, blocks: Vec<Vec<String>>) -> Result<Arc<Ring>> {
        let mut index = HashMap::new();
        for (i, (name, deg)) in vars.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidRing(format!("bad variable name `{name}`")));
            }
            if deg.is_negative() {
                return Err(Error::InvalidRing(format!("negative degree for `{name}`")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        let mut seen = vec![false; vars.len()];
        let mut idx_blocks = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let mut b = Vec::with_capacity(block.len());
            for name in block {
                let &i = index.get(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidRing(format!("`{name}` in two blocks")));
                }
                b.push(i);
            }
            if !b.is_empty() {
                idx_blocks.push(b);
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidRing(format!("`{}` missing from order blocks", vars[i].0)));
        }
        let degrees: Vec<Rational> = vars.iter().map(|(_, d)| d.clone()).collect();
        let scale = Rational::from_integer(denominator_lcm(degrees.iter()));
        let weights = degrees
            .iter()
            .map(|d| {
                let w: BigInt = (d * &scale).to_integer();
                w.to_u64().ok_or_else(|| Error::InvalidRing("weight overflow".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(Ring {
            names: vars.into_iter().map(|(n, _)| n).collect(),
            degrees,
            order: MonomialOrder { weights, blocks: idx_blocks },
            index,
        }))
    }

    /// One block holding all positive-degree variables in the given order,
    /// followed by a block with the degree-0 constants.
    pub fn graded(vars: Vec<(String, Rational)>) -> Result<Arc<Ring>> {
        let (consts, main): (Vec<_>, Vec<_>) = vars.iter().map(|(n, d)| (n.clone(), d)).partition(|(_, d)| d.is_zero());
        let blocks = vec![
            main.into_iter().map(|(n, _)| n).collect(),
            consts.into_iter().map(|(n, _)| n).collect(),
        ];
        Ring::new(vars, blocks)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degrees(&self) -> &[Rational] {
        &self.degrees
    }

    pub fn degree_of(&self, i: usize) -> &Rational {
        &self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn is_constant(&self, i: usize) -> bool {
        self.degrees[i].is_zero()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Weighted degree of a monomial as an exact rational.
    pub fn monomial_degree(&self, m: &Monomial) -> Rational {
        m.exponents()
            .iter()
            .zip(self.degrees.iter())
            .filter(|(e, _)| **e > 0)
            .map(|(e, d)| d * BigInt::from(*e))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn monomial_weight(&self, m: &Monomial) -> u64 {
        m.exponents().iter().zip(self.order.weights.iter()).map(|(e, w)| *e as u64 * w).sum()
    }

    /// Block lists by name, newest first.
    pub fn block_names(&self) -> Vec<Vec<String>> {
        self.order.blocks.iter().map(|b| b.iter().map(|&i| self.names[i].clone()).collect()).collect()
    }

    pub fn vars_with_degrees(&self) -> Vec<(String, Rational)> {
        self.names.iter().cloned().zip(self.degrees.iter().cloned()).collect()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.names.iter().zip(&self.degrees).map(|(n, d)| format!("{n}:{d}")).collect();
        write!(f, "Q[{}]", vars.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ring() -> Arc<Ring> {
        Ring::new(
            vec![("r".into(), rat(1, 2)), ("a".into(), int(1)), ("b".into(), int(1)), ("w".into(), int(0))],
            vec![vec!["r".into()], vec!["a".into(), "b".into(), "w".into()]],
        )
        .unwrap()
    }

    #[test]
    fn weights_scale_by_denominator_lcm() {
        let r = ring();
        assert_eq!(r.order().weights(), &[1, 2, 2, 0]);
    }

    #[test]
    fn newest_block_dominates() {
        let r = ring();
        let r2 = Monomial::from_exponents(vec![2, 0, 0, 0]);
        let a = Monomial::from_exponents(vec![0, 1, 0, 0]);
        let a3 = Monomial::from_exponents(vec![0, 3, 0, 0]);
        assert_eq!(r.cmp(&r2, &a), Ordering::Greater);
        assert_eq!(r.cmp(&r2, &a3), Ordering::Greater);
    }

    #[test]
    fn weight_zero_constants_are_well_ordered() {
        let r = ring();
        let one = Monomial::one(4);
        let w = Monomial::var(4, 3, 1);
        let w2 = Monomial::var(4, 3, 2);
        assert_eq!(r.cmp(&w, &one), Ordering::Greater);
        assert_eq!(r.cmp(&w2, &w), Ordering::Greater);
        let a = Monomial::var(4, 1, 1);
        assert_eq!(r.cmp(&a, &w2), Ordering::Greater);
    }

    #[test]
    fn revlex_inside_block() {
        let r = Ring::graded(vec![("x".into(), int(1)), ("y".into(), int(1)), ("z".into(), int(1))]).unwrap();
        let xz = Monomial::from_exponents(vec![1, 0, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2, 0]);
        // degrevlex with x > y > z: y^2 > xz
        assert_eq!(r.cmp(&y2, &xz), Ordering::Greater);
    }

    #[test]
    fn sort_key_agrees_with_cmp() {
        let r = ring();
        let ms: Vec<Monomial> = (0..3u32)
            .flat_map(|a| (0..3u32).flat_map(move |b| (0..3u32).map(move |c| Monomial::from_exponents(vec![a, b, 0, c]))))
            .collect();
        for x in &ms {
            for y in &ms {
                assert_eq!(r.cmp(x, y), r.order().sort_key(x).cmp(&r.order().sort_key(y)));
            }
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(Ring::new(vec![("x".into(), int(1))], vec![]).is_err());
        assert!(Ring::new(vec![("x".into(), int(1)), ("x".into(), int(1))], vec![vec!["x".into()]]).is_err());
        assert!(Ring::new(vec![("1x".into(), int(1))], vec![vec!["1x".into()]]).is_err());
        assert!(Ring::new(vec![("x".into(), int(-1))], vec![vec!["x".into()]]).is_err());
    }
}
