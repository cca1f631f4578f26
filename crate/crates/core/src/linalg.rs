//! Exact linear algebra on graded pieces.
//!
//! A graded piece of `K[vars]/(gens)` in degree `d` is modelled as the span
//! of monomials of degree `d` modulo the span of all `m * g` with `g` a
//! generator and `m` a monomial of complementary degree. Degree-0 variables
//! are treated as coefficients: their relations must have pairwise distinct
//! pure-power leading monomials, so the constant algebra has an obvious
//! finite monomial basis. Nothing here runs a Groebner completion, which
//! makes the module usable as an independent membership oracle.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{divide, IdealGens};
use crate::poly::Polynomial;
use crate::rational::{denominator_lcm, Rational};
use crate::ring::{Monomial, Ring};

/// Default cap on the number of columns of a graded piece.
pub const DEFAULT_PIECE_BOUND: usize = 50_000;

pub type SparseRow = Vec<(usize, Rational)>;

/// Row echelon form with rows keyed by their pivot column.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseRow>,
}

fn axpy(row: &[(usize, Rational)], c: &Rational, pivot: &[(usize, Rational)]) -> SparseRow {
    // row - c * pivot, both sorted by column
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        if j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            out.push(row[i].clone());
            i += 1;
        } else if i == row.len() || pivot[j].0 < row[i].0 {
            out.push((pivot[j].0, -(c * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(c * &pivot[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Eliminates pivot columns from the front until the leading column has
    /// no pivot (or the row vanishes).
    pub fn reduce_leading(&self, mut row: SparseRow) -> SparseRow {
        while let Some((col, c)) = row.first().cloned() {
            match self.rows.get(&col) {
                Some(p) => row = axpy(&row, &c, p),
                None => break,
            }
        }
        row
    }

    /// Adds a row; returns whether it was independent of the current rows.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce_leading(row);
        match row.first() {
            None => false,
            Some((col, c)) => {
                let inv = c.recip();
                let col = *col;
                let row = row.into_iter().map(|(k, v)| (k, v * &inv)).collect();
                self.rows.insert(col, row);
                true
            }
        }
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce_leading(row).is_empty()
    }
}

/// Monomials in the given variables whose weight is exactly `target`.
fn monomials_of_weight(
    nvars: usize,
    vars: &[(usize, u64)],
    target: u64,
    bound: usize,
    out: &mut Vec<Monomial>,
) -> Result<()> {
    fn rec(
        vars: &[(usize, u64)],
        k: usize,
        left: u64,
        exps: &mut Vec<u32>,
        bound: usize,
        out: &mut Vec<Monomial>,
    ) -> Result<()> {
        if left == 0 {
            if out.len() >= bound {
                return Err(Error::PieceTooLarge { dim: out.len() + 1, bound });
            }
            out.push(Monomial::from_exponents(exps.clone()));
            return Ok(());
        }
        if k == vars.len() {
            return Ok(());
        }
        let (v, w) = vars[k];
        let max = left / w;
        for e in (0..=max).rev() {
            exps[v] = e as u32;
            rec(vars, k + 1, left - e * w, exps, bound, out)?;
        }
        exps[v] = 0;
        Ok(())
    }
    let mut exps = vec![0u32; nvars];
    rec(vars, 0, target, &mut exps, bound, out)
}

/// The finite monomial basis of the constant algebra, with its relations.
#[derive(Clone, Debug)]
pub struct ConstantAlgebra {
    relations: Vec<Polynomial>,
    basis: Vec<Monomial>,
}

impl ConstantAlgebra {
    /// Builds the constant algebra from the degree-0-only relations.
    pub fn new(ring: &Arc<Ring>, relations: Vec<Polynomial>) -> Result<Self> {
        let consts: Vec<usize> = (0..ring.nvars()).filter(|&i| ring.is_constant(i)).collect();
        let mut cap: HashMap<usize, u32> = HashMap::new();
        for r in &relations {
            let lm = r.leading_monomial().expect("nonzero relation");
            match lm.pure_power() {
                Some((v, e)) if cap.insert(v, e).is_none() => {}
                _ => {
                    return Err(Error::Invalid(format!(
                        "constant relations need distinct pure-power leading terms; got {r}"
                    )))
                }
            }
        }
        let mut basis = vec![Monomial::one(ring.nvars())];
        for &v in &consts {
            let e = *cap
                .get(&v)
                .ok_or_else(|| Error::Invalid(format!("constant {} has no defining relation", ring.name(v))))?;
            basis = basis
                .iter()
                .flat_map(|m| (0..e).map(move |k| m.mul(&Monomial::var(m.len(), v, k))))
                .collect();
        }
        Ok(ConstantAlgebra { relations, basis })
    }

    /// Dimension over the rationals.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.relations.is_empty() {
            return Ok(f.clone());
        }
        Ok(divide(f, &self.relations, false, &Budget::unlimited())?.remainder)
    }
}

/// Splits generators into those involving only degree-0 variables and the rest.
pub fn split_constant_relations(ring: &Arc<Ring>, gens: &[Polynomial]) -> (Vec<Polynomial>, Vec<Polynomial>) {
    gens.iter().cloned().partition(|g| {
        g.terms().iter().all(|(m, _)| m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || ring.is_constant(i)))
    })
}

/// Integer weights (degree times the lcm of all denominators) and that lcm.
fn integer_weights(ring: &Ring) -> (Vec<u64>, BigInt) {
    let l = denominator_lcm(ring.degrees());
    let w = ring
        .degrees()
        .iter()
        .map(|d| (d * Rational::from_integer(l.clone())).to_integer().to_u64().expect("small weight"))
        .collect();
    (w, l)
}

fn weight_of(d: &Rational, l: &BigInt) -> Option<u64> {
    let w = d * Rational::from_integer(l.clone());
    if !w.is_integer() || w.is_negative() {
        return None;
    }
    w.to_integer().to_u64()
}

/// A graded piece of a quotient, with the submodule generated by the
/// generators already reduced to echelon form.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    ring: Arc<Ring>,
    degree: Rational,
    columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    constants: ConstantAlgebra,
    echelon: SparseEchelon,
}

impl GradedPiece {
    /// Degree-`degree` piece of `ring/(gens)`.
    pub fn new(ring: &Arc<Ring>, degree: &Rational, gens: &[Polynomial], bound: usize) -> Result<Self> {
        let (const_rels, gens) = split_constant_relations(ring, gens);
        let constants = ConstantAlgebra::new(ring, const_rels)?;
        let mut piece = Self::ambient(ring, degree, constants, bound)?;
        for g in &gens {
            piece.add_generator(g, bound)?;
        }
        Ok(piece)
    }

    /// The full degree piece of the ring modulo only the constant relations.
    pub fn ambient(ring: &Arc<Ring>, degree: &Rational, constants: ConstantAlgebra, bound: usize) -> Result<Self> {
        let (weights, l) = integer_weights(ring);
        let vars: Vec<(usize, u64)> = (0..ring.nvars()).filter(|&i| !ring.is_constant(i)).map(|i| (i, weights[i])).collect();
        let mut columns = Vec::new();
        if let Some(target) = weight_of(degree, &l) {
            let mut base = Vec::new();
            let per = bound / constants.dim().max(1);
            monomials_of_weight(ring.nvars(), &vars, target, per.max(1), &mut base)
                .map_err(|_| Error::PieceTooLarge { dim: (per + 1) * constants.dim(), bound })?;
            for m in &base {
                for s in constants.basis() {
                    columns.push(m.mul(s));
                }
            }
        }
        if columns.len() > bound {
            return Err(Error::PieceTooLarge { dim: columns.len(), bound });
        }
        let index = columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(GradedPiece { ring: ring.clone(), degree: degree.clone(), columns, index, constants, echelon: SparseEchelon::new() })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn degree(&self) -> &Rational {
        &self.degree
    }

    /// Dimension of the ambient piece (before quotienting by generators).
    pub fn ambient_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Dimension of the quotient piece over the rationals.
    pub fn quotient_dim(&self) -> usize {
        self.columns.len() - self.echelon.rank()
    }

    pub fn constants(&self) -> &ConstantAlgebra {
        &self.constants
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    /// Coordinates of a homogeneous polynomial of this degree.
    pub fn vector(&self, f: &Polynomial) -> Result<SparseRow> {
        let f = self.constants.reduce(&f.embed(&self.ring)?)?;
        let mut row = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let Some(&col) = self.index.get(m) else {
                return Err(Error::Inhomogeneous(format!("{f} has terms outside degree {}", self.degree)));
            };
            row.push((col, c.clone()));
        }
        row.sort_by_key(|(k, _)| *k);
        Ok(row)
    }

    /// Adds every multiple `m * g` landing in this degree.
    pub fn add_generator(&mut self, g: &Polynomial, bound: usize) -> Result<()> {
        let g = g.embed(&self.ring)?;
        if g.is_zero() {
            return Ok(());
        }
        let dg = g.homogeneous_degree().ok_or_else(|| Error::Inhomogeneous(format!("generator {g} is not homogeneous")))?;
        let gap = &self.degree - &dg;
        if gap.is_negative() {
            return Ok(());
        }
        let (weights, l) = integer_weights(&self.ring);
        let Some(target) = weight_of(&gap, &l) else {
            return Ok(());
        };
        let vars: Vec<(usize, u64)> =
            (0..self.ring.nvars()).filter(|&i| !self.ring.is_constant(i)).map(|i| (i, weights[i])).collect();
        let mut mults = Vec::new();
        monomials_of_weight(self.ring.nvars(), &vars, target, bound, &mut mults)?;
        let one = Rational::one();
        for m in &mults {
            for s in self.constants.basis().to_vec() {
                let row = self.vector(&g.mul_term(&one, &m.mul(&s)))?;
                self.echelon.insert(row);
            }
        }
        Ok(())
    }

    /// Adds one explicit element of this degree to the submodule.
    pub fn add_element(&mut self, f: &Polynomial) -> Result<bool> {
        let row = self.vector(f)?;
        Ok(self.echelon.insert(row))
    }

    /// Whether `f` lies in the span of the generators in this degree.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.echelon.contains(self.vector(f)?))
    }

    /// Columns without a pivot, as monomials; their classes form a basis of
    /// the quotient piece.
    pub fn quotient_basis(&self) -> Vec<Monomial> {
        let pivots: std::collections::HashSet<usize> = self.echelon.pivot_columns().collect();
        (0..self.columns.len()).filter(|c| !pivots.contains(c)).map(|c| self.columns[c].clone()).collect()
    }

    pub fn echelon(&self) -> &SparseEchelon {
        &self.echelon
    }
}

/// Outcome of [`linear_membership_oracle`].
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub member: bool,
    #[serde(serialize_with = "ser_rational")]
    pub degree: Rational,
    pub piece_dim: usize,
    pub rank: usize,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::parse::format_rational(r))
}

/// Decides `f ∈ I + relations` in the degree of `f` by linear algebra on the
/// monomial basis of that graded piece.
pub fn linear_membership_oracle(
    f: &Polynomial,
    ideal: &IdealGens,
    relations: &IdealGens,
    bound: usize,
) -> Result<OracleReport> {
    let ring = ideal.ring();
    let f = f.embed(ring)?;
    let degree = if f.is_zero() {
        Rational::zero()
    } else {
        f.homogeneous_degree().ok_or_else(|| Error::Inhomogeneous(format!("{f} is not homogeneous")))?
    };
    let mut gens: Vec<Polynomial> = ideal.gens().to_vec();
    for r in relations.gens() {
        gens.push(r.embed(ring)?);
    }
    let piece = GradedPiece::new(ring, &degree, &gens, bound)?;
    let member = f.is_zero() || piece.contains(&f)?;
    Ok(OracleReport { member, degree, piece_dim: piece.ambient_dim(), rank: piece.rank() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, parse_polynomial_list};
    use crate::rational::{int, rat};

    fn graded(vars: &[(&str, Rational)]) -> Arc<Ring> {
        Ring::graded(vars.iter().map(|(n, d)| (n.to_string(), d.clone())).collect()).unwrap()
    }

    #[test]
    fn monomial_ideal_nonmember() {
        let r = graded(&[("x", int(1)), ("y", int(1))]);
        let i = IdealGens::new(&r, parse_polynomial_list(&r, "x^2, y^2").unwrap()).unwrap();
        let none = IdealGens::new(&r, vec![]).unwrap();
        let rep = linear_membership_oracle(&parse_polynomial(&r, "x*y").unwrap(), &i, &none, 100).unwrap();
        assert!(!rep.member);
        assert_eq!((rep.piece_dim, rep.rank), (3, 2));
    }

    #[test]
    fn fermat_cubic_degree_two() {
        let r = graded(&[("x", int(1)), ("y", int(1)), ("z", int(1))]);
        let i = IdealGens::new(&r, parse_polynomial_list(&r, "x, y").unwrap()).unwrap();
        let rel = IdealGens::new(&r, parse_polynomial_list(&r, "x^3 + y^3 + z^3").unwrap()).unwrap();
        let rep = linear_membership_oracle(&parse_polynomial(&r, "z^2").unwrap(), &i, &rel, 100).unwrap();
        assert!(!rep.member);
        assert_eq!(rep.piece_dim, 6);
        assert_eq!(rep.rank, 5);
        let rep = linear_membership_oracle(&parse_polynomial(&r, "z^3").unwrap(), &i, &rel, 100).unwrap();
        assert!(rep.member);
    }

    #[test]
    fn constants_act_as_coefficients() {
        let r = graded(&[("x", int(1)), ("w", int(0))]);
        let rel = IdealGens::new(&r, parse_polynomial_list(&r, "w^2 + w + 1").unwrap()).unwrap();
        let i = IdealGens::new(&r, parse_polynomial_list(&r, "(w - 1)*x").unwrap()).unwrap();
        // w - 1 is a unit in Q(w), so x is in the ideal.
        let rep = linear_membership_oracle(&parse_polynomial(&r, "x").unwrap(), &i, &rel, 100).unwrap();
        assert!(rep.member);
        assert_eq!(rep.piece_dim, 2);
    }

    #[test]
    fn fractional_degrees() {
        let r = graded(&[("u", rat(1, 2)), ("v", rat(1, 3))]);
        let piece = GradedPiece::new(&r, &int(1), &[], 100).unwrap();
        // u^2, v^3
        assert_eq!(piece.ambient_dim(), 2);
        let piece = GradedPiece::new(&r, &rat(1, 4), &[], 100).unwrap();
        assert_eq!(piece.ambient_dim(), 0);
    }

    #[test]
    fn piece_bound() {
        let r = graded(&[("x", int(1)), ("y", int(1)), ("z", int(1))]);
        let err = GradedPiece::new(&r, &int(10), &[], 20).unwrap_err();
        assert!(err.to_string().starts_with("piece too large"));
    }

    #[test]
    fn echelon_rank() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(vec![(0, int(1)), (2, int(1))]));
        assert!(e.insert(vec![(0, int(2)), (1, int(1))]));
        assert!(!e.insert(vec![(1, int(1)), (2, int(-2))]));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(vec![(0, int(3)), (1, int(1)), (2, int(1))]));
    }
}
