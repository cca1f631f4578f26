//! Graded dimensions of the second local cohomology of two-dimensional rings.
//!
//! Three independent routes: a count over the free basis `1, c, .., c^(e-1)`
//! of a hypersurface over its parameter subring, a truncated Čech colimit
//! computed by linear algebra on a presentation, and graded duality against
//! the Hilbert function.

use std::collections::BTreeMap;

use num::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{GradedPiece, DEFAULT_PIECE_BOUND};
use crate::parse::format_rational;
use crate::poly::Polynomial;
use crate::presentation::GradedPresentation;
use crate::rational::{denominator_lcm, int, Rational};

/// A weighted hypersurface `K[a,b,c]/(F)`, `F` monic of degree `e` in `c`,
/// viewed as a free module over `K[a,b]`. `e = 1` without a relation is the
/// polynomial ring `K[a,b]` itself.
#[derive(Clone, Debug)]
pub struct HypersurfaceDatum {
    pub label: String,
    pub w_a: Rational,
    pub w_b: Rational,
    pub w_c: Rational,
    pub e: u32,
    pub relation: Option<Polynomial>,
}

impl HypersurfaceDatum {
    /// Checks the weights and, when a relation is given, that it is
    /// homogeneous of degree `e * w_c` and monic of degree `e` in `last_var`.
    pub fn new(
        label: &str,
        (w_a, w_b, w_c): (Rational, Rational, Rational),
        e: u32,
        relation: Option<(Polynomial, &str)>,
    ) -> Result<Self> {
        if !w_a.is_positive() || !w_b.is_positive() || w_c.is_negative() || e == 0 {
            return Err(Error::Invalid(format!("{label}: weights must be positive and e >= 1")));
        }
        let relation = match relation {
            None if e == 1 => None,
            None => return Err(Error::Invalid(format!("{label}: e = {e} needs a relation"))),
            Some((f, var)) => {
                let ring = f.ring().clone();
                let v = ring.var_index(var)?;
                let want = &w_c * int(e.into());
                if f.homogeneous_degree().as_ref() != Some(&want) {
                    return Err(Error::Inhomogeneous(format!("{label}: relation is not homogeneous of degree {want}")));
                }
                let top: Vec<_> = f.terms().iter().filter(|(m, _)| m.exponents()[v] >= e).collect();
                let monic = top.len() == 1
                    && top[0].0.exponents()[v] == e
                    && top[0].0.pure_power() == Some((v, e))
                    && top[0].1.is_one();
                if !monic {
                    return Err(Error::Invalid(format!("{label}: relation is not monic of degree {e} in {var}")));
                }
                Some(f)
            }
        };
        Ok(HypersurfaceDatum { label: label.to_string(), w_a, w_b, w_c, e, relation })
    }

    /// `e * w_c - (w_a + w_b + w_c)`, the top degree of the canonical dual.
    pub fn a_invariant(&self) -> Rational {
        &self.w_c * int(self.e.into()) - (&self.w_a + &self.w_b + &self.w_c)
    }

    /// Finest degree step in which pieces can be nonzero.
    pub fn degree_step(&self) -> Rational {
        Rational::new(1.into(), denominator_lcm([&self.w_a, &self.w_b, &self.w_c]))
    }
}

/// Number of `(i, j)` with `i, j >= min` and `i * wa + j * wb = target`.
fn count_pairs(wa: &Rational, wb: &Rational, target: &Rational, min: u64) -> usize {
    let mut count = 0;
    let mut i = min;
    loop {
        let rest = target - wa * int(i as i64);
        if rest.is_negative() {
            break;
        }
        let j = &rest / wb;
        if j.is_integer() && j >= int(min as i64) {
            count += 1;
        }
        i += 1;
    }
    count
}

/// `#{(i, j, k) : i, j >= 0, 0 <= k < e, i w_a + j w_b + k w_c = d}`.
pub fn hilbert_dim(h: &HypersurfaceDatum, d: &Rational) -> usize {
    (0..h.e).map(|k| count_pairs(&h.w_a, &h.w_b, &(d - &h.w_c * int(k.into())), 0)).sum()
}

/// `#{(i, j, k) : i, j >= 1, 0 <= k < e, -i w_a - j w_b + k w_c = d}`,
/// counting the classes `c^k / (a^i b^j)`.
pub fn h2_dim_free_basis(h: &HypersurfaceDatum, d: &Rational) -> usize {
    (0..h.e).map(|k| count_pairs(&h.w_a, &h.w_b, &(&h.w_c * int(k.into()) - d), 1)).sum()
}

/// Graded duality: `dim H^2_d = dim A_(a - d)` with `a` the a-invariant.
pub fn h2_dim_duality(h: &HypersurfaceDatum, d: &Rational) -> usize {
    hilbert_dim(h, &(h.a_invariant() - d))
}

/// How a table was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Hilbert,
    FreeBasis,
    Truncated,
    Duality,
    Kunneth,
}

/// Level at which a truncated computation stabilized, with the ranks seen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub level: u32,
    pub ranks: Vec<usize>,
}

/// Degree-wise dimensions over the constant field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyTable {
    pub method: Method,
    #[serde(serialize_with = "ser_entries")]
    pub entries: BTreeMap<Rational, usize>,
    #[serde(serialize_with = "ser_stab")]
    pub stabilization: BTreeMap<Rational, Stabilization>,
}

fn ser_entries<S: serde::Serializer>(m: &BTreeMap<Rational, usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for (d, n) in m {
        seq.serialize_element(&(format_rational(d), n))?;
    }
    seq.end()
}

fn ser_stab<S: serde::Serializer>(m: &BTreeMap<Rational, Stabilization>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for (d, st) in m {
        seq.serialize_element(&(format_rational(d), st))?;
    }
    seq.end()
}

impl CohomologyTable {
    pub fn new(method: Method) -> Self {
        CohomologyTable { method, entries: BTreeMap::new(), stabilization: BTreeMap::new() }
    }

    pub fn get(&self, d: &Rational) -> usize {
        self.entries.get(d).copied().unwrap_or(0)
    }

    /// The entries with nonzero dimension.
    pub fn support(&self) -> BTreeMap<Rational, usize> {
        self.entries.iter().filter(|(_, &n)| n > 0).map(|(d, n)| (d.clone(), *n)).collect()
    }

    /// Same degrees and dimensions, ignoring method and metadata.
    pub fn agrees_with(&self, other: &CohomologyTable) -> bool {
        self.entries == other.entries
    }
}

impl std::fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(d, n)| format!("{}:{n}", format_rational(d))).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// An inclusive window `lo..=hi` walked in steps of `step`.
pub fn window(lo: &Rational, hi: &Rational, step: &Rational) -> Result<Vec<Rational>> {
    if lo > hi || !step.is_positive() {
        return Err(Error::Invalid(format!("empty degree window {}..{}", format_rational(lo), format_rational(hi))));
    }
    let mut out = Vec::new();
    let mut d = lo.clone();
    while &d <= hi {
        out.push(d.clone());
        d = &d + step;
    }
    Ok(out)
}

pub fn tabulate(method: Method, degrees: &[Rational], f: impl Fn(&Rational) -> usize) -> CohomologyTable {
    let mut t = CohomologyTable::new(method);
    for d in degrees {
        t.entries.insert(d.clone(), f(d));
    }
    t
}

/// Truncation levels tried before giving up.
pub const DEFAULT_T_MAX: u32 = 12;

/// Degree-`D_t` piece of `P/(f^t, g^t)` with `D_t = d + t (deg f + deg g)`,
/// or `None` when `D_t` is negative.
fn truncation(p: &GradedPresentation, f: &Polynomial, g: &Polynomial, d: &Rational, t: u32, bound: usize) -> Result<Option<GradedPiece>> {
    let s = f.homogeneous_degree().unwrap() + g.homogeneous_degree().unwrap();
    let deg = d + &s * int(t.into());
    if deg.is_negative() {
        return Ok(None);
    }
    let mut gens = p.relations().gens().to_vec();
    gens.push(f.pow(t));
    gens.push(g.pow(t));
    Ok(Some(GradedPiece::new(p.ring(), &deg, &gens, bound)?))
}

/// Rank over the rationals of multiplication by `m` from `src` to `dst`.
fn transition_rank(src: &GradedPiece, dst: &GradedPiece, m: &Polynomial) -> Result<usize> {
    let mut ech = dst.echelon().clone();
    let base = ech.rank();
    let one = Rational::one();
    for col in src.quotient_basis() {
        let img = m.mul_term(&one, &col);
        ech.insert(dst.vector(&img)?);
    }
    Ok(ech.rank() - base)
}

/// `dim H^2_d` of a two-dimensional presentation through the truncated Čech
/// colimit `V_t = [P/(f^t, g^t)]_(D_t)` with transitions `* fg`.
///
/// Stable once two consecutive transitions have the same rank and the image
/// of `V_t` survives into `V_(t+2)`; only levels with `D_t >= 0` count.
pub fn h2_dim_truncated(
    p: &GradedPresentation,
    (f, g): (&Polynomial, &Polynomial),
    d: &Rational,
    t_max: u32,
) -> Result<(usize, Stabilization)> {
    let bound = DEFAULT_PIECE_BOUND;
    for x in [f, g] {
        if x.is_zero() || !x.is_homogeneous() || !x.homogeneous_degree().unwrap().is_positive() {
            return Err(Error::Inhomogeneous(format!("parameter {x} must be homogeneous of positive degree")));
        }
    }
    let cdim = p.constant_dim()?;
    let fg = f * g;
    let fg2 = fg.pow(2);
    let mut pieces: Vec<Option<GradedPiece>> = Vec::new();
    let mut ranks = Vec::new();
    pieces.push(truncation(p, f, g, d, 1, bound)?);
    for t in 1..=t_max {
        let k = (t - 1) as usize;
        pieces.push(truncation(p, f, g, d, t + 1, bound)?);
        let (Some(a), Some(b)) = (&pieces[k], &pieces[k + 1]) else {
            ranks.push(0);
            continue;
        };
        let r = transition_rank(a, b, &fg)?;
        ranks.push(r);
        if t < 2 || pieces[k - 1].is_none() {
            continue;
        }
        let prev = ranks[k - 1];
        let a_prev = pieces[k - 1].as_ref().unwrap();
        if prev == r && transition_rank(a_prev, b, &fg2)? == prev {
            return Ok((r / cdim, Stabilization { level: t - 1, ranks: ranks.iter().map(|x| x / cdim).collect() }));
        }
    }
    Err(Error::Unstable { t_max, ranks: ranks.iter().map(|x| x / cdim).collect() })
}

/// Tabulates [`h2_dim_truncated`] over a window.
pub fn h2_table_truncated(
    p: &GradedPresentation,
    params: (&Polynomial, &Polynomial),
    degrees: &[Rational],
    t_max: u32,
) -> Result<CohomologyTable> {
    let mut t = CohomologyTable::new(Method::Truncated);
    for d in degrees {
        let (n, st) = h2_dim_truncated(p, params, d, t_max)?;
        t.entries.insert(d.clone(), n);
        t.stabilization.insert(d.clone(), st);
    }
    Ok(t)
}

/// Hilbert function and `H^2` table of a two-dimensional graded factor.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyPack {
    pub label: String,
    pub hilbert: CohomologyTable,
    pub h2: CohomologyTable,
    pub cohen_macaulay: bool,
}

impl CohomologyPack {
    /// Free-basis tables of a hypersurface, which is always Cohen-Macaulay.
    pub fn from_datum(h: &HypersurfaceDatum, degrees: &[Rational]) -> Self {
        CohomologyPack {
            label: h.label.clone(),
            hilbert: tabulate(Method::Hilbert, degrees, |d| hilbert_dim(h, d)),
            h2: tabulate(Method::FreeBasis, degrees, |d| h2_dim_free_basis(h, d)),
            cohen_macaulay: true,
        }
    }
}

/// `dim H^2(A#B)_n = dim A_n dim H^2(B)_n + dim H^2(A)_n dim B_n` for
/// Cohen-Macaulay factors of dimension 2.
pub fn kunneth_h2(a: &CohomologyPack, b: &CohomologyPack, degrees: &[Rational]) -> Result<CohomologyTable> {
    if !a.cohen_macaulay || !b.cohen_macaulay {
        return Err(Error::NonCohenMacaulay);
    }
    let mut t = CohomologyTable::new(Method::Kunneth);
    for n in degrees {
        for table in [&a.hilbert, &a.h2, &b.hilbert, &b.h2] {
            if !table.entries.contains_key(n) {
                return Err(Error::Invalid(format!("degree {} missing from a factor table", format_rational(n))));
            }
        }
        let v = a.hilbert.get(n) * b.h2.get(n) + a.h2.get(n) * b.hilbert.get(n);
        t.entries.insert(n.clone(), v);
    }
    Ok(t)
}

/// Hypersurface data of the named example rings.
pub mod data {
    use super::HypersurfaceDatum;
    use crate::budget::Budget;
    use crate::error::Result;
    use crate::rational::int;
    use crate::rings::{ex1_a, ex2_a, Alphas};

    pub fn ex1_a_datum(alphas: &Alphas) -> Result<HypersurfaceDatum> {
        let a = ex1_a(alphas, &Budget::unlimited())?;
        let rel = a.relations().gens()[0].clone();
        HypersurfaceDatum::new("ex1.A", (int(1), int(1), int(2)), 2, Some((rel, "c")))
    }

    pub fn ex2_a_datum() -> Result<HypersurfaceDatum> {
        let a = ex2_a(&Budget::unlimited())?;
        let rel = a.parse("z^3 + w^3*x^3 + w^6*y^3")?;
        HypersurfaceDatum::new("ex2.A", (int(1), int(1), int(1)), 3, Some((rel, "z")))
    }

    /// `K[s,t]`.
    pub fn b_datum() -> HypersurfaceDatum {
        HypersurfaceDatum::new("B", (int(1), int(1), int(0)), 1, None).expect("valid weights")
    }
}

#[cfg(test)]
mod tests {
    use super::data::*;
    use super::*;
    use crate::budget::Budget;
    use crate::rational::rat;
    use crate::rings::{ex1_a, ring_b, Alphas};

    fn degrees(lo: i64, hi: i64) -> Vec<Rational> {
        window(&int(lo), &int(hi), &int(1)).unwrap()
    }

    #[test]
    fn hilbert_counts() {
        let a = ex1_a_datum(&Alphas::default()).unwrap();
        assert_eq!(hilbert_dim(&a, &int(2)), 4);
        assert_eq!(hilbert_dim(&a, &int(0)), 1);
        assert_eq!(hilbert_dim(&ex2_a_datum().unwrap(), &int(3)), 9);
        assert_eq!(hilbert_dim(&b_datum(), &int(0)), 1);
        assert_eq!(hilbert_dim(&a, &rat(1, 2)), 0);
    }

    #[test]
    fn free_basis_h2() {
        let a = ex1_a_datum(&Alphas::default()).unwrap();
        assert_eq!(h2_dim_free_basis(&a, &int(0)), 1);
        assert_eq!(h2_dim_free_basis(&a, &int(1)), 0);
        let b = b_datum();
        assert!((0..5).all(|d| h2_dim_free_basis(&b, &int(d)) == 0));
        assert_eq!(h2_dim_free_basis(&b, &int(-2)), 1);
        assert_eq!(h2_dim_free_basis(&ex2_a_datum().unwrap(), &int(0)), 1);
    }

    #[test]
    fn datum_validation() {
        let a = ex1_a(&Alphas::default(), &Budget::default()).unwrap();
        let rel = a.relations().gens()[0].clone();
        assert!(HypersurfaceDatum::new("x", (int(1), int(1), int(1)), 2, Some((rel.clone(), "c"))).is_err());
        assert!(HypersurfaceDatum::new("x", (int(1), int(1), int(2)), 2, Some((rel.scale(&int(2)), "c"))).is_err());
        assert!(HypersurfaceDatum::new("x", (int(0), int(1), int(2)), 1, None).is_err());
    }

    #[test]
    fn truncated_agrees_on_b() {
        let b = ring_b(&Budget::default()).unwrap();
        let (s, t) = (b.var("s").unwrap(), b.var("t").unwrap());
        assert_eq!(h2_dim_truncated(&b, (&s, &t), &int(-2), 8).unwrap().0, 1);
        assert_eq!(h2_dim_truncated(&b, (&s, &t), &int(-3), 8).unwrap().0, 2);
        assert_eq!(h2_dim_truncated(&b, (&s, &t), &int(0), 8).unwrap().0, 0);
    }

    #[test]
    fn truncated_agrees_on_hypersurfaces() {
        let ds = degrees(-5, 3);
        let a = ex1_a(&Alphas::default(), &Budget::default()).unwrap();
        let (pa, pb) = (a.var("a").unwrap(), a.var("b").unwrap());
        let t = h2_table_truncated(&a, (&pa, &pb), &ds, 12).unwrap();
        let h = ex1_a_datum(&Alphas::default()).unwrap();
        assert!(t.agrees_with(&tabulate(Method::FreeBasis, &ds, |d| h2_dim_free_basis(&h, d))));
        assert!(t.agrees_with(&tabulate(Method::Duality, &ds, |d| h2_dim_duality(&h, d))));
        assert_eq!(t.get(&int(-5)), 10);

        let f = crate::rings::ex2_a(&Budget::default()).unwrap();
        let (x, y) = (f.var("x").unwrap(), f.var("y").unwrap());
        let t = h2_table_truncated(&f, (&x, &y), &ds, 12).unwrap();
        let h = ex2_a_datum().unwrap();
        assert!(t.agrees_with(&tabulate(Method::FreeBasis, &ds, |d| h2_dim_free_basis(&h, d))));
        assert_eq!(t.support(), BTreeMap::from([(int(-5), 15), (int(-4), 12), (int(-3), 9), (int(-2), 6), (int(-1), 3), (int(0), 1)]));
    }

    #[test]
    fn truncated_reports_instability() {
        let b = ring_b(&Budget::default()).unwrap();
        let (s, t) = (b.var("s").unwrap(), b.var("t").unwrap());
        let err = h2_dim_truncated(&b, (&s, &t), &int(-9), 3).unwrap_err();
        assert!(err.to_string().starts_with("unstable"));
    }

    #[test]
    fn kunneth_needs_cm() {
        let ds = degrees(-4, 4);
        let b = CohomologyPack::from_datum(&b_datum(), &ds);
        let mut bad = b.clone();
        bad.cohen_macaulay = false;
        assert_eq!(kunneth_h2(&bad, &b, &ds).unwrap_err(), Error::NonCohenMacaulay);
        let plain = kunneth_h2(&b, &b, &ds).unwrap();
        assert!(plain.support().is_empty());
    }
}
