//! Finitely presented graded rings and root adjunction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num::{ToPrimitive, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{cached_buchberger, GroebnerBasis, IdealGens};
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::rational::{denominator_lcm, parse_rational, DegreeQ, Rational};
use crate::ring::{Monomial, Ring};

/// A graded ring `Q[vars]/(relations)` with its relation basis.
#[derive(Clone, Debug)]
pub struct GradedPresentation {
    label: String,
    ring: Arc<Ring>,
    relations: IdealGens,
    basis: Arc<GroebnerBasis>,
    retired: Vec<String>,
}

fn check_relation(r: &Polynomial) -> Result<()> {
    if r.is_homogeneous() {
        return Ok(());
    }
    let degs: Vec<String> = r.degree_components().keys().map(|d| d.to_string()).collect();
    Err(Error::InhomogeneousRelation(format!("{r} splits into degrees {}", degs.join(", "))))
}

impl GradedPresentation {
    /// Validates homogeneity, computes the relation basis and rejects the
    /// zero ring.
    pub fn new(label: &str, ring: &Arc<Ring>, relations: Vec<Polynomial>, budget: &Budget) -> Result<Self> {
        Self::with_retired(label, ring, relations, Vec::new(), budget)
    }

    fn with_retired(
        label: &str,
        ring: &Arc<Ring>,
        relations: Vec<Polynomial>,
        retired: Vec<String>,
        budget: &Budget,
    ) -> Result<Self> {
        for r in &relations {
            check_relation(r)?;
        }
        let relations = IdealGens::new(ring, relations)?;
        let basis = cached_buchberger(&relations, false, 0..0, budget)?;
        if basis.is_unit_ideal() {
            return Err(Error::TrivialRing(label.to_string()));
        }
        Ok(GradedPresentation { label: label.to_string(), ring: ring.clone(), relations, basis, retired })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn relations(&self) -> &IdealGens {
        &self.relations
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// Variables eliminated by branch identifications.
    pub fn retired(&self) -> &[String] {
        &self.retired
    }

    pub fn var(&self, name: &str) -> Result<Polynomial> {
        Polynomial::var(&self.ring, name)
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        parse_polynomial(&self.ring, src)
    }

    pub fn parse_list(&self, src: &str) -> Result<Vec<Polynomial>> {
        crate::parse::parse_polynomial_list(&self.ring, src)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.basis.normal_form(f)
    }

    pub fn is_zero(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Renamed copy.
    pub fn relabel(&self, label: &str) -> Self {
        GradedPresentation { label: label.to_string(), ..self.clone() }
    }

    /// Krull dimension, read off the leading monomials of the relation basis
    /// as the largest set of positive-degree variables spanning no leading
    /// monomial.
    pub fn krull_dimension(&self) -> usize {
        let lms = self.basis.leading_monomials();
        let free: Vec<usize> = (0..self.ring.nvars()).filter(|&i| !self.ring.is_constant(i)).collect();
        let lm_sets: Vec<Vec<usize>> = lms
            .iter()
            .map(|m| m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect())
            .collect();
        fn rec(free: &[usize], k: usize, chosen: &mut Vec<bool>, lm_sets: &[Vec<usize>], best: &mut usize, size: usize) {
            if size + (free.len() - k) <= *best {
                return;
            }
            if k == free.len() {
                *best = size;
                return;
            }
            let v = free[k];
            chosen[v] = true;
            if !lm_sets.iter().any(|s| s.iter().all(|&i| chosen[i])) {
                rec(free, k + 1, chosen, lm_sets, best, size + 1);
            }
            chosen[v] = false;
            rec(free, k + 1, chosen, lm_sets, best, size);
        }
        let mut best = 0;
        let mut chosen = vec![false; self.ring.nvars()];
        rec(&free, 0, &mut chosen, &lm_sets, &mut best, 0);
        best
    }

    /// Number of standard monomials of degree `d`: the dimension over the
    /// rationals of the degree-`d` piece.
    pub fn piece_dim_over_q(&self, d: &Rational) -> Result<usize> {
        let ring = &self.ring;
        let lms = self.basis.leading_monomials();
        let l = denominator_lcm(ring.degrees());
        let scale = Rational::from_integer(l);
        let target = d * &scale;
        if !target.is_integer() || target < Rational::zero() {
            return Ok(0);
        }
        let target = target.to_integer().to_u64().ok_or_else(|| Error::Invalid("degree too large".into()))?;
        let weights: Vec<u64> = ring.degrees().iter().map(|x| (x * &scale).to_integer().to_u64().unwrap_or(0)).collect();
        // Constants are bounded by their pure-power leading monomials.
        let mut cap: HashMap<usize, u32> = HashMap::new();
        for m in &lms {
            if let Some((v, e)) = m.pure_power() {
                if ring.is_constant(v) {
                    let c = cap.entry(v).or_insert(e);
                    *c = (*c).min(e);
                }
            }
        }
        for v in (0..ring.nvars()).filter(|&v| ring.is_constant(v)) {
            if !cap.contains_key(&v) {
                return Err(Error::Invalid(format!("constant {} is not algebraic", ring.name(v))));
            }
        }
        let mut count = 0usize;
        let mut exps = vec![0u32; ring.nvars()];
        #[allow(clippy::too_many_arguments)]
        fn rec(
            k: usize,
            left: u64,
            ring: &Ring,
            weights: &[u64],
            cap: &HashMap<usize, u32>,
            lms: &[Monomial],
            exps: &mut Vec<u32>,
            count: &mut usize,
        ) {
            if lms.iter().any(|l| l.exponents().iter().zip(exps.iter()).all(|(a, b)| a <= b)) {
                return;
            }
            if k == ring.nvars() {
                if left == 0 {
                    *count += 1;
                }
                return;
            }
            let max = if ring.is_constant(k) { cap[&k] as u64 - 1 } else { left / weights[k] };
            for e in 0..=max {
                exps[k] = e as u32;
                rec(k + 1, left - e * weights[k], ring, weights, cap, lms, exps, count);
            }
            exps[k] = 0;
        }
        rec(0, target, ring, &weights, &cap, &lms, &mut exps, &mut count);
        Ok(count)
    }

    /// Dimension of the degree-0 constant algebra over the rationals.
    pub fn constant_dim(&self) -> Result<usize> {
        self.piece_dim_over_q(&Rational::zero())
    }

    /// Hilbert function over the constant field.
    pub fn hilbert_dim(&self, d: &Rational) -> Result<usize> {
        Ok(self.piece_dim_over_q(d)? / self.constant_dim()?)
    }

    /// Parses the plain-text presentation format.
    pub fn from_text(src: &str, budget: &Budget) -> Result<Self> {
        let mut section = "";
        let mut label = String::new();
        let mut vars: Vec<(String, Rational)> = Vec::new();
        let mut rels: Vec<String> = Vec::new();
        let mut blocks: Vec<Vec<String>> = Vec::new();
        for (lineno, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line {
                "LABEL" | "VARS" | "RELS" | "ORDER" => {
                    section = match line {
                        "LABEL" => "LABEL",
                        "VARS" => "VARS",
                        "RELS" => "RELS",
                        _ => "ORDER",
                    };
                    continue;
                }
                _ => {}
            }
            let bad = |msg: &str| Error::PresentationFormat(format!("line {}: {msg}", lineno + 1));
            match section {
                "LABEL" => label = line.to_string(),
                "VARS" => {
                    for item in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
                        let (name, deg) = item.split_once(':').ok_or_else(|| bad("expected name:degree"))?;
                        vars.push((name.trim().to_string(), parse_rational(deg.trim())?));
                    }
                }
                "RELS" => rels.push(line.to_string()),
                "ORDER" => blocks.push(
                    line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(String::from).collect(),
                ),
                _ => return Err(bad("content before the first section header")),
            }
        }
        if vars.is_empty() {
            return Err(Error::PresentationFormat("no VARS section".into()));
        }
        let ring = if blocks.is_empty() { Ring::graded(vars)? } else { Ring::new(vars, blocks)? };
        let relations = rels.iter().map(|r| parse_polynomial(&ring, r)).collect::<Result<Vec<_>>>()?;
        let label = if label.is_empty() { "unnamed".to_string() } else { label };
        GradedPresentation::new(&label, &ring, relations, budget)
    }

    /// Inverse of [`GradedPresentation::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("LABEL\n{}\nVARS\n", self.label);
        for (n, d) in self.ring.vars_with_degrees() {
            out.push_str(&format!("{n}:{}\n", crate::parse::format_rational(&d)));
        }
        out.push_str("RELS\n");
        for r in self.relations.gens() {
            out.push_str(&format!("{r}\n"));
        }
        out.push_str("ORDER\n");
        for b in self.ring.block_names() {
            out.push_str(&b.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for GradedPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} / ({} relations)", self.label, self.ring, self.relations.len())
    }
}

/// Parses relations in freshly declared variables and presents the ring.
pub fn present_ring(
    vars: &[(&str, Rational)],
    blocks: Option<&[&[&str]]>,
    relations: &[&str],
    label: &str,
    budget: &Budget,
) -> Result<GradedPresentation> {
    let vars: Vec<(String, Rational)> = vars.iter().map(|(n, d)| (n.to_string(), d.clone())).collect();
    let ring = match blocks {
        Some(b) => Ring::new(vars, b.iter().map(|blk| blk.iter().map(|s| s.to_string()).collect()).collect())?,
        None => Ring::graded(vars)?,
    };
    let rels = relations.iter().map(|r| parse_polynomial(&ring, r)).collect::<Result<Vec<_>>>()?;
    GradedPresentation::new(label, &ring, rels, budget)
}

/// One `y^e = f` adjunction.
#[derive(Clone, Debug)]
pub struct RootSpec {
    pub name: String,
    pub exponent: u32,
    pub radicand: Polynomial,
}

impl RootSpec {
    pub fn new(name: &str, exponent: u32, radicand: Polynomial) -> Self {
        RootSpec { name: name.to_string(), exponent, radicand }
    }
}

#[derive(Clone, Debug)]
struct Branch {
    var: String,
    value: Polynomial,
    exponent: u32,
}

/// Adjoins roots to a parent presentation, then optionally identifies
/// existing variables with expressions in the new ones.
///
/// Positive-degree roots go into a fresh newest block; each degree-0 root
/// gets its own block behind all positive-degree blocks. A branch identification `v = value`
/// moves `v` into a top block of retired variables and substitutes `value`
/// for `v` in every other relation.
#[derive(Clone, Debug)]
pub struct TowerStep {
    parent: GradedPresentation,
    roots: Vec<RootSpec>,
    ring: Arc<Ring>,
    branches: Vec<Branch>,
}

impl TowerStep {
    pub fn new(parent: &GradedPresentation, roots: Vec<RootSpec>) -> Result<Self> {
        let mut step = TowerStep { parent: parent.clone(), roots: Vec::new(), ring: parent.ring().clone(), branches: Vec::new() };
        step.adjoin(roots)?;
        Ok(step)
    }

    /// Adjoins further roots whose radicands may involve earlier roots of
    /// this step. Each call opens a new newest block; every degree-0 root
    /// gets its own block after the positive-degree blocks, newest first.
    pub fn adjoin(&mut self, roots: Vec<RootSpec>) -> Result<&mut Self> {
        let mut vars = self.ring.vars_with_degrees();
        let mut fresh = Vec::new();
        let mut consts = Vec::new();
        for r in &roots {
            if r.exponent < 2 {
                return Err(Error::NotProperRoot(r.exponent));
            }
            let f = r.radicand.embed(&self.ring)?;
            let d = f
                .homogeneous_degree()
                .ok_or_else(|| Error::Inhomogeneous(format!("radicand {f} of {} is not homogeneous", r.name)))?;
            let deg = d / Rational::from_integer(r.exponent.into());
            if deg.is_zero() {
                consts.push(r.name.clone());
            } else {
                fresh.push(r.name.clone());
            }
            vars.push((r.name.clone(), deg));
        }
        let mut blocks = self.ring.block_names();
        let positive = |b: &Vec<String>| b.iter().any(|v| self.ring.index_of(v).is_some_and(|i| !self.ring.is_constant(i)));
        let split = blocks.iter().rposition(positive).map_or(0, |k| k + 1);
        for c in consts {
            blocks.insert(split, vec![c]);
        }
        if !fresh.is_empty() {
            blocks.insert(usize::from(!self.parent.retired.is_empty()), fresh);
        }
        self.ring = Ring::new(vars, blocks)?;
        for b in &mut self.branches {
            b.value = b.value.embed(&self.ring)?;
        }
        self.roots.extend(roots);
        Ok(self)
    }

    /// The ring containing the parent variables and the new roots.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn var(&self, name: &str) -> Result<Polynomial> {
        Polynomial::var(&self.ring, name)
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        parse_polynomial(&self.ring, src)
    }

    /// Records `var = value`; `exponent` is the power used to validate it.
    pub fn branch(&mut self, var: &str, value: Polynomial, exponent: u32) -> Result<&mut Self> {
        self.ring.var_index(var)?;
        let value = value.embed(&self.ring)?;
        if !value.is_homogeneous() || value.homogeneous_degree().as_ref() != Some(self.ring.degree_of(self.ring.var_index(var)?)) {
            return Err(Error::Inhomogeneous(format!("branch value {value} does not match the degree of {var}")));
        }
        self.branches.push(Branch { var: var.to_string(), value, exponent });
        Ok(self)
    }

    fn root_relations(&self) -> Result<Vec<Polynomial>> {
        let mut rels = Vec::new();
        for r in self.parent.relations().gens() {
            rels.push(r.embed(&self.ring)?);
        }
        for r in &self.roots {
            rels.push(&self.var(&r.name)?.pow(r.exponent) - &r.radicand.embed(&self.ring)?);
        }
        Ok(rels)
    }

    /// Builds the new presentation.
    pub fn finish(&self, label: &str, budget: &Budget) -> Result<GradedPresentation> {
        let mut rels = self.root_relations()?;
        if !self.branches.is_empty() {
            let pre = IdealGens::new(&self.ring, rels.clone())?;
            let gb = cached_buchberger(&pre, false, 0..0, budget)?;
            for b in &self.branches {
                let v = self.var(&b.var)?;
                let diff = &b.value.pow(b.exponent) - &v.pow(b.exponent);
                let nf = gb.normal_form_budgeted(&diff, budget)?;
                if !nf.is_zero() {
                    return Err(Error::Invalid(format!(
                        "branch {} = {} is inconsistent: power difference reduces to {nf}",
                        b.var, b.value
                    )));
                }
            }
        }
        // Substitute branch values, oldest identifications first.
        let mut retired: Vec<String> = self.parent.retired.clone();
        let mut own: Vec<(usize, Polynomial)> = Vec::new();
        let n = self.ring.nvars();
        for b in &self.branches {
            let idx = self.ring.var_index(&b.var)?;
            let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var_index(&self.ring, i)).collect();
            images[idx] = b.value.clone();
            let subst = |p: &Polynomial| p.evaluate(&images);
            let value = subst(&b.value)?;
            if value.involves(idx) {
                return Err(Error::Invalid(format!("branch value for {} involves {}", b.var, b.var)));
            }
            rels = rels.iter().map(subst).collect::<Result<Vec<_>>>()?;
            for (_, val) in own.iter_mut() {
                *val = subst(val)?;
            }
            own.push((idx, value));
            retired.push(b.var.clone());
        }
        for (idx, val) in &own {
            rels.push(&Polynomial::var_index(&self.ring, *idx) - val);
        }
        let rels: Vec<Polynomial> = rels.into_iter().filter(|r| !r.is_zero()).collect();

        let ring = if self.branches.is_empty() {
            self.ring.clone()
        } else {
            let mut blocks: Vec<Vec<String>> = self
                .ring
                .block_names()
                .into_iter()
                .map(|b| b.into_iter().filter(|v| !retired.contains(v)).collect::<Vec<_>>())
                .filter(|b| !b.is_empty())
                .collect();
            blocks.insert(0, retired.clone());
            Ring::new(self.ring.vars_with_degrees(), blocks)?
        };
        let rels = rels.iter().map(|r| r.embed(&ring)).collect::<Result<Vec<_>>>()?;
        GradedPresentation::with_retired(label, &ring, rels, retired, budget)
    }
}

/// [`TowerStep`] without branch identifications.
pub fn adjoin_root(
    parent: &GradedPresentation,
    name: &str,
    radicand: &Polynomial,
    exponent: u32,
    label: &str,
    budget: &Budget,
) -> Result<GradedPresentation> {
    TowerStep::new(parent, vec![RootSpec::new(name, exponent, radicand.clone())])?.finish(label, budget)
}

/// Membership proof in `I + relations`.
///
/// `ideal_part` multiplies the generators of `I`; `relation_part` multiplies
/// the elements of the presentation's reduced relation basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientCertificate {
    #[serde(serialize_with = "crate::groebner::ser_poly")]
    pub target: Polynomial,
    #[serde(serialize_with = "crate::groebner::ser_cofactors")]
    pub ideal_part: Vec<(Polynomial, usize)>,
    #[serde(skip)]
    pub relation_part: Vec<(Polynomial, usize)>,
}

impl QuotientCertificate {
    /// `target - ideal part - relation part`, exactly.
    pub fn residual(&self, p: &GradedPresentation, ideal: &[Polynomial]) -> Result<Polynomial> {
        let mut acc = self.target.clone();
        for (c, j) in &self.ideal_part {
            let g = ideal.get(*j).ok_or_else(|| Error::Invalid(format!("ideal index {j} out of range")))?;
            acc = acc.checked_sub(&c.checked_mul(&g.embed(p.ring())?)?)?;
        }
        for (c, j) in &self.relation_part {
            let g = p.basis().basis().get(*j).ok_or_else(|| Error::Invalid(format!("relation index {j} out of range")))?;
            acc = acc.checked_sub(&c.checked_mul(g)?)?;
        }
        Ok(acc)
    }

    pub fn verify(&self, p: &GradedPresentation, ideal: &[Polynomial]) -> bool {
        matches!(self.residual(p, ideal), Ok(r) if r.is_zero())
    }

    /// Number of terms in the reported cofactors.
    pub fn size(&self) -> usize {
        self.ideal_part.iter().map(|(c, _)| c.len()).sum()
    }

    pub fn cofactor_for(&self, index: usize) -> Option<&Polynomial> {
        self.ideal_part.iter().find(|(_, j)| *j == index).map(|(c, _)| c)
    }
}

#[derive(Clone, Debug)]
pub enum QuotientMembership {
    In(QuotientCertificate),
    Out { normal_form: Polynomial },
}

impl QuotientMembership {
    pub fn is_in(&self) -> bool {
        matches!(self, QuotientMembership::In(_))
    }
}

/// Decides `f ∈ I + relations(P)`.
pub fn quotient_member(
    p: &GradedPresentation,
    f: &Polynomial,
    ideal: &[Polynomial],
    budget: &Budget,
) -> Result<QuotientMembership> {
    let ring = p.ring();
    let f = f.embed(ring)?;
    let mut gens: Vec<Polynomial> = ideal.iter().map(|g| g.embed(ring)).collect::<Result<_>>()?;
    let n = gens.len();
    if gens.iter().any(Polynomial::is_zero) {
        return Err(Error::Invalid("zero generator in ideal".into()));
    }
    gens.extend(p.basis().basis().iter().cloned());
    let all = IdealGens::new(ring, gens)?;
    let gb = cached_buchberger(&all, true, n..all.len(), budget)?;
    match gb.certify(&f, budget)? {
        Err(normal_form) => Ok(QuotientMembership::Out { normal_form }),
        Ok(cert) => {
            let (ideal_part, relation_part): (Vec<_>, Vec<_>) = cert.cofactors.into_iter().partition(|(_, j)| *j < n);
            let relation_part = relation_part.into_iter().map(|(c, j)| (c, j - n)).collect();
            Ok(QuotientMembership::In(QuotientCertificate { target: f, ideal_part, relation_part }))
        }
    }
}

/// `u * numerator ∈ target + relations` with `v(u) = epsilon > 0`.
#[derive(Clone, Debug, Serialize)]
pub struct AnnihilatorCertificate {
    pub level: String,
    #[serde(serialize_with = "crate::groebner::ser_poly")]
    pub u: Polynomial,
    pub epsilon: DegreeQ,
    #[serde(serialize_with = "crate::groebner::ser_poly")]
    pub numerator: Polynomial,
    #[serde(skip)]
    pub target: Vec<Polynomial>,
    pub certificate: QuotientCertificate,
}

impl AnnihilatorCertificate {
    /// Proves `u * numerator ∈ target + relations(p)`.
    pub fn prove(
        p: &GradedPresentation,
        u: &Polynomial,
        numerator: &Polynomial,
        target: &[Polynomial],
        budget: &Budget,
    ) -> Result<std::result::Result<Self, Polynomial>> {
        let prod = u.embed(p.ring())?.checked_mul(&numerator.embed(p.ring())?)?;
        match quotient_member(p, &prod, target, budget)? {
            QuotientMembership::Out { normal_form } => Ok(Err(normal_form)),
            QuotientMembership::In(certificate) => Ok(Ok(AnnihilatorCertificate {
                level: p.label().to_string(),
                u: u.embed(p.ring())?,
                epsilon: u.order_valuation(),
                numerator: numerator.embed(p.ring())?,
                target: target.iter().map(|g| g.embed(p.ring())).collect::<Result<_>>()?,
                certificate,
            })),
        }
    }

    /// Re-checks every invariant from scratch.
    pub fn verify(&self, p: &GradedPresentation) -> bool {
        let Ok(prod) = self.u.checked_mul(&self.numerator) else { return false };
        self.epsilon.is_positive()
            && self.u.order_valuation() == self.epsilon
            && self.certificate.target == prod
            && self.certificate.verify(p, &self.target)
    }
}

/// Degree distribution of a presentation's variables, for reports.
pub fn degree_table(ring: &Ring) -> BTreeMap<String, String> {
    ring.vars_with_degrees().into_iter().map(|(n, d)| (n, crate::parse::format_rational(&d))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn budget() -> Budget {
        Budget::default()
    }

    fn ex1_a() -> GradedPresentation {
        present_ring(
            &[("a", int(1)), ("b", int(1)), ("c", int(2))],
            Some(&[&["c"], &["a", "b"]]),
            &["c^2 - a*(a-b)*(a-2*b)*(a-3*b)"],
            "ex1.A",
            &budget(),
        )
        .unwrap()
    }

    #[test]
    fn hypersurface_s() {
        let s = present_ring(
            &[("x", int(1)), ("y", int(1)), ("z", int(1)), ("w", int(1))],
            None,
            &["x*y - z*w"],
            "S",
            &budget(),
        )
        .unwrap();
        assert_eq!(s.krull_dimension(), 3);
        assert_eq!(s.hilbert_dim(&int(2)).unwrap(), 9);
    }

    #[test]
    fn inhomogeneous_and_trivial() {
        let err = present_ring(&[("a", int(1)), ("b", int(1)), ("c", int(1))], None, &["c^2 - a*(a-b)*(a-2*b)*(a-3*b)"], "bad", &budget())
            .unwrap_err();
        assert!(err.to_string().starts_with("inhomogeneous relation"));
        let err = present_ring(&[("a", int(1))], None, &["1"], "zero", &budget()).unwrap_err();
        assert!(matches!(err, Error::TrivialRing(_)));
    }

    #[test]
    fn hilbert_of_a() {
        let a = ex1_a();
        assert_eq!(a.krull_dimension(), 2);
        assert_eq!(a.hilbert_dim(&int(0)).unwrap(), 1);
        assert_eq!(a.hilbert_dim(&int(2)).unwrap(), 4);
        assert_eq!(a.hilbert_dim(&rat(1, 2)).unwrap(), 0);
    }

    #[test]
    fn square_root_degree() {
        let a = ex1_a();
        let r1 = adjoin_root(&a, "r1", &a.parse("a").unwrap(), 2, "ex1.A.r1", &budget()).unwrap();
        let v = r1.var("r1").unwrap();
        assert_eq!(v.order_valuation(), DegreeQ::Finite(rat(1, 2)));
        let err = adjoin_root(&a, "r", &a.parse("a").unwrap(), 1, "x", &budget()).unwrap_err();
        assert_eq!(err, Error::NotProperRoot(1));
    }

    #[test]
    fn depth_one_square_roots_annihilate_c() {
        let a = ex1_a();
        let roots = ["a", "a - b", "a - 2*b", "a - 3*b"]
            .iter()
            .enumerate()
            .map(|(i, f)| RootSpec::new(&format!("r{}", i + 1), 2, a.parse(f).unwrap()))
            .collect();
        let mut step = TowerStep::new(&a, roots).unwrap();
        let prod = step.parse("r1*r2*r3*r4").unwrap();
        step.branch("c", prod, 2).unwrap();
        let p = step.finish("ex1.A.depth1", &budget()).unwrap();
        assert_eq!(p.retired(), ["c".to_string()]);
        let ideal = p.parse_list("a, b").unwrap();
        let cert = AnnihilatorCertificate::prove(&p, &p.var("r1").unwrap(), &p.var("c").unwrap(), &ideal, &budget())
            .unwrap()
            .unwrap();
        assert!(cert.verify(&p));
        assert_eq!(cert.epsilon, DegreeQ::Finite(rat(1, 2)));

        let mut bad = cert.clone();
        bad.certificate.ideal_part[0].0 = &bad.certificate.ideal_part[0].0 + &p.var("a").unwrap();
        assert!(!bad.verify(&p));
    }

    #[test]
    fn c_not_in_ab() {
        let a = ex1_a();
        let out = quotient_member(&a, &a.var("c").unwrap(), &a.parse_list("a, b").unwrap(), &budget()).unwrap();
        assert!(matches!(out, QuotientMembership::Out { normal_form } if normal_form == a.var("c").unwrap()));
        let z = quotient_member(&a, &a.var("c").unwrap(), &a.parse_list("c").unwrap(), &budget()).unwrap();
        assert!(z.is_in());
    }

    #[test]
    fn inconsistent_branch_rejected() {
        let a = ex1_a();
        let mut step = TowerStep::new(&a, vec![RootSpec::new("r1", 2, a.parse("a").unwrap())]).unwrap();
        let v = step.parse("r1^4").unwrap();
        step.branch("c", v, 2).unwrap();
        assert!(step.finish("bad", &budget()).is_err());
    }

    #[test]
    fn text_round_trip() {
        let a = ex1_a();
        let txt = a.to_text();
        let b = GradedPresentation::from_text(&txt, &budget()).unwrap();
        assert_eq!(b.label(), "ex1.A");
        assert_eq!(b.ring().block_names(), a.ring().block_names());
        assert_eq!(b.relations().gens(), a.relations().gens());
        assert!(GradedPresentation::from_text("RELS\nx\n", &budget()).is_err());
    }
}
