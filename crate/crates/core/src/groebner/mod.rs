//! Groebner bases over the rationals with reduction traces.
//!
//! Every membership claim in the crate goes through this module: normal forms,
//! certificates re-expanding a target as a combination of generators, colon
//! ideals and kernels of ring maps (both by elimination).

mod buchberger;
mod cache;
mod ops;
mod reduce;

use std::sync::Arc;

use serde::Serialize;

pub use buchberger::GbStats;
pub use cache::{cached_buchberger, BasisCache};
pub use ops::{colon_ideal, ideal_member, normal_form, ring_map_kernel};
pub use reduce::{divide, Division};

use crate::budget::{annotate, Budget};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};

/// A list of generators over one ambient ring (zero generators dropped).
#[derive(Clone, Debug, PartialEq)]
pub struct IdealGens {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
}

impl IdealGens {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !g.same_ambient(&Polynomial::zero(ring)) {
                return Err(Error::AmbientMismatch);
            }
        }
        Ok(IdealGens { ring: ring.clone(), gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// Concatenation of generator lists.
    pub fn join(&self, other: &IdealGens) -> Result<IdealGens> {
        let mut gens = self.gens.clone();
        for g in &other.gens {
            gens.push(g.embed(&self.ring)?);
        }
        IdealGens::new(&self.ring, gens)
    }

    pub(crate) fn cache_key(&self, track: bool) -> String {
        let mut key = format!("{}|{:?}|{}", self.ring, self.ring.block_names(), track);
        for g in &self.gens {
            key.push('|');
            key.push_str(&g.to_canonical_string());
        }
        key
    }
}

/// Reduced Groebner basis of an [`IdealGens`].
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    basis: Vec<Polynomial>,
    origin: IdealGens,
    stats: GbStats,
    cofactors: Option<Vec<Vec<Polynomial>>>,
}

impl GroebnerBasis {
    /// Computes the reduced basis without cofactor tracking.
    pub fn compute(ideal: &IdealGens, budget: &Budget) -> Result<GroebnerBasis> {
        Self::compute_with(ideal, false, 0..0, budget)
    }

    /// Computes the reduced basis and expresses every element in the
    /// original generators.
    pub fn compute_tracked(ideal: &IdealGens, budget: &Budget) -> Result<GroebnerBasis> {
        Self::compute_with(ideal, true, 0..0, budget)
    }

    /// `known_gb` marks a range of generators that already form a Groebner
    /// basis among themselves; their mutual S-pairs are skipped.
    pub fn compute_with(
        ideal: &IdealGens,
        track: bool,
        known_gb: std::ops::Range<usize>,
        budget: &Budget,
    ) -> Result<GroebnerBasis> {
        if ideal.gens.is_empty() {
            return Ok(GroebnerBasis {
                basis: Vec::new(),
                origin: ideal.clone(),
                stats: GbStats::default(),
                cofactors: track.then(Vec::new),
            });
        }
        let c = buchberger::complete(&ideal.ring, &ideal.gens, track, known_gb, budget)?;
        Ok(GroebnerBasis { basis: c.basis, origin: ideal.clone(), stats: c.stats, cofactors: c.cofactors })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.origin.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn origin(&self) -> &IdealGens {
        &self.origin
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn cofactors(&self) -> Option<&[Vec<Polynomial>]> {
        self.cofactors.as_deref()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(divide(&f.embed(self.ring())?, &self.basis, false, &Budget::unlimited())?.remainder)
    }

    pub fn normal_form_budgeted(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        Ok(divide(&f.embed(self.ring())?, &self.basis, false, budget)?.remainder)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether `m` is divisible by no leading monomial.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.basis.iter().any(|g| g.leading_monomial().unwrap().divides(m))
    }

    /// A certificate for `f`, or the nonzero normal form when `f` is not in
    /// the ideal. Requires a tracked basis.
    pub fn certify(&self, f: &Polynomial, budget: &Budget) -> Result<std::result::Result<MembershipCertificate, Polynomial>> {
        let f = f.embed(self.ring())?;
        let cof = self
            .cofactors
            .as_ref()
            .ok_or_else(|| Error::Invalid("certificate requested from an untracked basis".into()))?;
        let div = divide(&f, &self.basis, true, budget).map_err(|e| annotate(e, || "while certifying".into()))?;
        if !div.remainder.is_zero() {
            return Ok(Err(div.remainder));
        }
        let quots = div.quotients.expect("requested");
        let ring = self.ring();
        let mut acc = vec![Polynomial::zero(ring); self.origin.gens.len()];
        for (k, q) in quots.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (j, c) in cof[k].iter().enumerate() {
                if !c.is_zero() {
                    acc[j] = &acc[j] + &(q * c);
                }
            }
        }
        let cofactors = acc.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(j, p)| (p, j)).collect();
        Ok(Ok(MembershipCertificate { target: f, cofactors }))
    }

    /// Recomputes every S-polynomial of basis pairs and checks it reduces to 0.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let budget = Budget::unlimited();
        let one = num::BigRational::from_integer(1.into());
        for j in 0..self.basis.len() {
            for i in 0..j {
                let (gi, gj) = (&self.basis[i], &self.basis[j]);
                let (li, lj) = (gi.leading_monomial().unwrap(), gj.leading_monomial().unwrap());
                let l = li.lcm(lj);
                let s = gi.mul_term(&one, &li.quotient_of(&l).unwrap()).sub_mul_term(&one, &lj.quotient_of(&l).unwrap(), gj);
                match divide(&s, &self.basis, false, &budget) {
                    Ok(d) if d.remainder.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Monic, and no term of any element divisible by another's leading monomial.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.basis.iter().enumerate().all(|(k, g)| {
            g.leading_coeff().map(|c| *c == num::BigRational::from_integer(1.into())).unwrap_or(false)
                && g.terms().iter().all(|(m, _)| lms.iter().enumerate().all(|(j, l)| j == k || !l.divides(m)))
        })
    }
}

/// `target = sum cofactor * generators[index]`, exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipCertificate {
    #[serde(serialize_with = "ser_poly")]
    pub target: Polynomial,
    #[serde(serialize_with = "ser_cofactors")]
    pub cofactors: Vec<(Polynomial, usize)>,
}

impl MembershipCertificate {
    /// `target - sum cofactor*generator`; zero iff the certificate is sound.
    pub fn residual(&self, gens: &[Polynomial]) -> Result<Polynomial> {
        let mut acc = self.target.clone();
        for (c, j) in &self.cofactors {
            let g = gens.get(*j).ok_or_else(|| Error::Invalid(format!("generator index {j} out of range")))?;
            acc = acc.checked_sub(&c.checked_mul(g)?)?;
        }
        Ok(acc)
    }

    pub fn verify(&self, gens: &[Polynomial]) -> bool {
        matches!(self.residual(gens), Ok(r) if r.is_zero())
    }

    /// Total number of terms across all cofactors.
    pub fn size(&self) -> usize {
        self.cofactors.iter().map(|(c, _)| c.len()).sum()
    }

    pub fn cofactor_for(&self, index: usize) -> Option<&Polynomial> {
        self.cofactors.iter().find(|(_, j)| *j == index).map(|(c, _)| c)
    }
}

/// Outcome of an ideal-membership query.
#[derive(Clone, Debug)]
pub enum Membership {
    In(MembershipCertificate),
    Out { normal_form: Polynomial },
}

impl Membership {
    pub fn is_in(&self) -> bool {
        matches!(self, Membership::In(_))
    }
}

pub(crate) fn ser_poly<S: serde::Serializer>(p: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_canonical_string())
}

pub(crate) fn ser_cofactors<S: serde::Serializer>(
    c: &[(Polynomial, usize)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(c.len()))?;
    for (p, j) in c {
        seq.serialize_element(&(p.to_canonical_string(), j))?;
    }
    seq.end()
}
