use std::sync::Arc;

use super::{cached_buchberger, GroebnerBasis, IdealGens, Membership};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::ring::Ring;

pub(crate) const TAG_VARIABLE: &str = "_tau";

/// Remainder of `f` modulo a Groebner basis.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

/// Decides `f ∈ I`. Membership comes with a certificate over the generators
/// of `I`; non-membership with the nonzero normal form.
pub fn ideal_member(f: &Polynomial, ideal: &IdealGens, budget: &Budget) -> Result<Membership> {
    if !f.same_ambient(&Polynomial::zero(ideal.ring())) {
        return Err(Error::AmbientMismatch);
    }
    if f.is_zero() {
        return Ok(Membership::In(super::MembershipCertificate { target: f.clone(), cofactors: Vec::new() }));
    }
    if ideal.is_empty() {
        return Ok(Membership::Out { normal_form: f.clone() });
    }
    let gb = cached_buchberger(ideal, true, 0..0, budget)?;
    Ok(match gb.certify(f, budget)? {
        Ok(cert) => Membership::In(cert),
        Err(normal_form) => Membership::Out { normal_form },
    })
}

/// Generators of `(I : f)`, from `I ∩ (f) = (τI + (1-τ)f) ∩ K[vars]`
/// divided by `f`.
pub fn colon_ideal(ideal: &IdealGens, f: &Polynomial, budget: &Budget) -> Result<IdealGens> {
    let ring = ideal.ring();
    if f.is_zero() {
        return Err(Error::Invalid("colon by the zero polynomial".into()));
    }
    if !f.same_ambient(&Polynomial::zero(ring)) {
        return Err(Error::AmbientMismatch);
    }
    if ring.index_of(TAG_VARIABLE).is_some() {
        return Err(Error::InvalidRing(format!("variable name `{TAG_VARIABLE}` is reserved")));
    }
    let mut vars = vec![(TAG_VARIABLE.to_string(), Rational::from_integer(0.into()))];
    vars.extend(ring.vars_with_degrees());
    let mut blocks = vec![vec![TAG_VARIABLE.to_string()]];
    blocks.extend(ring.block_names());
    let big = Ring::new(vars, blocks)?;
    let tau = Polynomial::var(&big, TAG_VARIABLE)?;
    let one_minus = &Polynomial::one(&big) - &tau;
    let mut gens = Vec::with_capacity(ideal.len() + 1);
    for g in ideal.gens() {
        gens.push(&tau * &g.embed(&big)?);
    }
    gens.push(&one_minus * &f.embed(&big)?);
    let gb = cached_buchberger(&IdealGens::new(&big, gens)?, false, 0..0, budget)?;
    let t = big.var_index(TAG_VARIABLE)?;
    let mut out = Vec::new();
    for g in gb.basis().iter().filter(|g| !g.involves(t)) {
        let g = g.embed(ring)?;
        out.push(g.exact_div(f)?);
    }
    IdealGens::new(ring, out)
}

/// Kernel of the map sending source variable `i` to `images[i]`, where the
/// images live in the target ring modulo `target_relations`.
///
/// Degree-0 target variables are treated as coefficients and shared with the
/// source ring. Returns the source ring together with the kernel generators.
pub fn ring_map_kernel(
    source_vars: &[(String, Rational)],
    images: &[Polynomial],
    target_relations: &[Polynomial],
    budget: &Budget,
) -> Result<(Arc<Ring>, IdealGens)> {
    if source_vars.len() != images.len() {
        return Err(Error::Invalid(format!("{} source variables but {} images", source_vars.len(), images.len())));
    }
    let Some(target) = images.first().map(|p| p.ring().clone()) else {
        return Err(Error::Invalid("empty ring map".into()));
    };
    for ((name, deg), img) in source_vars.iter().zip(images) {
        let img = img.embed(&target)?;
        if img.is_zero() {
            continue;
        }
        match img.homogeneous_degree() {
            Some(d) if &d == deg => {}
            Some(d) => return Err(Error::InhomogeneousImage(format!("{name} has degree {deg} but its image has degree {d}"))),
            None => return Err(Error::InhomogeneousImage(format!("image of {name} is not homogeneous"))),
        }
    }
    let (eliminated, constants): (Vec<usize>, Vec<usize>) = (0..target.nvars()).partition(|&i| !target.is_constant(i));
    let name_list = |idx: &[usize]| idx.iter().map(|&i| target.name(i).to_string()).collect::<Vec<_>>();
    let source_names: Vec<String> = source_vars.iter().map(|(n, _)| n.clone()).collect();

    let mut vars: Vec<(String, Rational)> = eliminated.iter().map(|&i| (target.name(i).to_string(), target.degree_of(i).clone())).collect();
    vars.extend(source_vars.iter().cloned());
    vars.extend(constants.iter().map(|&i| (target.name(i).to_string(), target.degree_of(i).clone())));
    let mut blocks = vec![name_list(&eliminated), source_names.clone()];
    if !constants.is_empty() {
        blocks.push(name_list(&constants));
    }
    let big = Ring::new(vars, blocks.clone())?;

    let mut src_vars: Vec<(String, Rational)> = source_vars.to_vec();
    src_vars.extend(constants.iter().map(|&i| (target.name(i).to_string(), target.degree_of(i).clone())));
    let src = Ring::new(src_vars, blocks[1..].to_vec())?;

    let mut gens = Vec::new();
    for r in target_relations {
        gens.push(r.embed(&big)?);
    }
    for ((name, _), img) in source_vars.iter().zip(images) {
        gens.push(&Polynomial::var(&big, name)? - &img.embed(&big)?);
    }
    let gb = cached_buchberger(&IdealGens::new(&big, gens)?, false, 0..0, budget)?;
    let mut kernel = Vec::new();
    for g in gb.basis() {
        if eliminated.iter().all(|&i| !g.involves(big.var_index(target.name(i)).expect("present"))) {
            kernel.push(g.embed(&src)?);
        }
    }
    Ok((src.clone(), IdealGens::new(&src, kernel)?))
}
