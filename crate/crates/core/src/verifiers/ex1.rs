//! The square-root tower over `c^2 = prod (a - alpha_i b)` and the
//! non-Cohen-Macaulay relation in its Segre product with `K[s,t]`.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{colon_ideal, ideal_member, IdealGens};
use crate::linalg::{linear_membership_oracle, DEFAULT_PIECE_BOUND};
use crate::poly::Polynomial;
use crate::presentation::{quotient_member, GradedPresentation, QuotientMembership, RootSpec, TowerStep};
use crate::rational::{int, Rational};
use crate::rings::{ex1_a, ex1_r, Alphas};

use super::constants::ConstantField;
use super::report::{timed, CheckReport};
use super::tower::{finish_level, run_levels, TowerLevel, TowerRun};

/// `(l1, l2)` with `a - alpha_k b = l1 (a - alpha_1 b) + l2 (a - alpha_2 b)`,
/// by Cramer's rule.
pub fn split_coefficients(alphas: &Alphas, k: usize) -> Result<(Rational, Rational)> {
    let (a1, a2, ak) = (alphas.get(0), alphas.get(1), alphas.get(k));
    // [[1, 1], [a1, a2]] (l1, l2) = (1, ak)
    let det = a2 - a1;
    if det == int(0) {
        return Err(Error::Singular("alpha_1 = alpha_2".into()));
    }
    Ok(((a2 - ak) / &det, (ak - a1) / &det))
}

/// Pair of radicals whose squares span the later radicands.
#[derive(Clone, Debug)]
struct Pair {
    names: [String; 2],
}

#[derive(Clone, Debug)]
struct State {
    alphas: Alphas,
    field: ConstantField,
    parent: Option<GradedPresentation>,
    sigma: Pair,
    /// `nu_i^2 = m[i][0] sigma_1 + m[i][1] sigma_2`.
    nu: Option<(Pair, [[Polynomial; 2]; 2])>,
    /// `spare^2 = l[0] sigma_1^2 + l[1] sigma_2^2`.
    spare: Option<(String, [Polynomial; 2])>,
}

/// `p^2 = b s1 + g s2`, `q^2 = b s1 - g s2` in the step ring.
fn split_roots(step: &TowerStep, names: [&str; 2], b: &Polynomial, g: &Polynomial, over: &Pair) -> Result<Vec<RootSpec>> {
    let ring = step.ring();
    let s1 = step.var(&over.names[0])?;
    let s2 = step.var(&over.names[1])?;
    let bs = &b.embed(ring)? * &s1;
    let gs = &g.embed(ring)? * &s2;
    Ok(vec![RootSpec::new(names[0], 2, &bs + &gs), RootSpec::new(names[1], 2, &bs - &gs)])
}

fn product(step: &TowerStep, names: [&str; 2]) -> Result<Polynomial> {
    Ok(&step.var(names[0])? * &step.var(names[1])?)
}

fn adjoined_of(step: &TowerStep, parent: &GradedPresentation) -> Vec<(String, Rational)> {
    step.ring()
        .vars_with_degrees()
        .into_iter()
        .filter(|(n, _)| parent.ring().index_of(n).is_none())
        .collect()
}

fn level_one(st: &mut State, budget: &Budget) -> Result<TowerLevel> {
    let a = ex1_a(&st.alphas, budget)?;
    let roots = (0..4)
        .map(|i| Ok(RootSpec::new(&format!("r{}", i + 1), 2, &a.var("a")? - &a.var("b")?.scale(st.alphas.get(i)))))
        .collect::<Result<Vec<_>>>()?;
    let mut step = TowerStep::new(&a, roots)?;
    let value = step.parse("r1*r2*r3*r4")?;
    step.branch("c", value, 2)?;
    let p = step.finish("ex1.A.depth1", budget)?;
    let adjoined = adjoined_of(&step, &a);
    let u = p.var("r1")?;
    st.parent = Some(p.clone());
    st.sigma = Pair { names: ["r1".into(), "r2".into()] };
    let field = &st.field;
    let (l1, l2) = split_coefficients(&st.alphas, 2)?;
    st.spare = Some(("r3".into(), [field.rational(l1), field.rational(l2)]));
    finish_level(1, p, adjoined, vec!["c = r1*r2*r3*r4".into()], u, "c", "a, b", budget)
}

/// Writes the spare radical as `p q` with `p^2, q^2` linear in `sigma`.
/// Returns the step, the two root names and the constants used.
fn split_spare(st: &mut State, k: u32, parent: &GradedPresentation, budget: &Budget) -> Result<(TowerStep, [String; 2], [Polynomial; 2], String)> {
    let (spare, l) = st.spare.clone().ok_or_else(|| Error::Invalid("no spare radical left".into()))?;
    let (b, bspec) = st.field.sqrt(&l[0], &format!("b{k}"))?;
    let neg = st.field.rational(int(-1));
    let (g, gspec) = st.field.sqrt(&st.field.mul(&neg, &l[1], budget)?, &format!("g{k}"))?;
    let mut step = TowerStep::new(parent, bspec.into_iter().chain(gspec).collect())?;
    let names = [format!("p{k}"), format!("q{k}")];
    let roots = split_roots(&step, [&names[0], &names[1]], &b, &g, &st.sigma)?;
    step.adjoin(roots)?;
    let value = product(&step, [&names[0], &names[1]])?;
    step.branch(&spare, value, 2)?;
    Ok((step, names, [b, g], spare))
}

fn inverse2(field: &ConstantField, m: &[[Polynomial; 2]; 2], budget: &Budget) -> Result<[[Polynomial; 2]; 2]> {
    let det = field.sub(&field.mul(&m[0][0], &m[1][1], budget)?, &field.mul(&m[0][1], &m[1][0], budget)?)?;
    let inv = field.inverse(&det, budget)?;
    let neg = |p: &Polynomial| -p;
    Ok([
        [field.mul(&m[1][1], &inv, budget)?, field.mul(&neg(&m[0][1]), &inv, budget)?],
        [field.mul(&neg(&m[1][0]), &inv, budget)?, field.mul(&m[0][0], &inv, budget)?],
    ])
}

/// `(c1, c2) M^{-1}`: coefficients over `nu_i^2` of `c1 sigma_1 + c2 sigma_2`.
fn over_nu(field: &ConstantField, c: [&Polynomial; 2], minv: &[[Polynomial; 2]; 2], budget: &Budget) -> Result<[Polynomial; 2]> {
    let f = |i: usize| -> Result<Polynomial> {
        field.add(&field.mul(c[0], &minv[0][i], budget)?, &field.mul(c[1], &minv[1][i], budget)?)
    };
    Ok([f(0)?, f(1)?])
}

fn level_two(st: &mut State, budget: &Budget) -> Result<TowerLevel> {
    let parent = st.parent.clone().expect("level one built");
    let (step, names, [b, g], spare) = split_spare(st, 2, &parent, budget)?;
    let p = step.finish("ex1.A.depth2", budget)?;
    let adjoined = adjoined_of(&step, &parent);
    let u = p.var(&names[0])?;
    let field = &st.field;
    let m = [[b.clone(), g.clone()], [b, -&g]];
    st.nu = Some((Pair { names: names.clone() }, m));
    let (l1, l2) = split_coefficients(&st.alphas, 3)?;
    st.spare = Some(("r4".into(), [field.rational(l1), field.rational(l2)]));
    st.parent = Some(p.clone());
    let branch = format!("{spare} = {}*{}", names[0], names[1]);
    finish_level(2, p, adjoined, vec![branch], u, "c", "a, b", budget)
}

fn level_deep(k: u32, st: &mut State, budget: &Budget) -> Result<TowerLevel> {
    let parent = st.parent.clone().expect("previous level built");
    let (nu, m) = st.nu.clone().expect("level two built");
    let (mut step, names, [b, g], spare) = split_spare(st, k, &parent, budget)?;
    let minv = inverse2(&st.field, &m, budget)?;
    // p^2 = b sigma_1 + g sigma_2 = kappa_1 nu_1^2 + kappa_2 nu_2^2
    let kappa = over_nu(&st.field, [&b, &g], &minv, budget)?;
    let (bb, bbspec) = st.field.sqrt(&kappa[0], &format!("bb{k}"))?;
    let neg = st.field.rational(int(-1));
    let (gg, ggspec) = st.field.sqrt(&st.field.mul(&neg, &kappa[1], budget)?, &format!("gg{k}"))?;
    step.adjoin(bbspec.into_iter().chain(ggspec).collect())?;
    let inner = [format!("pp{k}"), format!("qq{k}")];
    let roots = split_roots(&step, [&inner[0], &inner[1]], &bb, &gg, &nu)?;
    step.adjoin(roots)?;
    let value = product(&step, [&inner[0], &inner[1]])?;
    step.branch(&names[0], value, 2)?;
    let label = format!("ex1.A.depth{k}");
    let p = step.finish(&label, budget)?;
    let adjoined = adjoined_of(&step, &parent);
    let u = p.var(&inner[0])?;

    let field = &st.field;
    let neg_g = field.mul(&neg, &g, budget)?;
    let lambda = over_nu(field, [&b, &neg_g], &minv, budget)?;
    st.spare = Some((names[1].clone(), lambda));
    st.sigma = nu;
    st.nu = Some((Pair { names: inner.clone() }, [[bb.clone(), gg.clone()], [bb, -&gg]]));
    st.parent = Some(p.clone());
    let branches = vec![
        format!("{spare} = {}*{}", names[0], names[1]),
        format!("{} = {}*{}", names[0], inner[0], inner[1]),
    ];
    finish_level(k, p, adjoined, branches, u, "c", "a, b", budget)
}

/// Builds the tower to `depth` and proves `u_k * c ∈ (a, b)` at each level
/// with `v(u_k) = 2^-k`.
pub fn run_ex1_tower(alphas: &Alphas, depth: u32, budget: &Budget) -> TowerRun {
    let st = State {
        alphas: alphas.clone(),
        field: ConstantField::new(),
        parent: None,
        sigma: Pair { names: ["r1".into(), "r2".into()] },
        nu: None,
        spare: None,
    };
    run_levels(depth, st, budget, |k, st, budget| match k {
        1 => level_one(st, budget),
        2 => level_two(st, budget),
        _ => level_deep(k, st, budget),
    })
}

/// In the Segre product: (a) the relation `e1 (z+w) = e0 y + e2 x`,
/// (b) `e1 ∈ ((x, y) : (z + w))`, (c) `e1 ∉ (x, y)`, and the products of
/// the parameters `x, y, z + w` are nonzero.
pub fn verify_ex1_relation(alphas: &Alphas, budget: &Budget) -> CheckReport {
    timed("ex1.relation", |r| {
        let rr = ex1_r(alphas, budget)?;
        let rel = rr.parse("e1*(z + w) - e0*y - e2*x")?;
        let a_ok = match quotient_member(&rr, &rel, &[], budget)? {
            QuotientMembership::In(c) => c.verify(&rr, &[]),
            QuotientMembership::Out { .. } => false,
        };
        r.require("(a) relation vanishes", a_ok);
        r.degree(&int(3));

        let xy = rr.parse_list("x, y")?;
        let e1 = rr.var("e1")?;
        let zw = rr.parse("z + w")?;
        match quotient_member(&rr, &(&e1 * &zw), &xy, budget)? {
            QuotientMembership::In(c) => {
                r.require("(b) certificate re-expands", c.verify(&rr, &xy));
                r.certificate(&c.ideal_part);
            }
            QuotientMembership::Out { .. } => {
                r.require("(b) e1*(z+w) in (x,y)", false);
            }
        }
        let mut gens = xy.clone();
        gens.extend(rr.relations().gens().iter().cloned());
        let ideal = IdealGens::new(rr.ring(), gens)?;
        let colon = colon_ideal(&ideal, &zw, budget)?;
        r.require("(b) e1 in colon ideal", ideal_member(&e1, &colon, budget)?.is_in());
        r.note("colon_generators", colon.len());

        match quotient_member(&rr, &e1, &xy, budget)? {
            QuotientMembership::Out { normal_form } => {
                let none = IdealGens::new(rr.ring(), xy.clone())?;
                let oracle = linear_membership_oracle(&e1, &none, rr.relations(), DEFAULT_PIECE_BOUND)?;
                r.require("(c) oracle confirms non-membership", !oracle.member);
                r.witness(&normal_form);
            }
            QuotientMembership::In(_) => {
                r.require("(c) e1 not in (x,y)", false);
            }
        }
        r.degree(&int(2));
        for pair in ["x*y", "x*(z + w)", "y*(z + w)"] {
            r.require(&format!("{pair} nonzero"), !rr.is_zero(&rr.parse(pair)?)?);
        }
        r.note("summary", "e1*(z+w) = e0*y + e2*x; e1 in ((x,y):(z+w)) but not in (x,y)");
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, DegreeQ};

    #[test]
    fn default_split() {
        let (b, g) = split_coefficients(&Alphas::default(), 2).unwrap();
        // a - 2b = beta (a) - gamma (a - b) with beta = -1, gamma = -2
        assert_eq!((b, -g), (int(-1), int(-2)));
    }

    #[test]
    fn depth_two() {
        let run = run_ex1_tower(&Alphas::default(), 2, &Budget::default());
        assert!(run.error.is_none(), "{:?}", run.error);
        for (l, eps) in run.levels.iter().zip([rat(1, 2), rat(1, 4)]) {
            assert!(l.verified());
            assert_eq!(l.epsilon(), DegreeQ::Finite(eps));
        }
    }
}
