//! The cube-root tower over the twisted Fermat cubic and the lift of its
//! annihilators to the Segre product with `K[s,t]`.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{cached_buchberger, IdealGens};
use crate::poly::Polynomial;
use crate::presentation::{GradedPresentation, RootSpec, TowerStep};
use crate::rational::{int, rat};
use crate::ring::Ring;
use crate::rings::ex2_a;

use super::report::{timed, CheckReport};
use super::tower::{finish_level, run_levels, TowerLevel, TowerRun};

/// Names of the three coordinates at `level` (level 0 is `x, y, z`).
pub fn coordinates(level: u32) -> [String; 3] {
    if level == 0 {
        ["x".into(), "y".into(), "z".into()]
    } else {
        [format!("x{level}"), format!("y{level}"), format!("z{level}")]
    }
}

/// `w X + w^(3j+2) Y` for `j = 0, 1, 2`; their product is `w^3 X^3 + w^6 Y^3`.
fn radicands(step: &TowerStep, prev: &[String; 3]) -> Result<[Polynomial; 3]> {
    let f = |j: u32| step.parse(&format!("w*{} + w^{}*{}", prev[0], 3 * j + 2, prev[1]));
    Ok([f(0)?, f(1)?, f(2)?])
}

fn level(k: u32, parent: &mut Option<GradedPresentation>, budget: &Budget) -> Result<TowerLevel> {
    let base = match parent.take() {
        Some(p) => p,
        None => ex2_a(budget)?,
    };
    let prev = coordinates(k - 1);
    let next = coordinates(k);
    let probe = TowerStep::new(&base, Vec::new())?;
    let rads = radicands(&probe, &prev)?;
    let roots = next.iter().zip(rads).map(|(n, r)| RootSpec::new(n, 3, r)).collect();
    let mut step = TowerStep::new(&base, roots)?;
    let value = step.parse(&format!("-{}*{}*{}", next[0], next[1], next[2]))?;
    step.branch(&prev[2], value, 3)?;
    let p = step.finish(&format!("ex2.A.depth{k}"), budget)?;
    let cubic = format!("w^3*{}^3 + w^6*{}^3 + {}^3", next[0], next[1], next[2]);
    let on_cubic = p.is_zero(&p.parse(&cubic)?)?;
    let adjoined = next.iter().map(|n| (n.clone(), p.ring().degree_of(p.ring().var_index(n).unwrap()).clone())).collect();
    let u = p.var(&next[0])?;
    *parent = Some(p.clone());
    let branch = format!("{} = -{}*{}*{}", prev[2], next[0], next[1], next[2]);
    let mut level = finish_level(k, p, adjoined, vec![branch], u, "z^2", "x, y", budget)?;
    level.identities.push((format!("{cubic} = 0"), on_cubic));
    Ok(level)
}

/// Builds the tower to `depth` and proves `u_k * z^2 ∈ (x, y)` with
/// `v(u_k) = 3^-k`. Each level also records whether its new coordinates
/// satisfy the cubic again.
pub fn run_ex2_tower(depth: u32, budget: &Budget) -> TowerRun {
    run_levels(depth, None, budget, level)
}

/// Lifts the level-`n` relation `u z^2 = v x + v' y` to
/// `(s' u)(sz)(tz) = (s' t v)(sx) + (s' s v')(ty)` over `A_n[s, t, s']`
/// with `s'^(3^n) = s`, and checks it by normal form. With `tamper` the
/// cofactor `v` is replaced by `v + x`, which must break the identity.
pub fn verify_ex2_segre_lift(tower: &TowerLevel, tamper: bool, budget: &Budget) -> CheckReport {
    let n = tower.depth;
    let id = if tamper { format!("ex2.lift.depth{n}.tampered") } else { format!("ex2.lift.depth{n}") };
    timed(&id, |r| {
        let cert = tower.certificate.as_ref().map_err(|nf| Error::Invalid(format!("no certificate at depth {n}: {nf}")))?;
        let p = &tower.presentation;
        let ring = p.ring();
        let eps = tower.epsilon().as_rational().cloned().ok_or_else(|| Error::Invalid("infinite epsilon".into()))?;
        let deg = &eps + int(1);
        let pick = |i: usize| -> Polynomial {
            cert.certificate
                .cofactor_for(i)
                .and_then(|c| c.degree_components().get(&deg).cloned())
                .unwrap_or_else(|| Polynomial::zero(ring))
        };
        let (mut v, vp) = (pick(0), pick(1));
        if tamper {
            v = &v + &p.var("x")?;
        }

        let mut vars = ring.vars_with_degrees();
        let root_deg = rat(1, 3i64.pow(n));
        vars.push(("s".into(), int(1)));
        vars.push(("t".into(), int(1)));
        vars.push(("sp".into(), root_deg));
        let mut blocks: Vec<Vec<String>> = Vec::new();
        let retired: Vec<String> = p.retired().to_vec();
        blocks.push(retired.clone());
        blocks.push(vec!["sp".into()]);
        let mut constants = Vec::new();
        for b in ring.block_names() {
            let b: Vec<String> = b.into_iter().filter(|v| !retired.contains(v)).collect();
            if b.is_empty() {
                continue;
            }
            if b.iter().all(|v| ring.is_constant(ring.var_index(v).unwrap())) {
                constants.push(b);
            } else {
                blocks.push(b);
            }
        }
        blocks.push(vec!["s".into(), "t".into()]);
        blocks.extend(constants);
        let lift = Ring::new(vars, blocks)?;
        let var = |name: &str| Polynomial::var(&lift, name);
        let (s, t, sp) = (var("s")?, var("t")?, var("sp")?);
        let mut rels = p.relations().gens().iter().map(|g| g.embed(&lift)).collect::<Result<Vec<_>>>()?;
        rels.push(&sp.pow(3u32.pow(n)) - &s);
        let ideal = IdealGens::new(&lift, rels)?;
        let gb = cached_buchberger(&ideal, false, 0..0, budget)?;

        let (x, y, z) = (var("x")?, var("y")?, var("z")?);
        let u = tower.u.embed(&lift)?;
        let (v, vp) = (v.embed(&lift)?, vp.embed(&lift)?);
        let lhs = &(&sp * &u) * &(&(&s * &z) * &(&t * &z));
        let rhs = &(&(&(&sp * &t) * &v) * &(&s * &x)) + &(&(&(&sp * &s) * &vp) * &(&t * &y));
        let nf = gb.normal_form_budgeted(&(&lhs - &rhs), budget)?;
        r.degree(&(&eps + int(2)));
        r.note("cofactor_x", v.to_canonical_string());
        r.note("cofactor_y", vp.to_canonical_string());
        r.note("gb", serde_json::to_value(gb.stats()).expect("serializable"));
        r.require("lifted identity reduces to zero", nf.is_zero());
        if nf.is_zero() {
            r.note("summary", format!("(s'u)(sz)(tz) in (sx, ty) with v(s'u) = {}", &eps * int(2)));
        } else {
            r.witness(&nf);
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifiers::Status;

    #[test]
    fn two_levels() {
        let run = run_ex2_tower(2, &Budget::default());
        assert!(run.error.is_none(), "{:?}", run.error);
        let eps: Vec<_> = run.levels.iter().map(|l| l.epsilon()).collect();
        assert_eq!(eps[0].as_rational(), Some(&rat(1, 3)));
        assert_eq!(eps[1].as_rational(), Some(&rat(1, 9)));
        assert!(run.levels.iter().all(TowerLevel::verified));
        let lift = verify_ex2_segre_lift(&run.levels[1], false, &Budget::default());
        assert_eq!(lift.status, Status::Pass, "{lift}");
        let bad = verify_ex2_segre_lift(&run.levels[1], true, &Budget::default());
        assert_eq!(bad.status, Status::Fail, "{bad}");
    }
}
