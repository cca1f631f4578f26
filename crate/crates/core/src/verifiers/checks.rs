//! Identity, non-membership and aggregate checks around the two towers.

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::IdealGens;
use crate::linalg::{linear_membership_oracle, DEFAULT_PIECE_BOUND};
use crate::parse::format_rational;
use crate::poly::Polynomial;
use crate::presentation::{quotient_member, GradedPresentation, QuotientMembership};
use crate::rational::{int, rat, DegreeQ, Rational};
use crate::rings::{alpha_product, atilde, ex1_a, ex2_a, ring_s, Alphas};

use super::report::{timed, CheckReport, Status};
use super::tower::TowerRun;

/// The two annihilator towers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tower {
    Ex1,
    Ex2,
}

impl Tower {
    pub fn name(self) -> &'static str {
        match self {
            Tower::Ex1 => "ex1",
            Tower::Ex2 => "ex2",
        }
    }

    /// Ratio between consecutive annihilator degrees.
    pub fn ratio(self) -> i64 {
        match self {
            Tower::Ex1 => 2,
            Tower::Ex2 => 3,
        }
    }

    /// `ratio^-k`.
    pub fn expected_epsilon(self, k: u32) -> Rational {
        rat(1, self.ratio().pow(k))
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tower {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ex1" => Ok(Tower::Ex1),
            "ex2" => Ok(Tower::Ex2),
            _ => Err(Error::Invalid(format!("unknown tower {s:?} (expected ex1 or ex2)"))),
        }
    }
}

/// Requires `f ∉ ideal + relations(p)` by normal form and by the linear
/// oracle in the degree of `f`. The normal form becomes the witness.
pub fn require_non_member(
    r: &mut CheckReport,
    what: &str,
    p: &GradedPresentation,
    f: &Polynomial,
    ideal: &[Polynomial],
    budget: &Budget,
) -> Result<()> {
    match quotient_member(p, f, ideal, budget)? {
        QuotientMembership::Out { normal_form } => {
            r.witness(&normal_form);
            r.require(&format!("{what}: normal form nonzero"), !normal_form.is_zero());
        }
        QuotientMembership::In(_) => {
            r.require(&format!("{what}: normal form nonzero"), false);
        }
    }
    let gens = IdealGens::new(p.ring(), ideal.to_vec())?;
    let oracle = linear_membership_oracle(f, &gens, p.relations(), DEFAULT_PIECE_BOUND)?;
    r.degree(&oracle.degree);
    r.require(&format!("{what}: oracle agrees"), !oracle.member);
    r.note(&format!("{what}.oracle"), serde_json::to_value(&oracle).expect("serializable"));
    Ok(())
}

/// Requires `f ∈ ideal + relations(p)` with a re-expanding certificate.
fn require_member(
    r: &mut CheckReport,
    what: &str,
    p: &GradedPresentation,
    f: &Polynomial,
    ideal: &[Polynomial],
    budget: &Budget,
) -> Result<Option<crate::presentation::QuotientCertificate>> {
    match quotient_member(p, f, ideal, budget)? {
        QuotientMembership::In(c) => {
            r.require(&format!("{what}: certificate re-expands"), c.verify(p, ideal));
            Ok(Some(c))
        }
        QuotientMembership::Out { normal_form } => {
            r.require(&format!("{what}: member"), false);
            r.witness(&normal_form);
            Ok(None)
        }
    }
}

/// In `S = K[x,y,z,w]/(xy - zw)`: (i) `w^4 prod (x - a_i z) = x^4 prod (w - a_i y)`
/// and (ii) `w^2 prod (x - a_i z) ∈ (x^2)`, whose cofactor `g` is re-expanded.
pub fn verify_prop21(alphas: &Alphas, budget: &Budget) -> CheckReport {
    timed("prop21", |r| {
        let s = ring_s(budget)?;
        let [x, y, z, w] = ["x", "y", "z", "w"].map(|v| s.var(v).expect("variable of S"));
        let pxz = alpha_product(alphas, &x, &z);
        let pwy = alpha_product(alphas, &w, &y);
        let diff = &(&w.pow(4) * &pxz) - &(&x.pow(4) * &pwy);
        let nf = s.normal_form(&diff)?;
        r.degree(&int(8));
        r.require("(i) w^4 prod(x - a z) = x^4 prod(w - a y)", nf.is_zero());
        if !nf.is_zero() {
            r.witness(&nf);
        }

        let target = &w.pow(2) * &pxz;
        r.degree(&int(6));
        let x2 = x.pow(2);
        if let Some(c) = require_member(r, "(ii) w^2 prod(x - a z) in (x^2)", &s, &target, std::slice::from_ref(&x2), budget)? {
            let g = c.cofactor_for(0).cloned().unwrap_or_else(|| Polynomial::zero(s.ring()));
            r.require("(ii) w^2 prod(x - a z) - x^2 g vanishes", s.is_zero(&(&target - &(&x2 * &g)))?);
            r.certificate(&c.ideal_part);
            r.note("g", g.to_canonical_string());
        }
        let alphas: Vec<String> = alphas.values().iter().map(format_rational).collect();
        r.note("alphas", alphas);
        if r.status == Status::Pass {
            r.note("summary", "both integrality identities hold in S");
        }
        Ok(())
    })
}

/// In `K[X,Y,Z]/(w^3 X^6 + w^6 Y^6 + Z^6)`: `Z^5 ∉ (X^2, Y^2)` and `Z^6 ∈ (X^2, Y^2)`.
pub fn verify_remark24(budget: &Budget) -> CheckReport {
    timed("remark24", |r| {
        let a = atilde(budget)?;
        let ideal = a.parse_list("X^2, Y^2")?;
        require_non_member(r, "Z^5 not in (X^2, Y^2)", &a, &a.parse("Z^5")?, &ideal, budget)?;
        let before = r.witness.clone();
        if let Some(c) = require_member(r, "Z^6 in (X^2, Y^2)", &a, &a.parse("Z^6")?, &ideal, budget)? {
            r.certificate(&c.ideal_part);
        }
        r.witness = before;
        if r.status == Status::Pass {
            r.note("summary", "Z^5 not in (X^2, Y^2); Z^6 is");
        }
        Ok(())
    })
}

/// Before any root is adjoined: `c ∉ (a, b)` in the first base ring and
/// `z^2 ∉ (x, y)` in the cubic.
pub fn verify_depth0(alphas: &Alphas, budget: &Budget) -> Vec<CheckReport> {
    let ex1 = timed("depth0.ex1", |r| {
        let a = ex1_a(alphas, budget)?;
        require_non_member(r, "c not in (a, b)", &a, &a.var("c")?, &a.parse_list("a, b")?, budget)?;
        if r.status == Status::Pass {
            r.note("summary", "c not in (a, b)");
        }
        Ok(())
    });
    let ex2 = timed("depth0.ex2", |r| {
        let a = ex2_a(budget)?;
        require_non_member(r, "z^2 not in (x, y)", &a, &a.parse("z^2")?, &a.parse_list("x, y")?, budget)?;
        if r.status == Status::Pass {
            r.note("summary", "z^2 not in (x, y)");
        }
        Ok(())
    });
    vec![ex1, ex2]
}

/// `prod x_i^t ∉ (x_1^(t+1), .., x_d^(t+1))` for a homogeneous system of
/// parameters of length `dim p`.
pub fn check_monomial_conjecture(id: &str, p: &GradedPresentation, sop: &[Polynomial], t: u32, budget: &Budget) -> CheckReport {
    timed(id, |r| {
        let dim = p.krull_dimension();
        r.note("dimension", dim);
        r.require("parameter count equals dimension", sop.len() == dim);
        r.require("parameters homogeneous", sop.iter().all(|f| !f.is_zero() && f.is_homogeneous()));
        let product = sop.iter().fold(Polynomial::one(p.ring()), |acc, f| &acc * &f.pow(t));
        let ideal: Vec<Polynomial> = sop.iter().map(|f| f.pow(t + 1)).collect();
        require_non_member(r, "product not in ideal", p, &product, &ideal, budget)?;
        r.note("parameters", sop.iter().map(Polynomial::to_canonical_string).collect::<Vec<_>>());
        if r.status == Status::Pass {
            r.note("summary", format!("t = {t}: prod x_i^t not in (x_i^{})", t + 1));
        }
        Ok(())
    })
}

/// Evidence table `(k, eps_k, u_k, certificate)` for dagger-closure
/// membership, requiring exactly geometric degrees.
pub fn dagger_report(tower: Tower, run: &TowerRun, depth: u32) -> CheckReport {
    let id = format!("dagger.{tower}");
    if depth == 0 {
        return CheckReport::skipped(id, "depth 0: no annihilators requested");
    }
    let mut r = CheckReport::new(id);
    let mut table = Vec::new();
    let mut previous: Option<DegreeQ> = None;
    let mut decreasing = true;
    for l in &run.levels {
        let eps = l.epsilon();
        r.degree_q(&eps);
        if let Some(p) = &previous {
            decreasing &= &eps < p;
        }
        previous = Some(eps.clone());
        let cert = l.certificate.as_ref().ok().map(|c| c.level.clone());
        table.push(json!({
            "depth": l.depth,
            "epsilon": eps.to_string(),
            "u": l.u.to_canonical_string(),
            "certificate": cert,
        }));
        r.require(&format!("depth {} certificate", l.depth), l.verified());
        r.require(&format!("depth {} epsilon", l.depth), eps == DegreeQ::Finite(tower.expected_epsilon(l.depth)));
    }
    r.require("all levels built", run.levels.len() as u32 == depth && run.error.is_none());
    r.require("epsilon strictly decreasing", decreasing);
    r.note("table", table);
    r.note("ratio", format!("1/{}", tower.ratio()));
    match tower {
        Tower::Ex1 => {
            r.note("class", "c in (a, b)-dagger");
        }
        Tower::Ex2 => {
            r.note("class", "z^2 in (x, y)-dagger");
            r.note(
                "fermat",
                "x -> w x, y -> w^2 y turns w^3 x^3 + w^6 y^3 + z^3 into x^3 + y^3 + z^3 and fixes the ideal (x, y), so the table is also evidence for z^2 in (x, y)-dagger on the Fermat cubic",
            );
        }
    }
    if r.status == Status::Pass {
        let eps: Vec<String> = run.levels.iter().map(|l| l.epsilon().to_string()).collect();
        r.note("summary", format!("eps = {}", eps.join(", ")));
    }
    r
}

/// For the first three annihilators `c_1, c_2, c_3`: the product is nonzero
/// in the depth-3 ring, `v(c_1 c_2 c_3) = sum v(c_i)`, and the sum is below
/// `sop_degree`.
pub fn ledger_report(tower: Tower, run: &TowerRun, sop_degree: &Rational, budget: &Budget) -> CheckReport {
    let id = format!("ledger.{tower}");
    if run.levels.len() < 3 {
        return CheckReport::skipped(id, "needs tower depth 3");
    }
    timed(&id, |r| {
        let top = &run.levels[2].presentation;
        let mut product = Polynomial::one(top.ring());
        let mut sum = int(0);
        for l in &run.levels[..3] {
            let eps = l.epsilon();
            let e = eps.as_rational().ok_or_else(|| Error::Invalid("zero annihilator".into()))?;
            sum = &sum + e;
            product = &product * &l.u.embed(top.ring())?;
        }
        budget.charge(product.len() as u64)?;
        let nf = top.normal_form(&product)?;
        r.degree(&sum);
        r.require("product nonzero", !nf.is_zero());
        r.require("v(product) = sum of v(c_i)", nf.order_valuation() == DegreeQ::Finite(sum.clone()));
        r.require("sum below parameter degree", &sum < sop_degree);
        r.witness(&nf);
        r.note("sum", format_rational(&sum));
        r.note("parameter_degree", format_rational(sop_degree));
        if r.status == Status::Pass {
            r.note("summary", format!("v(c1 c2 c3) = {} < {}", format_rational(&sum), format_rational(sop_degree)));
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifiers::{run_ex1_tower, run_ex2_tower};

    #[test]
    fn prop21_default() {
        let r = verify_prop21(&Alphas::default(), &Budget::default());
        assert_eq!(r.status, Status::Pass, "{r}");
        assert!(r.certificate.is_some());
    }

    #[test]
    fn remark24_and_depth0() {
        let r = verify_remark24(&Budget::default());
        assert_eq!(r.status, Status::Pass, "{r}");
        assert!(r.witness.is_some());
        for r in verify_depth0(&Alphas::default(), &Budget::default()) {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
    }

    #[test]
    fn dagger_and_ledger() {
        let b = Budget::default();
        let run = run_ex2_tower(3, &b);
        let d = dagger_report(Tower::Ex2, &run, 3);
        assert_eq!(d.status, Status::Pass, "{d}");
        assert_eq!(d.degrees, vec!["1/3", "1/9", "1/27"]);
        let l = ledger_report(Tower::Ex2, &run, &int(1), &b);
        assert_eq!(l.status, Status::Pass, "{l}");
        assert_eq!(l.degrees, vec!["13/27"]);

        let run = run_ex1_tower(&Alphas::default(), 3, &b);
        let l = ledger_report(Tower::Ex1, &run, &int(1), &b);
        assert_eq!(l.degrees, vec!["7/8"]);
        assert_eq!(l.status, Status::Pass, "{l}");
        assert_eq!(dagger_report(Tower::Ex1, &run, 0).status, Status::Skip);
    }

    #[test]
    fn monomial_conjecture_polynomial_ring() {
        let b = Budget::default();
        let p = crate::rings::ring_b(&b).unwrap();
        let sop = p.parse_list("s, t").unwrap();
        let r = check_monomial_conjecture("mc.B", &p, &sop, 1, &b);
        assert_eq!(r.status, Status::Pass, "{r}");
        assert_eq!(r.witness.as_deref(), Some("s*t"));
    }
}
