//! Acceptance criteria 1-7. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use lcverify_core::groebner::ideal_member;
use lcverify_core::linalg::{linear_membership_oracle, DEFAULT_PIECE_BOUND};
use lcverify_core::rational::{int, rat};
use lcverify_core::verifiers::checks::{check_monomial_conjecture, ledger_report, verify_depth0, verify_prop21, verify_remark24};
use lcverify_core::verifiers::report::Status;
use lcverify_core::verifiers::{cohomology_reports, run_ex1_tower, run_ex2_tower, tower_run, verify_ex2_segre_lift};
use lcverify_core::{quotient_member, run_suite, Alphas, Budget, DegreeQ, IdealGens, QuotientMembership, SuiteConfig, Tower};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, pass_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome { ok: true, detail: pass_detail }
    } else {
        Outcome { ok: false, detail: failures.join("; ") }
    }
}

fn random_alphas(rng: &mut ChaCha8Rng) -> Alphas {
    loop {
        let v = [0; 4].map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=7)));
        if let Ok(a) = Alphas::new(v) {
            return a;
        }
    }
}

fn criterion1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut vectors = vec![Alphas::default()];
    vectors.extend((0..5).map(|_| random_alphas(&mut rng)));
    let mut failures = Vec::new();
    for a in &vectors {
        let r = verify_prop21(a, &Budget::default());
        if r.status != Status::Pass {
            failures.push(r.to_string());
        }
    }
    outcome(failures, format!("identities hold for {} alpha vectors", vectors.len()))
}

fn tower_failures(tower: Tower, depth: u32) -> (Vec<String>, Vec<String>) {
    let budget = Budget::default();
    let (run, reports) = tower_run(tower, &Alphas::default(), depth, &budget);
    let mut failures: Vec<String> = reports.iter().filter(|r| r.status != Status::Pass).map(|r| r.to_string()).collect();
    let eps: Vec<String> = run.levels.iter().map(|l| l.epsilon().to_string()).collect();
    for l in &run.levels {
        if l.epsilon() != DegreeQ::Finite(tower.expected_epsilon(l.depth)) || !l.verified() {
            failures.push(format!("depth {}", l.depth));
        }
        if tower == Tower::Ex2 {
            if l.identities.is_empty() || !l.identities.iter().all(|(_, ok)| *ok) {
                failures.push(format!("depth {} cubic identity", l.depth));
            }
            if l.depth <= 2 && verify_ex2_segre_lift(l, false, &budget).status != Status::Pass {
                failures.push(format!("lift at depth {}", l.depth));
            }
        }
    }
    if run.levels.len() != depth as usize {
        failures.push(format!("built {} of {depth} levels", run.levels.len()));
    }
    (failures, eps)
}

fn criterion2() -> Outcome {
    let (failures, eps) = tower_failures(Tower::Ex1, 3);
    outcome(failures, format!("eps = {}", eps.join(", ")))
}

fn criterion3() -> Outcome {
    let (failures, eps) = tower_failures(Tower::Ex2, 3);
    outcome(failures, format!("eps = {}; cubic identity at each level; lift at depths 1-2", eps.join(", ")))
}

fn criterion4() -> Outcome {
    let budget = Budget::default();
    let mut reports = vec![verify_remark24(&budget)];
    reports.extend(verify_depth0(&Alphas::default(), &budget));
    let mut failures = Vec::new();
    for r in &reports {
        let oracle_ok = r.stats.keys().any(|k| k.ends_with(".oracle"));
        if r.status != Status::Pass || r.witness.is_none() || !oracle_ok {
            failures.push(r.to_string());
        }
    }
    outcome(failures, "Z^5, c, z^2 outside their ideals by normal form and oracle".into())
}

fn criterion5() -> Outcome {
    let failures = cohomology_reports(&Alphas::default(), &Budget::default())
        .into_iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| r.to_string())
        .collect();
    outcome(failures, "values, three-method agreement, Kunneth and Segre law".into())
}

fn criterion6() -> Outcome {
    let budget = Budget::default();
    let mut failures = Vec::new();
    let rings = [
        (lcverify_core::rings::ex1_r(&Alphas::default(), &budget).unwrap(), "x, y, z + w"),
        (lcverify_core::rings::ex2_r(&budget).unwrap(), "sx, ty, sy + tx"),
    ];
    for (p, sop) in &rings {
        let sop = p.parse_list(sop).unwrap();
        for t in 1..=2 {
            let r = check_monomial_conjecture(&format!("{}.t{t}", p.label()), p, &sop, t, &budget);
            if r.status != Status::Pass {
                failures.push(r.to_string());
            }
        }
    }
    let runs = [(Tower::Ex1, run_ex1_tower(&Alphas::default(), 3, &budget)), (Tower::Ex2, run_ex2_tower(3, &budget))];
    let mut sums = Vec::new();
    for (tower, run) in &runs {
        let r = ledger_report(*tower, run, &int(1), &budget);
        if r.status != Status::Pass {
            failures.push(r.to_string());
        }
        sums.push(r.degrees.join(""));
    }
    outcome(failures, format!("t = 1, 2 in both rings; ledger sums {} < 1", sums.join(" and ")))
}

fn criterion7() -> Outcome {
    let mut failures = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let budget = Budget::unlimited();
    let mut members = 0;
    for i in 0..200 {
        let (f, ideal) = common::membership_instance(&mut rng);
        let none = IdealGens::new(ideal.ring(), Vec::new()).unwrap();
        let gb = ideal_member(&f, &ideal, &budget).unwrap().is_in();
        let la = linear_membership_oracle(&f, &ideal, &none, DEFAULT_PIECE_BOUND).unwrap().member;
        members += usize::from(gb);
        if gb != la {
            failures.push(format!("oracle disagreement on instance {i}: {f}"));
        }
    }

    let ring = common::graded_ring(4);
    for _ in 0..500 {
        let (nf, ng) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let f = common::polynomial(&mut rng, &ring, 4, nf);
        let g = common::polynomial(&mut rng, &ring, 4, ng);
        let (vf, vg) = (f.order_valuation(), g.order_valuation());
        let product_ok = (&f * &g).order_valuation() == &vf + &vg;
        let sum_ok = (&f + &g).order_valuation() >= vf.clone().min(vg.clone());
        let zero_ok = (vf == DegreeQ::Infinity) == f.is_zero();
        if !(product_ok && sum_ok && zero_ok) {
            failures.push(format!("valuation axioms fail on {f}, {g}"));
        }
    }

    let b = Budget::default();
    let run = run_ex2_tower(2, &b);
    for l in &run.levels {
        if verify_ex2_segre_lift(l, true, &b).status != Status::Fail {
            failures.push(format!("tampered lift at depth {} not rejected", l.depth));
        }
        let mut cert = l.certificate.clone().unwrap();
        let x = l.presentation.var("x").unwrap();
        cert.certificate.ideal_part[0].0 = &cert.certificate.ideal_part[0].0 + &x;
        if cert.verify(&l.presentation) {
            failures.push(format!("tampered certificate at depth {} accepted", l.depth));
        }
    }
    let s = lcverify_core::rings::ring_s(&b).unwrap();
    let target = s.parse("w^2*x*(x - z)").unwrap();
    let ideal = s.parse_list("x^2").unwrap();
    if let QuotientMembership::In(mut c) = quotient_member(&s, &target, &ideal, &b).unwrap() {
        c.ideal_part[0].0 = c.ideal_part[0].0.scale(&int(2));
        if c.verify(&s, &ideal) {
            failures.push("scaled cofactor accepted".into());
        }
    } else {
        failures.push("w^2 x (x - z) not in (x^2) in S".into());
    }

    let cfg = SuiteConfig::default();
    let render = |reports: Vec<lcverify_core::CheckReport>| {
        serde_json::to_string(&reports.iter().map(|r| r.stable_json()).collect::<Vec<_>>()).unwrap()
    };
    if render(run_suite(&cfg)) != render(run_suite(&cfg)) {
        failures.push("suite JSON differs between runs".into());
    }
    outcome(failures, format!("200 oracle instances ({members} members), 500 valuation pairs, tamper canaries, deterministic JSON"))
}

type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn main() {
    let criteria: [Criterion; 7] = [
        ("prop21 identities", criterion1, Some(5)),
        ("square-root tower", criterion2, Some(120)),
        ("cube-root tower and lift", criterion3, Some(120)),
        ("non-memberships", criterion4, Some(10)),
        ("cohomology tables", criterion5, Some(30)),
        ("monomial checks and ledger", criterion6, Some(60)),
        ("engine properties", criterion7, None),
    ];
    let mut all = true;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit.filter(|&l| elapsed > Duration::from_secs(l)) {
            o.ok = false;
            o.detail = format!("{} (over the {limit} s limit)", o.detail);
        }
        all &= o.ok;
        println!(
            "{}  criterion {}  {name}: {}  [{:.2} s]",
            if o.ok { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            elapsed.as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
