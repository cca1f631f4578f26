use std::time::Instant;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::parse::format_rational;
use crate::poly::Polynomial;
use crate::presentation::{AnnihilatorCertificate, GradedPresentation};
use crate::rational::{DegreeQ, Rational};

use super::report::{CheckReport, Status};

/// One level of an annihilator tower.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub depth: u32,
    pub presentation: GradedPresentation,
    pub adjoined: Vec<(String, Rational)>,
    pub branches: Vec<String>,
    pub u: Polynomial,
    /// The certificate, or the nonzero normal form of `u * numerator` modulo
    /// the target ideal when no certificate exists.
    pub certificate: std::result::Result<AnnihilatorCertificate, Polynomial>,
    /// Extra identities checked while building the level.
    pub identities: Vec<(String, bool)>,
    pub elapsed_ms: f64,
}

impl TowerLevel {
    pub fn epsilon(&self) -> DegreeQ {
        self.u.order_valuation()
    }

    pub fn verified(&self) -> bool {
        matches!(&self.certificate, Ok(c) if c.verify(&self.presentation))
    }
}

/// Levels built so far, and the error that stopped the construction early.
#[derive(Clone, Debug, Default)]
pub struct TowerRun {
    pub levels: Vec<TowerLevel>,
    pub error: Option<Error>,
}

impl TowerRun {
    pub fn certificates(&self) -> Vec<&AnnihilatorCertificate> {
        self.levels.iter().filter_map(|l| l.certificate.as_ref().ok()).collect()
    }
}

/// Builds levels `1..=depth` with `build(k, previous)`, keeping what was
/// finished when a level fails.
pub(crate) fn run_levels<S>(
    depth: u32,
    mut state: S,
    budget: &Budget,
    mut build: impl FnMut(u32, &mut S, &Budget) -> Result<TowerLevel>,
) -> TowerRun {
    let mut run = TowerRun::default();
    for k in 1..=depth {
        let start = Instant::now();
        match build(k, &mut state, budget) {
            Ok(mut level) => {
                level.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
                run.levels.push(level);
            }
            Err(e) => {
                run.error = Some(e);
                break;
            }
        }
    }
    run
}

/// Proves `u * numerator ∈ target` in `p` and packages the level.
#[allow(clippy::too_many_arguments)]
pub(crate) fn finish_level(
    depth: u32,
    p: GradedPresentation,
    adjoined: Vec<(String, Rational)>,
    branches: Vec<String>,
    u: Polynomial,
    numerator: &str,
    target: &str,
    budget: &Budget,
) -> Result<TowerLevel> {
    let num = p.parse(numerator)?;
    let ideal = p.parse_list(target)?;
    let certificate = AnnihilatorCertificate::prove(&p, &u, &num, &ideal, budget)?;
    Ok(TowerLevel { depth, presentation: p, adjoined, branches, u, certificate, identities: Vec::new(), elapsed_ms: 0.0 })
}

/// Report for one level: PASS iff the certificate re-expands and the degree
/// of the annihilator is exactly `expected`.
pub fn level_report(prefix: &str, level: &TowerLevel, expected: &Rational) -> CheckReport {
    let mut r = CheckReport::new(format!("{prefix}.depth{}", level.depth));
    let eps = level.epsilon();
    r.degree_q(&eps);
    r.require("certificate re-expands", level.verified());
    r.require("epsilon", eps == DegreeQ::Finite(expected.clone()));
    for (what, ok) in &level.identities {
        r.require(what, *ok);
    }
    if !level.identities.is_empty() {
        r.note("identities", level.identities.iter().map(|(w, _)| w.clone()).collect::<Vec<_>>());
    }
    let adjoined: Vec<String> = level.adjoined.iter().map(|(n, d)| format!("{n}:{}", format_rational(d))).collect();
    r.note("level", level.presentation.label());
    r.note("adjoined", adjoined);
    r.note("branches", level.branches.clone());
    r.note("annihilator", level.u.to_canonical_string());
    r.note("gb", serde_json::to_value(level.presentation.basis().stats()).expect("serializable"));
    match &level.certificate {
        Ok(c) => {
            r.certificate(&c.certificate.ideal_part);
            r.note("certificate_size", c.certificate.size());
            r.note("relation_terms", c.certificate.relation_part.iter().map(|(p, _)| p.len()).sum::<usize>());
        }
        Err(nf) => {
            r.witness(nf);
        }
    }
    if r.status == Status::Pass {
        r.note("summary", format!("u = {} of degree {}", level.u, eps));
    }
    r.timing_ms = level.elapsed_ms;
    r
}

/// Reports for every built level, plus one for the error that stopped the
/// construction.
pub fn tower_reports(prefix: &str, run: &TowerRun, depth: u32, expected: impl Fn(u32) -> Rational) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = run.levels.iter().map(|l| level_report(prefix, l, &expected(l.depth))).collect();
    if let Some(e) = &run.error {
        let next = run.levels.len() as u32 + 1;
        let mut r = CheckReport::errored(format!("{prefix}.depth{next}"), e);
        r.note("levels_completed", run.levels.len());
        r.note("requested_depth", depth);
        out.push(r);
    }
    out
}
