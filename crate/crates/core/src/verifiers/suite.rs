//! The full verification suite, run on a worker pool.

use rayon::prelude::*;

use crate::budget::{Budget, DEFAULT_STEP_BUDGET};
use crate::error::Result;
use crate::poly::Polynomial;
use crate::rational::int;
use crate::rings::{ex1_r, ex2_r, Alphas};

use super::checks::{check_monomial_conjecture, dagger_report, ledger_report, verify_depth0, verify_prop21, verify_remark24, Tower};
use super::ex1::{run_ex1_tower, verify_ex1_relation};
use super::ex2::{run_ex2_tower, verify_ex2_segre_lift};
use super::report::{sort_reports, CheckReport};
use super::tables::cohomology_reports;
use super::tower::{tower_reports, TowerRun};

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub alphas: Alphas,
    pub depth: u32,
    /// Step budget given to each pipeline separately.
    pub budget: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { alphas: Alphas::default(), depth: 3, budget: DEFAULT_STEP_BUDGET }
    }
}

/// Builds one tower and returns its level reports.
pub fn tower_run(tower: Tower, alphas: &Alphas, depth: u32, budget: &Budget) -> (TowerRun, Vec<CheckReport>) {
    let run = match tower {
        Tower::Ex1 => run_ex1_tower(alphas, depth, budget),
        Tower::Ex2 => run_ex2_tower(depth, budget),
    };
    let prefix = format!("{tower}.A");
    let mut reports = tower_reports(&prefix, &run, depth, |k| tower.expected_epsilon(k));
    if depth == 0 {
        reports.push(CheckReport::skipped(format!("{prefix}.depth0"), "depth 0: no tower levels requested"));
    }
    (run, reports)
}

/// Level reports of one tower plus its lifts, dagger table and ledger.
pub fn tower_checks(tower: Tower, cfg: &SuiteConfig) -> Vec<CheckReport> {
    let budget = Budget::new(cfg.budget);
    let (run, mut out) = tower_run(tower, &cfg.alphas, cfg.depth, &budget);
    if tower == Tower::Ex2 {
        for level in &run.levels {
            out.push(verify_ex2_segre_lift(level, false, &budget));
        }
    }
    out.push(dagger_report(tower, &run, cfg.depth));
    out.push(ledger_report(tower, &run, &int(1), &budget));
    out
}

fn monomial_task(tower: Tower, cfg: &SuiteConfig) -> Vec<CheckReport> {
    let budget = Budget::new(cfg.budget);
    let built: Result<(crate::presentation::GradedPresentation, Vec<Polynomial>)> = (|| {
        let (p, sop) = match tower {
            Tower::Ex1 => (ex1_r(&cfg.alphas, &budget)?, "x, y, z + w"),
            Tower::Ex2 => (ex2_r(&budget)?, "sx, ty, sy + tx"),
        };
        let sop = p.parse_list(sop)?;
        Ok((p, sop))
    })();
    match built {
        Ok((p, sop)) => (1..=2)
            .map(|t| check_monomial_conjecture(&format!("monomial.{tower}.R.t{t}"), &p, &sop, t, &budget))
            .collect(),
        Err(e) => vec![CheckReport::errored(format!("monomial.{tower}.R"), &e)],
    }
}

type Task = Box<dyn Fn(&SuiteConfig) -> Vec<CheckReport> + Send + Sync>;

/// Every check of `verify-all`, sorted by check id.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let tasks: Vec<Task> = vec![
        Box::new(|c| vec![verify_prop21(&c.alphas, &Budget::new(c.budget))]),
        Box::new(|c| tower_checks(Tower::Ex1, c)),
        Box::new(|c| tower_checks(Tower::Ex2, c)),
        Box::new(|c| vec![verify_ex1_relation(&c.alphas, &Budget::new(c.budget))]),
        Box::new(|c| vec![verify_remark24(&Budget::new(c.budget))]),
        Box::new(|c| verify_depth0(&c.alphas, &Budget::new(c.budget))),
        Box::new(|c| monomial_task(Tower::Ex1, c)),
        Box::new(|c| monomial_task(Tower::Ex2, c)),
        Box::new(|c| cohomology_reports(&c.alphas, &Budget::new(c.budget))),
    ];
    let mut reports: Vec<CheckReport> = tasks.par_iter().flat_map_iter(|t| t(cfg)).collect();
    sort_reports(&mut reports);
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifiers::report::{exit_code, Status};

    #[test]
    fn default_suite_passes() {
        let reports = run_suite(&SuiteConfig::default());
        for r in &reports {
            assert_ne!(r.status, Status::Fail, "{r}");
        }
        assert!(reports.iter().filter(|r| r.status == Status::Pass).count() >= 14);
        assert_eq!(exit_code(&reports), 0);
    }
}
