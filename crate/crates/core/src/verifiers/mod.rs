//! End-to-end verification pipelines and their reports.

pub mod checks;
pub mod constants;
pub mod ex1;
pub mod ex2;
pub mod report;
pub mod suite;
pub mod tables;
pub mod tower;

pub use checks::{check_monomial_conjecture, dagger_report, ledger_report, verify_depth0, verify_prop21, verify_remark24, Tower};
pub use ex1::{run_ex1_tower, verify_ex1_relation};
pub use ex2::{run_ex2_tower, verify_ex2_segre_lift};
pub use report::{CheckReport, Status};
pub use suite::{run_suite, tower_checks, tower_run, SuiteConfig};
pub use tables::{cohomology_query, cohomology_reports, RING_IDS};
pub use tower::{TowerLevel, TowerRun};
