use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcverify_core::budget::DEFAULT_STEP_BUDGET;
use lcverify_core::rational::parse_rational;
use lcverify_core::verifiers::report::exit_code;
use lcverify_core::verifiers::{cohomology_query, tower_checks};
use lcverify_core::{
    quotient_member, run_suite, Alphas, Budget, CheckReport, Error, GradedPresentation, QuotientMembership, Rational,
    Status, SuiteConfig, Tower,
};
use serde_json::Value;

const CONFIG_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "lcverify", version, about = "Exact certificates for annihilator towers and graded local cohomology")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Four distinct rationals for the quartic, comma separated.
    #[arg(long, global = true, default_value = "0,1,2,3", allow_hyphen_values = true)]
    alphas: String,
    /// Step budget for each pipeline.
    #[arg(long, global = true, env = "LCVERIFY_BUDGET", default_value_t = DEFAULT_STEP_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check.
    VerifyAll {
        #[arg(long, default_value_t = 3)]
        depth: u32,
    },
    /// Build one annihilator tower.
    Tower {
        #[arg(value_parser = ["ex1", "ex2"])]
        target: String,
        #[arg(long, default_value_t = 3)]
        depth: u32,
    },
    /// Hilbert and H^2 tables of a named ring.
    Cohomology {
        /// One of ex1A, ex2A, B, ex1R, ex2R.
        #[arg(long)]
        ring: String,
        /// Degree window LO..HI, integers or p/q.
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        window: String,
    },
    /// Decide membership of an element in an ideal of a presented ring.
    Member {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// Comma-separated generators.
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
    },
}

fn parse_window(src: &str) -> Result<(Rational, Rational), Error> {
    let (lo, hi) = src
        .split_once("..")
        .ok_or_else(|| Error::Invalid(format!("window {src:?} is not of the form LO..HI")))?;
    let (lo, hi) = (parse_rational(lo.trim())?, parse_rational(hi.trim())?);
    if lo > hi {
        return Err(Error::Invalid(format!("empty window {src}")));
    }
    Ok((lo, hi))
}

fn cohomology_report(ring: &str, window: &str, alphas: &Alphas, budget: &Budget) -> Result<CheckReport, Error> {
    let (lo, hi) = parse_window(window)?;
    let start = std::time::Instant::now();
    let mut r = CheckReport::new(format!("cohomology.{ring}"));
    r.degree(&lo).degree(&hi);
    let mut lines = Vec::new();
    for t in cohomology_query(ring, &lo, &hi, alphas, budget)? {
        let v = serde_json::to_value(&t).expect("serializable");
        let method = v["method"].as_str().unwrap_or_default().to_string();
        lines.push(format!("{method} {t}"));
        r.note(&method, v);
    }
    r.note("summary", lines.join("; "));
    r.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(r)
}

fn member_report(file: &PathBuf, element: &str, ideal: &str, budget: &Budget) -> Result<CheckReport, Error> {
    let src = fs::read_to_string(file).map_err(|e| Error::PresentationFormat(format!("{}: {e}", file.display())))?;
    let p = GradedPresentation::from_text(&src, budget)?;
    let f = p.parse(element)?;
    let gens = p.parse_list(ideal)?;
    let start = std::time::Instant::now();
    let mut r = CheckReport::new(format!("member.{}", p.label()));
    r.degree_q(&f.order_valuation());
    match quotient_member(&p, &f, &gens, budget) {
        Ok(QuotientMembership::In(c)) => {
            r.require("certificate re-expands", c.verify(&p, &gens));
            r.certificate(&c.ideal_part);
            r.note("member", true);
            r.note("summary", format!("{element} is in ({ideal})"));
        }
        Ok(QuotientMembership::Out { normal_form }) => {
            r.witness(&normal_form);
            r.note("member", false);
            r.note("summary", format!("{element} is not in ({ideal}); normal form {normal_form}"));
        }
        Err(e) => r = CheckReport::errored(r.check.clone(), &e),
    }
    r.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(r)
}

fn render(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&format!("{r}\n"));
            }
            let count = |st: Status| reports.iter().filter(|r| r.status == st).count();
            s.push_str(&format!(
                "{} passed, {} failed, {} skipped\n",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Skip)
            ));
            s
        }
    }
}

fn first_failure(reports: &[CheckReport]) -> Option<String> {
    let r = reports.iter().find(|r| r.status == Status::Fail)?;
    let stats = serde_json::to_string_pretty(&Value::Object(r.stats.clone().into_iter().collect())).ok()?;
    Some(format!("first failure: {}\n{stats}", r.check))
}

fn run(cli: Cli) -> Result<Vec<CheckReport>, Error> {
    let g = &cli.global;
    let alphas = Alphas::parse(&g.alphas)?;
    let budget = Budget::new(g.budget);
    Ok(match &cli.command {
        Command::VerifyAll { depth } => run_suite(&SuiteConfig { alphas, depth: *depth, budget: g.budget }),
        Command::Tower { target, depth } => {
            let tower: Tower = target.parse()?;
            tower_checks(tower, &SuiteConfig { alphas, depth: *depth, budget: g.budget })
        }
        Command::Cohomology { ring, window } => vec![cohomology_report(ring, window, &alphas, &budget)?],
        Command::Member { presentation, element, ideal } => vec![member_report(presentation, element, ideal, &budget)?],
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, out) = (cli.global.format, cli.global.out.clone());
    let reports = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    let text = render(&reports, format);
    let written = match &out {
        Some(path) => fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(CONFIG_ERROR);
    }
    if let Some(detail) = first_failure(&reports) {
        eprintln!("{detail}");
    }
    ExitCode::from(exit_code(&reports) as u8)
}
