//! Cohomology tables of the example rings and their cross-checks.

use crate::budget::Budget;
use crate::cohomology::data::{b_datum, ex1_a_datum, ex2_a_datum};
use crate::cohomology::{
    h2_dim_duality, h2_dim_free_basis, h2_table_truncated, hilbert_dim, kunneth_h2, tabulate, window, CohomologyPack,
    CohomologyTable, HypersurfaceDatum, Method, DEFAULT_T_MAX,
};
use crate::error::{Error, Result};
use crate::presentation::GradedPresentation;
use crate::rational::{int, Rational};
use crate::rings::{ex1_a, ex1_r, ex2_a, ex2_r, ring_b, Alphas};

use super::report::{timed, CheckReport, Status};

/// Ring ids accepted by [`cohomology_query`].
pub const RING_IDS: [&str; 5] = ["ex1A", "ex2A", "B", "ex1R", "ex2R"];

struct Factor {
    datum: HypersurfaceDatum,
    presentation: GradedPresentation,
    params: [&'static str; 2],
}

fn factors(alphas: &Alphas, budget: &Budget) -> Result<[Factor; 3]> {
    Ok([
        Factor { datum: ex1_a_datum(alphas)?, presentation: ex1_a(alphas, budget)?, params: ["a", "b"] },
        Factor { datum: ex2_a_datum()?, presentation: ex2_a(budget)?, params: ["x", "y"] },
        Factor { datum: b_datum(), presentation: ring_b(budget)?, params: ["s", "t"] },
    ])
}

fn truncated(f: &Factor, degrees: &[Rational]) -> Result<CohomologyTable> {
    let p = &f.presentation;
    let (a, b) = (p.var(f.params[0])?, p.var(f.params[1])?);
    h2_table_truncated(p, (&a, &b), degrees, DEFAULT_T_MAX)
}

fn table_json(t: &CohomologyTable) -> serde_json::Value {
    serde_json::to_value(t).expect("serializable")
}

/// `H^2` in degrees 0..3 of both hypersurfaces and -2..3 of `K[s,t]`.
fn values(fs: &[Factor; 3]) -> CheckReport {
    timed("cohomology.values", |r| {
        let degrees = window(&int(-2), &int(3), &int(1))?;
        for f in &fs[..2] {
            let h = &f.datum;
            r.require(&format!("{}: H^2_0 = 1", h.label), h2_dim_free_basis(h, &int(0)) == 1);
            r.require(&format!("{}: H^2_d = 0 for 0 < d <= 3", h.label), (1..=3).all(|d| h2_dim_free_basis(h, &int(d)) == 0));
            r.note(&h.label, table_json(&tabulate(Method::FreeBasis, &degrees, |d| h2_dim_free_basis(h, d))));
        }
        let b = &fs[2].datum;
        r.require("B: H^2_-2 = 1", h2_dim_free_basis(b, &int(-2)) == 1);
        r.require("B: H^2_d = 0 for d >= -1", (-1..=3).all(|d| h2_dim_free_basis(b, &int(d)) == 0));
        r.note("B", table_json(&tabulate(Method::FreeBasis, &degrees, |d| h2_dim_free_basis(b, d))));
        r.degree(&int(0));
        r.degree(&int(-2));
        if r.status == Status::Pass {
            r.note("summary", "H^2_0 = 1 for both hypersurfaces; B has H^2 only below -1");
        }
        Ok(())
    })
}

/// Free-basis count, graded duality and truncated Čech agree on [-5, 3].
fn agreement(fs: &[Factor; 3]) -> CheckReport {
    timed("cohomology.agreement", |r| {
        let degrees = window(&int(-5), &int(3), &int(1))?;
        for f in fs {
            let h = &f.datum;
            let free = tabulate(Method::FreeBasis, &degrees, |d| h2_dim_free_basis(h, d));
            let trunc = truncated(f, &degrees)?;
            r.require(&format!("{}: truncated = free basis", h.label), trunc.agrees_with(&free));
            if h.relation.is_some() {
                let dual = tabulate(Method::Duality, &degrees, |d| h2_dim_duality(h, d));
                r.require(&format!("{}: duality = free basis", h.label), dual.agrees_with(&free));
            }
            r.note(&h.label, table_json(&trunc));
        }
        r.degree(&int(-5));
        r.degree(&int(3));
        if r.status == Status::Pass {
            r.note("summary", "free basis, duality and truncated Čech agree on [-5, 3]");
        }
        Ok(())
    })
}

/// Künneth tables of both Segre products with `K[s,t]` on [-4, 4].
fn kunneth(fs: &[Factor; 3]) -> CheckReport {
    timed("cohomology.kunneth", |r| {
        let degrees = window(&int(-4), &int(4), &int(1))?;
        let b = CohomologyPack::from_datum(&fs[2].datum, &degrees);
        for f in &fs[..2] {
            let a = CohomologyPack::from_datum(&f.datum, &degrees);
            let t = kunneth_h2(&a, &b, &degrees)?;
            let support: Vec<(Rational, usize)> = t.support().into_iter().collect();
            r.require(&format!("{}#B: H^2 = {{0:1}}", f.datum.label), support == vec![(int(0), 1)]);
            r.note(&format!("{}#B", f.datum.label), table_json(&t));
        }
        r.degree(&int(0));
        if r.status == Status::Pass {
            r.note("summary", "H^2 of both Segre products is {0:1} on [-4, 4]");
        }
        Ok(())
    })
}

/// `dim R_n = dim A_n dim B_n` for the presented Segre products.
fn segre_law(fs: &[Factor; 3], alphas: &Alphas, budget: &Budget) -> CheckReport {
    timed("cohomology.segre", |r| {
        let rs = [ex1_r(alphas, budget)?, ex2_r(budget)?];
        let b = &fs[2].datum;
        for (f, rr) in fs[..2].iter().zip(&rs) {
            let mut dims = Vec::new();
            for n in 0..=3 {
                let n = int(n);
                let expected = hilbert_dim(&f.datum, &n) * hilbert_dim(b, &n);
                let got = rr.hilbert_dim(&n)?;
                r.require(&format!("{} degree {}", rr.label(), n), got == expected);
                dims.push(got);
            }
            r.note(rr.label(), dims);
        }
        if r.status == Status::Pass {
            r.note("summary", "presented Segre products have dim A_n * dim B_n in degrees 0..3");
        }
        Ok(())
    })
}

/// All cohomology reports.
pub fn cohomology_reports(alphas: &Alphas, budget: &Budget) -> Vec<CheckReport> {
    match factors(alphas, budget) {
        Ok(fs) => vec![values(&fs), agreement(&fs), kunneth(&fs), segre_law(&fs, alphas, budget)],
        Err(e) => vec![CheckReport::errored("cohomology", &e)],
    }
}

/// Hilbert and `H^2` tables of one named ring over `lo..=hi` in unit steps.
pub fn cohomology_query(ring: &str, lo: &Rational, hi: &Rational, alphas: &Alphas, budget: &Budget) -> Result<Vec<CohomologyTable>> {
    let degrees = window(lo, hi, &int(1))?;
    let fs = factors(alphas, budget)?;
    let pick = |i: usize| -> Result<Vec<CohomologyTable>> {
        let f = &fs[i];
        let h = &f.datum;
        let mut out = vec![
            tabulate(Method::Hilbert, &degrees, |d| hilbert_dim(h, d)),
            tabulate(Method::FreeBasis, &degrees, |d| h2_dim_free_basis(h, d)),
        ];
        if h.relation.is_some() {
            out.push(tabulate(Method::Duality, &degrees, |d| h2_dim_duality(h, d)));
        }
        out.push(truncated(f, &degrees)?);
        Ok(out)
    };
    let segre = |i: usize, rr: GradedPresentation| -> Result<Vec<CohomologyTable>> {
        let a = CohomologyPack::from_datum(&fs[i].datum, &degrees);
        let b = CohomologyPack::from_datum(&fs[2].datum, &degrees);
        let mut hilbert = CohomologyTable::new(Method::Hilbert);
        for d in &degrees {
            hilbert.entries.insert(d.clone(), rr.hilbert_dim(d)?);
        }
        Ok(vec![hilbert, kunneth_h2(&a, &b, &degrees)?])
    };
    match ring {
        "ex1A" => pick(0),
        "ex2A" => pick(1),
        "B" => pick(2),
        "ex1R" => segre(0, ex1_r(alphas, budget)?),
        "ex2R" => segre(1, ex2_r(budget)?),
        _ => Err(Error::Invalid(format!("unknown ring {ring:?} (expected one of {})", RING_IDS.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_reports_pass() {
        for r in cohomology_reports(&Alphas::default(), &Budget::default()) {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
    }

    #[test]
    fn queries() {
        let b = Budget::default();
        let a = Alphas::default();
        let t = cohomology_query("ex1R", &int(-2), &int(2), &a, &b).unwrap();
        assert_eq!(t[1].to_string(), "{-2:0, -1:0, 0:1, 1:0, 2:0}");
        let t = cohomology_query("B", &int(-3), &int(0), &a, &b).unwrap();
        assert_eq!(t[1].to_string(), "{-3:2, -2:1, -1:0, 0:0}");
        let t = cohomology_query("ex2A", &int(0), &int(0), &a, &b).unwrap();
        assert_eq!(t[1].to_string(), "{0:1}");
        assert!(cohomology_query("C", &int(0), &int(0), &a, &b).is_err());
    }
}
