//! Exact graded commutative algebra over the rationals: sparse polynomials,
//! Groebner bases with membership certificates, presented graded rings,
//! root-adjunction towers, and graded local cohomology dimensions.

pub mod budget;
pub mod cohomology;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod presentation;
pub mod rational;
pub mod ring;
pub mod rings;
pub mod verifiers;

pub use budget::Budget;
pub use cohomology::{CohomologyPack, CohomologyTable, HypersurfaceDatum};
pub use error::{Error, Result};
pub use groebner::{
    colon_ideal, ideal_member, normal_form, ring_map_kernel, GroebnerBasis, IdealGens, Membership,
    MembershipCertificate,
};
pub use linalg::{linear_membership_oracle, GradedPiece, OracleReport};
pub use parse::{format_polynomial, parse_polynomial, parse_polynomial_list};
pub use poly::{poly_arith, ArithOp, Polynomial};
pub use presentation::{
    quotient_member, AnnihilatorCertificate, GradedPresentation, QuotientCertificate, QuotientMembership, RootSpec,
    TowerStep,
};
pub use rational::{DegreeQ, Rational};
pub use ring::{Monomial, MonomialOrder, Ring};
pub use rings::Alphas;
pub use verifiers::{run_suite, CheckReport, Status, SuiteConfig, Tower};
