//! The concrete rings used by the verification suite.

use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::ring_map_kernel;
use crate::poly::Polynomial;
use crate::presentation::{present_ring, GradedPresentation};
use crate::rational::{int, parse_rational, Rational};
use crate::ring::Ring;

/// Cyclotomic relation of a primitive ninth root of unity `w`.
pub const PHI9: &str = "w^6 + w^3 + 1";

/// Four pairwise distinct rationals parametrizing the quartic `c^2 = prod (a - alpha_i b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphas([Rational; 4]);

impl Alphas {
    pub fn new(values: [Rational; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..i {
                if values[i] == values[j] {
                    return Err(Error::AlphasNotDistinct);
                }
            }
        }
        Ok(Alphas(values))
    }

    /// Parses a comma-separated list of four rationals.
    pub fn parse(src: &str) -> Result<Self> {
        let vals = src.split(',').map(|s| parse_rational(s.trim())).collect::<Result<Vec<_>>>()?;
        let arr: [Rational; 4] = vals
            .try_into()
            .map_err(|v: Vec<Rational>| Error::Invalid(format!("expected 4 alphas, got {}", v.len())))?;
        Alphas::new(arr)
    }

    pub fn values(&self) -> &[Rational; 4] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Default for Alphas {
    fn default() -> Self {
        Alphas([int(0), int(1), int(2), int(3)])
    }
}

impl std::fmt::Display for Alphas {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(crate::parse::format_rational).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `prod_i (x - alpha_i z)` with `x`, `z` given as polynomials.
pub fn alpha_product(alphas: &Alphas, x: &Polynomial, z: &Polynomial) -> Polynomial {
    alphas
        .values()
        .iter()
        .fold(Polynomial::one(x.ring()), |acc, a| &acc * &(x - &z.scale(a)))
}

/// The hypersurface `xy - zw` in four variables of degree 1.
pub fn ring_s(budget: &Budget) -> Result<GradedPresentation> {
    let one = int(1);
    present_ring(
        &[("x", one.clone()), ("y", one.clone()), ("z", one.clone()), ("w", one)],
        None,
        &["x*y - z*w"],
        "S",
        budget,
    )
}

/// `c^2 = prod (a - alpha_i b)` with `deg a = deg b = 1`, `deg c = 2`.
pub fn ex1_a(alphas: &Alphas, budget: &Budget) -> Result<GradedPresentation> {
    let ring = Ring::new(
        vec![("a".into(), int(1)), ("b".into(), int(1)), ("c".into(), int(2))],
        vec![vec!["c".into()], vec!["a".into(), "b".into()]],
    )?;
    let a = Polynomial::var(&ring, "a")?;
    let b = Polynomial::var(&ring, "b")?;
    let c = Polynomial::var(&ring, "c")?;
    let rel = &c.pow(2) - &alpha_product(alphas, &a, &b);
    GradedPresentation::new("ex1.A", &ring, vec![rel], budget)
}

/// The twisted Fermat cubic `w^3 x^3 + w^6 y^3 + z^3` over `Q(w)`, `w` a
/// primitive ninth root of unity.
pub fn ex2_a(budget: &Budget) -> Result<GradedPresentation> {
    present_ring(
        &[("x", int(1)), ("y", int(1)), ("z", int(1)), ("w", int(0))],
        Some(&[&["z"], &["x", "y"], &["w"]]),
        &["w^3*x^3 + w^6*y^3 + z^3", PHI9],
        "ex2.A",
        budget,
    )
}

/// The polynomial ring in `s`, `t` of degree 1.
pub fn ring_b(budget: &Budget) -> Result<GradedPresentation> {
    present_ring(&[("s", int(1)), ("t", int(1))], None, &[], "B", budget)
}

/// The sextic `w^3 X^6 + w^6 Y^6 + Z^6` with `X, Y, Z` of degree 1/2.
pub fn atilde(budget: &Budget) -> Result<GradedPresentation> {
    let h = crate::rational::rat(1, 2);
    present_ring(
        &[("X", h.clone()), ("Y", h.clone()), ("Z", h), ("w", int(0))],
        Some(&[&["Z"], &["X", "Y"], &["w"]]),
        &["w^3*X^6 + w^6*Y^6 + Z^6", PHI9],
        "Atilde",
        budget,
    )
}

/// Presents the subring generated by `images` (all of one common degree
/// `2*d_i` in the target) as a ring with generators of degree `d_i`.
fn segre_subring(
    target: &GradedPresentation,
    gens: &[(&str, Rational, &str)],
    blocks: Vec<Vec<String>>,
    label: &str,
    budget: &Budget,
) -> Result<GradedPresentation> {
    let doubled: Vec<(String, Rational)> = gens.iter().map(|(n, d, _)| (n.to_string(), d * int(2))).collect();
    let images = gens.iter().map(|(_, _, img)| target.parse(img)).collect::<Result<Vec<_>>>()?;
    let (_, kernel) = ring_map_kernel(&doubled, &images, target.relations().gens(), budget)?;
    let mut vars: Vec<(String, Rational)> = gens.iter().map(|(n, d, _)| (n.to_string(), d.clone())).collect();
    let tring = target.ring();
    for i in (0..tring.nvars()).filter(|&i| tring.is_constant(i)) {
        vars.push((tring.name(i).to_string(), int(0)));
    }
    let ring: Arc<Ring> = Ring::new(vars, blocks)?;
    let rels = kernel.gens().iter().map(|g| g.embed(&ring)).collect::<Result<Vec<_>>>()?;
    GradedPresentation::new(label, &ring, rels, budget)
}

/// The Segre product of [`ex1_a`] with `K[s,t]`, generated by
/// `x=as, y=bt, z=bs, w=at` (degree 1) and `e0=cs^2, e1=cst, e2=ct^2` (degree 2).
pub fn ex1_r(alphas: &Alphas, budget: &Budget) -> Result<GradedPresentation> {
    let a = ex1_a(alphas, budget)?;
    let ring = Ring::new(
        vec![
            ("a".into(), int(1)),
            ("b".into(), int(1)),
            ("c".into(), int(2)),
            ("s".into(), int(1)),
            ("t".into(), int(1)),
        ],
        vec![vec!["c".into()], vec!["a".into(), "b".into(), "s".into(), "t".into()]],
    )?;
    let rels = a.relations().gens().iter().map(|r| r.embed(&ring)).collect::<Result<Vec<_>>>()?;
    let target = GradedPresentation::new("ex1.A#B.ambient", &ring, rels, budget)?;
    let gens = [
        ("x", int(1), "a*s"),
        ("y", int(1), "b*t"),
        ("z", int(1), "b*s"),
        ("w", int(1), "a*t"),
        ("e0", int(2), "c*s^2"),
        ("e1", int(2), "c*s*t"),
        ("e2", int(2), "c*t^2"),
    ];
    let blocks = vec![
        vec!["e0".into(), "e1".into(), "e2".into()],
        vec!["x".into(), "y".into(), "z".into(), "w".into()],
    ];
    segre_subring(&target, &gens, blocks, "ex1.R", budget)
}

/// The Segre product of [`ex2_a`] with `K[s,t]`, generated by the six
/// products `sx, sy, sz, tx, ty, tz`.
pub fn ex2_r(budget: &Budget) -> Result<GradedPresentation> {
    let target = present_ring(
        &[("x", int(1)), ("y", int(1)), ("z", int(1)), ("s", int(1)), ("t", int(1)), ("w", int(0))],
        Some(&[&["z"], &["x", "y", "s", "t"], &["w"]]),
        &["w^3*x^3 + w^6*y^3 + z^3", PHI9],
        "ex2.A#B.ambient",
        budget,
    )?;
    let gens = [
        ("sx", int(1), "s*x"),
        ("sy", int(1), "s*y"),
        ("sz", int(1), "s*z"),
        ("tx", int(1), "t*x"),
        ("ty", int(1), "t*y"),
        ("tz", int(1), "t*z"),
    ];
    let blocks = vec![
        vec!["sz".into(), "tz".into()],
        vec!["sx".into(), "sy".into(), "tx".into(), "ty".into()],
        vec!["w".into()],
    ];
    segre_subring(&target, &gens, blocks, "ex2.R", budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphas_validation() {
        assert_eq!(Alphas::parse("0,0,1,2").unwrap_err(), Error::AlphasNotDistinct);
        assert!(Alphas::parse("0,1,2").is_err());
        assert_eq!(Alphas::parse("0, 1, 2, 3").unwrap(), Alphas::default());
        assert_eq!(Alphas::parse("1/2,1,2,3").unwrap().get(0), &crate::rational::rat(1, 2));
    }

    #[test]
    fn segre_kernel_contains_expected_relations() {
        let b = Budget::default();
        let r = ex1_r(&Alphas::default(), &b).unwrap();
        for rel in ["x*y - z*w", "x*e1 - w*e0", "e1*(z + w) - e0*y - e2*x"] {
            assert!(r.is_zero(&r.parse(rel).unwrap()).unwrap(), "{rel}");
        }
        assert!(!r.is_zero(&r.parse("e1").unwrap()).unwrap());
        assert_eq!(r.krull_dimension(), 3);
    }

    #[test]
    fn fermat_segre() {
        let r = ex2_r(&Budget::default()).unwrap();
        assert!(r.is_zero(&r.parse("sx*ty - sy*tx").unwrap()).unwrap());
        assert!(r.is_zero(&r.parse("sz*tz*(sy + tx) - sz^2*ty - tz^2*sx").unwrap()).unwrap());
        assert_eq!(r.krull_dimension(), 3);
    }
}
