use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::ops::Range;
use std::sync::Arc;

use num::One;
use serde::Serialize;

use super::reduce::{divide_with_table, DivisorTable};
use crate::budget::{annotate, Budget};
use crate::error::Result;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::ring::{Monomial, Ring};

/// Counters collected while completing a basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GbStats {
    pub spairs_total: u64,
    pub spairs_reduced: u64,
    pub product_criterion: u64,
    pub chain_criterion: u64,
    pub reduction_steps: u64,
    pub basis_size: usize,
}

impl GbStats {
    pub(crate) fn summary(&self) -> String {
        format!(
            "{} S-pairs, {} reduced, {} reduction steps, {} basis elements so far",
            self.spairs_total, self.spairs_reduced, self.reduction_steps, self.basis_size
        )
    }
}

pub(crate) struct Completion {
    pub basis: Vec<Polynomial>,
    /// `basis[k] = sum_j cofactors[k][j] * gens[j]`.
    pub cofactors: Option<Vec<Vec<Polynomial>>>,
    pub stats: GbStats,
}

struct State<'a> {
    ring: Arc<Ring>,
    ngens: usize,
    basis: Vec<Polynomial>,
    cof: Vec<Vec<Polynomial>>,
    table: DivisorTable,
    track: bool,
    stats: GbStats,
    budget: &'a Budget,
}

impl State<'_> {
    fn combine(&self, parts: &[(Rational, Monomial, usize)]) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(&self.ring); self.ngens];
        for (c, m, k) in parts {
            for (j, p) in self.cof[*k].iter().enumerate() {
                if !p.is_zero() {
                    out[j] = &out[j] + &p.mul_term(c, m);
                }
            }
        }
        out
    }

    /// `cof -= sum q_k * cof[k]`
    fn subtract_quotients(&self, cof: &mut [Polynomial], quotients: &[Polynomial]) {
        for (k, q) in quotients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (j, p) in self.cof[k].iter().enumerate() {
                if !p.is_zero() {
                    cof[j] = &cof[j] - &(q * p);
                }
            }
        }
    }

    fn push(&mut self, g: Polynomial, cof: Vec<Polynomial>) {
        let lc_inv = g.leading_coeff().expect("nonzero").recip();
        let (g, cof) = if lc_inv.is_one() {
            (g, cof)
        } else {
            (g.scale(&lc_inv), cof.iter().map(|p| p.scale(&lc_inv)).collect())
        };
        self.table.push(&g);
        self.basis.push(g);
        if self.track {
            self.cof.push(cof);
        }
        self.stats.basis_size = self.basis.len();
    }

    fn reduce(&mut self, f: &Polynomial, skip: Option<usize>) -> Result<(Polynomial, Option<Vec<Polynomial>>)> {
        let div = divide_with_table(f, &self.basis, &self.table, skip, self.track, self.budget)?;
        self.stats.reduction_steps += div.steps;
        Ok((div.remainder, div.quotients))
    }
}

type PairKey = Reverse<(Vec<i64>, usize, usize)>;

/// Buchberger completion with the product and chain criteria. Pairs are
/// selected by weighted degree of the lcm, then by the term order. Pairs with both indices inside `known_gb`
/// are treated as already processed.
pub(crate) fn complete(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    track: bool,
    known_gb: Range<usize>,
    budget: &Budget,
) -> Result<Completion> {
    let mut st = State {
        ring: ring.clone(),
        ngens: gens.len(),
        basis: Vec::new(),
        cof: Vec::new(),
        table: DivisorTable::new(&[]),
        track,
        stats: GbStats::default(),
        budget,
    };
    // Position in `basis` of each input generator that survived (nonzero).
    let mut origin_of: Vec<usize> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut cof = Vec::new();
        if track {
            cof = vec![Polynomial::zero(ring); gens.len()];
            cof[j] = Polynomial::one(ring);
        }
        st.push(g.clone(), cof);
        origin_of.push(j);
    }
    let in_known = |k: usize| known_gb.contains(&origin_of[k]);

    let order = ring.order();
    let mut heap: BinaryHeap<PairKey> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let add_pairs = |heap: &mut BinaryHeap<PairKey>, pending: &mut HashSet<(usize, usize)>, basis: &[Polynomial], j: usize, skip_known: &dyn Fn(usize) -> bool| {
        let lj = basis[j].leading_monomial().unwrap();
        for (i, gi) in basis[..j].iter().enumerate() {
            if skip_known(i) && skip_known(j) {
                continue;
            }
            let lcm = gi.leading_monomial().unwrap().lcm(lj);
            let mut key = vec![ring.monomial_weight(&lcm) as i64];
            key.extend(order.sort_key(&lcm));
            heap.push(Reverse((key, j, i)));
            pending.insert((i, j));
        }
    };
    for j in 0..st.basis.len() {
        let known = |k: usize| k < origin_of.len() && in_known(k);
        add_pairs(&mut heap, &mut pending, &st.basis, j, &known);
    }

    while let Some(Reverse((_, j, i))) = heap.pop() {
        pending.remove(&(i, j));
        st.stats.spairs_total += 1;
        let li = st.basis[i].leading_monomial().unwrap().clone();
        let lj = st.basis[j].leading_monomial().unwrap().clone();
        if li.is_coprime(&lj) {
            st.stats.product_criterion += 1;
            continue;
        }
        let lcm = li.lcm(&lj);
        let chain = (0..st.basis.len()).any(|k| {
            k != i
                && k != j
                && st.basis[k].leading_monomial().unwrap().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            st.stats.chain_criterion += 1;
            continue;
        }
        let qi = li.quotient_of(&lcm).unwrap();
        let qj = lj.quotient_of(&lcm).unwrap();
        let one = Rational::one();
        let s = st.basis[i].mul_term(&one, &qi).sub_mul_term(&one, &qj, &st.basis[j]);
        let mut cof = if track { st.combine(&[(one.clone(), qi, i), (-one, qj, j)]) } else { Vec::new() };
        let (r, quots) = st.reduce(&s, None).map_err(|e| annotate(e, || st.stats.summary()))?;
        if r.is_zero() {
            continue;
        }
        st.stats.spairs_reduced += 1;
        if let Some(q) = quots {
            st.subtract_quotients(&mut cof, &q);
        }
        st.push(r, cof);
        let n = st.basis.len() - 1;
        add_pairs(&mut heap, &mut pending, &st.basis, n, &|_| false);
    }

    finalize(st).map_err(|e| annotate(e, || "during interreduction".into()))
}

/// Minimalize, interreduce, normalize and sort ascending by leading monomial.
fn finalize(mut st: State<'_>) -> Result<Completion> {
    let n = st.basis.len();
    let lms: Vec<Monomial> = st.basis.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    let keep: Vec<usize> = (0..n)
        .filter(|&i| !(0..n).any(|j| j != i && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i)))
        .collect();
    let mut basis: Vec<Polynomial> = keep.iter().map(|&i| st.basis[i].clone()).collect();
    let mut cof: Vec<Vec<Polynomial>> = if st.track { keep.iter().map(|&i| st.cof[i].clone()).collect() } else { Vec::new() };
    st.basis = basis.clone();
    st.cof = cof.clone();
    st.table = DivisorTable::new(&st.basis);

    for k in 0..basis.len() {
        let g = &st.basis[k];
        let lead = Polynomial::from_sorted(&st.ring, vec![g.terms()[0].clone()]);
        let tail = g - &lead;
        let (r, quots) = st.reduce(&tail, Some(k))?;
        basis[k] = &lead + &r;
        if let Some(q) = quots {
            let mut c = st.cof[k].clone();
            st.subtract_quotients(&mut c, &q);
            cof[k] = c;
        }
    }
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    let order = st.ring.order();
    idx.sort_by(|&a, &b| order.cmp(basis[a].leading_monomial().unwrap(), basis[b].leading_monomial().unwrap()));
    let basis_sorted: Vec<Polynomial> = idx.iter().map(|&i| basis[i].monic()).collect();
    let cofactors = st.track.then(|| {
        idx.iter()
            .map(|&i| {
                let lc = basis[i].leading_coeff().unwrap().recip();
                cof[i].iter().map(|p| p.scale(&lc)).collect()
            })
            .collect()
    });
    let mut stats = st.stats;
    stats.basis_size = basis_sorted.len();
    Ok(Completion { basis: basis_sorted, cofactors, stats })
}
