//! Multigraded Betti numbers through upper Koszul simplicial complexes, and
//! the regularity statements built on them.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::graph::Graph;
use crate::homology::{homology_ranks, Field, SimplicialComplex};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::report::{Instance, VerificationReport, Witness};
use crate::symbolic::EdgeIdealContext;
use crate::{Limits, Result};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BettiError {
    #[error("the zero ideal has no Betti table")]
    ZeroIdeal,
    #[error("{count} generators exceed the bound of {bound}")]
    Generators { count: usize, bound: usize },
    #[error("lcm closure grew past {bound} multidegrees (after {processed} of {total} generators)")]
    LcmClosure { bound: usize, processed: usize, total: usize },
    #[error("{count} variables exceed the bound of {bound}")]
    Variables { count: usize, bound: usize },
}

/// `K^b(a)`: squarefree `τ ≤ b` with `x^{b-τ} ∈ a`.
///
/// Built from its facets `{j : g_j < b_j}` over generators `g` dividing `b`.
pub fn upper_koszul_complex(a: &MonomialIdeal, b: &Monomial) -> SimplicialComplex {
    let facets = a.gens().iter().filter(|g| g.divides(b)).map(|g| {
        (0..b.nvars())
            .filter(|&j| g.exponent(j) < b.exponent(j))
            .fold(0u32, |m, j| m | 1 << j)
    });
    SimplicialComplex::from_facets(b.nvars(), facets)
}

/// Closure of the generators under pairwise lcm, sorted.
pub fn lcm_closure(a: &MonomialIdeal, limits: &Limits) -> Result<Vec<Monomial>, BettiError> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut all: Vec<Monomial> = Vec::new();
    for (done, g) in a.gens().iter().enumerate() {
        let mut fresh = vec![g.clone()];
        fresh.extend(all.iter().map(|x| x.lcm(g)));
        for m in fresh {
            if seen.insert(m.clone()) {
                all.push(m);
            }
        }
        if all.len() > limits.max_lcm_closure {
            return Err(BettiError::LcmClosure {
                bound: limits.max_lcm_closure,
                processed: done + 1,
                total: a.len(),
            });
        }
    }
    all.sort();
    Ok(all)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub b: Vec<u32>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub field: Field,
    /// Nonzero `β_{i,b}`, sorted by multidegree then `i`.
    pub entries: Vec<(usize, Monomial, usize)>,
}

impl BettiTable {
    pub fn get(&self, i: usize, b: &Monomial) -> usize {
        self.entries
            .iter()
            .find(|(j, m, _)| *j == i && m == b)
            .map_or(0, |e| e.2)
    }

    /// `β_{i,j} = Σ_{|b| = j} β_{i,b}`
    pub fn graded(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for (i, b, r) in &self.entries {
            *out.entry((*i, b.degree())).or_insert(0) += r;
        }
        out
    }

    /// `max (|b| - i)` over nonzero entries.
    pub fn regularity(&self) -> Option<u32> {
        self.entries.iter().map(|(i, b, _)| b.degree() - *i as u32).max()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.iter().map(|e| e.0).max()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<BettiEntry> = self
            .entries
            .iter()
            .map(|(i, b, rank)| BettiEntry { i: *i, b: b.exponents().to_vec(), rank: *rank })
            .collect();
        let graded: Vec<_> = self
            .graded()
            .into_iter()
            .map(|((i, j), rank)| json!({"i": i, "j": j, "rank": rank}))
            .collect();
        json!({
            "field": self.field.to_string(),
            "entries": entries,
            "graded": graded,
            "regularity": self.regularity(),
        })
    }
}

fn check_bounds(a: &MonomialIdeal, limits: &Limits) -> Result<(), BettiError> {
    if a.is_zero() {
        return Err(BettiError::ZeroIdeal);
    }
    if a.nvars() > limits.max_vertices.min(32) {
        return Err(BettiError::Variables { count: a.nvars(), bound: limits.max_vertices.min(32) });
    }
    if a.len() > limits.max_generators {
        return Err(BettiError::Generators { count: a.len(), bound: limits.max_generators });
    }
    Ok(())
}

/// All nonzero multigraded Betti numbers of `a`.
pub fn betti_table(a: &MonomialIdeal, field: Field, limits: &Limits) -> Result<BettiTable, BettiError> {
    check_bounds(a, limits)?;
    let closure = lcm_closure(a, limits)?;
    let mut entries: Vec<(usize, Monomial, usize)> = closure
        .par_iter()
        .flat_map_iter(|b| {
            let ranks = homology_ranks(&upper_koszul_complex(a, b), field);
            ranks
                .into_iter()
                .enumerate()
                .filter(|&(_, r)| r > 0)
                .map(|(i, r)| (i, b.clone(), r))
                .collect::<Vec<_>>()
        })
        .collect();
    entries.sort_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)));
    Ok(BettiTable { field, entries })
}

pub fn regularity(a: &MonomialIdeal, field: Field, limits: &Limits) -> Result<u32, BettiError> {
    Ok(betti_table(a, field, limits)?.regularity().expect("nonzero ideal has β_0"))
}

/// `reg(S/a) = reg(a) - 1`
pub fn quotient_regularity(a: &MonomialIdeal, field: Field, limits: &Limits) -> Result<u32, BettiError> {
    Ok(regularity(a, field, limits)? - 1)
}

/// Socle-degree regularity of the Artinian ring `S/(I^(s) + m^{2s})`.
///
/// Returns the top degree with a nonzero graded piece, together with a report
/// asserting that it is `2s-1`.
pub fn socle_regularity(ctx: &EdgeIdealContext, s: u32) -> Result<(u32, VerificationReport)> {
    let nv = ctx.nvars();
    let q = ctx
        .symbolic_power(s)?
        .sum(&MonomialIdeal::maximal_power(nv, 2 * s))?;
    let below = q.standard_monomials_of_degree(2 * s - 1);
    let top = q.standard_monomials_of_degree(2 * s);
    let socle = (0..2 * s)
        .rev()
        .find(|&d| !q.standard_monomials_of_degree(d).is_empty())
        .expect("1 is a standard monomial");
    let mut report = VerificationReport::new("socle-regularity", Instance::new(&ctx.graph, &[], Some(s)))
        .detail("dim_2s_minus_1", below.len())
        .detail("dim_2s", top.len())
        .detail("socle_degree", socle);
    if below.is_empty() {
        report.fail("degree 2s-1 piece vanishes", Witness::note("quotient", "I^(s) + m^2s"));
    }
    if let Some(m) = top.first() {
        report.fail("degree 2s piece is nonzero", Witness::monomial("standard monomial", m));
    }
    Ok((socle, report))
}

/// `reg(S/I^(s)) ≥ 2s + ν(G) - 2`
pub fn lower_bound_check(ctx: &EdgeIdealContext, s: u32, field: Field) -> Result<VerificationReport> {
    let nu = ctx.graph.induced_matching_number(&ctx.limits)? as u32;
    let sym = ctx.symbolic_power(s)?;
    let reg = quotient_regularity(&sym, field, &ctx.limits)?;
    let bound = 2 * s + nu - 2;
    let mut report = VerificationReport::new("reg-lower-bound", Instance::new(&ctx.graph, &[], Some(s)))
        .detail("reg_quotient", reg)
        .detail("nu", nu)
        .detail("bound", bound)
        .detail("field", field.to_string());
    if reg < bound {
        report.fail(format!("reg(S/I^(s)) = {reg} < {bound}"), Witness::note("bound", "2s + ν(G) - 2"));
    }
    Ok(report)
}

/// `reg(S/c) ≤ ν(H)` for each supplied colon ideal `c`.
pub fn colon_bound_check(
    g: &Graph,
    colons: &[MonomialIdeal],
    nu_h: usize,
    field: Field,
    limits: &Limits,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("colon-reg-bound", Instance::new(g, &[], None))
        .detail("nu_h", nu_h)
        .detail("colons", colons.len());
    let mut worst = 0;
    for c in colons {
        if c.is_unit() {
            continue;
        }
        let r = quotient_regularity(c, field, limits)?;
        worst = worst.max(r);
        if r as usize > nu_h {
            report.fail(format!("reg(S/(I+L'')) = {r} > ν(H) = {nu_h}"), Witness::note("colon ideal", c.to_string()));
        }
    }
    report.set_detail("max_reg", worst);
    Ok(report)
}

/// For a forest `H`, `reg(S/I(H)) = ν(H)`.
pub fn forest_equality_check(h: &Graph, field: Field, limits: &Limits) -> Result<VerificationReport> {
    let nu = h.induced_matching_number(limits)?;
    let mut report = VerificationReport::new("forest-regularity", Instance::new(h, &[], None)).detail("nu", nu);
    if !h.is_forest() {
        return Ok(report.skip("not a forest"));
    }
    let i = crate::symbolic::edge_ideal(h);
    if i.is_zero() {
        report.set_detail("reg_quotient", 0);
        if nu != 0 {
            report.fail("edgeless graph with nonzero ν", Witness::note("graph", h.to_string()));
        }
        return Ok(report);
    }
    let reg = quotient_regularity(&i, field, limits)?;
    report.set_detail("reg_quotient", reg);
    if reg as usize != nu {
        report.fail(format!("reg(S/I(H)) = {reg} but ν(H) = {nu}"), Witness::note("graph", h.to_string()));
    }
    Ok(report)
}

/// `reg(I^(s)) = reg(I^s)`, both computed from full Betti tables.
pub fn regularity_equality(ctx: &EdgeIdealContext, s: u32, field: Field) -> Result<VerificationReport> {
    let sym = ctx.symbolic_power(s)?;
    let pow = ctx.power(s);
    let rs = regularity(&sym, field, &ctx.limits)?;
    let rp = regularity(&pow, field, &ctx.limits)?;
    let mut report = VerificationReport::new("reg-equality", Instance::new(&ctx.graph, &[], Some(s)))
        .detail("reg_symbolic", rs)
        .detail("reg_power", rp)
        .detail("field", field.to_string());
    if rs != rp {
        report.fail(format!("reg(I^(s)) = {rs} but reg(I^s) = {rp}"), Witness::note("field", field.to_string()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::symbolic::edge_ideal;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    fn ideal(s: &str, n: usize) -> MonomialIdeal {
        MonomialIdeal::parse(s, n).unwrap()
    }

    fn m(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    #[test]
    fn koszul_complexes_of_small_ideals() {
        let k = upper_koszul_complex(&ideal("(x1)", 1), &m("x1", 1));
        assert_eq!(k, SimplicialComplex::irrelevant(1));
        let k = upper_koszul_complex(&ideal("(x1*x2)", 2), &m("x1*x2", 2));
        assert_eq!(k, SimplicialComplex::irrelevant(2));
        let k3 = ideal("(x1*x2, x2*x3, x1*x3)", 3);
        let k = upper_koszul_complex(&k3, &m("x1*x2*x3", 3));
        assert_eq!(k.facets(), vec![0b001, 0b010, 0b100]);
        assert_eq!(homology_ranks(&k, Q), vec![0, 2]);
        assert!(upper_koszul_complex(&k3, &m("x1", 3)).is_void());
    }

    #[test]
    fn triangle_betti_table() {
        let t = betti_table(&ideal("(x1*x2, x2*x3, x1*x3)", 3), Q, &Limits::default()).unwrap();
        assert_eq!(t.get(1, &m("x1*x2*x3", 3)), 2);
        assert_eq!(t.graded(), BTreeMap::from([((0, 2), 3), ((1, 3), 2)]));
        assert_eq!(t.regularity(), Some(2));
    }

    #[test]
    fn regularity_examples() {
        let lim = Limits::default();
        assert_eq!(regularity(&ideal("(x1^2, x1*x2, x2^2)", 2), Q, &lim).unwrap(), 2);
        assert_eq!(regularity(&ideal("(x1*x2)", 2), Q, &lim).unwrap(), 2);
        assert_eq!(regularity(&edge_ideal(&families::cycle(5).graph), Q, &lim).unwrap(), 3);
        for t in 1..=4 {
            assert_eq!(regularity(&MonomialIdeal::maximal_power(3, t), Q, &lim).unwrap(), t);
        }
    }

    #[test]
    fn bounds_refuse_loudly() {
        let lim = Limits { max_lcm_closure: 5, ..Limits::default() };
        let e = betti_table(&edge_ideal(&families::cycle(5).graph), Q, &lim).unwrap_err();
        assert!(matches!(e, BettiError::LcmClosure { bound: 5, .. }));
        let lim = Limits { max_generators: 2, ..Limits::default() };
        assert!(matches!(
            betti_table(&edge_ideal(&families::cycle(5).graph), Q, &lim),
            Err(BettiError::Generators { count: 5, bound: 2 })
        ));
        assert_eq!(betti_table(&MonomialIdeal::zero(3), Q, &Limits::default()), Err(BettiError::ZeroIdeal));
    }

    #[test]
    fn socle_examples() {
        let lim = Limits::default();
        let c5 = EdgeIdealContext::new(&families::cycle(5).graph, &lim).unwrap();
        for (s, want) in [(2, 3), (3, 5)] {
            let (r, report) = socle_regularity(&c5, s).unwrap();
            assert_eq!(r, want);
            assert!(report.passed());
        }
        let p3 = EdgeIdealContext::new(&families::path(3), &lim).unwrap();
        assert_eq!(socle_regularity(&p3, 1).unwrap().0, 1);
    }

    #[test]
    fn lower_bound_examples() {
        let lim = Limits::default();
        let c5 = EdgeIdealContext::new(&families::cycle(5).graph, &lim).unwrap();
        let r = lower_bound_check(&c5, 2, Q).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["bound"], 3);
        let b = families::bowtie();
        let bow = EdgeIdealContext::new(&b.graph, &lim).unwrap();
        assert!(lower_bound_check(&bow, 2, Q).unwrap().passed());
    }

    #[test]
    fn forests_have_regularity_nu() {
        let lim = Limits::default();
        for n in 2..=8 {
            assert!(forest_equality_check(&families::path(n), Q, &lim).unwrap().passed());
        }
        let star = Graph::new(5, (1..5).map(|v| (0, v))).unwrap();
        assert!(forest_equality_check(&star, Q, &lim).unwrap().passed());
    }

    /// Hochster: `β_{i,σ}(I_Δ) = dim H̃_{|σ|-i-2}(Δ|σ)`.
    fn hochster(a: &MonomialIdeal, field: Field) -> BTreeMap<(usize, u64), usize> {
        let n = a.nvars();
        let mut out = BTreeMap::new();
        for sigma in 1u64..1 << n {
            let faces = (0..1u32 << n).filter(|&f| {
                (f as u64) & !sigma == 0 && !a.contains(&Monomial::from_vars(n, (0..n).filter(|&v| f >> v & 1 == 1)))
            });
            let delta = SimplicialComplex::from_facets(n, faces);
            let h = homology_ranks(&delta, field);
            let size = sigma.count_ones() as usize;
            for i in 0..size {
                // H̃_{size-i-2} sits at index size-i-1
                let idx = size - i - 1;
                if let Some(&r) = h.get(idx) {
                    if r > 0 {
                        out.insert((i, sigma), r);
                    }
                }
            }
        }
        out
    }

    fn as_map(t: &BettiTable) -> BTreeMap<(usize, u64), usize> {
        t.entries.iter().map(|(i, b, r)| ((*i, b.support_mask()), *r)).collect()
    }

    #[test]
    fn hochster_agrees_on_named_graphs() {
        let lim = Limits::default();
        for g in [families::cycle(5).graph, families::cycle(6).graph, families::bowtie().graph, families::path(6)] {
            let i = edge_ideal(&g);
            assert_eq!(as_map(&betti_table(&i, Q, &lim).unwrap()), hochster(&i, Q));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn hochster_agrees_on_random_graphs(n in 3usize..8, bits in any::<u32>()) {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let edges = pairs.into_iter().enumerate().filter(|(k, _)| bits >> (k % 32) & 1 == 1).map(|(_, e)| e);
            let g = Graph::new(n, edges).unwrap();
            prop_assume!(g.edge_count() > 0);
            let i = edge_ideal(&g);
            let t = betti_table(&i, Q, &Limits::default()).unwrap();
            prop_assert_eq!(as_map(&t), hochster(&i, Q));
            let zero: usize = t.entries.iter().filter(|e| e.0 == 0).map(|e| e.2).sum();
            prop_assert_eq!(zero, i.len());
            prop_assert!(t.regularity().unwrap() >= i.alpha_degree().unwrap());
        }

        #[test]
        fn zeroth_betti_are_generators(exps in proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 1..6)) {
            let a = MonomialIdeal::minimalize(4, exps.into_iter().map(Monomial::from_exponents).collect()).unwrap();
            prop_assume!(!a.is_unit());
            let t = betti_table(&a, Q, &Limits::default()).unwrap();
            let zero: Vec<Monomial> = t.entries.iter().filter(|e| e.0 == 0).map(|e| e.1.clone()).collect();
            prop_assert_eq!(zero, a.gens().to_vec());
            prop_assert!(t.entries.iter().filter(|e| e.0 == 0).all(|e| e.2 == 1));
        }
    }
}
