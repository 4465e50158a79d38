//! Edge factorizations, edgelex orderings, even connections and the colon,
//! ordering and regularity statements built on them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::betti::regularity;
use crate::graph::Graph;
use crate::homology::Field;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::report::{Instance, VerificationReport, Witness};
use crate::symbolic::{decompose, CycleDecomposition, EdgeIdealContext, Layer};
use crate::{Error, Result};

/// Which total order on edges (and variables) drives edgelex comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeOrder {
    /// `Leaf` when one designated cycle admits it, `Lex` otherwise.
    #[default]
    Auto,
    /// Edges sorted by `(min endpoint, max endpoint)`, smaller first.
    Lex,
    /// Edges in the order they were added to the graph.
    Listed,
    /// Leaf-peeling edges first, then lex with `y`-variables above cycle
    /// variables. Needs a designated cycle.
    Leaf,
}

impl fmt::Display for EdgeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeOrder::Auto => "auto",
            EdgeOrder::Lex => "lex",
            EdgeOrder::Listed => "listed",
            EdgeOrder::Leaf => "leaf",
        })
    }
}

impl FromStr for EdgeOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(EdgeOrder::Auto),
            "lex" => Ok(EdgeOrder::Lex),
            "listed" => Ok(EdgeOrder::Listed),
            "leaf" => Ok(EdgeOrder::Leaf),
            other => Err(format!("unknown edge order `{other}`")),
        }
    }
}

/// Concrete priorities: `edges[0]` and `vars[0]` are the largest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSpec {
    pub kind: EdgeOrder,
    pub edges: Vec<(usize, usize)>,
    pub vars: Vec<usize>,
    edge_rank: BTreeMap<(usize, usize), usize>,
    var_rank: Vec<usize>,
}

impl OrderSpec {
    fn build(kind: EdgeOrder, edges: Vec<(usize, usize)>, vars: Vec<usize>) -> Self {
        let edge_rank = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut var_rank = vec![0; vars.len()];
        for (i, &v) in vars.iter().enumerate() {
            var_rank[v] = i;
        }
        OrderSpec { kind, edges, vars, edge_rank, var_rank }
    }

    pub fn lex(g: &Graph) -> Self {
        Self::build(EdgeOrder::Lex, g.sorted_edges(), (0..g.vertex_count()).collect())
    }

    pub fn listed(g: &Graph) -> Self {
        Self::build(EdgeOrder::Listed, g.edges().to_vec(), (0..g.vertex_count()).collect())
    }

    pub fn leaf(g: &Graph, cd: &CycleDecomposition) -> Result<Self> {
        Ok(leaf_order(g, cd)?.spec)
    }

    pub fn for_kind(g: &Graph, kind: EdgeOrder, cd: Option<&CycleDecomposition>) -> Result<Self> {
        match (kind, cd) {
            (EdgeOrder::Auto, Some(cd)) => Ok(Self::leaf(g, cd).unwrap_or_else(|_| Self::lex(g))),
            (EdgeOrder::Auto, None) => Ok(Self::lex(g)),
            (EdgeOrder::Lex, _) => Ok(Self::lex(g)),
            (EdgeOrder::Listed, _) => Ok(Self::listed(g)),
            (EdgeOrder::Leaf, Some(cd)) => Self::leaf(g, cd),
            (EdgeOrder::Leaf, None) => Err(Error::Precondition("the leaf order needs a designated cycle".into())),
        }
    }

    pub fn edge_rank(&self, e: (usize, usize)) -> usize {
        self.edge_rank[&(e.0.min(e.1), e.0.max(e.1))]
    }

    pub fn var_rank(&self, v: usize) -> usize {
        self.var_rank[v]
    }

    /// Lex comparison of monomials under the variable priority.
    pub fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.vars
            .iter()
            .map(|&v| a.exponent(v).cmp(&b.exponent(v)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    pub fn describe(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|(u, v)| format!("x{}x{}", u + 1, v + 1)).collect();
        format!("{}: {}", self.kind, edges.join(" > "))
    }
}

/// The leaf-peeling data: `z_1 > … > z_m`, their edges, then `y`'s and `x`'s.
#[derive(Debug, Clone)]
pub struct LeafOrder {
    pub spec: OrderSpec,
    pub z: Vec<usize>,
    pub leaf_edges: Vec<(usize, usize)>,
    pub y: Vec<usize>,
    pub x: Vec<usize>,
}

/// Peels the vertices outside `N(C)` as leaves and builds the edge order.
pub fn leaf_order(g: &Graph, cd: &CycleDecomposition) -> Result<LeafOrder> {
    let [cycle] = cd.cycles.as_slice() else {
        return Err(Error::Precondition("the leaf order needs exactly one designated cycle".into()));
    };
    let x: Vec<usize> = cycle.vertices().to_vec();
    let zs: Vec<usize> = cd.k_vars.clone();
    let on_cycle = g.on_cycle_flags();
    if let Some(&z) = zs.iter().find(|&&z| on_cycle[z]) {
        return Err(Error::Precondition(format!("vertex {} outside N(C) lies on a cycle", z + 1)));
    }
    let y: Vec<usize> = cd.l_vars.iter().copied().filter(|v| !x.contains(v)).collect();
    let mut live: HashSet<(usize, usize)> = g.edges().iter().copied().collect();
    let degree = |v: usize, live: &HashSet<(usize, usize)>| g.neighbors(v).iter().filter(|&&w| live.contains(&(v.min(w), v.max(w)))).count();
    let mut peeled: Vec<usize> = Vec::new();
    let mut leaf_edges = Vec::new();
    loop {
        let next = zs
            .iter()
            .copied()
            .find(|z| !peeled.contains(z) && degree(*z, &live) == 1);
        let Some(z) = next else { break };
        let w = *g
            .neighbors(z)
            .iter()
            .find(|&&w| live.contains(&(z.min(w), z.max(w))))
            .expect("degree one");
        let e = (z.min(w), z.max(w));
        live.remove(&e);
        peeled.push(z);
        leaf_edges.push(e);
    }
    for &z in &zs {
        if !peeled.contains(&z) {
            if degree(z, &live) > 0 {
                return Err(Error::Precondition(format!("vertex {} cannot be peeled as a leaf", z + 1)));
            }
            peeled.push(z);
        }
    }
    let mut vars = peeled.clone();
    vars.extend(&y);
    vars.extend(&x);
    let mut rank = vec![0; g.vertex_count()];
    for (i, &v) in vars.iter().enumerate() {
        rank[v] = i;
    }
    let mut rest: Vec<(usize, usize)> = live.into_iter().collect();
    let key = |&(u, v): &(usize, usize)| {
        let (a, b) = (rank[u].min(rank[v]), rank[u].max(rank[v]));
        (a, b)
    };
    rest.sort_by_key(key);
    let mut edges = leaf_edges.clone();
    edges.extend(rest);
    Ok(LeafOrder {
        spec: OrderSpec::build(EdgeOrder::Leaf, edges, vars),
        z: peeled,
        leaf_edges,
        y,
        x,
    })
}

/// A multiset of edges, sorted by the graph's edge index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeFactorization {
    pub edges: Vec<(usize, usize)>,
    pub product: Monomial,
}

impl EdgeFactorization {
    pub fn new(nvars: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        let product = Monomial::from_vars(nvars, edges.iter().flat_map(|&(u, v)| [u, v]));
        EdgeFactorization { edges, product }
    }

    /// Distinct edges with multiplicities.
    pub fn multiplicities(&self) -> Vec<((usize, usize), usize)> {
        let mut out: Vec<((usize, usize), usize)> = Vec::new();
        for &e in &self.edges {
            match out.last_mut() {
                Some((last, c)) if *last == e => *c += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }
}

fn collect_factorizations(
    g: &Graph,
    start: usize,
    left: usize,
    rem: &mut Vec<u32>,
    cur: &mut Vec<(usize, usize)>,
    exact: bool,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if left == 0 {
        if !exact || rem.iter().all(|&e| e == 0) {
            out.push(cur.clone());
        }
        return;
    }
    let edges = g.sorted_edges();
    for (i, &(u, v)) in edges.iter().enumerate().skip(start) {
        if rem[u] > 0 && rem[v] > 0 {
            rem[u] -= 1;
            rem[v] -= 1;
            cur.push((u, v));
            collect_factorizations(g, i, left - 1, rem, cur, exact, out);
            cur.pop();
            rem[u] += 1;
            rem[v] += 1;
        }
    }
}

/// Every multiset of `s` edges whose product is exactly `m`.
pub fn enumerate_factorizations(g: &Graph, m: &Monomial, s: usize) -> Vec<EdgeFactorization> {
    if m.degree() as usize != 2 * s {
        return Vec::new();
    }
    dividing_factorizations(g, m, s, true)
}

fn dividing_factorizations(g: &Graph, m: &Monomial, s: usize, exact: bool) -> Vec<EdgeFactorization> {
    let mut out = Vec::new();
    let mut rem = m.exponents().to_vec();
    collect_factorizations(g, 0, s, &mut rem, &mut Vec::new(), exact, &mut out);
    out.into_iter().map(|e| EdgeFactorization::new(g.vertex_count(), e)).collect()
}

/// `m ∈ I^t`: some `t` edges have a product dividing `m`.
pub fn in_edge_power(g: &Graph, m: &Monomial, t: usize) -> bool {
    fn go(edges: &[(usize, usize)], start: usize, left: usize, rem: &mut [u32]) -> bool {
        if left == 0 {
            return true;
        }
        for (i, &(u, v)) in edges.iter().enumerate().skip(start) {
            if rem[u] > 0 && rem[v] > 0 {
                rem[u] -= 1;
                rem[v] -= 1;
                let found = go(edges, i, left - 1, rem);
                rem[u] += 1;
                rem[v] += 1;
                if found {
                    return true;
                }
            }
        }
        false
    }
    go(&g.sorted_edges(), 0, t, &mut m.exponents().to_vec())
}

/// `e` edge-divides `u ∈ I^s` when `u / e ∈ I^{s-1}`.
pub fn edge_divides(g: &Graph, e: (usize, usize), u: &Monomial, s: usize) -> bool {
    if s == 0 {
        return false;
    }
    let em = Monomial::from_vars(u.nvars(), [e.0, e.1]);
    match u.checked_div(&em) {
        Some(rest) => g.has_edge(e.0, e.1) && in_edge_power(g, &rest, s - 1),
        None => false,
    }
}

/// A maximal expression `u = f·u'` with `f ∈ G(I^s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expression {
    pub f: EdgeFactorization,
    /// Edge multiplicities of `f`, indexed by edge priority.
    pub counts: Vec<u32>,
    pub tail: Monomial,
}

impl Expression {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "f": self.f.product.to_string(),
            "edges": self.f.edges.iter().map(|(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
            "tail": self.tail.to_string(),
        })
    }
}

fn counts_of(spec: &OrderSpec, f: &EdgeFactorization) -> Vec<u32> {
    let mut c = vec![0u32; spec.edges.len()];
    for &e in &f.edges {
        c[spec.edge_rank(e)] += 1;
    }
    c
}

/// The edgelex-largest `f ∈ G(I^s)` dividing `u`, with `u' = u/f`.
pub fn max_expression(g: &Graph, spec: &OrderSpec, u: &Monomial, s: usize) -> Option<Expression> {
    dividing_factorizations(g, u, s, false)
        .into_iter()
        .map(|f| {
            let counts = counts_of(spec, &f);
            let tail = u.checked_div(&f.product).expect("factorization divides");
            Expression { f, counts, tail }
        })
        .max_by(|a, b| a.counts.cmp(&b.counts))
}

/// Compares two maximal expressions: edgelex on `f`, then lex on the tail.
pub fn compare_expressions(spec: &OrderSpec, a: &Expression, b: &Expression) -> Ordering {
    a.counts.cmp(&b.counts).then_with(|| spec.lex_cmp(&a.tail, &b.tail))
}

/// Edgelex comparison of `a, b ∈ G(I^s m^r)`.
pub fn edgelex_compare(
    g: &Graph,
    spec: &OrderSpec,
    a: &Monomial,
    b: &Monomial,
    s: usize,
    r: usize,
) -> Result<(Ordering, Expression, Expression)> {
    let expr = |m: &Monomial| {
        if m.degree() as usize != 2 * s + r {
            return Err(Error::Precondition(format!("{m} has degree {} ≠ 2s + r", m.degree())));
        }
        max_expression(g, spec, m, s).ok_or_else(|| Error::Precondition(format!("{m} is not in I^{s}")))
    };
    let (ea, eb) = (expr(a)?, expr(b)?);
    Ok((compare_expressions(spec, &ea, &eb), ea, eb))
}

/// Generators sorted from largest to smallest, with their maximal expressions.
#[derive(Debug, Clone)]
pub struct GeneratorOrdering {
    pub s: usize,
    pub gens: Vec<Monomial>,
    pub expressions: Vec<Expression>,
}

impl GeneratorOrdering {
    /// Orders monomials of `I^s·m^*` by their maximal expressions.
    pub fn of(g: &Graph, spec: &OrderSpec, gens: &[Monomial], s: usize) -> Result<Self> {
        let mut pairs = gens
            .iter()
            .map(|m| {
                max_expression(g, spec, m, s)
                    .map(|e| (m.clone(), e))
                    .ok_or_else(|| Error::Precondition(format!("{m} is not in I^{s}")))
            })
            .collect::<Result<Vec<_>>>()?;
        pairs.sort_by(|a, b| compare_expressions(spec, &b.1, &a.1).then_with(|| b.0.cmp(&a.0)));
        let (gens, expressions) = pairs.into_iter().unzip();
        Ok(GeneratorOrdering { s, gens, expressions })
    }

    /// `G(I^s m^r)` in decreasing order.
    pub fn of_power(ctx: &EdgeIdealContext, spec: &OrderSpec, s: usize, r: usize) -> Result<Self> {
        let j = ctx
            .power(s as u32)
            .product(&MonomialIdeal::maximal_power(ctx.nvars(), r as u32))?;
        Self::of(&ctx.graph, spec, j.gens(), s)
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.gens.iter().position(|x| x == m)
    }
}

/// Whether paths may revisit vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    /// Walks: vertices may repeat, factor edges respect multiplicity.
    Walk,
    /// Simple paths: all vertices distinct.
    Simple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenConnection {
    pub x: usize,
    pub y: usize,
    pub path: Vec<usize>,
}

impl EvenConnection {
    pub fn monomial(&self, nvars: usize) -> Monomial {
        Monomial::from_vars(nvars, [self.x, self.y])
    }
}

/// All unordered pairs `{x, y}` (including `x = y` under walk semantics) that
/// are even connected with respect to `f`, each with one witness path.
pub fn even_connections(g: &Graph, f: &EdgeFactorization, sem: Semantics) -> Vec<EvenConnection> {
    let mult = f.multiplicities();
    let mut found: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut record = |path: &[usize], y: usize| {
        let x = path[0];
        let key = (x.min(y), x.max(y));
        let candidate: Vec<usize> = path.iter().copied().chain([y]).collect();
        let slot = found.entry(key).or_insert_with(|| candidate.clone());
        if candidate.len() < slot.len() {
            *slot = candidate;
        }
    };
    for x in 0..g.vertex_count() {
        match sem {
            Semantics::Walk => {
                // states sit at an even position p_{2l}, l ≥ 1
                let mut seen: HashSet<(usize, Vec<u32>)> = HashSet::new();
                let mut queue: VecDeque<(Vec<usize>, Vec<u32>)> = VecDeque::new();
                let start = vec![x];
                extend_walk(g, &mult, &start, &vec![0; mult.len()], |p, used| {
                    if seen.insert((*p.last().unwrap(), used.clone())) {
                        queue.push_back((p, used));
                    }
                });
                while let Some((p, used)) = queue.pop_front() {
                    for &y in g.neighbors(*p.last().unwrap()) {
                        record(&p, y);
                    }
                    extend_walk(g, &mult, &p, &used, |p2, used2| {
                        if seen.insert((*p2.last().unwrap(), used2.clone())) {
                            queue.push_back((p2, used2));
                        }
                    });
                }
            }
            Semantics::Simple => {
                let mut path = vec![x];
                simple_dfs(g, &mult, &mut path, &mut record);
            }
        }
    }
    found
        .into_iter()
        .map(|((x, y), path)| EvenConnection { x, y, path })
        .collect()
}

/// Appends one graph edge and one unused factor edge to the walk.
fn extend_walk(
    g: &Graph,
    mult: &[((usize, usize), usize)],
    path: &[usize],
    used: &[u32],
    mut push: impl FnMut(Vec<usize>, Vec<u32>),
) {
    let last = *path.last().unwrap();
    for &a in g.neighbors(last) {
        for (j, &((u, v), m)) in mult.iter().enumerate() {
            if used[j] as usize >= m || (u != a && v != a) {
                continue;
            }
            let b = if u == a { v } else { u };
            let mut p = path.to_vec();
            p.extend([a, b]);
            let mut used2 = used.to_vec();
            used2[j] += 1;
            push(p, used2);
        }
    }
}

fn simple_dfs(g: &Graph, mult: &[((usize, usize), usize)], path: &mut Vec<usize>, record: &mut impl FnMut(&[usize], usize)) {
    let last = *path.last().unwrap();
    if path.len() >= 3 {
        for &y in g.neighbors(last) {
            if !path.contains(&y) {
                record(path, y);
            }
        }
    }
    for &a in g.neighbors(last) {
        if path.contains(&a) {
            continue;
        }
        for &((u, v), _) in mult {
            if u != a && v != a {
                continue;
            }
            let b = if u == a { v } else { u };
            if path.contains(&b) {
                continue;
            }
            path.extend([a, b]);
            simple_dfs(g, mult, path, record);
            path.truncate(path.len() - 2);
        }
    }
}

/// Re-checks a path against the definition of an even connection.
pub fn validate_path(g: &Graph, f: &EdgeFactorization, path: &[usize], sem: Semantics) -> Result<(), String> {
    if path.len() < 4 || path.len() % 2 != 0 {
        return Err(format!("a path p_0..p_(2k+1) with k ≥ 1 needs an even number ≥ 4 of vertices, got {}", path.len()));
    }
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(format!("{} {} is not an edge", w[0] + 1, w[1] + 1));
        }
    }
    let mut used: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let k = (path.len() - 2) / 2;
    for l in 1..=k {
        let (a, b) = (path[2 * l - 1], path[2 * l]);
        let e = (a.min(b), a.max(b));
        if !f.edges.contains(&e) {
            return Err(format!("step {l}: {} {} is not a factor edge", a + 1, b + 1));
        }
        *used.entry(e).or_insert(0) += 1;
    }
    for (e, count) in used {
        let avail = f.edges.iter().filter(|&&x| x == e).count();
        if count > avail {
            return Err(format!("edge {} {} used {count} times but appears {avail} times", e.0 + 1, e.1 + 1));
        }
    }
    if sem == Semantics::Simple {
        let distinct: HashSet<&usize> = path.iter().collect();
        if distinct.len() != path.len() {
            return Err("vertex repeated in a simple path".into());
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ColonComparison {
    pub via_even: MonomialIdeal,
    pub direct: MonomialIdeal,
    /// The even-connection ideal with `x = y` connections left out.
    pub without_self: MonomialIdeal,
    pub connections: Vec<EvenConnection>,
    pub factorizations: usize,
}

impl ColonComparison {
    pub fn agree(&self) -> bool {
        self.via_even == self.direct
    }

    /// Leaving out self-connections changes the ideal.
    pub fn self_connections_needed(&self) -> bool {
        self.without_self != self.via_even
    }
}

/// `I^s : u` through even connections over every factorization of
/// `u ∈ G(I^{s-1})`, compared with the direct colon.
pub fn colon_via_even_connections(ctx: &EdgeIdealContext, u: &Monomial, s: usize) -> Result<ColonComparison> {
    let g = &ctx.graph;
    let nv = ctx.nvars();
    if s == 0 {
        return Err(Error::Precondition("s must be at least 1".into()));
    }
    let facts = enumerate_factorizations(g, u, s - 1);
    if facts.is_empty() {
        return Err(Error::Precondition(format!("{u} is not a minimal generator of I^{}", s - 1)));
    }
    let mut connections: Vec<EvenConnection> = Vec::new();
    for f in &facts {
        for c in even_connections(g, f, Semantics::Walk) {
            validate_path(g, f, &c.path, Semantics::Walk).expect("search returns valid paths");
            if !connections.iter().any(|d| (d.x, d.y) == (c.x, c.y)) {
                connections.push(c);
            }
        }
    }
    connections.sort_by_key(|c| (c.x, c.y));
    let extra = |with_self: bool| {
        MonomialIdeal::minimalize_unchecked(
            nv,
            connections.iter().filter(|c| with_self || c.x != c.y).map(|c| c.monomial(nv)).collect(),
        )
    };
    let via_even = ctx.ideal.sum(&extra(true))?;
    let without_self = ctx.ideal.sum(&extra(false))?;
    let direct = ctx.power(s as u32).colon_monomial(u)?;
    Ok(ColonComparison { via_even, direct, without_self, connections, factorizations: facts.len() })
}

/// Runs the even-connection colon against the direct colon for every
/// `u ∈ G(I^{s-1})`.
pub fn banerjee_check(ctx: &EdgeIdealContext, s: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("banerjee", Instance::new(&ctx.graph, &[], Some(s as u32)));
    let gens = ctx.power(s as u32 - 1);
    let mut self_needed = Vec::new();
    for u in gens.gens() {
        let cmp = colon_via_even_connections(ctx, u, s)?;
        if !cmp.agree() {
            let w = cmp.direct.difference_witness(&cmp.via_even).expect("ideals differ");
            report.fail(format!("I^s : {u} differs from the even-connection ideal"), Witness::monomial("witness", &w));
        }
        if cmp.self_connections_needed() {
            self_needed.push(u.to_string());
        }
    }
    report.set_detail("generators_checked", gens.len());
    report.set_detail("self_connection_needed", self_needed);
    Ok(report)
}

/// For `j < k` in the edgelex order on `G(I^s m^r)`: either
/// `(u_j : u_k) ⊆ I^{s+1} : u_k`, or some `i < k` has `(u_i : u_k)`
/// generated by a variable dividing `(u_j : u_k)`.
pub fn verify_order_lemma(ctx: &EdgeIdealContext, spec: &OrderSpec, s: usize, r: usize) -> Result<VerificationReport> {
    let ord = GeneratorOrdering::of_power(ctx, spec, s, r)?;
    let next = ctx.power(s as u32 + 1);
    let mut report = VerificationReport::new(
        "order-lemma",
        Instance::new(&ctx.graph, &[], Some(s as u32)).with("r", r),
    )
    .detail("generators", ord.gens.len())
    .detail("edge_order", spec.describe());
    let mut second_branch = 0usize;
    for k in 1..ord.gens.len() {
        let uk = &ord.gens[k];
        // variables v with (u_i : u_k) = (v) for some i < k
        let var_colons: Vec<(usize, usize)> = (0..k)
            .filter_map(|i| {
                let c = ord.gens[i].colon(uk);
                (c.degree() == 1).then(|| (i, c.support()[0]))
            })
            .collect();
        for j in 0..k {
            let w = ord.gens[j].colon(uk);
            if next.contains(&w.mul(uk)) {
                continue;
            }
            match var_colons.iter().find(|&&(_, v)| w.exponent(v) > 0) {
                Some(&(i, _)) => {
                    debug_assert!(i < k);
                    second_branch += 1;
                }
                None => {
                    report.fail(
                        format!("pair (j={}, k={}) satisfies neither branch", j + 1, k + 1),
                        Witness::monomial(format!("u_j = {}, u_k = {uk}; colon", ord.gens[j]), &w),
                    );
                }
            }
        }
    }
    report.set_detail("second_branch_uses", second_branch);
    Ok(report)
}

/// For every `u_t ∈ G(I^s)` and every pair `z_i, z_j` even connected (simple
/// paths) with respect to some factorization of `u_t`, some larger `u_s` has
/// `(u_s : u_t) = (z_min(i,j))`.
pub fn verify_leaf_lemma(ctx: &EdgeIdealContext, cd: &CycleDecomposition, s: usize) -> Result<VerificationReport> {
    let g = &ctx.graph;
    let leaf = leaf_order(g, cd)?;
    let ord = GeneratorOrdering::of_power(ctx, &leaf.spec, s, 0)?;
    let mut report = VerificationReport::new("leaf-lemma", Instance::new(g, &cd.cycles, Some(s as u32)))
        .detail("z", leaf.z.iter().map(|z| z + 1).collect::<Vec<_>>())
        .detail("edge_order", leaf.spec.describe())
        .detail("generators", ord.gens.len());
    let zrank = |v: usize| leaf.z.iter().position(|&z| z == v);
    let mut pairs_checked = 0usize;
    for (t, ut) in ord.gens.iter().enumerate() {
        let mut pairs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for f in enumerate_factorizations(g, ut, s) {
            for c in even_connections(g, &f, Semantics::Simple) {
                if let (Some(a), Some(b)) = (zrank(c.x), zrank(c.y)) {
                    pairs.entry((a.min(b), a.max(b))).or_insert(c.path);
                }
            }
        }
        for ((a, _), path) in pairs {
            pairs_checked += 1;
            let zk = leaf.z[a];
            let ok = ord.gens[..t].iter().any(|us| {
                let c = us.colon(ut);
                c.degree() == 1 && c.exponent(zk) == 1
            });
            if !ok {
                report.fail(
                    format!("no larger generator u with (u : {ut}) = (x{})", zk + 1),
                    Witness::path("even connection", &path),
                );
            }
        }
    }
    report.set_detail("pairs_checked", pairs_checked);
    Ok(report)
}

/// Splits a colon ideal as `I + (variables)`; `None` when it has another shape.
fn variable_part(ctx: &EdgeIdealContext, c: &MonomialIdeal) -> Result<Option<Vec<usize>>> {
    let vars = c.linear_part();
    let expected = ctx.ideal.sum(&MonomialIdeal::variables(ctx.nvars(), vars.iter().copied()))?;
    Ok((expected == *c).then_some(vars))
}

#[derive(Debug, Clone)]
pub struct ColonChain {
    /// The colon ideals `(I_{i-1} + (u_1..u_j)) : u_{j+1}` met along the chain.
    pub colons: Vec<MonomialIdeal>,
    pub report: VerificationReport,
}

/// Checks the single-layer colon `μ^{i-1}K^{i-1}I^{s-(i-1)(n+1)} : f` and the
/// running colons `(I_{i-1} + (u_1..u_j)) : u_{j+1}` for `1 ≤ i ≤ k`.
pub fn verify_colon_chain(ctx: &EdgeIdealContext, cd: &CycleDecomposition, s: u32) -> Result<ColonChain> {
    let g = &ctx.graph;
    let leaf = leaf_order(g, cd)?;
    let k = cd.top_index(s);
    let l_vars = &cd.l_vars;
    let mut report = VerificationReport::new("colon-chain", Instance::new(g, &cd.cycles, Some(s)))
        .detail("k", k)
        .detail("edge_order", leaf.spec.describe());
    let layers = decompose(ctx, cd, s, Layer::WithK);
    let mut colons = Vec::new();
    let mut layer_checks = 0usize;
    let mut skipped_in_prev = 0usize;
    let mut skipped_unit = 0usize;
    let check_shape = |report: &mut VerificationReport, c: &MonomialIdeal, label: String| -> Result<()> {
        match variable_part(ctx, c)? {
            Some(vars) if l_vars.iter().all(|v| vars.contains(v)) => {}
            Some(_) => report.fail(format!("{label}: variable part misses some of L"), Witness::note("colon", c.to_string())),
            None => report.fail(format!("{label}: not of the form I + (variables)"), Witness::note("colon", c.to_string())),
        }
        Ok(())
    };
    let mut partial = layers.terms[0].1.clone();
    for i in 1..=k {
        let prev = &layers.terms[i as usize - 1].1;
        let layer = &layers.terms[i as usize].1;
        for f in layer.gens() {
            if prev.contains(f) {
                skipped_in_prev += 1;
                continue;
            }
            layer_checks += 1;
            check_shape(&mut report, &prev.colon_monomial(f)?, format!("layer {} : {f}", i - 1))?;
        }
        // order G(μ^i K^i I^{s'}) through the ordering of G(K^i I^{s'})
        let sp = (s - i * (cd.n + 1)) as usize;
        let mu_i = cd.mu_list[0].pow(i);
        let rest = cd.k.power(i).product(&ctx.power(sp as u32))?;
        let ord = GeneratorOrdering::of(g, &leaf.spec, rest.gens(), sp)?;
        for w in &ord.gens {
            let u = w.mul(&mu_i);
            if partial.contains(&u) {
                skipped_unit += 1;
                continue;
            }
            let c = partial.colon_monomial(&u)?;
            check_shape(&mut report, &c, format!("running colon at {u}"))?;
            colons.push(c);
            partial = partial.sum(&MonomialIdeal::principal(u))?;
        }
        debug_assert_eq!(partial, partial.sum(layer)?);
    }
    if cd.k_vars.is_empty() && k >= 1 {
        // K = 0: the refined layers vanish; check the J-layer colons instead
        for i in 1..=k {
            let prev = ctx.power(s - (i - 1) * (cd.n + 1));
            let layer = crate::symbolic::layer_term(ctx, cd, s, i, Layer::Plain);
            for f in layer.gens() {
                if prev.contains(f) {
                    continue;
                }
                layer_checks += 1;
                check_shape(&mut report, &prev.colon_monomial(f)?, format!("J-layer {} : {f}", i - 1))?;
            }
        }
        report.set_detail("k_empty", true);
    }
    report.set_detail("layer_colons_checked", layer_checks);
    report.set_detail("running_colons_checked", colons.len());
    report.set_detail("skipped_in_previous_layer", skipped_in_prev);
    report.set_detail("skipped_already_in_sum", skipped_unit);
    Ok(ColonChain { colons, report })
}

/// `reg(I^s) = reg(I_{i-1})` for `1 ≤ i ≤ k+1`, where
/// `I_{i-1} = Σ_{t<i} μ^t K^t I^{s-t(n+1)}`.
pub fn verify_reg_chain(ctx: &EdgeIdealContext, cd: &CycleDecomposition, s: u32, field: Field) -> Result<VerificationReport> {
    let g = &ctx.graph;
    let mut report = VerificationReport::new("reg-chain", Instance::new(g, &cd.cycles, Some(s)));
    let [cycle] = cd.cycles.as_slice() else {
        return Ok(report.skip("needs exactly one designated cycle"));
    };
    let hyp = g.check_hypotheses(cycle, &ctx.limits)?;
    report.set_detail("nu_g", hyp.nu_g);
    report.set_detail("nu_h", hyp.nu_h);
    if !hyp.gap_at_least_three() {
        return Ok(report.skip("ν(G)−ν(H) < 3"));
    }
    let layers = decompose(ctx, cd, s, Layer::WithK);
    let target = regularity(&ctx.power(s), field, &ctx.limits)?;
    report.set_detail("reg_power", target);
    let mut partial = MonomialIdeal::zero(ctx.nvars());
    let mut values = Vec::new();
    for (i, term) in &layers.terms {
        partial = partial.sum(term)?;
        let r = regularity(&partial, field, &ctx.limits)?;
        values.push(r);
        if r != target {
            report.fail(
                format!("reg(I_{i}) = {r} but reg(I^s) = {target}"),
                Witness::note("partial sum", format!("i = {i}")),
            );
        }
    }
    report.set_detail("reg_partial_sums", values);
    report.set_detail("field", field.to_string());
    Ok(report)
}
