//! Acceptance criteria. Each test prints one `criterion N ... pass|fail` line.
//!
//! Every check is exact; the only tolerances are the wall-clock budgets below.

use std::time::{Duration, Instant};

use edgereg::betti;
use edgereg::evencon::{self, OrderSpec};
use edgereg::families::{self, Instance};
use edgereg::homology::Field;
use edgereg::symbolic::{self, CycleDecomposition, EdgeIdealContext};
use edgereg::{Graph, Limits, MonomialIdeal};
use num_rational::Ratio;

const Q: Field = Field::Rationals;

const BUDGET_ALPHA: Duration = Duration::from_secs(10);
const BUDGET_DECOMPOSITION: Duration = Duration::from_secs(60);
const BUDGET_M2S: Duration = Duration::from_secs(60);
const BUDGET_BIPARTITE: Duration = Duration::from_secs(300);
const BUDGET_BANERJEE: Duration = Duration::from_secs(300);
const BUDGET_MAIN_INSTANCE: Duration = Duration::from_secs(600);
const BUDGET_FORESTS: Duration = Duration::from_secs(120);
const BUDGET_RESURGENCE: Duration = Duration::from_secs(120);
const BUDGET_ORDERINGS: Duration = Duration::from_secs(600);

/// lcm-lattice bound for the ignored reg-chain run; the default stops at 20000.
const RAISED_LCM_CLOSURE: usize = 5_000_000;

const SEED_NON_BIPARTITE: u64 = 2024;
const SEED_BANERJEE: u64 = 7;
const SEED_FORESTS: u64 = 99;

fn announce(n: u32, name: &str, ok: bool, elapsed: Duration, budget: Option<Duration>, detail: &str) {
    let within = budget.map_or(true, |b| elapsed <= b);
    let verdict = if ok && within { "pass" } else { "fail" };
    let budget = budget.map_or(String::new(), |b| format!(" / budget {:.0?}", b));
    println!("criterion {n:>2} [{name}]: {verdict} ({:.2?}{budget}) {detail}", elapsed);
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(within, "criterion {n} exceeded its time budget");
}

fn ctx(g: &Graph) -> EdgeIdealContext {
    EdgeIdealContext::new(g, &Limits::default()).unwrap()
}

fn cd(i: &Instance) -> CycleDecomposition {
    CycleDecomposition::new(&i.graph, i.cycles.clone()).unwrap()
}

fn decomposition_instances() -> Vec<(Instance, u32)> {
    vec![
        (families::cycle(5), 4),
        (families::cycle(7), 4),
        (families::bowtie(), 3),
        (families::cycle_with_pendant_path(5, 3), 3),
    ]
}

#[test]
fn criterion_01_alpha_closed_form() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in [5, 7] {
        let inst = families::cycle(k);
        let (c, d) = (ctx(&inst.graph), cd(&inst));
        for s in 1..=5 {
            let r = symbolic::verify_alpha(&c, &d, s).unwrap();
            if !r.passed() {
                failures.push(format!("C{k} s={s}: {:?}", r.reason));
            }
        }
    }
    announce(1, "alpha of symbolic powers", failures.is_empty(), start.elapsed(), Some(BUDGET_ALPHA), &failures.join("; "));
}

#[test]
fn criterion_02_sum_decomposition() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (inst, s_max) in decomposition_instances() {
        let (c, d) = (ctx(&inst.graph), cd(&inst));
        for s in 1..=s_max {
            let (_, r) = symbolic::decompose_symbolic(&c, &d, s).unwrap();
            checked += 1;
            if !r.passed() {
                failures.push(format!("{} s={s}: {:?}", inst.name, r.witnesses));
            }
        }
    }
    let detail = format!("{checked} instances {}", failures.join("; "));
    announce(2, "symbolic power as sum of J-layers", failures.is_empty(), start.elapsed(), Some(BUDGET_DECOMPOSITION), &detail);
}

#[test]
fn criterion_03_m2s_identities() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (inst, s_max) in decomposition_instances() {
        let (c, d) = (ctx(&inst.graph), cd(&inst));
        for s in 1..=s_max {
            let r = symbolic::m2s_identities(&c, &d, s).unwrap();
            let both = r.details["interLem"] == true && r.details["refinement"] == true;
            if !both {
                failures.push(format!("{} s={s}: {:?}", inst.name, r.reason));
            }
        }
    }
    announce(3, "intersection with m^2s", failures.is_empty(), start.elapsed(), Some(BUDGET_M2S), &failures.join("; "));
}

#[test]
fn criterion_04_dominant_cycles() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for inst in [families::cycle(5), families::bowtie(), families::c5_whiskers()] {
        let (c, d) = (ctx(&inst.graph), cd(&inst));
        assert!(d.k_vars.is_empty(), "{} must be dominant", inst.name);
        for s in 1..=3 {
            let nv = c.nvars();
            let left = c
                .symbolic_power(s)
                .unwrap()
                .intersection(&MonomialIdeal::maximal_power(nv, 2 * s))
                .unwrap();
            if left != c.power(s) {
                failures.push(format!("{} s={s}", inst.name));
            }
        }
    }
    announce(4, "dominant cycle gives I^s", failures.is_empty(), start.elapsed(), None, &failures.join("; "));
}

#[test]
fn criterion_05_bipartite_criterion() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut bipartite = 0;
    for n in 2..=6 {
        for g in families::connected_bipartite_graphs(n) {
            bipartite += 1;
            let r = symbolic::bipartite_criterion(&ctx(&g), 3).unwrap();
            if !r.passed() {
                failures.push(format!("bipartite {g:?}"));
            }
        }
    }
    let others = families::random_non_bipartite(SEED_NON_BIPARTITE, 20, 4, 7);
    for g in &others {
        let r = symbolic::bipartite_criterion(&ctx(g), 3).unwrap();
        if !r.passed() || r.details.get("separating_s").is_none() {
            failures.push(format!("non-bipartite {g:?}: {:?}", r.reason));
        }
    }
    let detail = format!("{bipartite} bipartite classes, {} non-bipartite {}", others.len(), failures.join("; "));
    announce(5, "bipartite iff symbolic equals ordinary", failures.is_empty(), start.elapsed(), Some(BUDGET_BIPARTITE), &detail);
}

#[test]
fn criterion_06_even_connection_colons() {
    let start = Instant::now();
    let mut graphs: Vec<(String, Graph)> = vec![
        ("C5".into(), families::cycle(5).graph),
        ("C7".into(), families::cycle(7).graph),
        ("bowtie".into(), families::bowtie().graph),
    ];
    for (i, g) in families::random_graphs(SEED_BANERJEE, 20, 3, 7).into_iter().enumerate() {
        graphs.push((format!("random-{i}"), g));
    }
    let mut failures = Vec::new();
    let mut colons = 0;
    for (name, g) in &graphs {
        let c = ctx(g);
        for s in [2, 3] {
            let r = evencon::banerjee_check(&c, s).unwrap();
            colons += r.details["generators_checked"].as_u64().unwrap();
            if !r.passed() {
                failures.push(format!("{name} s={s}: {:?}", r.witnesses));
            }
        }
    }
    let detail = format!("{colons} colons over {} graphs {}", graphs.len(), failures.join("; "));
    announce(6, "even-connection colon equals direct colon", failures.is_empty(), start.elapsed(), Some(BUDGET_BANERJEE), &detail);
}

fn regularity_equality(instances: &[Instance], powers: &[u32]) -> (Vec<String>, Vec<String>) {
    let mut failures = Vec::new();
    let mut values = Vec::new();
    for inst in instances {
        let c = ctx(&inst.graph);
        for &s in powers {
            let r = betti::regularity_equality(&c, s, Q).unwrap();
            values.push(format!("{} s={s}: {}", inst.name, r.details["reg_symbolic"]));
            if !r.passed() {
                failures.push(format!("{} s={s}: {:?}", inst.name, r.reason));
            }
        }
    }
    (failures, values)
}

#[test]
fn criterion_07_regularity_equality() {
    let start = Instant::now();
    let (failures, values) = regularity_equality(&[families::cycle(5), families::bowtie()], &[1, 2]);
    let detail = format!("{} {}", values.join(", "), failures.join("; "));
    announce(7, "reg of symbolic equals reg of ordinary power", failures.is_empty(), start.elapsed(), None, &detail);
}

#[test]
fn criterion_07_regularity_equality_cube() {
    let start = Instant::now();
    let (failures, values) = regularity_equality(&[families::cycle(5), families::bowtie()], &[3]);
    let detail = format!("{} {}", values.join(", "), failures.join("; "));
    announce(7, "reg equality at s = 3", failures.is_empty(), start.elapsed(), None, &detail);
}

#[test]
fn criterion_08_main_instance() {
    let start = Instant::now();
    let inst = families::c5_two_p3();
    let hyp = inst.graph.check_hypotheses(&inst.cycles[0], &Limits::default()).unwrap();
    let mut failures = Vec::new();
    if !hyp.h_forest {
        failures.push("H is not a forest".to_string());
    }
    if !hyp.gap_at_least_three() {
        failures.push(format!("ν(G) − ν(H) = {} − {}", hyp.nu_g, hyp.nu_h));
    }
    let (f, values) = regularity_equality(&[inst], &[2]);
    failures.extend(f);
    let detail = format!("ν(G)={}, ν(H)={}, {} {}", hyp.nu_g, hyp.nu_h, values.join(", "), failures.join("; "));
    announce(8, "C5 with two P3 at one vertex", failures.is_empty(), start.elapsed(), Some(BUDGET_MAIN_INSTANCE), &detail);
}

#[test]
fn criterion_09_forest_regularity() {
    let start = Instant::now();
    let forests = families::random_forests(SEED_FORESTS, 50, 9);
    let mut failures = Vec::new();
    for g in &forests {
        let r = betti::forest_equality_check(g, Q, &Limits::default()).unwrap();
        if !r.passed() {
            failures.push(format!("{g:?}: {:?}", r.reason));
        }
    }
    let detail = format!("{} forests {}", forests.len(), failures.join("; "));
    announce(9, "reg(S/I(H)) = ν(H) on forests", failures.is_empty(), start.elapsed(), Some(BUDGET_FORESTS), &detail);
}

#[test]
fn criterion_10_lower_bound() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut values = Vec::new();
    for inst in [families::cycle(5), families::bowtie()] {
        let c = ctx(&inst.graph);
        for s in [1, 2] {
            let r = betti::lower_bound_check(&c, s, Q).unwrap();
            values.push(format!("{} s={s}: {} ≥ {}", inst.name, r.details["reg_quotient"], r.details["bound"]));
            if !r.passed() {
                failures.push(format!("{} s={s}", inst.name));
            }
        }
    }
    let detail = format!("{} {}", values.join(", "), failures.join("; "));
    announce(10, "reg(S/I^(s)) ≥ 2s + ν − 2", failures.is_empty(), start.elapsed(), None, &detail);
}

#[test]
fn criterion_11_socle_degree() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for inst in [families::cycle(5), families::bowtie()] {
        let c = ctx(&inst.graph);
        for s in 1..=3 {
            let (reg, r) = betti::socle_regularity(&c, s).unwrap();
            if !r.passed() || reg != 2 * s - 1 {
                failures.push(format!("{} s={s}: socle degree {reg}", inst.name));
            }
        }
    }
    announce(11, "socle degree 2s − 1", failures.is_empty(), start.elapsed(), None, &failures.join("; "));
}

#[test]
fn criterion_12_resurgence_grid() {
    let start = Instant::now();
    let inst = families::cycle(5);
    let (c, d) = (ctx(&inst.graph), cd(&inst));
    let (checks, r) = symbolic::resurgence_sampling(&c, &d, 5, 5).unwrap();
    let closed = Ratio::new(6u64, 5);
    let mut failures = Vec::new();
    for x in &checks {
        if !x.agree {
            failures.push(format!("s={} t={} disagree", x.s, x.t));
        }
        if !x.contained && Ratio::new(x.s as u64, x.t as u64) > closed {
            failures.push(format!("s={} t={} exceeds 6/5", x.s, x.t));
        }
    }
    let ok = failures.is_empty() && r.passed() && checks.len() == 25;
    let detail = format!("max non-containment ratio {} {}", r.details["max_noncontainment_ratio"], failures.join("; "));
    announce(12, "containment agrees with α on 5×5 grid", ok, start.elapsed(), Some(BUDGET_RESURGENCE), &detail);
}

/// The extended claim: some `(s, t)` with `s/t = 6/5` is a non-containment.
#[test]
#[ignore = "fails: I^(6) ⊆ I^5 on C5 since both have α = 10"]
fn criterion_12_ratio_attained_at_six_fifths() {
    let start = Instant::now();
    let c = ctx(&families::cycle(5).graph);
    let x = symbolic::containment_check(&c, 6, 5).unwrap();
    let detail = format!(
        "α(I^(6)) = {}, α(I^5) = {}, contained = {}",
        x.alpha_symbolic, x.alpha_power, x.contained
    );
    announce(12, "non-containment at s/t = 6/5", x.agree && !x.contained, start.elapsed(), None, &detail);
}

#[test]
fn criterion_13_orderings_and_colons() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let c5 = families::cycle(5);
    let c = ctx(&c5.graph);
    let spec = OrderSpec::lex(&c5.graph);
    for (s, r) in [(1, 0), (2, 0), (1, 1), (2, 1)] {
        let rep = evencon::verify_order_lemma(&c, &spec, s, r).unwrap();
        if !rep.passed() {
            failures.push(format!("order lemma C5 s={s} r={r}: {:?}", rep.reason));
        }
    }
    let (mut colons, mut layer_colons) = (0, 0);
    for inst in [families::c5_two_p3(), families::c7_p3()] {
        let (c, d) = (ctx(&inst.graph), cd(&inst));
        for s in 1..=3 {
            let leaf = evencon::verify_leaf_lemma(&c, &d, s as usize).unwrap();
            if !leaf.passed() {
                failures.push(format!("leaf lemma {} s={s}: {:?}", inst.name, leaf.reason));
            }
            let chain = evencon::verify_colon_chain(&c, &d, s).unwrap();
            colons += chain.colons.len();
            layer_colons += chain.report.details["layer_colons_checked"].as_u64().unwrap();
            if !chain.report.passed() {
                failures.push(format!("colon chain {} s={s}: {:?}", inst.name, chain.report.reason));
            }
        }
    }
    let detail = format!("{layer_colons} layer colons, {colons} running colons {}", failures.join("; "));
    announce(13, "ordering, leaf and colon lemmas", failures.is_empty(), start.elapsed(), Some(BUDGET_ORDERINGS), &detail);
}

fn colon_and_reg_chains(runs: &[(Instance, u32)], with_reg: bool, limits: &Limits) -> Vec<String> {
    let mut failures = Vec::new();
    for (inst, s) in runs {
        let (c, d) = (EdgeIdealContext::new(&inst.graph, limits).unwrap(), cd(inst));
        let chain = evencon::verify_colon_chain(&c, &d, *s).unwrap();
        if !chain.report.passed() {
            failures.push(format!("colon chain {} s={s}: {:?}", inst.name, chain.report.reason));
        }
        if with_reg {
            let r = evencon::verify_reg_chain(&c, &d, *s, Q).unwrap();
            if !r.passed() {
                failures.push(format!("reg chain {} s={s}: {:?}", inst.name, r.reason));
            }
        }
    }
    failures
}

#[test]
fn criterion_13_colon_chain_extended() {
    let start = Instant::now();
    let runs = [(families::c5_two_p3(), 4), (families::c5_two_p3(), 5), (families::c7_p3(), 4)];
    let failures = colon_and_reg_chains(&runs, false, &Limits::default());
    announce(13, "colon chain for s = 4, 5", failures.is_empty(), start.elapsed(), None, &failures.join("; "));
}

#[test]
fn criterion_08_reg_chain() {
    let start = Instant::now();
    let limits = Limits { max_lcm_closure: RAISED_LCM_CLOSURE, ..Limits::default() };
    let failures = colon_and_reg_chains(&[(families::c5_two_p3(), 3)], true, &limits);
    announce(8, "reg constant along the layer sums", failures.is_empty(), start.elapsed(), None, &failures.join("; "));
}
