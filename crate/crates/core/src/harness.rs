//! Suite orchestration: which checks run on which instance, with what
//! configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::betti;
use crate::evencon::{self, EdgeOrder, OrderSpec};
use crate::families;
use crate::graph::{CycleCertificate, Graph};
use crate::homology::Field;
use crate::ideal::MonomialIdeal;
use crate::report::{ConfigEcho, Instance, OutputFormat, VerificationReport};
use crate::symbolic::{self, CycleDecomposition, EdgeIdealContext};
use crate::{Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Decomposition,
    M2s,
    Invariants,
    Banerjee,
    Orderings,
    Regularity,
    Hypotheses,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Decomposition,
        Suite::M2s,
        Suite::Invariants,
        Suite::Banerjee,
        Suite::Orderings,
        Suite::Regularity,
        Suite::Hypotheses,
    ];

    /// Parses one suite name, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Decomposition => "decomposition",
            Suite::M2s => "m2s",
            Suite::Invariants => "invariants",
            Suite::Banerjee => "banerjee",
            Suite::Orderings => "orderings",
            Suite::Regularity => "regularity",
            Suite::Hypotheses => "hypotheses",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub s_min: u32,
    pub s_max: u32,
    pub suites: Vec<Suite>,
    pub field: Field,
    pub limits: Limits,
    pub seed: u64,
    /// Number of seeded random graphs added to the inputs.
    pub random_graphs: usize,
    pub edge_order: EdgeOrder,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    /// Record wall-clock timings; off by default so output stays byte-stable.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            s_min: 1,
            s_max: 3,
            suites: Suite::ALL.to_vec(),
            field: Field::Rationals,
            limits: Limits::default(),
            seed: 0,
            random_graphs: 0,
            edge_order: EdgeOrder::Auto,
            format: OutputFormat::Json,
            out: None,
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.s_min < 1 {
            return Err("s_min must be at least 1".into());
        }
        if self.s_max < self.s_min {
            return Err(format!("s_max {} is below s_min {}", self.s_max, self.s_min));
        }
        let l = &self.limits;
        if l.max_vertices == 0 || l.max_generators == 0 || l.max_lcm_closure == 0 || l.max_cycles == 0 {
            return Err("bounds must be positive".into());
        }
        Ok(())
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            field: self.field.to_string(),
            seed: self.seed,
            edge_order: self.edge_order.to_string(),
            max_vertices: self.limits.max_vertices,
            max_generators: self.limits.max_generators,
            max_lcm_closure: self.limits.max_lcm_closure,
        }
    }

    fn powers(&self) -> impl Iterator<Item = u32> {
        self.s_min..=self.s_max
    }
}

/// One graph to run suites on.
#[derive(Debug, Clone)]
pub struct Input {
    pub name: String,
    pub graph: Graph,
    pub cycles: Vec<CycleCertificate>,
}

impl From<families::Instance> for Input {
    fn from(i: families::Instance) -> Self {
        Input { name: i.name, graph: i.graph, cycles: i.cycles }
    }
}

/// Seeded random graphs on at most seven vertices.
pub fn random_inputs(seed: u64, count: usize) -> Vec<Input> {
    families::random_graphs(seed, count, 3, 7)
        .into_iter()
        .enumerate()
        .map(|(i, graph)| Input { name: format!("random-{seed}-{i}"), graph, cycles: Vec::new() })
        .collect()
}

/// Runs every selected suite on every input. Report order depends only on
/// the inputs and the configuration.
pub fn run_suite(cfg: &RunConfig, inputs: &[Input]) -> Result<Vec<VerificationReport>, String> {
    cfg.validate()?;
    let mut all: Vec<Input> = inputs.to_vec();
    all.extend(random_inputs(cfg.seed, cfg.random_graphs));
    let jobs: Vec<(usize, Suite)> = (0..all.len())
        .flat_map(|i| cfg.suites.iter().map(move |&s| (i, s)))
        .collect();
    let echo = cfg.echo();
    let reports: Vec<Vec<VerificationReport>> = jobs
        .par_iter()
        .map(|&(i, suite)| {
            let input = &all[i];
            let start = Instant::now();
            let mut reports = run_one(cfg, input, suite);
            let elapsed = start.elapsed().as_millis() as u64;
            for r in &mut reports {
                r.suite = suite.to_string();
                r.instance.params.insert("name".into(), input.name.clone().into());
                r.config = Some(echo.clone());
                if cfg.timing {
                    r.timing_ms = Some(elapsed);
                }
            }
            reports
        })
        .collect();
    Ok(reports.into_iter().flatten().collect())
}

fn skipped(input: &Input, check: &str, s: Option<u32>, reason: impl Into<String>) -> VerificationReport {
    VerificationReport::new(check, Instance::new(&input.graph, &input.cycles, s)).skip(reason)
}

/// Turns an engine error into a skipped report.
fn or_skip(input: &Input, check: &str, s: Option<u32>, r: Result<VerificationReport>) -> VerificationReport {
    r.unwrap_or_else(|e| skipped(input, check, s, e.to_string()))
}

fn run_one(cfg: &RunConfig, input: &Input, suite: Suite) -> Vec<VerificationReport> {
    let ctx = match EdgeIdealContext::new(&input.graph, &cfg.limits) {
        Ok(c) => c,
        Err(e) => return vec![skipped(input, &suite.to_string(), None, e.to_string())],
    };
    let cd = if input.cycles.is_empty() {
        None
    } else {
        match CycleDecomposition::new(&input.graph, input.cycles.clone()) {
            Ok(cd) => Some(cd),
            Err(e) => return vec![skipped(input, &suite.to_string(), None, e.to_string())],
        }
    };
    let mut out = Vec::new();
    match suite {
        Suite::Decomposition => match &cd {
            None => out.push(skipped(input, "decomposition", None, "no designated odd cycle")),
            Some(cd) => {
                for s in cfg.powers() {
                    out.push(or_skip(input, "decomposition", Some(s), symbolic::decompose_symbolic(&ctx, cd, s).map(|x| x.1)));
                }
            }
        },
        Suite::M2s => {
            for s in cfg.powers() {
                let r = match &cd {
                    Some(cd) => symbolic::m2s_identities(&ctx, cd, s),
                    None if input.graph.is_bipartite() => bipartite_m2s(&ctx, s),
                    None => Ok(skipped(input, "m2s", Some(s), "no designated odd cycle")),
                };
                out.push(or_skip(input, "m2s", Some(s), r));
            }
        }
        Suite::Invariants => match &cd {
            None => out.push(skipped(input, "alpha", None, "no designated odd cycle")),
            Some(cd) => {
                for s in cfg.powers() {
                    out.push(or_skip(input, "alpha", Some(s), symbolic::verify_alpha(&ctx, cd, s)));
                }
            }
        },
        Suite::Banerjee => {
            for s in cfg.powers().filter(|&s| s >= 2) {
                out.push(or_skip(input, "banerjee", Some(s), evencon::banerjee_check(&ctx, s as usize)));
            }
        }
        Suite::Orderings => out.extend(orderings(cfg, input, &ctx, cd.as_ref())),
        Suite::Regularity => out.extend(regularity(cfg, input, &ctx, cd.as_ref())),
        Suite::Hypotheses => out.extend(hypotheses(cfg, input, &ctx, cd.as_ref())),
    }
    out
}

/// Without an odd cycle every identity reduces to `I^(s) ∩ m^2s = I^s`.
fn bipartite_m2s(ctx: &EdgeIdealContext, s: u32) -> Result<VerificationReport> {
    let left = ctx
        .symbolic_power(s)?
        .intersection(&MonomialIdeal::maximal_power(ctx.nvars(), 2 * s))?;
    let mut report = VerificationReport::new("m2s", Instance::new(&ctx.graph, &[], Some(s))).detail("bipartite", true);
    if let Some(w) = left.difference_witness(&ctx.power(s)) {
        report.fail("I^(s) ∩ m^2s differs from I^s", crate::report::Witness::monomial("witness", &w));
    }
    Ok(report)
}

fn orderings(cfg: &RunConfig, input: &Input, ctx: &EdgeIdealContext, cd: Option<&CycleDecomposition>) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let spec = match OrderSpec::for_kind(&input.graph, cfg.edge_order, cd) {
        Ok(s) => s,
        Err(e) => return vec![skipped(input, "order-lemma", None, e.to_string())],
    };
    for s in cfg.powers() {
        for r in 0..=1 {
            let rep = evencon::verify_order_lemma(ctx, &spec, s as usize, r);
            out.push(or_skip(input, "order-lemma", Some(s), rep));
        }
    }
    let Some(cd) = cd else {
        out.push(skipped(input, "leaf-lemma", None, "no designated odd cycle"));
        return out;
    };
    for s in cfg.powers() {
        out.push(or_skip(input, "leaf-lemma", Some(s), evencon::verify_leaf_lemma(ctx, cd, s as usize)));
        out.push(or_skip(input, "colon-chain", Some(s), evencon::verify_colon_chain(ctx, cd, s).map(|c| c.report)));
    }
    out
}

fn regularity(cfg: &RunConfig, input: &Input, ctx: &EdgeIdealContext, cd: Option<&CycleDecomposition>) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let field = cfg.field;
    if input.graph.is_forest() {
        out.push(or_skip(input, "forest-regularity", None, betti::forest_equality_check(&input.graph, field, &cfg.limits)));
    }
    for s in cfg.powers() {
        out.push(or_skip(input, "reg-lower-bound", Some(s), betti::lower_bound_check(ctx, s, field)));
        out.push(or_skip(input, "socle-regularity", Some(s), betti::socle_regularity(ctx, s).map(|x| x.1)));
    }
    let Some(cd) = cd else {
        return out;
    };
    // equality holds when every cycle dominates; otherwise the single-cycle
    // hypotheses with ν(G) − ν(H) ≥ 3 are required
    let dominant = cd.k_vars.is_empty();
    let gated = if dominant {
        None
    } else {
        match cd.cycles.as_slice() {
            [c] => match input.graph.check_hypotheses(c, &cfg.limits) {
                Ok(h) if h.h_forest && h.gap_at_least_three() => None,
                Ok(h) if !h.h_forest => Some("vertices outside N(C) lie on a cycle".to_string()),
                Ok(_) => Some("ν(G)−ν(H) < 3".to_string()),
                Err(e) => Some(e.to_string()),
            },
            _ => Some("several non-dominant cycles".to_string()),
        }
    };
    for s in cfg.powers() {
        match &gated {
            Some(reason) => out.push(skipped(input, "reg-equality", Some(s), reason.clone())),
            None => out.push(or_skip(input, "reg-equality", Some(s), betti::regularity_equality(ctx, s, field))),
        }
    }
    if cd.cycles.len() == 1 && !dominant {
        for s in cfg.powers() {
            out.push(or_skip(input, "reg-chain", Some(s), evencon::verify_reg_chain(ctx, cd, s, field)));
            let hyp = input.graph.check_hypotheses(&cd.cycles[0], &cfg.limits);
            let colon = evencon::verify_colon_chain(ctx, cd, s).and_then(|chain| {
                let nu_h = hyp?.nu_h;
                betti::colon_bound_check(&input.graph, &chain.colons, nu_h, field, &cfg.limits)
            });
            out.push(or_skip(input, "colon-reg-bound", Some(s), colon));
        }
    }
    out
}

fn hypotheses(cfg: &RunConfig, input: &Input, ctx: &EdgeIdealContext, cd: Option<&CycleDecomposition>) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let s_bound = cfg.s_max;
    out.push(or_skip(input, "bipartite", None, symbolic::bipartite_criterion(ctx, s_bound)));
    let Some(cd) = cd else { return out };
    out.push(symbolic::cycle_monomials_check(ctx, cd));
    for c in &cd.cycles {
        let mut r = VerificationReport::new("hypotheses", Instance::new(&input.graph, std::slice::from_ref(c), None));
        match input.graph.check_hypotheses(c, &cfg.limits) {
            Ok(h) => {
                r.set_detail("dominant", h.dominant);
                r.set_detail("closed_dominant", h.closed_dominant);
                r.set_detail("h_vertices", h.h_vertices.labels());
                r.set_detail("h_forest", h.h_forest);
                r.set_detail("nu_g", h.nu_g);
                r.set_detail("nu_h", h.nu_h);
                r.set_detail("gap_at_least_three", h.gap_at_least_three());
                out.push(r);
            }
            Err(e) => out.push(r.skip(e.to_string())),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{emit_report, Status};

    #[test]
    fn invariants_on_c5_give_four_passes() {
        let cfg = RunConfig { s_min: 1, s_max: 4, suites: vec![Suite::Invariants], ..RunConfig::default() };
        let reports = run_suite(&cfg, &[families::cycle(5).into()]).unwrap();
        assert_eq!(reports.len(), 4);
        assert!(reports.iter().all(|r| r.passed() && r.config.is_some()));
    }

    #[test]
    fn regularity_gate_skips_small_gap() {
        let cfg = RunConfig { s_min: 2, s_max: 2, suites: vec![Suite::Regularity], ..RunConfig::default() };
        let reports = run_suite(&cfg, &[families::cycle_with_pendant_path(5, 3).into()]).unwrap();
        let eq: Vec<_> = reports.iter().filter(|r| r.check == "reg-equality").collect();
        assert_eq!(eq.len(), 1);
        assert_eq!(eq[0].status, Status::Skipped);
        assert_eq!(eq[0].reason.as_deref(), Some("ν(G)−ν(H) < 3"));
        let chain = reports.iter().find(|r| r.check == "reg-chain").unwrap();
        assert_eq!(chain.status, Status::Skipped);
    }

    #[test]
    fn runs_are_byte_identical() {
        let cfg = RunConfig {
            s_min: 2,
            s_max: 2,
            suites: vec![Suite::Banerjee, Suite::Invariants],
            random_graphs: 3,
            seed: 11,
            ..RunConfig::default()
        };
        let inputs: Vec<Input> = vec![families::cycle(5).into(), families::bowtie().into()];
        let a = emit_report(&run_suite(&cfg, &inputs).unwrap(), OutputFormat::Json);
        let b = emit_report(&run_suite(&cfg, &inputs).unwrap(), OutputFormat::Json);
        assert_eq!(a, b);
    }

    #[test]
    fn suite_lists_parse() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 7);
        assert_eq!(Suite::parse_list("m2s,banerjee").unwrap(), vec![Suite::M2s, Suite::Banerjee]);
        assert!(Suite::parse_list("nope").is_err());
        let bad = RunConfig { s_min: 0, ..RunConfig::default() };
        assert!(bad.validate().is_err());
    }
}
