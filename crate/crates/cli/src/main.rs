use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use edgereg::betti::{self, BettiTable};
use edgereg::evencon::EdgeOrder;
use edgereg::families;
use edgereg::harness::{self, Input, RunConfig, Suite};
use edgereg::homology::Field;
use edgereg::io::parse_graph;
use edgereg::report::{emit_report, OutputFormat};
use edgereg::symbolic::{self, CycleDecomposition, EdgeIdealContext};
use edgereg::Limits;
use serde_json::json;

#[derive(Parser)]
#[command(name = "edgereg", version, about = "Symbolic powers and regularity of edge ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit one report per check.
    Check(CheckArgs),
    /// Print the minimal generators of I^(s).
    Sympow(GraphArgs),
    /// Print the Betti table and regularity of I^(s).
    Reg(RegArgs),
    /// Print the α-sequence, Waldschmidt constant and resurgence.
    Invariants(GraphArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 1)]
    s_min: u32,
    #[arg(long, default_value_t = 3)]
    s_max: u32,
    /// `QQ`, a prime `p`, `GF(p)` or `prime` (32003).
    #[arg(long, default_value = "QQ")]
    field: Field,
    #[arg(long, default_value = "json")]
    format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = Limits::default().max_vertices)]
    max_vertices: usize,
    #[arg(long, default_value_t = Limits::default().max_generators)]
    max_generators: usize,
    #[arg(long, default_value_t = Limits::default().max_lcm_closure)]
    max_lcm_closure: usize,
}

impl Common {
    fn limits(&self) -> Limits {
        Limits {
            max_vertices: self.max_vertices,
            max_generators: self.max_generators,
            max_lcm_closure: self.max_lcm_closure,
            ..Limits::default()
        }
    }

    fn powers(&self) -> Result<std::ops::RangeInclusive<u32>> {
        if self.s_min < 1 || self.s_max < self.s_min {
            bail!("need 1 ≤ s-min ≤ s-max, got {}..{}", self.s_min, self.s_max);
        }
        Ok(self.s_min..=self.s_max)
    }

    fn write(&self, bytes: &[u8]) -> Result<()> {
        match &self.out {
            Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
            None => std::io::stdout().write_all(bytes).context("writing stdout"),
        }
    }
}

#[derive(Args)]
struct CheckArgs {
    /// Graph files.
    graphs: Vec<PathBuf>,
    /// Built-in graphs: c5, c7, bowtie, c5-path, c5-two-p3, c7-p3, c5-whiskers, c5-two-squares.
    #[arg(long = "family", value_delimiter = ',')]
    families: Vec<String>,
    /// Comma-separated suites or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of seeded random graphs to add.
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value = "auto")]
    edge_order: EdgeOrder,
    /// Record wall-clock time per report.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct GraphArgs {
    graph: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct RegArgs {
    /// Use the ordinary power I^s.
    #[arg(long)]
    ordinary: bool,
    #[command(flatten)]
    inner: GraphArgs,
}

fn family(name: &str) -> Result<families::Instance> {
    Ok(match name {
        "c5" => families::cycle(5),
        "c7" => families::cycle(7),
        "bowtie" => families::bowtie(),
        "c5-path" => families::cycle_with_pendant_path(5, 3),
        "c5-two-p3" => families::c5_two_p3(),
        "c7-p3" => families::c7_p3(),
        "c5-whiskers" => families::c5_whiskers(),
        "c5-two-squares" => families::c5_two_squares(),
        other => bail!("unknown family `{other}`"),
    })
}

fn read_input(path: &Path) -> Result<Input> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = parse_graph(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Input { name: path.display().to_string(), graph: parsed.graph, cycles: parsed.cycles })
}

fn check(args: &CheckArgs) -> Result<bool> {
    let mut inputs = args.graphs.iter().map(|p| read_input(p)).collect::<Result<Vec<_>>>()?;
    for name in &args.families {
        inputs.push(family(name)?.into());
    }
    if inputs.is_empty() && args.random == 0 {
        bail!("no graphs given; pass files, --family or --random");
    }
    let c = &args.common;
    let cfg = RunConfig {
        s_min: c.s_min,
        s_max: c.s_max,
        suites: Suite::parse_list(&args.suite).map_err(anyhow::Error::msg)?,
        field: c.field,
        limits: c.limits(),
        seed: args.seed,
        random_graphs: args.random,
        edge_order: args.edge_order,
        format: c.format,
        out: c.out.clone(),
        timing: args.timing,
    };
    let reports = harness::run_suite(&cfg, &inputs).map_err(anyhow::Error::msg)?;
    c.write(&emit_report(&reports, cfg.format))?;
    Ok(reports.iter().all(|r| !r.failed()))
}

fn context(args: &GraphArgs) -> Result<(EdgeIdealContext, Input)> {
    let input = read_input(&args.graph)?;
    let ctx = EdgeIdealContext::new(&input.graph, &args.common.limits())?;
    Ok((ctx, input))
}

fn json_bytes(v: &serde_json::Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("json");
    out.push(b'\n');
    out
}

fn reject_csv(c: &Common) -> Result<()> {
    if matches!(c.format, OutputFormat::Csv) {
        bail!("csv output is only available for `check`");
    }
    Ok(())
}

fn sympow(args: &GraphArgs) -> Result<()> {
    let c = &args.common;
    reject_csv(c)?;
    let (ctx, _) = context(args)?;
    let mut rows = Vec::new();
    for s in c.powers()? {
        rows.push((s, ctx.symbolic_power(s)?));
    }
    let bytes = match c.format {
        OutputFormat::Json => json_bytes(&json!(rows
            .iter()
            .map(|(s, i)| json!({"s": s, "generators": i.to_strings()}))
            .collect::<Vec<_>>())),
        _ => rows
            .iter()
            .map(|(s, i)| format!("I^({s}) [{} generators]: {i}\n", i.len()))
            .collect::<String>()
            .into_bytes(),
    };
    c.write(&bytes)
}

fn betti_text(t: &BettiTable) -> String {
    let graded = t.graded();
    let pd = t.projective_dimension().unwrap_or(0);
    let reg = t.regularity().unwrap_or(0);
    let low = graded.keys().map(|&(i, j)| j - i as u32).min().unwrap_or(0);
    let mut out = format!("{:>6}", "");
    for i in 0..=pd {
        out.push_str(&format!("{i:>6}"));
    }
    out.push('\n');
    for row in low..=reg {
        out.push_str(&format!("{:>5}:", row));
        for i in 0..=pd {
            match graded.get(&(i, row + i as u32)) {
                Some(r) => out.push_str(&format!("{r:>6}")),
                None => out.push_str(&format!("{:>6}", ".")),
            }
        }
        out.push('\n');
    }
    out
}

fn reg(args: &RegArgs) -> Result<()> {
    let c = &args.inner.common;
    reject_csv(c)?;
    let (ctx, _) = context(&args.inner)?;
    let label = if args.ordinary { "I^" } else { "I^(" };
    let mut json_rows = Vec::new();
    let mut text = String::new();
    for s in c.powers()? {
        let ideal = if args.ordinary { ctx.power(s) } else { ctx.symbolic_power(s)? };
        let table = betti::betti_table(&ideal, c.field, &ctx.limits)?;
        let reg = table.regularity().expect("nonzero ideal");
        let name = if args.ordinary { format!("{label}{s}") } else { format!("{label}{s})") };
        text.push_str(&format!("{name} over {}: reg = {reg}\n{}\n", c.field, betti_text(&table)));
        let mut row = table.to_json();
        row["s"] = json!(s);
        row["ideal"] = json!(name);
        json_rows.push(row);
    }
    match c.format {
        OutputFormat::Json => c.write(&json_bytes(&json!(json_rows))),
        _ => c.write(text.as_bytes()),
    }
}

fn invariants(args: &GraphArgs) -> Result<()> {
    let c = &args.common;
    reject_csv(c)?;
    let (ctx, input) = context(args)?;
    if input.cycles.is_empty() {
        bail!("{}: designate an odd cycle with a `c` line", input.name);
    }
    let cd = CycleDecomposition::new(&input.graph, input.cycles.clone())?;
    let inv = symbolic::asymptotic_invariants(&cd);
    let mut alphas = Vec::new();
    for s in c.powers()? {
        let computed = ctx.symbolic_power(s)?.alpha_degree()?;
        alphas.push((s, computed, inv.alpha(s)));
    }
    let bytes = match c.format {
        OutputFormat::Json => json_bytes(&json!({
            "n": inv.n,
            "alpha": alphas.iter().map(|&(s, a, f)| json!({"s": s, "computed": a, "closed_form": f})).collect::<Vec<_>>(),
            "waldschmidt": inv.waldschmidt.to_string(),
            "resurgence": inv.resurgence.to_string(),
        })),
        _ => {
            let mut t = format!("cycle length {}\n", 2 * inv.n + 1);
            for (s, a, f) in &alphas {
                t.push_str(&format!("α(I^({s})) = {a}  closed form 2s − ⌊s/(n+1)⌋ = {f}\n"));
            }
            t.push_str(&format!("Waldschmidt constant {}\nresurgence {}\n", inv.waldschmidt, inv.resurgence));
            t.into_bytes()
        }
    };
    c.write(&bytes)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => check(a),
        Command::Sympow(a) => sympow(a).map(|_| true),
        Command::Reg(a) => reg(a).map(|_| true),
        Command::Invariants(a) => invariants(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
