//! Machine-readable verification records and their renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::graph::{CycleCertificate, Graph};
use crate::monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Evidence attached to a report. Vertices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Monomial { label: String, monomial: String },
    Path { label: String, vertices: Vec<usize> },
    Factorization { label: String, edges: Vec<[usize; 2]> },
    Note { label: String, text: String },
}

impl Witness {
    pub fn monomial(label: impl Into<String>, m: &Monomial) -> Self {
        Witness::Monomial {
            label: label.into(),
            monomial: m.to_string(),
        }
    }

    pub fn path(label: impl Into<String>, vertices: &[usize]) -> Self {
        Witness::Path {
            label: label.into(),
            vertices: vertices.iter().map(|v| v + 1).collect(),
        }
    }

    pub fn factorization(label: impl Into<String>, edges: &[(usize, usize)]) -> Self {
        Witness::Factorization {
            label: label.into(),
            edges: edges.iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
        }
    }

    pub fn note(label: impl Into<String>, text: impl Into<String>) -> Self {
        Witness::Note {
            label: label.into(),
            text: text.into(),
        }
    }

    fn render(&self) -> String {
        match self {
            Witness::Monomial { label, monomial } => format!("{label}: {monomial}"),
            Witness::Path { label, vertices } => format!("{label}: path {vertices:?}"),
            Witness::Factorization { label, edges } => format!("{label}: edges {edges:?}"),
            Witness::Note { label, text } => format!("{label}: {text}"),
        }
    }
}

/// Identifies the instance a report is about.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    pub graph: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub cycles: Vec<Vec<usize>>,
    pub s: Option<u32>,
    pub params: BTreeMap<String, Value>,
}

impl Instance {
    pub fn new(g: &Graph, cycles: &[CycleCertificate], s: Option<u32>) -> Self {
        Instance {
            graph: graph_hash(g),
            vertex_count: g.vertex_count(),
            edge_count: g.edge_count(),
            cycles: cycles.iter().map(CycleCertificate::labels).collect(),
            s,
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

/// Short stable hash of the canonical edge list.
pub fn graph_hash(g: &Graph) -> String {
    let mut h = Sha256::new();
    h.update(format!("n {}\n", g.vertex_count()));
    for (u, v) in g.sorted_edges() {
        h.update(format!("e {} {}\n", u + 1, v + 1));
    }
    h.finalize()[..8].iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Engine configuration echoed into every report by the harness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub field: String,
    pub seed: u64,
    pub edge_order: String,
    pub max_vertices: usize,
    pub max_generators: usize,
    pub max_lcm_closure: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub check: String,
    pub instance: Instance,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    pub details: BTreeMap<String, Value>,
    pub timing_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigEcho>,
}

impl VerificationReport {
    pub fn new(check: &str, instance: Instance) -> Self {
        VerificationReport {
            suite: String::new(),
            check: check.to_string(),
            instance,
            status: Status::Pass,
            reason: None,
            witnesses: Vec::new(),
            details: BTreeMap::new(),
            timing_ms: None,
            config: None,
        }
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn set_detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    /// Marks the report failed with the given evidence.
    pub fn fail(&mut self, reason: impl Into<String>, witness: Witness) {
        self.status = Status::Fail;
        if self.reason.is_none() {
            self.reason = Some(reason.into());
        }
        self.witnesses.push(witness);
    }

    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skipped;
        self.reason = Some(reason.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(format!("unknown output format `{other}`")),
        }
    }
}

/// Renders reports. Output is a pure function of the reports.
pub fn emit_report(reports: &[VerificationReport], format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let mut out = serde_json::to_vec_pretty(reports).expect("reports serialize");
            out.push(b'\n');
            out
        }
        OutputFormat::Csv => emit_csv(reports),
        OutputFormat::Text => emit_text(reports).into_bytes(),
    }
}

fn emit_csv(reports: &[VerificationReport]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "suite", "check", "graph", "vertices", "edges", "cycles", "s", "status", "reason", "witnesses",
        "details", "timing_ms",
    ])
    .expect("in-memory csv");
    for r in reports {
        let cycles = serde_json::to_string(&r.instance.cycles).expect("json");
        let witnesses = r.witnesses.iter().map(Witness::render).collect::<Vec<_>>().join("; ");
        let details = serde_json::to_string(&r.details).expect("json");
        w.write_record([
            r.suite.clone(),
            r.check.clone(),
            r.instance.graph.clone(),
            r.instance.vertex_count.to_string(),
            r.instance.edge_count.to_string(),
            cycles,
            r.instance.s.map(|s| s.to_string()).unwrap_or_default(),
            status_str(r.status).to_string(),
            r.reason.clone().unwrap_or_default(),
            witnesses,
            details,
            r.timing_ms.map(|t| t.to_string()).unwrap_or_default(),
        ])
        .expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

fn emit_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<8} {:<14} {:<26} {:<16} {:>3}  reason", "status", "suite", "check", "graph", "s");
    for r in reports {
        let s = r.instance.s.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<8} {:<14} {:<26} {:<16} {:>3}  {}",
            status_str(r.status),
            r.suite,
            r.check,
            r.instance.graph,
            s,
            r.reason.as_deref().unwrap_or("")
        );
        for w in &r.witnesses {
            let _ = writeln!(out, "         witness {}", w.render());
        }
    }
    let failed = reports.iter().filter(|r| r.failed()).count();
    let skipped = reports.iter().filter(|r| r.status == Status::Skipped).count();
    let _ = writeln!(
        out,
        "{} reports: {} pass, {} fail, {} skipped",
        reports.len(),
        reports.len() - failed - skipped,
        failed,
        skipped
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap()
    }

    #[test]
    fn empty_list_is_empty_json_array() {
        let out = emit_report(&[], OutputFormat::Json);
        let v: Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v, Value::Array(vec![]));
    }

    #[test]
    fn pass_report_has_no_witness_field() {
        let r = VerificationReport::new("demo", Instance::new(&c5(), &[], Some(2)));
        let v: Value = serde_json::from_slice(&emit_report(&[r], OutputFormat::Json)).unwrap();
        assert_eq!(v[0]["status"], "pass");
        assert!(v[0].get("witnesses").is_none());
    }

    #[test]
    fn fail_report_carries_monomial_witness() {
        let mut r = VerificationReport::new("demo", Instance::new(&c5(), &[], Some(3)));
        r.fail("mismatch", Witness::monomial("in left only", &Monomial::parse("x1*x2*x3*x4*x5", 5).unwrap()));
        let v: Value = serde_json::from_slice(&emit_report(&[r], OutputFormat::Json)).unwrap();
        assert_eq!(v[0]["status"], "fail");
        assert_eq!(v[0]["witnesses"][0]["monomial"], "x1*x2*x3*x4*x5");
        assert_eq!(v[0]["witnesses"][0]["kind"], "monomial");
    }

    #[test]
    fn hash_ignores_edge_order() {
        let a = c5();
        let b = Graph::new(5, [(0, 4), (3, 4), (2, 3), (1, 2), (0, 1)]).unwrap();
        assert_eq!(graph_hash(&a), graph_hash(&b));
        assert_eq!(graph_hash(&a).len(), 16);
    }

    #[test]
    fn csv_and_text_render() {
        let mut r = VerificationReport::new("demo", Instance::new(&c5(), &[], Some(1)));
        r.suite = "invariants".into();
        let csv = String::from_utf8(emit_report(&[r.clone()], OutputFormat::Csv)).unwrap();
        assert_eq!(csv.lines().count(), 2);
        let text = String::from_utf8(emit_report(&[r], OutputFormat::Text)).unwrap();
        assert!(text.contains("1 reports: 1 pass, 0 fail, 0 skipped"));
    }
}
