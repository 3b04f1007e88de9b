//! Machine-readable run reports: JSON-compatible text with a fixed key
//! order and six-decimal floats, so reruns diff cleanly.

use crate::density::DensityReport;

#[derive(Debug, Clone)]
pub struct MemberReport {
    /// Sorted external labels of the restored node set.
    pub nodes: Vec<String>,
    pub link_nodes: usize,
    pub gamma_contribution: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone)]
pub struct Timings {
    pub build_ms: f64,
    pub mine_ms: f64,
    pub eval_ms: f64,
}

/// One mining/evaluation run. Timing keys come last so everything above
/// them is byte-stable across reruns.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub algorithm: String,
    pub k: u32,
    pub t: usize,
    pub strategy: Option<String>,
    pub mode: String,
    pub input: String,
    pub complete: bool,
    pub members: Vec<MemberReport>,
    pub density: DensityReport,
    pub timings: Timings,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut w = JsonWriter::new();
        w.open();
        w.string("algorithm", &self.algorithm);
        w.number("k", self.k as f64, 0);
        w.number("t", self.t as f64, 0);
        match &self.strategy {
            Some(s) => w.string("strategy", s),
            None => w.null("strategy"),
        }
        w.string("mode", &self.mode);
        w.string("input", &self.input);
        w.bool("complete", self.complete);
        w.members(&self.members);
        w.density(&self.density);
        w.number("build_ms", self.timings.build_ms, 3);
        w.number("mine_ms", self.timings.mine_ms, 3);
        w.number("eval_ms", self.timings.eval_ms, 3);
        w.close()
    }
}

/// Report of an oracle run, including the candidate counts at the two
/// degree thresholds so the right one can be compared against published
/// figures.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub k: u32,
    pub t: usize,
    pub input: String,
    pub candidates_min_degree_k: usize,
    pub candidates_min_degree_k_plus_1: usize,
    pub method: String,
    pub complete: bool,
    pub members: Vec<MemberReport>,
    pub density: DensityReport,
    pub timings: Timings,
}

impl OracleReport {
    pub fn to_json(&self) -> String {
        let mut w = JsonWriter::new();
        w.open();
        w.string("algorithm", "oracle");
        w.number("k", self.k as f64, 0);
        w.number("t", self.t as f64, 0);
        w.string("input", &self.input);
        w.number("candidates_min_degree_k", self.candidates_min_degree_k as f64, 0);
        w.number(
            "candidates_min_degree_k_plus_1",
            self.candidates_min_degree_k_plus_1 as f64,
            0,
        );
        w.string("method", &self.method);
        w.bool("complete", self.complete);
        w.members(&self.members);
        w.density(&self.density);
        w.number("build_ms", self.timings.build_ms, 3);
        w.number("mine_ms", self.timings.mine_ms, 3);
        w.number("eval_ms", self.timings.eval_ms, 3);
        w.close()
    }
}

struct JsonWriter {
    buf: String,
    first: bool,
}

impl JsonWriter {
    fn new() -> Self {
        JsonWriter {
            buf: String::new(),
            first: true,
        }
    }

    fn open(&mut self) {
        self.buf.push_str("{\n");
    }

    fn key(&mut self, key: &str) {
        if !self.first {
            self.buf.push_str(",\n");
        }
        self.first = false;
        self.buf.push_str("  \"");
        self.buf.push_str(key);
        self.buf.push_str("\": ");
    }

    fn string(&mut self, key: &str, value: &str) {
        self.key(key);
        self.buf.push_str(&escape(value));
    }

    fn bool(&mut self, key: &str, value: bool) {
        self.key(key);
        self.buf.push_str(if value { "true" } else { "false" });
    }

    fn null(&mut self, key: &str) {
        self.key(key);
        self.buf.push_str("null");
    }

    fn number(&mut self, key: &str, value: f64, decimals: usize) {
        self.key(key);
        self.buf.push_str(&fmt_number(value, decimals));
    }

    fn members(&mut self, members: &[MemberReport]) {
        self.key("members");
        self.buf.push_str("[\n");
        for (i, m) in members.iter().enumerate() {
            let nodes: Vec<String> = m.nodes.iter().map(|n| escape(n)).collect();
            self.buf.push_str(&format!(
                "    {{\"nodes\": [{}], \"link_nodes\": {}, \"gamma_contribution\": {}, \"feasible\": {}}}{}\n",
                nodes.join(", "),
                m.link_nodes,
                fmt_number(m.gamma_contribution, 6),
                m.feasible,
                if i + 1 < members.len() { "," } else { "" }
            ));
        }
        self.buf.push_str("  ]");
    }

    fn density(&mut self, d: &DensityReport) {
        self.number("link_density", d.link_density, 6);
        self.key("member_densities");
        let list: Vec<String> = d
            .member_densities
            .iter()
            .map(|&x| fmt_number(x, 6))
            .collect();
        self.buf.push('[');
        self.buf.push_str(&list.join(", "));
        self.buf.push(']');
        self.number("w_max", d.w_max, 6);
        match d.ratio_bound {
            Some(b) => self.number("ratio_bound", b, 6),
            None => self.null("ratio_bound"),
        }
        self.number("modularity", d.modularity, 6);
        self.number("mean_conductance", d.mean_conductance, 6);
    }

    fn close(mut self) -> String {
        self.buf.push_str("\n}\n");
        self.buf
    }
}

fn fmt_number(value: f64, decimals: usize) -> String {
    if !value.is_finite() {
        return "null".into();
    }
    format!("{value:.decimals$}")
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Strip the trailing timing keys so two reports can be compared for the
/// byte-stability guarantee.
pub fn without_timings(report: &str) -> String {
    report
        .lines()
        .filter(|line| {
            let trimmed = line.trim_start();
            !(trimmed.starts_with("\"build_ms\"")
                || trimmed.starts_with("\"mine_ms\"")
                || trimmed.starts_with("\"eval_ms\""))
        })
        .collect::<Vec<&str>>()
        .join("\n")
}
