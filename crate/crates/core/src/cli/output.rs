//! Reports and their text and JSON renderings. Scalars in JSON are
//! `{"num": "...", "den": "..."}` strings, never decimals.

use serde::Serialize;

use crate::linalg::{scalar_pair, Scalar};
use crate::report::ViolationReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub max_degree: i64,
    pub weight_cap: usize,
    pub margin: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

impl Verdict {
    pub fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exact {
    pub num: String,
    pub den: String,
}

impl From<&Scalar> for Exact {
    fn from(x: &Scalar) -> Self {
        let (num, den) = scalar_pair(x);
        Exact { num, den }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Bool(bool),
    Text(String),
    Exact(Exact),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => (if *b { "yes" } else { "no" }).to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Exact(e) if e.den == "1" => e.num.clone(),
            Cell::Exact(e) => format!("{}/{}", e.num, e.den),
        }
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationRow {
    pub axiom: String,
    pub indices: Vec<i64>,
    pub residual: Vec<Exact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub name: String,
    pub verdict: Verdict,
    pub facts: Vec<(String, Cell)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub violations: Vec<ViolationRow>,
}

impl Section {
    pub fn new(name: &str, verdict: Verdict) -> Self {
        Section { name: name.to_string(), verdict, facts: Vec::new(), table: None, violations: Vec::new() }
    }

    /// Pass iff `r` is empty; rows sorted by axiom then indices.
    pub fn from_report(name: &str, r: &ViolationReport) -> Self {
        let mut s = Section::new(name, Verdict::of(r.is_empty()));
        s.violations = r
            .sorted()
            .into_iter()
            .map(|v| ViolationRow {
                axiom: v.axiom.to_string(),
                indices: v.indices.clone(),
                residual: v.residual.iter().map(Exact::from).collect(),
            })
            .collect();
        s
    }

    pub fn fact(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.facts.push((key.to_string(), value.into()));
        self
    }

    /// Rows are sorted by their first cell when it is an integer degree.
    pub fn table(mut self, columns: &[&str], mut rows: Vec<Vec<Cell>>) -> Self {
        rows.sort_by_key(|r| match r.first() {
            Some(Cell::Int(i)) => *i,
            _ => 0,
        });
        self.table = Some(Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub config: Config,
    pub sections: Vec<Section>,
    pub status: Verdict,
}

impl Report {
    pub fn new(command: &str, input: &str, config: Config) -> Self {
        Report { command: command.to_string(), input: input.to_string(), config, sections: Vec::new(), status: Verdict::Pass }
    }

    pub fn push(&mut self, s: Section) {
        if s.verdict == Verdict::Fail {
            self.status = Verdict::Fail;
        }
        self.sections.push(s);
    }

    pub fn passed(&self) -> bool {
        self.status != Verdict::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

pub fn emit(r: &Report, f: Format) -> String {
    match f {
        Format::Machine => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        Format::Text => text(r),
    }
}

fn text(r: &Report) -> String {
    let c = &r.config;
    let mut out = format!(
        "command: {}\ninput: {}\nmax-degree: {}\nweight-cap: {}\nmargin: {}\ntrials: {}\nseed: {}\n",
        r.command, r.input, c.max_degree, c.weight_cap, c.margin, c.trials, c.seed
    );
    for s in &r.sections {
        out += &format!("\n== {} [{}]\n", s.name, s.verdict.label());
        for (k, v) in &s.facts {
            out += &format!("{k}: {}\n", v.text());
        }
        if let Some(t) = &s.table {
            out += &t.columns.join("\t");
            out.push('\n');
            for row in &t.rows {
                out += &row.iter().map(Cell::text).collect::<Vec<_>>().join("\t");
                out.push('\n');
            }
        }
        if s.violations.is_empty() {
            if s.verdict == Verdict::Pass {
                out += "OK\n";
            }
        } else {
            for v in &s.violations {
                let idx = v.indices.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
                let res = v.residual.iter().map(|e| Cell::Exact(e.clone()).text()).collect::<Vec<_>>().join(" ");
                out += &format!("{} ({idx}) residual [{res}]\n", v.axiom);
            }
        }
    }
    out += &format!("\nstatus: {}\n", r.status.label());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qf};

    fn config() -> Config {
        Config { max_degree: 6, weight_cap: 3, margin: 2, trials: 100, seed: 0 }
    }

    #[test]
    fn empty_report_prints_ok() {
        let mut r = Report::new("check-tca", "x.txt", config());
        r.push(Section::from_report("tca-axioms", &ViolationReport::new()));
        let t = emit(&r, Format::Text);
        assert!(t.starts_with("command: check-tca\ninput: x.txt\nmax-degree: 6\nweight-cap: 3\nmargin: 2\ntrials: 100\nseed: 0\n"));
        assert!(t.contains("== tca-axioms [PASS]\nOK\n"));
        assert!(r.passed());
    }

    #[test]
    fn violations_are_sorted_and_exact() {
        let mut v = ViolationReport::new();
        v.push("z-axiom", vec![0], vec![q(1)]);
        v.push("a-axiom", vec![2, 1], vec![qf(1, 3)]);
        v.push("a-axiom", vec![1, 5], vec![q(-2)]);
        let mut r = Report::new("c", "i", config());
        r.push(Section::from_report("s", &v));
        assert!(!r.passed());
        let t = emit(&r, Format::Text);
        let a = t.find("a-axiom (1,5)").unwrap();
        let b = t.find("a-axiom (2,1) residual [1/3]").unwrap();
        let z = t.find("z-axiom (0)").unwrap();
        assert!(a < b && b < z);
        let m = emit(&r, Format::Machine);
        assert!(m.contains("\"num\": \"1\"") && m.contains("\"den\": \"3\""));
        assert!(!m.contains("0.33"));
    }

    #[test]
    fn tables_sort_by_degree() {
        let s = Section::new("dims", Verdict::Info).table(&["degree", "dim"], vec![vec![2i64.into(), 5usize.into()], vec![0i64.into(), 1usize.into()]]);
        assert_eq!(s.table.unwrap().rows[0][0], Cell::Int(0));
    }
}
