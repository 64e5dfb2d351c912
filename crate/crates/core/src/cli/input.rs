//! Structure-constant documents: `[section]` headers, `key = value` settings
//! and one tensor entry per line as `kind i j k value`.
//!
//! ```text
//! [scalars]
//! field = rational
//!
//! [algebra]
//! dim = 1
//! unit = 1
//! mult 0 0 0 1
//!
//! [algebroid]
//! dim = 1
//! pair 0 0 0 1
//!
//! [module]
//! dim = 1
//! aact 0 0 0 1
//!
//! [job]
//! max-degree = 6
//! ```
//!
//! Entry kinds by section:
//! - `algebra`: `mult i j k v` for `a_i a_j`.
//! - `algebroid`: `act i j k v` (`a_i · b_j`), `bracket i j k v`, `pi i j k v`
//!   (`π(b_i) a_j`), `pair i j k v` (`⟨b_i, b_j⟩ ∈ A`), `partial i j v`
//!   (`∂a_i` has coefficient `v` on `b_j`). Without `act` lines `A` acts
//!   through the coefficient of the unit. `sign = standard | negated`.
//! - `tca`: `dim0`, `dim1`, `partial i j v`, `t0ab`, `t0ba`, `t0bb`, `t1bb`.
//! - `module` (repeatable): `aact i j k v` (`a_i · w_j`), `gact i j k v` for
//!   the basis of `B/A∂A` given by the unit vectors of `B` outside the pivot
//!   columns of `A∂A`.
//! - `job`: `max-degree`, `weight-cap`, `margin`, `trials`, `seed`.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::algebroid::{CommAlgebra, LaModule, SignConvention, VertexAlgebroid};
use crate::linalg::{parse_scalar, Bilinear, Matrix, Scalar};
use crate::tca::Tca;

/// Syntax or semantic error tied to a line (0 when the document as a whole is at fault).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Job parameters read from the `[job]` section.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JobParams {
    pub max_degree: Option<i64>,
    pub weight_cap: Option<usize>,
    pub margin: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub line: usize,
    pub module: LaModule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub algebroid: Option<(VertexAlgebroid, SignConvention)>,
    pub tca: Option<Tca>,
    pub modules: Vec<ModuleSpec>,
    pub job: JobParams,
}

#[derive(Clone, Debug)]
struct Entry {
    line: usize,
    kind: String,
    idx: Vec<usize>,
    value: Scalar,
}

#[derive(Clone, Debug, Default)]
struct Section {
    name: String,
    line: usize,
    settings: BTreeMap<String, (usize, String)>,
    entries: Vec<Entry>,
}

impl Section {
    fn get(&self, key: &str) -> Option<&(usize, String)> {
        self.settings.get(key)
    }

    fn require(&self, key: &str) -> Result<&(usize, String), ParseError> {
        self.get(key).map_or_else(|| err(self.line, format!("[{}] needs `{key} = …`", self.name)), Ok)
    }

    fn usize(&self, key: &str) -> Result<usize, ParseError> {
        let (line, v) = self.require(key)?;
        v.parse().or_else(|_| err(*line, format!("`{key}` must be a nonnegative integer, got `{v}`")))
    }

    fn opt<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, ParseError> {
        match self.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).or_else(|_| err(*line, format!("bad value `{v}` for `{key}`"))),
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), ParseError> {
        for (k, (line, _)) in &self.settings {
            if !allowed.contains(&k.as_str()) {
                return err(*line, format!("unknown setting `{k}` in [{}]", self.name));
            }
        }
        Ok(())
    }

    fn check_kinds(&self, allowed: &[(&str, usize)]) -> Result<(), ParseError> {
        for e in &self.entries {
            match allowed.iter().find(|(k, _)| *k == e.kind) {
                None => return err(e.line, format!("unknown entry `{}` in [{}]", e.kind, self.name)),
                Some((_, n)) if *n != e.idx.len() => {
                    return err(e.line, format!("`{}` takes {n} indices and a value", e.kind))
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn fill3(&self, kind: &str, t: &mut Bilinear, overwrite: bool) -> Result<bool, ParseError> {
        let (a, b, c) = t.dims();
        let mut seen = BTreeMap::new();
        let mut any = false;
        for e in self.entries.iter().filter(|e| e.kind == kind) {
            let bounds = [a, b, c];
            check_bounds(e, &bounds)?;
            if let Some(prev) = seen.insert(e.idx.clone(), e.line) {
                return err(e.line, format!("duplicate `{kind}` entry (first on line {prev})"));
            }
            if overwrite && !any {
                *t = Bilinear::zeros(a, b, c);
            }
            any = true;
            t.set(e.idx[0], e.idx[1], e.idx[2], e.value.clone());
        }
        Ok(any)
    }

    /// `partial i j v`: `∂x_i` has coefficient `v` on `y_j`; returns the
    /// `dim_y × dim_x` matrix.
    fn partial(&self, dx: usize, dy: usize) -> Result<Matrix, ParseError> {
        let mut m = Matrix::zeros(dy, dx);
        let mut seen = BTreeMap::new();
        for e in self.entries.iter().filter(|e| e.kind == "partial") {
            check_bounds(e, &[dx, dy])?;
            if let Some(prev) = seen.insert(e.idx.clone(), e.line) {
                return err(e.line, format!("duplicate `partial` entry (first on line {prev})"));
            }
            m.set(e.idx[1], e.idx[0], e.value.clone());
        }
        Ok(m)
    }
}

fn check_bounds(e: &Entry, bounds: &[usize]) -> Result<(), ParseError> {
    for (pos, (&i, &n)) in e.idx.iter().zip(bounds).enumerate() {
        if i >= n {
            return err(e.line, format!("index {i} at position {} of `{}` is out of range (dimension {n})", pos + 1, e.kind));
        }
    }
    Ok(())
}

fn scalar(line: usize, s: &str) -> Result<Scalar, ParseError> {
    parse_scalar(s).map_or_else(|| err(line, format!("malformed number `{s}` (expected integer or integer/integer)")), Ok)
}

fn split_sections(text: &str) -> Result<Vec<Section>, ParseError> {
    let mut sections: Vec<Section> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(name) = body.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']') else {
                return err(line, "unterminated section header");
            };
            sections.push(Section { name: name.trim().to_string(), line, ..Section::default() });
            continue;
        }
        let Some(sec) = sections.last_mut() else {
            return err(line, "content before the first section header");
        };
        if let Some((key, value)) = body.split_once('=') {
            let key = key.trim().to_string();
            if sec.settings.contains_key(&key) {
                return err(line, format!("`{key}` set twice"));
            }
            sec.settings.insert(key, (line, value.trim().to_string()));
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        if words.len() < 2 {
            return err(line, "expected `key = value` or `kind indices… value`");
        }
        let idx = words[1..words.len() - 1]
            .iter()
            .map(|w| w.parse::<usize>().or_else(|_| err(line, format!("index `{w}` is not a nonnegative integer"))))
            .collect::<Result<Vec<_>, _>>()?;
        let value = scalar(line, words[words.len() - 1])?;
        if sec.settings.is_empty() && sec.name != "job" && sec.name != "scalars" {
            // dimensions must be known before entries
            return err(line, format!("set `dim` before entries in [{}]", sec.name));
        }
        sec.entries.push(Entry { line, kind: words[0].to_string(), idx, value });
    }
    Ok(sections)
}

fn parse_algebra(s: &Section) -> Result<CommAlgebra, ParseError> {
    s.check_keys(&["dim", "unit"])?;
    s.check_kinds(&[("mult", 3)])?;
    let dim = s.usize("dim")?;
    let (line, unit) = s.require("unit")?;
    let unit = unit.split_whitespace().map(|w| scalar(*line, w)).collect::<Result<Vec<_>, _>>()?;
    if unit.len() != dim {
        return err(*line, format!("unit has {} coordinates, expected {dim}", unit.len()));
    }
    let mut mult = Bilinear::zeros(dim, dim, dim);
    s.fill3("mult", &mut mult, false)?;
    Ok(CommAlgebra { dim, mult, unit })
}

fn parse_algebroid(s: &Section, a: CommAlgebra) -> Result<(VertexAlgebroid, SignConvention), ParseError> {
    s.check_keys(&["dim", "sign"])?;
    s.check_kinds(&[("act", 3), ("bracket", 3), ("pi", 3), ("pair", 3), ("partial", 2)])?;
    let db = s.usize("dim")?;
    let sign = match s.get("sign").map(|(l, v)| (*l, v.as_str())) {
        None | Some((_, "standard")) => SignConvention::Standard,
        Some((_, "negated")) => SignConvention::Negated,
        Some((l, v)) => return err(l, format!("sign must be `standard` or `negated`, got `{v}`")),
    };
    let da = a.dim;
    let mut v = VertexAlgebroid::zero(a, db);
    s.fill3("act", &mut v.act, true)?;
    s.fill3("bracket", &mut v.bracket, false)?;
    s.fill3("pi", &mut v.pi, false)?;
    s.fill3("pair", &mut v.pair, false)?;
    v.partial = s.partial(da, db)?;
    Ok((v, sign))
}

fn parse_tca(s: &Section) -> Result<Tca, ParseError> {
    s.check_keys(&["dim0", "dim1"])?;
    s.check_kinds(&[("partial", 2), ("t0ab", 3), ("t0ba", 3), ("t0bb", 3), ("t1bb", 3)])?;
    let mut t = Tca::zero(s.usize("dim0")?, s.usize("dim1")?);
    t.partial = s.partial(t.dim0, t.dim1)?;
    s.fill3("t0ab", &mut t.t0_ab, false)?;
    s.fill3("t0ba", &mut t.t0_ba, false)?;
    s.fill3("t0bb", &mut t.t0_bb, false)?;
    s.fill3("t1bb", &mut t.t1_bb, false)?;
    Ok(t)
}

fn parse_module(s: &Section, da: usize, dg: usize) -> Result<ModuleSpec, ParseError> {
    s.check_keys(&["dim"])?;
    s.check_kinds(&[("aact", 3), ("gact", 3)])?;
    let n = s.usize("dim")?;
    let mut a_act = Bilinear::zeros(da, n, n);
    let mut g_act = Bilinear::zeros(dg, n, n);
    s.fill3("aact", &mut a_act, false)?;
    s.fill3("gact", &mut g_act, false)?;
    Ok(ModuleSpec { line: s.line, module: LaModule { dim: n, g_act, a_act } })
}

pub fn parse(text: &str) -> Result<InputDocument, ParseError> {
    let sections = split_sections(text)?;
    let mut by_name: BTreeMap<&str, Vec<&Section>> = BTreeMap::new();
    for s in &sections {
        match s.name.as_str() {
            "scalars" | "algebra" | "algebroid" | "tca" | "module" | "job" => by_name.entry(s.name.as_str()).or_default().push(s),
            other => return err(s.line, format!("unknown section [{other}]")),
        }
    }
    for (name, list) in &by_name {
        if *name != "module" && list.len() > 1 {
            return err(list[1].line, format!("section [{name}] appears twice"));
        }
    }
    let one = |name: &str| by_name.get(name).map(|v| v[0]);
    if let Some(s) = one("scalars") {
        s.check_keys(&["field"])?;
        if let Some((line, f)) = s.get("field") {
            if f != "rational" {
                return err(*line, format!("only `field = rational` is supported, got `{f}`"));
            }
        }
        if let Some(e) = s.entries.first() {
            return err(e.line, "[scalars] takes no entries");
        }
    }
    let algebra = one("algebra").map(parse_algebra).transpose()?;
    let algebroid = match (one("algebroid"), algebra) {
        (Some(s), Some(a)) => Some(parse_algebroid(s, a)?),
        (Some(s), None) => return err(s.line, "[algebroid] needs an [algebra] section"),
        (None, _) => None,
    };
    let tca = one("tca").map(parse_tca).transpose()?;
    if let (Some(_), Some(s)) = (&algebroid, one("tca")) {
        return err(s.line, "give exactly one of [algebroid] and [tca]");
    }
    let mut modules = Vec::new();
    for s in by_name.get("module").into_iter().flatten() {
        let Some((v, _)) = &algebroid else {
            return err(s.line, "[module] needs an [algebroid] section");
        };
        let dg = v.a_partial_a().free_columns().len();
        modules.push(parse_module(s, v.dim_a(), dg)?);
    }
    let job = match one("job") {
        None => JobParams::default(),
        Some(s) => {
            s.check_keys(&["max-degree", "weight-cap", "margin", "trials", "seed"])?;
            if let Some(e) = s.entries.first() {
                return err(e.line, "[job] takes no entries");
            }
            JobParams {
                max_degree: s.opt("max-degree")?,
                weight_cap: s.opt("weight-cap")?,
                margin: s.opt("margin")?,
                trials: s.opt("trials")?,
                seed: s.opt("seed")?,
            }
        }
    };
    Ok(InputDocument { algebroid, tca, modules, job })
}

/// Renders an algebroid in the input format, for writing fixtures.
pub fn render_algebroid(v: &VertexAlgebroid, sign: SignConvention) -> String {
    let mut out = String::from("[scalars]\nfield = rational\n\n[algebra]\n");
    out += &format!("dim = {}\nunit = {}\n", v.a.dim, v.a.unit.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    push_entries(&mut out, "mult", &v.a.mult);
    out += &format!("\n[algebroid]\ndim = {}\n", v.dim_b);
    if sign == SignConvention::Negated {
        out += "sign = negated\n";
    }
    push_entries(&mut out, "act", &v.act);
    push_entries(&mut out, "bracket", &v.bracket);
    push_entries(&mut out, "pi", &v.pi);
    push_entries(&mut out, "pair", &v.pair);
    for b in 0..v.dim_b {
        for (a, x) in v.partial.row(b) {
            out += &format!("partial {a} {b} {x}\n");
        }
    }
    out
}

/// Renders a module section.
pub fn render_module(m: &LaModule) -> String {
    let mut out = format!("\n[module]\ndim = {}\n", m.dim);
    push_entries(&mut out, "aact", &m.a_act);
    push_entries(&mut out, "gact", &m.g_act);
    out
}

fn push_entries(out: &mut String, kind: &str, t: &Bilinear) {
    for ((i, j, k), x) in t.entries() {
        if !x.is_zero() {
            *out += &format!("{kind} {i} {j} {k} {x}\n");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::qf;

    #[test]
    fn round_trips_catalogue_algebroids() {
        for v in [catalog::heisenberg_algebroid(), catalog::line_algebroid(), catalog::truncated_line()] {
            let doc = parse(&render_algebroid(&v, SignConvention::Standard)).unwrap();
            assert_eq!(doc.algebroid.unwrap().0, v);
        }
    }

    #[test]
    fn fractions_parse() {
        let text = "[algebra]\ndim = 1\nunit = 1\nmult 0 0 0 1\n[algebroid]\ndim = 1\npair 0 0 0 1/3\n";
        let (v, _) = parse(text).unwrap().algebroid.unwrap();
        assert_eq!(*v.pair.get(0, 0, 0), qf(1, 3));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_index = "[algebra]\ndim = 1\nunit = 1\nmult 0 0 1 1\n";
        assert_eq!(parse(bad_index).unwrap_err().line, 4);
        let bad_number = "[algebra]\ndim = 1\nunit = 1\nmult 0 0 0 0.5\n";
        assert_eq!(parse(bad_number).unwrap_err().line, 4);
        let both = "[tca]\ndim0 = 1\ndim1 = 0\n[algebra]\ndim = 1\nunit = 1\n[algebroid]\ndim = 0\n";
        assert!(parse(both).is_err());
        assert_eq!(parse("[nonsense]\n").unwrap_err().line, 1);
        assert_eq!(parse("[scalars]\nfield = real\n").unwrap_err().line, 2);
    }
}
