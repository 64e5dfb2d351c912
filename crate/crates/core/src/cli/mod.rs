//! Batch interface: parse a structure-constant document, run one command,
//! and render a deterministic report.
//!
//! Exit codes: 0 all verdicts pass, 1 some verdict fails, 2 input error,
//! 3 resource exhaustion.

pub mod input;
pub mod output;

use std::sync::Arc;

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::algebroid::{LaModule, SignConvention, VertexAlgebroid};
use crate::fuzz::{compare, run_fuzz, DEFAULT_TRIALS};
use crate::looplie::{
    build_loop_lie, central_elements, check_loop_conditions, commutator_series_check, degree_zero_algebra,
    membership_conditions, LoopError, WindowedLieAlgebra,
};
use crate::modules::{
    build_l, build_m, build_mb, build_wu, classify_roundtrip, graded_simplicity_check, radical_witness,
    ModuleContext, ModuleError,
};
use crate::pbw::{check_representation, commutator_consistency, GradedModule, PbwError};
use crate::report::ViolationReport;
use crate::tca::{Tca, TcaError};
use crate::vb::{build_e, check_degree01_decomposition, spanning_check, vb_graded_dims, VbError, DEFAULT_MARGIN};

pub use input::{parse, InputDocument, ParseError};
pub use output::{emit, Cell, Config, Format, Report, Section, Verdict};

pub const DEFAULT_MAX_DEGREE: i64 = 6;
pub const DEFAULT_WEIGHT_CAP: usize = 3;
/// Largest window accepted before reporting resource exhaustion.
pub const MAX_WINDOW: i64 = 10;
pub const MAX_WEIGHT_CAP: usize = 8;
pub const MAX_TRIALS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    CheckTca,
    CheckAlgebroid,
    LieBuild,
    LieVerify,
    VbDims,
    ModuleInduce,
    ModuleRadical,
    ModuleSimple,
    ClassifyRoundtrip,
    Fuzz,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("named").get_name().to_string()
    }
}

/// Command-line arguments.
#[derive(Clone, Debug, Parser)]
#[command(name = "valg", version, about = "Exact checks and constructions for vertex algebroids")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Structure-constant document (optional for `fuzz`).
    #[arg(long)]
    pub input: Option<String>,
    /// Window `N` for degrees and modes.
    #[arg(long)]
    pub max_degree: Option<i64>,
    /// A-weight cap `W` for pieces of `V_L`.
    #[arg(long)]
    pub weight_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Extra A-weight allowed when spanning the ideal.
    #[arg(long)]
    pub margin: Option<usize>,
    /// Number of fuzz trials.
    #[arg(long)]
    pub trials: Option<usize>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("resource limit: {0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PbwError> for CliError {
    fn from(e: PbwError) -> Self {
        match e {
            PbwError::Window { .. } | PbwError::Cap { .. } => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<TcaError> for CliError {
    fn from(e: TcaError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<crate::algebroid::AlgebroidError> for CliError {
    fn from(e: crate::algebroid::AlgebroidError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ModuleError> for CliError {
    fn from(e: ModuleError) -> Self {
        match e {
            ModuleError::Pbw(p) => p.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<VbError> for CliError {
    fn from(e: VbError) -> Self {
        match e {
            VbError::Pbw(p) => p.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<LoopError> for CliError {
    fn from(e: LoopError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Resolves the configuration: flags override the `[job]` section, which
/// overrides the defaults.
pub fn resolve_config(args: &Args, doc: Option<&InputDocument>) -> Result<Config, CliError> {
    let job = doc.map(|d| d.job.clone()).unwrap_or_default();
    let c = Config {
        max_degree: args.max_degree.or(job.max_degree).unwrap_or(DEFAULT_MAX_DEGREE),
        weight_cap: args.weight_cap.or(job.weight_cap).unwrap_or(DEFAULT_WEIGHT_CAP),
        margin: args.margin.or(job.margin).unwrap_or(DEFAULT_MARGIN),
        trials: args.trials.or(job.trials).unwrap_or(DEFAULT_TRIALS),
        seed: args.seed.or(job.seed).unwrap_or(0),
    };
    if c.max_degree < 0 {
        return Err(CliError::Input(format!("max-degree must be nonnegative, got {}", c.max_degree)));
    }
    if c.max_degree > MAX_WINDOW {
        return Err(CliError::Resource(format!("max-degree {} exceeds {MAX_WINDOW}", c.max_degree)));
    }
    if c.weight_cap > MAX_WEIGHT_CAP || c.margin > MAX_WEIGHT_CAP {
        return Err(CliError::Resource(format!("weight-cap and margin must be at most {MAX_WEIGHT_CAP}")));
    }
    if c.trials > MAX_TRIALS {
        return Err(CliError::Resource(format!("trials must be at most {MAX_TRIALS}")));
    }
    Ok(c)
}

/// Parses arguments, runs the command and returns the rendered output
/// (report or error message) with the exit code.
pub fn execute(args: &Args) -> (String, i32) {
    let doc = match &args.input {
        None => None,
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match parse(&text) {
                Ok(d) => Some(d),
                Err(e) => return (format!("error: {path}: {e}\n"), 2),
            },
            Err(e) => return (format!("error: cannot read {path}: {e}\n"), 2),
        },
    };
    let result = resolve_config(args, doc.as_ref()).and_then(|cfg| {
        let input = args.input.clone().unwrap_or_else(|| "-".into());
        run(args.command, doc.as_ref(), &input, cfg)
    });
    match result {
        Ok(r) => {
            let code = if r.passed() { 0 } else { 1 };
            (emit(&r, args.format), code)
        }
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}

fn need_doc(doc: Option<&InputDocument>) -> Result<&InputDocument, CliError> {
    doc.ok_or_else(|| CliError::Input("this command needs --input".into()))
}

fn need_algebroid(doc: Option<&InputDocument>) -> Result<(&VertexAlgebroid, SignConvention), CliError> {
    need_doc(doc)?
        .algebroid
        .as_ref()
        .map(|(v, s)| (v, *s))
        .ok_or_else(|| CliError::Input("line 0: missing section [algebroid]".into()))
}

fn need_tca(doc: Option<&InputDocument>) -> Result<Tca, CliError> {
    let d = need_doc(doc)?;
    if let Some(t) = &d.tca {
        return Ok(t.clone());
    }
    match &d.algebroid {
        Some((v, _)) => Ok(v.to_tca()?),
        None => Err(CliError::Input("line 0: missing section [algebroid] or [tca]".into())),
    }
}

fn need_modules(doc: Option<&InputDocument>) -> Result<Vec<LaModule>, CliError> {
    let d = need_doc(doc)?;
    if d.modules.is_empty() {
        return Err(CliError::Input("line 0: missing section [module]".into()));
    }
    Ok(d.modules.iter().map(|m| m.module.clone()).collect())
}

/// Runs one command on a parsed document.
pub fn run(cmd: Command, doc: Option<&InputDocument>, input: &str, cfg: Config) -> Result<Report, CliError> {
    let mut r = Report::new(&cmd.name(), input, cfg.clone());
    let n = cfg.max_degree;
    match cmd {
        Command::CheckTca => {
            let t = need_tca(doc)?;
            r.push(Section::from_report("tca-axioms", &t.check()?));
            r.push(Section::from_report("tca-reduced-axioms", &t.check_reduced()?));
            let c = compare(&t)?;
            let fams = |s: &std::collections::BTreeSet<&str>| s.iter().copied().collect::<Vec<_>>().join(" ");
            r.push(
                Section::new("loop-level-equivalence", Verdict::of(c.agrees()))
                    .fact("formula-families", fams(&c.formula_families))
                    .fact("membership-families", fams(&c.membership_families)),
            );
        }
        Command::CheckAlgebroid => {
            let (v, sign) = need_algebroid(doc)?;
            r.push(Section::from_report("commutative-algebra", &v.a.check()?));
            let sign_name = if sign == SignConvention::Standard { "standard" } else { "negated" };
            r.push(Section::from_report("algebroid-axioms", &v.check(sign)?).fact("sign", sign_name));
        }
        Command::LieBuild => {
            let t = need_tca(doc)?;
            let w = match build_loop_lie(&t, n) {
                Ok(w) => w,
                Err(LoopError::Invalid(rep)) | Err(LoopError::Verification(rep)) => {
                    r.push(Section::from_report("build", &rep));
                    return Ok(r);
                }
                Err(e) => return Err(e.into()),
            };
            let rows = (-n..=n).map(|m| vec![Cell::from(m), Cell::from(w.dim(m))]).collect();
            r.push(Section::new("build", Verdict::Pass).table(&["degree", "dim"], rows));
            let dz = degree_zero_algebra(&w)?;
            r.push(Section::from_report("degree-zero-algebra", &dz.check()));
            let central = central_elements(&w)?;
            r.push(Section::new("centre", Verdict::Info).fact("central-elements", central.len()));
        }
        Command::LieVerify => {
            let t = need_tca(doc)?;
            let w = WindowedLieAlgebra::new(&t, n)?;
            r.push(Section::from_report("loop-lie-identities", &w.verify()));
            r.push(Section::from_report("loop-conditions", &check_loop_conditions(&t)?));
            r.push(Section::from_report("membership-conditions", &membership_conditions(&t)?));
            r.push(Section::new("commutator-series", Verdict::of(commutator_series_check(&w))));
        }
        Command::VbDims => vb_dims(&mut r, doc, &cfg)?,
        Command::ModuleInduce => {
            let (ctx, u) = module_setup(&mut r, doc, n)?;
            let Some(ctx) = ctx else { return Ok(r) };
            let m = build_m(&ctx, &u[0], n)?;
            let wu = build_wu(&ctx.algebroid, &m.parent)?;
            let mb = build_mb(&ctx, &u[0], n)?;
            let (dm, dmb) = (m.dims()?, mb.dims()?);
            let rows = (0..=n)
                .map(|d| {
                    let i = d as usize;
                    vec![Cell::from(d), dm[i].into(), wu[&d].dim().into(), dmb[i].into()]
                })
                .collect();
            r.push(Section::new("dimensions", Verdict::Info).table(&["degree", "M", "W(U)", "M_B"], rows));
            r.push(Section::from_report("representation", &check_representation(&m.parent, n, n)?));
            r.push(Section::from_report("commutator-formula", &commutator_consistency(&m.parent, n, n)?));
            r.push(Section::from_report("mb-submodule", &crate::modules::check_submodule(&mb)?));
        }
        Command::ModuleRadical => {
            let (ctx, u) = module_setup(&mut r, doc, n)?;
            let Some(ctx) = ctx else { return Ok(r) };
            let l = build_l(&ctx, &u[0], n)?;
            let dl = l.dims()?;
            let mut rows = Vec::new();
            let mut witnesses = Section::new("witnesses", Verdict::Info);
            for d in 0..=n {
                let piece = l.parent.piece(d)?.dim();
                let j = &l.relations[&d];
                rows.push(vec![Cell::from(d), piece.into(), j.dim().into(), dl[d as usize].into()]);
                if let Some(&f) = j.free_columns().first() {
                    let w = std::iter::once((f, crate::linalg::q(1))).collect();
                    let path = radical_witness(&l.parent, &l.relations, d, &w)?.unwrap_or_default();
                    let text = path.iter().map(|g| format!("({},{})", g.degree, g.index)).collect::<Vec<_>>().join(" ");
                    let text = if text.is_empty() { "in top".to_string() } else { text };
                    witnesses = witnesses.fact(&format!("degree-{d}-basis-{f}"), text);
                }
            }
            r.push(Section::new("radical", Verdict::Info).table(&["degree", "M", "J", "L"], rows));
            r.push(witnesses);
        }
        Command::ModuleSimple => {
            let (ctx, u) = module_setup(&mut r, doc, n)?;
            let Some(ctx) = ctx else { return Ok(r) };
            let l = build_l(&ctx, &u[0], n)?;
            let g = graded_simplicity_check(&ctx, &l)?;
            let rows = l.dims()?.into_iter().enumerate().map(|(d, x)| vec![Cell::from(d as i64), x.into()]).collect();
            r.push(
                Section::new("graded-simplicity", Verdict::of(g.simple()))
                    .fact("radical-zero-through-max-degree", g.radical_zero)
                    .fact("top-simple", g.top.simple)
                    .fact("top-certain", g.top.certain)
                    .table(&["degree", "L"], rows),
            );
        }
        Command::ClassifyRoundtrip => {
            let (ctx, u) = module_setup(&mut r, doc, n)?;
            let Some(ctx) = ctx else { return Ok(r) };
            let rt = classify_roundtrip(&ctx, &u, n)?;
            let rows = (0..u.len())
                .map(|i| {
                    let dims = rt.dims[i].iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                    vec![Cell::from(i as i64), dims.into(), rt.top_recovered[i].into(), rt.simple[i].into(), rt.rebuilt[i].into()]
                })
                .collect();
            let collisions = rt.collisions.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" ");
            let sums = rt.sums_rejected.iter().map(|b| if *b { "rejected" } else { "accepted" }).collect::<Vec<_>>().join(" ");
            r.push(
                Section::new("classification", Verdict::of(rt.passed()))
                    .fact("isomorphic-pairs", collisions)
                    .fact("adjacent-sums", sums)
                    .table(&["module", "dims", "top-recovered", "graded-simple", "rebuilt"], rows),
            );
        }
        Command::Fuzz => {
            let o = run_fuzz(cfg.trials, cfg.seed)?;
            let mut s = Section::new("axiom-equivalence", Verdict::of(o.passed()))
                .fact("valid-trials", o.valid_trials)
                .fact("valid-agree", o.valid_agree)
                .fact("perturbations", o.perturbations)
                .fact("perturbations-violating", o.violated)
                .fact("perturbations-agree", o.perturbation_agree);
            for (i, m) in o.mismatches.iter().enumerate() {
                s = s.fact(&format!("mismatch-{i}"), m.clone());
            }
            r.push(s);
        }
    }
    Ok(r)
}

/// Validates the algebroid and the modules; `None` when the algebroid fails
/// its axioms (the failure is recorded in the report).
fn module_setup(r: &mut Report, doc: Option<&InputDocument>, n: i64) -> Result<(Option<ModuleContext>, Vec<LaModule>), CliError> {
    let (v, sign) = need_algebroid(doc)?;
    let u = need_modules(doc)?;
    let axioms = v.check(sign)?;
    if !axioms.is_empty() {
        r.push(Section::from_report("algebroid-axioms", &axioms));
        return Ok((None, u));
    }
    let lie = Arc::new(build_loop_lie(&v.to_tca()?, n)?);
    let ctx = ModuleContext::new(v, lie)?;
    let mut bad = ViolationReport::new();
    for (i, m) in u.iter().enumerate() {
        for x in crate::algebroid::check_la_module(&ctx.lie_algebroid, m)?.iter() {
            let mut idx = vec![i as i64];
            idx.extend(&x.indices);
            bad.push(x.axiom, idx, x.residual.clone());
        }
    }
    r.push(Section::from_report("top-modules", &bad));
    if !bad.is_empty() {
        return Ok((None, u));
    }
    Ok((Some(ctx), u))
}

fn vb_dims(r: &mut Report, doc: Option<&InputDocument>, cfg: &Config) -> Result<(), CliError> {
    let (v, sign) = need_algebroid(doc)?;
    let axioms = v.check(sign)?;
    if !axioms.is_empty() {
        r.push(Section::from_report("algebroid-axioms", &axioms));
        return Ok(());
    }
    let (n, w, margin) = (cfg.max_degree, cfg.weight_cap, cfg.margin);
    let lie = Arc::new(build_loop_lie(&v.to_tca()?, n)?);
    let vl = GradedModule::build_vl(lie.clone(), n, w + margin + 2);
    let eg = match build_e(v, &vl) {
        Ok(eg) => eg,
        Err(VbError::Closure(rep)) => {
            r.push(Section::from_report("generator-closure", &rep));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    r.push(Section::new("generator-closure", Verdict::Pass).fact("e0", eg.e0.len()).fact("e1", eg.e1.len()));
    let rows = vb_graded_dims(&vl, &eg, n, w, margin)?;
    let dims: Vec<usize> = rows.iter().map(|x| x.dim).collect();
    let table = rows
        .iter()
        .map(|x| vec![Cell::from(x.degree), x.dim.into(), x.stabilized.into(), x.bound.into()])
        .collect();
    r.push(Section::new("dimensions", Verdict::Info).table(&["degree", "dim", "stabilized", "bound"], table));
    r.push(Section::from_report("degree-0-1-decomposition", &check_degree01_decomposition(&vl, &eg, w, margin)?));
    let mut span = ViolationReport::new();
    for d in 0..=n {
        if !spanning_check(&vl, &eg, d, w, margin)? {
            span.push("spanning", vec![d], Vec::new());
        }
    }
    r.push(Section::from_report("spanning", &span));
    let ctx = ModuleContext::new(v, lie)?;
    let base = ctx.lie_algebroid.base_module();
    let mb = build_mb(&ctx, &base, n)?.dims()?;
    r.push(
        Section::new("diagnostic-mb-of-a", Verdict::Info)
            .fact("dims", mb.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .fact("matches-vb", mb == dims),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(cmd: Command) -> Args {
        Args { command: cmd, input: None, max_degree: None, weight_cap: None, format: Format::Text, seed: None, margin: None, trials: None }
    }

    #[test]
    fn config_precedence_and_limits() {
        let mut a = args(Command::Fuzz);
        let doc = parse("[job]\nmax-degree = 3\nseed = 9\n").unwrap();
        let c = resolve_config(&a, Some(&doc)).unwrap();
        assert_eq!((c.max_degree, c.weight_cap, c.margin, c.trials, c.seed), (3, 3, 2, 100, 9));
        a.max_degree = Some(4);
        assert_eq!(resolve_config(&a, Some(&doc)).unwrap().max_degree, 4);
        a.max_degree = Some(MAX_WINDOW + 1);
        assert_eq!(resolve_config(&a, None).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn missing_input_is_an_input_error() {
        let (out, code) = execute(&args(Command::CheckTca));
        assert_eq!(code, 2);
        assert!(out.starts_with("error:"));
    }
}
