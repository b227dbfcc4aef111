//! Command-line front end: argument parsing, report assembly and the
//! on-disk result cache.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use symtrace_core::cohomology::{cohomology_row, CohomologyRow, HComplex};
use symtrace_core::derivation::{h_basis_capped, h_dim_formula, omega_action, DerivationJson, OmegaConvention};
use symtrace_core::free_lie::{format_lyndon, lyndon_basis, witt_dim, BracketExpr};
use symtrace_core::graph::{bidegree, enumerate_graphs, phi_cochain, GraphJson, OddGraph, VertexType};
use symtrace_core::johnson::{filtration_level, fixes_boundary, johnson_tau, Endomorphism, EndomorphismJson};
use symtrace_core::rep::{invariant_subspace, Space};
use symtrace_core::selfcheck::{run_selfcheck, SelfcheckOptions};
use symtrace_core::tensor::{decode_word, BasisContext};
use symtrace_core::trace::{trace_via_contraction, Contraction};
use symtrace_core::{Derivation, Error, DEFAULT_CAP};

/// Environment variable naming the result cache directory.
pub const CACHE_ENV: &str = "SYMTRACE_CACHE_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "symtrace", version, about = "Exact computations with symplectic derivation algebras")]
struct Cli {
    /// Largest ambient dimension any single computation may use.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Free Lie algebra dimensions and Lyndon bases.
    #[command(subcommand)]
    Lie(LieCmd),
    /// trace(k) of a derivation read from JSON.
    Trace(TraceArgs),
    /// Basis data of h_{g,1}(k).
    Hslice(HsliceArgs),
    /// Johnson homomorphisms and filtration levels of endomorphisms.
    #[command(subcommand)]
    Johnson(JohnsonCmd),
    /// Chevalley–Eilenberg slice data, optionally with the invariant cohomology.
    Cohomology(CohomologyArgs),
    /// Graph cochains and graph enumeration.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Dimension of the sp-invariants of a representation.
    Invariants(InvariantsArgs),
    /// Embedded identity suite.
    Selfcheck(SelfcheckArgs),
}

#[derive(Subcommand, Debug)]
enum LieCmd {
    Dim(LieArgs),
    Basis(LieArgs),
}

#[derive(Args, Debug)]
struct LieArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    deg: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ContractionArg {
    First,
    Last,
}

#[derive(Args, Debug)]
struct TraceArgs {
    /// Derivation JSON file.
    #[arg(long)]
    deriv: PathBuf,
    #[arg(long, value_enum, default_value_t = ContractionArg::Last)]
    contraction: ContractionArg,
}

#[derive(Args, Debug)]
struct HsliceArgs {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    k: usize,
    /// Include the basis derivations.
    #[arg(long)]
    basis: bool,
}

#[derive(Subcommand, Debug)]
enum JohnsonCmd {
    Tau(JohnsonArgs),
    Level(JohnsonArgs),
    Boundary(JohnsonArgs),
}

#[derive(Args, Debug)]
struct JohnsonArgs {
    /// Endomorphism JSON file.
    #[arg(long)]
    endo: PathBuf,
    #[arg(long, default_value_t = 1)]
    k: usize,
}

#[derive(Args, Debug)]
struct CohomologyArgs {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    weight: usize,
    /// Compute invariant cochains and cohomology.
    #[arg(long)]
    invariant: bool,
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    Phi(GraphPhiArgs),
    Enum(GraphEnumArgs),
}

#[derive(Args, Debug)]
struct GraphPhiArgs {
    /// Graph JSON file.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    g: usize,
}

#[derive(Args, Debug)]
struct GraphEnumArgs {
    #[arg(long)]
    d_max: usize,
    #[arg(long)]
    n_max: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpaceArg {
    Tensor,
    Sym,
    Ext,
    Der,
    Hslice,
}

#[derive(Args, Debug)]
struct InvariantsArgs {
    #[arg(long)]
    g: usize,
    #[arg(long, value_enum)]
    space: SpaceArg,
    #[arg(long)]
    deg: usize,
}

#[derive(Args, Debug)]
struct SelfcheckArgs {
    /// Use the deliberately wrong ω₀-action (mutation harness).
    #[arg(long, hide = true)]
    flip_omega: bool,
}

/// Echo of everything that determines a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub verb: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flags: Vec<String>,
    /// Input file path and the SHA-256 of its contents.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<(String, String)>,
    pub cap: usize,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl RunConfig {
    fn new(verb: &str, cli: &Cli) -> Self {
        RunConfig {
            verb: verb.into(),
            g: None,
            n: None,
            degree: None,
            d: None,
            weight: None,
            flags: Vec::new(),
            input: None,
            cap: cli.cap,
            format: cli.format,
            output: cli.output.as_ref().map(|p| p.display().to_string()),
        }
    }

    /// Cache key: the configuration without presentation fields.
    fn cache_key(&self) -> String {
        let mut c = self.clone();
        c.format = Format::Json;
        c.output = None;
        c.input = c.input.map(|(_, h)| (String::new(), h));
        sha256_hex(serde_json::to_string(&c).expect("config serializes").as_bytes())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub result: Value,
    /// SHA-256 of the canonical JSON of `config` and `result`.
    pub hash: String,
}

impl Report {
    fn new(config: RunConfig, result: Value) -> Self {
        let body = serde_json::to_string(&json!({ "config": &config, "result": &result })).expect("json");
        Report { hash: sha256_hex(body.as_bytes()), config, result }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// What a verb produced, before formatting.
struct Outcome {
    result: Value,
    text: String,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
    failed: bool,
}

impl Outcome {
    fn new(result: Value, text: String) -> Self {
        Outcome { result, text, table: None, failed: false }
    }
}

/// Result of a CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap { .. } => EXIT_RESOURCE,
        _ => EXIT_INVALID,
    }
}

fn read_input<T: serde::de::DeserializeOwned>(path: &Path, cfg: &mut RunConfig) -> Result<T, Error> {
    let bytes = std::fs::read(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    cfg.input = Some((path.display().to_string(), sha256_hex(&bytes)));
    serde_json::from_slice(&bytes).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn check_positive(name: &str, v: usize) -> Result<(), Error> {
    if v == 0 {
        return Err(Error::Invalid(format!("--{name} must be positive")));
    }
    Ok(())
}

pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let msg = e.render().to_string();
            return if code == EXIT_OK {
                RunOutput { code, stdout: msg, stderr: String::new() }
            } else {
                RunOutput { code, stdout: String::new(), stderr: msg }
            };
        }
    };
    if cli.cap == 0 {
        return RunOutput { code: EXIT_INVALID, stdout: String::new(), stderr: "error: --cap must be positive\n".into() };
    }
    let mut cfg = RunConfig::new(verb_name(&cli.command), &cli);
    let outcome = match execute(&cli, &mut cfg) {
        Ok(o) => o,
        Err(e) => {
            return RunOutput { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") };
        }
    };
    let failed = outcome.failed;
    let report = Report::new(cfg.clone(), outcome.result.clone());
    let rendered = match render(&report, &outcome) {
        Ok(s) => s,
        Err(e) => return RunOutput { code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let code = if failed { EXIT_CHECK_FAILED } else { EXIT_OK };
    match &cli.output {
        Some(path) => match std::fs::write(path, &rendered) {
            Ok(()) => RunOutput { code, stdout: String::new(), stderr: String::new() },
            Err(e) => RunOutput {
                code: EXIT_INVALID,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => RunOutput { code, stdout: rendered, stderr: String::new() },
    }
}

fn verb_name(c: &Command) -> &'static str {
    match c {
        Command::Lie(LieCmd::Dim(_)) => "lie dim",
        Command::Lie(LieCmd::Basis(_)) => "lie basis",
        Command::Trace(_) => "trace",
        Command::Hslice(_) => "hslice",
        Command::Johnson(JohnsonCmd::Tau(_)) => "johnson tau",
        Command::Johnson(JohnsonCmd::Level(_)) => "johnson level",
        Command::Johnson(JohnsonCmd::Boundary(_)) => "johnson boundary",
        Command::Cohomology(_) => "cohomology",
        Command::Graph(GraphCmd::Phi(_)) => "graph phi",
        Command::Graph(GraphCmd::Enum(_)) => "graph enum",
        Command::Invariants(_) => "invariants",
        Command::Selfcheck(_) => "selfcheck",
    }
}

fn render(report: &Report, outcome: &Outcome) -> Result<String, Error> {
    let config = serde_json::to_string(&report.config)?;
    Ok(match report.config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = outcome.text.clone();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            let _ = writeln!(s, "# config {config}");
            let _ = writeln!(s, "# sha256 {}", report.hash);
            s
        }
        Format::Csv => {
            let (header, rows) = match &outcome.table {
                Some(t) => t.clone(),
                None => (vec!["result".into()], vec![vec![outcome.text.trim_end().to_string()]]),
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut h = header.clone();
            h.extend(["run_config".to_string(), "sha256".to_string()]);
            w.write_record(&h).map_err(|e| Error::Invalid(e.to_string()))?;
            for mut r in rows {
                r.extend([config.clone(), report.hash.clone()]);
                w.write_record(&r).map_err(|e| Error::Invalid(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?)
                .map_err(|e| Error::Invalid(e.to_string()))?
        }
    })
}

/// Looks up or stores `(result, text, table)` in the cache directory, if set.
fn cached(cfg: &RunConfig, compute: impl FnOnce() -> Result<Outcome, Error>) -> Result<Outcome, Error> {
    let Some(dir) = std::env::var_os(CACHE_ENV).map(PathBuf::from) else {
        return compute();
    };
    let path = dir.join(format!("{}.json", cfg.cache_key()));
    if let Ok(bytes) = std::fs::read(&path) {
        if let Ok(entry) = serde_json::from_slice::<CacheEntry>(&bytes) {
            return Ok(Outcome { result: entry.result, text: entry.text, table: entry.table, failed: entry.failed });
        }
    }
    let out = compute()?;
    let entry = CacheEntry {
        result: out.result.clone(),
        text: out.text.clone(),
        table: out.table.clone(),
        failed: out.failed,
    };
    if std::fs::create_dir_all(&dir).is_ok() {
        let tmp = dir.join(format!("{}.tmp", cfg.cache_key()));
        if std::fs::write(&tmp, serde_json::to_vec(&entry).expect("json")).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    result: Value,
    text: String,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
    failed: bool,
}

fn execute(cli: &Cli, cfg: &mut RunConfig) -> Result<Outcome, Error> {
    let cap = cli.cap;
    match &cli.command {
        Command::Lie(LieCmd::Dim(a)) => {
            check_positive("n", a.n)?;
            check_positive("deg", a.deg)?;
            cfg.n = Some(a.n);
            cfg.degree = Some(a.deg);
            let dim = witt_dim(a.n, a.deg);
            let mut o = Outcome::new(json!({ "n": a.n, "degree": a.deg, "dim": dim }), dim.to_string());
            o.table = Some((
                vec!["n".into(), "degree".into(), "dim".into()],
                vec![vec![a.n.to_string(), a.deg.to_string(), dim.to_string()]],
            ));
            Ok(o)
        }
        Command::Lie(LieCmd::Basis(a)) => {
            check_positive("n", a.n)?;
            check_positive("deg", a.deg)?;
            cfg.n = Some(a.n);
            cfg.degree = Some(a.deg);
            let ctx = BasisContext::free(a.n)?;
            let dim = witt_dim(a.n, a.deg);
            if dim > cap {
                return Err(Error::ResourceCap { what: "Lyndon basis".into(), needed: dim, cap });
            }
            let mut rows = Vec::new();
            for code in lyndon_basis(a.n, a.deg) {
                let word = format_lyndon(a.n, a.deg, code);
                let br = BracketExpr::standard(&decode_word(a.n, a.deg, code)).format(&ctx);
                rows.push(vec![word, br]);
            }
            let text = rows.iter().map(|r| format!("{} {}", r[0], r[1])).collect::<Vec<_>>().join("\n");
            let result = json!({
                "n": a.n,
                "degree": a.deg,
                "basis": rows.iter().map(|r| json!({ "lyndon": r[0], "bracket": r[1] })).collect::<Vec<_>>(),
            });
            let mut o = Outcome::new(result, text);
            o.table = Some((vec!["lyndon".into(), "bracket".into()], rows));
            Ok(o)
        }
        Command::Trace(a) => {
            let j: DerivationJson = read_input(&a.deriv, cfg)?;
            let d = Derivation::from_json(&j)?;
            cfg.n = Some(d.context().n());
            cfg.degree = Some(d.degree());
            let which = match a.contraction {
                ContractionArg::First => Contraction::First,
                ContractionArg::Last => Contraction::Last,
            };
            cfg.flags.push(format!("contraction={which:?}").to_lowercase());
            let t = trace_via_contraction(&d, which);
            Ok(Outcome::new(json!({ "trace": t.to_string(), "poly": t.to_json() }), t.to_string()))
        }
        Command::Hslice(a) => {
            check_positive("g", a.g)?;
            check_positive("k", a.k)?;
            cfg.g = Some(a.g);
            cfg.degree = Some(a.k);
            if a.basis {
                cfg.flags.push("basis".into());
            }
            let (g, k, with_basis) = (a.g, a.k, a.basis);
            cached(cfg, || {
                let h = h_basis_capped(g, k, cap)?;
                let mut result = json!({
                    "g": g,
                    "k": k,
                    "dim": h.dim(),
                    "dim_formula": h_dim_formula(g, k),
                    "ambient_dim": h.ambient_dim(),
                    "omega_rank": h.omega_rank(),
                });
                let mut text = format!(
                    "dim h_{{{g},1}}({k}) = {} (formula {}, ambient {}, omega rank {})",
                    h.dim(),
                    h_dim_formula(g, k),
                    h.ambient_dim(),
                    h.omega_rank()
                );
                if with_basis {
                    let ds = h.basis_derivations();
                    result["basis"] = Value::Array(ds.iter().map(|d| json!(d.to_json())).collect());
                    for d in &ds {
                        let _ = write!(text, "\n{d}");
                    }
                }
                let mut o = Outcome::new(result, text);
                o.table = Some((
                    vec!["g".into(), "k".into(), "dim".into(), "ambient_dim".into(), "omega_rank".into()],
                    vec![vec![
                        g.to_string(),
                        k.to_string(),
                        h.dim().to_string(),
                        h.ambient_dim().to_string(),
                        h.omega_rank().to_string(),
                    ]],
                ));
                Ok(o)
            })
        }
        Command::Johnson(cmd) => {
            let a = match cmd {
                JohnsonCmd::Tau(a) | JohnsonCmd::Level(a) | JohnsonCmd::Boundary(a) => a,
            };
            check_positive("k", a.k)?;
            let j: EndomorphismJson = read_input(&a.endo, cfg)?;
            let phi = Endomorphism::from_json(&j)?;
            cfg.n = Some(phi.context().n());
            cfg.degree = Some(a.k);
            match cmd {
                JohnsonCmd::Tau(_) => {
                    let tau = johnson_tau(&phi, a.k)?;
                    let mut result = json!({ "k": a.k, "tau": tau.to_json(), "display": tau.to_string() });
                    let mut text = tau.to_string();
                    if phi.context().is_symplectic() {
                        let in_h = omega_action(&tau)?.is_zero();
                        result["in_h"] = json!(in_h);
                        let _ = write!(text, "\nin h: {in_h}");
                    }
                    Ok(Outcome::new(result, text))
                }
                JohnsonCmd::Level(_) => {
                    let lv = filtration_level(&phi, a.k)?;
                    let shown = if lv.saturated { format!(">= {}", lv.level) } else { lv.level.to_string() };
                    let result = json!({
                        "k_max": a.k,
                        "level": lv.level,
                        "saturated": lv.saturated,
                        "invertible_on_quotients": lv.invertible,
                    });
                    let text = format!("level {shown}\ninvertible on nilpotent quotients: {}", lv.invertible);
                    Ok(Outcome::new(result, text))
                }
                JohnsonCmd::Boundary(_) => {
                    let b = fixes_boundary(&phi, a.k)?;
                    Ok(Outcome::new(json!({ "k": a.k, "fixes_boundary": b }), b.to_string()))
                }
            }
        }
        Command::Cohomology(a) => {
            check_positive("g", a.g)?;
            check_positive("d", a.d)?;
            check_positive("weight", a.weight)?;
            cfg.g = Some(a.g);
            cfg.d = Some(a.d);
            cfg.weight = Some(a.weight);
            if a.invariant {
                cfg.flags.push("invariant".into());
            }
            let (g, d, n, inv) = (a.g, a.d, a.weight, a.invariant);
            cached(cfg, || {
                let mut cx = HComplex::with_cap(g, cap)?;
                if inv {
                    let row = cohomology_row(&mut cx, d, n)?;
                    Ok(cohomology_outcome(&row))
                } else {
                    let s = cx.slice(d, n)?;
                    let dim = s.dim();
                    let mut o = Outcome::new(
                        json!({ "g": g, "d": d, "n": n, "dim_slice": dim }),
                        format!("dim C^{d}(h_{{{g},1}})_{n} = {dim}"),
                    );
                    o.table = Some((
                        vec!["g".into(), "d".into(), "n".into(), "dim_slice".into()],
                        vec![vec![g.to_string(), d.to_string(), n.to_string(), dim.to_string()]],
                    ));
                    Ok(o)
                }
            })
        }
        Command::Graph(GraphCmd::Phi(a)) => {
            check_positive("g", a.g)?;
            let j: GraphJson = read_input(&a.graph, cfg)?;
            let graph = OddGraph::from_json(&j)?;
            cfg.g = Some(a.g);
            let g = a.g;
            cached(cfg, || graph_phi(&graph, g, cap))
        }
        Command::Graph(GraphCmd::Enum(a)) => {
            check_positive("d-max", a.d_max)?;
            check_positive("n-max", a.n_max)?;
            cfg.d = Some(a.d_max);
            cfg.weight = Some(a.n_max);
            let graphs = enumerate_graphs(a.d_max, a.n_max)?;
            let mut rows = Vec::new();
            let mut list = Vec::new();
            for gr in &graphs {
                let b = bidegree(gr)?;
                rows.push(vec![b.d.to_string(), b.n.to_string(), gr.to_string()]);
                list.push(json!({ "d": b.d, "n": b.n, "graph": gr.to_json() }));
            }
            let text = rows.iter().map(|r| format!("d={} n={} {}", r[0], r[1], r[2])).collect::<Vec<_>>().join("\n");
            let mut o = Outcome::new(json!({ "count": graphs.len(), "graphs": list }), text);
            o.table = Some((vec!["d".into(), "n".into(), "graph".into()], rows));
            Ok(o)
        }
        Command::Invariants(a) => {
            check_positive("g", a.g)?;
            check_positive("deg", a.deg)?;
            cfg.g = Some(a.g);
            cfg.degree = Some(a.deg);
            let ctx = BasisContext::symplectic(a.g)?;
            let space = match a.space {
                SpaceArg::Tensor => Space::Tensor(a.deg),
                SpaceArg::Sym => Space::Sym(a.deg),
                SpaceArg::Ext => Space::Ext(a.deg),
                SpaceArg::Der => Space::Der(a.deg),
                SpaceArg::Hslice => Space::HSlice(a.deg),
            };
            cfg.flags.push(format!("space={:?}", a.space).to_lowercase());
            let ambient = match space {
                Space::HSlice(k) => symtrace_core::derivation::der_dim(ctx.n(), k),
                s => s.dim(&ctx)?,
            };
            if ambient > cap {
                return Err(Error::ResourceCap { what: format!("{space:?}"), needed: ambient, cap });
            }
            let dim = space.dim(&ctx)?;
            let inv = invariant_subspace(&ctx, space)?.dim();
            Ok(Outcome::new(
                json!({ "g": a.g, "space": format!("{space:?}"), "dim": dim, "invariant_dim": inv }),
                inv.to_string(),
            ))
        }
        Command::Selfcheck(a) => {
            let convention =
                if a.flip_omega { OmegaConvention::FlippedSecondTerm } else { OmegaConvention::Standard };
            if a.flip_omega {
                cfg.flags.push("flip-omega".into());
            }
            let opts = SelfcheckOptions { convention, cap, ..Default::default() };
            let checks = run_selfcheck(&opts)?;
            let failed = checks.iter().any(|c| !c.passed);
            let text = checks.iter().map(|c| c.line()).collect::<Vec<_>>().join("\n");
            let result = json!({
                "passed": !failed,
                "checks": checks
                    .iter()
                    .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                    .collect::<Vec<_>>(),
            });
            let mut o = Outcome::new(result, text);
            o.table = Some((
                vec!["check".into(), "passed".into(), "detail".into()],
                checks.iter().map(|c| vec![c.name.to_string(), c.passed.to_string(), c.detail.clone()]).collect(),
            ));
            o.failed = failed;
            Ok(o)
        }
    }
}

fn cohomology_outcome(row: &CohomologyRow) -> Outcome {
    let record = row.record();
    let classes: serde_json::Map<String, Value> = row
        .classes
        .iter()
        .map(|(name, c)| (name.clone(), json!(c.iter().map(|x| x.to_string()).collect::<Vec<_>>())))
        .collect();
    let result = json!({
        "g": row.g,
        "d": row.d,
        "n": row.n,
        "dim_slice": row.dim_slice,
        "dim_invariant": row.dim_invariant,
        "dim_H_invariant": row.dim_h_invariant,
        "classes": classes,
    });
    let header: Vec<String> = CohomologyRow::HEADER.iter().map(|s| s.to_string()).collect();
    let text = header.iter().zip(&record).map(|(h, v)| format!("{h} = {v}")).collect::<Vec<_>>().join("\n");
    let mut o = Outcome::new(result, text);
    o.table = Some((header, vec![record]));
    o
}

fn graph_phi(graph: &OddGraph, g: usize, cap: usize) -> Result<Outcome, Error> {
    let b = bidegree(graph)?;
    let mut cx = HComplex::with_cap(g, cap)?;
    let phi = phi_cochain(graph, &mut cx)?;
    let invariant = cx.is_invariant(&phi)?;
    let cocycle = cx.is_cocycle(&phi)?;
    let slice = cx.slice(b.d, b.n)?;
    // compare two-vertex graphs with the named cocycles
    let mut named = None;
    let vs = graph.vertices();
    if vs.len() == 2 && graph.edges().iter().all(|&(a, c)| a != c) {
        let reference = match vs[0] {
            VertexType::Alt3 if vs[1] == VertexType::Alt3 => Some(("e1".to_string(), cx.build_e1()?)),
            VertexType::Sym(m) if vs[1] == VertexType::Sym(m) => {
                let k = (m as usize - 1) / 2;
                Some((format!("t{m}"), cx.build_t(k)?))
            }
            _ => None,
        };
        if let Some((name, c)) = reference {
            named = Some((name, phi.ratio_to(&c)));
        }
    }
    let values: Vec<Value> = phi
        .values
        .iter()
        .map(|(i, c)| {
            let t: Vec<String> = slice.tuple(*i as usize).iter().map(|(k, j)| format!("h{k}[{j}]")).collect();
            json!({ "tuple": t.join("^"), "value": c.to_string() })
        })
        .collect();
    let mut result = json!({
        "g": g,
        "d": b.d,
        "n": b.n,
        "dim_slice": slice.dim(),
        "nonzero": phi.values.len(),
        "invariant": invariant,
        "cocycle": cocycle,
        "values": values,
    });
    let mut text = format!(
        "bidegree (d={}, n={}), slice dim {}, {} nonzero values, invariant {invariant}, cocycle {cocycle}",
        b.d,
        b.n,
        slice.dim(),
        phi.values.len()
    );
    if let Some((name, ratio)) = named {
        let shown = ratio.as_ref().map(|r| r.to_string());
        result["proportional_to"] = json!({ "cochain": name, "ratio": shown });
        let _ = write!(text, "\nratio to {name}: {}", shown.unwrap_or_else(|| "not proportional".into()));
    }
    Ok(Outcome::new(result, text))
}
