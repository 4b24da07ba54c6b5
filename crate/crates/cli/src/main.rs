use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use whittaker_core::algebra::scalar::{format_scalar, parse_scalar};
use whittaker_core::algebra::text::{vec_to_json, vec_to_json_styled};
use whittaker_core::algebra::VarStyle;
use whittaker_core::finite::{act_e_fin, act_gen_fin, act_i_fin, cyclicity_probe_fin, quotient_fin, FinGen, GlFrame};
use whittaker_core::quotient::{cyclicity_probe, default_retries, sufficient_window, whittaker_space};
use whittaker_core::{act_word, parse_vec, parse_word, project, run_suite, Error, Scalar, SuiteConfig, SuiteReport, WhittakerFrame, SUITES};

const CONFIG_ENV: &str = "WHITTAKER_CONFIG";

// a closed pipe downstream is not an error for a batch tool
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "whittaker", version, about = "Exact Whittaker module computations")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML config file; falls back to $WHITTAKER_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Comma-separated lambda_0..lambda_n.
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Comma-separated mu_1..mu_m.
    #[arg(long, global = true, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    shift: Option<i64>,
    /// Eigenvalue of I on the quotient.
    #[arg(long, global = true, allow_hyphen_values = true)]
    d: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    max_weight: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    probe_samples: Option<usize>,
    /// Comma-separated alpha_1..alpha_l for gl(2l).
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Comma-separated beta_1..beta_l for gl(2l).
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, global = true)]
    ell: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator word to a vector.
    Act {
        #[arg(long)]
        op: String,
        #[arg(long, default_value = "1")]
        vec: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve for all Whittaker vectors up to --max-weight.
    Whittaker,
    /// Project a vector to the quotient by (I - d) and probe cyclicity.
    Quotient {
        #[arg(long, default_value = "1")]
        vec: String,
    },
    /// Act on the finite module W(alpha, beta) for gl(2l).
    Gl {
        #[arg(long, default_value = "I")]
        op: String,
        #[arg(long, default_value = "1")]
        vec: String,
        /// Reduce the result modulo (I - d) and probe cyclicity.
        #[arg(long)]
        quotient: bool,
    },
    /// Merge JSON reports written by `verify --out`.
    Report { files: Vec<PathBuf> },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::IndexRange { .. } | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verify(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    fn value(&self) -> Result<Scalar, Failure> {
        match self {
            ScalarText::Int(n) => Ok(Scalar::from_integer((*n).into())),
            ScalarText::Text(t) => Ok(parse_scalar(t)?),
        }
    }
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    lambda: Option<Vec<ScalarText>>,
    mu: Option<Vec<ScalarText>>,
    shift: Option<i64>,
    d: Option<ScalarText>,
    seed: Option<u64>,
    max_weight: Option<u64>,
    samples: Option<usize>,
    probe_samples: Option<usize>,
    gl: Option<GlConfig>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct GlConfig {
    ell: Option<u32>,
    alpha: Vec<ScalarText>,
    beta: Vec<ScalarText>,
}

fn scalar_list(text: &str) -> Result<Vec<Scalar>, Failure> {
    text.split(',').map(|p| parse_scalar(p).map_err(Failure::from)).collect()
}

fn from_file(list: &[ScalarText]) -> Result<Vec<Scalar>, Failure> {
    list.iter().map(ScalarText::value).collect()
}

fn load_file(path: &Path) -> Result<FileConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))
}

fn gl_frame(ell: Option<u32>, alpha: Vec<Scalar>, beta: Vec<Scalar>) -> Result<GlFrame, Failure> {
    if let Some(l) = ell {
        if alpha.len() != l as usize {
            return Err(Failure::Usage(format!("ell = {l} but {} alpha values given", alpha.len())));
        }
    }
    GlFrame::new(alpha, beta).map_err(|e| Failure::Usage(e.to_string()))
}

/// Defaults, then the config file, then flags.
fn resolve(c: &Common) -> Result<SuiteConfig, Failure> {
    let mut cfg = SuiteConfig::default();
    let path = c.config.clone().or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let file = match path {
        Some(p) => load_file(&p)?,
        None => FileConfig::default(),
    };

    let mut lambda = cfg.frame.lambda().to_vec();
    let mut mu = cfg.frame.mu().to_vec();
    let mut shift = 0;
    if let Some(l) = &file.lambda {
        lambda = from_file(l)?;
    }
    if let Some(m) = &file.mu {
        mu = from_file(m)?;
    }
    if let Some(s) = file.shift {
        shift = s;
    }
    if let Some(d) = &file.d {
        cfg.d = d.value()?;
    }
    cfg.seed = file.seed.unwrap_or(cfg.seed);
    cfg.max_weight = file.max_weight.unwrap_or(cfg.max_weight);
    cfg.samples = file.samples.unwrap_or(cfg.samples);
    cfg.probe_samples = file.probe_samples.unwrap_or(cfg.probe_samples);
    if let Some(g) = &file.gl {
        cfg.gl_frames = vec![gl_frame(g.ell, from_file(&g.alpha)?, from_file(&g.beta)?)?];
    }

    if let Some(l) = &c.lambda {
        lambda = scalar_list(l)?;
    }
    if let Some(m) = &c.mu {
        mu = scalar_list(m)?;
    }
    shift = c.shift.unwrap_or(shift);
    if let Some(d) = &c.d {
        cfg.d = parse_scalar(d)?;
    }
    cfg.seed = c.seed.unwrap_or(cfg.seed);
    cfg.max_weight = c.max_weight.unwrap_or(cfg.max_weight);
    cfg.samples = c.samples.unwrap_or(cfg.samples);
    cfg.probe_samples = c.probe_samples.unwrap_or(cfg.probe_samples);
    match (&c.alpha, &c.beta) {
        (Some(a), Some(b)) => cfg.gl_frames = vec![gl_frame(c.ell, scalar_list(a)?, scalar_list(b)?)?],
        (None, None) => {}
        _ => return Err(Failure::Usage("--alpha and --beta must be given together".into())),
    }
    cfg.frame = WhittakerFrame::new(lambda, mu).with_shift(shift);
    Ok(cfg)
}

fn emit(text: &str, value: &Value) {
    out!("{text}");
    out!("{value}");
}

fn cmd_act(cfg: &SuiteConfig, op: &str, vec: &str) -> Outcome {
    let word = parse_word(op)?;
    let v = parse_vec(vec)?;
    let r = act_word(&word, &v, &cfg.frame)?;
    let text = r.to_string();
    emit(&text, &json!({"schema": "1", "frame": cfg.frame.to_string(), "op": op, "input": v.to_string(), "result": text, "terms": vec_to_json(&r)}));
    Ok(true)
}

fn cmd_verify(cfg: &SuiteConfig, suite: &str, out: Option<&Path>) -> Outcome {
    if suite != "all" && !SUITES.contains(&suite) {
        return Err(Failure::Usage(format!("unknown suite `{suite}`; expected one of all, {}", SUITES.join(", "))));
    }
    let report = run_suite(suite, cfg)?;
    let value = report.to_json();
    if let Some(p) = out {
        let text = serde_json::to_string_pretty(&value).expect("report serializes");
        std::fs::write(p, text + "\n").map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
    }
    out!("{suite}: {} cases, {} failures", report.cases.len(), report.failures());
    for c in report.cases.iter().filter(|c| !c.pass) {
        out!("FAIL {}: {} {}", c.id, c.residual, c.note);
    }
    out!("{value}");
    Ok(report.passed())
}

fn cmd_whittaker(cfg: &SuiteConfig) -> Outcome {
    let f = &cfg.frame;
    let (i, j) = sufficient_window(f, cfg.max_weight);
    let s = whittaker_space(f, cfg.max_weight, 16, i, j)?;
    out!("dimension {} at weight <= {} (predicted {}, stable {})", s.dimension(), cfg.max_weight, s.predicted, s.stable);
    for v in &s.basis {
        out!("  {v}");
    }
    out!("{}", s.to_json(f));
    Ok(s.matches_prediction && s.dimension() == s.predicted && s.stable)
}

fn cmd_quotient(cfg: &SuiteConfig, vec: &str) -> Outcome {
    let f = &cfg.frame;
    let v = parse_vec(vec)?;
    let q = project(&v, &cfg.d, f)?;
    let text = q.vec.to_string();
    let mut value = json!({"schema": "1", "frame": f.to_string(), "d": format_scalar(&cfg.d), "input": v.to_string(), "result": text, "terms": vec_to_json(&q.vec)});
    if q.is_zero() {
        value["certificate"] = Value::Null;
        emit(&text, &value);
        return Ok(true);
    }
    let cert = cyclicity_probe(&q, f, default_retries(&q));
    let pass = match &cert {
        Ok(c) => {
            value["certificate"] = json!({
                "sigma": format_scalar(&c.sigma),
                "retries": c.retries,
                "target": c.target.to_string(),
                "steps": c.steps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            });
            true
        }
        Err(e) => {
            value["certificate"] = json!({"error": e.to_string()});
            false
        }
    };
    emit(&text, &value);
    Ok(pass)
}

enum FinOp {
    I,
    E(u32, u32),
    Gen(FinGen, u32),
}

fn parse_fin_op(text: &str) -> Result<FinOp, Failure> {
    let t = text.trim();
    let bad = || Failure::Usage(format!("unknown gl operator `{t}`; expected I, e[i,j], a[i] or as[i]"));
    if t == "I" {
        return Ok(FinOp::I);
    }
    let (head, rest) = t.split_once('[').ok_or_else(bad)?;
    let args: Vec<u32> = rest.strip_suffix(']').ok_or_else(bad)?.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    match (head, args.as_slice()) {
        ("e" | "E", [i, j]) => Ok(FinOp::E(*i, *j)),
        ("a", [i]) => Ok(FinOp::Gen(FinGen::A, *i)),
        ("as", [i]) => Ok(FinOp::Gen(FinGen::AStar, *i)),
        _ => Err(bad()),
    }
}

fn cmd_gl(cfg: &SuiteConfig, op: &str, vec: &str, quotient: bool) -> Outcome {
    let Some(g) = cfg.gl_frames.first() else {
        return Err(Failure::Usage("no gl frame configured".into()));
    };
    let word: Vec<FinOp> = op.split_whitespace().map(parse_fin_op).collect::<Result<_, _>>()?;
    if word.is_empty() {
        return Err(Failure::Usage("empty operator word".into()));
    }
    let v = g.parse(vec)?;
    let mut r = v.clone();
    for o in &word {
        r = match o {
            FinOp::I => act_i_fin(&r, g)?,
            FinOp::E(i, j) => act_e_fin(*i, *j, &r, g)?,
            FinOp::Gen(k, i) => act_gen_fin(*k, *i, &r, g)?,
        };
    }
    let mut pass = true;
    let mut value = json!({"schema": "1", "frame": g.to_string(), "op": op, "input": v.to_string()});
    if quotient {
        r = quotient_fin(&r, &cfg.d, g)?;
        value["d"] = json!(format_scalar(&cfg.d));
        value["certificate"] = if r.0.is_zero() {
            Value::Null
        } else {
            match cyclicity_probe_fin(&r, &cfg.d, g, 2) {
                Ok(s) => json!({"sigma": format_scalar(&s)}),
                Err(e) => {
                    pass = false;
                    json!({"error": e.to_string()})
                }
            }
        };
    }
    let text = r.to_string();
    value["result"] = json!(text);
    value["terms"] = vec_to_json_styled(&r.0, VarStyle::Indexed);
    emit(&text, &value);
    Ok(pass)
}

fn read_report(path: &Path) -> Result<SuiteReport, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    // accepts a pretty report file or captured `verify` output ending in a JSON line
    let parsed = serde_json::from_str(&text).or_else(|e| text.lines().rev().find(|l| l.starts_with('{')).map_or(Err(e), serde_json::from_str));
    let value: Value = parsed.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    SuiteReport::from_json(&value).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_report(files: &[PathBuf]) -> Outcome {
    if files.is_empty() {
        return Err(Failure::Usage("report needs at least one report file".into()));
    }
    let reports: Vec<SuiteReport> = files.iter().map(|p| read_report(p)).collect::<Result<_, _>>()?;
    let failures: usize = reports.iter().map(SuiteReport::failures).sum();
    out!("{} suites, {failures} failures", reports.len());
    out!("{:<12} {:>6} {:>6} {:>8}  frame", "suite", "seed", "cases", "failures");
    for r in &reports {
        out!("{:<12} {:>6} {:>6} {:>8}  {}", r.suite, r.seed, r.cases.len(), r.failures(), r.frame);
    }
    let mut failing = Vec::new();
    for r in &reports {
        for c in r.cases.iter().filter(|c| !c.pass) {
            out!("FAIL {}: {} {}", c.id, c.residual, c.note);
            failing.push(json!({"suite": r.suite, "id": c.id, "residual": c.residual, "note": c.note}));
        }
    }
    let rows: Vec<Value> =
        reports.iter().map(|r| json!({"suite": r.suite, "frame": r.frame, "seed": r.seed, "caseCount": r.cases.len(), "failures": r.failures()})).collect();
    out!("{}", json!({"schema": "1", "suites": rows.len(), "failures": failures, "reports": rows, "failing": failing}));
    Ok(failures == 0)
}

fn run(cli: &Cli) -> Outcome {
    if let Command::Report { files } = &cli.command {
        return cmd_report(files);
    }
    let cfg = resolve(&cli.common)?;
    match &cli.command {
        Command::Act { op, vec } => cmd_act(&cfg, op, vec),
        Command::Verify { suite, out } => cmd_verify(&cfg, suite, out.as_deref()),
        Command::Whittaker => cmd_whittaker(&cfg),
        Command::Quotient { vec } => cmd_quotient(&cfg, vec),
        Command::Gl { op, vec, quotient } => cmd_gl(&cfg, op, vec, *quotient),
        Command::Report { .. } => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(p) => p,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verify(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
