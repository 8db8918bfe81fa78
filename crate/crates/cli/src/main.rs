use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use wedgent::states::CanonicalSpec;
use wedgent::{
    certify, certify_absolutely_maximal, ckw_check, concurrence_wedge, intrinsic_coherence, maximize, rdm_overlap,
    rdm_trace_oracle, three_tangle, tolerance, Bipartition, EntanglementReport, Objective, PureState, SearchConfig,
    Side, SiteDims, StateFile,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "wedgent", version, about = "Entanglement analysis of multipartite pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Concurrence, certification and global entanglement over every cut
    Analyze(StateArgs),
    /// Maximal-entanglement certification, per cut or for a single cut
    Certify {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        cut: CutArgs,
    },
    /// 3-tangle and CKW terms of a three-qubit state
    Tangle(StateArgs),
    /// Reduced density matrix of one block
    Rdm {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        cut: CutArgs,
        /// Also run the partial-trace oracle and report the deviation
        #[arg(long)]
        oracle: bool,
    },
    /// Intrinsic degree of coherence of one block
    Coherence {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        cut: CutArgs,
    },
    /// Emit a named state as a state file
    Factory(FactoryArgs),
    /// Random-restart search for highly entangled states
    Search(SearchArgs),
}

#[derive(Args)]
struct Common {
    /// Write the report here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Indent the JSON output
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct StateArgs {
    /// State file; `-` or nothing reads stdin
    input: Option<PathBuf>,
    /// Certification tolerance
    #[arg(long, default_value_t = tolerance::CERTIFY)]
    tol: f64,
    /// Rescale the amplitudes to unit norm instead of rejecting them
    #[arg(long)]
    normalize: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CutArgs {
    /// Sites of block A, comma separated (e.g. `0,2`)
    #[arg(long, value_delimiter = ',')]
    cut: Option<Vec<usize>>,
    /// Block to keep; defaults to the smaller one
    #[arg(long, value_enum)]
    keep: Option<SideArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    A,
    B,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::A => Side::A,
            SideArg::B => Side::B,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Bell,
    Max2q,
    Ghz,
    GhzLike,
    W,
    GeneralizedBell,
    Acin,
    LbpsTable,
}

#[derive(Args)]
struct FactoryArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Bell index 0..4
    #[arg(long)]
    index: Option<usize>,
    /// GHZ-like variant 1..=4
    #[arg(long)]
    variant: Option<usize>,
    /// Number of qubits (ghz)
    #[arg(long)]
    n: Option<usize>,
    /// Local dimension (generalized_bell)
    #[arg(long)]
    d: Option<usize>,
    /// `re,im` of a (max2q)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    a: Option<Vec<f64>>,
    /// `re,im` of b (max2q)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    b: Option<Vec<f64>>,
    /// Five amplitudes k0..k4 (acin)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    k: Option<Vec<f64>>,
    /// Phase (max2q, acin)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    /// Table class 1..=5 (lbps_table)
    #[arg(long)]
    class: Option<usize>,
    /// Table row, 1-based (lbps_table)
    #[arg(long)]
    row: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    /// Maximize global entanglement E
    MaxE,
    /// Drive every cut toward maximal entanglement
    Residual,
}

#[derive(Args)]
struct SearchArgs {
    /// Site dimensions, comma separated (e.g. `2,2,2`)
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    #[arg(long, value_enum, default_value = "residual")]
    objective: ObjectiveArg,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    #[arg(long, default_value_t = 2000)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Certification tolerance for the best state
    #[arg(long, default_value_t = tolerance::CERTIFY)]
    tol: f64,
    #[command(flatten)]
    common: Common,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<wedgent::Error> for Failure {
    fn from(e: wedgent::Error) -> Self {
        Failure { code: if e.is_numerical() { 3 } else { 2 }, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

struct Report {
    command: &'static str,
    dims: Vec<usize>,
    tolerances: Value,
    read_ms: f64,
    started: Instant,
    body: Value,
}

impl Report {
    fn into_json(self) -> Value {
        let mut out = Map::new();
        out.insert("schema_version".into(), json!(SCHEMA_VERSION));
        out.insert("command".into(), json!(self.command));
        out.insert("dims".into(), json!(self.dims));
        out.insert("tolerances".into(), self.tolerances);
        let compute_ms = self.started.elapsed().as_secs_f64() * 1e3;
        out.insert("timings".into(), json!({ "read_ms": self.read_ms, "compute_ms": compute_ms }));
        if let Value::Object(body) = self.body {
            for (k, v) in body {
                out.entry(k).or_insert(v);
            }
        }
        Value::Object(out)
    }
}

fn tolerances(certify_tol: f64) -> Value {
    json!({
        "certify": certify_tol,
        "norm": tolerance::NORM,
        "consistency": tolerance::CONSISTENCY,
        "tangle": tolerance::TANGLE,
    })
}

fn read_state(args: &StateArgs) -> Result<(PureState, f64), Failure> {
    let start = Instant::now();
    let text = match &args.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| input_error(format!("stdin: {e}")))?;
            s
        }
    };
    let file: StateFile = serde_json::from_str(&text).map_err(|e| input_error(format!("state file: {e}")))?;
    let state = if args.normalize {
        let dims = SiteDims::new(file.dims)?;
        PureState::normalized(dims, file.amplitudes.into_iter().map(Into::into).collect())?
    } else {
        file.into_state()?
    };
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(input_error(format!("tolerance {} must be positive", args.tol)));
    }
    Ok((state, start.elapsed().as_secs_f64() * 1e3))
}

fn resolve_cut(state: &PureState, cut: &CutArgs) -> Result<(Bipartition, Side), Failure> {
    let block = cut.cut.clone().unwrap_or_else(|| vec![0]);
    let bp = Bipartition::new(state.dims(), &block)?;
    let side = cut.keep.map(Side::from).unwrap_or_else(|| bp.smaller_side());
    Ok((bp, side))
}

fn state_report<'a>(
    command: &'static str,
    args: &'a StateArgs,
    body: impl FnOnce(&PureState) -> Result<Value, Failure>,
) -> Result<(Report, &'a Common), Failure> {
    let (state, read_ms) = read_state(args)?;
    let started = Instant::now();
    let body = body(&state)?;
    let report = Report {
        command,
        dims: state.dims().as_slice().to_vec(),
        tolerances: tolerances(args.tol),
        read_ms,
        started,
        body,
    };
    Ok((report, &args.common))
}

fn cut_json(cut: &Bipartition) -> Value {
    json!({ "block_a": cut.block_a(), "label": cut.to_string() })
}

fn factory_spec(f: &FactoryArgs) -> Result<CanonicalSpec, Failure> {
    fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Failure> {
        v.ok_or_else(|| input_error(format!("--{flag} is required for this family")))
    }
    let pair = |v: &Option<Vec<f64>>, flag: &str| -> Result<(f64, f64), Failure> {
        match v.as_deref() {
            Some([re, im]) => Ok((*re, *im)),
            _ => Err(input_error(format!("--{flag} takes re,im"))),
        }
    };
    Ok(match f.family {
        Family::Bell => CanonicalSpec::Bell { index: need(f.index, "index")? },
        Family::Max2q => CanonicalSpec::Max2q { a: pair(&f.a, "a")?, b: pair(&f.b, "b")?, theta: f.theta },
        Family::Ghz => CanonicalSpec::Ghz { n: need(f.n, "n")? },
        Family::GhzLike => CanonicalSpec::GhzLike { variant: need(f.variant, "variant")? },
        Family::W => CanonicalSpec::W,
        Family::GeneralizedBell => CanonicalSpec::GeneralizedBell { d: need(f.d, "d")? },
        Family::Acin => {
            let k: [f64; 5] =
                f.k.as_deref()
                    .and_then(|k| k.try_into().ok())
                    .ok_or_else(|| input_error("--k takes five comma-separated amplitudes".into()))?;
            CanonicalSpec::Acin { k, theta: f.theta }
        }
        Family::LbpsTable => CanonicalSpec::LbpsTable { class: need(f.class, "class")?, row: need(f.row, "row")? },
    })
}

fn run(cli: Cli) -> Result<(Value, Option<PathBuf>, bool), Failure> {
    let (report, common) = match &cli.command {
        Command::Analyze(args) => state_report("analyze", args, |s| {
            let report = EntanglementReport::build(s, args.tol)?;
            Ok(serde_json::to_value(report.to_json()).expect("report serializes"))
        })?,
        Command::Certify { state, cut } => state_report("certify", state, |s| {
            let results = match &cut.cut {
                Some(_) => vec![certify(s, &resolve_cut(s, cut)?.0, state.tol)?],
                None => certify_absolutely_maximal(s, state.tol)?.cuts,
            };
            let cuts: Vec<Value> = results
                .iter()
                .map(|r| {
                    let mut v = cut_json(&r.cut);
                    v["ortho_res"] = json!(r.ortho_residual);
                    v["eq_res"] = json!(r.equality_residual);
                    v["sep_res"] = json!(r.separability_residual);
                    v["verdict"] = json!(r.verdict);
                    v
                })
                .collect();
            Ok(json!({ "absolutely_maximal": results.iter().all(|r| r.is_maximal()), "cuts": cuts }))
        })?,
        Command::Tangle(args) => state_report("tangle", args, |s| {
            let tau = three_tangle(s)?;
            Ok(json!({ "tangle": tau, "ckw": ckw_check(s)? }))
        })?,
        Command::Rdm { state, cut, oracle } => state_report("rdm", state, |s| {
            let (bp, side) = resolve_cut(s, cut)?;
            let rho = rdm_overlap(s, &bp, side)?;
            let mut body = json!({
                "cut": cut_json(&bp),
                "keep": side,
                "rdm": rho,
                "purity": rho.purity(),
                "distance_from_maximally_mixed": rho.distance_from_maximally_mixed(),
            });
            if *oracle {
                let reference = rdm_trace_oracle(s, &bp, side)?;
                body["oracle_deviation"] = json!(rho.matrix().max_abs_diff(reference.matrix()));
            }
            Ok(body)
        })?,
        Command::Coherence { state, cut } => state_report("coherence", state, |s| {
            let (bp, side) = resolve_cut(s, cut)?;
            let p = intrinsic_coherence(s, &bp, side)?;
            let c = concurrence_wedge(s, &bp)?;
            let d = bp.dim(side) as f64;
            Ok(json!({
                "cut": cut_json(&bp),
                "keep": side,
                "coherence": p,
                "concurrence": c,
                "complementarity_residual": p * p + d / (d - 1.0) * c * c / 2.0 - 1.0,
            }))
        })?,
        Command::Factory(f) => {
            let started = Instant::now();
            let spec = factory_spec(f)?;
            let state = spec.build()?;
            let file = StateFile::from(&state);
            let report = Report {
                command: "factory",
                dims: file.dims.clone(),
                tolerances: json!({ "norm": tolerance::NORM }),
                read_ms: 0.0,
                started,
                body: json!({ "spec": spec, "amplitudes": file.amplitudes }),
            };
            (report, &f.common)
        }
        Command::Search(a) => {
            let started = Instant::now();
            let objective = match a.objective {
                ObjectiveArg::MaxE => Objective::MaximizeGlobalE,
                ObjectiveArg::Residual => Objective::MinimizeConstraintResidual,
            };
            let mut cfg = SearchConfig::new(SiteDims::new(a.dims.clone())?, objective);
            cfg.restarts = a.restarts;
            cfg.max_iters = a.iters;
            cfg.seed = a.seed;
            cfg.tol = a.tol;
            let result = maximize(&cfg)?;
            let mut body = serde_json::to_value(result.to_json()).expect("search result serializes");
            body["objective"] = json!(objective);
            body["seed"] = json!(a.seed);
            let report = Report {
                command: "search",
                dims: a.dims.clone(),
                tolerances: tolerances(a.tol),
                read_ms: 0.0,
                started,
                body,
            };
            (report, &a.common)
        }
    };
    Ok((report.into_json(), common.output.clone(), common.pretty))
}

fn emit(value: &Value, output: Option<PathBuf>, pretty: bool) -> Result<(), Failure> {
    let mut text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) }
        .expect("json serializes");
    text.push('\n');
    match output {
        Some(path) => std::fs::write(&path, text).map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| input_error(format!("stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli).and_then(|(value, output, pretty)| emit(&value, output, pretty)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("wedgent: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
