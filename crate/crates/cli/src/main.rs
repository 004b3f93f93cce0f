use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use starsep::cutsets::clique_cutset_atoms;
use starsep::detect::{class_membership, ObstructionReport, Variant};
use starsep::generators::{make, max_n, random_weights, sample_class, sample_grown, NamedGraph};
use starsep::hub_division::{check_division, hub_division};
use starsep::io::{read_graph, read_weights, to_json};
use starsep::separations::{canonical_separations, leq_a};
use starsep::separator::main_separator;
use starsep::treewidth::{certify, exact_treewidth, validate_td, TreeDecomposition, EXACT_MAX_N};
use starsep::weight::{half, parse_rational};
use starsep::{Error, Graph, Rational, WeightFn};

#[derive(Parser)]
#[command(name = "starsep", version, about = "Star separations, hub divisions and certified tree decompositions")]
struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Ct,
    Star,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Ct => Variant::Ct,
            VariantArg::Star => Variant::Star,
        }
    }
}

#[derive(Args)]
struct ClassArgs {
    #[arg(long, default_value_t = 4)]
    t: usize,
    #[arg(long, value_enum, default_value = "ct")]
    variant: VariantArg,
}

#[derive(Args)]
struct WeightArgs {
    /// `uniform` or a JSON file with a weight array; overrides weights embedded in the graph file.
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Class membership with the first obstruction found.
    Recognize {
        #[command(flatten)]
        class: ClassArgs,
        file: PathBuf,
    },
    /// Clique-cutset atom decomposition.
    Atoms { file: PathBuf },
    /// Unbalanced vertices, canonical star separations and the order on them.
    Separations {
        #[command(flatten)]
        weights: WeightArgs,
        file: PathBuf,
    },
    /// Hub division, central bag and its checks.
    Hubdiv {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        weights: WeightArgs,
        file: PathBuf,
    },
    /// Balanced separator certificate from the full pipeline.
    Separator {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        weights: WeightArgs,
        /// Balance constant in [1/2, 1), e.g. `1/2` or `2/3`.
        #[arg(long, default_value = "1/2")]
        c: String,
        file: PathBuf,
    },
    /// Certified tree decomposition.
    Decompose {
        #[command(flatten)]
        class: ClassArgs,
        file: PathBuf,
    },
    /// Exact treewidth (at most 14 vertices).
    ExactTw { file: PathBuf },
    /// Re-validates a tree decomposition against a graph; exit 1 when invalid.
    VerifyCert { graph: PathBuf, td: PathBuf },
    /// Writes a named or sampled graph as edge-list JSON.
    Gen {
        /// A graph id such as `W93`, `C6`, `THETA(2,3,3)`, or `random` / `grown` for class samples.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also emit seeded random weights with this skew.
        #[arg(long)]
        weight_skew: Option<u32>,
    },
    /// Runs `decompose` on every file of a directory and prints a summary table.
    Batch {
        #[command(flatten)]
        class: ClassArgs,
        dir: PathBuf,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// A failed command: exit code plus a JSON body for stderr.
struct Failure {
    code: u8,
    body: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Input(_) | Error::Precondition(_) => 2,
            Error::HypothesisViolation { .. } => 4,
            Error::Capacity { .. } => 5,
            Error::Sampling { .. } | Error::Internal(_) => 1,
        };
        let mut body = json!({ "error": e.to_string() });
        if let Error::HypothesisViolation { lemma, witness, .. } = &e {
            body["lemma"] = json!(lemma);
            body["witness"] = json!(witness);
        }
        Failure { code, body }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Error::Input(msg.into()).into()
}

type Outcome = Result<(Value, u8), Failure>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(Graph, Option<WeightFn>), Failure> {
    Ok(read_graph(&read_text(path)?)?)
}

fn pick_weights(g: &Graph, embedded: Option<WeightFn>, arg: &WeightArgs) -> Result<WeightFn, Failure> {
    if g.order() == 0 {
        return Err(input_error("graph has no vertices"));
    }
    Ok(match arg.weights.as_deref() {
        Some("uniform") => WeightFn::uniform(g),
        Some(path) => read_weights(g, &read_text(Path::new(path))?)?,
        None => embedded.unwrap_or_else(|| WeightFn::uniform(g)),
    })
}

fn check_cap(g: &Graph) -> Result<(), Failure> {
    let cap = max_n();
    if g.order() > cap {
        return Err(Error::Capacity { what: "input graph", got: g.order(), limit: cap }.into());
    }
    Ok(())
}

/// Membership gate for the pipeline commands; non-members exit with 3.
fn require_member(g: &Graph, class: &ClassArgs) -> Result<ObstructionReport, Failure> {
    let report = class_membership(g, class.t, class.variant.into())?;
    if !report.member {
        return Err(Failure { code: 3, body: to_value(&report) });
    }
    Ok(report)
}

fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Recognize { class, file } => {
            let (g, _) = load(file)?;
            let report = class_membership(&g, class.t, class.variant.into())?;
            let code = if report.member { 0 } else { 3 };
            Ok((to_value(&report), code))
        }
        Command::Atoms { file } => {
            let (g, _) = load(file)?;
            Ok((to_value(&clique_cutset_atoms(&g)), 0))
        }
        Command::Separations { weights, file } => {
            let (g, embedded) = load(file)?;
            let w = pick_weights(&g, embedded, weights)?;
            let digest = leq_a(&g, &w)?;
            let u = g.set(digest.unbalanced.iter().copied());
            let seps = canonical_separations(&g, &w, &u)?;
            Ok((json!({ "unbalanced": digest.unbalanced, "separations": seps, "order": digest }), 0))
        }
        Command::Hubdiv { class, weights, file } => {
            let (g, embedded) = load(file)?;
            check_cap(&g)?;
            require_member(&g, class)?;
            let w = pick_weights(&g, embedded, weights)?;
            let div = hub_division(&g, &w, class.t)?;
            let checks = check_division(&g, &div);
            let code = if checks.pass() { 0 } else { 4 };
            Ok((json!({ "division": div, "checks": checks, "pass": checks.pass() }), code))
        }
        Command::Separator { class, weights, c, file } => {
            let c = parse_rational(c)?;
            if c < half() || c >= Rational::from_integer(1) {
                return Err(input_error("balance constant must lie in [1/2, 1)"));
            }
            let (g, embedded) = load(file)?;
            check_cap(&g)?;
            require_member(&g, class)?;
            let w = pick_weights(&g, embedded, weights)?;
            let cert = main_separator(&g, &w, class.t)?;
            // a (w, 1/2)-balanced separator is (w, c)-balanced for every c >= 1/2
            let balanced = cert.component_weights.iter().all(|x| x.le(c));
            let mut out = to_value(&cert);
            out["requested_c"] = json!(starsep::weight::format_rational(&c));
            out["balanced_for_requested_c"] = json!(balanced);
            Ok((out, 0))
        }
        Command::Decompose { class, file } => {
            let (g, _) = load(file)?;
            check_cap(&g)?;
            require_member(&g, class)?;
            let cert = certify(&g, class.t, class.variant.into())?;
            Ok((to_value(&cert), 0))
        }
        Command::ExactTw { file } => {
            let (g, _) = load(file)?;
            let tw = exact_treewidth(&g)?;
            Ok((json!({ "n": g.order(), "treewidth": tw, "limit": EXACT_MAX_N }), 0))
        }
        Command::VerifyCert { graph, td } => {
            let (g, _) = load(graph)?;
            let mut v: Value =
                serde_json::from_str(&read_text(td)?).map_err(|e| input_error(format!("bad decomposition: {e}")))?;
            // a full `decompose` output is accepted as well
            if let Some(inner) = v.get_mut("td") {
                v = inner.take();
            }
            let td: TreeDecomposition =
                serde_json::from_value(v).map_err(|e| input_error(format!("bad decomposition: {e}")))?;
            let check = validate_td(&g, &td);
            let mut out = to_value(&check);
            out["width"] = json!(td.width());
            Ok((out, if check.pass { 0 } else { 1 }))
        }
        Command::Gen { kind, n, class, seed, weight_skew } => {
            eprintln!("gen: kind {kind}, n {n}, t {}, seed {seed}", class.t);
            let g = match kind.as_str() {
                "random" => sample_class(*n, class.t, *seed, class.variant.into())?.graph,
                "grown" => sample_grown(*n, class.t, *seed, class.variant.into())?.graph,
                id => make(&id.parse::<NamedGraph>()?)?,
            };
            let mut out: Value = serde_json::from_str(&to_json(&g)).expect("edge list JSON");
            if let Some(skew) = weight_skew {
                let w = random_weights(&g, *seed, *skew);
                out["weights"] = to_value(&w.to_weights());
            }
            Ok((out, 0))
        }
        Command::Batch { class, dir, jobs } => batch(class, dir, *jobs),
    }
}

#[derive(Serialize)]
struct Row {
    instance: String,
    n: Option<usize>,
    member: Option<bool>,
    obstruction: Option<String>,
    separator_sizes: Vec<usize>,
    max_separator: Option<usize>,
    width: Option<usize>,
    exact_treewidth: Option<usize>,
    decomposition_valid: Option<bool>,
    within_width_bound: Option<bool>,
    ledger_holds: Option<bool>,
    error: Option<String>,
    exit: u8,
}

impl Row {
    fn new(instance: String) -> Row {
        Row {
            instance,
            n: None,
            member: None,
            obstruction: None,
            separator_sizes: Vec::new(),
            max_separator: None,
            width: None,
            exact_treewidth: None,
            decomposition_valid: None,
            within_width_bound: None,
            ledger_holds: None,
            error: None,
            exit: 0,
        }
    }
}

fn batch_one(path: &Path, class: &ClassArgs) -> Row {
    let mut row = Row::new(path.file_name().map_or_else(String::new, |s| s.to_string_lossy().into_owned()));
    let fail = |mut row: Row, f: Failure| {
        row.exit = f.code;
        row.error = f.body.get("error").and_then(Value::as_str).map(str::to_string);
        row
    };
    let g = match load(path) {
        Ok((g, _)) => g,
        Err(f) => return fail(row, f),
    };
    row.n = Some(g.order());
    if let Err(f) = check_cap(&g) {
        return fail(row, f);
    }
    match class_membership(&g, class.t, class.variant.into()) {
        Ok(r) => {
            row.member = Some(r.member);
            if let Some(o) = r.obstruction {
                row.obstruction = Some(format!("{:?} {:?}", o.kind, o.vertices));
                row.exit = 3;
                return row;
            }
        }
        Err(e) => return fail(row, e.into()),
    }
    match certify(&g, class.t, class.variant.into()) {
        Ok(c) => {
            row.separator_sizes = c.separators.iter().map(|s| s.size()).collect();
            row.max_separator = Some(c.max_separator);
            row.width = Some(c.width);
            row.exact_treewidth = c.exact_treewidth;
            row.decomposition_valid = Some(c.validation.pass);
            row.within_width_bound = Some(c.within_width_bound);
            row.ledger_holds = Some(c.separators.iter().all(|s| s.ledger.iter().all(|e| e.holds || !e.asserted)));
            row
        }
        Err(e) => fail(row, e.into()),
    }
}

fn batch(class: &ClassArgs, dir: &Path, jobs: Option<usize>) -> Outcome {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| input_error(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| input_error(format!("thread pool: {e}")))?;
    let rows: Vec<Row> = pool.install(|| files.par_iter().map(|p| batch_one(p, class)).collect());
    let violations = rows.iter().filter(|r| r.exit == 4).count();
    let summary = json!({
        "instances": rows.len(),
        "members": rows.iter().filter(|r| r.member == Some(true)).count(),
        "certified": rows.iter().filter(|r| r.decomposition_valid == Some(true)).count(),
        "violations": violations,
    });
    let code = if violations > 0 { 4 } else { 0 };
    Ok((json!({ "rows": rows, "summary": summary, "t": class.t }), code))
}

fn emit(value: &Value, output: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("JSON values print") + "\n";
    match output {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|(value, code)| emit(&value, cli.output.as_deref()).map(|_| code));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            // non-member reports still go to the regular output
            if f.code == 3 {
                let _ = emit(&f.body, cli.output.as_deref());
            } else {
                eprintln!("{}", serde_json::to_string_pretty(&f.body).expect("JSON values print"));
            }
            ExitCode::from(f.code)
        }
    }
}
