//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{
    image_div, kernel_div, run_suite, Budget, ClassicalModel, Closure, FreeModel, Model, Product, Status, SuiteKind,
    SuiteParams, SuiteReport,
};
use crate::classical::{com_divergence, double_divergence, satoh_trace, ClassicalDerivation, Operad};
use crate::divergence::{contract_sum, cocycle_defect_sum, div_sum};
use crate::error::{Error, Result};
use crate::freeder::{bracket_sum, prelie_sum, Context};
use crate::trees::{parse_label_set, GeneratorSet, LabeledTree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperadArg {
    Free,
    Lie,
    Ass,
    Com,
}

impl OperadArg {
    fn classical(self) -> Option<Operad> {
        match self {
            OperadArg::Free => None,
            OperadArg::Lie => Some(Operad::Lie),
            OperadArg::Ass => Some(Operad::Ass),
            OperadArg::Com => Some(Operad::Com),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "operadcalc", version, about = "Derivations of free operad algebras, traces and divergences")]
pub struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Label set, comma separated.
    #[arg(long, global = true, default_value = "x,y")]
    set: String,
    /// Generators as name:arity pairs.
    #[arg(long, global = true, default_value = "*:2")]
    gens: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Single-tree operations.
    Tree {
        #[command(subcommand)]
        op: TreeOp,
    },
    /// The preLie product d ⊲ e.
    Prelie { d: String, e: String },
    /// The bracket [d, e].
    Bracket { d: String, e: String },
    /// The contraction of a derivation to pointed trees.
    Contract {
        #[arg(long = "tree")]
        flag: Option<String>,
        value: Option<String>,
    },
    /// The divergence of a derivation.
    Div {
        #[arg(long = "tree")]
        flag: Option<String>,
        value: Option<String>,
    },
    /// Div([d,e]) − Div(d)·e + Div(e)·d.
    Cocycle { d: String, e: String },
    /// Classical traces of a derivation such as "x -> [x,y]; y -> x".
    Classical {
        #[arg(value_enum)]
        kind: ClassicalKind,
        derivation: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Dimensions of Der, derpl, derlie, Ker Div, traces and Div(Der) per degree.
    Dims {
        #[arg(long, value_enum, default_value_t = OperadArg::Free)]
        operad: OperadArg,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Runs a verification suite.
    Suite {
        name: String,
        #[arg(long, value_enum)]
        operad: Option<OperadArg>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        stab: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Wall-clock budget in milliseconds.
    #[arg(long, env = "OPERADCALC_BUDGET_MS", default_value_t = 600_000)]
    budget_ms: u64,
    /// Include elapsed time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum TreeOp {
    /// Canonical form, degree and leaf count.
    Parse { tree: String },
    Classify { tree: String },
    /// Sum of graftings of the second tree at the matching leaves of the first.
    Graft { t1: String, t2: String },
    /// Cuts the edge above a node (preorder index).
    Prune {
        tree: String,
        #[arg(long)]
        edge: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassicalKind {
    Satoh,
    Double,
    Com,
}

/// Output of a single computation: named string fields.
struct Record {
    command: &'static str,
    fields: Vec<(&'static str, String)>,
}

impl Record {
    fn new(command: &'static str) -> Self {
        Self { command, fields: Vec::new() }
    }

    fn field(mut self, k: &'static str, v: impl ToString) -> Self {
        self.fields.push((k, v.to_string()));
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                if let [(_, v)] = self.fields.as_slice() {
                    return format!("{v}\n");
                }
                self.fields.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
            }
            Format::Json => {
                let mut obj = serde_json::Map::new();
                obj.insert("schema".into(), json!(1));
                obj.insert("command".into(), json!(self.command));
                for (k, v) in &self.fields {
                    obj.insert((*k).into(), json!(v));
                }
                format!("{}\n", Value::Object(obj))
            }
            Format::Csv => {
                let mut s = String::from("field,value\n");
                for (k, v) in &self.fields {
                    s.push_str(&format!("{k},{}\n", csv_escape(v)));
                }
                s
            }
        }
    }
}

fn csv_escape(v: &str) -> String {
    if v.contains([',', '"', '\n']) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

fn context(common: &Common) -> Result<Arc<Context>> {
    let gens = GeneratorSet::parse(&common.gens)?;
    Ok(Arc::new(Context::user(parse_label_set(&common.set)?, gens)?))
}

fn one_of(flag: Option<String>, value: Option<String>) -> Result<String> {
    match (flag, value) {
        (Some(v), None) | (None, Some(v)) => Ok(v),
        (Some(_), Some(_)) => Err(Error::Invalid("give the derivation once, positionally or with --tree".into())),
        (None, None) => Err(Error::Invalid("missing derivation (positional or --tree)".into())),
    }
}

/// Parses `argv` and runs the command, writing the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let _ = writeln!(err, "usage: operadcalc [--set a,b] [--gens name:arity] <COMMAND> ... (see --help)");
            if matches!(e, Error::Budget { .. }) {
                EXIT_BUDGET
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let common = cli.common;
    let format = common.format;
    let emit = |out: &mut dyn Write, r: Record| -> Result<i32> {
        out.write_all(r.render(format).as_bytes()).map_err(|e| Error::Invalid(e.to_string()))?;
        Ok(EXIT_OK)
    };
    match cli.command {
        Command::Tree { op } => {
            let ctx = context(&common)?;
            let r = match op {
                TreeOp::Parse { tree } => {
                    let t = ctx.parse_tree(&tree)?;
                    Record::new("tree parse")
                        .field("tree", &t)
                        .field("degree", t.degree())
                        .field("leaves", t.leaf_count())
                }
                TreeOp::Classify { tree } => {
                    let t = ctx.parse_tree(&tree)?;
                    Record::new("tree classify").field("class", t.classify())
                }
                TreeOp::Graft { t1, t2 } => {
                    let (a, b) = (ctx.parse_tree(&t1)?, ctx.parse_tree(&t2)?);
                    Record::new("tree graft").field("result", crate::trees::graft_matching(&a, &b))
                }
                TreeOp::Prune { tree, edge } => {
                    let t: LabeledTree = ctx.parse_tree(&tree)?;
                    let (lower, upper) = t.prune(edge)?;
                    Record::new("tree prune").field("lower", lower).field("upper", upper)
                }
            };
            emit(out, r)
        }
        Command::Prelie { d, e } => {
            let ctx = context(&common)?;
            let r = prelie_sum(&ctx.parse_sum(&d)?, &ctx.parse_sum(&e)?);
            emit(out, Record::new("prelie").field("result", r))
        }
        Command::Bracket { d, e } => {
            let ctx = context(&common)?;
            let r = bracket_sum(&ctx.parse_sum(&d)?, &ctx.parse_sum(&e)?);
            emit(out, Record::new("bracket").field("result", r))
        }
        Command::Contract { flag, value } => {
            let ctx = context(&common)?;
            let d = ctx.parse_sum(&one_of(flag, value)?)?;
            emit(out, Record::new("contract").field("result", contract_sum(&d)))
        }
        Command::Div { flag, value } => {
            let ctx = context(&common)?;
            let d = ctx.parse_sum(&one_of(flag, value)?)?;
            emit(out, Record::new("div").field("result", div_sum(&d)))
        }
        Command::Cocycle { d, e } => {
            let ctx = context(&common)?;
            let r = cocycle_defect_sum(&ctx.parse_sum(&d)?, &ctx.parse_sum(&e)?);
            emit(out, Record::new("cocycle").field("result", r))
        }
        Command::Classical { kind, derivation, rank } => {
            let r = match kind {
                ClassicalKind::Satoh => {
                    satoh_trace(&ClassicalDerivation::parse(Operad::Lie, rank, &derivation)?)?.to_string()
                }
                ClassicalKind::Double => {
                    double_divergence(&ClassicalDerivation::parse(Operad::Ass, rank, &derivation)?)?.to_string()
                }
                ClassicalKind::Com => {
                    com_divergence(&ClassicalDerivation::parse(Operad::Com, rank, &derivation)?)?.to_string()
                }
            };
            emit(out, Record::new("classical").field("result", r))
        }
        Command::Dims { operad, max_degree, rank, budget } => {
            let b = Budget::millis(budget.budget_ms);
            let rows = match operad.classical() {
                None => {
                    let ctx = context(&common)?;
                    dims_table(FreeModel::new(ctx.labels().to_vec(), ctx.gens().clone()), max_degree, &b)?
                }
                Some(op) => dims_table(ClassicalModel::new(op, rank), max_degree, &b)?,
            };
            let text = render_dims(&rows, format, budget.timing.then(|| b.elapsed().as_millis() as u64));
            out.write_all(text.as_bytes()).map_err(|e| Error::Invalid(e.to_string()))?;
            Ok(EXIT_OK)
        }
        Command::Suite { name, operad, max_degree, rank, stab, seed, samples, budget } => {
            let kind: SuiteKind = name.parse()?;
            let ctx = context(&common)?;
            let mut p = SuiteParams::new(ctx.labels().to_vec());
            p.gens = ctx.gens().clone();
            p.operad = operad.and_then(OperadArg::classical);
            p.max_degree = max_degree;
            p.rank = rank;
            p.stab = stab;
            p.seed = seed;
            p.samples = samples;
            let b = Budget::millis(budget.budget_ms);
            let mut rep = run_suite(kind, &p, &b)?;
            if budget.timing {
                rep.elapsed_ms = Some(b.elapsed().as_millis() as u64);
            }
            out.write_all(render_suite(&rep, format).as_bytes()).map_err(|e| Error::Invalid(e.to_string()))?;
            Ok(match rep.status {
                Status::Pass | Status::ExpectedFailure => EXIT_OK,
                Status::Fail => EXIT_FAIL,
                Status::BudgetExceeded => EXIT_BUDGET,
            })
        }
    }
}

const DIM_COLUMNS: [&str; 6] = ["der", "derpl", "derlie", "kernel_div", "trace", "image_div"];

fn dims_table<M: Model>(model: M, max_degree: usize, budget: &Budget) -> Result<Vec<(usize, [usize; 6])>> {
    let mut pl = Closure::new(model.clone(), Product::PreLie);
    let mut lie = Closure::new(model.clone(), Product::Lie);
    let mut rows = Vec::new();
    for d in 0..=max_degree {
        let (mut der, mut derpl, mut derlie, mut ker) = (0, 0, 0, 0);
        for w in model.weights(d) {
            budget.check()?;
            der += model.basis(d, &w).len();
            ker += kernel_div(&model, d, &w).len();
            if d > 0 {
                derpl += pl.block(d, &w, budget)?.rank();
                derlie += lie.block(d, &w, budget)?.rank();
            }
        }
        let (mut trace, mut image) = (0, 0);
        for w in model.trace_weights(d) {
            let s = image_div(&model, d, &w);
            trace += s.ambient_dim();
            image += s.rank();
        }
        rows.push((d, [der, derpl, derlie, ker, trace, image]));
    }
    Ok(rows)
}

fn render_dims(rows: &[(usize, [usize; 6])], format: Format, elapsed: Option<u64>) -> String {
    match format {
        Format::Json => {
            let per: Vec<Value> = rows
                .iter()
                .map(|(d, v)| {
                    let mut o = serde_json::Map::new();
                    o.insert("degree".into(), json!(d));
                    for (k, x) in DIM_COLUMNS.iter().zip(v) {
                        o.insert((*k).into(), json!(x));
                    }
                    Value::Object(o)
                })
                .collect();
            let mut v = json!({ "schema": 1, "command": "dims", "per_degree": per });
            if let Some(ms) = elapsed {
                v["elapsed_ms"] = json!(ms);
            }
            format!("{v}\n")
        }
        Format::Csv | Format::Text => {
            let sep = if format == Format::Csv { "," } else { "\t" };
            let mut s = format!("degree{sep}{}\n", DIM_COLUMNS.join(sep));
            for (d, v) in rows {
                let cells: Vec<String> = v.iter().map(usize::to_string).collect();
                s.push_str(&format!("{d}{sep}{}\n", cells.join(sep)));
            }
            if let (Some(ms), Format::Text) = (elapsed, format) {
                s.push_str(&format!("elapsed_ms: {ms}\n"));
            }
            s
        }
    }
}

fn status_name(s: Status) -> String {
    serde_json::to_value(s).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

pub fn render_suite(rep: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(rep).expect("report serializes")),
        Format::Text => {
            let mut s = format!("suite {}: {}\n", rep.suite, status_name(rep.status));
            s.push_str(&format!("params: {}\n", rep.params));
            for d in &rep.per_degree {
                let dims: Vec<String> = d.dims.iter().map(|(k, v)| format!("{k}={v}")).collect();
                s.push_str(&format!(
                    "degree {}: {} {}\n",
                    d.degree,
                    dims.join(" "),
                    if d.pass { "pass" } else { "FAIL" }
                ));
            }
            if let Some(c) = &rep.counterexample {
                s.push_str(&format!("counterexample: {c}\n"));
            }
            if let Some(ms) = rep.elapsed_ms {
                s.push_str(&format!("elapsed_ms: {ms}\n"));
            }
            s
        }
        Format::Csv => {
            let mut keys: Vec<&String> = rep.per_degree.iter().flat_map(|d| d.dims.keys()).collect();
            keys.sort();
            keys.dedup();
            let mut s = String::from("degree,pass");
            for k in &keys {
                s.push(',');
                s.push_str(k);
            }
            s.push('\n');
            for d in &rep.per_degree {
                s.push_str(&format!("{},{}", d.degree, d.pass));
                for k in &keys {
                    s.push_str(&format!(",{}", d.dims.get(*k).map(usize::to_string).unwrap_or_default()));
                }
                s.push('\n');
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("operadcalc").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn record_formats() {
        let r = Record::new("x").field("a", "1,2").field("b", 3);
        assert_eq!(r.render(Format::Text), "a: 1,2\nb: 3\n");
        assert_eq!(r.render(Format::Csv), "field,value\na,\"1,2\"\nb,3\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!((v["schema"].as_u64(), v["command"].as_str(), v["b"].as_str()), (Some(1), Some("x"), Some("3")));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["div", "x<-*(x"]).0, EXIT_USAGE);
        assert_eq!(call(&["suite", "nonsense"]).0, EXIT_USAGE);
        assert_eq!(call(&["div"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("suite"));
    }
}
