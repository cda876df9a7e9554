//! `bcfks`: command-line front end for the Laurent-polynomial models.

use std::fmt::Write as _;
use std::process::ExitCode;

use bcfks::selftest::{run_selftest, SelftestConfig};
use bcfks::superpotential::{superpotential_of, Elimination};
use bcfks::{check_period, closed_form, decompose, iseries, Error, ModelSpec, Vertex};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const EXIT_INVALID: u8 = 2;
const EXIT_DISAGREE: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "bcfks", version, about = "Laurent polynomial mirrors of complete intersections in Grassmannians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quiver, block decomposition, weight tables and the action matrix.
    Model {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The superpotential on the reduced torus.
    Superpotential {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = Method::Elimination)]
        method: Method,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Constant term of the regularized I-series.
    Iseries {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compares [f^i] with the I-series through the given order.
    Check {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Runs the invariant suite over every Fano model within the bounds.
    Selftest {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        #[arg(long, default_value_t = 2)]
        max_l: usize,
        /// Random points per randomized check.
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Ordered comma-separated hypersurface degrees; empty for the Grassmannian itself.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    degrees: String,
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Elimination,
    Closed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// What a command prints, and the exit status that goes with it.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, code: 0 }
    }
}

impl ModelArgs {
    fn spec(&self) -> Result<ModelSpec, Error> {
        let trimmed = self.degrees.trim();
        let degrees = if trimmed.is_empty() {
            Vec::new()
        } else {
            trimmed
                .split(',')
                .map(|d| {
                    d.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidSpec(format!("degree {d:?} is not a positive integer")))
                })
                .collect::<Result<_, _>>()?
        };
        ModelSpec::new(self.n, self.k, degrees)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Model { common, .. }
        | Command::Superpotential { common, .. }
        | Command::Iseries { common, .. }
        | Command::Check { common, .. }
        | Command::Selftest { common, .. } => common,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = common.workers {
        pool = pool.num_threads(w.max(1));
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let format = common.format;
    match pool.install(|| run(&cli.command)) {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string(&out.json).expect("json")),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidSpec(_) | Error::BlockOutOfRange { .. } => EXIT_INVALID,
                _ => 1,
            })
        }
    }
}

fn run(command: &Command) -> Result<Output, Error> {
    match command {
        Command::Model { model, .. } => cmd_model(&model.spec()?),
        Command::Superpotential { model, method, .. } => cmd_superpotential(&model.spec()?, *method),
        Command::Iseries { model, order, .. } => cmd_iseries(&model.spec()?, *order),
        Command::Check { model, order, .. } => cmd_check(&model.spec()?, *order),
        Command::Selftest { max_n, max_k, max_l, points, common } => Ok(cmd_selftest(SelftestConfig {
            max_n: *max_n,
            max_k: *max_k,
            max_l: *max_l,
            points: *points,
            seed: common.seed,
        })),
    }
}

fn matrix_text(out: &mut String, title: &str, m: &[Vec<i64>]) {
    let width = m.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let _ = writeln!(out, "{title}:");
    for row in m {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        let _ = writeln!(out, "  [{}]", cells.join(" "));
    }
}

fn cmd_model(spec: &ModelSpec) -> Result<Output, Error> {
    let dec = decompose(spec);
    let el = Elimination::new(&dec)?;
    let q = dec.quiver();
    let arrows: Vec<String> = q.arrows().iter().map(ToString::to_string).collect();
    let complement: Vec<String> = dec.complement().iter().map(ToString::to_string).collect();
    let weight_variables: Vec<String> = dec.blocks().iter().map(|b| b.weight_variable()).collect();
    let weights: Vec<Value> = dec
        .blocks()
        .iter()
        .enumerate()
        .map(|(p, b)| {
            json!({
                "block": b.to_string(),
                "a": el.weights().weight(p, Vertex::new(0, 1)),
                "grid": el.weights().grid(p),
            })
        })
        .collect();
    let am = el.action();
    let reduced = el.reduced_frame().variables().names().to_vec();
    let json = json!({
        "spec": spec,
        "quiver": {
            "vertices": q.vertices(),
            "arrows": arrows,
        },
        "blocks": dec.blocks(),
        "complement": complement,
        "weight_variables": weight_variables,
        "weights": weights,
        "action_matrix": am,
        "torus": reduced,
    });

    let mut text = String::new();
    let _ = writeln!(text, "{spec}, Fano index {}", spec.fano_index());
    let _ = writeln!(text, "quiver: {} vertices, {} arrows", q.vertices().len(), q.arrows().len());
    for (p, b) in dec.blocks().iter().enumerate() {
        let names: Vec<String> = b.arrows().iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "B{} = {b}  weight variable {}  [{}]", p + 1, b.weight_variable(), names.join(" "));
    }
    let _ = writeln!(text, "complement: [{}]", complement.join(" "));
    for (p, b) in dec.blocks().iter().enumerate() {
        matrix_text(
            &mut text,
            &format!("wt{} for {b} (a: {})", p + 1, el.weights().weight(p, Vertex::new(0, 1))),
            &el.weights().grid(p),
        );
    }
    matrix_text(&mut text, "M", &am.matrix);
    matrix_text(&mut text, "M^-1", &am.inverse);
    let _ = writeln!(text, "torus: {}", reduced.join(", "));
    Ok(Output::ok(json, text))
}

fn cmd_superpotential(spec: &ModelSpec, method: Method) -> Result<Output, Error> {
    let dec = decompose(spec);
    let el = Elimination::new(&dec)?;
    let mut text = String::new();
    let _ = writeln!(text, "{spec}");
    let _ = writeln!(text, "torus: {}", el.reduced_frame().variables().names().join(", "));
    let out = match method {
        Method::Elimination => {
            let f = el.superpotential()?;
            let _ = writeln!(text, "f = {}", el.factored()?);
            let _ = writeln!(text, "  = {f}");
            Output::ok(
                json!({"spec": spec, "method": "elimination", "terms": f.term_count(), "polynomial": f.to_json()}),
                text,
            )
        }
        Method::Closed => {
            let f = closed_form(spec);
            let _ = writeln!(text, "f = {f}");
            Output::ok(
                json!({"spec": spec, "method": "closed", "terms": f.term_count(), "polynomial": f.to_json()}),
                text,
            )
        }
        Method::Both => {
            let f = superpotential_of(spec)?;
            let g = closed_form(spec);
            let agree = f == g;
            let verdict = if agree { "agree" } else { "disagree" };
            let _ = writeln!(text, "f = {}", el.factored()?);
            let _ = writeln!(text, "  = {f}");
            if !agree {
                let _ = writeln!(text, "closed form: {g}");
            }
            let _ = writeln!(text, "elimination and closed form: {verdict}");
            Output {
                json: json!({
                    "spec": spec,
                    "method": "both",
                    "elimination": f.to_json(),
                    "closed": g.to_json(),
                    "verdict": verdict,
                }),
                text,
                code: if agree { 0 } else { EXIT_DISAGREE },
            }
        }
    };
    Ok(out)
}

fn cmd_iseries(spec: &ModelSpec, order: usize) -> Result<Output, Error> {
    let series = iseries(spec, order)?;
    let mut text = format!("{spec}, Fano index {}\n", spec.fano_index());
    for (i, c) in series.coefficients.iter().enumerate() {
        let _ = writeln!(text, "t^{i:<3} {c}");
    }
    let json = serde_json::to_value(bcfks::iseries::IseriesJson {
        spec,
        coefficients: series.to_strings(),
    })
    .map_err(|e| Error::Json(e.to_string()))?;
    Ok(Output::ok(json, text))
}

fn cmd_check(spec: &ModelSpec, order: usize) -> Result<Output, Error> {
    let report = check_period(spec, order)?;
    let json = serde_json::to_value(report.to_json()).map_err(|e| Error::Json(e.to_string()))?;
    let mut text = format!("{spec}\n");
    let width = report.lhs.to_strings().iter().map(String::len).max().unwrap_or(1);
    for (i, (a, b)) in report.lhs.coefficients.iter().zip(&report.rhs.coefficients).enumerate() {
        let mark = if a == b { "" } else { "  <-" };
        let _ = writeln!(text, "t^{i:<3} [f^i] = {:>width$}   I = {b}{mark}", a.to_string());
    }
    let _ = writeln!(text, "{}", report.verdict);
    Ok(Output {
        json,
        text,
        code: if report.is_match() { 0 } else { EXIT_MISMATCH },
    })
}

fn cmd_selftest(config: SelftestConfig) -> Output {
    let report = run_selftest(config);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} models with n <= {}, k <= {}, l <= {}",
        report.specs.len(),
        config.max_n,
        config.max_k,
        config.max_l
    );
    for (name, passed, total) in report.tally() {
        let _ = writeln!(text, "  {name:<16} {passed}/{total}");
    }
    for s in report.specs.iter().filter(|s| !s.passed()) {
        for c in s.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(text, "FAIL {} {}: {}", s.spec, c.name, c.detail.as_deref().unwrap_or(""));
        }
    }
    let passed = report.passed();
    let _ = writeln!(text, "{}", if passed { "all invariants hold" } else { "invariant failures" });
    let failures: Vec<&bcfks::selftest::SpecReport> = report.specs.iter().filter(|s| !s.passed()).collect();
    let tally: Vec<Value> = report
        .tally()
        .into_iter()
        .map(|(name, passed, total)| json!({"check": name, "passed": passed, "total": total}))
        .collect();
    Output {
        json: json!({
            "config": config,
            "models": report.specs.len(),
            "checks": tally,
            "failures": failures,
            "verdict": if passed { "pass" } else { "fail" },
        }),
        text,
        code: if passed { 0 } else { EXIT_DISAGREE },
    }
}
