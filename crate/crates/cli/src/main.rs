use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cobord::actions::{filtration_family, generator_action, landweber_variety, milnor_witness};
use cobord::bounds::{chern_bound, fixed_dim_lower_bound, has_forced_fixed_point};
use cobord::partitions::{partitions_of, Partition};
use cobord::verify::{self, Suite};
use cobord::{ActionWitness, CobordismClass, GenPoly, GroupDescriptor, Lazard, VarietyExpr};
use serde::Serialize;

mod render;

/// Chern numbers, Lazard-ring coordinates and fixed-locus bounds.
#[derive(Parser, Debug)]
#[command(name = "cobord", version)]
struct Cli {
    /// Truncation weight N (largest dimension handled).
    #[arg(long, global = true, env = "COBORD_TRUNC", default_value_t = cobord::DEFAULT_TRUNCATION)]
    trunc: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// The prime p.
    #[arg(long)]
    p: u64,

    /// Exponents a_1,...,a_r of mu_(p^a_1) x ... x mu_(p^a_r); empty for
    /// the trivial group.
    #[arg(long, default_value = "")]
    group: String,
}

impl GroupArgs {
    fn descriptor(&self) -> cobord::Result<GroupDescriptor> {
        GroupDescriptor::parse(self.p, &self.group)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WitnessKind {
    Generators,
    Landweber,
    Milnor,
    Filtration,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chern numbers and generator coordinates of a variety.
    Class {
        /// Variety expression, e.g. '{"hyp":[3,2]}'.
        expr: String,
    },
    /// Lower bound on the fixed-locus dimension of any action.
    Bound {
        expr: String,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Whether every action has a fixed point.
    Fixedpoint {
        expr: String,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Bounds read off single Chern numbers.
    ChernBound {
        expr: String,
        #[command(flatten)]
        group: GroupArgs,
        /// Partition such as 2,1; defaults to every partition of the dimension.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Explicit actions with known fixed-locus dimensions.
    Actions {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = WitnessKind::Generators)]
        kind: WitnessKind,
        /// Largest dimension to list.
        #[arg(long, default_value_t = 8)]
        max_dim: u32,
        /// Filtration level for `--kind filtration`.
        #[arg(long, default_value_t = 0)]
        d: u64,
    },
    /// Run self-check suites: fgl, ideals, presentation, soundness or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        max_n: u32,
    },
}

#[derive(Serialize)]
struct ClassOutput {
    expr: VarietyExpr,
    class: CobordismClass,
    coords: GenPoly,
}

#[derive(Serialize)]
struct FixedPointOutput {
    expr: VarietyExpr,
    group: GroupDescriptor,
    forced_fixed_point: bool,
}

#[derive(Serialize)]
struct ChernBoundRow {
    alpha: Partition,
    c_alpha: String,
    bound: Option<u64>,
}

#[derive(Serialize)]
struct ChernBoundOutput {
    expr: VarietyExpr,
    group: GroupDescriptor,
    rows: Vec<ChernBoundRow>,
}

enum Failure {
    Error(String),
    Checks,
}

impl From<cobord::Error> for Failure {
    fn from(e: cobord::Error) -> Self {
        Failure::Error(e.to_string())
    }
}

fn parse_expr(s: &str) -> Result<VarietyExpr, Failure> {
    Ok(s.parse::<VarietyExpr>()?)
}

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    let parts = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Error(format!("bad partition {s:?}: {e}")))?;
    Ok(Partition::new(parts))
}

fn emit<T: Serialize>(format: Format, value: &T, table: impl FnOnce() -> String) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable output") + "\n",
        Format::Table => table(),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<(), Failure> {
    let lazard = Lazard::new(cli.trunc);
    let format = cli.format;
    match cli.command {
        Command::Class { expr } => {
            let expr = parse_expr(&expr)?;
            let class = lazard.evaluate(&expr)?;
            let coords = lazard.coords(&class)?;
            let out = ClassOutput { expr, class, coords };
            emit(format, &out, || render::class(&out.expr, &out.class, &out.coords));
        }
        Command::Bound { expr, group } => {
            let expr = parse_expr(&expr)?;
            let group = group.descriptor()?;
            let class = lazard.evaluate(&expr)?;
            let report = fixed_dim_lower_bound(&lazard, &class, &group)?;
            emit(format, &report, || render::bound(&expr, &report));
        }
        Command::Fixedpoint { expr, group } => {
            let expr = parse_expr(&expr)?;
            let group = group.descriptor()?;
            let class = lazard.evaluate(&expr)?;
            let forced = has_forced_fixed_point(&lazard, &class, &group)?;
            let out = FixedPointOutput {
                expr,
                group,
                forced_fixed_point: forced,
            };
            emit(format, &out, || {
                let verdict = if forced {
                    "every action has a fixed point"
                } else {
                    "class lies in I_p(r): no fixed point forced"
                };
                format!("{} under {}: {verdict}\n", out.expr, out.group)
            });
        }
        Command::ChernBound { expr, group, alpha } => {
            let expr = parse_expr(&expr)?;
            let group = group.descriptor()?;
            let class = lazard.evaluate(&expr)?;
            let alphas = match alpha {
                Some(a) => vec![parse_partition(&a)?],
                None => {
                    let dim = expr.dimension().ok_or_else(|| {
                        Failure::Error("expression has no pure dimension; pass --alpha".into())
                    })?;
                    partitions_of(dim)
                }
            };
            let rows = alphas
                .into_iter()
                .map(|alpha| ChernBoundRow {
                    c_alpha: class.c_alpha(&alpha).to_string(),
                    bound: chern_bound(&lazard, &class, &alpha, &group),
                    alpha,
                })
                .collect();
            let out = ChernBoundOutput { expr, group, rows };
            emit(format, &out, || render::chern_bounds(&out.rows));
        }
        Command::Actions {
            group,
            kind,
            max_dim,
            d,
        } => {
            let group = group.descriptor()?;
            if max_dim > lazard.trunc() {
                return Err(cobord::Error::TruncationExceeded {
                    dim: max_dim,
                    trunc: lazard.trunc(),
                }
                .into());
            }
            let witnesses: Vec<ActionWitness> = match kind {
                WitnessKind::Generators => {
                    let mut out = Vec::new();
                    for i in 1..=max_dim {
                        let (plus, minus) = generator_action(&lazard, i, &group)?;
                        out.extend([plus, minus]);
                    }
                    out
                }
                WitnessKind::Landweber => (0..group.r())
                    .filter_map(|s| landweber_variety(&lazard, s, &group).ok())
                    .filter(|w| w.variety.dimension().is_some_and(|x| x <= max_dim))
                    .collect(),
                WitnessKind::Milnor => {
                    let mut out = Vec::new();
                    for n in 1..=max_dim + 1 {
                        for m in std::iter::once(0).chain(2..=n) {
                            if m + n - 1 <= max_dim {
                                out.push(milnor_witness(m, n, &group)?);
                            }
                        }
                    }
                    out
                }
                WitnessKind::Filtration => filtration_family(&lazard, d, &group, max_dim)?,
            };
            emit(format, &witnesses, || render::witnesses(&witnesses));
        }
        Command::Verify { suite, p, max_n } => {
            let suite: Suite = suite.parse()?;
            let reports = verify::run(&lazard, suite, p, max_n)?;
            let ok = reports.iter().all(|r| r.ok());
            emit(format, &reports, || {
                reports.iter().map(|r| format!("{r}\n")).collect()
            });
            if !ok {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::FAILURE,
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
