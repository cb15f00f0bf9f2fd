//! `mastercount`: hypergeometric representation, relation discovery, numeric
//! verification and IBP reduction for the two-loop on-shell sunset.

mod fail;
mod hyper;
mod ibp;
mod sunset;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mastercount::ibp::FamilyIndex;
use mastercount::kernel::parse_rat;
use mastercount::Rat;

use fail::CmdResult;

#[derive(Parser)]
#[command(
    name = "mastercount",
    version,
    about = "Master-integral counting for the on-shell sunset"
)]
struct Cli {
    /// Decimal digits for numeric work.
    #[arg(long, global = true, env = "MASTERCOUNT_PREC", default_value_t = 50,
          value_parser = clap::value_parser!(u32).range(10..))]
    prec: u32,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// The sunset family J(σ, β, α).
    #[command(subcommand)]
    Sunset(SunsetCmd),
    /// Generalized hypergeometric functions.
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// IBP reduction of the sunset family.
    #[command(subcommand)]
    Ibp(IbpCmd),
}

#[derive(Subcommand)]
enum SunsetCmd {
    /// Hypergeometric representation, before and after collapse.
    Repr(Indices),
    /// The relation among the three masters.
    Relation {
        /// Specialize to M = m.
        #[arg(long)]
        equal_mass: bool,
    },
    /// Residual of the main relation at a numeric point.
    Verify(Point),
    /// Value of J(σ, β, α) at M² = 1.
    Eval {
        #[command(flatten)]
        idx: Indices,
        #[command(flatten)]
        at: Point,
    },
}

#[derive(Args)]
struct Indices {
    #[arg(long, allow_negative_numbers = true)]
    sigma: i64,
    #[arg(long, allow_negative_numbers = true)]
    beta: i64,
    #[arg(long, allow_negative_numbers = true)]
    alpha: i64,
}

/// A numeric point, with `n = 4 - 2ε` and `z = m²/M²·4`.
#[derive(Args, Clone)]
struct Point {
    #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
    eps: Rat,
    #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
    z: Rat,
}

#[derive(Subcommand)]
enum HyperCmd {
    /// Sum the series at a point.
    Eval {
        spec: String,
        #[command(flatten)]
        at: Point,
    },
    /// Reduce onto a basis function.
    Reduce {
        spec: String,
        /// Basis to reduce onto; by default F_x, then F_y, then the
        /// function itself.
        #[arg(long)]
        target: Option<String>,
    },
    /// Number of independent basis functions.
    Count { spec: String },
}

#[derive(Args, Clone)]
struct TableOpts {
    #[arg(long, default_value_t = 2)]
    seed_dots: u32,
    #[arg(long, default_value_t = 1)]
    seed_nums: u32,
    /// Reduction table cache; reused when its seed bounds match.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Inject the main relation, eliminating I(1,2,1,0,0).
    #[arg(long)]
    with_main_relation: bool,
}

#[derive(Subcommand)]
enum IbpCmd {
    /// Express an integral through masters.
    Reduce {
        #[arg(long, value_parser = index_arg, allow_hyphen_values = true)]
        target: FamilyIndex,
        #[command(flatten)]
        table: TableOpts,
    },
    /// List the master integrals.
    Masters {
        #[command(flatten)]
        table: TableOpts,
    },
    /// Compare a reduction against the series representation.
    Check {
        #[arg(long, value_parser = index_arg, allow_hyphen_values = true)]
        target: FamilyIndex,
        #[command(flatten)]
        at: Point,
        #[command(flatten)]
        table: TableOpts,
    },
}

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn index_arg(s: &str) -> Result<FamilyIndex, String> {
    s.parse().map_err(|e: mastercount::Error| e.to_string())
}

/// Output settings shared by every command.
#[derive(Clone, Copy)]
pub struct Out {
    pub prec: u32,
    pub json: bool,
}

impl Out {
    pub fn emit(&self, v: serde_json::Value) {
        println!(
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        );
    }
}

fn run(cli: Cli) -> CmdResult {
    let out = Out {
        prec: cli.prec,
        json: cli.json,
    };
    match cli.cmd {
        Cmd::Sunset(c) => match c {
            SunsetCmd::Repr(i) => sunset::repr(out, i.sigma, i.beta, i.alpha),
            SunsetCmd::Relation { equal_mass } => sunset::relation(out, equal_mass),
            SunsetCmd::Verify(p) => sunset::verify(out, &p.eps, &p.z),
            SunsetCmd::Eval { idx, at } => {
                sunset::eval(out, idx.sigma, idx.beta, idx.alpha, &at.eps, &at.z)
            }
        },
        Cmd::Hyper(c) => match c {
            HyperCmd::Eval { spec, at } => hyper::eval(out, &spec, &at.eps, &at.z),
            HyperCmd::Reduce { spec, target } => hyper::reduce(out, &spec, target.as_deref()),
            HyperCmd::Count { spec } => hyper::count(out, &spec),
        },
        Cmd::Ibp(c) => match c {
            IbpCmd::Reduce { target, table } => ibp::reduce(out, &table.into(), &target),
            IbpCmd::Masters { table } => ibp::masters(out, &table.into()),
            IbpCmd::Check { target, at, table } => {
                ibp::check(out, &table.into(), &target, &at.eps, &at.z)
            }
        },
    }
}

impl From<TableOpts> for ibp::TableConfig {
    fn from(t: TableOpts) -> Self {
        ibp::TableConfig {
            dots: t.seed_dots,
            nums: t.seed_nums,
            path: t.table,
            with_main_relation: t.with_main_relation,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    use super::*;

    #[test]
    fn command_definition() {
        Cli::command().debug_assert();
    }

    #[test]
    fn decimals_rejected() {
        assert!(rat_arg("0.3").is_err());
        assert_eq!(rat_arg("3/10").unwrap(), parse_rat("3/10").unwrap());
    }
}
