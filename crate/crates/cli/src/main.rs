//! `euctower`: run the verification suite from the command line.
//!
//! Every command prints one JSON document to stdout and exits 0 exactly when
//! every assertion in the invoked check passed.  Seeds are always explicit
//! arguments, so identical invocations produce byte-identical output.

mod json;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use euctower_core::euclid_partitions::{
    claimed_partition, levi_blocks, orbit_dim, richardson_partition, slow_euclid_pairs,
    DivisionChain,
};
use euctower_core::finite_model::{
    prop1_orbit_identity, random_automorphic, unfolding_battery, BaseSpace, EnumLimits,
    FiniteContext, MultChar,
};
use euctower_core::orbit_lemma::{scan_verify, verify_lemma};
use euctower_core::tower::build_tower;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "euctower", version, about = "Exact verification of the Euclid descent tower")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Also write the JSON document to this path.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Pretty-print the JSON document.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Args)]
struct PairArgs {
    n1: usize,
    n2: usize,
}

#[derive(Args)]
struct FiniteArgs {
    n1: usize,
    n2: usize,
    /// Field size (a small prime).
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Seed list: `0..9` (inclusive range), `1,4,7`, or a single seed.
    #[arg(long, default_value = "0..9")]
    seeds: String,
    /// Raise the enumeration/table size limits.
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// The Euclidean division chain of a coprime pair.
    Chain(PairArgs),
    /// The partition data derived from the chain: both closed-form orbit
    /// computations and the dimension bookkeeping.
    Partition(PairArgs),
    /// The verified subgroup chain and its character.
    Tower(PairArgs),
    /// The full per-pair orbit verification.
    VerifyLemma(PairArgs),
    /// Orbit verification for every coprime pair with `n1 + n2 <= max_n`.
    Scan {
        /// The pair-sum bound, as a positional argument.
        bound: Option<usize>,
        /// The pair-sum bound, as a flag.
        #[arg(long = "max-n", conflicts_with = "bound")]
        max_n: Option<usize>,
    },
    /// The open-orbit expansion identity in the finite model.
    FiniteProp1(FiniteArgs),
    /// The unfolding equality in the finite model.
    FiniteUnfold {
        #[command(flatten)]
        args: FiniteArgs,
        /// Multiplicative character index: 0 trivial, 1 quadratic (odd q).
        #[arg(long, default_value_t = 0)]
        chi: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((value, pass)) => {
            let text = json::render(&value, cli.pretty);
            print!("{text}");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::FAILURE;
                }
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: &Command) -> Result<(Value, bool), String> {
    match command {
        Command::Chain(p) => {
            let chain = DivisionChain::new(p.n1, p.n2).map_err(|e| e.to_string())?;
            let mut v = json::chain_value(&chain);
            v["command"] = json!("chain");
            Ok((v, true))
        }
        Command::Partition(p) => {
            let chain = DivisionChain::new(p.n1, p.n2).map_err(|e| e.to_string())?;
            let claimed = claimed_partition(&chain);
            let levi = levi_blocks(&chain);
            let richardson = richardson_partition(&levi);
            let slow = slow_euclid_pairs(&chain);
            let dim_df: usize = slow.iter().map(|&(a, b)| a * b).sum();
            let v = json!({
                "command": "partition",
                "chain": json::chain_value(&chain),
                "claimed": json::partition_value(&claimed),
                "levi_blocks": levi.blocks(),
                "richardson": json::partition_value(&richardson),
                "slow_pairs": slow.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
                "orbit_dim": orbit_dim(&claimed),
                "dim_df": dim_df,
            });
            Ok((v, true))
        }
        Command::Tower(p) => {
            let tower = build_tower(p.n1, p.n2).map_err(|e| e.to_string())?;
            let mut v = json::tower_value(&tower);
            v["command"] = json!("tower");
            Ok((v, true))
        }
        Command::VerifyLemma(p) => {
            // invalid pairs are a usage error, not a failed report
            DivisionChain::new(p.n1, p.n2).map_err(|e| e.to_string())?;
            let report = verify_lemma(p.n1, p.n2);
            let pass = report.verdict;
            let v = json!({
                "command": "verify-lemma",
                "report": json::lemma_report_value(&report),
            });
            Ok((v, pass))
        }
        Command::Scan { bound, max_n } => {
            let max_n = bound
                .or(*max_n)
                .ok_or_else(|| String::from("scan needs a bound (positional or --max-n)"))?;
            if max_n < 3 {
                return Err(format!("scan bound {max_n} is below the smallest pair sum 3"));
            }
            let reports = scan_verify(max_n);
            let pass = reports.iter().all(|r| r.verdict);
            let v = json!({
                "command": "scan",
                "max_n": max_n,
                "pairs": reports.len(),
                "pass": pass,
                "reports": reports.iter().map(json::lemma_report_value).collect::<Vec<_>>(),
            });
            Ok((v, pass))
        }
        Command::FiniteProp1(args) => {
            let seeds = parse_seeds(&args.seeds)?;
            let ctx = build_context(args)?;
            let sample_points = if ctx.p1.len() <= 1024 { None } else { Some(40) };
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            let mut pass = true;
            for &seed in &seeds {
                let phi = random_automorphic(&ctx, BaseSpace::Parabolic, seed);
                let out = prop1_orbit_identity(&ctx, &phi, seed, sample_points)
                    .map_err(|e| e.to_string())?;
                pass &= out.pass;
                lhs.push(out.lhs_identity.render());
                rhs.push(out.rhs_identity.render());
            }
            let v = json!({
                "check": "finite-prop1",
                "pair": [args.n1, args.n2],
                "q": args.q,
                "chi": Value::Null,
                "seeds": seeds,
                "lhs": lhs,
                "rhs": rhs,
                "ratio": Value::Null,
                "pass": pass,
            });
            Ok((v, pass))
        }
        Command::FiniteUnfold { args, chi } => {
            let seeds = parse_seeds(&args.seeds)?;
            let chi = MultChar::from_index(*chi, args.q).map_err(|e| e.to_string())?;
            let ctx = build_context(args)?;
            let battery = unfolding_battery(&ctx, chi, &seeds).map_err(|e| e.to_string())?;
            let pass = battery.constant;
            let v = json!({
                "check": "finite-unfold",
                "pair": [args.n1, args.n2],
                "q": args.q,
                "chi": chi_index(chi),
                "seeds": seeds,
                "lhs": battery.points.iter().map(|(_, l, _)| l.render()).collect::<Vec<_>>(),
                "rhs": battery.points.iter().map(|(_, _, r)| r.render()).collect::<Vec<_>>(),
                "ratio": battery.ratio.as_ref().map(|r| r.render()),
                "pass": pass,
            });
            Ok((v, pass))
        }
    }
}

fn chi_index(chi: MultChar) -> usize {
    match chi {
        MultChar::Trivial => 0,
        MultChar::Quadratic => 1,
    }
}

fn build_context(args: &FiniteArgs) -> Result<FiniteContext, String> {
    let mut limits = EnumLimits::default();
    if let Some(l) = args.limit {
        limits.max_enumeration = l;
        limits.max_table = l;
    }
    FiniteContext::new(args.n1, args.n2, args.q, &limits).map_err(|e| e.to_string())
}

/// `a..b` is the inclusive range `a, a+1, ..., b`; otherwise a comma list.
fn parse_seeds(spec: &str) -> Result<Vec<u64>, String> {
    let bad = |s: &str| format!("cannot parse seed spec '{s}'");
    if let Some((a, b)) = spec.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad(spec))?;
        let b: u64 = b.trim().parse().map_err(|_| bad(spec))?;
        if a > b {
            return Err(bad(spec));
        }
        return Ok((a..=b).collect());
    }
    spec.split(',')
        .map(|s| s.trim().parse().map_err(|_| bad(spec)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::parse_seeds;

    #[test]
    fn seed_specs() {
        assert_eq!(parse_seeds("0..3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_seeds("7").unwrap(), vec![7]);
        assert_eq!(parse_seeds("1,4,9").unwrap(), vec![1, 4, 9]);
        assert!(parse_seeds("5..1").is_err());
        assert!(parse_seeds("x").is_err());
    }
}
