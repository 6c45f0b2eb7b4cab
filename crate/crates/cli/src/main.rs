use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use liechains::catalog::{CatalogSpec, FAMILIES};
use liechains::claims::{check_chain, Claim, StepStatus};
use liechains::io::AlgebraFile;
use liechains::lattice::{LatticeBudget, SubalgebraLattice};
use liechains::report::{InvariantReport, Method};
use liechains::verify::{self, VerifyConfig};
use liechains::FieldSpec;

const BUDGET_ENV: &str = "LIECHAINS_BUDGET";

#[derive(Parser)]
#[command(name = "liechains", version, about = "Chain-length invariants of small Lie algebras")]
struct Cli {
    /// Lattice budget, `N` or `subspaces=N,nodes=M,seconds=S`; overrides LIECHAINS_BUDGET.
    #[arg(long, global = true)]
    budget: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Structural,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Table,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    Maximal,
    Chief,
    Modular,
    Quasiideal,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra file and check the Jacobi identity.
    Validate { file: PathBuf },
    /// Compute l, minmax, modl and qil.
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "table")]
        out: OutFormat,
    },
    /// Enumerate the subalgebra lattice over GF(p).
    Lattice {
        file: PathBuf,
        /// Write Graphviz output to this path (`-` for stdout).
        #[arg(long)]
        emit_dot: Option<PathBuf>,
        /// Node flags to mark in the DOT output.
        #[arg(long, value_delimiter = ',', default_value = "ideal")]
        flags: Vec<String>,
    },
    /// Check a declared chain step by step.
    ChainCheck {
        file: PathBuf,
        #[arg(long)]
        chain: String,
        #[arg(long, value_enum)]
        claim: ClaimArg,
    },
    /// List or emit catalog algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run verification suites.
    Verify {
        /// Suite name; repeat for several, omit for all.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random solvable algebras.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        out: OutFormat,
        /// List the suites and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Emit {
        /// Family expression, e.g. `lm_gamma(2)` or `direct_power(sl2,2)`.
        family: String,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Output path; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn budget(cli_value: Option<&str>) -> Result<LatticeBudget> {
    let text = match cli_value {
        Some(t) => Some(t.to_string()),
        None => std::env::var(BUDGET_ENV).ok().filter(|s| !s.trim().is_empty()),
    };
    match text {
        Some(t) => LatticeBudget::parse(&t).with_context(|| format!("bad budget `{t}`")),
        None => Ok(LatticeBudget::default()),
    }
}

fn load(path: &Path) -> Result<AlgebraFile> {
    AlgebraFile::read(path).with_context(|| format!("reading {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        None => print!("{text}"),
        Some(p) if p == Path::new("-") => print!("{text}"),
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let budget = budget(cli.budget.as_deref())?;
    match cli.command {
        Command::Validate { file } => {
            let f = load(&file)?;
            println!(
                "ok: dim {} over {}, {} subspaces, {} chains",
                f.algebra.dim(),
                f.algebra.field(),
                f.subspaces.len(),
                f.chains.len()
            );
        }
        Command::Invariants { file, method, out } => {
            let f = load(&file)?;
            let method = match method {
                MethodArg::Brute => Method::Brute,
                MethodArg::Structural => Method::Structural,
                MethodArg::Auto => Method::Auto,
            };
            let r = InvariantReport::compute(&f.algebra, method, &budget)?;
            match out {
                OutFormat::Table => print!("{}", r.to_table()),
                OutFormat::Machine => print!("{}", r.to_json()),
            }
        }
        Command::Lattice { file, emit_dot, flags } => {
            let f = load(&file)?;
            let lat = SubalgebraLattice::enumerate(&f.algebra, &budget)?;
            let ideals = lat.ideal_flags().iter().filter(|&&b| b).count();
            let maximal = lat.maximal_subalgebras().len();
            let summary = format!(
                "nodes {}\nideals {}\nmaximal subalgebras {}\nsubspaces scanned {}\nl {}\nminmax {}\nmodl {}\nqil {}\nfrattini dim {}\n",
                lat.len(),
                ideals,
                maximal,
                lat.subspaces_scanned(),
                lat.ell(),
                lat.minmax().length(),
                lat.modl().length(),
                lat.qil().length(),
                lat.frattini().dim()
            );
            let flags: Vec<&str> = flags.iter().map(String::as_str).collect();
            for fl in &flags {
                if !["ideal", "modular", "quasiideal"].contains(fl) {
                    bail!("unknown flag `{fl}` (expected ideal, modular, quasiideal)");
                }
            }
            match emit_dot.as_deref() {
                Some(p) if p == Path::new("-") => print!("{}", lat.to_dot(&flags)),
                Some(p) => {
                    write_out(Some(p), &lat.to_dot(&flags))?;
                    print!("{summary}");
                }
                None => print!("{summary}"),
            }
        }
        Command::ChainCheck { file, chain, claim } => {
            let f = load(&file)?;
            let members = f.chain(&chain)?;
            let claim = match claim {
                ClaimArg::Maximal => Claim::Maximal,
                ClaimArg::Chief => Claim::Chief,
                ClaimArg::Modular => Claim::Modular,
                ClaimArg::Quasiideal => Claim::Quasiideal,
            };
            let v = check_chain(&f.algebra, &members, claim, &budget)?;
            let names = &f.chains[&chain];
            for s in &v.steps {
                let status = match s.status {
                    StepStatus::Holds => "holds",
                    StepStatus::Fails => "FAILS",
                    StepStatus::Undecided => "undecided",
                };
                println!(
                    "step {}: {} < {} (dim {} < {}): {status} [{}]",
                    s.step,
                    names[s.step - 1],
                    names[s.step],
                    s.dims.0,
                    s.dims.1,
                    s.certificate
                );
            }
            if v.failed() {
                println!("chain `{chain}` fails at step {}", v.first_failure().unwrap_or(0));
                return Ok(ExitCode::from(1));
            }
            println!("chain `{chain}`: {}", if v.holds() { "pass" } else { "undecided steps remain" });
        }
        Command::Catalog { action: CatalogAction::List } => {
            for fam in FAMILIES {
                println!("{:<20} ({})  {}", fam.name, fam.params, fam.constraints);
            }
        }
        Command::Catalog {
            action: CatalogAction::Emit { family, field, output },
        } => {
            let field: FieldSpec = field.parse()?;
            let alg = CatalogSpec::new(family.parse()?, field).make()?;
            write_out(output.as_deref(), &AlgebraFile::new(alg).to_json_string())?;
        }
        Command::Verify { suite, seed, random, out, list } => {
            if list {
                for s in verify::SUITES {
                    println!("{:<20} {}", s.name, s.statement);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let mut cfg = VerifyConfig { budget, ..VerifyConfig::default() };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(n) = random {
                cfg.random_count = n;
            }
            let names: Vec<&str> = suite.iter().map(String::as_str).collect();
            let r = verify::run(&names, &cfg)?;
            match out {
                OutFormat::Table => print!("{}", r.to_table()),
                OutFormat::Machine => print!("{}", r.to_json()),
            }
            if r.failed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
