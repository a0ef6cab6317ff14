//! `coleman`: command-line access to the automorphism toolkit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use coleman_core::automorphisms::{automorphism_group, is_class_preserving, is_coleman, is_p_central, out_col};
use coleman_core::structure::{dade_construct, DEFAULT_PRIME_BOUND};
use coleman_core::verify::{check, run_catalog};
use coleman_core::{build_with, Caps, Error, GroupSpec};

#[derive(Parser)]
#[command(name = "coleman", version, about = "Coleman and class-preserving automorphisms of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group-level queries.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// List automorphisms, optionally filtered.
    Aut {
        spec: PathBuf,
        #[arg(long)]
        coleman: bool,
        #[arg(long)]
        class_preserving: bool,
        #[arg(long, value_name = "P")]
        p_central: Option<u64>,
    },
    /// The outer Coleman automorphism group.
    Outcol {
        spec: PathBuf,
        /// Spec of a group to compare `Out_col` against.
        #[arg(long, value_name = "TARGET")]
        identify: Option<PathBuf>,
    },
    /// Check one theorem on one group.
    Verify {
        theorem_id: String,
        spec: PathBuf,
        #[arg(long, value_name = "PARAMS")]
        params: Option<PathBuf>,
        /// Report timing as 0 so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Build a group whose `Out_col` is the given abelian group.
    Dade {
        /// Comma-separated cyclic orders.
        #[arg(long, value_delimiter = ',', required = true)]
        invariants: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
        prime_bound: u64,
    },
    /// The regression catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// Order, prime divisors, center, classes and normal subgroups.
    Show { spec: PathBuf },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Run the invariant suite and theorem checks over the catalog.
    Run {
        #[arg(long, default_value_t = 512)]
        max_order: usize,
        /// Print the whole run as one JSON document.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_timing: bool,
    },
}

enum Failure {
    Core(Error),
    Input { kind: &'static str, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn to_json(&self) -> Value {
        match self {
            Failure::Core(e) => json!({ "error": error_kind(e), "message": e.to_string() }),
            Failure::Input { kind, message } => json!({ "error": kind, "message": message }),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::OrderCapExceeded { .. } => "OrderCapExceeded",
        Error::InvalidPermutation(_) => "InvalidPermutation",
        Error::NotADivisor { .. } => "NotADivisor",
        Error::NotNormal => "NotNormal",
        Error::InvalidAction(_) => "InvalidAction",
        Error::InvalidSpec(_) => "InvalidSpec",
        Error::NotNilpotent => "NotNilpotent",
        Error::QuotientNotCyclicPrimePower => "QuotientNotCyclicPrimePower",
        Error::InvalidTwist(_) => "InvalidTwist",
        Error::NotAnAutomorphism(_) => "NotAnAutomorphism",
        Error::PrimeSearchExhausted { .. } => "PrimeSearchExhausted",
        Error::UnknownTheoremId(_) => "UnknownTheoremId",
        Error::InvalidParams(_) => "InvalidParams",
        Error::NotClosed(_) => "NotClosed",
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input {
        kind: "Io",
        message: format!("{}: {e}", path.display()),
    })?;
    serde_json::from_str(&text).map_err(|e| Failure::Input {
        kind: "InvalidJson",
        message: format!("{}: {e}", path.display()),
    })
}

fn read_spec(path: &Path) -> Result<GroupSpec, Failure> {
    serde_json::from_value(read_json(path)?).map_err(|e| Failure::Core(Error::InvalidSpec(format!("{}: {e}", path.display()))))
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let caps = Caps::from_env();
    match cli.command {
        Command::Group {
            action: GroupAction::Show { spec },
        } => {
            let g = build_with(&read_spec(&spec)?, &caps)?.into_group();
            print(&json!({
                "order": g.order(),
                "primes": g.primes(),
                "center_order": g.center().order(),
                "class_count": g.conjugacy_classes().len(),
                "normal_subgroup_count": g.normal_subgroups()?.len(),
            }));
        }
        Command::Aut {
            spec,
            coleman,
            class_preserving,
            p_central,
        } => {
            let g = build_with(&read_spec(&spec)?, &caps)?.into_group();
            if let Some(p) = p_central {
                if !g.primes().contains(&p) {
                    return Err(Error::NotADivisor { p, order: g.order() }.into());
                }
            }
            let mut matching = Vec::new();
            for a in automorphism_group(&g, &caps)? {
                let keep = (!coleman || is_coleman(&g, &a))
                    && (!class_preserving || is_class_preserving(&g, &a))
                    && match p_central {
                        Some(p) => is_p_central(&g, &a, p)?,
                        None => true,
                    };
                if keep {
                    matching.push(a.into_images());
                }
            }
            print(&json!({ "count": matching.len(), "automorphisms": matching }));
        }
        Command::Outcol { spec, identify } => {
            let g = build_with(&read_spec(&spec)?, &caps)?.into_group();
            let q = out_col(&g, &caps)?;
            let mut out = json!({ "order": q.order(), "invariants": q.invariants });
            if q.invariants.is_none() {
                out["table"] = json!(q.table());
            }
            if let Some(target) = identify {
                let t = build_with(&read_spec(&target)?, &caps)?.into_group();
                let iso = q.cosets.is_isomorphic(&t, &caps)?;
                out["identify"] = json!({ "target_order": t.order(), "isomorphic": iso.isomorphic });
            }
            print(&out);
        }
        Command::Verify {
            theorem_id,
            spec,
            params,
            no_timing,
        } => {
            let spec = read_spec(&spec)?;
            let params = params.map(|p| read_json(&p)).transpose()?;
            let mut report = check(&theorem_id, &spec, params.as_ref(), &caps)?;
            if no_timing {
                report = report.without_timing();
            }
            print(&serde_json::to_value(&report).expect("reports serialize"));
            return Ok(report.exit_code() as u8);
        }
        Command::Dade {
            invariants,
            prime_bound,
        } => {
            let spec = dade_construct(&invariants, prime_bound)?;
            print(&serde_json::to_value(&spec).expect("specs serialize"));
        }
        Command::Catalog {
            action: CatalogAction::Run {
                max_order,
                json,
                no_timing,
            },
        } => {
            let mut run = run_catalog(max_order, &caps)?;
            if no_timing {
                run = run.without_timing();
            }
            if json {
                print(&serde_json::to_value(&run).expect("runs serialize"));
            } else {
                print!("{}", run.summary_table());
                for entry in &run.entries {
                    println!("{}", serde_json::to_string(entry).expect("entries serialize"));
                }
            }
            return Ok(run.exit_code() as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(1)
        }
    }
}
