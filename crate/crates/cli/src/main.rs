mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gefkit::algorithms::{
    egal_sequential, egal_sequential_traced, ternary_flow, ternary_flow_traced, TraceEvent,
};
use gefkit::generate::{generate_random_instance, InstanceKind, ValueRange};
use gefkit::hardness::{
    reduce_to_isgef1_chores, reduce_to_isgef1_goods, solve_3partition_bruteforce,
};
use gefkit::io::{
    allocation_to_json, parse_allocation_for, parse_three_partition, report_to_json, InstanceFile,
};
use gefkit::welfare::{leximin_optimal_bruteforce, nash_optimal_bruteforce, utilities};
use gefkit::{
    check, taxonomy_report, Allocation, Error, FairnessConcept, GroupOptions, Instance, SearchBound,
};

#[derive(Parser)]
#[command(
    name = "gefkit",
    version,
    about = "Check and compute group-fair allocations of goods and chores"
)]
struct Cli {
    /// Largest number of candidates an exhaustive search may enumerate
    /// (default: $GEFKIT_BOUND, else 2^20)
    #[arg(long, global = true)]
    bound: Option<u128>,

    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one fairness or efficiency notion
    Check {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        allocation: PathBuf,
        /// ef, ef1, efx, prop, gef, gef1, gefx, s-gef, s-gef1, s-gefx, gp, gp1, gpx, po
        #[arg(long)]
        concept: FairnessConcept,
        /// Disable pruning in the group search
        #[arg(long)]
        exhaustive: bool,
    },
    /// Compute an allocation
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        /// Write the allocation here instead of printing it
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print each algorithm step to stderr as a JSON line
        #[arg(long)]
        trace: bool,
    },
    /// Write a seeded random instance
    Generate {
        #[arg(long)]
        kind: InstanceKind,
        #[arg(long, default_value_t = 3)]
        agents: usize,
        #[arg(long, default_value_t = 5)]
        items: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// low:high or low:high/max-denominator
        #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
        range: ValueRange,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a GEF1 instance from a 3-Partition input
    Reduce {
        #[arg(long, value_enum)]
        variant: Variant,
        /// JSON list of rationals, or {"values": [...]}
        #[arg(long)]
        input: PathBuf,
        /// Directory receiving instance.json, allocation.json and label.json
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Evaluate every notion and check the implications between them
    Taxonomy {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        allocation: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    EgalSequential,
    TernaryFlow,
    LeximinBf,
    NashBf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Goods,
    Chores,
}

/// Process outcome: success, a failed property, or an error.
enum Outcome {
    Holds,
    Fails,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(err) => {
            eprintln!("gefkit: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    if err.is_bound_exceeded() {
        3
    } else {
        2
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let bound = match cli.bound {
        Some(0) => return Err(Error::InvalidArgument("--bound must be positive".into())),
        Some(b) => SearchBound(b),
        None => SearchBound::from_env()?,
    };
    match &cli.command {
        Command::Check {
            instance,
            allocation,
            concept,
            exhaustive,
        } => {
            let (inst, alloc) = load_pair(instance, allocation)?;
            let options = GroupOptions {
                bound,
                prune: !exhaustive,
            };
            let report = check(&inst, &alloc, *concept, options)?;
            if cli.pretty {
                print!("{}", render::report(&report));
            } else {
                print!("{}", report_to_json(&report));
            }
            Ok(if report.holds {
                Outcome::Holds
            } else {
                Outcome::Fails
            })
        }
        Command::Solve {
            instance,
            algorithm,
            output,
            trace,
        } => {
            let inst = load_instance(instance)?;
            let alloc = solve(&inst, *algorithm, bound, *trace)?;
            let values = utilities(&inst, &alloc)?;
            let values: Vec<String> = values.values().iter().map(ToString::to_string).collect();
            match output {
                Some(path) => {
                    write(path, &allocation_to_json(&alloc))?;
                    if cli.pretty {
                        println!("utilities: {}", values.join(", "));
                    } else {
                        println!("{}", json!({ "utilities": values }));
                    }
                }
                None if cli.pretty => {
                    print!("{}", render::allocation(&alloc));
                    println!("utilities: {}", values.join(", "));
                }
                None => println!("{}", json!({ "allocation": alloc, "utilities": values })),
            }
            Ok(Outcome::Holds)
        }
        Command::Generate {
            kind,
            agents,
            items,
            seed,
            range,
            output,
        } => {
            let inst = generate_random_instance(*kind, *agents, *items, *seed, *range)?;
            let mut file = InstanceFile::new(inst);
            file.meta = Some(json!({
                "generator": "random",
                "kind": kind.name(),
                "seed": seed,
                "range": format!("{}:{}/{}", range.low, range.high, range.max_denominator),
            }));
            let text = file.to_json();
            match output {
                Some(path) => write(path, &text)?,
                None => print!("{text}"),
            }
            Ok(Outcome::Holds)
        }
        Command::Reduce {
            variant,
            input,
            out_dir,
        } => {
            let x = parse_three_partition(&read(input)?)?;
            let out = match variant {
                Variant::Goods => reduce_to_isgef1_goods(&x)?,
                Variant::Chores => reduce_to_isgef1_chores(&x)?,
            };
            let yes = solve_3partition_bruteforce(&x)?.is_some();
            fs::create_dir_all(out_dir).map_err(|e| {
                Error::InvalidArgument(format!("cannot create {}: {e}", out_dir.display()))
            })?;
            let file = InstanceFile {
                instance: out.instance.clone(),
                meta: Some(out.meta()),
            };
            write(&out_dir.join("instance.json"), &file.to_json())?;
            write(
                &out_dir.join("allocation.json"),
                &allocation_to_json(&out.allocation),
            )?;
            let label = json!({ "answer": if yes { "yes" } else { "no" }, "oracle": "bruteforce-3partition" });
            write(&out_dir.join("label.json"), &format!("{label:#}\n"))?;
            if cli.pretty {
                println!(
                    "{} agents, {} items; 3-Partition answer: {}",
                    out.instance.agents(),
                    out.instance.items(),
                    if yes { "yes" } else { "no" }
                );
            } else {
                println!("{label}");
            }
            Ok(Outcome::Holds)
        }
        Command::Taxonomy {
            instance,
            allocation,
        } => {
            let (inst, alloc) = load_pair(instance, allocation)?;
            match taxonomy_report(&inst, &alloc, GroupOptions::with_bound(bound)) {
                Ok(map) => {
                    if cli.pretty {
                        for (concept, holds) in &map {
                            println!(
                                "{:<7} {}",
                                concept.name(),
                                if *holds { "holds" } else { "fails" }
                            );
                        }
                    } else {
                        let obj: serde_json::Map<String, serde_json::Value> = map
                            .iter()
                            .map(|(c, h)| (c.name().to_string(), json!(h)))
                            .collect();
                        println!("{}", serde_json::Value::Object(obj));
                    }
                    Ok(Outcome::Holds)
                }
                Err(err @ Error::TaxonomyViolation { .. }) => {
                    eprintln!("gefkit: {err}");
                    Ok(Outcome::Fails)
                }
                Err(err) => Err(err),
            }
        }
    }
}

fn solve(
    inst: &Instance,
    algorithm: Algorithm,
    bound: SearchBound,
    trace: bool,
) -> Result<Allocation, Error> {
    let log = |event: TraceEvent| eprintln!("{}", render::trace_event(&event));
    match (algorithm, trace) {
        (Algorithm::EgalSequential, false) => egal_sequential(inst),
        (Algorithm::EgalSequential, true) => egal_sequential_traced(inst, log),
        (Algorithm::TernaryFlow, false) => ternary_flow(inst),
        (Algorithm::TernaryFlow, true) => ternary_flow_traced(inst, log),
        (Algorithm::LeximinBf, _) => leximin_optimal_bruteforce(inst, bound),
        (Algorithm::NashBf, _) => nash_optimal_bruteforce(inst, bound),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Error> {
    Ok(InstanceFile::parse(&read(path)?)?.instance)
}

fn load_pair(instance: &Path, allocation: &Path) -> Result<(Instance, Allocation), Error> {
    let inst = load_instance(instance)?;
    let alloc = parse_allocation_for(&inst, &read(allocation)?)?;
    Ok((inst, alloc))
}
