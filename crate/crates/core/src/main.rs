use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use conlat::io::{
    emit_context, emit_dot, emit_network, generators_csv, load_network, order_csv, parse_context,
    parse_morphism, successors_csv, ParseOptions,
};
use conlat::{
    direct_image, interior, inverse_image, participation_context, satisfaction_context,
    solution_set, Cap, ConceptLattice, DistributedRelation, Error, FormalContext, Result,
    SubLattice, TupleMode,
};

#[derive(Parser)]
#[command(
    name = "conlat",
    version,
    about = "Constraint networks and their concept lattices"
)]
struct Cli {
    /// Upper bound on the number of tuples any enumeration may produce.
    #[arg(long, global = true, default_value_t = conlat::DEFAULT_CAP)]
    cap: usize,

    /// Close every relation downward on load instead of rejecting it.
    #[arg(long, global = true)]
    complete_down: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a network document and report every violation.
    Validate { network: PathBuf },
    /// Print the full tuples satisfying every constraint.
    Solve { network: PathBuf },
    /// Replace every relation by the projection of the solution set.
    Interior {
        network: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the satisfaction context (tuples against constraints).
    Context {
        network: PathBuf,
        /// Use tuples of every arity, not only full ones.
        #[arg(long)]
        all_tuples: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the concept lattice of a network's satisfaction context or of a `.cxt` file.
    Lattice {
        input: PathBuf,
        /// Write the Hasse diagram as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write generators.csv, successors.csv and order.csv into this directory.
        #[arg(long)]
        tables: Option<PathBuf>,
    },
    /// List every scheme-compatible projective containment and whether it holds.
    Check { network: PathBuf },
    /// Transport a network along a domain morphism.
    Image {
        network: PathBuf,
        #[arg(long)]
        morphism: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Participation context for the principal ideal below a concept (1-based index).
    Participation {
        network: PathBuf,
        #[arg(long)]
        ideal: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    /// The network lives on the morphism's target; the result on its source.
    Direct,
    /// The network lives on the morphism's source; the result on its target.
    Inverse,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn network(path: &Path, opts: ParseOptions) -> Result<DistributedRelation> {
    load_network(&read(path)?, opts).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

fn context_of(path: &Path, opts: ParseOptions, cap: Cap) -> Result<FormalContext> {
    if path.extension().is_some_and(|e| e == "cxt") {
        parse_context(&read(path)?)
    } else {
        satisfaction_context(&network(path, opts)?, TupleMode::Full, cap)
    }
}

fn run(cli: Cli) -> Result<()> {
    let cap = Cap(cli.cap);
    let opts = ParseOptions {
        complete_down: cli.complete_down,
    };
    match cli.command {
        Command::Validate { network: path } => {
            let r = network(&path, opts)?;
            println!(
                "ok: {} sorts, {} constraints, {} tuples",
                r.domain().num_sorts(),
                r.signature().len(),
                r.total_tuples()
            );
        }
        Command::Solve { network: path } => {
            let r = network(&path, opts)?;
            let dom = r.domain();
            for t in solution_set(&r, cap)?.iter() {
                println!("{}", dom.render_values(&dom.full_arity(), t));
            }
        }
        Command::Interior {
            network: path,
            output,
        } => {
            let r = interior(&network(&path, opts)?, cap)?;
            write_or_print(output.as_deref(), &emit_network(&r))?;
        }
        Command::Context {
            network: path,
            all_tuples,
            output,
        } => {
            let mode = if all_tuples {
                TupleMode::All
            } else {
                TupleMode::Full
            };
            let ctx = satisfaction_context(&network(&path, opts)?, mode, cap)?;
            write_or_print(output.as_deref(), &emit_context(&ctx))?;
        }
        Command::Lattice { input, dot, tables } => {
            let lat = ConceptLattice::build(context_of(&input, opts, cap)?);
            if let Some(path) = dot {
                write_or_print(Some(&path), &emit_dot(&lat))?;
            }
            if let Some(dir) = tables {
                fs::create_dir_all(&dir)
                    .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
                write_or_print(Some(&dir.join("generators.csv")), &generators_csv(&lat))?;
                write_or_print(Some(&dir.join("successors.csv")), &successors_csv(&lat))?;
                write_or_print(Some(&dir.join("order.csv")), &order_csv(&lat))?;
            }
            println!("{} concepts, {} covers", lat.len(), lat.cover_count());
        }
        Command::Check { network: path } => {
            let r = network(&path, opts)?;
            let sig = r.signature();
            for c in r.containment_candidates() {
                println!(
                    "{} <= {}: {}",
                    sig.name(c.lower),
                    sig.name(c.upper),
                    c.holds
                );
            }
        }
        Command::Image {
            network: path,
            morphism,
            direction,
            output,
        } => {
            let m = parse_morphism(&read(&morphism)?)?;
            let report = m.validate(cap);
            if !report.is_empty() {
                return Err(Error::Invalid(
                    report.iter().map(ToString::to_string).collect(),
                ));
            }
            let r = network(&path, opts)?;
            let image = match direction {
                Direction::Direct => direct_image(&m, &r, cap)?,
                Direction::Inverse => inverse_image(&m, &r, cap)?,
            };
            write_or_print(output.as_deref(), &emit_network(&image))?;
        }
        Command::Participation {
            network: path,
            ideal,
            output,
        } => {
            let ctx = satisfaction_context(&network(&path, opts)?, TupleMode::Full, cap)?;
            let lat = ConceptLattice::build(ctx.clone());
            if ideal == 0 || ideal > lat.len() {
                return Err(Error::input(format!(
                    "concept index {ideal} is out of range 1..={}",
                    lat.len()
                )));
            }
            let sub = SubLattice::principal_ideal(&lat, ideal - 1)?;
            let cp = participation_context(&ctx, &lat, &sub)?;
            write_or_print(output.as_deref(), &emit_context(&cp))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Invalid(_) => 1,
                Error::Capacity { .. } => 3,
                Error::UnknownName { .. }
                | Error::Input(_)
                | Error::Parse { .. }
                | Error::Io(_) => 2,
            })
        }
    }
}
