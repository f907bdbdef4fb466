use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ringlab::category::{Property, DEFAULT_BUDGET};
use ringlab::ScalarField;

mod commands;

use commands::{Exit, Failure, Outcome};

/// Exact workbench for nonunital rings, their modules, separable
/// extensions and separable functors between finite categories.
#[derive(Debug, Parser)]
#[command(name = "ringlab", version)]
struct Cli {
    /// Reinterpret every ring over this field: `Q`, or `F<p>` for a prime p.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<ScalarField>,
    /// Candidate evaluations allowed per functor search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Unitality predicates for rings and left modules.
    Check {
        file: PathBuf,
        /// Ring or module label; repeatable. Defaults to every ring and left module.
        #[arg(long = "target")]
        targets: Vec<String>,
        /// Predicate that must hold for every target; repeatable.
        #[arg(long = "assert", value_parser = ["unital", "s-unital", "unitary", "firm", "locally-unital"])]
        asserts: Vec<String>,
    },
    /// Solve for or verify a separability certificate.
    Separability {
        #[command(subcommand)]
        action: SeparabilityAction,
    },
    /// Hypothesis checklist, certificate and semisimplicity verdict for B[G].
    Maschke {
        file: PathBuf,
        #[arg(long)]
        base: String,
        #[arg(long)]
        group: String,
        /// Write the certificate here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Jacobson radical of a ring.
    Radical {
        file: PathBuf,
        #[arg(long)]
        ring: String,
    },
    /// Balanced tensor product of a right and a left module.
    Tensor {
        file: PathBuf,
        #[arg(long)]
        right: String,
        #[arg(long)]
        left: String,
    },
    /// Finite categories and functors.
    Category {
        #[command(subcommand)]
        action: CategoryAction,
    },
}

#[derive(Debug, Subcommand)]
enum SeparabilityAction {
    Solve {
        file: PathBuf,
        /// Morphism label; alternatively give --ring and --base.
        #[arg(long, conflicts_with_all = ["ring", "base"])]
        morphism: Option<String>,
        #[arg(long, requires = "base")]
        ring: Option<String>,
        #[arg(long, requires = "ring")]
        base: Option<String>,
        /// Write the certificate here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    Verify {
        file: PathBuf,
        certificate: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum CategoryAction {
    /// Subobject and quotient tables and object properties.
    Tables {
        file: PathBuf,
        #[arg(long)]
        category: Option<String>,
    },
    /// Search for a separability structure on a functor.
    Search {
        file: PathBuf,
        #[arg(long)]
        functor: String,
    },
    /// Check that a separable functor reflects properties.
    Reflect {
        file: PathBuf,
        #[arg(long)]
        functor: String,
        /// Repeatable; defaults to all.
        #[arg(long = "property")]
        properties: Vec<Property>,
    },
    /// Separability of F, G and G o F.
    Compose {
        file: PathBuf,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
}

fn parse_field(s: &str) -> Result<ScalarField, String> {
    if s.eq_ignore_ascii_case("q") {
        return Ok(ScalarField::Rationals);
    }
    let digits = s
        .strip_prefix("F_")
        .or_else(|| s.strip_prefix('F'))
        .ok_or_else(|| format!("expected `Q` or `F<p>`, got `{s}`"))?;
    let p: u64 = digits
        .parse()
        .map_err(|_| format!("bad modulus in `{s}`"))?;
    ScalarField::prime(p).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let field = cli.field;
    match &cli.command {
        Command::Check {
            file,
            targets,
            asserts,
        } => commands::check(file, field, targets, asserts),
        Command::Separability { action } => match action {
            SeparabilityAction::Solve {
                file,
                morphism,
                ring,
                base,
                output,
            } => {
                let pick = match (morphism, ring, base) {
                    (Some(m), _, _) => commands::MorphismPick::Label(m.clone()),
                    (None, Some(r), Some(b)) => {
                        commands::MorphismPick::Between(r.clone(), b.clone())
                    }
                    _ => return Err(Failure::input("give --morphism or both --ring and --base")),
                };
                commands::separability_solve(file, field, &pick, output.as_deref())
            }
            SeparabilityAction::Verify { file, certificate } => {
                commands::separability_verify(file, field, certificate)
            }
        },
        Command::Maschke {
            file,
            base,
            group,
            certificate,
        } => commands::maschke(file, field, base, group, certificate.as_deref()),
        Command::Radical { file, ring } => commands::radical(file, field, ring),
        Command::Tensor { file, right, left } => commands::tensor(file, field, right, left),
        Command::Category { action } => match action {
            CategoryAction::Tables { file, category } => {
                commands::category_tables(file, category.as_deref())
            }
            CategoryAction::Search { file, functor } => {
                commands::category_search(file, functor, cli.budget)
            }
            CategoryAction::Reflect {
                file,
                functor,
                properties,
            } => commands::category_reflect(file, functor, properties, cli.budget),
            CategoryAction::Compose {
                file,
                first,
                second,
            } => commands::category_compose(file, first, second, cli.budget),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::Input as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("report serializes")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.exit as u8)
        }
        Err(f) => {
            if cli.json {
                let v = serde_json::json!({ "error": f.message, "exit": f.exit as u8 });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("error serializes")
                );
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.exit as u8)
        }
    }
}
