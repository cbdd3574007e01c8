use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use setshare::harness::{exhaustive_suite, find_law, run_all, run_law, LawReport};
use setshare::EqualityMode;
use setshare_cli::run::EXIT_PARSE;
use setshare_cli::{run, Command, Format, Options};

#[derive(Parser)]
#[command(name = "setshare", version, about = "Set-sharing analysis of unification problems")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    /// Run the full law catalogue and print a pass/fail table.
    #[arg(long)]
    laws: bool,

    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve the equations and print the unifier.
    Unify(ProblemArgs),
    /// Print the variable-idempotent form of the substitution and its classes.
    Vtransform(ProblemArgs),
    /// Print the sharing abstraction of the substitution.
    Abstract(ProblemArgs),
    /// Abstractly unify the free description of the universe with the bindings.
    Aunify(ProblemArgs),
    /// Run the law catalogue.
    Laws(LawArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Problem file; standard input when absent or `-`.
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Comma-separated variables, smallest first.
    #[arg(long, value_delimiter = ',')]
    universe: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args, Default)]
struct LawArgs {
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Cases per law; each law's own default when absent.
    #[arg(long)]
    cases: Option<usize>,
    /// Run only the named laws.
    #[arg(long = "law")]
    only: Vec<String>,
    /// Skip the exhaustive three-variable suite.
    #[arg(long)]
    no_exhaustive: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Herbrand,
    Rational,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Some(Cmd::Unify(a)) => (Command::Unify, a),
        Some(Cmd::Vtransform(a)) => (Command::Vtransform, a),
        Some(Cmd::Abstract(a)) => (Command::Abstract, a),
        Some(Cmd::Aunify(a)) => (Command::Aunify, a),
        Some(Cmd::Laws(a)) => return laws(&a),
        None if cli.laws => return laws(&LawArgs { seed: 2024, ..LawArgs::default() }),
        None => {
            eprintln!("error: a command is required; see --help");
            return ExitCode::from(EXIT_PARSE as u8);
        }
    };
    let input = match read_input(args.file.as_deref()) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_PARSE as u8);
        }
    };
    let opts = Options {
        mode: args.mode.map(|m| match m {
            ModeArg::Herbrand => EqualityMode::Herbrand,
            ModeArg::Rational => EqualityMode::RationalTrees,
        }),
        universe: args.universe,
        format: if args.format == FormatArg::Json { Format::Json } else { Format::Text },
    };
    match run(command, &input, &opts) {
        Ok(out) => {
            println!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("parse error: {e}");
            ExitCode::from(EXIT_PARSE as u8)
        }
    }
}

fn read_input(path: Option<&std::path::Path>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn laws(args: &LawArgs) -> ExitCode {
    let reports: Vec<LawReport> = if args.only.is_empty() {
        run_all(args.seed, args.cases)
    } else {
        let mut out = Vec::new();
        for name in &args.only {
            let Some(law) = find_law(name) else {
                eprintln!("error: no law named `{name}`");
                return ExitCode::from(EXIT_PARSE as u8);
            };
            out.push(run_law(&law, args.seed, args.cases.unwrap_or(law.default_cases)));
        }
        out
    };
    let mut ok = true;
    for r in &reports {
        println!("{r}");
        ok &= r.passed();
    }
    if !args.no_exhaustive && args.only.is_empty() {
        for r in exhaustive_suite() {
            println!("{r}");
            ok &= r.passed();
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
