use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use skewdil::cli::{list_instances, parse_session, run, Format, Session, DEFAULT_SEED, DEFAULT_TRIALS};

#[derive(Parser)]
#[command(name = "skewdil", version, about = "Fractional skew monoid rings and their dilations")]
struct Cli {
    /// Session file to run.
    #[arg(long)]
    session: Option<PathBuf>,
    /// Overrides the session's `seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the session's `trials`.
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, value_enum, global = true)]
    format: Option<OutFormat>,
    /// Print the builtin monoids, rings and actions, then exit.
    #[arg(long)]
    list_instances: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel and cokernel of multiplication by 1 − n on Z[1/n].
    Ktheory {
        #[arg(long)]
        n: u64,
    },
    /// Run the dilation pipeline on one instance.
    Dilate {
        /// e.g. `nat` or `nat 2`
        #[arg(long, default_value = "nat")]
        monoid: String,
        /// e.g. `leavitt 2`, `uhf 2`
        #[arg(long)]
        ring: String,
        /// one endomorphism name, or one per generator separated by spaces
        #[arg(long)]
        action: String,
        /// pass to the kernel quotient first
        #[arg(long)]
        quotient: bool,
    },
}

fn load(cli: &Cli) -> Result<Session, String> {
    let text = match (&cli.command, &cli.session) {
        (Some(_), Some(_)) => return Err("--session cannot be combined with a subcommand".into()),
        (Some(Command::Ktheory { n }), None) => format!("ktheory {n}\n"),
        (Some(Command::Dilate { monoid, ring, action, quotient }), None) => {
            let q = if *quotient { "quotient\n" } else { "" };
            format!("monoid {monoid}\nring {ring}\naction {action}\n{q}dilate\n")
        }
        (None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?
        }
        (None, None) => return Err("nothing to do: pass --session <file>, a subcommand or --list-instances".into()),
    };
    parse_session(&text).map_err(|e| match &cli.session {
        Some(p) => format!("{}: {e}", p.display()),
        None => e.to_string(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_instances {
        print!("{}", list_instances());
        return ExitCode::SUCCESS;
    }
    let session = match load(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let seed = cli.seed.or(session.seed()).unwrap_or(DEFAULT_SEED);
    let trials = cli.trials.or(session.trials()).unwrap_or(DEFAULT_TRIALS);
    if trials == 0 {
        eprintln!("error: --trials must be positive");
        return ExitCode::from(2);
    }
    let format = match cli.format {
        Some(OutFormat::Text) => Format::Text,
        Some(OutFormat::Structured) => Format::Structured,
        None => session.format().unwrap_or(Format::Text),
    };
    let report = run(&session, seed, trials);
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Structured => print!("{}", report.render_structured()),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
