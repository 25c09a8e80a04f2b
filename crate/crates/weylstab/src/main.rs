use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use weylstab::cache::{cache_key, workspace_dir, Cache, Lookup};
use weylstab::problem::{Options, ProblemFile, Relation};
use weylstab::run::error_outcome;
use weylstab::{execute, CliError, Command, Invocation, Outcome};

#[derive(Parser)]
#[command(name = "weylstab", version, about = "Characteristic varieties and stabilisation of deformed Weyl algebra modules")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of expressions, optionally rebased to another level
    Nf(Common),
    /// Gröbner basis of the slice at a level
    Gb(Common),
    /// Characteristic ideal at a level
    CharIdeal(Common),
    /// Hilbert polynomial of the given ideal or of the characteristic ideal
    Hilbert(Common),
    /// Dimension of the characteristic variety
    Dim(Common),
    /// Multiplicity of the characteristic variety
    Mult(Common),
    /// Holonomicity at a level
    Holonomic(Common),
    /// Characteristic data over a window of levels
    Scan(Common),
    /// Finite-length bound with its certificate status
    LengthBound(Common),
}

#[derive(Args)]
struct Common {
    /// Problem file (JSON)
    problem: Option<PathBuf>,
    /// Relation expression; repeatable, appended to the problem relations
    #[arg(long = "expr")]
    exprs: Vec<String>,
    /// Ideal generator in X1..Xd, Y1..Yd; repeatable
    #[arg(long = "ideal")]
    ideal: Vec<String>,
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long = "dim")]
    d: Option<usize>,
    /// Target level (the problem level is the level of the inputs)
    #[arg(long)]
    level: Option<u32>,
    /// Scan window `a..b`
    #[arg(long, value_parser = parse_window)]
    scan: Option<(u32, u32)>,
    #[arg(long)]
    max_degree: Option<u64>,
    #[arg(long)]
    max_gb_steps: Option<u64>,
    #[arg(long)]
    no_cache: bool,
    /// Cache directory (default `.weylstab/`, or $WEYLSTAB_WORKSPACE)
    #[arg(long)]
    workspace: Option<PathBuf>,
}

fn parse_window(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

fn load_problem(c: &Common) -> Result<ProblemFile, CliError> {
    let mut p = match &c.problem {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            ProblemFile::from_json(&text)?
        }
        None => ProblemFile {
            prime: c.prime.ok_or_else(|| CliError::Usage("--prime is required without a problem file".into()))?,
            d: c.d.ok_or_else(|| CliError::Usage("--dim is required without a problem file".into()))?,
            coefficients: Default::default(),
            level: 0,
            rank: 1,
            relations: Vec::new(),
            ideal: None,
            options: Options::default(),
        },
    };
    if let Some(prime) = c.prime {
        p.prime = prime;
    }
    if let Some(d) = c.d {
        p.d = d;
    }
    p.relations.extend(c.exprs.iter().cloned().map(Relation::Single));
    if !c.ideal.is_empty() {
        p.ideal.get_or_insert_with(Vec::new).extend(c.ideal.iter().cloned());
    }
    if c.max_degree.is_some() {
        p.options.max_degree = c.max_degree;
    }
    if c.max_gb_steps.is_some() {
        p.options.max_gb_steps = c.max_gb_steps;
    }
    Ok(p)
}

fn run(command: Command, c: Common) -> Outcome {
    let problem = match load_problem(&c) {
        Ok(p) => p,
        Err(e) => return error_outcome(command, &e),
    };
    let inv = Invocation {
        command,
        problem,
        level: c.level,
        window: c.scan,
    };
    let canonical = match inv.problem.canonical_text() {
        Ok(t) => t,
        Err(e) => return error_outcome(command, &e),
    };
    if c.no_cache {
        return execute(&inv);
    }
    let cache = Cache::new(&workspace_dir(c.workspace.as_deref()));
    let key = cache_key(&canonical, &inv.cache_args());
    match cache.get(&key) {
        Lookup::Hit(entry) => {
            eprintln!("weylstab: cache hit {key}");
            return Outcome {
                json: entry.output,
                exit_code: entry.exit_code,
            };
        }
        Lookup::Corrupt(why) => eprintln!("weylstab: warning: ignoring corrupt cache entry {key}: {why}"),
        Lookup::Miss => {}
    }
    let out = execute(&inv);
    if let Err(e) = cache.put(&key, out.exit_code, &out.json) {
        eprintln!("weylstab: warning: could not write cache entry {key}: {e}");
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Cmd::Nf(c) => (Command::Nf, c),
        Cmd::Gb(c) => (Command::Gb, c),
        Cmd::CharIdeal(c) => (Command::CharIdeal, c),
        Cmd::Hilbert(c) => (Command::Hilbert, c),
        Cmd::Dim(c) => (Command::Dim, c),
        Cmd::Mult(c) => (Command::Mult, c),
        Cmd::Holonomic(c) => (Command::Holonomic, c),
        Cmd::Scan(c) => (Command::Scan, c),
        Cmd::LengthBound(c) => (Command::LengthBound, c),
    };
    let out = run(command, common);
    if out.exit_code != 0 {
        if let Ok(v) = serde_json::from_str::<serde_json::Value>(&out.json) {
            if let Some(msg) = v.pointer("/error/message").and_then(|m| m.as_str()) {
                eprintln!("weylstab: {msg}");
            }
        }
    }
    print!("{}", out.json);
    ExitCode::from(out.exit_code as u8)
}
