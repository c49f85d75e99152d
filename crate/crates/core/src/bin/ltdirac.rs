use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use ltdirac::cli::{error_json, run, run_batch, Format, JobSpec, Mode};
use ltdirac::Error;

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Slopes,
    Decompose,
    Invariant,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

/// Levelt-Turrittin decomposition and Dirac divisor of a differential operator.
#[derive(Parser)]
#[command(name = "ltdirac", version)]
struct Args {
    /// Operator in x and D, e.g. "x^3*D^2 - 1"; "-" reads it from stdin.
    #[arg(long)]
    op: Option<String>,
    /// Base field extension, e.g. "adjoin: z^2+1"; repeat to build a tower.
    #[arg(long)]
    field: Vec<String>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// r as a reduced fraction p/q.
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// TOML job file; flags override its values.
    #[arg(long)]
    config: Option<String>,
    /// File with one JSON job per line; prints one JSON line per job.
    #[arg(long, conflicts_with_all = ["op", "config"])]
    batch: Option<String>,
}

fn read(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Io(e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path, e)))
    }
}

fn job(args: &Args) -> Result<JobSpec, Error> {
    let mut spec = match &args.config {
        Some(p) => JobSpec::from_toml(&read(p)?)?,
        None => JobSpec::default(),
    };
    if let Some(op) = &args.op {
        spec.operator = if op == "-" { read("-")?.trim().to_string() } else { op.clone() };
    }
    if !args.field.is_empty() {
        spec.field = args.field.clone();
    }
    if let Some(m) = args.mode {
        spec.mode = match m {
            ModeArg::Slopes => Mode::Slopes,
            ModeArg::Decompose => Mode::Decompose,
            ModeArg::Invariant => Mode::Invariant,
        };
    }
    if args.r.is_some() {
        spec.r = args.r.clone();
        spec.n = None;
        spec.k = None;
    }
    if args.n.is_some() || args.k.is_some() {
        spec.n = args.n.or(spec.n);
        spec.k = args.k.or(spec.k);
        if args.r.is_none() {
            spec.r = None;
        }
    }
    if let Some(f) = args.format {
        spec.format = match f {
            FormatArg::Text => Format::Text,
            FormatArg::Structured => Format::Structured,
        };
    }
    if spec.operator.is_empty() {
        return Err(Error::Invalid("no operator given (use --op or --config)".into()));
    }
    Ok(spec)
}

fn batch(path: &str) -> Result<i32, Error> {
    let src = read(path)?;
    let specs = src
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(JobSpec::from_json)
        .collect::<Result<Vec<_>, _>>()?;
    let mut code = 0;
    for res in run_batch(&specs) {
        match res {
            Ok(r) => println!("{}", r.to_json_line()),
            Err(e) => {
                eprintln!("error[{}]: {}", e.kind(), e);
                println!("{}", error_json(&e));
                code = code.max(e.code());
            }
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = match &args.batch {
        Some(p) => batch(p),
        None => job(&args).and_then(|spec| {
            let report = run(&spec)?;
            print!("{}", report.render(spec.format));
            Ok(0)
        }),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error[{}]: {}", e.kind(), e);
            if let Error::Parse { position, expected } = &e {
                eprintln!("  at position {}, expected one of: {}", position, expected.join(", "));
            }
            ExitCode::from(e.code() as u8)
        }
    }
}
