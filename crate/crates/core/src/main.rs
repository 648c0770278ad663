use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qelim::format::{
    bound_report, parse_distribution, parse_function, parse_rational, parse_tree, transcript_report, write_function,
    write_tree, Report,
};
use qelim::generators::{perturb_tribes, standard_with_limits, tribes_auto, tribes_with_limits, Standard};
use qelim::limits::{DEFAULT_MAX_ORACLE_STATES, DEFAULT_MAX_TABLE_LEN};
use qelim::measures::{influences, max_influence, output_distribution, plurality_error, variance_ratio};
use qelim::{corollary_bound, full_eliminate, theorem1_bound, verify, Error, FiniteFunction, Limits, Oracle, Rat};
use qelim::{format::format_ratio, ExactDistribution};

#[derive(Parser)]
#[command(
    name = "qelim",
    version,
    about = "Exact influence bounds and query elimination for small functions"
)]
struct Cli {
    /// Largest truth table to build or parse.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TABLE_LEN)]
    max_table: usize,
    /// Largest number of restriction states for the optimal-tree oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORACLE_STATES)]
    max_oracle_states: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DistArgs {
    /// Distribution file: one line of `num/den` probabilities per coordinate.
    #[arg(long)]
    dist: Option<PathBuf>,
    /// Uniform marginals.
    #[arg(long)]
    uniform: bool,
    /// Binary inputs with Pr[symbol 1] = p on every coordinate.
    #[arg(long, value_parser = parse_rational)]
    p: Option<Rat>,
}

#[derive(Subcommand)]
enum Command {
    /// Output distribution, plurality error, influences and variance ratio.
    Analyze {
        function: PathBuf,
        #[command(flatten)]
        dist: DistArgs,
    },
    /// Influence lower bound on distributional query complexity.
    Bound {
        function: PathBuf,
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, value_parser = parse_rational)]
        eps: Rat,
        /// Nearby function g for the smoothed bound.
        #[arg(long)]
        close: Option<PathBuf>,
    },
    /// Eliminate every query of a decision tree and print the transcript.
    Eliminate {
        function: PathBuf,
        tree: PathBuf,
        #[command(flatten)]
        dist: DistArgs,
        /// Declared error of the tree; must be at least its true error.
        #[arg(long, value_parser = parse_rational)]
        eps: Rat,
    },
    /// Exact distributional query complexity by exhaustive search.
    Optimal {
        function: PathBuf,
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, value_parser = parse_rational)]
        eps: Rat,
        /// Write an optimal tree of that depth to this file.
        #[arg(long)]
        emit_tree: Option<PathBuf>,
    },
    /// Write a generated function file.
    Gen {
        #[command(subcommand)]
        which: GenKind,
        /// Output file; stdout when omitted.
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Run self-check suites; exits nonzero on any failure.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// OR of S AND-blocks of width T.
    Tribes {
        s: usize,
        t: usize,
    },
    /// Tribes on N inputs with Pr[f=1] closest to 1/2.
    TribesAuto {
        n: usize,
    },
    /// Tribes(S,T) with its first floor(DELTA·2^n) inputs set to x1.
    PerturbedTribes {
        s: usize,
        t: usize,
        #[arg(value_parser = parse_rational)]
        delta: Rat,
    },
    /// f(x) = x_J (1-based).
    Dictator {
        n: usize,
        #[arg(default_value_t = 1)]
        j: usize,
    },
    And {
        n: usize,
    },
    Or {
        n: usize,
    },
    Parity {
        n: usize,
    },
    Majority {
        n: usize,
    },
    Constant {
        n: usize,
        #[arg(default_value_t = 0)]
        label: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    VerifyFailed,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load_function(path: &Path, limits: &Limits) -> CliResult<FiniteFunction> {
    Ok(parse_function(&read(path)?, &path.display().to_string(), limits)?)
}

fn load_distribution(args: &DistArgs, f: &FiniteFunction) -> CliResult<ExactDistribution> {
    let mu = if let Some(path) = &args.dist {
        parse_distribution(&read(path)?, &path.display().to_string())?
    } else if let Some(p) = &args.p {
        if f.alphabet() != 2 {
            return Err(Error::Shape(format!("--p needs binary inputs, function has k={}", f.alphabet())).into());
        }
        ExactDistribution::bernoulli(f.arity(), p.clone())?
    } else {
        ExactDistribution::uniform(f.arity(), f.alphabet())?
    };
    mu.check_compatible(f)?;
    Ok(mu)
}

fn analyze(f: &FiniteFunction, mu: &ExactDistribution) -> CliResult<Report> {
    let mut r = Report::new();
    r.push("n", f.arity()).push("k", f.alphabet());
    for (z, p) in f.labels().iter().zip(output_distribution(f, mu)?) {
        r.push_rat(format!("pr {z}"), &p);
    }
    r.push_rat("plurality_error", &plurality_error(f, mu)?);
    for (i, inf) in influences(f, mu)?.iter().enumerate() {
        r.push_rat(format!("inf {}", i + 1), inf);
    }
    let (inf_max, arg) = max_influence(f, mu)?;
    r.push_rat("inf_max", &inf_max).push("inf_argmax", arg + 1);
    if f.labels().len() == 2 {
        let (var, ratio) = variance_ratio(f, mu)?;
        r.push_rat("variance", &var)
            .push("variance_ratio", format_ratio(&ratio));
    }
    Ok(r)
}

fn generate(which: &GenKind, limits: &Limits) -> CliResult<FiniteFunction> {
    let std = |kind, n| standard_with_limits(kind, n, limits);
    Ok(match which {
        GenKind::Tribes { s, t } => tribes_with_limits(*s, *t, limits)?,
        GenKind::TribesAuto { n } => tribes_auto(*n)?.2,
        GenKind::PerturbedTribes { s, t, delta } => perturb_tribes(&tribes_with_limits(*s, *t, limits)?, delta)?,
        GenKind::Dictator { n, j } => {
            if *j == 0 {
                return Err(Error::Domain("dictator coordinates are 1-based".into()).into());
            }
            std(Standard::Dictator(j - 1), *n)?
        }
        GenKind::And { n } => std(Standard::And, *n)?,
        GenKind::Or { n } => std(Standard::Or, *n)?,
        GenKind::Parity { n } => std(Standard::Parity, *n)?,
        GenKind::Majority { n } => std(Standard::Majority, *n)?,
        GenKind::Constant { n, label } => std(Standard::Constant(*label), *n)?,
    })
}

fn run(cli: Cli) -> CliResult<String> {
    let limits = Limits {
        max_table_len: cli.max_table,
        max_oracle_states: cli.max_oracle_states,
    };
    match cli.command {
        Command::Analyze { function, dist } => {
            let f = load_function(&function, &limits)?;
            let mu = load_distribution(&dist, &f)?;
            Ok(analyze(&f, &mu)?.render())
        }
        Command::Bound {
            function,
            dist,
            eps,
            close,
        } => {
            let f = load_function(&function, &limits)?;
            let mu = load_distribution(&dist, &f)?;
            let report = match close {
                None => bound_report(&theorem1_bound(&f, &mu, eps)?),
                Some(path) => {
                    let g = load_function(&path, &limits)?;
                    let (delta, r) = corollary_bound(&f, &g, &mu, eps)?;
                    let mut out = Report::new();
                    out.push_rat("delta", &delta).extend(bound_report(&r));
                    out
                }
            };
            Ok(report.render())
        }
        Command::Eliminate {
            function,
            tree,
            dist,
            eps,
        } => {
            let f = load_function(&function, &limits)?;
            let mu = load_distribution(&dist, &f)?;
            let t = parse_tree(&read(&tree)?, &tree.display().to_string(), f.alphabet())?;
            let transcript = full_eliminate(&t, &f, &mu, eps)?;
            Ok(transcript_report(&transcript).render())
        }
        Command::Optimal {
            function,
            dist,
            eps,
            emit_tree,
        } => {
            let f = load_function(&function, &limits)?;
            let mu = load_distribution(&dist, &f)?;
            let mut oracle = Oracle::new(&f, &mu, &limits)?;
            let d = oracle.distributional_complexity(&eps)?;
            let err = oracle.optimal_error(d)?;
            if let Some(path) = emit_tree {
                write(&path, &write_tree(&oracle.optimal_tree(d)?))?;
            }
            let mut r = Report::new();
            r.push("complexity", d).push_rat("optimal_error", &err);
            Ok(r.render())
        }
        Command::Gen { which, out } => {
            let text = write_function(&generate(&which, &limits)?);
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Verify { suite } => {
            let outcomes = verify::run_suite(&suite)?;
            let mut text = String::new();
            for o in &outcomes {
                text.push_str(&o.to_string());
                text.push('\n');
            }
            if outcomes.iter().all(|o| o.passed()) {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::VerifyFailed)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::VerifyFailed) => ExitCode::from(1),
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(2)
        }
    }
}
