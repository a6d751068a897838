//! The `aa` command line.
//!
//! Arrays travel between commands as triple files. Every data output goes to
//! `-o FILE` or standard output and is byte-for-byte what
//! [`write_triples`](crate::io::write_triples) produces for the library
//! result. Exit status is 0 on success, 1 on a runtime error and 2 on a usage
//! error.

use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra;
use crate::analysis;
use crate::array::{AssociativeArray, Axis, KeySpec};
use crate::error::{Error, Result};
use crate::graph;
use crate::io as aaio;
use crate::key::Key;
use crate::patterns;
use crate::semiring::Semiring;
use crate::store::TableHandle;

#[derive(Parser, Debug)]
#[command(
    name = "aa",
    version,
    about = "Associative array algebra over triple files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Output file (default: standard output)
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a CSV table or triple file into a triple file
    Ingest {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Binary array operation
    Op {
        #[arg(value_enum)]
        op: BinOp,
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "arith")]
        semiring: Semiring,
        #[command(flatten)]
        out: Output,
    },
    /// Swap rows and columns
    Transpose {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Replace every value by 1
    Logical {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Count co-occurring values of two columns (e.g. genre by artist)
    Relate {
        input: PathBuf,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
        #[command(flatten)]
        out: Output,
    },
    /// Sub-array by key specs: all, set:K1,K2, range:LO,HI, prefix:P
    Select {
        input: PathBuf,
        #[arg(long, default_value = "all")]
        rows: String,
        #[arg(long, default_value = "all")]
        cols: String,
        #[command(flatten)]
        out: Output,
    },
    /// Test for a special pattern; prints true or false
    Pattern {
        #[arg(value_enum)]
        kind: PatternKind,
        input: PathBuf,
    },
    /// Entry count per key
    Degree {
        input: PathBuf,
        #[arg(long, default_value = "row")]
        axis: Axis,
        #[command(flatten)]
        out: Output,
    },
    /// A ⊕.⊗ Aᵀ under arith
    Correlate {
        input: PathBuf,
        /// Apply `logical` first
        #[arg(long)]
        logical: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Frontier reachable in exactly N steps
    Bfs {
        input: PathBuf,
        #[arg(long = "source", required = true)]
        sources: Vec<String>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Null-space basis
    Nullspace {
        input: PathBuf,
        #[arg(long, default_value_t = analysis::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Numeric rank; prints a count
    Rank {
        input: PathBuf,
        #[arg(long, default_value_t = analysis::DEFAULT_TOL)]
        tol: f64,
    },
    /// Dominant eigenpair by power iteration; prints lambda, iterations and
    /// residual. `-o` writes the eigenvector.
    Eigen {
        input: PathBuf,
        #[arg(long, default_value_t = analysis::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 1000)]
        maxiter: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Graphviz digraph of the entries
    ExportDot {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Persistent table operations
    #[command(subcommand)]
    Store(StoreCommand),
}

#[derive(Subcommand, Debug)]
enum StoreCommand {
    Init {
        dir: PathBuf,
    },
    Insert {
        dir: PathBuf,
        input: PathBuf,
    },
    Select {
        dir: PathBuf,
        #[arg(long, default_value = "all")]
        rows: String,
        #[arg(long, default_value = "all")]
        cols: String,
        #[command(flatten)]
        out: Output,
    },
    Delete {
        dir: PathBuf,
        mask: PathBuf,
    },
    Compact {
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Triples,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BinOp {
    Add,
    Mult,
    Prod,
    Mask,
    Delete,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PatternKind {
    Perm,
    Clique,
}

fn open_input(path: &Path) -> Result<Box<dyn Read>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(io::stdin()))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

fn load(path: &Path) -> Result<AssociativeArray> {
    aaio::read_triples(open_input(path)?)
}

fn emit(bytes: &[u8], out: &Output, stdout: &mut dyn Write) -> Result<()> {
    match &out.output {
        Some(p) => {
            let mut f = File::create(p)?;
            f.write_all(bytes)?;
            f.sync_all()?;
        }
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

fn emit_array(a: &AssociativeArray, out: &Output, stdout: &mut dyn Write) -> Result<()> {
    emit(aaio::triples_to_string(a)?.as_bytes(), out, stdout)
}

/// Shortest decimal after rounding to the digits a tolerance can justify.
fn rounded(x: f64, tol: f64) -> String {
    let digits = (-tol.log10()).ceil().clamp(1.0, 17.0) as usize;
    let r: f64 = format!("{:.*e}", digits - 1, x).parse().unwrap_or(x);
    aaio::format_number(if r == 0.0 { 0.0 } else { r })
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Ingest { format, input, out } => {
            let a = match format {
                Format::Table => aaio::read_table(open_input(&input)?)?,
                Format::Triples => load(&input)?,
            };
            emit_array(&a, &out, stdout)
        }
        Command::Op {
            op,
            a,
            b,
            semiring,
            out,
        } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let c = match op {
                BinOp::Add => algebra::eladd(&a, &b, semiring)?,
                BinOp::Mult => algebra::elmult(&a, &b, semiring)?,
                BinOp::Prod => algebra::arrayprod(&a, &b, semiring)?,
                BinOp::Mask => algebra::mask_select(&a, &b),
                BinOp::Delete => algebra::delete_entries(&a, &b),
            };
            emit_array(&c, &out, stdout)
        }
        Command::Transpose { input, out } => emit_array(&load(&input)?.transpose(), &out, stdout),
        Command::Logical { input, out } => emit_array(&load(&input)?.logical(), &out, stdout),
        Command::Relate {
            input,
            rows,
            cols,
            out,
        } => {
            let a = load(&input)?;
            let g = graph::relationship(&a, &Key::new(&rows)?, &Key::new(&cols)?)?;
            emit_array(&g, &out, stdout)
        }
        Command::Select {
            input,
            rows,
            cols,
            out,
        } => {
            let a = load(&input)?;
            let s = a.subarray(&rows.parse::<KeySpec>()?, &cols.parse::<KeySpec>()?)?;
            emit_array(&s, &out, stdout)
        }
        Command::Pattern { kind, input } => {
            let a = load(&input)?;
            let yes = match kind {
                PatternKind::Perm => patterns::is_permutation(&a),
                PatternKind::Clique => patterns::is_clique(&a),
            };
            writeln!(stdout, "{yes}")?;
            Ok(())
        }
        Command::Degree { input, axis, out } => {
            emit_array(&graph::degree(&load(&input)?, axis), &out, stdout)
        }
        Command::Correlate {
            input,
            logical,
            out,
        } => {
            let mut a = load(&input)?;
            if logical {
                a = a.logical();
            }
            emit_array(&graph::correlate(&a)?, &out, stdout)
        }
        Command::Bfs {
            input,
            sources,
            steps,
            out,
        } => {
            let a = load(&input)?;
            let sources = sources
                .iter()
                .map(|s| Key::new(s))
                .collect::<Result<Vec<_>>>()?;
            emit_array(&graph::bfs(&a, &sources, steps), &out, stdout)
        }
        Command::Nullspace { input, tol, out } => {
            emit_array(&analysis::null_space(&load(&input)?, tol)?, &out, stdout)
        }
        Command::Rank { input, tol } => {
            writeln!(stdout, "{}", analysis::rank(&load(&input)?, tol)?)?;
            Ok(())
        }
        Command::Eigen {
            input,
            tol,
            maxiter,
            out,
        } => {
            let r = analysis::dominant_eigenpair(&load(&input)?, tol, maxiter)?;
            writeln!(stdout, "lambda {}", rounded(r.eigenvalue, tol))?;
            writeln!(stdout, "iterations {}", r.iterations)?;
            writeln!(stdout, "residual {:e}", r.residual)?;
            if out.output.is_some() {
                emit_array(&r.eigenvector, &out, &mut io::sink())?;
            }
            Ok(())
        }
        Command::ExportDot { input, out } => {
            emit(aaio::dot_to_string(&load(&input)?).as_bytes(), &out, stdout)
        }
        Command::Store(sc) => execute_store(sc, stdout),
    }
}

fn writer(dir: &Path) -> Result<TableHandle> {
    let t = TableHandle::open(dir)?;
    if t.is_read_only() {
        return Err(Error::ReadOnly(dir.to_path_buf()));
    }
    Ok(t)
}

fn execute_store(cmd: StoreCommand, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        StoreCommand::Init { dir } => {
            let t = TableHandle::open(&dir)?;
            writeln!(stdout, "segments {}", t.segments().len())?;
        }
        StoreCommand::Insert { dir, input } => {
            let b = load(&input)?;
            writeln!(stdout, "inserted {}", writer(&dir)?.insert(&b)?)?;
        }
        StoreCommand::Select {
            dir,
            rows,
            cols,
            out,
        } => {
            let (rows, cols) = (rows.parse::<KeySpec>()?, cols.parse::<KeySpec>()?);
            let a = TableHandle::open_read_only(&dir)?.select(&rows, &cols)?;
            emit_array(&a, &out, stdout)?;
        }
        StoreCommand::Delete { dir, mask } => {
            let m = load(&mask)?;
            writeln!(stdout, "deleted {}", writer(&dir)?.delete(&m)?)?;
        }
        StoreCommand::Compact { dir } => {
            let (before, after) = writer(&dir)?.compact()?;
            writeln!(stdout, "segments {before} -> {after}")?;
        }
    }
    Ok(())
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let msg = e.render().to_string();
            let line = msg
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("usage error");
            let _ = writeln!(stderr, "aa: {}", line.trim_start_matches("error: "));
            return 2;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "aa: error: {e}");
            1
        }
    }
}
