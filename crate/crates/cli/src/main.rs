use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cubecycles::appendix::{check_q8, render_q8_tables};
use cubecycles::io::{read_decomposition, write_with_marker};
use cubecycles::mollard_ramras::two_n_cycle_decomposition;
use cubecycles::{decompose_with, path_decomposition, verify_decomposition, Dim, Error, Limits};

#[derive(Parser)]
#[command(
    name = "cubecycles",
    version,
    about = "Cycle decompositions of the hypercube Q_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose Q_n into 2^m·n-cycles with a perfect matching and write QCYC.
    Decompose {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Write to FILE instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Run every check before writing; exit 1 on any finding.
        #[arg(long)]
        verify: bool,
        /// Allow n above the default limit (up to 24).
        #[arg(long)]
        force: bool,
    },
    /// Re-check a QCYC file.
    Verify { file: PathBuf },
    /// Cut every cycle of a QCYC file into paths of R edges.
    Paths {
        #[arg(long = "len", value_name = "R")]
        len: u32,
        file: PathBuf,
    },
    /// List the 2n-cycles C(A, (1..n, 1..n)) for every even A ⊆ [n-1].
    Mollard {
        #[arg(long)]
        n: u32,
    },
    /// Print the selected matching edges of the 16 cycles of Q_8.
    AppendixQ8 {
        /// Compare against the embedded reference tables.
        #[arg(long)]
        check: bool,
    },
}

/// A failure already reported on standard error, carrying its exit code.
struct Exit(u8);

fn usage(e: Error) -> Exit {
    eprintln!("error: {e}");
    Exit(2)
}

fn sink_error(e: io::Error) -> Exit {
    eprintln!("error: {e}");
    Exit(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decompose {
            n,
            m,
            out,
            verify,
            force,
        } => cmd_decompose(n, m, out.as_deref(), verify, force),
        Command::Verify { file } => cmd_verify(&file),
        Command::Paths { len, file } => cmd_paths(len, &file),
        Command::Mollard { n } => cmd_mollard(n),
        Command::AppendixQ8 { check } => cmd_appendix_q8(check),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code)) => ExitCode::from(code),
    }
}

fn cmd_decompose(
    n: u32,
    m: u32,
    out: Option<&Path>,
    verify: bool,
    force: bool,
) -> Result<(), Exit> {
    let limits = if force {
        Limits::extended()
    } else {
        Limits::standard()
    };
    let dec = decompose_with(n, m, limits).map_err(usage)?;
    if verify {
        let report = verify_decomposition(&dec);
        if !report.is_ok() {
            eprint!("{report}");
            return Err(Exit(1));
        }
    }
    let unverified = !verify && n > Limits::DEFAULT_MAX_N;
    if unverified {
        eprintln!("warning: n = {n} is above the default limit; output is unverified");
    }
    let written = match out {
        Some(path) => File::create(path)
            .map_err(Error::from)
            .and_then(|f| write_with_marker(&dec, &mut BufWriter::new(f), unverified)),
        None => write_with_marker(&dec, &mut io::stdout().lock(), unverified),
    };
    written.map_err(usage)
}

fn load(path: &Path) -> Result<cubecycles::Decomposition, Exit> {
    let file = File::open(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        Exit(2)
    })?;
    read_decomposition(BufReader::new(file)).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        Exit(2)
    })
}

fn cmd_verify(path: &Path) -> Result<(), Exit> {
    let dec = load(path)?;
    let report = verify_decomposition(&dec);
    if report.is_ok() {
        eprintln!("{}: {report}", path.display());
        return Ok(());
    }
    eprint!("{report}");
    print!("{}", report.machine_lines());
    Err(Exit(1))
}

fn cmd_paths(r: u32, path: &Path) -> Result<(), Exit> {
    let dec = load(path)?;
    let paths = path_decomposition(&dec, r).map_err(usage)?;
    eprintln!(
        "{} paths of length {} in Q_{}",
        paths.paths.len(),
        paths.r,
        paths.n
    );
    let mut out = BufWriter::new(io::stdout().lock());
    for (i, p) in paths.paths.iter().enumerate() {
        write!(out, "p {}", i + 1).map_err(sink_error)?;
        for v in p {
            write!(out, " {v}").map_err(sink_error)?;
        }
        writeln!(out).map_err(sink_error)?;
    }
    out.flush().map_err(sink_error)
}

fn cmd_mollard(n: u32) -> Result<(), Exit> {
    let dim = Dim::new(n).map_err(usage)?;
    let cycles = two_n_cycle_decomposition(dim).map_err(usage)?;
    let mut out = BufWriter::new(io::stdout().lock());
    writeln!(out, "n={n} cycles={} len={}", cycles.len(), 2 * n).map_err(sink_error)?;
    for (i, c) in cycles.iter().enumerate() {
        let ds: Vec<String> = c.dirs.iter().map(|d| d.get().to_string()).collect();
        writeln!(
            out,
            "c {} start={:x} dirs={}",
            i + 1,
            c.start.mask(),
            ds.join(",")
        )
        .map_err(sink_error)?;
    }
    out.flush().map_err(sink_error)
}

fn cmd_appendix_q8(check: bool) -> Result<(), Exit> {
    let text = render_q8_tables().map_err(usage)?;
    print!("{text}");
    if check {
        let report = check_q8().map_err(usage)?;
        eprint!("{report}");
        if !report.is_ok() {
            return Err(Exit(1));
        }
    }
    Ok(())
}
