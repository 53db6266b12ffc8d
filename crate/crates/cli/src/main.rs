use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sorn::experiments::{self, Demo, Mode};
use sorn::format::{self, read_file, write_file};
use sorn::lattice::{decade_max, lattice_size_from_bits, unum_count};
use sorn::lut::table_size_bits;
use sorn::{Runtime, TableSet};

/// Unum and SORN arithmetic: table generation, inspection and experiments.
#[derive(Parser)]
#[command(name = "sorn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the lookup tables of a decade environment and write them to a file.
    Gen {
        #[command(flatten)]
        params: Params,
        /// Output table file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Describe a table file, or an environment given by its parameters.
    Info {
        /// Table file to inspect.
        #[arg(long, conflicts_with_all = ["bits", "sig_digits"])]
        table: Option<PathBuf>,
        #[arg(long, requires = "sig_digits")]
        bits: Option<u32>,
        #[arg(long, requires = "bits")]
        sig_digits: Option<u32>,
    },
    /// Run one of the numerical experiments and emit CSV.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        #[arg(long, value_enum, default_value = "float")]
        mode: ModeName,
        /// Table file, required in unum mode.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Params {
    /// Bits per Unum.
    #[arg(long)]
    bits: u8,
    /// Significant decimal digits of the lattice points.
    #[arg(long)]
    sig_digits: u8,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoName {
    Spike,
    Devil,
    Bank,
    Euler,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeName {
    Float,
    Unum,
}

impl From<DemoName> for Demo {
    fn from(d: DemoName) -> Demo {
        match d {
            DemoName::Spike => Demo::Spike,
            DemoName::Devil => Demo::Devil,
            DemoName::Bank => Demo::Bank,
            DemoName::Euler => Demo::Euler,
        }
    }
}

impl From<ModeName> for Mode {
    fn from(m: ModeName) -> Mode {
        match m {
            ModeName::Float => Mode::Float,
            ModeName::Unum => Mode::Unum,
        }
    }
}

/// The columns shared by `gen` and `info`.
fn describe(out: &mut impl Write, n_b: u32, n_s: u32) -> Result<()> {
    let p = lattice_size_from_bits(n_b)?;
    let n = unum_count(p);
    writeln!(out, "n_b            {n_b}")?;
    writeln!(out, "n_s            {n_s}")?;
    writeln!(out, "|P|            {p}")?;
    writeln!(out, "|U|            {n}")?;
    if p > 0 {
        let max = decade_max(p, n_s)?;
        let inv = max.recip().context("lattice maximum is zero")?;
        writeln!(out, "max(P)         {}", max.to_sci_string(3))?;
        writeln!(out, "max(P)^-1      {}", inv.to_sci_string(3))?;
    }
    let add_mul = table_size_bits(n_b);
    writeln!(
        out,
        "add+mul LUTs   {add_mul} bits ({} bytes)",
        &add_mul / 8u32
    )?;
    let log_bits = n * 2u32 * n_b;
    writeln!(
        out,
        "log LUT        {log_bits} bits ({} bytes)",
        &log_bits / 8u32
    )?;
    Ok(())
}

fn gen(params: &Params, path: &Path) -> Result<()> {
    let start = Instant::now();
    let tables = TableSet::generate(params.bits, params.sig_digits)?;
    let elapsed = start.elapsed();
    write_file(&tables, path).with_context(|| format!("writing {}", path.display()))?;
    let mut out = io::stdout().lock();
    describe(&mut out, params.bits.into(), params.sig_digits.into())?;
    writeln!(out, "file size      {} bytes", format::file_size(&tables))?;
    writeln!(out, "generated in   {:.2} s", elapsed.as_secs_f64())?;
    writeln!(out, "written to     {}", path.display())?;
    Ok(())
}

fn load(path: &Path) -> Result<TableSet> {
    read_file(path).with_context(|| format!("reading {}", path.display()))
}

fn info(table: Option<&Path>, bits: Option<u32>, sig_digits: Option<u32>) -> Result<()> {
    let mut out = io::stdout().lock();
    match (table, bits, sig_digits) {
        (Some(path), _, _) => {
            let t = load(path)?;
            describe(&mut out, t.n_b().into(), t.n_s().into())?;
            writeln!(out, "file size      {} bytes", format::file_size(&t))?;
        }
        (None, Some(b), Some(s)) => describe(&mut out, b, s)?,
        _ => bail!("give either --table or both --bits and --sig-digits"),
    }
    Ok(())
}

fn demo(name: DemoName, mode: ModeName, table: Option<&Path>, csv: Option<&Path>) -> Result<()> {
    let runtime = match (mode, table) {
        (ModeName::Unum, Some(path)) => Some(Runtime::from_tables(load(path)?)),
        (ModeName::Unum, None) => bail!("unum mode needs --table"),
        (ModeName::Float, _) => None,
    };
    let result = experiments::run(name.into(), mode.into(), runtime.as_ref())?;
    match csv {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            result.write_csv(&mut w)?;
            w.flush()?;
        }
        None => result.write_csv(io::stdout().lock())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { params, out } => gen(&params, &out),
        Command::Info {
            table,
            bits,
            sig_digits,
        } => info(table.as_deref(), bits, sig_digits),
        Command::Demo {
            name,
            mode,
            table,
            csv,
        } => demo(name, mode, table.as_deref(), csv.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
