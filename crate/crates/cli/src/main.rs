use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jordanian_core::dfun::{dmatrix, Scheme};
use jordanian_core::exprio::{self, Format};
use jordanian_core::ncalg::Ring;
use jordanian_core::rep::{self, RepMatrix, Spin};
use jordanian_core::suite::{self, Options, Suite};
use jordanian_core::Error;

#[derive(Parser)]
#[command(name = "jordanian", version, about = "D-functions of the Jordanian quantum group SL_h(2)")]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the D-matrix of spin j = TWOJ/2.
    Dmatrix {
        #[arg(long)]
        twoj: u32,
        #[arg(long, value_enum, default_value_t = SchemeArg::Ordered1)]
        scheme: SchemeArg,
        #[arg(long, value_enum, default_value_t = RingArg::Sl)]
        ring: RingArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Twisted Clebsch-Gordan coefficients (coupling and decoupling).
    Cgc {
        #[arg(long)]
        twoj1: u32,
        #[arg(long)]
        twoj2: u32,
        #[arg(long)]
        twoj3: u32,
    },
    /// Matrix of the twist on V(j1) ⊗ V(j2).
    Fmatrix {
        #[arg(long)]
        twoj1: u32,
        #[arg(long)]
        twoj2: u32,
    },
    /// Universal R-matrix on V(j1) ⊗ V(j2).
    Rmatrix {
        #[arg(long)]
        twoj1: u32,
        #[arg(long)]
        twoj2: u32,
    },
    /// Normal-order an expression in x, u, v, y, D, h, g.
    Normalform {
        expr: String,
        #[arg(long, value_enum, default_value_t = RingArg::Sl)]
        ring: RingArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 2)]
        max_twoj: u32,
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        #[arg(long)]
        with_g: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Gl,
    Sl,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Gl => Ring::Gl,
            RingArg::Sl => Ring::Sl,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Ordered1,
    Ordered2,
    Jacobi,
    Classical,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Ordered1 => Scheme::Ordered1,
            SchemeArg::Ordered2 => Scheme::Ordered2,
            SchemeArg::Jacobi => Scheme::Jacobi,
            SchemeArg::Classical => Scheme::Classical,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Corep,
    Wigner,
    Recurrence,
    Ortho,
    Rtt,
    Pbw,
    Fock,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Corep => Suite::Corep,
            SuiteArg::Wigner => Suite::Wigner,
            SuiteArg::Recurrence => Suite::Recurrence,
            SuiteArg::Ortho => Suite::Ortho,
            SuiteArg::Rtt => Suite::Rtt,
            SuiteArg::Pbw => Suite::Pbw,
            SuiteArg::Fock => Suite::Fock,
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

fn basis(s1: Spin, s2: Spin) -> serde_json::Value {
    s1.twice_ms()
        .flat_map(|a| s2.twice_ms().map(move |b| serde_json::json!([a, b])))
        .collect()
}

fn matrix_doc(twoj1: u32, twoj2: u32, m: &RepMatrix) -> String {
    let (s1, s2) = (Spin::new(twoj1), Spin::new(twoj2));
    pretty(&serde_json::json!({
        "twoj1": twoj1,
        "twoj2": twoj2,
        "basis": basis(s1, s2),
        "matrix": m.to_json(),
    }))
}

/// Output text and whether the command counts as successful.
fn execute(command: Command) -> Result<(String, bool), Error> {
    Ok(match command {
        Command::Dmatrix { twoj, scheme, ring, format } => {
            let d = dmatrix(twoj, scheme.into(), ring.into())?;
            let text = match format {
                FormatArg::Json => pretty(&d.to_json()),
                FormatArg::Latex => d.to_latex(),
                FormatArg::Text => d.to_text().trim_end().to_string(),
            };
            (text, true)
        }
        Command::Cgc { twoj1, twoj2, twoj3 } => {
            let omega = rep::omega(twoj1, twoj2, twoj3)?;
            let mho = rep::mho(twoj1, twoj2, twoj3)?;
            let doc = serde_json::json!({
                "twoj1": twoj1,
                "twoj2": twoj2,
                "twoj": twoj3,
                "omega": omega.to_json(),
                "mho": mho.to_json(),
            });
            (pretty(&doc), true)
        }
        Command::Fmatrix { twoj1, twoj2 } => {
            let f = rep::f_matrix(Spin::new(twoj1), Spin::new(twoj2));
            (matrix_doc(twoj1, twoj2, &f), true)
        }
        Command::Rmatrix { twoj1, twoj2 } => {
            let r = rep::r_matrix(Spin::new(twoj1), Spin::new(twoj2));
            (matrix_doc(twoj1, twoj2, &r), true)
        }
        Command::Normalform { expr, ring, format } => {
            let p = exprio::parse(&expr, ring.into())?;
            let fmt = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Latex => Format::Latex,
                FormatArg::Text => Format::Text,
            };
            (exprio::print(&p, fmt), true)
        }
        Command::Verify {
            suite,
            max_twoj,
            nmax,
            with_g,
            format,
        } => {
            let opts = Options {
                max_twice_j: max_twoj,
                nmax,
                with_g,
                ..Options::default()
            };
            let report = suite::run(suite.into(), &opts)?;
            let text = match format {
                FormatArg::Text => report.to_text().trim_end().to_string(),
                _ => report.to_json(),
            };
            (text, report.ok())
        }
    })
}

fn emit(text: &str, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")),
        None => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{text}")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok((text, ok)) => {
            match emit(&text, cli.out.as_ref()) {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
                Ok(()) => {}
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
