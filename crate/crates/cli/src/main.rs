use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fuglede_core::lift::{decompose_mod_k, lift_profile};
use fuglede_core::rational::parse_unit_fractions;
use fuglede_core::report::{write_csv, write_jsonl, write_lift_jsonl, Report};
use fuglede_core::search::{survey, SurveyOptions};
use fuglede_core::stepset::{multiplicity_profile, verify_fiber_spectrum, StepSet};
use fuglede_core::{
    is_spectral_pair_zn, is_spectrum_z, is_tiling_z, is_tiling_zn, Certificate, Error, Fraction, IntSet,
    RationalSpectrum, TilingSet, ZnSubset,
};

#[derive(Parser)]
#[command(name = "fuglede", version, about = "Tiles, spectra and the Coven-Meyerowitz conditions for finite sets of integers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// CM analysis, Łaba spectrum and CM tiling set of a set, with certificates.
    Analyze {
        /// Comma-separated non-negative integers, e.g. 0,1,2,3
        set: String,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
    /// Classify every subset of Z_n up to translation.
    Survey(SurveyArgs),
    /// Block-lift verdicts for every surveyed class of Z_n, as JSONL.
    LiftSurvey {
        n: u64,
        /// Largest lift factor k examined.
        #[arg(long, default_value_t = 3)]
        k_max: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a single claim and print its certificate.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Args)]
struct SurveyArgs {
    n: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    out: Format,
    /// Also merge classes related by multiplication by units.
    #[arg(long)]
    units: bool,
    /// Write rows here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// A ⊕ C = Z_n.
    TilingZn { n: u64, a: String, c: String },
    /// Λ is a spectrum of A in Z_n.
    SpectrumZn { n: u64, a: String, lambda: String },
    /// Γ + Z is a spectrum of A ⊂ Z, Γ given as fractions in [0, 1).
    SpectrumZ { a: String, gamma: String },
    /// A ⊕ (B ⊕ mZ) = Z.
    TilingZ { a: String, block: String, modulus: u64 },
    /// p(Γ + Z) is a spectrum of the step set Ω, e.g. `0..1/2,1..3/2`.
    FiberSpectrum { omega: String, p: u64, gamma: String },
    /// Split A into residue classes mod k.
    Decompose { a: String, k: u64 },
    /// Tile and spectral verdicts of A + n{0,…,k-1} in Z_{nk} for k up to k_max.
    Lift { n: u64, a: String, k_max: u64 },
}

enum Outcome {
    True,
    False,
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        if b {
            Outcome::True
        } else {
            Outcome::False
        }
    }
}

fn parse_set(s: &str) -> Result<IntSet, Error> {
    s.parse()
}

fn parse_zn(n: u64, s: &str) -> Result<ZnSubset, Error> {
    ZnSubset::new(n, parse_set(s)?.elements())
}

fn parse_gamma(s: &str) -> Result<RationalSpectrum, Error> {
    RationalSpectrum::from_fractions(&parse_unit_fractions(s)?, Fraction::one())
}

fn print_json<T: serde::Serialize>(value: &T) {
    let _ = writeln!(io::stdout(), "{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn certificate(c: Certificate) -> Outcome {
    print_json(&c);
    c.verdict.into()
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Analyze { set, json: _, text } => {
            let parsed = parse_set(&set)?;
            let report = Report::build(&set, &parsed)?;
            if text {
                let _ = write!(io::stdout(), "{}", report.to_text());
            } else {
                let _ = writeln!(io::stdout(), "{}", report.to_json());
            }
            Ok((report.cm_holds && report.certificates_verify()).into())
        }
        Command::Survey(args) => {
            let opts = SurveyOptions { units: args.units, jobs: args.jobs, ..SurveyOptions::default() };
            let result = survey(args.n, &opts)?;
            let io_err = |e: io::Error| Error::Io(e.to_string());
            let sink: Box<dyn Write> = match &args.output {
                Some(path) => Box::new(File::create(path).map_err(io_err)?),
                None => Box::new(io::stdout().lock()),
            };
            let mut sink = BufWriter::new(sink);
            match args.out {
                Format::Jsonl => write_jsonl(&result, &mut sink),
                Format::Csv => write_csv(&result, &mut sink),
            }
            .and_then(|_| sink.flush())
            .map_err(io_err)?;
            let s = &result.summary;
            eprintln!(
                "n={} classes={} tiles={} spectral={} discrepancies={} tiles_failing_t1={}",
                s.n,
                s.classes,
                s.tiles,
                s.spectral,
                s.discrepancies(),
                s.tiles_failing_t1
            );
            Ok(Outcome::True)
        }
        Command::LiftSurvey { n, k_max, output } => {
            let result = survey(n, &SurveyOptions::default())?;
            let sink: Box<dyn Write> = match &output {
                Some(path) => Box::new(File::create(path).map_err(|e| Error::Io(e.to_string()))?),
                None => Box::new(io::stdout().lock()),
            };
            let mut sink = BufWriter::new(sink);
            write_lift_jsonl(&result, k_max, &mut sink)?;
            sink.flush().map_err(|e| Error::Io(e.to_string()))?;
            Ok(Outcome::True)
        }
        Command::Verify(v) => match v {
            VerifyCommand::TilingZn { n, a, c } => Ok(certificate(is_tiling_zn(&parse_zn(n, &a)?, &parse_zn(n, &c)?)?)),
            VerifyCommand::SpectrumZn { n, a, lambda } => {
                Ok(certificate(is_spectral_pair_zn(&parse_zn(n, &a)?, &parse_zn(n, &lambda)?)?))
            }
            VerifyCommand::SpectrumZ { a, gamma } => Ok(certificate(is_spectrum_z(&parse_set(&a)?, &parse_gamma(&gamma)?)?)),
            VerifyCommand::TilingZ { a, block, modulus } => {
                let t = TilingSet { block: parse_set(&block)?, modulus };
                Ok(certificate(is_tiling_z(&parse_set(&a)?, &t)?))
            }
            VerifyCommand::FiberSpectrum { omega, p, gamma } => {
                let omega: StepSet = omega.parse()?;
                let fd = multiplicity_profile(&omega, p)?;
                let cert = verify_fiber_spectrum(&fd, &parse_gamma(&gamma)?)?;
                let verdict = cert.verdict;
                print_json(&serde_json::json!({ "decomposition": fd, "certificate": cert }));
                Ok(verdict.into())
            }
            VerifyCommand::Decompose { a, k } => {
                let d = decompose_mod_k(&parse_set(&a)?, k)?;
                print_json(&d);
                Ok(d.equidistributed.into())
            }
            VerifyCommand::Lift { n, a, k_max } => {
                let profile = lift_profile(&parse_zn(n, &a)?, k_max)?;
                print_json(&profile);
                Ok(Outcome::True)
            }
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::True) => ExitCode::SUCCESS,
        Ok(Outcome::False) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
