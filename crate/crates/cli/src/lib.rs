//! Command-line front end: file formats and subcommands.

pub mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use hurwitz::braid::build_rn_braid_parts;
use hurwitz::invariants::signature_unchecked;
use hurwitz::stabilize::{stable_equivalence, StabilizeMode};
use hurwitz::{
    braid_equal, build_universal, census, endo_signature, euler_characteristic, replay, section_square, signature, BraidWord,
    McgWord, TwistTable, UniversalKind,
};
use thiserror::Error;

pub use format::{
    parse_certificate, parse_derivation, parse_factorization, serialize_certificate, serialize_derivation, serialize_factorization,
    ParseError,
};

/// Environment variable overriding the word-length cap.
pub const WORD_CAP_VAR: &str = "HURWITZ_WORD_CAP";

#[derive(Debug, Parser)]
#[command(name = "hurwitz", version, about = "Positive factorizations in the mapping class group of a surface with one boundary component")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a named factorization (A, B, C, D, F0, H, R<n>).
    Build {
        kind: String,
        #[arg(long, default_value_t = 3)]
        genus: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Euler characteristic, signature, section square and fiber census.
    Invariants { file: PathBuf },
    /// Decide whether two words give the same mapping class.
    Equal {
        first: String,
        second: String,
        #[arg(long, default_value_t = 3)]
        genus: usize,
    },
    /// Replay a move certificate and compare with the expected end.
    CheckCert { start: PathBuf, certificate: PathBuf, end: PathBuf },
    /// Compile a derivation into a stabilized Hurwitz certificate.
    Stabilize {
        first: PathBuf,
        second: PathBuf,
        derivation: PathBuf,
        /// Allow unequal invariants and report the trades.
        #[arg(long)]
        general: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        start_out: Option<PathBuf>,
        #[arg(long)]
        end_out: Option<PathBuf>,
    },
    /// Relator, product and signature checks.
    Selftest {
        #[arg(long, default_value_t = 3)]
        genus: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Check(#[from] hurwitz::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            _ => 2,
        }
    }
}

/// Whether every check of a command passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parsed<T>(path: &Path, f: impl Fn(&str) -> Result<T, ParseError>) -> Result<T, CliError> {
    f(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn table(genus: usize) -> Result<TwistTable, CliError> {
    let t = TwistTable::new(genus).map_err(|e| CliError::Usage(e.to_string()))?;
    match std::env::var(WORD_CAP_VAR) {
        Ok(v) => {
            let cap = v.parse().map_err(|_| CliError::Usage(format!("{WORD_CAP_VAR} must be a positive integer, got {v:?}")))?;
            Ok(t.with_word_cap(cap))
        }
        Err(_) => Ok(t),
    }
}

fn write_out(path: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    match cli.command {
        Command::Build { kind, genus, output } => {
            let kind: UniversalKind = kind.parse().map_err(|e: hurwitz::Error| CliError::Usage(e.to_string()))?;
            let f = build_universal(kind, genus).map_err(|e| CliError::Usage(e.to_string()))?;
            write_out(&output, &serialize_factorization(&f), out)?;
            Ok(Status::Pass)
        }
        Command::Invariants { file } => {
            let f = parsed(&file, parse_factorization)?;
            let t = table(f.genus)?;
            let section = section_square(&f, &t);
            let report = match section {
                Ok(_) => signature(&f, &t)?,
                Err(hurwitz::Error::NotBoundaryPower) => signature_unchecked(&f, &t)?,
                Err(e) => return Err(e.into()),
            };
            let c = census(&f);
            let mut line = format!(
                "chi: {}, sigma: {}, section: {}, irreducible: {}",
                euler_characteristic(&f, f.genus),
                report.signature,
                section.map_or("none".to_string(), |m| m.to_string()),
                c.irreducible
            );
            for (h, n) in &c.separating {
                line.push_str(&format!(", separating-{h}: {n}"));
            }
            writeln!(out, "{line}")?;
            if report.recipe_extrapolated {
                writeln!(out, "note: signature recipe applied with separating vanishing cycles")?;
            }
            Ok(Status::Pass)
        }
        Command::Equal { first, second, genus } => {
            let t = table(genus)?;
            let parse = |s: &str| {
                let w = McgWord::parse(s).map_err(|e| CliError::Usage(format!("{s:?}: {e}")))?;
                w.validate(genus).map_err(|e| CliError::Usage(format!("{s:?}: {e}")))?;
                Ok::<_, CliError>(w)
            };
            if t.mcg_equal(&parse(&first)?, &parse(&second)?)? {
                writeln!(out, "equal")?;
                Ok(Status::Pass)
            } else {
                writeln!(out, "not equal")?;
                Ok(Status::Fail)
            }
        }
        Command::CheckCert { start, certificate, end } => {
            let s = parsed(&start, parse_factorization)?;
            let c = parsed(&certificate, parse_certificate)?;
            let e = parsed(&end, parse_factorization)?;
            if s.genus != e.genus {
                return Err(CliError::Usage(format!("genus {} and {}", s.genus, e.genus)));
            }
            let t = table(s.genus)?;
            let reached = replay(&s, &c, &t)?;
            match reached.first_difference(&e, &t)? {
                None => {
                    writeln!(out, "pass: {} moves", c.len())?;
                    Ok(Status::Pass)
                }
                Some(i) => {
                    writeln!(out, "fail: factor {i} differs after {} moves", c.len())?;
                    Ok(Status::Fail)
                }
            }
        }
        Command::Stabilize {
            first,
            second,
            derivation,
            general,
            output,
            start_out,
            end_out,
        } => {
            let f = parsed(&first, parse_factorization)?;
            let g = parsed(&second, parse_factorization)?;
            let d = parsed(&derivation, parse_derivation)?;
            if f.genus != g.genus {
                return Err(CliError::Usage(format!("genus {} and {}", f.genus, g.genus)));
            }
            let t = table(f.genus)?;
            let mode = if general { StabilizeMode::General } else { StabilizeMode::Strict };
            let st = stable_equivalence(&f, &g, &d, mode, &t)?;
            writeln!(out, "{}", st.ledger)?;
            writeln!(out, "trades: l {} k {}", st.trades.l, st.trades.k)?;
            writeln!(out, "padded lengths: {} -> {}", st.start.len(), st.end.len())?;
            writeln!(out, "certificate: {} moves, verified", st.certificate.len())?;
            if let Some(p) = output {
                fs::write(p, serialize_certificate(&st.certificate))?;
            }
            if let Some(p) = start_out {
                fs::write(p, serialize_factorization(&st.start))?;
            }
            if let Some(p) = end_out {
                fs::write(p, serialize_factorization(&st.end))?;
            }
            Ok(Status::Pass)
        }
        Command::Selftest { genus } => selftest(genus, out),
    }
}

fn selftest(genus: usize, out: &mut dyn Write) -> Result<Status, CliError> {
    let t = table(genus)?;
    let mut status = Status::Pass;
    let mut report = |name: &str, ok: bool, detail: String| -> std::io::Result<()> {
        if !ok {
            status = Status::Fail;
        }
        writeln!(out, "{name}: {} ({detail})", if ok { "pass" } else { "FAIL" })
    };
    let failed = t.relation_failures()?;
    report("relations", failed.is_empty(), if failed.is_empty() { "all hold".into() } else { failed.join(", ") })?;
    let mut sig = Vec::new();
    for kind in [UniversalKind::A, UniversalKind::B, UniversalKind::C, UniversalKind::D] {
        let f = build_universal(kind, genus)?;
        let m = f.boundary_power(&t)?;
        report(&format!("product {kind}"), m == Some(1), format!("r = {}", f.len()))?;
        sig.push(signature(&f, &t)?.signature);
    }
    let f0 = build_universal(UniversalKind::F0, genus)?;
    report("product F0", f0.boundary_power(&t)? == Some(4), format!("r = {}", f0.len()))?;
    let diffs = (sig[0] - sig[1], sig[2] - sig[3]);
    report("signature differences", diffs == (-6, 5), format!("{} and {}", diffs.0, diffs.1))?;
    if genus == 3 {
        report("golden signatures", sig == [-48, -42, -35, -40], format!("{sig:?}"))?;
        let delta2 = BraidWord::full_twist(7);
        let mut ok = true;
        for n in 3..=5 {
            let p = build_rn_braid_parts(3, n)?;
            let w = p.a1.concat(&p.a2)?.concat(&p.b1)?.concat(&p.b2)?;
            ok &= braid_equal(&w, &delta2)?;
        }
        report("braid identity", ok, "n = 3, 4, 5".into())?;
    }
    let h = build_universal(UniversalKind::Hyperelliptic, genus)?;
    let s = signature(&h, &t)?.signature;
    let e = endo_signature(&census(&h), genus)?;
    report("hyperelliptic signature", s == e, format!("{s}, Endo {e}"))?;
    writeln!(out, "{}", if status == Status::Pass { "selftest: pass" } else { "selftest: FAIL" })?;
    Ok(status)
}
