use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kolchin::bounds::{BoundError, BoundValue, Bounds, Limits, CAP_BITS_ENV};
use kolchin::doc::{
    self, AckermannDoc, BoundDoc, ComparisonDoc, Input, MFrakDoc, MacaulayDoc, MuDoc, PolynomialDoc, VerifyDoc,
};
use kolchin::lattice::{family_polynomial, kolchin_polynomial};
use kolchin::mu::{build_concatenated, m_frak, MuError};
use kolchin::numeric::{d_binomial_rep, macaulay_bracket};
use kolchin::verify::{run_suite, Suite, SuiteConfig};
use num_bigint::BigUint;
use std::io::Read;
use std::process::ExitCode;

mod render;

const EXIT_USAGE: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "kolchin", version, about = "Kolchin polynomials and typical-dimension bounds")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Bit-size cap on intermediate integers.
    #[arg(long, env = CAP_BITS_ENV, global = true)]
    cap_bits: Option<u64>,
    /// Seed for the random verification suites.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kolchin polynomial of a lattice set or an indexed family (JSON file, or - for stdin).
    Kolchin { input: String },
    /// Best bound on the typical differential dimension a_tau.
    Bound(BoundArgs),
    /// The staircase sequence from (r0,0,...,0), optionally concatenated over n variables.
    Mu {
        #[arg(long)]
        r0: u64,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Macaulay bracket a^<d> and the d-binomial representation of a.
    Macaulay {
        #[arg(long)]
        a: BigUint,
        #[arg(long)]
        d: u64,
    },
    /// Ackermann function A(x, y).
    Ackermann {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: BigUint,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        /// Random lattice sets per random suite.
        #[arg(long, default_value_t = 200)]
        samples: u64,
    },
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long)]
    r: u64,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    tau: u64,
    /// Also print the coefficient-sum bound and the type-zero alternative.
    #[arg(long)]
    compare: bool,
}

/// A finished command: rendered output and exit status.
struct Outcome {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(bits) = cli.cap_bits {
        l.max_bits = bits;
    }
    l
}

fn emit<T: serde::Serialize>(cli: &Cli, doc: &T, text: impl FnOnce(&T) -> String, code: u8) -> Outcome {
    let text = match cli.format {
        Format::Json => doc::to_json(doc),
        Format::Text => text(doc),
    };
    Outcome { text, code }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let limits = limits(cli);
    match &cli.command {
        Command::Kolchin { input } => {
            let raw = if input == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
                s
            } else {
                std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?
            };
            let doc = match doc::parse_input(&raw)? {
                Input::Set(set) => PolynomialDoc::new(set.m(), &kolchin_polynomial(&set)),
                Input::Family(fam) => PolynomialDoc::new(fam.m(), &family_polynomial(&fam)),
            };
            Ok(emit(cli, &doc, render::polynomial, 0))
        }
        Command::Bound(args) => {
            let mut b = Bounds::new(limits);
            let res = b.typical_dim_bound(args.r, args.m, args.n, args.tau)?;
            let mut doc = BoundDoc::new(&res);
            let mut code = match res.value {
                BoundValue::Exact(_) => 0,
                BoundValue::ExceedsCap { .. } => EXIT_CAP,
            };
            if args.compare {
                let cmp = b.coefficient_bound(args.r, args.m, args.n).and_then(|cb| {
                    let alt = b.type_zero_alt_bound(args.r, args.m, args.n)?;
                    Ok(ComparisonDoc::new(&cb, alt))
                });
                match cmp {
                    Ok(c) => doc.comparison = Some(c),
                    Err(e @ BoundError::ExceedsCap { .. }) => {
                        doc.comparison_error = Some(e.to_string());
                        code = EXIT_CAP;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(emit(cli, &doc, render::bound, code))
        }
        Command::Mu { r0, m, n } => {
            let mut b = Bounds::new(limits);
            let concat = match build_concatenated(*r0, *m, *n, &mut b) {
                Ok(c) => c,
                Err(MuError::Bound(e @ BoundError::ExceedsCap { .. })) => {
                    return Ok(Outcome {
                        text: cap_text(cli, &e),
                        code: EXIT_CAP,
                    })
                }
                Err(e) => return Err(e.into()),
            };
            let table = (0..*m)
                .map(|tau| match m_frak(*r0, *m, *n, tau, &mut b) {
                    Ok(v) => Ok(MFrakDoc {
                        tau,
                        value: Some(v.value),
                        index: Some(v.index),
                        exceeds_cap: None,
                    }),
                    Err(MuError::Bound(BoundError::ExceedsCap { expression })) => Ok(MFrakDoc {
                        tau,
                        value: None,
                        index: None,
                        exceeds_cap: Some(expression),
                    }),
                    Err(e) => Err(e),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let doc = MuDoc::new(&concat, table);
            Ok(emit(cli, &doc, render::mu, 0))
        }
        Command::Macaulay { a, d } => {
            if *d == 0 {
                anyhow::bail!("d must be a positive integer");
            }
            let representation = if a == &BigUint::ZERO {
                Vec::new()
            } else {
                d_binomial_rep(a, *d)?
                    .terms()
                    .iter()
                    .map(|(i, k)| Ok((u64::try_from(k).context("k_i exceeds 64 bits")?, *i)))
                    .collect::<Result<Vec<_>>>()?
            };
            let doc = MacaulayDoc {
                a: a.clone(),
                d: *d,
                representation,
                bracket: macaulay_bracket(a, *d)?,
            };
            Ok(emit(cli, &doc, render::macaulay, 0))
        }
        Command::Ackermann { x, y } => {
            let mut b = Bounds::new(limits);
            let (value, exceeds_cap, code) = match b.ackermann(*x, y) {
                Ok(v) => (Some(v), None, 0),
                Err(BoundError::ExceedsCap { expression }) => (None, Some(expression), EXIT_CAP),
                Err(e) => return Err(e.into()),
            };
            let doc = AckermannDoc {
                x: *x,
                y: y.clone(),
                value,
                exceeds_cap,
            };
            Ok(emit(cli, &doc, render::ackermann, code))
        }
        Command::Verify { suite, samples } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(anyhow::Error::msg)?]
            };
            let cfg = SuiteConfig {
                seed: cli.seed,
                samples: *samples,
                limits,
            };
            let reports: Vec<_> = suites.iter().map(|s| run_suite(*s, &cfg)).collect();
            let passed = reports.iter().all(|r| r.passed());
            let doc = VerifyDoc {
                seed: cli.seed,
                samples: *samples,
                reports,
                passed,
            };
            Ok(emit(cli, &doc, render::verify, if passed { 0 } else { EXIT_VERIFY }))
        }
    }
}

fn cap_text(cli: &Cli, e: &BoundError) -> String {
    match cli.format {
        Format::Json => doc::to_json(&serde_json::json!({ "exceeds_cap": e.to_string() })),
        Format::Text => format!("{e}\n"),
    }
}
