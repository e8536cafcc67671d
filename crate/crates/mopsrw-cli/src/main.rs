//! Thin command line over the mopsrw library. Every subcommand parses exact
//! rational inputs, calls one library entry point, and emits deterministic
//! text, JSON, or CSV.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::traits::Zero;
use serde_json::Value;

use mopsrw::christoffel::{self, ChainKind};
use mopsrw::emit;
use mopsrw::error::{Error, Result};
use mopsrw::gaussborel::GaussBorel;
use mopsrw::hyper::{weight_eval, WeightKind};
use mopsrw::jacobi;
use mopsrw::kmcg;
use mopsrw::lu;
use mopsrw::pade;
use mopsrw::poly::Poly;
use mopsrw::rational::{fmt_rat, parse_rat, rat_to_f64};
use mopsrw::sim;
use mopsrw::stochastic::{self, Kind, RowBalance, SigmaKind};
use mopsrw::tuple::Tuple;
use mopsrw::uniform;

#[derive(Parser)]
#[command(
    name = "mopsrw",
    about = "Hypergeometric multiple orthogonal polynomials, their stochastic matrices, and the identities they satisfy, in exact arithmetic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Tuple "a,b,c,d" with slash rationals, e.g. 1/3,2/3,1/2,1
    #[arg(long)]
    tuple: String,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// text, json, or csv (subcommand dependent)
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Recurrence bands beta, alpha, gamma of the Jacobi matrix
    Jacobi {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
    /// Stochastic normalization of the type I or type II matrix
    Stochastic {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long = "type", default_value = "II")]
        kind: String,
        #[arg(long, default_value = "unity")]
        sigma: String,
    },
    /// Stochastic LU factors of a Markov matrix, or the Gauss-Borel factors
    /// of the moment matrix with --moments
    Factorize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long = "type", default_value = "II")]
        kind: String,
        #[arg(long)]
        moments: bool,
    },
    /// r-step transition probabilities, computed by the spectral and the
    /// matrix-power route and cross-checked
    Kmcg {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "type", default_value = "II")]
        kind: String,
    },
    /// Transition and first-return generating series
    Series {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        order: usize,
        #[arg(long = "type", default_value = "II")]
        kind: String,
    },
    /// Recurrent or transient, with delta = c + d - a - b - 1/2
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Steady vector pi_n = B^{(n)}(1) q^{(n)}(1) with partial sums
    Steady {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
    /// The twelve uniform tuples: list | weights | typeI | batunity
    Uniform {
        action: String,
        #[arg(long)]
        tuple: Option<String>,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Permuting Christoffel chains between uniform tuples
    Christoffel {
        #[arg(long)]
        chain: String,
        #[arg(long, default_value_t = 12)]
        terms: usize,
        #[arg(long)]
        basic: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Moment sequences; with --generalized, the eta moments by both routes
    Moments {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        generalized: bool,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        weight: u8,
    },
    /// Monte Carlo walks checked against exact transition probabilities
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long = "type", default_value = "II")]
        kind: String,
        #[arg(long, default_value = "unity")]
        sigma: String,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// truncation size; defaults to the smallest exact window
        #[arg(long)]
        states: Option<usize>,
    },
    /// Exact-identity suites; nonzero exit on the first counterexample
    Verify {
        suite: String,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Ratio asymptotics of the polynomial sequences
    Ratio {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        /// evaluation point x > 1 (slash rational) for the off-unity ratios
        #[arg(long)]
        x: Option<String>,
        /// csv column: qunity or bunity
        #[arg(long, default_value = "qunity")]
        which: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn parse_kind(s: &str) -> Result<Kind> {
    match s {
        "II" | "ii" | "2" => Ok(Kind::TypeII),
        "I" | "i" | "1" => Ok(Kind::TypeI),
        _ => Err(Error::Parse(format!("unknown chain type {s:?}; use I or II"))),
    }
}

fn parse_sigma(s: &str) -> Result<SigmaKind> {
    match s {
        "unity" => Ok(SigmaKind::Unity),
        "geometric" => Ok(SigmaKind::Geometric),
        _ => Err(Error::Parse(format!(
            "unknown sigma kind {s:?}; use unity or geometric"
        ))),
    }
}

fn write_out(out: &Option<PathBuf>, text: String) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fmt_poly(p: &Poly) -> String {
    let coeffs: Vec<String> = p.0.iter().map(fmt_rat).collect();
    format!("[{}]", coeffs.join(", "))
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Jacobi { common, n } => {
            let t = Tuple::parse(&common.tuple)?;
            let bands = jacobi::band_coefficients(&t, n);
            let text = match common.format.as_str() {
                "text" => {
                    if jacobi::toeplitz_deviation(&t, n.max(4)).is_empty() && n >= 3 {
                        format!(
                            "Toeplitz bands {}, {}, {}\n",
                            fmt_rat(bands.beta.last().unwrap()),
                            fmt_rat(bands.alpha.last().unwrap()),
                            fmt_rat(bands.gamma.last().unwrap()),
                        )
                    } else {
                        let mut s = String::from("n beta alpha gamma\n");
                        for i in 0..n {
                            let alpha = if i >= 1 {
                                fmt_rat(&bands.alpha[i - 1])
                            } else {
                                "-".into()
                            };
                            let gamma = if (1..n.saturating_sub(1)).contains(&i) {
                                fmt_rat(&bands.gamma[i - 1])
                            } else {
                                "-".into()
                            };
                            s.push_str(&format!("{i} {} {alpha} {gamma}\n", fmt_rat(&bands.beta[i])));
                        }
                        s
                    }
                }
                "json" => emit::to_text(&emit::envelope([
                    ("tuple", Value::String(t.to_string())),
                    ("n", Value::from(n)),
                    ("beta", emit::rats_value(&bands.beta)),
                    ("alpha", emit::rats_value(&bands.alpha)),
                    ("gamma", emit::rats_value(&bands.gamma)),
                ])),
                "csv" => {
                    let rows: Vec<(String, String)> = (0..n)
                        .map(|i| {
                            let alpha = if i >= 1 {
                                rat_to_f64(&bands.alpha[i - 1]).to_string()
                            } else {
                                String::new()
                            };
                            let gamma = if (1..n.saturating_sub(1)).contains(&i) {
                                rat_to_f64(&bands.gamma[i - 1]).to_string()
                            } else {
                                String::new()
                            };
                            (
                                i.to_string(),
                                format!("{},{alpha},{gamma}", rat_to_f64(&bands.beta[i])),
                            )
                        })
                        .collect();
                    emit::csv("n,beta,alpha,gamma", &rows)
                }
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            };
            write_out(&common.out, text)
        }
        Command::Stochastic {
            common,
            n,
            kind,
            sigma,
        } => {
            let t = Tuple::parse(&common.tuple)?;
            let sys = stochastic::normalized_system(&t, n, parse_kind(&kind)?, parse_sigma(&sigma)?)?;
            let text = match common.format.as_str() {
                "json" => emit::to_text(&emit::envelope_from(emit::system_value(&sys))),
                "text" => {
                    let mut s = format!("tuple {t}  type {}  sigma {}\n", kind, sigma);
                    for (i, b) in sys.row_balance.iter().enumerate() {
                        s.push_str(&format!(
                            "row {i}: {}  [{}]\n",
                            b,
                            sys.p.row(i)
                                .iter()
                                .map(fmt_rat)
                                .collect::<Vec<_>>()
                                .join(", ")
                        ));
                    }
                    s
                }
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            };
            write_out(&common.out, text)
        }
        Command::Factorize {
            common,
            n,
            kind,
            moments,
        } => {
            let t = Tuple::parse(&common.tuple)?;
            let text = if moments {
                let gb = GaussBorel::new(&t, n)?;
                match common.format.as_str() {
                    "json" | "text" => {
                        emit::to_text(&emit::envelope_from(emit::factorization_value(&gb, n)))
                    }
                    other => return Err(Error::Parse(format!("unknown format {other:?}"))),
                }
            } else {
                let sys = stochastic::stochastic_normalize(&t, n, parse_kind(&kind)?)?;
                let fac = lu::stochastic_lu(&sys)?;
                lu::reconstruction_check(&sys, &fac)?;
                match common.format.as_str() {
                    "json" | "text" => {
                        let mut v = emit::envelope_from(emit::lu_value(&fac));
                        if let Value::Object(map) = &mut v {
                            map.insert("tuple".into(), Value::String(t.to_string()));
                        }
                        emit::to_text(&v)
                    }
                    other => return Err(Error::Parse(format!("unknown format {other:?}"))),
                }
            };
            write_out(&common.out, text)
        }
        Command::Kmcg {
            common,
            n,
            m,
            r,
            kind,
        } => {
            let t = Tuple::parse(&common.tuple)?;
            let kind = parse_kind(&kind)?;
            let top = n.max(m);
            let gb = GaussBorel::new(&t, top + 2)?;
            let window = top + sim::up_span(kind) * r + 2;
            let sys = stochastic::stochastic_normalize(&t, window, kind)?;
            let mut table: Vec<Vec<mopsrw::Rat>> = Vec::with_capacity(n + 1);
            for row in 0..=n {
                let mut cells = Vec::with_capacity(m + 1);
                for col in 0..=m {
                    let spectral = kmcg::kmcg_transition(&gb, kind, row, col, r)?;
                    let power = kmcg::matrix_power_transition(&sys, row, col, r)?;
                    if spectral != power {
                        return Err(Error::Verify(format!(
                            "transition routes disagree at (n,m,r)=({row},{col},{r}): {} vs {}",
                            fmt_rat(&spectral),
                            fmt_rat(&power)
                        )));
                    }
                    cells.push(spectral);
                }
                table.push(cells);
            }
            let text = match common.format.as_str() {
                "json" => emit::to_text(&emit::envelope([
                    ("tuple", Value::String(t.to_string())),
                    ("kind", Value::String(emit::kind_str(kind).into())),
                    ("r", Value::from(r)),
                    ("table", emit::rows_value(&table)),
                ])),
                "text" => {
                    let mut s = format!("P^{r} entries, type {}\n", emit::kind_str(kind));
                    for (i, row) in table.iter().enumerate() {
                        s.push_str(&format!(
                            "{i}: [{}]\n",
                            row.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
                        ));
                    }
                    s
                }
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            };
            write_out(&common.out, text)
        }
        Command::Series {
            common,
            n,
            m,
            order,
            kind,
        } => {
            let t = Tuple::parse(&common.tuple)?;
            let kind = parse_kind(&kind)?;
            let window = n.max(m) + sim::up_span(kind) * order + 2;
            let sys = stochastic::stochastic_normalize(&t, window, kind)?;
            let ts = kmcg::generating_series(&sys, n, m, order)?;
            if n == m && !kmcg::first_return_identity_ok(&ts) {
                return Err(Error::Verify(format!(
                    "first-return identity fails at state {n}"
                )));
            }
            let text = match common.format.as_str() {
                "json" => emit::to_text(&emit::envelope([
                    ("tuple", Value::String(t.to_string())),
                    ("kind", Value::String(emit::kind_str(kind).into())),
                    ("series", emit::series_value(&ts)),
                ])),
                "text" => format!(
                    "P_{{{n}{m}}}(s) = [{}]\nF_{{{n}{m}}}(s) = [{}]\n",
                    ts.p.iter().map(fmt_rat).collect::<Vec<_>>().join(", "),
                    ts.f.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
                ),
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            };
            write_out(&common.out, text)
        }
        Command::Classify { common } => {
            let t = Tuple::parse(&common.tuple)?;
            let line = stochastic::classification_string(&t)?;
            let text = match common.format.as_str() {
                "text" => format!("{line}\n"),
                "json" => emit::to_text(&emit::envelope([
                    ("tuple", Value::String(t.to_string())),
                    ("classification", Value::String(line)),
                    ("delta", Value::String(fmt_rat(&t.delta()))),
                ])),
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            };
            write_out(&common.out, text)
        }
        Command::Steady { common, n } => {
            let t = Tuple::parse(&common.tuple)?;
            let pi = stochastic::steady_vector(&t, n);
            let sys = stochastic::stochastic_normalize(&t, n, Kind::TypeII)?;
            stochastic::steady_vector_check(&sys, &pi)?;
            let sums = stochastic::steady_partial_sums(&pi);
            let text = match common.format.as_str() {
                "json" => emit::to_text(&emit::envelope([
                    ("tuple", Value::String(t.to_string())),
                    ("pi", emit::rats_value(&pi)),
                    ("partialSums", emit::rats_value(&sums)),
                ])),
                "text" => {
                    let mut s = String::from("n pi partialSum\n");
                    for i in 0..n {
                        s.push_str(&format!("{i} {} {}\n", fmt_rat(&pi[i]), fmt_rat(&sums[i])));
                    }
                    s
                }
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            };
            write_out(&common.out, text)
        }
        Command::Uniform {
            action,
            tuple,
            n,
            out,
            format,
        } => {
            let text = run_uniform(&action, tuple.as_deref(), n, &format)?;
            write_out(&out, text)
        }
        Command::Christoffel {
            chain,
            terms,
            basic,
            out,
            format,
        } => {
            let kind = ChainKind::parse(&chain)?;
            let steps = christoffel::permuting_chain(kind);
            let mut lines = Vec::new();
            for step in &steps {
                christoffel::chain_step_check(step, terms)?;
                lines.push(format!(
                    "{} --C_{{{}}}--> {}  ok ({terms} moments)",
                    step.from,
                    fmt_rat(&step.alpha),
                    step.to
                ));
            }
            if basic {
                for step in christoffel::basic_steps() {
                    christoffel::basic_step_check(&step, terms)?;
                    lines.push(format!(
                        "{} --C_{{{},{}}}--> {}  ok ({terms} moments)",
                        step.from,
                        fmt_rat(&step.alpha1),
                        fmt_rat(&step.alpha2),
                        step.to
                    ));
                }
            }
            let text = match format.as_str() {
                "text" => format!("{}\n", lines.join("\n")),
                "json" => {
                    let steps_json: Vec<Value> = steps
                        .iter()
                        .map(|s| {
                            emit::object([
                                ("from", Value::String(s.from.to_string())),
                                ("alpha", emit::rat_value(&s.alpha)),
                                ("to", Value::String(s.to.to_string())),
                            ])
                        })
                        .collect();
                    emit::to_text(&emit::envelope([
                        ("chain", Value::String(chain.clone())),
                        ("steps", Value::Array(steps_json)),
                        ("verifiedMoments", Value::from(terms)),
                    ]))
                }
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            };
            write_out(&out, text)
        }
        Command::Moments {
            common,
            generalized,
            n,
            m,
            weight,
        } => {
            let t = Tuple::parse(&common.tuple)?;
            let text = if generalized {
                let direct = pade::eta_direct(&t, n, m, weight);
                let summed = pade::eta_karp_prilepkina(&t, n, m, weight)?;
                let diff = &direct - &summed;
                match common.format.as_str() {
                    "text" => format!(
                        "direct     {}\nsummation  {}\ndifference {}\n",
                        fmt_rat(&direct),
                        fmt_rat(&summed),
                        fmt_rat(&diff)
                    ),
                    "json" => emit::to_text(&emit::envelope([
                        ("tuple", Value::String(t.to_string())),
                        ("n", Value::from(n)),
                        ("m", Value::from(m)),
                        ("weight", Value::from(weight)),
                        ("direct", emit::rat_value(&direct)),
                        ("summation", emit::rat_value(&summed)),
                        ("difference", emit::rat_value(&diff)),
                    ])),
                    other => return Err(Error::Parse(format!("unknown format {other:?}"))),
                }
            } else {
                match common.format.as_str() {
                    "text" => {
                        let mut s = String::from("k rho1 rho2\n");
                        for k in 0..=n {
                            s.push_str(&format!(
                                "{k} {} {}\n",
                                fmt_rat(&t.rho1(k)),
                                fmt_rat(&t.rho2(k))
                            ));
                        }
                        s
                    }
                    "json" => {
                        let r1: Vec<_> = (0..=n).map(|k| t.rho1(k)).collect();
                        let r2: Vec<_> = (0..=n).map(|k| t.rho2(k)).collect();
                        emit::to_text(&emit::envelope([
                            ("tuple", Value::String(t.to_string())),
                            ("rho1", emit::rats_value(&r1)),
                            ("rho2", emit::rats_value(&r2)),
                        ]))
                    }
                    other => return Err(Error::Parse(format!("unknown format {other:?}"))),
                }
            };
            write_out(&common.out, text)
        }
        Command::Simulate {
            common,
            kind,
            sigma,
            start,
            steps,
            samples,
            seed,
            states,
        } => {
            let t = Tuple::parse(&common.tuple)?;
            let kind = parse_kind(&kind)?;
            let window = states.unwrap_or(start + sim::up_span(kind) * steps + 1);
            let system = stochastic::normalized_system(&t, window, kind, parse_sigma(&sigma)?)?;
            let cfg = sim::SimConfig {
                system,
                start,
                steps,
                samples,
                seed,
            };
            let rep = sim::simulate(&cfg)?;
            let text = match common.format.as_str() {
                "json" => {
                    let mut v = emit::envelope_from(emit::report_value(&rep));
                    if let Value::Object(map) = &mut v {
                        map.insert("tuple".into(), Value::String(t.to_string()));
                        map.insert("kind".into(), Value::String(emit::kind_str(kind).into()));
                        map.insert("seed".into(), Value::from(seed));
                    }
                    emit::to_text(&v)
                }
                "text" => {
                    let mut s = format!(
                        "samples {samples}, steps {steps}, start {start}, destroyed {} (exact {})\n",
                        rep.destroyed,
                        fmt_rat(&rep.exact_destroyed)
                    );
                    for (m_state, count) in rep.counts.iter().enumerate() {
                        if *count > 0 || !rep.exact[m_state].is_zero() {
                            s.push_str(&format!(
                                "state {m_state}: freq {:.6}  exact {}  z {:+.2}\n",
                                rep.frequency(m_state),
                                fmt_rat(&rep.exact[m_state]),
                                rep.z[m_state]
                            ));
                        }
                    }
                    s
                }
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            };
            write_out(&common.out, text)
        }
        Command::Verify { suite, n } => run_verify(&suite, n),
        Command::Ratio { common, n, x, which } => {
            let t = Tuple::parse(&common.tuple)?;
            let xr = match &x {
                Some(s) => Some(parse_rat(s)?),
                None => None,
            };
            let text = match common.format.as_str() {
                "text" | "json" => {
                    let rep = stochastic::ratio_report(&t, n, xr.as_ref())?;
                    match common.format.as_str() {
                        "text" => {
                            let mut s = format!(
                                "n {n}\n|q ratio - 27/8|  {:e}\n|B ratio - 8/27|  {:e}\n",
                                rep.q_unity_gap, rep.b_unity_gap
                            );
                            if let (Some(xv), Some(bg), Some(qg)) = (rep.x, rep.b_x_gap, rep.q_x_gap)
                            {
                                s.push_str(&format!(
                                    "at x = {xv}: |B ratio + kappa/F| {bg:e}, |q ratio - r_+| {qg:e}\n"
                                ));
                            }
                            s
                        }
                        _ => {
                            let mut pairs = vec![
                                ("tuple", Value::String(t.to_string())),
                                ("n", Value::from(n)),
                                ("qUnityGap", Value::from(rep.q_unity_gap)),
                                ("bUnityGap", Value::from(rep.b_unity_gap)),
                            ];
                            if let Some(xv) = rep.x {
                                pairs.push(("x", Value::from(xv)));
                                pairs.push(("bXGap", Value::from(rep.b_x_gap.unwrap())));
                                pairs.push(("qXGap", Value::from(rep.q_x_gap.unwrap())));
                            }
                            emit::to_text(&emit::envelope(pairs))
                        }
                    }
                }
                "csv" => {
                    let rows: Vec<(String, String)> = match which.as_str() {
                        "qunity" => (1..=n)
                            .map(|k| {
                                (
                                    k.to_string(),
                                    rat_to_f64(&stochastic::q_unity_ratio(&t, k)).to_string(),
                                )
                            })
                            .collect(),
                        "bunity" => {
                            let b = stochastic::b_at_unity(&t, n + 2);
                            (1..=n)
                                .map(|k| {
                                    (
                                        k.to_string(),
                                        rat_to_f64(&(&b[k + 1] / &b[k])).to_string(),
                                    )
                                })
                                .collect()
                        }
                        other => {
                            return Err(Error::Parse(format!(
                                "unknown ratio column {other:?}; use qunity or bunity"
                            )))
                        }
                    };
                    emit::csv("n,value", &rows)
                }
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            };
            write_out(&common.out, text)
        }
    }
}

fn run_uniform(action: &str, tuple: Option<&str>, n: usize, format: &str) -> Result<String> {
    let need_tuple = || -> Result<Tuple> {
        let s = tuple.ok_or_else(|| Error::Parse("this action needs --tuple".into()))?;
        Tuple::parse(s)
    };
    match action {
        "list" => {
            let mut s = String::new();
            for info in uniform::registry() {
                s.push_str(&format!(
                    "{}  {}  family {}  partner {}\n",
                    info.tuple, info.class, info.family, info.partner
                ));
            }
            Ok(s)
        }
        "weights" => {
            let t = need_tuple()?;
            let info = uniform::require(&t)?;
            match format {
                "csv" => {
                    let rows: Vec<(String, String)> = (1..n.max(2))
                        .map(|i| {
                            let x = i as f64 / n.max(2) as f64;
                            let w1 = weight_eval(&t, WeightKind::W1, x).unwrap_or(f64::NAN);
                            let w2 = weight_eval(&t, WeightKind::W2, x).unwrap_or(f64::NAN);
                            (format!("{x}"), format!("{w1},{w2}"))
                        })
                        .collect();
                    Ok(emit::csv("x,w1,w2", &rows))
                }
                "text" => {
                    let th = |f: &mopsrw::hyper::ThetaForm| {
                        let sign = if f.theta_sign >= 0 { "+" } else { "-" };
                        let tail = if f.inv_sqrt_one_minus_x {
                            " / sqrt(1-x)"
                        } else {
                            ""
                        };
                        format!(
                            "{} x^({}/3) (theta_+^{p} {sign} theta_-^{p}){tail}",
                            fmt_rat(&f.coef),
                            f.x_pow_thirds,
                            p = f.theta_pow
                        )
                    };
                    Ok(format!(
                        "tuple {t}  class {}  family {}\nW1(x) = {}\nW2(x) = {}\n",
                        info.class,
                        info.family,
                        th(&info.w1_form),
                        th(&info.w2_form)
                    ))
                }
                other => Err(Error::Parse(format!("unknown format {other:?}"))),
            }
        }
        "typeI" => {
            let t = need_tuple()?;
            let (a1, a2) = uniform::uniform_type_i(&t, n)?;
            let mut s = format!("type I linear-form coefficients for {t}\n");
            for m in 0..=n {
                s.push_str(&format!(
                    "m {m}: A1 {}  A2 {}\n",
                    fmt_poly(&a1[m]),
                    fmt_poly(&a2[m])
                ));
            }
            Ok(s)
        }
        "batunity" => {
            let t = need_tuple()?;
            let closed = uniform::b_at_unity_closed(&t, n + 1)?;
            let direct = stochastic::b_at_unity(&t, n + 1);
            let mut s = format!("B at unity for {t}\n");
            for k in 0..=n {
                if closed[k] != direct[k] {
                    return Err(Error::Verify(format!(
                        "closed form disagrees at n={k}: {} vs {}",
                        fmt_rat(&closed[k]),
                        fmt_rat(&direct[k])
                    )));
                }
                s.push_str(&format!("{k} {}\n", fmt_rat(&closed[k])));
            }
            Ok(s)
        }
        other => Err(Error::Parse(format!(
            "unknown uniform action {other:?}; use list, weights, typeI, or batunity"
        ))),
    }
}

fn verify_tuples() -> Vec<Tuple> {
    ["4/3,5/3,2,5/2", "1/3,2/3,1/2,1", "1,2,3,7/2"]
        .iter()
        .map(|s| Tuple::parse(s).unwrap())
        .collect()
}

fn run_verify(suite: &str, n: usize) -> Result<()> {
    let known = [
        "biorthogonality",
        "recurrence",
        "stochasticity",
        "lu",
        "kmcg",
        "steady",
        "uniform",
        "summations",
        "contiguous",
        "gauge",
        "christoffel",
        "moments",
    ];
    let run_one = |name: &str| -> Result<()> {
        verify_suite(name, n)?;
        println!("ok {name}");
        Ok(())
    };
    if suite == "all" {
        for name in known {
            run_one(name)?;
        }
        Ok(())
    } else if known.contains(&suite) {
        run_one(suite)
    } else {
        Err(Error::Parse(format!("unknown suite {suite:?}")))
    }
}

fn verify_suite(name: &str, n: usize) -> Result<()> {
    match name {
        "biorthogonality" => {
            for t in verify_tuples() {
                let gb = GaussBorel::new(&t, n + 1)?;
                if let Some((i, j)) = gb.biorthogonality_check(n) {
                    return Err(Error::Verify(format!(
                        "pairing of B^{{({i})}} and q^{{({j})}} is off for {t}"
                    )));
                }
            }
            Ok(())
        }
        "recurrence" => {
            for t in verify_tuples() {
                let gb = GaussBorel::new(&t, n + 3)?;
                jacobi::type_ii_recurrence_check(&gb, n)?;
                jacobi::type_i_recurrence_check(&gb, n)?;
                jacobi::lu3_reconstruction_check(&t, n)?;
            }
            Ok(())
        }
        "stochasticity" => {
            for t in verify_tuples() {
                for kind in [Kind::TypeII, Kind::TypeI] {
                    let sys = stochastic::stochastic_normalize(&t, n, kind)?;
                    let complete = lu::complete_rows(kind, n);
                    for i in 0..complete {
                        if sys.row_balance[i] != RowBalance::Stochastic {
                            return Err(Error::Verify(format!(
                                "row {i} of {t} ({kind:?}) is {}",
                                sys.row_balance[i]
                            )));
                        }
                    }
                }
            }
            Ok(())
        }
        "lu" => {
            for t in verify_tuples() {
                for kind in [Kind::TypeII, Kind::TypeI] {
                    let sys = stochastic::stochastic_normalize(&t, n, kind)?;
                    let fac = lu::stochastic_lu(&sys)?;
                    lu::reconstruction_check(&sys, &fac)?;
                    if !lu::factors_row_stochastic(&fac) {
                        return Err(Error::Verify(format!("factor row sums off for {t}")));
                    }
                }
            }
            Ok(())
        }
        "kmcg" => {
            for t in verify_tuples() {
                let gb = GaussBorel::new(&t, 8)?;
                for kind in [Kind::TypeII, Kind::TypeI] {
                    let sys = stochastic::stochastic_normalize(&t, 14, kind)?;
                    for state in 0..3 {
                        for target in 0..3 {
                            for r in [1usize, 4] {
                                let a = kmcg::kmcg_transition(&gb, kind, state, target, r)?;
                                let b = kmcg::matrix_power_transition(&sys, state, target, r)?;
                                if a != b {
                                    return Err(Error::Verify(format!(
                                        "routes disagree for {t} at ({state},{target},{r})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
            Ok(())
        }
        "steady" => {
            for s in ["1/3,2/3,1/2,1", "2/3,1/3,1/2,1"] {
                let t = Tuple::parse(s)?;
                let pi = stochastic::steady_vector(&t, n.max(4));
                let sys = stochastic::stochastic_normalize(&t, n.max(4), Kind::TypeII)?;
                stochastic::steady_vector_check(&sys, &pi)?;
            }
            Ok(())
        }
        "uniform" => {
            for info in uniform::registry() {
                for (i, j, _) in jacobi::toeplitz_deviation(&info.tuple, n.max(6)) {
                    if j != 0 {
                        return Err(Error::Verify(format!(
                            "band deviation off column 0 at ({i},{j}) for {}",
                            info.tuple
                        )));
                    }
                }
                let gb = GaussBorel::new(&info.tuple, 7)?;
                let (a1, a2) = uniform::uniform_type_i(&info.tuple, 6)?;
                for m in 0..=6 {
                    if a1[m] != gb.a1_poly(m) || a2[m] != gb.a2_poly(m) {
                        return Err(Error::Verify(format!(
                            "type I table row {m} off for {}",
                            info.tuple
                        )));
                    }
                }
            }
            Ok(())
        }
        "summations" => uniform::summation_identities_check(n),
        "contiguous" => uniform::contiguous_identities_check(n),
        "gauge" => {
            for info in uniform::registry() {
                let g = christoffel::gauge_solve(&info.tuple, n)?;
                let partner = uniform::require(&info.partner)?;
                if partner.family != info.family {
                    return Err(Error::Verify(format!(
                        "partner of {} sits in family {}",
                        info.tuple, partner.family
                    )));
                }
                let _ = g;
            }
            Ok(())
        }
        "christoffel" => {
            for kind in [ChainKind::Stochastic, ChainKind::SemiStochastic] {
                for step in christoffel::permuting_chain(kind) {
                    christoffel::chain_step_check(&step, n)?;
                }
            }
            for step in christoffel::basic_steps() {
                christoffel::basic_step_check(&step, n)?;
            }
            Ok(())
        }
        "moments" => {
            let t = Tuple::parse("1,3/2,5/2,3")?;
            for row in 0..=n.min(9) {
                for m in 0..=3usize {
                    for weight in [1u8, 2] {
                        let direct = pade::eta_direct(&t, row, m, weight);
                        let summed = pade::eta_karp_prilepkina(&t, row, m, weight)?;
                        if direct != summed {
                            return Err(Error::Verify(format!(
                                "eta routes disagree at (row,m,weight)=({row},{m},{weight})"
                            )));
                        }
                    }
                }
            }
            Ok(())
        }
        other => Err(Error::Parse(format!("unknown suite {other:?}"))),
    }
}
