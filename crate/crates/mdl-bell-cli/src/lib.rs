//! Command-line pipeline: builtins, bounds, the measurement-dependence
//! transform, strong-dependence summaries, quantum behaviors, the visibility
//! sweep CSV, and oracle verification.
//!
//! Exit codes: 0 success (and TIGHT verification), 1 malformed input,
//! 2 infeasible parameters, 3 verification found a gap, 4 enumeration cap
//! exceeded.

use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use mdl_bell::behavior::Behavior;
use mdl_bell::bounds::{algebraic_bound, local_bound};
use mdl_bell::error::Error;
use mdl_bell::functional::{builtin_functional, BellFunctional, BuiltinName, Kind};
use mdl_bell::json::{
    behavior_to_json, bound_report_to_json, functional_from_json, functional_to_json,
    verification_to_json, JsonValue, ParsedBehavior,
};
use mdl_bell::mdl::{
    check_feasible_box, md_transform, putz_local_bound, smd_local_bound, smd_quantum_value,
    sweep_to_csv, visibility_sweep, MdlParams,
};
use mdl_bell::oracle::verify_bounds;
use mdl_bell::quantum::{behavior_from_strategy, ghz_strategy, pm_strategy, NoisySpec};
use mdl_bell::scan::{workers_from_env, ScanOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_GAP: i32 = 3;
pub const EXIT_TOO_LARGE: i32 = 4;

#[derive(Parser)]
#[command(
    name = "mdl-bell",
    about = "Measurement-dependent Bell inequalities: bounds, transforms, quantum values, sweeps, and oracle verification",
    version
)]
struct Cli {
    /// Override the enumeration cap (number of scanned candidates).
    #[arg(long, global = true)]
    cap: Option<u128>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in functional as JSON.
    Builtin {
        /// One of: pm, pm_md, mermin, mermin_md, chsh, chsh_md.
        #[arg(long)]
        name: String,
        #[command(flatten)]
        params: XiEta,
    },
    /// Local and algebraic bounds of a functional.
    Bounds {
        /// Path to a functional JSON file.
        #[arg(long)]
        functional: String,
    },
    /// Apply the measurement-dependence coefficient transform.
    Transform {
        #[arg(long)]
        functional: String,
        #[arg(long)]
        xi: f64,
        #[arg(long)]
        eta: f64,
    },
    /// Strong measurement-dependence bounds, optionally with a quantum value.
    Smd {
        #[arg(long)]
        functional: String,
        #[arg(long)]
        xi: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        q: f64,
        /// Conditional behavior JSON to evaluate against the bounds.
        #[arg(long)]
        behavior: Option<String>,
    },
    /// Behavior of a built-in quantum strategy as JSON.
    Quantum {
        /// `pm` or `ghz`.
        #[arg(long)]
        strategy: String,
        /// Isotropic-noise visibility for `pm` (default 1).
        #[arg(long)]
        visibility: Option<f64>,
    },
    /// Critical-q table over visibilities and a xi grid (CSV).
    Curve {
        /// Comma-separated visibilities, e.g. `1.0,0.9,0.8`.
        #[arg(long, value_delimiter = ',')]
        v: Vec<f64>,
        /// Inclusive xi grid `start:stop:step`.
        #[arg(long = "xi-grid")]
        xi_grid: String,
    },
    /// Compare closed-form bounds against the exhaustive oracle.
    Verify {
        #[arg(long)]
        functional: String,
        #[arg(long)]
        xi: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        q: f64,
    },
}

#[derive(Args)]
struct XiEta {
    #[arg(long)]
    xi: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
}

/// Run the CLI against explicit argv and output sinks; returns the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_MALFORMED
                }
            }
        }
    };

    let mut opts = ScanOptions::default().with_workers(workers_from_env());
    if let Some(cap) = cli.cap {
        opts = opts.with_cap(cap);
    }

    match dispatch(cli.command, &opts) {
        Ok(Output { text, code }) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: EXIT_OK,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible(_)
        | Error::InfeasibleXi(_)
        | Error::InvalidParams(_)
        | Error::NonPositiveParams { .. }
        | Error::DegenerateDenominator(_) => EXIT_INFEASIBLE,
        Error::TooLarge { .. } => EXIT_TOO_LARGE,
        _ => EXIT_MALFORMED,
    }
}

fn read_file(path: &str) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {path}: {e}")))
}

fn load_functional(path: &str) -> Result<BellFunctional, Error> {
    functional_from_json(&read_file(path)?)
}

fn load_conditional_behavior(path: &str) -> Result<Behavior, Error> {
    match mdl_bell::json::behavior_from_json(&read_file(path)?)? {
        ParsedBehavior::Conditional(b) => Ok(b),
        ParsedBehavior::Joint(_) => Err(Error::KindMismatch {
            expected: "conditional",
            got: "joint",
        }),
    }
}

fn dispatch(command: Command, opts: &ScanOptions) -> Result<Output, Error> {
    match command {
        Command::Builtin { name, params } => {
            let name: BuiltinName = name.parse()?;
            let params = match (params.xi, params.eta) {
                (Some(xi), Some(eta)) => Some((xi, eta)),
                (None, None) => None,
                _ => return Err(Error::MissingParams("--xi and --eta go together")),
            };
            let f = builtin_functional(name, params)?;
            Ok(Output::ok(format!("{}\n", functional_to_json(&f).render())))
        }
        Command::Bounds { functional } => {
            let f = load_functional(&functional)?;
            let algebraic = algebraic_bound(&f);
            let mut fields = Vec::new();
            if f.kind() == Kind::Conditional {
                let local = local_bound(&f, opts)?;
                fields.push(("local", bound_report_to_json(&local)));
            }
            fields.push(("algebraic", bound_report_to_json(&algebraic)));
            Ok(Output::ok(format!("{}\n", JsonValue::Obj(fields).render())))
        }
        Command::Transform {
            functional,
            xi,
            eta,
        } => {
            let f = load_functional(&functional)?;
            let joint = md_transform(&f, xi, eta)?;
            Ok(Output::ok(format!(
                "{}\n",
                functional_to_json(&joint).render()
            )))
        }
        Command::Smd {
            functional,
            xi,
            eta,
            q,
            behavior,
        } => {
            let f = load_functional(&functional)?;
            if f.kind() != Kind::Conditional {
                return Err(Error::KindMismatch {
                    expected: "conditional",
                    got: "joint",
                });
            }
            let params = MdlParams::new(xi, eta, q)?;
            check_feasible_box(xi, eta, f.scenario().input_tuple_count())?;
            let beta_loc = local_bound(&f, opts)?.value;
            let beta_alg_tilde = f.max_coeff();
            let smd_local = smd_local_bound(&params, beta_alg_tilde, beta_loc);
            let putz = putz_local_bound(xi, eta, beta_loc);
            let mut fields = vec![
                ("smd_local", JsonValue::Num(smd_local)),
                ("putz", JsonValue::Num(putz)),
            ];
            if let Some(path) = behavior {
                let b = load_conditional_behavior(&path)?;
                let smd_quantum = smd_quantum_value(&f, &b, xi, eta)?;
                fields.push(("smd_quantum", JsonValue::Num(smd_quantum)));
                fields.push(("violated", JsonValue::Bool(smd_quantum > smd_local)));
            }
            Ok(Output::ok(format!("{}\n", JsonValue::Obj(fields).render())))
        }
        Command::Quantum {
            strategy,
            visibility,
        } => {
            let behavior = match strategy.as_str() {
                "pm" => {
                    let noise = NoisySpec::new(visibility.unwrap_or(1.0))?;
                    behavior_from_strategy(&pm_strategy(noise))?
                }
                "ghz" => {
                    if visibility.is_some() {
                        return Err(Error::InvalidParams(
                            "--visibility only applies to the pm strategy".into(),
                        ));
                    }
                    behavior_from_strategy(&ghz_strategy())?
                }
                other => return Err(Error::UnknownName(other.to_string())),
            };
            Ok(Output::ok(format!(
                "{}\n",
                behavior_to_json(&behavior).render()
            )))
        }
        Command::Curve { v, xi_grid } => {
            let grid = parse_grid(&xi_grid)?;
            let rows = visibility_sweep(&v, &grid, opts)?;
            Ok(Output::ok(sweep_to_csv(&rows)))
        }
        Command::Verify {
            functional,
            xi,
            eta,
            q,
        } => {
            let f = load_functional(&functional)?;
            let params = MdlParams::new(xi, eta, q)?;
            let report = verify_bounds(&f, &params, opts)?;
            let code = if report.flag() == "TIGHT" {
                EXIT_OK
            } else {
                EXIT_GAP
            };
            Ok(Output {
                text: format!("{}\n", verification_to_json(&report).render()),
                code,
            })
        }
    }
}

/// Parse `start:stop:step` into an inclusive grid.
fn parse_grid(text: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Malformed(format!(
            "grid must be start:stop:step, got `{text}`"
        )));
    }
    let parse = |s: &str| -> Result<f64, Error> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Malformed(format!("bad grid number `{s}`")))
    };
    let (start, stop, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if step <= 0.0 || stop < start {
        return Err(Error::Malformed(format!(
            "grid needs step > 0 and stop >= start, got `{text}`"
        )));
    }
    let mut grid = Vec::new();
    let mut k = 0u32;
    loop {
        let value = start + f64::from(k) * step;
        if value > stop + step * 1e-9 {
            break;
        }
        grid.push(value);
        k += 1;
        if k > 1_000_000 {
            return Err(Error::Malformed("grid has more than 1e6 points".into()));
        }
    }
    Ok(grid)
}
