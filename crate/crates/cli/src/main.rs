//! `logpot`: capacities, equilibrium measures, Green's functions,
//! Chebyshev/Fekete extremal objects, orthogonal-polynomial diagnostics,
//! and ergodic Jacobi statistics from the command line.
//!
//! Exit codes: 0 success, 2 validation failure, 3 solver failure.
//! Machine-parsable error codes go to stderr (E_SET_PARSE, E_SOLVE, ...).
//! All numeric output uses the shortest representation that round-trips
//! exactly to the same double.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;

use logpot::ergodic::{self, ErgodicFamily, FamilyKind};
use logpot::measure::DiscretizedMeasure;
use logpot::oprl::{self, JacobiParams};
use logpot::opuc::{self, VerblunskyParams};
use logpot::setgeom::IntervalUnion;
use logpot::{chebfek, equilibrium, suite};

#[derive(Parser)]
#[command(name = "logpot", version, about = "potential-theory toolkit for spectral problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Capacity C(E) of an interval union
    Capacity(SetArg),
    /// Equilibrium density on a grid, written as CSV
    Equilibrium {
        #[command(flatten)]
        set: SetArg,
        /// total number of grid points across the bands
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Green's function G_E at a list of complex points
    Green {
        #[command(flatten)]
        set: SetArg,
        /// JSON file or inline JSON: [[re, im], ...]
        #[arg(long)]
        points: String,
    },
    /// Minimax monic polynomial of the given degree
    Chebyshev {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        degree: usize,
        /// constrain all roots to E
        #[arg(long)]
        restricted: bool,
    },
    /// n-point Fekete set and the Fekete constant
    Fekete {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        n: usize,
    },
    /// The chain C <= ||T_n||^{1/n} <= ||T_n^R||^{1/n} <= zeta_{n+1}
    BoundsChain {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        degree: usize,
    },
    /// Regularity diagnostic of Jacobi coefficients against a set
    Regularity {
        /// JSON file or inline JSON: {"a": [...], "b": [...]}
        #[arg(long)]
        jacobi: String,
        #[command(flatten)]
        set: SetArg,
        /// comma-separated truncation sizes, e.g. 100,1000,10000
        #[arg(long)]
        n: String,
    },
    /// Zero counting measure of P_n as CSV (x, weight)
    Zeros {
        #[arg(long)]
        jacobi: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lebesgue measure of the low-mass set {x : mu[x-1/m, x+1/m] <= e^{-m eta}}
    StahlTotik {
        /// JSON file or inline JSON: {"nodes": [...], "weights": [...]}
        #[arg(long)]
        measure: String,
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        eta: f64,
    },
    /// Zeros of the degree-n Szego polynomial
    OpucZeros {
        /// JSON file or inline JSON: {"alpha": [[re, im], ...]}
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: usize,
    },
    /// Balayage density of the Phi_n zeros onto the circle, as CSV
    Balayage {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4096)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lyapunov exponent of an ergodic family at a complex point
    Lyapunov {
        #[command(flatten)]
        family: FamilyArgs,
        /// complex point, e.g. 3, 2+i, 0+0.0001i
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Density of states from pooled truncation eigenvalues, as CSV
    Dos {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Thouless-formula residuals at a list of points
    Thouless {
        #[command(flatten)]
        family: FamilyArgs,
        /// JSON file or inline JSON: [[re, im], ...]
        #[arg(long = "z-file")]
        z_file: String,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Run the acceptance or regression suite
    Suite {
        /// acceptance | regression
        name: String,
        /// print the regression payload instead of comparing
        #[arg(long, hide = true)]
        emit: bool,
    },
}

#[derive(Args)]
struct SetArg {
    /// interval union as a JSON file path or inline {"intervals": [[a,b], ...]}
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct FamilyArgs {
    /// free | anderson | am (almost Mathieu) | decaying | rotation
    #[arg(long)]
    family: Option<String>,
    /// JSON config {"kind": ..., "parameters": {...}, "seed": ...}
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    lambda: Option<f64>,
    /// frequency in radians, or the word "golden"
    #[arg(long)]
    freq: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// Anderson coupling interval, e.g. -1,1
    #[arg(long)]
    range: Option<String>,
    /// constant off-diagonal for the Anderson family
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// decay exponent for the decaying random family
    #[arg(long)]
    gamma: Option<f64>,
    /// disk radius for the rotation-invariant OPUC family
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A failure with the exit status and machine code it maps to.
struct Failure {
    code: &'static str,
    status: u8,
    message: String,
}

impl Failure {
    fn validation(code: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code,
            status: 2,
            message: message.into(),
        }
    }

    fn from_core(err: logpot::Error) -> Self {
        use logpot::Error::*;
        let status = match err {
            SolveFailed { .. } | ExchangeStall { .. } | NumericalFailure(_) => 3,
            _ => 2,
        };
        Failure {
            code: if status == 3 { "E_SOLVE" } else { "E_INPUT" },
            status,
            message: err.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("LOGPOT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => status,
        Err(f) => {
            eprintln!("{}: {}", f.code, f.message);
            ExitCode::from(f.status)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Capacity(set) => {
            let e = parse_set(&set.set)?;
            let cap = equilibrium::capacity(&e).map_err(Failure::from_core)?;
            println!("{cap}");
        }
        Command::Equilibrium { set, grid, out } => {
            let e = parse_set(&set.set)?;
            let eq = equilibrium::equilibrium(&e).map_err(Failure::from_core)?;
            let mut csv = String::from("x,value\n");
            let total_len = e.lebesgue();
            for &(a, b) in e.intervals() {
                let pts = ((grid as f64) * (b - a) / total_len).round().max(2.0) as usize;
                for q in 1..pts {
                    let x = a + (b - a) * q as f64 / pts as f64;
                    csv.push_str(&format!("{x},{}\n", eq.density(x)));
                }
            }
            emit(out.as_deref(), &csv)?;
        }
        Command::Green { set, points } => {
            let e = parse_set(&set.set)?;
            let pts = parse_points(&points)?;
            let eq = equilibrium::equilibrium(&e).map_err(Failure::from_core)?;
            let values: Vec<f64> = pts.iter().map(|&z| eq.green(z)).collect();
            println!(
                "{}",
                serde_json::json!({ "green": values, "capacity": eq.capacity })
            );
        }
        Command::Chebyshev {
            set,
            degree,
            restricted,
        } => {
            let e = parse_set(&set.set)?;
            let t = chebfek::chebyshev(&e, degree, restricted).map_err(Failure::from_core)?;
            println!(
                "{}",
                serde_json::json!({
                    "degree": t.degree,
                    "restricted": t.restricted,
                    "sup_norm": t.sup_norm,
                    "coefficients": t.coefficients,
                    "equioscillation_points": t.equioscillation_points,
                    "roots": t.roots,
                })
            );
        }
        Command::Fekete { set, n } => {
            let e = parse_set(&set.set)?;
            let f = chebfek::fekete(&e, n).map_err(Failure::from_core)?;
            println!(
                "{}",
                serde_json::json!({
                    "n": n,
                    "points": f.points,
                    "zeta": f.zeta,
                    "grad_norm": f.grad_norm,
                })
            );
        }
        Command::BoundsChain { set, degree } => {
            let e = parse_set(&set.set)?;
            let c = chebfek::bounds_chain(&e, degree).map_err(Failure::from_core)?;
            println!(
                "{}",
                serde_json::json!({
                    "degree": degree,
                    "capacity": c.capacity,
                    "cheb_norm_root": c.cheb_norm_root,
                    "restricted_norm_root": c.restricted_norm_root,
                    "zeta_next": c.zeta_next,
                    "holds": c.holds(1e-6),
                })
            );
        }
        Command::Regularity { jacobi, set, n } => {
            let j = parse_jacobi(&jacobi)?;
            let e = parse_set(&set.set)?;
            let n_list = parse_n_list(&n)?;
            let rep =
                oprl::regularity_diagnostic(&j, &e, &n_list).map_err(Failure::from_core)?;
            println!(
                "{}",
                serde_json::json!({
                    "gamma": rep.gamma,
                    "ks": rep.ks,
                    "capacity": rep.capacity,
                    "extrapolated": rep.extrapolated,
                    "verdict": rep.verdict.to_string(),
                    "margin": rep.margin,
                })
            );
        }
        Command::Zeros { jacobi, n, out } => {
            let j = parse_jacobi(&jacobi)?;
            if n == 0 || n > j.len() {
                return Err(Failure::validation(
                    "E_ARG",
                    format!("n = {n} outside the coefficient range 1..={}", j.len()),
                ));
            }
            let nu = oprl::zero_counting(&j, n);
            let w = 1.0 / n as f64;
            let mut csv = String::from("x,value\n");
            for &x in &nu.points {
                csv.push_str(&format!("{x},{w}\n"));
            }
            emit(out.as_deref(), &csv)?;
        }
        Command::StahlTotik {
            measure,
            set,
            m,
            eta,
        } => {
            let mu = parse_measure(&measure)?;
            let e = parse_set(&set.set)?;
            if m == 0 || !(eta > 0.0) {
                return Err(Failure::validation("E_ARG", "need m >= 1 and eta > 0"));
            }
            let bad = oprl::stahl_totik_scan(&mu, &e, m, eta);
            println!("{bad}");
        }
        Command::OpucZeros { alpha, n } => {
            let v = parse_alpha(&alpha)?;
            if n > v.len() {
                return Err(Failure::validation(
                    "E_ARG",
                    format!("n = {n} exceeds the {} stored coefficients", v.len()),
                ));
            }
            let zs = opuc::opuc_zeros(&v, n).map_err(Failure::from_core)?;
            let pairs: Vec<(f64, f64)> = zs.iter().map(|z| (z.re, z.im)).collect();
            println!("{}", serde_json::json!({ "zeros": pairs }));
        }
        Command::Balayage {
            alpha,
            n,
            grid,
            out,
        } => {
            let v = parse_alpha(&alpha)?;
            if n > v.len() {
                return Err(Failure::validation(
                    "E_ARG",
                    format!("n = {n} exceeds the {} stored coefficients", v.len()),
                ));
            }
            let zs = opuc::opuc_zeros(&v, n).map_err(Failure::from_core)?;
            let res = opuc::balayage(&zs, grid).map_err(Failure::from_core)?;
            let mut csv = String::from("theta,value\n");
            for (&t, &f) in res.thetas.iter().zip(&res.density) {
                csv.push_str(&format!("{t},{f}\n"));
            }
            emit(out.as_deref(), &csv)?;
            eprintln!(
                "max balayage moment residual (k <= 8): {:e}",
                res.moment_residuals
                    .iter()
                    .cloned()
                    .fold(0.0f64, f64::max)
            );
        }
        Command::Lyapunov {
            family,
            z,
            n,
            samples,
        } => {
            let fam = build_family(&family)?;
            let z = parse_complex(&z)?;
            let (gamma, stderr) =
                ergodic::lyapunov(&fam, z, n, samples).map_err(Failure::from_core)?;
            println!(
                "{}",
                serde_json::json!({ "gamma": gamma, "stderr": stderr, "n": n, "samples": samples })
            );
        }
        Command::Dos {
            family,
            n,
            samples,
            out,
        } => {
            let fam = build_family(&family)?;
            let dos =
                ergodic::density_of_states(&fam, n, samples).map_err(Failure::from_core)?;
            let mut csv = String::from("x,value\n");
            for (&x, &w) in dos.nodes().iter().zip(dos.weights()) {
                csv.push_str(&format!("{x},{w}\n"));
            }
            emit(out.as_deref(), &csv)?;
        }
        Command::Thouless {
            family,
            z_file,
            n,
            samples,
        } => {
            let fam = build_family(&family)?;
            let zs = parse_points(&z_file)?;
            let rep =
                ergodic::thouless_check(&fam, &zs, n, samples).map_err(Failure::from_core)?;
            let per: Vec<serde_json::Value> = rep
                .per_point
                .iter()
                .map(|(z, r)| serde_json::json!({ "z": [z.re, z.im], "residual": r }))
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "max_residual": rep.max_residual,
                    "a_geometric_mean": rep.a_geometric_mean,
                    "per_point": per,
                })
            );
        }
        Command::Suite { name, emit } => return run_suite(&name, emit),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_suite(name: &str, emit_payload: bool) -> Result<ExitCode, Failure> {
    match name {
        "acceptance" => {
            let results = suite::run_all();
            let mut all_pass = true;
            for r in &results {
                println!("{}", r.line());
                all_pass &= r.pass;
            }
            println!(
                "{} / {} criteria passed",
                results.iter().filter(|r| r.pass).count(),
                results.len()
            );
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        "regression" => {
            let current = serde_json::to_string_pretty(&suite::regression_payload())
                .expect("payload serializes");
            if emit_payload {
                println!("{current}");
                return Ok(ExitCode::SUCCESS);
            }
            let golden = include_str!("../golden/regression.json");
            if current.trim() == golden.trim() {
                println!("regression: byte-identical to golden");
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("E_REGRESSION: output differs from the golden file");
                println!("{current}");
                Ok(ExitCode::from(1))
            }
        }
        other => Err(Failure::validation(
            "E_ARG",
            format!("unknown suite '{other}' (expected acceptance | regression)"),
        )),
    }
}

/// Inline JSON (starts with '{' or '[') or a file path.
fn read_payload(arg: &str, code: &'static str) -> Result<String, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg)
        .map_err(|e| Failure::validation(code, format!("cannot read {arg}: {e}")))
}

fn parse_set(arg: &str) -> Result<IntervalUnion, Failure> {
    let payload = read_payload(arg, "E_SET_PARSE")?;
    serde_json::from_str(&payload)
        .map_err(|e| Failure::validation("E_SET_PARSE", e.to_string()))
}

fn parse_jacobi(arg: &str) -> Result<JacobiParams, Failure> {
    let payload = read_payload(arg, "E_JACOBI_PARSE")?;
    #[derive(Deserialize)]
    struct Raw {
        a: Vec<f64>,
        b: Vec<f64>,
    }
    let raw: Raw = serde_json::from_str(&payload)
        .map_err(|e| Failure::validation("E_JACOBI_PARSE", e.to_string()))?;
    JacobiParams::new(raw.a, raw.b)
        .map_err(|e| Failure::validation("E_JACOBI_PARSE", e.to_string()))
}

fn parse_alpha(arg: &str) -> Result<VerblunskyParams, Failure> {
    let payload = read_payload(arg, "E_ALPHA_PARSE")?;
    VerblunskyParams::from_json(&payload)
        .map_err(|e| Failure::validation("E_ALPHA_PARSE", e.to_string()))
}

fn parse_measure(arg: &str) -> Result<DiscretizedMeasure, Failure> {
    let payload = read_payload(arg, "E_MEASURE_PARSE")?;
    serde_json::from_str(&payload)
        .map_err(|e| Failure::validation("E_MEASURE_PARSE", e.to_string()))
}

fn parse_points(arg: &str) -> Result<Vec<Complex64>, Failure> {
    let payload = read_payload(arg, "E_POINTS_PARSE")?;
    let raw: Vec<(f64, f64)> = serde_json::from_str(&payload)
        .map_err(|e| Failure::validation("E_POINTS_PARSE", e.to_string()))?;
    Ok(raw.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

fn parse_n_list(arg: &str) -> Result<Vec<usize>, Failure> {
    arg.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| Failure::validation("E_ARG", format!("bad n '{s}': {e}")))
        })
        .collect()
}

/// Accepts "3", "-1.5", "2+i", "2-0.5i", "0+0.0001i", "1.5i".
fn parse_complex(arg: &str) -> Result<Complex64, Failure> {
    let s: String = arg.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Failure::validation("E_ARG", format!("cannot parse complex number '{arg}'"));
    if let Ok(re) = s.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    if let Some(im_part) = s.strip_suffix('i') {
        // find the split between real and imaginary parts: the last +/-
        // that is not an exponent sign and not the leading sign
        let bytes = im_part.as_bytes();
        let mut split = None;
        for (i, &c) in bytes.iter().enumerate().skip(1) {
            if (c == b'+' || c == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E' {
                split = Some(i);
            }
        }
        let (re_str, im_str) = match split {
            Some(i) => (&im_part[..i], &im_part[i..]),
            None => ("0", im_part),
        };
        let re: f64 = if re_str.is_empty() {
            0.0
        } else {
            re_str.parse().map_err(|_| bad())?
        };
        let im: f64 = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse().map_err(|_| bad())?,
        };
        return Ok(Complex64::new(re, im));
    }
    Err(bad())
}

#[derive(Deserialize)]
struct FamilyConfig {
    kind: String,
    #[serde(default)]
    parameters: serde_json::Value,
    #[serde(default)]
    seed: u64,
}

fn build_family(args: &FamilyArgs) -> Result<ErgodicFamily, Failure> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Failure::validation("E_CONFIG_PARSE", format!("cannot read {path:?}: {e}"))
        })?;
        let cfg: FamilyConfig = serde_json::from_str(&text)
            .map_err(|e| Failure::validation("E_CONFIG_PARSE", e.to_string()))?;
        return family_from_config(&cfg);
    }
    let name = args
        .family
        .as_deref()
        .ok_or_else(|| Failure::validation("E_ARG", "need --family or --config"))?;
    let freq = match args.freq.as_deref() {
        Some("golden") | None => ErgodicFamily::golden_frequency(),
        Some(v) => v
            .parse::<f64>()
            .map_err(|e| Failure::validation("E_ARG", format!("bad --freq: {e}")))?,
    };
    let fam = match name {
        "free" => ErgodicFamily::free(),
        "anderson" => {
            let (lo, hi) = match &args.range {
                Some(r) => parse_range(r)?,
                None => (-1.0, 1.0),
            };
            ErgodicFamily {
                kind: FamilyKind::Anderson {
                    a: args.a,
                    b_lo: lo,
                    b_hi: hi,
                },
                seed: args.seed,
            }
        }
        "am" | "almost_mathieu" => ErgodicFamily {
            kind: FamilyKind::AlmostMathieu {
                lambda: args.lambda.unwrap_or(4.0),
                freq,
                theta: args.theta,
            },
            seed: args.seed,
        },
        "decaying" | "decaying_random" => ErgodicFamily {
            kind: FamilyKind::DecayingRandom {
                lambda: args.lambda.unwrap_or(1.0),
                gamma: args.gamma.unwrap_or(0.5),
            },
            seed: args.seed,
        },
        "rotation" | "rotation_opuc" => ErgodicFamily {
            kind: FamilyKind::RotationOpuc {
                radius: args.radius.unwrap_or(0.5),
            },
            seed: args.seed,
        },
        other => {
            return Err(Failure::validation(
                "E_ARG",
                format!("unknown family '{other}'"),
            ))
        }
    };
    Ok(fam)
}

fn family_from_config(cfg: &FamilyConfig) -> Result<ErgodicFamily, Failure> {
    let p = &cfg.parameters;
    let get = |key: &str| p.get(key).and_then(|v| v.as_f64());
    let kind = match cfg.kind.as_str() {
        "free" => FamilyKind::Anderson {
            a: 1.0,
            b_lo: 0.0,
            b_hi: 0.0,
        },
        "anderson" => {
            let range = p
                .get("range")
                .and_then(|v| v.as_array())
                .and_then(|a| Some((a.first()?.as_f64()?, a.get(1)?.as_f64()?)))
                .unwrap_or((-1.0, 1.0));
            FamilyKind::Anderson {
                a: get("a").unwrap_or(1.0),
                b_lo: range.0,
                b_hi: range.1,
            }
        }
        "almost_mathieu" => {
            let freq = match p.get("freq") {
                Some(serde_json::Value::String(s)) if s == "golden" => {
                    ErgodicFamily::golden_frequency()
                }
                Some(v) => v.as_f64().ok_or_else(|| {
                    Failure::validation("E_CONFIG_PARSE", "freq must be a number or \"golden\"")
                })?,
                None => ErgodicFamily::golden_frequency(),
            };
            FamilyKind::AlmostMathieu {
                lambda: get("lambda").unwrap_or(4.0),
                freq,
                theta: get("theta").unwrap_or(0.0),
            }
        }
        "decaying_random" => FamilyKind::DecayingRandom {
            lambda: get("lambda").unwrap_or(1.0),
            gamma: get("gamma").unwrap_or(0.5),
        },
        "rotation_opuc" => FamilyKind::RotationOpuc {
            radius: get("radius").unwrap_or(0.5),
        },
        other => {
            return Err(Failure::validation(
                "E_CONFIG_PARSE",
                format!("unknown kind '{other}'"),
            ))
        }
    };
    Ok(ErgodicFamily {
        kind,
        seed: cfg.seed,
    })
}

fn parse_range(arg: &str) -> Result<(f64, f64), Failure> {
    let parts: Vec<&str> = arg.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::validation("E_ARG", "range must be lo,hi"));
    }
    let lo = parts[0]
        .trim()
        .parse::<f64>()
        .map_err(|e| Failure::validation("E_ARG", format!("bad range: {e}")))?;
    let hi = parts[1]
        .trim()
        .parse::<f64>()
        .map_err(|e| Failure::validation("E_ARG", format!("bad range: {e}")))?;
    Ok((lo, hi))
}

/// Write to stdout, or atomically (temp file + rename) to the given path.
fn emit(out: Option<&Path>, content: &str) -> CmdResult {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().unwrap_or_else(|| Path::new("."));
            let tmp = dir.join(format!(
                ".{}.tmp.{}",
                path.file_name()
                    .map(|s| s.to_string_lossy().to_string())
                    .unwrap_or_else(|| "out".into()),
                std::process::id()
            ));
            let write = || -> std::io::Result<()> {
                let mut f = std::fs::File::create(&tmp)?;
                f.write_all(content.as_bytes())?;
                f.sync_all()?;
                std::fs::rename(&tmp, path)?;
                Ok(())
            };
            write().map_err(|e| {
                let _ = std::fs::remove_file(&tmp);
                Failure::validation("E_IO", format!("cannot write {path:?}: {e}"))
            })
        }
    }
}
