//! Command-line front end. Every subcommand prints one JSON report (CSV for
//! `scan`) and exits 0 when all its checks pass, 1 on a numerical failure and
//! 2 on a usage error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grass::{self, LineSearch};
use crate::holo::{self, HoloMap};
use crate::qcore::Quaternion;
use crate::sampling;
use crate::slice::{catalog, SliceFunction};
use crate::suite::{self, Check};
use crate::surfaces::{self, HomoPoly, ScanBox};
use crate::twistor;
use crate::ocs;

pub const THREADS_VAR: &str = "SLICE_TWISTOR_THREADS";

#[derive(Parser, Debug)]
#[command(name = "slice-twistor", version, about = "Slice regular functions and their twistor lifts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Human-readable table instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Add the wall time to the report (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a slice function at a quaternion.
    Eval {
        #[arg(long = "fn")]
        func: String,
        /// `q0,q1,q2,q3`
        #[arg(long)]
        x: String,
    },
    /// Lift a slice function to CP3 at chart coordinates (u, v).
    Lift {
        #[arg(long = "fn")]
        func: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Test whether the lift of a function lies on a surface.
    Contains {
        #[arg(long)]
        surface: String,
        #[arg(long = "fn")]
        func: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = surfaces::CONTAINS_TOL)]
        tol: f64,
    },
    /// Count fibre intersections over a grid of quaternions (CSV).
    Scan {
        #[arg(long)]
        surface: String,
        /// `q0lo q0hi q1lo q1hi q2lo q2hi q3lo q3hi`
        #[arg(long = "box", num_args = 8, allow_negative_numbers = true)]
        region: Vec<f64>,
        /// One count for all axes or four.
        #[arg(long, num_args = 1..=4, default_values_t = [5])]
        res: Vec<usize>,
    },
    /// Six Plucker coordinates of the transform curve.
    Transform {
        #[arg(long = "fn")]
        func: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Search the transform curve for points fixed by the real structure.
    TwistorLines {
        #[arg(long = "fn")]
        func: String,
        /// `re_min re_max im_min im_max`
        #[arg(long = "box", num_args = 4, allow_negative_numbers = true, default_values_t = [-3.0, 3.0, -3.0, 3.0])]
        region: Vec<f64>,
        #[arg(long, default_value_t = 400)]
        grid: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Hermitian criterion for a transform of the form (A + Bv) times a line.
    AffineCheck {
        #[arg(long = "fn")]
        func: String,
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "0")]
        b: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Orthogonal complex structures.
    Ocs {
        #[command(subcommand)]
        command: OcsCommand,
    },
    /// Run the full verification battery.
    Suite {
        #[arg(long)]
        seed: u64,
        /// Only this criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Subcommand, Debug)]
pub enum OcsCommand {
    /// Check dg J^f = J_i dg at random points of the upper half-space.
    VerifyIntertwine {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Preimage of q under x(1-Ii)/2.
    Preimage {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Push the structure L_{I_x} forward along a slice function.
    Pushforward {
        #[arg(long = "fn")]
        func: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub result: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

enum Failure {
    Usage(String),
    Numeric(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return 2;
    }
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Scan { surface, region, res } => scan(surface, region, res).map(Emit::Text),
        cmd => dispatch(cmd).map(Emit::Report),
    };
    match outcome {
        Ok(Emit::Text(s)) => match write(&cli.out, &s) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Ok(Emit::Report(mut r)) => {
            if cli.out.timing {
                r.wall_time = Some(start.elapsed().as_secs_f64());
            }
            let text = if cli.out.pretty { pretty(&r) } else { to_json(&r) };
            if let Err(e) = write(&cli.out, &text) {
                eprintln!("error: {e}");
                return 2;
            }
            for c in r.checks.iter().filter(|c| !c.pass) {
                eprintln!("failed: {} (residual {:e}, tol {:e})", c.name, c.residual, c.tol);
            }
            if r.pass {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("failed: {e}");
            1
        }
    }
}

enum Emit {
    Report(RunReport),
    Text(String),
}

fn init_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("{THREADS_VAR} must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err(format!("{THREADS_VAR} must be positive"));
    }
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn write(out: &Output, text: &str) -> std::io::Result<()> {
    match &out.out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(r: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

fn pretty(r: &RunReport) -> String {
    let mut s = format!("{}  {}\n", r.command, if r.pass { "PASS" } else { "FAIL" });
    for c in &r.checks {
        let op = match c.bound {
            suite::Bound::Below => "<",
            suite::Bound::Above => ">",
        };
        s += &format!("  [{}] {:<52} {:>12.3e} {op} {:.1e}\n", if c.pass { "ok" } else { "!!" }, c.name, c.residual, c.tol);
    }
    s += &format!("  result: {}\n", r.result);
    if let Some(t) = r.wall_time {
        s += &format!("  wall time: {t:.3}s\n");
    }
    s
}

fn report(command: &str, config: Value, checks: Vec<Check>, result: Value) -> RunReport {
    let pass = checks.iter().all(|c| c.pass);
    RunReport { command: command.into(), config, checks, result, pass, wall_time: None }
}

fn read_source(arg: &str) -> std::result::Result<Value, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if Path::new(arg).exists() {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?
    } else {
        return Err(Failure::Usage(format!("{arg}: no such file")));
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

/// A file, inline JSON or the name of a catalog entry.
pub fn load_function(arg: &str) -> Result<SliceFunction> {
    if let Some((_, f)) = catalog::all().into_iter().find(|(n, _)| *n == arg) {
        return Ok(f);
    }
    let v = read_source(arg).map_err(|f| match f {
        Failure::Usage(m) => Error::Io(m),
        Failure::Numeric(e) => e,
    })?;
    SliceFunction::from_json(&v)
}

pub fn load_surface(arg: &str) -> Result<HomoPoly> {
    if let Some((_, p)) = surfaces::catalog::all().into_iter().find(|(n, _)| *n == arg) {
        return Ok(p);
    }
    let v = read_source(arg).map_err(|f| match f {
        Failure::Usage(m) => Error::Io(m),
        Failure::Numeric(e) => e,
    })?;
    HomoPoly::from_json(&v)
}

/// A constant expression such as `1+i`, `2i` or `-0.5`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let m = holo::parse(s)?;
    let (a, b) = (m.eval(Complex64::new(0.0, 0.0))?, m.eval(Complex64::new(1.0, 0.0))?);
    if a != b {
        return Err(Error::Syntax { offset: 0, message: format!("{s:?} is not a constant") });
    }
    Ok(a)
}

/// `q0,q1,q2,q3`.
pub fn parse_quaternion(s: &str) -> Result<Quaternion> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Syntax { offset: 0, message: format!("{s:?}: {e}") })?;
    match parts[..] {
        [a, b, c, d] => Ok(Quaternion::new(a, b, c, d)),
        _ => Err(Error::Syntax { offset: 0, message: format!("{s:?}: expected four components") }),
    }
}

fn cj(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn dispatch(cmd: &Command) -> std::result::Result<RunReport, Failure> {
    match cmd {
        Command::Eval { func, x } => {
            let f = load_function(func).map_err(usage)?;
            let x = parse_quaternion(x).map_err(usage)?;
            let y = f.eval(x)?;
            Ok(report("eval", json!({"fn": func, "x": x}), vec![], json!(y)))
        }
        Command::Lift { func, u, v } => {
            let f = load_function(func).map_err(usage)?;
            let (u, v) = (parse_complex(u).map_err(usage)?, parse_complex(v).map_err(usage)?);
            let p = twistor::lift(&f, u, v)?;
            let config = json!({"fn": func, "u": cj(u), "v": cj(v)});
            Ok(report("lift", config, vec![], json!(p)))
        }
        Command::Contains { surface, func, samples, seed, tol } => {
            let p = load_surface(surface).map_err(usage)?;
            let f = load_function(func).map_err(usage)?;
            let r = surfaces::contains_lift(&p, &f, *samples, *seed, *tol)?;
            let config = json!({"surface": surface, "fn": func, "samples": samples, "seed": seed, "tol": tol});
            let checks = vec![Check::below("lift lies on the surface", r.residual, *tol)];
            Ok(report("contains", config, checks, json!(r)))
        }
        Command::Transform { func, tol } => {
            let f = load_function(func).map_err(usage)?;
            let t = grass::transform(&f)?;
            let mut klein: f64 = 0.0;
            for k in 0..16 {
                let v = Complex64::new(-1.5 + 0.2 * k as f64, 0.25 + 0.1 * k as f64);
                if let Ok(p) = t.eval(v) {
                    klein = klein.max(p.klein_residual());
                }
            }
            let exprs: Vec<String> = t.xi.iter().map(HoloMap::to_string).collect();
            let constant: Option<Vec<Value>> = t.xi.iter().map(|m| m.as_const().map(cj)).collect();
            let result = json!({"xi": exprs, "constant": constant});
            let checks = vec![Check::below("Klein relation", klein, *tol)];
            Ok(report("transform", json!({"fn": func, "tol": tol}), checks, result))
        }
        Command::TwistorLines { func, region, grid, tol } => {
            let f = load_function(func).map_err(usage)?;
            let t = grass::transform(&f)?;
            let search = LineSearch { region: [region[0], region[1], region[2], region[3]], grid: *grid, tol: *tol };
            let lines = grass::find_twistor_lines(&t, &search);
            let checks = lines
                .iter()
                .map(|l| Check::below(format!("sigma-fixed at {}{:+}i", l.v.re, l.v.im), l.residual, *tol))
                .collect();
            let config = json!({"fn": func, "box": region, "grid": grid, "tol": tol});
            Ok(report("twistor-lines", config, checks, json!(lines)))
        }
        Command::AffineCheck { func, a, b, tol } => {
            let f = load_function(func).map_err(usage)?;
            let (a, b) = (parse_complex(a).map_err(usage)?, parse_complex(b).map_err(usage)?);
            let r = grass::check_affine_transform(&f, a, b, *tol)?;
            let checks = vec![
                Check::below("fit to (A + Bv) times a line", r.fit_residual, *tol),
                Check::below("hermitian product", r.hermitian.norm(), *tol),
            ];
            let config = json!({"fn": func, "a": cj(a), "b": cj(b), "tol": tol});
            Ok(report("affine-check", config, checks, json!(r)))
        }
        Command::Ocs { command } => ocs_cmd(command),
        Command::Suite { seed, only } => {
            let criteria = match only {
                Some(id) if (1..=suite::CRITERIA).contains(id) => vec![suite::run_criterion(*id, *seed)],
                Some(id) => return Err(Failure::Usage(format!("no criterion {id}"))),
                None => suite::run_suite(*seed),
            };
            let checks = criteria
                .iter()
                .flat_map(|c| c.checks.iter().map(move |k| Check { name: format!("{}. {}", c.id, k.name), ..k.clone() }))
                .collect();
            Ok(report("suite", json!({"seed": seed}), checks, json!(criteria)))
        }
        Command::Scan { .. } => unreachable!("scan emits CSV"),
    }
}

fn ocs_cmd(cmd: &OcsCommand) -> std::result::Result<RunReport, Failure> {
    match cmd {
        OcsCommand::VerifyIntertwine { samples, seed, tol } => {
            let mut rng = sampling::rng(*seed);
            let mut worst: f64 = 0.0;
            for _ in 0..*samples {
                let q = sampling::quaternion(&mut rng, 2.0);
                let q = Quaternion::new(q.q0, q.q1.abs().max(1e-3), q.q2, q.q3);
                worst = worst.max(ocs::verify_intertwine(q)?);
            }
            let config = json!({"samples": samples, "seed": seed, "tol": tol});
            let checks = vec![Check::below("dg J^f = J_i dg", worst, *tol)];
            Ok(report("ocs verify-intertwine", config, checks, json!({"max_residual": worst})))
        }
        OcsCommand::Preimage { q, tol } => {
            let q = parse_quaternion(q).map_err(usage)?;
            let x = ocs::preimage(q)?;
            let back = catalog::f0().eval_slice(&x)?;
            let checks = vec![Check::below("f0(x) = q", back.dist(q), *tol)];
            let result = json!({"x": x.recompose(), "coords": x});
            Ok(report("ocs preimage", json!({"q": q, "tol": tol}), checks, result))
        }
        OcsCommand::Pushforward { func, x, tol } => {
            let f = load_function(func).map_err(usage)?;
            let x = parse_quaternion(x).map_err(usage)?;
            let m = ocs::pushforward(&f, x)?;
            let checks = vec![Check::below("J^2 = -1, J orthogonal", m.invariant_residual(), *tol)];
            Ok(report("ocs pushforward", json!({"fn": func, "x": x, "tol": tol}), checks, json!(m)))
        }
    }
}

fn scan(surface: &str, region: &[f64], res: &[usize]) -> std::result::Result<String, Failure> {
    let p = load_surface(surface).map_err(usage)?;
    let res = match res {
        [n] => [*n; 4],
        [a, b, c, d] => [*a, *b, *c, *d],
        _ => return Err(Failure::Usage("--res takes one or four counts".into())),
    };
    let lo = [region[0], region[2], region[4], region[6]];
    let hi = [region[1], region[3], region[5], region[7]];
    let r = surfaces::discriminant_scan(&p, ScanBox { lo, hi }, res).map_err(|e| match e {
        Error::TooLarge { .. } | Error::Invalid(_) => usage(e),
        e => Failure::Numeric(e),
    })?;
    Ok(r.to_csv())
}
