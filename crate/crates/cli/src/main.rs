use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coulomb_core::special::DEFAULT_MAX_ABS_X;
use coulomb_core::{
    d_poly, poly_zeros_d, poly_zeros_r, r_explicit, r_poly, run_suite, trace_zero, verdict, Axis, CheckReport,
    CoulombF, CoulombParams, Domain, Error, EvalResult, Grid, Phi, Polynomial, Suite, Target, Varphi, Verdict,
    ZeroFinder,
};
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_VIOLATION: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "coulomb", version, about = "Regular Coulomb wave functions, their zeros and polynomials")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
enum Function {
    #[value(name = "phi")]
    #[serde(rename = "phi")]
    Phi,
    #[value(name = "varphi")]
    #[serde(rename = "varphi")]
    Varphi,
    #[value(name = "F")]
    #[serde(rename = "F")]
    F,
    #[value(name = "Fprime")]
    #[serde(rename = "Fprime")]
    FPrime,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum Sign {
    Pos,
    Neg,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum TargetArg {
    Varphi,
    Fprime,
    Dini,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum AxisArg {
    Ell,
    Eta,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate phi, varphi, F or F' at one point.
    Eval {
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        ell: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        eta: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, value_enum, default_value_t = Function::F)]
        function: Function,
    },
    /// First zeros on one half-line, ordered from the origin.
    Zeros {
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        ell: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        eta: f64,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Sign::Pos)]
        sign: Sign,
        #[arg(long, value_enum, default_value_t = TargetArg::Varphi)]
        target: TargetArg,
        /// H in xφ' + Hφ, for --target dini.
        #[arg(long = "H", value_parser = parse_real, allow_hyphen_values = true)]
        h: Option<f64>,
    },
    /// Follow the k-th positive zero while ℓ or η varies.
    Trace {
        #[arg(long, value_enum)]
        axis: AxisArg,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        ell: Option<f64>,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        eta: Option<f64>,
    },
    /// Coefficients (ascending degree) and zeros of R_n, or of D_n with --H.
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        ell: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        eta: f64,
        /// Build R_n from the closed hypergeometric form.
        #[arg(long)]
        explicit: bool,
        #[arg(long = "H", value_parser = parse_real, allow_hyphen_values = true)]
        h: Option<f64>,
    },
    /// Run a property suite and report one line per claim.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// "default" or the path of a JSON grid file.
        #[arg(long, default_value = "default")]
        grid: String,
    },
}

/// Decimal or "p/q".
fn parse_real(s: &str) -> Result<f64, String> {
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
            let q: i64 = q.trim().parse().map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
            if q == 0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            p as f64 / q as f64
        }
        None => s.trim().parse::<f64>().map_err(|e| format!("bad number {s:?}: {e}"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Violation(_)) { EXIT_VIOLATION } else { EXIT_DATA };
        Self { code, message: format!("{}: {e}", error_name(&e)) }
    }
}

fn error_name(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

/// Command output plus the exit code it implies.
struct Outcome {
    record: Value,
    csv: String,
    code: u8,
}

fn record(command: &str, inputs: Value, results: Value, diagnostics: Value) -> Value {
    json!({
        "schema_version": "1",
        "command": command,
        "inputs": inputs,
        "results": results,
        "diagnostics": diagnostics,
    })
}

fn diagnostics(terms: Vec<usize>, errs: Vec<f64>, warnings: &[String]) -> Value {
    json!({ "terms_used": terms, "err_bounds": errs, "warnings": warnings })
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

/// Evaluation window from COULOMB_MAX_X, with a warning when it is raised.
fn domain(warnings: &mut Vec<String>) -> Result<Domain, Failure> {
    let Ok(raw) = std::env::var("COULOMB_MAX_X") else {
        return Ok(Domain::default());
    };
    let v: f64 = raw.trim().parse().map_err(|_| Failure::usage(format!("COULOMB_MAX_X={raw:?} is not a number")))?;
    let d = Domain::new(v).map_err(|e| Failure::usage(format!("COULOMB_MAX_X: {e}")))?;
    if v > DEFAULT_MAX_ABS_X {
        warnings.push(format!(
            "COULOMB_MAX_X={v} exceeds the certified window |x| <= {DEFAULT_MAX_ABS_X}; results there are uncertified"
        ));
    }
    Ok(d)
}

fn params(ell: f64, eta: f64) -> Result<CoulombParams, Failure> {
    Ok(CoulombParams::new(ell, eta)?)
}

fn cmd_eval(ell: f64, eta: f64, x: f64, function: Function) -> Result<Outcome, Failure> {
    let mut warnings = Vec::new();
    let d = domain(&mut warnings)?;
    let p = params(ell, eta)?;
    let r: EvalResult = match function {
        Function::Phi => Phi::new(&p, d)?.value(x)?,
        Function::Varphi => Varphi::new(&p, d)?.value(x)?,
        Function::F => CoulombF::new(&p, d)?.value(x)?,
        Function::FPrime => CoulombF::new(&p, d)?.derivative(x)?,
    };
    let inputs = json!({ "ell": ell, "eta": eta, "x": x, "function": function });
    let results = json!({ "value": r.value, "abs_err_bound": r.abs_err_bound });
    let csv = format!(
        "function,ell,eta,x,value,abs_err_bound\n{},{},{},{},{},{}\n",
        serde_json::to_value(function).unwrap().as_str().unwrap(),
        num(ell),
        num(eta),
        num(x),
        num(r.value),
        num(r.abs_err_bound)
    );
    Ok(Outcome {
        record: record("eval", inputs, results, diagnostics(vec![r.terms_used], vec![r.abs_err_bound], &warnings)),
        csv,
        code: 0,
    })
}

fn cmd_zeros(
    ell: f64,
    eta: f64,
    count: usize,
    sign: Sign,
    target: TargetArg,
    h: Option<f64>,
) -> Result<Outcome, Failure> {
    let mut warnings = Vec::new();
    let d = domain(&mut warnings)?;
    let p = params(ell, eta)?;
    let t = match (target, h) {
        (TargetArg::Varphi, None) => Target::Varphi,
        (TargetArg::Fprime, None) => Target::FPrime,
        (TargetArg::Dini, Some(h)) => Target::Dini(h),
        (TargetArg::Dini, None) => return Err(Failure::usage("--target dini needs --H")),
        (_, Some(_)) => return Err(Failure::usage("--H only applies to --target dini")),
    };
    // Negative zeros are positive zeros with η reflected.
    let (q, s) = match sign {
        Sign::Pos => (p, 1.0),
        Sign::Neg => (p.reflected(), -1.0),
    };
    let finder = ZeroFinder::new(&q, t, d)?;
    let set = finder.zeros(count)?;
    let mut zeros = Vec::new();
    let mut residuals = Vec::new();
    let mut errs = Vec::new();
    for &z in &set.zeros {
        let (v, e) = finder.eval(z)?;
        zeros.push(s * z);
        residuals.push(v.abs());
        errs.push(e);
    }
    if set.truncated {
        warnings.push(format!("only {} of {count} zeros found within |x| <= {}", set.len(), d.max_abs_x));
    }
    let inputs = json!({ "ell": ell, "eta": eta, "count": count, "sign": sign, "target": target, "H": h });
    let results = json!({ "zeros": zeros, "residuals": residuals, "truncated": set.truncated, "tol": set.tol });
    let mut csv = String::from("index,zero,residual\n");
    for (i, (z, r)) in zeros.iter().zip(&residuals).enumerate() {
        let _ = writeln!(csv, "{},{},{}", i + 1, num(*z), num(*r));
    }
    Ok(Outcome {
        record: record("zeros", inputs, results, diagnostics(Vec::new(), errs, &warnings)),
        csv,
        code: if set.truncated { EXIT_DATA } else { 0 },
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_trace(
    axis: AxisArg,
    from: f64,
    to: f64,
    steps: usize,
    k: usize,
    ell: Option<f64>,
    eta: Option<f64>,
) -> Result<Outcome, Failure> {
    let (p0, ax) = match (axis, ell, eta) {
        (AxisArg::Ell, _, Some(eta)) => (params(from, eta)?, Axis::Ell),
        (AxisArg::Eta, Some(ell), _) => (params(ell, from)?, Axis::Eta),
        (AxisArg::Ell, _, None) => return Err(Failure::usage("--axis ell needs a fixed --eta")),
        (AxisArg::Eta, None, _) => return Err(Failure::usage("--axis eta needs a fixed --ell")),
    };
    let t = trace_zero(&p0, ax, (from, to), steps, k)?;
    let ok: Vec<bool> = (0..t.values.len()).map(|i| i == 0 || t.continuity[i - 1]).collect();
    let mut warnings = Vec::new();
    if !t.continuity_ok {
        warnings.push("continuity bound exceeded between some grid points".to_string());
    }
    let inputs = json!({ "axis": axis, "from": from, "to": to, "steps": steps, "k": k, "ell": ell, "eta": eta });
    let results = json!({
        "axis_value": t.grid,
        "zero_value": t.values,
        "continuity_ok": ok,
        "monotone_increasing": t.monotone_increasing,
        "min_forward_difference": t.min_forward_difference,
    });
    let mut csv = String::from("axis_value,zero_value,continuity_ok\n");
    for ((a, z), c) in t.grid.iter().zip(&t.values).zip(&ok) {
        let _ = writeln!(csv, "{},{},{}", num(*a), num(*z), c);
    }
    Ok(Outcome {
        record: record("trace", inputs, results, diagnostics(Vec::new(), Vec::new(), &warnings)),
        csv,
        code: 0,
    })
}

fn cmd_poly(n: usize, ell: f64, eta: f64, explicit: bool, h: Option<f64>) -> Result<Outcome, Failure> {
    let p = params(ell, eta)?;
    let (poly, zeros): (Polynomial, Vec<f64>) = match (h, explicit) {
        (Some(_), true) => return Err(Failure::usage("--explicit applies to R_n only")),
        (Some(h), false) => (d_poly(&p, n, h)?, poly_zeros_d(&p, n, h)?),
        (None, true) => (r_explicit(&p, n)?, poly_zeros_r(&p, n)?),
        (None, false) => (r_poly(&p, n)?, poly_zeros_r(&p, n)?),
    };
    let inputs = json!({ "n": n, "ell": ell, "eta": eta, "explicit": explicit, "H": h });
    let results = json!({
        "polynomial": if h.is_some() { "D" } else { "R" },
        "provenance": poly.provenance,
        "coeffs": poly.coeffs,
        "zeros": zeros,
    });
    let mut csv = String::from("kind,index,value\n");
    for (i, c) in poly.coeffs.iter().enumerate() {
        let _ = writeln!(csv, "coeff,{i},{}", num(*c));
    }
    for (i, z) in zeros.iter().enumerate() {
        let _ = writeln!(csv, "zero,{},{}", i + 1, num(*z));
    }
    Ok(Outcome { record: record("poly", inputs, results, diagnostics(Vec::new(), Vec::new(), &[])), csv, code: 0 })
}

fn cmd_verify(suite: Suite, grid_arg: &str) -> Result<Outcome, Failure> {
    let grid = if grid_arg == "default" {
        Grid::default()
    } else {
        let text = std::fs::read_to_string(grid_arg)
            .map_err(|e| Failure { code: EXIT_DATA, message: format!("Io: cannot read grid file {grid_arg}: {e}") })?;
        Grid::from_json(&text)?
    };
    let reports: Vec<CheckReport> = run_suite(suite, &grid);
    let v = verdict(&reports);
    let code = match v {
        Verdict::AllPassed => 0,
        Verdict::Violation => EXIT_VIOLATION,
        Verdict::InconclusiveOnly => EXIT_INCONCLUSIVE,
    };
    let mut csv = String::from("claim_id,status,passed,worst_margin,tolerance,ell,eta,x,points\n");
    for r in &reports {
        let (l, e, x) = r.worst_point.map_or((f64::NAN, f64::NAN, f64::NAN), |w| (w.ell, w.eta, w.x));
        let status = serde_json::to_value(r.status).unwrap();
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            r.claim_id,
            status.as_str().unwrap(),
            r.passed,
            num(r.worst_margin),
            num(r.tolerance),
            num(l),
            num(e),
            num(x),
            r.points
        );
    }
    let inputs = json!({ "suite": suite.to_string(), "grid": grid_arg, "grid_spec": grid });
    let results = json!({ "verdict": v, "reports": reports });
    Ok(Outcome { record: record("verify", inputs, results, diagnostics(Vec::new(), Vec::new(), &[])), csv, code })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let out = match cli.command {
        Command::Eval { ell, eta, x, function } => cmd_eval(ell, eta, x, function),
        Command::Zeros { ell, eta, count, sign, target, h } => cmd_zeros(ell, eta, count, sign, target, h),
        Command::Trace { axis, from, to, steps, k, ell, eta } => cmd_trace(axis, from, to, steps, k, ell, eta),
        Command::Poly { n, ell, eta, explicit, h } => cmd_poly(n, ell, eta, explicit, h),
        Command::Verify { suite, grid } => cmd_verify(suite, &grid),
    };
    match out {
        Ok(o) => {
            if let Some(ws) = o.record["diagnostics"]["warnings"].as_array() {
                for w in ws {
                    eprintln!("warning: {}", w.as_str().unwrap_or_default());
                }
            }
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&o.record).unwrap()),
                Format::Csv => print!("{}", o.csv),
            }
            ExitCode::from(o.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
