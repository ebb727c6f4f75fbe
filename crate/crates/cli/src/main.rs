//! `sgc`: command-line front end for the sgcodes library.
//!
//! Reports go to stdout as JSON; progress and verdicts go to stderr.
//! Exit status: 0 pass, 1 verification mismatch, 2 usage, 3 budget refusal.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use sgcodes::codes::{self, LinearCode, Method, SweepConfig, DEFAULT_BUDGET, SLOW_THRESHOLD};
use sgcodes::forms::{self, AlternatingForm};
use sgcodes::{formulas, grassmann, io, Error, Field, WeightEnumerator};

#[derive(Parser)]
#[command(name = "sgc", version, about = "Symplectic Grassmann codes W(n,k) over GF(q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Triple {
    n: usize,
    k: usize,
    q: u32,
}

#[derive(Args, Clone)]
struct SweepOpts {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Refuse sweeps estimated above this many operations.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Allow sweeps estimated above the slow threshold.
    #[arg(long)]
    slow: bool,
}

impl SweepOpts {
    fn config(&self) -> SweepConfig {
        SweepConfig {
            budget: self.budget,
            threads: self.threads,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    #[value(name = "codeword_sweep", alias = "codeword")]
    Codeword,
    #[value(name = "hyperplane_sweep", alias = "hyperplane")]
    Hyperplane,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Codeword => Method::CodewordSweep,
            MethodArg::Hyperplane => Method::HyperplaneSweep,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Length, dimension and known minimum distance.
    Params {
        #[command(flatten)]
        t: Triple,
    },
    /// Write the generator matrix of W(n,k).
    Build {
        #[command(flatten)]
        t: Triple,
        #[arg(long)]
        output: PathBuf,
        /// Also write the Plücker point list here.
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Exact weight enumerator, checked against known tables.
    Weights {
        #[command(flatten)]
        t: Triple,
        #[arg(long, value_enum, default_value = "codeword_sweep")]
        method: MethodArg,
        #[command(flatten)]
        sweep: SweepOpts,
    },
    /// Common isotropic lines of σ and θ for W(n,2).
    Eta {
        n: usize,
        q: u32,
        /// `worst`, `random`, or a path to a form in matrix format.
        #[arg(long, default_value = "worst")]
        theta: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// Run every applicable check for W(n,k).
    Verify {
        #[command(flatten)]
        t: Triple,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[command(flatten)]
        sweep: SweepOpts,
    },
    /// Known bounds on d_min and their ordering.
    Bounds {
        #[command(flatten)]
        t: Triple,
        #[command(flatten)]
        sweep: SweepOpts,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(Value, bool), Failure>;

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    parameters: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    results: Value,
    pass: bool,
    seconds: f64,
}

#[derive(Serialize)]
struct EnumeratorReport {
    n: usize,
    k: usize,
    q: u32,
    #[serde(rename = "N")]
    length: usize,
    #[serde(rename = "K")]
    dimension: usize,
    distribution: BTreeMap<u64, u128>,
    d_min: Option<u64>,
    method: String,
    seconds: f64,
}

/// JSON number when it fits in u64, decimal string otherwise.
fn big(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| json!(v.to_string()), |x| json!(x))
}

fn signed(v: i128) -> Value {
    i64::try_from(v).map_or_else(|_| json!(v.to_string()), |x| json!(x))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

fn field(q: u32) -> Result<Field, Failure> {
    Ok(Field::new(q)?)
}

fn check_triple(t: Triple) -> Result<Field, Failure> {
    let f = field(t.q)?;
    if t.k < 1 || t.k > t.n {
        return Err(Failure::Usage(format!("need 1 <= k <= n, got n={} k={}", t.n, t.k)));
    }
    Ok(f)
}

/// Refuses constructions whose Plücker matrix reduction would exceed the budget.
fn build(t: Triple, f: &Field, budget: u128) -> Result<LinearCode, Failure> {
    let p = formulas::params(t.n, t.k, t.q as u64)?;
    let width = formulas::binomial(2 * t.n, t.k);
    let estimate = p.length.saturating_mul(width).saturating_mul(p.dimension);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget }.into());
    }
    eprintln!("building W({},{}) over GF({}): N = {}", t.n, t.k, t.q, p.length);
    Ok(codes::build_code(t.n, t.k, f)?)
}

fn sweep_allowed(code: &LinearCode, method: Method, opts: &SweepOpts) -> Result<(), Failure> {
    let cost = codes::cost_estimate(code, method);
    if cost > opts.budget {
        return Err(Error::BudgetExceeded {
            estimate: cost,
            budget: opts.budget,
        }
        .into());
    }
    if cost > SLOW_THRESHOLD && !opts.slow {
        return Err(Failure::Budget(format!(
            "estimated {cost} operations is above the slow threshold {SLOW_THRESHOLD}; pass --slow to run it"
        )));
    }
    Ok(())
}

fn table_for(t: Triple) -> Result<Option<(&'static str, WeightEnumerator)>, Failure> {
    Ok(match (t.n, t.k) {
        (2, 2) => Some(("w22", formulas::w22_table(t.q as u64)?)),
        (3, 3) => Some(("w33", formulas::w33_table(t.q as u64)?)),
        _ => None,
    })
}

fn params_cmd(t: Triple) -> Outcome {
    check_triple(t)?;
    let p = formulas::params(t.n, t.k, t.q as u64)?;
    let d_min = match p.d_min {
        Some(d) => big(d),
        None => json!("unproved"),
    };
    eprintln!(
        "W({},{}) over GF({}): [{}, {}, {}]",
        t.n, t.k, t.q, p.length, p.dimension, d_min
    );
    Ok((
        json!({ "N": big(p.length), "K": big(p.dimension), "d_min": d_min }),
        true,
    ))
}

fn build_cmd(t: Triple, output: &PathBuf, points: Option<&PathBuf>, budget: u128) -> Outcome {
    let f = check_triple(t)?;
    let code = build(t, &f, budget)?;
    let mut w = BufWriter::new(File::create(output)?);
    io::write_generator(&mut w, &code)?;
    w.flush()?;
    if let Some(path) = points {
        let origin = code.origin().expect("built codes carry their points");
        let map = grassmann::PluckerMap::new(2 * t.n, t.k);
        let pts: Vec<_> = origin.points.iter().map(|s| map.point(s, &f)).collect();
        let mut w = BufWriter::new(File::create(path)?);
        io::write_points(&mut w, t.n, t.k, &f, &pts)?;
        w.flush()?;
    }
    let want = formulas::dimension(t.n, t.k)?;
    let ok = code.dimension() as u128 == want;
    eprintln!("rank {} (expected {want}): {}", code.dimension(), verdict(ok));
    Ok((
        json!({
            "N": code.length(),
            "K": code.dimension(),
            "rank_check": verdict(ok),
            "output": output.display().to_string(),
        }),
        ok,
    ))
}

fn weights_cmd(t: Triple, method: Method, opts: &SweepOpts) -> Outcome {
    let f = check_triple(t)?;
    let code = build(t, &f, opts.budget)?;
    sweep_allowed(&code, method, opts)?;
    eprintln!(
        "sweeping {} codewords by {method}",
        (t.q as u128).pow(code.dimension() as u32)
    );
    let start = Instant::now();
    let e = codes::weight_enumerator(&code, method, &opts.config())?;
    let seconds = start.elapsed().as_secs_f64();
    let report = EnumeratorReport {
        n: t.n,
        k: t.k,
        q: t.q,
        length: code.length(),
        dimension: code.dimension(),
        distribution: e.distribution().clone(),
        d_min: e.min_nonzero(),
        method: method.to_string(),
        seconds,
    };
    let mut ok = true;
    let mut checks = serde_json::Map::new();
    if let Some((name, table)) = table_for(t)? {
        let m = e == table;
        ok &= m;
        eprintln!("{name} table: {}", verdict(m));
        checks.insert(name.into(), json!(verdict(m)));
    }
    if let Some(d) = formulas::known_dmin(t.n, t.k, t.q as u64)? {
        let m = e.min_nonzero().map(u128::from) == Some(d);
        ok &= m;
        eprintln!("d_min {:?} against {d}: {}", e.min_nonzero(), verdict(m));
        checks.insert("d_min".into(), json!(verdict(m)));
    }
    let mut results = serde_json::to_value(&report).expect("serializable");
    results["checks"] = Value::Object(checks);
    Ok((results, ok))
}

struct EtaRow {
    n1: u128,
    eta: u128,
    residual: i128,
    eigen: Vec<(u8, usize)>,
}

fn eta_row(sigma: &AlternatingForm, theta: &AlternatingForm, f: &Field) -> Result<EtaRow, Failure> {
    let n = sigma.n();
    let eig = forms::eigen_analysis(sigma, theta, f)?;
    let n1 = eig.eigenpoint_count(f.order());
    let eta = forms::count_common_isotropic_lines(sigma, theta, f)?;
    let rhs = formulas::line_count_rhs(n, f.order() as u64, n1)? as i128;
    Ok(EtaRow {
        n1,
        eta,
        residual: (f.order() as i128 + 1) * eta as i128 - rhs,
        eigen: eig.pairs.iter().map(|(l, s)| (*l, s.dim())).collect(),
    })
}

fn eta_json(r: &EtaRow, len: u128) -> Value {
    let eigen: Vec<Value> = r.eigen.iter().map(|(l, d)| json!({ "lambda": l, "dim": d })).collect();
    json!({
        "N1": big(r.n1),
        "eta": big(r.eta),
        "weight": big(len - r.eta),
        "residual": signed(r.residual),
        "eigenspaces": eigen,
    })
}

fn thetas(n: usize, f: &Field, source: &str, seed: u64, trials: usize) -> Result<Vec<AlternatingForm>, Failure> {
    let sigma = AlternatingForm::standard(n, f);
    match source {
        "worst" => Ok(vec![forms::worst_case_theta(&sigma, f)?]),
        "random" => Ok((0..trials)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                forms::random_theta_distinct(&sigma, f, &mut rng)
            })
            .collect()),
        path => {
            let (theta, g) = io::read_form(BufReader::new(File::open(path)?))?;
            if g.order() != f.order() || theta.n() != n {
                return Err(Failure::Usage(format!(
                    "{path} holds a form on V({}) over GF({}), expected V({}) over GF({})",
                    theta.dim(),
                    g.order(),
                    2 * n,
                    f.order()
                )));
            }
            Ok(vec![theta])
        }
    }
}

fn eta_cmd(n: usize, q: u32, source: &str, seed: u64, trials: usize) -> Outcome {
    let f = field(q)?;
    if n < 2 {
        return Err(Failure::Usage("eta needs n >= 2".into()));
    }
    let sigma = AlternatingForm::standard(n, &f);
    let len = formulas::length(n, 2, q as u64)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for theta in thetas(n, &f, source, seed, trials)? {
        let r = eta_row(&sigma, &theta, &f)?;
        ok &= r.residual == 0;
        rows.push(eta_json(&r, len));
    }
    eprintln!(
        "{} form(s), identity residuals {}",
        rows.len(),
        if ok { "all zero" } else { "NONZERO" }
    );
    Ok((json!({ "N": big(len), "forms": rows }), ok))
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    status: &'static str,
    detail: String,
}

fn check(name: &'static str, ok: bool, detail: String) -> Check {
    Check {
        name,
        status: if ok { "PASS" } else { "FAIL" },
        detail,
    }
}

fn skip(name: &'static str, detail: String) -> Check {
    Check {
        name,
        status: "SKIP",
        detail,
    }
}

fn verify_cmd(t: Triple, seed: u64, trials: usize, opts: &SweepOpts) -> Outcome {
    let f = check_triple(t)?;
    let q = t.q as u64;
    let p = formulas::params(t.n, t.k, q)?;
    let code = build(t, &f, opts.budget)?;
    let mut out = Vec::new();

    let count = code.origin().map_or(0, |o| o.points.len()) as u128;
    out.push(check(
        "point count",
        count == p.length,
        format!("{count} vs {}", p.length),
    ));
    out.push(check(
        "dimension",
        code.dimension() as u128 == p.dimension,
        format!("{} vs {}", code.dimension(), p.dimension),
    ));

    let want_table = table_for(t)?;
    if p.d_min.is_some() || want_table.is_some() {
        match sweep_allowed(&code, Method::CodewordSweep, opts) {
            Ok(()) => {
                let e = codes::weight_enumerator(&code, Method::CodewordSweep, &opts.config())?;
                if let Some(d) = p.d_min {
                    let got = e.min_nonzero().map(u128::from);
                    out.push(check("d_min", got == Some(d), format!("{got:?} vs {d}")));
                }
                if let Some((name, table)) = want_table {
                    out.push(check("weight table", e == table, name.to_string()));
                }
            }
            Err(Failure::Budget(why)) => out.push(skip("d_min", why)),
            Err(other) => return Err(other),
        }
    }

    if t.k == 2 {
        let sigma = AlternatingForm::standard(t.n, &f);
        let forms_list = thetas(t.n, &f, "random", seed, trials)?;
        let mut worst = 0i128;
        for theta in &forms_list {
            worst = worst.max(eta_row(&sigma, theta, &f)?.residual.abs());
        }
        out.push(check(
            "line count identity",
            worst == 0,
            format!("{} random forms, max |residual| {worst}", forms_list.len()),
        ));
        let theta = forms::worst_case_theta(&sigma, &f)?;
        let (word, wt) = codes::codeword_from_form(&code, &theta)?;
        let d = formulas::dmin_line(t.n, q)?;
        out.push(check(
            "worst-case weight",
            wt as u128 == d && code.contains(&word),
            format!("{wt} vs {d}"),
        ));
    }

    let ok = out.iter().all(|c| c.status != "FAIL");
    for c in &out {
        eprintln!("{:<20} {} {}", c.name, c.status, c.detail);
    }
    Ok((json!({ "checks": out }), ok))
}

fn bounds_cmd(t: Triple, opts: &SweepOpts) -> Outcome {
    let f = check_triple(t)?;
    let q = t.q as u64;
    let mut res = serde_json::Map::new();
    let known = formulas::known_dmin(t.n, t.k, q)?;
    res.insert("d_min_known".into(), known.map_or(Value::Null, big));

    let code = build(t, &f, opts.budget)?;
    let computed = match sweep_allowed(&code, Method::CodewordSweep, opts) {
        Ok(()) => Some(codes::min_distance(&code, None, &opts.config())? as u128),
        Err(Failure::Budget(why)) => {
            eprintln!("not sweeping: {why}");
            None
        }
        Err(other) => return Err(other),
    };
    res.insert("d_min_computed".into(), computed.map_or(Value::Null, big));
    let d = computed.or(known);
    let mut ok = match (computed, known) {
        (Some(c), Some(k)) => c == k,
        _ => true,
    };

    if t.k == 2 && t.n >= 2 {
        let b = formulas::grassmann_bound_line(t.n, q)?;
        let holds = d.is_none_or(|d| b.value <= d as i128);
        ok &= holds;
        eprintln!("line bound {} <= d_min {d:?}: {holds}", b.value);
        res.insert(
            "grassmann_bound".into(),
            json!({
                "value": signed(b.value),
                "numerator": signed(b.numerator),
                "denominator": signed(b.denominator),
                "integral": b.is_integral(),
                "holds": holds,
            }),
        );
    }
    if t.k == t.n {
        let pz = formulas::pz_upper(t.n, q)?;
        let holds = d.is_none_or(|d| d <= pz);
        ok &= holds;
        let sharp = d.map(|d| d == pz);
        eprintln!("d_min {d:?} <= pz {pz}: {holds}, sharp: {sharp:?}");
        res.insert(
            "pz_upper".into(),
            json!({ "value": big(pz), "holds": holds, "sharp": sharp }),
        );
    }
    Ok((Value::Object(res), ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, parameters, seed, outcome) = match &cli.command {
        Command::Params { t } => ("params", json!({ "n": t.n, "k": t.k, "q": t.q }), None, params_cmd(*t)),
        Command::Build {
            t,
            output,
            points,
            budget,
        } => (
            "build",
            json!({ "n": t.n, "k": t.k, "q": t.q }),
            None,
            build_cmd(*t, output, points.as_ref(), *budget),
        ),
        Command::Weights { t, method, sweep } => {
            let m = Method::from(*method);
            (
                "weights",
                json!({ "n": t.n, "k": t.k, "q": t.q, "method": m.to_string() }),
                None,
                weights_cmd(*t, m, sweep),
            )
        }
        Command::Eta {
            n,
            q,
            theta,
            seed,
            trials,
        } => {
            let random = theta == "random";
            let params = if random {
                json!({ "n": n, "q": q, "theta": theta, "trials": trials })
            } else {
                json!({ "n": n, "q": q, "theta": theta })
            };
            (
                "eta",
                params,
                random.then_some(*seed),
                eta_cmd(*n, *q, theta, *seed, *trials),
            )
        }
        Command::Verify { t, seed, trials, sweep } => (
            "verify",
            json!({ "n": t.n, "k": t.k, "q": t.q, "trials": trials }),
            (t.k == 2).then_some(*seed),
            verify_cmd(*t, *seed, *trials, sweep),
        ),
        Command::Bounds { t, sweep } => (
            "bounds",
            json!({ "n": t.n, "k": t.k, "q": t.q }),
            None,
            bounds_cmd(*t, sweep),
        ),
    };
    match outcome {
        Ok((results, pass)) => {
            let report = Report {
                command: name,
                parameters,
                seed,
                results,
                pass,
                seconds: start.elapsed().as_secs_f64(),
            };
            println!("{}", serde_json::to_string(&report).expect("serializable"));
            if pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
    }
}
