mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use energy_bounds::bounds::{
    energy_max_power_with, energy_min_power_with, energy_min_trace_norm_with, uv_values_with,
};
use energy_bounds::oracle::{extrema_search_with, extrema_trace_norm_with, SearchOptions};
use energy_bounds::poly::{
    diffsq_poly, enumerate_corpus_with, format_polynomial, hermite_family, parse_polynomial, parse_polynomials,
    verify_theorem2, CorpusConfig, PolyReport, PruneConfig,
};
use energy_bounds::{
    energy_identity, energy_lower_from_disc, energy_lower_from_log_disc, extrema_two_value,
    potential_lower_from_disc, power_sum_upper, reverse_amgm, siegel_constants, AlphaRoot, BoundReport, Error,
    PotentialSpec, PowerSumConstraints, SolverOptions, TraceNormConstraints,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use output::{int, num, Report, Section};

#[derive(Parser)]
#[command(name = "energy-bounds", version, about = "Sharp bounds on the potential energy of positive reals")]
struct Cli {
    /// Emit a single JSON object instead of key: value lines.
    #[arg(long, global = true)]
    json: bool,
    /// Residual tolerance for the root solvers.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true, env = "ENERGY_BOUNDS_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form bounds.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Brute-force extrema.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Exact integer-polynomial checks.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Totally positive polynomials of small trace.
    #[command(subcommand)]
    Corpus(CorpusCmd),
    /// Numerical constants.
    #[command(subcommand)]
    Constants(ConstantsCmd),
}

#[derive(Args, Clone)]
struct PowerArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    s1: f64,
    /// Power sum of order r (for r = 2 this is S_2 and the energy is exact).
    #[arg(long)]
    sr: f64,
}

#[derive(Args, Clone)]
struct TraceNormArgs {
    #[arg(long)]
    n: usize,
    /// Mean value; the trace is n * s.
    #[arg(long)]
    s: f64,
    /// Product of the points.
    #[arg(long)]
    p: f64,
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Minimum energy from trace and norm.
    EminTn(TraceNormArgs),
    /// Minimum energy from S_1 and S_r.
    EminPower(PowerArgs),
    /// Maximum energy from S_1 and S_r.
    EmaxPower(PowerArgs),
    /// Upper bound on s^n / p from the energy.
    ReverseAmgm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        energy: f64,
    },
    /// Upper bound on S_r from S_1 and the energy.
    SrUpper {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s1: f64,
        #[arg(long)]
        energy: f64,
    },
    /// Energy lower bound from the discriminant.
    DiscLower {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "log_delta", required_unless_present = "log_delta")]
        delta: Option<f64>,
        /// Natural log of the discriminant, for values beyond f64 range.
        #[arg(long)]
        log_delta: Option<f64>,
        /// With --s2, report whether (n-1) S_2 < S_1^2 < n S_2 holds.
        #[arg(long, requires = "s2")]
        s1: Option<f64>,
        #[arg(long, requires = "s1")]
        s2: Option<f64>,
    },
    /// Lower bound on (a/n) S_2 + (b/n^2) S_1^2 + (c/n) S_1 + d from the discriminant.
    PotentialLower {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s1: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, allow_hyphen_values = true)]
        d: f64,
    },
}

#[derive(Args, Clone)]
struct SearchArgs {
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Extrema on the power-sum surface.
    Power {
        #[command(flatten)]
        c: PowerArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Extrema on the trace/norm surface.
    TraceNorm {
        #[command(flatten)]
        c: TraceNormArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args, Clone)]
struct PolyInput {
    /// Leading-first integer coefficients, e.g. "1 -6 11 -6".
    #[arg(long, allow_hyphen_values = true, required_unless_present = "file", conflicts_with = "file")]
    coeffs: Option<String>,
    /// File with one polynomial per line ('#' starts a comment).
    #[arg(long)]
    file: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Energy/discriminant inequality report.
    Verify(PolyInput),
    /// Polynomial whose roots are the squared root differences.
    Diffsq(PolyInput),
    /// Extremal family f'' - (lambda x - mu) f' + lambda n f = 0.
    Hermite {
        #[arg(long)]
        n: usize,
        /// Rational, e.g. 3/2 or 0.75.
        #[arg(long)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Prune {
    /// Interlacing and Newton bounds.
    Interlacing,
    /// Newton bounds and exact Sturm checks at every level.
    Exact,
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Enumerate irreducible totally positive polynomials with trace < 2n (CSV unless --json).
    Enumerate {
        #[arg(long)]
        max_degree: usize,
        /// Degree 1 (x - 1) is excluded unless asked for.
        #[arg(long, default_value_t = 2)]
        min_degree: usize,
        #[arg(long, value_enum, default_value_t = Prune::Interlacing)]
        prune: Prune,
        /// Keep reducible polynomials too.
        #[arg(long)]
        reducible: bool,
    },
}

#[derive(Subcommand)]
enum ConstantsCmd {
    /// Trace-problem constants.
    Siegel,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = if error.is_data_error() || matches!(error, Error::NotConverged { .. }) { 2 } else { 1 };
        Self { code, error }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: usage: --threads must be >= 1");
            return ExitCode::from(1);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let opts = SolverOptions::with_tol(cli.tol);
    let (mut report, outcome) = run(&cli.command, &opts);
    report.diagnostics.set("tol", num(cli.tol));
    let code = match outcome {
        Ok(()) => 0,
        Err(f) => {
            report.diagnostics.set("error", f.error.to_string());
            if let Some(c) = condition(&f.error) {
                report.diagnostics.set("violated_condition", c);
            }
            eprintln!("error: {}", one_line(&f));
            f.code
        }
    };
    let text = if cli.json {
        report.to_json() + "\n"
    } else if let Some(csv) = report.result.get("csv").and_then(Value::as_str) {
        csv.to_string()
    } else {
        report.to_human()
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(code)
}

fn one_line(f: &Failure) -> String {
    let kind = match f.error {
        Error::Infeasible { .. } => "infeasible",
        Error::HypothesisViolated { .. } => "hypothesis",
        Error::BranchMissing { .. } => "branch-missing",
        Error::DegenerateAllEqual { .. } => "degenerate",
        Error::NotConverged { .. } => "not-converged",
        Error::Parse(_) => "parse",
        _ => "usage",
    };
    match (&f.error, condition(&f.error)) {
        (_, Some(c)) => format!("{kind}: {c}"),
        (Error::Parse(m), None) => format!("{kind}: {m}"),
        (e, None) => format!("{kind}: {e}"),
    }
}

fn condition(e: &Error) -> Option<String> {
    match e {
        Error::Infeasible { condition }
        | Error::HypothesisViolated { condition }
        | Error::BranchMissing { condition, .. } => Some(condition.clone()),
        _ => None,
    }
}

type Outcome = Result<(), Failure>;

fn run(cmd: &Command, opts: &SolverOptions) -> (Report, Outcome) {
    match cmd {
        Command::Bound(b) => run_bound(b, opts),
        Command::Oracle(o) => run_oracle(o),
        Command::Poly(p) => run_poly(p),
        Command::Corpus(c) => run_corpus(c),
        Command::Constants(ConstantsCmd::Siegel) => {
            let c = siegel_constants();
            let mut rep = Report::new("constants siegel", Section::new());
            rep.result = Section::new()
                .put("theta", num(c.theta))
                .put("lambda0", num(c.lambda0))
                .put("lambda_www", num(c.lambda_www))
                .put("two_over_sqrt_e", num(c.two_over_sqrt_e))
                .into();
            rep.diagnostics.set("theta_residual", num(c.theta_residual));
            (rep, Ok(()))
        }
    }
}

/// Run `body`, storing its result; errors keep the inputs already echoed.
fn with_report(op: &str, inputs: Section, body: impl FnOnce(&mut Report) -> Outcome) -> (Report, Outcome) {
    let mut rep = Report::new(op, inputs);
    let out = body(&mut rep);
    (rep, out)
}

fn power_inputs(c: &PowerArgs) -> Section {
    Section::new().put("n", c.n).put("r", c.r).put("s1", num(c.s1)).put("sr", num(c.sr))
}

fn root_section(a: &AlphaRoot) -> Section {
    Section::new()
        .put("alpha", num(a.alpha))
        .put("branch", format!("{:?}", a.branch).to_lowercase())
        .put("k", a.k)
        .put("n", a.n)
        .put("residual", num(a.residual))
        .put("iterations", a.iterations)
        .put("at_endpoint", a.at_endpoint)
}

fn bound_result(rep: &mut Report, b: &BoundReport) {
    let mut s = Section::new().put("value", num(b.value)).put("formula", b.formula.name());
    if let Some(a) = &b.alpha {
        s.set("alpha", num(a.alpha));
        s.set("residual", num(a.residual));
        s.set("root", root_section(a));
    }
    if let Some(h) = b.hypothesis_holds {
        s.set("hypothesis_holds", h);
    }
    rep.result = s.into();
}

/// `r = 2` pins the energy to `n S_2 - S_1^2`; both bounds equal it.
fn identity_route(rep: &mut Report, c: &PowerArgs) -> Outcome {
    let e = energy_identity(c.n, c.s1, c.sr)?;
    rep.result = Section::new().put("value", num(e)).put("formula", "identity").into();
    rep.diagnostics.set("note", "r = 2 fixes E = n S_2 - S_1^2 exactly");
    Ok(())
}

fn ntilde_diag(rep: &mut Report, ps: &PowerSumConstraints) {
    let nt = ps.ntilde();
    rep.diagnostics.set("ntilde", num(nt.value));
    rep.diagnostics.set("ntilde_ceil", nt.ceil);
    rep.diagnostics.set("k_star", nt.k_star);
}

fn run_bound(b: &BoundCmd, opts: &SolverOptions) -> (Report, Outcome) {
    match b {
        BoundCmd::EminTn(c) => {
            let inputs = Section::new().put("n", c.n).put("s", num(c.s)).put("p", num(c.p));
            with_report("bound emin-tn", inputs, |rep| {
                let tn = TraceNormConstraints::new(c.n, c.s, c.p)?;
                bound_result(rep, &energy_min_trace_norm_with(&tn, opts)?);
                Ok(())
            })
        }
        BoundCmd::EminPower(c) | BoundCmd::EmaxPower(c) => {
            let min = matches!(b, BoundCmd::EminPower(_));
            let op = if min { "bound emin-power" } else { "bound emax-power" };
            with_report(op, power_inputs(c), |rep| {
                if c.r == 2 {
                    return identity_route(rep, c);
                }
                let ps = PowerSumConstraints::new(c.n, c.r, c.s1, c.sr)?;
                ntilde_diag(rep, &ps);
                let rb = if min { energy_min_power_with(&ps, opts)? } else { energy_max_power_with(&ps, opts)? };
                bound_result(rep, &rb);
                if c.n >= 2 && !ps.is_all_equal() {
                    let k = 1;
                    let ratio = if min { ps.ratio() } else { ps.ratio_for(ps.ntilde().ceil) };
                    let m = if min { c.n } else { ps.ntilde().ceil };
                    if m >= 2 {
                        if let Ok(uv) = uv_values_with(m, k, c.r, ratio, opts) {
                            let mut s = Section::new();
                            for (name, v) in [("u", uv.u), ("v", uv.v), ("f", uv.f), ("g", uv.g)] {
                                if let Some(v) = v {
                                    s.set(name, num(v));
                                }
                            }
                            rep.diagnostics.set("uv", s);
                        }
                    }
                }
                Ok(())
            })
        }
        BoundCmd::ReverseAmgm { n, s, energy } => {
            let inputs = Section::new().put("n", *n).put("s", num(*s)).put("energy", num(*energy));
            with_report("bound reverse-amgm", inputs, |rep| {
                let rb = reverse_amgm(*n, *s, *energy)?;
                bound_result(rep, &rb);
                rep.diagnostics.set("beta", num(rb.alpha.map(|a| a.alpha).unwrap_or(0.0)));
                Ok(())
            })
        }
        BoundCmd::SrUpper { n, r, s1, energy } => {
            let inputs = Section::new().put("n", *n).put("r", *r).put("s1", num(*s1)).put("energy", num(*energy));
            with_report("bound sr-upper", inputs, |rep| {
                let rb = power_sum_upper(*n, *r, *s1, *energy)?;
                bound_result(rep, &rb);
                rep.diagnostics.set("beta", num(rb.alpha.map(|a| a.alpha).unwrap_or(0.0)));
                Ok(())
            })
        }
        BoundCmd::DiscLower { n, delta, log_delta, s1, s2 } => {
            let mut inputs = Section::new().put("n", *n);
            if let Some(d) = delta {
                inputs.set("delta", num(*d));
            }
            if let Some(l) = log_delta {
                inputs.set("log_delta", num(*l));
            }
            if let (Some(a), Some(b)) = (s1, s2) {
                inputs.set("s1", num(*a));
                inputs.set("s2", num(*b));
            }
            with_report("bound disc-lower", inputs, |rep| {
                let mut rb = match (delta, log_delta) {
                    (Some(d), _) => energy_lower_from_disc(*n, *d)?,
                    (None, Some(l)) => energy_lower_from_log_disc(*n, *l)?,
                    (None, None) => return Err(Error::InvalidInput("one of --delta, --log-delta is required".into()).into()),
                };
                if let (Some(a), Some(b)) = (s1, s2) {
                    rb.hypothesis_holds = Some(energy_bounds::bounds::discriminant_hypothesis(*n, *a, *b));
                }
                bound_result(rep, &rb);
                rep.diagnostics.set("log_a_factor", num(energy_bounds::a_factor_log::<f64>(*n)));
                Ok(())
            })
        }
        BoundCmd::PotentialLower { n, s1, delta, a, b, c, d } => {
            let inputs = Section::new()
                .put("n", *n)
                .put("s1", num(*s1))
                .put("delta", num(*delta))
                .put("a", num(*a))
                .put("b", num(*b))
                .put("c", num(*c))
                .put("d", num(*d));
            with_report("bound potential-lower", inputs, |rep| {
                let spec = PotentialSpec::new(*a, *b, *c, *d)?;
                bound_result(rep, &potential_lower_from_disc(&spec, *n, *s1, *delta)?);
                Ok(())
            })
        }
    }
}

fn run_oracle(o: &OracleCmd) -> (Report, Outcome) {
    match o {
        OracleCmd::Power { c, search } => {
            let inputs = power_inputs(c).put("restarts", search.restarts).put("seed", search.seed);
            with_report("oracle power", inputs, |rep| {
                if c.r == 2 {
                    return identity_route(rep, c);
                }
                let ps = PowerSumConstraints::new(c.n, c.r, c.s1, c.sr)?;
                ntilde_diag(rep, &ps);
                let tv = extrema_two_value(&ps)?;
                let se = extrema_search_with(&ps, &SearchOptions::new(search.restarts, search.seed))?;
                let cands: Vec<Value> = tv
                    .candidates
                    .iter()
                    .map(|k| {
                        Section::new()
                            .put("k", k.k)
                            .put("x", num(k.x))
                            .put("y", num(k.y))
                            .put("zeros", k.zeros)
                            .put("energy", num(k.energy))
                            .put("kind", format!("{:?}", k.kind).to_lowercase())
                            .into()
                    })
                    .collect();
                rep.result = Section::new()
                    .put("min", num(tv.min.min(se.min)))
                    .put("max", num(tv.max.max(se.max)))
                    .put(
                        "two_value",
                        Section::new().put("min", num(tv.min)).put("max", num(tv.max)).put("candidates", cands),
                    )
                    .put(
                        "search",
                        Section::new()
                            .put("min", num(se.min))
                            .put("max", num(se.max))
                            .put("argmin", se.argmin.iter().map(|&x| num(x)).collect::<Vec<_>>())
                            .put("argmax", se.argmax.iter().map(|&x| num(x)).collect::<Vec<_>>()),
                    )
                    .into();
                rep.diagnostics.set("failed_restarts", se.failed_restarts.clone());
                rep.diagnostics.set("agreement_min", num((tv.min - se.min).abs()));
                rep.diagnostics.set("agreement_max", num((tv.max - se.max).abs()));
                Ok(())
            })
        }
        OracleCmd::TraceNorm { c, search } => {
            let inputs = Section::new()
                .put("n", c.n)
                .put("s", num(c.s))
                .put("p", num(c.p))
                .put("restarts", search.restarts)
                .put("seed", search.seed);
            with_report("oracle trace-norm", inputs, |rep| {
                let tn = TraceNormConstraints::new(c.n, c.s, c.p)?;
                let t = extrema_trace_norm_with(&tn, &SearchOptions::new(search.restarts, search.seed))?;
                let cands: Vec<Value> = t
                    .candidates
                    .iter()
                    .map(|k| {
                        Section::new()
                            .put("k", k.k)
                            .put("branch", format!("{:?}", k.branch).to_lowercase())
                            .put("alpha", num(k.alpha))
                            .put("energy", num(k.energy))
                            .into()
                    })
                    .collect();
                rep.result = Section::new()
                    .put("min", num(t.min))
                    .put("max", num(t.max))
                    .put(
                        "two_value",
                        Section::new()
                            .put("min", num(t.two_value_min))
                            .put("max", num(t.two_value_max))
                            .put("candidates", cands),
                    )
                    .put("search", Section::new().put("min", num(t.search.min)).put("max", num(t.search.max)))
                    .into();
                if let Some(k) = t.argmin_k(c.n, 1e-12) {
                    rep.diagnostics.set("argmin_k", k);
                }
                rep.diagnostics.set("failed_restarts", t.search.failed_restarts.clone());
                Ok(())
            })
        }
    }
}

fn read_polys(input: &PolyInput) -> Result<Vec<energy_bounds::IntPolynomial>, Error> {
    match (&input.coeffs, &input.file) {
        (Some(c), _) => Ok(vec![parse_polynomial(c)?]),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let ps = parse_polynomials(&text)?;
            if ps.is_empty() {
                return Err(Error::Parse(format!("{}: no polynomials", path.display())));
            }
            Ok(ps)
        }
        (None, None) => Err(Error::Parse("one of --coeffs, --file is required".into())),
    }
}

fn poly_inputs(input: &PolyInput) -> Section {
    let mut s = Section::new();
    if let Some(c) = &input.coeffs {
        s.set("coeffs", c.clone());
    }
    if let Some(f) = &input.file {
        s.set("file", f.display().to_string());
    }
    s
}

fn verify_section(r: &PolyReport) -> Value {
    Section::new()
        .put("coeffs", format_polynomial(&r.poly))
        .put("degree", r.degree())
        .put("all_real", r.all_real)
        .put("totally_positive", r.totally_positive)
        .put("irreducible", r.irreducible.map(Value::Bool).unwrap_or(Value::Null))
        .put("s1", int(&r.s1))
        .put("s2", int(&r.s2))
        .put("energy", int(&r.energy))
        .put("discriminant", int(&r.discriminant))
        .put("diffsq_squarefree", r.diffsq_squarefree.map(Value::Bool).unwrap_or(Value::Null))
        .put("thm2_lhs_log", num(r.thm2_lhs_log))
        .put("thm2_rhs_log", num(r.thm2_rhs_log))
        .put("thm2_margin_log", num(r.thm2_margin_log))
        .put("thm2_holds", r.thm2_holds)
        .put("thm2_equality", r.thm2_equality)
        .put("edelta_margin_log", num(r.edelta_margin_log))
        .put("hypothesis_holds", r.hypothesis_holds)
        .put("repeated_roots", r.has_repeated_roots())
        .into()
}

fn single_or_list(mut items: Vec<Value>) -> Value {
    if items.len() == 1 {
        items.pop().unwrap()
    } else {
        Section::new().put("polynomials", items).into()
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.trim_start().starts_with('-');
        let ip: BigInt = if ip.is_empty() || ip == "-" { BigInt::zero() } else { ip.parse().map_err(|_| bad())? };
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let frac = BigRational::new(fp.parse().map_err(|_| bad())?, scale);
        let whole = BigRational::from_integer(ip.abs());
        let v = whole + frac;
        return Ok(if neg { -v } else { v });
    }
    Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
}

fn rat(x: &BigRational) -> Value {
    if x.denom().is_one() {
        int(x.numer())
    } else {
        Value::String(x.to_string())
    }
}

fn run_poly(p: &PolyCmd) -> (Report, Outcome) {
    match p {
        PolyCmd::Verify(input) => with_report("poly verify", poly_inputs(input), |rep| {
            let polys = read_polys(input)?;
            let reports = polys.iter().map(verify_theorem2).collect::<Result<Vec<_>, _>>()?;
            let unmet = reports.iter().filter(|r| !r.hypothesis_holds).count();
            let nontp = reports.iter().filter(|r| !r.totally_positive).count();
            rep.result = single_or_list(reports.iter().map(verify_section).collect());
            rep.diagnostics.set("hypothesis_unmet", unmet);
            rep.diagnostics.set("not_totally_positive", nontp);
            Ok(())
        }),
        PolyCmd::Diffsq(input) => with_report("poly diffsq", poly_inputs(input), |rep| {
            let polys = read_polys(input)?;
            let mut out = Vec::new();
            for f in &polys {
                f.ensure_monic()?;
                if f.degree() < 2 {
                    return Err(Error::InvalidInput("degree must be >= 2".into()).into());
                }
                let (d, sq) = diffsq_poly(f);
                out.push(
                    Section::new()
                        .put("input", format_polynomial(f))
                        .put("coeffs", format_polynomial(&d))
                        .put("degree", d.degree())
                        .put("squarefree", sq)
                        .put("trace", int(d.trace()))
                        .into(),
                );
            }
            rep.result = single_or_list(out);
            Ok(())
        }),
        PolyCmd::Hermite { n, lambda, mu } => {
            let inputs = Section::new().put("n", *n).put("lambda", lambda.clone()).put("mu", mu.clone());
            with_report("poly hermite", inputs, |rep| {
                let fam = hermite_family(*n, parse_rational(lambda)?, parse_rational(mu)?)?;
                let r = fam.report();
                let coeffs: Vec<Value> = fam.poly.leading_first().iter().map(rat).collect();
                rep.result = Section::new()
                    .put("coeffs", coeffs)
                    .put("discriminant", rat(&r.discriminant))
                    .put("energy", rat(&r.energy))
                    .put("discriminant_identity", r.discriminant_identity)
                    .put("energy_identity", r.energy_identity)
                    .put("top_coefficients_identity", r.top_coefficients_identity)
                    .into();
                rep.diagnostics.set("discriminant_routes_agree", r.discriminant == r.discriminant_direct);
                rep.diagnostics.set("ode_residual_zero", fam.ode_residual().is_zero());
                Ok(())
            })
        }
    }
}

fn run_corpus(c: &CorpusCmd) -> (Report, Outcome) {
    let CorpusCmd::Enumerate { max_degree, min_degree, prune, reducible } = c;
    let prune_name = match prune {
        Prune::Interlacing => "interlacing",
        Prune::Exact => "exact",
    };
    let inputs = Section::new()
        .put("max_degree", *max_degree)
        .put("min_degree", *min_degree)
        .put("prune", prune_name)
        .put("reducible", *reducible);
    with_report("corpus enumerate", inputs, |rep| {
        let cfg = CorpusConfig {
            min_degree: *min_degree,
            max_degree: *max_degree,
            prune: match prune {
                Prune::Interlacing => PruneConfig::default(),
                Prune::Exact => PruneConfig::exact(),
            },
            irreducible_only: !reducible,
        };
        let corpus = enumerate_corpus_with(&cfg)?;
        let counts: serde_json::Map<String, Value> =
            corpus.counts.iter().map(|(d, c)| (d.to_string(), Value::from(*c))).collect();
        rep.result = Section::new()
            .put("counts", Value::Object(counts))
            .put("total", corpus.total())
            .put("total_degree_ge_2", corpus.total_nonlinear())
            .put("csv", corpus.to_csv())
            .into();
        rep.diagnostics.set("nodes", corpus.nodes);
        Ok(())
    })
}
