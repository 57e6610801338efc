//! Argument parsing and command dispatch.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use orbitzeta_core::boundary::{
    accumulation_table, alpha_roots, approach_boundary, triple_factor, zero_lattice, BoundaryError,
};
use orbitzeta_core::dirser::{
    abscissa_bound_check, block_evidence, m_fold_form, perron_asymptote, perron_constant, ramanujan_product_form,
    truncated_eval, zeta_with_bound, FeigenbaumKind, MFoldSpec, PolyGrowth,
};
use orbitzeta_core::ghost::{continuation_eval, decompose, reconstruct, BivariatePoly, GhostError};
use orbitzeta_core::ratzeta::{radius_product_check, Radius, RationalZeta};
use orbitzeta_core::seqcore::{
    fix_from_orbit, iterate_fix, iterate_orbits, orbit_from_fix, pi_count, product_fix, product_orbits,
};
use orbitzeta_core::{OrbitSeq, Sieve};

use crate::parse;
use crate::report::{ErrorInfo, Format, Report, Table};
use crate::verify::{self, DEFAULT_SEED, PUBLISHED_C3, PUBLISHED_SQUARE_CONSTANT};

#[derive(Debug, Parser)]
#[command(name = "orbitzeta", version, about = "Orbit counts, zeta functions and orbit Dirichlet series of maps")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest prime used in Euler products and scans.
    #[arg(long, global = true)]
    pub prime_bound: Option<u64>,
    /// Size of the prime sieve the primes are drawn from.
    #[arg(long, global = true, default_value_t = Sieve::DEFAULT_BOUND)]
    pub sieve_bound: u64,
    /// Target absolute precision for zeta evaluations.
    #[arg(long, global = true)]
    pub precision: Option<f64>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest index for tabulated sequences.
    #[arg(long, global = true)]
    pub n_max: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SeqKind {
    Orbits,
    Fix,
    Pi,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Target {
    Fix,
    Orbits,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate orbit counts, fixed-point counts or π(N) for a family.
    Seq {
        /// power:A, feigenbaum, identity, full-shift:S, sparse-even:B, sparse-odd:B, mfold:A:M, list:…
        family: String,
        #[arg(long, value_enum, default_value_t = SeqKind::Orbits)]
        kind: SeqKind,
    },
    /// Convert orbit counts to fixed-point counts or back.
    Transform {
        /// An orbit family for --to fix; geometric:B, sigma:A or list:… for --to orbits.
        spec: String,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Orbit and fixed-point counts of a Cartesian product.
    Product { left: String, right: String },
    /// Orbit and fixed-point counts of the k-th iterate.
    Iterate {
        family: String,
        #[arg(long)]
        k: u64,
    },
    /// Rational zeta function: radius, non-degeneracy, realizability, product law.
    Zeta {
        /// Comma-separated poles β (ζ has factors 1/(1 - βz)); rationals as p/q.
        #[arg(long, default_value = "")]
        poles: String,
        #[arg(long, default_value = "")]
        zeros: String,
        #[arg(long)]
        with_poles: Option<String>,
        #[arg(long)]
        with_zeros: Option<String>,
        #[arg(long, default_value_t = 6)]
        order_bound: u32,
    },
    /// Orbit Dirichlet series.
    Dirichlet {
        #[command(subcommand)]
        action: DirichletAction,
    },
    /// m-fold Cartesian powers of a map with n^a orbits of length n.
    Mfold {
        #[arg(long, default_value_t = 0)]
        a: u32,
        #[arg(long)]
        m: u32,
        /// Coefficient range such as 1..10.
        #[arg(long, default_value = "1..20")]
        coeffs: String,
    },
    /// Euler constants C_m and the asymptote π(N) ~ c·N^m.
    Perron {
        #[arg(long, default_value_t = 0)]
        a: u32,
        #[arg(long)]
        m: u32,
        /// Values of N for the comparison table.
        #[arg(long, value_delimiter = ',')]
        n_values: Vec<u64>,
    },
    /// Zeros of 1 + (2p+2)p^{-s} + p^{1-2s} and their approach to Re(s) = 1.
    Boundary {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        k_range: String,
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        /// Comma-separated prime bounds for the accumulation table.
        #[arg(long, value_delimiter = ',')]
        table: Vec<u64>,
    },
    /// Ghost decomposition of a bivariate polynomial.
    Ghost {
        #[command(subcommand)]
        action: GhostAction,
    },
    /// Run the verification suite.
    Verify,
}

#[derive(Debug, Subcommand)]
pub enum DirichletAction {
    /// Riemann zeta at a complex point.
    Zeta {
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// Closed form for the product of maps with n^a and n^b orbits.
    Ramanujan {
        #[arg(long, default_value_t = 0)]
        a: u32,
        #[arg(long, default_value_t = 0)]
        b: u32,
        #[arg(long, default_value = "4")]
        s: String,
    },
    /// Truncated series Σ_{n ≤ N} O(n) n^{-s}.
    Truncated {
        family: String,
        #[arg(long)]
        s: String,
        /// Degree d of a bound O(n) ≤ C·n^d, enabling the tail estimate.
        #[arg(long)]
        growth_degree: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        growth_constant: f64,
    },
    /// Feigenbaum closed forms: base, square or iterate:K.
    Feigenbaum {
        #[arg(default_value = "base")]
        kind: String,
        #[arg(long)]
        s: Option<String>,
    },
    /// Dyadic block evidence for convergence of a (product) series at s.
    Abscissa {
        left: String,
        #[arg(long)]
        right: Option<String>,
        #[arg(long, default_value_t = 0.0)]
        sigma1: f64,
        #[arg(long, default_value_t = 0.0)]
        sigma2: f64,
        #[arg(long)]
        s: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GhostAction {
    Decompose {
        #[arg(long, default_value = "1+2x+2xy+x^2y")]
        poly: String,
        #[arg(long, default_value_t = 4)]
        order: u32,
    },
    Reconstruct {
        #[arg(long, default_value = "1+2x+2xy+x^2y")]
        poly: String,
        #[arg(long, default_value_t = 4)]
        order: u32,
    },
    Continuation {
        #[arg(long, default_value = "1+2x+2xy+x^2y")]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 8)]
        order: u32,
    },
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Computation(ErrorInfo),
}

impl From<parse::ParseError> for Failure {
    fn from(e: parse::ParseError) -> Self {
        Failure::Usage(e.0)
    }
}

fn computation<E: std::fmt::Debug + std::fmt::Display>(e: E) -> Failure {
    Failure::Computation(ErrorInfo::from_error(&e))
}

struct Config {
    prime_bound: Option<u64>,
    sieve_bound: u64,
    precision: Option<f64>,
    seed: u64,
    n_max: Option<u64>,
}

impl Config {
    fn primes(&self, default_bound: u64) -> Result<Vec<u64>, Failure> {
        let bound = self.prime_bound.unwrap_or(default_bound);
        let sieve_bound = self.sieve_bound.max(default_bound.min(bound));
        if bound > sieve_bound {
            return Err(Failure::Usage(format!(
                "--prime-bound {bound} exceeds --sieve-bound {sieve_bound}"
            )));
        }
        Ok(Sieve::new(sieve_bound).primes_up_to(bound).to_vec())
    }

    fn n_max(&self, default: u64) -> u64 {
        self.n_max.unwrap_or(default)
    }

    fn precision(&self, default: f64) -> f64 {
        self.precision.unwrap_or(default)
    }
}

pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                RunOutput { code, stdout: text, stderr: String::new() }
            } else {
                RunOutput { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let config = Config {
        prime_bound: cli.prime_bound,
        sieve_bound: cli.sieve_bound,
        precision: cli.precision,
        seed: cli.seed,
        n_max: cli.n_max,
    };
    match dispatch(&cli.command, &config) {
        Ok(report) => RunOutput {
            code: if report.error.is_some() { 1 } else { 0 },
            stdout: report.render(cli.format),
            stderr: report.error.as_ref().map(|e| format!("{}: {}\n", e.name, e.message)).unwrap_or_default(),
        },
        Err(Failure::Usage(msg)) => RunOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Computation(info)) => {
            let mut report = Report::new(command_name(&cli.command), Value::Null);
            let stderr = format!("{}: {}\n", info.name, info.message);
            report.error = Some(info);
            RunOutput {
                code: 1,
                stdout: report.render(cli.format),
                stderr,
            }
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Seq { .. } => "seq",
        Command::Transform { .. } => "transform",
        Command::Product { .. } => "product",
        Command::Iterate { .. } => "iterate",
        Command::Zeta { .. } => "zeta",
        Command::Dirichlet { .. } => "dirichlet",
        Command::Mfold { .. } => "mfold",
        Command::Perron { .. } => "perron",
        Command::Boundary { .. } => "boundary",
        Command::Ghost { .. } => "ghost",
        Command::Verify => "verify",
    }
}

fn dispatch(command: &Command, config: &Config) -> Result<Report, Failure> {
    match command {
        Command::Seq { family, kind } => seq(family, *kind, config),
        Command::Transform { spec, to } => transform(spec, *to, config),
        Command::Product { left, right } => product(left, right, config),
        Command::Iterate { family, k } => iterate(family, *k, config),
        Command::Zeta {
            poles,
            zeros,
            with_poles,
            with_zeros,
            order_bound,
        } => zeta_cmd(poles, zeros, with_poles.as_deref(), with_zeros.as_deref(), *order_bound, config),
        Command::Dirichlet { action } => dirichlet(action, config),
        Command::Mfold { a, m, coeffs } => mfold(*a, *m, coeffs),
        Command::Perron { a, m, n_values } => perron(*a, *m, n_values, config),
        Command::Boundary {
            p,
            k_range,
            target,
            epsilon,
            table,
        } => boundary(*p, k_range, target.as_deref(), *epsilon, table, config),
        Command::Ghost { action } => ghost(action, config),
        Command::Verify => Ok(verify_cmd(config)),
    }
}

fn seq(family: &str, kind: SeqKind, config: &Config) -> Result<Report, Failure> {
    let orbits = parse::orbit_family(family)?;
    let n_max = config.n_max(20);
    let mut report = Report::new("seq", json!({ "family": family, "kind": format!("{kind:?}").to_lowercase(), "n_max": n_max }));
    let mut table = Table::new(&["n", "value"]);
    let mut running = BigUint::default();
    for n in 1..=n_max {
        let value = match kind {
            SeqKind::Orbits => orbits.at(n).map_err(computation)?,
            SeqKind::Fix => fix_from_orbit(&orbits, n).map_err(computation)?,
            SeqKind::Pi => {
                running += orbits.at(n).map_err(computation)?;
                running.clone()
            }
        };
        table.push(vec![n.to_string(), value.to_string()]);
    }
    if let SeqKind::Pi = kind {
        debug_assert_eq!(Some(running), pi_count(&orbits, n_max).ok());
    }
    report.with_table(table).provenance("exact").tolerance("values", "exact");
    Ok(report)
}

fn transform(spec: &str, to: Target, config: &Config) -> Result<Report, Failure> {
    let n_max = config.n_max(20);
    let mut report = Report::new("transform", json!({ "spec": spec, "to": format!("{to:?}").to_lowercase(), "n_max": n_max }));
    let mut table = Table::new(&["n", "value"]);
    match to {
        Target::Fix => {
            let orbits = parse::orbit_family(spec)?;
            for n in 1..=n_max {
                table.push(vec![n.to_string(), fix_from_orbit(&orbits, n).map_err(computation)?.to_string()]);
            }
        }
        Target::Orbits => {
            let fix = parse::fix_family(spec)?;
            for n in 1..=n_max {
                table.push(vec![n.to_string(), orbit_from_fix(&fix, n).map_err(computation)?.to_string()]);
            }
        }
    }
    report.with_table(table).provenance("exact: Möbius inversion").tolerance("values", "exact");
    Ok(report)
}

fn product(left: &str, right: &str, config: &Config) -> Result<Report, Failure> {
    let (x, y) = (parse::orbit_family(left)?, parse::orbit_family(right)?);
    let n_max = config.n_max(20);
    let (fx, fy) = (x.fix(), y.fix());
    let mut table = Table::new(&["n", "orbits", "fix"]);
    for n in 1..=n_max {
        table.push(vec![
            n.to_string(),
            product_orbits(&x, &y, n).map_err(computation)?.to_string(),
            product_fix(&fx, &fy, n).map_err(computation)?.to_string(),
        ]);
    }
    let mut report = Report::new("product", json!({ "left": left, "right": right, "n_max": n_max }));
    report.with_table(table).provenance("exact: lcm-pair orbit formula").tolerance("values", "exact");
    Ok(report)
}

fn iterate(family: &str, k: u64, config: &Config) -> Result<Report, Failure> {
    let orbits = parse::orbit_family(family)?;
    let n_max = config.n_max(20);
    let fix = orbits.fix();
    let mut table = Table::new(&["n", "orbits", "fix"]);
    for n in 1..=n_max {
        table.push(vec![
            n.to_string(),
            iterate_orbits(&orbits, k, n).map_err(computation)?.to_string(),
            iterate_fix(&fix, k, n).map_err(computation)?.to_string(),
        ]);
    }
    let mut report = Report::new("iterate", json!({ "family": family, "k": k, "n_max": n_max }));
    report.with_table(table).provenance("exact: iterate orbit formula").tolerance("values", "exact");
    Ok(report)
}

fn radius_json(r: &Radius) -> Value {
    match r {
        Radius::Finite(q) => json!({ "exact": q.to_string(), "approx": r.to_f64() }),
        Radius::Infinite => json!({ "exact": "infinity" }),
    }
}

fn zeta_cmd(
    poles: &str,
    zeros: &str,
    with_poles: Option<&str>,
    with_zeros: Option<&str>,
    order_bound: u32,
    config: &Config,
) -> Result<Report, Failure> {
    let z = RationalZeta::new(parse::rational_list(poles)?, parse::rational_list(zeros)?).map_err(computation)?;
    let prefix = config.n_max(30);
    let mut report = Report::new(
        "zeta",
        json!({ "poles": poles, "zeros": zeros, "with_poles": with_poles, "with_zeros": with_zeros, "order_bound": order_bound, "n_max": prefix }),
    );
    let mut table = Table::new(&["n", "fix"]);
    for n in 1..=prefix {
        table.push(vec![n.to_string(), z.fix_signed(n).to_string()]);
    }
    report
        .result("nondegenerate", z.is_nondegenerate(order_bound))
        .result("realizable", z.check_realizable(prefix).is_ok())
        .result("radius", z.radius().as_ref().map(radius_json).map_err(|e| e.to_string()).unwrap_or_else(|e| json!({ "error": e })));
    if with_poles.is_some() || with_zeros.is_some() {
        let other = RationalZeta::new(
            parse::rational_list(with_poles.unwrap_or(""))?,
            parse::rational_list(with_zeros.unwrap_or(""))?,
        )
        .map_err(computation)?;
        let check = radius_product_check(&z, &other).map_err(computation)?;
        let prod = z.product(&other);
        report.result(
            "product",
            json!({
                "poles": prod.poles().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "zeros": prod.zeros().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "radius_first": check.first.to_string(),
                "radius_second": check.second.to_string(),
                "radius_product": check.product.to_string(),
                "product_law_holds": check.equal,
            }),
        );
    }
    report.with_table(table).provenance("exact: rational arithmetic").tolerance("radius", "exact");
    Ok(report)
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn dirichlet(action: &DirichletAction, config: &Config) -> Result<Report, Failure> {
    let precision = config.precision(1e-12);
    match action {
        DirichletAction::Zeta { s } => {
            let s = parse::complex(s)?;
            let z = zeta_with_bound(s, precision).map_err(computation)?;
            let mut report = Report::new("dirichlet zeta", json!({ "s": complex_json(s), "precision": precision }));
            report
                .result("value", complex_json(z.value))
                .result("error_bound", z.error_bound)
                .provenance("Euler-Maclaurin summation")
                .tolerance("value", z.error_bound);
            Ok(report)
        }
        DirichletAction::Ramanujan { a, b, s } => {
            let s = parse::complex(s)?;
            let form = ramanujan_product_form(*a, *b);
            let n_max = config.n_max(10_000);
            let mut report = Report::new("dirichlet ramanujan", json!({ "a": a, "b": b, "s": complex_json(s), "n_max": n_max }));
            report
                .result("factors", form.zeta_factors.iter().map(|f| json!({ "scale": f.scale, "shift": f.shift, "exponent": f.exponent })).collect::<Vec<_>>())
                .result("abscissa", form.abscissa);
            if s.re > form.abscissa {
                let closed = form.eval(s, &[], precision).map_err(computation)?;
                let (x, y) = (OrbitSeq::power(*a), OrbitSeq::power(*b));
                let truncated = truncated_eval(&x.product(&y), s, n_max, None).map_err(computation)?;
                report
                    .result("closed_form", complex_json(closed.value))
                    .result("truncated", complex_json(truncated.value))
                    .result("difference", (closed.value - truncated.value).norm());
            }
            report.provenance("closed form; truncated sum for comparison").tolerance("closed_form", precision);
            Ok(report)
        }
        DirichletAction::Truncated {
            family,
            s,
            growth_degree,
            growth_constant,
        } => {
            let orbits = parse::orbit_family(family)?;
            let s = parse::complex(s)?;
            let n_max = config.n_max(10_000);
            let growth = growth_degree.map(|degree| PolyGrowth { constant: *growth_constant, degree });
            let t = truncated_eval(&orbits, s, n_max, growth).map_err(computation)?;
            let mut report = Report::new("dirichlet truncated", json!({ "family": family, "s": complex_json(s), "n_max": n_max }));
            report
                .result("value", complex_json(t.value))
                .result("tail_bound", t.tail_bound)
                .provenance("partial sum")
                .tolerance("value", t.tail_bound.map_or(Value::from("unbounded"), Value::from));
            Ok(report)
        }
        DirichletAction::Feigenbaum { kind, s } => {
            let parsed = match kind.split_once(':') {
                Some(("iterate", k)) => FeigenbaumKind::Iterate(k.parse().map_err(|_| Failure::Usage(format!("bad iterate {k:?}")))?),
                None if kind == "base" => FeigenbaumKind::Base,
                None if kind == "square" => FeigenbaumKind::Square,
                _ => return Err(Failure::Usage(format!("unknown Feigenbaum kind {kind:?}"))),
            };
            let n_max = config.n_max(64);
            let mut table = Table::new(&["n", "coefficient"]);
            for n in 1..=n_max {
                let c = parsed.coefficient(n).map_err(computation)?;
                table.push(vec![n.to_string(), c.to_string()]);
            }
            let mut report = Report::new("dirichlet feigenbaum", json!({ "kind": kind, "s": s, "n_max": n_max }));
            report.result("abscissa", parsed.abscissa());
            if let Some(s) = s {
                let s = parse::complex(s)?;
                report.result("value", complex_json(parsed.eval(s).map_err(computation)?));
            }
            report.with_table(table).provenance("exact: geometric-series closed form").tolerance("coefficients", "exact");
            Ok(report)
        }
        DirichletAction::Abscissa {
            left,
            right,
            sigma1,
            sigma2,
            s,
        } => {
            let x = parse::orbit_family(left)?;
            let n_max = config.n_max(100_000);
            let mut report = Report::new(
                "dirichlet abscissa",
                json!({ "left": left, "right": right, "sigma1": sigma1, "sigma2": sigma2, "s": s, "n_max": n_max }),
            );
            let series = match right {
                Some(r) => {
                    let y = parse::orbit_family(r)?;
                    let ok = abscissa_bound_check(&x, *sigma1, &y, *sigma2, *s, n_max).map_err(computation)?;
                    report.result("product_converges", ok);
                    x.product(&y)
                }
                None => x,
            };
            let evidence = block_evidence(&series, *s, n_max).map_err(computation)?;
            let mut table = Table::new(&["block", "sum"]);
            for (j, b) in evidence.blocks.iter().enumerate() {
                table.push(vec![j.to_string(), b.to_string()]);
            }
            report
                .result("decay_ratio", evidence.decay_ratio)
                .result("converges", evidence.converges)
                .with_table(table)
                .provenance("finite-range evidence: dyadic block sums")
                .tolerance("decay_threshold", orbitzeta_core::dirser::abscissa::DECAY_THRESHOLD);
            Ok(report)
        }
    }
}

fn mfold(a: u32, m: u32, coeffs: &str) -> Result<Report, Failure> {
    let spec = MFoldSpec::new(a, m).map_err(computation)?;
    let range = parse::range(coeffs)?;
    if *range.start() < 1 {
        return Err(Failure::Usage("coefficient range must start at 1".into()));
    }
    let form = m_fold_form(spec).map_err(computation)?;
    let end = *range.end() as usize;
    let values = form.coefficients(end);
    let mut table = Table::new(&["n", "value"]);
    for n in range {
        table.push(vec![n.to_string(), values[n as usize].to_string()]);
    }
    let factor = form.euler_factor.as_ref().map(|h| {
        h.coeffs()
            .iter()
            .map(|poly| poly.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    });
    let mut report = Report::new("mfold", json!({ "a": a, "m": m, "coeffs": coeffs }));
    report
        .result("abscissa", form.abscissa)
        .result("zeta_shifts", spec.shifts())
        .result("euler_factor_x_coefficients_in_p", factor)
        .with_table(table)
        .provenance("exact: prime-power formula and exact polynomial division")
        .tolerance("coefficients", "exact");
    Ok(report)
}

fn perron(a: u32, m: u32, n_values: &[u64], config: &Config) -> Result<Report, Failure> {
    let spec = MFoldSpec::new(a, m).map_err(computation)?;
    let precision = config.precision(1e-5);
    let primes = config.primes(1_000_000)?;
    let asymptote = perron_asymptote(spec, &primes, precision).map_err(computation)?;
    let default_ns: Vec<u64> = match spec.abscissa() {
        0..=2 => vec![1000, 10_000, 100_000],
        3 => vec![300, 1000, 3000],
        _ => vec![100, 300],
    };
    let ns = if n_values.is_empty() { &default_ns } else { n_values };
    let seq = orbitzeta_core::dirser::m_fold_orbit_seq(spec);
    let mut table = Table::new(&["N", "pi", "asymptote", "ratio"]);
    for &n in ns {
        let count = pi_count(&seq, n).map_err(computation)?;
        let predicted = asymptote.constant * (n as f64).powi(asymptote.exponent as i32);
        let ratio = count.to_f64().unwrap_or(f64::NAN) / predicted;
        table.push(vec![n.to_string(), count.to_string(), predicted.to_string(), ratio.to_string()]);
    }
    let mut report = Report::new("perron", json!({ "a": a, "m": m, "prime_bound": primes.last(), "precision": precision }));
    let c = perron_constant(spec, &primes, precision).map_err(computation)?;
    report
        .result("euler_constant", c.value)
        .result("euler_constant_tail_bound", c.tail_bound)
        .result("constant", asymptote.constant)
        .result("exponent", asymptote.exponent)
        .provenance("derived: residue at the rightmost pole")
        .tolerance("euler_constant", c.tail_bound)
        .tolerance("constant", asymptote.error_bound);
    if (a, m) == (0, 3) {
        report
            .result("published_euler_constant", PUBLISHED_C3)
            .provenance("published value for C_3");
    }
    if (a, m) == (0, 2) {
        report
            .result("published_constant", PUBLISHED_SQUARE_CONSTANT)
            .result("published_constant_note", "disagrees with the residue value 1.25; brute-force counts support 1.25")
            .provenance("published value pi^2/12, discrepant");
    }
    report.with_table(table);
    Ok(report)
}

fn zero_json(z: &orbitzeta_core::boundary::EulerFactorZero) -> Value {
    json!({ "p": z.p, "k": z.k, "s": complex_json(z.s), "alpha": z.alpha, "residual": triple_factor(z.p, z.s).norm() })
}

fn boundary(
    p: Option<u64>,
    k_range: &str,
    target: Option<&str>,
    epsilon: f64,
    table_bounds: &[u64],
    config: &Config,
) -> Result<Report, Failure> {
    let mut report = Report::new(
        "boundary",
        json!({ "p": p, "k_range": k_range, "target": target, "epsilon": epsilon, "table": table_bounds, "prime_bound": config.prime_bound }),
    );
    report.provenance("derived: quadratic roots in p^{-s}");
    if let Some(p) = p {
        let (plus, minus) = alpha_roots(p).map_err(computation)?;
        let zeros = zero_lattice(p, parse::range(k_range)?).map_err(computation)?;
        let mut table = Table::new(&["p", "k", "re", "im", "residual"]);
        for z in &zeros {
            table.push(vec![
                z.p.to_string(),
                z.k.to_string(),
                z.s.re.to_string(),
                z.s.im.to_string(),
                triple_factor(z.p, z.s).norm().to_string(),
            ]);
        }
        report
            .result("alpha_plus", plus)
            .result("alpha_minus", minus)
            .result("zeros", zeros.iter().map(zero_json).collect::<Vec<_>>())
            .tolerance("residual", 1e-10);
        report.table = table;
    }
    if let Some(target) = target {
        let t = parse::complex(target)?;
        let primes = config.primes(100_000)?;
        if !table_bounds.is_empty() {
            let rows = accumulation_table(t, &primes, table_bounds).map_err(computation)?;
            let mut table = Table::new(&["p", "distance", "zero_p", "zero_re", "zero_im"]);
            for row in &rows {
                let (d, zp, re, im) = row.report.map_or((f64::INFINITY, 0, f64::NAN, f64::NAN), |r| {
                    (r.distance, r.nearest.p, r.nearest.s.re, r.nearest.s.im)
                });
                table.push(vec![row.prime_bound.to_string(), d.to_string(), zp.to_string(), re.to_string(), im.to_string()]);
            }
            report.result("accumulation", table.to_json());
            report.table = table;
        }
        match approach_boundary(t, epsilon, &primes) {
            Ok(r) => {
                report.result("nearest", zero_json(&r.nearest)).result("distance", r.distance).result("found", true);
            }
            Err(BoundaryError::NotFoundInRange { distance, nearest }) => {
                report
                    .result("nearest", nearest.as_ref().map(zero_json))
                    .result("distance", distance)
                    .result("found", false);
                report.error = Some(ErrorInfo::from_error(&BoundaryError::NotFoundInRange { distance, nearest }));
            }
            Err(e) => return Err(computation(e)),
        }
        report.tolerance("epsilon", epsilon);
    }
    if p.is_none() && target.is_none() {
        return Err(Failure::Usage("give --p for a zero lattice or --target for an approach scan".into()));
    }
    Ok(report)
}

fn ledger_json(ledger: &orbitzeta_core::ghost::GhostLedger) -> (Value, Value) {
    let map = |m: &std::collections::BTreeMap<(u32, u32), num_bigint::BigInt>| {
        m.iter().map(|(&(a, b), c)| json!({ "m": a, "n": b, "value": c.to_string() })).collect::<Vec<_>>()
    };
    (Value::from(map(&ledger.exponents)), Value::from(map(&ledger.remainder)))
}

fn poly_json(p: &BivariatePoly) -> Value {
    Value::from(
        p.terms()
            .map(|(&(a, b), c)| json!({ "x": a, "y": b, "coefficient": c.to_string() }))
            .collect::<Vec<_>>(),
    )
}

fn ghost(action: &GhostAction, config: &Config) -> Result<Report, Failure> {
    match action {
        GhostAction::Decompose { poly, order } => {
            let f = parse::polynomial(poly)?;
            let ledger = decompose(&f, *order).map_err(computation)?;
            let (c, e) = ledger_json(&ledger);
            let mut table = Table::new(&["m", "n", "c"]);
            for (&(m, n), v) in &ledger.exponents {
                table.push(vec![m.to_string(), n.to_string(), v.to_string()]);
            }
            let mut report = Report::new("ghost decompose", json!({ "poly": poly, "order": order }));
            report
                .result("exponents", c)
                .result("remainder", e)
                .result("margin", ledger.margin)
                .result("support_n_le_m", ledger.support_holds())
                .result("region_bound", ledger.region_bound())
                .with_table(table)
                .provenance("exact: lexicographic elimination")
                .tolerance("exponents", "exact");
            Ok(report)
        }
        GhostAction::Reconstruct { poly, order } => {
            let f = parse::polynomial(poly)?;
            let ledger = decompose(&f, *order).map_err(computation)?;
            let rebuilt = reconstruct(&ledger, *order).map_err(computation)?;
            let mut report = Report::new("ghost reconstruct", json!({ "poly": poly, "order": order }));
            report
                .result("reconstruction", poly_json(&rebuilt))
                .result("matches_input", rebuilt == f.truncate(*order))
                .provenance("exact")
                .tolerance("reconstruction", "exact");
            Ok(report)
        }
        GhostAction::Continuation { poly, s, order } => {
            let f = parse::polynomial(poly)?;
            let s = parse::complex(s)?;
            let primes = config.primes(100_000)?;
            let precision = config.precision(1e-14);
            let mut report = Report::new(
                "ghost continuation",
                json!({ "poly": poly, "s": complex_json(s), "order": order, "prime_bound": primes.last(), "precision": precision }),
            );
            report.provenance("zeta factors times finite Euler product of the remainder");
            match continuation_eval(&f, s, *order, &primes, precision) {
                Ok(r) => {
                    report
                        .result("value", complex_json(r.value))
                        .result("tail_bound", r.tail_bound)
                        .tolerance("value", r.tail_bound);
                    if let Some((direct, bound)) = r.direct {
                        report
                            .result("direct", complex_json(direct))
                            .result("direct_tail_bound", bound)
                            .result("difference", (r.value - direct).norm());
                    }
                }
                // a pole is an answer, not a failure
                Err(GhostError::PoleHit { m, n }) => {
                    report.result("pole", json!({ "m": m, "n": n }));
                }
                Err(e) => return Err(computation(e)),
            }
            Ok(report)
        }
    }
}

fn verify_cmd(config: &Config) -> Report {
    let results = verify::run_all(config.seed);
    let passed = results.iter().all(|r| r.passed);
    let mut report = Report::new("verify", json!({ "seed": config.seed }));
    let mut table = Table::new(&["criterion", "passed", "seconds", "detail"]);
    for r in &results {
        table.push(vec![r.id.to_string(), r.passed.to_string(), format!("{:.3}", r.seconds), r.detail.clone()]);
    }
    report
        .result("criteria", serde_json::to_value(&results).expect("plain data"))
        .result("all_passed", passed)
        .provenance("verification suite")
        .tolerance("per_criterion", "see criterion detail");
    report.table = table;
    if !passed {
        let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
        report.error = Some(ErrorInfo {
            name: "CriteriaFailed".into(),
            message: format!("criteria {} failed", failed.join(", ")),
        });
    }
    report
}
