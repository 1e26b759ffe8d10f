//! Command-line interface: every library operation as a subcommand with
//! CSV/JSON output for scripting and plotting.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 resource limit exceeded.
//! The dyadic census cap honours the `LATTICE_RULES_DYADIC_CAP` environment
//! variable (default 24).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bounds::BoundParams;
use crate::diophantine::{
    cfrac_rational, convergents, fibonacci_rule, k_value, named_alpha, Alpha, AlphaKind,
};
use crate::error::{LatticeError, Result};
use crate::lattice::{enumerate_points, LatticeSpec};
use crate::quadrature::{convergence_study, study_csv, Integrand, StudyOptions};
use crate::zaremba::{
    dyadic_count_with_cap, search_best_gen, zaremba_brute, zaremba_index, zaremba_with_budget,
    DyadicIndex, SearchMode, ZarembaResult, DEFAULT_DYADIC_CAP,
};

#[derive(Parser)]
#[command(
    name = "lattice-rules",
    version,
    about = "Lattice rules for quasi-Monte Carlo integration: point sets, Zaremba indices, \
             dyadic censuses, error bounds and convergence studies"
)]
struct Cli {
    /// Output format (default: JSON for scalar results, CSV for tables)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Cap worker-thread parallelism
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Kronecker,
    Rank1,
    Frolov,
}

#[derive(Args)]
struct LatticeArgs {
    /// Lattice family
    #[arg(long, value_enum)]
    family: Family,

    /// Number of points N (kronecker / rank1)
    #[arg(long)]
    n: Option<u64>,

    /// Rank-1 generator components g1,g2,...
    #[arg(long = "gen", value_delimiter = ',', allow_hyphen_values = true)]
    generator: Option<Vec<i64>>,

    /// Kronecker generator as exact rationals p/q,...
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<String>>,

    /// Named irrational generator: golden | sqrt2 | sqrtprimes:2,3 | exp:1,1/2
    #[arg(long)]
    real: Option<String>,

    /// Dimension d
    #[arg(long)]
    dim: Option<usize>,

    /// Frolov shrinking factor (> 1)
    #[arg(long)]
    a: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the lattice point set as CSV
    Points(LatticeArgs),

    /// Compute the Zaremba index and a witness dual vector
    Zaremba {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Use the brute-force oracle instead of the structured search
        #[arg(long)]
        brute: bool,
        /// Coefficient box for brute / budget searches
        #[arg(long = "box")]
        box_: Option<u64>,
    },

    /// Continued-fraction expansion, K values and convergents
    Cfrac {
        /// Rational input p/q
        #[arg(long, conflicts_with = "real")]
        rational: Option<String>,
        /// Named real input (golden | sqrt2 | sqrtprimes:p | exp:r)
        #[arg(long)]
        real: Option<String>,
        /// Number of convergents to report
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },

    /// Exact dual-lattice counts over all dyadic annuli with |m|_1 <= mmax
    DyadicCensus {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        mmax: u32,
        /// Search budget for the rho reference column on unstructured lattices
        #[arg(long = "box")]
        box_: Option<u64>,
    },

    /// Worst-case-error bound evaluation (truncated sum + closed form)
    Bound {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 2.0)]
        theta: f64,
        /// Truncation level (default ceil(2 log2 N) + 8)
        #[arg(long)]
        mmax: Option<u32>,
        #[arg(long = "box")]
        box_: Option<u64>,
    },

    /// Empirical convergence study over a family of rules
    Converge {
        /// Rule family
        #[arg(long, value_enum)]
        rule: Rule,
        /// Integrand, e.g. bump:2
        #[arg(long, default_value = "bump:2")]
        integrand: String,
        #[arg(long)]
        nmin: u64,
        #[arg(long)]
        nmax: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Named real generator for the kronecker rule
        #[arg(long, default_value = "golden")]
        real: String,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 2.0)]
        theta: f64,
        /// Also evaluate the truncated dyadic sum per lattice
        #[arg(long)]
        with_bound_sum: bool,
    },

    /// Search for the generator with the largest Zaremba index
    SearchGen {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rule {
    Fibonacci,
    Korobov,
    Kronecker,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Full,
    Korobov,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Some(threads) = cli.threads {
        // A later call fails if a global pool already exists; that is fine.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match dispatch(&cli) {
        Ok(text) => match emit(&cli.output, &text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn dyadic_cap() -> u32 {
    std::env::var("LATTICE_RULES_DYADIC_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_DYADIC_CAP)
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a, b),
        None => (text, "1"),
    };
    let p: i64 = num
        .trim()
        .parse()
        .map_err(|_| LatticeError::invalid(format!("bad rational {text}")))?;
    let q: i64 = den
        .trim()
        .parse()
        .map_err(|_| LatticeError::invalid(format!("bad rational {text}")))?;
    if q == 0 {
        return Err(LatticeError::invalid("rational with zero denominator"));
    }
    Ok(BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn parse_named_real(name: &str, dim: Option<usize>) -> Result<(Vec<Alpha>, usize)> {
    let (kind, implied_d) = if name == "golden" {
        (AlphaKind::GoldenRatio, 2)
    } else if name == "sqrt2" {
        (AlphaKind::SqrtPrimes(vec![2]), 2)
    } else if let Some(list) = name.strip_prefix("sqrtprimes:") {
        let primes: Vec<u64> = list
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| LatticeError::invalid(format!("bad prime {t}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let d = primes.len() + 1;
        (AlphaKind::SqrtPrimes(primes), d)
    } else if let Some(list) = name.strip_prefix("exp:") {
        let rs: Vec<BigRational> = list
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        let d = rs.len() + 1;
        (AlphaKind::ExpRationals(rs), d)
    } else {
        return Err(LatticeError::invalid(format!(
            "unknown named real '{name}' (try golden, sqrt2, sqrtprimes:2,3 or exp:1)"
        )));
    };
    let d = dim.unwrap_or(implied_d);
    let named = named_alpha(kind, d)?;
    Ok((named.alphas(), d))
}

fn build_spec(args: &LatticeArgs) -> Result<LatticeSpec> {
    match args.family {
        Family::Rank1 => {
            let n = args
                .n
                .ok_or_else(|| LatticeError::invalid("rank1 requires --n"))?;
            let g = args
                .generator
                .as_ref()
                .ok_or_else(|| LatticeError::invalid("rank1 requires --gen"))?;
            if let Some(d) = args.dim {
                if d != g.len() + 1 {
                    return Err(LatticeError::invalid(format!(
                        "--dim {d} conflicts with {} generator components",
                        g.len()
                    )));
                }
            }
            let spec = LatticeSpec::rank1(n, g)?;
            let degenerate = spec.degenerate_coords();
            if !degenerate.is_empty() {
                eprintln!(
                    "warning: generator components {degenerate:?} are 0 mod N; the point set \
                     degenerates in those coordinates"
                );
            }
            Ok(spec)
        }
        Family::Kronecker => {
            let n = args
                .n
                .ok_or_else(|| LatticeError::invalid("kronecker requires --n"))?;
            let alphas: Vec<Alpha> = match (&args.alpha, &args.real) {
                (Some(_), Some(_)) => {
                    return Err(LatticeError::invalid("--alpha and --real are exclusive"))
                }
                (Some(list), None) => list
                    .iter()
                    .map(|t| parse_rational(t).map(Alpha::Rational))
                    .collect::<Result<Vec<_>>>()?,
                (None, Some(name)) => parse_named_real(name, args.dim)?.0,
                (None, None) => {
                    return Err(LatticeError::invalid(
                        "kronecker requires --alpha or --real",
                    ))
                }
            };
            if let Some(d) = args.dim {
                if d != alphas.len() + 1 {
                    return Err(LatticeError::invalid(format!(
                        "--dim {d} conflicts with {} generator components",
                        alphas.len()
                    )));
                }
            }
            LatticeSpec::kronecker(n, alphas)
        }
        Family::Frolov => {
            let d = args
                .dim
                .ok_or_else(|| LatticeError::invalid("frolov requires --dim"))?;
            let a = args
                .a
                .ok_or_else(|| LatticeError::invalid("frolov requires --a"))?;
            LatticeSpec::frolov(d, a)
        }
    }
}

#[derive(Serialize)]
struct ZarembaOut {
    rho: f64,
    witness: Vec<f64>,
    exact: bool,
}

fn zaremba_json(r: &ZarembaResult) -> ZarembaOut {
    ZarembaOut {
        rho: r.rho_f64(),
        witness: r.witness_f64(),
        exact: r.exact,
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| LatticeError::Internal(e.to_string()))
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn dispatch(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Points(args) => {
            let spec = build_spec(args)?;
            let ps = enumerate_points(&spec)?;
            match cli.format {
                Some(Format::Json) => {
                    #[derive(Serialize)]
                    struct PointsOut {
                        points: Vec<Vec<f64>>,
                        weight: f64,
                        exact: bool,
                    }
                    to_json(&PointsOut {
                        points: ps.points_f64(),
                        weight: ps.weight.to_f64().unwrap_or(f64::NAN),
                        exact: ps.exact,
                    })
                }
                _ => Ok(ps.to_csv()),
            }
        }

        Command::Zaremba {
            lattice,
            brute,
            box_,
        } => {
            let spec = build_spec(lattice)?;
            let result = if *brute {
                let b = box_.or(lattice.n).ok_or_else(|| {
                    LatticeError::invalid("--brute requires --box (or --n to default to)")
                })?;
                zaremba_brute(&spec, b)?
            } else {
                match spec {
                    LatticeSpec::Frolov { .. } | LatticeSpec::GeneralMatrix { .. } => {
                        let b = box_.ok_or_else(|| {
                            LatticeError::invalid(
                                "frolov/general lattices need an explicit --box budget",
                            )
                        })?;
                        zaremba_with_budget(&spec, b)?
                    }
                    _ => zaremba_index(&spec)?,
                }
            };
            match cli.format {
                Some(Format::Csv) => {
                    let mut out = String::from("rho,exact,witness\n");
                    let w: Vec<String> = result.witness_f64().iter().map(|&v| fmt17(v)).collect();
                    out.push_str(&format!(
                        "{},{},{}\n",
                        fmt17(result.rho_f64()),
                        result.exact,
                        w.join(";")
                    ));
                    Ok(out)
                }
                _ => to_json(&zaremba_json(&result)),
            }
        }

        Command::Cfrac {
            rational,
            real,
            depth,
        } => {
            #[derive(Serialize)]
            struct CfracOut {
                input: String,
                canonical: Option<String>,
                k_canonical: Option<u64>,
                variant: Option<String>,
                k_variant: Option<u64>,
                quotient_prefix: Option<String>,
                k_prefix: Option<u64>,
                convergents: Vec<String>,
            }
            let out = match (rational, real) {
                (Some(text), None) => {
                    let r = parse_rational(text)?;
                    let p = r
                        .numer()
                        .to_i64()
                        .ok_or_else(|| LatticeError::invalid("numerator out of range"))?;
                    let q = r
                        .denom()
                        .to_u64()
                        .ok_or_else(|| LatticeError::invalid("denominator out of range"))?;
                    let canonical = cfrac_rational(p, q)?;
                    let variant = canonical.variant();
                    let convs = convergents(&Alpha::Rational(r), *depth)
                        .unwrap_or_default()
                        .iter()
                        .map(|(pk, qk)| format!("{pk}/{qk}"))
                        .collect();
                    CfracOut {
                        input: text.clone(),
                        k_canonical: k_value(&canonical).ok(),
                        canonical: Some(canonical.render()),
                        k_variant: k_value(&variant).ok(),
                        variant: Some(variant.render()),
                        quotient_prefix: None,
                        k_prefix: None,
                        convergents: convs,
                    }
                }
                (None, Some(name)) => {
                    let (alphas, _) = parse_named_real(name, None)?;
                    if alphas.len() != 1 {
                        return Err(LatticeError::invalid(
                            "cfrac --real takes a single-component name",
                        ));
                    }
                    let alpha = &alphas[0];
                    let convs = convergents(alpha, *depth)?;
                    // Certified quotient prefix, one per convergent requested.
                    let value = alpha.to_rational();
                    let a0 = value.floor().to_integer().to_i64().unwrap();
                    let mut prefix = Vec::new();
                    let mut lo_hi = {
                        let Alpha::Real(fx) = alpha else {
                            unreachable!()
                        };
                        fx.enclosure()
                    };
                    let mut sub = BigRational::from_integer(a0.into());
                    for _ in 0..*depth {
                        let flo = &lo_hi.0 - &sub;
                        let fhi = &lo_hi.1 - &sub;
                        if flo <= BigRational::from_integer(0.into()) {
                            break;
                        }
                        let nlo = fhi.recip();
                        let nhi = flo.recip();
                        let a = nlo.floor().to_integer();
                        if nhi.floor().to_integer() != a {
                            break;
                        }
                        prefix.push(a.to_u64().unwrap_or(0));
                        sub = BigRational::from_integer(a.clone());
                        lo_hi = (nlo, nhi);
                    }
                    let rendered = format!(
                        "[{a0}; {}]",
                        prefix
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    CfracOut {
                        input: name.clone(),
                        canonical: None,
                        k_canonical: None,
                        variant: None,
                        k_variant: None,
                        k_prefix: prefix.iter().copied().max(),
                        quotient_prefix: Some(rendered),
                        convergents: convs.iter().map(|(pk, qk)| format!("{pk}/{qk}")).collect(),
                    }
                }
                _ => {
                    return Err(LatticeError::invalid(
                        "cfrac requires exactly one of --rational or --real",
                    ))
                }
            };
            to_json(&out)
        }

        Command::DyadicCensus {
            lattice,
            mmax,
            box_,
        } => {
            let spec = build_spec(lattice)?;
            let cap = dyadic_cap();
            if *mmax > cap {
                return Err(LatticeError::ResourceLimit {
                    what: "dyadic census |m|_1".into(),
                    required: *mmax as u128,
                    cap: cap as u128,
                });
            }
            let rho = match &spec {
                LatticeSpec::Frolov { .. } | LatticeSpec::GeneralMatrix { .. } => {
                    let b = box_.ok_or_else(|| {
                        LatticeError::invalid("census on unstructured lattices needs --box")
                    })?;
                    zaremba_with_budget(&spec, b)?.rho_f64()
                }
                _ => zaremba_index(&spec)?.rho_f64(),
            };
            let d = spec.dim();
            let mut rows = Vec::new();
            collect_indices(d, *mmax, &mut rows);
            let mut out = String::new();
            let header: Vec<String> = (1..=d).map(|i| format!("m{i}")).collect();
            out.push_str(&format!("{},|m|1,count,bound\n", header.join(",")));
            for m in rows {
                let l: u32 = m.iter().sum();
                let count = dyadic_count_with_cap(&spec, &DyadicIndex(m.clone()), cap)?;
                let bound = 2f64.powi(l as i32 + d as i32 + 1) / rho;
                let cols: Vec<String> = m.iter().map(u32::to_string).collect();
                out.push_str(&format!(
                    "{},{l},{count},{}\n",
                    cols.join(","),
                    fmt17(bound)
                ));
            }
            Ok(out)
        }

        Command::Bound {
            lattice,
            s,
            p,
            theta,
            mmax,
            box_,
        } => {
            let spec = build_spec(lattice)?;
            let ps = enumerate_points(&spec)?;
            let n = ps.len() as u64;
            let params = BoundParams::new(
                *s,
                *p,
                *theta,
                mmax.unwrap_or_else(|| BoundParams::default_mmax(n)),
            )?;
            let rho = match &spec {
                LatticeSpec::Frolov { .. } | LatticeSpec::GeneralMatrix { .. } => {
                    let b = box_.ok_or_else(|| {
                        LatticeError::invalid("bounds on unstructured lattices need --box")
                    })?;
                    zaremba_with_budget(&spec, b)?.rho_f64()
                }
                _ => zaremba_index(&spec)?.rho_f64(),
            };
            let sum = crate::bounds::wce_bound_sum_with_rho(&spec, &params, rho)?;
            let d_t = ps.weight.to_f64().map(|w| 1.0 / w).unwrap_or(f64::NAN);
            let closed =
                crate::bounds::wce_bound_closed(rho.max(1.0), d_t.max(1.0), spec.dim(), &params)?;
            #[derive(Serialize)]
            struct BoundOut {
                n: u64,
                rho: f64,
                bound_sum: f64,
                bound_closed: f64,
                tail_estimate: f64,
                truncated_below_rho: bool,
                mmax: u32,
            }
            let out = BoundOut {
                n,
                rho,
                bound_sum: sum.value,
                bound_closed: closed,
                tail_estimate: sum.tail_estimate,
                truncated_below_rho: sum.truncated_below_rho,
                mmax: params.mmax,
            };
            match cli.format {
                Some(Format::Csv) => Ok(format!(
                    "N,rho,bound_sum,bound_closed,tail_estimate\n{},{},{},{},{}\n",
                    out.n,
                    fmt17(out.rho),
                    fmt17(out.bound_sum),
                    fmt17(out.bound_closed),
                    fmt17(out.tail_estimate)
                )),
                _ => to_json(&out),
            }
        }

        Command::Converge {
            rule,
            integrand,
            nmin,
            nmax,
            dim,
            real,
            s,
            p,
            theta,
            with_bound_sum,
        } => {
            if nmin >= nmax {
                return Err(LatticeError::invalid("--nmin must be below --nmax"));
            }
            let f = parse_integrand(integrand, *dim)?;
            let family = build_family(*rule, *nmin, *nmax, *dim, real)?;
            let mmax = BoundParams::default_mmax(*nmax).min(dyadic_cap());
            let params = BoundParams::new(*s, *p, *theta, mmax)?;
            let (rows, fit) = convergence_study(
                &family,
                &f,
                &params,
                &StudyOptions {
                    with_bound_sum: *with_bound_sum,
                },
            )?;
            Ok(study_csv(&rows, &fit))
        }

        Command::SearchGen { n, dim, mode } => {
            let mode = match mode {
                Mode::Full => SearchMode::Full,
                Mode::Korobov => SearchMode::Korobov,
            };
            let (g, r) = search_best_gen(*n, *dim, mode)?;
            match cli.format {
                Some(Format::Json) => {
                    #[derive(Serialize)]
                    struct SearchOut {
                        g: Vec<u64>,
                        rho: f64,
                        witness: Vec<f64>,
                        exact: bool,
                    }
                    to_json(&SearchOut {
                        g,
                        rho: r.rho_f64(),
                        witness: r.witness_f64(),
                        exact: r.exact,
                    })
                }
                _ => {
                    let d = dim;
                    let gh: Vec<String> = (1..*d).map(|i| format!("g{i}")).collect();
                    let wh: Vec<String> = (1..=*d).map(|i| format!("w{i}")).collect();
                    let mut out = format!("{},rho,{}\n", gh.join(","), wh.join(","));
                    let gs: Vec<String> = g.iter().map(u64::to_string).collect();
                    let ws: Vec<String> = r.witness_f64().iter().map(|&v| fmt17(v)).collect();
                    out.push_str(&format!(
                        "{},{},{}\n",
                        gs.join(","),
                        fmt17(r.rho_f64()),
                        ws.join(",")
                    ));
                    Ok(out)
                }
            }
        }
    }
}

fn collect_indices(d: usize, mmax: u32, out: &mut Vec<Vec<u32>>) {
    fn rec(d: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == d - 1 {
            for v in 0..=left {
                cur.push(v);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(d, left - v, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(d);
    rec(d, mmax, &mut cur, out);
}

fn parse_integrand(text: &str, d: usize) -> Result<Integrand> {
    if let Some(a) = text.strip_prefix("bump:") {
        let a: u32 = a
            .parse()
            .map_err(|_| LatticeError::invalid(format!("bad integrand {text}")))?;
        Integrand::bump(a, d)
    } else {
        Err(LatticeError::invalid(format!(
            "unknown integrand '{text}' (expected bump:<a>)"
        )))
    }
}

/// Ladder of rule sizes for a convergence study.
fn build_family(
    rule: Rule,
    nmin: u64,
    nmax: u64,
    dim: usize,
    real: &str,
) -> Result<Vec<LatticeSpec>> {
    match rule {
        Rule::Fibonacci => {
            if dim != 2 {
                return Err(LatticeError::invalid("fibonacci rules are two-dimensional"));
            }
            let mut out = Vec::new();
            for n in 3..=91u32 {
                let (big, small) = fibonacci_rule(n)?;
                if big > nmax {
                    break;
                }
                if big >= nmin {
                    out.push(LatticeSpec::rank1(big, &[small as i64])?);
                }
            }
            Ok(out)
        }
        Rule::Korobov => {
            let targets = geometric_ladder(nmin, nmax, 8);
            let mut out = Vec::new();
            let mut used = std::collections::BTreeSet::new();
            for t in targets {
                let n = next_prime(t);
                if n > nmax || !used.insert(n) {
                    continue;
                }
                let (g, _) = search_best_gen(n, dim, SearchMode::Korobov)?;
                let g_i: Vec<i64> = g.iter().map(|&v| v as i64).collect();
                out.push(LatticeSpec::rank1(n, &g_i)?);
            }
            Ok(out)
        }
        Rule::Kronecker => {
            let (alphas, d) = parse_named_real(real, Some(dim))?;
            let _ = d;
            let targets = geometric_ladder(nmin, nmax, 10);
            let mut out = Vec::new();
            let mut used = std::collections::BTreeSet::new();
            for n in targets {
                if used.insert(n) {
                    out.push(LatticeSpec::kronecker(n, alphas.clone())?);
                }
            }
            Ok(out)
        }
    }
}

fn geometric_ladder(nmin: u64, nmax: u64, steps: usize) -> Vec<u64> {
    let lo = (nmin.max(2)) as f64;
    let hi = nmax as f64;
    let ratio = (hi / lo).powf(1.0 / (steps.max(2) - 1) as f64);
    (0..steps)
        .map(|i| (lo * ratio.powi(i as i32)).round() as u64)
        .map(|n| n.clamp(nmin.max(2), nmax))
        .collect()
}

fn next_prime(n: u64) -> u64 {
    let is_prime = |v: u64| -> bool {
        if v < 2 {
            return false;
        }
        let mut p = 2;
        while p * p <= v {
            if v % p == 0 {
                return false;
            }
            p += 1;
        }
        true
    };
    let mut v = n.max(2);
    while !is_prime(v) {
        v += 1;
    }
    v
}
