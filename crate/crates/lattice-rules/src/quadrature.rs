//! QMC application to test integrands and empirical convergence studies.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bounds::{wce_bound_sum, BoundParams};
use crate::error::{LatticeError, Result};
use crate::lattice::{enumerate_points, LatticeSpec};
use crate::matrix;
use crate::zaremba::zaremba_index;

/// Test integrand with a known exact integral.
///
/// The bump `prod_j (x_j (1 - x_j))^a` vanishes on the cube boundary to
/// order `a`, has compact support in the closed cube, and integrates to
/// `((a!)^2/(2a+1)!)^d` exactly.
pub enum Integrand {
    Bump {
        a: u32,
        d: usize,
    },
    Custom {
        f: Box<dyn Fn(&[f64]) -> f64 + Sync>,
        exact_integral: Option<f64>,
        smoothness_hint: f64,
    },
}

impl Integrand {
    pub fn bump(a: u32, d: usize) -> Result<Integrand> {
        if a == 0 {
            return Err(LatticeError::invalid("bump exponent must be >= 1"));
        }
        if d == 0 {
            return Err(LatticeError::invalid("dimension must be >= 1"));
        }
        Ok(Integrand::Bump { a, d })
    }

    /// `L2`-mixed-smoothness proxy: `a + 1/2` for the bump family.
    pub fn smoothness_hint(&self) -> f64 {
        match self {
            Integrand::Bump { a, .. } => *a as f64 + 0.5,
            Integrand::Custom {
                smoothness_hint, ..
            } => *smoothness_hint,
        }
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        match self {
            Integrand::Bump { a, .. } => {
                let mut prod = 1.0;
                for &xi in x {
                    if !(0.0..=1.0).contains(&xi) {
                        return 0.0;
                    }
                    prod *= (xi * (1.0 - xi)).powi(*a as i32);
                }
                prod
            }
            Integrand::Custom { f, .. } => f(x),
        }
    }

    /// Exact rational evaluation, available for the bump family.
    pub fn eval_rational(&self, x: &[BigRational]) -> Option<BigRational> {
        match self {
            Integrand::Bump { a, .. } => {
                let one = BigRational::one();
                let mut prod = BigRational::one();
                for xi in x {
                    if xi.is_negative() || xi > &one {
                        return Some(BigRational::zero());
                    }
                    let factor = xi * (&one - xi);
                    let mut pow = BigRational::one();
                    for _ in 0..*a {
                        pow *= &factor;
                    }
                    prod *= pow;
                }
                Some(prod)
            }
            Integrand::Custom { .. } => None,
        }
    }

    pub fn exact_integral_rational(&self) -> Option<BigRational> {
        match self {
            Integrand::Bump { a, d } => Some(bump_exact_integral(*a, *d)),
            Integrand::Custom { .. } => None,
        }
    }

    pub fn exact_integral_f64(&self) -> Option<f64> {
        match self {
            Integrand::Bump { a, d } => bump_exact_integral(*a, *d).to_f64(),
            Integrand::Custom { exact_integral, .. } => *exact_integral,
        }
    }
}

/// `((a!)^2 / (2a+1)!)^d`, exactly.
pub fn bump_exact_integral(a: u32, d: usize) -> BigRational {
    let fact = |n: u32| -> BigInt {
        let mut f = BigInt::one();
        for i in 2..=n {
            f *= i;
        }
        f
    };
    let one_dim = BigRational::new(fact(a) * fact(a), fact(2 * a + 1));
    let mut out = BigRational::one();
    for _ in 0..d {
        out *= &one_dim;
    }
    out
}

/// `Q_T(f) = |det T| sum_x f(x)`, in exact rational arithmetic.
/// Requires a rational-evaluable integrand (the bump family).
pub fn qmc_apply_rational(spec: &LatticeSpec, f: &Integrand) -> Result<BigRational> {
    let ps = enumerate_points(spec)?;
    let terms: Vec<BigRational> = ps
        .points
        .par_iter()
        .map(|x| {
            f.eval_rational(x)
                .ok_or_else(|| LatticeError::invalid("integrand has no rational evaluator"))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = pairwise_sum_rational(&terms);
    Ok(total * &ps.weight)
}

/// `Q_T(f)` as f64; uses the exact rational path whenever the integrand
/// admits one, otherwise a deterministic pairwise float summation.
pub fn qmc_apply(spec: &LatticeSpec, f: &Integrand) -> Result<f64> {
    match f {
        Integrand::Bump { .. } => {
            let v = qmc_apply_rational(spec, f)?;
            Ok(v.to_f64().unwrap_or(f64::NAN))
        }
        Integrand::Custom { .. } => {
            let ps = enumerate_points(spec)?;
            let pts = ps.points_f64();
            let vals: Vec<f64> = pts.par_iter().map(|x| f.eval_f64(x)).collect();
            Ok(pairwise_sum_f64(&vals) * ps.weight.to_f64().unwrap_or(f64::NAN))
        }
    }
}

fn pairwise_sum_rational(v: &[BigRational]) -> BigRational {
    match v.len() {
        0 => BigRational::zero(),
        1 => v[0].clone(),
        n => {
            let (a, b) = v.split_at(n / 2);
            pairwise_sum_rational(a) + pairwise_sum_rational(b)
        }
    }
}

/// Index-balanced tree summation: result does not depend on thread count.
fn pairwise_sum_f64(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => {
            let (a, b) = v.split_at(n / 2);
            pairwise_sum_f64(a) + pairwise_sum_f64(b)
        }
    }
}

/// One row of a convergence study.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub n: u64,
    pub abs_error: f64,
    pub bound_closed: f64,
    pub bound_sum: Option<f64>,
}

/// Least-squares fit of `log2(error)` against `log2(N)`.
#[derive(Clone, Copy, Debug)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
}

/// Ordinary least squares in log2-log2 coordinates; `residual` is the RMS of
/// the fit residuals. Rows must have distinct N and positive error.
pub fn fit_rate(rows: &[ConvergenceRow]) -> Result<RateFit> {
    let usable: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.abs_error > 0.0)
        .map(|r| ((r.n as f64).log2(), r.abs_error.log2()))
        .collect();
    let mut ns: Vec<u64> = rows
        .iter()
        .filter(|r| r.abs_error > 0.0)
        .map(|r| r.n)
        .collect();
    ns.sort_unstable();
    ns.dedup();
    if usable.len() < 3 || ns.len() < 3 {
        return Err(LatticeError::InsufficientData(format!(
            "need >= 3 rows with distinct N and positive error, have {}",
            ns.len()
        )));
    }
    let n = usable.len() as f64;
    let sx: f64 = usable.iter().map(|(x, _)| x).sum();
    let sy: f64 = usable.iter().map(|(_, y)| y).sum();
    let sxx: f64 = usable.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = usable.iter().map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return Err(LatticeError::InsufficientData(
            "degenerate abscissae".into(),
        ));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let ss: f64 = usable
        .iter()
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    Ok(RateFit {
        slope,
        intercept,
        residual: (ss / n).sqrt(),
    })
}

/// Options controlling [`convergence_study`].
#[derive(Clone, Copy, Debug, Default)]
pub struct StudyOptions {
    /// Also evaluate the truncated dyadic sum per lattice (slower).
    pub with_bound_sum: bool,
}

/// Runs `Q_T` over a family of lattices, measures absolute errors against the
/// exact integral and fits the empirical log-log rate. Rows whose error falls
/// below `10 eps |I(f)|` are excluded from the fit as roundoff noise.
pub fn convergence_study(
    family: &[LatticeSpec],
    f: &Integrand,
    params: &BoundParams,
    options: &StudyOptions,
) -> Result<(Vec<ConvergenceRow>, RateFit)> {
    let exact = f
        .exact_integral_rational()
        .ok_or_else(|| LatticeError::invalid("convergence study needs a known exact integral"))?;
    let rows: Vec<ConvergenceRow> = family
        .par_iter()
        .map(|spec| -> Result<ConvergenceRow> {
            let ps = enumerate_points(spec)?;
            let n = ps.len() as u64;
            let q = qmc_apply_rational(spec, f)?;
            let abs_error = matrix::abs(&(q - &exact)).to_f64().unwrap_or(f64::NAN);
            let rho = zaremba_index(spec)?.rho_f64();
            let d_t = ps.weight.to_f64().map(|w| 1.0 / w).unwrap_or(f64::NAN);
            let bound_closed =
                crate::bounds::wce_bound_closed(rho.max(1.0), d_t.max(1.0), spec.dim(), params)?;
            let bound_sum = if options.with_bound_sum {
                Some(wce_bound_sum(spec, params)?.value)
            } else {
                None
            };
            Ok(ConvergenceRow {
                n,
                abs_error,
                bound_closed,
                bound_sum,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let floor = 10.0 * f64::EPSILON * exact.to_f64().unwrap_or(0.0).abs();
    let fit_rows: Vec<ConvergenceRow> = rows
        .iter()
        .filter(|r| r.abs_error >= floor)
        .cloned()
        .collect();
    let fit = fit_rate(&fit_rows)?;
    Ok((rows, fit))
}

/// CSV emission: `N,error,bound_closed,bound_sum` plus a trailing
/// `# slope=<v> residual=<v>` comment line.
pub fn study_csv(rows: &[ConvergenceRow], fit: &RateFit) -> String {
    let mut out = String::from("N,error,bound_closed,bound_sum\n");
    for r in rows {
        let bs = r.bound_sum.map_or(String::new(), |v| format!("{v:.16e}"));
        out.push_str(&format!(
            "{},{:.16e},{:.16e},{}\n",
            r.n, r.abs_error, r.bound_closed, bs
        ));
    }
    out.push_str(&format!(
        "# slope={:.6} residual={:.6}\n",
        fit.slope, fit.residual
    ));
    out
}
