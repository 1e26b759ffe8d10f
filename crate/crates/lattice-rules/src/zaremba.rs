//! Zaremba index r(z) minimisation, dyadic dual-lattice censuses and
//! generator searches.
//!
//! For Kronecker and rank-1 lattices the dual has the explicit shape
//! `z = (N(k_d - alpha.k), k_1, ..., k_{d-1})`, so the index is found by
//! scanning `k` in increasing order of the hyperbolic-cross weight
//! `prod_j max(1, |k_j|)`: once that weight reaches the running best the scan
//! can stop, because every remaining candidate is at least as large. The
//! `k = 0` column contributes the starting value `N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::diophantine::Alpha;
use crate::error::{LatticeError, Result};
use crate::fixed::{Fixed, FRAC_BITS};
use crate::lattice::{dual_basis, generator_matrix, LatticeSpec};
use crate::matrix;

/// Default cap on `|m|_1` accepted by [`dyadic_count`].
pub const DEFAULT_DYADIC_CAP: u32 = 24;

/// The figure of merit, a witness dual vector attaining it, and whether the
/// value is exact (rational lattice data) or computed on 96-bit approximants.
#[derive(Clone, Debug)]
pub struct ZarembaResult {
    pub rho: BigRational,
    pub witness: Vec<BigRational>,
    pub exact: bool,
}

impl ZarembaResult {
    pub fn rho_f64(&self) -> f64 {
        self.rho.to_f64().unwrap_or(f64::NAN)
    }

    pub fn witness_f64(&self) -> Vec<f64> {
        self.witness
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

/// `r(z) = prod_j max(1, |z_j|)`.
pub fn r_product(z: &[f64]) -> f64 {
    z.iter().map(|&v| v.abs().max(1.0)).product()
}

pub fn r_product_rational(z: &[BigRational]) -> BigRational {
    let one = BigRational::one();
    z.iter()
        .map(|v| {
            let a = matrix::abs(v);
            if a > one {
                a
            } else {
                one.clone()
            }
        })
        .product()
}

/// Visits every `k` in `Z^{dm1} \ {0}` with `prod_j max(1,|k_j|) == p`, first
/// nonzero coordinate positive (the sign symmetry `k -> -k` leaves both the
/// weight and `<alpha.k>` unchanged).
fn for_each_k_of_product(dm1: usize, p: u64, f: &mut impl FnMut(&[i64])) {
    fn divisors_ge2(n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut v = 2;
        while v * v <= n {
            if n % v == 0 {
                out.push(v);
                out.push(n / v);
            }
            v += 1;
        }
        if n >= 2 {
            out.push(n);
        }
        out.sort_unstable();
        out.dedup();
        out
    }
    fn rec(k: &mut [i64], idx: usize, rem: u64, seen_nonzero: bool, f: &mut impl FnMut(&[i64])) {
        if idx == k.len() {
            if rem == 1 && seen_nonzero {
                f(k);
            }
            return;
        }
        k[idx] = 0;
        rec(k, idx + 1, rem, seen_nonzero, f);
        k[idx] = 1;
        rec(k, idx + 1, rem, true, f);
        if seen_nonzero {
            k[idx] = -1;
            rec(k, idx + 1, rem, true, f);
        }
        for v in divisors_ge2(rem) {
            k[idx] = v as i64;
            rec(k, idx + 1, rem / v, true, f);
            if seen_nonzero {
                k[idx] = -(v as i64);
                rec(k, idx + 1, rem / v, true, f);
            }
        }
        k[idx] = 0;
    }
    let mut k = vec![0i64; dm1];
    rec(&mut k, 0, p, false, f);
}

/// Raw rank-1 result: integer rho and integer witness `(z1, k_1..k_{d-1})`.
struct RawRank1 {
    rho: u128,
    witness: Vec<i128>,
}

fn zaremba_rank1_raw(n: u64, g: &[u64]) -> RawRank1 {
    let dm1 = g.len();
    let n_w = n as u128;
    let mut best: u128 = n_w;
    let mut witness: Vec<i128> = {
        let mut w = vec![0i128; dm1 + 1];
        w[0] = n as i128;
        w
    };

    if dm1 == 1 {
        // Incremental scan: m = g*k mod N.
        let g0 = g[0];
        let mut m: u64 = 0;
        let mut k: u64 = 1;
        while (k as u128) < best {
            m += g0;
            if m >= n {
                m -= n;
            }
            let dist = m.min(n - m);
            let cand = k as u128 * (dist.max(1) as u128);
            if cand < best {
                best = cand;
                let z1 = if 2 * m <= n {
                    -(m as i128)
                } else {
                    (n - m) as i128
                };
                witness = vec![z1, k as i128];
            }
            k += 1;
        }
        return RawRank1 { rho: best, witness };
    }

    let mut p: u64 = 1;
    while (p as u128) < best {
        for_each_k_of_product(dm1, p, &mut |k| {
            let dot: i128 = k
                .iter()
                .zip(g)
                .map(|(&kj, &gj)| kj as i128 * gj as i128)
                .sum();
            let m = dot.rem_euclid(n as i128) as u64;
            let dist = m.min(n - m);
            let cand = p as u128 * (dist.max(1) as u128);
            if cand < best {
                best = cand;
                let z1 = if 2 * m <= n {
                    -(m as i128)
                } else {
                    (n - m) as i128
                };
                let mut w = Vec::with_capacity(dm1 + 1);
                w.push(z1);
                w.extend(k.iter().map(|&v| v as i128));
                witness = w;
            }
        });
        p += 1;
    }
    RawRank1 { rho: best, witness }
}

fn raw_to_result(raw: RawRank1) -> ZarembaResult {
    ZarembaResult {
        rho: BigRational::from_integer(BigInt::from(raw.rho)),
        witness: raw
            .witness
            .into_iter()
            .map(|v| BigRational::from_integer(BigInt::from(v)))
            .collect(),
        exact: true,
    }
}

/// Structured search over rational Kronecker data (alpha need not be g/N).
fn zaremba_kronecker_rational(n: u64, alphas: &[BigRational]) -> ZarembaResult {
    let dm1 = alphas.len();
    let n_q = BigRational::from_integer(BigInt::from(n));
    let one = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut best = n_q.clone();
    let mut witness: Vec<BigRational> = {
        let mut w = vec![BigRational::zero(); dm1 + 1];
        w[0] = n_q.clone();
        w
    };
    let mut p: u64 = 1;
    while BigRational::from_integer(BigInt::from(p)) < best {
        for_each_k_of_product(dm1, p, &mut |k| {
            let dot: BigRational = k
                .iter()
                .zip(alphas)
                .map(|(&kj, a)| a * BigRational::from_integer(BigInt::from(kj)))
                .sum();
            let frac = &dot - dot.floor();
            let (dist, z1) = if frac <= half {
                (frac.clone(), -(&frac * &n_q))
            } else {
                let c = &one - &frac;
                (c.clone(), &c * &n_q)
            };
            let nd = &dist * &n_q;
            let factor = if nd > one { nd } else { one.clone() };
            let cand = factor * BigRational::from_integer(BigInt::from(p));
            if cand < best {
                best = cand;
                let mut w = Vec::with_capacity(dm1 + 1);
                w.push(z1);
                w.extend(
                    k.iter()
                        .map(|&v| BigRational::from_integer(BigInt::from(v))),
                );
                witness = w;
            }
        });
        p += 1;
    }
    ZarembaResult {
        rho: best,
        witness,
        exact: true,
    }
}

/// Structured search on 96-bit fixed-point data.
fn zaremba_kronecker_fixed(n: u64, alphas: &[Fixed], exact_inputs: bool) -> ZarembaResult {
    let dm1 = alphas.len();

    // Single-alpha fast path in u128 arithmetic; covers d = 2 with N small
    // enough that k*N*dist stays below 2^128.
    if dm1 == 1 && n <= (1 << 16) {
        if let Some(am) = alphas[0].frac().mantissa().to_u128() {
            let modulus: u128 = 1 << FRAC_BITS;
            let one = modulus;
            let mut acc: u128 = 0;
            let mut best: u128 = (n as u128) << FRAC_BITS;
            let mut best_k: u64 = 0; // 0 encodes the (N, 0) witness
            let mut best_neg = false;
            let mut k: u64 = 1;
            while ((k as u128) << FRAC_BITS) < best {
                acc = (acc + am) & (modulus - 1);
                let dist = acc.min(modulus - acc);
                let nd = n as u128 * dist;
                let cand = if nd >= one {
                    k as u128 * nd
                } else {
                    (k as u128) << FRAC_BITS
                };
                if cand < best {
                    best = cand;
                    best_k = k;
                    best_neg = 2 * acc <= modulus;
                }
                k += 1;
            }
            let rho = Fixed::from_mantissa(BigInt::from(best)).to_rational();
            let witness = if best_k == 0 {
                vec![
                    BigRational::from_integer(BigInt::from(n)),
                    BigRational::zero(),
                ]
            } else {
                let a = alphas[0].mul_int(best_k as i64);
                let nd = a.dist_to_int().mul_int(n as i64);
                let z1 = if best_neg { nd.neg() } else { nd };
                vec![
                    z1.to_rational(),
                    BigRational::from_integer(BigInt::from(best_k)),
                ]
            };
            return ZarembaResult {
                rho,
                witness,
                exact: exact_inputs,
            };
        }
    }

    let n_fix = Fixed::from_int(n as i64);
    let one = Fixed::one();
    let mut best = n_fix.clone();
    let mut best_k: Option<Vec<i64>> = None;
    let mut p: u64 = 1;
    while Fixed::from_int(p as i64) < best {
        for_each_k_of_product(dm1, p, &mut |k| {
            let mut dot = Fixed::zero();
            for (&kj, a) in k.iter().zip(alphas) {
                dot = dot.add(&a.mul_int(kj));
            }
            let nd = dot.dist_to_int().mul_int(n as i64);
            let factor = if nd > one { nd } else { one.clone() };
            let cand = factor.mul_int(p as i64);
            if cand < best {
                best = cand;
                best_k = Some(k.to_vec());
            }
        });
        p += 1;
    }
    let witness = match &best_k {
        None => {
            let mut w = vec![BigRational::zero(); dm1 + 1];
            w[0] = BigRational::from_integer(BigInt::from(n));
            w
        }
        Some(k) => {
            let mut dot = Fixed::zero();
            for (&kj, a) in k.iter().zip(alphas) {
                dot = dot.add(&a.mul_int(kj));
            }
            let frac = dot.frac();
            let nd = dot.dist_to_int().mul_int(n as i64);
            let z1 = if frac.add(&frac) <= one { nd.neg() } else { nd };
            let mut w = Vec::with_capacity(dm1 + 1);
            w.push(z1.to_rational());
            w.extend(
                k.iter()
                    .map(|&v| BigRational::from_integer(BigInt::from(v))),
            );
            w
        }
    };
    ZarembaResult {
        rho: best.to_rational(),
        witness,
        exact: exact_inputs,
    }
}

/// Exact Zaremba index of a Kronecker or rank-1 lattice.
///
/// Frolov and general-matrix specs have no structured dual; use
/// [`zaremba_with_budget`] for those.
pub fn zaremba_index(spec: &LatticeSpec) -> Result<ZarembaResult> {
    match spec {
        LatticeSpec::Rank1 { n, g } => Ok(raw_to_result(zaremba_rank1_raw(*n, g))),
        LatticeSpec::Kronecker { n, alpha } => {
            if alpha.iter().all(Alpha::is_exact) {
                let alphas: Vec<BigRational> = alpha.iter().map(Alpha::to_rational).collect();
                Ok(zaremba_kronecker_rational(*n, &alphas))
            } else {
                // Mixed rational components are rounded to fixed point; the
                // result is flagged inexact either way.
                let fixed: Vec<Fixed> = alpha
                    .iter()
                    .map(|a| match a {
                        Alpha::Real(f) => f.clone(),
                        Alpha::Rational(r) => Fixed::from_rational(r),
                    })
                    .collect();
                Ok(zaremba_kronecker_fixed(*n, &fixed, false))
            }
        }
        _ => Err(LatticeError::invalid(
            "zaremba_index needs a Kronecker or rank-1 spec; pass a search budget for \
             Frolov or general matrices via zaremba_with_budget",
        )),
    }
}

/// Zaremba index with an explicit search budget for unstructured lattices.
/// The returned `exact` flag is false in the budgeted case: the search is not
/// certified complete.
pub fn zaremba_with_budget(spec: &LatticeSpec, budget: u64) -> Result<ZarembaResult> {
    match spec {
        LatticeSpec::Rank1 { .. } | LatticeSpec::Kronecker { .. } => zaremba_index(spec),
        _ => {
            let mut res = zaremba_brute(spec, budget)?;
            res.exact = false;
            Ok(res)
        }
    }
}

/// Independent oracle: minimum of `r(B k')` over all `k'` with
/// `||k'||_inf <= box_`, by direct enumeration of the coefficient box.
pub fn zaremba_brute(spec: &LatticeSpec, box_: u64) -> Result<ZarembaResult> {
    if box_ == 0 {
        return Err(LatticeError::invalid("search box must be >= 1"));
    }
    if let LatticeSpec::Rank1 { n, g } = spec {
        return Ok(brute_rank1(*n, g, box_));
    }
    let t = generator_matrix(spec)?;
    let b = dual_basis(&t)?;
    let d = t.dim();
    let width = 2 * box_ as u128 + 1;
    let total = width.checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > 200_000_000 {
        return Err(LatticeError::ResourceLimit {
            what: "brute-force dual enumeration".into(),
            required: total,
            cap: 200_000_000,
        });
    }
    let side: Vec<i64> = (-(box_ as i64)..=box_ as i64).collect();
    let best = side
        .par_iter()
        .map(|&k0| {
            let mut local: Option<(BigRational, Vec<BigRational>)> = None;
            let mut k = vec![0i64; d];
            k[0] = k0;
            brute_rec(&b.rows, &mut k, 1, box_ as i64, &mut local);
            local
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) => x,
                (x, None) => x,
                (Some(x), Some(y)) => Some(min_candidate(x, y)),
            },
        );
    let (rho, witness) = best.ok_or_else(|| LatticeError::Internal("empty search".into()))?;
    Ok(ZarembaResult {
        rho,
        witness,
        exact: spec.is_exact(),
    })
}

fn min_candidate(
    a: (BigRational, Vec<BigRational>),
    b: (BigRational, Vec<BigRational>),
) -> (BigRational, Vec<BigRational>) {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    }
}

fn brute_rec(
    b_rows: &matrix::QMat,
    k: &mut Vec<i64>,
    depth: usize,
    box_: i64,
    best: &mut Option<(BigRational, Vec<BigRational>)>,
) {
    if depth == k.len() {
        if k.iter().all(|&v| v == 0) {
            return;
        }
        let kb: Vec<BigInt> = k.iter().map(|&v| BigInt::from(v)).collect();
        let z = matrix::mat_vec_int(b_rows, &kb);
        let r = r_product_rational(&z);
        match best {
            Some((cur, _)) if *cur <= r => {}
            _ => *best = Some((r, z)),
        }
        return;
    }
    for v in -box_..=box_ {
        k[depth] = v;
        brute_rec(b_rows, k, depth + 1, box_, best);
    }
    k[depth] = 0;
}

fn brute_rank1(n: u64, g: &[u64], box_: u64) -> ZarembaResult {
    let d = g.len() + 1;
    let b = box_ as i64;
    // Odometer over (k_1, ..., k_{d-1}); innermost loop over k_d computes
    // z1 = N k_d - g.k directly. Early product abort keeps this cheap.
    let side: Vec<i64> = (-b..=b).collect();
    let best = side
        .par_iter()
        .map(|&k1| {
            let mut local: Option<(u128, Vec<i128>)> = None;
            let mut k = vec![0i64; d - 1];
            k[0] = k1;
            brute_rank1_rec(n, g, &mut k, 1, b, &mut local);
            local
        })
        .reduce(
            || None,
            |x, y| match (x, y) {
                (None, v) => v,
                (v, None) => v,
                (Some(a), Some(c)) => {
                    if (a.0, &a.1) <= (c.0, &c.1) {
                        Some(a)
                    } else {
                        Some(c)
                    }
                }
            },
        )
        .expect("box contains at least k' = (0,..,0,1)");
    ZarembaResult {
        rho: BigRational::from_integer(BigInt::from(best.0)),
        witness: best
            .1
            .into_iter()
            .map(|v| BigRational::from_integer(BigInt::from(v)))
            .collect(),
        exact: true,
    }
}

fn brute_rank1_rec(
    n: u64,
    g: &[u64],
    k: &mut Vec<i64>,
    depth: usize,
    box_: i64,
    best: &mut Option<(u128, Vec<i128>)>,
) {
    if depth == k.len() {
        let mut tail: u128 = 1;
        for &kj in k.iter() {
            tail *= kj.unsigned_abs().max(1) as u128;
        }
        let dot: i128 = k
            .iter()
            .zip(g)
            .map(|(&kj, &gj)| kj as i128 * gj as i128)
            .sum();
        for kd in -box_..=box_ {
            let z1 = n as i128 * kd as i128 - dot;
            if z1 == 0 && k.iter().all(|&v| v == 0) {
                continue;
            }
            let r = tail * z1.unsigned_abs().max(1);
            let better = match best {
                Some((cur, _)) => r < *cur,
                None => true,
            };
            if better {
                let mut w = Vec::with_capacity(k.len() + 1);
                w.push(z1);
                w.extend(k.iter().map(|&v| v as i128));
                *best = Some((r, w));
            } else if let Some((cur, w_cur)) = best {
                if r == *cur {
                    let mut w = Vec::with_capacity(k.len() + 1);
                    w.push(z1);
                    w.extend(k.iter().map(|&v| v as i128));
                    if w < *w_cur {
                        *best = Some((r, w));
                    }
                }
            }
        }
        return;
    }
    for v in -box_..=box_ {
        k[depth] = v;
        brute_rank1_rec(n, g, k, depth + 1, box_, best);
    }
    k[depth] = 0;
}

/// Index of the dyadic annulus `I_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicIndex(pub Vec<u32>);

impl DyadicIndex {
    pub fn l1(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Integer range `[A, B]` of `|z|` inside the annulus slot with index `m`;
/// boundaries are inside (closed inequalities).
fn annulus_int_range(m: u32) -> (i128, i128) {
    let b = 1i128 << m;
    let a = match m {
        0 => 0,
        1 => 1, // real lower bound 1/2, smallest admissible integer magnitude 1
        _ => 1i128 << (m - 2),
    };
    (a, b)
}

/// Rational lower bound of the annulus slot (1/2 at m = 1).
fn annulus_low_rational(m: u32) -> BigRational {
    match m {
        0 => BigRational::zero(),
        1 => BigRational::new(BigInt::one(), BigInt::from(2)),
        _ => BigRational::from_integer(BigInt::one() << (m - 2)),
    }
}

fn range_size(m: u32) -> u128 {
    let (a, b) = annulus_int_range(m);
    if a == 0 {
        (2 * b + 1) as u128
    } else {
        (2 * (b - a + 1)) as u128
    }
}

/// Signed values of one annulus slot, both signs.
fn slot_values(m: u32) -> Vec<i128> {
    let (a, b) = annulus_int_range(m);
    if a == 0 {
        (-b..=b).collect()
    } else {
        (a..=b).chain(-b..=-a).collect()
    }
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Number of integers in `[lo, hi]` congruent to `c` modulo `modulus`.
fn count_congruent(lo: i128, hi: i128, c: i128, modulus: i128) -> u64 {
    if lo > hi {
        return 0;
    }
    let first = (hi - c).div_euclid(modulus);
    let last = (lo - c + modulus - 1).div_euclid(modulus);
    (first - last + 1).max(0) as u64
}

fn count_in_slot(m: u32, c: i128, modulus: i128) -> u64 {
    let (a, b) = annulus_int_range(m);
    if a == 0 {
        count_congruent(-b, b, c, modulus)
    } else {
        count_congruent(a, b, c, modulus) + count_congruent(-b, -a, c, modulus)
    }
}

/// Exact `|X* \cap I_m \ {0}|` with the default `|m|_1` cap.
pub fn dyadic_count(spec: &LatticeSpec, m: &DyadicIndex) -> Result<u64> {
    dyadic_count_with_cap(spec, m, DEFAULT_DYADIC_CAP)
}

pub fn dyadic_count_with_cap(spec: &LatticeSpec, m: &DyadicIndex, cap: u32) -> Result<u64> {
    if m.0.len() != spec.dim() {
        return Err(LatticeError::invalid(format!(
            "dyadic index has {} components, lattice dimension is {}",
            m.0.len(),
            spec.dim()
        )));
    }
    if m.l1() > cap {
        return Err(LatticeError::ResourceLimit {
            what: "dyadic census |m|_1".into(),
            required: m.l1() as u128,
            cap: cap as u128,
        });
    }
    match spec {
        LatticeSpec::Rank1 { n, g } => Ok(dyadic_count_rank1(*n, g, &m.0)),
        LatticeSpec::Kronecker { n, alpha } => {
            let alphas: Vec<BigRational> = alpha.iter().map(Alpha::to_rational).collect();
            dyadic_count_kronecker(*n, &alphas, &m.0)
        }
        LatticeSpec::Frolov { .. } | LatticeSpec::GeneralMatrix { .. } => {
            dyadic_count_general(spec, &m.0)
        }
    }
}

/// Rank-1 census: the dual is `{z in Z^d : z . (1, g) ≡ 0 mod N}`. Enumerate
/// every coordinate except the widest one and count that one by congruence.
fn dyadic_count_rank1(n: u64, g: &[u64], m: &[u32]) -> u64 {
    let d = m.len();
    let mut coeff: Vec<i128> = Vec::with_capacity(d);
    coeff.push(1);
    coeff.extend(g.iter().map(|&v| v as i128));
    let pivot = (0..d).max_by_key(|&i| range_size(m[i])).unwrap();
    let modulus = n as i128;

    // Congruence data for the pivot coordinate: c_p z ≡ rhs (mod N) is
    // solvable iff e = gcd(c_p, N) divides rhs, with solutions z ≡ z0 (mod N/e).
    let (e, inv, mm) = {
        let (e, x, _) = egcd(coeff[pivot].rem_euclid(modulus), modulus);
        let mm = modulus / e;
        let inv = if mm == 1 { 0 } else { x.rem_euclid(mm) };
        (e, inv, mm)
    };

    let others: Vec<usize> = (0..d).filter(|&i| i != pivot).collect();
    let mut total: u64 = 0;
    let mut assignment = vec![0i128; d];
    fn rec(
        others: &[usize],
        idx: usize,
        m: &[u32],
        coeff: &[i128],
        modulus: i128,
        pivot: usize,
        e: i128,
        inv: i128,
        mm: i128,
        assignment: &mut Vec<i128>,
        total: &mut u64,
    ) {
        if idx == others.len() {
            let rhs: i128 = others
                .iter()
                .map(|&i| (-coeff[i] * assignment[i]).rem_euclid(modulus))
                .sum::<i128>()
                .rem_euclid(modulus);
            if rhs % e != 0 {
                return;
            }
            let c = if mm == 1 {
                0
            } else {
                ((rhs / e) % mm * inv) % mm
            };
            *total += count_in_slot(m[pivot], c, mm);
            return;
        }
        let i = others[idx];
        for v in slot_values(m[i]) {
            assignment[i] = v;
            rec(
                others,
                idx + 1,
                m,
                coeff,
                modulus,
                pivot,
                e,
                inv,
                mm,
                assignment,
                total,
            );
        }
    }
    rec(
        &others,
        0,
        m,
        &coeff,
        modulus,
        pivot,
        e,
        inv,
        mm,
        &mut assignment,
        &mut total,
    );
    if m.iter().all(|&mi| mi == 0) {
        total -= 1; // the origin
    }
    total
}

/// Kronecker census by interval counting on the first dual coordinate
/// `z_1 = N(k_d - alpha.k)`; coordinates 2..d are the integers `k`.
fn dyadic_count_kronecker(n: u64, alphas: &[BigRational], m: &[u32]) -> Result<u64> {
    let d = m.len();
    let enum_size: u128 = m[1..].iter().map(|&mi| range_size(mi)).product();
    if enum_size > 1 << 27 {
        return Err(LatticeError::ResourceLimit {
            what: "Kronecker census enumeration".into(),
            required: enum_size,
            cap: 1 << 27,
        });
    }
    let n_q = BigRational::from_integer(BigInt::from(n));
    let lo1 = annulus_low_rational(m[0]) / &n_q;
    let hi1 = BigRational::from_integer(BigInt::one() << m[0]) / &n_q;

    let mut total: u64 = 0;
    let mut k = vec![0i128; d - 1];
    fn rec(
        alphas: &[BigRational],
        m: &[u32],
        lo1: &BigRational,
        hi1: &BigRational,
        idx: usize,
        k: &mut Vec<i128>,
        total: &mut u64,
    ) {
        if idx == k.len() {
            let dot: BigRational = k
                .iter()
                .zip(alphas)
                .map(|(&kj, a)| a * BigRational::from_integer(BigInt::from(kj)))
                .sum();
            // k_d in [dot + lo1, dot + hi1] or [dot - hi1, dot - lo1];
            // the two intervals merge when lo1 = 0.
            let ints = |lo: BigRational, hi: BigRational| -> i128 {
                let n_first = hi.floor().to_integer();
                let n_last = lo.ceil().to_integer();
                (n_first - n_last + BigInt::one())
                    .max(BigInt::zero())
                    .to_i128()
                    .unwrap()
            };
            if lo1.is_zero() {
                *total += ints(&dot - hi1, &dot + hi1) as u64;
            } else {
                *total += ints(&dot + lo1, &dot + hi1) as u64;
                *total += ints(&dot - hi1, &dot - lo1) as u64;
            }
            return;
        }
        for v in slot_values(m[idx + 1]) {
            k[idx] = v;
            rec(alphas, m, lo1, hi1, idx + 1, k, total);
        }
    }
    rec(alphas, m, &lo1, &hi1, 0, &mut k, &mut total);
    if m.iter().all(|&mi| mi == 0) {
        total -= 1;
    }
    Ok(total)
}

/// Fallback census for unstructured lattices: enumerate dual coefficients in
/// the box `T^t(outer annulus box)` and test membership exactly.
fn dyadic_count_general(spec: &LatticeSpec, m: &[u32]) -> Result<u64> {
    let t = generator_matrix(spec)?;
    let b = dual_basis(&t)?;
    let d = t.dim();
    let tt = matrix::transpose(&t.rows);
    // |k'_i| <= sum_j |T^t[i][j]| 2^{m_j}
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    let mut total: u128 = 1;
    for row in &tt {
        let mut bound = BigRational::zero();
        for (j, e) in row.iter().enumerate() {
            bound += matrix::abs(e) * BigRational::from_integer(BigInt::one() << m[j]);
        }
        let hi_i = bound
            .ceil()
            .to_integer()
            .to_i64()
            .ok_or_else(|| LatticeError::Internal("census box overflow".into()))?;
        lo.push(-hi_i);
        hi.push(hi_i);
        total = total.saturating_mul(2 * hi_i as u128 + 1);
    }
    if total > 1 << 27 {
        return Err(LatticeError::ResourceLimit {
            what: "general census enumeration".into(),
            required: total,
            cap: 1 << 27,
        });
    }
    let lows: Vec<BigRational> = m.iter().map(|&mi| annulus_low_rational(mi)).collect();
    let highs: Vec<BigRational> = m
        .iter()
        .map(|&mi| BigRational::from_integer(BigInt::one() << mi))
        .collect();
    let mut count: u64 = 0;
    let mut k = vec![0i64; d];
    fn rec(
        b_rows: &matrix::QMat,
        lo: &[i64],
        hi: &[i64],
        lows: &[BigRational],
        highs: &[BigRational],
        depth: usize,
        k: &mut Vec<i64>,
        count: &mut u64,
    ) {
        if depth == k.len() {
            if k.iter().all(|&v| v == 0) {
                return;
            }
            let kb: Vec<BigInt> = k.iter().map(|&v| BigInt::from(v)).collect();
            let z = matrix::mat_vec_int(b_rows, &kb);
            let inside = z
                .iter()
                .zip(lows.iter().zip(highs))
                .all(|(zi, (lo_i, hi_i))| {
                    let a = matrix::abs(zi);
                    &a >= lo_i && &a <= hi_i
                });
            if inside {
                *count += 1;
            }
            return;
        }
        for v in lo[depth]..=hi[depth] {
            k[depth] = v;
            rec(b_rows, lo, hi, lows, highs, depth + 1, k, count);
        }
        k[depth] = 0;
    }
    rec(&b.rows, &lo, &hi, &lows, &highs, 0, &mut k, &mut count);
    Ok(count)
}

/// Search strategy for [`search_best_gen`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Full,
    Korobov,
}

/// Best rank-1 generator for (N, d) under the given mode; ties resolve to the
/// lexicographically smallest vector.
pub fn search_best_gen(n: u64, d: usize, mode: SearchMode) -> Result<(Vec<u64>, ZarembaResult)> {
    if d < 2 {
        return Err(LatticeError::invalid("search requires d >= 2"));
    }
    if n < 2 {
        return Err(LatticeError::invalid("search requires N >= 2"));
    }
    let coprime: Vec<u64> = (1..n).filter(|g| g.gcd(&n) == 1).collect();
    let candidates: Vec<Vec<u64>> = match mode {
        SearchMode::Full => match d {
            2 => {
                if n > 1_000_000 {
                    return Err(LatticeError::ResourceLimit {
                        what: "full generator search (d=2)".into(),
                        required: n as u128,
                        cap: 1_000_000,
                    });
                }
                coprime.iter().map(|&g| vec![g]).collect()
            }
            3 => {
                if n > 2000 {
                    return Err(LatticeError::ResourceLimit {
                        what: "full generator search (d=3)".into(),
                        required: n as u128,
                        cap: 2000,
                    });
                }
                let mut out = Vec::with_capacity(coprime.len() * coprime.len());
                for &g1 in &coprime {
                    for &g2 in &coprime {
                        out.push(vec![g1, g2]);
                    }
                }
                out
            }
            _ => {
                return Err(LatticeError::ResourceLimit {
                    what: "full generator search dimension".into(),
                    required: d as u128,
                    cap: 3,
                })
            }
        },
        SearchMode::Korobov => {
            if n as u128 > 1_000_000 / d as u128 {
                return Err(LatticeError::ResourceLimit {
                    what: "Korobov generator search".into(),
                    required: n as u128,
                    cap: 1_000_000 / d as u128,
                });
            }
            coprime
                .iter()
                .map(|&g| {
                    let v =
                        crate::diophantine::korobov_vector(n, g, d).expect("coprime g in range");
                    v.vector[1..].to_vec()
                })
                .collect()
        }
    };
    let best = candidates
        .into_par_iter()
        .map(|g| {
            let raw = zaremba_rank1_raw(n, &g);
            (raw.rho, g, raw.witness)
        })
        .reduce_with(|a, b| {
            // maximise rho, break ties toward the lexicographically smaller g
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        })
        .ok_or_else(|| LatticeError::invalid("empty candidate set"))?;
    let (rho, g, witness) = best;
    Ok((g, raw_to_result(RawRank1 { rho, witness })))
}
