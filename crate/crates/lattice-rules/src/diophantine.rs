//! Continued fractions, convergents and named generator families.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{LatticeError, Result};
use crate::fixed::Fixed;

/// A generator component: either an exact rational or a certified 96-bit real.
#[derive(Clone, Debug, PartialEq)]
pub enum Alpha {
    Rational(BigRational),
    Real(Fixed),
}

impl Alpha {
    pub fn from_ratio(p: i64, q: u64) -> Result<Alpha> {
        if q == 0 {
            return Err(LatticeError::invalid("rational with zero denominator"));
        }
        Ok(Alpha::Rational(BigRational::new(p.into(), BigInt::from(q))))
    }

    /// The stored value as an exact rational (dyadic for the `Real` case).
    pub fn to_rational(&self) -> BigRational {
        match self {
            Alpha::Rational(r) => r.clone(),
            Alpha::Real(f) => f.to_rational(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Whether the stored value is the number itself rather than an approximant.
    pub fn is_exact(&self) -> bool {
        matches!(self, Alpha::Rational(_))
    }

    /// Certified enclosure of the true value.
    fn enclosure(&self) -> (BigRational, BigRational) {
        match self {
            Alpha::Rational(r) => (r.clone(), r.clone()),
            Alpha::Real(f) => f.enclosure(),
        }
    }
}

/// A simple continued fraction `[a0; a1, ..., al]`.
///
/// `canonical` is true when the expansion is in the canonical form produced by
/// the Euclidean algorithm (no quotients, or last quotient >= 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFExpansion {
    pub a0: i64,
    pub quotients: Vec<u64>,
    pub canonical: bool,
}

impl CFExpansion {
    /// Reconstructs the represented rational exactly.
    pub fn value(&self) -> BigRational {
        let mut acc: Option<BigRational> = None;
        for &a in self.quotients.iter().rev() {
            let a = BigRational::from_integer(BigInt::from(a));
            acc = Some(match acc {
                None => a,
                Some(tail) => a + tail.recip(),
            });
        }
        let head = BigRational::from_integer(BigInt::from(self.a0));
        match acc {
            None => head,
            Some(tail) => head + tail.recip(),
        }
    }

    /// The all-ones-tail form: `[.., a_l]` becomes `[.., a_l - 1, 1]`.
    pub fn variant(&self) -> CFExpansion {
        let mut qs = self.quotients.clone();
        match qs.last().copied() {
            None => CFExpansion {
                a0: self.a0 - 1,
                quotients: vec![1],
                canonical: false,
            },
            Some(last) if last >= 2 => {
                *qs.last_mut().unwrap() = last - 1;
                qs.push(1);
                CFExpansion {
                    a0: self.a0,
                    quotients: qs,
                    canonical: false,
                }
            }
            Some(_) => self.clone(),
        }
    }

    /// Rendering used by the CLI: `[a0; a1, a2, ...]`.
    pub fn render(&self) -> String {
        if self.quotients.is_empty() {
            format!("[{}]", self.a0)
        } else {
            let tail: Vec<String> = self.quotients.iter().map(|a| a.to_string()).collect();
            format!("[{}; {}]", self.a0, tail.join(", "))
        }
    }
}

/// Canonical continued fraction of `p/q` by the Euclidean algorithm.
pub fn cfrac_rational(p: i64, q: u64) -> Result<CFExpansion> {
    if q == 0 {
        return Err(LatticeError::invalid("cfrac_rational: q must be positive"));
    }
    let mut num = BigInt::from(p);
    let mut den = BigInt::from(q);
    let a0_big = num.div_floor(&den);
    let a0 = a0_big
        .to_i64()
        .ok_or_else(|| LatticeError::invalid("integer part out of range"))?;
    num -= &a0_big * &den;
    let mut quotients = Vec::new();
    while !num.is_zero() {
        std::mem::swap(&mut num, &mut den);
        let a = num.div_floor(&den);
        quotients.push(
            a.to_u64()
                .expect("partial quotient fits u64 for i64/u64 input"),
        );
        num -= a * &den;
    }
    Ok(CFExpansion {
        a0,
        quotients,
        canonical: true,
    })
}

/// Largest partial quotient `max_j a_j` (j >= 1) of the expansion as given.
pub fn k_value(cf: &CFExpansion) -> Result<u64> {
    cf.quotients.iter().copied().max().ok_or_else(|| {
        LatticeError::invalid("K is undefined for an integer (no partial quotients)")
    })
}

/// Continued-fraction quotients of a value known through an exact enclosure.
///
/// Returns the quotients that are certain; `complete` is true when the value
/// is rational and fully expanded. Errors only on an empty interval.
fn cf_quotients_enclosure(
    lo: BigRational,
    hi: BigRational,
    max_quotients: usize,
) -> (i64, Vec<u64>, bool) {
    let mut lo = lo;
    let mut hi = hi;
    let a0 = lo.floor().to_integer().to_i64().expect("a0 fits i64");
    let mut quotients = Vec::new();
    if hi.floor().to_integer() != BigInt::from(a0) {
        return (a0, quotients, false);
    }
    let mut sub = BigRational::from_integer(a0.into());
    loop {
        if quotients.len() >= max_quotients {
            return (a0, quotients, false);
        }
        let flo = &lo - &sub;
        let fhi = &hi - &sub;
        if flo.is_zero() && fhi.is_zero() {
            return (a0, quotients, true);
        }
        if flo.is_zero() || fhi.is_zero() {
            // One endpoint terminated; the other did not: quotient uncertain.
            return (a0, quotients, false);
        }
        // Invert the fractional interval; orientation flips.
        let nlo = fhi.recip();
        let nhi = flo.recip();
        let a = nlo.floor().to_integer();
        if nhi.floor().to_integer() != a {
            return (a0, quotients, false);
        }
        let a_u = match a.to_u64() {
            Some(v) if v >= 1 => v,
            _ => return (a0, quotients, false),
        };
        quotients.push(a_u);
        lo = nlo;
        hi = nhi;
        sub = BigRational::from_integer(a);
    }
}

/// Best rational approximations `p_k/q_k` of `alpha`.
///
/// These are the continued-fraction convergents for k >= 1, preceded by
/// `a0/1` exactly when the fractional part of `alpha` is below 1/2 (so the
/// listed fractions are precisely the best approximations by denominator).
/// For irrational input the quotients are certified from the 96-bit
/// enclosure; running out of certainty before `depth` convergents yields
/// `PrecisionExhausted` naming the last certain index.
pub fn convergents(alpha: &Alpha, depth: usize) -> Result<Vec<(BigInt, BigInt)>> {
    if depth == 0 {
        return Err(LatticeError::invalid("depth must be >= 1"));
    }
    let (lo, hi) = alpha.enclosure();
    let (a0, quotients, complete) = cf_quotients_enclosure(lo, hi, depth + 2);

    // Decide whether a0/1 opens the list: fractional part strictly below 1/2.
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let a0_q = BigRational::from_integer(BigInt::from(a0));
    let (lo, hi) = alpha.enclosure();
    let include_a0 = if &hi - &a0_q < half {
        true
    } else if &lo - &a0_q >= half {
        false
    } else {
        return Err(LatticeError::PrecisionExhausted { last_certain: 0 });
    };

    let mut out: Vec<(BigInt, BigInt)> = Vec::with_capacity(depth);
    if include_a0 {
        out.push((BigInt::from(a0), BigInt::one()));
    }
    // Standard recurrence p_k = a_k p_{k-1} + p_{k-2}, q_k likewise.
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_cur, mut q_cur) = (BigInt::from(a0), BigInt::one());
    for &a in &quotients {
        if out.len() >= depth {
            break;
        }
        let p_next = BigInt::from(a) * &p_cur + &p_prev;
        let q_next = BigInt::from(a) * &q_cur + &q_prev;
        out.push((p_next.clone(), q_next.clone()));
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    if out.len() < depth && !complete {
        return Err(LatticeError::PrecisionExhausted {
            last_certain: out.len(),
        });
    }
    Ok(out)
}

/// Fibonacci rule `(N, g) = (F_n, F_{n-1})` with `F_1 = F_2 = 1`.
pub fn fibonacci_rule(n: u32) -> Result<(u64, u64)> {
    if n < 3 {
        return Err(LatticeError::invalid("fibonacci_rule requires n >= 3"));
    }
    if n > 91 {
        return Err(LatticeError::invalid("F_n overflows u64 for n > 91"));
    }
    let (mut a, mut b) = (1u64, 1u64); // F_1, F_2
    for _ in 2..n {
        let next = a + b;
        a = b;
        b = next;
    }
    Ok((b, a))
}

/// Korobov generating vector `(1, g, g^2, ..., g^{d-1}) mod N` plus `gcd(g, N)`.
pub struct KorobovVector {
    pub vector: Vec<u64>,
    pub gcd: u64,
}

pub fn korobov_vector(n: u64, g: u64, d: usize) -> Result<KorobovVector> {
    if n == 0 {
        return Err(LatticeError::invalid("N must be positive"));
    }
    if g == 0 || g >= n.max(2) {
        return Err(LatticeError::invalid(format!(
            "g = {g} must lie in [1, N-1]"
        )));
    }
    let mut vector = Vec::with_capacity(d);
    let mut pow: u64 = 1 % n;
    for _ in 0..d {
        vector.push(pow);
        pow = (pow as u128 * g as u128 % n as u128) as u64;
    }
    Ok(KorobovVector {
        vector,
        gcd: g.gcd(&n),
    })
}

/// Named irrational generator families.
#[derive(Clone, Debug)]
pub enum AlphaKind {
    GoldenRatio,
    SqrtPrimes(Vec<u64>),
    ExpRationals(Vec<BigRational>),
    Explicit(Vec<f64>),
}

/// A named generator vector of `d-1` certified 96-bit reals.
#[derive(Clone, Debug)]
pub struct NamedAlpha {
    pub kind: AlphaKind,
    pub values: Vec<Fixed>,
}

impl NamedAlpha {
    pub fn alphas(&self) -> Vec<Alpha> {
        self.values.iter().cloned().map(Alpha::Real).collect()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

pub fn named_alpha(kind: AlphaKind, d: usize) -> Result<NamedAlpha> {
    if d < 2 {
        return Err(LatticeError::invalid("named_alpha requires d >= 2"));
    }
    let want = d - 1;
    let values = match &kind {
        AlphaKind::GoldenRatio => {
            if want != 1 {
                return Err(LatticeError::invalid(format!(
                    "golden ratio provides 1 component but d = {d} needs {want}"
                )));
            }
            vec![Fixed::golden()]
        }
        AlphaKind::SqrtPrimes(primes) => {
            if primes.len() != want {
                return Err(LatticeError::invalid(format!(
                    "need {want} primes for d = {d}, got {}",
                    primes.len()
                )));
            }
            let mut seen = primes.to_vec();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != primes.len() {
                return Err(LatticeError::invalid("primes must be distinct"));
            }
            for &p in primes {
                if !is_prime(p) {
                    return Err(LatticeError::invalid(format!("{p} is not prime")));
                }
            }
            primes.iter().map(|&p| Fixed::sqrt_u64(p)).collect()
        }
        AlphaKind::ExpRationals(rs) => {
            if rs.len() != want {
                return Err(LatticeError::invalid(format!(
                    "need {want} rationals for d = {d}, got {}",
                    rs.len()
                )));
            }
            let mut seen = rs.to_vec();
            seen.sort();
            seen.dedup();
            if seen.len() != rs.len() {
                return Err(LatticeError::invalid("rationals must be distinct"));
            }
            if rs.iter().any(|r| r.is_zero()) {
                return Err(LatticeError::invalid("rationals must be nonzero"));
            }
            rs.iter()
                .map(Fixed::exp_rational)
                .collect::<Result<Vec<_>>>()?
        }
        AlphaKind::Explicit(vs) => {
            if vs.len() != want {
                return Err(LatticeError::invalid(format!(
                    "need {want} values for d = {d}, got {}",
                    vs.len()
                )));
            }
            vs.iter()
                .map(|&v| Fixed::from_f64(v))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(NamedAlpha { kind, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(p: i64, q: u64) -> CFExpansion {
        cfrac_rational(p, q).unwrap()
    }

    #[test]
    fn euclid_examples() {
        assert_eq!(
            cf(1, 2),
            CFExpansion {
                a0: 0,
                quotients: vec![2],
                canonical: true
            }
        );
        // 3/5 = [0; 1, 1, 2], variant [0; 1, 1, 1, 1]
        let c = cf(3, 5);
        assert_eq!(c.quotients, vec![1, 1, 2]);
        assert_eq!(c.variant().quotients, vec![1, 1, 1, 1]);
        // 13/21: variant form is all ones
        let v = cf(13, 21).variant();
        assert!(v.quotients.iter().all(|&a| a == 1));
        assert_eq!(v.quotients.len(), 7);
    }

    #[test]
    fn k_values() {
        assert_eq!(k_value(&cf(2, 5)).unwrap(), 2); // [0; 2, 2]
        assert_eq!(cf(2, 5).quotients, vec![2, 2]);
        assert_eq!(k_value(&cf(13, 21).variant()).unwrap(), 1);
        assert_eq!(k_value(&cf(7, 1).variant()).unwrap(), 1);
        assert_eq!(
            k_value(&CFExpansion {
                a0: 0,
                quotients: vec![7],
                canonical: true
            })
            .unwrap(),
            7
        );
        assert!(k_value(&cf(7, 1)).is_err());
    }

    #[test]
    fn value_round_trip() {
        for (p, q) in [(3, 5), (13, 21), (-7, 3), (22, 7), (0, 9)] {
            let c = cf(p, q);
            assert_eq!(c.value(), BigRational::new(p.into(), (q as i64).into()));
            assert_eq!(c.variant().value(), c.value());
        }
    }

    #[test]
    fn canonical_variant_k_gap() {
        for (p, q) in [(3, 5), (13, 21), (2, 5), (1, 2), (355, 113)] {
            let c = cf(p, q);
            let kc = k_value(&c).unwrap();
            let kv = k_value(&c.variant()).unwrap();
            assert!(kc == kv || kc == kv + 1 || kv == kc + 1, "{kc} vs {kv}");
        }
    }

    #[test]
    fn convergents_sqrt2() {
        let alpha = Alpha::Real(Fixed::sqrt_u64(2));
        let cs = convergents(&alpha, 4).unwrap();
        let expect: Vec<(i64, i64)> = vec![(1, 1), (3, 2), (7, 5), (17, 12)];
        for ((p, q), (ep, eq)) in cs.iter().zip(expect) {
            assert_eq!((p, q), (&BigInt::from(ep), &BigInt::from(eq)));
        }
    }

    #[test]
    fn convergents_golden_fibonacci_denominators() {
        let alpha = Alpha::Real(Fixed::golden());
        let cs = convergents(&alpha, 6).unwrap();
        let qs: Vec<u64> = cs.iter().map(|(_, q)| q.to_u64().unwrap()).collect();
        assert_eq!(qs, vec![1, 2, 3, 5, 8, 13]);
        let ps: Vec<u64> = cs.iter().map(|(p, _)| p.to_u64().unwrap()).collect();
        assert_eq!(ps, vec![2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn convergents_one_half() {
        let alpha = Alpha::from_ratio(1, 2).unwrap();
        let cs = convergents(&alpha, 6).unwrap();
        assert_eq!(cs, vec![(BigInt::one(), BigInt::from(2))]);
    }

    #[test]
    fn convergents_quality() {
        use num_traits::Signed;
        // |alpha - p_k/q_k| < 1/(q_k q_{k+1})
        let alpha = Alpha::Real(Fixed::sqrt_u64(3));
        let cs = convergents(&alpha, 8).unwrap();
        let a = alpha.to_rational();
        for w in cs.windows(2) {
            let (p, q) = &w[0];
            let (_, q2) = &w[1];
            let err = (&a - BigRational::new(p.clone(), q.clone())).abs();
            let bound = BigRational::new(BigInt::one(), q * q2);
            assert!(err < bound);
        }
    }

    #[test]
    fn convergents_precision_exhausted() {
        let alpha = Alpha::Real(Fixed::golden());
        match convergents(&alpha, 200) {
            Err(LatticeError::PrecisionExhausted { last_certain }) => {
                assert!(last_certain > 60, "expected many certified convergents");
            }
            other => panic!("expected precision error, got {other:?}"),
        }
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci_rule(5).unwrap(), (5, 3));
        assert_eq!(fibonacci_rule(12).unwrap(), (144, 89));
        assert_eq!(fibonacci_rule(20).unwrap(), (6765, 4181));
        assert!(fibonacci_rule(2).is_err());
        for n in 3..=30 {
            let (big, small) = fibonacci_rule(n).unwrap();
            assert_eq!(big.gcd(&small), 1);
            let v = cfrac_rational(small as i64, big).unwrap().variant();
            assert_eq!(k_value(&v).unwrap(), 1, "variant K for F_{n}");
        }
    }

    #[test]
    fn korobov_examples() {
        assert_eq!(korobov_vector(7, 3, 3).unwrap().vector, vec![1, 3, 2]);
        assert_eq!(korobov_vector(5, 1, 4).unwrap().vector, vec![1, 1, 1, 1]);
        assert_eq!(korobov_vector(8, 3, 3).unwrap().vector, vec![1, 3, 1]);
        assert_eq!(korobov_vector(8, 2, 2).unwrap().gcd, 2);
    }

    #[test]
    fn named_alpha_families() {
        let g = named_alpha(AlphaKind::GoldenRatio, 2).unwrap();
        assert!((g.values[0].to_f64() - 1.618033988749895).abs() < 1e-12);
        let s = named_alpha(AlphaKind::SqrtPrimes(vec![2, 3]), 3).unwrap();
        assert!((s.values[0].to_f64() - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((s.values[1].to_f64() - 1.7320508075688772).abs() < 1e-12);
        let e = named_alpha(
            AlphaKind::ExpRationals(vec![BigRational::from_integer(1.into())]),
            2,
        )
        .unwrap();
        assert!((e.values[0].to_f64() - std::f64::consts::E).abs() < 1e-12);

        assert!(named_alpha(AlphaKind::SqrtPrimes(vec![2, 2]), 3).is_err());
        assert!(named_alpha(AlphaKind::SqrtPrimes(vec![4]), 2).is_err());
        assert!(named_alpha(AlphaKind::GoldenRatio, 4).is_err());
        assert!(named_alpha(
            AlphaKind::ExpRationals(vec![BigRational::from_integer(0.into())]),
            2
        )
        .is_err());
    }

    proptest::proptest! {
        #[test]
        fn cfrac_round_trip(p in -100_000i64..100_000, q in 1u64..100_000) {
            let c = cfrac_rational(p, q).unwrap();
            proptest::prop_assert_eq!(c.value(), BigRational::new(p.into(), BigInt::from(q)));
            proptest::prop_assert!(c.quotients.iter().all(|&a| a >= 1));
            proptest::prop_assert!(c.canonical);
            let v = c.variant();
            proptest::prop_assert_eq!(v.value(), c.value());
        }
    }

    #[test]
    fn round_trip_random_rationals() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let q: u64 = rng.gen_range(1..=1_000_000);
            let p: i64 = rng.gen_range(-1_000_000..=1_000_000);
            let c = cfrac_rational(p, q).unwrap();
            assert_eq!(c.value(), BigRational::new(p.into(), BigInt::from(q)));
            assert!(c.quotients.is_empty() || *c.quotients.last().unwrap() >= 2);
        }
    }
}
