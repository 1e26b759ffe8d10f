//! Fixed-point reals with 96 fractional bits.
//!
//! Irrational generator components (golden ratio, square roots of primes,
//! exponentials of rationals) are stored as dyadic rationals `mant / 2^96`
//! rounded to nearest, so every stored value is within `2^-97` of the true
//! real. All subsequent arithmetic on the stored value is exact, which keeps
//! comparisons certified: a computed quantity differs from the true one by at
//! most the propagated input error, never by rounding inside the pipeline.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{LatticeError, Result};

/// Number of fractional bits carried by [`Fixed`].
pub const FRAC_BITS: u32 = 96;

/// A real number represented as `mant / 2^FRAC_BITS`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed {
    mant: BigInt,
}

impl Fixed {
    pub fn zero() -> Self {
        Fixed {
            mant: BigInt::zero(),
        }
    }

    pub fn one() -> Self {
        Fixed {
            mant: BigInt::one() << FRAC_BITS,
        }
    }

    pub fn from_mantissa(mant: BigInt) -> Self {
        Fixed { mant }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn from_int(v: i64) -> Self {
        Fixed {
            mant: BigInt::from(v) << FRAC_BITS,
        }
    }

    /// Nearest fixed-point value to `r` (ties round away from zero).
    pub fn from_rational(r: &BigRational) -> Self {
        let scaled = r * BigRational::from_integer(BigInt::one() << FRAC_BITS);
        Fixed {
            mant: scaled.round().to_integer(),
        }
    }

    /// Exact conversion from an `f64`; fails on non-finite input.
    pub fn from_f64(v: f64) -> Result<Self> {
        let r = BigRational::from_float(v)
            .ok_or_else(|| LatticeError::invalid(format!("non-finite real {v}")))?;
        Ok(Self::from_rational(&r))
    }

    /// The represented dyadic rational, exactly.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << FRAC_BITS)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn add(&self, rhs: &Fixed) -> Fixed {
        Fixed {
            mant: &self.mant + &rhs.mant,
        }
    }

    pub fn sub(&self, rhs: &Fixed) -> Fixed {
        Fixed {
            mant: &self.mant - &rhs.mant,
        }
    }

    pub fn neg(&self) -> Fixed {
        Fixed { mant: -&self.mant }
    }

    pub fn abs(&self) -> Fixed {
        Fixed {
            mant: self.mant.abs(),
        }
    }

    pub fn mul_int(&self, k: i64) -> Fixed {
        Fixed {
            mant: &self.mant * k,
        }
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Fixed {
        Fixed {
            mant: &self.mant * k,
        }
    }

    pub fn floor(&self) -> BigInt {
        self.mant.div_floor(&(BigInt::one() << FRAC_BITS))
    }

    /// Fractional part, in `[0, 1)`.
    pub fn frac(&self) -> Fixed {
        let modulus = BigInt::one() << FRAC_BITS;
        Fixed {
            mant: self.mant.mod_floor(&modulus),
        }
    }

    /// Distance to the nearest integer, in `[0, 1/2]`.
    pub fn dist_to_int(&self) -> Fixed {
        let modulus = BigInt::one() << FRAC_BITS;
        let f = self.mant.mod_floor(&modulus);
        let comp = &modulus - &f;
        Fixed { mant: f.min(comp) }
    }

    /// One unit in the last place, `2^-96`.
    pub fn ulp() -> Fixed {
        Fixed {
            mant: BigInt::one(),
        }
    }

    /// `sqrt(n)` rounded down to 96 fractional bits; exact for perfect squares.
    pub fn sqrt_u64(n: u64) -> Fixed {
        let scaled: BigInt = BigInt::from(n) << (2 * FRAC_BITS);
        Fixed {
            mant: scaled.sqrt(),
        }
    }

    /// The golden ratio `(1 + sqrt 5)/2`.
    pub fn golden() -> Fixed {
        let num = (BigInt::one() << FRAC_BITS) + Fixed::sqrt_u64(5).mant;
        Fixed { mant: num >> 1 }
    }

    /// `exp(r)` for rational `r`, via the Taylor series in exact rational
    /// arithmetic, then rounded once to 96 fractional bits.
    pub fn exp_rational(r: &BigRational) -> Result<Fixed> {
        let bound = r.abs().ceil().to_integer().to_i64().unwrap_or(i64::MAX);
        if bound > 64 {
            return Err(LatticeError::invalid(format!(
                "exp argument {r} too large for fixed-point evaluation"
            )));
        }
        // Stop once terms drop below 2^-(FRAC_BITS+16); past k = 2|r| the
        // terms decrease monotonically, so the tail is below twice the last term.
        let eps = BigRational::new(BigInt::one(), BigInt::one() << (FRAC_BITS + 16));
        let mut sum = BigRational::one();
        let mut term = BigRational::one();
        let mut k = BigInt::one();
        loop {
            term = term * r / BigRational::from_integer(k.clone());
            sum += &term;
            if term.abs() < eps && k > BigInt::from(2 * bound.max(1)) {
                break;
            }
            k += 1;
            if k > BigInt::from(10_000) {
                return Err(LatticeError::Internal(
                    "exp series failed to converge".into(),
                ));
            }
        }
        Ok(Fixed::from_rational(&sum))
    }

    /// Certified enclosure `[lo, hi]` of the true real this value approximates.
    pub fn enclosure(&self) -> (BigRational, BigRational) {
        let half = BigRational::new(BigInt::one(), BigInt::one() << FRAC_BITS);
        let v = self.to_rational();
        (&v - &half, v + half)
    }
}
