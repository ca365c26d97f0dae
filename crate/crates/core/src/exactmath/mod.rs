//! Exact arithmetic substrate: rationals, quadratic irrationals and the
//! arbitrary-precision complex type used by all evaluation code.

mod complex;
mod decimal;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

pub use astro_float::BigFloat;
pub use num_rational::BigRational;

pub use complex::{BigComplex, Consts, ROUNDING};
pub use decimal::{
    float_from_bigint, float_from_rational, float_to_f64, float_to_rational, format_complex,
    format_real, round_to_bigint,
};

use crate::error::{Error, Result};

/// Working precision for one computation: `bits` of requested accuracy plus
/// `guard` bits that absorb accumulated rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision {
    pub bits: usize,
    pub guard: usize,
}

impl Precision {
    pub const DEFAULT_BITS: usize = 256;
    pub const DEFAULT_GUARD: usize = 64;

    pub const fn new(bits: usize, guard: usize) -> Self {
        Precision { bits, guard }
    }

    /// Total mantissa width every intermediate is carried at.
    pub const fn working(&self) -> usize {
        self.bits + self.guard
    }

    /// Same guard, `extra` more requested bits.
    pub const fn widened(&self, extra: usize) -> Self {
        Precision {
            bits: self.bits + extra,
            guard: self.guard,
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::new(Self::DEFAULT_BITS, Self::DEFAULT_GUARD)
    }
}

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// The second Bernoulli polynomial `r^2 - r + 1/6`, exactly.
pub fn bernoulli2(r: &BigRational) -> BigRational {
    r * r - r + rational(1, 6)
}

/// Representative of `r` modulo 1 in `[0, 1)`.
pub fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// The point `(p + sqrt(d)) / q` with `d < 0`, `d = 0, 1 (mod 4)` and `q > 0`.
///
/// Every CM point in this crate has this shape, with `d` the field
/// discriminant. Equality is structural; points built from the same
/// discriminant compare exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadIrrational {
    p: i64,
    q: i64,
    d: i64,
}

impl QuadIrrational {
    pub fn new(p: i64, q: i64, d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::InvalidPoint(format!("radicand {d} is not negative")));
        }
        if d.rem_euclid(4) > 1 {
            return Err(Error::InvalidPoint(format!(
                "radicand {d} is not 0 or 1 mod 4"
            )));
        }
        if q <= 0 {
            return Err(Error::InvalidPoint(format!("denominator {q} is not positive")));
        }
        Ok(QuadIrrational { p, q, d })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `p / q`, exactly.
    pub fn real_part(&self) -> BigRational {
        rational(self.p, self.q)
    }

    /// `|d| / q^2`, the square of the imaginary part.
    pub fn imag_squared(&self) -> BigRational {
        BigRational::new(BigInt::from(-self.d), BigInt::from(self.q) * BigInt::from(self.q))
    }

    /// `sqrt(|d|) / q` at `bits` of precision.
    pub fn imag_float(&self, bits: usize) -> BigFloat {
        let radicand = BigFloat::from_i64(-self.d, bits + 8);
        let root = radicand.sqrt(bits + 8, ROUNDING);
        root.div(&BigFloat::from_i64(self.q, bits + 8), bits, ROUNDING)
    }

    pub fn imag_f64(&self) -> f64 {
        ((-self.d) as f64).sqrt() / self.q as f64
    }

    /// Translate by an integer so that the real part lies in `(-1/2, 1/2]`.
    pub fn reduced_mod_one(&self) -> Self {
        // (p + sqrt d)/q + k = (p + k q + sqrt d)/q
        let q = self.q;
        let mut p = self.p.mod_floor(&q);
        if 2 * p > q {
            p -= q;
        }
        QuadIrrational { p, q, d: self.d }
    }

    pub fn to_complex(&self, bits: usize) -> BigComplex {
        let re = float_from_rational(&self.real_part(), bits);
        BigComplex::new(re, self.imag_float(bits), bits)
    }
}

impl fmt::Display for QuadIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+sqrt({}))/{}", self.p, self.d, self.q)
    }
}

/// Whether `n` has no square factor other than 1.
pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Prime-power factorization `[(p, p^e)]` of `n >= 1`, in increasing `p`.
pub fn prime_power_factors(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pe = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pe *= p;
            }
            out.push((p, pe));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}
