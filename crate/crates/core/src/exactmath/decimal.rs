//! Exact conversions between `BigFloat` and big integers/rationals, and
//! deterministic decimal rendering.

use astro_float::{BigFloat, Sign};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::complex::{BigComplex, ROUNDING};

const WORD_BITS: i64 = 64;

/// `x` as an exact integer `m * 2^e`; `None` for NaN or infinity.
fn exact_parts(x: &BigFloat) -> Option<(BigInt, i64)> {
    if x.is_nan() || x.is_inf() {
        return None;
    }
    if x.is_zero() {
        return Some((BigInt::zero(), 0));
    }
    let (words, _, sign, exponent, _) = x.as_raw_parts()?;
    let mag = BigUint::from_slice(
        &words
            .iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect::<Vec<_>>(),
    );
    let m = match sign {
        Sign::Pos => BigInt::from(mag),
        Sign::Neg => -BigInt::from(mag),
    };
    Some((m, exponent as i64 - WORD_BITS * words.len() as i64))
}

/// Nearest float to the integer `n` at `bits` of precision.
pub fn float_from_bigint(n: &BigInt, bits: usize) -> BigFloat {
    let (sign, digits) = n.to_u64_digits();
    if digits.is_empty() {
        return BigFloat::from_i64(0, bits);
    }
    let sign = match sign {
        num_bigint::Sign::Minus => Sign::Neg,
        _ => Sign::Pos,
    };
    let exact = BigFloat::from_words(&digits, sign, (digits.len() as i64 * WORD_BITS) as i32);
    // from_words keeps every word; round once to the requested width.
    let mut out = exact;
    out.set_precision(bits.max(64), ROUNDING)
        .expect("precision within astro-float limits");
    out
}

pub fn float_from_rational(r: &BigRational, bits: usize) -> BigFloat {
    let w = bits + 8;
    let n = float_from_bigint(r.numer(), w);
    if r.denom().is_one() {
        let mut n = n;
        n.set_precision(bits.max(64), ROUNDING)
            .expect("precision within astro-float limits");
        return n;
    }
    n.div(&float_from_bigint(r.denom(), w), bits, ROUNDING)
}

/// `x` as an exact rational; `None` for NaN or infinity.
pub fn float_to_rational(x: &BigFloat) -> Option<BigRational> {
    let (m, e) = exact_parts(x)?;
    Some(if e >= 0 {
        BigRational::from_integer(m << e as usize)
    } else {
        BigRational::new(m, BigInt::one() << (-e) as usize)
    })
}

fn round_half_even(r: &BigRational) -> BigInt {
    let (q, rem) = r.numer().div_mod_floor(r.denom());
    // rem in [0, denom)
    let twice: BigInt = &rem * 2u32;
    match twice.cmp(r.denom()) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Nearest integer to `x` (ties to even) and the residual `|x - n|` as a float.
pub fn round_to_bigint(x: &BigFloat) -> Option<(BigInt, BigFloat)> {
    let r = float_to_rational(x)?;
    let n = round_half_even(&r);
    let residual = (r - BigRational::from_integer(n.clone())).abs();
    Some((n, float_from_rational(&residual, 64)))
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

/// Scientific decimal rendering with `digits` significant digits,
/// round-half-even, trailing zeros of the mantissa trimmed.
///
/// The output depends only on the exact binary value, so it is identical
/// across runs and platforms.
pub fn format_real(x: &BigFloat, digits: usize) -> String {
    let digits = digits.max(1);
    let Some(r) = float_to_rational(x) else {
        return if x.is_nan() { "nan".into() } else if x.is_negative() { "-inf".into() } else { "inf".into() };
    };
    if r.is_zero() {
        return "0".into();
    }
    let negative = r.is_negative();
    let r = r.abs();

    // Estimate the decimal exponent from bit lengths, then correct exactly.
    let bits = r.numer().bits() as f64 - r.denom().bits() as f64;
    let mut e10 = (bits * std::f64::consts::LOG10_2).floor() as i64;
    let lower = pow10(digits as u32 - 1);
    let upper = pow10(digits as u32);
    let mantissa = loop {
        let shift = digits as i64 - 1 - e10;
        let scaled = if shift >= 0 {
            &r * BigRational::from_integer(pow10(shift as u32))
        } else {
            &r / BigRational::from_integer(pow10((-shift) as u32))
        };
        let n = round_half_even(&scaled);
        if n >= upper {
            e10 += 1;
        } else if n < lower {
            e10 -= 1;
        } else {
            break n;
        }
    };

    let s = mantissa.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

/// `re+imi` / `re-imi` with both parts rendered by [`format_real`].
pub fn format_complex(z: &BigComplex, digits: usize) -> String {
    let re = format_real(z.re(), digits);
    let im = format_real(&z.im().abs(), digits);
    let sign = if z.im().is_negative() && !z.im().is_zero() { '-' } else { '+' };
    format!("{re}{sign}{im}i")
}

/// Lossy conversion for reporting and bit-count estimates.
pub fn float_to_f64(x: &BigFloat) -> f64 {
    match float_to_rational(x) {
        Some(r) => {
            if r.is_zero() {
                return 0.0;
            }
            // Scale into f64 range before dividing.
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift = nb - db;
            let scaled = if shift > 0 {
                r / BigRational::from_integer(BigInt::one() << shift as usize)
            } else {
                r * BigRational::from_integer(BigInt::one() << (-shift) as usize)
            };
            let n = scaled.numer().to_f64().unwrap_or(f64::NAN);
            let d = scaled.denom().to_f64().unwrap_or(f64::NAN);
            let v = n / d;
            v * 2f64.powi(shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
        }
        None => f64::NAN,
    }
}
