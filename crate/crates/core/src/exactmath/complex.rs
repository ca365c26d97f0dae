use std::fmt;

use astro_float::{BigFloat, RoundingMode};
use num_rational::BigRational;

use super::decimal::{float_from_rational, format_complex};
use super::frac;
use crate::error::{Error, Result};

pub use astro_float::Consts;

/// Rounding used by every floating operation in the crate.
pub const ROUNDING: RoundingMode = RoundingMode::ToEven;

/// A complex number with arbitrary-precision parts.
///
/// Every operation rounds to the larger of its operands' precisions, so a
/// result is never carried at less precision than its inputs.
#[derive(Debug, Clone)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
    precision: usize,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, precision: usize) -> Self {
        BigComplex { re, im, precision }
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_i64(0, precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::from_i64(1, precision)
    }

    pub fn from_i64(x: i64, precision: usize) -> Self {
        BigComplex {
            re: BigFloat::from_i64(x, precision),
            im: BigFloat::from_i64(0, precision),
            precision,
        }
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    fn prec_with(&self, other: &Self) -> usize {
        self.precision.max(other.precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec_with(other);
        BigComplex {
            re: self.re.add(&other.re, p, ROUNDING),
            im: self.im.add(&other.im, p, ROUNDING),
            precision: p,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.prec_with(other);
        BigComplex {
            re: self.re.sub(&other.re, p, ROUNDING),
            im: self.im.sub(&other.im, p, ROUNDING),
            precision: p,
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex {
            re: self.re.neg(),
            im: self.im.neg(),
            precision: self.precision,
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: self.im.neg(),
            precision: self.precision,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec_with(other);
        let w = p + 8;
        let ac = self.re.mul(&other.re, w, ROUNDING);
        let bd = self.im.mul(&other.im, w, ROUNDING);
        let ad = self.re.mul(&other.im, w, ROUNDING);
        let bc = self.im.mul(&other.re, w, ROUNDING);
        BigComplex {
            re: ac.sub(&bd, p, ROUNDING),
            im: ad.add(&bc, p, ROUNDING),
            precision: p,
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn scale(&self, factor: &BigFloat) -> Self {
        let p = self.precision;
        BigComplex {
            re: self.re.mul(factor, p, ROUNDING),
            im: self.im.mul(factor, p, ROUNDING),
            precision: p,
        }
    }

    /// `|z|^2`
    pub fn norm_sqr(&self) -> BigFloat {
        let w = self.precision + 8;
        let a = self.re.mul(&self.re, w, ROUNDING);
        let b = self.im.mul(&self.im, w, ROUNDING);
        a.add(&b, self.precision, ROUNDING)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.precision, ROUNDING)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::Arithmetic("reciprocal of zero".into()));
        }
        let p = self.precision;
        Ok(BigComplex {
            re: self.re.div(&n, p, ROUNDING),
            im: self.im.neg().div(&n, p, ROUNDING),
            precision: p,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// `z^n` by binary exponentiation; negative `n` inverts at the end.
    pub fn powi(&self, n: i64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = BigComplex::one(self.precision);
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            Ok(acc)
        }
    }

    /// `exp(2 pi i w)` for `w = turns_re + i turns_im`.
    ///
    /// The real part is an exact rational and is reduced mod 1 before any
    /// trigonometry, so large arguments lose no accuracy.
    pub fn unit_exp(
        turns_re: &BigRational,
        turns_im: &BigFloat,
        precision: usize,
        cc: &mut Consts,
    ) -> Self {
        let w = precision + 16;
        let two_pi = cc.pi(w, ROUNDING).mul(&BigFloat::from_i64(2, w), w, ROUNDING);

        let t = float_from_rational(&frac(turns_re), w);
        let angle = two_pi.mul(&t, w, ROUNDING);
        let cos = angle.cos(w, ROUNDING, cc);
        let sin = angle.sin(w, ROUNDING, cc);

        let modulus = if turns_im.is_zero() {
            BigFloat::from_i64(1, w)
        } else {
            two_pi
                .mul(turns_im, w, ROUNDING)
                .neg()
                .exp(w, ROUNDING, cc)
        };
        BigComplex {
            re: cos.mul(&modulus, precision, ROUNDING),
            im: sin.mul(&modulus, precision, ROUNDING),
            precision,
        }
    }

    /// Decimal rendering with `digits` significant digits per part.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_complex(self, digits)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(20))
    }
}
