//! Error-bounded evaluation of Siegel functions
//!
//! ```text
//! g_(r1,r2)(tau) = -q_tau^(B2(r1)/2) e^(pi i r2 (r1 - 1)) (1 - q_z)
//!                  * prod_{n>=1} (1 - q_tau^n q_z)(1 - q_tau^n / q_z),
//! ```
//!
//! with `q_tau = e(tau)`, `q_z = e(z)`, `z = r1 tau + r2` and `e(w) = exp(2 pi i w)`.
//! Points are exact quadratic irrationals, so every real part that enters a
//! trigonometric function is an exact rational and is reduced mod 1 first.

use std::f64::consts::{LN_2, PI};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    bernoulli2, float_from_rational, frac, rational, BigComplex, BigFloat, BigRational, Consts,
    Precision, QuadIrrational, ROUNDING,
};

/// Default cap on the number of product factors.
pub const DEFAULT_MAX_TERMS: u64 = 1_000_000;

/// Arguments of one Siegel function evaluation.
#[derive(Debug, Clone)]
pub struct SiegelParams {
    r1: BigRational,
    r2: BigRational,
    tau: QuadIrrational,
    precision: Precision,
    max_terms: u64,
}

impl SiegelParams {
    /// `r1, r2` must lie in `[0, 1)` and not both vanish.
    pub fn new(r1: BigRational, r2: BigRational, tau: QuadIrrational, precision: Precision) -> Result<Self> {
        let in_unit = |r: &BigRational| !r.is_negative() && r < &rational(1, 1);
        if !in_unit(&r1) || !in_unit(&r2) {
            return Err(Error::InvalidPoint(format!("({r1}, {r2}) is not in [0,1)^2")));
        }
        if r1.is_zero() && r2.is_zero() {
            return Err(Error::InvalidPoint("(r1, r2) = (0, 0) is integral".into()));
        }
        Ok(SiegelParams {
            r1,
            r2,
            tau,
            precision,
            max_terms: DEFAULT_MAX_TERMS,
        })
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }
}

/// Number of product factors `M` so that the omitted tail changes the
/// product by a relative amount below `2^-(bits + guard)`.
///
/// Starts from `ceil((bits+guard) ln 2 / (2 pi Im tau)) + 2` and grows it
/// until the tail bound `2|q|^M / (1-|q|)^2` on the log of the omitted
/// factors is small enough; the second condition only bites when `Im tau`
/// is small. Returns `None` when the count does not fit in a `u64`.
pub fn truncation_terms(imag_tau: f64, precision: Precision) -> Option<u64> {
    let target = precision.working() as f64;
    let decay = 2.0 * PI * imag_tau / LN_2; // -log2 |q_tau|
    if decay.is_nan() || decay <= 0.0 {
        return None;
    }
    let base = (target * LN_2 / (2.0 * PI * imag_tau)).ceil() + 2.0;
    let abs_q = (-2.0 * PI * imag_tau).exp();
    let tail = ((target + 1.0 - 2.0 * (1.0 - abs_q).log2()) / decay).ceil();
    let m = base.max(tail);
    if m.is_finite() && m < u64::MAX as f64 {
        Some(m as u64)
    } else {
        None
    }
}

/// `g_(r1,r2)(tau)` for reduced `(r1, r2)`.
pub fn siegel_g(params: &SiegelParams) -> Result<BigComplex> {
    let SiegelParams {
        r1,
        r2,
        tau,
        precision,
        max_terms,
    } = params;
    let terms = match truncation_terms(tau.imag_f64(), *precision) {
        Some(m) if m <= *max_terms => m,
        Some(m) => return Err(Error::PrecisionUnachievable { needed: m, cap: *max_terms }),
        None => return Err(Error::PrecisionUnachievable { needed: u64::MAX, cap: *max_terms }),
    };

    let wp = precision.working();
    let mut cc = Consts::new().map_err(|e| Error::Arithmetic(format!("{e:?}")))?;
    let x = tau.real_part();
    let y = tau.imag_float(wp + 16);
    let times_y = |r: &BigRational| y.mul(&float_from_rational(r, wp + 16), wp + 16, ROUNDING);

    // -e(tau B2(r1)/2 + r2 (r1 - 1)/2), one exponential for both leading factors.
    let half_b2 = bernoulli2(r1) / rational(2, 1);
    let lead_re = &x * &half_b2 + r2 * (r1 - rational(1, 1)) / rational(2, 1);
    let lead = BigComplex::unit_exp(&lead_re, &times_y(&half_b2), wp, &mut cc).neg();

    let q_tau = BigComplex::unit_exp(&x, &y, wp, &mut cc);
    let z_re = frac(&(r1 * &x + r2));
    let z_im = times_y(r1);
    let q_z = BigComplex::unit_exp(&z_re, &z_im, wp, &mut cc);
    let q_z_inv = BigComplex::unit_exp(&-&z_re, &z_im.neg(), wp, &mut cc);

    let one = BigComplex::one(wp);
    let mut acc = lead.mul(&one.sub(&q_z));
    let mut up = q_z;
    let mut down = q_z_inv;
    for _ in 0..terms {
        up = up.mul(&q_tau);
        down = down.mul(&q_tau);
        acc = acc.mul(&one.sub(&up).mul(&one.sub(&down)));
    }
    if !acc.is_finite() {
        return Err(Error::Arithmetic("non-finite Siegel product".into()));
    }
    Ok(acc)
}

/// `12N / gcd(6, N)`, the exponent that makes `g` a level-`N` function.
pub fn level_exponent(n: u64) -> i64 {
    (12 * n / n.gcd(&6)) as i64
}

/// Which power of `g` to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerKind {
    /// `g^(-12N/gcd(6,N))`
    Negative,
    /// `g^(12N/gcd(6,N))`
    Positive,
    /// `g^(12N)`, the Siegel-Ramachandra invariant.
    Ramachandra,
}

impl PowerKind {
    pub fn exponent(self, n: u64) -> i64 {
        match self {
            PowerKind::Negative => -level_exponent(n),
            PowerKind::Positive => level_exponent(n),
            PowerKind::Ramachandra => 12 * n as i64,
        }
    }
}

/// `g_(v/N, w/N)(tau)^e` with `e` chosen by `kind`.
///
/// `(v, w)` may be any integers not both divisible by `N`; they are reduced
/// into `[0, N)` first, which leaves these powers unchanged.
pub fn siegel_power(
    v: i64,
    w: i64,
    tau: &QuadIrrational,
    n: u64,
    kind: PowerKind,
    precision: Precision,
) -> Result<BigComplex> {
    siegel_power_capped(v, w, tau, n, kind, precision, DEFAULT_MAX_TERMS)
}

pub fn siegel_power_capped(
    v: i64,
    w: i64,
    tau: &QuadIrrational,
    n: u64,
    kind: PowerKind,
    precision: Precision,
    max_terms: u64,
) -> Result<BigComplex> {
    let n = crate::reciprocity::validate_level(n)?;
    let modulus = n as i64;
    let (rv, rw) = (v.rem_euclid(modulus), w.rem_euclid(modulus));
    if rv == 0 && rw == 0 {
        return Err(Error::ZeroVector(v, w, n));
    }
    let params = SiegelParams::new(rational(rv, modulus), rational(rw, modulus), tau.clone(), precision)?
        .with_max_terms(max_terms);
    siegel_g(&params)?.powi(kind.exponent(n))
}

/// Approximate number of leading bits on which `a` and `b` agree,
/// `-log2(|a - b| / |b|)`. Infinite when they are equal.
pub fn agreement_bits(a: &BigComplex, b: &BigComplex) -> f64 {
    let diff = a.sub(b).abs();
    if diff.is_zero() {
        return f64::INFINITY;
    }
    let scale = b.abs();
    if scale.is_zero() {
        return f64::NEG_INFINITY;
    }
    let p = a.precision().max(b.precision());
    let rel: BigFloat = diff.div(&scale, p, ROUNDING);
    match rel.exponent() {
        Some(e) => -(e as f64) + 1.0,
        None => f64::NEG_INFINITY,
    }
}
