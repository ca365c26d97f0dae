//! The conjugates of `x = g_(0,1/N)(theta)^(-12N/gcd(6,N))`, the dominance
//! criterion that makes a power of `x` a normal basis generator, and the
//! integer minimal polynomial of `x`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{
    float_to_f64, round_to_bigint, BigComplex, BigFloat, Precision, QuadIrrational, ROUNDING,
};
use crate::quadforms::{theta, theta_of_form, Discriminant};
use crate::reciprocity::{act_vector, beta_mod_n, conjugate_indices, ConjugateIndex, FracVector};
use crate::siegel::{siegel_power, PowerKind};

/// Default absolute tolerance for snapping polynomial coefficients.
pub const DEFAULT_SNAP_TOLERANCE: f64 = 1e-10;

/// `log2` of the margin added to the largest ratio before it is compared.
pub const RATIO_MARGIN_LOG2: i32 = -64;

/// One Galois conjugate `x^gamma` of the base value.
#[derive(Debug, Clone)]
pub struct ConjugateRecord {
    pub index: ConjugateIndex,
    /// `(0, 1/N) alpha beta_Q`, canonical mod `Z^2` and `±1`.
    pub vector: FracVector,
    /// `theta_Q`
    pub point: QuadIrrational,
    pub value: BigComplex,
}

/// `x = g_(0,1/N)(theta)^(-12N/gcd(6,N))`, evaluated directly.
pub fn base_value(d: Discriminant, n: u64, precision: Precision) -> Result<BigComplex> {
    siegel_power(0, 1, &theta(d), n, PowerKind::Negative, precision)
}

/// All conjugates of the base value, in the order of [`conjugate_indices`].
///
/// The evaluations run in parallel on the current rayon pool; the output
/// order does not depend on scheduling.
pub fn conjugates(d: Discriminant, n: u64, precision: Precision) -> Result<Vec<ConjugateRecord>> {
    let indices = conjugate_indices(d, n)?;
    let base = FracVector::base(n);
    indices
        .into_par_iter()
        .map(|index| {
            let beta = beta_mod_n(&index.form, d, n)?;
            let vector = act_vector(&base, &index.alpha.matrix().mul(&beta)?)?;
            let point = theta_of_form(&index.form, d);
            let value = siegel_power(
                vector.v() as i64,
                vector.w() as i64,
                &point,
                n,
                PowerKind::Negative,
                precision,
            )?;
            Ok(ConjugateRecord {
                index,
                vector,
                point,
                value,
            })
        })
        .collect()
}

/// Outcome of checking `|x^gamma / x| < 1` for every `gamma != id`.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    /// `|x^gamma / x|` for the non-identity conjugates, in record order.
    pub ratios: Vec<BigFloat>,
    /// Largest ratio, zero when there are none.
    pub max_ratio: BigFloat,
    /// `max_ratio + 2^-64`, the value actually compared.
    pub bounded_ratio: BigFloat,
    pub passes: bool,
    /// Least `m` with `bounded_ratio^m <= 1/group_order`, when the check passes.
    pub power: Option<u64>,
    pub group_order: usize,
}

pub fn check_criterion(records: &[ConjugateRecord]) -> Result<CriterionReport> {
    let first = records
        .first()
        .ok_or_else(|| Error::Arithmetic("empty conjugate list".into()))?;
    if !first.index.is_identity() {
        return Err(Error::Arithmetic("first conjugate is not the identity".into()));
    }
    let p = first.value.precision();
    let magnitudes: Vec<BigFloat> = records.iter().map(|r| r.value.abs()).collect();
    if let Some(i) = magnitudes.iter().position(|m| m.is_zero()) {
        return Err(Error::DegenerateValue(i));
    }
    let ratios: Vec<BigFloat> = magnitudes[1..]
        .iter()
        .map(|m| m.div(&magnitudes[0], p, ROUNDING))
        .collect();
    let max_ratio = ratios
        .iter()
        .fold(BigFloat::from_i64(0, p), |acc, r| if r.cmp(&acc).is_some_and(|c| c > 0) { r.clone() } else { acc });
    let bounded_ratio = max_ratio.add(&margin(p), p, ROUNDING);
    let one = BigFloat::from_i64(1, p);
    let passes = bounded_ratio.cmp(&one).is_some_and(|c| c < 0);
    let power = if passes {
        least_power_exponent(&bounded_ratio, records.len())
    } else {
        None
    };
    Ok(CriterionReport {
        ratios,
        max_ratio,
        bounded_ratio,
        passes,
        power,
        group_order: records.len(),
    })
}

fn margin(p: usize) -> BigFloat {
    let mut m = BigFloat::from_i64(1, p);
    m.set_exponent(RATIO_MARGIN_LOG2 + 1);
    m
}

/// Least `m >= 1` with `ratio^m <= 1/group_order`; `None` unless `0 <= ratio < 1`.
pub fn least_power_exponent(ratio: &BigFloat, group_order: usize) -> Option<u64> {
    let p = ratio.precision().unwrap_or(64).max(128) + 64;
    let one = BigFloat::from_i64(1, p);
    if ratio.is_negative() || ratio.cmp(&one).is_none_or(|c| c >= 0) {
        return None;
    }
    if ratio.is_zero() || group_order <= 1 {
        return Some(1);
    }
    let order = BigFloat::from_u64(group_order as u64, p);
    // ratio^m * #G <= 1
    let fits = |m: u64| {
        let v = ratio.powi(m as usize, p, ROUNDING).mul(&order, p, ROUNDING);
        v.cmp(&one).is_some_and(|c| c <= 0)
    };
    let r = float_to_f64(ratio);
    let estimate = if r > 0.0 {
        ((group_order as f64).ln() / -r.ln()).ceil()
    } else {
        1.0
    };
    let mut m = if estimate.is_finite() && estimate >= 1.0 {
        (estimate as u64).saturating_sub(1).max(1)
    } else {
        1
    };
    while !fits(m) {
        m += 1;
    }
    while m > 1 && fits(m - 1) {
        m -= 1;
    }
    Some(m)
}

/// A polynomial with integer coefficients, highest degree first, together
/// with the worst distances seen while snapping.
#[derive(Debug, Clone, PartialEq)]
pub struct IntPolynomial {
    pub coefficients: Vec<BigInt>,
    pub max_rounding_residual: f64,
    pub max_imag_residual: f64,
}

impl IntPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &BigInt {
        &self.coefficients[0]
    }

    pub fn constant(&self) -> &BigInt {
        self.coefficients.last().expect("nonempty coefficient list")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Evaluates at a complex point by Horner's rule.
    pub fn eval(&self, z: &BigComplex) -> BigComplex {
        let p = z.precision();
        self.coefficients.iter().fold(BigComplex::zero(p), |acc, c| {
            let c = crate::exactmath::float_from_bigint(c, p);
            acc.mul(z).add(&BigComplex::new(c, BigFloat::from_i64(0, p), p))
        })
    }
}

/// Coefficients of `prod (X - v_i)`, highest degree first.
pub fn expand_product(values: &[BigComplex]) -> Vec<BigComplex> {
    let p = values.iter().map(BigComplex::precision).max().unwrap_or(64);
    let mut coeffs = vec![BigComplex::one(p)];
    for v in values {
        let mut next = coeffs.clone();
        next.push(BigComplex::zero(p));
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].sub(&c.mul(v));
        }
        coeffs = next;
    }
    coeffs
}

fn snap(coeffs: &[BigComplex], tolerance: f64) -> Result<IntPolynomial> {
    let degree = coeffs.len() - 1;
    let mut out = Vec::with_capacity(coeffs.len());
    let mut max_round = 0f64;
    let mut max_imag = 0f64;
    for (k, c) in coeffs.iter().enumerate() {
        let (n, residual) = round_to_bigint(c.re())
            .ok_or_else(|| Error::Arithmetic("non-finite coefficient".into()))?;
        let rounding = float_to_f64(&residual);
        let imaginary = float_to_f64(&c.im().abs());
        if !(rounding <= tolerance && imaginary <= tolerance) {
            return Err(Error::SnapFailure {
                degree: degree - k,
                rounding,
                imaginary,
                tolerance,
            });
        }
        max_round = max_round.max(rounding);
        max_imag = max_imag.max(imaginary);
        out.push(n);
    }
    Ok(IntPolynomial {
        coefficients: out,
        max_rounding_residual: max_round,
        max_imag_residual: max_imag,
    })
}

fn values(records: &[ConjugateRecord]) -> Vec<BigComplex> {
    records.iter().map(|r| r.value.clone()).collect()
}

/// `prod (X - x^gamma)` snapped to a monic integer polynomial.
///
/// Fails with [`Error::SnapFailure`] when some coefficient is farther than
/// `tolerance` from an integer, either because the precision is too low or
/// because the base value is not an algebraic integer.
pub fn minimal_polynomial(records: &[ConjugateRecord], tolerance: f64) -> Result<IntPolynomial> {
    snap(&expand_product(&values(records)), tolerance)
}

/// The primitive integer polynomial with the conjugates as roots.
///
/// Equal to [`minimal_polynomial`] when the base value is an algebraic
/// integer. Otherwise the leading coefficient is recovered as the integer
/// nearest `1 / prod x^gamma` (an integer whenever `1/x` is an algebraic
/// integer, as for prime-power levels), the scaled coefficients are snapped
/// and the content is divided out.
pub fn integral_polynomial(records: &[ConjugateRecord], tolerance: f64) -> Result<IntPolynomial> {
    integral_polynomial_of(&values(records), tolerance)
}

pub fn integral_polynomial_of(values: &[BigComplex], tolerance: f64) -> Result<IntPolynomial> {
    let coeffs = expand_product(values);
    let monic_failure = match snap(&coeffs, tolerance) {
        Ok(poly) => return Ok(poly),
        Err(e) => e,
    };
    let constant = coeffs.last().expect("nonempty");
    let inverse = constant.recip().map_err(|_| monic_failure.clone())?;
    let (scale, residual) = round_to_bigint(inverse.re()).ok_or_else(|| monic_failure.clone())?;
    let off = float_to_f64(&residual).max(float_to_f64(&inverse.im().abs()));
    if scale.is_zero() || off.is_nan() || off > tolerance {
        return Err(monic_failure);
    }
    let p = inverse.precision();
    let factor = crate::exactmath::float_from_bigint(&scale, p);
    let scaled: Vec<BigComplex> = coeffs.iter().map(|c| c.scale(&factor)).collect();
    let mut poly = snap(&scaled, tolerance)?;

    let content = poly
        .coefficients
        .iter()
        .fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if poly.leading().is_negative() { -BigInt::one() } else { BigInt::one() };
    let divisor = content * sign;
    if !divisor.is_one() {
        for c in &mut poly.coefficients {
            *c = &*c / &divisor;
        }
    }
    Ok(poly)
}

/// Extra bits needed so that every coefficient of the (possibly scaled)
/// product polynomial is known to the run's absolute accuracy.
///
/// Uses `|e_k| <= prod (1 + |v_i|)` and, for the scaled case,
/// `|1 / prod v_i| <= prod 2^(1 - exponent(|v_i|))`.
pub fn coefficient_headroom_bits(values: &[BigComplex]) -> usize {
    let mut bits: i64 = 0;
    for v in values {
        let e = v.abs().exponent().map_or(0, i64::from);
        bits += 1 + e.max(0) + (1 - e).max(0);
    }
    let n = values.len().max(1) as f64;
    bits as usize + n.log2().ceil() as usize + 2
}

/// Which integer polynomial to recover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolynomialKind {
    /// Monic, fails unless the base value is an algebraic integer.
    Monic,
    /// Primitive with positive leading coefficient.
    Integral,
}

/// A polynomial together with the conjugates and precision it came from.
#[derive(Debug, Clone)]
pub struct PolynomialRun {
    pub polynomial: IntPolynomial,
    pub records: Vec<ConjugateRecord>,
    /// Precision of the evaluation the polynomial was read from.
    pub precision: Precision,
}

/// Evaluates the conjugates, widens the precision by the coefficient
/// headroom, re-evaluates, and snaps.
///
/// `precision.bits` is then the absolute accuracy, in bits, of every
/// unrounded coefficient.
pub fn compute_polynomial(
    d: Discriminant,
    n: u64,
    precision: Precision,
    tolerance: f64,
    kind: PolynomialKind,
) -> Result<PolynomialRun> {
    let probe = conjugates(d, n, precision)?;
    let extra = coefficient_headroom_bits(&values(&probe));
    let widened = precision.widened(extra);
    let records = conjugates(d, n, widened)?;
    let polynomial = match kind {
        PolynomialKind::Monic => minimal_polynomial(&records, tolerance)?,
        PolynomialKind::Integral => integral_polynomial(&records, tolerance)?,
    };
    Ok(PolynomialRun {
        polynomial,
        records,
        precision: widened,
    })
}

/// The primitive integer polynomial whose roots are the `m`-th powers of
/// the conjugates.
pub fn compute_power_polynomial(
    d: Discriminant,
    n: u64,
    m: u64,
    precision: Precision,
    tolerance: f64,
) -> Result<IntPolynomial> {
    let m = i64::try_from(m.max(1)).map_err(|_| Error::Arithmetic("power too large".into()))?;
    let probe = conjugates(d, n, precision)?;
    let extra = coefficient_headroom_bits(&values(&probe)) * m as usize;
    let records = conjugates(d, n, precision.widened(extra))?;
    let powered = records
        .iter()
        .map(|r| r.value.powi(m))
        .collect::<Result<Vec<_>>>()?;
    integral_polynomial_of(&powered, tolerance)
}

/// `g_(0,1/N)(theta)^(12N)`, the Siegel-Ramachandra invariant of the unit
/// ray class modulo `N`.
pub fn siegel_ramachandra_invariant(d: Discriminant, n: u64, precision: Precision) -> Result<BigComplex> {
    siegel_power(0, 1, &theta(d), n, PowerKind::Ramachandra, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::siegel::agreement_bits;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    fn bf(x: f64) -> BigFloat {
        BigFloat::from_f64(x, 128)
    }

    #[test]
    fn least_power_examples() {
        assert_eq!(least_power_exponent(&bf(0.5), 8), Some(3));
        assert_eq!(least_power_exponent(&bf(0.5), 9), Some(4));
        assert_eq!(least_power_exponent(&bf(0.125), 8), Some(1));
        assert_eq!(least_power_exponent(&bf(0.0), 8), Some(1));
        assert_eq!(least_power_exponent(&bf(0.9), 1), Some(1));
        assert_eq!(least_power_exponent(&bf(1.0), 8), None);
        assert_eq!(least_power_exponent(&bf(1.5), 8), None);
        // 0.99^m <= 1/1000  =>  m = ceil(ln 1000 / -ln 0.99) = 688
        assert_eq!(least_power_exponent(&bf(0.99), 1000), Some(688));
    }

    #[test]
    fn margin_is_two_to_minus_64() {
        let m = margin(128);
        let expected = BigFloat::from_f64(2f64.powi(-64), 128);
        assert_eq!(m.cmp(&expected), Some(0));
    }

    #[test]
    fn single_record_passes_vacuously() {
        let records = conjugates(disc(-7), 2, Precision::default()).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].vector, FracVector::new(0, 1, 2).unwrap());
        assert_eq!(records[0].point, theta(disc(-7)));
        let report = check_criterion(&records).unwrap();
        assert!(report.passes);
        assert_eq!(report.power, Some(1));
        assert!(report.ratios.is_empty());
        assert!(report.max_ratio.is_zero());
        assert_eq!(report.group_order, 1);
    }

    #[test]
    fn criterion_rejects_empty_and_misordered_input() {
        assert!(check_criterion(&[]).is_err());
        let mut records = conjugates(disc(-20), 2, Precision::new(64, 32)).unwrap();
        records.swap(0, 1);
        assert!(check_criterion(&records).is_err());
    }

    #[test]
    fn degenerate_value_is_reported() {
        let mut records = conjugates(disc(-20), 2, Precision::new(64, 32)).unwrap();
        records[2].value = BigComplex::zero(96);
        assert_eq!(check_criterion(&records).unwrap_err(), Error::DegenerateValue(2));
    }

    #[test]
    fn expand_product_small() {
        let v = |x: i64| BigComplex::from_i64(x, 64);
        let c = expand_product(&[v(1), v(2), v(-3)]);
        let snapped = snap(&c, 1e-10).unwrap();
        // (X-1)(X-2)(X+3) = X^3 - 7X + 6
        let expected: Vec<BigInt> = [1, 0, -7, 6].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(snapped.coefficients, expected);
    }

    #[test]
    fn degree_one_snapping() {
        let half = BigComplex::new(bf(0.5), bf(0.0), 128);
        match snap(&expand_product(std::slice::from_ref(&half)), 1e-10) {
            Err(Error::SnapFailure { degree: 0, .. }) => {}
            other => panic!("expected SnapFailure, got {other:?}"),
        }
        let seven = BigComplex::from_i64(7, 128);
        let p = snap(&expand_product(&[seven]), 1e-10).unwrap();
        assert_eq!(p.coefficients, vec![BigInt::from(1), BigInt::from(-7)]);
        // Clearing the denominator turns 1/2 into 2X - 1.
        let p = integral_polynomial_of(&[half], 1e-10).unwrap();
        assert_eq!(p.coefficients, vec![BigInt::from(2), BigInt::from(-1)]);
        let third = BigComplex::new(bf(0.3), bf(0.0), 128);
        assert!(integral_polynomial_of(&[third], 1e-10).is_err());
    }

    #[test]
    fn integral_polynomial_divides_content() {
        // roots 1/2 and 1/4: 8 (X - 1/2)(X - 1/4) = 8X^2 - 6X + 1
        let r = |x: f64| BigComplex::new(bf(x), bf(0.0), 128);
        let p = integral_polynomial_of(&[r(0.5), r(0.25)], 1e-10).unwrap();
        let expected: Vec<BigInt> = [8, -6, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(p.coefficients, expected);
        // roots -2/3 ... not reciprocal-integral: 3X + 2 has constant 2/3 -> 1/c = 3/2
        assert!(integral_polynomial_of(&[r(-2.0 / 3.0)], 1e-10).is_err());
    }

    #[test]
    fn identity_record_equals_direct_base_value() {
        for (d, n) in [(-20, 6), (-7, 5), (-23, 4), (-15, 3)] {
            let p = Precision::default();
            let records = conjugates(disc(d), n, p).unwrap();
            assert!(records[0].index.is_identity());
            assert_eq!(records[0].vector, FracVector::base(n));
            assert_eq!(records[0].point, theta(disc(d)));
            let x = base_value(disc(d), n, p).unwrap();
            assert!(agreement_bits(&records[0].value, &x).is_infinite());
        }
    }

    #[test]
    fn crt_prime_order_does_not_change_vectors() {
        use crate::exactmath::prime_power_factors;
        use crate::reciprocity::beta_mod_n_with_order;
        let d = disc(-23);
        for n in [6u64, 10, 12, 30] {
            let mut factors = prime_power_factors(n);
            for form in crate::quadforms::reduced_forms(d) {
                let a = beta_mod_n_with_order(&form, d, n, &factors).unwrap();
                factors.reverse();
                let b = beta_mod_n_with_order(&form, d, n, &factors).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn headroom_grows_with_magnitude() {
        let small = [BigComplex::from_i64(1, 64)];
        let big = [BigComplex::from_i64(1 << 40, 64)];
        assert!(coefficient_headroom_bits(&big) >= coefficient_headroom_bits(&small) + 40);
    }

    #[test]
    fn invariant_is_a_power_of_the_base_value() {
        let p = Precision::default();
        // N = 6: g^72 = (g^-12)^-6
        let inv = siegel_ramachandra_invariant(disc(-20), 6, p).unwrap();
        let x = base_value(disc(-20), 6, p).unwrap();
        assert!(agreement_bits(&inv, &x.powi(-6).unwrap()) >= 200.0);
        // N = 5: g^60 = (g^-60)^-1
        let inv = siegel_ramachandra_invariant(disc(-20), 5, p).unwrap();
        let x = base_value(disc(-20), 5, p).unwrap();
        assert!(agreement_bits(&inv, &x.powi(-1).unwrap()) >= 200.0);
    }
}
