//! Criterion, degree and coefficient stability over a grid of small fields.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayclass::exactmath::Precision;
use rayclass::normal_basis::{
    check_criterion, compute_polynomial, conjugates, minimal_polynomial, PolynomialKind,
    DEFAULT_SNAP_TOLERANCE,
};
use rayclass::quadforms::{class_number, Discriminant};
use rayclass::reciprocity::w_group;
use rayclass::Error;

const DISCS: [i64; 7] = [-7, -8, -11, -15, -19, -20, -24];
const LEVELS: [u64; 5] = [2, 3, 4, 5, 6];

fn integral(d: Discriminant, n: u64, bits: usize) -> Vec<BigInt> {
    compute_polynomial(d, n, Precision::new(bits, 64), DEFAULT_SNAP_TOLERANCE, PolynomialKind::Integral)
        .unwrap()
        .polynomial
        .coefficients
}

/// Leading coefficient of the primitive polynomial, i.e. `1 / N(x)` up to
/// sign, as found by an independent mpmath computation.
fn expected_leading(d: i64, n: u64) -> BigInt {
    let pow = |b: u32, e: u32| BigInt::from(b).pow(e);
    match (d, n) {
        (-7, 3) | (-15, 3) | (-19, 3) | (-24, 3) => pow(3, 6),
        (-8, 2) | (-8, 4) => pow(2, 6),
        (-11 | -19 | -20 | -24, 2 | 4) => pow(2, 12),
        (-7 | -8 | -15 | -20, 5) => pow(5, 30),
        _ => BigInt::one(),
    }
}

#[test]
fn grid() {
    for d in DISCS {
        let d = Discriminant::new(d).unwrap();
        for n in LEVELS {
            let records = conjugates(d, n, Precision::default()).unwrap();
            let report = check_criterion(&records).unwrap();
            assert!(report.passes, "criterion fails for d={d} N={n}");
            let expected = w_group(d, n).unwrap().len() * class_number(d);
            assert_eq!(records.len(), expected);

            let hi = integral(d, n, 256);
            let lo = integral(d, n, 128);
            assert_eq!(hi.len(), expected + 1);
            assert_eq!(hi, lo, "coefficients differ for d={d} N={n}");
            assert_eq!(hi[0], expected_leading(d.value(), n), "d={d} N={n}");
            assert!(hi[expected].abs().is_one(), "d={d} N={n}");
        }
    }
}

#[test]
fn monic_only_when_integral() {
    let p = Precision::default();
    for d in DISCS {
        let d = Discriminant::new(d).unwrap();
        for n in LEVELS {
            let integral = expected_leading(d.value(), n).is_one();
            let run = compute_polynomial(d, n, p, DEFAULT_SNAP_TOLERANCE, PolynomialKind::Monic);
            match run {
                Ok(run) => {
                    assert!(integral, "d={d} N={n}");
                    assert!(run.polynomial.is_monic());
                }
                Err(Error::SnapFailure { .. }) => assert!(!integral, "d={d} N={n}"),
                Err(e) => panic!("d={d} N={n}: {e}"),
            }
        }
    }
}

#[test]
fn level_six_values_are_units() {
    for d in DISCS {
        let d = Discriminant::new(d).unwrap();
        let records = conjugates(d, 6, Precision::default()).unwrap();
        let poly = minimal_polynomial(&records, DEFAULT_SNAP_TOLERANCE).unwrap();
        assert!(poly.constant().abs().is_one(), "d={d}");
    }
}
