//! Siegel function values checked against a direct product evaluation that
//! shares no code with the library's evaluator.

use astro_float::{BigFloat, Consts, RoundingMode};
use rayclass::exactmath::{rational, BigComplex, Precision, QuadIrrational};
use rayclass::siegel::{agreement_bits, siegel_g, SiegelParams};

const BITS: usize = 512;
const TERMS: i64 = 200;
const RM: RoundingMode = RoundingMode::ToEven;

struct C(BigFloat, BigFloat);

fn f(x: f64) -> BigFloat {
    BigFloat::from_f64(x, BITS)
}

fn ratio(n: i64, d: i64) -> BigFloat {
    BigFloat::from_i64(n, BITS).div(&BigFloat::from_i64(d, BITS), BITS, RM)
}

impl C {
    fn mul(&self, o: &C) -> C {
        let re = self.0.mul(&o.0, BITS, RM).sub(&self.1.mul(&o.1, BITS, RM), BITS, RM);
        let im = self.0.mul(&o.1, BITS, RM).add(&self.1.mul(&o.0, BITS, RM), BITS, RM);
        C(re, im)
    }
    fn one_minus(&self) -> C {
        C(f(1.0).sub(&self.0, BITS, RM), self.1.neg())
    }
}

/// `exp(2 pi i (a + b i))` for real `a`, `b`.
fn e(a: &BigFloat, b: &BigFloat, cc: &mut Consts) -> C {
    let two_pi = cc.pi(BITS, RM).mul(&f(2.0), BITS, RM);
    let modulus = two_pi.mul(b, BITS, RM).neg().exp(BITS, RM, cc);
    let angle = two_pi.mul(a, BITS, RM);
    C(
        modulus.mul(&angle.cos(BITS, RM, cc), BITS, RM),
        modulus.mul(&angle.sin(BITS, RM, cc), BITS, RM),
    )
}

/// `g_(r1,r2)(tau)` with `r1 = n1/d1`, `r2 = n2/d2`, `tau = (p + sqrt(d))/q`.
fn oracle(r1: (i64, i64), r2: (i64, i64), tau: (i64, i64, i64)) -> C {
    let mut cc = Consts::new().unwrap();
    let x = ratio(tau.0, tau.2);
    let y = BigFloat::from_i64(-tau.1, BITS).sqrt(BITS, RM).div(&BigFloat::from_i64(tau.2, BITS), BITS, RM);
    let a1 = ratio(r1.0, r1.1);
    let a2 = ratio(r2.0, r2.1);
    // B2(a1)/2 = (a1^2 - a1 + 1/6)/2
    let b2 = a1.mul(&a1, BITS, RM).sub(&a1, BITS, RM).add(&ratio(1, 6), BITS, RM);
    let half_b2 = b2.div(&f(2.0), BITS, RM);
    // q_tau^(B2/2)
    let mut g = e(&x.mul(&half_b2, BITS, RM), &y.mul(&half_b2, BITS, RM), &mut cc);
    // e^(pi i a2 (a1 - 1)) = exp(2 pi i a2 (a1 - 1)/2)
    let phase = a2.mul(&a1.sub(&f(1.0), BITS, RM), BITS, RM).div(&f(2.0), BITS, RM);
    g = g.mul(&e(&phase, &f(0.0), &mut cc));
    g = C(g.0.neg(), g.1.neg());
    // z = a1 tau + a2
    let zx = a1.mul(&x, BITS, RM).add(&a2, BITS, RM);
    let zy = a1.mul(&y, BITS, RM);
    g = g.mul(&e(&zx, &zy, &mut cc).one_minus());
    for n in 1..=TERMS {
        let nf = BigFloat::from_i64(n, BITS);
        let (nx, ny) = (nf.mul(&x, BITS, RM), nf.mul(&y, BITS, RM));
        let plus = e(&nx.add(&zx, BITS, RM), &ny.add(&zy, BITS, RM), &mut cc);
        let minus = e(&nx.sub(&zx, BITS, RM), &ny.sub(&zy, BITS, RM), &mut cc);
        g = g.mul(&plus.one_minus()).mul(&minus.one_minus());
    }
    g
}

fn library(r1: (i64, i64), r2: (i64, i64), tau: (i64, i64, i64), bits: usize) -> BigComplex {
    let params = SiegelParams::new(
        rational(r1.0, r1.1),
        rational(r2.0, r2.1),
        QuadIrrational::new(tau.0, tau.2, tau.1).unwrap(),
        Precision::new(bits, 64),
    )
    .unwrap();
    siegel_g(&params).unwrap()
}

fn check(r1: (i64, i64), r2: (i64, i64), tau: (i64, i64, i64)) {
    let C(re, im) = oracle(r1, r2, tau);
    let expected = BigComplex::new(re, im, BITS);
    let got = library(r1, r2, tau, 256);
    let bits = agreement_bits(&got, &expected);
    assert!(bits >= 250.0, "g_({r1:?},{r2:?}) at {tau:?}: {bits} bits");
}

#[test]
fn base_point_level_six() {
    // tau = sqrt(-20)/2
    check((0, 1), (1, 6), (0, -20, 2));
}

#[test]
fn second_class_point() {
    check((1, 6), (5, 6), (-2, -20, 4));
    check((1, 2), (1, 3), (-2, -20, 4));
}

#[test]
fn odd_discriminants() {
    check((1, 3), (1, 2), (-1, -7, 2));
    check((2, 5), (3, 5), (-1, -23, 4));
    check((0, 1), (1, 5), (1, -15, 4));
}

#[test]
fn small_imaginary_part() {
    // a = 3 for d = -47 puts Im(tau) near 1.14
    check((5, 7), (1, 7), (-1, -47, 6));
}
