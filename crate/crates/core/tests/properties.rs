//! Randomized invariants of the arithmetic, reciprocity and evaluation layers.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;
use rayclass::exactmath::{bernoulli2, prime_power_factors, rational, Precision, QuadIrrational};
use rayclass::quadforms::{fundamental_discriminants, reduced_forms, theta, theta_of_form, Discriminant};
use rayclass::reciprocity::{
    act_vector, beta_local, beta_mod_n, beta_mod_n_with_order, conjugate_indices, FracVector, MatrixModN,
};
use rayclass::siegel::{agreement_bits, siegel_power, PowerKind};

fn discriminants() -> impl Strategy<Value = Discriminant> {
    let all = fundamental_discriminants(-99, -1);
    prop::sample::select(all)
}

fn invertible(n: u64) -> impl Strategy<Value = MatrixModN> {
    let r = 0..n as i64;
    (r.clone(), r.clone(), r.clone(), r).prop_filter_map("singular", move |(a, b, c, d)| {
        MatrixModN::new([a, b, c, d], n).ok()
    })
}

fn vector(n: u64) -> impl Strategy<Value = FracVector> {
    (0..n as i64, 0..n as i64).prop_filter_map("zero", move |(v, w)| FracVector::new(v, w, n).ok())
}

fn action_case() -> impl Strategy<Value = (FracVector, MatrixModN, MatrixModN)> {
    (2u64..=12).prop_flat_map(|n| (vector(n), invertible(n), invertible(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn right_action((v, m1, m2) in action_case()) {
        let lhs = act_vector(&act_vector(&v, &m1).unwrap(), &m2).unwrap();
        let rhs = act_vector(&v, &m1.mul(&m2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #[test]
    fn bernoulli2_symmetry(n in -1000i64..1000, d in 1i64..1000) {
        let r = rational(n, d);
        let one = BigRational::from_integer(1.into());
        prop_assert_eq!(bernoulli2(&r), bernoulli2(&(one - &r)));
    }

    #[test]
    fn to_complex_refines(d in discriminants(), p in -50i64..50, q in 1i64..40, bits in 64usize..300) {
        let x = QuadIrrational::new(p, q, d.value()).unwrap();
        let lo = x.to_complex(bits);
        let hi = x.to_complex(2 * bits);
        prop_assert!(agreement_bits(&lo, &hi) >= bits as f64 - 2.0);
        prop_assert!(lo.im().is_positive());
    }

    #[test]
    fn beta_has_unit_determinant(d in discriminants(), n in 2u64..=30) {
        for form in reduced_forms(d) {
            let beta = beta_mod_n(&form, d, n).unwrap();
            prop_assert_eq!(beta.det().gcd(&n), 1);
        }
    }

    #[test]
    fn beta_reduces_to_local_matrices(d in discriminants(), n in 2u64..=30) {
        for form in reduced_forms(d) {
            let beta = beta_mod_n(&form, d, n).unwrap();
            for (p, pe) in prime_power_factors(n) {
                let local = beta_local(&form, d, p);
                let reduce = |e: [u64; 4]| e.map(|x| x % pe);
                let plus = reduce(beta.entries());
                let minus = reduce(beta.neg().entries());
                let target = local.map(|x| x.rem_euclid(pe as i64) as u64);
                prop_assert!(plus == target || minus == target);
            }
        }
    }

    #[test]
    fn crt_order_is_irrelevant(d in discriminants(), n in 2u64..=30, seed in any::<u64>()) {
        let mut factors = prime_power_factors(n);
        let k = factors.len();
        if k > 1 {
            factors.rotate_left((seed % k as u64) as usize);
            if seed & 1 == 1 {
                factors.reverse();
            }
        }
        for form in reduced_forms(d) {
            prop_assert_eq!(
                beta_mod_n(&form, d, n).unwrap(),
                beta_mod_n_with_order(&form, d, n, &factors).unwrap()
            );
        }
    }

    #[test]
    fn conjugate_vectors_are_distinct_per_form(
        d in discriminants().prop_filter("extra units", |d| !d.has_extra_units()),
        n in 2u64..=12,
    ) {
        let indices = conjugate_indices(d, n).unwrap();
        let base = FracVector::base(n);
        let mut seen = BTreeSet::new();
        for idx in &indices {
            let beta = beta_mod_n(&idx.form, d, n).unwrap();
            let v = act_vector(&base, &idx.alpha.matrix().mul(&beta).unwrap()).unwrap();
            prop_assert!(seen.insert((idx.form, v)));
        }
        prop_assert!(indices[0].is_identity());
        prop_assert_eq!(theta_of_form(&indices[0].form, d), theta(d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn siegel_power_sign_and_translation(
        d in discriminants(),
        n in 2u64..=12,
        v in 0i64..12,
        w in 0i64..12,
        k in -3i64..3,
        form_pick in any::<prop::sample::Index>(),
    ) {
        let m = n as i64;
        let (v, w) = (v % m, w % m);
        prop_assume!(v != 0 || w != 0);
        let forms = reduced_forms(d);
        let tau = theta_of_form(&forms[form_pick.index(forms.len())], d);
        let p = Precision::new(128, 64);
        let base = siegel_power(v, w, &tau, n, PowerKind::Negative, p).unwrap();
        let neg = siegel_power(-v, -w, &tau, n, PowerKind::Negative, p).unwrap();
        let shifted = siegel_power(v + k * m, w - k * m, &tau, n, PowerKind::Negative, p).unwrap();
        prop_assert!(agreement_bits(&neg, &base) >= 124.0);
        prop_assert!(agreement_bits(&shifted, &base).is_infinite());
    }
}
