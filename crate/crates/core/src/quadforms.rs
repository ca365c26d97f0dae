//! Fundamental discriminants, reduced binary quadratic forms and the CM
//! points attached to them.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmath::{is_squarefree, QuadIrrational};

/// Largest `|d|` accepted; keeps every intermediate of the enumeration in `i64`.
pub const MAX_ABS_DISCRIMINANT: i64 = 1 << 53;

/// The discriminant of an imaginary quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        validate_discriminant(d)
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// `d = 0 (mod 4)`.
    pub fn is_even(self) -> bool {
        self.0.rem_euclid(4) == 0
    }

    /// Q(sqrt(-1)) or Q(sqrt(-3)).
    pub fn has_extra_units(self) -> bool {
        self.0 == -3 || self.0 == -4
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn validate_discriminant(d: i64) -> Result<Discriminant> {
    if d >= 0 {
        return Err(Error::NotNegative(d));
    }
    if d < -MAX_ABS_DISCRIMINANT {
        return Err(Error::OutOfRange(d));
    }
    match d.rem_euclid(4) {
        1 => {
            if !is_squarefree(d.unsigned_abs()) {
                return Err(Error::NotFundamental(d));
            }
        }
        0 => {
            let m = d / 4;
            if !matches!(m.rem_euclid(4), 2 | 3) || !is_squarefree(m.unsigned_abs()) {
                return Err(Error::NotFundamental(d));
            }
        }
        _ => return Err(Error::NotCongruent(d)),
    }
    Ok(Discriminant(d))
}

/// A primitive positive definite form `aX^2 + bXY + cY^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    /// Checks the discriminant, primitivity and the reduction inequalities.
    pub fn new_reduced(a: i64, b: i64, c: i64, d: Discriminant) -> Result<Self> {
        let form = QuadForm { a, b, c };
        if form.discriminant() != d.value() as i128 {
            return Err(Error::InvalidForm(format!("{form} does not have discriminant {d}")));
        }
        if a <= 0 || a.gcd(&b).gcd(&c) != 1 {
            return Err(Error::InvalidForm(format!("{form} is not primitive positive definite")));
        }
        if !form.is_reduced() {
            return Err(Error::InvalidForm(format!("{form} is not reduced")));
        }
        Ok(form)
    }

    pub fn discriminant(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    /// `-a < b <= a < c` or `0 <= b <= a = c`.
    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        (-a < b && b <= a && a < c) || (0 <= b && b <= a && a == c)
    }

    pub fn is_principal(&self) -> bool {
        self.a == 1
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// The reduced forms of discriminant `d`: principal form first, then
/// ascending `(a, b, c)`. The length is the class number.
pub fn reduced_forms(d: Discriminant) -> Vec<QuadForm> {
    let d = d.value();
    let abs = -d;
    let mut forms = Vec::new();
    // a <= sqrt(|d|/3)
    let mut a = 1i64;
    while 3 * a * a <= abs {
        for b in (-a + 1)..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let form = QuadForm { a, b, c };
            if form.is_reduced() && a.gcd(&b).gcd(&c) == 1 {
                forms.push(form);
            }
        }
        a += 1;
    }
    // a is nondecreasing in the loop and a = 1 admits exactly one reduced form,
    // so sorting puts the principal form first.
    forms.sort();
    forms
}

pub fn class_number(d: Discriminant) -> usize {
    reduced_forms(d).len()
}

/// The principal form `X^2 - (d/4)Y^2` or `X^2 + XY + ((1-d)/4)Y^2`.
pub fn principal_form(d: Discriminant) -> QuadForm {
    let v = d.value();
    if d.is_even() {
        QuadForm { a: 1, b: 0, c: -v / 4 }
    } else {
        QuadForm { a: 1, b: 1, c: (1 - v) / 4 }
    }
}

/// The generator of the ring of integers: `sqrt(d)/2` or `(-1 + sqrt(d))/2`.
pub fn theta(d: Discriminant) -> QuadIrrational {
    let p = if d.is_even() { 0 } else { -1 };
    QuadIrrational::new(p, 2, d.value()).expect("fundamental discriminants are valid radicands")
}

/// The CM point `(-b + sqrt(d)) / 2a` of a form.
pub fn theta_of_form(form: &QuadForm, d: Discriminant) -> QuadIrrational {
    QuadIrrational::new(-form.b, 2 * form.a, d.value())
        .expect("a > 0 for positive definite forms")
}

/// Coefficients of `X^2 + BX + C`, the minimal polynomial of `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaPoly {
    pub b: i64,
    pub c: i64,
}

pub fn theta_min_poly(d: Discriminant) -> ThetaPoly {
    let v = d.value();
    if d.is_even() {
        ThetaPoly { b: 0, c: -v / 4 }
    } else {
        ThetaPoly { b: 1, c: (1 - v) / 4 }
    }
}

/// All fundamental discriminants in `[lo, hi]` with `hi < 0`.
pub fn fundamental_discriminants(lo: i64, hi: i64) -> Vec<Discriminant> {
    (lo..=hi).filter_map(|d| validate_discriminant(d).ok()).collect()
}
