//! Explicit reciprocity data: the local matrices `beta_p` of a reduced form,
//! their CRT lift mod `N`, the group `W_(N,theta) / {±1}`, and the right
//! action of matrices on fractional row vectors.
//!
//! Everything here lives in `GL_2(Z/NZ) / {±1}`. Representatives are fixed
//! by a single rule: of `M` and `-M` (entries as least nonnegative residues)
//! keep the lexicographically smaller entry tuple `(m11, m12, m21, m22)`.
//! Vectors `(v, w)` are canonicalized the same way against `(-v, -w)`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmath::prime_power_factors;
use crate::quadforms::{reduced_forms, theta_min_poly, Discriminant, QuadForm};

pub fn validate_level(n: u64) -> Result<u64> {
    if n < 2 {
        Err(Error::InvalidLevel(n))
    } else {
        Ok(n)
    }
}

fn reduce(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn neg_mod(a: u64, n: u64) -> u64 {
    (n - a % n) % n
}

/// A 2x2 matrix over `Z/NZ`, entries stored as least nonnegative residues
/// in row-major order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatrixModN {
    entries: [u64; 4],
    modulus: u64,
}

impl MatrixModN {
    /// Reduces integer entries mod `n`. Fails unless the determinant is a unit.
    pub fn new(entries: [i64; 4], n: u64) -> Result<Self> {
        let m = Self::raw(entries, n);
        if m.is_invertible() {
            Ok(m)
        } else {
            Err(Error::NotInvertible(n))
        }
    }

    fn raw(entries: [i64; 4], n: u64) -> Self {
        MatrixModN {
            entries: entries.map(|x| reduce(x, n)),
            modulus: n,
        }
    }

    pub fn identity(n: u64) -> Self {
        Self::raw([1, 0, 0, 1], n)
    }

    pub fn entries(&self) -> [u64; 4] {
        self.entries
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn det(&self) -> u64 {
        let [a, b, c, d] = self.entries;
        let n = self.modulus;
        (mul_mod(a, d, n) + neg_mod(mul_mod(b, c, n), n)) % n
    }

    pub fn is_invertible(&self) -> bool {
        self.det().gcd(&self.modulus) == 1
    }

    pub fn neg(&self) -> Self {
        MatrixModN {
            entries: self.entries.map(|x| neg_mod(x, self.modulus)),
            modulus: self.modulus,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        let n = self.modulus;
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = other.entries;
        let dot = |x: u64, y: u64, z: u64, w: u64| (mul_mod(x, y, n) + mul_mod(z, w, n)) % n;
        Ok(MatrixModN {
            entries: [dot(a, e, b, g), dot(a, f, b, h), dot(c, e, d, g), dot(c, f, d, h)],
            modulus: n,
        })
    }

    /// The representative of `{M, -M}` with the smaller entry tuple.
    pub fn canonical(&self) -> Self {
        let neg = self.neg();
        if neg.entries < self.entries {
            neg
        } else {
            *self
        }
    }

    /// Equality in `GL_2(Z/NZ) / {±1}`.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.canonical().entries == other.canonical().entries
    }

    pub fn is_identity_up_to_sign(&self) -> bool {
        self.eq_up_to_sign(&Self::identity(self.modulus))
    }
}

impl fmt::Display for MatrixModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "({a},{b};{c},{d}) mod {}", self.modulus)
    }
}

/// An element `(t - Bs, -Cs; s, t)` of `W_(N,theta) / {±1}`.
///
/// `t` and `s` are read off the canonical representative, so they identify
/// the class uniquely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WElement {
    t: u64,
    s: u64,
    matrix: MatrixModN,
}

impl WElement {
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn matrix(&self) -> &MatrixModN {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity_up_to_sign()
    }
}

/// The row vector `(v/N, w/N)` modulo `Z^2` and modulo `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FracVector {
    v: u64,
    w: u64,
    modulus: u64,
}

impl FracVector {
    pub fn new(v: i64, w: i64, n: u64) -> Result<Self> {
        let (rv, rw) = (reduce(v, n), reduce(w, n));
        if rv == 0 && rw == 0 {
            return Err(Error::ZeroVector(v, w, n));
        }
        Ok(Self::canonical(rv, rw, n))
    }

    fn canonical(v: u64, w: u64, n: u64) -> Self {
        let neg = (neg_mod(v, n), neg_mod(w, n));
        let (v, w) = if neg < (v, w) { neg } else { (v, w) };
        FracVector { v, w, modulus: n }
    }

    /// `(0, 1/N)`, the vector of the base value.
    pub fn base(n: u64) -> Self {
        Self::canonical(0, 1, n)
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn w(&self) -> u64 {
        self.w
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl fmt::Display for FracVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{}, {}/{})", self.v, self.modulus, self.w, self.modulus)
    }
}

/// `(v, w) M` in canonical form.
pub fn act_vector(vec: &FracVector, m: &MatrixModN) -> Result<FracVector> {
    let n = vec.modulus;
    if m.modulus != n {
        return Err(Error::ModulusMismatch(n, m.modulus));
    }
    let [a, b, c, d] = m.entries;
    let v = (mul_mod(vec.v, a, n) + mul_mod(vec.w, c, n)) % n;
    let w = (mul_mod(vec.v, b, n) + mul_mod(vec.w, d, n)) % n;
    if v == 0 && w == 0 {
        return Err(Error::NotInvertible(n));
    }
    Ok(FracVector::canonical(v, w, n))
}

/// The local matrix `beta_p` of a reduced form, in row-major order.
///
/// The three cases are `p` not dividing `a`; `p | a` but not `c`; and
/// `p | a, p | c`. Their determinants are `a`, `c` and `a + b + c`.
pub fn beta_local(form: &QuadForm, d: Discriminant, p: u64) -> [i64; 4] {
    let QuadForm { a, b, c } = *form;
    let p = p as i64;
    let divides = |x: i64| x.rem_euclid(p) == 0;
    if d.is_even() {
        // b is even when d = 0 (mod 4).
        let h = b / 2;
        if !divides(a) {
            [a, h, 0, 1]
        } else if !divides(c) {
            [-h, -c, 1, 0]
        } else {
            [-a - h, -c - h, 1, -1]
        }
    } else {
        // b is odd when d = 1 (mod 4).
        let lo = (b - 1) / 2;
        let hi = (b + 1) / 2;
        if !divides(a) {
            [a, lo, 0, 1]
        } else if !divides(c) {
            [-hi, -c, 1, 0]
        } else {
            [-a - hi, -c - lo, 1, -1]
        }
    }
}

/// Solves `x = r_i (mod m_i)` for pairwise coprime moduli; returns `x mod prod m_i`.
pub fn crt_combine(residues: &[(i64, u64)]) -> u64 {
    let mut x: u128 = 0;
    let mut modulus: u128 = 1;
    for &(r, m) in residues {
        let r = reduce(r, m) as i128;
        let ext = (modulus as i128).extended_gcd(&(m as i128));
        debug_assert_eq!(ext.gcd, 1, "CRT moduli must be coprime");
        // x + modulus * k = r (mod m)  =>  k = (r - x) * modulus^-1 (mod m)
        let inv = ext.x.rem_euclid(m as i128);
        let k = ((r - x as i128).rem_euclid(m as i128) * inv).rem_euclid(m as i128);
        x += modulus * k as u128;
        modulus *= m as u128;
    }
    (x % modulus) as u64
}

/// `beta_Q mod N` lifted by CRT from the local matrices at each `p^e || N`,
/// in canonical form.
pub fn beta_mod_n(form: &QuadForm, d: Discriminant, n: u64) -> Result<MatrixModN> {
    let factors = prime_power_factors(validate_level(n)?);
    beta_mod_n_with_order(form, d, n, &factors)
}

/// As [`beta_mod_n`] but combining the prime powers in the given order.
pub fn beta_mod_n_with_order(
    form: &QuadForm,
    d: Discriminant,
    n: u64,
    factors: &[(u64, u64)],
) -> Result<MatrixModN> {
    let locals: Vec<([i64; 4], u64)> = factors
        .iter()
        .map(|&(p, pe)| (beta_local(form, d, p), pe))
        .collect();
    let mut entries = [0i64; 4];
    for (i, entry) in entries.iter_mut().enumerate() {
        let residues: Vec<(i64, u64)> = locals.iter().map(|(m, pe)| (m[i], *pe)).collect();
        *entry = crt_combine(&residues) as i64;
    }
    Ok(MatrixModN::new(entries, n)?.canonical())
}

fn reject_extra_units(d: Discriminant) -> Result<()> {
    if d.has_extra_units() {
        Err(Error::ExcludedField(d.value()))
    } else {
        Ok(())
    }
}

/// `W_(N,theta) / {±1}`: identity first, then ascending `(t, s)` of the
/// canonical representatives.
pub fn w_group(d: Discriminant, n: u64) -> Result<Vec<WElement>> {
    reject_extra_units(d)?;
    let n = validate_level(n)?;
    let poly = theta_min_poly(d);
    let (bb, cc) = (reduce(poly.b, n), reduce(poly.c, n));

    let mut classes = Vec::new();
    for t in 0..n {
        for s in 0..n {
            let m11 = (t + neg_mod(mul_mod(bb, s, n), n)) % n;
            let m12 = neg_mod(mul_mod(cc, s, n), n);
            let m = MatrixModN {
                entries: [m11, m12, s, t],
                modulus: n,
            };
            if !m.is_invertible() {
                continue;
            }
            let canon = m.canonical();
            if canon == m {
                classes.push(WElement {
                    t,
                    s,
                    matrix: canon,
                });
            }
        }
    }
    // Each class was pushed once, from the (t, s) that is already canonical.
    classes.sort_by_key(|w| (!w.is_identity(), w.t, w.s));
    Ok(classes)
}

/// One element of `W_(N,theta)/{±1} x C(d)`, indexing one conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConjugateIndex {
    pub alpha: WElement,
    pub form: QuadForm,
}

impl ConjugateIndex {
    pub fn is_identity(&self) -> bool {
        self.alpha.is_identity() && self.form.is_principal()
    }
}

/// The full index set, forms outermost. The first entry is the identity.
pub fn conjugate_indices(d: Discriminant, n: u64) -> Result<Vec<ConjugateIndex>> {
    let ws = w_group(d, n)?;
    Ok(reduced_forms(d)
        .into_iter()
        .flat_map(|form| ws.iter().map(move |&alpha| ConjugateIndex { alpha, form }))
        .collect())
}
