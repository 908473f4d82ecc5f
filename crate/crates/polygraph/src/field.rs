//! Arithmetic in the finite fields GF(p^n).
//!
//! Elements are dense integer indices in `[0, q)`: the index, written in base
//! `p`, is the coefficient vector of the element over GF(p) (least significant
//! digit = constant term), so index 0 is the zero element and index 1 the
//! multiplicative identity. Multiplication and inversion go through
//! precomputed log/antilog tables, which keeps the geometry enumeration loops
//! cheap for every order this crate needs (q ≤ 16 384).

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_FIELD_ORDER: u64 = 16_384;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} out of supported range 2..={MAX_FIELD_ORDER}")]
    UnsupportedOrder(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element index {index} out of range for GF({q})")]
    ElementOutOfRange { index: u32, q: u32 },
}

/// An element of GF(q), stored as its dense index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which binary operation `arith` performs; mirrors the CLI debug tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// A fully constructed field GF(p^n) = GF(q).
///
/// Immutable after construction; all operations are pure and the struct is
/// safe to share across threads.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: u32,
    /// Monic modulus, coefficients low-to-high, length n+1. For n = 1 this is
    /// the polynomial x and is never consulted by the arithmetic.
    modulus: Vec<u32>,
    /// exp[i] = g^i for a fixed generator g, i in [0, q-1).
    exp: Vec<u32>,
    /// log[a] defined for a in [1, q); log[exp[i]] = i.
    log: Vec<u32>,
}

impl FieldSpec {
    /// Builds GF(q) for a prime power q.
    ///
    /// The modulus is the lexicographically first monic irreducible polynomial
    /// of degree n over GF(p) (candidates ordered by their base-p integer
    /// encoding), so construction is deterministic across runs and platforms.
    pub fn new(q: u64) -> Result<FieldSpec, FieldError> {
        if !(2..=MAX_FIELD_ORDER).contains(&q) {
            if q < 2 {
                return Err(FieldError::NotPrimePower(q));
            }
            return Err(FieldError::UnsupportedOrder(q));
        }
        let (p, n) = factor_prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        let q = q as u32;
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            first_irreducible(p, n)
        };
        debug_assert!(n == 1 || is_irreducible(&modulus, p));

        let mut spec = FieldSpec {
            p,
            n,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        spec.build_tables();
        Ok(spec)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement, FieldError> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(FieldError::ElementOutOfRange { index, q: self.q })
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.n == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        self.digitwise(a, b, |x, y, p| (x + y) % p)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.n == 1 {
            return FieldElement((a.0 + self.p - b.0) % self.p);
        }
        self.digitwise(a, b, |x, y, p| (x + p - y) % p)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.sub(FieldElement::ZERO, a)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let m = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[(s % m) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let m = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((m - l) % m) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.is_zero() {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let m = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % m)) % m) as usize])
    }

    /// Dispatch used by the CLI table printer.
    pub fn arith(&self, kind: ArithKind, a: FieldElement, b: FieldElement) -> FieldElement {
        match kind {
            ArithKind::Add => self.add(a, b),
            ArithKind::Sub => self.sub(a, b),
            ArithKind::Mul => self.mul(a, b),
        }
    }

    #[inline]
    fn digitwise(&self, a: FieldElement, b: FieldElement, f: impl Fn(u32, u32, u32) -> u32) -> FieldElement {
        let (p, mut x, mut y) = (self.p, a.0, b.0);
        let mut out = 0;
        let mut scale = 1;
        while x > 0 || y > 0 {
            out += f(x % p, y % p, p) * scale;
            scale *= p;
            x /= p;
            y /= p;
        }
        FieldElement(out)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        // Multiplication by raw polynomial arithmetic, used only while the
        // tables are being seeded.
        let poly_mul = |a: u32, b: u32| -> u32 {
            let av = index_to_poly(a, self.p, self.n);
            let bv = index_to_poly(b, self.p, self.n);
            let prod = poly_mod(&poly_mul_raw(&av, &bv, self.p), &self.modulus, self.p);
            poly_to_index(&prod, self.p)
        };
        let factors = prime_factors((self.q - 1) as u64);
        let pow = |mut base: u32, mut e: u64| -> u32 {
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mul(acc, base);
                }
                base = poly_mul(base, base);
                e >>= 1;
            }
            acc
        };
        // Smallest generator of the multiplicative group.
        let generator = (2..self.q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&f| pow(g, ((self.q - 1) as u64) / f) != 1)
            })
            .unwrap_or(1); // q = 2: the group is trivial and 1 generates it

        self.exp = vec![0; q - 1];
        self.log = vec![0; q];
        let mut acc = 1u32;
        for i in 0..(q - 1) {
            self.exp[i] = acc;
            self.log[acc as usize] = i as u32;
            acc = poly_mul(acc, generator);
        }
        debug_assert_eq!(acc, 1, "generator order must be q-1");
    }
}

/// Decomposes q as p^n with p prime, if possible.
fn factor_prime_power(q: u64) -> Option<(u32, u32)> {
    let mut p = 0u64;
    let mut m = q;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            p = d;
            while m.is_multiple_of(d) {
                m /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        // q itself is prime
        return Some((q as u32, 1));
    }
    if m != 1 {
        return None; // a second prime factor survived
    }
    let mut n = 0u32;
    let mut t = q;
    while t > 1 {
        t /= p;
        n += 1;
    }
    Some((p as u32, n))
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn index_to_poly(mut idx: u32, p: u32, n: u32) -> Vec<u32> {
    let mut v = vec![0; n as usize];
    let mut i = 0;
    while idx > 0 {
        v[i] = idx % p;
        idx /= p;
        i += 1;
    }
    v
}

fn poly_to_index(v: &[u32], p: u32) -> u32 {
    let mut out = 0;
    for &c in v.iter().rev() {
        out = out * p + c;
    }
    out
}

fn poly_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul_raw(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a modulo the monic polynomial m, over GF(p).
fn poly_mod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1, "modulus must be monic");
    while r.len() > dm {
        let lead = *r.last().unwrap(); // nonzero after trim
        let shift = r.len() - 1 - dm;
        for i in 0..=dm {
            r[shift + i] = (r[shift + i] + p - (lead * m[i]) % p) % p;
        }
        // the top coefficient cancels exactly because m is monic
        poly_trim(&mut r);
    }
    r
}

/// Exhaustive irreducibility test: no monic divisor of degree 1..=deg/2.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    if m[0] == 0 {
        return false; // divisible by x
    }
    for d in 1..=(deg / 2) {
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let mut div = index_to_poly_u64(t, p, d as u32);
            div.push(1); // monic of degree d
            if poly_mod(m, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn index_to_poly_u64(mut idx: u64, p: u32, n: u32) -> Vec<u32> {
    let mut v = vec![0; n as usize];
    let mut i = 0;
    while idx > 0 {
        v[i] = (idx % p as u64) as u32;
        idx /= p as u64;
        i += 1;
    }
    v
}

/// Lexicographically first monic irreducible of degree n over GF(p), ordering
/// candidates x^n + c by the base-p integer encoding of c.
fn first_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    for t in 0..count {
        let mut cand = index_to_poly_u64(t, p, n);
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

/// Convenience constructor: build GF(q), rejecting non prime powers.
pub fn make_field(q: u64) -> Result<FieldSpec, FieldError> {
    FieldSpec::new(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent multiplication oracle: raw polynomial product reduced by
    /// the modulus, bypassing the log/antilog tables entirely.
    fn oracle_mul(spec: &FieldSpec, a: u32, b: u32) -> u32 {
        let av = index_to_poly(a, spec.characteristic(), spec.degree());
        let bv = index_to_poly(b, spec.characteristic(), spec.degree());
        let prod = poly_mod(
            &poly_mul_raw(&av, &bv, spec.characteristic()),
            spec.modulus(),
            spec.characteristic(),
        );
        poly_to_index(&prod, spec.characteristic())
    }

    #[test]
    fn make_field_prime() {
        let f = make_field(5).unwrap();
        assert_eq!(f.characteristic(), 5);
        assert_eq!(f.degree(), 1);
        assert_eq!(f.order(), 5);
    }

    #[test]
    fn make_field_gf9_modulus_has_no_root() {
        let f = make_field(9).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (3, 2));
        // Exhaustive root test of the chosen quadratic over GF(3).
        let m = f.modulus();
        for x in 0..3u32 {
            let val = (m[0] + m[1] * x + m[2] * x * x) % 3;
            assert_ne!(val, 0, "modulus has root {x}");
        }
    }

    #[test]
    fn make_field_rejects_non_prime_powers() {
        assert_eq!(make_field(12).unwrap_err(), FieldError::NotPrimePower(12));
        assert_eq!(make_field(1).unwrap_err(), FieldError::NotPrimePower(1));
        assert_eq!(make_field(0).unwrap_err(), FieldError::NotPrimePower(0));
        assert_eq!(make_field(6).unwrap_err(), FieldError::NotPrimePower(6));
        assert!(matches!(
            make_field(20_000).unwrap_err(),
            FieldError::UnsupportedOrder(_)
        ));
    }

    #[test]
    fn frozen_moduli_for_core_orders() {
        // Lexicographically-first moduli, frozen so graph construction stays
        // byte-identical across releases.
        let cases: [(u64, &[u32]); 5] = [
            (4, &[1, 1, 1]),       // x^2 + x + 1
            (8, &[1, 1, 0, 1]),    // x^3 + x + 1
            (9, &[1, 0, 1]),       // x^2 + 1
            (16, &[1, 1, 0, 0, 1]),// x^4 + x + 1
            (27, &[1, 2, 0, 1]),   // x^3 + 2x + 1
        ];
        for (q, want) in cases {
            let f = make_field(q).unwrap();
            assert_eq!(f.modulus(), want, "modulus for q={q}");
        }
    }

    #[test]
    fn gf5_small_values() {
        let f = make_field(5).unwrap();
        let e = |i| FieldElement(i);
        assert_eq!(f.mul(e(2), e(3)), e(1));
        assert_eq!(f.inv(e(2)).unwrap(), e(3));
        assert_eq!(f.inv(e(1)).unwrap(), e(1));
        assert_eq!(f.add(e(3), e(0)), e(3));
        assert_eq!(f.inv(e(0)).unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn gf4_multiplication_matches_polynomial_oracle() {
        let f = make_field(4).unwrap();
        // x * x = x + 1 under x^2 + x + 1: indices 2 * 2 = 3.
        assert_eq!(f.mul(FieldElement(2), FieldElement(2)), FieldElement(3));
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(
                    f.mul(FieldElement(a), FieldElement(b)).0,
                    oracle_mul(&f, a, b),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn tables_match_polynomial_oracle_all_small_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = make_field(q).unwrap();
            for a in 0..f.order() {
                for b in 0..f.order() {
                    assert_eq!(
                        f.mul(FieldElement(a), FieldElement(b)).0,
                        oracle_mul(&f, a, b),
                        "q={q} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = make_field(q).unwrap();
            let els: Vec<FieldElement> = f.elements().collect();
            assert_eq!(els.len(), q as usize);
            for &a in &els {
                assert_eq!(f.add(a, FieldElement::ZERO), a);
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for q in [4u64, 8, 9, 16] {
            let f = make_field(q).unwrap();
            let p = f.characteristic() as u64;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(
                        f.pow(f.add(a, b), p),
                        f.add(f.pow(a, p), f.pow(b, p)),
                        "q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn nonzero_elements_have_order_dividing_q_minus_1() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = make_field(q).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, q - 1), FieldElement::ONE, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn gf9_inverses_exhaustive() {
        let f = make_field(9).unwrap();
        for a in f.elements().skip(1) {
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), FieldElement::ONE);
        }
    }

    #[test]
    fn element_enumeration_is_dense_and_distinct() {
        for q in [2u64, 9, 13] {
            let f = make_field(q).unwrap();
            let els: Vec<u32> = f.elements().map(|e| e.0).collect();
            assert_eq!(els.len(), q as usize);
            let expected: Vec<u32> = (0..q as u32).collect();
            assert_eq!(els, expected);
        }
        assert_eq!(
            make_field(2).unwrap().elements().collect::<Vec<_>>(),
            vec![FieldElement(0), FieldElement(1)]
        );
    }

    #[test]
    fn large_table_order_sanity() {
        // Largest geometry order used by the constructions plus a bigger one
        // to exercise the table path.
        for q in [13u64, 128, 243] {
            let f = make_field(q).unwrap();
            let a = FieldElement(f.order() - 1);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        }
    }
}
