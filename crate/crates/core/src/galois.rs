//! Arithmetic in finite fields `F_q`, `q = p^m`.
//!
//! Elements are stored as their canonical index: the coefficient vector of
//! the residue polynomial packed base `p`, lowest degree first. For `m = 1`
//! the index is the residue itself.
//!
//! The default modulus for `(p, m)` is the smallest monic irreducible
//! polynomial of degree `m` over `F_p`, where candidates `x^m + r(x)` are
//! ordered by the canonical index of `r`. This gives `x` for prime fields and
//! `x^8 + x^4 + x^3 + x + 1` (the AES polynomial) for `F_256`.
//!
//! Multiplication goes through log/exp tables built once per field; addition
//! is digit-wise mod `p` (plain XOR when `p = 2`).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// A field element, identified by its canonical index in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients of the monic modulus, lowest degree first (length m + 1).
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in [0, 2(q-1)).
    exp: Vec<u32>,
    /// log[a] for a != 0; log[0] is unused.
    log: Vec<u32>,
}

/// Arithmetic context for `F_{p^m}`. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.t.p)
            .field("m", &self.t.m)
            .field("modulus", &self.t.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.modulus == other.t.modulus)
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: u32, m: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if m == 0 {
        return Err(Error::InvalidDegree(m));
    }
    let mut q: u64 = 1;
    for _ in 0..m {
        q *= p as u64;
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge { p, m });
        }
    }
    Ok(q as u32)
}

// --- polynomials over F_p, coefficient vectors lowest degree first ---

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn degree(v: &[u32]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is small and prime, so Fermat is fine here
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod_p(b[db], p) as u64;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            let sub = factor * bc as u64 % p as u64;
            r[i + shift] = ((r[i + shift] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&prod, modulus, p)
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn pack(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Exhaustive trial division by every monic polynomial of degree `1..=m/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = match degree(f) {
        Some(d) => d,
        None => return false,
    };
    if m == 0 {
        return false;
    }
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low as u32, p, d as u32);
            g.push(1);
            if degree(&poly_rem(f, &g, p)).is_none() {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for low in 0..count {
        let mut f = digits(low as u32, p, m);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldSpec {
    /// Field of order `p^m` with the default modulus.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        checked_order(p, m)?;
        let modulus = default_modulus(p, m);
        Self::build(p, m, modulus)
    }

    /// Field of order `p^m` with a caller-chosen monic modulus
    /// (coefficients lowest degree first, length `m + 1`).
    pub fn with_modulus(p: u32, m: u32, modulus: &[u32]) -> Result<Self> {
        checked_order(p, m)?;
        if modulus.len() != m as usize + 1
            || modulus[m as usize] != 1
            || modulus.iter().any(|&c| c >= p)
            || !is_irreducible(modulus, p)
        {
            return Err(Error::ReducibleModulus(m));
        }
        Self::build(p, m, modulus.to_vec())
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self> {
        let q = checked_order(p, m)?;
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        if q == 2 {
            exp[0] = 1;
            exp[1] = 1;
        } else {
            let factors = prime_factors(q - 1);
            let slow_pow = |g: &[u32], mut e: u32| {
                let mut r = vec![1u32];
                let mut b = g.to_vec();
                while e > 0 {
                    if e & 1 == 1 {
                        r = poly_mulmod(&r, &b, &modulus, p);
                    }
                    b = poly_mulmod(&b, &b, &modulus, p);
                    e >>= 1;
                }
                r
            };
            let is_one = |v: &[u32]| degree(v) == Some(0) && v[0] == 1;
            let gen = (2..q)
                .map(|c| digits(c, p, m))
                .find(|g| factors.iter().all(|&r| !is_one(&slow_pow(g, (q - 1) / r))))
                .expect("multiplicative group is cyclic");
            let mut cur = vec![1u32];
            for i in 0..n {
                let mut d = cur.clone();
                d.resize(m as usize, 0);
                let v = pack(&d, p);
                exp[i] = v;
                exp[i + n] = v;
                log[v as usize] = i as u32;
                cur = poly_mulmod(&cur, &gen, &modulus, p);
            }
        }
        Ok(FieldSpec {
            t: Arc::new(Tables {
                p,
                m,
                q,
                modulus,
                exp,
                log,
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn m(&self) -> u32 {
        self.t.m
    }

    /// Number of elements `q`.
    pub fn order(&self) -> u32 {
        self.t.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn contains(&self, a: Fq) -> bool {
        a.0 < self.t.q
    }

    /// Validates a canonical index.
    pub fn elem(&self, v: u64) -> Result<Fq> {
        if v < self.t.q as u64 {
            Ok(Fq(v as u32))
        } else {
            Err(Error::NotInField {
                value: v,
                order: self.t.q,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.t.q).map(Fq)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        debug_assert!(self.contains(a) && self.contains(b));
        let p = self.t.p;
        if p == 2 {
            return Fq(a.0 ^ b.0);
        }
        if self.t.m == 1 {
            return Fq((a.0 + b.0) % p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Fq(out)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.t.p;
        if p == 2 {
            return a;
        }
        if self.t.m == 1 {
            return Fq((p - a.0) % p);
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Fq(out)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        debug_assert!(self.contains(a) && self.contains(b));
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let t = &*self.t;
        Fq(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    /// Multiplication that rejects indices outside this field, e.g. elements
    /// that came from a different context.
    pub fn try_mul(&self, a: Fq, b: Fq) -> Result<Fq> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::NotInField {
                    value: x.0 as u64,
                    order: self.t.q,
                });
            }
        }
        Ok(self.mul(a, b))
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.t;
        let n = t.q - 1;
        Ok(Fq(t.exp[((n - t.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let t = &*self.t;
        let n = (t.q - 1) as u64;
        let l = t.log[a.0 as usize] as u64 * (e % n) % n;
        Fq(t.exp[l as usize])
    }

    /// Coefficient digits of an element, lowest degree first.
    pub fn to_digits(&self, a: Fq) -> Vec<u32> {
        digits(a.0, self.t.p, self.t.m)
    }

    pub fn from_digits(&self, d: &[u32]) -> Result<Fq> {
        if d.len() != self.t.m as usize || d.iter().any(|&c| c >= self.t.p) {
            return Err(Error::Parse(format!("bad digit vector {d:?}")));
        }
        Ok(Fq(pack(d, self.t.p)))
    }
}
