//! Dense univariate polynomials over a `FieldSpec`, lowest degree first.

use crate::galois::{FieldSpec, Fq};

pub(crate) fn trim(p: &mut Vec<Fq>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub(crate) fn degree(p: &[Fq]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn eval(f: &FieldSpec, p: &[Fq], x: Fq) -> Fq {
    p.iter().rev().fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

pub(crate) fn sub(f: &FieldSpec, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let mut out = vec![Fq::ZERO; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(Fq::ZERO);
        let y = b.get(i).copied().unwrap_or(Fq::ZERO);
        *o = f.sub(x, y);
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(f: &FieldSpec, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fq::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(f: &FieldSpec, a: &[Fq], b: &[Fq]) -> (Vec<Fq>, Vec<Fq>) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Fq::ZERO; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        q[shift] = factor;
        for (i, &c) in b.iter().enumerate().take(db + 1) {
            r[i + shift] = f.sub(r[i + shift], f.mul(factor, c));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// `prod (x - a)` over the given roots.
pub(crate) fn from_roots(f: &FieldSpec, roots: &[Fq]) -> Vec<Fq> {
    let mut out = vec![Fq::ONE];
    for &a in roots {
        let mut next = vec![Fq::ZERO; out.len() + 1];
        let na = f.neg(a);
        for (i, &c) in out.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.add(next[i], f.mul(c, na));
        }
        out = next;
    }
    out
}

/// Lagrange interpolation through distinct points, given the vanishing
/// polynomial `g0 = prod (x - x_i)` of those points.
pub(crate) fn interpolate(f: &FieldSpec, xs: &[Fq], ys: &[Fq], g0: &[Fq]) -> Vec<Fq> {
    let n = xs.len();
    let mut out = vec![Fq::ZERO; n];
    // formal derivative of g0 gives prod_{j != i} (x_i - x_j)
    let deriv: Vec<Fq> = g0
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| {
            let k = Fq((i as u32) % f.p());
            f.mul(c, k)
        })
        .collect();
    for i in 0..n {
        if ys[i].is_zero() {
            continue;
        }
        let w = f
            .div(ys[i], eval(f, &deriv, xs[i]))
            .expect("distinct interpolation points");
        // synthetic division of g0 by (x - x_i)
        let mut carry = Fq::ZERO;
        let mut quot = vec![Fq::ZERO; n];
        for k in (1..=n).rev() {
            carry = f.add(f.mul(carry, xs[i]), g0[k]);
            quot[k - 1] = carry;
        }
        for (o, &c) in out.iter_mut().zip(&quot) {
            *o = f.add(*o, f.mul(w, c));
        }
    }
    trim(&mut out);
    out
}
