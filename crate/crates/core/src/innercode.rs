//! Hamming-metric inner code: Reed–Solomon with errors-and-erasures decoding.
//!
//! Codewords are evaluations of a message polynomial of degree `< k` at the
//! first `n` field elements in canonical index order. Decoding punctures the
//! erased coordinates and runs Gao's extended-Euclid decoder on the rest, so
//! any word within `2s + e < n - k + 1` of a codeword is corrected.

use crate::error::{Error, Result};
use crate::galois::{FieldSpec, Fq};
use crate::poly;

/// Reed–Solomon code `[n, k, n - k + 1]` over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerCode {
    field: FieldSpec,
    n: usize,
    k: usize,
    points: Vec<Fq>,
}

impl InnerCode {
    pub fn new(field: &FieldSpec, n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParameters(format!(
                "inner code needs 1 <= k <= n, got n={n} k={k}"
            )));
        }
        if n > field.order() as usize {
            return Err(Error::InvalidParameters(format!(
                "inner code length {n} exceeds field order {}",
                field.order()
            )));
        }
        Ok(InnerCode {
            field: field.clone(),
            n,
            k,
            points: field.elements().take(n).collect(),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance `n - k + 1`.
    pub fn d(&self) -> usize {
        self.n - self.k + 1
    }

    pub fn evaluation_points(&self) -> &[Fq] {
        &self.points
    }

    pub fn encode(&self, msg: &[Fq]) -> Result<Vec<Fq>> {
        if msg.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: msg.len(),
            });
        }
        Ok(self
            .points
            .iter()
            .map(|&x| poly::eval(&self.field, msg, x))
            .collect())
    }

    /// Message whose codeword is the polynomial `prod (x - a)` times `cofactor`,
    /// i.e. a codeword vanishing at every point in `zeros`. Returns `None`
    /// when the product does not fit in degree `< k`.
    pub fn message_vanishing_at(&self, zeros: &[usize], cofactor: &[Fq]) -> Option<Vec<Fq>> {
        let roots: Vec<Fq> = zeros.iter().map(|&i| self.points[i]).collect();
        let mut p = poly::mul(&self.field, &poly::from_roots(&self.field, &roots), cofactor);
        if p.len() > self.k {
            return None;
        }
        p.resize(self.k, Fq::ZERO);
        Some(p)
    }

    /// Errors-and-erasures decoding; `None` marks an erasure.
    ///
    /// Returns the message of the unique codeword within `2s + e < d` of `w`,
    /// or [`Error::DecodeFailure`] when no such codeword is found.
    pub fn decode(&self, w: &[Option<Fq>]) -> Result<Vec<Fq>> {
        if w.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: w.len(),
            });
        }
        let f = &self.field;
        let (xs, ys): (Vec<Fq>, Vec<Fq>) = self
            .points
            .iter()
            .zip(w)
            .filter_map(|(&x, y)| y.map(|y| (x, y)))
            .unzip();
        let erasures = self.n - xs.len();
        if erasures >= self.d() {
            return Err(Error::DecodeFailure("too many erasures"));
        }
        let known = xs.len();
        let g0 = poly::from_roots(f, &xs);
        let g1 = poly::interpolate(f, &xs, &ys, &g0);

        // partial extended Euclid on (g0, g1), tracking the g1 cofactor
        let (mut r0, mut r1) = (g0, g1);
        let (mut v0, mut v1) = (Vec::new(), vec![Fq::ONE]);
        while let Some(d) = poly::degree(&r1) {
            if 2 * d < known + self.k {
                break;
            }
            let (q, r) = poly::divrem(f, &r0, &r1);
            let v = poly::sub(f, &v0, &poly::mul(f, &q, &v1));
            r0 = std::mem::replace(&mut r1, r);
            v0 = std::mem::replace(&mut v1, v);
        }
        let (mut msg, rem) = poly::divrem(f, &r1, &v1);
        if poly::degree(&rem).is_some() || msg.len() > self.k {
            return Err(Error::DecodeFailure("no codeword within the decoding radius"));
        }
        msg.resize(self.k, Fq::ZERO);

        let codeword = self.encode(&msg)?;
        let substitutions = codeword
            .iter()
            .zip(w)
            .filter(|(c, y)| y.is_some_and(|y| y != **c))
            .count();
        if 2 * substitutions + erasures >= self.d() {
            return Err(Error::DecodeFailure("no codeword within the decoding radius"));
        }
        Ok(msg)
    }

    /// Decoding with no erasures.
    pub fn decode_full(&self, w: &[Fq]) -> Result<Vec<Fq>> {
        let w: Vec<Option<Fq>> = w.iter().copied().map(Some).collect();
        self.decode(&w)
    }
}
