//! Fully linear indel code: the half-linear codeword is flattened into
//! `F_q^{2n}` and a `(0, 0)` delimiter is inserted after every `2 * ell`
//! symbols.
//!
//! Every zero run in a codeword has even length, and every window between
//! delimiters holds at most `ell` whole pairs. The decoder keeps only
//! windows of even length at most `2 * ell`, re-pairs them, and hands the
//! pairs to the half-linear decoder.

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::galois::Fq;
use crate::halflinear::{DecodeTrace, DecoderVariant, HalfLinearCode, PairSymbol};

/// `(x_1, y_1, ..., x_n, y_n)`.
pub fn flat(pairs: &[PairSymbol]) -> Vec<Fq> {
    pairs.iter().flat_map(|p| [p.a, p.b]).collect()
}

/// Inverse of [`flat`]; a trailing odd symbol is dropped.
pub fn unflat(v: &[Fq]) -> Vec<PairSymbol> {
    v.chunks_exact(2).map(|c| PairSymbol::new(c[0], c[1])).collect()
}

/// Inserts two zeros after every complete group of `2 * ell` symbols.
pub fn pad(v: &[Fq], ell: usize) -> Vec<Fq> {
    assert!(ell >= 1, "padding period must be positive");
    let group = 2 * ell;
    let mut out = Vec::with_capacity(v.len() + 2 * (v.len() / group));
    for chunk in v.chunks(group) {
        out.extend_from_slice(chunk);
        if chunk.len() == group {
            out.extend_from_slice(&[Fq::ZERO, Fq::ZERO]);
        }
    }
    out
}

/// A word split into maximal zero-free windows and the zero runs around them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segmentation {
    pub windows: Vec<Vec<Fq>>,
    /// Offset of each window in the segmented word.
    pub starts: Vec<usize>,
    /// `d_0, ..., d_t`: the zero run before each window, then the trailing run.
    pub delimiters: Vec<usize>,
}

impl Segmentation {
    /// Re-interleaves delimiters and windows.
    pub fn join(&self) -> Vec<Fq> {
        let mut out = vec![Fq::ZERO; self.delimiters[0]];
        for (w, &d) in self.windows.iter().zip(&self.delimiters[1..]) {
            out.extend_from_slice(w);
            out.extend(std::iter::repeat_n(Fq::ZERO, d));
        }
        out
    }
}

pub fn segment(y: &[Fq]) -> Segmentation {
    let mut windows = Vec::new();
    let mut starts = Vec::new();
    let mut delimiters = Vec::new();
    let mut run = 0;
    let mut i = 0;
    while i < y.len() {
        if y[i].is_zero() {
            run += 1;
            i += 1;
            continue;
        }
        delimiters.push(run);
        run = 0;
        let start = i;
        while i < y.len() && !y[i].is_zero() {
            i += 1;
        }
        starts.push(start);
        windows.push(y[start..i].to_vec());
    }
    delimiters.push(run);
    Segmentation {
        windows,
        starts,
        delimiters,
    }
}

/// Smallest `ell` with `ell + 1 >= 1 / (2 sqrt(delta))`, for `0 < delta < 1/16`.
pub fn choose_ell(delta: Rational64) -> Result<usize> {
    if delta <= Rational64::zero() || delta >= Rational64::new(1, 16) {
        return Err(Error::InvalidParameters(format!(
            "delta must lie in (0, 1/16), got {delta}"
        )));
    }
    // ell + 1 >= 1/(2 sqrt(delta))  <=>  4 (ell + 1)^2 delta >= 1
    let mut l: i64 = 1;
    while Rational64::from_integer(4 * l * l) * delta < Rational64::one() {
        l += 1;
    }
    Ok(l as usize - 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearIndelCode {
    base: HalfLinearCode,
    ell: usize,
}

impl LinearIndelCode {
    /// Requires `ell >= 1` and `ell | n`.
    pub fn new(base: HalfLinearCode, ell: usize) -> Result<Self> {
        if ell == 0 || !base.n().is_multiple_of(ell) {
            return Err(Error::InvalidParameters(format!(
                "padding period {ell} must be positive and divide n = {}",
                base.n()
            )));
        }
        Ok(LinearIndelCode { base, ell })
    }

    pub fn base(&self) -> &HalfLinearCode {
        &self.base
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Codeword length `2n (ell + 1) / ell`.
    pub fn len(&self) -> usize {
        2 * self.base.n() * (self.ell + 1) / self.ell
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn k(&self) -> usize {
        self.base.k()
    }

    /// `k / N` in `F_q` symbols.
    pub fn rate(&self) -> Rational64 {
        Rational64::new(self.k() as i64, self.len() as i64)
    }

    pub fn embed(&self, pairs: &[PairSymbol]) -> Vec<Fq> {
        pad(&flat(pairs), self.ell)
    }

    pub fn encode(&self, msg: &[Fq]) -> Result<Vec<Fq>> {
        Ok(self.embed(&self.base.encode(msg)?))
    }

    /// Pairs recovered from the windows that survive the length filter.
    pub fn extract_pairs(&self, y: &[Fq]) -> Vec<PairSymbol> {
        segment(y)
            .windows
            .iter()
            .filter(|w| w.len() % 2 == 0 && w.len() <= 2 * self.ell)
            .flat_map(|w| unflat(w))
            .collect()
    }

    pub fn decode_traced(&self, y: &[Fq], variant: DecoderVariant) -> DecodeTrace {
        self.base.decode_traced(&self.extract_pairs(y), variant)
    }

    pub fn decode(&self, y: &[Fq]) -> Result<Vec<Fq>> {
        self.decode_traced(y, DecoderVariant::Improved).result
    }
}
