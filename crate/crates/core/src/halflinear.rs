//! Half-linear code over pair symbols: each inner-code symbol `c_i` travels
//! with the masked sync symbol `s_i * c_i`.
//!
//! The code is closed under addition and `F_q` scalars but carries two
//! `F_q` coordinates per position, so its rate in pair symbols is half the
//! inner rate.

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::galois::{FieldSpec, Fq};
use crate::innercode::InnerCode;
use crate::matcher::{match_sync, ErasureWord, MatchReport};
use crate::syncseq::SyncSequence;

/// An element of `F_q x F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PairSymbol {
    pub a: Fq,
    pub b: Fq,
}

impl PairSymbol {
    pub const ZERO: PairSymbol = PairSymbol {
        a: Fq::ZERO,
        b: Fq::ZERO,
    };

    pub fn new(a: Fq, b: Fq) -> Self {
        PairSymbol { a, b }
    }
}

impl fmt::Display for PairSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.a, self.b)
    }
}

/// How `?` entries reach the inner decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderVariant {
    /// `?` becomes zero and the inner decoder sees a full word.
    Improved,
    /// `?` is passed on as an erasure.
    Baseline,
}

impl fmt::Display for DecoderVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoderVariant::Improved => "improved",
            DecoderVariant::Baseline => "baseline",
        })
    }
}

impl std::str::FromStr for DecoderVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "improved" => Ok(DecoderVariant::Improved),
            "baseline" => Ok(DecoderVariant::Baseline),
            _ => Err(Error::Parse(format!("unknown decoder variant {s:?}"))),
        }
    }
}

/// Everything the decoder saw on the way to its answer.
#[derive(Debug, Clone)]
pub struct DecodeTrace {
    /// Extracted `(c', s')` pairs handed to the matcher.
    pub extracted: Vec<(Fq, Fq)>,
    pub word: ErasureWord,
    pub report: MatchReport,
    pub result: Result<Vec<Fq>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalfLinearCode {
    inner: InnerCode,
    sync: SyncSequence,
}

impl HalfLinearCode {
    pub fn new(inner: InnerCode, sync: SyncSequence) -> Result<Self> {
        if sync.len() != inner.n() {
            return Err(Error::InvalidParameters(format!(
                "sync length {} differs from inner length {}",
                sync.len(),
                inner.n()
            )));
        }
        let field = inner.field();
        if sync.symbols().iter().any(|&s| s.is_zero() || !field.contains(s)) {
            return Err(Error::InvalidParameters("sync symbols must be nonzero field elements".into()));
        }
        Ok(HalfLinearCode { inner, sync })
    }

    pub fn inner(&self) -> &InnerCode {
        &self.inner
    }

    pub fn sync(&self) -> &SyncSequence {
        &self.sync
    }

    pub fn field(&self) -> &FieldSpec {
        self.inner.field()
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn k(&self) -> usize {
        self.inner.k()
    }

    /// Rate measured in pair symbols, `k / 2n`.
    pub fn rate(&self) -> Rational64 {
        Rational64::new(self.k() as i64, 2 * self.n() as i64)
    }

    pub fn mask(&self, c: &[Fq]) -> Vec<PairSymbol> {
        let f = self.field();
        c.iter()
            .zip(self.sync.symbols())
            .map(|(&c, &s)| PairSymbol::new(c, f.mul(s, c)))
            .collect()
    }

    pub fn encode(&self, msg: &[Fq]) -> Result<Vec<PairSymbol>> {
        Ok(self.mask(&self.inner.encode(msg)?))
    }

    /// True when `w` is the mask of some inner codeword.
    pub fn is_codeword(&self, w: &[PairSymbol]) -> bool {
        if w.len() != self.n() {
            return false;
        }
        let c: Vec<Fq> = w.iter().map(|p| p.a).collect();
        if self.mask(&c) != w {
            return false;
        }
        match self.inner.decode_full(&c) {
            Ok(msg) => self.inner.encode(&msg).is_ok_and(|cw| cw == c),
            Err(_) => false,
        }
    }

    /// Drops symbols with a zero coordinate and unmasks the rest into
    /// `(c', s') = (a, b / a)`.
    pub fn extract(&self, received: &[PairSymbol]) -> Vec<(Fq, Fq)> {
        let f = self.field();
        received
            .iter()
            .filter(|p| !p.a.is_zero() && !p.b.is_zero())
            .map(|p| (p.a, f.div(p.b, p.a).expect("nonzero code coordinate")))
            .collect()
    }

    pub fn decode_traced(&self, received: &[PairSymbol], variant: DecoderVariant) -> DecodeTrace {
        let extracted = self.extract(received);
        let (word, report) = match_sync(self.sync.symbols(), &extracted, self.sync.tau());
        let result = match variant {
            DecoderVariant::Improved => self.inner.decode_full(&word.zero_filled()),
            DecoderVariant::Baseline => self.inner.decode(&word.0),
        };
        DecodeTrace {
            extracted,
            word,
            report,
            result,
        }
    }

    pub fn decode(&self, received: &[PairSymbol], variant: DecoderVariant) -> Result<Vec<Fq>> {
        self.decode_traced(received, variant).result
    }
}
