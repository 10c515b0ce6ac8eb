//! Self-matching synchronization sequences over `F_q^*`.
//!
//! A sequence `s` of length `n` is `tau`-self-matching when every pair of
//! adjacent windows `s[i, j)`, `s[j, k)` (1-based, `1 <= i < j < k <= n + 1`)
//! is far apart in indel distance: `D_L > (1 - tau)(k - i)`.
//!
//! Sequences are produced by seeded rejection sampling and then verified,
//! either over every triple or over all short triples plus a random sample.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::editdist::{lcs_prefix_profile, levenshtein};
use crate::error::{Error, Result};
use crate::galois::{FieldSpec, Fq};

/// Longest sequence accepted by exhaustive verification.
pub const MAX_EXHAUSTIVE_LEN: usize = 128;
/// Triples with `k - i` up to this span are always checked in sampled mode.
pub const SHORT_SPAN: usize = 16;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_ATTEMPTS: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationMode {
    Exhaustive,
    /// All triples with `k - i <= SHORT_SPAN` plus `count` uniformly drawn triples.
    Sampled { count: usize, seed: u64 },
}

impl VerificationMode {
    /// Exhaustive when allowed, otherwise the default sample.
    pub fn default_for(n: usize, seed: u64) -> Self {
        if n <= MAX_EXHAUSTIVE_LEN {
            VerificationMode::Exhaustive
        } else {
            VerificationMode::Sampled {
                count: DEFAULT_SAMPLES,
                seed,
            }
        }
    }
}

impl fmt::Display for VerificationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationMode::Exhaustive => write!(f, "exhaustive"),
            VerificationMode::Sampled { count, seed } => write!(f, "sampled:{count}:{seed}"),
        }
    }
}

impl std::str::FromStr for VerificationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "exhaustive" {
            return Ok(VerificationMode::Exhaustive);
        }
        let bad = || Error::Parse(format!("bad verification mode {s:?}"));
        let mut parts = s.split(':');
        match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("sampled"), Some(c), Some(seed), None) => Ok(VerificationMode::Sampled {
                count: c.parse().map_err(|_| bad())?,
                seed: seed.parse().map_err(|_| bad())?,
            }),
            (Some("sampled"), None, None, None) => Ok(VerificationMode::Sampled {
                count: DEFAULT_SAMPLES,
                seed: 0,
            }),
            _ => Err(bad()),
        }
    }
}

/// A triple `(i, j, k)`, 1-based, where the self-matching inequality fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Violation {
    pub fn span(&self) -> usize {
        self.k - self.i
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violation(Violation),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

#[inline]
fn violates(dist: usize, tau: f64, span: usize) -> bool {
    dist as f64 <= (1.0 - tau) * span as f64
}

fn check_triple(s: &[Fq], tau: f64, t: Violation) -> bool {
    let d = levenshtein(&s[t.i - 1..t.j - 1], &s[t.j - 1..t.k - 1]);
    violates(d, tau, t.span())
}

/// All triples with span at most `max_span`, lexicographic order.
fn short_triples(n: usize, max_span: usize) -> impl Iterator<Item = Violation> {
    (1..=n).flat_map(move |i| {
        (i + 1..=n).flat_map(move |j| {
            (j + 1..=(i + max_span).min(n + 1)).map(move |k| Violation { i, j, k })
        })
    })
}

fn first_short_violation(s: &[Fq], tau: f64, max_span: usize) -> Option<Violation> {
    short_triples(s.len(), max_span).find(|&t| check_triple(s, tau, t))
}

fn exhaustive(s: &[Fq], tau: f64) -> Verdict {
    let n = s.len();
    for i in 1..=n {
        for j in i + 1..=n {
            let left = &s[i - 1..j - 1];
            let profile = lcs_prefix_profile(left, &s[j - 1..]);
            for k in j + 1..=n + 1 {
                let right_len = k - j;
                let d = left.len() + right_len - 2 * profile[right_len];
                if violates(d, tau, k - i) {
                    return Verdict::Violation(Violation { i, j, k });
                }
            }
        }
    }
    Verdict::Ok
}

fn sampled(s: &[Fq], tau: f64, count: usize, seed: u64) -> Verdict {
    let n = s.len();
    let mut triples: Vec<Violation> = short_triples(n, SHORT_SPAN).collect();
    if n >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            let mut v = sample(&mut rng, n + 1, 3).into_vec();
            v.sort_unstable();
            triples.push(Violation {
                i: v[0] + 1,
                j: v[1] + 1,
                k: v[2] + 1,
            });
        }
    }
    triples.sort_unstable();
    triples.dedup();
    match triples.into_iter().find(|&t| check_triple(s, tau, t)) {
        Some(v) => Verdict::Violation(v),
        None => Verdict::Ok,
    }
}

/// Checks the self-matching inequality; on failure reports the first
/// violating triple (lexicographic) among those checked.
pub fn verify_self_matching(s: &[Fq], tau: f64, mode: VerificationMode) -> Result<Verdict> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::InvalidParameters(format!("tau must lie in (0, 1), got {tau}")));
    }
    match mode {
        VerificationMode::Exhaustive => {
            if s.len() > MAX_EXHAUSTIVE_LEN {
                return Err(Error::InvalidParameters(format!(
                    "exhaustive verification is limited to length {MAX_EXHAUSTIVE_LEN}, got {}",
                    s.len()
                )));
            }
            Ok(exhaustive(s, tau))
        }
        VerificationMode::Sampled { count, seed } => Ok(sampled(s, tau, count, seed)),
    }
}

/// A verified all-nonzero `tau`-self-matching sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SyncSequence {
    symbols: Vec<Fq>,
    tau: f64,
    mode: VerificationMode,
}

impl SyncSequence {
    /// Verifies `symbols` and wraps them.
    pub fn verified(symbols: Vec<Fq>, tau: f64, mode: VerificationMode) -> Result<Self> {
        if symbols.iter().any(|s| s.is_zero()) {
            return Err(Error::InvalidParameters("sync symbols must be nonzero".into()));
        }
        match verify_self_matching(&symbols, tau, mode)? {
            Verdict::Ok => Ok(SyncSequence { symbols, tau, mode }),
            Verdict::Violation(Violation { i, j, k }) => Err(Error::NotSelfMatching { tau, i, j, k }),
        }
    }

    /// Wraps nonzero `symbols` without checking the self-matching property.
    /// Decoding guarantees do not apply; meant for hand-built toy instances.
    pub fn unchecked(symbols: Vec<Fq>, tau: f64, mode: VerificationMode) -> Result<Self> {
        if symbols.iter().any(|s| s.is_zero()) {
            return Err(Error::InvalidParameters("sync symbols must be nonzero".into()));
        }
        Ok(SyncSequence { symbols, tau, mode })
    }

    pub fn symbols(&self) -> &[Fq] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn mode(&self) -> VerificationMode {
        self.mode
    }

    /// Header line `n tau mode`, then the symbols on one line.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        format!("{} {} {}\n{}\n", self.len(), self.tau, self.mode, body.join(" "))
    }

    /// Parses [`SyncSequence::to_text`] output and re-verifies it.
    pub fn from_text(field: &FieldSpec, text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty sync file".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(Error::Parse(format!("bad sync header {header:?}")));
        }
        let n: usize = h[0].parse().map_err(|_| Error::Parse(format!("bad length {:?}", h[0])))?;
        let tau: f64 = h[1].parse().map_err(|_| Error::Parse(format!("bad tau {:?}", h[1])))?;
        let mode: VerificationMode = h[2].parse()?;
        let symbols = lines
            .flat_map(str::split_whitespace)
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad symbol {t:?}")))
                    .and_then(|v| field.elem(v))
            })
            .collect::<Result<Vec<_>>>()?;
        if symbols.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: symbols.len(),
            });
        }
        Self::verified(symbols, tau, mode)
    }
}

/// Seeded rejection sampling: draw uniform sequences over `F_q^*` until one
/// verifies in `mode`, giving up after `max_attempts`.
pub fn gen_self_matching(
    field: &FieldSpec,
    n: usize,
    tau: f64,
    mode: VerificationMode,
    seed: u64,
    max_attempts: u32,
) -> Result<SyncSequence> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::InvalidParameters(format!("tau must lie in (0, 1), got {tau}")));
    }
    if mode == VerificationMode::Exhaustive && n > MAX_EXHAUSTIVE_LEN {
        return Err(Error::InvalidParameters(format!(
            "exhaustive verification is limited to length {MAX_EXHAUSTIVE_LEN}, got {n}"
        )));
    }
    let q = field.order();
    if q < 2 {
        return Err(Error::InvalidParameters("field has no nonzero elements".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tightest: Option<Violation> = None;
    for _ in 0..max_attempts.max(1) {
        let symbols: Vec<Fq> = (0..n).map(|_| Fq(rng.gen_range(1..q))).collect();
        // cheap screen on short windows before the full check
        let verdict = match first_short_violation(&symbols, tau, SHORT_SPAN) {
            Some(v) => Verdict::Violation(v),
            None => verify_self_matching(&symbols, tau, mode)?,
        };
        match verdict {
            Verdict::Ok => return Ok(SyncSequence { symbols, tau, mode }),
            Verdict::Violation(v) => {
                let better = tightest.is_none_or(|t| (v.span(), v) < (t.span(), t));
                if better {
                    tightest = Some(v);
                }
            }
        }
    }
    let t = tightest.expect("at least one attempt ran");
    Err(Error::SyncGiveUp {
        tau,
        attempts: max_attempts.max(1),
        i: t.i,
        j: t.j,
        k: t.k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct transcription of the definition, one distance per triple.
    fn naive(s: &[Fq], tau: f64) -> Verdict {
        let n = s.len();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n + 1 {
                    let d = levenshtein(&s[i - 1..j - 1], &s[j - 1..k - 1]);
                    if d as f64 <= (1.0 - tau) * (k - i) as f64 {
                        return Verdict::Violation(Violation { i, j, k });
                    }
                }
            }
        }
        Verdict::Ok
    }

    fn seq(v: &[u32]) -> Vec<Fq> {
        v.iter().map(|&x| Fq(x)).collect()
    }

    #[test]
    fn verifier_examples() {
        let constant = seq(&[3, 3, 3, 3]);
        assert_eq!(
            verify_self_matching(&constant, 0.5, VerificationMode::Exhaustive).unwrap(),
            Verdict::Violation(Violation { i: 1, j: 2, k: 3 })
        );
        for tau in [0.01, 0.5, 0.99] {
            assert!(verify_self_matching(&seq(&[1, 2]), tau, VerificationMode::Exhaustive)
                .unwrap()
                .is_ok());
        }
        assert!(verify_self_matching(&seq(&[1, 2]), 1.0, VerificationMode::Exhaustive).is_err());
        assert!(verify_self_matching(&[Fq(1); 129], 0.5, VerificationMode::Exhaustive).is_err());
    }

    #[test]
    fn exhaustive_agrees_with_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..300 {
            let n = rng.gen_range(1..14);
            let q = rng.gen_range(2..9);
            let s: Vec<Fq> = (0..n).map(|_| Fq(rng.gen_range(1..q))).collect();
            let tau = [0.2, 0.5, 0.7, 0.9][trial % 4];
            assert_eq!(
                verify_self_matching(&s, tau, VerificationMode::Exhaustive).unwrap(),
                naive(&s, tau),
                "{s:?} tau={tau}"
            );
        }
    }

    #[test]
    fn sampled_covers_short_windows() {
        // a repeat at distance 3 is caught with no random samples at all
        let mut s: Vec<Fq> = (1..=40).map(Fq).collect();
        s[3] = s[0];
        let v = verify_self_matching(&s, 0.5, VerificationMode::Sampled { count: 0, seed: 0 }).unwrap();
        assert_eq!(v, Verdict::Violation(Violation { i: 1, j: 2, k: 5 }));
        assert_eq!(naive(&s, 0.5), v);
    }

    #[test]
    fn generator_examples() {
        let f7 = FieldSpec::new(7, 1).unwrap();
        let one = gen_self_matching(&f7, 1, 0.5, VerificationMode::Exhaustive, 5, 10).unwrap();
        assert_eq!(one.len(), 1);
        assert!(!one.symbols()[0].is_zero());

        let f256 = FieldSpec::new(2, 8).unwrap();
        let s = gen_self_matching(&f256, 64, 0.5, VerificationMode::Exhaustive, 1, DEFAULT_ATTEMPTS).unwrap();
        assert!(s.symbols().iter().all(|x| !x.is_zero()));
        assert_eq!(naive(s.symbols(), 0.5), Verdict::Ok);
        let again = gen_self_matching(&f256, 64, 0.5, VerificationMode::Exhaustive, 1, DEFAULT_ATTEMPTS).unwrap();
        assert_eq!(s, again);

        let f2 = FieldSpec::new(2, 1).unwrap();
        match gen_self_matching(&f2, 64, 0.01, VerificationMode::Exhaustive, 9, DEFAULT_ATTEMPTS) {
            Err(Error::SyncGiveUp { attempts, i, j, k, .. }) => {
                assert_eq!(attempts, DEFAULT_ATTEMPTS);
                assert_eq!((i, j, k), (1, 2, 3));
            }
            other => panic!("expected give-up, got {other:?}"),
        }
    }

    #[test]
    fn text_round_trip() {
        let f = FieldSpec::new(2, 8).unwrap();
        let s = gen_self_matching(&f, 30, 0.5, VerificationMode::Exhaustive, 2, 100).unwrap();
        let back = SyncSequence::from_text(&f, &s.to_text()).unwrap();
        assert_eq!(back, s);
        assert!(SyncSequence::from_text(&f, "3 0.5 exhaustive\n1 1 1\n").is_err());
        assert!(SyncSequence::from_text(&f, "2 0.5 exhaustive\n1 0\n").is_err());
        assert_eq!("sampled:500:3".parse::<VerificationMode>().unwrap(), VerificationMode::Sampled { count: 500, seed: 3 });
    }
}
