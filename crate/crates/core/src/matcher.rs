//! Realigning received `(code, sync)` pairs against the reference sync
//! sequence by repeated LCS rounds.

use crate::editdist::lcs_align;
use crate::galois::Fq;

/// Length-`n` word over `F_q ∪ {?}`; `None` is `?`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasureWord(pub Vec<Option<Fq>>);

impl ErasureWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn erasures(&self) -> usize {
        self.0.iter().filter(|x| x.is_none()).count()
    }

    /// Every `?` replaced with zero.
    pub fn zero_filled(&self) -> Vec<Fq> {
        self.0.iter().map(|x| x.unwrap_or(Fq::ZERO)).collect()
    }

    /// `(erasures, substitutions)` relative to a known word of the same length.
    pub fn diff(&self, truth: &[Fq]) -> (usize, usize) {
        assert_eq!(self.len(), truth.len());
        self.0.iter().zip(truth).fold((0, 0), |(e, t), (y, c)| match y {
            None => (e + 1, t),
            Some(y) if y != c => (e, t + 1),
            Some(_) => (e, t),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MatchReport {
    pub erasures: usize,
    pub rounds: usize,
    /// Received symbols assigned a position in some round.
    pub matched: usize,
    /// Positions that received two or more candidates.
    pub collisions: usize,
}

/// `floor(1 / sqrt(tau))`, at least 1.
pub fn round_count(tau: f64) -> usize {
    if tau.is_nan() || tau <= 0.0 || tau >= 1.0 {
        return 1;
    }
    let mut r = (1.0 / tau.sqrt()).floor() as usize;
    while ((r + 1) * (r + 1)) as f64 * tau <= 1.0 {
        r += 1;
    }
    while r > 1 && (r * r) as f64 * tau > 1.0 {
        r -= 1;
    }
    r.max(1)
}

/// Places each received code symbol at the sync position its sync symbol
/// aligns to.
///
/// Every round aligns the still-unmatched received sync symbols against
/// `sync` and removes whatever got matched. A position of `sync` keeps a
/// code symbol only if exactly one received index was assigned to it.
pub fn match_sync(sync: &[Fq], received: &[(Fq, Fq)], tau: f64) -> (ErasureWord, MatchReport) {
    let n = sync.len();
    let rounds = round_count(tau);
    let mut pos: Vec<Option<usize>> = vec![None; received.len()];
    let mut remaining: Vec<usize> = (0..received.len()).collect();

    for _ in 0..rounds {
        if remaining.is_empty() {
            break;
        }
        let sprime: Vec<Fq> = remaining.iter().map(|&r| received[r].1).collect();
        let alignment = lcs_align(sync, &sprime);
        if alignment.is_empty() {
            break;
        }
        let mut taken = vec![false; remaining.len()];
        for &(i, j) in &alignment.pairs {
            pos[remaining[j]] = Some(i);
            taken[j] = true;
        }
        remaining = remaining
            .into_iter()
            .zip(taken)
            .filter_map(|(r, t)| (!t).then_some(r))
            .collect();
    }

    let mut count = vec![0usize; n];
    let mut who = vec![0usize; n];
    for (j, p) in pos.iter().enumerate() {
        if let Some(i) = *p {
            count[i] += 1;
            who[i] = j;
        }
    }
    let word: Vec<Option<Fq>> = (0..n)
        .map(|i| (count[i] == 1).then(|| received[who[i]].0))
        .collect();
    let report = MatchReport {
        erasures: word.iter().filter(|x| x.is_none()).count(),
        rounds,
        matched: pos.iter().filter(|p| p.is_some()).count(),
        collisions: count.iter().filter(|&&c| c >= 2).count(),
    };
    (ErasureWord(word), report)
}
