//! Indel channel: edit scripts, random patterns, and the targeted attacks
//! against the window structure of the linear code.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::galois::Fq;
use crate::halflinear::PairSymbol;
use crate::linearcode::{segment, LinearIndelCode};

/// One edit; positions index the word as it stands when the edit applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edit<T> {
    Delete { pos: usize },
    Insert { pos: usize, value: T },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndelPattern<T> {
    pub edits: Vec<Edit<T>>,
}

impl<T> Default for IndelPattern<T> {
    fn default() -> Self {
        IndelPattern { edits: Vec::new() }
    }
}

impl<T> IndelPattern<T> {
    pub fn cost(&self) -> usize {
        self.edits.len()
    }

    pub fn deletions(&self) -> usize {
        self.edits.iter().filter(|e| matches!(e, Edit::Delete { .. })).count()
    }

    pub fn insertions(&self) -> usize {
        self.cost() - self.deletions()
    }
}

/// Applies the edits in order.
pub fn apply_pattern<T: Clone>(w: &[T], p: &IndelPattern<T>) -> Result<Vec<T>> {
    let mut out = w.to_vec();
    for (index, e) in p.edits.iter().enumerate() {
        match e {
            Edit::Delete { pos } => {
                if *pos >= out.len() {
                    return Err(Error::EditOutOfRange {
                        index,
                        position: *pos,
                        len: out.len(),
                    });
                }
                out.remove(*pos);
            }
            Edit::Insert { pos, value } => {
                if *pos > out.len() {
                    return Err(Error::EditOutOfRange {
                        index,
                        position: *pos,
                        len: out.len(),
                    });
                }
                out.insert(*pos, value.clone());
            }
        }
    }
    Ok(out)
}

/// `deletions` deletions and `insertions` insertions at uniform positions,
/// interleaved in a uniformly random order. Inserted values come from
/// `sample`.
pub fn random_pattern<T, F>(
    len: usize,
    deletions: usize,
    insertions: usize,
    seed: u64,
    mut sample: F,
) -> Result<IndelPattern<T>>
where
    F: FnMut(&mut ChaCha8Rng) -> T,
{
    if deletions > len {
        return Err(Error::InvalidParameters(format!(
            "cannot delete {deletions} symbols from a word of length {len}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kinds: Vec<bool> = std::iter::repeat_n(true, deletions)
        .chain(std::iter::repeat_n(false, insertions))
        .collect();
    kinds.shuffle(&mut rng);
    let mut cur = len;
    let mut edits = Vec::with_capacity(kinds.len());
    for delete in kinds {
        if delete {
            edits.push(Edit::Delete {
                pos: rng.gen_range(0..cur),
            });
            cur -= 1;
        } else {
            let pos = rng.gen_range(0..=cur);
            let value = sample(&mut rng);
            edits.push(Edit::Insert { pos, value });
            cur += 1;
        }
    }
    Ok(IndelPattern { edits })
}

/// Uniform field symbol in `[0, q)`.
pub fn uniform_symbol(q: u32) -> impl FnMut(&mut ChaCha8Rng) -> Fq {
    move |rng| Fq(rng.gen_range(0..q))
}

/// Uniform pair of field symbols.
pub fn uniform_pair(q: u32) -> impl FnMut(&mut ChaCha8Rng) -> PairSymbol {
    move |rng| PairSymbol::new(Fq(rng.gen_range(0..q)), Fq(rng.gen_range(0..q)))
}

/// Attacks on the window structure of a linear-code word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// One deletion inside each of successive windows (cost 1 each), making
    /// their lengths odd.
    WindowParity,
    /// Delete the first symbol of a window and append a nonzero symbol at its
    /// end (cost 2), misaligning every pair in it.
    WindowDesync,
    /// Delete a two-zero delimiter between windows (cost 2), merging them.
    DelimiterDelete,
}

impl Strategy {
    pub fn unit_cost(self) -> usize {
        match self {
            Strategy::WindowParity => 1,
            Strategy::WindowDesync | Strategy::DelimiterDelete => 2,
        }
    }

    pub const ALL: [Strategy; 3] = [Strategy::WindowParity, Strategy::WindowDesync, Strategy::DelimiterDelete];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::WindowParity => "window-parity",
            Strategy::WindowDesync => "window-desync",
            Strategy::DelimiterDelete => "delimiter-delete",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "window-parity" => Ok(Strategy::WindowParity),
            "window-desync" => Ok(Strategy::WindowDesync),
            "delimiter-delete" => Ok(Strategy::DelimiterDelete),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

/// Builds an attack on `codeword` spending at most `budget` indels.
///
/// Targets are taken in order from the start of the word; the seed picks
/// the deleted offset inside a window (parity) or the appended value (desync).
pub fn adversarial_pattern(
    codeword: &[Fq],
    code: &LinearIndelCode,
    strategy: Strategy,
    budget: usize,
    seed: u64,
) -> Result<IndelPattern<Fq>> {
    if budget < strategy.unit_cost() {
        return Err(Error::InvalidParameters(format!(
            "budget {budget} is below the unit cost of {strategy}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = code.base().field().order();
    let seg = segment(codeword);
    let units = budget / strategy.unit_cost();
    let mut edits = Vec::new();
    // net length change of the edits so far, all of which sit left of the next target
    let mut shift: isize = 0;
    match strategy {
        Strategy::WindowParity => {
            for (w, &start) in seg.windows.iter().zip(&seg.starts).take(units) {
                let off = rng.gen_range(0..w.len());
                edits.push(Edit::Delete {
                    pos: (start as isize + shift) as usize + off,
                });
                shift -= 1;
            }
        }
        Strategy::WindowDesync => {
            for (w, &start) in seg.windows.iter().zip(&seg.starts).take(units) {
                let at = (start as isize + shift) as usize;
                edits.push(Edit::Delete { pos: at });
                edits.push(Edit::Insert {
                    pos: at + w.len() - 1,
                    value: Fq(rng.gen_range(1..q)),
                });
            }
        }
        Strategy::DelimiterDelete => {
            // interior zero runs of length exactly two
            let interior = seg.delimiters.len().saturating_sub(1);
            let targets = seg.delimiters[1.min(interior)..interior]
                .iter()
                .enumerate()
                .filter(|(_, &d)| d == 2)
                .map(|(t, _)| seg.starts[t] + seg.windows[t].len());
            for at in targets.take(units) {
                let pos = (at as isize + shift) as usize;
                edits.push(Edit::Delete { pos });
                edits.push(Edit::Delete { pos });
                shift -= 2;
            }
        }
    }
    Ok(IndelPattern { edits })
}

/// Value formatting for the pattern text format.
pub trait PatternValue: Sized {
    fn write_value(&self) -> String;
    fn parse_value(tokens: &[&str]) -> Result<Self>;
    fn token_count() -> usize;
}

fn parse_u32(t: &str) -> Result<u32> {
    t.parse().map_err(|_| Error::Parse(format!("bad number {t:?}")))
}

impl PatternValue for Fq {
    fn write_value(&self) -> String {
        self.to_string()
    }

    fn parse_value(tokens: &[&str]) -> Result<Self> {
        Ok(Fq(parse_u32(tokens[0])?))
    }

    fn token_count() -> usize {
        1
    }
}

impl PatternValue for PairSymbol {
    fn write_value(&self) -> String {
        self.to_string()
    }

    fn parse_value(tokens: &[&str]) -> Result<Self> {
        Ok(PairSymbol::new(Fq(parse_u32(tokens[0])?), Fq(parse_u32(tokens[1])?)))
    }

    fn token_count() -> usize {
        2
    }
}

impl<T: PatternValue> IndelPattern<T> {
    /// One edit per line: `D pos` or `I pos value`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.edits {
            match e {
                Edit::Delete { pos } => s.push_str(&format!("D {pos}\n")),
                Edit::Insert { pos, value } => s.push_str(&format!("I {pos} {}\n", value.write_value())),
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut edits = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let t: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("bad pattern line {line:?}"));
            let pos: usize = t.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())?;
            match t[0] {
                "D" if t.len() == 2 => edits.push(Edit::Delete { pos }),
                "I" if t.len() == 2 + T::token_count() => edits.push(Edit::Insert {
                    pos,
                    value: T::parse_value(&t[2..])?,
                }),
                _ => return Err(bad()),
            }
        }
        Ok(IndelPattern { edits })
    }
}
