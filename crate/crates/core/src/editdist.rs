//! Longest common subsequence and indel-only (Levenshtein) distance.

/// A maximum-length common subsequence, as 0-based index pairs `(i, j)`
/// with `a[i] == b[j]`, strictly increasing in both coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alignment {
    pub pairs: Vec<(usize, usize)>,
}

impl Alignment {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Computes an LCS alignment of `a` and `b`.
///
/// Ties are broken so that the matched indices of `a` are as small as
/// possible: the backtrace walks forward over a suffix table, takes a match
/// whenever the symbols agree, and otherwise skips a symbol of `b` before
/// it gives up on the current symbol of `a`.
pub fn lcs_align<T: PartialEq>(a: &[T], b: &[T]) -> Alignment {
    let (n, m) = (a.len(), b.len());
    if n == 0 || m == 0 {
        return Alignment::default();
    }
    let w = m + 1;
    // suffix[i * w + j] = |LCS(a[i..], b[j..])|
    let mut suffix = vec![0u32; (n + 1) * w];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            suffix[i * w + j] = if a[i] == b[j] {
                suffix[(i + 1) * w + j + 1] + 1
            } else {
                suffix[(i + 1) * w + j].max(suffix[i * w + j + 1])
            };
        }
    }
    let mut pairs = Vec::with_capacity(suffix[0] as usize);
    let (mut i, mut j) = (0, 0);
    while i < n && j < m {
        if a[i] == b[j] {
            pairs.push((i, j));
            i += 1;
            j += 1;
        } else if suffix[i * w + j + 1] == suffix[i * w + j] {
            j += 1;
        } else {
            i += 1;
        }
    }
    Alignment { pairs }
}

/// Length of an LCS of `a` and `b`, in linear memory.
pub fn lcs_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut row = vec![0u32; short.len() + 1];
    for x in long {
        let mut diag = 0;
        for (j, y) in short.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[short.len()] as usize
}

/// `|LCS(a, b[..k])|` for every `k` in `0..=b.len()`.
pub fn lcs_prefix_profile<T: PartialEq>(a: &[T], b: &[T]) -> Vec<usize> {
    let mut row = vec![0u32; b.len() + 1];
    for x in a {
        let mut diag = 0;
        for (j, y) in b.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row.into_iter().map(|v| v as usize).collect()
}

/// Minimum number of insertions and deletions turning `a` into `b`.
pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.len() + b.len() - 2 * lcs_len(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{HashSet, VecDeque};

    /// Breadth-first search over single-symbol edits, restricted to symbols
    /// that occur in `b` (inserting anything else never helps).
    fn brute_indel_distance(a: &[u8], b: &[u8]) -> usize {
        let alphabet: Vec<u8> = b.iter().copied().collect::<HashSet<_>>().into_iter().collect();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(a.to_vec());
        queue.push_back((a.to_vec(), 0));
        while let Some((w, d)) = queue.pop_front() {
            if w == b {
                return d;
            }
            let mut next = Vec::new();
            for i in 0..w.len() {
                let mut v = w.clone();
                v.remove(i);
                next.push(v);
            }
            for i in 0..=w.len() {
                for &s in &alphabet {
                    let mut v = w.clone();
                    v.insert(i, s);
                    next.push(v);
                }
            }
            for v in next {
                if v.len() <= a.len() + b.len() && seen.insert(v.clone()) {
                    queue.push_back((v, d + 1));
                }
            }
        }
        unreachable!()
    }

    /// Longest common subsequence by enumerating subsequences of `a`.
    fn brute_lcs(a: &[u8], b: &[u8]) -> usize {
        let is_subseq = |s: &[u8]| {
            let mut it = b.iter();
            s.iter().all(|x| it.any(|y| y == x))
        };
        (0u32..1 << a.len())
            .filter_map(|mask| {
                let s: Vec<u8> = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
                is_subseq(&s).then_some(s.len())
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn align_examples() {
        let al = lcs_align(&[1, 2, 3], &[1, 2, 3]);
        assert_eq!(al.pairs, vec![(0, 0), (1, 1), (2, 2)]);
        assert!(lcs_align(&[1, 2, 3], &[]).is_empty());
        assert_eq!(lcs_align(&[1, 3, 2], &[1, 2, 3]).len(), 2);
        assert_eq!(brute_lcs(&[1, 3, 2], &[1, 2, 3]), 2);
    }

    #[test]
    fn levenshtein_examples() {
        assert_eq!(levenshtein(&[4, 5, 6], &[4, 5, 6]), 0);
        assert_eq!(levenshtein::<u8>(&[], &[1, 2, 3, 4]), 4);
        assert_eq!(levenshtein(&[1, 3, 2], &[1, 2, 3]), 2);
        assert_eq!(brute_indel_distance(&[1, 3, 2], &[1, 2, 3]), 2);
    }

    #[test]
    fn tie_break_prefers_early_indices_of_first_argument() {
        // both (0, 0) and (1, 0) would be maximal; the earliest index of `a` wins
        let al = lcs_align(&[7, 7], &[7]);
        assert_eq!(al.pairs, vec![(0, 0)]);
        let al = lcs_align(&[1, 2, 1], &[1]);
        assert_eq!(al.pairs, vec![(0, 0)]);
        // a[0] is kept matchable by skipping b[0]
        let al = lcs_align(&[2, 1], &[1, 2, 1]);
        assert_eq!(al.pairs, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn prefix_profile_matches_direct() {
        let a = [1u8, 2, 3, 2, 1];
        let b = [2u8, 1, 3, 2, 2, 1, 3];
        let prof = lcs_prefix_profile(&a, &b);
        for k in 0..=b.len() {
            assert_eq!(prof[k], lcs_len(&a, &b[..k]));
        }
    }

    fn short_seq() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..3, 0..=6)
    }

    proptest! {
        #[test]
        fn alignment_is_valid_and_maximal(a in prop::collection::vec(0u8..4, 0..10), b in prop::collection::vec(0u8..4, 0..10)) {
            let al = lcs_align(&a, &b);
            for w in al.pairs.windows(2) {
                prop_assert!(w[0].0 < w[1].0 && w[0].1 < w[1].1);
            }
            for &(i, j) in &al.pairs {
                prop_assert_eq!(a[i], b[j]);
            }
            prop_assert_eq!(al.len(), brute_lcs(&a, &b));
            prop_assert_eq!(al.len(), lcs_len(&a, &b));
        }

        #[test]
        fn distance_matches_edit_search(a in short_seq(), b in short_seq()) {
            prop_assert_eq!(levenshtein(&a, &b), brute_indel_distance(&a, &b));
        }

        #[test]
        fn metric_properties(a in short_seq(), b in short_seq(), c in short_seq()) {
            let ab = levenshtein(&a, &b);
            prop_assert_eq!(ab, levenshtein(&b, &a));
            prop_assert!(ab <= levenshtein(&a, &c) + levenshtein(&c, &b));
            prop_assert!(ab >= a.len().abs_diff(b.len()));
        }
    }
}
