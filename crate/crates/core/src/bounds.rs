//! Rate limits for codes that are linear over a subfield.
//!
//! A code over `F` that is linear over a subfield `E` (with `[F : E] = l`)
//! is handled through its expansion: each `F` symbol becomes `l` consecutive
//! `E` coordinates, and the code is an `E`-subspace of `E^{l n}`. The `F`
//! structure is never needed beyond addition, which is coordinatewise.
//!
//! Single-deletion confusability of such a code reduces to linear algebra:
//! two codewords `c`, `c'` collapse to the same word after deleting
//! positions `u <= u'` exactly when `x = c - c'` is a nonzero codeword with
//! `x_i = c_i - c_{i+1}` on `[u, u')`, arbitrary at `u'`, and zero elsewhere.
//! The special case `u = 1`, `u' = n` is the prefix-sum condition
//! `c_i = x_1 + ... + x_{i-1}`, which a dimension count forces to have a
//! solution whenever the rate exceeds 1/2.

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::editdist::levenshtein;
use crate::error::{Error, Result};
use crate::galois::{FieldSpec, Fq};

/// Largest code that [`SubfieldLinearCode::codewords`] will enumerate.
pub const MAX_ENUMERATED: u64 = 1 << 16;

/// `(1 - delta) / 2 + 1 / (2n)`.
pub fn half_singleton_bound(n: usize, delta: Rational64) -> Result<Rational64> {
    if n == 0 || delta < Rational64::zero() || delta >= Rational64::one() {
        return Err(Error::InvalidParameters(format!(
            "need n >= 1 and 0 <= delta < 1, got n={n} delta={delta}"
        )));
    }
    Ok((Rational64::one() - delta) / 2 + Rational64::new(1, 2 * n as i64))
}

// --- linear algebra over E ---

fn dot(f: &FieldSpec, a: &[Fq], b: &[Fq]) -> Fq {
    a.iter().zip(b).fold(Fq::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

fn axpy(f: &FieldSpec, alpha: Fq, x: &[Fq], y: &mut [Fq]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = f.add(*yi, f.mul(alpha, xi));
    }
}

/// Reduced row echelon form with leftmost pivots; zero rows are dropped.
/// Returns the rows and their pivot columns.
pub fn rref(f: &FieldSpec, rows: &[Vec<Fq>], ncols: usize) -> (Vec<Vec<Fq>>, Vec<usize>) {
    let mut m: Vec<Vec<Fq>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][col]).expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = f.neg(row[col]);
                axpy(f, factor, &pivot_row, row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{ z : A z = 0 }` for `A` with `ncols` columns.
pub fn null_space(f: &FieldSpec, rows: &[Vec<Fq>], ncols: usize) -> Vec<Vec<Fq>> {
    let (r, pivots) = rref(f, rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut z = vec![Fq::ZERO; ncols];
        z[free] = Fq::ONE;
        for (row, &pc) in r.iter().zip(&pivots) {
            z[pc] = f.neg(row[free]);
        }
        basis.push(z);
    }
    basis
}

/// A code over an extension of `E` of degree `ell_ext`, stored as an
/// `E`-basis of its expansion in `E^{ell_ext * n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubfieldLinearCode {
    base: FieldSpec,
    ell_ext: usize,
    n: usize,
    basis: Vec<Vec<Fq>>,
    parity: Vec<Vec<Fq>>,
}

impl SubfieldLinearCode {
    /// The span of `rows`; dependent rows are allowed and reduced away.
    pub fn new(base: &FieldSpec, ell_ext: usize, n: usize, rows: &[Vec<Fq>]) -> Result<Self> {
        if ell_ext == 0 || n == 0 {
            return Err(Error::InvalidParameters("need ell_ext >= 1 and n >= 1".into()));
        }
        let width = ell_ext * n;
        for row in rows {
            if row.len() != width {
                return Err(Error::LengthMismatch {
                    expected: width,
                    actual: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|&&v| !base.contains(v)) {
                return Err(Error::NotInField {
                    value: bad.0 as u64,
                    order: base.order(),
                });
            }
        }
        let (basis, _) = rref(base, rows, width);
        let parity = null_space(base, &basis, width);
        Ok(SubfieldLinearCode {
            base: base.clone(),
            ell_ext,
            n,
            basis,
            parity,
        })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn ell_ext(&self) -> usize {
        self.ell_ext
    }

    /// Length in `F` symbols.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension over `E`.
    pub fn k_e(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Fq>] {
        &self.basis
    }

    /// Rows `h` with `h . x = 0` for every codeword `x`.
    pub fn parity_checks(&self) -> &[Vec<Fq>] {
        &self.parity
    }

    /// `log_|F| |C| / n = k_E / (ell_ext n)`.
    pub fn rate(&self) -> Rational64 {
        Rational64::new(self.k_e() as i64, (self.ell_ext * self.n) as i64)
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        v.len() == self.ell_ext * self.n && self.parity.iter().all(|h| dot(&self.base, h, v).is_zero())
    }

    /// Packs each block of `ell_ext` coordinates into one `F` symbol index.
    pub fn to_symbols(&self, v: &[Fq]) -> Vec<u64> {
        let q = self.base.order() as u64;
        v.chunks(self.ell_ext)
            .map(|b| b.iter().rev().fold(0u64, |acc, x| acc * q + x.0 as u64))
            .collect()
    }

    /// All codewords as `F`-symbol sequences, in basis-combination order.
    pub fn codewords(&self) -> Result<Vec<Vec<u64>>> {
        let q = self.base.order() as u64;
        let count = (q as u128).pow(self.k_e() as u32);
        if count > MAX_ENUMERATED as u128 {
            return Err(Error::InvalidParameters(format!(
                "code has {count} codewords, more than {MAX_ENUMERATED}"
            )));
        }
        let width = self.ell_ext * self.n;
        Ok((0..count as u64)
            .map(|mut idx| {
                let mut v = vec![Fq::ZERO; width];
                for row in &self.basis {
                    let coef = Fq((idx % q) as u32);
                    idx /= q;
                    axpy(&self.base, coef, row, &mut v);
                }
                self.to_symbols(&v)
            })
            .collect())
    }

    /// Text form: `p m_E ell_ext n`, then one basis row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {} {}\n", self.base.p(), self.base.m(), self.ell_ext, self.n);
        for row in &self.basis {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&r.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty code file".into()))?;
        let h: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        if h.len() != 4 {
            return Err(Error::Parse(format!("header needs `p m_E ell_ext n`, got {header:?}")));
        }
        let base = FieldSpec::new(h[0] as u32, h[1] as u32)?;
        let rows = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad entry {t:?}")))
                            .and_then(|v| base.elem(v))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&base, h[2] as usize, h[3] as usize, &rows)
    }

    fn block<'a>(&self, v: &'a [Fq], i: usize) -> &'a [Fq] {
        &v[i * self.ell_ext..(i + 1) * self.ell_ext]
    }

    /// `c_i = x_1 + ... + x_{i-1}` blockwise.
    pub fn prefix_sums(&self, x: &[Fq]) -> Vec<Fq> {
        let f = &self.base;
        let mut out = vec![Fq::ZERO; x.len()];
        let mut acc = vec![Fq::ZERO; self.ell_ext];
        for i in 0..self.n {
            out[i * self.ell_ext..(i + 1) * self.ell_ext].copy_from_slice(&acc);
            for (a, &xi) in acc.iter_mut().zip(self.block(x, i)) {
                *a = f.add(*a, xi);
            }
        }
        out
    }

    /// The word left after deleting `F` position `pos`.
    pub fn delete_symbol(&self, v: &[Fq], pos: usize) -> Vec<Fq> {
        let mut out = v.to_vec();
        out.drain(pos * self.ell_ext..(pos + 1) * self.ell_ext);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// `c` is the prefix-sum vector of `x`.
    PrefixSum,
    /// General `(u, u')` form.
    Window,
}

/// Two distinct codewords that coincide after one deletion each:
/// removing `F` position `u` from `c` and `u_prime` from `c_prime` gives the
/// same word. Positions are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfusabilityWitness {
    pub kind: WitnessKind,
    /// Nonzero codeword generating the pair.
    pub x: Vec<Fq>,
    pub c: Vec<Fq>,
    pub c_prime: Vec<Fq>,
    pub u: usize,
    pub u_prime: usize,
}

impl ConfusabilityWitness {
    /// Checks membership, distinctness, the prefix relation where claimed,
    /// and the deletion collision itself.
    pub fn verify(&self, code: &SubfieldLinearCode) -> bool {
        let membership = code.contains(&self.x) && code.contains(&self.c) && code.contains(&self.c_prime);
        let distinct = self.c != self.c_prime && self.x.iter().any(|v| !v.is_zero());
        let prefix = self.kind != WitnessKind::PrefixSum || code.prefix_sums(&self.x) == self.c;
        let collide = self.u < code.n()
            && self.u_prime < code.n()
            && code.delete_symbol(&self.c, self.u) == code.delete_symbol(&self.c_prime, self.u_prime);
        membership && distinct && prefix && collide
    }
}

fn combine(f: &FieldSpec, coeffs: &[Fq], vectors: &[Vec<Fq>], width: usize) -> Vec<Fq> {
    let mut out = vec![Fq::ZERO; width];
    for (&a, v) in coeffs.iter().zip(vectors) {
        if !a.is_zero() {
            axpy(f, a, v, &mut out);
        }
    }
    out
}

/// Solves `{ x in C : prefix_sums(x) in C }` and returns a nontrivial
/// solution as a witness, if one exists.
pub fn find_prefix_witness(code: &SubfieldLinearCode) -> Option<ConfusabilityWitness> {
    let f = &code.base;
    let width = code.ell_ext * code.n;
    let k = code.k_e();
    if k == 0 {
        return None;
    }
    let images: Vec<Vec<Fq>> = code.basis.iter().map(|g| code.prefix_sums(g)).collect();
    let system: Vec<Vec<Fq>> = code
        .parity
        .iter()
        .map(|h| images.iter().map(|img| dot(f, h, img)).collect())
        .collect();
    let z = null_space(f, &system, k).into_iter().next()?;
    let x = combine(f, &z, &code.basis, width);
    let c = code.prefix_sums(&x);
    let c_prime: Vec<Fq> = c.iter().zip(&x).map(|(&a, &b)| f.add(a, b)).collect();
    Some(ConfusabilityWitness {
        kind: WitnessKind::PrefixSum,
        x,
        c,
        c_prime,
        u: 0,
        u_prime: code.n - 1,
    })
}

fn find_window_witness(code: &SubfieldLinearCode, u: usize, u_prime: usize) -> Option<ConfusabilityWitness> {
    let f = &code.base;
    let l = code.ell_ext;
    let width = l * code.n;
    let k = code.k_e();
    // x = T(c) + a e_{u'}, with T(c)_i = c_i - c_{i+1} on [u, u')
    let shift = |c: &[Fq]| {
        let mut out = vec![Fq::ZERO; width];
        for i in u..u_prime {
            for t in 0..l {
                out[i * l + t] = f.sub(c[i * l + t], c[(i + 1) * l + t]);
            }
        }
        out
    };
    let mut columns: Vec<Vec<Fq>> = code.basis.iter().map(|g| shift(g)).collect();
    for t in 0..l {
        let mut e = vec![Fq::ZERO; width];
        e[u_prime * l + t] = Fq::ONE;
        columns.push(e);
    }
    let system: Vec<Vec<Fq>> = code
        .parity
        .iter()
        .map(|h| columns.iter().map(|col| dot(f, h, col)).collect())
        .collect();
    for z in null_space(f, &system, k + l) {
        let x = combine(f, &z, &columns, width);
        if x.iter().all(|v| v.is_zero()) {
            continue;
        }
        let c = combine(f, &z[..k], &code.basis, width);
        let c_prime: Vec<Fq> = c.iter().zip(&x).map(|(&a, &b)| f.sub(a, b)).collect();
        return Some(ConfusabilityWitness {
            kind: WitnessKind::Window,
            x,
            c,
            c_prime,
            u,
            u_prime,
        });
    }
    None
}

/// A pair of codewords that one deletion cannot tell apart, or `None` when
/// the code corrects a single deletion.
///
/// The prefix-sum system is tried first; if it has only the trivial
/// solution, every `(u, u')` window system is searched, which makes the
/// answer exact.
pub fn find_confusable_pair(code: &SubfieldLinearCode) -> Option<ConfusabilityWitness> {
    if let Some(w) = find_prefix_witness(code) {
        return Some(w);
    }
    (0..code.n)
        .flat_map(|u| (u..code.n).map(move |v| (u, v)))
        .find_map(|(u, v)| find_window_witness(code, u, v))
}

/// True iff every pair of distinct codewords is more than `2t` apart in
/// indel distance, i.e. the code corrects any `t` indels.
pub fn brute_indel_capability(codewords: &[Vec<u64>], t: usize) -> Result<bool> {
    if codewords.len() as u64 > MAX_ENUMERATED {
        return Err(Error::InvalidParameters(format!(
            "{} codewords exceed the {MAX_ENUMERATED} cap",
            codewords.len()
        )));
    }
    if let Some(first) = codewords.first() {
        if let Some(bad) = codewords.iter().find(|c| c.len() != first.len()) {
            return Err(Error::LengthMismatch {
                expected: first.len(),
                actual: bad.len(),
            });
        }
    }
    for (i, a) in codewords.iter().enumerate() {
        for b in &codewords[i + 1..] {
            if a != b && levenshtein(a, b) <= 2 * t {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
