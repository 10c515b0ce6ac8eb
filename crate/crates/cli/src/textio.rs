//! Plain-text word formats shared by the subcommands.

use linindel_core::halflinear::PairSymbol;
use linindel_core::{Error, FieldSpec, Fq, Result};
use num_rational::Rational64;

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Whitespace-separated decimal symbols, all lines concatenated.
pub fn parse_symbols(field: &FieldSpec, text: &str) -> Result<Vec<Fq>> {
    content_lines(text)
        .flat_map(str::split_whitespace)
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad symbol {t:?}")))
                .and_then(|v| field.elem(v))
        })
        .collect()
}

pub fn format_symbols(v: &[Fq]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    parts.join(" ") + "\n"
}

/// One `a b` pair per line.
pub fn parse_pairs(field: &FieldSpec, text: &str) -> Result<Vec<PairSymbol>> {
    content_lines(text)
        .map(|line| {
            let v = parse_symbols(field, line)?;
            match v[..] {
                [a, b] => Ok(PairSymbol::new(a, b)),
                _ => Err(Error::Parse(format!("expected `a b`, got {line:?}"))),
            }
        })
        .collect()
}

pub fn format_pairs(v: &[PairSymbol]) -> String {
    v.iter().map(|p| format!("{p}\n")).collect()
}

/// Exact rational from `a/b`, a decimal such as `0.125`, or an integer.
pub fn parse_fraction(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad fraction {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if b == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(a, b));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 15 || !frac.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let neg = int.starts_with('-');
    let whole: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
    let den = 10i64.pow(frac.len() as u32);
    let num: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let r = Rational64::from_integer(whole.abs()) + Rational64::new(num, den);
    Ok(if neg { -r } else { r })
}

pub fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
