//! Seeded encode/corrupt/decode sweeps.
//!
//! Trial `i` of every sweep point draws its message and channel from the
//! ChaCha stream `i` of the experiment seed, so points that differ only in
//! decoder variant see identical inputs. Every code is built and validated
//! before the first trial runs.

use std::fmt;
use std::time::{Duration, Instant};

use linindel_core::channel::{adversarial_pattern, apply_pattern, random_pattern, uniform_pair, uniform_symbol, Strategy};
use linindel_core::halflinear::DecoderVariant;
use linindel_core::innercode::InnerCode;
use linindel_core::{Error, Fq, Result};
use num_rational::Rational64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codefile::{parse_mode, CodeSpec};
use crate::config::KeyValues;
use crate::textio::parse_fraction;

pub const CSV_HEADER: &str = "delta,ell,tau,variant,strategy,trials,successes,mean_e,mean_t,mean_runtime_ms";

const KEYS: [&str; 16] = [
    "p", "m", "n", "k", "tau", "sync_seed", "sync_mode", "code", "ell", "delta", "variant", "strategy", "trials",
    "seed", "message", "zero_fraction",
];

/// The reference configuration.
pub fn defaults() -> KeyValues {
    let mut kv = KeyValues::default();
    for (k, v) in [
        ("p", "2"),
        ("m", "8"),
        ("n", "240"),
        ("k", "120"),
        ("tau", "0.5"),
        ("sync_seed", "1"),
        ("sync_mode", "auto"),
        ("code", "linear"),
        ("ell", "4"),
        ("delta", "0.01"),
        ("variant", "improved"),
        ("strategy", "random"),
        ("trials", "100"),
        ("seed", "1"),
        ("message", "random"),
        ("zero_fraction", "0.4"),
    ] {
        kv.set(k, v);
    }
    kv
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// `floor(delta * len)` indels split uniformly between deletions and insertions.
    Random,
    Attack(Strategy),
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Channel::Random => f.write_str("random"),
            Channel::Attack(s) => s.fmt(f),
        }
    }
}

impl std::str::FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "random" {
            Ok(Channel::Random)
        } else {
            s.parse().map(Channel::Attack)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessageKind {
    Random,
    /// Messages whose inner codewords vanish on a random `zero_fraction` of positions.
    Sparse,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub p: u32,
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub taus: Vec<(String, f64)>,
    pub sync_seed: u64,
    pub sync_mode: String,
    /// `None` runs the half-linear code alone.
    pub ells: Vec<Option<usize>>,
    pub deltas: Vec<(String, Rational64)>,
    pub variants: Vec<DecoderVariant>,
    pub channels: Vec<Channel>,
    pub trials: usize,
    pub seed: u64,
    pub message: MessageKind,
    pub zero_fraction: Rational64,
}

impl ExperimentConfig {
    /// Reads a configuration; keys absent from `kv` take their [`defaults`].
    pub fn from_kv(kv: &KeyValues) -> Result<Self> {
        if let Some(bad) = kv.keys().find(|k| !KEYS.contains(k)) {
            return Err(Error::InvalidParameters(format!("unknown config key {bad:?}")));
        }
        let mut full = defaults();
        for key in kv.keys() {
            full.set(key, kv.get(key).unwrap_or_default());
        }
        let kv = full;
        let half = match kv.require("code")? {
            "linear" => false,
            "half" => true,
            other => return Err(Error::InvalidParameters(format!("code must be linear or half, got {other:?}"))),
        };
        let ells = if half {
            vec![None]
        } else {
            kv.list("ell")?
                .iter()
                .map(|s| s.parse().map(Some).map_err(|_| Error::Parse(format!("bad ell {s:?}"))))
                .collect::<Result<_>>()?
        };
        let taus = kv
            .list("tau")?
            .iter()
            .map(|s| s.parse().map(|t| (s.to_string(), t)).map_err(|_| Error::Parse(format!("bad tau {s:?}"))))
            .collect::<Result<_>>()?;
        let deltas = kv
            .list("delta")?
            .iter()
            .map(|s| parse_fraction(s).map(|d| (s.to_string(), d)))
            .collect::<Result<_>>()?;
        let variants = kv.list("variant")?.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        let channels = kv.list("strategy")?.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        let message = match kv.require("message")? {
            "random" => MessageKind::Random,
            "sparse" => MessageKind::Sparse,
            other => return Err(Error::InvalidParameters(format!("message must be random or sparse, got {other:?}"))),
        };
        let cfg = ExperimentConfig {
            p: kv.parsed("p")?,
            m: kv.parsed("m")?,
            n: kv.parsed("n")?,
            k: kv.parsed("k")?,
            taus,
            sync_seed: kv.parsed("sync_seed")?,
            sync_mode: kv.require("sync_mode")?.to_string(),
            ells,
            deltas,
            variants,
            channels,
            trials: kv.parsed("trials")?,
            seed: kv.parsed("seed")?,
            message,
            zero_fraction: parse_fraction(kv.require("zero_fraction")?)?,
        };
        cfg.check_lists()?;
        Ok(cfg)
    }

    fn check_lists(&self) -> Result<()> {
        let empty = [
            ("tau", self.taus.is_empty()),
            ("ell", self.ells.is_empty()),
            ("delta", self.deltas.is_empty()),
            ("variant", self.variants.is_empty()),
            ("strategy", self.channels.is_empty()),
        ];
        if let Some((key, _)) = empty.iter().find(|(_, e)| *e) {
            return Err(Error::InvalidParameters(format!("{key} needs at least one value")));
        }
        if self.deltas.iter().any(|(_, d)| *d < Rational64::from_integer(0) || *d >= Rational64::from_integer(1)) {
            return Err(Error::InvalidParameters("delta must lie in [0, 1)".into()));
        }
        if self.message == MessageKind::Sparse && self.sparse_zeros() >= self.k {
            return Err(Error::InvalidParameters(format!(
                "zero_fraction {} needs {} zeros, more than k - 1 = {}",
                self.zero_fraction,
                self.sparse_zeros(),
                self.k.saturating_sub(1)
            )));
        }
        Ok(())
    }

    fn sparse_zeros(&self) -> usize {
        let z = self.zero_fraction * Rational64::from_integer(self.n as i64);
        z.ceil().to_integer().max(0) as usize
    }

    /// Comment lines recording everything that seeds the run.
    pub fn header(&self) -> String {
        format!(
            "# p={} m={} n={} k={} code={} message={} zero_fraction={}\n# seed={} sync_seed={} sync_mode={}\n",
            self.p,
            self.m,
            self.n,
            self.k,
            if self.ells == [None] { "half" } else { "linear" },
            match self.message {
                MessageKind::Random => "random",
                MessageKind::Sparse => "sparse",
            },
            self.zero_fraction,
            self.seed,
            self.sync_seed,
            self.sync_mode
        )
    }

    /// Builds every sweep point, validating all codes and budgets.
    pub fn points(&self) -> Result<Vec<Point>> {
        let mut points = Vec::new();
        for (tau_label, tau) in &self.taus {
            let mode = parse_mode(&self.sync_mode, self.n, self.sync_seed)?;
            let base = CodeSpec::generate(self.p, self.m, self.n, self.k, *tau, mode, self.sync_seed, None)?;
            for &ell in &self.ells {
                let code = CodeSpec {
                    half: base.half.clone(),
                    ell: None,
                };
                let code = match ell {
                    Some(l) => {
                        linindel_core::linearcode::LinearIndelCode::new(code.half.clone(), l)?;
                        CodeSpec { ell: Some(l), ..code }
                    }
                    None => code,
                };
                let len = code.linear().map_or(self.n, |c| c.len());
                for (delta_label, delta) in &self.deltas {
                    let budget = (*delta * Rational64::from_integer(len as i64)).floor().to_integer() as usize;
                    for &variant in &self.variants {
                        for &channel in &self.channels {
                            if let Channel::Attack(s) = channel {
                                if ell.is_none() {
                                    return Err(Error::InvalidParameters(format!(
                                        "strategy {s} needs the linear code"
                                    )));
                                }
                                if budget < s.unit_cost() {
                                    return Err(Error::InvalidParameters(format!(
                                        "delta {delta_label} gives budget {budget}, below the unit cost of {s}"
                                    )));
                                }
                            }
                            points.push(Point {
                                delta_label: delta_label.clone(),
                                tau_label: tau_label.clone(),
                                code: code.clone(),
                                budget,
                                variant,
                                channel,
                            });
                        }
                    }
                }
            }
        }
        Ok(points)
    }
}

/// One row of the sweep.
#[derive(Debug, Clone)]
pub struct Point {
    pub delta_label: String,
    pub tau_label: String,
    pub code: CodeSpec,
    /// Indels per trial.
    pub budget: usize,
    pub variant: DecoderVariant,
    pub channel: Channel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub index: usize,
    pub success: bool,
    pub deletions: usize,
    pub insertions: usize,
    /// `?` entries in the matcher output.
    pub erasures: usize,
    /// Matcher output entries that disagree with the true inner codeword.
    pub substitutions: usize,
    /// Zero coordinates of the true inner codeword.
    pub zero_coords: usize,
    pub runtime: Duration,
}

fn draw_message(rng: &mut ChaCha8Rng, inner: &InnerCode, kind: MessageKind, zeros: usize) -> Vec<Fq> {
    let q = inner.field().order();
    match kind {
        MessageKind::Random => (0..inner.k()).map(|_| Fq(rng.gen_range(0..q))).collect(),
        MessageKind::Sparse => {
            let mut at = sample(rng, inner.n(), zeros).into_vec();
            at.sort_unstable();
            let mut cofactor: Vec<Fq> = (0..inner.k() - zeros).map(|_| Fq(rng.gen_range(0..q))).collect();
            *cofactor.last_mut().expect("k > zeros") = Fq(rng.gen_range(1..q));
            inner.message_vanishing_at(&at, &cofactor).expect("degree fits by construction")
        }
    }
}

/// Runs one trial; `stream` selects the ChaCha stream of `seed`.
pub fn run_trial(point: &Point, cfg: &ExperimentConfig, index: usize) -> Result<TrialRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let half = &point.code.half;
    let inner = half.inner();
    let q = half.field().order();
    let msg = draw_message(&mut rng, inner, cfg.message, cfg.sparse_zeros());
    let truth = inner.encode(&msg)?;
    let pattern_seed: u64 = rng.gen();
    let b = point.budget;

    let (trace, deletions, insertions, runtime) = match point.code.linear() {
        Some(lin) => {
            let cw = lin.encode(&msg)?;
            let pattern = match point.channel {
                Channel::Random => {
                    let d = rng.gen_range(0..=b.min(cw.len()));
                    random_pattern(cw.len(), d, b - d, pattern_seed, uniform_symbol(q))?
                }
                Channel::Attack(s) => adversarial_pattern(&cw, &lin, s, b, pattern_seed)?,
            };
            let y = apply_pattern(&cw, &pattern)?;
            let start = Instant::now();
            let trace = lin.decode_traced(&y, point.variant);
            (trace, pattern.deletions(), pattern.insertions(), start.elapsed())
        }
        None => {
            let cw = half.encode(&msg)?;
            let d = rng.gen_range(0..=b.min(cw.len()));
            let pattern = random_pattern(cw.len(), d, b - d, pattern_seed, uniform_pair(q))?;
            let y = apply_pattern(&cw, &pattern)?;
            let start = Instant::now();
            let trace = half.decode_traced(&y, point.variant);
            (trace, pattern.deletions(), pattern.insertions(), start.elapsed())
        }
    };
    let (erasures, substitutions) = trace.word.diff(&truth);
    Ok(TrialRecord {
        index,
        success: trace.result.as_ref().is_ok_and(|m| *m == msg),
        deletions,
        insertions,
        erasures,
        substitutions,
        zero_coords: truth.iter().filter(|x| x.is_zero()).count(),
        runtime,
    })
}

/// All trials of one point, in index order.
pub fn run_point(point: &Point, cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    (0..cfg.trials).into_par_iter().map(|i| run_trial(point, cfg, i)).collect()
}

pub fn csv_row(point: &Point, records: &[TrialRecord], timing: bool) -> String {
    let trials = records.len();
    let successes = records.iter().filter(|r| r.success).count();
    let mean = |f: &dyn Fn(&TrialRecord) -> f64| {
        if trials == 0 {
            0.0
        } else {
            records.iter().map(f).sum::<f64>() / trials as f64
        }
    };
    let runtime = if timing {
        format!("{:.3}", mean(&|r| r.runtime.as_secs_f64() * 1e3))
    } else {
        String::new()
    };
    format!(
        "{},{},{},{},{},{},{},{:.4},{:.4},{}\n",
        point.delta_label,
        point.code.ell.map_or(String::new(), |l| l.to_string()),
        point.tau_label,
        point.variant,
        point.channel,
        trials,
        successes,
        mean(&|r| r.erasures as f64),
        mean(&|r| r.substitutions as f64),
        runtime
    )
}

/// Every point with its trial records.
pub fn run_detailed(cfg: &ExperimentConfig) -> Result<Vec<(Point, Vec<TrialRecord>)>> {
    cfg.points()?
        .into_iter()
        .map(|p| {
            let r = run_point(&p, cfg)?;
            Ok((p, r))
        })
        .collect()
}

/// Seed header, CSV header, one row per point. Runtime is left empty unless
/// `timing` is set, so untimed output is reproducible byte for byte.
pub fn run_csv(cfg: &ExperimentConfig, timing: bool) -> Result<String> {
    let mut out = cfg.header();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (p, r) in run_detailed(cfg)? {
        out.push_str(&csv_row(&p, &r, timing));
    }
    Ok(out)
}
