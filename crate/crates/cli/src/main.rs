use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use linindel_core::bounds::{find_confusable_pair, half_singleton_bound, SubfieldLinearCode};
use linindel_core::channel::{
    adversarial_pattern, apply_pattern, random_pattern, uniform_pair, uniform_symbol, IndelPattern, Strategy,
};
use linindel_core::halflinear::{DecoderVariant, PairSymbol};
use linindel_core::syncseq::{gen_self_matching, verify_self_matching, Verdict, VerificationMode};
use linindel_core::{Error, Fq};
use linindel_cli::codefile::{parse_mode, CodeSpec};
use linindel_cli::config::KeyValues;
use linindel_cli::experiment::{run_csv, ExperimentConfig};
use linindel_cli::textio::{format_pairs, format_symbols, parse_fraction, parse_pairs, parse_symbols, to_f64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED_ENV: &str = "LININDEL_SEED";

/// Exit status for a check that ran and failed.
const EXIT_CHECK: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_DECODE: u8 = 3;

#[derive(Parser)]
#[command(name = "linindel", version, about = "Linear insertion/deletion codes: construction, channels, experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a self-matching sync sequence
    GenSync(GenSync),
    /// Check a sync sequence file
    VerifySync(VerifySync),
    /// Write a code description file
    MakeCode(MakeCode),
    /// Encode a message
    Encode(Encode),
    /// Apply indels to a word
    Corrupt(Corrupt),
    /// Decode a received word
    Decode(Decode),
    /// Encode, corrupt and decode one message
    Roundtrip(Roundtrip),
    /// Run a seeded sweep and print CSV
    Experiment(Experiment),
    /// Half-Singleton bound and single-deletion witness search
    Bound(Bound),
}

#[derive(Args)]
struct FieldArgs {
    /// Field characteristic
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Extension degree
    #[arg(long, default_value_t = 8)]
    m: u32,
}

#[derive(Args)]
struct GenSync {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    tau: f64,
    /// exhaustive, sampled[:COUNT:SEED], or auto
    #[arg(long, default_value = "auto")]
    mode: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = linindel_core::syncseq::DEFAULT_ATTEMPTS)]
    attempts: u32,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifySync {
    #[command(flatten)]
    field: FieldArgs,
    /// Sync file, `-` for stdin
    input: PathBuf,
    /// Check against this tau instead of the one in the header
    #[arg(long)]
    tau: Option<f64>,
    /// Check in this mode instead of the one in the header
    #[arg(long)]
    mode: Option<String>,
}

#[derive(Args)]
struct MakeCode {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    tau: f64,
    /// Padding period; omit for a half-linear code
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, default_value = "auto")]
    mode: String,
    /// Seed of the sync sequence
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MessageArgs {
    /// Message symbols, space separated
    #[arg(long, conflicts_with = "message_file")]
    message: Option<String>,
    #[arg(long)]
    message_file: Option<PathBuf>,
}

#[derive(Args)]
struct Encode {
    #[arg(long)]
    code: PathBuf,
    #[command(flatten)]
    msg: MessageArgs,
    /// Draw a uniform message from this seed instead
    #[arg(long)]
    random: Option<u64>,
    /// Emit half-linear pairs even when the code has a padding period
    #[arg(long)]
    half: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ChannelArgs {
    #[arg(long)]
    deletions: Option<usize>,
    #[arg(long)]
    insertions: Option<usize>,
    /// window-parity, window-desync or delimiter-delete
    #[arg(long, conflicts_with_all = ["deletions", "insertions"])]
    strategy: Option<Strategy>,
    /// Indel budget of the strategy
    #[arg(long, requires = "strategy")]
    budget: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct Corrupt {
    #[arg(long)]
    code: PathBuf,
    /// Word file, `-` for stdin
    input: PathBuf,
    /// Apply this pattern file instead of drawing one
    #[arg(long, conflicts_with_all = ["deletions", "insertions", "strategy"])]
    pattern: Option<PathBuf>,
    #[command(flatten)]
    channel: ChannelArgs,
    /// Input is a half-linear pair sequence
    #[arg(long)]
    half: bool,
    #[arg(long)]
    save_pattern: Option<PathBuf>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Decode {
    #[arg(long)]
    code: PathBuf,
    /// Received word, `-` for stdin
    input: PathBuf,
    #[arg(long, default_value = "improved")]
    variant: DecoderVariant,
    /// Input is a half-linear pair sequence
    #[arg(long)]
    half: bool,
}

#[derive(Args)]
struct Roundtrip {
    #[arg(long)]
    code: PathBuf,
    #[command(flatten)]
    msg: MessageArgs,
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long, default_value = "improved")]
    variant: DecoderVariant,
    /// Use the half-linear layer even when the code has a padding period
    #[arg(long)]
    half: bool,
}

#[derive(Args)]
struct Experiment {
    /// key=value configuration; unset keys use the reference configuration
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one key, e.g. --set delta=0.05,0.1
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Fill the mean_runtime_ms column (output is then not reproducible)
    #[arg(long)]
    timing: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Bound {
    #[arg(long)]
    n: Option<usize>,
    /// Fraction of correctable indels, e.g. 0.1 or 1/10
    #[arg(long, default_value = "0")]
    delta: String,
    /// Subfield-linear code file to search for a single-deletion witness
    #[arg(long)]
    code: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Config(String),
    Decode(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DecodeFailure(_) => Failure::Decode(e.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type Out = Result<(), Failure>;

fn default_seed(explicit: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Config(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(1),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Out {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Config(format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_code(path: &Path) -> Result<CodeSpec, Failure> {
    Ok(CodeSpec::from_text(&read_input(path)?)?)
}

fn read_message(code: &CodeSpec, args: &MessageArgs, random: Option<u64>) -> Result<Vec<Fq>, Failure> {
    let text = match (&args.message, &args.message_file) {
        (Some(m), _) => m.clone(),
        (None, Some(p)) => read_input(p)?,
        (None, None) => {
            let seed = default_seed(random)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = code.field().order();
            return Ok((0..code.half.k()).map(|_| Fq(rng.gen_range(0..q))).collect());
        }
    };
    let msg = parse_symbols(code.field(), &text)?;
    if msg.len() != code.half.k() {
        return Err(Failure::Config(format!("message has {} symbols, the code takes {}", msg.len(), code.half.k())));
    }
    Ok(msg)
}

/// Word of either layer.
enum Word {
    Linear(Vec<Fq>),
    Half(Vec<PairSymbol>),
}

impl Word {
    fn text(&self) -> String {
        match self {
            Word::Linear(v) => format_symbols(v),
            Word::Half(v) => format_pairs(v),
        }
    }

    fn len(&self) -> usize {
        match self {
            Word::Linear(v) => v.len(),
            Word::Half(v) => v.len(),
        }
    }
}

fn use_half(code: &CodeSpec, half: bool) -> bool {
    half || code.ell.is_none()
}

fn encode_word(code: &CodeSpec, msg: &[Fq], half: bool) -> Result<Word, Failure> {
    Ok(match (use_half(code, half), code.linear()) {
        (false, Some(lin)) => Word::Linear(lin.encode(msg)?),
        _ => Word::Half(code.half.encode(msg)?),
    })
}

fn parse_word(code: &CodeSpec, text: &str, half: bool) -> Result<Word, Failure> {
    Ok(if use_half(code, half) {
        Word::Half(parse_pairs(code.field(), text)?)
    } else {
        Word::Linear(parse_symbols(code.field(), text)?)
    })
}

/// Draws or builds the pattern described by `ch` and applies it.
fn corrupt_word(code: &CodeSpec, word: &Word, ch: &ChannelArgs) -> Result<(Word, String, usize, usize), Failure> {
    let seed = default_seed(ch.seed)?;
    let q = code.field().order();
    let (d, i) = (ch.deletions.unwrap_or(0), ch.insertions.unwrap_or(0));
    match word {
        Word::Linear(w) => {
            let p = match ch.strategy {
                Some(s) => {
                    let lin = code.linear().expect("linear word implies a padding period");
                    adversarial_pattern(w, &lin, s, ch.budget.unwrap_or(s.unit_cost()), seed)?
                }
                None => random_pattern(w.len(), d, i, seed, uniform_symbol(q))?,
            };
            Ok((Word::Linear(apply_pattern(w, &p)?), p.to_text(), p.deletions(), p.insertions()))
        }
        Word::Half(w) => {
            if ch.strategy.is_some() {
                return Err(Failure::Config("attack strategies need the padded linear code".into()));
            }
            let p = random_pattern(w.len(), d, i, seed, uniform_pair(q))?;
            Ok((Word::Half(apply_pattern(w, &p)?), p.to_text(), p.deletions(), p.insertions()))
        }
    }
}

fn gen_sync(a: GenSync) -> Out {
    let field = linindel_core::FieldSpec::new(a.field.p, a.field.m)?;
    let seed = default_seed(a.seed)?;
    let mode = parse_mode(&a.mode, a.n, seed)?;
    let s = gen_self_matching(&field, a.n, a.tau, mode, seed, a.attempts)?;
    emit(&a.out, &format!("# seed={seed}\n{}", s.to_text()))
}

fn verify_sync(a: VerifySync) -> Out {
    let field = linindel_core::FieldSpec::new(a.field.p, a.field.m)?;
    let text = read_input(&a.input)?;
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap_or_default().split_whitespace().collect();
    let [n, tau, mode] = header[..] else {
        return Err(Failure::Config("sync file needs the header `n tau mode`".into()));
    };
    let symbols = parse_symbols(&field, &lines.collect::<Vec<_>>().join(" "))?;
    if n.parse::<usize>().ok() != Some(symbols.len()) {
        return Err(Failure::Config(format!("header length {n} but {} symbols", symbols.len())));
    }
    let tau = match a.tau {
        Some(t) => t,
        None => tau.parse().map_err(|_| Failure::Config(format!("bad tau {tau:?}")))?,
    };
    let mode: VerificationMode = a.mode.as_deref().unwrap_or(mode).parse()?;
    if symbols.iter().any(|s| s.is_zero()) {
        return Err(Failure::Check("sync contains a zero symbol".into()));
    }
    match verify_self_matching(&symbols, tau, mode)? {
        Verdict::Ok => emit(&None, "ok\n"),
        Verdict::Violation(v) => Err(Failure::Check(format!("violation {} {} {}", v.i, v.j, v.k))),
    }
}

fn make_code(a: MakeCode) -> Out {
    let seed = default_seed(a.seed)?;
    let mode = parse_mode(&a.mode, a.n, seed)?;
    let spec = CodeSpec::generate(a.field.p, a.field.m, a.n, a.k, a.tau, mode, seed, a.ell)?;
    emit(&a.out, &spec.to_text())
}

fn encode(a: Encode) -> Out {
    let code = load_code(&a.code)?;
    let msg = read_message(&code, &a.msg, a.random)?;
    emit(&a.out, &encode_word(&code, &msg, a.half)?.text())
}

fn corrupt(a: Corrupt) -> Out {
    let code = load_code(&a.code)?;
    let word = parse_word(&code, &read_input(&a.input)?, a.half)?;
    let (out, pattern) = match &a.pattern {
        Some(path) => {
            let text = read_input(path)?;
            let out = match &word {
                Word::Linear(w) => Word::Linear(apply_pattern(w, &IndelPattern::<Fq>::from_text(&text)?)?),
                Word::Half(w) => Word::Half(apply_pattern(w, &IndelPattern::<PairSymbol>::from_text(&text)?)?),
            };
            (out, text)
        }
        None => {
            let (out, text, _, _) = corrupt_word(&code, &word, &a.channel)?;
            (out, text)
        }
    };
    if let Some(p) = &a.save_pattern {
        emit(&Some(p.clone()), &pattern)?;
    }
    emit(&a.out, &out.text())
}

fn decode(a: Decode) -> Out {
    let code = load_code(&a.code)?;
    let msg = match parse_word(&code, &read_input(&a.input)?, a.half)? {
        Word::Linear(y) => code.linear().expect("linear word").decode_traced(&y, a.variant).result?,
        Word::Half(y) => code.half.decode(&y, a.variant)?,
    };
    emit(&None, &format_symbols(&msg))
}

fn roundtrip(a: Roundtrip) -> Out {
    let code = load_code(&a.code)?;
    let msg = read_message(&code, &a.msg, a.channel.seed)?;
    let word = encode_word(&code, &msg, a.half)?;
    let (rx, _, d, i) = corrupt_word(&code, &word, &a.channel)?;
    let trace = match &rx {
        Word::Linear(y) => code.linear().expect("linear word").decode_traced(y, a.variant),
        Word::Half(y) => code.half.decode_traced(y, a.variant),
    };
    let truth = code.half.inner().encode(&msg)?;
    let (e, t) = trace.word.diff(&truth);
    let ok = trace.result.as_ref().is_ok_and(|m| *m == msg);
    let report = format!(
        "length: {} -> {}\ndeletions: {d}\ninsertions: {i}\nerasures: {e}\nsubstitutions: {t}\nresult: {}\n",
        word.len(),
        rx.len(),
        if ok { "success" } else { "failure" }
    );
    emit(&None, &report)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Decode(match trace.result {
            Err(err) => err.to_string(),
            Ok(_) => "decoded to a different message".into(),
        }))
    }
}

fn experiment(a: Experiment) -> Out {
    let mut kv = match &a.config {
        Some(p) => KeyValues::parse(&read_input(p)?)?,
        None => KeyValues::default(),
    };
    if kv.get("seed").is_none() {
        kv.set("seed", default_seed(None)?);
    }
    for item in &a.overrides {
        kv.assign(item)?;
    }
    if let Some(t) = a.trials {
        kv.set("trials", t);
    }
    if let Some(s) = a.seed {
        kv.set("seed", s);
    }
    let cfg = ExperimentConfig::from_kv(&kv)?;
    emit(&a.out, &run_csv(&cfg, a.timing)?)
}

fn bound(a: Bound) -> Out {
    let code = match &a.code {
        Some(p) => Some(SubfieldLinearCode::from_text(&read_input(p)?)?),
        None => None,
    };
    let n = match (a.n, &code) {
        (Some(n), _) => n,
        (None, Some(c)) => c.n(),
        (None, None) => return Err(Failure::Config("bound needs --n or --code".into())),
    };
    let delta = parse_fraction(&a.delta)?;
    let b = half_singleton_bound(n, delta)?;
    let mut out = format!("half_singleton_bound: {} ({b})\n", to_f64(b));
    if let Some(c) = &code {
        out.push_str(&format!("rate: {} ({})\n", to_f64(c.rate()), c.rate()));
        out.push_str(&format!("exceeds_bound: {}\n", if c.rate() > b { "yes" } else { "no" }));
        match find_confusable_pair(c) {
            None => out.push_str("witness: none\n"),
            Some(w) => {
                let sym = |v: &[Fq]| {
                    c.to_symbols(v).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
                };
                out.push_str(&format!(
                    "witness: {:?}\nu: {}\nu_prime: {}\nx: {}\nc: {}\nc_prime: {}\nverified: {}\n",
                    w.kind,
                    w.u + 1,
                    w.u_prime + 1,
                    sym(&w.x),
                    sym(&w.c),
                    sym(&w.c_prime),
                    w.verify(c)
                ));
            }
        }
    }
    emit(&None, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::GenSync(a) => gen_sync(a),
        Cmd::VerifySync(a) => verify_sync(a),
        Cmd::MakeCode(a) => make_code(a),
        Cmd::Encode(a) => encode(a),
        Cmd::Corrupt(a) => corrupt(a),
        Cmd::Decode(a) => decode(a),
        Cmd::Roundtrip(a) => roundtrip(a),
        Cmd::Experiment(a) => experiment(a),
        Cmd::Bound(a) => bound(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Config(m) => (EXIT_CONFIG, m),
                Failure::Decode(m) => (EXIT_DECODE, format!("decode failed: {m}")),
                Failure::Check(m) => (EXIT_CHECK, m),
            };
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::from(code)
        }
    }
}
