//! Code description files: `key=value` lines with the sync sequence inline.
//!
//! Keys: `p`, `m`, `n`, `k`, `tau`, `sync_mode`, `sync` (the symbols), and
//! optionally `ell`. Without `ell` the file describes a half-linear code.

use linindel_core::halflinear::HalfLinearCode;
use linindel_core::innercode::InnerCode;
use linindel_core::linearcode::LinearIndelCode;
use linindel_core::syncseq::{gen_self_matching, SyncSequence, VerificationMode, DEFAULT_ATTEMPTS};
use linindel_core::{FieldSpec, Result};

use crate::config::KeyValues;
use crate::textio::{format_symbols, parse_symbols};

#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    pub half: HalfLinearCode,
    pub ell: Option<usize>,
}

/// Parses `auto` as the length-dependent default.
pub fn parse_mode(s: &str, n: usize, seed: u64) -> Result<VerificationMode> {
    if s == "auto" {
        Ok(VerificationMode::default_for(n, seed))
    } else {
        s.parse()
    }
}

impl CodeSpec {
    /// Generates the sync sequence from `sync_seed` and assembles the code.
    #[allow(clippy::too_many_arguments)]
    pub fn generate(
        p: u32,
        m: u32,
        n: usize,
        k: usize,
        tau: f64,
        mode: VerificationMode,
        sync_seed: u64,
        ell: Option<usize>,
    ) -> Result<Self> {
        let field = FieldSpec::new(p, m)?;
        let inner = InnerCode::new(&field, n, k)?;
        let sync = gen_self_matching(&field, n, tau, mode, sync_seed, DEFAULT_ATTEMPTS)?;
        Self::assemble(inner, sync, ell)
    }

    fn assemble(inner: InnerCode, sync: SyncSequence, ell: Option<usize>) -> Result<Self> {
        let half = HalfLinearCode::new(inner, sync)?;
        if let Some(l) = ell {
            LinearIndelCode::new(half.clone(), l)?;
        }
        Ok(CodeSpec { half, ell })
    }

    pub fn field(&self) -> &FieldSpec {
        self.half.field()
    }

    pub fn linear(&self) -> Option<LinearIndelCode> {
        self.ell.map(|l| LinearIndelCode::new(self.half.clone(), l).expect("validated at construction"))
    }

    pub fn to_text(&self) -> String {
        let f = self.field();
        let mut kv = KeyValues::default();
        kv.set("p", f.p());
        kv.set("m", f.m());
        kv.set("n", self.half.n());
        kv.set("k", self.half.k());
        kv.set("tau", self.half.sync().tau());
        kv.set("sync_mode", self.half.sync().mode());
        if let Some(l) = self.ell {
            kv.set("ell", l);
        }
        kv.set("sync", format_symbols(self.half.sync().symbols()).trim_end());
        kv.to_text()
    }

    /// Loads and re-verifies a description.
    pub fn from_text(text: &str) -> Result<Self> {
        let kv = KeyValues::parse(text)?;
        let field = FieldSpec::new(kv.parsed("p")?, kv.parsed("m")?)?;
        let inner = InnerCode::new(&field, kv.parsed("n")?, kv.parsed("k")?)?;
        let tau: f64 = kv.parsed("tau")?;
        let mode: VerificationMode = kv.parsed("sync_mode")?;
        let symbols = parse_symbols(&field, kv.require("sync")?)?;
        let sync = SyncSequence::verified(symbols, tau, mode)?;
        let ell = match kv.get("ell") {
            Some(_) => Some(kv.parsed("ell")?),
            None => None,
        };
        Self::assemble(inner, sync, ell)
    }
}
