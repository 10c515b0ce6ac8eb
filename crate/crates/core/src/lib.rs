//! Linear and half-linear codes correcting insertions and deletions.
//!
//! The pipeline is: a Reed–Solomon inner code ([`innercode`]) whose symbols
//! are paired with a masked synchronization sequence ([`syncseq`],
//! [`halflinear`]), optionally flattened and padded into a fully linear code
//! ([`linearcode`]). Decoding realigns received symbols against the
//! synchronization sequence ([`matcher`]) and hands the result to the
//! inner errors-and-erasures decoder.

pub mod bounds;
pub mod channel;
pub mod editdist;
pub mod error;
pub mod galois;
pub mod halflinear;
pub mod innercode;
pub mod linearcode;
pub mod matcher;
mod poly;
pub mod syncseq;

pub use error::{Error, Result};
pub use galois::{FieldSpec, Fq};
