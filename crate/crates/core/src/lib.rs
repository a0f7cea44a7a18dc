//! Mining frequent opinion patterns from evidential databases.
//!
//! An evidential database stores one mass function (BBA) per cell. Items are
//! whole BBAs rather than fragments of them, and a pattern's support is the
//! row-average of the product of per-item commitment scores. Support is
//! anti-monotone, so mining proceeds level-wise with Apriori pruning.
//!
//! The crate also carries the survey pipeline used to assess data sources:
//! expert answers become certain BBAs, confidences discount them, and the
//! best full-coverage pattern yields a reliability verdict.

pub mod edb;
pub mod error;
pub mod evidence;
pub mod ingest;
pub mod miner;
pub mod oracle;
pub mod reliability;
pub mod samples;
pub mod synth;

pub use edb::{AttributeSchema, EvidentialDatabase, PlProjection};
pub use error::{Error, Result};
pub use evidence::{
    commitment, discount, pl_leq, plausibility, FrameOfDiscernment, MassFunction,
    PlausibilityVector, SubsetMask,
};
pub use miner::{opminer, support, Item, MinedPattern, MinerConfig, Pattern};
pub use reliability::{assess_source, AssessConfig, SourceReport, Verdict};
