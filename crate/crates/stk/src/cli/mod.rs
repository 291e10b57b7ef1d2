//! Command-line front end: expression parsing, suite files and reports.

pub mod commands;
pub mod parse;
pub mod suite;

use crate::oracle::OracleError;
use crate::relgrp::RelGrpError;
use crate::ring::RingError;
use crate::rootsys::RootError;
use crate::torsor::TorsorError;
use thiserror::Error;

pub use parse::{format_word, parse_ring, parse_root, parse_word, Context, ParseError, Span};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}", .rendered)]
    Parse { err: ParseError, rendered: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    RelGrp(#[from] RelGrpError),
    #[error(transparent)]
    Torsor(#[from] TorsorError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("suite schema: {0}")]
    Schema(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn parse(err: ParseError, src: &str) -> Self {
        CliError::Parse { rendered: err.render(src), err }
    }
}

/// Process exit status: 0 all pass, 1 something refuted, 2 operational error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    Refuted = 1,
    Error = 2,
}

/// Seed from `STK_SEED` when set, otherwise `fallback`.
pub fn env_seed(fallback: u64) -> u64 {
    std::env::var("STK_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(fallback)
}
