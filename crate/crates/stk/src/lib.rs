//! Executable Steinberg-group calculus for simply-laced root systems over
//! Laurent and localized rings.

pub mod cli;
pub mod constants;
pub mod oracle;
pub mod par;
pub mod relgrp;
pub mod ring;
pub mod rootsys;
pub mod torsor;
pub mod word;
