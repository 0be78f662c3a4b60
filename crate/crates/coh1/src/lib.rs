//! Command-line front end, report formats and the reproduction suite for
//! `coh1-core`.

// `!(x > 0.0)` style guards deliberately reject NaN along with the failing range
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod format;
pub mod report;
pub mod verify;
