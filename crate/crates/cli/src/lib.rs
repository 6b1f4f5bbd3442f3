//! Command-line front end for `vnumkit-core`: input parsing, reports, the
//! verification suite and the survey harness.

pub mod generate;
pub mod input;
pub mod record;
pub mod report;
pub mod suite;
pub mod survey;
