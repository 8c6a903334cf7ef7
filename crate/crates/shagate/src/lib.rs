//! Front end for `shagate-core`: JSON rendering, range scans and the
//! cross-check suites behind `shagate verify`.

pub mod json;
pub mod scan;
pub mod suites;
