//! Range scans: classify every square-free `n` in a range that passes a
//! congruence filter, in parallel, and emit records in increasing `n`.

use std::io::Write;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde_json::{json, Value};
use shagate_core::classify::{classify, Classification, ClassifyOptions, Family, Verdict};
use shagate_core::ntheory::factor_squarefree;
use shagate_core::{Error, SquarefreeInteger};

use crate::json::SCHEMA_VERSION;

/// Which `n` a scan visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Filter {
    /// `n = 1 mod 8` with all primes `1 mod 4` (includes all-1-mod-8).
    #[value(name = "t1-family")]
    T1Family,
    /// Every prime `1 mod 8`.
    #[value(name = "all-1-mod-8")]
    AllOneMod8,
    /// Every square-free `n`.
    Any,
}

impl Filter {
    pub fn admits(self, n: &SquarefreeInteger) -> bool {
        match self {
            Self::T1Family => Family::of(n).in_t1(),
            Self::AllOneMod8 => Family::of(n) == Family::AllOneMod8,
            Self::Any => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

/// One scanned `n`.
#[derive(Clone, Debug)]
pub struct ScanRecord {
    pub n: u64,
    pub outcome: Result<Classification, Error>,
    pub micros: Option<u128>,
}

impl ScanRecord {
    pub fn verdict_tag(&self) -> &'static str {
        match &self.outcome {
            Ok(c) => c.verdict.as_str(),
            Err(_) => "error",
        }
    }

    pub fn k(&self) -> Option<u32> {
        match &self.outcome {
            Ok(Classification {
                verdict: Verdict::Rank0Sha { k },
                ..
            }) => Some(*k),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "verdict": self.verdict_tag(),
        });
        let m = v.as_object_mut().expect("object literal");
        match &self.outcome {
            Ok(c) => {
                m.insert("family".into(), json!(c.family.as_str()));
                m.insert("s2".into(), json!(c.s2));
                m.insert("h4".into(), json!(c.h4));
                m.insert("h8".into(), json!(c.h8));
                m.insert("k".into(), json!(self.k()));
                m.insert("criterion".into(), json!(c.criterion.map(|x| x.as_str())));
                m.insert("decomposition".into(), json!(c.decomposition));
            }
            Err(e) => {
                m.insert("error".into(), json!(e.to_string()));
            }
        }
        if let Some(t) = self.micros {
            m.insert("micros".into(), json!(t));
        }
        v
    }

    pub fn csv_header(timing: bool) -> &'static str {
        if timing {
            "schema_version,n,family,s2,h4,h8,verdict,k,criterion,decomposition,micros"
        } else {
            "schema_version,n,family,s2,h4,h8,verdict,k,criterion,decomposition"
        }
    }

    pub fn to_csv(&self) -> String {
        fn opt<T: ToString>(x: Option<T>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        let (family, s2, h4, h8, criterion, dec) = match &self.outcome {
            Ok(c) => (
                c.family.as_str().to_string(),
                opt(c.s2),
                opt(c.h4),
                opt(c.h8),
                opt(c.criterion.map(|x| x.as_str())),
                c.decomposition
                    .as_ref()
                    .map(|d| d.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default(),
            ),
            Err(_) => Default::default(),
        };
        let mut line = format!(
            "{SCHEMA_VERSION},{},{family},{s2},{h4},{h8},{},{},{criterion},{dec}",
            self.n,
            self.verdict_tag(),
            opt(self.k()),
        );
        if let Some(t) = self.micros {
            line.push_str(&format!(",{t}"));
        }
        line
    }
}

pub struct ScanOptions {
    pub from: u64,
    pub to: u64,
    pub filter: Filter,
    pub classify: ClassifyOptions,
    pub timing: bool,
}

const CHUNK: u64 = 2048;

fn scan_one(n: &SquarefreeInteger, opts: &ScanOptions) -> ScanRecord {
    let start = opts.timing.then(Instant::now);
    let outcome = classify(n, &opts.classify);
    ScanRecord {
        n: n.value(),
        outcome,
        micros: start.map(|s| s.elapsed().as_micros()),
    }
}

/// The records of `[from, to]` in chunks, each classified in parallel on
/// the current rayon pool and handed to `sink` in increasing `n`.
pub fn scan(opts: &ScanOptions, mut sink: impl FnMut(&ScanRecord) -> Result<()>) -> Result<()> {
    if opts.from == 0 || opts.from > opts.to {
        bail!("need 1 <= from <= to, got {}..{}", opts.from, opts.to);
    }
    let mut lo = opts.from;
    loop {
        let hi = lo.saturating_add(CHUNK - 1).min(opts.to);
        let records: Vec<ScanRecord> = (lo..=hi)
            .into_par_iter()
            .filter_map(|n| factor_squarefree(n).ok())
            .filter(|n| opts.filter.admits(n))
            .map(|n| scan_one(&n, opts))
            .collect();
        for r in &records {
            sink(r)?;
        }
        if hi == opts.to {
            return Ok(());
        }
        lo = hi + 1;
    }
}

/// Runs a scan, writing records to `out`. Returns the number of records
/// whose classification failed.
pub fn write_scan(opts: &ScanOptions, format: Format, out: &mut impl Write) -> Result<usize> {
    let mut errors = 0;
    if format == Format::Csv {
        writeln!(out, "{}", ScanRecord::csv_header(opts.timing)).context("writing output")?;
    }
    scan(opts, |r| {
        if r.outcome.is_err() {
            errors += 1;
        }
        match format {
            Format::Jsonl => writeln!(out, "{}", r.to_json()),
            Format::Csv => writeln!(out, "{}", r.to_csv()),
        }
        .context("writing output")
    })?;
    out.flush().context("writing output")?;
    Ok(errors)
}
