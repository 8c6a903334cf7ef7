//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Criterion 1 is checked literally and fails: besides (1,2,9) and (4,1,15),
//! (4,3,19) is a primitive solution of z^2 = 13x^2 + 17y^2 with z <= 20.
//! That outcome is pinned in `EXPECTED_FAIL`; the process exits nonzero when
//! any criterion's outcome differs from the pinned one.

use std::process::ExitCode;
use std::time::Instant;

use shagate::suites::{Report, Suite, POINT_SEARCH_BOUND};
use shagate_core::genus::SolveOptions;

/// Criteria that fail as stated, with the reason.
const EXPECTED_FAIL: &[(u32, &str)] =
    &[(1, "(4,3,19) also solves z^2 = 13x^2 + 17y^2 with z <= 20")];

/// Minimum number of decomposed instances for criterion 8.
const MIN_PAIRING_INSTANCES: u64 = 200;

struct Criterion {
    id: u32,
    title: &'static str,
    suite: Suite,
    bound: u64,
    extra: fn(&Report) -> Result<(), String>,
}

fn none(_: &Report) -> Result<(), String> {
    Ok(())
}

fn enough_pairing_instances(r: &Report) -> Result<(), String> {
    if r.cases >= MIN_PAIRING_INSTANCES {
        Ok(())
    } else {
        Err(format!(
            "only {} instances, need {MIN_PAIRING_INSTANCES}",
            r.cases
        ))
    }
}

fn has_exhibit(r: &Report) -> Result<(), String> {
    match r.counter("rank0_k2_exhibit") {
        0 => Err("no rank0 k = 2 exhibit".into()),
        _ => Ok(()),
    }
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "n = 221 worked example, exact, < 1 s",
        suite: Suite::Remark1,
        bound: 221,
        extra: none,
    },
    Criterion {
        id: 2,
        title: "six delta conditions and oracle h8(p) = 0 agree, p = 1 mod 8 < 100000",
        suite: Suite::LiTian,
        bound: 100_000,
        extra: none,
    },
    Criterion {
        id: 3,
        title: "rank M_n even, odd n = 1, 3 mod 8 <= 20000",
        suite: Suite::Monsky,
        bound: 20_000,
        extra: none,
    },
    Criterion {
        id: 4,
        title: "s2 = 2 iff h4 = 1 in the family, n <= 100000",
        suite: Suite::Lemma41,
        bound: 100_000,
        extra: none,
    },
    Criterion {
        id: 5,
        title: "|Selmer| = 2^(2k - rank M_n), odd n <= 5000",
        suite: Suite::Selmer,
        bound: 5_000,
        extra: none,
    },
    Criterion {
        id: 6,
        title: "genus h4, h8 equal oracle, n <= 20000",
        suite: Suite::Oracle,
        bound: 20_000,
        extra: none,
    },
    Criterion {
        id: 7,
        title: "8-rank route equals closed-form pairing, n <= 100000",
        suite: Suite::Theorem1,
        bound: 100_000,
        extra: none,
    },
    Criterion {
        id: 8,
        title: "pairing table consistency on >= 200 decompositions",
        suite: Suite::Pairing,
        bound: 100_000,
        extra: enough_pairing_instances,
    },
    Criterion {
        id: 9,
        title: "two-block criterion equals A* criterion, n <= 200000, with a k = 2 exhibit",
        suite: Suite::Cor2,
        bound: 200_000,
        extra: has_exhibit,
    },
    Criterion {
        id: 10,
        title: "no rank0 n < 100000 has a point of height <= 10^4; 5, 41 never rank0",
        suite: Suite::Sanity,
        bound: 100_000,
        extra: none,
    },
];

fn main() -> ExitCode {
    assert_eq!(POINT_SEARCH_BOUND, 10_000);
    let opts = SolveOptions::default();
    let mut unexpected = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let report = c.suite.run(c.bound, &opts);
        let extra = (c.extra)(&report);
        let pass = report.passed() && extra.is_ok();
        let expected = EXPECTED_FAIL.iter().find(|(id, _)| *id == c.id);
        println!(
            "{} criterion {:>2}: {} [{} cases, {} failures, {:.1} s]",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            report.cases,
            report.failures,
            start.elapsed().as_secs_f64(),
        );
        for e in &report.examples {
            println!("     {e}");
        }
        if let Err(e) = extra {
            println!("     {e}");
        }
        for n in &report.notes {
            println!("     note: {n}");
        }
        match (pass, expected) {
            (true, None) | (false, Some(_)) => {
                if let Some((_, why)) = expected {
                    println!("     expected: {why}");
                }
            }
            (true, Some(_)) => {
                println!("     unexpected PASS; update EXPECTED_FAIL");
                unexpected += 1;
            }
            (false, None) => unexpected += 1,
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria differ from the pinned outcome");
        ExitCode::FAILURE
    }
}
