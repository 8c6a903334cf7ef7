//! JSON rendering of kernel results.

use serde_json::{json, Value};
use shagate_core::cassels::{
    CasselsSolutions, MainTheoremCheck, PairingMatrix, Theorem1Pairing, TwoBlockCheck,
};
use shagate_core::classgroup::{ClassGroupSnapshot, TwoPowerRanks};
use shagate_core::classify::{Classification, DecompositionAttempt, Verdict};
use shagate_core::genus::{HigherRedei, NormSolution};
use shagate_core::selmer::{BasisCase, SelmerTriple};
use shagate_core::{BitMatrix, BitVector};

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

/// A number when it fits in `i64`, else its decimal string.
pub fn int(x: i128) -> Value {
    i64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

pub fn matrix(m: &BitMatrix) -> Value {
    json!(m.to_rows())
}

pub fn vector(v: &BitVector) -> Value {
    json!(v.to_bits())
}

pub fn diagonal(m: &BitMatrix) -> Value {
    json!((0..m.rows())
        .map(|i| u8::from(m.bit(i, i)))
        .collect::<Vec<_>>())
}

pub fn norm_solution(s: &NormSolution) -> Value {
    json!({
        "r": s.r,
        "d": s.d,
        "d_prime": s.d_prime,
        "a": s.a,
        "b": s.b,
        "c": s.c,
    })
}

pub fn triple(t: &SelmerTriple) -> Value {
    json!([t.d1, t.d2, t.d3])
}

pub fn basis_case(c: BasisCase) -> &'static str {
    match c {
        BasisCase::RankKMinus2 => "rank_k_minus_2",
        BasisCase::RankKMinus1 => "rank_k_minus_1",
    }
}

pub fn ranks(r: &TwoPowerRanks) -> Value {
    json!({ "h2": r.h2, "h4": r.h4, "h8": r.h8 })
}

pub fn verdict(v: &Verdict) -> Value {
    match v {
        Verdict::Rank0Sha { k } => json!({ "tag": v.as_str(), "k": k }),
        Verdict::CriterionFailed { criterion } => {
            json!({ "tag": v.as_str(), "criterion": criterion.as_str() })
        }
        Verdict::NotApplicable { reason } => json!({ "tag": v.as_str(), "reason": reason }),
    }
}

pub fn theorem1(p: &Theorem1Pairing) -> Value {
    json!({
        "case": basis_case(p.case),
        "d": p.d,
        "solution": norm_solution(&p.solution),
        "value": p.value,
        "nondegenerate": p.nondegenerate(),
    })
}

pub fn main_check(c: &MainTheoremCheck) -> Value {
    json!({
        "a_star": matrix(&c.a_star),
        "d_star": diagonal(&c.d_star),
        "h8_blocks": c.h8_blocks,
        "symmetric": c.symmetric,
        "nonsingular": c.nonsingular,
        "holds": c.holds(),
    })
}

pub fn two_block(c: &TwoBlockCheck) -> Value {
    json!({ "q12": c.q12, "q21": c.q21, "h8": c.h8, "holds": c.holds() })
}

fn attempt(a: &DecompositionAttempt) -> Value {
    let r = &a.report;
    json!({
        "blocks": a.blocks,
        "k": a.k(),
        "check": main_check(&a.check),
        "block_ranks": {
            "blocks_h8_zero": r.blocks_h8_zero,
            "h8_n": r.h8_n,
            "two_in_4a": r.two_in_4a,
            "eight_rank_condition": r.eight_rank_condition,
            "a_star_zero": r.a_star_zero,
            "hypotheses_hold": r.hypotheses_hold(),
            "disagreement": r.disagreement(),
        },
    })
}

pub fn classification(c: &Classification) -> Value {
    let eight_rank = c.eight_rank.as_ref().map(|e| {
        json!({
            "d_n": e.d_n,
            "holds": e.holds,
            "pairing": theorem1(&e.pairing),
            "delta_n": e.delta,
        })
    });
    let oracle = c
        .oracle
        .as_ref()
        .map(|o| json!({ "ranks": ranks(&o.ranks), "agrees": o.agrees }));
    json!({
        "schema_version": SCHEMA_VERSION,
        "n": c.n,
        "family": c.family.as_str(),
        "s2": c.s2,
        "h4": c.h4,
        "h8": c.h8,
        "verdict": verdict(&c.verdict),
        "criterion": c.criterion.map(|x| x.as_str()),
        "decomposition": c.decomposition,
        "eight_rank": eight_rank,
        "attempts": c.attempts.iter().map(attempt).collect::<Vec<_>>(),
        "oracle": oracle,
    })
}

pub fn higher_redei(r: &HigherRedei) -> Value {
    json!({
        "blocks": r.decomposition().values(),
        "solutions": r.solutions().iter().map(norm_solution).collect::<Vec<_>>(),
        "c_values": r.c_values(),
        "a_star": matrix(r.a_star()),
        "b_star": vector(r.b_star()),
        "matrix": matrix(&r.matrix()),
        "h8": r.h8(),
    })
}

pub fn cassels_solutions(s: &CasselsSolutions) -> Value {
    let blocks: Vec<Value> = s
        .blocks()
        .iter()
        .map(|b| {
            json!({
                "d": b.d(),
                "d_prime": b.d_prime(),
                "c": { "a": b.c.a, "b": b.c.b, "c": b.c.c },
                "gamma": {
                    "alpha": int(b.gamma.alpha),
                    "beta": int(b.gamma.beta),
                    "gamma": int(b.gamma.gamma),
                },
                "cbar": {
                    "abar": int(b.cbar.abar),
                    "bbar": int(b.cbar.bbar),
                    "cbar": int(b.cbar.cbar),
                },
            })
        })
        .collect();
    json!(blocks)
}

pub fn pairing(p: &PairingMatrix) -> Value {
    json!({
        "matrix": matrix(&p.matrix),
        "a_star": matrix(&p.a_star),
        "psi": matrix(&p.psi),
        "d_star": diagonal(&p.d_star),
        "delta": p.delta,
        "block_form": matrix(&p.block_form),
        "consistent": p.consistent(),
        "nondegenerate": p.nondegenerate(),
    })
}

pub fn class_group(g: &ClassGroupSnapshot, r: &TwoPowerRanks, factors: &[u64]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "n": g.n(),
        "discriminant": g.discriminant(),
        "order": g.order(),
        "invariant_factors": factors,
        "ranks": ranks(r),
        "forms": g.forms().iter().map(|f| json!([f.a, f.b, f.c])).collect::<Vec<_>>(),
    })
}
