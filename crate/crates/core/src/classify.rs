//! The decision pipeline: which criterion applies to `n`, what it says, and
//! the evidence behind it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cassels::{check_mainthm2, theorem1_pairing, MainTheoremCheck, Theorem1Pairing};
use crate::classgroup::{class_group, TwoPowerRanks};
use crate::error::{internal, Result};
use crate::genus::{Decomposition, DivisorElement, Genus, SearchOrder, SolveOptions};
use crate::ntheory::{delta_n, gcd_i128, is_square, legendre, SquarefreeInteger};
use crate::selmer::s2;

/// Above this many components of the non-residue graph only the single
/// block is proposed.
pub const MAX_DECOMPOSITION_COMPONENTS: usize = 10;

/// Where `n` sits relative to the criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Every prime is `1 mod 8`.
    AllOneMod8,
    /// `n = 1 mod 8` and every prime is `1 mod 4`, not all `1 mod 8`.
    T1,
    /// Neither.
    OutOfFamily,
}

impl Family {
    /// The family of `n`.
    pub fn of(n: &SquarefreeInteger) -> Self {
        if n.all_primes_congruent(1, 8) && n.value() > 1 {
            Self::AllOneMod8
        } else if n.value() % 8 == 1 && n.all_primes_congruent(1, 4) && n.value() > 1 {
            Self::T1
        } else {
            Self::OutOfFamily
        }
    }

    /// `n = 1 mod 8` with all primes `1 mod 4`; includes [`Self::AllOneMod8`].
    pub fn in_t1(self) -> bool {
        self != Self::OutOfFamily
    }

    /// Stable tag.
    pub fn as_str(self) -> &'static str {
        match self {
            Self::AllOneMod8 => "all-1-mod-8",
            Self::T1 => "t1-family",
            Self::OutOfFamily => "out-of-family",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The criteria the pipeline can apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// `h4(n) = 1` and `h8(n) = (d(n) - 1)/4 mod 2`.
    EightRank,
    /// A decomposition with `A*` symmetric and `A* + D*` nonsingular.
    HigherRedei,
}

impl Criterion {
    /// Stable tag.
    pub fn as_str(self) -> &'static str {
        match self {
            Self::EightRank => "eight_rank",
            Self::HigherRedei => "higher_redei",
        }
    }
}

/// Outcome of the pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Rank 0 and `Sha[2^inf] = (Z/2)^{2k}`.
    Rank0Sha {
        /// `k`.
        k: u32,
    },
    /// The criterion applied and failed. For [`Criterion::EightRank`] this
    /// means NOT(rank 0 and `Sha[2^inf] = (Z/2)^2`); for
    /// [`Criterion::HigherRedei`] nothing follows.
    CriterionFailed {
        /// Which criterion.
        criterion: Criterion,
    },
    /// No criterion applies.
    NotApplicable {
        /// The failed precondition.
        reason: String,
    },
}

impl Verdict {
    /// Stable tag.
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Rank0Sha { .. } => "rank0_sha_2_2k",
            Self::CriterionFailed { .. } => "criterion_failed",
            Self::NotApplicable { .. } => "not_applicable",
        }
    }
}

/// Evidence from the single-block route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EightRankEvidence {
    /// `d(n)`.
    pub d_n: u64,
    /// `h8(n) = (d(n) - 1)/4 mod 2`.
    pub holds: bool,
    /// The closed-form pairing from a solution found in reversed order.
    pub pairing: Theorem1Pairing,
    /// `delta_n` when every prime is `1 mod 8`.
    pub delta: Option<u8>,
}

/// Hypotheses of the `h8(d_i) = 0` criterion for a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockRankReport {
    /// `h8(d_i) = 0` for every block.
    pub blocks_h8_zero: bool,
    /// `h8(n)`.
    pub h8_n: u32,
    /// Whether `[(2, sqrt(-n))]` lies in `4A`.
    pub two_in_4a: bool,
    /// `h8(n) = k`, or `h8(n) = k - 1` with `[(2, sqrt(-n))]` outside `4A`.
    pub eight_rank_condition: bool,
    /// `A* = 0`, checked directly.
    pub a_star_zero: bool,
}

impl BlockRankReport {
    /// All hypotheses hold.
    pub fn hypotheses_hold(&self) -> bool {
        self.blocks_h8_zero && self.eight_rank_condition
    }

    /// The hypotheses hold but `A*` is not zero.
    pub fn disagreement(&self) -> bool {
        self.eight_rank_condition && !self.a_star_zero
    }
}

/// One decomposition tried by the pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionAttempt {
    /// Block values.
    pub blocks: Vec<u64>,
    /// The `A*` conditions.
    pub check: MainTheoremCheck,
    /// The `h8(d_i) = 0` hypotheses.
    pub report: BlockRankReport,
}

impl DecompositionAttempt {
    /// Number of blocks.
    pub fn k(&self) -> u32 {
        self.blocks.len() as u32
    }
}

/// 2-power ranks from the class-group oracle and whether they match genus
/// theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    /// Oracle ranks.
    pub ranks: TwoPowerRanks,
    /// `h4` and, where defined, `h8` agree.
    pub agrees: bool,
}

/// Everything the pipeline computed for `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `n`.
    pub n: u64,
    /// Family tag.
    pub family: Family,
    /// Pure 2-Selmer rank, for odd `n`.
    pub s2: Option<u32>,
    /// 4-rank of `Q(sqrt(-n))`, for `n = 1, 2 mod 4`.
    pub h4: Option<u32>,
    /// 8-rank, for odd `n` with all primes `1 mod 4`.
    pub h8: Option<u32>,
    /// Single-block evidence.
    pub eight_rank: Option<EightRankEvidence>,
    /// Decompositions tried, in the order tried.
    pub attempts: Vec<DecompositionAttempt>,
    /// The decomposition behind a decomposition verdict.
    pub decomposition: Option<Vec<u64>>,
    /// Criterion that produced the verdict.
    pub criterion: Option<Criterion>,
    /// Verdict.
    pub verdict: Verdict,
    /// Oracle cross-check if requested.
    pub oracle: Option<OracleCheck>,
}

/// Pipeline knobs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Solver options.
    pub solve: SolveOptions,
    /// Use this decomposition instead of searching.
    pub decomposition: Option<Vec<u64>>,
    /// Cross-check the 2-power ranks against the class-group oracle.
    pub oracle: bool,
}

/// Partitions of the primes of `n` into blocks that are unions of connected
/// components of the graph with edges `(p/q) = -1`, keeping those with
/// `h4(d_i) = 1`. Coarsest first, then by block values.
pub fn auto_decompose(n: &SquarefreeInteger) -> Vec<Decomposition> {
    if n.value() <= 1 || !n.all_primes_congruent(1, 8) {
        return Vec::new();
    }
    let ps = n.odd_primes();
    let m = ps.len();
    let mut component: Vec<usize> = (0..m).collect();
    fn root(c: &mut [usize], mut x: usize) -> usize {
        while c[x] != x {
            c[x] = c[c[x]];
            x = c[x];
        }
        x
    }
    for i in 0..m {
        for j in i + 1..m {
            if legendre(ps[j].get() as i128, ps[i]) == -1 {
                let (a, b) = (root(&mut component, i), root(&mut component, j));
                component[a] = b;
            }
        }
    }
    let mut comps: Vec<u64> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..m {
        let r = root(&mut component, i);
        match roots.iter().position(|&x| x == r) {
            Some(pos) => comps[pos] *= ps[i].get(),
            None => {
                roots.push(r);
                comps.push(ps[i].get());
            }
        }
    }
    let partitions = if comps.len() > MAX_DECOMPOSITION_COMPONENTS {
        alloc::vec![alloc::vec![n.value()]]
    } else {
        set_partitions(&comps)
    };
    let mut out: Vec<(usize, Vec<u64>, Decomposition)> = partitions
        .into_iter()
        .filter_map(|mut blocks| {
            blocks.sort_unstable();
            let dec = Decomposition::new(n, &blocks).ok()?;
            dec.conditions_hold().then_some((blocks.len(), blocks, dec))
        })
        .collect();
    out.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    out.into_iter().map(|(_, _, d)| d).collect()
}

/// All set partitions of `items`, each as the list of block products.
fn set_partitions(items: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut blocks: Vec<u64> = Vec::new();
    fn go(items: &[u64], i: usize, blocks: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == items.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] *= items[i];
            go(items, i + 1, blocks, out);
            blocks[b] /= items[i];
        }
        blocks.push(items[i]);
        go(items, i + 1, blocks, out);
        blocks.pop();
    }
    go(items, 0, &mut blocks, &mut out);
    out
}

fn attempt(
    dec: &Decomposition,
    genus: &Genus,
    h8_n: u32,
    opts: &SolveOptions,
) -> Result<DecompositionAttempt> {
    let check = check_mainthm2(dec, opts)?;
    let k = dec.k() as u32;
    let two_in_4a = genus.in_4a(DivisorElement::new(1, true), opts)?;
    let report = BlockRankReport {
        blocks_h8_zero: check.h8_blocks.iter().all(|&h| h == 0),
        h8_n,
        two_in_4a,
        eight_rank_condition: h8_n == k || (h8_n + 1 == k && !two_in_4a),
        a_star_zero: check.a_star.is_zero(),
    };
    Ok(DecompositionAttempt {
        blocks: dec.values(),
        check,
        report,
    })
}

/// Runs every applicable criterion on `n`.
pub fn classify(n: &SquarefreeInteger, opts: &ClassifyOptions) -> Result<Classification> {
    let nv = n.value();
    let family = Family::of(n);
    let solve = &opts.solve;
    let s2 = if n.is_odd() { Some(s2(n)?) } else { None };
    let genus = Genus::new(n).ok();
    let h4 = genus.as_ref().map(Genus::h4);
    let h8 = match &genus {
        Some(g) if g.in_family() => Some(g.h8(solve)?),
        _ => None,
    };
    let mut out = Classification {
        n: nv,
        family,
        s2,
        h4,
        h8,
        eight_rank: None,
        attempts: Vec::new(),
        decomposition: None,
        criterion: None,
        verdict: Verdict::NotApplicable {
            reason: String::new(),
        },
        oracle: None,
    };
    if opts.oracle {
        if let Some(h4) = h4 {
            let ranks = class_group(n)?.two_power_ranks()?;
            let agrees = ranks.h4 == h4 && h8.is_none_or(|h| h == ranks.h8);
            out.oracle = Some(OracleCheck { ranks, agrees });
        }
    }

    let mut reasons: Vec<String> = Vec::new();
    if !family.in_t1() {
        reasons.push(format!("{nv} is not 1 mod 8 with every prime 1 mod 4"));
    } else if h4 != Some(1) {
        reasons.push(format!("h4({nv}) = {} != 1", h4.unwrap_or(0)));
    } else {
        let g = genus.as_ref().expect("family implies a genus");
        let h8 = h8.expect("family implies h8");
        let d_n = g.d_of_n()?;
        let holds = u64::from(h8 % 2) == (d_n - 1) / 4 % 2;
        let pairing = theorem1_pairing(n, &solve.with_order(SearchOrder::Reversed))?;
        if pairing.nondegenerate() != holds {
            return Err(internal(format!(
                "8-rank and pairing routes disagree for {nv}"
            )));
        }
        let delta = if family == Family::AllOneMod8 {
            let delta = delta_n(n)?;
            if (delta == 1) != (h8 == 0) {
                return Err(internal(format!(
                    "delta_n = {delta} but h8 = {h8} for {nv}"
                )));
            }
            Some(delta)
        } else {
            None
        };
        out.eight_rank = Some(EightRankEvidence {
            d_n,
            holds,
            pairing,
            delta,
        });
        out.criterion = Some(Criterion::EightRank);
        out.verdict = if holds {
            Verdict::Rank0Sha { k: 1 }
        } else {
            Verdict::CriterionFailed {
                criterion: Criterion::EightRank,
            }
        };
    }

    if family != Family::AllOneMod8 {
        reasons.push(format!("not every prime of {nv} is 1 mod 8"));
    } else {
        let g = genus.as_ref().expect("family implies a genus");
        let h8_n = h8.expect("family implies h8");
        let decs = match &opts.decomposition {
            Some(blocks) => {
                let dec = Decomposition::new(n, blocks)?;
                dec.check_conditions()?;
                alloc::vec![dec]
            }
            None => auto_decompose(n),
        };
        for dec in &decs {
            out.attempts.push(attempt(dec, g, h8_n, solve)?);
        }
        let best = out
            .attempts
            .iter()
            .filter(|a| a.check.holds())
            .max_by_key(|a| a.k());
        match (best, &out.verdict) {
            (None, _) if out.attempts.is_empty() => {
                reasons.push(format!(
                    "no decomposition of {nv} satisfies the block conditions"
                ));
            }
            (None, Verdict::NotApplicable { .. }) => {
                out.criterion = Some(Criterion::HigherRedei);
                out.verdict = Verdict::CriterionFailed {
                    criterion: Criterion::HigherRedei,
                };
            }
            (None, _) => {}
            (Some(best), Verdict::NotApplicable { .. }) => {
                out.criterion = Some(Criterion::HigherRedei);
                out.verdict = Verdict::Rank0Sha { k: best.k() };
                out.decomposition = Some(best.blocks.clone());
            }
            (Some(best), Verdict::Rank0Sha { k }) if *k == best.k() => {
                out.decomposition = Some(best.blocks.clone());
            }
            (Some(best), _) => {
                return Err(internal(format!(
                    "decomposition {:?} passes but the 8-rank verdict for {nv} is {}",
                    best.blocks,
                    out.verdict.as_str()
                )));
            }
        }
    }

    if let Verdict::NotApplicable { reason } = &mut out.verdict {
        *reason = reasons.join("; ");
    }
    Ok(out)
}

/// A rational point `x = u/w^2`, `y = Y/w^3` on `y^2 = x^3 - n^2 x` with
/// `|u| <= bound`, `w^2 <= bound`, outside 2-torsion.
pub fn find_small_point(n: u64, bound: u64) -> Option<(i128, i128, i128)> {
    let b = bound as i128;
    for w in 1..=(bound as u128).isqrt() as i128 {
        // u (u^2 - (n w^2)^2) > 0 exactly for -n w^2 < u < 0 or u > n w^2.
        let m = (n as i128).checked_mul(w * w)?;
        let nw = m.checked_mul(m)?;
        let negative = -(m - 1).min(b)..=-1;
        let positive = m.saturating_add(1)..=b;
        for u in negative.chain(positive) {
            let v = u.checked_mul(u * u - nw)?;
            if let Some(y) = is_square(v as u128) {
                if gcd_i128(u, w) == 1 {
                    return Some((u, w, y as i128));
                }
            }
        }
    }
    None
}

/// True iff [`find_small_point`] finds nothing.
pub fn point_search_sanity(n: u64, bound: u64) -> bool {
    find_small_point(n, bound).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(n: u64) -> SquarefreeInteger {
        SquarefreeInteger::new(n).unwrap()
    }

    fn run(n: u64) -> Classification {
        classify(
            &sf(n),
            &ClassifyOptions {
                oracle: true,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn single_prime_examples() {
        let c = run(17);
        assert_eq!(c.family, Family::AllOneMod8);
        assert_eq!(c.verdict, Verdict::Rank0Sha { k: 1 });
        assert_eq!((c.s2, c.h4, c.h8), (Some(2), Some(1), Some(0)));
        let e = c.eight_rank.unwrap();
        assert_eq!((e.d_n, e.delta), (17, Some(1)));
        assert!(c.oracle.unwrap().agrees);
        assert_eq!(c.decomposition, Some(alloc::vec![17]));

        let c = run(41);
        assert_eq!(
            c.verdict,
            Verdict::CriterionFailed {
                criterion: Criterion::EightRank
            }
        );
        assert_eq!(c.h8, Some(1));

        let c = run(3);
        assert_eq!(c.family, Family::OutOfFamily);
        assert!(matches!(c.verdict, Verdict::NotApplicable { .. }));
    }

    #[test]
    fn t1_family_without_all_one_mod_eight() {
        for n in [65u64, 145] {
            let c = run(n);
            assert_eq!(c.family, Family::T1);
            assert!(c.attempts.is_empty());
            let e = c.eight_rank.unwrap();
            assert_eq!(e.delta, None);
            assert_eq!(e.pairing.nondegenerate(), e.holds);
        }
    }

    #[test]
    fn decompositions() {
        let ds: Vec<Vec<u64>> = auto_decompose(&sf(17 * 89))
            .iter()
            .map(|d| d.values())
            .collect();
        assert_eq!(ds, [alloc::vec![17, 89]]);
        let ds: Vec<Vec<u64>> = auto_decompose(&sf(113))
            .iter()
            .map(|d| d.values())
            .collect();
        assert_eq!(ds, [alloc::vec![113]]);
        assert!(auto_decompose(&sf(221)).is_empty());
        // (17/41) = -1 forces one block.
        for d in auto_decompose(&sf(17 * 41)) {
            assert_eq!(d.k(), 1);
        }
        assert_eq!(set_partitions(&[2, 3, 5]).len(), 5);
    }

    #[test]
    fn point_search() {
        assert_eq!(find_small_point(5, 100), Some((-4, 1, 6)));
        assert!(!point_search_sanity(41, 10_000));
        assert!(point_search_sanity(17, 10_000));
    }
}
