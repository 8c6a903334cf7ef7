//! Cross-check suites run by `shagate verify` and by the acceptance target.
//! Each suite walks a range, checks a property on every case and records
//! the failures.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};
use shagate_core::cassels::{
    build_cassels_solutions, check_mainthm2, cor2_check, pairing_table, theorem1_pairing,
    verify_local_pairing_odd, BasisElement,
};
use shagate_core::classgroup::class_group;
use shagate_core::classify::{
    auto_decompose, classify, find_small_point, ClassifyOptions, Family, Verdict,
};
use shagate_core::genus::{
    additive_symbol, Decomposition, DivisorElement, Genus, HigherRedei, SearchOrder, SolveOptions,
};
use shagate_core::ntheory::{factor_squarefree, is_prime, li_tian_conditions};
use shagate_core::selmer::{enumerate_selmer, monsky_matrix, s2};
use shagate_core::SquarefreeInteger;

/// Height bound of the point search in the sanity suite.
pub const POINT_SEARCH_BOUND: u64 = 10_000;

/// Failure messages kept per report; the count is always exact.
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Remark1,
    LiTian,
    Monsky,
    Lemma41,
    Selmer,
    Oracle,
    Theorem1,
    Pairing,
    Cor2,
    Sanity,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Self::Remark1,
        Self::LiTian,
        Self::Monsky,
        Self::Lemma41,
        Self::Selmer,
        Self::Oracle,
        Self::Theorem1,
        Self::Pairing,
        Self::Cor2,
        Self::Sanity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Remark1 => "remark1",
            Self::LiTian => "litian",
            Self::Monsky => "monsky",
            Self::Lemma41 => "lemma41",
            Self::Selmer => "selmer",
            Self::Oracle => "oracle",
            Self::Theorem1 => "theorem1",
            Self::Pairing => "pairing",
            Self::Cor2 => "cor2",
            Self::Sanity => "sanity",
        }
    }

    /// Range bound used when none is given.
    pub fn default_bound(self) -> u64 {
        match self {
            Self::Remark1 => 221,
            Self::LiTian => 100_000,
            Self::Monsky => 20_000,
            Self::Lemma41 => 100_000,
            Self::Selmer => 5_000,
            Self::Oracle => 20_000,
            Self::Theorem1 => 100_000,
            Self::Pairing => 100_000,
            Self::Cor2 => 200_000,
            Self::Sanity => 100_000,
        }
    }

    pub fn run(self, bound: u64, opts: &SolveOptions) -> Report {
        let start = Instant::now();
        let mut r = match self {
            Self::Remark1 => remark1(opts),
            Self::LiTian => litian(bound),
            Self::Monsky => monsky(bound),
            Self::Lemma41 => lemma41(bound),
            Self::Selmer => selmer(bound),
            Self::Oracle => oracle(bound, opts),
            Self::Theorem1 => theorem1(bound, opts),
            Self::Pairing => pairing(bound, opts),
            Self::Cor2 => cor2(bound, opts),
            Self::Sanity => sanity(bound, opts),
        };
        r.elapsed = start.elapsed();
        r
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub bound: u64,
    pub cases: u64,
    pub failures: u64,
    pub examples: Vec<String>,
    /// Named counters, e.g. instances skipped and why.
    pub counters: Vec<(&'static str, u64)>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl Report {
    fn new(suite: Suite, bound: u64) -> Self {
        Self {
            suite,
            bound,
            cases: 0,
            failures: 0,
            examples: Vec::new(),
            counters: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.examples.len() < KEPT_FAILURES {
            self.examples.push(msg);
        }
    }

    fn absorb(&mut self, outcomes: Vec<Result<(), String>>) {
        for o in outcomes {
            self.cases += 1;
            if let Err(e) = o {
                self.fail(e);
            }
        }
    }

    pub fn counter(&self, name: &str) -> u64 {
        self.counters
            .iter()
            .find(|(k, _)| *k == name)
            .map_or(0, |(_, v)| *v)
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }

    pub fn to_json(&self) -> Value {
        let counters: serde_json::Map<String, Value> = self
            .counters
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        json!({
            "suite": self.suite.name(),
            "bound": self.bound,
            "cases": self.cases,
            "failures": self.failures,
            "examples": self.examples,
            "counters": counters,
            "notes": self.notes,
            "passed": self.passed(),
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

fn squarefree_upto(
    bound: u64,
    keep: impl Fn(&SquarefreeInteger) -> bool + Sync,
) -> Vec<SquarefreeInteger> {
    (1..=bound)
        .into_par_iter()
        .filter_map(|n| factor_squarefree(n).ok())
        .filter(|n| keep(n))
        .collect()
}

fn run_each<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<(), String> + Sync + Send,
) -> Vec<Result<(), String>> {
    items.par_iter().map(f).collect()
}

fn sf(n: u64) -> SquarefreeInteger {
    SquarefreeInteger::new(n).expect("fixed square-free input")
}

fn remark1(opts: &SolveOptions) -> Report {
    let mut r = Report::new(Suite::Remark1, 221);
    let start = Instant::now();
    let n = sf(221);
    let g = match Genus::new(&n) {
        Ok(g) => g,
        Err(e) => {
            r.fail(format!("genus of 221: {e}"));
            return r;
        }
    };
    let rows = g.redei_matrix().to_rows();
    r.check(rows == [[0, 0, 1], [0, 0, 0]], || {
        format!("Redei matrix {rows:?}, expected [[0, 0, 1], [0, 0, 0]]")
    });
    r.check(g.h4() == 1, || format!("h4 = {}, expected 1", g.h4()));
    let e13 = DivisorElement::new(13, false);
    match g.all_primitive_solutions(e13, 20) {
        Ok(sols) => {
            let triples: Vec<(u64, u64, u64)> = sols.iter().map(|s| (s.a, s.b, s.c)).collect();
            r.check(triples == [(1, 2, 9), (4, 1, 15)], || {
                format!("solutions of z^2 = 13x^2 + 17y^2 with z <= 20 are {triples:?}, expected exactly [(1, 2, 9), (4, 1, 15)]")
            });
            let c_of = |a: u64, b: u64, c: u64| {
                let s = sols.iter().find(|s| (s.a, s.b, s.c) == (a, b, c))?;
                g.c_vector(s).ok()
            };
            for ((a, b, c), want) in [((1, 2, 9), [0u8, 0]), ((4, 1, 15), [1, 0])] {
                let got = c_of(a, b, c);
                r.check(
                    got.as_ref().map(|v| v.to_bits()) == Some(want.to_vec()),
                    || format!("C vector of ({a}, {b}, {c}) is {got:?}, expected {want:?}"),
                );
                let in_image = got.is_some_and(|v| g.redei_matrix().in_image(&v).unwrap_or(false));
                r.check(in_image, || {
                    format!("C vector of ({a}, {b}, {c}) is not in Im R")
                });
            }
        }
        Err(e) => r.fail(format!("solution enumeration: {e}")),
    }
    let h8 = g.h8(opts);
    r.check(h8 == Ok(1), || format!("h8 = {h8:?}, expected 1"));
    let factors = class_group(&n).and_then(|c| c.invariant_factors());
    r.check(factors == Ok(vec![8, 2]), || {
        format!("class group invariant factors {factors:?}, expected [8, 2]")
    });
    let elapsed = start.elapsed();
    r.check(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}, limit 1 s")
    });
    r
}

fn litian(bound: u64) -> Report {
    let mut r = Report::new(Suite::LiTian, bound);
    let primes: Vec<u64> = (17..bound).step_by(8).filter(|&p| is_prime(p)).collect();
    r.absorb(run_each(&primes, |&p| {
        let c = li_tian_conditions(p).map_err(|e| format!("p = {p}: {e}"))?;
        if !c.agree() {
            return Err(format!("p = {p}: conditions {:?} disagree", c.as_array()));
        }
        let ranks = class_group(&sf(p))
            .and_then(|g| g.two_power_ranks())
            .map_err(|e| format!("p = {p}: oracle: {e}"))?;
        if c.v_odd != (ranks.h8 == 0) {
            return Err(format!(
                "p = {p}: conditions say {} but oracle h8 = {}",
                c.v_odd, ranks.h8
            ));
        }
        Ok(())
    }));
    r
}

fn monsky(bound: u64) -> Report {
    let mut r = Report::new(Suite::Monsky, bound);
    let ns = squarefree_upto(bound, |n| matches!(n.value() % 8, 1 | 3));
    r.absorb(run_each(&ns, |n| {
        let rank = monsky_matrix(n)
            .map_err(|e| format!("n = {n}: {e}"))?
            .rank();
        if rank % 2 == 0 {
            Ok(())
        } else {
            Err(format!("n = {n}: rank M_n = {rank} is odd"))
        }
    }));
    r
}

fn lemma41(bound: u64) -> Report {
    let mut r = Report::new(Suite::Lemma41, bound);
    let ns = squarefree_upto(bound, |n| Family::of(n).in_t1());
    r.absorb(run_each(&ns, |n| {
        let s = s2(n).map_err(|e| format!("n = {n}: {e}"))?;
        let h4 = Genus::new(n).map_err(|e| format!("n = {n}: {e}"))?.h4();
        if (s == 2) == (h4 == 1) {
            Ok(())
        } else {
            Err(format!("n = {n}: s2 = {s}, h4 = {h4}"))
        }
    }));
    r
}

fn selmer(bound: u64) -> Report {
    let mut r = Report::new(Suite::Selmer, bound);
    let ns = squarefree_upto(bound, SquarefreeInteger::is_odd);
    r.absorb(run_each(&ns, |n| {
        let k = n.omega();
        let rank = monsky_matrix(n)
            .map_err(|e| format!("n = {n}: {e}"))?
            .rank();
        let expected = 1usize << (2 * k - rank);
        let got = enumerate_selmer(n)
            .map_err(|e| format!("n = {n}: {e}"))?
            .len();
        if got == expected {
            Ok(())
        } else {
            Err(format!("n = {n}: {got} triples, expected {expected}"))
        }
    }));
    r
}

fn oracle(bound: u64, opts: &SolveOptions) -> Report {
    let mut r = Report::new(Suite::Oracle, bound);
    let ns = squarefree_upto(bound, |n| matches!(n.value() % 4, 1 | 2));
    r.absorb(run_each(&ns, |n| {
        let g = Genus::new(n).map_err(|e| format!("n = {n}: {e}"))?;
        let ranks = class_group(n)
            .and_then(|c| c.two_power_ranks())
            .map_err(|e| format!("n = {n}: oracle: {e}"))?;
        if g.h4() != ranks.h4 {
            return Err(format!("n = {n}: h4 = {}, oracle {}", g.h4(), ranks.h4));
        }
        if g.in_family() {
            let h8 = g.h8(opts).map_err(|e| format!("n = {n}: {e}"))?;
            if h8 != ranks.h8 {
                return Err(format!("n = {n}: h8 = {h8}, oracle {}", ranks.h8));
            }
        }
        Ok(())
    }));
    r.counters.push((
        "h8_compared",
        ns.iter()
            .filter(|n| n.is_odd() && n.all_primes_congruent(1, 4))
            .count() as u64,
    ));
    r
}

fn theorem1(bound: u64, opts: &SolveOptions) -> Report {
    let mut r = Report::new(Suite::Theorem1, bound);
    let ns = squarefree_upto(bound, |n| {
        Family::of(n).in_t1() && Genus::new(n).is_ok_and(|g| g.h4() == 1)
    });
    let reversed = opts.with_order(SearchOrder::Reversed);
    r.absorb(run_each(&ns, |n| {
        let g = Genus::new(n).map_err(|e| format!("n = {n}: {e}"))?;
        let h8 = g.h8(opts).map_err(|e| format!("n = {n}: {e}"))?;
        let d = g.d_of_n().map_err(|e| format!("n = {n}: {e}"))?;
        let by_rank = u64::from(h8 % 2) == (d - 1) / 4 % 2;
        for o in [reversed, *opts] {
            let p = theorem1_pairing(n, &o).map_err(|e| format!("n = {n}: {e}"))?;
            if p.nondegenerate() != by_rank {
                return Err(format!(
                    "n = {n}: 8-rank route says {by_rank}, pairing from {} says {}",
                    p.solution,
                    p.nondegenerate()
                ));
            }
        }
        Ok(())
    }));
    r
}

/// Every decomposition of `n` into at least two blocks that satisfies the
/// block conditions, in [`auto_decompose`] order.
fn decompositions(n: &SquarefreeInteger) -> Vec<Decomposition> {
    auto_decompose(n)
        .into_iter()
        .filter(|d| d.k() >= 2)
        .collect()
}

fn pairing_instance(dec: &Decomposition, opts: &SolveOptions) -> Result<bool, String> {
    let name = format!("{:?}", dec.values());
    let err = |e: shagate_core::Error| format!("{name}: {e}");
    let sols = match build_cassels_solutions(dec, opts) {
        Ok(s) => s,
        Err(shagate_core::Error::Precondition(_)) => return Ok(false),
        Err(e) => return Err(err(e)),
    };
    let table = pairing_table(&sols, opts).map_err(err)?;
    let m = &table.matrix;
    if !m.is_symmetric() || !m.has_zero_diagonal() {
        return Err(format!("{name}: table is not symmetric with zero diagonal"));
    }
    if !table.consistent() {
        return Err(format!("{name}: table differs from the block form"));
    }
    let canonical = HigherRedei::new(dec, opts).map_err(err)?;
    let a = canonical.a_star();
    for i in 0..dec.k() {
        if a.row(i).count_ones() % 2 != 0 {
            return Err(format!("{name}: row {i} of A* does not sum to 0"));
        }
    }
    let reversed = HigherRedei::new(dec, &opts.with_order(SearchOrder::Reversed)).map_err(err)?;
    if reversed.a_star() != a {
        return Err(format!("{name}: A* changes under reversed search order"));
    }
    if &table.a_star != a {
        return Err(format!("{name}: A* from the Cassels solutions differs"));
    }
    let ds = dec.blocks();
    let bl = sols.blocks();
    for i in 0..dec.k() {
        for j in (0..dec.k()).filter(|&j| j != i) {
            let lhs = additive_symbol(bl[j].cbar.cbar, &ds[i]);
            let rhs = additive_symbol(bl[i].c.c as i128, &ds[j]);
            if lhs != rhs {
                return Err(format!("{name}: [cbar_{j}/d_{i}] != [c_{i}/d_{j}]"));
            }
        }
    }
    let k = dec.k();
    for x in 0..2 * k {
        for y in 0..2 * k {
            let (bx, by) = (BasisElement::at(x, k), BasisElement::at(y, k));
            if !verify_local_pairing_odd(&sols, &table, bx, by).map_err(err)? {
                return Err(format!("{name}: local product differs at <{bx}, {by}>"));
            }
        }
    }
    Ok(true)
}

fn pairing(bound: u64, opts: &SolveOptions) -> Report {
    let mut r = Report::new(Suite::Pairing, bound);
    let ns = squarefree_upto(bound, |n| {
        n.omega() >= 2 && Family::of(n) == Family::AllOneMod8
    });
    let decs: Vec<Decomposition> = ns.par_iter().flat_map_iter(decompositions).collect();
    let outcomes: Vec<Result<bool, String>> =
        decs.par_iter().map(|d| pairing_instance(d, opts)).collect();
    let mut skipped = 0;
    for o in outcomes {
        match o {
            Ok(true) => r.cases += 1,
            Ok(false) => skipped += 1,
            Err(e) => {
                r.cases += 1;
                r.fail(e);
            }
        }
    }
    r.counters.push(("decompositions", decs.len() as u64));
    r.counters.push(("locally_obstructed", skipped));
    r
}

/// Splits of `n` into two blocks, each a prime or a product of two primes,
/// that satisfy the block conditions. Each unordered split appears once.
fn two_block_splits(n: &SquarefreeInteger) -> Vec<Decomposition> {
    let ps = n.primes();
    let m = ps.len();
    if !(2..=4).contains(&m) {
        return Vec::new();
    }
    (1..1u64 << (m - 1))
        .filter_map(|mask| {
            let d1 = n.divisor_from_mask(mask);
            let d2 = n.value() / d1;
            let sizes = [mask.count_ones() as usize, m - mask.count_ones() as usize];
            if sizes.iter().any(|&s| s > 2) {
                return None;
            }
            let (lo, hi) = (d1.min(d2), d1.max(d2));
            Decomposition::new(n, &[lo, hi])
                .ok()
                .filter(Decomposition::conditions_hold)
        })
        .collect()
}

fn cor2(bound: u64, opts: &SolveOptions) -> Report {
    let mut r = Report::new(Suite::Cor2, bound);
    let ns = squarefree_upto(bound, |n| {
        n.omega() >= 2 && Family::of(n) == Family::AllOneMod8
    });
    let decs: Vec<Decomposition> = ns.par_iter().flat_map_iter(two_block_splits).collect();
    let outcomes: Vec<Result<bool, String>> = decs
        .par_iter()
        .map(|dec| {
            let name = format!("{:?}", dec.values());
            let two = cor2_check(dec, opts).map_err(|e| format!("{name}: {e}"))?;
            let main = check_mainthm2(dec, opts).map_err(|e| format!("{name}: {e}"))?;
            if two.holds() == main.holds() {
                Ok(main.holds())
            } else {
                Err(format!(
                    "{name}: two-block criterion {} but A* criterion {}",
                    two.holds(),
                    main.holds()
                ))
            }
        })
        .collect();
    let mut passing: Vec<u64> = Vec::new();
    for (o, dec) in outcomes.into_iter().zip(&decs) {
        r.cases += 1;
        match o {
            Ok(true) => passing.push(dec.n().value()),
            Ok(false) => {}
            Err(e) => r.fail(e),
        }
    }
    passing.sort_unstable();
    passing.dedup();
    r.counters.push(("passing", passing.len() as u64));
    let copts = ClassifyOptions {
        solve: *opts,
        ..Default::default()
    };
    let exhibit = passing
        .iter()
        .copied()
        .find(|&n| classify(&sf(n), &copts).is_ok_and(|c| c.verdict == Verdict::Rank0Sha { k: 2 }));
    match exhibit {
        Some(n) => r.notes.push(format!("smallest rank0 k = 2 instance: {n}")),
        None => r.fail("no n classified rank0 with k = 2".into()),
    }
    r.counters.push(("rank0_k2_exhibit", exhibit.unwrap_or(0)));
    r
}

fn sanity(bound: u64, opts: &SolveOptions) -> Report {
    let mut r = Report::new(Suite::Sanity, bound);
    let copts = ClassifyOptions {
        solve: *opts,
        ..Default::default()
    };
    for n in [5u64, 41] {
        let c = classify(&sf(n), &copts);
        r.check(
            c.as_ref()
                .is_ok_and(|c| !matches!(c.verdict, Verdict::Rank0Sha { .. })),
            || format!("n = {n} (congruent) classified {:?}", c.map(|c| c.verdict)),
        );
    }
    for n in [5u64, 6, 7, 41] {
        let p = find_small_point(n, POINT_SEARCH_BOUND);
        r.check(p.is_some(), || {
            format!("no point found for the congruent number {n}")
        });
    }
    let ns = squarefree_upto(bound.saturating_sub(1), |n| Family::of(n).in_t1());
    let outcomes: Vec<Option<Result<(), String>>> = ns
        .par_iter()
        .map(|n| match classify(n, &copts) {
            Ok(c) if matches!(c.verdict, Verdict::Rank0Sha { .. }) => {
                Some(match find_small_point(n.value(), POINT_SEARCH_BOUND) {
                    None => Ok(()),
                    Some(p) => Err(format!("n = {n} is rank0 but has the point {p:?}")),
                })
            }
            Ok(_) => None,
            Err(e) => Some(Err(format!("n = {n}: {e}"))),
        })
        .collect();
    r.absorb(outcomes.into_iter().flatten().collect());
    r
}
