use shagate_core::cassels::{
    build_cassels_solutions, normalize_gamma, pairing_table, verify_local_pairing_odd,
    BasisElement, BlockSolutions, GammaSolution,
};
use shagate_core::classify::{auto_decompose, classify, ClassifyOptions};
use shagate_core::genus::SolveOptions;
use shagate_core::SquarefreeInteger;

const BOUND: u64 = 40_000;
const TRIPLE_BOUND: u64 = 150_000;

/// Every `n < BOUND` that is 1 mod 8, then products of three primes
/// `p = 1 mod 8` below `TRIPLE_BOUND`, where some cofactor is composite.
fn sweep() -> Vec<u64> {
    let ps: Vec<u64> = (17..TRIPLE_BOUND / 17 / 41)
        .step_by(8)
        .filter(|&p| primes_of(p) == [p])
        .collect();
    let mut out: Vec<u64> = (17..BOUND).step_by(8).collect();
    for (i, p) in ps.iter().enumerate() {
        for (j, q) in ps.iter().enumerate().skip(i + 1) {
            for r in &ps[j + 1..] {
                if p * q * r < TRIPLE_BOUND {
                    out.push(p * q * r);
                }
            }
        }
    }
    out
}

fn primes_of(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Jacobi symbol `(x/d)` by Euler's criterion prime by prime, additive.
fn jacobi_bit(x: i128, d: u64) -> u8 {
    let mut bit = 0;
    for p in primes_of(d) {
        let r = x.rem_euclid(p as i128) as u64;
        assert_ne!(r, 0, "{x} shares a factor with {d}");
        let mut acc = 1u64;
        for _ in 0..(p - 1) / 2 {
            acc = acc * r % p;
        }
        bit ^= u8::from(acc != 1);
    }
    bit
}

fn check_block(n: u64, s: &BlockSolutions) {
    let (d, dp) = (s.c.d as i128, s.c.d_prime as i128);
    assert_eq!(d * dp, n as i128);
    let (a, b, c) = (s.c.a as i128, s.c.b as i128, s.c.c as i128);
    let g = &s.gamma;
    let cb = &s.cbar;
    assert_eq!(c * c, d * a * a + dp * b * b, "c for d = {d}");
    assert_eq!(
        g.gamma * g.gamma,
        d * g.alpha * g.alpha + 2 * dp * g.beta * g.beta
    );
    assert_eq!(
        cb.cbar * cb.cbar,
        d * cb.abar * cb.abar - dp * cb.bbar * cb.bbar
    );
    for v in [c, g.gamma, cb.cbar] {
        assert_eq!(gcd(v, 2 * n as i128), 1, "{v} vs 2n for d = {d}");
    }
    assert_eq!((a * g.gamma + c * g.alpha) % dp, 0);
    assert_eq!((a * cb.cbar + c * cb.abar) % dp, 0);
}

#[test]
fn decompositions_give_consistent_tables() {
    let opts = SolveOptions::default();
    let (mut instances, mut composite_cofactor, mut single) = (0, 0, 0);
    for n in sweep() {
        let Ok(sf) = SquarefreeInteger::new(n) else {
            continue;
        };
        for dec in auto_decompose(&sf) {
            let Ok(sols) = build_cassels_solutions(&dec, &opts) else {
                continue;
            };
            let table = pairing_table(&sols, &opts).unwrap();
            let k = dec.k();
            let ds = dec.values();
            instances += 1;
            single += usize::from(k == 1);
            for s in sols.blocks() {
                check_block(n, s);
                composite_cofactor += usize::from(primes_of(s.c.d_prime).len() > 1);
            }
            // Closed forms with an independent symbol.
            let bl = sols.blocks();
            for i in 0..k {
                let (c, g, cb) = (bl[i].c.c as i128, bl[i].gamma.gamma, bl[i].cbar.cbar);
                for j in 0..k {
                    let e = |x, y| table.entry(x, y);
                    let (l, lp) = (BasisElement::Lambda, BasisElement::LambdaPrime);
                    if i == j {
                        assert_eq!(e(l(i), lp(i)), table.delta[i] ^ jacobi_bit(c, ds[i]));
                        assert_eq!(e(lp(i), l(i)), table.delta[i] ^ jacobi_bit(cb, ds[i]));
                        assert_eq!(e(l(i), l(i)), 0);
                        assert_eq!(e(lp(i), lp(i)), 0);
                    } else {
                        assert_eq!(e(l(i), l(j)), jacobi_bit(c * g, ds[j]), "n = {n}");
                        assert_eq!(e(l(i), lp(j)), jacobi_bit(c, ds[j]), "n = {n}");
                        assert_eq!(e(lp(i), l(j)), jacobi_bit(cb, ds[j]), "n = {n}");
                        assert_eq!(e(lp(i), lp(j)), jacobi_bit(c * cb, ds[j]), "n = {n}");
                    }
                    assert_eq!(
                        u8::from(table.a_star.bit(i, j)),
                        jacobi_bit(bl[j].c.c as i128, ds[i])
                    );
                }
            }
            assert!(table.consistent(), "n = {n}, {ds:?}");
            if n < 10_000 {
                for r in 0..2 * k {
                    for c in 0..2 * k {
                        let (x, y) = (BasisElement::at(r, k), BasisElement::at(c, k));
                        assert!(
                            verify_local_pairing_odd(&sols, &table, x, y).unwrap(),
                            "n = {n}, <{x}, {y}>"
                        );
                    }
                }
            }
        }
    }
    assert!(instances > 300, "{instances}");
    assert!(single > 0);
    assert!(composite_cofactor > 0);
}

/// Smallest primitive `gamma^2 = d alpha^2 + 2 d' beta^2` with `gamma <= z_max`.
fn brute_gamma(d: i128, dp: i128, z_max: i128) -> Option<GammaSolution> {
    for gamma in 1..=z_max {
        let g2 = gamma * gamma;
        let mut beta = 1;
        while 2 * dp * beta * beta < g2 {
            let rest = g2 - 2 * dp * beta * beta;
            if rest % d == 0 {
                let a2 = rest / d;
                let alpha = (a2 as f64).sqrt().round() as i128;
                if alpha > 0 && alpha * alpha == a2 && gcd(gcd(alpha, beta), gamma) == 1 {
                    return Some(GammaSolution { alpha, beta, gamma });
                }
            }
            beta += 1;
        }
    }
    None
}

#[test]
fn gamma_normalization_uses_the_transform_when_signs_fail() {
    let opts = SolveOptions::default();
    let mut transformed = 0;
    for n in sweep() {
        let Ok(sf) = SquarefreeInteger::new(n) else {
            continue;
        };
        for dec in auto_decompose(&sf) {
            let Ok(sols) = build_cassels_solutions(&dec, &opts) else {
                continue;
            };
            for s in sols.blocks() {
                let (d, dp) = (s.c.d as i128, s.c.d_prime as i128);
                if primes_of(s.c.d_prime).len() < 2 {
                    continue;
                }
                let Some(raw) = brute_gamma(d, dp, 3_000) else {
                    continue;
                };
                let (a, c) = (s.c.a as i128, s.c.c as i128);
                let fits = |alpha: i128| (a * raw.gamma + c * alpha) % dp == 0;
                let out = normalize_gamma(&s.c, &raw).unwrap();
                assert_eq!(
                    out.gamma * out.gamma,
                    d * out.alpha * out.alpha + 2 * dp * out.beta * out.beta
                );
                assert_eq!(gcd(gcd(out.alpha, out.beta), out.gamma), 1);
                assert_eq!((a * out.gamma + c * out.alpha) % dp, 0, "n = {n}, d = {d}");
                if fits(raw.alpha) || fits(-raw.alpha) {
                    assert_eq!(out.gamma, raw.gamma);
                    assert_eq!(out.alpha.abs(), raw.alpha);
                } else {
                    transformed += 1;
                }
            }
        }
    }
    assert!(transformed > 0, "no instance needed the transform");
}

#[test]
fn block_rank_hypotheses_imply_the_a_star_conditions() {
    let opts = ClassifyOptions {
        solve: SolveOptions::default(),
        decomposition: None,
        oracle: false,
    };
    let (mut with_hypotheses, mut a_star_nonzero) = (0, Vec::new());
    for n in sweep() {
        let Ok(sf) = SquarefreeInteger::new(n) else {
            continue;
        };
        for a in classify(&sf, &opts).unwrap().attempts {
            if a.report.hypotheses_hold() {
                with_hypotheses += 1;
                assert!(a.check.holds(), "n = {n}, {:?}", a.blocks);
                if !a.report.a_star_zero {
                    a_star_nonzero.push(n);
                }
            }
        }
    }
    assert!(with_hypotheses > 0);
    // The hypotheses do not force A* = 0: for 16609 = 17 * 977, h8 = 1 = k - 1
    // and [(2, sqrt(-n))] is not in 4A, yet A* = (1 1; 1 1), with
    // (17/977)_4 = (977/17)_4 = -1. A* + I is still nonsingular.
    assert!(a_star_nonzero.contains(&16_609), "{a_star_nonzero:?}");
}

/// `(17/977)_4`, `(977/17)_4` and `[c/d]` for several solutions, by hand.
#[test]
fn a_star_for_16609_is_all_ones() {
    let quartic = |a: u64, p: u64| {
        let mut acc = 1;
        for _ in 0..(p - 1) / 4 {
            acc = acc * a % p;
        }
        acc
    };
    assert_eq!(quartic(17, 977), 976);
    assert_eq!(quartic(977, 17), 16);
    // c^2 = 17 a^2 + 977 b^2 and c^2 = 977 a^2 + 17 b^2.
    for (a, b, c) in [(16, 1, 73), (11, 4, 133), (29, 4, 173), (56, 1, 233)] {
        assert_eq!(c * c, 17 * a * a + 977 * b * b);
        assert_eq!(jacobi_bit(c as i128, 17), 1);
        assert_eq!(jacobi_bit(c as i128, 977), 1);
    }
}
