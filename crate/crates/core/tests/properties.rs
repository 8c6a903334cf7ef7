use proptest::prelude::*;
use shagate_core::ntheory::{
    delta_p, hilbert_symbol, is_prime, legendre, li_tian_conditions, quartic_symbol,
    represent_prime, OddPrime, Place,
};
use shagate_core::{BitMatrix, BitVector};

fn matrix(rows: usize, cols: usize, bits: &[bool]) -> BitMatrix {
    let data: Vec<Vec<u8>> = (0..rows)
        .map(|i| (0..cols).map(|j| u8::from(bits[i * cols + j])).collect())
        .collect();
    if rows == 0 {
        BitMatrix::zeros(0, cols)
    } else {
        BitMatrix::from_rows(&data).unwrap()
    }
}

fn arb_matrix(max: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(any::<bool>(), r * c).prop_map(move |b| matrix(r, c, &b))
    })
}

/// All `A x` for `x` in GF(2)^cols, by enumeration.
fn image_by_enumeration(a: &BitMatrix) -> Vec<Vec<u8>> {
    (0..1u32 << a.cols())
        .map(|mask| {
            let bits: Vec<u8> = (0..a.cols()).map(|j| (mask >> j & 1) as u8).collect();
            a.mul_vec(&BitVector::from_bits(&bits)).unwrap().to_bits()
        })
        .collect()
}

fn euler(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let mut acc = 1u64;
    for _ in 0..(p - 1) / 2 {
        acc = acc * r % p;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

fn prime_from(seed: u64, residue: u64, modulus: u64) -> u64 {
    (seed..)
        .find(|&p| p % modulus == residue && is_prime(p))
        .unwrap()
}

fn prime_factors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n % p == 0 {
            out.push(p as u64);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_plus_nullity_is_cols(a in arb_matrix(24)) {
        let kernel = a.kernel_basis();
        prop_assert_eq!(a.rank() + kernel.len(), a.cols());
        for x in &kernel {
            prop_assert!(a.mul_vec(x).unwrap().is_zero());
        }
        if !kernel.is_empty() {
            let k = BitMatrix::from_columns(a.cols(), &kernel).unwrap();
            prop_assert_eq!(k.rank(), kernel.len());
        }
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn solve_inverts_mul(a in arb_matrix(24), seed in any::<u64>()) {
        let bits: Vec<u8> = (0..a.cols()).map(|j| (seed >> (j % 64) & 1) as u8).collect();
        let b = a.mul_vec(&BitVector::from_bits(&bits)).unwrap();
        let y = a.solve(&b).unwrap().expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&y).unwrap(), b.clone());
        prop_assert!(a.in_image(&b).unwrap());
    }

    #[test]
    fn in_image_matches_enumeration(a in arb_matrix(8), seed in any::<u64>()) {
        let image = image_by_enumeration(&a);
        let bits: Vec<u8> = (0..a.rows()).map(|i| (seed >> i & 1) as u8).collect();
        let c = BitVector::from_bits(&bits);
        let expected = image.contains(&bits);
        prop_assert_eq!(a.in_image(&c).unwrap(), expected);
        prop_assert_eq!(a.solve(&c).unwrap().is_some(), expected);
    }

    #[test]
    fn legendre_is_multiplicative_and_euler(seed in 3u64..50_000, a in -10_000i64..10_000, b in -10_000i64..10_000) {
        let p = prime_from(seed, 1, 2);
        let op = OddPrime::new(p).unwrap();
        let (la, lb) = (legendre(a as i128, op), legendre(b as i128, op));
        prop_assert_eq!(la, euler(a, p));
        prop_assert_eq!(legendre(a as i128 * b as i128, op), la * lb);
    }

    #[test]
    fn quartic_symbol_detects_fourth_powers(seed in 5u64..3_000, q in 1i64..100_000) {
        let p = prime_from(seed, 1, 4);
        prop_assume!(q as u64 % p != 0);
        let fourth: std::collections::HashSet<u64> =
            (1..p).map(|x| x * x % p * x % p * x % p).collect();
        let op = OddPrime::new(p).unwrap();
        if euler(q, p) != 1 {
            prop_assert!(quartic_symbol(q as i128, op).is_err());
        } else {
            let s = quartic_symbol(q as i128, op).unwrap();
            prop_assert_eq!(s == 1, fourth.contains(&(q as u64 % p)));
        }
    }

    #[test]
    fn hilbert_product_formula(a in -5_000i64..5_000, b in -5_000i64..5_000) {
        prop_assume!(a != 0 && b != 0);
        let (a, b) = (a as i128, b as i128);
        let mut primes = prime_factors((2 * a * b).unsigned_abs());
        primes.sort_unstable();
        let mut product = hilbert_symbol(a, b, Place::Infinity).unwrap();
        for p in primes {
            product *= hilbert_symbol(a, b, Place::Prime(p)).unwrap();
        }
        prop_assert_eq!(product, 1);
        // Off the support every symbol is 1.
        prop_assert_eq!(hilbert_symbol(a, b, Place::Prime(10_007)).unwrap(), 1);
    }

    #[test]
    fn hilbert_trivial_when_conic_has_a_point(x in 1i64..200, z in 1i64..200, a in -400i64..400) {
        // a x^2 + b = z^2 with b chosen to make it hold.
        let b = (z * z - a * x * x) as i128;
        prop_assume!(a != 0 && b != 0);
        let a = a as i128;
        prop_assert_eq!(hilbert_symbol(a, b, Place::Infinity).unwrap(), 1);
        for p in prime_factors((2 * a * b).unsigned_abs()) {
            prop_assert_eq!(hilbert_symbol(a, b, Place::Prime(p)).unwrap(), 1, "p = {}", p);
        }
    }

    #[test]
    fn delta_conditions_agree(seed in 17u64..200_000) {
        let p = prime_from(seed, 1, 8);
        let c = li_tian_conditions(p).unwrap();
        prop_assert!(c.agree(), "p = {}: {:?}", p, c.as_array());
        // v parity by direct search over p = u^2 + 8v^2.
        let v = (1u64..).take_while(|v| 8 * v * v < p).find(|v| {
            let r = p - 8 * v * v;
            let s = (r as f64).sqrt() as u64;
            (s.saturating_sub(1)..=s + 1).any(|t| t * t == r)
        }).unwrap();
        prop_assert_eq!(delta_p(p).unwrap(), (v % 2) as u8);
        prop_assert_eq!(c.v_odd, v % 2 == 1);
    }

    #[test]
    fn x_mod_4_does_not_depend_on_the_representation(seed in 17u64..20_000) {
        let p = prime_from(seed, 1, 8);
        let r = represent_prime(p).unwrap();
        prop_assert_eq!(r.x as u128 * r.x as u128, p as u128 + 32 * r.y as u128 * r.y as u128);
        // Every p = x^2 - 32y^2 with 0 < x below a bound.
        let bound = 200 * r.x.max(100) as u128;
        let mut seen = 0;
        for y in 0u128.. {
            let x2 = p as u128 + 32 * y * y;
            if x2 > bound * bound {
                break;
            }
            let x = x2.isqrt();
            if x * x == x2 {
                seen += 1;
                prop_assert_eq!(x % 4, r.x as u128 % 4, "p = {}, (x, y) = ({}, {})", p, x, y);
            }
        }
        prop_assert!(seen >= 2, "p = {}: only {} representations below the bound", p, seen);
    }
}
