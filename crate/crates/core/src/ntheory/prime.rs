//! Primality, factorization and the square-free integer type.

use alloc::vec::Vec;
use core::fmt;

use super::arith::{gcd, mul_mod, pow_mod};
use super::symbols::OddPrime;
use crate::error::{precondition, Error, Result};

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const TRIAL_LIMIT: u64 = 1000;
const RHO_ROUNDS: u64 = 1 << 22;

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho with polynomial `x^2 + c`.
fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r *= 2;
        if r > RHO_ROUNDS {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_into(n: u64, out: &mut Vec<u64>) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if is_prime(n) {
        out.push(n);
        return Ok(());
    }
    if let Some(r) = is_perfect_square(n) {
        split_into(r, out)?;
        return split_into(r, out);
    }
    for c in 1..64 {
        if let Some(f) = pollard_brent(n, c) {
            split_into(f, out)?;
            return split_into(n / f, out);
        }
    }
    Err(Error::FactorizationFailed(n))
}

fn is_perfect_square(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Factors `n`, failing if any prime occurs more than once.
pub fn factor_squarefree(n: u64) -> Result<SquarefreeInteger> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p <= TRIAL_LIMIT && p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return Err(Error::NotSquarefree { n, p });
            }
            primes.push(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split_into(m, &mut primes)?;
    primes.sort_unstable();
    if let Some(w) = primes.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::NotSquarefree { n, p: w[0] });
    }
    Ok(SquarefreeInteger { value: n, primes })
}

/// Distinct prime factors of `n >= 1`, increasing; repeated factors allowed.
pub fn distinct_prime_factors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p <= TRIAL_LIMIT && p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split_into(m, &mut primes)?;
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// A positive square-free integer together with its prime factorization.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquarefreeInteger {
    value: u64,
    primes: Vec<u64>,
}

impl SquarefreeInteger {
    /// Factors `n`; see [`factor_squarefree`].
    pub fn new(n: u64) -> Result<Self> {
        factor_squarefree(n)
    }

    /// Builds the product of distinct primes, each certified prime.
    pub fn from_primes(primes: &[u64]) -> Result<Self> {
        let mut ps = primes.to_vec();
        ps.sort_unstable();
        let mut value: u64 = 1;
        for (i, &p) in ps.iter().enumerate() {
            if !is_prime(p) {
                return Err(Error::BadPrime {
                    value: p,
                    expected: "a prime",
                });
            }
            if i > 0 && ps[i - 1] == p {
                return Err(Error::NotSquarefree { n: 0, p });
            }
            value = value
                .checked_mul(p)
                .ok_or(Error::Overflow("prime product"))?;
        }
        Ok(Self { value, primes: ps })
    }

    /// The integer itself.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Prime factors in increasing order.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Odd prime factors in increasing order.
    pub fn odd_primes(&self) -> Vec<OddPrime> {
        self.primes
            .iter()
            .filter(|&&p| p != 2)
            .map(|&p| OddPrime::trusted(p))
            .collect()
    }

    /// Number of prime factors.
    pub fn omega(&self) -> usize {
        self.primes.len()
    }

    /// True if `value` is odd.
    pub fn is_odd(&self) -> bool {
        self.value % 2 == 1
    }

    /// `value mod 8`.
    pub fn residue_mod8(&self) -> u64 {
        self.value % 8
    }

    /// True if every prime factor is `residue mod modulus`.
    pub fn all_primes_congruent(&self, residue: u64, modulus: u64) -> bool {
        self.primes.iter().all(|p| p % modulus == residue)
    }

    /// True if `d` divides the value.
    pub fn divides(&self, d: u64) -> bool {
        d != 0 && self.value % d == 0
    }

    /// The divisor `d` (which must divide `value`) with its factorization.
    pub fn divisor(&self, d: u64) -> Result<SquarefreeInteger> {
        if !self.divides(d) {
            return Err(precondition(alloc::format!(
                "{d} does not divide {}",
                self.value
            )));
        }
        let primes = self.primes.iter().copied().filter(|p| d % p == 0).collect();
        Ok(SquarefreeInteger { value: d, primes })
    }

    /// `value / d` with its factorization.
    pub fn cofactor(&self, d: u64) -> Result<SquarefreeInteger> {
        if !self.divides(d) {
            return Err(precondition(alloc::format!(
                "{d} does not divide {}",
                self.value
            )));
        }
        self.divisor(self.value / d)
    }

    /// The product of the primes selected by the bits of `mask`.
    pub fn divisor_from_mask(&self, mask: u64) -> u64 {
        self.primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .product()
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut ds: Vec<u64> = (0..1u64 << self.omega())
            .map(|m| self.divisor_from_mask(m))
            .collect();
        ds.sort_unstable();
        ds
    }
}

impl fmt::Debug for SquarefreeInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {:?}", self.value, self.primes)
    }
}

impl fmt::Display for SquarefreeInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), naive_prime(n), "{n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_squarefree(221).unwrap().primes(), &[13, 17]);
        assert!(factor_squarefree(1).unwrap().primes().is_empty());
        assert_eq!(
            factor_squarefree(9),
            Err(Error::NotSquarefree { n: 9, p: 3 })
        );
        assert_eq!(factor_squarefree(0), Err(Error::Zero));
        assert_eq!(distinct_prime_factors(135).unwrap(), [3, 5]);
        assert_eq!(
            distinct_prime_factors(1_000_003 * 1_000_003 * 4).unwrap(),
            [2, 1_000_003]
        );
    }

    #[test]
    fn factor_large_semiprimes() {
        let p = 4_294_967_291u64;
        let q = 4_294_967_279u64;
        assert_eq!(factor_squarefree(p * q).unwrap().primes(), &[q, p]);
        assert_eq!(
            factor_squarefree(1_000_003 * 1_000_033 * 7)
                .unwrap()
                .primes(),
            &[7, 1_000_003, 1_000_033]
        );
        assert!(matches!(
            factor_squarefree(1_000_003 * 1_000_003),
            Err(Error::NotSquarefree { p: 1_000_003, .. })
        ));
    }

    #[test]
    fn divisors_and_masks() {
        let n = SquarefreeInteger::new(65).unwrap();
        assert_eq!(n.divisors(), [1, 5, 13, 65]);
        assert_eq!(n.divisor_from_mask(0b10), 13);
        assert_eq!(n.cofactor(5).unwrap().primes(), &[13]);
        assert!(n.divisor(3).is_err());
    }
}
