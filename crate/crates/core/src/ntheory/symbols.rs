//! Residue symbols, Hilbert symbols and modular square roots.

use alloc::format;

use super::arith::{mul_mod, pow_mod};
use super::prime::{is_prime, SquarefreeInteger};
use crate::error::{internal, precondition, Error, Result};

/// An odd prime, certified at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddPrime(u64);

impl OddPrime {
    /// Certifies `p` with Miller-Rabin.
    pub fn new(p: u64) -> Result<Self> {
        if p > 2 && is_prime(p) {
            Ok(Self(p))
        } else {
            Err(Error::BadPrime {
                value: p,
                expected: "an odd prime",
            })
        }
    }

    /// Wraps a value already known to be an odd prime.
    pub(crate) fn trusted(p: u64) -> Self {
        debug_assert!(p > 2 && is_prime(p));
        Self(p)
    }

    /// The prime.
    pub fn get(self) -> u64 {
        self.0
    }
}

pub(crate) fn residue(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i128, p: OddPrime) -> i8 {
    let p = p.0;
    let r = residue(a, p);
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Additive Legendre symbol `[a/p]`: 0 if `(a/p) = 1`, otherwise 1.
pub fn additive_legendre(a: i128, p: OddPrime) -> u8 {
    u8::from(legendre(a, p) != 1)
}

/// Jacobi symbol `(a/m)` for odd positive `m`, by quadratic reciprocity.
pub fn jacobi(a: i128, m: u64) -> Result<i8> {
    if m % 2 == 0 {
        return Err(precondition(format!(
            "Jacobi modulus {m} must be odd and positive"
        )));
    }
    let (mut a, mut m) = (residue(a, m), m);
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (m % 8 == 3 || m % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        (a, m) = (m % a, a);
    }
    Ok(if m == 1 { sign } else { 0 })
}

/// Quartic residue symbol `(q/p)_4` for `p = 1 mod 4` and `q` a nonzero square
/// mod `p`, computed as `q^((p-1)/4) mod p`.
pub fn quartic_symbol(q: i128, p: OddPrime) -> Result<i8> {
    if p.0 % 4 != 1 {
        return Err(Error::BadPrime {
            value: p.0,
            expected: "a prime = 1 mod 4",
        });
    }
    if legendre(q, p) != 1 {
        return Err(precondition(format!(
            "({q}/{}) must be +1 for the quartic symbol",
            p.0
        )));
    }
    match pow_mod(residue(q, p.0), (p.0 - 1) / 4, p.0) {
        1 => Ok(1),
        t if t == p.0 - 1 => Ok(-1),
        t => Err(internal(format!("{q}^((p-1)/4) = {t} mod {}", p.0))),
    }
}

/// `(q/d)_4`, the product of [`quartic_symbol`] over the primes of `d`.
pub fn quartic_symbol_composite(q: i128, d: &SquarefreeInteger) -> Result<i8> {
    if !d.is_odd() {
        return Err(precondition(format!(
            "quartic symbol modulus {} must be odd",
            d.value()
        )));
    }
    d.odd_primes()
        .into_iter()
        .try_fold(1i8, |acc, p| Ok(acc * quartic_symbol(q, p)?))
}

/// A place of the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    /// The real place.
    Infinity,
    /// The `p`-adic place.
    Prime(u64),
}

fn split_power(mut a: i128, p: u64) -> (u32, i128) {
    let mut k = 0;
    while a % p as i128 == 0 {
        a /= p as i128;
        k += 1;
    }
    (k, a)
}

/// Hilbert symbol `(a, b)_v` for nonzero integers. For rationals pass
/// numerator times denominator, which lies in the same square class.
pub fn hilbert_symbol(a: i128, b: i128, place: Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(precondition("Hilbert symbol arguments must be nonzero"));
    }
    let p = match place {
        Place::Infinity => return Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Place::Prime(p) if is_prime(p) => p,
        Place::Prime(p) => {
            return Err(Error::BadPrime {
                value: p,
                expected: "a prime",
            })
        }
    };
    let (alpha, u) = split_power(a, p);
    let (beta, v) = split_power(b, p);
    if p == 2 {
        let eps = |x: i128| ((x.rem_euclid(4) - 1) / 2) as u32;
        let omega = |x: i128| u32::from(matches!(x.rem_euclid(8), 3 | 5));
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    let op = OddPrime::trusted(p);
    let mut s: i8 = if alpha * beta % 2 == 1 && p % 4 == 3 {
        -1
    } else {
        1
    };
    if beta % 2 == 1 {
        s *= legendre(u, op);
    }
    if alpha % 2 == 1 {
        s *= legendre(v, op);
    }
    Ok(s)
}

/// Square root of `a` modulo `p` by Tonelli-Shanks; the smaller of the two
/// roots, or `None` if `a` is a non-residue.
pub fn sqrt_mod(a: i128, p: OddPrime) -> Option<u64> {
    let p = p.0;
    let a = residue(a, p);
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let (mut m, mut c, mut t, mut r) = (
        s,
        pow_mod(z, q, p),
        pow_mod(a, q, p),
        pow_mod(a, q.div_ceil(2), p),
    );
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

fn inverse_mod(a: u128, m: u128) -> Option<u128> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u128)
}

/// Square root of the unit `a` modulo `p^e` by Hensel lifting the smaller
/// root mod `p`. The other root is `p^e` minus this one.
pub fn sqrt_mod_prime_power(a: i128, p: OddPrime, e: u32) -> Option<u128> {
    let pe = (p.0 as u128).checked_pow(e)?;
    let pe_i = i128::try_from(pe).ok()?;
    let r0 = sqrt_mod(a, p)?;
    if r0 == 0 {
        return None;
    }
    let a = a.rem_euclid(pe_i) as u128;
    let mul = |x: u128, y: u128| x * y % pe;
    let mut r = r0 as u128;
    for _ in 0..e {
        let f = (mul(r, r) + pe - a) % pe;
        let inv = inverse_mod(2 * r % pe, pe)?;
        r = (r + pe - mul(f, inv)) % pe;
    }
    (mul(r, r) == a).then_some(r)
}

/// Whether the `p`-adic unit `a` is a square in `Z_p`; `None` if `p | a`.
pub fn is_padic_unit_square(a: i128, p: OddPrime) -> Option<bool> {
    match legendre(a, p) {
        0 => None,
        s => Some(s == 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u64) -> OddPrime {
        OddPrime::new(x).unwrap()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, p(13)), -1);
        assert_eq!(additive_legendre(2, p(13)), 1);
        assert_eq!(legendre(17, p(13)), 1);
        assert_eq!(additive_legendre(17, p(13)), 0);
        assert_eq!(legendre(169, p(13)), 0);
        assert_eq!(legendre(-1, p(13)), 1);
        assert!(OddPrime::new(2).is_err());
        assert!(OddPrime::new(15).is_err());
    }

    #[test]
    fn legendre_matches_squares_table() {
        for q in [3u64, 5, 7, 11, 13, 17, 41, 97] {
            let squares: alloc::vec::Vec<u64> = (1..q).map(|x| x * x % q).collect();
            for a in 1..q {
                let expected = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre(a as i128, p(q)), expected);
                assert_eq!(jacobi(a as i128, q).unwrap(), expected);
            }
        }
    }

    #[test]
    fn jacobi_composite() {
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert_eq!(jacobi(7, 15).unwrap(), -1);
        assert_eq!(jacobi(5, 15).unwrap(), 0);
        assert_eq!(jacobi(-1, 21).unwrap(), 1);
        assert!(jacobi(3, 14).is_err());
    }

    #[test]
    fn quartic_examples() {
        assert_eq!(quartic_symbol(2, p(17)).unwrap(), -1);
        assert_eq!(quartic_symbol(4, p(17)).unwrap(), 1);
        assert_eq!(quartic_symbol(2, p(41)).unwrap(), -1);
        let d17 = SquarefreeInteger::new(17).unwrap();
        let d89 = SquarefreeInteger::new(89).unwrap();
        assert_eq!(quartic_symbol_composite(89, &d17).unwrap(), 1);
        assert_eq!(quartic_symbol_composite(17, &d89).unwrap(), -1);
        assert!(quartic_symbol(3, p(17)).is_err());
        assert!(quartic_symbol(2, p(7)).is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(-1, -1, Place::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol(-1, -1, Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(13, 17, Place::Prime(7)).unwrap(), 1);
        assert_eq!(hilbert_symbol(2, 3, Place::Prime(3)).unwrap(), -1);
        assert!(hilbert_symbol(0, 3, Place::Infinity).is_err());
        assert!(hilbert_symbol(1, 3, Place::Prime(9)).is_err());
    }

    #[test]
    fn hilbert_two_adic_matches_solubility_search() {
        // (a,b)_2 = 1 iff a x^2 + b y^2 = z^2 has a primitive solution mod 2^5
        // with one of x, y, z odd; a brute-force check for unit/2-power pairs.
        let cls = [1i128, 3, 5, 7, 2, 6, 10, 14];
        for &a in &cls {
            for &b in &cls {
                let m = 64i128;
                let solvable = (0..m).any(|x| {
                    (0..m).any(|y| {
                        (0..m).any(|z| {
                            (x % 2 == 1 || y % 2 == 1 || z % 2 == 1)
                                && (a * x * x + b * y * y - z * z).rem_euclid(m) == 0
                        })
                    })
                });
                let h = hilbert_symbol(a, b, Place::Prime(2)).unwrap();
                assert_eq!(h == 1, solvable, "({a},{b})_2");
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod(4, p(13)), Some(2));
        assert_eq!(sqrt_mod(2, p(13)), None);
        assert_eq!(sqrt_mod(-1, p(17)), Some(4));
        assert_eq!(is_padic_unit_square(1 + 4, p(17)), Some(false));
        assert_eq!(is_padic_unit_square(17, p(17)), None);
        for q in [3u64, 5, 17, 41, 73, 97, 257, 65_537, 1_000_000_007] {
            for a in 1..200i128 {
                if let Some(r) = sqrt_mod(a, p(q)) {
                    assert_eq!(mul_mod(r, r, q), residue(a, q));
                    assert!(r <= q - r);
                }
            }
        }
    }

    #[test]
    fn hensel_lifting() {
        for q in [5u64, 13, 17, 41, 89] {
            for a in [-1i128, 2, -2, 13, 89] {
                if legendre(a, p(q)) != 1 {
                    continue;
                }
                let r = sqrt_mod_prime_power(a, p(q), 3).unwrap();
                let m = (q as u128).pow(3);
                assert_eq!(r * r % m, a.rem_euclid(m as i128) as u128);
            }
        }
    }
}
