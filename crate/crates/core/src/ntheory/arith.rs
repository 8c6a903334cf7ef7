//! Fixed-width modular arithmetic helpers.

/// `a * b mod m`.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m`.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Greatest common divisor of absolute values.
pub fn gcd_i128(a: i128, b: i128) -> u128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Floor square root.
pub fn isqrt(n: u128) -> u128 {
    n.isqrt()
}

/// The square root of `n` if `n` is a perfect square.
pub fn is_square(n: u128) -> Option<u128> {
    // Quadratic residues mod 64, 63, 65 and 11 reject most non-squares
    // before the root.
    const fn residues(m: u64) -> u128 {
        let mut mask = 0u128;
        let mut i = 0;
        while i < m {
            mask |= 1 << (i * i % m);
            i += 1;
        }
        mask
    }
    const QR64: u128 = residues(64);
    const QR63: u128 = residues(63);
    const QR65: u128 = residues(65);
    const QR11: u128 = residues(11);
    if QR64 >> (n % 64) & 1 == 0 {
        return None;
    }
    let r = (n % (63 * 65 * 11)) as u64;
    if QR63 >> (r % 63) & 1 == 0 || QR65 >> (r % 65) & 1 == 0 || QR11 >> (r % 11) & 1 == 0 {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares() {
        for n in 0u128..5000 {
            let r = (0..=n).find(|r| r * r >= n).unwrap();
            assert_eq!(is_square(n), (r * r == n).then_some(r), "{n}");
        }
        assert_eq!(
            is_square(u64::MAX as u128 * u64::MAX as u128),
            Some(u64::MAX as u128)
        );
    }

    #[test]
    fn modular() {
        assert_eq!(pow_mod(2, 10, 41), 40);
        assert_eq!(pow_mod(3, 0, 1), 0);
        assert_eq!(
            mul_mod(u64::MAX, u64::MAX, 1_000_000_007),
            ((u64::MAX as u128).pow(2) % 1_000_000_007) as u64
        );
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd_i128(-12, 18), 6);
    }
}
