//! Representations of primes `p = 1 mod 8` by `u^2 + 8v^2`, `a^2 + 16b^2` and
//! `x^2 - 32y^2`, and the six equivalent descriptions of `delta_p`.

use alloc::format;

use super::arith::is_square;
use super::prime::{is_prime, SquarefreeInteger};
use super::symbols::{is_padic_unit_square, quartic_symbol, sqrt_mod, OddPrime};
use crate::error::{internal, precondition, Error, Result};

/// `p = u^2 + 8v^2 = a^2 + 16b^2 = x^2 - 32y^2`, all coordinates positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeRepresentations {
    /// The prime.
    pub p: u64,
    /// `p = u^2 + 8v^2`.
    pub u: u64,
    /// `p = u^2 + 8v^2`.
    pub v: u64,
    /// `p = a^2 + 16b^2`.
    pub a: u64,
    /// `p = a^2 + 16b^2`.
    pub b: u64,
    /// `p = x^2 - 32y^2`.
    pub x: u64,
    /// `p = x^2 - 32y^2`.
    pub y: u64,
}

fn check_one_mod_eight(p: u64) -> Result<OddPrime> {
    if p % 8 == 1 && is_prime(p) {
        Ok(OddPrime::trusted(p))
    } else {
        Err(Error::BadPrime {
            value: p,
            expected: "a prime = 1 mod 8",
        })
    }
}

/// First `(s, t)` with `t >= 1` and `p = s^2 + k t^2`.
fn positive_definite(p: u64, k: u64) -> Option<(u64, u64)> {
    (1..)
        .take_while(|t| k * t * t < p)
        .find_map(|t| is_square((p - k * t * t) as u128).map(|s| (s as u64, t)))
}

/// Computes the three representations.
///
/// For `x^2 - 32y^2` the smallest `y0 >= 0` with `p + 2y0^2` a square gives
/// `p = x0^2 - 2y0^2`; if `4` does not divide `y0`, multiplying by the unit
/// `3 + 2sqrt2` yields `(3x0 + 4y0, 2x0 + 3y0)`, whose second coordinate is.
pub fn represent_prime(p: u64) -> Result<PrimeRepresentations> {
    check_one_mod_eight(p)?;
    let missing = |form: &str| internal(format!("no representation of {p} by {form}"));
    let (u, v) = positive_definite(p, 8).ok_or_else(|| missing("u^2+8v^2"))?;
    let (a, b) = positive_definite(p, 16).ok_or_else(|| missing("a^2+16b^2"))?;
    let (x0, y0) = (0u128..)
        .find_map(|y| is_square(p as u128 + 2 * y * y).map(|x| (x, y)))
        .expect("p splits in Q(sqrt 2)");
    let (x, y4) = if y0 % 4 == 0 {
        (x0, y0)
    } else {
        (3 * x0 + 4 * y0, 2 * x0 + 3 * y0)
    };
    if y4 % 4 != 0 || y4 == 0 {
        return Err(missing("x^2-32y^2"));
    }
    let (x, y) = (
        u64::try_from(x).map_err(|_| Error::Overflow("x^2-32y^2"))?,
        u64::try_from(y4 / 4).map_err(|_| Error::Overflow("x^2-32y^2"))?,
    );
    if x as u128 * x as u128 - 32 * y as u128 * y as u128 != p as u128 {
        return Err(missing("x^2-32y^2"));
    }
    Ok(PrimeRepresentations {
        p,
        u,
        v,
        a,
        b,
        x,
        y,
    })
}

/// The six arithmetic conditions, each true exactly when `delta_p = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiTianConditions {
    /// `v` is odd in `p = u^2 + 8v^2`.
    pub v_odd: bool,
    /// `(p-1)/8 + b` is odd in `p = a^2 + 16b^2`.
    pub b_shift_odd: bool,
    /// `1 + i_p` is not a square mod `p`, where `i_p^2 = -1`.
    pub one_plus_i_nonsquare: bool,
    /// `1 + j_p` is not a square mod `p`, where `j_p^2 = 2`.
    pub one_plus_j_nonsquare: bool,
    /// `(2/p)_4 = (-1)^((p-9)/8)`.
    pub quartic_two: bool,
    /// `x = 3 mod 4` in `p = x^2 - 32y^2`.
    pub x_three_mod_four: bool,
}

impl LiTianConditions {
    /// The conditions in order.
    pub fn as_array(&self) -> [bool; 6] {
        [
            self.v_odd,
            self.b_shift_odd,
            self.one_plus_i_nonsquare,
            self.one_plus_j_nonsquare,
            self.quartic_two,
            self.x_three_mod_four,
        ]
    }

    /// True if all six conditions have the same truth value.
    pub fn agree(&self) -> bool {
        let c = self.as_array();
        c.iter().all(|&x| x == c[0])
    }
}

/// Evaluates `1 + r` for both square roots `r` of `s` and insists the verdicts match.
fn one_plus_root_nonsquare(s: i128, p: OddPrime) -> Result<bool> {
    let r = sqrt_mod(s, p).ok_or_else(|| internal(format!("{s} has no root mod {}", p.get())))?;
    let check = |root: u64| is_padic_unit_square(1 + root as i128, p).map(|sq| !sq);
    match (check(r), check(p.get() - r)) {
        (Some(x), Some(y)) if x == y => Ok(x),
        _ => Err(internal(format!(
            "1+sqrt({s}) verdict depends on the root mod {}",
            p.get()
        ))),
    }
}

/// Evaluates every condition for a prime `p = 1 mod 8`.
pub fn li_tian_conditions(p: u64) -> Result<LiTianConditions> {
    let op = check_one_mod_eight(p)?;
    let r = represent_prime(p)?;
    let sign = if (p - 9) / 8 % 2 == 0 { 1 } else { -1 };
    Ok(LiTianConditions {
        v_odd: r.v % 2 == 1,
        b_shift_odd: ((p - 1) / 8 + r.b) % 2 == 1,
        one_plus_i_nonsquare: one_plus_root_nonsquare(-1, op)?,
        one_plus_j_nonsquare: one_plus_root_nonsquare(2, op)?,
        quartic_two: quartic_symbol(2, op)? == sign,
        x_three_mod_four: r.x % 4 == 3,
    })
}

/// `delta_p`: 1 iff `v` is odd in `p = u^2 + 8v^2`.
pub fn delta_p(p: u64) -> Result<u8> {
    check_one_mod_eight(p)?;
    Ok((represent_prime(p)?.v % 2) as u8)
}

/// `delta_p` with all six conditions evaluated and required to agree.
pub fn delta_p_verified(p: u64) -> Result<u8> {
    let c = li_tian_conditions(p)?;
    if !c.agree() {
        return Err(internal(format!(
            "delta conditions disagree for {p}: {:?}",
            c.as_array()
        )));
    }
    Ok(u8::from(c.v_odd))
}

/// `delta_n`: parity of the sum of `delta_p` over `p | n`.
pub fn delta_n(n: &SquarefreeInteger) -> Result<u8> {
    if !n.all_primes_congruent(1, 8) {
        return Err(precondition(format!(
            "delta_n needs every prime of {} to be 1 mod 8",
            n.value()
        )));
    }
    n.primes()
        .iter()
        .try_fold(0u8, |acc, &p| Ok(acc ^ delta_p(p)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representation_examples() {
        let r = represent_prime(17).unwrap();
        assert_eq!((r.u, r.v, r.a, r.b, r.x, r.y), (3, 1, 1, 1, 23, 4));
        let r = represent_prime(41).unwrap();
        assert_eq!((r.u, r.v, r.a, r.b), (3, 2, 5, 1));
        let r = represent_prime(73).unwrap();
        assert_eq!((r.u, r.v), (1, 3));
        assert_eq!(r.x % 4, 3);
        assert_eq!(r.x * r.x - 32 * r.y * r.y, 73);
        assert!(represent_prime(13).is_err());
        assert!(represent_prime(25).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_p(17).unwrap(), 1);
        assert_eq!(delta_p(41).unwrap(), 0);
        assert_eq!(delta_p(113).unwrap(), 0);
        assert_eq!(delta_p(89).unwrap(), 1);
        assert_eq!(delta_p_verified(17).unwrap(), 1);
        assert_eq!(delta_p_verified(41).unwrap(), 0);
        let c = li_tian_conditions(17).unwrap();
        assert!(c.quartic_two && c.one_plus_i_nonsquare);
        let n = |v| SquarefreeInteger::new(v).unwrap();
        assert_eq!(delta_n(&n(17)).unwrap(), 1);
        assert_eq!(delta_n(&n(17 * 89)).unwrap(), 0);
        assert_eq!(delta_n(&n(41 * 113)).unwrap(), 0);
        assert_eq!(delta_n(&n(1)).unwrap(), 0);
        assert!(delta_n(&n(13)).is_err());
    }
}
