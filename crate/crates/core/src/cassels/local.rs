//! Odd-place recomputation of pairing entries from explicit local points on
//! the genus one curves `D_Λ`, working modulo `p^N`.

use alloc::format;

use super::{BasisElement, BlockSolutions, CasselsSolutions, PairingMatrix};
use crate::error::{internal, precondition, Result};
use crate::ntheory::{hilbert_symbol, legendre, sqrt_mod_prime_power, OddPrime, Place};

struct Ring {
    p: u64,
    prime: OddPrime,
    exp: u32,
    m: i128,
}

impl Ring {
    fn new(p: u64) -> Result<Self> {
        let prime = OddPrime::new(p)?;
        let mut exp = 1;
        while (p as u128).pow(exp + 1) < 1 << 62 {
            exp += 1;
        }
        if exp < 2 {
            return Err(precondition(format!(
                "p = {p} is too large for local points"
            )));
        }
        Ok(Self {
            p,
            prime,
            exp,
            m: (p as i128).pow(exp),
        })
    }

    fn red(&self, x: i128) -> i128 {
        x.rem_euclid(self.m)
    }

    fn mul(&self, x: i128, y: i128) -> i128 {
        self.red(self.red(x) * self.red(y))
    }

    fn sqrt(&self, a: i128) -> Result<i128> {
        sqrt_mod_prime_power(a, self.prime, self.exp)
            .map(|r| r as i128)
            .ok_or_else(|| internal(format!("{a} has no square root in Z_{}", self.p)))
    }

    /// The root `r` of `a` with `p | f(r)`.
    fn pick_root(&self, a: i128, f: impl Fn(i128) -> i128) -> Result<i128> {
        let r = self.sqrt(a)?;
        [r, self.red(-r)]
            .into_iter()
            .find(|&u| f(u).rem_euclid(self.p as i128) == 0)
            .ok_or_else(|| {
                internal(format!(
                    "no local point at p = {}: divisibility selection failed",
                    self.p
                ))
            })
    }

    /// `(x, y)_p` for `x` known modulo `p^N`; `None` if `x = 0 mod p^N`.
    fn hilbert(&self, x: i128, y: u64) -> Result<Option<i8>> {
        let mut x = self.red(x);
        if x == 0 {
            return Ok(None);
        }
        let p = self.p as i128;
        let mut scale = 1i128;
        while x % p == 0 {
            x /= p;
            scale *= p;
        }
        let rep = scale * (x % p);
        hilbert_symbol(rep, y as i128, Place::Prime(self.p)).map(Some)
    }
}

/// `(t, u1, u2, u3)` on `D_x` at `p | n`. `flip` negates the root of 2 or
/// of -1, which the pairing does not depend on.
fn local_point(ring: &Ring, s: &BlockSolutions, x: BasisElement, flip: bool) -> Result<[i128; 4]> {
    let (d, dp) = (s.d() as i128, s.d_prime() as i128);
    let (a, b, c) = (s.c.a as i128, s.c.b as i128, s.c.c as i128);
    let (bbar, cbar) = (s.cbar.bbar, s.cbar.cbar);
    let sign = if flip { -1 } else { 1 };
    let p_divides_d = d % ring.p as i128 == 0;
    let pt = match (x, p_divides_d) {
        (BasisElement::Lambda(_), false) => {
            let u1 = ring.pick_root(d, |u| c - ring.mul(a, u))?;
            [0, u1, 1, ring.red(-1)]
        }
        (BasisElement::Lambda(_), true) => {
            let u3 = ring.pick_root(dp, |u| dp * b + ring.mul(c, u))?;
            let j = sign * ring.sqrt(2)?;
            [1, 0, ring.mul(-j, u3), u3]
        }
        (BasisElement::LambdaPrime(_), false) => {
            let u3 = ring.pick_root(d, |u| c + ring.mul(a, u))?;
            [0, ring.red(-1), 1, u3]
        }
        (BasisElement::LambdaPrime(_), true) => {
            let u1 = ring.pick_root(-dp, |u| ring.mul(dp, bbar) - ring.mul(cbar, u))?;
            let i = sign * ring.sqrt(-1)?;
            [1, u1, ring.mul(-i, u1), 0]
        }
    };
    let n = d * dp;
    let [t, u1, u2, u3] = pt;
    let sq = |v: i128| ring.mul(v, v);
    let h = match x {
        BasisElement::Lambda(_) => [
            -n * sq(t) + d * sq(u2) - d * sq(u3),
            -n * sq(t) + d * sq(u3) - sq(u1),
            2 * n * sq(t) + sq(u1) - d * sq(u2),
        ],
        BasisElement::LambdaPrime(_) => [
            -n * sq(t) + d * sq(u2) - sq(u3),
            -n * sq(t) + sq(u3) - d * sq(u1),
            2 * n * sq(t) + d * sq(u1) - d * sq(u2),
        ],
    };
    if h.iter().any(|&v| ring.red(v) != 0) {
        return Err(internal(format!(
            "local point at p = {} is off the curve",
            ring.p
        )));
    }
    Ok(pt)
}

/// The tangent forms `L_1, L_2, L_3` at the global points, evaluated at `pt`.
fn tangent_values(ring: &Ring, s: &BlockSolutions, x: BasisElement, pt: [i128; 4]) -> [i128; 3] {
    let dp = s.d_prime() as i128;
    let (a, b, c) = (s.c.a as i128, s.c.b as i128, s.c.c as i128);
    let [t, u1, u2, u3] = pt;
    let m = |x: i128, y: i128| ring.mul(x, y);
    match x {
        BasisElement::Lambda(_) => {
            let (alpha, beta, gamma) = (s.gamma.alpha, s.gamma.beta, s.gamma.gamma);
            [
                ring.red(u2 - u3),
                ring.red(m(m(dp, b), t) - m(c, u3) + m(a, u1)),
                ring.red(m(m(2 * dp, beta), t) + m(alpha, u1) - m(gamma, u2)),
            ]
        }
        BasisElement::LambdaPrime(_) => {
            let (abar, bbar, cbar) = (s.cbar.abar, s.cbar.bbar, s.cbar.cbar);
            [
                ring.red(m(m(dp, b), t) - m(c, u2) + m(a, u3)),
                ring.red(m(m(dp, bbar), t) - m(abar, u3) + m(cbar, u1)),
                ring.red(u1 - u2),
            ]
        }
    }
}

/// Additive local factor `prod_m (L_m(P_p), y_m)_p` of `<x, y>` at an odd
/// prime `p | n`.
pub fn local_pairing_value(
    sols: &CasselsSolutions,
    x: BasisElement,
    y: BasisElement,
    p: u64,
) -> Result<u8> {
    let dec = sols.decomposition();
    if !dec.n().divides(p) || p == 2 {
        return Err(precondition(format!(
            "p = {p} is not an odd prime factor of {}",
            dec.n().value()
        )));
    }
    let k = dec.k();
    if x.block() >= k || y.block() >= k {
        return Err(precondition(format!(
            "basis index out of range for k = {k}"
        )));
    }
    let ring = Ring::new(p)?;
    let s = &sols.blocks()[x.block()];
    let ys = y.triple(dec.blocks()[y.block()].value());
    'points: for flip in [false, true] {
        let pt = local_point(&ring, s, x, flip)?;
        let ls = tangent_values(&ring, s, x, pt);
        let mut value = 0u8;
        for (l, &ym) in ls.iter().zip(&ys) {
            if ym == 1 || (ym % p != 0 && legendre(ym as i128, ring.prime) == 1) {
                continue;
            }
            match ring.hilbert(*l, ym)? {
                Some(h) => value ^= u8::from(h == -1),
                None => continue 'points,
            }
        }
        return Ok(value);
    }
    Err(internal(format!(
        "every local point at p = {p} meets a tangent plane to precision p^{}",
        ring.exp
    )))
}

/// Recomputes `<x, y>` as the product of its local factors at the odd
/// primes of `n` and compares with the table.
pub fn verify_local_pairing_odd(
    sols: &CasselsSolutions,
    table: &PairingMatrix,
    x: BasisElement,
    y: BasisElement,
) -> Result<bool> {
    let mut value = 0;
    for &p in sols.decomposition().n().primes() {
        value ^= local_pairing_value(sols, x, y, p)?;
    }
    Ok(value == table.entry(x, y))
}

#[cfg(test)]
mod tests {
    use super::super::{build_cassels_solutions, pairing_table};
    use super::*;
    use crate::genus::{Decomposition, SolveOptions};
    use crate::ntheory::SquarefreeInteger;

    fn check_all(n: u64, blocks: &[u64]) {
        let o = SolveOptions::default();
        let dec = Decomposition::new(&SquarefreeInteger::new(n).unwrap(), blocks).unwrap();
        let sols = build_cassels_solutions(&dec, &o).unwrap();
        let table = pairing_table(&sols, &o).unwrap();
        let k = dec.k();
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

    #[test]
    fn local_agrees_with_table() {
        check_all(17, &[17]);
        check_all(41, &[41]);
        check_all(17 * 89, &[17, 89]);
    }
}
