//! Pure 2-Selmer groups of `y^2 = x^3 - n^2 x` for odd square-free `n`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{internal, precondition, Error, Result};
use crate::f2linalg::{BitMatrix, BitVector};
use crate::genus::Genus;
use crate::ntheory::{additive_legendre, gcd, legendre, OddPrime, SquarefreeInteger};

/// Largest number of prime factors accepted by [`enumerate_selmer`].
pub const MAX_ENUMERATION_OMEGA: usize = 12;

/// A class `(d1, d2, d3)` with `d1 d2 d3` a square, normalized to positive
/// divisors `d1, d2` of `n` and `d3` the square-free part of `d1 d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SelmerTriple {
    /// First coordinate.
    pub d1: u64,
    /// Second coordinate.
    pub d2: u64,
    /// Third coordinate.
    pub d3: u64,
}

impl SelmerTriple {
    /// `(d1, d2, d1 d2 / gcd(d1, d2)^2)`.
    pub fn new(d1: u64, d2: u64) -> Self {
        let g = gcd(d1, d2);
        Self {
            d1,
            d2,
            d3: d1 / g * (d2 / g),
        }
    }
}

impl fmt::Display for SelmerTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d1, self.d2, self.d3)
    }
}

fn require_odd(n: &SquarefreeInteger) -> Result<()> {
    if n.is_odd() {
        Ok(())
    } else {
        Err(precondition(format!(
            "Selmer computations need odd n, got {}",
            n.value()
        )))
    }
}

/// The matrix `A` with `a_ij = [p_j/p_i]` and `a_ii = Σ_{l≠i} a_il`.
pub fn legendre_matrix(n: &SquarefreeInteger) -> BitMatrix {
    let ps = n.odd_primes();
    let k = ps.len();
    let mut a = BitMatrix::zeros(k, k);
    for i in 0..k {
        let mut row_sum = false;
        for j in (0..k).filter(|&j| j != i) {
            let bit = additive_legendre(ps[j].get() as i128, ps[i]) == 1;
            a.set(i, j, bit);
            row_sum ^= bit;
        }
        a.set(i, i, row_sum);
    }
    a
}

fn diagonal(ps: &[OddPrime], q: i128) -> BitMatrix {
    let mut d = BitMatrix::zeros(ps.len(), ps.len());
    for (i, &p) in ps.iter().enumerate() {
        d.set(i, i, additive_legendre(q, p) == 1);
    }
    d
}

/// `M_n = [[A + D_{-2}, D_2], [D_2, A + D_2]]`.
pub fn monsky_matrix(n: &SquarefreeInteger) -> Result<BitMatrix> {
    require_odd(n)?;
    let ps = n.odd_primes();
    let a = legendre_matrix(n);
    let d2 = diagonal(&ps, 2);
    let dm2 = diagonal(&ps, -2);
    BitMatrix::block(&a.add(&dm2)?, &d2, &d2, &a.add(&d2)?)
}

/// `s2(n) = 2k - rank M_n`.
pub fn s2(n: &SquarefreeInteger) -> Result<u32> {
    Ok((2 * n.omega() - monsky_matrix(n)?.rank()) as u32)
}

/// The Selmer class of a kernel vector `x` of `M_n`.
pub fn kernel_to_triple(x: &BitVector, n: &SquarefreeInteger) -> Result<SelmerTriple> {
    let m = monsky_matrix(n)?;
    if !m.mul_vec(x)?.is_zero() {
        return Err(precondition(format!(
            "{x} is not in the kernel of M_{}",
            n.value()
        )));
    }
    let k = n.omega();
    let pick = |off: usize| {
        (0..k)
            .filter(|&i| x.bit(off + i))
            .map(|i| n.primes()[i])
            .product()
    };
    Ok(SelmerTriple::new(pick(0), pick(k)))
}

/// Local solvability conditions at an odd `p | n` for a normalized triple.
pub fn local_conditions(t: &SelmerTriple, n: &SquarefreeInteger, p: u64) -> Result<bool> {
    if !n.primes().contains(&p) || p == 2 {
        return Err(precondition(format!(
            "{p} is not an odd prime factor of {}",
            n.value()
        )));
    }
    if !n.divides(t.d1) || !n.divides(t.d2) {
        return Err(precondition(format!(
            "{t} is not normalized for n = {}",
            n.value()
        )));
    }
    let op = OddPrime::new(p)?;
    let nv = n.value() as i128;
    let (d1, d2) = (t.d1 as i128, t.d2 as i128);
    let sq = |a: i128| legendre(a, op) == 1;
    Ok(match (t.d1 % p == 0, t.d2 % p == 0) {
        (false, false) => sq(d1) && sq(d2),
        (false, true) => sq(2 * d1) && sq(2 * nv / d2),
        (true, false) => sq(-2 * nv / d1) && sq(2 * d2),
        (true, true) => sq(-nv / d1) && sq(nv / d2),
    })
}

/// Every normalized triple that is locally solvable at all `p | n`; the
/// count is checked against `2^{2k - rank M_n}`.
pub fn enumerate_selmer(n: &SquarefreeInteger) -> Result<Vec<SelmerTriple>> {
    require_odd(n)?;
    let k = n.omega();
    if k > MAX_ENUMERATION_OMEGA {
        return Err(Error::TooManyPrimes(n.value()));
    }
    let mut out = Vec::new();
    for m1 in 0..1u64 << k {
        for m2 in 0..1u64 << k {
            let t = SelmerTriple::new(n.divisor_from_mask(m1), n.divisor_from_mask(m2));
            let mut ok = true;
            for &p in n.primes() {
                if !local_conditions(&t, n, p)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(t);
            }
        }
    }
    out.sort();
    let expected = 1usize << s2(n)?;
    if out.len() != expected {
        return Err(internal(format!(
            "{} locally solvable triples for {} but the Monsky kernel has {expected} elements",
            out.len(),
            n.value()
        )));
    }
    Ok(out)
}

/// Which shape of the `h4 = 1` basis applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisCase {
    /// `rank A = k - 2`: generators `(d, d, 1)`, `(n, n, 1)`.
    RankKMinus2,
    /// `rank A = k - 1`: generators `(d, n/d, n)`, `(n, n, 1)`.
    RankKMinus1,
}

/// The explicit basis of the pure 2-Selmer group when `h4(n) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelmerBasis {
    /// Which case fired.
    pub case: BasisCase,
    /// The divisor `d` found by linear algebra on `A`.
    pub d: u64,
    /// `(d, d*, d d*)` then `(n, n, 1)`.
    pub generators: [SelmerTriple; 2],
}

/// The basis for `n = 1 mod 8`, all primes `1 mod 4` and `h4(n) = 1`.
pub fn selmer_basis_h4_1(n: &SquarefreeInteger) -> Result<SelmerBasis> {
    if n.value() % 8 != 1 || !n.all_primes_congruent(1, 4) {
        return Err(precondition(format!(
            "{} must be 1 mod 8 with all primes 1 mod 4",
            n.value()
        )));
    }
    if Genus::new(n)?.h4() != 1 {
        return Err(precondition(format!("h4({}) != 1", n.value())));
    }
    let k = n.omega();
    let a = legendre_matrix(n);
    let rank = a.rank();
    let divisor = |x: &BitVector| -> u64 {
        (0..k)
            .filter(|&i| x.bit(i))
            .map(|i| n.primes()[i])
            .product()
    };
    let nv = n.value();
    if rank + 2 == k {
        let basis = a.kernel_basis();
        let all_ones = BitVector::from_bits(&alloc::vec![1; k]);
        let x = (1..1u64 << basis.len())
            .map(|mask| {
                let mut v = BitVector::zeros(k);
                for (i, b) in basis.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v.xor_assign(b).expect("same length");
                    }
                }
                v
            })
            .find(|v| *v != all_ones)
            .ok_or_else(|| internal(format!("kernel of A for {nv} is too small")))?;
        let d = divisor(&x);
        Ok(SelmerBasis {
            case: BasisCase::RankKMinus2,
            d,
            generators: [SelmerTriple::new(d, d), SelmerTriple::new(nv, nv)],
        })
    } else if rank + 1 == k {
        let ps = n.odd_primes();
        let b = BitVector::from_bits(
            &ps.iter()
                .map(|&p| additive_legendre(2, p))
                .collect::<Vec<_>>(),
        );
        let x = a
            .solve(&b)?
            .ok_or_else(|| internal(format!("A x = B has no solution for {nv}")))?;
        let d = divisor(&x);
        Ok(SelmerBasis {
            case: BasisCase::RankKMinus1,
            d,
            generators: [SelmerTriple::new(d, nv / d), SelmerTriple::new(nv, nv)],
        })
    } else {
        Err(internal(format!(
            "rank A = {rank} is neither k-1 nor k-2 for {nv} with h4 = 1"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(n: u64) -> SquarefreeInteger {
        SquarefreeInteger::new(n).unwrap()
    }

    #[test]
    fn monsky_examples() {
        assert!(monsky_matrix(&sf(17)).unwrap().is_zero());
        assert_eq!(monsky_matrix(&sf(3)).unwrap().to_rows(), [[0, 1], [1, 1]]);
        assert_eq!(
            monsky_matrix(&sf(221)).unwrap().to_rows(),
            [[1, 0, 1, 0], [0, 0, 0, 0], [1, 0, 1, 0], [0, 0, 0, 0]]
        );
        assert_eq!(s2(&sf(17)).unwrap(), 2);
        assert_eq!(s2(&sf(3)).unwrap(), 0);
        assert!(monsky_matrix(&sf(34)).is_err());
    }

    #[test]
    fn kernel_triples() {
        assert_eq!(
            kernel_to_triple(&BitVector::zeros(2), &sf(17)).unwrap(),
            SelmerTriple::new(1, 1)
        );
        assert_eq!(
            kernel_to_triple(&BitVector::from_bits(&[1, 1]), &sf(17)).unwrap(),
            SelmerTriple {
                d1: 17,
                d2: 17,
                d3: 1
            }
        );
        assert!(kernel_to_triple(&BitVector::from_bits(&[1, 0]), &sf(3)).is_err());
    }

    #[test]
    fn local_condition_examples() {
        let n = sf(221);
        assert!(local_conditions(&SelmerTriple::new(1, 1), &n, 13).unwrap());
        assert!(local_conditions(&SelmerTriple::new(13, 13), &n, 17).unwrap());
        assert!(!local_conditions(&SelmerTriple::new(3, 3), &sf(3), 3).unwrap());
        assert!(local_conditions(&SelmerTriple::new(1, 1), &n, 5).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let t = enumerate_selmer(&sf(17)).unwrap();
        let expected = [
            SelmerTriple::new(1, 1),
            SelmerTriple::new(1, 17),
            SelmerTriple::new(17, 1),
            SelmerTriple::new(17, 17),
        ];
        assert_eq!(t, expected);
        assert_eq!(enumerate_selmer(&sf(3)).unwrap(), [SelmerTriple::new(1, 1)]);
        let n = sf(221);
        assert_eq!(enumerate_selmer(&n).unwrap().len(), 1 << s2(&n).unwrap());
    }

    #[test]
    fn basis_examples() {
        let b = selmer_basis_h4_1(&sf(17)).unwrap();
        assert_eq!((b.case, b.d), (BasisCase::RankKMinus1, 1));
        assert_eq!(
            b.generators,
            [
                SelmerTriple {
                    d1: 1,
                    d2: 17,
                    d3: 17
                },
                SelmerTriple {
                    d1: 17,
                    d2: 17,
                    d3: 1
                }
            ]
        );
        let b = selmer_basis_h4_1(&sf(65)).unwrap();
        assert_eq!((b.case, b.d), (BasisCase::RankKMinus1, 5));
        assert_eq!(
            b.generators,
            [
                SelmerTriple {
                    d1: 5,
                    d2: 13,
                    d3: 65
                },
                SelmerTriple {
                    d1: 65,
                    d2: 65,
                    d3: 1
                }
            ]
        );
        let b = selmer_basis_h4_1(&sf(145)).unwrap();
        assert_eq!((b.case, b.d), (BasisCase::RankKMinus2, 5));
        assert_eq!(
            b.generators,
            [
                SelmerTriple {
                    d1: 5,
                    d2: 5,
                    d3: 1
                },
                SelmerTriple {
                    d1: 145,
                    d2: 145,
                    d3: 1
                }
            ]
        );
        for n in [17, 65, 145] {
            let n = sf(n);
            for g in selmer_basis_h4_1(&n).unwrap().generators {
                for &p in n.primes() {
                    assert!(local_conditions(&g, &n, p).unwrap());
                }
            }
        }
        assert!(selmer_basis_h4_1(&sf(221)).is_err());
    }
}
