//! Decompositions `n = d_1 ... d_k` and the higher Redei matrix
//! `R* = (A* | B*)` with `a*_ij = [c_j/d_i]`, `b*_i = [c_{k+1}/d_i]`.

use alloc::format;
use alloc::vec::Vec;

use super::{additive_symbol, DivisorElement, Genus, NormSolution, SolveOptions};
use crate::error::{precondition, Result};
use crate::f2linalg::{BitMatrix, BitVector};
use crate::ntheory::{legendre, OddPrime, SquarefreeInteger};

/// An ordered factorization of `n` into coprime blocks `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    n: SquarefreeInteger,
    blocks: Vec<SquarefreeInteger>,
}

impl Decomposition {
    /// Checks that the blocks are divisors of `n` greater than 1 whose product is `n`.
    pub fn new(n: &SquarefreeInteger, blocks: &[u64]) -> Result<Self> {
        let mut product: u64 = 1;
        let mut parts = Vec::with_capacity(blocks.len());
        for &d in blocks {
            if d <= 1 {
                return Err(precondition(format!(
                    "decomposition block {d} must exceed 1"
                )));
            }
            parts.push(n.divisor(d)?);
            product = product
                .checked_mul(d)
                .filter(|p| n.divides(*p))
                .ok_or_else(|| {
                    precondition(format!(
                        "blocks {blocks:?} are not coprime divisors of {}",
                        n.value()
                    ))
                })?;
        }
        if product != n.value() {
            return Err(precondition(format!(
                "blocks {blocks:?} multiply to {product}, not {}",
                n.value()
            )));
        }
        Ok(Self {
            n: n.clone(),
            blocks: parts,
        })
    }

    /// `n`.
    pub fn n(&self) -> &SquarefreeInteger {
        &self.n
    }

    /// Number of blocks.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// The blocks in the given order.
    pub fn blocks(&self) -> &[SquarefreeInteger] {
        &self.blocks
    }

    /// Block values.
    pub fn values(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.value()).collect()
    }

    /// The two structural conditions on a decomposition: every prime is
    /// `1 mod 8`, `h4(d_i) = 1`, and `(p/q) = 1` for primes in different blocks.
    pub fn check_conditions(&self) -> Result<()> {
        if !self.n.all_primes_congruent(1, 8) {
            return Err(precondition(format!(
                "every prime of {} must be 1 mod 8",
                self.n.value()
            )));
        }
        for b in &self.blocks {
            if Genus::new(b)?.h4() != 1 {
                return Err(precondition(format!("h4({}) != 1", b.value())));
            }
        }
        for (i, bi) in self.blocks.iter().enumerate() {
            for bj in &self.blocks[i + 1..] {
                for &p in bi.primes() {
                    for &q in bj.primes() {
                        if legendre(p as i128, OddPrime::new(q)?) != 1 {
                            return Err(precondition(format!("({p}/{q}) = -1 across blocks")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// True if [`Self::check_conditions`] passes.
    pub fn conditions_hold(&self) -> bool {
        self.check_conditions().is_ok()
    }
}

/// The higher Redei matrix and the solutions it was built from.
#[derive(Clone, Debug)]
pub struct HigherRedei {
    decomposition: Decomposition,
    solutions: Vec<NormSolution>,
    a_star: BitMatrix,
    b_star: BitVector,
}

impl HigherRedei {
    /// Builds `R*`. The solutions for `d_1, ..., d_{k-1}` and for
    /// `2z^2 = x^2 + n y^2` come from the solver; the one for `d_k` is the
    /// composition of the first `k-1`, read with `x` and `y` exchanged.
    pub fn new(dec: &Decomposition, opts: &SolveOptions) -> Result<Self> {
        Self::build(dec, opts, false)
    }

    /// Like [`Self::new`] but solves the `d_k` equation directly.
    pub fn with_fresh_last(dec: &Decomposition, opts: &SolveOptions) -> Result<Self> {
        Self::build(dec, opts, true)
    }

    fn build(dec: &Decomposition, opts: &SolveOptions, fresh_last: bool) -> Result<Self> {
        dec.check_conditions()?;
        let genus = Genus::new(dec.n())?;
        let k = dec.k();
        let mut solutions = Vec::with_capacity(k + 1);
        for b in &dec.blocks()[..k - 1] {
            solutions.push(genus.solve_norm_equation(DivisorElement::new(b.value(), false), opts)?);
        }
        let last = if fresh_last {
            genus.solve_norm_equation(
                DivisorElement::new(dec.blocks()[k - 1].value(), false),
                opts,
            )?
        } else {
            let principal = genus.solve_norm_equation(DivisorElement::one(), opts)?;
            let folded = solutions
                .iter()
                .try_fold(principal, |acc, s| genus.combine_solutions(&acc, s))?;
            folded.swapped()
        };
        last.verify()?;
        solutions.push(last);
        solutions.push(genus.solve_norm_equation(DivisorElement::new(1, true), opts)?);
        let mut a_star = BitMatrix::zeros(k, k);
        let mut b_star = BitVector::zeros(k);
        for (i, di) in dec.blocks().iter().enumerate() {
            for j in 0..k {
                a_star.set(i, j, additive_symbol(solutions[j].c as i128, di) == 1);
            }
            b_star.set(i, additive_symbol(solutions[k].c as i128, di) == 1);
        }
        Ok(Self {
            decomposition: dec.clone(),
            solutions,
            a_star,
            b_star,
        })
    }

    /// The decomposition.
    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    /// Solutions for `d_1, ..., d_k` and finally for `2z^2 = x^2 + n y^2`.
    pub fn solutions(&self) -> &[NormSolution] {
        &self.solutions
    }

    /// `c_1, ..., c_{k+1}`.
    pub fn c_values(&self) -> Vec<u64> {
        self.solutions.iter().map(|s| s.c).collect()
    }

    /// `A*`.
    pub fn a_star(&self) -> &BitMatrix {
        &self.a_star
    }

    /// `B*`.
    pub fn b_star(&self) -> &BitVector {
        &self.b_star
    }

    /// `R* = (A* | B*)`.
    pub fn matrix(&self) -> BitMatrix {
        let k = self.decomposition.k();
        self.a_star
            .hstack(
                &BitMatrix::from_columns(k, core::slice::from_ref(&self.b_star)).expect("length k"),
            )
            .expect("k rows")
    }

    /// `h8 = k - rank R*`.
    pub fn h8(&self) -> u32 {
        (self.decomposition.k() - self.matrix().rank()) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(n: u64, blocks: &[u64]) -> Decomposition {
        Decomposition::new(&SquarefreeInteger::new(n).unwrap(), blocks).unwrap()
    }

    #[test]
    fn single_block_examples() {
        let o = SolveOptions::default();
        let r = HigherRedei::new(&dec(17, &[17]), &o).unwrap();
        assert_eq!(r.matrix().to_rows(), [[0, 1]]);
        assert_eq!(r.c_values(), [1, 3]);
        assert_eq!(r.h8(), 0);
        let r = HigherRedei::new(&dec(41, &[41]), &o).unwrap();
        assert_eq!(r.matrix().to_rows(), [[0, 0]]);
        assert_eq!(r.h8(), 1);
    }

    #[test]
    fn two_blocks() {
        let o = SolveOptions::default();
        let d = dec(17 * 89, &[17, 89]);
        d.check_conditions().unwrap();
        let r = HigherRedei::new(&d, &o).unwrap();
        for i in 0..2 {
            assert!(
                !(r.a_star().bit(i, 0) ^ r.a_star().bit(i, 1)),
                "row sums vanish"
            );
        }
        let fresh = HigherRedei::with_fresh_last(&d, &o).unwrap();
        assert_eq!(fresh.a_star(), r.a_star());
    }

    #[test]
    fn decomposition_validation() {
        let n = SquarefreeInteger::new(221).unwrap();
        assert!(Decomposition::new(&n, &[13, 13]).is_err());
        assert!(Decomposition::new(&n, &[13]).is_err());
        assert!(Decomposition::new(&n, &[1, 221]).is_err());
        assert!(dec(221, &[13, 17]).check_conditions().is_err());
        assert!(!dec(17 * 41, &[17, 41]).conditions_hold());
    }
}
