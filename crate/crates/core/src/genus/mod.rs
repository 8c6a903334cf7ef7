//! Gauss genus theory for `K = Q(sqrt(-n))`, discriminant `D = -4n`.
//!
//! The Redei matrix `R` has one row per odd prime `p_i | n` and one column per
//! prime dividing `D`, the prime 2 last:
//! `r_ii = [(D/p_i*)/p_i]`, `r_ij = [p_j/p_i]`, with `p* = (-1)^((p-1)/2) p`.
//! Its kernel is the group of norm divisors; membership of a divisor class in
//! `4A` is read off from the residues of the `z`-coordinate of a solution of
//! `2^r z^2 = d x^2 + (n/d) y^2`.

mod higher;
mod solve;

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

pub use higher::{Decomposition, HigherRedei};
pub(crate) use solve::search as search_norm;
pub use solve::{NormSolution, SearchOrder, SolveOptions};

use crate::error::{internal, precondition, Error, Result};
use crate::f2linalg::{BitMatrix, BitVector};
use crate::ntheory::{
    additive_legendre, distinct_prime_factors, gcd, legendre, OddPrime, SquarefreeInteger,
};

/// A square-free divisor of `D = -4n` up to sign: an odd divisor of `n`
/// times an optional factor 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorElement {
    /// Odd part, a divisor of `n`.
    pub odd: u64,
    /// Whether the factor 2 is present.
    pub two: bool,
}

impl DivisorElement {
    /// Builds `odd * 2^two`.
    pub fn new(odd: u64, two: bool) -> Self {
        Self { odd, two }
    }

    /// The trivial element 1.
    pub fn one() -> Self {
        Self { odd: 1, two: false }
    }

    /// `r` in `2^r d`.
    pub fn r(&self) -> u8 {
        u8::from(self.two)
    }

    /// The integer `odd * 2^r`.
    pub fn value(&self) -> u64 {
        self.odd << self.r()
    }

    /// The group law `d1 ⊙ d2 = d1 d2 / gcd(d1, d2)^2`.
    pub fn op(&self, other: &Self) -> Self {
        let g = gcd(self.odd, other.odd);
        Self {
            odd: self.odd / g * (other.odd / g),
            two: self.two ^ other.two,
        }
    }
}

impl fmt::Display for DivisorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Genus data for one `n = 1, 2 mod 4`.
#[derive(Clone, Debug)]
pub struct Genus {
    n: SquarefreeInteger,
    primes: Vec<OddPrime>,
    redei: BitMatrix,
}

/// `[c/d]`: sum of additive Legendre symbols over the primes of `d`.
pub fn additive_symbol(c: i128, d: &SquarefreeInteger) -> u8 {
    d.odd_primes()
        .into_iter()
        .fold(0, |acc, p| acc ^ additive_legendre(c, p))
}

impl Genus {
    /// Builds the Redei matrix.
    pub fn new(n: &SquarefreeInteger) -> Result<Self> {
        let nv = n.value();
        if nv % 4 == 0 || nv % 4 == 3 {
            return Err(Error::UnsupportedDiscriminant(nv));
        }
        let primes = n.odd_primes();
        let m = primes.len();
        let disc = -4 * nv as i128;
        let mut redei = BitMatrix::zeros(m, m + 1);
        for (i, &pi) in primes.iter().enumerate() {
            let p = pi.get() as i128;
            let p_star = if p % 4 == 1 { p } else { -p };
            for j in 0..=m {
                let bit = if j == i {
                    additive_legendre(disc / p_star, pi)
                } else if j == m {
                    additive_legendre(2, pi)
                } else {
                    additive_legendre(primes[j].get() as i128, pi)
                };
                redei.set(i, j, bit == 1);
            }
        }
        Ok(Self {
            n: n.clone(),
            primes,
            redei,
        })
    }

    /// `n`.
    pub fn n(&self) -> &SquarefreeInteger {
        &self.n
    }

    /// Odd primes of `n`, indexing the rows of `R`.
    pub fn odd_primes(&self) -> &[OddPrime] {
        &self.primes
    }

    /// The Redei matrix.
    pub fn redei_matrix(&self) -> &BitMatrix {
        &self.redei
    }

    /// `h4 = t - 1 - rank R`.
    pub fn h4(&self) -> u32 {
        (self.primes.len() - self.redei.rank()) as u32
    }

    /// True for odd `n` whose primes are all `1 mod 4`, where the norm
    /// equation, C-vector and 8-rank machinery applies.
    pub fn in_family(&self) -> bool {
        self.n.is_odd() && self.n.all_primes_congruent(1, 4)
    }

    fn require_family(&self, what: &str) -> Result<()> {
        if self.in_family() {
            Ok(())
        } else {
            Err(precondition(format!(
                "{what} needs odd n with all primes 1 mod 4, got {}",
                self.n.value()
            )))
        }
    }

    /// The kernel coordinate vector of a divisor element.
    pub fn divisor_vector(&self, e: DivisorElement) -> Result<BitVector> {
        if !self.n.divides(e.odd) || e.odd % 2 == 0 {
            return Err(precondition(format!(
                "{} is not an odd divisor of {}",
                e.odd,
                self.n.value()
            )));
        }
        let m = self.primes.len();
        let mut x = BitVector::zeros(m + 1);
        for (i, p) in self.primes.iter().enumerate() {
            x.set(i, e.odd % p.get() == 0);
        }
        x.set(m, e.two);
        Ok(x)
    }

    /// The divisor element with kernel coordinates `x`.
    pub fn element_of(&self, x: &BitVector) -> DivisorElement {
        let m = self.primes.len();
        let odd = (0..m)
            .filter(|&i| x.bit(i))
            .map(|i| self.primes[i].get())
            .product();
        DivisorElement::new(odd, x.bit(m))
    }

    /// True if `2^r d` is a norm, i.e. `R X = 0`.
    pub fn is_norm(&self, e: DivisorElement) -> Result<bool> {
        Ok(self.redei.mul_vec(&self.divisor_vector(e)?)?.is_zero())
    }

    /// All norm divisors, sorted by value.
    pub fn norm_divisors(&self) -> Vec<DivisorElement> {
        let basis = self.redei.kernel_basis();
        let mut out: Vec<DivisorElement> = (0..1u64 << basis.len())
            .map(|mask| {
                let mut x = BitVector::zeros(self.redei.cols());
                for (i, b) in basis.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        x.xor_assign(b).expect("kernel vectors share a length");
                    }
                }
                self.element_of(&x)
            })
            .collect();
        out.sort_by_key(|e| e.value());
        out
    }

    /// The primitive solution of `2^r z^2 = d x^2 + (n/d) y^2` selected by
    /// `opts`.
    pub fn solve_norm_equation(
        &self,
        e: DivisorElement,
        opts: &SolveOptions,
    ) -> Result<NormSolution> {
        self.require_family("solve_norm_equation")?;
        if !self.is_norm(e)? {
            return Err(Error::NotANorm {
                r: e.r(),
                d: e.odd,
                n: self.n.value(),
            });
        }
        solve::search(e.r(), e.odd, self.n.value() / e.odd, opts)
    }

    /// All primitive non-negative solutions with `z <= bound`, ascending in
    /// `z` and then `x`.
    pub fn all_primitive_solutions(
        &self,
        e: DivisorElement,
        bound: u64,
    ) -> Result<Vec<NormSolution>> {
        self.divisor_vector(e)?;
        Ok(solve::enumerate(
            e.r(),
            e.odd,
            self.n.value() / e.odd,
            bound,
        ))
    }

    /// `C = ([c/p_1], ..., [c/p_k])`, checking that `(D/q) = 1` for every
    /// prime `q | c`.
    pub fn c_vector(&self, sol: &NormSolution) -> Result<BitVector> {
        self.c_vector_of(sol.c)
    }

    fn c_vector_of(&self, c: u64) -> Result<BitVector> {
        if gcd(c, self.n.value()) != 1 {
            return Err(precondition(format!(
                "c = {c} is not coprime to n = {}",
                self.n.value()
            )));
        }
        let disc = -4 * self.n.value() as i128;
        for q in distinct_prime_factors(c)? {
            if q == 2 || legendre(disc, OddPrime::new(q)?) != 1 {
                return Err(internal(format!(
                    "(D/{q}) != 1 for a prime factor of c = {c}"
                )));
            }
        }
        let mut v = BitVector::zeros(self.primes.len());
        for (i, &p) in self.primes.iter().enumerate() {
            v.set(i, additive_legendre(c as i128, p) == 1);
        }
        Ok(v)
    }

    /// Whether the class of the norm divisor `e` lies in `4A`: `C ∈ Im R`.
    pub fn in_4a(&self, e: DivisorElement, opts: &SolveOptions) -> Result<bool> {
        let sol = self.solve_norm_equation(e, opts)?;
        self.redei.in_image(&self.c_vector(&sol)?)
    }

    /// Composes two solutions into a solution for `2^{r1} d1 ⊙ 2^{r2} d2`.
    pub fn combine_solutions(&self, s1: &NormSolution, s2: &NormSolution) -> Result<NormSolution> {
        solve::combine(s1, s2, self.n.value())
    }

    /// `h8 = dim(A[2] ∩ 4A)` for the family. With `S = {x ∈ ker R : C_x ∈ Im R}`
    /// and `θ: ker R -> A[2] ∩ 2A` two-to-one, `h8 = dim S - 1`. Since
    /// `x ↦ C_x mod Im R` is linear it suffices to test a kernel basis.
    pub fn h8(&self, opts: &SolveOptions) -> Result<u32> {
        self.require_family("h8")?;
        let basis = self.redei.kernel_basis();
        let left = self.redei.transpose().kernel_basis();
        let mut images = BitMatrix::zeros(left.len(), basis.len());
        for (j, x) in basis.iter().enumerate() {
            let sol = self.solve_norm_equation(self.element_of(x), opts)?;
            let c = self.c_vector(&sol)?;
            for (i, q) in left.iter().enumerate() {
                images.set(i, j, q.dot(&c)?);
            }
        }
        let dim_s = basis.len() - images.rank();
        dim_s.checked_sub(1).map(|h| h as u32).ok_or_else(|| {
            internal(format!(
                "{{1, n}} missing from the 4A-subgroup for {}",
                self.n.value()
            ))
        })
    }

    /// `d(n)`: the larger odd part of the nontrivial pair of norm divisors,
    /// for all primes `1 mod 4` and `h4 = 1`.
    pub fn d_of_n(&self) -> Result<u64> {
        self.require_family("d(n)")?;
        if self.h4() != 1 {
            return Err(precondition(format!(
                "d(n) needs h4 = 1, got n = {}",
                self.n.value()
            )));
        }
        let trivial = [
            DivisorElement::one(),
            DivisorElement::new(self.n.value(), false),
        ];
        let others: Vec<u64> = self
            .norm_divisors()
            .into_iter()
            .filter(|e| !trivial.contains(e))
            .map(|e| e.odd)
            .collect();
        match others.as_slice() {
            [x, y] if x * y == self.n.value() => Ok(*x.max(y)),
            _ => Err(internal(format!(
                "unexpected norm divisors {others:?} for {}",
                self.n.value()
            ))),
        }
    }
}
