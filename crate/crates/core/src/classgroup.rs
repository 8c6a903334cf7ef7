//! The ideal class group of `Q(sqrt(-n))` as reduced positive definite binary
//! quadratic forms of discriminant `-4n` under Gauss composition.
//!
//! This module shares no code with the genus-theory path and serves as its
//! independent oracle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{internal, precondition, Error, Result};
use crate::ntheory::SquarefreeInteger;

/// Largest `n` the oracle will enumerate.
pub const MAX_N: u64 = 100_000_000;

/// A binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadraticForm {
    /// Coefficient of `x^2`.
    pub a: i64,
    /// Coefficient of `xy`.
    pub b: i64,
    /// Coefficient of `y^2`.
    pub c: i64,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1, 0, 0, 1);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl QuadraticForm {
    /// Builds the form.
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    /// `b^2 - 4ac`.
    pub fn discriminant(&self) -> i128 {
        (self.b as i128).pow(2) - 4 * self.a as i128 * self.c as i128
    }

    /// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a
            && self.a <= self.c
            && !(self.b < 0 && (self.b.abs() == self.a || self.a == self.c))
    }

    /// The reduced form equivalent to `self` (positive definite input).
    pub fn reduce(self) -> Self {
        let d = self.discriminant();
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            if b > a || b <= -a {
                let k = (a - b).div_euclid(2 * a);
                b += 2 * a * k;
                c = (b * b - d) / (4 * a);
            }
            if a > c {
                (a, c) = (c, a);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        Self {
            a: a as i64,
            b: b as i64,
            c: c as i64,
        }
    }

    /// Dirichlet composition followed by reduction. Both forms must share a
    /// discriminant.
    pub fn compose(&self, other: &Self) -> Self {
        let d = self.discriminant();
        let (a1, b1) = (self.a as i128, self.b as i128);
        let (a2, b2) = (other.a as i128, other.b as i128);
        let beta = (b1 + b2) / 2;
        let (g1, x, y) = ext_gcd(a1, a2);
        let (g, s, t) = ext_gcd(g1, beta);
        let (u, v, w) = (s * x, s * y, t);
        let big_a = a1 * a2 / (g * g);
        let big_b = ((u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + d) / 2) / g).rem_euclid(2 * big_a);
        let big_c = (big_b * big_b - d) / (4 * big_a);
        debug_assert_eq!((big_b * big_b - d) % (4 * big_a), 0);
        Self {
            a: big_a as i64,
            b: big_b as i64,
            c: big_c as i64,
        }
        .reduce()
    }

    /// The inverse class `(a, -b, c)`, reduced.
    pub fn inverse(&self) -> Self {
        Self {
            a: self.a,
            b: -self.b,
            c: self.c,
        }
        .reduce()
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Dimensions of `A[2]`, `A[2] ∩ 2A` and `A[2] ∩ 4A` over GF(2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoPowerRanks {
    /// 2-rank.
    pub h2: u32,
    /// 4-rank.
    pub h4: u32,
    /// 8-rank.
    pub h8: u32,
}

/// The full class group of discriminant `-4n`.
#[derive(Clone, Debug)]
pub struct ClassGroupSnapshot {
    n: u64,
    forms: Vec<QuadraticForm>,
    index: BTreeMap<(i64, i64), usize>,
    square: Vec<usize>,
}

/// Enumerates the class group of discriminant `-4n` for `n = 1, 2 mod 4`.
pub fn class_group(n: &SquarefreeInteger) -> Result<ClassGroupSnapshot> {
    ClassGroupSnapshot::new(n)
}

impl ClassGroupSnapshot {
    /// See [`class_group`].
    pub fn new(n: &SquarefreeInteger) -> Result<Self> {
        let nv = n.value();
        if nv % 4 == 0 || nv % 4 == 3 {
            return Err(Error::UnsupportedDiscriminant(nv));
        }
        if nv > MAX_N {
            return Err(precondition(format!(
                "{nv} exceeds the class-group oracle limit {MAX_N}"
            )));
        }
        let n64 = nv as i64;
        let mut forms = Vec::new();
        let a_max = ((4 * nv / 3) as u128).isqrt() as i64;
        for a in 1..=a_max {
            // b = 2 beta is even because the discriminant is.
            for beta in (-(a - 1) / 2)..=(a / 2) {
                let num = beta * beta + n64;
                if num % a != 0 {
                    continue;
                }
                let f = QuadraticForm::new(a, 2 * beta, num / a);
                if f.is_reduced() && gcd3(f.a, f.b, f.c) == 1 {
                    forms.push(f);
                }
            }
        }
        forms.sort();
        let index = forms
            .iter()
            .enumerate()
            .map(|(i, f)| ((f.a, f.b), i))
            .collect();
        let mut g = Self {
            n: nv,
            forms,
            index,
            square: Vec::new(),
        };
        g.square = (0..g.order())
            .map(|i| g.compose(i, i))
            .collect::<Result<_>>()?;
        Ok(g)
    }

    /// `n`.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// The discriminant `-4n`.
    pub fn discriminant(&self) -> i64 {
        -4 * self.n as i64
    }

    /// The class number.
    pub fn order(&self) -> usize {
        self.forms.len()
    }

    /// Reduced forms, sorted by `(a, b)`; index 0 is the principal form.
    pub fn forms(&self) -> &[QuadraticForm] {
        &self.forms
    }

    /// Index of the principal form.
    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the class of an arbitrary form of this discriminant.
    pub fn index_of(&self, f: &QuadraticForm) -> Result<usize> {
        if f.discriminant() != self.discriminant() as i128 {
            return Err(precondition(format!("form {f} has the wrong discriminant")));
        }
        let r = f.reduce();
        self.index
            .get(&(r.a, r.b))
            .copied()
            .ok_or_else(|| internal(format!("reduced form {r} missing from the class list")))
    }

    /// Index of the product of two classes.
    pub fn compose(&self, i: usize, j: usize) -> Result<usize> {
        self.index_of(&self.forms[i].compose(&self.forms[j]))
    }

    /// Index of `x^e`.
    pub fn pow(&self, x: usize, mut e: u64) -> Result<usize> {
        let (mut result, mut base) = (self.identity(), x);
        while e > 0 {
            if e & 1 == 1 {
                result = self.compose(result, base)?;
            }
            base = self.compose(base, base)?;
            e >>= 1;
        }
        Ok(result)
    }

    fn log2_size(count: usize, what: &str) -> Result<u32> {
        if count.is_power_of_two() {
            Ok(count.trailing_zeros())
        } else {
            Err(internal(format!(
                "{what} has size {count}, not a power of two"
            )))
        }
    }

    /// `h2`, `h4` and `h8` from explicit subgroups.
    pub fn two_power_ranks(&self) -> Result<TwoPowerRanks> {
        let h = self.order();
        let e = self.identity();
        let mut in_2a = vec![false; h];
        let mut in_4a = vec![false; h];
        for x in 0..h {
            in_2a[self.square[x]] = true;
            in_4a[self.square[self.square[x]]] = true;
        }
        let torsion: Vec<usize> = (0..h).filter(|&x| self.square[x] == e).collect();
        Ok(TwoPowerRanks {
            h2: Self::log2_size(torsion.len(), "A[2]")?,
            h4: Self::log2_size(torsion.iter().filter(|&&x| in_2a[x]).count(), "A[2]∩2A")?,
            h8: Self::log2_size(torsion.iter().filter(|&&x| in_4a[x]).count(), "A[2]∩4A")?,
        })
    }

    /// True if class `x` is a fourth power.
    pub fn is_fourth_power(&self, x: usize) -> bool {
        (0..self.order()).any(|y| self.square[self.square[y]] == x)
    }

    /// The class of the ideal above `odd * 2^two`: `(d, 0, n/d)` for `d | n`
    /// and `(2, 2, (n+1)/2)` (or `(2, 0, n/2)` for even `n`) for the prime 2.
    pub fn divisor_class(&self, odd: u64, two: bool) -> Result<usize> {
        if odd == 0 || self.n % odd != 0 {
            return Err(precondition(format!("{odd} does not divide {}", self.n)));
        }
        let n = self.n as i64;
        let d = odd as i64;
        let mut x = self.index_of(&QuadraticForm::new(d, 0, n / d))?;
        if two {
            let f2 = if n % 2 == 0 {
                QuadraticForm::new(2, 0, n / 2)
            } else {
                QuadraticForm::new(2, 2, (n + 1) / 2)
            };
            x = self.compose(x, self.index_of(&f2)?)?;
        }
        Ok(x)
    }

    /// Whether the ideal class of `odd * 2^two` lies in `4A`.
    pub fn ideal_class_in_4a(&self, odd: u64, two: bool) -> Result<bool> {
        Ok(self.is_fourth_power(self.divisor_class(odd, two)?))
    }

    /// Invariant factors `m_1 >= m_2 >= ...` with `A = ⊕ Z/m_i`; empty for
    /// the trivial group.
    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        let h = self.order() as u64;
        let mut factors: Vec<u64> = Vec::new();
        let mut rest = h;
        let mut p = 2;
        while rest > 1 {
            if rest % p != 0 {
                p += 1;
                continue;
            }
            let mut vp = 0;
            while rest % p == 0 {
                rest /= p;
                vp += 1;
            }
            let exps = self.p_primary_exponents(p, vp)?;
            for (i, &e) in exps.iter().enumerate() {
                if factors.len() <= i {
                    factors.push(1);
                }
                factors[i] *= p.pow(e);
            }
        }
        if factors.iter().product::<u64>() != h {
            return Err(internal(format!(
                "invariant factors {factors:?} do not multiply to {h}"
            )));
        }
        Ok(factors)
    }

    /// Exponents of the cyclic factors of the `p`-primary part, descending,
    /// from the sizes of `A[p^k]`.
    fn p_primary_exponents(&self, p: u64, vp: u32) -> Result<Vec<u32>> {
        let h = self.order();
        let e = self.identity();
        let pow_p: Vec<usize> = (0..h).map(|x| self.pow(x, p)).collect::<Result<_>>()?;
        let mut count = vec![0usize; vp as usize + 1];
        for x in 0..h {
            let (mut cur, mut k) = (x, 0);
            while cur != e && k <= vp {
                cur = pow_p[cur];
                k += 1;
            }
            if cur == e {
                count[k as usize] += 1;
            }
        }
        // cumulative[k] = |A[p^k]|; at least-p^k factors = log_p of successive ratios.
        let mut cumulative = 0usize;
        let mut at_least = Vec::new();
        let mut prev = 1usize;
        for (k, &c) in count.iter().enumerate() {
            cumulative += c;
            if k == 0 {
                continue;
            }
            let ratio = cumulative / prev;
            if ratio * prev != cumulative {
                return Err(internal(format!(
                    "|A[{p}^{k}]| = {cumulative} not divisible by {prev}"
                )));
            }
            let mut r = 0;
            let mut t = ratio;
            while t > 1 {
                if t % p as usize != 0 {
                    return Err(internal(format!("ratio {ratio} is not a power of {p}")));
                }
                t /= p as usize;
                r += 1;
            }
            at_least.push(r);
            prev = cumulative;
        }
        let mut exps = Vec::new();
        for (k, &r) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..r - next {
                exps.push(k as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        Ok(exps)
    }
}

fn gcd3(a: i64, b: i64, c: i64) -> u64 {
    let g = crate::ntheory::gcd(a.unsigned_abs(), b.unsigned_abs());
    crate::ntheory::gcd(g, c.unsigned_abs())
}
