//! Bounded search for primitive solutions of `2^r z^2 = d x^2 + d' y^2`, and
//! the composition of two solutions.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{internal, precondition, Error, Result};
use crate::ntheory::{gcd, gcd_i128, is_square};

/// Enumeration order of the solver.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchOrder {
    /// Smallest `z`, then smallest `x`.
    #[default]
    Canonical,
    /// Largest `z` below Holzer's bound `sqrt(d d')`, then largest `x`.
    Reversed,
}

/// Solver knobs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Largest `z` tried before giving up.
    pub budget: u64,
    /// Enumeration order.
    pub order: SearchOrder,
    /// Require `x, y >= 1`.
    pub strictly_positive: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            budget: 1_000_000,
            order: SearchOrder::Canonical,
            strictly_positive: false,
        }
    }
}

impl SolveOptions {
    /// Same options with a different order.
    pub fn with_order(self, order: SearchOrder) -> Self {
        Self { order, ..self }
    }

    /// Same options requiring positive `x, y`.
    pub fn strictly_positive(self) -> Self {
        Self {
            strictly_positive: true,
            ..self
        }
    }
}

/// A primitive solution `(a, b, c)` of `2^r c^2 = d a^2 + d' b^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormSolution {
    /// Power of two on the left.
    pub r: u8,
    /// Coefficient of `a^2`.
    pub d: u64,
    /// Coefficient of `b^2`.
    pub d_prime: u64,
    /// `x`.
    pub a: u64,
    /// `y`.
    pub b: u64,
    /// `z`.
    pub c: u64,
}

impl NormSolution {
    /// Checks the identity exactly and that `gcd(a, b, c) = 1`.
    pub fn verify(&self) -> Result<()> {
        let sq = |x: u64| (x as u128).checked_mul(x as u128);
        let lhs = sq(self.c).and_then(|c2| c2.checked_mul(1 << self.r));
        let rhs = sq(self.a)
            .and_then(|a2| a2.checked_mul(self.d as u128))
            .zip(sq(self.b).and_then(|b2| b2.checked_mul(self.d_prime as u128)))
            .and_then(|(x, y)| x.checked_add(y));
        match (lhs, rhs) {
            (Some(l), Some(r)) if l == r => {}
            (Some(_), Some(_)) => {
                return Err(internal(format!("{self} does not satisfy its equation")))
            }
            _ => return Err(Error::Overflow("norm identity")),
        }
        if gcd(gcd(self.a, self.b), self.c) != 1 {
            return Err(internal(format!("{self} is not primitive")));
        }
        Ok(())
    }

    /// The same solution read as one for `d'` (`x` and `y` exchanged).
    pub fn swapped(&self) -> Self {
        Self {
            d: self.d_prime,
            d_prime: self.d,
            a: self.b,
            b: self.a,
            ..*self
        }
    }
}

impl fmt::Display for NormSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a,b,c)=({},{},{}) for {}c^2 = {}a^2 + {}b^2",
            self.a,
            self.b,
            self.c,
            1u8 << self.r,
            self.d,
            self.d_prime
        )
    }
}

/// Primitive solutions with `z = c`, ascending in `x`.
fn solutions_at(r: u8, d: u64, dp: u64, c: u64, strictly_positive: bool) -> Vec<NormSolution> {
    let lhs = (c as u128 * c as u128) << r;
    let (d128, dp128) = (d as u128, dp as u128);
    let min = u128::from(strictly_positive);
    let mut out = Vec::new();
    let mut push = |a: u128, b: u128| {
        if a >= min && b >= min && gcd(gcd(a as u64, b as u64), c) == 1 {
            out.push(NormSolution {
                r,
                d,
                d_prime: dp,
                a: a as u64,
                b: b as u64,
                c,
            });
        }
    };
    // Walk whichever coordinate has the shorter range.
    if d >= dp {
        for a in 0..=(lhs / d128).isqrt() {
            let rest = lhs - d128 * a * a;
            if rest % dp128 == 0 {
                if let Some(b) = is_square(rest / dp128) {
                    push(a, b);
                }
            }
        }
    } else {
        for b in (0..=(lhs / dp128).isqrt()).rev() {
            let rest = lhs - dp128 * b * b;
            if rest % d128 == 0 {
                if let Some(a) = is_square(rest / d128) {
                    push(a, b);
                }
            }
        }
    }
    out
}

fn exhausted(r: u8, d: u64, dp: u64, budget: u64) -> Error {
    Error::SearchBudgetExceeded {
        equation: format!("{}z^2 = {d}x^2 + {dp}y^2", 1u8 << r),
        budget,
    }
}

/// The solution selected by `opts`.
pub(crate) fn search(r: u8, d: u64, dp: u64, opts: &SolveOptions) -> Result<NormSolution> {
    let canonical = || {
        (1..=opts.budget)
            .step_by(2)
            .find_map(|c| {
                solutions_at(r, d, dp, c, opts.strictly_positive)
                    .into_iter()
                    .next()
            })
            .ok_or_else(|| exhausted(r, d, dp, opts.budget))
    };
    let found = match opts.order {
        SearchOrder::Canonical => canonical()?,
        SearchOrder::Reversed => {
            let holzer = ((d as u128 * dp as u128).isqrt() as u64).min(opts.budget);
            let top = if holzer % 2 == 1 {
                holzer
            } else {
                holzer.saturating_sub(1)
            };
            let hit = (0..=top / 2)
                .map(|i| top - 2 * i)
                .find_map(|c| solutions_at(r, d, dp, c, opts.strictly_positive).pop());
            match hit {
                Some(s) => s,
                None => canonical()?,
            }
        }
    };
    found.verify()?;
    Ok(found)
}

/// Every primitive non-negative solution with `z <= bound`.
pub(crate) fn enumerate(r: u8, d: u64, dp: u64, bound: u64) -> Vec<NormSolution> {
    (1..=bound)
        .flat_map(|c| solutions_at(r, d, dp, c, false))
        .collect()
}

/// Composition of solutions for `2^{r1} d1` and `2^{r2} d2` into one for their
/// product modulo squares.
pub(crate) fn combine(s1: &NormSolution, s2: &NormSolution, n: u64) -> Result<NormSolution> {
    for s in [s1, s2] {
        s.verify()?;
        if s.d.checked_mul(s.d_prime) != Some(n) {
            return Err(precondition(format!("{s} is not a solution for n = {n}")));
        }
    }
    let ov = || Error::Overflow("combine_solutions");
    let m = |x: i128, y: i128| x.checked_mul(y).ok_or_else(ov);
    let (d1, d2) = (s1.d as i128, s2.d as i128);
    let (a1, b1, c1) = (s1.a as i128, s1.b as i128, s1.c as i128);
    let (a2, b2, c2) = (s2.a as i128, s2.b as i128, s2.c as i128);
    let a = m(m(d1, d2)?, m(a1, a2)?)? - m(m(b1, b2)?, n as i128)?;
    let b = m(m(b1, d2)?, a2)? + m(m(b2, d1)?, a1)?;
    let cc = m(c1, c2)?;
    let g0 = gcd_i128(gcd_i128(cc, a) as i128, b);
    let c0 =
        is_square(g0).ok_or_else(|| internal(format!("gcd(c1c2, a, b) = {g0} is not a square")))?;
    let g = gcd(s1.d, s2.d) as i128;
    let d = (d1 / g) * (d2 / g);
    let two = 1i128 << (s1.r * s2.r);
    let c0sq = (c0 * c0) as i128;
    let (den_a, den_b) = (m(m(m(c0sq, two)?, d)?, g)?, m(m(c0sq, two)?, g)?);
    if a % den_a != 0 || b % den_b != 0 || cc % c0sq != 0 {
        return Err(internal(format!(
            "divisibility failed combining {s1} and {s2}"
        )));
    }
    let (mut x, mut y, mut z) = (
        (a / den_a).unsigned_abs(),
        (b / den_b).unsigned_abs(),
        (cc / c0sq).unsigned_abs(),
    );
    let h = gcd_i128(gcd_i128(x as i128, y as i128) as i128, z as i128);
    (x, y, z) = (x / h, y / h, z / h);
    let narrow = |v: u128| u64::try_from(v).map_err(|_| ov());
    let out = NormSolution {
        r: (s1.r + s2.r) % 2,
        d: d as u64,
        d_prime: n / d as u64,
        a: narrow(x)?,
        b: narrow(y)?,
        c: narrow(z)?,
    };
    out.verify()?;
    Ok(out)
}
