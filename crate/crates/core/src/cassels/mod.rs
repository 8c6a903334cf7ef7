//! Cassels pairing on the pure 2-Selmer group: the closed forms for one
//! block with `h4(n) = 1`, the pairing table for a decomposition
//! `n = d_1 ... d_k`, and the normalizations of the auxiliary solutions.
//!
//! Pairing values are additive: bit 1 means the pairing is `-1`.

mod local;

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

pub use local::{local_pairing_value, verify_local_pairing_odd};

use crate::error::{internal, precondition, Error, Result};
use crate::f2linalg::BitMatrix;
use crate::genus::{
    additive_symbol, search_norm, Decomposition, DivisorElement, Genus, HigherRedei, NormSolution,
    SolveOptions,
};
use crate::ntheory::{
    delta_n, gcd_i128, is_square, legendre, quartic_symbol_composite, SquarefreeInteger,
};
use crate::selmer::{selmer_basis_h4_1, BasisCase};

/// `(alpha, beta, gamma)` with `gamma^2 = d alpha^2 + 2d' beta^2`, `gamma > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaSolution {
    /// `alpha`.
    pub alpha: i128,
    /// `beta`.
    pub beta: i128,
    /// `gamma`.
    pub gamma: i128,
}

/// `(abar, bbar, cbar)` with `cbar^2 = d abar^2 - d' bbar^2`, `cbar > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CbarSolution {
    /// `abar`.
    pub abar: i128,
    /// `bbar`.
    pub bbar: i128,
    /// `cbar`.
    pub cbar: i128,
}

fn overflow() -> Error {
    Error::Overflow("Cassels solution arithmetic")
}

fn mul(x: i128, y: i128) -> Result<i128> {
    x.checked_mul(y).ok_or_else(overflow)
}

fn square(x: i128) -> Result<i128> {
    mul(x, x)
}

fn gcd3(x: i128, y: i128, z: i128) -> i128 {
    gcd_i128(gcd_i128(x, y) as i128, z) as i128
}

impl GammaSolution {
    /// Checks the identity and primitivity.
    pub fn verify(&self, d: u64, d_prime: u64) -> Result<()> {
        let rhs = mul(d as i128, square(self.alpha)?)?
            .checked_add(mul(2 * d_prime as i128, square(self.beta)?)?)
            .ok_or_else(overflow)?;
        if self.gamma <= 0
            || square(self.gamma)? != rhs
            || gcd3(self.alpha, self.beta, self.gamma) != 1
        {
            return Err(internal(format!(
                "{self:?} does not solve z^2 = {d}x^2 + {}y^2",
                2 * d_prime
            )));
        }
        Ok(())
    }
}

impl CbarSolution {
    /// Checks the identity and primitivity.
    pub fn verify(&self, d: u64, d_prime: u64) -> Result<()> {
        let rhs = mul(d as i128, square(self.abar)?)? - mul(d_prime as i128, square(self.bbar)?)?;
        if self.cbar <= 0 || square(self.cbar)? != rhs || gcd3(self.abar, self.bbar, self.cbar) != 1
        {
            return Err(internal(format!(
                "{self:?} does not solve z^2 = {d}x^2 - {d_prime}y^2"
            )));
        }
        Ok(())
    }
}

/// The three solutions attached to one block `d_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockSolutions {
    /// `c^2 = d a^2 + d' b^2`.
    pub c: NormSolution,
    /// `gamma^2 = d alpha^2 + 2d' beta^2`.
    pub gamma: GammaSolution,
    /// `cbar^2 = d abar^2 - d' bbar^2`.
    pub cbar: CbarSolution,
}

impl BlockSolutions {
    /// `d_i`.
    pub fn d(&self) -> u64 {
        self.c.d
    }

    /// `n / d_i`.
    pub fn d_prime(&self) -> u64 {
        self.c.d_prime
    }

    /// Identities, primitivity, coprimality to `2n` and both divisibility
    /// conditions `d' | a gamma + c alpha` and `d' | a cbar + c abar`.
    pub fn verify(&self) -> Result<()> {
        let (d, dp) = (self.d(), self.d_prime());
        self.c.verify()?;
        self.gamma.verify(d, dp)?;
        self.cbar.verify(d, dp)?;
        let n = (d as i128) * dp as i128;
        for (name, v) in [
            ("c", self.c.c as i128),
            ("gamma", self.gamma.gamma),
            ("cbar", self.cbar.cbar),
        ] {
            if gcd_i128(v, 2 * n) != 1 {
                return Err(internal(format!(
                    "{name} = {v} is not coprime to 2n = {}",
                    2 * n
                )));
            }
        }
        if !gamma_condition(&self.c, &self.gamma)? || !cbar_condition(&self.c, &self.cbar)? {
            return Err(internal(format!(
                "solutions for d = {d} are not normalized"
            )));
        }
        Ok(())
    }
}

fn gamma_condition(c: &NormSolution, g: &GammaSolution) -> Result<bool> {
    let v = mul(c.a as i128, g.gamma)?
        .checked_add(mul(c.c as i128, g.alpha)?)
        .ok_or_else(overflow)?;
    Ok(v % c.d_prime as i128 == 0)
}

fn cbar_condition(c: &NormSolution, s: &CbarSolution) -> Result<bool> {
    let v = mul(c.a as i128, s.cbar)?
        .checked_add(mul(c.c as i128, s.abar)?)
        .ok_or_else(overflow)?;
    Ok(v % c.d_prime as i128 == 0)
}

/// Solutions for every block of a decomposition.
#[derive(Clone, Debug)]
pub struct CasselsSolutions {
    decomposition: Decomposition,
    blocks: Vec<BlockSolutions>,
}

impl CasselsSolutions {
    /// The decomposition.
    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    /// Per-block solutions in decomposition order.
    pub fn blocks(&self) -> &[BlockSolutions] {
        &self.blocks
    }
}

/// Makes `d' | a gamma + c alpha`: by the sign of `alpha` if possible,
/// otherwise by the transform with `t = gcd(d', a gamma + c alpha)`.
pub fn normalize_gamma(c: &NormSolution, g: &GammaSolution) -> Result<GammaSolution> {
    let (d, dp) = (c.d, c.d_prime);
    g.verify(d, dp)?;
    let flipped = GammaSolution {
        alpha: -g.alpha,
        ..*g
    };
    for cand in [*g, flipped] {
        if gamma_condition(c, &cand)? {
            return Ok(cand);
        }
    }
    let (di, dpi) = (d as i128, dp as i128);
    let (a, cc) = (c.a as i128, c.c as i128);
    let t = gcd_i128(dpi, mul(a, g.gamma)? + mul(cc, g.alpha)?) as i128;
    let t2 = square(t)?;
    let alpha =
        -mul(mul(di, g.alpha)?, t2)? + mul(mul(4 * dpi, g.beta)?, t)? + mul(2 * dpi, g.alpha)?;
    let beta = mul(mul(di, g.beta)?, t2)? + mul(mul(2 * di, g.alpha)?, t)? - mul(2 * dpi, g.beta)?;
    let gamma = mul(g.gamma, mul(di, t2)? + 2 * dpi)?;
    let h = gcd3(alpha, beta, gamma);
    let out = GammaSolution {
        alpha: alpha / h,
        beta: beta / h,
        gamma: gamma / h,
    };
    out.verify(d, dp)?;
    if !gamma_condition(c, &out)? {
        return Err(internal(format!(
            "gamma normalization failed for d = {d}, d' = {dp}"
        )));
    }
    Ok(out)
}

/// Makes `d' | a cbar + c abar`: by the sign of `abar` if possible,
/// otherwise by the transform with `s = gcd(d', a cbar + c abar)`. The
/// transform may leave `cbar` even.
pub fn normalize_cbar(c: &NormSolution, s: &CbarSolution) -> Result<CbarSolution> {
    let (d, dp) = (c.d, c.d_prime);
    s.verify(d, dp)?;
    let flipped = CbarSolution {
        abar: -s.abar,
        ..*s
    };
    for cand in [*s, flipped] {
        if cbar_condition(c, &cand)? {
            return Ok(cand);
        }
    }
    let (di, dpi) = (d as i128, dp as i128);
    let (a, cc) = (c.a as i128, c.c as i128);
    let t = gcd_i128(dpi, mul(a, s.cbar)? + mul(cc, s.abar)?) as i128;
    let t2 = square(t)?;
    let mut abar = -mul(mul(di, s.abar)?, t2)? + mul(mul(2 * dpi, s.bbar)?, t)? - mul(dpi, s.abar)?;
    let mut bbar = mul(mul(di, s.bbar)?, t2)? - mul(mul(2 * di, s.abar)?, t)? + mul(dpi, s.bbar)?;
    let mut cbar = mul(s.cbar, mul(di, t2)? - dpi)?;
    if cbar < 0 {
        (abar, bbar, cbar) = (-abar, -bbar, -cbar);
    }
    let h = gcd3(abar, bbar, cbar);
    let out = CbarSolution {
        abar: abar / h,
        bbar: bbar / h,
        cbar: cbar / h,
    };
    out.verify(d, dp)?;
    if !cbar_condition(c, &out)? {
        return Err(internal(format!(
            "cbar normalization failed for d = {d}, d' = {dp}"
        )));
    }
    Ok(out)
}

/// Makes `a` even in `c^2 = d a^2 + d' b^2` via
/// `(d'a - 2d'b - da, db - 2da - d'b, (d + d')c)`.
pub fn even_a_normalize(sol: &NormSolution) -> Result<NormSolution> {
    sol.verify()?;
    if sol.r != 0 {
        return Err(precondition(format!("{sol} is not an equation with r = 0")));
    }
    if sol.a % 2 == 0 {
        return Ok(*sol);
    }
    let (d, dp) = (sol.d as i128, sol.d_prime as i128);
    let (a, b, c) = (sol.a as i128, sol.b as i128, sol.c as i128);
    let x = mul(dp, a)? - mul(2 * dp, b)? - mul(d, a)?;
    let y = mul(d, b)? - mul(2 * d, a)? - mul(dp, b)?;
    let z = mul(d + dp, c)?;
    let h = gcd3(x, y, z);
    let narrow = |v: i128| u64::try_from((v / h).unsigned_abs()).map_err(|_| overflow());
    let out = NormSolution {
        a: narrow(x)?,
        b: narrow(y)?,
        c: narrow(z)?,
        ..*sol
    };
    out.verify()?;
    if out.a % 2 != 0 {
        return Err(internal(format!(
            "even-a normalization of {sol} left a odd"
        )));
    }
    Ok(out)
}

/// Result of the closed-form pairing for `h4(n) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theorem1Pairing {
    /// Which basis case applies.
    pub case: BasisCase,
    /// The divisor `d` of the Selmer basis.
    pub d: u64,
    /// The norm solution the value is read from.
    pub solution: NormSolution,
    /// Additive value of `<Λ, Λ'>`.
    pub value: u8,
}

impl Theorem1Pairing {
    /// The pairing is nondegenerate iff `<Λ, Λ'> = -1`.
    pub fn nondegenerate(&self) -> bool {
        self.value == 1
    }
}

/// `<Λ, Λ'>` for `n = 1 mod 8`, primes `1 mod 4`, `h4(n) = 1`. When
/// `rank A = k - 2` it is `-1` iff `c = 1 mod 4` for an even-`a` solution of
/// `c^2 = d a^2 + (n/d) b^2`; when `rank A = k - 1` it is `-1` iff
/// `(d - 1)/4 + (c - 1)/2` is odd for `2c^2 = d a^2 + (n/d) b^2`.
pub fn theorem1_pairing(n: &SquarefreeInteger, opts: &SolveOptions) -> Result<Theorem1Pairing> {
    let basis = selmer_basis_h4_1(n)?;
    let genus = Genus::new(n)?;
    let d = basis.d;
    let (solution, value) = match basis.case {
        BasisCase::RankKMinus2 => {
            let sol =
                even_a_normalize(&genus.solve_norm_equation(DivisorElement::new(d, false), opts)?)?;
            (sol, u8::from(sol.c % 4 == 1))
        }
        BasisCase::RankKMinus1 => {
            let sol = genus.solve_norm_equation(DivisorElement::new(d, true), opts)?;
            (sol, (((d - 1) / 4 + (sol.c - 1) / 2) % 2) as u8)
        }
    };
    Ok(Theorem1Pairing {
        case: basis.case,
        d,
        solution,
        value,
    })
}

/// An odd prime at which `z^2 = A x^2 + B y^2` has no primitive solution,
/// for coprime `A = d` and `B = u d'` with `u` in `{2, -1, 1}`.
fn local_obstruction(d: &SquarefreeInteger, dp: &SquarefreeInteger, u: i128) -> Option<u64> {
    let (dv, dpv) = (d.value() as i128, dp.value() as i128);
    let bad =
        |m: &SquarefreeInteger, x: i128| m.odd_primes().into_iter().find(|&p| legendre(x, p) != 1);
    bad(d, u * dpv).or_else(|| bad(dp, dv)).map(|p| p.get())
}

fn require_local(d: &SquarefreeInteger, dp: &SquarefreeInteger, u: i128, sign: &str) -> Result<()> {
    match local_obstruction(d, dp, u) {
        Some(p) => Err(precondition(format!(
            "z^2 = {}x^2 {sign} {}y^2 has no primitive solution: obstructed at p = {p}",
            d.value(),
            u.unsigned_abs() as u64 * dp.value()
        ))),
        None => Ok(()),
    }
}

/// Walks primitive `(abar, bbar, cbar)` with `cbar` odd, `abar` ascending,
/// then `cbar` ascending, and returns the first one `accept` maps to `Some`.
fn search_cbar(
    d: u64,
    dp: u64,
    opts: &SolveOptions,
    mut accept: impl FnMut(CbarSolution) -> Result<Option<CbarSolution>>,
) -> Result<CbarSolution> {
    let (d128, dp128) = (d as u128, dp as u128);
    let work_limit = opts.budget.saturating_mul(64);
    let mut work: u64 = 0;
    for abar in 1..=opts.budget as u128 {
        let lhs = d128 * abar * abar;
        let top = ((lhs - 1) / dp128).isqrt();
        for bbar in (1..=top).rev() {
            work += 1;
            let rest = lhs - dp128 * bbar * bbar;
            if let Some(cbar) = is_square(rest) {
                if cbar % 2 == 1
                    && gcd_i128(gcd_i128(abar as i128, bbar as i128) as i128, cbar as i128) == 1
                {
                    let cand = CbarSolution {
                        abar: abar as i128,
                        bbar: bbar as i128,
                        cbar: cbar as i128,
                    };
                    if let Some(found) = accept(cand)? {
                        return Ok(found);
                    }
                }
            }
        }
        if work > work_limit {
            break;
        }
    }
    Err(Error::SearchBudgetExceeded {
        equation: format!("z^2 = {d}x^2 - {dp}y^2"),
        budget: opts.budget,
    })
}

/// Solves and normalizes the three equations for every block. The `c`- and
/// `gamma`-equations use strictly positive solutions; `cbar` is the first
/// candidate whose normalization is odd.
pub fn build_cassels_solutions(
    dec: &Decomposition,
    opts: &SolveOptions,
) -> Result<CasselsSolutions> {
    let n = dec.n().value();
    let positive = opts.strictly_positive();
    let mut blocks = Vec::with_capacity(dec.k());
    for b in dec.blocks() {
        let (d, dp) = (b.value(), n / b.value());
        let cof = dec.n().cofactor(d)?;
        require_local(b, &cof, 1, "+")?;
        require_local(b, &cof, 2, "+")?;
        require_local(b, &cof, -1, "-")?;
        let c = search_norm(0, d, dp, &positive)?;
        let g = search_norm(0, d, 2 * dp, &positive)?;
        let gamma = GammaSolution {
            alpha: g.a as i128,
            beta: g.b as i128,
            gamma: g.c as i128,
        };
        let cbar = search_cbar(d, dp, opts, |cand| {
            let out = normalize_cbar(&c, &cand)?;
            Ok((out.cbar % 2 == 1).then_some(out))
        })?;
        let block = BlockSolutions {
            c,
            gamma: normalize_gamma(&c, &gamma)?,
            cbar,
        };
        block.verify()?;
        blocks.push(block);
    }
    Ok(CasselsSolutions {
        decomposition: dec.clone(),
        blocks,
    })
}

/// A basis vector of the pure 2-Selmer group of a decomposition:
/// `Λ_i = (1, d_i, d_i)` or `Λ'_i = (d_i, d_i, 1)`, indices from 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisElement {
    /// `Λ_i`.
    Lambda(usize),
    /// `Λ'_i`.
    LambdaPrime(usize),
}

impl BasisElement {
    /// Row of this element in a matrix ordered `Λ_1..Λ_k, Λ'_1..Λ'_k`.
    pub fn position(self, k: usize) -> usize {
        match self {
            Self::Lambda(i) => i,
            Self::LambdaPrime(i) => k + i,
        }
    }

    /// Inverse of [`Self::position`].
    pub fn at(position: usize, k: usize) -> Self {
        if position < k {
            Self::Lambda(position)
        } else {
            Self::LambdaPrime(position - k)
        }
    }

    /// Block index.
    pub fn block(self) -> usize {
        match self {
            Self::Lambda(i) | Self::LambdaPrime(i) => i,
        }
    }

    /// The Selmer triple for block value `d`.
    pub fn triple(self, d: u64) -> [u64; 3] {
        match self {
            Self::Lambda(_) => [1, d, d],
            Self::LambdaPrime(_) => [d, d, 1],
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lambda(i) => write!(f, "L{}", i + 1),
            Self::LambdaPrime(i) => write!(f, "L{}'", i + 1),
        }
    }
}

/// The Cassels pairing in the basis `Λ_1..Λ_k, Λ'_1..Λ'_k`, and the blocks of
/// its matrix representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    /// Entry-by-entry table.
    pub matrix: BitMatrix,
    /// `a*_ij = [c_j/d_i]` from the block solutions.
    pub a_star: BitMatrix,
    /// `psi_ii = [c_i/d_i]`, `psi_ij = [gamma_j/d_i]`.
    pub psi: BitMatrix,
    /// `diag(1 - h8(d_i))`.
    pub d_star: BitMatrix,
    /// `delta_{d_i}`.
    pub delta: Vec<u8>,
    /// `(A* + Psi, A*^T + D*; A* + D*, A* + A*^T)`.
    pub block_form: BitMatrix,
}

impl PairingMatrix {
    /// Number of blocks.
    pub fn k(&self) -> usize {
        self.a_star.rows()
    }

    /// Additive value of `<x, y>`.
    pub fn entry(&self, x: BasisElement, y: BasisElement) -> u8 {
        let k = self.k();
        u8::from(self.matrix.bit(x.position(k), y.position(k)))
    }

    /// Whether the table agrees with the block formula.
    pub fn consistent(&self) -> bool {
        self.matrix == self.block_form
    }

    /// Whether the pairing is nondegenerate.
    pub fn nondegenerate(&self) -> bool {
        self.matrix.rank() == 2 * self.k()
    }
}

/// Assembles the pairing table from the block solutions. Fails if the table
/// is not symmetric with zero diagonal.
pub fn pairing_table(sols: &CasselsSolutions, opts: &SolveOptions) -> Result<PairingMatrix> {
    let dec = sols.decomposition();
    dec.check_conditions()?;
    let k = dec.k();
    let ds = dec.blocks();
    let bl = sols.blocks();
    let sym = |x: i128, j: usize| additive_symbol(x, &ds[j]) == 1;
    let mut delta = Vec::with_capacity(k);
    let mut d_star = BitMatrix::zeros(k, k);
    for (i, d) in ds.iter().enumerate() {
        delta.push(delta_n(d)?);
        d_star.set(i, i, Genus::new(d)?.h8(opts)? == 0);
    }
    let mut m = BitMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        let (c, g, cb) = (bl[i].c.c as i128, bl[i].gamma.gamma, bl[i].cbar.cbar);
        for j in 0..k {
            if i == j {
                m.set(i, k + i, (delta[i] == 1) ^ sym(c, i));
                m.set(k + i, i, (delta[i] == 1) ^ sym(cb, i));
            } else {
                m.set(i, j, sym(mul(c, g)?, j));
                m.set(i, k + j, sym(c, j));
                m.set(k + i, j, sym(cb, j));
                m.set(k + i, k + j, sym(mul(c, cb)?, j));
            }
        }
    }
    if !m.is_symmetric() || !m.has_zero_diagonal() {
        return Err(internal(format!(
            "pairing table for {:?} is not symmetric",
            dec.values()
        )));
    }
    let mut a_star = BitMatrix::zeros(k, k);
    let mut psi = BitMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            a_star.set(i, j, sym(bl[j].c.c as i128, i));
            psi.set(
                i,
                j,
                if i == j {
                    sym(bl[i].c.c as i128, i)
                } else {
                    sym(bl[j].gamma.gamma, i)
                },
            );
        }
    }
    let a_t = a_star.transpose();
    let block_form = BitMatrix::block(
        &a_star.add(&psi)?,
        &a_t.add(&d_star)?,
        &a_star.add(&d_star)?,
        &a_star.add(&a_t)?,
    )?;
    Ok(PairingMatrix {
        matrix: m,
        a_star,
        psi,
        d_star,
        delta,
        block_form,
    })
}

/// The two conditions on `A*`: symmetric, and `A* + D*` nonsingular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTheoremCheck {
    /// `A*` from the higher Redei matrix.
    pub a_star: BitMatrix,
    /// `diag(1 - h8(d_i))`.
    pub d_star: BitMatrix,
    /// `h8(d_i)`.
    pub h8_blocks: Vec<u32>,
    /// `A*` is symmetric.
    pub symmetric: bool,
    /// `A* + D*` is nonsingular.
    pub nonsingular: bool,
}

impl MainTheoremCheck {
    /// Both conditions hold, so the pairing is nondegenerate.
    pub fn holds(&self) -> bool {
        self.symmetric && self.nonsingular
    }
}

/// Evaluates both conditions on `A*` for a decomposition.
pub fn check_mainthm2(dec: &Decomposition, opts: &SolveOptions) -> Result<MainTheoremCheck> {
    let redei = HigherRedei::new(dec, opts)?;
    let k = dec.k();
    let mut d_star = BitMatrix::zeros(k, k);
    let mut h8_blocks = Vec::with_capacity(k);
    for (i, d) in dec.blocks().iter().enumerate() {
        let h = Genus::new(d)?.h8(opts)?;
        d_star.set(i, i, h == 0);
        h8_blocks.push(h);
    }
    let a_star = redei.a_star().clone();
    let symmetric = a_star.is_symmetric();
    let nonsingular = a_star.add(&d_star)?.rank() == k;
    Ok(MainTheoremCheck {
        a_star,
        d_star,
        h8_blocks,
        symmetric,
        nonsingular,
    })
}

/// The two-block criterion in terms of quartic symbols and 8-ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoBlockCheck {
    /// `(d_1/d_2)_4`.
    pub q12: i8,
    /// `(d_2/d_1)_4`.
    pub q21: i8,
    /// `h8(d_1), h8(d_2)`.
    pub h8: [u32; 2],
}

impl TwoBlockCheck {
    /// `(d_1/d_2)_4 = (d_2/d_1)_4`, and either exactly one `h8(d_i)` is 0
    /// with `(d_1/d_2)_4 = -1`, or both are 0.
    pub fn holds(&self) -> bool {
        let zeros = self.h8.iter().filter(|&&h| h == 0).count();
        self.q12 == self.q21 && (zeros == 2 || (zeros == 1 && self.q12 == -1))
    }
}

/// The two-block criterion for `n = d_1 d_2`.
pub fn cor2_check(dec: &Decomposition, opts: &SolveOptions) -> Result<TwoBlockCheck> {
    dec.check_conditions()?;
    let [d1, d2] = dec.blocks() else {
        return Err(precondition(format!(
            "expected two blocks, got {:?}",
            dec.values()
        )));
    };
    Ok(TwoBlockCheck {
        q12: quartic_symbol_composite(d1.value() as i128, d2)?,
        q21: quartic_symbol_composite(d2.value() as i128, d1)?,
        h8: [Genus::new(d1)?.h8(opts)?, Genus::new(d2)?.h8(opts)?],
    })
}
