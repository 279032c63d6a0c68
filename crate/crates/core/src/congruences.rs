//! Integer polynomials and root counts of simultaneous congruences
//! g_i(x) ≡ 0 (mod m_i).
//!
//! N_G counts all solutions modulo lcm(m_1, …, m_r); η_G counts only those
//! coprime to every m_i. Both are multiplicative in the moduli tuple, so
//! [`CountStrategy::Multiplicative`] scans each prime power of the lcm
//! separately and multiplies.

use std::fmt;

use num_integer::Integer;

use crate::arith::{checked_pow, gcd_with, multiplicative_eval, reduce_mod, ModuliTuple};
use crate::error::{Error, Result};

/// Largest residue range any brute-force scan will walk.
pub const SCAN_LIMIT: u64 = 10_000_000;

const MAX_DEGREE: u32 = 1024;

/// Integer polynomial, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    /// The polynomial x − a.
    pub fn linear_shift(a: i64) -> Result<Self> {
        let c = a
            .checked_neg()
            .ok_or_else(|| Error::domain(format!("shift {a} out of range")))?;
        Ok(IntPolynomial::new(vec![c, 1]))
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text, 0).parse()
    }

    /// g(x) mod n, see [`poly_eval_mod`].
    pub fn eval_mod(&self, x: i64, n: u64) -> u64 {
        poly_eval_mod(self, x, n)
    }
}

impl std::str::FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntPolynomial::parse(s)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if deg == 0 || mag != 1 {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{deg}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    offset: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, offset: usize) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser {
            chars,
            pos: 0,
            offset,
            text,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn here(&self) -> usize {
        self.offset
            + self
                .chars
                .get(self.pos)
                .map_or(self.text.len(), |&(i, _)| i)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.here(),
            message: message.into(),
        }
    }

    fn number(&mut self) -> Result<Option<u64>> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(d)))
                .ok_or_else(|| {
                    self.pos = start;
                    self.error("integer literal too large")
                })?;
            self.pos += 1;
        }
        Ok((self.pos > start).then_some(value))
    }

    fn parse(mut self) -> Result<IntPolynomial> {
        if self.chars.is_empty() {
            return Err(self.error("empty polynomial"));
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return Err(self.error(format!("expected '+' or '-', found '{c}'"))),
                None => unreachable!(),
            };
            first = false;
            let (coeff, degree) = self.term()?;
            let coeff = i64::try_from(coeff).map_err(|_| self.error("coefficient too large"))?;
            let coeff = if negative { -coeff } else { coeff };
            let degree = degree as usize;
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, 0);
            }
            coeffs[degree] = coeffs[degree]
                .checked_add(coeff)
                .ok_or_else(|| self.error("coefficient overflow"))?;
        }
        Ok(IntPolynomial::new(coeffs))
    }

    fn term(&mut self) -> Result<(u64, u32)> {
        let coeff = self.number()?;
        if coeff.is_some() && self.peek() == Some('*') {
            self.pos += 1;
            if self.peek() != Some('x') {
                return Err(self.error("expected 'x' after '*'"));
            }
        }
        if self.peek() != Some('x') {
            return match (coeff, self.peek()) {
                (Some(c), None | Some('+') | Some('-')) => Ok((c, 0)),
                (_, None) => Err(self.error("expected a term")),
                (_, Some(c)) => Err(self.error(format!("unexpected character '{c}'"))),
            };
        }
        self.pos += 1;
        let mut degree = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            degree = match self.number()? {
                Some(e) if e <= u64::from(MAX_DEGREE) => e as u32,
                Some(_) => return Err(self.error(format!("exponent exceeds {MAX_DEGREE}"))),
                None => return Err(self.error("expected exponent after '^'")),
            };
        }
        match self.peek() {
            None | Some('+') | Some('-') => Ok((coeff.unwrap_or(1), degree)),
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
        }
    }
}

/// g(x) mod n by Horner's rule, every step reduced mod n.
///
/// Panics if `n == 0`.
pub fn poly_eval_mod(g: &IntPolynomial, x: i64, n: u64) -> u64 {
    assert!(n > 0, "modulus must be positive");
    if n <= u64::from(u32::MAX) {
        // residues < 2^32, so acc·x + c stays below 2^64
        let xr = reduce_mod(x, n);
        return g
            .coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * xr + reduce_mod(c, n)) % n);
    }
    let n128 = u128::from(n);
    let xr = u128::from(reduce_mod(x, n));
    g.coeffs.iter().rev().fold(0u128, |acc, &c| {
        (acc * xr + u128::from(reduce_mod(c, n))) % n128
    }) as u64
}

/// An ordered system G = (g_1, …, g_r), r ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySystem {
    polys: Vec<IntPolynomial>,
}

impl PolySystem {
    pub fn new(polys: Vec<IntPolynomial>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::domain("polynomial system must be nonempty"));
        }
        Ok(PolySystem { polys })
    }

    /// The system (x − a_1, …, x − a_r).
    pub fn linear_shifts(shifts: &[i64]) -> Result<Self> {
        PolySystem::new(
            shifts
                .iter()
                .map(|&a| IntPolynomial::linear_shift(a))
                .collect::<Result<_>>()?,
        )
    }

    /// Parses semicolon-separated polynomials, e.g. `"x^2-1;x"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut polys = Vec::new();
        let mut offset = 0;
        for piece in text.split(';') {
            polys.push(Parser::new(piece, offset).parse()?);
            offset += piece.len() + 1;
        }
        PolySystem::new(polys)
    }

    pub fn polys(&self) -> &[IntPolynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.polys.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A number of solutions counted modulo `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootCount {
    pub count: u64,
    pub modulus: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountStrategy {
    Direct,
    Multiplicative,
}

pub(crate) fn check_arity(system: &PolySystem, moduli: &ModuliTuple) -> Result<()> {
    if system.len() != moduli.len() {
        return Err(Error::domain(format!(
            "{} polynomials but {} moduli",
            system.len(),
            moduli.len()
        )));
    }
    Ok(())
}

/// N_G (or η_G with `units_only`) counted modulo lcm(m_1, …, m_r).
pub fn count_roots(
    system: &PolySystem,
    moduli: &ModuliTuple,
    units_only: bool,
    strategy: CountStrategy,
) -> Result<RootCount> {
    check_arity(system, moduli)?;
    let modulus = moduli.lcm_value();
    let count = match strategy {
        CountStrategy::Direct => {
            if modulus > SCAN_LIMIT {
                return Err(Error::scale(format!(
                    "direct root scan limited to lcm ≤ {SCAN_LIMIT}, got {modulus}"
                )));
            }
            (0..modulus)
                .filter(|&x| {
                    (!units_only || x.gcd(&modulus) == 1)
                        && system
                            .polys
                            .iter()
                            .zip(moduli.moduli())
                            .all(|(g, &mi)| poly_eval_mod(g, x as i64, mi) == 0)
                })
                .count() as u64
        }
        CountStrategy::Multiplicative => multiplicative_eval(moduli, |p, exps| {
            local_root_count(system, p, exps, units_only)
        })?,
    };
    Ok(RootCount { count, modulus })
}

/// N_G or η_G at the prime-power tuple (p^{e_1}, …, p^{e_r}).
pub fn local_root_count(
    system: &PolySystem,
    p: u64,
    exponents: &[u32],
    units_only: bool,
) -> Result<u64> {
    let top = exponents.iter().copied().max().unwrap_or(0);
    if top == 0 {
        return Ok(1);
    }
    let q = checked_pow(p, top)?;
    if q > SCAN_LIMIT {
        return Err(Error::scale(format!(
            "local root scan limited to p^e ≤ {SCAN_LIMIT}, got {p}^{top}"
        )));
    }
    let moduli: Vec<Option<u64>> = exponents
        .iter()
        .map(|&e| (e > 0).then(|| p.pow(e)))
        .collect();
    Ok((0..q)
        .filter(|&x| {
            (!units_only || x % p != 0)
                && system
                    .polys
                    .iter()
                    .zip(&moduli)
                    .all(|(g, m)| m.is_none_or(|m| poly_eval_mod(g, x as i64, m) == 0))
        })
        .count() as u64)
}

/// Closed-form N or η for the linear system x ≡ a_i (mod d_i): 1 when
/// gcd(d_i, d_j) | a_i − a_j for all pairs (and, for units, gcd(d_i, a_i) = 1),
/// otherwise 0.
pub fn linear_system_root_count(a: &[i64], d: &[u64], units_only: bool) -> Result<u64> {
    if a.len() != d.len() {
        return Err(Error::domain(format!(
            "{} shifts but {} moduli",
            a.len(),
            d.len()
        )));
    }
    if d.contains(&0) {
        return Err(Error::domain("moduli must be positive"));
    }
    if units_only && a.iter().zip(d).any(|(&ai, &di)| gcd_with(ai, di) != 1) {
        return Ok(0);
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let g = d[i].gcd(&d[j]);
            let diff = i128::from(a[i]) - i128::from(a[j]);
            if diff.rem_euclid(i128::from(g)) != 0 {
                return Ok(0);
            }
        }
    }
    Ok(1)
}
