//! s-even functions, their Ramanujan–Fourier coefficients, Cauchy
//! convolution, and the function T_a.
//!
//! An s-even function satisfies f(n) = f(gcd(n, s)), so it is stored by its
//! values on the divisors of s. The coefficients α_f(d) are the unique
//! weights with f(n) = Σ_{d|s} α_f(d) c_d(n).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{
    divisors, euler_phi, factorize, gcd_with, mobius, reduce_mod, to_integer, ExactRational,
    ModuliTuple,
};
use crate::error::{Error, Result};
use crate::ramanujan::{ramanujan_row, ramanujan_sum};

/// Largest m^r accepted by the direct T_a summation.
pub const T_DIRECT_LIMIT: u64 = 10_000_000;

fn rat(v: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

fn divisor_index(divs: &[u64], d: u64) -> usize {
    divs.binary_search(&d).expect("argument divides the period")
}

/// A function with f(n) = f(gcd(n, s)), stored on the divisors of s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SEvenFunction {
    s: u64,
    divisors: Vec<u64>,
    values: Vec<ExactRational>,
}

impl SEvenFunction {
    /// Builds f from its values on the divisors of `s`, in increasing order.
    pub fn from_divisor_values(s: u64, values: Vec<ExactRational>) -> Result<Self> {
        let divisors = divisors(&factorize(s)?);
        if values.len() != divisors.len() {
            return Err(Error::domain(format!(
                "{s} has {} divisors but {} values were given",
                divisors.len(),
                values.len()
            )));
        }
        Ok(SEvenFunction { s, divisors, values })
    }

    pub fn from_fn(s: u64, mut f: impl FnMut(u64) -> ExactRational) -> Result<Self> {
        let divisors = divisors(&factorize(s)?);
        let values = divisors.iter().map(|&d| f(d)).collect();
        Ok(SEvenFunction { s, divisors, values })
    }

    /// c_n viewed as an s-even function; requires n | s.
    pub fn ramanujan(n: u64, s: u64) -> Result<Self> {
        if n == 0 || s == 0 || s % n != 0 {
            return Err(Error::domain(format!("c_{n} is not {s}-even unless {n} | {s}")));
        }
        let row = ramanujan_row(n)?;
        SEvenFunction::from_fn(s, |d| rat(row[(d % n) as usize]))
    }

    pub fn constant(s: u64, value: ExactRational) -> Result<Self> {
        SEvenFunction::from_fn(s, |_| value.clone())
    }

    pub fn zero(s: u64) -> Result<Self> {
        SEvenFunction::constant(s, ExactRational::zero())
    }

    pub fn period(&self) -> u64 {
        self.s
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }

    pub fn evaluate(&self, n: i64) -> ExactRational {
        evaluate(self, n)
    }

    /// Values on every residue 0, 1, …, s − 1.
    fn residue_values(&self) -> Vec<ExactRational> {
        (0..self.s)
            .map(|k| self.values[divisor_index(&self.divisors, gcd_with(k as i64, self.s))].clone())
            .collect()
    }
}

/// Ramanujan–Fourier coefficients α(d), d | s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierCoefficients {
    s: u64,
    divisors: Vec<u64>,
    alpha: Vec<ExactRational>,
}

impl FourierCoefficients {
    pub fn from_divisor_values(s: u64, alpha: Vec<ExactRational>) -> Result<Self> {
        let f = SEvenFunction::from_divisor_values(s, alpha)?;
        Ok(FourierCoefficients {
            s,
            divisors: f.divisors,
            alpha: f.values,
        })
    }

    pub fn from_fn(s: u64, f: impl FnMut(u64) -> ExactRational) -> Result<Self> {
        let f = SEvenFunction::from_fn(s, f)?;
        Ok(FourierCoefficients {
            s,
            divisors: f.divisors,
            alpha: f.values,
        })
    }

    pub fn period(&self) -> u64 {
        self.s
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn alpha(&self) -> &[ExactRational] {
        &self.alpha
    }

    pub fn get(&self, d: u64) -> Option<&ExactRational> {
        self.divisors.binary_search(&d).ok().map(|i| &self.alpha[i])
    }
}

/// f(n) = f(gcd(n, s)), with gcd(0, s) = s.
pub fn evaluate(f: &SEvenFunction, n: i64) -> ExactRational {
    f.values[divisor_index(&f.divisors, gcd_with(n, f.s))].clone()
}

/// α_f(d) = (1/s) Σ_{e|s} f(e) c_{s/e}(s/d).
pub fn fourier_coefficients(f: &SEvenFunction) -> Result<FourierCoefficients> {
    let s = f.s;
    let mut alpha = Vec::with_capacity(f.divisors.len());
    for &d in &f.divisors {
        let mut acc = ExactRational::zero();
        for (&e, value) in f.divisors.iter().zip(&f.values) {
            if value.is_zero() {
                continue;
            }
            let c = ramanujan_sum(s / e, (s / d) as i64)?;
            acc += value * rat(c);
        }
        alpha.push(acc / rat(s as i64));
    }
    Ok(FourierCoefficients {
        s,
        divisors: f.divisors.clone(),
        alpha,
    })
}

/// f(n) = Σ_{d|s} α(d) c_d(n).
pub fn from_fourier(coeffs: &FourierCoefficients) -> Result<SEvenFunction> {
    let mut values = Vec::with_capacity(coeffs.divisors.len());
    for &e in &coeffs.divisors {
        let mut acc = ExactRational::zero();
        for (&d, a) in coeffs.divisors.iter().zip(&coeffs.alpha) {
            if a.is_zero() {
                continue;
            }
            acc += a * rat(ramanujan_sum(d, e as i64)?);
        }
        values.push(acc);
    }
    Ok(SEvenFunction {
        s: coeffs.s,
        divisors: coeffs.divisors.clone(),
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CauchyStrategy {
    /// Σ_{k mod s} f(k) g(n − k) at every divisor n.
    Naive,
    /// α_{f⊗g}(d) = s·α_f(d)·α_g(d), then invert.
    Spectral,
}

/// The Cauchy convolution (f ⊗ g)(n) = Σ_{k mod s} f(k) g(n − k).
pub fn cauchy_convolve(
    f: &SEvenFunction,
    g: &SEvenFunction,
    strategy: CauchyStrategy,
) -> Result<SEvenFunction> {
    if f.s != g.s {
        return Err(Error::domain(format!(
            "cannot convolve {}-even and {}-even functions",
            f.s, g.s
        )));
    }
    let s = f.s;
    match strategy {
        CauchyStrategy::Naive => {
            let fv = f.residue_values();
            let gv = g.residue_values();
            let values = f
                .divisors
                .iter()
                .map(|&n| {
                    (0..s).fold(ExactRational::zero(), |acc, k| {
                        let j = reduce_mod(n as i64 - k as i64, s) as usize;
                        acc + &fv[k as usize] * &gv[j]
                    })
                })
                .collect();
            Ok(SEvenFunction {
                s,
                divisors: f.divisors.clone(),
                values,
            })
        }
        CauchyStrategy::Spectral => {
            let af = fourier_coefficients(f)?;
            let ag = fourier_coefficients(g)?;
            let scale = rat(s as i64);
            let alpha = af
                .alpha
                .iter()
                .zip(&ag.alpha)
                .map(|(x, y)| &scale * x * y)
                .collect();
            from_fourier(&FourierCoefficients {
                s,
                divisors: af.divisors,
                alpha,
            })
        }
    }
}

/// Σ_{k ≤ s, gcd(k,s)=1} f(a − k), computed directly and through
/// φ(s) Σ_{d|s} α_f(d) μ(d) c_d(a)/φ(d); a disagreement is an error.
pub fn coprime_shift_sum(f: &SEvenFunction, a: i64) -> Result<ExactRational> {
    let s = f.s;
    let direct = (1..=s)
        .filter(|&k| k.gcd(&s) == 1)
        .fold(ExactRational::zero(), |acc, k| {
            acc + evaluate(f, (i128::from(a) - i128::from(k)).rem_euclid(i128::from(s)) as i64)
        });

    let alpha = fourier_coefficients(f)?;
    let mut spectral = ExactRational::zero();
    for (&d, ad) in alpha.divisors.iter().zip(&alpha.alpha) {
        if ad.is_zero() {
            continue;
        }
        let df = factorize(d)?;
        let mu = mobius(&df);
        if mu == 0 {
            continue;
        }
        let c = ramanujan_sum(d, a)?;
        spectral += ad * rat(mu * c) / rat(euler_phi(&df) as i64);
    }
    spectral *= rat(euler_phi(&factorize(s)?) as i64);

    if direct != spectral {
        return Err(Error::Inconsistent(format!(
            "coprime shift sum: direct {direct} but spectral {spectral} (s = {s}, a = {a})"
        )));
    }
    Ok(direct)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TStrategy {
    /// m^{r−1} μ(m) c_m(a) when all moduli equal m, else 0.
    Closed,
    /// Cauchy convolution of the c_{m_i} followed by the coprime shift sum.
    Spectral,
    /// The defining sum over (k_1, …, k_{r−1}, ℓ).
    Direct,
}

/// T_a(m_1, …, m_r) = Σ c_{m_1}(k_1)⋯c_{m_{r−1}}(k_{r−1}) c_{m_r}(k_1 + … + k_{r−1} + ℓ − a)
/// over k_i mod m and ℓ mod m with gcd(ℓ, m) = 1.
pub fn t_a(moduli: &ModuliTuple, a: i64, strategy: TStrategy) -> Result<BigInt> {
    match strategy {
        TStrategy::Closed => t_a_closed(moduli, a),
        TStrategy::Spectral => t_a_spectral(moduli, a),
        TStrategy::Direct => t_a_direct(moduli, a),
    }
}

fn t_a_closed(moduli: &ModuliTuple, a: i64) -> Result<BigInt> {
    if !moduli.all_equal() {
        return Ok(BigInt::zero());
    }
    let m = moduli.lcm();
    let mu = mobius(m);
    if mu == 0 {
        return Ok(BigInt::zero());
    }
    let power = num_traits::pow(BigInt::from(m.value()), moduli.len() - 1);
    Ok(power * mu * ramanujan_sum(m.value(), a)?)
}

fn t_a_spectral(moduli: &ModuliTuple, a: i64) -> Result<BigInt> {
    let m = moduli.lcm_value();
    let mut kernel: Option<SEvenFunction> = None;
    for &mi in moduli.moduli() {
        let c = SEvenFunction::ramanujan(mi, m)?;
        kernel = Some(match kernel {
            None => c,
            Some(k) => cauchy_convolve(&k, &c, CauchyStrategy::Spectral)?,
        });
    }
    let kernel = kernel.ok_or_else(|| Error::domain("T_a needs at least one modulus"))?;
    to_integer(coprime_shift_sum(&kernel, a)?, "T_a spectral route")
}

fn t_a_direct(moduli: &ModuliTuple, a: i64) -> Result<BigInt> {
    let m = moduli.lcm_value();
    let r = moduli.len();
    let cells = u32::try_from(r)
        .ok()
        .and_then(|r| m.checked_pow(r))
        .filter(|&c| c <= T_DIRECT_LIMIT);
    if cells.is_none() {
        return Err(Error::scale(format!(
            "direct T_a limited to m^r ≤ {T_DIRECT_LIMIT}"
        )));
    }
    let rows = moduli
        .moduli()
        .iter()
        .map(|&mi| ramanujan_row(mi))
        .collect::<Result<Vec<_>>>()?;
    let ms = moduli.moduli();
    let units: Vec<u64> = (0..m).filter(|l| l.gcd(&m) == 1).collect();
    let a = reduce_mod(a, m);
    let last = &rows[r - 1];
    let m_last = ms[r - 1];

    let overflow = || Error::Overflow("direct T_a");
    let mut total: i128 = 0;
    let mut ks = vec![0u64; r - 1];
    loop {
        let mut prod: i128 = 1;
        let mut shift: u64 = 0;
        for (i, &k) in ks.iter().enumerate() {
            prod *= i128::from(rows[i][(k % ms[i]) as usize]);
            shift = (shift + k) % m;
        }
        if prod != 0 {
            for &l in &units {
                let arg = (shift + l + m - a) % m;
                let term = prod
                    .checked_mul(i128::from(last[(arg % m_last) as usize]))
                    .ok_or_else(overflow)?;
                total = total.checked_add(term).ok_or_else(overflow)?;
            }
        }
        // advance the (k_1, …, k_{r−1}) odometer
        let mut i = 0;
        while i < ks.len() && ks[i] == m - 1 {
            ks[i] = 0;
            i += 1;
        }
        if i == ks.len() {
            break;
        }
        ks[i] += 1;
    }
    Ok(BigInt::from(total))
}
