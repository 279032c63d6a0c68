//! The Euler product α_r, exact partial sums of g_r, and the comparison
//! Σ_{m≤x} g_r(m) ≈ (α_r / r) x^r.
//!
//! g_r is multiplicative with g_r(p) = x_r(p)/p and
//! g_r(p^e) = p^{(e−1)(r−1)} (p − 1) h_r(p) for e ≥ 2. Writing
//! g_r = F_r * id_{r−1} (Dirichlet convolution) gives F_r(p) = a_r(p),
//! F_r(p²) = b_r(p) and F_r(p^k) = 0 for k ≥ 3, and α_r = Σ F_r(n)/n^r.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{big_pow, primes_up_to, smallest_prime_factors, ExactRational};
use crate::error::{Error, Result};
use crate::sums::{h_value, x_value};

/// Largest x accepted by [`g_r_sieve`].
pub const SIEVE_LIMIT: u64 = 1_000_000;
/// Largest bound accepted by [`dirichlet_decomposition_check`].
pub const DIRICHLET_CHECK_LIMIT: u64 = 10_000;

fn check_r(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::domain(format!("average order needs r ≥ 2, got {r}")));
    }
    Ok(())
}

/// Local data of the Euler factor at p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFactorData {
    pub p: u64,
    pub r: usize,
    /// x_r(p) = (p − 1)^r + (−1)^r (p − 2)
    pub x_r: BigInt,
    /// a_r(p) = x_r(p)/p − p^{r−1}
    pub a_r: ExactRational,
    /// b_r(p) = p^{r−1}(p − 1) h_r(p) − p^{r−2} x_r(p)
    pub b_r: ExactRational,
}

impl EulerFactorData {
    pub fn new(r: usize, p: u64) -> Result<Self> {
        check_r(r)?;
        let x_r = x_value(r, p);
        let h = h_value(r, p)?;
        let pr1 = big_pow(p, r as u32 - 1);
        let pr2 = big_pow(p, r as u32 - 2);
        let a_r = ExactRational::new(x_r.clone(), BigInt::from(p))
            - ExactRational::from_integer(pr1.clone());
        let b_r = ExactRational::from_integer(pr1 * (p - 1) * h - pr2 * &x_r);
        Ok(EulerFactorData { p, r, x_r, a_r, b_r })
    }

    /// g_r(p) = x_r(p)/p.
    pub fn g_at_prime(&self) -> ExactRational {
        ExactRational::new(self.x_r.clone(), BigInt::from(self.p))
    }

    /// 1 + (x_r(p) − p^r)/p^{r+1} + (p(p − 1)h_r(p) − x_r(p))/p^{r+2}, exactly.
    pub fn factor(&self) -> Result<ExactRational> {
        let p = self.p;
        let r = self.r as u32;
        let h = h_value(self.r, p)?;
        let first = ExactRational::new(&self.x_r - big_pow(p, r), big_pow(p, r + 1));
        let second = ExactRational::new(
            BigInt::from(p) * (p - 1) * h - &self.x_r,
            big_pow(p, r + 2),
        );
        Ok(ExactRational::one() + first + second)
    }
}

/// α_r truncated to primes p ≤ prime_bound.
pub fn alpha_r(r: usize, prime_bound: u64) -> Result<f64> {
    check_r(r)?;
    let mut product = 1.0f64;
    for p in primes_up_to(prime_bound) {
        let delta = EulerFactorData::new(r, p)?.factor()? - ExactRational::one();
        product *= 1.0 + delta.to_f64().ok_or(Error::Overflow("alpha_r"))?;
    }
    Ok(product)
}

/// Rough tail estimate for the truncated product: each omitted factor lies
/// within r/p² of 1, and Σ_{p>P} r/p² < r/(P − 1).
pub fn alpha_tail_estimate(r: usize, prime_bound: u64) -> f64 {
    if prime_bound < 2 {
        return f64::INFINITY;
    }
    r as f64 / (prime_bound - 1) as f64
}

/// g_r(p^e) from the prime-power closed form.
pub fn g_r_prime_power(r: usize, p: u64, e: u32) -> Result<ExactRational> {
    match e {
        0 => Ok(ExactRational::one()),
        1 => Ok(ExactRational::new(x_value(r, p), BigInt::from(p))),
        _ => {
            let pow = (e - 1)
                .checked_mul(r as u32 - 1)
                .ok_or(Error::Overflow("g_r_prime_power"))?;
            Ok(ExactRational::from_integer(
                big_pow(p, pow) * (p - 1) * h_value(r, p)?,
            ))
        }
    }
}

/// Splits m = p^e · rest with p the smallest prime factor.
fn peel(spf: &[u32], m: usize) -> (u64, u32, usize) {
    let p = spf[m] as usize;
    let mut rest = m;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (p as u64, e, rest)
}

/// g_r(1), …, g_r(x), assembled multiplicatively over a smallest-prime-factor sieve.
pub fn g_r_sieve(r: usize, x: u64) -> Result<Vec<ExactRational>> {
    check_r(r)?;
    if x > SIEVE_LIMIT {
        return Err(Error::scale(format!("g_r sieve limited to x ≤ {SIEVE_LIMIT}")));
    }
    let n = x as usize;
    let spf = smallest_prime_factors(n);
    let mut g: Vec<ExactRational> = Vec::with_capacity(n + 1);
    g.push(ExactRational::zero());
    if n >= 1 {
        g.push(ExactRational::one());
    }
    for m in 2..=n {
        let (p, e, rest) = peel(&spf, m);
        let local = g_r_prime_power(r, p, e)?;
        let value = if rest == 1 { local } else { local * &g[rest] };
        g.push(value);
    }
    g.remove(0);
    Ok(g)
}

/// F_r(1), …, F_r(bound) with F_r(p) = a_r(p), F_r(p²) = b_r(p), F_r(p^k) = 0 for k ≥ 3.
pub fn f_r_values(r: usize, bound: u64) -> Result<Vec<ExactRational>> {
    check_r(r)?;
    let n = bound as usize;
    let spf = smallest_prime_factors(n);
    let mut f = vec![ExactRational::zero(); n + 1];
    if n >= 1 {
        f[1] = ExactRational::one();
    }
    for m in 2..=n {
        let (p, e, rest) = peel(&spf, m);
        if e >= 3 || f[rest].is_zero() {
            continue;
        }
        let data = EulerFactorData::new(r, p)?;
        let local = if e == 1 { data.a_r } else { data.b_r };
        f[m] = local * &f[rest];
    }
    f.remove(0);
    Ok(f)
}

/// Checks g_r(m) = Σ_{d|m} F_r(d) (m/d)^{r−1} exactly for every m ≤ m_bound.
pub fn dirichlet_decomposition_check(r: usize, m_bound: u64) -> Result<bool> {
    check_r(r)?;
    if m_bound > DIRICHLET_CHECK_LIMIT {
        return Err(Error::scale(format!(
            "Dirichlet check limited to m ≤ {DIRICHLET_CHECK_LIMIT}"
        )));
    }
    let n = m_bound as usize;
    let g = g_r_sieve(r, m_bound)?;
    let f = f_r_values(r, m_bound)?;
    let mut conv = vec![ExactRational::zero(); n];
    for d in 1..=n {
        let fd = &f[d - 1];
        if fd.is_zero() {
            continue;
        }
        for q in 1..=n / d {
            let id = num_traits::pow(BigInt::from(q), r - 1);
            conv[d * q - 1] += fd * ExactRational::from_integer(id);
        }
    }
    Ok(conv == g)
}

/// Empirical Σ_{m≤x} g_r(m) against the main term (α_r / r) x^r.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub r: usize,
    pub x: u64,
    pub empirical: ExactRational,
    pub alpha: f64,
    pub predicted: f64,
    pub ratio: f64,
    pub alpha_truncation: u64,
    pub alpha_tail_estimate: f64,
}

/// Sums a slice of rationals pairwise, keeping intermediate denominators small.
fn tree_sum(values: &[ExactRational]) -> ExactRational {
    match values.len() {
        0 => ExactRational::zero(),
        1 => values[0].clone(),
        n => tree_sum(&values[..n / 2]) + tree_sum(&values[n / 2..]),
    }
}

pub fn asymptotic_report(r: usize, x: u64, prime_bound: u64) -> Result<AsymptoticReport> {
    check_r(r)?;
    if x == 0 {
        return Err(Error::domain("x must be positive"));
    }
    let values = g_r_sieve(r, x)?;
    let empirical = tree_sum(&values);
    let alpha = alpha_r(r, prime_bound)?;
    let predicted = alpha / r as f64 * (x as f64).powi(r as i32);
    let ratio = empirical.to_f64().ok_or(Error::Overflow("asymptotic_report"))? / predicted;
    Ok(AsymptoticReport {
        r,
        x,
        empirical,
        alpha,
        predicted,
        ratio,
        alpha_truncation: prime_bound,
        alpha_tail_estimate: alpha_tail_estimate(r, prime_bound),
    })
}
