//! Ramanujan sums c_n(k).
//!
//! Production values come from the divisor-sum representation, evaluated
//! through Hölder's closed form c_n(k) = μ(n/g)·φ(n)/φ(n/g), g = gcd(k, n).
//! The divisor sum itself and a floating-point exponential sum are kept as
//! independent routes for cross-checking.

use rayon::prelude::*;

use crate::arith::{divisors, euler_phi, factorize, gcd_with, mobius, reduce_mod, FactoredNat};
use crate::error::{Error, Result};

/// Largest n accepted by [`ramanujan_sum_exponential`].
pub const EXPONENTIAL_ORACLE_LIMIT: u64 = 10_000;

fn holder(n: &FactoredNat, g: u64) -> Result<i64> {
    let q = factorize(n.value() / g)?;
    let mu = mobius(&q);
    if mu == 0 {
        return Ok(0);
    }
    let ratio = euler_phi(n) / euler_phi(&q);
    let ratio = i64::try_from(ratio).map_err(|_| Error::Overflow("ramanujan_sum"))?;
    Ok(mu * ratio)
}

/// c_n(k) for n ≥ 1 and any integer k; c_n(0) = φ(n).
pub fn ramanujan_sum(n: u64, k: i64) -> Result<i64> {
    let nf = factorize(n)?;
    holder(&nf, gcd_with(k, n))
}

/// c_n(k) = Σ_{d | gcd(k,n)} d·μ(n/d), summed literally.
pub fn ramanujan_sum_divisor_sum(n: u64, k: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::domain("Ramanujan sum needs n ≥ 1"));
    }
    let g = factorize(gcd_with(k, n))?;
    divisors(&g).into_iter().try_fold(0i64, |acc, d| {
        let term = i64::try_from(d)
            .ok()
            .and_then(|d| d.checked_mul(mobius(&factorize(n / d as u64).ok()?)))
            .ok_or(Error::Overflow("ramanujan_sum_divisor_sum"))?;
        acc.checked_add(term)
            .ok_or(Error::Overflow("ramanujan_sum_divisor_sum"))
    })
}

/// The values (c_n(0), c_n(1), …, c_n(n−1)), one full period.
pub fn ramanujan_row(n: u64) -> Result<Vec<i64>> {
    let nf = factorize(n)?;
    let divs = divisors(&nf);
    let by_divisor = divs
        .iter()
        .map(|&d| holder(&nf, d))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..n)
        .map(|k| {
            let g = gcd_with(k as i64, n);
            by_divisor[divs.binary_search(&g).expect("gcd divides n")]
        })
        .collect())
}

/// Σ_{j ≤ n, gcd(j,n)=1} cos(2πjk/n), the defining exponential sum.
pub fn ramanujan_sum_exponential(n: u64, k: i64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("Ramanujan sum needs n ≥ 1"));
    }
    if n > EXPONENTIAL_ORACLE_LIMIT {
        return Err(Error::scale(format!(
            "exponential oracle limited to n ≤ {EXPONENTIAL_ORACLE_LIMIT}"
        )));
    }
    let k = reduce_mod(k, n);
    let sum = (1..=n)
        .filter(|&j| gcd_with(j as i64, n) == 1)
        .map(|j| {
            let phase = ((j * k) % n) as f64 / n as f64;
            (std::f64::consts::TAU * phase).cos()
        })
        .sum();
    Ok(sum)
}

/// c_n(k) for every n ≤ n_max and 1 ≤ k ≤ n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamanujanTable {
    n_max: u64,
    rows: Vec<Vec<i64>>,
}

impl RamanujanTable {
    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// Row n as (c_n(1), …, c_n(n)).
    pub fn row(&self, n: u64) -> Option<&[i64]> {
        if n == 0 {
            return None;
        }
        self.rows.get(n as usize - 1).map(Vec::as_slice)
    }

    pub fn get(&self, n: u64, k: i64) -> Option<i64> {
        let row = self.row(n)?;
        let idx = reduce_mod(k - 1, n) as usize;
        Some(row[idx])
    }

    pub fn rows(&self) -> impl Iterator<Item = (u64, &[i64])> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i as u64 + 1, r.as_slice()))
    }
}

pub fn ramanujan_table(n_max: u64) -> Result<RamanujanTable> {
    if n_max == 0 {
        return Err(Error::domain("table needs n_max ≥ 1"));
    }
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut row = ramanujan_row(n)?;
            row.rotate_left(1);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RamanujanTable { n_max, rows })
}
