//! Integer number theory primitives.
//!
//! Everything here works on `u64` moduli with checked arithmetic; any
//! overflow is reported as [`Error::Overflow`] rather than wrapping.
//! Multiplicative functions of several variables are evaluated prime by
//! prime through [`ModuliTuple::profile`] and [`multiplicative_eval`].

use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ramanujan::ramanujan_sum;

/// Exact fraction, always kept in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

/// A positive integer together with its canonical prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredNat {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredNat {
    pub fn new(n: u64) -> Result<Self> {
        factorize(n)
    }

    pub fn one() -> Self {
        FactoredNat {
            value: 1,
            factors: Vec::new(),
        }
    }

    /// Builds a factored number from `(prime, exponent)` pairs.
    ///
    /// Primes must be strictly increasing and exponents positive.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut value: u64 = 1;
        let mut last = 1;
        for &(p, e) in &factors {
            if p <= last || e == 0 || !is_prime(p) {
                return Err(Error::domain(format!(
                    "invalid factor list entry ({p}, {e})"
                )));
            }
            last = p;
            value = value
                .checked_mul(checked_pow(p, e)?)
                .ok_or(Error::Overflow("FactoredNat::from_factors"))?;
        }
        Ok(FactoredNat { value, factors })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

/// Trial division with a 2·3·5 wheel.
pub fn factorize(n: u64) -> Result<FactoredNat> {
    if n == 0 {
        return Err(Error::domain("cannot factorize 0"));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut take = |rest: &mut u64, p: u64| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    for p in [2, 3, 5] {
        take(&mut rest, p);
    }
    let mut d: u64 = 7;
    let mut w = 0;
    while d.checked_mul(d).is_some_and(|sq| sq <= rest) {
        take(&mut rest, d);
        d += WHEEL[w];
        w = (w + 1) % WHEEL.len();
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(FactoredNat { value: n, factors })
}

pub fn is_prime(n: u64) -> bool {
    match factorize(n) {
        Ok(f) => f.factors.len() == 1 && f.factors[0].1 == 1,
        Err(_) => false,
    }
}

/// All divisors of `n`, in increasing order.
pub fn divisors(n: &FactoredNat) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, e) in &n.factors {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn mobius(n: &FactoredNat) -> i64 {
    if !n.is_squarefree() {
        0
    } else if n.factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: &FactoredNat) -> u64 {
    n.factors
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// Dedekind's ψ(n) = n Π_{p|n} (1 + 1/p). Can exceed `u64` near the top
/// of the range, hence the `Result`.
pub fn dedekind_psi(n: &FactoredNat) -> Result<u64> {
    n.factors.iter().try_fold(1u64, |acc, &(p, e)| {
        p.pow(e - 1)
            .checked_mul(p + 1)
            .and_then(|local| acc.checked_mul(local))
            .ok_or(Error::Overflow("dedekind_psi"))
    })
}

/// ω(n), the number of distinct prime factors.
pub fn distinct_prime_count(n: &FactoredNat) -> usize {
    n.factors.len()
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow("checked_pow"))
}

/// gcd(k, n) for any integer k, with gcd(0, n) = n.
pub fn gcd_with(k: i64, n: u64) -> u64 {
    let k = k.unsigned_abs() % n;
    k.gcd(&n)
}

/// Reduces `k` into `[0, n)`.
pub fn reduce_mod(k: i64, n: u64) -> u64 {
    let r = k.unsigned_abs() % n;
    if k < 0 && r != 0 {
        n - r
    } else {
        r
    }
}

/// Solves the system x ≡ a_i (mod d_i).
///
/// Returns `Some((x, L))` with `0 ≤ x < L = lcm(d_1, …, d_r)` when the
/// system is solvable, `None` otherwise. An empty system yields `(0, 1)`.
pub fn crt_solve(congruences: &[(i64, u64)]) -> Result<Option<(u64, u64)>> {
    let mut x = BigInt::zero();
    let mut l = BigInt::one();
    for &(a, d) in congruences {
        if d == 0 {
            return Err(Error::domain("CRT modulus must be positive"));
        }
        let d = BigInt::from(d);
        let a = BigInt::from(a).mod_floor(&d);
        let g = l.gcd(&d);
        let diff = &a - &x;
        if !(&diff % &g).is_zero() {
            return Ok(None);
        }
        // x + l·t ≡ a (mod d)  ⇔  (l/g)·t ≡ (a − x)/g (mod d/g)
        let dg = &d / &g;
        let lg = (&l / &g).mod_floor(&dg);
        let inv = lg.extended_gcd(&dg).x.mod_floor(&dg);
        let t = ((diff / &g) * inv).mod_floor(&dg);
        x += &l * t;
        l *= dg;
        x = x.mod_floor(&l);
    }
    let to_u64 = |v: &BigInt| v.to_u64().ok_or(Error::Overflow("crt_solve"));
    Ok(Some((to_u64(&x)?, to_u64(&l)?)))
}

/// Exponents of one prime across all entries of a moduli tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeProfile {
    pub prime: u64,
    pub exponents: Vec<u32>,
}

impl PrimeProfile {
    pub fn max_exponent(&self) -> u32 {
        self.exponents.iter().copied().max().unwrap_or(0)
    }
}

/// An ordered tuple (m_1, …, m_r) with its lcm and per-prime exponent profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliTuple {
    moduli: Vec<u64>,
    lcm: FactoredNat,
    profile: Vec<PrimeProfile>,
}

impl ModuliTuple {
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::domain("moduli tuple must be nonempty"));
        }
        let factored = moduli
            .iter()
            .map(|&m| factorize(m))
            .collect::<Result<Vec<_>>>()?;
        let mut primes: Vec<u64> = factored.iter().flat_map(|f| f.primes()).collect();
        primes.sort_unstable();
        primes.dedup();

        let profile: Vec<PrimeProfile> = primes
            .into_iter()
            .map(|p| PrimeProfile {
                prime: p,
                exponents: factored.iter().map(|f| f.exponent_of(p)).collect(),
            })
            .collect();
        let lcm = FactoredNat::from_factors(
            profile.iter().map(|pp| (pp.prime, pp.max_exponent())).collect(),
        )?;
        Ok(ModuliTuple {
            moduli: moduli.to_vec(),
            lcm,
            profile,
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn lcm(&self) -> &FactoredNat {
        &self.lcm
    }

    pub fn lcm_value(&self) -> u64 {
        self.lcm.value
    }

    pub fn profile(&self) -> &[PrimeProfile] {
        &self.profile
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        self.profile
            .iter()
            .all(|pp| pp.exponents.iter().filter(|&&e| e > 0).count() <= 1)
    }

    pub fn all_equal(&self) -> bool {
        self.moduli.windows(2).all(|w| w[0] == w[1])
    }
}

/// Evaluates a multiplicative function of r variables as the product of
/// its local values `local_rule(p, (e_p(m_1), …, e_p(m_r)))`.
pub fn multiplicative_eval<T, F>(moduli: &ModuliTuple, mut local_rule: F) -> Result<T>
where
    T: One + Mul<Output = T>,
    F: FnMut(u64, &[u32]) -> Result<T>,
{
    moduli
        .profile
        .iter()
        .try_fold(T::one(), |acc, pp| Ok(acc * local_rule(pp.prime, &pp.exponents)?))
}

/// Counts k ≤ n with k ≡ x (mod d) and gcd(k, n) = 1 by scanning the class.
pub fn coprime_count_in_class(n: u64, d: u64, x: u64) -> Result<u64> {
    if n == 0 || d == 0 || n % d != 0 {
        return Err(Error::domain(format!("{d} does not divide {n}")));
    }
    if x == 0 || x > d || x.gcd(&d) != 1 {
        return Err(Error::domain(format!(
            "class representative {x} must satisfy 1 ≤ x ≤ {d} and be coprime to it"
        )));
    }
    Ok((x..=n).step_by(d as usize).filter(|k| k.gcd(&n) == 1).count() as u64)
}

/// Both sides of Σ_{d|n, gcd(d,k)=1} dμ(n/d)/φ(d) = μ(n)c_n(k)/φ(n).
pub fn brauer_rademacher_sides(n: u64, k: u64) -> Result<(ExactRational, ExactRational)> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let nf = factorize(n)?;
    let mut lhs = ExactRational::zero();
    for d in divisors(&nf) {
        if d.gcd(&k) != 1 {
            continue;
        }
        let mu = mobius(&factorize(n / d)?);
        if mu == 0 {
            continue;
        }
        let phi = euler_phi(&factorize(d)?);
        lhs += ExactRational::new(BigInt::from(d as i128 * mu as i128), BigInt::from(phi));
    }
    let c = ramanujan_sum(n, k as i64)?;
    let rhs = ExactRational::new(
        BigInt::from(mobius(&nf) * c),
        BigInt::from(euler_phi(&nf)),
    );
    Ok((lhs, rhs))
}

/// Primes up to `bound` by the sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Smallest-prime-factor table for 0..=bound.
pub fn smallest_prime_factors(bound: usize) -> Vec<u32> {
    let mut spf = vec![0u32; bound + 1];
    for i in 2..=bound {
        if spf[i] != 0 {
            continue;
        }
        let mut j = i;
        while j <= bound {
            if spf[j] == 0 {
                spf[j] = i as u32;
            }
            j += i;
        }
    }
    spf
}

pub(crate) fn big_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

pub(crate) fn to_integer(q: ExactRational, what: &str) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::Inconsistent(format!("{what} produced non-integer {q}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u64) -> FactoredNat {
        factorize(n).unwrap()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    #[test]
    fn factorize_examples() {
        assert!(f(1).factors().is_empty());
        assert_eq!(f(12).factors(), &[(2, 2), (3, 1)]);
        let big = (1u64 << 20) * 3;
        let fb = f(big);
        assert_eq!(fb.factors(), &[(2, 20), (3, 1)]);
        assert_eq!(fb.factors().iter().map(|&(p, e)| p.pow(e)).product::<u64>(), big);
        assert_eq!(f(999_999_000_001).factors().len(), 1);
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
    }

    #[test]
    fn from_factors_validates() {
        assert_eq!(FactoredNat::from_factors(vec![(2, 2), (3, 1)]).unwrap().value(), 12);
        assert!(FactoredNat::from_factors(vec![(3, 1), (2, 1)]).is_err());
        assert!(FactoredNat::from_factors(vec![(4, 1)]).is_err());
        assert!(FactoredNat::from_factors(vec![(2, 0)]).is_err());
        assert!(matches!(
            FactoredNat::from_factors(vec![(2, 64)]),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(&f(1)), vec![1]);
        assert_eq!(divisors(&f(12)), vec![1, 2, 3, 4, 6, 12]);
        let scan: Vec<u64> = (1..=30).filter(|d| 30 % d == 0).collect();
        assert_eq!(divisors(&f(30)), scan);
        assert_eq!(scan.len(), 8);
    }

    #[test]
    fn classical_functions() {
        assert_eq!(mobius(&f(1)), 1);
        assert_eq!(mobius(&f(6)), 1);
        assert_eq!(mobius(&f(12)), 0);
        assert_eq!(mobius(&f(30)), -1);
        assert_eq!(euler_phi(&f(1)), 1);
        assert_eq!(euler_phi(&f(12)), 4);
        assert_eq!(euler_phi(&f(30)), (1..=30u64).filter(|k| k.gcd(&30) == 1).count() as u64);
        assert_eq!(dedekind_psi(&f(1)).unwrap(), 1);
        assert_eq!(dedekind_psi(&f(6)).unwrap(), 12);
        assert_eq!(dedekind_psi(&f(9)).unwrap(), 12);
        assert_eq!(distinct_prime_count(&f(1)), 0);
        assert_eq!(distinct_prime_count(&f(12)), 2);
        assert_eq!(distinct_prime_count(&f(30)), 3);
    }

    #[test]
    fn divisor_sum_identities_up_to_10k() {
        for n in 1..=10_000u64 {
            let nf = f(n);
            let rebuilt: u64 = nf.factors().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(rebuilt, n);
            let divs = divisors(&nf);
            let mu_sum: i64 = divs.iter().map(|&d| mobius(&f(d))).sum();
            assert_eq!(mu_sum, i64::from(n == 1), "n = {n}");
            let phi_sum: u64 = divs.iter().map(|&d| euler_phi(&f(d))).sum();
            assert_eq!(phi_sum, n);
        }
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_solve(&[(1, 2), (2, 3)]).unwrap(), Some((5, 6)));
        assert_eq!(crt_solve(&[(1, 2), (2, 4)]).unwrap(), None);
        assert_eq!(crt_solve(&[(0, 1)]).unwrap(), Some((0, 1)));
        assert_eq!(crt_solve(&[]).unwrap(), Some((0, 1)));
        assert_eq!(crt_solve(&[(-1, 4), (3, 6)]).unwrap(), Some((3, 12)));
        assert!(crt_solve(&[(1, 0)]).is_err());
    }

    #[test]
    fn crt_matches_residue_scan() {
        let residues = [-3i64, 0, 1, 2, 5, 7];
        for d1 in 1..=12u64 {
            for d2 in 1..=12u64 {
                for d3 in [1u64, 5, 8, 9, 10] {
                    let l = d1.lcm(&d2).lcm(&d3);
                    assert!(l <= 2000);
                    for &a1 in &residues {
                        for &a2 in &residues {
                            let a3 = a1 + a2;
                            let sys = [(a1, d1), (a2, d2), (a3, d3)];
                            let hits: Vec<u64> = (0..l)
                                .filter(|&x| {
                                    sys.iter().all(|&(a, d)| reduce_mod(x as i64 - a, d) == 0)
                                })
                                .collect();
                            let got = crt_solve(&sys).unwrap();
                            match got {
                                None => assert!(hits.is_empty()),
                                Some((x, ll)) => {
                                    assert_eq!(ll, l);
                                    assert_eq!(hits, vec![x]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn moduli_tuple_profile() {
        let t = ModuliTuple::new(&[12, 18, 1]).unwrap();
        assert_eq!(t.lcm_value(), 36);
        assert_eq!(
            t.profile(),
            &[
                PrimeProfile { prime: 2, exponents: vec![2, 1, 0] },
                PrimeProfile { prime: 3, exponents: vec![1, 2, 0] },
            ]
        );
        for pp in t.profile() {
            assert_eq!(pp.max_exponent(), t.lcm().exponent_of(pp.prime));
        }
        assert!(!t.is_pairwise_coprime());
        assert!(ModuliTuple::new(&[4, 9, 5]).unwrap().is_pairwise_coprime());
        assert!(ModuliTuple::new(&[]).is_err());
        assert!(ModuliTuple::new(&[3, 0]).is_err());
    }

    #[test]
    fn multiplicative_eval_phi() {
        let phi_local = |p: u64, e: &[u32]| Ok(p.pow(e[0] - 1) * (p - 1));
        assert_eq!(multiplicative_eval(&ModuliTuple::new(&[12]).unwrap(), phi_local).unwrap(), 4);
        let ones = ModuliTuple::new(&[1, 1, 1]).unwrap();
        assert_eq!(multiplicative_eval(&ones, |_, _| Ok(0u64)).unwrap(), 1);
        for n in 1..=10_000u64 {
            let t = ModuliTuple::new(&[n]).unwrap();
            assert_eq!(multiplicative_eval(&t, phi_local).unwrap(), euler_phi(&f(n)));
        }
    }

    #[test]
    fn multiplicative_eval_error_propagates() {
        let t = ModuliTuple::new(&[6]).unwrap();
        let res: Result<u64> = multiplicative_eval(&t, |p, _| {
            if p == 3 {
                Err(Error::domain("boom"))
            } else {
                Ok(1)
            }
        });
        assert!(res.is_err());
    }

    #[test]
    fn coprime_class_counts() {
        assert_eq!(coprime_count_in_class(12, 3, 2).unwrap(), 2);
        assert_eq!(coprime_count_in_class(7, 7, 3).unwrap(), 1);
        assert_eq!(coprime_count_in_class(6, 1, 1).unwrap(), 2);
        assert!(coprime_count_in_class(12, 5, 1).is_err());
        assert!(coprime_count_in_class(12, 4, 2).is_err());
        assert!(coprime_count_in_class(12, 4, 0).is_err());
    }

    #[test]
    fn coprime_class_matches_phi_ratio() {
        for n in 1..=500u64 {
            let nf = f(n);
            for d in divisors(&nf) {
                let ratio = euler_phi(&nf) / euler_phi(&f(d));
                for x in (1..=d).filter(|x| x.gcd(&d) == 1) {
                    assert_eq!(coprime_count_in_class(n, d, x).unwrap(), ratio);
                }
            }
        }
    }

    #[test]
    fn brauer_rademacher_examples() {
        assert_eq!(brauer_rademacher_sides(3, 1).unwrap(), (q(1, 2), q(1, 2)));
        assert_eq!(brauer_rademacher_sides(4, 2).unwrap(), (q(0, 1), q(0, 1)));
        assert_eq!(brauer_rademacher_sides(1, 5).unwrap(), (q(1, 1), q(1, 1)));
    }

    #[test]
    fn brauer_rademacher_sides_agree() {
        for n in 1..=300 {
            for k in 1..=300 {
                let (l, r) = brauer_rademacher_sides(n, k).unwrap();
                assert_eq!(l, r, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn small_sieves() {
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        let spf = smallest_prime_factors(100);
        for n in 2..=100u64 {
            assert_eq!(spf[n as usize] as u64, f(n).factors()[0].0);
        }
    }
}
