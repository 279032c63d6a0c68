//! Named verification suites. Each suite pits a fast route against a
//! definitional one (or a closed form) over an exhaustive range and
//! collects every mismatch. Output is deterministic for given arguments.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::arith::{
    brauer_rademacher_sides, coprime_count_in_class, crt_solve, dedekind_psi, distinct_prime_count,
    divisors, euler_phi, factorize, mobius, ExactRational, FactoredNat, ModuliTuple,
};
use crate::asymptotics::{asymptotic_report, dirichlet_decomposition_check};
use crate::congruences::{count_roots, CountStrategy, IntPolynomial, PolySystem};
use crate::error::{Error, Result};
use crate::even::{coprime_shift_sum, t_a, SEvenFunction, TStrategy};
use crate::ramanujan::{ramanujan_row, ramanujan_sum};
use crate::sums::{
    e_g_direct, e_g_fast, e_shift_with, r_func, r_g_direct, r_g_fast, r_prime_power, r_shift,
    r_shift_with, x_value, PrimePowerProfile, Route, ShiftVector, DIRECT_LIMIT,
};

/// Suite names accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "orthogonality",
    "cohen",
    "theorems",
    "corollaries",
    "prime-power",
    "t-a",
    "multiplicativity",
    "dirichlet",
    "average-order",
    "lemmas",
];

/// The polynomial corpus used by the oracle-equivalence suite.
pub const POLY_CORPUS: &[&str] = &["x", "x-1", "x-2", "x+1", "x^2-1", "x^2+x+1", "2x-1"];

/// Failures beyond this many are counted but not stored.
const MAX_RECORDED: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checks: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            checks: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED {
            self.failures.push(message);
        }
    }

    /// Records a computation error as a failure instead of aborting the suite.
    fn check_eq<T: PartialEq + fmt::Debug>(
        &mut self,
        label: impl FnOnce() -> String,
        got: Result<T>,
        want: Result<T>,
    ) {
        self.checks += 1;
        match (got, want) {
            (Ok(g), Ok(w)) if g == w => {}
            (g, w) => self.fail(format!("{}: got {g:?}, expected {w:?}", label())),
        }
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(f);
            }
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} checks, {} failures)",
            self.name,
            if self.passed() { "ok" } else { "FAILED" },
            self.checks,
            self.failure_count
        )?;
        for line in &self.failures {
            write!(f, "\n  {line}")?;
        }
        if self.failure_count as usize > self.failures.len() {
            write!(f, "\n  ... {} more", self.failure_count as usize - self.failures.len())?;
        }
        Ok(())
    }
}

/// Runs a named suite (or `all`) with its range scaled by `max`, or the
/// default range when `max` is `None`.
pub fn run_suite(name: &str, max: Option<u64>) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s, max)).collect();
    }
    Ok(vec![run_one(name, max)?])
}

fn run_one(name: &str, max: Option<u64>) -> Result<SuiteReport> {
    let report = match name {
        "orthogonality" => orthogonality(max.unwrap_or(60)),
        "cohen" => cohen(max.unwrap_or(200), 50),
        "theorems" => theorems(max.unwrap_or(20), 3),
        "corollaries" => corollaries(max.unwrap_or(500), 30),
        "prime-power" => prime_power(&[2, 3, 5], 4, max.unwrap_or(3) as u32),
        "t-a" => t_a_suite(max.unwrap_or(12), 3, 6, 30),
        "multiplicativity" => multiplicativity(max.unwrap_or(500) as usize, 30, 0x5eed),
        "dirichlet" => dirichlet(max.unwrap_or(2000), &[2, 3, 4]),
        "average-order" => {
            let x = max.unwrap_or(5000);
            let mut rep = average_order(2, x, 100_000, 0.02);
            rep.absorb(average_order(3, x.min(2000), 100_000, 0.02));
            rep.name = "average-order".into();
            rep
        }
        "lemmas" => lemmas(max.unwrap_or(500)),
        other => return Err(Error::domain(format!("unknown suite '{other}'"))),
    };
    Ok(report)
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn fact(n: u64) -> FactoredNat {
    factorize(n).expect("positive")
}

fn signed_omega(n: &FactoredNat) -> i64 {
    if distinct_prime_count(n) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn tuple(m: &[u64]) -> ModuliTuple {
    ModuliTuple::new(m).expect("positive moduli")
}

fn corpus() -> Vec<IntPolynomial> {
    POLY_CORPUS
        .iter()
        .map(|s| IntPolynomial::parse(s).expect("corpus parses"))
        .collect()
}

/// Every tuple in {1, …, max}^r.
fn tuples(max: u64, r: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=max).map(move |m| {
                    let mut t = t.clone();
                    t.push(m);
                    t
                })
            })
            .collect();
    }
    out
}

/// (1/n) Σ_{k ≤ n} c_n(k) = [n = 1] and
/// (1/L) Σ_{k ≤ L} c_ℓ(k) c_n(k) = φ(n)[ℓ = n] with L = lcm(ℓ, n).
pub fn orthogonality(n_max: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("orthogonality");
    let rows: Vec<Vec<i64>> = (1..=n_max).map(|n| ramanujan_row(n).expect("n ≥ 1")).collect();
    for n in 1..=n_max {
        let row = &rows[n as usize - 1];
        let total: i64 = row.iter().sum();
        let want = if n == 1 { 1 } else { 0 };
        rep.check(total == want, || {
            format!("Σ c_{n}(k) = {total}")
        });
    }
    for l in 1..=n_max {
        for n in 1..=n_max {
            let big_l = l.lcm(&n);
            let (rl, rn) = (&rows[l as usize - 1], &rows[n as usize - 1]);
            let total: i64 = (0..big_l)
                .map(|k| rl[(k % l) as usize] * rn[(k % n) as usize])
                .sum();
            let want = if l == n { euler_phi(&fact(n)) as i64 } else { 0 };
            rep.check(total == want * big_l as i64, || {
                format!("ℓ={l} n={n}: sum {total}, expected {}", want * big_l as i64)
            });
        }
    }
    rep
}

/// Σ_{k ≤ n, gcd(k,n)=1} c_n(k − a) = μ(n) c_n(a), literally and through
/// the one-variable R_(a).
pub fn cohen(n_max: u64, a_max: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("cohen");
    for n in 1..=n_max {
        let row = ramanujan_row(n).expect("n ≥ 1");
        let mu = mobius(&fact(n));
        let t = tuple(&[n]);
        for a in -a_max..=a_max {
            let lhs: i64 = (1..=n)
                .filter(|k| k.gcd(&n) == 1)
                .map(|k| row[(k as i64 - a).rem_euclid(n as i64) as usize])
                .sum();
            let rhs = mu * row[a.rem_euclid(n as i64) as usize];
            rep.check(lhs == rhs, || format!("n={n} a={a}: {lhs} ≠ {rhs}"));
            let shifted = ShiftVector::new(vec![a]).and_then(|s| r_shift(&s, &t));
            rep.check_eq(|| format!("r_shift n={n} a={a}"), shifted, Ok(int(rhs)));
        }
    }
    rep
}

/// e_g_fast = e_g_direct and r_g_fast = r_g_direct for every system drawn
/// from the corpus and every moduli tuple in {1..m_max}^r, r ≤ r_max.
pub fn theorems(m_max: u64, r_max: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("theorems");
    let polys = corpus();
    for r in 1..=r_max {
        let systems: Vec<PolySystem> = tuples(polys.len() as u64, r)
            .into_iter()
            .map(|idx| {
                PolySystem::new(idx.iter().map(|&i| polys[i as usize - 1].clone()).collect())
                    .expect("nonempty")
            })
            .collect();
        for m in tuples(m_max, r) {
            let t = tuple(&m);
            for g in &systems {
                let label = || format!("G=({g}) m={m:?}");
                match (e_g_fast(g, &t), e_g_direct(g, &t)) {
                    (Ok(a), Ok(b)) if a == b => rep.check(true, String::new),
                    (a, b) => rep.check(false, || format!("E {}: fast {a:?} direct {b:?}", label())),
                }
                match (r_g_fast(g, &t), r_g_direct(g, &t)) {
                    (Ok(a), Ok(b)) if a == b => rep.check(true, String::new),
                    (a, b) => rep.check(false, || format!("R {}: fast {a:?} direct {b:?}", label())),
                }
            }
        }
    }
    rep
}

/// Closed forms for E_(a) and R_(a) with two moduli, the quadratic system
/// x² − 1 in one variable, and pairwise-coprime shifts.
pub fn corollaries(n_max: u64, m_max: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("corollaries");
    let quad = PolySystem::parse("x^2-1").expect("parses");

    // x^2 − 1 with n = 2^j m, m odd
    for n in 1..=n_max {
        let j = n.trailing_zeros();
        let odd = fact(n >> j);
        let t = tuple(&[n]);
        let sf = odd.is_squarefree();
        let e_want = match j {
            0 | 2 if sf => 1,
            3 if sf => 2,
            _ => 0,
        };
        let d = match j {
            0 | 1 => 1,
            2 => 4,
            3 => 16,
            _ => 0,
        };
        let r_want = if sf { d * dedekind_psi(&odd).expect("small") as i64 } else { 0 };
        rep.check_eq(|| format!("E_(x²−1)({n}) fast"), e_g_fast(&quad, &t), Ok(int(e_want)));
        rep.check_eq(|| format!("E_(x²−1)({n}) direct"), e_g_direct(&quad, &t), Ok(int(e_want)));
        rep.check_eq(|| format!("R_(x²−1)({n}) fast"), r_g_fast(&quad, &t), Ok(int(r_want)));
        rep.check_eq(|| format!("R_(x²−1)({n}) direct"), r_g_direct(&quad, &t), Ok(int(r_want)));
    }

    for m1 in 1..=m_max {
        for m2 in 1..=m_max {
            let t = tuple(&[m1, m2]);
            let (f1, f2) = (fact(m1), fact(m2));
            for a1 in -4i64..=4 {
                for a2 in [a1 - 1, a1 + 1] {
                    let a = ShiftVector::new(vec![a1, a2]).expect("nonempty");
                    // E_(a) with |a1 − a2| = 1
                    let want = if m1 == m2 && f1.is_squarefree() { signed_omega(&f1) } else { 0 };
                    rep.check_eq(
                        || format!("E_({a1},{a2})({m1},{m2})"),
                        e_shift_with(&a, &t, Route::General),
                        Ok(int(want)),
                    );
                    // R_(a) additionally needs gcd(a_i, m_i) = 1
                    if a1.unsigned_abs().gcd(&m1) != 1 || a2.unsigned_abs().gcd(&m2) != 1 {
                        continue;
                    }
                    let g = fact(m1.gcd(&m2));
                    let want = if f1.is_squarefree() && f2.is_squarefree() {
                        signed_omega(&g) * dedekind_psi(&g).expect("small") as i64
                    } else {
                        0
                    };
                    rep.check_eq(
                        || format!("R_({a1},{a2})({m1},{m2})"),
                        r_shift_with(&a, &t, Route::General),
                        Ok(int(want)),
                    );
                }
            }
        }
    }

    // pairwise-coprime moduli: R_(a) = μ(m) Π c_{m_i}(a_i)
    let shift_sets: [&[i64]; 4] = [&[0, 1, 2], &[1, 1, 1], &[-3, 5, 7], &[6, 0, -10]];
    for r in 2..=3 {
        for m in tuples(m_max, r) {
            let t = tuple(&m);
            if !t.is_pairwise_coprime() {
                continue;
            }
            let mu = mobius(t.lcm());
            for shifts in shift_sets {
                let a = &shifts[..r];
                let want = a.iter().zip(&m).fold(int(mu), |acc, (&ai, &mi)| {
                    acc * ramanujan_sum(mi, ai).expect("small")
                });
                let sv = ShiftVector::new(a.to_vec()).expect("nonempty");
                rep.check_eq(
                    || format!("R_{a:?}{m:?} coprime"),
                    r_shift_with(&sv, &t, Route::General),
                    Ok(want),
                );
            }
        }
    }
    rep
}

/// R(p^{e_1}, …, p^{e_r}) from the closed form against the literal sum and
/// the general route, with the e = 1 value and the zero classification.
pub fn prime_power(primes: &[u64], r_max: usize, e_max: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("prime-power");
    let ones = |r: usize| PolySystem::linear_shifts(&vec![1; r]).expect("nonempty");
    for &p in primes {
        for r in 1..=r_max {
            let g = ones(r);
            for exps in tuples(u64::from(e_max), r) {
                let exps: Vec<u32> = exps.iter().map(|&e| e as u32).collect();
                let moduli: Vec<u64> = exps.iter().map(|&e| p.pow(e)).collect();
                let t = tuple(&moduli);
                let profile = PrimePowerProfile::new(p, &exps).expect("valid profile");
                let closed = r_prime_power(&profile);
                let label = || format!("p={p} e={exps:?}");
                rep.check_eq(|| format!("{} direct", label()), closed.clone(), r_g_direct(&g, &t));
                rep.check_eq(|| format!("{} general", label()), closed.clone(), r_func(&t));

                let e = profile.top_exponent();
                let s = profile.multiplicity();
                if e == 1 {
                    rep.check_eq(|| format!("{} e=1", label()), closed.clone(), Ok(x_value(r, p)));
                }
                let zero_predicted = e > 1 && (s == 1 || (s % 2 == 1 && p == 2));
                match closed {
                    Ok(v) => rep.check(v.is_zero() == zero_predicted && v >= BigInt::zero(), || {
                        format!("{}: value {v}, zero predicted {zero_predicted}", label())
                    }),
                    Err(e) => rep.check(false, || format!("{}: {e}", label())),
                }
            }
        }
    }
    rep
}

/// Moduli tuples (r ≤ r_max) whose lcm is at most m_max.
fn tuples_with_lcm(m_max: u64, r_max: usize) -> Vec<Vec<u64>> {
    (1..=r_max)
        .flat_map(|r| tuples(m_max, r))
        .filter(|t| t.iter().fold(1u64, |acc, &m| acc.lcm(&m)) <= m_max)
        .collect()
}

/// The three T_a strategies agree for lcm ≤ m_max, r ≤ r_max, |a| ≤ a_max;
/// T_a factors over coprime tuples with moduli ≤ mult_max.
pub fn t_a_suite(m_max: u64, r_max: usize, a_max: i64, mult_max: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("t-a");
    for m in tuples_with_lcm(m_max, r_max) {
        let t = tuple(&m);
        for a in -a_max..=a_max {
            let closed = t_a(&t, a, TStrategy::Closed);
            rep.check_eq(|| format!("T_{a}{m:?} spectral"), t_a(&t, a, TStrategy::Spectral), closed.clone());
            rep.check_eq(|| format!("T_{a}{m:?} direct"), t_a(&t, a, TStrategy::Direct), closed);
        }
    }
    // coprime pairs m·n: the m side runs over all tuples ≤ mult_max for
    // r ≤ 2 (≤ 12 for r = 3), the n side over a smaller box
    for (r, m_box, n_box) in [(1usize, mult_max, mult_max), (2, mult_max, 6), (3, mult_max.min(12), 3)] {
        for m in tuples(m_box, r) {
            let pm: u64 = m.iter().product();
            for n in tuples(n_box, r) {
                let pn: u64 = n.iter().product();
                if pm.gcd(&pn) != 1 || (pm == 1 && pn == 1) {
                    continue;
                }
                let mn: Vec<u64> = m.iter().zip(&n).map(|(a, b)| a * b).collect();
                for a in [0i64, 1, 6] {
                    let whole = t_a(&tuple(&mn), a, TStrategy::Closed);
                    let parts = t_a(&tuple(&m), a, TStrategy::Closed)
                        .and_then(|x| Ok(x * t_a(&tuple(&n), a, TStrategy::Closed)?));
                    rep.check_eq(|| format!("T_{a} {m:?}·{n:?}"), whole, parts);
                }
            }
        }
    }
    rep
}

/// Draws a pair of r-tuples with entries ≤ bound and gcd(Π m, Π n) = 1.
fn coprime_pair(rng: &mut StdRng, r: usize, bound: u64) -> (Vec<u64>, Vec<u64>) {
    loop {
        let m: Vec<u64> = (0..r).map(|_| rng.gen_range(1..=bound)).collect();
        let n: Vec<u64> = (0..r).map(|_| rng.gen_range(1..=bound)).collect();
        let pm: u64 = m.iter().product();
        let pn: u64 = n.iter().product();
        if pm.gcd(&pn) == 1 && pm > 1 && pn > 1 {
            return (m, n);
        }
    }
}

/// E_G, R_G, N_G, η_G and T_a factor over randomly drawn coprime tuple
/// pairs, `cases` draws per function. The product tuple is evaluated by the
/// literal route whenever it is in scale.
pub fn multiplicativity(cases: usize, bound: u64, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("multiplicativity");
    let polys = corpus();
    let mut rng = StdRng::seed_from_u64(seed);
    let draw = |rng: &mut StdRng| {
        let r = rng.gen_range(1..=3usize);
        let (m, n) = coprime_pair(rng, r, bound);
        let g = PolySystem::new((0..r).map(|_| polys[rng.gen_range(0..polys.len())].clone()).collect())
            .expect("nonempty");
        let mn: Vec<u64> = m.iter().zip(&n).map(|(a, b)| a * b).collect();
        (g, tuple(&m), tuple(&n), tuple(&mn))
    };

    type Eval = fn(&PolySystem, &ModuliTuple, bool) -> Result<BigInt>;
    let cases_by_fn: [(&str, Eval); 4] = [
        ("E_G", |g, t, literal| if literal { e_g_direct(g, t) } else { e_g_fast(g, t) }),
        ("R_G", |g, t, literal| if literal { r_g_direct(g, t) } else { r_g_fast(g, t) }),
        ("N_G", |g, t, literal| {
            let s = if literal { CountStrategy::Direct } else { CountStrategy::Multiplicative };
            count_roots(g, t, false, s).map(|c| BigInt::from(c.count))
        }),
        ("η_G", |g, t, literal| {
            let s = if literal { CountStrategy::Direct } else { CountStrategy::Multiplicative };
            count_roots(g, t, true, s).map(|c| BigInt::from(c.count))
        }),
    ];
    for (name, eval) in cases_by_fn {
        for _ in 0..cases {
            let (g, m, n, mn) = draw(&mut rng);
            let literal = mn.lcm_value() <= DIRECT_LIMIT;
            let whole = eval(&g, &mn, literal);
            let parts = eval(&g, &m, true).and_then(|x| Ok(x * eval(&g, &n, true)?));
            rep.check_eq(|| format!("{name} G=({g}) {:?}·{:?}", m.moduli(), n.moduli()), whole, parts);
        }
    }
    for _ in 0..cases {
        let (_, m, n, mn) = draw(&mut rng);
        let a = rng.gen_range(-20i64..=20);
        let strategy = if mn.lcm_value() <= 60 { TStrategy::Spectral } else { TStrategy::Closed };
        let whole = t_a(&mn, a, strategy);
        let parts = t_a(&m, a, TStrategy::Spectral)
            .and_then(|x| Ok(x * t_a(&n, a, TStrategy::Spectral)?));
        rep.check_eq(|| format!("T_{a} {:?}·{:?}", m.moduli(), n.moduli()), whole, parts);
    }
    rep
}

/// g_r = F_r * id_{r−1} exactly up to m_bound.
pub fn dirichlet(m_bound: u64, rs: &[usize]) -> SuiteReport {
    let mut rep = SuiteReport::new("dirichlet");
    for &r in rs {
        match dirichlet_decomposition_check(r, m_bound) {
            Ok(ok) => rep.check(ok, || format!("r={r}: mismatch below {m_bound}")),
            Err(e) => rep.check(false, || format!("r={r}: {e}")),
        }
    }
    rep
}

/// Σ_{m≤x} g_r(m) / ((α_r/r) x^r) lies within `tol` of 1.
pub fn average_order(r: usize, x: u64, prime_bound: u64, tol: f64) -> SuiteReport {
    let mut rep = SuiteReport::new(&format!("average-order r={r}"));
    match asymptotic_report(r, x, prime_bound) {
        Ok(report) => rep.check((report.ratio - 1.0).abs() <= tol, || {
            format!("r={r} x={x}: ratio {:.6} outside 1 ± {tol}", report.ratio)
        }),
        Err(e) => rep.check(false, || format!("r={r} x={x}: {e}")),
    }
    rep
}

/// CRT against a residue scan, the coprime class count, Brauer–Rademacher
/// and the coprime shift sum for s-even functions.
pub fn lemmas(n_max: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("lemmas");

    // two congruences, all residues, moduli ≤ 30
    let d_max = 30u64.min(n_max);
    for d1 in 1..=d_max {
        for d2 in 1..=d_max {
            let l = d1.lcm(&d2);
            for a1 in 0..d1 {
                for a2 in 0..d2 {
                    let scan: Vec<u64> = (0..l).filter(|x| x % d1 == a1 && x % d2 == a2).collect();
                    let want = match scan.as_slice() {
                        [] => None,
                        [x] => Some((*x, l)),
                        _ => {
                            rep.fail(format!("scan found {} solutions", scan.len()));
                            continue;
                        }
                    };
                    rep.check_eq(
                        || format!("crt ({a1} mod {d1}, {a2} mod {d2})"),
                        crt_solve(&[(a1 as i64, d1), (a2 as i64, d2)]),
                        Ok(want),
                    );
                }
            }
        }
    }

    for n in 1..=n_max {
        let fnn = fact(n);
        let phi_n = euler_phi(&fnn);
        for d in divisors(&fnn) {
            let phi_d = euler_phi(&fact(d));
            for x in (1..=d).filter(|x| x.gcd(&d) == 1) {
                rep.check_eq(
                    || format!("class count ({n},{d},{x})"),
                    coprime_count_in_class(n, d, x),
                    Ok(phi_n / phi_d),
                );
            }
        }
    }

    let br_max = 300u64.min(n_max);
    for n in 1..=br_max {
        for k in 1..=br_max {
            match brauer_rademacher_sides(n, k) {
                Ok((l, r)) => rep.check(l == r, || format!("Brauer–Rademacher ({n},{k}): {l} ≠ {r}")),
                Err(e) => rep.check(false, || format!("Brauer–Rademacher ({n},{k}): {e}")),
            }
        }
    }

    // coprime shift sums: c_n inside every period s it divides, plus two
    // non-Ramanujan families
    let s_max = 60u64.min(n_max);
    for s in 1..=s_max {
        let mut family: Vec<SEvenFunction> = divisors(&fact(s))
            .into_iter()
            .map(|n| SEvenFunction::ramanujan(n, s).expect("n | s"))
            .collect();
        family.push(SEvenFunction::from_fn(s, |d| ExactRational::from_integer(d.into())).expect("s ≥ 1"));
        family.push(
            SEvenFunction::from_fn(s, |d| ExactRational::new(BigInt::one(), BigInt::from(d * d + 1)))
                .expect("s ≥ 1"),
        );
        for f in &family {
            for a in -(s as i64)..=s as i64 {
                rep.check_eq(|| format!("shift sum s={s} a={a}"), coprime_shift_sum(f, a).map(|_| ()), Ok(()));
            }
        }
    }
    rep
}
