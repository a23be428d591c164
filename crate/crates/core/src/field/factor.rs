//! Integer factorization of the multiplicative group order `q - 1`, used to
//! certify primitive elements.
//!
//! Trial division and Pollard-Brent rho handle everything at desk scale. For
//! very large `q` a short list of published factors is tried first; every hint
//! is checked by division and the remaining cofactor by Miller-Rabin, so hints
//! can speed things up but never make the result wrong.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Known prime factors of some `p^r - 1` that rho cannot find quickly.
const FACTOR_HINTS: &[&str] = &[
    // 2^331 - 1 = 16937389168607 * 865118802936559 * (72-digit prime)
    "16937389168607",
    "865118802936559",
];

const TRIAL_BOUND: u64 = 1 << 16;
const RHO_ITERATIONS: u64 = 1 << 18;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Distinct prime factors found so far, ascending.
    pub primes: Vec<BigUint>,
    /// Product of all unfactored composite parts, if any. Every prime factor
    /// of it exceeds `search_bound`.
    pub cofactor: Option<BigUint>,
    pub search_bound: BigUint,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }
}

const MR_BASES: &[u64] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin with the first twenty prime bases: deterministic below
/// 3.3e24 and a probable-prime test above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in MR_BASES {
        let bb = BigUint::from(b);
        if *n == bb {
            return true;
        }
        if (n % &bb).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &b in MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn rho(n: &BigUint, seed: u64, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let c = BigUint::from(seed);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 128;
    let mut spent = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            spent += m;
        }
        r *= 2;
        if spent > budget {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split(n: BigUint, primes: &mut Vec<BigUint>, leftovers: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        primes.push(n);
        return;
    }
    for seed in 1..4u64 {
        if let Some(d) = rho(&n, seed, RHO_ITERATIONS) {
            let other = &n / &d;
            split(d, primes, leftovers);
            split(other, primes, leftovers);
            return;
        }
    }
    leftovers.push(n);
}

/// Factors `n`, returning distinct primes and any composite part that
/// resisted the search.
pub fn factorize(n: &BigUint) -> Factorization {
    let mut primes = Vec::new();
    let mut rest = n.clone();
    if rest.is_zero() {
        return Factorization {
            primes,
            cofactor: None,
            search_bound: BigUint::from(TRIAL_BOUND),
        };
    }
    for hint in FACTOR_HINTS {
        let h: BigUint = hint.parse().expect("hint literal");
        if h > BigUint::one() && (&rest % &h).is_zero() && is_probable_prime(&h) {
            while (&rest % &h).is_zero() {
                rest /= &h;
            }
            primes.push(h);
        }
    }
    let mut d = 2u64;
    while d < TRIAL_BOUND && !rest.is_one() {
        let db = BigUint::from(d);
        if (&rest % &db).is_zero() {
            primes.push(db.clone());
            while (&rest % &db).is_zero() {
                rest /= &db;
            }
        }
        d += if d == 2 { 1 } else { 2 };
        if rest.to_u64().is_some_and(|v| v < d * d) {
            break;
        }
    }
    let mut leftovers = Vec::new();
    if !rest.is_one() {
        let mut found = Vec::new();
        split(rest, &mut found, &mut leftovers);
        primes.extend(found);
    }
    primes.sort();
    primes.dedup();
    let cofactor = if leftovers.is_empty() {
        None
    } else {
        Some(leftovers.iter().fold(BigUint::one(), |acc, x| acc * x))
    };
    Factorization {
        primes,
        cofactor,
        search_bound: BigUint::from(TRIAL_BOUND),
    }
}
