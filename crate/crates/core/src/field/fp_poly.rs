//! Dense polynomials over a prime field GF(p), stored little-endian as `u64`
//! residues. These are the building blocks for extension-field arithmetic and
//! for modulus selection; they are deliberately free functions over slices.

use num_bigint::BigUint;

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse in GF(p); `a` must be nonzero.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn degree(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            sub_mod(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
                p,
            )
        })
        .collect();
    trim(&mut out);
    out
}

/// Schoolbook product. Accumulates without reduction while the running sum
/// provably fits in a `u64`, which covers every small characteristic.
pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (da, db) = match (degree(a), degree(b)) {
        (Some(da), Some(db)) => (da, db),
        _ => return Vec::new(),
    };
    let a = &a[..=da];
    let b = &b[..=db];
    let mut acc = vec![0u64; da + db + 1];
    let sq = (p - 1) * (p - 1);
    let lazy_terms = u64::MAX.checked_div(sq).map_or(usize::MAX, |t| t as usize);
    if lazy_terms > a.len().min(b.len()) {
        let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        for (i, &s) in short.iter().enumerate() {
            if s == 0 {
                continue;
            }
            for (slot, &l) in acc[i..].iter_mut().zip(long) {
                *slot += s * l;
            }
        }
        for slot in acc.iter_mut() {
            *slot %= p;
        }
    } else {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                *slot = add_mod(*slot, mul_mod(x, y, p), p);
            }
        }
    }
    trim(&mut acc);
    acc
}

pub(crate) fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&x| mul_mod(x, c, p)).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`; `b` must be nonzero.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = inv_mod(b[db], p);
    let mut rem: Vec<u64> = a.to_vec();
    trim(&mut rem);
    let Some(da) = degree(&rem) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; da - db + 1];
    for i in (db..=da).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        let f = mul_mod(c, lead_inv, p);
        quot[i - db] = f;
        for j in 0..=db {
            rem[i - db + j] = sub_mod(rem[i - db + j], mul_mod(f, b[j], p), p);
        }
    }
    trim(&mut quot);
    trim(&mut rem);
    (quot, rem)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub(crate) fn make_monic(a: &[u64], p: u64) -> Vec<u64> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(a, inv_mod(a[d], p), p),
    }
}

/// Monic greatest common divisor.
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&x, p)
}

/// Inverse of `a` modulo `f` by the extended Euclidean algorithm, or `None`
/// when `gcd(a, f) != 1`.
pub(crate) fn inv_poly_mod(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = f.to_vec();
    let mut r1 = rem(a, f, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    trim(&mut r0);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let d = degree(&r0)?;
    if d != 0 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(rem(&scale(&s0, c, p), f, p))
}

/// `base^exp mod f`.
pub(crate) fn pow_poly_mod(base: &[u64], exp: &BigUint, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = rem(&[1], f, p);
    let base = rem(base, f, p);
    for i in (0..exp.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), f, p);
        if exp.bit(i) {
            acc = rem(&mul(&acc, &base, p), f, p);
        }
    }
    acc
}

/// Distinct-degree irreducibility test: `f` of degree `r` is irreducible iff
/// `gcd(x^{p^d} - x, f) = 1` for all `d <= r/2`. Reducible inputs usually
/// exit after a few rounds.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(r) = degree(f) else { return false };
    if r == 0 {
        return false;
    }
    if r == 1 {
        return true;
    }
    let x: Vec<u64> = vec![0, 1];
    let pe = BigUint::from(p);
    let mut h = rem(&x, f, p);
    for _ in 1..=r / 2 {
        h = pow_poly_mod(&h, &pe, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}
