//! Exact arithmetic in GF(p) and GF(p^r).
//!
//! Extension-field elements are coefficient vectors in the basis
//! `1, a, ..., a^{r-1}` modulo a fixed monic irreducible polynomial. This keeps
//! very large degrees (r > 330) practical where log tables are not.

mod factor;
pub(crate) mod fp_poly;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

pub use factor::{factorize, is_probable_prime, Factorization};

const MAX_CHARACTERISTIC: u64 = 1 << 31;

struct FieldInner {
    p: u64,
    r: usize,
    /// Monic modulus, little-endian, length r + 1 (present iff r > 1).
    modulus: Option<Vec<u64>>,
    /// `x^r = sum c_j x^j` for the listed nonzero `(j, c_j)`.
    reduction: Vec<(usize, u64)>,
    primitive: OnceLock<PrimitiveElement>,
}

/// Description of GF(p^r). Cheap to clone; all elements hold one.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

/// A primitive element together with how strongly its order was verified.
#[derive(Clone, Debug)]
pub struct PrimitiveElement {
    pub element: FieldElement,
    /// True when the order was checked against a complete factorization of
    /// `q - 1`.
    pub certified: bool,
    /// Proven lower bound on the multiplicative order (equals `q - 1` when
    /// certified).
    pub order_lower_bound: BigUint,
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

type ModulusCache = Mutex<HashMap<(u64, usize), Vec<u64>>>;

fn default_moduli() -> &'static ModulusCache {
    static CACHE: OnceLock<ModulusCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Lexicographically smallest monic irreducible of degree `r` over GF(p),
/// where candidates are ordered as integers with the highest coefficient most
/// significant.
pub fn smallest_irreducible(p: u64, r: usize) -> Vec<u64> {
    if let Some(m) = default_moduli().lock().unwrap().get(&(p, r)) {
        return m.clone();
    }
    let mut lower = vec![0u64; r];
    loop {
        // advance base-p counter over the lower coefficients
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < r, "no irreducible polynomial found");
        }
        if r > 1 && lower[0] == 0 {
            continue;
        }
        let mut f = lower.clone();
        f.push(1);
        if fp_poly::is_irreducible(&f, p) {
            default_moduli()
                .lock()
                .unwrap()
                .insert((p, r), f.clone());
            return f;
        }
    }
}

impl FieldSpec {
    /// Builds GF(p^r). When `r > 1` and no modulus is supplied the
    /// lexicographically smallest monic irreducible is selected.
    pub fn new(p: u64, r: usize, modulus: Option<Vec<u64>>) -> Result<FieldSpec> {
        if !is_prime_u64(p) || p >= MAX_CHARACTERISTIC {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::ZeroDegree);
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != r + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients, got {}",
                        r + 1,
                        m.len()
                    )));
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::CoefficientOutOfRange { value: c, p });
                }
                if m[r] != 1 {
                    return Err(Error::InvalidModulus("modulus is not monic".into()));
                }
                if !fp_poly::is_irreducible(&m, p) {
                    return Err(Error::InvalidModulus("modulus is reducible".into()));
                }
                if r == 1 {
                    None
                } else {
                    Some(m)
                }
            }
            None if r > 1 => Some(smallest_irreducible(p, r)),
            None => None,
        };
        let reduction = match &modulus {
            Some(m) => m[..r]
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| (j, (p - c) % p))
                .collect(),
            None => Vec::new(),
        };
        Ok(FieldSpec(Arc::new(FieldInner {
            p,
            r,
            modulus,
            reduction,
            primitive: OnceLock::new(),
        })))
    }

    pub fn prime(p: u64) -> Result<FieldSpec> {
        FieldSpec::new(p, 1, None)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn r(&self) -> usize {
        self.0.r
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.0.modulus.as_deref()
    }

    /// Field size `q = p^r`.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.0.p).pow(self.0.r as u32)
    }

    /// Field size when it fits in a `u64`.
    pub fn size_u64(&self) -> Option<u64> {
        self.size().to_u64()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            spec: self.clone(),
            coeffs: vec![0; self.0.r],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// Residue of an integer in the prime subfield.
    pub fn from_u64(&self, v: u64) -> FieldElement {
        let mut coeffs = vec![0; self.0.r];
        coeffs[0] = v % self.0.p;
        FieldElement {
            spec: self.clone(),
            coeffs,
        }
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        let p = self.0.p as i64;
        self.from_u64(v.rem_euclid(p) as u64)
    }

    /// Element with the given little-endian coordinates. Shorter inputs are
    /// zero-padded.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.r {
            return Err(Error::Parse(format!(
                "element has {} coordinates but the field has degree {}",
                coeffs.len(),
                self.0.r
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(Error::CoefficientOutOfRange { value: c, p: self.0.p });
        }
        let mut v = coeffs.to_vec();
        v.resize(self.0.r, 0);
        Ok(FieldElement {
            spec: self.clone(),
            coeffs: v,
        })
    }

    /// The class of `x` modulo the field polynomial (the prime-field element
    /// 0 when `r = 1`, which is rarely what you want; see
    /// [`primitive_element`](Self::primitive_element)).
    pub fn generator(&self) -> FieldElement {
        if self.0.r == 1 {
            return self.zero();
        }
        let mut coeffs = vec![0; self.0.r];
        coeffs[1] = 1;
        FieldElement {
            spec: self.clone(),
            coeffs,
        }
    }

    /// Element whose base-p digits (least significant first) are its
    /// coordinates. This is the enumeration order used everywhere a field
    /// has to be walked deterministically.
    pub fn from_index(&self, mut index: u64) -> FieldElement {
        let p = self.0.p;
        let coeffs = (0..self.0.r)
            .map(|_| {
                let d = index % p;
                index /= p;
                d
            })
            .collect();
        FieldElement {
            spec: self.clone(),
            coeffs,
        }
    }

    /// All field elements in index order. Panics if `q` does not fit in a
    /// `u64`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.size_u64().expect("field too large to enumerate");
        (0..q).map(move |i| self.from_index(i))
    }

    /// Deterministic primitive element: the smallest index whose order is
    /// `q - 1`, verified through the factorization of `q - 1`. If that
    /// factorization cannot be completed, the first element whose order is
    /// provably at least `F * B` (F the factored part, B the search bound for
    /// the rest) is returned uncertified.
    pub fn primitive_element(&self) -> PrimitiveElement {
        self.0
            .primitive
            .get_or_init(|| self.find_primitive())
            .clone()
    }

    fn find_primitive(&self) -> PrimitiveElement {
        let q = self.size();
        let order = &q - 1u32;
        let one = self.one();
        if order.is_one() {
            return PrimitiveElement {
                element: one,
                certified: true,
                order_lower_bound: BigUint::one(),
            };
        }
        let fac = factorize(&order);
        let factored_part = match &fac.cofactor {
            Some(c) => &order / c,
            None => order.clone(),
        };
        let mut index: u64 = 2;
        loop {
            let g = self.from_index(index);
            index += 1;
            if g.is_zero() {
                continue;
            }
            let full_prime_parts = fac
                .primes
                .iter()
                .all(|l| g.pow_big(&(&order / l)) != one);
            if !full_prime_parts {
                continue;
            }
            match &fac.cofactor {
                None => {
                    return PrimitiveElement {
                        element: g,
                        certified: true,
                        order_lower_bound: order,
                    }
                }
                Some(_) => {
                    if g.pow_big(&factored_part) != one {
                        return PrimitiveElement {
                            element: g,
                            certified: false,
                            order_lower_bound: &factored_part * &fac.search_bound,
                        };
                    }
                }
            }
        }
    }

    fn same(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.r == other.0.r
                && self.0.modulus == other.0.modulus)
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let r = self.0.r;
        let p = self.0.p;
        if r == 1 {
            let c = v.first().copied().unwrap_or(0) % p;
            return vec![c];
        }
        if v.len() > r {
            for i in (r..v.len()).rev() {
                let c = v[i];
                if c == 0 {
                    continue;
                }
                v[i] = 0;
                for &(j, m) in &self.0.reduction {
                    let slot = &mut v[i - r + j];
                    *slot = fp_poly::add_mod(*slot, fp_poly::mul_mod(c, m, p), p);
                }
            }
        }
        v.resize(r, 0);
        v
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "GF({})", self.0.p),
            Some(m) => write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.r, m),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.r == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.r)
        }
    }
}

/// An element of a [`FieldSpec`].
///
/// The arithmetic operators panic when the operands come from different
/// fields and on division by zero; [`arith`] is the checked entry point.
#[derive(Clone)]
pub struct FieldElement {
    spec: FieldSpec,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Little-endian coordinates, always of length `r`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Inverse of [`FieldSpec::from_index`], when it fits in a `u64`.
    pub fn to_index(&self) -> Option<u64> {
        let p = self.spec.0.p;
        let mut acc: u64 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(p)?.checked_add(c)?;
        }
        Some(acc)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.spec.0.p;
        let coeffs = match &self.spec.0.modulus {
            None => vec![fp_poly::inv_mod(self.coeffs[0], p)],
            Some(m) => {
                let mut v = fp_poly::inv_poly_mod(&self.coeffs, m, p)
                    .expect("nonzero element of a field is invertible");
                v.resize(self.spec.0.r, 0);
                v
            }
        };
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow_big(&BigUint::from(e.unsigned_abs())))
    }

    pub fn pow_big(&self, e: &BigUint) -> FieldElement {
        let mut acc = self.spec.one();
        for i in (0..e.bits()).rev() {
            acc = &acc * &acc;
            if e.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    fn check(&self, other: &FieldElement) {
        assert!(
            self.spec.same(&other.spec),
            "field mismatch: {:?} vs {:?}",
            self.spec,
            other.spec
        );
    }

    fn mul_raw(&self, other: &FieldElement) -> FieldElement {
        self.check(other);
        let p = self.spec.0.p;
        let coeffs = if self.spec.0.r == 1 {
            vec![fp_poly::mul_mod(self.coeffs[0], other.coeffs[0], p)]
        } else {
            self.spec
                .reduce(fp_poly::mul(&self.coeffs, &other.coeffs, p))
        };
        FieldElement {
            spec: self.spec.clone(),
            coeffs,
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.spec.same(&other.spec)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.0.r == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}a^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                let f: fn(&FieldElement, &FieldElement) -> FieldElement = $body;
                f(self, rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    a.check(b);
    let p = a.spec.0.p;
    FieldElement {
        spec: a.spec.clone(),
        coeffs: a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| fp_poly::add_mod(x, y, p))
            .collect(),
    }
});

forward_binop!(Sub, sub, |a, b| {
    a.check(b);
    let p = a.spec.0.p;
    FieldElement {
        spec: a.spec.clone(),
        coeffs: a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| fp_poly::sub_mod(x, y, p))
            .collect(),
    }
});

forward_binop!(Mul, mul, |a, b| a.mul_raw(b));

forward_binop!(Div, div, |a, b| {
    a.check(b);
    a.mul_raw(&b.inv().expect("division by zero"))
});

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.spec.0.p;
        FieldElement {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow,
}

/// Second operand of [`arith`]: another element or an integer exponent.
#[derive(Debug, Clone)]
pub enum Operand {
    Element(FieldElement),
    Exponent(i64),
    None,
}

/// Checked field arithmetic: reports field mismatches and division by zero
/// instead of panicking.
pub fn arith(op: ArithOp, a: &FieldElement, b: &Operand) -> Result<FieldElement> {
    let other = |b: &Operand| -> Result<FieldElement> {
        match b {
            Operand::Element(e) if e.spec.same(&a.spec) => Ok(e.clone()),
            Operand::Element(_) => Err(Error::FieldMismatch),
            _ => Err(Error::InvalidArgument(format!("{op:?} needs an element operand"))),
        }
    };
    match op {
        ArithOp::Add => Ok(a + &other(b)?),
        ArithOp::Sub => Ok(a - &other(b)?),
        ArithOp::Mul => Ok(a * &other(b)?),
        ArithOp::Div => {
            let d = other(b)?;
            Ok(a * &d.inv()?)
        }
        ArithOp::Neg => Ok(-a),
        ArithOp::Inv => a.inv(),
        ArithOp::Pow => match b {
            Operand::Exponent(e) => a.pow(*e),
            _ => Err(Error::InvalidArgument("pow needs an integer exponent".into())),
        },
    }
}
