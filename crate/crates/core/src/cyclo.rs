//! Exact arithmetic in cyclotomic fields.
//!
//! An element of ℚ(ζ_N) is stored as a sparse rational combination of the
//! Zumbroich basis of ℚ(ζ_N). The basis is defined through the intrinsic
//! prime-power decomposition of a root of unity: ζ_N^e is a basis element iff
//! for every odd prime power p^k ‖ N the p-part of ζ_N^e, written as
//! ζ_{p^k}^{i + p^{k-1} j} with 0 ≤ i < p^{k-1}, has j ≠ 0, and for 2^k ‖ N the
//! 2-part ζ_{2^k}^f has f < 2^{k-1}. Values are always kept at their minimal
//! conductor, so two values are equal iff their representations are
//! identical.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest conductor accepted; exponent products are computed in `u64`.
pub const MAX_CONDUCTOR: u64 = 1 << 24;

#[derive(Debug)]
struct PrimePart {
    p: u64,
    k: u32,
    pk: u64,
    /// `(N / p^k)^{-1} mod p^k`, used to read off the p-part of an exponent.
    inv_cofactor: u64,
}

impl PrimePart {
    fn component(&self, e: u64) -> u64 {
        (e % self.pk) * self.inv_cofactor % self.pk
    }

    fn in_basis(&self, e: u64) -> bool {
        let f = self.component(e);
        if self.p == 2 {
            f < self.pk / 2
        } else {
            !(f / (self.pk / self.p)).is_multiple_of(self.p)
        }
    }
}

#[derive(Debug)]
struct Conductor {
    n: u64,
    parts: Vec<PrimePart>,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let g = (a as i64).extended_gcd(&(m as i64));
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m as i64) as u64
}

thread_local! {
    static CONDUCTORS: RefCell<HashMap<u64, Rc<Conductor>>> = RefCell::new(HashMap::new());
}

fn conductor(n: u64) -> Rc<Conductor> {
    CONDUCTORS.with(|cache| {
        if let Some(c) = cache.borrow().get(&n) {
            return c.clone();
        }
        let parts = factorize(n)
            .into_iter()
            .map(|(p, k)| {
                let pk = p.pow(k);
                PrimePart {
                    p,
                    k,
                    pk,
                    inv_cofactor: mod_inverse((n / pk) % pk, pk),
                }
            })
            .collect();
        let c = Rc::new(Conductor { n, parts });
        cache.borrow_mut().insert(n, c.clone());
        c
    })
}

/// Rewrites `sign * ζ_N^e` onto the basis, appending `(exponent, sign)` pairs.
fn expand_onto_basis(cond: &Conductor, e: u64, out: &mut Vec<(u64, bool)>) {
    let n = cond.n;
    out.clear();
    out.push((e % n, true));
    let mut next = Vec::new();
    for part in &cond.parts {
        next.clear();
        for &(e, positive) in out.iter() {
            if part.in_basis(e) {
                next.push((e, positive));
            } else if part.p == 2 {
                next.push(((e + n / 2) % n, !positive));
            } else {
                let step = n / part.p;
                for j in 1..part.p {
                    next.push(((e + j * step) % n, !positive));
                }
            }
        }
        std::mem::swap(out, &mut next);
    }
}

/// An exact element of a cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    terms: Vec<(u64, BigRational)>,
}

/// Accumulates raw terms `c·ζ_N^e` at a fixed conductor and canonicalizes once.
#[derive(Debug, Clone)]
pub struct CycloAccumulator {
    conductor: u64,
    raw: HashMap<u64, BigRational>,
}

impl CycloAccumulator {
    pub fn new(conductor: u64) -> Self {
        let conductor = conductor.max(1);
        CycloAccumulator {
            conductor,
            raw: HashMap::new(),
        }
    }

    fn push_raw(&mut self, e: u64, c: BigRational) {
        let e = e % self.conductor;
        match self.raw.get_mut(&e) {
            Some(v) => *v += c,
            None => {
                self.raw.insert(e, c);
            }
        }
    }

    /// Adds `a`; the conductor of `a` must divide the accumulator's conductor.
    pub fn add(&mut self, a: &Cyclotomic) {
        let scale = self.scale_of(a);
        for (e, c) in &a.terms {
            self.push_raw(e * scale, c.clone());
        }
    }

    /// Adds the product `a * b`.
    pub fn add_product(&mut self, a: &Cyclotomic, b: &Cyclotomic) {
        let sa = self.scale_of(a);
        let sb = self.scale_of(b);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                self.push_raw(ea * sa + eb * sb, ca * cb);
            }
        }
    }

    /// Adds `coeff * a * b` for an integer multiplicity.
    pub fn add_scaled_product(&mut self, coeff: i64, a: &Cyclotomic, b: &Cyclotomic) {
        let k = BigRational::from_integer(BigInt::from(coeff));
        let sa = self.scale_of(a);
        let sb = self.scale_of(b);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                self.push_raw(ea * sa + eb * sb, &k * ca * cb);
            }
        }
    }

    fn scale_of(&self, a: &Cyclotomic) -> u64 {
        assert!(
            self.conductor.is_multiple_of(a.conductor),
            "conductor {} does not divide accumulator conductor {}",
            a.conductor,
            self.conductor
        );
        self.conductor / a.conductor
    }

    pub fn finish(self) -> Cyclotomic {
        Cyclotomic::from_raw_terms(self.conductor, self.raw)
    }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: 1,
            terms: vec![(0, q)],
        }
    }

    /// ζ_order^exponent.
    pub fn root_of_unity(order: u64, exponent: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("root of unity of order 0".into()));
        }
        if order > MAX_CONDUCTOR {
            return Err(Error::Limit(format!("conductor {order} exceeds {MAX_CONDUCTOR}")));
        }
        let e = exponent.rem_euclid(order as i64) as u64;
        Ok(Self::from_raw_terms(order, [(e, BigRational::one())]))
    }

    /// ζ_8 + ζ_8⁻¹.
    pub fn sqrt2() -> Self {
        let z = Self::root_of_unity(8, 1).expect("valid order");
        &z + &z.conjugate()
    }

    /// Builds a value from arbitrary (possibly non-basis, repeated) exponents.
    pub fn from_raw_terms<I>(n: u64, raw: I) -> Self
    where
        I: IntoIterator<Item = (u64, BigRational)>,
    {
        let mut n = n.max(1);
        let mut raw: Vec<(u64, BigRational)> = raw.into_iter().map(|(e, c)| (e % n, c)).collect();
        if n % 4 == 2 {
            // ζ_{2m}^e = (-1)^e ζ_m^{e(m+1)/2} for odd m.
            let m = n / 2;
            let half = m.div_ceil(2);
            raw = raw
                .into_iter()
                .map(|(e, c)| {
                    let c = if e % 2 == 1 { -c } else { c };
                    ((e % m) * half % m, c)
                })
                .collect();
            n = m;
        }
        let cond = conductor(n);
        let mut acc: BTreeMap<u64, BigRational> = BTreeMap::new();
        let mut buf = Vec::new();
        for (e, c) in raw {
            if c.is_zero() {
                continue;
            }
            expand_onto_basis(&cond, e, &mut buf);
            for &(b, positive) in &buf {
                let entry = acc.entry(b).or_insert_with(BigRational::zero);
                if positive {
                    *entry += &c;
                } else {
                    *entry -= &c;
                }
            }
        }
        let terms: Vec<(u64, BigRational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::minimize(n, terms)
    }

    /// Descends to the smallest conductor whose field contains the value.
    fn minimize(mut n: u64, mut terms: Vec<(u64, BigRational)>) -> Self {
        'outer: loop {
            if terms.is_empty() {
                return Self::zero();
            }
            if n == 1 {
                return Cyclotomic { conductor: 1, terms };
            }
            let cond = conductor(n);
            for part in &cond.parts {
                let p = part.p;
                if p == 2 {
                    if terms.iter().all(|(e, _)| e % 2 == 0) {
                        let div = if part.k >= 3 { 2 } else { 4 };
                        debug_assert!(terms.iter().all(|(e, _)| e % div == 0));
                        n /= div;
                        terms = terms.into_iter().map(|(e, c)| (e / div, c)).collect();
                        continue 'outer;
                    }
                } else if part.k >= 2 {
                    if terms.iter().all(|(e, _)| e % p == 0) {
                        n /= p;
                        terms = terms.into_iter().map(|(e, c)| (e / p, c)).collect();
                        continue 'outer;
                    }
                } else if let Some(reduced) = Self::collapse_simple_prime(n, p, &terms) {
                    n /= p;
                    terms = reduced;
                    continue 'outer;
                }
            }
            return Cyclotomic { conductor: n, terms };
        }
    }

    /// For p ‖ n: if the terms come in full orbits {e + j n/p : 1 ≤ j < p}
    /// with equal coefficients, each orbit equals -ζ_n^{e0} with p | e0.
    fn collapse_simple_prime(n: u64, p: u64, terms: &[(u64, BigRational)]) -> Option<Vec<(u64, BigRational)>> {
        let step = n / p;
        let mut groups: BTreeMap<u64, Vec<&BigRational>> = BTreeMap::new();
        for (e, c) in terms {
            groups.entry(e % step).or_default().push(c);
        }
        let mut out = Vec::with_capacity(groups.len());
        for (key, coeffs) in &groups {
            if coeffs.len() as u64 != p - 1 || coeffs.iter().any(|c| *c != coeffs[0]) {
                return None;
            }
            let e0 = (0..p).map(|j| key + j * step).find(|e| e % p == 0)?;
            out.push((e0 / p, -coeffs[0].clone()));
        }
        out.sort_by_key(|(e, _)| *e);
        Some(out)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Canonical terms `(exponent, coefficient)` sorted by exponent.
    pub fn terms(&self) -> &[(u64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.conductor, self.terms.as_slice()) {
            (_, []) => Some(BigRational::zero()),
            (1, [(0, c)]) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    fn raw_mul(&self, other: &Self) -> Self {
        let l = self.conductor.lcm(&other.conductor);
        let (sa, sb) = (l / self.conductor, l / other.conductor);
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                raw.push(((ea * sa + eb * sb) % l, ca * cb));
            }
        }
        Self::from_raw_terms(l, raw)
    }

    fn raw_add(&self, other: &Self, negate_other: bool) -> Self {
        let l = self.conductor.lcm(&other.conductor);
        let (sa, sb) = (l / self.conductor, l / other.conductor);
        let raw = self
            .terms
            .iter()
            .map(|(e, c)| (e * sa, c.clone()))
            .chain(
                other
                    .terms
                    .iter()
                    .map(|(e, c)| (e * sb, if negate_other { -c.clone() } else { c.clone() })),
            );
        Self::from_raw_terms(l, raw)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    /// Applies the Galois automorphism ζ ↦ ζ^k (k coprime to the conductor).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor;
        let k = k.rem_euclid(n as i64) as u64;
        debug_assert!(n == 1 || k.gcd(&n) == 1);
        Self::from_raw_terms(n, self.terms.iter().map(|(e, c)| (e * k % n, c.clone())))
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹.
    pub fn conjugate(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois(-1)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        if let [(e, c)] = self.terms.as_slice() {
            let n = self.conductor;
            return Ok(Self::from_raw_terms(n, [((n - e) % n, c.recip())]));
        }
        // a⁻¹ = (∏_{σ ≠ 1} σ(a)) / N(a)
        let n = self.conductor;
        let mut cofactor = Self::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                cofactor = &cofactor * &self.galois(k as i64);
            }
        }
        let norm = (self * &cofactor)
            .as_rational()
            .ok_or_else(|| Error::Domain("field norm is not rational".into()))?;
        Ok(cofactor.scale(&norm.recip()))
    }

    /// Floating-point value `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), (e, c)| {
            let angle = 2.0 * std::f64::consts::PI * (*e as f64) / n;
            let c = c.to_f64().unwrap_or(f64::NAN);
            (re + c * angle.cos(), im + c * angle.sin())
        })
    }

    /// Recognizes an exact root of unity.
    pub fn as_root_of_unity(&self) -> Option<Phase> {
        let (re, im) = self.to_complex();
        if ((re * re + im * im) - 1.0).abs() > 1e-6 {
            return None;
        }
        let order = self.conductor.lcm(&2);
        let turns = im.atan2(re) / (2.0 * std::f64::consts::PI);
        let e = (turns * order as f64).round() as i64;
        let phase = Phase::new(e, order);
        if phase.to_cyclotomic() == *self {
            Some(phase)
        } else {
            None
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "z{}^{}", self.conductor, e)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                #[allow(clippy::redundant_closure_call)]
                ($body)(self, rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Cyclotomic, b: &Cyclotomic| a.raw_add(b, false));
forward_binop!(Sub, sub, |a: &Cyclotomic, b: &Cyclotomic| a.raw_add(b, true));
forward_binop!(Mul, mul, |a: &Cyclotomic, b: &Cyclotomic| a.raw_mul(b));
forward_binop!(Div, div, |a: &Cyclotomic, b: &Cyclotomic| a
    .raw_mul(&b.inverse().expect("division by zero cyclotomic")));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a + b)
    }
}

/// An exact root of unity e^{2πi·num/den}, kept with `num < den` in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub const ONE: Phase = Phase { num: 0, den: 1 };

    /// ζ_den^num.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "phase denominator must be positive");
        let num = num.rem_euclid(den as i64) as u64;
        let g = num.gcd(&den);
        let (num, den) = if num == 0 { (0, 1) } else { (num / g, den / g) };
        Phase { num, den }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn inv(self) -> Self {
        Phase::new(-(self.num as i64), self.den)
    }

    pub fn pow(self, k: i64) -> Self {
        let e = (self.num as i128 * k as i128).rem_euclid(self.den as i128) as i64;
        Phase::new(e, self.den)
    }

    /// The principal m-th root: e^{2πi·num/(den·m)}.
    pub fn root(self, m: u64) -> Self {
        Phase::new(self.num as i64, self.den * m)
    }

    pub fn to_cyclotomic(self) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.den, self.num as i64).expect("positive order")
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        let l = self.den.lcm(&rhs.den);
        let e = self.num * (l / self.den) + rhs.num * (l / rhs.den);
        Phase::new((e % l) as i64, l)
    }
}

impl Div for Phase {
    type Output = Phase;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Phase) -> Phase {
        self * rhs.inv()
    }
}

impl std::iter::Product for Phase {
    fn product<I: Iterator<Item = Phase>>(iter: I) -> Self {
        iter.fold(Phase::ONE, |a, b| a * b)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ{}^{}", self.den, self.num)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(v: &BigInt) -> Self {
        v.to_i64().map(JsonInt::Small).unwrap_or_else(|| JsonInt::Big(v.to_string()))
    }

    fn to_big(&self) -> std::result::Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    #[serde(rename = "N")]
    n: u64,
    terms: Vec<(u64, JsonInt, JsonInt)>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycloJson {
            n: self.conductor,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, JsonInt::from_big(c.numer()), JsonInt::from_big(c.denom())))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CycloJson::deserialize(deserializer)?;
        if raw.n == 0 || raw.n > MAX_CONDUCTOR {
            return Err(D::Error::custom(format!("invalid conductor {}", raw.n)));
        }
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (e, num, den) in raw.terms {
            let num = num.to_big().map_err(D::Error::custom)?;
            let den = den.to_big().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            terms.push((e, BigRational::new(num, den)));
        }
        Ok(Cyclotomic::from_raw_terms(raw.n, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, e: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, e).unwrap()
    }

    #[test]
    fn unit_and_minus_one() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(4, 2), Cyclotomic::from_integer(-1));
        assert_eq!(z(2, 1), Cyclotomic::from_integer(-1));
        assert!(Cyclotomic::root_of_unity(0, 1).is_err());
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = z(8, 1) + z(8, -1);
        assert_eq!(&s * &s, Cyclotomic::from_integer(2));
        assert_eq!(s, Cyclotomic::sqrt2());
    }

    #[test]
    fn conjugate_and_products() {
        assert_eq!(z(5, 1).conjugate(), z(5, 4));
        assert!((z(3, 1) * z(3, 2)).is_one());
    }

    #[test]
    fn inverse_of_sqrt2() {
        let s = Cyclotomic::sqrt2();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(s.inverse().unwrap(), s.scale(&half));
        assert!(Cyclotomic::zero().inverse().is_err());
    }

    #[test]
    fn rational_recognition() {
        assert_eq!(Cyclotomic::one().as_rational(), Some(BigRational::one()));
        assert_eq!((z(3, 1) + z(3, 2)).as_rational(), Some(BigRational::from_integer((-1).into())));
        assert_eq!(z(5, 1).as_rational(), None);
    }

    #[test]
    fn minimal_conductor_is_canonical() {
        // ζ_12^3 = i lives in conductor 4; ζ_12^4 = ζ_3.
        assert_eq!(z(12, 3), z(4, 1));
        assert_eq!(z(12, 4), z(3, 1));
        assert_eq!(z(12, 3).conductor(), 4);
        assert_eq!(z(6, 1), -z(3, 2));
        assert_eq!(z(18, 2), z(9, 1));
    }

    #[test]
    fn sums_of_full_orbits_vanish() {
        for n in [5u64, 8, 9, 12, 15, 16, 27, 45] {
            let total: Cyclotomic = (0..n as i64).map(|e| z(n, e)).sum();
            assert!(total.is_zero(), "n = {n}: {total}");
        }
    }

    #[test]
    fn general_inverse() {
        let a = z(9, 1) + Cyclotomic::from_integer(2) + z(5, 2);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn root_recognition() {
        assert_eq!(z(12, 5).as_root_of_unity(), Some(Phase::new(5, 12)));
        assert_eq!(Cyclotomic::from_integer(-1).as_root_of_unity(), Some(Phase::new(1, 2)));
        assert_eq!(Cyclotomic::sqrt2().as_root_of_unity(), None);
    }

    #[test]
    fn phase_arithmetic() {
        let a = Phase::new(1, 4);
        assert_eq!(a * a, Phase::new(1, 2));
        assert_eq!(a.pow(4), Phase::ONE);
        assert_eq!(a.root(2), Phase::new(1, 8));
        assert_eq!((a * Phase::new(1, 3)).to_cyclotomic(), z(4, 1) * z(3, 1));
    }

    #[test]
    fn accumulator_matches_direct_sum() {
        let a = Cyclotomic::sqrt2();
        let b = z(3, 1);
        let mut acc = CycloAccumulator::new(24);
        acc.add_product(&a, &b);
        acc.add(&b);
        acc.add_scaled_product(-2, &a, &a);
        assert_eq!(acc.finish(), &(&a * &b) + &b - Cyclotomic::from_integer(4));
    }

    #[test]
    fn json_encoding() {
        let v = Cyclotomic::sqrt2();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"N":8,"terms":[[1,1,1],[3,-1,1]]}"#);
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        // non-canonical input is canonicalized
        let raw: Cyclotomic = serde_json::from_str(r#"{"N":3,"terms":[[1,1,1],[2,1,1]]}"#).unwrap();
        assert_eq!(raw, Cyclotomic::from_integer(-1));
    }
}
