//! Finite abelian groups, characters, quadratic forms and low-degree cocycles.
//!
//! Groups are given by invariant factors m₁ | m₂ | … | m_k. Elements are
//! addressed either by coordinate vectors or by their index in the
//! lexicographic enumeration (first coordinate most significant); all tables
//! are materialized over that enumeration.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclotomic, Phase};
use crate::error::{Error, Result};

/// Default bound on |G| for exhaustive enumeration.
pub const DEFAULT_ELEMENT_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FiniteAbelianGroup {
    /// Builds a group from an invariant-factor chain.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(m) = factors.iter().find(|&&m| m < 2) {
            return Err(Error::Shape(format!("invariant factor {m} < 2")));
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::Shape(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(vec![n])
        }
    }

    /// Normalizes an arbitrary list of cyclic orders to invariant factors.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Shape("cyclic factor of order 0".into()));
        }
        let factors = invariant_factors_of_product(orders);
        Self::new(factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    /// Exponent of the group (largest invariant factor).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        self.elements_with_limit(DEFAULT_ELEMENT_LIMIT)
    }

    pub fn elements_with_limit(&self, limit: usize) -> Result<Vec<GroupElement>> {
        self.check_limit(limit)?;
        Ok((0..self.order()).map(|i| self.element(i)).collect())
    }

    pub fn check_limit(&self, limit: usize) -> Result<()> {
        if self.order() > limit {
            Err(Error::Limit(format!("group order {} exceeds {limit}", self.order())))
        } else {
            Ok(())
        }
    }

    pub fn element(&self, index: usize) -> GroupElement {
        let mut coords = vec![0; self.factors.len()];
        let mut rest = index as u64;
        for (c, m) in coords.iter_mut().zip(&self.factors).rev() {
            *c = rest % m;
            rest /= m;
        }
        GroupElement { coords }
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        if g.coords.len() != self.factors.len() {
            return Err(Error::Shape(format!("element {g} has wrong length")));
        }
        let mut idx = 0u64;
        for (c, m) in g.coords.iter().zip(&self.factors) {
            if c >= m {
                return Err(Error::Shape(format!("element {g} is not reduced")));
            }
            idx = idx * m + c;
        }
        Ok(idx as usize)
    }

    /// Element from arbitrary integer coordinates, reduced.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::Shape("coordinate vector has wrong length".into()));
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
                .collect(),
        })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for m in self.factors.iter().rev() {
            let d = (a % m + b % m) % m;
            out += d * place;
            place *= m;
            a /= m;
            b /= m;
        }
        out as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut a = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for m in self.factors.iter().rev() {
            let d = (m - a % m) % m;
            out += d * place;
            place *= m;
            a /= m;
        }
        out as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// k·a.
    pub fn scalar(&self, k: i64, a: usize) -> usize {
        let g = self.element(a);
        let coords: Vec<i64> = g.coords.iter().map(|&c| c as i64 * k).collect();
        self.index_of(&self.reduce(&coords).expect("length matches")).expect("reduced")
    }

    /// Index of the i-th standard generator.
    pub fn generator(&self, i: usize) -> usize {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        self.index_of(&GroupElement { coords }).expect("valid generator")
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let g = self.element(a);
        g.coords
            .iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (&c, &m)| acc.lcm(&(m / c.gcd(&m))))
    }

    /// Value of the character indexed by `k` (dual group in the same basis) at `g`.
    pub fn character(&self, k: usize, g: usize) -> Phase {
        let (kc, gc) = (self.element(k), self.element(g));
        let n = self.exponent();
        let mut e = 0u64;
        for ((a, b), m) in kc.coords.iter().zip(&gc.coords).zip(&self.factors) {
            e = (e + a * b % m * (n / m)) % n;
        }
        Phase::new(e as i64, n)
    }

    pub fn label(&self) -> String {
        if self.factors.is_empty() {
            "Z1".into()
        } else {
            self.factors.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x")
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Parses `Zn` and `ZnxZm…`; non-chain products are normalized.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty group".into()));
        }
        let mut orders = Vec::new();
        for part in s.split(['x', 'X', '*']) {
            let digits = part
                .trim()
                .strip_prefix('Z')
                .ok_or_else(|| Error::Parse(format!("bad cyclic factor {part:?}")))?;
            let m: u64 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclic order {part:?}")))?;
            if m == 0 {
                return Err(Error::Parse("Z0 is not finite".into()));
            }
            if m > 1 {
                orders.push(m);
            }
        }
        let chain_ok = orders.windows(2).all(|w| w[1] % w[0] == 0);
        if chain_ok {
            Self::new(orders)
        } else {
            Self::from_cyclic_orders(&orders)
        }
    }
}

fn prime_power_parts(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pk = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pk *= p;
            }
            out.push((p, pk));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Invariant factors of ⊕ ℤ_{orders[i]}.
pub fn invariant_factors_of_product(orders: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &m in orders {
        for (p, pk) in prime_power_parts(m) {
            by_prime.entry(p).or_default().push(pk);
        }
    }
    let width = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; width];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        // largest powers go to the last factors
        for (slot, pk) in factors.iter_mut().rev().zip(powers.iter().rev()) {
            *slot *= pk;
        }
    }
    factors.into_iter().filter(|&m| m > 1).collect()
}

/// Invariant factors of a finite abelian group given by its Cayley table.
pub fn invariant_factors_of_table(table: &[Vec<usize>], identity: usize) -> Vec<u64> {
    use std::collections::BTreeMap;
    let n = table.len();
    let order_of = |a: usize| -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != identity {
            x = table[x][a];
            k += 1;
        }
        k
    };
    let orders: Vec<u64> = (0..n).map(order_of).collect();
    let mut cyclic_parts = Vec::new();
    for (p, pk_total) in prime_power_parts(n as u64) {
        // |G[p^j]| = p^{Σ min(j, e_i)} determines the exponents e_i.
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        let mut j = 1u32;
        let mut prev_log = 0u32;
        let mut logs = Vec::new();
        loop {
            let bound = p.pow(j);
            let c = orders.iter().filter(|&&o| bound % o == 0).count() as u64;
            let log = ilog(c, p);
            logs.push(log - prev_log);
            prev_log = log;
            if c == pk_total {
                break;
            }
            j += 1;
        }
        // logs[j-1] = number of cyclic p-factors of exponent ≥ j
        for (idx, &ge) in logs.iter().enumerate() {
            let next = logs.get(idx + 1).copied().unwrap_or(0);
            let exactly = ge - next;
            if exactly > 0 {
                *counts.entry(idx as u32 + 1).or_default() += exactly;
            }
        }
        for (e, c) in counts {
            for _ in 0..c {
                cyclic_parts.push(p.pow(e));
            }
        }
    }
    invariant_factors_of_product(&cyclic_parts)
}

fn ilog(mut c: u64, p: u64) -> u32 {
    let mut k = 0;
    while c > 1 {
        c /= p;
        k += 1;
    }
    k
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// A quadratic form φ: G → μ_∞ with φ(0) = 1, φ(−a) = φ(a) and bimultiplicative
/// associated form b(x, y) = φ(x+y)/(φ(x)φ(y)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    group: FiniteAbelianGroup,
    values: Vec<Phase>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormVariant {
    Residue,
    Nonresidue,
}

impl QuadraticForm {
    pub fn new(group: FiniteAbelianGroup, values: Vec<Phase>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::Shape("form table size differs from |G|".into()));
        }
        let form = QuadraticForm { group, values };
        form.check()?;
        Ok(form)
    }

    pub fn from_fn(group: FiniteAbelianGroup, f: impl Fn(&GroupElement) -> Phase) -> Result<Self> {
        group.check_limit(DEFAULT_ELEMENT_LIMIT)?;
        let values = (0..group.order()).map(|i| f(&group.element(i))).collect();
        Self::new(group, values)
    }

    /// φ(x) = ∏ ζ_{2mᵢ}^{kᵢ xᵢ²}; on odd cyclic factors kᵢ must be even.
    pub fn diagonal(group: FiniteAbelianGroup, ks: &[i64]) -> Result<Self> {
        if ks.len() != group.rank() {
            return Err(Error::Shape(format!(
                "{} form coefficients for a group of rank {}",
                ks.len(),
                group.rank()
            )));
        }
        let factors = group.factors().to_vec();
        Self::from_fn(group, |g| {
            g.coords
                .iter()
                .zip(&factors)
                .zip(ks)
                .map(|((&x, &m), &k)| Phase::new((k * (x * x) as i64).rem_euclid(2 * m as i64), 2 * m))
                .product()
        })
    }

    /// φ₁(a) = ζ_p^{a²} or φ₂(a) = ζ_p^{c a²}, c the least quadratic nonresidue.
    pub fn standard(p: u64, variant: FormVariant) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not an odd prime")));
        }
        let c = match variant {
            FormVariant::Residue => 1,
            FormVariant::Nonresidue => least_nonresidue(p),
        };
        Self::from_fn(FiniteAbelianGroup::cyclic(p)?, |g| {
            let a = g.coords[0];
            Phase::new((c * a * a % p) as i64, p)
        })
    }

    fn check(&self) -> Result<()> {
        let g = &self.group;
        let n = g.order();
        if !self.values.first().is_some_and(|v| v.is_one()) {
            return Err(Error::Validation("φ(0) ≠ 1".into()));
        }
        for a in 0..n {
            if self.values[g.neg(a)] != self.values[a] {
                return Err(Error::Validation(format!("φ(-a) ≠ φ(a) at a = {}", g.element(a))));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.b(g.add(x, y), z) != self.b(x, z) * self.b(y, z) {
                        return Err(Error::Validation(format!(
                            "associated form not bimultiplicative at ({}, {}, {})",
                            g.element(x),
                            g.element(y),
                            g.element(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn value(&self, a: usize) -> Phase {
        self.values[a]
    }

    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    /// Associated bicharacter b(x, y) = φ(x+y) φ(x)⁻¹ φ(y)⁻¹.
    pub fn b(&self, x: usize, y: usize) -> Phase {
        self.values[self.group.add(x, y)] / (self.values[x] * self.values[y])
    }

    /// Radical {x : b(x, ·) ≡ 1}.
    pub fn radical(&self) -> Vec<usize> {
        let n = self.group.order();
        (0..n).filter(|&x| (0..n).all(|y| self.b(x, y).is_one())).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().len() == 1
    }
}

pub fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&c| (1..p).all(|a| a * a % p != c))
        .expect("odd primes have nonresidues")
}

/// A group automorphism, stored as images of the standard generators and the
/// induced permutation of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub generator_images: Vec<GroupElement>,
    pub permutation: Vec<usize>,
}

impl Automorphism {
    pub fn apply(&self, a: usize) -> usize {
        self.permutation[a]
    }
}

/// All automorphisms of `group`, by brute force over generator images.
pub fn automorphisms(group: &FiniteAbelianGroup) -> Result<Vec<Automorphism>> {
    group.check_limit(DEFAULT_ELEMENT_LIMIT)?;
    let n = group.order();
    let k = group.rank();
    let candidates: Vec<Vec<usize>> = group
        .factors()
        .iter()
        .map(|&m| (0..n).filter(|&a| m % group.element_order(a) == 0).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let images: Vec<usize> = (0..k).map(|i| candidates[i][choice[i]]).collect();
        let perm: Vec<usize> = (0..n)
            .map(|a| {
                let coords = group.element(a).coords;
                coords
                    .iter()
                    .zip(&images)
                    .fold(0usize, |acc, (&c, &img)| group.add(acc, group.scalar(c as i64, img)))
            })
            .collect();
        let mut seen = vec![false; n];
        let bijective = perm.iter().all(|&x| !std::mem::replace(&mut seen[x], true));
        if bijective {
            out.push(Automorphism {
                generator_images: images.iter().map(|&i| group.element(i)).collect(),
                permutation: perm,
            });
        }
        // odometer
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Automorphisms t with φ(t(a)) = φ(a) for all a.
pub fn automorphisms_preserving_form(form: &QuadraticForm) -> Result<Vec<Automorphism>> {
    let n = form.group().order();
    Ok(automorphisms(form.group())?
        .into_iter()
        .filter(|t| (0..n).all(|a| form.value(t.apply(a)) == form.value(a)))
        .collect())
}

/// A normalized 2-cocycle β: G × G → μ_∞, tabulated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    group: FiniteAbelianGroup,
    values: Vec<Phase>,
}

impl Cocycle2 {
    pub fn new(group: FiniteAbelianGroup, values: Vec<Phase>) -> Result<Self> {
        let n = group.order();
        if values.len() != n * n {
            return Err(Error::Shape("2-cocycle table size differs from |G|²".into()));
        }
        let c = Cocycle2 { group, values };
        c.check()?;
        Ok(c)
    }

    pub fn from_fn(group: FiniteAbelianGroup, f: impl Fn(usize, usize) -> Phase) -> Result<Self> {
        group.check_limit(DEFAULT_ELEMENT_LIMIT)?;
        let n = group.order();
        let values = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(group, values)
    }

    pub fn trivial(group: FiniteAbelianGroup) -> Self {
        let n = group.order();
        Cocycle2 {
            group,
            values: vec![Phase::ONE; n * n],
        }
    }

    fn check(&self) -> Result<()> {
        let g = &self.group;
        let n = g.order();
        for a in 0..n {
            if !self.value(0, a).is_one() || !self.value(a, 0).is_one() {
                return Err(Error::Validation(format!("2-cocycle not normalized at {}", g.element(a))));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = g.add(a, b);
                for c in 0..n {
                    let lhs = self.value(a, b) * self.value(ab, c);
                    let rhs = self.value(b, c) * self.value(a, g.add(b, c));
                    if lhs != rhs {
                        return Err(Error::Validation(format!(
                            "2-cocycle identity fails at ({}, {}, {})",
                            g.element(a),
                            g.element(b),
                            g.element(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn value(&self, a: usize, b: usize) -> Phase {
        self.values[a * self.group.order() + b]
    }

    /// A(g, h) = β(g, h)/β(h, g).
    pub fn alternating(&self, a: usize, b: usize) -> Phase {
        self.value(a, b) / self.value(b, a)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|a| (0..a).all(|b| self.value(a, b) == self.value(b, a)))
    }

    /// For finite abelian groups a class is trivial iff its alternating pairing is.
    pub fn is_coboundary(&self) -> bool {
        self.is_symmetric()
    }

    /// Radical of the alternating pairing, as element indices.
    pub fn radical_indices(&self) -> Result<Vec<usize>> {
        let n = self.group.order();
        let rad: Vec<usize> = (0..n)
            .filter(|&a| (0..n).all(|b| self.alternating(a, b).is_one()))
            .collect();
        let quotient = n / rad.len();
        let root = (quotient as f64).sqrt().round() as usize;
        if root * root != quotient || !n.is_multiple_of(rad.len()) {
            return Err(Error::Validation(format!(
                "|G|/|R| = {n}/{} is not a perfect square",
                rad.len()
            )));
        }
        Ok(rad)
    }

    pub fn radical_of_pairing(&self) -> Result<Vec<GroupElement>> {
        Ok(self
            .radical_indices()?
            .into_iter()
            .map(|i| self.group.element(i))
            .collect())
    }

    /// A function χ with χ(g)χ(h) = β(g, h)χ(g+h) and χ(0) = 1, if one exists
    /// (i.e. iff β is a coboundary).
    pub fn projective_character(&self) -> Option<Vec<Phase>> {
        let g = &self.group;
        let n = g.order();
        let k = g.rank();
        let gens: Vec<usize> = (0..k).map(|i| g.generator(i)).collect();
        let mut at_gen = Vec::with_capacity(k);
        for (i, &e) in gens.iter().enumerate() {
            let m = g.factors()[i];
            // χ(e)^m = ∏_{j<m} β(j·e, e)
            let mut prod = Phase::ONE;
            let mut x = 0;
            for _ in 0..m {
                prod = prod * self.value(x, e);
                x = g.add(x, e);
            }
            at_gen.push(prod.root(m));
        }
        let mut chi = vec![Phase::ONE; n];
        for a in 1..n {
            let coords = g.element(a).coords;
            let i = (0..k).rev().find(|&i| coords[i] > 0).expect("nonzero element");
            let prev = g.sub(a, gens[i]);
            chi[a] = chi[prev] * at_gen[i] / self.value(prev, gens[i]);
        }
        for a in 0..n {
            for b in 0..n {
                if chi[a] * chi[b] != self.value(a, b) * chi[g.add(a, b)] {
                    return None;
                }
            }
        }
        Some(chi)
    }
}

/// A normalized 3-cocycle ω: G³ → μ_∞, tabulated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle3 {
    group: FiniteAbelianGroup,
    values: Vec<Phase>,
}

/// The explicit generators of H³ for ℤ_n and ℤ_q × ℤ_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CocycleKind {
    /// ξ^{i [(i'+i'')/n]} on a cyclic group of order n.
    I,
    /// ζ^{i [(i'+i'')/q]} on ℤ_q × ℤ_q (first coordinates).
    I1,
    /// ζ^{j [(j'+j'')/q]} on ℤ_q × ℤ_q (second coordinates).
    I2,
    /// ζ^{i [(j'+j'')/q]} on ℤ_q × ℤ_q (mixed).
    II,
}

impl FromStr for CocycleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" => Ok(CocycleKind::I),
            "I1" => Ok(CocycleKind::I1),
            "I2" => Ok(CocycleKind::I2),
            "II" => Ok(CocycleKind::II),
            other => Err(Error::Parse(format!("unknown cocycle generator {other:?}"))),
        }
    }
}

impl fmt::Display for CocycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CocycleKind::I => "I",
            CocycleKind::I1 => "I1",
            CocycleKind::I2 => "I2",
            CocycleKind::II => "II",
        })
    }
}

/// The bracket [(a+b)/n] for 0 ≤ a, b < n: the carry of a + b past n.
///
/// Read literally ("largest integer strictly less than"), the bracket would be
/// −1 at 0 and 0 at 1, which breaks both normalization and the cocycle
/// identity; the carry is the reading under which the formulas are cocycles.
pub fn carry(a: u64, b: u64, n: u64) -> u64 {
    (a + b) / n
}

/// Exponent tuple over the generator basis, e.g. `I:3` or `I1:1,I2:0,II:2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CocycleSpec(pub Vec<(CocycleKind, i64)>);

impl FromStr for CocycleSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" || s == "trivial" {
            return Ok(CocycleSpec(Vec::new()));
        }
        let mut out = Vec::new();
        for item in s.split(',') {
            let (kind, exp) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected KIND:EXP, got {item:?}")))?;
            let exp: i64 = exp
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {item:?}")))?;
            out.push((kind.parse()?, exp));
        }
        Ok(CocycleSpec(out))
    }
}

impl fmt::Display for CocycleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("trivial");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, e)| format!("{k}:{e}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl Cocycle3 {
    pub fn new(group: FiniteAbelianGroup, values: Vec<Phase>) -> Result<Self> {
        let n = group.order();
        if values.len() != n * n * n {
            return Err(Error::Shape("3-cocycle table size differs from |G|³".into()));
        }
        let c = Cocycle3 { group, values };
        c.check()?;
        Ok(c)
    }

    pub fn from_fn(group: FiniteAbelianGroup, f: impl Fn(usize, usize, usize) -> Phase) -> Result<Self> {
        let c = Self::from_fn_unchecked(group, f)?;
        c.check()?;
        Ok(c)
    }

    fn from_fn_unchecked(group: FiniteAbelianGroup, f: impl Fn(usize, usize, usize) -> Phase) -> Result<Self> {
        group.check_limit(256)?;
        let n = group.order();
        let values = (0..n * n * n).map(|i| f(i / (n * n), (i / n) % n, i % n)).collect();
        Ok(Cocycle3 { group, values })
    }

    pub fn trivial(group: FiniteAbelianGroup) -> Self {
        let n = group.order();
        Cocycle3 {
            group,
            values: vec![Phase::ONE; n * n * n],
        }
    }

    /// One of the explicit generators, with ξ (resp. ζ) = ζ_m^{root_index}
    /// for m the order of the relevant cyclic factor.
    pub fn generator(group: &FiniteAbelianGroup, kind: CocycleKind, root_index: i64) -> Result<Self> {
        let f = group.factors();
        match kind {
            CocycleKind::I => {
                if f.len() != 1 {
                    return Err(Error::Shape(format!("generator I needs a cyclic group, got {group}")));
                }
                let m = f[0];
                Self::from_fn(group.clone(), |a, b, c| {
                    let e = a as i64 * carry(b as u64, c as u64, m) as i64 * root_index;
                    Phase::new(e, m)
                })
            }
            CocycleKind::I1 | CocycleKind::I2 | CocycleKind::II => {
                if f.len() != 2 || f[0] != f[1] {
                    return Err(Error::Shape(format!("generator {kind} needs Zq x Zq, got {group}")));
                }
                let q = f[0];
                let g = group.clone();
                Self::from_fn(group.clone(), move |a, b, c| {
                    let (x, y, z) = (g.element(a).coords, g.element(b).coords, g.element(c).coords);
                    let e = match kind {
                        CocycleKind::I1 => x[0] * carry(y[0], z[0], q),
                        CocycleKind::I2 => x[1] * carry(y[1], z[1], q),
                        _ => x[0] * carry(y[1], z[1], q),
                    };
                    Phase::new(e as i64 * root_index, q)
                })
            }
        }
    }

    /// ∏ generator(kind)^exponent over the listed pairs.
    pub fn from_spec(group: &FiniteAbelianGroup, spec: &CocycleSpec) -> Result<Self> {
        let mut out = Self::trivial(group.clone());
        for &(kind, e) in &spec.0 {
            out = out.mul(&Self::generator(group, kind, e)?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::Shape("cocycles over different groups".into()));
        }
        Ok(Cocycle3 {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| *a * *b).collect(),
        })
    }

    /// Normalization and the full identity
    /// ω(b,c,d) ω(a,b+c,d) ω(a,b,c) = ω(a+b,c,d) ω(a,b,c+d) over all quadruples.
    pub fn check(&self) -> Result<()> {
        let g = &self.group;
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                if !self.value(0, a, b).is_one() || !self.value(a, 0, b).is_one() || !self.value(a, b, 0).is_one() {
                    return Err(Error::Validation(format!(
                        "3-cocycle not normalized at ({}, {})",
                        g.element(a),
                        g.element(b)
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = g.add(a, b);
                for c in 0..n {
                    let bc = g.add(b, c);
                    let abc = self.value(a, b, c);
                    for d in 0..n {
                        let lhs = self.value(b, c, d) * self.value(a, bc, d) * abc;
                        let rhs = self.value(ab, c, d) * self.value(a, b, g.add(c, d));
                        if lhs != rhs {
                            return Err(Error::Validation(format!(
                                "3-cocycle identity fails at ({}, {}, {}, {})",
                                g.element(a),
                                g.element(b),
                                g.element(c),
                                g.element(d)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn value(&self, a: usize, b: usize, c: usize) -> Phase {
        let n = self.group.order();
        self.values[(a * n + b) * n + c]
    }

    /// ω(x, g, h) = ω(x, h, g) for all x, g, h.
    pub fn is_symmetric_in_last_two(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|x| (0..n).all(|g| (0..g).all(|h| self.value(x, g, h) == self.value(x, h, g))))
    }

    /// The slant product ω_x(g, h) = ω(x, g, h) ω(g, h, x) / ω(g, x, h).
    pub fn slant(&self, x: usize) -> Result<Cocycle2> {
        let n = self.group.order();
        if x >= n {
            return Err(Error::Shape("slant element out of range".into()));
        }
        Cocycle2::from_fn(self.group.clone(), |g, h| {
            self.value(x, g, h) * self.value(g, h, x) / self.value(g, x, h)
        })
    }
}

/// D_x: the slant 2-cocycle ω_x, checked to satisfy the 2-cocycle identity.
pub fn slant_dx(omega: &Cocycle3, x: &GroupElement) -> Result<Cocycle2> {
    omega.slant(omega.group().index_of(x)?)
}

#[derive(Serialize, Deserialize)]
struct TableEntry<K> {
    args: K,
    value: Cyclotomic,
}

#[derive(Serialize, Deserialize)]
struct TableJson<K> {
    group: FiniteAbelianGroup,
    values: Vec<TableEntry<K>>,
}

fn phase_from_json(v: &Cyclotomic) -> Result<Phase> {
    v.as_root_of_unity()
        .ok_or_else(|| Error::Parse(format!("{v} is not a root of unity")))
}

impl Serialize for QuadraticForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson {
            group: self.group.clone(),
            values: (0..self.group.order())
                .map(|a| TableEntry {
                    args: self.group.element(a),
                    value: self.values[a].to_cyclotomic(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: TableJson<GroupElement> = TableJson::deserialize(d)?;
        let n = raw.group.order();
        let mut values = vec![None; n];
        for e in raw.values {
            let idx = raw.group.index_of(&e.args).map_err(D::Error::custom)?;
            values[idx] = Some(phase_from_json(&e.value).map_err(D::Error::custom)?);
        }
        let values: Option<Vec<Phase>> = values.into_iter().collect();
        let values = values.ok_or_else(|| D::Error::custom("incomplete form table"))?;
        QuadraticForm::new(raw.group, values).map_err(D::Error::custom)
    }
}

impl Serialize for Cocycle2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.group.order();
        TableJson {
            group: self.group.clone(),
            values: (0..n * n)
                .map(|i| TableEntry {
                    args: (self.group.element(i / n), self.group.element(i % n)),
                    value: self.values[i].to_cyclotomic(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl Serialize for Cocycle3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.group.order();
        TableJson {
            group: self.group.clone(),
            values: (0..n * n * n)
                .map(|i| TableEntry {
                    args: (
                        self.group.element(i / (n * n)),
                        self.group.element((i / n) % n),
                        self.group.element(i % n),
                    ),
                    value: self.values[i].to_cyclotomic(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cocycle3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: TableJson<(GroupElement, GroupElement, GroupElement)> = TableJson::deserialize(d)?;
        let g = raw.group;
        let n = g.order();
        let mut values = vec![None; n * n * n];
        for e in raw.values {
            let (a, b, c) = e.args;
            let idx = (g.index_of(&a).map_err(D::Error::custom)? * n + g.index_of(&b).map_err(D::Error::custom)?) * n
                + g.index_of(&c).map_err(D::Error::custom)?;
            values[idx] = Some(phase_from_json(&e.value).map_err(D::Error::custom)?);
        }
        let values: Option<Vec<Phase>> = values.into_iter().collect();
        let values = values.ok_or_else(|| D::Error::custom("incomplete cocycle table"))?;
        Cocycle3::new(g, values).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zq2(q: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(vec![q, q]).unwrap()
    }

    #[test]
    fn element_enumeration() {
        assert_eq!(FiniteAbelianGroup::trivial().elements().unwrap(), vec![GroupElement { coords: vec![] }]);
        assert_eq!(zq2(2).elements().unwrap().len(), 4);
        let z9 = FiniteAbelianGroup::cyclic(9).unwrap();
        let els = z9.elements().unwrap();
        assert_eq!(els.len(), 9);
        assert_eq!(els[4].coords, vec![4]);
        let big = FiniteAbelianGroup::new(vec![64, 128]).unwrap();
        assert!(matches!(big.elements(), Err(Error::Limit(_))));
    }

    #[test]
    fn parsing_groups() {
        let g: FiniteAbelianGroup = "Z3xZ3".parse().unwrap();
        assert_eq!(g.factors(), &[3, 3]);
        let h: FiniteAbelianGroup = "Z2xZ3".parse().unwrap();
        assert_eq!(h.factors(), &[6]);
        let k: FiniteAbelianGroup = "Z4xZ2".parse().unwrap();
        assert_eq!(k.factors(), &[2, 4]);
        assert!("Y3".parse::<FiniteAbelianGroup>().is_err());
        assert!(FiniteAbelianGroup::new(vec![3, 4]).is_err());
    }

    #[test]
    fn invariant_factors_from_table() {
        let g = FiniteAbelianGroup::new(vec![2, 12]).unwrap();
        let n = g.order();
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| g.add(a, b)).collect()).collect();
        assert_eq!(invariant_factors_of_table(&table, 0), vec![2, 12]);
        let t = FiniteAbelianGroup::new(vec![3, 3, 9]).unwrap();
        let n = t.order();
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| t.add(a, b)).collect()).collect();
        assert_eq!(invariant_factors_of_table(&table, 0), vec![3, 3, 9]);
    }

    #[test]
    fn standard_forms() {
        let f = QuadraticForm::standard(5, FormVariant::Residue).unwrap();
        assert_eq!(f.value(1), Phase::new(1, 5));
        assert_eq!(f.value(2), Phase::new(4, 5));
        assert!(f.value(0).is_one());
        let g = QuadraticForm::standard(3, FormVariant::Nonresidue).unwrap();
        assert_eq!(g.value(1), Phase::new(2, 3));
        assert_eq!(least_nonresidue(3), 2);
        assert!(QuadraticForm::standard(2, FormVariant::Residue).is_err());
        assert!(QuadraticForm::standard(9, FormVariant::Residue).is_err());
    }

    #[test]
    fn invalid_form_rejected() {
        // φ(1) = ζ_3 on ℤ₂ is not even well defined as a quadratic form
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        assert!(QuadraticForm::new(g, vec![Phase::ONE, Phase::new(1, 3)]).is_err());
    }

    #[test]
    fn form_preserving_automorphisms() {
        let f = QuadraticForm::standard(5, FormVariant::Residue).unwrap();
        let autos = automorphisms_preserving_form(&f).unwrap();
        let images: Vec<u64> = autos.iter().map(|t| t.generator_images[0].coords[0]).collect();
        assert_eq!(images, vec![1, 4]);
        let g = QuadraticForm::standard(7, FormVariant::Nonresidue).unwrap();
        assert_eq!(automorphisms_preserving_form(&g).unwrap().len(), 2);
        let triv = QuadraticForm::new(FiniteAbelianGroup::trivial(), vec![Phase::ONE]).unwrap();
        assert_eq!(automorphisms_preserving_form(&triv).unwrap().len(), 1);
        assert_eq!(automorphisms(&zq2(2)).unwrap().len(), 6);
    }

    #[test]
    fn generator_values() {
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let w = Cocycle3::generator(&z4, CocycleKind::I, 1).unwrap();
        assert_eq!(w.value(1, 3, 3), Phase::new(1, 4));
        assert!(w.value(0, 2, 3).is_one());
        let g = zq2(3);
        let w2 = Cocycle3::generator(&g, CocycleKind::II, 1).unwrap();
        let a = g.index_of(&GroupElement { coords: vec![1, 0] }).unwrap();
        let b2 = g.index_of(&GroupElement { coords: vec![0, 2] }).unwrap();
        assert_eq!(w2.value(a, b2, b2), Phase::new(1, 3));
        assert!(Cocycle3::generator(&z4, CocycleKind::II, 1).is_err());
        assert!(Cocycle3::generator(&g, CocycleKind::I, 1).is_err());
    }

    #[test]
    fn slant_of_mixed_generator() {
        // ω_II on ℤ₃×ℤ₃, x = a = (1,0): ω_a(g,h) = ω(a,g,h) ω(g,h,a)/ω(g,a,h).
        // For g = b = (0,1), h = b² = (0,2): ω(a,b,b²) = ζ₃^{1·[3/3]} = ζ₃, the
        // other two factors have a second-coordinate carry of 0, so ω_a(b,b²) = ζ₃;
        // symmetrically ω_a(b²,b) = ζ₃, and the ratio is 1.
        let g = zq2(3);
        let w = Cocycle3::generator(&g, CocycleKind::II, 1).unwrap();
        let a = g.index_of(&GroupElement { coords: vec![1, 0] }).unwrap();
        let b = g.index_of(&GroupElement { coords: vec![0, 1] }).unwrap();
        let b2 = g.index_of(&GroupElement { coords: vec![0, 2] }).unwrap();
        let wa = w.slant(a).unwrap();
        assert_eq!(wa.value(b, b2), Phase::new(1, 3));
        assert_eq!(wa.value(b2, b), Phase::new(1, 3));
        assert!(wa.alternating(b, b2).is_one());
        assert!(wa.is_coboundary());
    }

    #[test]
    fn slant_at_zero_is_trivial() {
        let z9 = FiniteAbelianGroup::cyclic(9).unwrap();
        let w = Cocycle3::generator(&z9, CocycleKind::I, 2).unwrap();
        assert_eq!(w.slant(0).unwrap(), Cocycle2::trivial(z9.clone()));
        for x in 0..9 {
            assert!(w.slant(x).unwrap().is_symmetric());
        }
    }

    #[test]
    fn coboundary_and_radical() {
        let g = zq2(3);
        let beta = Cocycle2::from_fn(g.clone(), |a, b| {
            Phase::new((g.element(a).coords[0] * g.element(b).coords[1]) as i64, 3)
        })
        .unwrap();
        assert!(!beta.is_coboundary());
        assert_eq!(beta.radical_indices().unwrap(), vec![0]);
        assert!(beta.projective_character().is_none());
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let triv = Cocycle2::trivial(z4);
        assert!(triv.is_coboundary());
        assert_eq!(triv.radical_indices().unwrap().len(), 4);
    }

    #[test]
    fn projective_character_trivializes_symmetric_cocycle() {
        let z9 = FiniteAbelianGroup::cyclic(9).unwrap();
        let w = Cocycle3::generator(&z9, CocycleKind::I, 1).unwrap();
        let beta = w.slant(4).unwrap();
        let chi = beta.projective_character().unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(chi[a] * chi[b], beta.value(a, b) * chi[z9.add(a, b)]);
            }
        }
    }

    #[test]
    fn cocycle_spec_parsing() {
        let s: CocycleSpec = "I1:1,I2:0,II:2".parse().unwrap();
        assert_eq!(s.0, vec![(CocycleKind::I1, 1), (CocycleKind::I2, 0), (CocycleKind::II, 2)]);
        assert_eq!(s.to_string(), "I1:1,I2:0,II:2");
        assert!("I3:1".parse::<CocycleSpec>().is_err());
        assert!("I".parse::<CocycleSpec>().is_err());
    }

    #[test]
    fn literal_bracket_reading_is_not_a_cocycle() {
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let literal = |s: u64| -> i64 {
            if s == 0 {
                0
            } else {
                (s / 4) as i64 - i64::from(s.is_multiple_of(4))
            }
        };
        let w = Cocycle3::from_fn_unchecked(z4.clone(), |a, b, c| Phase::new(a as i64 * literal((b + c) as u64), 4))
            .unwrap();
        assert!(w.check().is_err());
    }

    #[test]
    fn form_json_roundtrip() {
        let f = QuadraticForm::standard(3, FormVariant::Residue).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: QuadraticForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
