//! Modular data: an unnormalized S-matrix and twists over a fusion ring.
//!
//! Conventions: S[0][i] = d_i, S[i][j] = b(i, j) on pointed data, and the
//! balancing identity reads S_ij = θ_i θ_j Σ_k N_{i* j}^k d_k θ_k⁻¹.

use std::collections::HashMap;

use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloAccumulator, Cyclotomic, Phase};
use crate::error::{Error, Result};
use crate::fusion::{FusionRing, FusionRingJson, FusionSubcategory};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularData {
    ring: FusionRing,
    s: Vec<Cyclotomic>,
    t: Vec<Phase>,
    /// Present when every S entry is a root of unity (pointed data).
    s_phase: Option<Vec<Phase>>,
    conductor: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetricKind {
    Trivial,
    Tannakian,
    SuperTannakian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricClass {
    pub kind: SymmetricKind,
    /// For super-Tannakian input, the invertible objects with twist −1 and
    /// square 1; otherwise the members of the subcategory.
    pub witness: Vec<usize>,
}

impl ModularData {
    /// Builds and validates modular data.
    pub fn new(ring: FusionRing, s: Vec<Vec<Cyclotomic>>, t: Vec<Phase>) -> Result<Self> {
        let m = Self::new_unchecked(ring, s, t)?;
        m.validate_modular()?;
        Ok(m)
    }

    /// Builds modular data with shape checks only.
    pub fn new_unchecked(ring: FusionRing, s: Vec<Vec<Cyclotomic>>, t: Vec<Phase>) -> Result<Self> {
        let r = ring.rank();
        if s.len() != r || s.iter().any(|row| row.len() != r) {
            return Err(Error::Shape(format!("S must be {r}×{r}")));
        }
        if t.len() != r {
            return Err(Error::Shape(format!("T must have length {r}")));
        }
        let s: Vec<Cyclotomic> = s.into_iter().flatten().collect();
        let s_phase: Option<Vec<Phase>> = s.iter().map(|x| x.as_root_of_unity()).collect();
        let conductor = s
            .iter()
            .map(|x| x.conductor())
            .chain(t.iter().map(|p| p.order()))
            .fold(1u64, |a, b| a.lcm(&b));
        Ok(ModularData {
            ring,
            s,
            t,
            s_phase,
            conductor,
        })
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn s(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.s[i * self.rank() + j]
    }

    pub fn s_matrix(&self) -> Vec<Vec<Cyclotomic>> {
        self.s.chunks(self.rank()).map(|c| c.to_vec()).collect()
    }

    pub fn twist(&self, i: usize) -> Phase {
        self.t[i]
    }

    pub fn twists(&self) -> &[Phase] {
        &self.t
    }

    /// D² = Σ d_i².
    pub fn global_dim(&self) -> u64 {
        self.ring.fpdim()
    }

    fn d(&self, i: usize) -> &Cyclotomic {
        self.s(0, i)
    }

    fn violation(msg: String) -> Result<()> {
        Err(Error::Validation(msg))
    }

    /// Exhaustive check of normalization, symmetry, the character identity
    /// d_r Σ_k N_ij^k S_kr = S_ir S_jr, balancing, and (when the Müger center
    /// is trivial) orthogonality Σ_r S_ir conj(S_jr) = D² δ_ij. Given
    /// orthogonality, the character identity is equivalent to the Verlinde
    /// formula for every N_ij^k.
    pub fn validate_modular(&self) -> Result<()> {
        self.ring.validate()?;
        let r = self.rank();
        if !self.s(0, 0).is_one() {
            return Self::violation("S[0][0] ≠ 1".into());
        }
        for i in 0..r {
            let d = self.d(i);
            let d2 = d * d;
            if d != &d.conjugate() || d2.as_integer() != Some(self.ring.dim_squares()[i].into()) {
                return Self::violation(format!(
                    "S[0][{i}] = {d} does not match the certified dimension √{}",
                    self.ring.dim_squares()[i]
                ));
            }
        }
        if !self.t[0].is_one() {
            return Self::violation("θ_0 ≠ 1".into());
        }
        if let Some(i) = (0..r).find(|&i| self.t[i] != self.t[self.ring.dual(i)]) {
            return Self::violation(format!("θ_{i} ≠ θ of its dual"));
        }
        if let Some(tables) = self.pointed_tables() {
            tables.check(&self.ring)?;
            if self.is_nondegenerate() {
                tables.check_orthogonality(&self.ring)?;
                self.check_indicators()?;
            }
            return Ok(());
        }
        for i in 0..r {
            for j in 0..i {
                if self.s(i, j) != self.s(j, i) {
                    return Self::violation(format!("S not symmetric at ({i}, {j})"));
                }
            }
            for j in 0..r {
                if self.s(i, j) != &self.s(self.ring.dual(i), j).conjugate() {
                    return Self::violation(format!("S[{i}][{j}] ≠ conj(S[dual {i}][{j}])"));
                }
            }
        }
        self.check_general()?;
        if self.is_nondegenerate() {
            self.check_orthogonality()?;
            self.check_indicators()?;
        }
        Ok(())
    }

    fn pointed_tables(&self) -> Option<PointedTables> {
        let sp = self.s_phase.as_ref()?;
        let n = sp.iter().chain(&self.t).fold(1u64, |a, p| a.lcm(&p.order()));
        let exp = |p: &Phase| p.num() * (n / p.order());
        Some(PointedTables {
            n,
            rank: self.rank(),
            s: sp.iter().map(exp).collect(),
            t: self.t.iter().map(exp).collect(),
        })
    }

    /// ν₂(k) = (1/D²) Σ_ij N_ij^k d_i d_j (θ_i/θ_j)².
    pub fn frobenius_schur_indicator(&self, k: usize) -> Cyclotomic {
        let r = self.rank();
        let sum = if self.s_phase.is_some() {
            phase_sum((0..r).map(|i| {
                let j = self.ring.product(self.ring.dual(i), k)[0].0;
                (self.t[i] / self.t[j]).pow(2)
            }))
        } else {
            let mut acc = CycloAccumulator::new(self.conductor);
            for (i, j) in (0..r).flat_map(|i| (0..r).map(move |j| (i, j))) {
                let m = self.ring.n(i, j, k);
                if m > 0 {
                    let dd = self.d(i) * self.d(j);
                    acc.add_scaled_product(i64::from(m), &dd, &(self.t[i] / self.t[j]).pow(2).to_cyclotomic());
                }
            }
            acc.finish()
        };
        sum * Cyclotomic::from_integer(self.global_dim() as i64)
            .inverse()
            .expect("D² > 0")
    }

    /// ν₂ is ±1 on self-dual simples and 0 on the others.
    fn check_indicators(&self) -> Result<()> {
        for k in 0..self.rank() {
            let nu = self.frobenius_schur_indicator(k);
            let ok = if self.ring.dual(k) == k {
                nu.is_one() || (-&nu).is_one()
            } else {
                nu.is_zero()
            };
            if !ok {
                return Self::violation(format!("Frobenius–Schur indicator of {} is {nu}", self.ring.labels()[k]));
            }
        }
        Ok(())
    }

    fn check_general(&self) -> Result<()> {
        let r = self.rank();
        let n = self.conductor;
        let t: Vec<Cyclotomic> = self.t.iter().map(|p| p.to_cyclotomic()).collect();
        let t_inv: Vec<Cyclotomic> = self.t.iter().map(|p| p.inv().to_cyclotomic()).collect();
        let one = Cyclotomic::one();
        for i in 0..r {
            for j in i..r {
                let prod = self.ring.product(i, j);
                for x in 0..r {
                    let mut acc = CycloAccumulator::new(n);
                    for &(k, m) in prod {
                        acc.add_scaled_product(i64::from(m), self.s(k, x), &one);
                    }
                    let lhs = acc.finish() * self.d(x);
                    if lhs != self.s(i, x) * self.s(j, x) {
                        return Self::violation(format!("character identity fails at ({i}, {j}; column {x})"));
                    }
                }
                let mut acc = CycloAccumulator::new(n);
                for &(k, m) in self.ring.product(self.ring.dual(i), j) {
                    acc.add_scaled_product(i64::from(m), self.d(k), &t_inv[k]);
                }
                let rhs = acc.finish() * &t[i] * &t[j];
                if self.s(i, j) != &rhs {
                    return Self::violation(format!("balancing fails at ({i}, {j})"));
                }
            }
        }
        Ok(())
    }

    fn check_orthogonality(&self) -> Result<()> {
        let r = self.rank();
        let d2 = Cyclotomic::from_integer(self.global_dim() as i64);
        let zero = Cyclotomic::zero();
        for i in 0..r {
            for j in i..r {
                let mut acc = CycloAccumulator::new(self.conductor);
                for x in 0..r {
                    acc.add_product(self.s(i, x), &self.s(j, x).conjugate());
                }
                let sum = acc.finish();
                let expect = if i == j { &d2 } else { &zero };
                if &sum != expect {
                    return Self::violation(format!("orthogonality fails at ({i}, {j}): sum = {sum}"));
                }
            }
        }
        Ok(())
    }

    /// (1/D²) Σ_r S_ir S_jr conj(S_kr) / d_r, evaluated directly.
    pub fn verlinde_coefficient(&self, i: usize, j: usize, k: usize) -> Result<Cyclotomic> {
        let r = self.rank();
        let inv_d2 = Cyclotomic::from_integer(self.global_dim() as i64).inverse()?;
        if let Some(sp) = &self.s_phase {
            return Ok(phase_sum((0..r).map(|x| sp[i * r + x] * sp[j * r + x] / sp[k * r + x])) * inv_d2);
        }
        let mut acc = CycloAccumulator::new(self.conductor);
        for x in 0..r {
            let term = self.s(i, x) * self.s(j, x) * self.s(k, x).conjugate();
            acc.add_product(&term, &self.d(x).inverse()?);
        }
        Ok(acc.finish() * inv_d2)
    }

    /// Recovers every N_ij^k from S through the Verlinde formula and compares
    /// exactly; returns the first mismatching triple.
    pub fn verlinde_recover_all(&self) -> Result<()> {
        let r = self.rank();
        if let Some(p) = self.pointed_tables() {
            return self.verlinde_recover_pointed(&p);
        }
        for i in 0..r {
            for j in i..r {
                for k in 0..r {
                    let v = self.verlinde_coefficient(i, j, k)?;
                    let n = self.ring.n(i, j, k);
                    if v.as_integer() != Some(n.into()) {
                        return Self::violation(format!("Verlinde gives N[{i}][{j}][{k}] = {v}, ring has {n}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Pointed Verlinde sums Σ_x ζ^(s_ix + s_jx − s_kx) from exponent
    /// histograms. A histogram uniform on a nontrivial subgroup of ℤ_n sums to
    /// zero; any other histogram is summed in the cyclotomic field.
    fn verlinde_recover_pointed(&self, p: &PointedTables) -> Result<()> {
        let r = self.rank();
        let n = p.n;
        let roots = (0..n)
            .map(|e| Cyclotomic::root_of_unity(n, e as i64))
            .collect::<Result<Vec<_>>>()?;
        let d2 = Cyclotomic::from_integer(self.global_dim() as i64);
        let one = Cyclotomic::one();
        let mut counts = vec![0i64; n as usize];
        for i in 0..r {
            for j in i..r {
                for k in 0..r {
                    counts.fill(0);
                    for x in 0..r {
                        counts[((p.s(i, x) + p.s(j, x) + n - p.s(k, x)) % n) as usize] += 1;
                    }
                    let expect = self.ring.n(i, j, k);
                    let sum = if counts[0] == r as i64 {
                        d2.clone()
                    } else if uniform_on_subgroup(&counts) {
                        Cyclotomic::zero()
                    } else {
                        let mut acc = CycloAccumulator::new(n);
                        for (e, &c) in counts.iter().enumerate().filter(|(_, &c)| c != 0) {
                            acc.add_scaled_product(c, &roots[e], &one);
                        }
                        acc.finish()
                    };
                    if sum != &d2 * &Cyclotomic::from_integer(i64::from(expect)) {
                        let v = sum * d2.inverse()?;
                        return Self::violation(format!("Verlinde gives N[{i}][{j}][{k}] = {v}, ring has {expect}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Σ_k S_ik θ_k⁻¹ S_kj = conj(p₊) θ_i θ_j S_ij with p₊ = Σ_k θ_k d_k².
    pub fn check_modular_relation(&self) -> Result<()> {
        let r = self.rank();
        let n = self.conductor;
        let mut acc = CycloAccumulator::new(n);
        for k in 0..r {
            acc.add_scaled_product(self.ring.dim_squares()[k] as i64, &self.t[k].to_cyclotomic(), &Cyclotomic::one());
        }
        let p_plus_bar = acc.finish().conjugate();
        let t_inv: Vec<Cyclotomic> = self.t.iter().map(|p| p.inv().to_cyclotomic()).collect();
        for i in 0..r {
            for j in i..r {
                let mut acc = CycloAccumulator::new(n);
                for k in 0..r {
                    acc.add_product(&(self.s(i, k) * &t_inv[k]), self.s(k, j));
                }
                let lhs = acc.finish();
                let rhs = &p_plus_bar * (self.t[i] * self.t[j]).to_cyclotomic() * self.s(i, j);
                if lhs != rhs {
                    return Self::violation(format!("modular relation fails at ({i}, {j})"));
                }
            }
        }
        Ok(())
    }

    /// S_ij = d_i d_j.
    pub fn centralizes(&self, i: usize, j: usize) -> bool {
        match &self.s_phase {
            Some(sp) => sp[i * self.rank() + j].is_one(),
            None => self.s(i, j) == &(self.d(i) * self.d(j)),
        }
    }

    pub fn centralizer_of(&self, sub: &FusionSubcategory) -> FusionSubcategory {
        let members: Vec<usize> = (0..self.rank())
            .filter(|&i| sub.members().iter().all(|&j| self.centralizes(i, j)))
            .collect();
        self.ring
            .subcategory(members)
            .expect("centralizers are subcategories")
    }

    pub fn muger_center(&self) -> FusionSubcategory {
        self.centralizer_of(&self.ring.whole())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.muger_center().is_trivial()
    }

    /// sub ∩ centralizer(sub) is trivial.
    pub fn is_nondegenerate_sub(&self, sub: &FusionSubcategory) -> bool {
        let c = self.centralizer_of(sub);
        sub.members().iter().all(|&i| i == 0 || !c.contains(i))
    }

    pub fn is_symmetric_sub(&self, sub: &FusionSubcategory) -> bool {
        sub.is_subset_of(&self.centralizer_of(sub))
    }

    pub fn classify_symmetric(&self, sub: &FusionSubcategory) -> Result<SymmetricClass> {
        if !self.is_symmetric_sub(sub) {
            return Err(Error::Domain(format!("{:?} does not centralize itself", sub.members())));
        }
        if sub.is_trivial() {
            return Ok(SymmetricClass {
                kind: SymmetricKind::Trivial,
                witness: vec![0],
            });
        }
        let minus = Phase::new(1, 2);
        if let Some(&i) = sub
            .members()
            .iter()
            .find(|&&i| !self.t[i].is_one() && self.t[i] != minus)
        {
            return Err(Error::Validation(format!("twist {} on a symmetric subcategory", self.t[i])));
        }
        if sub.members().iter().all(|&i| self.t[i].is_one()) {
            return Ok(SymmetricClass {
                kind: SymmetricKind::Tannakian,
                witness: sub.members().to_vec(),
            });
        }
        let witness = sub
            .members()
            .iter()
            .copied()
            .filter(|&i| self.t[i] == minus && self.ring.is_invertible(i) && self.ring.product(i, i)[0].0 == 0)
            .collect();
        Ok(SymmetricClass {
            kind: SymmetricKind::SuperTannakian,
            witness,
        })
    }

    pub fn is_tannakian_sub(&self, sub: &FusionSubcategory) -> bool {
        self.is_symmetric_sub(sub) && sub.members().iter().all(|&i| self.t[i].is_one())
    }

    /// All Tannakian members of `lattice` (the trivial one included). On
    /// nondegenerate data, asserts (FPdim E)² | FPdim.
    pub fn tannakian_subcategories(&self, lattice: &[FusionSubcategory]) -> Result<Vec<FusionSubcategory>> {
        let out: Vec<FusionSubcategory> = lattice.iter().filter(|s| self.is_tannakian_sub(s)).cloned().collect();
        if self.is_nondegenerate() {
            let dim = self.global_dim();
            for e in &out {
                let de = self.ring.fpdim_of(e);
                if !dim.is_multiple_of(de * de) {
                    return Err(Error::Validation(format!(
                        "Tannakian {:?} of dimension {de} with {de}² ∤ {dim}",
                        e.members()
                    )));
                }
            }
        }
        Ok(out)
    }

    /// Pairs (p, C_p) with C_p the maximal subcategory of p-power dimension.
    pub fn prime_decomposition(&self, lattice: &[FusionSubcategory]) -> Result<Vec<(u64, FusionSubcategory)>> {
        if !self.ring.is_nilpotent() {
            return Err(Error::Domain("prime decomposition needs a nilpotent category".into()));
        }
        if !self.is_nondegenerate() {
            return Err(Error::Domain("prime decomposition needs nondegenerate data".into()));
        }
        let dim = self.global_dim();
        let primes = prime_factors(dim);
        let mut out = Vec::new();
        for &p in &primes {
            let mut acc = FusionSubcategory::trivial();
            for s in lattice {
                if is_power_of(self.ring.fpdim_of(s), p) {
                    acc = self.ring.join(&acc, s);
                }
            }
            if !is_power_of(self.ring.fpdim_of(&acc), p) {
                return Err(Error::Validation(format!("no unique maximal {p}-subcategory")));
            }
            out.push((p, acc));
        }
        let product: u64 = out.iter().map(|(_, s)| self.ring.fpdim_of(s)).product();
        if product != dim {
            return Err(Error::Validation(format!("component dimensions multiply to {product}, not {dim}")));
        }
        for (a, (_, sa)) in out.iter().enumerate() {
            if !self.is_nondegenerate_sub(sa) {
                return Err(Error::Validation(format!("component {:?} is degenerate", sa.members())));
            }
            for (_, sb) in &out[a + 1..] {
                let c = self.centralizer_of(sa);
                if !sb.is_subset_of(&c) {
                    return Err(Error::Validation("components do not centralize each other".into()));
                }
            }
        }
        Ok(out)
    }

    pub fn deligne(&self, other: &ModularData) -> Result<ModularData> {
        let ring = self.ring.deligne(&other.ring);
        let (r1, r2) = (self.rank(), other.rank());
        let r = r1 * r2;
        let s = match (&self.s_phase, &other.s_phase) {
            (Some(a), Some(b)) => (0..r)
                .map(|x| {
                    (0..r)
                        .map(|y| (a[(x / r2) * r1 + y / r2] * b[(x % r2) * r2 + y % r2]).to_cyclotomic())
                        .collect()
                })
                .collect(),
            _ => (0..r)
                .map(|x| {
                    (0..r)
                        .map(|y| self.s(x / r2, y / r2) * other.s(x % r2, y % r2))
                        .collect()
                })
                .collect(),
        };
        let t = (0..r).map(|x| self.t[x / r2] * other.t[x % r2]).collect();
        ModularData::new(ring, s, t)
    }
}

/// Pointed S and T as exponents of ζ_n.
struct PointedTables {
    n: u64,
    rank: usize,
    s: Vec<u64>,
    t: Vec<u64>,
}

impl PointedTables {
    fn s(&self, i: usize, j: usize) -> u64 {
        self.s[i * self.rank + j]
    }

    /// Symmetry, conjugation under duals, the character identity
    /// S_{i⊗j, x} = S_ix S_jx and balancing S_ij = θ_i θ_j / θ_{i*⊗j}.
    fn check(&self, ring: &FusionRing) -> Result<()> {
        let (n, r) = (self.n, self.rank);
        for i in 0..r {
            let di = ring.dual(i);
            for j in 0..r {
                if self.s(i, j) != self.s(j, i) {
                    return ModularData::violation(format!("S not symmetric at ({i}, {j})"));
                }
                if !(self.s(i, j) + self.s(di, j)).is_multiple_of(n) {
                    return ModularData::violation(format!("S[{i}][{j}] ≠ conj(S[dual {i}][{j}])"));
                }
            }
        }
        for i in 0..r {
            for j in i..r {
                let k = ring.product(i, j)[0].0;
                if let Some(x) = (0..r).find(|&x| self.s(k, x) != (self.s(i, x) + self.s(j, x)) % n) {
                    return ModularData::violation(format!("character identity fails at ({i}, {j}; column {x})"));
                }
                let k = ring.product(ring.dual(i), j)[0].0;
                if self.s(i, j) != (self.t[i] + self.t[j] + n - self.t[k]) % n {
                    return ModularData::violation(format!("balancing fails at ({i}, {j})"));
                }
            }
        }
        Ok(())
    }

    /// With the character identity and conjugation symmetry in place,
    /// Σ_x S_ix conj(S_jx) = Σ_x S_{i⊗j*, x}, so orthogonality reduces to
    /// row sums Σ_x S_kx = D² δ_k0.
    fn check_orthogonality(&self, ring: &FusionRing) -> Result<()> {
        let r = self.rank;
        for k in 0..r {
            let mut counts = vec![0i64; self.n as usize];
            for x in 0..r {
                counts[self.s(k, x) as usize] += 1;
            }
            let sum = Cyclotomic::from_raw_terms(
                self.n,
                counts
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(e, c)| (e as u64, BigRational::from_integer(c.into()))),
            );
            let expect = if k == 0 { ring.fpdim() as i64 } else { 0 };
            if sum != Cyclotomic::from_integer(expect) {
                return ModularData::violation(format!("orthogonality fails: row {k} of S sums to {sum}"));
            }
        }
        Ok(())
    }
}

/// Exact value of a sum of roots of unity.
/// Counts equal and nonzero exactly on a subgroup of ℤ_n of order > 1.
fn uniform_on_subgroup(counts: &[i64]) -> bool {
    let n = counts.len();
    let support = counts.iter().filter(|&&c| c != 0).count();
    if support < 2 || !n.is_multiple_of(support) {
        return false;
    }
    let step = n / support;
    let c0 = counts[0];
    c0 != 0 && (0..n).all(|e| counts[e] == if e % step == 0 { c0 } else { 0 })
}

fn phase_sum(phases: impl Iterator<Item = Phase>) -> Cyclotomic {
    let mut counts: HashMap<Phase, i64> = HashMap::new();
    for p in phases {
        *counts.entry(p).or_default() += 1;
    }
    let n = counts.keys().fold(1u64, |a, p| a.lcm(&p.order()));
    let one = Cyclotomic::one();
    let mut acc = CycloAccumulator::new(n);
    for (p, c) in counts {
        acc.add_scaled_product(c, &p.to_cyclotomic(), &one);
    }
    acc.finish()
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[derive(Serialize, Deserialize)]
struct ModularDataJson {
    #[serde(flatten)]
    ring: FusionRingJson,
    #[serde(rename = "S")]
    s: Vec<Vec<Cyclotomic>>,
    #[serde(rename = "T")]
    t: Vec<Cyclotomic>,
    #[serde(rename = "D2")]
    d2: u64,
}

impl ModularData {
    fn to_json_repr(&self) -> ModularDataJson {
        ModularDataJson {
            ring: FusionRingJson::from(&self.ring),
            s: self.s_matrix(),
            t: self.t.iter().map(|p| p.to_cyclotomic()).collect(),
            d2: self.global_dim(),
        }
    }

    fn from_json_repr(j: ModularDataJson) -> Result<Self> {
        let ring = FusionRing::try_from(j.ring)?;
        let t = j
            .t
            .iter()
            .map(|x| {
                x.as_root_of_unity()
                    .ok_or_else(|| Error::Parse(format!("twist {x} is not a root of unity")))
            })
            .collect::<Result<Vec<_>>>()?;
        if j.d2 != ring.fpdim() {
            return Err(Error::Validation(format!("D2 = {} but Σ d² = {}", j.d2, ring.fpdim())));
        }
        Self::new_unchecked(ring, j.s, t)
    }

    /// Parses JSON and validates only the fusion ring and shapes.
    pub fn from_json_unchecked(text: &str) -> Result<Self> {
        let j: ModularDataJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_repr(j)
    }
}

impl Serialize for ModularData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModularData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ModularDataJson::deserialize(d)?;
        let m = ModularData::from_json_repr(j).map_err(D::Error::custom)?;
        m.validate_modular().map_err(D::Error::custom)?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{FiniteAbelianGroup, FormVariant, QuadraticForm};

    fn metric(form: &QuadraticForm) -> ModularData {
        let g = form.group();
        let n = g.order();
        let ring = FusionRing::group_ring(g).unwrap();
        let s = (0..n)
            .map(|x| (0..n).map(|y| form.b(x, y).to_cyclotomic()).collect())
            .collect();
        ModularData::new(ring, s, form.values().to_vec()).unwrap()
    }

    fn z2(phi1: Phase) -> ModularData {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        metric(&QuadraticForm::new(g, vec![Phase::ONE, phi1]).unwrap())
    }

    fn ising(nu: i64) -> ModularData {
        let r2 = Cyclotomic::sqrt2();
        let one = Cyclotomic::one();
        let s = vec![
            vec![one.clone(), one.clone(), r2.clone()],
            vec![one.clone(), one.clone(), -&r2],
            vec![r2.clone(), -&r2, Cyclotomic::zero()],
        ];
        ModularData::new(FusionRing::ising(), s, vec![Phase::ONE, Phase::new(1, 2), Phase::new(nu, 16)]).unwrap()
    }

    #[test]
    fn metric_group_data_validates() {
        let m = metric(&QuadraticForm::standard(5, FormVariant::Residue).unwrap());
        m.verlinde_recover_all().unwrap();
        m.check_modular_relation().unwrap();
        assert!(m.is_nondegenerate());
        let m3 = metric(&QuadraticForm::standard(3, FormVariant::Residue).unwrap());
        assert_eq!(m3.s(1, 1), &Cyclotomic::root_of_unity(3, 2).unwrap());
    }

    #[test]
    fn ising_validates_and_recovers_fusion() {
        for nu in [1, 3, 5, 7, 9, 11, 13, 15] {
            let m = ising(nu);
            m.verlinde_recover_all().unwrap();
            m.check_modular_relation().unwrap();
            assert!(m.is_nondegenerate());
        }
        let m = ising(1);
        assert!(m.verlinde_coefficient(2, 2, 1).unwrap().is_one());
    }

    #[test]
    fn even_ising_twist_is_rejected_by_indicator() {
        let r2 = Cyclotomic::sqrt2();
        let one = Cyclotomic::one();
        let s = vec![
            vec![one.clone(), one.clone(), r2.clone()],
            vec![one.clone(), one.clone(), -&r2],
            vec![r2.clone(), -&r2, Cyclotomic::zero()],
        ];
        let t = vec![Phase::ONE, Phase::new(1, 2), Phase::new(2, 16)];
        let m = ModularData::new_unchecked(FusionRing::ising(), s.clone(), t.clone()).unwrap();
        // balancing and the modular relation both hold for θ_σ = ζ₈
        m.check_modular_relation().unwrap();
        assert!(m.frobenius_schur_indicator(2).is_zero());
        let err = ModularData::new(FusionRing::ising(), s, t).unwrap_err();
        assert!(err.to_string().contains("Frobenius–Schur"), "{err}");
    }

    #[test]
    fn tampered_s_is_rejected() {
        let m = ising(1);
        let mut s = m.s_matrix();
        s[2][2] = Cyclotomic::one();
        assert!(ModularData::new(FusionRing::ising(), s, m.twists().to_vec()).is_err());
        let mut s = m.s_matrix();
        s[1][2] = -&s[1][2];
        s[2][1] = s[1][2].clone();
        let err = ModularData::new(FusionRing::ising(), s, m.twists().to_vec()).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn centralizers_and_centers() {
        let m = ising(1);
        assert!(m.centralizes(0, 2));
        let eps = m.ring().generated([1]);
        assert_eq!(m.centralizer_of(&eps), eps);
        let svect = z2(Phase::new(1, 2));
        assert_eq!(svect.muger_center(), svect.ring().whole());
        assert!(!svect.is_nondegenerate());
        let semion = z2(Phase::new(1, 4));
        assert!(semion.is_nondegenerate());
        let f5 = metric(&QuadraticForm::standard(5, FormVariant::Residue).unwrap());
        assert!(f5.centralizer_of(&f5.ring().whole()).is_trivial());
    }

    #[test]
    fn symmetric_classification() {
        let svect = z2(Phase::new(1, 2));
        let c = svect.classify_symmetric(&svect.ring().whole()).unwrap();
        assert_eq!(c.kind, SymmetricKind::SuperTannakian);
        assert_eq!(c.witness, vec![1]);
        let rep = z2(Phase::ONE);
        assert_eq!(rep.classify_symmetric(&rep.ring().whole()).unwrap().kind, SymmetricKind::Tannakian);
        assert_eq!(
            rep.classify_symmetric(&FusionSubcategory::trivial()).unwrap().kind,
            SymmetricKind::Trivial
        );
        let m = ising(3);
        assert!(m.classify_symmetric(&m.ring().whole()).is_err());
    }

    #[test]
    fn deligne_products() {
        let m = ising(1);
        let triv = z2(Phase::ONE);
        let tr = metric(&QuadraticForm::new(FiniteAbelianGroup::trivial(), vec![Phase::ONE]).unwrap());
        let p = m.deligne(&tr).unwrap();
        assert_eq!(p.s_matrix(), m.s_matrix());
        let f3 = metric(&QuadraticForm::standard(3, FormVariant::Residue).unwrap());
        let q = m.deligne(&f3).unwrap();
        assert_eq!(q.global_dim(), 12);
        assert_eq!(q.ring().dimensional_grading().unwrap().order(), 2);
        assert_eq!(m.deligne(&triv).unwrap().global_dim(), 8);
    }

    #[test]
    fn prime_decompositions() {
        let z6 = FiniteAbelianGroup::cyclic(6).unwrap();
        let m = metric(&QuadraticForm::diagonal(z6, &[1]).unwrap());
        let lat = m.ring().enumerate_subcategories(64).unwrap();
        let dec = m.prime_decomposition(&lat).unwrap();
        let dims: Vec<u64> = dec.iter().map(|(_, s)| m.ring().fpdim_of(s)).collect();
        assert_eq!(dims, vec![2, 3]);
        let f5 = metric(&QuadraticForm::standard(5, FormVariant::Residue).unwrap());
        let i5 = ising(1).deligne(&f5).unwrap();
        let lat = i5.ring().enumerate_subcategories(64).unwrap();
        let dims: Vec<u64> = i5
            .prime_decomposition(&lat)
            .unwrap()
            .iter()
            .map(|(_, s)| i5.ring().fpdim_of(s))
            .collect();
        assert_eq!(dims, vec![4, 5]);
        let lat = f5.ring().enumerate_subcategories(64).unwrap();
        assert_eq!(f5.prime_decomposition(&lat).unwrap().len(), 1);
    }

    #[test]
    fn tannakian_lists() {
        let f5 = metric(&QuadraticForm::standard(5, FormVariant::Residue).unwrap());
        let lat = f5.ring().enumerate_subcategories(64).unwrap();
        assert_eq!(f5.tannakian_subcategories(&lat).unwrap(), vec![FusionSubcategory::trivial()]);
        let m = ising(1);
        let lat = m.ring().enumerate_subcategories(64).unwrap();
        assert_eq!(m.tannakian_subcategories(&lat).unwrap().len(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let m = ising(5);
        let s = serde_json::to_string(&m).unwrap();
        let back: ModularData = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn pointed_verlinde_agrees_with_direct_sum() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        let m = metric(&QuadraticForm::diagonal(g, &[1, 1]).unwrap());
        m.verlinde_recover_all().unwrap();
        let r = m.rank();
        for (i, j, k) in [(1, 2, 3), (3, 5, 0), (7, 7, 6), (4, 6, 2)] {
            let direct = m.verlinde_coefficient(i, j, k).unwrap();
            assert_eq!(direct.as_integer(), Some(m.ring().n(i, j, k).into()), "({i},{j},{k}) of {r}");
        }
    }

    #[test]
    fn pointed_verlinde_detects_tampering() {
        let g = FiniteAbelianGroup::cyclic(3).unwrap();
        let good = metric(&QuadraticForm::standard(3, FormVariant::Residue).unwrap());
        let mut s = good.s_matrix();
        s[1][2] = Cyclotomic::one();
        s[2][1] = Cyclotomic::one();
        let bad = ModularData::new_unchecked(FusionRing::group_ring(&g).unwrap(), s, good.twists().to_vec()).unwrap();
        assert!(bad.verlinde_recover_all().is_err());
    }

    #[test]
    fn uniform_histograms() {
        assert!(uniform_on_subgroup(&[2, 2, 2]));
        assert!(uniform_on_subgroup(&[3, 0, 3, 0]));
        assert!(!uniform_on_subgroup(&[3, 0, 0, 0]));
        assert!(!uniform_on_subgroup(&[0, 3, 0, 3]));
        assert!(!uniform_on_subgroup(&[2, 1, 2, 1]));
        assert!(!uniform_on_subgroup(&[1, 1, 0, 1, 1, 0]));
    }
}
