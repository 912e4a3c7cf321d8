//! Commutative fusion rings and the structure theory that depends only on the
//! Grothendieck ring: Frobenius–Perron dimensions, generated and adjoint
//! subcategories, central series, gradings and the subcategory lattice.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::abelian::{invariant_factors_of_table, FiniteAbelianGroup};
use crate::error::{Error, Result};

/// Default bound on the number of subcategories enumerated.
pub const DEFAULT_LATTICE_LIMIT: usize = 512;

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITERS: usize = 100_000;
/// Distance from an integer below which d² is certified.
pub const CERT_TOL: f64 = 1e-9;

/// A based commutative ring with unit 0, stored as sparse rows
/// `products[i * rank + j] = [(k, N_ij^k), …]` sorted by k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    dual: Vec<usize>,
    products: Vec<Vec<(usize, u32)>>,
    dim_sq: Vec<u64>,
}

/// A closed set of simple objects, always containing 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FusionSubcategory {
    members: Vec<usize>,
}

impl FusionSubcategory {
    pub fn trivial() -> Self {
        FusionSubcategory { members: vec![0] }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }

    fn from_mask(mask: &[bool]) -> Self {
        FusionSubcategory {
            members: mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect(),
        }
    }

    fn mask(&self, rank: usize) -> Vec<bool> {
        let mut m = vec![false; rank];
        for &i in &self.members {
            m[i] = true;
        }
        m
    }
}

/// Frobenius–Perron dimension of a simple object with its certificate d² = `squared`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FpDim {
    pub value: f64,
    pub squared: u64,
}

/// Partition of the simples by the universal grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalGrading {
    /// Component index of each simple; component 0 is the adjoint subcategory.
    pub component: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// Multiplication table of the grading group on component indices.
    pub table: Vec<Vec<usize>>,
    pub invariant_factors: Vec<u64>,
}

impl UniversalGrading {
    pub fn order(&self) -> usize {
        self.classes.len()
    }
}

/// Grading by square-free parts of squared dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionalGrading {
    /// Square-free part of d² for each simple.
    pub parts: Vec<u64>,
    /// Elements of E, as square-free integers under multiplication modulo squares.
    pub elements: Vec<u64>,
}

impl DimensionalGrading {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

fn squarefree_part(mut n: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * n
}

fn squarefree_mul(a: u64, b: u64) -> u64 {
    let g = num_integer::gcd(a, b);
    (a / g) * (b / g)
}

/// First index where two sparse sums differ.
fn sparse_difference(a: &mut Vec<(usize, u64)>, b: &mut Vec<(usize, u64)>) -> Option<usize> {
    fn merge(v: &mut Vec<(usize, u64)>) {
        v.sort_unstable();
        v.dedup_by(|x, y| {
            if x.0 == y.0 {
                y.1 += x.1;
                true
            } else {
                false
            }
        });
    }
    if a.len() == 1 && b.len() == 1 {
        return (a[0] != b[0]).then(|| a[0].0.min(b[0].0));
    }
    merge(a);
    merge(b);
    a.iter()
        .zip(b.iter())
        .find(|(x, y)| x != y)
        .map(|(x, y)| x.0.min(y.0))
        .or_else(|| (a.len() != b.len()).then(|| a.get(b.len()).or(b.get(a.len())).expect("longer side").0))
}

fn is_perfect_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
}

impl FusionRing {
    /// Builds and fully validates a ring from sparse `(i, j, k, N)` entries.
    pub fn new(labels: Vec<String>, dual: Vec<usize>, entries: &[(usize, usize, usize, u32)]) -> Result<Self> {
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::Shape("fusion ring of rank 0".into()));
        }
        if dual.len() != rank {
            return Err(Error::Shape("dual permutation has wrong length".into()));
        }
        if let Some(&d) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::Shape(format!("dual index {d} out of range")));
        }
        let mut products = vec![Vec::new(); rank * rank];
        for &(i, j, k, v) in entries {
            if i >= rank || j >= rank || k >= rank {
                return Err(Error::Shape(format!("entry ({i},{j},{k}) out of range")));
            }
            if v > 0 {
                products[i * rank + j].push((k, v));
            }
        }
        for row in &mut products {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Shape("duplicate fusion entry".into()));
            }
        }
        let mut ring = FusionRing {
            labels,
            dual,
            products,
            dim_sq: Vec::new(),
        };
        ring.validate()?;
        ring.dim_sq = ring.certify_dims()?;
        Ok(ring)
    }

    /// Group ring of a finite abelian group, labelled by element coordinates.
    pub fn group_ring(group: &FiniteAbelianGroup) -> Result<Self> {
        let n = group.order();
        group.check_limit(crate::abelian::DEFAULT_ELEMENT_LIMIT)?;
        let labels = (0..n).map(|a| element_label(group, a)).collect();
        let dual = (0..n).map(|a| group.neg(a)).collect();
        let entries: Vec<_> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| (a, b, group.add(a, b), 1))
            .collect();
        Self::new(labels, dual, &entries)
    }

    /// The rank-3 ring {1, ε, σ} with σ² = 1 + ε.
    pub fn ising() -> Self {
        let labels = vec!["1".to_string(), "ε".to_string(), "σ".to_string()];
        let mut entries = Vec::new();
        for j in 0..3 {
            entries.push((0, j, j, 1));
            if j > 0 {
                entries.push((j, 0, j, 1));
            }
        }
        entries.extend_from_slice(&[(1, 1, 0, 1), (1, 2, 2, 1), (2, 1, 2, 1), (2, 2, 0, 1), (2, 2, 1, 1)]);
        Self::new(labels, vec![0, 1, 2], &entries).expect("Ising ring is valid")
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// Constituents of i ⊗ j with multiplicities.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.products[i * self.rank() + j]
    }

    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        let row = self.product(i, j);
        row.binary_search_by_key(&k, |e| e.0).map(|p| row[p].1).unwrap_or(0)
    }

    /// All nonzero entries, in lexicographic (i, j, k) order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, u32)> {
        let r = self.rank();
        (0..r * r)
            .flat_map(|ij| self.products[ij].iter().map(move |&(k, v)| (ij / r, ij % r, k, v)))
            .collect()
    }

    /// Checks unit, duality, rigidity, commutativity and associativity.
    pub fn validate(&self) -> Result<()> {
        let r = self.rank();
        let fail = |msg: String| Err(Error::Validation(msg));
        for i in 0..r {
            if self.dual[self.dual[i]] != i {
                return fail(format!("dual is not an involution at {i}"));
            }
        }
        if self.dual[0] != 0 {
            return fail("unit is not self-dual".into());
        }
        for j in 0..r {
            if self.product(0, j) != [(j, 1)] || self.product(j, 0) != [(j, 1)] {
                return fail(format!("unit axiom fails at j = {j}"));
            }
        }
        for i in 0..r {
            for j in 0..r {
                let expect = u32::from(j == self.dual[i]);
                if self.n(i, j, 0) != expect {
                    return fail(format!("N[{i}][{j}][0] = {} but expected {expect}", self.n(i, j, 0)));
                }
                if self.product(i, j) != self.product(j, i) {
                    return fail(format!("commutativity fails at ({i}, {j})"));
                }
                for &(k, v) in self.product(i, j) {
                    if self.n(self.dual[j], self.dual[i], self.dual[k]) != v {
                        return fail(format!("duality symmetry fails at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        let mut left: Vec<(usize, u64)> = Vec::new();
        let mut right: Vec<(usize, u64)> = Vec::new();
        for i in 1..r {
            for j in 1..r {
                for k in 1..r {
                    left.clear();
                    right.clear();
                    for &(m, a) in self.product(i, j) {
                        for &(l, b) in self.product(m, k) {
                            left.push((l, u64::from(a) * u64::from(b)));
                        }
                    }
                    for &(m, a) in self.product(j, k) {
                        for &(l, b) in self.product(i, m) {
                            right.push((l, u64::from(a) * u64::from(b)));
                        }
                    }
                    if let Some(l) = sparse_difference(&mut left, &mut right) {
                        return fail(format!("associativity fails at ({i}, {j}, {k}, {l})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Power iteration on Σ_i L_i, which has strictly positive entries in a
    /// rigid ring; its Perron vector is the dimension vector.
    fn perron_vector(&self) -> Vec<f64> {
        let r = self.rank();
        let mut v = vec![1.0f64; r];
        for _ in 0..POWER_MAX_ITERS {
            let mut w = vec![0.0f64; r];
            for (ij, row) in self.products.iter().enumerate() {
                let j = ij % r;
                for &(k, n) in row {
                    w[k] += f64::from(n) * v[j];
                }
            }
            let norm = w[0];
            w.iter_mut().for_each(|x| *x /= norm);
            let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            v = w;
            if delta < POWER_TOL {
                break;
            }
        }
        v
    }

    fn certify_dims(&self) -> Result<Vec<u64>> {
        self.perron_vector()
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let sq = d * d;
                let m = sq.round();
                if (sq - m).abs() < CERT_TOL && m >= 1.0 {
                    Ok(m as u64)
                } else {
                    Err(Error::Validation(format!(
                        "FP dimension of {} is {d}, whose square is not within {CERT_TOL} of an integer",
                        self.labels[i]
                    )))
                }
            })
            .collect()
    }

    pub fn fpdim_object(&self, i: usize) -> FpDim {
        FpDim {
            value: (self.dim_sq[i] as f64).sqrt(),
            squared: self.dim_sq[i],
        }
    }

    /// Certified d_i² for all simples.
    pub fn dim_squares(&self) -> &[u64] {
        &self.dim_sq
    }

    pub fn fpdim(&self) -> u64 {
        self.dim_sq.iter().sum()
    }

    pub fn fpdim_of(&self, s: &FusionSubcategory) -> u64 {
        s.members.iter().map(|&i| self.dim_sq[i]).sum()
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.dim_sq[i] == 1
    }

    pub fn is_pointed(&self) -> bool {
        self.dim_sq.iter().all(|&d| d == 1)
    }

    pub fn is_integral(&self) -> bool {
        self.dim_sq.iter().all(|&d| is_perfect_square(d))
    }

    pub fn is_strictly_weakly_integral(&self) -> bool {
        !self.is_integral()
    }

    pub fn whole(&self) -> FusionSubcategory {
        FusionSubcategory {
            members: (0..self.rank()).collect(),
        }
    }

    /// Closes `mask` (already closed on its current members) after adding `queue`.
    fn close(&self, mask: &mut [bool], members: &mut Vec<usize>, seed: VecDeque<usize>) {
        let mut queue = VecDeque::new();
        for q in seed {
            if !mask[q] {
                mask[q] = true;
                members.push(q);
                queue.push_back(q);
            }
        }
        while let Some(a) = queue.pop_front() {
            let d = self.dual[a];
            if !mask[d] {
                mask[d] = true;
                members.push(d);
                queue.push_back(d);
            }
            let mut idx = 0;
            while idx < members.len() {
                let b = members[idx];
                for &(k, _) in self.product(a, b) {
                    if !mask[k] {
                        mask[k] = true;
                        members.push(k);
                        queue.push_back(k);
                    }
                }
                idx += 1;
            }
        }
    }

    /// Least subcategory containing `seed`.
    pub fn generated(&self, seed: impl IntoIterator<Item = usize>) -> FusionSubcategory {
        let mut mask = vec![false; self.rank()];
        mask[0] = true;
        let mut members = vec![0];
        self.close(&mut mask, &mut members, seed.into_iter().collect());
        FusionSubcategory::from_mask(&mask)
    }

    /// Least subcategory containing `s` (closed) and `x`.
    pub fn extend(&self, s: &FusionSubcategory, x: usize) -> FusionSubcategory {
        let mut mask = s.mask(self.rank());
        let mut members = s.members.clone();
        self.close(&mut mask, &mut members, VecDeque::from([x]));
        FusionSubcategory::from_mask(&mask)
    }

    pub fn join(&self, a: &FusionSubcategory, b: &FusionSubcategory) -> FusionSubcategory {
        let mut mask = a.mask(self.rank());
        let mut members = a.members.clone();
        self.close(&mut mask, &mut members, b.members.iter().copied().collect());
        FusionSubcategory::from_mask(&mask)
    }

    /// Checks closure of an explicit member set.
    pub fn subcategory(&self, members: impl IntoIterator<Item = usize>) -> Result<FusionSubcategory> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.iter().any(|&i| i >= self.rank()) {
            return Err(Error::Shape("subcategory member out of range".into()));
        }
        let s = FusionSubcategory {
            members: set.into_iter().collect(),
        };
        if self.generated(s.members.iter().copied()) != s {
            return Err(Error::Validation(format!("{:?} is not closed", s.members)));
        }
        Ok(s)
    }

    /// Generated by all constituents of X ⊗ X* for X in `s`.
    pub fn adjoint(&self, s: &FusionSubcategory) -> FusionSubcategory {
        let seed: BTreeSet<usize> = s
            .members
            .iter()
            .flat_map(|&i| self.product(i, self.dual[i]).iter().map(|e| e.0))
            .collect();
        self.generated(seed)
    }

    /// s ⊇ s_ad ⊇ (s_ad)_ad ⊇ … up to and including the stable term.
    pub fn central_series(&self, s: &FusionSubcategory) -> Vec<FusionSubcategory> {
        let mut series = vec![s.clone()];
        loop {
            let next = self.adjoint(series.last().expect("nonempty"));
            if &next == series.last().expect("nonempty") {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_nilpotent_sub(&self, s: &FusionSubcategory) -> bool {
        self.central_series(s).last().is_some_and(|t| t.is_trivial())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_nilpotent_sub(&self.whole())
    }

    /// Number of strict steps to the trivial subcategory, or None if the
    /// series stabilizes above it.
    pub fn nilpotency_class_sub(&self, s: &FusionSubcategory) -> Option<usize> {
        let series = self.central_series(s);
        series.last().is_some_and(|t| t.is_trivial()).then(|| series.len() - 1)
    }

    pub fn nilpotency_class(&self) -> Option<usize> {
        self.nilpotency_class_sub(&self.whole())
    }

    /// n-th term of the central series (n = 0 gives `s`).
    pub fn central_term(&self, s: &FusionSubcategory, n: usize) -> FusionSubcategory {
        let mut t = s.clone();
        for _ in 0..n {
            t = self.adjoint(&t);
        }
        t
    }

    /// Generated by all X with every constituent of X ⊗ X* in `s`.
    pub fn commutator(&self, s: &FusionSubcategory) -> FusionSubcategory {
        let seed: Vec<usize> = (0..self.rank())
            .filter(|&i| self.product(i, self.dual[i]).iter().all(|e| s.contains(e.0)))
            .collect();
        self.generated(seed)
    }

    pub fn pointed_part(&self) -> FusionSubcategory {
        FusionSubcategory {
            members: (0..self.rank()).filter(|&i| self.is_invertible(i)).collect(),
        }
    }

    pub fn integral_part(&self) -> FusionSubcategory {
        FusionSubcategory {
            members: (0..self.rank()).filter(|&i| is_perfect_square(self.dim_sq[i])).collect(),
        }
    }

    pub fn universal_grading(&self) -> Result<UniversalGrading> {
        let r = self.rank();
        let ad = self.adjoint(&self.whole());
        let mut component = vec![usize::MAX; r];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..r {
            if component[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let class: Vec<usize> = (i..r)
                .filter(|&j| self.product(i, self.dual[j]).iter().any(|e| ad.contains(e.0)))
                .collect();
            for &j in &class {
                if component[j] != usize::MAX {
                    return Err(Error::Validation(format!(
                        "grading classes overlap at {}",
                        self.labels[j]
                    )));
                }
                component[j] = c;
            }
            classes.push(class);
        }
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let mut table = vec![vec![0; classes.len()]; classes.len()];
        for (a, &ia) in reps.iter().enumerate() {
            for (b, &ib) in reps.iter().enumerate() {
                let target = component[self.product(ia, ib)[0].0];
                table[a][b] = target;
            }
        }
        // well-definedness on every pair of simples
        for i in 0..r {
            for j in 0..r {
                let expect = table[component[i]][component[j]];
                if let Some(&(k, _)) = self.product(i, j).iter().find(|e| component[e.0] != expect) {
                    return Err(Error::Validation(format!(
                        "grading product ill-defined: {} ⊗ {} contains {}",
                        self.labels[i], self.labels[j], self.labels[k]
                    )));
                }
            }
        }
        let invariant_factors = invariant_factors_of_table(&table, 0);
        Ok(UniversalGrading {
            component,
            classes,
            table,
            invariant_factors,
        })
    }

    pub fn dimensional_grading(&self) -> Result<DimensionalGrading> {
        let parts: Vec<u64> = self.dim_sq.iter().map(|&d| squarefree_part(d)).collect();
        let mut elements: BTreeSet<u64> = BTreeSet::from([1]);
        loop {
            let mut grown = elements.clone();
            for &a in &elements {
                for &p in &parts {
                    grown.insert(squarefree_mul(a, p));
                }
            }
            if grown == elements {
                break;
            }
            elements = grown;
        }
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                let expect = squarefree_mul(parts[i], parts[j]);
                if let Some(&(k, _)) = self.product(i, j).iter().find(|e| parts[e.0] != expect) {
                    return Err(Error::Validation(format!(
                        "dimensional grading fails: {} ⊗ {} contains {}",
                        self.labels[i], self.labels[j], self.labels[k]
                    )));
                }
            }
        }
        Ok(DimensionalGrading {
            parts,
            elements: elements.into_iter().collect(),
        })
    }

    /// Not pointed, and products of non-invertible simples are sums of invertibles.
    pub fn is_generalized_tambara_yamagami(&self) -> bool {
        if self.is_pointed() {
            return false;
        }
        let non_inv: Vec<usize> = (0..self.rank()).filter(|&i| !self.is_invertible(i)).collect();
        non_inv.iter().all(|&i| {
            non_inv
                .iter()
                .all(|&j| self.product(i, j).iter().all(|e| self.is_invertible(e.0)))
        })
    }

    /// All subcategories, sorted by (size, members).
    pub fn enumerate_subcategories(&self, limit: usize) -> Result<Vec<FusionSubcategory>> {
        let r = self.rank();
        let cyclic: Vec<FusionSubcategory> = (0..r).map(|x| self.generated([x])).collect();
        let mut seen: HashSet<FusionSubcategory> = HashSet::new();
        let start = FusionSubcategory::trivial();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            let mut tried: HashSet<&FusionSubcategory> = HashSet::new();
            for x in 0..r {
                if s.contains(x) || cyclic[x].is_subset_of(&s) || !tried.insert(&cyclic[x]) {
                    continue;
                }
                let t = self.join(&s, &cyclic[x]);
                if !seen.contains(&t) {
                    if seen.len() >= limit {
                        return Err(Error::Limit(format!("more than {limit} subcategories")));
                    }
                    seen.insert(t.clone());
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<FusionSubcategory> = seen.into_iter().collect();
        out.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
        Ok(out)
    }

    /// Join of all nilpotent members of `lattice`.
    pub fn maximal_nilpotent_subcategory(&self, lattice: &[FusionSubcategory]) -> Result<FusionSubcategory> {
        let mut acc = FusionSubcategory::trivial();
        for s in lattice.iter().filter(|s| self.is_nilpotent_sub(s)) {
            acc = self.join(&acc, s);
        }
        if !self.is_nilpotent_sub(&acc) {
            return Err(Error::Validation(format!(
                "join of nilpotent subcategories {:?} is not nilpotent",
                acc.members
            )));
        }
        Ok(acc)
    }

    /// Ring of pairs; index (a, b) ↦ a·rank(other) + b.
    pub fn deligne(&self, other: &FusionRing) -> FusionRing {
        let (r1, r2) = (self.rank(), other.rank());
        let labels = (0..r1 * r2)
            .map(|ab| format!("{}⊠{}", self.labels[ab / r2], other.labels[ab % r2]))
            .collect();
        let dual = (0..r1 * r2)
            .map(|ab| self.dual[ab / r2] * r2 + other.dual[ab % r2])
            .collect();
        let r = r1 * r2;
        let mut products = vec![Vec::new(); r * r];
        for x in 0..r {
            for y in 0..r {
                let row = &mut products[x * r + y];
                for &(k1, n1) in self.product(x / r2, y / r2) {
                    for &(k2, n2) in other.product(x % r2, y % r2) {
                        row.push((k1 * r2 + k2, n1 * n2));
                    }
                }
            }
        }
        let dim_sq = (0..r).map(|ab| self.dim_sq[ab / r2] * other.dim_sq[ab % r2]).collect();
        FusionRing {
            labels,
            dual,
            products,
            dim_sq,
        }
    }
}

pub(crate) fn element_label(group: &FiniteAbelianGroup, a: usize) -> String {
    let g = group.element(a);
    match g.coords.len() {
        0 => "0".into(),
        1 => g.coords[0].to_string(),
        _ => g.to_string(),
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct FusionRingJson {
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Vec<(usize, usize, usize, u32)>,
}

impl From<&FusionRing> for FusionRingJson {
    fn from(r: &FusionRing) -> Self {
        FusionRingJson {
            labels: r.labels.clone(),
            dual: r.dual.clone(),
            n: r.entries(),
        }
    }
}

impl TryFrom<FusionRingJson> for FusionRing {
    type Error = Error;
    fn try_from(j: FusionRingJson) -> Result<Self> {
        FusionRing::new(j.labels, j.dual, &j.n)
    }
}

impl Serialize for FusionRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FusionRingJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FusionRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FusionRingJson::deserialize(d)?;
        FusionRing::try_from(j).map_err(serde::de::Error::custom)
    }
}
