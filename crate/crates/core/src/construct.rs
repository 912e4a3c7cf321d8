//! Builders for metric-group, Ising and twisted-double modular data, their
//! Deligne products, and the deterministic instance zoo.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::{Cocycle2, Cocycle3, CocycleSpec, FiniteAbelianGroup, FormVariant, GroupElement, QuadraticForm};
use crate::cyclo::{Cyclotomic, Phase};
use crate::error::{Error, Result};
use crate::fusion::{element_label, FusionRing, DEFAULT_LATTICE_LIMIT};
use crate::modular::ModularData;

/// Pointed modular data of a metric group: S = b, T = φ.
pub fn metric_group_category(form: &QuadraticForm) -> Result<ModularData> {
    let g = form.group();
    let n = g.order();
    let ring = FusionRing::group_ring(g)?;
    let s = (0..n)
        .map(|x| (0..n).map(|y| form.b(x, y).to_cyclotomic()).collect())
        .collect();
    ModularData::new(ring, s, form.values().to_vec())
}

/// The Ising category with θ_σ = ζ₁₆^ν, ν odd.
pub fn ising_category(twist_index: i64) -> Result<ModularData> {
    if twist_index.rem_euclid(2) == 0 {
        return Err(Error::Domain(format!("Ising twist index {twist_index} must be odd")));
    }
    let r2 = Cyclotomic::sqrt2();
    let one = Cyclotomic::one();
    let s = vec![
        vec![one.clone(), one.clone(), r2.clone()],
        vec![one.clone(), one, -&r2],
        vec![r2.clone(), -&r2, Cyclotomic::zero()],
    ];
    let t = vec![Phase::ONE, Phase::new(1, 2), Phase::new(twist_index, 16)];
    ModularData::new(FusionRing::ising(), s, t)
}

/// Simple-object count of one sector g of Rep(D^ω G).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorCensus {
    pub sector: GroupElement,
    pub radical_order: usize,
    pub simples: usize,
    /// Squared dimension of each simple in the sector.
    pub dim_squared: u64,
    pub slant_symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCensus {
    pub group: FiniteAbelianGroup,
    pub sectors: Vec<SectorCensus>,
    pub total_simples: usize,
    pub total_dim_squared: u64,
    pub pointed: bool,
}

#[derive(Clone, Debug)]
pub struct TwistedDouble {
    pub census: DoubleCensus,
    /// Built only for pointed doubles.
    pub modular: Option<ModularData>,
    pub note: Option<String>,
}

pub const NOT_CONSTRUCTED: &str = "modular data not constructed: double is not pointed";

/// Sector census of Rep(D^ω G) from the slant 2-cocycles.
pub fn twisted_double_census(omega: &Cocycle3) -> Result<(DoubleCensus, Vec<Cocycle2>)> {
    let g = omega.group();
    let n = g.order();
    let mut sectors = Vec::with_capacity(n);
    let mut slants = Vec::with_capacity(n);
    for x in 0..n {
        let beta = omega.slant(x)?;
        let rad = beta.radical_indices()?;
        sectors.push(SectorCensus {
            sector: g.element(x),
            radical_order: rad.len(),
            simples: rad.len(),
            dim_squared: (n / rad.len()) as u64,
            slant_symmetric: beta.is_symmetric(),
        });
        slants.push(beta);
    }
    let total_simples = sectors.iter().map(|s| s.simples).sum();
    let total_dim_squared = sectors.iter().map(|s| s.simples as u64 * s.dim_squared).sum();
    let pointed = sectors.iter().all(|s| s.dim_squared == 1);
    Ok((
        DoubleCensus {
            group: g.clone(),
            sectors,
            total_simples,
            total_dim_squared,
            pointed,
        },
        slants,
    ))
}

/// Rep(D^ω G) for abelian G: the census always, modular data when pointed.
pub fn twisted_double(omega: &Cocycle3) -> Result<TwistedDouble> {
    let (census, slants) = twisted_double_census(omega)?;
    if !census.pointed {
        return Ok(TwistedDouble {
            census,
            modular: None,
            note: Some(NOT_CONSTRUCTED.into()),
        });
    }
    let modular = pointed_double_modular(omega, &slants)?;
    Ok(TwistedDouble {
        census,
        modular: Some(modular),
        note: None,
    })
}

/// Index of the genuine character equal to `lambda`, if it is one.
fn character_index(g: &FiniteAbelianGroup, lambda: &[Phase]) -> Option<usize> {
    let mut coords = Vec::with_capacity(g.rank());
    for (i, &m) in g.factors().iter().enumerate() {
        let v = lambda[g.generator(i)];
        if m % v.order() != 0 {
            return None;
        }
        coords.push((v.num() * (m / v.order())) as i64);
    }
    let k = g.index_of(&g.reduce(&coords).ok()?).ok()?;
    (0..g.order()).all(|x| g.character(k, x) == lambda[x]).then_some(k)
}

/// Simple (g, χ_g·λ_k) has index g·|G| + k, with χ_g a fixed solution of
/// χ(x)χ(y) = β_g(x, y)χ(x+y).
fn pointed_double_modular(omega: &Cocycle3, slants: &[Cocycle2]) -> Result<ModularData> {
    let g = omega.group();
    let n = g.order();
    let base: Vec<Vec<Phase>> = slants
        .iter()
        .enumerate()
        .map(|(x, b)| {
            b.projective_character()
                .ok_or_else(|| Error::Validation(format!("sector {} has no 1-dimensional projective character", g.element(x))))
        })
        .collect::<Result<_>>()?;
    let r = n * n;
    let chi = |i: usize, x: usize| base[i / n][x] * g.character(i % n, x);
    let mut entries = Vec::with_capacity(r * r);
    let mut dual = vec![usize::MAX; r];
    for i in 0..r {
        for j in 0..r {
            let (a, b) = (i / n, j / n);
            let sum = g.add(a, b);
            let lambda: Vec<Phase> = (0..n)
                .map(|x| chi(i, x) * chi(j, x) * slants[x].value(a, b) / base[sum][x])
                .collect();
            let k = character_index(g, &lambda).ok_or_else(|| {
                Error::Validation(format!(
                    "fused function in sector {} is not projective for its slant cocycle",
                    g.element(sum)
                ))
            })?;
            let target = sum * n + k;
            if target == 0 {
                dual[i] = j;
            }
            entries.push((i, j, target, 1));
        }
    }
    let labels = (0..r)
        .map(|i| format!("({};{})", element_label(g, i / n), element_label(g, i % n)))
        .collect();
    let ring = FusionRing::new(labels, dual, &entries)?;
    let t: Vec<Phase> = (0..r).map(|i| chi(i, i / n)).collect();
    let s_entry = |i: usize, j: usize| {
        let (a, b) = (i / n, j / n);
        let eps = slants[g.add(a, b)].value(a, b) / (slants[a].value(a, b) * slants[b].value(a, b));
        chi(i, b) * chi(j, a) * eps
    };
    let s: Vec<Vec<Cyclotomic>> = (0..r)
        .map(|i| (0..r).map(|j| s_entry(i, j).to_cyclotomic()).collect())
        .collect();
    match ModularData::new(ring.clone(), s, t.clone()) {
        Ok(m) => Ok(m),
        Err(first) => {
            let s_conj = (0..r)
                .map(|i| (0..r).map(|j| s_entry(i, j).inv().to_cyclotomic()).collect())
                .collect();
            ModularData::new(ring, s_conj, t).map_err(|second| {
                Error::Validation(format!(
                    "twisted double S/T rejected under both conventions: {first}; conjugate: {second}"
                ))
            })
        }
    }
}

/// A quadratic form description: a standard form on ℤ_p, a diagonal form
/// φ(x) = ∏ ζ_{2mᵢ}^{kᵢxᵢ²}, or φ(1) on ℤ₂.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FormSpec {
    Standard(FormVariant),
    Diagonal(Vec<i64>),
    Value(Phase),
}

impl FromStr for FormSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "residue" => return Ok(FormSpec::Standard(FormVariant::Residue)),
            "nonresidue" => return Ok(FormSpec::Standard(FormVariant::Nonresidue)),
            _ => {}
        }
        if let Some(ks) = s.strip_prefix("k:") {
            let ks = ks
                .split(',')
                .map(|k| k.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad form coefficient {k:?}"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(FormSpec::Diagonal(ks));
        }
        if let Some(v) = s.strip_prefix("value:") {
            return Ok(FormSpec::Value(parse_unit_value(v)?));
        }
        Err(Error::Parse(format!("unknown form {s:?}")))
    }
}

/// Parses one of 1, -1, i, -i.
pub fn parse_unit_value(v: &str) -> Result<Phase> {
    match v.trim() {
        "1" => Ok(Phase::ONE),
        "-1" | "−1" => Ok(Phase::new(1, 2)),
        "i" => Ok(Phase::new(1, 4)),
        "-i" | "−i" => Ok(Phase::new(3, 4)),
        other => Err(Error::Parse(format!("form value {other:?} is not one of 1, -1, i, -i"))),
    }
}

impl fmt::Display for FormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormSpec::Standard(FormVariant::Residue) => f.write_str("residue"),
            FormSpec::Standard(FormVariant::Nonresidue) => f.write_str("nonresidue"),
            FormSpec::Diagonal(ks) => {
                let parts: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                write!(f, "k:{}", parts.join(","))
            }
            FormSpec::Value(p) => f.write_str(match (p.num(), p.order()) {
                (0, _) => "value:1",
                (1, 2) => "value:-1",
                (1, 4) => "value:i",
                _ => "value:-i",
            }),
        }
    }
}

impl FormSpec {
    pub fn build(&self, group: &FiniteAbelianGroup) -> Result<QuadraticForm> {
        match self {
            FormSpec::Standard(v) => {
                if group.factors().len() != 1 {
                    return Err(Error::Shape(format!("standard forms live on ℤ_p, not {group}")));
                }
                QuadraticForm::standard(group.factors()[0], *v)
            }
            FormSpec::Diagonal(ks) => QuadraticForm::diagonal(group.clone(), ks),
            FormSpec::Value(p) => {
                if group.factors() != [2] {
                    return Err(Error::Shape(format!("form values are given on ℤ₂, not {group}")));
                }
                QuadraticForm::new(group.clone(), vec![Phase::ONE, *p])
            }
        }
    }
}

/// Parameters of one zoo instance; mirrors the CLI construct flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ZooSpec {
    MetricGroup {
        #[serde(with = "as_string")]
        group: FiniteAbelianGroup,
        #[serde(with = "as_string")]
        form: FormSpec,
    },
    Ising {
        twist: i64,
    },
    TwistedDouble {
        #[serde(with = "as_string")]
        group: FiniteAbelianGroup,
        #[serde(with = "as_string")]
        cocycle: CocycleSpec,
    },
    Product {
        factors: Vec<ZooSpec>,
    },
}

mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ZooSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZooSpec::MetricGroup { group, form } => write!(f, "metric[{group};{form}]"),
            ZooSpec::Ising { twist } => write!(f, "ising[{twist}]"),
            ZooSpec::TwistedDouble { group, cocycle } => write!(f, "double[{group};{cocycle}]"),
            ZooSpec::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|s| s.to_string()).collect();
                f.write_str(&parts.join(" ⊠ "))
            }
        }
    }
}

impl ZooSpec {
    pub fn metric(group: &str, form: &str) -> Self {
        ZooSpec::MetricGroup {
            group: group.parse().expect("static group"),
            form: form.parse().expect("static form"),
        }
    }

    pub fn double(group: &str, cocycle: &str) -> Self {
        ZooSpec::TwistedDouble {
            group: group.parse().expect("static group"),
            cocycle: cocycle.parse().expect("static cocycle"),
        }
    }

    pub fn product(factors: Vec<ZooSpec>) -> Self {
        ZooSpec::Product { factors }
    }

    /// Rank of the resulting data, computed without building it.
    pub fn rank(&self) -> usize {
        match self {
            ZooSpec::MetricGroup { group, .. } => group.order(),
            ZooSpec::Ising { .. } => 3,
            ZooSpec::TwistedDouble { group, .. } => group.order() * group.order(),
            ZooSpec::Product { factors } => factors.iter().map(|f| f.rank()).product(),
        }
    }

    /// Largest abelian group the construction is built over.
    pub fn group_order(&self) -> usize {
        match self {
            ZooSpec::MetricGroup { group, .. } | ZooSpec::TwistedDouble { group, .. } => group.order(),
            ZooSpec::Ising { .. } => 1,
            ZooSpec::Product { factors } => factors.iter().map(|f| f.group_order()).max().unwrap_or(1),
        }
    }

    pub fn build(&self) -> Result<ModularData> {
        match self {
            ZooSpec::MetricGroup { group, form } => metric_group_category(&form.build(group)?),
            ZooSpec::Ising { twist } => ising_category(*twist),
            ZooSpec::TwistedDouble { group, cocycle } => {
                let omega = Cocycle3::from_spec(group, cocycle)?;
                let d = twisted_double(&omega)?;
                d.modular
                    .ok_or_else(|| Error::Domain(format!("{self}: {NOT_CONSTRUCTED}")))
            }
            ZooSpec::Product { factors } => {
                let (first, rest) = factors
                    .split_first()
                    .ok_or_else(|| Error::Shape("empty product".into()))?;
                let mut acc = first.build()?;
                for f in rest {
                    acc = acc.deligne(&f.build()?)?;
                }
                Ok(acc)
            }
        }
    }
}

/// Size bounds for zoo construction and analyses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_group_order: usize,
    pub max_rank: usize,
    pub max_lattice: usize,
    /// Number of sampled cocycle classes per order-25 group.
    pub q5_samples: usize,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: crate::abelian::DEFAULT_ELEMENT_LIMIT,
            max_rank: 405,
            max_lattice: DEFAULT_LATTICE_LIMIT,
            q5_samples: 12,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZooInstance {
    pub id: String,
    pub spec: ZooSpec,
    pub data: ModularData,
}

impl ZooInstance {
    pub fn name(&self) -> String {
        self.spec.to_string()
    }
}

/// All generator-exponent cocycle specs on ℤ_{q²} and ℤ_q × ℤ_q.
pub fn cocycle_sweep(q: u64) -> Vec<(String, CocycleSpec)> {
    let q2 = q * q;
    let mut out = Vec::new();
    let cyclic = format!("Z{q2}");
    for e in 0..q2 as i64 {
        out.push((cyclic.clone(), CocycleSpec(vec![(crate::abelian::CocycleKind::I, e)])));
    }
    let square = format!("Z{q}xZ{q}");
    use crate::abelian::CocycleKind::{I1, I2, II};
    for e1 in 0..q as i64 {
        for e2 in 0..q as i64 {
            for e3 in 0..q as i64 {
                out.push((square.clone(), CocycleSpec(vec![(I1, e1), (I2, e2), (II, e3)])));
            }
        }
    }
    out
}

/// The deterministic list of zoo specs, before rank filtering.
pub fn zoo_specs() -> Vec<ZooSpec> {
    let mut specs = Vec::new();
    for p in [3, 5, 7, 11, 13] {
        for form in ["residue", "nonresidue"] {
            specs.push(ZooSpec::metric(&format!("Z{p}"), form));
        }
    }
    for v in ["1", "i", "-1", "-i"] {
        specs.push(ZooSpec::metric("Z2", &format!("value:{v}")));
    }
    for k in [1, 2, 3, 4, 5, 7] {
        specs.push(ZooSpec::metric("Z4", &format!("k:{k}")));
    }
    for k in [1, 5] {
        specs.push(ZooSpec::metric("Z6", &format!("k:{k}")));
    }
    let semion = || ZooSpec::metric("Z2", "value:i");
    let svect = || ZooSpec::metric("Z2", "value:-1");
    let zp = |p: u64| ZooSpec::metric(&format!("Z{p}"), "residue");
    let products = [
        vec![semion(), zp(3)],
        vec![semion(), zp(5)],
        vec![zp(3), zp(5)],
        vec![semion(), zp(3), zp(5)],
        vec![zp(3), zp(7)],
        vec![zp(5), zp(7)],
        vec![zp(3), zp(5), zp(7)],
        vec![zp(3), ZooSpec::metric("Z3", "nonresidue")],
        vec![svect(), zp(3)],
    ];
    specs.extend(products.into_iter().map(ZooSpec::product));
    for nu in (1..16).step_by(2) {
        specs.push(ZooSpec::Ising { twist: nu });
    }
    let ising = |nu| ZooSpec::Ising { twist: nu };
    let ising_products = [
        vec![ising(1), semion()],
        vec![ising(1), zp(3)],
        vec![ising(3), zp(5)],
        vec![ising(1), zp(7)],
        vec![ising(5), zp(3), zp(5)],
        vec![ising(1), ising(3)],
        vec![ising(1), ising(1), zp(3)],
        vec![ising(7), ZooSpec::metric("Z4", "k:1")],
        vec![ising(1), svect()],
    ];
    specs.extend(ising_products.into_iter().map(ZooSpec::product));
    for q in [2, 3] {
        for (group, cocycle) in cocycle_sweep(q) {
            specs.push(ZooSpec::TwistedDouble {
                group: group.parse().expect("static group"),
                cocycle,
            });
        }
    }
    let double_products = [
        vec![semion(), ZooSpec::double("Z9", "I:1")],
        vec![semion(), ZooSpec::double("Z3xZ3", "I1:1,I2:0,II:2")],
        vec![zp(5), ZooSpec::double("Z9", "I:1")],
        vec![zp(5), ZooSpec::double("Z3xZ3", "I1:0,I2:1,II:1")],
        vec![ising(1), ZooSpec::double("Z2xZ2", "I1:1,I2:1,II:1")],
        vec![semion(), ZooSpec::double("Z4", "I:1")],
    ];
    specs.extend(double_products.into_iter().map(ZooSpec::product));
    specs
}

/// Builds every zoo spec whose rank is within `limits.max_rank`.
pub fn build_zoo(limits: &Limits) -> Result<Vec<ZooInstance>> {
    zoo_specs()
        .into_iter()
        .filter(|s| s.rank() <= limits.max_rank && s.group_order() <= limits.max_group_order)
        .enumerate()
        .map(|(i, spec)| {
            let data = spec.build().map_err(|e| Error::Validation(format!("{spec}: {e}")))?;
            Ok(ZooInstance {
                id: format!("{i:03}"),
                spec,
                data,
            })
        })
        .collect()
}
