//! Verification suites over constructed instances. Each suite filters the
//! instances by the hypotheses of the statement it checks, counts the rest
//! as skipped, and reports failures with a reproducible witness.

use std::sync::OnceLock;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abelian::{automorphisms_preserving_form, Cocycle3, CocycleKind, CocycleSpec, FiniteAbelianGroup, FormVariant, QuadraticForm};
use crate::construct::{build_zoo, cocycle_sweep, twisted_double_census, DoubleCensus, Limits, ZooSpec};
use crate::error::{Error, Result};
use crate::fusion::FusionSubcategory;
use crate::modular::{is_power_of, prime_factors, ModularData};

pub const DISCLAIMER: &str = "Checks the stated properties on explicitly constructed instances only; \
this is not a proof over all categories satisfying the hypotheses.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Uppbound,
    TwoSquarefree,
    PtDdqq,
    AsfNilpotent,
    Dimq4Pointed,
    StructureSwi,
    Cnil,
    GenNil,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Uppbound,
        Suite::TwoSquarefree,
        Suite::PtDdqq,
        Suite::AsfNilpotent,
        Suite::Dimq4Pointed,
        Suite::StructureSwi,
        Suite::Cnil,
        Suite::GenNil,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Uppbound => "uppbound",
            Suite::TwoSquarefree => "2squarefree",
            Suite::PtDdqq => "pt-ddqq",
            Suite::AsfNilpotent => "asf-nilpotent",
            Suite::Dimq4Pointed => "dimq4-pointed",
            Suite::StructureSwi => "structure-swi",
            Suite::Cnil => "cnil",
            Suite::GenNil => "gen-nil",
        }
    }

    /// Whether the suite reads the instance list (pt-ddqq builds its own).
    pub fn uses_instances(self) -> bool {
        self != Suite::PtDdqq
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Parse(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: String,
    pub check: String,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
    pub disclaimer: String,
    /// Omitted unless timing was requested, so reports stay byte-stable.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite: suite.name().into(),
            checked: 0,
            skipped: 0,
            failures: Vec::new(),
            disclaimer: DISCLAIMER.into(),
            wall_time_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One instance under verification, with its subcategory lattice computed on demand.
pub struct Instance {
    pub id: String,
    pub name: String,
    pub spec: Option<ZooSpec>,
    /// Shell command that re-runs a suite on just this instance; `{suite}` is substituted.
    pub reproduce: String,
    pub data: ModularData,
    lattice: OnceLock<std::result::Result<Vec<FusionSubcategory>, String>>,
    nondegenerate: OnceLock<bool>,
}

impl Instance {
    pub fn new(id: String, name: String, spec: Option<ZooSpec>, reproduce: String, data: ModularData) -> Self {
        Instance {
            id,
            name,
            spec,
            reproduce,
            data,
            lattice: OnceLock::new(),
            nondegenerate: OnceLock::new(),
        }
    }

    pub fn lattice(&self, limit: usize) -> std::result::Result<&[FusionSubcategory], String> {
        self.lattice
            .get_or_init(|| {
                self.data
                    .ring()
                    .enumerate_subcategories(limit)
                    .map_err(|e| e.to_string())
            })
            .as_deref()
            .map_err(|e| e.clone())
    }

    pub fn is_nondegenerate(&self) -> bool {
        *self.nondegenerate.get_or_init(|| self.data.is_nondegenerate())
    }

    pub fn fpdim(&self) -> u64 {
        self.data.global_dim()
    }
}

/// A cocycle class swept by the double census, with its outcome.
pub struct CensusEntry {
    pub q: u64,
    pub group: String,
    pub cocycle: CocycleSpec,
    pub census: std::result::Result<DoubleCensus, String>,
}

pub struct VerifyContext {
    pub limits: Limits,
    pub instances: Vec<Instance>,
    census: OnceLock<Vec<CensusEntry>>,
}

impl VerifyContext {
    pub fn new(limits: Limits, instances: Vec<Instance>) -> Self {
        VerifyContext {
            limits,
            instances,
            census: OnceLock::new(),
        }
    }

    pub fn from_zoo(limits: Limits) -> Result<Self> {
        let instances = build_zoo(&limits)?
            .into_iter()
            .map(|z| {
                let name = z.name();
                let reproduce = format!("modcat verify --suite {{suite}} --only '{}'", z.id);
                Instance::new(z.id, name, Some(z.spec), reproduce, z.data)
            })
            .collect();
        Ok(Self::new(limits, instances))
    }

    /// Full sweeps for q ∈ {2, 3} and seeded samples for q = 5.
    pub fn census_sweep(&self) -> &[CensusEntry] {
        self.census.get_or_init(|| {
            let mut specs: Vec<(u64, String, CocycleSpec)> = Vec::new();
            for q in [2, 3] {
                specs.extend(cocycle_sweep(q).into_iter().map(|(g, c)| (q, g, c)));
            }
            let sweep5 = cocycle_sweep(5);
            let (cyclic, square): (Vec<_>, Vec<_>) = sweep5.into_iter().partition(|(g, _)| g == "Z25");
            let mut rng = ChaCha8Rng::seed_from_u64(self.limits.seed);
            for pool in [cyclic, square] {
                let k = self.limits.q5_samples.min(pool.len());
                let mut picks = sample(&mut rng, pool.len(), k).into_vec();
                picks.sort_unstable();
                specs.extend(picks.into_iter().map(|i| (5, pool[i].0.clone(), pool[i].1.clone())));
            }
            specs
                .into_iter()
                .map(|(q, group, cocycle)| {
                    let census = group
                        .parse::<FiniteAbelianGroup>()
                        .and_then(|g| Cocycle3::from_spec(&g, &cocycle))
                        .and_then(|w| twisted_double_census(&w))
                        .map(|(c, _)| c)
                        .map_err(|e| e.to_string());
                    CensusEntry { q, group, cocycle, census }
                })
                .collect()
        })
    }

    pub fn run(&self, suite: Suite, timing: bool) -> SuiteReport {
        let start = Instant::now();
        let mut report = SuiteReport::new(suite);
        match suite {
            Suite::Uppbound => self.uppbound(&mut report),
            Suite::TwoSquarefree => self.two_squarefree(&mut report),
            Suite::PtDdqq => self.pt_ddqq(&mut report),
            Suite::AsfNilpotent => self.asf_nilpotent(&mut report),
            Suite::Dimq4Pointed => self.dimq4_pointed(&mut report),
            Suite::StructureSwi => self.structure_swi(&mut report),
            Suite::Cnil => self.cnil(&mut report),
            Suite::GenNil => self.gen_nil(&mut report, 500),
        }
        if timing {
            report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
        }
        report
    }

    fn fail(&self, report: &mut SuiteReport, inst: &Instance, check: &str, detail: Value) {
        let witness = json!({
            "id": inst.id,
            "spec": inst.spec,
            "detail": detail,
            "reproduce": inst.reproduce.replace("{suite}", &report.suite),
        });
        report.failures.push(Failure {
            instance: inst.name.clone(),
            check: check.into(),
            witness,
        });
    }

    /// Lattice or a recorded failure.
    fn lattice_of<'a>(&self, report: &mut SuiteReport, inst: &'a Instance) -> Option<&'a [FusionSubcategory]> {
        match inst.lattice(self.limits.max_lattice) {
            Ok(l) => Some(l),
            Err(e) => {
                self.fail(report, inst, "subcategory lattice", json!({ "error": e }));
                None
            }
        }
    }

    fn uppbound(&self, report: &mut SuiteReport) {
        for inst in &self.instances {
            if !inst.is_nondegenerate() {
                report.skipped += 1;
                continue;
            }
            report.checked += 1;
            match inst.data.ring().dimensional_grading() {
                Ok(e) => {
                    let order = e.order() as u64;
                    if inst.fpdim() % (order * order) != 0 {
                        self.fail(report, inst, "|E|² divides FPdim", json!({ "E": order, "fpdim": inst.fpdim() }));
                    }
                }
                Err(err) => self.fail(report, inst, "dimensional grading", json!({ "error": err.to_string() })),
            }
        }
    }

    fn two_squarefree(&self, report: &mut SuiteReport) {
        for inst in &self.instances {
            let ring = inst.data.ring();
            let dim = inst.fpdim();
            let not_div4 = dim % 4 != 0;
            let swi = ring.is_strictly_weakly_integral();
            if !not_div4 && !swi {
                report.skipped += 1;
                continue;
            }
            report.checked += 1;
            if not_div4 && !ring.is_integral() {
                self.fail(report, inst, "4 ∤ FPdim implies integral", json!({ "fpdim": dim }));
            }
            if swi && dim % 4 != 0 {
                self.fail(report, inst, "strictly weakly integral implies 4 | FPdim", json!({ "fpdim": dim }));
            }
            if not_div4 && ring.dimensional_grading().map(|e| e.order()).unwrap_or(0) != 1 {
                self.fail(report, inst, "4 ∤ FPdim implies trivial dimensional grading", json!({ "fpdim": dim }));
            }
        }
    }

    fn census_failure(report: &mut SuiteReport, entry: &CensusEntry, check: &str, detail: Value) {
        report.failures.push(Failure {
            instance: format!("double[{};{}]", entry.group, entry.cocycle),
            check: check.into(),
            witness: json!({
                "group": entry.group,
                "cocycle": entry.cocycle.to_string(),
                "detail": detail,
                "reproduce": format!(
                    "modcat construct --family twisted-double --group {} --cocycle {} -o double.json",
                    entry.group, entry.cocycle
                ),
            }),
        });
    }

    fn pt_ddqq(&self, report: &mut SuiteReport) {
        for entry in self.census_sweep() {
            report.checked += 1;
            let q4 = entry.q.pow(4);
            match &entry.census {
                Ok(c) => {
                    if !c.pointed || c.total_simples as u64 != q4 {
                        Self::census_failure(
                            report,
                            entry,
                            "q⁴ simples of dimension 1",
                            json!({ "simples": c.total_simples, "pointed": c.pointed }),
                        );
                    }
                    if let Some(s) = c.sectors.iter().find(|s| !s.slant_symmetric) {
                        Self::census_failure(report, entry, "slant cocycle symmetric", json!({ "sector": s.sector }));
                    }
                    if c.total_dim_squared != q4 {
                        Self::census_failure(report, entry, "total squared dimension", json!({ "total": c.total_dim_squared }));
                    }
                }
                Err(e) => Self::census_failure(report, entry, "census", json!({ "error": e })),
            }
        }
        for (name, omega) in generator_cocycles() {
            report.checked += 1;
            let omega = match omega {
                Ok(w) => w,
                Err(e) => {
                    report.failures.push(Failure {
                        instance: name.clone(),
                        check: "generator is a 3-cocycle".into(),
                        witness: json!({ "error": e.to_string() }),
                    });
                    continue;
                }
            };
            if let Some(x) = first_asymmetric_slant(&omega) {
                report.failures.push(Failure {
                    instance: name,
                    check: "slant cocycle symmetric".into(),
                    witness: json!({ "x": x }),
                });
            }
        }
    }

    fn asf_nilpotent(&self, report: &mut SuiteReport) {
        for inst in &self.instances {
            let split = odd_asf_split(inst.fpdim());
            let Some((d, q, n)) = split.filter(|_| inst.is_nondegenerate()) else {
                report.skipped += 1;
                continue;
            };
            report.checked += 1;
            let ring = inst.data.ring();
            if !ring.is_integral() {
                self.fail(report, inst, "integral", json!({ "fpdim": inst.fpdim() }));
            }
            if !ring.is_nilpotent() {
                self.fail(report, inst, "nilpotent", json!({ "series_len": ring.central_series(&ring.whole()).len() }));
                continue;
            }
            let Some(lattice) = self.lattice_of(report, inst) else { continue };
            match inst.data.prime_decomposition(lattice) {
                Ok(parts) => {
                    for (p, sub) in &parts {
                        let dim = ring.fpdim_of(sub);
                        let pointed = sub.members().iter().all(|&i| ring.is_invertible(i));
                        let ok = if *p == q { dim == q.pow(n) } else { d % p == 0 && dim == *p && pointed };
                        if !ok {
                            self.fail(
                                report,
                                inst,
                                "prime component shape",
                                json!({ "prime": p, "dim": dim, "pointed": pointed, "d": d, "q": q, "n": n }),
                            );
                        }
                    }
                }
                Err(e) => self.fail(report, inst, "prime decomposition", json!({ "error": e.to_string() })),
            }
        }
        for p in [3u64, 5, 7, 11, 13] {
            for variant in [FormVariant::Residue, FormVariant::Nonresidue] {
                report.checked += 1;
                let name = format!("form[Z{p};{variant:?}]").to_lowercase();
                let images: Result<Vec<u64>> = QuadraticForm::standard(p, variant)
                    .and_then(|f| automorphisms_preserving_form(&f))
                    .map(|ts| ts.iter().map(|t| t.generator_images[0].coords[0]).collect());
                match images {
                    Ok(v) if v == [1, p - 1] => {}
                    other => report.failures.push(Failure {
                        instance: name,
                        check: "form-preserving automorphisms are ±1".into(),
                        witness: json!({ "found": format!("{other:?}") }),
                    }),
                }
            }
        }
    }

    fn dimq4_pointed(&self, report: &mut SuiteReport) {
        for inst in &self.instances {
            let ring = inst.data.ring();
            let hyp = inst.is_nondegenerate() && ring.is_integral() && dq4_split(inst.fpdim()).is_some();
            if !hyp {
                report.skipped += 1;
                continue;
            }
            report.checked += 1;
            if !ring.is_pointed() {
                self.fail(report, inst, "pointed", json!({ "fpdim": inst.fpdim() }));
            }
        }
        for entry in self.census_sweep().iter().filter(|e| e.q != 2) {
            report.checked += 1;
            match &entry.census {
                Ok(c) if c.pointed => {}
                Ok(c) => Self::census_failure(report, entry, "pointed", json!({ "simples": c.total_simples })),
                Err(e) => Self::census_failure(report, entry, "census", json!({ "error": e })),
            }
        }
    }

    fn structure_swi(&self, report: &mut SuiteReport) {
        for inst in &self.instances {
            let ring = inst.data.ring();
            let dim = inst.fpdim();
            let two_part = two_asf_split(dim);
            let swi = ring.is_strictly_weakly_integral();
            if !inst.is_nondegenerate() || (!swi && two_part.is_none()) {
                report.skipped += 1;
                continue;
            }
            report.checked += 1;
            let whole = ring.whole();
            let ad = ring.adjoint(&whole);
            if let Some((_, n)) = two_part {
                // dimensions of simples in C_ad are powers of 2
                if let Some(&i) = ad.members().iter().find(|&&i| {
                    let d2 = ring.dim_squares()[i];
                    !(is_power_of(d2, 4))
                }) {
                    self.fail(report, inst, "adjoint dimensions are powers of 2", json!({ "simple": ring.labels()[i], "d2": ring.dim_squares()[i] }));
                }
                match ring.universal_grading() {
                    Ok(u) => {
                        if (u.order() as u64).is_multiple_of(1u64 << n) && !ring.is_pointed() {
                            self.fail(report, inst, "2ⁿ | |U(C)| implies pointed", json!({ "U": u.order(), "n": n }));
                        }
                    }
                    Err(e) => self.fail(report, inst, "universal grading", json!({ "error": e.to_string() })),
                }
                if !ring.is_pointed() {
                    let ad_pt: Vec<usize> = ad.members().iter().copied().filter(|&i| ring.is_invertible(i)).collect();
                    if ad_pt.len() <= 1 {
                        self.fail(report, inst, "(C_ad)_pt nontrivial", json!({ "adjoint": ad.members() }));
                    }
                }
            }
            if !swi {
                continue;
            }
            let ad_dim = ring.fpdim_of(&ad);
            if ad_dim == 2 {
                if !ring.is_generalized_tambara_yamagami() {
                    self.fail(report, inst, "generalized Tambara-Yamagami", json!({ "adjoint_dim": ad_dim }));
                }
                let Some(lattice) = self.lattice_of(report, inst) else { continue };
                if ising_factorization(&inst.data, lattice).is_none() {
                    self.fail(report, inst, "Ising ⊠ pointed factorization", json!({ "fpdim": dim }));
                }
            } else if !ring.is_pointed() {
                let Some(lattice) = self.lattice_of(report, inst) else { continue };
                match inst.data.tannakian_subcategories(lattice) {
                    Ok(list) if list.iter().any(|e| !e.is_trivial()) => {}
                    Ok(_) => self.fail(report, inst, "nontrivial Tannakian subcategory", json!({ "adjoint_dim": ad_dim })),
                    Err(e) => self.fail(report, inst, "Tannakian subcategories", json!({ "error": e.to_string() })),
                }
            }
        }
    }

    fn cnil(&self, report: &mut SuiteReport) {
        for inst in &self.instances {
            if !inst.is_nondegenerate() {
                report.skipped += 1;
                continue;
            }
            report.checked += 1;
            let ring = inst.data.ring();
            let Some(lattice) = self.lattice_of(report, inst) else { continue };
            let cnil = match ring.maximal_nilpotent_subcategory(lattice) {
                Ok(c) => c,
                Err(e) => {
                    self.fail(report, inst, "C_nil nilpotent", json!({ "error": e.to_string() }));
                    continue;
                }
            };
            if let Some(s) = lattice.iter().find(|s| ring.is_nilpotent_sub(s) && !s.is_subset_of(&cnil)) {
                self.fail(report, inst, "C_nil contains every nilpotent subcategory", json!({ "missing": s.members() }));
            }
            let d = inst.data.centralizer_of(&cnil);
            if ring.adjoint(&d) != d {
                self.fail(report, inst, "D_ad = D", json!({ "D": d.members() }));
            }
            match inst.data.tannakian_subcategories(lattice) {
                Ok(list) => {
                    if let Some(e) = list.iter().find(|e| !e.is_subset_of(&cnil)) {
                        self.fail(report, inst, "Tannakian subcategories lie in C_nil", json!({ "E": e.members() }));
                    }
                }
                Err(e) => self.fail(report, inst, "Tannakian subcategories", json!({ "error": e.to_string() })),
            }
        }
    }

    /// Random draws of subcategory pairs (join compatibility with the central
    /// series) and singles (commutator sandwich).
    fn gen_nil(&self, report: &mut SuiteReport, draws: usize) {
        let pool: Vec<(&Instance, &[FusionSubcategory])> = self
            .instances
            .iter()
            .filter_map(|i| i.lattice(self.limits.max_lattice).ok().map(|l| (i, l)))
            .filter(|(_, l)| l.len() > 1)
            .collect();
        report.skipped = self.instances.len() - pool.len();
        if pool.is_empty() {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.limits.seed ^ 0x6e11);
        use rand::Rng;
        for draw in 0..draws {
            let (inst, lattice) = pool[rng.gen_range(0..pool.len())];
            let ring = inst.data.ring();
            let a = &lattice[rng.gen_range(0..lattice.len())];
            let b = &lattice[rng.gen_range(0..lattice.len())];
            report.checked += 1;
            let join = ring.join(a, b);
            for n in 1..=3 {
                let lhs = ring.central_term(&join, n);
                let rhs = ring.join(&ring.central_term(a, n), &ring.central_term(b, n));
                if lhs != rhs {
                    self.fail(
                        report,
                        inst,
                        "(C₁∨C₂)^(n) = C₁^(n) ∨ C₂^(n)",
                        json!({ "draw": draw, "n": n, "C1": a.members(), "C2": b.members() }),
                    );
                }
            }
            let co = ring.commutator(a);
            let lower = ring.adjoint(&co);
            let upper = ring.commutator(&ring.adjoint(a));
            if !lower.is_subset_of(a) || !a.is_subset_of(&upper) {
                self.fail(report, inst, "commutator sandwich", json!({ "draw": draw, "S": a.members() }));
            }
        }
    }
}

/// The explicit generators with root index 1 for q ∈ {2, 3, 5}.
pub fn generator_cocycles() -> Vec<(String, Result<Cocycle3>)> {
    let mut out = Vec::new();
    for q in [2u64, 3, 5] {
        let cyclic = FiniteAbelianGroup::cyclic(q * q).expect("q² ≥ 4");
        out.push((format!("I on Z{}", q * q), Cocycle3::generator(&cyclic, CocycleKind::I, 1)));
        let square = FiniteAbelianGroup::new(vec![q, q]).expect("valid chain");
        for kind in [CocycleKind::I1, CocycleKind::I2, CocycleKind::II] {
            out.push((format!("{kind} on Z{q}xZ{q}"), Cocycle3::generator(&square, kind, 1)));
        }
    }
    out
}

/// First x whose slant cocycle is not symmetric.
pub fn first_asymmetric_slant(omega: &Cocycle3) -> Option<usize> {
    (0..omega.group().order()).find(|&x| omega.slant(x).map(|b| !b.is_symmetric()).unwrap_or(true))
}

fn exponent_of(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

fn is_squarefree(n: u64) -> bool {
    prime_factors(n).iter().all(|&p| exponent_of(n, p) == 1)
}

/// n = d·qⁿ with q an odd prime and d square-free, coprime to q. Prefers the
/// odd prime with the largest exponent.
pub fn odd_asf_split(dim: u64) -> Option<(u64, u64, u32)> {
    let odd: Vec<u64> = prime_factors(dim).into_iter().filter(|&p| p != 2).collect();
    let q = odd.iter().copied().max_by_key(|&p| (exponent_of(dim, p), p)).unwrap_or(3);
    let e = exponent_of(dim, q);
    let d = dim / q.pow(e);
    is_squarefree(d).then_some((d, q, e))
}

/// n = d·2ⁿ with d odd square-free and n ≥ 1.
pub fn two_asf_split(dim: u64) -> Option<(u64, u32)> {
    let e = exponent_of(dim, 2);
    let d = dim >> e;
    (e >= 1 && is_squarefree(d)).then_some((d, e))
}

/// n = d·q⁴ with q ∈ {3, 5} and d square-free, coprime to q.
pub fn dq4_split(dim: u64) -> Option<(u64, u64)> {
    [3u64, 5].into_iter().find_map(|q| {
        let d = dim / q.pow(4);
        (exponent_of(dim, q) == 4 && is_squarefree(d)).then_some((d, q))
    })
}

/// An Ising subcategory I and its centralizer B with I, B mutually
/// centralizing, B pointed and FPdim I · FPdim B = FPdim.
pub fn ising_factorization(m: &ModularData, lattice: &[FusionSubcategory]) -> Option<(FusionSubcategory, FusionSubcategory)> {
    let ring = m.ring();
    lattice
        .iter()
        .filter(|s| s.len() == 3 && ring.fpdim_of(s) == 4 && s.members().iter().any(|&i| !ring.is_invertible(i)))
        .filter(|s| m.is_nondegenerate_sub(s))
        .find_map(|ising| {
            let b = m.centralizer_of(ising);
            let mutual = ising.is_subset_of(&m.centralizer_of(&b));
            let pointed = b.members().iter().all(|&i| ring.is_invertible(i));
            (mutual && pointed && ring.fpdim_of(ising) * ring.fpdim_of(&b) == m.global_dim()).then(|| (ising.clone(), b))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn dimension_splits() {
        assert_eq!(odd_asf_split(5 * 81), Some((5, 3, 4)));
        assert_eq!(odd_asf_split(2), Some((2, 3, 0)));
        assert_eq!(odd_asf_split(4), None);
        assert_eq!(odd_asf_split(12), None);
        assert_eq!(odd_asf_split(9), Some((1, 3, 2)));
        assert_eq!(two_asf_split(12), Some((3, 2)));
        assert_eq!(two_asf_split(36), None);
        assert_eq!(dq4_split(162), Some((2, 3)));
        assert_eq!(dq4_split(625 * 6), Some((6, 5)));
        assert_eq!(dq4_split(243), None);
    }

    #[test]
    fn generators_have_symmetric_slants() {
        for (name, w) in generator_cocycles() {
            let w = w.unwrap();
            assert_eq!(first_asymmetric_slant(&w), None, "{name}");
        }
    }

    #[test]
    fn ising_times_pointed_factorizes() {
        let m = ZooSpec::product(vec![ZooSpec::Ising { twist: 1 }, ZooSpec::metric("Z3", "residue")])
            .build()
            .unwrap();
        let lat = m.ring().enumerate_subcategories(64).unwrap();
        let (i, b) = ising_factorization(&m, &lat).unwrap();
        assert_eq!(m.ring().fpdim_of(&i), 4);
        assert_eq!(m.ring().fpdim_of(&b), 3);
    }
}
