use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use modcat::construct::{build_zoo, FormSpec, Limits, ZooSpec};
use modcat::fusion::{FusionRing, FusionSubcategory};
use modcat::modular::{ModularData, SymmetricKind};
use modcat::verify::{Instance, Suite, SuiteReport, VerifyContext};

#[derive(Parser)]
#[command(name = "modcat", version, about = "Exact fusion rings and modular data of weakly integral modular categories")]
struct Cli {
    /// Emit JSON instead of human-readable tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a category and write its JSON.
    Construct(ConstructArgs),
    /// Report structural invariants of a category file.
    Analyze(AnalyzeArgs),
    /// Run verification suites over the zoo or given instances.
    Verify(VerifyArgs),
    /// Build or list the persisted zoo.
    Zoo {
        #[command(subcommand)]
        command: ZooCommand,
    },
    /// Rewrite a category file in canonical form.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    MetricGroup,
    Ising,
    TwistedDouble,
    Product,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Group such as Z5 or Z3xZ3.
    #[arg(long)]
    group: Option<String>,
    /// residue, nonresidue, or k:k1,k2,... for a diagonal form.
    #[arg(long)]
    form: Option<String>,
    /// φ(1) on ℤ₂: one of 1, -1, i, -i.
    #[arg(long, allow_hyphen_values = true)]
    form_value: Option<String>,
    /// Odd ν selecting the Ising twist θ_σ = ζ₁₆^ν.
    #[arg(long, allow_hyphen_values = true)]
    twist: Option<i64>,
    /// Cocycle such as I:1 or I1:1,I2:0,II:2.
    #[arg(long)]
    cocycle: Option<String>,
    /// Category files whose Deligne product is formed.
    #[arg(long, num_args = 2..)]
    inputs: Vec<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Field {
    Fpdims,
    Universal,
    Dimensional,
    Nilpotency,
    Parts,
    Center,
    Lattice,
    Tannakian,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Fields to report; all when absent.
    #[arg(long, value_enum, value_delimiter = ',')]
    report: Vec<Field>,
    #[arg(long, default_value_t = Limits::default().max_lattice)]
    max_lattice: usize,
}

#[derive(Args, Clone)]
struct LimitArgs {
    #[arg(long, default_value_t = Limits::default().max_group_order)]
    max_group_order: usize,
    #[arg(long, default_value_t = Limits::default().max_rank)]
    max_rank: usize,
    #[arg(long, default_value_t = Limits::default().max_lattice)]
    max_lattice: usize,
    /// Sampled cocycle classes per order-25 group.
    #[arg(long, default_value_t = Limits::default().q5_samples)]
    q5_samples: usize,
    #[arg(long, default_value_t = Limits::default().seed)]
    seed: u64,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_group_order: self.max_group_order,
            max_rank: self.max_rank,
            max_lattice: self.max_lattice,
            q5_samples: self.q5_samples,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite names, comma separated, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    suite: Vec<String>,
    #[command(flatten)]
    limits: LimitArgs,
    /// Verify these category files instead of the zoo.
    #[arg(long)]
    instance: Vec<PathBuf>,
    /// Restrict the zoo to instances with these ids or names.
    #[arg(long)]
    only: Vec<String>,
    /// Load the zoo from its directory instead of rebuilding it.
    #[arg(long)]
    use_zoo: bool,
    #[arg(long, env = "MODCAT_ZOO_DIR", default_value = "zoo")]
    dir: PathBuf,
    /// Record wall time in the reports.
    #[arg(long)]
    timing: bool,
    /// Also write the reports to this file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ZooCommand {
    /// Build every zoo instance and write it with an index file.
    Build {
        #[arg(long, env = "MODCAT_ZOO_DIR", default_value = "zoo")]
        dir: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// List the instances recorded in the index file.
    List {
        #[arg(long, env = "MODCAT_ZOO_DIR", default_value = "zoo")]
        dir: PathBuf,
    },
}

#[derive(Args)]
struct ExportArgs {
    file: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct IndexEntry {
    id: String,
    name: String,
    spec: ZooSpec,
    file: String,
    rank: usize,
    fpdim: u64,
    nondegenerate: bool,
}

const INDEX_FILE: &str = "index.json";

/// Errors that should exit with the usage code.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(err) => {
            let code = exit_code(&err);
            let kind = if code == 2 { "usage" } else { "failure" };
            if json {
                let chain: Vec<String> = err.chain().map(|e| e.to_string()).collect();
                eprintln!("{}", json!({ "error": { "kind": kind, "message": chain.join(": ") } }));
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(code)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() || cause.is::<serde_json::Error>() {
            return 2;
        }
        if let Some(modcat::Error::Parse(_)) = cause.downcast_ref::<modcat::Error>() {
            return 2;
        }
    }
    1
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Construct(args) => construct(args, cli.json),
        Command::Analyze(args) => analyze(args, cli.json),
        Command::Verify(args) => verify(args, cli.json),
        Command::Zoo { command } => zoo(command, cli.json),
        Command::Export(args) => export(args),
    }
}

fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn canonical_json(m: &ModularData) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(m)? + "\n")
}

fn read_category(path: &Path) -> anyhow::Result<ModularData> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn spec_from_flags(args: &ConstructArgs) -> anyhow::Result<Option<ZooSpec>> {
    let extra = |name: &str, present: bool| -> anyhow::Result<()> {
        if present {
            return Err(usage(format!("--{name} does not apply to this family")));
        }
        Ok(())
    };
    let group = || -> anyhow::Result<_> {
        let g = args.group.as_deref().ok_or_else(|| usage("--group is required"))?;
        Ok(g.parse()?)
    };
    Ok(Some(match args.family {
        Family::MetricGroup => {
            extra("twist", args.twist.is_some())?;
            extra("cocycle", args.cocycle.is_some())?;
            extra("inputs", !args.inputs.is_empty())?;
            let form = match (&args.form, &args.form_value) {
                (Some(_), Some(_)) => return Err(usage("--form and --form-value are exclusive")),
                (Some(f), None) => f.parse::<FormSpec>()?,
                (None, Some(v)) => format!("value:{v}").parse::<FormSpec>()?,
                (None, None) => "residue".parse::<FormSpec>()?,
            };
            ZooSpec::MetricGroup { group: group()?, form }
        }
        Family::Ising => {
            extra("group", args.group.is_some())?;
            extra("form", args.form.is_some() || args.form_value.is_some())?;
            extra("cocycle", args.cocycle.is_some())?;
            extra("inputs", !args.inputs.is_empty())?;
            ZooSpec::Ising {
                twist: args.twist.ok_or_else(|| usage("--twist is required"))?,
            }
        }
        Family::TwistedDouble => {
            extra("twist", args.twist.is_some())?;
            extra("form", args.form.is_some() || args.form_value.is_some())?;
            extra("inputs", !args.inputs.is_empty())?;
            let cocycle = args.cocycle.as_deref().unwrap_or("trivial").parse()?;
            ZooSpec::TwistedDouble { group: group()?, cocycle }
        }
        Family::Product => {
            extra("group", args.group.is_some())?;
            extra("twist", args.twist.is_some())?;
            extra("form", args.form.is_some() || args.form_value.is_some())?;
            extra("cocycle", args.cocycle.is_some())?;
            if args.inputs.len() < 2 {
                return Err(usage("--inputs needs at least two category files"));
            }
            return Ok(None);
        }
    }))
}

fn summary(m: &ModularData) -> anyhow::Result<Value> {
    let center = m.muger_center();
    let kind = m.classify_symmetric(&center)?.kind;
    Ok(json!({
        "rank": m.rank(),
        "fpdim": m.global_dim(),
        "nondegenerate": center.is_trivial(),
        "svect": kind == SymmetricKind::SuperTannakian && center.len() == 2,
    }))
}

fn construct(args: ConstructArgs, json_out: bool) -> anyhow::Result<Outcome> {
    let spec = spec_from_flags(&args)?;
    let (name, data) = match &spec {
        Some(spec) => (spec.to_string(), spec.build()?),
        None => {
            let mut parts = args.inputs.iter().map(|p| read_category(p));
            let mut acc = parts.next().expect("two inputs")?;
            for p in parts {
                acc = acc.deligne(&p?)?;
            }
            let names: Vec<String> = args.inputs.iter().map(|p| p.display().to_string()).collect();
            (names.join(" ⊠ "), acc)
        }
    };
    let text = canonical_json(&data)?;
    let mut info = summary(&data)?;
    info["name"] = json!(name);
    match &args.output {
        Some(path) => {
            write_atomic(path, &text)?;
            info["file"] = json!(path.display().to_string());
        }
        None => print!("{text}"),
    }
    let line = if json_out {
        info.to_string()
    } else {
        format!(
            "{name}: rank {}, FPdim {}, {}{}",
            info["rank"],
            info["fpdim"],
            if info["nondegenerate"] == true { "nondegenerate" } else { "degenerate" },
            if info["svect"] == true { ", svect" } else { "" },
        )
    };
    if args.output.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    Ok(Outcome::Pass)
}

fn labels_of(ring: &FusionRing, s: &FusionSubcategory) -> Vec<String> {
    s.members().iter().map(|&i| ring.labels()[i].clone()).collect()
}

fn analysis(m: &ModularData, fields: &[Field], max_lattice: usize) -> anyhow::Result<Map<String, Value>> {
    let ring = m.ring();
    let mut out = Map::new();
    let want = |f: Field| fields.is_empty() || fields.contains(&f);
    let lattice = if want(Field::Lattice) || want(Field::Tannakian) {
        Some(ring.enumerate_subcategories(max_lattice)?)
    } else {
        None
    };
    if want(Field::Fpdims) {
        let simples: Vec<Value> = (0..ring.rank())
            .map(|i| {
                let d = ring.fpdim_object(i);
                json!({ "label": ring.labels()[i], "d2": d.squared, "d": d.value })
            })
            .collect();
        out.insert("fpdims".into(), json!({ "total": ring.fpdim(), "simples": simples }));
    }
    if want(Field::Universal) {
        let u = ring.universal_grading()?;
        let classes: Vec<Vec<String>> = u
            .classes
            .iter()
            .map(|c| c.iter().map(|&i| ring.labels()[i].clone()).collect())
            .collect();
        out.insert(
            "universal_grading".into(),
            json!({ "order": u.order(), "invariant_factors": u.invariant_factors, "classes": classes }),
        );
    }
    if want(Field::Dimensional) {
        let e = ring.dimensional_grading()?;
        out.insert("dimensional_grading".into(), json!({ "order": e.order(), "elements": e.elements }));
    }
    if want(Field::Nilpotency) {
        out.insert(
            "nilpotency".into(),
            json!({ "nilpotent": ring.is_nilpotent(), "class": ring.nilpotency_class() }),
        );
    }
    if want(Field::Parts) {
        let pt = ring.pointed_part();
        let int = ring.integral_part();
        out.insert(
            "parts".into(),
            json!({
                "pointed": labels_of(ring, &pt),
                "integral": labels_of(ring, &int),
                "is_pointed": ring.is_pointed(),
                "is_integral": ring.is_integral(),
            }),
        );
    }
    if want(Field::Center) {
        let c = m.muger_center();
        let kind = m.classify_symmetric(&c)?.kind;
        let extent = if c.is_trivial() {
            "trivial"
        } else if c.len() == ring.rank() {
            "whole"
        } else {
            "proper"
        };
        out.insert(
            "center".into(),
            json!({ "extent": extent, "members": labels_of(ring, &c), "kind": kind }),
        );
    }
    if let Some(lat) = &lattice {
        if want(Field::Lattice) {
            let mut by_dim = std::collections::BTreeMap::<u64, usize>::new();
            for s in lat {
                *by_dim.entry(ring.fpdim_of(s)).or_default() += 1;
            }
            let by_dim: Map<String, Value> = by_dim.into_iter().map(|(d, n)| (d.to_string(), json!(n))).collect();
            out.insert("lattice".into(), json!({ "count": lat.len(), "by_fpdim": by_dim }));
        }
        if want(Field::Tannakian) {
            let list: Vec<Vec<String>> = m
                .tannakian_subcategories(lat)?
                .iter()
                .filter(|s| !s.is_trivial())
                .map(|s| labels_of(ring, s))
                .collect();
            out.insert("tannakian".into(), json!(list));
        }
    }
    Ok(out)
}

fn print_table(map: &Map<String, Value>) {
    for (key, value) in map {
        match value {
            Value::Object(inner) => {
                for (k, v) in inner {
                    println!("{:<36} {}", format!("{key}.{k}"), v);
                }
            }
            other => println!("{key:<36} {other}"),
        }
    }
}

fn analyze(args: AnalyzeArgs, json_out: bool) -> anyhow::Result<Outcome> {
    let m = read_category(&args.file)?;
    let out = analysis(&m, &args.report, args.max_lattice)?;
    if json_out {
        println!("{}", serde_json::to_string_pretty(&Value::Object(out))?);
    } else {
        print_table(&out);
    }
    Ok(Outcome::Pass)
}

fn load_zoo_dir(dir: &Path) -> anyhow::Result<Vec<(IndexEntry, ModularData)>> {
    let index_path = dir.join(INDEX_FILE);
    let text = fs::read_to_string(&index_path).with_context(|| format!("reading {}", index_path.display()))?;
    let index: Vec<IndexEntry> =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", index_path.display()))?;
    index
        .into_iter()
        .map(|e| {
            let m = read_category(&dir.join(&e.file))?;
            Ok((e, m))
        })
        .collect()
}

fn parse_suites(names: &[String]) -> anyhow::Result<Vec<Suite>> {
    let mut suites = Vec::new();
    for name in names {
        if name == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(name.parse::<Suite>().map_err(|e| usage(e.to_string()))?);
        }
    }
    suites.sort();
    suites.dedup();
    Ok(suites)
}

fn verify(args: VerifyArgs, json_out: bool) -> anyhow::Result<Outcome> {
    let suites = parse_suites(&args.suite)?;
    let limits = args.limits.limits();
    if !args.instance.is_empty() && (args.use_zoo || !args.only.is_empty()) {
        return Err(usage("--instance excludes --use-zoo and --only"));
    }
    let need_instances = suites.iter().any(|s| s.uses_instances());
    let instances: Vec<Instance> = if !need_instances {
        Vec::new()
    } else if !args.instance.is_empty() {
        args.instance
            .iter()
            .map(|path| {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let data = ModularData::from_json_unchecked(&text).with_context(|| format!("parsing {}", path.display()))?;
                let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                let reproduce = format!("modcat verify --suite {{suite}} --instance '{}'", path.display());
                Ok(Instance::new(id, path.display().to_string(), None, reproduce, data))
            })
            .collect::<anyhow::Result<_>>()?
    } else {
        let entries: Vec<(String, ZooSpec, ModularData)> = if args.use_zoo {
            load_zoo_dir(&args.dir)?
                .into_iter()
                .map(|(e, m)| (e.id, e.spec, m))
                .collect()
        } else {
            build_zoo(&limits)?.into_iter().map(|z| (z.id, z.spec, z.data)).collect()
        };
        let selected: Vec<Instance> = entries
            .into_iter()
            .filter(|(id, spec, _)| args.only.is_empty() || args.only.iter().any(|o| o == id || *o == spec.to_string()))
            .map(|(id, spec, data)| {
                let source = if args.use_zoo { " --use-zoo" } else { "" };
                let reproduce = format!("modcat verify --suite {{suite}}{source} --only '{id}'");
                Instance::new(id, spec.to_string(), Some(spec), reproduce, data)
            })
            .collect();
        if selected.is_empty() && !args.only.is_empty() {
            return Err(usage(format!("no zoo instance matches {:?}", args.only)));
        }
        selected
    };
    let ctx = VerifyContext::new(limits, instances);
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| ctx.run(s, args.timing)).collect();
    let all_pass = reports.iter().all(|r| r.passed());
    let text = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])?
    } else {
        serde_json::to_string_pretty(&reports)?
    } + "\n";
    if let Some(path) = &args.output {
        write_atomic(path, &text)?;
    }
    if json_out {
        print!("{text}");
    } else {
        println!("{:<16} {:>8} {:>8} {:>9}  result", "suite", "checked", "skipped", "failures");
        for r in &reports {
            println!(
                "{:<16} {:>8} {:>8} {:>9}  {}",
                r.suite,
                r.checked,
                r.skipped,
                r.failures.len(),
                if r.passed() { "PASS" } else { "FAIL" }
            );
            for f in &r.failures {
                println!("  {} :: {} :: {}", f.instance, f.check, f.witness);
            }
        }
        if let Some(r) = reports.first() {
            println!("{}", r.disclaimer);
        }
    }
    Ok(if all_pass { Outcome::Pass } else { Outcome::Fail })
}

fn zoo(command: ZooCommand, json_out: bool) -> anyhow::Result<Outcome> {
    match command {
        ZooCommand::Build { dir, limits } => {
            let zoo = build_zoo(&limits.limits())?;
            let mut index = Vec::with_capacity(zoo.len());
            for z in &zoo {
                let file = format!("{}.json", z.id);
                write_atomic(&dir.join(&file), &canonical_json(&z.data)?)?;
                index.push(IndexEntry {
                    id: z.id.clone(),
                    name: z.name(),
                    spec: z.spec.clone(),
                    file,
                    rank: z.data.rank(),
                    fpdim: z.data.global_dim(),
                    nondegenerate: z.data.is_nondegenerate(),
                });
            }
            write_atomic(&dir.join(INDEX_FILE), &(serde_json::to_string_pretty(&index)? + "\n"))?;
            if json_out {
                println!("{}", json!({ "dir": dir.display().to_string(), "instances": index.len() }));
            } else {
                println!("wrote {} instances to {}", index.len(), dir.display());
            }
            Ok(Outcome::Pass)
        }
        ZooCommand::List { dir } => {
            let path = dir.join(INDEX_FILE);
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let index: Vec<IndexEntry> = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            if json_out {
                println!("{}", serde_json::to_string_pretty(&index)?);
            } else {
                println!("{:<5} {:>5} {:>7} {:<6} name", "id", "rank", "fpdim", "nondeg");
                for e in &index {
                    println!("{:<5} {:>5} {:>7} {:<6} {}", e.id, e.rank, e.fpdim, e.nondegenerate, e.name);
                }
            }
            Ok(Outcome::Pass)
        }
    }
}

fn export(args: ExportArgs) -> anyhow::Result<Outcome> {
    let m = read_category(&args.file)?;
    let text = canonical_json(&m)?;
    match &args.output {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    Ok(Outcome::Pass)
}
