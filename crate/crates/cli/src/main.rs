//! `branchlocus`: admissibility tables, witnesses, certified paths and
//! chains, Milnor coordinates, and offline re-validation of certificates.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use branchlocus::mobius::GroupSpec;
use branchlocus::moduli::{
    connectivity_certificate, dim_cyclic_all, dim_dihedral_all, fujimura_cubic, milnor_coordinates, build_path,
    ConnectivityCertificate, DimensionReport, Endpoint, ModuliError, PathCertificate, PathOptions, Strategy,
};
use branchlocus::ratmap::RationalMap;
use branchlocus::symmetry::{
    cyclic_admissible, dihedral_admissible, lemma_witness, platonic_admissible, CyclicFamily, SymmetryError,
    WitnessReport,
};

const EXIT_PARSE: u8 = 1;
const EXIT_NOT_ADMISSIBLE: u8 = 2;
const EXIT_CERTIFICATION: u8 = 3;
const EXIT_VALIDATION: u8 = 4;

#[derive(Parser)]
#[command(name = "branchlocus", version, about = "Rational maps with prescribed Möbius symmetry")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = StrategyArg::Sturm)]
    strategy: StrategyArg,
    /// Bits of precision for interval enclosures.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out_file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Sturm,
    Interval,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Admissible cyclic, dihedral and platonic groups for each degree up to D_MAX.
    Admissible { d_max: usize },
    /// Dimensions of the cyclic and dihedral loci for each degree up to D_MAX.
    Dims { d_max: usize },
    /// A map with automorphisms of order P and 2 in degree D.
    Witness { p: u32, d: usize },
    /// Certified path between two families (JSON files).
    Path { from: PathBuf, to: PathBuf },
    /// Certified chain between two classes (family or witness JSON files).
    Connect { from: PathBuf, to: PathBuf },
    /// Milnor coordinates of a degree-2 map (JSON file).
    Milnor { map: PathBuf },
    /// Re-check a path, connectivity or witness certificate.
    Validate { certificate: PathBuf },
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: EXIT_PARSE, error }
    }
}

fn symmetry_code(e: &SymmetryError) -> u8 {
    match e {
        SymmetryError::NotAdmissible { .. } => EXIT_NOT_ADMISSIBLE,
        SymmetryError::CoefficientConditionViolated(_)
        | SymmetryError::UnexpectedDegree { .. }
        | SymmetryError::NotInNormalForm(_) => EXIT_PARSE,
        _ => EXIT_CERTIFICATION,
    }
}

impl From<SymmetryError> for Failure {
    fn from(e: SymmetryError) -> Self {
        Failure { code: symmetry_code(&e), error: e.into() }
    }
}

impl From<ModuliError> for Failure {
    fn from(e: ModuliError) -> Self {
        let code = match &e {
            ModuliError::NotAdmissible { .. } => EXIT_NOT_ADMISSIBLE,
            ModuliError::CertificationFailed(_) | ModuliError::NormalizationFailed => EXIT_CERTIFICATION,
            ModuliError::ValidationFailed(_) => EXIT_VALIDATION,
            ModuliError::Symmetry(s) => symmetry_code(s),
            ModuliError::FamilyMismatch(_) | ModuliError::NotDegreeTwo(_) | ModuliError::Field(_) => EXIT_PARSE,
        };
        Failure { code, error: e.into() }
    }
}

enum Rendered {
    Doc(Value),
    Table { header: Vec<&'static str>, rows: Vec<Vec<String>>, json: Value },
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn parse_as<T: serde::de::DeserializeOwned>(v: &Value, path: &Path, what: &str) -> Result<T, Failure> {
    Ok(serde_json::from_value(v.clone()).with_context(|| format!("{} is not a valid {what}", path.display()))?)
}

/// A family file, or a witness report (its normal form is used).
fn read_endpoint(path: &Path) -> Result<Endpoint, Failure> {
    let v = read_json(path)?;
    if let Ok(w) = serde_json::from_value::<WitnessReport>(v.clone()) {
        return Ok(Endpoint::Witness(w));
    }
    if let Ok(e) = serde_json::from_value::<Endpoint>(v.clone()) {
        return Ok(e);
    }
    Ok(Endpoint::Family(parse_as::<CyclicFamily>(&v, path, "cyclic family")?))
}

fn admissible_table(d_max: usize) -> Result<Rendered, Failure> {
    if !(2..=1000).contains(&d_max) {
        return Err(anyhow!("d_max must lie in 2..=1000").into());
    }
    let mut rows = Vec::new();
    let mut json = Vec::new();
    for d in 2..=d_max {
        let mut cyclic = Vec::new();
        let mut dihedral = Vec::new();
        for n in 2..=(d as u32 + 1) {
            for (case, r) in cyclic_admissible(d, n) {
                rows.push(vec![d.to_string(), format!("C{n}"), n.to_string(), case.to_string(), r.to_string()]);
                cyclic.push(serde_json::json!({"n": n, "case": case, "r": r}));
            }
            for (case, r) in dihedral_admissible(d, n) {
                rows.push(vec![d.to_string(), format!("D{n}"), n.to_string(), case.to_string(), r.to_string()]);
                dihedral.push(serde_json::json!({"n": n, "case": case, "r": r}));
            }
        }
        let mut flags = serde_json::Map::new();
        for g in [GroupSpec::A4, GroupSpec::S4, GroupSpec::A5] {
            let ok = platonic_admissible(d, g);
            if ok {
                rows.push(vec![d.to_string(), g.to_string(), String::new(), String::new(), String::new()]);
            }
            flags.insert(g.to_string(), Value::Bool(ok));
        }
        json.push(serde_json::json!({"d": d, "cyclic": cyclic, "dihedral": dihedral, "platonic": flags}));
    }
    Ok(Rendered::Table { header: vec!["d", "group", "n", "case", "r"], rows, json: Value::Array(json) })
}

fn dims_table(d_max: usize) -> Result<Rendered, Failure> {
    if !(2..=1000).contains(&d_max) {
        return Err(anyhow!("d_max must lie in 2..=1000").into());
    }
    let mut reports: Vec<DimensionReport> = Vec::new();
    for d in 2..=d_max {
        for n in 2..=(d as u32 + 1) {
            reports.extend(dim_cyclic_all(d, n).unwrap_or_default());
            reports.extend(dim_dihedral_all(d, n).unwrap_or_default());
        }
    }
    let rows = reports
        .iter()
        .map(|r| {
            let kind = to_value(&r.group).as_str().unwrap_or_default().to_string();
            vec![r.d.to_string(), kind, r.n.to_string(), r.case.to_string(), r.r.to_string(), r.dimension.to_string()]
        })
        .collect();
    Ok(Rendered::Table { header: vec!["d", "group", "n", "case", "r", "dimension"], rows, json: to_value(&reports) })
}

fn validate(path: &Path) -> Result<Rendered, Failure> {
    let v = read_json(path)?;
    let invalid = |e: anyhow::Error| Failure { code: EXIT_VALIDATION, error: e };
    let kind = if v.get("legs").is_some() {
        let c: ConnectivityCertificate =
            serde_json::from_value(v).map_err(|e| invalid(anyhow!("malformed connectivity certificate: {e}")))?;
        c.validate().map_err(|e| invalid(e.into()))?;
        "connectivity"
    } else if v.get("segments").is_some() {
        let c: PathCertificate =
            serde_json::from_value(v).map_err(|e| invalid(anyhow!("malformed path certificate: {e}")))?;
        c.validate().map_err(|e| invalid(e.into()))?;
        "path"
    } else if v.get("verified_autos").is_some() {
        let w: WitnessReport =
            serde_json::from_value(v).map_err(|e| invalid(anyhow!("malformed witness report: {e}")))?;
        w.verify().map_err(|e| invalid(e.into()))?;
        "witness"
    } else {
        return Err(anyhow!("{} is not a certificate", path.display()).into());
    };
    Ok(Rendered::Doc(serde_json::json!({"kind": kind, "valid": true})))
}

fn run(cli: &Cli) -> Result<Rendered, Failure> {
    let opts = PathOptions {
        strategy: match cli.strategy {
            StrategyArg::Sturm => Strategy::Sturm,
            StrategyArg::Interval => Strategy::Interval,
        },
        precision: cli.precision,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Admissible { d_max } => admissible_table(*d_max),
        Command::Dims { d_max } => dims_table(*d_max),
        Command::Witness { p, d } => Ok(Rendered::Doc(to_value(&lemma_witness(*p, *d)?))),
        Command::Path { from, to } => {
            let f0 = read_endpoint(from)?.family().clone();
            let f1 = read_endpoint(to)?.family().clone();
            Ok(Rendered::Doc(to_value(&build_path(&f0, &f1, &opts)?)))
        }
        Command::Connect { from, to } => {
            let cert = connectivity_certificate(&read_endpoint(from)?, &read_endpoint(to)?, &opts)?;
            Ok(Rendered::Doc(to_value(&cert)))
        }
        Command::Milnor { map } => {
            let m: RationalMap = parse_as(&read_json(map)?, map, "rational map")?;
            let pt = milnor_coordinates(&m)?;
            let cubic = fujimura_cubic(&pt);
            Ok(Rendered::Doc(serde_json::json!({"sigma1": pt.sigma1, "sigma2": pt.sigma2, "cubic": cubic})))
        }
        Command::Validate { certificate } => validate(certificate),
    }
}

fn render(r: Rendered, output: Output) -> Result<String, Failure> {
    Ok(match (r, output) {
        (Rendered::Doc(v) | Rendered::Table { json: v, .. }, Output::Json) => format!("{v}\n"),
        (Rendered::Doc(v), Output::Pretty) => format!("{}\n", serde_json::to_string_pretty(&v).unwrap()),
        (Rendered::Doc(_), Output::Csv) => return Err(anyhow!("CSV output is only available for tables").into()),
        (Rendered::Table { header, rows, .. }, Output::Csv) => {
            let mut s = header.join(",") + "\n";
            for row in rows {
                s += &(row.join(",") + "\n");
            }
            s
        }
        (Rendered::Table { header, rows, .. }, Output::Pretty) => {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap())
                .collect();
            let line = |cells: Vec<&str>| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
                    + "\n"
            };
            let mut s = line(header.clone());
            for row in &rows {
                s += &line(row.iter().map(String::as_str).collect());
            }
            s
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|r| render(r, cli.output)).and_then(|text| {
        match &cli.out_file {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => print!("{text}"),
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
