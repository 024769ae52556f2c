//! Report assembly behind the `deformed-voa` binary.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use deformed_voa::jordan::{check_isomorphism, verify_automorphism, OrthogonalMatrix};
use deformed_voa::lie::BracketFault;
use deformed_voa::sugawara::{verify_commutators, verify_grading_and_translation, verify_locality};
use deformed_voa::voa::{
    central_charge, gram_matrix, griess_table, quasi_primary_check, radical_dimension, saturate,
    verify_griess,
};
use deformed_voa::{
    AlgebraError, DeformedLie, IdentityCheck, RMode, Scalar, Sugawara, VerificationReport, Witness,
};
use serde::{Deserialize, Serialize};

pub mod render;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Dims,
    Griess,
    Gram,
    Radical,
    Auto,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Dims => "dims",
            Command::Griess => "griess",
            Command::Gram => "gram",
            Command::Radical => "radical",
            Command::Auto => "auto",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub d: usize,
    pub r: RMode,
    pub max_weight: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub fault: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<AlgebraError> for UsageError {
    fn from(e: AlgebraError) -> Self {
        UsageError(e.to_string())
    }
}

impl RunConfig {
    pub fn new(command: Command, d: usize, max_weight: usize) -> Self {
        Self {
            command,
            d,
            r: RMode::Symbolic,
            max_weight,
            format: Format::Text,
            out: None,
            jobs: None,
            fault: None,
        }
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        if self.d == 0 {
            return Err(AlgebraError::EmptyDimension.into());
        }
        if self.max_weight < 2 {
            return Err(AlgebraError::WeightTooSmall(self.max_weight).into());
        }
        if self.command == Command::Radical && self.r == RMode::Symbolic {
            return Err(UsageError("radical needs a numeric --r".to_string()));
        }
        if self.command == Command::Gram && self.format == Format::Csv {
            return Err(UsageError(
                "Gram matrices are emitted as JSON or text only".to_string(),
            ));
        }
        if self.jobs == Some(0) {
            return Err(UsageError("--jobs must be positive".to_string()));
        }
        Ok(())
    }

    fn sugawara(&self) -> Result<Sugawara, AlgebraError> {
        let lie = DeformedLie::new(self.d)?;
        let lie = match self.fault {
            Some(k) => lie.with_fault(BracketFault::ScaleCentral(k)),
            None => lie,
        };
        Ok(Sugawara::from_lie(lie))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub d: usize,
    pub r: String,
    pub max_weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub weight: usize,
    pub dim_m: usize,
    pub dim_vj: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramEntry {
    pub weight: usize,
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub determinant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GriessEntry {
    pub left: String,
    pub right: String,
    pub product: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GriessReport {
    pub basis: Vec<String>,
    pub products: Vec<GriessEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalRow {
    pub weight: usize,
    pub dim_vj: usize,
    pub nullity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: ConfigEcho,
    pub passed: bool,
    pub checks: Vec<IdentityCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_charge: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimensions: Option<Vec<DimRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub griess: Option<GriessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<GramEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<Vec<RadicalRow>>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl Report {
    fn new(config: &RunConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: config.command.name().to_string(),
            config: ConfigEcho {
                d: config.d,
                r: config.r.to_string(),
                max_weight: config.max_weight,
            },
            passed: true,
            checks: Vec::new(),
            central_charge: None,
            dimensions: None,
            griess: None,
            gram: None,
            radical: None,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.passed())
    }

    /// Exit status: 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    /// The report with timings cleared, for comparing runs.
    pub fn without_timings(&self) -> Self {
        Self {
            timings_ms: BTreeMap::new(),
            ..self.clone()
        }
    }

    fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings_ms
            .insert(stage.to_string(), start.elapsed().as_millis() as u64);
        out
    }

    fn push(&mut self, report: VerificationReport) {
        self.checks.extend(report.checks);
    }

    fn finish(mut self) -> Self {
        self.passed = self.checks.iter().all(IdentityCheck::passed);
        self
    }
}

/// Runs the configured command, inside a dedicated thread pool when `jobs`
/// is set.
pub fn run(config: &RunConfig) -> Result<Report, UsageError> {
    config.validate()?;
    match config.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| UsageError(e.to_string()))?;
            pool.install(|| dispatch(config))
        }
        None => dispatch(config),
    }
}

fn dispatch(config: &RunConfig) -> Result<Report, UsageError> {
    let sug = config.sugawara()?;
    let report = match config.command {
        Command::Verify => cmd_verify(config, &sug),
        Command::Dims => cmd_dims(config, &sug),
        Command::Griess => cmd_griess(config, &sug),
        Command::Gram => cmd_gram(config, &sug),
        Command::Radical => cmd_radical(config, &sug),
        Command::Auto => cmd_auto(config, &sug),
    }?;
    Ok(report.finish())
}

/// Orthogonal matrices exercised by `verify` and `auto`: every permutation
/// for `d <= 3` (a transposition and a cycle beyond that), `-I`, and the
/// 3-4-5 rotation when `d >= 2`.
pub fn builtin_orthogonal(d: usize) -> Vec<(String, OrthogonalMatrix)> {
    let mut out = Vec::new();
    let perms: Vec<Vec<usize>> = if d <= 3 {
        use itertools::Itertools;
        (0..d).permutations(d).collect()
    } else {
        let mut swap: Vec<usize> = (0..d).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..d).map(|k| (k + 1) % d).collect();
        vec![swap, cycle]
    };
    for p in perms {
        let q = OrthogonalMatrix::permutation(&p).expect("permutation");
        let label = if p.iter().enumerate().all(|(k, &x)| k == x) {
            "identity".to_string()
        } else {
            let images: Vec<String> = p.iter().map(|k| (k + 1).to_string()).collect();
            format!("permutation [{}]", images.join(" "))
        };
        out.push((label, q));
    }
    out.push(("-I".to_string(), OrthogonalMatrix::negated_identity(d)));
    if d >= 2 {
        out.push((
            "3-4-5 rotation".to_string(),
            OrthogonalMatrix::rotation_345(d).expect("d >= 2"),
        ));
    }
    out
}

fn central_charge_check(d: usize, c: &Scalar, rmode: &RMode) -> IdentityCheck {
    let expected = Scalar::r().scale(&deformed_voa::scalar::int(d as i64));
    let ok = rmode.scalar_vanishes(&(c - &expected));
    IdentityCheck {
        identity: "central charge equals d*r".to_string(),
        cases: 1,
        failures: u64::from(!ok),
        witness: (!ok).then(|| Witness {
            context: "2<w, w>".to_string(),
            vector: "w".to_string(),
            lhs: c.to_string(),
            rhs: expected.to_string(),
        }),
    }
}

fn low_weight_dims_check(d: usize, dims: &[usize]) -> IdentityCheck {
    let expected = [1, 0, d * (d + 1) / 2];
    let ok = dims.len() >= 3 && dims[..3] == expected;
    IdentityCheck {
        identity: "weights 0, 1, 2 have dimensions 1, 0, d(d+1)/2".to_string(),
        cases: 1,
        failures: u64::from(!ok),
        witness: (!ok).then(|| Witness {
            context: "dim (V_J)_N for N = 0, 1, 2".to_string(),
            vector: String::new(),
            lhs: format!("{:?}", &dims[..dims.len().min(3)]),
            rhs: format!("{expected:?}"),
        }),
    }
}

fn automorphism_checks(
    report: &mut Report,
    sug: &Sugawara,
    max_weight: usize,
) -> Result<(), UsageError> {
    for (label, q) in builtin_orthogonal(sug.dim()) {
        let checks = report.timed(&format!("automorphism {label}"), || {
            verify_automorphism(sug, &q, max_weight)
        })?;
        for mut c in checks.checks {
            c.identity = format!("{label}: {}", c.identity);
            report.checks.push(c);
        }
    }
    Ok(())
}

pub fn cmd_verify(config: &RunConfig, sug: &Sugawara) -> Result<Report, UsageError> {
    let mut report = Report::new(config);
    let (w, r) = (config.max_weight, &config.r);
    let checks = report.timed("commutators", || verify_commutators(sug, w, r));
    report.push(checks);
    let checks = report.timed("locality", || verify_locality(sug, w, r));
    report.push(checks);
    let checks = report.timed("grading", || verify_grading_and_translation(sug, w, r));
    report.push(checks);
    let check = report.timed("quasi-primary", || quasi_primary_check(sug));
    report.checks.push(check);
    let table = report.timed("griess", || griess_table(sug));
    report.checks.extend(verify_griess(&table));
    let checks = report.timed("isomorphism", || check_isomorphism(sug, &table));
    report.push(checks);
    let c = report.timed("central charge", || central_charge(sug));
    report.checks.push(central_charge_check(config.d, &c, r));
    report.central_charge = Some(c.to_string());
    automorphism_checks(&mut report, sug, w)?;
    Ok(report)
}

pub fn cmd_dims(config: &RunConfig, sug: &Sugawara) -> Result<Report, UsageError> {
    let mut report = Report::new(config);
    let space = report.timed("saturate", || saturate(sug, config.max_weight))?;
    let rows: Vec<DimRow> = (0..=config.max_weight)
        .map(|n| DimRow {
            weight: n,
            dim_m: sug.fock().dim_of_weight(n),
            dim_vj: space.dim(n),
        })
        .collect();
    report
        .checks
        .push(low_weight_dims_check(config.d, &space.dims()));
    report.dimensions = Some(rows);
    Ok(report)
}

pub fn cmd_griess(config: &RunConfig, sug: &Sugawara) -> Result<Report, UsageError> {
    let mut report = Report::new(config);
    let table = report.timed("griess", || griess_table(sug));
    report.checks.extend(verify_griess(&table));
    let checks = report.timed("isomorphism", || check_isomorphism(sug, &table));
    report.push(checks);
    let name = |(i, j): (u16, u16)| format!("w[{i},{j}]");
    let n = table.pairs.len();
    let products = (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .map(|(a, b)| GriessEntry {
            left: name(table.pairs[a]),
            right: name(table.pairs[b]),
            product: table
                .product(a, b)
                .iter()
                .map(ToString::to_string)
                .collect(),
        })
        .collect();
    report.griess = Some(GriessReport {
        basis: table.pairs.iter().map(|&p| name(p)).collect(),
        products,
    });
    Ok(report)
}

pub fn cmd_gram(config: &RunConfig, sug: &Sugawara) -> Result<Report, UsageError> {
    let mut report = Report::new(config);
    let space = report.timed("saturate", || saturate(sug, config.max_weight))?;
    let entries = report.timed("gram", || {
        (0..=config.max_weight)
            .map(|n| {
                let gram = gram_matrix(sug, &space, n, config.r.value());
                GramEntry {
                    weight: n,
                    labels: gram.labels.clone(),
                    matrix: gram
                        .matrix
                        .to_rows()
                        .iter()
                        .map(|row| row.iter().map(ToString::to_string).collect())
                        .collect(),
                    determinant: gram.determinant().to_string(),
                }
            })
            .collect::<Vec<_>>()
    });
    let mut outcome = deformed_voa::check::CaseOutcome::default();
    for e in &entries {
        let symmetric =
            (0..e.matrix.len()).all(|a| (0..a).all(|b| e.matrix[a][b] == e.matrix[b][a]));
        outcome.record(symmetric, || Witness {
            context: format!("Gram matrix at weight {}", e.weight),
            vector: String::new(),
            lhs: format!("{:?}", e.matrix),
            rhs: "symmetric".to_string(),
        });
    }
    report.checks.push(IdentityCheck {
        identity: "Gram matrices are symmetric".to_string(),
        cases: outcome.cases,
        failures: outcome.failures,
        witness: outcome.witness,
    });
    report.gram = Some(entries);
    Ok(report)
}

pub fn cmd_radical(config: &RunConfig, sug: &Sugawara) -> Result<Report, UsageError> {
    let mut report = Report::new(config);
    let value = config
        .r
        .value()
        .ok_or_else(|| UsageError("radical needs a numeric --r".to_string()))?
        .clone();
    let space = report.timed("saturate", || saturate(sug, config.max_weight))?;
    let rows = report.timed("radical", || {
        (0..=config.max_weight)
            .map(|n| RadicalRow {
                weight: n,
                dim_vj: space.dim(n),
                nullity: radical_dimension(sug, &space, n, &value),
            })
            .collect::<Vec<_>>()
    });
    report.radical = Some(rows);
    Ok(report)
}

pub fn cmd_auto(config: &RunConfig, sug: &Sugawara) -> Result<Report, UsageError> {
    let mut report = Report::new(config);
    automorphism_checks(&mut report, sug, config.max_weight)?;
    Ok(report)
}
