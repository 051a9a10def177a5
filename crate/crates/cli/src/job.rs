//! Resolving command-line flags and an optional TOML file into a validated
//! job description.

use std::path::PathBuf;

use clap::Args;
use serde::Deserialize;

use orthocone_core::algebra::{FieldSpec, GroebnerLimits, TermOrderKind};
use orthocone_core::lattice::{DimensionContext, IsotropicIndex};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutFormat {
    #[default]
    Table,
    Json,
    Csv,
}

impl OutFormat {
    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "table" => Ok(OutFormat::Table),
            "json" => Ok(OutFormat::Json),
            "csv" => Ok(OutFormat::Csv),
            _ => Err(CliError::usage(format!("unknown output format {s:?}; expected table, json or csv"))),
        }
    }
}

/// Flags shared by every command. Each may also come from `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct GlobalOpts {
    /// Rank d; inferred from --v when omitted.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Base point v in I(d), comma-separated, e.g. 1,2,3,4,5.
    #[arg(long, global = true)]
    pub v: Option<String>,
    /// Schubert index w in I(d).
    #[arg(long, global = true)]
    pub w: Option<String>,
    /// Index tau in I(d) selecting a single Pfaffian.
    #[arg(long, global = true)]
    pub tau: Option<String>,
    /// Term order: hlex, rlex or diagproj.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// Coefficient field: rat or fp:<odd prime>.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Largest degree allowed during Buchberger's algorithm.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: Option<u32>,
    /// Largest number of terms allowed in any intermediate polynomial.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_terms: Option<u64>,
    /// Largest Gröbner basis size allowed.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_basis: Option<u64>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output format: table, json or csv.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// TOML file with defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Print X[r,c] names even where a..j aliases exist.
    #[arg(long, global = true)]
    pub no_alias: bool,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum IndexValue {
    Text(String),
    List(Vec<usize>),
}

impl IndexValue {
    fn into_text(self) -> String {
        match self {
            IndexValue::Text(s) => s,
            IndexValue::List(v) => v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConfigFile {
    d: Option<usize>,
    v: Option<IndexValue>,
    w: Option<IndexValue>,
    tau: Option<IndexValue>,
    order: Option<String>,
    field: Option<String>,
    max_degree: Option<u32>,
    max_terms: Option<u64>,
    max_basis: Option<u64>,
    seed: Option<u64>,
    out: Option<String>,
}

/// A validated job: `v` in `I(d)`, `w` and `tau` in `I(d)`, `v <= w`.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub d: Option<usize>,
    pub v: Option<IsotropicIndex>,
    pub w: Option<IsotropicIndex>,
    pub tau: Option<IsotropicIndex>,
    pub order: TermOrderKind,
    pub field: FieldSpec,
    pub limits: GroebnerLimits,
    pub seed: u64,
    pub out: OutFormat,
    pub alias: bool,
}

fn parse_entries(what: &str, s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|x| x.trim())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().map_err(|_| CliError::usage(format!("--{what}: {x:?} is not a positive integer"))))
        .collect()
}

fn index(what: &str, d: Option<usize>, text: Option<String>) -> Result<Option<IsotropicIndex>, CliError> {
    let Some(text) = text else { return Ok(None) };
    let entries = parse_entries(what, &text)?;
    let d = d.unwrap_or(entries.len());
    IsotropicIndex::new(d, entries).map(Some).map_err(|e| CliError::usage(format!("--{what}: {e}")))
}

impl JobSpec {
    pub fn resolve(flags: &GlobalOpts) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
                toml::from_str::<ConfigFile>(&text)
                    .map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        let text = |flag: &Option<String>, cfg: Option<IndexValue>| flag.clone().or(cfg.map(IndexValue::into_text));
        let d = flags.d.or(file.d);
        if let Some(d) = d {
            DimensionContext::new(d).map_err(|e| CliError::usage(format!("--d: {e}")))?;
        }
        let v = index("v", d, text(&flags.v, file.v))?;
        let d = d.or(v.as_ref().map(IsotropicIndex::d));
        let w = index("w", d, text(&flags.w, file.w))?;
        let d = d.or(w.as_ref().map(IsotropicIndex::d));
        let tau = index("tau", d, text(&flags.tau, file.tau))?;
        let d = d.or(tau.as_ref().map(IsotropicIndex::d));
        if let (Some(v), Some(w)) = (&v, &w) {
            if !v.leq(w).map_err(|e| CliError::usage(e.to_string()))? {
                return Err(CliError::usage(format!("v = {v} is not below w = {w} in the Bruhat order (need v_i <= w_i for all i)")));
            }
        }
        let order_name = flags.order.clone().or(file.order).unwrap_or_else(|| "hlex".into());
        let order = TermOrderKind::parse(&order_name).map_err(|e| CliError::usage(format!("--order: {e}")))?;
        let field_name = flags.field.clone().or(file.field).unwrap_or_else(|| "rat".into());
        let field = FieldSpec::parse(&field_name).map_err(|e| CliError::usage(format!("--field: {e}")))?;
        let mut limits = GroebnerLimits::default();
        let positive = |name: &str, x: u64| {
            if x == 0 {
                Err(CliError::usage(format!("{name} must be positive")))
            } else {
                Ok(x)
            }
        };
        if let Some(x) = flags.max_degree.or(file.max_degree) {
            limits.max_degree = positive("max-degree", x as u64)? as u32;
        }
        if let Some(x) = flags.max_terms.or(file.max_terms) {
            limits.max_terms = positive("max-terms", x)? as usize;
        }
        if let Some(x) = flags.max_basis.or(file.max_basis) {
            limits.max_basis_size = positive("max-basis", x)? as usize;
        }
        let out = OutFormat::parse(&flags.out.clone().or(file.out).unwrap_or_else(|| "table".into()))?;
        Ok(JobSpec {
            d,
            v,
            w,
            tau,
            order,
            field,
            limits,
            seed: flags.seed.or(file.seed).unwrap_or(0),
            out,
            alias: !flags.no_alias,
        })
    }

    pub fn require_d(&self) -> Result<usize, CliError> {
        self.d.ok_or_else(|| CliError::usage("this command needs --d (or --v)"))
    }

    pub fn require_v(&self) -> Result<&IsotropicIndex, CliError> {
        self.v.as_ref().ok_or_else(|| CliError::usage("this command needs --v"))
    }

    pub fn require_w(&self) -> Result<&IsotropicIndex, CliError> {
        self.w.as_ref().ok_or_else(|| CliError::usage("this command needs --w"))
    }

    pub fn require_tau(&self) -> Result<&IsotropicIndex, CliError> {
        self.tau.as_ref().ok_or_else(|| CliError::usage("this command needs --tau"))
    }
}
