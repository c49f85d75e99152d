//! Jobs and reports behind the `ltdirac` command.
//!
//! A [`JobSpec`] names an operator, a base field, a mode and, for the
//! invariant, either `r` or `(n, k)`. [`run`] evaluates it into a [`Report`]
//! whose structured form is a versioned JSON document.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffop::slopes;
use crate::error::{Error, Result};
use crate::exactalg::field::fmt_rat;
use crate::exactalg::Field;
use crate::invariant::{as_invariant, as_invariant_nk, DivisorEntry, RIndex};
use crate::parse::{parse_field, parse_operator};
use crate::turrittin::{lt_decompose, LTDecomposition, PrecisionPolicy};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Slopes,
    #[default]
    Decompose,
    Invariant,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobSpec {
    pub operator: String,
    /// Extension specs such as `adjoin: z^2+1`, applied in order; empty for Q.
    pub field: Vec<String>,
    pub mode: Mode,
    pub r: Option<String>,
    pub n: Option<u64>,
    pub k: Option<u64>,
    pub format: Format,
    pub precision: PrecisionPolicy,
}

impl JobSpec {
    pub fn new(operator: &str, mode: Mode) -> JobSpec {
        JobSpec { operator: operator.to_string(), mode, ..JobSpec::default() }
    }

    pub fn from_toml(src: &str) -> Result<JobSpec> {
        toml::from_str(src).map_err(|e| Error::Invalid(format!("config: {}", e.message())))
    }

    pub fn from_json(src: &str) -> Result<JobSpec> {
        serde_json::from_str(src).map_err(|e| Error::Invalid(format!("job: {}", e)))
    }

    /// The index requested for `mode = invariant`.
    pub fn index(&self) -> Result<Index> {
        match (&self.r, self.n, self.k) {
            (Some(r), None, None) => Ok(Index::R(parse_r(r)?)),
            (None, Some(n), Some(k)) => Ok(Index::NK(n, k)),
            (None, None, None) => Err(Error::Invalid("invariant mode needs r or both n and k".into())),
            (Some(_), _, _) => Err(Error::Invalid("give either r or (n, k), not both".into())),
            _ => Err(Error::Invalid("n and k must be given together".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    R(RIndex),
    NK(u64, u64),
}

/// Parses `p/q` in lowest terms, or an integer.
pub fn parse_r(s: &str) -> Result<RIndex> {
    let bad = || Error::Invalid(format!("r must be a reduced fraction p/q, got {:?}", s));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: u64 = p.parse().map_err(|_| bad())?;
    let q: u64 = q.parse().map_err(|_| bad())?;
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(bad());
    }
    RIndex::new(p, q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub minpoly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeEntry {
    pub slope: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub form: String,
    pub rank: usize,
    pub orbit_size: usize,
    /// Generators adjoined beyond the base field to write `form`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub field: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub ram_index: u64,
    pub irregularity: String,
    pub total_rank: usize,
    pub components: Vec<ComponentSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub r: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    pub divisor: Vec<DivisorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub mode: Mode,
    pub operator: String,
    pub field: Vec<Generator>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slopes: Option<Vec<SlopeEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<InvariantReport>,
}

/// Generators of `f` above `base`, from the bottom up.
pub fn generators_over(f: &Field, base: &Field) -> Vec<Generator> {
    let mut out = Vec::new();
    let mut cur = f.clone();
    while cur != *base {
        let (Some(name), Some(p)) = (cur.generator_name(), cur.modulus()) else {
            break;
        };
        out.push(Generator { name: name.to_string(), minpoly: p.display_var(name) });
        match cur.base() {
            Some(b) => cur = b.clone(),
            None => break,
        }
    }
    out.reverse();
    out
}

pub fn summarize(dec: &LTDecomposition) -> Summary {
    let components = dec
        .components
        .iter()
        .map(|c| {
            let w = c.form.normalize();
            ComponentSummary {
                form: w.render(),
                rank: c.rank,
                orbit_size: c.orbit_size,
                field: generators_over(w.field(), &dec.base_field),
            }
        })
        .collect();
    Summary {
        ram_index: dec.ram_index,
        irregularity: fmt_rat(&dec.irregularity()),
        total_rank: dec.total_rank,
        components,
    }
}

pub fn run(spec: &JobSpec) -> Result<Report> {
    let field = parse_field(&spec.field)?;
    let l = parse_operator(&spec.operator, &field)?;
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        mode: spec.mode,
        operator: l.render(),
        field: generators_over(&field, &Field::rationals()),
        slopes: None,
        decomposition: None,
        invariant: None,
    };
    match spec.mode {
        Mode::Slopes => {
            let s = slopes(&l)?;
            report.slopes =
                Some(s.iter().map(|(p, m)| SlopeEntry { slope: fmt_rat(p), multiplicity: *m }).collect());
        }
        Mode::Decompose => {
            report.decomposition = Some(summarize(&lt_decompose(&l, &spec.precision)?));
        }
        Mode::Invariant => {
            let index = spec.index()?;
            let dec = lt_decompose(&l, &spec.precision)?;
            let (r, n, k, div) = match index {
                Index::R(r) => {
                    let div = as_invariant(&dec, &r.value())?;
                    (r.to_string(), None, None, div)
                }
                Index::NK(n, k) => {
                    let div = as_invariant_nk(&dec, n, k)?;
                    let r = BigRational::new(BigInt::from(k), BigInt::from(n));
                    (format!("{}/{}", r.numer(), r.denom()), Some(n), Some(k), div)
                }
            };
            report.decomposition = Some(summarize(&dec));
            report.invariant = Some(InvariantReport { r, n, k, divisor: div.serialize() });
        }
    }
    Ok(report)
}

/// Runs independent jobs in parallel; results keep the input order.
pub fn run_batch(specs: &[JobSpec]) -> Vec<Result<Report>> {
    specs.par_iter().map(run).collect()
}

impl Report {
    /// Pretty JSON followed by a newline.
    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Single-line JSON, as used for batch output.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "operator: {}", self.operator);
        for g in &self.field {
            let _ = writeln!(s, "field: {} = 0", g.minpoly);
        }
        if let Some(sl) = &self.slopes {
            let parts: Vec<String> = sl.iter().map(|e| format!("{} (x{})", e.slope, e.multiplicity)).collect();
            let _ = writeln!(s, "slopes: {}", parts.join(", "));
        }
        if let Some(d) = &self.decomposition {
            let _ = writeln!(s, "ramification index: {}", d.ram_index);
            let _ = writeln!(s, "irregularity: {}", d.irregularity);
            for c in &d.components {
                let form = if c.form.is_empty() { "0".to_string() } else { c.form.clone() };
                let _ = write!(s, "  E^({}) x R_{}  orbit {}", form, c.rank, c.orbit_size);
                for g in &c.field {
                    let _ = write!(s, "  [{} = 0]", g.minpoly);
                }
                s.push('\n');
            }
        }
        if let Some(inv) = &self.invariant {
            let _ = writeln!(s, "r = {}", inv.r);
            if inv.divisor.is_empty() {
                let _ = writeln!(s, "divisor: 0");
            } else {
                for e in &inv.divisor {
                    let _ = writeln!(s, "  {} * [{}]  (degree {})", e.multiplicity, e.minpoly, e.degree);
                }
            }
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Structured => self.to_structured(),
        }
    }
}

/// Error document printed in place of a report by batch runs.
pub fn error_json(e: &Error) -> String {
    serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "error": { "code": e.code(), "kind": e.kind(), "message": e.to_string() }
    })
    .to_string()
}
