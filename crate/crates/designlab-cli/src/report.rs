//! Run report: a fixed-schema envelope (command, config echo, artifact
//! version, wall-clock) wrapping a list of records, rendered as JSON or CSV.
//!
//! Determinism contract: for a fixed command line (and seed), the rendered
//! report is byte-identical across runs except for the `timestamp` subtree
//! (JSON) or the leading `#` comment line (CSV).

use num_rational::BigRational;
use serde::{Serialize, Serializer};

/// Output format selected with `--output`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

/// Where a reported number comes from.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Computed in integer/rational arithmetic with no rounding.
    Exact,
    /// An analytic inequality evaluated at the given parameters.
    Bound,
    /// A seeded sampling estimate with a standard error.
    MonteCarlo,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::Bound => "bound",
            Provenance::MonteCarlo => "monte-carlo",
        }
    }
}

/// Render a float as a JSON number when finite and as the strings
/// "inf"/"-inf"/"nan" otherwise (plain JSON has no non-finite numbers;
/// serde_json would silently emit null).
fn ser_maybe_f64<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(x) if x.is_finite() => s.serialize_f64(*x),
        Some(x) if x.is_nan() => s.serialize_str("nan"),
        Some(x) if *x > 0.0 => s.serialize_str("inf"),
        Some(_) => s.serialize_str("-inf"),
    }
}

/// Float to text for CSV cells, with explicit non-finite spellings and `.`
/// as the decimal separator.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{x}")
    }
}

/// Exact rationals are always serialized as "numerator/denominator" with a
/// positive denominator, e.g. "2/5", "14/1".
pub fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// One emitted row: every number carries a provenance tag and a
/// self-describing anchor formula.
#[derive(Clone, Debug, Serialize, Default)]
pub struct Record {
    /// Stable identifier of the check or table row.
    pub check: String,
    /// "pass" | "fail" | "info".
    pub status: String,
    /// "exact" | "bound" | "monte-carlo".
    pub provenance: String,
    /// Self-contained formula or identity the row instantiates.
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_maybe_f64")]
    pub alpha: Option<f64>,
    /// Exact rational value as "num/den", when the row has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_maybe_f64")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_maybe_f64")]
    pub reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_maybe_f64")]
    pub stderr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_maybe_f64")]
    pub z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Record {
    pub fn new(check: &str, provenance: Provenance, anchor: &str) -> Record {
        Record {
            check: check.to_string(),
            status: "info".to_string(),
            provenance: provenance.as_str().to_string(),
            anchor: anchor.to_string(),
            ..Record::default()
        }
    }

    pub fn pass_fail(mut self, ok: bool) -> Record {
        self.status = if ok { "pass" } else { "fail" }.to_string();
        self
    }

    pub fn dims(mut self, dims: impl Into<String>) -> Record {
        self.dims = Some(dims.into());
        self
    }

    pub fn alpha(mut self, alpha: f64) -> Record {
        self.alpha = Some(alpha);
        self
    }

    /// Attach an exact rational: fills both the "num/den" column and the
    /// float column with its rounding.
    pub fn exact_rational(mut self, r: &BigRational) -> Record {
        use num_traits::ToPrimitive;
        self.exact = Some(fmt_rational(r));
        if self.value.is_none() {
            self.value = r.to_f64();
        }
        self
    }

    pub fn value(mut self, v: f64) -> Record {
        self.value = Some(v);
        self
    }

    pub fn reference(mut self, r: f64) -> Record {
        self.reference = Some(r);
        self
    }

    pub fn stderr(mut self, s: f64) -> Record {
        self.stderr = Some(s);
        self
    }

    pub fn z(mut self, z: f64) -> Record {
        self.z = Some(z);
        self
    }

    pub fn verdict(mut self, v: &str) -> Record {
        self.verdict = Some(v.to_string());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Record {
        self.detail = Some(d.into());
        self
    }
}

/// Config echoed into every report.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    /// Canonical "key=value" summary of the resolved subcommand parameters.
    pub params: String,
    pub seed: u64,
    pub workers: usize,
    pub output: String,
    pub tolerance_scale: f64,
}

/// Wall-clock stamp: absolute time of emission and elapsed run time.
#[derive(Clone, Debug, Serialize)]
pub struct Timestamp {
    pub unix_ms: u128,
    pub elapsed_ms: f64,
}

/// The full run report.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub config: ConfigEcho,
    /// Artifact version (the crate version of this binary).
    pub version: String,
    pub timestamp: Timestamp,
    pub results: Vec<Record>,
}

const CSV_HEADER: [&str; 13] = [
    "check", "status", "provenance", "anchor", "dims", "alpha", "exact", "value", "reference",
    "stderr", "z", "verdict", "detail",
];

fn opt_f64_cell(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// Render the report in the requested format. CSV uses `.` as the decimal
/// separator (Rust float formatting is locale-independent) and embeds the
/// envelope as a single leading `#` comment line.
pub fn render(report: &RunReport, fmt: OutputFormat) -> Result<String, String> {
    match fmt {
        OutputFormat::Json => serde_json::to_string_pretty(report)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| format!("JSON serialization failed: {e}")),
        OutputFormat::Csv => {
            let mut out = format!(
                "# designlab v{} command={} {} seed={} workers={} output={} tolerance-scale={} unix-ms={} elapsed-ms={}\n",
                report.version,
                report.command,
                report.config.params,
                report.config.seed,
                report.config.workers,
                report.config.output,
                report.config.tolerance_scale,
                report.timestamp.unix_ms,
                report.timestamp.elapsed_ms,
            );
            let mut wtr = csv::Writer::from_writer(Vec::new());
            wtr.write_record(CSV_HEADER)
                .map_err(|e| format!("CSV write failed: {e}"))?;
            for r in &report.results {
                wtr.write_record([
                    r.check.clone(),
                    r.status.clone(),
                    r.provenance.clone(),
                    r.anchor.clone(),
                    r.dims.clone().unwrap_or_default(),
                    opt_f64_cell(r.alpha),
                    r.exact.clone().unwrap_or_default(),
                    opt_f64_cell(r.value),
                    opt_f64_cell(r.reference),
                    opt_f64_cell(r.stderr),
                    opt_f64_cell(r.z),
                    r.verdict.clone().unwrap_or_default(),
                    r.detail.clone().unwrap_or_default(),
                ])
                .map_err(|e| format!("CSV write failed: {e}"))?;
            }
            let body = wtr
                .into_inner()
                .map_err(|e| format!("CSV flush failed: {e}"))?;
            out.push_str(&String::from_utf8(body).expect("CSV output is UTF-8"));
            Ok(out)
        }
    }
}
