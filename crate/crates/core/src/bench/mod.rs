//! A registry of scripted example computations, each producing a report of exact assertions.

mod cases;

use std::fmt::{self, Display, Write as _};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::parse::{parse_fe, parse_poly};
use crate::algebra::{Fe, Poly};
use crate::error::BenchError;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the literature the example reproduces.
    Literature,
    /// Holds by construction.
    Trivial,
    /// Follows from other verified values by a short computation.
    Derived,
}

impl Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Literature => "literature",
            Provenance::Trivial => "trivial",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub provenance: Provenance,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub assertions: Vec<Assertion>,
    pub runtime_ms: u64,
}

impl Report {
    pub fn pass(&self) -> bool {
        !self.assertions.is_empty() && self.assertions.iter().all(|a| a.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }

    pub fn assertion(&self, label: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.label == label)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

pub fn emit_report(r: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(r).expect("reports serialize"),
        ReportFormat::Text => {
            let mut out = String::new();
            let verdict = if r.pass() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{}  {}  ({} ms)", r.id, verdict, r.runtime_ms);
            for a in &r.assertions {
                let mark = if a.pass { "ok  " } else { "FAIL" };
                let _ = writeln!(out, "  [{mark}] {}: expected {}, computed {} ({})", a.label, a.expected, a.computed, a.provenance);
            }
            out
        }
    }
}

/// Collects assertions while a recipe runs.
#[derive(Default)]
pub(crate) struct Checks {
    items: Vec<Assertion>,
}

impl Checks {
    fn push(&mut self, label: &str, expected: String, computed: String, provenance: Provenance, pass: bool) {
        self.items.push(Assertion { label: label.to_string(), expected, computed, provenance, pass });
    }

    /// Passes when the two renderings agree.
    pub(crate) fn eq(&mut self, label: &str, expected: impl Display, computed: impl Display, provenance: Provenance) {
        let (e, c) = (expected.to_string(), computed.to_string());
        let pass = e == c;
        self.push(label, e, c, provenance, pass);
    }

    pub(crate) fn holds(&mut self, label: &str, computed: bool, provenance: Provenance) {
        self.eq(label, true, computed, provenance);
    }

    pub(crate) fn error(&mut self, label: &str, err: impl Display) {
        self.push(label, "completes".into(), format!("error: {err}"), Provenance::Trivial, false);
    }
}

/// A registered example: its id, parameter names and default parameter values.
#[derive(Clone, Copy, Debug)]
pub struct ExampleCase {
    pub id: &'static str,
    pub params: &'static [&'static str],
    pub defaults: &'static [&'static str],
    pub summary: &'static str,
}

pub const REGISTRY: &[ExampleCase] = &[
    ExampleCase { id: "es321", params: &[], defaults: &[], summary: "rational surface y^2 = x^3 + x^2 + tx" },
    ExampleCase { id: "bpf", params: &["lambda", "mu"], defaults: &["2", "3"], summary: "Barth-Peters K3 with two III* fibres" },
    ExampleCase { id: "inose", params: &["A", "B"], defaults: &["1", "3"], summary: "K3 with two II* fibres and its involution" },
    ExampleCase {
        id: "m1-family",
        params: &["A", "U", "V"],
        defaults: &["t^4 + 2t^3 - t + 3", "2t^2 + t + 1", "t^2 - 3t + 2"],
        summary: "double cover with section (U(t^2), tV(t^2)) and free involution",
    },
    ExampleCase { id: "m1-lemma-degenerate", params: &[], defaults: &[], summary: "the four degenerate loci of the M=1 family" },
    ExampleCase { id: "m2-family", params: &["q"], defaults: &["2"], summary: "section of height 2 on the two-III* model" },
    ExampleCase { id: "2x4star", params: &["a", "b"], defaults: &["-9/4", "24"], summary: "model with two I4* fibres and its involution" },
    ExampleCase { id: "es19-m1", params: &["a"], defaults: &["-1"], summary: "two II* fibres with a section of height 4" },
    ExampleCase { id: "singular-24", params: &[], defaults: &[], summary: "singular K3 of discriminant -24 at a = -1/144" },
    ExampleCase { id: "brauer", params: &["M", "N"], defaults: &["1", "3"], summary: "Brauer class witness on U + 2E8(-1) + <-4M> + <-2N>" },
    ExampleCase { id: "figure3", params: &["M"], defaults: &["1"], summary: "two D4 configurations joined by a class of square -2M-2" },
    ExampleCase { id: "odd-M", params: &["M"], defaults: &["1"], summary: "obstruction for odd M" },
    ExampleCase { id: "triv-disc", params: &[], defaults: &[], summary: "U + 2E7(-1) + 2A1(-1) glued by a two-torsion section" },
    ExampleCase { id: "cti-lattice", params: &["M"], defaults: &["1"], summary: "rank-10 lattice with unimodular index-2 overlattice" },
    ExampleCase { id: "tau-anti", params: &["M", "N"], defaults: &["1", "3"], summary: "tau acting on an abstract Neron-Severi model" },
];

/// Concrete instances run by `verify --all`.
pub const ALL_INSTANCES: &[&str] = &[
    "es321",
    "bpf(2,3)",
    "inose(1,3)",
    "m1-family",
    "m1-lemma-degenerate",
    "m2-family(2)",
    "2x4star(-9/4,24)",
    "es19-m1(-1)",
    "singular-24",
    "brauer(1,3)",
    "brauer(1,5)",
    "brauer(2,3)",
    "brauer(3,7)",
    "figure3(1)",
    "figure3(2)",
    "figure3(3)",
    "figure3(5)",
    "figure3(10)",
    "odd-M(1)",
    "odd-M(3)",
    "odd-M(5)",
    "odd-M(7)",
    "triv-disc",
    "cti-lattice(1)",
    "cti-lattice(2)",
    "tau-anti(1,3)",
    "tau-anti(2,5)",
];

/// Parameters of one run, by position.
pub(crate) struct Params {
    values: Vec<String>,
}

impl Params {
    fn get(&self, i: usize) -> &str {
        &self.values[i]
    }

    pub(crate) fn fe(&self, i: usize) -> Result<Fe, BenchError> {
        parse_fe(self.get(i)).map_err(|e| BenchError::Parameter(format!("{}: {e}", self.get(i))))
    }

    pub(crate) fn int(&self, i: usize) -> Result<i64, BenchError> {
        self.get(i).trim().parse().map_err(|_| BenchError::Parameter(format!("{} is not an integer", self.get(i))))
    }

    pub(crate) fn poly(&self, i: usize) -> Result<Poly, BenchError> {
        parse_poly(self.get(i)).map_err(|e| BenchError::Parameter(format!("{}: {e}", self.get(i))))
    }

    pub(crate) fn text(&self, i: usize) -> String {
        self.get(i).trim().to_string()
    }
}

/// Splits `name(p1,p2)` or `name-p1-p2` into a registry entry and its parameters.
pub fn resolve(id: &str) -> Result<(&'static ExampleCase, Vec<String>), BenchError> {
    let id = id.trim();
    let unknown = || BenchError::UnknownExample(id.to_string());
    let (name, given): (&str, Vec<String>) = if let Some(open) = id.find('(') {
        let inner = id[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
        (&id[..open], inner.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
    } else if let Some(case) = REGISTRY.iter().find(|c| c.id == id) {
        (case.id, Vec::new())
    } else {
        let case = REGISTRY
            .iter()
            .filter(|c| id.starts_with(c.id) && id[c.id.len()..].starts_with('-'))
            .max_by_key(|c| c.id.len())
            .ok_or_else(unknown)?;
        (case.id, id[case.id.len() + 1..].split('-').map(str::to_string).collect())
    };
    let case = REGISTRY.iter().find(|c| c.id == name).ok_or_else(unknown)?;
    let values = if given.is_empty() {
        case.defaults.iter().map(|s| s.to_string()).collect()
    } else if given.len() == case.params.len() {
        given
    } else {
        return Err(BenchError::Parameter(format!(
            "{} takes {} parameter(s) ({}), got {}",
            case.id,
            case.params.len(),
            case.params.join(", "),
            given.len()
        )));
    };
    Ok((case, values))
}

fn canonical_id(case: &ExampleCase, values: &[String]) -> String {
    if values.is_empty() {
        case.id.to_string()
    } else {
        format!("{}({})", case.id, values.join(","))
    }
}

/// Runs a registered example. Unknown ids and malformed parameters are errors; failed
/// assertions and failing computations are recorded in the report.
pub fn run_example(id: &str) -> Result<Report, BenchError> {
    let (case, values) = resolve(id)?;
    let params = Params { values: values.clone() };
    let start = Instant::now();
    let mut checks = Checks::default();
    if let Err(e) = cases::run(case.id, &params, &mut checks) {
        match e {
            BenchError::Parameter(_) => return Err(e),
            other => checks.error("computation", other),
        }
    }
    Ok(Report {
        id: canonical_id(case, &values),
        assertions: checks.items,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every instance of [`ALL_INSTANCES`], ordered by id.
pub fn run_all() -> Vec<Report> {
    let mut out: Vec<Report> = ALL_INSTANCES.iter().map(|id| run_example(id).expect("registered instance")).collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_forms() {
        let (c, v) = resolve("brauer-1-3").unwrap();
        assert_eq!((c.id, v), ("brauer", vec!["1".to_string(), "3".to_string()]));
        let (c, v) = resolve("bpf(5, 7)").unwrap();
        assert_eq!((c.id, v.len()), ("bpf", 2));
        let (c, v) = resolve("odd-M").unwrap();
        assert_eq!((c.id, v), ("odd-M", vec!["1".to_string()]));
        let (c, _) = resolve("odd-M-5").unwrap();
        assert_eq!(c.id, "odd-M");
        assert!(matches!(resolve("nope"), Err(BenchError::UnknownExample(_))));
        assert!(matches!(resolve("brauer(1)"), Err(BenchError::Parameter(_))));
    }

    #[test]
    fn text_and_json_reports() {
        let r = run_example("figure3(2)").unwrap();
        assert!(r.pass(), "{r:?}");
        let json = emit_report(&r, ReportFormat::Json);
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(emit_report(&r, ReportFormat::Text).starts_with("figure3(2)  PASS"));
    }
}
