//! Throughput counts, generous precision and error breakdown computed
//! from resolver output and human adjudication files.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::EvalError;
use crate::io::ResolutionOutput;

/// Reference figures from the original large-scale evaluation. They need
/// the full reading corpus, the upstream extractor and human raters, so
/// they are documentation only.
pub mod reference {
    pub const BASELINE_EVENTS: u64 = 46_234;
    pub const COREF_ONLY_EVENTS: u64 = 1_492;
    pub const COMBINED_EVENTS: u64 = 47_726;
    pub const GENEROUS_PRECISION_COMBINED: f64 = 0.742;
    pub const GENEROUS_PRECISION_COREF_ONLY: f64 = 0.680;
    pub const MUTANT_PRECISION: f64 = 0.757;
    /// Upper bound on the contribution of coreference to event recall,
    /// measured on a different annotated corpus.
    pub const MAX_COREF_CONTRIBUTION: f64 = 0.089;
    /// Share of precision errors by source: entity recognition, event
    /// recognition, coreference.
    pub const ERROR_SHARES: [f64; 3] = [0.14, 0.36, 0.50];
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Throughput {
    pub baseline: u64,
    pub coref_only: u64,
    pub combined: u64,
}

impl std::ops::Add for Throughput {
    type Output = Throughput;

    fn add(self, o: Throughput) -> Throughput {
        Throughput {
            baseline: self.baseline + o.baseline,
            coref_only: self.coref_only + o.coref_only,
            combined: self.combined + o.combined,
        }
    }
}

/// Completed events counted by one output document. With `darpa_collapse`
/// an event used as an argument of another event is folded into it.
pub fn count_events(output: &ResolutionOutput, darpa_collapse: bool) -> Throughput {
    let nested: BTreeSet<&str> = if darpa_collapse {
        let ids: BTreeSet<&str> = output.completed_events.iter().map(|e| e.event.id.as_str()).collect();
        output
            .completed_events
            .iter()
            .flat_map(|e| e.event.args.iter())
            .map(|a| a.mention_ref.as_str())
            .filter(|r| ids.contains(r))
            .collect()
    } else {
        BTreeSet::new()
    };
    let mut t = Throughput::default();
    for e in output.completed_events.iter().filter(|e| !nested.contains(e.event.id.as_str())) {
        if e.provenance.is_empty() {
            t.baseline += 1;
        } else {
            t.coref_only += 1;
        }
        t.combined += 1;
    }
    t
}

fn doc_ids(outputs: &[ResolutionOutput]) -> BTreeSet<&str> {
    outputs.iter().map(|o| o.doc_id()).collect()
}

/// Throughput of the coreference-enabled run. `baseline_run` is the run
/// with coreference disabled and must cover the same documents.
pub fn throughput(
    system: &[ResolutionOutput],
    baseline_run: &[ResolutionOutput],
    darpa_collapse: bool,
) -> Result<Throughput, EvalError> {
    let a = doc_ids(system);
    let b = doc_ids(baseline_run);
    if a != b {
        let only_system: Vec<&str> = a.difference(&b).copied().collect();
        let only_baseline: Vec<&str> = b.difference(&a).copied().collect();
        return Err(EvalError::CorpusMismatch(format!(
            "only in system: {only_system:?}; only in baseline: {only_baseline:?}"
        )));
    }
    Ok(system
        .iter()
        .map(|o| count_events(o, darpa_collapse))
        .fold(Throughput::default(), |x, y| x + y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ErrorClass {
    NamedEntityRecognition,
    EventRecognition,
    CoreferenceResolution,
}

impl ErrorClass {
    pub const ALL: [ErrorClass; 3] = [
        ErrorClass::NamedEntityRecognition,
        ErrorClass::EventRecognition,
        ErrorClass::CoreferenceResolution,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ErrorClass::NamedEntityRecognition => "NamedEntityRecognition",
            ErrorClass::EventRecognition => "EventRecognition",
            ErrorClass::CoreferenceResolution => "CoreferenceResolution",
        }
    }
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ErrorClass {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ErrorClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| EvalError::UnknownErrorClass(s.to_string()))
    }
}

/// One human judgment. The score is stored in half points (0, 1 or 2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjudicationRecord {
    pub event_id: String,
    pub half_points: u8,
    pub error_class: Option<ErrorClass>,
}

impl AdjudicationRecord {
    pub fn judgment(&self) -> f64 {
        f64::from(self.half_points) / 2.0
    }
}

fn parse_judgment(event_id: &str, raw: &str, mutant_mode: bool) -> Result<u8, EvalError> {
    let invalid = || EvalError::InvalidJudgment {
        event_id: event_id.to_string(),
        value: raw.to_string(),
    };
    let value: f64 = raw.trim().parse().map_err(|_| invalid())?;
    let half_points = match value {
        v if v == 0.0 => 0,
        v if v == 0.5 && mutant_mode => 1,
        v if v == 1.0 => 2,
        _ => return Err(invalid()),
    };
    Ok(half_points)
}

/// Parses `event_id,judgment[,error_class]` rows after a header row.
/// A judgment of 0.5 is only accepted in mutant mode.
pub fn parse_adjudications(bytes: &[u8], mutant_mode: bool) -> Result<Vec<AdjudicationRecord>, EvalError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers = reader.headers().map_err(|e| EvalError::Malformed(e.to_string()))?;
    if headers.get(0) != Some("event_id") || headers.get(1) != Some("judgment") {
        return Err(EvalError::Malformed(
            "header must start with `event_id,judgment`".to_string(),
        ));
    }
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| EvalError::Malformed(e.to_string()))?;
        let event_id = row.get(0).unwrap_or_default().to_string();
        let raw = row
            .get(1)
            .ok_or_else(|| EvalError::Malformed(format!("row for `{event_id}` has no judgment")))?;
        let half_points = parse_judgment(&event_id, raw, mutant_mode)?;
        let error_class = match row.get(2) {
            Some(s) if !s.is_empty() => Some(s.parse()?),
            _ => None,
        };
        out.push(AdjudicationRecord {
            event_id,
            half_points,
            error_class,
        });
    }
    Ok(out)
}

/// Exact mean of judgments, kept as half points over a record count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    pub half_points: u64,
    pub count: u64,
}

impl Precision {
    /// Reduced numerator and denominator of the mean judgment.
    pub fn ratio(&self) -> (u64, u64) {
        let (n, d) = (self.half_points, 2 * self.count);
        let g = gcd(n, d);
        (n / g, d / g)
    }

    pub fn value(&self) -> f64 {
        self.half_points as f64 / (2 * self.count) as f64
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.ratio();
        write!(f, "{:.1}% ({n}/{d})", 100.0 * self.value())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

pub fn generous_precision(records: &[AdjudicationRecord]) -> Result<Precision, EvalError> {
    if records.is_empty() {
        return Err(EvalError::EmptySample);
    }
    Ok(Precision {
        half_points: records.iter().map(|r| u64::from(r.half_points)).sum(),
        count: records.len() as u64,
    })
}

/// Precision errors per class, over records judged 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBreakdown {
    pub counts: BTreeMap<ErrorClass, u64>,
    pub total: u64,
}

impl ErrorBreakdown {
    pub fn fraction(&self, class: ErrorClass) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.counts.get(&class).copied().unwrap_or(0) as f64 / self.total as f64
    }
}

pub fn error_breakdown(records: &[AdjudicationRecord]) -> Result<ErrorBreakdown, EvalError> {
    let mut b = ErrorBreakdown::default();
    for r in records.iter().filter(|r| r.half_points == 0) {
        let class = r
            .error_class
            .ok_or_else(|| EvalError::MissingErrorClass(r.event_id.clone()))?;
        *b.counts.entry(class).or_insert(0) += 1;
        b.total += 1;
    }
    Ok(b)
}

/// Full evaluation report as emitted by the `eval` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub throughput: Throughput,
    /// Events emitted by the run with coreference disabled.
    pub baseline_run_events: u64,
    pub precision: Option<PrecisionReport>,
    pub errors: Option<ErrorBreakdown>,
    pub mutant_mode: bool,
    pub darpa_collapse: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrecisionReport {
    pub numerator: u64,
    pub denominator: u64,
    pub value: f64,
}

impl From<Precision> for PrecisionReport {
    fn from(p: Precision) -> Self {
        let (numerator, denominator) = p.ratio();
        PrecisionReport {
            numerator,
            denominator,
            value: p.value(),
        }
    }
}

impl EvalReport {
    pub fn build(
        system: &[ResolutionOutput],
        baseline_run: &[ResolutionOutput],
        adjudications: Option<&[AdjudicationRecord]>,
        mutant_mode: bool,
        darpa_collapse: bool,
    ) -> Result<Self, EvalError> {
        let throughput = throughput(system, baseline_run, darpa_collapse)?;
        let baseline_run_events = baseline_run
            .iter()
            .map(|o| count_events(o, darpa_collapse).combined)
            .sum();
        let (precision, errors) = match adjudications {
            Some(records) => (
                Some(generous_precision(records)?.into()),
                Some(error_breakdown(records)?),
            ),
            None => (None, None),
        };
        Ok(EvalReport {
            throughput,
            baseline_run_events,
            precision,
            errors,
            mutant_mode,
            darpa_collapse,
        })
    }

    /// Plain-text tables of event counts, precision and error shares.
    pub fn table(&self) -> String {
        let t = &self.throughput;
        let mut s = String::new();
        s.push_str(&format!("{:<28}{:>10}\n", "System", "Events"));
        s.push_str(&format!("{:<28}{:>10}\n", "Baseline run", self.baseline_run_events));
        s.push_str(&format!("{:<28}{:>10}\n", "Without coref links", t.baseline));
        s.push_str(&format!("{:<28}{:>10}\n", "Coref only", t.coref_only));
        s.push_str(&format!("{:<28}{:>10}\n", "Combined", t.combined));
        if let Some(p) = &self.precision {
            let label = if self.mutant_mode { "Mutant precision" } else { "Generous precision" };
            s.push_str(&format!(
                "\n{label:<28}{:>9.1}% ({}/{})\n",
                100.0 * p.value,
                p.numerator,
                p.denominator
            ));
        }
        if let Some(e) = &self.errors {
            s.push_str(&format!("\n{:<28}{:>10}\n", "Error source", "Share"));
            for class in ErrorClass::ALL {
                s.push_str(&format!("{:<28}{:>9.1}%\n", class.as_str(), 100.0 * e.fraction(class)));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, half_points: u8, class: Option<ErrorClass>) -> AdjudicationRecord {
        AdjudicationRecord {
            event_id: id.into(),
            half_points,
            error_class: class,
        }
    }

    #[test]
    fn all_ones_is_one() {
        let records: Vec<_> = (0..10).map(|i| rec(&format!("e{i}"), 2, None)).collect();
        let p = generous_precision(&records).unwrap();
        assert_eq!(p.ratio(), (1, 1));
    }

    #[test]
    fn mutant_mode_halves() {
        let csv = "event_id,judgment,error_class\na,1\nb,1\nc,0.5\nd,0,CoreferenceResolution\n";
        let records = parse_adjudications(csv.as_bytes(), true).unwrap();
        let p = generous_precision(&records).unwrap();
        assert_eq!(p.ratio(), (5, 8));
        assert_eq!(p.value(), 0.625);
    }

    #[test]
    fn half_point_rejected_outside_mutant_mode() {
        let csv = "event_id,judgment\na,0.5\n";
        assert!(matches!(
            parse_adjudications(csv.as_bytes(), false),
            Err(EvalError::InvalidJudgment { .. })
        ));
    }

    #[test]
    fn header_is_required() {
        let csv = "a,1\nb,0\n";
        assert!(matches!(parse_adjudications(csv.as_bytes(), false), Err(EvalError::Malformed(_))));
    }

    #[test]
    fn empty_sample_is_an_error() {
        assert_eq!(generous_precision(&[]), Err(EvalError::EmptySample));
    }

    #[test]
    fn breakdown_quarters() {
        use ErrorClass::*;
        let records = vec![
            rec("a", 0, Some(NamedEntityRecognition)),
            rec("b", 0, Some(EventRecognition)),
            rec("c", 0, Some(CoreferenceResolution)),
            rec("d", 0, Some(CoreferenceResolution)),
            rec("e", 2, None),
        ];
        let b = error_breakdown(&records).unwrap();
        assert_eq!(b.total, 4);
        assert_eq!(b.fraction(NamedEntityRecognition), 0.25);
        assert_eq!(b.fraction(CoreferenceResolution), 0.5);
    }

    #[test]
    fn single_error_is_whole_share() {
        let b = error_breakdown(&[rec("a", 0, Some(ErrorClass::EventRecognition))]).unwrap();
        assert_eq!(b.fraction(ErrorClass::EventRecognition), 1.0);
    }

    #[test]
    fn missing_class_names_the_event() {
        assert_eq!(
            error_breakdown(&[rec("E7", 0, None)]),
            Err(EvalError::MissingErrorClass("E7".into()))
        );
    }

    #[test]
    fn empty_corpus_counts_zero() {
        assert_eq!(throughput(&[], &[], false).unwrap(), Throughput::default());
    }
}
