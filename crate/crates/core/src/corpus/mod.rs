//! The identity corpus: a registry of verification records, grouped G0–G9.
//!
//! Each [`IdentityRecord`] freezes one identity: builders for every known
//! closed form of both sides, the exponent lattice, the default truncation
//! order (in `q`-units), and the parameter samples (exact rational points
//! `c*q^e`, chosen to avoid the poles listed with the source identity).
//! Verification expands every side at every sample and compares
//! coefficientwise; a failure reports the first mismatched exponent, both
//! coefficients, and the sample binding.
//!
//! Parametric records are *verified at their samples*, not proved; records
//! whose sources state them on numerical evidence carry the `numeric-only`
//! status.  The registry is mirrored line-for-line by
//! `corpus_manifest.txt` (see [`manifest`]), which is checked for
//! consistency by the test suite.

mod build;
mod g0;
mod g1;
mod g2;
mod g3;
mod g4;
mod g5;
mod g6;
mod g7;
mod g8;
mod g9;
pub mod manifest;

use std::sync::Arc;
use std::time::Instant;

use num::One;
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::Serialize;

use crate::dual::{evaluate_descriptor, invert_q, EulerianDescriptor};
use crate::series::{Coeff, Error, Mismatch, ParamValue, QSeries, Result};

/// One specialization of a record's free parameters.
#[derive(Debug, Clone, Default)]
pub struct Sample {
    entries: Vec<(String, SampleValue)>,
}

/// A bound value inside a [`Sample`].
#[derive(Debug, Clone)]
pub enum SampleValue {
    /// A rational-times-`q`-power parameter.
    Point(ParamValue),
    /// An integer parameter (polynomial degree, Pochhammer length, ...).
    Int(i64),
    /// A named object from another registry (a Bailey chain).
    Name(String),
}

impl Sample {
    /// The empty binding for records without free parameters.
    pub fn fixed() -> Self {
        Sample::default()
    }

    pub fn point(name: &str, v: ParamValue) -> Self {
        Sample::default().with_point(name, v)
    }

    pub fn with_point(mut self, name: &str, v: ParamValue) -> Self {
        self.entries.push((name.into(), SampleValue::Point(v)));
        self
    }

    pub fn int(name: &str, n: i64) -> Self {
        Sample::default().with_int(name, n)
    }

    pub fn with_int(mut self, name: &str, n: i64) -> Self {
        self.entries.push((name.into(), SampleValue::Int(n)));
        self
    }

    pub fn name(name: &str, value: &str) -> Self {
        let mut s = Sample::default();
        s.entries
            .push((name.into(), SampleValue::Name(value.into())));
        s
    }

    fn lookup(&self, name: &str) -> Result<&SampleValue> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::Domain(format!("sample has no binding for `{name}`")))
    }

    /// The bound rational point `name`, or an error naming the hole.
    pub fn get_point(&self, name: &str) -> Result<&ParamValue> {
        match self.lookup(name)? {
            SampleValue::Point(v) => Ok(v),
            _ => Err(Error::Domain(format!("binding `{name}` is not a point"))),
        }
    }

    pub fn get_int(&self, name: &str) -> Result<i64> {
        match self.lookup(name)? {
            SampleValue::Int(n) => Ok(*n),
            _ => Err(Error::Domain(format!("binding `{name}` is not an integer"))),
        }
    }

    pub fn get_name(&self, name: &str) -> Result<&str> {
        match self.lookup(name)? {
            SampleValue::Name(s) => Ok(s),
            _ => Err(Error::Domain(format!("binding `{name}` is not a name"))),
        }
    }

    /// Human-readable binding, e.g. `x = 2q`, `N = 7`, `(fixed)`.
    pub fn label(&self) -> String {
        if self.entries.is_empty() {
            return "(fixed)".into();
        }
        self.entries
            .iter()
            .map(|(n, v)| match v {
                SampleValue::Point(p) => format!("{n} = {p}"),
                SampleValue::Int(k) => format!("{n} = {k}"),
                SampleValue::Name(s) => format!("{n} = {s}"),
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// A side builder: expands one closed form at a sample, truncated at the
/// given order numerator (on the record's lattice).
pub type Builder = Arc<dyn Fn(&Sample, i64) -> Result<QSeries> + Send + Sync>;

/// How a record's claim is established here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// No free parameters: both sides expanded once and compared.
    Fixed,
    /// Free parameters specialized at the listed samples.
    Sampled,
    /// Stated on numerical evidence in the source literature (no short
    /// proof is known); held to the same expansion standard here.
    NumericOnly,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Fixed => "fixed",
            Status::Sampled => "sampled",
            Status::NumericOnly => "numeric-only",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        match s {
            "fixed" => Some(Status::Fixed),
            "sampled" => Some(Status::Sampled),
            "numeric-only" => Some(Status::NumericOnly),
            _ => None,
        }
    }
}

/// Witness that a record's left side is the `q -> 1/q` dual of a stored
/// Eulerian descriptor: `lhs == offset + eval(invert_q(descriptor))`.
#[derive(Clone)]
pub struct DualWitness {
    pub descriptor: EulerianDescriptor,
    /// Constant carried outside the summation (e.g. the leading `1` of a
    /// two-form expansion).
    pub offset: i64,
}

/// One corpus entry.
#[derive(Clone)]
pub struct IdentityRecord {
    /// Stable identifier, e.g. `RLNid2.a`, `mock-chi0-5th.m-form`.
    pub id: String,
    /// Literature anchor for the identity.
    pub source: String,
    /// Group number 0–9.
    pub group: u8,
    /// Extra filter tags, e.g. `dual-second-type`.
    pub tags: Vec<&'static str>,
    pub status: Status,
    /// Exponent lattice denominator `D` (exponents live in `(1/D)Z`).
    pub lattice: u32,
    /// Default truncation order in `q`-units.
    pub default_order: i64,
    pub samples: Vec<Sample>,
    pub lhs: Builder,
    pub rhs: Builder,
    /// Further closed forms; each must equal the left side as well.
    pub alt: Vec<(String, Builder)>,
    /// Mechanized `q -> 1/q` witness, checked as one more comparison.
    pub dual_of: Option<DualWitness>,
}

impl IdentityRecord {
    pub fn group_tag(&self) -> String {
        format!("G{}", self.group)
    }
}

static REGISTRY: Lazy<Vec<IdentityRecord>> = Lazy::new(|| {
    let mut v = Vec::new();
    v.extend(g0::records());
    v.extend(g1::records());
    v.extend(g2::records());
    v.extend(g3::records());
    v.extend(g4::records());
    v.extend(g5::records());
    v.extend(g6::records());
    v.extend(g7::records());
    v.extend(g8::records());
    v.extend(g9::records());
    v
});

/// Every record, in manifest order.
pub fn registry() -> &'static [IdentityRecord] {
    &REGISTRY
}

/// Look one record up by its exact id.
pub fn find(id: &str) -> Result<&'static IdentityRecord> {
    registry()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.into()))
}

/// Records whose group tag (`G0`–`G9`), extra tag, or id matches `filter`
/// (`None` lists everything).  Group and extra tags match exactly; anything
/// else matches as an id substring.
pub fn list(filter: Option<&str>) -> Vec<&'static IdentityRecord> {
    let all = registry();
    match filter {
        None => all.iter().collect(),
        Some(f) => {
            if let Some(records) = try_group(f) {
                records
            } else if all.iter().any(|r| r.tags.contains(&f)) {
                all.iter().filter(|r| r.tags.contains(&f)).collect()
            } else {
                all.iter().filter(|r| r.id.contains(f)).collect()
            }
        }
    }
}

fn try_group(tag: &str) -> Option<Vec<&'static IdentityRecord>> {
    let t = tag.strip_prefix(['G', 'g'])?;
    let g: u8 = t.parse().ok()?;
    if g > 9 {
        return None;
    }
    Some(registry().iter().filter(|r| r.group == g).collect())
}

/// Records in group `tag` (`G0`–`G9`), or an error for an unknown tag.
pub fn group_records(tag: &str) -> Result<Vec<&'static IdentityRecord>> {
    match try_group(tag) {
        Some(v) if !v.is_empty() => Ok(v),
        _ => Err(Error::UnknownGroup(tag.into())),
    }
}

/// First mismatched coefficient, rendered exactly.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MismatchReport {
    /// Exponent as an exact rational string, e.g. `5` or `7/3`.
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
}

impl MismatchReport {
    fn of(m: &Mismatch) -> Self {
        let e = m.exp;
        let exponent = if e.is_integer() {
            e.to_integer().to_string()
        } else {
            format!("{}/{}", e.numer(), e.denom())
        };
        MismatchReport {
            exponent,
            lhs: m.lhs.to_string(),
            rhs: m.rhs.to_string(),
        }
    }
}

/// Outcome at one sample.
#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub binding: String,
    pub pass: bool,
    /// Which comparison failed (`rhs`, an alternative form's label,
    /// `dual-descriptor`) or an error message.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<MismatchReport>,
}

/// Outcome of verifying one record.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub group: String,
    /// `pass`, `fail`, or `error`.
    pub status: String,
    /// Truncation order in `q`-units.
    pub order: i64,
    pub lattice: u32,
    pub samples: Vec<SampleReport>,
    /// First mismatch over all samples (`null` when every sample passed).
    pub first_mismatch: Option<MismatchReport>,
    pub millis: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

fn verify_sample(rec: &IdentityRecord, sample: &Sample, order_num: i64) -> SampleReport {
    let binding = sample.label();
    let lhs = match (rec.lhs)(sample, order_num) {
        Ok(v) => v,
        Err(e) => {
            return SampleReport {
                binding,
                pass: false,
                detail: Some(format!("error (lhs): {e}")),
                first_mismatch: None,
            }
        }
    };
    let mut comparisons: Vec<(String, std::result::Result<QSeries, Error>)> =
        vec![("rhs".into(), (rec.rhs)(sample, order_num))];
    for (label, b) in &rec.alt {
        comparisons.push((label.clone(), b(sample, order_num)));
    }
    if let Some(w) = &rec.dual_of {
        let side = invert_q(&w.descriptor).and_then(|d| {
            let s = evaluate_descriptor(&d, order_num, &Default::default())?;
            s.add(&QSeries::constant(
                rec.lattice,
                Coeff::from_integer(w.offset.into()),
                order_num,
            ))
        });
        comparisons.push(("dual-descriptor".into(), side));
    }
    for (label, side) in comparisons {
        let side = match side {
            Ok(v) => v,
            Err(e) => {
                return SampleReport {
                    binding,
                    pass: false,
                    detail: Some(format!("error ({label}): {e}")),
                    first_mismatch: None,
                }
            }
        };
        match lhs.compare_num(&side, order_num) {
            Err(e) => {
                return SampleReport {
                    binding,
                    pass: false,
                    detail: Some(format!("error ({label}): {e}")),
                    first_mismatch: None,
                }
            }
            Ok(Err(m)) => {
                return SampleReport {
                    binding,
                    pass: false,
                    detail: Some(label),
                    first_mismatch: Some(MismatchReport::of(&m)),
                }
            }
            Ok(Ok(())) => {}
        }
    }
    SampleReport {
        binding,
        pass: true,
        detail: None,
        first_mismatch: None,
    }
}

/// Verify one record at `order` `q`-units (default: the record's own order).
pub fn verify_record(rec: &IdentityRecord, order: Option<i64>) -> VerificationReport {
    let t0 = Instant::now();
    let order_units = order.unwrap_or(rec.default_order);
    let order_num = order_units.saturating_mul(rec.lattice as i64);
    let samples: Vec<SampleReport> = rec
        .samples
        .iter()
        .map(|s| verify_sample(rec, s, order_num))
        .collect();
    let errored = samples
        .iter()
        .any(|s| s.detail.as_deref().is_some_and(|d| d.starts_with("error")));
    let pass = samples.iter().all(|s| s.pass);
    let first_mismatch = samples.iter().find_map(|s| s.first_mismatch.clone());
    VerificationReport {
        id: rec.id.clone(),
        group: rec.group_tag(),
        status: if pass {
            "pass".into()
        } else if errored && first_mismatch.is_none() {
            "error".into()
        } else {
            "fail".into()
        },
        order: order_units,
        lattice: rec.lattice,
        samples,
        first_mismatch,
        millis: t0.elapsed().as_millis() as u64,
    }
}

/// Verify a record by id.
pub fn verify_id(id: &str, order: Option<i64>) -> Result<VerificationReport> {
    Ok(verify_record(find(id)?, order))
}

/// Verify every record in a group, in registry order.
pub fn verify_group(tag: &str, order: Option<i64>) -> Result<Vec<VerificationReport>> {
    let records = group_records(tag)?;
    Ok(verify_many(&records, order))
}

/// Verify the whole registry, in registry order.
pub fn verify_all(order: Option<i64>) -> Vec<VerificationReport> {
    verify_many(&registry().iter().collect::<Vec<_>>(), order)
}

/// Parallel driver; the output order is the input order regardless of
/// scheduling.
pub fn verify_many(
    records: &[&'static IdentityRecord],
    order: Option<i64>,
) -> Vec<VerificationReport> {
    records
        .par_iter()
        .map(|r| verify_record(r, order))
        .collect()
}

/// A negative-control copy of `rec`: same left side, right side shifted by
/// `q^k`.  Alternative forms and witnesses are dropped so the perturbed
/// comparison is the one that fails — at exponent `k` exactly, when the
/// original record passes.
pub fn perturb_rhs(rec: &IdentityRecord, k: i64) -> IdentityRecord {
    let rhs = rec.rhs.clone();
    let lattice = rec.lattice;
    let num = k.saturating_mul(lattice as i64);
    IdentityRecord {
        id: rec.id.clone(),
        source: rec.source.clone(),
        group: rec.group,
        tags: rec.tags.clone(),
        status: rec.status,
        lattice,
        default_order: rec.default_order,
        samples: rec.samples.clone(),
        lhs: rec.lhs.clone(),
        rhs: Arc::new(move |s, o| {
            let base = rhs(s, o)?;
            let bump = QSeries::monomial_num(lattice, Coeff::one(), num, o);
            base.add(&bump)
        }),
        alt: Vec::new(),
        dual_of: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every record passes at a reduced order (the full default orders run
    /// in the acceptance suite).
    #[test]
    fn whole_registry_passes_at_reduced_order() {
        let reports = verify_all(Some(10));
        let failures: Vec<String> = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| {
                format!(
                    "{}: {} {:?} {:?}",
                    r.id,
                    r.status,
                    r.samples
                        .iter()
                        .filter(|s| !s.pass)
                        .map(|s| format!("[{}] {:?}", s.binding, s.detail))
                        .collect::<Vec<_>>(),
                    r.first_mismatch
                )
            })
            .collect();
        assert!(failures.is_empty(), "failing records:\n{}", failures.join("\n"));
    }

    #[test]
    fn registry_lookup_and_filters() {
        assert!(find("RLNid1").is_ok());
        assert!(matches!(
            find("nonsense"),
            Err(Error::UnknownIdentity(_))
        ));
        let g5 = list(Some("G5"));
        assert_eq!(g5.len(), 6, "G5 must hold three expansions and three duals");
        assert!(g5.iter().all(|r| r.group == 5));
        let second_type = list(Some("dual-second-type"));
        assert_eq!(second_type.len(), 8);
        assert!(second_type.iter().all(|r| r.group == 7));
        assert!(matches!(
            group_records("G17"),
            Err(Error::UnknownGroup(_))
        ));
    }

    #[test]
    fn perturbed_record_fails_at_the_perturbation_exponent() {
        let rec = find("RLNid1").unwrap();
        let bad = perturb_rhs(rec, 5);
        let report = verify_record(&bad, Some(12));
        assert_eq!(report.status, "fail");
        let mm = report.first_mismatch.expect("must carry a mismatch");
        assert_eq!(mm.exponent, "5");
    }

    #[test]
    fn report_serializes_with_stable_fields() {
        let report = verify_id("theta-triple-product", Some(8)).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        for key in ["id", "group", "status", "order", "lattice", "samples", "first_mismatch", "millis"] {
            assert!(json.get(key).is_some(), "missing field {key}");
        }
        assert_eq!(json["status"], "pass");
        assert!(json["first_mismatch"].is_null());
    }
}
