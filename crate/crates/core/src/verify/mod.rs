//! Registry of bounded checks. Each check compares a construction against
//! an independent oracle and reports the smallest counterexample found.

use std::collections::BTreeMap;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

mod misc_checks;
mod seq_checks;
mod series_checks;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("unknown profile {0:?} (expected quick or full)")]
    UnknownProfile(String),
    #[error("bound {0:?} is not used by any selected check")]
    UnknownBound(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl std::str::FromStr for Profile {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(VerifyError::UnknownProfile(s.to_string())),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Pass,
    Fail,
}

/// `Flagged` marks an expected-fail check that failed as expected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
        })
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Pass => "pass",
            Expected::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Named coordinates of the failure, e.g. `n`, `r`.
    pub at: BTreeMap<String, i128>,
    pub detail: String,
}

impl Counterexample {
    pub fn new(detail: impl Into<String>) -> Counterexample {
        Counterexample {
            at: BTreeMap::new(),
            detail: detail.into(),
        }
    }

    pub fn at(mut self, key: &str, value: impl TryInto<i128>) -> Counterexample {
        let v = value.try_into().unwrap_or(i128::MAX);
        self.at.insert(key.to_string(), v);
        self
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.at.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if coords.is_empty() {
            write!(f, "{}", self.detail)
        } else {
            write!(f, "{}: {}", coords.join(", "), self.detail)
        }
    }
}

/// `Ok` carries a short note for the report.
pub type Outcome = Result<String, Counterexample>;

/// Named numeric bounds of one check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Bounds(BTreeMap<String, u64>);

impl Bounds {
    pub fn get(&self, key: &str) -> u64 {
        *self
            .0
            .get(key)
            .unwrap_or_else(|| panic!("check reads undeclared bound {key:?}"))
    }

    pub fn usize(&self, key: &str) -> usize {
        self.get(key) as usize
    }

    pub fn u32(&self, key: &str) -> u32 {
        self.get(key) as u32
    }

    pub fn contains(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &u64)> {
        self.0.iter()
    }
}

pub struct CheckDef {
    pub id: &'static str,
    pub description: &'static str,
    pub expected: Expected,
    pub quick: &'static [(&'static str, u64)],
    pub full: &'static [(&'static str, u64)],
    pub run: fn(&Bounds) -> Outcome,
}

impl CheckDef {
    pub fn bounds(&self, profile: Profile) -> Bounds {
        let src = match profile {
            Profile::Quick => self.quick,
            Profile::Full => self.full,
        };
        Bounds(src.iter().map(|&(k, v)| (k.to_string(), v)).collect())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub expected: Expected,
    pub bounds: Bounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub detail: String,
    pub millis: u128,
}

impl CheckResult {
    /// Expected-pass checks must pass; expected-fail checks must fail.
    pub fn met(&self) -> bool {
        matches!(
            (self.expected, self.status),
            (Expected::Pass, Status::Pass) | (Expected::Fail, Status::Flagged)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub flagged: usize,
    pub unmet: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub profile: Profile,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn all_met(&self) -> bool {
        self.summary.unmet == 0
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table without timings, so it is byte-stable.
    pub fn to_table(&self) -> String {
        let w = self
            .checks
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(2)
            .max(2);
        let mut out = format!(
            "{:<w$}  {:<8}  {:<7}  {}\n",
            "id", "expected", "status", "detail"
        );
        for c in &self.checks {
            let detail = match &c.counterexample {
                Some(ce) => format!("counterexample {ce}"),
                None => c.detail.clone(),
            };
            let mark = if c.met() { "" } else { "  [UNMET]" };
            out.push_str(&format!(
                "{:<w$}  {:<8}  {:<7}  {}{}\n",
                c.id,
                c.expected.to_string(),
                c.status.to_string(),
                detail,
                mark
            ));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} checks: {} passed, {} failed, {} flagged, {} unmet\n",
            s.total, s.passed, s.failed, s.flagged, s.unmet
        ));
        out
    }
}

pub fn registry() -> Vec<CheckDef> {
    let mut all = Vec::new();
    all.extend(series_checks::checks());
    all.extend(seq_checks::checks());
    all.extend(misc_checks::checks());
    all
}

pub fn check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

fn execute(def: &CheckDef, bounds: Bounds) -> CheckResult {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (def.run)(&bounds))).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".to_string());
        Err(Counterexample::new(format!("check panicked: {msg}")))
    });
    let millis = start.elapsed().as_millis();
    let (status, counterexample, detail) = match outcome {
        Ok(note) => (Status::Pass, None, note),
        Err(ce) => {
            let status = match def.expected {
                Expected::Fail => Status::Flagged,
                Expected::Pass => Status::Fail,
            };
            (status, Some(ce), String::new())
        }
    };
    CheckResult {
        id: def.id.to_string(),
        description: def.description.to_string(),
        status,
        expected: def.expected,
        bounds,
        counterexample,
        detail,
        millis,
    }
}

/// Run one check with optional bound overrides.
pub fn run_check(
    id: &str,
    profile: Profile,
    overrides: &[(String, u64)],
) -> Result<CheckResult, VerifyError> {
    let report = run_selected(profile, &[id.to_string()], overrides, 1)?;
    Ok(report.checks.into_iter().next().expect("one check"))
}

pub fn run_all(profile: Profile) -> Report {
    run_selected(profile, &[], &[], 1).expect("no selection errors")
}

/// Run the named checks (all when `ids` is empty) on `jobs` threads.
/// Results keep registry order whatever the job count.
pub fn run_selected(
    profile: Profile,
    ids: &[String],
    overrides: &[(String, u64)],
    jobs: usize,
) -> Result<Report, VerifyError> {
    let all = registry();
    let selected: Vec<&CheckDef> = if ids.is_empty() {
        all.iter().collect()
    } else {
        ids.iter()
            .map(|id| {
                all.iter()
                    .find(|c| c.id == id)
                    .ok_or_else(|| VerifyError::UnknownCheck(id.clone()))
            })
            .collect::<Result<_, _>>()?
    };
    let mut plans: Vec<(&CheckDef, Bounds)> =
        selected.iter().map(|d| (*d, d.bounds(profile))).collect();
    for (key, value) in overrides {
        let mut used = false;
        for (_, b) in plans.iter_mut() {
            if let Some(slot) = b.0.get_mut(key) {
                *slot = *value;
                used = true;
            }
        }
        if !used {
            return Err(VerifyError::UnknownBound(key.clone()));
        }
    }

    let jobs = jobs.max(1).min(plans.len().max(1));
    let results: Vec<CheckResult> = if jobs == 1 {
        plans.into_iter().map(|(d, b)| execute(d, b)).collect()
    } else {
        let slots: Mutex<Vec<Option<CheckResult>>> = Mutex::new(vec![None; plans.len()]);
        let next = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    if i >= plans.len() {
                        break;
                    }
                    let (d, b) = &plans[i];
                    let r = execute(d, b.clone());
                    slots.lock().expect("no poisoned lock")[i] = Some(r);
                });
            }
        });
        slots
            .into_inner()
            .expect("no poisoned lock")
            .into_iter()
            .map(|r| r.expect("every check ran"))
            .collect()
    };

    let summary = Summary {
        total: results.len(),
        passed: results.iter().filter(|c| c.status == Status::Pass).count(),
        failed: results.iter().filter(|c| c.status == Status::Fail).count(),
        flagged: results
            .iter()
            .filter(|c| c.status == Status::Flagged)
            .count(),
        unmet: results.iter().filter(|c| !c.met()).count(),
    };
    Ok(Report {
        profile,
        checks: results,
        summary,
    })
}

/// First index where two sequences differ.
pub(crate) fn compare<T: PartialEq + fmt::Debug>(
    what: &str,
    got: impl IntoIterator<Item = T>,
    want: impl IntoIterator<Item = T>,
) -> Result<usize, Counterexample> {
    let mut got = got.into_iter();
    let mut want = want.into_iter();
    let mut n = 0usize;
    loop {
        match (got.next(), want.next()) {
            (None, None) => return Ok(n),
            (Some(g), Some(w)) => {
                if g != w {
                    return Err(
                        Counterexample::new(format!("{what}: got {g:?}, oracle {w:?}")).at("n", n),
                    );
                }
            }
            (g, w) => {
                return Err(Counterexample::new(format!(
                    "{what}: length mismatch at {n} (got {:?}, oracle {:?})",
                    g.is_some(),
                    w.is_some()
                ))
                .at("n", n))
            }
        }
        n += 1;
    }
}

/// Require `cond`, otherwise fail with `detail`.
pub(crate) fn ensure(
    cond: bool,
    detail: impl FnOnce() -> Counterexample,
) -> Result<(), Counterexample> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_bounds_declared() {
        let all = registry();
        let mut ids: Vec<&str> = all.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        assert_eq!(before, ids.len(), "duplicate check id");
        for c in &all {
            let q: Vec<&str> = c.quick.iter().map(|p| p.0).collect();
            let f: Vec<&str> = c.full.iter().map(|p| p.0).collect();
            assert_eq!(q, f, "{}: quick and full declare different bounds", c.id);
        }
    }

    #[test]
    fn trivial_check_passes() {
        let r = run_check("trivial.identity", Profile::Quick, &[]).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.met());
    }

    #[test]
    fn selection_errors() {
        assert_eq!(
            run_check("nope", Profile::Quick, &[]).unwrap_err(),
            VerifyError::UnknownCheck("nope".into())
        );
        assert_eq!(
            run_check("trivial.identity", Profile::Quick, &[("zzz".into(), 1)]).unwrap_err(),
            VerifyError::UnknownBound("zzz".into())
        );
    }

    #[test]
    fn overrides_apply() {
        let r = run_check("eq.b_eq", Profile::Quick, &[("n".into(), 100)]).unwrap();
        assert_eq!(r.bounds.get("n"), 100);
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn expected_fail_checks_are_flagged() {
        for id in [
            "typo.q_recur_r.printed_form",
            "typo.unr_recur.printed_form",
            "eq.qr_complex.printed_form",
        ] {
            let r = run_check(id, Profile::Quick, &[]).unwrap();
            assert_eq!(r.status, Status::Flagged, "{id}");
            assert!(r.counterexample.is_some());
        }
        let r = run_check("typo.unr_recur.printed_form", Profile::Quick, &[]).unwrap();
        let ce = r.counterexample.unwrap();
        assert_eq!(ce.at.get("n"), Some(&1));
        assert_eq!(ce.at.get("r"), Some(&3));
    }

    #[test]
    fn parallel_order_is_stable() {
        let ids: Vec<String> = [
            "trivial.identity",
            "eq.b_eq",
            "seq.b_prefix20",
            "kernel.exact",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let a = run_selected(Profile::Quick, &ids, &[], 1).unwrap();
        let b = run_selected(Profile::Quick, &ids, &[], 3).unwrap();
        assert_eq!(a.to_table(), b.to_table());
    }
}
