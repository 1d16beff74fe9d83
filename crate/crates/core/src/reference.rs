//! Frozen expected values and end-to-end reproduction targets.
//!
//! A single embedded data file (`data/expected.json`) freezes every published
//! table, list, and worked example the toolkit is expected to reproduce:
//! count bands, automorph groups and orbits, local-density sample grids,
//! prelists, unique-representation lists, and the class-group catalog.
//! [`reproduce`] recomputes a named target from scratch and diffs the result
//! against the frozen data, returning one [`CheckResult`] per sub-check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::automorphs::{automorph_group, orbit_partition};
use crate::binaryqf::{catalog_entries, catalog_omissions};
use crate::forms::TernaryForm;
use crate::identities::{builtin_catalog, verify_relation_cached, SourceCache, ThetaRelation};
use crate::localdensity::local_density;
use crate::prelist::{scan_unique, shipped_config, unique_from_prelist};

/// Relation catalog checks run to this index when a target only needs the
/// identity itself (family-scaling relations inside unique-representation
/// targets instead run to the full scan bound).
const CATALOG_RELATION_BOUND: u64 = 500;

// ---------------------------------------------------------------------------
// Embedded data model
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
pub struct Expected {
    pub version: u32,
    /// Exhaustive scans (theta sweeps, unique filters) run to this bound.
    pub scan_bound: i64,
    /// Exact-equals-analytic count comparisons run to this bound.
    pub siegel_bound: u64,
    /// The omissions double-check scans fundamental discriminants to here.
    pub catalog_ceiling: u64,
    /// Group-structure label -> sorted |D| members, 527 values in total.
    pub class_group_tables: BTreeMap<String, Vec<u64>>,
    pub automorph_orders: Vec<AutomorphOrder>,
    pub automorph_example: AutomorphExample,
    pub table1: Table1,
    pub density_tables: Vec<DensityTable>,
    pub prelists: Vec<PrelistExpectation>,
    pub theorems: Vec<TheoremExpectation>,
    pub identity_theorems: Vec<IdentityTheorem>,
    pub outlook: OutlookExpectation,
    /// Theorem ids bundled under the `kaplansky` reproduction target.
    pub kaplansky: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct AutomorphOrder {
    pub form: TernaryForm,
    pub order: usize,
}

#[derive(Debug, Deserialize)]
pub struct AutomorphExample {
    pub form: TernaryForm,
    pub matrices: Vec<[[i64; 3]; 3]>,
    pub orbit_n: i64,
    pub orbits: Vec<Vec<[i64; 3]>>,
}

#[derive(Debug, Deserialize)]
pub struct Table1 {
    pub form: TernaryForm,
    pub aut_order: u64,
    pub bands: Vec<Band>,
}

/// A half-open or closed interval of representation counts together with the
/// full list of qualifying integers whose count falls inside it.
#[derive(Debug, Deserialize)]
pub struct Band {
    pub lo: u64,
    pub lo_strict: bool,
    pub hi: u64,
    pub hi_strict: bool,
    pub members: Vec<i64>,
}

impl Band {
    pub fn contains(&self, r: u64) -> bool {
        let above = if self.lo_strict { r > self.lo } else { r >= self.lo };
        let below = if self.hi_strict { r < self.hi } else { r <= self.hi };
        above && below
    }

    pub fn label(&self) -> String {
        format!(
            "{}{},{}{}",
            if self.lo_strict { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_strict { ')' } else { ']' },
        )
    }
}

#[derive(Debug, Deserialize)]
pub struct DensityTable {
    pub id: String,
    pub form: TernaryForm,
    pub p: u64,
    pub checks: Vec<DensityCheck>,
}

#[derive(Debug, Deserialize)]
pub struct DensityCheck {
    pub n: u64,
    /// Expected density as an exact fraction, e.g. `"3/2"` or `"0"`.
    pub value: String,
    /// Which row of the published case split this sample exercises.
    pub case: String,
}

#[derive(Debug, Deserialize)]
pub struct PrelistExpectation {
    pub form: TernaryForm,
    /// The published prelist: candidates with 0 < R(n) <= automorph order.
    pub values: Vec<u64>,
    /// Candidates explicitly flagged as exceeding the bound.
    pub quoted_spurious: Vec<u64>,
}

#[derive(Debug, Deserialize)]
pub struct TheoremExpectation {
    pub id: String,
    pub form: TernaryForm,
    /// When set, `values` lists family generators and the unique set is
    /// `{v * base^k}`; when absent, `values` is the complete list.
    pub family_base: Option<i64>,
    pub values: Vec<i64>,
    pub relations: Vec<String>,
    #[serde(default)]
    pub even_candidates: Vec<i64>,
    #[serde(default)]
    pub odd_candidates: Vec<i64>,
    /// The published list covers odd integers only.
    #[serde(default)]
    pub odd_only: bool,
    /// Published exact representation counts `(n, R(n))`.
    #[serde(default)]
    pub exact_counts: Vec<(i64, u64)>,
    /// The even essentially-unique integers are exactly the odd powers of 2.
    #[serde(default)]
    pub even_unique_are_odd_two_powers: bool,
}

#[derive(Debug, Deserialize)]
pub struct IdentityTheorem {
    pub id: String,
    pub relations: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct OutlookExpectation {
    pub relations: Vec<String>,
    pub aut_orders: Vec<(TernaryForm, usize)>,
    pub unique_form: TernaryForm,
    pub unique_values: Vec<i64>,
}

/// The embedded expected-data file, parsed once.
pub fn expected() -> &'static Expected {
    static DATA: OnceLock<Expected> = OnceLock::new();
    DATA.get_or_init(|| {
        serde_json::from_str(include_str!("../data/expected.json"))
            .expect("embedded expected.json is well-formed")
    })
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproductionReport {
    pub target: String,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownTarget(pub String);

impl fmt::Display for UnknownTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown reproduction target `{}`", self.0)
    }
}

impl std::error::Error for UnknownTarget {}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

/// Compare two integer sets; on mismatch the detail lists what is missing
/// from and what is unexpected in the computed set (capped for readability).
fn compare_sets<T>(name: impl Into<String>, got: &BTreeSet<T>, want: &BTreeSet<T>) -> CheckResult
where
    T: Ord + Copy + fmt::Debug,
{
    if got == want {
        return check(name, true, format!("{} values match exactly", want.len()));
    }
    let cap = |items: Vec<T>| -> String {
        let shown: Vec<String> = items.iter().take(10).map(|x| format!("{x:?}")).collect();
        let suffix = if items.len() > 10 { ", ..." } else { "" };
        format!("[{}{}]", shown.join(", "), suffix)
    };
    let missing: Vec<T> = want.difference(got).copied().collect();
    let extra: Vec<T> = got.difference(want).copied().collect();
    check(
        name,
        false,
        format!(
            "missing {} {}, unexpected {} {}",
            missing.len(),
            cap(missing),
            extra.len(),
            cap(extra)
        ),
    )
}

fn compare_lists<T>(name: impl Into<String>, got: &[T], want: &[T]) -> CheckResult
where
    T: Ord + Copy + fmt::Debug,
{
    compare_sets(
        name,
        &got.iter().copied().collect(),
        &want.iter().copied().collect(),
    )
}

// ---------------------------------------------------------------------------
// Parallel check runner
// ---------------------------------------------------------------------------

type Job = Box<dyn FnOnce() -> Vec<CheckResult> + Send>;

/// Run independent jobs on their own threads; results keep the input order.
fn run_jobs(jobs: Vec<Job>) -> Vec<CheckResult> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = jobs.into_iter().map(|job| scope.spawn(job)).collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("reproduction job panicked"))
            .collect()
    })
}

fn prefix_jobs(prefix: String, jobs: Vec<Job>) -> Vec<Job> {
    jobs.into_iter()
        .map(|job| -> Job {
            let prefix = prefix.clone();
            Box::new(move || {
                job()
                    .into_iter()
                    .map(|mut c| {
                        c.name = format!("{prefix}: {}", c.name);
                        c
                    })
                    .collect()
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Target registry
// ---------------------------------------------------------------------------

/// Every valid argument to [`reproduce`], in a stable documented order.
pub fn all_targets() -> Vec<&'static str> {
    vec![
        "table1",
        "table2",
        "table3",
        "appendix",
        "kaplansky",
        "outlook",
        "theorem-3.1",
        "theorem-3.2",
        "theorem-3.3",
        "theorem-3.4",
        "theorem-3.5",
        "theorem-3.6",
        "theorem-3.7",
        "theorem-3.8",
        "theorem-3.9",
        "theorem-4.1",
        "theorem-4.2",
        "theorem-4.3",
        "theorem-4.4",
        "theorem-5.1",
        "theorem-5.2",
        "theorem-5.3",
        "theorem-5.4",
    ]
}

/// Recompute a named target from first principles and diff it against the
/// frozen expected data.  Sub-checks run in parallel; the report order is
/// deterministic.
pub fn reproduce(target: &str) -> Result<ReproductionReport, UnknownTarget> {
    let data = expected();
    let jobs = jobs_for(target, data).ok_or_else(|| UnknownTarget(target.to_string()))?;
    let checks = run_jobs(jobs);
    Ok(ReproductionReport {
        target: target.to_string(),
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

fn jobs_for(target: &str, data: &'static Expected) -> Option<Vec<Job>> {
    match target {
        "table1" => Some(vec![Box::new(move || table1_checks(data))]),
        "table2" => Some(density_jobs(data, &["table2"])),
        "table3" => Some(density_jobs(data, &["table3"])),
        "appendix" => Some(appendix_jobs(data)),
        "kaplansky" => Some(kaplansky_jobs(data)),
        "outlook" => Some(outlook_jobs(data)),
        "theorem-5.3" => Some(density_jobs(data, &["lemma-5.3", "lemma-5.3-d2"])),
        _ => {
            if let Some(t) = data.theorems.iter().find(|t| t.id == target) {
                return Some(theorem_jobs(t, data));
            }
            if let Some(it) = data.identity_theorems.iter().find(|it| it.id == target) {
                let relations = it.relations.clone();
                return Some(vec![Box::new(move || {
                    relation_checks(&relations, CATALOG_RELATION_BOUND)
                })]);
            }
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

fn relation_by_id(id: &str) -> Option<&'static ThetaRelation> {
    static CATALOG: OnceLock<Vec<ThetaRelation>> = OnceLock::new();
    CATALOG
        .get_or_init(builtin_catalog)
        .iter()
        .find(|r| r.id == id)
}

fn relation_checks(ids: &[String], n_max: u64) -> Vec<CheckResult> {
    let mut cache = SourceCache::new();
    ids.iter()
        .map(|id| match relation_by_id(id) {
            None => check(
                format!("relation {id}"),
                false,
                "not in the built-in catalog",
            ),
            Some(rel) => {
                let verdict = verify_relation_cached(rel, n_max, &mut cache);
                let detail = match &verdict.first_mismatch {
                    None => format!("coefficients agree for n <= {n_max}"),
                    Some(m) => format!(
                        "first mismatch at n = {}: lhs {} != rhs {}",
                        m.index, m.lhs, m.rhs
                    ),
                };
                check(format!("relation {id}"), verdict.pass, detail)
            }
        })
        .collect()
}

fn density_jobs(data: &'static Expected, ids: &[&'static str]) -> Vec<Job> {
    ids.iter()
        .map(|&id| -> Job {
            Box::new(move || {
                let table = data
                    .density_tables
                    .iter()
                    .find(|t| t.id == id)
                    .unwrap_or_else(|| panic!("density table `{id}` is embedded"));
                density_table_checks(table)
            })
        })
        .collect()
}

/// Evaluate one density sample grid, reporting one check per published case.
pub fn density_table_checks(table: &DensityTable) -> Vec<CheckResult> {
    let mut by_case: BTreeMap<&str, (usize, Vec<String>)> = BTreeMap::new();
    let mut case_order: Vec<&str> = Vec::new();
    for sample in &table.checks {
        let want = BigRational::from_str(&sample.value)
            .unwrap_or_else(|_| panic!("`{}` parses as a rational", sample.value));
        let outcome = match local_density(&table.form, table.p, sample.n) {
            Ok(got) if got.value == want => None,
            Ok(got) => Some(format!("n = {}: got {}, want {}", sample.n, got.value, want)),
            Err(err) => Some(format!("n = {}: {err:?}", sample.n)),
        };
        let entry = by_case.entry(sample.case.as_str()).or_insert_with(|| {
            case_order.push(sample.case.as_str());
            (0, Vec::new())
        });
        entry.0 += 1;
        if let Some(msg) = outcome {
            entry.1.push(msg);
        }
    }
    case_order
        .into_iter()
        .map(|case| {
            let (total, failures) = &by_case[case];
            let name = format!("density {} case {case}", table.id);
            if failures.is_empty() {
                check(name, true, format!("{total} samples match (p = {})", table.p))
            } else {
                check(name, false, failures.join("; "))
            }
        })
        .collect()
}

/// Expand family generators `{v * base^k <= bound}`; `None` passes values
/// through unchanged.
fn expand_family(values: &[i64], base: Option<i64>, bound: i64) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for &v in values {
        match base {
            None => {
                if v <= bound {
                    out.insert(v);
                }
            }
            Some(b) => {
                let mut m = v;
                while m <= bound {
                    out.insert(m);
                    m *= b;
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Individual targets
// ---------------------------------------------------------------------------

fn table1_checks(data: &'static Expected) -> Vec<CheckResult> {
    let t = &data.table1;
    let mut out = Vec::new();

    let order = automorph_group(&t.form).order();
    out.push(check(
        "automorph order",
        order as u64 == t.aut_order,
        format!("|Aut| = {order}"),
    ));

    let counts = t.form.theta_counts(data.scan_bound);
    let qualifying: Vec<(i64, u64)> = (1..=data.scan_bound)
        .filter(|n| n % 4 != 0)
        .map(|n| (n, counts[n as usize]))
        .filter(|&(_, r)| r > 0 && r <= t.aut_order)
        .collect();

    let mut classified = BTreeSet::new();
    for band in &t.bands {
        let got: BTreeSet<i64> = qualifying
            .iter()
            .filter(|&&(_, r)| band.contains(r))
            .map(|&(n, _)| n)
            .collect();
        classified.extend(got.iter().copied());
        out.push(compare_sets(
            format!("band {}", band.label()),
            &got,
            &band.members.iter().copied().collect(),
        ));
    }

    let all: BTreeSet<i64> = qualifying.iter().map(|&(n, _)| n).collect();
    out.push(check(
        "band completeness",
        all == classified && all.len() == 53,
        format!(
            "{} qualifying integers <= {}, all inside the printed bands",
            all.len(),
            data.scan_bound
        ),
    ));
    out
}

fn appendix_jobs(data: &'static Expected) -> Vec<Job> {
    vec![
        Box::new(move || {
            let entries = catalog_entries(8).expect("bound 8 is supported");
            let mut grouped: BTreeMap<String, Vec<u64>> = BTreeMap::new();
            for e in &entries {
                grouped
                    .entry(e.structure.clone())
                    .or_default()
                    .push(e.d.unsigned_abs());
            }
            for members in grouped.values_mut() {
                members.sort_unstable();
            }

            let mut out = Vec::new();
            out.push(check(
                "catalog total",
                entries.len() == 527,
                format!("{} fundamental discriminants with h <= 8", entries.len()),
            ));
            let labels: BTreeSet<&String> =
                grouped.keys().chain(data.class_group_tables.keys()).collect();
            for label in labels {
                let got = grouped.get(label.as_str()).cloned().unwrap_or_default();
                let want = data
                    .class_group_tables
                    .get(label.as_str())
                    .cloned()
                    .unwrap_or_default();
                out.push(compare_lists(format!("catalog {label}"), &got, &want));
            }
            out
        }),
        Box::new(move || {
            let entries = catalog_entries(8).expect("bound 8 is supported");
            let omissions = catalog_omissions(&entries, 8, data.catalog_ceiling);
            vec![check(
                format!("catalog omissions to {}", data.catalog_ceiling),
                omissions.is_empty(),
                if omissions.is_empty() {
                    "no fundamental discriminant with h <= 8 is missing".to_string()
                } else {
                    format!("missing: {omissions:?}")
                },
            )]
        }),
    ]
}

fn theorem_jobs(t: &'static TheoremExpectation, data: &'static Expected) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();

    jobs.push(Box::new(move || {
        let scanned = scan_unique(&t.form, data.scan_bound);
        if t.odd_only {
            let odd: Vec<i64> = scanned.iter().copied().filter(|n| n % 2 == 1).collect();
            let even: Vec<i64> = scanned.iter().copied().filter(|n| n % 2 == 0).collect();
            let mut out =
                vec![compare_lists("odd unique scan", &odd, &t.values)];
            if t.even_unique_are_odd_two_powers {
                let powers: Vec<i64> = (0..)
                    .map(|k| 2i64 << (2 * k))
                    .take_while(|&m| m <= data.scan_bound)
                    .collect();
                out.push(compare_lists(
                    "even uniques are the odd powers of two",
                    &even,
                    &powers,
                ));
            }
            out
        } else {
            let want = expand_family(&t.values, t.family_base, data.scan_bound);
            vec![compare_sets(
                "unique scan",
                &scanned.iter().copied().collect(),
                &want,
            )]
        }
    }));

    if let Some(config) = shipped_config(&t.form) {
        jobs.push(Box::new(move || {
            let expectation = data
                .prelists
                .iter()
                .find(|p| p.form == t.form)
                .expect("every shipped config has a frozen prelist");
            let solved = unique_from_prelist(&config);
            let quoted: BTreeSet<u64> = expectation.quoted_spurious.iter().copied().collect();
            let spurious: BTreeSet<u64> = solved.solution.spurious.iter().copied().collect();
            let unique_want: Vec<u64> = t.values.iter().map(|&v| v as u64).collect();
            vec![
                compare_lists("prelist members", &solved.solution.prelist, &expectation.values),
                check(
                    "prelist quoted spurious",
                    quoted.is_subset(&spurious),
                    format!("flagged {quoted:?}, computed {spurious:?}"),
                ),
                check(
                    "prelist unrepresented",
                    solved.solution.unrepresented.is_empty(),
                    format!("{:?}", solved.solution.unrepresented),
                ),
                compare_lists("unique filter", &solved.unique, &unique_want),
            ]
        }));
    }

    if !t.relations.is_empty() {
        jobs.push(Box::new(move || {
            relation_checks(&t.relations, data.scan_bound as u64)
        }));
    }

    if !t.even_candidates.is_empty() || !t.odd_candidates.is_empty() {
        jobs.push(Box::new(move || {
            let counts = t.form.theta_counts(data.scan_bound);
            let order = automorph_group(&t.form).order() as u64;
            let qualifying = |n: i64| {
                let r = counts[n as usize];
                r > 0 && r <= order
            };
            let even: Vec<i64> = (2..=data.scan_bound)
                .step_by(2)
                .filter(|&m| (m / 2) % 4 != 0 && qualifying(m))
                .collect();
            let odd: Vec<i64> = (1..=data.scan_bound)
                .step_by(2)
                .filter(|&m| qualifying(m))
                .collect();
            vec![
                compare_lists("even candidates", &even, &t.even_candidates),
                compare_lists("odd candidates", &odd, &t.odd_candidates),
            ]
        }));
    }

    if !t.exact_counts.is_empty() {
        jobs.push(Box::new(move || {
            let failures: Vec<String> = t
                .exact_counts
                .iter()
                .filter_map(|&(n, want)| {
                    let got = t.form.representation_count(n);
                    (got != want).then(|| format!("R({n}) = {got}, want {want}"))
                })
                .collect();
            vec![if failures.is_empty() {
                check(
                    "exact counts",
                    true,
                    format!("{} published counts match", t.exact_counts.len()),
                )
            } else {
                check("exact counts", false, failures.join("; "))
            }]
        }));
    }

    if t.id == "theorem-3.1" {
        jobs.extend(density_jobs(data, &["psi"]));
    }
    if t.id == "theorem-5.1" {
        jobs.extend(density_jobs(data, &["ld133", "lld2"]));
    }

    jobs
}

fn kaplansky_jobs(data: &'static Expected) -> Vec<Job> {
    let mut jobs = Vec::new();
    for id in &data.kaplansky {
        let t = data
            .theorems
            .iter()
            .find(|t| &t.id == id)
            .expect("bundled theorem ids are embedded");
        jobs.extend(prefix_jobs(id.clone(), theorem_jobs(t, data)));
    }
    jobs
}

fn outlook_jobs(data: &'static Expected) -> Vec<Job> {
    let o = &data.outlook;
    vec![
        Box::new(move || relation_checks(&o.relations, CATALOG_RELATION_BOUND)),
        Box::new(move || {
            o.aut_orders
                .iter()
                .map(|(form, want)| {
                    let got = automorph_group(form).order();
                    check(
                        format!("automorph order of {form}"),
                        got == *want,
                        format!("|Aut| = {got}"),
                    )
                })
                .collect()
        }),
        Box::new(move || {
            let scanned = scan_unique(&o.unique_form, data.scan_bound);
            vec![compare_lists(
                format!("unique scan of {}", o.unique_form),
                &scanned,
                &o.unique_values,
            )]
        }),
    ]
}

/// Recompute the worked automorph example: the full group as a matrix set and
/// the orbit split of one representation set.
pub fn automorph_example_checks() -> Vec<CheckResult> {
    let ex = &expected().automorph_example;
    let group = automorph_group(&ex.form);
    let got: BTreeSet<[[i64; 3]; 3]> = group.elements.iter().map(|a| a.0).collect();
    let want: BTreeSet<[[i64; 3]; 3]> = ex.matrices.iter().copied().collect();
    let mut out = vec![check(
        format!("automorph group of {}", ex.form),
        got == want,
        format!("{} matrices match as a set", want.len()),
    )];
    let partition = orbit_partition(&ex.form, ex.orbit_n);
    out.push(check(
        format!("orbits of n = {}", ex.orbit_n),
        partition.orbits == ex.orbits,
        format!(
            "sizes {:?}",
            partition.orbits.iter().map(Vec::len).collect::<Vec<_>>()
        ),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_data_is_well_formed() {
        let data = expected();
        assert_eq!(data.version, 1);
        let total: usize = data.class_group_tables.values().map(Vec::len).sum();
        assert_eq!(total, 527);
        assert_eq!(data.class_group_tables["Z1"].len(), 13);
        assert_eq!(data.density_tables.len(), 7);
        assert_eq!(data.theorems.len(), 9);
        assert_eq!(data.identity_theorems.len(), 7);
        for t in all_targets() {
            assert!(jobs_for(t, data).is_some(), "target {t} must dispatch");
        }
        for t in &data.theorems {
            for id in &t.relations {
                assert!(relation_by_id(id).is_some(), "{id} must exist");
            }
        }
        for it in &data.identity_theorems {
            for id in &it.relations {
                assert!(relation_by_id(id).is_some(), "{id} must exist");
            }
        }
        for id in &data.outlook.relations {
            assert!(relation_by_id(id).is_some(), "{id} must exist");
        }
    }

    #[test]
    fn unknown_target_is_rejected() {
        let err = reproduce("theorem-9.9").unwrap_err();
        assert_eq!(err, UnknownTarget("theorem-9.9".to_string()));
    }

    #[test]
    fn table1_target_reproduces() {
        let report = reproduce("table1").unwrap();
        assert!(
            report.pass,
            "failing checks: {:?}",
            report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
        assert_eq!(report.checks.len(), 10);
    }

    #[test]
    fn automorph_example_reproduces() {
        let checks = automorph_example_checks();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }

    #[test]
    fn identity_target_reproduces() {
        let report = reproduce("theorem-3.2").unwrap();
        assert!(
            report.pass,
            "failing checks: {:?}",
            report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
    }

    #[test]
    fn band_interval_logic_matches_labels() {
        let band = Band {
            lo: 24,
            lo_strict: true,
            hi: 48,
            hi_strict: true,
            members: vec![],
        };
        assert_eq!(band.label(), "(24,48)");
        assert!(!band.contains(24));
        assert!(band.contains(25));
        assert!(!band.contains(48));
    }
}
