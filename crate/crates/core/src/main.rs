//! `terqf`: command-line surface over the library.
//!
//! Every subcommand prints JSON (default) or CSV with deterministic bytes for
//! fixed inputs and version.  Exit codes: 0 success, 1 reproduction or
//! verification mismatch, 2 usage error, 3 precondition violation, 4 internal
//! inconsistency.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, ToPrimitive};
use serde_json::json;

use terqf::arith::factorize;
use terqf::automorphs::{automorph_group, orbit_partition_with_group};
use terqf::binaryqf::{catalog_entries, class_group, class_number, Catalog};
use terqf::forms::TernaryForm;
use terqf::identities::{builtin_catalog, verify_catalog, verify_relation_cached, SourceCache};
use terqf::localdensity::{local_density, local_density_finite, siegel_assembly};
use terqf::prelist::{scan_unique, shipped_config, solve_prelist, unique_from_prelist};
use terqf::reference::{all_targets, expected, reproduce};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "terqf",
    version,
    about = "Exact arithmetic of positive definite ternary quadratic forms: \
             representation counts, automorph orbits, local densities, class \
             groups, theta identities, and reproduction pipelines."
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List every integer solution of f(x,y,z) = n.
    Repr {
        /// Coefficients a,b,c,d,e,f of ax²+by²+cz²+dyz+exz+fxy.
        #[arg(long, value_name = "a,b,c,d,e,f")]
        form: TernaryForm,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Split the representations of n into automorph orbits.
    Orbits {
        #[arg(long, value_name = "a,b,c,d,e,f")]
        form: TernaryForm,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Print the full (finite) automorph group.
    Aut {
        #[arg(long, value_name = "a,b,c,d,e,f")]
        form: TernaryForm,
    },
    /// Representation counts R_f(n) for 0 ≤ n ≤ N.
    Theta {
        #[arg(long, value_name = "a,b,c,d,e,f")]
        form: TernaryForm,
        #[arg(long = "N", default_value_t = 100)]
        n_max: i64,
    },
    /// p-adic local representation density d_{f,p}(n).
    Density {
        #[arg(long, value_name = "a,b,c,d,e,f")]
        form: TernaryForm,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        /// Evaluate at a fixed Hensel depth k instead of stabilizing.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Class number h(D) of an imaginary quadratic discriminant.
    Classnum {
        /// Discriminant D < 0 (a positive value is read as |D|).
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Class group of one discriminant, or the whole h ≤ 8 catalog.
    Classgroup {
        /// Discriminant D < 0 (a positive value is read as |D|).
        #[arg(long, allow_negative_numbers = true)]
        d: Option<i64>,
        /// Catalog cache: read this JSON file if it exists, write it otherwise.
        #[arg(long, value_name = "PATH")]
        catalog: Option<PathBuf>,
    },
    /// Exact representation count via the Siegel formula.
    Siegel {
        #[arg(long, value_name = "a,b,c,d,e,f")]
        form: TernaryForm,
        #[arg(long)]
        n: u64,
        /// Print the full factor breakdown (JSON only).
        #[arg(long)]
        explain: bool,
    },
    /// Candidate list from the class-number bound, with the exact-count filter.
    Prelist {
        #[arg(long, value_name = "a,b,c,d,e,f")]
        form: TernaryForm,
    },
    /// Essentially unique representations: solver pipeline, or an exhaustive
    /// scan to N when --N is given.
    Unique {
        #[arg(long, value_name = "a,b,c,d,e,f")]
        form: TernaryForm,
        #[arg(long = "N")]
        n_max: Option<i64>,
    },
    /// Verify the built-in theta-identity catalog coefficient-wise.
    Identities {
        #[arg(long = "N", default_value_t = 500)]
        n_max: u64,
    },
    /// Recompute a published table or theorem and diff against frozen data.
    Reproduce {
        /// One of: table1, table2, table3, appendix, kaplansky, outlook, or a
        /// theorem id such as theorem-3.1.
        target: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn precondition(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

/// A rendered command result: the JSON document, its CSV rendering, and the
/// process exit code.
struct Output {
    json: serde_json::Value,
    csv: String,
    code: u8,
}

impl Output {
    fn ok(json: serde_json::Value, csv: String) -> Self {
        Output { json, csv, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.command) {
        Ok(out) => {
            match format {
                Format::Json => {
                    let mut doc = serde_json::to_string_pretty(&out.json)
                        .expect("command output serializes");
                    doc.push('\n');
                    print!("{doc}");
                }
                Format::Csv => print!("{}", out.csv),
            }
            ExitCode::from(out.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Repr { form, n } => cmd_repr(form, n),
        Command::Orbits { form, n } => cmd_orbits(form, n),
        Command::Aut { form } => cmd_aut(form),
        Command::Theta { form, n_max } => cmd_theta(form, n_max),
        Command::Density { form, p, n, k } => cmd_density(form, p, n, k),
        Command::Classnum { d } => cmd_classnum(d),
        Command::Classgroup { d, catalog } => cmd_classgroup(d, catalog),
        Command::Siegel { form, n, explain } => cmd_siegel(form, n, explain),
        Command::Prelist { form } => cmd_prelist(form),
        Command::Unique { form, n_max } => cmd_unique(form, n_max),
        Command::Identities { n_max } => cmd_identities(n_max),
        Command::Reproduce { target } => cmd_reproduce(&target),
    }
}

fn require_positive_definite(form: &TernaryForm) -> Result<(), Failure> {
    if form.is_positive_definite() {
        Ok(())
    } else {
        Err(Failure::precondition(format!(
            "form {form} is not positive definite"
        )))
    }
}

fn require_prime(p: u64) -> Result<(), Failure> {
    if p >= 2 && factorize(p) == vec![(p, 1)] {
        Ok(())
    } else {
        Err(Failure::precondition(format!("{p} is not prime")))
    }
}

/// Discriminants are negative here; accept |D| as a convenience.
fn normalize_discriminant(d: i64) -> i64 {
    if d > 0 {
        -d
    } else {
        d
    }
}

fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn cmd_repr(form: TernaryForm, n: i64) -> Result<Output, Failure> {
    require_positive_definite(&form)?;
    let set = form.enumerate_representations(n);
    let mut csv = String::from("x,y,z\n");
    for t in &set.triples {
        writeln!(csv, "{},{},{}", t[0], t[1], t[2]).unwrap();
    }
    Ok(Output::ok(
        json!({
            "form": form.to_string(),
            "n": n,
            "count": set.triples.len(),
            "representations": set.triples,
        }),
        csv,
    ))
}

fn cmd_orbits(form: TernaryForm, n: i64) -> Result<Output, Failure> {
    require_positive_definite(&form)?;
    let group = automorph_group(&form);
    let partition = orbit_partition_with_group(&form, n, &group);
    let count: usize = partition.orbits.iter().map(Vec::len).sum();
    let mut csv = String::from("orbit,x,y,z\n");
    for (i, orbit) in partition.orbits.iter().enumerate() {
        for t in orbit {
            writeln!(csv, "{},{},{},{}", i + 1, t[0], t[1], t[2]).unwrap();
        }
    }
    Ok(Output::ok(
        json!({
            "form": form.to_string(),
            "n": n,
            "count": count,
            "essential_count": partition.orbits.len(),
            "aut_order": group.order(),
            "orbits": partition.orbits,
        }),
        csv,
    ))
}

fn cmd_aut(form: TernaryForm) -> Result<Output, Failure> {
    require_positive_definite(&form)?;
    let group = automorph_group(&form);
    let matrices: Vec<[[i64; 3]; 3]> = group.elements.iter().map(|a| a.0).collect();
    let mut csv = String::from("m11,m12,m13,m21,m22,m23,m31,m32,m33\n");
    for m in &matrices {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2]
        )
        .unwrap();
    }
    Ok(Output::ok(
        json!({
            "form": form.to_string(),
            "order": group.order(),
            "matrices": matrices,
        }),
        csv,
    ))
}

fn cmd_theta(form: TernaryForm, n_max: i64) -> Result<Output, Failure> {
    require_positive_definite(&form)?;
    if n_max < 0 {
        return Err(Failure::precondition("N must be nonnegative"));
    }
    let counts = form.theta_counts(n_max);
    let mut csv = String::from("n,count\n");
    for (n, r) in counts.iter().enumerate() {
        writeln!(csv, "{n},{r}").unwrap();
    }
    Ok(Output::ok(
        json!({
            "form": form.to_string(),
            "n_max": n_max,
            "counts": counts,
        }),
        csv,
    ))
}

fn cmd_density(form: TernaryForm, p: u64, n: u64, k: Option<u32>) -> Result<Output, Failure> {
    require_positive_definite(&form)?;
    require_prime(p)?;
    match k {
        Some(k) => {
            if k < 1 {
                return Err(Failure::precondition("k must be at least 1"));
            }
            let value = local_density_finite(&form, p, n, k);
            Ok(Output::ok(
                json!({
                    "form": form.to_string(),
                    "p": p,
                    "n": n,
                    "k": k,
                    "value": value.to_string(),
                }),
                format!("p,n,k,value\n{p},{n},{k},{value}\n"),
            ))
        }
        None => {
            let result = local_density(&form, p, n)
                .map_err(|e| Failure::precondition(e.to_string()))?;
            Ok(Output::ok(
                json!({
                    "form": form.to_string(),
                    "p": p,
                    "n": n,
                    "k_used": result.k_used,
                    "value": result.value.to_string(),
                }),
                format!("p,n,k_used,value\n{p},{n},{},{}\n", result.k_used, result.value),
            ))
        }
    }
}

fn cmd_classnum(d: i64) -> Result<Output, Failure> {
    let d = normalize_discriminant(d);
    let h = class_number(d).map_err(|e| Failure::precondition(e.to_string()))?;
    Ok(Output::ok(
        json!({ "d": d, "h": h }),
        format!("d,h\n{d},{h}\n"),
    ))
}

fn cmd_classgroup(d: Option<i64>, catalog: Option<PathBuf>) -> Result<Output, Failure> {
    match d {
        Some(d) => {
            let d = normalize_discriminant(d);
            let group = class_group(d).map_err(|e| Failure::precondition(e.to_string()))?;
            let representatives: Vec<[i64; 3]> = group
                .representatives
                .iter()
                .map(|g| [g.a, g.b, g.c])
                .collect();
            let label = group.label();
            Ok(Output::ok(
                json!({
                    "d": d,
                    "h": group.h,
                    "structure": group.structure,
                    "label": label,
                    "representatives": representatives,
                }),
                format!("d,h,label\n{d},{},{label}\n", group.h),
            ))
        }
        None => {
            let catalog_data = load_or_build_catalog(catalog)?;
            let mut csv = String::from("D,h,structure\n");
            for e in &catalog_data.entries {
                writeln!(csv, "{},{},{}", e.d, e.h, e.structure).unwrap();
            }
            let json = serde_json::to_value(&catalog_data)
                .map_err(|e| Failure::internal(e.to_string()))?;
            Ok(Output::ok(json, csv))
        }
    }
}

fn load_or_build_catalog(path: Option<PathBuf>) -> Result<Catalog, Failure> {
    if let Some(path) = &path {
        if path.exists() {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))?;
            let catalog: Catalog = serde_json::from_str(&text)
                .map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))?;
            if catalog.version != 1 || catalog.bound != 8 {
                return Err(Failure::precondition(format!(
                    "{}: unsupported catalog version {} / bound {}",
                    path.display(),
                    catalog.version,
                    catalog.bound
                )));
            }
            return Ok(catalog);
        }
    }
    let entries = catalog_entries(8).map_err(|e| Failure::internal(e.to_string()))?;
    let catalog = Catalog {
        version: 1,
        bound: 8,
        entries,
    };
    if let Some(path) = &path {
        let mut doc = serde_json::to_string_pretty(&catalog)
            .map_err(|e| Failure::internal(e.to_string()))?;
        doc.push('\n');
        fs::write(path, doc)
            .map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))?;
    }
    Ok(catalog)
}

fn cmd_siegel(form: TernaryForm, n: u64, explain: bool) -> Result<Output, Failure> {
    require_positive_definite(&form)?;
    if n < 1 {
        return Err(Failure::precondition("the Siegel formula needs n ≥ 1"));
    }
    let assembly =
        siegel_assembly(&form, n).map_err(|e| Failure::precondition(e.to_string()))?;
    if !assembly.total.is_integer() || assembly.total.is_negative() {
        return Err(Failure::internal(format!(
            "Siegel total {} for form {form} at n={n} is not a nonnegative integer",
            assembly.total
        )));
    }
    let count = assembly
        .total
        .to_integer()
        .to_u64()
        .ok_or_else(|| Failure::internal("Siegel count exceeds u64".to_string()))?;
    let json = if explain {
        let mut doc = assembly.to_json();
        doc["count"] = json!(count);
        doc
    } else {
        json!({ "form": form.to_string(), "n": n, "count": count })
    };
    Ok(Output::ok(json, format!("n,count\n{n},{count}\n")))
}

fn cmd_prelist(form: TernaryForm) -> Result<Output, Failure> {
    let config = shipped_config(&form).ok_or_else(|| {
        Failure::precondition(format!("no shipped prelist config for form {form}"))
    })?;
    let solution = solve_prelist(&config);
    let mut csv = String::from("n,status\n");
    for &n in &solution.candidates {
        let status = if solution.spurious.contains(&n) {
            "spurious"
        } else if solution.unrepresented.contains(&n) {
            "unrepresented"
        } else {
            "member"
        };
        writeln!(csv, "{n},{status}").unwrap();
    }
    let json = serde_json::to_value(&solution).map_err(|e| Failure::internal(e.to_string()))?;
    Ok(Output::ok(json, csv))
}

fn cmd_unique(form: TernaryForm, n_max: Option<i64>) -> Result<Output, Failure> {
    require_positive_definite(&form)?;
    if let Some(n_max) = n_max {
        if n_max < 0 {
            return Err(Failure::precondition("N must be nonnegative"));
        }
        let unique = scan_unique(&form, n_max);
        let mut csv = String::from("n\n");
        for n in &unique {
            writeln!(csv, "{n}").unwrap();
        }
        return Ok(Output::ok(
            json!({ "form": form.to_string(), "n_max": n_max, "unique": unique }),
            csv,
        ));
    }

    let config = shipped_config(&form).ok_or_else(|| {
        Failure::precondition(format!(
            "no shipped prelist config for form {form}; pass --N for an exhaustive scan"
        ))
    })?;
    let solved = unique_from_prelist(&config);
    let mut json = serde_json::to_value(&solved).map_err(|e| Failure::internal(e.to_string()))?;

    // For 4^k / 9^k families the pipeline output lists base values only; back
    // the family claim by checking its scaling identity up to the scan bound.
    if let Some(base) = config.family_base {
        let data = expected();
        if let Some(theorem) = data.theorems.iter().find(|t| t.form == form) {
            let mut cache = SourceCache::new();
            let verdicts: Vec<serde_json::Value> = theorem
                .relations
                .iter()
                .filter_map(|id| {
                    builtin_catalog().into_iter().find(|r| &r.id == id).map(|rel| {
                        let v = verify_relation_cached(&rel, data.scan_bound as u64, &mut cache);
                        json!({ "id": v.id, "pass": v.pass, "checked_to": v.checked_to })
                    })
                })
                .collect();
            json["family"] = json!({ "base": base, "scaling_identities": verdicts });
        }
    }

    let mut csv = String::from("n\n");
    for n in &solved.unique {
        writeln!(csv, "{n}").unwrap();
    }
    Ok(Output::ok(json, csv))
}

fn cmd_identities(n_max: u64) -> Result<Output, Failure> {
    let catalog = builtin_catalog();
    let verdicts = verify_catalog(&catalog, n_max);
    let passed = verdicts.iter().filter(|v| v.pass).count();
    let mut csv = String::from("id,pass,checked_to\n");
    for v in &verdicts {
        writeln!(csv, "{},{},{}", csv_quote(&v.id), v.pass, v.checked_to).unwrap();
    }
    let code = if passed == verdicts.len() {
        0
    } else {
        EXIT_MISMATCH
    };
    let json = json!({
        "n_max": n_max,
        "total": verdicts.len(),
        "passed": passed,
        "verdicts": verdicts,
    });
    Ok(Output { json, csv, code })
}

fn cmd_reproduce(target: &str) -> Result<Output, Failure> {
    let report = reproduce(target).map_err(|e| {
        Failure::usage(format!(
            "{e}; valid targets: {}",
            all_targets().join(", ")
        ))
    })?;
    let mut csv = String::from("target,check,pass,detail\n");
    for c in &report.checks {
        writeln!(
            csv,
            "{},{},{},{}",
            csv_quote(&report.target),
            csv_quote(&c.name),
            c.pass,
            csv_quote(&c.detail)
        )
        .unwrap();
    }
    let code = if report.pass { 0 } else { EXIT_MISMATCH };
    let json = serde_json::to_value(&report).map_err(|e| Failure::internal(e.to_string()))?;
    Ok(Output { json, csv, code })
}
