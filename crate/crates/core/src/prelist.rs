//! Prelist and unique-representation solvers.
//!
//! The prelist of a form f is the set of n with 0 < R_f(n) ≤ |Aut(f)| — the
//! necessary condition for n to be represented essentially uniquely.  For
//! forms with a shipped residue-case table the solver generates candidates by
//! scanning the class-number-≤-8 catalog through per-case discriminant
//! templates, then settles membership by exact counting; any form can instead
//! be scanned exhaustively.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero as NumZero};
use serde::Serialize;

use crate::automorphs::{automorph_group, orbit_partition_with_group};
use crate::binaryqf::{catalog_entries, class_number, CatalogEntry};
use crate::forms::TernaryForm;

/// A per-case multiplier as a function of the power exponent a in n = base^a·v.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coefficient {
    /// num/den, independent of a.
    Constant { num: i64, den: i64 },
    /// (num/den)·(2^{a+shift} − sub).
    PowerOfTwo {
        num: i64,
        den: i64,
        shift: u32,
        sub: i64,
    },
    /// (3^{a+1} − sub)/3^a.
    PowerOfThree { sub: i64 },
    /// The relevant local density vanishes: the count is exactly 0.
    Zero,
}

impl Coefficient {
    pub fn value(&self, a: u32) -> BigRational {
        let rat = |n: i64, d: i64| {
            BigRational::new(BigInt::from(n), BigInt::from(d))
        };
        match *self {
            Coefficient::Constant { num, den } => rat(num, den),
            Coefficient::PowerOfTwo {
                num,
                den,
                shift,
                sub,
            } => {
                let pow = BigInt::from(1u8) << (a + shift);
                rat(num, den) * BigRational::from(pow - BigInt::from(sub))
            }
            Coefficient::PowerOfThree { sub } => {
                let p = BigInt::from(3u8).pow(a + 1) - BigInt::from(sub);
                BigRational::new(p, BigInt::from(3u8).pow(a))
            }
            Coefficient::Zero => BigRational::zero(),
        }
    }
}

/// How a case builds the imaginary-quadratic discriminant whose class number
/// enters the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DiscTemplate {
    /// D = −v.
    MinusV,
    /// D = −4v.
    Minus4V,
    /// D = −8v.
    Minus8V,
    /// D = −v/2 (v even).
    MinusHalfV,
    /// D = −2v.
    MinusTwiceV,
    /// D = −24n for the whole n = base^a·v.
    Minus24N,
    /// No class-number factor; the coefficient alone is the bound.
    Unit,
}

impl DiscTemplate {
    /// The discriminant for a given v (Minus24N needs the full n instead).
    fn discriminant_for_v(&self, v: u64) -> Option<i64> {
        match self {
            DiscTemplate::MinusV => Some(-(v as i64)),
            DiscTemplate::Minus4V => Some(-4 * v as i64),
            DiscTemplate::Minus8V => Some(-8 * v as i64),
            DiscTemplate::MinusHalfV => {
                (v % 2 == 0).then(|| -((v / 2) as i64))
            }
            DiscTemplate::MinusTwiceV => Some(-2 * v as i64),
            DiscTemplate::Minus24N | DiscTemplate::Unit => None,
        }
    }

    /// Invert the template: which v produces the catalog discriminant d?
    fn v_from_discriminant(&self, d: i64) -> Option<u64> {
        let abs = (-d) as u64;
        match self {
            DiscTemplate::MinusV => Some(abs),
            DiscTemplate::Minus4V => (abs % 4 == 0).then(|| abs / 4),
            DiscTemplate::Minus8V => (abs % 8 == 0).then(|| abs / 8),
            DiscTemplate::MinusHalfV => Some(abs * 2),
            DiscTemplate::MinusTwiceV => (abs % 2 == 0).then(|| abs / 2),
            DiscTemplate::Minus24N | DiscTemplate::Unit => None,
        }
    }
}

/// One row of a residue-case table.
#[derive(Clone, Debug, Serialize)]
pub struct CaseRule {
    pub label: String,
    pub a_min: u32,
    /// Inclusive; None = unbounded above.
    pub a_max: Option<u32>,
    /// v is matched by v ≡ r (mod v_modulus) for some listed r, unless
    /// v_exact pins a single value.
    pub v_modulus: u64,
    pub v_residues: Vec<u64>,
    pub v_exact: Option<u64>,
    /// v must exceed this (0 = unconstrained).
    pub v_min_exclusive: u64,
    pub coefficient: Coefficient,
    pub template: DiscTemplate,
}

impl CaseRule {
    fn matches(&self, a: u32, v: u64) -> bool {
        if a < self.a_min || self.a_max.is_some_and(|m| a > m) {
            return false;
        }
        if let Some(exact) = self.v_exact {
            return v == exact;
        }
        v > self.v_min_exclusive && self.v_residues.contains(&(v % self.v_modulus))
    }
}

/// Which integers the case table covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Domain {
    All,
    Odd,
}

/// A complete residue-case table for one form: every admissible n = base^a·v
/// falls under exactly one rule.
#[derive(Clone, Debug, Serialize)]
pub struct PrelistConfig {
    pub form: TernaryForm,
    pub aut_order: u64,
    /// Base of the explicit power decomposition n = power_base^a·v.
    pub power_base: u64,
    /// A base whose square-class the counts are invariant under
    /// (R(family_base·n) = R(n)); its powers are stripped before matching and
    /// the solved lists are base lists for the implied infinite family.
    pub family_base: Option<u64>,
    pub domain: Domain,
    pub rules: Vec<CaseRule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PrelistError {
    MissingConfig(TernaryForm),
    /// n outside the config's domain (e.g. an even n for an odd-only table).
    OutOfDomain { n: u64 },
    /// n falls in a residue class whose local density vanishes; the count is
    /// exactly zero and no positive lower bound exists.
    ZeroClass { n: u64 },
    /// Case-table incompleteness; indicates a configuration bug.
    NoMatchingRule { n: u64 },
}

impl std::fmt::Display for PrelistError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PrelistError::MissingConfig(form) => {
                write!(f, "no residue-case table shipped for {form}")
            }
            PrelistError::OutOfDomain { n } => {
                write!(f, "n = {n} is outside the case table's domain")
            }
            PrelistError::ZeroClass { n } => {
                write!(f, "n = {n} lies in a vanishing residue class (count is exactly 0)")
            }
            PrelistError::NoMatchingRule { n } => {
                write!(f, "case table matched no rule for n = {n}")
            }
        }
    }
}

impl std::error::Error for PrelistError {}

impl PrelistConfig {
    /// Strip the invariant family factor, then split off power_base^a.
    pub fn decompose(&self, n: u64) -> (u32, u64) {
        assert!(n >= 1);
        let mut v = n;
        if let Some(fb) = self.family_base {
            if fb != self.power_base {
                while v % fb == 0 {
                    v /= fb;
                }
            }
        }
        let mut a = 0;
        while v % self.power_base == 0 {
            v /= self.power_base;
            a += 1;
        }
        (a, v)
    }

    pub fn admits(&self, n: u64) -> bool {
        n >= 1 && (self.domain == Domain::All || n % 2 == 1)
    }

    fn matching_rules(&self, a: u32, v: u64) -> Vec<&CaseRule> {
        self.rules.iter().filter(|r| r.matches(a, v)).collect()
    }
}

fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| catalog_entries(8).expect("catalog construction"))
}

/// The certified class-number lower bound for R_f(n) read off the case table:
/// coefficient(a) × h(template discriminant), with the square-divisor
/// correction P ≥ 1 dropped.  Always ≤ the Siegel count.
pub fn lower_bound_count(
    config: &PrelistConfig,
    n: u64,
) -> Result<BigRational, PrelistError> {
    if !config.admits(n) {
        return Err(PrelistError::OutOfDomain { n });
    }
    let (a, v) = config.decompose(n);
    let rules = config.matching_rules(a, v);
    let rule = match rules.as_slice() {
        [single] => *single,
        [] => return Err(PrelistError::NoMatchingRule { n }),
        _ => panic!("case table is ambiguous at n = {n}: {rules:?}"),
    };
    if rule.coefficient == Coefficient::Zero {
        return Err(PrelistError::ZeroClass { n });
    }
    let coeff = rule.coefficient.value(a);
    let h_factor = match rule.template {
        DiscTemplate::Unit => BigRational::from(BigInt::from(1)),
        DiscTemplate::Minus24N => {
            let d = -24 * n as i64;
            BigRational::from(BigInt::from(
                class_number(d).expect("−24n is a valid discriminant") as i64,
            ))
        }
        other => {
            let d = other
                .discriminant_for_v(v)
                .expect("template applies to this v");
            BigRational::from(BigInt::from(
                class_number(d).expect("case discriminant is valid") as i64,
            ))
        }
    };
    Ok(coeff * h_factor)
}

/// Outcome of the candidate generation + exact filter.
#[derive(Clone, Debug, Serialize)]
pub struct PrelistSolution {
    pub form: TernaryForm,
    pub aut_order: u64,
    /// Every n satisfying the class-number bound, sorted.
    pub candidates: Vec<u64>,
    /// Candidates with 0 < R_f(n) ≤ aut_order (the prelist proper).
    pub prelist: Vec<u64>,
    /// Candidates whose exact count exceeds aut_order.
    pub spurious: Vec<u64>,
    /// Candidates not represented at all (normally empty).
    pub unrepresented: Vec<u64>,
}

const GENERATION_A_CAP: u32 = 64;

/// All n satisfying the case-table bound coefficient·h ≤ aut_order.
fn generate_candidates(config: &PrelistConfig) -> BTreeSet<u64> {
    let aut = BigRational::from(BigInt::from(config.aut_order as i64));
    let mut out = BTreeSet::new();
    let implicit_power_family = config.family_base == Some(config.power_base);
    for rule in &config.rules {
        if rule.coefficient == Coefficient::Zero {
            continue;
        }
        if rule.template == DiscTemplate::Minus24N {
            // One catalog pass; the exponent comes from n itself.
            for entry in catalog() {
                let abs = (-entry.d) as u64;
                if abs % 24 != 0 {
                    continue;
                }
                let n = abs / 24;
                if !config.admits(n) {
                    continue;
                }
                let (a, v) = config.decompose(n);
                if !rule.matches(a, v) {
                    continue;
                }
                let bound = rule.coefficient.value(a)
                    * BigRational::from(BigInt::from(entry.h as i64));
                if bound <= aut {
                    out.insert(n);
                }
            }
            continue;
        }
        let mut a = rule.a_min;
        loop {
            if rule.a_max.is_some_and(|m| a > m) {
                break;
            }
            assert!(
                a <= GENERATION_A_CAP,
                "candidate generation did not terminate for rule {}",
                rule.label
            );
            let coeff = rule.coefficient.value(a);
            match rule.template {
                DiscTemplate::Unit => {
                    let v = rule.v_exact.expect("unit rules pin v");
                    if coeff <= aut {
                        out.insert(config.power_base.pow(a) * v);
                    } else if rule.a_max.is_none() {
                        // All shipped coefficients are nondecreasing in a.
                        break;
                    }
                }
                template => {
                    let ceiling = (aut.clone() / &coeff).floor().to_integer();
                    if ceiling < BigInt::from(1) {
                        if rule.a_max.is_none() {
                            break;
                        }
                    } else {
                        let ceiling = ceiling.to_u64().expect("small ceiling");
                        assert!(
                            ceiling <= 8,
                            "rule {} needs class numbers beyond the catalog",
                            rule.label
                        );
                        for entry in catalog() {
                            if entry.h > ceiling {
                                continue;
                            }
                            let Some(v) = template.v_from_discriminant(entry.d) else {
                                continue;
                            };
                            if v % config.power_base == 0 || !rule.matches(a, v) {
                                continue;
                            }
                            let n = config.power_base.pow(a) * v;
                            if config.admits(n) {
                                out.insert(n);
                            }
                        }
                    }
                }
            }
            if implicit_power_family {
                // Counts repeat along power_base^k·v; list base values only.
                break;
            }
            a += 1;
        }
    }
    out
}

/// Solve the prelist by candidate generation and exact counting.
pub fn solve_prelist(config: &PrelistConfig) -> PrelistSolution {
    let candidates: Vec<u64> = generate_candidates(config).into_iter().collect();
    let mut prelist = Vec::new();
    let mut spurious = Vec::new();
    let mut unrepresented = Vec::new();
    for &n in &candidates {
        let count = config.form.representation_count(n as i64);
        if count == 0 {
            unrepresented.push(n);
        } else if count <= config.aut_order {
            prelist.push(n);
        } else {
            spurious.push(n);
        }
    }
    PrelistSolution {
        form: config.form,
        aut_order: config.aut_order,
        candidates,
        prelist,
        spurious,
        unrepresented,
    }
}

/// A prelist solution refined by the orbit test.
#[derive(Clone, Debug, Serialize)]
pub struct UniqueSolution {
    pub solution: PrelistSolution,
    /// Prelist members whose representations form a single automorph orbit.
    pub unique: Vec<u64>,
}

pub fn unique_from_prelist(config: &PrelistConfig) -> UniqueSolution {
    let solution = solve_prelist(config);
    let group = automorph_group(&config.form);
    let unique = solution
        .prelist
        .iter()
        .copied()
        .filter(|&n| {
            orbit_partition_with_group(&config.form, n as i64, &group)
                .orbits
                .len()
                == 1
        })
        .collect();
    UniqueSolution { solution, unique }
}

/// Exhaustively find every n ≤ n_max represented essentially uniquely,
/// via one theta sweep and orbit checks on the counts that qualify.
pub fn scan_unique(form: &TernaryForm, n_max: i64) -> Vec<i64> {
    let group = automorph_group(form);
    let aut = group.order() as u64;
    let counts = form.theta_counts(n_max);
    let mut out = Vec::new();
    for (n, &count) in counts.iter().enumerate().skip(1) {
        // A single orbit has at most |Aut| elements, so R > |Aut| can't be unique.
        if count == 0 || count > aut {
            continue;
        }
        if orbit_partition_with_group(form, n as i64, &group).orbits.len() == 1 {
            out.push(n as i64);
        }
    }
    out
}

// --- shipped case tables ----------------------------------------------------

fn rule(
    label: &str,
    a_range: (u32, Option<u32>),
    v_modulus: u64,
    v_residues: &[u64],
    v_min_exclusive: u64,
    coefficient: Coefficient,
    template: DiscTemplate,
) -> CaseRule {
    CaseRule {
        label: label.to_string(),
        a_min: a_range.0,
        a_max: a_range.1,
        v_modulus,
        v_residues: v_residues.to_vec(),
        v_exact: None,
        v_min_exclusive,
        coefficient,
        template,
    }
}

fn exact_rule(
    label: &str,
    a_range: (u32, Option<u32>),
    v: u64,
    coefficient: Coefficient,
    template: DiscTemplate,
) -> CaseRule {
    CaseRule {
        label: label.to_string(),
        a_min: a_range.0,
        a_max: a_range.1,
        v_modulus: 1,
        v_residues: Vec::new(),
        v_exact: Some(v),
        v_min_exclusive: 0,
        coefficient,
        template,
    }
}

const fn c(num: i64) -> Coefficient {
    Coefficient::Constant { num, den: 1 }
}

const fn chalf(num: i64) -> Coefficient {
    Coefficient::Constant { num, den: 2 }
}

/// x² + y² + z²: |Aut| = 48, counts invariant under n ↦ 4n.
pub fn config_111() -> PrelistConfig {
    use Coefficient::Zero;
    use DiscTemplate::*;
    let all = (0, None);
    PrelistConfig {
        form: TernaryForm::new(1, 1, 1, 0, 0, 0),
        aut_order: 48,
        power_base: 4,
        family_base: Some(4),
        domain: Domain::All,
        rules: vec![
            exact_rule("v=1", all, 1, c(6), Unit),
            exact_rule("v=3", all, 3, c(8), Unit),
            rule("v=3 (8), v>3", all, 8, &[3], 3, c(24), MinusV),
            rule("v=1,2 (4), v>1", all, 4, &[1, 2], 1, c(12), Minus4V),
            rule("v=7 (8)", all, 8, &[7], 0, Zero, Unit),
        ],
    }
}

/// x² + 3y² + 3z²: |Aut| = 16, counts invariant under n ↦ 9n.
pub fn config_133() -> PrelistConfig {
    use Coefficient::{PowerOfTwo, Zero};
    use DiscTemplate::*;
    let all = (0, None);
    let two = |num: i64, shift: u32, sub: i64| PowerOfTwo {
        num,
        den: 1,
        shift,
        sub,
    };
    PrelistConfig {
        form: TernaryForm::new(1, 3, 3, 0, 0, 0),
        aut_order: 16,
        power_base: 4,
        family_base: Some(9),
        domain: Domain::All,
        rules: vec![
            exact_rule("v=1", all, 1, two(2, 2, 3), Unit),
            exact_rule("v=3", all, 3, two(4, 1, 1), Unit),
            rule("v=19 (24)", all, 24, &[19], 0, two(24, 1, 1), MinusV),
            rule("v=7 (24)", all, 24, &[7], 0, two(1, 4, 0), MinusV),
            rule("v=1,10 (12), v>1", all, 12, &[1, 10], 1, two(4, 2, 3), Minus4V),
            rule("v=3,51 (72), v>3", all, 72, &[3, 51], 3, two(12, 1, 1), MinusV),
            rule("v=15,39 (72)", all, 72, &[15, 39], 0, two(1, 3, 0), MinusV),
            rule(
                "v=6,21,30,33 (36)",
                all,
                36,
                &[6, 21, 30, 33],
                0,
                two(2, 2, 3),
                Minus4V,
            ),
            rule("v=2 (3)", all, 3, &[2], 0, Zero, Unit),
        ],
    }
}

/// x² + 2y² + 3z² on odd n = 9^b·v: |Aut| = 8.
pub fn config_123() -> PrelistConfig {
    use Coefficient::PowerOfThree;
    use DiscTemplate::Minus24N;
    let all = (0, None);
    PrelistConfig {
        form: TernaryForm::new(1, 2, 3, 0, 0, 0),
        aut_order: 8,
        power_base: 9,
        family_base: None,
        domain: Domain::Odd,
        rules: vec![
            rule("v=1,2 (3)", all, 3, &[1, 2], 0, PowerOfThree { sub: 2 }, Minus24N),
            rule("v=3 (9)", all, 9, &[3], 0, c(3), Minus24N),
            rule("v=6 (9)", all, 9, &[6], 0, PowerOfThree { sub: 1 }, Minus24N),
        ],
    }
}

/// The discriminant-4096 form (5,13,20,−12,4,2): |Aut| = 4.
pub fn config_4096() -> PrelistConfig {
    use Coefficient::Zero;
    use DiscTemplate::*;
    PrelistConfig {
        form: TernaryForm::new(5, 13, 20, -12, 4, 2),
        aut_order: 4,
        power_base: 4,
        family_base: None,
        domain: Domain::All,
        rules: vec![
            exact_rule("v=1, a<2", (0, Some(1)), 1, Zero, Unit),
            exact_rule("v=1, a=2", (2, Some(2)), 1, c(2), Unit),
            exact_rule("v=1, a>2", (3, None), 1, c(6), Unit),
            exact_rule("v=3, a<2", (0, Some(1)), 3, Zero, Unit),
            exact_rule("v=3, a>1", (2, None), 3, c(8), Unit),
            rule("v=5 (8), a=0", (0, Some(0)), 8, &[5], 0, c(1), Minus4V),
            rule("v=5 (8), a=1", (1, Some(1)), 8, &[5], 0, c(4), Minus4V),
            rule("v=1 (8), v>1, a<2", (0, Some(1)), 8, &[1], 1, Zero, Unit),
            rule("v=2 (4), a<2", (0, Some(1)), 4, &[2], 0, Zero, Unit),
            rule("v=3 (8), v>3, a<2", (0, Some(1)), 8, &[3], 3, Zero, Unit),
            rule("v=1 (4), v>1, a=2", (2, Some(2)), 4, &[1], 1, c(4), Minus4V),
            rule("v=2 (4), a=2", (2, Some(2)), 4, &[2], 0, c(4), Minus4V),
            rule("v=1 (4), v>1, a>2", (3, None), 4, &[1], 1, c(12), Minus4V),
            rule("v=2 (4), a>2", (3, None), 4, &[2], 0, c(12), Minus4V),
            rule("v=3 (8), v>3, a>1", (2, None), 8, &[3], 3, c(24), MinusV),
            rule("v=7 (8)", (0, None), 8, &[7], 0, Zero, Unit),
        ],
    }
}

/// The discriminant-8192 form (7,15,23,10,2,6): |Aut| = 2.
pub fn config_8192() -> PrelistConfig {
    use Coefficient::Zero;
    use DiscTemplate::*;
    PrelistConfig {
        form: TernaryForm::new(7, 15, 23, 10, 2, 6),
        aut_order: 2,
        power_base: 4,
        family_base: None,
        domain: Domain::All,
        rules: vec![
            // v odd.
            rule("v=7 (8), a=0", (0, Some(0)), 8, &[7], 0, chalf(1), Minus8V),
            rule("v=7 (8), a=1,2", (1, Some(2)), 8, &[7], 0, c(2), Minus8V),
            rule("v=1,3,5 (8), a<2", (0, Some(1)), 8, &[1, 3, 5], 0, Zero, Unit),
            rule("v=1,3,5 (8), a=2", (2, Some(2)), 8, &[1, 3, 5], 0, c(2), Minus8V),
            rule("v odd, a=3", (3, Some(3)), 2, &[1], 0, c(4), Minus8V),
            rule("v odd, a>3", (4, None), 2, &[1], 0, c(12), Minus8V),
            // v ≡ 2 (mod 4).
            exact_rule("v=2, a<2", (0, Some(1)), 2, Zero, Unit),
            exact_rule("v=2, a=2", (2, Some(2)), 2, c(2), Unit),
            exact_rule("v=2, a>2", (3, None), 2, c(6), Unit),
            exact_rule("v=6, a<2", (0, Some(1)), 6, Zero, Unit),
            exact_rule("v=6, a>1", (2, None), 6, c(8), Unit),
            rule("v=2 (8), v>2, a<2", (0, Some(1)), 8, &[2], 2, Zero, Unit),
            rule("v=2 (8), v>2, a=2", (2, Some(2)), 8, &[2], 2, c(4), MinusTwiceV),
            rule("v=2 (8), v>2, a>2", (3, None), 8, &[2], 2, c(12), MinusTwiceV),
            rule("v=6 (16), v>6, a<2", (0, Some(1)), 16, &[6], 6, Zero, Unit),
            rule("v=6 (16), v>6, a>1", (2, None), 16, &[6], 6, c(24), MinusHalfV),
            rule("v=14 (16)", (0, None), 16, &[14], 0, Zero, Unit),
        ],
    }
}

/// The case table shipped for a form, if any.
pub fn shipped_config(form: &TernaryForm) -> Option<PrelistConfig> {
    shipped_configs().into_iter().find(|c| c.form == *form)
}

pub fn shipped_configs() -> Vec<PrelistConfig> {
    vec![
        config_111(),
        config_133(),
        config_123(),
        config_4096(),
        config_8192(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn prelist_111_reproduces_published_values() {
        let sol = solve_prelist(&config_111());
        let expected = vec![
            1, 2, 3, 5, 6, 9, 10, 11, 13, 14, 17, 18, 19, 21, 22, 25, 27, 30, 33, 34,
            35, 37, 42, 43, 46, 51, 57, 58, 67, 70, 73, 78, 82, 85, 91, 93, 97, 102,
            115, 123, 130, 133, 142, 163, 177, 187, 190, 193, 235, 253, 267, 403, 427,
        ];
        assert_eq!(sol.prelist, expected);
        // The bound also admits 45 and 147, which exact counting rejects
        // alongside the three commonly quoted spurious values.
        assert_eq!(sol.spurious, vec![45, 49, 75, 99, 147]);
        assert!(sol.unrepresented.is_empty());
    }

    #[test]
    fn prelist_4096_reproduces_published_values() {
        let sol = solve_prelist(&config_4096());
        assert_eq!(sol.prelist, vec![5, 13, 16, 21, 32, 37, 85, 93, 133, 253]);
        assert_eq!(sol.spurious, vec![45]);
        assert!(sol.unrepresented.is_empty());
    }

    #[test]
    fn prelist_8192_reproduces_published_values() {
        let sol = solve_prelist(&config_8192());
        assert_eq!(sol.prelist, vec![7, 15, 16, 23, 32, 39, 71, 95]);
        assert!(sol.spurious.is_empty());
        assert!(sol.unrepresented.is_empty());
    }

    #[test]
    fn prelist_133_reproduces_published_values() {
        let sol = solve_prelist(&config_133());
        let expected = vec![
            1, 3, 4, 6, 7, 10, 12, 13, 15, 21, 22, 25, 30, 33, 34, 37, 42, 46, 57, 58,
            66, 69, 70, 73, 78, 82, 85, 93, 97, 102, 105, 114, 130, 133, 138, 141, 142,
            165, 177, 190, 193, 210, 213, 253, 258, 273, 282, 330, 345, 357, 438, 462,
            498,
        ];
        assert_eq!(sol.prelist, expected);
        assert_eq!(sol.spurious, vec![49, 150]);
        assert!(sol.unrepresented.is_empty());
    }

    #[test]
    fn prelist_123_reproduces_published_values() {
        let sol = solve_prelist(&config_123());
        assert_eq!(
            sol.prelist,
            vec![1, 3, 5, 7, 11, 13, 17, 19, 23, 35, 43, 47, 55, 73, 77, 83]
        );
        assert_eq!(sol.spurious, vec![25]);
        assert!(sol.unrepresented.is_empty());
    }

    #[test]
    fn lower_bounds_are_sound_and_tables_complete_to_500() {
        for config in shipped_configs() {
            let counts = config.form.theta_counts(500);
            for n in 1..=500u64 {
                if !config.admits(n) {
                    assert_eq!(
                        lower_bound_count(&config, n),
                        Err(PrelistError::OutOfDomain { n })
                    );
                    continue;
                }
                let exact = BigRational::from(BigInt::from(counts[n as usize] as i64));
                match lower_bound_count(&config, n) {
                    Ok(bound) => {
                        assert!(!bound.is_negative());
                        assert!(
                            bound <= exact,
                            "form {} n={n}: bound {bound} exceeds exact {exact}",
                            config.form
                        );
                    }
                    Err(PrelistError::ZeroClass { .. }) => {
                        assert_eq!(
                            counts[n as usize], 0,
                            "form {} n={n}: zero class but represented",
                            config.form
                        );
                    }
                    Err(other) => panic!("form {} n={n}: {other}", config.form),
                }
            }
        }
    }

    #[test]
    fn lower_bound_spot_values() {
        let r = |n: i64| BigRational::from(BigInt::from(n));
        // 24·h(−11) = 24 on the 3-mod-8 branch.
        assert_eq!(lower_bound_count(&config_111(), 11), Ok(r(24)));
        // 12·h(−4·2) = 12; and n = 4·11 decomposes back to v = 11.
        assert_eq!(lower_bound_count(&config_111(), 2), Ok(r(12)));
        assert_eq!(lower_bound_count(&config_111(), 44), Ok(r(24)));
        // 3·h(−72) = 6 on the v ≡ 3 (mod 9) branch.
        assert_eq!(lower_bound_count(&config_123(), 3), Ok(r(6)));
        // 24·h(−11) = 24 at n = 16·11 for the discriminant-4096 form.
        assert_eq!(lower_bound_count(&config_4096(), 176), Ok(r(24)));
        // Zero classes report as such.
        assert_eq!(
            lower_bound_count(&config_111(), 7),
            Err(PrelistError::ZeroClass { n: 7 })
        );
    }

    #[test]
    fn unique_filter_matches_published_theorems() {
        let sol = unique_from_prelist(&config_4096());
        assert_eq!(sol.unique, vec![5, 13, 16, 21, 32, 37, 93, 133, 253]);
        let sol = unique_from_prelist(&config_8192());
        assert_eq!(sol.unique, vec![7, 15, 16, 23, 32, 39, 71, 95]);
        let sol = unique_from_prelist(&config_123());
        assert_eq!(sol.unique, vec![1, 5, 7, 13, 17, 23, 47, 55]);
    }

    #[test]
    fn scan_unique_small_range_sanity() {
        let form = TernaryForm::new(1, 1, 1, 0, 0, 0);
        let unique = scan_unique(&form, 100);
        for n in [1i64, 2, 3, 5, 6, 10, 11, 13, 19] {
            assert!(unique.contains(&n), "{n} should be unique");
        }
        for n in [7i64, 9, 15, 18, 25, 26, 27] {
            assert!(!unique.contains(&n), "{n} should not be unique");
        }
        // The 4-power family replicates: 4n unique iff n unique.
        for n in 1..=25i64 {
            assert_eq!(unique.contains(&n), unique.contains(&(4 * n)));
        }
    }

    #[test]
    fn solution_serializes() {
        let sol = solve_prelist(&config_123());
        let json = serde_json::to_string(&sol).unwrap();
        assert!(json.contains("\"prelist\""));
        assert!(json.contains("\"spurious\""));
    }
}
