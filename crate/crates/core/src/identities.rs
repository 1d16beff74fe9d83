//! Exact q-series identity verification.
//!
//! Sources are theta series of ternary forms, congruence-restricted theta
//! series with an optional linear-plus-constant exponent shift, and eta
//! products.  A relation equates two integer combinations of arithmetic
//! progressions of source coefficients; verification compares both sides
//! coefficient by coefficient up to a cutoff and reports the first mismatch.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::forms::{solve_gram, sweep_shifted, TernaryForm};

/// A truncated power series in q with exact integer coefficients; the
/// coefficient of q^i is exact for every i ≤ valid_to().
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<i128>,
}

impl QSeries {
    pub fn zeros(valid_to: usize) -> Self {
        QSeries {
            coeffs: vec![0; valid_to + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<i128>) -> Self {
        assert!(!coeffs.is_empty());
        QSeries { coeffs }
    }

    pub fn valid_to(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> i128 {
        assert!(i <= self.valid_to(), "coefficient {i} beyond validity");
        self.coeffs[i]
    }

    pub fn truncate(mut self, valid_to: usize) -> Self {
        assert!(valid_to <= self.valid_to());
        self.coeffs.truncate(valid_to + 1);
        self
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let n = self.valid_to().min(other.valid_to());
        QSeries::from_coeffs((0..=n).map(|i| self.coeffs[i] + other.coeffs[i]).collect())
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let n = self.valid_to().min(other.valid_to());
        QSeries::from_coeffs((0..=n).map(|i| self.coeffs[i] - other.coeffs[i]).collect())
    }

    pub fn scale(&self, factor: i128) -> QSeries {
        QSeries::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Cauchy product; exact through min(valid_to) of the operands.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.valid_to().min(other.valid_to());
        let mut out = vec![0i128; n + 1];
        for (i, &a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        QSeries::from_coeffs(out)
    }

    /// q ↦ q^t; exact through t·valid_to + t − 1 (the gaps are genuine zeros).
    pub fn dilate(&self, t: usize) -> QSeries {
        assert!(t >= 1);
        let mut out = vec![0i128; t * self.valid_to() + t];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[t * i] = c;
        }
        QSeries::from_coeffs(out)
    }

    /// Multiply by q^s.
    pub fn shift(&self, s: usize) -> QSeries {
        let mut out = vec![0i128; self.coeffs.len() + s];
        out[s..].copy_from_slice(&self.coeffs);
        QSeries::from_coeffs(out)
    }

    /// The sub-series of coefficients along step·i + offset.
    pub fn extract(&self, step: usize, offset: usize) -> QSeries {
        assert!(step >= 1 && offset <= self.valid_to());
        let n = (self.valid_to() - offset) / step;
        QSeries::from_coeffs((0..=n).map(|i| self.coeffs[step * i + offset]).collect())
    }
}

/// Coefficients of E(q) = ∏_{n≥1}(1 − q^n) via the pentagonal-number series
/// Σ_{k∈Z} (−1)^k q^{k(3k−1)/2}.
pub fn eta_coefficients(valid_to: usize) -> QSeries {
    let mut coeffs = vec![0i128; valid_to + 1];
    let mut k: i64 = 0;
    loop {
        let mut hit = false;
        for kk in [k, -k] {
            let g = kk * (3 * kk - 1) / 2;
            if (0..=valid_to as i64).contains(&g) {
                coeffs[g as usize] += if kk.rem_euclid(2) == 0 { 1 } else { -1 };
                hit = true;
            }
            if kk == 0 {
                break;
            }
        }
        if !hit && k > 0 {
            break;
        }
        k += 1;
    }
    QSeries::from_coeffs(coeffs)
}

/// A theta series restricted to residue classes, with an affine exponent:
/// Σ over v ≡ r (mod m) for listed r of q^{Q(v) + linear·v + constant}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConstrainedTheta {
    pub form: TernaryForm,
    pub linear: [i64; 3],
    pub constant: i64,
    pub modulus: i64,
    pub residues: Vec<[i64; 3]>,
}

/// q^shift · ∏ E(q^t)^e over the listed (t, e) factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EtaProductSpec {
    pub shift: u64,
    pub factors: Vec<(u64, u32)>,
}

/// A q-series source.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceSpec {
    Theta { form: TernaryForm },
    Constrained(ConstrainedTheta),
    Eta(EtaProductSpec),
}

fn evaluate_rational(form: &TernaryForm, v: &[BigRational; 3]) -> BigRational {
    let c = |x: i64| BigRational::from(BigInt::from(x));
    c(form.a) * &v[0] * &v[0]
        + c(form.b) * &v[1] * &v[1]
        + c(form.c) * &v[2] * &v[2]
        + c(form.d) * &v[1] * &v[2]
        + c(form.e) * &v[0] * &v[2]
        + c(form.f) * &v[0] * &v[1]
}

fn evaluate_constrained(spec: &ConstrainedTheta, n_max: usize) -> QSeries {
    let m = spec.modulus;
    assert!(m >= 1);
    let canonical: BTreeSet<[i64; 3]> = spec
        .residues
        .iter()
        .map(|r| [r[0].rem_euclid(m), r[1].rem_euclid(m), r[2].rem_euclid(m)])
        .collect();
    assert_eq!(
        canonical.len(),
        spec.residues.len(),
        "duplicate residue classes"
    );
    let gram = spec.form.gram();
    let scaled = TernaryForm::new(
        spec.form.a * m * m,
        spec.form.b * m * m,
        spec.form.c * m * m,
        spec.form.d * m * m,
        spec.form.e * m * m,
        spec.form.f * m * m,
    );
    let mut coeffs = vec![0i128; n_max + 1];
    for r in canonical {
        // v = r + m·w:  exponent(w) = Q_m(w) + L_r·w + C_r with
        // Q_m = m²Q, L_r = m(Gram·r + linear), C_r = Q(r) + linear·r + constant.
        let mut l_r = [0i64; 3];
        for i in 0..3 {
            let mut g = spec.linear[i];
            for k in 0..3 {
                g += gram[i][k] * r[k];
            }
            l_r[i] = m * g;
        }
        let c_r = spec.form.evaluate(r[0], r[1], r[2])
            + spec.linear[0] * r[0]
            + spec.linear[1] * r[1]
            + spec.linear[2] * r[2]
            + spec.constant;
        let center = solve_gram(&scaled, l_r);
        let q_center = evaluate_rational(&scaled, &center);
        let bound = BigRational::from(BigInt::from(n_max as i64 - c_r)) + &q_center;
        sweep_shifted(&scaled, &center, &bound, &mut |w, quad| {
            let e = quad as i128
                + l_r[0] as i128 * w[0] as i128
                + l_r[1] as i128 * w[1] as i128
                + l_r[2] as i128 * w[2] as i128
                + c_r as i128;
            assert!(e >= 0, "negative exponent from {spec:?}");
            if e <= n_max as i128 {
                coeffs[e as usize] += 1;
            }
        });
    }
    QSeries::from_coeffs(coeffs)
}

/// Coefficients of q^shift · ∏ E(q^t)^e to order n_max.
pub fn eta_product(factors: &[(u64, u32)], shift: u64, n_max: usize) -> QSeries {
    evaluate_eta_product(
        &EtaProductSpec {
            shift,
            factors: factors.to_vec(),
        },
        n_max,
    )
}

fn evaluate_eta_product(spec: &EtaProductSpec, n_max: usize) -> QSeries {
    let shift = spec.shift as usize;
    assert!(shift <= n_max);
    let inner = n_max - shift;
    let mut acc = QSeries::zeros(inner);
    acc.coeffs[0] = 1;
    for &(t, e) in &spec.factors {
        let t = t as usize;
        let base = eta_coefficients(inner / t).dilate(t);
        let base = if base.valid_to() > inner {
            base.truncate(inner)
        } else {
            base
        };
        for _ in 0..e {
            acc = acc.mul(&base);
        }
    }
    acc.shift(shift)
}

impl SourceSpec {
    pub fn theta(form: TernaryForm) -> Self {
        SourceSpec::Theta { form }
    }

    /// Exact coefficients 0..=n_max.
    pub fn evaluate(&self, n_max: usize) -> QSeries {
        match self {
            SourceSpec::Theta { form } => QSeries::from_coeffs(
                form.theta_counts(n_max as i64)
                    .into_iter()
                    .map(|c| c as i128)
                    .collect(),
            ),
            SourceSpec::Constrained(spec) => evaluate_constrained(spec, n_max),
            SourceSpec::Eta(spec) => {
                let series = evaluate_eta_product(spec, n_max);
                if series.valid_to() > n_max {
                    series.truncate(n_max)
                } else {
                    series
                }
            }
        }
    }
}

/// coefficient · source[step·i + offset] (or the plain i-th coefficient when
/// no progression is given).
#[derive(Clone, Debug, Serialize)]
pub struct SeriesTerm {
    pub coefficient: i64,
    pub source: SourceSpec,
    pub progression: Option<(u64, u64)>,
}

/// An identity between two sums of progression-extracted sources, indexed by
/// a common free variable n ≥ 0.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaRelation {
    pub id: String,
    pub statement: String,
    pub lhs: Vec<SeriesTerm>,
    pub rhs: Vec<SeriesTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: u64,
    pub lhs: i128,
    pub rhs: i128,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationVerdict {
    pub id: String,
    pub pass: bool,
    pub checked_to: u64,
    pub first_mismatch: Option<Mismatch>,
}

/// Memoizes source evaluations across relations of one verification run.
#[derive(Default)]
pub struct SourceCache {
    store: HashMap<SourceSpec, QSeries>,
}

impl SourceCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn get(&mut self, spec: &SourceSpec, n_max: usize) -> &QSeries {
        let hit_is_enough = self
            .store
            .get(spec)
            .is_some_and(|s| s.valid_to() >= n_max);
        if !hit_is_enough {
            let fresh = spec.evaluate(n_max);
            self.store.insert(spec.clone(), fresh);
        }
        self.store.get(spec).unwrap()
    }
}

fn side_value(terms: &[SeriesTerm], index: u64, cache: &mut SourceCache, n_max: u64) -> i128 {
    let mut total = 0i128;
    for term in terms {
        let (step, offset) = term.progression.unwrap_or((1, 0));
        let needed = (step * n_max + offset) as usize;
        let exponent = (step * index + offset) as usize;
        let series = cache.get(&term.source, needed);
        total += term.coefficient as i128 * series.coeff(exponent);
    }
    total
}

/// Check the relation at indices n = 0..=n_max.
pub fn verify_relation_cached(
    rel: &ThetaRelation,
    n_max: u64,
    cache: &mut SourceCache,
) -> RelationVerdict {
    for n in 0..=n_max {
        let lhs = side_value(&rel.lhs, n, cache, n_max);
        let rhs = side_value(&rel.rhs, n, cache, n_max);
        if lhs != rhs {
            return RelationVerdict {
                id: rel.id.clone(),
                pass: false,
                checked_to: n_max,
                first_mismatch: Some(Mismatch { index: n, lhs, rhs }),
            };
        }
    }
    RelationVerdict {
        id: rel.id.clone(),
        pass: true,
        checked_to: n_max,
        first_mismatch: None,
    }
}

pub fn verify_relation(rel: &ThetaRelation, n_max: u64) -> RelationVerdict {
    verify_relation_cached(rel, n_max, &mut SourceCache::new())
}

/// Verify every relation with a shared source cache.
pub fn verify_catalog(relations: &[ThetaRelation], n_max: u64) -> Vec<RelationVerdict> {
    let mut cache = SourceCache::new();
    relations
        .iter()
        .map(|rel| verify_relation_cached(rel, n_max, &mut cache))
        .collect()
}

// --- builtin catalog -------------------------------------------------------

fn f6(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> TernaryForm {
    TernaryForm::new(a, b, c, d, e, f)
}

fn th(form: TernaryForm) -> SourceSpec {
    SourceSpec::theta(form)
}

fn gen(
    form: TernaryForm,
    linear: [i64; 3],
    constant: i64,
    modulus: i64,
    residues: &[[i64; 3]],
) -> SourceSpec {
    SourceSpec::Constrained(ConstrainedTheta {
        form,
        linear,
        constant,
        modulus,
        residues: residues.to_vec(),
    })
}

fn term(coefficient: i64, source: SourceSpec) -> SeriesTerm {
    SeriesTerm {
        coefficient,
        source,
        progression: None,
    }
}

fn term_at(coefficient: i64, source: SourceSpec, step: u64, offset: u64) -> SeriesTerm {
    SeriesTerm {
        coefficient,
        source,
        progression: Some((step, offset)),
    }
}

fn rel(id: &str, statement: &str, lhs: Vec<SeriesTerm>, rhs: Vec<SeriesTerm>) -> ThetaRelation {
    ThetaRelation {
        id: id.to_string(),
        statement: statement.to_string(),
        lhs,
        rhs,
    }
}

/// Residues r mod `modulus` hit by none of the (step, offset) progressions.
fn uncovered_residues(modulus: u64, covered: &[(u64, u64)]) -> Vec<u64> {
    (0..modulus)
        .filter(|r| !covered.iter().any(|&(s, o)| r % s == o % s))
        .collect()
}

/// A relation asserting the form's counts vanish on every residue class of
/// `modulus` not covered by the given progressions.
fn vanishing_relation(
    id: &str,
    statement: &str,
    form: TernaryForm,
    modulus: u64,
    covered: &[(u64, u64)],
) -> ThetaRelation {
    let lhs = uncovered_residues(modulus, covered)
        .into_iter()
        .map(|r| term_at(1, th(form), modulus, r))
        .collect();
    rel(id, statement, lhs, vec![])
}

/// The toolkit's built-in identity catalog.  Every relation is verifiable by
/// `verify_relation`; ids are stable and the statement strings are the
/// identities themselves.
pub fn builtin_catalog() -> Vec<ThetaRelation> {
    let s = || th(f6(1, 1, 1, 0, 0, 0));
    let f111111 = f6(1, 1, 1, 1, 1, 1);
    let g333 = f6(3, 3, 3, -2, 2, 2);
    let h1332 = f6(1, 3, 3, 2, 0, 0);
    let f4096 = f6(5, 13, 20, -12, 4, 2);
    let g8192 = f6(7, 15, 23, 10, 2, 6);
    let mut cat = Vec::new();

    // Diagonal reductions to (1,1,1,0,0,0).
    cat.push(rel(
        "kap-112-even",
        "(1,1,2,0,0,0;2n) = (1,1,1,0,0,0;n)",
        vec![term_at(1, th(f6(1, 1, 2, 0, 0, 0)), 2, 0)],
        vec![term_at(1, s(), 1, 0)],
    ));
    cat.push(rel(
        "kap-112-odd",
        "3(1,1,2,0,0,0;2n+1) = (1,1,1,0,0,0;4n+2)",
        vec![term_at(3, th(f6(1, 1, 2, 0, 0, 0)), 2, 1)],
        vec![term_at(1, s(), 4, 2)],
    ));
    cat.push(rel(
        "kap-122-0",
        "(1,2,2,0,0,0;4n) = (1,1,1,0,0,0;n)",
        vec![term_at(1, th(f6(1, 2, 2, 0, 0, 0)), 4, 0)],
        vec![term_at(1, s(), 1, 0)],
    ));
    cat.push(rel(
        "kap-122-1",
        "3(1,2,2,0,0,0;4n+1) = (1,1,1,0,0,0;4n+1)",
        vec![term_at(3, th(f6(1, 2, 2, 0, 0, 0)), 4, 1)],
        vec![term_at(1, s(), 4, 1)],
    ));
    cat.push(rel(
        "kap-122-2",
        "3(1,2,2,0,0,0;4n+2) = (1,1,1,0,0,0;4n+2)",
        vec![term_at(3, th(f6(1, 2, 2, 0, 0, 0)), 4, 2)],
        vec![term_at(1, s(), 4, 2)],
    ));
    cat.push(rel(
        "kap-122-3",
        "(1,2,2,0,0,0;4n+3) = (1,1,1,0,0,0;4n+3)",
        vec![term_at(1, th(f6(1, 2, 2, 0, 0, 0)), 4, 3)],
        vec![term_at(1, s(), 4, 3)],
    ));
    cat.push(rel(
        "kap-124-0",
        "(1,2,4,0,0,0;8n) = (1,1,1,0,0,0;n)",
        vec![term_at(1, th(f6(1, 2, 4, 0, 0, 0)), 8, 0)],
        vec![term_at(1, s(), 1, 0)],
    ));
    cat.push(rel(
        "kap-124-2",
        "3(1,2,4,0,0,0;8n+2) = (1,1,1,0,0,0;4n+1)",
        vec![term_at(3, th(f6(1, 2, 4, 0, 0, 0)), 8, 2)],
        vec![term_at(1, s(), 4, 1)],
    ));
    cat.push(rel(
        "kap-124-4",
        "3(1,2,4,0,0,0;8n+4) = (1,1,1,0,0,0;4n+2)",
        vec![term_at(3, th(f6(1, 2, 4, 0, 0, 0)), 8, 4)],
        vec![term_at(1, s(), 4, 2)],
    ));
    cat.push(rel(
        "kap-124-6",
        "(1,2,4,0,0,0;8n+6) = (1,1,1,0,0,0;4n+3)",
        vec![term_at(1, th(f6(1, 2, 4, 0, 0, 0)), 8, 6)],
        vec![term_at(1, s(), 4, 3)],
    ));
    cat.push(rel(
        "kap-124-odd",
        "6(1,2,4,0,0,0;2n+1) = (1,1,1,0,0,0;4n+2)",
        vec![term_at(6, th(f6(1, 2, 4, 0, 0, 0)), 2, 1)],
        vec![term_at(1, s(), 4, 2)],
    ));

    // Parity dissection of (1,1,1,1,1,1).
    let mixed_xy = gen(f111111, [0; 3], 0, 2, &[[0, 0, 1], [1, 1, 0]]);
    let mixed_xz = gen(f111111, [0; 3], 0, 2, &[[0, 1, 0], [1, 0, 1]]);
    let mixed_yz = gen(f111111, [0; 3], 0, 2, &[[1, 0, 0], [0, 1, 1]]);
    let all_equal = gen(f111111, [0; 3], 0, 2, &[[0, 0, 0], [1, 1, 1]]);
    cat.push(rel(
        "parity-subsum-xy-xz",
        "Σ_{x≡y≢z (2)} q^{f(x,y,z)} = Σ_{x≡z≢y (2)} q^{f(x,y,z)}, f=(1,1,1,1,1,1)",
        vec![term(1, mixed_xy.clone())],
        vec![term(1, mixed_xz)],
    ));
    cat.push(rel(
        "parity-subsum-xy-yz",
        "Σ_{x≡y≢z (2)} q^{f(x,y,z)} = Σ_{y≡z≢x (2)} q^{f(x,y,z)}, f=(1,1,1,1,1,1)",
        vec![term(1, mixed_xy.clone())],
        vec![term(1, mixed_yz)],
    ));
    cat.push(rel(
        "parity-dissection-111111",
        "θ(1,1,1,1,1,1) = Σ_{x≡y≡z (2)} + 3·Σ_{x≡y≢z (2)}",
        vec![term(1, th(f111111))],
        vec![term(1, all_equal.clone()), term(3, mixed_xy.clone())],
    ));
    cat.push(rel(
        "equal-parity-sublattice",
        "Σ_{x≡y≡z (2)} q^{f(x,y,z)} = θ(2,2,2,0,0,0), f=(1,1,1,1,1,1)",
        vec![term(1, all_equal)],
        vec![term(1, th(f6(2, 2, 2, 0, 0, 0)))],
    ));
    cat.push(rel(
        "mixed-parity-coset",
        "Σ_{x≡y≢z (2)} q^{f(x,y,z)} = q·Σ q^{2(x²+y²+z²)+2(y+z)}, f=(1,1,1,1,1,1)",
        vec![term(1, mixed_xy)],
        vec![term(1, gen(f6(2, 2, 2, 0, 0, 0), [0, 2, 2], 1, 1, &[[0, 0, 0]]))],
    ));
    cat.push(rel(
        "theta-111111-split",
        "θ(1,1,1,1,1,1) = θ(2,2,2,0,0,0) + 3q·Σ q^{2(x²+y²+z²)+2(y+z)}",
        vec![term(1, th(f111111))],
        vec![
            term(1, th(f6(2, 2, 2, 0, 0, 0))),
            term(3, gen(f6(2, 2, 2, 0, 0, 0), [0, 2, 2], 1, 1, &[[0, 0, 0]])),
        ],
    ));
    cat.push(rel(
        "odd-111111",
        "(1,1,1,1,1,1;2n+1) = (1,1,1,0,0,0;4n+2)",
        vec![term_at(1, th(f111111), 2, 1)],
        vec![term_at(1, s(), 4, 2)],
    ));
    cat.push(rel(
        "even-111111",
        "(1,1,1,1,1,1;2n) = (1,1,1,0,0,0;n)",
        vec![term_at(1, th(f111111), 2, 0)],
        vec![term_at(1, s(), 1, 0)],
    ));

    // Parity dissection of (3,3,3,-2,2,2).
    let sum_even = gen(
        g333,
        [0; 3],
        0,
        2,
        &[[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]],
    );
    let sum_odd = gen(
        g333,
        [0; 3],
        0,
        2,
        &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]],
    );
    let odd_cube = gen(f6(4, 4, 4, 0, 0, 0), [4, 4, 4], 3, 1, &[[0, 0, 0]]);
    cat.push(rel(
        "even-coset-333",
        "Σ_{x+y+z≡0 (2)} q^{g(x,y,z)} = θ(4,4,4,0,0,0), g=(3,3,3,-2,2,2)",
        vec![term(1, sum_even)],
        vec![term(1, th(f6(4, 4, 4, 0, 0, 0)))],
    ));
    cat.push(rel(
        "odd-coset-333",
        "Σ_{x+y+z≡1 (2)} q^{g(x,y,z)} = Σ q^{(2x+1)²+(2y+1)²+(2z+1)²}, g=(3,3,3,-2,2,2)",
        vec![term(1, sum_odd)],
        vec![term(1, odd_cube.clone())],
    ));
    cat.push(rel(
        "theta-333-split",
        "θ(3,3,3,-2,2,2) = θ(4,4,4,0,0,0) + Σ q^{(2x+1)²+(2y+1)²+(2z+1)²}",
        vec![term(1, th(g333))],
        vec![term(1, th(f6(4, 4, 4, 0, 0, 0))), term(1, odd_cube)],
    ));
    cat.push(rel(
        "low3-multiples-of-4",
        "(3,3,3,-2,2,2;4n) = (1,1,1,0,0,0;n)",
        vec![term_at(1, th(g333), 4, 0)],
        vec![term_at(1, s(), 1, 0)],
    ));
    cat.push(rel(
        "low3-odd",
        "(3,3,3,-2,2,2;8n+3) = (1,1,1,0,0,0;8n+3)",
        vec![term_at(1, th(g333), 8, 3)],
        vec![term_at(1, s(), 8, 3)],
    ));
    cat.push(vanishing_relation(
        "vanishing-333",
        "(3,3,3,-2,2,2;n) = 0 for n ≢ 0,3,4 (mod 8)",
        g333,
        8,
        &[(8, 0), (8, 3), (8, 4)],
    ));

    // Dissection chain for (1,3,3,2,0,0) through (1,1,2,0,0,0).
    let yz_equal = gen(
        f6(1, 1, 2, 0, 0, 0),
        [0; 3],
        0,
        2,
        &[[0, 0, 0], [0, 1, 1], [1, 0, 0], [1, 1, 1]],
    );
    let yz_odd = gen(f6(1, 1, 2, 0, 0, 0), [0; 3], 0, 2, &[[0, 1, 1], [1, 1, 1]]);
    let all_odd_112 = gen(f6(1, 1, 2, 0, 0, 0), [0; 3], 0, 2, &[[1, 1, 1]]);
    let x_odd_124 = gen(
        f6(1, 2, 4, 0, 0, 0),
        [0; 3],
        0,
        2,
        &[[1, 0, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]],
    );
    cat.push(rel(
        "chain-1332-step1",
        "θ(1,3,3,2,0,0) = Σ_{y≡z (2)} q^{x²+y²+2z²}",
        vec![term(1, th(h1332))],
        vec![term(1, yz_equal.clone())],
    ));
    cat.push(rel(
        "chain-1332-step2",
        "Σ_{y≡z (2)} q^{x²+y²+2z²} = θ(1,4,8,0,0,0) + Σ_{y≡z≡1 (2)} q^{x²+y²+2z²}",
        vec![term(1, yz_equal)],
        vec![term(1, th(f6(1, 4, 8, 0, 0, 0))), term(1, yz_odd.clone())],
    ));
    cat.push(rel(
        "chain-1332-step3",
        "θ(1,3,3,2,0,0) = Σ_{x≡1 (2)} q^{x²+2y²+4z²} + θ(4,4,8,0,0,0) \
         + Σ_{x≡y≡z≡1 (2)} q^{x²+y²+2z²}",
        vec![term(1, th(h1332))],
        vec![
            term(1, x_odd_124.clone()),
            term(1, th(f6(4, 4, 8, 0, 0, 0))),
            term(1, all_odd_112.clone()),
        ],
    ));
    cat.push(rel(
        "chain-1332-step4",
        "2·θ(1,3,3,2,0,0) = 2·Σ_{x≡1 (2)} q^{x²+2y²+4z²} + 2·θ(8,8,8) \
         + 3·Σ_{x≡y≡z≡1 (2)} q^{x²+y²+2z²}",
        vec![term(2, th(h1332))],
        vec![
            term(2, x_odd_124),
            term(2, th(f6(8, 8, 8, 0, 0, 0))),
            term(3, all_odd_112.clone()),
        ],
    ));
    cat.push(rel(
        "chain-1332-helper",
        "4·Σ_{x≡1 (2)} q^{4(x²+2y²+4z²)} = Σ_{x≡y≡z≡1 (2)} q^{x²+y²+2z²}",
        vec![term(
            4,
            gen(
                f6(4, 8, 16, 0, 0, 0),
                [0; 3],
                0,
                2,
                &[[1, 0, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]],
            ),
        )],
        vec![term(1, all_odd_112.clone())],
    ));
    cat.push(rel(
        "chain-1332-helper2",
        "Σ_{x≡y≡z≡1 (2)} q^{x²+y²+2z²} = 2·Σ_{x≡y≡1, z≡0 (2)} q^{2(x²+y²+z²)}",
        vec![term(1, all_odd_112)],
        vec![term(2, gen(f6(2, 2, 2, 0, 0, 0), [0; 3], 0, 2, &[[1, 1, 0]]))],
    ));
    cat.push(rel(
        "l333-multiples-of-8",
        "(1,3,3,2,0,0;8n) = (1,1,1,0,0,0;n)",
        vec![term_at(1, th(h1332), 8, 0)],
        vec![term_at(1, s(), 1, 0)],
    ));
    cat.push(rel(
        "l333-8n4",
        "(1,3,3,2,0,0;8n+4) = (1,1,1,0,0,0;4n+2)",
        vec![term_at(1, th(h1332), 8, 4)],
        vec![term_at(1, s(), 4, 2)],
    ));
    cat.push(rel(
        "l333-4n2-vanishes",
        "(1,3,3,2,0,0;4n+2) = 0",
        vec![term_at(1, th(h1332), 4, 2)],
        vec![],
    ));
    cat.push(rel(
        "l333-odd",
        "6(1,3,3,2,0,0;2n+1) = (1,1,1,0,0,0;4n+2)",
        vec![term_at(6, th(h1332), 2, 1)],
        vec![term_at(1, s(), 4, 2)],
    ));

    // Progression links for the discriminant-4096 form.
    cat.push(rel(
        "disc4096-64n",
        "(5,13,20,-12,4,2;64n) = (1,1,1,0,0,0;n)",
        vec![term_at(1, th(f4096), 64, 0)],
        vec![term_at(1, s(), 1, 0)],
    ));
    cat.push(rel(
        "disc4096-32-odd",
        "3(5,13,20,-12,4,2;32(2n+1)) = (1,1,1,0,0,0;32(2n+1))",
        vec![term_at(3, th(f4096), 64, 32)],
        vec![term_at(1, s(), 64, 32)],
    ));
    cat.push(rel(
        "disc4096-16-4n1",
        "3(5,13,20,-12,4,2;16(4n+1)) = (1,1,1,0,0,0;16(4n+1))",
        vec![term_at(3, th(f4096), 64, 16)],
        vec![term_at(1, s(), 64, 16)],
    ));
    cat.push(rel(
        "disc4096-16-4n3",
        "(5,13,20,-12,4,2;16(4n+3)) = (1,1,1,0,0,0;16(4n+3))",
        vec![term_at(1, th(f4096), 64, 48)],
        vec![term_at(1, s(), 64, 48)],
    ));
    cat.push(rel(
        "disc4096-4-8n5",
        "3(5,13,20,-12,4,2;4(8n+5)) = (1,1,1,0,0,0;8n+5)",
        vec![term_at(3, th(f4096), 32, 20)],
        vec![term_at(1, s(), 8, 5)],
    ));
    cat.push(rel(
        "disc4096-8n5",
        "12(5,13,20,-12,4,2;8n+5) = (1,1,1,0,0,0;8n+5)",
        vec![term_at(12, th(f4096), 8, 5)],
        vec![term_at(1, s(), 8, 5)],
    ));
    cat.push(vanishing_relation(
        "vanishing-4096",
        "(5,13,20,-12,4,2;k) = 0 off the covered progressions",
        f4096,
        64,
        &[(64, 0), (64, 32), (64, 16), (64, 48), (32, 20), (8, 5)],
    ));

    // Progression links for the discriminant-8192 form.
    cat.push(rel(
        "disc8192-128n",
        "(7,15,23,10,2,6;128n) = (1,1,1,0,0,0;n)",
        vec![term_at(1, th(g8192), 128, 0)],
        vec![term_at(1, s(), 1, 0)],
    ));
    cat.push(rel(
        "disc8192-64-odd",
        "3(7,15,23,10,2,6;64(2n+1)) = (1,1,1,0,0,0;4n+2)",
        vec![term_at(3, th(g8192), 128, 64)],
        vec![term_at(1, s(), 4, 2)],
    ));
    cat.push(rel(
        "disc8192-32-4n1",
        "3(7,15,23,10,2,6;32(4n+1)) = (1,1,1,0,0,0;4n+1)",
        vec![term_at(3, th(g8192), 128, 32)],
        vec![term_at(1, s(), 4, 1)],
    ));
    cat.push(rel(
        "disc8192-32-4n3",
        "(7,15,23,10,2,6;32(4n+3)) = (1,1,1,0,0,0;4n+3)",
        vec![term_at(1, th(g8192), 128, 96)],
        vec![term_at(1, s(), 4, 3)],
    ));
    cat.push(rel(
        "disc8192-16-odd",
        "6(7,15,23,10,2,6;16(2n+1)) = (1,1,1,0,0,0;4n+2)",
        vec![term_at(6, th(g8192), 32, 16)],
        vec![term_at(1, s(), 4, 2)],
    ));
    cat.push(rel(
        "disc8192-4-8n7",
        "6(7,15,23,10,2,6;4(8n+7)) = (1,1,1,0,0,0;2(8n+7))",
        vec![term_at(6, th(g8192), 32, 28)],
        vec![term_at(1, s(), 16, 14)],
    ));
    cat.push(rel(
        "disc8192-8n7",
        "24(7,15,23,10,2,6;8n+7) = (1,1,1,0,0,0;2(8n+7))",
        vec![term_at(24, th(g8192), 8, 7)],
        vec![term_at(1, s(), 16, 14)],
    ));
    cat.push(vanishing_relation(
        "vanishing-8192",
        "(7,15,23,10,2,6;k) = 0 off the covered progressions",
        g8192,
        128,
        &[
            (128, 0),
            (128, 64),
            (128, 32),
            (128, 96),
            (32, 16),
            (32, 28),
            (8, 7),
        ],
    ));

    // Intertwining of (1,3,3,0,0,0) and (1,1,3,0,0,0).
    cat.push(rel(
        "intertwine-133-113",
        "(1,3,3,0,0,0;3n) = (1,1,3,0,0,0;n)",
        vec![term_at(1, th(f6(1, 3, 3, 0, 0, 0)), 3, 0)],
        vec![term_at(1, th(f6(1, 1, 3, 0, 0, 0)), 1, 0)],
    ));
    cat.push(rel(
        "intertwine-113-133",
        "(1,3,3,0,0,0;n) = (1,1,3,0,0,0;3n)",
        vec![term_at(1, th(f6(1, 3, 3, 0, 0, 0)), 1, 0)],
        vec![term_at(1, th(f6(1, 1, 3, 0, 0, 0)), 3, 0)],
    ));
    cat.push(rel(
        "nine-periodicity-133",
        "(1,3,3,0,0,0;n) = (1,3,3,0,0,0;9n)",
        vec![term_at(1, th(f6(1, 3, 3, 0, 0, 0)), 1, 0)],
        vec![term_at(1, th(f6(1, 3, 3, 0, 0, 0)), 9, 0)],
    ));
    cat.push(rel(
        "nine-periodicity-113",
        "(1,1,3,0,0,0;n) = (1,1,3,0,0,0;9n)",
        vec![term_at(1, th(f6(1, 1, 3, 0, 0, 0)), 1, 0)],
        vec![term_at(1, th(f6(1, 1, 3, 0, 0, 0)), 9, 0)],
    ));
    cat.push(rel(
        "four-periodicity-111",
        "(1,1,1,0,0,0;4n) = (1,1,1,0,0,0;n)",
        vec![term_at(1, s(), 4, 0)],
        vec![term_at(1, s(), 1, 0)],
    ));

    // The eta-product gap between the genus mates (1,3,3,1,0,1) and
    // (1,1,11,1,1,1), and the progression links for (1,3,3,1,0,1).
    let t13301 = th(f6(1, 3, 3, 1, 0, 1));
    let t111111b = th(f6(1, 1, 11, 1, 1, 1));
    cat.push(rel(
        "eta-genus-gap",
        "θ(1,1,11,1,1,1) − θ(1,3,3,1,0,1) = 4q·E(q⁴)²·E(q¹⁶)",
        vec![term(1, t111111b.clone()), term(-1, t13301.clone())],
        vec![term(
            4,
            SourceSpec::Eta(EtaProductSpec {
                shift: 1,
                factors: vec![(4, 2), (16, 1)],
            }),
        )],
    ));
    cat.push(rel(
        "genus-32n",
        "(1,3,3,1,0,1;32n) = (1,1,1,0,0,0;n)",
        vec![term_at(1, t13301.clone(), 32, 0)],
        vec![term_at(1, s(), 1, 0)],
    ));
    cat.push(rel(
        "genus-16-odd",
        "(1,3,3,1,0,1;16(2n+1)) = (1,1,1,0,0,0;2(2n+1))",
        vec![term_at(1, t13301.clone(), 32, 16)],
        vec![term_at(1, s(), 4, 2)],
    ));
    cat.push(rel(
        "genus-8-odd-vanishes",
        "(1,3,3,1,0,1;8(2n+1)) = 0",
        vec![term_at(1, t13301.clone(), 16, 8)],
        vec![],
    ));
    cat.push(rel(
        "genus-4-odd",
        "2(1,3,3,1,0,1;4(2n+1)) = (1,1,1,0,0,0;2(2n+1))",
        vec![term_at(2, t13301.clone(), 8, 4)],
        vec![term_at(1, s(), 4, 2)],
    ));
    cat.push(rel(
        "genus-2-odd-vanishes",
        "(1,3,3,1,0,1;2(2n+1)) = 0",
        vec![term_at(1, t13301.clone(), 4, 2)],
        vec![],
    ));
    cat.push(rel(
        "genus-4n3",
        "4(1,3,3,1,0,1;4n+3) = (1,1,1,0,0,0;2(4n+3))",
        vec![term_at(4, t13301.clone(), 4, 3)],
        vec![term_at(1, s(), 8, 6)],
    ));
    cat.push(rel(
        "genus-weighted-sum",
        "3(1,3,3,1,0,1;n) + (1,1,11,1,1,1;n) = (1,1,1,0,0,0;2n) for n ≡ 1 (mod 4)",
        vec![term_at(3, t13301, 4, 1), term_at(1, t111111b, 4, 1)],
        vec![term_at(1, s(), 8, 2)],
    ));

    cat
}
